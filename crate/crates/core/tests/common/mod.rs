#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use fuscat_core::characters::CharacterOptions;
use fuscat_core::cohomology::Cochain2;
use fuscat_core::groups::{named, FiniteGroup};
use fuscat_core::{character_table, CharacterTable, FusionRing};
use num_complex::Complex;
use rand::Rng;

/// Dense copy of a fusion ring that can be edited freely.
#[derive(Debug, Clone)]
pub struct DenseRing {
    pub labels: Vec<String>,
    pub unit: usize,
    pub dual: Vec<usize>,
    pub n: Vec<Vec<Vec<u64>>>,
}

impl DenseRing {
    pub fn of(r: &FusionRing) -> Self {
        let k = r.rank();
        let mut n = vec![vec![vec![0; k]; k]; k];
        for ((i, j, l), c) in r.constants() {
            n[i][j][l] = c;
        }
        DenseRing {
            labels: r.labels().to_vec(),
            unit: r.unit(),
            dual: r.duals().to_vec(),
            n,
        }
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn build(&self) -> FusionRing {
        let k = self.rank();
        let mut c = Vec::new();
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    if self.n[i][j][l] > 0 {
                        c.push(((i, j, l), self.n[i][j][l]));
                    }
                }
            }
        }
        FusionRing::new(self.labels.clone(), self.unit, self.dual.clone(), c)
            .expect("structurally sound")
    }

    /// Every axiom checked straight from the definitions.
    pub fn satisfies_axioms(&self) -> bool {
        let k = self.rank();
        let (u, d, n) = (self.unit, &self.dual, &self.n);
        if d[u] != u {
            return false;
        }
        for i in 0..k {
            for j in 0..k {
                if n[u][i][j] != (i == j) as u64 || n[i][u][j] != (i == j) as u64 {
                    return false;
                }
                if n[i][j][u] != (j == d[i]) as u64 {
                    return false;
                }
                for l in 0..k {
                    let v = n[i][j][l];
                    if v != n[d[i]][l][j] || v != n[l][d[j]][i] {
                        return false;
                    }
                    for m in 0..k {
                        let lhs: u64 = (0..k).map(|p| n[i][j][p] * n[p][l][m]).sum();
                        let rhs: u64 = (0..k).map(|p| n[j][l][p] * n[i][p][m]).sum();
                        if lhs != rhs {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// One random edit: bump or lower a structure constant, or make a
/// non-self-dual pair self-dual.
pub fn mutate(ring: &DenseRing, rng: &mut impl Rng) -> DenseRing {
    let mut m = ring.clone();
    let k = m.rank();
    let pairs: Vec<usize> = (0..k).filter(|&i| m.dual[i] != i).collect();
    if !pairs.is_empty() && rng.gen_ratio(1, 8) {
        let i = pairs[rng.gen_range(0..pairs.len())];
        let j = m.dual[i];
        m.dual[i] = i;
        m.dual[j] = j;
        return m;
    }
    let (i, j, l) = (
        rng.gen_range(0..k),
        rng.gen_range(0..k),
        rng.gen_range(0..k),
    );
    let c = &mut m.n[i][j][l];
    if *c > 0 && rng.gen_bool(0.5) {
        *c -= 1;
    } else {
        *c += 1;
    }
    m
}

/// Rings whose axioms are known to hold: group rings, Fibonacci and some
/// representation rings.
pub fn seed_rings() -> Vec<(String, FusionRing)> {
    let mut out = vec![
        ("fib".to_string(), fuscat_core::fusion_ring::fibonacci()),
        (
            "Z3".to_string(),
            fuscat_core::pointed::pointed_fusion_ring(&named::cyclic(3)),
        ),
        (
            "Z4".to_string(),
            fuscat_core::pointed::pointed_fusion_ring(&named::cyclic(4)),
        ),
        (
            "S3".to_string(),
            fuscat_core::pointed::pointed_fusion_ring(&named::symmetric(3)),
        ),
    ];
    for (name, g) in [
        ("rep S3", named::symmetric(3)),
        ("rep D4", named::dihedral(4)),
        ("rep A4", named::alternating(4)),
    ] {
        let t: CharacterTable<f64> = character_table(&g).unwrap();
        out.push((name.to_string(), t.rep_fusion_ring().unwrap()));
    }
    out
}

/// Groups of order at most 8.
pub fn small_groups() -> Vec<(String, Arc<FiniteGroup>)> {
    let mut out: Vec<(String, Arc<FiniteGroup>)> = (1..=8)
        .map(|n| (format!("Z{n}"), named::cyclic(n)))
        .collect();
    out.push(("S3".into(), named::symmetric(3)));
    out.push(("D4".into(), named::dihedral(4)));
    out.push(("Q8".into(), named::quaternion()));
    out.push((
        "V4".into(),
        Arc::new(FiniteGroup::from_permutations(4, &[vec![1, 0, 3, 2], vec![2, 3, 0, 1]]).unwrap()),
    ));
    out
}

pub fn random_cochain(g: &Arc<FiniteGroup>, modulus: u64, rng: &mut impl Rng) -> Cochain2 {
    let n = g.order();
    let values = (0..n * n)
        .map(|idx| {
            if idx < n || idx % n == 0 {
                0
            } else {
                rng.gen_range(0..modulus)
            }
        })
        .collect();
    Cochain2::new(g.clone(), modulus, values).unwrap()
}

/// `<chi_i chi_j, chi_k>` before rounding, from the class sums.
pub fn raw_fusion_coefficient(
    t: &CharacterTable<f64>,
    i: usize,
    j: usize,
    k: usize,
) -> Complex<f64> {
    let sizes = t.class_sizes();
    let v = t.values();
    let sum: Complex<f64> = (0..sizes.len())
        .map(|c| v[i][c] * v[j][c] * v[k][c].conj() * sizes[c] as f64)
        .sum();
    sum / t.group().order() as f64
}

/// A set of basis elements closed under products and duals.
pub fn is_fusion_closed(r: &FusionRing, set: &BTreeSet<usize>) -> bool {
    set.contains(&r.unit())
        && set.iter().all(|&i| set.contains(&r.dual(i)))
        && set.iter().all(|&i| {
            set.iter()
                .all(|&j| r.product(i, j).iter().all(|(k, _)| set.contains(k)))
        })
}

pub fn options() -> CharacterOptions {
    CharacterOptions::default()
}

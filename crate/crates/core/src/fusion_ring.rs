//! Fusion rings: based rings with a unit, a duality involution and
//! nonnegative integer structure constants `N_{ij}^k` (the multiplicity of
//! the k-th basis element in the product of the i-th and j-th).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Float;

use crate::error::{Error, Result};
use crate::perron::{perron_root, PowerIteration, SparseMatrix};
use crate::tolerance::cast;

/// The Grothendieck ring of a fusion category with respect to its basis of
/// simple objects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionRing {
    labels: Vec<String>,
    unit: usize,
    dual: Vec<usize>,
    /// Nonzero structure constants, keyed by `(i, j, k)`.
    n: BTreeMap<(usize, usize, usize), u64>,
    /// `products[i * rank + j]` lists `(k, N_{ij}^k)` with nonzero multiplicity.
    products: Vec<Vec<(usize, u64)>>,
}

impl FusionRing {
    /// Builds a ring from its raw data. Only structural well-formedness is
    /// checked here; the ring axioms are checked by [`FusionRing::validate`].
    ///
    /// Repeated `(i, j, k)` entries are summed; zero entries are dropped.
    pub fn new(
        labels: Vec<String>,
        unit: usize,
        dual: Vec<usize>,
        constants: impl IntoIterator<Item = ((usize, usize, usize), u64)>,
    ) -> Result<Self> {
        let rank = labels.len();
        if rank == 0 {
            return Err(Error::Structural("rank must be positive".into()));
        }
        let distinct: BTreeSet<&String> = labels.iter().collect();
        if distinct.len() != rank {
            return Err(Error::Structural("labels must be distinct".into()));
        }
        if unit >= rank {
            return Err(Error::Structural(format!(
                "unit index {unit} out of range for rank {rank}"
            )));
        }
        if dual.len() != rank {
            return Err(Error::Structural(format!(
                "dual has length {} but rank is {rank}",
                dual.len()
            )));
        }
        for (i, &d) in dual.iter().enumerate() {
            if d >= rank {
                return Err(Error::Structural(format!("dual({i}) = {d} out of range")));
            }
            if dual[d] != i {
                return Err(Error::Structural(format!(
                    "dual is not an involution: dual(dual({i})) = {}",
                    dual[d]
                )));
            }
        }
        let mut n = BTreeMap::new();
        for ((i, j, k), v) in constants {
            if i >= rank || j >= rank || k >= rank {
                return Err(Error::Structural(format!(
                    "structure constant index ({i}, {j}, {k}) out of range for rank {rank}"
                )));
            }
            if v != 0 {
                *n.entry((i, j, k)).or_insert(0) += v;
            }
        }
        let mut products = vec![Vec::new(); rank * rank];
        for (&(i, j, k), &v) in &n {
            products[i * rank + j].push((k, v));
        }
        Ok(FusionRing {
            labels,
            unit,
            dual,
            n,
            products,
        })
    }

    /// The ring `Z[G]` of a group given by its multiplication table
    /// (identity at index 0).
    pub fn from_group_table(labels: Vec<String>, table: &[Vec<usize>]) -> Result<Self> {
        let order = table.len();
        let mut dual = vec![0; order];
        for (g, row) in table.iter().enumerate() {
            dual[g] = row
                .iter()
                .position(|&x| x == 0)
                .ok_or_else(|| Error::Structural(format!("element {g} has no inverse")))?;
        }
        let constants = table
            .iter()
            .enumerate()
            .flat_map(|(g, row)| row.iter().enumerate().map(move |(h, &k)| ((g, h, k), 1)));
        FusionRing::new(labels, 0, dual, constants)
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn dual(&self, i: usize) -> usize {
        self.dual[i]
    }

    pub fn duals(&self) -> &[usize] {
        &self.dual
    }

    /// `N_{ij}^k`.
    pub fn coeff(&self, i: usize, j: usize, k: usize) -> u64 {
        self.n.get(&(i, j, k)).copied().unwrap_or(0)
    }

    /// Nonzero terms `(k, N_{ij}^k)` of the product of basis elements `i`, `j`.
    pub fn product(&self, i: usize, j: usize) -> &[(usize, u64)] {
        &self.products[i * self.rank() + j]
    }

    /// All nonzero structure constants in `(i, j, k)` order.
    pub fn constants(&self) -> impl Iterator<Item = ((usize, usize, usize), u64)> + '_ {
        self.n.iter().map(|(&key, &v)| (key, v))
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Product of two elements of the ring written in the basis.
    pub fn multiply(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut out = vec![0; self.rank()];
        for (i, &ai) in a.iter().enumerate().filter(|(_, &v)| v != 0) {
            for (j, &bj) in b.iter().enumerate().filter(|(_, &v)| v != 0) {
                for &(k, v) in self.product(i, j) {
                    out[k] += ai * bj * v;
                }
            }
        }
        out
    }

    /// Basis vector of the i-th simple.
    pub fn basis_vector(&self, i: usize) -> Vec<u64> {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        v
    }

    /// Left multiplication matrix `(M_i)_{k,j} = N_{ij}^k`.
    pub fn left_multiplication(&self, i: usize) -> SparseMatrix {
        let mut m = SparseMatrix::new(self.rank());
        for j in 0..self.rank() {
            for &(k, v) in self.product(i, j) {
                m.entries.push((k, j, v));
            }
        }
        m
    }

    /// Checks every ring axiom and reports each violated instance.
    pub fn validate(&self) -> ValidationReport {
        let rank = self.rank();
        let u = self.unit;
        let mut violations = Vec::new();

        if self.dual[u] != u {
            violations.push(Violation::DualOfUnit { dual: self.dual[u] });
        }
        for i in 0..rank {
            for k in 0..rank {
                let expected = u64::from(i == k);
                let left = self.coeff(u, i, k);
                if left != expected {
                    violations.push(Violation::LeftUnit {
                        j: i,
                        k,
                        value: left,
                    });
                }
                let right = self.coeff(i, u, k);
                if right != expected {
                    violations.push(Violation::RightUnit { i, k, value: right });
                }
            }
        }
        for i in 0..rank {
            for j in 0..rank {
                let value = self.coeff(i, j, u);
                let expected = u64::from(j == self.dual[i]);
                if value != expected {
                    violations.push(Violation::Rigidity {
                        i,
                        j,
                        value,
                        expected,
                    });
                }
            }
        }
        for (&(i, j, k), &v) in &self.n {
            let a = self.coeff(self.dual[i], k, j);
            let b = self.coeff(k, self.dual[j], i);
            if a != v || b != v {
                violations.push(Violation::FrobeniusReciprocity { i, j, k });
            }
        }
        for i in 0..rank {
            for j in 0..rank {
                for k in 0..rank {
                    // (i j) k versus i (j k)
                    let mut lhs = vec![0u64; rank];
                    for &(m, nij) in self.product(i, j) {
                        for &(l, nmk) in self.product(m, k) {
                            lhs[l] += nij * nmk;
                        }
                    }
                    let mut rhs = vec![0u64; rank];
                    for &(m, njk) in self.product(j, k) {
                        for &(l, nim) in self.product(i, m) {
                            rhs[l] += njk * nim;
                        }
                    }
                    for l in 0..rank {
                        if lhs[l] != rhs[l] {
                            violations.push(Violation::Associativity {
                                i,
                                j,
                                k,
                                l,
                                lhs: lhs[l],
                                rhs: rhs[l],
                            });
                        }
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    /// True when every basis permutation in `perm` preserves the unit, the
    /// duality and all structure constants.
    pub fn is_based_automorphism(&self, perm: &[usize]) -> bool {
        let rank = self.rank();
        if perm.len() != rank || perm.iter().any(|&p| p >= rank) {
            return false;
        }
        let image: BTreeSet<usize> = perm.iter().copied().collect();
        if image.len() != rank || perm[self.unit] != self.unit {
            return false;
        }
        if (0..rank).any(|i| perm[self.dual[i]] != self.dual[perm[i]]) {
            return false;
        }
        (0..rank).all(|i| {
            (0..rank).all(|j| {
                let mapped = self.product(perm[i], perm[j]);
                let original = self.product(i, j);
                mapped.len() == original.len()
                    && original
                        .iter()
                        .all(|&(k, v)| self.coeff(perm[i], perm[j], perm[k]) == v)
            })
        })
    }

    /// Exact pointedness test: every left-multiplication matrix is a
    /// permutation matrix, i.e. each product of basis elements is a single
    /// basis element.
    pub fn has_permutation_fusion(&self) -> bool {
        self.products.iter().all(|p| p.len() == 1 && p[0].1 == 1)
    }

    /// Frobenius-Perron dimensions of the basis and of the whole ring.
    pub fn fpdim<T: Float>(&self) -> Result<FpData<T>> {
        self.fpdim_with(&PowerIteration::default())
    }

    pub fn fpdim_with<T: Float>(&self, opts: &PowerIteration<T>) -> Result<FpData<T>> {
        let dims = (0..self.rank())
            .map(|i| {
                if i == self.unit {
                    Ok(T::one())
                } else {
                    perron_root(&self.left_multiplication(i), opts)
                }
            })
            .collect::<Result<Vec<T>>>()?;
        let total = dims.iter().fold(T::zero(), |acc, &d| acc + d * d);
        Ok(FpData {
            dims,
            total,
            tolerance: opts.tol,
        })
    }

    /// Smallest set of basis indices containing the unit and `seeds` that is
    /// closed under duals and under taking constituents of products.
    pub fn generated_subring(&self, seeds: &BTreeSet<usize>) -> Result<BTreeSet<usize>> {
        if let Some(&bad) = seeds.iter().find(|&&s| s >= self.rank()) {
            return Err(Error::Structural(format!(
                "seed {bad} out of range for rank {}",
                self.rank()
            )));
        }
        let mut set: BTreeSet<usize> = seeds.clone();
        set.insert(self.unit);
        loop {
            let mut grown = set.clone();
            for &i in &set {
                grown.insert(self.dual[i]);
                for &j in &set {
                    grown.extend(self.product(i, j).iter().map(|&(k, _)| k));
                }
            }
            if grown.len() == set.len() {
                return Ok(set);
            }
            set = grown;
        }
    }
}

impl fmt::Display for FusionRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rank = self.rank();
        for i in 0..rank {
            for j in i..rank {
                let terms: Vec<String> = self
                    .product(i, j)
                    .iter()
                    .map(|&(k, v)| {
                        if v == 1 {
                            self.labels[k].clone()
                        } else {
                            format!("{v}*{}", self.labels[k])
                        }
                    })
                    .collect();
                writeln!(
                    f,
                    "{} x {} = {}",
                    self.labels[i],
                    self.labels[j],
                    if terms.is_empty() {
                        "0".to_string()
                    } else {
                        terms.join(" + ")
                    }
                )?;
            }
        }
        Ok(())
    }
}

/// One violated axiom instance, with witnessing indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    DualOfUnit {
        dual: usize,
    },
    LeftUnit {
        j: usize,
        k: usize,
        value: u64,
    },
    RightUnit {
        i: usize,
        k: usize,
        value: u64,
    },
    Associativity {
        i: usize,
        j: usize,
        k: usize,
        l: usize,
        lhs: u64,
        rhs: u64,
    },
    Rigidity {
        i: usize,
        j: usize,
        value: u64,
        expected: u64,
    },
    FrobeniusReciprocity {
        i: usize,
        j: usize,
        k: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DualOfUnit { dual } => write!(f, "dual(unit) = {dual}, expected unit"),
            Violation::LeftUnit { j, k, value } => {
                write!(f, "unit axiom: N(unit,{j})^{k} = {value}")
            }
            Violation::RightUnit { i, k, value } => {
                write!(f, "unit axiom: N({i},unit)^{k} = {value}")
            }
            Violation::Associativity { i, j, k, l, lhs, rhs } => write!(
                f,
                "associativity at ({i},{j},{k}) coefficient {l}: ({i}{j}){k} has {lhs}, {i}({j}{k}) has {rhs}"
            ),
            Violation::Rigidity { i, j, value, expected } => write!(
                f,
                "rigidity: N({i},{j})^unit = {value}, expected {expected}"
            ),
            Violation::FrobeniusReciprocity { i, j, k } => write!(
                f,
                "Frobenius reciprocity fails for N({i},{j})^{k}"
            ),
        }
    }
}

/// Result of [`FusionRing::validate`]. Empty means valid.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Frobenius-Perron data of a fusion ring.
#[derive(Debug, Clone, PartialEq)]
pub struct FpData<T> {
    /// Per-basis FP dimensions.
    pub dims: Vec<T>,
    /// Sum of squares of `dims`.
    pub total: T,
    /// Convergence tolerance of the eigenvalue computation.
    pub tolerance: T,
}

impl<T: Float> FpData<T> {
    /// FP dimension of an element written in the basis.
    pub fn of(&self, v: &[u64]) -> T {
        v.iter()
            .zip(&self.dims)
            .fold(T::zero(), |acc, (&c, &d)| acc + cast::<T>(c as f64) * d)
    }

    /// Sum of squared FP dimensions over a subset of the basis.
    pub fn total_of(&self, subset: &BTreeSet<usize>) -> T {
        subset
            .iter()
            .fold(T::zero(), |acc, &i| acc + self.dims[i] * self.dims[i])
    }
}

/// Pointedness from FP data: every dimension within `tol` of 1.
pub fn is_pointed<T: Float>(fp: &FpData<T>, tol: T) -> bool {
    fp.dims.iter().all(|&d| (d - T::one()).abs() < tol)
}

/// The Fibonacci ring `{1, t}` with `t*t = 1 + t`.
pub fn fibonacci() -> FusionRing {
    FusionRing::new(
        vec!["1".into(), "t".into()],
        0,
        vec![0, 1],
        [
            ((0, 0, 0), 1),
            ((0, 1, 1), 1),
            ((1, 0, 1), 1),
            ((1, 1, 0), 1),
            ((1, 1, 1), 1),
        ],
    )
    .expect("fibonacci ring is well formed")
}

/// The ring of rank one (`Vec`).
pub fn trivial() -> FusionRing {
    FusionRing::new(vec!["1".into()], 0, vec![0], [((0, 0, 0), 1)]).expect("trivial ring")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z3() -> FusionRing {
        let table: Vec<Vec<usize>> = (0..3)
            .map(|a| (0..3).map(|b| (a + b) % 3).collect())
            .collect();
        FusionRing::from_group_table(vec!["0".into(), "1".into(), "2".into()], &table).unwrap()
    }

    #[test]
    fn trivial_ring_is_valid() {
        let r = trivial();
        assert!(r.validate().is_valid());
        let fp: FpData<f64> = r.fpdim().unwrap();
        assert_eq!(fp.dims, vec![1.0]);
        assert_eq!(fp.total, 1.0);
    }

    #[test]
    fn fibonacci_is_valid() {
        assert!(fibonacci().validate().is_valid());
    }

    #[test]
    fn fibonacci_dimensions() {
        let fp: FpData<f64> = fibonacci().fpdim().unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((fp.dims[1] - phi).abs() < 1e-12);
        assert!((fp.total - (1.0 + phi * phi)).abs() < 1e-12);
        assert!((fp.total - 3.618_033_988_7).abs() < 1e-9);
    }

    #[test]
    fn missing_dual_is_a_rigidity_violation() {
        let r = FusionRing::new(
            vec!["1".into(), "t".into()],
            0,
            vec![0, 1],
            [
                ((0, 0, 0), 1),
                ((0, 1, 1), 1),
                ((1, 0, 1), 1),
                ((1, 1, 1), 1),
            ],
        )
        .unwrap();
        let report = r.validate();
        assert!(report.violations.iter().any(|v| matches!(
            v,
            Violation::Rigidity {
                i: 1,
                j: 1,
                value: 0,
                expected: 1
            }
        )));
    }

    #[test]
    fn structural_errors_are_not_violations() {
        let bad_dual = FusionRing::new(
            vec!["1".into(), "a".into(), "b".into()],
            0,
            vec![0, 2, 0],
            [],
        );
        assert!(matches!(bad_dual, Err(Error::Structural(_))));
        let out_of_range = FusionRing::new(vec!["1".into()], 0, vec![0], [((0, 0, 3), 1)]);
        assert!(matches!(out_of_range, Err(Error::Structural(_))));
        let dup = FusionRing::new(vec!["1".into(), "1".into()], 0, vec![0, 1], []);
        assert!(matches!(dup, Err(Error::Structural(_))));
    }

    #[test]
    fn pointedness() {
        let r = z3();
        let fp: FpData<f64> = r.fpdim().unwrap();
        assert!(is_pointed(&fp, 1e-9));
        assert!(r.has_permutation_fusion());
        let fib = fibonacci();
        let fp: FpData<f64> = fib.fpdim().unwrap();
        assert!(!is_pointed(&fp, 1e-9));
        assert!(!fib.has_permutation_fusion());
    }

    #[test]
    fn generated_subring_of_empty_seed_is_unit() {
        let r = z3();
        assert_eq!(
            r.generated_subring(&BTreeSet::new()).unwrap(),
            BTreeSet::from([0])
        );
        assert_eq!(
            r.generated_subring(&BTreeSet::from([1])).unwrap(),
            BTreeSet::from([0, 1, 2])
        );
        assert!(r.generated_subring(&BTreeSet::from([7])).is_err());
    }

    #[test]
    fn inversion_is_an_automorphism_of_z3() {
        let r = z3();
        assert!(r.is_based_automorphism(&[0, 2, 1]));
        assert!(!r.is_based_automorphism(&[1, 0, 2]));
    }
}

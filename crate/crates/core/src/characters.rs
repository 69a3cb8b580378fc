//! Complex character tables by Burnside's class-algebra method, and the
//! representation rings and restriction/inflation functors built from them.
//!
//! The class sums `K_j` span the centre of the group algebra. In the
//! orthonormal basis `K_j / sqrt|C_j|` (for the trace form) multiplication by
//! `K_j` is a normal matrix, so `A + A^*` for a random combination `A` of
//! class sums is Hermitian. When its eigenvalues are simple, its eigenvectors
//! are exactly the central idempotents, from which the irreducible
//! characters are read off. Ties are broken by retrying with the next seed
//! of a fixed sequence.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::sync::Arc;

use num_complex::Complex;
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::eigen::symmetric_eigen;
use crate::error::{Error, Result};
use crate::functors::FunctorMatrix;
use crate::fusion_ring::FusionRing;
use crate::groups::{FiniteGroup, GroupExtension, GroupHom};
use crate::tolerance::{cast, AGGREGATE_TOL};

/// Largest group order handled by the float method.
pub const MAX_CHARACTER_ORDER: usize = 2000;

#[derive(Debug, Clone, Copy)]
pub struct CharacterOptions {
    /// First seed of the perturbation sequence.
    pub seed: u64,
    /// Number of random class-sum combinations tried before giving up.
    pub attempts: usize,
}

impl Default for CharacterOptions {
    fn default() -> Self {
        CharacterOptions {
            seed: 0,
            attempts: 16,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CharacterTable<T> {
    group: Arc<FiniteGroup>,
    /// `values[i][j]` is the i-th irreducible character on the j-th class.
    values: Vec<Vec<Complex<T>>>,
    degrees: Vec<u64>,
    /// Largest deviation from row orthonormality.
    row_residual: T,
    /// Largest deviation from column orthogonality.
    column_residual: T,
}

impl<T: Float> CharacterTable<T> {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        self.group.conjugacy_classes()
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes().iter().map(|c| c.len()).collect()
    }

    pub fn values(&self) -> &[Vec<Complex<T>>] {
        &self.values
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn row_residual(&self) -> T {
        self.row_residual
    }

    pub fn column_residual(&self) -> T {
        self.column_residual
    }

    /// Value of the i-th character at a group element.
    pub fn value_at(&self, i: usize, g: usize) -> Complex<T> {
        self.values[i][self.group.class_of(g)]
    }

    /// `(1/|G|) sum_g f(g) conj(h(g))` for class functions given on classes.
    pub fn inner_product(&self, f: &[Complex<T>], h: &[Complex<T>]) -> Complex<T> {
        class_inner_product(&self.class_sizes(), self.group.order(), f, h)
    }

    /// The representation ring: `N_ij^k = <chi_i chi_j, chi_k>`, each value
    /// checked to be within the aggregate tolerance of an integer.
    pub fn rep_fusion_ring(&self) -> Result<FusionRing> {
        let r = self.len();
        let sizes = self.class_sizes();
        let order = self.group.order();
        let mut constants = Vec::new();
        for i in 0..r {
            for j in 0..r {
                let prod: Vec<Complex<T>> = self.values[i]
                    .iter()
                    .zip(&self.values[j])
                    .map(|(a, b)| a * b)
                    .collect();
                for k in 0..r {
                    let c = class_inner_product(&sizes, order, &prod, &self.values[k]);
                    let n = round_multiplicity(c, "fusion coefficient")?;
                    if n > 0 {
                        constants.push(((i, j, k), n));
                    }
                }
            }
        }
        let dual = (0..r)
            .map(|i| {
                let conj: Vec<Complex<T>> = self.values[i].iter().map(|z| z.conj()).collect();
                self.values
                    .iter()
                    .position(|row| close_rows(row, &conj))
                    .ok_or_else(|| {
                        Error::Integrity(format!("no character conjugate to character {i}"))
                    })
            })
            .collect::<Result<Vec<usize>>>()?;
        FusionRing::new(self.labels(), 0, dual, constants)
    }

    /// Labels `chi<i>` used for basis elements of the representation ring.
    pub fn labels(&self) -> Vec<String> {
        (0..self.len()).map(|i| format!("chi{i}")).collect()
    }

    /// Restriction `Rep G -> Rep H` to the subgroup on `sub`:
    /// `m[i][j] = <Res chi_j, psi_i>_H`.
    pub fn restriction_functor(&self, sub: &BTreeSet<usize>) -> Result<FunctorMatrix> {
        self.restriction_functor_with(sub, &CharacterOptions::default())
    }

    pub fn restriction_functor_with(
        &self,
        sub: &BTreeSet<usize>,
        opts: &CharacterOptions,
    ) -> Result<FunctorMatrix> {
        let (h, inclusion) = self.group.subgroup(sub)?;
        let small: CharacterTable<T> = character_table_with(&h, opts)?;
        let restricted: Vec<Vec<Complex<T>>> = (0..self.len())
            .map(|j| {
                small
                    .classes()
                    .iter()
                    .map(|c| self.value_at(j, inclusion.apply(c[0])))
                    .collect()
            })
            .collect();
        let m = (0..small.len())
            .map(|i| {
                (0..self.len())
                    .map(|j| {
                        round_multiplicity(
                            small.inner_product(&restricted[j], &small.values[i]),
                            "restriction multiplicity",
                        )
                    })
                    .collect::<Result<Vec<u64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        FunctorMatrix::new(
            Arc::new(self.rep_fusion_ring()?),
            Arc::new(small.rep_fusion_ring()?),
            m,
        )
    }

    /// Inflation `Rep G' -> Rep G` along a surjection `G -> G'` whose target
    /// is this table's group: `chi -> chi ∘ proj`.
    pub fn inflation_functor(&self, proj: &GroupHom) -> Result<FunctorMatrix> {
        self.inflation_functor_with(proj, &CharacterOptions::default())
    }

    pub fn inflation_functor_with(
        &self,
        proj: &GroupHom,
        opts: &CharacterOptions,
    ) -> Result<FunctorMatrix> {
        if proj.target().as_ref() != self.group.as_ref() {
            return Err(Error::Precondition(
                "projection target is not the group of this table".into(),
            ));
        }
        if !proj.is_surjective() {
            return Err(Error::Precondition("projection is not surjective".into()));
        }
        let big: CharacterTable<T> = character_table_with(proj.source(), opts)?;
        let pulled: Vec<Vec<Complex<T>>> = (0..self.len())
            .map(|x| {
                big.classes()
                    .iter()
                    .map(|c| self.value_at(x, proj.apply(c[0])))
                    .collect()
            })
            .collect();
        let m = (0..big.len())
            .map(|y| {
                (0..self.len())
                    .map(|x| {
                        round_multiplicity(
                            big.inner_product(&pulled[x], &big.values[y]),
                            "inflation multiplicity",
                        )
                    })
                    .collect::<Result<Vec<u64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        FunctorMatrix::new(
            Arc::new(self.rep_fusion_ring()?),
            Arc::new(big.rep_fusion_ring()?),
            m,
        )
    }
}

/// `Rep G'' -> Rep G -> Rep G'` for `1 -> G' -> G -> G'' -> 1`: inflation
/// along the projection, then restriction to the image of the inclusion.
pub fn rep_exact_sequence<T: Float>(
    ext: &GroupExtension,
    opts: &CharacterOptions,
) -> Result<(FunctorMatrix, FunctorMatrix)> {
    let quotient: CharacterTable<T> = character_table_with(ext.quotient_group(), opts)?;
    let middle: CharacterTable<T> = character_table_with(ext.group(), opts)?;
    let embedding = quotient.inflation_functor_with(&ext.projection, opts)?;
    let functor = middle.restriction_functor_with(&ext.inclusion.image(), opts)?;
    Ok((embedding, functor))
}

pub(crate) fn class_inner_product<T: Float>(
    sizes: &[usize],
    order: usize,
    f: &[Complex<T>],
    h: &[Complex<T>],
) -> Complex<T> {
    let sum = sizes
        .iter()
        .zip(f.iter().zip(h))
        .fold(Complex::new(T::zero(), T::zero()), |acc, (&c, (a, b))| {
            acc + a * b.conj() * cast::<T>(c as f64)
        });
    sum / cast::<T>(order as f64)
}

fn round_multiplicity<T: Float>(c: Complex<T>, what: &str) -> Result<u64> {
    let tol: T = cast(AGGREGATE_TOL);
    let rounded = c.re.round();
    if (c.re - rounded).abs() >= tol || c.im.abs() >= tol || rounded < T::zero() {
        return Err(Error::Integrity(format!(
            "{what} {} + {}i is not a nonnegative integer",
            c.re.to_f64().unwrap_or(f64::NAN),
            c.im.to_f64().unwrap_or(f64::NAN)
        )));
    }
    Ok(rounded.to_u64().expect("nonnegative"))
}

fn close_rows<T: Float>(a: &[Complex<T>], b: &[Complex<T>]) -> bool {
    let tol: T = cast(AGGREGATE_TOL);
    a.iter().zip(b).all(|(x, y)| (x - y).norm() < tol)
}

/// Structure constants of the class algebra: `a[j][k][l]` is the number of
/// pairs `(x, y)` in `C_j x C_k` with `xy` equal to the first element of `C_l`.
pub fn class_constants(g: &FiniteGroup) -> Vec<Vec<Vec<u64>>> {
    let classes = g.conjugacy_classes();
    let r = classes.len();
    let mut a = vec![vec![vec![0u64; r]; r]; r];
    for (l, cl) in classes.iter().enumerate() {
        let z = cl[0];
        for (j, cj) in classes.iter().enumerate() {
            for &x in cj {
                let y = g.mul(g.inv(x), z);
                a[j][g.class_of(y)][l] += 1;
            }
        }
    }
    a
}

pub fn character_table<T: Float>(g: &Arc<FiniteGroup>) -> Result<CharacterTable<T>> {
    character_table_with(g, &CharacterOptions::default())
}

pub fn character_table_with<T: Float>(
    g: &Arc<FiniteGroup>,
    opts: &CharacterOptions,
) -> Result<CharacterTable<T>> {
    if g.order() > MAX_CHARACTER_ORDER {
        return Err(Error::Size(format!(
            "group order {} exceeds the character-table cap {MAX_CHARACTER_ORDER}",
            g.order()
        )));
    }
    let constants = class_constants(g);
    let sizes: Vec<usize> = g.conjugacy_classes().iter().map(|c| c.len()).collect();
    let r = sizes.len();
    // Multiplication by K_j in the orthonormal basis e_k = K_k / sqrt(c_k).
    let mult: Vec<Vec<Vec<T>>> = (0..r)
        .map(|j| {
            (0..r)
                .map(|l| {
                    (0..r)
                        .map(|k| {
                            cast::<T>(constants[j][k][l] as f64)
                                * (cast::<T>(sizes[l] as f64) / cast::<T>(sizes[k] as f64)).sqrt()
                        })
                        .collect()
                })
                .collect()
        })
        .collect();

    let mut last_problem = String::new();
    for attempt in 0..opts.attempts {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(attempt as u64));
        match separate_idempotents(&mult, &mut rng) {
            Ok(vectors) => return assemble_table(g.clone(), &sizes, vectors),
            Err(problem) => last_problem = problem,
        }
    }
    Err(Error::Numerical(format!(
        "could not separate the central idempotents after {} random class-sum \
         combinations starting at seed {} ({last_problem}); retry with another seed",
        opts.attempts, opts.seed
    )))
}

/// Common eigenvectors of the class-sum multiplication matrices, as complex
/// vectors in the orthonormal basis.
fn separate_idempotents<T: Float>(
    mult: &[Vec<Vec<T>>],
    rng: &mut ChaCha8Rng,
) -> std::result::Result<Vec<Vec<Complex<T>>>, String> {
    let r = mult.len();
    let coeffs: Vec<Complex<T>> = (0..r)
        .map(|_| {
            Complex::new(
                cast::<T>(rng.gen_range(-1.0..1.0)),
                cast::<T>(rng.gen_range(-1.0..1.0)),
            )
        })
        .collect();
    // H = A + A^*, A = sum_j c_j M_j with real M_j.
    let mut a = vec![vec![Complex::new(T::zero(), T::zero()); r]; r];
    for (j, m) in mult.iter().enumerate() {
        for p in 0..r {
            for q in 0..r {
                a[p][q] = a[p][q] + coeffs[j] * m[p][q];
            }
        }
    }
    let h: Vec<Vec<Complex<T>>> = (0..r)
        .map(|p| (0..r).map(|q| a[p][q] + a[q][p].conj()).collect())
        .collect();
    // Real symmetric form [[Re H, -Im H], [Im H, Re H]]; each eigenvalue of H
    // appears twice.
    let mut s = vec![vec![T::zero(); 2 * r]; 2 * r];
    for p in 0..r {
        for q in 0..r {
            s[p][q] = h[p][q].re;
            s[p + r][q + r] = h[p][q].re;
            s[p][q + r] = -h[p][q].im;
            s[p + r][q] = h[p][q].im;
        }
    }
    let eig = symmetric_eigen(&s).map_err(|e| e.to_string())?;
    let scale = eig.values.iter().fold(T::one(), |m, v| m.max(v.abs()));
    let pair_tol = scale * cast(1e-9);
    let gap_tol = scale * cast(1e-6);
    for k in 0..r {
        if (eig.values[2 * k + 1] - eig.values[2 * k]).abs() > pair_tol {
            return Err("eigenvalues of the realified matrix are not paired".into());
        }
        if k + 1 < r && eig.values[2 * k + 2] - eig.values[2 * k + 1] < gap_tol {
            return Err("random combination has a repeated eigenvalue".into());
        }
    }
    let vectors: Vec<Vec<Complex<T>>> = (0..r)
        .map(|k| {
            let v = &eig.vectors[2 * k];
            (0..r).map(|p| Complex::new(v[p], v[p + r])).collect()
        })
        .collect();
    // Every vector must be an eigenvector of every class-sum matrix.
    let residual_tol: T = cast(1e-7);
    for z in &vectors {
        for m in mult {
            let mz: Vec<Complex<T>> = (0..r)
                .map(|p| {
                    (0..r).fold(Complex::new(T::zero(), T::zero()), |acc, q| {
                        acc + z[q] * m[p][q]
                    })
                })
                .collect();
            let num = (0..r).fold(Complex::new(T::zero(), T::zero()), |acc, p| {
                acc + z[p].conj() * mz[p]
            });
            let norm = (0..r).fold(T::zero(), |acc, p| acc + z[p].norm_sqr());
            let mu = num / norm;
            let res = (0..r).fold(T::zero(), |acc, p| acc.max((mz[p] - z[p] * mu).norm()));
            let mscale = m.iter().flatten().fold(T::one(), |a, x| a.max(x.abs()));
            if res > residual_tol * mscale {
                return Err("eigenvector is not common to all class sums".into());
            }
        }
    }
    Ok(vectors)
}

fn assemble_table<T: Float>(
    group: Arc<FiniteGroup>,
    sizes: &[usize],
    vectors: Vec<Vec<Complex<T>>>,
) -> Result<CharacterTable<T>> {
    let order = group.order();
    let integrality: T = cast(AGGREGATE_TOL);
    let mut rows: Vec<(u64, Vec<Complex<T>>)> = Vec::with_capacity(vectors.len());
    for z in vectors {
        // z_l is proportional to conj(chi(C_l)) sqrt|C_l|.
        if z[0].norm() <= T::epsilon() {
            return Err(Error::Numerical(
                "central idempotent has no identity component".into(),
            ));
        }
        let phi: Vec<Complex<T>> = z
            .iter()
            .zip(sizes)
            .map(|(zl, &c)| (zl / z[0]).conj() / cast::<T>(c as f64).sqrt())
            .collect();
        let norm = phi.iter().zip(sizes).fold(T::zero(), |acc, (p, &c)| {
            acc + p.norm_sqr() * cast::<T>(c as f64)
        });
        let degree = (cast::<T>(order as f64) / norm).sqrt();
        let rounded = degree.round();
        if (degree - rounded).abs() >= integrality || rounded < T::one() {
            return Err(Error::Integrity(format!(
                "character degree {} is not a positive integer",
                degree.to_f64().unwrap_or(f64::NAN)
            )));
        }
        let values = phi.iter().map(|p| p * rounded).collect();
        rows.push((rounded.to_u64().expect("degree"), values));
    }
    rows.sort_by(|a, b| compare_rows(a, b));
    let degrees: Vec<u64> = rows.iter().map(|(d, _)| *d).collect();
    let values: Vec<Vec<Complex<T>>> = rows.into_iter().map(|(_, v)| v).collect();

    let sum_sq: u64 = degrees.iter().map(|d| d * d).sum();
    if sum_sq != order as u64 {
        return Err(Error::Integrity(format!(
            "sum of squared degrees is {sum_sq}, group order is {order}"
        )));
    }
    let one = Complex::new(T::one(), T::zero());
    if values[0].iter().any(|v| (v - one).norm() >= integrality) {
        return Err(Error::Consistency("first character is not trivial".into()));
    }
    let mut row_residual = T::zero();
    for i in 0..values.len() {
        for j in 0..values.len() {
            let ip = class_inner_product(sizes, order, &values[i], &values[j]);
            let target = if i == j {
                one
            } else {
                Complex::new(T::zero(), T::zero())
            };
            row_residual = row_residual.max((ip - target).norm());
        }
    }
    let mut column_residual = T::zero();
    for a in 0..sizes.len() {
        for b in 0..sizes.len() {
            let s = values
                .iter()
                .fold(Complex::new(T::zero(), T::zero()), |acc, row| {
                    acc + row[a] * row[b].conj()
                });
            let target = if a == b {
                cast::<T>(order as f64) / cast::<T>(sizes[a] as f64)
            } else {
                T::zero()
            };
            column_residual = column_residual.max((s - Complex::new(target, T::zero())).norm());
        }
    }
    if row_residual >= integrality || column_residual >= integrality {
        return Err(Error::Numerical(format!(
            "orthogonality residuals too large (rows {}, columns {})",
            row_residual.to_f64().unwrap_or(f64::NAN),
            column_residual.to_f64().unwrap_or(f64::NAN)
        )));
    }
    Ok(CharacterTable {
        group,
        values,
        degrees,
        row_residual,
        column_residual,
    })
}

/// Ascending degree, then descending lexicographic order of the values
/// rounded to a 1e-6 grid. The trivial character is the largest degree-one
/// row, so it comes first.
fn compare_rows<T: Float>(a: &(u64, Vec<Complex<T>>), b: &(u64, Vec<Complex<T>>)) -> Ordering {
    let key = |v: &[Complex<T>]| -> Vec<(i64, i64)> {
        let grid: T = cast(1e6);
        v.iter()
            .map(|z| {
                (
                    (z.re * grid).round().to_i64().unwrap_or(0),
                    (z.im * grid).round().to_i64().unwrap_or(0),
                )
            })
            .collect()
    };
    a.0.cmp(&b.0).then_with(|| key(&b.1).cmp(&key(&a.1)))
}

//! Tensor functors seen through Grothendieck rings.
//!
//! A functor `F: C -> D` between fusion categories is recorded by the
//! nonnegative integer matrix `m[Y][X]`, the multiplicity of the target
//! simple `Y` in `F(X)`. Everything here works from that matrix and the FP
//! dimensions of both sides.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_traits::Float;

use crate::error::{Error, Result};
use crate::fusion_ring::{FpData, FusionRing};
use crate::tolerance::{cast, Tolerances};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctorMatrix {
    source: Arc<FusionRing>,
    target: Arc<FusionRing>,
    /// `target.rank()` rows, `source.rank()` columns.
    m: Vec<Vec<u64>>,
}

impl FunctorMatrix {
    pub fn new(source: Arc<FusionRing>, target: Arc<FusionRing>, m: Vec<Vec<u64>>) -> Result<Self> {
        if m.len() != target.rank() {
            return Err(Error::Structural(format!(
                "functor matrix has {} rows, target rank is {}",
                m.len(),
                target.rank()
            )));
        }
        if let Some((y, row)) = m.iter().enumerate().find(|(_, r)| r.len() != source.rank()) {
            return Err(Error::Structural(format!(
                "row {y} has {} entries, source rank is {}",
                row.len(),
                source.rank()
            )));
        }
        Ok(FunctorMatrix { source, target, m })
    }

    pub fn identity(ring: Arc<FusionRing>) -> Self {
        let n = ring.rank();
        let m = (0..n)
            .map(|y| (0..n).map(|x| u64::from(x == y)).collect())
            .collect();
        FunctorMatrix {
            source: ring.clone(),
            target: ring,
            m,
        }
    }

    /// The embedding `Vec -> C` of the unit.
    pub fn unit_embedding(ring: Arc<FusionRing>) -> Self {
        let vec = Arc::new(crate::fusion_ring::trivial());
        let m = (0..ring.rank())
            .map(|y| vec![u64::from(y == ring.unit())])
            .collect();
        FunctorMatrix {
            source: vec,
            target: ring,
            m,
        }
    }

    /// The functor `C -> Vec` sending every simple to `FPdim`-many copies of
    /// the unit; only meaningful when all FP dimensions are integers.
    pub fn to_vec(ring: Arc<FusionRing>, dims: &[u64]) -> Result<Self> {
        if dims.len() != ring.rank() {
            return Err(Error::Structural(
                "one dimension per simple is required".into(),
            ));
        }
        let vec = Arc::new(crate::fusion_ring::trivial());
        FunctorMatrix::new(ring, vec, vec![dims.to_vec()])
    }

    pub fn source(&self) -> &Arc<FusionRing> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FusionRing> {
        &self.target
    }

    pub fn matrix(&self) -> &[Vec<u64>] {
        &self.m
    }

    pub fn entry(&self, y: usize, x: usize) -> u64 {
        self.m[y][x]
    }

    /// `F(X)` in the target basis.
    pub fn image_of(&self, x: usize) -> Vec<u64> {
        self.m.iter().map(|row| row[x]).collect()
    }

    /// `F(v)` for an element of the source written in its basis.
    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        self.m
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Multiplicity of the target unit in `F(X)`.
    pub fn unit_multiplicity(&self, x: usize) -> u64 {
        self.m[self.target.unit()][x]
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &FunctorMatrix) -> Result<FunctorMatrix> {
        if !same_ring(inner.target(), self.source()) {
            return Err(Error::Precondition(
                "functors are not composable: rings differ".into(),
            ));
        }
        let m = self
            .m
            .iter()
            .map(|row| {
                (0..inner.source.rank())
                    .map(|x| (0..row.len()).map(|k| row[k] * inner.m[k][x]).sum())
                    .collect()
            })
            .collect();
        FunctorMatrix::new(inner.source.clone(), self.target.clone(), m)
    }

    /// Checks the unit column, multiplicativity `F(i)F(j) = F(ij)` and
    /// compatibility with duals.
    pub fn validate(&self) -> FunctorValidation {
        let (s, t) = (&self.source, &self.target);
        let mut violations = Vec::new();
        for y in 0..t.rank() {
            let expected = u64::from(y == t.unit());
            let value = self.m[y][s.unit()];
            if value != expected {
                violations.push(FunctorViolation::UnitColumn { y, value, expected });
            }
        }
        let images: Vec<Vec<u64>> = (0..s.rank()).map(|x| self.image_of(x)).collect();
        for i in 0..s.rank() {
            for j in 0..s.rank() {
                let lhs = t.multiply(&images[i], &images[j]);
                let mut ij = vec![0u64; s.rank()];
                for &(k, v) in s.product(i, j) {
                    ij[k] += v;
                }
                if lhs != self.apply(&ij) {
                    violations.push(FunctorViolation::Multiplicativity { i, j });
                }
            }
        }
        for x in 0..s.rank() {
            for y in 0..t.rank() {
                if self.m[y][s.dual(x)] != self.m[t.dual(y)][x] {
                    violations.push(FunctorViolation::Duality { y, x });
                }
            }
        }
        FunctorValidation { violations }
    }

    /// Every target simple occurs in the image of some source simple.
    pub fn is_dominant(&self) -> bool {
        self.m.iter().all(|row| row.iter().any(|&v| v > 0))
    }

    /// Source simples with trivial image: `FPdim X = m_1 F(X)`. The result is
    /// checked to be closed under fusion and duals.
    pub fn kernel_simples<T: Float>(
        &self,
        fp_source: &FpData<T>,
        tol: T,
    ) -> Result<BTreeSet<usize>> {
        let kernel = kernel_by_dimension(
            (0..self.source.rank()).map(|x| self.unit_multiplicity(x)),
            &fp_source.dims,
            tol,
        );
        if self.source.generated_subring(&kernel)? != kernel {
            return Err(Error::Consistency(format!(
                "kernel {kernel:?} is not closed under fusion and duals"
            )));
        }
        Ok(kernel)
    }

    /// Every source simple whose image contains the unit lies in the kernel.
    pub fn is_normal<T: Float>(&self, fp_source: &FpData<T>, tol: T) -> bool {
        normal_by_dimension(
            (0..self.source.rank()).map(|x| self.unit_multiplicity(x)),
            &fp_source.dims,
            tol,
        )
    }

    /// Frobenius-Perron index `FPdim C / FPdim D` of a dominant functor,
    /// cross-checked against `FPdim G(1) = sum_X m_1 F(X) FPdim X` with `G`
    /// the adjoint.
    pub fn fp_index<T: Float>(
        &self,
        fp_source: &FpData<T>,
        fp_target: &FpData<T>,
        tol: T,
    ) -> Result<T> {
        if !self.is_dominant() {
            return Err(Error::Precondition(
                "the Frobenius-Perron index is only defined for dominant functors".into(),
            ));
        }
        let ratio = fp_source.total / fp_target.total;
        let adjoint_unit = self.adjoint_unit_fpdim(fp_source);
        if (ratio - adjoint_unit).abs() >= tol {
            return Err(Error::Consistency(format!(
                "FPdim C / FPdim D = {} but FPdim G(1) = {}",
                ratio.to_f64().unwrap_or(f64::NAN),
                adjoint_unit.to_f64().unwrap_or(f64::NAN)
            )));
        }
        Ok(ratio)
    }

    /// `FPdim G(1)` where `G(1) = sum_X m_1 F(X) X`.
    pub fn adjoint_unit_fpdim<T: Float>(&self, fp_source: &FpData<T>) -> T {
        (0..self.source.rank()).fold(T::zero(), |acc, x| {
            acc + cast::<T>(self.unit_multiplicity(x) as f64) * fp_source.dims[x]
        })
    }

    /// Matrix of the monad `T = F G` on the target basis:
    /// `T[Y'][Y] = sum_X m[Y'][X] m[Y][X]`, column `Y` being `T(Y)`.
    pub fn monad_matrix(&self) -> Vec<Vec<u64>> {
        let n = self.target.rank();
        (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| self.m[a].iter().zip(&self.m[b]).map(|(p, q)| p * q).sum())
                    .collect()
            })
            .collect()
    }

    pub fn monad_checks<T: Float>(
        &self,
        fp_source: &FpData<T>,
        fp_target: &FpData<T>,
        tol: Tolerances<T>,
    ) -> MonadReport<T> {
        let t = self.monad_matrix();
        let unit = self.target.unit();
        let monad_normal = (0..self.target.rank()).all(|y| y == unit || t[y][unit] == 0);
        let functor_normal = self.is_normal(fp_source, tol.object);
        let dominant = self.is_dominant();
        let column_fpdim = |c: usize| -> T {
            (0..self.target.rank()).fold(T::zero(), |acc, y| {
                acc + cast::<T>(t[y][c] as f64) * fp_target.dims[y]
            })
        };
        let fpdim_t1 = column_fpdim(unit);
        let mut index_residual = None;
        let mut module_residual = None;
        if dominant {
            let index = fp_source.total / fp_target.total;
            index_residual = Some((fpdim_t1 - index).abs());
            module_residual = Some((0..self.target.rank()).fold(T::zero(), |m, x| {
                m.max((column_fpdim(x) - fpdim_t1 * fp_target.dims[x]).abs())
            }));
        }
        let passes = monad_normal == functor_normal
            && index_residual.is_none_or(|r| r < tol.aggregate)
            && module_residual.is_none_or(|r| r < tol.aggregate);
        MonadReport {
            monad: t,
            monad_normal,
            functor_normal,
            dominant,
            fpdim_t1,
            index_residual,
            module_residual,
            passes,
            tolerances: tol,
        }
    }
}

pub(crate) fn same_ring(a: &Arc<FusionRing>, b: &Arc<FusionRing>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

pub(crate) fn kernel_by_dimension<T: Float>(
    unit_multiplicities: impl Iterator<Item = u64>,
    dims: &[T],
    tol: T,
) -> BTreeSet<usize> {
    unit_multiplicities
        .zip(dims)
        .enumerate()
        .filter(|(_, (m1, &d))| (d - cast::<T>(*m1 as f64)).abs() < tol)
        .map(|(x, _)| x)
        .collect()
}

pub(crate) fn normal_by_dimension<T: Float>(
    unit_multiplicities: impl Iterator<Item = u64>,
    dims: &[T],
    tol: T,
) -> bool {
    unit_multiplicities
        .zip(dims)
        .all(|(m1, &d)| m1 == 0 || (d - cast::<T>(m1 as f64)).abs() < tol)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FunctorViolation {
    UnitColumn { y: usize, value: u64, expected: u64 },
    Multiplicativity { i: usize, j: usize },
    Duality { y: usize, x: usize },
}

impl fmt::Display for FunctorViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctorViolation::UnitColumn { y, value, expected } => {
                write!(
                    f,
                    "unit column: m({y}, unit) = {value}, expected {expected}"
                )
            }
            FunctorViolation::Multiplicativity { i, j } => {
                write!(f, "F({i}) F({j}) differs from F({i} {j})")
            }
            FunctorViolation::Duality { y, x } => {
                write!(f, "duality: m({y}, {x}*) differs from m({y}*, {x})")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FunctorValidation {
    pub violations: Vec<FunctorViolation>,
}

impl FunctorValidation {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonadReport<T> {
    pub monad: Vec<Vec<u64>>,
    /// `T(1)` is a multiple of the unit.
    pub monad_normal: bool,
    /// Normality of the functor by the kernel criterion.
    pub functor_normal: bool,
    pub dominant: bool,
    pub fpdim_t1: T,
    /// `|FPdim T(1) - FPind|`, dominant functors only.
    pub index_residual: Option<T>,
    /// `max_X |FPdim T(X) - FPdim T(1) FPdim X|`, dominant functors only.
    pub module_residual: Option<T>,
    pub passes: bool,
    pub tolerances: Tolerances<T>,
}

/// Outcome of checking `C' -i-> C -F-> C''` for exactness.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactnessReport<T> {
    pub embedding_valid: bool,
    /// `i(C')` lies in the kernel of `F`.
    pub embedding_into_kernel: bool,
    pub image_equals_kernel: bool,
    pub dominant: bool,
    pub normal: bool,
    pub kernel: BTreeSet<usize>,
    /// FP dimension of the kernel subcategory.
    pub kernel_fpdim: T,
    pub fpdim_sub: T,
    pub fpdim_middle: T,
    pub fpdim_quotient: T,
    /// `|FPdim C - FPdim C' FPdim C''|`.
    pub multiplicativity_residual: T,
    /// `max_Y |FPdim Y - (1/FPdim C') sum_X m[Y][X] FPdim X|`.
    pub fpdimy_max_residual: T,
    /// The definitional and the dimension-counting criteria agree.
    pub consistent: bool,
    pub verdict: bool,
    pub tolerances: Tolerances<T>,
}

/// Decides whether `C' -i-> C -F-> C''` is an exact sequence, by the
/// definition (dominance, normality, image of `i` equal to the kernel) and
/// independently by FP-dimension multiplicativity. The two routes must agree.
pub fn verify_exact_sequence<T: Float>(
    embedding: &FunctorMatrix,
    functor: &FunctorMatrix,
    tol: Tolerances<T>,
) -> Result<ExactnessReport<T>> {
    if !same_ring(embedding.target(), functor.source()) {
        return Err(Error::Precondition(
            "embedding target differs from functor source".into(),
        ));
    }
    let mut image = BTreeSet::new();
    for x in 0..embedding.source().rank() {
        let col = embedding.image_of(x);
        let ones: Vec<usize> = (0..col.len()).filter(|&y| col[y] != 0).collect();
        if ones.len() != 1 || col[ones[0]] != 1 || !image.insert(ones[0]) {
            return Err(Error::Precondition(format!(
                "embedding is not injective on basis elements (column {x})"
            )));
        }
    }
    let fp_sub: FpData<T> = embedding.source().fpdim()?;
    let fp_mid: FpData<T> = functor.source().fpdim()?;
    let fp_quot: FpData<T> = functor.target().fpdim()?;

    let embedding_valid = embedding.validate().is_valid();
    let dominant = functor.is_dominant();
    let normal = functor.is_normal(&fp_mid, tol.object);
    let kernel = functor.kernel_simples(&fp_mid, tol.object)?;
    let embedding_into_kernel = image.is_subset(&kernel);
    let image_equals_kernel = image == kernel;

    let multiplicativity_residual = (fp_mid.total - fp_sub.total * fp_quot.total).abs();
    let fpdimy_max_residual = (0..functor.target().rank()).fold(T::zero(), |acc, y| {
        let sum = (0..functor.source().rank()).fold(T::zero(), |s, x| {
            s + cast::<T>(functor.entry(y, x) as f64) * fp_mid.dims[x]
        });
        acc.max((fp_quot.dims[y] - sum / fp_sub.total).abs())
    });
    let multiplicative = multiplicativity_residual < tol.aggregate;
    let fpdimy_ok = fpdimy_max_residual < tol.aggregate;

    let definitional = dominant && normal && image_equals_kernel;
    let numerical = dominant && embedding_into_kernel && multiplicative;
    let consistent = definitional == numerical && (!definitional || fpdimy_ok);
    let verdict = embedding_valid
        && embedding_into_kernel
        && image_equals_kernel
        && dominant
        && normal
        && multiplicative
        && fpdimy_ok
        && consistent;
    Ok(ExactnessReport {
        embedding_valid,
        embedding_into_kernel,
        image_equals_kernel,
        dominant,
        normal,
        kernel_fpdim: fp_mid.total_of(&kernel),
        kernel,
        fpdim_sub: fp_sub.total,
        fpdim_middle: fp_mid.total,
        fpdim_quotient: fp_quot.total,
        multiplicativity_residual,
        fpdimy_max_residual,
        consistent,
        verdict,
        tolerances: tol,
    })
}

/// Structure forced on a dominant functor of FP index 2.
#[derive(Debug, Clone, PartialEq)]
pub struct Index2Report<T> {
    pub fp_index: T,
    /// The unique non-unit simple whose image contains the unit, if unique.
    pub j: Option<usize>,
    pub j_invertible: bool,
    pub j_squares_to_unit: bool,
    pub normal: bool,
    pub kernel: BTreeSet<usize>,
    pub passes: bool,
    pub tolerances: Tolerances<T>,
}

pub fn index2_check<T: Float>(
    functor: &FunctorMatrix,
    fp_source: &FpData<T>,
    fp_target: &FpData<T>,
    tol: Tolerances<T>,
) -> Result<Index2Report<T>> {
    let index = functor.fp_index(fp_source, fp_target, tol.aggregate)?;
    let two: T = cast(2.0);
    if (index - two).abs() >= tol.aggregate {
        return Err(Error::Precondition(format!(
            "Frobenius-Perron index is {}, not 2",
            index.to_f64().unwrap_or(f64::NAN)
        )));
    }
    let ring = functor.source();
    let unit = ring.unit();
    let candidates: Vec<usize> = (0..ring.rank())
        .filter(|&x| x != unit && functor.unit_multiplicity(x) > 0)
        .collect();
    let j = (candidates.len() == 1).then(|| candidates[0]);
    let (j_invertible, j_squares_to_unit) = match j {
        Some(j) => {
            let dim_one = (fp_source.dims[j] - T::one()).abs() < tol.object;
            let jj_dual = ring.product(j, ring.dual(j)) == [(unit, 1)];
            let jj = ring.product(j, j) == [(unit, 1)];
            (dim_one && jj_dual, jj)
        }
        None => (false, false),
    };
    let normal = functor.is_normal(fp_source, tol.object);
    let kernel = functor.kernel_simples(fp_source, tol.object)?;
    let kernel_is_z2 = j.is_some_and(|j| kernel == BTreeSet::from([unit, j]));
    let passes = j.is_some() && j_invertible && j_squares_to_unit && normal && kernel_is_z2;
    Ok(Index2Report {
        fp_index: index,
        j,
        j_invertible,
        j_squares_to_unit,
        normal,
        kernel,
        passes,
        tolerances: tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion_ring::{fibonacci, trivial};

    fn z2() -> Arc<FusionRing> {
        Arc::new(
            FusionRing::from_group_table(vec!["0".into(), "1".into()], &[vec![0, 1], vec![1, 0]])
                .unwrap(),
        )
    }

    #[test]
    fn identity_is_valid_dominant_normal() {
        let r = Arc::new(fibonacci());
        let f = FunctorMatrix::identity(r.clone());
        assert!(f.validate().is_valid());
        assert!(f.is_dominant());
        let fp: FpData<f64> = r.fpdim().unwrap();
        assert!(f.is_normal(&fp, 1e-9));
        assert_eq!(f.kernel_simples(&fp, 1e-9).unwrap(), BTreeSet::from([0]));
        assert!((f.fp_index(&fp, &fp, 1e-6).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn doubled_unit_column_is_flagged() {
        let r = z2();
        let f = FunctorMatrix::new(r.clone(), r, vec![vec![2, 0], vec![0, 1]]).unwrap();
        assert!(f
            .validate()
            .violations
            .contains(&FunctorViolation::UnitColumn {
                y: 0,
                value: 2,
                expected: 1
            }));
    }

    #[test]
    fn dimension_mismatch_is_structural() {
        let r = z2();
        let err = FunctorMatrix::new(r.clone(), r, vec![vec![1, 0]]);
        assert!(matches!(err, Err(Error::Structural(_))));
    }

    #[test]
    fn fiber_functor_of_z2() {
        let r = z2();
        let f = FunctorMatrix::to_vec(r.clone(), &[1, 1]).unwrap();
        assert!(f.validate().is_valid());
        assert_eq!(f.monad_matrix(), vec![vec![2]]);
        let fp: FpData<f64> = r.fpdim().unwrap();
        let fv: FpData<f64> = trivial().fpdim().unwrap();
        let report = f.monad_checks(&fp, &fv, Tolerances::default());
        assert!(report.monad_normal && report.functor_normal && report.passes);
        assert!((report.fpdim_t1 - 2.0).abs() < 1e-12);
    }

    #[test]
    fn unit_embedding_then_identity_is_exact() {
        let r = Arc::new(fibonacci());
        let i = FunctorMatrix::unit_embedding(r.clone());
        let f = FunctorMatrix::identity(r);
        let rep = verify_exact_sequence::<f64>(&i, &f, Tolerances::default()).unwrap();
        assert!(rep.verdict, "{rep:?}");
    }

    #[test]
    fn non_embedding_is_rejected() {
        let r = z2();
        let i = FunctorMatrix::new(r.clone(), r.clone(), vec![vec![1, 1], vec![0, 0]]).unwrap();
        let f = FunctorMatrix::identity(r);
        assert!(matches!(
            verify_exact_sequence::<f64>(&i, &f, Tolerances::default()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn index2_on_index1_is_a_precondition_error() {
        let r = z2();
        let f = FunctorMatrix::identity(r.clone());
        let fp: FpData<f64> = r.fpdim().unwrap();
        assert!(matches!(
            index2_check(&f, &fp, &fp, Tolerances::default()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn index2_on_fiber_functor_of_z2() {
        let r = z2();
        let f = FunctorMatrix::to_vec(r.clone(), &[1, 1]).unwrap();
        let fp: FpData<f64> = r.fpdim().unwrap();
        let fv: FpData<f64> = trivial().fpdim().unwrap();
        let rep = index2_check(&f, &fp, &fv, Tolerances::default()).unwrap();
        assert!(rep.passes);
        assert_eq!(rep.j, Some(1));
    }

    #[test]
    fn fp_index_requires_dominance() {
        let r = Arc::new(fibonacci());
        let i = FunctorMatrix::unit_embedding(r.clone());
        let fp1: FpData<f64> = trivial().fpdim().unwrap();
        let fp: FpData<f64> = r.fpdim().unwrap();
        assert!(!i.is_dominant());
        assert!(matches!(
            i.fp_index(&fp1, &fp, 1e-6),
            Err(Error::Precondition(_))
        ));
    }
}

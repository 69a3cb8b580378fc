use num_traits::Float;

/// Per-object tolerance used for comparisons of a single FP dimension with an
/// integer (e.g. `FPdim X = m_1 F(X)`).
pub const OBJECT_TOL: f64 = 1e-9;

/// Tolerance for aggregated sums over a whole basis (multiplicativity,
/// index identities, orthogonality).
pub const AGGREGATE_TOL: f64 = 1e-6;

/// The pair of absolute tolerances in effect for a computation.
///
/// Every report produced by the library carries the tolerances that decided
/// it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances<T> {
    pub object: T,
    pub aggregate: T,
}

impl<T: Float> Tolerances<T> {
    pub fn new(object: T, aggregate: T) -> Self {
        Tolerances { object, aggregate }
    }

    pub fn within_object(&self, a: T, b: T) -> bool {
        (a - b).abs() < self.object
    }

    pub fn within_aggregate(&self, a: T, b: T) -> bool {
        (a - b).abs() < self.aggregate
    }
}

impl<T: Float> Default for Tolerances<T> {
    fn default() -> Self {
        Tolerances {
            object: T::from(OBJECT_TOL).unwrap(),
            aggregate: T::from(AGGREGATE_TOL).unwrap(),
        }
    }
}

/// Converts a small integer into the scalar type.
pub(crate) fn cast<T: Float>(n: impl Into<f64>) -> T {
    T::from(n.into()).expect("scalar cast")
}

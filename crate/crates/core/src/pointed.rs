//! Pointed categories `C(G, alpha)`: `G`-graded vector spaces with
//! associativity twisted by a 3-cocycle. At the level of fusion rings only
//! `G` is visible; `alpha` is carried along for cohomological questions.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::Float;

use crate::cohomology::Cocycle3;
use crate::error::{Error, Result};
use crate::functors::{verify_exact_sequence, ExactnessReport, FunctorMatrix};
use crate::fusion_ring::FusionRing;
use crate::groups::{FiniteGroup, GroupExtension, GroupHom};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedCategory {
    group: Arc<FiniteGroup>,
    alpha: Cocycle3,
}

impl PointedCategory {
    pub fn new(group: Arc<FiniteGroup>, alpha: Cocycle3) -> Result<Self> {
        if alpha.group().as_ref() != group.as_ref() {
            return Err(Error::Precondition(
                "cocycle lives on a different group".into(),
            ));
        }
        if !alpha.is_cocycle() {
            return Err(Error::Structural(
                "alpha fails the 3-cocycle identity".into(),
            ));
        }
        Ok(PointedCategory { group, alpha })
    }

    /// `C(G, 1)`, with the zero cocycle mod `|G|`.
    pub fn untwisted(group: Arc<FiniteGroup>) -> Self {
        let m = group.order() as u64;
        let alpha = Cocycle3::zero(group.clone(), m).expect("positive modulus");
        PointedCategory { group, alpha }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn alpha(&self) -> &Cocycle3 {
        &self.alpha
    }

    /// The group ring `Z[G]`, basis labelled by element names.
    pub fn fusion_ring(&self) -> FusionRing {
        pointed_fusion_ring(&self.group)
    }
}

pub fn pointed_fusion_ring(group: &FiniteGroup) -> FusionRing {
    FusionRing::from_group_table(group.names().to_vec(), group.table())
        .expect("a group table is a valid fusion ring")
}

/// The functor `C(A) -> C(B)` induced by a homomorphism on basis elements.
pub fn hom_functor(hom: &GroupHom) -> Result<FunctorMatrix> {
    let source = Arc::new(pointed_fusion_ring(hom.source()));
    let target = Arc::new(pointed_fusion_ring(hom.target()));
    let m = (0..target.rank())
        .map(|y| {
            (0..source.rank())
                .map(|x| u64::from(hom.apply(x) == y))
                .collect()
        })
        .collect();
    FunctorMatrix::new(source, target, m)
}

/// `C(G', 1) -> C(G, infl alpha) -> C(G'', alpha)` with its verification.
#[derive(Debug, Clone)]
pub struct PointedSequence<T> {
    pub sub: PointedCategory,
    pub middle: PointedCategory,
    pub quotient: PointedCategory,
    pub embedding: FunctorMatrix,
    pub functor: FunctorMatrix,
    pub report: ExactnessReport<T>,
}

pub fn build_pointed_exact_sequence<T: Float>(
    ext: &GroupExtension,
    alpha: &Cocycle3,
    tol: Tolerances<T>,
) -> Result<PointedSequence<T>> {
    let quotient = PointedCategory::new(ext.quotient_group().clone(), alpha.clone())?;
    let middle = PointedCategory::new(ext.group().clone(), alpha.inflate(&ext.projection)?)?;
    let sub = PointedCategory::new(
        ext.kernel_group().clone(),
        Cocycle3::zero(ext.kernel_group().clone(), alpha.modulus())?,
    )?;
    let embedding = hom_functor(&ext.inclusion)?;
    let functor = hom_functor(&ext.projection)?;
    let report = verify_exact_sequence(&embedding, &functor, tol)?;
    if !report.verdict {
        return Err(Error::Consistency(
            "pointed sequence from an exact group sequence failed verification".into(),
        ));
    }
    Ok(PointedSequence {
        sub,
        middle,
        quotient,
        embedding,
        functor,
        report,
    })
}

/// Verdict of the simplicity test with a witness subgroup when not simple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Simplicity {
    pub simple: bool,
    pub witness: Option<BTreeSet<usize>>,
}

/// `C(G, alpha)` is simple iff no normal subgroup `1 < H < G` has `alpha|H`
/// cohomologically trivial. The trivial group gives `Vec`, which is not
/// counted as simple.
pub fn is_simple_pointed(p: &PointedCategory) -> Result<Simplicity> {
    let n = p.group.order();
    if n == 1 {
        return Ok(Simplicity {
            simple: false,
            witness: None,
        });
    }
    for h in p.group.normal_subgroups()? {
        if h.len() == 1 || h.len() == n {
            continue;
        }
        if p.alpha.restrict(&h)?.is_coboundary()? {
            return Ok(Simplicity {
                simple: false,
                witness: Some(h),
            });
        }
    }
    Ok(Simplicity {
        simple: true,
        witness: None,
    })
}

/// No proper nontrivial fusion subcategory: `G` cyclic of prime order.
pub fn is_simple_eno(p: &PointedCategory) -> bool {
    let n = p.group.order();
    n >= 2
        && (2..n)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

//! Group actions on fusion rings by based automorphisms and the
//! Grothendieck-level data of the equivariantization `C^G`.
//!
//! Simples of `C^G` are modelled as pairs (orbit, irreducible character of
//! the stabilizer of the orbit's least element). Fusion rules of `C^G` are
//! not determined by this data and are not produced.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_traits::Float;

use crate::characters::{character_table_with, CharacterOptions, CharacterTable};
use crate::error::{Error, Result};
use crate::functors::{kernel_by_dimension, normal_by_dimension};
use crate::fusion_ring::{FpData, FusionRing};
use crate::groups::{FiniteGroup, GroupExtension};
use crate::tolerance::{cast, Tolerances};

/// An action `g -> perms[g]` of a finite group on the basis of a ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAction {
    group: Arc<FiniteGroup>,
    ring: Arc<FusionRing>,
    perms: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ActionViolation {
    NotPermutation { g: usize },
    IdentityNotTrivial,
    Composition { g: usize, h: usize },
    UnitMoved { g: usize },
    Duality { g: usize, x: usize },
    FusionRules { g: usize, i: usize, j: usize },
}

impl fmt::Display for ActionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ActionViolation::NotPermutation { g } => {
                write!(f, "perm of element {g} is not a permutation")
            }
            ActionViolation::IdentityNotTrivial => write!(f, "identity acts non-trivially"),
            ActionViolation::Composition { g, h } => {
                write!(f, "pi({g}) pi({h}) differs from pi({g}{h})")
            }
            ActionViolation::UnitMoved { g } => write!(f, "element {g} moves the unit"),
            ActionViolation::Duality { g, x } => {
                write!(f, "element {g} does not commute with the dual of {x}")
            }
            ActionViolation::FusionRules { g, i, j } => {
                write!(
                    f,
                    "element {g} does not preserve the product of {i} and {j}"
                )
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ActionValidation {
    pub violations: Vec<ActionViolation>,
}

impl ActionValidation {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl GroupAction {
    /// Checks sizes only; the action axioms are checked by
    /// [`GroupAction::validate`].
    pub fn new(
        group: Arc<FiniteGroup>,
        ring: Arc<FusionRing>,
        perms: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if perms.len() != group.order() {
            return Err(Error::Structural(format!(
                "{} permutations for a group of order {}",
                perms.len(),
                group.order()
            )));
        }
        if let Some(g) = perms.iter().position(|p| p.len() != ring.rank()) {
            return Err(Error::Structural(format!(
                "permutation of element {g} has length {}, ring rank is {}",
                perms[g].len(),
                ring.rank()
            )));
        }
        Ok(GroupAction { group, ring, perms })
    }

    pub fn trivial(group: Arc<FiniteGroup>, ring: Arc<FusionRing>) -> Self {
        let id: Vec<usize> = (0..ring.rank()).collect();
        let perms = vec![id; group.order()];
        GroupAction { group, ring, perms }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn ring(&self) -> &Arc<FusionRing> {
        &self.ring
    }

    pub fn perms(&self) -> &[Vec<usize>] {
        &self.perms
    }

    pub fn apply(&self, g: usize, x: usize) -> usize {
        self.perms[g][x]
    }

    pub fn validate(&self) -> ActionValidation {
        let mut violations = Vec::new();
        let n = self.ring.rank();
        let perms_ok: Vec<bool> = self
            .perms
            .iter()
            .map(|p| {
                let mut seen = vec![false; n];
                p.iter()
                    .all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
            })
            .collect();
        for (g, ok) in perms_ok.iter().enumerate() {
            if !ok {
                violations.push(ActionViolation::NotPermutation { g });
            }
        }
        if !perms_ok.iter().all(|&b| b) {
            return ActionValidation { violations };
        }
        if self.perms[0].iter().enumerate().any(|(i, &x)| i != x) {
            violations.push(ActionViolation::IdentityNotTrivial);
        }
        for g in 0..self.group.order() {
            for h in 0..self.group.order() {
                let gh = self.group.mul(g, h);
                if (0..n).any(|x| self.perms[g][self.perms[h][x]] != self.perms[gh][x]) {
                    violations.push(ActionViolation::Composition { g, h });
                }
            }
        }
        for (g, p) in self.perms.iter().enumerate() {
            if p[self.ring.unit()] != self.ring.unit() {
                violations.push(ActionViolation::UnitMoved { g });
            }
            for x in 0..n {
                if p[self.ring.dual(x)] != self.ring.dual(p[x]) {
                    violations.push(ActionViolation::Duality { g, x });
                }
            }
            for i in 0..n {
                for j in 0..n {
                    let image: Vec<(usize, u64)> = {
                        let mut v: Vec<(usize, u64)> = self
                            .ring
                            .product(i, j)
                            .iter()
                            .map(|&(k, c)| (p[k], c))
                            .collect();
                        v.sort_unstable();
                        v
                    };
                    if image != self.ring.product(p[i], p[j]) {
                        violations.push(ActionViolation::FusionRules { g, i, j });
                    }
                }
            }
        }
        ActionValidation { violations }
    }

    /// Orbits sorted by least element.
    pub fn orbits(&self) -> Vec<BTreeSet<usize>> {
        let mut seen = vec![false; self.ring.rank()];
        let mut out = Vec::new();
        for x in 0..self.ring.rank() {
            if seen[x] {
                continue;
            }
            let orbit: BTreeSet<usize> = self.perms.iter().map(|p| p[x]).collect();
            for &y in &orbit {
                seen[y] = true;
            }
            out.push(orbit);
        }
        out
    }

    pub fn stabilizer(&self, x: usize) -> BTreeSet<usize> {
        (0..self.group.order())
            .filter(|&g| self.perms[g][x] == x)
            .collect()
    }
}

/// One simple of `C^G`: an orbit with an irreducible character of the
/// stabilizer of its least element.
#[derive(Debug, Clone, PartialEq)]
pub struct EquivariantSimple<T> {
    pub orbit: BTreeSet<usize>,
    pub stabilizer: BTreeSet<usize>,
    /// Row index in the stabilizer's character table.
    pub irrep: usize,
    pub degree: u64,
    /// `|orbit| * degree * FPdim(representative)`.
    pub fpdim: T,
}

impl<T> EquivariantSimple<T> {
    pub fn representative(&self) -> usize {
        *self.orbit.iter().next().expect("orbits are non-empty")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquivariantSimples<T> {
    pub simples: Vec<EquivariantSimple<T>>,
    /// `sum FPdim^2` over the simples.
    pub total: T,
    /// `|G| FPdim(C)`.
    pub expected_total: T,
    pub tolerances: Tolerances<T>,
}

impl<T: Float> EquivariantSimples<T> {
    pub fn dims(&self) -> Vec<T> {
        self.simples.iter().map(|s| s.fpdim).collect()
    }

    pub fn labels(&self) -> Vec<String> {
        self.simples
            .iter()
            .map(|s| format!("({},{})", s.representative(), s.irrep))
            .collect()
    }
}

pub fn equivariant_simples<T: Float>(
    action: &GroupAction,
    opts: &CharacterOptions,
    tol: Tolerances<T>,
) -> Result<EquivariantSimples<T>> {
    let report = action.validate();
    if let Some(v) = report.violations.first() {
        return Err(Error::Precondition(format!("invalid action: {v}")));
    }
    let fp: FpData<T> = action.ring.fpdim()?;
    let mut tables: BTreeMap<BTreeSet<usize>, CharacterTable<T>> = BTreeMap::new();
    let mut simples = Vec::new();
    for orbit in action.orbits() {
        let rep = *orbit.iter().next().expect("non-empty orbit");
        let stabilizer = action.stabilizer(rep);
        if !tables.contains_key(&stabilizer) {
            let (h, _) = action.group.subgroup(&stabilizer)?;
            tables.insert(stabilizer.clone(), character_table_with(&h, opts)?);
        }
        let table = &tables[&stabilizer];
        for (irrep, &degree) in table.degrees().iter().enumerate() {
            simples.push(EquivariantSimple {
                orbit: orbit.clone(),
                stabilizer: stabilizer.clone(),
                irrep,
                degree,
                fpdim: cast::<T>((orbit.len() as u64 * degree) as f64) * fp.dims[rep],
            });
        }
    }
    let total = simples
        .iter()
        .fold(T::zero(), |acc, s| acc + s.fpdim * s.fpdim);
    let expected_total = cast::<T>(action.group.order() as f64) * fp.total;
    if !tol.within_aggregate(total, expected_total) {
        return Err(Error::Consistency(format!(
            "equivariant dimension identity fails: {} vs {}",
            total.to_f64().unwrap_or(f64::NAN),
            expected_total.to_f64().unwrap_or(f64::NAN)
        )));
    }
    Ok(EquivariantSimples {
        simples,
        total,
        expected_total,
        tolerances: tol,
    })
}

/// The forgetful functor `C^G -> C` as a matrix `m[X][s]`. Its source ring
/// is not available, so it is kept apart from [`crate::functors::FunctorMatrix`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForgetfulFunctor {
    target: Arc<FusionRing>,
    source_labels: Vec<String>,
    unit_simple: usize,
    m: Vec<Vec<u64>>,
}

impl ForgetfulFunctor {
    pub fn target(&self) -> &Arc<FusionRing> {
        &self.target
    }

    pub fn source_labels(&self) -> &[String] {
        &self.source_labels
    }

    pub fn matrix(&self) -> &[Vec<u64>] {
        &self.m
    }

    /// Index of the unit of `C^G`: the unit orbit with the trivial character.
    pub fn unit_simple(&self) -> usize {
        self.unit_simple
    }

    pub fn unit_column_ok(&self) -> bool {
        let u = self.target.unit();
        (0..self.target.rank()).all(|y| self.m[y][self.unit_simple] == u64::from(y == u))
    }

    pub fn is_dominant(&self) -> bool {
        self.m.iter().all(|row| row.iter().any(|&v| v > 0))
    }

    pub fn unit_multiplicities(&self) -> impl Iterator<Item = u64> + '_ {
        self.m[self.target.unit()].iter().copied()
    }

    pub fn kernel<T: Float>(&self, es: &EquivariantSimples<T>, tol: T) -> BTreeSet<usize> {
        kernel_by_dimension(self.unit_multiplicities(), &es.dims(), tol)
    }

    pub fn is_normal<T: Float>(&self, es: &EquivariantSimples<T>, tol: T) -> bool {
        normal_by_dimension(self.unit_multiplicities(), &es.dims(), tol)
    }
}

pub fn forgetful_functor<T: Float>(
    action: &GroupAction,
    es: &EquivariantSimples<T>,
) -> ForgetfulFunctor {
    let unit = action.ring.unit();
    let m = (0..action.ring.rank())
        .map(|x| {
            es.simples
                .iter()
                .map(|s| if s.orbit.contains(&x) { s.degree } else { 0 })
                .collect()
        })
        .collect();
    let unit_simple = es
        .simples
        .iter()
        .position(|s| s.orbit.contains(&unit) && s.irrep == 0)
        .expect("the unit orbit carries the trivial character");
    ForgetfulFunctor {
        target: action.ring.clone(),
        source_labels: es.labels(),
        unit_simple,
        m,
    }
}

/// Checks of `rep G -> C^G -> C` at the level of dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct EquivariantReport<T> {
    pub unit_column: bool,
    pub dominant: bool,
    pub normal: bool,
    pub kernel: BTreeSet<usize>,
    /// The kernel is exactly the set of simples on the unit orbit.
    pub kernel_is_unit_orbit: bool,
    /// Kernel degrees are the character degrees of `G`.
    pub kernel_matches_rep_g: bool,
    pub fpdim_equivariant: T,
    pub fpdim_ring: T,
    pub group_order: usize,
    /// `|FPdim C^G - |G| FPdim C|`.
    pub dimension_residual: T,
    pub passes: bool,
    pub tolerances: Tolerances<T>,
}

pub fn check_equivariant_sequence<T: Float>(
    action: &GroupAction,
    es: &EquivariantSimples<T>,
    u: &ForgetfulFunctor,
    opts: &CharacterOptions,
    tol: Tolerances<T>,
) -> Result<EquivariantReport<T>> {
    let unit = action.ring.unit();
    let kernel = u.kernel(es, tol.object);
    let unit_orbit: BTreeSet<usize> = (0..es.simples.len())
        .filter(|&s| es.simples[s].orbit.contains(&unit))
        .collect();
    let table: CharacterTable<T> = character_table_with(&action.group, opts)?;
    let mut expected: Vec<u64> = table.degrees().to_vec();
    let mut found: Vec<u64> = kernel.iter().map(|&s| es.simples[s].degree).collect();
    expected.sort_unstable();
    found.sort_unstable();
    let fp: FpData<T> = action.ring.fpdim()?;
    let dimension_residual = (es.total - cast::<T>(action.group.order() as f64) * fp.total).abs();
    let unit_column = u.unit_column_ok();
    let dominant = u.is_dominant();
    let normal = u.is_normal(es, tol.object);
    let kernel_is_unit_orbit = kernel == unit_orbit;
    let kernel_matches_rep_g = expected == found;
    let passes = unit_column
        && dominant
        && normal
        && kernel_is_unit_orbit
        && kernel_matches_rep_g
        && dimension_residual < tol.aggregate;
    Ok(EquivariantReport {
        unit_column,
        dominant,
        normal,
        kernel,
        kernel_is_unit_orbit,
        kernel_matches_rep_g,
        fpdim_equivariant: es.total,
        fpdim_ring: fp.total,
        group_order: action.group.order(),
        dimension_residual,
        passes,
        tolerances: tol,
    })
}

/// The action of `Q = G/N` on `Rep N` for an extension `1 -> N -> G -> Q -> 1`:
/// `(gamma . chi)(n) = chi(g^-1 n g)` for any lift `g` of `gamma`.
/// Returns the action on the representation ring of `N` built from `table`.
pub fn conjugation_action<T: Float>(
    ext: &GroupExtension,
    table: &CharacterTable<T>,
) -> Result<GroupAction> {
    let n = ext.kernel_group();
    if table.group().as_ref() != n.as_ref() {
        return Err(Error::Precondition(
            "character table is not that of the kernel group".into(),
        ));
    }
    let g = ext.group();
    let q = ext.quotient_group();
    let mut back = vec![usize::MAX; g.order()];
    for x in 0..n.order() {
        back[ext.inclusion.apply(x)] = x;
    }
    let mut lift = vec![usize::MAX; q.order()];
    for x in (0..g.order()).rev() {
        lift[ext.projection.apply(x)] = x;
    }
    let reps: Vec<usize> = table.classes().iter().map(|c| c[0]).collect();
    let tol: T = cast(1e-6);
    let perms = lift
        .iter()
        .map(|&l| {
            let l_inv = g.inv(l);
            (0..table.len())
                .map(|i| {
                    let moved: Vec<_> = reps
                        .iter()
                        .map(|&r| {
                            let conj = g.conjugate(ext.inclusion.apply(r), l_inv);
                            table.value_at(i, back[conj])
                        })
                        .collect();
                    (0..table.len())
                        .find(|&j| {
                            reps.iter()
                                .zip(&moved)
                                .all(|(&r, &v)| (table.value_at(j, r) - v).norm() < tol)
                        })
                        .ok_or_else(|| {
                            Error::Numerical("conjugated character matches no irreducible".into())
                        })
                })
                .collect::<Result<Vec<usize>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    GroupAction::new(q.clone(), Arc::new(table.rep_fusion_ring()?), perms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::character_table;
    use crate::fusion_ring::{fibonacci, trivial as trivial_ring};
    use crate::groups::named::*;
    use crate::pointed::pointed_fusion_ring;

    fn inversion_on_z3() -> GroupAction {
        let ring = Arc::new(pointed_fusion_ring(&cyclic(3)));
        GroupAction::new(cyclic(2), ring, vec![vec![0, 1, 2], vec![0, 2, 1]]).unwrap()
    }

    #[test]
    fn validation() {
        assert!(inversion_on_z3().validate().is_valid());
        let ring = Arc::new(pointed_fusion_ring(&cyclic(3)));
        let bad =
            GroupAction::new(cyclic(2), ring.clone(), vec![vec![0, 1, 2], vec![1, 0, 2]]).unwrap();
        assert!(bad
            .validate()
            .violations
            .contains(&ActionViolation::UnitMoved { g: 1 }));
        assert!(GroupAction::trivial(symmetric(3), ring.clone())
            .validate()
            .is_valid());
        assert!(GroupAction::new(cyclic(2), ring, vec![vec![0, 1, 2]]).is_err());
    }

    #[test]
    fn inversion_gives_rep_s3_dimensions() {
        let a = inversion_on_z3();
        let tol = Tolerances::<f64>::default();
        let opts = CharacterOptions::default();
        let es = equivariant_simples(&a, &opts, tol).unwrap();
        let dims: Vec<f64> = es.dims();
        assert_eq!(dims.len(), 3);
        for (d, e) in dims.iter().zip([1.0, 1.0, 2.0]) {
            assert!((d - e).abs() < 1e-9);
        }
        assert!((es.total - 6.0).abs() < 1e-9);
        let u = forgetful_functor(&a, &es);
        assert_eq!(u.matrix(), &[vec![1, 1, 0], vec![0, 0, 1], vec![0, 0, 1]]);
        let r = check_equivariant_sequence(&a, &es, &u, &opts, tol).unwrap();
        assert!(r.passes, "{r:?}");
    }

    #[test]
    fn trivial_action_on_vec() {
        let a = GroupAction::trivial(cyclic(2), Arc::new(trivial_ring()));
        let tol = Tolerances::<f64>::default();
        let opts = CharacterOptions::default();
        let es = equivariant_simples(&a, &opts, tol).unwrap();
        assert_eq!(es.simples.len(), 2);
        let u = forgetful_functor(&a, &es);
        assert_eq!(u.matrix(), &[vec![1, 1]]);
        let r = check_equivariant_sequence(&a, &es, &u, &opts, tol).unwrap();
        assert!(r.passes);
        assert_eq!(r.kernel.len(), 2);
    }

    #[test]
    fn trivial_action_on_fibonacci() {
        let a = GroupAction::trivial(cyclic(3), Arc::new(fibonacci()));
        let tol = Tolerances::<f64>::default();
        let opts = CharacterOptions::default();
        let es = equivariant_simples(&a, &opts, tol).unwrap();
        assert!((es.total - 3.0 * (5.0 + 5f64.sqrt()) / 2.0).abs() < 1e-9);
        let u = forgetful_functor(&a, &es);
        assert!(
            check_equivariant_sequence(&a, &es, &u, &opts, tol)
                .unwrap()
                .passes
        );
    }

    #[test]
    fn conjugation_on_rep_v4_recovers_a4() {
        let a4 = alternating(4);
        let v4 = a4.normal_subgroups().unwrap()[1].clone();
        assert_eq!(v4.len(), 4);
        let ext = GroupExtension::from_normal_subgroup(&a4, &v4).unwrap();
        let table = character_table::<f64>(ext.kernel_group()).unwrap();
        let a = conjugation_action(&ext, &table).unwrap();
        assert!(a.validate().is_valid());
        let es =
            equivariant_simples(&a, &CharacterOptions::default(), Tolerances::default()).unwrap();
        let mut dims: Vec<u64> = es.dims().iter().map(|d: &f64| d.round() as u64).collect();
        dims.sort_unstable();
        assert_eq!(dims, vec![1, 1, 1, 3]);
        assert!((es.total - 12.0).abs() < 1e-9);
    }
}

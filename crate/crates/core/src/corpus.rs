//! Built-in test corpus: small groups, the extensions and functors between
//! their representation rings, group actions, and the workspace documents
//! checked in under `corpus/`.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::characters::{
    character_table_with, rep_exact_sequence, CharacterOptions, CharacterTable,
};
use crate::cohomology::cyclic_representative;
use crate::equivariant::{conjugation_action, GroupAction};
use crate::error::{Error, Result};
use crate::functors::FunctorMatrix;
use crate::fusion_ring::{fibonacci, trivial as trivial_ring};
use crate::groups::{named, FiniteGroup, GroupExtension};
use crate::io::{to_canonical, Entity, Manifest, PointedDoc, SequenceDoc, Workspace};
use crate::pointed::{hom_functor, pointed_fusion_ring};

/// Names of the documents under `corpus/`.
pub const DOCUMENTS: &[&str] = &[
    "s3_pipeline",
    "z4_pipeline",
    "a4_pipeline",
    "d4_pipeline",
    "pointed",
    "pointed_seq",
    "omega_z2",
    "actions",
    "fibonacci",
];

/// Groups of order at most 60 used throughout the tests.
pub fn groups() -> Vec<(String, Arc<FiniteGroup>)> {
    let mut out: Vec<(String, Arc<FiniteGroup>)> = (2..=7)
        .map(|n| (format!("Z{n}"), named::cyclic(n)))
        .collect();
    out.extend([
        ("S3".to_string(), named::symmetric(3)),
        ("D4".to_string(), named::dihedral(4)),
        ("Q8".to_string(), named::quaternion()),
        ("A4".to_string(), named::alternating(4)),
        ("D5".to_string(), named::dihedral(5)),
        ("S4".to_string(), named::symmetric(4)),
        ("A5".to_string(), named::alternating(5)),
    ]);
    out
}

fn normal_of_size(g: &FiniteGroup, size: usize, cyclic: bool) -> Result<BTreeSet<usize>> {
    g.normal_subgroups()?
        .into_iter()
        .find(|h| h.len() == size && (!cyclic || h.iter().any(|&x| g.element_order(x) == size)))
        .ok_or_else(|| Error::Precondition(format!("no normal subgroup of order {size}")))
}

/// First subgroup of the given order generated by at most two elements, in
/// lexicographic order of generators.
pub fn subgroup_of_order(g: &FiniteGroup, size: usize) -> Result<BTreeSet<usize>> {
    for a in 0..g.order() {
        if g.element_order(a) == size {
            return g.generated_subgroup(&[a]);
        }
    }
    for a in 1..g.order() {
        for b in a + 1..g.order() {
            if !size.is_multiple_of(g.element_order(a)) || !size.is_multiple_of(g.element_order(b))
            {
                continue;
            }
            let h = g.generated_subgroup(&[a, b])?;
            if h.len() == size {
                return Ok(h);
            }
        }
    }
    Err(Error::Precondition(format!("no subgroup of order {size}")))
}

/// Named extensions `1 -> N -> G -> G/N -> 1`.
pub fn extensions() -> Result<Vec<(String, GroupExtension)>> {
    let spec: [(&str, Arc<FiniteGroup>, usize, bool); 8] = [
        ("A3<S3", named::symmetric(3), 3, false),
        ("Z2<Z4", named::cyclic(4), 2, false),
        ("V4<A4", named::alternating(4), 4, false),
        ("Z4<D4", named::dihedral(4), 4, true),
        ("Z5<D5", named::dihedral(5), 5, false),
        ("Z2<Q8", named::quaternion(), 2, false),
        ("A4<S4", named::symmetric(4), 12, false),
        ("V4<S4", named::symmetric(4), 4, false),
    ];
    spec.into_iter()
        .map(|(name, g, size, cyclic)| {
            let n = normal_of_size(&g, size, cyclic)?;
            Ok((
                name.to_string(),
                GroupExtension::from_normal_subgroup(&g, &n)?,
            ))
        })
        .collect()
}

fn restriction(
    g: &Arc<FiniteGroup>,
    sub: &BTreeSet<usize>,
    opts: &CharacterOptions,
) -> Result<FunctorMatrix> {
    let t: CharacterTable<f64> = character_table_with(g, opts)?;
    t.restriction_functor_with(sub, opts)
}

/// Functors between representation rings and group rings. Every entry is a
/// valid tensor functor at the level of fusion rings.
pub fn functors(opts: &CharacterOptions) -> Result<Vec<(String, FunctorMatrix)>> {
    let mut out = Vec::new();
    let subs: [(&str, Arc<FiniteGroup>, usize); 11] = [
        ("res S3>Z3", named::symmetric(3), 3),
        ("res S3>Z2", named::symmetric(3), 2),
        ("res Z4>Z2", named::cyclic(4), 2),
        ("res A4>V4", named::alternating(4), 4),
        ("res A4>Z3", named::alternating(4), 3),
        ("res D4>Z4", named::dihedral(4), 4),
        ("res Q8>Z4", named::quaternion(), 4),
        ("res D5>Z5", named::dihedral(5), 5),
        ("res S4>A4", named::symmetric(4), 12),
        ("res S4>S3", named::symmetric(4), 6),
        ("res A5>A4", named::alternating(5), 12),
    ];
    for (name, g, size) in subs {
        let h = if name == "res A4>V4" || name == "res D4>Z4" {
            normal_of_size(&g, size, name == "res D4>Z4")?
        } else {
            subgroup_of_order(&g, size)?
        };
        out.push((name.to_string(), restriction(&g, &h, opts)?));
    }
    for (name, ext) in extensions()? {
        let (infl, _) = rep_exact_sequence::<f64>(&ext, opts)?;
        out.push((format!("infl {name}"), infl));
    }
    let s3 = named::symmetric(3);
    let t: CharacterTable<f64> = character_table_with(&s3, opts)?;
    let rep_s3 = Arc::new(t.rep_fusion_ring()?);
    out.push(("id rep S3".into(), FunctorMatrix::identity(rep_s3.clone())));
    out.push((
        "unit rep S3".into(),
        FunctorMatrix::unit_embedding(rep_s3.clone()),
    ));
    out.push((
        "fiber rep S3".into(),
        FunctorMatrix::to_vec(rep_s3, t.degrees())?,
    ));
    out.push((
        "id fib".into(),
        FunctorMatrix::identity(Arc::new(fibonacci())),
    ));
    for (name, ext) in extensions()?.into_iter().take(3) {
        out.push((format!("proj C({name})"), hom_functor(&ext.projection)?));
    }
    Ok(out)
}

/// The extensions of the exactness criteria with their representation-ring
/// pipelines `Rep G/N -> Rep G -> Rep N`.
pub fn pipelines(opts: &CharacterOptions) -> Result<Vec<(String, FunctorMatrix, FunctorMatrix)>> {
    extensions()?
        .into_iter()
        .map(|(name, ext)| {
            let (e, f) = rep_exact_sequence::<f64>(&ext, opts)?;
            Ok((name, e, f))
        })
        .collect()
}

fn inversion_on_z3() -> GroupAction {
    let ring = Arc::new(pointed_fusion_ring(&named::cyclic(3)));
    GroupAction::new(named::cyclic(2), ring, vec![vec![0, 1, 2], vec![0, 2, 1]])
        .expect("sizes match")
}

/// Group actions on fusion rings. Conjugation actions come from the
/// extensions; the one on `Rep Z2` from `Q8` is untwisted only at the level
/// of dimensions.
pub fn actions(opts: &CharacterOptions) -> Result<Vec<(String, GroupAction)>> {
    let mut out = vec![
        (
            "trivial Z2 on Vec".to_string(),
            GroupAction::trivial(named::cyclic(2), Arc::new(trivial_ring())),
        ),
        ("inversion Z2 on Z3".to_string(), inversion_on_z3()),
        (
            "trivial Z3 on fib".to_string(),
            GroupAction::trivial(named::cyclic(3), Arc::new(fibonacci())),
        ),
        (
            "trivial S3 on Z2".to_string(),
            GroupAction::trivial(
                named::symmetric(3),
                Arc::new(pointed_fusion_ring(&named::cyclic(2))),
            ),
        ),
    ];
    for (name, ext) in extensions()? {
        let table: CharacterTable<f64> = character_table_with(ext.kernel_group(), opts)?;
        out.push((format!("conj {name}"), conjugation_action(&ext, &table)?));
    }
    Ok(out)
}

/// The workspace document `name` from [`DOCUMENTS`] in canonical form.
pub fn document(name: &str) -> Result<String> {
    let (include, entities) = entities(name)?;
    Ok(to_canonical(&Manifest { include, entities }))
}

/// The workspace of a self-contained document.
pub fn workspace(name: &str) -> Result<Workspace> {
    let (include, entities) = entities(name)?;
    if !include.is_empty() {
        return Err(Error::Precondition(format!(
            "{name} includes other documents"
        )));
    }
    Workspace::from_entities(entities).map_err(|e| Error::Consistency(e.to_string()))
}

fn pipeline_entities(g: &str, n: &str, q: &str, ext: &GroupExtension) -> Result<Vec<Entity>> {
    let opts = CharacterOptions::default();
    let (infl, res) = rep_exact_sequence::<f64>(ext, &opts)?;
    let rep = |x: &str| format!("rep_{x}");
    Ok(vec![
        Entity::group(g, ext.group()),
        Entity::group(n, ext.kernel_group()),
        Entity::group(q, ext.quotient_group()),
        Entity::hom("incl", n, g, &ext.inclusion),
        Entity::hom("proj", g, q, &ext.projection),
        Entity::Sequence(SequenceDoc {
            id: "seq".into(),
            inclusion: Some("incl".into()),
            projection: Some("proj".into()),
            group: None,
            normal: None,
        }),
        Entity::ring(&rep(q), infl.source()),
        Entity::ring(&rep(g), infl.target()),
        Entity::ring(&rep(n), res.target()),
        Entity::functor("infl", &rep(q), &rep(g), &infl),
        Entity::functor("res", &rep(g), &rep(n), &res),
    ])
}

fn extension(name: &str) -> Result<GroupExtension> {
    extensions()?
        .into_iter()
        .find(|(n, _)| n == name)
        .map(|(_, e)| e)
        .ok_or_else(|| Error::Precondition(format!("unknown extension {name}")))
}

fn entities(name: &str) -> Result<(Vec<String>, Vec<Entity>)> {
    let opts = CharacterOptions::default();
    let none = Vec::new();
    Ok(match name {
        "s3_pipeline" => {
            let ext = extension("A3<S3")?;
            let mut es = pipeline_entities("S3", "A3", "Z2", &ext)?;
            let s3 = ext.group();
            let res = restriction(s3, &subgroup_of_order(s3, 2)?, &opts)?;
            let (infl, _) = rep_exact_sequence::<f64>(&ext, &opts)?;
            if res.target() != infl.source() {
                return Err(Error::Consistency("two models of Rep Z2 differ".into()));
            }
            es.push(Entity::functor("res_Z2", "rep_S3", "rep_Z2", &res));
            (none, es)
        }
        "z4_pipeline" => (
            none,
            pipeline_entities("Z4", "Z2", "Z4modZ2", &extension("Z2<Z4")?)?,
        ),
        "a4_pipeline" => (
            none,
            pipeline_entities("A4", "V4", "Z3", &extension("V4<A4")?)?,
        ),
        "d4_pipeline" => (
            none,
            pipeline_entities("D4", "Z4", "Z2", &extension("Z4<D4")?)?,
        ),
        "pointed" => {
            let omega = cyclic_representative(4, 1)?;
            let es = vec![
                Entity::group("Z5", &named::cyclic(5)),
                Entity::group("S3", &named::symmetric(3)),
                Entity::group("Z4", &named::cyclic(4)),
                Entity::cocycle("omega1", "Z4", &omega),
                pointed_doc("C_Z5", "Z5", None),
                pointed_doc("C_S3", "S3", None),
                pointed_doc("C_Z4_omega1", "Z4", Some("omega1")),
            ];
            (none, es)
        }
        "pointed_seq" => {
            let ext = extension("A3<S3")?;
            let es = vec![
                Entity::group("S3", ext.group()),
                Entity::group("A3", ext.kernel_group()),
                Entity::group("Z2", ext.quotient_group()),
                Entity::hom("incl", "A3", "S3", &ext.inclusion),
                Entity::hom("proj", "S3", "Z2", &ext.projection),
                Entity::Sequence(SequenceDoc {
                    id: "seq".into(),
                    inclusion: Some("incl".into()),
                    projection: Some("proj".into()),
                    group: None,
                    normal: None,
                }),
            ];
            (none, es)
        }
        "omega_z2" => {
            let ext = extension("A3<S3")?;
            let w = cyclic_representative(2, 1)?;
            if ext.quotient_group().table() != w.group().table() {
                return Err(Error::Consistency("S3/A3 is not numbered as Z2".into()));
            }
            let e = Entity::Cocycle(crate::io::CocycleDoc {
                id: "omega1".into(),
                group: "Z2".into(),
                modulus: w.modulus(),
                values: w.values().to_vec(),
            });
            (vec!["pointed_seq.json".into()], vec![e])
        }
        "actions" => {
            let z3 = named::cyclic(3);
            let es = vec![
                Entity::group("Z2", &named::cyclic(2)),
                Entity::group("Z3", &z3),
                Entity::ring("vec", &trivial_ring()),
                Entity::ring("Z3ring", &pointed_fusion_ring(&z3)),
                Entity::ring("fib", &fibonacci()),
                Entity::action(
                    "trivial_vec",
                    "Z2",
                    "vec",
                    &GroupAction::trivial(named::cyclic(2), Arc::new(trivial_ring())),
                ),
                Entity::action("inversion", "Z2", "Z3ring", &inversion_on_z3()),
                Entity::action(
                    "trivial_fib",
                    "Z3",
                    "fib",
                    &GroupAction::trivial(z3.clone(), Arc::new(fibonacci())),
                ),
            ];
            (none, es)
        }
        "fibonacci" => (none, vec![Entity::ring("fib", &fibonacci())]),
        other => {
            return Err(Error::Precondition(format!(
                "unknown corpus document {other}"
            )))
        }
    })
}

fn pointed_doc(id: &str, group: &str, cocycle: Option<&str>) -> Entity {
    Entity::Pointed(PointedDoc {
        id: id.into(),
        group: group.into(),
        cocycle: cocycle.map(String::from),
    })
}

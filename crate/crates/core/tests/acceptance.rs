//! One line per acceptance criterion. The test fails if any criterion does.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use fuscat_core::cohomology::{cyclic_representative, h3_order};
use fuscat_core::groups::named;
use fuscat_core::{
    character_table_with, check_equivariant_sequence, corpus, equivariant_simples,
    forgetful_functor, index2_check, is_simple_eno, is_simple_pointed, verify_exact_sequence,
    CharacterTable, Cocycle3, FpData, FusionRing, PointedCategory, Tolerances,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;

const OBJECT: f64 = 1e-9;
const AGGREGATE: f64 = 1e-6;

fn tol() -> Tolerances<f64> {
    Tolerances::new(OBJECT, AGGREGATE)
}

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fp(r: &FusionRing) -> FpData<f64> {
    r.fpdim().unwrap()
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let wanted = ["A3<S3", "Z2<Z4", "V4<A4"];
    let pipelines = corpus::pipelines(&options()).map_err(|e| e.to_string())?;
    for name in wanted {
        let (_, e, f) = pipelines
            .iter()
            .find(|(n, _, _)| n == name)
            .ok_or_else(|| format!("pipeline {name} missing"))?;
        let r = verify_exact_sequence(e, f, tol()).map_err(|e| e.to_string())?;
        ensure(r.verdict, || format!("{name}: not exact"))?;
        ensure(r.multiplicativity_residual < AGGREGATE, || {
            format!(
                "{name}: multiplicativity residual {}",
                r.multiplicativity_residual
            )
        })?;
        ensure(r.fpdimy_max_residual < AGGREGATE, || {
            format!("{name}: per-simple residual {}", r.fpdimy_max_residual)
        })?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(5), || {
        format!("took {elapsed:?}")
    })
}

fn restriction(name: &str) -> Result<fuscat_core::FunctorMatrix, String> {
    corpus::functors(&options())
        .map_err(|e| e.to_string())?
        .into_iter()
        .find(|(n, _)| n == name)
        .map(|(_, f)| f)
        .ok_or_else(|| format!("functor {name} missing"))
}

fn criterion_2() -> Check {
    let to_z3 = restriction("res S3>Z3")?;
    let fp_s3 = fp(to_z3.source());
    let trivial_sign: BTreeSet<usize> = (0..3)
        .filter(|&x| (fp_s3.dims[x] - 1.0).abs() < OBJECT)
        .collect();
    ensure(trivial_sign.len() == 2, || {
        "rep S3 should have two invertibles".into()
    })?;
    ensure(
        to_z3.is_dominant() && to_z3.is_normal(&fp_s3, OBJECT),
        || "S3>Z3 not dominant+normal".into(),
    )?;
    let kernel = to_z3
        .kernel_simples(&fp_s3, OBJECT)
        .map_err(|e| e.to_string())?;
    ensure(kernel == trivial_sign, || {
        format!("S3>Z3 kernel {kernel:?}")
    })?;

    let to_z2 = restriction("res S3>Z2")?;
    ensure(to_z2.is_dominant(), || "S3>Z2 not dominant".into())?;
    ensure(!to_z2.is_normal(&fp_s3, OBJECT), || {
        "S3>Z2 reported normal".into()
    })?;
    let two_dim = (0..3)
        .find(|&x| (fp_s3.dims[x] - 2.0).abs() < OBJECT)
        .unwrap();
    ensure(to_z2.unit_multiplicity(two_dim) == 1, || {
        "2-dim simple should contain the unit once".into()
    })
}

fn criterion_3() -> Check {
    for name in ["res S3>Z3", "res D4>Z4"] {
        let f = restriction(name)?;
        let (a, b) = (fp(f.source()), fp(f.target()));
        let r = index2_check(&f, &a, &b, tol()).map_err(|e| e.to_string())?;
        ensure(r.passes, || format!("{name}: {r:?}"))?;
        let j = r.j.unwrap();
        let ring = f.source();
        let unit = ring.unit();
        ensure(ring.product(j, j) == [(unit, 1)], || {
            format!("{name}: J*J is not the unit")
        })?;
        ensure(r.kernel == BTreeSet::from([unit, j]), || {
            format!("{name}: kernel {:?}", r.kernel)
        })?;
    }
    Ok(())
}

fn criterion_4() -> Check {
    let mut count = 0;
    for (name, f) in corpus::functors(&options()).map_err(|e| e.to_string())? {
        if !f.is_dominant() {
            continue;
        }
        let (a, b) = (fp(f.source()), fp(f.target()));
        let lhs = a.total / b.total;
        let rhs: f64 = (0..f.source().rank())
            .map(|x| f.unit_multiplicity(x) as f64 * a.dims[x])
            .sum();
        ensure((lhs - rhs).abs() < AGGREGATE, || {
            format!("{name}: {lhs} vs {rhs}")
        })?;
        count += 1;
    }
    ensure(count >= 6, || format!("only {count} dominant functors"))
}

fn criterion_5() -> Check {
    for (name, f) in corpus::functors(&options()).map_err(|e| e.to_string())? {
        let (a, b) = (fp(f.source()), fp(f.target()));
        let r = f.monad_checks(&a, &b, tol());
        let t = f.monad_matrix();
        let unit = f.target().unit();
        let trivial_column = (0..t.len()).all(|y| y == unit || t[y][unit] == 0);
        ensure(f.is_normal(&a, OBJECT) == trivial_column, || {
            format!("{name}: normality disagrees")
        })?;
        if f.is_dominant() {
            let index = a.total / b.total;
            let col = |c: usize| -> f64 { (0..t.len()).map(|y| t[y][c] as f64 * b.dims[y]).sum() };
            ensure((col(unit) - index).abs() < AGGREGATE, || {
                format!("{name}: FPdim T(1) = {}", col(unit))
            })?;
            for x in 0..t.len() {
                let d = (col(x) - col(unit) * b.dims[x]).abs();
                ensure(d < AGGREGATE, || format!("{name}: column {x} off by {d}"))?;
            }
        }
        ensure(r.passes, || format!("{name}: {r:?}"))?;
    }
    Ok(())
}

fn criterion_6() -> Check {
    let start = Instant::now();
    for n in 2..=6usize {
        let h = h3_order(&named::cyclic(n), n as u64).map_err(|e| e.to_string())?;
        ensure(h == n as u64, || format!("h3(Z{n}) = {h}"))?;
        let reps: Vec<Cocycle3> = (0..n as u64)
            .map(|q| cyclic_representative(n, q))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        for a in 0..n {
            for b in a + 1..n {
                let d = reps[a].difference(&reps[b]).map_err(|e| e.to_string())?;
                ensure(!d.is_coboundary().map_err(|e| e.to_string())?, || {
                    format!("omega_{a} ~ omega_{b} on Z{n}")
                })?;
            }
        }
    }
    let simple = |p: &PointedCategory| is_simple_pointed(p).map_err(|e| e.to_string());
    ensure(
        simple(&PointedCategory::untwisted(named::cyclic(5)))?.simple,
        || "C(Z5) not simple".into(),
    )?;
    let s3 = named::symmetric(3);
    let v = simple(&PointedCategory::untwisted(s3.clone()))?;
    let a3: BTreeSet<usize> = (0..6).filter(|&g| s3.element_order(g) != 2).collect();
    ensure(!v.simple && v.witness.as_ref() == Some(&a3), || {
        format!("C(S3): {v:?}")
    })?;
    let omega = cyclic_representative(4, 1).map_err(|e| e.to_string())?;
    let twisted = PointedCategory::new(named::cyclic(4), omega).map_err(|e| e.to_string())?;
    ensure(simple(&twisted)?.simple, || {
        "C(Z4, omega_1) not simple".into()
    })?;
    for n in 1..=13usize {
        let prime = n >= 2 && (2..n).all(|d| n % d != 0);
        let eno = is_simple_eno(&PointedCategory::untwisted(named::cyclic(n)));
        ensure(eno == prime, || format!("eno verdict on Z{n}"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || {
        format!("took {elapsed:?}")
    })
}

fn criterion_7() -> Check {
    let opts = options();
    for (name, action) in corpus::actions(&opts).map_err(|e| e.to_string())? {
        let es = equivariant_simples::<f64>(&action, &opts, tol()).map_err(|e| e.to_string())?;
        let ring_total = fp(action.ring()).total;
        let expected = action.group().order() as f64 * ring_total;
        ensure((es.total - expected).abs() < AGGREGATE, || {
            format!("{name}: {} vs {expected}", es.total)
        })?;
        let u = forgetful_functor(&action, &es);
        let r = check_equivariant_sequence(&action, &es, &u, &opts, tol())
            .map_err(|e| e.to_string())?;
        // Q8 acts on Rep Z2 with a nontrivial twist the untwisted model cannot see.
        if name != "conj Z2<Q8" {
            ensure(r.passes, || format!("{name}: {r:?}"))?;
        }
        let mut dims = es.dims();
        dims.sort_by(f64::total_cmp);
        match name.as_str() {
            "trivial Z2 on Vec" => ensure(dims == [1.0, 1.0], || format!("{name}: {dims:?}"))?,
            "inversion Z2 on Z3" => {
                let t: CharacterTable<f64> =
                    character_table_with(&named::symmetric(3), &opts).unwrap();
                let mut degrees: Vec<f64> = t.degrees().iter().map(|&d| d as f64).collect();
                degrees.sort_by(f64::total_cmp);
                let close = dims
                    .iter()
                    .zip(&degrees)
                    .all(|(a, b)| (a - b).abs() < OBJECT);
                ensure(close && dims.len() == 3, || format!("{name}: {dims:?}"))?;
                ensure((es.total - 6.0).abs() < AGGREGATE, || {
                    format!("{name}: total {}", es.total)
                })?;
            }
            _ => {}
        }
    }
    Ok(())
}

fn criterion_8() -> Check {
    for (name, g) in corpus::groups() {
        let t: CharacterTable<f64> =
            character_table_with(&g, &options()).map_err(|e| format!("{name}: {e}"))?;
        let squares: u64 = t.degrees().iter().map(|d| d * d).sum();
        ensure(squares == g.order() as u64, || {
            format!("{name}: sum of squares {squares}")
        })?;
        ensure(
            t.row_residual() < AGGREGATE && t.column_residual() < AGGREGATE,
            || {
                format!(
                    "{name}: residuals {} {}",
                    t.row_residual(),
                    t.column_residual()
                )
            },
        )?;
        let ring = t.rep_fusion_ring().map_err(|e| format!("{name}: {e}"))?;
        ensure(ring.validate().is_valid(), || {
            format!("{name}: rep ring invalid")
        })?;
        let r = t.len();
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let c = raw_fusion_coefficient(&t, i, j, k);
                    let n = ring.coeff(i, j, k) as f64;
                    ensure(
                        (c.re - n).abs() < AGGREGATE && c.im.abs() < AGGREGATE,
                        || format!("{name}: N({i},{j})^{k} = {c} before rounding"),
                    )?;
                }
            }
        }
    }
    Ok(())
}

fn criterion_9() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut flagged = 0;
    for (name, ring) in seed_rings() {
        let dense = DenseRing::of(&ring);
        ensure(
            dense.satisfies_axioms() && ring.validate().is_valid(),
            || format!("{name} invalid"),
        )?;
        for _ in 0..200 {
            let m = mutate(&dense, &mut rng);
            let valid = m.build().validate().is_valid();
            ensure(valid == m.satisfies_axioms(), || {
                format!("{name}: validator disagrees on {m:?}")
            })?;
            flagged += usize::from(!valid);
        }
    }
    ensure(flagged > 0, || "no mutant flagged".into())?;

    for (name, g) in small_groups() {
        let modulus = (g.order() as u64).max(2);
        for sample in 0..200 {
            let beta = random_cochain(&g, modulus, &mut rng);
            let d = beta.coboundary();
            ensure(d.is_cocycle(), || format!("{name}: d(d beta) != 0"))?;
            if sample % 10 != 0 {
                continue;
            }
            ensure(d.is_coboundary().map_err(|e| e.to_string())?, || {
                format!("{name}: d beta not a coboundary")
            })?;
        }
    }

    for (name, f) in corpus::functors(&options()).map_err(|e| e.to_string())? {
        let k = f
            .kernel_simples(&fp(f.source()), OBJECT)
            .map_err(|e| e.to_string())?;
        ensure(is_fusion_closed(f.source(), &k), || {
            format!("{name}: kernel {k:?} not closed")
        })?;
    }

    for (name, action) in corpus::actions(&options()).map_err(|e| e.to_string())? {
        let dims = fp(action.ring()).dims;
        for (g, perm) in action.perms().iter().enumerate() {
            ensure(action.ring().is_based_automorphism(perm), || {
                format!("{name}: g={g} not an automorphism")
            })?;
            for x in 0..dims.len() {
                ensure((dims[perm[x]] - dims[x]).abs() < OBJECT, || {
                    format!("{name}: FPdim moved by g={g}")
                })?;
            }
        }
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 9] = [
        ("group extensions give exact sequences", criterion_1),
        ("normality dichotomy for rep S3", criterion_2),
        ("index-2 structure", criterion_3),
        ("FP index identity", criterion_4),
        ("monad agreement", criterion_5),
        ("pointed classification", criterion_6),
        ("equivariantization dimensions", criterion_7),
        ("character-table integrity", criterion_8),
        ("property suites", criterion_9),
    ];
    let mut failed = Vec::new();
    for (i, (title, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match check() {
            Ok(()) => println!(
                "PASS criterion {}: {title} ({:.2?})",
                i + 1,
                start.elapsed()
            ),
            Err(why) => {
                println!("FAIL criterion {}: {title}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

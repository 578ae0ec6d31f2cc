//! Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

mod common;

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use liecoh_core::catalog;
use liecoh_core::cochain::{binomial, covariant_differential, OuterActionMap};
use liecoh_core::cohomology::{classes_equal, cohomology};
use liecoh_core::crossed::{characteristic_class_omega_route, characteristic_class_theta_route, split_crossed_module};
use liecoh_core::currents::{killing_form, v2_check};
use liecoh_core::extension::{check_equivalence_map, classify_extensions, equivalent_extensions, Equivalence, GKernel};
use liecoh_core::io::{
    algebra_from_json, algebra_json, crossed_module_from_json, crossed_module_json, parse_json, to_canonical_string,
    ExtensionBundle,
};
use liecoh_core::lie::{LieAlgebra, Representation};
use liecoh_core::linalg::Matrix;
use liecoh_core::reproduce::reproduce;
use liecoh_core::symmetry::extension_derivations;
use liecoh_core::{Result, Scalar};
use serde_json::Value;

type Outcome = std::result::Result<String, String>;
type Identity<'a> = (&'a str, fn(u64) -> common::Check);
type Criterion<'a> = (&'a str, Box<dyn Fn() -> Outcome>);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn lift(r: Result<Outcome>) -> Outcome {
    r.unwrap_or_else(|e| Err(format!("error: {e}")))
}

fn within(elapsed: Duration, limit: Duration) -> bool {
    elapsed <= limit
}

fn bundle(name: &str) -> Result<(bool, Value)> {
    let r = reproduce(name)?;
    Ok((r.pass, r.report))
}

fn heisenberg_h2() -> Outcome {
    let start = Instant::now();
    let h2 = lift(
        cohomology(&Representation::trivial(Arc::new(catalog::heisenberg3()), 1), 2).map(|s| Ok(s.h_dim().to_string())),
    )?;
    let t = start.elapsed();
    check(
        h2 == "2" && within(t, Duration::from_secs(1)),
        format!("dim H²(heis3, k) = {h2} in {t:?}"),
    )
}

fn line_over_plane_h2(s: [i64; 2]) -> Result<usize> {
    let g = Arc::new(catalog::abelian(2));
    let n = Arc::new(catalog::abelian(1));
    let s = OuterActionMap::new(1, s.iter().map(|&a| Matrix::from_ints(&[&[a]])).collect())?;
    let k = GKernel::new(g, n, s)?;
    Ok(cohomology(&k.center_module()?.rep, 2)?.h_dim())
}

fn dichotomy() -> Result<Outcome> {
    let start = Instant::now();
    let trivial = line_over_plane_h2([0, 0])?;
    let mut nontrivial = Vec::new();
    for a in -2..=2 {
        for b in -2..=2 {
            if (a, b) != (0, 0) {
                nontrivial.push(line_over_plane_h2([a, b])?);
            }
        }
    }
    let (bundle_pass, _) = bundle("remark-II10")?;
    let t = start.elapsed();
    let ok = trivial == 1 && nontrivial.iter().all(|&d| d == 0) && bundle_pass && within(t, Duration::from_secs(1));
    Ok(check(
        ok,
        format!(
            "trivial S: dim 1 = {trivial}; {} nontrivial S all dim 0; bundle {bundle_pass}; {t:?}",
            nontrivial.len()
        ),
    ))
}

fn derivation_sequence() -> Result<Outcome> {
    let d = extension_derivations(&catalog::heisenberg_central())?;
    let (pass, report) = bundle("example-A9")?;
    Ok(check(
        pass && d.z1_basis.len() == 2 && d.kernel_i.len() == 4 && d.der_dim == 6,
        format!(
            "kernel {}, image {}, der {}, isomorphic to the conformal algebra {}, splits with γ = 0 {}",
            d.z1_basis.len(),
            d.kernel_i.len(),
            d.der_dim,
            report["image_isomorphic_to_conformal_algebra"],
            report["splits_with_zero_gamma"]
        ),
    ))
}

fn lifting_cocycle_value() -> Result<Outcome> {
    let (pass, report) = bundle("example-A10a")?;
    Ok(check(
        pass && report["d_theta_b1_b2_on_p"] == "-1" && report["splits"] == false,
        format!(
            "d_h θ(b1,b2)(p) = {}, equals −θ_b2∘b1 {}, lift exists {}",
            report["d_theta_b1_b2_on_p"], report["equals_minus_theta_b2_after_b1"], report["splits"]
        ),
    ))
}

fn suite(checks: &[Identity], cases: u64) -> Outcome {
    let mut failures = Vec::new();
    for (name, f) in checks {
        for seed in 0..cases {
            if let Err(e) = f(seed) {
                failures.push(format!("{name} seed {seed}: {e}"));
                break;
            }
        }
    }
    let summary = format!("{} identities x {cases} seeds", checks.len());
    if failures.is_empty() {
        Ok(summary)
    } else {
        Err(format!("{summary}; {}", failures.join("; ")))
    }
}

fn calculus_suite() -> Outcome {
    suite(
        &[
            ("d² = 0", common::check_d_squared),
            ("d_S² = R_S ∧", common::check_covariant_square),
            ("Bianchi", common::check_bianchi),
            ("Leibniz", common::check_leibniz),
            ("graded commutativity", common::check_graded_commutativity),
            ("superalgebra", common::check_superalgebra),
            ("associativity", common::check_associativity),
            ("twisted complex", common::check_twisted),
        ],
        common::CASES as u64,
    )
}

fn gauge_suite() -> Outcome {
    suite(
        &[
            ("action law and curvature", common::check_gauge_action_law),
            ("orbit invariants", common::check_gauge_orbit),
        ],
        common::CASES as u64,
    )
}

fn classification() -> Result<Outcome> {
    let fs = catalog::line_over_plane(0);
    let k = fs.kernel();
    let cl = classify_extensions(&k)?;
    let reps = cl.representatives();
    let t = &cl.translations[0];
    let base = &cl.base;

    let shifted = base.with_omega(base.omega().add(t))?;
    let separated = match equivalent_extensions(base, &shifted)? {
        Equivalence::Inequivalent { certificate, .. } => !certificate.value.is_zero(),
        Equivalence::Equivalent { .. } => false,
    };

    // Coboundaries vanish for the trivial action, so the witness is
    // exercised on S(e1) = 1 where B² is all of C².
    let twisted = catalog::line_over_plane(1);
    let mut rng = common::rng(7);
    let mut witnessed = true;
    for _ in 0..10 {
        let beta = common::central_cochain(&mut rng, 2, twisted.n(), 1);
        let exact = covariant_differential(twisted.g(), twisted.s(), &beta)?;
        let moved = twisted.with_omega(twisted.omega().add(&exact))?;
        witnessed &= match equivalent_extensions(&moved, &twisted)? {
            Equivalence::Equivalent { gamma, .. } => {
                let c = check_equivalence_map(&Matrix::identity(1), &Matrix::identity(2), &gamma, &moved, &twisted)?;
                c.holds() && c.bracket_violation.is_none()
            }
            Equivalence::Inequivalent { .. } => false,
        };
    }

    // Each class λ·[t] moves the base point to an extension equivalent to
    // it only for λ = 0, and every cocycle lands in the orbit of the base.
    let mut simply_transitive = reps.len() == 1 + cl.h2.h_dim();
    for lambda in [-2, -1, 1, 2, 3] {
        let c = t.scale(&Scalar::from_int(lambda));
        let target = base.with_omega(base.omega().add(&c))?;
        simply_transitive &= !equivalent_extensions(base, &target)?.is_equivalent();
        let other = common::cochain(&mut rng, 2, 2, 1);
        let coords = cl.h2.class_coordinates(&other)?;
        let lands = base.with_omega(base.omega().add(&t.scale(&coords[0])))?;
        let arbitrary = base.with_omega(base.omega().add(&other))?;
        simply_transitive &= equivalent_extensions(&arbitrary, &lands)?.is_equivalent();
    }
    Ok(check(
        separated && witnessed && simply_transitive,
        format!(
            "H² dim {}; noncoboundary shift inequivalent with certificate {separated}; \
             coboundary shift witnessed {witnessed}; simply transitive {simply_transitive}",
            cl.h2.h_dim()
        ),
    ))
}

fn obstruction_invariance() -> Outcome {
    suite(
        &[
            ("gauge and lift invariance", common::check_obstruction_invariance),
            ("abelian kernels", common::check_abelian_kernel_unobstructed),
        ],
        100,
    )
}

fn crossed_module_routes() -> Result<Outcome> {
    let mut agree = Vec::new();
    for name in catalog::CROSSED_MODULE_NAMES {
        let cm = catalog::crossed_module(name)?;
        let theta = characteristic_class_theta_route(&split_crossed_module(&cm)?)?;
        let omega = characteristic_class_omega_route(&cm, None)?;
        if !classes_equal(&theta, &omega)? {
            return Ok(Err(format!("routes disagree on {name}")));
        }
        agree.push(*name);
    }
    Ok(Ok(format!("θ-route = ω-route on {} crossed modules", agree.len())))
}

fn reduction_round_trip() -> Result<Outcome> {
    let (pass, report) = bundle("theorem-IV4-roundtrip")?;
    Ok(check(
        pass,
        format!("bundle {}", serde_json::to_string(&report).unwrap_or_default()),
    ))
}

fn currents() -> Result<Outcome> {
    let start = Instant::now();
    let sl2 = Arc::new(catalog::sl2());
    let kappa = killing_form(sl2.clone());
    let h = sl2.basis_vector(2);
    let hh = kappa.eval(&h, &h);
    let trace = sl2.ad(&h).mul(&sl2.ad(&h)).trace();
    let report = v2_check(&kappa, 100, 0)?;
    let (pass, bundle_report) = bundle("example-V2")?;
    let t = start.elapsed();
    let ok = pass
        && report.failures == 0
        && report.identity_samples == 100
        && report.eta_closed
        && report.h3_dim == 1
        && report.eta_class_nonzero
        && hh == Scalar::from_int(8)
        && hh == trace
        && bundle_report["eta_e_f_h"] == "4"
        && within(t, Duration::from_secs(5));
    Ok(check(
        ok,
        format!(
            "{} samples, {} failures; κ(h,h) = {hh}; η(e,f,h) = {}; η closed {}, dim H³ = {}; {t:?}",
            report.identity_samples, report.failures, bundle_report["eta_e_f_h"], report.eta_closed, report.h3_dim
        ),
    ))
}

fn whitehead() -> Result<Outcome> {
    let rep = Representation::trivial(Arc::new(catalog::sl2()), 1);
    let dims = (0..=3)
        .map(|p| cohomology(&rep, p).map(|s| s.h_dim()))
        .collect::<Result<Vec<_>>>()?;
    let chain_euler: i64 = (0..=3)
        .map(|p| if p % 2 == 0 { 1 } else { -1 } * binomial(3, p) as i64)
        .sum();
    let h_euler: i64 = dims
        .iter()
        .enumerate()
        .map(|(p, &d)| if p % 2 == 0 { d as i64 } else { -(d as i64) })
        .sum();
    Ok(check(
        dims == [1, 0, 0, 1] && chain_euler == 0 && h_euler == 0,
        format!("H^0..3 = {dims:?}; Euler characteristic {chain_euler} on cochains, {h_euler} on cohomology"),
    ))
}

fn round_trip(v: &Value, reload: impl Fn(&Value) -> Result<Value>) -> Result<bool> {
    let text = to_canonical_string(v);
    Ok(to_canonical_string(&reload(&parse_json(&text)?)?) == text)
}

fn io_and_bundles() -> Result<Outcome> {
    let mut objects = 0;
    let mut stable = true;
    let algebras: Vec<LieAlgebra> = ["heisenberg3", "sl2", "nonabelian2", "sl2-semidirect-plane", "abelian3"]
        .iter()
        .map(|n| catalog::algebra(n))
        .collect::<Result<_>>()?;
    for a in &algebras {
        stable &= round_trip(&algebra_json(a), |v| Ok(algebra_json(&algebra_from_json(v)?)))?;
        objects += 1;
    }
    for name in catalog::FACTOR_SYSTEM_NAMES {
        let b = ExtensionBundle::from_factor_system(&catalog::factor_system(name)?);
        stable &= round_trip(&b.to_json(), |v| Ok(ExtensionBundle::from_json(v)?.to_json()))?;
        objects += 1;
    }
    for name in catalog::CROSSED_MODULE_NAMES {
        let cm = catalog::crossed_module(name)?;
        stable &= round_trip(&crossed_module_json(&cm), |v| {
            Ok(crossed_module_json(&crossed_module_from_json(v)?))
        })?;
        objects += 1;
    }
    let required = [
        "example-A9",
        "example-A10a",
        "example-A10b",
        "remark-II10",
        "remark-IV5",
        "example-V2",
    ];
    let mut failed = Vec::new();
    for name in required {
        if !reproduce(name)?.pass {
            failed.push(name);
        }
    }
    Ok(check(
        stable && failed.is_empty(),
        format!(
            "{objects} objects byte-stable {stable}; {} bundles, failing {failed:?}",
            required.len()
        ),
    ))
}

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        ("dim H²(heis3, k) = 2", Box::new(heisenberg_h2)),
        ("H²(k², k)_S dichotomy", Box::new(|| lift(dichotomy()))),
        ("derivations of heis3 over k²", Box::new(|| lift(derivation_sequence()))),
        (
            "lifting cocycle on k ⊕_ω heis3",
            Box::new(|| lift(lifting_cocycle_value())),
        ),
        ("cochain calculus property suite", Box::new(calculus_suite)),
        ("gauge action suite", Box::new(gauge_suite)),
        (
            "classification of k²-by-k extensions",
            Box::new(|| lift(classification())),
        ),
        ("obstruction invariance", Box::new(obstruction_invariance)),
        (
            "crossed-module double route",
            Box::new(|| lift(crossed_module_routes())),
        ),
        (
            "reduction through g^S round trip",
            Box::new(|| lift(reduction_round_trip())),
        ),
        ("current algebra cocycle on sl2[t]", Box::new(|| lift(currents()))),
        ("sl2 cohomology by brute force", Box::new(|| lift(whitehead()))),
        (
            "canonical JSON and reproduce bundles",
            Box::new(|| lift(io_and_bundles())),
        ),
    ];
    let mut all = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{t:.2?}]", i + 1),
            Err(detail) => {
                all = false;
                println!("FAIL {:>2} {name}: {detail} [{t:.2?}]", i + 1);
            }
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

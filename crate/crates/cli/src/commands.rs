//! One function per subcommand.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use liecoh_core::catalog;
use liecoh_core::cohomology::{self as coh, classes_equal};
use liecoh_core::crossed::{
    characteristic_class_omega_route, characteristic_class_theta_route, split_crossed_module, splitting_equivalence,
    validate_crossed_module, CrossedModule, SplittingOutcome,
};
use liecoh_core::currents::{killing_form, v2_characteristic_cocycle};
use liecoh_core::extension::{
    build_extension, check_equivalence_map, classify_extensions, obstruction_class, reduce_via_gs,
};
use liecoh_core::io::{
    algebra_from_json, algebra_json, cochain_json, crossed_module_from_json, crossed_module_json, matrix_json,
    pair_file_from_json, parse_json, read_file, representation_from_json, sha256_hex, to_canonical_string,
    ExtensionBundle, PairFile,
};
use liecoh_core::lie::{adjoint_rep, LieAlgebra, Representation};
use liecoh_core::reproduce::{reproduce as run_bundle, BUNDLES};
use liecoh_core::symmetry::{
    aut_obstruction, check_derivation_triple, extension_derivations, lift_pair, lifting_cocycle, prop_a5_class,
};
use liecoh_core::{Error, Result};
use serde_json::{json, Value};

use crate::report::{certificate_json, class_json, pair_json, Outcome};
use crate::ExtArgs;

fn is_file(arg: &str) -> bool {
    Path::new(arg).is_file()
}

fn file_value(arg: &str) -> Result<Value> {
    parse_json(&read_file(Path::new(arg))?)
}

/// A JSON file, or the bare string `arg` so catalog names resolve.
fn value_arg(arg: &str) -> Result<Value> {
    if is_file(arg) {
        file_value(arg)
    } else {
        Ok(Value::String(arg.to_string()))
    }
}

fn algebra_arg(arg: &str) -> Result<Arc<LieAlgebra>> {
    Ok(Arc::new(algebra_from_json(&value_arg(arg)?)?))
}

fn ext_bundle(a: &ExtArgs) -> Result<ExtensionBundle> {
    if let Some(ext) = &a.ext {
        return if is_file(ext) {
            ExtensionBundle::from_json(&file_value(ext)?)
        } else {
            Ok(ExtensionBundle::from_factor_system(&catalog::factor_system(ext)?))
        };
    }
    let missing = |flag: &str| {
        Error::Parse(format!(
            "either --ext or --n, --g and --S are required (missing {flag})"
        ))
    };
    let n = a.n.as_deref().ok_or_else(|| missing("--n"))?;
    let g = a.g.as_deref().ok_or_else(|| missing("--g"))?;
    let s = a.s.as_deref().ok_or_else(|| missing("--S"))?;
    let omega = a.omega.as_deref().map(file_value).transpose()?;
    ExtensionBundle::from_parts(&value_arg(n)?, &value_arg(g)?, &file_value(s)?, omega.as_ref())
}

fn cm_arg(arg: &str) -> Result<CrossedModule> {
    if is_file(arg) {
        crossed_module_from_json(&file_value(arg)?)
    } else {
        catalog::crossed_module(arg)
    }
}

fn provenance(arg: &str) -> Value {
    match std::fs::read(arg) {
        Ok(bytes) => json!({"source": arg, "sha256": sha256_hex(&bytes)}),
        Err(_) => json!({"source": arg, "catalog": true}),
    }
}

pub fn validate(algebra: Option<String>, rep: Option<String>, ext: &ExtArgs, cm: Option<String>) -> Result<Outcome> {
    if let Some(a) = algebra {
        let l = algebra_arg(&a)?;
        return Ok(Outcome::ok(json!({
            "kind": "algebra",
            "valid": true,
            "dim": l.dim(),
            "center_dim": liecoh_core::lie::center(&l).dim(),
            "provenance": provenance(&a),
        })));
    }
    if let Some(r) = rep {
        let rep = representation_from_json(&file_value(&r)?)?;
        return Ok(Outcome::ok(json!({
            "kind": "representation",
            "valid": true,
            "algebra_dim": rep.algebra().dim(),
            "space_dim": rep.space_dim(),
            "provenance": provenance(&r),
        })));
    }
    if let Some(c) = cm {
        let cm = cm_arg(&c)?;
        return Ok(Outcome::ok(json!({
            "kind": "crossed-module",
            "valid": true,
            "h_dim": cm.h.dim(),
            "ghat_dim": cm.ghat.dim(),
            "provenance": provenance(&c),
        })));
    }
    let bundle = ext_bundle(ext)?;
    if bundle.omega.is_some() {
        bundle.factor_system()?;
        Ok(Outcome::ok(json!({"kind": "factor-system", "valid": true})))
    } else {
        bundle.kernel()?;
        Ok(Outcome::ok(
            json!({"kind": "outer-action", "valid": true, "curvature_lift_exists": true}),
        ))
    }
}

fn cohomology_rep(algebra: Option<String>, rep: Option<String>) -> Result<Representation> {
    let named = |a: Option<String>| -> Result<Arc<LieAlgebra>> {
        algebra_arg(&a.ok_or_else(|| Error::Parse("--algebra is required unless --rep is a file".into()))?)
    };
    match rep.as_deref() {
        None | Some("trivial") => Ok(Representation::trivial(named(algebra)?, 1)),
        Some("adjoint") => Ok(adjoint_rep(&named(algebra)?)),
        Some("coadjoint") => Ok(adjoint_rep(&named(algebra)?).dual()),
        Some(path) => {
            let r = representation_from_json(&file_value(path)?)?;
            if let Some(a) = algebra {
                if **r.algebra() != *algebra_arg(&a)? {
                    return Err(Error::DimensionMismatch(
                        "--rep is a module over a different algebra".into(),
                    ));
                }
            }
            Ok(r)
        }
    }
}

pub fn cohomology(algebra: Option<String>, rep: Option<String>, degree: usize) -> Result<Outcome> {
    let rep = cohomology_rep(algebra, rep)?;
    let space = coh::cohomology(&rep, degree)?;
    let d = rep.algebra().dim();
    let as_cochains = |basis: &[Vec<liecoh_core::Scalar>]| -> Vec<Value> {
        basis
            .iter()
            .map(|v| {
                cochain_json(&liecoh_core::cochain::Cochain::from_flat(
                    d,
                    degree,
                    rep.space_dim(),
                    v.clone(),
                ))
            })
            .collect()
    };
    Ok(Outcome::ok(json!({
        "degree": degree,
        "dim_cocycles": space.cocycles().dim(),
        "dim_coboundaries": space.coboundaries().dim(),
        "dim_cohomology": space.h_dim(),
        "cocycle_basis": as_cochains(space.cocycles().basis()),
        "class_basis": space.class_basis().iter().map(cochain_json).collect::<Vec<_>>(),
    })))
}

pub fn extension_build(a: &ExtArgs) -> Result<Outcome> {
    let fs = ext_bundle(a)?.factor_system()?;
    let ext = build_extension(&fs)?;
    Ok(Outcome::ok(json!({
        "total": algebra_json(&ext.total),
        "inclusion": matrix_json(&ext.inclusion),
        "projection": matrix_json(&ext.projection),
        "section": matrix_json(&ext.section),
    })))
}

pub fn extension_check(a: &ExtArgs) -> Result<Outcome> {
    let fs = ext_bundle(a)?.factor_system_unchecked()?;
    match fs.validate() {
        Ok(()) => Ok(Outcome::ok(json!({"valid": true}))),
        Err(Error::InvalidFactorSystem {
            condition,
            detail,
            jacobi_triple,
        }) => Ok(Outcome::negative(json!({
            "valid": false,
            "certificate": {
                "condition": condition,
                "detail": detail,
                "jacobi_triple": jacobi_triple.map(|(i, j, k)| json!([i, j, k])),
            },
        }))),
        Err(e) => Err(e),
    }
}

pub fn extension_classify(a: &ExtArgs) -> Result<Outcome> {
    let k = ext_bundle(a)?.kernel()?;
    let c = classify_extensions(&k)?;
    Ok(Outcome::ok(json!({
        "h2_dim": c.h2.h_dim(),
        "base": ExtensionBundle::from_factor_system(&c.base).to_json(),
        "translations": c.translations.iter().map(cochain_json).collect::<Vec<_>>(),
    })))
}

pub fn extension_reduce(a: &ExtArgs) -> Result<Outcome> {
    let fs = ext_bundle(a)?.factor_system()?;
    let r = reduce_via_gs(&fs)?;
    Ok(Outcome::ok(json!({
        "gs": algebra_json(r.gs.algebra()),
        "center_dim": r.splitting.z.dim(),
        "f_tilde": cochain_json(&r.f_tilde),
        "f_tilde_directions": r.directions.iter().map(cochain_json).collect::<Vec<_>>(),
        "rebuilt": {
            "total": algebra_json(&r.rebuilt.total),
            "inclusion": matrix_json(&r.rebuilt.inclusion),
            "projection": matrix_json(&r.rebuilt.projection),
        },
        "witness": matrix_json(&r.witness),
    })))
}

pub fn obstruction(a: &ExtArgs) -> Result<Outcome> {
    let k = ext_bundle(a)?.kernel()?;
    let class = obstruction_class(&k)?;
    Ok(Outcome::from_flag(
        class.is_zero(),
        json!({"obstructed": !class.is_zero(), "omega": cochain_json(k.omega()), "class": class_json(&class)}),
    ))
}

pub fn crossed_module_validate(arg: &str) -> Result<Outcome> {
    let cm = cm_arg(arg)?;
    let r = validate_crossed_module(&cm);
    Ok(Outcome::from_flag(
        r.is_valid(),
        json!({"valid": r.is_valid(), "failures": r.failures()}),
    ))
}

pub fn crossed_module_class(arg: &str) -> Result<Outcome> {
    let cm = cm_arg(arg)?;
    let sp = split_crossed_module(&cm)?;
    let theta = characteristic_class_theta_route(&sp)?;
    let omega = characteristic_class_omega_route(&cm, None)?;
    let agree = classes_equal(&theta, &omega)?;
    let mut report = json!({
        "kernel_dim": sp.z.dim(),
        "cokernel_dim": sp.quotient.algebra.dim(),
        "theta_route": class_json(&theta),
        "omega_route": class_json(&omega),
        "routes_agree": agree,
    });
    let m = report.as_object_mut().expect("object");
    let split = match splitting_equivalence(&cm)? {
        SplittingOutcome::Split(w) => {
            m.insert("splits".into(), json!(true));
            m.insert(
                "witness".into(),
                json!({"cocycle": cochain_json(&w.cocycle), "extension": algebra_json(&w.extension.total), "psi": matrix_json(&w.psi)}),
            );
            true
        }
        SplittingOutcome::Obstructed { class, certificate } => {
            m.insert("splits".into(), json!(false));
            m.insert(
                "certificate".into(),
                json!({"class": class_json(&class), "inconsistency": certificate_json(&certificate)}),
            );
            false
        }
    };
    Ok(Outcome::from_flag(split && agree, report))
}

pub fn derivations(a: &ExtArgs) -> Result<Outcome> {
    let fs = ext_bundle(a)?.factor_system()?;
    let d = extension_derivations(&fs)?;
    Ok(Outcome::ok(json!({
        "z1_dim": d.z1_basis.len(),
        "z1_basis": d.z1_basis.iter().map(cochain_json).collect::<Vec<_>>(),
        "stabilizer_dim": d.stabilizer.len(),
        "stabilizer": d.stabilizer.iter().map(pair_json).collect::<Vec<_>>(),
        "gammas": d.gammas.iter().map(cochain_json).collect::<Vec<_>>(),
        "h2_dim": d.h2.h_dim(),
        "obstruction_matrix": matrix_json(&d.i_matrix),
        "kernel_dim": d.kernel_i.len(),
        "kernel": d.kernel_i.iter().map(pair_json).collect::<Vec<_>>(),
        "lifts": d.lifts.iter().map(matrix_json).collect::<Vec<_>>(),
        "der_dim": d.der_dim,
        "brute_force_der_dim": d.brute_force_dim,
        "cokernel_dim": d.cokernel_dim,
        "consistent": d.is_consistent(),
    })))
}

pub fn lift(a: &ExtArgs, pair: &str) -> Result<Outcome> {
    let fs = ext_bundle(a)?.factor_system()?;
    match pair_file_from_json(&file_value(pair)?, fs.n().dim(), fs.g().dim())? {
        PairFile::Pair(p) => {
            let obstruction = match prop_a5_class(&fs, &p.alpha, &p.beta) {
                Ok((_, c)) => class_json(&c),
                Err(Error::NoGamma(m)) => json!({"no_gamma": m}),
                Err(e) => return Err(e),
            };
            let mut report = json!({"obstruction": obstruction});
            let m = report.as_object_mut().expect("object");
            if let Some(gamma) = &p.gamma {
                let c = check_derivation_triple(&fs, &p.alpha, &p.beta, gamma)?;
                m.insert(
                    "supplied_gamma".into(),
                    json!({
                        "outer_action_condition": c.outer_action_condition,
                        "omega_condition": c.omega_condition,
                        "leibniz": c.leibniz_holds,
                    }),
                );
            }
            match lift_pair(&fs, &p.alpha, &p.beta) {
                Ok(gamma) => {
                    let d = check_derivation_triple(&fs, &p.alpha, &p.beta, &gamma)?;
                    m.insert("lifts".into(), json!(true));
                    m.insert("gamma".into(), cochain_json(&gamma));
                    m.insert("derivation".into(), matrix_json(&d.map));
                    Ok(Outcome::ok(report))
                }
                Err(cert) => {
                    m.insert("lifts".into(), json!(false));
                    m.insert("certificate".into(), certificate_json(&cert));
                    Ok(Outcome::negative(report))
                }
            }
        }
        PairFile::Lifting(l) => {
            let lc = lifting_cocycle(&fs, l.h.clone(), &l.psi, &l.theta)?;
            let lifts = lc.class.is_zero();
            Ok(Outcome::from_flag(
                lifts,
                json!({
                    "d_theta": cochain_json(&lc.cochain),
                    "z1_dim": lc.z1_basis.len(),
                    "d_theta_in_z1": cochain_json(&lc.z1_valued),
                    "class": class_json(&lc.class),
                    "lifts_to_representation": lifts,
                    "given_theta_is_homomorphism": lc.lift_is_homomorphism,
                }),
            ))
        }
    }
}

pub fn automorphism(a: &ExtArgs, pair: &str) -> Result<Outcome> {
    let fs = ext_bundle(a)?.factor_system()?;
    let PairFile::Pair(p) = pair_file_from_json(&file_value(pair)?, fs.n().dim(), fs.g().dim())? else {
        return Err(Error::Parse(
            "automorphism expects {\"alpha\", \"beta\"[, \"gamma\"]}".into(),
        ));
    };
    let o = aut_obstruction(&fs, &p.alpha, &p.beta)?;
    let mut report = json!({"gamma": cochain_json(&o.gamma), "class": class_json(&o.class)});
    let m = report.as_object_mut().expect("object");
    if let Some(gamma) = &p.gamma {
        let c = check_equivalence_map(&p.alpha, &p.beta, gamma, &fs, &fs)?;
        m.insert(
            "supplied_gamma".into(),
            json!({
                "outer_action_condition": c.outer_action_condition,
                "omega_condition": c.omega_condition,
                "bracket_violation": c.bracket_violation.map(|(i, j)| json!([i, j])),
            }),
        );
    }
    let lifts = match &o.lift {
        Ok(l) => {
            m.insert("lifts".into(), json!(true));
            m.insert("lifted_gamma".into(), cochain_json(&l.gamma));
            m.insert("automorphism".into(), matrix_json(&l.map));
            true
        }
        Err(cert) => {
            m.insert("lifts".into(), json!(false));
            m.insert("certificate".into(), certificate_json(cert));
            false
        }
    };
    Ok(Outcome::from_flag(lifts, report))
}

fn catalog_entry(name: &str) -> Result<(&'static str, Value)> {
    if let Ok(l) = catalog::algebra(name) {
        return Ok(("algebra", algebra_json(&l)));
    }
    if let Ok(fs) = catalog::factor_system(name) {
        return Ok(("extension", ExtensionBundle::from_factor_system(&fs).to_json()));
    }
    if let Ok(cm) = catalog::crossed_module(name) {
        return Ok(("crossed-module", crossed_module_json(&cm)));
    }
    Err(Error::UnknownName(name.to_string()))
}

pub fn catalog(name: Option<String>, emit: Option<PathBuf>) -> Result<Outcome> {
    let Some(name) = name else {
        return Ok(Outcome::ok(json!({
            "algebras": catalog::ALGEBRA_NAMES,
            "factor_systems": catalog::FACTOR_SYSTEM_NAMES,
            "crossed_modules": catalog::CROSSED_MODULE_NAMES,
            "bundles": BUNDLES,
        })));
    };
    let (kind, value) = catalog_entry(&name)?;
    match emit {
        None => Ok(Outcome::ok(value)),
        Some(path) => {
            let text = to_canonical_string(&value);
            std::fs::write(&path, &text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            Ok(Outcome::ok(json!({
                "name": name,
                "kind": kind,
                "emitted": path.display().to_string(),
                "sha256": sha256_hex(text.as_bytes()),
            })))
        }
    }
}

pub fn v2_check(algebra: &str, samples: usize, seed: u64) -> Result<Outcome> {
    let kappa = killing_form(algebra_arg(algebra)?);
    let r = liecoh_core::currents::v2_check(&kappa, samples, seed)?;
    let eta = v2_characteristic_cocycle(&kappa)?;
    let ok = r.failures == 0 && r.vanishing_failures == 0 && r.cyclic_failures == 0 && r.eta_closed;
    Ok(Outcome::from_flag(
        ok,
        json!({
            "algebra": algebra,
            "seed": seed,
            "identity_samples": r.identity_samples,
            "failures": r.failures,
            "vanishing_samples": r.vanishing_samples,
            "vanishing_failures": r.vanishing_failures,
            "cyclic_failures": r.cyclic_failures,
            "killing_gram": matrix_json(kappa.gram()),
            "eta": cochain_json(&eta.eta),
            "eta_closed": r.eta_closed,
            "h3_dim": r.h3_dim,
            "eta_class_nonzero": r.eta_class_nonzero,
        }),
    ))
}

pub fn reproduce(name: &str) -> Result<Outcome> {
    let r = run_bundle(name)?;
    Ok(Outcome::from_flag(r.pass, r.report))
}

//! Builtin algebras and the assembled extensions and crossed modules used by
//! the worked examples.

use std::sync::Arc;

use crate::cochain::{Cochain, OuterActionMap};
use crate::crossed::CrossedModule;
use crate::error::{Error, Result};
use crate::extension::{build_extension, build_gs, FactorSystem, GKernel};
use crate::lie::{adjoint_rep, direct_and_semidirect, LieAlgebra, Representation};
use crate::linalg::{Matrix, Vector};
use crate::scalar::Scalar;

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn ints(v: &[i64]) -> Vector {
    v.iter().map(|&x| Scalar::from_int(x)).collect()
}

/// Basis `p, q, z` with `[p, q] = z`.
pub fn heisenberg3() -> LieAlgebra {
    LieAlgebra::new(labels(&["p", "q", "z"]), &[(0, 1, ints(&[0, 0, 1]))]).expect("heisenberg algebra")
}

/// Basis `e, f, h` with `[e, f] = h`, `[h, e] = 2e`, `[h, f] = −2f`.
pub fn sl2() -> LieAlgebra {
    LieAlgebra::new(
        labels(&["e", "f", "h"]),
        &[
            (0, 1, ints(&[0, 0, 1])),
            (0, 2, ints(&[-2, 0, 0])),
            (1, 2, ints(&[0, 2, 0])),
        ],
    )
    .expect("sl2")
}

/// Basis `x, y` with `[x, y] = x`.
pub fn nonabelian2() -> LieAlgebra {
    LieAlgebra::new(labels(&["x", "y"]), &[(0, 1, ints(&[1, 0]))]).expect("nonabelian2")
}

pub fn abelian(dim: usize) -> LieAlgebra {
    LieAlgebra::abelian(dim)
}

/// The defining representation of `sl2` on `k²` in the basis `e, f, h`.
pub fn sl2_natural_matrices() -> Vec<Matrix> {
    vec![
        Matrix::from_ints(&[&[0, 1], &[0, 0]]),
        Matrix::from_ints(&[&[0, 0], &[1, 0]]),
        Matrix::from_ints(&[&[1, 0], &[0, -1]]),
    ]
}

fn two_form(dim: usize, value_dim: usize, entries: &[(usize, usize, Vector)]) -> Cochain {
    let mut c = Cochain::zero(dim, 2, value_dim);
    for (i, j, v) in entries {
        c.set(&[*i, *j], v.clone());
    }
    c
}

/// `heis3 = k ⊕_ω k²` with `ω(e1, e2) = 1` and trivial action.
pub fn heisenberg_central() -> FactorSystem {
    FactorSystem::new(
        Arc::new(abelian(1)),
        Arc::new(abelian(2)),
        OuterActionMap::zero(2, 1),
        two_form(2, 1, &[(0, 1, ints(&[1]))]),
    )
    .expect("symplectic central extension")
}

/// `k ⊕_ω heis3` with `ω(p, z) = 1` and all other basis pairs zero.
pub fn heisenberg_over_heisenberg() -> FactorSystem {
    FactorSystem::new(
        Arc::new(abelian(1)),
        Arc::new(heisenberg3()),
        OuterActionMap::zero(3, 1),
        two_form(3, 1, &[(0, 2, ints(&[1]))]),
    )
    .expect("2-cocycle on heis3")
}

/// Kernel `heis3` over `g = k²` with `S(e1) = diag(1, −1, 0)`, `S(e2) = 0`
/// and `ω(e1, e2) = z`.
pub fn heisenberg_kernel() -> FactorSystem {
    let d = Matrix::from_ints(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, 0]]);
    FactorSystem::new(
        Arc::new(heisenberg3()),
        Arc::new(abelian(2)),
        OuterActionMap::new(3, vec![d, Matrix::zeros(3, 3)]).expect("square"),
        two_form(2, 3, &[(0, 1, ints(&[0, 0, 1]))]),
    )
    .expect("heisenberg kernel factor system")
}

/// `n = k` over `g = k²` with `S(e1) = a`, `S(e2) = 0` and `ω = 0`.
pub fn line_over_plane(a: i64) -> FactorSystem {
    FactorSystem::new(
        Arc::new(abelian(1)),
        Arc::new(abelian(2)),
        OuterActionMap::new(1, vec![Matrix::from_ints(&[&[a]]), Matrix::zeros(1, 1)]).expect("square"),
        Cochain::zero(2, 2, 1),
    )
    .expect("homomorphism into der(k)")
}

/// `k² ⋊ sl2` for the defining representation.
pub fn plane_by_sl2() -> FactorSystem {
    FactorSystem::new(
        Arc::new(abelian(2)),
        Arc::new(sl2()),
        OuterActionMap::new(2, sl2_natural_matrices()).expect("square"),
        Cochain::zero(3, 2, 2),
    )
    .expect("semidirect product")
}

/// The trivial outer action of `k` on `sl2`.
pub fn sl2_kernel() -> GKernel {
    GKernel::new(Arc::new(abelian(1)), Arc::new(sl2()), OuterActionMap::zero(1, 3)).expect("homomorphism")
}

/// Named factor systems.
pub const FACTOR_SYSTEM_NAMES: &[&str] = &[
    "heisenberg-central",
    "heisenberg-over-heisenberg",
    "heisenberg-kernel",
    "plane-by-sl2",
    "line-over-plane",
];

pub fn factor_system(name: &str) -> Result<FactorSystem> {
    match name {
        "heisenberg-central" => Ok(heisenberg_central()),
        "heisenberg-over-heisenberg" => Ok(heisenberg_over_heisenberg()),
        "heisenberg-kernel" => Ok(heisenberg_kernel()),
        "plane-by-sl2" => Ok(plane_by_sl2()),
        "line-over-plane" => Ok(line_over_plane(1)),
        _ => Err(Error::UnknownName(name.to_string())),
    }
}

/// The ideal `k²` of `k² ⋊ sl2`.
pub fn ideal_inclusion_plane() -> CrossedModule {
    let ext = build_extension(&plane_by_sl2()).expect("valid");
    let ghat = ext.total.clone();
    let h = Arc::new(abelian(2));
    let action = ideal_action(&ghat, &ext.inclusion, 2);
    CrossedModule::new(h, ghat, ext.inclusion, action).expect("ideal inclusion")
}

/// The center of `heis3`.
pub fn ideal_inclusion_center() -> CrossedModule {
    let ghat = Arc::new(heisenberg3());
    let h = Arc::new(abelian(1));
    let incl = Matrix::from_ints(&[&[0], &[0], &[1]]);
    let action = ideal_action(&ghat, &incl, 1);
    CrossedModule::new(h, ghat, incl, action).expect("ideal inclusion")
}

fn ideal_action(ghat: &Arc<LieAlgebra>, incl: &Matrix, dim: usize) -> Representation {
    let left = incl.left_inverse().expect("injective");
    let action = (0..ghat.dim()).map(|x| left.mul(&ghat.ad_basis(x)).mul(incl)).collect();
    Representation::new(ghat.clone(), dim, action).expect("restricted adjoint action")
}

/// `heis3 → k²`, the quotient by the center, with `k²` acting through lifts.
pub fn central_extension_heisenberg() -> CrossedModule {
    let h = Arc::new(heisenberg3());
    let ghat = Arc::new(abelian(2));
    let alpha = Matrix::from_ints(&[&[1, 0, 0], &[0, 1, 0]]);
    let action = Representation::new(ghat.clone(), 3, vec![h.ad_basis(0), h.ad_basis(1)]).expect("abelian action");
    CrossedModule::new(h, ghat, alpha, action).expect("central extension")
}

/// `id: sl2 → sl2` with the adjoint action.
pub fn identity_sl2() -> CrossedModule {
    let g = Arc::new(sl2());
    CrossedModule::new(g.clone(), g.clone(), Matrix::identity(3), adjoint_rep(&g)).expect("identity")
}

/// `α = 0: k² → sl2` with the defining action.
pub fn zero_map_plane() -> CrossedModule {
    let ghat = Arc::new(sl2());
    let rep = Representation::new(ghat.clone(), 2, sl2_natural_matrices()).expect("defining representation");
    CrossedModule::new(Arc::new(abelian(2)), ghat, Matrix::zeros(3, 2), rep).expect("zero map")
}

/// `n → g^S` for a factor system's kernel.
pub fn gs_crossed_module(fs: &FactorSystem) -> CrossedModule {
    CrossedModule::from_gs(&build_gs(&fs.kernel()).expect("valid kernel")).expect("g^S crossed module")
}

/// Named crossed modules.
pub const CROSSED_MODULE_NAMES: &[&str] = &[
    "ideal-plane-in-sl2-semidirect",
    "ideal-center-of-heisenberg",
    "central-extension-heisenberg",
    "identity-sl2",
    "zero-map-plane",
    "gs-heisenberg-kernel",
    "gs-sl2-kernel",
    "gs-heisenberg-central",
];

pub fn crossed_module(name: &str) -> Result<CrossedModule> {
    match name {
        "ideal-plane-in-sl2-semidirect" => Ok(ideal_inclusion_plane()),
        "ideal-center-of-heisenberg" => Ok(ideal_inclusion_center()),
        "central-extension-heisenberg" => Ok(central_extension_heisenberg()),
        "identity-sl2" => Ok(identity_sl2()),
        "zero-map-plane" => Ok(zero_map_plane()),
        "gs-heisenberg-kernel" => Ok(gs_crossed_module(&heisenberg_kernel())),
        "gs-sl2-kernel" => {
            let k = sl2_kernel();
            Ok(CrossedModule::from_gs(&build_gs(&k)?)?)
        }
        "gs-heisenberg-central" => Ok(gs_crossed_module(&heisenberg_central())),
        _ => Err(Error::UnknownName(name.to_string())),
    }
}

/// `k² ⋊ sl2` as a bare algebra.
pub fn sl2_semidirect_plane() -> LieAlgebra {
    direct_and_semidirect(&abelian(2), &sl2(), Some(&sl2_natural_matrices())).expect("semidirect product")
}

/// Named builtin algebras; `abelian<n>` is accepted for every `n`.
pub const ALGEBRA_NAMES: &[&str] = &[
    "heisenberg3",
    "sl2",
    "nonabelian2",
    "sl2-semidirect-plane",
    "abelian<n>",
];

/// Looks up a builtin algebra by one of [`ALGEBRA_NAMES`].
pub fn algebra(name: &str) -> Result<LieAlgebra> {
    match name {
        "heisenberg3" => Ok(heisenberg3()),
        "sl2" => Ok(sl2()),
        "nonabelian2" => Ok(nonabelian2()),
        "sl2-semidirect-plane" => Ok(sl2_semidirect_plane()),
        _ => name
            .strip_prefix("abelian")
            .and_then(|d| d.parse::<usize>().ok())
            .map(abelian)
            .ok_or_else(|| Error::UnknownName(name.to_string())),
    }
}

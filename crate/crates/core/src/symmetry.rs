//! Derivations and automorphisms of an extension `n → ĝ → g` given by a
//! factor system: which pairs `(α, β)` on `n × g` lift, the cohomological
//! obstruction `I` to lifting, and the lifting cocycle for a whole
//! subalgebra of pairs.

use std::sync::Arc;

use crate::cochain::{ad_compose, binomial, cochain_differential, covariant_differential, Cochain, OuterActionMap};
use crate::cohomology::{cohomology, solve_cochains, AffineCochains, CenterModule, CohomologyClass, CohomologySpace};
use crate::error::{Error, Result};
use crate::extension::{
    assemble_map, build_extension, check_equivalence_map, half_square, transform_omega, transform_outer_action,
    FactorSystem,
};
use crate::lie::{is_derivation, leibniz_residual, map_homomorphism_violation, LieAlgebra, Representation};
use crate::linalg::{
    kernel, linear_map_matrix, sub_vectors, zero_vector, InconsistencyCertificate, Matrix, Subspace, Vector,
};
use crate::scalar::Scalar;

/// `((α,β).S)(x) = [α, S(x)] − S(βx)`.
pub fn pair_on_outer_action(alpha: &Matrix, beta: &Matrix, s: &OuterActionMap) -> OuterActionMap {
    let matrices = (0..s.g_dim())
        .map(|x| alpha.commutator(s.at(x)).sub(&s.act(&beta.column(x))))
        .collect();
    OuterActionMap::new(s.dim(), matrices).expect("square")
}

/// `((α,β).c)(x_1..x_p) = α c(x_1..x_p) − Σ_i c(x_1..βx_i..x_p)`.
pub fn pair_on_cochain(alpha: &Matrix, beta: &Matrix, c: &Cochain) -> Cochain {
    let d = c.domain_dim();
    Cochain::from_fn(d, c.degree(), c.value_dim(), |t| {
        let args: Vec<Vector> = t.iter().map(|&i| crate::linalg::unit_vector(d, i)).collect();
        let mut v = alpha.mul_vec(c.value(t));
        for i in 0..t.len() {
            let mut moved = args.clone();
            moved[i] = beta.column(t[i]);
            v = sub_vectors(&v, &c.evaluate(&moved).expect("degree matches"));
        }
        v
    })
}

/// `D(n, x) = (α(n) + γ(x), β(x))` as a matrix on `n ⊕ g`.
pub fn derivation_matrix(alpha: &Matrix, beta: &Matrix, gamma: &Cochain) -> Matrix {
    let (dn, dg) = (alpha.rows(), beta.rows());
    alpha
        .hstack(&gamma.to_matrix())
        .vstack(&Matrix::zeros(dg, dn).hstack(beta))
}

/// The two conditions for `(α, β, γ)` to define a derivation of the
/// extension, and the Leibniz check of the assembled map.
#[derive(Clone, Debug)]
pub struct DerivationTripleCheck {
    pub outer_action_condition: bool,
    pub omega_condition: bool,
    pub leibniz_holds: bool,
    pub map: Matrix,
}

impl DerivationTripleCheck {
    pub fn holds(&self) -> bool {
        self.outer_action_condition && self.omega_condition
    }
}

pub fn check_derivation_triple(
    fs: &FactorSystem,
    alpha: &Matrix,
    beta: &Matrix,
    gamma: &Cochain,
) -> Result<DerivationTripleCheck> {
    let (n, g) = (fs.n(), fs.g());
    if !is_derivation(n, alpha) || !is_derivation(g, beta) {
        return Err(Error::InvariantViolation(vec![
            "alpha and beta must be derivations".into()
        ]));
    }
    let ds = covariant_differential(g, fs.s(), gamma)?;
    let map = derivation_matrix(alpha, beta, gamma);
    let total = build_extension(fs)?.total;
    Ok(DerivationTripleCheck {
        outer_action_condition: pair_on_outer_action(alpha, beta, fs.s())
            == crate::cochain::ad_of_one_cochain(n, gamma),
        omega_condition: pair_on_cochain(alpha, beta, fs.omega()) == ds,
        leibniz_holds: is_derivation(&total, &map),
        map,
    })
}

/// A pair `(α, β) ∈ End(n) × End(g)`.
pub type Pair = (Matrix, Matrix);

fn split_pair(v: &[Scalar], dn: usize, dg: usize) -> Pair {
    (
        Matrix::from_flat(dn, dn, v[..dn * dn].to_vec()),
        Matrix::from_flat(dg, dg, v[dn * dn..dn * dn + dg * dg].to_vec()),
    )
}

fn flatten_pair(p: &Pair) -> Vector {
    let mut v = p.0.flatten();
    v.extend(p.1.flatten());
    v
}

/// `γ` with `(α,β).S = ad∘γ`, pivot convention.
fn stabilizer_gamma(fs: &FactorSystem, alpha: &Matrix, beta: &Matrix) -> AffineCochains {
    let n = fs.n();
    let target = pair_on_outer_action(alpha, beta, fs.s()).as_cochain();
    solve_cochains(fs.g().dim(), 1, n.dim(), target.flat().len(), |gamma| {
        sub_vectors(ad_compose(n, gamma).flat(), target.flat())
    })
}

fn center_cochain(zm: &CenterModule, c: &Cochain) -> Result<Cochain> {
    zm.to_center(c)
        .ok_or_else(|| Error::InvariantViolation(vec!["cochain is not z(n)-valued".into()]))
}

/// `I(α, β) = [(α,β).ω − d_S γ] ∈ H²(g, z(n))_S` together with the `γ` used.
pub fn prop_a5_class(fs: &FactorSystem, alpha: &Matrix, beta: &Matrix) -> Result<(Cochain, CohomologyClass)> {
    let gamma = match stabilizer_gamma(fs, alpha, beta) {
        AffineCochains::Solved { particular, .. } => particular,
        AffineCochains::Empty(_) => {
            return Err(Error::NoGamma("(alpha, beta).S is not of the form ad∘gamma".into()));
        }
    };
    let class = prop_a5_class_with(fs, alpha, beta, &gamma)?;
    Ok((gamma, class))
}

/// `I(α, β)` computed with a caller-supplied `γ` solving `(α,β).S = ad∘γ`.
pub fn prop_a5_class_with(
    fs: &FactorSystem,
    alpha: &Matrix,
    beta: &Matrix,
    gamma: &Cochain,
) -> Result<CohomologyClass> {
    if pair_on_outer_action(alpha, beta, fs.s()) != crate::cochain::ad_of_one_cochain(fs.n(), gamma) {
        return Err(Error::NoGamma(
            "supplied gamma does not solve (alpha, beta).S = ad∘gamma".into(),
        ));
    }
    let zm = fs.center_module()?;
    let diff = pair_on_cochain(alpha, beta, fs.omega()).sub(&covariant_differential(fs.g(), fs.s(), gamma)?);
    let space = Arc::new(cohomology(&zm.rep, 2)?);
    CohomologyClass::new(space, center_cochain(&zm, &diff)?)
}

/// A `γ` making `(α, β, γ)` a derivation of the extension, or the
/// certificate that none exists.
pub fn lift_pair(
    fs: &FactorSystem,
    alpha: &Matrix,
    beta: &Matrix,
) -> std::result::Result<Cochain, InconsistencyCertificate> {
    let (n, g) = (fs.n(), fs.g());
    let t_s = pair_on_outer_action(alpha, beta, fs.s()).as_cochain();
    let t_w = pair_on_cochain(alpha, beta, fs.omega());
    let n_out = t_s.flat().len() + t_w.flat().len();
    match solve_cochains(g.dim(), 1, n.dim(), n_out, |gamma| {
        let mut r = sub_vectors(ad_compose(n, gamma).flat(), t_s.flat());
        r.extend(sub_vectors(
            covariant_differential(g, fs.s(), gamma).expect("shapes").flat(),
            t_w.flat(),
        ));
        r
    }) {
        AffineCochains::Solved { particular, .. } => Ok(particular),
        AffineCochains::Empty(c) => Err(c),
    }
}

/// The exact sequence
/// `0 → Z¹(g, z(n))_S → der(ĝ, n) → (der n × der g)_[S] → H²(g, z(n))_S`.
#[derive(Clone, Debug)]
pub struct ExtensionDerivations {
    /// `n`-valued cocycles spanning `Z¹(g, z(n))_S`.
    pub z1_basis: Vec<Cochain>,
    /// Echelon basis of the stabilizer `(der n × der g)_[S]`.
    pub stabilizer: Vec<Pair>,
    /// The pivot `γ` for each stabilizer basis element.
    pub gammas: Vec<Cochain>,
    /// `I` of each stabilizer basis element in coordinates of the `H²` basis.
    pub i_matrix: Matrix,
    pub h2: Arc<CohomologySpace>,
    /// Basis of `ker I` as pairs.
    pub kernel_i: Vec<Pair>,
    /// Derivations of the extension lifting the basis of `ker I`.
    pub lifts: Vec<Matrix>,
    pub der_dim: usize,
    /// `dim` of the derivations of the total algebra preserving `n`.
    pub brute_force_dim: usize,
    /// `dim H² − rank I`; zero when `I` is onto.
    pub cokernel_dim: usize,
}

impl ExtensionDerivations {
    pub fn is_consistent(&self) -> bool {
        self.der_dim == self.brute_force_dim
    }
}

/// `der(L)` ∩ `{D : D(I) ⊆ I}` for the coordinate ideal `I` of the first
/// `ideal_dim` basis vectors.
fn ideal_preserving_derivation_space(total: &LieAlgebra, ideal_dim: usize) -> Subspace {
    let d = total.dim();
    let out = d * d.saturating_sub(1) / 2 * d + (d - ideal_dim) * ideal_dim;
    let m = linear_map_matrix(d * d, out, |x| {
        let dm = Matrix::from_flat(d, d, x.to_vec());
        let mut r = leibniz_residual(total, &dm);
        for row in ideal_dim..d {
            for col in 0..ideal_dim {
                r.push(dm[(row, col)].clone());
            }
        }
        r
    });
    kernel(&m)
}

pub fn extension_derivations(fs: &FactorSystem) -> Result<ExtensionDerivations> {
    fs.validate()?;
    let (n, g) = (fs.n(), fs.g());
    let (dn, dg) = (n.dim(), g.dim());
    let zm = fs.center_module()?;

    let z1_space = cohomology(&zm.rep, 1)?;
    let z1_basis: Vec<Cochain> = z1_space
        .cocycles()
        .basis()
        .iter()
        .map(|v| zm.to_ambient(&Cochain::from_flat(dg, 1, zm.dim(), v.clone())))
        .collect();

    let pair_len = dn * dn + dg * dg;
    let unknowns = pair_len + dg * dn;
    let equations = dn * binomial(dn, 2) + dg * binomial(dg, 2) + dg * dn * dn;
    let system = linear_map_matrix(unknowns, equations, |x| {
        let (alpha, beta) = split_pair(x, dn, dg);
        let gamma = Cochain::from_flat(dg, 1, dn, x[pair_len..].to_vec());
        let mut r = leibniz_residual(n, &alpha);
        r.extend(leibniz_residual(g, &beta));
        let lhs = pair_on_outer_action(&alpha, &beta, fs.s()).as_cochain();
        r.extend(sub_vectors(lhs.flat(), ad_compose(n, &gamma).flat()));
        r
    });
    let joint = kernel(&system);
    let projected = Subspace::from_spanning(pair_len, joint.basis().iter().map(|v| v[..pair_len].to_vec()).collect());
    let stabilizer: Vec<Pair> = projected.basis().iter().map(|v| split_pair(v, dn, dg)).collect();

    let h2 = Arc::new(cohomology(&zm.rep, 2)?);
    let mut gammas = Vec::new();
    let mut columns = Vec::new();
    for (alpha, beta) in &stabilizer {
        let (gamma, class) = prop_a5_class(fs, alpha, beta)?;
        columns.push(h2.class_coordinates(class.representative())?);
        gammas.push(gamma);
    }
    let i_matrix = Matrix::from_columns(&columns, h2.h_dim());
    let ker = kernel(&i_matrix);
    let kernel_i: Vec<Pair> = ker
        .basis()
        .iter()
        .map(|c| split_pair(&projected.combine(c), dn, dg))
        .collect();
    let mut lifts = Vec::new();
    let total = build_extension(fs)?.total;
    for (alpha, beta) in &kernel_i {
        let gamma = lift_pair(fs, alpha, beta)
            .map_err(|_| Error::InvariantViolation(vec!["pair in ker I does not lift".into()]))?;
        let d = derivation_matrix(alpha, beta, &gamma);
        if !is_derivation(&total, &d) {
            return Err(Error::InvariantViolation(vec![
                "assembled lift is not a derivation".into()
            ]));
        }
        lifts.push(d);
    }
    let der_dim = z1_basis.len() + kernel_i.len();
    let brute_force_dim = ideal_preserving_derivation_space(&total, dn).dim();
    let cokernel_dim = h2.h_dim() - i_matrix.rank();
    Ok(ExtensionDerivations {
        z1_basis,
        stabilizer,
        gammas,
        i_matrix,
        h2,
        kernel_i,
        lifts,
        der_dim,
        brute_force_dim,
        cokernel_dim,
    })
}

/// `d_h θ` for a homomorphism `ψ: h → (der n × der g)` and `θ: h → C¹(g, n)`.
#[derive(Clone, Debug)]
pub struct LiftingCocycle {
    /// `d_h θ` with values in `C¹(g, n)`, flattened as `(dim g) × (dim n)`
    /// cochain coordinates.
    pub cochain: Cochain,
    /// `d_h θ` in coordinates of the `Z¹(g, z(n))_S` basis.
    pub z1_valued: Cochain,
    pub z1_basis: Vec<Cochain>,
    /// `h` acting on `Z¹(g, z(n))_S` through `ψ`.
    pub z1_rep: Representation,
    /// The class of `d_h θ` in `H²(h, Z¹(g, z(n))_S)`.
    pub class: CohomologyClass,
    /// Whether `x ↦ D(ψ(x), θ(x))` is a homomorphism into `der ĝ`.
    pub lift_is_homomorphism: bool,
}

/// `(α,β).γ = α∘γ − γ∘β` on `C¹(g, n)`.
fn pair_on_one_cochain(p: &Pair, gamma: &Cochain) -> Cochain {
    pair_on_cochain(&p.0, &p.1, gamma)
}

pub fn lifting_cocycle(
    fs: &FactorSystem,
    h: Arc<LieAlgebra>,
    psi: &[Pair],
    theta: &[Cochain],
) -> Result<LiftingCocycle> {
    let (n, g) = (fs.n(), fs.g());
    let (dn, dg, dh) = (n.dim(), g.dim(), h.dim());
    if psi.len() != dh || theta.len() != dh {
        return Err(Error::DimensionMismatch(
            "psi and theta need one entry per basis element of h".into(),
        ));
    }
    for (x, (p, t)) in psi.iter().zip(theta).enumerate() {
        if !is_derivation(n, &p.0) || !is_derivation(g, &p.1) {
            return Err(Error::PreconditionFailed {
                basis: x,
                condition: "psi(x) is not a pair of derivations".into(),
            });
        }
        if pair_on_outer_action(&p.0, &p.1, fs.s()) != crate::cochain::ad_of_one_cochain(n, t) {
            return Err(Error::PreconditionFailed {
                basis: x,
                condition: "psi(x).S = ad∘theta(x)".into(),
            });
        }
        if pair_on_cochain(&p.0, &p.1, fs.omega()) != covariant_differential(g, fs.s(), t)? {
            return Err(Error::PreconditionFailed {
                basis: x,
                condition: "psi(x).omega = d_S theta(x)".into(),
            });
        }
    }
    let flat_pairs: Vec<Vector> = psi.iter().map(flatten_pair).collect();
    let pair_algebra_bracket = |a: &Pair, b: &Pair| (a.0.commutator(&b.0), a.1.commutator(&b.1));
    for x in 0..dh {
        for y in x + 1..dh {
            let lhs = pair_algebra_bracket(&psi[x], &psi[y]);
            let rhs_flat = combine_vectors(&flat_pairs, h.bracket_basis(x, y));
            if flatten_pair(&lhs) != rhs_flat {
                return Err(Error::PreconditionFailed {
                    basis: x,
                    condition: format!("psi is not a homomorphism on (e{x}, e{y})"),
                });
            }
        }
    }
    let theta_at = |v: &[Scalar]| -> Cochain {
        let mut acc = Cochain::zero(dg, 1, dn);
        for (c, t) in v.iter().zip(theta) {
            if !c.is_zero() {
                acc = acc.add(&t.scale(c));
            }
        }
        acc
    };
    let cochain = Cochain::from_fn(dh, 2, dg * dn, |t| {
        let (x, y) = (t[0], t[1]);
        let v = pair_on_one_cochain(&psi[x], &theta[y])
            .sub(&pair_on_one_cochain(&psi[y], &theta[x]))
            .sub(&theta_at(h.bracket_basis(x, y)));
        v.into_flat()
    });

    let zm = fs.center_module()?;
    let z1 = cohomology(&zm.rep, 1)?;
    let z1_basis: Vec<Cochain> = z1
        .cocycles()
        .basis()
        .iter()
        .map(|v| zm.to_ambient(&Cochain::from_flat(dg, 1, zm.dim(), v.clone())))
        .collect();
    let z1_sub = Subspace::from_spanning(dg * dn, z1_basis.iter().map(|c| c.flat().to_vec()).collect());
    let z1_basis: Vec<Cochain> = z1_sub
        .basis()
        .iter()
        .map(|v| Cochain::from_flat(dg, 1, dn, v.clone()))
        .collect();
    let k = z1_basis.len();
    let coords = |v: &[Scalar]| -> Result<Vector> {
        z1_sub
            .coordinates(v)
            .ok_or_else(|| Error::InvariantViolation(vec!["value outside Z¹(g, z(n))_S".into()]))
    };
    let mut action = Vec::with_capacity(dh);
    for p in psi {
        let cols = z1_basis
            .iter()
            .map(|b| coords(pair_on_one_cochain(p, b).flat()))
            .collect::<Result<Vec<_>>>()?;
        action.push(Matrix::from_columns(&cols, k));
    }
    let z1_rep = Representation::new(h.clone(), k, action)?;
    let mut flat = Vec::with_capacity(binomial(dh, 2) * k);
    for r in 0..cochain.num_tuples() {
        flat.extend(coords(&cochain.flat()[r * dg * dn..(r + 1) * dg * dn])?);
    }
    let z1_valued = Cochain::from_flat(dh, 2, k, flat);
    debug_assert!(cochain_differential(&z1_rep, &z1_valued)?.is_zero());
    let space = Arc::new(cohomology(&z1_rep, 2)?);
    let class = CohomologyClass::new(space, z1_valued.clone())?;

    let total = build_extension(fs)?.total;
    let lifts: Vec<Matrix> = psi
        .iter()
        .zip(theta)
        .map(|(p, t)| derivation_matrix(&p.0, &p.1, t))
        .collect();
    let lift_is_homomorphism = (0..dh).all(|x| {
        (x + 1..dh).all(|y| {
            lifts[x].commutator(&lifts[y]) == crate::lie::combine_matrices(&lifts, h.bracket_basis(x, y), total.dim())
        })
    });
    Ok(LiftingCocycle {
        cochain,
        z1_valued,
        z1_basis,
        z1_rep,
        class,
        lift_is_homomorphism,
    })
}

fn combine_vectors(vectors: &[Vector], coeffs: &[Scalar]) -> Vector {
    let mut out = zero_vector(vectors.first().map_or(0, Vec::len));
    for (c, v) in coeffs.iter().zip(vectors) {
        if !c.is_zero() {
            crate::linalg::axpy(&mut out, c, v);
        }
    }
    out
}

/// `g.(S, ω) = (α S(β⁻¹·) α⁻¹, α ω(β⁻¹·, β⁻¹·))` for `g = (α, β)`.
pub fn automorphism_on_factor_system(
    fs: &FactorSystem,
    alpha: &Matrix,
    beta: &Matrix,
) -> Result<(OuterActionMap, Cochain)> {
    let alpha_inv = alpha
        .inverse()
        .ok_or_else(|| Error::InvariantViolation(vec!["alpha is singular".into()]))?;
    let beta_inv = beta
        .inverse()
        .ok_or_else(|| Error::InvariantViolation(vec!["beta is singular".into()]))?;
    Ok((
        transform_outer_action(alpha, &alpha_inv, &beta_inv, fs.s()),
        transform_omega(alpha, &beta_inv, fs.omega()),
    ))
}

/// `I(g) = [g.ω − ω − d_S γ − ½[γ, γ]]` and, when it vanishes, a lift.
#[derive(Clone, Debug)]
pub struct AutObstruction {
    pub gamma: Cochain,
    pub class: CohomologyClass,
    pub lift: std::result::Result<AutomorphismLift, InconsistencyCertificate>,
}

#[derive(Clone, Debug)]
pub struct AutomorphismLift {
    /// `γ'` with `g.(S, ω) = γ'.(S, ω)`.
    pub gamma: Cochain,
    /// `(n, x) ↦ (α n + γ'(β x), β x)`, verified to be an automorphism.
    pub map: Matrix,
}

pub fn aut_obstruction(fs: &FactorSystem, alpha: &Matrix, beta: &Matrix) -> Result<AutObstruction> {
    let (n, g) = (fs.n(), fs.g());
    if map_homomorphism_violation(n, n, alpha).is_some() || map_homomorphism_violation(g, g, beta).is_some() {
        return Err(Error::InvariantViolation(vec![
            "alpha and beta must be automorphisms".into()
        ]));
    }
    let (moved_s, moved_omega) = automorphism_on_factor_system(fs, alpha, beta)?;
    let target = moved_s.sub(fs.s()).as_cochain();
    let gamma = match solve_cochains(g.dim(), 1, n.dim(), target.flat().len(), |c| {
        sub_vectors(ad_compose(n, c).flat(), target.flat())
    }) {
        AffineCochains::Solved { particular, .. } => particular,
        AffineCochains::Empty(_) => return Err(Error::NoGamma("g.S − S is not of the form ad∘gamma".into())),
    };
    let zm = fs.center_module()?;
    let diff = moved_omega
        .sub(fs.omega())
        .sub(&covariant_differential(g, fs.s(), &gamma)?)
        .sub(&half_square(n, &gamma)?);
    let diff_z = center_cochain(&zm, &diff)?;
    let space = Arc::new(cohomology(&zm.rep, 2)?);
    let class = CohomologyClass::new(space, diff_z.clone())?;
    let correction = solve_cochains(g.dim(), 1, zm.dim(), diff_z.flat().len(), |b| {
        sub_vectors(
            covariant_differential(g, &zm_action(&zm), b).expect("shapes").flat(),
            diff_z.flat(),
        )
    });
    let lift = match correction {
        AffineCochains::Solved { particular, .. } => {
            let gamma_full = gamma.add(&zm.to_ambient(&particular));
            let check = check_equivalence_map(alpha, beta, &gamma_full, fs, fs)?;
            if !check.holds() || check.bracket_violation.is_some() {
                return Err(Error::InvariantViolation(vec![
                    "assembled automorphism fails verification".into(),
                ]));
            }
            Ok(AutomorphismLift {
                map: assemble_map(alpha, beta, &gamma_full),
                gamma: gamma_full,
            })
        }
        AffineCochains::Empty(cert) => Err(cert),
    };
    Ok(AutObstruction { gamma, class, lift })
}

fn zm_action(zm: &CenterModule) -> OuterActionMap {
    OuterActionMap::from_representation(&zm.rep)
}

/// `g.[η] = [α|_z ∘ η ∘ (β⁻¹ × β⁻¹)]` on `z(n)`-valued 2-cochains.
pub fn automorphism_on_center_cochain(
    fs: &FactorSystem,
    alpha: &Matrix,
    beta: &Matrix,
    eta: &Cochain,
) -> Result<Cochain> {
    let zm = fs.center_module()?;
    let beta_inv = beta
        .inverse()
        .ok_or_else(|| Error::InvariantViolation(vec!["beta is singular".into()]))?;
    let moved = transform_omega(alpha, &beta_inv, &zm.to_ambient(eta));
    center_cochain(&zm, &moved)
}

//! Crossed modules `α: h → ĝ`, their splitting data `(z, f, θ)` and the two
//! computations of the characteristic class in `H³(ĝ/im α, ker α)`.

use std::sync::Arc;

use crate::cochain::{cochain_differential, covariant_differential, tuples, Cochain, OuterActionMap};
use crate::cohomology::{
    cohomology, theta_constrained_cocycles, AffineCochains, BilinearTable, CohomologyClass, CohomologySpace,
};
use crate::error::{Error, Result};
use crate::extension::{build_extension, ExtensionPresentation, FactorSystem, GS};
use crate::lie::{
    is_derivation, is_ideal, map_homomorphism_violation, quotient_algebra, BracketTable, LieAlgebra, Quotient,
    Representation,
};
use crate::linalg::{
    image, is_zero_vector, kernel, solve, sub_vectors, unit_vector, zero_vector, InconsistencyCertificate, Matrix,
    Subspace, Vector,
};

/// `α: h → ĝ` with an action of `ĝ` on `h` by derivations.
#[derive(Clone, Debug)]
pub struct CrossedModule {
    pub h: Arc<LieAlgebra>,
    pub ghat: Arc<LieAlgebra>,
    /// `dim ĝ × dim h`.
    pub alpha: Matrix,
    pub action: Representation,
}

/// Each check of [`validate_crossed_module`] with a failing witness.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CrossedModuleReport {
    pub alpha_homomorphism: Option<(usize, usize)>,
    pub action_by_derivations: Option<usize>,
    /// `α(x.h) ≠ [x, α(h)]` on `(e_x, e_h)`.
    pub cm1: Option<(usize, usize)>,
    /// `α(h).h' ≠ [h, h']` on `(e_h, e_h')`.
    pub cm2: Option<(usize, usize)>,
    pub image_is_ideal: bool,
    /// Index of a kernel basis vector outside the center.
    pub kernel_central: Option<usize>,
    /// `(e_x, k)` with `e_x.k ∉ ker α`.
    pub kernel_submodule: Option<(usize, usize)>,
}

impl CrossedModuleReport {
    pub fn is_valid(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if let Some((i, j)) = self.alpha_homomorphism {
            out.push(format!("alpha is not a homomorphism on ({i}, {j})"));
        }
        if let Some(x) = self.action_by_derivations {
            out.push(format!("e{x} does not act by a derivation"));
        }
        if let Some((x, h)) = self.cm1 {
            out.push(format!("CM1 fails on (e{x}, h{h})"));
        }
        if let Some((a, b)) = self.cm2 {
            out.push(format!("CM2 fails on (h{a}, h{b})"));
        }
        if !self.image_is_ideal {
            out.push("image of alpha is not an ideal".into());
        }
        if let Some(k) = self.kernel_central {
            out.push(format!("kernel basis vector {k} is not central"));
        }
        if let Some((x, k)) = self.kernel_submodule {
            out.push(format!("e{x} moves kernel basis vector {k} out of the kernel"));
        }
        out
    }
}

pub fn validate_crossed_module(cm: &CrossedModule) -> CrossedModuleReport {
    let (h, ghat) = (&cm.h, &cm.ghat);
    let mut r = CrossedModuleReport {
        alpha_homomorphism: map_homomorphism_violation(h, ghat, &cm.alpha),
        action_by_derivations: cm.action.action().iter().position(|m| !is_derivation(h, m)),
        ..Default::default()
    };
    'cm1: for x in 0..ghat.dim() {
        for a in 0..h.dim() {
            let lhs = cm.alpha.mul_vec(&cm.action.action()[x].column(a));
            let rhs = ghat.bracket(&ghat.basis_vector(x), &cm.alpha.column(a));
            if lhs != rhs {
                r.cm1 = Some((x, a));
                break 'cm1;
            }
        }
    }
    'cm2: for a in 0..h.dim() {
        let act = cm.action.act(&cm.alpha.column(a));
        for b in 0..h.dim() {
            if act.column(b) != *h.bracket_basis(a, b) {
                r.cm2 = Some((a, b));
                break 'cm2;
            }
        }
    }
    let im = image(&cm.alpha);
    r.image_is_ideal = is_ideal(ghat, &im);
    let ker = kernel(&cm.alpha);
    r.kernel_central = ker
        .basis()
        .iter()
        .position(|k| (0..h.dim()).any(|b| !is_zero_vector(&h.bracket(k, &h.basis_vector(b)))));
    'sub: for x in 0..ghat.dim() {
        for (i, k) in ker.basis().iter().enumerate() {
            if !ker.contains(&cm.action.action()[x].mul_vec(k)) {
                r.kernel_submodule = Some((x, i));
                break 'sub;
            }
        }
    }
    r
}

impl CrossedModule {
    /// # Errors
    /// `InvalidCrossedModule` listing every failed check.
    pub fn new(h: Arc<LieAlgebra>, ghat: Arc<LieAlgebra>, alpha: Matrix, action: Representation) -> Result<Self> {
        if alpha.rows() != ghat.dim() || alpha.cols() != h.dim() {
            return Err(Error::DimensionMismatch("alpha must map h into ghat".into()));
        }
        if **action.algebra() != *ghat || action.space_dim() != h.dim() {
            return Err(Error::DimensionMismatch(
                "action must be a ghat-module structure on h".into(),
            ));
        }
        let cm = CrossedModule { h, ghat, alpha, action };
        let report = validate_crossed_module(&cm);
        if !report.is_valid() {
            return Err(Error::InvalidCrossedModule(report.failures()));
        }
        Ok(cm)
    }

    /// `n → g^S` with the action `ρ`.
    pub fn from_gs(gs: &GS) -> Result<Self> {
        CrossedModule::new(
            gs.kernel.n().clone(),
            gs.algebra().clone(),
            gs.alpha.clone(),
            gs.rho.clone(),
        )
    }
}

/// `h ≅ z ⊕_f n` with `z = ker α`, `n = im α` and the action written as
/// `x.(z, n) = (x.z + θ(x, n), [x, n])`.
#[derive(Clone, Debug)]
pub struct CrossedModuleSplitting {
    pub cm: CrossedModule,
    /// `ker α` in `h`.
    pub z: Subspace,
    /// `im α` in `ĝ`.
    pub n: Subspace,
    /// `im α` as a Lie algebra in the echelon basis of `n`.
    pub n_algebra: Arc<LieAlgebra>,
    /// `dim h × dim n`: pivot-convention preimages of the basis of `n`.
    pub t: Matrix,
    /// `f(u, v) = p_z([t u, t v])`, a `z`-valued 2-cocycle on `n_algebra`.
    pub f: Cochain,
    /// `θ(e_x, b_i) = p_z(e_x . t b_i)` for `x ∈ ĝ`.
    pub theta: BilinearTable,
    /// `g = ĝ / n`.
    pub quotient: Quotient,
    /// `ĝ` acting on `z`.
    pub z_rep_hat: Representation,
    /// The induced action of `g` on `z`.
    pub z_rep: Representation,
}

impl CrossedModuleSplitting {
    /// `z`-coordinates of `v − t(α v)`.
    pub fn p_z(&self, v: &[crate::Scalar]) -> Vector {
        let nc = self.n.coordinates(&self.cm.alpha.mul_vec(v)).expect("alpha lands in n");
        let rest = sub_vectors(v, &self.t.mul_vec(&nc));
        self.z.coordinates(&rest).expect("v − t(αv) lies in ker α")
    }

    /// `p_z` as a `dim z × dim h` matrix.
    pub fn p_z_matrix(&self) -> Matrix {
        let cols: Vec<Vector> = (0..self.cm.h.dim())
            .map(|a| self.p_z(&unit_vector(self.cm.h.dim(), a)))
            .collect();
        Matrix::from_columns(&cols, self.z.dim())
    }

    /// `θ(x, y)` for arbitrary `x ∈ ĝ` and `y ∈ n`.
    pub fn theta_at(&self, x: &[crate::Scalar], y: &[crate::Scalar]) -> Vector {
        let yc = self.n.coordinates(y).expect("second argument in n");
        let mut out = zero_vector(self.z.dim());
        for (k, xk) in x.iter().enumerate() {
            for (i, yi) in yc.iter().enumerate() {
                let c = xk * yi;
                if !c.is_zero() {
                    crate::linalg::axpy(&mut out, &c, &self.theta[k][i]);
                }
            }
        }
        out
    }

    pub fn g(&self) -> &Arc<LieAlgebra> {
        &self.quotient.algebra
    }
}

pub fn split_crossed_module(cm: &CrossedModule) -> Result<CrossedModuleSplitting> {
    let (h, ghat) = (&cm.h, &cm.ghat);
    let z = kernel(&cm.alpha);
    let n = image(&cm.alpha);
    let m = n.dim();
    let preimages: Vec<Vector> = n
        .basis()
        .iter()
        .map(|b| solve(&cm.alpha, b).expect("basis of the image"))
        .collect();
    let t = Matrix::from_columns(&preimages, h.dim());
    let mut table = BracketTable::zero(m);
    for i in 0..m {
        for j in i + 1..m {
            let c = n
                .coordinates(&ghat.bracket(&n.basis()[i], &n.basis()[j]))
                .ok_or_else(|| Error::InvalidCrossedModule(vec!["image of alpha is not a subalgebra".into()]))?;
            table.set(i, j, c);
        }
    }
    let n_algebra = Arc::new(LieAlgebra::from_table(crate::lie::default_labels("n", m), table)?);
    let quotient = quotient_algebra(ghat, &n)
        .map_err(|_| Error::InvalidCrossedModule(vec!["image of alpha is not an ideal".into()]))?;
    let zd = z.dim();
    let restrict = |mat: &Matrix| -> Result<Matrix> {
        let cols = z
            .basis()
            .iter()
            .map(|k| {
                z.coordinates(&mat.mul_vec(k))
                    .ok_or_else(|| Error::InvalidCrossedModule(vec!["kernel is not a submodule".into()]))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_columns(&cols, zd))
    };
    let hat_action = cm.action.action().iter().map(restrict).collect::<Result<Vec<_>>>()?;
    let z_rep_hat = Representation::new(ghat.clone(), zd, hat_action)?;
    let g_action = (0..quotient.algebra.dim())
        .map(|x| restrict(&cm.action.act(&quotient.section.column(x))))
        .collect::<Result<Vec<_>>>()?;
    let z_rep = Representation::new(quotient.algebra.clone(), zd, g_action)
        .map_err(|_| Error::InvalidCrossedModule(vec!["action on ker alpha does not factor through g".into()]))?;

    let mut sp = CrossedModuleSplitting {
        cm: cm.clone(),
        z,
        n,
        n_algebra,
        t,
        f: Cochain::zero(m, 2, zd),
        theta: Vec::new(),
        quotient,
        z_rep_hat,
        z_rep,
    };
    let f = Cochain::from_fn(m, 2, zd, |p| sp.p_z(&h.bracket(&sp.t.column(p[0]), &sp.t.column(p[1]))));
    let theta: BilinearTable = (0..ghat.dim())
        .map(|x| {
            (0..m)
                .map(|i| sp.p_z(&cm.action.action()[x].mul_vec(&sp.t.column(i))))
                .collect()
        })
        .collect();
    sp.f = f;
    sp.theta = theta;
    let problems = splitting_violations(&sp);
    if !problems.is_empty() {
        return Err(Error::InvalidCrossedModule(problems));
    }
    Ok(sp)
}

/// Checks `θ|_{n×n} = f` and the derivation and cocycle conditions on `θ`.
pub fn splitting_violations(sp: &CrossedModuleSplitting) -> Vec<String> {
    let ghat = &sp.cm.ghat;
    let nb = sp.n.basis();
    let m = nb.len();
    let act = |x: &[crate::Scalar], v: &Vector| sp.z_rep_hat.act(x).mul_vec(v);
    let mut out = Vec::new();
    for i in 0..m {
        for j in 0..m {
            if sp.theta_at(&nb[i], &nb[j]) != sp.f.eval_basis(&[i, j]) {
                out.push(format!("theta differs from f on (b{i}, b{j})"));
            }
        }
    }
    for x in 0..ghat.dim() {
        let ex = ghat.basis_vector(x);
        for i in 0..m {
            for j in i + 1..m {
                let bij = ghat.bracket(&nb[i], &nb[j]);
                let xi = sp.n.coordinates(&ghat.bracket(&ex, &nb[i])).expect("ideal");
                let xj = sp.n.coordinates(&ghat.bracket(&ex, &nb[j])).expect("ideal");
                let mut r = act(&ex, &sp.f.value(&[i, j]).to_vec());
                r = crate::linalg::add_vectors(&r, &sp.theta_at(&ex, &bij));
                r = sub_vectors(&r, &sp.f.evaluate(&[xi, unit_vector(m, j)]).expect("degree 2"));
                r = sub_vectors(&r, &sp.f.evaluate(&[unit_vector(m, i), xj]).expect("degree 2"));
                if !is_zero_vector(&r) {
                    out.push(format!("theta_e{x} fails the derivation condition on (b{i}, b{j})"));
                }
            }
        }
    }
    for x in 0..ghat.dim() {
        for y in x + 1..ghat.dim() {
            let (ex, ey) = (ghat.basis_vector(x), ghat.basis_vector(y));
            let exy = ghat.bracket_basis(x, y);
            for (i, b) in nb.iter().enumerate() {
                let lhs = sp.theta_at(exy, b);
                let mut rhs = act(&ex, &sp.theta_at(&ey, b));
                rhs = sub_vectors(&rhs, &act(&ey, &sp.theta_at(&ex, b)));
                rhs = crate::linalg::add_vectors(&rhs, &sp.theta_at(&ex, &ghat.bracket(&ey, b)));
                rhs = sub_vectors(&rhs, &sp.theta_at(&ey, &ghat.bracket(&ex, b)));
                if lhs != rhs {
                    out.push(format!("theta is not a cocycle on (e{x}, e{y}, b{i})"));
                }
            }
        }
    }
    out
}

/// An alternating `f̃ ∈ C²(ĝ, z)` extending `θ`: in the basis
/// `(b_1..b_m, complement axes)` it is `θ` on pairs meeting `n` and zero on
/// complement pairs.
pub fn alternating_extension(sp: &CrossedModuleSplitting) -> Cochain {
    let ghat = &sp.cm.ghat;
    let d = ghat.dim();
    let m = sp.n.dim();
    let mut adapted: Vec<Vector> = sp.n.basis().to_vec();
    adapted.extend(sp.n.complement_axes().into_iter().map(|c| unit_vector(d, c)));
    let p = Matrix::from_columns(&adapted, d);
    let p_inv = p.inverse().expect("adapted basis");
    let zd = sp.z.dim();
    let in_adapted = Cochain::from_fn(d, 2, zd, |t| {
        let (a, b) = (t[0], t[1]);
        if b < m {
            sp.theta_at(&adapted[a], &adapted[b])
        } else if a < m {
            sp.theta_at(&adapted[b], &adapted[a]).into_iter().map(|v| -v).collect()
        } else {
            zero_vector(zd)
        }
    });
    in_adapted.pullback(&p_inv)
}

/// `χ_α` from `d_ĝ f̃ = q*β`.
///
/// # Errors
/// `FactorizationFailure` when `d_ĝ f̃` does not vanish on `n × ĝ × ĝ`.
pub fn characteristic_class_theta_route(sp: &CrossedModuleSplitting) -> Result<CohomologyClass> {
    let f_tilde = alternating_extension(sp);
    theta_route_from(sp, &f_tilde)
}

/// The θ-route for a caller-chosen alternating extension `f̃` of `θ`.
pub fn theta_route_from(sp: &CrossedModuleSplitting, f_tilde: &Cochain) -> Result<CohomologyClass> {
    let ghat = &sp.cm.ghat;
    let d = ghat.dim();
    for x in 0..d {
        for (i, b) in sp.n.basis().iter().enumerate() {
            if sp.theta_at(&ghat.basis_vector(x), b) != f_tilde.evaluate(&[ghat.basis_vector(x), b.clone()])? {
                return Err(Error::FactorizationFailure(format!(
                    "f~ does not extend theta on (e{x}, b{i})"
                )));
            }
        }
    }
    let df = cochain_differential(&sp.z_rep_hat, f_tilde)?;
    for (i, b) in sp.n.basis().iter().enumerate() {
        for t in tuples(d, 2) {
            let v = df.evaluate(&[b.clone(), ghat.basis_vector(t[0]), ghat.basis_vector(t[1])])?;
            if !is_zero_vector(&v) {
                return Err(Error::FactorizationFailure(format!(
                    "d f~ does not vanish on (b{i}, e{}, e{})",
                    t[0], t[1]
                )));
            }
        }
    }
    let beta = df.pullback(&sp.quotient.section);
    if beta.pullback(&sp.quotient.projection) != df {
        return Err(Error::FactorizationFailure("d f~ is not pulled back from g".into()));
    }
    let space = Arc::new(cohomology(&sp.z_rep, 3)?);
    CohomologyClass::new(space, beta)
}

/// The ω-route: `S(x) = σ(x).(·)`, `α∘ω = R_σ`, class `[d_S ω]`.
///
/// `sigma` defaults to the canonical section `g → ĝ`.
pub fn characteristic_class_omega_route(cm: &CrossedModule, sigma: Option<&Matrix>) -> Result<CohomologyClass> {
    let sp = split_crossed_module(cm)?;
    omega_route_with(&sp, sigma)
}

pub fn omega_route_with(sp: &CrossedModuleSplitting, sigma: Option<&Matrix>) -> Result<CohomologyClass> {
    let cm = &sp.cm;
    let g = sp.g().clone();
    let sigma = sigma.unwrap_or(&sp.quotient.section);
    if sp.quotient.projection.mul(sigma) != Matrix::identity(g.dim()) {
        return Err(Error::NotASection);
    }
    let lifts: Vec<Vector> = (0..g.dim()).map(|x| sigma.column(x)).collect();
    let s = OuterActionMap::new(cm.h.dim(), lifts.iter().map(|l| cm.action.act(l)).collect())?;
    let mut omega = Cochain::zero(g.dim(), 2, cm.h.dim());
    for t in tuples(g.dim(), 2) {
        let r = sub_vectors(
            &cm.ghat.bracket(&lifts[t[0]], &lifts[t[1]]),
            &sigma.mul_vec(g.bracket_basis(t[0], t[1])),
        );
        let w = solve(&cm.alpha, &r)
            .ok_or_else(|| Error::NoOmegaLift(format!("R_sigma(e{}, e{}) is not in im alpha", t[0], t[1])))?;
        omega.set(&t, w);
    }
    let d = covariant_differential(&g, &s, &omega)?;
    let zm = sp.z.dim();
    let mut coords = Vec::with_capacity(d.num_tuples() * zm);
    let hd = cm.h.dim();
    for r in 0..d.num_tuples() {
        let v = &d.flat()[r * hd..(r + 1) * hd];
        coords.extend(
            sp.z.coordinates(v)
                .ok_or_else(|| Error::InvariantViolation(vec!["d_S omega is not ker(alpha)-valued".into()]))?,
        );
    }
    let dz = Cochain::from_flat(g.dim(), 3, zm, coords);
    let space = Arc::new(cohomology(&sp.z_rep, 3)?);
    CohomologyClass::new(space, dz)
}

/// A cocycle `F ∈ Z²(ĝ, z)` extending `θ`, the abelian extension
/// `z → g̃ → ĝ` it defines and the equivariant embedding `ψ: h → g̃`,
/// `ψ(v) = (p_z v, α v)`, onto `q⁻¹(n)`.
#[derive(Clone, Debug)]
pub struct SplittingWitness {
    pub cocycle: Cochain,
    pub extension: ExtensionPresentation,
    pub psi: Matrix,
}

#[derive(Clone, Debug)]
pub enum SplittingOutcome {
    Split(Box<SplittingWitness>),
    Obstructed {
        class: CohomologyClass,
        certificate: InconsistencyCertificate,
    },
}

pub fn splitting_equivalence(cm: &CrossedModule) -> Result<SplittingOutcome> {
    let sp = split_crossed_module(cm)?;
    let chi = characteristic_class_theta_route(&sp)?;
    let cocycle = match theta_constrained_cocycles(&cm.ghat, &sp.n, &sp.z_rep_hat, &sp.theta)? {
        AffineCochains::Solved { particular, .. } => particular,
        AffineCochains::Empty(certificate) => {
            return Ok(SplittingOutcome::Obstructed {
                class: chi,
                certificate,
            })
        }
    };
    if !chi.is_zero() {
        return Err(Error::InvariantViolation(vec![
            "theta extends to a cocycle but the class is nonzero".into(),
        ]));
    }
    let fs = FactorSystem::new(
        Arc::new(LieAlgebra::abelian(sp.z.dim())),
        cm.ghat.clone(),
        OuterActionMap::from_representation(&sp.z_rep_hat),
        cocycle.clone(),
    )?;
    let extension = build_extension(&fs)?;
    let psi = sp.p_z_matrix().vstack(&cm.alpha);
    verify_equivariant_embedding(&sp, &extension, &psi)?;
    Ok(SplittingOutcome::Split(Box::new(SplittingWitness {
        cocycle,
        extension,
        psi,
    })))
}

fn verify_equivariant_embedding(sp: &CrossedModuleSplitting, ext: &ExtensionPresentation, psi: &Matrix) -> Result<()> {
    let cm = &sp.cm;
    let mut problems = Vec::new();
    if psi.rank() != cm.h.dim() {
        problems.push("psi is not injective".to_string());
    }
    if let Some((i, j)) = map_homomorphism_violation(&cm.h, &ext.total, psi) {
        problems.push(format!("psi does not preserve the bracket on ({i}, {j})"));
    }
    let q_inv_n = Subspace::from_spanning(
        ext.total.dim(),
        (0..sp.z.dim())
            .map(|a| ext.inclusion.column(a))
            .chain(sp.n.basis().iter().map(|b| ext.section.mul_vec(b)))
            .collect(),
    );
    for a in 0..cm.h.dim() {
        if !q_inv_n.contains(&psi.column(a)) {
            problems.push(format!("psi(h{a}) is not in the preimage of n"));
        }
    }
    for x in 0..cm.ghat.dim() {
        let lift = ext.section.column(x);
        for a in 0..cm.h.dim() {
            let lhs = psi.mul_vec(&cm.action.action()[x].column(a));
            let rhs = ext.total.bracket(&lift, &psi.column(a));
            if lhs != rhs {
                problems.push(format!("psi is not equivariant on (e{x}, h{a})"));
            }
        }
    }
    if problems.is_empty() {
        Ok(())
    } else {
        Err(Error::InvariantViolation(problems))
    }
}

/// `H³(g, z)` of a crossed module, for reports.
pub fn class_space(sp: &CrossedModuleSplitting) -> Result<CohomologySpace> {
    cohomology(&sp.z_rep, 3)
}

//! Factor systems, the extensions they present, their equivalences, the
//! obstruction class of an outer action and the reduction of non-abelian
//! extensions to abelian extensions of `g^S`.

use std::sync::Arc;

use crate::cochain::{
    ad_compose, covariant_differential, curvature, gauge_action, superbracket, tuples, Cochain, OuterActionMap,
};
use crate::cohomology::{
    cohomology, curvature_lift, relative_cocycles, solve_cochains, AffineCochains, CenterModule, CohomologyClass,
    CohomologySpace,
};
use crate::error::{Error, Result};
use crate::lie::{
    center, extension_table, map_homomorphism_violation, quotient_algebra, LieAlgebra, Quotient, Representation,
};
use crate::linalg::{sub_vectors, InconsistencyCertificate, Matrix, Subspace, Vector};
use crate::scalar::Scalar;

/// `(S, ω)` for the pair `(g, n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorSystem {
    n: Arc<LieAlgebra>,
    g: Arc<LieAlgebra>,
    s: OuterActionMap,
    omega: Cochain,
}

/// Which defining condition of a factor system fails, with a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorSystemDefect {
    /// `S(e_x)` is not a derivation of `n`.
    Derivation(usize),
    /// `R_S(e_x, e_y) ≠ ad ω(e_x, e_y)`.
    Curvature(usize, usize),
    /// `d_S ω(e_x, e_y, e_z) ≠ 0`.
    Cocycle(usize, usize, usize),
}

impl FactorSystemDefect {
    pub fn condition(&self) -> &'static str {
        match self {
            FactorSystemDefect::Derivation(_) => "derivation",
            FactorSystemDefect::Curvature(..) => "curvature",
            FactorSystemDefect::Cocycle(..) => "cocycle",
        }
    }

    /// Number of `g`-arguments in the Jacobi triples this defect breaks.
    fn g_arity(&self) -> usize {
        match self {
            FactorSystemDefect::Derivation(_) => 1,
            FactorSystemDefect::Curvature(..) => 2,
            FactorSystemDefect::Cocycle(..) => 3,
        }
    }

    fn detail(&self) -> String {
        match self {
            FactorSystemDefect::Derivation(x) => format!("S(e{x}) is not a derivation of n"),
            FactorSystemDefect::Curvature(x, y) => format!("R_S(e{x}, e{y}) differs from ad omega(e{x}, e{y})"),
            FactorSystemDefect::Cocycle(x, y, z) => format!("d_S omega(e{x}, e{y}, e{z}) is nonzero"),
        }
    }
}

impl FactorSystem {
    /// # Errors
    /// `InvalidFactorSystem` naming the failing condition and a Jacobi triple
    /// of the would-be total algebra that it breaks.
    pub fn new(n: Arc<LieAlgebra>, g: Arc<LieAlgebra>, s: OuterActionMap, omega: Cochain) -> Result<Self> {
        let fs = FactorSystem::new_unchecked(n, g, s, omega)?;
        fs.validate()?;
        Ok(fs)
    }

    /// Checks shapes only.
    pub fn new_unchecked(n: Arc<LieAlgebra>, g: Arc<LieAlgebra>, s: OuterActionMap, omega: Cochain) -> Result<Self> {
        if s.dim() != n.dim() || s.g_dim() != g.dim() {
            return Err(Error::DimensionMismatch("S must map g into End(n)".into()));
        }
        if omega.degree() != 2 || omega.domain_dim() != g.dim() || omega.value_dim() != n.dim() {
            return Err(Error::DimensionMismatch(
                "omega must be an n-valued 2-cochain on g".into(),
            ));
        }
        Ok(FactorSystem { n, g, s, omega })
    }

    pub fn n(&self) -> &Arc<LieAlgebra> {
        &self.n
    }

    pub fn g(&self) -> &Arc<LieAlgebra> {
        &self.g
    }

    pub fn s(&self) -> &OuterActionMap {
        &self.s
    }

    pub fn omega(&self) -> &Cochain {
        &self.omega
    }

    /// First failing condition, checked in the order derivation, curvature,
    /// cocycle.
    pub fn defect(&self) -> Option<FactorSystemDefect> {
        if let Some(x) = self.s.non_derivation(&self.n) {
            return Some(FactorSystemDefect::Derivation(x));
        }
        let diff = curvature(&self.g, &self.s).sub(&ad_compose(&self.n, &self.omega));
        if let Some(t) = first_nonzero(&diff) {
            return Some(FactorSystemDefect::Curvature(t[0], t[1]));
        }
        let d = covariant_differential(&self.g, &self.s, &self.omega).expect("shapes checked");
        first_nonzero(&d).map(|t| FactorSystemDefect::Cocycle(t[0], t[1], t[2]))
    }

    pub fn validate(&self) -> Result<()> {
        match self.defect() {
            None => Ok(()),
            Some(defect) => {
                let table = self.table();
                let dn = self.n.dim();
                let violations = table.jacobi_violations();
                let jacobi_triple = violations
                    .iter()
                    .find(|&&(i, j, k)| [i, j, k].iter().filter(|&&t| t >= dn).count() == defect.g_arity())
                    .or(violations.first())
                    .copied();
                Err(Error::InvalidFactorSystem {
                    condition: defect.condition().into(),
                    detail: defect.detail(),
                    jacobi_triple,
                })
            }
        }
    }

    fn table(&self) -> crate::lie::BracketTable {
        extension_table(&self.n, &self.g, self.s.matrices(), |x, y| {
            self.omega.value(&[x, y]).to_vec()
        })
    }

    /// `γ.(S, ω)`.
    pub fn gauge(&self, gamma: &Cochain) -> Result<FactorSystem> {
        let (s, omega) = gauge_action(&self.g, &self.n, gamma, &self.s, &self.omega)?;
        Ok(FactorSystem {
            s,
            omega,
            ..self.clone()
        })
    }

    pub fn with_omega(&self, omega: Cochain) -> Result<FactorSystem> {
        FactorSystem::new(self.n.clone(), self.g.clone(), self.s.clone(), omega)
    }

    pub fn kernel(&self) -> GKernel {
        GKernel {
            g: self.g.clone(),
            n: self.n.clone(),
            s: self.s.clone(),
            omega: self.omega.clone(),
        }
    }

    /// `z(n)` as a `g`-module through `S`.
    pub fn center_module(&self) -> Result<CenterModule> {
        CenterModule::new(&self.g, &self.n, &self.s)
    }
}

fn first_nonzero(c: &Cochain) -> Option<Vec<usize>> {
    let m = c.value_dim();
    tuples(c.domain_dim(), c.degree())
        .into_iter()
        .enumerate()
        .find(|(r, _)| c.flat()[r * m..(r + 1) * m].iter().any(|v| !v.is_zero()))
        .map(|(_, t)| t)
}

/// A split short exact sequence `n → total → g`.
#[derive(Clone, Debug)]
pub struct ExtensionPresentation {
    pub total: Arc<LieAlgebra>,
    pub n: Arc<LieAlgebra>,
    pub g: Arc<LieAlgebra>,
    /// `dim total × dim n`, an injective homomorphism onto an ideal.
    pub inclusion: Matrix,
    /// `dim g × dim total`, a surjective homomorphism with kernel `im inclusion`.
    pub projection: Matrix,
    /// `dim total × dim g`, the pivot-convention right inverse of `projection`.
    pub section: Matrix,
    pub provenance: Option<FactorSystem>,
}

impl ExtensionPresentation {
    /// Checks exactness and that both maps preserve brackets.
    pub fn new(
        total: Arc<LieAlgebra>,
        n: Arc<LieAlgebra>,
        g: Arc<LieAlgebra>,
        inclusion: Matrix,
        projection: Matrix,
    ) -> Result<Self> {
        let d = total.dim();
        if inclusion.rows() != d
            || inclusion.cols() != n.dim()
            || projection.rows() != g.dim()
            || projection.cols() != d
        {
            return Err(Error::DimensionMismatch(
                "inclusion and projection do not match n → total → g".into(),
            ));
        }
        if n.dim() + g.dim() != d || inclusion.rank() != n.dim() || projection.rank() != g.dim() {
            return Err(Error::InvariantViolation(vec!["sequence is not exact".into()]));
        }
        if !projection.mul(&inclusion).is_zero() {
            return Err(Error::InvariantViolation(vec![
                "projection does not kill the ideal".into()
            ]));
        }
        if let Some((i, j)) = map_homomorphism_violation(&n, &total, &inclusion) {
            return Err(Error::NotAHomomorphism(i, j));
        }
        if let Some((i, j)) = map_homomorphism_violation(&total, &g, &projection) {
            return Err(Error::NotAHomomorphism(i, j));
        }
        let section = projection.right_inverse().expect("surjective");
        Ok(ExtensionPresentation {
            total,
            n,
            g,
            inclusion,
            projection,
            section,
            provenance: None,
        })
    }

    pub fn ideal(&self) -> Subspace {
        Subspace::from_spanning(
            self.total.dim(),
            (0..self.n.dim()).map(|a| self.inclusion.column(a)).collect(),
        )
    }

    /// The factor system of the canonical section.
    pub fn factor_system(&self) -> Result<FactorSystem> {
        extract_factor_system(self, &self.section)
    }

    /// The extension `n → total → g` re-presented with inclusion `ι∘α⁻¹` and
    /// projection `β∘q`.
    pub fn transported(&self, alpha: &Matrix, beta: &Matrix) -> Result<ExtensionPresentation> {
        let alpha_inv = alpha
            .inverse()
            .ok_or_else(|| Error::InvariantViolation(vec!["alpha is singular".into()]))?;
        ExtensionPresentation::new(
            self.total.clone(),
            self.n.clone(),
            self.g.clone(),
            self.inclusion.mul(&alpha_inv),
            beta.mul(&self.projection),
        )
    }
}

/// `n ×_{(S,ω)} g` with bracket
/// `[(n,x),(n',x')] = ([n,n'] + S(x)n' − S(x')n + ω(x,x'), [x,x'])`.
pub fn build_extension(fs: &FactorSystem) -> Result<ExtensionPresentation> {
    fs.validate()?;
    let labels = fs.n.labels().iter().chain(fs.g.labels()).cloned().collect();
    let total = LieAlgebra::from_table(labels, fs.table())?;
    let (dn, dg) = (fs.n.dim(), fs.g.dim());
    let inclusion = Matrix::identity(dn).vstack(&Matrix::zeros(dg, dn));
    let projection = Matrix::zeros(dg, dn).hstack(&Matrix::identity(dg));
    let section = projection.transpose();
    Ok(ExtensionPresentation {
        total: Arc::new(total),
        n: fs.n.clone(),
        g: fs.g.clone(),
        inclusion,
        projection,
        section,
        provenance: Some(fs.clone()),
    })
}

/// `S(x) = ad(σ(x))|_n` and `ω(x, y) = [σx, σy] − σ[x, y]` pulled back to `n`.
pub fn extract_factor_system(ext: &ExtensionPresentation, sigma: &Matrix) -> Result<FactorSystem> {
    let (dg, dt) = (ext.g.dim(), ext.total.dim());
    if sigma.rows() != dt || sigma.cols() != dg || ext.projection.mul(sigma) != Matrix::identity(dg) {
        return Err(Error::NotASection);
    }
    let iota_inv = ext.inclusion.left_inverse().expect("inclusion is injective");
    let lifts: Vec<Vector> = (0..dg).map(|x| sigma.column(x)).collect();
    let matrices = lifts
        .iter()
        .map(|l| iota_inv.mul(&ext.total.ad(l)).mul(&ext.inclusion))
        .collect();
    let s = OuterActionMap::new(ext.n.dim(), matrices)?;
    let omega = Cochain::from_fn(dg, 2, ext.n.dim(), |t| {
        let r = sub_vectors(
            &ext.total.bracket(&lifts[t[0]], &lifts[t[1]]),
            &sigma.mul_vec(ext.g.bracket_basis(t[0], t[1])),
        );
        iota_inv.mul_vec(&r)
    });
    FactorSystem::new(ext.n.clone(), ext.g.clone(), s, omega)
}

/// Outcome of an equivalence search between two factor systems.
#[derive(Clone, Debug)]
pub enum Equivalence {
    /// `fs1 = γ.fs2`; `map` is `(n, x) ↦ (n + γ(x), x)` from the extension of
    /// `fs1` to that of `fs2`, verified to preserve brackets.
    Equivalent { gamma: Cochain, map: Matrix },
    /// No `γ` exists; `stage` names the system that is infeasible.
    Inequivalent {
        stage: &'static str,
        certificate: InconsistencyCertificate,
    },
}

impl Equivalence {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Equivalence::Equivalent { .. })
    }

    pub fn gamma(&self) -> Option<&Cochain> {
        match self {
            Equivalence::Equivalent { gamma, .. } => Some(gamma),
            Equivalence::Inequivalent { .. } => None,
        }
    }
}

/// `[[α, Γβ], [0, β]]` on `n ⊕ g`, the map `(n, x) ↦ (α n + γ(β x), β x)`.
pub fn assemble_map(alpha: &Matrix, beta: &Matrix, gamma: &Cochain) -> Matrix {
    let (dn, dg) = (alpha.rows(), beta.rows());
    alpha
        .hstack(&gamma.to_matrix().mul(beta))
        .vstack(&Matrix::zeros(dg, dn).hstack(beta))
}

/// `γ` with `S1 = S2 + ad∘γ`, pivot convention.
pub fn outer_action_gauge(n: &LieAlgebra, s1: &OuterActionMap, s2: &OuterActionMap) -> AffineCochains {
    let target = s1.sub(s2).as_cochain();
    let dn = n.dim();
    solve_cochains(s1.g_dim(), 1, dn, target.flat().len(), |gamma| {
        sub_vectors(ad_compose(n, gamma).flat(), target.flat())
    })
}

/// Decides whether `fs1` and `fs2` present equivalent extensions, and if so
/// returns `γ` with `fs1 = γ.fs2`.
pub fn equivalent_extensions(fs1: &FactorSystem, fs2: &FactorSystem) -> Result<Equivalence> {
    if fs1.n != fs2.n || fs1.g != fs2.g {
        return Err(Error::DimensionMismatch(
            "factor systems for different pairs (g, n)".into(),
        ));
    }
    let (g, n) = (&fs1.g, &fs1.n);
    let gamma0 = match outer_action_gauge(n, &fs1.s, &fs2.s) {
        AffineCochains::Solved { particular, .. } => particular,
        AffineCochains::Empty(certificate) => {
            return Ok(Equivalence::Inequivalent {
                stage: "outer action",
                certificate,
            })
        }
    };
    let moved = fs2.gauge(&gamma0)?;
    debug_assert_eq!(moved.s, fs1.s);
    let zm = fs1.center_module()?;
    let target = fs1.omega.sub(&moved.omega);
    let beta = solve_cochains(g.dim(), 1, zm.dim(), target.flat().len(), |b| {
        let bn = zm.to_ambient(b);
        sub_vectors(
            covariant_differential(g, &fs1.s, &bn).expect("shapes agree").flat(),
            target.flat(),
        )
    });
    let beta = match beta {
        AffineCochains::Solved { particular, .. } => zm.to_ambient(&particular),
        AffineCochains::Empty(certificate) => {
            return Ok(Equivalence::Inequivalent {
                stage: "central correction",
                certificate,
            })
        }
    };
    let gamma = gamma0.add(&beta);
    debug_assert_eq!(&fs2.gauge(&gamma)?, fs1);
    let map = assemble_map(&Matrix::identity(n.dim()), &Matrix::identity(g.dim()), &gamma);
    let (e1, e2) = (build_extension(fs1)?, build_extension(fs2)?);
    if let Some((i, j)) = map_homomorphism_violation(&e1.total, &e2.total, &map) {
        return Err(Error::InvariantViolation(vec![format!(
            "equivalence map fails to preserve the bracket on ({i}, {j})"
        )]));
    }
    Ok(Equivalence::Equivalent { gamma, map })
}

/// An equivalence `Φ: total1 → total2` with `Φ∘ι1 = ι2` and `q2∘Φ = q1`, or
/// `None`.
pub fn extensions_equivalent(e1: &ExtensionPresentation, e2: &ExtensionPresentation) -> Result<Option<Matrix>> {
    let (fs1, fs2) = (e1.factor_system()?, e2.factor_system()?);
    let gamma = match equivalent_extensions(&fs1, &fs2)? {
        Equivalence::Equivalent { gamma, .. } => gamma,
        Equivalence::Inequivalent { .. } => return Ok(None),
    };
    let dt = e1.total.dim();
    let q1 = &e1.projection;
    let iota1_inv = e1.inclusion.left_inverse().expect("injective");
    let nn = iota1_inv.mul(&Matrix::identity(dt).sub(&e1.section.mul(q1)));
    let phi = e2
        .inclusion
        .mul(&nn.add(&gamma.to_matrix().mul(q1)))
        .add(&e2.section.mul(q1));
    let ok = map_homomorphism_violation(&e1.total, &e2.total, &phi).is_none()
        && phi.mul(&e1.inclusion) == e2.inclusion
        && e2.projection.mul(&phi) == *q1;
    if !ok {
        return Err(Error::InvariantViolation(vec![
            "assembled equivalence fails verification".into(),
        ]));
    }
    Ok(Some(phi))
}

/// `((α,β).S)(x) = α S(β⁻¹x) α⁻¹`.
pub fn transform_outer_action(
    alpha: &Matrix,
    alpha_inv: &Matrix,
    beta_inv: &Matrix,
    s: &OuterActionMap,
) -> OuterActionMap {
    let matrices = (0..s.g_dim())
        .map(|x| alpha.mul(&s.act(&beta_inv.column(x))).mul(alpha_inv))
        .collect();
    OuterActionMap::new(s.dim(), matrices).expect("square")
}

/// `(α,β).ω = α∘ω∘(β⁻¹ × β⁻¹)`.
pub fn transform_omega(alpha: &Matrix, beta_inv: &Matrix, omega: &Cochain) -> Cochain {
    omega.pullback(beta_inv).map_values(alpha)
}

/// Report of the two conditions for `(α, β, γ)` to give an isomorphism
/// `n ×_{fs1} g → n ×_{fs2} g`, `(n, x) ↦ (α(n) + γ(β(x)), β(x))`.
#[derive(Clone, Debug)]
pub struct EquivalenceMapCheck {
    pub outer_action_condition: bool,
    pub omega_condition: bool,
    /// Whether the assembled map preserves brackets, with a failing pair.
    pub bracket_violation: Option<(usize, usize)>,
    pub map: Matrix,
}

impl EquivalenceMapCheck {
    pub fn holds(&self) -> bool {
        self.outer_action_condition && self.omega_condition
    }
}

pub fn check_equivalence_map(
    alpha: &Matrix,
    beta: &Matrix,
    gamma: &Cochain,
    fs1: &FactorSystem,
    fs2: &FactorSystem,
) -> Result<EquivalenceMapCheck> {
    let (n, g) = (&fs1.n, &fs1.g);
    let alpha_inv = alpha
        .inverse()
        .ok_or_else(|| Error::InvariantViolation(vec!["alpha is singular".into()]))?;
    let beta_inv = beta
        .inverse()
        .ok_or_else(|| Error::InvariantViolation(vec!["beta is singular".into()]))?;
    if map_homomorphism_violation(n, &fs2.n, alpha).is_some() || map_homomorphism_violation(g, &fs2.g, beta).is_some() {
        return Err(Error::InvariantViolation(vec![
            "alpha and beta must preserve brackets".into()
        ]));
    }
    let moved_s = transform_outer_action(alpha, &alpha_inv, &beta_inv, &fs1.s);
    let moved_omega = transform_omega(alpha, &beta_inv, &fs1.omega);
    let target = fs2.gauge(gamma)?;
    let map = assemble_map(alpha, beta, gamma);
    let e1 = build_extension(fs1)?;
    let e2 = build_extension(fs2)?;
    Ok(EquivalenceMapCheck {
        outer_action_condition: moved_s == target.s,
        omega_condition: moved_omega == target.omega,
        bracket_violation: map_homomorphism_violation(&e1.total, &e2.total, &map),
        map,
    })
}

/// An outer action `S` together with a stored `ω` satisfying `R_S = ad∘ω`.
#[derive(Clone, Debug)]
pub struct GKernel {
    g: Arc<LieAlgebra>,
    n: Arc<LieAlgebra>,
    s: OuterActionMap,
    omega: Cochain,
}

impl GKernel {
    /// # Errors
    /// `NoLift` when `R_S` is not of the form `ad∘ω`, `InvariantViolation`
    /// when some `S(x)` is not a derivation.
    pub fn new(g: Arc<LieAlgebra>, n: Arc<LieAlgebra>, s: OuterActionMap) -> Result<Self> {
        if s.dim() != n.dim() || s.g_dim() != g.dim() {
            return Err(Error::DimensionMismatch("S must map g into End(n)".into()));
        }
        if let Some(x) = s.non_derivation(&n) {
            return Err(Error::InvariantViolation(vec![format!("S(e{x}) is not a derivation")]));
        }
        let omega =
            curvature_lift(&g, &n, &s).ok_or_else(|| Error::NoLift("R_S does not take values in ad n".into()))?;
        Ok(GKernel { g, n, s, omega })
    }

    /// Uses a caller-supplied lift `ω`, which must satisfy `R_S = ad∘ω`.
    pub fn with_lift(g: Arc<LieAlgebra>, n: Arc<LieAlgebra>, s: OuterActionMap, omega: Cochain) -> Result<Self> {
        let k = GKernel::new(g, n, s)?;
        if ad_compose(&k.n, &omega) != curvature(&k.g, &k.s) {
            return Err(Error::NoLift("supplied omega does not lift R_S".into()));
        }
        Ok(GKernel { omega, ..k })
    }

    pub fn g(&self) -> &Arc<LieAlgebra> {
        &self.g
    }

    pub fn n(&self) -> &Arc<LieAlgebra> {
        &self.n
    }

    pub fn s(&self) -> &OuterActionMap {
        &self.s
    }

    pub fn omega(&self) -> &Cochain {
        &self.omega
    }

    pub fn center_module(&self) -> Result<CenterModule> {
        CenterModule::new(&self.g, &self.n, &self.s)
    }

    /// `S + ad∘γ` with the correspondingly moved lift.
    pub fn gauge(&self, gamma: &Cochain) -> Result<GKernel> {
        let (s, omega) = gauge_action(&self.g, &self.n, gamma, &self.s, &self.omega)?;
        Ok(GKernel {
            s,
            omega,
            ..self.clone()
        })
    }

    /// True iff `S − S' = ad∘γ` is solvable.
    pub fn equivalent(&self, other: &GKernel) -> bool {
        self.n == other.n && self.g == other.g && !outer_action_gauge(&self.n, &self.s, &other.s).is_empty()
    }
}

/// `χ(S) = [d_S ω] ∈ H³(g, z(n))_S`.
pub fn obstruction_class(k: &GKernel) -> Result<CohomologyClass> {
    let zm = k.center_module()?;
    let d = covariant_differential(&k.g, &k.s, &k.omega)?;
    let dz = zm
        .to_center(&d)
        .ok_or_else(|| Error::InvariantViolation(vec!["d_S omega is not z(n)-valued".into()]))?;
    let space = Arc::new(cohomology(&zm.rep, 3)?);
    CohomologyClass::new(space, dz)
}

/// `Ext(g, n)_[S]` as a base point plus translations spanning `H²(g, z(n))_S`.
#[derive(Clone, Debug)]
pub struct Classification {
    pub base: FactorSystem,
    /// `n`-valued cocycles whose classes form a basis of `H²(g, z(n))_S`.
    pub translations: Vec<Cochain>,
    pub h2: Arc<CohomologySpace>,
}

impl Classification {
    /// The base point followed by the base point shifted by each translation.
    pub fn representatives(&self) -> Vec<FactorSystem> {
        let mut out = vec![self.base.clone()];
        for t in &self.translations {
            out.push(
                self.base
                    .with_omega(self.base.omega.add(t))
                    .expect("translation by a relative cocycle"),
            );
        }
        out
    }
}

/// # Errors
/// `Obstructed` carrying `χ(S)` when it is nonzero.
pub fn classify_extensions(k: &GKernel) -> Result<Classification> {
    let chi = obstruction_class(k)?;
    if !chi.is_zero() {
        return Err(Error::Obstructed(Box::new(chi)));
    }
    let omega0 = match relative_cocycles(&k.g, &k.n, &k.s) {
        AffineCochains::Solved { particular, .. } => particular,
        AffineCochains::Empty(_) => {
            return Err(Error::InvariantViolation(vec![
                "vanishing obstruction but no factor system".into(),
            ]))
        }
    };
    let base = FactorSystem::new(k.n.clone(), k.g.clone(), k.s.clone(), omega0)?;
    let zm = k.center_module()?;
    let h2 = Arc::new(cohomology(&zm.rep, 2)?);
    let translations = h2.class_basis().iter().map(|c| zm.to_ambient(c)).collect();
    Ok(Classification { base, translations, h2 })
}

/// The algebra `g^S = n_ad ×_{(S₁, R_S)} g` with its module structure on `n`.
#[derive(Clone, Debug)]
pub struct GS {
    pub kernel: GKernel,
    /// `n_ad = n / z(n)`.
    pub n_ad: Quotient,
    /// `g^S` as an extension of `g` by `n_ad`; `total` is `g^S`.
    pub presentation: ExtensionPresentation,
    /// `ρ(u, x) = ad(s u) + S(x)` on `n`.
    pub rho: Representation,
    /// `α(v) = (π v, 0)`, a `dim g^S × dim n` matrix.
    pub alpha: Matrix,
}

impl GS {
    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.presentation.total
    }

    /// `q_S: g^S → g`.
    pub fn q(&self) -> &Matrix {
        &self.presentation.projection
    }

    /// Whether `x ↦ (ρ(x), q_S(x))` is injective.
    pub fn psi_is_injective(&self) -> bool {
        let d = self.algebra().dim();
        let dn = self.kernel.n.dim();
        let columns: Vec<Vector> = (0..d)
            .map(|i| {
                let mut c = self.rho.action()[i].flatten();
                c.extend(self.q().column(i));
                c
            })
            .collect();
        Matrix::from_columns(&columns, dn * dn + self.kernel.g.dim()).rank() == d
    }
}

pub fn build_gs(k: &GKernel) -> Result<GS> {
    let n = &k.n;
    let n_ad = quotient_algebra(n, &center(n))?;
    let (pi, sec) = (&n_ad.projection, &n_ad.section);
    let s1 = OuterActionMap::new(
        n_ad.algebra.dim(),
        k.s.matrices().iter().map(|m| pi.mul(m).mul(sec)).collect(),
    )?;
    let omega1 = k.omega.map_values(pi);
    let fs1 = FactorSystem::new(n_ad.algebra.clone(), k.g.clone(), s1, omega1)?;
    let mut presentation = build_extension(&fs1)?;
    let labels = n_ad
        .algebra
        .labels()
        .iter()
        .map(|l| format!("ad_{l}"))
        .chain(k.g.labels().iter().cloned())
        .collect();
    presentation.total = Arc::new(presentation.total.as_ref().clone().with_labels(labels));
    let gs = presentation.total.clone();
    let mut action: Vec<Matrix> = (0..n_ad.algebra.dim()).map(|u| n.ad(&sec.column(u))).collect();
    action.extend(k.s.matrices().iter().cloned());
    let rho = Representation::new(gs.clone(), n.dim(), action)?;
    let alpha = pi.vstack(&Matrix::zeros(k.g.dim(), n.dim()));
    Ok(GS {
        kernel: k.clone(),
        n_ad,
        presentation,
        rho,
        alpha,
    })
}

/// Pull-back of a factor system along `φ: h → g`.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub factor_system: FactorSystem,
    pub presentation: ExtensionPresentation,
    /// For abelian `n`: whether `[φ*ω]` vanishes in `H²(h, n)_{S∘φ}`.
    pub class_vanishes: Option<bool>,
    /// For abelian `n` with vanishing class: a homomorphism `h → total`
    /// lifting `φ`, namely `x ↦ (−β(x), φ(x))` with `d β = φ*ω`.
    pub lift: Option<Matrix>,
}

pub fn pullback_extension(fs: &FactorSystem, h: Arc<LieAlgebra>, phi: &Matrix) -> Result<Pullback> {
    if phi.rows() != fs.g.dim() || phi.cols() != h.dim() {
        return Err(Error::DimensionMismatch("phi must map h into g".into()));
    }
    if let Some((i, j)) = map_homomorphism_violation(&h, &fs.g, phi) {
        return Err(Error::NotAHomomorphism(i, j));
    }
    let s = OuterActionMap::new(fs.n.dim(), (0..h.dim()).map(|x| fs.s.act(&phi.column(x))).collect())?;
    let omega = fs.omega.pullback(phi);
    let pulled = FactorSystem::new(fs.n.clone(), h.clone(), s, omega)?;
    let presentation = build_extension(&pulled)?;
    let (mut class_vanishes, mut lift) = (None, None);
    if fs.n.is_abelian() {
        let hp = &pulled;
        let beta = solve_cochains(h.dim(), 1, fs.n.dim(), hp.omega.flat().len(), |b| {
            sub_vectors(
                covariant_differential(&h, &hp.s, b).expect("shapes agree").flat(),
                hp.omega.flat(),
            )
        });
        class_vanishes = Some(!beta.is_empty());
        if let Some(b) = beta.particular() {
            let l = b.to_matrix().scale(&Scalar::from_int(-1)).vstack(phi);
            let target = build_extension(fs)?;
            if map_homomorphism_violation(&h, &target.total, &l).is_some() {
                return Err(Error::InvariantViolation(vec![
                    "assembled lift is not a homomorphism".into()
                ]));
            }
            lift = Some(l);
        }
    }
    Ok(Pullback {
        factor_system: pulled,
        presentation,
        class_vanishes,
        lift,
    })
}

/// `[γ, γ]` for an `n`-valued 1-cochain, exposed for reports.
pub fn half_square(n: &LieAlgebra, gamma: &Cochain) -> Result<Cochain> {
    Ok(superbracket(n, gamma, gamma)?.scale(&Scalar::frac(1, 2)))
}

/// Data produced by [`reduce_via_gs`].
#[derive(Clone, Debug)]
pub struct Reduction {
    pub gs: GS,
    pub splitting: crate::crossed::CrossedModuleSplitting,
    /// `f̃ ∈ Z²(g^S, z(n))` extending `θ`, in `z(n)`-coordinates.
    pub f_tilde: Cochain,
    /// Homogeneous directions of the affine space of such `f̃`.
    pub directions: Vec<Cochain>,
    pub original: ExtensionPresentation,
    /// `z(n) ⊕_{f̃} g^S` presented as an extension of `g` by `n`.
    pub rebuilt: ExtensionPresentation,
    /// An equivalence from `rebuilt` to `original`.
    pub witness: Matrix,
}

impl Reduction {
    /// `z(n) ⊕_{f̃} g^S` with inclusion `v ↦ (p_z v, α v)` and projection
    /// `(z, w) ↦ q_S w`.
    pub fn rebuild(&self, f_tilde: &Cochain) -> Result<ExtensionPresentation> {
        let sp = &self.splitting;
        let zd = sp.z.dim();
        let fs = FactorSystem::new(
            Arc::new(LieAlgebra::abelian(zd)),
            self.gs.algebra().clone(),
            OuterActionMap::from_representation(&sp.z_rep_hat),
            f_tilde.clone(),
        )?;
        let total = build_extension(&fs)?.total;
        let inclusion = sp.p_z_matrix().vstack(&self.gs.alpha);
        let projection = Matrix::zeros(self.gs.kernel.g.dim(), zd).hstack(self.gs.q());
        ExtensionPresentation::new(
            total,
            self.gs.kernel.n.clone(),
            self.gs.kernel.g.clone(),
            inclusion,
            projection,
        )
    }

    /// `f̃ + q_S*β` for a `z(n)`-valued 2-cochain `β` on `g`.
    pub fn translate(&self, beta: &Cochain) -> Cochain {
        self.f_tilde.add(&beta.pullback(self.gs.q()))
    }
}

/// The cocycle of `z(n) → ĝ → g^S`, `(n, x) ↦ (π n, x)`, for the section
/// `(u, x) ↦ (t u, x)`; checked to lie in the affine space `particular +
/// span(directions)`.
fn abelian_cocycle_over_gs(
    fs: &FactorSystem,
    gs: &GS,
    sp: &crate::crossed::CrossedModuleSplitting,
    ghat: &ExtensionPresentation,
    particular: &Cochain,
    directions: &[Cochain],
) -> Result<Cochain> {
    let (dn, dg) = (fs.n.dim(), fs.g.dim());
    let da = gs.n_ad.algebra.dim();
    let lift =
        sp.t.hstack(&Matrix::zeros(dn, dg))
            .vstack(&Matrix::zeros(dg, da).hstack(&Matrix::identity(dg)));
    let gsa = gs.algebra();
    let f = Cochain::from_fn(gsa.dim(), 2, sp.z.dim(), |t| {
        let (a, b) = (lift.column(t[0]), lift.column(t[1]));
        let r = sub_vectors(
            &ghat.total.bracket(&a, &b),
            &lift.mul_vec(gsa.bracket_basis(t[0], t[1])),
        );
        let (nv, rest) = r.split_at(dn);
        debug_assert!(rest.iter().all(|c| c.is_zero()));
        sp.z.coordinates(nv).expect("defect of the lift is central")
    });
    let offset = f.sub(particular);
    let span = Subspace::from_spanning(
        offset.flat().len(),
        directions.iter().map(|d| d.flat().to_vec()).collect(),
    );
    if !span.contains(offset.flat()) {
        return Err(Error::InvariantViolation(vec![
            "cocycle of the extension does not extend theta".into(),
        ]));
    }
    Ok(f)
}

/// Rewrites the extension of `fs` as `z(n) ⊕_{f̃} g^S` and verifies the
/// equivalence.
///
/// # Errors
/// `Obstructed` if no `f̃` extends `θ`, which cannot happen for a valid
/// factor system.
pub fn reduce_via_gs(fs: &FactorSystem) -> Result<Reduction> {
    fs.validate()?;
    let gs = build_gs(&fs.kernel())?;
    let cm = crate::crossed::CrossedModule::from_gs(&gs)?;
    let splitting = crate::crossed::split_crossed_module(&cm)?;
    let (f_tilde, directions) = match crate::cohomology::theta_constrained_cocycles(
        gs.algebra(),
        &splitting.n,
        &splitting.z_rep_hat,
        &splitting.theta,
    )? {
        AffineCochains::Solved { particular, directions } => (particular, directions),
        AffineCochains::Empty(_) => return Err(Error::Obstructed(Box::new(obstruction_class(&fs.kernel())?))),
    };
    let original = build_extension(fs)?;
    let f_tilde = abelian_cocycle_over_gs(fs, &gs, &splitting, &original, &f_tilde, &directions)?;
    let mut reduction = Reduction {
        gs,
        splitting,
        f_tilde,
        directions,
        original,
        rebuilt: build_extension(fs)?,
        witness: Matrix::zeros(0, 0),
    };
    reduction.rebuilt = reduction.rebuild(&reduction.f_tilde)?;
    reduction.witness = extensions_equivalent(&reduction.rebuilt, &reduction.original)?
        .ok_or_else(|| Error::InvariantViolation(vec!["rebuilt extension is not equivalent".into()]))?;
    Ok(reduction)
}

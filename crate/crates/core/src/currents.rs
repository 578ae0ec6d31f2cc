//! Polynomial current algebras `k[t] ⊗ g`, invariant forms, and the
//! cyclic 2-cocycle `ω̃(a⊗x, b⊗y) = ½ I(a D(b) − b D(a)) κ(x, y)` with
//! `D = d/dt`, `I = ∫₀¹`, `χ = ev₁`.

use std::ops::{Add, Mul, Sub};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cochain::{trivial_differential, Cochain};
use crate::cohomology::{cohomology, CohomologyClass};
use crate::error::{Error, Result};
use crate::lie::{LieAlgebra, Representation};
use crate::linalg::{Matrix, Vector};
use crate::scalar::Scalar;

/// Default bound on the degree of polynomial inputs.
pub const MAX_DEGREE: usize = 32;

/// A polynomial in `k[t]`, coefficients indexed by degree, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Polynomial {
    coefficients: Vec<Scalar>,
}

impl Polynomial {
    pub fn new(mut coefficients: Vec<Scalar>) -> Self {
        while coefficients.last().is_some_and(Scalar::is_zero) {
            coefficients.pop();
        }
        Polynomial { coefficients }
    }

    /// Like [`Polynomial::new`] but rejects degrees above `bound`.
    pub fn bounded(coefficients: Vec<Scalar>, bound: usize) -> Result<Self> {
        let p = Polynomial::new(coefficients);
        match p.degree() {
            Some(d) if d > bound => Err(Error::DimensionMismatch(format!(
                "polynomial degree {d} exceeds {bound}"
            ))),
            _ => Ok(p),
        }
    }

    pub fn from_ints(coefficients: &[i64]) -> Self {
        Polynomial::new(coefficients.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn constant(c: Scalar) -> Self {
        Polynomial::new(vec![c])
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn coefficients(&self) -> &[Scalar] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn constant_term(&self) -> Scalar {
        self.coefficients.first().cloned().unwrap_or_default()
    }

    pub fn eval(&self, t: &Scalar) -> Scalar {
        self.coefficients
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, c| &(&acc * t) + c)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Polynomial::new(self.coefficients.iter().map(|a| a * c).collect())
    }

    /// `D = d/dt`.
    pub fn derivative(&self) -> Self {
        Polynomial::new(
            self.coefficients
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &Scalar::from_int(k as i64))
                .collect(),
        )
    }

    /// `I(f) = ∫₀¹ f(t) dt`.
    pub fn integral(&self) -> Scalar {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(k, c)| c / &Scalar::from_int(k as i64 + 1))
            .sum()
    }

    /// `χ(f) = f(1)`.
    pub fn chi(&self) -> Scalar {
        self.coefficients.iter().sum()
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, other: &Polynomial) -> Polynomial {
        let n = self.coefficients.len().max(other.coefficients.len());
        let zero = Scalar::zero();
        Polynomial::new(
            (0..n)
                .map(|k| self.coefficients.get(k).unwrap_or(&zero) + other.coefficients.get(k).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, other: &Polynomial) -> Polynomial {
        self + &other.scale(&Scalar::from_int(-1))
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Scalar::zero(); self.coefficients.len() + other.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in other.coefficients.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

/// A symmetric invariant bilinear form on a Lie algebra.
#[derive(Clone, Debug)]
pub struct InvariantForm {
    algebra: Arc<LieAlgebra>,
    gram: Matrix,
}

impl InvariantForm {
    /// # Errors
    /// `InvariantViolation` listing every asymmetric pair and every basis
    /// triple where `κ([x,y],z) + κ(y,[x,z]) ≠ 0`.
    pub fn new(algebra: Arc<LieAlgebra>, gram: Matrix) -> Result<Self> {
        let d = algebra.dim();
        if gram.rows() != d || gram.cols() != d {
            return Err(Error::DimensionMismatch(format!("gram matrix must be {d}×{d}")));
        }
        let mut violations = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                if gram[(i, j)] != gram[(j, i)] {
                    violations.push(format!("not symmetric at ({i}, {j})"));
                }
            }
        }
        let form = InvariantForm { algebra, gram };
        for x in 0..d {
            for y in 0..d {
                for z in 0..d {
                    let ex = form.algebra.basis_vector(x);
                    let (ey, ez) = (form.algebra.basis_vector(y), form.algebra.basis_vector(z));
                    let lhs = &form.eval(&form.algebra.bracket(&ex, &ey), &ez)
                        + &form.eval(&ey, &form.algebra.bracket(&ex, &ez));
                    if !lhs.is_zero() {
                        violations.push(format!("not invariant on ({x}, {y}, {z})"));
                    }
                }
            }
        }
        if violations.is_empty() {
            Ok(form)
        } else {
            Err(Error::InvariantViolation(violations))
        }
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        x.iter().zip(self.gram.mul_vec(y)).map(|(a, b)| a * &b).sum()
    }
}

/// `κ(x, y) = tr(ad x ∘ ad y)`.
pub fn killing_form(algebra: Arc<LieAlgebra>) -> InvariantForm {
    let d = algebra.dim();
    let ads: Vec<Matrix> = (0..d).map(|i| algebra.ad_basis(i)).collect();
    let gram = Matrix::from_fn(d, d, |i, j| ads[i].mul(&ads[j]).trace());
    InvariantForm::new(algebra, gram).expect("the Killing form is invariant")
}

/// An element `Σ_k p_k ⊗ e_k` of `k[t] ⊗ g`.
pub type CurrentElement = Vec<Polynomial>;

/// `a ⊗ x`.
pub fn pure_tensor(a: &Polynomial, x: &[Scalar]) -> CurrentElement {
    x.iter().map(|c| a.scale(c)).collect()
}

/// `[Σ p_i⊗e_i, Σ q_j⊗e_j] = Σ p_i q_j ⊗ [e_i, e_j]`.
pub fn current_bracket(g: &LieAlgebra, u: &CurrentElement, v: &CurrentElement) -> CurrentElement {
    let mut out = vec![Polynomial::zero(); g.dim()];
    for (i, p) in u.iter().enumerate() {
        for (j, q) in v.iter().enumerate() {
            if p.is_zero() || q.is_zero() || i == j {
                continue;
            }
            let pq = p * q;
            for (k, c) in g.bracket(&g.basis_vector(i), &g.basis_vector(j)).iter().enumerate() {
                if !c.is_zero() {
                    out[k] = &out[k] + &pq.scale(c);
                }
            }
        }
    }
    out
}

/// `ω̃(Σ p_i⊗e_i, Σ q_j⊗e_j) = Σ ½ I(p_i D q_j − q_j D p_i) κ(e_i, e_j)`.
pub fn current_cocycle(kappa: &InvariantForm, u: &CurrentElement, v: &CurrentElement) -> Scalar {
    let half = Scalar::frac(1, 2);
    let mut total = Scalar::zero();
    for (i, p) in u.iter().enumerate() {
        for (j, q) in v.iter().enumerate() {
            let k = &kappa.gram()[(i, j)];
            if k.is_zero() || p.is_zero() || q.is_zero() {
                continue;
            }
            let integrand = &(p * &q.derivative()) - &(q * &p.derivative());
            total += &(&half * &integrand.integral()) * k;
        }
    }
    total
}

/// Both sides of the cyclic-cocycle identity for one sample.
#[derive(Clone, Debug)]
pub struct V2Identity {
    /// `(d ω̃)(a⊗x, a′⊗x′, a″⊗x″)` expanded from the definition.
    pub lhs: Scalar,
    /// `½ κ(x″, [x, x′]) I(D(aa′a″))`, the closed form with `χ = I∘D`.
    pub rhs: Scalar,
    /// `½ κ(x″, [x, x′]) χ(aa′a″)` with `χ = ev₁`.
    pub rhs_evaluation: Scalar,
    pub equal: bool,
    /// `aa′a″` has a nonzero constant term, so `I∘D ≠ ev₁` on it and
    /// `rhs_evaluation` differs from `rhs` whenever the bracket term is nonzero.
    pub constant_term_flag: bool,
}

pub fn v2_cocycle_identity(kappa: &InvariantForm, a: [&Polynomial; 3], x: [&[Scalar]; 3]) -> V2Identity {
    let g = kappa.algebra();
    let u: Vec<CurrentElement> = (0..3).map(|i| pure_tensor(a[i], x[i])).collect();
    let term = |i: usize, j: usize, k: usize| current_cocycle(kappa, &current_bracket(g, &u[i], &u[j]), &u[k]);
    let lhs = &(&term(0, 2, 1) - &term(0, 1, 2)) - &term(1, 2, 0);

    let product = &(a[0] * a[1]) * a[2];
    let coefficient = &Scalar::frac(1, 2) * &kappa.eval(x[2], &g.bracket(x[0], x[1]));
    let rhs = &coefficient * &product.derivative().integral();
    let rhs_evaluation = &coefficient * &product.chi();
    V2Identity {
        equal: lhs == rhs,
        lhs,
        rhs,
        rhs_evaluation,
        constant_term_flag: !product.constant_term().is_zero(),
    }
}

/// `I(a D(bc)) + I(b D(ac)) + I(c D(ab))`, which equals `I(D(abc))`.
pub fn cyclic_sum(a: &Polynomial, b: &Polynomial, c: &Polynomial) -> Scalar {
    let t = |p: &Polynomial, q: &Polynomial, r: &Polynomial| (p * &(q * r).derivative()).integral();
    &(&t(a, b, c) + &t(b, a, c)) + &t(c, a, b)
}

/// `η(x, y, z) = ½ κ([x, y], z)` with its closedness and class.
#[derive(Clone, Debug)]
pub struct CharacteristicCocycle {
    pub eta: Cochain,
    pub closed: bool,
    pub class: CohomologyClass,
}

pub fn v2_characteristic_cocycle(kappa: &InvariantForm) -> Result<CharacteristicCocycle> {
    let g = kappa.algebra();
    let d = g.dim();
    let half = Scalar::frac(1, 2);
    let eta = Cochain::from_fn(d, 3, 1, |t| {
        let xy = g.bracket(&g.basis_vector(t[0]), &g.basis_vector(t[1]));
        vec![&half * &kappa.eval(&xy, &g.basis_vector(t[2]))]
    });
    let closed = trivial_differential(g, &eta)?.is_zero();
    let space = Arc::new(cohomology(&Representation::trivial(g.clone(), 1), 3)?);
    let class = CohomologyClass::new(space, eta.clone())?;
    Ok(CharacteristicCocycle { eta, closed, class })
}

/// Summary of a seeded batch of identity checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct V2Report {
    pub identity_samples: usize,
    pub failures: usize,
    /// Samples whose product has zero constant term; on these `rhs_evaluation = rhs`.
    pub vanishing_samples: usize,
    pub vanishing_failures: usize,
    pub cyclic_failures: usize,
    pub eta_closed: bool,
    pub h3_dim: usize,
    pub eta_class_nonzero: bool,
}

pub fn random_polynomial(rng: &mut impl Rng, max_degree: usize) -> Polynomial {
    let deg = rng.gen_range(0..=max_degree);
    Polynomial::new((0..=deg).map(|_| random_scalar(rng)).collect())
}

pub fn random_scalar(rng: &mut impl Rng) -> Scalar {
    Scalar::frac(rng.gen_range(-9..=9), rng.gen_range(1..=4))
}

fn random_vector(rng: &mut impl Rng, d: usize) -> Vector {
    (0..d).map(|_| random_scalar(rng)).collect()
}

/// Runs `samples` random identity checks with polynomials of degree ≤ 5.
pub fn v2_check(kappa: &InvariantForm, samples: usize, seed: u64) -> Result<V2Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = kappa.algebra().dim();
    let mut report = V2Report {
        identity_samples: samples,
        failures: 0,
        vanishing_samples: 0,
        vanishing_failures: 0,
        cyclic_failures: 0,
        eta_closed: false,
        h3_dim: 0,
        eta_class_nonzero: false,
    };
    for _ in 0..samples {
        let a: Vec<Polynomial> = (0..3).map(|_| random_polynomial(&mut rng, 5)).collect();
        let x: Vec<Vector> = (0..3).map(|_| random_vector(&mut rng, d)).collect();
        let r = v2_cocycle_identity(kappa, [&a[0], &a[1], &a[2]], [&x[0], &x[1], &x[2]]);
        if !r.equal {
            report.failures += 1;
        }
        if !r.constant_term_flag {
            report.vanishing_samples += 1;
            if r.lhs != r.rhs_evaluation {
                report.vanishing_failures += 1;
            }
        }
        let p = &a[0];
        let t = Polynomial::from_ints(&[0, 1]);
        let c0 = Polynomial::constant(p.constant_term());
        let slope = &p.chi() - &p.constant_term();
        let ker_chi_zero_at_0 = &(p - &c0) - &t.scale(&slope);
        if !cyclic_sum(&ker_chi_zero_at_0, &a[1], &a[2]).is_zero() {
            report.cyclic_failures += 1;
        }
    }
    let eta = v2_characteristic_cocycle(kappa)?;
    report.eta_closed = eta.closed;
    report.h3_dim = eta.class.space().h_dim();
    report.eta_class_nonzero = !eta.class.is_zero();
    Ok(report)
}

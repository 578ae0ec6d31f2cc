//! Alternating cochains on a Lie algebra and the graded calculus on them:
//! the Chevalley–Eilenberg differential, wedge products along bilinear
//! pairings, the superbracket, covariant differentials, curvature and the
//! gauge action of 1-cochains on pairs `(S, ω)`.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::lie::{combine_matrices, homomorphism_violation, is_derivation, LieAlgebra, Representation};
use crate::linalg::{axpy, is_zero_vector, zero_vector, Matrix, Vector};
use crate::scalar::Scalar;

/// Environment variable overriding [`DEFAULT_DEGREE_CAP`].
pub const DEGREE_CAP_ENV: &str = "LIECOH_DEGREE_CAP";
pub const DEFAULT_DEGREE_CAP: usize = 6;

/// Largest cochain degree accepted from callers. Read once from
/// `LIECOH_DEGREE_CAP`, falling back to 6.
pub fn degree_cap() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var(DEGREE_CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_DEGREE_CAP)
    })
}

pub fn check_degree(degree: usize) -> Result<()> {
    let cap = degree_cap();
    if degree > cap {
        Err(Error::DegreeCapExceeded { degree, cap })
    } else {
        Ok(())
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// All strictly increasing `p`-tuples from `0..n` in lexicographic order.
pub fn tuples(n: usize, p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binomial(n, p));
    let mut cur = Vec::with_capacity(p);
    fn rec(start: usize, n: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        let remaining = p - cur.len();
        for v in start..=n.saturating_sub(remaining) {
            if v >= n {
                break;
            }
            cur.push(v);
            rec(v + 1, n, p, cur, out);
            cur.pop();
        }
    }
    rec(0, n, p, &mut cur, &mut out);
    out
}

/// Lexicographic rank of a strictly increasing tuple among all `p`-subsets
/// of `0..n`.
pub fn tuple_rank(n: usize, t: &[usize]) -> usize {
    let p = t.len();
    let mut rank = 0;
    let mut prev: isize = -1;
    for (i, &c) in t.iter().enumerate() {
        for v in (prev + 1) as usize..c {
            rank += binomial(n - 1 - v, p - 1 - i);
        }
        prev = c as isize;
    }
    rank
}

/// Sorts `args` and returns the permutation sign and the sorted tuple, or
/// `None` when an index repeats.
pub fn sort_with_sign(args: &[usize]) -> Option<(bool, Vec<usize>)> {
    let mut v = args.to_vec();
    let mut negative = false;
    // Insertion sort, counting transpositions.
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            negative = !negative;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((negative, v))
}

/// An alternating `p`-linear map `g^p → k^value_dim`.
///
/// Coefficients are stored for strictly increasing basis tuples in
/// lexicographic order; entry `rank * value_dim + v` holds component `v`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cochain {
    domain_dim: usize,
    degree: usize,
    value_dim: usize,
    coeffs: Vec<Scalar>,
}

impl fmt::Debug for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Cochain(deg {}, dim g {}, values k^{}) {{",
            self.degree, self.domain_dim, self.value_dim
        )?;
        for t in tuples(self.domain_dim, self.degree) {
            let v = self.value(&t);
            if !is_zero_vector(v) {
                let vs: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, " {:?}: [{}]", t, vs.join(", "))?;
            }
        }
        write!(f, " }}")
    }
}

impl Cochain {
    pub fn zero(domain_dim: usize, degree: usize, value_dim: usize) -> Self {
        Cochain {
            domain_dim,
            degree,
            value_dim,
            coeffs: vec![Scalar::zero(); binomial(domain_dim, degree) * value_dim],
        }
    }

    /// Builds a cochain from its coordinate vector.
    pub fn from_flat(domain_dim: usize, degree: usize, value_dim: usize, coeffs: Vector) -> Self {
        assert_eq!(
            coeffs.len(),
            binomial(domain_dim, degree) * value_dim,
            "cochain coordinate length"
        );
        Cochain {
            domain_dim,
            degree,
            value_dim,
            coeffs,
        }
    }

    /// Builds a cochain from its values on increasing basis tuples.
    pub fn from_fn(domain_dim: usize, degree: usize, value_dim: usize, mut f: impl FnMut(&[usize]) -> Vector) -> Self {
        let mut c = Cochain::zero(domain_dim, degree, value_dim);
        for (r, t) in tuples(domain_dim, degree).iter().enumerate() {
            let v = f(t);
            assert_eq!(v.len(), value_dim);
            c.coeffs[r * value_dim..(r + 1) * value_dim].clone_from_slice(&v);
        }
        c
    }

    /// A degree-0 cochain, i.e. a vector.
    pub fn constant(domain_dim: usize, v: Vector) -> Self {
        let m = v.len();
        Cochain::from_flat(domain_dim, 0, m, v)
    }

    /// A degree-1 cochain from its matrix (`value_dim × domain_dim`, column
    /// `i` is the value on `e_i`).
    pub fn from_matrix(m: &Matrix) -> Self {
        Cochain::from_fn(m.cols(), 1, m.rows(), |t| m.column(t[0]))
    }

    /// The matrix of a degree-1 cochain.
    pub fn to_matrix(&self) -> Matrix {
        assert_eq!(self.degree, 1);
        let cols: Vec<Vector> = (0..self.domain_dim).map(|i| self.value(&[i]).to_vec()).collect();
        Matrix::from_columns(&cols, self.value_dim)
    }

    pub fn domain_dim(&self) -> usize {
        self.domain_dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn value_dim(&self) -> usize {
        self.value_dim
    }

    pub fn num_tuples(&self) -> usize {
        binomial(self.domain_dim, self.degree)
    }

    pub fn flat(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn into_flat(self) -> Vector {
        self.coeffs
    }

    /// Value on a strictly increasing basis tuple.
    pub fn value(&self, sorted: &[usize]) -> &[Scalar] {
        let r = tuple_rank(self.domain_dim, sorted);
        &self.coeffs[r * self.value_dim..(r + 1) * self.value_dim]
    }

    pub fn set(&mut self, sorted: &[usize], v: Vector) {
        assert_eq!(v.len(), self.value_dim);
        assert!(
            sorted.windows(2).all(|w| w[0] < w[1]),
            "tuple must be strictly increasing"
        );
        let r = tuple_rank(self.domain_dim, sorted);
        self.coeffs[r * self.value_dim..(r + 1) * self.value_dim].clone_from_slice(&v);
    }

    /// Value on arbitrary basis indices, with the alternation sign applied.
    pub fn eval_basis(&self, args: &[usize]) -> Vector {
        assert_eq!(args.len(), self.degree);
        match sort_with_sign(args) {
            None => zero_vector(self.value_dim),
            Some((negative, sorted)) => {
                let v = self.value(&sorted);
                if negative {
                    v.iter().map(|x| -x).collect()
                } else {
                    v.to_vec()
                }
            }
        }
    }

    /// Multilinear evaluation at arbitrary elements.
    ///
    /// # Errors
    /// `DegreeMismatch` when the argument count differs from the degree.
    pub fn evaluate(&self, args: &[Vector]) -> Result<Vector> {
        if args.len() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: args.len(),
            });
        }
        if let Some(a) = args.iter().find(|a| a.len() != self.domain_dim) {
            return Err(Error::DimensionMismatch(format!(
                "argument of length {} for a {}-dimensional algebra",
                a.len(),
                self.domain_dim
            )));
        }
        let mut out = zero_vector(self.value_dim);
        let mut idx = Vec::with_capacity(self.degree);
        self.expand(args, &mut idx, Scalar::one(), &mut out);
        Ok(out)
    }

    fn expand(&self, args: &[Vector], idx: &mut Vec<usize>, coef: Scalar, out: &mut Vector) {
        let k = idx.len();
        if k == args.len() {
            axpy(out, &coef, &self.eval_basis(idx));
            return;
        }
        for (i, a) in args[k].iter().enumerate() {
            if a.is_zero() || idx.contains(&i) {
                continue;
            }
            idx.push(i);
            self.expand(args, idx, &coef * a, out);
            idx.pop();
        }
    }

    fn same_shape(&self, other: &Cochain) -> bool {
        self.domain_dim == other.domain_dim && self.degree == other.degree && self.value_dim == other.value_dim
    }

    fn with_coeffs(&self, coeffs: Vector) -> Cochain {
        Cochain {
            domain_dim: self.domain_dim,
            degree: self.degree,
            value_dim: self.value_dim,
            coeffs,
        }
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        assert!(self.same_shape(other), "cochain shapes differ");
        self.with_coeffs(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        assert!(self.same_shape(other), "cochain shapes differ");
        self.with_coeffs(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &Scalar) -> Cochain {
        self.with_coeffs(self.coeffs.iter().map(|a| c * a).collect())
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.coeffs)
    }

    /// Post-composition with a linear map `m: k^value_dim → k^r`.
    pub fn map_values(&self, m: &Matrix) -> Cochain {
        assert_eq!(m.cols(), self.value_dim);
        let n = self.num_tuples();
        let mut coeffs = Vec::with_capacity(n * m.rows());
        for r in 0..n {
            coeffs.extend(m.mul_vec(&self.coeffs[r * self.value_dim..(r + 1) * self.value_dim]));
        }
        Cochain {
            domain_dim: self.domain_dim,
            degree: self.degree,
            value_dim: m.rows(),
            coeffs,
        }
    }

    /// Pullback along a linear map `phi: k^d → g` (matrix `dim g × d`).
    pub fn pullback(&self, phi: &Matrix) -> Cochain {
        assert_eq!(phi.rows(), self.domain_dim);
        let images: Vec<Vector> = (0..phi.cols()).map(|i| phi.column(i)).collect();
        Cochain::from_fn(phi.cols(), self.degree, self.value_dim, |t| {
            let args: Vec<Vector> = t.iter().map(|&i| images[i].clone()).collect();
            self.evaluate(&args).expect("degree matches")
        })
    }
}

/// `g` acting on `k^d` through matrices; used where the action is not
/// required to be a representation (covariant differentials).
pub type ActionMatrices<'a> = &'a [Matrix];

/// The Chevalley–Eilenberg-type differential
/// `(d c)(x_0..x_p) = Σ_j (−1)^j x_j.c(..x̂_j..) + Σ_{i<j} (−1)^{i+j} c([x_i,x_j], ..x̂_i..x̂_j..)`
/// where `x.v` is given by `action` (absent means the trivial action).
pub fn differential_with(algebra: &LieAlgebra, action: Option<ActionMatrices>, c: &Cochain) -> Result<Cochain> {
    let n = algebra.dim();
    if c.domain_dim != n {
        return Err(Error::DimensionMismatch(format!(
            "cochain on a {}-dimensional algebra, expected {n}",
            c.domain_dim
        )));
    }
    if let Some(act) = action {
        if act.len() != n || act.iter().any(|m| m.rows() != c.value_dim || m.cols() != c.value_dim) {
            return Err(Error::DimensionMismatch(format!(
                "action matrices do not act on k^{}",
                c.value_dim
            )));
        }
    }
    let p = c.degree;
    let m = c.value_dim;
    let mut out = Cochain::zero(n, p + 1, m);
    let out_tuples = tuples(n, p + 1);
    for (r, t) in out_tuples.iter().enumerate() {
        let mut acc = zero_vector(m);
        if let Some(act) = action {
            for j in 0..=p {
                let rest: Vec<usize> = t.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &x)| x).collect();
                let v = act[t[j]].mul_vec(c.value(&rest));
                axpy(&mut acc, &Scalar::sign(j), &v);
            }
        }
        for a in 0..=p {
            for b in a + 1..=p {
                let br = algebra.bracket_basis(t[a], t[b]);
                let rest: Vec<usize> = t
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != a && i != b)
                    .map(|(_, &x)| x)
                    .collect();
                let sign = Scalar::sign(a + b);
                for (k, ck) in br.iter().enumerate() {
                    if ck.is_zero() || rest.contains(&k) {
                        continue;
                    }
                    let mut args = Vec::with_capacity(p);
                    args.push(k);
                    args.extend(&rest);
                    let v = c.eval_basis(&args);
                    axpy(&mut acc, &(&sign * ck), &v);
                }
            }
        }
        out.coeffs[r * m..(r + 1) * m].clone_from_slice(&acc);
    }
    Ok(out)
}

/// `d_g c` for the module `rep`.
pub fn cochain_differential(rep: &Representation, c: &Cochain) -> Result<Cochain> {
    if rep.space_dim() != c.value_dim {
        return Err(Error::DimensionMismatch(format!(
            "cochain values in k^{}, representation on k^{}",
            c.value_dim,
            rep.space_dim()
        )));
    }
    differential_with(rep.algebra(), Some(rep.action()), c)
}

/// `d_g c` for trivial coefficients.
pub fn trivial_differential(algebra: &LieAlgebra, c: &Cochain) -> Result<Cochain> {
    differential_with(algebra, None, c)
}

/// Matrix of the degree-`p` differential on cochain coordinates.
pub fn differential_matrix(algebra: &LieAlgebra, action: Option<ActionMatrices>, value_dim: usize, p: usize) -> Matrix {
    let n = algebra.dim();
    let m = value_dim;
    let rows = binomial(n, p + 1) * m;
    let cols = binomial(n, p) * m;
    let mut d = Matrix::zeros(rows, cols);
    for (r, t) in tuples(n, p + 1).iter().enumerate() {
        if let Some(act) = action {
            for j in 0..=p {
                let rest: Vec<usize> = t.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &x)| x).collect();
                let s = tuple_rank(n, &rest);
                let sign = Scalar::sign(j);
                for a in 0..m {
                    for b in 0..m {
                        let x = &act[t[j]][(a, b)];
                        if !x.is_zero() {
                            d[(r * m + a, s * m + b)] += &sign * x;
                        }
                    }
                }
            }
        }
        for a in 0..=p {
            for b in a + 1..=p {
                let br = algebra.bracket_basis(t[a], t[b]);
                let rest: Vec<usize> = t
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != a && i != b)
                    .map(|(_, &x)| x)
                    .collect();
                for (k, ck) in br.iter().enumerate() {
                    if ck.is_zero() || rest.contains(&k) {
                        continue;
                    }
                    let mut args = vec![k];
                    args.extend(&rest);
                    let (negative, sorted) = sort_with_sign(&args).expect("distinct indices");
                    let s = tuple_rank(n, &sorted);
                    let mut coef = &Scalar::sign(a + b) * ck;
                    if negative {
                        coef = -coef;
                    }
                    for v in 0..m {
                        d[(r * m + v, s * m + v)] += &coef;
                    }
                }
            }
        }
    }
    d
}

/// A bilinear map `m: k^left × k^right → k^out`, stored sparsely.
///
/// When an equivariance witness is supplied the constructor checks
/// `x.m(u,v) = m(x.u,v) + m(u,x.v)` on basis triples. Without a witness the
/// three modules are understood to be trivial, for which every bilinear map
/// is equivariant.
#[derive(Clone, Debug)]
pub struct EquivariantPairing {
    left_dim: usize,
    right_dim: usize,
    out_dim: usize,
    entries: Vec<(usize, usize, usize, Scalar)>,
    witness: Option<Box<(Representation, Representation, Representation)>>,
}

impl EquivariantPairing {
    /// `tensor(a, b)` is `m(e_a, e_b)`.
    pub fn from_fn(left_dim: usize, right_dim: usize, out_dim: usize, tensor: impl Fn(usize, usize) -> Vector) -> Self {
        let mut entries = Vec::new();
        for a in 0..left_dim {
            for b in 0..right_dim {
                let v = tensor(a, b);
                assert_eq!(v.len(), out_dim);
                for (w, x) in v.into_iter().enumerate() {
                    if !x.is_zero() {
                        entries.push((a, b, w, x));
                    }
                }
            }
        }
        EquivariantPairing {
            left_dim,
            right_dim,
            out_dim,
            entries,
            witness: None,
        }
    }

    /// Attaches and checks the modules the pairing intertwines.
    pub fn with_witness(mut self, left: Representation, right: Representation, out: Representation) -> Result<Self> {
        if left.space_dim() != self.left_dim || right.space_dim() != self.right_dim || out.space_dim() != self.out_dim {
            return Err(Error::DimensionMismatch(
                "witness modules do not match the pairing".into(),
            ));
        }
        let g = left.algebra().dim();
        for x in 0..g {
            for a in 0..self.left_dim {
                for b in 0..self.right_dim {
                    let ea = crate::linalg::unit_vector(self.left_dim, a);
                    let eb = crate::linalg::unit_vector(self.right_dim, b);
                    let lhs = out.action()[x].mul_vec(&self.apply(&ea, &eb));
                    let mut rhs = self.apply(&left.action()[x].mul_vec(&ea), &eb);
                    axpy(
                        &mut rhs,
                        &Scalar::one(),
                        &self.apply(&ea, &right.action()[x].mul_vec(&eb)),
                    );
                    if lhs != rhs {
                        return Err(Error::InvariantViolation(vec![format!(
                            "pairing not equivariant on (x{x}, u{a}, v{b})"
                        )]));
                    }
                }
            }
        }
        self.witness = Some(Box::new((left, right, out)));
        Ok(self)
    }

    pub fn witness(&self) -> Option<&(Representation, Representation, Representation)> {
        self.witness.as_deref()
    }

    pub fn left_dim(&self) -> usize {
        self.left_dim
    }

    pub fn right_dim(&self) -> usize {
        self.right_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn apply(&self, u: &[Scalar], v: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.out_dim);
        for (a, b, w, x) in &self.entries {
            if u[*a].is_zero() || v[*b].is_zero() {
                continue;
            }
            out[*w] += &(x * &u[*a]) * &v[*b];
        }
        out
    }

    /// Multiplication in the field `k`.
    pub fn field() -> Self {
        EquivariantPairing::from_fn(1, 1, 1, |_, _| vec![Scalar::one()])
    }

    /// The bracket of a Lie algebra `V`, equivariant for the adjoint actions.
    pub fn lie_bracket(v: &LieAlgebra) -> Self {
        EquivariantPairing::from_fn(v.dim(), v.dim(), v.dim(), |a, b| v.bracket_basis(a, b).clone())
    }

    /// Evaluation `End(k^d) × k^d → k^d`, endomorphisms flattened row-major.
    pub fn evaluation(d: usize) -> Self {
        EquivariantPairing::from_fn(d * d, d, d, |ij, b| {
            let (i, j) = (ij / d, ij % d);
            let mut v = zero_vector(d);
            if j == b {
                v[i] = Scalar::one();
            }
            v
        })
    }

    /// Composition `End(k^d) × End(k^d) → End(k^d)`.
    pub fn composition(d: usize) -> Self {
        EquivariantPairing::from_fn(d * d, d * d, d * d, |ij, kl| {
            let (i, j, k, l) = (ij / d, ij % d, kl / d, kl % d);
            let mut v = zero_vector(d * d);
            if j == k {
                v[i * d + l] = Scalar::one();
            }
            v
        })
    }

    /// The commutator bracket of `gl(d)`.
    pub fn commutator(d: usize) -> Self {
        EquivariantPairing::from_fn(d * d, d * d, d * d, |ij, kl| {
            let (i, j, k, l) = (ij / d, ij % d, kl / d, kl % d);
            let mut v = zero_vector(d * d);
            if j == k {
                v[i * d + l] += Scalar::one();
            }
            if l == i {
                v[k * d + j] -= Scalar::one();
            }
            v
        })
    }

    /// `m(v, w) = m(w, v)` with the arguments exchanged.
    pub fn swapped(&self) -> Self {
        EquivariantPairing {
            left_dim: self.right_dim,
            right_dim: self.left_dim,
            out_dim: self.out_dim,
            entries: self
                .entries
                .iter()
                .map(|(a, b, w, x)| (*b, *a, *w, x.clone()))
                .collect(),
            witness: None,
        }
    }
}

fn factorial(n: usize) -> Scalar {
    (1..=n as i64).fold(Scalar::one(), |acc, k| acc * Scalar::from_int(k))
}

/// `(a ∧_m b)(x_1..x_{p+q}) = 1/(p!q!) Σ_σ sgn σ · m(a(x_σ1..x_σp), b(x_σ(p+1)..))`.
///
/// Evaluated as the equivalent sum over `(p,q)`-shuffles, which absorbs the
/// factorials.
pub fn wedge(m: &EquivariantPairing, a: &Cochain, b: &Cochain) -> Result<Cochain> {
    if a.domain_dim != b.domain_dim {
        return Err(Error::DimensionMismatch(
            "wedge factors live on different algebras".into(),
        ));
    }
    if a.value_dim != m.left_dim || b.value_dim != m.right_dim {
        return Err(Error::DimensionMismatch(format!(
            "wedge of k^{}- and k^{}-valued cochains through a pairing on k^{} x k^{}",
            a.value_dim, b.value_dim, m.left_dim, m.right_dim
        )));
    }
    let (p, q) = (a.degree, b.degree);
    check_degree(p + q)?;
    let n = a.domain_dim;
    let shuffles: Vec<(Vec<usize>, Vec<usize>, Scalar)> = tuples(p + q, p)
        .into_iter()
        .map(|left| {
            let right: Vec<usize> = (0..p + q).filter(|i| !left.contains(i)).collect();
            let inversions: usize = left.iter().enumerate().map(|(i, &pos)| pos - i).sum();
            (left, right, Scalar::sign(inversions))
        })
        .collect();
    Ok(Cochain::from_fn(n, p + q, m.out_dim, |t| {
        let mut acc = zero_vector(m.out_dim);
        for (left, right, sign) in &shuffles {
            let ta: Vec<usize> = left.iter().map(|&i| t[i]).collect();
            let tb: Vec<usize> = right.iter().map(|&i| t[i]).collect();
            let u = a.value(&ta);
            if is_zero_vector(u) {
                continue;
            }
            let v = b.value(&tb);
            if is_zero_vector(v) {
                continue;
            }
            axpy(&mut acc, sign, &m.apply(u, v));
        }
        acc
    }))
}

/// The wedge product from the defining sum over all permutations, with the
/// `1/(p!q!)` normalization. Slow; kept as an independent check on [`wedge`].
pub fn wedge_by_permutations(m: &EquivariantPairing, a: &Cochain, b: &Cochain) -> Cochain {
    let (p, q) = (a.degree, b.degree);
    let norm = (factorial(p) * factorial(q)).recip();
    let perms = permutations(p + q);
    Cochain::from_fn(a.domain_dim, p + q, m.out_dim, |t| {
        let mut acc = zero_vector(m.out_dim);
        for (perm, negative) in &perms {
            let args: Vec<usize> = perm.iter().map(|&i| t[i]).collect();
            let u = a.eval_basis(&args[..p]);
            let v = b.eval_basis(&args[p..]);
            let sign = if *negative { Scalar::from_int(-1) } else { Scalar::one() };
            axpy(&mut acc, &(&sign * &norm), &m.apply(&u, &v));
        }
        acc
    })
}

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, n: usize, out: &mut Vec<(Vec<usize>, bool)>) {
        if cur.len() == n {
            let (negative, _) = sort_with_sign(cur).expect("permutation");
            out.push((cur.clone(), negative));
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, n, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], n, &mut out);
    out
}

/// `[a, b] = a ∧_{[,]} b` for cochains valued in the Lie algebra `v`.
pub fn superbracket(v: &LieAlgebra, a: &Cochain, b: &Cochain) -> Result<Cochain> {
    if a.value_dim != v.dim() || b.value_dim != v.dim() {
        return Err(Error::DimensionMismatch(
            "superbracket arguments must be valued in V".into(),
        ));
    }
    wedge(&EquivariantPairing::lie_bracket(v), a, b)
}

/// A linear map `S: g → End(k^dim)`, one matrix per basis element of `g`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OuterActionMap {
    dim: usize,
    matrices: Vec<Matrix>,
}

impl fmt::Debug for OuterActionMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.matrices).finish()
    }
}

impl OuterActionMap {
    pub fn new(dim: usize, matrices: Vec<Matrix>) -> Result<Self> {
        if let Some(m) = matrices.iter().find(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "outer action matrix {}x{}, expected {dim}x{dim}",
                m.rows(),
                m.cols()
            )));
        }
        Ok(OuterActionMap { dim, matrices })
    }

    pub fn zero(g_dim: usize, dim: usize) -> Self {
        OuterActionMap {
            dim,
            matrices: vec![Matrix::zeros(dim, dim); g_dim],
        }
    }

    /// Checks that every matrix is a derivation of `n`.
    pub fn into_derivations(n: &LieAlgebra, matrices: Vec<Matrix>) -> Result<Self> {
        let s = OuterActionMap::new(n.dim(), matrices)?;
        if let Some(x) = s.non_derivation(n) {
            return Err(Error::InvariantViolation(vec![format!("S(e{x}) is not a derivation")]));
        }
        Ok(s)
    }

    pub fn from_representation(rep: &Representation) -> Self {
        OuterActionMap {
            dim: rep.space_dim(),
            matrices: rep.action().to_vec(),
        }
    }

    /// First basis element whose image is not a derivation of `n`.
    pub fn non_derivation(&self, n: &LieAlgebra) -> Option<usize> {
        self.matrices.iter().position(|m| !is_derivation(n, m))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn g_dim(&self) -> usize {
        self.matrices.len()
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    pub fn at(&self, x: usize) -> &Matrix {
        &self.matrices[x]
    }

    pub fn act(&self, x: &[Scalar]) -> Matrix {
        combine_matrices(&self.matrices, x, self.dim)
    }

    pub fn add(&self, other: &OuterActionMap) -> OuterActionMap {
        assert_eq!((self.dim, self.g_dim()), (other.dim, other.g_dim()));
        OuterActionMap {
            dim: self.dim,
            matrices: self
                .matrices
                .iter()
                .zip(&other.matrices)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &OuterActionMap) -> OuterActionMap {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> OuterActionMap {
        OuterActionMap {
            dim: self.dim,
            matrices: self.matrices.iter().map(|m| m.scale(c)).collect(),
        }
    }

    pub fn is_homomorphism(&self, g: &LieAlgebra) -> bool {
        homomorphism_violation(g, &self.matrices, self.dim).is_none()
    }

    /// `S` as an `End(k^dim)`-valued 1-cochain.
    pub fn as_cochain(&self) -> Cochain {
        Cochain::from_fn(self.g_dim(), 1, self.dim * self.dim, |t| self.matrices[t[0]].flatten())
    }

    /// Inverse of [`OuterActionMap::as_cochain`].
    pub fn from_cochain(c: &Cochain, dim: usize) -> Self {
        assert_eq!(c.degree(), 1);
        assert_eq!(c.value_dim(), dim * dim);
        let matrices = (0..c.domain_dim())
            .map(|i| Matrix::from_flat(dim, dim, c.value(&[i]).to_vec()))
            .collect();
        OuterActionMap { dim, matrices }
    }
}

/// `d_S c` with `S(x)` acting on the values of `c`:
/// `(d_S c)(x_0..x_p) = Σ_j (−1)^j S(x_j).c(..x̂_j..) + Σ_{i<j} (−1)^{i+j} c([x_i,x_j],..)`.
pub fn covariant_differential(g: &LieAlgebra, s: &OuterActionMap, c: &Cochain) -> Result<Cochain> {
    if s.g_dim() != g.dim() {
        return Err(Error::DimensionMismatch("S is defined on a different algebra".into()));
    }
    if s.dim != c.value_dim {
        return Err(Error::DimensionMismatch(format!(
            "S acts on k^{}, cochain valued in k^{}",
            s.dim, c.value_dim
        )));
    }
    differential_with(g, Some(&s.matrices), c)
}

/// `d_S c` computed as `S ∧_ev c + d_g c` with trivial-module `d_g`.
pub fn covariant_differential_via_wedge(g: &LieAlgebra, s: &OuterActionMap, c: &Cochain) -> Result<Cochain> {
    let ev = EquivariantPairing::evaluation(s.dim);
    let twist = wedge(&ev, &s.as_cochain(), c)?;
    Ok(twist.add(&trivial_differential(g, c)?))
}

/// `R_S(x,y) = [S(x),S(y)] − S([x,y])` as an `End`-valued 2-cochain.
///
/// Debug builds also evaluate `d_g S + ½[S,S]` and assert agreement.
pub fn curvature(g: &LieAlgebra, s: &OuterActionMap) -> Cochain {
    let r = Cochain::from_fn(g.dim(), 2, s.dim * s.dim, |t| {
        let (x, y) = (t[0], t[1]);
        let comm = s.matrices[x].commutator(&s.matrices[y]);
        comm.sub(&s.act(g.bracket_basis(x, y))).flatten()
    });
    debug_assert_eq!(r, curvature_via_calculus(g, s));
    r
}

/// `R_S = d_g S + ½[S,S]` with the commutator bracket of `End`.
pub fn curvature_via_calculus(g: &LieAlgebra, s: &OuterActionMap) -> Cochain {
    let sc = s.as_cochain();
    let dg = trivial_differential(g, &sc).expect("shapes agree");
    let sq = wedge(&EquivariantPairing::commutator(s.dim), &sc, &sc).expect("shapes agree");
    dg.add(&sq.scale(&Scalar::frac(1, 2)))
}

/// `ad∘c`: post-compose an `n`-valued cochain with `ad: n → End(n)`.
pub fn ad_compose(n: &LieAlgebra, c: &Cochain) -> Cochain {
    let d = n.dim();
    let ad_columns: Vec<Vector> = (0..d).map(|k| n.ad_basis(k).flatten()).collect();
    c.map_values(&Matrix::from_columns(&ad_columns, d * d))
}

/// `x ↦ ad γ(x)` for an `n`-valued 1-cochain `γ`.
pub fn ad_of_one_cochain(n: &LieAlgebra, gamma: &Cochain) -> OuterActionMap {
    OuterActionMap::from_cochain(&ad_compose(n, gamma), n.dim())
}

/// `γ.(S, ω) = (S + ad∘γ, ω + d_S γ + ½[γ,γ])`.
pub fn gauge_action(
    g: &LieAlgebra,
    n: &LieAlgebra,
    gamma: &Cochain,
    s: &OuterActionMap,
    omega: &Cochain,
) -> Result<(OuterActionMap, Cochain)> {
    if gamma.degree() != 1 || omega.degree() != 2 {
        return Err(Error::DimensionMismatch(
            "gauge action needs a 1-cochain acting on a 2-cochain".into(),
        ));
    }
    if gamma.value_dim() != n.dim() || omega.value_dim() != n.dim() || s.dim() != n.dim() {
        return Err(Error::DimensionMismatch("gauge data must be n-valued".into()));
    }
    if gamma.domain_dim() != g.dim() || omega.domain_dim() != g.dim() || s.g_dim() != g.dim() {
        return Err(Error::DimensionMismatch("gauge data must live on g".into()));
    }
    let s_new = s.add(&ad_of_one_cochain(n, gamma));
    let ds = covariant_differential(g, s, gamma)?;
    let sq = superbracket(n, gamma, gamma)?;
    let omega_new = omega.add(&ds).add(&sq.scale(&Scalar::frac(1, 2)));
    Ok((s_new, omega_new))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::linalg::unit_vector;

    fn ints(v: &[i64]) -> Vector {
        v.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn tuple_ranks_follow_lex_order() {
        for n in 0..6 {
            for p in 0..=n {
                for (r, t) in tuples(n, p).iter().enumerate() {
                    assert_eq!(tuple_rank(n, t), r);
                }
                assert_eq!(tuples(n, p).len(), binomial(n, p));
            }
        }
    }

    #[test]
    fn evaluation_alternates() {
        let c = Cochain::from_fn(3, 2, 1, |t| ints(&[(t[0] * 3 + t[1]) as i64]));
        assert_eq!(c.eval_basis(&[1, 1]), ints(&[0]));
        assert_eq!(c.eval_basis(&[2, 0]), ints(&[-2]));
        assert_eq!(c.eval_basis(&[0, 2]), c.value(&[0, 2]).to_vec());
        let x = ints(&[1, 2, 0]);
        assert_eq!(c.evaluate(&[x.clone(), x]).unwrap(), ints(&[0]));
        assert!(matches!(
            c.evaluate(&[ints(&[1, 0, 0])]),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn differential_on_heisenberg() {
        let heis = catalog::heisenberg3();
        let theta = Cochain::from_matrix(&Matrix::from_ints(&[&[0, 0, 1]]));
        let d = trivial_differential(&heis, &theta).unwrap();
        assert_eq!(d.value(&[0, 1]), &ints(&[-1])[..]);
        assert!(d.value(&[0, 2]).iter().all(Scalar::is_zero));
        assert!(d.value(&[1, 2]).iter().all(Scalar::is_zero));
        assert!(trivial_differential(&heis, &Cochain::zero(3, 1, 1)).unwrap().is_zero());
    }

    #[test]
    fn differential_matrix_matches_direct_application() {
        let sl2 = std::sync::Arc::new(catalog::sl2());
        let ad = crate::lie::adjoint_rep(&sl2);
        for p in 0..3 {
            let dm = differential_matrix(&sl2, Some(ad.action()), 3, p);
            let c = Cochain::from_fn(3, p, 3, |t| {
                let s: i64 = t.iter().map(|&x| x as i64 + 1).sum();
                ints(&[s, 1 - s, 2])
            });
            let direct = cochain_differential(&ad, &c).unwrap();
            assert_eq!(dm.mul_vec(c.flat()), direct.flat());
            let dd = cochain_differential(&ad, &direct).unwrap();
            assert!(dd.is_zero());
        }
    }

    #[test]
    fn wedge_of_dual_basis_forms() {
        let a = Cochain::from_matrix(&Matrix::from_ints(&[&[1, 0]]));
        let b = Cochain::from_matrix(&Matrix::from_ints(&[&[0, 1]]));
        let w = wedge(&EquivariantPairing::field(), &a, &b).unwrap();
        assert_eq!(w.value(&[0, 1]), &ints(&[1])[..]);
    }

    #[test]
    fn shuffle_sum_matches_permutation_sum() {
        let heis = catalog::heisenberg3();
        let m = EquivariantPairing::lie_bracket(&heis);
        let a = Cochain::from_fn(3, 1, 3, |t| ints(&[t[0] as i64, 1, -2]));
        let b = Cochain::from_fn(3, 2, 3, |t| ints(&[1, t[1] as i64, t[0] as i64 - 1]));
        assert_eq!(wedge(&m, &a, &b).unwrap(), wedge_by_permutations(&m, &a, &b));
        assert_eq!(wedge(&m, &b, &a).unwrap(), wedge_by_permutations(&m, &b, &a));
    }

    #[test]
    fn curvature_of_elementary_matrices() {
        let g = LieAlgebra::abelian(2);
        let e12 = Matrix::from_ints(&[&[0, 1], &[0, 0]]);
        let e21 = Matrix::from_ints(&[&[0, 0], &[1, 0]]);
        let s = OuterActionMap::new(2, vec![e12, e21]).unwrap();
        let r = curvature(&g, &s);
        assert_eq!(
            r.value(&[0, 1]),
            Matrix::from_ints(&[&[1, 0], &[0, -1]]).flatten().as_slice()
        );
        assert_eq!(r, curvature_via_calculus(&g, &s));
    }

    #[test]
    fn homomorphism_has_zero_curvature() {
        let sl2 = catalog::sl2();
        let s = OuterActionMap::new(2, catalog::sl2_natural_matrices()).unwrap();
        assert!(curvature(&sl2, &s).is_zero());
    }

    #[test]
    fn degree_zero_covariant_square_is_curvature() {
        let g = LieAlgebra::abelian(2);
        let e12 = Matrix::from_ints(&[&[0, 1], &[0, 0]]);
        let e21 = Matrix::from_ints(&[&[0, 0], &[1, 0]]);
        let s = OuterActionMap::new(2, vec![e12, e21]).unwrap();
        let v = Cochain::constant(2, ints(&[3, -1]));
        let dd = covariant_differential(&g, &s, &covariant_differential(&g, &s, &v).unwrap()).unwrap();
        let r = curvature(&g, &s);
        let rv = Matrix::from_flat(2, 2, r.value(&[0, 1]).to_vec()).mul_vec(&ints(&[3, -1]));
        assert_eq!(dd.value(&[0, 1]), rv.as_slice());
        assert_eq!(
            covariant_differential(&g, &s, &v).unwrap(),
            covariant_differential_via_wedge(&g, &s, &v).unwrap()
        );
    }

    #[test]
    fn trivial_gauge_is_identity() {
        let heis = catalog::heisenberg3();
        let g = LieAlgebra::abelian(2);
        let s = OuterActionMap::zero(2, 3);
        let omega = Cochain::from_fn(2, 2, 3, |_| unit_vector(3, 2));
        let (s2, w2) = gauge_action(&g, &heis, &Cochain::zero(2, 1, 3), &s, &omega).unwrap();
        assert_eq!(s2, s);
        assert_eq!(w2, omega);
    }

    #[test]
    fn degree_cap_is_enforced() {
        let c = Cochain::zero(8, 4, 1);
        assert!(matches!(
            wedge(&EquivariantPairing::field(), &c, &c),
            Err(Error::DegreeCapExceeded { degree: 8, .. })
        ));
    }
}

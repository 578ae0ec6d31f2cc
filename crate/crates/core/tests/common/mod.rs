//! Seeded random instances and the invariant checks shared by the property
//! suites and the acceptance runner. Each check takes a seed and returns a
//! description of the first failure.

#![allow(dead_code)]

use std::sync::Arc;

use liecoh_core::catalog;
use liecoh_core::cochain::{
    ad_compose, ad_of_one_cochain, cochain_differential, covariant_differential, covariant_differential_via_wedge,
    curvature, curvature_via_calculus, superbracket, trivial_differential, wedge, Cochain, EquivariantPairing,
    OuterActionMap,
};
use liecoh_core::cohomology::{classes_equal, cohomology};
use liecoh_core::extension::{obstruction_class, FactorSystem, GKernel};
use liecoh_core::lie::{adjoint_rep, center, derivation_space, direct_and_semidirect, LieAlgebra, Representation};
use liecoh_core::linalg::{Matrix, Vector};
use liecoh_core::Scalar;
use proptest::test_runner::{Config, RngSeed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CASES: u32 = 500;

/// Fixed-seed proptest configuration without failure persistence.
pub fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(0x11ec0),
        failure_persistence: None,
        ..Config::default()
    }
}

pub type Check = std::result::Result<(), String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn fail<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// An integer in `[-3, 3]`, or a half of one with probability 1/4.
pub fn scalar(rng: &mut ChaCha8Rng) -> Scalar {
    let n = rng.gen_range(-3..=3);
    if rng.gen_bool(0.25) {
        Scalar::frac(n, 2)
    } else {
        Scalar::from_int(n)
    }
}

pub fn vector(rng: &mut ChaCha8Rng, n: usize) -> Vector {
    (0..n).map(|_| scalar(rng)).collect()
}

pub fn matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| scalar(rng))
}

pub fn cochain(rng: &mut ChaCha8Rng, domain_dim: usize, degree: usize, value_dim: usize) -> Cochain {
    Cochain::from_fn(domain_dim, degree, value_dim, |_| vector(rng, value_dim))
}

/// A Lie algebra of dimension at most 4: catalog algebras, direct sums and
/// random semidirect products `k^m ⋊_A k`.
pub fn algebra(rng: &mut ChaCha8Rng) -> LieAlgebra {
    algebra_up_to(rng, 4)
}

pub fn algebra_up_to(rng: &mut ChaCha8Rng, max_dim: usize) -> LieAlgebra {
    loop {
        let l = match rng.gen_range(0..7) {
            0 => catalog::abelian(rng.gen_range(1..=max_dim)),
            1 => catalog::nonabelian2(),
            2 => catalog::heisenberg3(),
            3 => catalog::sl2(),
            4 => direct_and_semidirect(&catalog::abelian(1), &catalog::heisenberg3(), None).expect("direct sum"),
            5 => direct_and_semidirect(&catalog::nonabelian2(), &catalog::nonabelian2(), None).expect("direct sum"),
            _ => {
                let m = rng.gen_range(1..max_dim.max(2));
                let a = matrix(rng, m, m);
                direct_and_semidirect(&catalog::abelian(m), &catalog::abelian(1), Some(&[a])).expect("semidirect")
            }
        };
        if l.dim() <= max_dim {
            return l;
        }
    }
}

/// Characters `g → k`, i.e. a basis of `Z¹(g, k)`.
pub fn characters(g: &Arc<LieAlgebra>) -> Vec<Vector> {
    let z1 = cohomology(&Representation::trivial(g.clone(), 1), 1).expect("degree 1");
    z1.cocycles().basis().to_vec()
}

fn combination(rng: &mut ChaCha8Rng, basis: &[Vector], len: usize) -> Vector {
    let mut out = vec![Scalar::zero(); len];
    for b in basis {
        let c = scalar(rng);
        for (o, x) in out.iter_mut().zip(b) {
            *o += &c * x;
        }
    }
    out
}

/// A representation of `g`: trivial, adjoint, coadjoint, a character times
/// a random matrix, or the defining one of `sl2`.
pub fn representation(rng: &mut ChaCha8Rng, g: &Arc<LieAlgebra>) -> Representation {
    let d = g.dim();
    match rng.gen_range(0..5) {
        0 => Representation::trivial(g.clone(), rng.gen_range(1..=3)),
        1 => adjoint_rep(g),
        2 => adjoint_rep(g).dual(),
        3 if **g == catalog::sl2() => {
            Representation::new(g.clone(), 2, catalog::sl2_natural_matrices()).expect("defining representation")
        }
        _ => {
            let m = rng.gen_range(1..=3);
            let lambda = combination(rng, &characters(g), d);
            let a = matrix(rng, m, m);
            let action = lambda.iter().map(|l| a.scale(l)).collect();
            Representation::new(g.clone(), m, action).expect("character twist")
        }
    }
}

/// `X ↦ MX − XM` on row-major flattened `d × d` matrices.
pub fn commutator_action(m: &Matrix) -> Matrix {
    let d = m.rows();
    let mut out = Matrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            for l in 0..d {
                out[(i * d + l, j * d + l)] += &m[(i, j)];
                out[(i * d + l, i * d + j)] -= &m[(j, l)];
            }
        }
    }
    out
}

/// `End(V)` with the action `x.A = [ρ(x), A]`.
pub fn end_rep(rep: &Representation) -> Representation {
    let d = rep.space_dim();
    let action = rep.action().iter().map(commutator_action).collect();
    Representation::new(rep.algebra().clone(), d * d, action).expect("End(V) is a module")
}

pub fn outer_action(rng: &mut ChaCha8Rng, g_dim: usize, dim: usize) -> OuterActionMap {
    OuterActionMap::new(dim, (0..g_dim).map(|_| matrix(rng, dim, dim)).collect()).expect("square")
}

/// A random linear map `g → der(n)`.
pub fn derivation_map(rng: &mut ChaCha8Rng, g_dim: usize, n: &LieAlgebra) -> OuterActionMap {
    let basis = derivation_space(n).basis().to_vec();
    let d = n.dim();
    let ms = (0..g_dim)
        .map(|_| Matrix::from_flat(d, d, combination(rng, &basis, d * d)))
        .collect();
    OuterActionMap::into_derivations(n, ms).expect("derivations")
}

/// A random `z(n)`-valued 2-cochain.
pub fn central_cochain(rng: &mut ChaCha8Rng, g_dim: usize, n: &LieAlgebra, degree: usize) -> Cochain {
    let z = center(n).basis().to_vec();
    let d = n.dim();
    Cochain::from_fn(g_dim, degree, d, |_| combination(rng, &z, d))
}

fn small_kernel(rng: &mut ChaCha8Rng) -> LieAlgebra {
    match rng.gen_range(0..5) {
        0 => catalog::heisenberg3(),
        1 => catalog::nonabelian2(),
        2 => catalog::sl2(),
        3 => catalog::abelian(2),
        _ => direct_and_semidirect(&catalog::abelian(1), &catalog::nonabelian2(), None).expect("direct sum"),
    }
}

/// `(g, n, S, ω)` with `R_S = ad∘ω`: a catalog factor system, or `λ⊗D`
/// plus `ad∘σ` on a random `g` with the induced lift plus a central term.
pub struct KernelInstance {
    pub g: Arc<LieAlgebra>,
    pub n: Arc<LieAlgebra>,
    pub s: OuterActionMap,
    pub omega: Cochain,
}

pub fn kernel_instance(rng: &mut ChaCha8Rng) -> KernelInstance {
    if rng.gen_bool(0.3) {
        let fs: FactorSystem = match rng.gen_range(0..5) {
            0 => catalog::heisenberg_central(),
            1 => catalog::heisenberg_over_heisenberg(),
            2 => catalog::heisenberg_kernel(),
            3 => catalog::plane_by_sl2(),
            _ => catalog::line_over_plane(rng.gen_range(-2..=2)),
        };
        return KernelInstance {
            g: fs.g().clone(),
            n: fs.n().clone(),
            s: fs.s().clone(),
            omega: fs.omega().clone(),
        };
    }
    let g = Arc::new(algebra_up_to(rng, 3));
    let n = Arc::new(small_kernel(rng));
    let (gd, nd) = (g.dim(), n.dim());
    let lambda = combination(rng, &characters(&g), gd);
    let dmap = derivation_map(rng, 1, &n);
    let t = OuterActionMap::new(nd, lambda.iter().map(|l| dmap.at(0).scale(l)).collect()).expect("square");
    let sigma = cochain(rng, gd, 1, nd);
    let s = t.add(&ad_of_one_cochain(&n, &sigma));
    let lift = covariant_differential(&g, &t, &sigma).expect("shapes").add(
        &superbracket(&n, &sigma, &sigma)
            .expect("shapes")
            .scale(&Scalar::frac(1, 2)),
    );
    let omega = lift.add(&central_cochain(rng, gd, &n, 2));
    KernelInstance { g, n, s, omega }
}

// ---- cochain calculus ----

pub fn check_d_squared(seed: u64) -> Check {
    let mut rng = rng(seed);
    let g = Arc::new(algebra(&mut rng));
    let rep = representation(&mut rng, &g);
    let p = rng.gen_range(0..=3.min(g.dim()));
    let c = cochain(&mut rng, g.dim(), p, rep.space_dim());
    let dd = cochain_differential(&rep, &cochain_differential(&rep, &c).map_err(fail)?).map_err(fail)?;
    ensure(dd.is_zero(), || {
        format!("d² ≠ 0 in degree {p} on a dim-{} algebra", g.dim())
    })
}

pub fn check_covariant_square(seed: u64) -> Check {
    let mut rng = rng(seed);
    let g = algebra(&mut rng);
    let m = rng.gen_range(1..=3);
    let s = outer_action(&mut rng, g.dim(), m);
    let p = rng.gen_range(0..=2.min(g.dim()));
    let c = cochain(&mut rng, g.dim(), p, m);
    let dc = covariant_differential(&g, &s, &c).map_err(fail)?;
    ensure(
        dc == covariant_differential_via_wedge(&g, &s, &c).map_err(fail)?,
        || "d_S differs from S ∧ c + d_g c".into(),
    )?;
    let r = curvature(&g, &s);
    ensure(r == curvature_via_calculus(&g, &s), || {
        "curvature formulas disagree".into()
    })?;
    let lhs = covariant_differential(&g, &s, &dc).map_err(fail)?;
    let rhs = wedge(&EquivariantPairing::evaluation(m), &r, &c).map_err(fail)?;
    ensure(lhs == rhs, || format!("d_S² c ≠ R_S ∧ c in degree {p}"))
}

pub fn check_bianchi(seed: u64) -> Check {
    let mut rng = rng(seed);
    let g = algebra(&mut rng);
    let v = algebra_up_to(&mut rng, 3);
    let sigma = cochain(&mut rng, g.dim(), 1, v.dim());
    let s = ad_of_one_cochain(&v, &sigma);
    let r = trivial_differential(&g, &sigma).map_err(fail)?.add(
        &superbracket(&v, &sigma, &sigma)
            .map_err(fail)?
            .scale(&Scalar::frac(1, 2)),
    );
    ensure(ad_compose(&v, &r) == curvature(&g, &s), || "R_{ad∘σ} ≠ ad∘R_σ".into())?;
    ensure(covariant_differential(&g, &s, &r).map_err(fail)?.is_zero(), || {
        "d_S R_σ ≠ 0".into()
    })
}

fn random_pairing(rng: &mut ChaCha8Rng, l: usize, r: usize, o: usize) -> EquivariantPairing {
    let t: Vec<Vector> = (0..l * r).map(|_| vector(rng, o)).collect();
    EquivariantPairing::from_fn(l, r, o, |a, b| t[a * r + b].clone())
}

fn degrees(rng: &mut ChaCha8Rng, dim: usize, total: usize) -> (usize, usize) {
    let p = rng.gen_range(0..=total.min(dim).min(3));
    let q = rng.gen_range(0..=(total - p).min(dim - p).min(3));
    (p, q)
}

/// Leibniz for a random bilinear map with trivial coefficients, and for the
/// bracket and `End(V)` evaluation with module coefficients.
pub fn check_leibniz(seed: u64) -> Check {
    let mut rng = rng(seed);
    let g = Arc::new(algebra(&mut rng));
    let (p, q) = degrees(&mut rng, g.dim(), 3);
    let sign = Scalar::sign(p);
    let leibniz = |m: &EquivariantPairing,
                   a: &Cochain,
                   b: &Cochain,
                   da: &Cochain,
                   db: &Cochain,
                   d: &dyn Fn(&Cochain) -> Cochain|
     -> std::result::Result<bool, String> {
        let lhs = d(&wedge(m, a, b).map_err(fail)?);
        let rhs = wedge(m, da, b)
            .map_err(fail)?
            .add(&wedge(m, a, db).map_err(fail)?.scale(&sign));
        Ok(lhs == rhs)
    };
    let (u, v, w) = (rng.gen_range(1..=2), rng.gen_range(1..=2), rng.gen_range(1..=2));
    let m = random_pairing(&mut rng, u, v, w);
    let a = cochain(&mut rng, g.dim(), p, u);
    let b = cochain(&mut rng, g.dim(), q, v);
    let d = |c: &Cochain| trivial_differential(&g, c).expect("shapes");
    ensure(leibniz(&m, &a, &b, &d(&a), &d(&b), &d)?, || {
        format!("Leibniz fails for a random pairing, ({p},{q})")
    })?;

    let ad = adjoint_rep(&g);
    let bracket = EquivariantPairing::lie_bracket(&g);
    let a = cochain(&mut rng, g.dim(), p, g.dim());
    let b = cochain(&mut rng, g.dim(), q, g.dim());
    let dad = |c: &Cochain| cochain_differential(&ad, c).expect("shapes");
    ensure(leibniz(&bracket, &a, &b, &dad(&a), &dad(&b), &dad)?, || {
        format!("Leibniz fails for the bracket, ({p},{q})")
    })?;

    let rep = representation(&mut rng, &g);
    let end = end_rep(&rep);
    let k = rep.space_dim();
    let ev = EquivariantPairing::evaluation(k);
    let a = cochain(&mut rng, g.dim(), p, k * k);
    let b = cochain(&mut rng, g.dim(), q, k);
    let lhs = cochain_differential(&rep, &wedge(&ev, &a, &b).map_err(fail)?).map_err(fail)?;
    let rhs = wedge(&ev, &cochain_differential(&end, &a).map_err(fail)?, &b)
        .map_err(fail)?
        .add(
            &wedge(&ev, &a, &cochain_differential(&rep, &b).map_err(fail)?)
                .map_err(fail)?
                .scale(&sign),
        );
    ensure(lhs == rhs, || format!("Leibniz fails for End(V) evaluation, ({p},{q})"))
}

/// `a ∧_m b = (−1)^{pq} b ∧_{m̃} a` for random `m`, and the
/// `(−1)^{pq+1}` form for the bracket.
pub fn check_graded_commutativity(seed: u64) -> Check {
    let mut rng = rng(seed);
    let g = algebra(&mut rng);
    let (p, q) = degrees(&mut rng, g.dim(), 4);
    let (u, v, w) = (rng.gen_range(1..=2), rng.gen_range(1..=2), rng.gen_range(1..=2));
    let m = random_pairing(&mut rng, u, v, w);
    let a = cochain(&mut rng, g.dim(), p, u);
    let b = cochain(&mut rng, g.dim(), q, v);
    let ab = wedge(&m, &a, &b).map_err(fail)?;
    let ba = wedge(&m.swapped(), &b, &a).map_err(fail)?;
    ensure(ab == ba.scale(&Scalar::sign(p * q)), || {
        format!("swap rule fails in degrees ({p},{q})")
    })?;
    let l = algebra_up_to(&mut rng, 3);
    let a = cochain(&mut rng, g.dim(), p, l.dim());
    let b = cochain(&mut rng, g.dim(), q, l.dim());
    let ab = superbracket(&l, &a, &b).map_err(fail)?;
    let ba = superbracket(&l, &b, &a).map_err(fail)?;
    ensure(ab == ba.scale(&Scalar::sign(p * q + 1)), || {
        format!("[a,b] ≠ (−1)^(pq+1)[b,a] in ({p},{q})")
    })
}

/// Graded antisymmetry and graded Jacobi for the superbracket, plus
/// `[a,a] = 0` for even and `[b,[b,b]] = 0` for odd degrees.
pub fn check_superalgebra(seed: u64) -> Check {
    let mut rng = rng(seed);
    let g = algebra(&mut rng);
    let v = algebra_up_to(&mut rng, 3);
    let (gd, vd) = (g.dim(), v.dim());
    let br = |a: &Cochain, b: &Cochain| superbracket(&v, a, b).expect("V-valued");
    let p = rng.gen_range(0..=1.min(gd));
    let q = rng.gen_range(0..=1.min(gd - p));
    let r = rng.gen_range(0..=2.min(gd - p - q));
    let (a, b, c) = (
        cochain(&mut rng, gd, p, vd),
        cochain(&mut rng, gd, q, vd),
        cochain(&mut rng, gd, r, vd),
    );
    ensure(br(&a, &b) == br(&b, &a).scale(&Scalar::sign(p * q + 1)), || {
        "graded antisymmetry fails".into()
    })?;
    let jac = br(&br(&a, &b), &c)
        .scale(&Scalar::sign(p * r))
        .add(&br(&br(&b, &c), &a).scale(&Scalar::sign(q * p)))
        .add(&br(&br(&c, &a), &b).scale(&Scalar::sign(r * q)));
    ensure(jac.is_zero(), || {
        format!("graded Jacobi fails in degrees ({p},{q},{r})")
    })?;
    let even = 2 * rng.gen_range(0..=(gd / 2).min(1));
    let e = cochain(&mut rng, gd, even, vd);
    ensure(br(&e, &e).is_zero(), || format!("[a,a] ≠ 0 in even degree {even}"))?;
    let odd = 1;
    let o = cochain(&mut rng, gd, odd, vd);
    ensure(br(&o, &br(&o, &o)).is_zero(), || "[b,[b,b]] ≠ 0 in degree 1".into())
}

/// `(α ∧ β) ∧ γ = α ∧ (β ∧ γ)` for composition and evaluation on `End(V)`.
pub fn check_associativity(seed: u64) -> Check {
    let mut rng = rng(seed);
    let g = algebra(&mut rng);
    let gd = g.dim();
    let k = rng.gen_range(1..=3);
    let (comp, ev) = (EquivariantPairing::composition(k), EquivariantPairing::evaluation(k));
    let p = rng.gen_range(0..=1.min(gd));
    let q = rng.gen_range(0..=1.min(gd - p));
    let r = rng.gen_range(0..=2.min(gd - p - q));
    let a = cochain(&mut rng, gd, p, k * k);
    let b = cochain(&mut rng, gd, q, k * k);
    let c = cochain(&mut rng, gd, r, k);
    let lhs = wedge(&ev, &wedge(&comp, &a, &b).map_err(fail)?, &c).map_err(fail)?;
    let rhs = wedge(&ev, &a, &wedge(&ev, &b, &c).map_err(fail)?).map_err(fail)?;
    ensure(lhs == rhs, || {
        format!("evaluation associativity fails in ({p},{q},{r})")
    })?;
    let c = cochain(&mut rng, gd, r, k * k);
    let lhs = wedge(&comp, &wedge(&comp, &a, &b).map_err(fail)?, &c).map_err(fail)?;
    let rhs = wedge(&comp, &a, &wedge(&comp, &b, &c).map_err(fail)?).map_err(fail)?;
    ensure(lhs == rhs, || {
        format!("composition associativity fails in ({p},{q},{r})")
    })
}

/// Twisted complexes: for a representation `T` and `Γ` with commuting
/// values, `R_{T+Γ} = d_T Γ`, so `d_{T+Γ}² = 0` exactly when `d_T Γ = 0`.
pub fn check_twisted(seed: u64) -> Check {
    let mut rng = rng(seed);
    let g = Arc::new(algebra(&mut rng));
    let gd = g.dim();
    let rep = representation(&mut rng, &g);
    let k = rep.space_dim();
    let t = OuterActionMap::from_representation(&rep);
    let a = matrix(&mut rng, k, k);
    let coeffs = if rng.gen_bool(0.5) {
        combination(&mut rng, &characters(&g), gd)
    } else {
        vector(&mut rng, gd)
    };
    let gamma = OuterActionMap::new(k, coeffs.iter().map(|c| a.scale(c)).collect()).map_err(fail)?;
    let s = t.add(&gamma);
    let end = OuterActionMap::from_representation(&end_rep(&rep));
    let dt_gamma = covariant_differential(&g, &end, &gamma.as_cochain()).map_err(fail)?;
    let r = curvature(&g, &s);
    ensure(r == dt_gamma, || "R_{T+Γ} ≠ d_T Γ for commuting Γ".into())?;
    let p = rng.gen_range(0..=2.min(gd));
    let c = cochain(&mut rng, gd, p, k);
    let dd = covariant_differential(&g, &s, &covariant_differential(&g, &s, &c).map_err(fail)?).map_err(fail)?;
    let expected = wedge(&EquivariantPairing::evaluation(k), &r, &c).map_err(fail)?;
    ensure(dd == expected && (dd.is_zero() || !dt_gamma.is_zero()), || {
        "d_{T+Γ}² disagrees with d_T Γ".into()
    })
}

// ---- gauge action ----

pub fn check_gauge_action_law(seed: u64) -> Check {
    let mut rng = rng(seed);
    let g = algebra_up_to(&mut rng, 3);
    let n = small_kernel(&mut rng);
    let s = derivation_map(&mut rng, g.dim(), &n);
    let omega = cochain(&mut rng, g.dim(), 2, n.dim());
    let g1 = cochain(&mut rng, g.dim(), 1, n.dim());
    let g2 = cochain(&mut rng, g.dim(), 1, n.dim());
    let act = |gamma: &Cochain, s: &OuterActionMap, w: &Cochain| {
        liecoh_core::cochain::gauge_action(&g, &n, gamma, s, w).map_err(fail)
    };
    let (s2, w2) = act(&g2, &s, &omega)?;
    let twice = act(&g1, &s2, &w2)?;
    let once = act(&g1.add(&g2), &s, &omega)?;
    ensure(twice == once, || "γ₁.(γ₂.(S,ω)) ≠ (γ₁+γ₂).(S,ω)".into())?;
    let zero = act(&Cochain::zero(g.dim(), 1, n.dim()), &s, &omega)?;
    ensure(zero == (s.clone(), omega.clone()), || "0.(S,ω) ≠ (S,ω)".into())?;
    let (s1, _) = act(&g1, &s, &omega)?;
    let dsg = covariant_differential(&g, &s, &g1).map_err(fail)?;
    let half = superbracket(&n, &g1, &g1).map_err(fail)?.scale(&Scalar::frac(1, 2));
    let expected = curvature(&g, &s).add(&ad_compose(&n, &dsg.add(&half)));
    ensure(curvature(&g, &s1) == expected, || {
        "R_{S+ad∘γ} ≠ R_S + ad∘(d_Sγ + ½[γ,γ])".into()
    })
}

/// Invariance of `R_S = ad∘ω`, centrality and closedness of `d_S ω`, and
/// its constancy along orbits.
pub fn check_gauge_orbit(seed: u64) -> Check {
    let mut rng = rng(seed);
    let KernelInstance { g, n, s, omega } = kernel_instance(&mut rng);
    ensure(curvature(&g, &s) == ad_compose(&n, &omega), || {
        "instance does not satisfy R_S = ad∘ω".into()
    })?;
    let gamma = cochain(&mut rng, g.dim(), 1, n.dim());
    let (s1, w1) = liecoh_core::cochain::gauge_action(&g, &n, &gamma, &s, &omega).map_err(fail)?;
    ensure(curvature(&g, &s1) == ad_compose(&n, &w1), || {
        "gauge leaves the set R_S = ad∘ω".into()
    })?;
    let d0 = covariant_differential(&g, &s, &omega).map_err(fail)?;
    let z = center(&n);
    ensure(
        (0..d0.num_tuples()).all(|r| z.contains(&d0.flat()[r * n.dim()..(r + 1) * n.dim()])),
        || "d_S ω is not z(n)-valued".into(),
    )?;
    ensure(covariant_differential(&g, &s, &d0).map_err(fail)?.is_zero(), || {
        "d_S ω is not closed".into()
    })?;
    let d1 = covariant_differential(&g, &s1, &w1).map_err(fail)?;
    ensure(d0 == d1, || "d_S ω changes along the orbit".into())
}

// ---- obstruction ----

/// `χ(S)` is unchanged by `S ↦ S + ad∘γ` and by changing the lift `ω`.
pub fn check_obstruction_invariance(seed: u64) -> Check {
    let mut rng = rng(seed);
    let inst = kernel_instance(&mut rng);
    let (g, n) = (inst.g.clone(), inst.n.clone());
    let k0 = GKernel::with_lift(g.clone(), n.clone(), inst.s.clone(), inst.omega.clone()).map_err(fail)?;
    let chi0 = obstruction_class(&k0).map_err(fail)?;
    let gamma = cochain(&mut rng, g.dim(), 1, n.dim());
    let k1 = k0.gauge(&gamma).map_err(fail)?;
    let chi1 = obstruction_class(&k1).map_err(fail)?;
    ensure(classes_equal(&chi0, &chi1).map_err(fail)?, || {
        "χ changes under S ↦ S + ad∘γ".into()
    })?;
    let moved = k1.omega().add(&central_cochain(&mut rng, g.dim(), &n, 2));
    let k2 = GKernel::with_lift(g.clone(), n.clone(), k1.s().clone(), moved).map_err(fail)?;
    let chi2 = obstruction_class(&k2).map_err(fail)?;
    ensure(classes_equal(&chi0, &chi2).map_err(fail)?, || {
        "χ depends on the lift ω".into()
    })?;
    let k3 = GKernel::new(g, n, k1.s().clone()).map_err(fail)?;
    let chi3 = obstruction_class(&k3).map_err(fail)?;
    ensure(classes_equal(&chi0, &chi3).map_err(fail)?, || {
        "χ depends on the computed lift".into()
    })
}

/// `χ = 0` when `n` is abelian and `S` is a representation.
pub fn check_abelian_kernel_unobstructed(seed: u64) -> Check {
    let mut rng = rng(seed);
    let g = Arc::new(algebra(&mut rng));
    let rep = representation(&mut rng, &g);
    let n = Arc::new(catalog::abelian(rep.space_dim()));
    let s = OuterActionMap::from_representation(&rep);
    let omega = cochain(&mut rng, g.dim(), 2, n.dim());
    let k = GKernel::with_lift(g, n, s, omega).map_err(fail)?;
    ensure(obstruction_class(&k).map_err(fail)?.is_zero(), || {
        "abelian kernel with a homomorphism is obstructed".into()
    })
}

//! Cocycles, coboundaries and cohomology classes, plus the two affine
//! solution sets that extension theory needs: 2-cochains solving the factor
//! system equations for a fixed outer action, and 2-cocycles extending a
//! prescribed bilinear map on `L × I` for an ideal `I`.

use std::fmt;
use std::sync::Arc;

use crate::cochain::{
    ad_compose, binomial, check_degree, covariant_differential, curvature, differential_matrix, tuples, Cochain,
    OuterActionMap,
};
use crate::error::{Error, Result};
use crate::lie::{center, LieAlgebra, Representation};
use crate::linalg::{
    axpy, image, kernel, solve, solve_affine_map, sub_vectors, zero_vector, AffineSolution, InconsistencyCertificate,
    Matrix, Subspace, Vector,
};
use crate::scalar::Scalar;

/// `H^p(g, V)` with its cocycle and coboundary spaces in cochain coordinates.
#[derive(Clone)]
pub struct CohomologySpace {
    rep: Representation,
    degree: usize,
    cocycles: Subspace,
    coboundaries: Subspace,
    /// Echelon basis of the normal forms of cocycles modulo coboundaries.
    harmonic: Subspace,
    previous_differential: Option<Matrix>,
}

impl PartialEq for CohomologySpace {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.rep == other.rep
    }
}

impl fmt::Debug for CohomologySpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "H^{}(dim g = {}, dim V = {}) = {} [Z {}, B {}]",
            self.degree,
            self.rep.algebra().dim(),
            self.rep.space_dim(),
            self.h_dim(),
            self.cocycles.dim(),
            self.coboundaries.dim()
        )
    }
}

/// Computes `H^p(g, V)` for the module `rep`.
///
/// # Errors
/// `DegreeCapExceeded` when `p` is above the configured cap.
pub fn cohomology(rep: &Representation, p: usize) -> Result<CohomologySpace> {
    check_degree(p)?;
    let g = rep.algebra();
    let m = rep.space_dim();
    let d_cur = differential_matrix(g, Some(rep.action()), m, p);
    let cocycles = kernel(&d_cur);
    let (coboundaries, previous_differential) = if p == 0 {
        (Subspace::zero(m), None)
    } else {
        let d_prev = differential_matrix(g, Some(rep.action()), m, p - 1);
        (image(&d_prev), Some(d_prev))
    };
    debug_assert!(cocycles.contains_subspace(&coboundaries));
    let reduced = cocycles.basis().iter().map(|z| coboundaries.reduce(z)).collect();
    let harmonic = Subspace::from_spanning(cocycles.ambient_dim(), reduced);
    Ok(CohomologySpace {
        rep: rep.clone(),
        degree: p,
        cocycles,
        coboundaries,
        harmonic,
        previous_differential,
    })
}

impl CohomologySpace {
    pub fn rep(&self) -> &Representation {
        &self.rep
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn cocycles(&self) -> &Subspace {
        &self.cocycles
    }

    pub fn coboundaries(&self) -> &Subspace {
        &self.coboundaries
    }

    pub fn h_dim(&self) -> usize {
        self.cocycles.dim() - self.coboundaries.dim()
    }

    fn shape_ok(&self, c: &Cochain) -> bool {
        c.degree() == self.degree && c.value_dim() == self.rep.space_dim() && c.domain_dim() == self.rep.algebra().dim()
    }

    pub fn is_cocycle(&self, c: &Cochain) -> bool {
        self.shape_ok(c) && self.cocycles.contains(c.flat())
    }

    pub fn is_coboundary(&self, c: &Cochain) -> bool {
        self.shape_ok(c) && self.coboundaries.contains(c.flat())
    }

    fn cochain(&self, v: Vector) -> Cochain {
        Cochain::from_flat(self.rep.algebra().dim(), self.degree, self.rep.space_dim(), v)
    }

    /// Reduction of `c` modulo the coboundary echelon basis.
    pub fn normalize(&self, c: &Cochain) -> Cochain {
        self.cochain(self.coboundaries.reduce(c.flat()))
    }

    /// Coordinates of the class of a cocycle in [`CohomologySpace::class_basis`].
    pub fn class_coordinates(&self, c: &Cochain) -> Result<Vector> {
        if !self.is_cocycle(c) {
            return Err(Error::InvariantViolation(vec!["cochain is not a cocycle".into()]));
        }
        Ok(self
            .harmonic
            .coordinates(&self.coboundaries.reduce(c.flat()))
            .expect("normal forms of cocycles span the harmonic part"))
    }

    /// Normalized cocycles whose classes form a basis of `H^p`.
    pub fn class_basis(&self) -> Vec<Cochain> {
        self.harmonic.basis().iter().map(|v| self.cochain(v.clone())).collect()
    }

    /// A cochain `b` with `d b = c`, free variables zero; `None` when `c` is
    /// not a coboundary.
    pub fn primitive(&self, c: &Cochain) -> Option<Cochain> {
        if self.degree == 0 {
            return c.is_zero().then(|| Cochain::zero(self.rep.algebra().dim(), 0, 0));
        }
        let d = self.previous_differential.as_ref()?;
        let b = solve(d, c.flat())?;
        Some(Cochain::from_flat(
            self.rep.algebra().dim(),
            self.degree - 1,
            self.rep.space_dim(),
            b,
        ))
    }
}

/// The class `[c]` of a cocycle.
#[derive(Clone, Debug)]
pub struct CohomologyClass {
    representative: Cochain,
    space: Arc<CohomologySpace>,
}

impl CohomologyClass {
    pub fn new(space: Arc<CohomologySpace>, representative: Cochain) -> Result<Self> {
        if !space.is_cocycle(&representative) {
            return Err(Error::InvariantViolation(vec![
                "class representative is not a cocycle".into()
            ]));
        }
        Ok(CohomologyClass { representative, space })
    }

    pub fn representative(&self) -> &Cochain {
        &self.representative
    }

    pub fn space(&self) -> &Arc<CohomologySpace> {
        &self.space
    }

    pub fn is_zero(&self) -> bool {
        self.space.is_coboundary(&self.representative)
    }

    /// The representative reduced modulo coboundaries.
    pub fn normalized(&self) -> Cochain {
        self.space.normalize(&self.representative)
    }

    pub fn coordinates(&self) -> Vector {
        self.space
            .class_coordinates(&self.representative)
            .expect("representative is a cocycle")
    }
}

/// True iff `a − b` is a coboundary.
///
/// # Errors
/// `SpaceMismatch` when the classes live in different cohomology spaces.
pub fn classes_equal(a: &CohomologyClass, b: &CohomologyClass) -> Result<bool> {
    if !Arc::ptr_eq(&a.space, &b.space) && *a.space != *b.space {
        return Err(Error::SpaceMismatch);
    }
    Ok(a.space.is_coboundary(&a.representative.sub(&b.representative)))
}

/// `z(n)` as a `g`-module through an outer action `S`.
///
/// Coordinates on `z(n)` are those of its echelon basis.
#[derive(Clone, Debug)]
pub struct CenterModule {
    pub basis: Subspace,
    pub rep: Representation,
}

impl CenterModule {
    /// `S(x)` restricted to `z(n)`; derivations preserve the center and an
    /// outer action acts on it through a homomorphism.
    ///
    /// # Errors
    /// `NoLift` when the restriction is not a representation, which means
    /// `S` is not an outer action.
    pub fn new(g: &Arc<LieAlgebra>, n: &LieAlgebra, s: &OuterActionMap) -> Result<Self> {
        let basis = center(n);
        let zd = basis.dim();
        let mut action = Vec::with_capacity(g.dim());
        for x in 0..g.dim() {
            let mut cols = Vec::with_capacity(zd);
            for b in basis.basis() {
                let image = s.at(x).mul_vec(b);
                let coords = basis
                    .coordinates(&image)
                    .ok_or_else(|| Error::InvariantViolation(vec![format!("S(e{x}) does not preserve the center")]))?;
                cols.push(coords);
            }
            action.push(Matrix::from_columns(&cols, zd));
        }
        let rep = Representation::new(g.clone(), zd, action)
            .map_err(|_| Error::NoLift("S does not induce a g-module structure on z(n)".into()))?;
        Ok(CenterModule { basis, rep })
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// `n`-valued cochain with values in `z(n)` to `z(n)`-coordinates.
    pub fn to_center(&self, c: &Cochain) -> Option<Cochain> {
        let mut out = Vec::with_capacity(c.num_tuples() * self.dim());
        let m = c.value_dim();
        for r in 0..c.num_tuples() {
            out.extend(self.basis.coordinates(&c.flat()[r * m..(r + 1) * m])?);
        }
        Some(Cochain::from_flat(c.domain_dim(), c.degree(), self.dim(), out))
    }

    /// `z(n)`-coordinate cochain to an `n`-valued one.
    pub fn to_ambient(&self, c: &Cochain) -> Cochain {
        c.map_values(&self.basis.basis_matrix())
    }
}

/// An affine space of cochains, or an inconsistency certificate for the
/// linear system that was supposed to produce it.
#[derive(Clone, Debug)]
pub enum AffineCochains {
    Solved {
        particular: Cochain,
        directions: Vec<Cochain>,
    },
    Empty(InconsistencyCertificate),
}

impl AffineCochains {
    fn from_solution(sol: AffineSolution, domain_dim: usize, degree: usize, value_dim: usize) -> Self {
        match sol {
            AffineSolution::Solved {
                particular,
                homogeneous,
            } => AffineCochains::Solved {
                particular: Cochain::from_flat(domain_dim, degree, value_dim, particular),
                directions: homogeneous
                    .basis()
                    .iter()
                    .map(|v| Cochain::from_flat(domain_dim, degree, value_dim, v.clone()))
                    .collect(),
            },
            AffineSolution::Inconsistent(cert) => AffineCochains::Empty(cert),
        }
    }

    pub fn particular(&self) -> Option<&Cochain> {
        match self {
            AffineCochains::Solved { particular, .. } => Some(particular),
            AffineCochains::Empty(_) => None,
        }
    }

    pub fn directions(&self) -> &[Cochain] {
        match self {
            AffineCochains::Solved { directions, .. } => directions,
            AffineCochains::Empty(_) => &[],
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, AffineCochains::Empty(_))
    }
}

/// Solves the affine system `residual(c) = 0` over cochains of the given
/// shape; `n_out` is the length of the residual vector.
pub fn solve_cochains(
    domain_dim: usize,
    degree: usize,
    value_dim: usize,
    n_out: usize,
    residual: impl Fn(&Cochain) -> Vector,
) -> AffineCochains {
    let unknowns = binomial(domain_dim, degree) * value_dim;
    let sol = solve_affine_map(unknowns, n_out, |x| {
        residual(&Cochain::from_flat(domain_dim, degree, value_dim, x.to_vec()))
    });
    AffineCochains::from_solution(sol, domain_dim, degree, value_dim)
}

/// Residual of the factor-system equations `ad∘ω = R_S`, `d_S ω = 0`.
fn factor_system_residual(
    g: &LieAlgebra,
    n: &LieAlgebra,
    s: &OuterActionMap,
    r_s: &Cochain,
    omega: &Cochain,
) -> Vector {
    let mut out = sub_vectors(ad_compose(n, omega).flat(), r_s.flat());
    out.extend(covariant_differential(g, s, omega).expect("shapes agree").into_flat());
    out
}

/// All `ω ∈ C²(g, n)` with `R_S = ad∘ω` and `d_S ω = 0`.
///
/// The particular solution follows the pivot convention. `Empty` carries
/// a certificate against the stacked system `[ad∘ω; d_S ω] = [R_S; 0]`.
pub fn relative_cocycles(g: &LieAlgebra, n: &LieAlgebra, s: &OuterActionMap) -> AffineCochains {
    let (dg, dn) = (g.dim(), n.dim());
    let r_s = curvature(g, s);
    let unknowns = binomial(dg, 2) * dn;
    let equations = binomial(dg, 2) * dn * dn + binomial(dg, 3) * dn;
    let sol = solve_affine_map(unknowns, equations, |x| {
        let omega = Cochain::from_flat(dg, 2, dn, x.to_vec());
        factor_system_residual(g, n, s, &r_s, &omega)
    });
    AffineCochains::from_solution(sol, dg, 2, dn)
}

/// `ω ∈ C²(g, n)` with `ad∘ω = R_S`, pivot convention. Solved pairwise since
/// the equations decouple over basis pairs.
pub fn curvature_lift(g: &LieAlgebra, n: &LieAlgebra, s: &OuterActionMap) -> Option<Cochain> {
    let dn = n.dim();
    let ad_columns: Vec<Vector> = (0..dn).map(|k| n.ad_basis(k).flatten()).collect();
    let ad = Matrix::from_columns(&ad_columns, dn * dn);
    let r_s = curvature(g, s);
    let mut omega = Cochain::zero(g.dim(), 2, dn);
    for t in tuples(g.dim(), 2) {
        let w = solve(&ad, r_s.value(&t))?;
        omega.set(&t, w);
    }
    Some(omega)
}

/// Bilinear map `L × I → V` on basis elements of `L` and the echelon basis
/// of an ideal `I`: `table[x][i]` is the value on `(e_x, b_i)`.
pub type BilinearTable = Vec<Vec<Vector>>;

/// All 2-cocycles `F ∈ Z²(L, V)` with `F(x, b) = θ(x, b)` for `x ∈ L` and `b`
/// in the ideal.
pub fn theta_constrained_cocycles(
    l: &LieAlgebra,
    ideal: &Subspace,
    rep: &Representation,
    theta: &BilinearTable,
) -> Result<AffineCochains> {
    let dl = l.dim();
    let m = rep.space_dim();
    if theta.len() != dl
        || theta
            .iter()
            .any(|row| row.len() != ideal.dim() || row.iter().any(|v| v.len() != m))
    {
        return Err(Error::DimensionMismatch("theta table does not match L × I → V".into()));
    }
    let unknowns = binomial(dl, 2) * m;
    let equations = dl * ideal.dim() * m + binomial(dl, 3) * m;
    let sol = solve_affine_map(unknowns, equations, |x| {
        let f = Cochain::from_flat(dl, 2, m, x.to_vec());
        let mut out = Vec::with_capacity(equations);
        for (xi, row) in theta.iter().enumerate() {
            for (b, target) in ideal.basis().iter().zip(row) {
                let val = f.evaluate(&[l.basis_vector(xi), b.clone()]).expect("degree 2");
                out.extend(sub_vectors(&val, target));
            }
        }
        out.extend(
            crate::cochain::cochain_differential(rep, &f)
                .expect("shapes agree")
                .into_flat(),
        );
        out
    });
    Ok(AffineCochains::from_solution(sol, dl, 2, m))
}

/// Sum of a particular solution and a combination of directions.
pub fn affine_point(particular: &Cochain, directions: &[Cochain], coeffs: &[Scalar]) -> Cochain {
    let mut flat = particular.flat().to_vec();
    for (d, c) in directions.iter().zip(coeffs) {
        axpy(&mut flat, c, d.flat());
    }
    Cochain::from_flat(
        particular.domain_dim(),
        particular.degree(),
        particular.value_dim(),
        flat,
    )
}

/// Zero-valued class in the given space.
pub fn zero_class(space: Arc<CohomologySpace>) -> CohomologyClass {
    let g = space.rep().algebra().dim();
    let c = Cochain::from_flat(
        g,
        space.degree(),
        space.rep().space_dim(),
        zero_vector(binomial(g, space.degree()) * space.rep().space_dim()),
    );
    CohomologyClass::new(space, c).expect("zero is a cocycle")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::cochain::trivial_differential;

    fn trivial(alg: LieAlgebra, dim: usize) -> Representation {
        Representation::trivial(Arc::new(alg), dim)
    }

    #[test]
    fn heisenberg_second_cohomology() {
        let h = cohomology(&trivial(catalog::heisenberg3(), 1), 2).unwrap();
        assert_eq!(h.h_dim(), 2);
        let basis = h.class_basis();
        let space = Arc::new(h);
        let a = CohomologyClass::new(space.clone(), basis[0].clone()).unwrap();
        let b = CohomologyClass::new(space, basis[1].clone()).unwrap();
        assert!(!classes_equal(&a, &b).unwrap());
        assert!(classes_equal(&a, &a).unwrap());
    }

    #[test]
    fn plane_second_cohomology_is_one() {
        assert_eq!(cohomology(&trivial(LieAlgebra::abelian(2), 1), 2).unwrap().h_dim(), 1);
    }

    #[test]
    fn sl2_trivial_cohomology() {
        let rep = trivial(catalog::sl2(), 1);
        let dims: Vec<usize> = (0..4).map(|p| cohomology(&rep, p).unwrap().h_dim()).collect();
        assert_eq!(dims, vec![1, 0, 0, 1]);
    }

    #[test]
    fn adding_a_coboundary_keeps_the_class() {
        let heis = catalog::heisenberg3();
        let rep = trivial(heis.clone(), 1);
        let space = Arc::new(cohomology(&rep, 2).unwrap());
        let c = space.class_basis()[0].clone();
        let beta = Cochain::from_matrix(&Matrix::from_ints(&[&[2, -1, 5]]));
        let shifted = c.add(&trivial_differential(&heis, &beta).unwrap());
        let a = CohomologyClass::new(space.clone(), c).unwrap();
        let b = CohomologyClass::new(space.clone(), shifted.clone()).unwrap();
        assert!(classes_equal(&a, &b).unwrap());
        assert_eq!(a.normalized(), b.normalized());
        let prim = space.primitive(&shifted.sub(a.representative())).unwrap();
        assert_eq!(
            trivial_differential(&heis, &prim).unwrap(),
            shifted.sub(a.representative())
        );
    }

    #[test]
    fn classes_in_different_spaces_do_not_compare() {
        let a = zero_class(Arc::new(cohomology(&trivial(catalog::heisenberg3(), 1), 2).unwrap()));
        let b = zero_class(Arc::new(cohomology(&trivial(catalog::heisenberg3(), 1), 1).unwrap()));
        assert!(matches!(classes_equal(&a, &b), Err(Error::SpaceMismatch)));
    }

    #[test]
    fn relative_cocycles_examples() {
        let k = LieAlgebra::abelian(1);
        let g = LieAlgebra::abelian(2);
        let s = OuterActionMap::zero(2, 1);
        match relative_cocycles(&g, &k, &s) {
            AffineCochains::Solved { directions, .. } => assert_eq!(directions.len(), 1),
            AffineCochains::Empty(_) => panic!("trivial action admits cocycles"),
        }
        // Not a homomorphism into the abelian derivation algebra gl(2).
        let n2 = LieAlgebra::abelian(2);
        let e12 = Matrix::from_ints(&[&[0, 1], &[0, 0]]);
        let e21 = Matrix::from_ints(&[&[0, 0], &[1, 0]]);
        let s = OuterActionMap::new(2, vec![e12, e21]).unwrap();
        assert!(relative_cocycles(&g, &n2, &s).is_empty());

        let heis = catalog::heisenberg3();
        let k1 = LieAlgebra::abelian(1);
        let d = Matrix::from_ints(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 3]]);
        let s = OuterActionMap::into_derivations(&heis, vec![d]).unwrap();
        let sol = relative_cocycles(&k1, &heis, &s);
        assert!(sol.particular().unwrap().is_zero());
    }
}

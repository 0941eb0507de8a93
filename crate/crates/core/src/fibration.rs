//! Linear sections `S = Σ ∩ P⁹ ⊂ X = Σ ∩ P¹⁰`, the value `h ∈ P³_S` of a
//! triple on `S`, and the map `C ↦ C ∩ S`.

use rand::Rng;

use crate::cubics::TwistedCubic;
use crate::error::{Error, Result};
use crate::field::{Field, FieldCtx};
use crate::linalg::Matrix;
use crate::poly::{common_zeros, Param};
use crate::proj::{random_subspace_through, ProjPoint, ProjSubspace};
use crate::symplectic::{Geometry, SigmaPoint, NW};

/// `P⁹ ⊂ P¹⁰ ⊂ P¹³`, with a basis `ℓ₀..ℓ₃` of the forms vanishing on `P⁹`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionTower<F: Field> {
    p9: ProjSubspace<F>,
    ell: Matrix<F>,
    p10: Option<ProjSubspace<F>>,
}

impl<F: Field> SectionTower<F> {
    pub fn new(p9: ProjSubspace<F>, p10: Option<ProjSubspace<F>>) -> Result<Self> {
        if p9.dim() != 9 || p9.ambient_len() != NW {
            return Err(Error::BadDim(p9.dim()));
        }
        if let Some(p) = &p10 {
            if p.dim() != 10 || !p.contains(&p9) {
                return Err(Error::BadDim(p.dim()));
            }
        }
        let ell = p9.equations();
        Ok(SectionTower { p9, ell, p10 })
    }

    pub fn p9(&self) -> &ProjSubspace<F> {
        &self.p9
    }
    pub fn ell(&self) -> &Matrix<F> {
        &self.ell
    }
    pub fn p10(&self) -> Option<&ProjSubspace<F>> {
        self.p10.as_ref()
    }

    /// `(ℓ₀(v) : ... : ℓ₃(v))`, or `None` on `P⁹`.
    pub fn value_at(&self, v: &[F]) -> Option<ProjPoint<F>> {
        ProjPoint::new(self.ell.mul_vec(v))
    }

    /// The `P¹⁰` through `P⁹` attached to `h`: zeros of `a·ℓ` for `a·h = 0`.
    pub fn p10_of(&self, h: &ProjPoint<F>) -> ProjSubspace<F> {
        let ctx = self.ell.ctx();
        let a = Matrix::row_vector(ctx, h.coords()).kernel();
        ProjSubspace::from_equations(&a.mul(&self.ell))
    }

    /// The point `h` of a `P¹⁰` containing `P⁹`.
    pub fn h_of(&self, p10: &ProjSubspace<F>) -> Result<ProjPoint<F>> {
        if p10.dim() != 10 || !p10.contains(&self.p9) {
            return Err(Error::NotOnSection);
        }
        let v = p10.basis().row_vecs().into_iter().find(|v| !self.p9.contains_vec(v)).unwrap();
        Ok(ProjPoint::new(self.ell.mul_vec(&v)).expect("vector off P⁹"))
    }

    pub fn contains(&self, p: &SigmaPoint<F>) -> bool {
        self.p9.contains_vec(p.w())
    }
}

/// A random section of the given projective dimension (9 or 10) through the
/// points; for 10, the tower also gets a random `P⁹` inside through them.
pub fn section_through<F: Field, R: Rng + ?Sized>(
    geo: &Geometry<F>,
    points: &[SigmaPoint<F>],
    target_dim: usize,
    rng: &mut R,
) -> Result<SectionTower<F>> {
    let vs: Vec<Vec<F>> = points.iter().map(|p| p.w().to_vec()).collect();
    let base = ProjSubspace::span_vecs(geo.ctx(), NW, &vs);
    if base.linear_dim() > target_dim + 1 || !(9..=10).contains(&target_dim) {
        return Err(Error::TooManyPoints);
    }
    if target_dim == 9 {
        return SectionTower::new(random_subspace_through(&base, 10, rng), None);
    }
    let p10 = random_subspace_through(&base, 11, rng);
    if base.linear_dim() > 10 {
        return Err(Error::TooManyPoints);
    }
    let p9 = hyperplane_through(&p10, &base, rng);
    SectionTower::new(p9, Some(p10))
}

/// A random hyperplane of `outer` containing `inner`.
pub fn hyperplane_through<F: Field, R: Rng + ?Sized>(
    outer: &ProjSubspace<F>,
    inner: &ProjSubspace<F>,
    rng: &mut R,
) -> ProjSubspace<F> {
    let ctx = outer.basis().ctx().clone();
    let inner_c = Matrix::from_rows(
        &ctx,
        outer.linear_dim(),
        inner.basis().row_vecs().iter().map(|v| outer.coords_of(v)).collect(),
    );
    // functionals on `outer` vanishing on `inner`
    let kill = inner_c.kernel();
    assert!(kill.rows() > 0, "inner subspace fills outer");
    loop {
        let f = crate::linalg::random_combination(&kill, rng);
        if f.iter().all(|x| x.is_zero()) {
            continue;
        }
        let sub = Matrix::row_vector(&ctx, &f).kernel();
        let vs: Vec<Vec<F>> = sub.row_vecs().iter().map(|x| outer.vec_from_coords(x)).collect();
        return ProjSubspace::span_vecs(&ctx, outer.ambient_len(), &vs);
    }
}

impl<F: Field> Geometry<F> {
    /// `h = f(ξ)` for a triple on `S`, evaluated at a random point of `C_ξ`.
    pub fn fibration_value<R: Rng + ?Sized>(
        &self,
        xi: &[SigmaPoint<F>; 3],
        s: &SectionTower<F>,
        rng: &mut R,
    ) -> Result<ProjPoint<F>> {
        if !xi.iter().all(|p| s.contains(p)) {
            return Err(Error::NotOnSection);
        }
        let c = self.cubic_through_triple(&xi[0], &xi[1], &xi[2])?;
        self.curve_fibration_value(&c, s, rng)
    }

    pub fn curve_fibration_value<R: Rng + ?Sized>(
        &self,
        c: &TwistedCubic<F>,
        s: &SectionTower<F>,
        rng: &mut R,
    ) -> Result<ProjPoint<F>> {
        if s.p9.contains(c.span3()) {
            return Err(Error::CubicInSection);
        }
        for _ in 0..50 {
            let t = c.random_param(rng);
            if let Some(h) = s.value_at(&c.plucker_at(&t)) {
                return Ok(h);
            }
        }
        Err(Error::RetriesExhausted(50))
    }

    /// `σ(C) = C ∩ S` as three distinct rational points.
    pub fn intersect_with_section(&self, c: &TwistedCubic<F>, s: &SectionTower<F>) -> Result<[SigmaPoint<F>; 3]> {
        let zeros = common_zeros(&c.forms_on_curve(s.ell())).ok_or(Error::CubicInSection)?;
        if zeros.length() != 3 {
            return Err(Error::WrongLength(zeros.length()));
        }
        let affine = &zeros.affine;
        if zeros.at_infinity > 1 || !affine.gcd(&affine.derivative()).degree().is_some_and(|d| d == 0) {
            return Err(Error::NonReduced);
        }
        let params = zeros.points(self.ctx()).map_err(|_| Error::NotSplit)?;
        let pts: Vec<SigmaPoint<F>> = params.iter().map(|t| c.point_at(self, t)).collect();
        Ok(pts.try_into().expect("three points"))
    }

    /// Whether `span3(C) ∩ P⁹` is exactly the plane of `C ∩ S`.
    pub fn span_meet_check(&self, c: &TwistedCubic<F>, s: &SectionTower<F>) -> bool {
        let Ok(xi) = self.intersect_with_section(c, s) else { return false };
        let vs: Vec<Vec<F>> = xi.iter().map(|p| p.w().to_vec()).collect();
        let plane = ProjSubspace::span_vecs(self.ctx(), NW, &vs);
        plane.dim() == 2 && c.span3().meet(s.p9()) == plane
    }

    pub fn same_fiber<R: Rng + ?Sized>(
        &self,
        a: &[SigmaPoint<F>; 3],
        b: &[SigmaPoint<F>; 3],
        s: &SectionTower<F>,
        rng: &mut R,
    ) -> Result<bool> {
        Ok(self.fibration_value(a, s, rng)? == self.fibration_value(b, s, rng)?)
    }

    /// A transverse triple together with a random `P⁹` through it.
    pub fn sample_triple_on_section<R: Rng + ?Sized>(&self, rng: &mut R) -> ([SigmaPoint<F>; 3], SectionTower<F>) {
        let (_, xi) = self.sample_cubic(rng);
        let s = section_through(self, &xi, 9, rng).expect("three points fit in a P⁹");
        (xi, s)
    }
}

/// Points of a cubic at three finite parameters.
pub fn triple_on_curve<F: Field>(geo: &Geometry<F>, c: &TwistedCubic<F>, params: [i64; 3]) -> [SigmaPoint<F>; 3] {
    params.map(|t| c.point_at(geo, &Param::Finite(geo.ctx().from_i64(t))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, PrimeField};
    use crate::rng::rng_from_seed;

    fn geo() -> Geometry<Fp> {
        Geometry::new(&PrimeField::new(10007).unwrap())
    }

    #[test]
    fn section_contains_points_and_is_seeded() {
        let g = geo();
        let mut rng = rng_from_seed(1);
        let (_, xi) = g.sample_cubic(&mut rng);
        let s1 = section_through(&g, &xi, 9, &mut rng_from_seed(7)).unwrap();
        let s2 = section_through(&g, &xi, 9, &mut rng_from_seed(7)).unwrap();
        assert_eq!(s1, s2);
        assert!(xi.iter().all(|p| s1.contains(p)));
        assert_eq!(s1.ell().rows(), 4);
        let t = section_through(&g, &xi, 10, &mut rng).unwrap();
        assert!(t.p10().unwrap().contains(t.p9()));
        assert!(xi.iter().all(|p| t.contains(p)));
        let many: Vec<_> = (0..12).map(|_| g.sample_sigma(&mut rng)).collect();
        assert_eq!(section_through(&g, &many, 9, &mut rng), Err(Error::TooManyPoints));
    }

    #[test]
    fn sigma_round_trip() {
        let g = geo();
        let mut rng = rng_from_seed(2);
        for _ in 0..10 {
            let (xi, s) = g.sample_triple_on_section(&mut rng);
            let c = g.cubic_through_triple(&xi[0], &xi[1], &xi[2]).unwrap();
            let back = g.intersect_with_section(&c, &s).unwrap();
            let mut a: Vec<_> = xi.iter().map(|p| p.plucker.clone()).collect();
            let mut b: Vec<_> = back.iter().map(|p| p.plucker.clone()).collect();
            a.sort_by_key(|p| format!("{p:?}"));
            b.sort_by_key(|p| format!("{p:?}"));
            assert_eq!(a, b);
            assert!(g.span_meet_check(&c, &s));
        }
    }

    #[test]
    fn value_is_independent_of_sample_point() {
        let g = geo();
        let mut rng = rng_from_seed(3);
        let (xi, s) = g.sample_triple_on_section(&mut rng);
        let h = g.fibration_value(&xi, &s, &mut rng).unwrap();
        for _ in 0..10 {
            assert_eq!(g.fibration_value(&xi, &s, &mut rng).unwrap(), h);
        }
        let rev = [xi[2].clone(), xi[0].clone(), xi[1].clone()];
        assert_eq!(g.fibration_value(&rev, &s, &mut rng).unwrap(), h);
        let p10 = s.p10_of(&h);
        assert_eq!(p10.dim(), 10);
        assert_eq!(s.h_of(&p10).unwrap(), h);
    }

    #[test]
    fn cubic_inside_section_is_flagged() {
        let g = geo();
        let mut rng = rng_from_seed(4);
        let (c, _) = g.sample_cubic(&mut rng);
        let p9 = random_subspace_through(c.span3(), 10, &mut rng);
        let s = SectionTower::new(p9, None).unwrap();
        assert_eq!(g.curve_fibration_value(&c, &s, &mut rng), Err(Error::CubicInSection));
        assert!(!g.span_meet_check(&c, &s));
    }
}

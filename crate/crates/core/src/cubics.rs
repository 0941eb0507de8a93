//! Twisted cubics on `Σ`: construction through a triple, spans, determinantal
//! nets, bisecant lines inside the span, the threefold `V_C ⊂ P⁵` swept by
//! the planes of a cubic, and intersections of cubics.

use rand::Rng;

use crate::error::{Error, Result};
use crate::exterior::plucker;
use crate::field::{Field, FieldCtx};
use crate::linalg::Matrix;
use crate::mpoly::{mul_forms, MonomialBasis};
use crate::poly::{common_zeros, BinaryForm, CommonZeros, Param, UniPoly};
use crate::proj::ProjSubspace;
use crate::symplectic::{Geometry, SigmaPoint, SymplecticFrame, NW};

/// The curve `t ↦ exp(tB)` (with `U∞` at `t = ∞`) in an adapted frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedCubic<F: Field> {
    frame: SymplecticFrame<F>,
    b: Matrix<F>,
    /// W-coordinates of the coefficients of `t^0..t^3`.
    coeffs: Vec<Vec<F>>,
    span3: ProjSubspace<F>,
}

/// A 2×3 matrix of linear forms on `P³`; `m[r][c]` holds four coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeterminantalNet<F: Field> {
    pub m: [[Vec<F>; 3]; 2],
}

/// A point where a plane meets `V_C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VcPoint<F: Field> {
    pub t: Param<F>,
    /// Frame coordinates of the `U0` component direction.
    pub u: Vec<F>,
    /// The point of `P⁵` in working coordinates.
    pub w: Vec<F>,
}

/// The linear system `M(t) u = 0`, `M(t) = G1 + t G2B`, describing which
/// points `(u, tBu)` of `V_C` lie on a given plane.
#[derive(Debug, Clone)]
pub struct VcSystem<F: Field> {
    pub g1: Matrix<F>,
    pub g2b: Matrix<F>,
    pub det: BinaryForm<F>,
}

/// Intersection of two cubics, located on the first one's parameter line.
#[derive(Debug, Clone)]
pub struct CurveIntersection<F: Field> {
    pub length: usize,
    pub zeros: CommonZeros<F>,
}

impl<F: Field> DeterminantalNet<F> {
    /// Hilbert-Burch matrix of a net of quadrics on `P³` (rows of `q` over
    /// the 10 quadratic monomials), from its two linear syzygies.
    pub fn from_quadrics(q: &Matrix<F>) -> Result<Self> {
        if q.rows() != 3 || q.cols() != 10 {
            return Err(Error::NetDim(q.rows()));
        }
        let ctx = q.ctx();
        let (b1, b2, b3) = (MonomialBasis::new(4, 1), MonomialBasis::new(4, 2), MonomialBasis::new(4, 3));
        let mut sys = Matrix::zeros(ctx, b3.len(), 12);
        for k in 0..3 {
            for i in 0..4 {
                let mut e = vec![ctx.zero(); 4];
                e[i] = ctx.one();
                let prod = mul_forms(&e, &b1, q.row(k), &b2, &b3);
                for (r, v) in prod.into_iter().enumerate() {
                    sys.set(r, 4 * k + i, v);
                }
            }
        }
        let syz = sys.kernel();
        if syz.rows() != 2 {
            return Err(Error::SyzygyFail);
        }
        let row = |r: usize| -> [Vec<F>; 3] { std::array::from_fn(|k| syz.row(r)[4 * k..4 * k + 4].to_vec()) };
        let net = DeterminantalNet { m: [row(0), row(1)] };
        let minors = net.minors();
        if ProjSubspace::span(&minors) != ProjSubspace::span(q) {
            return Err(Error::SyzygyFail);
        }
        Ok(net)
    }

    /// Net of a curve from points on it (homogeneous coordinates in `P³`).
    pub fn from_points(ctx: &F::Ctx, points: &[Vec<F>]) -> Result<Self> {
        let q = MonomialBasis::new(4, 2).eval_matrix(ctx, points).kernel();
        if q.rows() != 3 {
            return Err(Error::NetDim(q.rows()));
        }
        Self::from_quadrics(&q)
    }

    pub fn eval(&self, x: &[F]) -> Matrix<F> {
        let ctx = x[0].ctx();
        Matrix::from_fn(&ctx, 2, 3, |r, c| crate::linalg::dot(&self.m[r][c], x, &ctx))
    }

    pub fn rank_at(&self, x: &[F]) -> usize {
        self.eval(x).rank()
    }

    /// The three 2×2 minors as quadrics over the grlex basis.
    pub fn minors(&self) -> Matrix<F> {
        let ctx = self.m[0][0][0].ctx();
        let (b1, b2) = (MonomialBasis::new(4, 1), MonomialBasis::new(4, 2));
        let minor = |i: usize, j: usize| -> Vec<F> {
            let a = mul_forms(&self.m[0][i], &b1, &self.m[1][j], &b1, &b2);
            let b = mul_forms(&self.m[0][j], &b1, &self.m[1][i], &b1, &b2);
            a.into_iter().zip(b).map(|(x, y)| x - y).collect()
        };
        Matrix::from_rows(&ctx, 10, vec![minor(1, 2), minor(0, 2), minor(0, 1)])
    }

    /// The point of the curve where `s0 M_0(x) + s1 M_1(x) = 0`.
    pub fn point_for(&self, s0: &F, s1: &F) -> Option<Vec<F>> {
        let ctx = s0.ctx();
        let eq = Matrix::from_fn(&ctx, 3, 4, |c, i| {
            s0.clone() * self.m[0][c][i].clone() + s1.clone() * self.m[1][c][i].clone()
        });
        let k = eq.kernel();
        (k.rows() == 1).then(|| k.row(0).to_vec())
    }

    /// The unique line through `p` meeting the curve in a length-2 scheme:
    /// with `M(p) a = 0`, it is cut out by the two forms `M a`.
    pub fn secant_line(&self, p: &[F]) -> Result<Matrix<F>> {
        let ctx = p[0].ctx();
        let mp = self.eval(p);
        let a = mp.kernel();
        if a.rows() != 1 {
            return Err(Error::DegeneratePlane);
        }
        let a = a.row(0).to_vec();
        let forms = Matrix::from_fn(&ctx, 2, 4, |r, i| {
            (0..3).fold(ctx.zero(), |acc, c| acc + self.m[r][c][i].clone() * a[c].clone())
        });
        if forms.rank() != 2 {
            return Err(Error::DegeneratePlane);
        }
        Ok(forms.kernel())
    }
}

/// Outcome of comparing the secant-line formula with brute force over all
/// points of `P³(𝔽_q)` off the rank-one locus.
#[derive(Debug, Clone, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct SecantCensus {
    pub admissible: usize,
    /// Formula line equals the unique brute-force line of length ≥ 2.
    pub agree: usize,
    pub formula_degenerate: usize,
    /// Points lying on a plane where the restricted minors have rank ≤ 1.
    pub plane_conic: usize,
    /// Points where the formula and the brute-force census disagree.
    pub mismatches: usize,
}

/// All points of `P³(𝔽_p)`, normalized by the first nonzero coordinate.
pub fn projective_points(k: &crate::field::PrimeField, n1: usize) -> Vec<Vec<crate::field::Fp>> {
    let p = k.p();
    let mut out = Vec::new();
    for lead in 0..n1 {
        let free = n1 - lead - 1;
        for idx in 0..p.pow(free as u32) {
            let mut v = vec![k.zero(); n1];
            v[lead] = k.one();
            let mut r = idx;
            for x in v.iter_mut().skip(lead + 1) {
                *x = k.elem(r % p);
                r /= p;
            }
            out.push(v);
        }
    }
    out
}

/// Exhaustive census of the secant-line formula for a net over a small
/// prime field.
pub fn secant_census(k: &crate::field::PrimeField, net: &DeterminantalNet<crate::field::Fp>) -> SecantCensus {
    use crate::strata::quadric_on_line;
    let pts = projective_points(k, 4);
    let b2 = MonomialBasis::new(4, 2);
    let minors = net.minors();
    // planes where the minors restrict to at most one quadric
    let b2_3 = MonomialBasis::new(3, 2);
    let conic_planes: Vec<ProjSubspace<_>> = pts
        .iter()
        .filter_map(|h| {
            let plane = Matrix::row_vector(k, h).kernel();
            let restricted = Matrix::from_rows(
                k,
                b2_3.len(),
                (0..3).map(|r| crate::mpoly::substitute_linear(minors.row(r), &b2, &plane.transpose(), &b2_3)).collect(),
            );
            (restricted.rank() <= 1).then(|| ProjSubspace::span(&plane))
        })
        .collect();
    let mut census = SecantCensus::default();
    for p in &pts {
        if net.rank_at(p) < 2 {
            continue;
        }
        census.admissible += 1;
        let in_conic_plane = conic_planes.iter().any(|pl| pl.contains_vec(p));
        if in_conic_plane {
            census.plane_conic += 1;
        }
        // one point of each line through p on a coordinate hyperplane missing p
        let i = p.iter().position(|x| !x.is_zero()).unwrap();
        let secants: Vec<ProjSubspace<_>> = pts
            .iter()
            .filter(|q| q[i].is_zero())
            .filter(|q| {
                let forms: Vec<BinaryForm<_>> = (0..3).map(|r| quadric_on_line(&b2, minors.row(r), p, q)).collect();
                common_zeros(&forms).is_some_and(|z| z.length() >= 2)
            })
            .map(|q| ProjSubspace::span_vecs(k, 4, &[p.clone(), q.clone()]))
            .collect();
        let ok = match net.secant_line(p) {
            Ok(line) => {
                let agree = secants.len() == 1 && ProjSubspace::span(&line) == secants[0] && !in_conic_plane;
                census.agree += agree as usize;
                agree
            }
            Err(_) => {
                census.formula_degenerate += 1;
                in_conic_plane && secants.len() > 1
            }
        };
        census.mismatches += !ok as usize;
    }
    census
}

/// The standard twisted cubic `(s³ : s²t : st² : t³)`.
pub fn standard_cubic_point<F: Field>(s: &F, t: &F) -> Vec<F> {
    vec![
        s.clone() * s.clone() * s.clone(),
        s.clone() * s.clone() * t.clone(),
        s.clone() * t.clone() * t.clone(),
        t.clone() * t.clone() * t.clone(),
    ]
}

impl<F: Field> TwistedCubic<F> {
    pub fn new(geo: &Geometry<F>, frame: SymplecticFrame<F>, b: Matrix<F>) -> Result<Self> {
        if !b.is_symmetric() || b.rows() != 3 {
            return Err(Error::NotSymmetric);
        }
        if b.det().is_zero() {
            return Err(Error::NotTransverse);
        }
        let ctx = geo.ctx();
        let fm = frame.matrix();
        let bu = b.mul(&fm.submatrix(3, 0, 3, 6));
        let rows: Vec<Vec<UniPoly<F>>> = (0..3)
            .map(|r| {
                (0..6)
                    .map(|c| UniPoly::new(vec![fm.get(r, c).clone(), bu.get(r, c).clone()]))
                    .collect()
            })
            .collect();
        let p = plucker([&rows[0][..], &rows[1][..], &rows[2][..]]);
        let coeffs: Vec<Vec<F>> = (0..4)
            .map(|k| {
                let v: Vec<F> = p.iter().map(|f| f.coeff(k, ctx)).collect();
                geo.to_w(&v)
            })
            .collect();
        let span3 = ProjSubspace::span_vecs(ctx, NW, &coeffs);
        if span3.linear_dim() != 4 {
            return Err(Error::NotTransverse);
        }
        Ok(TwistedCubic { frame, b, coeffs, span3 })
    }

    pub fn frame(&self) -> &SymplecticFrame<F> {
        &self.frame
    }
    pub fn b(&self) -> &Matrix<F> {
        &self.b
    }
    pub fn span3(&self) -> &ProjSubspace<F> {
        &self.span3
    }
    /// W-coordinates of the coefficient of `t^k` in the Plücker curve.
    pub fn coeff(&self, k: usize) -> &[F] {
        &self.coeffs[k]
    }

    /// Plücker vector at a parameter (not normalized).
    pub fn plucker_at(&self, t: &Param<F>) -> Vec<F> {
        match t {
            Param::Infinity => self.coeffs[3].clone(),
            Param::Finite(t) => {
                let mut acc = self.coeffs[3].clone();
                for k in (0..3).rev() {
                    acc = crate::linalg::axpy(&self.coeffs[k], t, &acc);
                }
                acc
            }
        }
    }

    /// The Lagrangian plane at a parameter: `[I | tB]` in the frame, `U∞` at infinity.
    pub fn plane_at(&self, t: &Param<F>) -> Matrix<F> {
        match t {
            Param::Infinity => self.frame.uinf(),
            Param::Finite(t) => self.frame.chart_rows(&self.b.scale(t)),
        }
    }

    pub fn point_at(&self, geo: &Geometry<F>, t: &Param<F>) -> SigmaPoint<F> {
        geo.sigma_point(&self.plane_at(t))
    }

    /// The Plücker curve restricted to the linear forms (rows of `forms`),
    /// as binary cubics in the parameter.
    pub fn forms_on_curve(&self, forms: &Matrix<F>) -> Vec<BinaryForm<F>> {
        let ctx = forms.ctx();
        (0..forms.rows())
            .map(|r| {
                let c: Vec<F> = (0..4).map(|k| crate::linalg::dot(forms.row(r), &self.coeffs[k], ctx)).collect();
                BinaryForm::new(UniPoly::new(c), 3)
            })
            .collect()
    }

    /// Coordinates in `span3` of the point at `t`.
    pub fn span_coords_at(&self, t: &Param<F>) -> Vec<F> {
        self.span3.coords_of(&self.plucker_at(t))
    }

    pub fn net(&self) -> Result<DeterminantalNet<F>> {
        let ctx = self.span3.basis().ctx();
        let mut pts = vec![self.span_coords_at(&Param::Infinity)];
        for i in 0..7 {
            pts.push(self.span_coords_at(&Param::Finite(ctx.from_i64(i))));
        }
        DeterminantalNet::from_points(ctx, &pts)
    }

    /// Whether a W-vector lies on the curve.
    pub fn contains(&self, net: &DeterminantalNet<F>, w: &[F]) -> bool {
        self.span3.contains_vec(w) && net.rank_at(&self.span3.coords_of(w)) <= 1
    }

    /// The bisecant line through a point of `span3` off the curve.
    pub fn bisecant_line_in_span(&self, net: &DeterminantalNet<F>, p: &[F]) -> Result<ProjSubspace<F>> {
        let line = net.secant_line(&self.span3.coords_of(p))?;
        let vs = line.row_vecs().iter().map(|c| self.span3.vec_from_coords(c)).collect::<Vec<_>>();
        Ok(ProjSubspace::span_vecs(self.span3.basis().ctx(), NW, &vs))
    }

    /// Common zeros on this curve's parameter line of the equations of `other`:
    /// the linear forms of its span and its net minors.
    pub fn intersection(&self, other: &Self) -> Result<CurveIntersection<F>> {
        if self.span3 == other.span3 {
            return Err(Error::SameSpan);
        }
        let mut forms = self.forms_on_curve(&other.span3.equations());
        let net = other.net()?;
        let cs: Vec<Vec<F>> = (0..4).map(|k| other.span3.coords_of(&self.coeffs[k])).collect();
        let y: Vec<UniPoly<F>> = (0..4).map(|i| UniPoly::new((0..4).map(|k| cs[k][i].clone()).collect())).collect();
        let b2 = MonomialBasis::new(4, 2);
        let minors = net.minors();
        for r in 0..3 {
            let mut acc = UniPoly::zero();
            for (c, e) in minors.row(r).iter().zip(b2.exps()) {
                if c.is_zero() {
                    continue;
                }
                let mut term = UniPoly::constant(c.clone());
                for (i, &k) in e.iter().enumerate() {
                    for _ in 0..k {
                        term = &term * &y[i];
                    }
                }
                acc = &acc + &term;
            }
            forms.push(BinaryForm::new(acc, 6));
        }
        let zeros = common_zeros(&forms).ok_or(Error::SameSpan)?;
        Ok(CurveIntersection { length: zeros.length(), zeros })
    }

    /// Span equality plus membership of seven points of `self` on `other`.
    pub fn equals(&self, other: &Self) -> bool {
        if self.span3 != other.span3 {
            return false;
        }
        let Ok(net) = other.net() else { return false };
        let ctx = self.span3.basis().ctx();
        (0..7).all(|i| {
            let t = Param::Finite(ctx.from_i64(2 * i + 3));
            net.rank_at(&other.span3.coords_of(&self.plucker_at(&t))) <= 1
        })
    }

    pub fn random_param<R: Rng + ?Sized>(&self, rng: &mut R) -> Param<F> {
        Param::Finite(self.span3.basis().ctx().random(rng))
    }

    /// The system `M(t) = G1 + t G2 B` for a plane of `P⁵`.
    pub fn vc_system(&self, plane: &Matrix<F>) -> VcSystem<F> {
        let ann = plane.kernel();
        let g = ann.mul(&self.frame.matrix().transpose());
        let g1 = g.submatrix(0, 0, 3, 3);
        let g2b = g.submatrix(0, 3, 3, 3).mul(&self.b);
        let entries: Vec<Vec<UniPoly<F>>> = (0..3)
            .map(|r| {
                (0..3)
                    .map(|c| UniPoly::new(vec![g1.get(r, c).clone(), g2b.get(r, c).clone()]))
                    .collect()
            })
            .collect();
        let e = |r: usize, c: usize| &entries[r][c];
        let det = crate::exterior::det3([[e(0, 0), e(0, 1), e(0, 2)], [e(1, 0), e(1, 1), e(1, 2)], [e(2, 0), e(2, 1), e(2, 2)]]);
        VcSystem { g1, g2b, det: BinaryForm::new(det, 3) }
    }

    /// The three points where a plane meets `V_C`, when they are distinct and rational.
    pub fn plane_meets_vc(&self, plane: &Matrix<F>) -> Result<Vec<VcPoint<F>>> {
        let ctx = plane.ctx();
        let sys = self.vc_system(plane);
        if sys.det.is_zero() {
            return Err(Error::InOmegaConfig);
        }
        let zeros = common_zeros(std::slice::from_ref(&sys.det)).unwrap();
        let params = zeros.points(ctx).map_err(|_| Error::NotThreePoints)?;
        if params.len() != 3 || (0..3).any(|i| (0..i).any(|j| params[i] == params[j])) {
            return Err(Error::NotThreePoints);
        }
        params
            .into_iter()
            .map(|t| {
                let m = match &t {
                    Param::Finite(t) => sys.g1.add(&sys.g2b.scale(t)),
                    Param::Infinity => sys.g2b.clone(),
                };
                let k = m.kernel();
                if k.rows() != 1 {
                    return Err(Error::InOmegaConfig);
                }
                let u = k.row(0).to_vec();
                let ub = self.b.vec_mul(&u);
                let c: Vec<F> = match &t {
                    Param::Finite(t) => u.iter().cloned().chain(ub.iter().map(|x| x.clone() * t.clone())).collect(),
                    Param::Infinity => std::iter::repeat_n(ctx.zero(), 3).chain(ub.iter().cloned()).collect(),
                };
                Ok(VcPoint { t, u, w: self.frame.to_working(&c) })
            })
            .collect()
    }

    /// The line `{λ(u, 0) + μ(0, uB)}` of `V_C`, as two working-coordinate rows.
    pub fn horizontal_line(&self, u: &[F]) -> Matrix<F> {
        let ctx = self.b.ctx();
        let z = vec![ctx.zero(); 3];
        let a: Vec<F> = u.iter().cloned().chain(z.iter().cloned()).collect();
        let b: Vec<F> = z.into_iter().chain(self.b.vec_mul(u)).collect();
        Matrix::from_rows(ctx, 6, vec![self.frame.to_working(&a), self.frame.to_working(&b)])
    }

    /// Whether a working vector lies on `V_C`: in frame coordinates `(v1, v2)`
    /// the vectors `B v1` and `v2` are dependent.
    pub fn vc_contains(&self, x: &[F]) -> bool {
        let ctx = self.b.ctx();
        let c = self.frame.to_frame(x);
        let bv1 = self.b.vec_mul(&c[..3]);
        Matrix::from_rows(ctx, 3, vec![bv1, c[3..].to_vec()]).rank() <= 1
    }
}

impl<F: Field> Geometry<F> {
    /// The unique twisted cubic through three points with pairwise transverse
    /// planes, passing through them at `t = 0, 1, ∞`.
    pub fn cubic_through_triple(&self, x: &SigmaPoint<F>, y: &SigmaPoint<F>, z: &SigmaPoint<F>) -> Result<TwistedCubic<F>> {
        let frame = self.adapted_frame(&x.lagrangian, &z.lagrangian)?;
        let b = self.chart_coordinates(&frame, &y.lagrangian)?;
        if b.det().is_zero() {
            return Err(Error::NotTransverse);
        }
        TwistedCubic::new(self, frame, b)
    }

    /// A random cubic through a random transverse triple.
    pub fn sample_cubic<R: Rng + ?Sized>(&self, rng: &mut R) -> (TwistedCubic<F>, [SigmaPoint<F>; 3]) {
        loop {
            let t = [self.sample_sigma(rng), self.sample_sigma(rng), self.sample_sigma(rng)];
            if let Ok(c) = self.cubic_through_triple(&t[0], &t[1], &t[2]) {
                return (c, t);
            }
        }
    }
}

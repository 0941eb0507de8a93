//! Segre threefolds `P¹×P¹×P¹ ⊂ Σ` cut out by a second 2-form `β`, the one
//! through a cubic and a tangent hyperplane, and the residual cubic `τ`.
//!
//! A Segre threefold is kept as its form `β` (working coordinates) and its
//! span `P⁷ = P(ker d_α ∩ ker d_β)`; the three conjugate lines are attached
//! when they are defined over the base field.

use crate::cubics::{DeterminantalNet, TwistedCubic, VcSystem};
use crate::dual_quartic::TangentHyperplaneSample;
use crate::error::{Error, Result};
use crate::exterior::plucker;
use crate::field::{Field, FieldCtx};
use crate::linalg::Matrix;
use crate::mpoly::{mul_forms, substitute_linear, MonomialBasis};
use crate::poly::{common_zeros, uniroots, BinaryForm, Param, UniPoly};
use crate::proj::ProjSubspace;
use crate::symplectic::{contraction_matrix, Geometry, SigmaPoint, NW};

/// Three lines of `P⁵`, each a 2×6 matrix of working rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugateLines<F: Field> {
    pub lines: [Matrix<F>; 3],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegreThreefold<F: Field> {
    beta: Matrix<F>,
    span7: ProjSubspace<F>,
    lines: Option<ConjugateLines<F>>,
}

impl<F: Field> ConjugateLines<F> {
    /// The plane through `a ∈ L₁`, `b ∈ L₂`, `c ∈ L₃` given by line coordinates.
    pub fn plane(&self, a: &[F], b: &[F], c: &[F]) -> Matrix<F> {
        let ctx = self.lines[0].ctx();
        let rows = [a, b, c].iter().zip(&self.lines).map(|(x, l)| l.vec_mul(x)).collect();
        Matrix::from_rows(ctx, 6, rows)
    }

    /// Pairwise disjoint, spanning, and pairwise `α`-orthogonal.
    pub fn is_conjugate(&self, geo: &Geometry<F>) -> bool {
        let all = self.lines[0].stack(&self.lines[1]).stack(&self.lines[2]);
        all.rank() == 6
            && (0..3).all(|i| (i + 1..3).all(|j| geo.gram(&self.lines[i], &self.lines[j]).is_zero()))
    }
}

impl<F: Field> SegreThreefold<F> {
    pub fn beta(&self) -> &Matrix<F> {
        &self.beta
    }
    pub fn span7(&self) -> &ProjSubspace<F> {
        &self.span7
    }
    pub fn lines(&self) -> Option<&ConjugateLines<F>> {
        self.lines.as_ref()
    }

    /// `Y = Σ ∩ P⁷`: a Lagrangian plane lies on `Y` iff `β` vanishes on it.
    pub fn contains(&self, geo: &Geometry<F>, w: &[F]) -> bool {
        self.span7.contains_vec(w) && geo.on_sigma(w).is_some()
    }

    pub fn contains_plane(&self, geo: &Geometry<F>, l: &Matrix<F>) -> bool {
        let b = l.mul(&self.beta).mul(&l.transpose());
        b.is_zero() && geo.gram(l, l).is_zero()
    }
}

/// `det(β − μ α)` as a polynomial in `μ`, by interpolation at `0..=6`.
pub fn pencil_determinant<F: Field>(alpha: &Matrix<F>, beta: &Matrix<F>) -> UniPoly<F> {
    let ctx = alpha.ctx();
    let xs: Vec<F> = (0..7).map(|i| ctx.from_i64(i)).collect();
    let ys: Vec<F> = xs.iter().map(|x| beta.sub(&alpha.scale(x)).det()).collect();
    let v = Matrix::from_fn(ctx, 7, 7, |r, c| xs[r].pow(c as u64));
    UniPoly::new(v.solve(&ys).expect("Vandermonde is invertible"))
}

impl<F: Field> Geometry<F> {
    /// The eigen-lines `{x : x(β − μα) = 0}` of the pencil, one per distinct root.
    pub fn segre_from_beta(&self, beta: &Matrix<F>) -> Result<ConjugateLines<F>> {
        if !beta.is_antisymmetric() || beta.det().is_zero() {
            return Err(Error::EigenDegenerate);
        }
        let f = pencil_determinant(self.alpha(), beta);
        let mut roots = uniroots(&f, self.ctx())?;
        if roots.len() != 6 {
            return Err(Error::NotSplit);
        }
        roots.dedup();
        let mut distinct: Vec<F> = Vec::new();
        for r in roots {
            if !distinct.contains(&r) {
                distinct.push(r);
            }
        }
        if distinct.len() != 3 {
            return Err(Error::EigenDegenerate);
        }
        let mut lines = Vec::new();
        for mu in &distinct {
            let l = beta.sub(&self.alpha().scale(mu)).left_kernel();
            if l.rows() != 2 {
                return Err(Error::EigenDegenerate);
            }
            lines.push(l);
        }
        let lines = ConjugateLines { lines: lines.try_into().unwrap() };
        if !lines.is_conjugate(self) {
            return Err(Error::ConjugacyFail);
        }
        Ok(lines)
    }

    /// The Segre threefold of `β`, with its span `P⁷`.
    pub fn segre_of_beta(&self, beta: Matrix<F>, lines: Option<ConjugateLines<F>>) -> Result<SegreThreefold<F>> {
        if !beta.is_antisymmetric() {
            return Err(Error::ConjugacyFail);
        }
        let eqs = self.dalpha_matrix().stack(&contraction_matrix(&beta));
        let k = eqs.kernel();
        if k.rows() != 8 {
            return Err(Error::EigenDegenerate);
        }
        let vs: Vec<Vec<F>> = k.row_vecs().iter().map(|v| self.to_w(v)).collect();
        let span7 = ProjSubspace::span_vecs(self.ctx(), NW, &vs);
        Ok(SegreThreefold { beta, span7, lines })
    }

    /// The form `β` whose conjugate lines are the horizontal lines of `V_C`
    /// through the three points of `plane ∩ V_C`.
    ///
    /// With `M(t) = G1 + t G2B` and `M(t₀)` invertible, the endomorphism
    /// `N = −M(t₀)⁻¹ G2B` has the `u_i` as eigenvectors, so
    /// `A = diag(N, B N B⁻¹)` has the lines as eigenspaces and `β = α(A·,·)`.
    pub fn beta_for_plane(&self, c: &TwistedCubic<F>, plane: &Matrix<F>) -> Result<(Matrix<F>, VcSystem<F>)> {
        let ctx = self.ctx();
        let sys = c.vc_system(plane);
        if sys.det.is_zero() {
            return Err(Error::InOmegaConfig);
        }
        let f = &sys.det.poly;
        let squarefree = f.gcd(&f.derivative()).degree() == Some(0);
        if !squarefree || sys.det.infinity_multiplicity() > 1 {
            return Err(Error::NotThreePoints);
        }
        let t0 = (0..5).map(|i| ctx.from_i64(i)).find(|t| !f.eval(t).is_zero()).expect("cubic has at most 3 roots");
        let m0 = sys.g1.add(&sys.g2b.scale(&t0));
        let n = m0.inverse().expect("nonzero determinant").mul(&sys.g2b).scale(&-ctx.one());
        let b = c.b();
        let n2 = b.mul(&n).mul(&b.inverse().expect("B invertible"));
        let mut a = Matrix::zeros(ctx, 6, 6);
        for r in 0..3 {
            for s in 0..3 {
                a.set(r, s, n.get(r, s).clone());
                a.set(r + 3, s + 3, n2.get(r, s).clone());
            }
        }
        let beta_frame = a.transpose().mul(self.alpha());
        if !beta_frame.is_antisymmetric() {
            return Err(Error::ConjugacyFail);
        }
        let fi = c.frame().inverse();
        Ok((fi.mul(&beta_frame).mul(&fi.transpose()), sys))
    }

    /// The Segre threefold containing `C` whose lines pass through `plane ∩ V_C`.
    pub fn segre_through_plane(&self, c: &TwistedCubic<F>, plane: &Matrix<F>) -> Result<SegreThreefold<F>> {
        let (beta, _) = self.beta_for_plane(c, plane)?;
        let lines = c.plane_meets_vc(plane).ok().map(|pts| ConjugateLines {
            lines: [c.horizontal_line(&pts[0].u), c.horizontal_line(&pts[1].u), c.horizontal_line(&pts[2].u)],
        });
        if let Some(l) = &lines {
            if !l.is_conjugate(self) {
                return Err(Error::ConjugacyFail);
            }
        }
        let y = self.segre_of_beta(beta, lines)?;
        let plane_w = self.to_w(&crate::symplectic::plucker20(plane));
        if !y.span7.contains(c.span3()) || !y.span7.contains_vec(&plane_w) {
            return Err(Error::ConjugacyFail);
        }
        Ok(y)
    }

    /// `Y_{C,t}`: the Segre threefold through `C` inside the tangent hyperplane.
    pub fn segre_through(&self, c: &TwistedCubic<F>, mark: &TangentHyperplaneSample<F>) -> Result<SegreThreefold<F>> {
        let h = mark.h.coords();
        let vanishes = |s: &ProjSubspace<F>| s.basis().row_vecs().iter().all(|v| crate::linalg::dot(h, v, self.ctx()).is_zero());
        if !vanishes(c.span3()) {
            return Err(Error::NotOnSection);
        }
        let y = self.segre_through_plane(c, &mark.tangency.lagrangian)?;
        if !vanishes(&y.span7) {
            return Err(Error::ConjugacyFail);
        }
        Ok(y)
    }

    /// The residual cubic `C'` with `Y ∩ P¹⁰ = C ∪ C'`.
    pub fn residual_cubic(
        &self,
        c: &TwistedCubic<F>,
        mark: &TangentHyperplaneSample<F>,
        p10: &ProjSubspace<F>,
    ) -> Result<TwistedCubic<F>> {
        let y = self.segre_through(c, mark)?;
        self.residual_in_segre(c, &y, p10)
    }

    /// `C'` from `Y ∩ P¹⁰ = C ∪ C'`, without splitting anything.
    ///
    /// On `P⁵ = P⁷ ∩ P¹⁰` the quadrics of `Σ` cut out `C ∪ C'`; the linear
    /// forms `ℓ` with `ℓ·m ∈ I(C ∪ C')₂` for both equations `m` of `⟨C⟩`
    /// cut out `⟨C'⟩`, and the net of `C'` gives its rational points.
    pub fn residual_in_segre(&self, c: &TwistedCubic<F>, y: &SegreThreefold<F>, p10: &ProjSubspace<F>) -> Result<TwistedCubic<F>> {
        let ctx = self.ctx();
        if !p10.contains(c.span3()) {
            return Err(Error::NotOnSection);
        }
        let p5 = y.span7.meet(p10);
        if p5.dim() != 5 {
            return Err(Error::ResidualDegenerate);
        }
        let q = self.restricted_sigma_quadrics(p5.basis()).row_basis();
        let (b1, b2) = (MonomialBasis::new(6, 1), MonomialBasis::new(6, 2));
        let ann = q.kernel();
        let span_c = Matrix::from_rows(ctx, 6, c.span3().basis().row_vecs().iter().map(|v| p5.coords_of(v)).collect());
        let m = span_c.kernel();
        if m.rows() != 2 {
            return Err(Error::ResidualDegenerate);
        }
        let mut sys = Matrix::zeros(ctx, 0, 6);
        for j in 0..2 {
            let cols: Vec<Vec<F>> = (0..6)
                .map(|i| {
                    let mut e = vec![ctx.zero(); 6];
                    e[i] = ctx.one();
                    ann.mul_vec(&mul_forms(&e, &b1, m.row(j), &b1, &b2))
                })
                .collect();
            for r in 0..ann.rows() {
                sys.push_row(&cols.iter().map(|col| col[r].clone()).collect::<Vec<_>>());
            }
        }
        let ell = sys.kernel();
        if ell.rows() != 2 {
            return Err(Error::ResidualDegenerate);
        }
        let span_c2 = ell.kernel();
        let target = MonomialBasis::new(4, 2);
        let q2 = Matrix::from_rows(
            ctx,
            target.len(),
            (0..q.rows()).map(|r| substitute_linear(q.row(r), &b2, &span_c2.transpose(), &target)).collect(),
        )
        .row_basis();
        let net = DeterminantalNet::from_quadrics(&q2).map_err(|_| Error::ResidualDegenerate)?;
        let to_w = |x: &[F]| p5.vec_from_coords(&span_c2.vec_mul(x));
        let c_net = c.net()?;
        let mut pts: Vec<SigmaPoint<F>> = Vec::new();
        let params = (0..40).map(|i| (ctx.one(), ctx.from_i64(i))).chain(std::iter::once((ctx.zero(), ctx.one())));
        for (s0, s1) in params {
            let Some(x) = net.point_for(&s0, &s1) else { continue };
            let w = to_w(&x);
            if c.contains(&c_net, &w) {
                continue;
            }
            let Some(p) = self.on_sigma(&w) else { return Err(Error::ResidualDegenerate) };
            if pts.iter().all(|o| self.transverse(&o.lagrangian, &p.lagrangian)) {
                pts.push(p);
            }
            if pts.len() == 4 {
                break;
            }
        }
        if pts.len() < 4 {
            return Err(Error::ResidualDegenerate);
        }
        let c2 = self.cubic_through_triple(&pts[0], &pts[1], &pts[2]).map_err(|_| Error::ResidualDegenerate)?;
        let net2 = c2.net()?;
        if !c2.contains(&net2, pts[3].w()) || !p10.contains(c2.span3()) || !y.span7.contains(c2.span3()) {
            return Err(Error::ResidualDegenerate);
        }
        if c.intersection(&c2).map(|i| i.length) != Ok(2) {
            return Err(Error::ResidualDegenerate);
        }
        Ok(c2)
    }

    /// Points of `C'` found by sweeping `a` over `L₁`: for fixed `a` the
    /// conditions on `(b, c) ∈ L₂ × L₃` are bilinear, and of the two
    /// solutions one lies on `C`. Needs the lines over the base field.
    pub fn residual_points_by_sweep(
        &self,
        c: &TwistedCubic<F>,
        y: &SegreThreefold<F>,
        p10: &ProjSubspace<F>,
        grid: usize,
    ) -> Result<Vec<Vec<F>>> {
        let ctx = self.ctx();
        let lines = y.lines.as_ref().ok_or(Error::NotSplit)?;
        let eqs = p10.equations();
        let c_net = c.net()?;
        let [l1, l2, l3] = &lines.lines;
        let mut out = Vec::new();
        for g in 0..grid {
            let a = crate::linalg::axpy(l1.row(0), &ctx.from_i64(g as i64), l1.row(1));
            // m[k][i][j] = ℓ_k(a ∧ b_i ∧ c_j)
            let m: Vec<[[F; 2]; 2]> = (0..eqs.rows())
                .map(|k| {
                    std::array::from_fn(|i| {
                        std::array::from_fn(|j| {
                            let w = self.to_w(&plucker([&a[..], l2.row(i), l3.row(j)]));
                            crate::linalg::dot(eqs.row(k), &w, ctx)
                        })
                    })
                })
                .collect();
            // rows of R(y) = Σ_i y_i m[k][i][·], with y = (1, s)
            let entry = |k: usize, j: usize| UniPoly::new(vec![m[k][0][j].clone(), m[k][1][j].clone()]);
            let mut minors = Vec::new();
            for k in 0..m.len() {
                for l in k + 1..m.len() {
                    let d = &(&entry(k, 0) * &entry(l, 1)) - &(&entry(k, 1) * &entry(l, 0));
                    minors.push(BinaryForm::new(d, 2));
                }
            }
            let Some(z) = common_zeros(&minors) else { continue };
            let Ok(ss) = z.points(ctx) else { continue };
            for s in ss {
                let (b, rmat) = match &s {
                    Param::Finite(s) => (
                        crate::linalg::axpy(l2.row(0), s, l2.row(1)),
                        Matrix::from_fn(ctx, m.len(), 2, |k, j| m[k][0][j].clone() + s.clone() * m[k][1][j].clone()),
                    ),
                    Param::Infinity => (l2.row(1).to_vec(), Matrix::from_fn(ctx, m.len(), 2, |k, j| m[k][1][j].clone())),
                };
                let zk = rmat.kernel();
                if zk.rows() != 1 {
                    continue;
                }
                let cv = l3.vec_mul(zk.row(0));
                let w = self.to_w(&plucker([&a[..], &b[..], &cv[..]]));
                if !c.contains(&c_net, &w) {
                    out.push(w);
                }
            }
        }
        Ok(out)
    }
}

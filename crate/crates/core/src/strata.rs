//! Orbit strata `Σ ⊂ Ω ⊂ F ⊂ P(W)`: membership tests, the quartic invariant
//! `λ` with its endomorphism `K`, bisecant decomposition, `Ω`-witnesses, the
//! quadrics cutting out `Σ`, and point samplers.

use rand::Rng;

use crate::error::{Error, Result};
use crate::exterior::{self, plucker, TOP};
use crate::field::{Field, FieldCtx};
use crate::linalg::Matrix;
use crate::mpoly::MonomialBasis;
use crate::poly::{common_zeros, BinaryForm, Param, UniPoly};
use crate::proj::{ProjPoint, ProjSubspace};
use crate::symplectic::{Geometry, SigmaPoint, NW};

/// Seed of the deterministic sample used for the cached quadric ideal.
const QUADRIC_SEED: u64 = 0x51_67_4d_41;
/// Points used for the quadric ideal, plus the stabilization batch.
pub const QUADRIC_POINTS: usize = 150;
pub const QUADRIC_EXTRA: usize = 20;

/// Result of the stratum decision procedure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StratumLabel<F: Field> {
    Sigma(SigmaPoint<F>),
    Omega { x_omega: ProjPoint<F> },
    FSmoothLocus { tangency: SigmaPoint<F> },
    Generic { lambda: F },
}

impl<F: Field> StratumLabel<F> {
    pub fn name(&self) -> &'static str {
        match self {
            StratumLabel::Sigma(_) => "SIGMA",
            StratumLabel::Omega { .. } => "OMEGA",
            StratumLabel::FSmoothLocus { .. } => "F_SMOOTH_LOCUS",
            StratumLabel::Generic { .. } => "GENERIC",
        }
    }
}

/// A bisecant (or tangent, when `p == q`) line through a point of `P(W)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BisecantWitness<F: Field> {
    pub p: SigmaPoint<F>,
    pub q: SigmaPoint<F>,
    pub line: ProjSubspace<F>,
}

/// The data of a point of `Ω ∖ Σ`.
#[derive(Debug, Clone)]
pub struct OmegaWitness<F: Field> {
    /// Common point of the Lagrangian planes, a vector of `V`.
    pub x_omega: ProjPoint<F>,
    /// `P⁴_ω` in W-coordinates.
    pub p4: ProjSubspace<F>,
    /// The quadric `Q_ω` in the coordinates of `p4`'s basis.
    pub quadric: Vec<F>,
}

/// A quadratic form on W evaluated on a line `a + t b`, as a binary form.
pub fn quadric_on_line<F: Field>(basis: &MonomialBasis, q: &[F], a: &[F], b: &[F]) -> BinaryForm<F> {
    let qa = basis.eval(q, a);
    let qb = basis.eval(q, b);
    let ab: Vec<F> = a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect();
    let mid = basis.eval(q, &ab) - qa.clone() - qb.clone();
    BinaryForm::new(UniPoly::new(vec![qa, mid, qb]), 2)
}

impl<F: Field> Geometry<F> {
    /// The 6×6 endomorphism `K` of `v ↦ (ι_v ω) ∧ ω ∈ ∧⁵V ≅ V` and the
    /// invariant `λ` with `K² = λ·I`; eigenvectors are columns (`K v = μ v`).
    pub fn hitchin_endo(&self, w: &[F]) -> (Matrix<F>, F) {
        let ctx = self.ctx();
        let om = exterior::from_triples(ctx, &self.from_w(w));
        let mut k = Matrix::zeros(ctx, 6, 6);
        for i in 0..6 {
            let eta = exterior::wedge(ctx, &exterior::interior(ctx, i, &om), &om);
            for j in 0..6 {
                let rest = TOP ^ (1 << j);
                let s = ctx.from_i64(exterior::merge_sign(1 << j, rest));
                k.set(i, j, s * eta[rest].clone());
            }
        }
        let k2 = k.mul(&k);
        let tr = (0..6).fold(ctx.zero(), |a, i| a + k2.get(i, i).clone());
        (k, tr / ctx.from_i64(6))
    }

    pub fn lambda(&self, w: &[F]) -> F {
        self.hitchin_endo(w).1
    }

    /// `{v : v ∧ ω = 0}`, as rows.
    pub fn support_space(&self, w: &[F]) -> Matrix<F> {
        let ctx = self.ctx();
        let om = exterior::from_triples(ctx, &self.from_w(w));
        let quads: Vec<usize> = (0..64usize).filter(|m| m.count_ones() == 4).collect();
        let mut m = Matrix::zeros(ctx, quads.len(), 6);
        for i in 0..6 {
            let e = {
                let mut v = vec![ctx.zero(); 6];
                v[i] = ctx.one();
                exterior::basis_vector_form(ctx, &v)
            };
            let prod = exterior::wedge(ctx, &e, &om);
            for (r, &q) in quads.iter().enumerate() {
                m.set(r, i, prod[q].clone());
            }
        }
        m.kernel()
    }

    /// Membership in `Σ`, returning the point with its Lagrangian when true.
    pub fn on_sigma(&self, w: &[F]) -> Option<SigmaPoint<F>> {
        let s = self.support_space(w);
        if s.rows() != 3 || !self.gram(&s, &s).is_zero() {
            return None;
        }
        let p = self.sigma_point(&s);
        (p.plucker == ProjPoint::new(w.to_vec())?).then_some(p)
    }

    /// Decomposes `w` along its bisecant line, or returns the tangency point.
    pub fn bisecant_decompose(&self, w: &[F]) -> Result<BisecantWitness<F>> {
        let ctx = self.ctx();
        let (k, lambda) = self.hitchin_endo(w);
        let rank = k.rank();
        if rank <= 1 {
            return Err(Error::InOmega);
        }
        if lambda.is_zero() {
            let ker = k.kernel();
            if ker.rows() != 3 || !self.gram(&ker, &ker).is_zero() {
                return Err(Error::InOmega);
            }
            let p = self.sigma_point(&ker);
            let line = ProjSubspace::span_vecs(ctx, NW, &[w.to_vec(), p.w().to_vec()]);
            return Ok(BisecantWitness { p: p.clone(), q: p, line });
        }
        let s = lambda.sqrt().ok_or(Error::NotSplit)?;
        let id = Matrix::identity(ctx, 6);
        let eig = |mu: &F| k.sub(&id.scale(mu)).kernel();
        let (lp, lq) = (eig(&s), eig(&-s.clone()));
        if lp.rows() != 3 || lq.rows() != 3 {
            return Err(Error::InOmega);
        }
        let p = self.sigma_point(&lp);
        let q = self.sigma_point(&lq);
        let line = ProjSubspace::span_vecs(ctx, NW, &[p.w().to_vec(), q.w().to_vec()]);
        debug_assert!(line.contains_vec(w));
        Ok(BisecantWitness { p, q, line })
    }

    /// `x(ω)`, `P⁴_ω = (x ∧ ∧²V) ∩ W` and the quadric `Q_ω` on it.
    pub fn omega_witness(&self, w: &[F]) -> Result<OmegaWitness<F>> {
        if self.on_sigma(w).is_some() {
            return Err(Error::NotInOmega);
        }
        let (k, _) = self.hitchin_endo(w);
        if k.rank() != 1 {
            return Err(Error::NotInOmega);
        }
        let col = (0..6).find(|&c| k.col(c).iter().any(|x| !x.is_zero())).unwrap();
        let x = k.col(col);
        let p4 = self.p4_through(&x);
        if p4.linear_dim() != 5 || !p4.contains_vec(w) {
            return Err(Error::NotInOmega);
        }
        let quadric = self.restricted_sigma_quadrics(p4.basis()).row_basis();
        if quadric.rows() != 1 {
            return Err(Error::NotInOmega);
        }
        Ok(OmegaWitness { x_omega: ProjPoint::new(x).unwrap(), p4, quadric: quadric.row(0).to_vec() })
    }

    /// `(x ∧ ∧²V) ∩ W` in W-coordinates.
    pub fn p4_through(&self, x: &[F]) -> ProjSubspace<F> {
        let ctx = self.ctx();
        let mut rows = Vec::new();
        for i in 0..6 {
            for j in i + 1..6 {
                let mut ei = vec![ctx.zero(); 6];
                let mut ej = vec![ctx.zero(); 6];
                ei[i] = ctx.one();
                ej[j] = ctx.one();
                rows.push(plucker([x, &ei[..], &ej[..]]));
            }
        }
        let m = Matrix::from_rows(ctx, exterior::N3, rows);
        let y = m.mul(&self.dalpha_matrix().transpose()).left_kernel();
        let vs: Vec<Vec<F>> = y.mul(&m).row_vecs().iter().map(|v| self.to_w(v)).collect();
        ProjSubspace::span(&Matrix::from_rows(ctx, NW, vs))
    }

    /// Samples points of `Q_ω = P⁴_ω ∩ Σ` by intersecting random lines.
    pub fn sample_q_omega<R: Rng + ?Sized>(
        &self,
        wit: &OmegaWitness<F>,
        count: usize,
        rng: &mut R,
    ) -> Result<Vec<SigmaPoint<F>>> {
        let basis = MonomialBasis::new(5, 2);
        let mut out = Vec::new();
        let mut attempts = 0;
        while out.len() < count {
            attempts += 1;
            if attempts > 20 * count + 50 {
                return Err(Error::RetriesExhausted(attempts));
            }
            let a: Vec<F> = (0..5).map(|_| self.ctx().random(rng)).collect();
            let b: Vec<F> = (0..5).map(|_| self.ctx().random(rng)).collect();
            let f = quadric_on_line(&basis, &wit.quadric, &a, &b);
            let Some(z) = common_zeros(&[f]) else { continue };
            let Ok(params) = z.points(self.ctx()) else { continue };
            for t in params {
                let c = match t {
                    Param::Finite(t) => crate::linalg::axpy(&a, &t, &b),
                    Param::Infinity => b.clone(),
                };
                let w = wit.p4.vec_from_coords(&c);
                if let Some(p) = self.on_sigma(&w) {
                    out.push(p);
                }
            }
        }
        out.truncate(count);
        Ok(out)
    }

    pub fn stratum(&self, w: &[F]) -> StratumLabel<F> {
        if let Some(p) = self.on_sigma(w) {
            return StratumLabel::Sigma(p);
        }
        let (k, lambda) = self.hitchin_endo(w);
        if k.rank() <= 1 {
            if let Ok(wit) = self.omega_witness(w) {
                return StratumLabel::Omega { x_omega: wit.x_omega };
            }
        }
        if lambda.is_zero() {
            if let Ok(b) = self.bisecant_decompose(w) {
                return StratumLabel::FSmoothLocus { tangency: b.p };
            }
        }
        StratumLabel::Generic { lambda }
    }

    /// A point of `Ω ∖ Σ` together with the vector its planes share.
    pub fn sample_omega_with_x<R: Rng + ?Sized>(&self, rng: &mut R) -> (Vec<F>, Vec<F>) {
        let ctx = self.ctx();
        let g = self.random_symplectic(rng);
        let mut w = vec![ctx.zero(); NW];
        for _ in 0..3 {
            let (s11, s12, s22) = (ctx.random(rng), ctx.random(rng), ctx.random(rng));
            let o = ctx.zero();
            let i = ctx.one();
            let l = Matrix::from_rows(
                ctx,
                6,
                vec![
                    vec![i.clone(), o.clone(), o.clone(), o.clone(), o.clone(), o.clone()],
                    vec![o.clone(), i.clone(), o.clone(), o.clone(), s11, s12.clone()],
                    vec![o.clone(), o.clone(), i, o.clone(), s12, s22],
                ],
            )
            .mul(&g);
            let c = ctx.random_nonzero(rng);
            let p = self.to_w(&crate::symplectic::plucker20(&l));
            w = crate::linalg::axpy(&w, &c, &p);
        }
        (w, g.row(0).to_vec())
    }

    pub fn sample_omega<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<F> {
        self.sample_omega_with_x(rng).0
    }

    pub fn sample_generic<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<F> {
        self.random_w(rng)
    }

    /// `exp(B)` in the standard frame; over `Q` the coordinates stay small
    /// integers, which keeps elimination over the sample cheap.
    pub fn sample_sigma_in_chart<R: Rng + ?Sized>(&self, rng: &mut R) -> SigmaPoint<F> {
        let frame = self.standard_frame();
        self.exp_point(&frame, &self.random_symmetric(rng)).expect("the standard chart covers exp(B)")
    }

    /// Kernel of the evaluation of the 105 quadratic monomials at `points`;
    /// fails unless `extra` points leave it unchanged.
    pub fn sigma_quadric_ideal(&self, points: &[SigmaPoint<F>], extra: &[SigmaPoint<F>]) -> Result<Matrix<F>> {
        let basis = MonomialBasis::new(NW, 2);
        let pts: Vec<Vec<F>> = points.iter().map(|p| p.w().to_vec()).collect();
        let m = basis.eval_matrix(self.ctx(), &pts);
        let k1 = m.kernel();
        let more: Vec<Vec<F>> = extra.iter().map(|p| p.w().to_vec()).collect();
        let k2 = m.stack(&basis.eval_matrix(self.ctx(), &more)).kernel();
        if k1 != k2 {
            return Err(Error::RankUnstable);
        }
        Ok(k2)
    }

    /// The cached basis of quadrics through `Σ` (rows over the grlex basis).
    pub fn sigma_quadrics(&self) -> &Matrix<F> {
        self.quadrics.get_or_init(|| {
            let mut rng = crate::rng::rng_from_seed(QUADRIC_SEED);
            let pts: Vec<SigmaPoint<F>> = (0..QUADRIC_POINTS).map(|_| self.sample_sigma_in_chart(&mut rng)).collect();
            let extra: Vec<SigmaPoint<F>> = (0..QUADRIC_EXTRA).map(|_| self.sample_sigma_in_chart(&mut rng)).collect();
            self.sigma_quadric_ideal(&pts, &extra).expect("quadric ideal of Σ stabilizes")
        })
    }

    /// The quadrics of `Σ` pulled back along `y ↦ y S` for the rows `S` of a
    /// subspace basis, as rows over the quadratic monomials in `S.rows()` variables.
    pub fn restricted_sigma_quadrics(&self, s: &Matrix<F>) -> Matrix<F> {
        let basis = MonomialBasis::new(NW, 2);
        let target = MonomialBasis::new(s.rows(), 2);
        let st = s.transpose();
        let q = self.sigma_quadrics();
        let rows: Vec<Vec<F>> =
            (0..q.rows()).map(|r| crate::mpoly::substitute_linear(q.row(r), &basis, &st, &target)).collect();
        Matrix::from_rows(self.ctx(), target.len(), rows)
    }

    pub fn vanishes_on_sigma_quadrics(&self, w: &[F]) -> bool {
        let basis = MonomialBasis::new(NW, 2);
        let vals = basis.eval_all(w);
        self.sigma_quadrics().mul_vec(&vals).iter().all(|x| x.is_zero())
    }

    /// Length of the scheme `Σ ∩ line(a, b)` cut by the quadrics of `Σ`;
    /// `None` if the line lies in `Σ`.
    pub fn line_sigma_length(&self, a: &[F], b: &[F]) -> Option<usize> {
        let basis = MonomialBasis::new(NW, 2);
        let q = self.sigma_quadrics();
        let forms: Vec<BinaryForm<F>> = (0..q.rows()).map(|r| quadric_on_line(&basis, q.row(r), a, b)).collect();
        common_zeros(&forms).map(|z| z.length())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, PrimeField};
    use crate::rng::rng_from_seed;
    use crate::symplectic::plucker20;

    fn geo() -> Geometry<Fp> {
        Geometry::new(&PrimeField::new(10007).unwrap())
    }

    #[test]
    fn anchor_has_lambda_one() {
        let g = geo();
        let f = g.standard_frame();
        let w: Vec<Fp> = g.to_w(&plucker20(&f.u0())).iter().zip(g.to_w(&plucker20(&f.uinf()))).map(|(a, b)| *a + b).collect();
        let (k, l) = g.hitchin_endo(&w);
        assert!(l.is_one());
        assert_eq!(k.mul(&k), Matrix::identity(g.ctx(), 6));
        let b = g.bisecant_decompose(&w).unwrap();
        let pair = [b.p.plucker.clone(), b.q.plucker.clone()];
        assert!(pair.contains(&g.sigma_point(&f.u0()).plucker));
        assert!(pair.contains(&g.sigma_point(&f.uinf()).plucker));
    }

    #[test]
    fn lambda_homogeneous_of_degree_four() {
        let g = geo();
        let mut rng = rng_from_seed(1);
        for _ in 0..50 {
            let w = g.sample_generic(&mut rng);
            let c = g.ctx().random_nonzero(&mut rng);
            let cw = crate::linalg::scale_vec(&c, &w);
            assert_eq!(g.lambda(&cw), g.lambda(&w) * c.pow(4));
            let (k, l) = g.hitchin_endo(&w);
            assert_eq!(k.mul(&k), Matrix::identity(g.ctx(), 6).scale(&l));
        }
    }

    #[test]
    fn decomposables_have_zero_endomorphism() {
        let g = geo();
        let mut rng = rng_from_seed(2);
        for _ in 0..50 {
            let p = g.sample_sigma(&mut rng);
            let (k, l) = g.hitchin_endo(p.w());
            assert!(k.is_zero() && l.is_zero());
            assert_eq!(g.on_sigma(p.w()).unwrap().plucker, p.plucker);
        }
    }

    #[test]
    fn sum_of_transverse_decomposables_is_off_sigma() {
        let g = geo();
        let mut rng = rng_from_seed(3);
        let (p, q) = (g.sample_sigma(&mut rng), g.sample_sigma(&mut rng));
        let w: Vec<Fp> = p.w().iter().zip(q.w()).map(|(a, b)| *a + *b).collect();
        assert_eq!(g.support_space(&w).rows(), 0);
        assert!(g.on_sigma(&w).is_none());
    }

    #[test]
    fn tangent_points_lie_on_f() {
        let g = geo();
        let mut rng = rng_from_seed(4);
        for _ in 0..20 {
            let p = g.sample_sigma(&mut rng);
            let v = g.tangent_space(&p).unwrap().random_point(&mut rng);
            match g.stratum(&v) {
                StratumLabel::FSmoothLocus { tangency } => assert_eq!(tangency.plucker, p.plucker),
                other => panic!("unexpected {}", other.name()),
            }
        }
    }

    #[test]
    fn omega_samples_recover_common_point() {
        let g = geo();
        let mut rng = rng_from_seed(5);
        for _ in 0..5 {
            let (w, x) = g.sample_omega_with_x(&mut rng);
            let wit = g.omega_witness(&w).unwrap();
            assert_eq!(wit.x_omega, ProjPoint::new(x.clone()).unwrap());
            assert_eq!(wit.p4.dim(), 4);
            assert_eq!(g.stratum(&w).name(), "OMEGA");
            for p in g.sample_q_omega(&wit, 5, &mut rng).unwrap() {
                let mut m = p.lagrangian.clone();
                m.push_row(&x);
                assert_eq!(m.rank(), 3);
            }
        }
    }

    #[test]
    fn quadric_ideal_has_21_generators() {
        let g = geo();
        assert_eq!(g.sigma_quadrics().rows(), 21);
        let mut rng = rng_from_seed(6);
        let w = g.sample_generic(&mut rng);
        assert!(!g.vanishes_on_sigma_quadrics(&w));
        let p = g.sample_sigma(&mut rng);
        assert!(g.vanishes_on_sigma_quadrics(p.w()));
    }
}

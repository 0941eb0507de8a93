//! The symplectic 6-space `V`, the contraction `d_α`, the 14-space
//! `W = ker d_α`, Lagrangian subspaces, adapted frames and the exp chart.
//!
//! Vectors of `V` are row vectors in the standard basis `e1..e6`, and
//! `α(x, y) = x A yᵀ` where `A` pairs `e_i` with `e_{i+3}`. Three-forms are
//! 20-vectors over [`TRIPLES`]; points of `P(W)` use 14 intrinsic coordinates,
//! the values of the 3-form at the free columns of `d_α`.

use std::ops::{Add, Mul, Sub};
use std::sync::OnceLock;

use rand::Rng;

use crate::error::{Error, Result};
use crate::exterior::{plucker, top_pairing, N3, TRIPLES};
use crate::field::{Field, FieldCtx};
use crate::linalg::Matrix;
use crate::proj::{ProjPoint, ProjSubspace};

/// Dimension of `W`.
pub const NW: usize = 14;

/// Shared, immutable context: the field and all fixed linear data.
#[derive(Debug)]
pub struct Geometry<F: Field> {
    ctx: F::Ctx,
    alpha: Matrix<F>,
    dalpha: Matrix<F>,
    w_basis: Matrix<F>,
    free: Vec<usize>,
    pairing: Matrix<F>,
    pairing_inv: Matrix<F>,
    pub(crate) quadrics: OnceLock<Matrix<F>>,
}

/// A point of `Σ = LG(3, V)`: a Lagrangian 3-space and its Plücker point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaPoint<F: Field> {
    pub lagrangian: Matrix<F>,
    pub plucker: ProjPoint<F>,
}

impl<F: Field> SigmaPoint<F> {
    pub fn w(&self) -> &[F] {
        self.plucker.coords()
    }
}

/// A symplectic basis `f1..f6` (the rows of `m`), with `f1..f3` spanning
/// `U0` and `f4..f6` spanning `U∞`. Frame coordinates `c` correspond to the
/// working vector `c m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticFrame<F: Field> {
    m: Matrix<F>,
    inv: Matrix<F>,
}

impl<F: Field> SymplecticFrame<F> {
    pub fn from_matrix(m: Matrix<F>) -> Result<Self> {
        let inv = m.inverse().ok_or(Error::RankDeficient)?;
        Ok(SymplecticFrame { m, inv })
    }
    pub fn matrix(&self) -> &Matrix<F> {
        &self.m
    }
    pub fn inverse(&self) -> &Matrix<F> {
        &self.inv
    }
    pub fn to_working(&self, c: &[F]) -> Vec<F> {
        self.m.vec_mul(c)
    }
    pub fn to_frame(&self, x: &[F]) -> Vec<F> {
        self.inv.vec_mul(x)
    }
    /// Rows `[I | B] m`: the Lagrangian of the chart point `exp(B)`.
    pub fn chart_rows(&self, b: &Matrix<F>) -> Matrix<F> {
        let ctx = self.m.ctx();
        Matrix::identity(ctx, 3).hstack(b).mul(&self.m)
    }
    pub fn u0(&self) -> Matrix<F> {
        self.m.submatrix(0, 0, 3, 6)
    }
    pub fn uinf(&self) -> Matrix<F> {
        self.m.submatrix(3, 0, 3, 6)
    }
}

/// Element `a + bε` with `ε² = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dual<F> {
    pub a: F,
    pub b: F,
}

impl<F: Field> Add for Dual<F> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Dual { a: self.a + o.a, b: self.b + o.b }
    }
}
impl<F: Field> Sub for Dual<F> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Dual { a: self.a - o.a, b: self.b - o.b }
    }
}
impl<F: Field> Mul for Dual<F> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Dual { a: self.a.clone() * o.a.clone(), b: self.a * o.b + self.b * o.a }
    }
}

/// Plücker 20-vector of the row space of a 3×6 matrix.
pub fn plucker20<F: Field>(l: &Matrix<F>) -> Vec<F> {
    assert_eq!((l.rows(), l.cols()), (3, 6));
    plucker([l.row(0), l.row(1), l.row(2)])
}

/// Matrix of the contraction `u∧v∧w ↦ β(u,v)w − β(u,w)v + β(v,w)u` for an
/// antisymmetric 6×6 form `β`; column `n` is the image of triple `n`.
pub fn contraction_matrix<F: Field>(beta: &Matrix<F>) -> Matrix<F> {
    let ctx = beta.ctx();
    let mut d = Matrix::zeros(ctx, 6, N3);
    for (n, &[i, j, k]) in TRIPLES.iter().enumerate() {
        let add = |d: &mut Matrix<F>, r: usize, v: F| {
            let x = d.get(r, n).clone() + v;
            d.set(r, n, x);
        };
        add(&mut d, k, beta.get(i, j).clone());
        add(&mut d, j, -beta.get(i, k).clone());
        add(&mut d, i, beta.get(j, k).clone());
    }
    d
}

/// `x ↦ x + c α(v, x) v` as a matrix acting on row vectors.
fn transvection<F: Field>(alpha: &Matrix<F>, v: &[F], c: &F) -> Matrix<F> {
    let ctx = alpha.ctx();
    let av = alpha.mul_vec(v);
    let mut t = Matrix::identity(ctx, 6);
    for r in 0..6 {
        for s in 0..6 {
            let x = t.get(r, s).clone() + c.clone() * av[r].clone() * v[s].clone();
            t.set(r, s, x);
        }
    }
    t
}

impl<F: Field> Geometry<F> {
    pub fn new<C>(ctx: &C) -> Self
    where
        C: FieldCtx<Elem = F>,
        F: Field<Ctx = C>,
    {
        let mut alpha = Matrix::zeros(ctx, 6, 6);
        for i in 0..3 {
            alpha.set(i, i + 3, ctx.one());
            alpha.set(i + 3, i, -ctx.one());
        }
        let dalpha = contraction_matrix(&alpha);
        let w_basis = dalpha.kernel();
        let pivots = dalpha.rref().pivots;
        let free: Vec<usize> = (0..N3).filter(|c| !pivots.contains(c)).collect();
        assert_eq!(free.len(), NW);
        let pairing = Matrix::from_fn(ctx, NW, NW, |a, b| top_pairing(ctx, w_basis.row(a), w_basis.row(b)));
        let pairing_inv = pairing.inverse().expect("wedge pairing on W is nondegenerate");
        Geometry { ctx: ctx.clone(), alpha, dalpha, w_basis, free, pairing, pairing_inv, quadrics: OnceLock::new() }
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }
    pub fn alpha(&self) -> &Matrix<F> {
        &self.alpha
    }
    /// The 6×20 matrix of `d_α`.
    pub fn dalpha_matrix(&self) -> &Matrix<F> {
        &self.dalpha
    }
    /// Rows form the fixed basis of `W` inside `∧³V`.
    pub fn w_basis(&self) -> &Matrix<F> {
        &self.w_basis
    }
    pub fn pairing_matrix(&self) -> &Matrix<F> {
        &self.pairing
    }

    pub fn d_alpha(&self, omega: &[F]) -> Vec<F> {
        self.dalpha.mul_vec(omega)
    }

    pub fn in_w(&self, omega: &[F]) -> bool {
        self.d_alpha(omega).iter().all(|x| x.is_zero())
    }

    /// W-coordinates of a 3-form lying in `W`.
    pub fn to_w(&self, omega: &[F]) -> Vec<F> {
        debug_assert!(self.in_w(omega));
        self.free.iter().map(|&c| omega[c].clone()).collect()
    }

    /// The 3-form with the given W-coordinates.
    pub fn from_w(&self, w: &[F]) -> Vec<F> {
        self.w_basis.vec_mul(w)
    }

    pub fn alpha_form(&self, u: &[F], v: &[F]) -> F {
        crate::linalg::dot(u, &self.alpha.mul_vec(v), &self.ctx)
    }

    /// Gram matrix `L A Mᵀ` of `α` between the rows of two matrices.
    pub fn gram(&self, l: &Matrix<F>, m: &Matrix<F>) -> Matrix<F> {
        l.mul(&self.alpha).mul(&m.transpose())
    }

    pub fn is_lagrangian(&self, l: &Matrix<F>) -> Result<bool> {
        if l.rows() != 3 || l.cols() != 6 || l.rank() != 3 {
            return Err(Error::RankDeficient);
        }
        Ok(self.gram(l, l).is_zero())
    }

    /// The point of `Σ` of a Lagrangian 3-space (not checked).
    pub fn sigma_point(&self, l: &Matrix<F>) -> SigmaPoint<F> {
        let w = self.to_w(&plucker20(l));
        SigmaPoint { lagrangian: l.clone(), plucker: ProjPoint::new(w).expect("rank 3 rows") }
    }

    pub fn is_symplectic_basis(&self, m: &Matrix<F>) -> bool {
        m.mul(&self.alpha).mul(&m.transpose()) == self.alpha
    }

    /// Symplectic frame with `f1..f3` the given basis of `u0` and `f4..f6`
    /// the α-dual basis inside `uinf`.
    pub fn adapted_frame(&self, u0: &Matrix<F>, uinf: &Matrix<F>) -> Result<SymplecticFrame<F>> {
        let g = self.gram(u0, uinf);
        let ginv = g.inverse().ok_or(Error::NotTransverse)?;
        let dual = ginv.transpose().mul(uinf);
        let m = u0.stack(&dual);
        debug_assert!(self.is_symplectic_basis(&m));
        SymplecticFrame::from_matrix(m)
    }

    pub fn standard_frame(&self) -> SymplecticFrame<F> {
        SymplecticFrame::from_matrix(Matrix::identity(&self.ctx, 6)).unwrap()
    }

    /// `exp(B) = (1 : B : ∧²B : det B)` in the given frame.
    pub fn exp_point(&self, frame: &SymplecticFrame<F>, b: &Matrix<F>) -> Result<SigmaPoint<F>> {
        if !b.is_symmetric() || b.rows() != 3 {
            return Err(Error::NotSymmetric);
        }
        Ok(self.sigma_point(&frame.chart_rows(b)))
    }

    pub fn exp_point_at_infinity(&self, frame: &SymplecticFrame<F>) -> SigmaPoint<F> {
        self.sigma_point(&frame.uinf())
    }

    /// The symmetric `B` with `exp(B) = L` in the frame, if `L` is transverse to `U∞`.
    pub fn chart_coordinates(&self, frame: &SymplecticFrame<F>, l: &Matrix<F>) -> Result<Matrix<F>> {
        let c = l.mul(frame.inverse());
        let p = c.submatrix(0, 0, 3, 3);
        let q = c.submatrix(0, 3, 3, 3);
        let pinv = p.inverse().ok_or(Error::NotTransverse)?;
        Ok(pinv.mul(&q))
    }

    /// One of the eight coordinate Lagrangians `span(e_i or e_{i+3})`.
    pub fn coordinate_lagrangian(&self, choice: usize) -> Matrix<F> {
        let mut m = Matrix::zeros(&self.ctx, 3, 6);
        for i in 0..3 {
            let col = if choice >> i & 1 == 1 { i + 3 } else { i };
            m.set(i, col, self.ctx.one());
        }
        m
    }

    /// A frame in which `p` is the chart origin. The complement is the first
    /// coordinate Lagrangian transverse to `p`; one always exists.
    pub fn frame_centered_at(&self, p: &SigmaPoint<F>) -> Result<SymplecticFrame<F>> {
        (0..8)
            .find_map(|s| self.adapted_frame(&p.lagrangian, &self.coordinate_lagrangian(s)).ok())
            .ok_or(Error::ChartFailure)
    }

    /// Span of `exp(B)` and its six first-order deformations, computed with
    /// dual numbers, as 20-vectors.
    pub fn tangent_vectors_at_chart(&self, frame: &SymplecticFrame<F>, b: &Matrix<F>) -> Vec<Vec<F>> {
        let zero = self.ctx.zero();
        let one = self.ctx.one();
        let mut out = vec![plucker20(&frame.chart_rows(b))];
        for (i, j) in [(0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2)] {
            let mut rows: Vec<Vec<Dual<F>>> = Vec::with_capacity(3);
            for r in 0..3 {
                let mut c: Vec<Dual<F>> = (0..6)
                    .map(|s| {
                        let a = if s < 3 {
                            if s == r { one.clone() } else { zero.clone() }
                        } else {
                            b.get(r, s - 3).clone()
                        };
                        Dual { a, b: zero.clone() }
                    })
                    .collect();
                if r == i {
                    c[3 + j].b = one.clone();
                }
                if r == j {
                    c[3 + i].b = one.clone();
                }
                let w: Vec<Dual<F>> = (0..6)
                    .map(|col| {
                        (0..6).fold(Dual { a: zero.clone(), b: zero.clone() }, |acc, k| {
                            let f = frame.matrix().get(k, col).clone();
                            acc + c[k].clone() * Dual { a: f, b: zero.clone() }
                        })
                    })
                    .collect();
                rows.push(w);
            }
            let p = plucker([&rows[0][..], &rows[1][..], &rows[2][..]]);
            out.push(p.into_iter().map(|d| d.b).collect());
        }
        out
    }

    /// Projective tangent space `T_pΣ ≅ P⁶` inside `P(W)`.
    pub fn tangent_space(&self, p: &SigmaPoint<F>) -> Result<ProjSubspace<F>> {
        let frame = self.frame_centered_at(p)?;
        let b = Matrix::zeros(&self.ctx, 3, 3);
        let vs: Vec<Vec<F>> = self.tangent_vectors_at_chart(&frame, &b).iter().map(|v| self.to_w(v)).collect();
        Ok(ProjSubspace::span(&Matrix::from_rows(&self.ctx, NW, vs)))
    }

    /// The wedge pairing `ω ∧ ω' ∈ ∧⁶V` on W-coordinates.
    pub fn w_pairing(&self, a: &[F], b: &[F]) -> F {
        crate::linalg::dot(a, &self.pairing.mul_vec(b), &self.ctx)
    }

    /// The element `ω` of `W` with `pairing(ω, ·) = h`, for a covector `h`
    /// written in the basis dual to the W-coordinates.
    pub fn pairing_dual(&self, h: &[F]) -> Vec<F> {
        self.pairing_inv.transpose().mul_vec(h)
    }

    pub fn random_symmetric<R: Rng + ?Sized>(&self, rng: &mut R) -> Matrix<F> {
        let mut b = Matrix::zeros(&self.ctx, 3, 3);
        for i in 0..3 {
            for j in i..3 {
                let x = self.ctx.random(rng);
                b.set(i, j, x.clone());
                b.set(j, i, x);
            }
        }
        b
    }

    /// A random element of `Sp(6)` as a product of transvections.
    pub fn random_symplectic<R: Rng + ?Sized>(&self, rng: &mut R) -> Matrix<F> {
        let mut g = Matrix::identity(&self.ctx, 6);
        for _ in 0..12 {
            let v: Vec<F> = (0..6).map(|_| self.ctx.random(rng)).collect();
            let c = self.ctx.random(rng);
            g = g.mul(&transvection(&self.alpha, &v, &c));
        }
        g
    }

    pub fn random_frame<R: Rng + ?Sized>(&self, rng: &mut R) -> SymplecticFrame<F> {
        loop {
            if let Ok(f) = SymplecticFrame::from_matrix(self.random_symplectic(rng)) {
                return f;
            }
        }
    }

    /// A random point of `Σ`: `exp(B)` for random symmetric `B` in a random frame.
    pub fn sample_sigma<R: Rng + ?Sized>(&self, rng: &mut R) -> SigmaPoint<F> {
        let frame = self.random_frame(rng);
        let b = self.random_symmetric(rng);
        self.exp_point(&frame, &b).unwrap()
    }

    pub fn random_w<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<F> {
        loop {
            let w: Vec<F> = (0..NW).map(|_| self.ctx.random(rng)).collect();
            if w.iter().any(|x| !x.is_zero()) {
                return w;
            }
        }
    }

    /// Whether two Lagrangians meet only in 0.
    pub fn transverse(&self, a: &Matrix<F>, b: &Matrix<F>) -> bool {
        a.stack(b).rank() == 6
    }
}

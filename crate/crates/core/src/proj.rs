//! Projective points and linear subspaces.

use crate::field::{Field, FieldCtx};
use crate::linalg::Matrix;

/// A point of `P^n`, kept normalized so that its first nonzero coordinate is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint<F: Field> {
    coords: Vec<F>,
}

impl<F: Field> ProjPoint<F> {
    /// Returns `None` for the zero vector.
    pub fn new(coords: Vec<F>) -> Option<Self> {
        let lead = coords.iter().find(|x| !x.is_zero())?.inv().unwrap();
        Some(ProjPoint { coords: coords.into_iter().map(|x| x * lead.clone()).collect() })
    }
    pub fn coords(&self) -> &[F] {
        &self.coords
    }
    pub fn into_coords(self) -> Vec<F> {
        self.coords
    }
    /// Ambient projective dimension `n`.
    pub fn ambient_dim(&self) -> usize {
        self.coords.len() - 1
    }
}

/// Whether two vectors are nonzero multiples of each other (or both zero).
pub fn proportional<F: Field>(a: &[F], b: &[F]) -> bool {
    assert_eq!(a.len(), b.len());
    let Some(i) = a.iter().position(|x| !x.is_zero()) else {
        return b.iter().all(|x| x.is_zero());
    };
    if b[i].is_zero() {
        return false;
    }
    let s = b[i].clone() / a[i].clone();
    a.iter().zip(b).all(|(x, y)| x.clone() * s.clone() == *y)
}

/// A linear subspace of `P^n`, stored by the reduced row echelon basis of
/// its affine cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjSubspace<F: Field> {
    basis: Matrix<F>,
    pivots: Vec<usize>,
}

impl<F: Field> ProjSubspace<F> {
    /// The span of the rows of `m` (which need not be independent).
    pub fn span(m: &Matrix<F>) -> Self {
        let r = m.rref();
        let basis = r.reduced.submatrix(0, 0, r.rank, m.cols());
        ProjSubspace { basis, pivots: r.pivots }
    }

    pub fn span_vecs<C>(ctx: &C, n1: usize, vs: &[Vec<F>]) -> Self
    where
        C: FieldCtx<Elem = F>,
        F: Field<Ctx = C>,
    {
        Self::span(&Matrix::from_rows(ctx, n1, vs.to_vec()))
    }

    /// The zero locus of the linear forms given as rows of `eqs`.
    pub fn from_equations(eqs: &Matrix<F>) -> Self {
        Self::span(&eqs.kernel())
    }

    pub fn empty<C>(ctx: &C, n1: usize) -> Self
    where
        C: FieldCtx<Elem = F>,
        F: Field<Ctx = C>,
    {
        Self::span(&Matrix::zeros(ctx, 0, n1))
    }

    pub fn whole<C>(ctx: &C, n1: usize) -> Self
    where
        C: FieldCtx<Elem = F>,
        F: Field<Ctx = C>,
    {
        Self::span(&Matrix::identity(ctx, n1))
    }

    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }
    /// Columns of the leading ones; values there are intrinsic coordinates.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    /// Dimension of the affine cone.
    pub fn linear_dim(&self) -> usize {
        self.basis.rows()
    }
    /// Projective dimension; `-1` for the empty subspace.
    pub fn dim(&self) -> isize {
        self.basis.rows() as isize - 1
    }
    pub fn is_empty(&self) -> bool {
        self.basis.rows() == 0
    }
    /// Number of homogeneous coordinates of the ambient space.
    pub fn ambient_len(&self) -> usize {
        self.basis.cols()
    }

    pub fn contains_vec(&self, v: &[F]) -> bool {
        let mut m = self.basis.clone();
        m.push_row(v);
        m.rank() == self.linear_dim()
    }

    pub fn contains(&self, o: &Self) -> bool {
        self.join(o).linear_dim() == self.linear_dim()
    }

    pub fn join(&self, o: &Self) -> Self {
        Self::span(&self.basis.stack(&o.basis))
    }

    /// Linear forms vanishing on the subspace, as a subspace of the dual.
    pub fn orthogonal_complement(&self) -> Self {
        if self.is_empty() {
            return Self::whole(self.basis.ctx(), self.ambient_len());
        }
        Self::span(&self.basis.kernel())
    }

    /// Rows of a matrix of linear forms cutting out the subspace.
    pub fn equations(&self) -> Matrix<F> {
        self.orthogonal_complement().basis.clone()
    }

    pub fn meet(&self, o: &Self) -> Self {
        let eqs = self.equations().stack(&o.equations());
        Self::from_equations(&eqs)
    }

    /// Coordinates of a vector of the subspace with respect to the basis
    /// (the values at the pivot columns). The vector is assumed to lie in it.
    pub fn coords_of(&self, v: &[F]) -> Vec<F> {
        self.pivots.iter().map(|&c| v[c].clone()).collect()
    }

    /// The vector with the given basis coordinates.
    pub fn vec_from_coords(&self, c: &[F]) -> Vec<F> {
        self.basis.vec_mul(c)
    }

    pub fn random_point<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Vec<F> {
        loop {
            let v = crate::linalg::random_combination(&self.basis, rng);
            if v.iter().any(|x| !x.is_zero()) {
                return v;
            }
        }
    }
}

/// A random linear subspace of the given linear dimension containing `base`.
pub fn random_subspace_through<F: Field, R: rand::Rng + ?Sized>(
    base: &ProjSubspace<F>,
    linear_dim: usize,
    rng: &mut R,
) -> ProjSubspace<F> {
    let ctx = base.basis().ctx().clone();
    let n1 = base.ambient_len();
    let mut m = base.basis().clone();
    while m.rows() < linear_dim {
        let v: Vec<F> = (0..n1).map(|_| ctx.random(rng)).collect();
        let mut t = m.clone();
        t.push_row(&v);
        if t.rank() == t.rows() {
            m = t;
        }
    }
    ProjSubspace::span(&m)
}

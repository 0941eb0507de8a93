//! Dense matrices over an exact field.

use std::fmt;

use crate::field::{Field, FieldCtx};

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
    ctx: F::Ctx,
}

/// Output of [`Matrix::rref`].
#[derive(Debug, Clone)]
pub struct Rref<F: Field> {
    pub rank: usize,
    pub reduced: Matrix<F>,
    pub pivots: Vec<usize>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros<C>(ctx: &C, rows: usize, cols: usize) -> Self
    where
        C: FieldCtx<Elem = F>,
        F: Field<Ctx = C>,
    {
        Matrix { rows, cols, data: vec![ctx.zero(); rows * cols], ctx: ctx.clone() }
    }

    pub fn identity<C>(ctx: &C, n: usize) -> Self
    where
        C: FieldCtx<Elem = F>,
        F: Field<Ctx = C>,
    {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.set(i, i, ctx.one());
        }
        m
    }

    pub fn from_fn<C>(ctx: &C, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self
    where
        C: FieldCtx<Elem = F>,
        F: Field<Ctx = C>,
    {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data, ctx: ctx.clone() }
    }

    /// Builds from rows of equal length `cols`.
    pub fn from_rows<C>(ctx: &C, cols: usize, rows: Vec<Vec<F>>) -> Self
    where
        C: FieldCtx<Elem = F>,
        F: Field<Ctx = C>,
    {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r);
        }
        Matrix { rows: n, cols, data, ctx: ctx.clone() }
    }

    pub fn from_i64<C>(ctx: &C, rows: &[&[i64]]) -> Self
    where
        C: FieldCtx<Elem = F>,
        F: Field<Ctx = C>,
    {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(ctx, cols, rows.iter().map(|r| r.iter().map(|&x| ctx.from_i64(x)).collect()).collect())
    }

    pub fn row_vector<C>(ctx: &C, v: &[F]) -> Self
    where
        C: FieldCtx<Elem = F>,
        F: Field<Ctx = C>,
    {
        Self::from_rows(ctx, v.len(), vec![v.to_vec()])
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }
    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }
    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
    pub fn row_mut(&mut self, r: usize) -> &mut [F] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }
    pub fn row_vecs(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }
    pub fn col(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.ctx, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn scale(&self, a: &F) -> Self {
        Matrix { data: self.data.iter().map(|x| x.clone() * a.clone()).collect(), ..self.clone() }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.clone() + b.clone()).collect(),
            ..self.clone()
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.clone() - b.clone()).collect(),
            ..self.clone()
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        let mut out = Self::zeros(&self.ctx, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let v = out.get(i, j).clone() + a.clone() * o.get(k, j).clone();
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![self.ctx.zero(); self.cols];
        for (k, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = o.clone() + a.clone() * self.get(k, j).clone();
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|r| dot(self.row(r), v, &self.ctx)).collect()
    }

    /// Vertical concatenation.
    pub fn stack(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Matrix { rows: self.rows + o.rows, cols: self.cols, data, ctx: self.ctx.clone() }
    }

    /// Horizontal concatenation.
    pub fn hstack(&self, o: &Self) -> Self {
        assert_eq!(self.rows, o.rows);
        Self::from_fn(&self.ctx, self.rows, self.cols + o.cols, |r, c| {
            if c < self.cols { self.get(r, c).clone() } else { o.get(r, c - self.cols).clone() }
        })
    }

    pub fn push_row(&mut self, v: &[F]) {
        assert_eq!(v.len(), self.cols);
        self.data.extend(v.iter().cloned());
        self.rows += 1;
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self::from_fn(&self.ctx, idx.len(), self.cols, |r, c| self.get(idx[r], c).clone())
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        Self::from_fn(&self.ctx, self.rows, idx.len(), |r, c| self.get(r, idx[c]).clone())
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(&self.ctx, rows, cols, |r, c| self.get(r0 + r, c0 + c).clone())
    }

    /// Reduced row echelon form.
    pub fn rref(&self) -> Rref<F> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inv().unwrap();
            for j in c..m.cols {
                let v = m.get(r, j).clone() * inv.clone();
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(i, j).clone() - f.clone() * m.get(r, j).clone();
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { rank: r, reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis (as rows) of the right null space `{x : M x = 0}`.
    ///
    /// The basis is the canonical one read off the reduced form: one vector per
    /// free column, equal to 1 there and 0 at the other free columns.
    pub fn kernel(&self) -> Self {
        F::fast_kernel(self).unwrap_or_else(|| self.rref_kernel())
    }

    /// [`Matrix::kernel`] by plain elimination in the field.
    pub fn rref_kernel(&self) -> Self {
        let Rref { reduced, pivots, .. } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Self::zeros(&self.ctx, free.len(), self.cols);
        for (i, &f) in free.iter().enumerate() {
            k.set(i, f, self.ctx.one());
            for (r, &pc) in pivots.iter().enumerate() {
                k.set(i, pc, -reduced.get(r, f).clone());
            }
        }
        k
    }

    /// Basis of `{y : y M = 0}`.
    pub fn left_kernel(&self) -> Self {
        self.transpose().kernel()
    }

    /// Nonzero rows of the reduced form: a canonical basis of the row space.
    pub fn row_basis(&self) -> Self {
        let r = self.rref();
        r.reduced.submatrix(0, 0, r.rank, self.cols)
    }

    pub fn det(&self) -> F {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = self.ctx.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return self.ctx.zero();
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det = det * piv.clone();
            let inv = piv.inv().unwrap();
            for i in c + 1..n {
                let f = m.get(i, c).clone() * inv.clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m.get(i, j).clone() - f.clone() * m.get(c, j).clone();
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let aug = self.hstack(&Self::identity(&self.ctx, n));
        let r = aug.rref();
        if r.pivots.iter().take(n).copied().ne(0..n) || r.rank < n {
            return None;
        }
        Some(r.reduced.submatrix(0, n, n, n))
    }

    /// Some solution `x` of `M x = b`, if one exists.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let col = Self::from_fn(&self.ctx, self.rows, 1, |r, _| b[r].clone());
        let r = self.hstack(&col).rref();
        if r.pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![self.ctx.zero(); self.cols];
        for (i, &pc) in r.pivots.iter().enumerate() {
            x[pc] = r.reduced.get(i, self.cols).clone();
        }
        Some(x)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..=i).all(|j| *self.get(i, j) == -self.get(j, i).clone()))
    }
}

pub fn dot<F: Field>(a: &[F], b: &[F], ctx: &F::Ctx) -> F {
    a.iter().zip(b).fold(ctx.zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// `a + s b` componentwise.
pub fn axpy<F: Field>(a: &[F], s: &F, b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(x, y)| x.clone() + s.clone() * y.clone()).collect()
}

pub fn scale_vec<F: Field>(s: &F, v: &[F]) -> Vec<F> {
    v.iter().map(|x| s.clone() * x.clone()).collect()
}

/// Random linear combination of the rows.
pub fn random_combination<F: Field, R: rand::Rng + ?Sized>(m: &Matrix<F>, rng: &mut R) -> Vec<F> {
    let coeffs: Vec<F> = (0..m.rows()).map(|_| m.ctx().random(rng)).collect();
    m.vec_mul(&coeffs)
}

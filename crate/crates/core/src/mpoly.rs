//! Homogeneous forms as coefficient vectors over a monomial basis.
//!
//! Monomials of a fixed degree are listed in graded-lex order, i.e. by
//! decreasing exponent vectors: `x0^d, x0^(d-1) x1, ...`.

use std::collections::HashMap;

use crate::field::{Field, FieldCtx};
use crate::linalg::Matrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialBasis {
    nvars: usize,
    degree: usize,
    exps: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
}

fn push_exps(nvars: usize, left: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
    if cur.len() == nvars - 1 {
        cur.push(left as u8);
        out.push(cur.clone());
        cur.pop();
        return;
    }
    for e in (0..=left).rev() {
        cur.push(e as u8);
        push_exps(nvars, left - e, cur, out);
        cur.pop();
    }
}

/// `binom(n + d - 1, d)`, the number of degree-`d` monomials in `n` variables.
pub fn count_monomials(nvars: usize, degree: usize) -> usize {
    let mut c = 1usize;
    for i in 0..degree {
        c = c * (nvars + i) / (i + 1);
    }
    c
}

impl MonomialBasis {
    pub fn new(nvars: usize, degree: usize) -> Self {
        assert!(nvars > 0);
        let mut exps = Vec::with_capacity(count_monomials(nvars, degree));
        push_exps(nvars, degree, &mut Vec::new(), &mut exps);
        let index = exps.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        MonomialBasis { nvars, degree, exps, index }
    }
    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn degree(&self) -> usize {
        self.degree
    }
    pub fn len(&self) -> usize {
        self.exps.len()
    }
    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }
    pub fn exps(&self) -> &[Vec<u8>] {
        &self.exps
    }
    pub fn index_of(&self, e: &[u8]) -> Option<usize> {
        self.index.get(e).copied()
    }

    /// Values of all monomials at a point.
    pub fn eval_all<F: Field>(&self, x: &[F]) -> Vec<F> {
        assert_eq!(x.len(), self.nvars);
        let ctx = x[0].ctx();
        let pows: Vec<Vec<F>> = x
            .iter()
            .map(|xi| {
                let mut p = vec![ctx.one()];
                for _ in 0..self.degree {
                    let next = p.last().unwrap().clone() * xi.clone();
                    p.push(next);
                }
                p
            })
            .collect();
        self.exps
            .iter()
            .map(|e| {
                e.iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .fold(ctx.one(), |acc, (i, &k)| acc * pows[i][k as usize].clone())
            })
            .collect()
    }

    pub fn eval<F: Field>(&self, coeffs: &[F], x: &[F]) -> F {
        let ctx = x[0].ctx();
        crate::linalg::dot(coeffs, &self.eval_all(x), &ctx)
    }

    /// Matrix whose rows are [`Self::eval_all`] at the given points.
    pub fn eval_matrix<F: Field>(&self, ctx: &F::Ctx, points: &[Vec<F>]) -> Matrix<F> {
        let rows: Vec<Vec<F>> = points.iter().map(|p| self.eval_all(p)).collect();
        let mut m = Matrix::zeros(ctx, 0, self.len());
        for r in rows {
            m.push_row(&r);
        }
        m
    }
}

/// Product of two forms.
pub fn mul_forms<F: Field>(
    a: &[F],
    ba: &MonomialBasis,
    b: &[F],
    bb: &MonomialBasis,
    out: &MonomialBasis,
) -> Vec<F> {
    assert_eq!(out.degree, ba.degree + bb.degree);
    let ctx = a.first().or(b.first()).expect("nonempty basis").ctx();
    let mut c = vec![ctx.zero(); out.len()];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            let e: Vec<u8> = ba.exps[i].iter().zip(&bb.exps[j]).map(|(u, v)| u + v).collect();
            let k = out.index[&e];
            c[k] = c[k].clone() + x.clone() * y.clone();
        }
    }
    c
}

/// Substitutes `x_i = Σ_j s[i][j] y_j`, returning coefficients over `target`
/// (a basis of the same degree in `s.cols()` variables).
pub fn substitute_linear<F: Field>(
    coeffs: &[F],
    basis: &MonomialBasis,
    s: &Matrix<F>,
    target: &MonomialBasis,
) -> Vec<F> {
    assert_eq!(s.rows(), basis.nvars);
    assert_eq!((target.nvars, target.degree), (s.cols(), basis.degree));
    let ctx = s.ctx();
    let lin = MonomialBasis::new(s.cols(), 1);
    let mut partial: Vec<MonomialBasis> = Vec::new();
    for d in 0..=basis.degree {
        partial.push(MonomialBasis::new(s.cols(), d));
    }
    let mut out = vec![ctx.zero(); target.len()];
    for (c, e) in coeffs.iter().zip(&basis.exps) {
        if c.is_zero() {
            continue;
        }
        let mut acc = vec![c.clone()];
        let mut d = 0;
        for (i, &k) in e.iter().enumerate() {
            for _ in 0..k {
                acc = mul_forms(&acc, &partial[d], s.row(i), &lin, &partial[d + 1]);
                d += 1;
            }
        }
        for (o, a) in out.iter_mut().zip(acc) {
            *o = o.clone() + a;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::rng::rng_from_seed;

    #[test]
    fn counts_and_order() {
        assert_eq!(MonomialBasis::new(14, 4).len(), 2380);
        assert_eq!(MonomialBasis::new(14, 2).len(), 105);
        assert_eq!(count_monomials(4, 3), 20);
        let b = MonomialBasis::new(3, 2);
        assert_eq!(b.exps()[0], vec![2, 0, 0]);
        assert_eq!(b.exps()[1], vec![1, 1, 0]);
        assert_eq!(b.exps()[5], vec![0, 0, 2]);
    }

    #[test]
    fn substitution_commutes_with_evaluation() {
        let k = PrimeField::new(10007).unwrap();
        let mut rng = rng_from_seed(9);
        let b = MonomialBasis::new(5, 3);
        let t = MonomialBasis::new(2, 3);
        let f: Vec<_> = (0..b.len()).map(|_| k.random(&mut rng)).collect();
        let s = Matrix::from_fn(&k, 5, 2, |_, _| k.random(&mut rng));
        let g = substitute_linear(&f, &b, &s, &t);
        for _ in 0..10 {
            let y = vec![k.random(&mut rng), k.random(&mut rng)];
            let x = s.mul_vec(&y);
            assert_eq!(b.eval(&f, &x), t.eval(&g, &y));
        }
    }

    #[test]
    fn product_evaluates_to_product() {
        let k = PrimeField::new(101).unwrap();
        let mut rng = rng_from_seed(10);
        let (b1, b2, b3) = (MonomialBasis::new(4, 1), MonomialBasis::new(4, 2), MonomialBasis::new(4, 3));
        let f: Vec<_> = (0..4).map(|_| k.random(&mut rng)).collect();
        let g: Vec<_> = (0..10).map(|_| k.random(&mut rng)).collect();
        let h = mul_forms(&f, &b1, &g, &b2, &b3);
        let x: Vec<_> = (0..4).map(|_| k.random(&mut rng)).collect();
        assert_eq!(b3.eval(&h, &x), b1.eval(&f, &x) * b2.eval(&g, &x));
    }
}

//! Dense univariate polynomials and binary forms.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{Field, FieldCtx};
use crate::linalg::Matrix;

/// Dense polynomial, coefficients from the constant term up; no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniPoly<F: Field> {
    c: Vec<F>,
}

impl<F: Field> UniPoly<F> {
    pub fn new(mut c: Vec<F>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UniPoly { c }
    }
    pub fn zero() -> Self {
        UniPoly { c: Vec::new() }
    }
    pub fn constant(a: F) -> Self {
        Self::new(vec![a])
    }
    /// `t - a`.
    pub fn linear_root(a: &F) -> Self {
        let ctx = a.ctx();
        Self::new(vec![-a.clone(), ctx.one()])
    }
    pub fn coeffs(&self) -> &[F] {
        &self.c
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }
    pub fn lead(&self) -> Option<&F> {
        self.c.last()
    }
    /// Coefficient of `t^i`; zero beyond the degree.
    pub fn coeff(&self, i: usize, ctx: &F::Ctx) -> F {
        self.c.get(i).cloned().unwrap_or_else(|| ctx.zero())
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = x.ctx().zero();
        for a in self.c.iter().rev() {
            acc = acc * x.clone() + a.clone();
        }
        acc
    }

    pub fn scale(&self, a: &F) -> Self {
        Self::new(self.c.iter().map(|x| x.clone() * a.clone()).collect())
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some(l) => self.scale(&l.inv().unwrap()),
        }
    }

    pub fn derivative(&self) -> Self {
        if self.c.len() <= 1 {
            return Self::zero();
        }
        let ctx = self.c[0].ctx();
        Self::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a.clone() * ctx.from_i64(i as i64))
                .collect(),
        )
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let Some(nd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if nd < dd {
            return (Self::zero(), self.clone());
        }
        let ctx = d.c[0].ctx();
        let linv = d.lead().unwrap().inv().unwrap();
        let mut r = self.c.clone();
        let mut q = vec![ctx.zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let f = r[k + dd].clone() * linv.clone();
            if f.is_zero() {
                continue;
            }
            for (j, dj) in d.c.iter().enumerate() {
                r[k + j] = r[k + j].clone() - f.clone() * dj.clone();
            }
            q[k] = f;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^e mod m`.
    pub fn powmod(&self, mut e: u64, m: &Self) -> Self {
        let ctx = m.c[0].ctx();
        let mut base = self.div_rem(m).1;
        let mut acc = Self::constant(ctx.one()).div_rem(m).1;
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).div_rem(m).1;
            }
            base = (&base * &base).div_rem(m).1;
            e >>= 1;
        }
        acc
    }

    /// Product of the distinct irreducible factors (valid in characteristic
    /// zero and whenever the degree is below the characteristic).
    pub fn squarefree_part(&self) -> Self {
        let g = self.gcd(&self.derivative());
        if g.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        self.div_rem(&g).0.monic()
    }

    pub fn from_roots(roots: &[F], ctx: &F::Ctx) -> Self {
        roots
            .iter()
            .fold(Self::constant(ctx.one()), |acc, r| &acc * &Self::linear_root(r))
    }

    /// Multiplicity of `a` as a root.
    pub fn multiplicity(&self, a: &F) -> usize {
        let lin = Self::linear_root(a);
        let mut f = self.clone();
        let mut m = 0;
        while !f.is_zero() && f.degree() > Some(0) {
            let (q, r) = f.div_rem(&lin);
            if !r.is_zero() {
                break;
            }
            f = q;
            m += 1;
        }
        m
    }
}

impl<F: Field> Add for &UniPoly<F> {
    type Output = UniPoly<F>;
    fn add(self, o: &UniPoly<F>) -> UniPoly<F> {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(match (self.c.get(i), o.c.get(i)) {
                (Some(a), Some(b)) => a.clone() + b.clone(),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        UniPoly::new(c)
    }
}

impl<F: Field> Neg for &UniPoly<F> {
    type Output = UniPoly<F>;
    fn neg(self) -> UniPoly<F> {
        UniPoly { c: self.c.iter().map(|a| -a.clone()).collect() }
    }
}

impl<F: Field> Sub for &UniPoly<F> {
    type Output = UniPoly<F>;
    fn sub(self, o: &UniPoly<F>) -> UniPoly<F> {
        self + &(-o)
    }
}

impl<F: Field> Mul for &UniPoly<F> {
    type Output = UniPoly<F>;
    fn mul(self, o: &UniPoly<F>) -> UniPoly<F> {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let ctx = self.c[0].ctx();
        let mut c = vec![ctx.zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = c[i + j].clone() + a.clone() * b.clone();
            }
        }
        UniPoly::new(c)
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl<F: Field> $tr for UniPoly<F> {
            type Output = UniPoly<F>;
            fn $m(self, o: UniPoly<F>) -> UniPoly<F> {
                (&self).$m(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

/// Resultant as the determinant of the Sylvester matrix.
pub fn resultant<F: Field>(f: &UniPoly<F>, g: &UniPoly<F>, ctx: &F::Ctx) -> F {
    let (Some(m), Some(n)) = (f.degree(), g.degree()) else {
        return ctx.zero();
    };
    if m == 0 && n == 0 {
        return ctx.one();
    }
    let size = m + n;
    let mut s = Matrix::zeros(ctx, size, size);
    for r in 0..n {
        for (j, a) in f.coeffs().iter().rev().enumerate() {
            s.set(r, r + j, a.clone());
        }
    }
    for r in 0..m {
        for (j, b) in g.coeffs().iter().rev().enumerate() {
            s.set(n + r, r + j, b.clone());
        }
    }
    s.det()
}

/// All roots in the base field, repeated according to multiplicity.
pub fn uniroots<F: Field>(f: &UniPoly<F>, ctx: &F::Ctx) -> Result<Vec<F>> {
    let mut out = Vec::new();
    for r in ctx.distinct_roots(f)? {
        let m = f.multiplicity(&r);
        out.extend(std::iter::repeat_n(r, m));
    }
    Ok(out)
}

/// Like [`uniroots`], but fails with `RootsNotSplit` unless `f` is a product
/// of linear factors over the base field.
pub fn uniroots_split<F: Field>(f: &UniPoly<F>, ctx: &F::Ctx) -> Result<Vec<F>> {
    let r = uniroots(f, ctx)?;
    if Some(r.len()) != f.degree() {
        return Err(Error::RootsNotSplit);
    }
    Ok(r)
}

/// A point of the projective line: affine parameter or infinity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Param<F: Field> {
    Finite(F),
    Infinity,
}

/// A binary form of a nominal degree, stored through its dehomogenization
/// `f(t) = F(1, t)`; the missing top degrees encode roots at infinity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryForm<F: Field> {
    pub poly: UniPoly<F>,
    pub degree: usize,
}

impl<F: Field> BinaryForm<F> {
    pub fn new(poly: UniPoly<F>, degree: usize) -> Self {
        debug_assert!(poly.degree().is_none_or(|d| d <= degree));
        BinaryForm { poly, degree }
    }
    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }
    /// Multiplicity of the root at infinity.
    pub fn infinity_multiplicity(&self) -> usize {
        self.degree - self.poly.degree().unwrap_or(0)
    }
}

/// Common zero scheme of a set of binary forms on P^1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommonZeros<F: Field> {
    /// Monic gcd of the affine parts.
    pub affine: UniPoly<F>,
    /// Multiplicity of the common root at infinity.
    pub at_infinity: usize,
}

impl<F: Field> CommonZeros<F> {
    pub fn length(&self) -> usize {
        self.affine.degree().unwrap_or(0) + self.at_infinity
    }
    /// The points, repeated by multiplicity; fails unless they are all rational.
    pub fn points(&self, ctx: &F::Ctx) -> Result<Vec<Param<F>>> {
        let mut out: Vec<Param<F>> =
            uniroots_split(&self.affine, ctx)?.into_iter().map(Param::Finite).collect();
        out.extend(std::iter::repeat_n(Param::Infinity, self.at_infinity));
        Ok(out)
    }
}

/// Gcd of binary forms; `None` when every form vanishes identically.
pub fn common_zeros<F: Field>(forms: &[BinaryForm<F>]) -> Option<CommonZeros<F>> {
    let nonzero: Vec<&BinaryForm<F>> = forms.iter().filter(|f| !f.is_zero()).collect();
    if nonzero.is_empty() {
        return None;
    }
    let affine = nonzero
        .iter()
        .skip(1)
        .fold(nonzero[0].poly.monic(), |g, f| g.gcd(&f.poly));
    let at_infinity = nonzero.iter().map(|f| f.infinity_multiplicity()).min().unwrap();
    Some(CommonZeros { affine, at_infinity })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use proptest::prelude::*;

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn poly(ctx: &PrimeField, c: &[i64]) -> UniPoly<crate::field::Fp> {
        UniPoly::new(c.iter().map(|&x| ctx.from_i64(x)).collect())
    }

    #[test]
    fn roots_of_t3_minus_t_mod_5() {
        let k = fp(5);
        let f = poly(&k, &[0, -1, 0, 1]);
        let mut r: Vec<u64> = uniroots(&f, &k).unwrap().iter().map(|x| x.value()).collect();
        r.sort();
        assert_eq!(r, vec![0, 1, 4]);
    }

    #[test]
    fn multiplicities_and_split_check() {
        let k = fp(10007);
        let f = poly(&k, &[-2, 1]) * poly(&k, &[-2, 1]) * poly(&k, &[3, 1]);
        let mut r: Vec<u64> = uniroots(&f, &k).unwrap().iter().map(|x| x.value()).collect();
        r.sort();
        assert_eq!(r, vec![2, 2, 10004]);
        // t^2 + 1 has no roots mod 10007 (10007 = 3 mod 4)
        let g = poly(&k, &[1, 0, 1]) * poly(&k, &[-1, 1]);
        assert_eq!(uniroots(&g, &k).unwrap().len(), 1);
        assert_eq!(uniroots_split(&g, &k), Err(Error::RootsNotSplit));
    }

    #[test]
    fn resultant_examples() {
        let k = fp(10007);
        let r = resultant(&poly(&k, &[-1, 1]), &poly(&k, &[-2, 1]), &k);
        assert_eq!(r, k.from_i64(-1));
        let a = poly(&k, &[-7, 1]);
        assert!(resultant(&a, &a, &k).is_zero());
        let q = Rationals;
        let f = UniPoly::new(vec![q.from_i64(-3), q.zero(), q.one()]);
        let g = UniPoly::new(vec![q.from_i64(1), q.from_i64(1)]);
        // res(t^2 - 3, t + 1) = (-1)^2 - 3
        assert_eq!(resultant(&f, &g, &q), q.from_i64(-2));
    }

    #[test]
    fn binary_gcd_counts_infinity() {
        let k = fp(11);
        // s^2 t (t - s) and s t^2 (t - s) as cubic... forms of degree 4:
        // f = t (t - 1) with nominal degree 4 -> double root at infinity
        let f = BinaryForm::new(poly(&k, &[0, -1, 1]), 4);
        let g = BinaryForm::new(poly(&k, &[0, 0, -1, 1]), 3);
        let z = common_zeros(&[f, g]).unwrap();
        assert_eq!(z.affine, poly(&k, &[0, -1, 1]));
        assert_eq!(z.at_infinity, 0);
        assert_eq!(z.length(), 2);
        let h = BinaryForm::new(poly(&k, &[0, 1]), 3);
        let h2 = BinaryForm::new(poly(&k, &[5]), 2);
        let z = common_zeros(&[h, h2]).unwrap();
        assert_eq!((z.affine.degree(), z.at_infinity), (Some(0), 2));
        assert!(common_zeros::<crate::field::Fp>(&[BinaryForm::new(UniPoly::zero(), 2)]).is_none());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn resultant_vanishes_iff_common_factor(
            a in proptest::collection::vec(0i64..13, 1..5),
            b in proptest::collection::vec(0i64..13, 1..5),
            shared in proptest::bool::ANY,
            r in 0i64..13,
        ) {
            let k = fp(13);
            let mut f = poly(&k, &a);
            let mut g = poly(&k, &b);
            prop_assume!(!f.is_zero() && !g.is_zero());
            if shared {
                f = &f * &poly(&k, &[-r, 1]);
                g = &g * &poly(&k, &[-r, 1]);
            }
            let res = resultant(&f, &g, &k);
            let common = f.gcd(&g).degree().unwrap() > 0;
            prop_assert_eq!(res.is_zero(), common);
        }

        #[test]
        fn division_identity(
            a in proptest::collection::vec(-50i64..50, 0..8),
            b in proptest::collection::vec(-50i64..50, 1..5),
        ) {
            let k = fp(10007);
            let f = poly(&k, &a);
            let g = poly(&k, &b);
            prop_assume!(!g.is_zero());
            let (q, r) = f.div_rem(&g);
            prop_assert_eq!(&(&q * &g) + &r, f);
            prop_assert!(r.degree() < g.degree() || r.is_zero());
        }
    }
}

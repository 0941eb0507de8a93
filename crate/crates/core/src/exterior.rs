//! Exterior algebra of a 6-dimensional space, indexed by bitmasks.
//!
//! A basis monomial `e_{i1} ∧ ... ∧ e_{ik}` with `i1 < ... < ik` is the mask
//! with bits `i1..ik` set. Degree-3 forms are also stored compactly as
//! 20-vectors over the triples in lexicographic order.

use std::ops::{Add, Mul, Sub};

use crate::field::{Field, FieldCtx};

pub const DIM: usize = 6;
pub const N3: usize = 20;
pub const TOP: usize = 0b111111;

/// The 20 index triples `i < j < k` in lexicographic order.
pub const TRIPLES: [[usize; 3]; N3] = {
    let mut t = [[0usize; 3]; N3];
    let mut n = 0;
    let mut i = 0;
    while i < DIM {
        let mut j = i + 1;
        while j < DIM {
            let mut k = j + 1;
            while k < DIM {
                t[n] = [i, j, k];
                n += 1;
                k += 1;
            }
            j += 1;
        }
        i += 1;
    }
    t
};

pub fn triple_mask(t: [usize; 3]) -> usize {
    (1 << t[0]) | (1 << t[1]) | (1 << t[2])
}

/// Position of a 3-element mask in [`TRIPLES`].
pub fn triple_index(mask: usize) -> usize {
    TRIPLES.iter().position(|&t| triple_mask(t) == mask).expect("not a 3-element mask")
}

/// Sign of the shuffle that sorts the concatenation of disjoint masks `a`, `b`.
pub fn merge_sign(a: usize, b: usize) -> i64 {
    debug_assert_eq!(a & b, 0);
    let mut inv = 0;
    for i in 0..DIM {
        if a >> i & 1 == 1 {
            inv += (b & ((1 << i) - 1)).count_ones();
        }
    }
    if inv % 2 == 0 { 1 } else { -1 }
}

/// Dense element of the full exterior algebra, indexed by mask.
pub type Form<F> = Vec<F>;

pub fn zero_form<F: Field<Ctx = C>, C: FieldCtx<Elem = F>>(ctx: &C) -> Form<F> {
    vec![ctx.zero(); 1 << DIM]
}

pub fn basis_vector_form<F: Field<Ctx = C>, C: FieldCtx<Elem = F>>(ctx: &C, v: &[F]) -> Form<F> {
    let mut f = zero_form(ctx);
    for i in 0..DIM {
        f[1 << i] = v[i].clone();
    }
    f
}

pub fn from_triples<F: Field<Ctx = C>, C: FieldCtx<Elem = F>>(ctx: &C, w: &[F]) -> Form<F> {
    let mut f = zero_form(ctx);
    for (n, t) in TRIPLES.iter().enumerate() {
        f[triple_mask(*t)] = w[n].clone();
    }
    f
}

pub fn to_triples<F: Field>(f: &Form<F>) -> Vec<F> {
    TRIPLES.iter().map(|t| f[triple_mask(*t)].clone()).collect()
}

pub fn wedge<F: Field<Ctx = C>, C: FieldCtx<Elem = F>>(ctx: &C, a: &Form<F>, b: &Form<F>) -> Form<F> {
    let mut out = zero_form(ctx);
    for (ma, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (mb, y) in b.iter().enumerate() {
            if y.is_zero() || ma & mb != 0 {
                continue;
            }
            let s = ctx.from_i64(merge_sign(ma, mb));
            out[ma | mb] = out[ma | mb].clone() + s * x.clone() * y.clone();
        }
    }
    out
}

/// Contraction with the dual basis covector `ε_i`.
pub fn interior<F: Field<Ctx = C>, C: FieldCtx<Elem = F>>(ctx: &C, i: usize, a: &Form<F>) -> Form<F> {
    let mut out = zero_form(ctx);
    for (m, x) in a.iter().enumerate() {
        if m >> i & 1 == 0 || x.is_zero() {
            continue;
        }
        let below = (m & ((1 << i) - 1)).count_ones();
        let v = if below % 2 == 0 { x.clone() } else { -x.clone() };
        out[m & !(1 << i)] = v;
    }
    out
}

/// Minimal arithmetic needed to expand minors.
pub trait Ring: Clone + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> {}
impl<T: Clone + Add<Output = T> + Sub<Output = T> + Mul<Output = T>> Ring for T {}

pub fn det3<T: Ring>(m: [[&T; 3]; 3]) -> T {
    let t = |a: &T, b: &T, c: &T| a.clone() * (b.clone() * c.clone());
    t(m[0][0], m[1][1], m[2][2]) + t(m[0][1], m[1][2], m[2][0]) + t(m[0][2], m[1][0], m[2][1])
        - t(m[0][2], m[1][1], m[2][0])
        - t(m[0][0], m[1][2], m[2][1])
        - t(m[0][1], m[1][0], m[2][2])
}

/// Plücker vector of three vectors: the 20 maximal minors in triple order.
pub fn plucker<T: Ring>(r: [&[T]; 3]) -> Vec<T> {
    TRIPLES
        .iter()
        .map(|&[i, j, k]| {
            det3([
                [&r[0][i], &r[0][j], &r[0][k]],
                [&r[1][i], &r[1][j], &r[1][k]],
                [&r[2][i], &r[2][j], &r[2][k]],
            ])
        })
        .collect()
}

/// Coefficient of `e_1 ∧ ... ∧ e_6` in `a ∧ b` for two 3-forms in triple order.
pub fn top_pairing<F: Field>(ctx: &F::Ctx, a: &[F], b: &[F]) -> F {
    let mut acc = ctx.zero();
    for (n, t) in TRIPLES.iter().enumerate() {
        let m = triple_mask(*t);
        let c = TOP ^ m;
        let x = &a[n];
        let y = &b[triple_index(c)];
        if x.is_zero() || y.is_zero() {
            continue;
        }
        acc = acc + ctx.from_i64(merge_sign(m, c)) * x.clone() * y.clone();
    }
    acc
}

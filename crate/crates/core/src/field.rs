//! Exact scalar fields: prime fields `F_p` and the rationals.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::poly::UniPoly;

/// Largest prime for which exhaustive root scans are allowed.
pub const MAX_SCAN_PRIME: u64 = 1_000_000;

/// Serializable description of a field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum FieldKind {
    Fp(u64),
    Q,
}

impl Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Fp(p) => write!(f, "F_{p}"),
            FieldKind::Q => write!(f, "Q"),
        }
    }
}

/// An element of an exact field.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    type Ctx: FieldCtx<Elem = Self>;

    fn ctx(&self) -> Self::Ctx;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;
    /// A square root in the base field, if one exists.
    fn sqrt(&self) -> Option<Self>;

    /// A faster route to [`crate::linalg::Matrix::kernel`] with the same
    /// (reduced) output, where the field has one.
    fn fast_kernel(_m: &crate::linalg::Matrix<Self>) -> Option<crate::linalg::Matrix<Self>> {
        None
    }

    fn is_one(&self) -> bool {
        *self == self.ctx().one()
    }
    fn square(&self) -> Self {
        self.clone() * self.clone()
    }
    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.ctx().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }
}

/// The field itself: constructs elements and carries field-level algorithms.
pub trait FieldCtx: Clone + Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Field<Ctx = Self>;

    fn kind(&self) -> FieldKind;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    fn parse(&self, s: &str) -> Result<Self::Elem>;
    /// Distinct roots of a nonzero squarefree-or-not polynomial lying in the field.
    fn distinct_roots(&self, f: &UniPoly<Self::Elem>) -> Result<Vec<Self::Elem>>;

    fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        loop {
            let x = self.random(rng);
            if !x.is_zero() {
                return x;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Prime fields

/// Element of `F_p`, stored as a reduced residue together with its modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    v: u64,
    p: u64,
}

/// The prime field `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Builds `F_p`; `p` must be an odd prime below `2^63`.
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || p >= 1 << 63 || !is_prime(p) {
            return Err(Error::Config(format!("{p} is not an odd prime below 2^63")));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, v: u64) -> Fp {
        Fp { v: v % self.p, p: self.p }
    }
}

impl Fp {
    pub fn value(&self) -> u64 {
        self.v
    }
    pub fn modulus(&self) -> u64 {
        self.p
    }
    #[inline]
    fn check(&self, o: &Fp) {
        assert_eq!(self.p, o.p, "mixed-field arithmetic");
    }
}

impl Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Add for Fp {
    type Output = Fp;
    #[inline]
    fn add(self, o: Fp) -> Fp {
        self.check(&o);
        let s = self.v + o.v;
        Fp { v: if s >= self.p { s - self.p } else { s }, p: self.p }
    }
}

impl Sub for Fp {
    type Output = Fp;
    #[inline]
    fn sub(self, o: Fp) -> Fp {
        self.check(&o);
        let v = if self.v >= o.v { self.v - o.v } else { self.v + self.p - o.v };
        Fp { v, p: self.p }
    }
}

impl Mul for Fp {
    type Output = Fp;
    #[inline]
    fn mul(self, o: Fp) -> Fp {
        self.check(&o);
        Fp { v: mulmod(self.v, o.v, self.p), p: self.p }
    }
}

impl Div for Fp {
    type Output = Fp;
    fn div(self, o: Fp) -> Fp {
        self * o.inv().expect("division by zero")
    }
}

impl Neg for Fp {
    type Output = Fp;
    #[inline]
    fn neg(self) -> Fp {
        Fp { v: if self.v == 0 { 0 } else { self.p - self.v }, p: self.p }
    }
}

#[inline]
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

/// Modular inverse by the extended Euclidean algorithm.
pub(crate) fn invmod(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        return None;
    }
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(p as i128) as u64)
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl Field for Fp {
    type Ctx = PrimeField;

    fn ctx(&self) -> PrimeField {
        PrimeField { p: self.p }
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn inv(&self) -> Option<Fp> {
        invmod(self.v, self.p).map(|v| Fp { v, p: self.p })
    }
    fn is_one(&self) -> bool {
        self.v == 1
    }
    fn pow(&self, e: u64) -> Fp {
        Fp { v: powmod(self.v, e, self.p), p: self.p }
    }

    /// Tonelli-Shanks.
    fn sqrt(&self) -> Option<Fp> {
        let p = self.p;
        if self.v == 0 {
            return Some(*self);
        }
        if powmod(self.v, (p - 1) / 2, p) != 1 {
            return None;
        }
        let mut q = p - 1;
        let mut s = 0u32;
        while q % 2 == 0 {
            q /= 2;
            s += 1;
        }
        let mut z = 2;
        while powmod(z, (p - 1) / 2, p) != p - 1 {
            z += 1;
        }
        let mut m = s;
        let mut c = powmod(z, q, p);
        let mut t = powmod(self.v, q, p);
        let mut r = powmod(self.v, q.div_ceil(2), p);
        while t != 1 {
            let mut i = 0;
            let mut tt = t;
            while tt != 1 {
                tt = mulmod(tt, tt, p);
                i += 1;
            }
            let b = powmod(c, 1 << (m - i - 1), p);
            m = i;
            c = mulmod(b, b, p);
            t = mulmod(t, c, p);
            r = mulmod(r, b, p);
        }
        Some(Fp { v: r, p })
    }
}

impl FieldCtx for PrimeField {
    type Elem = Fp;

    fn kind(&self) -> FieldKind {
        FieldKind::Fp(self.p)
    }
    fn zero(&self) -> Fp {
        Fp { v: 0, p: self.p }
    }
    fn one(&self) -> Fp {
        Fp { v: 1, p: self.p }
    }
    fn from_i64(&self, n: i64) -> Fp {
        Fp { v: (n as i128).rem_euclid(self.p as i128) as u64, p: self.p }
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fp {
        Fp { v: rng.gen_range(0..self.p), p: self.p }
    }
    fn parse(&self, s: &str) -> Result<Fp> {
        let t = s.trim();
        let n: i128 = t.parse().map_err(|_| Error::Parse(format!("bad residue {t:?}")))?;
        Ok(Fp { v: n.rem_euclid(self.p as i128) as u64, p: self.p })
    }

    /// Splits off `gcd(f, t^p - t)` and scans the field for its roots.
    fn distinct_roots(&self, f: &UniPoly<Fp>) -> Result<Vec<Fp>> {
        if f.is_zero() {
            return Err(Error::Config("roots of the zero polynomial".into()));
        }
        if f.degree() == Some(0) {
            return Ok(vec![]);
        }
        if self.p > MAX_SCAN_PRIME {
            return Err(Error::Config(format!(
                "root scan needs p <= {MAX_SCAN_PRIME}, got {}",
                self.p
            )));
        }
        let f = f.monic();
        let x = UniPoly::new(vec![self.zero(), self.one()]);
        let xp = x.powmod(self.p, &f);
        let g = f.gcd(&(xp - x));
        let want = g.degree().unwrap_or(0);
        let mut roots = Vec::with_capacity(want);
        if want == 0 {
            return Ok(roots);
        }
        let coeffs: Vec<u64> = g.coeffs().iter().map(|c| c.v).collect();
        let p = self.p;
        for a in 0..p {
            let mut acc = 0u64;
            for &c in coeffs.iter().rev() {
                acc = (mulmod(acc, a, p) + c) % p;
            }
            if acc == 0 {
                roots.push(Fp { v: a, p });
                if roots.len() == want {
                    break;
                }
            }
        }
        Ok(roots)
    }
}

// ---------------------------------------------------------------------------
// Rationals

/// Arbitrary-precision rational number.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Q(pub BigRational);

/// The field of rational numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Rationals;

impl Q {
    pub fn from_ints(n: i64, d: i64) -> Q {
        Q(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }
    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }
    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }
}

impl Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Add for Q {
    type Output = Q;
    fn add(self, o: Q) -> Q {
        Q(self.0 + o.0)
    }
}
impl Sub for Q {
    type Output = Q;
    fn sub(self, o: Q) -> Q {
        Q(self.0 - o.0)
    }
}
impl Mul for Q {
    type Output = Q;
    fn mul(self, o: Q) -> Q {
        Q(self.0 * o.0)
    }
}
impl Div for Q {
    type Output = Q;
    fn div(self, o: Q) -> Q {
        assert!(!o.0.is_zero(), "division by zero");
        Q(self.0 / o.0)
    }
}
impl Neg for Q {
    type Output = Q;
    fn neg(self) -> Q {
        Q(-self.0)
    }
}

fn int_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

impl Field for Q {
    type Ctx = Rationals;

    fn ctx(&self) -> Rationals {
        Rationals
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn inv(&self) -> Option<Q> {
        (!self.0.is_zero()).then(|| Q(self.0.recip()))
    }
    fn sqrt(&self) -> Option<Q> {
        let n = int_sqrt_exact(self.0.numer())?;
        let d = int_sqrt_exact(self.0.denom())?;
        Some(Q(BigRational::new(n, d)))
    }
    fn fast_kernel(m: &crate::linalg::Matrix<Q>) -> Option<crate::linalg::Matrix<Q>> {
        (m.rows() * m.cols() >= MODULAR_KERNEL_SIZE).then(|| crate::modular::rational_kernel(m)).flatten()
    }
}

/// Entry count from which rational kernels go through [`crate::modular`].
const MODULAR_KERNEL_SIZE: usize = 400;

/// Range of the integers drawn by [`Rationals::random`].
const Q_RANDOM_RANGE: i64 = 30;

impl FieldCtx for Rationals {
    type Elem = Q;

    fn kind(&self) -> FieldKind {
        FieldKind::Q
    }
    fn zero(&self) -> Q {
        Q(BigRational::zero())
    }
    fn one(&self) -> Q {
        Q(BigRational::one())
    }
    fn from_i64(&self, n: i64) -> Q {
        Q(BigRational::from_integer(BigInt::from(n)))
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Q {
        self.from_i64(rng.gen_range(-Q_RANDOM_RANGE..=Q_RANDOM_RANGE))
    }
    fn parse(&self, s: &str) -> Result<Q> {
        let t = s.trim();
        let bad = || Error::Parse(format!("bad rational {t:?}"));
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim().parse::<BigInt>().map_err(|_| bad())?, d.trim().parse::<BigInt>().map_err(|_| bad())?),
            None => (t.parse::<BigInt>().map_err(|_| bad())?, BigInt::one()),
        };
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Q(BigRational::new(n, d)))
    }

    /// p-adic lifting of the roots of the squarefree part modulo a good prime,
    /// followed by rational reconstruction and an exact check.
    fn distinct_roots(&self, f: &UniPoly<Q>) -> Result<Vec<Q>> {
        if f.is_zero() {
            return Err(Error::Config("roots of the zero polynomial".into()));
        }
        let mut g = f.squarefree_part();
        let mut roots = Vec::new();
        if g.degree() == Some(0) {
            return Ok(roots);
        }
        if g.coeffs()[0].is_zero() {
            roots.push(self.zero());
            g = g.div_rem(&UniPoly::new(vec![self.zero(), self.one()])).0;
        }
        if g.degree() == Some(0) {
            return Ok(roots);
        }
        let ints = primitive_integer_coeffs(&g);
        let lc = ints.last().unwrap().abs();
        let c0 = ints[0].abs();
        let bound = if lc > c0 { lc.clone() } else { c0.clone() };
        let need = BigInt::from(2) * &bound * &bound;

        let (p, base_roots) = good_prime_roots(&ints);
        let pb = BigInt::from(p);
        for r in base_roots {
            let mut modulus = pb.clone();
            let mut x = BigInt::from(r);
            while modulus <= need {
                modulus = &modulus * &modulus;
                let fx = eval_int(&ints, &x).mod_floor(&modulus);
                let dfx = eval_int_deriv(&ints, &x).mod_floor(&modulus);
                let inv = modinv_big(&dfx, &modulus).ok_or(Error::NotSplit)?;
                x = (x - fx * inv).mod_floor(&modulus);
            }
            if let Some(q) = rational_reconstruct(&x, &modulus) {
                let cand = Q(q);
                if g.eval(&cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
        Ok(roots)
    }
}

/// Clears denominators and content.
fn primitive_integer_coeffs(g: &UniPoly<Q>) -> Vec<BigInt> {
    let l = g.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = g.coeffs().iter().map(|c| c.numer() * (&l / c.denom())).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &content).collect()
}

fn eval_int(c: &[BigInt], x: &BigInt) -> BigInt {
    c.iter().rev().fold(BigInt::zero(), |acc, a| acc * x + a)
}

fn eval_int_deriv(c: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for (i, a) in c.iter().enumerate().skip(1).rev() {
        acc = acc * x + a * BigInt::from(i);
    }
    acc
}

fn modinv_big(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// Picks a prime not dividing the leading coefficient modulo which the
/// polynomial stays squarefree, and returns its roots there.
fn good_prime_roots(ints: &[BigInt]) -> (u64, Vec<u64>) {
    let mut p = 1009u64;
    loop {
        if is_prime(p) {
            let ctx = PrimeField { p };
            let pb = BigInt::from(p);
            let red: Vec<Fp> = ints
                .iter()
                .map(|c| ctx.elem(c.mod_floor(&pb).to_u64().unwrap()))
                .collect();
            let fp = UniPoly::new(red);
            if fp.degree() == Some(ints.len() - 1) && fp.gcd(&fp.derivative()).degree() == Some(0) {
                let roots = ctx.distinct_roots(&fp).expect("small prime");
                return (p, roots.iter().map(|r| r.value()).collect());
            }
        }
        p += 2;
    }
}

/// Finds `a/b` with `|a|, |b| < sqrt(m/2)` and `a = b x mod m`.
fn rational_reconstruct(x: &BigInt, m: &BigInt) -> Option<BigRational> {
    let (mut r0, mut r1) = (m.clone(), x.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &(&r1 * &r1 * BigInt::from(2)) >= m {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
        if r1.is_zero() {
            break;
        }
    }
    if t1.is_zero() || &(&t1 * &t1 * BigInt::from(2)) >= m {
        return None;
    }
    let (n, d) = if t1.sign() == Sign::Minus { (-r1, -t1) } else { (r1, t1) };
    Some(BigRational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn fp_arithmetic() {
        let f = PrimeField::new(7).unwrap();
        let a = f.from_i64(3);
        let b = f.from_i64(5);
        assert_eq!(a + b, f.from_i64(1));
        assert_eq!(a - b, f.from_i64(5));
        assert_eq!(a * b, f.from_i64(1));
        assert_eq!(a / b, f.from_i64(2));
        assert_eq!(-a, f.from_i64(4));
        assert_eq!(f.from_i64(0).inv(), None);
    }

    #[test]
    #[should_panic(expected = "mixed-field")]
    fn mixed_fields_rejected() {
        let a = PrimeField::new(7).unwrap().one();
        let b = PrimeField::new(11).unwrap().one();
        let _ = a + b;
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(10007).is_ok());
    }

    #[test]
    fn tonelli_shanks_matches_squares() {
        for p in [7u64, 11, 13, 17, 10007, 65537] {
            let f = PrimeField::new(p).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(p);
            for _ in 0..50 {
                let x = f.random(&mut rng);
                let s = x.square().sqrt().unwrap();
                assert_eq!(s.square(), x.square());
            }
            let squares = (0..p.min(200)).filter(|&v| f.elem(v).sqrt().is_some()).count() as u64;
            if p < 200 {
                assert_eq!(squares, (p + 1) / 2);
            }
        }
    }

    #[test]
    fn q_parse_and_display() {
        let q = Rationals.parse("6/-4").unwrap();
        assert_eq!(q.to_string(), "-3/2");
        assert_eq!(Rationals.parse("12").unwrap().to_string(), "12");
        assert!(Rationals.parse("1/0").is_err());
        assert_eq!(Q::from_ints(9, 4).sqrt(), Some(Q::from_ints(3, 2)));
        assert_eq!(Q::from_ints(2, 1).sqrt(), None);
    }

    #[test]
    fn q_roots_by_lifting() {
        let r = Rationals;
        // (3t - 2)(t + 5)(7t + 1)(t^2 + 1)
        let lin = |a: i64, b: i64| UniPoly::new(vec![r.from_i64(b), r.from_i64(a)]);
        let f = lin(3, -2) * lin(1, 5) * lin(7, 1) * UniPoly::new(vec![r.one(), r.zero(), r.one()]);
        let mut roots = r.distinct_roots(&f).unwrap();
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        assert_eq!(roots, vec![Q::from_ints(-5, 1), Q::from_ints(-1, 7), Q::from_ints(2, 3)]);
        let g = lin(1, 0) * lin(1, 0) * lin(4, 3);
        let mut roots = r.distinct_roots(&g).unwrap();
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        assert_eq!(roots, vec![Q::from_ints(-3, 4), Q::from_ints(0, 1)]);
    }
}

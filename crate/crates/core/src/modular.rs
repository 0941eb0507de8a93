//! Kernels of rational matrices by reduction modulo word-size primes,
//! Chinese remaindering and rational reconstruction. A candidate basis is
//! only returned once it is checked exactly over `Q`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::field::{is_prime, Q};
use crate::fp_dense::echelon;
use crate::linalg::Matrix;

/// Give up on the modular route after this many primes.
const MAX_PRIMES: usize = 48;

/// Primes below `2³¹`, largest first.
fn primes() -> impl Iterator<Item = u64> {
    (1u64 << 20..1u64 << 31).rev().filter(|&n| is_prime(n))
}

/// Rows scaled to integers.
fn integer_rows(m: &Matrix<Q>) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|r| {
            let row = m.row(r);
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect()
}

fn reduce(x: &BigInt, p: u64) -> u32 {
    x.mod_floor(&BigInt::from(p)).to_u32().expect("residue below p")
}

/// `n/d ≡ a (mod m)` with `|n|, d ≤ √(m/2)`, if one exists.
fn reconstruct(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m >> 1u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        (r0, r1, t0, t1) = (r1, r2, t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// The reduced kernel basis (one vector per free column), or `None` if the
/// prime budget runs out before the reconstruction checks.
pub fn rational_kernel(m: &Matrix<Q>) -> Option<Matrix<Q>> {
    let (nr, nc) = (m.rows(), m.cols());
    let rows = integer_rows(m);
    let mut best: Option<Vec<usize>> = None;
    let mut acc: Vec<Vec<BigInt>> = Vec::new();
    let mut modulus = BigInt::one();
    for (used, p) in primes().take(MAX_PRIMES).enumerate() {
        let red: Vec<Vec<u32>> = rows.iter().map(|r| r.iter().map(|x| reduce(x, p)).collect()).collect();
        let ech = echelon(red, nc, p);
        let mut piv = ech.pivots.clone();
        piv.sort_unstable();
        match &best {
            // unlucky prime: the rank dropped or a pivot moved right
            Some(b) if piv.len() < b.len() || (piv.len() == b.len() && piv > *b) => continue,
            Some(b) if piv == *b => {}
            _ => {
                best = Some(piv);
                acc.clear();
                modulus = BigInt::one();
            }
        }
        let ker = ech.kernel();
        let pb = BigInt::from(p);
        if acc.is_empty() {
            acc = ker.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
        } else {
            // x ≡ acc (mod modulus), x ≡ v (mod p)
            let inv = modulus.modpow(&(&pb - 2u32), &pb);
            for (a, v) in acc.iter_mut().zip(&ker) {
                for (x, &r) in a.iter_mut().zip(v) {
                    let t = ((BigInt::from(r) - &*x) * &inv).mod_floor(&pb);
                    *x += &modulus * t;
                }
            }
        }
        modulus *= &pb;
        if used == 0 {
            continue;
        }
        let cand: Option<Vec<Vec<Q>>> =
            acc.iter().map(|v| v.iter().map(|x| reconstruct(x, &modulus).map(Q)).collect()).collect();
        let Some(cand) = cand else { continue };
        let k = Matrix::from_rows(&crate::field::Rationals, nc, cand);
        if nr == 0 || m.mul(&k.transpose()).is_zero() {
            return Some(k);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldCtx, Rationals};
    use rand::{Rng, SeedableRng};

    #[test]
    fn reconstruction_inverts_reduction() {
        let m = BigInt::from(2147483647u64) * BigInt::from(2147483629u64);
        for (n, d) in [(3, 7), (-12, 5), (0, 1), (1, 1), (-99991, 65536)] {
            let q = BigRational::new(n.into(), d.into());
            let a = (q.numer() * q.denom().modinv(&m).unwrap()).mod_floor(&m);
            assert_eq!(reconstruct(&a, &m), Some(q));
        }
    }

    #[test]
    fn agrees_with_direct_elimination() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let k = Rationals;
        for (r, c, rank) in [(6, 9, 4), (12, 10, 7), (3, 3, 3), (20, 15, 15)] {
            let left: Vec<Vec<Q>> = (0..r).map(|_| (0..rank).map(|_| k.random(&mut rng)).collect()).collect();
            let right: Vec<Vec<Q>> =
                (0..rank).map(|_| (0..c).map(|_| Q::from_ints(rng.gen_range(-9..10), rng.gen_range(1..5))).collect()).collect();
            let m = Matrix::from_rows(&k, rank, left).mul(&Matrix::from_rows(&k, c, right));
            assert_eq!(rational_kernel(&m).unwrap(), m.rref_kernel());
        }
    }
}

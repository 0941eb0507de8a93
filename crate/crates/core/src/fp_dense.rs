//! Dense elimination over `𝔽_p` (`p < 2³²`) on raw residues, for the large
//! interpolation systems. Row updates accumulate in `u64` and are reduced
//! only when a row is read or its headroom runs out.

/// Row echelon form: normalized pivot rows and their pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub p: u64,
    pub ncols: usize,
    pub pivots: Vec<usize>,
    pub rows: Vec<Vec<u32>>,
}

fn inv(a: u64, p: u64) -> u64 {
    crate::field::invmod(a, p).expect("nonzero residue")
}

/// Rows reduced together against each pivot, sized to stay in cache.
const BATCH: usize = 32;

#[inline(always)]
fn axpy_scalar(acc: &mut [u64], piv: &[u32], f: u32) {
    for (a, &b) in acc.iter_mut().zip(piv) {
        *a += f as u64 * b as u64;
    }
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "avx2")]
unsafe fn axpy_avx2(acc: &mut [u64], piv: &[u32], f: u32) {
    axpy_scalar(acc, piv, f)
}

fn axpy(acc: &mut [u64], piv: &[u32], f: u32) {
    #[cfg(target_arch = "x86_64")]
    if std::arch::is_x86_feature_detected!("avx2") {
        // SAFETY: the feature was detected at runtime.
        unsafe { axpy_avx2(acc, piv, f) };
        return;
    }
    axpy_scalar(acc, piv, f)
}

struct Lazy {
    p: u64,
    limit: u64,
}

impl Lazy {
    /// Clears column `c` of `row` with the normalized pivot row.
    fn eliminate(&self, row: &mut [u64], count: &mut u64, piv: &[u32], c: usize) {
        let f = row[c] % self.p;
        if f == 0 {
            return;
        }
        axpy(&mut row[c..], &piv[c..], (self.p - f) as u32);
        *count += 1;
        if *count >= self.limit {
            row[c..].iter_mut().for_each(|x| *x %= self.p);
            *count = 0;
        }
    }
}

/// Echelon form of `rows` (entries `< p`, each of length `ncols`). Pivots are
/// listed in creation order; each pivot row vanishes at its own column's
/// predecessors and at all earlier pivot columns.
pub fn echelon(rows: Vec<Vec<u32>>, ncols: usize, p: u64) -> Echelon {
    assert!(p > 2 && p < (1 << 32));
    let lazy = Lazy { p, limit: (u64::MAX - p) / ((p - 1) * (p - 1)) };
    let mut pivots: Vec<usize> = Vec::new();
    let mut out: Vec<Vec<u32>> = Vec::new();
    for chunk in rows.chunks(BATCH) {
        if pivots.len() == ncols {
            break;
        }
        let mut work: Vec<Vec<u64>> = chunk
            .iter()
            .map(|r| {
                assert_eq!(r.len(), ncols);
                r.iter().map(|&x| u64::from(x)).collect()
            })
            .collect();
        let mut counts = vec![0u64; work.len()];
        for (piv, &c) in out.iter().zip(&pivots) {
            for (w, n) in work.iter_mut().zip(counts.iter_mut()) {
                lazy.eliminate(w, n, piv, c);
            }
        }
        for i in 0..work.len() {
            let row = &mut work[i];
            row.iter_mut().for_each(|x| *x %= p);
            let Some(c) = row.iter().position(|&x| x != 0) else { continue };
            let lead = inv(row[c], p);
            let piv: Vec<u32> = row.iter().map(|&x| (x * lead % p) as u32).collect();
            for j in i + 1..work.len() {
                let (w, n) = (&mut work[j], &mut counts[j]);
                lazy.eliminate(w, n, &piv, c);
            }
            pivots.push(c);
            out.push(piv);
        }
    }
    Echelon { p, ncols, pivots, rows: out }
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Basis of the right kernel, one vector per free column, by back
    /// substitution in reverse pivot order.
    pub fn kernel(&self) -> Vec<Vec<u32>> {
        let p = self.p;
        let mut is_pivot = vec![false; self.ncols];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ncols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut x = vec![0u64; self.ncols];
                x[free] = 1;
                for (r, &pc) in self.pivots.iter().enumerate().rev() {
                    let row = &self.rows[r];
                    let mut s = 0u64;
                    for j in pc + 1..self.ncols {
                        if x[j] != 0 && row[j] != 0 {
                            s = (s + row[j] as u64 * x[j]) % p;
                        }
                    }
                    // later pivot columns are already solved, earlier ones are zero here
                    x[pc] = (p - s) % p;
                }
                x.into_iter().map(|v| v as u32).collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldCtx, PrimeField};
    use crate::linalg::Matrix;
    use crate::rng::rng_from_seed;
    use rand::Rng;

    #[test]
    fn agrees_with_generic_linalg() {
        let k = PrimeField::new(10007).unwrap();
        let mut rng = rng_from_seed(3);
        for (r, c, rk) in [(12, 9, 5), (30, 40, 22), (7, 7, 7)] {
            let a = Matrix::from_fn(&k, r, rk, |_, _| k.random(&mut rng));
            let b = Matrix::from_fn(&k, rk, c, |_, _| k.random(&mut rng));
            let m = a.mul(&b);
            let raw: Vec<Vec<u32>> = m.row_vecs().iter().map(|v| v.iter().map(|x| x.value() as u32).collect()).collect();
            let e = echelon(raw, c, 10007);
            assert_eq!(e.rank(), m.rank());
            let ker = e.kernel();
            assert_eq!(ker.len(), c - m.rank());
            for v in ker {
                let v: Vec<_> = v.iter().map(|&x| k.elem(x as u64)).collect();
                assert!(m.mul_vec(&v).iter().all(|x| x.value() == 0));
            }
        }
    }

    #[test]
    fn large_prime_forces_reductions() {
        let p = 4294967291u64;
        let mut rng = rng_from_seed(4);
        let rows: Vec<Vec<u32>> = (0..40).map(|_| (0..30).map(|_| rng.gen_range(0..p) as u32).collect()).collect();
        let e = echelon(rows.clone(), 30, p);
        assert_eq!(e.rank(), 30);
        let mut dup = rows[..10].to_vec();
        dup.extend(rows[..10].iter().cloned());
        let e = echelon(dup, 30, p);
        assert_eq!(e.rank(), 10);
        for v in e.kernel() {
            for r in &rows[..10] {
                let s = r.iter().zip(&v).fold(0u128, |a, (&x, &y)| (a + x as u128 * y as u128) % p as u128);
                assert_eq!(s, 0);
            }
        }
    }
}

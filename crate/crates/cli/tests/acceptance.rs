//! Acceptance run: the eleven properties the library is held to, each with
//! its own time limit. Runs sequentially and prints one line per criterion.
//!
//! Where a number is predicted rather than measured, the prediction comes
//! from code in this file that does not go through the library: the Weyl
//! dimension formula for `N_quad`, a hand-rolled contraction for `dim W`,
//! monomial counting for the interpolation rank, and a brute-force line
//! census over `𝔽₁₁` for the secant-line formula.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use lg36_core::cubics::{DeterminantalNet, TwistedCubic};
use lg36_core::dual_quartic::{interpolate_with_rank, QuarticForm, TangentHyperplaneSample};
use lg36_core::fibration::{hyperplane_through, section_through, SectionTower};
use lg36_core::field::{Field, FieldCtx, Fp, PrimeField};
use lg36_core::group::{parse_word, MarkedFano, RETRY_BUDGET};
use lg36_core::linalg::Matrix;
use lg36_core::poly::Param;
use lg36_core::proj::{random_subspace_through, ProjSubspace};
use lg36_core::rng::{rng_from_seed, split_seed, ChaCha8Rng};
use lg36_core::strata::{QUADRIC_EXTRA, QUADRIC_POINTS};
use lg36_core::symplectic::{Geometry, SigmaPoint, NW};

const P: u64 = 10007;
const SEED: u64 = 20240611;

type Outcome = Result<String, String>;

fn geo() -> Geometry<Fp> {
    Geometry::new(&PrimeField::new(P).unwrap())
}

fn rng(criterion: u64) -> ChaCha8Rng {
    rng_from_seed(split_seed(SEED, criterion))
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

// ---------------------------------------------------------------------------
// Oracles on raw residues

fn res(v: &[Fp]) -> Vec<u64> {
    v.iter().map(|x| x.value()).collect()
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut e, mut b, mut acc) = (p - 2, a % p, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Reduced row echelon form mod p; returns (rows, pivots).
fn rref_mod(mut m: Vec<Vec<u64>>, p: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(i) = (r..m.len()).find(|&i| m[i][c] % p != 0) else { continue };
        m.swap(r, i);
        let inv = inv_mod(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = *x % p * inv % p;
        }
        for i in 0..m.len() {
            if i != r && m[i][c] % p != 0 {
                let f = m[i][c] % p;
                for j in 0..cols {
                    m[i][j] = (m[i][j] % p + p * p - f * m[r][j] % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

fn rank_mod(m: Vec<Vec<u64>>, p: u64) -> usize {
    rref_mod(m, p).1.len()
}

fn proportional_mod(a: &[u64], b: &[u64], p: u64) -> bool {
    a.iter().any(|&x| x != 0) && rank_mod(vec![a.to_vec(), b.to_vec()], p) == 1
}

/// The 20 maximal minors of a 3×6 matrix, triples in lexicographic order.
fn plucker_mod(l: &[Vec<u64>], p: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for i in 0..6 {
        for j in i + 1..6 {
            for k in j + 1..6 {
                let m = |r: usize, c: usize| l[r][c] % p;
                let d = |a: usize, b: usize, c: usize| {
                    let pos = m(0, a) * (m(1, b) * m(2, c) % p) % p
                        + m(0, b) * (m(1, c) * m(2, a) % p) % p
                        + m(0, c) * (m(1, a) * m(2, b) % p) % p;
                    let neg = m(0, c) * (m(1, b) * m(2, a) % p) % p
                        + m(0, a) * (m(1, c) * m(2, b) % p) % p
                        + m(0, b) * (m(1, a) * m(2, c) % p) % p;
                    (pos % p + p - neg % p) % p
                };
                out.push(d(i, j, k));
            }
        }
    }
    out
}

/// `α(e_i, e_{i+3}) = 1`.
fn alpha_std(i: usize, j: usize, p: u64) -> u64 {
    if j == i + 3 {
        1
    } else if i == j + 3 {
        p - 1
    } else {
        0
    }
}

/// Contraction `∧³V → V` by the standard form, as a 6×20 matrix mod p.
fn contraction_mod(p: u64) -> Vec<Vec<u64>> {
    let mut triples = Vec::new();
    for i in 0..6 {
        for j in i + 1..6 {
            for k in j + 1..6 {
                triples.push([i, j, k]);
            }
        }
    }
    let mut m = vec![vec![0u64; 20]; 6];
    for (col, [i, j, k]) in triples.into_iter().enumerate() {
        // α(e_i,e_j) e_k − α(e_i,e_k) e_j + α(e_j,e_k) e_i
        m[k][col] = (m[k][col] + alpha_std(i, j, p)) % p;
        m[j][col] = (m[j][col] + p - alpha_std(i, k, p)) % p;
        m[i][col] = (m[i][col] + alpha_std(j, k, p)) % p;
    }
    m
}

fn apply_mod(m: &[Vec<u64>], v: &[u64], p: u64) -> Vec<u64> {
    m.iter().map(|r| r.iter().zip(v).fold(0, |acc, (a, b)| (acc + a * b % p) % p)).collect()
}

/// `L J Lᵀ = 0` for the rows of `l`.
fn isotropic_mod(l: &[Vec<u64>], p: u64) -> bool {
    l.iter().all(|u| l.iter().all(|v| (0..3).fold(0, |acc, i| (acc + u[i] * v[i + 3] % p + p * p - u[i + 3] * v[i] % p) % p) == 0))
}

fn rows_of(m: &Matrix<Fp>) -> Vec<Vec<u64>> {
    (0..m.rows()).map(|r| res(m.row(r))).collect()
}

/// Weyl dimension formula for `Sp(6)` at highest weight `λ` in the
/// `ε`-basis; positive roots `ε_i ± ε_j` and `2ε_i`.
fn sp6_dimension(lambda: [i64; 3]) -> i64 {
    let rho = [3i64, 2, 1];
    let lr: Vec<i64> = (0..3).map(|i| lambda[i] + rho[i]).collect();
    let (mut num, mut den) = (1i64, 1i64);
    for i in 0..3 {
        for j in i + 1..3 {
            num *= (lr[i] - lr[j]) * (lr[i] + lr[j]);
            den *= (rho[i] - rho[j]) * (rho[i] + rho[j]);
        }
        num *= lr[i];
        den *= rho[i];
    }
    assert_eq!(num % den, 0);
    num / den
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn same_triple(a: &[SigmaPoint<Fp>; 3], b: &[SigmaPoint<Fp>; 3]) -> bool {
    let key = |p: &SigmaPoint<Fp>| res(p.plucker.coords());
    let mut x: Vec<_> = a.iter().map(key).collect();
    let mut y: Vec<_> = b.iter().map(key).collect();
    x.sort();
    y.sort();
    x == y
}

/// Seven common points force two twisted cubics in one `P³` to agree.
fn curves_agree(a: &TwistedCubic<Fp>, b: &TwistedCubic<Fp>) -> bool {
    let Ok(net) = b.net() else { return false };
    let k = PrimeField::new(P).unwrap();
    a.span3() == b.span3() && (0..7).all(|i| b.contains(&net, &a.plucker_at(&Param::Finite(k.elem(101 + 37 * i)))))
}

// ---------------------------------------------------------------------------
// Criteria

fn c1_dim_w() -> Outcome {
    let oracle = 20 - rank_mod(contraction_mod(P), P);
    let g = geo();
    let lib = g.dalpha_matrix().kernel().rows();
    ensure(oracle == 14 && lib == oracle && g.w_basis().rows() == 14, || format!("oracle {oracle}, library {lib}"))?;
    Ok(format!("dim ker d_α = {lib}"))
}

fn c2_exp_chart() -> Outcome {
    let g = geo();
    let mut r = rng(2);
    let dalpha = contraction_mod(P);
    for i in 0..1000 {
        let frame = g.random_frame(&mut r);
        let b = g.random_symmetric(&mut r);
        let pt = g.exp_point(&frame, &b).map_err(|e| format!("sample {i}: {e}"))?;
        let omega = plucker_mod(&rows_of(&pt.lagrangian), P);
        ensure(apply_mod(&dalpha, &omega, P).iter().all(|&x| x == 0), || format!("sample {i} leaves W"))?;
        ensure(isotropic_mod(&rows_of(&pt.lagrangian), P), || format!("sample {i} is not Lagrangian"))?;
        ensure(proportional_mod(&omega, &res(&g.from_w(pt.w())), P), || format!("sample {i}: Plücker mismatch"))?;
        ensure(g.on_sigma(pt.w()).is_some() && g.vanishes_on_sigma_quadrics(pt.w()), || format!("sample {i} off Σ"))?;
    }
    // quadrics through Σ: Sym² W minus the representation of highest weight 2ω₃
    let oracle = (binomial(NW as u64 + 1, 2) as i64 - sp6_dimension([2, 2, 2])) as usize;
    let reference = ProjSubspace::span(g.sigma_quadrics());
    for s in 0..5 {
        let mut r = rng(200 + s);
        let pts: Vec<_> = (0..QUADRIC_POINTS).map(|_| g.sample_sigma(&mut r)).collect();
        let extra: Vec<_> = (0..QUADRIC_EXTRA).map(|_| g.sample_sigma(&mut r)).collect();
        let ideal = g.sigma_quadric_ideal(&pts, &extra).map_err(|e| format!("seed {s}: {e}"))?;
        ensure(ideal.rows() == oracle && ProjSubspace::span(&ideal) == reference, || {
            format!("seed {s}: N_quad {} vs oracle {oracle}", ideal.rows())
        })?;
    }
    Ok(format!("1000/1000 on Σ; N_quad = {oracle} on 5 seeds"))
}

fn c3_bisecants() -> Outcome {
    let g = geo();
    let k = g.ctx().clone();
    let mut r = rng(3);
    for i in 0..200 {
        let (p, q) = (g.sample_sigma(&mut r), g.sample_sigma(&mut r));
        let c = k.random_nonzero(&mut r);
        let w: Vec<Fp> = p.w().iter().zip(q.w()).map(|(a, b)| *a + c * *b).collect();
        let wit = g.bisecant_decompose(&w).map_err(|e| format!("pair {i}: {e}"))?;
        ensure(same_pair(&[&wit.p, &wit.q], &[&p, &q]), || format!("pair {i} decomposed wrongly"))?;
        if i < 100 {
            let len = g.line_sigma_length(&w, p.w());
            ensure(len == Some(2), || format!("pair {i}: line length {len:?}"))?;
        }
    }
    for i in 0..100 {
        let p = g.sample_sigma(&mut r);
        let t = g.tangent_space(&p).map_err(|e| e.to_string())?;
        let v = t.random_point(&mut r);
        if g.on_sigma(&v).is_some() {
            continue;
        }
        ensure(g.lambda(&v).is_zero(), || format!("tangent sample {i}: λ ≠ 0"))?;
    }
    Ok("200 pairs recovered, 100 lines of length 2, λ = 0 on tangent lines".into())
}

fn same_pair(a: &[&SigmaPoint<Fp>; 2], b: &[&SigmaPoint<Fp>; 2]) -> bool {
    let key = |p: &SigmaPoint<Fp>| res(p.plucker.coords());
    let mut x = [key(a[0]), key(a[1])];
    let mut y = [key(b[0]), key(b[1])];
    x.sort();
    y.sort();
    x == y
}

fn c4_omega() -> Outcome {
    let g = geo();
    let mut r = rng(4);
    for i in 0..50 {
        let (w, x) = g.sample_omega_with_x(&mut r);
        let wit = g.omega_witness(&w).map_err(|e| format!("witness {i}: {e}"))?;
        let x = res(&x);
        ensure(proportional_mod(&x, &res(wit.x_omega.coords()), P), || format!("witness {i}: wrong x(ω)"))?;
        let pts = g.sample_q_omega(&wit, 30, &mut r).map_err(|e| format!("witness {i}: {e}"))?;
        for pt in &pts {
            let l = rows_of(&pt.lagrangian);
            let mut with_x = l.clone();
            with_x.push(x.clone());
            ensure(isotropic_mod(&l, P) && rank_mod(l, P) == 3 && rank_mod(with_x, P) == 3, || {
                format!("witness {i}: a point of Q_ω misses x(ω)")
            })?;
        }
    }
    Ok("50 witnesses, 1500 planes through x(ω)".into())
}

/// Brute force over `𝔽₁₁`: every line through every point off the standard
/// cubic, with the length of its meet with the curve read off as the degree
/// of the gcd of the three quadrics restricted to it.
fn c5_secant_census() -> Outcome {
    const Q: u64 = 11;
    let pts = projective_points_mod(Q);
    let on_curve = |x: &[u64]| {
        let q = quadrics_at(x, Q);
        q.iter().all(|&v| v == 0)
    };
    let k = PrimeField::new(Q).unwrap();
    let e = |i: usize| -> Vec<Fp> { (0..4).map(|j| k.elem((i == j) as u64)).collect() };
    let net = DeterminantalNet { m: [[e(0), e(1), e(2)], [e(1), e(2), e(3)]] };
    let (mut admissible, mut agree, mut degenerate) = (0, 0, 0);
    for p in pts.iter().filter(|x| !on_curve(x)) {
        admissible += 1;
        let mut lines: Vec<Vec<Vec<u64>>> = Vec::new();
        for q in &pts {
            if rank_mod(vec![p.clone(), q.clone()], Q) < 2 {
                continue;
            }
            let line = rref_mod(vec![p.clone(), q.clone()], Q).0;
            if lines.contains(&line) {
                continue;
            }
            // forms in b on the points b·p + q; the missing point p is off the curve
            let forms: Vec<Vec<u64>> = (0..3).map(|i| restrict_quadric(i, p, q, Q)).collect();
            let g = forms.iter().fold(vec![], |g, f| poly_gcd(g, f.clone(), Q));
            if degree(&g) >= 2 {
                lines.push(line);
            }
        }
        ensure(lines.len() == 1, || format!("{} secant lines through {p:?}", lines.len()))?;
        let pf: Vec<Fp> = p.iter().map(|&v| k.elem(v)).collect();
        match net.secant_line(&pf) {
            Ok(l) => {
                let l = rref_mod(rows_of(&l), Q).0;
                ensure(l == lines[0], || format!("formula line differs at {p:?}"))?;
                agree += 1;
            }
            Err(_) => degenerate += 1,
        }
    }
    // the standard cubic has no conic in a plane, so nothing may degenerate
    ensure(admissible == 1331 + 121 + 11 + 1 - 12, || format!("{admissible} admissible points"))?;
    ensure(degenerate == 0 && agree == admissible, || format!("{degenerate} degenerate, {agree} agree"))?;
    let census = lg36_core::cubics::secant_census(&k, &net);
    ensure(census.admissible == admissible && census.agree == agree && census.mismatches == 0 && census.plane_conic == 0, || {
        format!("library census {census:?}")
    })?;
    Ok(format!("{admissible} points, every formula line equals the unique secant"))
}

fn projective_points_mod(q: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for lead in 0..4 {
        let free = 3 - lead;
        for n in 0..q.pow(free as u32) {
            let mut v = vec![0; 4];
            v[lead] = 1;
            let mut m = n;
            for x in v.iter_mut().skip(lead + 1) {
                *x = m % q;
                m /= q;
            }
            out.push(v);
        }
    }
    out
}

/// `x₀x₂ − x₁²`, `x₀x₃ − x₁x₂`, `x₁x₃ − x₂²`.
fn quadrics_at(x: &[u64], q: u64) -> [u64; 3] {
    let f = |a: u64, b: u64, c: u64, d: u64| (a * b % q + q * q - c * d % q) % q;
    [f(x[0], x[2], x[1], x[1]), f(x[0], x[3], x[1], x[2]), f(x[1], x[3], x[2], x[2])]
}

/// Coefficients (low degree first) of `b ↦ Q_i(b p + q)`, from three values.
fn restrict_quadric(i: usize, p: &[u64], q: &[u64], m: u64) -> Vec<u64> {
    let at = |b: u64| {
        let x: Vec<u64> = (0..4).map(|j| (b * p[j] + q[j]) % m).collect();
        quadrics_at(&x, m)[i]
    };
    let (f0, f1, f2) = (at(0), at(1), at(2));
    // f(b) = c0 + c1 b + c2 b²
    let c0 = f0;
    let c2 = (f2 + f0 + 2 * m - 2 * f1 % m) % m * inv_mod(2, m) % m;
    let c1 = (f1 + 2 * m - f0 - c2) % m;
    trim(vec![c0, c1, c2])
}

fn trim(mut f: Vec<u64>) -> Vec<u64> {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

fn degree(f: &[u64]) -> usize {
    f.len().saturating_sub(1)
}

fn poly_rem(mut a: Vec<u64>, b: &[u64], m: u64) -> Vec<u64> {
    let lead = inv_mod(*b.last().unwrap(), m);
    while a.len() >= b.len() {
        let f = a.last().unwrap() * lead % m;
        let shift = a.len() - b.len();
        for (i, &c) in b.iter().enumerate() {
            a[shift + i] = (a[shift + i] + m * m - f * c % m) % m;
        }
        a = trim(a);
    }
    a
}

/// Gcd with the empty vector standing for the zero polynomial.
fn poly_gcd(a: Vec<u64>, b: Vec<u64>, m: u64) -> Vec<u64> {
    let (mut a, mut b) = (trim(a), trim(b));
    while !b.is_empty() {
        let r = poly_rem(a, &b, m);
        a = b;
        b = r;
    }
    a
}

fn c6_iso() -> Outcome {
    let g = geo();
    let mut r = rng(6);
    let mut resampled = 0;
    for i in 0..100 {
        let (c, xi) = g.sample_cubic(&mut r);
        let net = c.net().map_err(|e| e.to_string())?;
        ensure(xi.iter().all(|p| c.contains(&net, p.w())), || format!("triple {i} off its cubic"))?;
        for o in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            let d = g.cubic_through_triple(&xi[o[0]], &xi[o[1]], &xi[o[2]]).map_err(|e| format!("triple {i}: {e}"))?;
            ensure(curves_agree(&d, &c), || format!("triple {i}: ordering {o:?} changes the curve"))?;
        }
        // triple → cubic → triple
        let s = section_through(&g, &xi, 9, &mut r).map_err(|e| e.to_string())?;
        let back = g.intersect_with_section(&c, &s).map_err(|e| format!("triple {i}: {e}"))?;
        ensure(same_triple(&back, &xi), || format!("triple {i}: σ(C_ξ) ≠ ξ"))?;
        // cubic in X → triple on S → cubic
        let p10 = random_subspace_through(c.span3(), 11, &mut r);
        let mut done = false;
        for _ in 0..RETRY_BUDGET {
            let s = SectionTower::new(hyperplane_through(&p10, &ProjSubspace::empty(g.ctx(), NW), &mut r), Some(p10.clone()))
                .map_err(|e| e.to_string())?;
            match g.intersect_with_section(&c, &s) {
                Ok(x) => {
                    let d = g.cubic_through_triple(&x[0], &x[1], &x[2]).map_err(|e| e.to_string())?;
                    ensure(curves_agree(&d, &c), || format!("cubic {i}: C_σ(C) ≠ C"))?;
                    done = true;
                    break;
                }
                Err(_) => resampled += 1,
            }
        }
        ensure(done, || format!("cubic {i}: no split section in {RETRY_BUDGET} tries"))?;
    }
    Ok(format!("100 triples, 6 orderings each, both round trips ({resampled} sections resampled)"))
}

fn c7_fibration() -> Outcome {
    let g = geo();
    let mut r = rng(7);
    let mut distinct = 0;
    for i in 0..100 {
        let (c, xi) = g.sample_cubic(&mut r);
        let s = section_through(&g, &xi, 9, &mut r).map_err(|e| e.to_string())?;
        let h = res(g.fibration_value(&xi, &s, &mut r).map_err(|e| format!("triple {i}: {e}"))?.coords());
        let ell = rows_of(s.ell());
        let mut seen = 0;
        while seen < 20 {
            let v = res(&c.plucker_at(&c.random_param(&mut r)));
            let l = apply_mod(&ell, &v, P);
            if l.iter().all(|&x| x == 0) {
                continue;
            }
            ensure(proportional_mod(&l, &h, P), || format!("triple {i}: ℓ(C) is not constant"))?;
            seen += 1;
        }
        let rev = [xi[2].clone(), xi[0].clone(), xi[1].clone()];
        let h2 = res(g.fibration_value(&rev, &s, &mut r).map_err(|e| e.to_string())?.coords());
        ensure(proportional_mod(&h, &h2, P), || format!("triple {i}: order matters"))?;
        let (_, eta) = g.sample_cubic(&mut r);
        let both: Vec<_> = xi.iter().chain(eta.iter()).cloned().collect();
        let s2 = section_through(&g, &both, 9, &mut r).map_err(|e| e.to_string())?;
        let a = res(g.fibration_value(&xi, &s2, &mut r).map_err(|e| e.to_string())?.coords());
        let b = res(g.fibration_value(&eta, &s2, &mut r).map_err(|e| e.to_string())?.coords());
        distinct += !proportional_mod(&a, &b, P) as usize;
    }
    ensure(distinct >= 99, || format!("only {distinct}/100 distinct values"))?;
    Ok(format!("100 triples proportional over 20 points, {distinct}/100 distinct"))
}

fn tangent_samples(g: &Geometry<Fp>, n: usize, r: &mut ChaCha8Rng) -> Result<Vec<TangentHyperplaneSample<Fp>>, String> {
    (0..n).map(|_| g.sample_tangent_hyperplane(None, r).map_err(|e| e.to_string())).collect()
}

fn interpolate(g: &Geometry<Fp>, seed: u64) -> Result<(QuarticForm<Fp>, usize), String> {
    let mut r = rng_from_seed(seed);
    interpolate_with_rank(&tangent_samples(g, 2600, &mut r)?).map_err(|e| e.to_string())
}

fn c8_dual_quartic() -> Outcome {
    let g = geo();
    let monomials = binomial(NW as u64 + 3, 4) as usize;
    let (q, rank) = interpolate(&g, split_seed(SEED, 80))?;
    ensure(rank == monomials - 1, || format!("rank {rank}, expected {}", monomials - 1))?;
    let mut r = rng(8);
    for (i, h) in tangent_samples(&g, 500, &mut r)?.iter().enumerate() {
        ensure(q.eval(h.h.coords()).is_zero(), || format!("held-out sample {i} not on F*"))?;
    }
    let k = g.ctx().clone();
    let mut nonzero = 0;
    for _ in 0..100 {
        let h: Vec<Fp> = (0..NW).map(|_| k.random(&mut r)).collect();
        nonzero += !q.eval(&h).is_zero() as usize;
    }
    ensure(nonzero == 100, || format!("vanishes at {} random covectors", 100 - nonzero))?;
    for i in 0..50 {
        let a: Vec<Fp> = (0..NW).map(|_| k.random(&mut r)).collect();
        let b: Vec<Fp> = (0..NW).map(|_| k.random(&mut r)).collect();
        let d = q.on_line(&a, &b).map_err(|e| e.to_string())?.degree();
        ensure(d == Some(4), || format!("line {i}: degree {d:?}"))?;
    }
    for s in [81, 82] {
        let (other, _) = interpolate(&g, split_seed(SEED, s))?;
        ensure(other.proportional(&q), || format!("seed {s} gives another quartic"))?;
    }
    Ok(format!("rank {rank} = {monomials} − 1, 500 held out, 3 seeds agree"))
}

fn fano(g: &Geometry<Fp>, r: &mut ChaCha8Rng, resampled: &mut usize) -> Result<MarkedFano<Fp>, String> {
    for _ in 0..RETRY_BUDGET {
        match g.marked_fano_setup(r) {
            Ok(s) => return Ok(s),
            Err(_) => *resampled += 1,
        }
    }
    Err("no marked setup within the retry budget".into())
}

fn c9_residuals() -> Outcome {
    let g = geo();
    let (fstar, _) = interpolate(&g, split_seed(SEED, 90))?;
    let mut r = rng(9);
    let (mut runs, mut resampled) = (0, 0);
    while runs < 50 {
        let setup = fano(&g, &mut r, &mut resampled)?;
        let fx = setup.fx(&fstar).map_err(|e| e.to_string())?;
        for a in 0..3 {
            let mut e = vec![0u64; 3];
            e[a] = 1;
            let e: Vec<Fp> = e.into_iter().map(|v| g.ctx().from_i64(v as i64)).collect();
            ensure(fx.eval(&e).is_zero(), || format!("mark {a} is off F_X"))?;
        }
        let a = runs % 3;
        let (c2, check) = match g.check_residual(&setup, &setup.c0, a) {
            Ok(x) => x,
            Err(_) => {
                resampled += 1;
                continue;
            }
        };
        ensure(check.passed(), || format!("run {runs}: {check:?}"))?;
        ensure(c2.net().is_ok() && c2.span3().dim() == 3 && setup.p10().contains(c2.span3()), || {
            format!("run {runs}: C′ is not a twisted cubic in X")
        })?;
        let len = setup.c0.intersection(&c2).map_err(|e| e.to_string())?.length;
        ensure(len == 2, || format!("run {runs}: length(C ∩ C′) = {len}"))?;
        let back = g.residual_cubic(&c2, &setup.marks[a], setup.p10()).map_err(|e| e.to_string())?;
        ensure(curves_agree(&back, &setup.c0), || format!("run {runs}: τ∘τ ≠ id"))?;
        runs += 1;
    }
    Ok(format!("50 residual runs, marks on F_X ({resampled} resampled)"))
}

fn c10_group_law() -> Outcome {
    let g = geo();
    let mut r = rng(10);
    let (mut setups, mut resampled, mut chain_points, mut fibers) = (0, 0, 0, 0);
    while setups < 50 {
        let setup = fano(&g, &mut r, &mut resampled)?;
        let run = |w: &str| g.chain_apply(&setup, &setup.c0, &parse_word(w).unwrap());
        let words = ["", "x", "y", "z", "xx", "yy", "zz", "xyz", "zyx", "xyzy", "zyxy", "xyyx"];
        let curves: Result<Vec<_>, _> = words.iter().map(|w| run(w)).collect();
        let Ok(curves) = curves else {
            resampled += 1;
            continue;
        };
        let c = |w: &str| &curves[words.iter().position(|x| *x == w).unwrap()];
        ensure(curves_agree(c("xyz"), c("zyx")), || format!("setup {setups}: xyz ≠ zyx"))?;
        for w in ["xx", "yy", "zz", "xyyx"] {
            ensure(curves_agree(c(w), c("")), || format!("setup {setups}: {w} ≠ id"))?;
        }
        ensure(curves_agree(c("xyzy"), c("zyxy")), || format!("setup {setups}: xyzy ≠ zyxy"))?;
        for (a, w) in ["x", "y", "z"].iter().enumerate() {
            let cp = g.find_chain_point(&setup, &setup.c0, c(w), None, &mut r).map_err(|e| format!("setup {setups}: {e}"))?;
            let mut e = vec![g.ctx().zero(); 3];
            e[a] = g.ctx().one();
            ensure(proportional_mod(&res(cp.coords.coords()), &res(&e), P), || format!("setup {setups}: chain point of {w}"))?;
            chain_points += 1;
        }
        for (w, curve) in words.iter().zip(&curves).skip(1) {
            let same = g.same_fiber_in_setup(&setup, &setup.c0, curve, &mut r).map_err(|e| format!("setup {setups}, {w}: {e}"))?;
            ensure(same, || format!("setup {setups}: C({w}) leaves the fiber"))?;
            fibers += 1;
        }
        setups += 1;
    }
    Ok(format!("50 setups, {chain_points} chain points, {fibers} fiber checks ({resampled} resampled)"))
}

fn c11_full_report() -> Outcome {
    let dir = std::env::temp_dir().join(format!("lg36-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let mut bodies = Vec::new();
    let mut slowest = Duration::ZERO;
    for i in 0..2 {
        let path = dir.join(format!("report{i}.json"));
        let start = Instant::now();
        let status = Command::new(env!("CARGO_BIN_EXE_lg36"))
            .args(["verify", "--suite", "all", "--json"])
            .arg(&path)
            .env_remove("LG36_PRIME")
            .output()
            .map_err(|e| e.to_string())?;
        let took = start.elapsed();
        slowest = slowest.max(took);
        ensure(status.status.success(), || format!("run {i} failed:\n{}", String::from_utf8_lossy(&status.stdout)))?;
        ensure(took < Duration::from_secs(600), || format!("run {i} took {took:?}"))?;
        let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        v.as_object_mut().ok_or("report is not an object")?.remove("timings");
        bodies.push(serde_json::to_string(&v).unwrap());
    }
    let _ = std::fs::remove_dir_all(&dir);
    ensure(bodies[0] == bodies[1], || "reports differ outside timings".into())?;
    Ok(format!("two identical passing reports, slowest {:.1} s", slowest.as_secs_f64()))
}

fn main() -> ExitCode {
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let criteria: [(&str, u64, fn() -> Outcome); 11] = [
        ("dim W = 14", 1, c1_dim_w),
        ("exp chart on Σ, N_quad stable", 30, c2_exp_chart),
        ("bisecant decomposition", 60, c3_bisecants),
        ("Ω witnesses and Q_ω", 60, c4_omega),
        ("secant-line census over F_11", 30, c5_secant_census),
        ("cubic through a triple", 60, c6_iso),
        ("fibration value", 60, c7_fibration),
        ("dual quartic", 300, c8_dual_quartic),
        ("residual cubics", 180, c9_residuals),
        ("chain group law", 180, c10_group_law),
        ("verify --suite all", 1200, c11_full_report),
    ];
    let mut failed = 0;
    for (i, (name, limit, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        let out = match out {
            Ok(msg) if secs > *limit as f64 => Err(format!("{msg}; over the {limit} s limit")),
            o => o,
        };
        let (status, msg) = match &out {
            Ok(m) => ("PASS", m),
            Err(m) => ("FAIL", m),
        };
        failed += out.is_err() as usize;
        println!("criterion {:>2}  {status}  {secs:>7.2} s / {limit:>4} s  {name}: {msg}", i + 1);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! The dual quartic `F* ⊂ P(W*)`, interpolated from tangent hyperplanes of
//! `Σ`, and its restrictions to linear subspaces.
//!
//! Covectors act on W-coordinates by `h(w) = Σ h_i w_i`.

use rand::Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::field::{Field, FieldCtx, Fp};
use crate::linalg::Matrix;
use crate::mpoly::{substitute_linear, MonomialBasis};
use crate::proj::{ProjPoint, ProjSubspace};
use crate::symplectic::{Geometry, SigmaPoint, NW};

/// Default number of interpolation samples.
pub const DEFAULT_SAMPLES: usize = 2600;

/// A quartic form over the grlex degree-4 basis, scaled so its first nonzero
/// coefficient is 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuarticForm<F: Field> {
    nvars: usize,
    coeffs: Vec<F>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentHyperplaneSample<F: Field> {
    pub h: ProjPoint<F>,
    pub tangency: SigmaPoint<F>,
}

/// Comparison of the quartic with `λ` along the pairing `W* ≅ W`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HitchinCrosscheck {
    pub samples: usize,
    /// Samples where exactly one of the two values vanishes.
    pub zero_mismatches: usize,
    /// Ratio `Q(h) / λ(ω_h)` when it is the same on all samples with both nonzero.
    pub ratio: Option<String>,
    pub tangent_samples: usize,
    pub tangent_lambda_zero: usize,
    pub proportional: bool,
}

impl<F: Field> QuarticForm<F> {
    pub fn new(nvars: usize, coeffs: Vec<F>) -> Result<Self> {
        if coeffs.len() != crate::mpoly::count_monomials(nvars, 4) {
            return Err(Error::WrongLength(coeffs.len()));
        }
        let Some(lead) = coeffs.iter().find(|c| !c.is_zero()).cloned() else {
            return Err(Error::ZeroRestriction);
        };
        let inv = lead.inv().unwrap();
        let coeffs = coeffs.into_iter().map(|c| c * inv.clone()).collect();
        Ok(QuarticForm { nvars, coeffs })
    }
    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }
    pub fn basis(&self) -> MonomialBasis {
        MonomialBasis::new(self.nvars, 4)
    }
    pub fn eval(&self, x: &[F]) -> F {
        self.basis().eval(&self.coeffs, x)
    }

    /// Pullback along `y ↦ y L` for the rows of `l` (a subspace of `P(W*)`).
    pub fn restrict(&self, l: &Matrix<F>) -> Result<QuarticForm<F>> {
        assert_eq!(l.cols(), self.nvars);
        let target = MonomialBasis::new(l.rows(), 4);
        QuarticForm::new(l.rows(), substitute_linear(&self.coeffs, &self.basis(), &l.transpose(), &target))
    }

    /// The binary quartic on the line through `a` and `b`, as `f(t) = Q(a + t b)`.
    pub fn on_line(&self, a: &[F], b: &[F]) -> Result<crate::poly::UniPoly<F>> {
        let ctx = a[0].ctx();
        let q = self.restrict(&Matrix::from_rows(&ctx, self.nvars, vec![a.to_vec(), b.to_vec()]))?;
        // binary basis order: x0^4, x0^3 x1, ..., x1^4
        Ok(crate::poly::UniPoly::new(q.coeffs.clone()))
    }

    pub fn proportional(&self, o: &Self) -> bool {
        self.nvars == o.nvars && self.coeffs == o.coeffs
    }

    /// SHA-256 over the decimal coefficient strings, comma separated.
    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        h.update(format!("{}:", self.nvars));
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                h.update(b",");
            }
            h.update(c.to_string());
        }
        hex::encode(h.finalize())
    }
}

impl<F: Field> Geometry<F> {
    /// A covector vanishing on `T_p Σ` and on the rows of `constraints`.
    pub fn tangent_hyperplane_at<R: Rng + ?Sized>(
        &self,
        p: &SigmaPoint<F>,
        constraints: Option<&Matrix<F>>,
        rng: &mut R,
    ) -> Result<TangentHyperplaneSample<F>> {
        let mut m = self.tangent_space(p)?.basis().clone();
        if let Some(c) = constraints {
            m = m.stack(c);
        }
        let ann = m.kernel();
        if ann.rows() == 0 {
            return Err(Error::NoHyperplane);
        }
        loop {
            if let Some(h) = ProjPoint::new(crate::linalg::random_combination(&ann, rng)) {
                return Ok(TangentHyperplaneSample { h, tangency: p.clone() });
            }
        }
    }

    pub fn sample_tangent_hyperplane<R: Rng + ?Sized>(
        &self,
        constraints: Option<&Matrix<F>>,
        rng: &mut R,
    ) -> Result<TangentHyperplaneSample<F>> {
        for _ in 0..50 {
            let p = self.sample_sigma(rng);
            if let Ok(s) = self.tangent_hyperplane_at(&p, constraints, rng) {
                return Ok(s);
            }
        }
        Err(Error::RetriesExhausted(50))
    }

    /// `ω_h`: the W-point paired to the covector `h`.
    pub fn omega_of_covector(&self, h: &[F]) -> Vec<F> {
        self.pairing_dual(h)
    }

    pub fn crosscheck_hitchin<R: Rng + ?Sized>(&self, q: &QuarticForm<F>, samples: usize, rng: &mut R) -> HitchinCrosscheck {
        let ctx = self.ctx();
        let mut ratio: Option<F> = None;
        let mut stable = true;
        let mut zero_mismatches = 0;
        for _ in 0..samples {
            let h: Vec<F> = (0..NW).map(|_| ctx.random(rng)).collect();
            let a = q.eval(&h);
            let b = self.lambda(&self.omega_of_covector(&h));
            match (a.is_zero(), b.is_zero()) {
                (true, true) => {}
                (false, false) => {
                    let r = a / b;
                    match &ratio {
                        None => ratio = Some(r),
                        Some(x) if *x == r => {}
                        Some(_) => stable = false,
                    }
                }
                _ => zero_mismatches += 1,
            }
        }
        let tangent_samples = samples.min(20);
        let mut tangent_lambda_zero = 0;
        for _ in 0..tangent_samples {
            if let Ok(s) = self.sample_tangent_hyperplane(None, rng) {
                if self.lambda(&self.omega_of_covector(s.h.coords())).is_zero() {
                    tangent_lambda_zero += 1;
                }
            }
        }
        let proportional = stable && zero_mismatches == 0 && ratio.is_some();
        HitchinCrosscheck {
            samples,
            zero_mismatches,
            ratio: if stable { ratio.map(|r| r.to_string()) } else { None },
            tangent_samples,
            tangent_lambda_zero,
            proportional,
        }
    }
}

/// Interpolates `F*` over `𝔽_p` from tangent hyperplane samples, returning
/// the form and the rank of the evaluation matrix.
pub fn interpolate_with_rank(samples: &[TangentHyperplaneSample<Fp>]) -> Result<(QuarticForm<Fp>, usize)> {
    let Some(first) = samples.first() else { return Err(Error::KernelDim(0)) };
    let ctx = first.h.coords()[0].ctx();
    let basis = MonomialBasis::new(NW, 4);
    let rows: Vec<Vec<u32>> = samples
        .iter()
        .map(|s| basis.eval_all(s.h.coords()).into_iter().map(|x| x.value() as u32).collect())
        .collect();
    let ech = crate::fp_dense::echelon(rows, basis.len(), ctx.p());
    let ker = ech.kernel();
    if ker.len() != 1 {
        return Err(Error::KernelDim(ker.len()));
    }
    let q = QuarticForm::new(NW, ker[0].iter().map(|&v| ctx.elem(v as u64)).collect())?;
    Ok((q, ech.rank()))
}

pub fn interpolate_dual_quartic(samples: &[TangentHyperplaneSample<Fp>]) -> Result<QuarticForm<Fp>> {
    interpolate_with_rank(samples).map(|(q, _)| q)
}

/// Samples and interpolates in one go.
pub fn dual_quartic_from_seed(geo: &Geometry<Fp>, seed: u64, count: usize) -> Result<QuarticForm<Fp>> {
    let mut rng = crate::rng::rng_from_seed(seed);
    let samples = (0..count).map(|_| geo.sample_tangent_hyperplane(None, &mut rng)).collect::<Result<Vec<_>>>()?;
    interpolate_dual_quartic(&samples)
}

/// Basis rows of the orthogonal space of a subspace of `P(W)`, as covectors.
pub fn orthogonal_covectors<F: Field>(s: &ProjSubspace<F>) -> Matrix<F> {
    s.equations()
}

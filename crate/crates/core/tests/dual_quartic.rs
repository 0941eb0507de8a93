use lg36_core::dual_quartic::{interpolate_with_rank, DEFAULT_SAMPLES};
use lg36_core::field::{Field, FieldCtx, Fp, PrimeField};
use lg36_core::rng::rng_from_seed;
use lg36_core::symplectic::{Geometry, NW};

#[test]
fn interpolated_quartic_vanishes_on_tangent_hyperplanes() {
    let g: Geometry<Fp> = Geometry::new(&PrimeField::new(10007).unwrap());
    let mut rng = rng_from_seed(11);
    let samples: Vec<_> = (0..DEFAULT_SAMPLES).map(|_| g.sample_tangent_hyperplane(None, &mut rng).unwrap()).collect();
    let (q, rank) = interpolate_with_rank(&samples).unwrap();
    assert_eq!(rank, 2379);
    for _ in 0..100 {
        let s = g.sample_tangent_hyperplane(None, &mut rng).unwrap();
        assert!(q.eval(s.h.coords()).is_zero());
    }
    let k = *g.ctx();
    for _ in 0..20 {
        let a: Vec<Fp> = (0..NW).map(|_| k.random(&mut rng)).collect();
        let b: Vec<Fp> = (0..NW).map(|_| k.random(&mut rng)).collect();
        assert_eq!(q.on_line(&a, &b).unwrap().degree(), Some(4));
    }
    // F* against {λ = 0}: the Hitchin invariant pulled back by the pairing
    let report = g.crosscheck_hitchin(&q, 100, &mut rng);
    assert_eq!(report.zero_mismatches, 0, "{report:?}");
}

//! The constructions run unchanged over `Q`.

use lg36_core::fibration::section_through;
use lg36_core::field::{Rationals, Q};
use lg36_core::io::{decode, encode};
use lg36_core::rng::rng_from_seed;
use lg36_core::symplectic::{Geometry, SigmaPoint};
use lg36_core::cubics::TwistedCubic;

#[test]
fn cubic_and_section_round_trip_over_q() {
    let g: Geometry<Q> = Geometry::new(&Rationals);
    let mut rng = rng_from_seed(5);
    let (c, xi) = g.sample_cubic(&mut rng);
    let d = g.cubic_through_triple(&xi[2], &xi[0], &xi[1]).unwrap();
    assert!(c.equals(&d));
    let s = section_through(&g, &xi, 9, &mut rng).unwrap();
    let back = g.intersect_with_section(&c, &s).unwrap();
    for p in &xi {
        assert!(back.iter().any(|q| q.plucker == p.plucker));
    }
    let h = g.fibration_value(&xi, &s, &mut rng).unwrap();
    assert_eq!(g.curve_fibration_value(&c, &s, &mut rng).unwrap(), h);
    let text = encode(&g, &c);
    assert!(text.contains("\"field\": \"Q\""));
    let e: TwistedCubic<Q> = decode(&g, &text).unwrap();
    assert!(e.equals(&c));
}

#[test]
fn bisecant_pair_recovered_over_q() {
    let g: Geometry<Q> = Geometry::new(&Rationals);
    let mut rng = rng_from_seed(6);
    let (p, q) = (g.sample_sigma(&mut rng), g.sample_sigma(&mut rng));
    let w: Vec<Q> = p.w().iter().zip(q.w()).map(|(a, b)| a.clone() + b.clone()).collect();
    let wit = g.bisecant_decompose(&w).unwrap();
    let found = [&wit.p, &wit.q];
    let same = |a: &SigmaPoint<Q>| found.iter().any(|b| b.plucker == a.plucker);
    assert!(same(&p) && same(&q));
}

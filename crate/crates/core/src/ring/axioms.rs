//! Sampling harness for the ring axioms.

use super::Ring;
use crate::rng::TrialRng;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomViolation {
    pub law: &'static str,
    pub inputs: Vec<String>,
}

/// Check associativity, commutativity of addition, distributivity, unit laws
/// and additive inverses on `trials` random triples.
pub fn check_ring_axioms<R: Ring>(ring: &R, rng: &mut TrialRng, trials: usize) -> Result<(), AxiomViolation> {
    for _ in 0..trials {
        let a = ring.sample(rng);
        let b = ring.sample(rng);
        let c = ring.sample(rng);
        let fail = |law| AxiomViolation { law, inputs: vec![ring.format(&a), ring.format(&b), ring.format(&c)] };
        for x in [&a, &b, &c] {
            if !ring.contains(x) {
                return Err(fail("sample outside ring"));
            }
        }
        let checks: [(&'static str, R::Elem, R::Elem); 9] = [
            ("add associative", ring.add(&ring.add(&a, &b), &c), ring.add(&a, &ring.add(&b, &c))),
            ("mul associative", ring.mul(&ring.mul(&a, &b), &c), ring.mul(&a, &ring.mul(&b, &c))),
            ("add commutative", ring.add(&a, &b), ring.add(&b, &a)),
            ("left distributive", ring.mul(&a, &ring.add(&b, &c)), ring.add(&ring.mul(&a, &b), &ring.mul(&a, &c))),
            ("right distributive", ring.mul(&ring.add(&a, &b), &c), ring.add(&ring.mul(&a, &c), &ring.mul(&b, &c))),
            ("additive identity", ring.add(&a, &ring.zero()), a.clone()),
            ("left unit", ring.mul(&ring.one(), &a), a.clone()),
            ("right unit", ring.mul(&a, &ring.one()), a.clone()),
            ("additive inverse", ring.add(&a, &ring.neg(&a)), ring.zero()),
        ];
        for (law, lhs, rhs) in checks {
            if !ring.eq(&lhs, &rhs) {
                return Err(fail(law));
            }
        }
    }
    Ok(())
}

//! Ring endomorphisms given by their action on generators.

use std::fmt::Debug;
use std::sync::Arc;

use super::{Ring, Substitution};

pub trait Endomorphism<R: Ring>: Send + Sync + Debug {
    fn name(&self) -> String;

    fn apply(&self, ring: &R, a: &R::Elem) -> R::Elem;

    /// Smallest known `n` with `delta^n = id`, if any.
    fn declared_order(&self) -> Option<usize>;

    fn apply_times(&self, ring: &R, a: &R::Elem, times: usize) -> R::Elem {
        let mut x = a.clone();
        for _ in 0..times {
            x = self.apply(ring, &x);
        }
        x
    }
}

pub type Endo<R> = Arc<dyn Endomorphism<R>>;

#[derive(Debug, Clone, Copy, Default)]
pub struct IdentityEndomorphism;

impl<R: Ring> Endomorphism<R> for IdentityEndomorphism {
    fn name(&self) -> String {
        "id".into()
    }
    fn apply(&self, _ring: &R, a: &R::Elem) -> R::Elem {
        a.clone()
    }
    fn declared_order(&self) -> Option<usize> {
        Some(1)
    }
}

/// Homomorphic extension of `generator_i -> images[i]`, fixing scalars.
#[derive(Debug, Clone)]
pub struct GeneratorEndomorphism<R: Substitution> {
    name: String,
    images: Vec<R::Elem>,
    order: Option<usize>,
}

impl<R: Substitution> GeneratorEndomorphism<R> {
    pub fn new(name: impl Into<String>, images: Vec<R::Elem>, order: Option<usize>) -> Self {
        GeneratorEndomorphism { name: name.into(), images, order }
    }

    pub fn images(&self) -> &[R::Elem] {
        &self.images
    }

    pub fn into_endo(self) -> Endo<R>
    where
        R: 'static,
    {
        Arc::new(self)
    }
}

impl<R: Substitution> Endomorphism<R> for GeneratorEndomorphism<R> {
    fn name(&self) -> String {
        self.name.clone()
    }
    fn apply(&self, ring: &R, a: &R::Elem) -> R::Elem {
        ring.substitute(a, &self.images)
    }
    fn declared_order(&self) -> Option<usize> {
        self.order
    }
}

/// Check unit preservation, additivity and multiplicativity on all pairs of
/// `samples`, and the declared order on samples and generators.
pub fn check_endomorphism<R: Ring>(
    ring: &R,
    delta: &dyn Endomorphism<R>,
    samples: &[R::Elem],
) -> Result<(), String> {
    if !ring.is_one(&delta.apply(ring, &ring.one())) {
        return Err(format!("{}(1) != 1", delta.name()));
    }
    for a in samples {
        for b in samples {
            let lhs = delta.apply(ring, &ring.add(a, b));
            let rhs = ring.add(&delta.apply(ring, a), &delta.apply(ring, b));
            if !ring.eq(&lhs, &rhs) {
                return Err(format!("not additive on ({}, {})", ring.format(a), ring.format(b)));
            }
            let lhs = delta.apply(ring, &ring.mul(a, b));
            let rhs = ring.mul(&delta.apply(ring, a), &delta.apply(ring, b));
            if !ring.eq(&lhs, &rhs) {
                return Err(format!("not multiplicative on ({}, {})", ring.format(a), ring.format(b)));
            }
        }
    }
    if let Some(n) = delta.declared_order() {
        for g in ring.generators().iter().chain(samples) {
            if !ring.eq(&delta.apply_times(ring, g, n), g) {
                return Err(format!("{}^{} moves {}", delta.name(), n, ring.format(g)));
            }
        }
    }
    Ok(())
}

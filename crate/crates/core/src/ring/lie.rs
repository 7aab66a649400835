//! Commutators, the Lie-nilpotency probe and fixed-point membership.

use super::{Endomorphism, Ring};
use crate::error::{AlgebraError, Result};

/// `ab - ba`.
pub fn commutator<R: Ring>(ring: &R, a: &R::Elem, b: &R::Elem) -> Result<R::Elem> {
    if !ring.contains(a) || !ring.contains(b) {
        return Err(AlgebraError::RingMismatch { ring: ring.describe() });
    }
    Ok(raw_commutator(ring, a, b))
}

fn raw_commutator<R: Ring>(ring: &R, a: &R::Elem, b: &R::Elem) -> R::Elem {
    ring.sub(&ring.mul(a, b), &ring.mul(b, a))
}

/// `[[...[[x1, x2], x3], ...], xn]`; a single element is returned unchanged.
pub fn left_normed_commutator<R: Ring>(ring: &R, xs: &[R::Elem]) -> R::Elem {
    let mut it = xs.iter();
    let first = it.next().cloned().unwrap_or_else(|| ring.zero());
    it.fold(first, |acc, x| raw_commutator(ring, &acc, x))
}

/// True iff the left-normed commutator of every `(k+1)`-tuple drawn from
/// `samples` (with repetition) vanishes.
///
/// A `false` answer proves the ring is not Lie nilpotent of index `k`; a `true`
/// answer is evidence only. Tuples whose leading partial commutator is already
/// zero are skipped as a block.
pub fn lie_nilpotency_probe<R: Ring>(ring: &R, k: usize, samples: &[R::Elem]) -> bool {
    assert!(k >= 1, "index must be at least 1");
    fn descend<R: Ring>(ring: &R, acc: &R::Elem, remaining: usize, samples: &[R::Elem]) -> bool {
        if ring.is_zero(acc) {
            return true;
        }
        if remaining == 0 {
            return false;
        }
        samples.iter().all(|x| descend(ring, &raw_commutator(ring, acc, x), remaining - 1, samples))
    }
    samples.iter().all(|x| descend(ring, x, k, samples))
}

/// Whether `delta(a) = a`.
pub fn fix_membership<R: Ring>(ring: &R, delta: &dyn Endomorphism<R>, a: &R::Elem) -> bool {
    ring.eq(&delta.apply(ring, a), a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rational::{int, Rationals};

    #[test]
    fn commutative_rationals() {
        assert_eq!(commutator(&Rationals, &int(2), &int(3)).unwrap(), int(0));
        let samples: Vec<_> = (-3..4).map(int).collect();
        assert!(lie_nilpotency_probe(&Rationals, 1, &samples));
    }
}

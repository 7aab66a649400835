//! The ring abstraction and the exact scalar rings at the bottom of the tower.
//!
//! A ring is a runtime value (it may carry a generator count, a cyclotomic
//! order, a base ring, ...) that owns the arithmetic of its elements. Elements
//! are plain data in canonical form, so `==` on elements is ring equality.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::rng::TrialRng;

pub mod axioms;
pub mod cyclotomic;
pub mod endomorphism;
pub mod lie;
pub mod rational;

pub use cyclotomic::{cyclotomic_polynomial, cyclotomic_root, CyclotomicField, CyclotomicNumber};
pub use endomorphism::{
    check_endomorphism, Endo, Endomorphism, GeneratorEndomorphism, IdentityEndomorphism,
};
pub use lie::{commutator, fix_membership, left_normed_commutator, lie_nilpotency_probe};
pub use rational::Rationals;

/// A unital, not necessarily commutative ring.
pub trait Ring: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    /// Short descriptor such as `Q` or `E_4`.
    fn describe(&self) -> String;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Whether `a` is a well-formed element of this ring.
    fn contains(&self, _a: &Self::Elem) -> bool {
        true
    }

    /// Algebra generators over the scalar field, when the ring exposes them.
    /// Scalar fields themselves report none.
    fn generators(&self) -> Vec<Self::Elem> {
        Vec::new()
    }

    /// A small random element.
    fn sample(&self, rng: &mut TrialRng) -> Self::Elem;

    /// Print in the element grammar.
    fn format(&self, a: &Self::Elem) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        a == b
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.eq(a, &self.zero())
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        self.eq(a, &self.one())
    }

    fn from_int(&self, n: i64) -> Self::Elem {
        let mut acc = self.zero();
        let mut base = self.one();
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
            k >>= 1;
        }
        if n < 0 {
            self.neg(&acc)
        } else {
            acc
        }
    }

    fn pow(&self, a: &Self::Elem, e: usize) -> Self::Elem {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    /// Left-to-right product.
    fn product<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.one(), |acc, x| self.mul(&acc, x))
    }
}

/// Rings containing the rationals in their center.
pub trait QAlgebra: Ring {
    fn scale_rational(&self, q: &BigRational, a: &Self::Elem) -> Self::Elem;

    fn from_rational(&self, q: &BigRational) -> Self::Elem {
        self.scale_rational(q, &self.one())
    }

    fn from_bigint(&self, n: &BigInt) -> Self::Elem {
        self.from_rational(&BigRational::from_integer(n.clone()))
    }
}

/// Two-sided inverses where they are computable.
pub trait UnitInverse: Ring {
    fn try_inverse(&self, a: &Self::Elem) -> Option<Self::Elem>;
}

/// Rings presented by generators: a homomorphism fixing scalars is determined
/// by the images of the generators.
pub trait Substitution: Ring {
    /// The image of `a` under the scalar-linear homomorphism sending the
    /// `i`-th entry of [`Ring::generators`] to `images[i]`.
    fn substitute(&self, a: &Self::Elem, images: &[Self::Elem]) -> Self::Elem;
}

/// Commutative scalar fields (Q and Q(zeta_N)) used as coefficients of the
/// Grassmann algebra and of polynomial rings.
pub trait ScalarField: QAlgebra + UnitInverse {
    /// Decomposition into `rational * e^k` pieces for printing. `None` marks `k = 0`.
    fn scalar_terms(&self, c: &Self::Elem) -> Vec<(BigRational, Option<usize>)>;

    /// `e^k` for the distinguished root of unity, if the field has one.
    fn root_power(&self, k: i64) -> Option<Self::Elem>;
}

/// Rings whose elements can be read from the element grammar.
pub trait ParseElement: Ring {
    fn interpret_atom(&self, atom: &crate::parse::Atom) -> std::result::Result<Self::Elem, String>;

    fn parse(&self, text: &str) -> std::result::Result<Self::Elem, crate::error::ParseError> {
        crate::parse::parse_with(self, text)
    }
}

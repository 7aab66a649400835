use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng as _;

use super::{ParseElement, QAlgebra, Ring, ScalarField, UnitInverse};
use crate::parse::Atom;
use crate::rng::TrialRng;

/// The field of rational numbers, backed by reduced big-integer fractions.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `p/q`, with `/q` omitted when `q = 1`.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Numerator in `-9..=9`, denominator in `1..=9`.
pub fn sample_rational(rng: &mut TrialRng) -> BigRational {
    rat(rng.gen_range(-9..=9), rng.gen_range(1..=9))
}

pub fn sample_nonzero_rational(rng: &mut TrialRng) -> BigRational {
    loop {
        let q = sample_rational(rng);
        if !q.is_zero() {
            return q;
        }
    }
}

impl Ring for Rationals {
    type Elem = BigRational;

    fn describe(&self) -> String {
        "Q".into()
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn from_int(&self, n: i64) -> BigRational {
        int(n)
    }
    fn sample(&self, rng: &mut TrialRng) -> BigRational {
        sample_rational(rng)
    }
    fn format(&self, a: &BigRational) -> String {
        format_rational(a)
    }
}

impl QAlgebra for Rationals {
    fn scale_rational(&self, q: &BigRational, a: &BigRational) -> BigRational {
        q * a
    }
}

impl UnitInverse for Rationals {
    fn try_inverse(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
}

impl ScalarField for Rationals {
    fn scalar_terms(&self, c: &BigRational) -> Vec<(BigRational, Option<usize>)> {
        if c.is_zero() {
            Vec::new()
        } else {
            vec![(c.clone(), None)]
        }
    }

    fn root_power(&self, _k: i64) -> Option<BigRational> {
        None
    }
}

impl ParseElement for Rationals {
    fn interpret_atom(&self, atom: &Atom) -> Result<BigRational, String> {
        match atom {
            Atom::Number(q) => Ok(q.clone()),
            other => Err(format!("{} is not a rational number", other)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literal_syntax() {
        assert_eq!(format_rational(&rat(6, 4)), "3/2");
        assert_eq!(format_rational(&rat(-4, 1)), "-4");
        assert_eq!(format_rational(&rat(3, -9)), "-1/3");
        assert_eq!(Rationals.parse("3/2").unwrap(), rat(3, 2));
        assert_eq!(Rationals.parse("-4").unwrap(), int(-4));
    }

    #[test]
    fn canonical_form() {
        let q = rat(10, -4);
        assert_eq!(q.denom(), &BigInt::from(2));
        assert_eq!(q.numer(), &BigInt::from(-5));
    }
}

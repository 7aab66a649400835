//! The cyclotomic fields Q(zeta_N) = Q[x]/Phi_N(x).

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::rational::sample_rational;
use super::{ParseElement, QAlgebra, Ring, ScalarField, UnitInverse};
use crate::parse::{join_terms, Atom};
use crate::rng::TrialRng;

/// The `N`-th cyclotomic polynomial, ascending integer coefficients.
///
/// Computed by exact division of `x^N - 1` by `Phi_d` for every proper divisor `d`.
pub fn cyclotomic_polynomial(order: usize) -> Vec<BigInt> {
    assert!(order >= 1, "cyclotomic order must be positive");
    let mut quotient: Vec<BigInt> = vec![BigInt::zero(); order + 1];
    quotient[0] = BigInt::from(-1);
    quotient[order] = BigInt::one();
    for d in (1..order).filter(|d| order % d == 0) {
        let divisor = cyclotomic_polynomial(d);
        quotient = divide_monic_exact(&quotient, &divisor);
    }
    quotient
}

fn divide_monic_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()), "division was not exact");
    quot
}

/// Element of Q(zeta_N) as coefficients of `1, e, ..., e^(d-1)` with `d = deg Phi_N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicNumber {
    order: usize,
    coeffs: Vec<BigRational>,
}

impl CyclotomicNumber {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }
}

/// The field Q(zeta_N); `e` denotes the residue of `x`, a primitive `N`-th root of unity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicField {
    order: usize,
    /// Monic minimal polynomial of `e`, ascending.
    modulus: Arc<Vec<BigRational>>,
}

impl CyclotomicField {
    pub fn new(order: usize) -> Self {
        let modulus = cyclotomic_polynomial(order)
            .into_iter()
            .map(BigRational::from_integer)
            .collect();
        CyclotomicField { order, modulus: Arc::new(modulus) }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn minimal_polynomial(&self) -> &[BigRational] {
        &self.modulus
    }

    pub fn from_coefficients(&self, coeffs: Vec<BigRational>) -> CyclotomicNumber {
        self.reduce(coeffs)
    }

    /// The primitive root `e`.
    pub fn root(&self) -> CyclotomicNumber {
        self.reduce(vec![BigRational::zero(), BigRational::one()])
    }

    /// `e^k`, any integer `k`.
    pub fn root_pow(&self, k: i64) -> CyclotomicNumber {
        let k = k.rem_euclid(self.order as i64) as usize;
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = BigRational::one();
        self.reduce(coeffs)
    }

    pub fn rational(&self, q: BigRational) -> CyclotomicNumber {
        self.reduce(vec![q])
    }

    fn reduce(&self, mut p: Vec<BigRational>) -> CyclotomicNumber {
        let d = self.degree();
        while p.len() > d {
            let top = p.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = p.len() - d;
            for j in 0..d {
                p[shift + j] -= &top * &self.modulus[j];
            }
        }
        p.resize(d, BigRational::zero());
        CyclotomicNumber { order: self.order, coeffs: p }
    }
}

fn trim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Division with remainder in Q[x]; `b` must be nonzero after trimming.
fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let mut b = b.to_vec();
    trim(&mut b);
    let db = b.len() - 1;
    let lead_inv = b[db].recip();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() * &lead_inv;
        for (j, bj) in b.iter().enumerate() {
            rem[shift + j] -= &c * bj;
        }
        quot[shift] = c;
        rem.pop();
        trim(&mut rem);
    }
    (quot, rem)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

impl Ring for CyclotomicField {
    type Elem = CyclotomicNumber;

    fn describe(&self) -> String {
        format!("Q(e), e^{} = 1", self.order)
    }

    fn zero(&self) -> CyclotomicNumber {
        self.reduce(Vec::new())
    }

    fn one(&self) -> CyclotomicNumber {
        self.rational(BigRational::one())
    }

    fn add(&self, a: &CyclotomicNumber, b: &CyclotomicNumber) -> CyclotomicNumber {
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        CyclotomicNumber { order: self.order, coeffs }
    }

    fn neg(&self, a: &CyclotomicNumber) -> CyclotomicNumber {
        CyclotomicNumber { order: self.order, coeffs: a.coeffs.iter().map(|x| -x).collect() }
    }

    fn mul(&self, a: &CyclotomicNumber, b: &CyclotomicNumber) -> CyclotomicNumber {
        self.reduce(poly_mul(&a.coeffs, &b.coeffs))
    }

    fn is_zero(&self, a: &CyclotomicNumber) -> bool {
        a.coeffs.iter().all(|c| c.is_zero())
    }

    fn contains(&self, a: &CyclotomicNumber) -> bool {
        a.order == self.order && a.coeffs.len() == self.degree()
    }

    fn sample(&self, rng: &mut TrialRng) -> CyclotomicNumber {
        let coeffs = (0..self.degree()).map(|_| sample_rational(rng)).collect();
        CyclotomicNumber { order: self.order, coeffs }
    }

    fn format(&self, a: &CyclotomicNumber) -> String {
        let terms: Vec<(BigRational, String)> = self
            .scalar_terms(a)
            .into_iter()
            .map(|(q, k)| (q, k.map(|k| format!("e^{}", k)).unwrap_or_default()))
            .collect();
        join_terms(&terms)
    }
}

impl QAlgebra for CyclotomicField {
    fn scale_rational(&self, q: &BigRational, a: &CyclotomicNumber) -> CyclotomicNumber {
        CyclotomicNumber { order: self.order, coeffs: a.coeffs.iter().map(|x| q * x).collect() }
    }
}

impl UnitInverse for CyclotomicField {
    /// Extended Euclid against the minimal polynomial.
    fn try_inverse(&self, a: &CyclotomicNumber) -> Option<CyclotomicNumber> {
        if self.is_zero(a) {
            return None;
        }
        let mut r0 = self.modulus.to_vec();
        let mut r1 = a.coeffs.clone();
        trim(&mut r1);
        let mut t0: Vec<BigRational> = Vec::new();
        let mut t1 = vec![BigRational::one()];
        while !r1.is_empty() {
            let (q, r) = poly_divmod(&r0, &r1);
            let t2 = poly_sub(&t0, &poly_mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            t0 = std::mem::replace(&mut t1, t2);
        }
        // r0 is a nonzero constant because Phi_N is irreducible.
        if r0.len() != 1 {
            return None;
        }
        let c = r0[0].recip();
        Some(self.reduce(t0.into_iter().map(|x| x * &c).collect()))
    }
}

impl ScalarField for CyclotomicField {
    fn scalar_terms(&self, c: &CyclotomicNumber) -> Vec<(BigRational, Option<usize>)> {
        c.coeffs
            .iter()
            .enumerate()
            .filter(|(_, q)| !q.is_zero())
            .map(|(k, q)| (q.clone(), (k > 0).then_some(k)))
            .collect()
    }

    fn root_power(&self, k: i64) -> Option<CyclotomicNumber> {
        Some(self.root_pow(k))
    }
}

impl ParseElement for CyclotomicField {
    fn interpret_atom(&self, atom: &Atom) -> Result<CyclotomicNumber, String> {
        match atom {
            Atom::Number(q) => Ok(self.rational(q.clone())),
            Atom::Root(k) => Ok(self.root_pow(*k)),
            other => Err(format!("{} is not a cyclotomic number", other)),
        }
    }
}

/// The primitive root `e` of Q(zeta_N) (`N >= 1`).
pub fn cyclotomic_root(order: usize) -> CyclotomicNumber {
    CyclotomicField::new(order).root()
}

/// Smallest `k` in `1..=N` with `z^k = 1`.
pub fn multiplicative_order_of_root(field: &CyclotomicField, z: &CyclotomicNumber) -> Option<usize> {
    let mut acc = z.clone();
    for k in 1..=field.order() {
        if field.is_one(&acc) {
            return Some(k);
        }
        acc = field.mul(&acc, z);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rational::int;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(3), ints(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn roots_of_order_one_two_four() {
        let f1 = CyclotomicField::new(1);
        assert!(f1.is_one(&f1.root()));
        let f2 = CyclotomicField::new(2);
        assert_eq!(f2.root(), f2.rational(int(-1)));
        let f4 = CyclotomicField::new(4);
        let e = f4.root();
        assert_eq!(f4.mul(&e, &e), f4.rational(int(-1)));
        assert_eq!(cyclotomic_root(4), e);
    }

    #[test]
    fn root_is_primitive() {
        for n in 1..=12 {
            let f = CyclotomicField::new(n);
            assert_eq!(multiplicative_order_of_root(&f, &f.root()), Some(n));
        }
    }

    #[test]
    fn power_law_and_vanishing_power_sums() {
        for n in 2..=8usize {
            let f = CyclotomicField::new(n);
            for a in 0..n as i64 {
                for b in 0..n as i64 {
                    assert_eq!(f.mul(&f.root_pow(a), &f.root_pow(b)), f.root_pow((a + b) % n as i64));
                }
            }
            for j in 1..n as i64 {
                let s = (0..n as i64).fold(f.zero(), |acc, k| f.add(&acc, &f.root_pow(j * k)));
                assert!(f.is_zero(&s), "power sum j={} n={}", j, n);
            }
        }
    }

    #[test]
    fn inverses() {
        let f = CyclotomicField::new(5);
        let mut rng = crate::rng::seeded(3);
        for _ in 0..20 {
            let a = f.sample(&mut rng);
            if f.is_zero(&a) {
                continue;
            }
            let inv = f.try_inverse(&a).unwrap();
            assert!(f.is_one(&f.mul(&a, &inv)));
        }
        assert!(f.try_inverse(&f.zero()).is_none());
    }

    #[test]
    fn literal_round_trip() {
        let f = CyclotomicField::new(3);
        let z = f.add(&f.rational(int(2)), &f.scale_rational(&int(-1), &f.root()));
        let text = f.format(&z);
        assert_eq!(text, "2 - e^1");
        assert_eq!(f.parse(&text).unwrap(), z);
        // e^2 = -1 - e for N = 3
        assert_eq!(f.parse("e^2").unwrap(), f.parse("-1 - e^1").unwrap());
    }
}

//! The Grassmann algebra `E_m` on anticommuting generators `v1..vm`.
//!
//! Basis monomials are subsets of `{1..m}` encoded as bitmasks (bit `i - 1`
//! stands for `v_i`), always read in ascending generator order.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng as _;

use crate::error::{AlgebraError, Result};
use crate::parse::{join_terms, Atom};
use crate::ring::{
    Endo, GeneratorEndomorphism, ParseElement, QAlgebra, Ring, ScalarField, Substitution, UnitInverse,
};
use crate::rng::TrialRng;

/// Largest supported generator count.
pub const MAX_GENERATORS: usize = 16;

/// Exact element of `E_m`: a sparse map from monomial masks to nonzero scalars.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GrassmannElement<C> {
    m: usize,
    terms: BTreeMap<u32, C>,
}

impl<C> GrassmannElement<C> {
    pub fn generator_count(&self) -> usize {
        self.m
    }

    /// Nonzero terms in mask order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &C)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn coefficient(&self, mask: u32) -> Option<&C> {
        self.terms.get(&mask)
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }
}

/// Sign of `v_S * v_T` for disjoint `S`, `T`: `(-1)^(inversions between S and T)`.
/// Returns `None` when the product vanishes.
pub fn basis_product_sign(s: u32, t: u32) -> Option<i32> {
    if s & t != 0 {
        return None;
    }
    let mut inversions = 0u32;
    let mut rest = t;
    while rest != 0 {
        let bit = rest.trailing_zeros();
        // generators of S above position `bit` must pass over it
        inversions += (s >> bit).count_ones();
        rest &= rest - 1;
    }
    Some(if inversions % 2 == 0 { 1 } else { -1 })
}

/// Shape of random elements: support size and monomial degree bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleParams {
    pub max_degree: usize,
    pub max_support: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrassmannAlgebra<K: ScalarField> {
    m: usize,
    scalars: K,
    params: SampleParams,
}

impl<K: ScalarField> GrassmannAlgebra<K> {
    pub fn new(m: usize, scalars: K) -> Self {
        assert!(m <= MAX_GENERATORS, "at most {} generators are supported", MAX_GENERATORS);
        GrassmannAlgebra { m, scalars, params: SampleParams { max_degree: m, max_support: 3 } }
    }

    pub fn with_sample_params(mut self, params: SampleParams) -> Self {
        self.params = params;
        self
    }

    pub fn generator_count(&self) -> usize {
        self.m
    }

    pub fn scalars(&self) -> &K {
        &self.scalars
    }

    fn full_mask(&self) -> u32 {
        ((1u64 << self.m) - 1) as u32
    }

    fn from_map(&self, mut terms: BTreeMap<u32, K::Elem>) -> GrassmannElement<K::Elem> {
        terms.retain(|_, c| !self.scalars.is_zero(c));
        GrassmannElement { m: self.m, terms }
    }

    pub fn monomial(&self, mask: u32, c: K::Elem) -> GrassmannElement<K::Elem> {
        assert!(mask & !self.full_mask() == 0, "monomial uses a generator beyond v{}", self.m);
        self.from_map(BTreeMap::from([(mask, c)]))
    }

    pub fn scalar(&self, c: K::Elem) -> GrassmannElement<K::Elem> {
        self.monomial(0, c)
    }

    /// `v_i`, one-based.
    pub fn generator(&self, i: usize) -> GrassmannElement<K::Elem> {
        assert!((1..=self.m).contains(&i), "generator v{} outside 1..={}", i, self.m);
        self.monomial(1 << (i - 1), self.scalars.one())
    }

    /// Every basis monomial with coefficient one, ordered by (degree, mask).
    pub fn basis(&self) -> Vec<GrassmannElement<K::Elem>> {
        let mut masks: Vec<u32> = (0..=self.full_mask()).collect();
        masks.sort_by_key(|m| (m.count_ones(), *m));
        masks.into_iter().map(|m| self.monomial(m, self.scalars.one())).collect()
    }

    fn map_terms(
        &self,
        a: &GrassmannElement<K::Elem>,
        f: impl Fn(u32, &K::Elem) -> Option<K::Elem>,
    ) -> GrassmannElement<K::Elem> {
        self.from_map(a.terms.iter().filter_map(|(&s, c)| f(s, c).map(|c| (s, c))).collect())
    }

    /// Checked product; fails on a generator-count mismatch.
    pub fn try_mul(
        &self,
        a: &GrassmannElement<K::Elem>,
        b: &GrassmannElement<K::Elem>,
    ) -> Result<GrassmannElement<K::Elem>> {
        if a.m != self.m || b.m != self.m {
            return Err(AlgebraError::RingMismatch { ring: self.describe() });
        }
        Ok(self.mul(a, b))
    }

    /// `(even part, odd part)`.
    pub fn parity_split(
        &self,
        a: &GrassmannElement<K::Elem>,
    ) -> (GrassmannElement<K::Elem>, GrassmannElement<K::Elem>) {
        (
            self.map_terms(a, |s, c| (s.count_ones() % 2 == 0).then(|| c.clone())),
            self.map_terms(a, |s, c| (s.count_ones() % 2 == 1).then(|| c.clone())),
        )
    }

    pub fn is_even(&self, a: &GrassmannElement<K::Elem>) -> bool {
        a.terms.keys().all(|s| s.count_ones() % 2 == 0)
    }

    pub fn is_odd(&self, a: &GrassmannElement<K::Elem>) -> bool {
        a.terms.keys().all(|s| s.count_ones() % 2 == 1)
    }

    /// The parity automorphism: even part minus odd part.
    pub fn epsilon(&self, a: &GrassmannElement<K::Elem>) -> GrassmannElement<K::Elem> {
        self.map_terms(a, |s, c| {
            Some(if s.count_ones() % 2 == 0 { c.clone() } else { self.scalars.neg(c) })
        })
    }

    /// Scales each degree-`k` monomial by `e^k`.
    pub fn rho(&self, a: &GrassmannElement<K::Elem>, e: &K::Elem) -> Result<GrassmannElement<K::Elem>> {
        if !self.scalars.contains(e) {
            return Err(AlgebraError::ScalarMismatch(format!(
                "root is not an element of {}",
                self.scalars.describe()
            )));
        }
        let powers: Vec<K::Elem> = (0..=self.m).map(|k| self.scalars.pow(e, k)).collect();
        Ok(self.map_terms(a, |s, c| Some(self.scalars.mul(&powers[s.count_ones() as usize], c))))
    }

    /// Conjugation `(1 + v1) g (1 - v1)`.
    pub fn sigma(&self, a: &GrassmannElement<K::Elem>) -> GrassmannElement<K::Elem> {
        let (left, right) = self.sigma_factors();
        self.mul(&self.mul(&left, a), &right)
    }

    /// Inverse of [`Self::sigma`]: `(1 - v1) g (1 + v1)`.
    pub fn sigma_inverse(&self, a: &GrassmannElement<K::Elem>) -> GrassmannElement<K::Elem> {
        let (left, right) = self.sigma_factors();
        self.mul(&self.mul(&right, a), &left)
    }

    fn sigma_factors(&self) -> (GrassmannElement<K::Elem>, GrassmannElement<K::Elem>) {
        let one = self.one();
        let v1 = self.generator(1);
        (self.add(&one, &v1), self.sub(&one, &v1))
    }

    /// Restriction to monomials of degree `k`.
    pub fn homogeneous_component(&self, a: &GrassmannElement<K::Elem>, k: usize) -> GrassmannElement<K::Elem> {
        self.map_terms(a, |s, c| (s.count_ones() as usize == k).then(|| c.clone()))
    }

    /// Components of the `Z_n`-grading by degree modulo `n`; index `i` holds
    /// the monomials of degree `i mod n`.
    pub fn degree_residue_components(&self, a: &GrassmannElement<K::Elem>, n: usize) -> Vec<GrassmannElement<K::Elem>> {
        (0..n)
            .map(|r| self.map_terms(a, |s, c| (s.count_ones() as usize % n == r).then(|| c.clone())))
            .collect()
    }

    /// Whether every monomial of `a` has degree congruent to `residue` modulo `n`.
    pub fn residue_component_membership(&self, a: &GrassmannElement<K::Elem>, residue: i64, n: usize) -> bool {
        let r = residue.rem_euclid(n as i64) as usize;
        a.terms.keys().all(|s| s.count_ones() as usize % n == r)
    }

    /// The eigenvalue test `rho_e(a) = e^residue * a`.
    pub fn rho_eigen_membership(&self, a: &GrassmannElement<K::Elem>, residue: i64, e: &K::Elem) -> Result<bool> {
        let lhs = self.rho(a, e)?;
        let factor = match self.scalars.try_inverse(e) {
            Some(inv) if residue < 0 => self.scalars.pow(&inv, residue.unsigned_abs() as usize),
            _ => self.scalars.pow(e, residue.unsigned_abs() as usize),
        };
        Ok(lhs == self.scale(&factor, a))
    }

    /// `c * a` for a scalar `c`.
    pub fn scale(&self, c: &K::Elem, a: &GrassmannElement<K::Elem>) -> GrassmannElement<K::Elem> {
        self.map_terms(a, |_, x| Some(self.scalars.mul(c, x)))
    }

    /// Random element whose monomials have degrees accepted by `degree_ok`.
    /// Zero when no monomial qualifies.
    pub fn sample_filtered(
        &self,
        rng: &mut TrialRng,
        degree_ok: impl Fn(usize) -> bool,
    ) -> GrassmannElement<K::Elem> {
        let masks: Vec<u32> = (0..=self.full_mask())
            .filter(|m| (m.count_ones() as usize) <= self.params.max_degree && degree_ok(m.count_ones() as usize))
            .collect();
        if masks.is_empty() {
            return self.zero();
        }
        let support = rng.gen_range(1..=self.params.max_support.max(1));
        let mut terms = BTreeMap::new();
        for _ in 0..support {
            let mask = *masks.choose(rng).unwrap();
            let c = loop {
                let c = self.scalars.sample(rng);
                if !self.scalars.is_zero(&c) {
                    break c;
                }
            };
            terms.insert(mask, c);
        }
        self.from_map(terms)
    }

    /// Like [`Self::sample_filtered`] but retries until the result is nonzero
    /// (when a qualifying monomial exists).
    pub fn sample_nonzero_filtered(
        &self,
        rng: &mut TrialRng,
        degree_ok: impl Fn(usize) -> bool + Copy,
    ) -> GrassmannElement<K::Elem> {
        for _ in 0..64 {
            let x = self.sample_filtered(rng, degree_ok);
            if !self.is_zero(&x) {
                return x;
            }
        }
        self.zero()
    }

    fn format_monomial(mask: u32) -> String {
        (0..32).filter(|i| mask >> i & 1 == 1).map(|i| format!("v{}", i + 1)).collect::<Vec<_>>().join("*")
    }

    /// The parity automorphism as a generator map `v_i -> -v_i`.
    pub fn epsilon_endomorphism(&self) -> Endo<Self>
    where
        K: 'static,
    {
        let images = (1..=self.m).map(|i| self.neg(&self.generator(i))).collect();
        Arc::new(GeneratorEndomorphism::new("epsilon", images, Some(2)))
    }

    /// `v_i -> e v_i` for a root `e` of multiplicative order `order`.
    pub fn rho_endomorphism(&self, e: &K::Elem, order: usize) -> Endo<Self>
    where
        K: 'static,
    {
        let images = (1..=self.m).map(|i| self.scale(e, &self.generator(i))).collect();
        Arc::new(GeneratorEndomorphism::new(format!("rho_e (order {})", order), images, Some(order)))
    }

    /// Conjugation by `1 + v1`; it has infinite order in characteristic zero.
    pub fn sigma_endomorphism(&self) -> Endo<Self>
    where
        K: 'static,
    {
        let images = (1..=self.m).map(|i| self.sigma(&self.generator(i))).collect();
        Arc::new(GeneratorEndomorphism::new("sigma", images, None))
    }
}

impl<K: ScalarField> Ring for GrassmannAlgebra<K> {
    type Elem = GrassmannElement<K::Elem>;

    fn describe(&self) -> String {
        format!("E_{} over {}", self.m, self.scalars.describe())
    }

    fn zero(&self) -> Self::Elem {
        GrassmannElement { m: self.m, terms: BTreeMap::new() }
    }

    fn one(&self) -> Self::Elem {
        self.scalar(self.scalars.one())
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut terms = a.terms.clone();
        for (s, c) in &b.terms {
            match terms.get_mut(s) {
                Some(x) => *x = self.scalars.add(x, c),
                None => {
                    terms.insert(*s, c.clone());
                }
            }
        }
        self.from_map(terms)
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        GrassmannElement { m: self.m, terms: a.terms.iter().map(|(s, c)| (*s, self.scalars.neg(c))).collect() }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut terms: BTreeMap<u32, K::Elem> = BTreeMap::new();
        for (s, x) in &a.terms {
            for (t, y) in &b.terms {
                let Some(sign) = basis_product_sign(*s, *t) else { continue };
                let mut c = self.scalars.mul(x, y);
                if sign < 0 {
                    c = self.scalars.neg(&c);
                }
                match terms.get_mut(&(s | t)) {
                    Some(acc) => *acc = self.scalars.add(acc, &c),
                    None => {
                        terms.insert(s | t, c);
                    }
                }
            }
        }
        self.from_map(terms)
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.terms.is_empty()
    }

    fn contains(&self, a: &Self::Elem) -> bool {
        a.m == self.m
            && a.terms
                .iter()
                .all(|(s, c)| s & !self.full_mask() == 0 && self.scalars.contains(c) && !self.scalars.is_zero(c))
    }

    fn generators(&self) -> Vec<Self::Elem> {
        (1..=self.m).map(|i| self.generator(i)).collect()
    }

    fn sample(&self, rng: &mut TrialRng) -> Self::Elem {
        self.sample_filtered(rng, |_| true)
    }

    /// Terms sorted by (degree, mask), generators ascending.
    fn format(&self, a: &Self::Elem) -> String {
        let mut masks: Vec<u32> = a.terms.keys().copied().collect();
        masks.sort_by_key(|m| (m.count_ones(), *m));
        let mut pieces: Vec<(BigRational, String)> = Vec::new();
        for mask in masks {
            let mono = Self::format_monomial(mask);
            for (q, k) in self.scalars.scalar_terms(&a.terms[&mask]) {
                let mut factors = Vec::new();
                if let Some(k) = k {
                    factors.push(format!("e^{}", k));
                }
                if !mono.is_empty() {
                    factors.push(mono.clone());
                }
                pieces.push((q, factors.join("*")));
            }
        }
        join_terms(&pieces)
    }
}

impl<K: ScalarField> QAlgebra for GrassmannAlgebra<K> {
    fn scale_rational(&self, q: &BigRational, a: &Self::Elem) -> Self::Elem {
        self.map_terms(a, |_, c| Some(self.scalars.scale_rational(q, c)))
    }
}

impl<K: ScalarField> UnitInverse for GrassmannAlgebra<K> {
    /// `a` is a unit iff its scalar part `c` is nonzero; then
    /// `a^-1 = c^-1 (1 - n + n^2 - ...)` with `n = c^-1 a - 1` nilpotent.
    fn try_inverse(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let c = a.terms.get(&0)?;
        let c_inv = self.scalars.try_inverse(c)?;
        let nil = self.sub(&self.scale(&c_inv, a), &self.one());
        let minus_nil = self.neg(&nil);
        let mut sum = self.one();
        let mut power = self.one();
        loop {
            power = self.mul(&power, &minus_nil);
            if self.is_zero(&power) {
                break;
            }
            sum = self.add(&sum, &power);
        }
        Some(self.scale(&c_inv, &sum))
    }
}

impl<K: ScalarField> Substitution for GrassmannAlgebra<K> {
    fn substitute(&self, a: &Self::Elem, images: &[Self::Elem]) -> Self::Elem {
        assert_eq!(images.len(), self.m, "one image per generator");
        let mut acc = self.zero();
        for (s, c) in &a.terms {
            let mut prod = self.scalar(c.clone());
            for i in (0..self.m).filter(|i| s >> i & 1 == 1) {
                prod = self.mul(&prod, &images[i]);
            }
            acc = self.add(&acc, &prod);
        }
        acc
    }
}

impl<K: ScalarField> ParseElement for GrassmannAlgebra<K> {
    fn interpret_atom(&self, atom: &Atom) -> std::result::Result<Self::Elem, String> {
        match atom {
            Atom::Number(q) => Ok(self.scalar(self.scalars.from_rational(q))),
            Atom::Root(k) => self
                .scalars
                .root_power(*k)
                .map(|c| self.scalar(c))
                .ok_or_else(|| format!("e^{} needs cyclotomic scalars", k)),
            Atom::Generator(i) if *i <= self.m => Ok(self.generator(*i)),
            Atom::Generator(i) => Err(format!("generator v{} exceeds m = {}", i, self.m)),
            other => Err(format!("{} is not an element of {}", other, self.describe())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rational::{int, rat, Rationals};
    use crate::ring::{commutator, fix_membership, lie_nilpotency_probe, CyclotomicField};

    fn e4() -> GrassmannAlgebra<Rationals> {
        GrassmannAlgebra::new(4, Rationals)
    }

    fn p(alg: &GrassmannAlgebra<Rationals>, s: &str) -> GrassmannElement<BigRational> {
        alg.parse(s).unwrap()
    }

    #[test]
    fn defining_relations() {
        let e = e4();
        assert_eq!(e.mul(&e.generator(1), &e.generator(2)), p(&e, "v1*v2"));
        assert_eq!(e.mul(&e.generator(2), &e.generator(1)), e.neg(&p(&e, "v1*v2")));
        assert_eq!(e.mul(&p(&e, "1 + v1"), &p(&e, "1 - v1")), e.one());
        for i in 1..=4 {
            assert!(e.is_zero(&e.mul(&e.generator(i), &e.generator(i))));
            for j in i..=4 {
                let a = e.generator(i);
                let b = e.generator(j);
                assert!(e.is_zero(&e.add(&e.mul(&a, &b), &e.mul(&b, &a))));
            }
        }
    }

    #[test]
    fn sign_by_inversions() {
        // v2 * v1 = -v1 v2; v2v3 * v1 = +v1v2v3; v1v3 * v2 = -v1v2v3
        assert_eq!(basis_product_sign(0b010, 0b001), Some(-1));
        assert_eq!(basis_product_sign(0b110, 0b001), Some(1));
        assert_eq!(basis_product_sign(0b101, 0b010), Some(-1));
        assert_eq!(basis_product_sign(0b011, 0b010), None);
    }

    #[test]
    fn commutator_examples() {
        let e = e4();
        let c = commutator(&e, &e.generator(1), &e.generator(2)).unwrap();
        assert_eq!(c, p(&e, "2*v1*v2"));
        let c = commutator(&e, &p(&e, "v1*v2"), &e.generator(3)).unwrap();
        assert!(e.is_zero(&c));
        let other = GrassmannAlgebra::new(3, Rationals);
        assert!(commutator(&e, &e.generator(1), &other.generator(1)).is_err());
        assert!(e.try_mul(&e.generator(1), &other.generator(1)).is_err());
    }

    #[test]
    fn lie_nilpotent_of_index_two() {
        let e3 = GrassmannAlgebra::new(3, Rationals);
        assert!(lie_nilpotency_probe(&e3, 2, &e3.basis()));
        assert!(!lie_nilpotency_probe(&e3, 1, &e3.basis()));
    }

    #[test]
    fn parity_split_examples() {
        let e = e4();
        assert_eq!(e.parity_split(&p(&e, "1 + v1")), (e.one(), e.generator(1)));
        assert_eq!(e.parity_split(&p(&e, "v1*v2 + v1*v2*v3")), (p(&e, "v1*v2"), p(&e, "v1*v2*v3")));
        assert_eq!(e.parity_split(&e.zero()), (e.zero(), e.zero()));
    }

    #[test]
    fn epsilon_examples() {
        let e = e4();
        assert_eq!(e.epsilon(&e.generator(1)), p(&e, "-v1"));
        assert_eq!(e.epsilon(&p(&e, "3 + v1*v2")), p(&e, "3 + v1*v2"));
        assert_eq!(e.epsilon(&p(&e, "1 + v1 + v1*v2*v3")), p(&e, "1 - v1 - v1*v2*v3"));
        let eps = e.epsilon_endomorphism();
        for b in e.basis() {
            assert_eq!(eps.apply(&e, &b), e.epsilon(&b));
            assert_eq!(e.epsilon(&e.epsilon(&b)), b);
        }
    }

    #[test]
    fn rho_examples() {
        let f = CyclotomicField::new(3);
        let e = GrassmannAlgebra::new(4, f.clone());
        let root = f.root();
        assert_eq!(e.rho(&e.generator(1), &root).unwrap(), e.scale(&root, &e.generator(1)));
        let v123 = e.parse("v1*v2*v3").unwrap();
        assert_eq!(e.rho(&v123, &root).unwrap(), v123);
        let rho = e.rho_endomorphism(&root, 3);
        for b in e.basis() {
            assert_eq!(rho.apply(&e, &b), e.rho(&b, &root).unwrap());
            assert_eq!(rho.apply_times(&e, &b, 3), b);
        }
        // a root from another field is rejected
        assert!(e.rho(&v123, &CyclotomicField::new(4).root()).is_err());
    }

    #[test]
    fn rho_minus_one_is_epsilon() {
        let e = e4();
        let mut rng = crate::rng::seeded(5);
        for _ in 0..50 {
            let a = e.sample(&mut rng);
            assert_eq!(e.rho(&a, &int(-1)).unwrap(), e.epsilon(&a));
        }
    }

    #[test]
    fn sigma_examples() {
        let e = e4();
        assert_eq!(e.sigma(&e.generator(1)), e.generator(1));
        assert_eq!(e.sigma(&e.one()), e.one());
        // oracle: expand (1 + v1) v2 (1 - v1) = v2 + v1v2 - v2v1 - v1v2v1 = v2 + 2 v1v2
        let v2 = e.generator(2);
        let expected = e.add(&v2, &p(&e, "2*v1*v2"));
        assert_eq!(e.sigma(&v2), expected);
        let sigma = e.sigma_endomorphism();
        let mut rng = crate::rng::seeded(11);
        for _ in 0..30 {
            let a = e.sample(&mut rng);
            let b = e.sample(&mut rng);
            assert_eq!(e.sigma(&e.mul(&a, &b)), e.mul(&e.sigma(&a), &e.sigma(&b)));
            assert_eq!(e.sigma_inverse(&e.sigma(&a)), a);
            assert_eq!(sigma.apply(&e, &a), e.sigma(&a));
        }
    }

    #[test]
    fn fixed_monomials_of_sigma_are_e0_and_e0_v1() {
        let e = e4();
        let sigma = e.sigma_endomorphism();
        for (mask, b) in (0u32..16).map(|m| (m, e.monomial(m, int(1)))) {
            let expected = mask.count_ones() % 2 == 0 || mask & 1 == 1;
            assert_eq!(fix_membership(&e, sigma.as_ref(), &b), expected, "mask {:b}", mask);
        }
        assert!(fix_membership(&e, e.epsilon_endomorphism().as_ref(), &p(&e, "v1*v2")));
        assert!(!fix_membership(&e, e.epsilon_endomorphism().as_ref(), &e.generator(1)));
    }

    #[test]
    fn homogeneous_components() {
        let e = e4();
        let a = p(&e, "2 + v1 + v1*v2");
        assert_eq!(e.homogeneous_component(&a, 2), p(&e, "v1*v2"));
        assert_eq!(e.homogeneous_component(&a, 0), p(&e, "2"));
        assert!(e.is_zero(&e.homogeneous_component(&p(&e, "v1*v2*v3"), 1)));
    }

    #[test]
    fn residue_components_agree_with_rho() {
        let e = e4();
        assert!(e.residue_component_membership(&p(&e, "v1*v2*v3"), 1, 2));
        assert!(!e.residue_component_membership(&p(&e, "v1 + v1*v2"), 1, 2));
        let f = CyclotomicField::new(3);
        let e3 = GrassmannAlgebra::new(4, f.clone());
        let a = e3.parse("v1*v2*v3*v4").unwrap();
        assert!(e3.residue_component_membership(&a, 1, 3));
        assert!(e3.rho_eigen_membership(&a, 1, &f.root()).unwrap());
        let mut rng = crate::rng::seeded(2);
        for _ in 0..40 {
            let x = e3.sample(&mut rng);
            for r in -2..3 {
                assert_eq!(
                    e3.residue_component_membership(&x, r, 3),
                    e3.rho_eigen_membership(&x, r, &f.root()).unwrap()
                );
            }
        }
    }

    #[test]
    fn parser_canonicalizes() {
        let e = e4();
        let a = p(&e, "3/2*v1*v2 + 1 - v3");
        assert_eq!(a.coefficient(0), Some(&int(1)));
        assert_eq!(a.coefficient(0b011), Some(&rat(3, 2)));
        assert_eq!(a.coefficient(0b100), Some(&int(-1)));
        assert_eq!(e.format(&a), "1 - v3 + 3/2*v1*v2");
        assert_eq!(p(&e, "v2*v1"), e.neg(&p(&e, "v1*v2")));
        assert!(e.is_zero(&p(&e, "v1*v1")));
        let err = e.parse("v5").unwrap_err();
        assert_eq!(err.position, 0);
        assert!(e.parse("v1 +").is_err());
    }

    #[test]
    fn inverses() {
        let e = e4();
        let a = p(&e, "1 + v1");
        assert_eq!(e.try_inverse(&a).unwrap(), p(&e, "1 - v1"));
        assert!(e.try_inverse(&e.generator(1)).is_none());
        let mut rng = crate::rng::seeded(9);
        for _ in 0..30 {
            let x = e.add(&e.from_int(3), &e.sample(&mut rng));
            if let Some(inv) = e.try_inverse(&x) {
                assert_eq!(e.mul(&x, &inv), e.one());
                assert_eq!(e.mul(&inv, &x), e.one());
            }
        }
    }
}

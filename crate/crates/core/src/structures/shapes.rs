//! Random members of concrete twisted matrix algebras, built entry by entry
//! from the shape each entry must have.

use crate::error::Result;
use crate::grassmann::{GrassmannAlgebra, GrassmannElement};
use crate::matrix::{blow_up, transitive_from_units, SquareMatrix, TransitiveMatrix};
use crate::ring::{Endomorphism, Ring, ScalarField};
use crate::rng::TrialRng;

type Elem<K> = GrassmannElement<<K as Ring>::Elem>;

fn sample_even<K: ScalarField>(e: &GrassmannAlgebra<K>, rng: &mut TrialRng) -> Elem<K> {
    e.sample_filtered(rng, |d| d % 2 == 0)
}

fn sample_odd<K: ScalarField>(e: &GrassmannAlgebra<K>, rng: &mut TrialRng) -> Elem<K> {
    e.sample_filtered(rng, |d| d % 2 == 1)
}

/// The sign pattern `P(d, n)`: units `1` on the first `d` indices, `-1` after.
pub fn supermatrix_pattern<R: crate::ring::UnitInverse>(ring: &R, d: usize, n: usize) -> Result<TransitiveMatrix<R::Elem>> {
    let g: Vec<_> = (0..n).map(|i| if i < d { ring.one() } else { ring.neg(&ring.one()) }).collect();
    transitive_from_units(ring, &g)
}

/// `M_{d, n-d}(E)`: even diagonal blocks, odd off-diagonal blocks.
pub fn supermatrix_member<K: ScalarField>(e: &GrassmannAlgebra<K>, d: usize, n: usize, rng: &mut TrialRng) -> SquareMatrix<Elem<K>> {
    SquareMatrix::from_fn(n, |i, j| if (i < d) == (j < d) { sample_even(e, rng) } else { sample_odd(e, rng) })
}

/// Entry `(i, j)` supported on degrees `i - j mod n`, so `rho_e(a_ij) = e^{i-j} a_ij`.
pub fn rho_e_member<K: ScalarField>(e: &GrassmannAlgebra<K>, n: usize, rng: &mut TrialRng) -> SquareMatrix<Elem<K>> {
    SquareMatrix::from_fn(n, |i, j| {
        let residue = (i + n - j) % n;
        e.sample_filtered(rng, |deg| deg % n == residue)
    })
}

/// `Q = [[1, 1 + v1 v2], [1 - v1 v2, 1]]`.
pub fn q_matrix<K: ScalarField>(e: &GrassmannAlgebra<K>) -> Result<TransitiveMatrix<Elem<K>>> {
    let one = e.one();
    let v12 = e.mul(&e.generator(1), &e.generator(2));
    TransitiveMatrix::certify(
        e,
        SquareMatrix::from_rows(vec![vec![one.clone(), e.add(&one, &v12)], vec![e.sub(&one, &v12), one]])?,
    )
}

/// `Q(d, n)`, the blow-up of `Q` with blocks of sizes `d` and `n - d`.
pub fn q_blow_up<K: ScalarField>(e: &GrassmannAlgebra<K>, d: usize, n: usize) -> Result<TransitiveMatrix<Elem<K>>> {
    blow_up(e, &q_matrix(e)?, &[d, n])
}

/// Random element of `Fix(sigma) = E_0 + E_0 v1`.
pub fn sigma_fixed<K: ScalarField>(e: &GrassmannAlgebra<K>, rng: &mut TrialRng) -> Elem<K> {
    let a = sample_even(e, rng);
    let b = sample_even(e, rng);
    e.add(&a, &e.mul(&b, &e.generator(1)))
}

/// Random `g` with `sigma(g) = (1 + v1 v2) g`: `g0 + (v2 g0 + h v1) / 2`.
pub fn sigma_upper<K: ScalarField>(e: &GrassmannAlgebra<K>, rng: &mut TrialRng) -> Elem<K> {
    let g0 = sample_even(e, rng);
    let h = sample_even(e, rng);
    let odd = e.add(&e.mul(&e.generator(2), &g0), &e.mul(&h, &e.generator(1)));
    e.add(&g0, &e.scale(&half::<K>(e), &odd))
}

/// Random `g` with `sigma(g) = (1 - v1 v2) g`: `g0 + (-v2 g0 + h v1) / 2`.
pub fn sigma_lower<K: ScalarField>(e: &GrassmannAlgebra<K>, rng: &mut TrialRng) -> Elem<K> {
    let g0 = sample_even(e, rng);
    let h = sample_even(e, rng);
    let odd = e.sub(&e.mul(&h, &e.generator(1)), &e.mul(&e.generator(2), &g0));
    e.add(&g0, &e.scale(&half::<K>(e), &odd))
}

fn half<K: ScalarField>(e: &GrassmannAlgebra<K>) -> K::Elem {
    e.scalars().from_rational(&crate::ring::rational::rat(1, 2))
}

/// Member of `M_n(E, sigma, Q(d, n))`: `sigma(a_ij) = q_ij a_ij` entrywise.
pub fn sigma_member<K: ScalarField>(e: &GrassmannAlgebra<K>, d: usize, n: usize, rng: &mut TrialRng) -> SquareMatrix<Elem<K>> {
    SquareMatrix::from_fn(n, |i, j| match (i < d, j < d) {
        (true, false) => sigma_upper(e, rng),
        (false, true) => sigma_lower(e, rng),
        _ => sigma_fixed(e, rng),
    })
}

/// Member of `M_n(R, delta, H, H^{-1})` for `delta^n = 1`:
/// `a_ij = delta^i(c_{j - i mod n})` for random `c_0, ..., c_{n-1}`.
pub fn hmatrix_member<R: Ring>(ring: &R, delta: &dyn Endomorphism<R>, n: usize, rng: &mut TrialRng) -> SquareMatrix<R::Elem> {
    let c: Vec<_> = (0..n).map(|_| ring.sample(rng)).collect();
    SquareMatrix::from_fn(n, |i, j| delta.apply_times(ring, &c[(j + n - i) % n], i))
}

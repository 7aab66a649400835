//! Dense square matrices over any [`Ring`].
//!
//! Indices are zero-based throughout the API. Free functions take the base
//! ring first and return a dimension error on size mismatch; [`MatrixRing`]
//! packages the same arithmetic as a ring of its own.

use rand::Rng as _;

use crate::error::{AlgebraError, ParseError, Result};
use crate::ring::{Endomorphism, ParseElement, QAlgebra, Ring};
use crate::rng::TrialRng;

pub mod transitive;

pub use transitive::{
    blow_up, check_central_entries, cyclic_h, entrywise_inverse, hadamard_identity, is_transitive,
    p_matrix, theta, theta_conjugation, transitive_from_units, unit_constant, units_from_transitive,
    TransitiveMatrix,
};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SquareMatrix<E> {
    n: usize,
    entries: Vec<E>,
}

impl<E: Clone> SquareMatrix<E> {
    /// Build from row-major entries.
    pub fn new(n: usize, entries: Vec<E>) -> Result<Self> {
        if n == 0 || entries.len() != n * n {
            return Err(AlgebraError::Dimension { left: n * n, right: entries.len() });
        }
        Ok(SquareMatrix { n, entries })
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(AlgebraError::Dimension { left: n, right: row.len() });
            }
            entries.extend(row);
        }
        Self::new(n, entries)
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize, usize) -> E) -> Self {
        assert!(n >= 1, "matrices have size at least 1");
        let mut f = f;
        let entries = (0..n * n).map(|k| f(k / n, k % n)).collect();
        SquareMatrix { n, entries }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: E) {
        self.entries[i * self.n + j] = value;
    }

    pub fn entries(&self) -> &[E] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<E>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn map<F: Clone>(&self, f: impl Fn(&E) -> F) -> SquareMatrix<F> {
        SquareMatrix { n: self.n, entries: self.entries.iter().map(f).collect() }
    }

    /// Delete row `r` and column `c`.
    pub fn minor(&self, r: usize, c: usize) -> SquareMatrix<E> {
        assert!(self.n >= 2, "minors need size at least 2");
        let entries = (0..self.n)
            .filter(|&i| i != r)
            .flat_map(|i| (0..self.n).filter(move |&j| j != c).map(move |j| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        SquareMatrix { n: self.n - 1, entries }
    }
}

fn same_size<E>(a: &SquareMatrix<E>, b: &SquareMatrix<E>) -> Result<()> {
    if a.n == b.n {
        Ok(())
    } else {
        Err(AlgebraError::Dimension { left: a.n, right: b.n })
    }
}

pub fn identity<R: Ring>(ring: &R, n: usize) -> SquareMatrix<R::Elem> {
    scalar_matrix(ring, n, &ring.one())
}

pub fn zero_matrix<R: Ring>(ring: &R, n: usize) -> SquareMatrix<R::Elem> {
    SquareMatrix::from_fn(n, |_, _| ring.zero())
}

/// `c I_n`.
pub fn scalar_matrix<R: Ring>(ring: &R, n: usize, c: &R::Elem) -> SquareMatrix<R::Elem> {
    SquareMatrix::from_fn(n, |i, j| if i == j { c.clone() } else { ring.zero() })
}

/// The matrix unit `E_{i,j}`.
pub fn unit_matrix<R: Ring>(ring: &R, n: usize, i: usize, j: usize) -> SquareMatrix<R::Elem> {
    assert!(i < n && j < n, "index out of range");
    SquareMatrix::from_fn(n, |p, q| if (p, q) == (i, j) { ring.one() } else { ring.zero() })
}

pub fn diagonal<R: Ring>(ring: &R, diag: &[R::Elem]) -> SquareMatrix<R::Elem> {
    SquareMatrix::from_fn(diag.len(), |i, j| if i == j { diag[i].clone() } else { ring.zero() })
}

pub fn mat_add<R: Ring>(ring: &R, a: &SquareMatrix<R::Elem>, b: &SquareMatrix<R::Elem>) -> Result<SquareMatrix<R::Elem>> {
    same_size(a, b)?;
    Ok(SquareMatrix {
        n: a.n,
        entries: a.entries.iter().zip(&b.entries).map(|(x, y)| ring.add(x, y)).collect(),
    })
}

pub fn mat_neg<R: Ring>(ring: &R, a: &SquareMatrix<R::Elem>) -> SquareMatrix<R::Elem> {
    a.map(|x| ring.neg(x))
}

pub fn mat_sub<R: Ring>(ring: &R, a: &SquareMatrix<R::Elem>, b: &SquareMatrix<R::Elem>) -> Result<SquareMatrix<R::Elem>> {
    mat_add(ring, a, &mat_neg(ring, b))
}

pub fn mat_mul<R: Ring>(ring: &R, a: &SquareMatrix<R::Elem>, b: &SquareMatrix<R::Elem>) -> Result<SquareMatrix<R::Elem>> {
    same_size(a, b)?;
    let n = a.n;
    Ok(SquareMatrix::from_fn(n, |i, j| {
        let mut acc = ring.zero();
        for k in 0..n {
            let x = a.get(i, k);
            if ring.is_zero(x) {
                continue;
            }
            acc = ring.add(&acc, &ring.mul(x, b.get(k, j)));
        }
        acc
    }))
}

/// Product of a nonempty list, left to right.
pub fn mat_product<R: Ring>(ring: &R, factors: &[SquareMatrix<R::Elem>]) -> Result<SquareMatrix<R::Elem>> {
    let (first, rest) = factors.split_first().expect("empty product");
    rest.iter().try_fold(first.clone(), |acc, m| mat_mul(ring, &acc, m))
}

/// `lambda A`.
pub fn left_scale<R: Ring>(ring: &R, lambda: &R::Elem, a: &SquareMatrix<R::Elem>) -> SquareMatrix<R::Elem> {
    a.map(|x| ring.mul(lambda, x))
}

/// `A lambda`.
pub fn right_scale<R: Ring>(ring: &R, a: &SquareMatrix<R::Elem>, lambda: &R::Elem) -> SquareMatrix<R::Elem> {
    a.map(|x| ring.mul(x, lambda))
}

pub fn mat_pow<R: Ring>(ring: &R, a: &SquareMatrix<R::Elem>, e: usize) -> SquareMatrix<R::Elem> {
    let mut acc = identity(ring, a.n);
    for _ in 0..e {
        acc = mat_mul(ring, &acc, a).expect("same size");
    }
    acc
}

pub fn trace<R: Ring>(ring: &R, a: &SquareMatrix<R::Elem>) -> R::Elem {
    (0..a.n).fold(ring.zero(), |acc, i| ring.add(&acc, a.get(i, i)))
}

/// Entrywise product `A * B = [a_ij b_ij]`.
pub fn hadamard<R: Ring>(ring: &R, a: &SquareMatrix<R::Elem>, b: &SquareMatrix<R::Elem>) -> Result<SquareMatrix<R::Elem>> {
    same_size(a, b)?;
    Ok(SquareMatrix {
        n: a.n,
        entries: a.entries.iter().zip(&b.entries).map(|(x, y)| ring.mul(x, y)).collect(),
    })
}

/// `delta_n(A)`: the endomorphism applied to every entry.
pub fn map_entries<R: Ring>(ring: &R, delta: &dyn Endomorphism<R>, a: &SquareMatrix<R::Elem>) -> SquareMatrix<R::Elem> {
    a.map(|x| delta.apply(ring, x))
}

pub fn is_zero_matrix<R: Ring>(ring: &R, a: &SquareMatrix<R::Elem>) -> bool {
    a.entries.iter().all(|x| ring.is_zero(x))
}

/// Scale every entry by a rational, for Q-algebras.
pub fn scale_rational<R: QAlgebra>(ring: &R, q: &num_rational::BigRational, a: &SquareMatrix<R::Elem>) -> SquareMatrix<R::Elem> {
    a.map(|x| ring.scale_rational(q, x))
}

/// Print as a JSON array of arrays of element strings.
pub fn format_matrix<R: Ring>(ring: &R, a: &SquareMatrix<R::Elem>) -> String {
    let rows: Vec<Vec<String>> = a.rows().iter().map(|r| r.iter().map(|x| ring.format(x)).collect()).collect();
    serde_json::to_string(&rows).expect("strings serialize")
}

fn offset_of(text: &str, line: usize, column: usize) -> usize {
    let mut offset = 0;
    for (k, l) in text.split_inclusive('\n').enumerate() {
        if k + 1 == line {
            return offset + column.saturating_sub(1);
        }
        offset += l.len();
    }
    offset
}

/// Read a JSON array of arrays of element strings. Error positions are byte
/// offsets into `text`.
pub fn parse_matrix<R: ParseElement>(ring: &R, text: &str) -> std::result::Result<SquareMatrix<R::Elem>, ParseError> {
    let rows: Vec<Vec<String>> = serde_json::from_str(text)
        .map_err(|e| ParseError::new(offset_of(text, e.line(), e.column()), format!("malformed matrix literal: {e}")))?;
    let n = rows.len();
    if n == 0 {
        return Err(ParseError::new(0, "matrix must have at least one row"));
    }
    let mut entries = Vec::with_capacity(n * n);
    let mut search_from = 0;
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(ParseError::new(0, format!("row {} has {} entries, expected {}", i + 1, row.len(), n)));
        }
        for (j, cell) in row.iter().enumerate() {
            // locate the literal to turn inner offsets into absolute ones
            let quoted = serde_json::to_string(cell).expect("strings serialize");
            let base = text[search_from..].find(&quoted).map(|p| search_from + p + 1);
            if let Some(b) = base {
                search_from = b + quoted.len() - 1;
            }
            let value = ring.parse(cell).map_err(|e| {
                ParseError::new(
                    base.map_or(e.position, |b| b + e.position),
                    format!("entry ({}, {}): {}", i + 1, j + 1, e.message),
                )
            })?;
            entries.push(value);
        }
    }
    Ok(SquareMatrix { n, entries })
}

/// `M_n(R)` as a ring.
#[derive(Debug, Clone)]
pub struct MatrixRing<R: Ring> {
    base: R,
    n: usize,
}

impl<R: Ring> MatrixRing<R> {
    pub fn new(base: R, n: usize) -> Self {
        assert!(n >= 1, "matrices have size at least 1");
        MatrixRing { base, n }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn size(&self) -> usize {
        self.n
    }
}

impl<R: Ring> Ring for MatrixRing<R> {
    type Elem = SquareMatrix<R::Elem>;

    fn describe(&self) -> String {
        format!("M_{}({})", self.n, self.base.describe())
    }
    fn zero(&self) -> Self::Elem {
        zero_matrix(&self.base, self.n)
    }
    fn one(&self) -> Self::Elem {
        identity(&self.base, self.n)
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        mat_add(&self.base, a, b).expect("matrix sizes agree")
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        mat_neg(&self.base, a)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        mat_mul(&self.base, a, b).expect("matrix sizes agree")
    }
    fn contains(&self, a: &Self::Elem) -> bool {
        a.n == self.n && a.entries.iter().all(|x| self.base.contains(x))
    }
    fn generators(&self) -> Vec<Self::Elem> {
        let mut gens: Vec<_> = (0..self.n)
            .flat_map(|i| (0..self.n).map(move |j| (i, j)))
            .map(|(i, j)| unit_matrix(&self.base, self.n, i, j))
            .collect();
        gens.extend(self.base.generators().iter().map(|g| scalar_matrix(&self.base, self.n, g)));
        gens
    }
    fn sample(&self, rng: &mut TrialRng) -> Self::Elem {
        SquareMatrix::from_fn(self.n, |_, _| {
            if rng.gen_bool(0.2) {
                self.base.zero()
            } else {
                self.base.sample(rng)
            }
        })
    }
    fn format(&self, a: &Self::Elem) -> String {
        format_matrix(&self.base, a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::GrassmannAlgebra;
    use crate::ring::axioms::check_ring_axioms;
    use crate::ring::rational::int;
    use crate::ring::Rationals;

    #[test]
    fn trace_and_units() {
        let q = Rationals;
        assert_eq!(trace(&q, &identity(&q, 3)), int(3));
        let e12 = unit_matrix(&q, 2, 0, 1);
        let e21 = unit_matrix(&q, 2, 1, 0);
        assert_eq!(mat_mul(&q, &e12, &e21).unwrap(), unit_matrix(&q, 2, 0, 0));
        assert!(mat_mul(&q, &e12, &identity(&q, 3)).is_err());
    }

    #[test]
    fn left_and_right_scaling_differ() {
        let e = GrassmannAlgebra::new(4, Rationals);
        let a = SquareMatrix::new(1, vec![e.generator(2)]).unwrap();
        let v1 = e.generator(1);
        assert_eq!(left_scale(&e, &v1, &a).get(0, 0), &e.parse("v1*v2").unwrap());
        assert_eq!(right_scale(&e, &a, &v1).get(0, 0), &e.parse("-v1*v2").unwrap());
    }

    #[test]
    fn hadamard_examples() {
        let q = Rationals;
        let mut rng = crate::rng::seeded(3);
        let ring = MatrixRing::new(q, 3);
        let a = ring.sample(&mut rng);
        assert_eq!(hadamard(&q, &hadamard_identity(&q, 3), &a).unwrap(), a);
        assert!(is_zero_matrix(&q, &hadamard(&q, &a, &ring.zero()).unwrap()));
        let p = p_matrix(&q, &int(-1), 2).unwrap();
        assert_eq!(hadamard(&q, p.matrix(), &identity(&q, 2)).unwrap(), identity(&q, 2));
    }

    #[test]
    fn matrix_ring_axioms() {
        let e = GrassmannAlgebra::new(3, Rationals);
        check_ring_axioms(&MatrixRing::new(e, 2), &mut crate::rng::seeded(9), 40).unwrap();
    }

    #[test]
    fn minors() {
        let q = Rationals;
        let a = SquareMatrix::from_fn(3, |i, j| int((3 * i + j) as i64));
        let m = a.minor(1, 2);
        assert_eq!(m.rows(), vec![vec![int(0), int(1)], vec![int(6), int(7)]]);
        assert_eq!(mat_pow(&q, &a, 0), identity(&q, 3));
    }

    #[test]
    fn matrix_literals() {
        let e = GrassmannAlgebra::new(4, Rationals);
        let a = parse_matrix(&e, r#"[["v1", "1/2"], ["0", "v2*v3 - 1"]]"#).unwrap();
        assert_eq!(parse_matrix(&e, &format_matrix(&e, &a)).unwrap(), a);
        let err = parse_matrix(&e, r#"[["v1", "1 +"], ["0", "1"]]"#).unwrap_err();
        assert_eq!(err.position, 12);
        assert!(err.message.contains("entry (1, 2)"));
        assert!(parse_matrix(&e, r#"[["v1", "1"], ["0"]]"#).is_err());
        assert!(parse_matrix(&e, r#"[["v1", "#).is_err());
    }
}

//! `ncdet compute`: one-shot evaluation of determinant-type quantities.

use clap::ValueEnum;
use serde_json::{json, Value};

use crate::det::{char_poly, char_poly_cost, ldet, preadjoint, rdet, sdet, Side, MAX_SIZE};
use crate::error::AlgebraError;
use crate::matrix::{format_matrix, parse_matrix};
use crate::ring::{ParseElement, QAlgebra, UnitInverse};

use super::instance::{with_ring, RingVisitor};
use super::report::SCHEMA_VERSION;
use super::spec::RingSpec;

/// Largest estimated multiplication count accepted for `rdet`, `ldet` and `charpoly`.
pub const COST_LIMIT: f64 = 2.0e8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    /// Symmetric determinant.
    Sdet,
    /// Preadjoint matrix.
    Preadjoint,
    /// k-th right determinant.
    Rdet,
    /// k-th left determinant.
    Ldet,
    /// Coefficients of the k-th right or left characteristic polynomial.
    Charpoly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Right,
    Left,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Right => Side::Right,
            SideArg::Left => Side::Left,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Request {
    pub kind: Kind,
    pub ring: RingSpec,
    pub matrix: String,
    pub k: usize,
    pub side: Side,
}

/// A computed value in both renderings.
#[derive(Debug, Clone, PartialEq)]
pub struct Computed {
    pub human: String,
    pub json: Value,
}

/// Bad input: matrix syntax, sizes, envelope. Reported with exit code 2.
#[derive(Debug)]
pub struct ComputeError(pub String);

impl std::fmt::Display for ComputeError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<AlgebraError> for ComputeError {
    fn from(e: AlgebraError) -> Self {
        ComputeError(e.to_string())
    }
}

fn cost_check(n: usize, k: usize) -> Result<(), ComputeError> {
    let cost = char_poly_cost(n, k);
    if cost > COST_LIMIT {
        return Err(AlgebraError::Envelope(format!(
            "n = {n}, k = {k} needs about {cost:.2e} ring multiplications (limit {COST_LIMIT:.0e})"
        ))
        .into());
    }
    Ok(())
}

struct Evaluate<'a>(&'a Request);

impl RingVisitor for Evaluate<'_> {
    type Output = Result<Computed, ComputeError>;

    fn visit<R: QAlgebra + UnitInverse + ParseElement + 'static>(self, ring: R) -> Self::Output {
        let req = self.0;
        let a = parse_matrix(&ring, &req.matrix).map_err(|e| ComputeError(e.to_string()))?;
        let n = a.size();
        if n > MAX_SIZE {
            sdet(&ring, &a)?;
        }
        let scalar = |x: R::Elem| {
            let s = ring.format(&x);
            Computed { human: s.clone(), json: Value::String(s) }
        };
        Ok(match req.kind {
            Kind::Sdet => scalar(sdet(&ring, &a)?),
            Kind::Preadjoint => {
                let p = preadjoint(&ring, &a)?;
                let rows: Vec<Vec<String>> = p.rows().iter().map(|r| r.iter().map(|x| ring.format(x)).collect()).collect();
                Computed { human: format_matrix(&ring, &p), json: json!(rows) }
            }
            Kind::Rdet => {
                cost_check(n, req.k)?;
                scalar(rdet(&ring, &a, req.k)?)
            }
            Kind::Ldet => {
                cost_check(n, req.k)?;
                scalar(ldet(&ring, &a, req.k)?)
            }
            Kind::Charpoly => {
                cost_check(n, req.k)?;
                let p = char_poly(&ring, &a, req.k, req.side)?;
                let coeffs: Vec<String> = p.coefficients.iter().map(|x| ring.format(x)).collect();
                Computed { human: serde_json::to_string(&coeffs).expect("strings serialize"), json: json!(coeffs) }
            }
        })
    }
}

pub fn compute(req: &Request) -> Result<Computed, ComputeError> {
    if req.k == 0 {
        return Err(ComputeError("--k must be at least 1".into()));
    }
    with_ring(req.ring, Evaluate(req)).map_err(ComputeError)?
}

/// The `--json` document for a successful computation.
pub fn json_document(req: &Request, c: &Computed) -> String {
    let mut doc = json!({
        "schema": SCHEMA_VERSION,
        "kind": req.kind.to_possible_value().expect("named").get_name(),
        "ring": req.ring.to_string(),
        "result": c.json,
    });
    if matches!(req.kind, Kind::Rdet | Kind::Ldet | Kind::Charpoly) {
        doc["k"] = json!(req.k);
    }
    if req.kind == Kind::Charpoly {
        doc["side"] = json!(req.side);
    }
    serde_json::to_string_pretty(&doc).expect("json serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(kind: Kind, ring: &str, matrix: &str, k: usize) -> Result<Computed, ComputeError> {
        compute(&Request { kind, ring: ring.parse().unwrap(), matrix: matrix.into(), k, side: Side::Right })
    }

    #[test]
    fn rational_sdet_is_twice_det() {
        assert_eq!(run(Kind::Sdet, "q", r#"[["1","2"],["3","4"]]"#, 1).unwrap().human, "-4");
    }

    #[test]
    fn identity_charpoly_ends_in_two() {
        let c = run(Kind::Charpoly, "grassmann:4", r#"[["1","0"],["0","1"]]"#, 2).unwrap();
        let coeffs = c.json.as_array().unwrap();
        assert_eq!(coeffs.len(), 5);
        assert_eq!(coeffs.last().unwrap(), "2");
    }

    #[test]
    fn preadjoint_over_q() {
        let c = run(Kind::Preadjoint, "q", r#"[["1","2"],["3","4"]]"#, 1).unwrap();
        assert_eq!(c.json, json!([["4", "-2"], ["-3", "1"]]));
    }

    #[test]
    fn errors_are_usage_errors() {
        let e = run(Kind::Sdet, "q", r#"[["1","2"],["3","4*"]]"#, 1).unwrap_err();
        assert!(e.to_string().contains("parse error at"), "{e}");
        let big = serde_json::to_string(&vec![vec!["1"; 7]; 7]).unwrap();
        assert!(run(Kind::Sdet, "q", &big, 1).unwrap_err().to_string().contains("permutation pairs"));
        let e = run(Kind::Charpoly, "q", r#"[["1","0","0","0","0"],["0","1","0","0","0"],["0","0","1","0","0"],["0","0","0","1","0"],["0","0","0","0","1"]]"#, 3)
            .unwrap_err();
        assert!(e.to_string().contains("multiplications"), "{e}");
    }
}

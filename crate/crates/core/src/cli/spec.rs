//! The ring, structure and transitive-matrix mini-languages used by flags.

use std::fmt;
use std::str::FromStr;

/// Largest Grassmann generator count accepted from the command line.
pub const MAX_GENERATORS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scalars {
    Rationals,
    /// `Q(zeta_N)`.
    Cyclotomic(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingSpec {
    /// `q`
    Rationals,
    /// `q[y]:delta=neg`, with `delta(y) = -y`.
    ReflectedLine,
    /// `grassmann:<m>` or `grassmann:<m>:scalars=cyclo:<N>`
    Grassmann { m: usize, scalars: Scalars },
}

impl FromStr for RingSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        match s {
            "q" | "Q" => return Ok(RingSpec::Rationals),
            "q[y]" | "q[y]:delta=neg" => return Ok(RingSpec::ReflectedLine),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("q[y]:delta=") {
            return Err(format!("unsupported endomorphism '{rest}' on q[y]; only delta=neg is available"));
        }
        let Some(rest) = s.strip_prefix("grassmann:") else {
            return Err(format!(
                "unknown ring '{s}'; expected q, q[y]:delta=neg, grassmann:<m> or grassmann:<m>:scalars=cyclo:<N>"
            ));
        };
        let (m_text, tail) = match rest.split_once(':') {
            Some((m, t)) => (m, Some(t)),
            None => (rest, None),
        };
        let m: usize = m_text.parse().map_err(|_| format!("generator count '{m_text}' is not a number"))?;
        if m == 0 || m > MAX_GENERATORS {
            return Err(format!("generator count must be between 1 and {MAX_GENERATORS}, got {m}"));
        }
        let scalars = match tail {
            None | Some("scalars=q") => Scalars::Rationals,
            Some(t) => {
                let n_text = t
                    .strip_prefix("scalars=cyclo:")
                    .ok_or_else(|| format!("unknown ring option '{t}'; expected scalars=q or scalars=cyclo:<N>"))?;
                let n: usize = n_text.parse().map_err(|_| format!("cyclotomic order '{n_text}' is not a number"))?;
                if !(1..=60).contains(&n) {
                    return Err(format!("cyclotomic order must be between 1 and 60, got {n}"));
                }
                Scalars::Cyclotomic(n)
            }
        };
        Ok(RingSpec::Grassmann { m, scalars })
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Rationals => write!(f, "q"),
            RingSpec::ReflectedLine => write!(f, "q[y]:delta=neg"),
            RingSpec::Grassmann { m, scalars: Scalars::Rationals } => write!(f, "grassmann:{m}"),
            RingSpec::Grassmann { m, scalars: Scalars::Cyclotomic(n) } => write!(f, "grassmann:{m}:scalars=cyclo:{n}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructureSpec {
    /// `supermatrix:d=<d>`: `M_n(E, epsilon, P(d, n))`.
    Supermatrix { d: usize },
    /// `rho_e:n=<n>`: `M_n(E, rho_e, P^(e))` for `e` of order `n`.
    RhoE { n: usize },
    /// `sigma:d=<d>`: `M_n(E, sigma, Q(d, n))`.
    Sigma { d: usize },
    /// `graded:n=<n>`: graded matrices over `E` graded by degree mod `n`.
    Graded { n: usize },
    /// `zgraded:n=<n>`: graded matrices over `E[z]` graded by `z`-degree mod `n`.
    ZGraded { n: usize },
    /// `hmatrix`: `M_n(R, delta, H, H^{-1})`.
    HMatrix,
}

impl StructureSpec {
    /// Matrix size fixed by the spec itself, if any.
    pub fn intrinsic_size(&self) -> Option<usize> {
        match *self {
            StructureSpec::RhoE { n } | StructureSpec::Graded { n } | StructureSpec::ZGraded { n } => Some(n),
            _ => None,
        }
    }

    pub fn is_graded(&self) -> bool {
        matches!(self, StructureSpec::Graded { .. } | StructureSpec::ZGraded { .. })
    }
}

fn keyed(s: &str, prefix: &str, key: &str) -> Option<Result<usize, String>> {
    let rest = s.strip_prefix(prefix)?;
    Some(
        rest.strip_prefix(key)
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| format!("expected {prefix}{key}<number>, got '{s}'")),
    )
}

impl FromStr for StructureSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s == "hmatrix" {
            return Ok(StructureSpec::HMatrix);
        }
        if let Some(d) = keyed(s, "supermatrix:", "d=") {
            return d.map(|d| StructureSpec::Supermatrix { d });
        }
        if let Some(n) = keyed(s, "rho_e:", "n=") {
            return n.map(|n| StructureSpec::RhoE { n });
        }
        if let Some(d) = keyed(s, "sigma:", "d=") {
            return d.map(|d| StructureSpec::Sigma { d });
        }
        if let Some(n) = keyed(s, "graded:", "n=") {
            return n.map(|n| StructureSpec::Graded { n });
        }
        if let Some(n) = keyed(s, "zgraded:", "n=") {
            return n.map(|n| StructureSpec::ZGraded { n });
        }
        Err(format!(
            "unknown structure '{s}'; expected supermatrix:d=<d>, rho_e:n=<n>, sigma:d=<d>, graded:n=<n>, zgraded:n=<n> or hmatrix"
        ))
    }
}

impl fmt::Display for StructureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureSpec::Supermatrix { d } => write!(f, "supermatrix:d={d}"),
            StructureSpec::RhoE { n } => write!(f, "rho_e:n={n}"),
            StructureSpec::Sigma { d } => write!(f, "sigma:d={d}"),
            StructureSpec::Graded { n } => write!(f, "graded:n={n}"),
            StructureSpec::ZGraded { n } => write!(f, "zgraded:n={n}"),
            StructureSpec::HMatrix => write!(f, "hmatrix"),
        }
    }
}

/// `P(d,n)` (sign pattern), `Q(d,n)` (blow-up of `Q`), or `units` (random
/// central units).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransitiveSpec {
    Sign { d: usize, n: usize },
    QBlowUp { d: usize, n: usize },
    RandomUnits,
}

impl FromStr for TransitiveSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t == "units" {
            return Ok(TransitiveSpec::RandomUnits);
        }
        let parse_pair = |inner: &str| -> Result<(usize, usize), String> {
            let (d, n) = inner.split_once(',').ok_or_else(|| format!("expected two arguments in '{s}'"))?;
            let d: usize = d.parse().map_err(|_| format!("'{d}' is not a number"))?;
            let n: usize = n.parse().map_err(|_| format!("'{n}' is not a number"))?;
            if d == 0 || d >= n {
                return Err(format!("need 0 < d < n in '{s}'"));
            }
            Ok((d, n))
        };
        if let Some(inner) = t.strip_prefix("P(").and_then(|r| r.strip_suffix(')')) {
            let (d, n) = parse_pair(inner)?;
            return Ok(TransitiveSpec::Sign { d, n });
        }
        if let Some(inner) = t.strip_prefix("Q(").and_then(|r| r.strip_suffix(')')) {
            let (d, n) = parse_pair(inner)?;
            return Ok(TransitiveSpec::QBlowUp { d, n });
        }
        Err(format!("unknown transitive matrix '{s}'; expected P(d,n), Q(d,n) or units"))
    }
}

impl fmt::Display for TransitiveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransitiveSpec::Sign { d, n } => write!(f, "P({d},{n})"),
            TransitiveSpec::QBlowUp { d, n } => write!(f, "Q({d},{n})"),
            TransitiveSpec::RandomUnits => write!(f, "units"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_specs_round_trip() {
        for s in ["q", "q[y]:delta=neg", "grassmann:4", "grassmann:3:scalars=cyclo:3"] {
            assert_eq!(s.parse::<RingSpec>().unwrap().to_string(), s);
        }
        assert_eq!("q[y]".parse::<RingSpec>().unwrap(), RingSpec::ReflectedLine);
        for bad in ["z", "grassmann:", "grassmann:0", "grassmann:40", "grassmann:3:scalars=r", "q[y]:delta=id"] {
            assert!(bad.parse::<RingSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn structure_specs_round_trip() {
        for s in ["supermatrix:d=1", "rho_e:n=3", "sigma:d=2", "graded:n=2", "zgraded:n=3", "hmatrix"] {
            assert_eq!(s.parse::<StructureSpec>().unwrap().to_string(), s);
        }
        assert!("supermatrix:n=1".parse::<StructureSpec>().is_err());
        assert!("cube".parse::<StructureSpec>().is_err());
    }

    #[test]
    fn transitive_specs() {
        assert_eq!("P(1,2)".parse::<TransitiveSpec>().unwrap(), TransitiveSpec::Sign { d: 1, n: 2 });
        assert_eq!("Q(1, 3)".parse::<TransitiveSpec>().unwrap(), TransitiveSpec::QBlowUp { d: 1, n: 3 });
        assert!("P(2,2)".parse::<TransitiveSpec>().is_err());
        assert!("P(1)".parse::<TransitiveSpec>().is_err());
    }
}

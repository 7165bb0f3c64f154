//! Reader and writer for the cdd/lrs text formats.
//!
//! ```text
//! * comment
//! V-representation
//! begin
//! 3 4 rational
//! 1 1 1 0
//! ...
//! end
//! ```
//!
//! V rows are `1 x_1 ... x_n` (rays, with a leading 0, are not supported).
//! H rows are `b a_1 ... a_n` meaning `b + a · x >= 0`; rows listed on a
//! `linearity k i_1 ... i_k` line before `begin` are equalities.

use std::fmt::Write as _;

use num::{BigInt, One, Zero};
use pathpoly_core::linalg::Rational;
use pathpoly_core::{Basis, ConstraintKind, HRep, LinearConstraint, RationalVector, VRep};

use crate::error::CliError;

/// Comment line holding the coordinate names.
const COORDINATES: &str = "coordinates:";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Representation {
    V,
    H,
}

/// A parsed cdd file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CddMatrix {
    pub representation: Representation,
    pub comments: Vec<String>,
    /// Zero-based row indices of equalities.
    pub linearity: Vec<usize>,
    pub rows: Vec<Vec<Rational>>,
}

pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().ok()?;
            let d: BigInt = d.parse().ok()?;
            (!d.is_zero()).then(|| Rational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

impl CddMatrix {
    pub fn write(&self) -> String {
        let mut s = String::new();
        for c in &self.comments {
            writeln!(s, "* {c}").unwrap();
        }
        s.push_str(match self.representation {
            Representation::V => "V-representation\n",
            Representation::H => "H-representation\n",
        });
        if !self.linearity.is_empty() {
            let idx: Vec<String> = self.linearity.iter().map(|i| (i + 1).to_string()).collect();
            writeln!(s, "linearity {} {}", idx.len(), idx.join(" ")).unwrap();
        }
        s.push_str("begin\n");
        let cols = self.rows.first().map_or(0, Vec::len);
        writeln!(s, "{} {} rational", self.rows.len(), cols).unwrap();
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(format_rational).collect();
            writeln!(s, "{}", cells.join(" ")).unwrap();
        }
        s.push_str("end\n");
        s
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let err = |line: usize, msg: &str| CliError::Input(format!("line {line}: {msg}"));
        let mut comments = Vec::new();
        let mut representation = None;
        let mut linearity = Vec::new();
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));

        let mut saw_begin = false;
        for (no, line) in lines.by_ref() {
            if line.is_empty() {
                continue;
            }
            if let Some(c) = line.strip_prefix('*') {
                comments.push(c.trim().to_string());
            } else if line == "V-representation" {
                representation = Some(Representation::V);
            } else if line == "H-representation" {
                representation = Some(Representation::H);
            } else if let Some(rest) = line.strip_prefix("linearity") {
                let nums: Vec<usize> = rest
                    .split_whitespace()
                    .map(|t| t.parse().map_err(|_| err(no, "bad linearity entry")))
                    .collect::<Result<_, _>>()?;
                let (count, idx) = nums.split_first().ok_or_else(|| err(no, "empty linearity line"))?;
                if *count != idx.len() || idx.contains(&0) {
                    return Err(err(no, "linearity count does not match its entries"));
                }
                linearity = idx.iter().map(|i| i - 1).collect();
            } else if line == "begin" {
                saw_begin = true;
                break;
            }
            // any other line before `begin` is a name or option and is ignored
        }
        if !saw_begin {
            return Err(CliError::Input("missing 'begin'".into()));
        }

        let (no, header) = lines
            .by_ref()
            .find(|(_, l)| !l.is_empty())
            .ok_or_else(|| CliError::Input("missing size line after 'begin'".into()))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        let (m, n) = match parts.as_slice() {
            [m, n, kind] if matches!(*kind, "rational" | "integer") => (
                m.parse::<usize>().map_err(|_| err(no, "bad row count"))?,
                n.parse::<usize>().map_err(|_| err(no, "bad column count"))?,
            ),
            _ => return Err(err(no, "expected '<rows> <cols> rational'")),
        };

        let mut rows = Vec::with_capacity(m);
        for (no, line) in lines.by_ref() {
            if line.is_empty() {
                continue;
            }
            if line == "end" {
                if rows.len() != m {
                    return Err(err(no, &format!("expected {m} rows, found {}", rows.len())));
                }
                let representation = representation.unwrap_or(Representation::H);
                if linearity.iter().any(|&i| i >= m) {
                    return Err(CliError::Input("linearity index out of range".into()));
                }
                return Ok(CddMatrix { representation, comments, linearity, rows });
            }
            let row: Vec<Rational> = line
                .split_whitespace()
                .map(|t| parse_rational(t).ok_or_else(|| err(no, &format!("invalid number {t:?}"))))
                .collect::<Result<_, _>>()?;
            if row.len() != n {
                return Err(err(no, &format!("expected {n} entries, found {}", row.len())));
            }
            rows.push(row);
        }
        Err(CliError::Input("missing 'end'".into()))
    }

    /// Coordinate names from a `coordinates:` comment, if present.
    pub fn coordinate_names(&self) -> Option<Vec<String>> {
        self.comments
            .iter()
            .find_map(|c| c.strip_prefix(COORDINATES))
            .map(|rest| rest.split_whitespace().map(str::to_string).collect())
    }

    fn basis(&self, n: usize) -> Basis {
        match self.coordinate_names() {
            Some(names) if names.len() == n => Basis::new(names),
            _ => Basis::indexed(n),
        }
    }

    pub fn to_vrep(&self) -> Result<VRep, CliError> {
        if self.representation != Representation::V {
            return Err(CliError::Input("expected a V-representation".into()));
        }
        let n = self.rows.first().map_or(1, Vec::len).saturating_sub(1);
        let mut points = Vec::new();
        for (i, r) in self.rows.iter().enumerate() {
            if !r[0].is_one() {
                return Err(CliError::Input(format!("row {}: only vertices (leading 1) are supported", i + 1)));
            }
            points.push(RationalVector::new(r[1..].to_vec()));
        }
        VRep::new(self.basis(n), points).map_err(CliError::from)
    }

    pub fn to_hrep(&self) -> Result<HRep, CliError> {
        if self.representation != Representation::H {
            return Err(CliError::Input("expected an H-representation".into()));
        }
        let n = self.rows.first().map_or(1, Vec::len).saturating_sub(1);
        let mut cons = Vec::new();
        for (i, r) in self.rows.iter().enumerate() {
            let kind = if self.linearity.contains(&i) { ConstraintKind::Equality } else { ConstraintKind::Inequality };
            let rhs = -r[0].clone();
            cons.push(LinearConstraint::from_rationals(&r[1..], &rhs, kind).map_err(CliError::from)?);
        }
        HRep::new(self.basis(n), cons).map_err(CliError::from)
    }
}

fn coordinate_comment(basis: &Basis) -> String {
    format!("{COORDINATES} {}", basis.names().join(" "))
}

/// EXT text for a vertex list, with one label per row in the comments.
pub fn write_ext(v: &VRep, mut comments: Vec<String>, row_labels: &[String]) -> String {
    comments.push(coordinate_comment(v.basis()));
    for (i, l) in row_labels.iter().enumerate() {
        comments.push(format!("row {}: {l}", i + 1));
    }
    let rows = v
        .vertices()
        .iter()
        .map(|p| std::iter::once(Rational::one()).chain(p.coords().iter().cloned()).collect())
        .collect();
    CddMatrix { representation: Representation::V, comments, linearity: Vec::new(), rows }.write()
}

/// INE text for a list of constraints, equalities flagged on the linearity
/// line. Rows are written in the given order.
pub fn write_ine(basis: &Basis, constraints: &[LinearConstraint], mut comments: Vec<String>) -> String {
    comments.push(coordinate_comment(basis));
    let linearity = (0..constraints.len()).filter(|&i| constraints[i].is_equality()).collect();
    let rows = constraints
        .iter()
        .map(|c| {
            std::iter::once(-Rational::from_integer(c.rhs().clone()))
                .chain(c.coeffs().iter().map(|x| Rational::from_integer(x.clone())))
                .collect()
        })
        .collect();
    CddMatrix { representation: Representation::H, comments, linearity, rows }.write()
}

/// Parses a point: rationals separated by whitespace or commas, with `#`
/// comments.
pub fn parse_point(text: &str) -> Result<RationalVector, CliError> {
    let mut coords = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap();
        for tok in line.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
            let q = parse_rational(tok)
                .ok_or_else(|| CliError::Input(format!("line {}: invalid number {tok:?}", no + 1)))?;
            coords.push(q);
        }
    }
    if coords.is_empty() {
        return Err(CliError::Input("point file has no coordinates".into()));
    }
    Ok(RationalVector::new(coords))
}

#[cfg(test)]
mod tests {
    use super::*;
    use pathpoly_core::linalg::ratio;

    #[test]
    fn rationals_round_trip() {
        for s in ["0", "-3", "1/2", "-7/3", "123456789012345678901234567890"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(parse_rational("2/4").unwrap(), ratio(1, 2));
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
        assert!(parse_rational("1.5").is_none());
    }

    #[test]
    fn ext_round_trip() {
        let v = VRep::new(
            Basis::new(["{1,2}", "{1,3}"]),
            vec![RationalVector::from_integers(&[1, 0]), RationalVector::new(vec![ratio(1, 2), ratio(-1, 3)])],
        )
        .unwrap();
        let text = write_ext(&v, vec!["test".into()], &["a".into(), "b".into()]);
        assert!(text.contains("2 3 rational\n1 1 0\n1 1/2 -1/3\nend\n"));
        let back = CddMatrix::parse(&text).unwrap().to_vrep().unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn ine_round_trip() {
        let cons = vec![LinearConstraint::eq(&[1, 1, 1], 2).unwrap(), LinearConstraint::ge(&[-1, 1, 1], 0).unwrap()];
        let basis = Basis::indexed(3);
        let text = write_ine(&basis, &cons, vec![]);
        assert!(text.contains("linearity 1 1\nbegin\n2 4 rational\n-2 1 1 1\n0 -1 1 1\nend\n"));
        let h = CddMatrix::parse(&text).unwrap().to_hrep().unwrap();
        assert_eq!(h.equalities(), &cons[..1]);
        assert_eq!(h.inequalities(), &cons[1..]);
    }

    #[test]
    fn malformed_files() {
        for bad in [
            "V-representation\n1 2 rational\n1 0\nend\n",
            "V-representation\nbegin\n2 2 rational\n1 0\nend\n",
            "V-representation\nbegin\n1 2 rational\n1 x\nend\n",
            "V-representation\nbegin\n1 2 rational\n1 0 0\nend\n",
            "V-representation\nbegin\n1 2 rational\n1 0\n",
            "H-representation\nlinearity 2 1\nbegin\n1 2 rational\n1 0\nend\n",
        ] {
            assert!(CddMatrix::parse(bad).is_err(), "{bad}");
        }
        let ray = CddMatrix::parse("V-representation\nbegin\n1 2 rational\n0 1\nend\n").unwrap();
        assert!(ray.to_vrep().is_err());
    }

    #[test]
    fn points() {
        let p = parse_point("# barycenter\n1/2, 1\n0").unwrap();
        assert_eq!(p, RationalVector::new(vec![ratio(1, 2), ratio(1, 1), ratio(0, 1)]));
        assert!(parse_point("# nothing").is_err());
        assert!(parse_point("1 two").is_err());
    }
}

//! JSON documents read and written by `seg`: exact matrices, polynomials in
//! brackets and/or matrix entries, and point correspondences.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use segre::bracket::{
    BracketMonomial, BracketPolynomial, DoubleBracketPolynomial, RawBracket, RawTerm,
};
use segre::multipoly::rational::{format_rational, parse_rational};
use segre::multipoly::{Matrix, Monomial, Side, VarId};
use segre::vision::Correspondence;
use segre::{ExactMatrix, Rational, SparsePolynomial};

use crate::error::CliError;

pub fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn from_json<T: for<'de> Deserialize<'de>>(src: &str, origin: &str) -> Result<T, CliError> {
    serde_json::from_str(src).map_err(|e| CliError::Format {
        position: format!("{origin}:{}:{}", e.line(), e.column()),
        message: e.to_string(),
    })
}

/// JSON with one line per top-level field and per element of a top-level
/// list of records; deeper values and lists of scalars stay on one line.
/// Key order follows the struct and the output ends with a newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let value = serde_json::to_value(value).expect("serializable document");
    let mut out = String::new();
    layout(&value, 0, &mut out);
    out.push('\n');
    out
}

fn layout(v: &Value, depth: usize, out: &mut String) {
    let compact = |v: &Value| serde_json::to_string(v).expect("serializable value");
    let indent = |d: usize| "  ".repeat(d);
    match v {
        Value::Object(map) if depth < 2 && !map.is_empty() => {
            out.push_str("{\n");
            for (i, (key, child)) in map.iter().enumerate() {
                out.push_str(&format!("{}{}: ", indent(depth + 1), compact(&Value::from(key.as_str()))));
                layout(child, depth + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&indent(depth));
            out.push('}');
        }
        Value::Array(items)
            if depth < 2 && items.iter().any(|x| x.is_object() || x.is_array()) =>
        {
            out.push_str("[\n");
            for (i, child) in items.iter().enumerate() {
                out.push_str(&indent(depth + 1));
                layout(child, 2, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&indent(depth));
            out.push(']');
        }
        _ => out.push_str(&compact(v)),
    }
}

fn rational_at(s: &str, position: impl FnOnce() -> String) -> Result<Rational, CliError> {
    parse_rational(s).map_err(|e| CliError::Format {
        position: position(),
        message: e.to_string(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    /// Row-major canonical rationals.
    pub entries: Vec<String>,
}

impl MatrixFile {
    pub fn parse(src: &str, origin: &str) -> Result<Self, CliError> {
        let file: MatrixFile = from_json(src, origin)?;
        file.to_matrix(origin)?;
        Ok(file)
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        Self::parse(&read_text(path)?, &path.display().to_string())
    }

    pub fn from_matrix(m: &ExactMatrix) -> Self {
        MatrixFile {
            rows: m.rows(),
            cols: m.cols(),
            entries: m.entries().iter().map(format_rational).collect(),
        }
    }

    pub fn to_matrix(&self, origin: &str) -> Result<ExactMatrix, CliError> {
        if self.entries.len() != self.rows * self.cols {
            return Err(CliError::Format {
                position: format!("{origin}: entries"),
                message: format!(
                    "{} entries for a {}x{} matrix",
                    self.entries.len(),
                    self.rows,
                    self.cols
                ),
            });
        }
        let entries = self
            .entries
            .iter()
            .enumerate()
            .map(|(i, s)| rational_at(s, || format!("{origin}: entries[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix::new(self.rows, self.cols, entries)?)
    }

    pub fn print(&self) -> String {
        to_json(self)
    }
}

/// `[side, row, col, exponent]` with side `"a"` or `"b"`.
pub type VarRecord = (String, u32, u32, u32);

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermRecord {
    pub coeff: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub primal: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vars: Option<Vec<VarRecord>>,
}

impl TermRecord {
    fn key(&self) -> (&Option<Vec<Vec<usize>>>, &Option<Vec<Vec<usize>>>, &Option<Vec<VarRecord>>) {
        (&self.dual, &self.primal, &self.vars)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialFile {
    pub terms: Vec<TermRecord>,
    /// The Segre determinant is `det_sign` times the polynomial.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub det_sign: Option<i8>,
    /// A published formula for the same shape is `reference_sign` times
    /// the polynomial.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference_sign: Option<i8>,
    /// Terms that differ from the published formula under `reference_sign`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference_mismatches: Option<usize>,
}

fn bracket_lists(m: &BracketMonomial) -> Vec<Vec<usize>> {
    m.factors().iter().map(|b| b.indices().to_vec()).collect()
}

fn var_records(m: &Monomial) -> Vec<VarRecord> {
    m.factors()
        .iter()
        .map(|(v, e)| {
            let side = match v.side {
                Side::A => "a",
                Side::B => "b",
            };
            (side.to_string(), u32::from(v.row), u32::from(v.col), *e)
        })
        .collect()
}

impl PolynomialFile {
    pub fn parse(src: &str, origin: &str) -> Result<Self, CliError> {
        let file: PolynomialFile = from_json(src, origin)?;
        for (i, t) in file.terms.iter().enumerate() {
            rational_at(&t.coeff, || format!("{origin}: terms[{i}].coeff"))?;
            if let Some(vars) = &t.vars {
                for (j, (side, row, col, e)) in vars.iter().enumerate() {
                    let side_ok = side == "a" || side == "b";
                    if !side_ok || *row == 0 || *col == 0 || *row > 255 || *col > 255 || *e == 0 {
                        return Err(CliError::Format {
                            position: format!("{origin}: terms[{i}].vars[{j}]"),
                            message: "expected [\"a\"|\"b\", row, col, exponent] with 1-based indices below 256 and a positive exponent".into(),
                        });
                    }
                }
            }
        }
        for s in [file.det_sign, file.reference_sign].into_iter().flatten() {
            if s != 1 && s != -1 {
                return Err(CliError::Format {
                    position: origin.to_string(),
                    message: format!("sign fields must be 1 or -1, got {s}"),
                });
            }
        }
        Ok(file)
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        Self::parse(&read_text(path)?, &path.display().to_string())
    }

    /// Sorts the terms into canonical order.
    pub fn canonicalize(mut self) -> Self {
        self.terms.sort_by(|x, y| x.key().cmp(&y.key()));
        self
    }

    pub fn print(&self) -> String {
        to_json(&self.clone().canonicalize())
    }

    pub fn from_double(p: &DoubleBracketPolynomial) -> Self {
        let terms = p
            .terms()
            .iter()
            .map(|((a, b), c)| TermRecord {
                coeff: format_rational(c),
                dual: Some(bracket_lists(a)),
                primal: Some(bracket_lists(b)),
                vars: None,
            })
            .collect();
        PolynomialFile {
            terms,
            ..Default::default()
        }
        .canonicalize()
    }

    pub fn from_brackets(p: &BracketPolynomial) -> Self {
        let terms = p
            .terms()
            .iter()
            .map(|(m, c)| {
                let lists = Some(bracket_lists(m));
                let (dual, primal) = match p.side() {
                    Side::A => (lists, None),
                    Side::B => (None, lists),
                };
                TermRecord {
                    coeff: format_rational(c),
                    dual,
                    primal,
                    vars: None,
                }
            })
            .collect();
        PolynomialFile {
            terms,
            ..Default::default()
        }
        .canonicalize()
    }

    pub fn from_sparse(p: &SparsePolynomial) -> Self {
        let terms = p
            .terms()
            .iter()
            .map(|(m, c)| TermRecord {
                coeff: format_rational(c),
                dual: None,
                primal: None,
                vars: Some(var_records(m)),
            })
            .collect();
        PolynomialFile {
            terms,
            ..Default::default()
        }
        .canonicalize()
    }

    /// Bracket-only terms as raw parsed terms, for the bracket constructors.
    pub fn raw_terms(&self) -> Result<Vec<RawTerm>, CliError> {
        self.terms
            .iter()
            .enumerate()
            .map(|(i, t)| {
                if t.vars.is_some() {
                    return Err(CliError::Format {
                        position: format!("terms[{i}]"),
                        message: "matrix-entry factors are not allowed here".into(),
                    });
                }
                let coeff = parse_rational(&t.coeff).expect("validated on parse");
                let mut brackets = Vec::new();
                for (side, lists) in [(Side::A, &t.dual), (Side::B, &t.primal)] {
                    for l in lists.iter().flatten() {
                        brackets.push(RawBracket {
                            side,
                            indices: l.clone(),
                        });
                    }
                }
                Ok(RawTerm { coeff, brackets })
            })
            .collect()
    }

    /// Bracket size on each side, taken from the first bracket found.
    pub fn bracket_sizes(&self) -> (Option<usize>, Option<usize>) {
        let first = |f: fn(&TermRecord) -> &Option<Vec<Vec<usize>>>| {
            self.terms
                .iter()
                .find_map(|t| f(t).as_ref().and_then(|l| l.first()).map(Vec::len))
        };
        (first(|t| &t.dual), first(|t| &t.primal))
    }

    pub fn to_double(&self, n: usize) -> Result<DoubleBracketPolynomial, CliError> {
        let (a, b) = self.bracket_sizes();
        let (Some(a), Some(b)) = (a, b) else {
            return Err(CliError::Format {
                position: "terms".into(),
                message: "need both dual and primal brackets".into(),
            });
        };
        Ok(DoubleBracketPolynomial::from_raw_terms(a, b, n, &self.raw_terms()?)?)
    }

    pub fn to_brackets(&self, side: Side, size: usize, n: usize) -> Result<BracketPolynomial, CliError> {
        Ok(BracketPolynomial::from_raw_terms(side, size, n, &self.raw_terms()?)?)
    }

    pub fn to_sparse(&self) -> Result<SparsePolynomial, CliError> {
        let mut out = SparsePolynomial::zero();
        for (i, t) in self.terms.iter().enumerate() {
            if t.dual.is_some() || t.primal.is_some() {
                return Err(CliError::Format {
                    position: format!("terms[{i}]"),
                    message: "bracket factors are not allowed here".into(),
                });
            }
            let factors = t.vars.iter().flatten().map(|(side, row, col, e)| {
                let side = if side == "a" { Side::A } else { Side::B };
                (VarId::new(side, *row as usize, *col as usize), *e)
            });
            let c = parse_rational(&t.coeff).expect("validated on parse");
            out.add_term(Monomial::from_factors(factors), &c);
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairRecord {
    pub a: Vec<String>,
    pub b: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorrespondenceFile {
    pub k: usize,
    pub pairs: Vec<PairRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cameras: Option<[MatrixFile; 2]>,
}

impl CorrespondenceFile {
    pub fn parse(src: &str, origin: &str) -> Result<Self, CliError> {
        let file: CorrespondenceFile = from_json(src, origin)?;
        file.to_pairs(origin)?;
        Ok(file)
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        Self::parse(&read_text(path)?, &path.display().to_string())
    }

    pub fn from_pairs(k: usize, pairs: &[Correspondence], cameras: Option<[&ExactMatrix; 2]>) -> Self {
        let vector = |v: &[Rational]| v.iter().map(format_rational).collect();
        CorrespondenceFile {
            k,
            pairs: pairs
                .iter()
                .map(|p| PairRecord {
                    a: vector(&p.a),
                    b: vector(&p.b),
                })
                .collect(),
            cameras: cameras.map(|[p1, p2]| [MatrixFile::from_matrix(p1), MatrixFile::from_matrix(p2)]),
        }
    }

    pub fn to_pairs(&self, origin: &str) -> Result<Vec<Correspondence>, CliError> {
        self.pairs
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let side = |v: &[String], name: &str| -> Result<Vec<Rational>, CliError> {
                    if v.len() != self.k {
                        return Err(CliError::Format {
                            position: format!("{origin}: pairs[{i}].{name}"),
                            message: format!("expected {} coordinates, got {}", self.k, v.len()),
                        });
                    }
                    v.iter()
                        .enumerate()
                        .map(|(j, s)| rational_at(s, || format!("{origin}: pairs[{i}].{name}[{j}]")))
                        .collect()
                };
                Ok(Correspondence::new(side(&p.a, "a")?, side(&p.b, "b")?)?)
            })
            .collect()
    }

    pub fn print(&self) -> String {
        to_json(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use segre::rat;

    #[test]
    fn matrix_round_trip() {
        let src = "{\n  \"rows\": 1,\n  \"cols\": 2,\n  \"entries\": [\"-1/2\",\"3\"]\n}\n";
        let f = MatrixFile::parse(src, "m").unwrap();
        assert_eq!(f.print(), src);
        let m = f.to_matrix("m").unwrap();
        assert_eq!(m.get(0, 0), &segre::ratio(-1, 2));
        assert_eq!(MatrixFile::from_matrix(&m), f);
    }

    #[test]
    fn matrix_rejects_non_canonical_entries() {
        let err = MatrixFile::parse(r#"{"rows":1,"cols":1,"entries":["3/6"]}"#, "m").unwrap_err();
        assert_eq!(err.kind(), "format");
        assert!(err.to_string().contains("entries[0]"));
        assert!(err.to_string().contains("1/2"));
        let err = MatrixFile::parse(r#"{"rows":1,"cols":2,"entries":["1"]}"#, "m").unwrap_err();
        assert!(err.to_string().contains("1x2"));
        let err = MatrixFile::parse("{\"rows\":1,\n\"cols\":}", "m").unwrap_err();
        assert!(err.to_string().contains("m:2:"), "{err}");
    }

    #[test]
    fn polynomial_conversions() {
        let mut p = SparsePolynomial::zero();
        p.add_term(Monomial::var(VarId::a(1, 2)), &rat(3));
        p.add_term(Monomial::from_factors([(VarId::b(2, 1), 2)]), &rat(-1));
        let f = PolynomialFile::from_sparse(&p);
        let back = PolynomialFile::parse(&f.print(), "p").unwrap();
        assert_eq!(back.to_sparse().unwrap(), p);
        assert_eq!(back.print(), f.print());
        assert!(back.to_double(4).is_err());
    }

    #[test]
    fn bad_sign_and_vars_rejected() {
        assert!(PolynomialFile::parse(r#"{"terms":[],"det_sign":2}"#, "p").is_err());
        assert!(PolynomialFile::parse(r#"{"terms":[{"coeff":"1","vars":[["c",1,1,1]]}]}"#, "p").is_err());
        assert!(PolynomialFile::parse(r#"{"terms":[{"coeff":"1","extra":1}]}"#, "p").is_err());
    }
}

//! The line-oriented instance format and the JSON result documents.
//!
//! Instance files:
//!
//! ```text
//! bifactor 1            # magic and version, first directive
//! xy 2 1                # |X| |Y|, before anything else
//! edge 0 0 1            # x y multiplicity, repeatable, no duplicate pairs
//! edge 1 0 1
//! gx 1 1                # one value per X-vertex
//! fx 1 1
//! fy 1                  # one value per Y-vertex
//! gy 0                  # optional lower bounds on Y
//! xnames alice bob      # optional vertex names
//! ynames job
//! ```
//!
//! `#` starts a comment; blank lines are ignored.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::criteria::{Criterion, CriterionReport, Witness};
use crate::graph::{
    validate_instance, BoundViolation, Certificate, CertificateReport, Factor, FactorReport,
    Instance, InvalidInstance, RawInstance, SolveOutcome,
};

pub const MAGIC: &str = "bifactor";
pub const VERSION: u32 = 1;

/// An instance plus the optional extras its file may carry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceDocument {
    pub instance: Instance,
    pub g_y: Option<Vec<u64>>,
    pub x_names: Option<Vec<String>>,
    pub y_names: Option<Vec<String>>,
}

impl From<Instance> for InstanceDocument {
    fn from(instance: Instance) -> Self {
        InstanceDocument {
            instance,
            g_y: None,
            x_names: None,
            y_names: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Invalid(#[from] InvalidInstance),
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let content = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in content.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token {
                    text: &content[s..i],
                    column: s + 1,
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &content[s..],
            column: s + 1,
        });
    }
    out
}

pub fn parse_instance(text: &str) -> Result<InstanceDocument, ParseError> {
    let mut raw = RawInstance::default();
    let mut seen_magic = false;
    let mut dims: Option<(usize, usize)> = None;
    let mut edges_seen = BTreeSet::new();
    let mut g_x = None;
    let mut f_x = None;
    let mut f_y = None;
    let mut g_y = None;
    let mut x_names = None;
    let mut y_names = None;
    let mut last_line = 0;

    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let toks = tokens(line);
        let Some(head) = toks.first() else { continue };
        let err = |column: usize, message: String| ParseError::Syntax {
            line: lineno,
            column,
            message,
        };
        let number = |t: &Token<'_>| -> Result<u64, ParseError> {
            t.text.parse::<u64>().map_err(|_| {
                err(
                    t.column,
                    format!("expected a non-negative integer, found {:?}", t.text),
                )
            })
        };
        let index = |t: &Token<'_>| -> Result<usize, ParseError> {
            t.text.parse::<usize>().map_err(|_| {
                err(
                    t.column,
                    format!("expected a vertex index, found {:?}", t.text),
                )
            })
        };
        let arity = |n: usize| -> Result<(), ParseError> {
            if toks.len() != n + 1 {
                let column = toks.get(n + 1).map_or(line.len() + 1, |t| t.column);
                Err(err(
                    column,
                    format!(
                        "{} takes {n} arguments, found {}",
                        head.text,
                        toks.len() - 1
                    ),
                ))
            } else {
                Ok(())
            }
        };

        if !seen_magic {
            if head.text != MAGIC {
                return Err(err(
                    head.column,
                    format!("expected `{MAGIC} {VERSION}` header"),
                ));
            }
            arity(1)?;
            if number(&toks[1])? != u64::from(VERSION) {
                return Err(err(
                    toks[1].column,
                    format!("unsupported version {}", toks[1].text),
                ));
            }
            seen_magic = true;
            continue;
        }
        if head.text == "xy" {
            if dims.is_some() {
                return Err(err(head.column, "repeated xy directive".into()));
            }
            arity(2)?;
            dims = Some((index(&toks[1])?, index(&toks[2])?));
            continue;
        }
        let Some((nx, ny)) = dims else {
            return Err(err(head.column, format!("{} before xy", head.text)));
        };
        match head.text {
            "edge" => {
                arity(3)?;
                let x = index(&toks[1])?;
                let y = index(&toks[2])?;
                let m = number(&toks[3])?;
                if !edges_seen.insert((x, y)) {
                    return Err(err(head.column, format!("duplicate edge ({x},{y})")));
                }
                raw.edges.push((x, y, m));
            }
            "gx" | "fx" | "fy" | "gy" => {
                let expected = if head.text.ends_with('x') { nx } else { ny };
                arity(expected)?;
                let values = toks[1..]
                    .iter()
                    .map(&number)
                    .collect::<Result<Vec<_>, _>>()?;
                let slot = match head.text {
                    "gx" => &mut g_x,
                    "fx" => &mut f_x,
                    "fy" => &mut f_y,
                    _ => &mut g_y,
                };
                if slot.is_some() {
                    return Err(err(
                        head.column,
                        format!("repeated {} directive", head.text),
                    ));
                }
                *slot = Some(values);
            }
            "xnames" | "ynames" => {
                let expected = if head.text == "xnames" { nx } else { ny };
                arity(expected)?;
                let names: Vec<String> = toks[1..].iter().map(|t| t.text.to_string()).collect();
                let slot = if head.text == "xnames" {
                    &mut x_names
                } else {
                    &mut y_names
                };
                if slot.is_some() {
                    return Err(err(
                        head.column,
                        format!("repeated {} directive", head.text),
                    ));
                }
                *slot = Some(names);
            }
            other => return Err(err(head.column, format!("unknown directive {other:?}"))),
        }
    }

    let missing = |what: &str| ParseError::Syntax {
        line: last_line.max(1),
        column: 1,
        message: format!("missing {what}"),
    };
    if !seen_magic {
        return Err(missing("header"));
    }
    let (nx, ny) = dims.ok_or_else(|| missing("xy directive"))?;
    raw.x_count = nx;
    raw.y_count = ny;
    raw.g_x = g_x.ok_or_else(|| missing("gx directive"))?;
    raw.f_x = f_x.ok_or_else(|| missing("fx directive"))?;
    raw.f_y = f_y.ok_or_else(|| missing("fy directive"))?;
    Ok(InstanceDocument {
        instance: validate_instance(raw)?,
        g_y,
        x_names,
        y_names,
    })
}

fn join<T: ToString>(values: &[T]) -> String {
    values
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// Canonical text for an instance document; `parse_instance` inverts it.
pub fn emit_instance(doc: &InstanceDocument) -> String {
    let inst = &doc.instance;
    let mut out = String::new();
    let _ = writeln!(out, "{MAGIC} {VERSION}");
    let _ = writeln!(out, "xy {} {}", inst.x_count(), inst.y_count());
    for e in inst.edges() {
        let _ = writeln!(out, "edge {} {} {}", e.x, e.y, e.multiplicity);
    }
    let _ = writeln!(out, "gx {}", join(inst.g_x()));
    let _ = writeln!(out, "fx {}", join(inst.f_x()));
    let _ = writeln!(out, "fy {}", join(inst.f_y()));
    if let Some(gy) = &doc.g_y {
        let _ = writeln!(out, "gy {}", join(gy));
    }
    if let Some(names) = &doc.x_names {
        let _ = writeln!(out, "xnames {}", join(names));
    }
    if let Some(names) = &doc.y_names {
        let _ = writeln!(out, "ynames {}", join(names));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDoc {
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<usize>>,
    pub required: u64,
    pub available: u64,
}

impl From<&Witness> for WitnessDoc {
    fn from(w: &Witness) -> Self {
        WitnessDoc {
            family: w.family.name().into(),
            a: w.a_set.as_ref().map(|s| s.iter().copied().collect()),
            b: w.b_set.as_ref().map(|s| s.iter().copied().collect()),
            required: w.required,
            available: w.available,
        }
    }
}

/// Every document the command-line tool prints. Serialized as one JSON
/// object tagged by `kind`, fields in declaration order, collections sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum OutputDocument {
    Valid {
        x_count: usize,
        y_count: usize,
        edges: usize,
        total_multiplicity: u64,
    },
    Factor {
        /// `(x, y, c)` sorted by `(x, y)`
        edges: Vec<(usize, usize, u64)>,
    },
    Certificate {
        a: Vec<usize>,
        b: Vec<usize>,
        deficiency: i64,
    },
    Criterion {
        criterion: String,
        holds: bool,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        witness: Option<WitnessDoc>,
    },
    NoFactor,
    FactorCount {
        count: u64,
    },
    FactorVerification {
        valid: bool,
        violations: Vec<String>,
    },
    CertificateVerification {
        valid: bool,
        stored: i64,
        recomputed: i64,
    },
}

impl OutputDocument {
    pub fn from_factor(f: &Factor) -> Self {
        OutputDocument::Factor {
            edges: f.iter().collect(),
        }
    }

    pub fn from_certificate(c: &Certificate) -> Self {
        OutputDocument::Certificate {
            a: c.a_set.iter().copied().collect(),
            b: c.b_set.iter().copied().collect(),
            deficiency: c.deficiency,
        }
    }

    pub fn from_outcome(outcome: &SolveOutcome) -> Self {
        match outcome {
            SolveOutcome::Factor(f) => Self::from_factor(f),
            SolveOutcome::Certificate(c) => Self::from_certificate(c),
        }
    }

    pub fn from_report(criterion: Criterion, report: &CriterionReport) -> Self {
        OutputDocument::Criterion {
            criterion: criterion.name().into(),
            holds: report.holds,
            witness: report.witness.as_ref().map(WitnessDoc::from),
        }
    }

    pub fn from_oracle(found: Option<&Factor>) -> Self {
        found.map_or(OutputDocument::NoFactor, Self::from_factor)
    }

    pub fn from_factor_report(report: &FactorReport) -> Self {
        OutputDocument::FactorVerification {
            valid: report.is_valid(),
            violations: report
                .violations
                .iter()
                .map(BoundViolation::to_string)
                .collect(),
        }
    }

    pub fn from_certificate_report(report: &CertificateReport) -> Self {
        OutputDocument::CertificateVerification {
            valid: report.is_valid(),
            stored: report.stored,
            recomputed: report.recomputed,
        }
    }

    /// The factor carried by a `factor` document.
    pub fn to_factor(&self) -> Option<Factor> {
        match self {
            OutputDocument::Factor { edges } => Some(Factor::from_triples(edges.iter().copied())),
            _ => None,
        }
    }

    /// The certificate carried by a `certificate` document.
    pub fn to_certificate(&self) -> Option<Certificate> {
        match self {
            OutputDocument::Certificate { a, b, deficiency } => Some(Certificate {
                a_set: a.iter().copied().collect(),
                b_set: b.iter().copied().collect(),
                deficiency: *deficiency,
            }),
            _ => None,
        }
    }

    pub fn emit(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Canonical document text for a solve outcome.
pub fn emit_outcome(outcome: &SolveOutcome) -> String {
    OutputDocument::from_outcome(outcome).emit()
}

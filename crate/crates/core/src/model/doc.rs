//! JSON model documents.
//!
//! ```text
//! {"type":"pin","m":3,"edges":[{"members":[1,2]},{"members":[2,3],"mult":2}]}
//! {"type":"pmf","m":2,"alphabets":[2,2],"probs":[0.5,0,0,0.5]}
//! {"type":"club","m":3,"left":{...},"right":{...}}
//! ```
//!
//! Terminals are 1-indexed. pmf tables are row-major, last terminal fastest.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{club, Hypergraph, PinSource, PmfSource, Source};
use crate::error::{Result, SkcError};
use crate::terminal::{TerminalSet, MAX_TERMINALS};
use crate::value::DEFAULT_TOLERANCE;

/// Dense pmf tables larger than this are not serialized.
const MAX_DENSE_POINTS: usize = 1 << 24;

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum Doc {
    Pin {
        m: usize,
        edges: Vec<EdgeDoc>,
    },
    Pmf {
        m: usize,
        alphabets: Vec<u32>,
        probs: Vec<f64>,
    },
    Club {
        m: usize,
        left: Box<Doc>,
        right: Box<Doc>,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeDoc {
    members: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mult: Option<u32>,
}

/// Maps JSON keys to the lines they occur on, consumed in document order, so
/// semantic errors can point at a line.
struct Locator {
    lines: HashMap<&'static str, Vec<usize>>,
    next: HashMap<&'static str, usize>,
}

impl Locator {
    fn new(text: &str) -> Self {
        let mut lines: HashMap<&'static str, Vec<usize>> = HashMap::new();
        for key in [
            "\"m\"",
            "\"members\"",
            "\"probs\"",
            "\"alphabets\"",
            "\"type\"",
        ] {
            let mut found = Vec::new();
            for (n, line) in text.lines().enumerate() {
                for _ in line.match_indices(key) {
                    found.push(n + 1);
                }
            }
            lines.insert(key, found);
        }
        Locator {
            lines,
            next: HashMap::new(),
        }
    }

    /// Line of the next unconsumed occurrence of `key`.
    fn take(&mut self, key: &'static str) -> usize {
        let k = self.next.entry(key).or_insert(0);
        let line = self.lines[key].get(*k).copied().unwrap_or(1);
        *k += 1;
        line
    }
}

/// Parses a model document.
pub fn parse_model(text: &str) -> Result<Source> {
    let doc: Doc = serde_json::from_str(text).map_err(|e| SkcError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let mut loc = Locator::new(text);
    build(&doc, &mut loc)
}

fn build(doc: &Doc, loc: &mut Locator) -> Result<Source> {
    let type_line = loc.take("\"type\"");
    match doc {
        Doc::Pin { m, edges } => {
            let m_line = loc.take("\"m\"");
            check_m(*m, m_line)?;
            let mut list = Vec::with_capacity(edges.len());
            for e in edges {
                let line = loc.take("\"members\"");
                if e.members.is_empty() {
                    return Err(SkcError::EmptyHyperedge { line });
                }
                let members = TerminalSet::from_terminals(*m, &e.members).map_err(|_| {
                    SkcError::Malformed {
                        line,
                        message: format!("hyperedge members {:?} not within 1..={m}", e.members),
                    }
                })?;
                let mult = e.mult.unwrap_or(1);
                if mult == 0 {
                    return Err(SkcError::Malformed {
                        line,
                        message: "multiplicity must be positive".into(),
                    });
                }
                list.push((members, mult));
            }
            let graph = Hypergraph::new(*m, list).map_err(|e| SkcError::Malformed {
                line: type_line,
                message: e.to_string(),
            })?;
            Ok(PinSource::new(graph).into())
        }
        Doc::Pmf {
            m,
            alphabets,
            probs,
        } => {
            let m_line = loc.take("\"m\"");
            check_m(*m, m_line)?;
            let a_line = loc.take("\"alphabets\"");
            let p_line = loc.take("\"probs\"");
            if alphabets.len() != *m {
                return Err(SkcError::Malformed {
                    line: a_line,
                    message: format!("{} alphabet sizes given for m = {m}", alphabets.len()),
                });
            }
            let mass: f64 = probs.iter().sum();
            if (mass - 1.0).abs() > super::PMF_MASS_TOLERANCE {
                return Err(SkcError::PmfMass { mass, line: p_line });
            }
            PmfSource::from_dense(alphabets.clone(), probs, DEFAULT_TOLERANCE)
                .map(Source::from)
                .map_err(|e| SkcError::Malformed {
                    line: p_line,
                    message: e.to_string(),
                })
        }
        Doc::Club { m, left, right } => {
            let m_line = loc.take("\"m\"");
            check_m(*m, m_line)?;
            let l = build(left, loc)?;
            let r = build(right, loc)?;
            if l.m() != *m || r.m() != *m {
                return Err(SkcError::Malformed {
                    line: m_line,
                    message: format!(
                        "club with m = {m} has parts with m = {} and {}",
                        l.m(),
                        r.m()
                    ),
                });
            }
            Ok(club(l, r)?.into())
        }
    }
}

fn check_m(m: usize, line: usize) -> Result<()> {
    if m > MAX_TERMINALS {
        return Err(SkcError::TooManyTerminals { m, line });
    }
    if m == 0 {
        return Err(SkcError::Malformed {
            line,
            message: "m must be at least 1".into(),
        });
    }
    Ok(())
}

fn to_doc(source: &Source) -> Result<Doc> {
    Ok(match source {
        Source::Pin(p) => Doc::Pin {
            m: p.m(),
            edges: p
                .graph()
                .edges()
                .iter()
                .map(|e| EdgeDoc {
                    members: e.members.to_vec(),
                    mult: (e.mult != 1).then_some(e.mult),
                })
                .collect(),
        },
        Source::Pmf(p) => Doc::Pmf {
            m: p.m(),
            alphabets: p.alphabets().to_vec(),
            probs: p.dense(MAX_DENSE_POINTS).ok_or_else(|| {
                SkcError::TooLarge(format!("dense pmf table exceeds {MAX_DENSE_POINTS} points"))
            })?,
        },
        Source::Club(c) => Doc::Club {
            m: source.m(),
            left: Box::new(to_doc(c.left())?),
            right: Box::new(to_doc(c.right())?),
        },
    })
}

/// Renders a source as a pretty-printed model document.
pub fn serialize_model(source: &Source) -> Result<String> {
    let doc = to_doc(source)?;
    serde_json::to_string_pretty(&doc).map_err(|e| SkcError::Internal(e.to_string()))
}

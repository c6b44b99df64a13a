//! Secret-key capacity when only the terminals in `T` may communicate, and
//! the resulting omnivocality verdicts.
//!
//! `I_T(X_M) = H(X_T) − R_T^min`, where `R_T^min` minimizes `Σ_{i∈T} R_i`
//! over the region
//!
//! ```text
//! Σ_{i∈B∩T} R_i ≥ H(X_{B∩T} | X_{B^c})    for all B ⊊ M with B∩T ≠ ∅.
//! ```

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result, SkcError};
use crate::exec::Execution;
use crate::lp::{simplex_min, LinearProgram, LpSolution};
use crate::model::Source;
use crate::partition::{classify_type_s, multipartite_info, TypeSClass, TypeSVerdict};
use crate::terminal::TerminalSet;
use crate::value::Value;

/// Largest `m` for the LP-based reports (`2^m` constraint rows).
pub const MAX_LP_M: usize = 10;

/// A rate region as a linear program over the rates of `terminals`
/// (variables in ascending terminal order).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RateRegion {
    pub m: usize,
    pub terminals: TerminalSet,
    /// Support `S ⊆ T` of each row, aligned with `lp.rows()`.
    pub supports: Vec<TerminalSet>,
    pub lp: LinearProgram,
}

impl RateRegion {
    /// Right-hand side of the row with support `s`, if present.
    pub fn bound(&self, s: TerminalSet) -> Option<&Value> {
        self.supports
            .iter()
            .position(|&x| x == s)
            .map(|k| &self.lp.rows()[k].rhs)
    }
}

fn check_t(source: &Source, t: TerminalSet) -> Result<()> {
    let m = source.m();
    if m > MAX_LP_M {
        return Err(SkcError::TooLarge(format!(
            "rate-region LPs need m ≤ {MAX_LP_M}"
        )));
    }
    if t.is_empty() || !t.within(m) {
        return domain(format!("T = {t} must be a nonempty subset of 1..={m}"));
    }
    Ok(())
}

fn region_from_rows(
    m: usize,
    t: TerminalSet,
    rows: BTreeMap<Vec<usize>, (TerminalSet, Value)>,
) -> Result<RateRegion> {
    let vars = t.to_vec();
    let mut lp = LinearProgram::new(vec![Value::int(1); vars.len()]);
    let mut ordered: Vec<(TerminalSet, Value)> = rows.into_values().collect();
    ordered.sort_by(|a, b| a.0.cmp_size_lex(&b.0));
    let mut supports = Vec::with_capacity(ordered.len());
    for (s, rhs) in ordered {
        let coeffs = vars
            .iter()
            .map(|&i| Value::int(i64::from(s.contains(i))))
            .collect();
        lp.add_row(coeffs, rhs)?;
        supports.push(s);
    }
    Ok(RateRegion {
        m,
        terminals: t,
        supports,
        lp,
    })
}

fn keep_max(rows: &mut BTreeMap<Vec<usize>, (TerminalSet, Value)>, s: TerminalSet, rhs: Value) {
    let key = s.to_vec();
    match rows.get_mut(&key) {
        Some((_, old)) => {
            let larger = match (rhs.as_rational(), old.as_rational()) {
                (Some(a), Some(b)) => a > b,
                _ => rhs.to_f64() > old.to_f64(),
            };
            if larger {
                *old = rhs;
            }
        }
        None => {
            rows.insert(key, (s, rhs));
        }
    }
}

/// Constraint rows of the region for communicators `T`. The full form has
/// one row per support `B∩T`, keeping the largest right-hand side. The
/// reduced form (valid for `|T| = m − 1`, `T = M∖{u}`) uses
/// `Σ_B R ≥ H(X_B | X_{T∖B})` for `∅ ≠ B ⊊ T` and
/// `Σ_T R ≥ H(X_T | X_u)`.
pub fn rt_constraints(source: &Source, t: TerminalSet, reduced: bool) -> Result<RateRegion> {
    check_t(source, t)?;
    let m = source.m();
    let full = TerminalSet::full(m);
    let mut rows = BTreeMap::new();
    if reduced {
        if t.len() + 1 != m {
            return domain("the reduced region needs |T| = m − 1");
        }
        let u = full.difference(t);
        for b in TerminalSet::all_nonempty(m) {
            if b.is_subset(t) && b != t {
                keep_max(&mut rows, b, source.h(t) - source.h(t.difference(b)));
            }
        }
        keep_max(&mut rows, t, source.h(full) - source.h(u));
    } else {
        for b in TerminalSet::all_nonempty(m) {
            if b == full {
                continue;
            }
            let s = b.intersection(t);
            if s.is_empty() {
                continue;
            }
            let bc = b.complement(m);
            keep_max(&mut rows, s, source.h(s.union(bc)) - source.h(bc));
        }
    }
    region_from_rows(m, t, rows)
}

/// `R_T^min` with its witness.
pub fn rt_min(source: &Source, t: TerminalSet, reduced: bool) -> Result<LpSolution> {
    let region = rt_constraints(source, t, reduced)?;
    simplex_min(&region.lp).map_err(|e| match e {
        SkcError::Infeasible | SkcError::Unbounded => SkcError::Internal(format!(
            "rate region for T = {t} is {e}; it always contains R_i = H(X_i)"
        )),
        other => other,
    })
}

/// `I_T(X_M) = H(X_T) − R_T^min`.
pub fn silent_capacity(source: &Source, t: TerminalSet) -> Result<Value> {
    let r = rt_min(source, t, false)?;
    Ok(source.h(t) - r.optimum)
}

fn check_codim_one(source: &Source, t: TerminalSet) -> Result<usize> {
    let m = source.m();
    if m < 3 {
        return domain("requires m ≥ 3");
    }
    if !t.within(m) || t.len() + 1 != m {
        return domain(format!("T = {t} must have m − 1 = {} terminals", m - 1));
    }
    Ok(m)
}

/// `(1/(m−2)) Σ_{j∈T} H(X_{T∖j} | X_j)`, a lower bound on `R_T^min` for
/// `|T| = m − 1`.
pub fn rt_min_lower_bound(source: &Source, t: TerminalSet) -> Result<Value> {
    let m = check_codim_one(source, t)?;
    let terms: Vec<Value> = t
        .iter()
        .map(|j| {
            let sj = TerminalSet::singleton(j);
            source.h(t) - source.h(sj)
        })
        .collect();
    Ok(Value::sum(terms.iter()) / Value::int(m as i64 - 2))
}

/// `Δ_T(S) = (1/(m−2)) [Σ_{i∈T} H(X_i) − H(X_T)]`, an upper bound on
/// `I_T(X_M)` for `|T| = m − 1`.
pub fn delta_t_singleton(source: &Source, t: TerminalSet) -> Result<Value> {
    let m = check_codim_one(source, t)?;
    let singles: Vec<Value> = t
        .iter()
        .map(|i| source.h(TerminalSet::singleton(i)))
        .collect();
    Ok((Value::sum(singles.iter()) - source.h(t)) / Value::int(m as i64 - 2))
}

/// Silent-terminal analysis for one `T = M∖{u}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SilentEntry {
    pub silent: usize,
    /// `I_{M∖{u}}(X_M)`.
    pub capacity: Value,
    /// `I(X_M) − I_{M∖{u}}(X_M)`.
    pub gap: Value,
    pub rt_min: Value,
    pub rt_min_lower_bound: Value,
    pub delta_t: Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OmnivocalityVerdict {
    OmnivocalityRequired,
    /// Terminals that may individually stay silent without losing capacity.
    SilencePossible(Vec<usize>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SilentReport {
    pub capacity: Value,
    pub entries: Vec<SilentEntry>,
    pub verdict: OmnivocalityVerdict,
    pub type_s: TypeSVerdict,
    /// Strict Type S must force omnivocality.
    pub strict_implies_required: bool,
    /// For `m = 3`: omnivocality required exactly when strict Type S.
    pub three_terminal_iff: Option<bool>,
}

/// Silent-terminal capacity for every `(m−1)`-subset and the omnivocality
/// verdict.
pub fn omnivocality_report(source: &Source, exec: Execution) -> Result<SilentReport> {
    let m = source.m();
    if m < 3 {
        return domain("omnivocality analysis requires m ≥ 3");
    }
    if m > MAX_LP_M {
        return Err(SkcError::TooLarge(format!(
            "omnivocality analysis needs m ≤ {MAX_LP_M}"
        )));
    }
    let capacity = multipartite_info(source, exec)?.value;
    let type_s = classify_type_s(source, exec)?;
    let full = TerminalSet::full(m);
    let entries = exec
        .map_range(m, |k| -> Result<SilentEntry> {
            let u = k + 1;
            let t = full.difference(TerminalSet::singleton(u));
            let r = rt_min(source, t, false)?;
            let cap = source.h(t) - r.optimum.clone();
            Ok(SilentEntry {
                silent: u,
                gap: &capacity - &cap,
                capacity: cap,
                rt_min: r.optimum,
                rt_min_lower_bound: rt_min_lower_bound(source, t)?,
                delta_t: delta_t_singleton(source, t)?,
            })
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let silent: Vec<usize> = entries
        .iter()
        .filter(|e| e.gap.signum_tol() != Ordering::Greater)
        .map(|e| e.silent)
        .collect();
    let verdict = if silent.is_empty() {
        OmnivocalityVerdict::OmnivocalityRequired
    } else {
        OmnivocalityVerdict::SilencePossible(silent)
    };
    let required = verdict == OmnivocalityVerdict::OmnivocalityRequired;
    let strict = type_s.class == TypeSClass::StrictTypeS;
    Ok(SilentReport {
        capacity,
        strict_implies_required: !strict || required,
        three_terminal_iff: (m == 3).then_some(strict == required),
        entries,
        verdict,
        type_s,
    })
}

//! Secret-key capacity, omniscience rate, and what can be said about the
//! communication complexity `R_SK` of achieving capacity.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result, SkcError};
use crate::exec::Execution;
use crate::model::{ClubbedSource, PinSource, Source};
use crate::partition::{classify_type_s, multipartite_info, pin_singleton_check, TypeSClass};
use crate::silent::rt_min;
use crate::terminal::TerminalSet;
use crate::tree::sigma_rate;
use crate::value::Value;

/// `C(M) = I(X_M)`.
pub fn sk_capacity(source: &Source, exec: Execution) -> Result<Value> {
    Ok(multipartite_info(source, exec)?.value)
}

/// `R_CO = H(X_M) − I(X_M)`.
pub fn r_co(source: &Source, exec: Execution) -> Result<Value> {
    let full = TerminalSet::full(source.m());
    Ok(source.h(full) - sk_capacity(source, exec)?)
}

/// `R_CO` as the optimum of the omniscience linear program.
pub fn r_co_lp(source: &Source) -> Result<Value> {
    Ok(rt_min(source, TerminalSet::full(source.m()), false)?.optimum)
}

/// `R_SK = R_CO = (m − t)/(m − 1) · |E|` for a `t`-uniform PIN model of
/// Type S.
pub fn r_sk_exact_uniform_pin(pin: &PinSource, exec: Execution) -> Result<Value> {
    let g = pin.graph();
    let t = g
        .uniformity()
        .ok_or_else(|| SkcError::Domain("the closed form needs a uniform hypergraph".into()))?;
    let verdict = pin_singleton_check(pin, exec)?;
    if verdict.class == TypeSClass::NotTypeS {
        return Err(SkcError::NotTypeS {
            margin: verdict.margin.repr(),
        });
    }
    let m = pin.m() as i64;
    Ok(Value::ratio(
        (m - t as i64) * g.total_multiplicity() as i64,
        m - 1,
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Maximality {
    Maximal,
    NotMaximal,
    Unknown,
}

/// A value with the argument that produced it.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Bound {
    pub value: Value,
    pub origin: String,
}

impl Bound {
    fn new(value: Value, origin: impl Into<String>) -> Self {
        Bound {
            value,
            origin: origin.into(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RskReport {
    pub capacity: Value,
    pub r_co: Value,
    /// Exact `R_SK` with its justification, only where one is known.
    pub r_sk_exact: Option<Bound>,
    pub upper_bounds: Vec<Bound>,
    pub lower_bounds: Vec<Bound>,
    pub maximality: Maximality,
    pub maximality_reason: String,
    /// Which case of the `CI(X_M) − I(X_M)` lower bound applied.
    pub ci_note: String,
}

impl RskReport {
    pub fn best_upper(&self) -> &Value {
        self.upper_bounds
            .iter()
            .map(|b| &b.value)
            .min_by(|a, b| a.cmp_tol(b))
            .unwrap_or(&self.r_co)
    }

    pub fn best_lower(&self) -> Value {
        self.lower_bounds
            .iter()
            .map(|b| b.value.clone())
            .fold(Value::zero(), Value::max_tol)
    }

    /// `r_sk_exact` lies between the best lower and upper bounds.
    pub fn is_consistent(&self) -> bool {
        let lo = self.best_lower();
        if lo.cmp_tol(self.best_upper()) == Ordering::Greater {
            return false;
        }
        self.r_sk_exact.as_ref().is_none_or(|e| {
            e.value.cmp_tol(&lo) != Ordering::Less
                && e.value.cmp_tol(self.best_upper()) != Ordering::Greater
        })
    }
}

const CI_GENERAL: &str = "CI(X_M) − I(X_M) lower bound: not computable in general";
const CI_TYPE_S_PIN: &str =
    "CI(X_M) = H(X_M) for a uniform PIN model of Type S, so the lower bound equals R_CO";

/// Single-broadcaster protocols: terminal `u` sends `X_u` at rate
/// `max_j H(X_u | X_j)` and the key is extracted from `X_u`. Only those
/// whose key rate `H(X_u) − rate` reaches capacity are kept.
fn broadcaster_bounds(source: &Source, capacity: &Value) -> Vec<Bound> {
    let m = source.m();
    let mut out = Vec::new();
    for u in 1..=m {
        let su = TerminalSet::singleton(u);
        let hu = source.h(su);
        let rate = (1..=m)
            .filter(|&j| j != u)
            .map(|j| {
                let sj = TerminalSet::singleton(j);
                source.h(su.union(sj)) - source.h(sj)
            })
            .reduce(Value::max_tol)
            .unwrap_or_else(Value::zero);
        if (&hu - &rate).cmp_tol(capacity) != Ordering::Less {
            out.push(Bound::new(rate, format!("single broadcaster {u}")));
        }
    }
    out
}

fn finish(mut r: RskReport) -> RskReport {
    if r.r_sk_exact.is_none() && r.maximality == Maximality::Unknown {
        if r.r_co.is_zero_tol() {
            r.maximality = Maximality::Maximal;
            r.maximality_reason = "R_CO = 0".into();
        } else if r.best_upper().cmp_tol(&r.r_co) == Ordering::Less {
            r.maximality = Maximality::NotMaximal;
            r.maximality_reason = "an achievable protocol rate lies below R_CO".into();
        }
    }
    r
}

fn base_report(source: &Source, exec: Execution) -> Result<RskReport> {
    let capacity = sk_capacity(source, exec)?;
    let r_co = source.h(TerminalSet::full(source.m())) - capacity.clone();
    let mut upper_bounds = vec![Bound::new(r_co.clone(), "omniscience")];
    upper_bounds.extend(broadcaster_bounds(source, &capacity));
    Ok(RskReport {
        capacity,
        r_co,
        r_sk_exact: None,
        upper_bounds,
        lower_bounds: vec![Bound::new(Value::zero(), "nonnegativity")],
        maximality: Maximality::Unknown,
        maximality_reason: "no argument applies".into(),
        ci_note: CI_GENERAL.into(),
    })
}

/// Report for a graph PIN model: `C(M) = σ̄`, upper bounds `R_CO` and the
/// tree-packing rate `(m − 2) σ̄`, and maximal exactly when Type S.
pub fn graph_rsk_report(pin: &PinSource, exec: Execution) -> Result<RskReport> {
    if pin.graph().uniformity() != Some(2) {
        return domain("graph report needs a 2-uniform PIN model");
    }
    let m = pin.m();
    let source = Source::from(pin.clone());
    let mut r = base_report(&source, exec)?;
    let sigma = sigma_rate(pin.graph(), exec)?;
    if sigma != r.capacity || !sigma.is_exact() {
        return Err(SkcError::Internal(format!(
            "capacity {} differs from packing rate {}",
            r.capacity.repr(),
            sigma.repr()
        )));
    }
    if m == 2 {
        return Ok(two_terminal(&source, r));
    }
    r.upper_bounds.push(Bound::new(
        Value::int(m as i64 - 2) * sigma,
        "spanning-tree packing protocol",
    ));
    let verdict = pin_singleton_check(pin, exec)?;
    if verdict.class == TypeSClass::NotTypeS {
        r.maximality = Maximality::NotMaximal;
        r.maximality_reason = format!("graph not of Type S (margin {})", verdict.margin.repr());
    } else {
        r.maximality = Maximality::Maximal;
        r.maximality_reason = "graph of Type S".into();
        r.r_sk_exact = Some(Bound::new(r.r_co.clone(), "type-s-graph"));
        r.lower_bounds
            .push(Bound::new(r.r_co.clone(), "type-s-uniform-pin CI bound"));
        r.ci_note = CI_TYPE_S_PIN.into();
    }
    Ok(r)
}

fn two_terminal(source: &Source, mut r: RskReport) -> RskReport {
    let (a, b) = (TerminalSet::singleton(1), TerminalSet::singleton(2));
    let full = a.union(b);
    let h12 = source.h(full) - source.h(b);
    let h21 = source.h(full) - source.h(a);
    r.r_sk_exact = Some(Bound::new(
        h12.min_tol(h21),
        "two-terminal one-way protocol",
    ));
    if r.r_co.is_zero_tol() {
        r.maximality = Maximality::Maximal;
        r.maximality_reason = "R_CO = 0".into();
    }
    finish(r)
}

/// The split protocol for `Z = (X, Y)`: run the best known protocol on each
/// part. It achieves `I(Z)` only when `I(Z) = I(X) + I(Y)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SplitBound {
    pub capacity_left: Value,
    pub capacity_right: Value,
    pub capacity: Value,
    pub argmins_intersect: bool,
    pub additive: bool,
    /// Sum of the parts' best upper bounds, when the split achieves capacity.
    pub rate: Option<Value>,
}

pub fn split_bound(club: &ClubbedSource, exec: Execution) -> Result<SplitBound> {
    let z = Source::from(club.clone());
    let iz = multipartite_info(&z, exec)?;
    let ix = multipartite_info(club.left(), exec)?;
    let iy = multipartite_info(club.right(), exec)?;
    let argmins_intersect = ix.argmin.iter().any(|p| iy.argmin.contains(p));
    let additive = iz.value.approx_eq(&(&ix.value + &iy.value));
    let rate = if additive {
        let lx = rsk_report(club.left(), exec)?;
        let ly = rsk_report(club.right(), exec)?;
        Some(lx.best_upper() + ly.best_upper())
    } else {
        None
    };
    Ok(SplitBound {
        capacity_left: ix.value,
        capacity_right: iy.value,
        capacity: iz.value,
        argmins_intersect,
        additive,
        rate,
    })
}

/// Everything known about `R_SK` for `source`.
pub fn rsk_report(source: &Source, exec: Execution) -> Result<RskReport> {
    if let Some(pin) = source.as_pin() {
        if pin.graph().uniformity() == Some(2) && pin.m() <= crate::tree::MAX_TREE_M {
            return graph_rsk_report(pin, exec);
        }
    }
    let mut r = base_report(source, exec)?;
    let m = source.m();
    if m == 2 {
        return Ok(two_terminal(source, r));
    }
    if let Some(pin) = source.as_pin() {
        if pin.graph().uniformity().is_some() {
            let verdict = pin_singleton_check(pin, exec)?;
            if verdict.class != TypeSClass::NotTypeS {
                let exact = r_sk_exact_uniform_pin(pin, exec)?;
                r.r_sk_exact = Some(Bound::new(exact, "type-s-uniform-pin"));
                r.lower_bounds
                    .push(Bound::new(r.r_co.clone(), "type-s-uniform-pin CI bound"));
                r.ci_note = CI_TYPE_S_PIN.into();
                r.maximality = Maximality::Maximal;
                r.maximality_reason = "uniform PIN model of Type S".into();
            }
        }
    }
    if let Source::Club(c) = source {
        let s = split_bound(c, exec)?;
        if let Some(rate) = s.rate {
            r.upper_bounds
                .push(Bound::new(rate, "split protocol over clubbed parts"));
        }
    }
    Ok(finish(r))
}

/// Clubbing check: `I(Z) ≥ I(X) + I(Y)`, with equality exactly when the
/// argmin lists share a partition.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClubAdditivity {
    pub split: SplitBound,
    pub superadditive: bool,
    pub consistent: bool,
}

pub fn club_additivity(club: &ClubbedSource, exec: Execution) -> Result<ClubAdditivity> {
    let split = split_bound(club, exec)?;
    let sum = &split.capacity_left + &split.capacity_right;
    let superadditive = split.capacity.cmp_tol(&sum) != Ordering::Less;
    let consistent = superadditive && split.additive == split.argmins_intersect;
    Ok(ClubAdditivity {
        split,
        superadditive,
        consistent,
    })
}

/// A clubbed source that is strict Type S yet has an achievable rate below
/// `R_CO`, so it is not `R_SK`-maximal.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SplitWitness {
    pub class: TypeSClass,
    pub r_co: Value,
    pub split_rate: Option<Value>,
    pub below_r_co: bool,
}

pub fn strict_split_witness(club: &ClubbedSource, exec: Execution) -> Result<SplitWitness> {
    let z = Source::from(club.clone());
    let class = classify_type_s(&z, exec)?.class;
    let r_co = r_co(&z, exec)?;
    let split = split_bound(club, exec)?;
    let below_r_co = split
        .rate
        .as_ref()
        .is_some_and(|v| v.cmp_tol(&r_co) == Ordering::Less);
    Ok(SplitWitness {
        class,
        r_co,
        split_rate: split.rate,
        below_r_co,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Hypergraph;
    use crate::zoo;

    fn pin(m: usize, lists: &[&[usize]]) -> PinSource {
        PinSource::new(Hypergraph::from_lists(m, lists).unwrap())
    }

    #[test]
    fn path_graph_is_maximal() {
        let r = graph_rsk_report(&pin(3, &[&[1, 2], &[2, 3]]), Execution::Sequential).unwrap();
        assert_eq!(r.capacity, Value::int(1));
        assert_eq!(r.r_co, Value::int(1));
        assert_eq!(r.maximality, Maximality::Maximal);
        assert_eq!(r.r_sk_exact.unwrap().value, Value::int(1));
    }

    #[test]
    fn closed_form_refuses_non_type_s() {
        // a heavy pair {1,2} with a pendant terminal 3
        let g = Hypergraph::new(
            3,
            [
                (TerminalSet::from_terminals(3, &[1, 2]).unwrap(), 3),
                (TerminalSet::from_terminals(3, &[2, 3]).unwrap(), 1),
            ],
        )
        .unwrap();
        let p = PinSource::new(g);
        assert!(matches!(
            r_sk_exact_uniform_pin(&p, Execution::Sequential),
            Err(SkcError::NotTypeS { .. })
        ));
        let r = graph_rsk_report(&p, Execution::Sequential).unwrap();
        assert_eq!(r.maximality, Maximality::NotMaximal);
    }

    #[test]
    fn cycle_values() {
        let c = zoo::gen_cycle(4).unwrap();
        let s = Source::from(c.clone());
        assert_eq!(
            sk_capacity(&s, Execution::Sequential).unwrap(),
            Value::ratio(4, 3)
        );
        assert_eq!(r_co_lp(&s).unwrap(), Value::ratio(8, 3));
        assert_eq!(
            r_sk_exact_uniform_pin(&c, Execution::Sequential).unwrap(),
            Value::ratio(8, 3)
        );
    }

    #[test]
    fn omni_example_broadcaster() {
        let s = Source::from(zoo::gen_omni_example(4, 0.5).unwrap());
        let r = rsk_report(&s, Execution::Sequential).unwrap();
        assert!(r.best_upper().approx_eq(&Value::int(1)));
        assert_eq!(r.maximality, Maximality::NotMaximal);
        assert!(r.is_consistent());
    }
}

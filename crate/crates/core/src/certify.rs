//! Machine checks of the combinatorial allocation behind the PIN converse
//! bound and of two information identities.
//!
//! The allocation runs over the `t`-subsets of `{1..m}` in lexicographic
//! order. Terms `Q_e` are generated by `Q(k)` for `2 ≤ k ≤ m − t + 1`
//! whenever `e` contains `k` and some smaller terminal; each receiver
//! `R(i)`, `m − t + 2 ≤ i ≤ m`, must be handed one term for every `e ∌ i`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::exec::Execution;
use crate::model::{FunctionL, PinSource, PmfSource, Source};
use crate::partition::{conditional_multipartite_info, fractional_partition_of, multipartite_info};
use crate::terminal::TerminalSet;

pub const MAX_ALLOCATION_M: usize = 10;

/// The `t`-subsets of `{1..m}` as ascending tuples, lexicographic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LexOrder {
    pub m: usize,
    pub t: usize,
    pub edges: Vec<Vec<usize>>,
}

impl LexOrder {
    /// 1-based position `j` of `edge`.
    pub fn index_of(&self, edge: &[usize]) -> Option<usize> {
        self.edges.iter().position(|e| e == edge).map(|k| k + 1)
    }

    /// Edge `e_j`, 1-based.
    pub fn edge(&self, j: usize) -> &[usize] {
        &self.edges[j - 1]
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

fn check_mt(m: usize, t: usize) -> Result<()> {
    if !(2 <= t && t <= m && m <= MAX_ALLOCATION_M) {
        return domain(format!(
            "need 2 ≤ t ≤ m ≤ {MAX_ALLOCATION_M} (got m = {m}, t = {t})"
        ));
    }
    Ok(())
}

pub fn lex_index(m: usize, t: usize) -> Result<LexOrder> {
    check_mt(m, t)?;
    let mut edges = Vec::new();
    let mut cur = Vec::with_capacity(t);
    fn rec(start: usize, m: usize, t: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == t {
            out.push(cur.clone());
            return;
        }
        for v in start..=m {
            cur.push(v);
            rec(v + 1, m, t, cur, out);
            cur.pop();
        }
    }
    rec(1, m, t, &mut cur, &mut edges);
    Ok(LexOrder { m, t, edges })
}

/// Split of the edges containing `i`: those whose smallest member is `i`,
/// and the rest. Entries are 1-based lexicographic indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeClasses {
    pub smallest: Vec<usize>,
    pub not_smallest: Vec<usize>,
}

pub fn edge_classes(m: usize, t: usize, i: usize) -> Result<EdgeClasses> {
    let order = lex_index(m, t)?;
    if !(1..=m).contains(&i) {
        return domain(format!("terminal {i} outside 1..={m}"));
    }
    let mut out = EdgeClasses {
        smallest: Vec::new(),
        not_smallest: Vec::new(),
    };
    for (k, e) in order.edges.iter().enumerate() {
        if e.contains(&i) {
            if e[0] == i {
                out.smallest.push(k + 1);
            } else {
                out.not_smallest.push(k + 1);
            }
        }
    }
    Ok(out)
}

/// `R(receiver)` takes `Q_{e_edge}` from `Q(donor)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Allocation {
    pub receiver: usize,
    pub edge: usize,
    pub donor: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AllocationOutcome {
    Completed,
    /// No donor was left for `edge` when serving `receiver`.
    Error {
        receiver: usize,
        edge: usize,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AllocationTable {
    pub order: LexOrder,
    /// Donor rows `k = 2..=m−t+1`; `initial[k−2][j−1]` is the availability
    /// before any allocation.
    pub initial: Vec<Vec<bool>>,
    pub table: Vec<Vec<bool>>,
    pub log: Vec<Allocation>,
    pub outcome: AllocationOutcome,
}

impl AllocationTable {
    fn label(&self, j: usize) -> String {
        self.order.edge(j).iter().map(|v| v.to_string()).collect()
    }

    /// Donor → receiver listing, one receiver per line.
    pub fn render(&self) -> String {
        let m = self.order.m;
        let t = self.order.t;
        let mut s = String::new();
        for i in (m + 2 - t)..=m {
            let items: Vec<String> = self
                .log
                .iter()
                .filter(|a| a.receiver == i)
                .map(|a| format!("Q({})←Q({})", self.label(a.edge), a.donor))
                .collect();
            let _ = writeln!(s, "R({i}): {}", items.join(", "));
        }
        match self.outcome {
            AllocationOutcome::Completed => s.push_str("completed\n"),
            AllocationOutcome::Error { receiver, edge } => {
                let _ = writeln!(s, "ERROR at R({receiver}), edge ({})", self.label(edge));
            }
        }
        s
    }
}

/// Runs the allocation: receivers in ascending order, edges in ascending
/// index, each time the smallest donor still holding the term.
pub fn run_allocation(m: usize, t: usize) -> Result<AllocationTable> {
    let order = lex_index(m, t)?;
    let donors: Vec<usize> = (2..=m + 1 - t).collect();
    let initial: Vec<Vec<bool>> = donors
        .iter()
        .map(|&k| {
            order
                .edges
                .iter()
                .map(|e| e.contains(&k) && e[0] < k)
                .collect()
        })
        .collect();
    let mut table = initial.clone();
    let mut log = Vec::new();
    let mut outcome = AllocationOutcome::Completed;
    'outer: for i in (m + 2 - t)..=m {
        for j in 1..=order.len() {
            if order.edge(j).contains(&i) {
                continue;
            }
            match (0..donors.len()).find(|&r| table[r][j - 1]) {
                Some(r) => {
                    table[r][j - 1] = false;
                    log.push(Allocation {
                        receiver: i,
                        edge: j,
                        donor: donors[r],
                    });
                }
                None => {
                    outcome = AllocationOutcome::Error {
                        receiver: i,
                        edge: j,
                    };
                    break 'outer;
                }
            }
        }
    }
    Ok(AllocationTable {
        order,
        initial,
        table,
        log,
        outcome,
    })
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClaimsReport {
    pub m: usize,
    pub t: usize,
    pub no_error: bool,
    /// Terms generated by the donors.
    pub generated: usize,
    pub allocated: usize,
    /// `(t − 1)·C(m−1, t)`.
    pub expected_total: usize,
    /// `(receiver, count)`; each must be `C(m−1, t)`.
    pub per_receiver: Vec<(usize, usize)>,
    pub receivers_ok: bool,
    /// Every allocated edge avoids its receiver.
    pub edges_avoid_receiver: bool,
    /// No donated term used twice and all terms used.
    pub table_exhausted: bool,
    pub passed: bool,
}

pub fn verify_claims(m: usize, t: usize) -> Result<ClaimsReport> {
    let a = run_allocation(m, t)?;
    let generated = a.initial.iter().flatten().filter(|&&b| b).count();
    let expected_total = (t - 1) * binomial(m - 1, t);
    let per_receiver: Vec<(usize, usize)> = ((m + 2 - t)..=m)
        .map(|i| (i, a.log.iter().filter(|x| x.receiver == i).count()))
        .collect();
    let need = binomial(m - 1, t);
    let receivers_ok = per_receiver.iter().all(|&(_, c)| c == need);
    let edges_avoid_receiver = a
        .log
        .iter()
        .all(|x| !a.order.edge(x.edge).contains(&x.receiver));
    let mut used = std::collections::HashSet::new();
    let distinct = a.log.iter().all(|x| used.insert((x.donor, x.edge)))
        && a.log.iter().all(|x| a.initial[x.donor - 2][x.edge - 1]);
    let table_exhausted = distinct && a.table.iter().flatten().all(|&b| !b);
    let no_error = a.outcome == AllocationOutcome::Completed;
    let allocated = a.log.len();
    Ok(ClaimsReport {
        m,
        t,
        passed: no_error
            && generated == expected_total
            && allocated == expected_total
            && receivers_ok
            && edges_avoid_receiver
            && table_exhausted,
        no_error,
        generated,
        allocated,
        expected_total,
        per_receiver,
        receivers_ok,
        edges_avoid_receiver,
        table_exhausted,
    })
}

/// Explicit pmf of a PIN model and a function of its edge bits, tabulated
/// on that pmf. `f` receives the edge-bit word (bit `k` = instance `k`).
pub fn label_on_edges(pin: &PinSource, f: impl Fn(u64) -> u32) -> Result<(PmfSource, FunctionL)> {
    let pmf = pin.to_pmf()?;
    let labels = (0..pmf.support_len() as u64).map(f).collect();
    Ok((pmf, FunctionL::from_labels(labels)))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MiBound {
    /// `Σ_i I(X_i; L)`.
    pub lhs: f64,
    /// `t·H(L)`.
    pub rhs: f64,
    pub holds: bool,
}

/// `Σ_i I(X_i; L) ≤ t·H(L)` for a `t`-uniform PIN model. `L` is tabulated
/// on `pin.to_pmf()`.
pub fn mi_bound_check(pin: &PinSource, l: &FunctionL) -> Result<MiBound> {
    let t = match pin.graph().uniformity() {
        Some(t) => t,
        None => return domain("the bound needs a uniform hypergraph"),
    };
    let pmf = pin.to_pmf()?;
    let hl = pmf.entropy_with_label(TerminalSet::EMPTY, l)?;
    let mut lhs = 0.0;
    for i in 1..=pin.m() {
        let s = TerminalSet::singleton(i);
        lhs += pmf.entropy_f64(s) + hl - pmf.entropy_with_label(s, l)?;
    }
    let rhs = t as f64 * hl;
    Ok(MiBound {
        lhs,
        rhs,
        holds: lhs <= rhs + 1e-9,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CiIdentity {
    /// `I(X_M)`.
    pub lhs: f64,
    /// `I(X_M|L) + H(L) − Σ_B λ*_B H(L | X_{B^c})`.
    pub rhs: f64,
    pub residual: f64,
    pub conditional: f64,
    pub h_l: f64,
    /// `H(L) ≥ I(X_M) − I(X_M|L)`.
    pub drop_bounded: bool,
}

/// Decomposition of `I(X_M)` through a function `L`, with `λ*` the
/// fractional partition of the maximizing minimizer.
pub fn ci_identity_check(pmf: &PmfSource, l: &FunctionL, exec: Execution) -> Result<CiIdentity> {
    let m = pmf.m();
    let source = Source::from(pmf.clone());
    let base = multipartite_info(&source, exec)?;
    let cond = conditional_multipartite_info(pmf, l, exec)?;
    let lambda = fractional_partition_of(&cond.partition)?;
    let hl = pmf.entropy_with_label(TerminalSet::EMPTY, l)?;
    let mut penalty = 0.0;
    for (b, w) in lambda.weights() {
        let bc = b.complement(m);
        let h_l_given = pmf.entropy_with_label(bc, l)? - pmf.entropy_f64(bc);
        penalty += w.to_f64() * h_l_given;
    }
    let lhs = base.value.to_f64();
    let conditional = cond.value.to_f64();
    let rhs = conditional + hl - penalty;
    Ok(CiIdentity {
        lhs,
        rhs,
        residual: lhs - rhs,
        conditional,
        h_l: hl,
        drop_bounded: hl + 1e-9 >= lhs - conditional,
    })
}

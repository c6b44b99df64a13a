//! Partition lattice: multipartite information, Type S classification,
//! fractional partitions and conditional multipartite information.
//!
//! For a partition `P` of `M` with `|P| ≥ 2`,
//!
//! ```text
//! Δ(P) = (Σ_{A∈P} H(X_A) − H(X_M)) / (|P| − 1)
//! ```
//!
//! and `I(X_M)` is the minimum of `Δ` over all such partitions. Exact sources
//! are scanned with integer arithmetic; float sources keep every partition
//! within tolerance of the minimum.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{domain, Result, SkcError};
use crate::exec::Execution;
use crate::model::{EntropyTable, FunctionL, PinSource, PmfSource, Source};
use crate::terminal::TerminalSet;
use crate::value::Value;

/// Largest `m` for which the full partition lattice is enumerated
/// (Bell(12) ≈ 4.2 million).
pub const MAX_ENUMERATION_M: usize = 12;

/// Largest `m` accepted by the conditional multipartite information.
pub const MAX_CONDITIONAL_M: usize = 8;

/// Terminals assigned sequentially before the scan fans out.
const PREFIX_DEPTH: usize = 5;

/// A partition of `{1..m}` with blocks in canonical order: each block's
/// smallest terminal exceeds that of the block before it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    blocks: Vec<TerminalSet>,
}

impl Partition {
    /// Validates and canonicalizes `blocks` as a partition of `{1..m}`.
    pub fn new(m: usize, blocks: impl IntoIterator<Item = TerminalSet>) -> Result<Self> {
        let mut seen = TerminalSet::EMPTY;
        let mut out = Vec::new();
        for b in blocks {
            if b.is_empty() {
                return domain("partition has an empty block");
            }
            if !b.is_disjoint(seen) {
                return domain(format!("block {b} overlaps an earlier block"));
            }
            seen = seen.union(b);
            out.push(b);
        }
        if seen != TerminalSet::full(m) {
            return domain(format!("blocks cover {seen}, not 1..={m}"));
        }
        out.sort_by_key(|b| TerminalSet::min(*b));
        Ok(Partition { blocks: out })
    }

    /// From 1-indexed block lists.
    pub fn from_lists(m: usize, lists: &[&[usize]]) -> Result<Self> {
        let blocks = lists
            .iter()
            .map(|l| TerminalSet::from_terminals(m, l))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(m, blocks)
    }

    /// Already-canonical blocks from the scanner.
    fn from_masks(masks: &[u32]) -> Self {
        Partition {
            blocks: masks.iter().map(|&b| TerminalSet::from_bits(b)).collect(),
        }
    }

    /// The singleton partition `S`.
    pub fn singleton(m: usize) -> Self {
        Partition {
            blocks: (1..=m).map(TerminalSet::singleton).collect(),
        }
    }

    pub fn blocks(&self) -> &[TerminalSet] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn m(&self) -> usize {
        self.blocks.iter().map(|b| b.len()).sum()
    }

    pub fn is_singleton(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }

    /// Number of blocks meeting `e`.
    pub fn blocks_meeting(&self, e: TerminalSet) -> usize {
        self.blocks.iter().filter(|b| !b.is_disjoint(e)).count()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, b) in self.blocks.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let lists: Vec<Vec<usize>> = self.blocks.iter().map(|b| b.to_vec()).collect();
        lists.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let lists = Vec::<Vec<usize>>::deserialize(d)?;
        let m = lists.iter().map(|l| l.len()).sum();
        let refs: Vec<&[usize]> = lists.iter().map(|l| l.as_slice()).collect();
        Partition::from_lists(m, &refs).map_err(serde::de::Error::custom)
    }
}

/// Calls `f` on every partition of `{1..m}` extending the assignment of the
/// first `next` terminals in `masks[..k]`, in restricted-growth-string order.
fn extend_partitions(
    m: usize,
    masks: &mut [u32; 32],
    k: usize,
    next: usize,
    f: &mut dyn FnMut(&[u32]),
) {
    if next == m {
        f(&masks[..k]);
        return;
    }
    let bit = 1u32 << next;
    for b in 0..k {
        masks[b] |= bit;
        extend_partitions(m, masks, k, next + 1, f);
        masks[b] ^= bit;
    }
    masks[k] = bit;
    extend_partitions(m, masks, k + 1, next + 1, f);
    masks[k] = 0;
}

/// Every partition of `{1..d}` as block masks, in restricted-growth order.
fn prefixes(d: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut masks = [0u32; 32];
    if d == 0 {
        out.push(Vec::new());
    } else {
        extend_partitions(d, &mut masks, 0, 0, &mut |p| out.push(p.to_vec()));
    }
    out
}

/// Runs `visit` over every partition of `{1..m}`, split across
/// restricted-growth prefixes. Results come back in prefix order, so the
/// overall visiting order is deterministic regardless of `exec`.
fn scan_prefixes<R: Send>(
    m: usize,
    exec: Execution,
    init: impl Fn() -> R + Sync + Send,
    visit: impl Fn(&mut R, &[u32]) + Sync + Send,
) -> Vec<R> {
    let d = m.min(PREFIX_DEPTH);
    let pre = prefixes(d);
    exec.map(&pre, |p| {
        let mut acc = init();
        let mut masks = [0u32; 32];
        masks[..p.len()].copy_from_slice(p);
        extend_partitions(m, &mut masks, p.len(), d, &mut |blocks| {
            visit(&mut acc, blocks)
        });
        acc
    })
}

/// Every partition of `{1..m}` with at least two blocks, in canonical
/// restricted-growth order.
pub fn enumerate_partitions(m: usize) -> Result<Vec<Partition>> {
    if m > MAX_ENUMERATION_M {
        return Err(SkcError::TooLarge(format!(
            "enumerating partitions of {m} terminals is refused (limit {MAX_ENUMERATION_M}); \
             use classify_type_s or pin_singleton_check, which scan only the restricted partitions"
        )));
    }
    if m == 0 {
        return domain("m must be positive");
    }
    let mut out = Vec::new();
    let mut masks = [0u32; 32];
    extend_partitions(m, &mut masks, 0, 0, &mut |b| {
        if b.len() >= 2 {
            out.push(Partition::from_masks(b));
        }
    });
    Ok(out)
}

/// Subset-indexed table minimized by the lattice scan.
pub(crate) enum ScanTable<'a> {
    Int(&'a [i64]),
    Real(&'a [f64], f64),
}

impl<'a> From<&'a EntropyTable> for ScanTable<'a> {
    fn from(t: &'a EntropyTable) -> Self {
        match t {
            EntropyTable::Bits(h) => ScanTable::Int(h),
            EntropyTable::Real { h, tol } => ScanTable::Real(h, *tol),
        }
    }
}

pub(crate) struct ScanOutcome {
    pub value: Value,
    pub argmin: Vec<Partition>,
}

/// Exact fraction `num / den` with `den > 0`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Frac {
    pub num: i64,
    pub den: i64,
}

impl Frac {
    pub fn cmp(self, other: Frac) -> Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }

    pub fn value(self) -> Value {
        Value::ratio(self.num, self.den)
    }
}

/// Minimizes `(Σ_{A∈P} g(A) − g(M)) / (|P| − 1)` over partitions with at
/// least two blocks.
pub(crate) fn scan_min(m: usize, table: ScanTable<'_>, exec: Execution) -> Result<ScanOutcome> {
    if m > MAX_ENUMERATION_M {
        return Err(SkcError::TooLarge(format!(
            "exhaustive partition scan needs m ≤ {MAX_ENUMERATION_M} (got {m}); \
             the restricted scan of classify_type_s still applies"
        )));
    }
    if m < 2 {
        return domain("multipartite information needs m ≥ 2");
    }
    let full = (1usize << m) - 1;
    match table {
        ScanTable::Int(g) => {
            let total = g[full];
            let parts = scan_prefixes(
                m,
                exec,
                || (None::<Frac>, Vec::<Vec<u32>>::new()),
                |(best, arg), blocks| {
                    if blocks.len() < 2 {
                        return;
                    }
                    let num = blocks.iter().map(|&b| g[b as usize]).sum::<i64>() - total;
                    let f = Frac {
                        num,
                        den: blocks.len() as i64 - 1,
                    };
                    match best.map(|b| f.cmp(b)) {
                        Some(Ordering::Greater) => {}
                        Some(Ordering::Equal) => arg.push(blocks.to_vec()),
                        _ => {
                            *best = Some(f);
                            arg.clear();
                            arg.push(blocks.to_vec());
                        }
                    }
                },
            );
            let best = parts
                .iter()
                .filter_map(|(b, _)| *b)
                .min_by(|a, b| a.cmp(*b))
                .ok_or_else(|| SkcError::Internal("empty partition scan".into()))?;
            let argmin = parts
                .into_iter()
                .filter(|(b, _)| b.is_some_and(|b| b.cmp(best) == Ordering::Equal))
                .flat_map(|(_, a)| a)
                .map(|b| Partition::from_masks(&b))
                .collect();
            Ok(ScanOutcome {
                value: best.value(),
                argmin,
            })
        }
        ScanTable::Real(h, tol) => {
            let total = h[full];
            let parts = scan_prefixes(
                m,
                exec,
                || (f64::INFINITY, Vec::<(f64, Vec<u32>)>::new()),
                |(best, cand), blocks| {
                    if blocks.len() < 2 {
                        return;
                    }
                    let sum: f64 = blocks.iter().map(|&b| h[b as usize]).sum();
                    let d = (sum - total) / (blocks.len() as f64 - 1.0);
                    if d <= *best + tol {
                        if d < *best {
                            *best = d;
                            let cut = *best + tol;
                            cand.retain(|(v, _)| *v <= cut);
                        }
                        cand.push((d, blocks.to_vec()));
                    }
                },
            );
            let best = parts.iter().map(|(b, _)| *b).fold(f64::INFINITY, f64::min);
            let argmin = parts
                .into_iter()
                .flat_map(|(_, c)| c)
                .filter(|(v, _)| *v <= best + tol)
                .map(|(_, b)| Partition::from_masks(&b))
                .collect();
            Ok(ScanOutcome {
                value: Value::float_tol(best, tol),
                argmin,
            })
        }
    }
}

/// `I(X_M)` with every minimizing partition.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MultiInfoReport {
    pub value: Value,
    pub argmin: Vec<Partition>,
    pub delta_singleton: Value,
}

impl MultiInfoReport {
    pub fn singleton_is_minimizer(&self) -> bool {
        self.argmin.iter().any(|p| p.is_singleton())
    }
}

fn check_partition(source: &Source, p: &Partition) -> Result<()> {
    if p.len() < 2 {
        return domain("Δ needs a partition with at least two blocks");
    }
    let cover = p.blocks.iter().fold(TerminalSet::EMPTY, |a, &b| a.union(b));
    if cover != TerminalSet::full(source.m()) {
        return domain(format!("{p} is not a partition of 1..={}", source.m()));
    }
    Ok(())
}

/// `Δ(P)`.
pub fn delta(source: &Source, p: &Partition) -> Result<Value> {
    check_partition(source, p)?;
    let sum = Value::sum(
        p.blocks
            .iter()
            .map(|&b| source.h(b))
            .collect::<Vec<_>>()
            .iter(),
    );
    let k = p.len() as i64 - 1;
    Ok((sum - source.h(TerminalSet::full(source.m()))) / Value::int(k))
}

/// `I(X_M) = min_P Δ(P)` by exhaustive enumeration (m ≤ 12).
pub fn multipartite_info(source: &Source, exec: Execution) -> Result<MultiInfoReport> {
    let table = source.entropy_table();
    multipartite_info_from_table(source.m(), &table, exec)
}

pub(crate) fn multipartite_info_from_table(
    m: usize,
    table: &EntropyTable,
    exec: Execution,
) -> Result<MultiInfoReport> {
    let out = scan_min(m, table.into(), exec)?;
    let singletons = Value::sum(
        (1..=m)
            .map(|i| table.value(TerminalSet::singleton(i)))
            .collect::<Vec<_>>()
            .iter(),
    );
    let delta_singleton =
        (singletons - table.value(TerminalSet::full(m))) / Value::int(m as i64 - 1);
    Ok(MultiInfoReport {
        value: out.value,
        argmin: out.argmin,
        delta_singleton,
    })
}

/// `P_B = {B^c, {b_1}, …, {b_|B|}}`.
pub fn restricted_partition(m: usize, b: TerminalSet) -> Result<Partition> {
    if b.is_empty() || !b.within(m) || b.len() > m - 1 {
        return domain(format!(
            "restricted partition needs ∅ ≠ B ⊊ 1..={m}, got {b}"
        ));
    }
    let mut blocks = vec![b.complement(m)];
    blocks.extend(b.iter().map(TerminalSet::singleton));
    Partition::new(m, blocks)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TypeSClass {
    NotTypeS,
    TypeS,
    StrictTypeS,
}

impl fmt::Display for TypeSClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TypeSClass::NotTypeS => "NotTypeS",
            TypeSClass::TypeS => "TypeS",
            TypeSClass::StrictTypeS => "StrictTypeS",
        })
    }
}

/// Outcome of the restricted scan.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TypeSVerdict {
    pub class: TypeSClass,
    /// `min_B Δ(P_B) − Δ(S)`.
    pub margin: Value,
    /// Float margin within tolerance of zero.
    pub tie: bool,
    /// First `B` (size, then lexicographic) attaining the minimum.
    pub witness: TerminalSet,
    pub delta_singleton: Value,
}

/// Sets `B` with `1 ≤ |B| ≤ m − 2`, by size then lexicographically.
pub fn omega(m: usize) -> Vec<TerminalSet> {
    TerminalSet::all_nonempty(m)
        .into_iter()
        .filter(|b| b.len() + 2 <= m)
        .collect()
}

fn verdict_from_margin(
    margin: Value,
    witness: TerminalSet,
    delta_singleton: Value,
) -> TypeSVerdict {
    let tie = !margin.is_exact() && margin.is_zero_tol();
    let class = match margin.signum_tol() {
        Ordering::Greater => TypeSClass::StrictTypeS,
        Ordering::Equal => TypeSClass::TypeS,
        Ordering::Less => TypeSClass::NotTypeS,
    };
    TypeSVerdict {
        class,
        margin,
        tie,
        witness,
        delta_singleton,
    }
}

/// Minimum over `Ω` of a per-`B` fraction, ties to the earliest `B`.
fn min_over_omega_exact(
    m: usize,
    exec: Execution,
    f: impl Fn(TerminalSet) -> Frac + Sync + Send,
) -> (Frac, TerminalSet) {
    let sets = omega(m);
    let vals = exec.map(&sets, |&b| f(b));
    let mut best = 0;
    for k in 1..vals.len() {
        if vals[k].cmp(vals[best]) == Ordering::Less {
            best = k;
        }
    }
    (vals[best], sets[best])
}

fn frac_diff(a: Frac, b: Frac) -> Value {
    let q = BigRational::new(BigInt::from(a.num), BigInt::from(a.den))
        - BigRational::new(BigInt::from(b.num), BigInt::from(b.den));
    Value::Exact(q)
}

/// Type S classification by scanning the `2^m − m − 2` restricted partitions
/// `P_B`, `B ∈ Ω`, against the singleton partition.
pub fn classify_type_s(source: &Source, exec: Execution) -> Result<TypeSVerdict> {
    let m = source.m();
    if m < 3 {
        return domain("Type S classification needs m ≥ 3");
    }
    let table = source.entropy_table();
    let full = TerminalSet::full(m);
    match &table {
        EntropyTable::Bits(h) => {
            let hm = h[full.bits() as usize];
            let single: i64 = (1..=m).map(|i| h[1usize << (i - 1)]).sum();
            let ds = Frac {
                num: single - hm,
                den: m as i64 - 1,
            };
            let (best, witness) = min_over_omega_exact(m, exec, |b| Frac {
                num: h[b.complement(m).bits() as usize]
                    + b.iter().map(|i| h[1usize << (i - 1)]).sum::<i64>()
                    - hm,
                den: b.len() as i64,
            });
            Ok(verdict_from_margin(
                frac_diff(best, ds),
                witness,
                ds.value(),
            ))
        }
        EntropyTable::Real { h, tol } => {
            let hm = h[full.bits() as usize];
            let single: f64 = (1..=m).map(|i| h[1usize << (i - 1)]).sum();
            let ds = (single - hm) / (m as f64 - 1.0);
            let sets = omega(m);
            let vals = exec.map(&sets, |&b| {
                let s: f64 = b.iter().map(|i| h[1usize << (i - 1)]).sum();
                (h[b.complement(m).bits() as usize] + s - hm) / b.len() as f64
            });
            let mut best = 0;
            for k in 1..vals.len() {
                if vals[k] < vals[best] {
                    best = k;
                }
            }
            Ok(verdict_from_margin(
                Value::float_tol(vals[best] - ds, *tol),
                sets[best],
                Value::float_tol(ds, *tol),
            ))
        }
    }
}

/// Type S classification of a `t`-uniform PIN model by counting edges:
/// `Δ(S) = (t−1)|E|/(m−1)` and `Δ(P_B) = Σ_e mult·(P_B(e)−1)/|B|`.
pub fn pin_singleton_check(pin: &PinSource, exec: Execution) -> Result<TypeSVerdict> {
    let m = pin.m();
    if m < 3 {
        return domain("Type S classification needs m ≥ 3");
    }
    let g = pin.graph();
    let t = g.uniformity().ok_or_else(|| {
        SkcError::Domain("the edge-counting check needs a uniform hypergraph".into())
    })?;
    let total = g.total_multiplicity() as i64;
    let ds = Frac {
        num: (t as i64 - 1) * total,
        den: m as i64 - 1,
    };
    let (best, witness) = min_over_omega_exact(m, exec, |b| {
        let num = g
            .edges()
            .iter()
            .map(|e| {
                let meets = e.members.intersection(b).len() + usize::from(!e.members.is_subset(b));
                e.mult as i64 * (meets as i64 - 1)
            })
            .sum();
        Frac {
            num,
            den: b.len() as i64,
        }
    });
    Ok(verdict_from_margin(
        frac_diff(best, ds),
        witness,
        ds.value(),
    ))
}

/// Classification from the full lattice: strict when `S` is the unique
/// minimizer, Type S when it is one of several.
pub fn classify_by_enumeration(source: &Source, exec: Execution) -> Result<TypeSClass> {
    let r = multipartite_info(source, exec)?;
    Ok(if !r.singleton_is_minimizer() {
        TypeSClass::NotTypeS
    } else if r.argmin.len() == 1 {
        TypeSClass::StrictTypeS
    } else {
        TypeSClass::TypeS
    })
}

/// Weights `λ_B` on proper nonempty subsets with `Σ_{B∋i} λ_B = 1`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FractionalPartition {
    m: usize,
    weights: Vec<(TerminalSet, Value)>,
}

impl FractionalPartition {
    pub fn m(&self) -> usize {
        self.m
    }

    /// Nonzero weights, by size then lexicographically.
    pub fn weights(&self) -> &[(TerminalSet, Value)] {
        &self.weights
    }

    pub fn weight(&self, b: TerminalSet) -> Value {
        self.weights
            .iter()
            .find(|(s, _)| *s == b)
            .map_or_else(Value::zero, |(_, w)| w.clone())
    }

    /// Checks nonnegativity and the unit row sums.
    pub fn check(&self) -> Result<()> {
        for (b, w) in &self.weights {
            if w.signum_tol() == Ordering::Less {
                return domain(format!("λ_{b} = {w} is negative"));
            }
        }
        for i in 1..=self.m {
            let row = Value::sum(
                self.weights
                    .iter()
                    .filter(|(b, _)| b.contains(i))
                    .map(|(_, w)| w),
            );
            if !row.approx_eq(&Value::int(1)) {
                return domain(format!("weights containing terminal {i} sum to {row}"));
            }
        }
        Ok(())
    }

    /// `H(X_M) − Σ_B λ_B H(X_B | X_{B^c})`.
    pub fn objective(&self, source: &Source) -> Value {
        let full = TerminalSet::full(self.m);
        let hm = source.h(full);
        let s = Value::sum(
            self.weights
                .iter()
                .map(|(b, w)| w * &(hm.clone() - source.h(b.complement(self.m))))
                .collect::<Vec<_>>()
                .iter(),
        );
        hm - s
    }
}

/// `λ^(P)_B = 1{B^c ∈ P} / (|P| − 1)`.
pub fn fractional_partition_of(p: &Partition) -> Result<FractionalPartition> {
    if p.len() < 2 {
        return domain("fractional partition needs at least two blocks");
    }
    let m = p.m();
    let w = Value::ratio(1, p.len() as i64 - 1);
    let mut weights: Vec<_> = p
        .blocks
        .iter()
        .map(|a| (a.complement(m), w.clone()))
        .collect();
    weights.sort_by(|a, b| a.0.cmp_size_lex(&b.0));
    Ok(FractionalPartition { m, weights })
}

/// `I(X_M | L)` together with the partition attaining it.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConditionalInfo {
    pub value: Value,
    /// The maximizing minimizer `P*` (first in canonical order on ties).
    pub partition: Partition,
    /// `Δ(P | L)` for every minimizer of the unconditioned problem.
    pub candidates: Vec<(Partition, Value)>,
    /// Unconditioned `I(X_M)`.
    pub unconditioned: Value,
}

/// `I(X_M | L) = max_{P* ∈ argmin} Δ(P* | L)` with
/// `Δ(P|L) = (Σ_A H(X_A|L) − H(X_M|L)) / (|P| − 1)`.
pub fn conditional_multipartite_info(
    pmf: &PmfSource,
    l: &FunctionL,
    exec: Execution,
) -> Result<ConditionalInfo> {
    let m = pmf.m();
    if m > MAX_CONDITIONAL_M {
        return Err(SkcError::TooLarge(format!(
            "conditional multipartite information needs m ≤ {MAX_CONDITIONAL_M}"
        )));
    }
    let table = pmf.entropy_table();
    let base = multipartite_info_from_table(m, &table, exec)?;
    let tol = pmf.tolerance();
    let hl = pmf.entropy_with_label(TerminalSet::EMPTY, l)?;
    // H(X_A | L) for every subset
    let cond: Vec<f64> = exec
        .map_range(1 << m, |mask| {
            pmf.entropy_with_label(TerminalSet::from_bits(mask as u32), l)
                .map(|h| h - hl)
        })
        .into_iter()
        .collect::<Result<_>>()?;
    let full = (1usize << m) - 1;
    let candidates: Vec<(Partition, Value)> = base
        .argmin
        .iter()
        .map(|p| {
            let s: f64 = p.blocks.iter().map(|b| cond[b.bits() as usize]).sum();
            let d = (s - cond[full]) / (p.len() as f64 - 1.0);
            (p.clone(), Value::float_tol(d, tol))
        })
        .collect();
    let mut best = 0;
    for k in 1..candidates.len() {
        if candidates[k].1.to_f64() > candidates[best].1.to_f64() {
            best = k;
        }
    }
    Ok(ConditionalInfo {
        value: candidates[best].1.clone(),
        partition: candidates[best].0.clone(),
        candidates,
        unconditioned: base.value,
    })
}

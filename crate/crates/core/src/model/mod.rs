//! Source representations and the entropy oracle.
//!
//! Three backends share one interface: PIN hypergraph models (entropies are
//! exact integers counted combinatorially), explicit joint pmfs (floating,
//! tolerance-governed), and clubbed pairs of independent sources.

mod doc;

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::OnceLock;

pub use doc::{parse_model, serialize_model};

use crate::error::{domain, Result, SkcError};
use crate::terminal::{TerminalSet, MAX_TERMINALS};
use crate::value::{Value, DEFAULT_TOLERANCE};

/// Allowed deviation of a pmf's total mass from 1.
pub const PMF_MASS_TOLERANCE: f64 = 1e-12;

/// Largest edge-instance count for which a PIN model may be expanded to an
/// explicit pmf.
pub const MAX_EXPANSION_BITS: u64 = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperEdge {
    pub members: TerminalSet,
    pub mult: u32,
}

/// A multi-hypergraph on terminals `{1..m}`. Identical member sets are merged
/// into one entry carrying the combined multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    m: usize,
    edges: Vec<HyperEdge>,
}

impl Hypergraph {
    pub fn new(m: usize, edges: impl IntoIterator<Item = (TerminalSet, u32)>) -> Result<Self> {
        check_m(m)?;
        let mut out: Vec<HyperEdge> = Vec::new();
        for (members, mult) in edges {
            if members.is_empty() {
                return domain("empty hyperedge");
            }
            if !members.within(m) {
                return domain(format!("hyperedge {members} not within 1..={m}"));
            }
            if mult == 0 {
                return domain(format!("hyperedge {members} has zero multiplicity"));
            }
            match out.iter_mut().find(|e| e.members == members) {
                Some(e) => e.mult += mult,
                None => out.push(HyperEdge { members, mult }),
            }
        }
        Ok(Hypergraph { m, edges: out })
    }

    /// Convenience constructor from 1-indexed member lists, each with
    /// multiplicity one.
    pub fn from_lists(m: usize, lists: &[&[usize]]) -> Result<Self> {
        let edges = lists
            .iter()
            .map(|l| TerminalSet::from_terminals(m, l).map(|s| (s, 1)))
            .collect::<Result<Vec<_>>>()?;
        Hypergraph::new(m, edges)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn edges(&self) -> &[HyperEdge] {
        &self.edges
    }

    /// Σ multiplicities, i.e. `|E|` counted with copies.
    pub fn total_multiplicity(&self) -> u64 {
        self.edges.iter().map(|e| e.mult as u64).sum()
    }

    /// `Some(t)` when every hyperedge has exactly `t` members.
    pub fn uniformity(&self) -> Option<usize> {
        let t = self.edges.first()?.members.len();
        self.edges.iter().all(|e| e.members.len() == t).then_some(t)
    }

    /// Degree of terminal `i` counted with multiplicity.
    pub fn degree(&self, i: usize) -> u64 {
        self.edges
            .iter()
            .filter(|e| e.members.contains(i))
            .map(|e| e.mult as u64)
            .sum()
    }

    /// Every edge multiplicity multiplied by `n`.
    pub fn scaled(&self, n: u32) -> Hypergraph {
        Hypergraph {
            m: self.m,
            edges: self
                .edges
                .iter()
                .map(|e| HyperEdge {
                    members: e.members,
                    mult: e.mult * n,
                })
                .collect(),
        }
    }
}

/// PIN model: each hyperedge copy carries an independent uniform bit seen by
/// its members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PinSource {
    graph: Hypergraph,
}

impl PinSource {
    pub fn new(graph: Hypergraph) -> Self {
        PinSource { graph }
    }

    pub fn graph(&self) -> &Hypergraph {
        &self.graph
    }

    pub fn m(&self) -> usize {
        self.graph.m
    }

    /// `H(X_A)` in bits: the number of edge copies meeting `A`.
    pub fn entropy_bits(&self, a: TerminalSet) -> i64 {
        self.graph
            .edges
            .iter()
            .filter(|e| !e.members.is_disjoint(a))
            .map(|e| e.mult as i64)
            .sum()
    }

    /// Entropies of every subset, indexed by bitmask (index 0 is zero).
    pub fn entropy_table_bits(&self) -> Vec<i64> {
        let m = self.m();
        let total = self.graph.total_multiplicity() as i64;
        // inside[mask] = copies contained in mask; H(A) = total - inside[A^c].
        let mut inside = vec![0i64; 1 << m];
        for e in &self.graph.edges {
            inside[e.members.bits() as usize] += e.mult as i64;
        }
        // superset-sum over subsets (zeta transform)
        for bit in 0..m {
            for mask in 0..(1usize << m) {
                if mask & (1 << bit) != 0 {
                    inside[mask] += inside[mask ^ (1 << bit)];
                }
            }
        }
        let full = (1usize << m) - 1;
        (0..(1usize << m))
            .map(|mask| total - inside[full ^ mask])
            .collect()
    }

    /// Explicit joint pmf of the model. Support point `w` is the edge-bit
    /// assignment whose `k`-th bit is the value of edge instance `k`
    /// (instances enumerated in edge order, copies consecutive). Terminal
    /// `i`'s symbol packs the bits of its incident instances in instance
    /// order.
    pub fn to_pmf(&self) -> Result<PmfSource> {
        let bits = self.graph.total_multiplicity();
        if bits > MAX_EXPANSION_BITS {
            return Err(SkcError::TooLarge(format!(
                "pmf expansion needs {bits} edge bits; limit is {MAX_EXPANSION_BITS}"
            )));
        }
        let m = self.m();
        let instances = self.edge_instances();
        let mut alphabets = vec![1u32; m];
        for i in 1..=m {
            let deg = instances.iter().filter(|s| s.contains(i)).count();
            alphabets[i - 1] = 1 << deg;
        }
        let n_points = 1usize << bits;
        let mut points = Vec::with_capacity(n_points * m);
        for w in 0..n_points {
            for i in 1..=m {
                let mut sym = 0u32;
                let mut pos = 0;
                for (k, s) in instances.iter().enumerate() {
                    if s.contains(i) {
                        sym |= (((w >> k) & 1) as u32) << pos;
                        pos += 1;
                    }
                }
                points.push(sym);
            }
        }
        let p = 1.0 / n_points as f64;
        PmfSource::from_flat_support(alphabets, points, vec![p; n_points], DEFAULT_TOLERANCE)
    }

    /// Member sets of every edge instance, copies consecutive.
    pub fn edge_instances(&self) -> Vec<TerminalSet> {
        self.graph
            .edges
            .iter()
            .flat_map(|e| std::iter::repeat_n(e.members, e.mult as usize))
            .collect()
    }
}

/// Explicit joint distribution, stored on its support.
#[derive(Debug, Clone)]
pub struct PmfSource {
    alphabets: Vec<u32>,
    /// Support coordinates, row-major with stride `m`.
    points: Vec<u32>,
    probs: Vec<f64>,
    tol: f64,
    cache: Vec<OnceLock<f64>>,
}

impl PmfSource {
    /// From a dense probability table in row-major order, last terminal
    /// fastest.
    pub fn from_dense(alphabets: Vec<u32>, probs: &[f64], tol: f64) -> Result<Self> {
        let m = alphabets.len();
        check_m(m)?;
        if alphabets.contains(&0) {
            return domain("alphabet sizes must be positive");
        }
        let size = alphabets
            .iter()
            .try_fold(1usize, |acc, &a| acc.checked_mul(a as usize))
            .ok_or_else(|| SkcError::TooLarge("product alphabet overflows".into()))?;
        if probs.len() != size {
            return domain(format!(
                "probability table has {} entries; product alphabet has {size}",
                probs.len()
            ));
        }
        let mut points = Vec::new();
        let mut kept = Vec::new();
        let mut coords = vec![0u32; m];
        for &p in probs.iter() {
            if p > 0.0 {
                points.extend_from_slice(&coords);
                kept.push(p);
            }
            for k in (0..m).rev() {
                coords[k] += 1;
                if coords[k] < alphabets[k] {
                    break;
                }
                coords[k] = 0;
            }
        }
        check_probs(probs)?;
        PmfSource::from_flat_support(alphabets, points, kept, tol)
    }

    /// From explicit support points (each a coordinate vector) and their
    /// probabilities.
    pub fn from_support(
        alphabets: Vec<u32>,
        support: &[(Vec<u32>, f64)],
        tol: f64,
    ) -> Result<Self> {
        let m = alphabets.len();
        let mut points = Vec::with_capacity(support.len() * m);
        let mut probs = Vec::with_capacity(support.len());
        for (c, p) in support {
            if c.len() != m {
                return domain("support point has wrong arity");
            }
            points.extend_from_slice(c);
            probs.push(*p);
        }
        PmfSource::from_flat_support(alphabets, points, probs, tol)
    }

    fn from_flat_support(
        alphabets: Vec<u32>,
        points: Vec<u32>,
        probs: Vec<f64>,
        tol: f64,
    ) -> Result<Self> {
        let m = alphabets.len();
        check_m(m)?;
        check_probs(&probs)?;
        for (k, c) in points.chunks(m).enumerate() {
            for (i, &x) in c.iter().enumerate() {
                if x >= alphabets[i] {
                    return domain(format!(
                        "support point {k}: symbol {x} outside alphabet of terminal {}",
                        i + 1
                    ));
                }
            }
        }
        Ok(PmfSource {
            cache: (0..(1usize << m)).map(|_| OnceLock::new()).collect(),
            alphabets,
            points,
            probs,
            tol,
        })
    }

    pub fn m(&self) -> usize {
        self.alphabets.len()
    }

    pub fn alphabets(&self) -> &[u32] {
        &self.alphabets
    }

    pub fn support_len(&self) -> usize {
        self.probs.len()
    }

    /// Coordinates of support point `k`.
    pub fn point(&self, k: usize) -> &[u32] {
        let m = self.m();
        &self.points[k * m..(k + 1) * m]
    }

    pub fn prob(&self, k: usize) -> f64 {
        self.probs[k]
    }

    pub fn tolerance(&self) -> f64 {
        self.tol
    }

    /// Dense probability table (row-major, last terminal fastest), if the
    /// product alphabet has at most `limit` points.
    pub fn dense(&self, limit: usize) -> Option<Vec<f64>> {
        let size = self
            .alphabets
            .iter()
            .try_fold(1usize, |acc, &a| acc.checked_mul(a as usize))?;
        if size > limit {
            return None;
        }
        let mut out = vec![0.0; size];
        for k in 0..self.support_len() {
            let idx = self
                .point(k)
                .iter()
                .zip(&self.alphabets)
                .fold(0usize, |acc, (&x, &a)| acc * a as usize + x as usize);
            out[idx] += self.probs[k];
        }
        Some(out)
    }

    /// `H(X_A)` in bits, memoized per subset. `H(X_∅) = 0`.
    pub fn entropy_f64(&self, a: TerminalSet) -> f64 {
        *self.cache[a.bits() as usize].get_or_init(|| self.joint_entropy(a, None))
    }

    /// Entropies of all `2^m` subsets.
    pub fn entropy_table(&self) -> EntropyTable {
        EntropyTable::Real {
            h: (0..1usize << self.m())
                .map(|mask| self.entropy_f64(TerminalSet::from_bits(mask as u32)))
                .collect(),
            tol: self.tol,
        }
    }

    /// `H(X_A, L)` for a function `L` of the source; `A` may be empty.
    pub fn entropy_with_label(&self, a: TerminalSet, l: &FunctionL) -> Result<f64> {
        if l.labels.len() != self.support_len() {
            return domain("function L is defined on a different support");
        }
        Ok(self.joint_entropy(a, Some(l)))
    }

    fn joint_entropy(&self, a: TerminalSet, l: Option<&FunctionL>) -> f64 {
        let idx: Vec<usize> = a.iter().map(|i| i - 1).collect();
        let mut radix_bits = 0u32;
        for &i in &idx {
            radix_bits += bits_for(self.alphabets[i]);
        }
        if let Some(l) = l {
            radix_bits += bits_for(l.n_labels);
        }
        if radix_bits <= 128 {
            self.accumulate(|k| {
                let c = self.point(k);
                let mut key = 0u128;
                for &i in &idx {
                    key = (key << bits_for(self.alphabets[i])) | c[i] as u128;
                }
                if let Some(l) = l {
                    key = (key << bits_for(l.n_labels)) | l.labels[k] as u128;
                }
                key
            })
        } else {
            self.accumulate(|k| {
                let c = self.point(k);
                let mut key: Vec<u32> = idx.iter().map(|&i| c[i]).collect();
                if let Some(l) = l {
                    key.push(l.labels[k]);
                }
                key
            })
        }
    }

    fn accumulate<K: Hash + Eq>(&self, key: impl Fn(usize) -> K) -> f64 {
        let mut mass: HashMap<K, f64> = HashMap::new();
        for k in 0..self.support_len() {
            *mass.entry(key(k)).or_insert(0.0) += self.probs[k];
        }
        let h: f64 = mass
            .values()
            .filter(|&&p| p > 0.0)
            .map(|&p| -p * p.log2())
            .sum();
        h.max(0.0)
    }
}

fn bits_for(n: u32) -> u32 {
    if n <= 1 {
        0
    } else {
        32 - (n - 1).leading_zeros()
    }
}

fn check_m(m: usize) -> Result<()> {
    if m == 0 {
        return domain("a source needs at least one terminal");
    }
    if m > MAX_TERMINALS {
        return Err(SkcError::TooManyTerminals { m, line: 0 });
    }
    Ok(())
}

fn check_probs(probs: &[f64]) -> Result<()> {
    if probs
        .iter()
        .any(|&p| p.is_nan() || p < 0.0 || !p.is_finite())
    {
        return domain("probabilities must be finite and nonnegative");
    }
    let mass: f64 = probs.iter().sum();
    if (mass - 1.0).abs() > PMF_MASS_TOLERANCE {
        return Err(SkcError::PmfMass { mass, line: 0 });
    }
    Ok(())
}

/// A finite-valued function of the source, tabulated on a pmf's support
/// points (its values off the support do not affect any entropy).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionL {
    labels: Vec<u32>,
    n_labels: u32,
}

impl FunctionL {
    pub fn from_labels(labels: Vec<u32>) -> Self {
        let n_labels = labels.iter().copied().max().map_or(1, |x| x + 1);
        FunctionL { labels, n_labels }
    }

    /// Tabulates `f(k, point_k)` over the support of `pmf`.
    pub fn from_fn(pmf: &PmfSource, f: impl Fn(usize, &[u32]) -> u32) -> Self {
        FunctionL::from_labels((0..pmf.support_len()).map(|k| f(k, pmf.point(k))).collect())
    }

    pub fn constant(pmf: &PmfSource) -> Self {
        FunctionL::from_labels(vec![0; pmf.support_len()])
    }

    /// `L = X_M` (distinct label per support point).
    pub fn identity(pmf: &PmfSource) -> Self {
        FunctionL::from_labels((0..pmf.support_len() as u32).collect())
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }
}

/// Independent pair observed jointly: `Z_i = (X_i, Y_i)`.
#[derive(Clone, Debug)]
pub struct ClubbedSource {
    left: Box<Source>,
    right: Box<Source>,
}

impl ClubbedSource {
    pub fn left(&self) -> &Source {
        &self.left
    }

    pub fn right(&self) -> &Source {
        &self.right
    }
}

#[derive(Clone, Debug)]
pub enum Source {
    Pin(PinSource),
    Pmf(PmfSource),
    Club(ClubbedSource),
}

/// Entropies of every subset of terminals, indexed by bitmask.
#[derive(Clone, Debug)]
pub enum EntropyTable {
    /// Exact integer bits.
    Bits(Vec<i64>),
    Real {
        h: Vec<f64>,
        tol: f64,
    },
}

impl EntropyTable {
    pub fn value(&self, a: TerminalSet) -> Value {
        match self {
            EntropyTable::Bits(h) => Value::int(h[a.bits() as usize]),
            EntropyTable::Real { h, tol } => Value::float_tol(h[a.bits() as usize], *tol),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, EntropyTable::Bits(_))
    }
}

impl Source {
    pub fn m(&self) -> usize {
        match self {
            Source::Pin(p) => p.m(),
            Source::Pmf(p) => p.m(),
            Source::Club(c) => c.left.m(),
        }
    }

    /// Whether every entropy is an exact integer.
    pub fn is_exact(&self) -> bool {
        match self {
            Source::Pin(_) => true,
            Source::Pmf(_) => false,
            Source::Club(c) => c.left.is_exact() && c.right.is_exact(),
        }
    }

    /// Largest comparison tolerance among the float backends (zero when exact).
    pub fn tolerance(&self) -> f64 {
        match self {
            Source::Pin(_) => 0.0,
            Source::Pmf(p) => p.tol,
            Source::Club(c) => c.left.tolerance().max(c.right.tolerance()),
        }
    }

    /// Replaces the tolerance of every float backend.
    pub fn set_tolerance(&mut self, tol: f64) {
        match self {
            Source::Pin(_) => {}
            Source::Pmf(p) => p.tol = tol,
            Source::Club(c) => {
                c.left.set_tolerance(tol);
                c.right.set_tolerance(tol);
            }
        }
    }

    pub fn as_pin(&self) -> Option<&PinSource> {
        match self {
            Source::Pin(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_pmf(&self) -> Option<&PmfSource> {
        match self {
            Source::Pmf(p) => Some(p),
            _ => None,
        }
    }

    /// Unchecked entropy; `H(X_∅) = 0`.
    pub(crate) fn h(&self, a: TerminalSet) -> Value {
        match self {
            Source::Pin(p) => Value::int(p.entropy_bits(a)),
            Source::Pmf(p) => Value::float_tol(p.entropy_f64(a), p.tol),
            Source::Club(c) => c.left.h(a) + c.right.h(a),
        }
    }

    fn check_subset(&self, a: TerminalSet, what: &str) -> Result<()> {
        if !a.within(self.m()) {
            return domain(format!("{what} {a} is not within 1..={}", self.m()));
        }
        Ok(())
    }

    /// `H(X_A)` in bits.
    pub fn entropy(&self, a: TerminalSet) -> Result<Value> {
        if a.is_empty() {
            return domain("entropy of the empty set is not defined here");
        }
        self.check_subset(a, "set")?;
        Ok(self.h(a))
    }

    /// `H(X_A | X_B) = H(X_{A∪B}) - H(X_B)`.
    pub fn conditional_entropy(&self, a: TerminalSet, b: TerminalSet) -> Result<Value> {
        if a.is_empty() {
            return domain("conditional entropy needs a nonempty A");
        }
        if !a.is_disjoint(b) {
            return domain(format!("A = {a} and B = {b} overlap"));
        }
        self.check_subset(a, "A")?;
        self.check_subset(b, "B")?;
        Ok(self.h(a.union(b)) - self.h(b))
    }

    /// `I(X_A; X_B) = H(X_A) + H(X_B) - H(X_{A∪B})`.
    pub fn mutual_information(&self, a: TerminalSet, b: TerminalSet) -> Result<Value> {
        if a.is_empty() || b.is_empty() {
            return domain("mutual information needs nonempty A and B");
        }
        if !a.is_disjoint(b) {
            return domain(format!("A = {a} and B = {b} overlap"));
        }
        self.check_subset(a, "A")?;
        self.check_subset(b, "B")?;
        Ok(self.h(a) + self.h(b) - self.h(a.union(b)))
    }

    /// Entropies of all `2^m` subsets.
    pub fn entropy_table(&self) -> EntropyTable {
        let n = 1usize << self.m();
        match self {
            Source::Pin(p) => EntropyTable::Bits(p.entropy_table_bits()),
            Source::Pmf(p) => p.entropy_table(),
            Source::Club(c) => match (c.left.entropy_table(), c.right.entropy_table()) {
                (EntropyTable::Bits(a), EntropyTable::Bits(b)) => {
                    EntropyTable::Bits(a.iter().zip(&b).map(|(x, y)| x + y).collect())
                }
                (l, r) => {
                    let tol = self.tolerance();
                    EntropyTable::Real {
                        h: (0..n)
                            .map(|mask| {
                                let s = TerminalSet::from_bits(mask as u32);
                                l.value(s).to_f64() + r.value(s).to_f64()
                            })
                            .collect(),
                        tol,
                    }
                }
            },
        }
    }
}

impl From<PinSource> for Source {
    fn from(p: PinSource) -> Self {
        Source::Pin(p)
    }
}

impl From<PmfSource> for Source {
    fn from(p: PmfSource) -> Self {
        Source::Pmf(p)
    }
}

impl From<ClubbedSource> for Source {
    fn from(c: ClubbedSource) -> Self {
        Source::Club(c)
    }
}

/// Pairs two independent sources on the same terminal set.
pub fn club(left: Source, right: Source) -> Result<ClubbedSource> {
    if left.m() != right.m() {
        return domain(format!(
            "cannot club sources with m = {} and m = {}",
            left.m(),
            right.m()
        ));
    }
    Ok(ClubbedSource {
        left: Box::new(left),
        right: Box::new(right),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(m: usize, t: &[usize]) -> TerminalSet {
        TerminalSet::from_terminals(m, t).unwrap()
    }

    fn triangle() -> Source {
        PinSource::new(Hypergraph::from_lists(3, &[&[1, 2], &[2, 3], &[1, 3]]).unwrap()).into()
    }

    #[test]
    fn pin_conditional_and_mutual() {
        let s = triangle();
        assert_eq!(
            s.conditional_entropy(set(3, &[1]), set(3, &[2])).unwrap(),
            Value::int(1)
        );
        assert_eq!(
            s.mutual_information(set(3, &[1, 2]), set(3, &[3])).unwrap(),
            Value::int(2)
        );
        assert_eq!(
            s.conditional_entropy(set(3, &[1]), TerminalSet::EMPTY)
                .unwrap(),
            s.entropy(set(3, &[1])).unwrap()
        );
    }

    #[test]
    fn domain_errors() {
        let s = triangle();
        assert!(s.entropy(TerminalSet::EMPTY).is_err());
        assert!(s.entropy(set(4, &[4])).is_err());
        assert!(s
            .conditional_entropy(set(3, &[1, 2]), set(3, &[2]))
            .is_err());
        assert!(s
            .mutual_information(set(3, &[1]), TerminalSet::EMPTY)
            .is_err());
    }

    #[test]
    fn shared_uniform_bit() {
        let pmf = PmfSource::from_dense(vec![2, 2, 2], &[0.5, 0., 0., 0., 0., 0., 0., 0.5], 1e-9)
            .unwrap();
        let s: Source = pmf.into();
        assert!(s
            .entropy(TerminalSet::full(3))
            .unwrap()
            .approx_eq(&Value::float(1.0)));
    }

    #[test]
    fn independent_pmf_has_zero_mutual_information() {
        let pmf = PmfSource::from_dense(vec![2, 3], &[0.1, 0.2, 0.2, 0.1, 0.2, 0.2], 1e-9).unwrap();
        let s: Source = pmf.into();
        let i = s.mutual_information(set(2, &[1]), set(2, &[2])).unwrap();
        assert!(i.is_zero_tol(), "{i}");
    }

    #[test]
    fn pin_expansion_matches_combinatorial_entropy() {
        let pin = PinSource::new(
            Hypergraph::new(
                4,
                [
                    (set(4, &[1, 2]), 2),
                    (set(4, &[2, 3, 4]), 1),
                    (set(4, &[1, 4]), 1),
                ],
            )
            .unwrap(),
        );
        let pmf = pin.to_pmf().unwrap();
        for mask in 1u32..16 {
            let a = TerminalSet::from_bits(mask);
            assert!((pmf.entropy_f64(a) - pin.entropy_bits(a) as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn entropy_table_matches_direct() {
        let pin = PinSource::new(
            Hypergraph::from_lists(5, &[&[1, 2, 3], &[3, 4], &[5], &[1, 5]]).unwrap(),
        );
        let t = pin.entropy_table_bits();
        for mask in 0u32..32 {
            assert_eq!(
                t[mask as usize],
                pin.entropy_bits(TerminalSet::from_bits(mask))
            );
        }
    }

    #[test]
    fn club_requires_matching_m() {
        let a = triangle();
        let b: Source = PinSource::new(Hypergraph::from_lists(4, &[&[1, 2]]).unwrap()).into();
        assert!(club(a.clone(), b).is_err());
        let z: Source = club(a.clone(), a).unwrap().into();
        assert_eq!(z.entropy(TerminalSet::full(3)).unwrap(), Value::int(6));
    }

    #[test]
    fn hypergraph_merges_duplicates() {
        let g = Hypergraph::from_lists(3, &[&[1, 2], &[2, 1], &[2, 3]]).unwrap();
        assert_eq!(g.edges().len(), 2);
        assert_eq!(g.edges()[0].mult, 2);
        assert!(Hypergraph::from_lists(3, &[&[]]).is_err());
    }

    #[test]
    fn label_entropy() {
        let pin = PinSource::new(Hypergraph::from_lists(3, &[&[1, 2], &[2, 3], &[1, 3]]).unwrap());
        let pmf = pin.to_pmf().unwrap();
        // L = bit of the first edge instance {1,2}
        let l = FunctionL::from_fn(&pmf, |k, _| (k & 1) as u32);
        assert!((pmf.entropy_with_label(TerminalSet::EMPTY, &l).unwrap() - 1.0).abs() < 1e-12);
        let h3l = pmf.entropy_with_label(set(3, &[3]), &l).unwrap();
        assert!((h3l - 3.0).abs() < 1e-12);
    }
}

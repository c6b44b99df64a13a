//! Spanning-tree packing on graph PIN models and the XOR key protocol.
//!
//! Each spanning tree yields one key bit: the bit of its lowest edge. Every
//! vertex of tree degree `d` broadcasts the `d − 1` XORs of consecutive
//! incident edge bits (ascending edge id), which lets every terminal recover
//! all tree bits. A tree costs `m − 2` public bits.

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result, SkcError};
use crate::exec::Execution;
use crate::gf2::{mask_of, Gf2Matrix, Gf2System, MAX_WIDTH};
use crate::model::Hypergraph;
use crate::partition::{scan_min, ScanTable};
use crate::value::Value;

/// Largest `m` accepted by the packing and protocol operations.
pub const MAX_TREE_M: usize = 10;

/// Expanded graph with one id per edge copy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Multigraph {
    m: usize,
    /// Endpoints `(u, v)` with `u < v`, 1-indexed, indexed by edge id.
    edges: Vec<(usize, usize)>,
}

impl Multigraph {
    pub fn new(m: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if !(2..=MAX_TREE_M).contains(&m) {
            return domain(format!("graphs need 2 ≤ m ≤ {MAX_TREE_M}"));
        }
        if edges.len() > MAX_WIDTH {
            return Err(SkcError::TooLarge(format!(
                "{} edge copies exceed the {MAX_WIDTH}-bit limit",
                edges.len()
            )));
        }
        let mut out = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            if u == v || u == 0 || v == 0 || u > m || v > m {
                return domain(format!("edge ({u},{v}) is not a pair within 1..={m}"));
            }
            out.push((u.min(v), u.max(v)));
        }
        Ok(Multigraph { m, edges: out })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Ids of edges at `v`, ascending.
    pub fn incident(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&k| self.edges[k].0 == v || self.edges[k].1 == v)
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        let mut comp: Vec<usize> = (0..=self.m).collect();
        for &(u, v) in &self.edges {
            relabel(&mut comp, u, v);
        }
        (2..=self.m).all(|v| comp[v] == comp[1])
    }

    /// `−(edges inside A)` for every subset `A`, so that the lattice scan
    /// numerator becomes the number of crossing edges.
    fn inside_table(&self) -> Vec<i64> {
        let mut g = vec![0i64; 1 << self.m];
        for (a, slot) in g.iter_mut().enumerate() {
            let inside = self
                .edges
                .iter()
                .filter(|&&(u, v)| a >> (u - 1) & 1 == 1 && a >> (v - 1) & 1 == 1)
                .count();
            *slot = -(inside as i64);
        }
        g
    }
}

fn relabel(comp: &mut [usize], u: usize, v: usize) {
    let (from, to) = (comp[u], comp[v]);
    if from != to {
        for c in comp.iter_mut() {
            if *c == from {
                *c = to;
            }
        }
    }
}

fn graph_pairs(graph: &Hypergraph) -> Result<Vec<((usize, usize), u32)>> {
    if graph.uniformity().is_some_and(|t| t != 2) {
        return domain("tree packing needs a graph (2-uniform PIN model)");
    }
    Ok(graph
        .edges()
        .iter()
        .map(|e| {
            let v = e.members.to_vec();
            ((v[0], v[1]), e.mult)
        })
        .collect())
}

/// `G^(n)`: every multiplicity scaled by `n`; ids run copy-major, then over
/// edges in input order, then over parallel copies.
pub fn expand(graph: &Hypergraph, n: u32) -> Result<Multigraph> {
    if n == 0 {
        return domain("n must be at least 1");
    }
    let pairs = graph_pairs(graph)?;
    let total = graph.total_multiplicity() * u64::from(n);
    if total > MAX_WIDTH as u64 {
        return Err(SkcError::TooLarge(format!(
            "{total} edge copies exceed the {MAX_WIDTH}-bit limit"
        )));
    }
    let mut edges = Vec::with_capacity(total as usize);
    for _ in 0..n {
        for &(pair, mult) in &pairs {
            edges.extend(std::iter::repeat_n(pair, mult as usize));
        }
    }
    Multigraph::new(graph.m(), edges)
}

fn base_multigraph(graph: &Hypergraph) -> Result<Multigraph> {
    if graph.m() > MAX_TREE_M {
        return domain(format!("graphs need m ≤ {MAX_TREE_M}"));
    }
    let pairs = graph_pairs(graph)?;
    // multiplicities only enter through counts, so the 64-copy limit is moot
    let mut g = Multigraph {
        m: graph.m(),
        edges: Vec::new(),
    };
    for (pair, mult) in pairs {
        g.edges.extend(std::iter::repeat_n(pair, mult as usize));
    }
    Ok(g)
}

/// `min_P e_P / (|P| − 1)` over partitions with at least two blocks.
fn packing_ratio(g: &Multigraph, exec: Execution) -> Result<Value> {
    let table = g.inside_table();
    Ok(scan_min(g.m, ScanTable::Int(&table), exec)?.value)
}

/// Maximum number of edge-disjoint spanning trees,
/// `min_P ⌊e_P / (|P| − 1)⌋`.
pub fn nash_williams_sigma(g: &Multigraph, exec: Execution) -> Result<usize> {
    let r = packing_ratio(g, exec)?;
    let q = r
        .as_rational()
        .ok_or_else(|| SkcError::Internal("packing ratio must be exact".into()))?;
    q.floor()
        .to_integer()
        .to_usize()
        .ok_or_else(|| SkcError::Internal("packing number out of range".into()))
}

/// Fractional packing rate `σ̄ = min_P e_P / (|P| − 1)` of the base graph.
pub fn sigma_rate(graph: &Hypergraph, exec: Execution) -> Result<Value> {
    packing_ratio(&base_multigraph(graph)?, exec)
}

/// Edge-disjoint spanning trees, each a sorted list of edge ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreePacking {
    pub trees: Vec<Vec<usize>>,
}

impl TreePacking {
    /// Checks sizes, spanning and disjointness against `g`.
    pub fn check(&self, g: &Multigraph) -> Result<()> {
        let mut used = 0u64;
        for (k, tree) in self.trees.iter().enumerate() {
            if tree.len() + 1 != g.m {
                return Err(SkcError::Internal(format!(
                    "tree {k} has {} edges",
                    tree.len()
                )));
            }
            let mut comp: Vec<usize> = (0..=g.m).collect();
            for &id in tree {
                if id >= g.len() || used >> id & 1 == 1 {
                    return Err(SkcError::Internal(format!(
                        "edge {id} reused or out of range"
                    )));
                }
                used |= 1u64 << id;
                let (u, v) = g.edges[id];
                if comp[u] == comp[v] {
                    return Err(SkcError::Internal(format!("tree {k} has a cycle")));
                }
                relabel(&mut comp, u, v);
            }
        }
        Ok(())
    }
}

struct Search<'a> {
    g: &'a Multigraph,
    sigma: usize,
    /// Previous copy of the same pair, for symmetry breaking.
    prev_parallel: Vec<Option<usize>>,
    assign: Vec<Option<usize>>,
    comps: Vec<[u8; MAX_TREE_M + 1]>,
    sizes: Vec<usize>,
    opened: usize,
    placed: usize,
    skips_left: usize,
}

impl Search<'_> {
    /// Every unfinished tree can still be completed from edges `j..`: its
    /// components must be joined by the undecided edges.
    fn completable(&self, j: usize) -> bool {
        let m = self.g.m;
        let mut fresh_checked = false;
        for k in 0..self.sigma {
            if self.sizes[k] + 1 == m {
                continue;
            }
            if k >= self.opened {
                // unopened trees share one state
                if fresh_checked {
                    continue;
                }
                fresh_checked = true;
            }
            let mut comp = self.comps[k];
            for &(u, v) in &self.g.edges[j..] {
                let (from, to) = (comp[u], comp[v]);
                if from != to {
                    for c in comp[1..=m].iter_mut() {
                        if *c == from {
                            *c = to;
                        }
                    }
                }
            }
            if (2..=m).any(|v| comp[v] != comp[1]) {
                return false;
            }
        }
        true
    }

    fn run(&mut self, j: usize) -> bool {
        let need = self.sigma * (self.g.m - 1);
        if self.placed == need {
            return true;
        }
        if j == self.g.len() || self.g.len() - j < need - self.placed || !self.completable(j) {
            return false;
        }
        let (u, v) = self.g.edges[j];
        // copies of one pair take increasing tree indices, skips last
        let (lo, may_place) = match self.prev_parallel[j] {
            Some(p) => match self.assign[p] {
                Some(k) => (k + 1, true),
                None => (0, false),
            },
            None => (0, true),
        };
        if may_place {
            let hi = (self.opened + 1).min(self.sigma);
            for k in lo..hi {
                let comp = self.comps[k];
                if self.sizes[k] + 1 == self.g.m || comp[u] == comp[v] {
                    continue;
                }
                let opened = self.opened;
                self.opened = self.opened.max(k + 1);
                let (from, to) = (comp[u], comp[v]);
                for c in self.comps[k].iter_mut() {
                    if *c == from {
                        *c = to;
                    }
                }
                self.sizes[k] += 1;
                self.placed += 1;
                self.assign[j] = Some(k);
                if self.run(j + 1) {
                    return true;
                }
                self.assign[j] = None;
                self.placed -= 1;
                self.sizes[k] -= 1;
                self.comps[k] = comp;
                self.opened = opened;
            }
        }
        if self.skips_left > 0 {
            self.skips_left -= 1;
            if self.run(j + 1) {
                return true;
            }
            self.skips_left += 1;
        }
        false
    }
}

/// Exponential search over edge ids for `sigma` disjoint spanning trees.
/// Kept as an independent check of [`pack_trees`] on small inputs.
pub fn pack_trees_exhaustive(g: &Multigraph, sigma: usize) -> Option<TreePacking> {
    if g.len() < sigma * (g.m - 1) {
        return None;
    }
    let prev_parallel = (0..g.len())
        .map(|j| (0..j).rev().find(|&p| g.edges[p] == g.edges[j]))
        .collect();
    let mut identity = [0u8; MAX_TREE_M + 1];
    for (k, c) in identity.iter_mut().enumerate() {
        *c = k as u8;
    }
    let mut search = Search {
        g,
        sigma,
        prev_parallel,
        assign: vec![None; g.len()],
        comps: vec![identity; sigma],
        sizes: vec![0; sigma],
        opened: 0,
        placed: 0,
        skips_left: g.len() - sigma * (g.m - 1),
    };
    if !search.run(0) {
        return None;
    }
    let mut trees = vec![Vec::new(); sigma];
    for (id, a) in search.assign.iter().enumerate() {
        if let Some(k) = a {
            trees[*k].push(id);
        }
    }
    Some(TreePacking { trees })
}

/// Edge ids on the path from `u` to `v` in forest `f`, if connected.
fn forest_path(g: &Multigraph, f: &[usize], u: usize, v: usize) -> Option<Vec<usize>> {
    let mut via: Vec<Option<usize>> = vec![None; g.m + 1];
    let mut seen = vec![false; g.m + 1];
    seen[u] = true;
    let mut stack = vec![u];
    while let Some(x) = stack.pop() {
        if x == v {
            let mut path = Vec::new();
            let mut cur = v;
            while let Some(id) = via[cur] {
                path.push(id);
                let (a, b) = g.edges[id];
                cur = if a == cur { b } else { a };
            }
            return Some(path);
        }
        for &id in f {
            let (a, b) = g.edges[id];
            let y = if a == x {
                b
            } else if b == x {
                a
            } else {
                continue;
            };
            if !seen[y] {
                seen[y] = true;
                via[y] = Some(id);
                stack.push(y);
            }
        }
    }
    None
}

/// A maximum packing: `σ` forests grown by shortest augmenting paths
/// (matroid partition), then checked to be spanning trees.
pub fn pack_trees(g: &Multigraph, exec: Execution) -> Result<TreePacking> {
    if !g.is_connected() {
        return Err(SkcError::NotConnected);
    }
    let sigma = nash_williams_sigma(g, exec)?;
    let mut forests: Vec<Vec<usize>> = vec![Vec::new(); sigma];
    let mut owner: Vec<Option<usize>> = vec![None; g.len()];
    for e0 in 0..g.len() {
        // BFS over edges; parent[y] is the edge that takes y's place
        let mut parent: Vec<Option<usize>> = vec![None; g.len()];
        let mut labeled = vec![false; g.len()];
        labeled[e0] = true;
        let mut queue = std::collections::VecDeque::from([e0]);
        let mut found = None;
        'bfs: while let Some(x) = queue.pop_front() {
            let (u, v) = g.edges[x];
            for (i, f) in forests.iter().enumerate() {
                if owner[x] == Some(i) {
                    continue;
                }
                match forest_path(g, f, u, v) {
                    None => {
                        found = Some((x, i));
                        break 'bfs;
                    }
                    Some(path) => {
                        for y in path {
                            if !labeled[y] {
                                labeled[y] = true;
                                parent[y] = Some(x);
                                queue.push_back(y);
                            }
                        }
                    }
                }
            }
        }
        // shift each edge on the chain into the forest it frees up
        if let Some((mut x, mut into)) = found {
            loop {
                let from = owner[x];
                if let Some(j) = from {
                    forests[j].retain(|&id| id != x);
                }
                forests[into].push(x);
                owner[x] = Some(into);
                match (parent[x], from) {
                    (Some(p), Some(j)) => {
                        x = p;
                        into = j;
                    }
                    _ => break,
                }
            }
        }
    }
    for f in forests.iter_mut() {
        f.sort_unstable();
    }
    // deterministic tree order: by lowest edge id
    forests.sort();
    let packing = TreePacking { trees: forests };
    if packing.trees.iter().any(|t| t.len() + 1 != g.m) {
        return Err(SkcError::Internal(format!(
            "no packing of {sigma} spanning trees found; the Nash-Williams value guarantees one"
        )));
    }
    packing.check(g)?;
    Ok(packing)
}

/// One key bit: a linear form over edge bits and its value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeyBit {
    pub tree: usize,
    pub form: Vec<usize>,
    pub value: u8,
}

/// One public bit with its speaker.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptBit {
    pub tree: usize,
    pub terminal: usize,
    pub form: Vec<usize>,
    pub value: u8,
}

/// Complete record of one protocol execution, replayable from `seed`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProtocolRun {
    pub seed: u64,
    pub n: u32,
    pub graph: Multigraph,
    pub edge_bits: Vec<u8>,
    pub trees: Vec<Vec<usize>>,
    pub key: Vec<KeyBit>,
    pub transcript: Vec<TranscriptBit>,
    /// Key as recovered by each terminal, `None` where a bit is undetermined.
    pub recovered: Vec<Vec<Option<u8>>>,
}

impl ProtocolRun {
    pub fn sigma(&self) -> usize {
        self.trees.len()
    }

    fn eval(&self, form: &[usize]) -> u8 {
        form.iter().fold(0, |acc, &i| acc ^ self.edge_bits[i])
    }

    /// Key recovered by terminal `v` from its edge bits and the transcript.
    fn recover(&self, v: usize) -> Vec<Option<u8>> {
        let mut sys = Gf2System::default();
        for id in self.graph.incident(v) {
            sys.insert(1u64 << id, self.edge_bits[id]);
        }
        for b in &self.transcript {
            sys.insert(mask_of(&b.form), b.value);
        }
        self.key
            .iter()
            .map(|k| sys.evaluate(mask_of(&k.form)))
            .collect()
    }
}

/// Runs the XOR protocol on `G^(n)` with edge bits drawn from a seeded
/// ChaCha8 stream.
pub fn run_protocol(graph: &Hypergraph, n: u32, seed: u64, exec: Execution) -> Result<ProtocolRun> {
    let g = expand(graph, n)?;
    if !g.is_connected() {
        return Err(SkcError::NotConnected);
    }
    let packing = pack_trees(&g, exec)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edge_bits: Vec<u8> = (0..g.len()).map(|_| rng.gen_range(0..=1u8)).collect();
    let mut run = ProtocolRun {
        seed,
        n,
        graph: g,
        edge_bits,
        trees: packing.trees,
        key: Vec::new(),
        transcript: Vec::new(),
        recovered: Vec::new(),
    };
    for (k, tree) in run.trees.iter().enumerate() {
        let form = vec![tree[0]];
        run.key.push(KeyBit {
            tree: k,
            value: run.edge_bits[tree[0]],
            form,
        });
        for v in 1..=run.graph.m {
            let at: Vec<usize> = tree
                .iter()
                .copied()
                .filter(|&id| {
                    let (a, b) = run.graph.edges[id];
                    a == v || b == v
                })
                .collect();
            for w in at.windows(2) {
                let form = vec![w[0], w[1]];
                run.transcript.push(TranscriptBit {
                    tree: k,
                    terminal: v,
                    value: run.edge_bits[w[0]] ^ run.edge_bits[w[1]],
                    form,
                });
            }
        }
    }
    run.recovered = (1..=run.graph.m).map(|v| run.recover(v)).collect();
    Ok(run)
}

/// Agreement check: which terminals determine every key bit, with the
/// correct value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgreementReport {
    pub per_terminal: Vec<bool>,
    pub all: bool,
}

/// Recomputes each terminal's span from `graph` and the transcript. Key
/// bits must lie in the span and evaluate to the recorded value.
pub fn verify_agreement(run: &ProtocolRun, graph: &Hypergraph) -> Result<AgreementReport> {
    let g = expand(graph, run.n)?;
    if g != run.graph {
        return domain("run was not produced from this graph");
    }
    if run.edge_bits.len() != g.len() {
        return domain("edge-bit count does not match the graph");
    }
    for b in &run.transcript {
        if run.eval(&b.form) != b.value {
            return domain(format!(
                "transcript bit from terminal {} is inconsistent",
                b.terminal
            ));
        }
    }
    let per_terminal: Vec<bool> = (1..=g.m)
        .map(|v| {
            run.recover(v)
                .iter()
                .zip(&run.key)
                .all(|(r, k)| *r == Some(k.value) && run.eval(&k.form) == k.value)
        })
        .collect();
    Ok(AgreementReport {
        all: per_terminal.iter().all(|&b| b),
        per_terminal,
    })
}

/// Exact secrecy audit over GF(2). For linear functions of i.i.d. uniform
/// bits, `H(K) = rank K`, and `I(K;F) = rank K + rank F − rank(K ∪ F)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SecrecyReport {
    pub key_rank: usize,
    pub transcript_rank: usize,
    pub joint_rank: usize,
    /// `I(K;F)` in bits.
    pub leakage: usize,
    /// `H(K)` equals the key length.
    pub key_uniform: bool,
    pub secure: bool,
}

pub fn verify_secrecy(run: &ProtocolRun) -> Result<SecrecyReport> {
    let width = run.graph.len();
    let k = Gf2Matrix::from_forms(width, run.key.iter().map(|b| b.form.as_slice()))?;
    let f = Gf2Matrix::from_forms(width, run.transcript.iter().map(|b| b.form.as_slice()))?;
    let (rk, rf, rj) = (k.rank(), f.rank(), k.stacked(&f).rank());
    Ok(SecrecyReport {
        key_rank: rk,
        transcript_rank: rf,
        joint_rank: rj,
        leakage: rk + rf - rj,
        key_uniform: rk == run.key.len(),
        secure: rk + rf == rj,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle4() -> Hypergraph {
        Hypergraph::from_lists(4, &[&[1, 2], &[2, 3], &[3, 4], &[1, 4]]).unwrap()
    }

    #[test]
    fn cycle_rates() {
        let g = cycle4();
        assert_eq!(
            sigma_rate(&g, Execution::Sequential).unwrap(),
            Value::ratio(4, 3)
        );
        let e = expand(&g, 3).unwrap();
        assert_eq!(e.len(), 12);
        assert_eq!(nash_williams_sigma(&e, Execution::Sequential).unwrap(), 4);
        assert_eq!(
            pack_trees(&e, Execution::Sequential).unwrap().trees.len(),
            4
        );
    }

    #[test]
    fn protocol_on_cycle() {
        let run = run_protocol(&cycle4(), 3, 7, Execution::Sequential).unwrap();
        assert_eq!(run.key.len(), 4);
        assert_eq!(run.transcript.len(), 8);
        assert!(verify_agreement(&run, &cycle4()).unwrap().all);
        let s = verify_secrecy(&run).unwrap();
        assert_eq!((s.key_rank, s.transcript_rank, s.joint_rank), (4, 8, 12));
        assert!(s.secure);
    }

    #[test]
    fn disconnected_is_rejected() {
        let g = Hypergraph::from_lists(4, &[&[1, 2], &[3, 4]]).unwrap();
        let e = run_protocol(&g, 1, 0, Execution::Sequential).unwrap_err();
        assert_eq!(e.to_string(), "graph not connected");
    }
}

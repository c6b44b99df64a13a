//! Generators for the concrete model families.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result, SkcError};
use crate::model::{Hypergraph, PinSource, PmfSource, Source};
use crate::terminal::{TerminalSet, MAX_TERMINALS};
use crate::value::DEFAULT_TOLERANCE;

/// Above this many terminals edge-connectivity is checked by max-flow
/// instead of cut enumeration.
pub const CUT_ENUMERATION_LIMIT: usize = 12;

fn check_m(m: usize) -> Result<()> {
    if m > MAX_TERMINALS {
        return Err(SkcError::TooManyTerminals { m, line: 0 });
    }
    Ok(())
}

fn pair(m: usize, a: usize, b: usize) -> TerminalSet {
    debug_assert!(a <= m && b <= m);
    TerminalSet::singleton(a).union(TerminalSet::singleton(b))
}

/// Every `t`-subset of `{1..m}` once.
pub fn gen_complete_uniform(m: usize, t: usize) -> Result<PinSource> {
    check_m(m)?;
    if t < 2 || t > m {
        return domain(format!(
            "complete {t}-uniform hypergraph on {m} vertices needs 2 ≤ t ≤ m"
        ));
    }
    let edges = TerminalSet::all_nonempty(m)
        .into_iter()
        .filter(|s| s.len() == t)
        .map(|s| (s, 1));
    Ok(PinSource::new(Hypergraph::new(m, edges)?))
}

/// The cycle `1–2–…–m–1`.
pub fn gen_cycle(m: usize) -> Result<PinSource> {
    check_m(m)?;
    if m < 3 {
        return domain("a cycle needs m ≥ 3");
    }
    let edges = (1..=m).map(|i| (pair(m, i, i % m + 1), 1));
    Ok(PinSource::new(Hypergraph::new(m, edges)?))
}

/// Circulant Harary graph: `k`-regular and `k`-edge-connected.
pub fn gen_harary(m: usize, k: usize) -> Result<PinSource> {
    check_m(m)?;
    if k < 2 || k >= m {
        return domain(format!(
            "Harary graph needs 2 ≤ k < m (got k = {k}, m = {m})"
        ));
    }
    if (k * m) % 2 == 1 {
        return domain(format!(
            "no {k}-regular graph exists on {m} vertices (k·m odd)"
        ));
    }
    let mut edges = Vec::new();
    for i in 0..m {
        for d in 1..=k / 2 {
            let j = (i + d) % m;
            edges.push((pair(m, i + 1, j + 1), 1));
        }
        if k % 2 == 1 && i < m / 2 {
            edges.push((pair(m, i + 1, i + m / 2 + 1), 1));
        }
    }
    let g = Hypergraph::new(m, edges)?;
    if g.total_multiplicity() as usize != k * m / 2 {
        return Err(SkcError::Internal(format!(
            "Harary({m},{k}) has repeated edges"
        )));
    }
    for i in 1..=m {
        if g.degree(i) != k as u64 {
            return Err(SkcError::Internal(format!(
                "Harary({m},{k}): vertex {i} has degree {}",
                g.degree(i)
            )));
        }
    }
    let lambda = edge_connectivity(&g)?;
    if lambda != k as u64 {
        return Err(SkcError::Internal(format!(
            "Harary({m},{k}) has edge-connectivity {lambda}"
        )));
    }
    Ok(PinSource::new(g))
}

fn require_graph(g: &Hypergraph) -> Result<()> {
    if g.edges().iter().any(|e| e.members.len() != 2) {
        return domain("edge-connectivity needs a graph (every edge of size 2)");
    }
    Ok(())
}

/// Edge-connectivity (with multiplicities), choosing cut enumeration or
/// max-flow by size.
pub fn edge_connectivity(g: &Hypergraph) -> Result<u64> {
    if g.m() <= CUT_ENUMERATION_LIMIT {
        edge_connectivity_by_cuts(g)
    } else {
        edge_connectivity_by_flow(g)
    }
}

/// Minimum over all `2^(m-1) - 1` cuts separating terminal 1 from some other
/// terminal of the crossing multiplicity.
pub fn edge_connectivity_by_cuts(g: &Hypergraph) -> Result<u64> {
    require_graph(g)?;
    let m = g.m();
    if m < 2 {
        return Ok(0);
    }
    let full = TerminalSet::full(m);
    let one = TerminalSet::singleton(1);
    let mut best = u64::MAX;
    // sides containing terminal 1, excluding the full set
    for rest in 0u32..(1 << (m - 1)) {
        let side = TerminalSet::from_bits(rest << 1).union(one);
        if side == full {
            continue;
        }
        let crossing: u64 = g
            .edges()
            .iter()
            .filter(|e| {
                let inside = e.members.intersection(side);
                !inside.is_empty() && inside != e.members
            })
            .map(|e| e.mult as u64)
            .sum();
        best = best.min(crossing);
    }
    Ok(best)
}

/// Minimum over `t = 2..m` of the max-flow between terminal 1 and `t`
/// (Edmonds–Karp on the symmetric capacity matrix).
pub fn edge_connectivity_by_flow(g: &Hypergraph) -> Result<u64> {
    require_graph(g)?;
    let m = g.m();
    if m < 2 {
        return Ok(0);
    }
    let mut cap = vec![vec![0u64; m]; m];
    for e in g.edges() {
        let v = e.members.to_vec();
        let (a, b) = (v[0] - 1, v[1] - 1);
        cap[a][b] += e.mult as u64;
        cap[b][a] += e.mult as u64;
    }
    Ok((1..m).map(|t| max_flow(&cap, 0, t)).min().unwrap_or(0))
}

fn max_flow(cap: &[Vec<u64>], s: usize, t: usize) -> u64 {
    let n = cap.len();
    let mut residual = cap.to_vec();
    let mut flow = 0;
    loop {
        let mut parent = vec![usize::MAX; n];
        parent[s] = s;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for v in 0..n {
                if parent[v] == usize::MAX && residual[u][v] > 0 {
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if parent[t] == usize::MAX {
            return flow;
        }
        let mut push = u64::MAX;
        let mut v = t;
        while v != s {
            push = push.min(residual[parent[v]][v]);
            v = parent[v];
        }
        let mut v = t;
        while v != s {
            let u = parent[v];
            residual[u][v] -= push;
            residual[v][u] += push;
            v = u;
        }
        flow += push;
    }
}

/// Steiner triple system on `{1..m}`: Bose construction for `m ≡ 3 (mod 6)`,
/// Skolem construction for `m ≡ 1 (mod 6)`. Pair coverage is verified.
pub fn gen_sts(m: usize) -> Result<PinSource> {
    check_m(m)?;
    if m < 3 || gcd(m.saturating_sub(2), 6) != 1 {
        return domain(format!(
            "no Steiner triple system on m = {m} terminals: requires gcd(m-2,6)=1 and m ≥ 3"
        ));
    }
    let triples = if m % 6 == 3 { bose(m) } else { skolem(m) };
    let edges: Vec<_> = triples
        .iter()
        .map(|t| TerminalSet::from_terminals(m, t).map(|s| (s, 1)))
        .collect::<Result<_>>()?;
    let g = Hypergraph::new(m, edges)?;
    verify_sts(&g)?;
    Ok(PinSource::new(g))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn bose(m: usize) -> Vec<[usize; 3]> {
    let n = m / 3;
    let half = n.div_ceil(2);
    let op = |x: usize, y: usize| ((x + y) * half) % n;
    let label = |x: usize, i: usize| i * n + x + 1;
    let mut out = Vec::new();
    for x in 0..n {
        out.push([label(x, 0), label(x, 1), label(x, 2)]);
    }
    for x in 0..n {
        for y in x + 1..n {
            for i in 0..3 {
                out.push([label(x, i), label(y, i), label(op(x, y), (i + 1) % 3)]);
            }
        }
    }
    out
}

fn skolem(m: usize) -> Vec<[usize; 3]> {
    let n = (m - 1) / 6;
    let order = 2 * n;
    // half-idempotent commutative quasigroup: relabelled addition table of Z_2n
    let relabel = |s: usize| {
        if s.is_multiple_of(2) {
            s / 2
        } else {
            n + (s - 1) / 2
        }
    };
    let op = |x: usize, y: usize| relabel((x + y) % order);
    let label = |x: usize, i: usize| i * order + x + 1;
    let inf = m;
    let mut out = Vec::new();
    for x in 0..n {
        out.push([label(x, 0), label(x, 1), label(x, 2)]);
    }
    for x in 0..n {
        for i in 0..3 {
            out.push([inf, label(x + n, i), label(x, (i + 1) % 3)]);
        }
    }
    for x in 0..order {
        for y in x + 1..order {
            for i in 0..3 {
                out.push([label(x, i), label(y, i), label(op(x, y), (i + 1) % 3)]);
            }
        }
    }
    out
}

/// Checks that every pair of terminals lies in exactly one triple.
pub fn verify_sts(g: &Hypergraph) -> Result<()> {
    let m = g.m();
    let mut count = vec![0u32; m * m];
    for e in g.edges() {
        if e.members.len() != 3 || e.mult != 1 {
            return Err(SkcError::Internal(format!(
                "{} is not a simple triple",
                e.members
            )));
        }
        let v = e.members.to_vec();
        for a in 0..3 {
            for b in a + 1..3 {
                count[(v[a] - 1) * m + v[b] - 1] += 1;
            }
        }
    }
    for a in 0..m {
        for b in a + 1..m {
            if count[a * m + b] != 1 {
                return Err(SkcError::Internal(format!(
                    "pair {{{},{}}} covered {} times",
                    a + 1,
                    b + 1,
                    count[a * m + b]
                )));
            }
        }
    }
    Ok(())
}

/// Multigraph with `m-2` copies of each `{i,i+1}` and `m-1` copies of
/// `{1,m}`: Type S but not strict, yet every terminal must speak.
pub fn gen_chan(m: usize) -> Result<PinSource> {
    check_m(m)?;
    if m < 4 {
        return domain("the Chan multigraph needs m ≥ 4");
    }
    let mut edges: Vec<_> = (1..m)
        .map(|i| (pair(m, i, i + 1), (m - 2) as u32))
        .collect();
    edges.push((pair(m, 1, m), (m - 1) as u32));
    Ok(PinSource::new(Hypergraph::new(m, edges)?))
}

/// `X_i = (W, U_i)` with `W ~ Ber(p)` shared and `U_i` independent uniform
/// bits. Symbols encode `2W + U_i`, i.e. `00, 01, 10, 11`.
pub fn gen_omni_example(m: usize, p: f64) -> Result<PmfSource> {
    check_m(m)?;
    if m < 2 {
        return domain("the shared-bit example needs m ≥ 2");
    }
    if !(0.0..=1.0).contains(&p) {
        return domain(format!("p = {p} is not a probability"));
    }
    let mut support = Vec::new();
    for (w, pw) in [(0u32, 1.0 - p), (1u32, p)] {
        if pw == 0.0 {
            continue;
        }
        for u in 0u32..(1 << m) {
            let coords = (0..m).map(|i| 2 * w + ((u >> i) & 1)).collect();
            support.push((coords, pw / (1u64 << m) as f64));
        }
    }
    PmfSource::from_support(vec![4; m], &support, DEFAULT_TOLERANCE)
}

/// A generator family with its parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    CompleteUniform { m: usize, t: usize },
    Cycle { m: usize },
    Harary { m: usize, k: usize },
    Sts { m: usize },
    Chan { m: usize },
    OmniExample { m: usize, p: f64 },
}

impl FamilySpec {
    /// Parses `family` plus positional parameters, e.g. `("harary", ["6", "3"])`.
    /// Family names: `complete`, `cycle`, `harary`, `sts`, `chan`, `omni`.
    pub fn parse(family: &str, params: &[&str]) -> Result<Self> {
        fn int(params: &[&str], k: usize, name: &str) -> Result<usize> {
            let s = params
                .get(k)
                .ok_or_else(|| SkcError::Domain(format!("missing parameter {name}")))?;
            s.parse().map_err(|_| {
                SkcError::Domain(format!(
                    "parameter {name} = {s:?} is not a nonnegative integer"
                ))
            })
        }
        let arity = |n: usize| -> Result<()> {
            if params.len() != n {
                return domain(format!(
                    "family {family} takes {n} parameter(s), got {}",
                    params.len()
                ));
            }
            Ok(())
        };
        Ok(match family {
            "complete" | "complete_uniform" => {
                arity(2)?;
                FamilySpec::CompleteUniform {
                    m: int(params, 0, "m")?,
                    t: int(params, 1, "t")?,
                }
            }
            "cycle" => {
                arity(1)?;
                FamilySpec::Cycle {
                    m: int(params, 0, "m")?,
                }
            }
            "harary" => {
                arity(2)?;
                FamilySpec::Harary {
                    m: int(params, 0, "m")?,
                    k: int(params, 1, "k")?,
                }
            }
            "sts" => {
                arity(1)?;
                FamilySpec::Sts {
                    m: int(params, 0, "m")?,
                }
            }
            "chan" => {
                arity(1)?;
                FamilySpec::Chan {
                    m: int(params, 0, "m")?,
                }
            }
            "omni" | "omni_example" => {
                arity(2)?;
                let p = params[1].parse().map_err(|_| {
                    SkcError::Domain(format!("parameter p = {:?} is not a number", params[1]))
                })?;
                FamilySpec::OmniExample {
                    m: int(params, 0, "m")?,
                    p,
                }
            }
            other => {
                return domain(format!(
                    "unknown family {other:?}; expected complete, cycle, harary, sts, chan or omni"
                ))
            }
        })
    }

    pub fn generate(&self) -> Result<Source> {
        Ok(match *self {
            FamilySpec::CompleteUniform { m, t } => gen_complete_uniform(m, t)?.into(),
            FamilySpec::Cycle { m } => gen_cycle(m)?.into(),
            FamilySpec::Harary { m, k } => gen_harary(m, k)?.into(),
            FamilySpec::Sts { m } => gen_sts(m)?.into(),
            FamilySpec::Chan { m } => gen_chan(m)?.into(),
            FamilySpec::OmniExample { m, p } => gen_omni_example(m, p)?.into(),
        })
    }
}

//! The belt: a chain of r-dimensional hypercubes inside the 2r-ary
//! mutation tree, with special nodes `k` and `k'` produced by the compound
//! mutations going right and left. The specialized belt (initial entries
//! set to 1) realizes the normalized Q-system.

use std::collections::BTreeMap;
use std::collections::HashMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{LaurentPoly, VarSet};
use crate::cluster::{mutate_b, Seed};
use crate::error::{Error, Result};
use crate::lie::{CartanData, DynkinType};
use crate::qsystem::spin_varset;

/// Special belt nodes come in two kinds: plain `k` holds
/// `(Q_{a,2k}; Q_{a,2k+1})`, primed `k'` holds `(Q_{a,2k+2}; Q_{a,2k+1})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Plain,
    Primed,
}

#[derive(Clone, Debug)]
pub struct BeltNode {
    pub kind: NodeKind,
    pub k: i64,
    pub seed: Seed,
}

impl BeltNode {
    pub fn label(&self) -> String {
        match self.kind {
            NodeKind::Plain => format!("{}", self.k),
            NodeKind::Primed => format!("{}'", self.k),
        }
    }

    /// Directions mutated when this node extends the belt rightward.
    pub fn active_directions_right(&self, rank: usize) -> Vec<usize> {
        match self.kind {
            NodeKind::Plain => (1..=rank).collect(),
            NodeKind::Primed => (rank + 1..=2 * rank).collect(),
        }
    }
}

/// One hypercube of the chain: every subset of the active direction set,
/// keyed by bitmask, mapped to the seed it reaches from the base node.
#[derive(Clone, Debug)]
pub struct HypercubeBlock {
    pub base_index: usize,
    pub directions: Vec<usize>,
    pub vertices: BTreeMap<u32, Seed>,
}

#[derive(Clone, Debug)]
pub struct BeltGraph {
    pub dynkin: DynkinType,
    pub specialized: bool,
    pub nodes: Vec<BeltNode>,
    pub blocks: Vec<HypercubeBlock>,
}

/// Variables of the generic initial cluster: `u1..ur, t1..tr`
/// (`u, t` for rank 1).
pub fn generic_varset(rank: usize) -> VarSet {
    if rank == 1 {
        VarSet::new(["u", "t"]).unwrap()
    } else {
        let names: Vec<String> = (1..=rank)
            .map(|i| format!("u{i}"))
            .chain((1..=rank).map(|i| format!("t{i}")))
            .collect();
        VarSet::new(names).unwrap()
    }
}

/// The block exchange matrix `[[0, -C], [C, 0]]`.
pub fn block_b_matrix(cartan: &CartanData) -> Vec<Vec<i64>> {
    let r = cartan.rank();
    let mut b = vec![vec![0i64; 2 * r]; 2 * r];
    for a in 0..r {
        for c in 0..r {
            let e = cartan.matrix()[a][c];
            b[a][c + r] = -e;
            b[a + r][c] = e;
        }
    }
    b
}

/// The primed-node form `[[0, C], [-C, 0]]`.
pub fn primed_b_matrix(cartan: &CartanData) -> Vec<Vec<i64>> {
    block_b_matrix(cartan)
        .into_iter()
        .map(|row| row.into_iter().map(|e| -e).collect())
        .collect()
}

/// Plain node k = 0. Generic: `x = (u_1..u_r, t_1..t_r)` over the 2r-variable
/// ring. Specialized: `x = (1..1, t_1..t_r)` over the t-variable ring.
pub fn initial_node(dynkin: DynkinType, specialized: bool) -> BeltNode {
    let cartan = CartanData::new(dynkin);
    let r = dynkin.rank();
    let b = block_b_matrix(&cartan);
    let x: Vec<LaurentPoly> = if specialized {
        let vars = spin_varset(r);
        (0..r)
            .map(|_| LaurentPoly::one(vars.clone()))
            .chain((0..r).map(|a| LaurentPoly::var(&vars, vars.name(a)).unwrap()))
            .collect()
    } else {
        let vars = generic_varset(r);
        (0..2 * r)
            .map(|i| LaurentPoly::var(&vars, vars.name(i)).unwrap())
            .collect()
    };
    BeltNode {
        kind: NodeKind::Plain,
        k: 0,
        seed: Seed::new(x, b, "0").unwrap(),
    }
}

fn apply_directions(seed: &Seed, directions: &[usize]) -> Result<Seed> {
    let mut out = seed.clone();
    for &d in directions {
        out = out.mutate(d)?;
    }
    Ok(out)
}

/// Compound mutation in directions `1..r`. Plain `k` goes to primed `k'`;
/// primed `k'` comes back to plain `k`.
pub fn mu_plus(node: &BeltNode, rank: usize) -> Result<BeltNode> {
    let mut seed = apply_directions(&node.seed, &(1..=rank).collect::<Vec<_>>())?;
    let (kind, k) = match node.kind {
        NodeKind::Plain => (NodeKind::Primed, node.k),
        NodeKind::Primed => (NodeKind::Plain, node.k),
    };
    let label = match kind {
        NodeKind::Plain => format!("{k}"),
        NodeKind::Primed => format!("{k}'"),
    };
    seed.label = label;
    Ok(BeltNode { kind, k, seed })
}

/// Compound mutation in directions `r+1..2r`. Plain `k` goes to primed
/// `(k-1)'`; primed `k'` goes to plain `k+1`.
pub fn mu_minus(node: &BeltNode, rank: usize) -> Result<BeltNode> {
    let mut seed = apply_directions(&node.seed, &(rank + 1..=2 * rank).collect::<Vec<_>>())?;
    let (kind, k) = match node.kind {
        NodeKind::Plain => (NodeKind::Primed, node.k - 1),
        NodeKind::Primed => (NodeKind::Plain, node.k + 1),
    };
    let label = match kind {
        NodeKind::Plain => format!("{k}"),
        NodeKind::Primed => format!("{k}'"),
    };
    seed.label = label;
    Ok(BeltNode { kind, k, seed })
}

/// Build the belt rightward from the initial node, alternating the two
/// compound mutations and recording every hypercube with all `2^r` subset
/// vertices.
pub fn build_belt(dynkin: DynkinType, steps: usize, specialized: bool) -> Result<BeltGraph> {
    if steps < 1 {
        return Err(Error::InvalidArgument("steps must be >= 1".into()));
    }
    let rank = dynkin.rank();
    let mut nodes = vec![initial_node(dynkin, specialized)];
    let mut blocks = Vec::new();
    for step in 0..steps {
        let base = &nodes[step];
        let directions = base.active_directions_right(rank);
        let mut vertices = BTreeMap::new();
        for mask in 0u32..(1 << rank) {
            let subset: Vec<usize> = directions
                .iter()
                .enumerate()
                .filter(|(bit, _)| mask & (1 << bit) != 0)
                .map(|(_, &d)| d)
                .collect();
            vertices.insert(mask, apply_directions(&base.seed, &subset)?);
        }
        let next = match base.kind {
            NodeKind::Plain => mu_plus(base, rank)?,
            NodeKind::Primed => mu_minus(base, rank)?,
        };
        blocks.push(HypercubeBlock {
            base_index: step,
            directions,
            vertices,
        });
        nodes.push(next);
    }
    Ok(BeltGraph {
        dynkin,
        specialized,
        nodes,
        blocks,
    })
}

/// Outcome of a hypercube coherence check.
#[derive(Clone, Debug)]
pub struct HypercubeReport {
    pub distinct_seeds: usize,
    pub orderings_checked: usize,
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &head) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

fn subsets(items: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << items.len()) {
        out.push(
            items
                .iter()
                .enumerate()
                .filter(|(bit, _)| mask & (1 << bit) != 0)
                .map(|(_, &d)| d)
                .collect(),
        );
    }
    out
}

/// Check that every ordering of every subset of the node's active direction
/// set reaches the same seed, and count the distinct vertex seeds
/// (2^r expected). Exhaustive for rank <= 4, randomized orderings above.
pub fn verify_hypercube(node: &BeltNode, rank: usize, seed: u64) -> Result<HypercubeReport> {
    let directions = node.active_directions_right(rank);
    let mut canon: BTreeMap<String, ()> = BTreeMap::new();
    let mut orderings_checked = 0usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for subset in subsets(&directions) {
        let reference = apply_directions(&node.seed, &subset)?;
        let reference_canon = reference.canonical_string();
        let orderings: Vec<Vec<usize>> = if rank <= 4 {
            permutations(&subset)
        } else {
            // sample a handful of shuffles per subset
            (0..6)
                .map(|_| {
                    let mut shuffled = subset.clone();
                    for i in (1..shuffled.len()).rev() {
                        let j = rng.random_range(0..=i);
                        shuffled.swap(i, j);
                    }
                    shuffled
                })
                .collect()
        };
        for ordering in orderings {
            let reached = apply_directions(&node.seed, &ordering)?;
            orderings_checked += 1;
            if !reached.seeds_equal(&reference)? {
                return Err(Error::OrderingMismatch(format!(
                    "orderings {subset:?} and {ordering:?} disagree at node {}",
                    node.label()
                )));
            }
        }
        canon.insert(reference_canon, ());
    }
    Ok(HypercubeReport {
        distinct_seeds: canon.len(),
        orderings_checked,
    })
}

/// Outcome of the A-block verification.
#[derive(Clone, Debug)]
pub struct ABlockReport {
    pub trials: usize,
}

fn random_skew(rng: &mut ChaCha8Rng, r: usize) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0i64; r]; r];
    for i in 0..r {
        for j in i + 1..r {
            let e = rng.random_range(-3..=3);
            a[i][j] = e;
            a[j][i] = -e;
        }
    }
    a
}

fn assemble_block(c: &[Vec<i64>], a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = c.len();
    let mut b = vec![vec![0i64; 2 * r]; 2 * r];
    for i in 0..r {
        for j in 0..r {
            b[i][j + r] = -c[i][j];
            b[i + r][j] = c[i][j];
            b[i + r][j + r] = a[i][j];
        }
    }
    b
}

/// For `B = [[0,-C],[C,A]]` with random skew-symmetric `A`, composing the
/// first r matrix mutations (in either order) must flip the sign of the
/// off-diagonal blocks and leave `A` untouched.
pub fn verify_a_block(dynkin: DynkinType, trials: usize, seed: u64) -> Result<ABlockReport> {
    let cartan = CartanData::new(dynkin);
    let r = cartan.rank();
    let c = cartan.matrix().to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = vec![vec![vec![0i64; r]; r]];
    for _ in 0..trials {
        cases.push(random_skew(&mut rng, r));
    }
    let total = cases.len();
    for a in cases {
        let b = assemble_block(&c, &a);
        let mut expected = assemble_block(&c, &a);
        for i in 0..r {
            for j in 0..r {
                expected[i][j + r] = c[i][j];
                expected[i + r][j] = -c[i][j];
            }
        }
        for order in [
            (1..=r).collect::<Vec<_>>(),
            (1..=r).rev().collect::<Vec<_>>(),
        ] {
            let mut current = b.clone();
            for d in order {
                current = mutate_b(&current, d)?;
            }
            if current != expected {
                return Err(Error::BlockMismatch(format!(
                    "A-block not preserved for {dynkin} with A = {a:?}"
                )));
            }
        }
    }
    Ok(ABlockReport { trials: total })
}

/// Seeded uniform random walks on the belt graph, from the generic initial
/// seed: at a special node every direction is available (entering either
/// adjacent hypercube), at a hypercube interior vertex the cube's own
/// directions toggle. Every exchange division along the walk must be exact;
/// a non-exact division aborts with an error. Returns the number of
/// exchanges performed.
///
/// Walks are confined to the belt because free 2r-ary tree walks pump the
/// exchange-matrix entries and the cluster variables beyond any feasible
/// size within a handful of steps; see [`exhaustive_tree_walks`] for the
/// off-belt check at depths where the free tree is tractable.
pub fn laurent_walks(dynkin: DynkinType, walks: usize, len: usize, seed: u64) -> Result<usize> {
    let rank = dynkin.rank();
    let node = initial_node(dynkin, false);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mutations = 0usize;
    for _ in 0..walks {
        let mut current = node.seed.clone();
        // directions applied inside the current hypercube; empty at special nodes
        let mut subset: Vec<usize> = Vec::new();
        let mut in_upper = false;
        for _ in 0..len {
            let d = if subset.is_empty() {
                rng.random_range(1..=2 * rank)
            } else if in_upper {
                rank + rng.random_range(1..=rank)
            } else {
                rng.random_range(1..=rank)
            };
            current = current.mutate(d)?;
            mutations += 1;
            if subset.is_empty() {
                in_upper = d > rank;
                subset.push(d);
            } else if let Some(pos) = subset.iter().position(|&x| x == d) {
                subset.remove(pos);
            } else {
                subset.push(d);
            }
            if subset.len() == rank {
                subset.clear();
            }
        }
    }
    Ok(mutations)
}

/// Every mutation sequence of exactly `len` directions from the generic
/// initial seed, exhaustively — including the generic tree branches off the
/// belt. Each exchange division must be exact. Returns the number of
/// sequences checked. Cost grows like (2r)^len times the size of the
/// largest cluster variable reached, so keep `len` small for rank >= 2.
pub fn exhaustive_tree_walks(dynkin: DynkinType, len: usize) -> Result<usize> {
    let node = initial_node(dynkin, false);
    let n = 2 * dynkin.rank() as u64;
    let total = n.pow(len as u32);
    for code in 0..total {
        let mut c = code;
        let mut current = node.seed.clone();
        for _ in 0..len {
            let d = (c % n) as usize + 1;
            c /= n;
            current = current.mutate(d)?;
        }
    }
    Ok(total as usize)
}

/// Deterministic DOT rendering: special nodes as boxes labeled `k`/`k'`,
/// hypercube vertices as circles, edges labeled by mutation direction.
pub fn export_dot(graph: &BeltGraph) -> String {
    let mut out = String::new();
    out.push_str("graph belt {\n");
    out.push_str("  rankdir=LR;\n");
    if graph.nodes.is_empty() {
        out.push_str("}\n");
        return out;
    }
    // Identify seeds across the whole graph by canonical content, so the
    // rendered object is the quotient graph.
    let mut ids: HashMap<String, String> = HashMap::new();
    let mut decls: Vec<(String, String, bool)> = Vec::new(); // (id, label, boxed)
    let mut edges: Vec<(String, String, usize)> = Vec::new();

    let intern = |ids: &mut HashMap<String, String>,
                      decls: &mut Vec<(String, String, bool)>,
                      seed: &Seed,
                      preferred: Option<(String, String)>|
     -> String {
        let canon = seed.canonical_string();
        if let Some(existing) = ids.get(&canon) {
            return existing.clone();
        }
        let (id, label, boxed) = match preferred {
            Some((id, label)) => (id, label, true),
            None => (format!("v{}", ids.len()), String::new(), false),
        };
        ids.insert(canon, id.clone());
        decls.push((id.clone(), label, boxed));
        id
    };

    for (i, node) in graph.nodes.iter().enumerate() {
        intern(
            &mut ids,
            &mut decls,
            &node.seed,
            Some((format!("n{i}"), node.label())),
        );
    }
    for block in &graph.blocks {
        let nbits = block.directions.len();
        for mask in 0u32..(1 << nbits) {
            let from = intern(&mut ids, &mut decls, &block.vertices[&mask], None);
            for (bit, &d) in block.directions.iter().enumerate() {
                if mask & (1 << bit) == 0 {
                    let next_mask = mask | (1 << bit);
                    let to = intern(&mut ids, &mut decls, &block.vertices[&next_mask], None);
                    edges.push((from.clone(), to, d));
                }
            }
        }
    }

    for (id, label, boxed) in &decls {
        if *boxed {
            out.push_str(&format!("  \"{id}\" [shape=box, label=\"{label}\"];\n"));
        } else {
            out.push_str(&format!("  \"{id}\" [shape=circle, label=\"\"];\n"));
        }
    }
    for (from, to, d) in &edges {
        out.push_str(&format!("  \"{from}\" -- \"{to}\" [label=\"{d}\"];\n"));
    }
    out.push_str("}\n");
    out
}

/// Write the DOT text to a file.
pub fn export_dot_file(graph: &BeltGraph, path: &std::path::Path) -> Result<()> {
    std::fs::write(path, export_dot(graph))?;
    Ok(())
}

/// JSON dump `{nodes, edges(direction-labeled), blocks}` of the quotient.
pub fn graph_json(graph: &BeltGraph) -> serde_json::Value {
    let nodes: Vec<serde_json::Value> = graph
        .nodes
        .iter()
        .map(|n| {
            serde_json::json!({
                "label": n.label(),
                "kind": match n.kind { NodeKind::Plain => "plain", NodeKind::Primed => "primed" },
                "k": n.k,
                "seed": n.seed.to_json(),
            })
        })
        .collect();
    let blocks: Vec<serde_json::Value> = graph
        .blocks
        .iter()
        .map(|b| {
            let vertices: Vec<serde_json::Value> = b
                .vertices
                .iter()
                .map(|(mask, seed)| {
                    serde_json::json!({
                        "subset_mask": mask,
                        "seed": seed.to_json(),
                    })
                })
                .collect();
            serde_json::json!({
                "base": b.base_index,
                "directions": b.directions,
                "vertices": vertices,
            })
        })
        .collect();
    let mut edges = Vec::new();
    for b in &graph.blocks {
        let nbits = b.directions.len();
        for mask in 0u32..(1 << nbits) {
            for (bit, &d) in b.directions.iter().enumerate() {
                if mask & (1 << bit) == 0 {
                    edges.push(serde_json::json!({
                        "block": b.base_index,
                        "from_mask": mask,
                        "to_mask": mask | (1 << bit),
                        "direction": d,
                    }));
                }
            }
        }
    }
    serde_json::json!({
        "type": graph.dynkin.to_string(),
        "specialized": graph.specialized,
        "nodes": nodes,
        "edges": edges,
        "blocks": blocks,
    })
}

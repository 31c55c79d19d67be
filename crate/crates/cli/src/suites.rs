//! The named verification suites behind `qbelt verify`.

use qbelt::algebra::LaurentPoly;
use qbelt::belt::{
    self, block_b_matrix, build_belt, initial_node, mu_minus, mu_plus, verify_a_block,
    verify_hypercube, NodeKind,
};
use qbelt::lie::CartanData;
use qbelt::qsystem::{self, chebyshev_oracle, default_k_max, dimension_check, q_solve};
use qbelt::{DynkinType, Family};

use crate::CliError;

pub struct SuiteOutcome {
    pub pass: bool,
    pub details: serde_json::Value,
}

fn invariant(msg: impl Into<String>) -> CliError {
    CliError::Invariant(msg.into())
}

fn core(err: qbelt::Error) -> CliError {
    crate::classify(err)
}

/// A1 table equals the Chebyshev-recurrence oracle, entrywise, and the
/// specialization at t = 2 counts dimensions k + 1.
pub fn chebyshev(dynkin: DynkinType, k_max: usize) -> Result<SuiteOutcome, CliError> {
    if dynkin.to_string() != "A1" {
        return Err(CliError::Config(
            "the chebyshev suite applies to type A1".into(),
        ));
    }
    let table = q_solve(dynkin, k_max, false).map_err(core)?;
    let oracle = chebyshev_oracle(k_max);
    for k in 0..=k_max {
        if table.entry(1, k).map_err(core)? != &oracle[k] {
            return Err(invariant(format!("A1 table differs from oracle at k={k}")));
        }
    }
    let vars = table.vars().clone();
    let two = LaurentPoly::constant(vars.clone(), 2);
    for k in 0..=k_max {
        let val = table
            .entry(1, k)
            .map_err(core)?
            .specialize(&[("t", two.clone())])
            .map_err(core)?;
        if val.as_constant() != Some((k as i64 + 1).into()) {
            return Err(invariant(format!("Q_{k}(2) != {}", k + 1)));
        }
    }
    Ok(SuiteOutcome {
        pass: true,
        details: serde_json::json!({ "k_max": k_max, "entries": k_max + 1 }),
    })
}

/// Every unnormalized entry is a polynomial and satisfies the defining
/// relation exactly.
pub fn polynomiality(dynkin: DynkinType, k_max: Option<usize>) -> Result<SuiteOutcome, CliError> {
    let k_max = k_max.unwrap_or_else(|| default_k_max(dynkin));
    let cartan = CartanData::new(dynkin);
    let table = q_solve(dynkin, k_max, false).map_err(core)?;
    let mut max_terms = 0usize;
    for alpha in 1..=dynkin.rank() {
        for k in 0..=k_max {
            let entry = table.entry(alpha, k).map_err(core)?;
            max_terms = max_terms.max(entry.term_count());
            if !entry.is_polynomial() {
                return Err(invariant(format!(
                    "Q_{{{alpha},{k}}} of {dynkin} has a negative exponent"
                )));
            }
        }
        for k in 1..k_max {
            if !table
                .relation_residual(&cartan, alpha, k)
                .map_err(core)?
                .is_zero()
            {
                return Err(invariant(format!(
                    "defining relation fails at ({alpha},{k}) for {dynkin}"
                )));
            }
        }
    }
    Ok(SuiteOutcome {
        pass: true,
        details: serde_json::json!({
            "k_max": k_max,
            "entries": dynkin.rank() * (k_max + 1),
            "max_terms": max_terms,
        }),
    })
}

/// Numeric eps-twist identity at random points.
pub fn normalization(
    dynkin: DynkinType,
    k_max: usize,
    trials: usize,
    seed: u64,
    tolerance: f64,
) -> Result<SuiteOutcome, CliError> {
    let report =
        qsystem::verify_normalization(dynkin, k_max, trials, seed, tolerance).map_err(core)?;
    Ok(SuiteOutcome {
        pass: true,
        details: serde_json::json!({
            "k_max": report.k_max,
            "trials": report.trials,
            "max_deviation": report.max_deviation,
            "tolerance": report.tolerance,
        }),
    })
}

/// Compound-mutation involutions, block forms at special nodes, and (for
/// the specialized belt) agreement with the normalized Q-table.
pub fn belt_suite(dynkin: DynkinType, steps: usize) -> Result<SuiteOutcome, CliError> {
    let rank = dynkin.rank();
    let cartan = CartanData::new(dynkin);
    let plain_b = block_b_matrix(&cartan);
    let primed_b = belt::primed_b_matrix(&cartan);

    let mut nodes_checked = 0usize;
    for specialized in [false, true] {
        let graph = build_belt(dynkin, steps, specialized).map_err(core)?;
        for node in &graph.nodes {
            let expected = match node.kind {
                NodeKind::Plain => &plain_b,
                NodeKind::Primed => &primed_b,
            };
            if &node.seed.b != expected {
                return Err(invariant(format!(
                    "block form violated at node {} of {dynkin}",
                    node.label()
                )));
            }
            let plus2 = mu_plus(&mu_plus(node, rank).map_err(core)?, rank).map_err(core)?;
            if !node.seed.seeds_equal(&plus2.seed).map_err(core)? {
                return Err(invariant(format!(
                    "mu_plus is not involutive at node {}",
                    node.label()
                )));
            }
            let minus2 = mu_minus(&mu_minus(node, rank).map_err(core)?, rank).map_err(core)?;
            if !node.seed.seeds_equal(&minus2.seed).map_err(core)? {
                return Err(invariant(format!(
                    "mu_minus is not involutive at node {}",
                    node.label()
                )));
            }
            nodes_checked += 1;
        }
    }

    // specialized belt entries against the independently solved table
    let graph = build_belt(dynkin, steps, true).map_err(core)?;
    let table_depth = steps + 2;
    let table = q_solve(dynkin, table_depth, true).map_err(core)?;
    for node in &graph.nodes {
        let (low, high) = match node.kind {
            NodeKind::Plain => (2 * node.k, 2 * node.k + 1),
            NodeKind::Primed => (2 * node.k + 2, 2 * node.k + 1),
        };
        for alpha in 1..=rank {
            for (slot, level) in [(alpha - 1, low), (alpha - 1 + rank, high)] {
                let expected = table.entry(alpha, level as usize).map_err(core)?;
                if &node.seed.x[slot] != expected {
                    return Err(invariant(format!(
                        "specialized belt entry x_{} at node {} differs from Q_{{{alpha},{level}}}",
                        slot + 1,
                        node.label()
                    )));
                }
            }
        }
    }
    Ok(SuiteOutcome {
        pass: true,
        details: serde_json::json!({ "steps": steps, "nodes_checked": nodes_checked }),
    })
}

/// Hypercube coherence at the plain nodes k = 0 and k = 1.
pub fn hypercube(dynkin: DynkinType, seed: u64) -> Result<SuiteOutcome, CliError> {
    let rank = dynkin.rank();
    let node0 = initial_node(dynkin, false);
    let node0p = mu_plus(&node0, rank).map_err(core)?;
    let node1 = mu_minus(&node0p, rank).map_err(core)?;
    let mut reports = Vec::new();
    for node in [node0, node1] {
        let report = verify_hypercube(&node, rank, seed).map_err(core)?;
        if report.distinct_seeds != 1 << rank {
            return Err(invariant(format!(
                "expected {} distinct hypercube vertices at node {}, found {}",
                1 << rank,
                node.label(),
                report.distinct_seeds
            )));
        }
        reports.push(serde_json::json!({
            "node": node.label(),
            "distinct_seeds": report.distinct_seeds,
            "orderings_checked": report.orderings_checked,
        }));
    }
    Ok(SuiteOutcome {
        pass: true,
        details: serde_json::Value::Array(reports),
    })
}

/// The A-block lemma on random skew-symmetric lower-right blocks.
pub fn ablock(dynkin: DynkinType, trials: usize, seed: u64) -> Result<SuiteOutcome, CliError> {
    let report = verify_a_block(dynkin, trials, seed).map_err(core)?;
    Ok(SuiteOutcome {
        pass: true,
        details: serde_json::json!({ "cases": report.trials }),
    })
}

/// Random mutation walks from the generic initial seed; every exchange
/// division must be exact.
pub fn laurent(
    dynkin: DynkinType,
    walks: usize,
    len: usize,
    seed: u64,
) -> Result<SuiteOutcome, CliError> {
    let mutations = belt::laurent_walks(dynkin, walks, len, seed).map_err(core)?;
    Ok(SuiteOutcome {
        pass: true,
        details: serde_json::json!({ "walks": walks, "len": len, "mutations": mutations }),
    })
}

/// Family-A dimension evaluations against the hook-content oracle.
pub fn dimensions(dynkin: DynkinType, k_max: Option<usize>) -> Result<SuiteOutcome, CliError> {
    if dynkin.family() != Family::A {
        return Err(CliError::Config(
            "the dimensions suite applies to family A".into(),
        ));
    }
    let k_max = k_max.unwrap_or_else(|| default_k_max(dynkin));
    let report = dimension_check(dynkin, k_max).map_err(core)?;
    Ok(SuiteOutcome {
        pass: true,
        details: serde_json::json!({ "k_max": k_max, "checks": report.checks.len() }),
    })
}

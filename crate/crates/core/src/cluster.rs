//! Seeds and mutations of a coefficient-free cluster algebra.
//!
//! Cluster variables are stored as Laurent polynomials in the initial
//! cluster's variables, so the exchange step is an exact Laurent division;
//! a non-exact division is reported as an error, never approximated.

use crate::algebra::LaurentPoly;
use crate::error::{Error, Result};

/// A seed: cluster vector `x`, skew-symmetric exchange matrix `B`, and an
/// opaque label. Graph identity uses [`Seed::seeds_equal`], never labels.
#[derive(Clone, Debug)]
pub struct Seed {
    pub x: Vec<LaurentPoly>,
    pub b: Vec<Vec<i64>>,
    pub label: String,
}

/// A validated list of mutation directions in `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MutationSequence {
    directions: Vec<usize>,
}

impl MutationSequence {
    pub fn new(directions: Vec<usize>, n: usize) -> Result<Self> {
        for &d in &directions {
            if d < 1 || d > n {
                return Err(Error::DirectionOutOfRange(d, n));
            }
        }
        Ok(MutationSequence { directions })
    }

    pub fn directions(&self) -> &[usize] {
        &self.directions
    }
}

/// Check skew-symmetry (B = -B^T), reporting the first offending entry.
pub fn check_skew_symmetric(b: &[Vec<i64>]) -> Result<()> {
    let n = b.len();
    for (i, row) in b.iter().enumerate() {
        if row.len() != n {
            return Err(Error::SeedDimensionMismatch(row.len(), n));
        }
        for j in 0..n {
            if b[i][j] != -b[j][i] {
                return Err(Error::NotSkewSymmetric(i + 1, j + 1));
            }
        }
    }
    Ok(())
}

/// Matrix mutation in direction `k` (1-based):
/// entries in row or column k flip sign, all others gain
/// `sign(B_ik) * [B_ik * B_kj]_+`.
pub fn mutate_b(b: &[Vec<i64>], k: usize) -> Result<Vec<Vec<i64>>> {
    check_skew_symmetric(b)?;
    let n = b.len();
    if k < 1 || k > n {
        return Err(Error::DirectionOutOfRange(k, n));
    }
    let k = k - 1;
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            out[i][j] = if i == k || j == k {
                -b[i][j]
            } else {
                b[i][j] + b[i][k].signum() * (b[i][k] * b[k][j]).max(0)
            };
        }
    }
    Ok(out)
}

fn positive_part(n: i64) -> u64 {
    n.max(0) as u64
}

impl Seed {
    pub fn new(x: Vec<LaurentPoly>, b: Vec<Vec<i64>>, label: impl Into<String>) -> Result<Self> {
        check_skew_symmetric(&b)?;
        if x.len() != b.len() {
            return Err(Error::SeedDimensionMismatch(x.len(), b.len()));
        }
        Ok(Seed {
            x,
            b,
            label: label.into(),
        })
    }

    pub fn dimension(&self) -> usize {
        self.x.len()
    }

    /// The exchange result in direction `k`: all entries are kept except
    /// `x_k`, which becomes `(prod x_j^{[B_jk]_+} + prod x_j^{[-B_jk]_+}) / x_k`.
    pub fn mutate_x(&self, k: usize) -> Result<Vec<LaurentPoly>> {
        let n = self.dimension();
        if k < 1 || k > n {
            return Err(Error::DirectionOutOfRange(k, n));
        }
        let idx = k - 1;
        if self.x[idx].is_zero() {
            return Err(Error::ZeroClusterVariable(k));
        }
        let vars = self.x[idx].vars().clone();
        let mut plus = LaurentPoly::one(vars.clone());
        let mut minus = LaurentPoly::one(vars);
        for (j, xj) in self.x.iter().enumerate() {
            let e = self.b[j][idx];
            let up = positive_part(e);
            if up > 0 {
                plus = plus.mul(&xj.pow(up)?)?;
            }
            let down = positive_part(-e);
            if down > 0 {
                minus = minus.mul(&xj.pow(down)?)?;
            }
        }
        let exchange = plus.add(&minus)?;
        let new_var = exchange.exact_div(&self.x[idx])?;
        let mut x = self.x.clone();
        x[idx] = new_var;
        Ok(x)
    }

    /// Full seed mutation: exchange on x, matrix rule on B, path recorded
    /// in the label.
    pub fn mutate(&self, k: usize) -> Result<Seed> {
        let x = self.mutate_x(k)?;
        let b = mutate_b(&self.b, k)?;
        Ok(Seed {
            x,
            b,
            label: format!("{}.mu{}", self.label, k),
        })
    }

    /// Left-to-right composition of mutations.
    pub fn apply_sequence(&self, seq: &MutationSequence) -> Result<Seed> {
        let mut seed = self.clone();
        for &d in seq.directions() {
            seed = seed.mutate(d)?;
        }
        Ok(seed)
    }

    /// Entrywise equality of x-vectors (canonical form) and B matrices;
    /// labels are ignored.
    pub fn seeds_equal(&self, other: &Seed) -> Result<bool> {
        if self.dimension() != other.dimension() {
            return Err(Error::SeedDimensionMismatch(
                self.dimension(),
                other.dimension(),
            ));
        }
        if let (Some(a), Some(b)) = (self.x.first(), other.x.first()) {
            if a.vars() != b.vars() {
                return Err(Error::VarSetMismatch(
                    a.vars().names().join(","),
                    b.vars().names().join(","),
                ));
            }
        }
        Ok(self.b == other.b && self.x == other.x)
    }

    /// Canonical content string, used to identify seeds across the graph
    /// quotient. Label-independent.
    pub fn canonical_string(&self) -> String {
        let rows: Vec<String> = self
            .b
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        let xs: Vec<String> = self.x.iter().map(|p| p.to_string()).collect();
        format!("B[{}] x[{}]", rows.join(";"), xs.join(" | "))
    }

    /// JSON dump: `{label, B: row-major, x: canonical strings}`.
    pub fn to_json(&self) -> serde_json::Value {
        let flat: Vec<i64> = self.b.iter().flatten().copied().collect();
        serde_json::json!({
            "label": self.label,
            "B": flat,
            "x": self.x.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::VarSet;

    fn a1_generic() -> Seed {
        let vars = VarSet::new(["u", "s"]).unwrap();
        let u = LaurentPoly::var(&vars, "u").unwrap();
        let s = LaurentPoly::var(&vars, "s").unwrap();
        Seed::new(vec![u, s], vec![vec![0, -2], vec![2, 0]], "0").unwrap()
    }

    fn a2_block_b() -> Vec<Vec<i64>> {
        vec![
            vec![0, 0, -2, 1],
            vec![0, 0, 1, -2],
            vec![2, -1, 0, 0],
            vec![-1, 2, 0, 0],
        ]
    }

    #[test]
    fn a1_exchange() {
        let seed = a1_generic();
        let vars = seed.x[0].vars().clone();
        let x = seed.mutate_x(1).unwrap();
        // x'_1 = (s^2 + 1) / u
        let expected = LaurentPoly::parse(&vars, "s^2*u^-1 + u^-1").unwrap();
        assert_eq!(x[0], expected);
        assert_eq!(x[1], seed.x[1]);
    }

    #[test]
    fn mutation_is_involutive() {
        let seed = a1_generic();
        let twice = seed.mutate(1).unwrap().mutate(1).unwrap();
        assert!(seed.seeds_equal(&twice).unwrap());
        let seq = MutationSequence::new(vec![2, 2], 2).unwrap();
        let back = seed.apply_sequence(&seq).unwrap();
        assert!(seed.seeds_equal(&back).unwrap());
    }

    #[test]
    fn b_mutation_sign_flip() {
        let b = vec![vec![0, -2], vec![2, 0]];
        assert_eq!(mutate_b(&b, 1).unwrap(), vec![vec![0, 2], vec![-2, 0]]);
    }

    #[test]
    fn a2_block_mutation_leaves_and_restores_block_form() {
        let b = a2_block_b();
        let b1 = mutate_b(&b, 1).unwrap();
        // the intermediate matrix leaves the block form
        assert_eq!(b1[2][3], 2);
        assert_eq!(b1[3][2], -2);
        let b2 = mutate_b(&b1, 2).unwrap();
        // and the next step restores it
        assert_eq!(b2[2][3], 0);
        assert_eq!(
            b2,
            vec![
                vec![0, 0, 2, -1],
                vec![0, 0, -1, 2],
                vec![-2, 1, 0, 0],
                vec![1, -2, 0, 0],
            ]
        );
    }

    #[test]
    fn empty_sequence_is_identity() {
        let seed = a1_generic();
        let seq = MutationSequence::new(vec![], 2).unwrap();
        let same = seed.apply_sequence(&seq).unwrap();
        assert!(seed.seeds_equal(&same).unwrap());
    }

    #[test]
    fn commuting_directions() {
        // A2 block seed has B_12 = 0, so mu_1 and mu_2 commute.
        let vars = VarSet::new(["u1", "u2", "t1", "t2"]).unwrap();
        let x: Vec<LaurentPoly> = ["u1", "u2", "t1", "t2"]
            .iter()
            .map(|n| LaurentPoly::var(&vars, n).unwrap())
            .collect();
        let seed = Seed::new(x, a2_block_b(), "0").unwrap();
        let ab = seed.mutate(1).unwrap().mutate(2).unwrap();
        let ba = seed.mutate(2).unwrap().mutate(1).unwrap();
        assert!(ab.seeds_equal(&ba).unwrap());
    }

    #[test]
    fn seed_differs_from_mutation() {
        let seed = a1_generic();
        let moved = seed.mutate(1).unwrap();
        assert!(!seed.seeds_equal(&moved).unwrap());
    }

    #[test]
    fn generic_a2_exchange_value() {
        // brute-force expansion of the exchange at the generic block seed:
        // x'_1 = (t1^2 + t2) / u1
        let vars = VarSet::new(["u1", "u2", "t1", "t2"]).unwrap();
        let x: Vec<LaurentPoly> = ["u1", "u2", "t1", "t2"]
            .iter()
            .map(|n| LaurentPoly::var(&vars, n).unwrap())
            .collect();
        let seed = Seed::new(x, a2_block_b(), "0").unwrap();
        let mutated = seed.mutate_x(1).unwrap();
        let expected = LaurentPoly::parse(&vars, "t1^2*u1^-1 + t2*u1^-1").unwrap();
        assert_eq!(mutated[0], expected);
        // specialize u -> 1: the normalized entry t1^2 + t2
        let one = LaurentPoly::one(vars.clone());
        let specialized = mutated[0]
            .specialize(&[("u1", one.clone()), ("u2", one)])
            .unwrap();
        assert_eq!(specialized, LaurentPoly::parse(&vars, "t1^2 + t2").unwrap());
    }

    #[test]
    fn zero_cluster_variable_rejected() {
        let vars = VarSet::new(["u", "s"]).unwrap();
        let zero = LaurentPoly::zero(vars.clone());
        let s = LaurentPoly::var(&vars, "s").unwrap();
        let seed = Seed::new(vec![zero, s], vec![vec![0, -2], vec![2, 0]], "z").unwrap();
        assert!(matches!(
            seed.mutate_x(1),
            Err(Error::ZeroClusterVariable(1))
        ));
    }

    #[test]
    fn non_skew_rejected() {
        let b = vec![vec![0, 1], vec![1, 0]];
        assert!(matches!(
            mutate_b(&b, 1),
            Err(Error::NotSkewSymmetric(..))
        ));
    }

    #[test]
    fn direction_out_of_range() {
        let seed = a1_generic();
        assert!(matches!(
            seed.mutate_x(3),
            Err(Error::DirectionOutOfRange(3, 2))
        ));
        assert!(MutationSequence::new(vec![0], 2).is_err());
    }
}

//! Exact solver for the Q-system recursion, the normalization signs, and
//! the character/dimension oracles used to cross-check it.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{LaurentPoly, VarSet};
use crate::error::{Error, Result};
use crate::lie::{CartanData, DynkinType, Family};

/// Variables `t_alpha` housing the fundamental characters: `t` for rank 1,
/// `t1..tr` otherwise.
pub fn spin_varset(rank: usize) -> VarSet {
    if rank == 1 {
        VarSet::new(["t"]).unwrap()
    } else {
        VarSet::indexed("t", rank)
    }
}

/// Default recursion depth per rank: term counts grow quickly with rank.
pub fn default_k_max(dynkin: DynkinType) -> usize {
    match dynkin.rank() {
        0..=3 => 10,
        4..=5 => 8,
        _ => 4,
    }
}

/// Solved table of Q-system values `Q_{alpha,k}` as Laurent polynomials in
/// the `t` variables.
#[derive(Clone, Debug)]
pub struct QTable {
    dynkin: DynkinType,
    normalized: bool,
    vars: VarSet,
    entries: Vec<Vec<LaurentPoly>>,
}

impl QTable {
    pub fn dynkin(&self) -> DynkinType {
        self.dynkin
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn k_max(&self) -> usize {
        self.entries[0].len() - 1
    }

    /// Entry `Q_{alpha,k}`; `alpha` is a 1-based node label.
    pub fn entry(&self, alpha: usize, k: usize) -> Result<&LaurentPoly> {
        let rank = self.entries.len();
        if alpha < 1 || alpha > rank {
            return Err(Error::NodeOutOfRange(alpha, rank));
        }
        self.entries[alpha - 1].get(k).ok_or_else(|| {
            Error::InvalidArgument(format!("k={k} exceeds table depth {}", self.k_max()))
        })
    }

    /// `Q_{a,k+1} Q_{a,k-1} +/- prod_neighbors Q_{b,k} - Q_{a,k}^2`; zero on
    /// every solved entry (`+` for the unnormalized system, `-` for the
    /// normalized one).
    pub fn relation_residual(
        &self,
        cartan: &CartanData,
        alpha: usize,
        k: usize,
    ) -> Result<LaurentPoly> {
        if k < 1 || k + 1 > self.k_max() {
            return Err(Error::InvalidArgument(format!(
                "relation needs 1 <= k < {}, got {k}",
                self.k_max()
            )));
        }
        let up = self.entry(alpha, k + 1)?;
        let down = self.entry(alpha, k - 1)?;
        let mid = self.entry(alpha, k)?;
        let mut prod = LaurentPoly::one(self.vars.clone());
        for beta in cartan.neighbors(alpha)? {
            prod = prod.mul(self.entry(beta, k)?)?;
        }
        let lhs = up.mul(down)?;
        let lhs = if self.normalized {
            lhs.sub(&prod)?
        } else {
            lhs.add(&prod)?
        };
        lhs.sub(&mid.mul(mid)?)
    }

    /// CSV rows `(type, alpha, k, polynomial, term count)`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("type,alpha,k,polynomial,terms\n");
        for (a, row) in self.entries.iter().enumerate() {
            for (k, poly) in row.iter().enumerate() {
                out.push_str(&format!(
                    "{},{},{},\"{}\",{}\n",
                    self.dynkin,
                    a + 1,
                    k,
                    poly,
                    poly.term_count()
                ));
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .entries
            .iter()
            .enumerate()
            .flat_map(|(a, row)| {
                row.iter().enumerate().map(move |(k, poly)| {
                    serde_json::json!({
                        "alpha": a + 1,
                        "k": k,
                        "text": poly.to_string(),
                        "terms": poly.to_json_terms(),
                    })
                })
            })
            .collect();
        serde_json::json!({
            "type": self.dynkin.to_string(),
            "normalized": self.normalized,
            "k_max": self.k_max(),
            "vars": self.vars.names(),
            "entries": entries,
        })
    }
}

/// Solve the Q-system up to level `k_max`.
///
/// Unnormalized: `Q_{a,k+1} = (Q_{a,k}^2 - prod_{b~a} Q_{b,k}) / Q_{a,k-1}`
/// with `Q_{a,0} = 1`, `Q_{a,1} = t_a`. The normalized variant uses `+`.
/// Every division must be exact; failure is fatal since it would falsify
/// the polynomiality property.
pub fn q_solve(dynkin: DynkinType, k_max: usize, normalized: bool) -> Result<QTable> {
    if k_max < 1 {
        return Err(Error::InvalidArgument("k_max must be >= 1".into()));
    }
    let cartan = CartanData::new(dynkin);
    let rank = dynkin.rank();
    let vars = spin_varset(rank);
    let mut entries: Vec<Vec<LaurentPoly>> = (0..rank)
        .map(|a| {
            vec![
                LaurentPoly::one(vars.clone()),
                LaurentPoly::var(&vars, vars.name(a)).expect("variable exists"),
            ]
        })
        .collect();
    for k in 1..k_max {
        let mut level = Vec::with_capacity(rank);
        for alpha in 1..=rank {
            let mid = &entries[alpha - 1][k];
            let mut prod = LaurentPoly::one(vars.clone());
            for beta in cartan.neighbors(alpha)? {
                prod = prod.mul(&entries[beta - 1][k])?;
            }
            let numerator = if normalized {
                mid.mul(mid)?.add(&prod)?
            } else {
                mid.mul(mid)?.sub(&prod)?
            };
            level.push(numerator.exact_div(&entries[alpha - 1][k - 1])?);
        }
        for (alpha, value) in level.into_iter().enumerate() {
            entries[alpha].push(value);
        }
    }
    Ok(QTable {
        dynkin,
        normalized,
        vars,
        entries,
    })
}

/// Chebyshev-style recurrence `P_0 = 1, P_1 = t, P_{j+1} = t P_j - P_{j-1}`,
/// the independent rank-1 oracle.
pub fn chebyshev_oracle(k_max: usize) -> Vec<LaurentPoly> {
    let vars = spin_varset(1);
    let t = LaurentPoly::var(&vars, "t").unwrap();
    let mut polys = vec![LaurentPoly::one(vars.clone()), t.clone()];
    for j in 1..k_max {
        let next = t
            .mul(&polys[j])
            .and_then(|tp| tp.sub(&polys[j - 1]))
            .expect("same varset");
        polys.push(next);
    }
    polys.truncate(k_max + 1);
    polys
}

/// The normalization signs `eps_b = exp(i pi sum_a Cinv_{b,a})`; unit
/// modulus by construction, with `prod_b eps_b^{C_{a,b}} = -1` for all `a`.
#[derive(Clone, Debug)]
pub struct NormalizationSigns {
    eps: Vec<Complex64>,
    exponents: Vec<BigRational>,
}

impl NormalizationSigns {
    pub fn eps(&self) -> &[Complex64] {
        &self.eps
    }

    /// Exact exponents (in units of i*pi) behind each sign.
    pub fn exponents(&self) -> &[BigRational] {
        &self.exponents
    }

    /// Largest deviation of `prod_b eps_b^{C_{a,b}}` from -1 over all rows.
    pub fn max_product_deviation(&self, cartan: &CartanData) -> f64 {
        let r = cartan.rank();
        let minus_one = Complex64::new(-1.0, 0.0);
        let mut worst: f64 = 0.0;
        for a in 1..=r {
            let mut prod = Complex64::new(1.0, 0.0);
            for b in 1..=r {
                let e = cartan.entry(a, b).unwrap();
                if e != 0 {
                    prod *= self.eps[b - 1].powi(e as i32);
                }
            }
            worst = worst.max((prod - minus_one).norm());
        }
        worst
    }
}

pub fn epsilon(cartan: &CartanData) -> NormalizationSigns {
    let exponents = cartan.inverse_row_sums();
    let eps = exponents
        .iter()
        .map(|mu| {
            let angle = std::f64::consts::PI * mu.to_f64().unwrap();
            Complex64::from_polar(1.0, angle)
        })
        .collect();
    NormalizationSigns { eps, exponents }
}

/// Outcome of the numeric eps-twist verification.
#[derive(Clone, Debug)]
pub struct NormalizationReport {
    pub dynkin: DynkinType,
    pub k_max: usize,
    pub trials: usize,
    pub max_deviation: f64,
    pub tolerance: f64,
}

/// Numeric check of the renormalization identity: at random complex points
/// `t`, iterating the plus-sign system from the twisted seed
/// `(eps_a, eps_a t_a)` reproduces `eps_a Q_{a,k}(t)` for the exact
/// unnormalized table, within `tolerance`.
pub fn verify_normalization(
    dynkin: DynkinType,
    k_max: usize,
    trials: usize,
    seed: u64,
    tolerance: f64,
) -> Result<NormalizationReport> {
    if k_max < 2 {
        return Err(Error::InvalidArgument("k_max must be >= 2".into()));
    }
    let cartan = CartanData::new(dynkin);
    let rank = dynkin.rank();
    let table = q_solve(dynkin, k_max, false)?;
    let signs = epsilon(&cartan);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_dev: f64 = 0.0;

    let neighbors: Vec<Vec<usize>> = (1..=rank)
        .map(|a| cartan.neighbors(a).unwrap())
        .collect();

    for _ in 0..trials {
        // sample a well-conditioned point: denominators in the numeric
        // recursion must stay away from zero
        let mut attempts = 0;
        let (point, twisted) = loop {
            attempts += 1;
            if attempts > 1000 {
                return Err(Error::ToleranceExceeded(f64::INFINITY));
            }
            let point: Vec<Complex64> = (0..rank)
                .map(|_| {
                    let rho = rng.random_range(0.6..0.95);
                    let theta = rng.random_range(0.0..std::f64::consts::TAU);
                    Complex64::from_polar(rho, theta)
                })
                .collect();
            // plus-sign recursion from the twisted seed
            let mut values: Vec<Vec<Complex64>> = (0..rank)
                .map(|a| vec![signs.eps()[a], signs.eps()[a] * point[a]])
                .collect();
            let mut ok = true;
            'levels: for k in 1..k_max {
                for a in 0..rank {
                    let denom = values[a][k - 1];
                    if denom.norm() < 0.05 {
                        ok = false;
                        break 'levels;
                    }
                    let mut prod = Complex64::new(1.0, 0.0);
                    for &b in &neighbors[a] {
                        prod *= values[b - 1][k];
                    }
                    let next = (values[a][k] * values[a][k] + prod) / denom;
                    if !next.is_finite() || next.norm() > 1e8 {
                        ok = false;
                        break 'levels;
                    }
                    values[a].push(next);
                }
            }
            if ok {
                break (point, values);
            }
        };
        for a in 1..=rank {
            for k in 0..=k_max {
                let exact = table.entry(a, k)?.eval_complex(&point)?;
                let dev = (twisted[a - 1][k] - signs.eps()[a - 1] * exact).norm();
                if dev > max_dev {
                    max_dev = dev;
                }
            }
        }
    }
    let report = NormalizationReport {
        dynkin,
        k_max,
        trials,
        max_deviation: max_dev,
        tolerance,
    };
    if max_dev < tolerance {
        Ok(report)
    } else {
        Err(Error::ToleranceExceeded(max_dev))
    }
}

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// Dimension of the irreducible sl_n module with rectangular highest weight
/// `k * omega_alpha`, by the hook-content product over the alpha x k
/// rectangle. Exact.
pub fn weyl_dim_rectangular(n: usize, alpha: usize, k: usize) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 1..=alpha {
        for j in 1..=k {
            num *= BigInt::from(n as i64 + j as i64 - i as i64);
            den *= BigInt::from((alpha - i) as i64 + (k - j) as i64 + 1);
        }
    }
    let (q, r) = (&num / &den, &num % &den);
    debug_assert!(r.is_zero(), "hook-content product is always integral");
    q
}

/// Dimension of the irreducible sl_n module with Dynkin labels `l`, via the
/// Weyl dimension product over positive roots. Exact.
pub fn weyl_dim_type_a(labels: &[i64]) -> BigInt {
    let n = labels.len() + 1;
    // partition coordinates lambda_i = sum_{j >= i} l_j, lambda_n = 0
    let mut parts = vec![0i64; n];
    for i in (0..labels.len()).rev() {
        parts[i] = parts[i + 1] + labels[i];
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..n {
        for j in i + 1..n {
            num *= BigInt::from(parts[i] - parts[j] + (j as i64 - i as i64));
            den *= BigInt::from(j as i64 - i as i64);
        }
    }
    let (q, r) = (&num / &den, &num % &den);
    debug_assert!(r.is_zero());
    q
}

/// One verified value in a dimension report.
#[derive(Clone, Debug)]
pub struct DimensionCheck {
    pub alpha: usize,
    pub k: usize,
    pub value: BigInt,
}

#[derive(Clone, Debug)]
pub struct DimensionReport {
    pub dynkin: DynkinType,
    pub checks: Vec<DimensionCheck>,
}

/// Evaluate `Q_{alpha,k}` at `t_beta = C(n, beta)` (the fundamental
/// dimensions of sl_n) and compare with the hook-content oracle for the
/// rectangular weight `k * omega_alpha`. Family A only.
pub fn dimension_check(dynkin: DynkinType, k_max: usize) -> Result<DimensionReport> {
    if dynkin.family() != Family::A {
        return Err(Error::InvalidArgument(
            "dimension_check applies to family A only".into(),
        ));
    }
    let rank = dynkin.rank();
    let n = rank + 1;
    let table = q_solve(dynkin, k_max, false)?;
    let vars = table.vars().clone();
    let assignment: Vec<(String, LaurentPoly)> = (1..=rank)
        .map(|beta| {
            let value = binomial(n as u64, beta as u64);
            (
                vars.name(beta - 1).to_string(),
                LaurentPoly::constant(vars.clone(), value),
            )
        })
        .collect();
    let assignment_refs: Vec<(&str, LaurentPoly)> = assignment
        .iter()
        .map(|(name, poly)| (name.as_str(), poly.clone()))
        .collect();
    let mut checks = Vec::new();
    for alpha in 1..=rank {
        for k in 0..=k_max {
            let specialized = table.entry(alpha, k)?.specialize(&assignment_refs)?;
            let value = specialized.as_constant().ok_or_else(|| {
                Error::DimensionMismatch(format!(
                    "Q_{{{alpha},{k}}} did not specialize to a constant"
                ))
            })?;
            let expected = weyl_dim_rectangular(n, alpha, k);
            if value != expected {
                return Err(Error::DimensionMismatch(format!(
                    "Q_{{{alpha},{k}}}({dynkin}) = {value}, oracle gives {expected}"
                )));
            }
            checks.push(DimensionCheck { alpha, k, value });
        }
    }
    Ok(DimensionReport { dynkin, checks })
}

//! Sparse multivariate Laurent polynomials over arbitrary-precision integers.
//!
//! This is the universal value type of the engine: cluster variables and
//! Q-system characters are all `LaurentPoly` values in a fixed [`VarSet`].
//! Every operation is exact; division either succeeds with a bit-exact
//! quotient or fails with [`Error::NonExactDivision`].

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

mod parse;

/// An ordered set of variable names. The order is fixed for the lifetime of
/// any polynomial built over it and determines the monomial order.
#[derive(Clone, Debug)]
pub struct VarSet {
    names: Arc<Vec<String>>,
}

impl VarSet {
    /// Build a variable set from distinct names, keeping the given order.
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, a) in names.iter().enumerate() {
            if a.is_empty() || !a.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(Error::InvalidVarSet(format!("bad variable name `{a}`")));
            }
            if names[..i].contains(a) {
                return Err(Error::InvalidVarSet(format!("duplicate variable `{a}`")));
            }
        }
        Ok(VarSet {
            names: Arc::new(names),
        })
    }

    /// `prefix1 .. prefixN`, e.g. `t1..t4`.
    pub fn indexed(prefix: &str, count: usize) -> Self {
        VarSet::new((1..=count).map(|i| format!("{prefix}{i}"))).expect("generated names are valid")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    fn joined(&self) -> String {
        self.names.join(",")
    }
}

impl PartialEq for VarSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }
}

impl Eq for VarSet {}

/// Exponent vector of a single Laurent monomial; entries may be negative.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<i64>,
}

impl Monomial {
    pub fn new(exps: Vec<i64>) -> Self {
        Monomial { exps }
    }

    /// The monomial 1 (all exponents zero).
    pub fn unit(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars],
        }
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exps
    }

    pub fn total_degree(&self) -> i64 {
        self.exps.iter().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    fn combined(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    fn shifted(&self, delta: &[i64]) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(delta).map(|(a, b)| a + b).collect(),
        }
    }
}

/// Graded lexicographic order: total degree first, then the exponent vector.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A sparse Laurent polynomial in canonical form: no zero coefficients are
/// ever stored, and the term map is ordered, so equal polynomials have
/// identical representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    vars: VarSet,
    terms: BTreeMap<Monomial, BigInt>,
}

impl LaurentPoly {
    pub fn zero(vars: VarSet) -> Self {
        LaurentPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: VarSet, value: impl Into<BigInt>) -> Self {
        let value = value.into();
        let mut terms = BTreeMap::new();
        if !value.is_zero() {
            terms.insert(Monomial::unit(vars.len()), value);
        }
        LaurentPoly { vars, terms }
    }

    pub fn one(vars: VarSet) -> Self {
        LaurentPoly::constant(vars, 1)
    }

    /// The polynomial consisting of the named variable to the first power.
    pub fn var(vars: &VarSet, name: &str) -> Result<Self> {
        let idx = vars
            .index_of(name)
            .ok_or_else(|| Error::InvalidVarSet(format!("unknown variable `{name}`")))?;
        let mut exps = vec![0; vars.len()];
        exps[idx] = 1;
        Ok(LaurentPoly::term(vars.clone(), exps, 1))
    }

    /// A single term `coeff * x^exps`.
    pub fn term(vars: VarSet, exps: Vec<i64>, coeff: impl Into<BigInt>) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length");
        let coeff = coeff.into();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(Monomial::new(exps), coeff);
        }
        LaurentPoly { vars, terms }
    }

    /// Build from raw (exponents, coefficient) pairs, canonicalizing.
    pub fn from_terms<I>(vars: VarSet, iter: I) -> Self
    where
        I: IntoIterator<Item = (Vec<i64>, BigInt)>,
    {
        let n = vars.len();
        let mut terms: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (exps, coeff) in iter {
            assert_eq!(exps.len(), n, "exponent vector length");
            if coeff.is_zero() {
                continue;
            }
            let m = Monomial::new(exps);
            match terms.entry(m) {
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    *e.get_mut() += coeff;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(coeff);
                }
            }
        }
        LaurentPoly { vars, terms }
    }

    pub fn parse(vars: &VarSet, input: &str) -> Result<Self> {
        parse::parse(vars, input)
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(m, c)| m.is_constant() && c == &BigInt::from(1))
                .unwrap_or(false)
    }

    /// True iff no stored monomial has a negative exponent.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|m| m.exps.iter().all(|&e| e >= 0))
    }

    /// If the polynomial is a constant, return its value.
    pub fn as_constant(&self) -> Option<BigInt> {
        if self.terms.is_empty() {
            return Some(BigInt::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_constant() {
                return Some(c.clone());
            }
        }
        None
    }

    fn check_same_vars(&self, other: &Self) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::VarSetMismatch(
                self.vars.joined(),
                other.vars.joined(),
            ))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_vars(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            match terms.entry(m.clone()) {
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    *e.get_mut() += c;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c.clone());
                }
            }
        }
        Ok(LaurentPoly {
            vars: self.vars.clone(),
            terms,
        })
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        if factor.is_zero() {
            return LaurentPoly::zero(self.vars.clone());
        }
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * factor))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_vars(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(LaurentPoly::zero(self.vars.clone()));
        }
        // Accumulate in a hash map, then canonicalize; the map order is
        // never observable.
        let mut acc: HashMap<Monomial, BigInt> =
            HashMap::with_capacity(self.terms.len().max(other.terms.len()) * 2);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.combined(mb);
                let p = ca * cb;
                match acc.entry(m) {
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += p;
                    }
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(p);
                    }
                }
            }
        }
        let terms: BTreeMap<Monomial, BigInt> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(LaurentPoly {
            vars: self.vars.clone(),
            terms,
        })
    }

    pub fn pow(&self, exp: u64) -> Result<Self> {
        let mut result = LaurentPoly::one(self.vars.clone());
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Leading term under the graded lexicographic order.
    fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Componentwise minimum of all exponent vectors; `None` for zero.
    fn min_exponents(&self) -> Option<Vec<i64>> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let mut min = first.exps.clone();
        for m in it {
            for (slot, e) in min.iter_mut().zip(&m.exps) {
                if e < slot {
                    *slot = *e;
                }
            }
        }
        Some(min)
    }

    /// Multiply by the monomial `x^delta`.
    fn shift(&self, delta: &[i64]) -> Self {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.shifted(delta), c.clone()))
                .collect(),
        }
    }

    /// Exact Laurent division: returns `q` with `q * den == num` bit-exactly.
    ///
    /// Both operands are split into a monomial times an honest polynomial
    /// whose per-variable minimum exponent is zero; the honest parts go
    /// through single-divisor polynomial division under the graded
    /// lexicographic order, which must leave remainder zero.
    pub fn exact_div(&self, den: &Self) -> Result<Self> {
        self.check_same_vars(den)?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero(self.vars.clone()));
        }
        let num_shift = self.min_exponents().expect("nonzero");
        let den_shift = den.min_exponents().expect("nonzero");
        let num = self.shift(&num_shift.iter().map(|e| -e).collect::<Vec<_>>());
        let den_poly = den.shift(&den_shift.iter().map(|e| -e).collect::<Vec<_>>());

        let (lm_den, lc_den) = den_poly.leading().expect("nonzero divisor");
        let lm_den = lm_den.clone();
        let lc_den = lc_den.clone();

        let mut remainder = num.terms;
        let mut quotient: BTreeMap<Monomial, BigInt> = BTreeMap::new();

        while let Some((lm_r, lc_r)) = remainder.iter().next_back() {
            let mut exps = Vec::with_capacity(lm_r.exps.len());
            for (a, b) in lm_r.exps.iter().zip(&lm_den.exps) {
                let d = a - b;
                if d < 0 {
                    return Err(Error::NonExactDivision(format!(
                        "monomial {} not divisible in {} / {}",
                        display_monomial(&self.vars, lm_r),
                        self,
                        den
                    )));
                }
                exps.push(d);
            }
            let (q, r) = (lc_r / &lc_den, lc_r % &lc_den);
            if !r.is_zero() {
                return Err(Error::NonExactDivision(format!(
                    "coefficient {} not divisible by {} in {} / {}",
                    lc_r, lc_den, self, den
                )));
            }
            let t_mono = Monomial::new(exps);
            // remainder -= (q * x^t_mono) * den_poly
            for (m_d, c_d) in &den_poly.terms {
                let key = t_mono.combined(m_d);
                let delta = &q * c_d;
                match remainder.entry(key) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= delta;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-delta);
                    }
                }
            }
            quotient.insert(t_mono, q);
        }

        let final_shift: Vec<i64> = num_shift
            .iter()
            .zip(&den_shift)
            .map(|(a, b)| a - b)
            .collect();
        Ok(LaurentPoly {
            vars: self.vars.clone(),
            terms: quotient,
        }
        .shift(&final_shift))
    }

    /// Exact substitution of some variables by polynomial (or constant)
    /// values over the same variable set; unassigned variables persist.
    ///
    /// Negative powers of assigned variables are handled by clearing a
    /// common denominator and finishing with one exact division, so the
    /// result is exact whenever it is a Laurent polynomial at all.
    pub fn specialize(&self, assignment: &[(&str, LaurentPoly)]) -> Result<Self> {
        let mut assigned: BTreeMap<usize, &LaurentPoly> = BTreeMap::new();
        for (name, value) in assignment {
            let idx = self
                .vars
                .index_of(name)
                .ok_or_else(|| Error::InvalidVarSet(format!("unknown variable `{name}`")))?;
            self.check_same_vars(value)?;
            if assigned.insert(idx, value).is_some() {
                return Err(Error::InvalidVarSet(format!(
                    "variable `{name}` assigned twice"
                )));
            }
        }
        // No assigned variable may occur in any substituted value.
        for value in assigned.values() {
            for m in value.terms.keys() {
                for &idx in assigned.keys() {
                    if m.exps[idx] != 0 {
                        return Err(Error::CyclicSubstitution(self.vars.name(idx).to_string()));
                    }
                }
            }
        }
        if assigned.is_empty() || self.is_zero() {
            return Ok(self.clone());
        }
        // Common denominator exponent per assigned variable.
        let mut depth: BTreeMap<usize, i64> = assigned.keys().map(|&i| (i, 0)).collect();
        for m in self.terms.keys() {
            for (&idx, d) in depth.iter_mut() {
                let neg = -m.exps[idx];
                if neg > *d {
                    *d = neg;
                }
            }
        }
        let mut denominator = LaurentPoly::one(self.vars.clone());
        for (&idx, &d) in &depth {
            if d > 0 {
                denominator = denominator.mul(&assigned[&idx].pow(d as u64)?)?;
            }
        }
        let mut total = LaurentPoly::zero(self.vars.clone());
        for (m, c) in &self.terms {
            let mut exps = m.exps.clone();
            for &idx in assigned.keys() {
                exps[idx] = 0;
            }
            let mut part = LaurentPoly::term(self.vars.clone(), exps, c.clone());
            for (&idx, value) in &assigned {
                let e = m.exps[idx] + depth[&idx];
                debug_assert!(e >= 0);
                if e > 0 {
                    part = part.mul(&value.pow(e as u64)?)?;
                }
            }
            total = total.add(&part)?;
        }
        total.exact_div(&denominator)
    }

    /// Floating-point evaluation at a complex point; exact code paths never
    /// depend on this.
    pub fn eval_complex(&self, point: &[Complex64]) -> Result<Complex64> {
        if point.len() != self.vars.len() {
            return Err(Error::InvalidArgument(format!(
                "evaluation point has {} entries for {} variables",
                point.len(),
                self.vars.len()
            )));
        }
        for (i, z) in point.iter().enumerate() {
            if z.re == 0.0 && z.im == 0.0 && self.terms.keys().any(|m| m.exps[i] < 0) {
                return Err(Error::PoleAtZero(self.vars.name(i).to_string()));
            }
        }
        let mut total = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut v = Complex64::new(c.to_f64().unwrap_or(f64::INFINITY), 0.0);
            for (z, &e) in point.iter().zip(&m.exps) {
                if e != 0 {
                    v *= z.powi(e as i32);
                }
            }
            total += v;
        }
        Ok(total)
    }

    /// JSON form: list of `{"exponents": [..], "coeff": "decimal"}` in
    /// descending monomial order.
    pub fn to_json_terms(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .rev()
                .map(|(m, c)| {
                    serde_json::json!({
                        "exponents": m.exps.clone(),
                        "coeff": c.to_string(),
                    })
                })
                .collect(),
        )
    }
}

fn display_monomial(vars: &VarSet, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exps.iter().enumerate() {
        if e == 1 {
            parts.push(vars.name(i).to_string());
        } else if e != 0 {
            parts.push(format!("{}^{}", vars.name(i), e));
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

impl fmt::Display for LaurentPoly {
    /// Canonical text form: terms in descending graded-lex order, e.g.
    /// `t1^3 - 2*t1*t2 + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono = display_monomial(&self.vars, m);
            if mono == "1" {
                write!(f, "{abs}")?;
            } else if abs == BigInt::from(1) {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> VarSet {
        VarSet::new(["t"]).unwrap()
    }

    fn t2() -> VarSet {
        VarSet::indexed("t", 2)
    }

    fn p(vars: &VarSet, s: &str) -> LaurentPoly {
        LaurentPoly::parse(vars, s).unwrap()
    }

    #[test]
    fn add_cancels_to_zero() {
        let v = t();
        let sum = p(&v, "t").add(&p(&v, "-t")).unwrap();
        assert!(sum.is_zero());
        assert_eq!(sum.term_count(), 0);
    }

    #[test]
    fn add_cancels_constant() {
        let v = t();
        let sum = p(&v, "t^2 - 1").add(&p(&v, "1")).unwrap();
        assert_eq!(sum, p(&v, "t^2"));
    }

    #[test]
    fn add_sparse_maps() {
        let v = t2();
        let sum = p(&v, "t1^3 - 2*t1*t2").add(&p(&v, "1")).unwrap();
        assert_eq!(sum, p(&v, "t1^3 - 2*t1*t2 + 1"));
    }

    #[test]
    fn mul_monomial_inverse() {
        let v = t();
        let one = p(&v, "t").mul(&p(&v, "t^-1")).unwrap();
        assert!(one.is_one());
    }

    #[test]
    fn mul_hand_expansion() {
        let v = t();
        let prod = p(&v, "t^2 - 1").mul(&p(&v, "t^4 - 3*t^2 + 1")).unwrap();
        assert_eq!(prod, p(&v, "t^6 - 4*t^4 + 4*t^2 - 1"));
    }

    #[test]
    fn mul_difference_of_squares() {
        let v = t2();
        let prod = p(&v, "t1 - t2").mul(&p(&v, "t1 + t2")).unwrap();
        assert_eq!(prod, p(&v, "t1^2 - t2^2"));
    }

    #[test]
    fn exact_div_a1_step() {
        let v = t();
        let q = p(&v, "t^6 - 4*t^4 + 4*t^2 - 1")
            .exact_div(&p(&v, "t^2 - 1"))
            .unwrap();
        assert_eq!(q, p(&v, "t^4 - 3*t^2 + 1"));
        // multiply back
        let back = q.mul(&p(&v, "t^2 - 1")).unwrap();
        assert_eq!(back, p(&v, "t^6 - 4*t^4 + 4*t^2 - 1"));
    }

    #[test]
    fn exact_div_a2_step() {
        let v = t2();
        let q = p(&v, "t1^4 - 2*t1^2*t2 + t1").exact_div(&p(&v, "t1")).unwrap();
        assert_eq!(q, p(&v, "t1^3 - 2*t1*t2 + 1"));
        let back = q.mul(&p(&v, "t1")).unwrap();
        assert_eq!(back, p(&v, "t1^4 - 2*t1^2*t2 + t1"));
    }

    #[test]
    fn exact_div_nonzero_remainder() {
        let v = t();
        let err = p(&v, "t^2 - 1").exact_div(&p(&v, "t - 2"));
        assert!(matches!(err, Err(Error::NonExactDivision(_))));
    }

    #[test]
    fn exact_div_by_zero() {
        let v = t();
        let err = p(&v, "t").exact_div(&LaurentPoly::zero(v.clone()));
        assert!(matches!(err, Err(Error::DivisionByZero)));
    }

    #[test]
    fn exact_div_laurent_quotient() {
        let v = t();
        // 2 / t = 2*t^-1, exact in the Laurent ring
        let q = p(&v, "2").exact_div(&p(&v, "t")).unwrap();
        assert_eq!(q, p(&v, "2*t^-1"));
    }

    #[test]
    fn specialize_drops_variable() {
        let v = VarSet::new(["u", "t"]).unwrap();
        let q = p(&v, "u*t^2 - u")
            .specialize(&[("u", LaurentPoly::one(v.clone()))])
            .unwrap();
        assert_eq!(q, p(&v, "t^2 - 1"));
    }

    #[test]
    fn specialize_a1_dimension() {
        let v = t();
        let q = p(&v, "t^4 - 3*t^2 + 1")
            .specialize(&[("t", LaurentPoly::constant(v.clone(), 2))])
            .unwrap();
        assert_eq!(q.as_constant(), Some(BigInt::from(5)));
    }

    #[test]
    fn specialize_a2_dimension() {
        let v = t2();
        let q = p(&v, "t1^3 - 2*t1*t2 + 1")
            .specialize(&[
                ("t1", LaurentPoly::constant(v.clone(), 3)),
                ("t2", LaurentPoly::constant(v.clone(), 3)),
            ])
            .unwrap();
        assert_eq!(q.as_constant(), Some(BigInt::from(10)));
    }

    #[test]
    fn specialize_negative_power_clears_denominator() {
        // (u + v) * s^-1 with u -> 1, v -> 1, s -> 2 is exactly 1 even
        // though each term alone is not integral.
        let v = VarSet::new(["u", "v", "s"]).unwrap();
        let poly = p(&v, "u*s^-1 + v*s^-1");
        let one = LaurentPoly::one(v.clone());
        let two = LaurentPoly::constant(v.clone(), 2);
        let q = poly
            .specialize(&[("u", one.clone()), ("v", one), ("s", two)])
            .unwrap();
        assert!(q.is_one());
    }

    #[test]
    fn specialize_cyclic_rejected() {
        let v = t2();
        let err = p(&v, "t1").specialize(&[("t1", p(&v, "t1 + 1"))]);
        assert!(matches!(err, Err(Error::CyclicSubstitution(_))));
        // a value may not mention any substituted variable, even another one
        let err = p(&v, "t1*t2").specialize(&[("t1", p(&v, "t2")), ("t2", p(&v, "1"))]);
        assert!(matches!(err, Err(Error::CyclicSubstitution(_))));
        // renaming into an untouched variable is fine
        let ok = p(&v, "t1*t2").specialize(&[("t1", p(&v, "t2"))]).unwrap();
        assert_eq!(ok, p(&v, "t2^2"));
    }

    #[test]
    fn eval_complex_points() {
        let v = t();
        let i = Complex64::new(0.0, 1.0);
        let val = p(&v, "t^2 - 1").eval_complex(&[i]).unwrap();
        assert!((val - Complex64::new(-2.0, 0.0)).norm() < 1e-12);
        let val = p(&v, "t").eval_complex(&[Complex64::new(1.0, 0.0)]).unwrap();
        assert!((val - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        let val = p(&v, "t^-1").eval_complex(&[Complex64::new(2.0, 0.0)]).unwrap();
        assert!((val - Complex64::new(0.5, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn eval_pole_at_zero() {
        let v = t();
        let err = p(&v, "t^-1 + 1").eval_complex(&[Complex64::new(0.0, 0.0)]);
        assert!(matches!(err, Err(Error::PoleAtZero(_))));
    }

    #[test]
    fn is_polynomial_cases() {
        let v = t();
        assert!(p(&v, "t^2 - 1").is_polynomial());
        assert!(!p(&v, "t^-1 + 1").is_polynomial());
        assert!(LaurentPoly::zero(v).is_polynomial());
    }

    #[test]
    fn varset_mismatch_is_error() {
        let a = p(&t(), "t");
        let b = p(&t2(), "t1");
        assert!(matches!(a.add(&b), Err(Error::VarSetMismatch(..))));
        assert!(matches!(a.mul(&b), Err(Error::VarSetMismatch(..))));
    }

    #[test]
    fn display_canonical_order() {
        let v = t2();
        let s = p(&v, "1 - 2*t1*t2 + t1^3").to_string();
        assert_eq!(s, "t1^3 - 2*t1*t2 + 1");
        assert_eq!(p(&v, "0").to_string(), "0");
        assert_eq!(p(&v, "-t1 + t2").to_string(), "-t1 + t2");
    }

    #[test]
    fn duplicate_variable_rejected() {
        assert!(VarSet::new(["t", "t"]).is_err());
    }
}

//! Shared fixtures for the criterion benchmarks.

use qbelt::algebra::LaurentPoly;
use qbelt::qsystem::q_solve;
use qbelt::DynkinType;

/// A pair of mid-size polynomials whose product/quotient exercise the
/// sparse arithmetic: consecutive high-level A3 Q-system entries.
pub fn mul_fixture() -> (LaurentPoly, LaurentPoly) {
    let table = q_solve(DynkinType::parse("A3").unwrap(), 9, false).unwrap();
    (
        table.entry(2, 9).unwrap().clone(),
        table.entry(2, 8).unwrap().clone(),
    )
}

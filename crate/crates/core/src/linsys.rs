//! Affine linear systems over the rational-function field and their exact
//! Gaussian elimination.
//!
//! Equations are expressions required to vanish identically. Vanishing of
//! a fraction is vanishing of its numerator, so each equation is reduced
//! to its numerator polynomial before the affine structure is extracted.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::symbol::Symbol;
use crate::symexpr::SymExpr;

#[derive(Clone, Debug)]
pub struct LinearSystem {
    pub unknowns: Vec<Symbol>,
    pub equations: Vec<SymExpr>,
}

impl LinearSystem {
    pub fn new(unknowns: Vec<Symbol>, equations: Vec<SymExpr>) -> LinearSystem {
        LinearSystem {
            unknowns,
            equations,
        }
    }

    /// Substitutes an assignment into every equation and returns the
    /// residuals.
    pub fn residuals(&self, assignment: &[(Symbol, SymExpr)]) -> Result<Vec<SymExpr>> {
        self.equations
            .iter()
            .map(|eq| eq.substitute_all(assignment))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Solution {
    /// Every unknown determined.
    Unique(Vec<(Symbol, SymExpr)>),
    /// Pivot unknowns expressed in terms of the listed free unknowns.
    Parametrized {
        assignments: Vec<(Symbol, SymExpr)>,
        free: Vec<Symbol>,
    },
    /// A provably nonzero expression the system forces to vanish.
    Inconsistent { witness: SymExpr },
}

impl Solution {
    pub fn assignments(&self) -> Option<&[(Symbol, SymExpr)]> {
        match self {
            Solution::Unique(a) => Some(a),
            Solution::Parametrized { assignments, .. } => Some(assignments),
            Solution::Inconsistent { .. } => None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AffineRow {
    /// Coefficient per unknown, in system order.
    pub coeffs: Vec<SymExpr>,
    /// Constant term: the equation is sum(coeffs * unknowns) + constant = 0.
    pub constant: SymExpr,
}

/// Splits an equation into coefficients and constant, rejecting anything
/// of joint degree > 1 in the unknowns.
pub fn affine_decompose(eq: &SymExpr, unknowns: &[Symbol]) -> Result<AffineRow> {
    for u in unknowns {
        if eq.denominator().contains_symbol(*u) {
            return Err(Error::NonAffine(format!(
                "unknown {} in a denominator",
                u.name()
            )));
        }
    }
    let den = SymExpr::new(crate::poly::Poly::one(), eq.denominator().clone())
        .expect("nonzero denominator");
    let mut coeffs = vec![SymExpr::from_int(0); unknowns.len()];
    let mut constant = SymExpr::from_int(0);
    for (m, c) in eq.numerator().terms() {
        let degs: Vec<u32> = unknowns.iter().map(|u| m.exp(*u)).collect();
        let total: u32 = degs.iter().sum();
        if total > 1 {
            return Err(Error::NonAffine(format!(
                "term of degree {} in unknowns",
                total
            )));
        }
        let term = SymExpr::from_poly(crate::poly::Poly::term(m.clone(), c.clone())).mul(&den);
        match degs.iter().position(|&d| d == 1) {
            Some(i) => {
                let stripped = term.div(&SymExpr::var(unknowns[i]));
                coeffs[i] = coeffs[i].add(&stripped);
            }
            None => constant = constant.add(&term),
        }
    }
    Ok(AffineRow { coeffs, constant })
}

/// Gaussian elimination over the rational-function field.
///
/// Pivots are chosen in the order the unknowns are listed, so the caller
/// controls which unknowns end up expressed in terms of which.
pub fn solve_affine(sys: &LinearSystem) -> Result<Solution> {
    let n = sys.unknowns.len();
    let mut rows: Vec<AffineRow> = sys
        .equations
        .iter()
        .map(|eq| affine_decompose(eq, &sys.unknowns))
        .collect::<Result<_>>()?;

    let mut pivot_of_col: Vec<Option<usize>> = vec![None; n];
    let mut next_row = 0;
    #[allow(clippy::needless_range_loop)]
    for col in 0..n {
        let Some(p) = (next_row..rows.len()).find(|&r| !rows[r].coeffs[col].is_zero()) else {
            continue;
        };
        rows.swap(next_row, p);
        let inv = rows[next_row].coeffs[col].inv().expect("nonzero pivot");
        for c in 0..n {
            rows[next_row].coeffs[c] = rows[next_row].coeffs[c].mul(&inv);
        }
        rows[next_row].constant = rows[next_row].constant.mul(&inv);
        for r in 0..rows.len() {
            if r == next_row || rows[r].coeffs[col].is_zero() {
                continue;
            }
            let f = rows[r].coeffs[col].clone();
            for c in 0..n {
                let v = rows[r].coeffs[c].sub(&f.mul(&rows[next_row].coeffs[c]));
                rows[r].coeffs[c] = v;
            }
            rows[r].constant = rows[r].constant.sub(&f.mul(&rows[next_row].constant));
        }
        pivot_of_col[col] = Some(next_row);
        next_row += 1;
        if next_row == rows.len() {
            break;
        }
    }

    // Any fully reduced row with a nonzero constant is a proof of
    // inconsistency.
    #[allow(clippy::needless_range_loop)]
    for r in next_row..rows.len() {
        if rows[r].coeffs.iter().all(|c| c.is_zero()) && !rows[r].constant.is_zero() {
            return Ok(Solution::Inconsistent {
                witness: rows[r].constant.clone(),
            });
        }
    }

    let free: Vec<Symbol> = (0..n)
        .filter(|&c| pivot_of_col[c].is_none())
        .map(|c| sys.unknowns[c])
        .collect();
    let mut assignments = Vec::new();
    #[allow(clippy::needless_range_loop)]
    for col in 0..n {
        let Some(row) = pivot_of_col[col] else {
            continue;
        };
        // x_col = -constant - sum over free columns of coeff * x_free
        let mut expr = rows[row].constant.neg();
        for c in 0..n {
            if c == col || rows[row].coeffs[c].is_zero() {
                continue;
            }
            expr = expr.sub(&rows[row].coeffs[c].mul(&SymExpr::var(sys.unknowns[c])));
        }
        assignments.push((sys.unknowns[col], expr));
    }
    if free.is_empty() {
        Ok(Solution::Unique(assignments))
    } else {
        Ok(Solution::Parametrized { assignments, free })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(name: &str) -> Symbol {
        Symbol::new(name)
    }

    #[test]
    fn two_by_two_unique() {
        // x + y = 3, x - y = 1  =>  x = 2, y = 1
        let (x, y) = (sym("x"), sym("y"));
        let e1 = SymExpr::var(x)
            .add(&SymExpr::var(y))
            .sub(&SymExpr::from_int(3));
        let e2 = SymExpr::var(x)
            .sub(&SymExpr::var(y))
            .sub(&SymExpr::from_int(1));
        let sys = LinearSystem::new(vec![x, y], vec![e1, e2]);
        let sol = solve_affine(&sys).unwrap();
        assert_eq!(
            sol,
            Solution::Unique(vec![(x, SymExpr::from_int(2)), (y, SymExpr::from_int(1))])
        );
        let resid = sys.residuals(sol.assignments().unwrap()).unwrap();
        assert!(resid.iter().all(|r| r.is_zero()));
    }

    #[test]
    fn underdetermined_has_free_parameter() {
        // 2a + b = -3 ap / a4 with unknowns {a_, b_}: one free parameter
        let (p, q) = (sym("p_unk"), sym("q_unk"));
        let rhs = SymExpr::sym("ap")
            .mul(&SymExpr::from_int(-3))
            .div(&SymExpr::sym("a").pow(4).unwrap());
        let eq = SymExpr::var(p)
            .mul(&SymExpr::from_int(2))
            .add(&SymExpr::var(q))
            .sub(&rhs);
        let sys = LinearSystem::new(vec![p, q], vec![eq]);
        match solve_affine(&sys).unwrap() {
            Solution::Parametrized { free, assignments } => {
                assert_eq!(free, vec![q]);
                assert_eq!(assignments.len(), 1);
                let resid = sys.residuals(&assignments).unwrap();
                assert!(resid.iter().all(|r| r.is_zero()));
            }
            other => panic!("expected parametrized solution, got {:?}", other),
        }
    }

    #[test]
    fn inconsistent_reports_witness() {
        let x = sym("x");
        let e1 = SymExpr::var(x).sub(&SymExpr::from_int(1));
        let e2 = SymExpr::var(x).sub(&SymExpr::from_int(2));
        let sys = LinearSystem::new(vec![x], vec![e1, e2]);
        match solve_affine(&sys).unwrap() {
            Solution::Inconsistent { witness } => assert!(!witness.is_zero()),
            other => panic!("expected inconsistency, got {:?}", other),
        }
    }

    #[test]
    fn non_affine_rejected() {
        let x = sym("x");
        let eq = SymExpr::var(x)
            .mul(&SymExpr::var(x))
            .sub(&SymExpr::from_int(1));
        let sys = LinearSystem::new(vec![x], vec![eq]);
        assert!(matches!(solve_affine(&sys), Err(Error::NonAffine(_))));
    }
}

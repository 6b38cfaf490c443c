//! Isotypic decomposition of End(Sym^m) under the adjoint sl(2) action.
//!
//! End(Sym^m) splits into summands indexed by i = 0..m of dimension
//! 2i + 1. Each summand is generated by its highest-weight vector (the
//! unique weight-2i vector killed by the raising operator) under repeated
//! lowering. Projectors are obtained from the change of basis to the full
//! ladder basis, solved exactly over the rationals.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::{int, Rational, Ring};
use crate::symexpr::SymExpr;

use super::sym_power_lie;

/// One irreducible summand: the ladder basis from highest weight down.
/// Position t has weight 2i - 2t.
#[derive(Clone, Debug)]
pub struct IsotypicSummand {
    pub i: usize,
    pub ladder: Vec<Matrix<Rational>>,
}

impl IsotypicSummand {
    pub fn dimension(&self) -> usize {
        2 * self.i + 1
    }
}

/// The full decomposition for a fixed m, with the solved change of basis.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub m: usize,
    pub summands: Vec<IsotypicSummand>,
    /// Columns are the flattened ladder matrices, ordered (i, t).
    basis: Matrix<Rational>,
    basis_inv: Matrix<Rational>,
}

fn raise() -> Matrix<Rational> {
    Matrix::from_rows(vec![vec![int(0), int(1)], vec![int(0), int(0)]])
}

fn lower() -> Matrix<Rational> {
    Matrix::from_rows(vec![vec![int(0), int(0)], vec![int(1), int(0)]])
}

fn cartan() -> Matrix<Rational> {
    Matrix::from_rows(vec![vec![int(1), int(0)], vec![int(0), int(-1)]])
}

/// The sl(2) triple acting on End(Sym^m) by commutator. Returns closures
/// for (E, F, H).
#[allow(clippy::type_complexity)]
pub fn sl2_action_on_end(
    m: usize,
) -> (
    impl Fn(&Matrix<Rational>) -> Matrix<Rational>,
    impl Fn(&Matrix<Rational>) -> Matrix<Rational>,
    impl Fn(&Matrix<Rational>) -> Matrix<Rational>,
) {
    let em = sym_power_lie(&raise(), m);
    let fm = sym_power_lie(&lower(), m);
    let hm = sym_power_lie(&cartan(), m);
    (
        move |x: &Matrix<Rational>| em.mul(x).sub(&x.mul(&em)),
        move |x: &Matrix<Rational>| fm.mul(x).sub(&x.mul(&fm)),
        move |x: &Matrix<Rational>| hm.mul(x).sub(&x.mul(&hm)),
    )
}

fn unit_matrix(n: usize, r: usize, c: usize) -> Matrix<Rational> {
    let mut m = Matrix::zero(n, n);
    m.set(r, c, int(1));
    m
}

/// Normalizes so the first nonzero entry in row-major order is 1.
fn normalize_leading(x: &Matrix<Rational>) -> Matrix<Rational> {
    let lead = x
        .entries()
        .iter()
        .find(|v| !Ring::is_zero(*v))
        .expect("nonzero matrix");
    x.scale(&lead.recip())
}

pub fn isotypic_decompose(m: usize) -> Decomposition {
    let n = m + 1;
    let dim = n * n;
    let (e_op, f_op, _) = sl2_action_on_end(m);

    let mut summands = Vec::new();
    for i in 0..=m {
        // weight-2i subspace of End: span of E_{r, r+i}
        let span: Vec<Matrix<Rational>> = (0..n - i).map(|r| unit_matrix(n, r, r + i)).collect();
        // kernel of E within that subspace
        let cols = span.len();
        let images: Vec<Matrix<Rational>> = span.iter().map(&e_op).collect();
        let a = Matrix::from_fn(dim, cols, |row, col| images[col].entries()[row].clone());
        let null = a.nullspace();
        assert_eq!(
            null.len(),
            1,
            "highest-weight space at weight {} must be one-dimensional",
            2 * i
        );
        let mut hw = Matrix::zero(n, n);
        for (r, c) in null[0].iter().enumerate() {
            hw = hw.add(&span[r].scale(c));
        }
        let hw = normalize_leading(&hw);

        let mut ladder = vec![hw];
        for t in 0..2 * i {
            let next = f_op(&ladder[t]);
            assert!(
                !next.is_zero(),
                "ladder must not collapse before the bottom"
            );
            ladder.push(next);
        }
        assert!(
            f_op(&ladder[2 * i]).is_zero(),
            "lowering past the bottom of the ladder must vanish"
        );
        summands.push(IsotypicSummand { i, ladder });
    }

    let total: usize = summands.iter().map(|s| s.dimension()).sum();
    assert_eq!(total, dim, "summand dimensions must fill End(Sym^m)");

    let mut columns = Vec::with_capacity(dim);
    for s in &summands {
        for x in &s.ladder {
            columns.push(x.entries().to_vec());
        }
    }
    let basis = Matrix::from_fn(dim, dim, |r, c| columns[c][r].clone());
    let basis_inv = basis.inverse().expect("ladder basis spans End(Sym^m)");

    Decomposition {
        m,
        summands,
        basis,
        basis_inv,
    }
}

impl Decomposition {
    fn offset(&self, i: usize) -> usize {
        self.summands[..i].iter().map(|s| s.dimension()).sum()
    }

    /// Ladder coordinates of `x` in summand `i`, for `x` over any field
    /// extension given by embedding the rational change of basis.
    pub fn project(&self, x: &Matrix<SymExpr>, i: usize) -> Vec<SymExpr> {
        assert!(i <= self.m);
        let n = self.m + 1;
        assert_eq!(
            (x.rows(), x.cols()),
            (n, n),
            "element of End(Sym^m) expected"
        );
        let off = self.offset(i);
        (0..2 * i + 1)
            .map(|t| {
                let row = off + t;
                let mut acc = SymExpr::from_int(0);
                for (col, entry) in x.entries().iter().enumerate() {
                    let c = self.basis_inv.get(row, col);
                    if Ring::is_zero(c) {
                        continue;
                    }
                    acc = acc.add(&SymExpr::from_rational(c.clone()).mul(entry));
                }
                acc
            })
            .collect()
    }

    pub fn project_rational(&self, x: &Matrix<Rational>, i: usize) -> Vec<Rational> {
        self.project(&x.map(|v| SymExpr::from_rational(v.clone())), i)
            .into_iter()
            .map(|e| e.to_rational().expect("rational input, rational output"))
            .collect()
    }

    /// The component of `x` lying in summand `i`, reassembled from its
    /// ladder coordinates.
    pub fn component(&self, x: &Matrix<Rational>, i: usize) -> Matrix<Rational> {
        let coords = self.project_rational(x, i);
        let mut acc = Matrix::zero(self.m + 1, self.m + 1);
        for (t, c) in coords.iter().enumerate() {
            acc = acc.add(&self.summands[i].ladder[t].scale(c));
        }
        acc
    }

    pub fn projectors(&self) -> ProjectorFamily {
        let dim = (self.m + 1) * (self.m + 1);
        let mut maps = Vec::new();
        for i in 0..=self.m {
            let off = self.offset(i);
            let d = 2 * i + 1;
            let selector = Matrix::from_fn(dim, dim, |r, c| {
                if r == c && r >= off && r < off + d {
                    int(1)
                } else {
                    int(0)
                }
            });
            maps.push(self.basis.mul(&selector).mul(&self.basis_inv));
        }
        ProjectorFamily { m: self.m, maps }
    }
}

/// The m+1 commuting idempotents cutting End(Sym^m) into its summands,
/// as dim x dim matrices acting on flattened endomorphisms.
#[derive(Clone, Debug)]
pub struct ProjectorFamily {
    pub m: usize,
    pub maps: Vec<Matrix<Rational>>,
}

impl ProjectorFamily {
    pub fn verify_identities(&self) -> Result<()> {
        let dim = (self.m + 1) * (self.m + 1);
        let mut sum: Matrix<Rational> = Matrix::zero(dim, dim);
        for (i, p) in self.maps.iter().enumerate() {
            if &p.mul(p) != p {
                return Err(Error::Derivation(format!("P_{} not idempotent", i)));
            }
            for (j, q) in self.maps.iter().enumerate() {
                if i != j && !p.mul(q).is_zero() {
                    return Err(Error::Derivation(format!("P_{} P_{} nonzero", i, j)));
                }
            }
            sum = sum.add(p);
        }
        if sum != Matrix::identity(dim) {
            return Err(Error::Derivation(
                "projectors do not sum to identity".into(),
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_relations() {
        for m in 1..=3 {
            let (e_op, f_op, h_op) = sl2_action_on_end(m);
            let n = m + 1;
            for r in 0..n {
                for c in 0..n {
                    let x = unit_matrix(n, r, c);
                    // [H, E] = 2E
                    let lhs = h_op(&e_op(&x)).sub(&e_op(&h_op(&x)));
                    assert_eq!(lhs, e_op(&x).scale(&int(2)));
                    // [E, F] = H
                    let lhs = e_op(&f_op(&x)).sub(&f_op(&e_op(&x)));
                    assert_eq!(lhs, h_op(&x));
                }
            }
        }
    }

    #[test]
    fn weight_zero_space_dimension() {
        // weight-0 eigenspace of H on End(Sym^3) is the diagonal, dim 4
        let (_, _, h_op) = sl2_action_on_end(3);
        let mut count = 0;
        for r in 0..4 {
            for c in 0..4 {
                let x = unit_matrix(4, r, c);
                if h_op(&x).is_zero() {
                    count += 1;
                    assert_eq!(r, c);
                }
            }
        }
        assert_eq!(count, 4);
    }

    #[test]
    fn adjoint_weights_of_sym1() {
        let (_, _, h_op) = sl2_action_on_end(1);
        let mut weights = Vec::new();
        for r in 0..2 {
            for c in 0..2 {
                let x = unit_matrix(2, r, c);
                let hx = h_op(&x);
                // eigenvector: hx = w * x
                let w = if hx.is_zero() {
                    int(0)
                } else {
                    let idx = x.entries().iter().position(|v| !Ring::is_zero(v)).unwrap();
                    hx.entries()[idx].clone()
                };
                weights.push(w);
            }
        }
        weights.sort();
        assert_eq!(weights, vec![int(-2), int(0), int(0), int(2)]);
    }

    #[test]
    fn summand_dimensions_sym3() {
        let d = isotypic_decompose(3);
        let dims: Vec<usize> = d.summands.iter().map(|s| s.dimension()).collect();
        assert_eq!(dims, vec![1, 3, 5, 7]);
    }

    #[test]
    fn identity_lies_in_bottom_summand() {
        let d = isotypic_decompose(3);
        let id = Matrix::identity(4);
        for i in 1..=3 {
            assert!(d.project_rational(&id, i).iter().all(Ring::is_zero));
        }
        assert!(!d.project_rational(&id, 0)[0].is_zero());
    }

    #[test]
    fn top_weight_zero_vector_alternating_binomials() {
        // weight-0 ladder vector of summand 3 in End(Sym^3) is diagonal
        // with entries proportional to (1, -3, 3, -1)
        let d = isotypic_decompose(3);
        let w0 = &d.summands[3].ladder[3];
        let diag: Vec<Rational> = (0..4).map(|j| w0.get(j, j).clone()).collect();
        assert!(!Ring::is_zero(&diag[0]));
        let scale = diag[0].clone();
        let pattern: Vec<Rational> = diag.iter().map(|v| v / &scale).collect();
        assert_eq!(pattern, vec![int(1), int(-3), int(3), int(-1)]);
        // and off-diagonal entries vanish
        for r in 0..4 {
            for c in 0..4 {
                if r != c {
                    assert!(Ring::is_zero(w0.get(r, c)));
                }
            }
        }
    }

    #[test]
    fn diagonal_projection_pattern() {
        // diag(d1..d4) weight-0 coordinate in summand 3 proportional to
        // d1 - 3 d2 + 3 d3 - d4
        let d = isotypic_decompose(3);
        let x = Matrix::from_rows(vec![
            vec![int(2), int(0), int(0), int(0)],
            vec![int(0), int(3), int(0), int(0)],
            vec![int(0), int(0), int(5), int(0)],
            vec![int(0), int(0), int(0), int(7)],
        ]);
        let coords = d.project_rational(&x, 3);
        // positions 0..2 have positive weight, 4..6 negative: all zero here
        for t in [0, 1, 2, 4, 5, 6] {
            assert!(Ring::is_zero(&coords[t]), "position {} should vanish", t);
        }
        // 2 - 9 + 15 - 7 = 1; compare against a reference diagonal
        let y = Matrix::from_rows(vec![
            vec![int(1), int(0), int(0), int(0)],
            vec![int(0), int(0), int(0), int(0)],
            vec![int(0), int(0), int(0), int(0)],
            vec![int(0), int(0), int(0), int(0)],
        ]);
        let ref_coords = d.project_rational(&y, 3);
        assert_eq!(coords[3], ref_coords[3].clone() * int(1));
    }

    #[test]
    fn strictly_upper_triangular_has_no_negative_weight() {
        let d = isotypic_decompose(3);
        let mut x = Matrix::zero(4, 4);
        x.set(0, 1, int(1));
        x.set(1, 3, int(5));
        x.set(0, 2, int(-2));
        let xs = x.map(|v| SymExpr::from_rational(v.clone()));
        for i in 0..=3 {
            let coords = d.project(&xs, i);
            #[allow(clippy::needless_range_loop)]
            for t in 0..coords.len() {
                let weight = 2 * (i as i64) - 2 * (t as i64);
                if weight < 0 {
                    assert!(coords[t].is_zero());
                }
            }
        }
    }

    #[test]
    fn projector_identities_small() {
        for m in 0..=3 {
            isotypic_decompose(m)
                .projectors()
                .verify_identities()
                .unwrap();
        }
    }
}

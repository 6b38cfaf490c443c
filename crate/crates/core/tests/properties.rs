//! Randomized property suites. Everything is exact, so each property is
//! a structural identity on canonical forms, not a numeric comparison.

use proptest::prelude::*;

use linv_core::gl2::{sym_power_lie, sym_power_matrix};
use linv_core::linsys::{solve_affine, LinearSystem, Solution};
use linv_core::{int, rat, Jet, Matrix, Rational, Ring, SymExpr, Symbol};

fn rational() -> impl Strategy<Value = Rational> {
    (-5i64..=5, 1i64..=3).prop_map(|(n, d)| rat(n, d))
}

/// Sparse polynomial in two throwaway symbols, as an expression.
fn poly_expr() -> impl Strategy<Value = SymExpr> {
    proptest::collection::vec((0u32..3, 0u32..2, rational()), 0..4).prop_map(|terms| {
        let x = SymExpr::sym("px");
        let y = SymExpr::sym("py");
        let mut acc = SymExpr::from_int(0);
        for (ex, ey, c) in terms {
            let t = SymExpr::from_rational(c)
                .mul(&x.pow(ex as i64).unwrap())
                .mul(&y.pow(ey as i64).unwrap());
            acc = acc.add(&t);
        }
        acc
    })
}

/// Nonzero variant, for denominators and divisors.
fn nonzero_expr() -> impl Strategy<Value = SymExpr> {
    poly_expr().prop_filter("nonzero", |e| !e.is_zero())
}

fn matrix2() -> impl Strategy<Value = Matrix<Rational>> {
    [rational(), rational(), rational(), rational()]
        .prop_map(|[a, b, c, d]| Matrix::from_rows(vec![vec![a, b], vec![c, d]]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in poly_expr(), b in poly_expr(), c in poly_expr(), d in nonzero_expr()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.sub(&a), SymExpr::from_int(0));
        // division is exact inversion of multiplication
        prop_assert_eq!(a.div(&d).mul(&d), a.clone());
        prop_assert_eq!(d.mul(&d.inv().unwrap()), SymExpr::from_int(1));
    }

    #[test]
    fn jet_ring_laws(
        av in poly_expr(), a1 in poly_expr(), a2 in poly_expr(),
        bv in poly_expr(), b1 in poly_expr(), b2 in poly_expr(),
        cv in poly_expr(), c1 in poly_expr(), c2 in poly_expr(),
    ) {
        let a = Jet::new(av, a1, a2);
        let b = Jet::new(bv, b1, b2);
        let c = Jet::new(cv, c1, c2);
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.mul(&c)), a.mul(&b).mul(&c));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        // Leibniz rule in both directions
        let p = a.mul(&b);
        prop_assert_eq!(p.d1, a.val.mul(&b.d1).add(&b.val.mul(&a.d1)));
        prop_assert_eq!(p.d2, a.val.mul(&b.d2).add(&b.val.mul(&a.d2)));
    }

    #[test]
    fn jet_inverse(v in nonzero_expr(), d1 in poly_expr(), d2 in poly_expr()) {
        let j = Jet::new(v, d1, d2);
        let ji = j.inv().unwrap();
        prop_assert_eq!(j.mul(&ji), Jet::constant(SymExpr::from_int(1)));
    }

    #[test]
    fn affine_solutions_have_zero_residuals(
        rows in proptest::collection::vec(
            (proptest::collection::vec(rational(), 3), rational()),
            1..4,
        ),
    ) {
        let unknowns: Vec<Symbol> =
            ["q1_unk", "q2_unk", "q3_unk"].iter().map(|s| Symbol::new(s)).collect();
        let equations: Vec<SymExpr> = rows
            .iter()
            .map(|(coeffs, konst)| {
                let mut acc = SymExpr::from_rational(konst.clone());
                for (c, u) in coeffs.iter().zip(&unknowns) {
                    acc = acc.add(&SymExpr::from_rational(c.clone()).mul(&SymExpr::var(*u)));
                }
                acc
            })
            .collect();
        let sys = LinearSystem::new(unknowns, equations);
        match solve_affine(&sys).unwrap() {
            Solution::Unique(assignments) | Solution::Parametrized { assignments, .. } => {
                let residuals = sys.residuals(&assignments).unwrap();
                prop_assert!(residuals.iter().all(|r| r.is_zero()));
            }
            Solution::Inconsistent { witness } => prop_assert!(!witness.is_zero()),
        }
    }

    #[test]
    fn sym_power_functorial(g in matrix2(), h in matrix2(), m in 1usize..=4) {
        let lhs = sym_power_matrix(&g.mul(&h), m);
        let rhs = sym_power_matrix(&g, m).mul(&sym_power_matrix(&h, m));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn sym_power_matches_kronecker_oracle(g in matrix2(), m in 1usize..=4) {
        let s = sym_power_matrix(&g, m);
        let k = kron_power(&g, m);
        // apply the tensor power to the symmetrized word vector v_j and
        // compare at every word with i ones (the image is symmetric, so
        // all such positions must agree with the claimed entry)
        for j in 0..=m {
            let mut v = vec![int(0); 1 << m];
            for (w, slot) in v.iter_mut().enumerate() {
                if (w as u32).count_ones() as usize == j {
                    *slot = int(1);
                }
            }
            let image = apply(&k, &v);
            for (w, value) in image.iter().enumerate() {
                let i = (w as u32).count_ones() as usize;
                prop_assert_eq!(value, s.get(i, j));
            }
        }
    }

    #[test]
    fn lie_action_is_first_order_term(x in matrix2(), m in 1usize..=4) {
        // Sym^m(1 + t x) = 1 + t sym_power_lie(x) + O(t^2)
        let t = SymExpr::sym("t_eps");
        let g = Matrix::from_fn(2, 2, |i, j| {
            let base = if i == j { SymExpr::from_int(1) } else { SymExpr::from_int(0) };
            base.add(&t.mul(&SymExpr::from_rational(x.get(i, j).clone())))
        });
        let s = sym_power_matrix(&g, m);
        let lie = sym_power_lie(&x, m);
        for i in 0..=m {
            for j in 0..=m {
                let coeffs = s.get(i, j).coefficients_in(Symbol::new("t_eps")).unwrap();
                let linear = coeffs.get(1).cloned().unwrap_or_else(|| SymExpr::from_int(0));
                prop_assert_eq!(linear, SymExpr::from_rational(lie.get(i, j).clone()));
            }
        }
    }
}

/// m-fold Kronecker power, bit p of the index addressing tensor factor p.
fn kron_power(g: &Matrix<Rational>, m: usize) -> Matrix<Rational> {
    let mut k: Matrix<Rational> = Matrix::identity(1);
    for _ in 0..m {
        let (rows, cols) = (k.rows() * 2, k.cols() * 2);
        let prev = k.clone();
        k = Matrix::from_fn(rows, cols, |r, c| {
            prev.get(r >> 1, c >> 1).mul(g.get(r & 1, c & 1))
        });
    }
    k
}

fn apply(k: &Matrix<Rational>, v: &[Rational]) -> Vec<Rational> {
    (0..k.rows())
        .map(|r| {
            let mut acc = int(0);
            for (c, value) in v.iter().enumerate() {
                acc = acc.add(&k.get(r, c).mul(value));
            }
            acc
        })
        .collect()
}

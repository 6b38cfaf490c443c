//! The two-parameter upper-triangular family deforming the symmetric cube
//! of the local representation, and the infinitesimal cocycle it cuts out.
//!
//! The family is 4x4 upper triangular with diagonal characters
//! (theta1 theta2 mu1, theta2 mu2, theta1 mu2^-1, mu1^-1) and opaque
//! upper entries xi_{rs}. Writing the family as rho(1 + eps c) to first
//! order, c is the cocycle: c(P) = rho(P)^-1 . (d rho)(P), taken in the
//! direction (1-Delta, Delta). Its diagonal is the vector of directional
//! logarithmic derivatives of the diagonal characters; the strictly upper
//! block carries the xi data; the lower block vanishes identically.
//!
//! Coordinates of the class cut out by c are read off at the two
//! distinguished evaluation points: first = -(1/log u) x (coordinate at
//! rec(u)), second = coordinate at Frob_p; the ratio second/first is the
//! slope that the solver turns into L-invariant formulas.

use serde::Serialize;

use crate::characters::{EvalPoint, FamilyPreset, PadicCharacter};
use crate::error::{Error, Result};
use crate::gl2::Decomposition;
use crate::jet::Jet;
use crate::matrix::Matrix;
use crate::ring::int;
use crate::symexpr::SymExpr;

/// Evaluation points of the cocycle. `Generic` is an abstract group
/// element with fully opaque diagonal, used only to witness structural
/// facts (triangularity) that hold at every point.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CocyclePoint {
    Frobenius,
    RecUnit,
    Generic,
}

/// The 4x4 family: diagonal characters plus opaque upper-triangular jets.
#[derive(Clone, Debug)]
pub struct FamilyLocalRep {
    pub diagonal: Vec<PadicCharacter>,
}

/// Expected cyclotomic base exponents (constant part, multiple of k-2)
/// and Frobenius values of the diagonal, top to bottom.
const DIAG_CYC: [(i64, i64); 4] = [(3, 3), (2, 2), (1, 1), (0, 0)];
const DIAG_ALPHA_POW: [i64; 4] = [-3, -1, 1, 3];

impl FamilyLocalRep {
    /// Assembles the four diagonal characters from a preset and checks
    /// that they specialize to the symmetric-cube diagonal
    /// (chi^{3(k-1)} d^-3, chi^{2(k-1)} d^-1, chi^{k-1} d, d^3).
    pub fn build_family(preset: &FamilyPreset) -> Result<FamilyLocalRep> {
        let diagonal = vec![
            preset.theta1.mul(&preset.theta2).mul(&preset.mu1),
            preset.theta2.mul(&preset.mu2),
            preset.theta1.mul(&preset.mu2.inv()?),
            preset.mu1.inv()?,
        ];
        let a = SymExpr::sym("a");
        for (i, ch) in diagonal.iter().enumerate() {
            let (c0, ck) = ch.cyc.at_base();
            if (&c0, &ck) != (&int(DIAG_CYC[i].0), &int(DIAG_CYC[i].1)) {
                return Err(Error::PresetMismatch(format!(
                    "diagonal entry {} has cyclotomic base exponent ({}, {}), \
                     expected ({}, {})",
                    i, c0, ck, DIAG_CYC[i].0, DIAG_CYC[i].1
                )));
            }
            let expected = a.pow(DIAG_ALPHA_POW[i])?;
            if ch.frob_value != expected {
                return Err(Error::PresetMismatch(format!(
                    "diagonal entry {} has Frobenius value {}, expected {}",
                    i, ch.frob_value, expected
                )));
            }
        }
        Ok(FamilyLocalRep { diagonal })
    }

    /// The family at an evaluation point, to first order in both
    /// directions. Upper entries are the opaque xi jets; the generic
    /// point also gets an opaque diagonal.
    pub fn jet_matrix(&self, at: CocyclePoint) -> Result<Matrix<Jet>> {
        let mut m = Matrix::zero(4, 4);
        for (i, ch) in self.diagonal.iter().enumerate() {
            let jet = match at {
                CocyclePoint::Frobenius => ch.evaluate(EvalPoint::Frobenius)?,
                CocyclePoint::RecUnit => ch.evaluate(EvalPoint::RecUnit)?,
                CocyclePoint::Generic => Jet::new(
                    SymExpr::sym(&format!("g{}", i + 1)),
                    SymExpr::sym(&format!("g{}_1", i + 1)),
                    SymExpr::sym(&format!("g{}_2", i + 1)),
                ),
            };
            m.set(i, i, jet);
        }
        for r in 0..4 {
            for c in r + 1..4 {
                let base = format!("xi{}{}", r + 1, c + 1);
                m.set(
                    r,
                    c,
                    Jet::new(
                        SymExpr::sym(&base),
                        SymExpr::sym(&format!("{}_1", base)),
                        SymExpr::sym(&format!("{}_2", base)),
                    ),
                );
            }
        }
        Ok(m)
    }

    /// The cocycle value rho^-1 . (d rho) at a point, in the direction
    /// (1-Delta, Delta).
    pub fn extract_cocycle(&self, at: CocyclePoint, delta: &SymExpr) -> Result<Matrix<SymExpr>> {
        let jets = self.jet_matrix(at)?;
        let value = jets.map(|j| j.val.clone());
        let deriv = jets.map(|j| j.directional(delta));
        Ok(value.inverse()?.mul(&deriv))
    }

    /// Coordinate pairs of the cocycle class projected to summand `i`,
    /// one per ladder position (weight 2i - 2t at position t).
    pub fn summand_coordinates(
        &self,
        decomp: &Decomposition,
        i: usize,
        delta: &SymExpr,
    ) -> Result<Vec<CoordinatePair>> {
        assert_eq!(decomp.m, 3, "family acts on End(Sym^3)");
        let log_u = SymExpr::sym("L_u");
        let at_rec = decomp.project(&self.extract_cocycle(CocyclePoint::RecUnit, delta)?, i);
        let at_frob = decomp.project(&self.extract_cocycle(CocyclePoint::Frobenius, delta)?, i);
        Ok(at_rec
            .into_iter()
            .zip(at_frob)
            .map(|(rec, frob)| CoordinatePair {
                first: rec.neg().div(&log_u),
                second: frob,
            })
            .collect())
    }
}

/// Canonical coordinates of a class in one ladder position: the
/// ramified-direction coordinate and the Frobenius coordinate.
#[derive(Clone, Debug, Serialize)]
pub struct CoordinatePair {
    pub first: SymExpr,
    pub second: SymExpr,
}

impl CoordinatePair {
    /// second/first: invariant under simultaneous rescaling, hence
    /// independent of the ladder normalization.
    pub fn slope(&self) -> Result<SymExpr> {
        if self.first.is_zero() {
            return Err(Error::ExceptionalDirection);
        }
        Ok(self.second.div(&self.first))
    }

    pub fn scale(&self, lambda: &SymExpr) -> CoordinatePair {
        CoordinatePair {
            first: self.first.mul(lambda),
            second: self.second.mul(lambda),
        }
    }

    /// The constant lambda with first = lambda * reference, when it
    /// exists: reports how this ladder's scale relates to a reference
    /// normalization of the same coordinate.
    pub fn normalization_against(&self, reference: &SymExpr) -> Result<SymExpr> {
        let lambda = self.first.checked_div(reference)?;
        if lambda.to_rational().is_none() {
            return Err(Error::Derivation(format!(
                "coordinate {} is not a constant multiple of {}",
                self.first, reference
            )));
        }
        Ok(lambda)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::chain_rule_constraints;
    use crate::gl2::isotypic_decompose;
    use crate::linsys::{solve_affine, Solution};
    use crate::symbol::Symbol;

    fn family() -> FamilyLocalRep {
        FamilyLocalRep::build_family(&FamilyPreset::default()).unwrap()
    }

    fn delta() -> SymExpr {
        SymExpr::sym("D")
    }

    #[test]
    fn bad_preset_rejected() {
        // swapping the two unramified characters breaks the diagonal
        let mut p = FamilyPreset::default();
        std::mem::swap(&mut p.mu1, &mut p.mu2);
        assert!(matches!(
            FamilyLocalRep::build_family(&p),
            Err(Error::PresetMismatch(_))
        ));
    }

    #[test]
    fn cocycle_diagonal_at_frobenius() {
        // (m1, m2, -m2, -m1) with m1 = a^3((1-D)a11 + D a12),
        // m2 = a((1-D)a21 + D a22)
        let c = family()
            .extract_cocycle(CocyclePoint::Frobenius, &delta())
            .unwrap();
        let d = delta();
        let mix = |x: &str, y: &str| {
            SymExpr::from_int(1)
                .sub(&d)
                .mul(&SymExpr::sym(x))
                .add(&d.mul(&SymExpr::sym(y)))
        };
        let m1 = SymExpr::sym("a").pow(3).unwrap().mul(&mix("a11", "a12"));
        let m2 = SymExpr::sym("a").mul(&mix("a21", "a22"));
        assert_eq!(c.get(0, 0), &m1);
        assert_eq!(c.get(1, 1), &m2);
        assert_eq!(c.get(2, 2), &m2.neg());
        assert_eq!(c.get(3, 3), &m1.neg());
    }

    #[test]
    fn cocycle_diagonal_at_unit() {
        // directional log-derivatives of the diagonal characters at
        // rec(u): (-L_u, -(1-D) L_u, -D L_u, 0)
        let c = family()
            .extract_cocycle(CocyclePoint::RecUnit, &delta())
            .unwrap();
        let log_u = SymExpr::sym("L_u");
        let d = delta();
        assert_eq!(c.get(0, 0), &log_u.neg());
        assert_eq!(c.get(1, 1), &SymExpr::from_int(1).sub(&d).mul(&log_u).neg());
        assert_eq!(c.get(2, 2), &d.mul(&log_u).neg());
        assert!(c.get(3, 3).is_zero());
    }

    #[test]
    fn cocycle_triangular_everywhere() {
        let f = family();
        for at in [
            CocyclePoint::Frobenius,
            CocyclePoint::RecUnit,
            CocyclePoint::Generic,
        ] {
            assert!(f
                .extract_cocycle(at, &delta())
                .unwrap()
                .is_upper_triangular());
        }
    }

    #[test]
    fn zero_derivatives_zero_cocycle() {
        // kill all derivative symbols: the cocycle must vanish entirely
        let c = family()
            .extract_cocycle(CocyclePoint::Frobenius, &delta())
            .unwrap();
        let zero = SymExpr::from_int(0);
        let mut kill: Vec<(Symbol, SymExpr)> = ["a11", "a12", "a21", "a22"]
            .iter()
            .map(|s| (Symbol::new(s), zero.clone()))
            .collect();
        for r in 1..=4 {
            for s in r + 1..=4 {
                for dir in 1..=2 {
                    kill.push((Symbol::new(&format!("xi{}{}_{}", r, s, dir)), zero.clone()));
                }
            }
        }
        for r in 0..4 {
            for s in 0..4 {
                assert!(c.get(r, s).substitute_all(&kill).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn negative_weight_coordinates_vanish() {
        let f = family();
        let dec = isotypic_decompose(3);
        for at in [CocyclePoint::Frobenius, CocyclePoint::RecUnit] {
            let c = f.extract_cocycle(at, &delta()).unwrap();
            for i in 0..=3 {
                let coords = dec.project(&c, i);
                for (t, v) in coords.iter().enumerate() {
                    if 2 * (i as i64) - 2 * (t as i64) < 0 {
                        assert!(v.is_zero(), "summand {} position {}", i, t);
                    }
                }
            }
        }
    }

    #[test]
    fn weight_zero_coordinates_are_u_free() {
        // the first coordinate of every non-positive-weight position
        // must not mention u, u_k, or L_u once simplified
        let f = family();
        let dec = isotypic_decompose(3);
        let banned = [Symbol::new("u"), Symbol::new("u_k"), Symbol::new("L_u")];
        for i in 0..=3 {
            let pairs = f.summand_coordinates(&dec, i, &delta()).unwrap();
            for (t, pair) in pairs.iter().enumerate() {
                if 2 * (i as i64) - 2 * (t as i64) > 0 {
                    continue;
                }
                for b in banned {
                    assert!(
                        !pair.first.contains_symbol(b),
                        "summand {} position {} first coordinate mentions {}",
                        i,
                        t,
                        b.name()
                    );
                }
            }
        }
    }

    #[test]
    fn summand3_weight_zero_pair() {
        // first ~ 1 - 3D, second ~ (1-D)(-a^3 a11 + 3 a a21)
        //                         + D(-a^3 a12 + 3 a a22), same scalar
        let f = family();
        let dec = isotypic_decompose(3);
        let d = delta();
        let pair = &f.summand_coordinates(&dec, 3, &d).unwrap()[3];
        let ref_first = SymExpr::from_int(1).sub(&d.mul(&SymExpr::from_int(3)));
        let lambda = pair.normalization_against(&ref_first).unwrap();
        assert!(!lambda.is_zero());
        let a = SymExpr::sym("a");
        let slot = |x: &str, y: &str| {
            a.pow(3)
                .unwrap()
                .neg()
                .mul(&SymExpr::sym(x))
                .add(&a.mul(&SymExpr::sym(y)).mul(&SymExpr::from_int(3)))
        };
        let ref_second = SymExpr::from_int(1)
            .sub(&d)
            .mul(&slot("a11", "a21"))
            .add(&d.mul(&slot("a12", "a22")));
        assert_eq!(pair.second, lambda.mul(&ref_second));
    }

    #[test]
    fn summand1_weight_zero_pair() {
        // first ~ D - 2, second ~ (1-D)(-3 a^3 a11 - a a21)
        //                        + D(-3 a^3 a12 - a a22), same scalar
        let f = family();
        let dec = isotypic_decompose(3);
        let d = delta();
        let pair = &f.summand_coordinates(&dec, 1, &d).unwrap()[1];
        let ref_first = d.sub(&SymExpr::from_int(2));
        let lambda = pair.normalization_against(&ref_first).unwrap();
        assert!(!lambda.is_zero());
        let a = SymExpr::sym("a");
        let slot = |x: &str, y: &str| {
            a.pow(3)
                .unwrap()
                .mul(&SymExpr::sym(x))
                .mul(&SymExpr::from_int(-3))
                .sub(&a.mul(&SymExpr::sym(y)))
        };
        let ref_second = SymExpr::from_int(1)
            .sub(&d)
            .mul(&slot("a11", "a21"))
            .add(&d.mul(&slot("a12", "a22")));
        assert_eq!(pair.second, lambda.mul(&ref_second));
    }

    #[test]
    fn exceptional_direction_errors() {
        let f = family();
        let dec = isotypic_decompose(3);
        let third = SymExpr::from_frac(1, 3);
        let pair = &f.summand_coordinates(&dec, 3, &third).unwrap()[3];
        assert!(pair.first.is_zero());
        assert_eq!(pair.slope(), Err(Error::ExceptionalDirection));
        let two = SymExpr::from_int(2);
        let pair = &f.summand_coordinates(&dec, 1, &two).unwrap()[1];
        assert!(pair.first.is_zero());
        assert_eq!(pair.slope(), Err(Error::ExceptionalDirection));
    }

    #[test]
    fn slope_invariant_under_rescaling() {
        let f = family();
        let dec = isotypic_decompose(3);
        let pair = &f.summand_coordinates(&dec, 3, &delta()).unwrap()[3];
        let lambda = SymExpr::sym("a").add(&SymExpr::from_int(5));
        assert_eq!(pair.slope().unwrap(), pair.scale(&lambda).slope().unwrap());
    }

    #[test]
    fn diagonal_direction_collapses_to_one_parameter_family() {
        // With the chain-rule relations solved for a12, a22, the direction
        // D = 1/3 is the restriction to the one-parameter sub-family: the
        // cocycle diagonal at Frobenius becomes 1/3 of the symmetric-cube
        // diagonal of the one-variable log-derivatives (l1, l2) =
        // (-ap/a, ap/a).
        let sys = chain_rule_constraints();
        let sub = match solve_affine(&LinearSystemReorder::for_uppers(&sys)).unwrap() {
            Solution::Parametrized { assignments, .. } => assignments,
            other => panic!("unexpected solution shape {:?}", other),
        };
        let f = family();
        let third = SymExpr::from_frac(1, 3);
        let c = f.extract_cocycle(CocyclePoint::Frobenius, &third).unwrap();
        let l1 = SymExpr::sym("ap").div(&SymExpr::sym("a")).neg();
        let l2 = l1.neg();
        let expected = [
            l1.mul(&SymExpr::from_int(3)),
            l1.mul(&SymExpr::from_int(2)).add(&l2),
            l1.add(&l2.mul(&SymExpr::from_int(2))),
            l2.mul(&SymExpr::from_int(3)),
        ];
        for (i, e) in expected.iter().enumerate() {
            let got = c.get(i, i).substitute_all(&sub).unwrap();
            assert_eq!(got, e.div(&SymExpr::from_int(3)), "diagonal entry {}", i);
        }
    }

    /// Helper reordering the chain-rule unknowns so elimination solves
    /// for a12 and a22 in terms of a11, a21.
    struct LinearSystemReorder;
    impl LinearSystemReorder {
        fn for_uppers(sys: &crate::linsys::LinearSystem) -> crate::linsys::LinearSystem {
            crate::linsys::LinearSystem::new(
                vec![
                    Symbol::new("a12"),
                    Symbol::new("a22"),
                    Symbol::new("a11"),
                    Symbol::new("a21"),
                ],
                sys.equations.clone(),
            )
        }
    }
}

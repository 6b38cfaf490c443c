//! Formal characters of the pro-p abelianized local Galois group and
//! their weight-directional derivatives.
//!
//! A character is a cyclotomic part chi_cyc^(c0 + c1*s1 + c2*s2) times an
//! unramified part known only through its value at Frobenius and its two
//! partial derivatives there. Nothing p-adic analytic is ever stored:
//! only the data the first-order calculus consumes.
//!
//! Conventions, fixed once:
//!   chi_cyc(Frob_p) = 1, chi_cyc(rec(u)) = u^{-1}, log_p(p) = 0.
//! The base point is (s1, s2) = (2(k-2), k-2), so an affine exponent
//! c0 + c1*s1 + c2*s2 specializes to c0 + (2*c1 + c2)*(k-2). The symbol
//! u_k stands for u^(k-2), keeping all values monomial in u and u_k.

use num::Zero;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::linsys::LinearSystem;
use crate::ring::{int, Rational};
use crate::symbol::Symbol;
use crate::symexpr::SymExpr;

/// Affine function c0 + c1*s1 + c2*s2 of the two weight variables.
#[derive(Clone, PartialEq, Debug)]
pub struct AffineExponent {
    pub c0: Rational,
    pub c1: Rational,
    pub c2: Rational,
}

impl AffineExponent {
    pub fn new(c0: Rational, c1: Rational, c2: Rational) -> Self {
        AffineExponent { c0, c1, c2 }
    }

    pub fn zero() -> Self {
        AffineExponent::new(int(0), int(0), int(0))
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero() && self.c2.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        AffineExponent::new(&self.c0 + &o.c0, &self.c1 + &o.c1, &self.c2 + &o.c2)
    }

    pub fn neg(&self) -> Self {
        AffineExponent::new(-&self.c0, -&self.c1, -&self.c2)
    }

    /// Value at the base point (a, b) = (2(k-2), k-2), as the pair
    /// (constant part, coefficient of k-2).
    pub fn at_base(&self) -> (Rational, Rational) {
        (self.c0.clone(), &self.c1 * int(2) + &self.c2)
    }
}

/// Character of the local Galois group: cyclotomic exponent plus formal
/// unramified data at Frobenius.
#[derive(Clone, PartialEq, Debug)]
pub struct PadicCharacter {
    pub cyc: AffineExponent,
    pub frob_value: SymExpr,
    pub partials: (SymExpr, SymExpr),
}

/// Where a character (or cocycle) is evaluated. Only these two points
/// carry canonical coordinates.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum EvalPoint {
    Frobenius,
    RecUnit,
}

fn to_i64(r: &Rational) -> Result<i64> {
    if !r.is_integer() {
        return Err(Error::NonIntegralExponent(r.to_string()));
    }
    r.to_integer()
        .try_into()
        .map_err(|_| Error::NonIntegralExponent(r.to_string()))
}

impl PadicCharacter {
    pub fn one() -> Self {
        PadicCharacter {
            cyc: AffineExponent::zero(),
            frob_value: SymExpr::from_int(1),
            partials: (SymExpr::from_int(0), SymExpr::from_int(0)),
        }
    }

    /// Purely cyclotomic character chi_cyc^(c0 + c1 s1 + c2 s2).
    pub fn cyclotomic(cyc: AffineExponent) -> Self {
        PadicCharacter {
            cyc,
            frob_value: SymExpr::from_int(1),
            partials: (SymExpr::from_int(0), SymExpr::from_int(0)),
        }
    }

    /// Unramified character with given Frobenius value and partials.
    pub fn unramified(frob_value: SymExpr, p1: SymExpr, p2: SymExpr) -> Self {
        PadicCharacter {
            cyc: AffineExponent::zero(),
            frob_value,
            partials: (p1, p2),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        // product rule on the unramified part
        let value = self.frob_value.mul(&other.frob_value);
        let p1 = self
            .frob_value
            .mul(&other.partials.0)
            .add(&other.frob_value.mul(&self.partials.0));
        let p2 = self
            .frob_value
            .mul(&other.partials.1)
            .add(&other.frob_value.mul(&self.partials.1));
        PadicCharacter {
            cyc: self.cyc.add(&other.cyc),
            frob_value: value,
            partials: (p1, p2),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        let vi = self.frob_value.inv()?;
        let vsq_inv = vi.mul(&vi);
        Ok(PadicCharacter {
            cyc: self.cyc.neg(),
            frob_value: vi,
            partials: (
                self.partials.0.neg().mul(&vsq_inv),
                self.partials.1.neg().mul(&vsq_inv),
            ),
        })
    }

    /// Value and both partials at the evaluation point, as a jet.
    ///
    /// At Frob_p the cyclotomic part contributes (1, 0, 0); at rec(u) the
    /// unramified part does, while chi_cyc^c contributes the monomial
    /// u^{-c(a,b)} with directional derivatives -c_i * log_u * value.
    pub fn evaluate(&self, at: EvalPoint) -> Result<Jet> {
        match at {
            EvalPoint::Frobenius => Ok(Jet::new(
                self.frob_value.clone(),
                self.partials.0.clone(),
                self.partials.1.clone(),
            )),
            EvalPoint::RecUnit => {
                let (r, n) = self.cyc.at_base();
                let u = SymExpr::sym("u");
                let uk = SymExpr::sym("u_k");
                let value = u.pow(-to_i64(&r)?)?.mul(&uk.pow(-to_i64(&n)?)?);
                let log_u = SymExpr::sym("L_u");
                let d = |c: &Rational| SymExpr::from_rational(-c.clone()).mul(&log_u).mul(&value);
                Ok(Jet::new(value.clone(), d(&self.cyc.c1), d(&self.cyc.c2)))
            }
        }
    }

    /// ((1-Delta) d1 + Delta d2) / value at the evaluation point.
    pub fn log_derivative(&self, at: EvalPoint, delta: &SymExpr) -> Result<SymExpr> {
        let jet = self.evaluate(at)?;
        if jet.val.is_zero() {
            return Err(Error::ZeroCharacterValue);
        }
        Ok(jet.directional(delta).div(&jet.val))
    }
}

/// The four characters cut out by the two-parameter family, in the shape
/// the deformation engine consumes.
#[derive(Clone, Debug)]
pub struct FamilyPreset {
    pub theta1: PadicCharacter,
    pub theta2: PadicCharacter,
    pub mu1: PadicCharacter,
    pub mu2: PadicCharacter,
}

impl Default for FamilyPreset {
    /// theta1 = chi^(s2+1), theta2 = chi^(s1+2),
    /// mu1 unramified with Frob value a^-3 and partials (a11, a12),
    /// mu2 unramified with Frob value a^-1 and partials (a21, a22).
    fn default() -> Self {
        let a = SymExpr::sym("a");
        FamilyPreset {
            theta1: PadicCharacter::cyclotomic(AffineExponent::new(int(1), int(0), int(1))),
            theta2: PadicCharacter::cyclotomic(AffineExponent::new(int(2), int(1), int(0))),
            mu1: PadicCharacter::unramified(
                a.pow(-3).unwrap(),
                SymExpr::sym("a11"),
                SymExpr::sym("a12"),
            ),
            mu2: PadicCharacter::unramified(
                a.pow(-1).unwrap(),
                SymExpr::sym("a21"),
                SymExpr::sym("a22"),
            ),
        }
    }
}

#[derive(Deserialize)]
struct ThetaCfg {
    /// [c0, c1, c2] as rational strings, e.g. ["1", "0", "1"] for s2 + 1.
    cyc: [String; 3],
}

#[derive(Deserialize)]
struct MuCfg {
    /// Frobenius value is a^frob_alpha_power.
    frob_alpha_power: i64,
    /// The two partial-derivative symbols at Frobenius.
    partials: [String; 2],
}

#[derive(Deserialize)]
struct PresetCfg {
    theta1: ThetaCfg,
    theta2: ThetaCfg,
    mu1: MuCfg,
    mu2: MuCfg,
}

fn parse_rat(s: &str) -> Result<Rational> {
    s.parse()
        .map_err(|_| Error::InvalidPreset(format!("bad rational: {}", s)))
}

impl FamilyPreset {
    /// Loads a preset from the documented TOML format:
    ///
    /// ```toml
    /// [theta1]
    /// cyc = ["1", "0", "1"]        # chi^(1 + 0*s1 + 1*s2)
    /// [theta2]
    /// cyc = ["2", "1", "0"]
    /// [mu1]
    /// frob_alpha_power = -3        # value at Frob_p is a^-3
    /// partials = ["a11", "a12"]
    /// [mu2]
    /// frob_alpha_power = -1
    /// partials = ["a21", "a22"]
    /// ```
    pub fn from_toml_str(s: &str) -> Result<FamilyPreset> {
        let cfg: PresetCfg = toml::from_str(s).map_err(|e| Error::InvalidPreset(e.to_string()))?;
        let theta = |t: &ThetaCfg| -> Result<PadicCharacter> {
            Ok(PadicCharacter::cyclotomic(AffineExponent::new(
                parse_rat(&t.cyc[0])?,
                parse_rat(&t.cyc[1])?,
                parse_rat(&t.cyc[2])?,
            )))
        };
        let mu = |m: &MuCfg| -> Result<PadicCharacter> {
            Ok(PadicCharacter::unramified(
                SymExpr::sym("a").pow(m.frob_alpha_power)?,
                SymExpr::sym(&m.partials[0]),
                SymExpr::sym(&m.partials[1]),
            ))
        };
        Ok(FamilyPreset {
            theta1: theta(&cfg.theta1)?,
            theta2: theta(&cfg.theta2)?,
            mu1: mu(&cfg.mu1)?,
            mu2: mu(&cfg.mu2)?,
        })
    }
}

/// The two constraints tying the four Frobenius partials to the
/// derivative of the one-parameter family: differentiating
/// mu_1(2s, s) = mu^{-3}(s+2) and mu_2(2s, s) = mu^{-1}(s+2) along the
/// diagonal direction. Unknowns are (a11, a12, a21, a22).
pub fn chain_rule_constraints() -> LinearSystem {
    // one-variable unramified family: value a, derivative ap; put the
    // derivative in the first jet slot and differentiate powers exactly
    let mu = Jet::new(SymExpr::sym("a"), SymExpr::sym("ap"), SymExpr::from_int(0));
    let lhs = |p1: &str, p2: &str| {
        // d/ds mu_i(2s, s) = 2*partial_1 + partial_2
        SymExpr::sym(p1)
            .mul(&SymExpr::from_int(2))
            .add(&SymExpr::sym(p2))
    };
    let eq1 = lhs("a11", "a12").sub(&mu.pow(-3).unwrap().d1);
    let eq2 = lhs("a21", "a22").sub(&mu.pow(-1).unwrap().d1);
    LinearSystem::new(
        vec![
            Symbol::new("a11"),
            Symbol::new("a12"),
            Symbol::new("a21"),
            Symbol::new("a22"),
        ],
        vec![eq1, eq2],
    )
}

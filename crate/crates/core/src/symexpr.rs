//! Elements of the rational-function field over Q in the declared symbols.
//!
//! Canonical form: numerator and denominator coprime, denominator monic
//! under the graded lex order. Structural equality of canonical forms is
//! exactly mathematical equality of rational functions, so every identity
//! downstream is decided by exact polynomial arithmetic, never by
//! sampling.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::poly::{gcd, Poly};
use crate::ring::{int, rat, Field, Rational, Ring};
use crate::symbol::Symbol;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymExpr {
    num: Poly,
    den: Poly,
}

impl SymExpr {
    pub fn new(num: Poly, den: Poly) -> Result<SymExpr> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(SymExpr {
                num: Poly::zero(),
                den: Poly::one(),
            });
        }
        let g = gcd(&num, &den);
        let num = num.div_exact(&g).expect("gcd divides numerator");
        let den = den.div_exact(&g).expect("gcd divides denominator");
        let lc = den.leading().unwrap().1.clone();
        Ok(SymExpr {
            num: num.scale(&lc.recip()),
            den: den.scale(&lc.recip()),
        })
    }

    pub fn from_poly(p: Poly) -> SymExpr {
        SymExpr {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn from_rational(c: Rational) -> SymExpr {
        SymExpr::from_poly(Poly::constant(c))
    }

    pub fn from_int(n: i64) -> SymExpr {
        SymExpr::from_rational(int(n))
    }

    pub fn from_frac(n: i64, d: i64) -> SymExpr {
        SymExpr::from_rational(rat(n, d))
    }

    /// The named symbol as an expression (interning it if necessary).
    pub fn sym(name: &str) -> SymExpr {
        SymExpr::from_poly(Poly::var(Symbol::new(name)))
    }

    pub fn var(s: Symbol) -> SymExpr {
        SymExpr::from_poly(Poly::var(s))
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self == &SymExpr::from_int(1)
    }

    pub fn add(&self, other: &SymExpr) -> SymExpr {
        SymExpr::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
        .expect("nonzero denominators")
    }

    pub fn sub(&self, other: &SymExpr) -> SymExpr {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SymExpr {
        SymExpr {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &SymExpr) -> SymExpr {
        SymExpr::new(self.num.mul(&other.num), self.den.mul(&other.den))
            .expect("nonzero denominators")
    }

    pub fn checked_div(&self, other: &SymExpr) -> Result<SymExpr> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        SymExpr::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn div(&self, other: &SymExpr) -> SymExpr {
        self.checked_div(other).expect("division by zero SymExpr")
    }

    pub fn inv(&self) -> Result<SymExpr> {
        SymExpr::from_int(1).checked_div(self)
    }

    /// Integer power; negative exponents invert (error on zero base).
    pub fn pow(&self, e: i64) -> Result<SymExpr> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut r = SymExpr::from_int(1);
        for _ in 0..e {
            r = r.mul(self);
        }
        Ok(r)
    }

    pub fn contains_symbol(&self, s: Symbol) -> bool {
        self.num.contains_symbol(s) || self.den.contains_symbol(s)
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        let mut v = self.num.symbols();
        for s in self.den.symbols() {
            if !v.contains(&s) {
                v.push(s);
            }
        }
        v.sort();
        v
    }

    /// Substitutes `value` for symbol `s`.
    pub fn substitute(&self, s: Symbol, value: &SymExpr) -> Result<SymExpr> {
        let num = substitute_poly(&self.num, s, value);
        let den = substitute_poly(&self.den, s, value);
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        num.checked_div(&den)
    }

    /// Simultaneous substitution of several symbols.
    pub fn substitute_all(&self, subs: &[(Symbol, SymExpr)]) -> Result<SymExpr> {
        let num = substitute_poly_all(&self.num, subs);
        let den = substitute_poly_all(&self.den, subs);
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        num.checked_div(&den)
    }

    /// Exact evaluation at a rational point; errors at poles or missing
    /// symbols.
    pub fn eval(&self, values: &HashMap<Symbol, Rational>) -> Result<Rational> {
        let n = self
            .num
            .eval(values)
            .ok_or_else(|| Error::Dimension("unassigned symbol in evaluation".into()))?;
        let d = self
            .den
            .eval(values)
            .ok_or_else(|| Error::Dimension("unassigned symbol in evaluation".into()))?;
        if Ring::is_zero(&d) {
            return Err(Error::DivisionByZero);
        }
        Ok(n / d)
    }

    pub fn to_rational(&self) -> Option<Rational> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(n / d)
    }

    /// Coefficients of the expression viewed as a polynomial in `s`
    /// (requires `s` absent from the denominator).
    pub fn coefficients_in(&self, s: Symbol) -> Result<Vec<SymExpr>> {
        if self.den.contains_symbol(s) {
            return Err(Error::NonAffine(format!(
                "denominator contains {}",
                s.name()
            )));
        }
        Ok(self
            .num
            .as_univariate(s)
            .into_iter()
            .map(|c| SymExpr::new(c, self.den.clone()).expect("nonzero denominator"))
            .collect())
    }
}

fn substitute_poly(p: &Poly, s: Symbol, value: &SymExpr) -> SymExpr {
    substitute_poly_all(p, std::slice::from_ref(&(s, value.clone())))
}

fn substitute_poly_all(p: &Poly, subs: &[(Symbol, SymExpr)]) -> SymExpr {
    let mut acc = SymExpr::from_int(0);
    for (m, c) in p.terms() {
        let mut t = SymExpr::from_rational(c.clone());
        for (sym, e) in m.symbols() {
            let factor = match subs.iter().find(|(s, _)| *s == sym) {
                Some((_, v)) => v.clone(),
                None => SymExpr::var(sym),
            };
            t = t.mul(&factor.pow(e as i64).expect("nonnegative power"));
        }
        acc = acc.add(&t);
    }
    acc
}

impl Ring for SymExpr {
    fn zero() -> Self {
        SymExpr::from_int(0)
    }
    fn one() -> Self {
        SymExpr::from_int(1)
    }
    fn add(&self, other: &Self) -> Self {
        SymExpr::add(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        SymExpr::mul(self, other)
    }
    fn neg(&self) -> Self {
        SymExpr::neg(self)
    }
    fn is_zero(&self) -> bool {
        SymExpr::is_zero(self)
    }
    fn from_int(n: i64) -> Self {
        SymExpr::from_int(n)
    }
}

impl Field for SymExpr {
    fn inv(&self) -> Option<Self> {
        SymExpr::inv(self).ok()
    }
}

impl std::fmt::Display for SymExpr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den == Poly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl serde::Serialize for SymExpr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

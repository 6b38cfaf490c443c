//! First-order expansions in two nilpotent directions.
//!
//! A jet a + eps1*b1 + eps2*b2 multiplies with eps_i*eps_j = 0, which is
//! exactly the truncation of a two-parameter family to first order at the
//! base point.

use crate::error::Result;
use crate::ring::Ring;
use crate::symexpr::SymExpr;

#[derive(Clone, PartialEq, Debug)]
pub struct Jet {
    pub val: SymExpr,
    pub d1: SymExpr,
    pub d2: SymExpr,
}

impl Jet {
    pub fn new(val: SymExpr, d1: SymExpr, d2: SymExpr) -> Jet {
        Jet { val, d1, d2 }
    }

    pub fn constant(val: SymExpr) -> Jet {
        Jet {
            val,
            d1: SymExpr::from_int(0),
            d2: SymExpr::from_int(0),
        }
    }

    pub fn add(&self, other: &Jet) -> Jet {
        Jet {
            val: self.val.add(&other.val),
            d1: self.d1.add(&other.d1),
            d2: self.d2.add(&other.d2),
        }
    }

    pub fn neg(&self) -> Jet {
        Jet {
            val: self.val.neg(),
            d1: self.d1.neg(),
            d2: self.d2.neg(),
        }
    }

    pub fn sub(&self, other: &Jet) -> Jet {
        self.add(&other.neg())
    }

    /// (a,b1,b2)(c,d1,d2) = (ac, ad1 + cb1, ad2 + cb2)
    pub fn mul(&self, other: &Jet) -> Jet {
        Jet {
            val: self.val.mul(&other.val),
            d1: self.val.mul(&other.d1).add(&other.val.mul(&self.d1)),
            d2: self.val.mul(&other.d2).add(&other.val.mul(&self.d2)),
        }
    }

    /// Jet inverse: (v, d)^{-1} = (v^{-1}, -d/v^2). Errors when the value
    /// part is the zero rational function.
    pub fn inv(&self) -> Result<Jet> {
        let vi = self.val.inv()?;
        let vsq_inv = vi.mul(&vi);
        Ok(Jet {
            val: vi,
            d1: self.d1.neg().mul(&vsq_inv),
            d2: self.d2.neg().mul(&vsq_inv),
        })
    }

    pub fn pow(&self, e: i64) -> Result<Jet> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut r = Jet::constant(SymExpr::from_int(1));
        for _ in 0..e {
            r = r.mul(self);
        }
        Ok(r)
    }

    /// Directional derivative (1-Delta)*d1 + Delta*d2.
    pub fn directional(&self, delta: &SymExpr) -> SymExpr {
        let one_minus = SymExpr::from_int(1).sub(delta);
        one_minus.mul(&self.d1).add(&delta.mul(&self.d2))
    }
}

impl Ring for Jet {
    fn zero() -> Self {
        Jet::constant(SymExpr::from_int(0))
    }
    fn one() -> Self {
        Jet::constant(SymExpr::from_int(1))
    }
    fn add(&self, other: &Self) -> Self {
        Jet::add(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        Jet::mul(self, other)
    }
    fn neg(&self) -> Self {
        Jet::neg(self)
    }
    fn from_int(n: i64) -> Self {
        Jet::constant(SymExpr::from_int(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn j(v: i64, d1: i64, d2: i64) -> Jet {
        Jet::new(
            SymExpr::from_int(v),
            SymExpr::from_int(d1),
            SymExpr::from_int(d2),
        )
    }

    #[test]
    fn nilpotent_cross_terms() {
        // (1, x, 0)(1, 0, y) = (1, x, y)
        let a = Jet::new(
            SymExpr::from_int(1),
            SymExpr::sym("x"),
            SymExpr::from_int(0),
        );
        let b = Jet::new(
            SymExpr::from_int(1),
            SymExpr::from_int(0),
            SymExpr::sym("y"),
        );
        let p = a.mul(&b);
        assert_eq!(p.val, SymExpr::from_int(1));
        assert_eq!(p.d1, SymExpr::sym("x"));
        assert_eq!(p.d2, SymExpr::sym("y"));
    }

    #[test]
    fn inverse_is_two_sided() {
        let v = Jet::new(SymExpr::sym("x"), SymExpr::sym("y"), SymExpr::from_int(2));
        let vi = v.inv().unwrap();
        assert_eq!(v.mul(&vi), Jet::one());
        assert_eq!(vi.mul(&v), Jet::one());
    }

    #[test]
    fn truncated_product() {
        // oracle: (2 + 3e1 + 5e2)(7 + 11e1 + 13e2) = 14 + 43e1 + 61e2
        assert_eq!(j(2, 3, 5).mul(&j(7, 11, 13)), j(14, 43, 61));
    }
}

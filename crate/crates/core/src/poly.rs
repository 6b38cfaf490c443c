//! Sparse multivariate polynomials over the exact rationals.
//!
//! Monomials are exponent vectors indexed by the symbol table, ordered by
//! graded lexicographic order (total degree first, then the documented
//! symbol order). Everything downstream relies on the canonical form this
//! order induces: the leading term of a polynomial is well defined and
//! reproducible across runs.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num::{One, Signed, Zero};

use crate::ring::{int, Rational};
use crate::symbol::Symbol;

/// Exponent vector, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(s: Symbol, e: u32) -> Monomial {
        if e == 0 {
            return Monomial::one();
        }
        let mut v = vec![0; s.index() + 1];
        v[s.index()] = e;
        Monomial(v)
    }

    fn trim(mut v: Vec<u32>) -> Monomial {
        while v.last() == Some(&0) {
            v.pop();
        }
        Monomial(v)
    }

    pub fn exp(&self, s: Symbol) -> u32 {
        self.0.get(s.index()).copied().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        let mut v = vec![0u32; n];
        for (i, x) in v.iter_mut().enumerate() {
            *x = self.0.get(i).copied().unwrap_or(0) + other.0.get(i).copied().unwrap_or(0);
        }
        Monomial::trim(v)
    }

    /// Exact monomial division; `None` when not divisible.
    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        let n = self.0.len().max(other.0.len());
        let mut v = vec![0u32; n];
        for (i, x) in v.iter_mut().enumerate() {
            let a = self.0.get(i).copied().unwrap_or(0);
            let b = other.0.get(i).copied().unwrap_or(0);
            if a < b {
                return None;
            }
            *x = a - b;
        }
        Some(Monomial::trim(v))
    }

    /// Symbols with positive exponent, in table order.
    pub fn symbols(&self) -> impl Iterator<Item = (Symbol, u32)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (Symbol::from_index(i), e))
    }

    /// Removes `s` from the monomial entirely.
    fn without(&self, s: Symbol) -> Monomial {
        let mut v = self.0.clone();
        if s.index() < v.len() {
            v[s.index()] = 0;
        }
        Monomial::trim(v)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (da, db) = (self.total_degree(), other.total_degree());
        if da != db {
            return da.cmp(&db);
        }
        let n = self.0.len().max(other.0.len());
        for i in 0..n {
            let a = self.0.get(i).copied().unwrap_or(0);
            let b = other.0.get(i).copied().unwrap_or(0);
            if a != b {
                return a.cmp(&b);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Multivariate polynomial with rational coefficients; zero coefficients
/// are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Poly {
        Poly::constant(int(1))
    }

    pub fn constant(c: Rational) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Poly { terms }
    }

    pub fn var(s: Symbol) -> Poly {
        Poly::term(Monomial::var(s, 1), int(1))
    }

    pub fn term(m: Monomial, c: Rational) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
            || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one())
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(int(0))
        } else if self.is_constant() {
            Some(self.terms.values().next().unwrap().clone())
        } else {
            None
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Leading term under graded lex.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u64 {
        self.terms
            .keys()
            .map(|m| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, s: Symbol) -> u32 {
        self.terms.keys().map(|m| m.exp(s)).max().unwrap_or(0)
    }

    pub fn contains_symbol(&self, s: Symbol) -> bool {
        self.terms.keys().any(|m| m.exp(s) > 0)
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        let mut seen = std::collections::BTreeSet::new();
        for m in self.terms.keys() {
            for (s, _) in m.symbols() {
                seen.insert(s);
            }
        }
        seen.into_iter().collect()
    }

    fn insert_add(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get() + &c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.insert_add(m.clone(), c.clone());
        }
        r
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut r = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                r.insert_add(ma.mul(mb), ca * cb);
            }
        }
        r
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut r = Poly::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Divides by the leading coefficient, making the polynomial monic.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some((_, lc)) => self.scale(&lc.recip()),
        }
    }

    /// Exact division: `self = q * other` with no remainder, else `None`.
    pub fn div_exact(&self, other: &Poly) -> Option<Poly> {
        if other.is_zero() {
            return None;
        }
        let (lm, lc) = other.leading().unwrap();
        let mut r = self.clone();
        let mut q = Poly::zero();
        while let Some((rm, rc)) = r.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = rm.try_div(lm)?;
            let qc = &rc / lc;
            let qt = Poly::term(qm, qc);
            r = r.sub(&qt.mul(other));
            q = q.add(&qt);
        }
        Some(q)
    }

    /// Coefficients of `self` viewed as univariate in `s`; index = power of `s`.
    pub fn as_univariate(&self, s: Symbol) -> Vec<Poly> {
        let d = self.degree_in(s) as usize;
        let mut out = vec![Poly::zero(); d + 1];
        for (m, c) in &self.terms {
            let e = m.exp(s) as usize;
            out[e].insert_add(m.without(s), c.clone());
        }
        out
    }

    /// Substitutes a rational value for every symbol; `None` if a symbol
    /// has no assigned value.
    pub fn eval(&self, values: &std::collections::HashMap<Symbol, Rational>) -> Option<Rational> {
        let mut acc = int(0);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (s, e) in m.symbols() {
                let v = values.get(&s)?;
                for _ in 0..e {
                    t *= v;
                }
            }
            acc += t;
        }
        Some(acc)
    }

    /// The highest-index symbol occurring in the polynomial.
    pub fn max_symbol(&self) -> Option<Symbol> {
        self.symbols().into_iter().max()
    }
}

fn pseudo_rem(u: &Poly, w: &Poly, v: Symbol) -> Poly {
    let m = w.degree_in(v);
    let lcw = w.as_univariate(v).pop().unwrap();
    // with a constant leading coefficient ordinary division is exact and
    // avoids the pseudo-remainder growth factor entirely
    let lcw_const = if lcw.is_constant() {
        Some(lcw.leading().map(|(_, c)| c.clone()).unwrap())
    } else {
        None
    };
    let mut r = u.clone();
    while !r.is_zero() && r.degree_in(v) >= m {
        let d = r.degree_in(v);
        let coeffs = r.as_univariate(v);
        let lcr = coeffs[d as usize].clone();
        let shift = Poly::term(Monomial::var(v, d - m), int(1));
        r = match &lcw_const {
            Some(c) => r.sub(&lcr.scale(&c.recip()).mul(&shift).mul(w)),
            None => lcw.mul(&r).sub(&lcr.mul(&shift).mul(w)),
        };
    }
    r
}

/// Largest rational `c` with `p/c` having coprime integer coefficients.
fn rational_content(p: &Poly) -> Rational {
    use num::Integer;
    let mut denom_lcm = num::BigInt::from(1);
    for (_, c) in p.terms() {
        denom_lcm = denom_lcm.lcm(c.denom());
    }
    let mut numer_gcd = num::BigInt::from(0);
    for (_, c) in p.terms() {
        numer_gcd = numer_gcd.gcd(&(c.numer() * (&denom_lcm / c.denom())));
    }
    Rational::new(numer_gcd, denom_lcm)
}

fn content_prim(p: &Poly, v: Symbol) -> (Poly, Poly) {
    let coeffs = p.as_univariate(v);
    let mut cont = Poly::zero();
    for c in &coeffs {
        cont = gcd(&cont, c);
    }
    let mut prim = p.div_exact(&cont).expect("content divides");
    // the polynomial content is monic, so it misses the rational scale;
    // pull that out too or the remainder sequences blow up over Q
    let c = rational_content(&prim);
    if !c.is_one() && !c.is_zero() {
        prim = prim.scale(&c.recip());
        cont = cont.scale(&c);
    }
    (cont, prim)
}

/// Monic gcd of two polynomials, by primitive pseudo-remainder sequences
/// recursing on the highest symbol present.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    let v = a.max_symbol().max(b.max_symbol()).unwrap();
    let (ca, pa) = content_prim(a, v);
    let (cb, pb) = content_prim(b, v);
    let cg = gcd(&ca, &cb);
    let (mut u, mut w) = if pa.degree_in(v) >= pb.degree_in(v) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    loop {
        if w.is_zero() {
            break;
        }
        let r = pseudo_rem(&u, &w, v);
        u = w;
        w = if r.is_zero() {
            Poly::zero()
        } else {
            let (_, prim) = content_prim(&r, v);
            prim
        };
    }
    // u is primitive in v unless the loop never ran a division step
    let u = if u.degree_in(v) > 0 {
        content_prim(&u, v).1
    } else {
        u
    };
    cg.mul(&u).monic()
}

impl std::fmt::Display for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut parts: Vec<String> = Vec::new();
            if !mag.is_one() || m.is_one() {
                parts.push(mag.to_string());
            }
            for (s, e) in m.symbols() {
                if e == 1 {
                    parts.push(s.name());
                } else {
                    parts.push(format!("{}^{}", s.name(), e));
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

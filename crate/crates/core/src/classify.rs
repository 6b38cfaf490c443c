//! Classification of Tate twists of symmetric powers of an ordinary
//! two-dimensional representation: criticality, the ordinary filtration,
//! and detection of the exceptional subquotient W.
//!
//! The n-th symmetric power twisted by r has n+1 graded pieces; piece j
//! carries the character chi^{j(k-1)+r} times the unramified delta^{n-2j},
//! with delta nontrivial. Criticality compares the count of non-positive
//! exponents against the dimension of the (-1)-eigenspace of complex
//! conjugation; the twist is exceptional exactly when the middle piece
//! (n = 2j, the only one with trivial unramified part) is the trivial
//! character or the cyclotomic one, making W a copy of K or K(1).

use serde::Serialize;

/// Isomorphism type of the exceptional subquotient W when nonzero.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
pub enum WType {
    /// W = K: the middle graded piece is the trivial character.
    Trivial,
    /// W = K(1): the middle graded piece is the cyclotomic character.
    CyclotomicTwist,
}

/// Shape of the ordinary filtration F^1 < F^00 < F^0 on the twist.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FiltrationProfile {
    /// dim F^1: graded pieces with exponent >= 1.
    pub f1_dim: usize,
    /// dim F^00/F^1: exponent-0 pieces on which the whole group acts
    /// trivially (needs the unramified part trivial, i.e. n = 2j).
    pub f00_mod_f1_dim: usize,
    /// Whether F^11 = F^1 (no exponent-1 piece with trivial unramified
    /// part sitting just above F^1's interior).
    pub f11_equals_f1: bool,
    pub w_type: Option<WType>,
}

/// Full classification of one twist (Sym^n rho)(r) at weight k.
#[derive(Clone, Debug, Serialize)]
pub struct TwistReport {
    pub n: u32,
    pub k: i64,
    pub r: i64,
    /// Cyclotomic exponents j(k-1)+r of the graded pieces, j = 0..n.
    pub weights: Vec<i64>,
    pub critical: bool,
    pub exceptional: bool,
    pub profile: FiltrationProfile,
    /// For an exceptional twist, the twist whose dual it is paired with:
    /// W = K pairs with the W = K(1) twist one step up, and conversely.
    pub tate_dual_r: Option<i64>,
}

pub fn classify_twist(n: u32, k: i64, r: i64) -> TwistReport {
    assert!(n >= 2 && n.is_multiple_of(2), "even n >= 2 required");
    assert!(k >= 2, "weight k >= 2 required");
    let weights: Vec<i64> = (0..=n as i64).map(|j| j * (k - 1) + r).collect();

    // dim V^-: conjugation acts on piece j by (-1)^(n-j), twisted by
    // (-1)^r.
    let minus_dim = (0..=n as i64)
        .filter(|j| (n as i64 - j + r) % 2 != 0)
        .count();
    let nonpos = weights.iter().filter(|&&e| e <= 0).count();
    let critical = nonpos == minus_dim;

    // The middle piece j = n/2 is the only one whose unramified part is
    // trivial; its exponent decides W.
    let mid = weights[(n / 2) as usize];
    let w_type = match mid {
        0 => Some(WType::Trivial),
        1 => Some(WType::CyclotomicTwist),
        _ => None,
    };
    let profile = FiltrationProfile {
        f1_dim: weights.iter().filter(|&&e| e >= 1).count(),
        f00_mod_f1_dim: usize::from(mid == 0),
        f11_equals_f1: mid != 1,
        w_type,
    };
    let tate_dual_r = match w_type {
        Some(WType::Trivial) => Some(r + 1),
        Some(WType::CyclotomicTwist) => Some(r - 1),
        None => None,
    };

    TwistReport {
        n,
        k,
        r,
        weights,
        critical,
        exceptional: w_type.is_some(),
        profile,
        tate_dual_r,
    }
}

/// The inclusive range of r for which the count of non-positive
/// exponents is n/2 or n/2 + 1 -- the only counts dim V^- can take, so
/// the only candidates for criticality.
pub fn critical_range(n: u32, k: i64) -> std::ops::RangeInclusive<i64> {
    let h = (n / 2) as i64;
    let km1 = k - 1;
    (-(h + 1) * km1 + 1)..=(-(h - 1) * km1)
}

/// Classifies every twist in the critical range.
pub fn scan_twists(n: u32, k: i64) -> Vec<TwistReport> {
    critical_range(n, k)
        .map(|r| classify_twist(n, k, r))
        .collect()
}

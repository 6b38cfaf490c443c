//! LaTeX rendering of canonical expressions, with the frozen symbol
//! table mapped to its usual typeset names.

use num::{One, Signed};

use linv_core::{Rational, SymExpr, Symbol};

fn symbol_latex(s: Symbol) -> String {
    let name = s.name();
    match name.as_str() {
        "a" => r"\alpha_p".into(),
        "ap" => r"\alpha_p^{\prime}".into(),
        "a11" => r"\alpha_p^{(1,1)}".into(),
        "a12" => r"\alpha_p^{(1,2)}".into(),
        "a21" => r"\alpha_p^{(2,1)}".into(),
        "a22" => r"\alpha_p^{(2,2)}".into(),
        "L" => r"\mathcal{L}".into(),
        "L2" => r"\mathcal{L}_2".into(),
        "D" => r"\Delta".into(),
        "L_u" => r"\log_p(u)".into(),
        "u" => "u".into(),
        "u_k" => r"u^{k-2}".into(),
        "k" => "k".into(),
        "chi" => r"\chi^{k-1}".into(),
        "d" => r"\delta".into(),
        "phi" => r"\varphi".into(),
        _ => {
            if let Some(rest) = name.strip_prefix("xi") {
                format!(r"\xi_{{{}}}", rest)
            } else if let Some(rest) = name.strip_prefix("g") {
                format!(r"g_{{{}}}", rest)
            } else {
                format!(r"\mathtt{{{}}}", name.replace('_', r"\_"))
            }
        }
    }
}

fn rational_latex(c: &Rational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!(r"\frac{{{}}}{{{}}}", c.numer(), c.denom())
    }
}

fn poly_latex(p: &linv_core::poly::Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    let terms: Vec<_> = p.terms().collect();
    for (idx, (m, c)) in terms.iter().rev().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mut parts = Vec::new();
        if !mag.is_one() || m.is_one() {
            parts.push(rational_latex(&mag));
        }
        for (s, e) in m.symbols() {
            if e == 1 {
                parts.push(symbol_latex(s));
            } else {
                parts.push(format!("{}^{{{}}}", symbol_latex(s), e));
            }
        }
        out.push_str(&parts.join(r"\,"));
    }
    out
}

pub fn expr_latex(e: &SymExpr) -> String {
    let num = poly_latex(e.numerator());
    if e.denominator().is_constant() {
        num
    } else {
        format!(r"\frac{{{}}}{{{}}}", num, poly_latex(e.denominator()))
    }
}

//! Human-readable printers for polynomials and rational functions, in plain
//! text and LaTeX. Denominator factors print in the positive-root order;
//! monomials print by total degree and then the same order, constants first.

use std::cmp::Ordering;

use num::{BigInt, BigRational, One, Signed};

use crate::cartan::colex;
use crate::symfunc::{Poly, RatFunc};

/// `\alpha_1 .. \alpha_n`.
pub fn latex_vars(nvars: usize) -> Vec<String> {
    (1..=nvars).map(|i| format!("\\alpha_{i}")).collect()
}

/// `a1 .. an`.
pub fn text_vars(nvars: usize) -> Vec<String> {
    (1..=nvars).map(|i| format!("a{i}")).collect()
}

/// Root variables plus the trailing homogenization variable.
pub fn stable_latex_vars(rank: usize) -> Vec<String> {
    let mut vars = latex_vars(rank);
    vars.push("\\hbar".to_string());
    vars
}

pub fn stable_text_vars(rank: usize) -> Vec<String> {
    let mut vars = text_vars(rank);
    vars.push("h".to_string());
    vars
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Style {
    Text,
    Latex,
}

fn exps_as_i64(exp: &[u16]) -> Vec<i64> {
    exp.iter().map(|&e| e as i64).collect()
}

fn monomial_order(a: &[u16], b: &[u16]) -> Ordering {
    let da: usize = a.iter().map(|&x| x as usize).sum();
    let db: usize = b.iter().map(|&x| x as usize).sum();
    da.cmp(&db)
        .then_with(|| colex(&exps_as_i64(a), &exps_as_i64(b)))
}

fn coeff_string(c: &BigRational, style: Style) -> String {
    if c.denom() == &BigInt::one() {
        c.numer().to_string()
    } else {
        match style {
            Style::Text => format!("{}/{}", c.numer(), c.denom()),
            Style::Latex => format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom()),
        }
    }
}

fn power_string(var: &str, e: u16, style: Style) -> String {
    match (e, style) {
        (1, _) => var.to_string(),
        (_, Style::Text) => format!("{var}^{e}"),
        (_, Style::Latex) if e <= 9 => format!("{var}^{e}"),
        (_, Style::Latex) => format!("{var}^{{{e}}}"),
    }
}

fn monomial_string(exp: &[u16], coeff: &BigRational, vars: &[String], style: Style) -> String {
    let abs = coeff.abs();
    let mut parts: Vec<String> = Vec::new();
    for (j, &e) in exp.iter().enumerate() {
        if e > 0 {
            parts.push(power_string(&vars[j], e, style));
        }
    }
    if parts.is_empty() {
        return coeff_string(&abs, style);
    }
    let vars_part = match style {
        Style::Text => parts.join("*"),
        Style::Latex => parts.join(""),
    };
    if abs.is_one() {
        vars_part
    } else {
        match style {
            Style::Text => format!("{}*{}", coeff_string(&abs, style), vars_part),
            Style::Latex => format!("{}{}", coeff_string(&abs, style), vars_part),
        }
    }
}

fn poly_string(p: &Poly, vars: &[String], style: Style) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut terms: Vec<(&[u16], &BigRational)> = p.terms().collect();
    terms.sort_by(|a, b| monomial_order(a.0, b.0));
    let mut out = String::new();
    for (pos, (exp, coeff)) in terms.iter().enumerate() {
        let negative = coeff.is_negative();
        if pos == 0 {
            if negative {
                out.push('-');
            }
        } else if negative {
            out.push_str(match style {
                Style::Text => " - ",
                Style::Latex => "-",
            });
        } else {
            out.push_str(match style {
                Style::Text => " + ",
                Style::Latex => "+",
            });
        }
        out.push_str(&monomial_string(exp, coeff, vars, style));
    }
    out
}

fn factor_string(
    constant: i64,
    coeffs: &[i64],
    mult: u32,
    vars: &[String],
    style: Style,
) -> String {
    let mut inner = String::new();
    let mut first = true;
    if constant != 0 {
        inner.push_str(&constant.to_string());
        first = false;
    }
    for (j, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        if first {
            if c < 0 {
                inner.push('-');
            }
        } else {
            inner.push(if c < 0 { '-' } else { '+' });
        }
        if c.abs() != 1 {
            inner.push_str(&c.abs().to_string());
            if style == Style::Text {
                inner.push('*');
            }
        }
        inner.push_str(&vars[j]);
        first = false;
    }
    let base = format!("({inner})");
    match (mult, style) {
        (1, _) => base,
        (_, Style::Text) => format!("{base}^{mult}"),
        (_, Style::Latex) if mult <= 9 => format!("{base}^{mult}"),
        (_, Style::Latex) => format!("{base}^{{{mult}}}"),
    }
}

fn ratfunc_string(f: &RatFunc, vars: &[String], style: Style) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    // Fold the denominator scalar into the printed numerator.
    let num = f.num().scale(&f.scalar().recip());
    if f.den_is_trivial() {
        return poly_string(&num, vars, style);
    }
    // Factor a global minus out when every numerator coefficient is negative.
    let all_negative = num.terms().all(|(_, c)| c.is_negative());
    let (sign, num) = if all_negative {
        ("-", -&num)
    } else {
        ("", num)
    };
    let num_str = poly_string(&num, vars, style);
    let den_str: String = f
        .den_factors()
        .map(|(form, mult)| factor_string(form.constant(), form.coeffs(), mult, vars, style))
        .collect();
    match style {
        Style::Latex => format!("{sign}\\frac{{{num_str}}}{{{den_str}}}"),
        Style::Text => {
            let wrapped = if num.num_terms() > 1 {
                format!("({num_str})")
            } else {
                num_str
            };
            format!("{sign}{wrapped}/{den_str}")
        }
    }
}

pub fn poly_to_latex(p: &Poly, vars: &[String]) -> String {
    poly_string(p, vars, Style::Latex)
}

pub fn poly_to_text(p: &Poly, vars: &[String]) -> String {
    poly_string(p, vars, Style::Text)
}

pub fn ratfunc_to_latex(f: &RatFunc, vars: &[String]) -> String {
    ratfunc_string(f, vars, Style::Latex)
}

pub fn ratfunc_to_text(f: &RatFunc, vars: &[String]) -> String {
    ratfunc_string(f, vars, Style::Text)
}

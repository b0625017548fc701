//! Canonical printing. Every printed element reparses to itself: products
//! use `*`, powers `^n`, and coefficients with two terms are parenthesized.

use serde_json::{json, Value};

use crate::calculus::{VectorField, DERIVATIVES};
use crate::field::Scalar;
use crate::ncpoly::{Element, Monomial, Presentation, TensorElement};

pub fn monomial(p: &Presentation, m: &Monomial) -> String {
    if m.is_one() {
        return "1".into();
    }
    let mut parts = Vec::new();
    let word = m.word();
    let mut i = 0;
    while i < word.len() {
        let g = word[i];
        let mut run = 1;
        while i + run < word.len() && word[i + run] == g {
            run += 1;
        }
        let name = p.generator_name(g);
        parts.push(if run == 1 { name.to_string() } else { format!("{name}^{run}") });
        i += run;
    }
    parts.join("*")
}

/// One signed term `c*body`; `body = None` stands for the unit monomial.
fn term(c: &Scalar, body: Option<&str>, alone: bool) -> String {
    match body {
        None if c.is_single_term() || alone => c.to_string(),
        None => format!("({c})"),
        Some(b) if c.is_one() => b.to_string(),
        Some(b) if (-c).is_one() => format!("-{b}"),
        Some(b) if c.is_single_term() => format!("{c}*{b}"),
        Some(b) => format!("({c})*{b}"),
    }
}

fn join(terms: Vec<String>) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, t) in terms.into_iter().enumerate() {
        if i == 0 {
            out.push_str(&t);
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&t);
        }
    }
    out
}

pub fn element(p: &Presentation, e: &Element) -> String {
    let alone = e.len() == 1;
    join(
        e.terms()
            .map(|(m, c)| {
                let body = (!m.is_one()).then(|| monomial(p, m));
                term(c, body.as_deref(), alone)
            })
            .collect(),
    )
}

/// Fields print with their coefficients on the left: `q*x*Dpx - Dy`.
pub fn field(q: &Presentation, v: &VectorField) -> String {
    let mut terms = Vec::new();
    for (i, coeff) in v.coeffs.iter().enumerate() {
        for (m, c) in coeff.terms() {
            let body = if m.is_one() {
                DERIVATIVES[i].to_string()
            } else {
                format!("{}*{}", monomial(q, m), DERIVATIVES[i])
            };
            terms.push(term(c, Some(&body), false));
        }
    }
    join(terms)
}

pub fn tensor(left: &Presentation, right: &Presentation, t: &TensorElement) -> String {
    join(
        t.terms()
            .map(|((a, b), c)| {
                let body = (!a.is_one()).then(|| monomial(left, a));
                let head = match body {
                    Some(bd) => term(c, Some(&bd), false),
                    None if c.is_single_term() => c.to_string(),
                    None => format!("({c})"),
                };
                format!("{head} ⊗ {}", monomial(right, b))
            })
            .collect(),
    )
}

pub fn element_json(p: &Presentation, e: &Element) -> Value {
    let terms: Vec<Value> =
        e.terms().map(|(m, c)| json!({ "monomial": monomial(p, m), "coefficient": c })).collect();
    json!({ "text": element(p, e), "terms": terms })
}

pub fn field_json(q: &Presentation, v: &VectorField) -> Value {
    let comps: serde_json::Map<String, Value> =
        DERIVATIVES.iter().zip(&v.coeffs).map(|(d, c)| (d.to_string(), element_json(q, c))).collect();
    json!({ "text": field(q, v), "components": comps })
}

pub fn tensor_json(left: &Presentation, right: &Presentation, t: &TensorElement) -> Value {
    let terms: Vec<Value> = t
        .terms()
        .map(|((a, b), c)| json!({ "left": monomial(left, a), "right": monomial(right, b), "coefficient": c }))
        .collect();
    json!({ "text": tensor(left, right, t), "terms": terms })
}

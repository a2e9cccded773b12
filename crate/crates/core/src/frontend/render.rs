use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde_json::{json, Value};

use crate::apps::ReductionReport;
use crate::diff::{DiffPoly, DiffTerm, Ranking};
use crate::scalar::{FactoredPoly, FactoredRatFun, MultiPoly, RatFun, SymbolTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Latex,
}

/// Turns library values back into the input notation.
#[derive(Clone, Copy, Debug)]
pub struct Renderer<'a> {
    pub symbols: &'a SymbolTable,
    pub functions: &'a [String],
}

impl<'a> Renderer<'a> {
    pub fn new(symbols: &'a SymbolTable, functions: &'a [String]) -> Self {
        Self { symbols, functions }
    }

    fn monomial(&self, exps: &[u32], latex: bool) -> Vec<String> {
        exps.iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                let name = self.symbols.name(i);
                match (e, latex) {
                    (1, _) => name.to_string(),
                    (_, false) => format!("{name}^{e}"),
                    (_, true) => format!("{name}^{{{e}}}"),
                }
            })
            .collect()
    }

    pub fn poly(&self, p: &MultiPoly) -> String {
        self.poly_with(p, false)
    }

    fn poly_with(&self, p: &MultiPoly, latex: bool) -> String {
        if p.is_zero() {
            return "0".to_string();
        }
        let sep = if latex { " " } else { "*" };
        let mut out = String::new();
        for (i, (exps, c)) in p.terms().iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            let mut parts = self.monomial(exps, latex);
            if !a.is_one() || parts.is_empty() {
                parts.insert(0, a.to_string());
            }
            out.push_str(&parts.join(sep));
        }
        out
    }

    /// `p` as a factor of a product: parenthesized unless atomic.
    fn poly_factor(&self, p: &MultiPoly, latex: bool) -> String {
        let s = self.poly_with(p, latex);
        if p.len() > 1 || (p.len() == 1 && s.starts_with('-')) {
            if latex {
                format!("\\left({s}\\right)")
            } else {
                format!("({s})")
            }
        } else {
            s
        }
    }

    pub fn ratfun(&self, r: &RatFun) -> String {
        if r.denom().is_one() {
            return self.poly(r.numer());
        }
        let num = self.poly_factor(r.numer(), false);
        let den = self.poly(r.denom());
        if is_atom(r.denom()) {
            format!("{num}/{den}")
        } else {
            format!("{num}/({den})")
        }
    }

    pub fn ratfun_latex(&self, r: &RatFun) -> String {
        if r.denom().is_one() {
            return self.poly_with(r.numer(), true);
        }
        format!(
            "\\frac{{{}}}{{{}}}",
            self.poly_with(r.numer(), true),
            self.poly_with(r.denom(), true)
        )
    }

    pub fn term(&self, t: &DiffTerm) -> String {
        let args: Vec<String> = t
            .exps
            .iter()
            .enumerate()
            .map(|(i, &e)| {
                let v = self.symbols.name(i);
                if e == 0 {
                    v.to_string()
                } else {
                    format!("{v}+{e}")
                }
            })
            .collect();
        format!("{}({})", self.functions[t.func], args.join(","))
    }

    /// Terms in ranking-descending order, then the constant.
    pub fn diff_poly(&self, p: &DiffPoly, r: &Ranking) -> String {
        self.diff_poly_with(p, r, false)
    }

    pub fn diff_poly_latex(&self, p: &DiffPoly, r: &Ranking) -> String {
        self.diff_poly_with(p, r, true)
    }

    fn diff_poly_with(&self, p: &DiffPoly, r: &Ranking, latex: bool) -> String {
        if p.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        let mut first = true;
        let mut push = |neg: bool, body: String| {
            if first {
                if neg {
                    out.push('-');
                }
                first = false;
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        };
        for (t, c) in p.sorted_terms(r) {
            let (neg, c) = display_sign(c);
            let term = self.term(t);
            let body = if c.is_one() {
                term
            } else if latex {
                format!("{} \\, {term}", self.coeff_latex(&c))
            } else {
                format!("{}*{term}", self.coeff_text(&c))
            };
            push(neg, body);
        }
        if !p.constant().is_zero() {
            let (neg, c) = display_sign(p.constant());
            let body = if latex {
                self.ratfun_latex(&c)
            } else {
                self.coeff_text(&c)
            };
            push(neg, body);
        }
        out
    }

    fn coeff_text(&self, c: &RatFun) -> String {
        if c.denom().is_one() {
            return self.poly_factor(c.numer(), false);
        }
        self.ratfun(c)
    }

    fn coeff_latex(&self, c: &RatFun) -> String {
        if c.denom().is_one() {
            return self.poly_factor(c.numer(), true);
        }
        self.ratfun_latex(c)
    }

    fn factored_poly(&self, f: &FactoredPoly, latex: bool) -> (bool, String) {
        let neg = f.unit.is_negative();
        let unit: BigInt = f.unit.abs();
        let mut parts = Vec::new();
        if !unit.is_one() || f.factors.is_empty() {
            parts.push(unit.to_string());
        }
        for (p, m) in &f.factors {
            let base = self.poly_factor(p, latex);
            parts.push(match (*m, latex) {
                (1, _) => base,
                (_, false) => format!("{base}^{m}"),
                (_, true) => format!("{base}^{{{m}}}"),
            });
        }
        (neg, parts.join(if latex { " " } else { "*" }))
    }

    /// A factored rational function, e.g. `-(k+1)*(d-k)/(q2^3*n)`.
    pub fn factored(&self, f: &FactoredRatFun) -> String {
        let (nneg, num) = self.factored_poly(&f.numer, false);
        let (dneg, den) = self.factored_poly(&f.denom, false);
        let sign = if nneg != dneg { "-" } else { "" };
        if den == "1" {
            return format!("{sign}{num}");
        }
        let den = if f.denom.factors.len() == 1
            && f.denom.unit.abs().is_one()
            && f.denom.factors[0].1 == 1
        {
            den
        } else {
            format!("({den})")
        };
        format!("{sign}{num}/{den}")
    }

    pub fn factored_latex(&self, f: &FactoredRatFun) -> String {
        let (nneg, num) = self.factored_poly(&f.numer, true);
        let (dneg, den) = self.factored_poly(&f.denom, true);
        let sign = if nneg != dneg { "-" } else { "" };
        if den == "1" {
            return format!("{sign}{num}");
        }
        format!("{sign}\\frac{{{num}}}{{{den}}}")
    }

    /// Machine-readable form; `expression` parses back to `p`.
    pub fn diff_poly_json(&self, p: &DiffPoly, r: &Ranking) -> Value {
        let terms: Vec<Value> = p
            .sorted_terms(r)
            .into_iter()
            .map(|(t, c)| {
                json!({
                    "function": self.functions[t.func],
                    "shift": t.exps.to_vec(),
                    "term": self.term(t),
                    "coefficient": self.ratfun(c),
                })
            })
            .collect();
        json!({
            "expression": self.diff_poly(p, r),
            "terms": terms,
            "constant": self.ratfun(p.constant()),
        })
    }

    /// `p` in the requested format; JSON comes out pretty-printed.
    pub fn diff_poly_as(&self, p: &DiffPoly, r: &Ranking, format: Format) -> String {
        match format {
            Format::Text => self.diff_poly(p, r),
            Format::Latex => self.diff_poly_latex(p, r),
            Format::Json => format!("{:#}", self.diff_poly_json(p, r)),
        }
    }

    /// `target = c1*t1 + ...` followed by the master list on its own line.
    pub fn report(&self, rep: &ReductionReport, r: &Ranking, format: Format) -> String {
        if format == Format::Json {
            return format!("{:#}", self.report_json(rep, r));
        }
        let latex = format == Format::Latex;
        let mut rhs = Vec::new();
        for (i, (t, c)) in rep.combination.iter().enumerate() {
            let coeff = match &rep.factored {
                Some(fs) if latex => self.factored_latex(&fs[i]),
                Some(fs) => self.factored(&fs[i]),
                None if latex => self.ratfun_latex(c),
                None => self.ratfun(c),
            };
            rhs.push(match (c.is_one(), latex) {
                (true, _) => self.term(t),
                (false, true) => format!("{coeff} \\, {}", self.term(t)),
                (false, false) => format!("({coeff})*{}", self.term(t)),
            });
        }
        if !rep.constant.is_zero() {
            rhs.push(if latex {
                self.ratfun_latex(&rep.constant)
            } else {
                format!("({})", self.ratfun(&rep.constant))
            });
        }
        let rhs = if rhs.is_empty() {
            "0".to_string()
        } else {
            rhs.join(" + ")
        };
        format!(
            "{} = {rhs}\nmasters: {}",
            self.term(&rep.target),
            self.terms_list(&rep.masters)
        )
    }

    pub fn report_json(&self, rep: &ReductionReport, r: &Ranking) -> Value {
        let combination: Vec<Value> = rep
            .combination
            .iter()
            .enumerate()
            .map(|(i, (t, c))| {
                let mut v = json!({ "term": self.term(t), "coefficient": self.ratfun(c) });
                if let Some(fs) = &rep.factored {
                    v["factored"] = json!(self.factored(&fs[i]));
                }
                v
            })
            .collect();
        json!({
            "target": self.term(&rep.target),
            "normal_form": self.diff_poly_json(&rep.normal_form(), r),
            "combination": combination,
            "masters": rep.masters.iter().map(|t| self.term(t)).collect::<Vec<_>>(),
        })
    }

    pub fn terms_list(&self, ts: &[DiffTerm]) -> String {
        let parts: Vec<String> = ts.iter().map(|t| self.term(t)).collect();
        format!("[{}]", parts.join(", "))
    }
}

fn is_atom(p: &MultiPoly) -> bool {
    p.len() == 1 && {
        let (e, c) = &p.terms()[0];
        (c.is_one() && e.iter().sum::<u32>() == 1) || e.iter().all(|&x| x == 0)
    }
}

/// Pulls a minus sign out of `c` when every numerator coefficient is negative.
fn display_sign(c: &RatFun) -> (bool, RatFun) {
    if c.numer().terms().iter().all(|(_, a)| a.is_negative()) {
        (true, -c.clone())
    } else {
        (false, c.clone())
    }
}

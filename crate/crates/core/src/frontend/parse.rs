use crate::diff::{DiffPoly, DiffTerm};
use crate::error::{Error, Result};
use crate::scalar::{RatFun, SymbolTable};

/// Names visible to the parser.
#[derive(Clone, Copy, Debug)]
pub struct Scope<'a> {
    pub symbols: &'a SymbolTable,
    pub functions: &'a [String],
}

impl<'a> Scope<'a> {
    pub fn new(symbols: &'a SymbolTable, functions: &'a [String]) -> Self {
        Self { symbols, functions }
    }

    fn function_index(&self, name: &str) -> Option<usize> {
        self.functions.iter().position(|f| f == name)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(num_bigint::BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>> {
    let mut out = Vec::new();
    let bytes = src.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n = src[start..i].parse().expect("digits");
            out.push((Tok::Int(n), start + 1));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(src[start..i].to_string()), start + 1));
        } else if "+-*/^(),=".contains(c) {
            out.push((Tok::Op(c), i + 1));
            i += 1;
        } else {
            return Err(Error::Parse {
                pos: i + 1,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

/// Intermediate value: a scalar coefficient or a linear difference expression.
enum Val {
    Scalar(RatFun),
    Lin(DiffPoly),
}

impl Val {
    fn into_poly(self) -> DiffPoly {
        match self {
            Val::Scalar(c) => DiffPoly::constant_poly(c),
            Val::Lin(p) => p,
        }
    }
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    scope: Scope<'a>,
    // when set, identifiers outside the symbol table in function arguments
    // turn the argument into a wildcard
    wildcards: bool,
}

/// A function application inside a boundary pattern; `None` marks a wildcard
/// argument.
pub(crate) type PatternApp = (usize, Vec<Option<u32>>);

impl<'a> Parser<'a> {
    fn new(src: &str, scope: Scope<'a>) -> Result<Self> {
        Ok(Self {
            toks: tokenize(src)?,
            pos: 0,
            end: src.len() + 1,
            scope,
            wildcards: false,
        })
    }

    fn nsyms(&self) -> usize {
        self.scope.symbols.len()
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.1)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.here(),
            msg: msg.into(),
        })
    }

    fn peek_op(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some((Tok::Op(c), _)) => Some(*c),
            _ => None,
        }
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek_op() == Some(op) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, op: char) -> Result<()> {
        if self.eat(op) {
            Ok(())
        } else {
            self.err(format!("expected `{op}`"))
        }
    }

    fn at_end(&self) -> bool {
        self.pos == self.toks.len()
    }

    fn expr(&mut self) -> Result<Val> {
        let mut acc = self.term()?;
        loop {
            let sign = if self.eat('+') {
                1
            } else if self.eat('-') {
                -1
            } else {
                return Ok(acc);
            };
            let rhs = self.term()?;
            acc = add(acc, rhs, sign);
        }
    }

    fn term(&mut self) -> Result<Val> {
        let mut acc = self.unary()?;
        loop {
            let start = self.here();
            if self.eat('*') {
                let rhs = self.unary()?;
                acc = match (acc, rhs) {
                    (Val::Scalar(a), Val::Scalar(b)) => Val::Scalar(&a * &b),
                    (Val::Scalar(a), Val::Lin(p)) | (Val::Lin(p), Val::Scalar(a)) => {
                        Val::Lin(p.scale(&a))
                    }
                    (Val::Lin(_), Val::Lin(_)) => {
                        return Err(Error::Parse {
                            pos: start,
                            msg: "product of two unknown terms; equations must be linear".into(),
                        })
                    }
                };
            } else if self.eat('/') {
                let rhs = self.unary()?;
                let Val::Scalar(b) = rhs else {
                    return Err(Error::Parse {
                        pos: start,
                        msg: "division by an unknown term; equations must be linear".into(),
                    });
                };
                if b.is_zero() {
                    return Err(Error::Parse {
                        pos: start,
                        msg: "division by zero".into(),
                    });
                }
                let inv = b.inv()?;
                acc = match acc {
                    Val::Scalar(a) => Val::Scalar(&a * &inv),
                    Val::Lin(p) => Val::Lin(p.scale(&inv)),
                };
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Val> {
        if self.eat('-') {
            let v = self.unary()?;
            return Ok(match v {
                Val::Scalar(a) => Val::Scalar(-a),
                Val::Lin(p) => Val::Lin(p.scale(&RatFun::from_int(self.nsyms(), -1))),
            });
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Val> {
        let base = self.atom()?;
        let start = self.here();
        if !self.eat('^') {
            return Ok(base);
        }
        let exp = self.unary()?;
        let n = match &exp {
            Val::Scalar(e) => integer_value(e),
            Val::Lin(_) => None,
        };
        let Some(n) = n else {
            return Err(Error::Parse {
                pos: start,
                msg: "exponent must be an integer".into(),
            });
        };
        let Val::Scalar(b) = base else {
            return Err(Error::Parse {
                pos: start,
                msg: "power of an unknown term; equations must be linear".into(),
            });
        };
        let e = u32::try_from(n.unsigned_abs()).map_err(|_| Error::Parse {
            pos: start,
            msg: "exponent too large".into(),
        })?;
        let p = b.pow(e);
        if n < 0 {
            return Ok(Val::Scalar(p.inv().map_err(|_| Error::Parse {
                pos: start,
                msg: "division by zero".into(),
            })?));
        }
        Ok(Val::Scalar(p))
    }

    fn atom(&mut self) -> Result<Val> {
        let Some((tok, _)) = self.toks.get(self.pos).cloned() else {
            return self.err("unexpected end of input");
        };
        match tok {
            Tok::Int(n) => {
                self.pos += 1;
                Ok(Val::Scalar(RatFun::from_int(self.nsyms(), n)))
            }
            Tok::Op('(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            Tok::Op(c) => self.err(format!("unexpected `{c}`")),
            Tok::Ident(name) => {
                self.pos += 1;
                if let Some(f) = self.scope.function_index(&name) {
                    let args = self.application(&name)?;
                    let exps = args.into_iter().map(|a| a.expect("no wildcards here"));
                    let t = DiffTerm::new(f, exps);
                    return Ok(Val::Lin(DiffPoly::term(t, RatFun::one(self.nsyms()))));
                }
                match self.scope.symbols.index_of(&name) {
                    Some(i) => Ok(Val::Scalar(RatFun::var(self.nsyms(), i))),
                    None => Err(Error::UnknownSymbol(name)),
                }
            }
        }
    }

    /// Parses `( arg, ... )` after a function name; argument `i` must be
    /// variable `i` plus a nonnegative integer.
    fn application(&mut self, name: &str) -> Result<Vec<Option<u32>>> {
        self.expect('(')?;
        let nvars = self.scope.symbols.num_variables();
        let mut out = Vec::new();
        loop {
            let start = self.pos;
            let at = self.here();
            if self.wildcards && self.argument_has_wildcard() {
                self.skip_argument();
                out.push(None);
            } else {
                let idx = out.len();
                let v = self.expr()?;
                if idx < nvars {
                    out.push(Some(self.shift_of(v, idx, name, at)?));
                } else {
                    out.push(Some(0));
                }
            }
            debug_assert!(self.pos > start);
            if self.eat(',') {
                continue;
            }
            self.expect(')')?;
            break;
        }
        if out.len() != nvars {
            return Err(Error::Arity {
                func: name.to_string(),
                expected: nvars,
                found: out.len(),
            });
        }
        Ok(out)
    }

    fn shift_of(&self, v: Val, idx: usize, name: &str, at: usize) -> Result<u32> {
        let var = self.scope.symbols.name(idx);
        let bad = || Error::Parse {
            pos: at,
            msg: format!(
                "argument {} of `{name}` must be `{var}` plus an integer",
                idx + 1
            ),
        };
        let Val::Scalar(a) = v else { return Err(bad()) };
        let diff = &a - &RatFun::var(self.nsyms(), idx);
        let c = integer_value(&diff).ok_or_else(bad)?;
        if c < 0 {
            return Err(Error::NegativeShift(format!("{name}(... {var}{c} ...)")));
        }
        u32::try_from(c).map_err(|_| bad())
    }

    fn argument_end(&self) -> usize {
        let mut depth = 0usize;
        let mut i = self.pos;
        while i < self.toks.len() {
            match self.toks[i].0 {
                Tok::Op('(') => depth += 1,
                Tok::Op(')') if depth == 0 => break,
                Tok::Op(')') => depth -= 1,
                Tok::Op(',') if depth == 0 => break,
                _ => {}
            }
            i += 1;
        }
        i
    }

    fn argument_has_wildcard(&self) -> bool {
        self.toks[self.pos..self.argument_end()]
            .iter()
            .any(|(t, _)| match t {
                Tok::Ident(s) => self.scope.symbols.index_of(s).is_none(),
                _ => false,
            })
    }

    fn skip_argument(&mut self) {
        self.pos = self.argument_end();
    }
}

fn add(a: Val, b: Val, sign: i64) -> Val {
    match (a, b) {
        (Val::Scalar(x), Val::Scalar(y)) => Val::Scalar(if sign > 0 { &x + &y } else { &x - &y }),
        (a, b) => {
            let mut p = a.into_poly();
            let q = b.into_poly();
            let c = RatFun::from_int(q.nsyms(), sign);
            p.add_scaled(&c, &q);
            Val::Lin(p)
        }
    }
}

fn integer_value(r: &RatFun) -> Option<i64> {
    if !r.is_constant() || !r.denom().is_one() {
        return None;
    }
    let v = r.numer().constant_value().unwrap_or_default();
    i64::try_from(v).ok()
}

/// Parses a linear difference expression; `lhs = rhs` means `lhs - rhs`.
pub fn parse_expression(text: &str, scope: Scope<'_>) -> Result<DiffPoly> {
    let mut p = Parser::new(text, scope)?;
    if p.at_end() {
        return p.err("empty expression");
    }
    let lhs = p.expr()?;
    let v = if p.eat('=') {
        let rhs = p.expr()?;
        add(lhs, rhs, -1)
    } else {
        lhs
    };
    if !p.at_end() {
        return p.err("unexpected trailing input");
    }
    Ok(v.into_poly())
}

/// Parses a scalar expression over the declared symbols.
pub fn parse_scalar(text: &str, scope: Scope<'_>) -> Result<RatFun> {
    let mut p = Parser::new(text, scope)?;
    if p.at_end() {
        return p.err("empty expression");
    }
    let v = p.expr()?;
    if !p.at_end() {
        return p.err("unexpected trailing input");
    }
    match v {
        Val::Scalar(c) => Ok(c),
        Val::Lin(_) => Err(Error::Parse {
            pos: 1,
            msg: "expected a coefficient, found an unknown term".into(),
        }),
    }
}

/// Parses a single application such as `f(k+j,n)` or `f(k+j,n)=0`, where
/// undeclared identifiers in an argument make it a wildcard.
pub(crate) fn parse_pattern_app(text: &str, scope: Scope<'_>) -> Result<PatternApp> {
    let mut p = Parser::new(text, scope)?;
    p.wildcards = true;
    let name = match p.toks.first() {
        Some((Tok::Ident(name), _)) => name.clone(),
        _ => return p.err("expected a function application"),
    };
    let Some(f) = scope.function_index(&name) else {
        return Err(Error::UnknownSymbol(name));
    };
    p.pos = 1;
    let args = p.application(&name)?;
    if p.eat('=') {
        let at = p.here();
        let rhs = p.expr()?;
        let zero = matches!(&rhs, Val::Scalar(c) if c.is_zero());
        if !zero {
            return Err(Error::Parse {
                pos: at,
                msg: "boundary conditions must have the form `f(...) = 0`".into(),
            });
        }
    }
    if !p.at_end() {
        return p.err("unexpected trailing input");
    }
    Ok((f, args))
}

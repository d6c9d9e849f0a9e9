//! The expression mini-language used in background-definition files.
//!
//! Fixed arithmetic grammar over a chart's variables with two builtin
//! functions (`cos`, `sin`). Precedence: `^` > unary `-` > `*` `/` > `+`
//! `-`. Exponents are nonnegative integer literals; division is only by
//! units (rational constants times registered denominator factors);
//! trigonometric arguments are rational multiples of the chart's periodic
//! variable.

use crate::chart::Chart;
use crate::poly::Poly;
use crate::ring::RingElem;
use crate::scalar::Rat;
use num_traits::{One, Signed, Zero};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExprError {
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("unknown variable `{name}` at {line}:{col}")]
    UnknownVariable { name: String, line: usize, col: usize },
    #[error("illegal denominator at {line}:{col}: not a product of registered factors")]
    IllegalDenominator { line: usize, col: usize },
    #[error("illegal trigonometric frequency at {line}:{col}: not an integer multiple of the base frequency")]
    IllegalFrequency { line: usize, col: usize },
}

/// Source span as (line, column), 1-based.
pub type Span = (usize, usize);

#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    Number(Rat),
    Var(usize),
    Add(Box<ExprAst>, Box<ExprAst>),
    Sub(Box<ExprAst>, Box<ExprAst>),
    Mul(Box<ExprAst>, Box<ExprAst>),
    Div(Box<ExprAst>, Box<ExprAst>),
    Pow(Box<ExprAst>, u32),
    Neg(Box<ExprAst>),
    Cos(Box<ExprAst>),
    Sin(Box<ExprAst>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExprAst {
    pub kind: ExprKind,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(u64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexer {
    toks: Vec<(Tok, Span)>,
    pos: usize,
    end: Span,
}

fn lex(text: &str) -> Result<Lexer, ExprError> {
    let mut toks = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let span = (line, col);
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            ' ' | '\t' | '\r' => {
                chars.next();
                col += 1;
            }
            '0'..='9' => {
                let mut n: u64 = 0;
                while let Some(&d) = chars.peek() {
                    if let Some(v) = d.to_digit(10) {
                        n = n
                            .checked_mul(10)
                            .and_then(|n| n.checked_add(v as u64))
                            .ok_or_else(|| ExprError::Syntax {
                                line,
                                col,
                                msg: "integer literal too large".into(),
                            })?;
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                toks.push((Tok::Num(n), span));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        s.push(d);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                toks.push((Tok::Ident(s), span));
            }
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                chars.next();
                col += 1;
                let t = match c {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    _ => Tok::RParen,
                };
                toks.push((t, span));
            }
            other => {
                return Err(ExprError::Syntax {
                    line,
                    col,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(Lexer {
        toks,
        pos: 0,
        end: (line, col),
    })
}

impl Lexer {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn span(&self) -> Span {
        self.toks.get(self.pos).map(|&(_, s)| s).unwrap_or(self.end)
    }

    fn next(&mut self) -> Option<(Tok, Span)> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn err(&self, msg: impl Into<String>) -> ExprError {
        let (line, col) = self.span();
        ExprError::Syntax {
            line,
            col,
            msg: msg.into(),
        }
    }
}

/// Parse source text into the checked exact value it denotes.
pub fn parse(text: &str, chart: &Arc<Chart>) -> Result<RingElem, ExprError> {
    let ast = parse_ast(text, chart)?;
    lower(&ast, chart)
}

/// Parse source text into an AST without lowering.
pub fn parse_ast(text: &str, chart: &Arc<Chart>) -> Result<ExprAst, ExprError> {
    let mut lx = lex(text)?;
    let e = p_expr(&mut lx, chart)?;
    if lx.peek().is_some() {
        return Err(lx.err("trailing input"));
    }
    Ok(e)
}

fn p_expr(lx: &mut Lexer, chart: &Arc<Chart>) -> Result<ExprAst, ExprError> {
    let mut lhs = p_term(lx, chart)?;
    loop {
        match lx.peek() {
            Some(Tok::Plus) => {
                let span = lx.span();
                lx.next();
                let rhs = p_term(lx, chart)?;
                lhs = ExprAst {
                    kind: ExprKind::Add(Box::new(lhs), Box::new(rhs)),
                    span,
                };
            }
            Some(Tok::Minus) => {
                let span = lx.span();
                lx.next();
                let rhs = p_term(lx, chart)?;
                lhs = ExprAst {
                    kind: ExprKind::Sub(Box::new(lhs), Box::new(rhs)),
                    span,
                };
            }
            _ => return Ok(lhs),
        }
    }
}

fn p_term(lx: &mut Lexer, chart: &Arc<Chart>) -> Result<ExprAst, ExprError> {
    let mut lhs = p_unary(lx, chart)?;
    loop {
        match lx.peek() {
            Some(Tok::Star) => {
                let span = lx.span();
                lx.next();
                let rhs = p_unary(lx, chart)?;
                lhs = ExprAst {
                    kind: ExprKind::Mul(Box::new(lhs), Box::new(rhs)),
                    span,
                };
            }
            Some(Tok::Slash) => {
                let span = lx.span();
                lx.next();
                let rhs = p_unary(lx, chart)?;
                lhs = ExprAst {
                    kind: ExprKind::Div(Box::new(lhs), Box::new(rhs)),
                    span,
                };
            }
            _ => return Ok(lhs),
        }
    }
}

fn p_unary(lx: &mut Lexer, chart: &Arc<Chart>) -> Result<ExprAst, ExprError> {
    if let Some(Tok::Minus) = lx.peek() {
        let span = lx.span();
        lx.next();
        let inner = p_unary(lx, chart)?;
        return Ok(ExprAst {
            kind: ExprKind::Neg(Box::new(inner)),
            span,
        });
    }
    p_power(lx, chart)
}

fn p_power(lx: &mut Lexer, chart: &Arc<Chart>) -> Result<ExprAst, ExprError> {
    let base = p_atom(lx, chart)?;
    if let Some(Tok::Caret) = lx.peek() {
        let span = lx.span();
        lx.next();
        match lx.next() {
            Some((Tok::Num(k), _)) => {
                let k = u32::try_from(k).map_err(|_| ExprError::Syntax {
                    line: span.0,
                    col: span.1,
                    msg: "exponent too large".into(),
                })?;
                return Ok(ExprAst {
                    kind: ExprKind::Pow(Box::new(base), k),
                    span,
                });
            }
            _ => {
                return Err(ExprError::Syntax {
                    line: span.0,
                    col: span.1,
                    msg: "exponent must be a nonnegative integer literal".into(),
                })
            }
        }
    }
    Ok(base)
}

fn p_atom(lx: &mut Lexer, chart: &Arc<Chart>) -> Result<ExprAst, ExprError> {
    match lx.next() {
        Some((Tok::Num(n), span)) => Ok(ExprAst {
            kind: ExprKind::Number(Rat::from_integer(n.into())),
            span,
        }),
        Some((Tok::LParen, span)) => {
            let e = p_expr(lx, chart)?;
            match lx.next() {
                Some((Tok::RParen, _)) => Ok(e),
                _ => Err(ExprError::Syntax {
                    line: span.0,
                    col: span.1,
                    msg: "unclosed parenthesis".into(),
                }),
            }
        }
        Some((Tok::Ident(name), span)) => {
            if name == "cos" || name == "sin" {
                match lx.next() {
                    Some((Tok::LParen, _)) => {}
                    _ => {
                        return Err(ExprError::Syntax {
                            line: span.0,
                            col: span.1,
                            msg: format!("`{name}` requires a parenthesized argument"),
                        })
                    }
                }
                let arg = p_expr(lx, chart)?;
                match lx.next() {
                    Some((Tok::RParen, _)) => {}
                    _ => {
                        return Err(ExprError::Syntax {
                            line: span.0,
                            col: span.1,
                            msg: "unclosed function argument".into(),
                        })
                    }
                }
                let kind = if name == "cos" {
                    ExprKind::Cos(Box::new(arg))
                } else {
                    ExprKind::Sin(Box::new(arg))
                };
                return Ok(ExprAst { kind, span });
            }
            match chart.var_index(&name) {
                Some(i) => Ok(ExprAst {
                    kind: ExprKind::Var(i),
                    span,
                }),
                None => Err(ExprError::UnknownVariable {
                    name,
                    line: span.0,
                    col: span.1,
                }),
            }
        }
        Some((_, span)) => Err(ExprError::Syntax {
            line: span.0,
            col: span.1,
            msg: "expected a number, variable or parenthesized expression".into(),
        }),
        None => Err(lx.err("unexpected end of input")),
    }
}

fn lower(ast: &ExprAst, chart: &Arc<Chart>) -> Result<RingElem, ExprError> {
    let (line, col) = ast.span;
    match &ast.kind {
        ExprKind::Number(r) => Ok(RingElem::constant(chart, r.clone())),
        ExprKind::Var(i) => Ok(RingElem::var(chart, *i)),
        ExprKind::Add(a, b) => Ok(&lower(a, chart)? + &lower(b, chart)?),
        ExprKind::Sub(a, b) => Ok(&lower(a, chart)? - &lower(b, chart)?),
        ExprKind::Mul(a, b) => Ok(&lower(a, chart)? * &lower(b, chart)?),
        ExprKind::Div(a, b) => {
            let num = lower(a, chart)?;
            let den = lower(b, chart)?;
            num.checked_div(&den)
                .map_err(|_| ExprError::IllegalDenominator { line, col })
        }
        ExprKind::Pow(a, k) => Ok(lower(a, chart)?.pow(*k)),
        ExprKind::Neg(a) => Ok(-&lower(a, chart)?),
        ExprKind::Cos(a) | ExprKind::Sin(a) => {
            let is_cos = matches!(ast.kind, ExprKind::Cos(_));
            let arg = lower(a, chart)?;
            let periodic = chart
                .periodic()
                .ok_or(ExprError::IllegalFrequency { line, col })?;
            // argument must be (rational)·(periodic variable) or zero
            let freq: Rat = match arg.as_poly() {
                Some(p) if p.is_zero() => Rat::zero(),
                Some(p) => match p.as_linear_monomial() {
                    Some((v, c)) if v == periodic.var => c,
                    _ => return Err(ExprError::IllegalFrequency { line, col }),
                },
                None => return Err(ExprError::IllegalFrequency { line, col }),
            };
            let ratio = freq / periodic.base_freq.clone();
            if !ratio.is_integer() {
                return Err(ExprError::IllegalFrequency { line, col });
            }
            let signed: i64 = {
                let n = ratio.to_integer();
                i64::try_from(n).map_err(|_| ExprError::IllegalFrequency { line, col })?
            };
            let k = signed.unsigned_abs() as u32;
            let e = if is_cos {
                RingElem::cos_k(chart, k)
            } else {
                RingElem::sin_k(chart, k)
            }
            .map_err(|_| ExprError::IllegalFrequency { line, col })?;
            if !is_cos && signed < 0 {
                Ok(-&e)
            } else {
                Ok(e)
            }
        }
    }
}

fn emit_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn emit_poly(p: &Poly<Rat>, chart: &Chart) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    let mut first = true;
    // highest term first for readability; BTreeMap iterates ascending
    for (exps, coeff) in p.terms().collect::<Vec<_>>().into_iter().rev() {
        let neg = coeff.is_negative();
        let mag = coeff.abs();
        if first {
            if neg {
                out.push('-');
            }
            first = false;
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let mut parts: Vec<String> = Vec::new();
        if !mag.is_one() || exps.iter().all(|&k| k == 0) {
            parts.push(emit_rat(&mag));
        }
        for (i, &k) in exps.iter().enumerate() {
            if k == 1 {
                parts.push(chart.var_name(i).to_string());
            } else if k > 1 {
                parts.push(format!("{}^{}", chart.var_name(i), k));
            }
        }
        out.push_str(&parts.join("*"));
    }
    out
}

fn is_single_product(p: &Poly<Rat>) -> bool {
    p.num_terms() == 1 && !p.as_constant().map(|c| c.is_negative()).unwrap_or(false)
}

/// Canonical text form; `parse(emit(a)) == a`.
pub fn emit(a: &RingElem) -> String {
    let chart = a.chart();
    if a.is_zero() {
        return "0".to_string();
    }
    let mut num_parts: Vec<String> = Vec::new();
    for (k, cos, sin) in a.waves_iter() {
        if k == 0 {
            if !cos.is_zero() {
                num_parts.push(emit_poly(cos, chart));
            }
            continue;
        }
        let p = chart.periodic().expect("wave without periodic variable");
        let freq = Rat::from_integer(k.into()) * p.base_freq.clone();
        let angle = format!("({})*{}", emit_rat(&freq), chart.var_name(p.var));
        for (poly, name) in [(cos, "cos"), (sin, "sin")] {
            if poly.is_zero() {
                continue;
            }
            if poly.as_constant().map(|c| c.is_one()).unwrap_or(false) {
                num_parts.push(format!("{name}({angle})"));
            } else if is_single_product(poly) {
                num_parts.push(format!("{}*{name}({angle})", emit_poly(poly, chart)));
            } else {
                num_parts.push(format!("({})*{name}({angle})", emit_poly(poly, chart)));
            }
        }
    }
    let numerator = num_parts.join(" + ");
    let den = a.den_exponents();
    if den.iter().all(|&e| e == 0) {
        return numerator;
    }
    let mut den_parts: Vec<String> = Vec::new();
    for (fi, (_, fpoly)) in chart.denominators().iter().enumerate() {
        let e = den[fi];
        if e == 0 {
            continue;
        }
        let base = emit_poly(fpoly, chart);
        let base = if is_single_product(fpoly) && fpoly.num_terms() == 1 {
            base
        } else {
            format!("({})", base)
        };
        if e == 1 {
            den_parts.push(base);
        } else {
            den_parts.push(format!("{}^{}", base, e));
        }
    }
    format!("({})/({})", numerator, den_parts.join("*"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::Chart;
    use crate::scalar::rat;

    fn cw_chart() -> Arc<Chart> {
        let vars: Vec<String> = ["xp", "xm", "x1", "x2", "x3", "x4", "x5", "x6", "x7", "x8", "x9"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        Chart::new(vars).with_periodic("xm", rat(1, 2)).shared()
    }

    #[test]
    fn constant_folding() {
        let ch = cw_chart();
        let e = parse("2*xm^0 + 3", &ch).unwrap();
        assert_eq!(e.as_rat(), Some(rat(5, 1)));
    }

    #[test]
    fn quadratic_block() {
        let ch = cw_chart();
        let e = parse("-(x1^2 + (1/4)*x4^2)", &ch).unwrap();
        let x1 = RingElem::var(&ch, 2);
        let x4 = RingElem::var(&ch, 5);
        let expect = -&(&(&x1 * &x1) + &(&x4 * &x4).scale(&rat(1, 4)));
        assert_eq!(e, expect);
    }

    #[test]
    fn illegal_frequency() {
        let ch = cw_chart();
        let err = parse("cos((1/3)*xm)", &ch).unwrap_err();
        assert!(matches!(err, ExprError::IllegalFrequency { .. }));
        // ½ and 1 are fine with ω₀ = ½
        assert!(parse("cos((1/2)*xm)", &ch).is_ok());
        assert!(parse("sin(1*xm)", &ch).is_ok());
        // sin is odd, cos is even
        let s = parse("sin(-(1/2)*xm)", &ch).unwrap();
        assert_eq!(s, -&parse("sin((1/2)*xm)", &ch).unwrap());
        let c = parse("cos(-(1/2)*xm)", &ch).unwrap();
        assert_eq!(c, parse("cos((1/2)*xm)", &ch).unwrap());
    }

    #[test]
    fn unknown_variable_and_syntax_errors() {
        let ch = cw_chart();
        assert!(matches!(
            parse("x1 + q7", &ch),
            Err(ExprError::UnknownVariable { .. })
        ));
        assert!(matches!(parse("x1 +", &ch), Err(ExprError::Syntax { .. })));
        assert!(matches!(parse("x1^x2", &ch), Err(ExprError::Syntax { .. })));
        assert!(matches!(parse("x1 $ 2", &ch), Err(ExprError::Syntax { .. })));
    }

    #[test]
    fn illegal_denominator() {
        let ch = cw_chart();
        assert!(matches!(
            parse("1/(x1+1)", &ch),
            Err(ExprError::IllegalDenominator { .. })
        ));
        // constants are fine
        assert!(parse("x1/4", &ch).is_ok());
    }

    #[test]
    fn registered_denominator_roundtrip() {
        let vars: Vec<String> = vec!["z".into(), "t".into()];
        let z = Poly::var(2, 0);
        let ch = Chart::new(vars).with_denominator("z", z).shared();
        let e = parse("(t^2 + 1)/(z^2)", &ch).unwrap();
        let back = parse(&emit(&e), &ch).unwrap();
        assert_eq!(e, back);
    }

    #[test]
    fn precedence_pow_before_neg() {
        let ch = cw_chart();
        let a = parse("-x1^2", &ch).unwrap();
        let x1 = RingElem::var(&ch, 2);
        assert_eq!(a, -&(&x1 * &x1));
    }

    #[test]
    fn emit_simple() {
        let ch = cw_chart();
        let x1 = RingElem::var(&ch, 2);
        let e = &(&x1 * &x1) - &RingElem::one(&ch);
        assert_eq!(emit(&e), "x1^2 - 1");
        assert_eq!(emit(&RingElem::zero(&ch)), "0");
        let back = parse(&emit(&e), &ch).unwrap();
        assert_eq!(e, back);
    }
}

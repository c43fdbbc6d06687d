//! A small expression language over the engine.
//!
//! ```text
//! sum     := product (('+' | '-') product)*
//! product := wedge (('*' | '/') wedge)*
//! wedge   := unary ('^' (['-'] INT | unary))*
//! unary   := '-' unary
//!          | ('d' | 'star' | 'dagger' | 'int') '(' sum ')'
//!          | 'iota' '(' INT ')' '(' sum ')'
//!          | 'lie' '(' sum ')' '(' sum ')'
//!          | atom
//! atom    := x0..x3 | e0..e4 | wave(k0, k1, k2, k3) | NUMBER | i | kappa
//!          | P0..P3 | E | T | box | N1..N3 | R1..R3 | xi_a | chi_a
//!          | NAME | '(' sum ')'
//! ```
//!
//! `a ^ n` with an integer `n` is a power; otherwise `^` is the wedge
//! product. `*` is the algebra product: wedge between forms, composition
//! between operators and the (covariant) action of an operator on a form.

use std::collections::BTreeMap;
use std::fmt;

use kforms_core::kpoincare::{casimir, chi, twist, xi, OpWord};
use kforms_core::scalars::{Gaussian, Rational};
use kforms_core::{Calculus, ExactScalar, Form, OperatorElement, PolyElement, WaveElement};
use num_complex::Complex64;
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum ExprError {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("type error in `{context}`: expected {expected}, found {found}")]
    Type { expected: String, found: String, context: String },
    #[error("unbound name `{0}`")]
    Unbound(String),
    #[error("{message} (hint: {hint})")]
    Backend { message: String, hint: String },
    #[error(transparent)]
    Engine(#[from] kforms_core::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OpLit {
    P(u8),
    E,
    T,
    Box,
    N(u8),
    R(u8),
    Xi(u8),
    Chi(u8),
}

impl fmt::Display for OpLit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpLit::P(j) => write!(f, "P{j}"),
            OpLit::E => f.write_str("E"),
            OpLit::T => f.write_str("T"),
            OpLit::Box => f.write_str("box"),
            OpLit::N(j) => write!(f, "N{j}"),
            OpLit::R(j) => write!(f, "R{j}"),
            OpLit::Xi(a) => write!(f, "xi_{a}"),
            OpLit::Chi(a) => write!(f, "chi_{a}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Unary {
    D,
    Star,
    Dagger,
    Int,
    Iota(u8),
    Lie(Box<Ast>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Ast {
    Coord(u8),
    Basis(u8),
    Wave([f64; 4]),
    Number(Rational),
    I,
    Kappa,
    Op(OpLit),
    Name(String),
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>),
    Wedge(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, i32),
    Apply(Unary, Box<Ast>),
}

const SUM: u8 = 1;
const PRODUCT: u8 = 2;
const WEDGE: u8 = 3;
const UNARY: u8 = 4;

impl Ast {
    fn precedence(&self) -> u8 {
        match self {
            Ast::Add(..) | Ast::Sub(..) => SUM,
            Ast::Mul(..) | Ast::Div(..) => PRODUCT,
            Ast::Wedge(..) | Ast::Pow(..) => WEDGE,
            Ast::Neg(_) => UNARY,
            _ => UNARY + 1,
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            f.write_str("(")?;
            self.write(f, 0)?;
            return f.write_str(")");
        }
        let bin = |f: &mut fmt::Formatter<'_>, a: &Ast, op: &str, b: &Ast, p: u8| {
            a.write(f, p)?;
            f.write_str(op)?;
            b.write(f, p + 1)
        };
        match self {
            Ast::Coord(m) => write!(f, "x{m}"),
            Ast::Basis(a) => write!(f, "e{a}"),
            Ast::Wave(k) => write!(f, "wave({}, {}, {}, {})", k[0], k[1], k[2], k[3]),
            Ast::Number(r) => f.write_str(&decimal(r)),
            Ast::I => f.write_str("i"),
            Ast::Kappa => f.write_str("kappa"),
            Ast::Op(o) => write!(f, "{o}"),
            Ast::Name(n) => f.write_str(n),
            Ast::Neg(a) => {
                f.write_str("-")?;
                a.write(f, UNARY)
            }
            Ast::Add(a, b) => bin(f, a, " + ", b, SUM),
            Ast::Sub(a, b) => bin(f, a, " - ", b, SUM),
            Ast::Mul(a, b) => bin(f, a, " * ", b, PRODUCT),
            Ast::Div(a, b) => bin(f, a, " / ", b, PRODUCT),
            Ast::Wedge(a, b) => {
                a.write(f, WEDGE)?;
                f.write_str(" ^ ")?;
                b.write(f, UNARY)
            }
            Ast::Pow(a, n) => {
                a.write(f, WEDGE)?;
                write!(f, "^{n}")
            }
            Ast::Apply(u, a) => {
                match u {
                    Unary::D => f.write_str("d(")?,
                    Unary::Star => f.write_str("star(")?,
                    Unary::Dagger => f.write_str("dagger(")?,
                    Unary::Int => f.write_str("int(")?,
                    Unary::Iota(i) => write!(f, "iota({i})(")?,
                    Unary::Lie(h) => write!(f, "lie({h})(")?,
                }
                a.write(f, 0)?;
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for Ast {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 0)
    }
}

/// Exact decimal of a rational whose denominator divides a power of ten.
fn decimal(r: &Rational) -> String {
    if r.denom() == &1 {
        return r.numer().to_string();
    }
    let mut digits = String::new();
    let mut rem = r.numer() % r.denom();
    while !rem.is_zero() && digits.len() < 40 {
        rem *= 10;
        digits.push_str(&(rem / r.denom()).to_string());
        rem %= r.denom();
    }
    format!("{}.{}", r.numer() / r.denom(), digits)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Number(String),
    Sym(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(src: &str) -> Result<Vec<Token>, ExprError> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut k, mut line, mut column) = (0, 1, 1);
    while k < chars.len() {
        let c = chars[k];
        let (l, col) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            k += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            k += 1;
            continue;
        }
        let start = k;
        let tok = if c.is_alphabetic() || c == '_' {
            while k < chars.len() && (chars[k].is_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            Tok::Ident(chars[start..k].iter().collect())
        } else if c.is_ascii_digit() || c == '.' {
            while k < chars.len() && (chars[k].is_ascii_digit() || chars[k] == '.') {
                k += 1;
            }
            Tok::Number(chars[start..k].iter().collect())
        } else if "+-*/^(),".contains(c) || c == '∧' {
            k += 1;
            Tok::Sym(if c == '∧' { '^' } else { c })
        } else {
            return Err(ExprError::Syntax { line: l, column: col, message: format!("unexpected character `{c}`") });
        };
        column += k - start;
        out.push(Token { tok, line: l, column: col });
    }
    out.push(Token { tok: Tok::End, line, column });
    Ok(out)
}

fn parse_rational(text: &str) -> Option<Rational> {
    let (int, frac) = text.split_once('.').unwrap_or((text, ""));
    if int.is_empty() && frac.is_empty() || frac.contains('.') || frac.len() > 30 {
        return None;
    }
    let digits = format!("{int}{frac}");
    let numer: i128 = digits.parse().ok()?;
    Some(Rational::new(numer, 10i128.checked_pow(frac.len() as u32)?))
}

/// `symbolic`, a decimal or `p/q`; κ must be positive.
pub fn parse_kappa(text: &str) -> Result<Option<Rational>, String> {
    let t = text.trim();
    if t == "symbolic" {
        return Ok(None);
    }
    let q = match t.split_once('/') {
        Some((n, d)) => {
            parse_rational(n.trim()).zip(parse_rational(d.trim())).filter(|(_, d)| *d != Rational::from_integer(0)).map(|(n, d)| n / d)
        }
        None => parse_rational(t),
    };
    match q {
        Some(q) if q > Rational::from_integer(0) => Ok(Some(q)),
        _ => Err(format!("invalid κ `{text}`: expected `symbolic`, a positive decimal or p/q")),
    }
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, ahead: usize) -> &Tok {
        &self.toks[(self.pos + ahead).min(self.toks.len() - 1)].tok
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ExprError> {
        let t = &self.toks[self.pos];
        Err(ExprError::Syntax { line: t.line, column: t.column, message: message.into() })
    }

    fn expect(&mut self, c: char) -> Result<(), ExprError> {
        if *self.peek() == Tok::Sym(c) {
            self.next();
            Ok(())
        } else {
            self.error(format!("expected `{c}`"))
        }
    }

    fn sum(&mut self) -> Result<Ast, ExprError> {
        let mut lhs = self.product()?;
        loop {
            match self.peek() {
                Tok::Sym('+') => {
                    self.next();
                    lhs = Ast::Add(Box::new(lhs), Box::new(self.product()?));
                }
                Tok::Sym('-') => {
                    self.next();
                    lhs = Ast::Sub(Box::new(lhs), Box::new(self.product()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn product(&mut self) -> Result<Ast, ExprError> {
        let mut lhs = self.wedge()?;
        loop {
            match self.peek() {
                Tok::Sym('*') => {
                    self.next();
                    lhs = Ast::Mul(Box::new(lhs), Box::new(self.wedge()?));
                }
                Tok::Sym('/') => {
                    self.next();
                    lhs = Ast::Div(Box::new(lhs), Box::new(self.wedge()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn integer_ahead(&self) -> Option<(usize, bool)> {
        let is_int = |t: &Tok| matches!(t, Tok::Number(s) if s.chars().all(|c| c.is_ascii_digit()));
        match self.peek() {
            t if is_int(t) => Some((1, false)),
            Tok::Sym('-') if is_int(self.peek_at(1)) => Some((2, true)),
            _ => None,
        }
    }

    fn wedge(&mut self) -> Result<Ast, ExprError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Sym('^') {
            self.next();
            if let Some((_, negative)) = self.integer_ahead() {
                if negative {
                    self.next();
                }
                let Tok::Number(s) = self.next() else { unreachable!() };
                let n: i32 = match s.parse() {
                    Ok(n) => n,
                    Err(_) => return self.error("exponent out of range"),
                };
                lhs = Ast::Pow(Box::new(lhs), if negative { -n } else { n });
            } else {
                lhs = Ast::Wedge(Box::new(lhs), Box::new(self.unary()?));
            }
        }
        Ok(lhs)
    }

    fn index(&mut self, limit: u8) -> Result<u8, ExprError> {
        match self.peek().clone() {
            Tok::Number(s) => match s.parse::<u8>() {
                Ok(i) if i < limit => {
                    self.next();
                    Ok(i)
                }
                _ => self.error(format!("index must be below {limit}")),
            },
            _ => self.error("expected an index"),
        }
    }

    fn unary(&mut self) -> Result<Ast, ExprError> {
        if *self.peek() == Tok::Sym('-') {
            self.next();
            return Ok(Ast::Neg(Box::new(self.unary()?)));
        }
        if let Tok::Ident(name) = self.peek().clone() {
            let op = match name.as_str() {
                "d" => Some(Unary::D),
                "star" => Some(Unary::Star),
                "dagger" => Some(Unary::Dagger),
                "int" => Some(Unary::Int),
                "iota" | "lie" if *self.peek_at(1) == Tok::Sym('(') => {
                    self.next();
                    self.next();
                    let u = if name == "iota" { Unary::Iota(self.index(5)?) } else { Unary::Lie(Box::new(self.sum()?)) };
                    self.expect(')')?;
                    Some(u)
                }
                _ => None,
            };
            if let Some(u) = op {
                if matches!(u, Unary::D | Unary::Star | Unary::Dagger | Unary::Int) {
                    self.next();
                }
                self.expect('(')?;
                let arg = self.sum()?;
                self.expect(')')?;
                return Ok(Ast::Apply(u, Box::new(arg)));
            }
        }
        self.atom()
    }

    fn signed_number(&mut self) -> Result<f64, ExprError> {
        let negative = *self.peek() == Tok::Sym('-');
        if negative {
            self.next();
        }
        match self.next() {
            Tok::Number(s) => match s.parse::<f64>() {
                Ok(v) => Ok(if negative { -v } else { v }),
                Err(_) => self.error(format!("malformed number `{s}`")),
            },
            _ => self.error("expected a number"),
        }
    }

    fn atom(&mut self) -> Result<Ast, ExprError> {
        match self.peek().clone() {
            Tok::Sym('(') => {
                self.next();
                let e = self.sum()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Number(s) => match parse_rational(&s) {
                Some(r) => {
                    self.next();
                    Ok(Ast::Number(r))
                }
                None => self.error(format!("malformed number `{s}`")),
            },
            Tok::Ident(name) => {
                if name == "wave" {
                    self.next();
                    self.expect('(')?;
                    let mut k = [0.0; 4];
                    for (idx, slot) in k.iter_mut().enumerate() {
                        if idx > 0 {
                            self.expect(',')?;
                        }
                        *slot = self.signed_number()?;
                    }
                    self.expect(')')?;
                    return Ok(Ast::Wave(k));
                }
                self.next();
                Ok(classify(&name))
            }
            Tok::End => self.error("unexpected end of input"),
            Tok::Sym(c) => self.error(format!("unexpected `{c}`")),
        }
    }
}

/// Prefix, lowest and highest index, constructor.
type IndexedAtom = (&'static str, u8, u8, fn(u8) -> Ast);

fn classify(name: &str) -> Ast {
    let digit = |s: &str, lo: u8, hi: u8| s.parse::<u8>().ok().filter(|d| (lo..=hi).contains(d));
    let split = |p: &str| name.strip_prefix(p).map(|r| r.strip_prefix('_').unwrap_or(r));
    let lit = match name {
        "i" => return Ast::I,
        "kappa" | "κ" => return Ast::Kappa,
        "E" => Some(OpLit::E),
        "T" => Some(OpLit::T),
        "box" => Some(OpLit::Box),
        _ => None,
    };
    if let Some(l) = lit {
        return Ast::Op(l);
    }
    let table: [IndexedAtom; 8] = [
        ("x", 0, 3, Ast::Coord),
        ("e", 0, 4, Ast::Basis),
        ("P", 0, 3, |j| Ast::Op(OpLit::P(j))),
        ("N", 1, 3, |j| Ast::Op(OpLit::N(j))),
        ("R", 1, 3, |j| Ast::Op(OpLit::R(j))),
        ("xi", 0, 4, |j| Ast::Op(OpLit::Xi(j))),
        ("chi", 0, 4, |j| Ast::Op(OpLit::Chi(j))),
        ("x", 0, 0, Ast::Coord),
    ];
    for (prefix, lo, hi, make) in table {
        if let Some(d) = split(prefix).and_then(|r| digit(r, lo, hi)) {
            if !(prefix == "x" && name.contains('_')) && !(prefix == "e" && name.contains('_')) {
                return make(d);
            }
        }
    }
    Ast::Name(name.to_string())
}

pub fn parse(src: &str) -> Result<Ast, ExprError> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let e = p.sum()?;
    if *p.peek() != Tok::End {
        return p.error("trailing input");
    }
    Ok(e)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    Exact,
    Wave,
}

/// Static kind of an expression: scalar, operator or form of known degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Scalar,
    Operator,
    Form(Option<usize>),
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::Scalar => f.write_str("scalar"),
            Kind::Operator => f.write_str("operator"),
            Kind::Form(Some(n)) => write!(f, "{n}-form"),
            Kind::Form(None) => f.write_str("form"),
        }
    }
}

pub struct Env {
    pub backend: Backend,
    /// `None` keeps `κ` symbolic.
    pub kappa: Option<Rational>,
    pub bindings: BTreeMap<String, Ast>,
    calc: Calculus,
}

impl Env {
    pub fn new(backend: Backend, kappa: Option<Rational>) -> Self {
        Env { backend, kappa, bindings: BTreeMap::new(), calc: Calculus::new() }
    }

    pub fn bind(&mut self, name: &str, ast: Ast) {
        self.bindings.insert(name.to_string(), ast);
    }

    fn kappa_f64(&self) -> Result<f64, ExprError> {
        self.kappa.map(|k| *k.numer() as f64 / *k.denom() as f64).ok_or_else(|| ExprError::Backend {
            message: "the wave backend needs a numeric κ".into(),
            hint: "pass --kappa with a rational value".into(),
        })
    }
}

fn type_error<T>(expected: &str, found: Kind, context: &Ast) -> Result<T, ExprError> {
    Err(ExprError::Type { expected: expected.into(), found: found.to_string(), context: context.to_string() })
}

fn add_degrees(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    Some(a? + b?).filter(|&n| n <= 5)
}

/// Static kind, rejecting ill-typed expressions before evaluation.
pub fn infer(ast: &Ast, env: &Env) -> Result<Kind, ExprError> {
    infer_depth(ast, env, 0)
}

fn infer_depth(ast: &Ast, env: &Env, depth: usize) -> Result<Kind, ExprError> {
    let go = |a: &Ast| infer_depth(a, env, depth);
    let form_of = |k: Kind, ctx: &Ast| match k {
        Kind::Scalar => Ok(Some(0)),
        Kind::Form(n) => Ok(n),
        Kind::Operator => type_error("form", k, ctx),
    };
    Ok(match ast {
        Ast::Coord(_) | Ast::Wave(_) => Kind::Form(Some(0)),
        Ast::Basis(_) => Kind::Form(Some(1)),
        Ast::Number(_) | Ast::I | Ast::Kappa => Kind::Scalar,
        Ast::Op(_) => Kind::Operator,
        Ast::Name(n) => {
            let bound = env.bindings.get(n).ok_or_else(|| ExprError::Unbound(n.clone()))?;
            if depth > 32 {
                return Err(ExprError::Unbound(n.clone()));
            }
            infer_depth(bound, env, depth + 1)?
        }
        Ast::Neg(a) => go(a)?,
        Ast::Add(a, b) | Ast::Sub(a, b) => match (go(a)?, go(b)?) {
            (x, y) if x == y => x,
            (Kind::Scalar, Kind::Operator) | (Kind::Operator, Kind::Scalar) => Kind::Operator,
            (Kind::Operator, y) | (y, Kind::Operator) => return type_error("operator", y, ast),
            (x, y) => {
                let (m, n) = (form_of(x, ast)?, form_of(y, ast)?);
                Kind::Form(if m == n { m } else { None })
            }
        },
        Ast::Mul(a, b) => match (go(a)?, go(b)?) {
            (Kind::Scalar, y) => y,
            (x, Kind::Scalar) => x,
            (Kind::Operator, y) => y,
            (x, Kind::Operator) => {
                return type_error("scalar or form", Kind::Operator, b).map_err(|_| ExprError::Type {
                    expected: "operator on the left of an action".into(),
                    found: x.to_string(),
                    context: ast.to_string(),
                })
            }
            (Kind::Form(m), Kind::Form(n)) => Kind::Form(add_degrees(m, n)),
        },
        Ast::Div(a, b) => match go(b)? {
            Kind::Scalar => go(a)?,
            k => return type_error("scalar divisor", k, b),
        },
        Ast::Wedge(a, b) => {
            let (m, n) = (form_of(go(a)?, a)?, form_of(go(b)?, b)?);
            Kind::Form(add_degrees(m, n))
        }
        Ast::Pow(a, n) => match go(a)? {
            Kind::Form(m) => Kind::Form(m.and_then(|m| m.checked_mul(*n as usize)).filter(|&d| d <= 5)),
            k => k,
        },
        Ast::Apply(u, a) => {
            let k = go(a)?;
            match u {
                Unary::Dagger => k,
                Unary::D => Kind::Form(form_of(k, a)?.and_then(|n| add_degrees(Some(n), Some(1)))),
                Unary::Star => Kind::Form(form_of(k, a)?.map(|n| 5 - n)),
                Unary::Iota(_) => match form_of(k, a)? {
                    Some(0) => return type_error("form of degree ≥ 1", k, a),
                    n => Kind::Form(n.map(|n| n - 1)),
                },
                Unary::Lie(h) => {
                    let hk = go(h)?;
                    if hk != Kind::Operator {
                        return type_error("operator", hk, h);
                    }
                    Kind::Form(form_of(k, a)?)
                }
                Unary::Int => match form_of(k, a)? {
                    Some(0) | Some(5) => Kind::Scalar,
                    _ => return type_error("0-form or 5-form", k, a),
                },
            }
        }
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Scalar(ExactScalar),
    Number(Complex64),
    Op(OperatorElement),
    Poly(Form<PolyElement>),
    Wave(Form<WaveElement>),
}

pub fn evaluate(ast: &Ast, env: &Env) -> Result<Value, ExprError> {
    infer(ast, env)?;
    Evaluator { env }.eval(ast)
}

/// Parses, type-checks, evaluates and prints.
pub fn run(src: &str, env: &Env) -> Result<String, ExprError> {
    let v = evaluate(&parse(src)?, env)?;
    Ok(render(&v, env))
}

struct Evaluator<'a> {
    env: &'a Env,
}

fn scalar_of(r: &Rational) -> ExactScalar {
    ExactScalar::from_gaussian(Gaussian::new(*r, Rational::zero()))
}

impl Evaluator<'_> {
    fn calc(&self) -> &Calculus {
        &self.env.calc
    }

    fn mismatch<T>(&self, what: &str) -> Result<T, ExprError> {
        let hint = match self.env.backend {
            Backend::Exact => "use --backend wave with a numeric --kappa",
            Backend::Wave => "use --backend exact",
        };
        Err(ExprError::Backend { message: format!("{what} is not available on this backend"), hint: hint.into() })
    }

    fn promote(&self, v: Value) -> Result<Value, ExprError> {
        Ok(match v {
            Value::Scalar(s) => match self.env.backend {
                Backend::Exact => Value::Poly(Form::function(PolyElement::scalar(s))),
                Backend::Wave => Value::Wave(Form::function(WaveElement::one(self.env.kappa_f64()?)).scale(&s)),
            },
            Value::Number(z) => match self.env.backend {
                Backend::Exact => return self.mismatch("a numeric scalar"),
                Backend::Wave => Value::Wave(Form::function(WaveElement::one(self.env.kappa_f64()?).scale(z))),
            },
            other => other,
        })
    }

    fn eval(&self, ast: &Ast) -> Result<Value, ExprError> {
        let kappa = || self.env.kappa_f64();
        Ok(match ast {
            Ast::Coord(m) => match self.env.backend {
                Backend::Exact => Value::Poly(Form::function(PolyElement::x(*m as usize))),
                Backend::Wave => return self.mismatch("a coordinate"),
            },
            Ast::Wave(k) => match self.env.backend {
                Backend::Wave => Value::Wave(Form::function(WaveElement::wave(*k, Complex64::new(1.0, 0.0), kappa()?))),
                Backend::Exact => return self.mismatch("a plane wave"),
            },
            Ast::Basis(a) => match self.env.backend {
                Backend::Exact => Value::Poly(Form::one_form(*a as usize, PolyElement::one())),
                Backend::Wave => Value::Wave(Form::one_form(*a as usize, WaveElement::one(kappa()?))),
            },
            Ast::Number(r) => Value::Scalar(scalar_of(r)),
            Ast::I => Value::Scalar(ExactScalar::i()),
            Ast::Kappa => Value::Scalar(ExactScalar::kappa_pow(1)),
            Ast::Op(o) => Value::Op(operator(*o)),
            Ast::Name(n) => {
                let bound = self.env.bindings.get(n).ok_or_else(|| ExprError::Unbound(n.clone()))?;
                self.eval(bound)?
            }
            Ast::Neg(a) => self.scale(&ExactScalar::from_int(-1), self.eval(a)?)?,
            Ast::Add(a, b) => self.add(self.eval(a)?, self.eval(b)?, false)?,
            Ast::Sub(a, b) => self.add(self.eval(a)?, self.eval(b)?, true)?,
            Ast::Mul(a, b) => self.mul(self.eval(a)?, self.eval(b)?)?,
            Ast::Div(a, b) => match self.eval(b)? {
                Value::Scalar(s) => self.scale(&s.inv()?, self.eval(a)?)?,
                Value::Number(z) => {
                    if z == Complex64::new(0.0, 0.0) {
                        return Err(kforms_core::Error::DivisionByZero.into());
                    }
                    self.mul(Value::Number(z.inv()), self.eval(a)?)?
                }
                _ => unreachable!("checked by infer"),
            },
            Ast::Wedge(a, b) => self.mul(self.promote(self.eval(a)?)?, self.promote(self.eval(b)?)?)?,
            Ast::Pow(a, n) => self.pow(self.eval(a)?, *n, a)?,
            Ast::Apply(u, a) => self.apply(u, self.eval(a)?)?,
        })
    }

    fn scale(&self, s: &ExactScalar, v: Value) -> Result<Value, ExprError> {
        Ok(match v {
            Value::Scalar(t) => Value::Scalar(s * &t),
            Value::Number(z) => Value::Number(z * s.eval(self.env.kappa_f64()?)),
            Value::Op(h) => Value::Op(h.scale(s)),
            Value::Poly(f) => Value::Poly(f.scale(s)),
            Value::Wave(f) => Value::Wave(f.scale(s)),
        })
    }

    fn add(&self, a: Value, b: Value, subtract: bool) -> Result<Value, ExprError> {
        let b = if subtract { self.scale(&ExactScalar::from_int(-1), b)? } else { b };
        Ok(match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(&x + &y),
            (Value::Op(x), Value::Op(y)) => Value::Op(&x + &y),
            (Value::Op(x), Value::Scalar(y)) | (Value::Scalar(y), Value::Op(x)) => Value::Op(&x + &OperatorElement::scalar(y)),
            (Value::Number(x), Value::Number(y)) => Value::Number(x + y),
            (Value::Number(x), Value::Scalar(y)) | (Value::Scalar(y), Value::Number(x)) => Value::Number(x + y.eval(self.env.kappa_f64()?)),
            (a, b) => match (self.promote(a)?, self.promote(b)?) {
                (Value::Poly(x), Value::Poly(y)) => Value::Poly(x.add(&y)),
                (Value::Wave(x), Value::Wave(y)) => Value::Wave(x.add(&y)),
                _ => unreachable!("checked by infer"),
            },
        })
    }

    fn mul(&self, a: Value, b: Value) -> Result<Value, ExprError> {
        Ok(match (a, b) {
            (Value::Scalar(s), v) | (v, Value::Scalar(s)) => self.scale(&s, v)?,
            (Value::Number(z), Value::Number(w)) => Value::Number(z * w),
            (Value::Number(z), v) | (v, Value::Number(z)) => match v {
                Value::Op(_) => return self.mismatch("a numeric multiple of an operator"),
                v => self.mul(self.promote(Value::Number(z))?, v)?,
            },
            (Value::Op(x), Value::Op(y)) => Value::Op(&x * &y),
            (Value::Op(h), Value::Poly(f)) => Value::Poly(self.calc().lie(&h, &f)?),
            (Value::Op(h), Value::Wave(f)) => Value::Wave(self.calc().lie(&h, &f)?),
            (Value::Poly(x), Value::Poly(y)) => Value::Poly(self.calc().wedge(&x, &y)),
            (Value::Wave(x), Value::Wave(y)) => Value::Wave(self.calc().wedge(&x, &y)),
            _ => unreachable!("checked by infer"),
        })
    }

    fn pow(&self, v: Value, n: i32, ctx: &Ast) -> Result<Value, ExprError> {
        if n < 0 {
            return match v {
                Value::Scalar(s) => Ok(Value::Scalar(pow_scalar(&s.inv()?, -n))),
                Value::Number(z) => Ok(Value::Number(z.powi(n))),
                Value::Op(h) => match e_power(&h) {
                    Some(k) => Ok(Value::Op(OperatorElement::e_pow(k * n))),
                    None => type_error("invertible operator (a power of E)", Kind::Operator, ctx),
                },
                _ => type_error("scalar or operator for a negative power", Kind::Form(None), ctx),
            };
        }
        let mut acc = match &v {
            Value::Scalar(_) | Value::Number(_) => Value::Scalar(ExactScalar::one()),
            Value::Op(_) => Value::Op(OperatorElement::one()),
            _ => self.promote(Value::Scalar(ExactScalar::one()))?,
        };
        for _ in 0..n {
            acc = self.mul(acc, v.clone())?;
        }
        Ok(acc)
    }

    fn apply(&self, u: &Unary, v: Value) -> Result<Value, ExprError> {
        if let (Unary::Dagger, Value::Scalar(s)) = (u, &v) {
            return Ok(Value::Scalar(s.conj()));
        }
        if let (Unary::Dagger, Value::Number(z)) = (u, &v) {
            return Ok(Value::Number(z.conj()));
        }
        if let (Unary::Dagger, Value::Op(h)) = (u, &v) {
            return Ok(Value::Op(h.dagger()));
        }
        let calc = self.calc();
        Ok(match (u, self.promote(v)?) {
            (Unary::D, Value::Poly(f)) => Value::Poly(calc.d(&f)),
            (Unary::D, Value::Wave(f)) => Value::Wave(calc.d(&f)),
            (Unary::Star, Value::Poly(f)) => Value::Poly(calc.hodge(&f)),
            (Unary::Star, Value::Wave(f)) => Value::Wave(calc.hodge(&f)),
            (Unary::Dagger, Value::Poly(f)) => Value::Poly(calc.dagger(&f)),
            (Unary::Dagger, Value::Wave(f)) => Value::Wave(calc.dagger(&f)),
            (Unary::Iota(a), Value::Poly(f)) => Value::Poly(calc.inner(*a as usize, &f)?),
            (Unary::Iota(a), Value::Wave(f)) => Value::Wave(calc.inner(*a as usize, &f)?),
            (Unary::Lie(h), w) => {
                let Value::Op(h) = self.eval(h)? else { unreachable!("checked by infer") };
                match w {
                    Value::Poly(f) => Value::Poly(calc.lie(&h, &f)?),
                    Value::Wave(f) => Value::Wave(calc.lie(&h, &f)?),
                    _ => unreachable!("promoted"),
                }
            }
            (Unary::Int, Value::Wave(f)) => Value::Number(match f.degree() {
                Some(5) => kforms_core::integral::integrate(&f)?,
                _ => f.coefficient(kforms_core::Word::EMPTY).map(kforms_core::integral::integrate_function).unwrap_or_default(),
            }),
            (Unary::Int, Value::Poly(_)) => return self.mismatch("the integral"),
            _ => unreachable!("checked by infer"),
        })
    }
}

fn pow_scalar(s: &ExactScalar, n: i32) -> ExactScalar {
    (0..n).fold(ExactScalar::one(), |acc, _| &acc * s)
}

/// `k` when `h = E^k` exactly.
fn e_power(h: &OperatorElement) -> Option<i32> {
    let mut terms = h.terms();
    let (w, c) = terms.next()?;
    if terms.next().is_some() || !c.is_one() || !w.is_momentum() {
        return None;
    }
    (0..=64).flat_map(|k| [k, -k]).find(|&k| *w == momentum_e(k))
}

fn momentum_e(k: i32) -> OpWord {
    kforms_core::kminkowski::momentum_word([0; 3], 0, k)
}

pub fn operator(o: OpLit) -> OperatorElement {
    match o {
        OpLit::P(0) => OperatorElement::p0(),
        OpLit::P(j) => OperatorElement::p(j as usize),
        OpLit::E => OperatorElement::e_pow(1),
        OpLit::T => twist(),
        OpLit::Box => casimir(),
        OpLit::N(j) => OperatorElement::n(j as usize),
        OpLit::R(j) => OperatorElement::r(j as usize),
        OpLit::Xi(a) => xi()[a as usize].clone(),
        OpLit::Chi(a) => chi()[a as usize].clone(),
    }
}

/// `Σ c_p κ^{-p}` at a rational `κ`.
fn substitute(s: &ExactScalar, kappa: &Rational) -> ExactScalar {
    let mut acc = ExactScalar::zero();
    for (p, g) in s.terms() {
        let factor = if *p >= 0 { kappa.recip().pow(*p) } else { kappa.pow(-*p) };
        acc = &acc + &ExactScalar::from_gaussian(Gaussian::new(g.re * factor, g.im * factor));
    }
    acc
}

fn substitute_poly(f: &PolyElement, kappa: &Rational) -> PolyElement {
    f.terms().fold(PolyElement::zero(), |acc, (m, c)| &acc + &PolyElement::monomial(*m, substitute(c, kappa)))
}

pub fn render(v: &Value, env: &Env) -> String {
    match (v, &env.kappa) {
        (Value::Scalar(s), None) => s.to_string(),
        (Value::Scalar(s), Some(k)) => substitute(s, k).to_string(),
        (Value::Number(z), _) => format_complex(*z),
        (Value::Op(h), None) => h.to_string(),
        (Value::Op(h), Some(k)) => {
            h.terms().fold(OperatorElement::zero(), |acc, (w, c)| &acc + &OperatorElement::from_word(*w, substitute(c, k))).to_string()
        }
        (Value::Poly(f), None) => f.to_string(),
        (Value::Poly(f), Some(k)) => {
            let mut out = Form::zero();
            for (w, c) in f.terms() {
                out.accumulate(*w, substitute_poly(c, k));
            }
            out.to_string()
        }
        (Value::Wave(f), _) => f.to_string(),
    }
}

pub fn format_complex(z: Complex64) -> String {
    let clean = |x: f64| if x.abs() < 1e-300 { 0.0 } else { x };
    let (re, im) = (clean(z.re), clean(z.im));
    if im == 0.0 {
        format!("{re}")
    } else if im.is_negative() {
        format!("{re} - {}i", -im)
    } else {
        format!("{re} + {im}i")
    }
}

//! A small interpreter for integer formulas, used to replay the bound chain
//! through code that shares nothing with [`lift_chain`](super::lift_chain).
//!
//! A program is a list of definitions, one per line or separated by `;`:
//!
//! ```text
//! f(x) = (s*(s^2+s+1)*x)^(120*(s^2+s+1)) + x
//! w = s^4*t^s + s
//! ```
//!
//! Operators are `+ - * ^` with the usual precedence (`^` is right
//! associative) over non-negative big integers; subtraction below zero is an
//! error. `#` starts a comment.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{input, Error, Result};

/// Definitions of the chain, written directly from its displayed formulas.
/// Expects `s`, `d`, `t` and a one-argument function `f` in scope.
pub const CHAIN_PROGRAM: &str = "
w  = s^4*t^s + s
q  = f(t) + 2^(s^(2*d+2))*t^(d*s + s^2 + s)
f8 = 3*s*d^(3*s+2)*w^(2*s-1)*t^(3*s)*(f(t) + 2^(s^(2*d+2))*t^(d*s+s^2+s))
f7 = 120*s*d^(5*s+1)*w*t^(5*s)*f8
f6 = 120*s*d^(5*s+1)*w*t^(5*s)*f8
f5 = 120*s*d^(5*s+1)*w*t^(5*s)*f8
f4 = 2*d^(s+1)*w*t^s*f5
f3 = 2*d^(s+1)*w*t^s*f5
f2 = 2*s*d*w*f3
f_core = f((s*(s^2+s+1)*t)^(120*(s^2+s+1))*w)
f1 = f((s*(s^2+s+1)*t)^(120*(s^2+s+1))*w) + 2*t*f2
";

/// The bottom-level bound as a function definition.
pub const BASE_F: &str = "f(x) = (s*(s^2+s+1)*x)^(120*(s^2+s+1)) + x";

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigUint),
    Ident(String),
    Op(char),
    End,
}

fn lex(src: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        if ch == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
        } else if ch == '\n' || ch == ';' {
            out.push(Tok::End);
            i += 1;
        } else if ch.is_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Tok::Num(text.parse().expect("digits parse")));
        } else if ch.is_ascii_alphabetic() || ch == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*^()=,".contains(ch) {
            out.push(Tok::Op(ch));
            i += 1;
        } else {
            return input(format!("unexpected character {ch:?}"));
        }
    }
    out.push(Tok::End);
    Ok(out)
}

#[derive(Debug, Clone)]
enum Ast {
    Num(BigUint),
    Name(String),
    Call(String, Box<Ast>),
    Bin(char, Box<Ast>, Box<Ast>),
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, op: char) -> Result<()> {
        match self.next() {
            Tok::Op(c) if c == op => Ok(()),
            other => input(format!("expected {op:?}, found {other:?}")),
        }
    }

    fn sum(&mut self) -> Result<Ast> {
        let mut lhs = self.product()?;
        while let Tok::Op(op @ ('+' | '-')) = *self.peek() {
            self.next();
            lhs = Ast::Bin(op, Box::new(lhs), Box::new(self.product()?));
        }
        Ok(lhs)
    }

    fn product(&mut self) -> Result<Ast> {
        let mut lhs = self.power()?;
        while *self.peek() == Tok::Op('*') {
            self.next();
            lhs = Ast::Bin('*', Box::new(lhs), Box::new(self.power()?));
        }
        Ok(lhs)
    }

    fn power(&mut self) -> Result<Ast> {
        let base = self.atom()?;
        if *self.peek() == Tok::Op('^') {
            self.next();
            return Ok(Ast::Bin('^', Box::new(base), Box::new(self.power()?)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Ast> {
        match self.next() {
            Tok::Num(n) => Ok(Ast::Num(n)),
            Tok::Ident(name) => {
                if *self.peek() == Tok::Op('(') {
                    self.next();
                    let arg = self.sum()?;
                    self.expect(')')?;
                    Ok(Ast::Call(name, Box::new(arg)))
                } else {
                    Ok(Ast::Name(name))
                }
            }
            Tok::Op('(') => {
                let inner = self.sum()?;
                self.expect(')')?;
                Ok(inner)
            }
            other => input(format!("unexpected token {other:?}")),
        }
    }
}

/// Variables and one-parameter functions.
#[derive(Debug, Clone, Default)]
pub struct Env {
    vars: BTreeMap<String, BigUint>,
    funcs: BTreeMap<String, (String, Ast)>,
}

impl Env {
    pub fn new() -> Env {
        Env::default()
    }

    pub fn set(&mut self, name: &str, value: impl Into<BigUint>) -> &mut Env {
        self.vars.insert(name.to_owned(), value.into());
        self
    }

    pub fn get(&self, name: &str) -> Option<&BigUint> {
        self.vars.get(name)
    }

    pub fn vars(&self) -> &BTreeMap<String, BigUint> {
        &self.vars
    }

    /// Runs every definition in `program`, in order.
    pub fn run(&mut self, program: &str) -> Result<()> {
        let toks = lex(program)?;
        let mut p = Parser { toks, pos: 0 };
        loop {
            match p.peek().clone() {
                Tok::End if p.pos + 1 >= p.toks.len() => return Ok(()),
                Tok::End => {
                    p.next();
                }
                Tok::Ident(name) => {
                    p.next();
                    if *p.peek() == Tok::Op('(') {
                        p.next();
                        let Tok::Ident(param) = p.next() else {
                            return input(format!("function {name} needs a parameter name"));
                        };
                        p.expect(')')?;
                        p.expect('=')?;
                        let body = p.sum()?;
                        self.funcs.insert(name, (param, body));
                    } else {
                        p.expect('=')?;
                        let body = p.sum()?;
                        let value = self.eval(&body)?;
                        self.vars.insert(name, value);
                    }
                    if !matches!(p.peek(), Tok::End) {
                        return input(format!("trailing tokens after definition: {:?}", p.peek()));
                    }
                }
                other => return input(format!("definition expected, found {other:?}")),
            }
        }
    }

    /// Evaluates a single expression.
    pub fn eval_str(&self, expr: &str) -> Result<BigUint> {
        let toks = lex(expr)?;
        let mut p = Parser { toks, pos: 0 };
        let ast = p.sum()?;
        if !matches!(p.peek(), Tok::End) {
            return input("trailing tokens in expression");
        }
        self.eval(&ast)
    }

    fn eval(&self, ast: &Ast) -> Result<BigUint> {
        Ok(match ast {
            Ast::Num(n) => n.clone(),
            Ast::Name(name) => self
                .vars
                .get(name)
                .cloned()
                .ok_or_else(|| Error::Input(format!("unbound name {name}")))?,
            Ast::Call(name, arg) => {
                let (param, body) = self
                    .funcs
                    .get(name)
                    .ok_or_else(|| Error::Input(format!("unknown function {name}")))?;
                let value = self.eval(arg)?;
                let mut inner = self.clone();
                inner.vars.insert(param.clone(), value);
                inner.eval(body)?
            }
            Ast::Bin(op, l, r) => {
                let (a, b) = (self.eval(l)?, self.eval(r)?);
                match op {
                    '+' => a + b,
                    '-' => {
                        if a < b {
                            return input("subtraction below zero");
                        }
                        a - b
                    }
                    '*' => a * b,
                    '^' => {
                        let e = b
                            .to_u32()
                            .ok_or_else(|| Error::Input("exponent too large".into()))?;
                        if e == 0 {
                            BigUint::one()
                        } else {
                            a.pow(e)
                        }
                    }
                    _ => unreachable!("parser only emits known operators"),
                }
            }
        })
    }
}

/// Evaluates [`CHAIN_PROGRAM`] with `f` given as a definition such as
/// [`BASE_F`].
pub fn eval_chain(s: usize, d: usize, t: usize, f_def: &str) -> Result<BTreeMap<String, BigUint>> {
    let mut env = Env::new();
    env.set("s", s).set("d", d).set("t", t);
    env.run(f_def)?;
    env.run(CHAIN_PROGRAM)?;
    let mut out = env.vars;
    for k in ["s", "d", "t"] {
        out.remove(k);
    }
    Ok(out)
}

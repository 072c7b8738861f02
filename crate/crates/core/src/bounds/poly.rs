use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{base_arg, base_exponent, big, levels2_size};
use crate::error::{input, Result};

/// A polynomial in one variable built from non-negative constants, the
/// variable, sums, products, powers and composition. Every such expression
/// has non-negative integer coefficients, so it is increasing on `t ≥ 0`.
///
/// The tree is kept symbolic: lifted bounds have degree in the hundreds of
/// thousands and dense coefficient vectors would not fit in memory.
#[derive(Clone, PartialEq, Eq)]
pub enum Expr {
    Const(BigUint),
    Var,
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
    Pow(Box<Expr>, u32),
    /// `outer(inner(t))`.
    Compose(Arc<Expr>, Box<Expr>),
}

impl Expr {
    pub fn c(x: impl Into<BigUint>) -> Expr {
        Expr::Const(x.into())
    }

    pub fn pow(self, e: usize) -> Expr {
        Expr::Pow(Box::new(self), u32::try_from(e).expect("exponent fits in u32"))
    }

    pub fn eval(&self, x: &BigUint) -> BigUint {
        match self {
            Expr::Const(c) => c.clone(),
            Expr::Var => x.clone(),
            Expr::Sum(terms) => terms.iter().map(|e| e.eval(x)).sum(),
            Expr::Product(terms) => terms.iter().fold(BigUint::one(), |acc, e| acc * e.eval(x)),
            Expr::Pow(e, k) => e.eval(x).pow(*k),
            Expr::Compose(outer, inner) => outer.eval(&inner.eval(x)),
        }
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        match self {
            Expr::Const(c) => (!c.is_zero()).then_some(0),
            Expr::Var => Some(1),
            Expr::Sum(terms) => terms.iter().filter_map(Expr::degree).max(),
            Expr::Product(terms) => terms.iter().map(Expr::degree).sum(),
            Expr::Pow(e, k) => match (e.degree(), k) {
                (_, 0) => Some(0),
                (d, k) => d.map(|d| d * u64::from(*k)),
            },
            Expr::Compose(outer, inner) => match (outer.degree(), inner.degree()) {
                (None, _) => None,
                (Some(0), _) => Some(0),
                (Some(d), Some(e)) => Some(d * e),
                (Some(_), None) => (!outer.eval(&BigUint::zero()).is_zero()).then_some(0),
            },
        }
    }

    /// Upper bound on the bit length of the value at an argument of at most
    /// `x_bits` bits. Saturating.
    pub fn bits_upper(&self, x_bits: u64) -> u64 {
        match self {
            Expr::Const(c) => c.bits(),
            Expr::Var => x_bits,
            Expr::Sum(terms) => {
                let max = terms.iter().map(|e| e.bits_upper(x_bits)).max().unwrap_or(0);
                max.saturating_add(64 - (terms.len() as u64).leading_zeros() as u64)
            }
            Expr::Product(terms) => terms
                .iter()
                .fold(0u64, |acc, e| acc.saturating_add(e.bits_upper(x_bits))),
            Expr::Pow(e, k) => e.bits_upper(x_bits).saturating_mul(u64::from(*k)),
            Expr::Compose(outer, inner) => outer.bits_upper(inner.bits_upper(x_bits)),
        }
    }

    /// Dense coefficients, ascending, for polynomials of degree at most
    /// `max_degree`.
    pub fn expand(&self, max_degree: u64) -> Result<Vec<BigUint>> {
        match self.degree() {
            None => return Ok(vec![]),
            Some(d) if d > max_degree => {
                return input(format!("degree {d} exceeds expansion limit {max_degree}"))
            }
            _ => {}
        }
        let mut out = self.expand_raw();
        while out.last().is_some_and(Zero::is_zero) {
            out.pop();
        }
        Ok(out)
    }

    fn expand_raw(&self) -> Vec<BigUint> {
        match self {
            Expr::Const(c) => vec![c.clone()],
            Expr::Var => vec![BigUint::zero(), BigUint::one()],
            Expr::Sum(terms) => terms.iter().fold(vec![], |acc, e| add(&acc, &e.expand_raw())),
            Expr::Product(terms) => terms
                .iter()
                .fold(vec![BigUint::one()], |acc, e| mul(&acc, &e.expand_raw())),
            Expr::Pow(e, k) => {
                let base = e.expand_raw();
                (0..*k).fold(vec![BigUint::one()], |acc, _| mul(&acc, &base))
            }
            Expr::Compose(outer, inner) => {
                let inner = inner.expand_raw();
                // Horner over the outer coefficients.
                let outer = outer.expand_raw();
                outer
                    .iter()
                    .rev()
                    .fold(vec![], |acc, c| add(&mul(&acc, &inner), &[c.clone()]))
            }
        }
    }
}

fn add(a: &[BigUint], b: &[BigUint]) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    out
}

fn mul(a: &[BigUint], b: &[BigUint]) -> Vec<BigUint> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigUint::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) => write!(f, "{c}"),
            Expr::Var => write!(f, "x"),
            Expr::Sum(terms) => {
                write!(f, "(")?;
                for (i, e) in terms.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "{e}")?;
                }
                write!(f, ")")
            }
            Expr::Product(terms) => {
                write!(f, "(")?;
                for (i, e) in terms.iter().enumerate() {
                    if i > 0 {
                        write!(f, "*")?;
                    }
                    write!(f, "{e}")?;
                }
                write!(f, ")")
            }
            Expr::Pow(e, k) => write!(f, "{e}^{k}"),
            Expr::Compose(outer, inner) => write!(f, "[{outer}](x := {inner})"),
        }
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = self.to_string();
        if text.len() > 200 {
            write!(f, "Expr({}…, degree {:?})", &text[..200], self.degree())
        } else {
            write!(f, "Expr({text})")
        }
    }
}

/// An increasing integral polynomial with provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyBound {
    pub expr: Arc<Expr>,
    pub meta: String,
}

impl PolyBound {
    pub fn new(expr: Expr, meta: impl Into<String>) -> PolyBound {
        PolyBound {
            expr: Arc::new(expr),
            meta: meta.into(),
        }
    }

    /// `f(t) = t`.
    pub fn identity() -> PolyBound {
        PolyBound::new(Expr::Var, "identity")
    }

    /// The bottom of the induction: `f(t) = (s(s²+s+1)t)^{120(s²+s+1)} + t`.
    /// The additive `t` makes `f(t) ≥ t` hold without case analysis.
    pub fn base(s: usize) -> PolyBound {
        let e = Expr::Sum(vec![
            Expr::Product(vec![Expr::Const(base_arg(s, 1)), Expr::Var]).pow(base_exponent(s)),
            Expr::Var,
        ]);
        PolyBound::new(e, format!("base(s={s})"))
    }

    pub fn eval(&self, t: &BigUint) -> BigUint {
        self.expr.eval(t)
    }

    pub fn degree(&self) -> Option<u64> {
        self.expr.degree()
    }

    /// Non-negative coefficients are structural; `f(t) ≥ t` for all `t ≥ 1`
    /// holds exactly when the degree is at least one.
    pub fn check_hypothesis_a(&self) -> Result<()> {
        match self.degree() {
            Some(d) if d >= 1 => Ok(()),
            _ => input(format!("{} is constant, so f(t) >= t fails", self.meta)),
        }
    }

    /// The polynomial `f_1` for the next level, built symbolically from the
    /// same formulas [`lift_chain`](super::lift_chain) evaluates numerically.
    pub fn lift(&self, s: usize, d: usize) -> PolyBound {
        let x = || Expr::Var;
        let c = |v: BigUint| Expr::Const(v);
        let w = Expr::Sum(vec![
            Expr::Product(vec![c(big(s.pow(4))), x().pow(s)]),
            c(big(s)),
        ]);
        let f = self.expr.clone();
        let levels2_coeff = levels2_size(s, d, 1);
        let q = Expr::Sum(vec![
            Expr::Compose(f.clone(), Box::new(x())),
            Expr::Product(vec![c(levels2_coeff), x().pow(d * s + s * s + s)]),
        ]);
        let f8 = Expr::Product(vec![
            c(big(3 * s) * big(d).pow(u32::try_from(3 * s + 2).expect("small"))),
            w.clone().pow(2 * s - 1),
            x().pow(3 * s),
            q,
        ]);
        let f5 = Expr::Product(vec![
            c(big(120 * s) * big(d).pow(u32::try_from(5 * s + 1).expect("small"))),
            w.clone(),
            x().pow(5 * s),
            f8,
        ]);
        let f3 = Expr::Product(vec![
            c(big(2) * big(d).pow(u32::try_from(s + 1).expect("small"))),
            w.clone(),
            x().pow(s),
            f5,
        ]);
        let f2 = Expr::Product(vec![c(big(2 * s * d)), w.clone(), f3]);
        let core_arg = Expr::Product(vec![
            Expr::Product(vec![c(base_arg(s, 1)), x()]).pow(base_exponent(s)),
            w,
        ]);
        let f1 = Expr::Sum(vec![
            Expr::Compose(f, Box::new(core_arg)),
            Expr::Product(vec![c(big(2)), x(), f2]),
        ]);
        PolyBound::new(f1, format!("lift({}, s={s}, d={d})", self.meta))
    }
}

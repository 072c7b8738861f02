//! Exact big-integer evaluation of every explicit bound.
//!
//! Bounds are never held in fixed-width integers. Counts measured on real
//! graphs are compared against them with [`fits`] or [`below`].

mod chain;
pub mod expr;
mod levels;
mod poly;
pub mod thresholds;

pub use chain::{lift_chain, lift_chain_with_limit, BoundChain, EVAL_BIT_LIMIT};
pub use levels::{claim_inequalities, levels_k, levels_p};
pub use poly::{Expr, PolyBound};

use num_bigint::BigUint;

use crate::error::{input, Result};

pub(crate) fn big(x: usize) -> BigUint {
    BigUint::from(x)
}

pub(crate) fn pow(base: &BigUint, e: usize) -> BigUint {
    base.pow(u32::try_from(e).expect("exponent fits in u32"))
}

/// `count ≤ bound`.
pub fn fits(count: usize, bound: &BigUint) -> bool {
    &big(count) <= bound
}

/// `count < bound`.
pub fn below(count: usize, bound: &BigUint) -> bool {
    &big(count) < bound
}

/// `bound` as a `usize`, saturating.
pub fn saturate(bound: &BigUint) -> usize {
    usize::try_from(bound).unwrap_or(usize::MAX)
}

/// `s(s² + s + 1)t`, the base of the bound for graphs with `τ_2 < t`.
pub fn base_arg(s: usize, t: usize) -> BigUint {
    big(s) * big(s * s + s + 1) * big(t)
}

pub fn base_exponent(s: usize) -> usize {
    120 * (s * s + s + 1)
}

/// `(s(s² + s + 1)t)^{120(s² + s + 1)}`.
pub fn base_bound(s: usize, t: usize) -> Result<BigUint> {
    if s < 2 || t < 1 {
        return input(format!("base bound needs s >= 2 and t >= 1, got s={s}, t={t}"));
    }
    Ok(pow(&base_arg(s, t), base_exponent(s)))
}

/// `2^{s^{2d+2}} t^{ds + s² + s}`.
pub fn levels2_size(s: usize, d: usize, t: usize) -> BigUint {
    let k = pow(&big(s), 2 * d + 2);
    (BigUint::from(1u8) << saturate(&k)) * pow(&big(t), d * s + s * s + s)
}

/// `q(t) = f(t) + 2^{s^{2d+2}} t^{ds + s² + s}`.
pub fn q_value(s: usize, d: usize, t: usize, f: &PolyBound) -> BigUint {
    f.eval(&big(t)) + levels2_size(s, d, t)
}

/// `s d² w^{2s} q(t)`.
pub fn colourdense_bound(s: usize, d: usize, w: usize, t: usize, f: &PolyBound) -> Result<BigUint> {
    if s < 1 || d < 1 || w < 1 || t < 1 {
        return input("colourdense bound needs positive parameters");
    }
    f.check_hypothesis_a()?;
    Ok(big(s) * big(d * d) * pow(&big(w), 2 * s) * q_value(s, d, t, f))
}

/// Serde adapters writing big integers as decimal strings.
pub(crate) mod dec {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(D::Error::custom)
    }
}

pub(crate) mod dec_opt {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.serialize_some(&v.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigUint>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|t| t.parse().map_err(D::Error::custom))
            .transpose()
    }
}

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::{base_bound, big, pow, q_value, PolyBound};
use crate::error::{input, Result};

/// Values above this many bits are not evaluated. `f(T)` at the second level
/// of the induction is already gigabits long.
pub const EVAL_BIT_LIMIT: u64 = 1 << 26;

/// The evaluated chain `w, q, f_8, …, f_1` at a single `t`.
///
/// `f_core = f(base_bound(s, t) · w)` and hence `f_1` are `None` when their
/// estimated size exceeds the evaluation limit. [`BoundChain::f1_floor`] then
/// falls back to `2t·f_2`, which never exceeds `f_1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundChain {
    pub s: usize,
    pub d: usize,
    pub t: usize,
    #[serde(with = "super::dec")]
    pub w: BigUint,
    #[serde(with = "super::dec")]
    pub q: BigUint,
    #[serde(with = "super::dec")]
    pub f8: BigUint,
    #[serde(with = "super::dec")]
    pub f7: BigUint,
    #[serde(with = "super::dec")]
    pub f6: BigUint,
    #[serde(with = "super::dec")]
    pub f5: BigUint,
    #[serde(with = "super::dec")]
    pub f4: BigUint,
    #[serde(with = "super::dec")]
    pub f3: BigUint,
    #[serde(with = "super::dec")]
    pub f2: BigUint,
    #[serde(with = "super::dec_opt")]
    pub f_core: Option<BigUint>,
    #[serde(with = "super::dec_opt")]
    pub f1: Option<BigUint>,
}

impl BoundChain {
    /// `f_1` if evaluated, else the lower estimate `2t·f_2 ≤ f_1`.
    pub fn f1_floor(&self) -> BigUint {
        self.f1
            .clone()
            .unwrap_or_else(|| big(2 * self.t) * &self.f2)
    }

    /// Values in chain order, by name.
    pub fn named(&self) -> Vec<(&'static str, Option<&BigUint>)> {
        vec![
            ("w", Some(&self.w)),
            ("q", Some(&self.q)),
            ("f8", Some(&self.f8)),
            ("f7", Some(&self.f7)),
            ("f6", Some(&self.f6)),
            ("f5", Some(&self.f5)),
            ("f4", Some(&self.f4)),
            ("f3", Some(&self.f3)),
            ("f2", Some(&self.f2)),
            ("f_core", self.f_core.as_ref()),
            ("f1", self.f1.as_ref()),
        ]
    }

    pub fn w_usize(&self) -> usize {
        super::saturate(&self.w)
    }
}

/// Evaluates the chain for `f` at `t`.
pub fn lift_chain(s: usize, d: usize, t: usize, f: &PolyBound) -> Result<BoundChain> {
    lift_chain_with_limit(s, d, t, f, EVAL_BIT_LIMIT)
}

pub fn lift_chain_with_limit(
    s: usize,
    d: usize,
    t: usize,
    f: &PolyBound,
    bit_limit: u64,
) -> Result<BoundChain> {
    if s < 2 || d < 2 || t < 1 {
        return input(format!("chain needs s, d >= 2 and t >= 1 (s={s}, d={d}, t={t})"));
    }
    f.check_hypothesis_a()?;
    let (bs, bd, bt) = (big(s), big(d), big(t));
    let w = pow(&bs, 4) * pow(&bt, s) + &bs;
    let q = q_value(s, d, t, f);
    let f8 = big(3) * &bs * pow(&bd, 3 * s + 2) * w.pow(u32::try_from(2 * s - 1).expect("small"))
        * pow(&bt, 3 * s)
        * &q;
    let f5 = big(120) * &bs * pow(&bd, 5 * s + 1) * &w * pow(&bt, 5 * s) * &f8;
    let f3 = big(2) * pow(&bd, s + 1) * &w * pow(&bt, s) * &f5;
    let f2 = big(2) * &bs * &bd * &w * &f3;
    let core_arg = base_bound(s, t)? * &w;
    let f_core = (f.expr.bits_upper(core_arg.bits()) <= bit_limit).then(|| f.eval(&core_arg));
    let f1 = f_core.as_ref().map(|fc| fc + big(2) * &bt * &f2);
    Ok(BoundChain {
        s,
        d,
        t,
        w,
        q,
        f8,
        f7: f5.clone(),
        f6: f5.clone(),
        f5,
        f4: f3.clone(),
        f3,
        f2,
        f_core,
        f1,
    })
}

use num_bigint::BigUint;

use super::{big, pow};
use crate::error::{input, Result};

/// `k_{b,c,d}` for fixed `a`:
/// `(ac)^{d+1}` if `b = a`; `b(ac)^d + (a(c-1))^{d+1} + 1` if `b < a, d > 0`;
/// `1` if `b < a, d = 0`.
pub fn levels_k(a: usize, b: usize, c: usize, d: usize) -> Result<BigUint> {
    if a < 2 || b > a || c < 1 {
        return input(format!("levels parameters need a >= 2, b <= a, c >= 1 (a={a}, b={b}, c={c})"));
    }
    let ac = big(a * c);
    Ok(if b == a {
        pow(&ac, d + 1)
    } else if d > 0 {
        big(b) * pow(&ac, d) + pow(&big(a * (c - 1)), d + 1) + 1u8
    } else {
        big(1)
    })
}

/// `p_{b,c,d} = 2^{k_{b,c,d}} t^{a(c+d)+b}`.
pub fn levels_p(a: usize, b: usize, c: usize, d: usize, t: usize) -> Result<BigUint> {
    if t < 1 {
        return input("levels parameters need t >= 1");
    }
    let k = levels_k(a, b, c, d)?;
    let k = usize::try_from(&k).map_err(|_| crate::Error::Input("k too large to exponentiate".into()))?;
    Ok((BigUint::from(1u8) << k) * pow(&big(t), a * (c + d) + b))
}

/// The five inequalities used in the inductive step (needs `b ≥ 1`, `d ≥ 1`):
///
/// 0. `k_{b,c,d} − k_{b−1,c,d} ≥ k_{a,c,d−1}`
/// 1. `p_{b,c,d} ≥ 2(d+1)²t²`
/// 2. `p_{b,c,d} ≥ 2(d+1)t·p_{b−1,c,d}`
/// 3. `p_{b,c,d} ≥ 2^{k_{b,c,d}}·t`
/// 4. `p_{b,c,d} ≥ t·p_{b−1,c,d} + p_{a,c,d−1}`
pub fn claim_inequalities(a: usize, b: usize, c: usize, d: usize, t: usize) -> Result<[bool; 5]> {
    if b < 1 || d < 1 {
        return input("inequalities need b >= 1 and d >= 1");
    }
    let k = levels_k(a, b, c, d)?;
    let k_prev = levels_k(a, b - 1, c, d)?;
    let k_down = levels_k(a, a, c, d - 1)?;
    let p = levels_p(a, b, c, d, t)?;
    let p_prev = levels_p(a, b - 1, c, d, t)?;
    let p_down = levels_p(a, a, c, d - 1, t)?;
    let dd = big(d + 1);
    let tt = big(t);
    let two_k = BigUint::from(1u8) << usize::try_from(&k).expect("k fits");
    Ok([
        k >= k_prev.clone() + &k_down,
        p >= big(2) * &dd * &dd * &tt * &tt,
        p >= big(2) * &dd * &tt * &p_prev,
        p >= two_k * &tt,
        p >= &tt * &p_prev + p_down,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spot_values() {
        assert_eq!(levels_k(2, 2, 1, 1).unwrap(), big(4));
        assert_eq!(levels_p(2, 2, 1, 1, 2).unwrap(), big(1024));
        assert_eq!(levels_k(2, 1, 2, 1).unwrap(), big(9));
        assert_eq!(levels_p(2, 1, 2, 1, 1).unwrap(), big(512));
        assert_eq!(levels_k(3, 0, 2, 0).unwrap(), big(1));
        assert!(levels_k(2, 0, 0, 1).is_err());
        assert!(levels_k(1, 0, 1, 1).is_err());
        assert!(levels_k(2, 3, 1, 1).is_err());
    }

    #[test]
    fn grid_holds_from_c_two() {
        for a in 2..=4 {
            for b in 1..=a {
                for c in 2..=4 {
                    for d in 1..=4 {
                        for t in 1..=4 {
                            let ok = claim_inequalities(a, b, c, d, t).unwrap();
                            assert!(ok.iter().all(|&x| x), "a={a} b={b} c={c} d={d} t={t}: {ok:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn first_inequality_tight_below_a() {
        let k = levels_k(3, 1, 2, 2).unwrap();
        let k_prev = levels_k(3, 0, 2, 2).unwrap();
        assert_eq!(k - k_prev, levels_k(3, 3, 2, 1).unwrap());
    }
}

//! Every threshold the template layer compares against. Nothing else in the
//! crate recomputes these.

use num_bigint::BigUint;

use super::{big, pow};

/// `s·t^{s−1}`: neighbours needed to attach to a template.
pub fn attach_nbrs(s: usize, t: usize) -> BigUint {
    big(s) * pow(&big(t), s - 1)
}

/// `⌊w/t⌋`: non-neighbours needed to attach; `0` when `t > w`.
pub fn attach_non_nbrs(w: usize, t: usize) -> BigUint {
    big(w / t)
}

/// `t^{s−1}`: neighbours needed in the dense attachment set.
pub fn dense_nbrs(s: usize, t: usize) -> BigUint {
    pow(&big(t), s - 1)
}

/// `s³·t^{s−1}`.
pub fn heavy_nbrs(s: usize, t: usize) -> BigUint {
    big(s * s * s) * pow(&big(t), s - 1)
}

/// `(dt)^s`.
pub fn dt_s(d: usize, t: usize, s: usize) -> BigUint {
    pow(&big(d * t), s)
}

/// `2(dt)^{2s} + (dt)^s`.
pub fn six_count(d: usize, t: usize, s: usize) -> BigUint {
    big(2) * pow(&big(d * t), 2 * s) + dt_s(d, t, s)
}

/// `60dws(dt)^{5s}`.
pub fn seven_count(d: usize, w: usize, t: usize, s: usize) -> BigUint {
    big(60 * d * w * s) * pow(&big(d * t), 5 * s)
}

/// `3(dt)^{3s}`: external-degree cap of an 8-nice sequence.
pub fn eight_degree(d: usize, t: usize, s: usize) -> BigUint {
    big(3) * pow(&big(d * t), 3 * s)
}

/// Class-count ceiling of the split at `stage` (1, 3, 5 or 8).
pub fn split_ceiling(stage: u8, s: usize, d: usize, w: usize, t: usize) -> BigUint {
    match stage {
        1 => big(2 * t),
        3 => big(2 * s * d * w),
        5 => big(2 * d * w) * dt_s(d, t, s),
        8 => big(120 * d * w * s) * pow(&big(d * t), 5 * s),
        _ => panic!("no split at stage {stage}"),
    }
}

/// Lower bound on `w` under which the upgrade to `target` is proved.
pub fn upgrade_floor(target: u8, s: usize, t: usize) -> BigUint {
    match target {
        2 => big((s + 1) * t) + big(s * s * s) * pow(&big(t), s),
        4 => {
            let ts = pow(&big(t), s - 1);
            big((s - 1) * s * s) * &ts + big(s.pow(4)) * ts + big(s)
        }
        6 | 7 => big(1),
        _ => panic!("no upgrade to level {target}"),
    }
}

/// `s⁴tˢ + s`.
pub fn template_width(s: usize, t: usize) -> BigUint {
    big(s.pow(4)) * pow(&big(t), s) + big(s)
}

//! Cantor pairing on the naturals.
//!
//! `pair(x, y) = (x + y)(x + y + 1) / 2 + y`, so `pair(0, 0) = 0`,
//! `pair(1, 0) = 1`, `pair(0, 1) = 2`, `pair(2, 0) = 3`.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// Pairs two naturals. Panics on `u64` overflow; use [`try_pair`] when the
/// arguments are not known to be small.
pub fn pair(x: u64, y: u64) -> u64 {
    try_pair(x, y).expect("Cantor pairing overflowed u64")
}

pub fn try_pair(x: u64, y: u64) -> Option<u64> {
    let sum = x.checked_add(y)?;
    let tri = if sum % 2 == 0 {
        (sum / 2).checked_mul(sum.checked_add(1)?)?
    } else {
        sum.checked_mul(sum.checked_add(1)? / 2)?
    };
    tri.checked_add(y)
}

/// Inverse of [`pair`]: returns `(x, y)` with `pair(x, y) == z`.
pub fn unpair(z: u64) -> (u64, u64) {
    let w = diagonal(z);
    let tri = tri_of(w).expect("diagonal keeps w(w+1)/2 <= z");
    let y = z - tri;
    (w - y, y)
}

/// Largest `w` with `w(w+1)/2 <= z`.
fn diagonal(z: u64) -> u64 {
    // float estimate, then correct by at most a couple of steps
    let mut w = ((((8.0 * z as f64) + 1.0).sqrt() - 1.0) / 2.0) as u64;
    while tri_of(w + 1).is_some_and(|t| t <= z) {
        w += 1;
    }
    while tri_of(w).is_none_or(|t| t > z) {
        w -= 1;
    }
    w
}

fn tri_of(w: u64) -> Option<u64> {
    let (a, b) = if w.is_multiple_of(2) { (w / 2, w + 1) } else { (w, w.div_ceil(2)) };
    a.checked_mul(b)
}

/// Arbitrary-precision pairing, used by the program numbering.
pub fn pair_big(x: &BigUint, y: &BigUint) -> BigUint {
    let sum = x + y;
    let tri = (&sum * (&sum + BigUint::one())) >> 1u32;
    tri + y
}

/// Arbitrary-precision inverse pairing.
pub fn unpair_big(z: &BigUint) -> (BigUint, BigUint) {
    if let Some(small) = z.to_u64() {
        let (x, y) = unpair(small);
        return (BigUint::from(x), BigUint::from(y));
    }
    // w = floor((sqrt(8z + 1) - 1) / 2)
    let disc: BigUint = (z << 3u32) + BigUint::one();
    let mut w: BigUint = (disc.sqrt() - BigUint::one()) >> 1u32;
    let tri = |w: &BigUint| (w * (w + BigUint::one())) >> 1u32;
    while tri(&(&w + BigUint::one())) <= *z {
        w += BigUint::one();
    }
    while tri(&w) > *z && !w.is_zero() {
        w -= BigUint::one();
    }
    let y = z - tri(&w);
    (&w - &y, y)
}

/// Encodes a tuple as a single natural: `()` ↦ 0, `(x)` ↦ x,
/// `(x1, ..., xk)` ↦ `pair(x1, encode(x2, ..., xk))`.
pub fn encode_tuple(xs: &[u64]) -> Option<u64> {
    match xs {
        [] => Some(0),
        [x] => Some(*x),
        [x, rest @ ..] => try_pair(*x, encode_tuple(rest)?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn first_values() {
        assert_eq!(pair(0, 0), 0);
        assert_eq!(pair(1, 0), 1);
        assert_eq!(pair(0, 1), 2);
        assert_eq!(pair(2, 0), 3);
        assert_eq!(pair(1, 1), 4);
        assert_eq!(pair(0, 2), 5);
    }

    #[test]
    fn enumerates_diagonals_in_order() {
        let mut z = 0;
        for d in 0..40u64 {
            for y in 0..=d {
                assert_eq!(pair(d - y, y), z);
                assert_eq!(unpair(z), (d - y, y));
                z += 1;
            }
        }
    }

    #[test]
    fn overflow_is_reported() {
        assert_eq!(try_pair(u64::MAX, 1), None);
        let (x, y) = unpair(u64::MAX);
        assert_eq!(try_pair(x, y), Some(u64::MAX));
    }

    #[test]
    fn tuples() {
        assert_eq!(encode_tuple(&[]), Some(0));
        assert_eq!(encode_tuple(&[7]), Some(7));
        assert_eq!(encode_tuple(&[1, 0]), Some(1));
        assert_eq!(encode_tuple(&[0, 1, 0]), Some(pair(0, pair(1, 0))));
    }

    proptest! {
        #[test]
        fn unpair_inverts_pair(x in 0u64..1 << 30, y in 0u64..1 << 30) {
            prop_assert_eq!(unpair(pair(x, y)), (x, y));
        }

        #[test]
        fn big_agrees_with_small(x in 0u64..1 << 30, y in 0u64..1 << 30) {
            let z = pair_big(&BigUint::from(x), &BigUint::from(y));
            prop_assert_eq!(z.clone(), BigUint::from(pair(x, y)));
            let shifted = (z << 70u32) + BigUint::from(x);
            let (a, b) = unpair_big(&shifted);
            prop_assert_eq!(pair_big(&a, &b), shifted);
        }
    }
}

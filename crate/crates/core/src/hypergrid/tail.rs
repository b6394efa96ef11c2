use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// `Pr[ ||x| - d/2| > 3 sqrt(d) ]` for uniform `x` in `{0,1}^d`, exactly.
///
/// The condition is tested as `(2k - d)^2 > 36 d`, which is equivalent and
/// needs no square roots.
pub fn hamming_tail_probability(d: u32) -> BigRational {
    let d_i = d as i64;
    let mut binom = BigInt::one();
    let mut count = BigInt::zero();
    for k in 0..=d_i {
        if k > 0 {
            binom = binom * BigInt::from(d_i - k + 1) / BigInt::from(k);
        }
        let dev = 2 * k - d_i;
        if (dev as i128) * (dev as i128) > 36 * d_i as i128 {
            count += &binom;
        }
    }
    BigRational::new(count, BigInt::one() << d as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn tiny_dimensions_have_no_tail() {
        assert!(hamming_tail_probability(1).is_zero());
        // 3 sqrt(d) >= d/2 until d = 36, so nothing lies outside the band.
        for d in 1..=36 {
            assert!(hamming_tail_probability(d).is_zero(), "d = {d}");
        }
    }

    #[test]
    fn d_100_matches_direct_sum() {
        // Oracle: |k - 50| > 30 means k <= 19 or k >= 81.
        let mut c = BigInt::one();
        let mut total = BigInt::zero();
        for k in 0..=100i64 {
            if k > 0 {
                c = c * BigInt::from(100 - k + 1) / BigInt::from(k);
            }
            if (k - 50).abs() > 30 {
                total += &c;
            }
        }
        let expected = BigRational::new(total, BigInt::one() << 100usize);
        assert_eq!(hamming_tail_probability(100), expected);
        assert!(expected.to_f64().unwrap() < 0.03);
    }

    #[test]
    fn below_bound_from_64_on() {
        let bound = BigRational::new(BigInt::from(3), BigInt::from(100));
        for d in [64, 81, 100, 128, 144, 196, 256, 400] {
            assert!(hamming_tail_probability(d) < bound, "d = {d}");
        }
    }
}

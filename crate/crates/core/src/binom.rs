//! Exact binomial coefficients.

/// `C(n, k)` in exact integer arithmetic; zero whenever `k > n`.
///
/// Panics on overflow of `u128`, which does not happen for any parameter
/// range this crate scans.
pub fn binom(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) after the multiplication.
        acc = acc
            .checked_mul(u128::from(n - i))
            .expect("binomial coefficient overflow")
            / u128::from(i + 1);
    }
    acc
}

/// `C(n, k)` for signed arguments: zero whenever `n < k`, `k < 0` or `n < 0`.
pub fn binom_i(n: i64, k: i64) -> u128 {
    if n < 0 || k < 0 || n < k {
        0
    } else {
        binom(n as u64, k as u64)
    }
}

/// Real-valued falling-factorial binomial `x(x-1)...(x-k+1)/k!`.
pub fn binom_real(x: f64, k: u32) -> f64 {
    let mut acc = 1.0;
    for i in 0..k {
        acc *= (x - f64::from(i)) / f64::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(binom(5, 2), 10);
        assert_eq!(binom(9, 3), 84);
        assert_eq!(binom(3, 5), 0);
        assert_eq!(binom(0, 0), 1);
        assert_eq!(binom(39, 10), 635_745_396);
        assert_eq!(binom_i(-1, 0), 0);
        assert_eq!(binom_i(4, -1), 0);
        assert_eq!(binom_i(6, 3), 20);
    }

    #[test]
    fn pascal_rule() {
        for n in 1..60u64 {
            for k in 1..=n {
                assert_eq!(binom(n, k), binom(n - 1, k - 1) + binom(n - 1, k));
            }
        }
    }

    #[test]
    fn real_matches_integer() {
        for n in 0..20u32 {
            for k in 0..6u32 {
                let exact = binom(u64::from(n), u64::from(k)) as f64;
                assert!((binom_real(f64::from(n), k) - exact).abs() < 1e-9);
            }
        }
    }
}

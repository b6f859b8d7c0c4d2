//! The recurrence `f_b(n) = b·f_b(n−1) + n`, `f_b(0) = 0`.

use num_integer::Integer as _;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::numeric::{pow, Natural};

fn check_base(b: u32) -> Result<()> {
    if b < 2 {
        Err(Error::InvalidBase(b))
    } else {
        Ok(())
    }
}

/// `f_b(n)` by running the recurrence forward.
pub fn f_iterative(b: u32, n: u64) -> Result<Natural> {
    check_base(b)?;
    let base = Natural::from(b);
    let mut f = Natural::zero();
    for i in 1..=n {
        f = f * &base + Natural::from(i);
    }
    Ok(f)
}

/// `f_b(n) = (b^{n+1} − b(n+1) + n) / (b−1)²`, with the division checked.
pub fn f_closed(b: u32, n: u64) -> Result<Natural> {
    check_base(b)?;
    let numer = pow(b, n + 1) + Natural::from(n) - Natural::from(b) * Natural::from(n + 1);
    let bm1 = Natural::from(b - 1);
    let denom = &bm1 * &bm1;
    let (q, r) = numer.div_rem(&denom);
    if !r.is_zero() {
        return Err(Error::Inconsistent(format!(
            "closed form for f_{b}({n}) is not divisible by (b-1)^2"
        )));
    }
    Ok(q)
}

/// The constant `c = (2k−1)(b−1) + b` inside the binomial series.
pub fn c_constant(b: u32, k: u64) -> Result<Natural> {
    check_base(b)?;
    if k == 0 {
        return Err(Error::InvalidK { min: 1, got: k });
    }
    Ok(Natural::from(2 * k - 1) * Natural::from(b - 1) + Natural::from(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iterative_examples() {
        assert_eq!(f_iterative(10, 0).unwrap(), 0u32.into());
        assert_eq!(f_iterative(10, 3).unwrap(), 123u32.into());
        assert_eq!(f_iterative(5, 7).unwrap(), 24412u32.into());
    }

    #[test]
    fn closed_examples() {
        assert_eq!(f_closed(10, 3).unwrap(), 123u32.into());
        assert_eq!(f_closed(2, 0).unwrap(), 0u32.into());
        let expect = (pow(10, 50) + Natural::from(49u32) - Natural::from(500u32)) / 81u32;
        assert_eq!(f_closed(10, 49).unwrap(), expect);
    }

    #[test]
    fn forms_agree() {
        for b in 2..=36 {
            for n in 0..=100 {
                assert_eq!(
                    f_iterative(b, n).unwrap(),
                    f_closed(b, n).unwrap(),
                    "b={b} n={n}"
                );
            }
        }
    }

    #[test]
    fn f_of_one_is_one() {
        for b in 2..=40 {
            assert_eq!(f_closed(b, 1).unwrap(), 1u32.into());
        }
    }

    #[test]
    fn square_identity() {
        // f_b(2k−1)·(b−1)² + 2kb − (2k−1) = b^{2k}
        for b in 2..=20u32 {
            for k in 1..=30u64 {
                let f = f_closed(b, 2 * k - 1).unwrap();
                let lhs = f * Natural::from((b - 1) * (b - 1))
                    + Natural::from(2 * k) * Natural::from(b)
                    - Natural::from(2 * k - 1);
                assert_eq!(lhs, pow(b, 2 * k));
            }
        }
    }

    #[test]
    fn c_examples() {
        assert_eq!(c_constant(10, 25).unwrap(), 451u32.into());
        assert_eq!(c_constant(8, 25).unwrap(), 351u32.into());
        assert_eq!(c_constant(2, 1).unwrap(), 3u32.into());
    }

    #[test]
    fn rejects_small_base() {
        assert_eq!(f_iterative(1, 3), Err(Error::InvalidBase(1)));
        assert_eq!(f_closed(0, 3), Err(Error::InvalidBase(0)));
        assert!(c_constant(10, 0).is_err());
    }
}

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// The n-th Fibonacci number with F(0) = 0, F(1) = F(2) = 1.
pub fn fibonacci(n: u64) -> BigInt {
    let mut a = BigInt::zero();
    let mut b = BigInt::one();
    for _ in 0..n {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(fibonacci(0), BigInt::from(0));
        assert_eq!(fibonacci(1), BigInt::from(1));
        assert_eq!(fibonacci(2), BigInt::from(1));
        assert_eq!(fibonacci(10), BigInt::from(55));
        assert_eq!(fibonacci(20), BigInt::from(6765));
        assert_eq!(fibonacci(23), BigInt::from(28657));
    }

    #[test]
    fn doubling_identity() {
        // F(2k) = F(k) * (2F(k+1) - F(k))
        for k in 0..=200u64 {
            let fk = fibonacci(k);
            let fk1 = fibonacci(k + 1);
            let rhs = &fk * (BigInt::from(2) * &fk1 - &fk);
            assert_eq!(fibonacci(2 * k), rhs, "k = {k}");
        }
    }
}

//! Benchmark-only crate; the measurements live under benches/.
//!
//! The one exported item is the schoolbook sequence walk used as the
//! baseline against the library's doubling method.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Computes the k-step Fibonacci number by walking the recurrence one
/// index at a time.  Linear in n, quadratic in the digit count; exists
/// only to give the doubling method something honest to beat.
pub fn fib_iterative(k: u64, n: u64) -> BigUint {
    let k = BigUint::from(k);
    let mut prev = BigUint::zero();
    let mut cur = BigUint::one();
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = &k * &cur + &prev;
        prev = cur;
        cur = next;
    }
    cur
}

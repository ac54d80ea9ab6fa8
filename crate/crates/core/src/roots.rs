//! Bracketed scalar root finding.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Find a root of `f` on `[lo, hi]` by bisection.
///
/// Requires `f(lo)` and `f(hi)` to differ in sign (an exact zero at either
/// end is returned immediately). Iterates until the bracket width falls below
/// `rel_tol * max(|lo|, |hi|)` or the midpoint can no longer move in floating
/// point, whichever comes first.
pub fn bisect<T, F>(mut lo: T, mut hi: T, f: F, rel_tol: T, max_iter: usize) -> Result<T>
where
    T: Real,
    F: Fn(T) -> T,
{
    if !(lo < hi) {
        return Err(Error::RootFind(format!("empty bracket [{lo}, {hi}]")));
    }
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == T::zero() {
        return Ok(lo);
    }
    if f_hi == T::zero() {
        return Ok(hi);
    }
    if (f_lo > T::zero()) == (f_hi > T::zero()) {
        return Err(Error::RootFind(format!(
            "no sign change on [{lo}, {hi}]: f(lo) = {f_lo:e}, f(hi) = {f_hi:e}"
        )));
    }
    let half = T::of(0.5);
    for _ in 0..max_iter {
        let mid = (lo + hi) * half;
        if mid <= lo || mid >= hi {
            // Bracket exhausted at this precision.
            return Ok(mid);
        }
        let f_mid = f(mid);
        if f_mid == T::zero() {
            return Ok(mid);
        }
        if (f_mid > T::zero()) == (f_lo > T::zero()) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
        if hi - lo <= rel_tol * lo.abs().max(hi.abs()) {
            break;
        }
    }
    Ok((lo + hi) * half)
}

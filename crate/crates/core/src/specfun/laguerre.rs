//! Generalized Laguerre polynomials.

use crate::scalar::Scalar;

/// L_n^σ(z) via (k+1) L_{k+1} = (2k+1+σ-z) L_k - (k+σ) L_{k-1}.
pub fn laguerre<T: Scalar>(n: usize, sigma: T, z: T) -> T {
    let mut prev = T::one();
    if n == 0 {
        return prev;
    }
    let mut cur = T::one() + sigma - z;
    for k in 1..n {
        let kf = T::from_int(k as i64);
        let next = ((T::lit(2.0) * kf + T::one() + sigma - z) * cur - (kf + sigma) * prev) / (kf + T::one());
        prev = cur;
        cur = next;
    }
    cur
}

/// L_0^σ(z), …, L_{len-1}^σ(z) from a single recurrence pass.
pub fn laguerre_sequence<T: Scalar>(len: usize, sigma: T, z: T) -> Vec<T> {
    let mut out = Vec::with_capacity(len);
    if len == 0 {
        return out;
    }
    out.push(T::one());
    if len == 1 {
        return out;
    }
    out.push(T::one() + sigma - z);
    for k in 1..len - 1 {
        let kf = T::from_int(k as i64);
        let next = ((T::lit(2.0) * kf + T::one() + sigma - z) * out[k] - (kf + sigma) * out[k - 1]) / (kf + T::one());
        out.push(next);
    }
    out
}

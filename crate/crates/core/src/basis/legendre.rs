use crate::scalar::Real;

/// `P_0(s), ..., P_r(s)` by the three-term recurrence
/// `(j+1) P_{j+1} = (2j+1) s P_j - j P_{j-1}`.
pub fn legendre_values<T: Real>(r: usize, s: T) -> Vec<T> {
    let mut p = Vec::with_capacity(r + 1);
    p.push(T::one());
    if r >= 1 {
        p.push(s);
    }
    for j in 1..r {
        let jf = T::of(j);
        let next = ((jf + jf + T::one()) * s * p[j] - jf * p[j - 1]) / (jf + T::one());
        p.push(next);
    }
    p
}

/// `P_0'(s), ..., P_r'(s)` via `P_{j+1}' = P_{j-1}' + (2j+1) P_j`.
///
/// Unlike the closed form `j (s P_j - P_{j-1}) / (s^2 - 1)` this has no
/// singularity at the endpoints.
pub fn legendre_derivatives<T: Real>(r: usize, s: T) -> Vec<T> {
    let p = legendre_values(r, s);
    let mut d = Vec::with_capacity(r + 1);
    d.push(T::zero());
    if r >= 1 {
        d.push(T::one());
    }
    for j in 1..r {
        let jf = T::of(j);
        d.push(d[j - 1] + (jf + jf + T::one()) * p[j]);
    }
    d
}

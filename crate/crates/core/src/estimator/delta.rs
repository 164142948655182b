use crate::scalar::Real;

/// Legendre coefficients of the discrete delta `L` on an interval of length
/// `k`: the degree-`r` polynomial with `∫_I L q dt = q(left end)` for every
/// `q` of degree `<= r`. Since `∫_I P̂_j² dt = k / (2j+1)` and
/// `P̂_j(left) = (-1)^j`, the coefficients are `(2j+1) (-1)^j / k`.
pub fn delta_coeffs<T: Real>(r: usize, k: T) -> Vec<T> {
    (0..=r)
        .map(|j| {
            let c = T::of(2 * j + 1) / k;
            if j % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(delta_coeffs(1, 1.0), vec![1.0, -3.0]);
        assert_eq!(delta_coeffs(2, 1.0), vec![1.0, -3.0, 5.0]);
        assert_eq!(delta_coeffs(1, 2.0), vec![0.5, -1.5]);
    }
}

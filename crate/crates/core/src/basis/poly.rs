use crate::error::{Error, Result};
use crate::scalar::Real;

use super::{legendre_derivatives, legendre_values, QuadratureRule};

/// Closed time interval `[a, b]` with `b > a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval<T> {
    a: T,
    b: T,
}

impl<T: Real> Interval<T> {
    pub fn new(a: T, b: T) -> Result<Self> {
        if !(b > a) || !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidInterval {
                a: a.as_f64(),
                b: b.as_f64(),
            });
        }
        Ok(Self { a, b })
    }

    pub fn start(&self) -> T {
        self.a
    }

    pub fn end(&self) -> T {
        self.b
    }

    pub fn length(&self) -> T {
        self.b - self.a
    }

    /// Affine map onto `[-1, 1]`.
    pub fn to_reference(&self, t: T) -> T {
        T::lit(2.0) * (t - self.a) / self.length() - T::one()
    }

    pub fn from_reference(&self, s: T) -> T {
        self.a + (s + T::one()) * self.length() / T::lit(2.0)
    }

    /// Physical images of the rule's nodes.
    pub fn map_nodes(&self, rule: &QuadratureRule<T>) -> Vec<T> {
        rule.nodes()
            .iter()
            .map(|&s| self.from_reference(s))
            .collect()
    }

    /// `n` equispaced points including both endpoints (`n >= 2`).
    pub fn equispaced(&self, n: usize) -> Vec<T> {
        let n = n.max(2);
        (0..n)
            .map(|i| {
                if i == n - 1 {
                    self.b
                } else {
                    self.a + self.length() * T::of(i) / T::of(n - 1)
                }
            })
            .collect()
    }

    fn slack(&self) -> T {
        let scale = T::one().max(self.a.abs()).max(self.b.abs());
        T::lit(1e-12).max(T::epsilon() * T::lit(8.0) * scale)
    }
}

/// Vector-valued polynomial on one interval, stored by Legendre coefficients:
/// `p(t) = Σ_j coeffs[j] P_j(s(t))`.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalPoly<T> {
    interval: Interval<T>,
    dim: usize,
    coeffs: Vec<Vec<T>>,
}

impl<T: Real> LocalPoly<T> {
    /// Fails when `coeffs` is empty or the vectors disagree in length.
    pub fn new(interval: Interval<T>, coeffs: Vec<Vec<T>>) -> Result<Self> {
        let dim = coeffs.first().map(Vec::len).ok_or(Error::SampleCount {
            expected: 1,
            got: 0,
        })?;
        if dim == 0 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                got: 0,
            });
        }
        if let Some(bad) = coeffs.iter().find(|c| c.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: bad.len(),
            });
        }
        Ok(Self {
            interval,
            dim,
            coeffs,
        })
    }

    pub fn constant(interval: Interval<T>, value: &[T]) -> Self {
        Self {
            interval,
            dim: value.len(),
            coeffs: vec![value.to_vec()],
        }
    }

    pub fn zero(interval: Interval<T>, dim: usize, deg: usize) -> Self {
        Self {
            interval,
            dim,
            coeffs: vec![vec![T::zero(); dim]; deg + 1],
        }
    }

    /// Scalar polynomial from its Legendre coefficients.
    pub fn scalar(interval: Interval<T>, coeffs: &[T]) -> Self {
        Self {
            interval,
            dim: 1,
            coeffs: coeffs.iter().map(|&c| vec![c]).collect(),
        }
    }

    pub fn interval(&self) -> Interval<T> {
        self.interval
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Vec<T>] {
        &self.coeffs
    }

    /// Evaluation at physical `t`, rejecting points outside the interval.
    pub fn eval(&self, t: T) -> Result<Vec<T>> {
        let s = self.checked_reference(t)?;
        Ok(self.eval_reference(s))
    }

    /// Time derivative `dp/dt` at physical `t`.
    pub fn eval_derivative(&self, t: T) -> Result<Vec<T>> {
        let s = self.checked_reference(t)?;
        let d = legendre_derivatives(self.degree(), s);
        let scale = T::lit(2.0) / self.interval.length();
        let mut out = combine(&self.coeffs, &d, self.dim);
        out.iter_mut().for_each(|x| *x = *x * scale);
        Ok(out)
    }

    /// Evaluation at a reference coordinate `s ∈ [-1, 1]`.
    pub fn eval_reference(&self, s: T) -> Vec<T> {
        let p = legendre_values(self.degree(), s);
        combine(&self.coeffs, &p, self.dim)
    }

    /// Value at the right endpoint: every `P_j(1) = 1`.
    pub fn right_value(&self) -> Vec<T> {
        let mut out = vec![T::zero(); self.dim];
        for c in &self.coeffs {
            for (o, &x) in out.iter_mut().zip(c) {
                *o = *o + x;
            }
        }
        out
    }

    /// Value at the left endpoint: `P_j(-1) = (-1)^j`.
    pub fn left_value(&self) -> Vec<T> {
        let mut out = vec![T::zero(); self.dim];
        for (j, c) in self.coeffs.iter().enumerate() {
            for (o, &x) in out.iter_mut().zip(c) {
                *o = if j % 2 == 0 { *o + x } else { *o - x };
            }
        }
        out
    }

    /// Exact L2 projection onto degree `deg`. For a Legendre expansion this
    /// is truncation (or zero padding when `deg` exceeds the degree).
    pub fn truncated(&self, deg: usize) -> Self {
        let mut coeffs: Vec<Vec<T>> = self.coeffs.iter().take(deg + 1).cloned().collect();
        coeffs.resize(deg + 1, vec![T::zero(); self.dim]);
        Self {
            interval: self.interval,
            dim: self.dim,
            coeffs,
        }
    }

    /// Time derivative as a polynomial of one degree less (degree 0 stays 0).
    pub fn derivative(&self) -> Self {
        let n = self.degree();
        let scale = T::lit(2.0) / self.interval.length();
        let mut out = vec![vec![T::zero(); self.dim]; n.max(1)];
        // d/ds P_i = Σ_{j < i, i - j odd} (2j + 1) P_j
        for i in 1..=n {
            for j in (0..i).rev().step_by(2) {
                let f = T::of(2 * j + 1) * scale;
                for (o, &c) in out[j].iter_mut().zip(&self.coeffs[i]) {
                    *o = *o + f * c;
                }
            }
        }
        Self {
            interval: self.interval,
            dim: self.dim,
            coeffs: out,
        }
    }

    /// `∫_a^b p(t) dt`.
    pub fn integral(&self) -> Vec<T> {
        self.coeffs[0]
            .iter()
            .map(|&c| c * self.interval.length())
            .collect()
    }

    /// `self + value`, with `value` added to the constant coefficient.
    pub fn add_constant(mut self, value: &[T]) -> Self {
        for (c, &v) in self.coeffs[0].iter_mut().zip(value) {
            *c = *c + v;
        }
        self
    }

    /// `self + other`, same interval and dimension; degree is the larger one.
    pub fn add(&self, other: &Self) -> Self {
        let deg = self.degree().max(other.degree());
        let mut out = self.truncated(deg);
        for (o, c) in out.coeffs.iter_mut().zip(&other.coeffs) {
            for (x, &y) in o.iter_mut().zip(c) {
                *x = *x + y;
            }
        }
        out
    }

    /// Tensor product of a scalar polynomial with a fixed vector.
    pub fn scalar_times_vector(scalar: &Self, v: &[T]) -> Self {
        Self {
            interval: scalar.interval,
            dim: v.len(),
            coeffs: scalar
                .coeffs
                .iter()
                .map(|c| v.iter().map(|&x| c[0] * x).collect())
                .collect(),
        }
    }

    /// Largest absolute coefficient entry.
    pub fn max_abs_coeff(&self) -> T {
        self.coeffs
            .iter()
            .flatten()
            .fold(T::zero(), |m, &x| m.max(x.abs()))
    }

    /// Largest absolute coefficient difference; shorter expansions are zero padded.
    pub fn max_coeff_diff(&self, other: &Self) -> T {
        let deg = self.degree().max(other.degree());
        let a = self.truncated(deg);
        let b = other.truncated(deg);
        a.coeffs
            .iter()
            .flatten()
            .zip(b.coeffs.iter().flatten())
            .fold(T::zero(), |m, (&x, &y)| m.max((x - y).abs()))
    }

    fn checked_reference(&self, t: T) -> Result<T> {
        let iv = self.interval;
        let slack = iv.slack();
        if !(t >= iv.a - slack && t <= iv.b + slack) {
            return Err(Error::OutOfInterval {
                t: t.as_f64(),
                a: iv.a.as_f64(),
                b: iv.b.as_f64(),
            });
        }
        Ok(iv.to_reference(t).max(-T::one()).min(T::one()))
    }
}

fn combine<T: Real>(coeffs: &[Vec<T>], basis: &[T], dim: usize) -> Vec<T> {
    let mut out = vec![T::zero(); dim];
    for (c, &b) in coeffs.iter().zip(basis) {
        for (o, &x) in out.iter_mut().zip(c) {
            *o = *o + x * b;
        }
    }
    out
}

/// Evaluates `p` at physical time `t`.
pub fn poly_eval<T: Real>(p: &LocalPoly<T>, t: T) -> Result<Vec<T>> {
    p.eval(t)
}

/// Discrete L2 projection of values sampled at the Gauss nodes of `interval`
/// onto polynomials of degree `target_deg`:
/// `c_j = (2j+1)/2 · Σ_i w_i samples[i] P_j(s_i)`.
pub fn project<T: Real>(
    samples: &[Vec<T>],
    rule: &QuadratureRule<T>,
    target_deg: usize,
    interval: Interval<T>,
) -> Result<LocalPoly<T>> {
    let q = rule.len();
    if q < target_deg + 1 {
        return Err(Error::ProjectionUnderresolved { q, target_deg });
    }
    if samples.len() != q {
        return Err(Error::SampleCount {
            expected: q,
            got: samples.len(),
        });
    }
    let dim = samples[0].len();
    if let Some(bad) = samples.iter().find(|s| s.len() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: bad.len(),
        });
    }
    let mut coeffs = vec![vec![T::zero(); dim]; target_deg + 1];
    for ((&s, &w), sample) in rule.nodes().iter().zip(rule.weights()).zip(samples) {
        let p = legendre_values(target_deg, s);
        for (c, &pj) in coeffs.iter_mut().zip(&p) {
            let f = w * pj;
            for (x, &y) in c.iter_mut().zip(sample) {
                *x = *x + f * y;
            }
        }
    }
    for (j, c) in coeffs.iter_mut().enumerate() {
        let f = T::of(2 * j + 1) / T::lit(2.0);
        c.iter_mut().for_each(|x| *x = *x * f);
    }
    LocalPoly::new(interval, coeffs)
}

/// `q(t) = ∫_a^t p(τ) dτ`, of degree `deg(p) + 1`, using
/// `∫_{-1}^s P_j = (P_{j+1} - P_{j-1}) / (2j+1)` for `j ≥ 1` and
/// `∫_{-1}^s P_0 = P_0 + P_1`.
pub fn antiderivative_from_left<T: Real>(p: &LocalPoly<T>) -> LocalPoly<T> {
    let n = p.degree();
    let half_k = p.interval.length() / T::lit(2.0);
    let mut out = vec![vec![T::zero(); p.dim]; n + 2];
    for (j, c) in p.coeffs.iter().enumerate() {
        if j == 0 {
            for d in 0..p.dim {
                out[0][d] = out[0][d] + c[d];
                out[1][d] = out[1][d] + c[d];
            }
        } else {
            let f = T::one() / T::of(2 * j + 1);
            for d in 0..p.dim {
                out[j + 1][d] = out[j + 1][d] + f * c[d];
                out[j - 1][d] = out[j - 1][d] - f * c[d];
            }
        }
    }
    out.iter_mut().flatten().for_each(|x| *x = *x * half_k);
    LocalPoly {
        interval: p.interval,
        dim: p.dim,
        coeffs: out,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::gauss_rule;

    fn iv(a: f64, b: f64) -> Interval<f64> {
        Interval::new(a, b).unwrap()
    }

    #[test]
    fn interval_must_be_increasing() {
        assert!(Interval::new(1.0, 1.0).is_err());
        assert!(Interval::new(2.0, 1.0).is_err());
        assert!(Interval::new(0.0, f64::NAN).is_err());
        let i = iv(1.0, 3.0);
        assert_eq!(i.length(), 2.0);
        assert_eq!(i.to_reference(2.0), 0.0);
        assert_eq!(i.from_reference(1.0), 3.0);
    }

    #[test]
    fn evaluation_examples() {
        let c = LocalPoly::constant(iv(0.0, 1.0), &[2.0, -1.0]);
        assert_eq!(c.eval(0.37).unwrap(), vec![2.0, -1.0]);

        // Line from u0 to u1: mean (u0+u1)/2 plus half difference times P_1.
        let (u0, u1) = ([1.0, 0.0], [0.5, 2.0]);
        let line = LocalPoly::new(
            iv(0.0, 0.5),
            vec![
                vec![(u0[0] + u1[0]) / 2.0, (u0[1] + u1[1]) / 2.0],
                vec![(u1[0] - u0[0]) / 2.0, (u1[1] - u0[1]) / 2.0],
            ],
        )
        .unwrap();
        assert_eq!(line.eval(0.5).unwrap(), u1.to_vec());
        assert_eq!(line.right_value(), u1.to_vec());
        assert_eq!(line.left_value(), u0.to_vec());

        let p2 = LocalPoly::scalar(iv(0.0, 2.0), &[0.0, 0.0, 1.0]);
        assert!((p2.eval(1.0).unwrap()[0] + 0.5).abs() < 1e-15);
    }

    #[test]
    fn evaluation_outside_is_rejected() {
        let p = LocalPoly::constant(iv(0.0, 1.0), &[1.0]);
        assert!(p.eval(1.0 + 1e-13).is_ok());
        assert!(matches!(
            p.eval(1.0 + 1e-9),
            Err(Error::OutOfInterval { .. })
        ));
        assert!(p.eval(-0.1).is_err());
        assert!(p.eval(f64::NAN).is_err());
    }

    #[test]
    fn projection_of_square() {
        let rule = gauss_rule::<f64>(3).unwrap();
        let samples: Vec<Vec<f64>> = rule.nodes().iter().map(|s| vec![s * s]).collect();
        let p1 = project(&samples, &rule, 1, iv(-1.0, 1.0)).unwrap();
        assert!((p1.coeffs()[0][0] - 1.0 / 3.0).abs() < 1e-15);
        assert!(p1.coeffs()[1][0].abs() < 1e-15);
        let p2 = project(&samples, &rule, 2, iv(-1.0, 1.0)).unwrap();
        assert!((p2.coeffs()[0][0] - 1.0 / 3.0).abs() < 1e-15);
        assert!(p2.coeffs()[1][0].abs() < 1e-15);
        assert!((p2.coeffs()[2][0] - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn projection_reproduces_polynomials() {
        let i = iv(0.5, 2.0);
        let p = LocalPoly::new(
            i,
            vec![
                vec![1.0, -2.0],
                vec![0.3, 0.0],
                vec![-0.7, 1.1],
                vec![0.25, 0.5],
            ],
        )
        .unwrap();
        let rule = gauss_rule::<f64>(5).unwrap();
        let samples: Vec<_> = i
            .map_nodes(&rule)
            .iter()
            .map(|&t| p.eval(t).unwrap())
            .collect();
        let back = project(&samples, &rule, 3, i).unwrap();
        assert!(back.max_coeff_diff(&p) <= 1e-13);
    }

    #[test]
    fn projection_needs_enough_points() {
        let rule = gauss_rule::<f64>(2).unwrap();
        let samples = vec![vec![1.0]; 2];
        assert_eq!(
            project(&samples, &rule, 2, iv(0.0, 1.0)),
            Err(Error::ProjectionUnderresolved {
                q: 2,
                target_deg: 2
            })
        );
        assert!(matches!(
            project(&samples[..1], &rule, 1, iv(0.0, 1.0)),
            Err(Error::SampleCount { .. })
        ));
    }

    #[test]
    fn antiderivative_examples() {
        let k = 0.75;
        let c = LocalPoly::constant(iv(0.0, k), &[2.0]);
        let q = antiderivative_from_left(&c);
        assert_eq!(q.coeffs(), &[vec![k / 2.0 * 2.0], vec![k / 2.0 * 2.0]]);
        assert!((q.eval(0.5).unwrap()[0] - 1.0).abs() < 1e-15);

        let z = LocalPoly::zero(iv(0.0, 1.0), 2, 3);
        assert_eq!(antiderivative_from_left(&z).max_abs_coeff(), 0.0);

        // ∫_{-1}^s P_1 = (s^2 - 1)/2 = (P_2 - P_0)/3
        let p1 = LocalPoly::scalar(iv(-1.0, 1.0), &[0.0, 1.0]);
        let q = antiderivative_from_left(&p1);
        assert!((q.coeffs()[0][0] + 1.0 / 3.0).abs() < 1e-16);
        assert!(q.coeffs()[1][0].abs() < 1e-16);
        assert!((q.coeffs()[2][0] - 1.0 / 3.0).abs() < 1e-16);
        assert!(q.eval(-1.0).unwrap()[0].abs() < 1e-16);
        for &s in &[-0.6, 0.1, 0.9] {
            assert!((q.eval(s).unwrap()[0] - (s * s - 1.0) / 2.0).abs() < 1e-15);
        }
    }

    #[test]
    fn derivative_polynomial_matches_pointwise_derivative() {
        let p = LocalPoly::new(
            iv(1.0, 1.5),
            vec![vec![0.2], vec![1.0], vec![-0.4], vec![0.8], vec![0.1]],
        )
        .unwrap();
        let d = p.derivative();
        assert_eq!(d.degree(), 3);
        for &t in &[1.0, 1.1, 1.33, 1.5] {
            let a = d.eval(t).unwrap()[0];
            let b = p.eval_derivative(t).unwrap()[0];
            assert!((a - b).abs() < 1e-12 * (1.0 + b.abs()));
        }
    }

    #[test]
    fn integral_of_constant_coefficient() {
        let p = LocalPoly::scalar(iv(0.0, 3.0), &[2.0, 5.0, -1.0]);
        assert_eq!(p.integral(), vec![6.0]);
    }
}

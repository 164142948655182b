use normcg::{antiderivative_from_left, gauss_rule, legendre_values, project, Interval, LocalPoly};
use proptest::prelude::*;

fn scalar_poly(a: f64, b: f64, coeffs: &[f64]) -> LocalPoly<f64> {
    LocalPoly::scalar(Interval::new(a, b).unwrap(), coeffs)
}

#[test]
fn gauss_rules_integrate_monomials_exactly() {
    for q in 1..=20 {
        let rule = gauss_rule::<f64>(q).unwrap();
        assert!((rule.weights().iter().sum::<f64>() - 2.0).abs() < 1e-14);
        for p in 0..2 * q {
            let got = rule.integrate_reference(|s| s.powi(p as i32));
            let want = if p % 2 == 0 {
                2.0 / (p as f64 + 1.0)
            } else {
                0.0
            };
            assert!((got - want).abs() < 1e-13, "q={q} p={p}: {got} vs {want}");
        }
    }
    assert!(gauss_rule::<f64>(0).is_err());
}

#[test]
fn single_precision_rule() {
    let rule = gauss_rule::<f32>(5).unwrap();
    let got = rule.integrate(0.0, 2.0, |t| t * t);
    assert!((got - 8.0 / 3.0).abs() < 1e-5);
}

proptest! {
    #[test]
    fn legendre_orthogonality(i in 0usize..=8, j in 0usize..=8) {
        let rule = gauss_rule::<f64>(10).unwrap();
        let got = rule.integrate_reference(|s| {
            let p = legendre_values(8, s);
            p[i] * p[j]
        });
        let want = if i == j { 2.0 / (2 * i + 1) as f64 } else { 0.0 };
        prop_assert!((got - want).abs() < 1e-13);
    }

    #[test]
    fn projection_reproduces_polynomials(
        coeffs in prop::collection::vec(-5.0f64..5.0, 1..7),
        a in -3.0f64..3.0,
        len in 0.01f64..4.0,
    ) {
        let deg = coeffs.len() - 1;
        let p = scalar_poly(a, a + len, &coeffs);
        let rule = gauss_rule::<f64>(deg + 2).unwrap();
        let samples: Vec<Vec<f64>> = p
            .interval()
            .map_nodes(&rule)
            .into_iter()
            .map(|t| p.eval(t).unwrap())
            .collect();
        let back = project(&samples, &rule, deg, p.interval()).unwrap();
        // mapping t back to [-1, 1] loses about |a| / len ulps
        prop_assert!(back.max_coeff_diff(&p) < 1e-12 * (1.0 + a.abs() / len));
    }

    #[test]
    fn truncation_is_idempotent_and_keeps_mean(
        coeffs in prop::collection::vec(-5.0f64..5.0, 1..9),
        keep in 0usize..8,
    ) {
        let p = scalar_poly(0.0, 1.5, &coeffs);
        let once = p.truncated(keep);
        prop_assert_eq!(once.truncated(keep), once.clone());
        // the mean over the interval is the P_0 coefficient
        prop_assert!((once.integral()[0] - p.integral()[0]).abs() < 1e-12);
    }

    #[test]
    fn antiderivative_inverts_derivative(
        coeffs in prop::collection::vec(-5.0f64..5.0, 1..8),
        a in -2.0f64..2.0,
        len in 0.1f64..3.0,
        frac in 0.0f64..=1.0,
    ) {
        let p = scalar_poly(a, a + len, &coeffs);
        let q = antiderivative_from_left(&p);
        prop_assert_eq!(q.degree(), p.degree() + 1);
        prop_assert!(q.left_value()[0].abs() < 1e-12);
        prop_assert!((q.right_value()[0] - p.integral()[0]).abs() < 1e-10);
        prop_assert!(q.derivative().truncated(p.degree()).max_coeff_diff(&p) < 1e-10);
        let t = a + frac * len;
        let rule = gauss_rule::<f64>(8).unwrap();
        let want = if t > a { rule.integrate(a, t, |x| p.eval(x).unwrap()[0]) } else { 0.0 };
        prop_assert!((q.eval(t).unwrap()[0] - want).abs() < 1e-10);
    }
}

#[test]
fn projection_needs_enough_nodes() {
    let rule = gauss_rule::<f64>(2).unwrap();
    let iv = Interval::new(0.0, 1.0).unwrap();
    assert!(project(&[vec![1.0], vec![1.0]], &rule, 2, iv).is_err());
    assert!(project(&[vec![1.0]], &rule, 1, iv).is_err());
}

#[test]
fn evaluation_outside_interval_is_rejected() {
    let p = scalar_poly(1.0, 2.0, &[1.0, 2.0]);
    assert!(p.eval(0.5).is_err());
    assert!(p.eval(2.5).is_err());
    assert_eq!(p.eval(1.0).unwrap(), vec![-1.0]);
    assert_eq!(p.eval(2.0).unwrap(), vec![3.0]);
}

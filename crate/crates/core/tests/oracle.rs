use bst_core::ghz::{Context, Sign};
use bst_core::quantum::{
    compare_with_stipulation, eigenvalue, ghz_state, omega_eigencheck, omega_observables,
    outcome_probability, Matrix8, ObservableSpec, Pauli, DEFAULT_THRESHOLD,
};

const TOL: f64 = 1e-12;

/// `|<s|psi>|^2 = |1 - Phi|^2 / 16` where `Phi` multiplies `s_j` for an x
/// station and `i s_j` for a y station.
fn closed_form(ctx: &str, signs: [i8; 3]) -> f64 {
    let (mut re, mut im) = (1.0f64, 0.0f64);
    for (axis, s) in ctx.chars().zip(signs) {
        let s = s as f64;
        (re, im) = match axis {
            'x' => (re * s, im * s),
            _ => (-im * s, re * s),
        };
    }
    ((1.0 - re).powi(2) + im.powi(2)) / 16.0
}

fn sign(v: i8) -> Sign {
    Sign::from_value(v)
}

fn all_signs() -> Vec<[i8; 3]> {
    (0..8)
        .map(|bits: u8| [4, 2, 1].map(|m| if bits & m == 0 { -1 } else { 1 }))
        .collect()
}

#[test]
fn pauli_products_are_hermitian_involutory_traceless() {
    let ps = [Pauli::X, Pauli::Y, Pauli::Z];
    for a in ps {
        for b in ps {
            for c in ps {
                let m = ObservableSpec([a, b, c]).matrix();
                assert!((m - m.adjoint()).norm() < TOL);
                assert!((m * m - Matrix8::identity()).norm() < TOL);
                let tr = m.trace();
                assert!(tr.re.abs() < TOL && tr.im.abs() < TOL);
            }
        }
    }
}

#[test]
fn state_amplitudes() {
    let psi = ghz_state();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    assert!((psi.norm() - 1.0).abs() < TOL);
    assert!((psi.amplitude(0).re - h).abs() < TOL);
    assert!((psi.amplitude(7).re + h).abs() < TOL);
    assert!(psi.amplitude(2).norm_sqr() < TOL);
}

#[test]
fn omega_eigenvalues() {
    let check = omega_eigencheck().unwrap();
    let got: Vec<f64> = check.entries.iter().map(|e| e.eigenvalue).collect();
    for (g, want) in got.iter().zip([1.0, 1.0, 1.0, -1.0]) {
        assert!((g - want).abs() < TOL);
    }
    assert!((check.product_eigenvalue + 1.0).abs() < TOL);
    assert!(check.pairwise_commute);
    let xxy = ObservableSpec([Pauli::X, Pauli::X, Pauli::Y]);
    assert!(eigenvalue(xxy, &ghz_state()).is_err());
}

#[test]
fn eigenvalues_survive_station_relabeling() {
    let psi = ghz_state();
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    for perm in perms {
        let moved = psi.permuted(perm);
        for o in omega_observables() {
            let a = eigenvalue(o, &psi).unwrap();
            let b = eigenvalue(o.permuted(perm), &moved).unwrap();
            assert!((a - b).abs() < TOL, "{o} under {perm:?}");
        }
    }
}

#[test]
fn probabilities_match_closed_form() {
    for c in Context::all() {
        let name = c.to_string();
        let mut total = 0.0;
        for s in all_signs() {
            let p = outcome_probability(c, s.map(sign));
            assert!((p - closed_form(&name, s)).abs() < TOL, "{name} {s:?}");
            total += p;
        }
        assert!((total - 1.0).abs() < TOL, "{name}");
    }
    let xxx: Context = "xxx".parse().unwrap();
    assert!((outcome_probability(xxx, [1, -1, 1].map(sign)) - 0.25).abs() < TOL);
    assert!(outcome_probability(xxx, [1, 1, 1].map(sign)).abs() < TOL);
    let xxy: Context = "xxy".parse().unwrap();
    assert!((outcome_probability(xxy, [1, -1, 1].map(sign)) - 0.125).abs() < TOL);
}

#[test]
fn omega_contexts_split_quarter_and_zero() {
    for c in Context::operator_family() {
        for v in c.vectors() {
            let p = outcome_probability(c, v.signs);
            let want = if bst_core::ghz::parity_consistent(&v) { 0.25 } else { 0.0 };
            assert!((p - want).abs() < TOL, "{v}");
        }
    }
}

#[test]
fn discrepancy_report() {
    let r = compare_with_stipulation(DEFAULT_THRESHOLD).unwrap();
    assert_eq!(r.compared, 64);
    assert!(!r.threshold_sensitive);
    for c in Context::operator_family() {
        assert!(r.for_context(c).is_empty(), "{c}");
    }
    for name in ["xxy", "xyx", "yxx", "yyy"] {
        let c: Context = name.parse().unwrap();
        let d = r.for_context(c);
        assert_eq!(d.len(), 4, "{name}");
        for x in d {
            assert!(!x.parity_consistent);
            assert!((x.probability - 0.125).abs() < TOL);
        }
    }
    assert_eq!(r.disagreements.len(), 16);
    assert!(compare_with_stipulation(0.0).is_err());
    assert!(compare_with_stipulation(1.0).is_err());
}

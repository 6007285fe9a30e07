//! Dense three-qubit checks of the GHZ facts the parity rule is modelled on.
//!
//! Basis order is `|q1 q2 q3>` with station 1 as the most significant qubit;
//! `|0>` is the `+1` eigenvector of `sigma_z`. The `sigma_y` eigenvectors use
//! the phase convention `|±y> = (|0> ± i|1>)/sqrt(2)`.

use std::fmt;

use nalgebra::{Complex, SMatrix, SVector, Vector2};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ghz::{format_signs, parity_consistent, Axis, Context, GhzVector, Sign};

pub type C64 = Complex<f64>;
pub type Matrix8 = SMatrix<C64, 8, 8>;
pub type Vector8 = SVector<C64, 8>;

pub const TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Pauli {
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn matrix(self) -> SMatrix<C64, 2, 2> {
        let z = C64::new(0.0, 0.0);
        let one = C64::new(1.0, 0.0);
        let i = C64::new(0.0, 1.0);
        match self {
            Pauli::X => SMatrix::<C64, 2, 2>::new(z, one, one, z),
            Pauli::Y => SMatrix::<C64, 2, 2>::new(z, -i, i, z),
            Pauli::Z => SMatrix::<C64, 2, 2>::new(one, z, z, -one),
        }
    }

    fn letter(self) -> char {
        match self {
            Pauli::X => 'x',
            Pauli::Y => 'y',
            Pauli::Z => 'z',
        }
    }
}

impl From<Axis> for Pauli {
    fn from(a: Axis) -> Pauli {
        match a {
            Axis::X => Pauli::X,
            Axis::Y => Pauli::Y,
        }
    }
}

/// A tensor product of one Pauli matrix per station.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ObservableSpec(pub [Pauli; 3]);

impl ObservableSpec {
    pub fn from_context(c: Context) -> ObservableSpec {
        ObservableSpec(c.0.map(Pauli::from))
    }

    pub fn matrix(self) -> Matrix8 {
        let [a, b, c] = self.0.map(Pauli::matrix);
        let m = a.kronecker(&b).kronecker(&c);
        Matrix8::from_iterator(m.iter().copied())
    }

    /// Applies a station permutation: station `i` of the result carries the
    /// Pauli of station `perm[i]`.
    pub fn permuted(self, perm: [usize; 3]) -> ObservableSpec {
        ObservableSpec(perm.map(|i| self.0[i]))
    }
}

impl fmt::Display for ObservableSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in self.0 {
            write!(f, "{}", p.letter())?;
        }
        Ok(())
    }
}

impl Serialize for ObservableSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector(pub Vector8);

impl StateVector {
    pub fn amplitude(&self, basis: usize) -> C64 {
        self.0[basis]
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    /// Relabels qubits: qubit `i` of the result is qubit `perm[i]` of `self`.
    pub fn permuted(&self, perm: [usize; 3]) -> StateVector {
        let mut out = Vector8::zeros();
        for (idx, amp) in self.0.iter().enumerate() {
            let bit = |q: usize| (idx >> (2 - q)) & 1;
            let new_idx = (0..3).fold(0, |acc, i| acc | (bit(perm[i]) << (2 - i)));
            out[new_idx] = *amp;
        }
        StateVector(out)
    }
}

/// `(|000> - |111>)/sqrt(2)`.
pub fn ghz_state() -> StateVector {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut v = Vector8::zeros();
    v[0] = C64::new(h, 0.0);
    v[7] = C64::new(-h, 0.0);
    StateVector(v)
}

/// The scalar `λ` with `M psi = λ psi`, or `NotEigenstate`.
pub fn eigenvalue(obs: ObservableSpec, psi: &StateVector) -> Result<f64> {
    eigenvalue_of_matrix(&obs.matrix(), psi).ok_or_else(|| Error::NotEigenstate(obs.to_string()))
}

fn eigenvalue_of_matrix(m: &Matrix8, psi: &StateVector) -> Option<f64> {
    let image = m * psi.0;
    let lambda = psi.0.dotc(&image);
    let residual = (image - psi.0 * lambda).norm();
    (residual < TOLERANCE && lambda.im.abs() < TOLERANCE).then_some(lambda.re)
}

/// Omega_1 = xyy, Omega_2 = yxy, Omega_3 = yyx, Omega_4 = xxx.
pub fn omega_observables() -> [ObservableSpec; 4] {
    use Pauli::{X, Y};
    [
        ObservableSpec([X, Y, Y]),
        ObservableSpec([Y, X, Y]),
        ObservableSpec([Y, Y, X]),
        ObservableSpec([X, X, X]),
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenEntry {
    pub observable: ObservableSpec,
    pub eigenvalue: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OmegaCheck {
    pub entries: Vec<EigenEntry>,
    pub product_eigenvalue: f64,
    pub pairwise_commute: bool,
}

pub fn omega_eigencheck() -> Result<OmegaCheck> {
    let psi = ghz_state();
    let obs = omega_observables();
    let entries = obs
        .iter()
        .map(|&o| {
            Ok(EigenEntry {
                observable: o,
                eigenvalue: eigenvalue(o, &psi)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mats: Vec<Matrix8> = obs.iter().map(|o| o.matrix()).collect();
    let product = mats.iter().fold(Matrix8::identity(), |acc, m| acc * m);
    let product_eigenvalue = eigenvalue_of_matrix(&product, &psi)
        .ok_or_else(|| Error::NotEigenstate("Omega_1 Omega_2 Omega_3 Omega_4".into()))?;
    let pairwise_commute = mats.iter().enumerate().all(|(i, a)| {
        mats[i + 1..]
            .iter()
            .all(|b| (a * b - b * a).norm() < TOLERANCE)
    });
    Ok(OmegaCheck {
        entries,
        product_eigenvalue,
        pairwise_commute,
    })
}

fn eigenvector(axis: Axis, sign: Sign) -> Vector2<C64> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let s = sign.value() as f64;
    match axis {
        Axis::X => Vector2::new(C64::new(h, 0.0), C64::new(s * h, 0.0)),
        Axis::Y => Vector2::new(C64::new(h, 0.0), C64::new(0.0, s * h)),
    }
}

/// Amplitude `<s1 s2 s3|psi>` in the context's product eigenbasis.
pub fn outcome_amplitude(context: Context, signs: [Sign; 3], psi: &StateVector) -> C64 {
    let [a, b, c] = [0, 1, 2].map(|i| eigenvector(context.0[i], signs[i]));
    let basis = a.kronecker(&b).kronecker(&c);
    basis
        .iter()
        .zip(psi.0.iter())
        .map(|(e, p)| e.conj() * p)
        .sum()
}

/// Born probability of `signs` when measuring `context` on the GHZ state.
pub fn outcome_probability(context: Context, signs: [Sign; 3]) -> f64 {
    outcome_amplitude(context, signs, &ghz_state()).norm_sqr()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Disagreement {
    pub vector: GhzVector,
    pub signs: String,
    pub parity_consistent: bool,
    pub probability: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscrepancyReport {
    pub threshold: f64,
    pub compared: usize,
    pub disagreements: Vec<Disagreement>,
    /// True when some vector with nonzero probability sits at or below the
    /// threshold, so the verdict depends on the threshold choice.
    pub threshold_sensitive: bool,
}

impl DiscrepancyReport {
    pub fn for_context(&self, c: Context) -> Vec<&Disagreement> {
        self.disagreements
            .iter()
            .filter(|d| d.vector.context == c)
            .collect()
    }
}

pub const DEFAULT_THRESHOLD: f64 = 1e-9;

/// Compares the parity rule with `probability > threshold` on all 64
/// context/sign pairs.
pub fn compare_with_stipulation(threshold: f64) -> Result<DiscrepancyReport> {
    if !(threshold > 0.0 && threshold < 1.0) {
        return Err(Error::PreconditionFailed(format!(
            "threshold {threshold} outside (0, 1)"
        )));
    }
    let mut disagreements = Vec::new();
    let mut sensitive = false;
    let mut compared = 0;
    for c in Context::all() {
        for v in c.vectors() {
            compared += 1;
            let p = outcome_probability(c, v.signs);
            let possible = p > threshold;
            if p > TOLERANCE && !possible {
                sensitive = true;
            }
            let rule = parity_consistent(&v);
            if rule != possible {
                disagreements.push(Disagreement {
                    vector: v,
                    signs: format_signs(&v.signs),
                    parity_consistent: rule,
                    probability: p,
                });
            }
        }
    }
    Ok(DiscrepancyReport {
        threshold,
        compared,
        disagreements,
        threshold_sensitive: sensitive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ghz::parse_signs;

    fn ctx(s: &str) -> Context {
        s.parse().unwrap()
    }

    #[test]
    fn state_amplitudes() {
        let psi = ghz_state();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((psi.norm() - 1.0).abs() < TOLERANCE);
        assert!((psi.amplitude(0) - C64::new(h, 0.0)).norm_sqr().sqrt() < TOLERANCE);
        assert!((psi.amplitude(7) - C64::new(-h, 0.0)).norm_sqr().sqrt() < TOLERANCE);
        assert_eq!(psi.amplitude(0b010), C64::new(0.0, 0.0));
    }

    #[test]
    fn omega_values() {
        let r = omega_eigencheck().unwrap();
        let vals: Vec<f64> = r.entries.iter().map(|e| e.eigenvalue).collect();
        for (got, want) in vals.iter().zip([1.0, 1.0, 1.0, -1.0]) {
            assert!((got - want).abs() < TOLERANCE);
        }
        assert!((r.product_eigenvalue + 1.0).abs() < TOLERANCE);
        assert!(r.pairwise_commute);
    }

    #[test]
    fn xxy_is_not_eigen() {
        use Pauli::{X, Y};
        let err = eigenvalue(ObservableSpec([X, X, Y]), &ghz_state()).unwrap_err();
        assert_eq!(err, Error::NotEigenstate("xxy".into()));
    }

    #[test]
    fn probabilities() {
        let p = |c: &str, s: &str| outcome_probability(ctx(c), parse_signs(s).unwrap());
        assert!((p("xxx", "+-+") - 0.25).abs() < TOLERANCE);
        assert!(p("xxx", "+++").abs() < TOLERANCE);
        assert!((p("xxy", "+-+") - 0.125).abs() < TOLERANCE);
    }

    #[test]
    fn threshold_range() {
        assert!(compare_with_stipulation(0.0).is_err());
        assert!(compare_with_stipulation(1.0).is_err());
        assert!(!compare_with_stipulation(DEFAULT_THRESHOLD)
            .unwrap()
            .threshold_sensitive);
    }

    #[test]
    fn high_threshold_flags_everything_possible() {
        let r = compare_with_stipulation(0.5).unwrap();
        assert!(r.threshold_sensitive);
        // Every parity-consistent vector now reads as impossible, and nothing
        // reads as possible.
        assert_eq!(r.disagreements.len(), 32);
        assert!(r.disagreements.iter().all(|d| d.parity_consistent));
    }
}

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::basis::mode_index;

/// Column order shared by every CSV the harness writes.
pub const CSV_HEADER: [&str; 10] = ["experiment", "n", "beta", "t", "k", "kind", "re", "im", "replica", "seed"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FieldKind {
    /// `<pi_t, psi_k>`
    Empirical,
    /// `Y_t(psi_k)`
    Fluctuation,
    /// `n^{-1} sum_x eta(x) e^{-2 pi i k x/n}`
    EmpiricalMode,
    /// `n^{-1/2} sum_x (eta(x) - rho) e^{-2 pi i k x/n}`
    FluctuationMode,
    /// Mode amplitude of the spectral SPDE integrator.
    Spde,
    /// `sup_t |sqrt(n) int_0^t (eta(1) - eta(r)) ds|^2`, stored with `k = 0`.
    Boundary,
    /// Particle count, stored with `k = 0`.
    Particles,
}

impl FieldKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FieldKind::Empirical => "empirical",
            FieldKind::Fluctuation => "fluctuation",
            FieldKind::EmpiricalMode => "empirical-mode",
            FieldKind::FluctuationMode => "fluctuation-mode",
            FieldKind::Spde => "spde",
            FieldKind::Boundary => "boundary",
            FieldKind::Particles => "particles",
        }
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Truncated coefficient vector of one field at one time in one replica.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldSample {
    pub kind: FieldKind,
    pub n: usize,
    pub beta: u32,
    pub t: f64,
    pub replica: u64,
    /// Modes `-K..=K`; real-basis kinds leave the imaginary parts at zero.
    pub coeffs: Vec<Complex64>,
}

impl FieldSample {
    pub fn real(kind: FieldKind, n: usize, beta: u32, t: f64, replica: u64, coeffs: &[f64]) -> Self {
        let coeffs = coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect();
        Self { kind, n, beta, t, replica, coeffs }
    }

    pub fn cutoff(&self) -> usize {
        self.coeffs.len() / 2
    }

    pub fn get(&self, k: i32) -> Complex64 {
        self.coeffs[mode_index(k, self.cutoff())]
    }

    /// One CSV row per mode, ordered by `k`.
    pub fn records(&self, experiment: &str, seed: u64) -> Vec<FieldRecord> {
        let cutoff = self.cutoff() as i64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, z)| FieldRecord {
                experiment: experiment.to_string(),
                n: self.n,
                beta: self.beta,
                t: self.t,
                k: i as i64 - cutoff,
                kind: self.kind,
                re: z.re,
                im: z.im,
                replica: self.replica,
                seed,
            })
            .collect()
    }
}

/// One row of the shared CSV schema.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldRecord {
    pub experiment: String,
    pub n: usize,
    pub beta: u32,
    pub t: f64,
    pub k: i64,
    pub kind: FieldKind,
    pub re: f64,
    pub im: f64,
    pub replica: u64,
    pub seed: u64,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn records_follow_mode_order() {
        let s = FieldSample::real(FieldKind::Empirical, 16, 1, 0.5, 3, &[1.0, 2.0, 3.0]);
        let rows = s.records("hydro-hyperbolic", 9);
        assert_eq!(rows.iter().map(|r| r.k).collect::<Vec<_>>(), vec![-1, 0, 1]);
        assert_eq!(rows[2].re, 3.0);
        assert_eq!(rows[0].seed, 9);
        assert_eq!(s.get(-1).re, 1.0);
    }

    #[test]
    fn kind_names_match_serde() {
        for kind in [
            FieldKind::Empirical,
            FieldKind::Fluctuation,
            FieldKind::EmpiricalMode,
            FieldKind::FluctuationMode,
            FieldKind::Spde,
            FieldKind::Boundary,
            FieldKind::Particles,
        ] {
            assert_eq!(parse(kind.as_str()), kind);
            assert_eq!(kind.to_string(), kind.as_str());
        }
    }

    fn parse(name: &str) -> FieldKind {
        use serde::de::value::{Error, StrDeserializer};
        use serde::de::IntoDeserializer;
        let de: StrDeserializer<Error> = name.into_deserializer();
        FieldKind::deserialize(de).unwrap()
    }
}

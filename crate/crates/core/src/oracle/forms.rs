use super::{GeneratorMatrix, MeasureVector};
use crate::shuffle::MoveKind;
use crate::{Error, Result};

fn check_dims(q: &GeneratorMatrix, nu: &MeasureVector, f: &[f64]) -> Result<()> {
    for len in [nu.len(), f.len()] {
        if len != q.dim() {
            return Err(Error::DimensionMismatch { expected: q.dim(), got: len });
        }
    }
    Ok(())
}

/// `sum_moves (rate / 2) * E_nu[(h(eta^move) - h(eta))^2]`.
pub fn symmetrized_form(q: &GeneratorMatrix, h: &[f64], nu: &MeasureVector) -> Result<f64> {
    check_dims(q, nu, h)?;
    let p = nu.as_slice();
    let mut total = 0.0;
    for mv in MoveKind::ALL {
        let rate = q.rates().get(mv);
        let mut acc = 0.0;
        for s in 0..q.dim() {
            let diff = h[q.target(s, mv)] - h[s];
            acc += p[s] * diff * diff;
        }
        total += 0.5 * rate * acc;
    }
    Ok(total)
}

/// `<(-Q) h, h>_nu`.
pub fn quadratic_form(q: &GeneratorMatrix, h: &[f64], nu: &MeasureVector) -> Result<f64> {
    check_dims(q, nu, h)?;
    let qh = q.apply(h);
    Ok(-nu
        .as_slice()
        .iter()
        .zip(qh.iter().zip(h))
        .map(|(p, (a, b))| p * a * b)
        .sum::<f64>())
}

/// Dirichlet form of a density `g >= 0`:
/// `sum_moves (rate / 2) * E_nu[(sqrt g(eta^move) - sqrt g(eta))^2]`.
pub fn dirichlet_form(q: &GeneratorMatrix, g: &[f64], nu: &MeasureVector) -> Result<f64> {
    check_dims(q, nu, g)?;
    if let Some((state, &value)) = g.iter().enumerate().find(|(_, &v)| v < 0.0) {
        return Err(Error::NegativeDensity { state, value });
    }
    let root: Vec<f64> = g.iter().map(|v| v.sqrt()).collect();
    symmetrized_form(q, &root, nu)
}

/// Carre du champ `Q(F^2) - 2 F Q(F)`.
pub fn carre_du_champ(q: &GeneratorMatrix, f: &[f64]) -> Vec<f64> {
    let squared: Vec<f64> = f.iter().map(|v| v * v).collect();
    let q_sq = q.apply(&squared);
    let q_f = q.apply(f);
    q_sq.iter().zip(f.iter().zip(&q_f)).map(|(a, (v, b))| a - 2.0 * v * b).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shuffle::Rates;

    fn setup() -> (GeneratorMatrix, MeasureVector) {
        let q = GeneratorMatrix::from_rates(5, Rates::new(0.0, 0.25, 0.25, 0.25).unwrap()).unwrap();
        (q, MeasureVector::bernoulli(5, 0.5).unwrap())
    }

    #[test]
    fn constants_have_zero_energy() {
        let (q, nu) = setup();
        let one = vec![1.0; q.dim()];
        assert_eq!(dirichlet_form(&q, &one, &nu).unwrap(), 0.0);
        assert!(carre_du_champ(&q, &vec![3.5; q.dim()]).iter().all(|&v| v.abs() < 1e-15));
    }

    #[test]
    fn top_site_identity() {
        let (q, nu) = setup();
        let h: Vec<f64> = (0..q.dim()).map(|s| (s & 1) as f64).collect();
        let lhs = quadratic_form(&q, &h, &nu).unwrap();
        let rhs = symmetrized_form(&q, &h, &nu).unwrap();
        assert!((lhs - rhs).abs() < 1e-14, "{lhs} vs {rhs}");
        // eta(1) changes under top-to-bottom, bottom-to-top and the swap,
        // each with probability 1/2 under nu_{1/2}: 3 * (1/4)/2 * 1/2
        assert!((rhs - 3.0 * 0.125 * 0.5).abs() < 1e-15);
    }

    #[test]
    fn homogeneity_and_sign_guard() {
        let (q, nu) = setup();
        let g: Vec<f64> = (0..q.dim()).map(|s| 1.0 + (s % 7) as f64).collect();
        let scaled: Vec<f64> = g.iter().map(|v| 9.0 * v).collect();
        let base = dirichlet_form(&q, &g, &nu).unwrap();
        assert!((dirichlet_form(&q, &scaled, &nu).unwrap() - 9.0 * base).abs() < 1e-12);
        let mut bad = g.clone();
        bad[3] = -0.5;
        assert_eq!(
            dirichlet_form(&q, &bad, &nu),
            Err(Error::NegativeDensity { state: 3, value: -0.5 })
        );
    }

    #[test]
    fn carre_du_champ_is_nonnegative() {
        let (q, _) = setup();
        let f: Vec<f64> = (0..q.dim()).map(|s| ((s * 37) % 11) as f64 - 5.0).collect();
        assert!(carre_du_champ(&q, &f).iter().all(|&v| v >= -1e-12));
    }
}

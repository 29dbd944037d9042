use crate::shuffle::{MoveKind, RateScheme, Rates, MIN_SIZE};
use crate::{Error, Result};

pub const MAX_ORACLE_SIZE: usize = 12;

/// Image of the bitmask `state` under `mv`, written directly from the move
/// definitions.
pub fn apply_move_to_index(state: usize, n: usize, mv: MoveKind) -> usize {
    let top = state & 1;
    match mv {
        // eta'(p) = eta(p + 1), eta'(n) = eta(1)
        MoveKind::TopToBottom => (state >> 1) | (top << (n - 1)),
        // eta'(1) = eta(n), eta'(p) = eta(p - 1)
        MoveKind::BottomToTop => ((state << 1) & ((1 << n) - 1)) | (state >> (n - 1)),
        MoveKind::SwapTopTwo => {
            let second = (state >> 1) & 1;
            (state & !0b11) | (top << 1) | second
        }
        // eta'(p) = eta(p + 1) for p <= n - 2, eta'(n - 1) = eta(1), eta'(n) = eta(n)
        MoveKind::TopToPenultimate => {
            let middle = (state >> 1) & ((1 << (n - 2)) - 1);
            let bottom = state & (1 << (n - 1));
            middle | (top << (n - 2)) | bottom
        }
    }
}

/// Sparse generator `Q f(eta) = sum_moves rate * (f(eta^move) - f(eta))`.
///
/// Each row keeps the four move targets; a target equal to the row state
/// is a self-loop and contributes nothing.
#[derive(Debug, Clone)]
pub struct GeneratorMatrix {
    n: usize,
    rates: Rates,
    targets: Vec<[u32; 4]>,
}

impl GeneratorMatrix {
    pub fn build(n: usize, scheme: &RateScheme) -> Result<Self> {
        Self::from_rates(n, scheme.realize(n)?)
    }

    pub fn from_rates(n: usize, rates: Rates) -> Result<Self> {
        if n < MIN_SIZE {
            return Err(Error::DeckTooSmall(n));
        }
        if n > MAX_ORACLE_SIZE {
            return Err(Error::OracleTooLarge(n));
        }
        rates.validate()?;
        let targets = (0..1usize << n)
            .map(|s| MoveKind::ALL.map(|mv| apply_move_to_index(s, n, mv) as u32))
            .collect();
        Ok(Self { n, rates, targets })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Number of states, `2^n`.
    pub fn dim(&self) -> usize {
        self.targets.len()
    }

    pub fn rates(&self) -> &Rates {
        &self.rates
    }

    pub fn target(&self, state: usize, mv: MoveKind) -> usize {
        self.targets[state][mv.index()] as usize
    }

    /// Off-diagonal entries of row `state`, merged by target.
    pub fn off_diagonal(&self, state: usize) -> Vec<(usize, f64)> {
        let mut row: Vec<(usize, f64)> = Vec::with_capacity(4);
        for mv in MoveKind::ALL {
            let t = self.target(state, mv);
            let r = self.rates.get(mv);
            if t == state || r == 0.0 {
                continue;
            }
            match row.iter_mut().find(|(j, _)| *j == t) {
                Some(entry) => entry.1 += r,
                None => row.push((t, r)),
            }
        }
        row
    }

    /// Diagonal entry: minus the total exit rate.
    pub fn diagonal(&self, state: usize) -> f64 {
        -self.off_diagonal(state).iter().map(|(_, r)| r).sum::<f64>()
    }

    /// `Q f`.
    pub fn apply(&self, f: &[f64]) -> Vec<f64> {
        assert_eq!(f.len(), self.dim());
        let r = self.rates.as_array();
        self.targets
            .iter()
            .enumerate()
            .map(|(s, t)| {
                let fs = f[s];
                (0..4).map(|m| r[m] * (f[t[m] as usize] - fs)).sum()
            })
            .collect()
    }

    /// `mu^T Q`.
    pub fn left_apply(&self, mu: &[f64]) -> Vec<f64> {
        assert_eq!(mu.len(), self.dim());
        let r = self.rates.as_array();
        let mut out = vec![0.0; self.dim()];
        for (s, t) in self.targets.iter().enumerate() {
            for m in 0..4 {
                let j = t[m] as usize;
                if j != s {
                    let flow = mu[s] * r[m];
                    out[j] += flow;
                    out[s] -= flow;
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shuffle::{Configuration, OccupancyState};

    #[test]
    fn bitmask_moves_agree_with_circular_buffer() {
        for n in 4..=10 {
            for s in 0..1usize << n {
                for mv in MoveKind::ALL {
                    let mut st = OccupancyState::from_index(n, s).unwrap();
                    st.apply(mv);
                    assert_eq!(apply_move_to_index(s, n, mv), st.index(), "n={n} s={s} {mv:?}");
                }
            }
        }
    }

    #[test]
    fn rows_sum_to_zero_and_are_sparse() {
        let q = GeneratorMatrix::from_rates(4, Rates::new(0.25, 0.25, 0.25, 0.25).unwrap()).unwrap();
        for s in 0..q.dim() {
            let off = q.off_diagonal(s);
            assert!(off.len() <= 4);
            assert!(off.iter().all(|&(_, r)| r >= 0.0));
            let total: f64 = off.iter().map(|(_, r)| r).sum::<f64>() + q.diagonal(s);
            assert_eq!(total, 0.0);
        }
    }

    #[test]
    fn size_guards() {
        let r = Rates::new(0.5, 0.5, 0.0, 0.0).unwrap();
        assert_eq!(GeneratorMatrix::from_rates(13, r).unwrap_err(), Error::OracleTooLarge(13));
        assert_eq!(GeneratorMatrix::from_rates(3, r).unwrap_err(), Error::DeckTooSmall(3));
    }
}

//! Closed-form expressions for the generator acting on coordinates and on
//! linear functionals `<pi^n, f> = n^{-1} sum_x eta(x) f(x/n)`, written out
//! term by term so they can be compared against the matrix action.

use crate::shuffle::Rates;

/// A test function sampled on the grid `{x/n : x in Z_n}`.
#[derive(Debug, Clone)]
pub struct DiscreteTestFunction {
    values: Vec<f64>,
}

impl DiscreteTestFunction {
    pub fn from_fn<F: Fn(f64) -> f64>(n: usize, f: F) -> Self {
        Self { values: (0..n).map(|x| f(x as f64 / n as f64)).collect() }
    }

    pub fn size(&self) -> usize {
        self.values.len()
    }

    /// `f(x/n)` with `x` read modulo `n`.
    pub fn at(&self, x: i64) -> f64 {
        let n = self.values.len() as i64;
        self.values[x.rem_euclid(n) as usize]
    }

    /// `n (f(x/n) - f((x-1)/n))`.
    pub fn grad_minus(&self, x: i64) -> f64 {
        self.values.len() as f64 * (self.at(x) - self.at(x - 1))
    }

    /// `n (f((x+1)/n) - f(x/n))`.
    pub fn grad_plus(&self, x: i64) -> f64 {
        self.grad_minus(x + 1)
    }

    /// `n^{-1} sum_{x=1}^n eta(x) g(x)` for a bitmask state.
    fn pair_with(&self, state: usize, g: impl Fn(i64) -> f64) -> f64 {
        let n = self.values.len();
        (1..=n).filter(|x| (state >> (x - 1)) & 1 == 1).map(|x| g(x as i64)).sum::<f64>() / n as f64
    }

    /// `<pi^n, f>` for a bitmask state.
    pub fn pairing(&self, state: usize) -> f64 {
        self.pair_with(state, |x| self.at(x))
    }
}

fn eta(state: usize, n: usize, x: i64) -> f64 {
    let site = (x - 1).rem_euclid(n as i64) as usize;
    ((state >> site) & 1) as f64
}

/// `L_n eta(x)` from the coordinate formulas: special cases at
/// `x = 1, 2, n - 1, n` and the bulk formula for `3 <= x <= n - 2`.
pub fn coordinate_action(rates: &Rates, n: usize, state: usize, x: usize) -> f64 {
    let Rates { a, b, c, d } = *rates;
    let e = |y: i64| eta(state, n, y);
    let x_i = x as i64;
    let n_i = n as i64;
    if x == 1 {
        (a + b + d) * (e(2) - e(1)) + c * (e(n_i) - e(1))
    } else if x == 2 {
        (a + b) * (e(3) - e(2)) + (c + d) * (e(1) - e(2))
    } else if x == n - 1 {
        a * (e(1) - e(n_i - 1)) + b * (e(n_i) - e(n_i - 1)) + c * (e(n_i - 2) - e(n_i - 1))
    } else if x == n {
        b * (e(1) - e(n_i)) + c * (e(n_i - 1) - e(n_i))
    } else {
        (a + b) * (e(x_i + 1) - e(x_i)) + c * (e(x_i - 1) - e(x_i))
    }
}

/// `n^beta L_n <pi^n, f>`: bulk gradient terms plus the two boundary
/// corrections from the penultimate insertion and the top swap.
pub fn drift_closed_form(rates: &Rates, beta: u32, f: &DiscreteTestFunction, state: usize) -> f64 {
    let n = f.size();
    let nf = n as f64;
    let scale = nf.powi(beta as i32 - 2);
    let e = |y: i64| eta(state, n, y);
    let sum_minus: f64 = (1..=n as i64).map(|x| e(x) * f.grad_minus(x)).sum();
    let sum_plus: f64 = (1..=n as i64).map(|x| e(x) * f.grad_plus(x)).sum();
    -(rates.a + rates.b) * scale * sum_minus + rates.c * scale * sum_plus
        - rates.a * scale * (e(1) - e(n as i64)) * f.grad_minus(0)
        + rates.d * scale * (e(1) - e(2)) * f.grad_plus(1)
}

/// Integrand of the quadratic variation of the Dynkin martingale of
/// `<pi^n, f>` at time scale `n^beta` (five terms).
pub fn quadratic_variation_integrand(rates: &Rates, beta: u32, f: &DiscreteTestFunction, state: usize) -> f64 {
    let n = f.size();
    let nf = n as f64;
    let p = |k: i32| nf.powi(beta as i32 - k);
    let e = |y: i64| eta(state, n, y);
    let pi_minus = f.pair_with(state, |x| f.grad_minus(x));
    let pi_plus = f.pair_with(state, |x| f.grad_plus(x));
    let top_bottom = e(1) - e(n as i64);
    let top_second = e(1) - e(2);
    (rates.a + rates.b) * p(2) * pi_minus * pi_minus
        + rates.c * p(2) * pi_plus * pi_plus
        + 2.0 * rates.a * p(3) * top_bottom * f.grad_minus(0) * pi_minus
        + rates.a * p(4) * top_bottom * top_bottom * f.grad_minus(0).powi(2)
        + rates.d * p(4) * top_second * top_second * f.grad_plus(1).powi(2)
}

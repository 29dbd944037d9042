use rlab_core::field::{psi, FourierBasis};
use rlab_core::oracle::{
    carre_du_champ, check_invariance, coordinate_action, evolve_measure, exact_expectation, quadratic_form,
    quadratic_variation_integrand, symmetrized_form, validate_grid, DiscreteTestFunction, GeneratorMatrix,
    MeasureVector, OracleGrid,
};
use rlab_core::shuffle::{OccupancyState, RateScheme, Rates};

fn coordinate(n: usize, x: usize) -> Vec<f64> {
    (0..1usize << n).map(|s| ((s >> (x - 1)) & 1) as f64).collect()
}

#[test]
fn default_grid_is_exact() {
    let report = validate_grid(&OracleGrid::default()).unwrap();
    assert_eq!(report.records.len(), 21);
    assert!(report.pass, "max residual {:e}", report.max_residual);
}

#[test]
fn stationarity_examples() {
    let q = GeneratorMatrix::build(6, &RateScheme::rudvalis(1).unwrap()).unwrap();
    assert!(check_invariance(&q, &MeasureVector::bernoulli(6, 0.5).unwrap()).unwrap() < 1e-12);
    assert!(check_invariance(&q, &MeasureVector::hyperplane_uniform(6, 3).unwrap()).unwrap() < 1e-12);
    let all = GeneratorMatrix::from_rates(6, Rates::new(0.25, 0.25, 0.25, 0.25).unwrap()).unwrap();
    assert_eq!(check_invariance(&all, &MeasureVector::point_mass(6, 0).unwrap()).unwrap(), 0.0);
}

#[test]
fn top_site_and_bulk_formulas() {
    let rates = Rates::new(0.25, 0.25, 0.25, 0.25).unwrap();
    let q = GeneratorMatrix::from_rates(4, rates).unwrap();
    let action = q.apply(&coordinate(4, 1));
    for s in 0..16usize {
        let e = |x: usize| ((s >> (x - 1)) & 1) as f64;
        let expected = 0.75 * (e(2) - e(1)) + 0.25 * (e(4) - e(1));
        assert_eq!(action[s], expected);
        assert_eq!(coordinate_action(&rates, 4, s, 1), expected);
    }
    let rates = Rates::new(0.1, 0.3, 0.2, 0.4).unwrap();
    let q = GeneratorMatrix::from_rates(8, rates).unwrap();
    for x in 3..=6 {
        let action = q.apply(&coordinate(8, x));
        for s in 0..256usize {
            let e = |y: usize| ((s >> (y - 1)) & 1) as f64;
            let expected = 0.4 * (e(x + 1) - e(x)) + 0.2 * (e(x - 1) - e(x));
            assert!((action[s] - expected).abs() < 1e-15);
        }
    }
}

#[test]
fn symmetrized_form_on_top_coordinate() {
    let q = GeneratorMatrix::from_rates(5, Rates::new(0.0, 0.25, 0.25, 0.25).unwrap()).unwrap();
    let nu = MeasureVector::bernoulli(5, 0.5).unwrap();
    let h = coordinate(5, 1);
    let lhs = quadratic_form(&q, &h, &nu).unwrap();
    let rhs = symmetrized_form(&q, &h, &nu).unwrap();
    assert!((lhs - rhs).abs() < 1e-14);
}

#[test]
fn carre_du_champ_matches_quadratic_variation_integrand() {
    let scheme = RateScheme::rudvalis(1).unwrap();
    let q = GeneratorMatrix::build(6, &scheme).unwrap();
    let f = DiscreteTestFunction::from_fn(6, |u| psi(1, u));
    let pairing: Vec<f64> = (0..64).map(|s| f.pairing(s)).collect();
    let gamma = carre_du_champ(&q, &pairing);
    for s in 0..64 {
        assert!(gamma[s] >= -1e-15);
        let expected = quadratic_variation_integrand(q.rates(), 1, &f, s);
        assert!((6.0 * gamma[s] - expected).abs() < 1e-14, "state {s}");
    }
}

#[test]
fn product_measure_expectation_is_time_invariant() {
    let q = GeneratorMatrix::build(6, &RateScheme::symmetric(1).unwrap()).unwrap();
    let nu = MeasureVector::bernoulli(6, 0.3).unwrap();
    for t in [0.0, 0.5, 3.0, 40.0] {
        let v = exact_expectation(&q, &nu, &coordinate(6, 1), t).unwrap();
        assert!((v - 0.3).abs() < 1e-10);
    }
}

#[test]
fn one_site_marginals_stay_bernoulli() {
    let q = GeneratorMatrix::from_rates(6, Rates::new(0.2, 0.3, 0.4, 0.1).unwrap()).unwrap();
    let nu = MeasureVector::bernoulli(6, 0.7).unwrap();
    let mu = evolve_measure(&q, &nu, 2.5).unwrap();
    for x in 1..=6 {
        assert!((mu.expectation(&coordinate(6, x)) - 0.7).abs() < 1e-10);
    }
}

#[test]
fn complex_mode_variance_is_exact_under_product_measure() {
    let n = 8;
    let basis = FourierBasis::new(n, 2).unwrap();
    for rho in [0.2, 0.5] {
        let nu = MeasureVector::bernoulli(n, rho).unwrap();
        for k in 0..=2i32 {
            let sq: Vec<f64> = (0..1usize << n)
                .map(|s| {
                    let st = OccupancyState::from_index(n, s).unwrap();
                    basis.fluctuation_modes(&st, rho)[(k + 2) as usize].norm_sqr()
                })
                .collect();
            assert!((nu.expectation(&sq) - rho * (1.0 - rho)).abs() < 1e-12);
        }
    }
}

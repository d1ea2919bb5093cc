//! Concentrating test functions: scan the normalized quotient Q_ε over a
//! range of scales and fit its leading expansion coefficient, comparing
//! against the closed form driven by H(x₀).

use yamabe_radial::bubbles::{fit_expansion, h_condition, BubbleFamily};
use yamabe_radial::{CoefficientField, EvenPolynomial, RadialManifold};

fn main() {
    let m = RadialManifold::ball(5, 0.0, 1.0).unwrap();
    let coeffs = CoefficientField::new(
        EvenPolynomial::constant(1.0),
        EvenPolynomial::constant(-1.0),
        EvenPolynomial::constant(1.0),
    );
    let h = h_condition(&m, &coeffs).unwrap();
    println!("H(x0) = {} (condition satisfied = {})", h.h, h.satisfied);

    let delta = BubbleFamily::default_delta(m.r_max);
    let fam = BubbleFamily::new(m, coeffs, delta, BubbleFamily::default_epsilons(delta)).unwrap();

    let report = fit_expansion(&fam).unwrap();
    println!("\n{:>12} {:>16} {:>16} {:>18}", "eps", "mu_eps", "gamma_eps", "Q_eps");
    for row in &report.rows {
        println!(
            "{:>12.6} {:>16.10} {:>16.10} {:>18.12}",
            row.epsilon, row.mu, row.gamma, row.quotient
        );
    }
    println!("\nfitted leading term   = {:.8} (should be 1)", report.fitted_leading);
    println!("fitted coefficient    = {:.8}", report.fitted_coefficient);
    println!("predicted coefficient = {:.8}", report.predicted_coefficient);
    if let Some(gap) = report.relative_gap {
        println!("relative gap          = {:.3e}", gap);
    }
}

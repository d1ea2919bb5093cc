//! Continuation of the constrained minimization to the critical exponent:
//! solve at a strictly increasing schedule of exponents ending at
//! 2♯ = 2n/(n-2), warm-starting each step from the previous minimizer.

use yamabe_radial::{
    assemble, continuation_to_critical, critical_exponent, CoefficientField, EvenPolynomial,
    RadialManifold, RadialMesh, SolveOptions,
};

fn main() {
    let m = RadialManifold::ball(5, 0.0, 1.0).unwrap();
    let coeffs = CoefficientField::new(
        EvenPolynomial::constant(1.0),
        EvenPolynomial::constant(-1.0),
        EvenPolynomial::constant(1.0),
    );
    let mesh = RadialMesh::uniform(&m, 400).unwrap();
    let p = assemble(&m, &coeffs, &mesh).unwrap();

    let two_sharp = critical_exponent(5);
    let schedule: Vec<f64> = [0.5, 0.25, 0.1, 0.05, 0.01, 0.0]
        .iter()
        .map(|d| two_sharp - d)
        .collect();

    let h = vec![0.0; p.node_count()];
    let results =
        continuation_to_critical(&p, 1.0, &h, &schedule, &SolveOptions::default()).unwrap();

    println!("{:>10} {:>16} {:>14} {:>12}", "q", "mu", "lambda", "residual");
    for (q, r) in &results {
        println!(
            "{q:>10.6} {:>16.10} {:>14.8} {:>12.3e}",
            r.mu, r.lambda, r.residual
        );
    }
    let mu_final = results.last().unwrap().1.mu;
    println!("\n|mu(q) - mu(2#)| along the schedule:");
    for (q, r) in &results {
        println!("  q = {q:.6}: {:.3e}", (r.mu - mu_final).abs());
    }
}

//! Constrained minimization at a subcritical exponent: minimize
//! I(w) = ∫(a|∇w|² + bw²) dv over {∫ f|w|^q dv = γ} on a flat ball,
//! then read off the Lagrange multiplier and the Euler-Lagrange residual.

use yamabe_radial::{
    assemble, feasible_point, first_eigenpair, minimize_subcritical, nontriviality_condition,
    CoefficientField, ConstraintSpec, EvenPolynomial, RadialManifold, RadialMesh, SolveOptions,
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

    // homogeneous boundary data: h = 0, gamma is a free positive scale
    let gamma = 1.0;
    let q = 2.9;
    let spec = ConstraintSpec::new(&p, gamma, q, vec![0.0; p.node_count()]).unwrap();

    let psi1 = first_eigenpair(&p, 1e-12).unwrap();
    let start = feasible_point(&p, &spec, &psi1).unwrap();
    println!(
        "feasible start along psi_1: t = {:.6}, I(t psi_1) = {:.6}",
        start.t,
        p.energy(&start.w0).unwrap()
    );

    let res = minimize_subcritical(&p, &spec, &start.w0, &SolveOptions::default()).unwrap();
    println!("minimum  mu      = {:.10}", res.mu);
    println!("multiplier lambda = {:.10}", res.lambda);
    println!("EL residual       = {:.3e}", res.residual);
    println!("iterations        = {}", res.iterations);
    println!("sign changes      = {}", !res.sign_changes.is_empty());

    let nt = nontriviality_condition(&p, &spec, res.mu).unwrap();
    println!(
        "nontriviality threshold K0 (min a)^-1 (max f)^(2/2#) gamma^(-2/2#) mu = {:.6} (< 1: {})",
        nt.value, nt.satisfied
    );
}

//! The two hypotheses behind the existence theorem, evaluated numerically:
//! coercivity of -div_g(a∇) + b and the sign of the geometric quantity
//! H(x₀) at the center.

use yamabe_radial::bubbles::h_condition;
use yamabe_radial::{
    assemble, coercivity_check, first_eigenpair, CoefficientField, EvenPolynomial,
    RadialManifold, RadialMesh,
};

fn field(b: f64) -> CoefficientField {
    CoefficientField::new(
        EvenPolynomial::constant(1.0),
        EvenPolynomial::constant(b),
        EvenPolynomial::constant(1.0),
    )
}

fn main() {
    let m = RadialManifold::ball(5, 0.0, 1.0).unwrap();
    let mesh = RadialMesh::uniform(&m, 400).unwrap();

    // b = -1 keeps the operator coercive (λ₁ of -div(a∇) is far larger)
    let p = assemble(&m, &field(-1.0), &mesh).unwrap();
    let lam1 = first_eigenpair(&p, 1e-12).unwrap().eigenvalue;
    let coerc = coercivity_check(&p, 1e-8);
    let h = h_condition(&m, &p.coeffs).unwrap();
    println!("flat ball, a = 1, b = -1, f = 1:");
    println!("  lambda_1(-div(a grad)) = {lam1:.6}");
    println!("  coercive = {} (lambda_min = {:.6})", coerc.coercive, coerc.lambda_min);
    println!("  H(x0) = {} (condition satisfied = {})", h.h, h.satisfied);

    // pushing b below -λ₁ destroys coercivity
    let p_bad = assemble(&m, &field(-1.05 * lam1), &mesh).unwrap();
    let bad = coercivity_check(&p_bad, 1e-8);
    println!("\nsame ball with b = -1.05 lambda_1:");
    println!("  coercive = {} (lambda_min = {:.6})", bad.coercive, bad.lambda_min);

    // curvature alone can make H negative: R_g = n(n-1) kappa
    let sphere = RadialManifold::ball(5, 1.0, 1.0).unwrap();
    let hs = h_condition(&sphere, &field(0.0)).unwrap();
    println!("\nspherical ball (kappa = 1), a = 1, b = 0, f = 1:");
    println!("  R_g = {}", sphere.scalar_curvature());
    println!("  H(x0) = {} (condition satisfied = {})", hs.h, hs.satisfied);
}

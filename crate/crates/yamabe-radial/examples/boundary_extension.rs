//! Extension of Dirichlet data to a solution of the homogeneous equation:
//! on the flat annulus [1, 2] with a = 1, b = 0 and data (+1, -1) the
//! extension is h(r) = -3 + 4/r, changing sign at r = 4/3.

use yamabe_radial::{
    assemble, detect_sign_change, extend_boundary_data, CoefficientField, EvenPolynomial,
    RadialManifold, RadialMesh,
};

fn main() {
    let m = RadialManifold::new(3, 0.0, 1.0, 2.0).unwrap();
    let coeffs = CoefficientField::new(
        EvenPolynomial::constant(1.0),
        EvenPolynomial::constant(0.0),
        EvenPolynomial::constant(1.0),
    );
    let mesh = RadialMesh::uniform(&m, 2000).unwrap();
    let p = assemble(&m, &coeffs, &mesh).unwrap();

    let h = extend_boundary_data(&p, &[1.0, -1.0]).unwrap();

    let mut sup_err: f64 = 0.0;
    for (i, &r) in p.mesh.nodes().iter().enumerate() {
        sup_err = sup_err.max((h[i] - (-3.0 + 4.0 / r)).abs());
    }
    println!("sup-norm distance to -3 + 4/r: {sup_err:.3e}");

    let report = detect_sign_change(&p, &h);
    println!("sign changes: {}", report.changes);
    for (a, b) in &report.crossings {
        println!("  crossing inside ({a:.6}, {b:.6})   [exact root 4/3 = {:.6}]", 4.0 / 3.0);
    }
}

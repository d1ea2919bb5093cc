//! Linear solves on the assembled forms: the boundary-data extension h,
//! the first eigenpair of -div_g(a∇), and the coercivity check for
//! -div_g(a∇) + b.

use crate::error::{Error, Result};
use crate::problem::DiscreteProblem;
use crate::tridiag::{self, SymTridiag};

/// Which assembled bilinear form a solve targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BilinearForm {
    /// ∫ a ∇u·∇v dv_g
    Stiffness,
    /// ∫ (a ∇u·∇v + b uv) dv_g
    Operator,
    /// ∫ (∇u·∇v + uv) dv_g — the H¹₀-norm form
    Sobolev,
}

/// Default positivity margin for the coercivity verdict; guards against
/// discretization-level false positives near the threshold.
pub const COERCIVITY_TOL: f64 = 1e-8;

/// Relative tolerance of the inner CG solves inside eigen-iterations.
const INNER_CG_TOL: f64 = 1e-13;

fn form_matrix(p: &DiscreteProblem, form: BilinearForm) -> &SymTridiag {
    match form {
        BilinearForm::Stiffness => p.stiffness_a(),
        BilinearForm::Operator => p.operator(),
        BilinearForm::Sobolev => p.sobolev(),
    }
}

fn interior_part(p: &DiscreteProblem, full: &[f64]) -> Vec<f64> {
    full[p.interior()].to_vec()
}

fn embed_interior(p: &DiscreteProblem, interior: &[f64]) -> Vec<f64> {
    let mut full = vec![0.0; p.node_count()];
    full[p.interior()].copy_from_slice(interior);
    full
}

/// Solve form·x = rhs on the interior degrees of freedom (Dirichlet zeros on
/// the boundary; boundary entries of `rhs` are ignored). Conjugate gradients
/// with Jacobi preconditioning; direct elimination is available separately as
/// the oracle (`tridiag::direct_solve`).
pub fn solve_spd(
    p: &DiscreteProblem,
    form: BilinearForm,
    rhs: &[f64],
    tol: f64,
) -> Result<Vec<f64>> {
    let a = form_matrix(p, form).submatrix(p.interior().start, p.interior().end);
    if form == BilinearForm::Operator && a.ldlt().is_none() {
        let report = coercivity_check(p, COERCIVITY_TOL);
        return Err(Error::Validation(format!(
            "operator form is indefinite on interior dofs (lambda_min = {:.6e}); \
             refusing iterative solve",
            report.lambda_min
        )));
    }
    let rhs_int = interior_part(p, rhs);
    let n = rhs_int.len();
    let (x, _its) = tridiag::cg_solve(&a, &rhs_int, None, tol, 60 * n + 200)?;
    Ok(embed_interior(p, &x))
}

/// First eigenpair of -div_g(a∇) with Dirichlet conditions.
#[derive(Debug, Clone)]
pub struct EigenPair {
    pub eigenvalue: f64,
    /// Nodal eigenfunction, zero on the boundary, ∫ ψ² dv_g = 1, positive.
    pub eigenvector: Vec<f64>,
}

/// Smallest generalized eigenpair of (K_a, M) on the interior by inverse
/// power iteration with CG inner solves.
pub fn first_eigenpair(p: &DiscreteProblem, tol: f64) -> Result<EigenPair> {
    let interior = p.interior();
    let k = p.stiffness_a().submatrix(interior.start, interior.end);
    let m = p.mass_unit().submatrix(interior.start, interior.end);
    let n = k.n();

    // positive bump with good overlap with the ground state
    let nodes = p.mesh.nodes();
    let (r0, r1) = (p.manifold.r_min, p.manifold.r_max);
    let mut x: Vec<f64> = nodes[interior.clone()]
        .iter()
        .map(|&r| (std::f64::consts::PI * (r - r0) / (r1 - r0)).sin().max(1e-3))
        .collect();

    let m_norm = |v: &[f64]| tridiag::dot(&m.matvec(v), v).sqrt();
    let nx = m_norm(&x);
    x.iter_mut().for_each(|v| *v /= nx);

    let mut lambda = f64::INFINITY;
    let max_outer = 2000;
    for it in 0..max_outer {
        let mx = m.matvec(&x);
        let (y, _) = tridiag::cg_solve(&k, &mx, Some(&x), INNER_CG_TOL, 60 * n + 200)?;
        let ny = m_norm(&y);
        if !(ny > 0.0) {
            return Err(Error::NoConvergence("inverse iteration collapsed to zero".into()));
        }
        let y: Vec<f64> = y.iter().map(|v| v / ny).collect();
        let ky = k.matvec(&y);
        let new_lambda = tridiag::dot(&ky, &y);

        let my = m.matvec(&y);
        let resid: Vec<f64> = ky
            .iter()
            .zip(&my)
            .map(|(kv, mv)| kv - new_lambda * mv)
            .collect();
        let rel_resid = tridiag::norm2(&resid) / tridiag::norm2(&ky);
        let lambda_gap = (new_lambda - lambda).abs() / new_lambda.abs().max(f64::MIN_POSITIVE);
        x = y;
        lambda = new_lambda;
        // the eigenvector residual floors out around eps·cond(K); the
        // eigenvalue error is quadratic in it, so 1e-8 is ample
        if it > 0 && lambda_gap < tol && rel_resid < tol.max(1e-8) {
            break;
        }
        if it + 1 == max_outer {
            return Err(Error::NoConvergence(format!(
                "inverse power iteration: eigenvalue gap {lambda_gap:.3e}, \
                 residual {rel_resid:.3e} after {max_outer} iterations"
            )));
        }
    }

    // global sign fix: largest-magnitude entry positive
    let (imax, &vmax) = x
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
        .expect("nonempty interior");
    if vmax < 0.0 {
        x.iter_mut().for_each(|v| *v = -*v);
    }
    let _ = imax;

    Ok(EigenPair {
        eigenvalue: lambda,
        eigenvector: embed_interior(p, &x),
    })
}

#[derive(Debug, Clone, Copy)]
pub struct CoercivityReport {
    pub coercive: bool,
    /// Smallest generalized eigenvalue of (K_a + M_b, K_1 + M_1) on the
    /// interior: the computable surrogate of the coercivity constant.
    pub lambda_min: f64,
}

/// Coercivity check for -div_g(a∇) + b via Sturm-sequence bisection on the
/// matrix pencil (operator form, H¹₀-norm form).
pub fn coercivity_check(p: &DiscreteProblem, tol: f64) -> CoercivityReport {
    let interior = p.interior();
    let a = p.operator().submatrix(interior.start, interior.end);
    let b = p.sobolev().submatrix(interior.start, interior.end);

    // expand a bracket [lo, hi] with inertia(lo) = 0 < inertia(hi)
    let mut lo = -1.0;
    let mut hi = 1.0;
    while a.inertia_below(lo, &b) > 0 {
        lo *= 2.0;
        if lo < -1e12 {
            break;
        }
    }
    while a.inertia_below(hi, &b) == 0 {
        hi *= 2.0;
        if hi > 1e12 {
            break;
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if !(mid > lo && mid < hi) {
            break;
        }
        if a.inertia_below(mid, &b) == 0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let lambda_min = 0.5 * (lo + hi);
    CoercivityReport {
        coercive: lambda_min > tol,
        lambda_min,
    }
}

/// Extend Dirichlet data to the interior: solve -div_g(a∇h) + bh = 0 with
/// h = φ on the boundary (one value per boundary sphere). Requires the
/// operator to be coercive.
pub fn extend_boundary_data(p: &DiscreteProblem, phi: &[f64]) -> Result<Vec<f64>> {
    let boundary = p.boundary_dofs();
    if phi.len() != boundary.len() {
        return Err(Error::Contract(format!(
            "expected {} boundary values, got {}",
            boundary.len(),
            phi.len()
        )));
    }
    let report = coercivity_check(p, COERCIVITY_TOL);
    if !report.coercive {
        return Err(Error::NotCoercive {
            lambda_min: report.lambda_min,
        });
    }

    let n = p.node_count();
    let mut h = vec![0.0; n];
    for (&i, &v) in boundary.iter().zip(phi) {
        h[i] = v;
    }
    if phi.iter().all(|&v| v == 0.0) {
        return Ok(h);
    }

    // interior correction: A x = -(A h_bc) on interior dofs
    let a_h = p.operator_apply(&h);
    let rhs: Vec<f64> = a_h.iter().map(|v| -v).collect();
    let x = solve_spd(p, BilinearForm::Operator, &rhs, 1e-13)?;
    for i in p.interior() {
        h[i] += x[i];
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::{CoefficientField, EvenPolynomial};
    use crate::geometry::RadialManifold;
    use crate::mesh::RadialMesh;
    use crate::problem::assemble;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn field(a: f64, b: f64) -> CoefficientField {
        CoefficientField::new(
            EvenPolynomial::constant(a),
            EvenPolynomial::constant(b),
            EvenPolynomial::constant(1.0),
        )
    }

    fn flat_ball(n: u32, b: f64, elems: usize) -> DiscreteProblem {
        let m = RadialManifold::ball(n, 0.0, 1.0).unwrap();
        let mesh = RadialMesh::uniform(&m, elems).unwrap();
        assemble(&m, &field(1.0, b), &mesh).unwrap()
    }

    #[test]
    fn poisson_closed_form() {
        // flat n=3 ball, a=1: K u = M·1 solves -u'' - (2/r)u' = 1,
        // u = (1-r²)/6 with u'(0) = 0, u(1) = 0.
        let p = flat_ball(3, 0.0, 500);
        let ones = vec![1.0; p.node_count()];
        let rhs = p.mass_unit().matvec(&ones);
        let u = solve_spd(&p, BilinearForm::Stiffness, &rhs, 1e-13).unwrap();
        let mut err_max: f64 = 0.0;
        for (i, &r) in p.mesh.nodes().iter().enumerate() {
            let exact = (1.0 - r * r) / 6.0;
            err_max = err_max.max((u[i] - exact).abs());
        }
        assert!(err_max < 5e-6, "sup error {err_max}");
    }

    #[test]
    fn solve_zero_rhs() {
        let p = flat_ball(3, 0.0, 64);
        let u = solve_spd(&p, BilinearForm::Operator, &vec![0.0; p.node_count()], 1e-12).unwrap();
        assert!(u.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn cg_matches_direct_oracle() {
        let p = flat_ball(3, 0.5, 100);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let rhs: Vec<f64> = (0..p.node_count()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let x = solve_spd(&p, BilinearForm::Operator, &rhs, 1e-14).unwrap();
        let interior = p.interior();
        let a = p.operator().submatrix(interior.start, interior.end);
        let exact = tridiag::direct_solve(&a, &rhs[interior.clone()]).unwrap();
        let num: f64 = x[interior.clone()]
            .iter()
            .zip(&exact)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        assert!(num / tridiag::norm2(&exact) < 1e-10);
    }

    #[test]
    fn indefinite_operator_refused() {
        // b far below -λ₁ makes K + M_b indefinite
        let p = flat_ball(3, -80.0, 64);
        let rhs = vec![1.0; p.node_count()];
        assert!(solve_spd(&p, BilinearForm::Operator, &rhs, 1e-12).is_err());
    }

    #[test]
    fn eigenpair_flat_ball_n3() {
        // λ₁ = π², ψ₁ ∝ sin(πr)/r
        let p = flat_ball(3, 0.0, 2000);
        let pair = first_eigenpair(&p, 1e-12).unwrap();
        let pi2 = std::f64::consts::PI * std::f64::consts::PI;
        assert!(
            (pair.eigenvalue - pi2).abs() / pi2 < 1e-3,
            "λ₁ = {}",
            pair.eigenvalue
        );
        // normalization ∫ψ² = 1
        let m_psi = p.mass_unit().matvec(&pair.eigenvector);
        let norm = tridiag::dot(&m_psi, &pair.eigenvector);
        assert!((norm - 1.0).abs() < 1e-10);
        // positivity: no interior sign change
        let interior = p.interior();
        assert!(pair.eigenvector[interior].iter().all(|&v| v > 0.0));
        // shape matches sin(πr)/r up to scale at a probe node
        let nodes = p.mesh.nodes();
        let i = 700;
        let ratio = pair.eigenvector[i] / ((std::f64::consts::PI * nodes[i]).sin() / nodes[i]);
        let j = 1300;
        let ratio2 = pair.eigenvector[j] / ((std::f64::consts::PI * nodes[j]).sin() / nodes[j]);
        assert!((ratio / ratio2 - 1.0).abs() < 1e-3);
    }

    #[test]
    fn eigenvalue_scales_with_a() {
        let m = RadialManifold::ball(3, 0.0, 1.0).unwrap();
        let mesh = RadialMesh::uniform(&m, 200).unwrap();
        let p1 = assemble(&m, &field(1.0, 0.0), &mesh).unwrap();
        let p2 = assemble(&m, &field(2.0, 0.0), &mesh).unwrap();
        let l1 = first_eigenpair(&p1, 1e-12).unwrap().eigenvalue;
        let l2 = first_eigenpair(&p2, 1e-12).unwrap().eigenvalue;
        assert!((l2 - 2.0 * l1).abs() / l2 < 1e-10);
    }

    #[test]
    fn eigenpair_flat_annulus() {
        // v = r·u maps the radial n=3 problem on [1,2] to -v'' = λv, so λ₁ = π²
        let m = RadialManifold::new(3, 0.0, 1.0, 2.0).unwrap();
        let mesh = RadialMesh::uniform(&m, 2000).unwrap();
        let p = assemble(&m, &field(1.0, 0.0), &mesh).unwrap();
        let pair = first_eigenpair(&p, 1e-12).unwrap();
        let pi2 = std::f64::consts::PI * std::f64::consts::PI;
        assert!(
            (pair.eigenvalue - pi2).abs() / pi2 < 1e-3,
            "λ₁ = {}",
            pair.eigenvalue
        );
    }

    #[test]
    fn rayleigh_quotient_consistency() {
        // with b = 0, energy(ψ₁) = λ₁ under ∫ψ₁² = 1
        let p = flat_ball(3, 0.0, 400);
        let pair = first_eigenpair(&p, 1e-12).unwrap();
        let e = p.energy(&pair.eigenvector).unwrap();
        assert!((e - pair.eigenvalue).abs() / pair.eigenvalue < 1e-9);
    }

    #[test]
    fn coercivity_thresholds() {
        let p0 = flat_ball(3, 0.0, 300);
        let r0 = coercivity_check(&p0, COERCIVITY_TOL);
        assert!(r0.coercive && r0.lambda_min > 0.0);

        let lambda1 = first_eigenpair(&p0, 1e-12).unwrap().eigenvalue;
        // b just below -λ₁: not coercive
        let p_bad = flat_ball(3, -lambda1 * 1.01, 300);
        assert!(!coercivity_check(&p_bad, COERCIVITY_TOL).coercive);
        // b = -λ₁/2: coercive
        let p_ok = flat_ball(3, -lambda1 * 0.5, 300);
        assert!(coercivity_check(&p_ok, COERCIVITY_TOL).coercive);
    }

    #[test]
    fn coercivity_monotone_in_b() {
        let l = [
            coercivity_check(&flat_ball(3, -2.0, 200), COERCIVITY_TOL).lambda_min,
            coercivity_check(&flat_ball(3, 0.0, 200), COERCIVITY_TOL).lambda_min,
            coercivity_check(&flat_ball(3, 1.0, 200), COERCIVITY_TOL).lambda_min,
        ];
        assert!(l[0] < l[1] && l[1] < l[2], "{l:?}");
    }

    #[test]
    fn extension_annulus_closed_form() {
        // flat n=3 annulus [1,2], a=1, b=0, φ=(+1,-1): h = A + B/r with
        // A + B = 1, A + B/2 = -1 → A = -3, B = 4; root at r = 4/3.
        let m = RadialManifold::new(3, 0.0, 1.0, 2.0).unwrap();
        let mesh = RadialMesh::uniform(&m, 1000).unwrap();
        let p = assemble(&m, &field(1.0, 0.0), &mesh).unwrap();
        let h = extend_boundary_data(&p, &[1.0, -1.0]).unwrap();
        let mut err: f64 = 0.0;
        for (i, &r) in p.mesh.nodes().iter().enumerate() {
            err = err.max((h[i] - (-3.0 + 4.0 / r)).abs());
        }
        assert!(err < 5e-6, "sup error {err}");
        // exactly one sign crossing, bracketing 4/3
        let nodes = p.mesh.nodes();
        let crossings: Vec<usize> = (0..nodes.len() - 1)
            .filter(|&i| h[i] * h[i + 1] < 0.0)
            .collect();
        assert_eq!(crossings.len(), 1);
        let i = crossings[0];
        assert!(nodes[i] < 4.0 / 3.0 && 4.0 / 3.0 < nodes[i + 1]);
    }

    #[test]
    fn extension_zero_data() {
        let p = flat_ball(3, 0.0, 64);
        let h = extend_boundary_data(&p, &[0.0]).unwrap();
        assert!(h.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn extension_requires_coercivity() {
        let p = flat_ball(3, -80.0, 64);
        assert!(matches!(
            extend_boundary_data(&p, &[1.0]),
            Err(Error::NotCoercive { .. })
        ));
    }

    #[test]
    fn extension_minimizes_the_form() {
        // among vectors with the same boundary values, h minimizes the
        // operator form: random interior perturbations increase it
        let m = RadialManifold::new(3, 0.0, 1.0, 2.0).unwrap();
        let mesh = RadialMesh::uniform(&m, 100).unwrap();
        let p = assemble(&m, &field(1.0, 0.5), &mesh).unwrap();
        let h = extend_boundary_data(&p, &[1.0, -1.0]).unwrap();
        let base = p.operator_form(&h);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let mut pert = h.clone();
            for i in p.interior() {
                pert[i] += rng.gen_range(-0.05..0.05);
            }
            assert!(p.operator_form(&pert) > base);
        }
    }
}

//! Constrained minimization of the energy I(w) = ∫(a|∇w|² + bw²) dv_g over
//! the set {w : ∫ f|w+h|^q dv_g = γ}: feasibility along the first
//! eigenfunction, preconditioned projected gradients with a scalar-scaling
//! retraction, multiplier extraction, continuation q → 2♯, and sign-change
//! detection.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linsolve::{self, EigenPair};
use crate::problem::DiscreteProblem;
use crate::special;
use crate::tridiag::{self, LdltFactor};

/// Relative feasibility enforced by every retraction.
pub const CONSTRAINT_TOL: f64 = 1e-12;

/// Constraint data (γ, q, h) defining {w : ∫ f|w+h|^q dv_g = γ}.
#[derive(Debug, Clone)]
pub struct ConstraintSpec {
    pub gamma: f64,
    pub q: f64,
    /// Extension of the boundary data (zero vector when φ = 0).
    pub h: Vec<f64>,
}

impl ConstraintSpec {
    /// Validates 2 < q ≤ 2♯, γ > ∫f|h|^{2♯} dv_g and γ > ∫f|h|^q dv_g.
    pub fn new(p: &DiscreteProblem, gamma: f64, q: f64, h: Vec<f64>) -> Result<Self> {
        p.check_exponent(q)?;
        if h.len() != p.node_count() {
            return Err(Error::Contract(format!(
                "h has {} entries for {} nodes",
                h.len(),
                p.node_count()
            )));
        }
        if !(gamma > 0.0) {
            return Err(Error::Validation(format!("gamma must be positive, got {gamma}")));
        }
        let zeros = vec![0.0; h.len()];
        let two_sharp = special::critical_exponent(p.manifold.n);
        let crit = p.constraint_value_unchecked(&zeros, &h, two_sharp);
        if crit >= gamma {
            return Err(Error::Validation(format!(
                "gamma = {gamma} must exceed ∫f|h|^(2♯) dv_g = {crit}"
            )));
        }
        let sub = p.constraint_value_unchecked(&zeros, &h, q);
        if sub >= gamma {
            return Err(Error::Validation(format!(
                "gamma = {gamma} must exceed ∫f|h|^q dv_g = {sub}"
            )));
        }
        Ok(Self { gamma, q, h })
    }
}

/// One accepted iterate of the projected-gradient loop.
#[derive(Debug, Clone, Copy)]
pub struct TraceRow {
    pub iter: usize,
    pub energy: f64,
    pub constraint_gap: f64,
    pub step: f64,
}

/// Converged minimizer with its multiplier and diagnostics.
#[derive(Debug, Clone)]
pub struct SolveResult {
    pub w: Vec<f64>,
    /// μ_{γ,q} = I(w)
    pub mu: f64,
    /// λ_{γ,q} from the integral identity I(w) = λ (γ - ∫f|u|^{q-2}u h dv_g)
    pub lambda: f64,
    /// Relative dual-norm residual of the Euler-Lagrange equation.
    pub residual: f64,
    pub iterations: usize,
    /// Mesh intervals (r_i, r_{i+1}) where u = w + h strictly changes sign.
    pub sign_changes: Vec<(f64, f64)>,
    pub trace: Vec<TraceRow>,
}

#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    /// Target for the relative dual-norm Euler-Lagrange residual.
    pub tol: f64,
    pub max_iters: usize,
    /// Extra random feasible starts; the lowest-energy converged run wins.
    pub restarts: u32,
    pub seed: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            tol: 1e-9,
            max_iters: 200_000,
            restarts: 0,
            seed: 0,
        }
    }
}

/// Feasible starting point t·ψ₁ on the constraint set.
#[derive(Debug, Clone)]
pub struct FeasiblePoint {
    pub t: f64,
    pub w0: Vec<f64>,
}

/// Smallest t > 0 with ∫f|t·ψ₁ + h|^q dv_g = γ (geometric bracketing plus
/// bisection; exists because F(0) < γ and F(t) → ∞).
pub fn feasible_point(
    p: &DiscreteProblem,
    spec: &ConstraintSpec,
    psi1: &EigenPair,
) -> Result<FeasiblePoint> {
    let t = smallest_scaling_root(p, spec, &psi1.eigenvector)?;
    let w0 = psi1.eigenvector.iter().map(|v| t * v).collect();
    Ok(FeasiblePoint { t, w0 })
}

/// Retraction onto the constraint set by scalar scaling: smallest t > 0 with
/// ∫f|t·w + h|^q dv_g = γ. Returns (t·w, t).
pub fn project_to_constraint(
    p: &DiscreteProblem,
    spec: &ConstraintSpec,
    w: &[f64],
) -> Result<(Vec<f64>, f64)> {
    let t = smallest_scaling_root(p, spec, w)?;
    Ok((w.iter().map(|v| t * v).collect(), t))
}

fn smallest_scaling_root(p: &DiscreteProblem, spec: &ConstraintSpec, w: &[f64]) -> Result<f64> {
    let gamma = spec.gamma;
    let f = |t: f64| p.constraint_value_unchecked(&scale(w, t), &spec.h, spec.q);

    // scan upward from a tiny scale so the first bracket holds the smallest root
    let mut t_lo = 1e-12;
    if f(t_lo) >= gamma {
        t_lo = 0.0; // root essentially at zero scale; bracket from the origin
    }
    let mut t_hi = t_lo.max(1e-12);
    let mut fh = f(t_hi);
    let mut guard = 0;
    while fh < gamma {
        t_hi *= 1.3;
        fh = f(t_hi);
        guard += 1;
        if guard > 400 {
            return Err(Error::NoConvergence(format!(
                "scaling retraction: no bracket below t = {t_hi:.3e} \
                 (constraint value {fh:.6e} < gamma = {gamma:.6e})"
            )));
        }
    }
    let mut lo = if t_hi > 1e-12 { t_hi / 1.3 } else { 0.0 };
    let mut hi = t_hi;
    for _ in 0..300 {
        let mid = 0.5 * (lo + hi);
        if !(mid > lo && mid < hi) {
            break;
        }
        if f(mid) < gamma {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t = 0.5 * (lo + hi);
    let gap = (f(t) - gamma).abs() / gamma;
    if gap > CONSTRAINT_TOL {
        return Err(Error::NoConvergence(format!(
            "scaling retraction: residual feasibility gap {gap:.3e}"
        )));
    }
    Ok(t)
}

fn scale(w: &[f64], t: f64) -> Vec<f64> {
    w.iter().map(|v| t * v).collect()
}

/// Preconditioned projected gradient minimization of I over the constraint
/// set, starting from a feasible w_init.
///
/// Descent direction: steepest descent of I in the H¹₀ inner product
/// (preconditioner K₁ + M₁), projected against the constraint gradient;
/// backtracking Armijo line search composed with the scalar retraction;
/// stops when the relative dual-norm Euler-Lagrange residual drops below
/// `opts.tol`.
pub fn minimize_subcritical(
    p: &DiscreteProblem,
    spec: &ConstraintSpec,
    w_init: &[f64],
    opts: &SolveOptions,
) -> Result<SolveResult> {
    let coerc = linsolve::coercivity_check(p, linsolve::COERCIVITY_TOL);
    if !coerc.coercive {
        return Err(Error::NotCoercive {
            lambda_min: coerc.lambda_min,
        });
    }

    let mut best: Option<SolveResult> = None;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for restart in 0..=opts.restarts {
        let start = if restart == 0 {
            w_init.to_vec()
        } else {
            let mut w: Vec<f64> = vec![0.0; p.node_count()];
            for i in p.interior() {
                w[i] = rng.gen_range(-1.0..1.0);
            }
            w
        };
        let run = minimize_single(p, spec, &start, opts)?;
        best = match best {
            Some(prev) if prev.mu <= run.mu => Some(prev),
            _ => Some(run),
        };
    }
    Ok(best.expect("at least one run"))
}

fn minimize_single(
    p: &DiscreteProblem,
    spec: &ConstraintSpec,
    w_start: &[f64],
    opts: &SolveOptions,
) -> Result<SolveResult> {
    let interior = p.interior();
    let precond: LdltFactor = p
        .sobolev()
        .submatrix(interior.start, interior.end)
        .ldlt()
        .expect("H¹₀ form is positive definite");

    let apply_pinv = |full: &[f64]| -> Vec<f64> {
        let x = precond.solve(&full[interior.clone()]);
        let mut out = vec![0.0; full.len()];
        out[interior.clone()].copy_from_slice(&x);
        out
    };

    // multiplier from the integral identity I(w) = λ (γ - ∫f|u|^{q-2}u h)
    let lambda_identity = |w: &[f64], s: &[f64]| -> Result<f64> {
        let b_term = tridiag::dot(s, &spec.h);
        let denom = spec.gamma - b_term;
        if denom <= 0.0 {
            return Err(Error::Validation(format!(
                "multiplier denominator γ - ∫f|u|^(q-2)u h = {denom:.6e} is not positive; \
                 constraint-set assumptions violated"
            )));
        }
        Ok(p.operator_form(w) / denom)
    };
    // relative dual-norm residual of Aw = λs in the preconditioner metric
    let el_residual = |aw: &[f64], s: &[f64], lambda: f64| -> f64 {
        let pinv_aw = apply_pinv(aw);
        let pinv_s = apply_pinv(s);
        let g_norm = dual_norm(aw, &pinv_aw);
        let r: Vec<f64> = aw.iter().zip(s).map(|(a, si)| a - lambda * si).collect();
        let pinv_r: Vec<f64> = pinv_aw
            .iter()
            .zip(&pinv_s)
            .map(|(a, si)| a - lambda * si)
            .collect();
        dual_norm(&r, &pinv_r) / g_norm.max(f64::MIN_POSITIVE)
    };

    let (mut w, _) = project_to_constraint(p, spec, w_start)?;
    let mut energy = p.operator_form(&w);
    let mut step = 1.0;
    let mut trace = Vec::new();
    let mut iterations = 0;

    // Phase 1: projected gradient to a coarse target. Line-search progress
    // saturates once energy differences reach f64 granularity (residuals
    // around 1e-7), so the tight target is left to the Newton polish.
    let pg_tol = opts.tol.max(1e-7);
    for iter in 0..opts.max_iters {
        iterations = iter;
        let aw = p.operator_apply(&w);
        let s = p.constraint_term(&w, &spec.h, spec.q);
        let lambda = lambda_identity(&w, &s)?;
        let residual = el_residual(&aw, &s, lambda);
        if residual < pg_tol {
            break;
        }

        // tangential steepest-descent direction in the P-metric
        let pinv_aw = apply_pinv(&aw);
        let pinv_s = apply_pinv(&s);
        let s_pinv_s = tridiag::dot(&s, &pinv_s).max(f64::MIN_POSITIVE);
        let theta = tridiag::dot(&s, &pinv_aw) / s_pinv_s;
        let mut d: Vec<f64> = pinv_aw
            .iter()
            .zip(&pinv_s)
            .map(|(a, si)| -(a - theta * si))
            .collect();
        for &bd in p.boundary_dofs() {
            d[bd] = 0.0;
        }
        // ⟨∇I, d⟩ = 2 Aw·d
        let slope = 2.0 * tridiag::dot(&aw, &d);
        if !(slope < 0.0) {
            if residual < 1e-2 {
                break; // numerically stationary; hand over to Newton
            }
            return Err(Error::StepSize(format!(
                "projected direction is not a descent direction (slope {slope:.3e}, \
                 residual {residual:.3e})"
            )));
        }

        // backtracking Armijo on the retracted iterate
        let mut accepted = false;
        let mut ls_step = step;
        for _ in 0..80 {
            let trial: Vec<f64> = w.iter().zip(&d).map(|(wi, di)| wi + ls_step * di).collect();
            // a failed scaling bracket at this step just shrinks the step
            if let Ok((w_new, _t)) = project_to_constraint(p, spec, &trial) {
                let e_new = p.operator_form(&w_new);
                if e_new <= energy + 1e-4 * ls_step * slope {
                    w = w_new;
                    energy = e_new;
                    accepted = true;
                    break;
                }
            }
            ls_step *= 0.5;
        }
        if !accepted {
            if residual < 1e-2 {
                break; // stalled at the line-search floor; Newton continues
            }
            return Err(Error::StepSize(format!(
                "line search exhausted at iteration {iter} (residual {residual:.3e})"
            )));
        }
        let gap = (p.constraint_value_unchecked(&w, &spec.h, spec.q) - spec.gamma).abs()
            / spec.gamma;
        trace.push(TraceRow {
            iter,
            energy,
            constraint_gap: gap,
            step: ls_step,
        });
        // gentle growth so the next search starts near the accepted scale
        step = (ls_step * 2.0).clamp(1e-16, 1e8);
    }

    // Phase 2: Newton on the KKT system (Aw - λs, F(w) - γ) = 0, keeping the
    // best iterate by residual. The Jacobian block A - λ(q-1) diag(c|u|^{q-2})
    // is tridiagonal and generally indefinite, hence the pivoted solve.
    let a_int = p.operator().submatrix(interior.start, interior.end);
    let mut lambda = {
        let s = p.constraint_term(&w, &spec.h, spec.q);
        lambda_identity(&w, &s)?
    };
    let mut best_w = w.clone();
    let mut best_lambda = lambda;
    let mut best_resid = f64::INFINITY;
    for newton_it in 0..50 {
        let aw = p.operator_apply(&w);
        let s = p.constraint_term(&w, &spec.h, spec.q);
        let feas = (p.constraint_value_unchecked(&w, &spec.h, spec.q) - spec.gamma) / spec.gamma;
        let resid = el_residual(&aw, &s, lambda) + feas.abs();
        if resid < best_resid {
            best_resid = resid;
            best_w = w.clone();
            best_lambda = lambda;
        } else if newton_it > 0 {
            break; // no further progress
        }
        if resid < opts.tol / 10.0 {
            break;
        }

        let q = spec.q;
        let shift: Vec<f64> = interior
            .clone()
            .map(|i| {
                let u = w[i] + spec.h[i];
                -lambda * (q - 1.0) * p.f_weights()[i] * u.abs().powf(q - 2.0)
            })
            .collect();
        let r_int: Vec<f64> = interior.clone().map(|i| aw[i] - lambda * s[i]).collect();
        let s_int: Vec<f64> = s[interior.clone()].to_vec();
        let Ok(x1) = tridiag::pivoted_solve(&a_int, &shift, &r_int) else { break };
        let Ok(x2) = tridiag::pivoted_solve(&a_int, &shift, &s_int) else { break };
        let c_val = feas * spec.gamma;
        let den = q * tridiag::dot(&s_int, &x2);
        if den.abs() < 1e-300 {
            break;
        }
        let dlambda = (q * tridiag::dot(&s_int, &x1) - c_val) / den;
        lambda += dlambda;
        for (k, i) in interior.clone().enumerate() {
            w[i] += -x1[k] + dlambda * x2[k];
        }
        let gap = (p.constraint_value_unchecked(&w, &spec.h, spec.q) - spec.gamma).abs()
            / spec.gamma;
        iterations += 1;
        trace.push(TraceRow {
            iter: iterations,
            energy: p.operator_form(&w),
            constraint_gap: gap,
            step: 0.0,
        });
    }
    w = best_w;
    lambda = best_lambda;

    // restore exact feasibility and report with the identity multiplier
    let (w, _) = project_to_constraint(p, spec, &w)?;
    let aw = p.operator_apply(&w);
    let s = p.constraint_term(&w, &spec.h, spec.q);
    let final_lambda = lambda_identity(&w, &s)?;
    let final_residual = el_residual(&aw, &s, final_lambda);
    let _ = lambda;
    if final_residual > opts.tol {
        return Err(Error::NoConvergence(format!(
            "projected-gradient/Newton residual {final_residual:.3e} above target {:.3e}",
            opts.tol
        )));
    }

    let mu = p.operator_form(&w);
    let u: Vec<f64> = w.iter().zip(&spec.h).map(|(wi, hi)| wi + hi).collect();
    let sign = detect_sign_change(p, &u);
    Ok(SolveResult {
        mu,
        lambda: final_lambda,
        residual: final_residual,
        iterations,
        sign_changes: sign.crossings,
        trace,
        w,
    })
}

fn dual_norm(v: &[f64], pinv_v: &[f64]) -> f64 {
    tridiag::dot(v, pinv_v).max(0.0).sqrt()
}

/// Sequential subcritical solves over a q-schedule ending at 2♯, with warm
/// starts projected onto each new constraint set.
pub fn continuation_to_critical(
    p: &DiscreteProblem,
    gamma: f64,
    h: &[f64],
    schedule: &[f64],
    opts: &SolveOptions,
) -> Result<Vec<(f64, SolveResult)>> {
    let two_sharp = special::critical_exponent(p.manifold.n);
    if schedule.is_empty() {
        return Err(Error::Validation("empty q-schedule".into()));
    }
    if schedule.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Validation("q-schedule must be strictly increasing".into()));
    }
    let last = *schedule.last().unwrap();
    if (last - two_sharp).abs() > 1e-10 {
        return Err(Error::Validation(format!(
            "q-schedule must end at 2♯ = {two_sharp}, got {last}"
        )));
    }

    // validate every step before doing any work
    for &q in schedule {
        ConstraintSpec::new(p, gamma, q, h.to_vec())
            .map_err(|e| Error::Validation(format!("schedule step q = {q}: {e}")))?;
    }

    let psi1 = linsolve::first_eigenpair(p, 1e-12)?;
    let mut results = Vec::with_capacity(schedule.len());
    let mut warm: Option<Vec<f64>> = None;
    for &q in schedule {
        let spec = ConstraintSpec::new(p, gamma, q, h.to_vec())?;
        let start = match &warm {
            Some(w) => w.clone(),
            None => feasible_point(p, &spec, &psi1)?.w0,
        };
        let res = minimize_subcritical(p, &spec, &start, opts)
            .map_err(|e| Error::NoConvergence(format!("continuation step q = {q}: {e}")))?;
        warm = Some(res.w.clone());
        results.push((q, res));
    }
    Ok(results)
}

/// Sign-change report for a nodal function.
#[derive(Debug, Clone)]
pub struct SignChangeReport {
    pub changes: bool,
    /// Mesh intervals with strictly opposite signs at the endpoints.
    pub crossings: Vec<(f64, f64)>,
}

pub fn detect_sign_change(p: &DiscreteProblem, u: &[f64]) -> SignChangeReport {
    let nodes = p.mesh.nodes();
    let crossings: Vec<(f64, f64)> = (0..nodes.len() - 1)
        .filter(|&i| u[i] * u[i + 1] < 0.0)
        .map(|i| (nodes[i], nodes[i + 1]))
        .collect();
    SignChangeReport {
        changes: !crossings.is_empty(),
        crossings,
    }
}

/// The nontriviality threshold K₀ (min a)⁻¹ (max f)^{2/2♯} γ^{-2/2♯} μ;
/// strictly below 1 certifies that the weak limit is not the zero function.
#[derive(Debug, Clone, Copy)]
pub struct NontrivialityReport {
    pub value: f64,
    pub satisfied: bool,
}

pub fn nontriviality_condition(
    p: &DiscreteProblem,
    spec: &ConstraintSpec,
    mu: f64,
) -> Result<NontrivialityReport> {
    if mu < 0.0 {
        return Err(Error::Domain(format!("mu must be nonnegative, got {mu}")));
    }
    let n = p.manifold.n;
    let two_sharp = special::critical_exponent(n);
    let k0 = special::best_sobolev_constant(n)?;
    let (r0, r1) = (p.manifold.r_min, p.manifold.r_max);
    let min_a = p.coeffs.min_a(r0, r1);
    let max_f = p.coeffs.max_f(r0, r1);
    let value = k0 / min_a * max_f.powf(2.0 / two_sharp) * spec.gamma.powf(-2.0 / two_sharp) * mu;
    Ok(NontrivialityReport {
        value,
        satisfied: value < 1.0,
    })
}

//! Piecewise-linear finite elements on a radial mesh: assembly of the
//! weighted stiffness/mass forms of -div_g(a∇·) + b·, nodal quadrature
//! weights for the constraint functional, and evaluation of both.

use crate::coeffs::CoefficientField;
use crate::error::{Error, Result};
use crate::geometry::RadialManifold;
use crate::mesh::RadialMesh;
use crate::special;
use crate::tridiag::SymTridiag;

/// Gauss-2 nodes on [-1, 1].
const G2: f64 = 0.5773502691896258;

/// Assembled discrete problem. Immutable after construction; all evaluation
/// methods are pure.
#[derive(Debug, Clone)]
pub struct DiscreteProblem {
    pub manifold: RadialManifold,
    pub coeffs: CoefficientField,
    pub mesh: RadialMesh,
    /// ∫ a u'v' dv_g
    stiffness_a: SymTridiag,
    /// ∫ b uv dv_g
    mass_b: SymTridiag,
    /// ∫ u'v' dv_g
    stiffness_unit: SymTridiag,
    /// ∫ uv dv_g
    mass_unit: SymTridiag,
    /// K_a + M_b, the form of the operator itself
    operator: SymTridiag,
    /// K_1 + M_1, the H¹₀-norm form ‖∇u‖₂² + ‖u‖₂²
    sobolev: SymTridiag,
    /// m_i = ∫ φ_i dv_g (lumped volume weights)
    vol_weights: Vec<f64>,
    /// c_i = m_i f(r_i) (lumped constraint weights)
    f_weights: Vec<f64>,
    /// Dirichlet node indices: [N] for a ball, [0, N] for an annulus
    boundary_dofs: Vec<usize>,
}

/// Weak form of -div_g(a∇·) + b· and the constraint quadrature on the mesh.
///
/// The weight sn_κ(r)^{n-1} vanishes at r = 0 on balls; the center node is a
/// free degree of freedom (natural condition of the weighted form), so only
/// the outer node carries the Dirichlet condition there.
pub fn assemble(
    m: &RadialManifold,
    c: &CoefficientField,
    mesh: &RadialMesh,
) -> Result<DiscreteProblem> {
    c.check_positivity(m.r_min, m.r_max)?;
    let nodes = mesh.nodes();
    if nodes[0] != m.r_min || *nodes.last().unwrap() != m.r_max {
        return Err(Error::Validation(format!(
            "mesh spans [{}, {}] but the manifold spans [{}, {}]",
            nodes[0],
            nodes.last().unwrap(),
            m.r_min,
            m.r_max
        )));
    }

    let n_nodes = nodes.len();
    let mut stiffness_a = SymTridiag::zeros(n_nodes);
    let mut mass_b = SymTridiag::zeros(n_nodes);
    let mut stiffness_unit = SymTridiag::zeros(n_nodes);
    let mut mass_unit = SymTridiag::zeros(n_nodes);
    let mut vol_weights = vec![0.0; n_nodes];

    let weight = |r: f64| m.volume_weight_unchecked(r);

    for e in 0..n_nodes - 1 {
        let (rl, rr) = (nodes[e], nodes[e + 1]);
        let h = rr - rl;
        let mid = 0.5 * (rl + rr);
        let half = 0.5 * h;
        // Two-point Gauss rule on the element.
        let qpts = [mid - half * G2, mid + half * G2];
        let qw = half; // each Gauss-2 weight is 1 on [-1,1], scaled by half-width

        for &r in &qpts {
            let w = weight(r);
            let phi_l = (rr - r) / h;
            let phi_r = (r - rl) / h;
            let av = c.a.eval(r);
            let bv = c.b.eval(r);

            // stiffness: gradients are ∓1/h
            let ks = qw * w / (h * h);
            stiffness_a.diag[e] += av * ks;
            stiffness_a.diag[e + 1] += av * ks;
            stiffness_a.off[e] -= av * ks;
            stiffness_unit.diag[e] += ks;
            stiffness_unit.diag[e + 1] += ks;
            stiffness_unit.off[e] -= ks;

            // mass
            let ms = qw * w;
            mass_b.diag[e] += bv * ms * phi_l * phi_l;
            mass_b.diag[e + 1] += bv * ms * phi_r * phi_r;
            mass_b.off[e] += bv * ms * phi_l * phi_r;
            mass_unit.diag[e] += ms * phi_l * phi_l;
            mass_unit.diag[e + 1] += ms * phi_r * phi_r;
            mass_unit.off[e] += ms * phi_l * phi_r;

            // lumped volume weights
            vol_weights[e] += ms * phi_l;
            vol_weights[e + 1] += ms * phi_r;
        }
    }

    let f_weights = vol_weights
        .iter()
        .zip(nodes)
        .map(|(&mi, &r)| mi * c.f.eval(r))
        .collect();

    let boundary_dofs = if m.is_ball() {
        vec![n_nodes - 1]
    } else {
        vec![0, n_nodes - 1]
    };

    let operator = stiffness_a.add_scaled(&mass_b, 1.0);
    let sobolev = stiffness_unit.add_scaled(&mass_unit, 1.0);

    Ok(DiscreteProblem {
        manifold: *m,
        coeffs: c.clone(),
        mesh: mesh.clone(),
        stiffness_a,
        mass_b,
        stiffness_unit,
        mass_unit,
        operator,
        sobolev,
        vol_weights,
        f_weights,
        boundary_dofs,
    })
}

impl DiscreteProblem {
    pub fn node_count(&self) -> usize {
        self.mesh.node_count()
    }

    pub fn boundary_dofs(&self) -> &[usize] {
        &self.boundary_dofs
    }

    /// Interior degrees of freedom as a contiguous index range.
    pub fn interior(&self) -> std::ops::Range<usize> {
        if self.manifold.is_ball() {
            0..self.node_count() - 1
        } else {
            1..self.node_count() - 1
        }
    }

    pub fn stiffness_a(&self) -> &SymTridiag {
        &self.stiffness_a
    }

    pub fn mass_b(&self) -> &SymTridiag {
        &self.mass_b
    }

    pub fn mass_unit(&self) -> &SymTridiag {
        &self.mass_unit
    }

    pub fn stiffness_unit(&self) -> &SymTridiag {
        &self.stiffness_unit
    }

    /// K_a + M_b.
    pub fn operator(&self) -> &SymTridiag {
        &self.operator
    }

    /// K_1 + M_1 (the H¹₀-norm form, used as solver preconditioner).
    pub fn sobolev(&self) -> &SymTridiag {
        &self.sobolev
    }

    /// Lumped volume weights m_i = ∫ φ_i dv_g.
    pub fn vol_weights(&self) -> &[f64] {
        &self.vol_weights
    }

    /// Lumped constraint weights c_i = m_i f(r_i).
    pub fn f_weights(&self) -> &[f64] {
        &self.f_weights
    }

    /// ∫_M dv_g by the assembly quadrature.
    pub fn volume(&self) -> f64 {
        self.vol_weights.iter().sum()
    }

    /// Quadratic form wᵀ(K_a + M_b)w without the boundary-zero contract;
    /// equals ∫ (a|∇w|² + bw²) dv_g for the interpolant of w.
    pub fn operator_form(&self, w: &[f64]) -> f64 {
        quadratic(&self.operator, w)
    }

    /// I(w) = ∫ (a|∇w|² + bw²) dv_g for an admissible (boundary-zero) w.
    pub fn energy(&self, w: &[f64]) -> Result<f64> {
        self.check_admissible(w)?;
        Ok(self.operator_form(w))
    }

    fn check_admissible(&self, w: &[f64]) -> Result<()> {
        if w.len() != self.node_count() {
            return Err(Error::Contract(format!(
                "vector has {} entries for {} nodes",
                w.len(),
                self.node_count()
            )));
        }
        for &i in &self.boundary_dofs {
            if w[i] != 0.0 {
                return Err(Error::Contract(format!(
                    "nonzero boundary entry at node {i}: {}",
                    w[i]
                )));
            }
        }
        Ok(())
    }

    /// ∫ f|w+h|^q dv_g by nodal quadrature (mass-lumped).
    pub fn constraint_value(&self, w: &[f64], h: &[f64], q: f64) -> Result<f64> {
        self.check_exponent(q)?;
        Ok(self.constraint_value_unchecked(w, h, q))
    }

    pub(crate) fn constraint_value_unchecked(&self, w: &[f64], h: &[f64], q: f64) -> f64 {
        self.f_weights
            .iter()
            .zip(w.iter().zip(h))
            .map(|(&c, (&wi, &hi))| c * (wi + hi).abs().powf(q))
            .sum()
    }

    /// Nodal nonlinear term s_i = c_i |w_i+h_i|^{q-2}(w_i+h_i); the gradient
    /// of the constraint functional is q·s, and the discrete Euler-Lagrange
    /// system reads (K_a + M_b)w = λ s.
    pub fn constraint_term(&self, w: &[f64], h: &[f64], q: f64) -> Vec<f64> {
        self.f_weights
            .iter()
            .zip(w.iter().zip(h))
            .map(|(&c, (&wi, &hi))| {
                let u = wi + hi;
                if u == 0.0 {
                    0.0
                } else {
                    c * u.abs().powf(q - 2.0) * u
                }
            })
            .collect()
    }

    /// ∫ |w|^q dv_g with plain volume weights (no f), used for the a-priori
    /// bound on feasible iterates.
    pub fn lq_norm_pow(&self, w: &[f64], q: f64) -> f64 {
        self.vol_weights
            .iter()
            .zip(w)
            .map(|(&m, &wi)| m * wi.abs().powf(q))
            .sum()
    }

    pub fn check_exponent(&self, q: f64) -> Result<()> {
        let two_sharp = special::critical_exponent(self.manifold.n);
        if !(q > 2.0) || q > two_sharp + 1e-12 {
            return Err(Error::Domain(format!(
                "exponent q = {q} outside (2, 2♯ = {two_sharp}]"
            )));
        }
        Ok(())
    }

    /// (K_a + M_b) w.
    pub fn operator_apply(&self, w: &[f64]) -> Vec<f64> {
        self.operator.matvec(w)
    }
}

fn quadratic(a: &SymTridiag, w: &[f64]) -> f64 {
    let aw = a.matvec(w);
    crate::tridiag::dot(&aw, w)
}

//! Symmetric tridiagonal matrices: matvec, direct LDLᵀ elimination (the
//! exact oracle/fallback), Sturm-sequence inertia counts, and Jacobi
//! preconditioned conjugate gradients (the default iterative path).

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiag {
    /// Main diagonal, length n.
    pub diag: Vec<f64>,
    /// Off diagonal, length n - 1.
    pub off: Vec<f64>,
}

impl SymTridiag {
    pub fn zeros(n: usize) -> Self {
        Self {
            diag: vec![0.0; n],
            off: vec![0.0; n.saturating_sub(1)],
        }
    }

    pub fn n(&self) -> usize {
        self.diag.len()
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        let n = self.n();
        let mut y = vec![0.0; n];
        for i in 0..n {
            let mut v = self.diag[i] * x[i];
            if i > 0 {
                v += self.off[i - 1] * x[i - 1];
            }
            if i + 1 < n {
                v += self.off[i] * x[i + 1];
            }
            y[i] = v;
        }
        y
    }

    /// self + alpha * other
    pub fn add_scaled(&self, other: &SymTridiag, alpha: f64) -> SymTridiag {
        assert_eq!(self.n(), other.n());
        SymTridiag {
            diag: self
                .diag
                .iter()
                .zip(&other.diag)
                .map(|(a, b)| a + alpha * b)
                .collect(),
            off: self
                .off
                .iter()
                .zip(&other.off)
                .map(|(a, b)| a + alpha * b)
                .collect(),
        }
    }

    /// Principal submatrix for the index range [lo, hi).
    pub fn submatrix(&self, lo: usize, hi: usize) -> SymTridiag {
        SymTridiag {
            diag: self.diag[lo..hi].to_vec(),
            off: self.off[lo..hi.saturating_sub(1)].to_vec(),
        }
    }

    /// Number of eigenvalues of (self - shift * b) below zero, i.e. the count
    /// of generalized eigenvalues of (self, b) below `shift` when b is SPD.
    /// Classical Sturm sequence on the LDLᵀ pivots with a tiny-pivot guard.
    pub fn inertia_below(&self, shift: f64, b: &SymTridiag) -> usize {
        let n = self.n();
        assert_eq!(n, b.n());
        let tiny = 1e-300;
        let mut count = 0;
        let mut d_prev = 0.0_f64;
        for i in 0..n {
            let a_i = self.diag[i] - shift * b.diag[i];
            let e = if i > 0 {
                self.off[i - 1] - shift * b.off[i - 1]
            } else {
                0.0
            };
            let mut d = a_i - if i > 0 { e * e / d_prev } else { 0.0 };
            if d == 0.0 {
                d = tiny;
            }
            if d < 0.0 {
                count += 1;
            }
            d_prev = d;
        }
        count
    }

    /// LDLᵀ factorization; fails (returns None) on a zero or negative pivot,
    /// which doubles as the positive-definiteness test.
    pub fn ldlt(&self) -> Option<LdltFactor> {
        let n = self.n();
        let mut d = vec![0.0; n];
        let mut l = vec![0.0; n.saturating_sub(1)];
        for i in 0..n {
            let mut di = self.diag[i];
            if i > 0 {
                di -= l[i - 1] * l[i - 1] * d[i - 1];
            }
            if di <= 0.0 || !di.is_finite() {
                return None;
            }
            d[i] = di;
            if i + 1 < n {
                l[i] = self.off[i] / di;
            }
        }
        Some(LdltFactor { d, l })
    }
}

/// LDLᵀ factors of an SPD tridiagonal matrix.
#[derive(Debug, Clone)]
pub struct LdltFactor {
    d: Vec<f64>,
    l: Vec<f64>,
}

impl LdltFactor {
    pub fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        let n = self.d.len();
        let mut x = rhs.to_vec();
        // forward: L z = rhs
        for i in 1..n {
            x[i] -= self.l[i - 1] * x[i - 1];
        }
        // diagonal
        for (xi, di) in x.iter_mut().zip(&self.d) {
            *xi /= di;
        }
        // backward: Lᵀ x = z
        for i in (0..n.saturating_sub(1)).rev() {
            x[i] -= self.l[i] * x[i + 1];
        }
        x
    }
}

/// Direct solve A x = b by LDLᵀ elimination (Thomas algorithm).
pub fn direct_solve(a: &SymTridiag, rhs: &[f64]) -> Result<Vec<f64>> {
    let f = a.ldlt().ok_or_else(|| {
        Error::Validation("direct solve: matrix is not positive definite".into())
    })?;
    Ok(f.solve(rhs))
}

/// Gaussian elimination with partial pivoting for a (possibly indefinite)
/// symmetric tridiagonal matrix A plus a diagonal shift D: solves
/// (A + diag(shift)) x = rhs. Pivoting introduces one extra superdiagonal.
pub fn pivoted_solve(a: &SymTridiag, shift: &[f64], rhs: &[f64]) -> Result<Vec<f64>> {
    let n = a.n();
    assert_eq!(shift.len(), n);
    assert_eq!(rhs.len(), n);
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut diag: Vec<f64> = a.diag.iter().zip(shift).map(|(d, s)| d + s).collect();
    let mut sup1: Vec<f64> = (0..n).map(|i| if i + 1 < n { a.off[i] } else { 0.0 }).collect();
    let mut sup2 = vec![0.0; n];
    let mut sub: Vec<f64> = (0..n).map(|i| if i > 0 { a.off[i - 1] } else { 0.0 }).collect();
    let mut x = rhs.to_vec();

    for k in 0..n - 1 {
        // rows k and k+1 both live in columns (k, k+1, k+2):
        //   row k   : (diag[k],  sup1[k],   sup2[k])
        //   row k+1 : (sub[k+1], diag[k+1], sup1[k+1])
        if sub[k + 1].abs() > diag[k].abs() {
            let (a0, a1, a2) = (diag[k], sup1[k], sup2[k]);
            diag[k] = sub[k + 1];
            sup1[k] = diag[k + 1];
            sup2[k] = sup1[k + 1];
            sub[k + 1] = a0;
            diag[k + 1] = a1;
            sup1[k + 1] = a2;
            x.swap(k, k + 1);
        }
        if diag[k] == 0.0 {
            return Err(Error::Validation("pivoted solve: singular matrix".into()));
        }
        let factor = sub[k + 1] / diag[k];
        diag[k + 1] -= factor * sup1[k];
        sup1[k + 1] -= factor * sup2[k];
        x[k + 1] -= factor * x[k];
        sub[k + 1] = 0.0;
    }
    if diag[n - 1] == 0.0 {
        return Err(Error::Validation("pivoted solve: singular matrix".into()));
    }
    // back substitution with two superdiagonals
    for i in (0..n).rev() {
        let mut acc = x[i];
        if i + 1 < n {
            acc -= sup1[i] * x[i + 1];
        }
        if i + 2 < n {
            acc -= sup2[i] * x[i + 2];
        }
        x[i] = acc / diag[i];
    }
    Ok(x)
}

/// Jacobi-preconditioned conjugate gradients for SPD tridiagonal systems.
/// Stops when ||r||₂ <= tol * ||rhs||₂. Returns (solution, iterations).
pub fn cg_solve(
    a: &SymTridiag,
    rhs: &[f64],
    x0: Option<&[f64]>,
    tol: f64,
    max_iter: usize,
) -> Result<(Vec<f64>, usize)> {
    let n = a.n();
    let rhs_norm = norm2(rhs);
    if rhs_norm == 0.0 {
        return Ok((vec![0.0; n], 0));
    }
    let inv_diag: Vec<f64> = a
        .diag
        .iter()
        .map(|&d| if d > 0.0 { 1.0 / d } else { 1.0 })
        .collect();

    let mut x = x0.map(|v| v.to_vec()).unwrap_or_else(|| vec![0.0; n]);
    let ax = a.matvec(&x);
    let mut r: Vec<f64> = rhs.iter().zip(&ax).map(|(b, v)| b - v).collect();
    let mut z: Vec<f64> = r.iter().zip(&inv_diag).map(|(r, m)| r * m).collect();
    let mut p = z.clone();
    let mut rz = dot(&r, &z);

    for it in 0..max_iter {
        if norm2(&r) <= tol * rhs_norm {
            return Ok((x, it));
        }
        let ap = a.matvec(&p);
        let pap = dot(&p, &ap);
        if pap <= 0.0 {
            return Err(Error::Validation(
                "cg: matrix is not positive definite along a search direction".into(),
            ));
        }
        let alpha = rz / pap;
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        for i in 0..n {
            z[i] = r[i] * inv_diag[i];
        }
        let rz_new = dot(&r, &z);
        let beta = rz_new / rz;
        rz = rz_new;
        for i in 0..n {
            p[i] = z[i] + beta * p[i];
        }
    }
    if norm2(&r) <= tol * rhs_norm {
        return Ok((x, max_iter));
    }
    Err(Error::NoConvergence(format!(
        "cg: residual {:.3e} above {:.3e} after {max_iter} iterations",
        norm2(&r),
        tol * rhs_norm
    )))
}

pub fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

pub fn norm2(x: &[f64]) -> f64 {
    dot(x, x).sqrt()
}

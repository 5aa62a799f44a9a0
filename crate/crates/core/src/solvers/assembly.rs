//! P1 assembly on a 1D mesh and the tridiagonal solve.

use crate::error::{Error, Result};
use crate::space::{merge_meshes, Mesh1D, PiecewiseField};

const GAUSS_X: [f64; 3] = [-0.774_596_669_241_483_4, 0.0, 0.774_596_669_241_483_4];
const GAUSS_W: [f64; 3] = [5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0];

/// Cell-wise `A/h`; the stiffness row `i` is `(−k[i−1], k[i−1] + k[i], −k[i])`.
pub fn cell_stiffness(mesh: &Mesh1D, a: &PiecewiseField) -> Vec<f64> {
    mesh.cells().map(|(l, r)| a.eval(0.5 * (l + r)) / (r - l)).collect()
}

pub fn lumped_mass(mesh: &Mesh1D) -> Vec<f64> {
    let n = mesh.cell_count();
    let mut m = vec![0.0; n + 1];
    for (k, (l, r)) in mesh.cells().enumerate() {
        m[k] += 0.5 * (r - l);
        m[k + 1] += 0.5 * (r - l);
    }
    m
}

/// Exact moments of `g` against the two hat halves on every cell of `mesh`:
/// `(∫_K g (r−x)/h, ∫_K g (x−l)/h)`. `g` may live on any mesh of the same domain.
pub fn hat_moments(g: &PiecewiseField, mesh: &Mesh1D) -> Result<Vec<(f64, f64)>> {
    let merged = merge_meshes(mesh, g.mesh())?;
    let pts = mesh.points();
    let gp = g.mesh().points();
    let mut out = vec![(0.0, 0.0); mesh.cell_count()];
    let (mut k, mut j) = (0usize, 0usize);
    for (l, r) in merged.cells() {
        let mid = 0.5 * (l + r);
        while k + 2 < pts.len() && pts[k + 1] <= mid {
            k += 1;
        }
        while j + 2 < gp.len() && gp[j + 1] <= mid {
            j += 1;
        }
        let (cl, cr) = (pts[k], pts[k + 1]);
        let h = cr - cl;
        let half = 0.5 * (r - l);
        for (gx, gw) in GAUSS_X.iter().zip(GAUSS_W) {
            let x = mid + half * gx;
            let w = gw * half * g.eval_in_cell(j, x);
            out[k].0 += w * (cr - x) / h;
            out[k].1 += w * (x - cl) / h;
        }
    }
    Ok(out)
}

/// `b_i = ∫ g φ_i` for the nodal hat functions of `mesh`.
pub fn load_vector(g: &PiecewiseField, mesh: &Mesh1D) -> Result<Vec<f64>> {
    let mom = hat_moments(g, mesh)?;
    let mut b = vec![0.0; mesh.cell_count() + 1];
    for (k, (left, right)) in mom.into_iter().enumerate() {
        b[k] += left;
        b[k + 1] += right;
    }
    Ok(b)
}

/// `∫ g φ_i'` for the nodal hat functions of `mesh`.
pub fn derivative_load_vector(g: &PiecewiseField, mesh: &Mesh1D) -> Result<Vec<f64>> {
    let mom = hat_moments(g, mesh)?;
    let mut b = vec![0.0; mesh.cell_count() + 1];
    for (k, ((l, r), (left, right))) in mesh.cells().zip(mom).enumerate() {
        let cell = (left + right) / (r - l);
        b[k] -= cell;
        b[k + 1] += cell;
    }
    Ok(b)
}

/// Thomas algorithm for `sub[i] x[i−1] + diag[i] x[i] + sup[i] x[i+1] = rhs[i]`.
pub fn solve_tridiagonal(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    if sub.len() != n || sup.len() != n || rhs.len() != n || n == 0 {
        return Err(Error::InvalidParameter(
            "tridiagonal system with inconsistent sizes".into(),
        ));
    }
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    for i in 0..n {
        let (lower_c, lower_d) = if i > 0 { (c[i - 1], d[i - 1]) } else { (0.0, 0.0) };
        let den = diag[i] - sub[i] * lower_c;
        if den == 0.0 || !den.is_finite() {
            return Err(Error::InvalidParameter("singular tridiagonal system".into()));
        }
        c[i] = sup[i] / den;
        d[i] = (rhs[i] - sub[i] * lower_d) / den;
    }
    for i in (0..n.saturating_sub(1)).rev() {
        d[i] -= c[i] * d[i + 1];
    }
    Ok(d)
}

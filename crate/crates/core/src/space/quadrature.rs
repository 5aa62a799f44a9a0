use super::field::PiecewiseField;
use super::intervals::IntervalSet;
use super::mesh::{merge_meshes, Mesh1D};
use crate::error::{Error, Result};

// 3-point Gauss-Legendre on [-1, 1]; exact through degree 5.
const GAUSS_X: [f64; 3] = [-0.774_596_669_241_483_4, 0.0, 0.774_596_669_241_483_4];
const GAUSS_W: [f64; 3] = [5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0];

/// Common refinement of the field meshes and the endpoints of `over`.
pub fn common_mesh(fields: &[&PiecewiseField], over: Option<&IntervalSet>) -> Result<Mesh1D> {
    let first = fields
        .first()
        .ok_or_else(|| Error::InvalidParameter("no fields to integrate".into()))?;
    let mut mesh = first.mesh().clone();
    for f in &fields[1..] {
        mesh = merge_meshes(&mesh, f.mesh())?;
    }
    if let Some(set) = over {
        mesh = mesh.refined_with(&set.endpoints().collect::<Vec<_>>());
    }
    Ok(mesh)
}

/// `∫ g(x, [f_1(x), ..., f_k(x)]) dx` over `over` (or the whole domain).
///
/// Exact whenever `g` composed with the fields is a polynomial of degree ≤ 5 on
/// every cell of the common mesh, which covers products of two quadratics.
pub fn integrate_fields<G>(fields: &[&PiecewiseField], over: Option<&IntervalSet>, g: G) -> Result<f64>
where
    G: Fn(f64, &[f64]) -> f64,
{
    let mesh = common_mesh(fields, over)?;
    let mut cursors = vec![0usize; fields.len()];
    let mut vals = vec![0.0; fields.len()];
    let mut total = 0.0;
    for (l, r) in mesh.cells() {
        let mid = 0.5 * (l + r);
        // the common mesh walks left to right, so each field cursor only advances
        for (c, f) in cursors.iter_mut().zip(fields) {
            let pts = f.mesh().points();
            while *c + 2 < pts.len() && pts[*c + 1] <= mid {
                *c += 1;
            }
        }
        if over.is_some_and(|s| !s.contains(mid)) {
            continue;
        }
        let half = 0.5 * (r - l);
        let mut cell = 0.0;
        for (gx, gw) in GAUSS_X.iter().zip(GAUSS_W) {
            let x = mid + half * gx;
            for ((v, f), &c) in vals.iter_mut().zip(fields).zip(&cursors) {
                *v = f.eval_in_cell(c, x);
            }
            cell += gw * g(x, &vals);
        }
        total += half * cell;
    }
    Ok(total)
}

pub fn integrate(p: &PiecewiseField, over: Option<&IntervalSet>) -> f64 {
    integrate_fields(&[p], over, |_, v| v[0]).expect("single field")
}

pub fn integrate_product(p: &PiecewiseField, q: &PiecewiseField, over: Option<&IntervalSet>) -> Result<f64> {
    integrate_fields(&[p, q], over, |_, v| v[0] * v[1])
}

pub fn l2_norm_sq(p: &PiecewiseField, over: Option<&IntervalSet>) -> f64 {
    integrate_fields(&[p], over, |_, v| v[0] * v[0]).expect("single field")
}

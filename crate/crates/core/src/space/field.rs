use super::intervals::IntervalSet;
use super::mesh::{merge_meshes, Mesh1D};
use super::poly::Quadratic;
use crate::error::{Error, Result};

/// Relative tolerance for matching one-sided limits at breakpoints.
pub const CONTINUITY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Continuity {
    C0,
    Discontinuous,
}

/// Scalar function on `(a, b)` given cell-by-cell as a polynomial of degree ≤ 2
/// in the local coordinate `x - left`.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseField {
    mesh: Mesh1D,
    cells: Vec<Quadratic>,
    continuity: Continuity,
}

impl PiecewiseField {
    /// Builds a field; the continuity flag is detected from the data.
    pub fn new(mesh: Mesh1D, cells: Vec<Quadratic>) -> Result<Self> {
        if cells.len() != mesh.cell_count() {
            return Err(Error::CellCountMismatch {
                expected: mesh.cell_count(),
                got: cells.len(),
            });
        }
        let mut field = Self {
            mesh,
            cells,
            continuity: Continuity::Discontinuous,
        };
        if field.max_jump().1 <= CONTINUITY_TOL * field.scale() {
            field.continuity = Continuity::C0;
        }
        Ok(field)
    }

    /// Like [`PiecewiseField::new`] but fails unless the data is C0.
    pub fn new_continuous(mesh: Mesh1D, cells: Vec<Quadratic>) -> Result<Self> {
        let f = Self::new(mesh, cells)?;
        f.require_continuous()?;
        Ok(f)
    }

    /// Accepts coefficient lists of any length as long as the degree is at most two.
    pub fn from_coeffs(mesh: Mesh1D, coeffs: &[Vec<f64>]) -> Result<Self> {
        let cells = coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                if let Some(d) = c.iter().rposition(|&v| v != 0.0).filter(|&d| d > 2) {
                    return Err(Error::DegreeTooHigh { cell: k, degree: d });
                }
                let mut q = [0.0; 3];
                for (dst, src) in q.iter_mut().zip(c) {
                    *dst = *src;
                }
                Ok(Quadratic(q))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(mesh, cells)
    }

    pub fn constant(mesh: Mesh1D, value: f64) -> Self {
        let cells = vec![Quadratic::constant(value); mesh.cell_count()];
        Self {
            mesh,
            cells,
            continuity: Continuity::C0,
        }
    }

    pub fn zero(a: f64, b: f64) -> Result<Self> {
        Ok(Self::constant(Mesh1D::new(vec![a, b])?, 0.0))
    }

    /// One polynomial `c0 + c1 x + c2 x²` (global coordinate) on every cell of `mesh`.
    pub fn global_polynomial(mesh: Mesh1D, global: [f64; 3]) -> Self {
        let g = Quadratic(global);
        let cells = mesh.cells().map(|(l, _)| g.shifted(l)).collect();
        Self {
            mesh,
            cells,
            continuity: Continuity::C0,
        }
    }

    /// Continuous piecewise-linear interpolant of `values` at `nodes`.
    pub fn piecewise_linear(nodes: &[f64], values: &[f64]) -> Result<Self> {
        if nodes.len() != values.len() {
            return Err(Error::InvalidParameter(format!(
                "{} nodes but {} values",
                nodes.len(),
                values.len()
            )));
        }
        let mesh = Mesh1D::new(nodes.to_vec())?;
        let cells = nodes
            .windows(2)
            .zip(values.windows(2))
            .map(|(x, v)| Quadratic::linear(v[0], (v[1] - v[0]) / (x[1] - x[0])))
            .collect();
        Self::new(mesh, cells)
    }

    pub fn mesh(&self) -> &Mesh1D {
        &self.mesh
    }

    pub fn cells(&self) -> &[Quadratic] {
        &self.cells
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.mesh.a(), self.mesh.b())
    }

    pub fn continuity(&self) -> Continuity {
        self.continuity
    }

    pub fn is_continuous(&self) -> bool {
        self.continuity == Continuity::C0
    }

    pub fn require_continuous(&self) -> Result<()> {
        let (at, jump) = self.max_jump();
        if jump > CONTINUITY_TOL * self.scale() {
            return Err(Error::NotContinuous { at, jump });
        }
        Ok(())
    }

    /// `1 + max |coefficient|`, the reference magnitude for relative tolerances.
    pub fn scale(&self) -> f64 {
        1.0 + self.cells.iter().fold(0.0_f64, |m, q| m.max(q.max_abs_coeff()))
    }

    pub fn degree(&self) -> usize {
        self.cells.iter().map(Quadratic::degree).max().unwrap_or(0)
    }

    /// Largest jump between one-sided limits at interior breakpoints.
    pub fn max_jump(&self) -> (f64, f64) {
        let pts = self.mesh.points();
        let mut worst = (self.mesh.a(), 0.0);
        for k in 1..self.cells.len() {
            let h = pts[k] - pts[k - 1];
            let jump = (self.cells[k - 1].eval(h) - self.cells[k].eval(0.0)).abs();
            if jump > worst.1 {
                worst = (pts[k], jump);
            }
        }
        worst
    }

    #[inline]
    pub fn eval_in_cell(&self, k: usize, x: f64) -> f64 {
        self.cells[k].eval(x - self.mesh.points()[k])
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.eval_in_cell(self.mesh.locate(x), x)
    }

    pub fn eval_left(&self, x: f64) -> f64 {
        let pts = self.mesh.points();
        let k = pts.partition_point(|&p| p < x).saturating_sub(1);
        self.eval_in_cell(k.min(self.cells.len() - 1), x)
    }

    pub fn eval_right(&self, x: f64) -> f64 {
        self.eval(x)
    }

    /// Average of one-sided limits (one-sided at the domain ends).
    pub fn eval_mean(&self, x: f64) -> f64 {
        0.5 * (self.eval_left(x) + self.eval_right(x))
    }

    /// Re-expresses the field on `target`, which must contain all of its breakpoints.
    pub fn refined(&self, target: &Mesh1D) -> Result<Self> {
        self.mesh.same_domain(target)?;
        let pts = self.mesh.points();
        let mut k = 0;
        let cells = target
            .cells()
            .map(|(l, r)| {
                let m = 0.5 * (l + r);
                while k + 1 < self.cells.len() && pts[k + 1] <= m {
                    k += 1;
                }
                self.cells[k].shifted(l - pts[k])
            })
            .collect();
        Ok(Self {
            mesh: target.clone(),
            cells,
            continuity: self.continuity,
        })
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Quadratic, &Quadratic) -> Quadratic) -> Result<Self> {
        let mesh = merge_meshes(&self.mesh, &other.mesh)?;
        let a = self.refined(&mesh)?;
        let b = other.refined(&mesh)?;
        let cells = a.cells.iter().zip(&b.cells).map(|(p, q)| f(p, q)).collect();
        Self::new(mesh, cells)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |p, q| p.add(q))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |p, q| p.add(&q.scaled(-1.0)))
    }

    /// `alpha * self + beta * other`.
    pub fn combine(&self, alpha: f64, other: &Self, beta: f64) -> Result<Self> {
        self.zip_with(other, |p, q| p.scaled(alpha).add(&q.scaled(beta)))
    }

    /// Cell-wise product; fails where the product would exceed degree two.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mesh = merge_meshes(&self.mesh, &other.mesh)?;
        let a = self.refined(&mesh)?;
        let b = other.refined(&mesh)?;
        let cells = a
            .cells
            .iter()
            .zip(&b.cells)
            .enumerate()
            .map(|(cell, (p, q))| {
                p.mul(q).ok_or(Error::DegreeTooHigh {
                    cell,
                    degree: p.degree() + q.degree(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(mesh, cells)
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            mesh: self.mesh.clone(),
            cells: self.cells.iter().map(|q| q.scaled(s)).collect(),
            continuity: self.continuity,
        }
    }

    pub fn add_constant(&self, c: f64) -> Self {
        Self {
            mesh: self.mesh.clone(),
            cells: self.cells.iter().map(|q| q.add(&Quadratic::constant(c))).collect(),
            continuity: self.continuity,
        }
    }

    /// Cell-wise derivative; continuity of the result is detected.
    pub fn derivative(&self) -> Self {
        let cells = self.cells.iter().map(Quadratic::derivative).collect();
        Self::new(self.mesh.clone(), cells).expect("same cell count")
    }

    pub fn cell_range(&self, k: usize) -> (f64, f64) {
        let (l, r) = self.mesh.cell(k);
        self.cells[k].range_on(r - l)
    }

    pub fn range(&self) -> (f64, f64) {
        (0..self.cells.len()).fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), k| {
            let (a, b) = self.cell_range(k);
            (lo.min(a), hi.max(b))
        })
    }

    /// First cell (as an interval) where the field leaves `[lo - tol, hi + tol]`.
    pub fn find_out_of_range(&self, lo: f64, hi: f64, tol: f64) -> Option<(f64, f64)> {
        (0..self.cells.len()).find_map(|k| {
            let (a, b) = self.cell_range(k);
            (a < lo - tol || b > hi + tol).then(|| self.mesh.cell(k))
        })
    }

    /// Same field, set to zero outside `set`.
    pub fn restrict(&self, set: &IntervalSet) -> Self {
        let mesh = self.mesh.refined_with(&set.endpoints().collect::<Vec<_>>());
        let fine = self.refined(&mesh).expect("refinement of own mesh");
        let cells = mesh
            .cells()
            .zip(fine.cells)
            .map(|((l, r), q)| {
                if set.contains(0.5 * (l + r)) {
                    q
                } else {
                    Quadratic::ZERO
                }
            })
            .collect();
        Self::new(mesh, cells).expect("same cell count")
    }

    /// Pointwise `min(max(self, lo), hi)`; infinite bounds are allowed.
    pub fn clamp(&self, lo: f64, hi: f64) -> Self {
        let pts = self.mesh.points();
        let mut new_pts = vec![pts[0]];
        let mut new_cells = Vec::with_capacity(self.cells.len());
        for (k, q) in self.cells.iter().enumerate() {
            let (l, r) = (pts[k], pts[k + 1]);
            let h = r - l;
            let mut cuts: Vec<f64> = Vec::new();
            for level in [lo, hi] {
                if level.is_finite() {
                    cuts.extend(q.roots_in(h, level));
                }
            }
            cuts.sort_by(f64::total_cmp);
            cuts.dedup();
            let mut t0 = 0.0;
            for t1 in cuts.into_iter().chain(std::iter::once(h)) {
                if t1 <= t0 {
                    continue;
                }
                let mid = q.eval(0.5 * (t0 + t1));
                let piece = if mid < lo {
                    Quadratic::constant(lo)
                } else if mid > hi {
                    Quadratic::constant(hi)
                } else {
                    q.shifted(t0)
                };
                new_cells.push(piece);
                new_pts.push(if t1 == h { r } else { l + t1 });
                t0 = t1;
            }
        }
        // guard against two cuts collapsing onto the same floating-point abscissa
        let mut pts_out = vec![new_pts[0]];
        let mut cells_out = Vec::with_capacity(new_cells.len());
        for (i, c) in new_cells.into_iter().enumerate() {
            let x = new_pts[i + 1];
            if x > *pts_out.last().unwrap() {
                pts_out.push(x);
                cells_out.push(c);
            }
        }
        let mesh = Mesh1D::new(pts_out).expect("strictly increasing cuts");
        Self::new(mesh, cells_out).expect("same cell count")
    }

    pub fn positive_part(&self) -> Self {
        self.clamp(0.0, f64::INFINITY)
    }

    pub fn negative_part(&self) -> Self {
        self.scaled(-1.0).positive_part()
    }
}

/// Continuous piecewise-linear nodal interpolant of `src` at `nodes`.
///
/// At breakpoints where `src` jumps, the mean of the one-sided limits is used.
pub fn interpolate_nodal(src: &PiecewiseField, nodes: &[f64]) -> Result<PiecewiseField> {
    let (a, b) = src.domain();
    if let Some(&x) = nodes.iter().find(|&&x| x < a || x > b) {
        return Err(Error::OutsideDomain { x, a, b });
    }
    if nodes.first() != Some(&a) || nodes.last() != Some(&b) {
        return Err(Error::InvalidParameter(
            "interpolation nodes must include both endpoints".into(),
        ));
    }
    if src.is_continuous() && src.degree() <= 1 && src.mesh().points() == nodes {
        // already in the target space; avoids re-deriving slopes from rounded values
        return Ok(src.clone());
    }
    let values: Vec<f64> = nodes.iter().map(|&x| src.eval_mean(x)).collect();
    PiecewiseField::piecewise_linear(nodes, &values)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> Mesh1D {
        Mesh1D::new(vec![0.0, 1.0]).unwrap()
    }

    #[test]
    fn continuity_detection() {
        let m = Mesh1D::new(vec![0.0, 0.5, 1.0]).unwrap();
        let c0 = PiecewiseField::new(m.clone(), vec![Quadratic::linear(0.0, 1.0), Quadratic::constant(0.5)]).unwrap();
        assert!(c0.is_continuous());
        let broken = PiecewiseField::new(m.clone(), vec![Quadratic::constant(0.0), Quadratic::constant(1.0)]).unwrap();
        assert!(!broken.is_continuous());
        assert!(PiecewiseField::new_continuous(m, broken.cells().to_vec()).is_err());
    }

    #[test]
    fn degree_cap_enforced() {
        let err = PiecewiseField::from_coeffs(unit(), &[vec![0.0, 0.0, 0.0, 1.0]]).unwrap_err();
        assert_eq!(err, Error::DegreeTooHigh { cell: 0, degree: 3 });
        // trailing zeros are fine
        assert!(PiecewiseField::from_coeffs(unit(), &[vec![1.0, 0.0, 2.0, 0.0]]).is_ok());
    }

    #[test]
    fn interpolation_examples() {
        let sq = PiecewiseField::global_polynomial(unit(), [0.0, 0.0, 1.0]);
        let line = interpolate_nodal(&sq, &[0.0, 1.0]).unwrap();
        for x in [0.0, 0.3, 1.0] {
            assert!((line.eval(x) - x).abs() < 1e-15);
        }
        let nodes = [0.0, 0.25, 0.6, 1.0];
        let p1 = PiecewiseField::piecewise_linear(&nodes, &[0.0, 1.0, -2.0, 0.5]).unwrap();
        let again = interpolate_nodal(&p1, &nodes).unwrap();
        assert_eq!(again, p1);
        assert!(interpolate_nodal(&sq, &[0.0, 1.5]).is_err());
    }

    #[test]
    fn clamp_splits_cells_at_crossings() {
        let p = PiecewiseField::global_polynomial(unit(), [-1.0, 4.0, 0.0]);
        let c = p.clamp(0.0, 2.0);
        assert_eq!(c.mesh().points(), &[0.0, 0.25, 0.75, 1.0]);
        assert_eq!(c.eval(0.1), 0.0);
        assert!((c.eval(0.5) - 1.0).abs() < 1e-15);
        assert_eq!(c.eval(0.9), 2.0);
        assert!(c.is_continuous());
    }

    #[test]
    fn restrict_zeroes_outside() {
        let p = PiecewiseField::constant(unit(), 3.0);
        let r = p.restrict(&IntervalSet::interval(0.2, 0.4));
        assert_eq!(r.eval(0.1), 0.0);
        assert_eq!(r.eval(0.3), 3.0);
        assert_eq!(r.eval(0.5), 0.0);
    }

    #[test]
    fn linear_combination_on_merged_mesh() {
        let a = PiecewiseField::piecewise_linear(&[0.0, 0.3, 1.0], &[0.0, 0.3, 1.0]).unwrap();
        let b = PiecewiseField::piecewise_linear(&[0.0, 0.7, 1.0], &[1.0, 1.0, 1.0]).unwrap();
        let c = a.combine(2.0, &b, -1.0).unwrap();
        assert_eq!(c.mesh().points(), &[0.0, 0.3, 0.7, 1.0]);
        for x in [0.1, 0.5, 0.9] {
            assert!((c.eval(x) - (2.0 * x - 1.0)).abs() < 1e-14);
        }
    }

    #[test]
    fn product_degree_checked() {
        let x = PiecewiseField::global_polynomial(Mesh1D::new(vec![0.0, 0.5, 1.0]).unwrap(), [0.0, 1.0, 0.0]);
        let sq = x.mul(&x.add_constant(1.0)).unwrap();
        assert!((sq.eval(0.7) - 0.7 * 1.7).abs() < 1e-15);
        assert!(matches!(sq.mul(&x), Err(Error::DegreeTooHigh { .. })));
    }
}

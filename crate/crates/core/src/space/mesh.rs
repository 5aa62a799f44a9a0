use crate::error::{Error, Result};

/// Partition `a = x_0 < x_1 < ... < x_n = b` of a bounded interval.
#[derive(Debug, Clone, PartialEq)]
pub struct Mesh1D {
    points: Vec<f64>,
}

impl Mesh1D {
    pub fn new(points: Vec<f64>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidMesh(format!(
                "need at least two breakpoints, got {}",
                points.len()
            )));
        }
        if points.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidMesh("non-finite breakpoint".into()));
        }
        if let Some(w) = points.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::InvalidMesh(format!(
                "breakpoints not strictly increasing near {} and {}",
                w[0], w[1]
            )));
        }
        Ok(Self { points })
    }

    pub fn uniform(a: f64, b: f64, cells: usize) -> Result<Self> {
        if cells == 0 {
            return Err(Error::InvalidMesh("zero cells".into()));
        }
        let h = (b - a) / cells as f64;
        let mut points: Vec<f64> = (0..cells).map(|i| a + i as f64 * h).collect();
        points.push(b);
        Self::new(points)
    }

    pub fn a(&self) -> f64 {
        self.points[0]
    }

    pub fn b(&self) -> f64 {
        self.points[self.points.len() - 1]
    }

    pub fn len(&self) -> f64 {
        self.b() - self.a()
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn cell_count(&self) -> usize {
        self.points.len() - 1
    }

    pub fn cell(&self, k: usize) -> (f64, f64) {
        (self.points[k], self.points[k + 1])
    }

    pub fn cells(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.points.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn max_cell_width(&self) -> f64 {
        self.cells().map(|(l, r)| r - l).fold(0.0, f64::max)
    }

    /// Index of the cell containing `x`; breakpoints belong to the cell on their right
    /// except for `b`, which belongs to the last cell.
    pub fn locate(&self, x: f64) -> usize {
        let k = self.points.partition_point(|&p| p <= x);
        k.saturating_sub(1).min(self.cell_count() - 1)
    }

    pub fn same_domain(&self, other: &Mesh1D) -> Result<()> {
        if self.a() != other.a() || self.b() != other.b() {
            return Err(Error::DomainMismatch {
                a1: self.a(),
                b1: self.b(),
                a2: other.a(),
                b2: other.b(),
            });
        }
        Ok(())
    }

    /// Inserts the interior points of `extra` (points outside `(a, b)` are ignored).
    pub fn refined_with(&self, extra: &[f64]) -> Mesh1D {
        let (a, b) = (self.a(), self.b());
        let mut pts = self.points.clone();
        pts.extend(extra.iter().copied().filter(|&x| x > a && x < b));
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        Mesh1D { points: pts }
    }

    /// Splits every cell into `k` equal parts.
    pub fn subdivided(&self, k: usize) -> Mesh1D {
        let k = k.max(1);
        let mut pts = Vec::with_capacity(self.cell_count() * k + 1);
        for (l, r) in self.cells() {
            let h = (r - l) / k as f64;
            pts.extend((0..k).map(|i| l + i as f64 * h));
        }
        pts.push(self.b());
        pts.dedup();
        Mesh1D { points: pts }
    }
}

/// Sorted union of the breakpoints of two meshes on the same domain.
pub fn merge_meshes(m1: &Mesh1D, m2: &Mesh1D) -> Result<Mesh1D> {
    m1.same_domain(m2)?;
    Ok(m1.refined_with(m2.points()))
}

/// Polynomial of degree at most two in a local coordinate `t = x - origin`,
/// where `origin` is the left end of the owning cell.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quadratic(pub [f64; 3]);

impl Quadratic {
    pub const ZERO: Quadratic = Quadratic([0.0; 3]);

    pub fn constant(c: f64) -> Self {
        Quadratic([c, 0.0, 0.0])
    }

    pub fn linear(c0: f64, c1: f64) -> Self {
        Quadratic([c0, c1, 0.0])
    }

    pub fn coeffs(&self) -> [f64; 3] {
        self.0
    }

    #[inline]
    pub fn eval(&self, t: f64) -> f64 {
        let [c0, c1, c2] = self.0;
        c0 + t * (c1 + t * c2)
    }

    #[inline]
    pub fn eval_derivative(&self, t: f64) -> f64 {
        self.0[1] + 2.0 * self.0[2] * t
    }

    pub fn derivative(&self) -> Quadratic {
        Quadratic([self.0[1], 2.0 * self.0[2], 0.0])
    }

    pub fn degree(&self) -> usize {
        match self.0 {
            [_, _, c2] if c2 != 0.0 => 2,
            [_, c1, _] if c1 != 0.0 => 1,
            _ => 0,
        }
    }

    /// Same polynomial re-expanded about `origin + d`.
    pub fn shifted(&self, d: f64) -> Quadratic {
        let [c0, c1, c2] = self.0;
        Quadratic([c0 + d * (c1 + d * c2), c1 + 2.0 * c2 * d, c2])
    }

    pub fn scaled(&self, s: f64) -> Quadratic {
        Quadratic(self.0.map(|c| c * s))
    }

    pub fn add(&self, other: &Quadratic) -> Quadratic {
        Quadratic([self.0[0] + other.0[0], self.0[1] + other.0[1], self.0[2] + other.0[2]])
    }

    /// Product, or `None` if it has degree above two.
    pub fn mul(&self, other: &Quadratic) -> Option<Quadratic> {
        if self.degree() + other.degree() > 2 {
            return None;
        }
        let ([a0, a1, a2], [b0, b1, b2]) = (self.0, other.0);
        Some(Quadratic([a0 * b0, a0 * b1 + a1 * b0, a0 * b2 + a1 * b1 + a2 * b0]))
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.0.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// `(min, max)` of the polynomial over `t ∈ [0, h]`; exact up to rounding.
    pub fn range_on(&self, h: f64) -> (f64, f64) {
        let mut lo = self.eval(0.0).min(self.eval(h));
        let mut hi = self.eval(0.0).max(self.eval(h));
        let [_, c1, c2] = self.0;
        if c2 != 0.0 {
            let tv = -c1 / (2.0 * c2);
            if tv > 0.0 && tv < h {
                let v = self.eval(tv);
                lo = lo.min(v);
                hi = hi.max(v);
            }
        }
        (lo, hi)
    }

    /// Sorted solutions of `p(t) = level` strictly inside `(0, h)`.
    pub fn roots_in(&self, h: f64, level: f64) -> Vec<f64> {
        let [c0, b, a] = self.0;
        let c = c0 - level;
        let mut roots = Vec::with_capacity(2);
        if a == 0.0 {
            if b != 0.0 {
                roots.push(-c / b);
            }
        } else {
            let disc = b * b - 4.0 * a * c;
            if disc >= 0.0 {
                let sq = disc.sqrt();
                let q = -0.5 * (b + if b >= 0.0 { sq } else { -sq });
                if q != 0.0 {
                    roots.push(q / a);
                    roots.push(c / q);
                } else {
                    roots.push(0.0);
                }
            }
        }
        // one Newton polish step; keeps near-tangential roots stable
        for t in roots.iter_mut() {
            let d = self.eval_derivative(*t);
            if d != 0.0 {
                let step = (self.eval(*t) - level) / d;
                if step.abs() < 1e-6 * h.max(f64::MIN_POSITIVE) {
                    *t -= step;
                }
            }
        }
        let eps = 1e-14 * h;
        roots.retain(|&t| t > eps && t < h - eps);
        roots.sort_by(f64::total_cmp);
        roots.dedup_by(|x, y| (*x - *y).abs() <= eps);
        roots
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_preserves_values() {
        let p = Quadratic([1.5, -2.0, 3.25]);
        let q = p.shifted(0.4);
        for t in [0.0, 0.1, 0.7, 1.3] {
            assert!((q.eval(t) - p.eval(t + 0.4)).abs() < 1e-14);
        }
    }

    #[test]
    fn roots_of_linear_and_quadratic() {
        let p = Quadratic([-0.5, 1.0, 0.0]);
        assert_eq!(p.roots_in(1.0, 0.0), vec![0.5]);
        // 4t(1-t) - 1/2
        let q = Quadratic([-0.5, 4.0, -4.0]);
        let r = q.roots_in(1.0, 0.0);
        let s = (0.5f64).sqrt() / 2.0;
        assert_eq!(r.len(), 2);
        assert!((r[0] - (0.5 - s)).abs() < 1e-15);
        assert!((r[1] - (0.5 + s)).abs() < 1e-15);
    }

    #[test]
    fn endpoint_roots_are_dropped() {
        let p = Quadratic([0.0, 1.0, 0.0]);
        assert!(p.roots_in(1.0, 0.0).is_empty());
        assert!(p.roots_in(1.0, 1.0).is_empty());
    }

    #[test]
    fn range_includes_vertex() {
        let q = Quadratic([0.0, 4.0, -4.0]);
        let (lo, hi) = q.range_on(1.0);
        assert_eq!(lo, 0.0);
        assert!((hi - 1.0).abs() < 1e-15);
    }
}

/// Finite union of disjoint open intervals, kept sorted and merged.
///
/// Coincidence sets, phase sets and their differences are all represented this way.
/// Endpoints are exact: they come from breakpoints or closed-form polynomial roots.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct IntervalSet {
    parts: Vec<(f64, f64)>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn interval(l: f64, r: f64) -> Self {
        Self::from_intervals(vec![(l, r)])
    }

    /// Normalizes: drops empty pieces, sorts, merges overlapping or touching pieces.
    pub fn from_intervals(mut raw: Vec<(f64, f64)>) -> Self {
        raw.retain(|&(l, r)| r > l);
        raw.sort_by(|x, y| x.0.total_cmp(&y.0));
        let mut parts: Vec<(f64, f64)> = Vec::with_capacity(raw.len());
        for (l, r) in raw {
            match parts.last_mut() {
                Some(last) if l <= last.1 => last.1 = last.1.max(r),
                _ => parts.push((l, r)),
            }
        }
        Self { parts }
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn measure(&self) -> f64 {
        self.parts.iter().map(|(l, r)| r - l).sum()
    }

    pub fn contains(&self, x: f64) -> bool {
        let k = self.parts.partition_point(|&(l, _)| l < x);
        k > 0 && x < self.parts[k - 1].1
    }

    pub fn endpoints(&self) -> impl Iterator<Item = f64> + '_ {
        self.parts.iter().flat_map(|&(l, r)| [l, r])
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        let mut all = self.parts.clone();
        all.extend_from_slice(&other.parts);
        Self::from_intervals(all)
    }

    pub fn intersect(&self, other: &IntervalSet) -> IntervalSet {
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < self.parts.len() && j < other.parts.len() {
            let (a0, a1) = self.parts[i];
            let (b0, b1) = other.parts[j];
            let l = a0.max(b0);
            let r = a1.min(b1);
            if r > l {
                out.push((l, r));
            }
            if a1 < b1 {
                i += 1;
            } else {
                j += 1;
            }
        }
        Self::from_intervals(out)
    }

    /// Complement relative to `(a, b)`.
    pub fn complement(&self, a: f64, b: f64) -> IntervalSet {
        let mut out = Vec::with_capacity(self.parts.len() + 1);
        let mut cursor = a;
        for &(l, r) in &self.parts {
            if l > cursor {
                out.push((cursor, l.min(b)));
            }
            cursor = cursor.max(r);
        }
        if cursor < b {
            out.push((cursor, b));
        }
        Self::from_intervals(out)
    }

    pub fn difference(&self, other: &IntervalSet) -> IntervalSet {
        let Some(&(a, _)) = self.parts.first() else {
            return IntervalSet::empty();
        };
        let b = self.parts[self.parts.len() - 1].1;
        self.intersect(&other.complement(a, b))
    }

    /// `self ⊂ other` up to a set of measure at most `tol`.
    pub fn is_subset_of(&self, other: &IntervalSet, tol: f64) -> bool {
        self.difference(other).measure() <= tol
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_merges_touching() {
        let s = IntervalSet::from_intervals(vec![(0.5, 0.7), (0.0, 0.2), (0.2, 0.3), (0.6, 0.9)]);
        assert_eq!(s.intervals(), &[(0.0, 0.3), (0.5, 0.9)]);
        assert!((s.measure() - 0.7).abs() < 1e-15);
    }

    #[test]
    fn set_algebra() {
        let a = IntervalSet::from_intervals(vec![(0.0, 0.4), (0.6, 1.0)]);
        let b = IntervalSet::interval(0.3, 0.7);
        assert_eq!(a.intersect(&b).intervals(), &[(0.3, 0.4), (0.6, 0.7)]);
        assert_eq!(a.difference(&b).intervals(), &[(0.0, 0.3), (0.7, 1.0)]);
        assert_eq!(a.union(&b).intervals(), &[(0.0, 1.0)]);
        assert_eq!(a.complement(0.0, 1.0).intervals(), &[(0.4, 0.6)]);
        assert!(IntervalSet::interval(0.1, 0.2).is_subset_of(&a, 0.0));
        assert!(!b.is_subset_of(&a, 0.0));
    }

    #[test]
    fn open_membership() {
        let a = IntervalSet::interval(0.2, 0.4);
        assert!(a.contains(0.3));
        assert!(!a.contains(0.2));
        assert!(!a.contains(0.4));
        assert!(!IntervalSet::empty().contains(0.0));
    }
}

use super::field::PiecewiseField;
use super::intervals::IntervalSet;

/// Default relative tolerance for `= 0` detection.
pub const SET_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Negative,
    Positive,
    Zero,
}

/// The three sign sets of one field; they partition the domain up to finitely many points.
#[derive(Debug, Clone, PartialEq)]
pub struct SignPartition {
    pub negative: IntervalSet,
    pub positive: IntervalSet,
    pub zero: IntervalSet,
}

impl SignPartition {
    pub fn get(&self, rel: Relation) -> &IntervalSet {
        match rel {
            Relation::Negative => &self.negative,
            Relation::Positive => &self.positive,
            Relation::Zero => &self.zero,
        }
    }
}

/// Splits the domain by the sign of `p`.
///
/// A cell on which `|p| ≤ tol·scale` throughout (scale = 1 + max|coeff|) belongs to the
/// zero set as a whole. Otherwise the cell is cut at the exact roots of `p` and each
/// piece is classified by the sign at its midpoint, so an isolated zero has measure zero.
pub fn sign_partition(p: &PiecewiseField, tol: f64) -> SignPartition {
    let thresh = tol * p.scale();
    let (mut neg, mut pos, mut zero) = (Vec::new(), Vec::new(), Vec::new());
    for (k, q) in p.cells().iter().enumerate() {
        let (l, r) = p.mesh().cell(k);
        let h = r - l;
        let (lo, hi) = q.range_on(h);
        if lo.abs().max(hi.abs()) <= thresh {
            zero.push((l, r));
            continue;
        }
        let mut t0 = 0.0;
        for t1 in q.roots_in(h, 0.0).into_iter().chain(std::iter::once(h)) {
            let (x0, x1) = (l + t0, if t1 == h { r } else { l + t1 });
            let m = q.eval(0.5 * (t0 + t1));
            if m > 0.0 {
                pos.push((x0, x1));
            } else if m < 0.0 {
                neg.push((x0, x1));
            } else {
                zero.push((x0, x1));
            }
            t0 = t1;
        }
    }
    SignPartition {
        negative: IntervalSet::from_intervals(neg),
        positive: IntervalSet::from_intervals(pos),
        zero: IntervalSet::from_intervals(zero),
    }
}

pub fn sign_set(p: &PiecewiseField, rel: Relation, tol: f64) -> IntervalSet {
    let part = sign_partition(p, tol);
    match rel {
        Relation::Negative => part.negative,
        Relation::Positive => part.positive,
        Relation::Zero => part.zero,
    }
}

/// Positive and negative parts of a field with their supports; `p = pos - neg`.
#[derive(Debug, Clone, PartialEq)]
pub struct PosNegParts {
    pub positive: PiecewiseField,
    pub positive_support: IntervalSet,
    pub negative: PiecewiseField,
    pub negative_support: IntervalSet,
}

pub fn pos_neg_parts(p: &PiecewiseField) -> PosNegParts {
    let part = sign_partition(p, 0.0);
    PosNegParts {
        positive: p.restrict(&part.positive),
        negative: p.scaled(-1.0).restrict(&part.negative),
        positive_support: part.positive,
        negative_support: part.negative,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::mesh::Mesh1D;
    use crate::space::quadrature::integrate;

    fn unit() -> Mesh1D {
        Mesh1D::new(vec![0.0, 1.0]).unwrap()
    }

    #[test]
    fn single_root() {
        let p = PiecewiseField::global_polynomial(unit(), [-0.5, 1.0, 0.0]);
        assert_eq!(sign_set(&p, Relation::Negative, SET_TOL).intervals(), &[(0.0, 0.5)]);
        assert_eq!(sign_set(&p, Relation::Positive, SET_TOL).intervals(), &[(0.5, 1.0)]);
        assert!(sign_set(&p, Relation::Zero, SET_TOL).is_empty());
    }

    #[test]
    fn identically_zero() {
        let p = PiecewiseField::constant(unit(), 0.0);
        assert_eq!(sign_set(&p, Relation::Zero, SET_TOL).intervals(), &[(0.0, 1.0)]);
    }

    #[test]
    fn tangential_zero_has_no_sliver() {
        // (x - 0.3)² touches zero at one point only
        let p = PiecewiseField::global_polynomial(unit(), [0.09, -0.6, 1.0]);
        let part = sign_partition(&p, SET_TOL);
        assert!(part.zero.is_empty());
        assert!(part.negative.is_empty());
        assert!((part.positive.measure() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn pos_neg_of_quadratic() {
        let p = PiecewiseField::global_polynomial(unit(), [-0.5, 4.0, -4.0]);
        let parts = pos_neg_parts(&p);
        let s = 0.5f64.sqrt() / 2.0;
        let supp = parts.positive_support.intervals();
        assert_eq!(supp.len(), 1);
        assert!((supp[0].0 - (0.5 - s)).abs() < 1e-15 && (supp[0].1 - (0.5 + s)).abs() < 1e-15);
        let total = integrate(&parts.positive, None) - integrate(&parts.negative, None);
        assert!((total - integrate(&p, None)).abs() < 1e-15);
        let nonneg = PiecewiseField::constant(unit(), 2.0);
        assert!(pos_neg_parts(&nonneg).negative_support.is_empty());
    }
}

//! Points, colors, bounding boxes, and the distances everything else consumes.
//!
//! A [`ColoredPointSet`] is the input universe: `n` points in `R^d`, each
//! carrying a color in `1..=k`, with every color class non-empty. The complete
//! k-partite graph on such a set joins exactly the differently-colored point
//! pairs; every construction in this crate is a subgraph of it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Color class id, dense in `1..=k`.
pub type Color = u32;

/// Euclidean distance between two coordinate slices of equal dimension.
pub fn point_distance<F: Scalar>(a: &[F], b: &[F]) -> F {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = F::zero();
    for (&x, &y) in a.iter().zip(b.iter()) {
        let diff = x - y;
        acc = acc + diff * diff;
    }
    acc.sqrt()
}

/// Borrowed view of one point of a [`ColoredPointSet`].
#[derive(Clone, Copy, Debug)]
pub struct PointRef<'a, F> {
    pub index: usize,
    pub color: Color,
    pub coords: &'a [F],
}

/// Smallest axes-parallel hyperrectangle containing a point set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundingBox<F> {
    pub lo: Vec<F>,
    pub hi: Vec<F>,
}

impl<F: Scalar> BoundingBox<F> {
    /// Tight box of a non-empty collection of coordinate slices.
    pub fn of_points<'a, I>(points: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a [F]>,
        F: 'a,
    {
        let mut iter = points.into_iter();
        let first = iter.next().ok_or(Error::EmptyPointSet)?;
        let mut lo = first.to_vec();
        let mut hi = first.to_vec();
        for p in iter {
            debug_assert_eq!(p.len(), lo.len());
            for i in 0..lo.len() {
                if p[i] < lo[i] {
                    lo[i] = p[i];
                }
                if p[i] > hi[i] {
                    hi[i] = p[i];
                }
            }
        }
        Ok(BoundingBox { lo, hi })
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    /// Length of a longest side; zero for a point box.
    pub fn l_max(&self) -> F {
        let mut best = F::zero();
        for i in 0..self.dim() {
            let side = self.hi[i] - self.lo[i];
            if side > best {
                best = side;
            }
        }
        best
    }

    pub fn center(&self) -> Vec<F> {
        self.lo
            .iter()
            .zip(self.hi.iter())
            .map(|(&l, &h)| (l + h) / F::two())
            .collect()
    }

    /// Half the Euclidean diagonal: the radius of the smallest ball centered
    /// at the box center that contains the whole box.
    pub fn half_diagonal(&self) -> F {
        point_distance(&self.lo, &self.hi) / F::two()
    }

    /// Euclidean distance between box centers.
    pub fn center_distance(&self, other: &Self) -> Result<F> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(self.center_distance_unchecked(other))
    }

    pub(crate) fn center_distance_unchecked(&self, other: &Self) -> F {
        point_distance(&self.center(), &other.center())
    }

    pub fn contains(&self, p: &[F]) -> bool {
        p.len() == self.dim()
            && p.iter()
                .enumerate()
                .all(|(i, &x)| self.lo[i] <= x && x <= self.hi[i])
    }
}

/// `n` points in `R^d` partitioned into `k` non-empty color classes.
///
/// Immutable after construction; construction validates finiteness, coordinate
/// distinctness, and that colors are dense in `1..=k`.
#[derive(Clone, Debug)]
pub struct ColoredPointSet<F> {
    d: usize,
    k: usize,
    coords: Vec<F>,
    colors: Vec<Color>,
}

impl<F: Scalar> ColoredPointSet<F> {
    /// Build from `(color, coords)` rows. `k` is the maximum color seen.
    pub fn new(d: usize, points: Vec<(Color, Vec<F>)>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        if d == 0 {
            return Err(Error::InvalidParameter("dimension must be >= 1".into()));
        }
        let n = points.len();
        let mut coords = Vec::with_capacity(n * d);
        let mut colors = Vec::with_capacity(n);
        let mut k = 0u32;
        for (index, (color, cs)) in points.iter().enumerate() {
            if cs.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: cs.len(),
                });
            }
            if cs.iter().any(|c| !c.is_finite()) {
                return Err(Error::NonFiniteCoordinate { index });
            }
            if *color == 0 {
                return Err(Error::InvalidColor {
                    index,
                    color: *color,
                });
            }
            k = k.max(*color);
            colors.push(*color);
            coords.extend_from_slice(cs);
        }
        let set = ColoredPointSet {
            d,
            k: k as usize,
            coords,
            colors,
        };
        set.check_classes_nonempty()?;
        set.check_distinct()?;
        Ok(set)
    }

    fn check_classes_nonempty(&self) -> Result<()> {
        let mut seen = vec![false; self.k + 1];
        for &c in &self.colors {
            seen[c as usize] = true;
        }
        for c in 1..=self.k {
            if !seen[c] {
                return Err(Error::EmptyColorClass { color: c as Color });
            }
        }
        Ok(())
    }

    fn check_distinct(&self) -> Result<()> {
        // Hash on bit patterns, normalizing -0.0 so value-equal vectors collide.
        use std::collections::HashMap;
        let mut seen: HashMap<Vec<u64>, usize> = HashMap::with_capacity(self.n());
        for i in 0..self.n() {
            let key: Vec<u64> = self.coords(i)
                .iter()
                .map(|&c| {
                    let c = if c == F::zero() { F::zero() } else { c };
                    c.to_f64_lossy().to_bits()
                })
                .collect();
            if let Some(&first) = seen.get(&key) {
                return Err(Error::DuplicatePoint { first, second: i });
            }
            seen.insert(key, i);
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.colors.len()
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn coords(&self, i: usize) -> &[F] {
        &self.coords[i * self.d..(i + 1) * self.d]
    }

    pub fn color(&self, i: usize) -> Color {
        self.colors[i]
    }

    pub fn point(&self, i: usize) -> PointRef<'_, F> {
        PointRef {
            index: i,
            color: self.colors[i],
            coords: self.coords(i),
        }
    }

    pub fn points(&self) -> impl Iterator<Item = PointRef<'_, F>> {
        (0..self.n()).map(move |i| self.point(i))
    }

    /// Euclidean distance between points `i` and `j`.
    pub fn distance(&self, i: usize, j: usize) -> F {
        point_distance(self.coords(i), self.coords(j))
    }

    /// Tight bounding box of a subset given by indices.
    pub fn bounding_box(&self, indices: &[usize]) -> Result<BoundingBox<F>> {
        BoundingBox::of_points(indices.iter().map(|&i| self.coords(i)))
    }

    /// Number of points in each color class, indexed by `color - 1`.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.k];
        for &c in &self.colors {
            sizes[c as usize - 1] += 1;
        }
        sizes
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set2(points: &[(Color, [f64; 2])]) -> ColoredPointSet<f64> {
        ColoredPointSet::new(2, points.iter().map(|(c, p)| (*c, p.to_vec())).collect()).unwrap()
    }

    #[test]
    fn bounding_box_single_point_is_degenerate() {
        let b = BoundingBox::of_points([[0.0, 0.0].as_slice()]).unwrap();
        assert_eq!(b.lo, vec![0.0, 0.0]);
        assert_eq!(b.hi, vec![0.0, 0.0]);
        assert_eq!(b.l_max(), 0.0);
    }

    #[test]
    fn bounding_box_is_coordinatewise_min_max() {
        let pts = [[0.0, 0.0], [1.0, 2.0], [-1.0, 1.0]];
        let b = BoundingBox::of_points(pts.iter().map(|p| p.as_slice())).unwrap();
        assert_eq!(b.lo, vec![-1.0, 0.0]);
        assert_eq!(b.hi, vec![1.0, 2.0]);
        assert_eq!(b.l_max(), 2.0);
    }

    #[test]
    fn bounding_box_preserves_near_degenerate_extent() {
        let delta = 1e-9;
        let pts = [[3.0, 3.0], [3.0, 3.0 + delta]];
        let b = BoundingBox::of_points(pts.iter().map(|p| p.as_slice())).unwrap();
        assert_eq!(b.lo, vec![3.0, 3.0]);
        assert_eq!(b.hi, vec![3.0, 3.0 + delta]);
    }

    #[test]
    fn bounding_box_rejects_empty_input() {
        let r = BoundingBox::<f64>::of_points(std::iter::empty::<&[f64]>());
        assert!(matches!(r, Err(Error::EmptyPointSet)));
    }

    #[test]
    fn l_max_picks_longest_side() {
        let b = BoundingBox {
            lo: vec![0.0, 0.0, 0.0],
            hi: vec![1.0, 5.0, 2.0],
        };
        assert_eq!(b.l_max(), 5.0);
    }

    #[test]
    fn center_distance_identical_boxes_is_zero() {
        let b = BoundingBox {
            lo: vec![0.0, 0.0],
            hi: vec![1.0, 1.0],
        };
        assert_eq!(b.center_distance(&b).unwrap(), 0.0);
    }

    #[test]
    fn center_distance_unit_boxes() {
        let a = BoundingBox {
            lo: vec![0.0, 0.0],
            hi: vec![1.0, 1.0],
        };
        let b = BoundingBox {
            lo: vec![9.0, 9.0],
            hi: vec![10.0, 10.0],
        };
        let expect = 9.0 * 2.0f64.sqrt();
        assert!((a.center_distance(&b).unwrap() - expect).abs() < 1e-12);
    }

    #[test]
    fn center_distance_point_boxes_matches_point_distance() {
        let a = BoundingBox {
            lo: vec![0.0, 0.0],
            hi: vec![0.0, 0.0],
        };
        let b = BoundingBox {
            lo: vec![3.0, 4.0],
            hi: vec![3.0, 4.0],
        };
        assert_eq!(a.center_distance(&b).unwrap(), 5.0);
    }

    #[test]
    fn center_distance_rejects_dimension_mismatch() {
        let a = BoundingBox {
            lo: vec![0.0],
            hi: vec![1.0],
        };
        let b = BoundingBox {
            lo: vec![0.0, 0.0],
            hi: vec![1.0, 1.0],
        };
        assert!(matches!(
            a.center_distance(&b),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn point_set_validates_colors_and_duplicates() {
        let dup = ColoredPointSet::new(
            2,
            vec![(1, vec![0.0, 0.0]), (2, vec![0.0, 0.0])],
        );
        assert!(matches!(dup, Err(Error::DuplicatePoint { first: 0, second: 1 })));

        let gap = ColoredPointSet::new(
            2,
            vec![(1, vec![0.0, 0.0]), (3, vec![1.0, 0.0])],
        );
        assert!(matches!(gap, Err(Error::EmptyColorClass { color: 2 })));

        let nan = ColoredPointSet::new(2, vec![(1, vec![f64::NAN, 0.0])]);
        assert!(matches!(nan, Err(Error::NonFiniteCoordinate { index: 0 })));

        let zero = ColoredPointSet::new(2, vec![(0, vec![0.0, 0.0])]);
        assert!(matches!(zero, Err(Error::InvalidColor { .. })));
    }

    #[test]
    fn point_set_accessors() {
        let s = set2(&[(1, [0.0, 0.0]), (2, [3.0, 4.0]), (1, [1.0, 1.0])]);
        assert_eq!(s.n(), 3);
        assert_eq!(s.d(), 2);
        assert_eq!(s.k(), 2);
        assert_eq!(s.color(1), 2);
        assert_eq!(s.distance(0, 1), 5.0);
        assert_eq!(s.class_sizes(), vec![2, 1]);
    }

    #[test]
    fn f32_points_work_through_the_same_api() {
        let s = ColoredPointSet::<f32>::new(
            1,
            vec![(1, vec![0.0f32]), (2, vec![1.0f32])],
        )
        .unwrap();
        assert_eq!(s.distance(0, 1), 1.0f32);
    }
}

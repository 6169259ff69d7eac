//! Planar convex hulls of complex points via the monotone chain, with a
//! distance tolerance that suppresses near-duplicate and near-collinear
//! vertices.

use num_complex::Complex64;

/// Convex polygon in the complex plane.
///
/// Vertices are in counter-clockwise order. Degenerate hulls are legal:
/// one vertex for a point, two for a segment.
#[derive(Clone, Debug, PartialEq)]
pub struct HullPolygon {
    vertices: Vec<Complex64>,
}

fn cross(a: Complex64, b: Complex64, c: Complex64) -> f64 {
    (b.re - a.re) * (c.im - a.im) - (b.im - a.im) * (c.re - a.re)
}

/// Convex hull of `points`.
///
/// Points within `tol` of each other are collapsed first; a point within
/// `tol` of the line through its hull neighbours is not emitted as a
/// vertex.
pub fn convex_hull(points: &[Complex64], tol: f64) -> HullPolygon {
    let mut sorted: Vec<Complex64> = points.to_vec();
    sorted.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));

    let mut distinct: Vec<Complex64> = Vec::new();
    for p in sorted {
        if !distinct.iter().any(|q| (p - q).norm() <= tol) {
            distinct.push(p);
        }
    }
    if distinct.len() <= 2 {
        return HullPolygon { vertices: distinct };
    }

    // Pop the middle point whenever it sits within tol of the chord, so
    // flat chains collapse to their endpoints.
    let keeps_turning = |chain: &[Complex64], p: Complex64| {
        let a = chain[chain.len() - 2];
        let b = chain[chain.len() - 1];
        cross(a, b, p) > tol * (p - a).norm()
    };

    let mut lower: Vec<Complex64> = Vec::new();
    for &p in &distinct {
        while lower.len() >= 2 && !keeps_turning(&lower, p) {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Complex64> = Vec::new();
    for &p in distinct.iter().rev() {
        while upper.len() >= 2 && !keeps_turning(&upper, p) {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    HullPolygon { vertices: lower }
}

impl HullPolygon {
    pub fn vertices(&self) -> &[Complex64] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Directed edges `(v_j, v_{j+1})` with wraparound. A two-vertex hull
    /// yields the segment in both directions; a single vertex has none.
    pub fn edges(&self) -> Vec<(Complex64, Complex64)> {
        let k = self.vertices.len();
        if k < 2 {
            return Vec::new();
        }
        (0..k)
            .map(|j| (self.vertices[j], self.vertices[(j + 1) % k]))
            .collect()
    }

    /// Twice the signed area (shoelace); positive for counter-clockwise
    /// polygons, zero for degenerate hulls.
    pub fn signed_area_doubled(&self) -> f64 {
        let k = self.vertices.len();
        if k < 3 {
            return 0.0;
        }
        (0..k)
            .map(|j| {
                let a = self.vertices[j];
                let b = self.vertices[(j + 1) % k];
                a.re * b.im - b.re * a.im
            })
            .sum()
    }

    /// Distance from `p` to the hull boundary (vertex for k = 1).
    pub fn boundary_distance(&self, p: Complex64) -> f64 {
        match self.vertices.len() {
            0 => f64::INFINITY,
            1 => (p - self.vertices[0]).norm(),
            _ => self
                .edges()
                .iter()
                .map(|&(a, b)| segment_distance(p, a, b))
                .fold(f64::INFINITY, f64::min),
        }
    }

    /// Distance from `p` to the hull as a region: zero inside or on it.
    pub fn region_distance(&self, p: Complex64) -> f64 {
        if self.vertices.len() >= 3 && self.edges().iter().all(|&(a, b)| cross(a, b, p) >= 0.0) {
            return 0.0;
        }
        self.boundary_distance(p)
    }

    pub fn contains(&self, p: Complex64, tol: f64) -> bool {
        self.region_distance(p) <= tol
    }
}

fn segment_distance(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len_sq = ab.norm_sqr();
    if len_sq == 0.0 {
        return (p - a).norm();
    }
    let t = (((p - a).re * ab.re + (p - a).im * ab.im) / len_sq).clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn interior_point_dropped() {
        let hull = convex_hull(
            &[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0), c(0.5, 0.25)],
            1e-9,
        );
        assert_eq!(hull.len(), 3);
        assert!(hull.signed_area_doubled() > 0.0, "hull must be CCW");
        assert!(!hull.vertices().contains(&c(0.5, 0.25)));
    }

    #[test]
    fn coincident_points_collapse_to_one_vertex() {
        let p = c(2.0, -1.0);
        let hull = convex_hull(&[p, p, p + c(1e-12, 0.0)], 1e-9);
        assert_eq!(hull.len(), 1);
        assert!(hull.edges().is_empty());
    }

    #[test]
    fn collinear_points_become_a_segment() {
        let hull = convex_hull(&[c(0.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)], 1e-9);
        assert_eq!(hull.vertices(), &[c(0.0, 0.0), c(2.0, 0.0)]);
        assert_eq!(hull.edges().len(), 2);
    }

    #[test]
    fn region_distance_zero_inside() {
        let hull = convex_hull(&[c(0.0, 0.0), c(2.0, 0.0), c(0.0, 2.0)], 1e-9);
        assert_eq!(hull.region_distance(c(0.5, 0.5)), 0.0);
        assert!(hull.region_distance(c(3.0, 0.0)) > 0.9);
        assert!(hull.boundary_distance(c(0.5, 0.5)) > 0.0);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn points_strategy() -> impl Strategy<Value = Vec<Complex64>> {
            prop::collection::vec((-8i32..9, -8i32..9), 1..14)
                .prop_map(|v| v.into_iter().map(|(x, y)| c(x.into(), y.into())).collect())
        }

        proptest! {
            #[test]
            fn hull_is_invariant_under_permutation(
                points in points_strategy(),
                seed in any::<u64>(),
            ) {
                let hull = convex_hull(&points, 1e-9);
                let mut shuffled = points.clone();
                let mut state = seed | 1;
                for i in (1..shuffled.len()).rev() {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
                    shuffled.swap(i, (state >> 33) as usize % (i + 1));
                }
                let shuffled_hull = convex_hull(&shuffled, 1e-9);
                prop_assert_eq!(hull.vertices(), shuffled_hull.vertices());
            }

            #[test]
            fn hull_contains_every_input_point(points in points_strategy()) {
                let hull = convex_hull(&points, 1e-9);
                for p in &points {
                    prop_assert!(hull.contains(*p, 1e-7));
                }
                prop_assert!(hull.signed_area_doubled() >= 0.0);
            }
        }
    }
}

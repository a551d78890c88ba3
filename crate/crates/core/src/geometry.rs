//! Convex polygons in the plane (points are `Complex64`), half-plane
//! intersection, hulls, Hausdorff distance and droplet boundary sampling.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numrange::SupportCurve;
use crate::theory::{Droplet, EllipseAxes};

/// Radial bisection tolerance.
pub const BISECTION_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Degeneracy {
    None,
    Segment,
    Point,
}

/// Convex polygon with counterclockwise vertices. One or two vertices encode
/// a point or a segment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvexRegion {
    vertices: Vec<Complex64>,
}

fn cross(o: Complex64, a: Complex64, b: Complex64) -> f64 {
    (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re)
}

impl ConvexRegion {
    /// Checks orientation and convexity (cross products ≥ −1e-10·scale²).
    pub fn from_vertices(vertices: Vec<Complex64>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::Geometry("a region needs at least one vertex".into()));
        }
        let region = Self { vertices };
        let scale = region.scale();
        let n = region.vertices.len();
        if n >= 3 {
            for i in 0..n {
                let (a, b, c) = (region.vertices[i], region.vertices[(i + 1) % n], region.vertices[(i + 2) % n]);
                if cross(a, b, c) < -1e-10 * scale * scale {
                    return Err(Error::Geometry(format!("vertices are not convex and counterclockwise at index {i}")));
                }
            }
        }
        Ok(region)
    }

    pub fn vertices(&self) -> &[Complex64] {
        &self.vertices
    }

    pub fn degeneracy(&self) -> Degeneracy {
        match self.vertices.len() {
            1 => Degeneracy::Point,
            2 => Degeneracy::Segment,
            _ => Degeneracy::None,
        }
    }

    /// `1 + max |vertex|`.
    pub fn scale(&self) -> f64 {
        1.0 + self.vertices.iter().fold(0.0f64, |m, v| m.max(v.norm()))
    }

    pub fn area(&self) -> f64 {
        let n = self.vertices.len();
        (0..n).map(|i| cross(Complex64::new(0.0, 0.0), self.vertices[i], self.vertices[(i + 1) % n])).sum::<f64>() / 2.0
    }

    /// `max_v Re(e^{iθ} v)`.
    pub fn support(&self, theta: f64) -> f64 {
        let e = Complex64::from_polar(1.0, theta);
        self.vertices.iter().map(|v| (e * v).re).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Width along the real axis.
    pub fn real_diameter(&self) -> f64 {
        self.support(0.0) + self.support(std::f64::consts::PI)
    }

    /// Closed boundary as a list of edges.
    fn edges(&self) -> impl Iterator<Item = (Complex64, Complex64)> + '_ {
        let n = self.vertices.len();
        let count = if n == 2 { 1 } else { n };
        (0..count).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Signed distances to each edge line, positive inside.
    fn inner_margin(&self, p: Complex64) -> Option<f64> {
        if self.vertices.len() < 3 {
            return None;
        }
        let mut best = f64::INFINITY;
        for (a, b) in self.edges() {
            let len = (b - a).norm();
            if len == 0.0 {
                continue;
            }
            best = best.min(cross(a, b, p) / len);
        }
        Some(best)
    }

    pub fn contains(&self, p: Complex64, tol: f64) -> bool {
        match self.inner_margin(p) {
            Some(m) => m >= -tol,
            None => self.boundary_distance(p) <= tol,
        }
    }

    /// Distance from `p` to the boundary.
    pub fn boundary_distance(&self, p: Complex64) -> f64 {
        if self.vertices.len() == 1 {
            return (p - self.vertices[0]).norm();
        }
        self.edges().map(|(a, b)| segment_distance_sq(p, a, b)).fold(f64::INFINITY, f64::min).sqrt()
    }
}

fn segment_distance_sq(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm_sqr();
    }
    let t = (((p - a) * d.conj()).re / len2).clamp(0.0, 1.0);
    (p - (a + d * t)).norm_sqr()
}

/// Counterclockwise convex hull (Andrew's monotone chain); collinear and
/// duplicate points are dropped.
pub fn convex_hull(points: &[Complex64]) -> Result<ConvexRegion> {
    if points.is_empty() {
        return Err(Error::Geometry("convex hull of no points".into()));
    }
    let mut pts: Vec<Complex64> = points.to_vec();
    if pts.iter().any(|p| !p.re.is_finite() || !p.im.is_finite()) {
        return Err(Error::Geometry("non-finite point in hull input".into()));
    }
    pts.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    pts.dedup();
    if pts.len() < 3 {
        return Ok(ConvexRegion { vertices: pts });
    }
    let mut hull: Vec<Complex64> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Complex64>> =
            if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
        for &p in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    if hull.len() < 2 {
        hull = vec![pts[0], *pts.last().unwrap()];
    }
    Ok(ConvexRegion { vertices: hull })
}

/// `⋂ₖ {z : Re(e^{iθₖ} z) ≤ values[k]}` for a curve's angles and values.
pub fn halfplane_intersection(curve: &SupportCurve) -> Result<ConvexRegion> {
    intersect_halfplanes(curve.thetas(), curve.values())
}

/// Half-plane intersection by successive clipping of a bounding square.
/// Regions thinner than `1e-9·scale` collapse to a segment or a point.
pub fn intersect_halfplanes(thetas: &[f64], values: &[f64]) -> Result<ConvexRegion> {
    if thetas.len() != values.len() {
        return Err(Error::Contract("angles and support values differ in length".into()));
    }
    if thetas.len() < 3 {
        return Err(Error::Contract("half-plane intersection needs at least 3 angles".into()));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::Geometry("support values must be finite".into()));
    }
    let mut sorted: Vec<f64> = thetas.iter().map(|t| t.rem_euclid(TAU)).collect();
    sorted.sort_by(f64::total_cmp);
    let max_gap = sorted
        .windows(2)
        .map(|w| w[1] - w[0])
        .chain(std::iter::once(sorted[0] + TAU - sorted[sorted.len() - 1]))
        .fold(0.0f64, f64::max);
    if max_gap >= std::f64::consts::PI - 1e-12 {
        return Err(Error::Geometry("angles leave a gap of π or more; the intersection is unbounded".into()));
    }

    let vmax = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let scale = 1.0 + vmax;
    let slack = 1e-12 * scale;
    let big = 4.0 * scale / (max_gap / 2.0).cos();
    let mut poly = vec![
        Complex64::new(-big, -big),
        Complex64::new(big, -big),
        Complex64::new(big, big),
        Complex64::new(-big, big),
    ];
    for (&theta, &v) in thetas.iter().zip(values) {
        let e = Complex64::from_polar(1.0, theta);
        let f = |z: Complex64| (e * z).re - v - slack;
        poly = clip(&poly, f);
        if poly.is_empty() {
            return Err(Error::Geometry(format!("half-plane intersection is empty (at theta={theta})")));
        }
    }
    let hull = convex_hull(&poly)?;
    Ok(collapse_thin(hull, 1e-9 * scale))
}

fn clip(poly: &[Complex64], f: impl Fn(Complex64) -> f64) -> Vec<Complex64> {
    let n = poly.len();
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..n {
        let (a, b) = (poly[i], poly[(i + 1) % n]);
        let (fa, fb) = (f(a), f(b));
        if fa <= 0.0 {
            out.push(a);
        }
        if (fa <= 0.0) != (fb <= 0.0) {
            let t = fa / (fa - fb);
            out.push(a + (b - a) * t);
        }
    }
    out
}

/// Replaces a polygon of width below `tol` by its longest chord (or a point).
fn collapse_thin(region: ConvexRegion, tol: f64) -> ConvexRegion {
    let v = &region.vertices;
    if v.len() < 3 {
        return region;
    }
    let (mut ia, mut ib, mut far) = (0, 0, 0.0);
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            let d = (v[i] - v[j]).norm();
            if d > far {
                (ia, ib, far) = (i, j, d);
            }
        }
    }
    if far <= tol {
        return ConvexRegion { vertices: vec![v[0]] };
    }
    let (a, b) = (v[ia], v[ib]);
    let width = v.iter().map(|&p| cross(a, b, p).abs() / far).fold(0.0f64, f64::max);
    if width <= tol {
        ConvexRegion { vertices: vec![a, b] }
    } else {
        region
    }
}

/// Symmetric Hausdorff distance between the boundaries of two regions.
///
/// Along an edge, the distance to the other boundary is convex where the edge
/// lies outside the other region (so maximal at an end) and concave inside it
/// (maximised by ternary search).
pub fn hausdorff(p: &ConvexRegion, q: &ConvexRegion) -> Result<f64> {
    if p.vertices.is_empty() || q.vertices.is_empty() {
        return Err(Error::Contract("Hausdorff distance of an empty region".into()));
    }
    if p == q {
        return Ok(0.0);
    }
    Ok(directed(p, q).max(directed(q, p)))
}

fn directed(p: &ConvexRegion, q: &ConvexRegion) -> f64 {
    let dist = |x: Complex64| q.boundary_distance(x);
    if p.vertices.len() == 1 {
        return dist(p.vertices[0]);
    }
    let lines: Vec<(Complex64, Complex64, f64)> = if q.vertices.len() < 3 {
        Vec::new()
    } else {
        q.edges().map(|(u, v)| (u, v, (v - u).norm_sqr().sqrt())).filter(|e| e.2 > 0.0).collect()
    };
    let mut best = 0.0f64;
    let mut ga = Vec::with_capacity(lines.len());
    for (a, b) in p.edges() {
        best = best.max(dist(a)).max(dist(b));
        if lines.is_empty() {
            // Distance to a segment or point is convex along the edge.
            continue;
        }
        let Some((t0, t1)) = inside_interval(q, a, b) else { continue };
        let (pa, pb) = (a + (b - a) * t0, a + (b - a) * t1);
        ga.clear();
        ga.extend(lines.iter().map(|&(u, v, len)| (cross(u, v, pa) / len, cross(u, v, pb) / len)));
        // A line above this bound at both ends is never the minimum.
        let bound = ga.iter().map(|&(x, y)| x.max(y)).fold(f64::INFINITY, f64::min);
        if bound <= best {
            continue;
        }
        ga.retain(|&(x, y)| x.min(y) <= bound);
        // Bisect on the slope of the active line of this concave function.
        let active = |s: f64| {
            ga.iter().fold((f64::INFINITY, 0.0), |(m, d), &(x, y)| {
                let v = x + (y - x) * s;
                if v < m { (v, y - x) } else { (m, d) }
            })
        };
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if active(mid).1 > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let at = |s: f64| active(s).0;
        best = best.max(at((lo + hi) / 2.0));
    }
    best
}

/// Parameter interval of the segment `a + t(b−a)`, `t ∈ [0,1]`, inside `q`.
fn inside_interval(q: &ConvexRegion, a: Complex64, b: Complex64) -> Option<(f64, f64)> {
    let (mut t0, mut t1) = (0.0f64, 1.0f64);
    for (u, v) in q.edges() {
        let fa = cross(u, v, a);
        let fb = cross(u, v, b);
        // Inside where fa + t(fb − fa) ≥ 0.
        let d = fb - fa;
        if d == 0.0 {
            if fa < 0.0 {
                return None;
            }
        } else if d > 0.0 {
            t0 = t0.max(-fa / d);
        } else {
            t1 = t1.min(-fa / d);
        }
        if t0 > t1 {
            return None;
        }
    }
    Some((t0, t1))
}

/// `count` boundary points of an axis-aligned ellipse, counterclockwise.
pub fn ellipse_points(axes: &EllipseAxes, count: usize) -> Vec<Complex64> {
    (0..count)
        .map(|k| {
            let (s, c) = (TAU * k as f64 / count as f64).sin_cos();
            axes.center + Complex64::new(axes.a * c, axes.b * s)
        })
        .collect()
}

/// Boundary points of a droplet, one list per connected component.
///
/// Each component is traced by radial bisection from an interior anchor: the
/// centre, or `(±x₀, 0)` for the two pieces of a split chiral droplet, with
/// `x₀` the midpoint of the positive real section.
pub fn sample_droplet_components(d: &Droplet, count: usize) -> Result<Vec<Vec<Complex64>>> {
    if count < 8 {
        return Err(Error::Parameter("droplet boundary sampling needs at least 8 points".into()));
    }
    let (lo, hi) = d.real_extent();
    let reach = 4.0 * (hi + d.center().norm() + 1.0);
    if d.component_count() == 2 {
        let x0 = (lo + hi) / 2.0;
        let per = count / 2;
        let right = trace(d, Complex64::new(x0, 0.0), count - per, reach)?;
        let left = trace(d, Complex64::new(-x0, 0.0), per, reach)?;
        Ok(vec![right, left])
    } else {
        Ok(vec![trace(d, d.center(), count, reach)?])
    }
}

/// All components' boundary points in one list.
pub fn sample_droplet_boundary(d: &Droplet, count: usize) -> Result<Vec<Complex64>> {
    Ok(sample_droplet_components(d, count)?.into_iter().flatten().collect())
}

fn trace(d: &Droplet, anchor: Complex64, count: usize, reach: f64) -> Result<Vec<Complex64>> {
    if d.level(anchor) > 0.0 {
        return Err(Error::Geometry(format!("droplet anchor {anchor} is not interior")));
    }
    (0..count)
        .map(|k| {
            let dir = Complex64::from_polar(1.0, TAU * k as f64 / count as f64);
            let at = |r: f64| d.level(anchor + dir * r);
            // First exit along the ray, located by marching then bisection.
            let steps = 400;
            let h = reach / steps as f64;
            let mut lo = 0.0;
            let mut hi = None;
            for s in 1..=steps {
                let r = h * s as f64;
                if at(r) > 0.0 {
                    hi = Some(r);
                    break;
                }
                lo = r;
            }
            let mut hi = hi.ok_or_else(|| Error::Geometry(format!("no boundary crossing from {anchor} along {dir}")))?;
            while hi - lo > BISECTION_TOL {
                let mid = 0.5 * (lo + hi);
                if at(mid) > 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            Ok(anchor + dir * (0.5 * (lo + hi)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theory::{ellipse_support, DropletKind};

    fn circle(r: f64, c: Complex64, n: usize) -> ConvexRegion {
        convex_hull(&ellipse_points(&EllipseAxes { a: r, b: r, center: c }, n)).unwrap()
    }

    fn grid(n: usize) -> Vec<f64> {
        (0..n).map(|k| TAU * k as f64 / n as f64).collect()
    }

    #[test]
    fn hull_examples() {
        let pts = [
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 1.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.5, 0.5),
            Complex64::new(0.5, 0.0),
        ];
        let h = convex_hull(&pts).unwrap();
        assert_eq!(h.vertices().len(), 4);
        assert!(h.area() > 0.0);
        assert_eq!(convex_hull(&[Complex64::new(2.0, 1.0)]).unwrap().degeneracy(), Degeneracy::Point);
        let seg = convex_hull(&[0.0, 1.0, 2.0].map(|x| Complex64::new(x, x))).unwrap();
        assert_eq!(seg.degeneracy(), Degeneracy::Segment);
        assert!(convex_hull(&[]).is_err());
    }

    #[test]
    fn constant_support_gives_disc() {
        let thetas = grid(720);
        let r = intersect_halfplanes(&thetas, &vec![1.0; 720]).unwrap();
        let disc = circle(1.0, Complex64::new(0.0, 0.0), 20_000);
        assert!(hausdorff(&r, &disc).unwrap() < 1e-4);
        ConvexRegion::from_vertices(r.vertices().to_vec()).unwrap();
    }

    #[test]
    fn three_halfplanes_make_a_triangle() {
        let r = intersect_halfplanes(&grid(3), &[1.0; 3]).unwrap();
        assert_eq!(r.vertices().len(), 3);
        let sides: Vec<f64> = (0..3).map(|i| (r.vertices()[i] - r.vertices()[(i + 1) % 3]).norm()).collect();
        for s in &sides {
            assert!((s - 2.0 * 3f64.sqrt()).abs() < 1e-9);
        }
    }

    #[test]
    fn ellipse_support_polygon() {
        let axes = EllipseAxes::centered(2.0, 1.0);
        let thetas = grid(720);
        let values: Vec<f64> = thetas.iter().map(|&t| ellipse_support(&axes, t)).collect();
        let r = intersect_halfplanes(&thetas, &values).unwrap();
        let truth = convex_hull(&ellipse_points(&axes, 10_000)).unwrap();
        assert!(hausdorff(&r, &truth).unwrap() < 1e-3);
    }

    #[test]
    fn flat_and_empty_intersections() {
        // Support function of the segment [1, 3].
        let thetas = grid(360);
        let values: Vec<f64> = thetas.iter().map(|t| (t.cos()).max(3.0 * t.cos())).collect();
        let r = intersect_halfplanes(&thetas, &values).unwrap();
        assert_eq!(r.degeneracy(), Degeneracy::Segment);
        assert!((r.support(0.0) - 3.0).abs() < 1e-9 && (r.support(std::f64::consts::PI) + 1.0).abs() < 1e-9);
        assert!(intersect_halfplanes(&thetas, &vec![-1.0; 360]).is_err());
        assert!(intersect_halfplanes(&[0.0, 0.1, 0.2], &[1.0; 3]).is_err());
    }

    #[test]
    fn hausdorff_examples() {
        let o = Complex64::new(0.0, 0.0);
        let a = circle(1.0, o, 1000);
        assert_eq!(hausdorff(&a, &a).unwrap(), 0.0);
        let b = circle(1.5, o, 1000);
        assert!((hausdorff(&a, &b).unwrap() - 0.5).abs() < 1e-5);
        let c = circle(1.0, Complex64::new(0.3, 0.0), 1000);
        // Oracle: dense sampling of both boundaries.
        let dense = |r: &ConvexRegion, s: &ConvexRegion| {
            let mut best = 0.0f64;
            for (u, v) in r.edges() {
                for k in 0..8 {
                    let p = u + (v - u) * (k as f64 / 8.0);
                    best = best.max(s.boundary_distance(p));
                }
            }
            best
        };
        let oracle = dense(&a, &c).max(dense(&c, &a));
        let got = hausdorff(&a, &c).unwrap();
        assert!((got - oracle).abs() < 1e-6 && (got - 0.3).abs() < 1e-4, "{got} {oracle}");
        assert_eq!(hausdorff(&a, &c).unwrap(), hausdorff(&c, &a).unwrap());
    }

    #[test]
    fn hausdorff_inside_maximum_is_found() {
        // Square of side 2 against a tiny square at its centre: the farthest
        // boundary point is a corner, sqrt(2) − small.
        let big = convex_hull(&[(-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)].map(|(x, y)| Complex64::new(x, y))).unwrap();
        let seg = convex_hull(&[Complex64::new(-1.0, 0.0), Complex64::new(1.0, 0.0)]).unwrap();
        assert!((hausdorff(&big, &seg).unwrap() - 1.0).abs() < 1e-12);
        let pt = convex_hull(&[Complex64::new(0.0, 0.0)]).unwrap();
        assert!((hausdorff(&big, &pt).unwrap() - 2f64.sqrt()).abs() < 1e-12);
        // Segment through a square: distance from its midpoint (inside) to the square's boundary.
        assert!((directed(&seg, &big) - 1.0).abs() < 1e-12);
        let half = convex_hull(&[Complex64::new(-0.5, 0.0), Complex64::new(0.5, 0.0)]).unwrap();
        assert!((directed(&half, &big) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn discretisation_error_decays_quadratically() {
        let axes = EllipseAxes::centered(2.0, 1.0);
        let truth = convex_hull(&ellipse_points(&axes, 20_000)).unwrap();
        let mut ks = Vec::new();
        for n in [180usize, 360, 720] {
            let thetas = grid(n);
            let values: Vec<f64> = thetas.iter().map(|&t| ellipse_support(&axes, t)).collect();
            let r = intersect_halfplanes(&thetas, &values).unwrap();
            ks.push(hausdorff(&r, &truth).unwrap() * (n * n) as f64);
        }
        // Measured K ≈ 19.7, close to the circumscribed-polygon estimate
        // (max curvature radius a²/b)·(2π)²/8 ≈ 19.74.
        for k in &ks {
            assert!(*k < 21.0, "{ks:?}");
        }
        assert!((ks[2] - ks[0]).abs() < 0.05 * ks[0], "{ks:?}");
    }

    #[test]
    fn droplet_boundaries_lie_on_level_sets() {
        let e = Droplet::new(DropletKind::Ellipse, 0.3, 0.0).unwrap();
        for p in sample_droplet_boundary(&e, 64).unwrap() {
            assert!(((p.re / 1.3).powi(2) + (p.im / 0.7).powi(2) - 1.0).abs() < 1e-8);
        }
        let w = Droplet::new(DropletKind::ShiftedEllipse, 0.5, 1.0).unwrap();
        let pts = sample_droplet_boundary(&w, 64).unwrap();
        let mean: Complex64 = pts.iter().sum::<Complex64>() / pts.len() as f64;
        assert!((mean - Complex64::new(1.5, 0.0)).norm() < 1e-8);
        for &(tau, n_comp) in &[(0.5, 1usize), (0.85, 2)] {
            let ce = Droplet::new(DropletKind::ChiralQuartic, tau, 1.0).unwrap();
            let comps = sample_droplet_components(&ce, 128).unwrap();
            assert_eq!(comps.len(), n_comp);
            for p in comps.iter().flatten() {
                assert!(ce.level(*p).abs() < 1e-6, "{p}: {}", ce.level(*p));
            }
        }
        assert!(sample_droplet_boundary(&e, 4).is_err());
    }

    #[test]
    fn triangle_inequality_on_fixtures() {
        let o = Complex64::new(0.0, 0.0);
        let regions = [
            circle(1.0, o, 500),
            circle(1.2, Complex64::new(0.1, -0.2), 500),
            convex_hull(&ellipse_points(&EllipseAxes::centered(2.0, 0.5), 500)).unwrap(),
        ];
        for a in &regions {
            for b in &regions {
                for c in &regions {
                    let (ab, bc, ac) = (hausdorff(a, b).unwrap(), hausdorff(b, c).unwrap(), hausdorff(a, c).unwrap());
                    assert!(ac <= ab + bc + 1e-9);
                }
            }
        }
    }
}

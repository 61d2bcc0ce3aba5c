//! Convex lattice bodies in dimension 3 and lattice polygons in dimension 2.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_geom::{
    det2, det3, lattice_length2, orient2, primitive, primitive2, rank3, rat, Functional2, Functional3,
    HalfSpace2, HalfSpace3, IntPoint2, IntPoint3, IntVec3, Rat, RatPoint2, RatPoint3,
};

/// Ordering by angle in `[0, 2pi)` measured from the positive x-axis.
fn angle_cmp(a: IntPoint2, b: IntPoint2) -> Ordering {
    let half = |v: IntPoint2| if v.y > 0 || (v.y == 0 && v.x > 0) { 0 } else { 1 };
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&det2(a, b)))
}

fn bottom_left(a: &IntPoint2, b: &IntPoint2) -> Ordering {
    (a.y, a.x).cmp(&(b.y, b.x))
}

/// Strict convex hull (no collinear vertices) by monotone chain,
/// counterclockwise, starting at the bottom-left vertex.
fn hull2(points: &[IntPoint2]) -> Vec<IntPoint2> {
    let mut pts: Vec<IntPoint2> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        let mut v = pts;
        v.sort_by(bottom_left);
        return v;
    }
    let mut lower: Vec<IntPoint2> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && orient2(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<IntPoint2> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && orient2(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() == 2 && lower[0] == lower[1] {
        lower.pop();
    }
    let start = (0..lower.len())
        .min_by(|&i, &j| bottom_left(&lower[i], &lower[j]))
        .unwrap();
    lower.rotate_left(start);
    lower
}

/// A lattice polygon, possibly degenerate (a point or a segment).
///
/// Vertices are stored counterclockwise, starting at the vertex with the
/// smallest `(y, x)`, without collinear triples. Two polygons are equal iff
/// they are the same point set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polygon2 {
    vertices: Vec<IntPoint2>,
}

impl Polygon2 {
    /// Convex hull of a nonempty point list.
    pub fn hull(points: &[IntPoint2]) -> Result<Polygon2> {
        if points.is_empty() {
            return Err(Error::InvalidInput("polygon needs at least one point".into()));
        }
        Ok(Polygon2 { vertices: hull2(points) })
    }

    pub fn point(p: IntPoint2) -> Polygon2 {
        Polygon2 { vertices: vec![p] }
    }

    pub fn segment(a: IntPoint2, b: IntPoint2) -> Polygon2 {
        Polygon2 { vertices: hull2(&[a, b]) }
    }

    pub fn vertices(&self) -> &[IntPoint2] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        match self.vertices.len() {
            1 => 0,
            2 => 1,
            _ => 2,
        }
    }

    /// Edge vectors in counterclockwise order; a segment has two opposite
    /// edges, a point none.
    pub fn edges(&self) -> Vec<IntPoint2> {
        let n = self.vertices.len();
        if n == 1 {
            return Vec::new();
        }
        (0..n).map(|i| self.vertices[(i + 1) % n] - self.vertices[i]).collect()
    }

    /// Primitive outer normals of the edges, i.e. the rays of the normal fan.
    pub fn outer_normals(&self) -> Vec<IntPoint2> {
        self.edges()
            .into_iter()
            .map(|e| primitive2(IntPoint2::new(e.y, -e.x)).expect("nonzero edge"))
            .collect()
    }

    pub fn translate(&self, t: IntPoint2) -> Polygon2 {
        Polygon2 { vertices: self.vertices.iter().map(|&v| v + t).collect() }
    }

    pub fn dilate(&self, k: i64) -> Result<Polygon2> {
        if k <= 0 {
            return Err(Error::InvalidInput(format!("dilation factor must be positive, got {k}")));
        }
        Ok(Polygon2 { vertices: self.vertices.iter().map(|v| v.scale(k)).collect() })
    }

    /// Twice the euclidean area.
    pub fn normalized_area(&self) -> i128 {
        let n = self.vertices.len();
        if n < 3 {
            return 0;
        }
        (0..n).map(|i| det2(self.vertices[i], self.vertices[(i + 1) % n])).sum::<i128>().abs()
    }

    pub fn width(&self, f: Functional2) -> i128 {
        let vals = self.vertices.iter().map(|&v| f.eval(v));
        let (lo, hi) = vals.fold((i128::MAX, i128::MIN), |(lo, hi), x| (lo.min(x), hi.max(x)));
        hi - lo
    }

    pub fn contains(&self, p: IntPoint2) -> bool {
        self.contains_rat(&p.to_rat())
    }

    pub fn contains_rat(&self, p: &RatPoint2) -> bool {
        let vs: Vec<RatPoint2> = self.vertices.iter().map(|v| v.to_rat()).collect();
        rat_polygon_contains(&vs, p)
    }

    /// Closed half-spaces cutting out the polygon (including the affine
    /// hull equations for degenerate polygons).
    pub fn halfspaces(&self) -> Vec<HalfSpace2> {
        let mut hs = Vec::new();
        let n = self.vertices.len();
        match n {
            1 => {
                let p = self.vertices[0];
                for (a, b, c) in [(1, 0, p.x), (-1, 0, -p.x), (0, 1, p.y), (0, -1, -p.y)] {
                    hs.push(HalfSpace2::new(Functional2::new(a, b), rat(c as i128)));
                }
            }
            _ => {
                for i in 0..n {
                    let a = self.vertices[i];
                    let e = self.vertices[(i + 1) % n] - a;
                    let f = Functional2::new(e.y, -e.x);
                    hs.push(HalfSpace2::new(f, rat(f.eval(a))));
                }
                if n == 2 {
                    let (a, b) = (self.vertices[0], self.vertices[1]);
                    let e = b - a;
                    let f = Functional2::new(e.x, e.y);
                    hs.push(HalfSpace2::new(f, rat(f.eval(b))));
                    let g = Functional2::new(-e.x, -e.y);
                    hs.push(HalfSpace2::new(g, rat(g.eval(a))));
                }
            }
        }
        hs
    }

    /// Lattice points in lexicographic order.
    pub fn lattice_points(&self) -> Vec<IntPoint2> {
        match self.vertices.len() {
            1 => self.vertices.clone(),
            2 => {
                let (a, b) = (self.vertices[0], self.vertices[1]);
                let g = lattice_length2(b - a);
                let step = IntPoint2::new((b.x - a.x) / g, (b.y - a.y) / g);
                let mut pts: Vec<IntPoint2> = (0..=g).map(|t| a + step.scale(t)).collect();
                pts.sort();
                pts
            }
            _ => {
                let xs = self.vertices.iter().map(|v| v.x);
                let ys = self.vertices.iter().map(|v| v.y);
                let (x0, x1) = (xs.clone().min().unwrap(), xs.max().unwrap());
                let (y0, y1) = (ys.clone().min().unwrap(), ys.max().unwrap());
                let n = self.vertices.len();
                let mut pts = Vec::new();
                for x in x0..=x1 {
                    for y in y0..=y1 {
                        let p = IntPoint2::new(x, y);
                        if (0..n).all(|i| orient2(self.vertices[i], self.vertices[(i + 1) % n], p) >= 0) {
                            pts.push(p);
                        }
                    }
                }
                pts
            }
        }
    }
}

fn rat_cross(o: &RatPoint2, a: &RatPoint2, b: &RatPoint2) -> Rat {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

fn rat_polygon_contains(vs: &[RatPoint2], p: &RatPoint2) -> bool {
    match vs.len() {
        0 => false,
        1 => &vs[0] == p,
        2 => {
            rat_cross(&vs[0], &vs[1], p).is_zero()
                && p.x >= vs[0].x.min(vs[1].x)
                && p.x <= vs[0].x.max(vs[1].x)
                && p.y >= vs[0].y.min(vs[1].y)
                && p.y <= vs[0].y.max(vs[1].y)
        }
        n => (0..n).all(|i| !rat_cross(&vs[i], &vs[(i + 1) % n], p).is_negative()),
    }
}

/// A convex polygon with rational vertices, as produced by slicing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPolygon2 {
    pub vertices: Vec<RatPoint2>,
}

impl RatPolygon2 {
    pub fn hull(points: &[RatPoint2]) -> RatPolygon2 {
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup();
        if pts.len() <= 2 {
            return RatPolygon2 { vertices: pts };
        }
        let mut lower: Vec<RatPoint2> = Vec::new();
        for p in &pts {
            while lower.len() >= 2
                && !rat_cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive()
            {
                lower.pop();
            }
            lower.push(p.clone());
        }
        let mut upper: Vec<RatPoint2> = Vec::new();
        for p in pts.iter().rev() {
            while upper.len() >= 2
                && !rat_cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive()
            {
                upper.pop();
            }
            upper.push(p.clone());
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        RatPolygon2 { vertices: lower }
    }

    pub fn is_lattice(&self) -> bool {
        self.vertices.iter().all(|v| v.to_lattice().is_some())
    }

    pub fn first_non_lattice(&self) -> Option<&RatPoint2> {
        self.vertices.iter().find(|v| v.to_lattice().is_none())
    }

    pub fn to_lattice(&self) -> Option<Polygon2> {
        let pts: Option<Vec<IntPoint2>> = self.vertices.iter().map(|v| v.to_lattice()).collect();
        Polygon2::hull(&pts?).ok()
    }

    pub fn contains(&self, p: &RatPoint2) -> bool {
        rat_polygon_contains(&self.vertices, p)
    }
}

/// Whether every ray of the normal fan of `p` is a ray of the normal fan of `q`,
/// i.e. whether `p` is a weak Minkowski summand of `q`.
pub fn normal_fan_refines(q: &Polygon2, p: &Polygon2) -> bool {
    let qn: BTreeSet<IntPoint2> = q.outer_normals().into_iter().collect();
    p.outer_normals().iter().all(|n| qn.contains(n))
}

/// Minkowski sum by merging the angularly sorted edge sequences.
pub fn minkowski_sum2(p: &Polygon2, q: &Polygon2) -> Polygon2 {
    let start = p.vertices[0] + q.vertices[0];
    let mut edges: Vec<IntPoint2> = p.edges();
    edges.extend(q.edges());
    edges.sort_by(|&a, &b| angle_cmp(a, b));
    let mut merged: Vec<IntPoint2> = Vec::new();
    for e in edges {
        match merged.last_mut() {
            Some(last) if det2(*last, e) == 0 && angle_cmp(*last, e) == Ordering::Equal => {
                *last = *last + e;
            }
            _ => merged.push(e),
        }
    }
    let mut vertices = vec![start];
    let mut cur = start;
    for e in &merged[..merged.len().saturating_sub(1)] {
        cur = cur + *e;
        vertices.push(cur);
    }
    Polygon2 { vertices }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    /// Primitive outer normal.
    pub f: Functional3,
    pub bound: i64,
    /// Indices into the body's vertex list of the vertices on this facet.
    pub vertices: Vec<usize>,
}

impl Facet {
    pub fn halfspace(&self) -> HalfSpace3 {
        HalfSpace3::new(self.f, rat(self.bound as i128))
    }
}

/// A full-dimensional lattice polytope in both vertex and facet form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Body3 {
    vertices: Vec<IntPoint3>,
    facets: Vec<Facet>,
}

fn affinely_spans3(points: &[IntPoint3]) -> bool {
    let Some(&o) = points.first() else { return false };
    let Some(&a) = points.iter().find(|&&p| p != o) else { return false };
    let Some(&b) = points.iter().find(|&&p| !(a - o).cross(p - o).is_zero()) else {
        return false;
    };
    let n = (a - o).cross(b - o);
    points.iter().any(|&p| n.dot(p - o) != 0)
}

impl Body3 {
    /// Convex hull with its irredundant facet description.
    pub fn hull(points: &[IntPoint3]) -> Result<Body3> {
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup();
        if !affinely_spans3(&pts) {
            return Err(Error::Degenerate("body (points do not span 3-space)"));
        }
        let mut normals: BTreeSet<(Functional3, i64)> = BTreeSet::new();
        let n = pts.len();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let c = (pts[j] - pts[i]).cross(pts[k] - pts[i]);
                    if c.is_zero() {
                        continue;
                    }
                    let c = primitive(c)?;
                    let level = c.dot(pts[i]);
                    let (mut above, mut below) = (false, false);
                    for &p in &pts {
                        match c.dot(p).cmp(&level) {
                            Ordering::Greater => above = true,
                            Ordering::Less => below = true,
                            Ordering::Equal => {}
                        }
                        if above && below {
                            break;
                        }
                    }
                    let level = i64::try_from(level).expect("facet bound exceeds i64");
                    if !above {
                        normals.insert((Functional3::from(c), level));
                    } else if !below {
                        normals.insert((Functional3::from(-c), -level));
                    }
                }
            }
        }
        let facet_planes: Vec<(Functional3, i64)> = normals.into_iter().collect();
        let vertices: Vec<IntPoint3> = pts
            .into_iter()
            .filter(|&p| {
                let tight: Vec<IntVec3> = facet_planes
                    .iter()
                    .filter(|(f, b)| f.eval(p) == *b as i128)
                    .map(|(f, _)| f.normal())
                    .collect();
                rank3(&tight) == 3
            })
            .collect();
        let facets = facet_planes
            .into_iter()
            .map(|(f, bound)| Facet {
                f,
                bound,
                vertices: (0..vertices.len())
                    .filter(|&i| f.eval(vertices[i]) == bound as i128)
                    .collect(),
            })
            .collect();
        let body = Body3 { vertices, facets };
        body.check()?;
        Ok(body)
    }

    fn check(&self) -> Result<()> {
        for fct in &self.facets {
            if !self.vertices.iter().all(|&v| fct.f.eval(v) <= fct.bound as i128) {
                return Err(Error::Internal("vertex violates facet inequality".into()));
            }
            let vs: Vec<IntPoint3> = fct.vertices.iter().map(|&i| self.vertices[i]).collect();
            let o = vs[0];
            if !vs.iter().any(|&a| vs.iter().any(|&b| !(a - o).cross(b - o).is_zero())) {
                return Err(Error::Internal("facet spanned by fewer than 3 independent vertices".into()));
            }
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[IntPoint3] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn halfspaces(&self) -> Vec<HalfSpace3> {
        self.facets.iter().map(Facet::halfspace).collect()
    }

    pub fn contains(&self, p: IntPoint3) -> bool {
        self.facets.iter().all(|f| f.f.eval(p) <= f.bound as i128)
    }

    pub fn contains_rat(&self, p: &RatPoint3) -> bool {
        self.facets.iter().all(|f| f.halfspace().contains_rat(p))
    }

    pub fn translate(&self, t: IntVec3) -> Body3 {
        Body3 {
            vertices: self.vertices.iter().map(|&v| v + t).collect(),
            facets: self
                .facets
                .iter()
                .map(|f| Facet {
                    f: f.f,
                    bound: f.bound + i64::try_from(f.f.eval(t)).expect("bound exceeds i64"),
                    vertices: f.vertices.clone(),
                })
                .collect(),
        }
    }

    pub fn dilate(&self, k: i64) -> Result<Body3> {
        if k <= 0 {
            return Err(Error::InvalidInput(format!("dilation factor must be positive, got {k}")));
        }
        Ok(Body3 {
            vertices: self.vertices.iter().map(|v| v.scale(k)).collect(),
            facets: self
                .facets
                .iter()
                .map(|f| Facet { f: f.f, bound: f.bound * k, vertices: f.vertices.clone() })
                .collect(),
        })
    }

    pub fn width(&self, f: Functional3) -> i128 {
        let vals = self.vertices.iter().map(|&v| f.eval(v));
        let (lo, hi) = vals.fold((i128::MAX, i128::MIN), |(lo, hi), x| (lo.min(x), hi.max(x)));
        hi - lo
    }

    /// Lattice points by bounding-box scan, in lexicographic order.
    pub fn lattice_points(&self) -> Vec<IntPoint3> {
        let (lo, hi) = self.bounding_box();
        let mut out = Vec::new();
        for x in lo.x..=hi.x {
            for y in lo.y..=hi.y {
                for z in lo.z..=hi.z {
                    let p = IntPoint3::new(x, y, z);
                    if self.contains(p) {
                        out.push(p);
                    }
                }
            }
        }
        out
    }

    /// Membership in the dilation `kP`.
    pub fn contains_dilated(&self, p: IntPoint3, k: i64) -> bool {
        self.facets.iter().all(|f| f.f.eval(p) <= f.bound as i128 * k as i128)
    }

    /// Lattice points of the dilation `kP`, from the scaled facet inequalities.
    pub fn dilated_lattice_points(&self, k: i64) -> Vec<IntPoint3> {
        let (lo, hi) = self.bounding_box();
        let (lo, hi) = (lo.scale(k), hi.scale(k));
        let mut out = Vec::new();
        for x in lo.x..=hi.x {
            for y in lo.y..=hi.y {
                for z in lo.z..=hi.z {
                    let p = IntPoint3::new(x, y, z);
                    if self.contains_dilated(p, k) {
                        out.push(p);
                    }
                }
            }
        }
        out
    }

    pub fn bounding_box(&self) -> (IntPoint3, IntPoint3) {
        let mut lo = self.vertices[0];
        let mut hi = self.vertices[0];
        for v in &self.vertices {
            lo = IntPoint3::new(lo.x.min(v.x), lo.y.min(v.y), lo.z.min(v.z));
            hi = IntPoint3::new(hi.x.max(v.x), hi.y.max(v.y), hi.z.max(v.z));
        }
        (lo, hi)
    }

    /// Vertices of facet `i` in counterclockwise order seen from outside.
    pub fn facet_cycle(&self, i: usize) -> Vec<IntPoint3> {
        let fct = &self.facets[i];
        let normal = fct.f.normal();
        let mut vs: Vec<IntPoint3> = fct.vertices.iter().map(|&j| self.vertices[j]).collect();
        vs.sort();
        let anchor = vs[0];
        let mut rest: Vec<IntPoint3> = vs[1..].to_vec();
        // Seen from a vertex of a convex polygon, the others span less than pi.
        rest.sort_by(|&a, &b| {
            let s = normal.dot((a - anchor).cross(b - anchor));
            0.cmp(&s)
        });
        let mut out = vec![anchor];
        out.extend(rest);
        out
    }

    /// Pairs of vertex indices spanning an edge of the body.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.vertices.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let shared = self
                    .facets
                    .iter()
                    .filter(|f| f.vertices.contains(&i) && f.vertices.contains(&j))
                    .count();
                if shared >= 2 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Six times the euclidean volume, by coning from the first vertex over
    /// the fan-triangulated facets that miss it.
    pub fn normalized_volume(&self) -> i128 {
        let apex = self.vertices[0];
        let mut total = 0i128;
        for (i, f) in self.facets.iter().enumerate() {
            if f.vertices.contains(&0) {
                continue;
            }
            let cyc = self.facet_cycle(i);
            for k in 1..cyc.len() - 1 {
                total += det3(cyc[0] - apex, cyc[k] - apex, cyc[k + 1] - apex).abs();
            }
        }
        total
    }
}

/// `base + [0,1] e0 + [0,1] e1 + [0,1] e2` for linearly independent edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Parallelepiped {
    pub base: IntPoint3,
    pub edges: [IntVec3; 3],
}

impl Parallelepiped {
    pub fn new(base: IntPoint3, edges: [IntVec3; 3]) -> Result<Parallelepiped> {
        if det3(edges[0], edges[1], edges[2]) == 0 {
            return Err(Error::Degenerate("parallelepiped (edge determinant is zero)"));
        }
        Ok(Parallelepiped { base, edges })
    }

    pub fn corners(&self) -> Vec<IntPoint3> {
        let mut out = Vec::with_capacity(8);
        for m in 0..8 {
            let mut p = self.base;
            for (k, e) in self.edges.iter().enumerate() {
                if m & (1 << k) != 0 {
                    p = p + *e;
                }
            }
            out.push(p);
        }
        out
    }

    pub fn to_body(&self) -> Body3 {
        let b = Body3::hull(&self.corners()).expect("nondegenerate parallelepiped");
        debug_assert_eq!(b.facets().len(), 6);
        b
    }
}

/// The section of `body` by the plane `z = h`, with a flag telling whether
/// every vertex of the section is a lattice point.
pub fn slice_z(body: &Body3, h: i64) -> Result<(RatPolygon2, bool)> {
    let vs = body.vertices();
    let mut pts: Vec<RatPoint2> = Vec::new();
    for v in vs {
        if v.z == h {
            pts.push(v.xy().to_rat());
        }
    }
    for (i, j) in body.edges() {
        let (a, b) = (vs[i], vs[j]);
        if (a.z < h && b.z > h) || (a.z > h && b.z < h) {
            let t = Rat::new((h - a.z) as i128, (b.z - a.z) as i128);
            let x = rat(a.x as i128) + t * rat((b.x - a.x) as i128);
            let y = rat(a.y as i128) + t * rat((b.y - a.y) as i128);
            pts.push(RatPoint2::new(x, y));
        }
    }
    if pts.is_empty() {
        return Err(Error::Precondition(format!("plane z = {h} misses the body")));
    }
    let poly = RatPolygon2::hull(&pts);
    let lattice = poly.is_lattice();
    Ok((poly, lattice))
}

pub fn is_smooth_body(body: &Body3) -> bool {
    let edges = body.edges();
    let vs = body.vertices();
    (0..vs.len()).all(|i| {
        let dirs: Vec<IntVec3> = edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == i {
                    Some(vs[b] - vs[a])
                } else if b == i {
                    Some(vs[a] - vs[b])
                } else {
                    None
                }
            })
            .map(|d| primitive(d).expect("distinct vertices"))
            .collect();
        dirs.len() == 3 && det3(dirs[0], dirs[1], dirs[2]).abs() == 1
    })
}

pub fn is_smooth_polygon(p: &Polygon2) -> bool {
    if p.dim() < 2 {
        return false;
    }
    let e = p.edges();
    let n = e.len();
    (0..n).all(|i| {
        let a = primitive2(e[i]).unwrap();
        let b = primitive2(e[(i + n - 1) % n]).unwrap();
        det2(a, b).abs() == 1
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3(x: i64, y: i64, z: i64) -> IntPoint3 {
        IntPoint3::new(x, y, z)
    }

    fn p2(x: i64, y: i64) -> IntPoint2 {
        IntPoint2::new(x, y)
    }

    fn cube() -> Body3 {
        Parallelepiped::new(p3(0, 0, 0), [p3(1, 0, 0), p3(0, 1, 0), p3(0, 0, 1)])
            .unwrap()
            .to_body()
    }

    fn white12() -> Body3 {
        Body3::hull(&[p3(0, 0, 0), p3(1, 0, 0), p3(0, 0, 1), p3(1, 2, 1)]).unwrap()
    }

    fn octahedron() -> Body3 {
        Body3::hull(&[p3(0, 1, 1), p3(1, 0, 1), p3(1, 1, 0), p3(0, -1, -1), p3(-1, 0, -1), p3(-1, -1, 0)])
            .unwrap()
    }

    #[test]
    fn hrep_examples() {
        let c = cube();
        assert_eq!(c.facets().len(), 6);
        for f in c.facets() {
            let n = f.f.normal();
            assert_eq!(n.x.abs() + n.y.abs() + n.z.abs(), 1);
        }
        let o = octahedron();
        assert_eq!(o.facets().len(), 8);
        assert_eq!(o.lattice_points().len(), 7);
        assert_eq!(white12().facets().len(), 4);
    }

    #[test]
    fn hrep_drops_interior_and_edge_points() {
        let mut pts = cube().vertices().to_vec();
        pts.push(p3(0, 0, 0));
        let b = Body3::hull(&[pts.clone(), vec![p3(1, 1, 1).scale(1)]].concat()).unwrap();
        assert_eq!(b.vertices().len(), 8);
        let big = Body3::hull(&[p3(0, 0, 0), p3(2, 0, 0), p3(1, 0, 0), p3(0, 2, 0), p3(0, 0, 2), p3(0, 1, 0)])
            .unwrap();
        assert_eq!(big.vertices().len(), 4);
        assert!(Body3::hull(&[p3(0, 0, 0), p3(1, 0, 0), p3(0, 1, 0), p3(1, 1, 0)]).is_err());
    }

    #[test]
    fn width_examples() {
        assert_eq!(cube().width(Functional3::new(0, 0, 1)), 1);
        assert_eq!(white12().width(Functional3::new(0, 0, 1)), 1);
        assert_eq!(white12().width(Functional3::new(0, 1, 0)), 2);
    }

    #[test]
    fn fan_refinement_examples() {
        let sq = Polygon2::hull(&[p2(0, 0), p2(1, 0), p2(1, 1), p2(0, 1)]).unwrap();
        assert!(normal_fan_refines(&sq, &Polygon2::point(p2(4, 4))));
        assert!(normal_fan_refines(&sq, &sq));
        assert!(!normal_fan_refines(&sq, &Polygon2::segment(p2(0, 0), p2(1, 1))));
        assert!(normal_fan_refines(&sq, &Polygon2::segment(p2(0, 0), p2(3, 0))));
    }

    #[test]
    fn minkowski_examples() {
        let sq = Polygon2::hull(&[p2(0, 0), p2(1, 0), p2(1, 1), p2(0, 1)]).unwrap();
        let t = Polygon2::point(p2(3, -2));
        assert_eq!(minkowski_sum2(&t, &sq), sq.translate(p2(3, -2)));
        assert_eq!(minkowski_sum2(&sq, &sq), sq.dilate(2).unwrap());
        let s1 = Polygon2::segment(p2(0, 0), p2(1, 0));
        let s2 = Polygon2::segment(p2(0, 0), p2(1, 2));
        let par = minkowski_sum2(&s1, &s2);
        assert_eq!(par, Polygon2::hull(&[p2(0, 0), p2(1, 0), p2(1, 2), p2(2, 2)]).unwrap());
        let s3 = Polygon2::segment(p2(0, 0), p2(2, 0));
        assert_eq!(minkowski_sum2(&s1, &s3), Polygon2::segment(p2(0, 0), p2(3, 0)));
    }

    #[test]
    fn slice_examples() {
        let sq = Polygon2::hull(&[p2(0, 0), p2(1, 0), p2(1, 1), p2(0, 1)]).unwrap();
        let tri = Polygon2::hull(&[p2(0, 0), p2(2, 0), p2(0, 1)]).unwrap();
        let cay = Body3::hull(
            &[
                sq.vertices().iter().map(|v| v.lift(0)).collect::<Vec<_>>(),
                tri.vertices().iter().map(|v| v.lift(1)).collect(),
            ]
            .concat(),
        )
        .unwrap();
        let (s0, lat) = slice_z(&cay, 0).unwrap();
        assert!(lat);
        assert_eq!(s0.to_lattice().unwrap(), sq);
        let (s1, lat) = slice_z(&cay.dilate(2).unwrap(), 1).unwrap();
        assert!(lat);
        assert_eq!(s1.to_lattice().unwrap(), minkowski_sum2(&sq, &tri));

        // Triangle at height 0, rotated triangle at height 2: an edge midpoint is half-integral.
        let pr = Body3::hull(&[p3(0, 0, 0), p3(1, 0, 0), p3(0, 1, 0), p3(0, 0, 2), p3(-1, 0, 2), p3(0, -1, 2)])
            .unwrap();
        let (_, lat) = slice_z(&pr, 1).unwrap();
        assert!(!lat);
        assert!(slice_z(&pr, 5).is_err());
    }

    #[test]
    fn smoothness_examples() {
        assert!(is_smooth_body(&cube()));
        assert!(!is_smooth_body(&white12()));
        assert!(!is_smooth_body(&octahedron()));
        let sq = Polygon2::hull(&[p2(0, 0), p2(1, 0), p2(1, 1), p2(0, 1)]).unwrap();
        assert!(is_smooth_polygon(&sq));
        assert!(!is_smooth_polygon(&Polygon2::hull(&[p2(0, 0), p2(2, 1), p2(1, 2)]).unwrap()));
    }

    #[test]
    fn dilation_examples() {
        assert_eq!(cube().dilate(1).unwrap(), cube());
        let c2 = cube().dilate(2).unwrap();
        assert_eq!(c2.bounding_box(), (p3(0, 0, 0), p3(2, 2, 2)));
        assert_eq!(white12().dilate(2).unwrap().width(Functional3::new(0, 0, 1)), 2);
        assert!(cube().dilate(0).is_err());
    }

    #[test]
    fn volumes() {
        assert_eq!(cube().normalized_volume(), 6);
        assert_eq!(white12().normalized_volume(), 2);
        // Octahedron: 8 facets, each cone from origin of normalized volume 2... computed by oracle below.
        let o = octahedron();
        let origin_cones: i128 = (0..o.facets().len())
            .map(|i| {
                let c = o.facet_cycle(i);
                (1..c.len() - 1).map(|k| det3(c[0], c[k], c[k + 1]).abs()).sum::<i128>()
            })
            .sum();
        assert_eq!(o.normalized_volume(), origin_cones);
    }
}

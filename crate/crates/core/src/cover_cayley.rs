//! Unimodular covers of Cayley sums `Cay(P, Q) = conv(P x {0} u Q x {1})`
//! where `P` is a weak Minkowski summand of `Q`, and of prismatoids whose
//! integer slices are lattice polygons.
//!
//! An empty tetrahedron of a Cayley body with three vertices on one level
//! is unimodular. One with two vertices on each level is `Cay(p, q)` for
//! primitive segments `p`, `q`; if it is not unimodular, an open strip
//! parallel to `q` through `p` meets `P` in a lattice point `u` (or the
//! symmetric strip meets `Q`). Then `conv(T, u)` is a five-point circuit
//! whose other triangulation consists of two smaller `(2,2)` tetrahedra and
//! one tetrahedron with three vertices on a level, and the recursion runs on
//! normalized volume.

use std::fmt;

use crate::cover::Cover;
use crate::error::{Error, Result};
use crate::exact_geom::{det2, lattice_length2, segment_triangle_intersect, Functional2, IntPoint2, IntPoint3};
use crate::polytope::{normal_fan_refines, slice_z, Body3, Polygon2};
use crate::triangulate::{empty_triangulation, refine_to_empty, Simplex3};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleySpec {
    pub p: Polygon2,
    pub q: Polygon2,
}

impl CayleySpec {
    /// `q` must be 2-dimensional, which also makes `p + q` 2-dimensional.
    pub fn new(p: Polygon2, q: Polygon2) -> Result<CayleySpec> {
        if q.dim() != 2 {
            return Err(Error::Precondition("Q must be a 2-dimensional polygon".into()));
        }
        Ok(CayleySpec { p, q })
    }
}

pub fn cayley_embed(spec: &CayleySpec) -> Result<Body3> {
    let mut pts: Vec<IntPoint3> = spec.p.vertices().iter().map(|v| v.lift(0)).collect();
    pts.extend(spec.q.vertices().iter().map(|v| v.lift(1)));
    Body3::hull(&pts)
}

/// How many vertices of a tetrahedron sit on the lower and upper level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CayleyType {
    OneThree,
    TwoTwo,
    ThreeOne,
}

impl CayleyType {
    pub fn counts(self) -> (usize, usize) {
        match self {
            CayleyType::OneThree => (1, 3),
            CayleyType::TwoTwo => (2, 2),
            CayleyType::ThreeOne => (3, 1),
        }
    }
}

impl fmt::Display for CayleyType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.counts();
        write!(f, "({a},{b})")
    }
}

pub fn classify_type(t: &Simplex3) -> Result<CayleyType> {
    let mut lower = 0;
    for v in t.vertices() {
        match v.z {
            0 => lower += 1,
            1 => {}
            _ => return Err(Error::Precondition(format!("vertex {v} of {t} is not at height 0 or 1"))),
        }
    }
    match lower {
        1 => Ok(CayleyType::OneThree),
        2 => Ok(CayleyType::TwoTwo),
        3 => Ok(CayleyType::ThreeOne),
        _ => Err(Error::Degenerate("tetrahedron with all vertices on one level")),
    }
}

/// Coordinates of a `(2,2)` tetrahedron `Cay(p, q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StripFrame {
    pub p1: IntPoint2,
    pub p2: IntPoint2,
    pub q1: IntPoint2,
    pub q2: IntPoint2,
    /// Primitive, constant on `p`.
    pub f_p: Functional2,
    /// Primitive, constant on `q`.
    pub f_q: Functional2,
    pub w: i128,
}

impl StripFrame {
    pub fn new(p: [IntPoint2; 2], q: [IntPoint2; 2]) -> Result<StripFrame> {
        let (dp, dq) = (p[1] - p[0], q[1] - q[0]);
        if dp == IntPoint2::ORIGIN || dq == IntPoint2::ORIGIN {
            return Err(Error::Degenerate("segment"));
        }
        if lattice_length2(dp) != 1 || lattice_length2(dq) != 1 {
            return Err(Error::Precondition("segments p and q must be primitive".into()));
        }
        let w = det2(dp, dq).abs();
        if w == 0 {
            return Err(Error::Precondition("segments p and q are parallel".into()));
        }
        Ok(StripFrame {
            p1: p[0],
            p2: p[1],
            q1: q[0],
            q2: q[1],
            f_p: Functional2::vanishing_on(dp)?,
            f_q: Functional2::vanishing_on(dq)?,
            w,
        })
    }

    pub fn of_simplex(t: &Simplex3) -> Result<StripFrame> {
        if classify_type(t)? != CayleyType::TwoTwo {
            return Err(Error::Precondition(format!("{t} is not of type (2,2)")));
        }
        let lo: Vec<IntPoint2> = t.sorted_vertices().iter().filter(|v| v.z == 0).map(|v| v.xy()).collect();
        let hi: Vec<IntPoint2> = t.sorted_vertices().iter().filter(|v| v.z == 1).map(|v| v.xy()).collect();
        StripFrame::new([lo[0], lo[1]], [hi[0], hi[1]])
    }

    pub fn in_p_strip(&self, u: IntPoint2) -> bool {
        strictly_between(self.f_q.eval(u), self.f_q.eval(self.p1), self.f_q.eval(self.p2))
    }

    pub fn in_q_strip(&self, u: IntPoint2) -> bool {
        strictly_between(self.f_p.eval(u), self.f_p.eval(self.q1), self.f_p.eval(self.q2))
    }
}

fn strictly_between(x: i128, a: i128, b: i128) -> bool {
    a.min(b) < x && x < a.max(b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    PStrip,
    QStrip,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::PStrip => "P-strip",
            Side::QStrip => "Q-strip",
        })
    }
}

fn find_strip_witness(frame: &StripFrame, p: &Polygon2, q: &Polygon2) -> Result<(Side, IntPoint2)> {
    let pp = p.lattice_points();
    if let Some(&u) = pp.iter().find(|&&u| frame.in_p_strip(u)) {
        return Ok((Side::PStrip, u));
    }
    let qp = q.lattice_points();
    if let Some(&u) = qp.iter().find(|&&u| frame.in_q_strip(u)) {
        return Ok((Side::QStrip, u));
    }
    Err(Error::NoStripWitness { p_strip: pp, q_strip: qp })
}

/// A lattice point of `P` in the open strip through `p` parallel to `q`,
/// else one of `Q` in the open strip through `q` parallel to `p`.
/// The `P`-strip is searched first and the smallest point is returned.
pub fn strip_witness(frame: &StripFrame, p: &Polygon2, q: &Polygon2) -> Result<(Side, IntPoint2)> {
    if !(p.contains(frame.p1) && p.contains(frame.p2)) {
        return Err(Error::Precondition("segment p is not inside P".into()));
    }
    if !(q.contains(frame.q1) && q.contains(frame.q2)) {
        return Err(Error::Precondition("segment q is not inside Q".into()));
    }
    if frame.w < 2 {
        return Err(Error::Precondition("parallelogram p + q is unimodular".into()));
    }
    if !normal_fan_refines(q, p) {
        return Err(Error::FanNotRefined);
    }
    find_strip_witness(frame, p, q)
}

/// The three tetrahedra replacing a `(2,2)` tetrahedron: `left` and `right`
/// are again of type `(2,2)`, `cap` has three vertices on one level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Split {
    pub left: Simplex3,
    pub right: Simplex3,
    pub cap: Simplex3,
}

impl Split {
    pub fn pieces(&self) -> [Simplex3; 3] {
        [self.left, self.right, self.cap]
    }
}

/// Splits an empty non-unimodular `Cay(p, q)` at a strip witness.
///
/// For a `P`-strip witness `u`, the five points `p1, p2, u, q1, q2` form a
/// circuit in which a segment `[u, q_a]` crosses the triangle
/// `conv(p1, p2, q_b)`. The triangulation of their hull that uses this
/// segment is `Cay([p1,u], q)`, `Cay([p2,u], q)` and `conv(u, p1, p2, q_a)`;
/// it covers `T`, which lies in the other triangulation. The crossing pair is
/// found by exact intersection tests and must be unique.
pub fn split_22(t: &Simplex3, side: Side, u: IntPoint2) -> Result<Split> {
    let fr = StripFrame::of_simplex(t)?;
    if fr.w < 2 {
        return Err(Error::Precondition(format!("{t} is unimodular")));
    }
    if !t.is_empty() {
        return Err(Error::Precondition(format!("{t} is not empty")));
    }
    let (a, b, c, d) = (fr.p1.lift(0), fr.p2.lift(0), fr.q1.lift(1), fr.q2.lift(1));
    // `base` is the segment the witness extends, `other` the opposite one.
    let (uu, base, other) = match side {
        Side::PStrip if fr.in_p_strip(u) => (u.lift(0), [a, b], [c, d]),
        Side::QStrip if fr.in_q_strip(u) => (u.lift(1), [c, d], [a, b]),
        _ => return Err(Error::Precondition(format!("{u} is not in the open {side} of {t}"))),
    };
    let left = Simplex3::new([base[0], uu, other[0], other[1]])?;
    let right = Simplex3::new([base[1], uu, other[0], other[1]])?;

    let mut apexes = Vec::new();
    for (ia, ib) in [(0, 1), (1, 0)] {
        let seg = [uu.to_rat(), other[ia].to_rat()];
        let tri = [base[0].to_rat(), base[1].to_rat(), other[ib].to_rat()];
        if segment_triangle_intersect(&seg, &tri)? {
            apexes.push(other[ia]);
        }
    }
    if apexes.len() != 1 {
        return Err(Error::SplitAmbiguous(apexes.len()));
    }
    let cap = Simplex3::new([uu, base[0], base[1], apexes[0]])?;

    let (vl, vr, vt) = (left.normalized_volume(), right.normalized_volume(), t.normalized_volume());
    if vl + vr != vt || vl < 1 || vr < 1 {
        return Err(Error::Internal(format!("split of {t} at {u}: volumes {vl} + {vr} != {vt}")));
    }
    Ok(Split { left, right, cap })
}

/// Covers `Cay(P, Q)`. With `force`, the weak-summand check is skipped and a
/// missing strip witness surfaces as [`Error::NoStripWitness`].
pub fn cover_cayley(spec: &CayleySpec, force: bool) -> Result<Cover> {
    if !force && !normal_fan_refines(&spec.q, &spec.p) {
        return Err(Error::FanNotRefined);
    }
    let body = cayley_embed(spec)?;
    let depth_limit = body.normalized_volume() as usize;
    let mut cover = Cover::new("cayley");
    let mut work: Vec<(Simplex3, String, usize)> = empty_triangulation(&body)?
        .into_iter()
        .enumerate()
        .map(|(n, s)| (s, format!("tri{n}"), 0))
        .collect();
    while let Some((s, trace, depth)) = work.pop() {
        if depth > depth_limit {
            return Err(Error::Internal(format!("recursion depth {depth} exceeds volume bound {depth_limit}")));
        }
        cover.max_depth = cover.max_depth.max(depth);
        if s.is_unimodular() {
            if !s.vertices().iter().all(|&v| body.contains(v)) {
                return Err(Error::Internal(format!("{s} leaves the Cayley body")));
            }
            cover.insert(s, trace);
            continue;
        }
        let ty = classify_type(&s)?;
        if ty != CayleyType::TwoTwo {
            return Err(Error::Internal(format!("empty {ty} tetrahedron {s} is not unimodular")));
        }
        let frame = StripFrame::of_simplex(&s)?;
        let (side, u) = find_strip_witness(&frame, &spec.p, &spec.q)?;
        let split = split_22(&s, side, u)?;
        for (name, piece) in ["l", "r", "c"].into_iter().zip(split.pieces()) {
            for (k, e) in refine_to_empty(&piece).into_iter().enumerate() {
                work.push((e, format!("{trace}/{side}{u}{name}{k}"), depth + 1));
            }
        }
    }
    Ok(cover)
}

/// `conv(Q1 x {0} u Q2 x {k})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrismatoidSpec {
    pub q1: Polygon2,
    pub q2: Polygon2,
    pub k: i64,
}

impl PrismatoidSpec {
    pub fn new(q1: Polygon2, q2: Polygon2, k: i64) -> Result<PrismatoidSpec> {
        if k < 1 {
            return Err(Error::InvalidInput(format!("prismatoid height must be at least 1, got {k}")));
        }
        Ok(PrismatoidSpec { q1, q2, k })
    }

    pub fn body(&self) -> Result<Body3> {
        let mut pts: Vec<IntPoint3> = self.q1.vertices().iter().map(|v| v.lift(0)).collect();
        pts.extend(self.q2.vertices().iter().map(|v| v.lift(self.k)));
        Body3::hull(&pts)
    }

    /// The lattice polygons at heights `0..=k`.
    pub fn slices(&self) -> Result<Vec<Polygon2>> {
        let body = self.body()?;
        let mut out = Vec::new();
        for h in 0..=self.k {
            let (poly, _) = slice_z(&body, h)?;
            match poly.to_lattice() {
                Some(p) => out.push(p),
                None => {
                    let v = poly.first_non_lattice().expect("non-lattice slice has a rational vertex");
                    return Err(Error::SliceNotLattice { height: h, vertex: v.to_string() });
                }
            }
        }
        Ok(out)
    }
}

/// Covers a prismatoid slab by slab. Each slab between consecutive integer
/// heights is a Cayley sum, oriented so that its summand condition holds;
/// the lower slice is preferred as `P` when both orientations work.
pub fn cover_prismatoid(spec: &PrismatoidSpec) -> Result<Cover> {
    if spec.k >= 2 {
        let (mid, lattice) = slice_z(&spec.body()?, 1)?;
        if !lattice {
            let v = mid.first_non_lattice().expect("non-lattice slice has a rational vertex");
            return Err(Error::SliceNotLattice { height: 1, vertex: v.to_string() });
        }
    }
    let slices = spec.slices()?;
    let mut cover = Cover::new("prismatoid");
    for i in 1..=spec.k {
        let (lower, upper) = (&slices[(i - 1) as usize], &slices[i as usize]);
        let slab = if upper.dim() == 2 && normal_fan_refines(upper, lower) {
            let c = cover_cayley(&CayleySpec::new(lower.clone(), upper.clone())?, false)?;
            c.map(&format!("slab{i}/"), |s| s.translate(IntPoint3::new(0, 0, i - 1)))
        } else if lower.dim() == 2 && normal_fan_refines(lower, upper) {
            let c = cover_cayley(&CayleySpec::new(upper.clone(), lower.clone())?, false)?;
            c.map(&format!("slab{i}~/"), |s| {
                Simplex3::new(s.vertices().map(|v| IntPoint3::new(v.x, v.y, i - v.z))).expect("reflection keeps volume")
            })
        } else {
            return Err(Error::Orientation { lower: i - 1, upper: i });
        };
        cover.merge(slab);
    }
    Ok(cover)
}

/// Covers `k * P` for a lattice polytope `P` with all vertices at heights 0
/// and 1, through the prismatoid `conv(kQ1 x {0} u kQ2 x {k})`.
pub fn cover_width1_dilation(p: &Body3, k: i64) -> Result<Cover> {
    if k < 2 {
        return Err(Error::InvalidInput(format!("dilation factor must be at least 2, got {k}")));
    }
    let (q1, q2) = cayley_levels(p)?;
    cover_prismatoid(&PrismatoidSpec::new(q1.dilate(k)?, q2.dilate(k)?, k)?)
}

/// The two level polygons of a body in Cayley position.
pub fn cayley_levels(p: &Body3) -> Result<(Polygon2, Polygon2)> {
    if p.vertices().iter().any(|v| v.z != 0 && v.z != 1) {
        return Err(Error::Precondition("body is not in Cayley position (vertex heights must be 0 or 1)".into()));
    }
    let lo: Vec<IntPoint2> = p.vertices().iter().filter(|v| v.z == 0).map(|v| v.xy()).collect();
    let hi: Vec<IntPoint2> = p.vertices().iter().filter(|v| v.z == 1).map(|v| v.xy()).collect();
    Ok((Polygon2::hull(&lo)?, Polygon2::hull(&hi)?))
}

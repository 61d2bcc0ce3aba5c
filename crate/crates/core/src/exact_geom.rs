//! Exact integer and rational primitives.
//!
//! Lattice coordinates are `i64`; every product that can grow (determinants,
//! functional evaluations) is carried in `i128`. Rationals are
//! `Ratio<i128>` kept in lowest terms. Overflow checks are enabled in every
//! build profile of the workspace, so arithmetic never wraps silently.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = Ratio<i128>;

pub fn rat(n: i128) -> Rat {
    Rat::from_integer(n)
}

pub(crate) fn narrow(v: i128) -> i64 {
    i64::try_from(v).expect("lattice coordinate exceeds i64")
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPoint3 {
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

/// Lattice vectors share the point representation.
pub type IntVec3 = IntPoint3;

impl IntPoint3 {
    pub const ORIGIN: IntPoint3 = IntPoint3 { x: 0, y: 0, z: 0 };

    pub const fn new(x: i64, y: i64, z: i64) -> Self {
        IntPoint3 { x, y, z }
    }

    pub fn to_array(self) -> [i64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(self, o: IntPoint3) -> i128 {
        self.x as i128 * o.x as i128 + self.y as i128 * o.y as i128 + self.z as i128 * o.z as i128
    }

    pub fn cross(self, o: IntPoint3) -> IntPoint3 {
        let (ax, ay, az) = (self.x as i128, self.y as i128, self.z as i128);
        let (bx, by, bz) = (o.x as i128, o.y as i128, o.z as i128);
        IntPoint3::new(
            narrow(ay * bz - az * by),
            narrow(az * bx - ax * bz),
            narrow(ax * by - ay * bx),
        )
    }

    pub fn scale(self, k: i64) -> IntPoint3 {
        IntPoint3::new(self.x * k, self.y * k, self.z * k)
    }

    pub fn is_zero(self) -> bool {
        self == IntPoint3::ORIGIN
    }

    pub fn to_rat(self) -> RatPoint3 {
        RatPoint3::from(self)
    }

    pub fn xy(self) -> IntPoint2 {
        IntPoint2::new(self.x, self.y)
    }
}

impl From<[i64; 3]> for IntPoint3 {
    fn from(a: [i64; 3]) -> Self {
        IntPoint3::new(a[0], a[1], a[2])
    }
}

impl Add for IntPoint3 {
    type Output = IntPoint3;
    fn add(self, o: IntPoint3) -> IntPoint3 {
        IntPoint3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for IntPoint3 {
    type Output = IntPoint3;
    fn sub(self, o: IntPoint3) -> IntPoint3 {
        IntPoint3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for IntPoint3 {
    type Output = IntPoint3;
    fn neg(self) -> IntPoint3 {
        IntPoint3::new(-self.x, -self.y, -self.z)
    }
}

impl fmt::Display for IntPoint3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPoint2 {
    pub x: i64,
    pub y: i64,
}

impl IntPoint2 {
    pub const ORIGIN: IntPoint2 = IntPoint2 { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        IntPoint2 { x, y }
    }

    pub fn scale(self, k: i64) -> IntPoint2 {
        IntPoint2::new(self.x * k, self.y * k)
    }

    pub fn lift(self, z: i64) -> IntPoint3 {
        IntPoint3::new(self.x, self.y, z)
    }

    pub fn is_zero(self) -> bool {
        self == IntPoint2::ORIGIN
    }

    pub fn to_rat(self) -> RatPoint2 {
        RatPoint2::new(rat(self.x as i128), rat(self.y as i128))
    }
}

impl From<[i64; 2]> for IntPoint2 {
    fn from(a: [i64; 2]) -> Self {
        IntPoint2::new(a[0], a[1])
    }
}

impl Add for IntPoint2 {
    type Output = IntPoint2;
    fn add(self, o: IntPoint2) -> IntPoint2 {
        IntPoint2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for IntPoint2 {
    type Output = IntPoint2;
    fn sub(self, o: IntPoint2) -> IntPoint2 {
        IntPoint2::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for IntPoint2 {
    type Output = IntPoint2;
    fn neg(self) -> IntPoint2 {
        IntPoint2::new(-self.x, -self.y)
    }
}

impl fmt::Display for IntPoint2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatPoint3 {
    pub x: Rat,
    pub y: Rat,
    pub z: Rat,
}

impl RatPoint3 {
    pub fn new(x: Rat, y: Rat, z: Rat) -> Self {
        RatPoint3 { x, y, z }
    }

    pub fn to_lattice(&self) -> Option<IntPoint3> {
        let c = |r: &Rat| r.is_integer().then(|| narrow(r.to_integer()));
        Some(IntPoint3::new(c(&self.x)?, c(&self.y)?, c(&self.z)?))
    }

    pub fn scale(&self, k: Rat) -> RatPoint3 {
        RatPoint3::new(self.x * k, self.y * k, self.z * k)
    }

    pub fn dot(&self, o: &RatPoint3) -> Rat {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    /// Barycenter of a nonempty point list.
    pub fn centroid(points: &[RatPoint3]) -> RatPoint3 {
        let n = rat(points.len() as i128);
        let mut acc = RatPoint3::from(IntPoint3::ORIGIN);
        for p in points {
            acc = &acc + p;
        }
        acc.scale(n.recip())
    }
}

impl From<IntPoint3> for RatPoint3 {
    fn from(p: IntPoint3) -> Self {
        RatPoint3::new(rat(p.x as i128), rat(p.y as i128), rat(p.z as i128))
    }
}

impl Add for &RatPoint3 {
    type Output = RatPoint3;
    fn add(self, o: &RatPoint3) -> RatPoint3 {
        RatPoint3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for &RatPoint3 {
    type Output = RatPoint3;
    fn sub(self, o: &RatPoint3) -> RatPoint3 {
        RatPoint3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<Rat> for &RatPoint3 {
    type Output = RatPoint3;
    fn mul(self, k: Rat) -> RatPoint3 {
        self.scale(k)
    }
}

impl fmt::Display for RatPoint3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatPoint2 {
    pub x: Rat,
    pub y: Rat,
}

impl RatPoint2 {
    pub fn new(x: Rat, y: Rat) -> Self {
        RatPoint2 { x, y }
    }

    pub fn to_lattice(&self) -> Option<IntPoint2> {
        (self.x.is_integer() && self.y.is_integer())
            .then(|| IntPoint2::new(narrow(self.x.to_integer()), narrow(self.y.to_integer())))
    }
}

impl fmt::Display for RatPoint2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Determinant of the matrix with columns `u`, `v`, `w`.
pub fn det3(u: IntVec3, v: IntVec3, w: IntVec3) -> i128 {
    u.dot(v.cross(w))
}

pub fn det2(u: IntPoint2, v: IntPoint2) -> i128 {
    u.x as i128 * v.y as i128 - u.y as i128 * v.x as i128
}

pub fn rat_det3(u: &RatPoint3, v: &RatPoint3, w: &RatPoint3) -> Rat {
    u.x * (v.y * w.z - v.z * w.y) - u.y * (v.x * w.z - v.z * w.x) + u.z * (v.x * w.y - v.y * w.x)
}

/// Signed volume form of `d` relative to the oriented triangle `abc`.
pub fn orient3(a: &RatPoint3, b: &RatPoint3, c: &RatPoint3, d: &RatPoint3) -> Rat {
    rat_det3(&(b - a), &(c - a), &(d - a))
}

fn rat_orient2(a: &RatPoint2, b: &RatPoint2, c: &RatPoint2) -> Rat {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

pub fn orient2(a: IntPoint2, b: IntPoint2, c: IntPoint2) -> i128 {
    det2(b - a, c - a)
}

/// Divides out the content of `v`, keeping its direction.
pub fn primitive(v: IntVec3) -> Result<IntVec3> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let g = v.x.gcd(&v.y).gcd(&v.z);
    Ok(IntPoint3::new(v.x / g, v.y / g, v.z / g))
}

pub fn primitive2(v: IntPoint2) -> Result<IntPoint2> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let g = v.x.gcd(&v.y);
    Ok(IntPoint2::new(v.x / g, v.y / g))
}

/// Number of lattice steps along a segment (its lattice length).
pub fn lattice_length2(v: IntPoint2) -> i64 {
    v.x.gcd(&v.y)
}

pub fn lattice_length3(v: IntVec3) -> i64 {
    v.x.gcd(&v.y).gcd(&v.z)
}

/// Linear functional `x -> a x1 + b x2 + c x3` with integer coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Functional3 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl Functional3 {
    pub const fn new(a: i64, b: i64, c: i64) -> Self {
        Functional3 { a, b, c }
    }

    pub fn normal(self) -> IntVec3 {
        IntPoint3::new(self.a, self.b, self.c)
    }

    pub fn eval(self, p: IntPoint3) -> i128 {
        self.normal().dot(p)
    }

    pub fn eval_rat(self, p: &RatPoint3) -> Rat {
        p.x * rat(self.a as i128) + p.y * rat(self.b as i128) + p.z * rat(self.c as i128)
    }

    pub fn is_zero(self) -> bool {
        self.normal().is_zero()
    }

    pub fn is_primitive(self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c) == 1
    }

    pub fn primitive(self) -> Result<Functional3> {
        let n = primitive(self.normal())?;
        Ok(Functional3::new(n.x, n.y, n.z))
    }

    /// `f ∘ M` for a 3×3 integer matrix, i.e. the row vector `f^T M`.
    pub fn compose(self, m: &[[i64; 3]; 3]) -> Functional3 {
        let f = [self.a, self.b, self.c];
        let col = |j: usize| (0..3).map(|i| f[i] * m[i][j]).sum::<i64>();
        Functional3::new(col(0), col(1), col(2))
    }
}

impl From<IntVec3> for Functional3 {
    fn from(v: IntVec3) -> Self {
        Functional3::new(v.x, v.y, v.z)
    }
}

impl Neg for Functional3 {
    type Output = Functional3;
    fn neg(self) -> Functional3 {
        Functional3::new(-self.a, -self.b, -self.c)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Functional2 {
    pub a: i64,
    pub b: i64,
}

impl Functional2 {
    pub const fn new(a: i64, b: i64) -> Self {
        Functional2 { a, b }
    }

    pub fn eval(self, p: IntPoint2) -> i128 {
        self.a as i128 * p.x as i128 + self.b as i128 * p.y as i128
    }

    pub fn eval_rat(self, p: &RatPoint2) -> Rat {
        p.x * rat(self.a as i128) + p.y * rat(self.b as i128)
    }

    pub fn is_primitive(self) -> bool {
        self.a.gcd(&self.b) == 1
    }

    /// The primitive functional vanishing on direction `v`.
    pub fn vanishing_on(v: IntPoint2) -> Result<Functional2> {
        let n = primitive2(IntPoint2::new(-v.y, v.x))?;
        Ok(Functional2::new(n.x, n.y))
    }
}

/// Closed half-space `f(x) <= bound`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HalfSpace3 {
    pub f: Functional3,
    pub bound: Rat,
}

impl HalfSpace3 {
    pub fn new(f: Functional3, bound: Rat) -> Self {
        HalfSpace3 { f, bound }
    }

    pub fn contains(&self, p: IntPoint3) -> bool {
        rat(self.f.eval(p)) <= self.bound
    }

    pub fn contains_rat(&self, p: &RatPoint3) -> bool {
        self.f.eval_rat(p) <= self.bound
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HalfSpace2 {
    pub f: Functional2,
    pub bound: Rat,
}

impl HalfSpace2 {
    pub fn new(f: Functional2, bound: Rat) -> Self {
        HalfSpace2 { f, bound }
    }

    pub fn contains(&self, p: IntPoint2) -> bool {
        rat(self.f.eval(p)) <= self.bound
    }

    pub fn contains_rat(&self, p: &RatPoint2) -> bool {
        self.f.eval_rat(p) <= self.bound
    }
}

fn solve3(rows: [&HalfSpace3; 3]) -> Option<RatPoint3> {
    let n: Vec<IntVec3> = rows.iter().map(|h| h.f.normal()).collect();
    let d = det3(n[0], n[1], n[2]);
    if d == 0 {
        return None;
    }
    // Cramer on the transposed system: rows are normals.
    let m = |r: usize, c: usize| -> Rat {
        let v = n[r].to_array()[c];
        rat(v as i128)
    };
    let b = [rows[0].bound, rows[1].bound, rows[2].bound];
    let det_with = |col: usize| -> Rat {
        let e = |r: usize, c: usize| if c == col { b[r] } else { m(r, c) };
        e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0))
            + e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0))
    };
    let dd = rat(d);
    Some(RatPoint3::new(det_with(0) / dd, det_with(1) / dd, det_with(2) / dd))
}

/// Vertices of the polyhedron `{x : h(x) for all h}`, by exhaustive
/// intersection of plane triples. Sorted and deduplicated.
pub fn vertices_of_halfspaces3(hs: &[HalfSpace3]) -> Vec<RatPoint3> {
    let mut out = Vec::new();
    for i in 0..hs.len() {
        for j in i + 1..hs.len() {
            for k in j + 1..hs.len() {
                if let Some(p) = solve3([&hs[i], &hs[j], &hs[k]]) {
                    if hs.iter().all(|h| h.contains_rat(&p)) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

pub(crate) fn rank3(normals: &[IntVec3]) -> usize {
    let nz: Vec<_> = normals.iter().copied().filter(|n| !n.is_zero()).collect();
    let Some(&a) = nz.first() else { return 0 };
    let Some(&b) = nz.iter().find(|&&b| !a.cross(b).is_zero()) else {
        return 1;
    };
    let c = a.cross(b);
    if nz.iter().any(|&w| c.dot(w) != 0) {
        3
    } else {
        2
    }
}

fn bounded3(hs: &[HalfSpace3]) -> bool {
    let normals: Vec<IntVec3> = hs.iter().map(|h| h.f.normal()).collect();
    if rank3(&normals) < 3 {
        return false;
    }
    // A nontrivial pointed recession cone has an extreme ray n_i x n_j.
    for i in 0..normals.len() {
        for j in i + 1..normals.len() {
            let d = normals[i].cross(normals[j]);
            if d.is_zero() {
                continue;
            }
            for dir in [d, -d] {
                if normals.iter().all(|n| n.dot(dir) <= 0) {
                    return false;
                }
            }
        }
    }
    true
}

fn floor(r: Rat) -> i64 {
    narrow(r.floor().to_integer())
}

fn ceil(r: Rat) -> i64 {
    narrow(r.ceil().to_integer())
}

/// All lattice points of a bounded polyhedron given by closed half-spaces,
/// in lexicographic order.
pub fn lattice_points3(hs: &[HalfSpace3]) -> Result<Vec<IntPoint3>> {
    if !bounded3(hs) {
        return Err(Error::Unbounded);
    }
    let verts = vertices_of_halfspaces3(hs);
    if verts.is_empty() {
        return Ok(Vec::new());
    }
    let lo = |sel: fn(&RatPoint3) -> Rat| ceil(verts.iter().map(sel).min().unwrap());
    let hi = |sel: fn(&RatPoint3) -> Rat| floor(verts.iter().map(sel).max().unwrap());
    let (x0, x1) = (lo(|p| p.x), hi(|p| p.x));
    let (y0, y1) = (lo(|p| p.y), hi(|p| p.y));
    let (z0, z1) = (lo(|p| p.z), hi(|p| p.z));
    let mut out = Vec::new();
    for x in x0..=x1 {
        for y in y0..=y1 {
            for z in z0..=z1 {
                let p = IntPoint3::new(x, y, z);
                if hs.iter().all(|h| h.contains(p)) {
                    out.push(p);
                }
            }
        }
    }
    Ok(out)
}

fn bounded2(hs: &[HalfSpace2]) -> bool {
    let normals: Vec<IntPoint2> = hs.iter().map(|h| IntPoint2::new(h.f.a, h.f.b)).collect();
    let Some(&a) = normals.iter().find(|n| !n.is_zero()) else {
        return false;
    };
    if normals.iter().all(|&n| det2(a, n) == 0) {
        return false;
    }
    for &n in &normals {
        if n.is_zero() {
            continue;
        }
        let d = IntPoint2::new(-n.y, n.x);
        for dir in [d, -d] {
            if normals
                .iter()
                .all(|m| m.x as i128 * dir.x as i128 + m.y as i128 * dir.y as i128 <= 0)
            {
                return false;
            }
        }
    }
    true
}

pub fn lattice_points2(hs: &[HalfSpace2]) -> Result<Vec<IntPoint2>> {
    if !bounded2(hs) {
        return Err(Error::Unbounded);
    }
    let mut verts = Vec::new();
    for i in 0..hs.len() {
        for j in i + 1..hs.len() {
            let (a, b) = (&hs[i], &hs[j]);
            let d = a.f.a as i128 * b.f.b as i128 - a.f.b as i128 * b.f.a as i128;
            if d == 0 {
                continue;
            }
            let d = rat(d);
            let x = (a.bound * rat(b.f.b as i128) - b.bound * rat(a.f.b as i128)) / d;
            let y = (b.bound * rat(a.f.a as i128) - a.bound * rat(b.f.a as i128)) / d;
            let p = RatPoint2::new(x, y);
            if hs.iter().all(|h| h.contains_rat(&p)) {
                verts.push(p);
            }
        }
    }
    if verts.is_empty() {
        return Ok(Vec::new());
    }
    let x0 = ceil(verts.iter().map(|p| p.x).min().unwrap());
    let x1 = floor(verts.iter().map(|p| p.x).max().unwrap());
    let y0 = ceil(verts.iter().map(|p| p.y).min().unwrap());
    let y1 = floor(verts.iter().map(|p| p.y).max().unwrap());
    let mut out = Vec::new();
    for x in x0..=x1 {
        for y in y0..=y1 {
            let p = IntPoint2::new(x, y);
            if hs.iter().all(|h| h.contains(p)) {
                out.push(p);
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Membership {
    Closed,
    Open,
}

/// Barycentric coordinates of `p` with respect to the tetrahedron `s`.
pub fn barycentric3(p: &RatPoint3, s: &[RatPoint3; 4]) -> Result<[Rat; 4]> {
    let total = orient3(&s[0], &s[1], &s[2], &s[3]);
    if total.is_zero() {
        return Err(Error::Degenerate("simplex"));
    }
    let l0 = orient3(p, &s[1], &s[2], &s[3]) / total;
    let l1 = orient3(&s[0], p, &s[2], &s[3]) / total;
    let l2 = orient3(&s[0], &s[1], p, &s[3]) / total;
    let l3 = orient3(&s[0], &s[1], &s[2], p) / total;
    Ok([l0, l1, l2, l3])
}

pub fn point_in_simplex(p: &RatPoint3, s: &[RatPoint3; 4], mode: Membership) -> Result<bool> {
    let l = barycentric3(p, s)?;
    Ok(match mode {
        Membership::Closed => l.iter().all(|c| !c.is_negative()),
        Membership::Open => l.iter().all(|c| c.is_positive()),
    })
}

pub fn point_in_lattice_simplex(p: &RatPoint3, s: &[IntPoint3; 4], mode: Membership) -> Result<bool> {
    let r = [s[0].to_rat(), s[1].to_rat(), s[2].to_rat(), s[3].to_rat()];
    point_in_simplex(p, &r, mode)
}

/// Lattice points of a closed tetrahedron with rational vertices, in
/// lexicographic order.
pub fn rat_simplex_lattice_points(s: &[RatPoint3; 4]) -> Result<Vec<IntPoint3>> {
    let lo = |sel: fn(&RatPoint3) -> Rat| ceil(s.iter().map(sel).min().unwrap());
    let hi = |sel: fn(&RatPoint3) -> Rat| floor(s.iter().map(sel).max().unwrap());
    let mut out = Vec::new();
    for x in lo(|p| p.x)..=hi(|p| p.x) {
        for y in lo(|p| p.y)..=hi(|p| p.y) {
            for z in lo(|p| p.z)..=hi(|p| p.z) {
                let p = IntPoint3::new(x, y, z);
                if point_in_simplex(&p.to_rat(), s, Membership::Closed)? {
                    out.push(p);
                }
            }
        }
    }
    Ok(out)
}

/// Drops the coordinate along which `n` is largest in absolute value.
fn project(p: &RatPoint3, drop: usize) -> RatPoint2 {
    match drop {
        0 => RatPoint2::new(p.y, p.z),
        1 => RatPoint2::new(p.x, p.z),
        _ => RatPoint2::new(p.x, p.y),
    }
}

fn in_triangle2(p: &RatPoint2, t: &[RatPoint2; 3]) -> bool {
    let d0 = rat_orient2(&t[0], &t[1], p);
    let d1 = rat_orient2(&t[1], &t[2], p);
    let d2 = rat_orient2(&t[2], &t[0], p);
    let neg = d0.is_negative() || d1.is_negative() || d2.is_negative();
    let pos = d0.is_positive() || d1.is_positive() || d2.is_positive();
    !(neg && pos)
}

fn on_segment2(p: &RatPoint2, a: &RatPoint2, b: &RatPoint2) -> bool {
    rat_orient2(a, b, p).is_zero()
        && p.x >= a.x.min(b.x)
        && p.x <= a.x.max(b.x)
        && p.y >= a.y.min(b.y)
        && p.y <= a.y.max(b.y)
}

fn segments_meet2(a: &RatPoint2, b: &RatPoint2, c: &RatPoint2, d: &RatPoint2) -> bool {
    let o1 = rat_orient2(a, b, c);
    let o2 = rat_orient2(a, b, d);
    let o3 = rat_orient2(c, d, a);
    let o4 = rat_orient2(c, d, b);
    let sgn = |r: Rat| r.signum();
    if sgn(o1) * sgn(o2) < rat(0) && sgn(o3) * sgn(o4) < rat(0) {
        return true;
    }
    on_segment2(c, a, b) || on_segment2(d, a, b) || on_segment2(a, c, d) || on_segment2(b, c, d)
}

/// Whether the closed segment meets the closed triangle.
pub fn segment_triangle_intersect(seg: &[RatPoint3; 2], tri: &[RatPoint3; 3]) -> Result<bool> {
    let normal_cross = {
        let u = &tri[1] - &tri[0];
        let v = &tri[2] - &tri[0];
        [
            u.y * v.z - u.z * v.y,
            u.z * v.x - u.x * v.z,
            u.x * v.y - u.y * v.x,
        ]
    };
    if normal_cross.iter().all(|c| c.is_zero()) {
        return Err(Error::Degenerate("triangle"));
    }
    let drop = (0..3).max_by_key(|&i| normal_cross[i].abs()).unwrap();
    let t2 = [project(&tri[0], drop), project(&tri[1], drop), project(&tri[2], drop)];

    let oa = orient3(&tri[0], &tri[1], &tri[2], &seg[0]);
    let ob = orient3(&tri[0], &tri[1], &tri[2], &seg[1]);
    if (oa.is_positive() && ob.is_positive()) || (oa.is_negative() && ob.is_negative()) {
        return Ok(false);
    }
    if oa.is_zero() && ob.is_zero() {
        let a = project(&seg[0], drop);
        let b = project(&seg[1], drop);
        if in_triangle2(&a, &t2) || in_triangle2(&b, &t2) {
            return Ok(true);
        }
        return Ok((0..3).any(|i| segments_meet2(&a, &b, &t2[i], &t2[(i + 1) % 3])));
    }
    let t = oa / (oa - ob);
    let x = &seg[0] + &(&(&seg[1] - &seg[0]) * t);
    Ok(in_triangle2(&project(&x, drop), &t2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3(x: i64, y: i64, z: i64) -> IntPoint3 {
        IntPoint3::new(x, y, z)
    }

    fn r(n: i128, d: i128) -> Rat {
        Rat::new(n, d)
    }

    fn box_halfspaces(lo: [i64; 3], hi: [i64; 3]) -> Vec<HalfSpace3> {
        let mut hs = Vec::new();
        for i in 0..3 {
            let mut e = [0; 3];
            e[i] = 1;
            hs.push(HalfSpace3::new(Functional3::new(e[0], e[1], e[2]), rat(hi[i] as i128)));
            hs.push(HalfSpace3::new(-Functional3::new(e[0], e[1], e[2]), rat(-lo[i] as i128)));
        }
        hs
    }

    fn simplex_halfspaces(v: [IntPoint3; 4]) -> Vec<HalfSpace3> {
        let mut hs = Vec::new();
        for i in 0..4 {
            let f: Vec<IntPoint3> = (0..4).filter(|&j| j != i).map(|j| v[j]).collect();
            let mut n = (f[1] - f[0]).cross(f[2] - f[0]);
            if n.dot(v[i] - f[0]) > 0 {
                n = -n;
            }
            hs.push(HalfSpace3::new(Functional3::from(n), rat(n.dot(f[0]))));
        }
        hs
    }

    #[test]
    fn det3_examples() {
        assert_eq!(det3(p3(1, 0, 0), p3(0, 1, 0), p3(0, 0, 1)), 1);
        assert_eq!(det3(p3(1, 1, 0), p3(1, 0, 1), p3(0, 1, 1)), -2);
        assert_eq!(det3(p3(1, 0, 0), p3(0, 0, 1), p3(3, 7, 1)).abs(), 7);
    }

    #[test]
    fn primitive_examples() {
        assert_eq!(primitive(p3(2, 4, 6)).unwrap(), p3(1, 2, 3));
        assert_eq!(primitive(p3(0, -5, 0)).unwrap(), p3(0, -1, 0));
        assert_eq!(primitive(p3(1, 0, 0)).unwrap(), p3(1, 0, 0));
        assert_eq!(primitive(p3(0, 0, 0)), Err(Error::ZeroVector));
    }

    #[test]
    fn lattice_points_cube_and_white() {
        let cube = lattice_points3(&box_halfspaces([0; 3], [1; 3])).unwrap();
        assert_eq!(cube.len(), 8);

        let verts = [p3(0, 0, 0), p3(1, 0, 0), p3(0, 0, 1), p3(3, 7, 1)];
        let mut pts = lattice_points3(&simplex_halfspaces(verts)).unwrap();
        pts.sort();
        let mut expect = verts.to_vec();
        expect.sort();
        assert_eq!(pts, expect);
    }

    #[test]
    fn lattice_points_rational_corner() {
        // Corner T_3 = conv(q3, p1, p2, p4) of C(T(1,2)); q3 = (1,1,0) is integral.
        let q3 = RatPoint3::new(rat(1), rat(1), rat(0));
        let hs = {
            let v = [q3.to_lattice().unwrap(), p3(0, 0, 0), p3(1, 0, 0), p3(1, 2, 1)];
            simplex_halfspaces(v)
        };
        let pts = lattice_points3(&hs).unwrap();
        assert!(pts.contains(&p3(1, 1, 0)));
    }

    #[test]
    fn lattice_points_rejects_unbounded() {
        let hs = vec![HalfSpace3::new(Functional3::new(1, 0, 0), rat(1))];
        assert_eq!(lattice_points3(&hs), Err(Error::Unbounded));
        let mut slab = box_halfspaces([0; 3], [1; 3]);
        slab.pop();
        assert_eq!(lattice_points3(&slab), Err(Error::Unbounded));
    }

    #[test]
    fn lattice_points2_triangle() {
        let hs = vec![
            HalfSpace2::new(Functional2::new(-1, 0), rat(0)),
            HalfSpace2::new(Functional2::new(0, -1), rat(0)),
            HalfSpace2::new(Functional2::new(1, 1), r(5, 2)),
        ];
        assert_eq!(lattice_points2(&hs).unwrap().len(), 6);
    }

    #[test]
    fn simplex_membership() {
        let s = [p3(0, 0, 0), p3(1, 0, 0), p3(0, 1, 0), p3(0, 0, 1)].map(RatPoint3::from);
        let c = RatPoint3::centroid(&s);
        assert!(point_in_simplex(&c, &s, Membership::Open).unwrap());
        assert!(point_in_simplex(&s[2], &s, Membership::Closed).unwrap());
        assert!(!point_in_simplex(&s[2], &s, Membership::Open).unwrap());

        let t = [p3(1, 1, 0), p3(0, 0, 0), p3(1, 0, 0), p3(1, 2, 1)].map(RatPoint3::from);
        assert!(point_in_simplex(&p3(1, 1, 0).to_rat(), &t, Membership::Closed).unwrap());

        let flat = [p3(0, 0, 0), p3(1, 0, 0), p3(2, 0, 0), p3(0, 1, 0)].map(RatPoint3::from);
        assert!(point_in_simplex(&c, &flat, Membership::Closed).is_err());
    }

    #[test]
    fn segment_triangle_cases() {
        let tri = [p3(0, 0, 0), p3(3, 0, 0), p3(0, 3, 0)].map(RatPoint3::from);
        let through = [RatPoint3::new(rat(1), rat(1), rat(-1)), RatPoint3::new(rat(1), rat(1), rat(1))];
        assert!(segment_triangle_intersect(&through, &tri).unwrap());
        let parallel = [p3(0, 0, 1), p3(1, 1, 1)].map(RatPoint3::from);
        assert!(!segment_triangle_intersect(&parallel, &tri).unwrap());
        let coplanar_cross = [p3(-1, 1, 0), p3(4, 1, 0)].map(RatPoint3::from);
        assert!(segment_triangle_intersect(&coplanar_cross, &tri).unwrap());
        let coplanar_miss = [p3(3, 3, 0), p3(5, 1, 0)].map(RatPoint3::from);
        assert!(!segment_triangle_intersect(&coplanar_miss, &tri).unwrap());
        let touching = [p3(3, 0, 0), p3(3, 0, 5)].map(RatPoint3::from);
        assert!(segment_triangle_intersect(&touching, &tri).unwrap());
        let degenerate = [p3(0, 0, 0), p3(1, 1, 1), p3(2, 2, 2)].map(RatPoint3::from);
        assert!(segment_triangle_intersect(&through, &degenerate).is_err());
    }
}

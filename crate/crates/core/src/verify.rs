//! Certification of unimodular covers.
//!
//! Coverage is decided exactly by peeling: a worklist holds convex cells
//! (rational polyhedra) paired with the simplices still allowed to cover
//! them. A cell is clipped by the facet planes of the next simplex that
//! meets its interior; the part inside the simplex is discarded as covered
//! and every outside part goes back on the worklist with the remaining
//! simplices. A full-dimensional cell that runs out of simplices is
//! uncovered, and its vertex average is an interior witness.

use std::collections::BTreeSet;
use std::rc::Rc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_geom::{IntPoint3, IntVec3, Membership, Rat, RatPoint3};
use crate::polytope::Body3;
use crate::triangulate::Simplex3;

pub const DEFAULT_CELL_BUDGET: usize = 1_000_000;
pub const DEFAULT_GRID_RESOLUTION: u32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VerifyMode {
    /// Check every point of `(1/M) Z^3` in the target. Not a proof.
    Grid(u32),
    /// Cell peeling; decides coverage.
    Exact,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub cell_budget: usize,
    /// Assert exact volume conservation at every clip.
    pub check_conservation: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { cell_budget: DEFAULT_CELL_BUDGET, check_conservation: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coverage {
    Covered,
    Uncovered(RatPoint3),
    BudgetExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub n_simplices: usize,
    pub all_unimodular: bool,
    pub first_non_unimodular: Option<usize>,
    pub all_contained: bool,
    pub first_uncontained: Option<usize>,
    pub coverage: Coverage,
    pub mode: VerifyMode,
    pub cells_processed: usize,
    pub grid_points_checked: usize,
    /// Grid verdict computed when the exact budget ran out.
    pub fallback: Option<Coverage>,
}

impl VerifyReport {
    pub fn is_verified(&self) -> bool {
        self.all_unimodular && self.all_contained && self.coverage == Coverage::Covered
    }

    pub fn label(&self) -> String {
        match self.mode {
            VerifyMode::Grid(m) => format!("grid certification at resolution {m}"),
            VerifyMode::Exact => "exact cell peeling".to_string(),
        }
    }
}

/// Closed half-space `n . x <= d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Plane {
    n: IntVec3,
    d: i128,
}

impl Plane {
    fn flipped(self) -> Plane {
        Plane { n: -self.n, d: -self.d }
    }

    /// Sign of `n . p - d` at a homogeneous point (`w > 0`).
    fn side(&self, p: &HPoint) -> std::cmp::Ordering {
        let v = self.n.x as i128 * p.x + self.n.y as i128 * p.y + self.n.z as i128 * p.z - self.d * p.w;
        v.cmp(&0)
    }
}

/// Rational point `(x, y, z) / w` with `w > 0` and no common factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct HPoint {
    x: i128,
    y: i128,
    z: i128,
    w: i128,
}

impl HPoint {
    fn new(x: i128, y: i128, z: i128, w: i128) -> HPoint {
        let s = if w < 0 { -1 } else { 1 };
        let g = x.gcd(&y).gcd(&z).gcd(&w);
        HPoint { x: s * x / g, y: s * y / g, z: s * z / g, w: s * w / g }
    }

    fn big(&self) -> [BigRational; 3] {
        let w = BigInt::from(self.w);
        [
            BigRational::new(BigInt::from(self.x), w.clone()),
            BigRational::new(BigInt::from(self.y), w.clone()),
            BigRational::new(BigInt::from(self.z), w),
        ]
    }

    fn floor_ceil(&self) -> ([i128; 3], [i128; 3]) {
        let c = [self.x, self.y, self.z];
        (c.map(|v| Integer::div_floor(&v, &self.w)), c.map(|v| Integer::div_ceil(&v, &self.w)))
    }
}

fn det3_i128(a: [i128; 3], b: [i128; 3], c: [i128; 3]) -> i128 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0])
}

fn intersect(p: &Plane, q: &Plane, r: &Plane) -> Option<HPoint> {
    let row = |pl: &Plane| [pl.n.x as i128, pl.n.y as i128, pl.n.z as i128];
    let (a, b, c) = (row(p), row(q), row(r));
    let det = det3_i128(a, b, c);
    if det == 0 {
        return None;
    }
    let with = |col: usize| {
        let mut a2 = a;
        let mut b2 = b;
        let mut c2 = c;
        a2[col] = p.d;
        b2[col] = q.d;
        c2[col] = r.d;
        det3_i128(a2, b2, c2)
    };
    Some(HPoint::new(with(0), with(1), with(2), det))
}

#[derive(Clone, Debug)]
struct Cell {
    planes: Vec<Plane>,
    vertices: Vec<HPoint>,
}

impl Cell {
    /// Builds the cell from planes; `None` when it is not full-dimensional.
    fn from_planes(mut planes: Vec<Plane>) -> Option<Cell> {
        planes.sort();
        planes.dedup();
        let mut verts: BTreeSet<HPoint> = BTreeSet::new();
        let m = planes.len();
        for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    if let Some(p) = intersect(&planes[i], &planes[j], &planes[k]) {
                        if planes.iter().all(|pl| pl.side(&p).is_le()) {
                            verts.insert(p);
                        }
                    }
                }
            }
        }
        Cell::from_parts(planes, verts.into_iter().collect())
    }

    fn from_parts(planes: Vec<Plane>, vertices: Vec<HPoint>) -> Option<Cell> {
        if vertices.len() < 4 {
            return None;
        }
        // Full-dimensional iff no constraint is an implicit equality.
        for pl in &planes {
            if vertices.iter().all(|v| pl.side(v).is_eq()) {
                return None;
            }
        }
        let planes = planes
            .into_iter()
            .filter(|pl| vertices.iter().filter(|v| pl.side(v).is_eq()).count() >= 3)
            .collect();
        Some(Cell { planes, vertices })
    }

    fn bbox(&self) -> ([i128; 3], [i128; 3]) {
        let mut lo = [i128::MAX; 3];
        let mut hi = [i128::MIN; 3];
        for v in &self.vertices {
            let (f, c) = v.floor_ceil();
            for k in 0..3 {
                lo[k] = lo[k].min(f[k]);
                hi[k] = hi[k].max(c[k]);
            }
        }
        (lo, hi)
    }

    /// Intersection with the half-space `pl`. New vertices arise where an
    /// edge crosses the plane, i.e. on the plane and two facet planes.
    fn clip(&self, pl: Plane) -> Option<Cell> {
        let sides: Vec<std::cmp::Ordering> = self.vertices.iter().map(|v| pl.side(v)).collect();
        if sides.iter().all(|o| o.is_le()) {
            return Some(self.clone());
        }
        if !sides.iter().any(|o| o.is_lt()) {
            return None;
        }
        let mut verts: BTreeSet<HPoint> =
            self.vertices.iter().zip(&sides).filter(|(_, o)| o.is_le()).map(|(v, _)| *v).collect();
        let m = self.planes.len();
        for i in 0..m {
            for j in i + 1..m {
                if let Some(p) = intersect(&self.planes[i], &self.planes[j], &pl) {
                    if self.planes.iter().all(|q| q.side(&p).is_le()) {
                        verts.insert(p);
                    }
                }
            }
        }
        let mut planes = self.planes.clone();
        planes.push(pl);
        Cell::from_parts(planes, verts.into_iter().collect())
    }

    fn witness(&self) -> BigPoint {
        let n = BigRational::from_integer(BigInt::from(self.vertices.len()));
        let mut acc = [BigRational::zero(), BigRational::zero(), BigRational::zero()];
        for v in &self.vertices {
            let b = v.big();
            for k in 0..3 {
                acc[k] += &b[k];
            }
        }
        acc.map(|c| c / &n)
    }

    /// Six times the euclidean volume.
    fn volume6(&self) -> BigRational {
        let pts: Vec<[BigRational; 3]> = self.vertices.iter().map(HPoint::big).collect();
        let apex = &pts[0];
        let mut total = BigRational::zero();
        for pl in &self.planes {
            if pl.side(&self.vertices[0]).is_eq() {
                continue;
            }
            let mut face: Vec<usize> =
                (0..self.vertices.len()).filter(|&i| pl.side(&self.vertices[i]).is_eq()).collect();
            if face.len() < 3 {
                continue;
            }
            let anchor = face.remove(0);
            let normal = [pl.n.x, pl.n.y, pl.n.z].map(|c| BigRational::from_integer(BigInt::from(c)));
            face.sort_by(|&a, &b| {
                let s = dot(&normal, &cross(&sub(&pts[a], &pts[anchor]), &sub(&pts[b], &pts[anchor])));
                BigRational::zero().cmp(&s)
            });
            for w in face.windows(2) {
                let d = dot(
                    &sub(&pts[anchor], apex),
                    &cross(&sub(&pts[w[0]], apex), &sub(&pts[w[1]], apex)),
                );
                total += d.abs();
            }
        }
        total
    }
}

type BigPoint = [BigRational; 3];

fn sub(a: &BigPoint, b: &BigPoint) -> BigPoint {
    [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2]]
}

fn cross(a: &BigPoint, b: &BigPoint) -> BigPoint {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn dot(a: &BigPoint, b: &BigPoint) -> BigRational {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

fn to_rat(c: &BigRational) -> Result<Rat> {
    let n = i128::try_from(c.numer()).map_err(|_| Error::ResourceLimit("witness coordinate exceeds i128".into()))?;
    let d = i128::try_from(c.denom()).map_err(|_| Error::ResourceLimit("witness coordinate exceeds i128".into()))?;
    Ok(Rat::new(n, d))
}

struct PreparedSimplex {
    planes: [Plane; 4],
    lo: [i128; 3],
    hi: [i128; 3],
}

impl PreparedSimplex {
    fn new(s: &Simplex3) -> PreparedSimplex {
        let planes = s.facet_planes().map(|(n, d)| Plane { n, d });
        let (lo, hi) = s.bounding_box();
        PreparedSimplex {
            planes,
            lo: [lo.x as i128, lo.y as i128, lo.z as i128],
            hi: [hi.x as i128, hi.y as i128, hi.z as i128],
        }
    }

    /// Whether the simplex cannot meet the interior of the cell.
    fn misses(&self, cell: &Cell, bbox: &([i128; 3], [i128; 3])) -> bool {
        if (0..3).any(|k| self.hi[k] < bbox.0[k] || self.lo[k] > bbox.1[k]) {
            return true;
        }
        self.planes.iter().any(|pl| cell.vertices.iter().all(|v| pl.side(v).is_ge()))
    }
}

fn body_planes(target: &Body3) -> Vec<Plane> {
    target
        .facets()
        .iter()
        .map(|f| Plane { n: f.f.normal(), d: f.bound as i128 })
        .collect()
}

fn peel(target: &Body3, cover: &[Simplex3], opts: &VerifyOptions) -> Result<(Coverage, usize)> {
    let prepared: Vec<PreparedSimplex> = cover.iter().map(PreparedSimplex::new).collect();
    let root = Cell::from_planes(body_planes(target)).ok_or(Error::Degenerate("target"))?;
    // Each item is a cell with the simplices that may still meet it.
    let all: Rc<Vec<usize>> = Rc::new((0..prepared.len()).collect());
    let mut work: Vec<(Cell, Rc<Vec<usize>>)> = vec![(root, all)];
    let mut processed = 0usize;
    while let Some((cell, cands)) = work.pop() {
        processed += 1;
        if processed > opts.cell_budget {
            return Ok((Coverage::BudgetExceeded, processed));
        }
        let bbox = cell.bbox();
        let live: Vec<usize> = cands.iter().copied().filter(|&i| !prepared[i].misses(&cell, &bbox)).collect();
        if live.is_empty() {
            let w = cell.witness();
            let p = RatPoint3::new(to_rat(&w[0])?, to_rat(&w[1])?, to_rat(&w[2])?);
            return Ok((Coverage::Uncovered(p), processed));
        }
        // Peel with the simplex holding the most vertices of the cell; one
        // holding all of them covers the cell outright.
        let held = |i: usize| {
            cell.vertices.iter().filter(|v| prepared[i].planes.iter().all(|pl| pl.side(v).is_le())).count()
        };
        let (first, count) = live
            .iter()
            .map(|&i| (i, held(i)))
            .max_by_key(|&(i, c)| (c, std::cmp::Reverse(i)))
            .expect("live is nonempty");
        if count == cell.vertices.len() {
            continue;
        }
        let before = opts.check_conservation.then(|| cell.volume6());
        let mut pieces_volume = BigRational::zero();
        let rest = Rc::new(live.into_iter().filter(|&i| i != first).collect::<Vec<_>>());
        let mut current = Some(cell);
        for pl in prepared[first].planes {
            let Some(cur) = current.take() else { break };
            if let Some(out) = cur.clip(pl.flipped()) {
                if opts.check_conservation {
                    pieces_volume += out.volume6();
                }
                work.push((out, Rc::clone(&rest)));
            }
            current = cur.clip(pl);
        }
        if let Some(before) = before {
            if let Some(inner) = &current {
                pieces_volume += inner.volume6();
            }
            if before != pieces_volume {
                return Err(Error::Internal(format!(
                    "peeling lost volume: {before} before, {pieces_volume} after"
                )));
            }
        }
    }
    Ok((Coverage::Covered, processed))
}

fn grid(target: &Body3, cover: &[Simplex3], m: u32) -> Result<(Coverage, usize)> {
    if m == 0 {
        return Err(Error::InvalidInput("grid resolution must be positive".into()));
    }
    let m = m as i64;
    let planes: Vec<Vec<Plane>> = cover
        .iter()
        .map(|s| s.facet_planes().iter().map(|&(n, d)| Plane { n, d: d * m as i128 }).collect())
        .collect();
    let target_planes: Vec<Plane> = body_planes(target).into_iter().map(|p| Plane { n: p.n, d: p.d * m as i128 }).collect();
    let (lo, hi) = target.bounding_box();
    let mut checked = 0;
    for x in lo.x * m..=hi.x * m {
        for y in lo.y * m..=hi.y * m {
            for z in lo.z * m..=hi.z * m {
                let p = IntPoint3::new(x, y, z);
                if !target_planes.iter().all(|pl| pl.n.dot(p) <= pl.d) {
                    continue;
                }
                checked += 1;
                let covered = planes.iter().any(|ps| ps.iter().all(|pl| pl.n.dot(p) <= pl.d));
                if !covered {
                    let k = Rat::from_integer(m as i128);
                    let w = RatPoint3::from(p).scale(k.recip());
                    return Ok((Coverage::Uncovered(w), checked));
                }
            }
        }
    }
    Ok((Coverage::Covered, checked))
}

pub fn verify_cover(target: &Body3, cover: &[Simplex3], mode: VerifyMode, opts: &VerifyOptions) -> Result<VerifyReport> {
    let first_non_unimodular = cover.iter().position(|s| !s.is_unimodular());
    let first_uncontained = cover.iter().position(|s| !s.vertices().iter().all(|&v| target.contains(v)));
    let mut report = VerifyReport {
        n_simplices: cover.len(),
        all_unimodular: first_non_unimodular.is_none(),
        first_non_unimodular,
        all_contained: first_uncontained.is_none(),
        first_uncontained,
        coverage: Coverage::Covered,
        mode,
        cells_processed: 0,
        grid_points_checked: 0,
        fallback: None,
    };
    match mode {
        VerifyMode::Exact => {
            let (cov, cells) = peel(target, cover, opts)?;
            report.coverage = cov;
            report.cells_processed = cells;
            if report.coverage == Coverage::BudgetExceeded {
                let (g, pts) = grid(target, cover, DEFAULT_GRID_RESOLUTION)?;
                report.grid_points_checked = pts;
                report.fallback = Some(g);
            }
        }
        VerifyMode::Grid(m) => {
            let (cov, pts) = grid(target, cover, m)?;
            report.coverage = cov;
            report.grid_points_checked = pts;
        }
    }
    if let Coverage::Uncovered(w) = &report.coverage {
        let inside = target.contains_rat(w);
        let hit = cover.iter().any(|s| s.contains_rat(w, Membership::Closed));
        if !inside || hit {
            return Err(Error::Internal(format!("invalid uncovered witness {w}")));
        }
    }
    Ok(report)
}

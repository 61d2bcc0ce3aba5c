//! Lattice tetrahedra, and triangulations of bodies into empty ones.

use std::fmt;

use crate::error::{Error, Result};
use crate::exact_geom::{det3, point_in_lattice_simplex, IntPoint3, IntVec3, Membership, RatPoint3};
use crate::polytope::Body3;

/// A lattice tetrahedron, stored with positive orientation:
/// `det(v1 - v0, v2 - v0, v3 - v0) > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Simplex3 {
    v: [IntPoint3; 4],
}

impl Simplex3 {
    /// Sorts the vertices and fixes the orientation by swapping the last two.
    pub fn new(v: [IntPoint3; 4]) -> Result<Simplex3> {
        let mut v = v;
        v.sort();
        let d = det3(v[1] - v[0], v[2] - v[0], v[3] - v[0]);
        if d == 0 {
            return Err(Error::Degenerate("tetrahedron"));
        }
        if d < 0 {
            v.swap(2, 3);
        }
        Ok(Simplex3 { v })
    }

    pub fn vertices(&self) -> &[IntPoint3; 4] {
        &self.v
    }

    /// Vertices in lexicographic order; the canonical identity of the simplex.
    pub fn sorted_vertices(&self) -> [IntPoint3; 4] {
        let mut v = self.v;
        v.sort();
        v
    }

    pub fn normalized_volume(&self) -> i128 {
        det3(self.v[1] - self.v[0], self.v[2] - self.v[0], self.v[3] - self.v[0])
    }

    pub fn is_unimodular(&self) -> bool {
        self.normalized_volume() == 1
    }

    /// The facet opposite vertex `i` as `n . x <= bound`, with `n` the
    /// (not necessarily primitive) outer normal.
    pub fn facet_plane(&self, i: usize) -> (IntVec3, i128) {
        let f: Vec<IntPoint3> = (0..4).filter(|&j| j != i).map(|j| self.v[j]).collect();
        let mut n = (f[1] - f[0]).cross(f[2] - f[0]);
        if n.dot(self.v[i] - f[0]) > 0 {
            n = -n;
        }
        (n, n.dot(f[0]))
    }

    pub fn facet_planes(&self) -> [(IntVec3, i128); 4] {
        [self.facet_plane(0), self.facet_plane(1), self.facet_plane(2), self.facet_plane(3)]
    }

    pub fn contains(&self, p: IntPoint3) -> bool {
        self.facet_planes().iter().all(|(n, b)| n.dot(p) <= *b)
    }

    pub fn contains_rat(&self, p: &RatPoint3, mode: Membership) -> bool {
        point_in_lattice_simplex(p, &self.v, mode).expect("simplex is nondegenerate")
    }

    pub fn bounding_box(&self) -> (IntPoint3, IntPoint3) {
        let mut lo = self.v[0];
        let mut hi = self.v[0];
        for p in &self.v[1..] {
            lo = IntPoint3::new(lo.x.min(p.x), lo.y.min(p.y), lo.z.min(p.z));
            hi = IntPoint3::new(hi.x.max(p.x), hi.y.max(p.y), hi.z.max(p.z));
        }
        (lo, hi)
    }

    pub fn lattice_points(&self) -> Vec<IntPoint3> {
        let planes = self.facet_planes();
        let (lo, hi) = self.bounding_box();
        let mut out = Vec::new();
        for x in lo.x..=hi.x {
            for y in lo.y..=hi.y {
                for z in lo.z..=hi.z {
                    let p = IntPoint3::new(x, y, z);
                    if planes.iter().all(|(n, b)| n.dot(p) <= *b) {
                        out.push(p);
                    }
                }
            }
        }
        out
    }

    /// Lattice points other than the four vertices, in lexicographic order.
    pub fn extra_lattice_points(&self) -> Vec<IntPoint3> {
        self.lattice_points().into_iter().filter(|p| !self.v.contains(p)).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.lattice_points().len() == 4
    }

    pub fn translate(&self, t: IntVec3) -> Simplex3 {
        Simplex3::new(self.v.map(|p| p + t)).expect("translation preserves volume")
    }
}

impl fmt::Display for Simplex3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}, {}]", self.v[0], self.v[1], self.v[2], self.v[3])
    }
}

impl PartialOrd for Simplex3 {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Simplex3 {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sorted_vertices().cmp(&other.sorted_vertices())
    }
}

/// Cone from the lexicographically smallest vertex over a fan triangulation
/// of every facet that misses it.
pub fn fan_triangulation(body: &Body3) -> Result<Vec<Simplex3>> {
    let vs = body.vertices();
    let apex_idx = (0..vs.len()).min_by_key(|&i| vs[i]).ok_or(Error::Degenerate("body"))?;
    let apex = vs[apex_idx];
    let mut out = Vec::new();
    for (i, f) in body.facets().iter().enumerate() {
        if f.vertices.contains(&apex_idx) {
            continue;
        }
        let cyc = body.facet_cycle(i);
        for k in 1..cyc.len() - 1 {
            out.push(Simplex3::new([apex, cyc[0], cyc[k], cyc[k + 1]])?);
        }
    }
    out.sort();
    Ok(out)
}

/// Subdivides a lattice tetrahedron into empty lattice tetrahedra by
/// repeated stellar subdivision at the smallest non-vertex lattice point.
pub fn refine_to_empty(s: &Simplex3) -> Vec<Simplex3> {
    let mut out = Vec::new();
    let mut work: Vec<(Simplex3, Vec<IntPoint3>)> = vec![(*s, s.extra_lattice_points())];
    while let Some((t, extra)) = work.pop() {
        let Some(&z) = extra.first() else {
            out.push(t);
            continue;
        };
        for i in 0..4 {
            let (n, b) = t.facet_plane(i);
            if n.dot(z) == b {
                continue;
            }
            let mut v = *t.vertices();
            v[i] = z;
            let child = Simplex3::new(v).expect("apex off the facet plane");
            let child_extra: Vec<IntPoint3> = extra
                .iter()
                .copied()
                .filter(|&p| p != z && !child.vertices().contains(&p) && child.contains(p))
                .collect();
            assert!(child_extra.len() < extra.len(), "refinement must shrink the point count");
            work.push((child, child_extra));
        }
    }
    out.sort();
    out
}

pub fn empty_triangulation(body: &Body3) -> Result<Vec<Simplex3>> {
    let mut out: Vec<Simplex3> = fan_triangulation(body)?.iter().flat_map(refine_to_empty).collect();
    out.sort();
    Ok(out)
}

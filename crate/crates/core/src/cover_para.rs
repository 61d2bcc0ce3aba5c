//! Unimodular covers of lattice parallelepipeds.
//!
//! For a tetrahedron `T = conv(p_1..p_4)` put `q_i = (p_1+p_2+p_3+p_4)/2 - p_i`.
//! The eight points span the parallelepiped `C(T)`, which is triangulated by
//! `T` and the four corner tetrahedra `T_i = conv(q_i, p_j : j != i)`.
//! A parallelepiped containing `T` contains some `T_i`; if `T` is empty and
//! not unimodular, every `T_i` holds a lattice point `u` other than the
//! `p_j`. Replacing `p_j` by `u` for the three facets through `p_i` yields
//! three smaller tetrahedra that cover `T`, which drives the recursion.

use num_traits::Signed;

use crate::cover::Cover;
use crate::error::{Error, Result};
use crate::exact_geom::{det3, rat_det3, rat_simplex_lattice_points, IntPoint3, Rat, RatPoint3};
use crate::polytope::{Body3, Parallelepiped};
use crate::triangulate::{empty_triangulation, refine_to_empty, Simplex3};

/// A tetrahedron together with its circumscribed parallelepiped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circumscribed {
    pub p: [IntPoint3; 4],
    pub q: [RatPoint3; 4],
}

pub fn circumscribe(p: [IntPoint3; 4]) -> Result<Circumscribed> {
    if det3(p[1] - p[0], p[2] - p[0], p[3] - p[0]) == 0 {
        return Err(Error::Degenerate("tetrahedron"));
    }
    let sum = p[0] + p[1] + p[2] + p[3];
    let half = sum.to_rat().scale(Rat::new(1, 2));
    let q = p.map(|pi| &half - &pi.to_rat());
    let c = Circumscribed { p, q };
    debug_assert!((0..4).all(|i| &c.p[i].to_rat() + &c.q[i] == &c.p[0].to_rat() + &c.q[0]));
    Ok(c)
}

impl Circumscribed {
    pub fn of(t: &Simplex3) -> Circumscribed {
        circumscribe(*t.vertices()).expect("simplex is nondegenerate")
    }

    /// The eight vertices of `C(T)`.
    pub fn parallelepiped_vertices(&self) -> Vec<RatPoint3> {
        let mut v: Vec<RatPoint3> = self.p.iter().map(|x| x.to_rat()).collect();
        v.extend(self.q.iter().cloned());
        v
    }

    /// Six times the euclidean volume of `C(T)`, as `T` plus its four corners.
    pub fn volume6(&self) -> Rat {
        let t = [0, 1, 2, 3].map(|i| self.p[i].to_rat());
        let vt = rat_det3(&(&t[1] - &t[0]), &(&t[2] - &t[0]), &(&t[3] - &t[0])).abs();
        vt + (0..4).map(|i| corner_volume6(&self.corner(i))).sum::<Rat>()
    }

    /// Corner tetrahedron `T_i = conv(q_i, p_j : j != i)`, listed with `q_i`
    /// first (indices are 0-based).
    pub fn corner(&self, i: usize) -> [RatPoint3; 4] {
        let mut out = [
            self.q[i].clone(),
            RatPoint3::from(IntPoint3::ORIGIN),
            RatPoint3::from(IntPoint3::ORIGIN),
            RatPoint3::from(IntPoint3::ORIGIN),
        ];
        let mut k = 1;
        for j in 0..4 {
            if j != i {
                out[k] = self.p[j].to_rat();
                k += 1;
            }
        }
        out
    }
}

pub fn corner_volume6(c: &[RatPoint3; 4]) -> Rat {
    rat_det3(&(&c[1] - &c[0]), &(&c[2] - &c[0]), &(&c[3] - &c[0])).abs()
}

pub fn corner(c: &Circumscribed, i: usize) -> Result<[RatPoint3; 4]> {
    if i >= 4 {
        return Err(Error::InvalidInput(format!("corner index {i} out of range")));
    }
    Ok(c.corner(i))
}

/// Smallest `i` with `q_i` in the container. Since every `p_j` is in the
/// container too, the whole corner `T_i` then lies inside by convexity.
pub fn select_corner(c: &Circumscribed, container: &Body3) -> Result<usize> {
    if !c.p.iter().all(|&p| container.contains(p)) {
        return Err(Error::Precondition("tetrahedron is not inside the container".into()));
    }
    let inside = [0, 1, 2, 3].map(|i| container.contains_rat(&c.q[i]));
    inside.iter().position(|&b| b).ok_or(Error::NoCornerInside { inside })
}

/// Lexicographically smallest lattice point of the closed corner `T_i`
/// that is not a vertex of `T`.
pub fn corner_witness(c: &Circumscribed, i: usize) -> Result<IntPoint3> {
    let pts = rat_simplex_lattice_points(&corner(c, i)?)?;
    pts.iter()
        .copied()
        .find(|p| !c.p.contains(p))
        .ok_or(Error::NoWitness { corner: i, enumerated: pts })
}

/// Covers an empty lattice tetrahedron by unimodular tetrahedra lying in
/// `container`, which must be a parallelepiped (or any body for which the
/// corner selection keeps succeeding).
pub fn cover_empty_in(t: &Simplex3, container: &Body3) -> Result<Cover> {
    if !t.is_empty() {
        return Err(Error::Precondition(format!("tetrahedron {t} is not empty")));
    }
    if !t.vertices().iter().all(|&v| container.contains(v)) {
        return Err(Error::Precondition(format!("tetrahedron {t} is not inside the container")));
    }
    let mut cover = Cover::new(format!("empty tetrahedron {t}"));
    let depth_limit = t.normalized_volume() as usize;
    let mut work: Vec<(Simplex3, String, usize)> = vec![(*t, String::from("T"), 0)];
    while let Some((s, trace, depth)) = work.pop() {
        if depth > depth_limit {
            return Err(Error::Internal(format!("recursion depth {depth} exceeds volume bound {depth_limit}")));
        }
        cover.max_depth = cover.max_depth.max(depth);
        if s.is_unimodular() {
            cover.insert(s, trace);
            continue;
        }
        let circ = Circumscribed::of(&s);
        let i = select_corner(&circ, container)?;
        let u = corner_witness(&circ, i)?;
        let vol = s.normalized_volume();
        for j in (0..4).filter(|&j| j != i) {
            let mut v = *s.vertices();
            v[j] = u;
            let Ok(piece) = Simplex3::new(v) else { continue };
            if piece.normalized_volume() >= vol {
                return Err(Error::Internal(format!(
                    "piece {piece} does not have smaller volume than {s}"
                )));
            }
            if !v.iter().all(|&x| container.contains(x)) {
                return Err(Error::Internal(format!("piece {piece} leaves the container")));
            }
            for (k, e) in refine_to_empty(&piece).into_iter().enumerate() {
                work.push((e, format!("{trace}/c{i}s{j}e{k}"), depth + 1));
            }
        }
    }
    Ok(cover)
}

pub fn cover_parallelepiped(p: &Parallelepiped) -> Result<Cover> {
    let body = p.to_body();
    let mut cover = Cover::new(format!("parallelepiped base {} edges {} {} {}", p.base, p.edges[0], p.edges[1], p.edges[2]));
    for (n, piece) in empty_triangulation(&body)?.iter().enumerate() {
        let sub = cover_empty_in(piece, &body)?;
        cover.merge(sub.map(&format!("tri{n}/"), |s| *s));
    }
    Ok(cover)
}

/// Euclidean-volume identities of `C(T)`, in units of `vol(T)`: the
/// parallelepiped has volume 3 and each corner volume 1/2.
pub fn volume_ratios(c: &Circumscribed) -> (Rat, [Rat; 4]) {
    let t = [0, 1, 2, 3].map(|i| c.p[i].to_rat());
    let vt = rat_det3(&(&t[1] - &t[0]), &(&t[2] - &t[0]), &(&t[3] - &t[0])).abs();
    let corners = [0, 1, 2, 3].map(|i| corner_volume6(&c.corner(i)) / vt);
    (c.volume6() / vt, corners)
}

//! Seeded instance generators. Every generator is a pure function of the
//! seed, so repeated runs produce identical instances.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact_geom::{det3, IntPoint2, IntPoint3};
use crate::polytope::{Parallelepiped, Polygon2};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub const EXAMPLE26_OCTAHEDRON: [[i64; 3]; 6] =
    [[0, 1, 1], [1, 0, 1], [1, 1, 0], [0, -1, -1], [-1, 0, -1], [-1, -1, 0]];

pub const EXAMPLE26_PRISM: [[i64; 3]; 6] =
    [[0, 1, 1], [1, 0, 1], [1, 1, 0], [-1, 0, 0], [0, -1, 0], [0, 0, -1]];

fn vertex_list(v: &[[i64; 3]]) -> Vec<IntPoint3> {
    v.iter().map(|&p| IntPoint3::from(p)).collect()
}

pub fn example26_octahedron() -> Vec<IntPoint3> {
    vertex_list(&EXAMPLE26_OCTAHEDRON)
}

pub fn example26_prism() -> Vec<IntPoint3> {
    vertex_list(&EXAMPLE26_PRISM)
}

/// A parallelepiped at the origin whose edge vectors have entries in
/// `[-max_coord, max_coord]` and nonzero determinant.
pub fn random_parallelepiped<R: Rng>(rng: &mut R, max_coord: i64) -> Result<Parallelepiped> {
    if max_coord < 1 {
        return Err(Error::InvalidInput(format!("max_coord must be positive, got {max_coord}")));
    }
    let mut v = || IntPoint3::new(
        rng.gen_range(-max_coord..=max_coord),
        rng.gen_range(-max_coord..=max_coord),
        rng.gen_range(-max_coord..=max_coord),
    );
    loop {
        let e = [v(), v(), v()];
        if det3(e[0], e[1], e[2]) != 0 {
            return Parallelepiped::new(IntPoint3::ORIGIN, e);
        }
    }
}

/// Attempts at a random multiplier vector before falling back to a
/// constant one, which always closes up.
const WEAK_SUMMAND_TRIES: usize = 2000;

/// A pair `(P, Q)` with `Q` a random 2-dimensional lattice polygon in
/// `[0, max_coord]^2` and `P` a weak Minkowski summand of `Q`.
///
/// `P` is built from the edge sequence of `Q` with nonnegative integer
/// multipliers whose weighted sum vanishes, so every edge direction of `P`
/// is one of `Q` and `P` may degenerate to a segment or a point.
pub fn random_weak_summand_pair<R: Rng>(rng: &mut R, max_coord: i64) -> Result<(Polygon2, Polygon2)> {
    if max_coord < 1 {
        return Err(Error::InvalidInput(format!("max_coord must be positive, got {max_coord}")));
    }
    let q = loop {
        let n = rng.gen_range(3..=6);
        let pts: Vec<IntPoint2> =
            (0..n).map(|_| IntPoint2::new(rng.gen_range(0..=max_coord), rng.gen_range(0..=max_coord))).collect();
        let q = Polygon2::hull(&pts)?;
        if q.dim() == 2 {
            break q;
        }
    };
    let edges = q.edges();
    let mut mult: Option<Vec<i64>> = None;
    for _ in 0..WEAK_SUMMAND_TRIES {
        let m: Vec<i64> = edges.iter().map(|_| rng.gen_range(0..=2)).collect();
        let sum = edges.iter().zip(&m).fold(IntPoint2::ORIGIN, |acc, (e, &k)| acc + e.scale(k));
        // The zero vector always closes up; skip it so that P is rarely a point.
        if sum == IntPoint2::ORIGIN && m.iter().any(|&k| k > 0) {
            mult = Some(m);
            break;
        }
    }
    let mult = mult.unwrap_or_else(|| vec![rng.gen_range(1..=2); edges.len()]);
    let mut cur = IntPoint2::ORIGIN;
    let mut pts = vec![cur];
    for (e, k) in edges.iter().zip(mult) {
        cur = cur + e.scale(k);
        pts.push(cur);
    }
    Ok((Polygon2::hull(&pts)?, q))
}

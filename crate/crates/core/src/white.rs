//! Normal forms of empty lattice tetrahedra.
//!
//! Every empty tetrahedron is unimodularly equivalent to
//! `T(a, b) = conv((0,0,0), (1,0,0), (0,0,1), (a,b,1))` with `b` its
//! normalized volume and `gcd(a, b) = 1`. Recognition here is certifying:
//! a form is reported only together with an explicit unimodular affine map
//! carrying the input vertex set onto the vertex set of `T(a, b)`.

use std::collections::BTreeSet;

use num_integer::Integer;
use rand::Rng;

use crate::error::{Error, Result};
use crate::exact_geom::{det3, primitive, IntPoint3, IntVec3};
use crate::triangulate::Simplex3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WhiteForm {
    a: i64,
    b: i64,
}

impl WhiteForm {
    pub fn new(a: i64, b: i64) -> Result<WhiteForm> {
        let ok = match b {
            1 => a == 1,
            b if b >= 2 => (1..b).contains(&a) && a.gcd(&b) == 1,
            _ => false,
        };
        if !ok {
            return Err(Error::InvalidInput(format!("({a}, {b}) is not a White normal form")));
        }
        Ok(WhiteForm { a, b })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn vertices(&self) -> [IntPoint3; 4] {
        [
            IntPoint3::new(0, 0, 0),
            IntPoint3::new(1, 0, 0),
            IntPoint3::new(0, 0, 1),
            IntPoint3::new(self.a, self.b, 1),
        ]
    }

    pub fn tetrahedron(&self) -> Simplex3 {
        Simplex3::new(self.vertices()).expect("white tetrahedron is nondegenerate")
    }

    /// `{a, b - a, a^-1, b - a^-1}` modulo `b`.
    pub fn orbit(&self) -> BTreeSet<i64> {
        if self.b == 1 {
            return BTreeSet::from([1]);
        }
        let inv = mod_inverse(self.a, self.b);
        BTreeSet::from([self.a, self.b - self.a, inv, self.b - inv])
    }
}

fn mod_inverse(a: i64, m: i64) -> i64 {
    let e = (a as i128).extended_gcd(&(m as i128));
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(m as i128) as i64
}

pub fn white_tetrahedron(a: i64, b: i64) -> Result<Simplex3> {
    Ok(WhiteForm::new(a, b)?.tetrahedron())
}

/// All forms with `2 <= b <= b_max`, plus the unimodular form `(1, 1)`.
pub fn enumerate_white_forms(b_max: i64) -> Vec<WhiteForm> {
    let mut out = vec![WhiteForm { a: 1, b: 1 }];
    for b in 2..=b_max {
        for a in 1..b {
            if a.gcd(&b) == 1 {
                out.push(WhiteForm { a, b });
            }
        }
    }
    out
}

/// `x -> M x + t` with `det M = +-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct UnimodularAffineMap {
    matrix: [[i64; 3]; 3],
    translation: IntVec3,
}

fn mat_det(m: &[[i64; 3]; 3]) -> i128 {
    let col = |j: usize| IntPoint3::new(m[0][j], m[1][j], m[2][j]);
    det3(col(0), col(1), col(2))
}

fn mat_mul(a: &[[i64; 3]; 3], b: &[[i64; 3]; 3]) -> [[i64; 3]; 3] {
    let mut out = [[0; 3]; 3];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

impl UnimodularAffineMap {
    pub fn new(matrix: [[i64; 3]; 3], translation: IntVec3) -> Result<UnimodularAffineMap> {
        let d = mat_det(&matrix);
        if d != 1 && d != -1 {
            return Err(Error::InvalidInput(format!("matrix determinant is {d}, expected +-1")));
        }
        Ok(UnimodularAffineMap { matrix, translation })
    }

    pub fn identity() -> UnimodularAffineMap {
        UnimodularAffineMap {
            matrix: [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
            translation: IntPoint3::ORIGIN,
        }
    }

    pub fn matrix(&self) -> &[[i64; 3]; 3] {
        &self.matrix
    }

    pub fn translation(&self) -> IntVec3 {
        self.translation
    }

    pub fn determinant(&self) -> i64 {
        mat_det(&self.matrix) as i64
    }

    pub fn linear(&self, p: IntVec3) -> IntVec3 {
        let m = &self.matrix;
        IntPoint3::new(
            m[0][0] * p.x + m[0][1] * p.y + m[0][2] * p.z,
            m[1][0] * p.x + m[1][1] * p.y + m[1][2] * p.z,
            m[2][0] * p.x + m[2][1] * p.y + m[2][2] * p.z,
        )
    }

    pub fn apply(&self, p: IntPoint3) -> IntPoint3 {
        self.linear(p) + self.translation
    }

    pub fn apply_simplex(&self, s: &Simplex3) -> Simplex3 {
        Simplex3::new(s.vertices().map(|p| self.apply(p))).expect("unimodular maps preserve volume")
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &UnimodularAffineMap) -> UnimodularAffineMap {
        UnimodularAffineMap {
            matrix: mat_mul(&self.matrix, &other.matrix),
            translation: self.apply(other.translation),
        }
    }

    pub fn inverse(&self) -> UnimodularAffineMap {
        let m = &self.matrix;
        let d = self.determinant();
        let cof = |r: usize, c: usize| {
            let rs: Vec<usize> = (0..3).filter(|&i| i != r).collect();
            let cs: Vec<usize> = (0..3).filter(|&j| j != c).collect();
            let minor = m[rs[0]][cs[0]] * m[rs[1]][cs[1]] - m[rs[0]][cs[1]] * m[rs[1]][cs[0]];
            if (r + c).is_multiple_of(2) {
                minor
            } else {
                -minor
            }
        };
        let mut inv = [[0i64; 3]; 3];
        for (i, row) in inv.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = cof(j, i) * d;
            }
        }
        let lin = UnimodularAffineMap { matrix: inv, translation: IntPoint3::ORIGIN };
        let t = -lin.linear(self.translation);
        UnimodularAffineMap { matrix: inv, translation: t }
    }

    /// Whether the map sends the vertex set of `from` onto the vertex set of `to`.
    pub fn certifies(&self, from: &Simplex3, to: &Simplex3) -> bool {
        let mut img = from.vertices().map(|p| self.apply(p));
        img.sort();
        img == to.sorted_vertices()
    }
}

/// Random unimodular affine map built from elementary row operations,
/// sign flips and a permutation.
pub fn random_unimodular_map<R: Rng>(rng: &mut R, steps: usize, max_shift: i64) -> UnimodularAffineMap {
    let mut m = [[1i64, 0, 0], [0, 1, 0], [0, 0, 1]];
    for _ in 0..steps {
        let i = rng.gen_range(0..3);
        let mut j = rng.gen_range(0..3);
        while j == i {
            j = rng.gen_range(0..3);
        }
        let k = rng.gen_range(-2..=2);
        let row = m[j];
        for (x, y) in m[i].iter_mut().zip(row) {
            *x += k * y;
        }
    }
    if rng.gen_bool(0.5) {
        m.swap(0, 1);
    }
    if rng.gen_bool(0.5) {
        for x in m[2].iter_mut() {
            *x = -*x;
        }
    }
    let t = IntPoint3::new(
        rng.gen_range(-max_shift..=max_shift),
        rng.gen_range(-max_shift..=max_shift),
        rng.gen_range(-max_shift..=max_shift),
    );
    UnimodularAffineMap::new(m, t).expect("elementary operations are unimodular")
}

/// Recognized normal form with its certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub form: WhiteForm,
    /// Sends the input tetrahedron onto `form.tetrahedron()`.
    pub map: UnimodularAffineMap,
    /// Every `a` for which a certifying map to `T(a, b)` was constructed.
    pub certified: BTreeSet<i64>,
    /// Set when `certified` differs from the orbit of the canonical `a`.
    pub orbit_anomaly: bool,
}

/// Integer vector `g` with `g . c = 1`, for primitive `c`.
fn solve_dot_one(c: IntVec3) -> Option<IntVec3> {
    let (c1, c2, c3) = (c.x as i128, c.y as i128, c.z as i128);
    let e12 = c1.extended_gcd(&c2);
    let e = e12.gcd.extended_gcd(&c3);
    if e.gcd.abs() != 1 {
        return None;
    }
    let s = e.gcd.signum();
    let to = |v: i128| i64::try_from(v * s).ok();
    Some(IntPoint3::new(to(e.x * e12.x)?, to(e.x * e12.y)?, to(e.y)?))
}

/// Builds the map for one labeling: bottom edge `va vb` to `[0, e1]` at
/// height 0, `vc` to `e3`, `vd` to `(a, b, 1)`.
fn certify_labeling(va: IntPoint3, vb: IntPoint3, vc: IntPoint3, vd: IntPoint3) -> Option<(i64, i64, UnimodularAffineMap)> {
    let e = vb - va;
    let h = vc - va;
    let w = vd - va;
    let mut f = primitive(e.cross(vd - vc)).ok()?;
    match f.dot(h) {
        1 => {}
        -1 => f = -f,
        _ => return None,
    }
    let c = h.cross(e);
    let mut g = solve_dot_one(c)?;
    // Move g into the kernel of f; det(e, g, h) = g . (h x e) is unchanged.
    let fg = i64::try_from(f.dot(g)).ok()?;
    g = g - h.scale(fg);
    let d = det3(e, g, h);
    debug_assert_eq!(d, 1);
    let mut beta = det3(e, w, h);
    if beta < 0 {
        g = -g;
        beta = -beta;
    }
    let alpha = det3(w, g, h) / det3(e, g, h);
    let b = i64::try_from(beta).ok()?;
    let alpha = i64::try_from(alpha).ok()?;
    let shift = if b == 1 { alpha - 1 } else { alpha.div_euclid(b) };
    let a = alpha - b * shift;
    g = g + e.scale(shift);
    // Columns e, g, h form a lattice basis; the map is its inverse.
    let basis = UnimodularAffineMap::new(
        [[e.x, g.x, h.x], [e.y, g.y, h.y], [e.z, g.z, h.z]],
        va,
    )
    .ok()?;
    Some((a, b, basis.inverse()))
}

/// Canonical normal form of an empty tetrahedron, with certificate.
pub fn white_normal_form(t: &Simplex3) -> Result<NormalForm> {
    if !t.is_empty() {
        return Err(Error::Precondition("tetrahedron is not empty".into()));
    }
    let v = t.vertices();
    let volume = t.normalized_volume();
    let pairs = [((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))];
    let mut found: Vec<(i64, UnimodularAffineMap)> = Vec::new();
    for (e1, e2) in pairs {
        for (bottom, top) in [(e1, e2), (e2, e1)] {
            for (ia, ib) in [(bottom.0, bottom.1), (bottom.1, bottom.0)] {
                for (ic, id) in [(top.0, top.1), (top.1, top.0)] {
                    let Some((a, b, map)) = certify_labeling(v[ia], v[ib], v[ic], v[id]) else {
                        continue;
                    };
                    if b as i128 != volume {
                        return Err(Error::Internal(format!("labeling gives b = {b}, volume is {volume}")));
                    }
                    let Ok(form) = WhiteForm::new(a, b) else { continue };
                    if map.certifies(t, &form.tetrahedron()) {
                        found.push((a, map));
                    }
                }
            }
        }
    }
    let certified: BTreeSet<i64> = found.iter().map(|(a, _)| *a).collect();
    let (a, map) = found
        .into_iter()
        .min_by_key(|(a, _)| *a)
        .ok_or(Error::NoWidthOneDirection)?;
    let form = WhiteForm::new(a, volume as i64)?;
    let orbit_anomaly = form.orbit() != certified;
    Ok(NormalForm { form, map, certified, orbit_anomaly })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn white_tetrahedra() {
        let t = white_tetrahedron(1, 1).unwrap();
        assert!(t.is_unimodular());
        let t = white_tetrahedron(1, 2).unwrap();
        assert_eq!(t.normalized_volume(), 2);
        assert!(t.is_empty());
        let t = white_tetrahedron(3, 7).unwrap();
        assert_eq!(t.normalized_volume(), 7);
        assert!(t.is_empty());
        assert!(white_tetrahedron(2, 4).is_err());
        assert!(white_tetrahedron(0, 3).is_err());
        assert!(white_tetrahedron(0, 1).is_err());
    }

    #[test]
    fn enumerate_counts() {
        let f2: Vec<_> = enumerate_white_forms(2).iter().map(|w| (w.a(), w.b())).collect();
        assert_eq!(f2, vec![(1, 1), (1, 2)]);
        let f3: Vec<_> = enumerate_white_forms(3).iter().map(|w| (w.a(), w.b())).collect();
        assert_eq!(f3, vec![(1, 1), (1, 2), (1, 3), (2, 3)]);
        // Totient oracle: count a in [1, b) coprime to b by trial gcd.
        let phi = |b: i64| (1..b).filter(|a| a.gcd(&b) == 1).count();
        let expected = 1 + (2..=10).map(phi).sum::<usize>();
        assert_eq!(expected, 32);
        assert_eq!(enumerate_white_forms(10).len(), 32);
    }

    #[test]
    fn normal_form_examples() {
        let unit = Simplex3::new([
            IntPoint3::new(0, 0, 0),
            IntPoint3::new(1, 0, 0),
            IntPoint3::new(0, 1, 0),
            IntPoint3::new(0, 0, 1),
        ])
        .unwrap();
        let nf = white_normal_form(&unit).unwrap();
        assert_eq!((nf.form.a(), nf.form.b()), (1, 1));

        let t = white_tetrahedron(1, 2).unwrap().translate(IntPoint3::new(7, -3, 4));
        let nf = white_normal_form(&t).unwrap();
        assert_eq!((nf.form.a(), nf.form.b()), (1, 2));
        assert!(nf.map.certifies(&t, &nf.form.tetrahedron()));

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let phi = random_unimodular_map(&mut rng, 8, 5);
        let t = phi.apply_simplex(&white_tetrahedron(2, 5).unwrap());
        let nf = white_normal_form(&t).unwrap();
        assert_eq!((nf.form.a(), nf.form.b()), (2, 5));
        assert!(nf.map.certifies(&t, &nf.form.tetrahedron()));
        assert!(!nf.orbit_anomaly);
    }

    #[test]
    fn normal_form_rejects_nonempty() {
        let s = Simplex3::new([
            IntPoint3::new(0, 0, 0),
            IntPoint3::new(2, 0, 0),
            IntPoint3::new(0, 2, 0),
            IntPoint3::new(0, 0, 2),
        ])
        .unwrap();
        assert!(matches!(white_normal_form(&s), Err(Error::Precondition(_))));
    }

    #[test]
    fn map_inverse_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let m = random_unimodular_map(&mut rng, 6, 9);
            let id = m.compose(&m.inverse());
            assert_eq!(id, UnimodularAffineMap::identity());
        }
    }
}

//! JSON documents read and written by the command-line tool. All
//! coordinates are integers; rationals in reports are `[numerator, denominator]`.

use serde::{Deserialize, Serialize};
use unicover_core::cover::Cover;
use unicover_core::cover_cayley::{cayley_embed, CayleySpec, PrismatoidSpec};
use unicover_core::exact_geom::{IntPoint2, IntPoint3, Rat};
use unicover_core::polytope::{Body3, Parallelepiped, Polygon2};
use unicover_core::triangulate::Simplex3;
use unicover_core::verify::{Coverage, VerifyMode, VerifyReport};
use unicover_core::white::WhiteForm;
use unicover_core::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum PolytopeDoc {
    Parallelepiped { base: [i64; 3], edges: [[i64; 3]; 3] },
    Cayley { p_vertices: Vec<[i64; 2]>, q_vertices: Vec<[i64; 2]> },
    Prismatoid { q1: Vec<[i64; 2]>, q2: Vec<[i64; 2]>, height: i64 },
    Vrep { vertices: Vec<[i64; 3]> },
    White { a: i64, b: i64 },
}

fn polygon(v: &[[i64; 2]]) -> Result<Polygon2> {
    let pts: Vec<IntPoint2> = v.iter().map(|&[x, y]| IntPoint2::new(x, y)).collect();
    Polygon2::hull(&pts)
}

fn polygon_doc(p: &Polygon2) -> Vec<[i64; 2]> {
    p.vertices().iter().map(|v| [v.x, v.y]).collect()
}

pub fn point3(p: [i64; 3]) -> IntPoint3 {
    IntPoint3::from(p)
}

impl PolytopeDoc {
    pub fn parallelepiped(&self) -> Option<Result<Parallelepiped>> {
        match self {
            PolytopeDoc::Parallelepiped { base, edges } => {
                Some(Parallelepiped::new(point3(*base), edges.map(point3)))
            }
            _ => None,
        }
    }

    pub fn cayley(&self) -> Option<Result<CayleySpec>> {
        match self {
            PolytopeDoc::Cayley { p_vertices, q_vertices } => {
                Some(polygon(p_vertices).and_then(|p| CayleySpec::new(p, polygon(q_vertices)?)))
            }
            _ => None,
        }
    }

    pub fn prismatoid(&self) -> Option<Result<PrismatoidSpec>> {
        match self {
            PolytopeDoc::Prismatoid { q1, q2, height } => {
                Some(polygon(q1).and_then(|a| PrismatoidSpec::new(a, polygon(q2)?, *height)))
            }
            _ => None,
        }
    }

    pub fn vertices(&self) -> Result<Vec<IntPoint3>> {
        Ok(match self {
            PolytopeDoc::Vrep { vertices } => vertices.iter().map(|&v| point3(v)).collect(),
            PolytopeDoc::White { a, b } => WhiteForm::new(*a, *b)?.vertices().to_vec(),
            _ => self.body()?.vertices().to_vec(),
        })
    }

    pub fn body(&self) -> Result<Body3> {
        if let Some(p) = self.parallelepiped() {
            return Ok(p?.to_body());
        }
        if let Some(s) = self.cayley() {
            return cayley_embed(&s?);
        }
        if let Some(s) = self.prismatoid() {
            return s?.body();
        }
        Body3::hull(&self.vertices()?)
    }

    pub fn from_cayley(p: &Polygon2, q: &Polygon2) -> PolytopeDoc {
        PolytopeDoc::Cayley { p_vertices: polygon_doc(p), q_vertices: polygon_doc(q) }
    }

    pub fn from_parallelepiped(p: &Parallelepiped) -> PolytopeDoc {
        PolytopeDoc::Parallelepiped { base: p.base.to_array(), edges: p.edges.map(|e| e.to_array()) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Stats {
    pub count: usize,
    pub max_recursion_depth: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverageDoc {
    /// One of `covered`, `uncovered`, `budget_exceeded`.
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<[[i128; 2]; 3]>,
}

fn rat_pair(r: Rat) -> [i128; 2] {
    [*r.numer(), *r.denom()]
}

impl CoverageDoc {
    fn of(c: &Coverage) -> CoverageDoc {
        let (status, witness) = match c {
            Coverage::Covered => ("covered", None),
            Coverage::Uncovered(w) => ("uncovered", Some([rat_pair(w.x), rat_pair(w.y), rat_pair(w.z)])),
            Coverage::BudgetExceeded => ("budget_exceeded", None),
        };
        CoverageDoc { status: status.into(), witness }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerificationDoc {
    pub mode: String,
    pub method: String,
    pub verified: bool,
    pub all_unimodular: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_non_unimodular: Option<usize>,
    pub all_contained: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_uncontained: Option<usize>,
    pub coverage: CoverageDoc,
    pub cells_processed: usize,
    pub grid_points_checked: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fallback: Option<CoverageDoc>,
}

pub fn mode_name(mode: VerifyMode) -> String {
    match mode {
        VerifyMode::Grid(m) => format!("grid:{m}"),
        VerifyMode::Exact => "exact".into(),
    }
}

impl VerificationDoc {
    pub fn of(r: &VerifyReport) -> VerificationDoc {
        VerificationDoc {
            mode: mode_name(r.mode),
            method: r.label(),
            verified: r.is_verified(),
            all_unimodular: r.all_unimodular,
            first_non_unimodular: r.first_non_unimodular,
            all_contained: r.all_contained,
            first_uncontained: r.first_uncontained,
            coverage: CoverageDoc::of(&r.coverage),
            cells_processed: r.cells_processed,
            grid_points_checked: r.grid_points_checked,
            fallback: r.fallback.as_ref().map(CoverageDoc::of),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverDoc {
    pub target: PolytopeDoc,
    pub simplices: Vec<[[i64; 3]; 4]>,
    pub stats: Stats,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationDoc>,
}

impl CoverDoc {
    pub fn new(target: PolytopeDoc, cover: &Cover) -> CoverDoc {
        let simplices: Vec<[[i64; 3]; 4]> =
            cover.iter().map(|(s, _)| s.sorted_vertices().map(|v| v.to_array())).collect();
        CoverDoc {
            target,
            stats: Stats { count: simplices.len(), max_recursion_depth: cover.max_depth },
            simplices,
            verification: None,
        }
    }

    /// The simplices as core values; degenerate entries are rejected.
    pub fn simplex_list(&self) -> Result<Vec<Simplex3>> {
        self.simplices
            .iter()
            .enumerate()
            .map(|(i, s)| {
                Simplex3::new(s.map(point3)).map_err(|_| Error::InvalidInput(format!("simplex {i} is degenerate")))
            })
            .collect()
    }
}

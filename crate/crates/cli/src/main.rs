mod doc;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use unicover_core::cover::Cover;
use unicover_core::cover_cayley::{cover_cayley, cover_prismatoid};
use unicover_core::cover_para::cover_parallelepiped;
use unicover_core::gen::{example26_octahedron, example26_prism, random_parallelepiped, random_weak_summand_pair, rng_from_seed};
use unicover_core::idp::{idp_check, pair_idp_check, Verdict, DEFAULT_MAX_N};
use unicover_core::polytope::Body3;
use unicover_core::triangulate::Simplex3;
use unicover_core::verify::{verify_cover, VerifyMode, VerifyOptions, DEFAULT_CELL_BUDGET};
use unicover_core::white::{white_normal_form, WhiteForm};

use doc::{CoverDoc, PolytopeDoc, VerificationDoc};

const EXIT_FAIL: u8 = 1;
const EXIT_SCHEMA: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;
const EXIT_GUARANTEE: u8 = 4;

#[derive(Parser)]
#[command(name = "unicover", version, about = "Unimodular covers of 3-dimensional lattice polytopes")]
struct Cli {
    /// Cell budget of the exact verifier before it falls back to a grid check.
    #[arg(long, global = true, env = "UNICOVER_CELL_BUDGET", default_value_t = DEFAULT_CELL_BUDGET)]
    cell_budget: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a unimodular cover of a parallelepiped, Cayley sum or prismatoid.
    Cover {
        /// Input document; stdin when absent or `-`.
        input: Option<PathBuf>,
        /// `none`, `exact` or `grid:M`.
        #[arg(long, default_value = "none")]
        verify: String,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the integer decomposition property up to a dilation.
    Idp {
        input: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        max_n: i64,
        /// Second polytope: check the pair instead.
        #[arg(long)]
        pair: Option<PathBuf>,
    },
    /// Generate instance documents.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// White normal form of an empty tetrahedron, with a certifying map.
    NormalForm { input: Option<PathBuf> },
    /// Verify a cover document against its target.
    Verify {
        input: Option<PathBuf>,
        /// `exact` or `grid:M`.
        #[arg(long, default_value = "exact")]
        mode: String,
    },
    /// Write the simplices of a cover as a triangle mesh.
    Export {
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = MeshFormat::Off)]
        format: MeshFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// The tetrahedron T(a, b).
    White { a: i64, b: i64 },
    /// One of the two non-IDP bodies with seven lattice points.
    Example26 {
        #[arg(value_enum)]
        body: Example26,
    },
    RandPpiped {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        max_coord: i64,
    },
    RandWeakSummandPair {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        max_coord: i64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Example26 {
    Octahedron,
    Prism,
}

#[derive(Clone, Copy, ValueEnum)]
enum MeshFormat {
    Off,
    Obj,
}

/// A failed command: exit code plus a machine-readable reason.
#[derive(Debug)]
struct Failure {
    code: u8,
    kind: String,
    message: String,
}

impl Failure {
    fn new(code: u8, kind: &str, message: impl Into<String>) -> Failure {
        Failure { code, kind: kind.into(), message: message.into() }
    }
}

impl From<unicover_core::Error> for Failure {
    fn from(e: unicover_core::Error) -> Failure {
        let code = if e.is_guarantee_violation() {
            EXIT_GUARANTEE
        } else if matches!(e, unicover_core::Error::InvalidInput(_)) {
            EXIT_SCHEMA
        } else {
            EXIT_PRECONDITION
        };
        Failure::new(code, e.kind(), e.to_string())
    }
}

type CmdResult = Result<u8, Failure>;

fn read_input(path: Option<&Path>) -> Result<String, Failure> {
    let mut text = String::new();
    match path {
        None => io::stdin().read_to_string(&mut text).map(|_| ()),
        Some(p) if p == Path::new("-") => io::stdin().read_to_string(&mut text).map(|_| ()),
        Some(p) => fs::read_to_string(p).map(|t| text = t),
    }
    .map_err(|e| Failure::new(EXIT_SCHEMA, "io", e.to_string()))?;
    Ok(text)
}

fn parse<T: serde::de::DeserializeOwned>(path: Option<&Path>) -> Result<T, Failure> {
    let text = read_input(path)?;
    serde_json::from_str(&text).map_err(|e| Failure::new(EXIT_SCHEMA, "schema", e.to_string()))
}

/// Writes the whole output at once; files go through a rename so readers
/// never observe a partial document.
fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    let io_err = |e: io::Error| Failure::new(EXIT_FAIL, "io", e.to_string());
    match out {
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).map_err(io_err)
        }
        Some(path) => {
            let mut tmp = path.as_os_str().to_owned();
            tmp.push(".tmp");
            fs::write(&tmp, text).map_err(io_err)?;
            fs::rename(&tmp, path).map_err(io_err)
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

fn parse_mode(s: &str, allow_none: bool) -> Result<Option<VerifyMode>, Failure> {
    let bad = || Failure::new(EXIT_SCHEMA, "invalid_flag", format!("unknown verification mode {s:?}"));
    match s {
        "none" if allow_none => Ok(None),
        "exact" => Ok(Some(VerifyMode::Exact)),
        _ => {
            let m = s.strip_prefix("grid:").ok_or_else(bad)?.parse::<u32>().map_err(|_| bad())?;
            if m == 0 {
                return Err(bad());
            }
            Ok(Some(VerifyMode::Grid(m)))
        }
    }
}

fn run_verify(target: &Body3, simplices: &[Simplex3], mode: VerifyMode, budget: usize) -> Result<VerificationDoc, Failure> {
    let opts = VerifyOptions { cell_budget: budget, ..VerifyOptions::default() };
    Ok(VerificationDoc::of(&verify_cover(target, simplices, mode, &opts)?))
}

fn build_cover(doc: &PolytopeDoc) -> Result<Cover, Failure> {
    if let Some(p) = doc.parallelepiped() {
        return Ok(cover_parallelepiped(&p?)?);
    }
    if let Some(s) = doc.cayley() {
        return Ok(cover_cayley(&s?, false)?);
    }
    if let Some(s) = doc.prismatoid() {
        return Ok(cover_prismatoid(&s?)?);
    }
    Err(Failure::new(
        EXIT_PRECONDITION,
        "unsupported_target",
        "cover targets are parallelepiped, cayley and prismatoid documents; a bare tetrahedron needs a container",
    ))
}

fn cmd_cover(input: Option<&Path>, verify: &str, out: Option<&Path>, budget: usize) -> CmdResult {
    let mode = parse_mode(verify, true)?;
    let target: PolytopeDoc = parse(input)?;
    let cover = build_cover(&target)?;
    let mut doc = CoverDoc::new(target, &cover);
    let mut code = 0;
    if let Some(mode) = mode {
        let v = run_verify(&doc.target.body()?, &cover.simplices(), mode, budget)?;
        if !v.verified {
            code = EXIT_FAIL;
        }
        doc.verification = Some(v);
    }
    emit(&json(&doc), out)?;
    Ok(code)
}

#[derive(Serialize)]
struct IdpDoc {
    verdict: String,
    checked_up_to: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    failing_n: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<[i64; 3]>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    witnesses: Vec<[i64; 3]>,
}

#[derive(Serialize)]
struct PairDoc {
    verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<[i64; 3]>,
}

fn verdict_code(v: Verdict) -> u8 {
    if v == Verdict::Pass {
        0
    } else {
        EXIT_FAIL
    }
}

fn cmd_idp(input: Option<&Path>, max_n: i64, pair: Option<&Path>) -> CmdResult {
    let body = parse::<PolytopeDoc>(input)?.body()?;
    if let Some(second) = pair {
        let other = parse::<PolytopeDoc>(Some(second))?.body()?;
        let r = pair_idp_check(&body, &other)?;
        emit(&json(&PairDoc { verdict: r.verdict.to_string(), witness: r.witness.map(|w| w.to_array()) }), None)?;
        return Ok(verdict_code(r.verdict));
    }
    let r = idp_check(&body, max_n)?;
    let doc = IdpDoc {
        verdict: r.verdict.to_string(),
        checked_up_to: r.checked_up_to,
        failing_n: r.failure.map(|f| f.0),
        witness: r.failure.map(|f| f.1.to_array()),
        witnesses: r.witnesses.iter().map(|w| w.to_array()).collect(),
    };
    emit(&json(&doc), None)?;
    Ok(verdict_code(r.verdict))
}

fn cmd_gen(kind: &GenKind) -> CmdResult {
    let doc = match *kind {
        GenKind::White { a, b } => {
            WhiteForm::new(a, b)?;
            PolytopeDoc::White { a, b }
        }
        GenKind::Example26 { body } => {
            let v = match body {
                Example26::Octahedron => example26_octahedron(),
                Example26::Prism => example26_prism(),
            };
            PolytopeDoc::Vrep { vertices: v.iter().map(|p| p.to_array()).collect() }
        }
        GenKind::RandPpiped { seed, max_coord } => {
            PolytopeDoc::from_parallelepiped(&random_parallelepiped(&mut rng_from_seed(seed), max_coord)?)
        }
        GenKind::RandWeakSummandPair { seed, max_coord } => {
            let (p, q) = random_weak_summand_pair(&mut rng_from_seed(seed), max_coord)?;
            PolytopeDoc::from_cayley(&p, &q)
        }
    };
    emit(&json(&doc), None)?;
    Ok(0)
}

#[derive(Serialize)]
struct NormalFormDoc {
    a: i64,
    b: i64,
    /// Affine map `x -> matrix * x + translation` sending the input onto T(a, b).
    matrix: [[i64; 3]; 3],
    translation: [i64; 3],
    certified: Vec<i64>,
    orbit_anomaly: bool,
}

fn cmd_normal_form(input: Option<&Path>) -> CmdResult {
    let vertices = parse::<PolytopeDoc>(input)?.vertices()?;
    let Ok(v) = <[_; 4]>::try_from(vertices.as_slice()) else {
        return Err(Failure::new(
            EXIT_PRECONDITION,
            "not_a_tetrahedron",
            format!("expected 4 vertices, got {}", vertices.len()),
        ));
    };
    let nf = white_normal_form(&Simplex3::new(v)?)?;
    let doc = NormalFormDoc {
        a: nf.form.a(),
        b: nf.form.b(),
        matrix: *nf.map.matrix(),
        translation: nf.map.translation().to_array(),
        certified: nf.certified.iter().copied().collect(),
        orbit_anomaly: nf.orbit_anomaly,
    };
    emit(&json(&doc), None)?;
    Ok(0)
}

fn cmd_verify(input: Option<&Path>, mode: &str, budget: usize) -> CmdResult {
    let mode = parse_mode(mode, false)?.expect("none is rejected");
    let doc: CoverDoc = parse(input)?;
    let v = run_verify(&doc.target.body()?, &doc.simplex_list()?, mode, budget)?;
    let code = if v.verified { 0 } else { EXIT_FAIL };
    emit(&json(&v), None)?;
    Ok(code)
}

/// Each simplex becomes four outward triangles over a shared vertex table.
fn mesh(doc: &CoverDoc, format: MeshFormat) -> String {
    let mut index = std::collections::BTreeMap::new();
    let mut vertices: Vec<[i64; 3]> = Vec::new();
    let mut faces = Vec::new();
    for s in &doc.simplices {
        let ids: Vec<usize> = s
            .iter()
            .map(|v| {
                *index.entry(*v).or_insert_with(|| {
                    vertices.push(*v);
                    vertices.len() - 1
                })
            })
            .collect();
        let orient = unicover_core::exact_geom::det3(
            doc::point3(s[1]) - doc::point3(s[0]),
            doc::point3(s[2]) - doc::point3(s[0]),
            doc::point3(s[3]) - doc::point3(s[0]),
        );
        for [a, b, c] in [[1, 2, 3], [0, 3, 2], [0, 1, 3], [0, 2, 1]] {
            let f = [ids[a], ids[b], ids[c]];
            faces.push(if orient > 0 { f } else { [f[0], f[2], f[1]] });
        }
    }
    let mut out = String::new();
    match format {
        MeshFormat::Off => {
            out.push_str(&format!("OFF\n{} {} 0\n", vertices.len(), faces.len()));
            for v in &vertices {
                out.push_str(&format!("{} {} {}\n", v[0], v[1], v[2]));
            }
            for f in &faces {
                out.push_str(&format!("3 {} {} {}\n", f[0], f[1], f[2]));
            }
        }
        MeshFormat::Obj => {
            for v in &vertices {
                out.push_str(&format!("v {} {} {}\n", v[0], v[1], v[2]));
            }
            for f in &faces {
                out.push_str(&format!("f {} {} {}\n", f[0] + 1, f[1] + 1, f[2] + 1));
            }
        }
    }
    out
}

fn cmd_export(input: Option<&Path>, format: MeshFormat, out: Option<&Path>) -> CmdResult {
    let doc: CoverDoc = parse(input)?;
    doc.simplex_list()?;
    emit(&mesh(&doc, format), out)?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = cli.cell_budget;
    let result = match &cli.command {
        Command::Cover { input, verify, out } => cmd_cover(input.as_deref(), verify, out.as_deref(), budget),
        Command::Idp { input, max_n, pair } => cmd_idp(input.as_deref(), *max_n, pair.as_deref()),
        Command::Gen { kind } => cmd_gen(kind),
        Command::NormalForm { input } => cmd_normal_form(input.as_deref()),
        Command::Verify { input, mode } => cmd_verify(input.as_deref(), mode, budget),
        Command::Export { input, format, out } => cmd_export(input.as_deref(), *format, out.as_deref()),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            let err = serde_json::json!({ "error": f.kind, "message": f.message, "exit_code": f.code });
            eprintln!("{err}");
            ExitCode::from(f.code)
        }
    }
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use poincare::{
    deform_level, dual_report, duality_map, export_cobounding, export_curve, export_surface, format_rational,
    get_complex_from, homology_table, level_curve, level_surface_3d, pairing_table, parse_rational, read_cocycle,
    read_complex, validate_closed_manifold, verify_duality, zoo, DualityRecord, DualityReport, Error, Ring,
    SimplicialComplex, Variance,
};

/// Exact simplicial (co)homology, Poincaré duality checks and level sets of
/// 1-cocycles on triangulated closed manifolds.
#[derive(Parser)]
#[command(name = "poincare", version)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Check the closed-pseudomanifold condition and orientability.
    Validate(Common),
    /// Homology groups with their invariant factors.
    Homology(WithDegree),
    /// Cohomology groups with their invariant factors.
    Cohomology(WithDegree),
    /// Dual block complex and the cochain/dual-chain correspondence.
    Dual(Common),
    /// Cap-product duality maps and their isomorphism verdicts.
    Duality(WithSignedDegree),
    /// Level curve of a 1-cocycle on a surface.
    LevelCurve(Level),
    /// Level surface of a 1-cocycle on a 3-manifold.
    LevelSurface(Level),
    /// Chain swept between two level curves.
    Deform(Deform),
}

#[derive(Args)]
struct Common {
    /// Named complex from the built-in library.
    #[arg(long, required_unless_present = "input", conflicts_with = "input")]
    zoo: Option<String>,
    /// Complex file: one top simplex per line.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Coefficient ring.
    #[arg(long, default_value = "Z", value_parser = parse_ring)]
    ring: Ring,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Directory with the file-backed library complexes.
    #[arg(long)]
    data_dir: Option<PathBuf>,
}

#[derive(Args)]
struct WithDegree {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    degree: Option<usize>,
}

#[derive(Args)]
struct WithSignedDegree {
    #[command(flatten)]
    common: Common,
    #[arg(long, allow_negative_numbers = true)]
    degree: Option<isize>,
}

#[derive(Args)]
struct Level {
    #[command(flatten)]
    common: Common,
    /// Cocycle file: lines `u v value`.
    #[arg(long)]
    cocycle: PathBuf,
    /// Regular value, as `p/q`.
    #[arg(long, default_value = "1/2", value_parser = parse_level)]
    t: BigRational,
    /// Write the geometry export here.
    #[arg(long)]
    export: Option<PathBuf>,
}

#[derive(Args)]
struct Deform {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    cocycle: PathBuf,
    #[arg(long, default_value = "1/3", value_parser = parse_level)]
    t0: BigRational,
    #[arg(long, default_value = "2/3", value_parser = parse_level)]
    t1: BigRational,
    #[arg(long)]
    export: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn parse_ring(s: &str) -> Result<Ring, String> {
    s.parse::<Ring>().map_err(|_| format!("unknown ring '{s}' (use Z or Z2)"))
}

fn parse_level(s: &str) -> Result<BigRational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

struct Output {
    text: String,
    pass: bool,
}

fn load(c: &Common) -> poincare::Result<SimplicialComplex> {
    match (&c.zoo, &c.input) {
        (Some(name), _) => get_complex_from(name, &c.data_dir.clone().unwrap_or_else(zoo::default_data_dir)),
        (_, Some(path)) => read_complex(path),
        _ => unreachable!("clap enforces one source"),
    }
}

fn render<T: Serialize>(format: Format, value: &T, text: impl FnOnce() -> String) -> String {
    match format {
        Format::Text => text(),
        Format::Json => serde_json::to_string_pretty(value).expect("serializable") + "\n",
    }
}

#[derive(Serialize)]
struct ValidateReport {
    f_vector: Vec<usize>,
    euler_characteristic: i64,
    certificate: poincare::ManifoldCertificate,
}

fn validate(c: &Common) -> poincare::Result<Output> {
    let k = load(c)?;
    let cert = validate_closed_manifold(&k);
    let pass = cert.is_closed_and_connected();
    let report = ValidateReport { f_vector: k.f_vector(), euler_characteristic: k.euler_characteristic(), certificate: cert };
    let text = render(c.format, &report, || {
        let cert = &report.certificate;
        let mut out = format!(
            "f_vector={}\neuler_characteristic={}\nclosed_pseudomanifold={}\nconnected={}\norientable={}\n",
            poincare::report::format_list(&report.f_vector),
            report.euler_characteristic,
            cert.is_closed_pseudomanifold,
            cert.is_connected,
            cert.orientable
        );
        for d in &cert.failures {
            out += &format!("failure dimension={} simplex={} reason={:?}\n", d.dimension, poincare::report::format_list(&d.simplex), d.reason);
        }
        out += &format!("verdict={}\n", if pass { "pass" } else { "fail" });
        out
    });
    Ok(Output { text, pass })
}

fn groups(a: &WithDegree, variance: Variance) -> poincare::Result<Output> {
    let c = &a.common;
    let k = load(c)?;
    let mut records = homology_table(&k, c.ring, variance);
    if let Some(d) = a.degree {
        if d > k.dim() {
            return Err(Error::DegreeOutOfRange { degree: d, max: k.dim() });
        }
        records.retain(|r| r.degree == d);
    }
    let text = render(c.format, &records, || {
        records
            .iter()
            .map(|r| format!("degree={} ring={} betti={} torsion={}\n", r.degree, r.ring, r.betti, poincare::report::format_list(&r.torsion)))
            .collect()
    });
    Ok(Output { text, pass: true })
}

fn dual(c: &Common) -> poincare::Result<Output> {
    let k = load(c)?;
    let cert = validate_closed_manifold(&k);
    let report = dual_report(&k, &cert, c.ring)?;
    Ok(Output { text: render(c.format, &report, || report.to_text()), pass: report.pass })
}

fn duality(a: &WithSignedDegree) -> poincare::Result<Output> {
    let c = &a.common;
    let k = load(c)?;
    let cert = validate_closed_manifold(&k);
    let report = match a.degree {
        None => verify_duality(&k, &cert, c.ring)?,
        Some(d) => {
            let record = DualityRecord::from_map(&k, &duality_map(&k, &cert, c.ring, d)?);
            DualityReport { n: k.dim(), ring: c.ring, pass: record.iso, degrees: vec![record] }
        }
    };
    Ok(Output { text: render(c.format, &report, || report.to_text()), pass: report.pass })
}

#[derive(Serialize)]
struct Pairing {
    cycle: usize,
    intersection: String,
    evaluation: String,
    agree: bool,
}

#[derive(Serialize)]
struct LevelReport {
    kind: &'static str,
    ring: Ring,
    t: String,
    points: usize,
    pieces: usize,
    components: Option<usize>,
    pairings: Vec<Pairing>,
    pass: bool,
}

fn pairings(table: Vec<(BigInt, BigInt)>) -> Vec<Pairing> {
    table
        .into_iter()
        .enumerate()
        .map(|(cycle, (i, e))| Pairing { cycle, agree: i == e, intersection: i.to_string(), evaluation: e.to_string() })
        .collect()
}

fn level_text(r: &LevelReport) -> String {
    let mut out = format!("{} ring={} t={}\npoints {}\n", r.kind, r.ring, r.t, r.points);
    out += &format!("{} {}\n", if r.kind == "level_curve" { "arcs" } else { "patches" }, r.pieces);
    if let Some(c) = r.components {
        out += &format!("components {c}\n");
    }
    for p in &r.pairings {
        out += &format!("pairing cycle={} intersection={} evaluation={} agree={}\n", p.cycle, p.intersection, p.evaluation, p.agree);
    }
    out += &format!("verdict={}\n", if r.pass { "pass" } else { "fail" });
    out
}

fn write_export(path: &Option<PathBuf>, body: impl FnOnce() -> String) -> poincare::Result<()> {
    if let Some(p) = path {
        std::fs::write(p, body())?;
    }
    Ok(())
}

fn level(a: &Level, surface: bool) -> poincare::Result<Output> {
    let c = &a.common;
    let k = load(c)?;
    let phi = read_cocycle(&k, &a.cocycle, c.ring)?;
    let report = if surface {
        let s = level_surface_3d(&k, &phi, &a.t)?;
        write_export(&a.export, || export_surface(&k, &s))?;
        let pairings = pairings(pairing_table(&k, &s, &phi)?);
        LevelReport {
            kind: "level_surface",
            ring: s.ring,
            t: format_rational(&s.t),
            points: s.points.len(),
            pieces: s.patches.len(),
            components: None,
            pass: pairings.iter().all(|p| p.agree),
            pairings,
        }
    } else {
        let curve = level_curve(&k, &phi, &a.t)?;
        write_export(&a.export, || export_curve(&k, &curve))?;
        let pairings = pairings(pairing_table(&k, &curve, &phi)?);
        LevelReport {
            kind: "level_curve",
            ring: curve.ring,
            t: format_rational(&curve.t),
            points: curve.points.len(),
            pieces: curve.arcs.len(),
            components: Some(curve.components.len()),
            pass: pairings.iter().all(|p| p.agree),
            pairings,
        }
    };
    Ok(Output { text: render(c.format, &report, || level_text(&report)), pass: report.pass })
}

#[derive(Serialize)]
struct DeformReport {
    t0: String,
    t1: String,
    refinement_f_vector: Vec<usize>,
    w_support: usize,
    l0_support: usize,
    l1_support: usize,
    boundary_identity: bool,
}

fn deform(a: &Deform) -> poincare::Result<Output> {
    let c = &a.common;
    let k = load(c)?;
    let phi = read_cocycle(&k, &a.cocycle, c.ring)?;
    let chain = deform_level(&k, &phi, &a.t0, &a.t1)?;
    write_export(&a.export, || export_cobounding(&k, &chain))?;
    let support = |v: &[BigInt]| v.iter().filter(|x| **x != BigInt::ZERO).count();
    let report = DeformReport {
        t0: format_rational(&chain.t0),
        t1: format_rational(&chain.t1),
        refinement_f_vector: chain.refinement.f_vector(),
        w_support: support(&chain.w.coeffs),
        l0_support: support(&chain.l0.coeffs),
        l1_support: support(&chain.l1.coeffs),
        boundary_identity: true,
    };
    let text = render(c.format, &report, || {
        format!(
            "deform t0={} t1={}\nrefinement_f_vector={}\nw_support={}\nl0_support={}\nl1_support={}\nboundary_identity=true\nverdict=pass\n",
            report.t0,
            report.t1,
            poincare::report::format_list(&report.refinement_f_vector),
            report.w_support,
            report.l0_support,
            report.l1_support
        )
    });
    Ok(Output { text, pass: true })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.verb {
        Verb::Validate(c) => validate(c),
        Verb::Homology(a) => groups(a, Variance::Homology),
        Verb::Cohomology(a) => groups(a, Variance::Cohomology),
        Verb::Dual(c) => dual(c),
        Verb::Duality(a) => duality(a),
        Verb::LevelCurve(a) => level(a, false),
        Verb::LevelSurface(a) => level(a, true),
        Verb::Deform(a) => deform(a),
    };
    match result {
        Ok(out) => {
            print!("{}", out.text);
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

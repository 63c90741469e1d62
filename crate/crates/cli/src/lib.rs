//! The `octaspine` command line.
//!
//! Every verb is a thin wrapper around the library: it reads its input,
//! calls one or two library operations and prints the result as text or as
//! a JSON document. Output is byte-deterministic for identical inputs and
//! flags. Exit codes: 0 on success, 1 on a domain error (bad TRI file, bad
//! group table, resource limit), 2 on a usage error.

use clap::{Parser, Subcommand, ValueEnum};
use octaspine::census::{automorphisms, enumerate, CensusOptions, IsomGroupReport};
use octaspine::geometry::{certify, cusp_shapes_from, volume_report_from, Certificate};
use octaspine::group::{realize_group_with, FiniteGroupTable, GroupError, PipelineOptions};
use octaspine::homology::{h1_double_with, h1_meridinal_filling};
use octaspine::tri::{
    edge_classes_with, is_manifold, parse, serialize, vertex_links, TieBreak, Triangulation,
};
use serde_json::{json, Value};
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

/// Version of every JSON document.
pub const SCHEMA: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "octaspine", version, about = "Triangulations, their doubles, and symmetry realization")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Seed for the edge-walk tie-break; the canonical walk is used without it.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that a TRI file describes a valid triangulation.
    Validate { input: String },
    /// Edge classes, vertex links, volumes, cusps, homology and symmetry.
    Info { input: String },
    /// Enumerate triangulations with n tetrahedra up to combinatorial equivalence.
    Census {
        n: usize,
        /// Keep only gluings whose edge classes are all orientable.
        #[arg(long)]
        manifold: bool,
        /// Keep only gluings whose edges all have valence at least k.
        #[arg(long, value_name = "K")]
        min_valence: Option<usize>,
        /// Print only the number of members.
        #[arg(long)]
        count_only: bool,
        /// Write the output to a file instead of standard output.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// Worker threads (0 = one per core).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Stop after this many seconds and report a truncated census.
        #[arg(long, value_name = "SECS")]
        time_limit: Option<f64>,
        /// Refuse to enumerate beyond this many tetrahedra.
        #[arg(long, default_value_t = 5)]
        max_n: usize,
    },
    /// Homology of the double and of its meridinal filling.
    Homology { input: String },
    /// Valence certificate and geometric report.
    Certify { input: String },
    /// Combinatorial automorphisms and isometries of the double.
    Aut { input: String },
    /// Build a triangulation whose automorphism group is the given finite group.
    GroupBuild {
        /// `trivial`, `cyclic:<m>`, `sym:<k>`, or a group table file.
        spec: String,
        /// Write the resulting triangulation in TRI format.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// Write the JSON build report to a file.
        #[arg(long, value_name = "FILE")]
        report: Option<PathBuf>,
        /// Refuse covers with more vertices than this.
        #[arg(long, default_value_t = 2_000_000)]
        max_vertices: usize,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain { kind: &'static str, message: String },
}

fn domain(kind: &'static str, e: impl ToString) -> Failure {
    Failure::Domain {
        kind,
        message: e.to_string(),
    }
}

/// Runs the command line `args` (including the program name) and returns
/// the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    let format = cli.format;
    match dispatch(cli, out) {
        Ok(()) => 0,
        Err(Failure::Usage(message)) => {
            let _ = writeln!(err, "error: {message}");
            2
        }
        Err(Failure::Domain { kind, message }) => {
            let _ = match format {
                Format::Text => writeln!(err, "error ({kind}): {message}"),
                Format::Json => writeln!(
                    err,
                    "{}",
                    render(&json!({"schema": SCHEMA, "error": {"kind": kind, "message": message}}))
                ),
            };
            1
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<(), Failure> {
    let tie = cli.seed.map_or(TieBreak::Canonical, TieBreak::Seeded);
    let text = match cli.command {
        Command::Validate { input } => validate(&read_tri(&input)?, cli.format),
        Command::Info { input } => info(&read_tri(&input)?, tie, cli.format),
        Command::Homology { input } => homology(&read_tri(&input)?, tie, cli.format),
        Command::Certify { input } => certify_cmd(&read_tri(&input)?, tie, cli.format),
        Command::Aut { input } => aut(&read_tri(&input)?, cli.format),
        Command::Census {
            n,
            manifold,
            min_valence,
            count_only,
            out: path,
            jobs,
            time_limit,
            max_n,
        } => {
            if n == 0 {
                return Err(Failure::Usage("census needs n ≥ 1".into()));
            }
            if n > max_n {
                return Err(domain(
                    "resource-limit",
                    format!("n = {n} exceeds --max-n {max_n}"),
                ));
            }
            let time_limit = match time_limit {
                Some(s) if !(s.is_finite() && s > 0.0) => {
                    return Err(Failure::Usage("--time-limit must be positive".into()))
                }
                s => s.map(Duration::from_secs_f64),
            };
            let options = CensusOptions {
                jobs,
                max_results: None,
                time_limit,
            };
            let text = census(n, manifold, min_valence, count_only, &options, cli.format);
            if let Some(path) = path {
                return write_file(&path, &text);
            }
            text
        }
        Command::GroupBuild {
            spec,
            out: tri_out,
            report,
            max_vertices,
        } => {
            let g = read_group(&spec)?;
            let options = PipelineOptions {
                max_vertices,
                ..PipelineOptions::default()
            };
            let (t, r) = realize_group_with(&g, &options).map_err(|e| domain("pipeline", e))?;
            let doc = document(json!({"spec": spec, "report": r}));
            if let Some(path) = tri_out {
                write_file(&path, &serialize(&t))?;
            }
            if let Some(path) = report {
                write_file(&path, &render(&doc))?;
            }
            match cli.format {
                Format::Json => render(&doc),
                Format::Text => {
                    let s = &r.stages;
                    format!(
                        "group {spec}, order {}, H1 {}\n\
                         stages: Q {} -> Q' {} -> Q'' {} -> P_G {}\n\
                         aut_order {}, vol_D {}\n",
                        r.group_order,
                        r.h1_group,
                        s.q,
                        s.q_prime,
                        s.q_double_prime,
                        s.p_g,
                        r.aut_order,
                        real(r.vol_d),
                    )
                }
            }
        }
    };
    out.write_all(text.as_bytes())
        .map_err(|e| domain("io", e))
}

fn read_input(input: &str) -> Result<String, Failure> {
    if input == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| domain("io", e))?;
        Ok(s)
    } else {
        std::fs::read_to_string(input).map_err(|e| domain("io", format!("{input}: {e}")))
    }
}

fn read_tri(input: &str) -> Result<Triangulation, Failure> {
    parse(&read_input(input)?).map_err(|e| domain("invalid-triangulation", e))
}

fn read_group(spec: &str) -> Result<FiniteGroupTable, Failure> {
    match FiniteGroupTable::builtin(spec) {
        Ok(g) => Ok(g),
        Err(GroupError::UnknownSpec(_)) if Path::new(spec).is_file() => {
            FiniteGroupTable::parse(&read_input(spec)?).map_err(|e| domain("invalid-group", e))
        }
        Err(e) => Err(domain("invalid-group", e)),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| domain("io", format!("{}: {e}", path.display())))
}

/// Rounds to 12 significant digits.
fn real(x: f64) -> f64 {
    if x.is_finite() {
        format!("{x:.11e}").parse().expect("formatted float")
    } else {
        x
    }
}

/// Rounds every non-integer number in `v` to 12 significant digits.
fn round_reals(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = real(n.as_f64().expect("f64 number"));
            *v = json!(x);
        }
        Value::Array(a) => a.iter_mut().for_each(round_reals),
        Value::Object(o) => o.values_mut().for_each(round_reals),
        _ => {}
    }
}

/// Adds the schema version to a JSON object.
fn document(mut v: Value) -> Value {
    v.as_object_mut()
        .expect("documents are objects")
        .insert("schema".into(), json!(SCHEMA));
    v
}

fn render(v: &Value) -> String {
    let mut v = v.clone();
    round_reals(&mut v);
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

fn validate(t: &Triangulation, format: Format) -> String {
    let manifold = is_manifold(t);
    match format {
        Format::Text => format!("valid, n={}, manifold={manifold}\n", t.n()),
        Format::Json => render(&document(json!({
            "valid": true,
            "n": t.n(),
            "manifold": manifold,
        }))),
    }
}

/// The geometric report: sizes, volumes, cusps and the valence certificate.
fn geometry_json(t: &Triangulation, tie: TieBreak) -> (Value, Certificate) {
    let classes = edge_classes_with(t, tie);
    let v = volume_report_from(t.n(), &classes);
    let cusps: Vec<Value> = cusp_shapes_from(&classes)
        .iter()
        .map(|c| {
            json!({
                "valence": c.valence,
                "orientable": c.orientable,
                "area": c.area,
                "shape": c.shape_kind,
            })
        })
        .collect();
    let cert = certify(t);
    let doc = json!({
        "n": v.n,
        "genus": v.genus,
        "vol_N": v.vol_n,
        "vol_D": v.vol_d,
        "pm_complexity": v.pm_complexity,
        "cusps": cusps,
        "certificate": {"kind": cert.kind, "claims": cert.claims},
    });
    (doc, cert)
}

fn aut_json(r: &IsomGroupReport) -> Value {
    json!({
        "aut_order": r.aut_order,
        "aut_generators": r.aut_generators.len(),
        "isom_plus_order": r.valid.then_some(r.isom_plus_order),
        "isom_order": r.valid.then_some(r.isom_order),
        "exceptional_flag": r.exceptional_flag,
        "valid": r.valid,
    })
}

fn info(t: &Triangulation, tie: TieBreak, format: Format) -> String {
    let classes = edge_classes_with(t, tie);
    let links = vertex_links(t);
    let volume = volume_report_from(t.n(), &classes);
    let cusps = cusp_shapes_from(&classes);
    let h1 = h1_double_with(t, tie);
    let aut = automorphisms(t);
    match format {
        Format::Json => {
            let edges: Vec<Value> = classes
                .iter()
                .map(|c| {
                    json!({
                        "valence": c.valence,
                        "orientable": c.orientable,
                        "wedges": c.wedges,
                        "boundary_word": c.boundary_word,
                    })
                })
                .collect();
            let (geometry, _) = geometry_json(t, tie);
            render(&document(json!({
                "n": t.n(),
                "manifold": is_manifold(t),
                "genus": volume.genus,
                "edge_classes": edges,
                "vertex_links": links,
                "volume": volume,
                "cusps": cusps,
                "geometry": geometry,
                "h1_double": h1,
                "aut": aut_json(&aut),
            })))
        }
        Format::Text => {
            let mut s = format!(
                "n={}, manifold={}, genus={}, pm_complexity={}\n",
                t.n(),
                is_manifold(t),
                volume.genus,
                volume.pm_complexity
            );
            s += &format!("vol_N={} vol_D={}\n", real(volume.vol_n), real(volume.vol_d));
            for (i, c) in classes.iter().enumerate() {
                s += &format!(
                    "edge {i}: valence {}, {}\n",
                    c.valence,
                    if c.orientable { "orientable" } else { "non-orientable" }
                );
            }
            for (i, l) in links.iter().enumerate() {
                s += &format!(
                    "vertex {i}: link χ={}, {} genus {}\n",
                    l.euler_characteristic,
                    if l.orientable { "orientable" } else { "non-orientable" },
                    l.genus
                );
            }
            s += &format!("H1(D(T)) = {h1}\n");
            s += &format!("aut_order = {}\n", aut.aut_order);
            s
        }
    }
}

fn homology(t: &Triangulation, tie: TieBreak, format: Format) -> String {
    let double = h1_double_with(t, tie);
    let filling = h1_meridinal_filling(t);
    match format {
        Format::Text => format!("H1(D(T)) = {double}\nH1(meridinal filling) = {filling}\n"),
        Format::Json => render(&document(json!({
            "n": t.n(),
            "h1_double": double,
            "h1_meridinal_filling": filling,
        }))),
    }
}

fn certify_cmd(t: &Triangulation, tie: TieBreak, format: Format) -> String {
    let (doc, cert) = geometry_json(t, tie);
    match format {
        Format::Json => render(&document(doc)),
        Format::Text => {
            let mut s = format!(
                "{} (min valence {})\n",
                cert.kind.as_str(),
                cert.min_valence
            );
            for c in &cert.claims {
                s += &format!("claim {}: {}\n", c.id, c.statement);
            }
            s
        }
    }
}

fn aut(t: &Triangulation, format: Format) -> String {
    let r = automorphisms(t);
    match format {
        Format::Json => render(&document(aut_json(&r))),
        Format::Text => {
            let mut s = format!("aut_order = {}\n", r.aut_order);
            if r.valid {
                s += &format!("isom_plus_order = {}\nisom_order = {}\n", r.isom_plus_order, r.isom_order);
            } else {
                s += "isometry group not asserted (exceptional candidate)\n";
            }
            s
        }
    }
}

fn census(
    n: usize,
    manifold: bool,
    min_valence: Option<usize>,
    count_only: bool,
    options: &CensusOptions,
    format: Format,
) -> String {
    let k = min_valence.unwrap_or(0);
    let filter = move |t: &Triangulation| {
        (!manifold || is_manifold(t))
            && edge_classes_with(t, TieBreak::Canonical)
                .iter()
                .all(|c| c.valence >= k)
    };
    let result = enumerate(n, &filter, options);
    let count = result.forms.len();
    match (format, count_only) {
        (Format::Text, true) => format!("{count}\n"),
        (Format::Text, false) => {
            let mut s = String::new();
            for f in &result.forms {
                let line: Vec<&str> = f.signature.lines().collect();
                s += &line.join("; ");
                s.push('\n');
            }
            if let Some(why) = &result.truncated {
                s += &format!("% truncated: {why}\n");
            }
            s
        }
        (Format::Json, true) => render(&document(json!({
            "n": n,
            "count": count,
            "truncated": result.truncated,
        }))),
        (Format::Json, false) => {
            let members: Vec<Value> = result
                .forms
                .iter()
                .map(|f| {
                    let t = &f.representative;
                    let classes = edge_classes_with(t, TieBreak::Canonical);
                    let mut valences: Vec<usize> = classes.iter().map(|c| c.valence).collect();
                    valences.sort_unstable();
                    json!({
                        "signature": f.signature,
                        "manifold": is_manifold(t),
                        "valences": valences,
                        "h1_double": h1_double_with(t, TieBreak::Canonical),
                    })
                })
                .collect();
            render(&document(json!({
                "n": n,
                "count": count,
                "truncated": result.truncated,
                "members": members,
            })))
        }
    }
}

//! Command-line front end. JSON goes to stdout, human-readable tables to
//! stderr (unless `--quiet`).
//!
//! Exit codes: 0 success, 1 a mathematical check failed, 2 usage or input error.

use std::fmt::Write as _;
use std::io::Read;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::geometry::{covolume_gauss_bonnet, covolume_siegel, manifold_volume, vinberg_symbol};
use crate::involutions::equivalence_classes;
use crate::modtwo::{admissibility, d_psi, weight_vector};
use crate::symbol::{parse_symbol, CoxeterSymbol};
use crate::torsionfree::{build_dagger, cyclic_extension, ClosureCheck, DaggerSymbol, Mode};
use crate::weyl::WeylData;

#[derive(Parser, Debug)]
#[command(name = "coxtor", version, about = "Torsion-free subgroups of Coxeter groups and hyperbolic manifold volumes")]
struct Cli {
    /// Read input from this file instead of stdin
    #[arg(long, global = true)]
    file: Option<String>,
    /// Emit JSON (always on; kept for scripts)
    #[arg(long, global = true)]
    json: bool,
    /// Suppress the human-readable table on stderr
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Coxeter symbols read as JSON
    #[command(subcommand)]
    Symbol(SymbolCmd),
    /// Weyl group data
    #[command(subcommand)]
    Weyl(WeylCmd),
    /// Weight vectors and mod-2 data
    #[command(subcommand)]
    Modtwo(ModtwoCmd),
    /// Involution classes
    #[command(subcommand)]
    Involutions(InvolutionsCmd),
    /// Dagger symbols and torsion-free certificates
    #[command(subcommand)]
    Tf(TfCmd),
    /// Covolumes and manifold volumes
    #[command(subcommand)]
    Geometry(GeometryCmd),
}

#[derive(Subcommand, Debug)]
enum SymbolCmd {
    Classify,
    Euler,
    Signature {
        /// Cosine value used for infinite labels
        #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
        inf: f64,
    },
}

#[derive(Args, Debug)]
struct TypeArgs {
    family: String,
    rank: String,
}

impl TypeArgs {
    fn load(&self) -> Result<WeylData> {
        WeylData::parse(&format!("{}{}", self.family, self.rank))
    }
}

#[derive(Subcommand, Debug)]
enum WeylCmd {
    Info(TypeArgs),
}

#[derive(Subcommand, Debug)]
enum ModtwoCmd {
    Weight {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long)]
        node: usize,
    },
    Admissible(TypeArgs),
    Dpsi(TypeArgs),
}

#[derive(Subcommand, Debug)]
enum InvolutionsCmd {
    Classes {
        /// Symbol JSON file (defaults to --file or stdin)
        #[arg(long)]
        symbol: Option<String>,
    },
}

#[derive(Args, Debug)]
struct DaggerArgs {
    /// Weyl type, e.g. `E6` or `E 6`
    #[arg(long, num_args = 1..=2, required = true)]
    psi: Vec<String>,
    /// Attachment nodes (1-based), comma or space separated
    #[arg(long, num_args = 1.., value_delimiter = ',', required = true)]
    nodes: Vec<usize>,
    #[arg(long, value_enum, default_value_t = ModeArg::Hat)]
    mode: ModeArg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Hat,
    Plain,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Hat => Mode::Hat,
            ModeArg::Plain => Mode::Plain,
        }
    }
}

impl DaggerArgs {
    fn load(&self) -> Result<DaggerSymbol> {
        let psi = WeylData::parse(&self.psi.concat())?;
        let mut nodes = Vec::with_capacity(self.nodes.len());
        for &k in &self.nodes {
            if k == 0 || k > psi.rank {
                return Err(Error::UnknownNode(format!("{} has no node {k}", psi.name())));
            }
            nodes.push(k - 1);
        }
        build_dagger(&psi, &nodes)
    }
}

#[derive(Subcommand, Debug)]
enum TfCmd {
    Build(DaggerArgs),
    Certify(DaggerArgs),
    Extend(DaggerArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Route {
    Siegel,
    Gb,
}

#[derive(Subcommand, Debug)]
enum GeometryCmd {
    Volume { n: u32 },
    Covol {
        #[arg(long, value_enum)]
        route: Route,
        #[arg(long)]
        dim: u32,
    },
}

/// Result of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Out {
    json: Value,
    table: String,
    ok: bool,
}

impl Out {
    fn new(json: Value, table: String) -> Out {
        Out { json, table, ok: true }
    }
}

fn wide(v: u128) -> Value {
    u64::try_from(v).map(Value::from).unwrap_or_else(|_| Value::from(v.to_string()))
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("output types serialize")
}

/// Runs the CLI on `args` (including the program name) with `input` as stdin.
pub fn run<I, T>(args: I, input: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(&cli, input) {
        Ok(out) => Outcome {
            code: if out.ok { 0 } else { 1 },
            stdout: format!("{}\n", out.json),
            stderr: if cli.quiet { String::new() } else { out.table },
        },
        Err(e) => Outcome {
            code: if matches!(e, Error::CheckFailed(_)) { 1 } else { 2 },
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn read_input(cli: &Cli, path: Option<&str>, input: &mut dyn Read) -> Result<String> {
    match path.or(cli.file.as_deref()) {
        Some(p) => std::fs::read_to_string(p).map_err(|e| Error::Parse(format!("{p}: {e}"))),
        None => {
            let mut s = String::new();
            input.read_to_string(&mut s).map_err(|e| Error::Parse(format!("stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn read_symbol(cli: &Cli, path: Option<&str>, input: &mut dyn Read) -> Result<CoxeterSymbol> {
    parse_symbol(&read_input(cli, path, input)?)
}

fn dispatch(cli: &Cli, input: &mut dyn Read) -> Result<Out> {
    match &cli.verb {
        Verb::Symbol(cmd) => symbol_cmd(cli, cmd, input),
        Verb::Weyl(WeylCmd::Info(ty)) => weyl_info(&ty.load()?),
        Verb::Modtwo(cmd) => modtwo_cmd(cmd),
        Verb::Involutions(InvolutionsCmd::Classes { symbol }) => {
            let g = read_symbol(cli, symbol.as_deref(), input)?;
            classes(&g)
        }
        Verb::Tf(cmd) => tf_cmd(cmd),
        Verb::Geometry(cmd) => geometry_cmd(cmd),
    }
}

fn symbol_cmd(cli: &Cli, cmd: &SymbolCmd, input: &mut dyn Read) -> Result<Out> {
    let g = read_symbol(cli, None, input)?;
    Ok(match cmd {
        SymbolCmd::Classify => {
            let types = g.classify_finite_type().map(|ts| ts.iter().map(|t| t.to_string()).collect::<Vec<_>>());
            let table = match &types {
                Some(ts) => format!("finite: {}\n", ts.join(" x ")),
                None => "not finite\n".into(),
            };
            Out::new(json!({ "finite": types.is_some(), "types": types }), table)
        }
        SymbolCmd::Euler => {
            let chi = g.euler_characteristic()?;
            let table = format!("chi = {chi}\n");
            Out::new(json!({ "chi": to_value(&chi) }), table)
        }
        SymbolCmd::Signature { inf } => {
            let (p, n, z) = g.signature(*inf)?;
            Out::new(json!({ "positive": p, "negative": n, "zero": z }), format!("signature ({p}, {n}, {z})\n"))
        }
    })
}

fn weyl_info(w: &WeylData) -> Result<Out> {
    let order = w.order().to_string();
    let mut table = String::new();
    writeln!(table, "{}  order {order}  h {}", w.name(), w.h).unwrap();
    writeln!(table, "exponents {:?}", w.exponents).unwrap();
    for row in w.cartan.rows() {
        writeln!(table, "  {}", row.iter().map(|x| format!("{x:>2}")).collect::<Vec<_>>().join(" ")).unwrap();
    }
    Ok(Out::new(
        json!({
            "name": w.name(),
            "rank": w.rank,
            "order": order.parse::<u128>().map(wide).unwrap_or(Value::from(order)),
            "h": w.h,
            "exponents": w.exponents,
            "index_of_connection": w.index_of_connection,
            "minus_one_type": w.minus_one_type,
            "cartan": to_value(&w.cartan),
        }),
        table,
    ))
}

fn check_node(w: &WeylData, k: usize) -> Result<usize> {
    if k == 0 || k > w.rank {
        return Err(Error::UnknownNode(format!("{} has no node {k}", w.name())));
    }
    Ok(k - 1)
}

fn modtwo_cmd(cmd: &ModtwoCmd) -> Result<Out> {
    match cmd {
        ModtwoCmd::Weight { ty, node } => {
            let w = ty.load()?;
            let s = check_node(&w, *node)?;
            let u = weight_vector(&w, s);
            let bits = u.mod2().to_vec();
            let table = format!("u_{node} = {:?}  mod 2 {:?}\n", u.coords, bits);
            Ok(Out::new(json!({ "psi": w.name(), "node": node, "coords": u.coords, "mod2": bits }), table))
        }
        ModtwoCmd::Admissible(ty) => {
            let w = ty.load()?;
            let mut table = String::new();
            let nodes: Vec<Value> = (0..w.rank)
                .map(|s| {
                    let a = admissibility(&w, s);
                    writeln!(table, "{:>3}  {}", s + 1, a.tag()).unwrap();
                    json!({ "node": s + 1, "admissibility": a })
                })
                .collect();
            Ok(Out::new(json!({ "psi": w.name(), "nodes": nodes }), table))
        }
        ModtwoCmd::Dpsi(ty) => {
            let w = ty.load()?;
            let k = d_psi(&w)?;
            let table = format!("{}: dim ker {}  dim im {}  d {}\n", w.name(), k.ker.dim(), k.im.dim(), k.d);
            Ok(Out::new(json!({ "psi": w.name(), "ker": k.ker.dim(), "im": k.im.dim(), "d": k.d }), table))
        }
    }
}

fn classes(g: &CoxeterSymbol) -> Result<Out> {
    let mut table = String::new();
    let list: Vec<Value> = equivalence_classes(g)?
        .iter()
        .map(|c| {
            let members: Vec<Vec<&str>> =
                c.members.iter().map(|t| t.iter().map(|a| g.name(a)).collect()).collect();
            let shown: Vec<String> = members.iter().map(|m| format!("{{{}}}", m.join(","))).collect();
            writeln!(table, "rank {}: {}", c.rank, shown.join(" ")).unwrap();
            json!({ "rank": c.rank, "members": members })
        })
        .collect();
    Ok(Out::new(Value::from(list), table))
}

fn tf_cmd(cmd: &TfCmd) -> Result<Out> {
    match cmd {
        TfCmd::Build(a) => {
            let d = a.load()?;
            let mode = a.mode.into();
            let r = d.kernel_index(mode);
            let closure = match r.closure {
                ClosureCheck::Verified(c) => json!({ "status": "verified", "order": wide(c) }),
                ClosureCheck::Mismatch(c) => json!({ "status": "mismatch", "order": wide(c) }),
                ClosureCheck::Skipped => json!({ "status": "skipped" }),
            };
            let kinds: Vec<Value> = d
                .attachments()
                .iter()
                .map(|at| json!({ "node": at.node + 1, "admissibility": at.kind }))
                .collect();
            let table = format!(
                "{} with {} pendant(s), l = {}, {} index {}\n",
                d.psi().name(),
                d.m(),
                d.ell(),
                mode,
                r.index
            );
            let mut out = Out::new(
                json!({
                    "psi": d.psi().name(),
                    "attachments": kinds,
                    "ell": d.ell(),
                    "mode": mode,
                    "gamma": d.gamma().to_json_value(),
                    "index": wide(r.index),
                    "torsion_free_expected": r.torsion_free_expected,
                    "closure": closure,
                }),
                table,
            );
            out.ok = !matches!(r.closure, ClosureCheck::Mismatch(_));
            Ok(out)
        }
        TfCmd::Certify(a) => {
            let d = a.load()?;
            let cert = d.certify_torsion_free(a.mode.into())?;
            Ok(certificate_out(to_value(&cert), cert.ok(), cert.steps.iter().map(|s| (&s.name, s.ok))))
        }
        TfCmd::Extend(a) => {
            let d = a.load()?;
            let ext = cyclic_extension(&d)?;
            let cert = &ext.certificate;
            Ok(certificate_out(to_value(cert), cert.ok(), cert.steps.iter().map(|s| (&s.name, s.ok))))
        }
    }
}

fn certificate_out<'a>(json: Value, ok: bool, steps: impl Iterator<Item = (&'a String, bool)>) -> Out {
    let mut table = String::new();
    for (name, pass) in steps {
        writeln!(table, "{}  {name}", if pass { "ok  " } else { "FAIL" }).unwrap();
    }
    writeln!(table, "{}", if ok { "certificate holds" } else { "certificate FAILED" }).unwrap();
    Out { json, table, ok }
}

fn geometry_cmd(cmd: &GeometryCmd) -> Result<Out> {
    match cmd {
        GeometryCmd::Volume { n } => {
            let v = manifold_volume(*n)?;
            let table = format!("vol = {}  chi = {}  index {}  deck {}\n", v.vol, v.chi, v.index, v.deck);
            Ok(Out::new(to_value(&v), table))
        }
        GeometryCmd::Covol { route, dim } => {
            let c = match route {
                Route::Siegel => covolume_siegel(*dim)?,
                Route::Gb => covolume_gauss_bonnet(&vinberg_symbol(*dim)?.gamma, *dim)?,
            };
            Ok(Out::new(json!({ "covol": to_value(&c) }), format!("covol = {c}\n")))
        }
    }
}

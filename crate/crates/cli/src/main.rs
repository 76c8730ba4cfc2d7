//! `gcpoly`: generalized characteristic polynomials of graphs and bundles.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use gcpoly::characters::{all_characters, character_table};
use gcpoly::format::{parse_graph, parse_voltages, Voltages};
use gcpoly::poly::{Coefficient, TermRecord};
use gcpoly::trees::complexity_kirchhoff;
use gcpoly::zeta::{bartholdi_direct, bartholdi_from_gcp, ZetaReciprocal};
use gcpoly::{
    build_bundle, complexity_gcp, gcp_bundle_factored, gcp_direct, AbelianGroup, BivarPoly,
    CayleyFiber, Error, FactoredGcp, FiberSpec, Graph, IntPoly, VoltageAssignment,
};
use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Parser)]
#[command(name = "gcpoly", version, about = "Exact generalized characteristic polynomials F(λ, μ) = det(λI − (A − μD))")]
struct Cli {
    /// Render variables as λ, μ instead of l, m.
    #[arg(long, global = true)]
    unicode: bool,
    /// Emit one JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Include wall-clock timings (microseconds) in the JSON document.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// F of a graph file.
    Gcp { graph: PathBuf },
    /// F of the bundle of a base graph with a fiber and a voltage file.
    Bundle {
        base: PathBuf,
        /// Voltage file (`group ...` or `perm ...`).
        #[arg(long)]
        voltages: PathBuf,
        /// Cayley fiber over the voltage group: empty, complete, cycle, or
        /// cayley:S with S a `/`-separated list of comma-separated elements.
        #[arg(long, conflicts_with = "fiber_graph")]
        fiber: Option<String>,
        /// Explicit fiber graph file, for permutation voltages.
        #[arg(long)]
        fiber_graph: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = BundleMethod::Both)]
        method: BundleMethod,
    },
    /// F of the covering graph (edgeless fiber) of a base graph.
    Cover {
        base: PathBuf,
        #[arg(long)]
        voltages: PathBuf,
        #[arg(long, value_enum, default_value_t = BundleMethod::Both)]
        method: BundleMethod,
    },
    /// Number of spanning trees.
    Trees {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = TreeMethod::Both)]
        method: TreeMethod,
    },
    /// Reciprocal of the Bartholdi zeta function.
    Zeta {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = ZetaMethod::Both)]
        method: ZetaMethod,
    },
    /// CSV of direct vs factored times for K_{1,3} with fiber K_n.
    Bench {
        #[arg(long, default_value_t = 2)]
        from: u64,
        #[arg(long, default_value_t = 12)]
        to: u64,
        /// Runs per size; the minimum is reported.
        #[arg(long, default_value_t = 3)]
        reps: usize,
    },
    /// Character table of Z_{n1} x Z_{n2} x ...
    DumpCharacters {
        #[arg(required = true)]
        orders: Vec<u64>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum BundleMethod {
    Direct,
    Factored,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum TreeMethod {
    Gcp,
    Kirchhoff,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum ZetaMethod {
    Direct,
    Substitution,
    Both,
}

/// Failure with its exit code.
#[derive(Debug)]
enum Failure {
    Io(String),
    Lib(Error),
    /// A library error attributed to an input file.
    InFile(String, Error),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Io(_) => 1,
            Failure::Lib(e) | Failure::InFile(_, e) => match e {
                Error::Unsupported(_) => 3,
                Error::IdentityViolation(_) | Error::VariableMismatch(..) | Error::NotSquare { .. } => 4,
                _ => 2,
            },
            Failure::Mismatch(_) => 4,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Io(m) => m.clone(),
            Failure::Lib(Error::Unsupported(m)) => {
                format!("unsupported: {m}; use --method direct")
            }
            Failure::Lib(e) => e.to_string(),
            Failure::InFile(path, e) => format!("{path}: {e}"),
            Failure::Mismatch(m) => format!("methods disagree: {m}"),
        }
    }
}

type Res<T> = std::result::Result<T, Failure>;

/// A named input file with its contents.
struct Input {
    path: String,
    text: String,
}

fn read(path: &Path) -> Res<Input> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    Ok(Input {
        path: path.display().to_string(),
        text,
    })
}

fn graph_from(input: &Input) -> Res<Graph> {
    parse_graph(&input.text).map_err(|e| Failure::InFile(input.path.clone(), e))
}

fn digest(inputs: &[&str]) -> String {
    let mut h = Sha256::new();
    for s in inputs {
        h.update((s.len() as u64).to_le_bytes());
        h.update(s.as_bytes());
    }
    format!("{:x}", h.finalize())
}

#[derive(Serialize)]
struct PolyDoc {
    text: String,
    terms: Vec<TermRecord>,
}

fn poly_doc<R: Coefficient>(p: &BivarPoly<R>, unicode: bool) -> PolyDoc {
    PolyDoc {
        text: p.render(unicode),
        terms: p.to_records(unicode),
    }
}

#[derive(Serialize)]
struct FactorDoc {
    character: String,
    polynomial: PolyDoc,
}

#[derive(Serialize)]
struct Document {
    command: &'static str,
    inputs_digest: String,
    method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    factors: Option<Vec<FactorDoc>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    product: Option<PolyDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timings_us: Option<serde_json::Map<String, serde_json::Value>>,
    agree: Option<bool>,
}

struct Ctx {
    unicode: bool,
    json: bool,
    timings: bool,
}

/// Collected timings, reported on stderr in text mode.
#[derive(Default)]
struct Clock(Vec<(&'static str, u128)>);

impl Clock {
    fn time<T>(&mut self, label: &'static str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.0.push((label, start.elapsed().as_micros()));
        out
    }

    fn into_json(self, ctx: &Ctx) -> Option<serde_json::Map<String, serde_json::Value>> {
        if !ctx.json {
            for (label, us) in &self.0 {
                eprintln!("time {label}: {us} us");
            }
            return None;
        }
        ctx.timings.then(|| {
            self.0
                .into_iter()
                .map(|(k, v)| (k.to_string(), serde_json::Value::from(v as u64)))
                .collect()
        })
    }
}

fn emit(ctx: &Ctx, doc: Document, text: Vec<String>) {
    if ctx.json {
        println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    } else {
        for line in text {
            println!("{line}");
        }
    }
}

fn cmd_gcp(ctx: &Ctx, path: &Path) -> Res<()> {
    let input = read(path)?;
    let g = graph_from(&input)?;
    let mut clock = Clock::default();
    let f = clock.time("direct", || gcp_direct(&g));
    let text = vec![f.render(ctx.unicode)];
    let doc = Document {
        command: "gcp",
        inputs_digest: digest(&[&input.text]),
        method: "direct".into(),
        factors: None,
        product: Some(poly_doc(&f, ctx.unicode)),
        value: None,
        timings_us: clock.into_json(ctx),
        agree: None,
    };
    emit(ctx, doc, text);
    Ok(())
}

fn parse_fiber(spec: &str, group: &AbelianGroup) -> Res<CayleyFiber> {
    let bad = |m: String| Failure::Lib(Error::InvalidFiber(m));
    match spec {
        "empty" => Ok(CayleyFiber::edgeless(group.clone())),
        "complete" => Ok(CayleyFiber::complete(group.clone())),
        "cycle" => {
            if group.orders().len() != 1 {
                return Err(bad("cycle fiber needs a cyclic group".into()));
            }
            Ok(CayleyFiber::cycle(group.orders()[0])?)
        }
        other => {
            let list = other
                .strip_prefix("cayley:")
                .ok_or_else(|| bad(format!("unknown fiber `{other}`")))?;
            let mut set = Vec::new();
            for item in list.split('/').filter(|s| !s.is_empty()) {
                let comps = item
                    .split(',')
                    .map(|c| c.trim().parse::<i64>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| bad(format!("bad element `{item}`")))?;
                if comps.len() != group.orders().len() {
                    return Err(bad(format!("element `{item}` has the wrong number of components")));
                }
                set.push(group.element(&comps)?);
            }
            Ok(CayleyFiber::new(group.clone(), set)?)
        }
    }
}

fn factors_doc(f: &FactoredGcp, unicode: bool) -> Vec<FactorDoc> {
    f.characters
        .iter()
        .zip(&f.factors)
        .map(|(chi, p)| FactorDoc {
            character: chi.index().to_string(),
            polynomial: poly_doc(p, unicode),
        })
        .collect()
}

fn factor_lines(f: &FactoredGcp, unicode: bool) -> Vec<String> {
    f.characters
        .iter()
        .zip(&f.factors)
        .map(|(chi, p)| format!("factor {}: {}", chi.index(), p.render(unicode)))
        .collect()
}

/// Shared tail of `bundle` and `cover`.
fn run_bundle(
    ctx: &Ctx,
    command: &'static str,
    digest_inputs: &[&str],
    base: &Graph,
    fiber: FiberSpec,
    voltages: &Voltages,
    method: BundleMethod,
) -> Res<()> {
    let mut clock = Clock::default();
    let direct = if method != BundleMethod::Factored {
        let g = match voltages {
            Voltages::Abelian(phi) => build_bundle(base, &fiber, phi)?,
            Voltages::Permutation(phi) => build_bundle(base, &fiber, phi)?,
        };
        Some(clock.time("direct", || gcp_direct(&g)))
    } else {
        None
    };
    let factored = if method != BundleMethod::Direct {
        let (phi, cayley) = match (voltages, &fiber) {
            (Voltages::Abelian(phi), FiberSpec::Cayley(c)) => (phi, c),
            _ => {
                return Err(Error::Unsupported(
                    "the factored method needs abelian voltages and a Cayley fiber".into(),
                )
                .into())
            }
        };
        Some(clock.time("factored", || gcp_bundle_factored(base, cayley, phi))?)
    } else {
        None
    };
    let agree = match (&direct, &factored) {
        (Some(d), Some(f)) => Some(*d == f.product),
        _ => None,
    };
    let mut text = Vec::new();
    if let Some(f) = &factored {
        text.extend(factor_lines(f, ctx.unicode));
    }
    let product: &IntPoly = factored
        .as_ref()
        .map(|f| &f.product)
        .or(direct.as_ref())
        .expect("at least one method ran");
    match (&direct, &factored) {
        (Some(d), Some(f)) => {
            text.push(format!("direct: {}", d.render(ctx.unicode)));
            text.push(format!("factored: {}", f.product.render(ctx.unicode)));
            text.push(if agree == Some(true) { "OK" } else { "MISMATCH" }.into());
        }
        _ => text.push(format!("product: {}", product.render(ctx.unicode))),
    }
    let doc = Document {
        command,
        inputs_digest: digest(digest_inputs),
        method: serde_json::to_value(method).unwrap().as_str().unwrap().to_string(),
        factors: factored.as_ref().map(|f| factors_doc(f, ctx.unicode)),
        product: Some(poly_doc(product, ctx.unicode)),
        value: None,
        timings_us: clock.into_json(ctx),
        agree,
    };
    emit(ctx, doc, text);
    if agree == Some(false) {
        return Err(Failure::Mismatch("direct and factored products differ".into()));
    }
    Ok(())
}

fn load_voltages(path: &Path, base: &Graph) -> Res<(Input, Voltages)> {
    let input = read(path)?;
    let v = parse_voltages(&input.text, base).map_err(|e| Failure::InFile(input.path.clone(), e))?;
    Ok((input, v))
}

fn cmd_bundle(
    ctx: &Ctx,
    base_path: &Path,
    voltages_path: &Path,
    fiber: Option<&str>,
    fiber_graph: Option<&Path>,
    method: BundleMethod,
) -> Res<()> {
    let base_in = read(base_path)?;
    let base = graph_from(&base_in)?;
    let (volt_in, voltages) = load_voltages(voltages_path, &base)?;
    let (fiber, fiber_desc) = match (fiber, fiber_graph, &voltages) {
        (_, Some(path), _) => {
            let input = read(path)?;
            (FiberSpec::Explicit(graph_from(&input)?), input.text)
        }
        (Some(spec), None, Voltages::Abelian(phi)) => {
            (FiberSpec::Cayley(parse_fiber(spec, phi.group())?), spec.to_string())
        }
        (None, None, Voltages::Abelian(phi)) => (
            FiberSpec::Cayley(CayleyFiber::complete(phi.group().clone())),
            "complete".into(),
        ),
        (_, None, Voltages::Permutation(_)) => {
            return Err(Error::InvalidFiber(
                "permutation voltages need an explicit --fiber-graph".into(),
            )
            .into())
        }
    };
    run_bundle(
        ctx,
        "bundle",
        &[&base_in.text, &fiber_desc, &volt_in.text],
        &base,
        fiber,
        &voltages,
        method,
    )
}

fn cmd_cover(ctx: &Ctx, base_path: &Path, voltages_path: &Path, method: BundleMethod) -> Res<()> {
    let base_in = read(base_path)?;
    let base = graph_from(&base_in)?;
    let (volt_in, voltages) = load_voltages(voltages_path, &base)?;
    let fiber = match &voltages {
        Voltages::Abelian(phi) => FiberSpec::Cayley(CayleyFiber::edgeless(phi.group().clone())),
        Voltages::Permutation(phi) => {
            use gcpoly::VoltageGroup;
            FiberSpec::Explicit(Graph::empty(phi.group().degree()))
        }
    };
    run_bundle(
        ctx,
        "cover",
        &[&base_in.text, "empty", &volt_in.text],
        &base,
        fiber,
        &voltages,
        method,
    )
}

fn cmd_trees(ctx: &Ctx, path: &Path, method: TreeMethod) -> Res<()> {
    let input = read(path)?;
    let g = graph_from(&input)?;
    let mut clock = Clock::default();
    let via_gcp = match method {
        TreeMethod::Kirchhoff => None,
        _ => Some(clock.time("gcp", || complexity_gcp(&g))?),
    };
    let via_kirchhoff = match method {
        TreeMethod::Gcp => None,
        _ => Some(clock.time("kirchhoff", || complexity_kirchhoff(&g))),
    };
    let agree = match (&via_gcp, &via_kirchhoff) {
        (Some(a), Some(b)) => Some(a == b),
        _ => None,
    };
    let line = match (&via_gcp, &via_kirchhoff) {
        (Some(a), Some(b)) => format!("{a} {b} {}", if a == b { "OK" } else { "MISMATCH" }),
        (Some(a), None) | (None, Some(a)) => a.to_string(),
        (None, None) => unreachable!(),
    };
    let value = serde_json::json!({
        "gcp": via_gcp.as_ref().map(|v| v.to_string()),
        "kirchhoff": via_kirchhoff.as_ref().map(|v| v.to_string()),
    });
    let doc = Document {
        command: "trees",
        inputs_digest: digest(&[&input.text]),
        method: serde_json::to_value(method).unwrap().as_str().unwrap().to_string(),
        factors: None,
        product: None,
        value: Some(value),
        timings_us: clock.into_json(ctx),
        agree,
    };
    emit(ctx, doc, vec![line]);
    if agree == Some(false) {
        return Err(Failure::Mismatch("spanning-tree counts differ".into()));
    }
    Ok(())
}

fn zeta_lines(label: &str, z: &ZetaReciprocal, unicode: bool) -> Vec<String> {
    vec![
        format!("{label}prefactor: ({})^{}", z.prefactor_base.render(unicode), z.prefactor_exponent),
        format!("{label}core: {}", z.core.render(unicode)),
    ]
}

fn cmd_zeta(ctx: &Ctx, path: &Path, method: ZetaMethod) -> Res<()> {
    let input = read(path)?;
    let g = graph_from(&input)?;
    let mut clock = Clock::default();
    let direct = match method {
        ZetaMethod::Substitution => None,
        _ => Some(clock.time("direct", || bartholdi_direct(&g))),
    };
    let subst = match method {
        ZetaMethod::Direct => None,
        _ => Some(clock.time("substitution", || bartholdi_from_gcp(&g, &gcp_direct(&g)))?),
    };
    let mut text = Vec::new();
    let agree = match (&direct, &subst) {
        (Some(d), Some(s)) => {
            text.extend(zeta_lines("direct ", d, ctx.unicode));
            text.extend(zeta_lines("substitution ", s, ctx.unicode));
            let ok = d == s;
            text.push(if ok { "OK" } else { "MISMATCH" }.into());
            Some(ok)
        }
        (Some(z), None) | (None, Some(z)) => {
            text.extend(zeta_lines("", z, ctx.unicode));
            None
        }
        (None, None) => unreachable!(),
    };
    let z = direct.as_ref().or(subst.as_ref()).unwrap();
    let value = serde_json::json!({
        "prefactor_base": poly_doc(&z.prefactor_base, ctx.unicode),
        "prefactor_exponent": z.prefactor_exponent,
    });
    let doc = Document {
        command: "zeta",
        inputs_digest: digest(&[&input.text]),
        method: serde_json::to_value(method).unwrap().as_str().unwrap().to_string(),
        factors: None,
        product: Some(poly_doc(&z.core, ctx.unicode)),
        value: Some(value),
        timings_us: clock.into_json(ctx),
        agree,
    };
    emit(ctx, doc, text);
    if agree == Some(false) {
        return Err(Failure::Mismatch("zeta cores differ".into()));
    }
    Ok(())
}

fn min_time<T>(reps: usize, mut f: impl FnMut() -> T) -> (T, u128) {
    let mut best = u128::MAX;
    let mut out = None;
    for _ in 0..reps.max(1) {
        let start = Instant::now();
        let v = f();
        best = best.min(start.elapsed().as_micros());
        out = Some(v);
    }
    (out.unwrap(), best)
}

fn cmd_bench(from: u64, to: u64, reps: usize) -> Res<()> {
    let base = Graph::star(3);
    println!("n,t_direct_us,t_factored_us");
    for n in from.max(2)..=to {
        let group = AbelianGroup::cyclic(n)?;
        let generator = group.element(&[1])?;
        let phi = VoltageAssignment::from_fn(&base, group.clone(), |_, _| generator.clone())?;
        let fiber = CayleyFiber::complete(group);
        let bundle = build_bundle(&base, &FiberSpec::Cayley(fiber.clone()), &phi)?;
        let (direct, t_direct) = min_time(reps, || gcp_direct(&bundle));
        let (factored, t_factored) = min_time(reps, || gcp_bundle_factored(&base, &fiber, &phi));
        if factored?.product != direct {
            return Err(Failure::Mismatch(format!("n = {n}")));
        }
        println!("{n},{t_direct},{t_factored}");
    }
    Ok(())
}

fn cmd_dump_characters(ctx: &Ctx, orders: Vec<u64>) -> Res<()> {
    let group = AbelianGroup::new(orders)?;
    let elements: Vec<String> = group.elements().map(|g| g.to_string()).collect();
    let rows: Vec<(String, Vec<String>)> = all_characters(&group)
        .iter()
        .zip(character_table(&group))
        .map(|(chi, row)| {
            (
                chi.index().to_string(),
                row.iter().map(|v| v.render(ctx.unicode)).collect(),
            )
        })
        .collect();
    if ctx.json {
        let doc = serde_json::json!({
            "command": "dump-characters",
            "group": group.to_string(),
            "elements": elements,
            "characters": rows
                .iter()
                .map(|(idx, vals)| serde_json::json!({ "index": idx, "values": vals }))
                .collect::<Vec<_>>(),
        });
        println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    } else {
        println!("group {group}");
        println!("elements {}", elements.join(" "));
        for (idx, vals) in rows {
            println!("chi{idx}: {}", vals.join(" | "));
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Res<()> {
    let ctx = Ctx {
        unicode: cli.unicode,
        json: cli.json,
        timings: cli.timings,
    };
    match cli.command {
        Command::Gcp { graph } => cmd_gcp(&ctx, &graph),
        Command::Bundle {
            base,
            voltages,
            fiber,
            fiber_graph,
            method,
        } => cmd_bundle(&ctx, &base, &voltages, fiber.as_deref(), fiber_graph.as_deref(), method),
        Command::Cover {
            base,
            voltages,
            method,
        } => cmd_cover(&ctx, &base, &voltages, method),
        Command::Trees { graph, method } => cmd_trees(&ctx, &graph, method),
        Command::Zeta { graph, method } => cmd_zeta(&ctx, &graph, method),
        Command::Bench { from, to, reps } => cmd_bench(from, to, reps),
        Command::DumpCharacters { orders } => cmd_dump_characters(&ctx, orders),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use parityc::census::{cocycle_census, CensusOptions, LScope, DEFAULT_BUDGET};
use parityc::cochains::{Convention, Quasiaction};
use parityc::error::{CensusError, Error, ExtensionError};
use parityc::extensions::{
    build_on_subgroup, build_quasi_extension, canonical_roundtrip, classify_splittings, semidirect_product,
    Associativity, Fiber,
};
use parityc::groups::{automorphism_group, Elem, FiniteGroup, Subgroup, DEFAULT_AUT_BOUND};
use parityc::integrability::{holonomy_group, integrability};
use parityc::io::{load_cochain, load_extension, load_group, ExtensionFile, FiberSpec, GroupFile};
use parityc::verify::{self, Suite, SuiteReport, VerifyOptions};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_BUDGET: u8 = 2;
const EXIT_NOT_ASSOCIATIVE: u8 = 3;
const EXIT_NO_SPLITTING: u8 = 4;
const EXIT_USAGE: u8 = 64;
const EXIT_BAD_INPUT: u8 = 65;

#[derive(Debug, Parser)]
#[command(name = "parityc", version, about = "Non-abelian group cohomology of finite groups")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Cap on the size of enumerated cochain spaces.
    #[arg(long, env = "PARITYC_BUDGET", global = true)]
    budget: Option<u64>,
    /// Worker shards for cocycle enumeration.
    #[arg(long, default_value_t = 1, global = true)]
    shards: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConventionArg {
    BoundaryFirst,
    CochainFirst,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate a group, cochain or extension file, or a builtin group name.
    Validate { input: String },
    /// Automorphism group of N.
    Aut {
        #[arg(long = "N")]
        n: String,
    },
    /// Cocycles and cohomology classes per quasiaction.
    Census(CensusArgs),
    /// Build the quasi-extension of a 2-cochain file.
    Extend(ExtendArgs),
    /// Splittings of E -> E/N against H^1.
    Split(SplitArgs),
    /// Run a property suite or replay a witness.
    Verify(VerifyArgs),
    /// Run every suite.
    Report(SampleArgs),
}

#[derive(Debug, Args)]
struct CensusArgs {
    #[arg(long = "G")]
    g: String,
    #[arg(long = "N")]
    n: String,
    #[arg(long)]
    p: usize,
    /// trivial, all, actions, an enumeration index, or comma-separated automorphism indices.
    #[arg(long = "L", default_value = "all", value_parser = parse_scope)]
    l: LScope,
    /// Also count classes of the weak relation across quasiactions.
    #[arg(long)]
    weak: bool,
    #[arg(long, value_enum, default_value_t = ConventionArg::BoundaryFirst)]
    convention: ConventionArg,
}

#[derive(Debug, Args)]
struct ExtendArgs {
    cochain: PathBuf,
    /// holonomy, full, or comma-separated members of an invariant subgroup.
    #[arg(long, default_value = "holonomy")]
    fiber: String,
    /// Write the extension file here.
    #[arg(long)]
    write: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SplitArgs {
    #[arg(long = "E", conflicts_with_all = ["ext", "g"])]
    e: Option<String>,
    /// With --E: members (`0,3`) or a group reference matched up to isomorphism.
    /// With --G: the kernel group.
    #[arg(long = "N")]
    n: Option<String>,
    /// Semidirect product N x| G for an action L.
    #[arg(long = "G", requires_all = ["n", "l"], conflicts_with = "ext")]
    g: Option<String>,
    #[arg(long = "L", value_parser = parse_scope)]
    l: Option<LScope>,
    /// Extension file; N is the embedded fiber.
    #[arg(long)]
    ext: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SampleArgs {
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_parser = parse_suite, required_unless_present = "replay", conflicts_with = "replay")]
    suite: Option<Suite>,
    /// Witness, instance or report file to re-run.
    #[arg(long)]
    replay: Option<PathBuf>,
    #[arg(long = "G")]
    g: Option<String>,
    #[arg(long = "N")]
    n: Option<String>,
    #[arg(long = "E")]
    e: Option<String>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long = "L", value_parser = parse_scope)]
    l: Option<LScope>,
    #[arg(long)]
    exhaustive: bool,
    #[command(flatten)]
    sampling: SampleArgs,
}

fn parse_scope(s: &str) -> Result<LScope, String> {
    LScope::parse(s).ok_or_else(|| format!("invalid quasiaction scope `{s}`"))
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    Suite::parse(s).ok_or_else(|| {
        let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
        format!("unknown suite `{s}`; known: {}", names.join(", "))
    })
}

/// A rendered report and the exit code it implies.
struct Outcome {
    json: Value,
    tsv: Option<String>,
    code: u8,
}

impl Outcome {
    fn ok(json: Value) -> Self {
        Outcome { json, tsv: None, code: 0 }
    }
}

#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<Usage>().is_some() {
        return EXIT_USAGE;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::Census(CensusError::BudgetExceeded { .. }))
        | Some(Error::Extension(ExtensionError::Census(CensusError::BudgetExceeded { .. }))) => EXIT_BUDGET,
        Some(Error::Extension(ExtensionError::NoSplittingFound)) => EXIT_NO_SPLITTING,
        Some(Error::Extension(ExtensionError::NotAssociative(..))) => EXIT_NOT_ASSOCIATIVE,
        Some(
            Error::Io(_)
            | Error::Json(_)
            | Error::Input(_)
            | Error::Group(_)
            | Error::Cochain(_)
            | Error::Extension(ExtensionError::InvalidFiber | ExtensionError::NotNormal),
        ) => EXIT_BAD_INPUT,
        Some(_) => EXIT_CHECK_FAILED,
        None => EXIT_BAD_INPUT,
    }
}

fn lib<T>(r: parityc::Result<T>) -> anyhow::Result<T> {
    r.map_err(anyhow::Error::new)
}

fn group(r: &str) -> anyhow::Result<FiniteGroup> {
    lib(load_group(r)).with_context(|| format!("group `{r}`"))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => match emit(&cli, &out) {
            Ok(()) => ExitCode::from(out.code),
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::from(EXIT_BAD_INPUT)
            }
        },
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn emit(cli: &Cli, out: &Outcome) -> anyhow::Result<()> {
    let text = match (cli.format, &out.tsv) {
        (Format::Tsv, Some(t)) => t.clone(),
        _ => format!("{}\n", serde_json::to_string_pretty(&out.json)?),
    };
    match &cli.output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn budget(cli: &Cli) -> u128 {
    cli.budget.map_or(DEFAULT_BUDGET, u128::from)
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    match &cli.command {
        Command::Validate { input } => cmd_validate(input),
        Command::Aut { n } => cmd_aut(n),
        Command::Census(args) => cmd_census(cli, args),
        Command::Extend(args) => cmd_extend(args),
        Command::Split(args) => cmd_split(args),
        Command::Verify(args) => cmd_verify(cli, args),
        Command::Report(args) => cmd_report(cli, args),
    }
}

fn group_summary(g: &FiniteGroup) -> Value {
    json!({
        "name": g.name(),
        "order": g.order(),
        "abelian": g.is_abelian(),
        "element_orders": g.order_profile(),
    })
}

fn cmd_validate(input: &str) -> anyhow::Result<Outcome> {
    let path = Path::new(input);
    if !path.is_file() {
        let g = group(input)?;
        return Ok(Outcome::ok(json!({"schema": 1, "kind": "group", "valid": true, "group": group_summary(&g)})));
    }
    let raw: Value = lib(fs::read_to_string(path).map_err(Error::from))
        .and_then(|t| lib(serde_json::from_str(&t).map_err(Error::from)))
        .with_context(|| format!("reading {input}"))?;
    let has = |k: &str| raw.get(k).is_some();
    let report = if has("fiber") && has("cochain") {
        let e = lib(load_extension(path))?;
        json!({
            "kind": "extension",
            "order": e.extension.order(),
            "associative": e.extension.is_associative(),
        })
    } else if has("p") && has("f") {
        let c = lib(load_cochain(path))?;
        json!({
            "kind": "cochain",
            "p": c.cochain.degree(),
            "G": group_summary(&c.g),
            "N": group_summary(&c.n),
            "is_action": c.action.is_action(&c.g),
        })
    } else {
        let file: GroupFile = lib(serde_json::from_value(raw).map_err(Error::from))?;
        let g = lib(file.into_group())?;
        json!({"kind": "group", "group": group_summary(&g)})
    };
    let mut report = report;
    let obj = report.as_object_mut().expect("object");
    obj.insert("schema".into(), json!(1));
    obj.insert("valid".into(), json!(true));
    Ok(Outcome::ok(report))
}

fn cmd_aut(n: &str) -> anyhow::Result<Outcome> {
    let ng = group(n)?;
    let aut = lib(automorphism_group(&ng, DEFAULT_AUT_BOUND).map_err(Error::from))?;
    let images: Vec<&[Elem]> = aut.elements().iter().map(|a| a.images()).collect();
    let tsv = images
        .iter()
        .enumerate()
        .map(|(i, im)| {
            let im: Vec<String> = im.iter().map(|x| x.to_string()).collect();
            format!("{i}\t{}\t{}\n", aut.is_inner(i), im.join(","))
        })
        .collect::<String>();
    Ok(Outcome {
        json: json!({
            "schema": 1,
            "N": ng.name(),
            "order": aut.order(),
            "inner": aut.inner().order(),
            "outer": aut.outer_cosets().len(),
            "automorphisms": images,
        }),
        tsv: Some(format!("index\tinner\timages\n{tsv}")),
        code: 0,
    })
}

fn cmd_census(cli: &Cli, args: &CensusArgs) -> anyhow::Result<Outcome> {
    let g = group(&args.g)?;
    let n = group(&args.n)?;
    let aut = lib(automorphism_group(&n, DEFAULT_AUT_BOUND).map_err(Error::from))?;
    let options = CensusOptions {
        budget: budget(cli),
        shards: cli.shards.max(1),
        weak: args.weak,
        convention: match args.convention {
            ConventionArg::BoundaryFirst => Convention::BoundaryFirst,
            ConventionArg::CochainFirst => Convention::CochainFirst,
        },
    };
    let report = lib(cocycle_census(&g, &n, &aut, args.p, &args.l, &options).map_err(Error::from))?;
    Ok(Outcome { json: report.to_json(), tsv: Some(report.to_tsv()), code: 0 })
}

/// Counts of elements per order, ascending by order.
fn iso_profile(orders: &[usize]) -> Vec<usize> {
    let mut counts: Vec<(usize, usize)> = Vec::new();
    for &o in orders {
        match counts.iter_mut().find(|(k, _)| *k == o) {
            Some((_, c)) => *c += 1,
            None => counts.push((o, 1)),
        }
    }
    counts.sort_unstable();
    counts.into_iter().map(|(_, c)| c).collect()
}

fn cmd_extend(args: &ExtendArgs) -> anyhow::Result<Outcome> {
    let input = lib(load_cochain(&args.cochain)).with_context(|| format!("reading {}", args.cochain.display()))?;
    if input.cochain.degree() != 2 {
        return Err(Error::Input(format!("extensions need a 2-cochain, found p = {}", input.cochain.degree())).into());
    }
    let qc = input.quasicomplex();
    let f = &input.cochain;
    let (spec, ext) = match args.fiber.as_str() {
        "holonomy" => (FiberSpec::Mode(Fiber::Holonomy), build_quasi_extension(&qc, f, Fiber::Holonomy)),
        "full" => (FiberSpec::Mode(Fiber::Full), build_quasi_extension(&qc, f, Fiber::Full)),
        other => {
            let members: Vec<Elem> = other
                .split(',')
                .map(|x| x.trim().parse())
                .collect::<Result<_, _>>()
                .map_err(|_| Usage(format!("invalid fiber `{other}`")))?;
            if members.iter().any(|&x| x >= input.n.order()) {
                return Err(Error::Input("fiber member outside N".into()).into());
            }
            let sub = Subgroup::from_members(input.n.order(), members.iter().copied());
            (FiberSpec::Members(sub.members().to_vec()), build_on_subgroup(&qc, f, sub))
        }
    };
    let ext = lib(ext.map_err(Error::from))?;
    let hol = holonomy_group(&input.n, f, &input.action).subgroup;
    let integ = lib(integrability(&qc, f).map_err(Error::from))?;
    let k = ext.order();
    let mut nontrivial = 0usize;
    let mut closed_form_agrees = true;
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                let t = ext.associator_tilde(a, b, c);
                nontrivial += (t != 0) as usize;
                closed_form_agrees &= t == ext.associator_closed_form(a, b, c);
            }
        }
    }
    let (associative, witness) = match ext.associative() {
        Associativity::No(w) => (false, Some(w)),
        _ => (true, None),
    };
    let orders = ext.order_profile();
    let roundtrip = match &spec {
        FiberSpec::Mode(mode) if associative => canonical_roundtrip(&qc, f, *mode).ok(),
        _ => None,
    };
    let trivial_cochain = f.is_identity();
    let report = json!({
        "schema": 1,
        "G": input.g_ref,
        "N": input.n_ref,
        "L": input.action.values().iter().map(|a| a.images().to_vec()).collect::<Vec<_>>(),
        "is_action": input.action.is_action(&input.g),
        "fiber": ext.fiber().members(),
        "order": k,
        "associative": associative,
        "witness": witness,
        "element_orders": orders,
        "iso_profile": orders.as_deref().map(iso_profile),
        "holonomy": hol.members(),
        "mc": {
            "integrable": integ.integrable,
            "absolute": integ.absolute,
            "witness": integ.witness,
            "absolute_witness": integ.absolute_witness,
        },
        "alpha_tilde": {
            "triples": k * k * k,
            "nontrivial": nontrivial,
            "closed_form_agrees": closed_form_agrees,
        },
        "roundtrip": roundtrip,
        "direct_product": trivial_cochain && input.action.is_trivial() && ext.fiber().is_whole(),
        "semidirect_product": trivial_cochain && input.action.is_action(&input.g) && ext.fiber().is_whole(),
    });
    if let Some(path) = &args.write {
        let file = ExtensionFile::from_extension(&input, spec, &ext);
        fs::write(path, format!("{}\n", serde_json::to_string_pretty(&file)?))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    let code = if associative { 0 } else { EXIT_NOT_ASSOCIATIVE };
    Ok(Outcome { json: report, tsv: None, code })
}

fn cmd_split(args: &SplitArgs) -> anyhow::Result<Outcome> {
    let (e, label, candidates): (FiniteGroup, String, Vec<Subgroup>) = if let Some(path) = &args.ext {
        let input = lib(load_extension(path))?;
        let e = lib(input.extension.to_group("E").map_err(Error::from))?;
        let m = input.cochain.g.order();
        let kernel = Subgroup::from_members(e.order(), (0..input.extension.fiber().order()).map(|i| i * m));
        (e, path.display().to_string(), vec![kernel])
    } else if let Some(gr) = &args.g {
        let g = group(gr)?;
        let nr = args.n.as_deref().expect("required by clap");
        let n = group(nr)?;
        let aut = lib(automorphism_group(&n, DEFAULT_AUT_BOUND).map_err(Error::from))?;
        let scope = args.l.as_ref().expect("required by clap");
        let fibers = lib(scope.resolve(&g, &aut).map_err(Error::from))?;
        let [(_, l)] = <[(usize, Quasiaction); 1]>::try_from(fibers)
            .map_err(|_| Usage("--L must select a single quasiaction".into()))?;
        let e = lib(semidirect_product(&g, &n, &l).map_err(Error::from))?;
        let m = g.order();
        let kernel = Subgroup::from_members(e.order(), (0..n.order()).map(|i| i * m));
        (e, format!("{nr}x|{gr}"), vec![kernel])
    } else {
        let er = args.e.as_deref().ok_or_else(|| Usage("split needs --E, --G or --ext".into()))?;
        let e = group(er)?;
        let subs = lib(verify::select_normal_subgroups(&e, args.n.as_deref()))?;
        if subs.is_empty() {
            return Err(Error::Input(format!("no normal subgroup of {er} matches the requested N")).into());
        }
        (e, er.to_string(), subs)
    };
    let mut rows = Vec::new();
    let mut any_split = false;
    let mut consistent = true;
    for sub in &candidates {
        match classify_splittings(&e, sub) {
            Ok(r) => {
                any_split = true;
                let ok = r.counts_agree && r.correspondence_bijective && r.classes_correspond;
                consistent &= ok;
                rows.push(json!({
                    "N": sub.members(),
                    "split": true,
                    "splittings": r.splittings.len(),
                    "classes": r.conjugacy_classes.len(),
                    "Z1": r.cocycles,
                    "H1": r.h1_classes,
                    "classes_equal_H1": r.counts_agree,
                    "correspondence_bijective": r.correspondence_bijective,
                    "classes_correspond": r.classes_correspond,
                    "sections": r.splittings,
                    "conjugacy_classes": r.conjugacy_classes,
                }));
            }
            Err(ExtensionError::NoSplittingFound) => rows.push(json!({"N": sub.members(), "split": false})),
            Err(err) => return Err(Error::from(err).into()),
        }
    }
    let first = rows.iter().find(|r| r["split"] == json!(true)).cloned().unwrap_or(json!({}));
    let tsv = rows
        .iter()
        .map(|r| {
            let members: Vec<String> =
                r["N"].as_array().into_iter().flatten().map(|x| x.to_string()).collect();
            let cell = |k: &str| r.get(k).map_or("-".to_string(), Value::to_string);
            format!(
                "{}\t{}\t{}\t{}\t{}\n",
                members.join(","),
                r["split"],
                cell("splittings"),
                cell("classes"),
                cell("H1"),
            )
        })
        .collect::<String>();
    let code = if !any_split {
        EXIT_NO_SPLITTING
    } else if consistent {
        0
    } else {
        EXIT_CHECK_FAILED
    };
    Ok(Outcome {
        json: json!({
            "schema": 1,
            "E": label,
            "order": e.order(),
            "splittings": first.get("splittings"),
            "classes": first.get("classes"),
            "H1": first.get("H1"),
            "consistent": consistent,
            "subgroups": rows,
        }),
        tsv: Some(format!("N\tsplit\tsplittings\tclasses\tH1\n{tsv}")),
        code,
    })
}

fn verify_options(cli: &Cli, args: &VerifyArgs) -> VerifyOptions {
    VerifyOptions {
        g: args.g.clone(),
        n: args.n.clone(),
        e: args.e.clone(),
        p: args.p,
        l: args.l.clone(),
        samples: args.sampling.samples,
        seed: args.sampling.seed,
        exhaustive: args.exhaustive,
        budget: budget(cli),
        shards: cli.shards.max(1),
    }
}

fn suite_outcome(reports: &[SuiteReport], json: Value) -> Outcome {
    let passed = reports.iter().all(|r| r.passed);
    let tsv = reports.iter().map(SuiteReport::tsv_row).collect::<String>();
    Outcome {
        json,
        tsv: Some(format!("{}{tsv}", SuiteReport::tsv_header())),
        code: if passed { 0 } else { EXIT_CHECK_FAILED },
    }
}

fn cmd_verify(cli: &Cli, args: &VerifyArgs) -> anyhow::Result<Outcome> {
    if let Some(path) = &args.replay {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let v: Value = lib(serde_json::from_str(&text).map_err(Error::from))?;
        let entries = lib(verify::replay(&v, budget(cli), cli.shards.max(1)))?;
        let passed = entries.iter().all(|e| e.passed);
        let tsv = entries
            .iter()
            .map(|e| format!("{}\t{}\n", e.instance.suite().name(), e.passed))
            .collect::<String>();
        return Ok(Outcome {
            json: json!({"schema": 1, "replayed": entries, "passed": passed}),
            tsv: Some(format!("suite\tpassed\n{tsv}")),
            code: if passed { 0 } else { EXIT_CHECK_FAILED },
        });
    }
    let suite = args.suite.ok_or_else(|| anyhow!(Usage("--suite or --replay is required".into())))?;
    let report = lib(verify::run_suite(suite, &verify_options(cli, args)))?;
    let json = report.to_json();
    Ok(suite_outcome(std::slice::from_ref(&report), json))
}

fn cmd_report(cli: &Cli, args: &SampleArgs) -> anyhow::Result<Outcome> {
    let opts = VerifyOptions {
        samples: args.samples,
        seed: args.seed,
        budget: budget(cli),
        shards: cli.shards.max(1),
        ..VerifyOptions::default()
    };
    let reports = lib(verify::run_all(&opts))?;
    let json = verify::all_to_json(&reports);
    Ok(suite_outcome(&reports, json))
}

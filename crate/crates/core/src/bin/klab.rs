use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use koszul_lab::alcove::{generate_ideal, ideal_report, length, Order};
use koszul_lab::error::{Error, Result};
use koszul_lab::fdalg::algebra::Algebra;
use koszul_lab::fdalg::constructions::Filtration;
use koszul_lab::fdalg::io::{AlgebraJson, ModuleJson};
use koszul_lab::fdalg::resolution::ext_table;
use koszul_lab::fdalg::structure::{blocks_and_basic, cartan_matrix, radical, radical_series};
use koszul_lab::field::{Field, FieldSpec, Fp, Rationals};
use koszul_lab::forced::{compare_with_radical_grading, forced_grading, x_compatibility_check, LatticeAlgebra};
use koszul_lab::koszul::{
    is_koszul, is_qkoszul, is_standard_qkoszul, linearity_check, GradedQH, Labeling, LinearityKind, Poset, Verdict,
};
use koszul_lab::recipe::{self, acceptance_recipes, ExperimentRecipe};
use koszul_lab::rootdata::{RootDatum, Weight};
use koszul_lab::sl2lab::schur::schur_algebra;
use koszul_lab::sl2lab::u::build_u;

/// Forced gradings, graded Ext and Koszul-type checks for finite-dimensional algebras.
#[derive(Parser)]
#[command(name = "klab", version)]
struct Cli {
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Alcove lengths and poset ideals of dominant weights.
    #[command(subcommand)]
    Alcove(AlcoveCmd),
    /// Structure of an algebra given as JSON.
    #[command(subcommand)]
    Alg(AlgCmd),
    /// Forced gradings of lattice algebras.
    #[command(subcommand)]
    Gr(GrCmd),
    /// Koszul-type checks on a graded algebra.
    Check(CheckArgs),
    /// SL2 instances.
    #[command(subcommand)]
    Sl2(Sl2Cmd),
    /// Run one experiment by name.
    Verify(VerifyArgs),
    /// Experiment recipe files.
    #[command(subcommand)]
    Recipe(RecipeCmd),
}

#[derive(Subcommand)]
enum AlcoveCmd {
    /// Length of the alcove containing a p-regular dominant weight.
    Length {
        #[arg(long = "type", default_value = "A1")]
        root_type: String,
        #[arg(short)]
        p: u64,
        /// Fundamental weight coordinates, comma separated.
        #[arg(long)]
        weight: String,
    },
    /// Poset ideal generated by weights.
    Ideal {
        #[arg(long = "type", default_value = "A1")]
        root_type: String,
        #[arg(short)]
        p: u64,
        #[arg(long = "gen", required = true)]
        generators: Vec<String>,
        /// dominance, cone or bruhat.
        #[arg(long, default_value = "cone")]
        order: String,
        #[arg(long)]
        report: bool,
    },
}

#[derive(Subcommand)]
enum AlgCmd {
    /// Jacobson radical and radical series dimensions.
    Radical { file: PathBuf },
    /// Primitive idempotent classes, blocks and Cartan matrix.
    Blocks { file: PathBuf },
    /// Graded Ext table between two modules.
    Ext {
        #[arg(long)]
        alg: PathBuf,
        #[arg(long)]
        m: PathBuf,
        #[arg(long)]
        n: PathBuf,
        #[arg(long, default_value_t = 6)]
        nmax: usize,
    },
}

#[derive(Subcommand)]
enum GrCmd {
    /// Forced grading of a lattice algebra.
    Force {
        file: PathBuf,
        /// Write the graded algebra to this file.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Forced grade dimensions against the radical grading.
    Compare { file: PathBuf },
    /// Whether the radical filtration of the lattice splits over the X-grading.
    Xcheck { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    Koszul,
    Qkoszul,
    Sqkoszul,
    Linear,
    Qlinear,
    Qcolinear,
    Strong,
    Strongco,
}

#[derive(Args)]
struct CheckArgs {
    kind: CheckKind,
    #[arg(long)]
    alg: PathBuf,
    /// Module for the linearity checks.
    #[arg(long = "mod")]
    module: Option<PathBuf>,
    #[arg(long)]
    nmax: Option<usize>,
    /// Order on the simple classes of the grade-0 part, e.g. "0<1,1<2".
    /// Defaults to the chain in class order.
    #[arg(long)]
    poset: Option<String>,
    /// Print the full verdict as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Sl2Cmd {
    /// Restricted enveloping algebra u(sl2) over F_p.
    U {
        #[arg(short)]
        p: u64,
        #[arg(long)]
        integral: bool,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Schur algebra S(2, d) over F_p.
    Schur {
        #[arg(short)]
        d: usize,
        #[arg(short)]
        p: u64,
        #[arg(long)]
        integral: bool,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// SL2 experiments.
    Verify {
        /// weyl-filtration or evenodd.
        what: String,
        #[arg(short)]
        p: u64,
        #[arg(long)]
        max_weight: Option<i64>,
        #[arg(long)]
        nmax: Option<usize>,
    },
}

#[derive(Args)]
struct VerifyArgs {
    experiment: String,
    /// Parameters as a JSON object.
    #[arg(long)]
    params: Option<String>,
}

#[derive(Subcommand)]
enum RecipeCmd {
    /// Run every recipe in a file.
    Run { file: PathBuf },
    /// Print the default acceptance recipes.
    Emit,
    /// List experiment names.
    List,
}

enum Outcome {
    Done(Value),
    Verdict(bool, Value),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.jobs {
        if n == 0 || rayon::ThreadPoolBuilder::new().num_threads(n).build_global().is_err() {
            eprintln!("error: invalid --jobs {n}");
            return ExitCode::from(2);
        }
    }
    match dispatch(cli.command) {
        Ok(Outcome::Done(v)) => {
            print_json(&v);
            ExitCode::SUCCESS
        }
        Ok(Outcome::Verdict(ok, v)) => {
            print_json(&v);
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn print_json(v: &Value) {
    let text = match v {
        Value::String(s) => s.clone(),
        _ => serde_json::to_string_pretty(v).expect("json values serialize"),
    };
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn dispatch(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Alcove(c) => alcove(c),
        Command::Alg(c) => alg(c),
        Command::Gr(c) => gr(c),
        Command::Check(c) => check(c),
        Command::Sl2(c) => sl2(c),
        Command::Verify(v) => {
            let params = match v.params {
                Some(s) => serde_json::from_str(&s)?,
                None => json!({}),
            };
            run_one(ExperimentRecipe { name: v.experiment.clone(), experiment: v.experiment, params, expect_pass: true })
        }
        Command::Recipe(c) => recipe_cmd(c),
    }
}

fn parse_weight(s: &str) -> Result<Weight> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Input(format!("bad weight {s:?}"))))
        .collect::<Result<Vec<_>>>()
        .map(Weight)
}

fn alcove(c: AlcoveCmd) -> Result<Outcome> {
    match c {
        AlcoveCmd::Length { root_type, p, weight } => {
            let rd = RootDatum::new(&root_type)?;
            Ok(Outcome::Done(json!(length(&rd, &parse_weight(&weight)?, p)?)))
        }
        AlcoveCmd::Ideal { root_type, p, generators, order, report } => {
            let rd = RootDatum::new(&root_type)?;
            let gens = generators.iter().map(|g| parse_weight(g)).collect::<Result<Vec<_>>>()?;
            let ideal = generate_ideal(&rd, &gens, Order::parse(&order)?, p)?;
            if report {
                let rep = ideal_report(&ideal)?;
                Ok(Outcome::Verdict(rep.stable, json!({"ideal": ideal, "report": rep})))
            } else {
                Ok(Outcome::Done(serde_json::to_value(&ideal)?))
            }
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn read_algebra(path: &Path) -> Result<AlgebraJson> {
    AlgebraJson::parse(&read(path)?)
}

/// Runs `body` over the field named in the algebra file.
macro_rules! over_field {
    ($json:expr, |$f:ident| $body:expr) => {
        match $json.field_spec()? {
            FieldSpec::Prime(p) => {
                let $f = Fp::new(p)?;
                $body
            }
            FieldSpec::Rationals => {
                let $f = Rationals;
                $body
            }
            FieldSpec::PLocal(_) => Err(Error::Input("lattice algebras go to the gr subcommands".into())),
        }
    };
}

fn alg(c: AlgCmd) -> Result<Outcome> {
    match c {
        AlgCmd::Radical { file } => {
            let j = read_algebra(&file)?;
            over_field!(j, |f| radical_report(&j.to_algebra(&f)?))
        }
        AlgCmd::Blocks { file } => {
            let j = read_algebra(&file)?;
            over_field!(j, |f| blocks_report(&j.to_algebra(&f)?))
        }
        AlgCmd::Ext { alg, m, n, nmax } => {
            let j = read_algebra(&alg)?;
            let mj = ModuleJson::parse(&read(&m)?)?;
            let nj = ModuleJson::parse(&read(&n)?)?;
            over_field!(j, |f| {
                let a = j.to_algebra(&f)?;
                let t = ext_table(&a, &mj.to_module(&a)?, &nj.to_module(&a)?, nmax)?;
                Ok(Outcome::Done(t.to_json()))
            })
        }
    }
}

fn radical_report<F: Field>(a: &Algebra<F>) -> Result<Outcome> {
    let f = &a.field;
    let rad = radical(a);
    let series = radical_series(a);
    let dims = Filtration::new(f, a.dim(), &series).dims();
    let basis: Vec<Vec<String>> = rad.iter().map(|v| v.iter().map(|c| f.render(c)).collect()).collect();
    Ok(Outcome::Done(json!({
        "dim": a.dim(),
        "radical_dim": rad.len(),
        "radical_layers": dims,
        "radical_basis": basis,
    })))
}

fn blocks_report<F: Field>(a: &Algebra<F>) -> Result<Outcome> {
    let b = blocks_and_basic(a)?;
    let cartan = cartan_matrix(a, &b.idempotents);
    Ok(Outcome::Done(json!({
        "dim": a.dim(),
        "simple_classes": b.idempotents.classes(),
        "simple_dims": b.multiplicities,
        "blocks": b.block_classes,
        "cartan": cartan,
        "basic_dim": b.basic.algebra.dim(),
        "arrows": b.basic.arrows.iter().map(|x| (x.source, x.target)).collect::<Vec<_>>(),
    })))
}

fn read_lattice(path: &Path) -> Result<LatticeAlgebra> {
    LatticeAlgebra::from_json(&read_algebra(path)?)
}

fn gr(c: GrCmd) -> Result<Outcome> {
    match c {
        GrCmd::Force { file, emit } => {
            let fg = forced_grading(&read_lattice(&file)?)?;
            let out = json!({"dims": fg.dims, "x_graded": fg.x_graded});
            if let Some(p) = emit {
                std::fs::write(&p, serde_json::to_string(&AlgebraJson::from_algebra(&fg.algebra))?)?;
            }
            Ok(Outcome::Done(out))
        }
        GrCmd::Compare { file } => {
            let cmp = compare_with_radical_grading(&read_lattice(&file)?)?;
            Ok(Outcome::Done(serde_json::to_value(cmp)?))
        }
        GrCmd::Xcheck { file } => {
            let x = x_compatibility_check(&read_lattice(&file)?)?;
            Ok(Outcome::Verdict(x.compatible, serde_json::to_value(x)?))
        }
    }
}

/// "0<1,1<2" over labels 0..n.
fn parse_poset(s: Option<&str>, n: usize) -> Result<Poset> {
    let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let Some(s) = s else {
        return Ok(Poset::chain(labels));
    };
    let mut less = Vec::new();
    for rel in s.split(',').map(str::trim).filter(|r| !r.is_empty()) {
        let parts: Vec<&str> = rel.split('<').map(str::trim).collect();
        for w in parts.windows(2) {
            let idx = |t: &str| {
                t.parse::<usize>().ok().filter(|&i| i < n).ok_or_else(|| Error::Input(format!("bad poset element {t:?}")))
            };
            less.push((idx(w[0])?, idx(w[1])?));
        }
    }
    Poset::new(labels, &less)
}

fn check(c: CheckArgs) -> Result<Outcome> {
    let j = read_algebra(&c.alg)?;
    let mj = c.module.as_deref().map(|p| read(p).and_then(|t| ModuleJson::parse(&t))).transpose()?;
    over_field!(j, |f| check_over(&j.to_algebra(&f)?, &c, mj.as_ref()))
}

fn check_over<F: Field>(a: &Algebra<F>, c: &CheckArgs, mj: Option<&ModuleJson>) -> Result<Outcome> {
    let nmax = c.nmax.unwrap_or(a.dim());
    let verdict: Verdict = match c.kind {
        CheckKind::Koszul => is_koszul(a, nmax)?,
        kind => {
            let (a0, _) = koszul_lab::koszul::grade_zero(a)?;
            let n = koszul_lab::fdalg::resolution::Projectives::new(&a0)?.classes();
            let poset = parse_poset(c.poset.as_deref(), n)?;
            let graded = matches!(kind, CheckKind::Sqkoszul | CheckKind::Strong | CheckKind::Strongco);
            let gq = GradedQH::new(a, &poset, Labeling::Classes((0..n).collect()), graded)?;
            let lin = |k: LinearityKind| -> Result<Verdict> {
                let m = mj.ok_or_else(|| Error::Input("linearity checks need --mod".into()))?.to_module(a)?;
                linearity_check(a, &m, k, &gq, nmax)
            };
            match kind {
                CheckKind::Qkoszul => is_qkoszul(a, &gq, nmax)?,
                CheckKind::Sqkoszul => is_standard_qkoszul(a, &gq, nmax)?,
                CheckKind::Linear => lin(LinearityKind::Linear)?,
                CheckKind::Qlinear => lin(LinearityKind::QLinear)?,
                CheckKind::Qcolinear => lin(LinearityKind::QColinear)?,
                CheckKind::Strong => lin(LinearityKind::StronglyLinear)?,
                CheckKind::Strongco => lin(LinearityKind::StronglyColinear)?,
                CheckKind::Koszul => unreachable!(),
            }
        }
    };
    let out = if c.json {
        serde_json::to_value(&verdict)?
    } else {
        let mut line = format!("{}: {}", verdict.property, verdict.holds);
        if let Some(ce) = &verdict.counterexample {
            line.push_str(&format!(" (n={}, r={}, {} -> {}, dim {})", ce.n, ce.r, ce.lambda, ce.mu, ce.dim));
        }
        if let Some(note) = &verdict.note {
            line.push_str(&format!(" [{note}]"));
        }
        Value::String(line)
    };
    Ok(Outcome::Verdict(verdict.holds, out))
}

fn emit(json: AlgebraJson, path: Option<PathBuf>) -> Result<Outcome> {
    let summary = json!({"dim": json.dim, "field": json.field});
    match path {
        Some(p) => {
            std::fs::write(&p, serde_json::to_string(&json)?)?;
            Ok(Outcome::Done(summary))
        }
        None => Ok(Outcome::Done(serde_json::to_value(json)?)),
    }
}

fn sl2(c: Sl2Cmd) -> Result<Outcome> {
    match c {
        Sl2Cmd::U { p, integral, emit: path } => {
            let u = build_u(p)?;
            let j = if integral { u.lattice()?.to_json() } else { AlgebraJson::from_algebra(&u.algebra) };
            emit(j, path)
        }
        Sl2Cmd::Schur { d, p, integral, emit: path } => {
            let s = schur_algebra(d, p)?;
            let j = if integral { s.lattice()?.to_json() } else { AlgebraJson::from_algebra(&s.algebra) };
            emit(j, path)
        }
        Sl2Cmd::Verify { what, p, max_weight, nmax } => {
            let (experiment, params) = match what.as_str() {
                "weyl-filtration" => ("weyl-filtration", json!({"p": p, "max_weight": max_weight.unwrap_or(30)})),
                "evenodd" | "even-odd" => ("even-odd", json!({"primes": [p], "nmax": nmax.unwrap_or(6)})),
                "graded-parity" => ("graded-parity", json!({"primes": [p], "nmax": nmax.unwrap_or(5)})),
                "weight-recovery" => ("weight-recovery", json!({"primes": [p]})),
                other => return Err(Error::Input(format!("unknown sl2 check {other:?}"))),
            };
            run_one(ExperimentRecipe { name: what.clone(), experiment: experiment.into(), params, expect_pass: true })
        }
    }
}

fn run_one(r: ExperimentRecipe) -> Result<Outcome> {
    let rep = recipe::run(&r)?;
    Ok(Outcome::Verdict(rep.as_expected, serde_json::to_value(rep)?))
}

fn recipe_cmd(c: RecipeCmd) -> Result<Outcome> {
    match c {
        RecipeCmd::Run { file } => {
            let recipes = recipe::load(&file)?;
            let mut reports = Vec::new();
            let mut all = true;
            for r in &recipes {
                let rep = recipe::run(r)?;
                eprintln!("{} {}", if rep.as_expected { "ok  " } else { "FAIL" }, rep.name);
                all &= rep.as_expected;
                reports.push(rep);
            }
            Ok(Outcome::Verdict(all, json!({"all_as_expected": all, "reports": reports})))
        }
        RecipeCmd::Emit => Ok(Outcome::Done(serde_json::to_value(acceptance_recipes())?)),
        RecipeCmd::List => Ok(Outcome::Done(json!(recipe::EXPERIMENTS))),
    }
}

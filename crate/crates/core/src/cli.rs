//! The `kxcount` command line.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::arith::divisors;
use crate::error::{Error, Result};
use crate::fm::{count_subgroups_hall, enumerate_sft, enumerate_transitive, summarize, SearchOrder};
use crate::graphs::{deck_group_order, minimize, to_tuple, validate, AdequateGraph};
use crate::group::{fixed_class_count, irr_orbit_distribution, twisted_orbit_count, FiniteGroup, GroupAutomorphism};
use crate::limits::Limits;
use crate::perm::Perm;
use crate::psh::{counts_by_degree, cuspidal_census, hilbert, HilbertMethod};
use crate::selftest::{run_criterion, CrossCheck, CRITERIA};
use crate::subgroups::{
    abelian_count, bs_classes, bs_count, klein_count, oracle_classes, oracle_count, AbelianSpec, Presentation,
};
use crate::symchar::{kronecker, sum_kron_squares, tuple_class_count, Partition};
use crate::verify::numeric_irr_orbit_distribution;

#[derive(Debug, Parser)]
#[command(name = "kxcount", version, about = "Coverings, cuspidal censuses and Hilbert series of rings of invariants")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Degree cap for exhaustive searches [default: 9, transitive actions 16/7/5/4/3 by rank, oracle 6]
    #[arg(long, global = true)]
    pub max_n: Option<usize>,
    /// Largest explicit group built [default: 2000]
    #[arg(long, global = true)]
    pub group_order_cap: Option<usize>,
    /// Worker threads for enumerations [default: all cores]
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Seed for randomized checks; never affects exact counts
    #[arg(long, default_value_t = 1, global = true)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
    Csv,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Adequate graphs: validation, minimization, deck groups, monodromy
    #[command(subcommand)]
    Graph(GraphCommand),
    /// Transitive actions of free groups and strongly finite orbits
    #[command(subcommand)]
    Fm(FmCommand),
    /// A Kronecker coefficient g(λ_1, …, λ_m, μ)
    Kron(KronArgs),
    /// Σ g(λ_1, …, λ_m, μ)² over all partitions of n
    HilbertTerm(MnArgs),
    /// Conjugacy classes and twisted conjugacy of a finite group
    #[command(subcommand)]
    Group(GroupCommand),
    /// Cuspidal elements up to a degree
    Cuspidals(CuspidalArgs),
    /// Hilbert series by one or all methods
    Hilbert(HilbertArgs),
    /// Finite-index subgroup counts
    #[command(subcommand)]
    Subgroups(SubgroupCommand),
    /// Runs the cross-method identities
    Selftest(SelftestArgs),
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphCommand {
    Validate { file: PathBuf },
    Minimize { file: PathBuf },
    Deck { file: PathBuf },
    /// Monodromy tuple of COVER over the irreducible graph BASE
    Tuple { cover: PathBuf, base: PathBuf },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FmCommand {
    Transitive {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count_only: bool,
    },
    Sft {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        max_degree: usize,
        /// Search intertwiners in reverse order (the statistics must not change)
        #[arg(long)]
        reverse: bool,
    },
    /// Index-n subgroups of F_m, by recurrence and by enumeration
    Hall {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug, Args, Serialize)]
pub struct KronArgs {
    /// Partitions separated by ';', e.g. "2,1;2,1"
    #[arg(long)]
    pub lambdas: String,
    #[arg(long)]
    pub mu: String,
}

#[derive(Debug, Args, Serialize)]
pub struct MnArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub n: usize,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupCommand {
    Classes {
        file: PathBuf,
    },
    TwistedOrbits {
        file: PathBuf,
    },
    IrrOrbits {
        file: PathBuf,
        /// Also compute a floating-point character table (order <= 48)
        #[arg(long)]
        numeric: bool,
    },
}

#[derive(Debug, Args, Serialize)]
pub struct CuspidalArgs {
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub max_degree: usize,
    /// Irreducible base graph; supplies m and the multidegrees
    #[arg(long)]
    pub base: Option<PathBuf>,
    /// Check Σ_{d|n} cusp_d against transitive class counts
    #[arg(long)]
    pub verify: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodArg {
    Kronecker,
    Coverings,
    Cuspidal,
    All,
}

#[derive(Debug, Args, Serialize)]
pub struct HilbertArgs {
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long = "N", alias = "n")]
    #[serde(rename = "N")]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = MethodArg::All)]
    pub method: MethodArg,
    #[arg(long)]
    pub base: Option<PathBuf>,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubgroupCommand {
    Klein {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        verify: bool,
    },
    Bs {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        verify: bool,
    },
    Abelian {
        /// Invariant factors of the finite part, comma separated
        #[arg(long, value_delimiter = ',')]
        torsion: Vec<u64>,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        n: u64,
    },
    Oracle {
        /// Relator words over a, b, c, …; a trailing '-' inverts; ',' separates relators
        #[arg(long, allow_hyphen_values = true)]
        relators: String,
        #[arg(long)]
        n: usize,
        /// Number of generators, when some generator appears in no relator
        #[arg(long)]
        generators: Option<usize>,
    },
}

#[derive(Debug, Args, Serialize)]
pub struct SelftestArgs {
    /// Criteria to run, comma separated [default: all]
    #[arg(long, value_delimiter = ',')]
    pub criteria: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub parameters: Value,
    pub results: Value,
    pub cross_checks: Vec<CrossCheck>,
    /// The input was read but rejected (e.g. an invalid graph).
    #[serde(skip)]
    pub rejected: bool,
}

impl RunReport {
    fn new(command: &str, parameters: Value, results: Value) -> RunReport {
        RunReport {
            command: command.to_string(),
            parameters,
            results,
            cross_checks: Vec::new(),
            rejected: false,
        }
    }

    fn with_checks(mut self, checks: Vec<CrossCheck>) -> RunReport {
        self.cross_checks = checks;
        self
    }

    pub fn all_pass(&self) -> bool {
        self.cross_checks.iter().all(|c| c.pass)
    }

    pub fn exit_code(&self) -> i32 {
        if self.rejected {
            1
        } else if !self.all_pass() {
            3
        } else {
            0
        }
    }
}

impl Cli {
    pub fn limits(&self) -> Limits {
        let mut l = Limits::default();
        if let Some(n) = self.max_n {
            l.max_degree = n;
            l.max_transitive_n = Some(n);
            l.oracle_max_n = n;
        }
        if let Some(c) = self.group_order_cap {
            l.group_order_cap = c;
        }
        l
    }
}

/// Parses, runs and prints; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    if let Some(k) = cli.jobs {
        // fails only if a pool already exists, which is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(k.max(1)).build_global();
    }
    match run(&cli) {
        Ok(report) => {
            print!("{}", render(&report, cli.format));
            report.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn run(cli: &Cli) -> Result<RunReport> {
    let limits = cli.limits();
    let params = serde_json::to_value(&cli.command).expect("serializable arguments");
    // {"graph": {"validate": {...}}} -> name "graph validate", parameters {...}
    let (name, parameters) = flatten_command(params);
    match &cli.command {
        Command::Graph(g) => graph(g, &name, parameters, &limits),
        Command::Fm(f) => fm(f, &name, parameters, &limits),
        Command::Kron(k) => {
            let lambdas = k
                .lambdas
                .split(';')
                .map(|s| s.parse::<Partition>())
                .collect::<Result<Vec<_>>>()?;
            let mu: Partition = k.mu.parse()?;
            let value = kronecker(&lambdas, &mu, &limits)?;
            Ok(RunReport::new(&name, parameters, json!({ "value": value.to_string() })))
        }
        Command::HilbertTerm(a) => {
            let value = sum_kron_squares(a.m, a.n, &limits)?;
            let classes = tuple_class_count(a.m, a.n, &limits)?;
            Ok(RunReport::new(&name, parameters, json!({ "value": value.to_string() }))
                .with_checks(vec![CrossCheck::new("tuple classes", classes.to_string(), value.to_string())]))
        }
        Command::Group(g) => group(g, &name, parameters, &limits, cli.seed),
        Command::Cuspidals(a) => cuspidals(a, &name, parameters, &limits),
        Command::Hilbert(a) => hilbert_cmd(a, &name, parameters, &limits),
        Command::Subgroups(s) => subgroups(s, &name, parameters, &limits),
        Command::Selftest(a) => selftest(a, &name, parameters, &limits, cli.seed),
    }
}

fn flatten_command(mut v: Value) -> (String, Value) {
    let mut name = Vec::new();
    loop {
        match v {
            Value::Object(map) if map.len() == 1 && map.values().all(Value::is_object) => {
                let (k, inner) = map.into_iter().next().expect("one entry");
                name.push(k);
                v = inner;
            }
            Value::String(s) => {
                name.push(s);
                return (name.join(" "), json!({}));
            }
            other => return (name.join(" "), other),
        }
    }
}

fn read_graph(path: &Path) -> Result<AdequateGraph> {
    let text = fs::read_to_string(path).map_err(|e| Error::invalid(format!("{}: {e}", path.display())))?;
    AdequateGraph::from_json_str(&text)
}

fn rejected_graph(name: &str, parameters: Value, g: &AdequateGraph) -> Option<RunReport> {
    let violations = validate(g);
    if violations.is_empty() {
        return None;
    }
    let mut r = RunReport::new(
        name,
        parameters,
        json!({ "valid": false, "violations": violations, "rows": violations.iter().map(|v| json!({"rule": v.rule, "vertex": v.vertex, "edge": v.edge, "detail": v.detail})).collect::<Vec<_>>() }),
    );
    r.rejected = true;
    Some(r)
}

fn graph(cmd: &GraphCommand, name: &str, parameters: Value, limits: &Limits) -> Result<RunReport> {
    match cmd {
        GraphCommand::Validate { file } => {
            let g = read_graph(file)?;
            if let Some(r) = rejected_graph(name, parameters.clone(), &g) {
                return Ok(r);
            }
            let components = g.components()?.len();
            Ok(RunReport::new(
                name,
                parameters,
                json!({
                    "valid": true,
                    "vertices": g.num_vertices(),
                    "edges": g.num_edges(),
                    "components": components,
                    "cycle_rank": g.cycle_rank()?,
                    "color_counts": g.color_counts(),
                }),
            ))
        }
        GraphCommand::Minimize { file } => {
            let g = read_graph(file)?;
            if let Some(r) = rejected_graph(name, parameters.clone(), &g) {
                return Ok(r);
            }
            let mut rows = Vec::new();
            for (i, comp) in g.components()?.iter().enumerate() {
                let m = minimize(comp)?;
                rows.push(json!({
                    "component": i,
                    "vertices": comp.num_vertices(),
                    "base_vertices": m.base.num_vertices(),
                    "fiber_size": comp.num_vertices() / m.base.num_vertices(),
                    "base_cycle_rank": m.base.cycle_rank()?,
                    "base": m.base,
                    "quotient": m.quotient,
                }));
            }
            Ok(RunReport::new(name, parameters, json!({ "rows": rows })))
        }
        GraphCommand::Deck { file } => {
            let g = read_graph(file)?;
            if let Some(r) = rejected_graph(name, parameters.clone(), &g) {
                return Ok(r);
            }
            if !g.is_connected()? {
                return Err(Error::invalid("deck groups are computed for connected graphs"));
            }
            let base = minimize(&g)?.base;
            let fiber = g.num_vertices() / base.num_vertices();
            let order = deck_group_order(&g, limits)?;
            let mut checks = vec![CrossCheck::new("deck order divides fiber size", 0, fiber % order)];
            if base.cycle_rank()? > 0 {
                let t = to_tuple(&g, &base)?;
                checks.push(CrossCheck::new("centralizer of the monodromy", order, t.centralizer_order(limits)?));
            }
            Ok(RunReport::new(name, parameters, json!({ "deck_group_order": order, "fiber_size": fiber }))
                .with_checks(checks))
        }
        GraphCommand::Tuple { cover, base } => {
            let c = read_graph(cover)?;
            let b = read_graph(base)?;
            for g in [&c, &b] {
                if let Some(r) = rejected_graph(name, parameters.clone(), g) {
                    return Ok(r);
                }
            }
            let t = to_tuple(&c, &b)?;
            let n = t.degree();
            Ok(RunReport::new(
                name,
                parameters,
                json!({
                    "degree": n,
                    "tuple": t,
                    "cycles": t.perms().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                    "canonical_form": t.canonical_form(),
                    "transitive": t.is_transitive(),
                    "multidegree": b.color_counts().iter().map(|c| c * n).collect::<Vec<_>>(),
                }),
            ))
        }
    }
}

fn fm(cmd: &FmCommand, name: &str, parameters: Value, limits: &Limits) -> Result<RunReport> {
    match *cmd {
        FmCommand::Transitive { m, n, count_only } => {
            let classes = enumerate_transitive(m, n, limits)?;
            let mut results = json!({ "count": classes.len() });
            if !count_only {
                let rows = classes
                    .iter()
                    .map(|t| {
                        Ok(json!({
                            "tuple": t,
                            "cycles": t.perms().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                            "deck_order": t.centralizer_order(limits)?,
                        }))
                    })
                    .collect::<Result<Vec<_>>>()?;
                results["rows"] = Value::Array(rows);
            }
            Ok(RunReport::new(name, parameters, results))
        }
        FmCommand::Sft { m, max_degree, reverse } => {
            let order = if reverse { SearchOrder::Reverse } else { SearchOrder::Forward };
            let records = enumerate_sft(m, max_degree, order, limits)?;
            let rows = records
                .iter()
                .map(|r| {
                    let s = summarize(r, limits)?;
                    let mut v = serde_json::to_value(&s).expect("serializable");
                    v["induced_degree"] = json!(r.induced_degree());
                    Ok(v)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(RunReport::new(name, parameters, json!({ "count": rows.len(), "rows": rows })))
        }
        FmCommand::Hall { m, n } => {
            let hall = count_subgroups_hall(m, n)?;
            let mut by_classes = num_bigint::BigUint::default();
            for t in enumerate_transitive(m, n, limits)? {
                by_classes += num_bigint::BigUint::from(n / t.centralizer_order(limits)?);
            }
            Ok(RunReport::new(name, parameters, json!({ "subgroups": hall.to_string() }))
                .with_checks(vec![CrossCheck::new("Σ n/|deck|", hall.to_string(), by_classes.to_string())]))
        }
    }
}

/// A finite group given by a multiplication table or by permuting generators,
/// with an optional automorphism (identity by default).
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupFile {
    table: Option<Vec<Vec<usize>>>,
    degree: Option<usize>,
    generators: Option<Vec<Vec<usize>>>,
    automorphism: Option<AutomorphismSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case")]
enum AutomorphismSpec {
    /// Image of every element index.
    Images(Vec<usize>),
    /// Conjugation by a permutation normalizing a permutation group.
    ConjugateBy(Vec<usize>),
    /// Conjugation by an element index.
    Inner(usize),
}

fn read_group(path: &Path, limits: &Limits) -> Result<(FiniteGroup, GroupAutomorphism)> {
    let text = fs::read_to_string(path).map_err(|e| Error::invalid(format!("{}: {e}", path.display())))?;
    let spec: GroupFile = serde_json::from_str(&text).map_err(|e| Error::invalid(format!("group file: {e}")))?;
    let g = match (spec.table, spec.degree, spec.generators) {
        (Some(t), None, None) => FiniteGroup::from_table(t, limits)?,
        (None, Some(n), gens) => {
            let gens = gens
                .unwrap_or_default()
                .into_iter()
                .map(Perm::new)
                .collect::<Result<Vec<_>>>()?;
            FiniteGroup::from_permutations(n, &gens, limits)?
        }
        _ => return Err(Error::invalid("group file needs either \"table\" or \"degree\" with \"generators\"")),
    };
    let nu = match spec.automorphism {
        None => GroupAutomorphism::identity(&g),
        Some(AutomorphismSpec::Images(images)) => GroupAutomorphism::new(&g, images)?,
        Some(AutomorphismSpec::ConjugateBy(p)) => GroupAutomorphism::conjugation_by_perm(&g, &Perm::new(p)?)?,
        Some(AutomorphismSpec::Inner(a)) => {
            if a >= g.order() {
                return Err(Error::invalid(format!("element {a} out of range")));
            }
            GroupAutomorphism::inner(&g, a)
        }
    };
    Ok((g, nu))
}

fn element_label(g: &FiniteGroup, x: usize) -> String {
    match g.permutations() {
        Some(p) => p[x].to_string(),
        None => x.to_string(),
    }
}

fn group(cmd: &GroupCommand, name: &str, parameters: Value, limits: &Limits, seed: u64) -> Result<RunReport> {
    match cmd {
        GroupCommand::Classes { file } => {
            let (g, _) = read_group(file, limits)?;
            let classes = g.conjugacy_classes(limits)?;
            let rows: Vec<Value> = classes
                .iter()
                .map(|c| json!({ "representative": element_label(&g, c[0]), "size": c.len(), "element_order": g.element_order(c[0]) }))
                .collect();
            Ok(RunReport::new(
                name,
                parameters,
                json!({ "order": g.order(), "class_count": classes.len(), "rows": rows }),
            ))
        }
        GroupCommand::TwistedOrbits { file } => {
            let (g, nu) = read_group(file, limits)?;
            let twisted = twisted_orbit_count(&g, &nu);
            let fixed = fixed_class_count(&g, &nu, limits)?;
            Ok(RunReport::new(
                name,
                parameters,
                json!({ "order": g.order(), "automorphism_order": nu.order(), "twisted_orbits": twisted }),
            )
            .with_checks(vec![CrossCheck::new("ν-fixed conjugacy classes", fixed, twisted)]))
        }
        GroupCommand::IrrOrbits { file, numeric } => {
            let (g, nu) = read_group(file, limits)?;
            let dist = irr_orbit_distribution(&g, &nu, limits)?;
            let rows: Vec<Value> = dist.iter().map(|(l, c)| json!({ "length": l, "orbits": c })).collect();
            let mut checks = Vec::new();
            if *numeric {
                if g.order() > 48 {
                    return Err(Error::cap("numeric character table group order", g.order(), 48));
                }
                checks.push(CrossCheck::new(
                    "numeric character table",
                    &dist,
                    numeric_irr_orbit_distribution(&g, &nu, seed, limits)?,
                ));
            }
            Ok(RunReport::new(name, parameters, json!({ "order": g.order(), "rows": rows })).with_checks(checks))
        }
    }
}

/// `m` from the flag or from an irreducible base graph, plus the base's color counts.
fn rank_and_colors(m: Option<usize>, base: &Option<PathBuf>) -> Result<(usize, Option<Vec<usize>>)> {
    let Some(path) = base else {
        return m.map(|m| (m, None)).ok_or_else(|| Error::invalid("give --m or --base"));
    };
    let g = read_graph(path)?;
    let violations = validate(&g);
    if let Some(v) = violations.first() {
        return Err(Error::invalid(format!("base graph is not adequate: {v}")));
    }
    if !g.is_connected()? || minimize(&g)?.base.num_vertices() != g.num_vertices() {
        return Err(Error::invalid("base graph must be connected and irreducible"));
    }
    let rank = g.cycle_rank()?;
    if let Some(m) = m {
        if m != rank {
            return Err(Error::invalid(format!("--m {m} but the base graph has cycle rank {rank}")));
        }
    }
    Ok((rank, Some(g.color_counts())))
}

fn with_multidegree(mut row: Value, n: usize, colors: &Option<Vec<usize>>) -> Value {
    if let Some(c) = colors {
        row["multidegree"] = json!(c.iter().map(|x| x * n).collect::<Vec<_>>());
    }
    row
}

fn cuspidals(a: &CuspidalArgs, name: &str, parameters: Value, limits: &Limits) -> Result<RunReport> {
    let (m, colors) = rank_and_colors(a.m, &a.base)?;
    let census = cuspidal_census(m, a.max_degree, limits)?;
    let counts = counts_by_degree(&census, a.max_degree);
    let per_degree: Vec<Value> = (1..=a.max_degree)
        .map(|d| with_multidegree(json!({ "degree": d, "cuspidals": counts[d] }), d, &colors))
        .collect();
    let mut checks = Vec::new();
    if a.verify {
        for n in 1..=a.max_degree {
            let lhs: u64 = divisors(n as u64).into_iter().map(|d| counts[d as usize]).sum();
            let rhs = enumerate_transitive(m, n, limits)?.len() as u64;
            checks.push(CrossCheck::new(format!("n={n} transitive classes"), rhs, lhs));
        }
    }
    Ok(RunReport::new(
        name,
        parameters,
        json!({ "m": m, "descriptors": census, "rows": per_degree }),
    )
    .with_checks(checks))
}

fn hilbert_cmd(a: &HilbertArgs, name: &str, parameters: Value, limits: &Limits) -> Result<RunReport> {
    let (m, colors) = rank_and_colors(a.m, &a.base)?;
    let methods: Vec<HilbertMethod> = match a.method {
        MethodArg::Kronecker => vec![HilbertMethod::Kronecker],
        MethodArg::Coverings => vec![HilbertMethod::Coverings],
        MethodArg::Cuspidal => vec![HilbertMethod::Cuspidal],
        MethodArg::All => HilbertMethod::ALL.to_vec(),
    };
    let mut series = BTreeMap::new();
    for method in &methods {
        series.insert(method.name(), hilbert(m, a.n, *method, limits)?);
    }
    let rows: Vec<Value> = methods
        .iter()
        .map(|method| json!({ "method": method.name(), "coefficients": series[method.name()].coefficients() }))
        .collect();
    let mut results = json!({ "m": m, "rows": rows });
    let mut checks = Vec::new();
    if methods.len() > 1 {
        let first = &series[methods[0].name()];
        for method in &methods[1..] {
            checks.push(CrossCheck::new(
                format!("{} = {}", methods[0].name(), method.name()),
                first.coefficients(),
                series[method.name()].coefficients(),
            ));
        }
        results["verdict"] = json!(if checks.iter().all(|c| c.pass) { "agree" } else { "disagree" });
    }
    if colors.is_some() {
        let first = &series[methods[0].name()];
        results["multidegrees"] = Value::Array(
            (0..=a.n)
                .map(|n| with_multidegree(json!({ "degree": n, "coefficient": first.coeff(n) }), n, &colors))
                .collect(),
        );
    }
    Ok(RunReport::new(name, parameters, results).with_checks(checks))
}

fn subgroups(cmd: &SubgroupCommand, name: &str, parameters: Value, limits: &Limits) -> Result<RunReport> {
    match cmd {
        SubgroupCommand::Klein { n, verify } => {
            let formula = klein_count(*n)?;
            let mut checks = Vec::new();
            let mut results = json!({ "formula": formula });
            if *verify {
                let oracle = oracle_count(&Presentation::klein(), *n as usize, limits)? as u64;
                results["oracle"] = json!(oracle);
                checks.push(CrossCheck::new("oracle", oracle, formula));
            }
            Ok(RunReport::new(name, parameters, results).with_checks(checks))
        }
        SubgroupCommand::Bs { d, n, verify } => {
            let formula = bs_count(*d, *n)?;
            let rows: Vec<Value> = bs_classes(*d, *n)?
                .into_iter()
                .map(|c| json!({ "m": c.m, "i": c.i, "degree": c.degree, "counted": n % c.degree == 0 }))
                .collect();
            let mut results = json!({ "formula": formula, "rows": rows });
            let mut checks = Vec::new();
            if *verify {
                let p = Presentation::baumslag_solitar(*d as usize);
                let oracle = oracle_count(&p, *n as usize, limits)? as u64;
                results["oracle"] = json!(oracle);
                checks.push(CrossCheck::new("oracle", oracle, formula));
            }
            Ok(RunReport::new(name, parameters, results).with_checks(checks))
        }
        SubgroupCommand::Abelian { torsion, rank, n } => {
            let spec = AbelianSpec {
                torsion: torsion.clone(),
                rank: *rank,
            };
            let count = abelian_count(&spec, *n, limits)?;
            Ok(RunReport::new(name, parameters, json!({ "count": count.to_string() })))
        }
        SubgroupCommand::Oracle { relators, n, generators } => {
            let mut p: Presentation = relators.parse()?;
            if let Some(g) = generators {
                if *g < p.num_generators {
                    return Err(Error::invalid(format!("the relators use {} generators", p.num_generators)));
                }
                p = Presentation::new(*g, p.relators)?;
            }
            let classes = oracle_classes(&p, *n, limits)?;
            let rows: Vec<Value> = classes
                .iter()
                .map(|t| json!({ "tuple": t, "cycles": t.perms().iter().map(|x| x.to_string()).collect::<Vec<_>>() }))
                .collect();
            Ok(RunReport::new(
                name,
                parameters,
                json!({ "presentation": p.to_string(), "generators": p.num_generators, "count": classes.len(), "rows": rows }),
            ))
        }
    }
}

fn selftest(a: &SelftestArgs, name: &str, parameters: Value, limits: &Limits, seed: u64) -> Result<RunReport> {
    let ids: Vec<usize> = if a.criteria.is_empty() {
        CRITERIA.iter().map(|c| c.0).collect()
    } else {
        a.criteria.clone()
    };
    let mut rows = Vec::new();
    let mut checks = Vec::new();
    for id in ids {
        let r = run_criterion(id, seed, limits);
        eprintln!("{}", r.summary_line());
        rows.push(json!({ "criterion": r.id, "title": r.title, "passed": r.passed, "error": r.error, "checks": r.checks.len() }));
        checks.extend(r.checks.into_iter().map(|mut c| {
            c.name = format!("criterion {id}: {}", c.name);
            c
        }));
        if let Some(e) = r.error {
            checks.push(CrossCheck::new(format!("criterion {id} evaluated"), Value::Null, e));
        }
    }
    let mut parameters = parameters;
    parameters["seed"] = json!(seed);
    Ok(RunReport::new(name, parameters, json!({ "rows": rows })).with_checks(checks))
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Header and cells of the report's main table: `results.rows` when present,
/// otherwise the scalar entries of `results`.
fn main_table(report: &RunReport) -> (Vec<String>, Vec<Vec<String>>) {
    if let Some(Value::Array(rows)) = report.results.get("rows") {
        let mut headers: Vec<String> = Vec::new();
        for r in rows {
            if let Value::Object(map) = r {
                for k in map.keys() {
                    if !headers.contains(k) {
                        headers.push(k.clone());
                    }
                }
            }
        }
        let body = rows
            .iter()
            .map(|r| headers.iter().map(|h| r.get(h).map(cell).unwrap_or_default()).collect())
            .collect();
        return (headers, body);
    }
    let empty = Map::new();
    let map = report.results.as_object().unwrap_or(&empty);
    (
        vec!["key".into(), "value".into()],
        map.iter().map(|(k, v)| vec![k.clone(), cell(v)]).collect(),
    )
}

fn aligned(headers: &[String], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: &[String]| -> String {
        let padded: Vec<String> = cells
            .iter()
            .zip(&width)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(headers);
    out += &line(&width.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>());
    for r in rows {
        out += &line(r);
    }
    out
}

pub fn render(report: &RunReport, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("serializable report") + "\n",
        Format::Csv => {
            let (headers, rows) = main_table(report);
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&headers).expect("in-memory write");
            for r in &rows {
                w.write_record(r).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
        }
        Format::Table => {
            let mut out = format!("{}\n", report.command);
            if let Value::Object(map) = &report.results {
                for (k, v) in map {
                    if k != "rows" && !v.is_array() && !v.is_object() {
                        out += &format!("{k}: {}\n", cell(v));
                    }
                }
            }
            let (headers, rows) = main_table(report);
            if report.results.get("rows").is_some() {
                out += "\n";
                out += &aligned(&headers, &rows);
            }
            if !report.cross_checks.is_empty() {
                out += "\n";
                let rows: Vec<Vec<String>> = report
                    .cross_checks
                    .iter()
                    .map(|c| {
                        vec![
                            c.name.clone(),
                            cell(&c.expected),
                            cell(&c.actual),
                            if c.pass { "pass" } else { "FAIL" }.into(),
                        ]
                    })
                    .collect();
                out += &aligned(&["check".into(), "expected".into(), "actual".into(), "result".into()], &rows);
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Result<RunReport> {
        let cli = Cli::try_parse_from(std::iter::once("kxcount").chain(args.iter().copied())).unwrap();
        run(&cli)
    }

    #[test]
    fn command_names_and_parameters() {
        let r = run_args(&["subgroups", "klein", "--n", "2", "--verify"]).unwrap();
        assert_eq!(r.command, "subgroups klein");
        assert_eq!(r.parameters, json!({"n": 2, "verify": true}));
        assert_eq!(r.results["formula"], json!(3));
        assert_eq!(r.results["oracle"], json!(3));
        assert_eq!(r.exit_code(), 0);

        let r = run_args(&["hilbert-term", "--m", "2", "--n", "3"]).unwrap();
        assert_eq!(r.command, "hilbert-term");
        assert_eq!(r.results["value"], json!("11"));
    }

    #[test]
    fn hilbert_all_agrees() {
        let r = run_args(&["hilbert", "--m", "2", "--N", "4", "--method", "all"]).unwrap();
        assert_eq!(r.results["verdict"], json!("agree"));
        assert_eq!(r.results["rows"].as_array().unwrap().len(), 3);
        assert_eq!(r.results["rows"][0]["coefficients"], json!([1, 1, 4, 11, 43]));
        assert_eq!(r.parameters["N"], json!(4));
    }

    #[test]
    fn kron_value() {
        let r = run_args(&["kron", "--lambdas", "2,1;2,1", "--mu", "2,1"]).unwrap();
        assert_eq!(r.results["value"], json!("1"));
        assert!(run_args(&["kron", "--lambdas", "2,x", "--mu", "2,1"]).is_err());
    }

    #[test]
    fn caps_are_errors() {
        let cli = Cli::try_parse_from(["kxcount", "--max-n", "3", "fm", "transitive", "--m", "2", "--n", "4"]).unwrap();
        let e = run(&cli).unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn renderings() {
        let r = run_args(&["fm", "transitive", "--m", "2", "--n", "2"]).unwrap();
        let table = render(&r, Format::Table);
        assert!(table.contains("deck_order"));
        let csv = render(&r, Format::Csv);
        assert_eq!(csv.lines().count(), 4);
        let json = render(&r, Format::Json);
        assert_eq!(json, render(&run_args(&["fm", "transitive", "--m", "2", "--n", "2"]).unwrap(), Format::Json));
    }
}

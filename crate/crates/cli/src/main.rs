use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;

use hkl_core::dolgachev;
use hkl_core::git::{self, LAMBDA};
use hkl_core::lattice::{lattice, LabelStyle, LatticeError};
use hkl_core::niemeier::{self, NiemeierEntry};
use hkl_core::schedule::{self, StratumType};
use hkl_core::sl2;
use hkl_core::toric::{self, WeightVector};
use hkl_core::verify::{self, Table};

#[derive(Parser)]
#[command(name = "hkl", version, about = "Exact checks for the moduli of quartic K3 surfaces")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Tsv, global = true)]
    format: Format,
    /// Directory holding niemeier.json; the built-in catalog is used when the
    /// default directory has no such file.
    #[arg(long, global = true)]
    data_dir: Option<PathBuf>,
    /// Seed for the randomized rank computations and fan sampling; each
    /// computation has its own fixed default.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants of a lattice such as "E8+U^2+A2" or "T(2,3,7)".
    Lattice {
        spec: String,
        /// Also count norm -2 vectors (negative definite lattices only).
        #[arg(long)]
        roots: bool,
    },
    /// Niemeier D7-complement classification.
    Niemeier {
        #[arg(value_enum, default_value_t = NiemeierView::Labels)]
        view: NiemeierView,
    },
    /// Hilbert-Mumford data for the four boundary 1-PS.
    Git {
        #[arg(value_enum, default_value_t = GitView::SigmaDims)]
        view: GitView,
    },
    /// SL2 decompositions and slice dimensions.
    Rep {
        #[arg(value_enum, default_value_t = RepView::Quartics)]
        view: RepView,
        /// Parameter a for `tangent`, e.g. "3/5".
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        a: String,
        /// Parameter b for `tangent`.
        #[arg(long, default_value = "2", allow_hyphen_values = true)]
        b: String,
    },
    /// Triangle singularities E12, E13, E14.
    Dolgachev {
        #[arg(value_enum, default_value_t = DolgachevView::Table)]
        view: DolgachevView,
    },
    /// Weighted blow-up fans.
    Blowup {
        /// Weights such as "1,2,3" or "4^9,6^13"; without it the two slice
        /// centres are listed.
        #[arg(long)]
        weights: Option<String>,
    },
    /// Critical values, towers and strata.
    Schedule {
        #[arg(value_enum, default_value_t = ScheduleView::Flips)]
        view: ScheduleView,
        /// Stratum type for `strata`: II, III or IV.
        #[arg(long = "type")]
        kind: Option<String>,
    },
    /// Flip table, Type II matching and boundary dimensions.
    Report,
    /// Runs the acceptance suite; exits 1 on any failure.
    Verify,
}

#[derive(Clone, Copy, ValueEnum)]
enum NiemeierView {
    Labels,
    Embeddings,
    Dimensions,
    Matching,
}

#[derive(Clone, Copy, ValueEnum)]
enum GitView {
    SigmaDims,
    Tails,
    E12,
}

#[derive(Clone, Copy, ValueEnum)]
enum RepView {
    Quartics,
    Longrepr,
    Upsilon,
    Tangent,
    Slices,
}

#[derive(Clone, Copy, ValueEnum)]
enum DolgachevView {
    Table,
    Zloci,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScheduleView {
    Flips,
    Betas,
    Towers,
    Strata,
}

/// Usage errors exit with 2, everything else with 1.
enum Failure {
    Usage(String),
    Run(String),
}

enum Output {
    Table(Table),
    Json(serde_json::Value),
    Text(String),
    /// Rendered table and an exit status.
    Checked(Table, serde_json::Value, bool),
}

fn fail<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Run(e.to_string())
}

fn load_catalog(dir: Option<&Path>) -> Result<Vec<NiemeierEntry>, Failure> {
    match dir {
        Some(d) => niemeier::load_niemeier_catalog(&d.join("niemeier.json")).map_err(fail),
        None => {
            let default = Path::new("data").join("niemeier.json");
            if default.exists() {
                niemeier::load_niemeier_catalog(&default).map_err(fail)
            } else {
                Ok(niemeier::builtin_catalog())
            }
        }
    }
}

fn table_of<I, R, T>(columns: &[&str], rows: I) -> Table
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = T>,
    T: std::fmt::Display,
{
    let mut t = Table::new(columns);
    for r in rows {
        t.push(r);
    }
    t
}

fn parse_rational(s: &str) -> Result<BigRational, Failure> {
    s.trim().parse().map_err(|_| Failure::Usage(format!("not a rational number: {s}")))
}

fn parse_weights(s: &str) -> Result<WeightVector, Failure> {
    let mut blocks = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (w, k) = part.split_once('^').unwrap_or((part, "1"));
        let w: u32 = w.parse().map_err(|_| Failure::Usage(format!("bad weight {part}")))?;
        let k: usize = k.parse().map_err(|_| Failure::Usage(format!("bad multiplicity {part}")))?;
        blocks.push((w, k));
    }
    WeightVector::from_blocks(&blocks).map_err(|e| Failure::Usage(e.to_string()))
}

fn to_json<T: serde::Serialize>(v: &T) -> Result<serde_json::Value, Failure> {
    serde_json::to_value(v).map_err(fail)
}

fn run_lattice(spec: &str, roots: bool) -> Result<Output, Failure> {
    let l = lattice(spec).map_err(|e| match e {
        LatticeError::Parse(_) | LatticeError::InvalidIndex(_) => Failure::Usage(e.to_string()),
        e => fail(e),
    })?;
    let inv = l.invariants().clone();
    let disc = inv
        .discriminant_group
        .as_ref()
        .map(|g| g.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
        .unwrap_or_else(|| "degenerate".into());
    let mut row = vec![
        spec.to_string(),
        inv.rank.to_string(),
        format!("({},{})", inv.signature.0, inv.signature.1),
        inv.determinant.to_string(),
        inv.even.to_string(),
        disc,
    ];
    let mut cols = vec!["lattice", "rank", "signature", "determinant", "even", "discriminant_group"];
    if roots {
        let n = l.roots(-2).map_err(fail)?.len();
        row.push(n.to_string());
        cols.push("roots");
    }
    Ok(Output::Table(table_of(&cols, [row])))
}

fn run_niemeier(view: NiemeierView, catalog: &[NiemeierEntry]) -> Result<Output, Failure> {
    let t = match view {
        NiemeierView::Labels => table_of(
            &["label"],
            niemeier::boundary_labels(catalog)
                .map_err(fail)?
                .iter()
                .map(|l| [l.render(LabelStyle::DNaming)]),
        ),
        NiemeierView::Embeddings => {
            let mut t = Table::new(&["niemeier", "host", "complement", "chain_rule"]);
            for e in niemeier::d7_embeddings(catalog) {
                let c = niemeier::complement_label(&e).map_err(fail)?;
                let chain = niemeier::chain_rule_dimension(&e).map_or("-".into(), |d| d.to_string());
                t.push([e.niemeier.name.clone(), e.host.to_string(), c.render(LabelStyle::DNaming), chain]);
            }
            t
        }
        NiemeierView::Dimensions => verify::dimension_table_table(),
        NiemeierView::Matching => verify::type2_matching_table(catalog).map_err(fail)?,
    };
    Ok(Output::Table(t))
}

fn run_git(view: GitView, seed: u64) -> Result<Output, Failure> {
    match view {
        GitView::SigmaDims => {
            let mut t = Table::new(&["lambda", "weights", "zero_weight_monomials", "dimension"]);
            for (i, l) in LAMBDA.iter().enumerate() {
                let s = git::sigma_dimension(l, seed).map_err(fail)?;
                let w = l.weights().map(|x| x.to_string()).join(",");
                t.push([format!("λ_{}", i + 1), format!("({w})"), s.zero_monomials.len().to_string(), s.dimension.to_string()]);
            }
            Ok(Output::Table(t))
        }
        GitView::Tails => {
            let r = git::tail_identities().map_err(fail)?;
            let ok = r.limit_matches && r.discriminant_matches && r.cone_limit_matches;
            let t = table_of(
                &["identity", "holds"],
                [
                    ["two-quadric limit".to_string(), r.limit_matches.to_string()],
                    ["cone limit".to_string(), r.cone_limit_matches.to_string()],
                    ["branch discriminant".to_string(), r.discriminant_matches.to_string()],
                ],
            );
            Ok(Output::Checked(t, to_json(&r)?, ok))
        }
        GitView::E12 => {
            let r = git::verify_e12_example().map_err(fail)?;
            let t = table_of(&["monomial", "weight"], r.weights.iter().map(|(m, w)| [m, w]));
            Ok(Output::Checked(t, to_json(&r)?, true))
        }
    }
}

fn run_rep(view: RepView, a: &str, b: &str) -> Result<Output, Failure> {
    let t = match view {
        RepView::Quartics => {
            let d = sl2::quartic_decomposition().map_err(fail)?;
            table_of(&["space", "dimension", "decomposition"], [["quartics".to_string(), d.dimension().to_string(), d.to_string()]])
        }
        RepView::Longrepr => table_of(
            &["piece", "dimension", "decomposition"],
            sl2::rep_table_longrepr()
                .map_err(fail)?
                .into_iter()
                .map(|r| [r.piece, r.dimension.to_string(), r.decomposition.to_string()]),
        ),
        RepView::Upsilon => {
            let u = sl2::upsilon_splitting().map_err(fail)?;
            table_of(
                &["space", "decomposition"],
                [["tangent".to_string(), u.tangent.to_string()], ["slice".to_string(), u.slice.to_string()]],
            )
        }
        RepView::Tangent => {
            let t = sl2::orbit_tangent_space(&parse_rational(a)?, &parse_rational(b)?).map_err(fail)?;
            table_of(&["a", "b", "dimension", "decomposition"], [[t.a, t.b, t.dimension.to_string(), t.decomposition.to_string()]])
        }
        RepView::Slices => {
            let r = sl2::slice_transversality().map_err(fail)?;
            let mut t = Table::new(&["a", "b", "tangent", "slice", "sum", "intersection"]);
            for s in r.normal.iter().chain(&r.diagonal) {
                t.push([
                    s.a.clone(),
                    s.b.clone(),
                    s.tangent_dimension.to_string(),
                    s.slice_dimension.to_string(),
                    s.sum_dimension.to_string(),
                    s.intersection_dimension.to_string(),
                ]);
            }
            t
        }
    };
    Ok(Output::Table(t))
}

fn run_dolgachev(view: DolgachevView) -> Result<Output, Failure> {
    let t = match view {
        DolgachevView::Table => table_of(
            &["name", "equation", "N", "weights", "dolgachev", "gabrielov", "milnor", "vanishing_lattice"],
            dolgachev::dolgachev_table().map_err(fail)?.into_iter().map(|r| {
                let w = r.weights.map(|x| x.to_string()).join(",");
                [
                    r.name.to_string(),
                    r.equation,
                    r.base_change_order.to_string(),
                    format!("({w})"),
                    r.dolgachev.to_string(),
                    r.gabrielov.to_string(),
                    r.milnor_number.to_string(),
                    r.vanishing_lattice,
                ]
            }),
        ),
        DolgachevView::Zloci => table_of(
            &["Z", "singularity", "ns", "ns_model", "transcendental", "discriminant"],
            dolgachev::z_locus_identifications().map_err(fail)?.into_iter().map(|z| {
                [
                    format!("Z^{}", z.k),
                    z.singularity.to_string(),
                    z.tpqr.to_string(),
                    z.ns_model,
                    z.transcendental_model,
                    z.discriminant.to_string(),
                ]
            }),
        ),
    };
    Ok(Output::Table(t))
}

fn run_blowup(weights: Option<&str>, seed: Option<u64>) -> Result<Output, Failure> {
    let t = match weights {
        None => table_of(
            &["centre", "slice", "weights", "exceptional"],
            toric::blowup_centers()
                .map_err(fail)?
                .into_iter()
                .map(|c| [c.name.to_string(), c.slice, c.weights.to_string(), c.exceptional]),
        ),
        Some(w) => {
            let a = parse_weights(w)?;
            let fan = match seed {
                Some(s) => toric::build_fan_seeded(&a, s),
                None => toric::build_fan(&a),
            }
            .map_err(fail)?;
            let mut t = Table::new(&["cone", "multiplicity"]);
            for (i, m) in fan.multiplicities.iter().enumerate() {
                t.push([format!("C_{}", i + 1), m.to_string()]);
            }
            t.push(["exceptional".to_string(), fan.exceptional]);
            t
        }
    };
    Ok(Output::Table(t))
}

fn parse_kind(s: &str) -> Result<StratumType, Failure> {
    match s.to_ascii_uppercase().as_str() {
        "I" => Ok(StratumType::I),
        "II" => Ok(StratumType::II),
        "III" => Ok(StratumType::III),
        "IV" => Ok(StratumType::IV),
        _ => Err(Failure::Usage(format!("unknown stratum type {s}"))),
    }
}

fn run_schedule(view: ScheduleView, kind: Option<&str>) -> Result<Output, Failure> {
    let t = match view {
        ScheduleView::Flips => verify::flip_table_rendered(),
        ScheduleView::Betas => table_of(
            &["beta", "flip_codim"],
            schedule::critical_betas().into_iter().map(|b| {
                [b.to_string(), schedule::flip_codimension(b).map_or("-".into(), |k| k.to_string())]
            }),
        ),
        ScheduleView::Towers => {
            let rep = schedule::validate_towers().map_err(fail)?;
            let mut t = Table::new(&["side", "index", "description"]);
            for e in schedule::z_tower().iter().chain(&schedule::w_tower()) {
                t.push([format!("{:?}", e.side), e.index.to_string(), e.description.to_string()]);
            }
            for (lo, up) in rep.adjacencies {
                t.push(["adjacency".to_string(), lo, format!("in closure of {up}")]);
            }
            t
        }
        ScheduleView::Strata => {
            let filter = kind.map(parse_kind).transpose()?;
            table_of(
                &["id", "description", "stabilizer", "in_closure_of"],
                schedule::stratum_catalog(filter).map_err(fail)?.into_iter().map(|r| {
                    [
                        r.id.to_string(),
                        r.description.to_string(),
                        r.stabilizer.map_or("-".into(), |s| s.to_string()),
                        r.closure_relations.join(","),
                    ]
                }),
            )
        }
    };
    Ok(Output::Table(t))
}

fn checks_table(checks: &[verify::Check]) -> Table {
    table_of(
        &["check", "status", "detail"],
        checks.iter().map(|c| [c.name.clone(), if c.passed { "PASS" } else { "FAIL" }.to_string(), c.detail.clone()]),
    )
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let seed = cli.seed.unwrap_or(git::DEFAULT_SEED);
    match &cli.command {
        Command::Lattice { spec, roots } => run_lattice(spec, *roots),
        Command::Niemeier { view } => run_niemeier(*view, &load_catalog(cli.data_dir.as_deref())?),
        Command::Git { view } => run_git(*view, seed),
        Command::Rep { view, a, b } => run_rep(*view, a, b),
        Command::Dolgachev { view } => run_dolgachev(*view),
        Command::Blowup { weights } => run_blowup(weights.as_deref(), cli.seed),
        Command::Schedule { view, kind } => run_schedule(*view, kind.as_deref()),
        Command::Report => {
            let catalog = load_catalog(cli.data_dir.as_deref())?;
            let tables = verify::report_tables(&catalog).map_err(fail)?;
            if cli.format == Format::Json {
                return Ok(Output::Json(to_json(&tables)?));
            }
            let text: Vec<String> = tables.iter().map(|(name, t)| format!("# {name}\n{}", t.to_tsv())).collect();
            Ok(Output::Text(text.join("\n")))
        }
        Command::Verify => {
            let catalog = load_catalog(cli.data_dir.as_deref())?;
            let bundle = verify::report(&catalog, seed).map_err(fail)?;
            let ok = bundle.checks.iter().all(|c| c.passed);
            Ok(Output::Checked(checks_table(&bundle.checks), to_json(&bundle)?, ok))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match run(&cli) {
        Ok(o) => o,
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
        Err(Failure::Run(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let (text, ok) = match (out, cli.format) {
        (Output::Text(s), _) => (s, true),
        (Output::Json(v), _) => (v.to_string() + "\n", true),
        (Output::Table(t), Format::Tsv) => (t.to_tsv(), true),
        (Output::Table(t), Format::Json) => (serde_json::to_string(&t).expect("table serializes") + "\n", true),
        (Output::Checked(t, _, ok), Format::Tsv) => (t.to_tsv(), ok),
        (Output::Checked(_, v, ok), Format::Json) => (v.to_string() + "\n", ok),
    };
    print!("{text}");
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rghw::ag_bounds::Tier;
use rghw::codes::{rghw_oracle, CoordinateSet, LinearCode};
use rghw::hermitian::{diff_table, HermitianFamily};
use rghw::ramp::{
    hermitian_profile_bound, hermitian_profile_closed, hermitian_scheme, mds_scheme, RampScheme,
};
use rghw::reproduce::{reproduce, rows_to_csv, ReportRow, Target};
use rghw::semigroup::{z_closed_form, NumericalSemigroup};
use rghw::{Elem, FiniteField, SearchConfig};

const EXIT_MISMATCH: u8 = 2;
const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "rghw",
    version,
    about = "Relative generalized Hamming weights, one-point code bounds and ramp schemes"
)]
struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    /// Write output here instead of stdout (a directory for `reproduce`).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Run every search on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run a stored scenario and compare against its expected values.
    Reproduce {
        /// A target name or `all`.
        target: String,
    },
    /// Lower bound on M_m(C(mu1), C(mu2)) for a one-point code pair.
    Bound {
        #[arg(long, value_enum, default_value_t = Family::Hermitian)]
        family: Family,
        #[arg(long, default_value_t = 4)]
        q: u32,
        #[arg(long, allow_hyphen_values = true)]
        mu1: i64,
        #[arg(long, allow_hyphen_values = true)]
        mu2: i64,
        #[arg(long)]
        m: usize,
        /// closed, shifted, exact-set, dual or all.
        #[arg(long, default_value = "all")]
        tier: String,
    },
    /// Exact M_m(C1, C2) by exhaustive search.
    Oracle {
        #[arg(long)]
        code_file: PathBuf,
        /// Subcode; the zero code when omitted.
        #[arg(long)]
        code2_file: Option<PathBuf>,
        /// Every m from 1 to the codimension when omitted.
        #[arg(long)]
        m: Option<usize>,
    },
    /// Leakage analysis of a scheme given by an MDS pair or code files.
    Scheme {
        #[command(flatten)]
        source: SchemeSource,
        #[command(subcommand)]
        action: SchemeAction,
    },
    /// Hermitian codes over GF(q^2).
    Hermitian {
        #[arg(long, default_value_t = 4)]
        q: u32,
        #[command(subcommand)]
        action: HermitianAction,
    },
    /// Ramp secret sharing.
    Ramp {
        #[command(subcommand)]
        action: RampAction,
    },
    /// Numerical semigroup data and the Z function.
    Semigroup {
        /// Comma-separated generators, e.g. `4,5`.
        generators: String,
        #[arg(long)]
        mu: Option<i64>,
        #[arg(long)]
        m: Option<i64>,
    },
    /// Finite field parameters.
    Field {
        /// `p^k` or the order.
        spec: String,
        /// Multiply two elements.
        #[arg(long, num_args = 2)]
        mul: Option<Vec<u32>>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Hermitian,
}

#[derive(Args)]
struct SchemeSource {
    /// Nested Reed-Solomon pair.
    #[arg(long)]
    mds: bool,
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k1: Option<usize>,
    #[arg(long)]
    k2: Option<usize>,
    #[arg(long, conflicts_with = "mds")]
    code_file: Option<PathBuf>,
    #[arg(long, requires = "code_file")]
    code2_file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum SchemeAction {
    /// t_m and r_m; analytic for MDS pairs, exhaustive for code files.
    Profile,
    /// Mutual information of the given 0-based share indices.
    Leakage {
        #[arg(long, value_delimiter = ',')]
        set: Vec<usize>,
    },
    /// Sets of size d revealing exactly m symbols.
    Access {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        d: usize,
    },
}

#[derive(Subcommand)]
enum HermitianAction {
    /// Generator matrix of C(mu) in the `q n k` code format.
    Code {
        #[arg(long, allow_hyphen_values = true)]
        mu: i64,
    },
    /// Every tier for (mu1, mu2, m).
    Rghw {
        #[arg(long, allow_hyphen_values = true)]
        mu1: i64,
        #[arg(long, allow_hyphen_values = true)]
        mu2: i64,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value = "all")]
        tier: String,
    },
    /// RGHW minus GHW lower bounds for m = 3..q+1.
    DiffTable,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Bound,
    Closed,
    Oracle,
    Exhaustive,
}

#[derive(Args)]
struct RampSource {
    #[arg(long, value_enum, default_value_t = RampFamily::Hermitian)]
    family: RampFamily,
    #[arg(long)]
    q: u32,
    #[arg(long, allow_hyphen_values = true)]
    mu1: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    mu2: Option<i64>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k1: Option<usize>,
    #[arg(long)]
    k2: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RampFamily {
    Hermitian,
    Mds,
}

#[derive(Subcommand)]
enum RampAction {
    Profile {
        #[command(flatten)]
        source: RampSource,
        #[arg(long, value_enum, default_value_t = Mode::Bound)]
        mode: Mode,
    },
    /// Share a secret; output is a JSON object {index: value}.
    Share {
        #[command(flatten)]
        source: RampSource,
        /// Comma-separated secret symbols.
        #[arg(long, value_delimiter = ',')]
        secret: Vec<u32>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Recover what a JSON share file {index: value} determines.
    Reconstruct {
        #[command(flatten)]
        source: RampSource,
        #[arg(long)]
        shares: PathBuf,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn run(cli: &Cli) -> Result<u8> {
    let cfg = if cli.sequential {
        SearchConfig::sequential()
    } else {
        SearchConfig::default()
    };
    let out = Output {
        format: cli.format,
        path: cli.out.clone(),
    };
    let text = match &cli.command {
        Command::Reproduce { target } => return cmd_reproduce(target, &out, &cfg),
        Command::Bound {
            family: Family::Hermitian,
            q,
            mu1,
            mu2,
            m,
            tier,
        } => out.rows(&bound_rows(
            &HermitianFamily::new(*q)?,
            *mu1,
            *mu2,
            *m,
            tier,
            &cfg,
        )?),
        Command::Oracle {
            code_file,
            code2_file,
            m,
        } => out.rows(&cmd_oracle(code_file, code2_file.as_deref(), *m, &cfg)?),
        Command::Scheme { source, action } => cmd_scheme(source, action, &out, &cfg)?,
        Command::Hermitian { q, action } => cmd_hermitian(*q, action, &out, &cfg)?,
        Command::Ramp { action } => cmd_ramp(action, &out, &cfg)?,
        Command::Semigroup { generators, mu, m } => {
            out.value(cmd_semigroup(generators, *mu, *m, &cfg)?)
        }
        Command::Field { spec, mul } => out.value(cmd_field(spec, mul.as_deref())?),
    };
    out.write(&text)?;
    Ok(0)
}

struct Output {
    format: Format,
    path: Option<PathBuf>,
}

impl Output {
    fn rows(&self, rows: &[ReportRow]) -> String {
        match self.format {
            Format::Csv => rows_to_csv(rows),
            Format::Json => serde_json::to_string_pretty(rows).expect("rows serialize") + "\n",
        }
    }

    fn value(&self, v: Value) -> String {
        match self.format {
            Format::Json => serde_json::to_string_pretty(&v).expect("values serialize") + "\n",
            Format::Csv => {
                let mut s = String::from("key,value\n");
                if let Value::Object(map) = v {
                    for (k, x) in map {
                        let cell = match x {
                            Value::String(t) => t,
                            other => other.to_string(),
                        };
                        s.push_str(&format!("{k},\"{}\"\n", cell.replace('"', "\"\"")));
                    }
                }
                s
            }
        }
    }

    fn write(&self, text: &str) -> Result<()> {
        match &self.path {
            Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn row(scenario: &str, value: i64, kind: &str) -> ReportRow {
    ReportRow {
        scenario: scenario.into(),
        value,
        kind: Some(kind.into()),
        matches: true,
        ..ReportRow::default()
    }
}

fn cmd_reproduce(target: &str, out: &Output, cfg: &SearchConfig) -> Result<u8> {
    let targets: Vec<Target> = if target == "all" {
        Target::ALL.to_vec()
    } else {
        vec![target.parse()?]
    };
    if let Some(dir) = &out.path {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let mut code = 0;
    for t in targets {
        let report = reproduce(t, cfg)?;
        match &out.path {
            Some(dir) => {
                fs::write(dir.join(format!("{t}.csv")), report.to_csv())?;
                fs::write(dir.join(format!("{t}.json")), report.to_json())?;
            }
            None => match out.format {
                Format::Csv => print!("{}", report.to_csv()),
                Format::Json => print!("{}", report.to_json()),
            },
        }
        for note in &report.notes {
            eprintln!("{t}: note: {note}");
        }
        let bad: Vec<&ReportRow> = report.mismatches().collect();
        if bad.is_empty() {
            eprintln!("{t}: {} rows, all match", report.rows.len());
        } else {
            code = EXIT_MISMATCH;
            for r in bad {
                eprintln!(
                    "{t}: MISMATCH {}: got {}, expected {}",
                    r.scenario,
                    r.value,
                    r.expected.unwrap_or_default()
                );
            }
        }
    }
    Ok(code)
}

fn bound_rows(
    h: &HermitianFamily,
    mu1: i64,
    mu2: i64,
    m: usize,
    tier: &str,
    cfg: &SearchConfig,
) -> Result<Vec<ReportRow>> {
    let o = h.orders();
    let base = |mut r: ReportRow, t: &str| {
        r.q = Some(h.q() as i64);
        r.mu1 = Some(mu1);
        r.mu2 = Some(mu2);
        r.m = Some(m as i64);
        r.tier = Some(t.into());
        r
    };
    let tiers: Vec<&str> = match tier {
        "all" => vec!["closed", "shifted", "exact-set", "dual"],
        t => vec![t],
    };
    let mut rows = Vec::new();
    for t in tiers {
        let (scenario, value) = if t == "dual" {
            ("dual-bound", o.rghw_bound_dual(mu1, mu2, m, cfg)?.value)
        } else {
            let tier: Tier = t.parse()?;
            ("bound", o.rghw_bound(mu1, mu2, m, tier, cfg)?.value)
        };
        rows.push(base(row(scenario, value, "lower-bound"), t));
    }
    Ok(rows)
}

fn read_code(path: &Path) -> Result<LinearCode> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    LinearCode::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn code_pair(c1: &Path, c2: Option<&Path>) -> Result<(LinearCode, LinearCode)> {
    let c1 = read_code(c1)?;
    let c2 = match c2 {
        Some(p) => read_code(p)?,
        None => LinearCode::zero(c1.field(), c1.len()),
    };
    if !c2.is_subcode_of(&c1) {
        bail!("the second code is not contained in the first");
    }
    Ok((c1, c2))
}

fn cmd_oracle(
    c1: &Path,
    c2: Option<&Path>,
    m: Option<usize>,
    cfg: &SearchConfig,
) -> Result<Vec<ReportRow>> {
    let (c1, c2) = code_pair(c1, c2)?;
    let ell = c1.dim() - c2.dim();
    let ms: Vec<usize> = match m {
        Some(m) => vec![m],
        None => (1..=ell).collect(),
    };
    ms.into_iter()
        .map(|m| {
            let v = rghw_oracle(&c1, &c2, m, cfg)?;
            let mut r = row("oracle", v as i64, "exact");
            r.q = Some(c1.field().order() as i64);
            r.m = Some(m as i64);
            Ok(r)
        })
        .collect()
}

fn cmd_scheme(
    src: &SchemeSource,
    action: &SchemeAction,
    out: &Output,
    cfg: &SearchConfig,
) -> Result<String> {
    let (scheme, analytic) = if src.mds {
        let need = |x: Option<usize>, name: &str| x.ok_or_else(|| anyhow!("--mds needs --{name}"));
        let q = src.q.ok_or_else(|| anyhow!("--mds needs --q"))?;
        let (s, p) = mds_scheme(
            q,
            need(src.n, "n")?,
            need(src.k1, "k1")?,
            need(src.k2, "k2")?,
        )?;
        (s, Some(p))
    } else {
        let c1 = src
            .code_file
            .as_deref()
            .ok_or_else(|| anyhow!("give --mds or --code-file"))?;
        let (c1, c2) = code_pair(c1, src.code2_file.as_deref())?;
        (RampScheme::new(c1, c2)?, None)
    };
    Ok(match action {
        SchemeAction::Profile => {
            let p = match analytic {
                Some(p) => p,
                None => scheme.profile_oracle(cfg)?,
            };
            out.rows(&profile_rows(scheme.field().order() as i64, &p))
        }
        SchemeAction::Leakage { set } => {
            let i = CoordinateSet::new(scheme.len(), set.clone())?;
            let mi = scheme.mutual_information(&i)?;
            out.rows(&[row("mutual-information", mi as i64, "exact")])
        }
        SchemeAction::Access { m, d } => {
            let a = scheme.access_structure(*m, *d, cfg)?;
            let list =
                |v: &[CoordinateSet]| v.iter().map(|s| s.indices().to_vec()).collect::<Vec<_>>();
            out.value(json!({
                "m": a.m,
                "d": a.d,
                "sets": list(&a.sets),
                "minimal": list(&a.minimal),
                "maximal": list(&a.maximal),
            }))
        }
    })
}

fn profile_rows(q: i64, p: &rghw::ramp::LeakageProfile) -> Vec<ReportRow> {
    let kind = |prov: rghw::ramp::Provenance, side: &str| match prov {
        rghw::ramp::Provenance::Bound => side.to_string(),
        _ => "exact".to_string(),
    };
    let mut rows = Vec::with_capacity(2 * p.ell);
    for m in 0..p.ell {
        let mut t = row("t", p.t[m], &kind(p.t_provenance[m], "lower-bound"));
        t.q = Some(q);
        t.m = Some(m as i64 + 1);
        let mut r = row("r", p.r[m], &kind(p.r_provenance[m], "upper-bound"));
        r.q = Some(q);
        r.m = Some(m as i64 + 1);
        rows.push(t);
        rows.push(r);
    }
    rows
}

fn cmd_hermitian(
    q: u32,
    action: &HermitianAction,
    out: &Output,
    cfg: &SearchConfig,
) -> Result<String> {
    Ok(match action {
        HermitianAction::Code { mu } => {
            let h = HermitianFamily::new(q)?;
            let c = h.code(*mu);
            match out.format {
                Format::Csv => c.to_code_string(),
                Format::Json => out.value(json!({
                    "q": c.field().order(),
                    "n": c.len(),
                    "k": c.dim(),
                    "generator": c.generator().iter_rows().map(|r| r.to_vec()).collect::<Vec<_>>(),
                })),
            }
        }
        HermitianAction::Rghw { mu1, mu2, m, tier } => {
            let h = HermitianFamily::new(q)?;
            let mut rows = bound_rows(&h, *mu1, *mu2, *m, tier, cfg)?;
            let r = h.rghw(*mu1, *mu2, *m, cfg)?;
            if r.equality {
                for x in rows
                    .iter_mut()
                    .filter(|x| x.scenario == "bound" && x.value == r.closed)
                {
                    x.kind = Some("exact".into());
                }
            }
            out.rows(&rows)
        }
        HermitianAction::DiffTable => {
            let rows: Vec<ReportRow> = diff_table(q, 3..=q as usize + 1)?
                .into_iter()
                .map(|(m, d)| {
                    let mut r = row("diff", d, "exact");
                    r.q = Some(q as i64);
                    r.m = Some(m as i64);
                    r
                })
                .collect();
            out.rows(&rows)
        }
    })
}

fn ramp_scheme(src: &RampSource) -> Result<RampScheme> {
    match src.family {
        RampFamily::Hermitian => {
            let (mu1, mu2) = hermitian_mus(src)?;
            Ok(hermitian_scheme(&HermitianFamily::new(src.q)?, mu1, mu2)?)
        }
        RampFamily::Mds => Ok(mds_scheme(
            src.q,
            src.n.context("--n")?,
            src.k1.context("--k1")?,
            src.k2.context("--k2")?,
        )?
        .0),
    }
}

fn hermitian_mus(src: &RampSource) -> Result<(i64, i64)> {
    Ok((
        src.mu1.context("the hermitian family needs --mu1")?,
        src.mu2.context("the hermitian family needs --mu2")?,
    ))
}

fn cmd_ramp(action: &RampAction, out: &Output, cfg: &SearchConfig) -> Result<String> {
    match action {
        RampAction::Profile { source, mode } => {
            let q = source.q as i64;
            let p = match (source.family, mode) {
                (RampFamily::Hermitian, Mode::Bound) => {
                    let (mu1, mu2) = hermitian_mus(source)?;
                    hermitian_profile_bound(&HermitianFamily::new(source.q)?, mu1, mu2, cfg)?.0
                }
                (RampFamily::Hermitian, Mode::Closed) => {
                    let (mu1, mu2) = hermitian_mus(source)?;
                    hermitian_profile_closed(q, mu1, mu1 - mu2)?.profile
                }
                (RampFamily::Mds, Mode::Bound | Mode::Closed) => {
                    mds_scheme(
                        source.q,
                        source.n.context("--n")?,
                        source.k1.context("--k1")?,
                        source.k2.context("--k2")?,
                    )?
                    .1
                }
                (_, Mode::Oracle) => ramp_scheme(source)?.profile_oracle(cfg)?,
                (_, Mode::Exhaustive) => ramp_scheme(source)?.profile_exhaustive(cfg)?,
            };
            Ok(out.rows(&profile_rows(q, &p)))
        }
        RampAction::Share {
            source,
            secret,
            seed,
        } => {
            let s = ramp_scheme(source)?;
            let secret: Vec<Elem> = secret
                .iter()
                .map(|&x| elem(s.field(), x))
                .collect::<Result<_>>()?;
            let shares = s.share(&secret, *seed)?;
            let map: BTreeMap<String, Value> = shares
                .iter()
                .enumerate()
                .map(|(i, &v)| (i.to_string(), json!(v)))
                .collect();
            Ok(out.value(Value::Object(map.into_iter().collect())))
        }
        RampAction::Reconstruct { source, shares } => {
            let s = ramp_scheme(source)?;
            let text = fs::read_to_string(shares)
                .with_context(|| format!("reading {}", shares.display()))?;
            let map: BTreeMap<String, u32> = serde_json::from_str(&text)
                .context("share files are JSON objects {index: value}")?;
            let observed = map
                .iter()
                .map(|(k, &v)| {
                    let i: usize = k.parse().with_context(|| format!("share index `{k}`"))?;
                    Ok((i, elem(s.field(), v)?))
                })
                .collect::<Result<Vec<_>>>()?;
            let r = s.reconstruct(&observed)?;
            Ok(out.value(serde_json::to_value(&r)?))
        }
    }
}

fn elem(f: &FiniteField, x: u32) -> Result<Elem> {
    if !f.contains(x) {
        bail!("{x} is not an element of GF({})", f.order());
    }
    Ok(x as Elem)
}

fn cmd_semigroup(gens: &str, mu: Option<i64>, m: Option<i64>, cfg: &SearchConfig) -> Result<Value> {
    let s: NumericalSemigroup = gens.parse()?;
    let mut v = json!({
        "generators": s.generators(),
        "genus": s.genus(),
        "conductor": s.conductor(),
        "gaps": s.gaps(),
    });
    if let (Some(mu), Some(m)) = (mu, m) {
        v["z"] = json!(s.z_function(mu, m, cfg)?);
        if let [a, b] = s.generators() {
            if *b == a + 1 {
                v["z_closed_form"] = json!(z_closed_form(*a as i64, mu, m)?);
            }
        }
    } else if mu.is_some() || m.is_some() {
        bail!("Z needs both --mu and --m");
    }
    Ok(v)
}

fn cmd_field(spec: &str, mul: Option<&[u32]>) -> Result<Value> {
    let f: FiniteField = spec.parse()?;
    let mut v = json!({
        "order": f.order(),
        "characteristic": f.characteristic(),
        "degree": f.degree(),
        "modulus": f.modulus(),
        "generator": f.generator(),
    });
    if let Some([a, b]) = mul {
        v["product"] = json!(f.mul(elem(&f, *a)?, elem(&f, *b)?));
    }
    Ok(v)
}

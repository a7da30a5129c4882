mod suites;

use std::process::ExitCode;

use bms_core::characters::{
    computed_graded_dims, draw_generic_hl, irreducible_character_mode, seeded_rng, QSeries,
};
use bms_core::liealg::AlgebraMode;
use bms_core::singular::{power_vector, singular_space, PowerOp};
use bms_core::subsingular::{build_t_pr, h_pr_mode, subsingular_space, QuotientContext};
use bms_core::vector::ModuleVector;
use bms_core::verma::{VermaConfig, VermaModule};
use bms_core::{Error, Scalar};
use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::json;

#[derive(Parser, Debug)]
#[command(
    name = "bms",
    version,
    about = "Singular and subsingular vectors of N=1 BMS Verma modules"
)]
struct Cli {
    /// Algebra: the full superalgebra or its even part W(2,2).
    #[arg(long, global = true, default_value = "full", value_parser = parse_mode)]
    mode: AlgebraMode,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for generic specializations.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long = "cL", global = true)]
    c_l: Option<String>,
    #[arg(long = "cM", global = true)]
    c_m: Option<String>,
    #[arg(long = "hL", global = true)]
    h_l: Option<String>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print S^k·1 (even p, or W(2,2)) or R^k·1 (odd p).
    Singular {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
    /// Print T_{p,r}·1 and the weight hL it requires.
    Subsingular {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        r: u32,
    },
    /// Singular and subsingular spaces at one doubled level.
    Kernel {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        level2: i32,
    },
    /// Character of the irreducible quotient, with computed dimensions when
    /// cL and cM are given.
    Char {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        r: Option<u32>,
        /// Doubled cutoff level.
        #[arg(long, default_value_t = 8)]
        levels: i32,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: suites::Suite,
        /// Doubled level bound for the property and character suites.
        #[arg(long, default_value_t = 8)]
        max_level: i32,
    },
    /// Print h_{p,r} and h'_{p,r}.
    Hpr {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        r: u32,
    },
}

fn parse_mode(s: &str) -> Result<AlgebraMode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(_)
            | Error::Parse { .. }
            | Error::VanishingCentralCharge
            | Error::NotReducible(_) => Failure::Usage(e.to_string()),
            _ => Failure::Check(e.to_string()),
        }
    }
}

fn rational_flag(name: &str, s: &Option<String>) -> Result<Option<Scalar>, Failure> {
    let Some(s) = s else { return Ok(None) };
    let v: Scalar = s
        .parse()
        .map_err(|e: Error| Failure::Usage(format!("--{name}: {e}")))?;
    if !v.is_constant() {
        return Err(Failure::Usage(format!(
            "--{name} must be a rational number"
        )));
    }
    Ok(Some(v))
}

struct Specialization {
    c_l: Option<Scalar>,
    c_m: Option<Scalar>,
    h_l: Option<Scalar>,
}

impl Specialization {
    fn from_cli(cli: &Cli) -> Result<Self, Failure> {
        let s = Specialization {
            c_l: rational_flag("cL", &cli.c_l)?,
            c_m: rational_flag("cM", &cli.c_m)?,
            h_l: rational_flag("hL", &cli.h_l)?,
        };
        if s.c_m.as_ref().is_some_and(|c| c.is_zero()) {
            return Err(Failure::Usage("--cM must be nonzero".into()));
        }
        Ok(s)
    }

    fn c_l(&self) -> Scalar {
        self.c_l.clone().unwrap_or_else(Scalar::c_l)
    }

    fn c_m(&self) -> Scalar {
        self.c_m.clone().unwrap_or_else(Scalar::c_m)
    }

    fn config(
        &self,
        p: u32,
        mode: AlgebraMode,
        h_l: Option<Scalar>,
    ) -> Result<VermaConfig, Failure> {
        let h = h_l.or_else(|| self.h_l.clone()).unwrap_or_else(Scalar::h_l);
        Ok(VermaConfig::reducible_at(
            p,
            mode,
            self.c_l(),
            self.c_m(),
            h,
        )?)
    }
}

fn check_p(p: u32) -> Result<(), Failure> {
    if p == 0 {
        return Err(Failure::Usage("p must be ≥ 1".into()));
    }
    Ok(())
}

fn emit(format: Format, text: String, value: serde_json::Value) {
    match format {
        Format::Text => println!("{text}"),
        Format::Json => println!("{}", serde_json::to_string_pretty(&value).expect("json")),
    }
}

fn cmd_singular(cli: &Cli, spec: &Specialization, p: u32, k: u32) -> Result<(), Failure> {
    check_p(p)?;
    if k == 0 {
        return Err(Failure::Usage("k must be ≥ 1".into()));
    }
    let vm = VermaModule::new(spec.config(p, cli.mode, None)?)?;
    let op = if p % 2 == 1 && cli.mode == AlgebraMode::Full {
        PowerOp::R
    } else {
        PowerOp::S
    };
    let v = power_vector(op, k, p, &vm)?;
    let name = if op == PowerOp::R { "R" } else { "S" };
    let h_m = vm.config().h_m.to_string();
    emit(
        cli.format,
        format!("{v}\nhM = {h_m}"),
        json!({ "p": p, "k": k, "mode": mode_name(cli.mode), "operator": name, "hM": h_m, "vector": v.to_json() }),
    );
    Ok(())
}

fn mode_name(m: AlgebraMode) -> &'static str {
    match m {
        AlgebraMode::Full => "full",
        AlgebraMode::W22 => "w22",
    }
}

fn cmd_subsingular(cli: &Cli, spec: &Specialization, p: u32, r: u32) -> Result<(), Failure> {
    check_p(p)?;
    if r == 0 {
        return Err(Failure::Usage("r must be ≥ 1".into()));
    }
    let h = h_pr_mode(p, r, cli.mode, &spec.c_l());
    let ctx = QuotientContext::from_config(spec.config(p, cli.mode, Some(h.clone()))?)?;
    let v = build_t_pr(p, r, &ctx)?;
    emit(
        cli.format,
        format!("{v}\nhL = {h}"),
        json!({ "p": p, "r": r, "mode": mode_name(cli.mode), "hL": h.to_string(), "vector": v.to_json() }),
    );
    Ok(())
}

fn basis_lines(vs: &[ModuleVector]) -> String {
    vs.iter().map(|v| format!("\n  {v}")).collect()
}

fn cmd_kernel(cli: &Cli, spec: &Specialization, p: u32, level2: i32) -> Result<(), Failure> {
    check_p(p)?;
    if level2 < 0 {
        return Err(Failure::Usage("level2 must be ≥ 0".into()));
    }
    let cfg = spec.config(p, cli.mode, None)?;
    let vm = VermaModule::new(cfg.clone())?;
    let sing = singular_space(level2, &vm)?;
    let ctx = QuotientContext::from_config(cfg)?;
    let sub = subsingular_space(level2, &ctx)?;
    let (sb, qb) = (sing.space.basis(), sub.basis());
    let text = format!(
        "singular: dim {}{}\nsubsingular modulo J': dim {}{}",
        sing.space.dim(),
        basis_lines(&sb),
        sub.dim(),
        basis_lines(&qb)
    );
    let js = |vs: &[ModuleVector]| vs.iter().map(|v| v.to_json()).collect::<Vec<_>>();
    emit(
        cli.format,
        text,
        json!({
            "p": p, "level2": level2, "mode": mode_name(cli.mode), "hL": vm.config().h_l.to_string(),
            "singular": { "dim": sing.space.dim(), "basis": js(&sb), "matches_closed_form": sing.matches_closed_form },
            "subsingular": { "dim": sub.dim(), "basis": js(&qb) },
        }),
    );
    Ok(())
}

fn as_rational(s: &Scalar) -> BigRational {
    s.as_rational().expect("checked constant")
}

fn cmd_char(
    cli: &Cli,
    spec: &Specialization,
    p: u32,
    r: Option<u32>,
    cutoff2: i32,
) -> Result<(), Failure> {
    check_p(p)?;
    if cutoff2 < 0 {
        return Err(Failure::Usage("levels must be ≥ 0".into()));
    }
    if r == Some(0) {
        return Err(Failure::Usage("r must be ≥ 1".into()));
    }
    let mut formula = irreducible_character_mode(p, r, cutoff2, cli.mode);
    let computed: Option<QSeries> = match (&spec.c_l, &spec.c_m) {
        (Some(cl), Some(cm)) => {
            let h = match (r, &spec.h_l) {
                (Some(r), _) => as_rational(&h_pr_mode(p, r, cli.mode, cl)),
                (None, Some(h)) => as_rational(h),
                (None, None) => draw_generic_hl(
                    &mut seeded_rng(cli.seed),
                    p,
                    cli.mode,
                    &as_rational(cl),
                    cutoff2,
                ),
            };
            formula.offset = Scalar::from_ratio(&h);
            Some(computed_graded_dims(
                p,
                cli.mode,
                &as_rational(cl),
                &as_rational(cm),
                &h,
                cutoff2,
            )?)
        }
        _ => None,
    };
    if let (None, Some(r)) = (&computed, r) {
        formula.offset = h_pr_mode(p, r, cli.mode, &spec.c_l());
    }
    let mut text = format!("formula:  {formula}");
    let mut value =
        json!({ "p": p, "r": r, "mode": mode_name(cli.mode), "formula": formula.to_json() });
    if let Some(c) = &computed {
        let agree = c.coeffs == formula.coeffs;
        text.push_str(&format!("\ncomputed: {c}\nagree: {agree}"));
        value["computed"] = c.to_json();
        value["agree"] = json!(agree);
    }
    emit(cli.format, text, value);
    Ok(())
}

fn cmd_hpr(cli: &Cli, spec: &Specialization, p: u32, r: u32) -> Result<(), Failure> {
    check_p(p)?;
    if r == 0 {
        return Err(Failure::Usage("r must be ≥ 1".into()));
    }
    let cl = spec.c_l();
    let (h, hw) = (
        h_pr_mode(p, r, AlgebraMode::Full, &cl),
        h_pr_mode(p, r, AlgebraMode::W22, &cl),
    );
    emit(
        cli.format,
        format!("h_{{{p},{r}}} = {h}\nh'_{{{p},{r}}} = {hw}"),
        json!({ "p": p, "r": r, "hpr": h.to_string(), "hpr_w22": hw.to_string() }),
    );
    Ok(())
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let spec = Specialization::from_cli(cli)?;
    match cli.cmd {
        Command::Singular { p, k } => cmd_singular(cli, &spec, p, k),
        Command::Subsingular { p, r } => cmd_subsingular(cli, &spec, p, r),
        Command::Kernel { p, level2 } => cmd_kernel(cli, &spec, p, level2),
        Command::Char { p, r, levels } => cmd_char(cli, &spec, p, r, levels),
        Command::Hpr { p, r } => cmd_hpr(cli, &spec, p, r),
        Command::Verify { suite, max_level } => {
            if max_level < 0 {
                return Err(Failure::Usage("max-level must be ≥ 0".into()));
            }
            let items = suites::run(suite, max_level, cli.seed);
            let failed = items.iter().filter(|i| !i.pass).count();
            let mut text: Vec<String> = items
                .iter()
                .map(|i| match (i.pass, i.detail.is_empty()) {
                    (true, _) => format!("PASS {}", i.name),
                    (false, true) => format!("FAIL {}", i.name),
                    (false, false) => format!("FAIL {}: {}", i.name, i.detail),
                })
                .collect();
            text.push(format!(
                "{} passed, {} failed",
                items.len() - failed,
                failed
            ));
            let js: Vec<_> = items
                .iter()
                .map(|i| json!({ "name": i.name, "pass": i.pass, "detail": i.detail }))
                .collect();
            emit(
                cli.format,
                text.join("\n"),
                json!({ "suite": suite.name(), "seed": cli.seed, "max_level2": max_level, "items": js, "failed": failed }),
            );
            if failed > 0 {
                return Err(Failure::Check(format!("{failed} check(s) failed")));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Check(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}

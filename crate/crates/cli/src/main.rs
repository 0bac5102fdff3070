use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use divcode_core::algebra::{cocycle_unitary, validate_cocycle, Algebra};
use divcode_core::codebook::{self, Strategy};
use divcode_core::embed::{verify_alpha_is_conjugation, EmbeddingContext};
use divcode_core::error::CoreError;
use divcode_core::involution::{build_tau, symmetric_basis, validate_involution, Involution};
use divcode_core::nf::NumberField;
use divcode_core::positivity::{
    cor24_check, definiteness, iff_check, prop22_check, prop23_check, trace_form_gram,
    transport_definiteness, transport_hermitian, transport_positive, DefKind,
};
use divcode_core::rat::{rat_to_decimal, rat_to_string};
use divcode_core::report::CheckStatus;
use divcode_core::tower::{lemma21_check, validate_tower, Tower};

use divcode_cli::formats::{build_cocycle, build_field, build_tower, exit_code, load, AlgebraDescription};
use divcode_cli::render::{
    alg_elem_string, emit, nf_elem_string, signature_string, CheckLine, CommandReport,
    ReportFormat,
};

#[derive(Parser)]
#[command(
    name = "divcode",
    about = "Exact construction and checking of crossed product algebras with unitary involutions, and unitary codebook export"
)]
struct Cli {
    /// Working interval precision in bits; defaults to the file's
    /// precision.default_bits.
    #[arg(long, global = true, env = "DIVCODE_PRECISION_BITS")]
    precision_bits: Option<u32>,
    /// Precision escalation cap in bits; defaults to the file's
    /// precision.max_bits.
    #[arg(long, global = true, env = "DIVCODE_MAX_PRECISION_BITS")]
    max_precision_bits: Option<u32>,
    #[arg(long, global = true, value_enum, default_value = "text", env = "DIVCODE_REPORT")]
    report: ReportFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    TraceForm,
    Transport,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Products,
    Cayley,
    Mixed,
}

impl StrategyArg {
    fn to_core(self) -> Strategy {
        match self {
            StrategyArg::Products => Strategy::Products,
            StrategyArg::Cayley => Strategy::Cayley,
            StrategyArg::Mixed => Strategy::Mixed,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Validate the tower, the cocycle, the unitary condition and the
    /// conjugation role of alpha.
    Validate { file: PathBuf },
    /// Build the involution and check its axioms.
    Involution { file: PathBuf },
    /// Decide positivity of the involution.
    Positivity {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "both")]
        method: Method,
    },
    /// Run every theorem checker on the instance.
    Theorems { file: PathBuf },
    /// Generate a unitary codebook and verify full diversity.
    Codebook {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "products")]
        strategy: StrategyArg,
        #[arg(long, default_value = "16")]
        size: usize,
        #[arg(long, default_value = "3")]
        height: i64,
        #[arg(long, default_value = "1")]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Generate even when the positivity precondition fails.
        #[arg(long)]
        force: bool,
    },
}

struct Loaded {
    desc: AlgebraDescription,
    field: Arc<NumberField>,
    tower: Tower,
    bits: u32,
    max_bits: u32,
}

/// Everything that can go wrong before reporting starts: carries the
/// exit code directly.
struct Abort {
    code: i32,
    message: String,
}

impl Abort {
    fn input(msg: impl Into<String>) -> Self {
        Abort {
            code: 2,
            message: msg.into(),
        }
    }

    fn core(e: &CoreError) -> Self {
        Abort {
            code: exit_code(e),
            message: e.to_string(),
        }
    }
}

fn load_instance(path: &Path, cli_bits: Option<u32>, cli_max: Option<u32>) -> Result<Loaded, Abort> {
    let desc = load(path).map_err(|e| Abort::input(e.to_string()))?;
    let field = build_field(&desc).map_err(|e| Abort::input(e.to_string()))?;
    let tower = build_tower(&desc, &field).map_err(|e| Abort::input(e.to_string()))?;
    let bits = cli_bits.unwrap_or(desc.precision.default_bits);
    let max_bits = cli_max.unwrap_or(desc.precision.max_bits).max(bits);
    Ok(Loaded {
        desc,
        field,
        tower,
        bits,
        max_bits,
    })
}

fn embedding(l: &Loaded) -> Result<EmbeddingContext, Abort> {
    EmbeddingContext::new(
        &l.field,
        &l.desc.embedding_hint.0,
        &l.desc.embedding_hint.1,
        l.bits,
    )
    .map_err(|e| Abort::core(&e))
}

/// Runs the validate pipeline, appending one line per validator.
/// Returns Ok(true) when every check passed.
fn run_validate(l: &Loaded, checks: &mut Vec<CheckLine>) -> Result<bool, Abort> {
    let mut ok = true;
    match validate_tower(&l.tower) {
        Ok(()) => checks.push(CheckLine::pass(
            "tower",
            format!(
                "degree {} field, |G| = {}, d = {}",
                l.field.degree,
                l.tower.g_names.len(),
                nf_elem_string(&l.tower.d)
            ),
        )),
        Err(e) => {
            ok = false;
            checks.push(CheckLine::fail("tower", "tower validation", e.to_string()));
        }
    }
    let cocycle = build_cocycle(&l.desc, &l.field).map_err(|e| Abort::input(e.to_string()))?;
    match validate_cocycle(&l.tower, &cocycle) {
        Ok(()) => checks.push(CheckLine::pass("cocycle", "2-cocycle identity holds")),
        Err(e) => {
            ok = false;
            checks.push(CheckLine::fail("cocycle", "cocycle validation", e.to_string()));
        }
    }
    if cocycle_unitary(&l.tower, &cocycle) {
        checks.push(CheckLine::pass("cocycle-unitary", "alpha(xi) xi = 1 on G x G"));
    } else {
        ok = false;
        checks.push(CheckLine::fail(
            "cocycle-unitary",
            "alpha(xi) xi = 1 on G x G",
            "some entry has alpha(xi_{s,r}) xi_{s,r} != 1",
        ));
    }
    let mut ctx = embedding(l)?;
    // A real root makes conjugation trivial on the embedded field; the
    // nontrivial alpha then cannot be conjugation and the check is
    // vacuous (positivity fails downstream instead).
    let gen = l.field.generator();
    if verify_alpha_is_conjugation(&mut ctx, &gen, l.max_bits).map_err(|e| Abort::core(&e))? {
        checks.push(CheckLine::pass(
            "alpha-conjugation",
            "embedding is real; conjugation acts trivially",
        ));
        return Ok(ok);
    }
    let alpha_image = l.tower.alpha().image.clone();
    match verify_alpha_is_conjugation(&mut ctx, &alpha_image, l.max_bits) {
        Ok(true) => checks.push(CheckLine::pass(
            "alpha-conjugation",
            "alpha acts as complex conjugation under the chosen root",
        )),
        Ok(false) => {
            ok = false;
            checks.push(CheckLine::fail(
                "alpha-conjugation",
                "alpha acts as complex conjugation under the chosen root",
                "embed(alpha(x)) lies in a disk disjoint from conj(embed(x))",
            ));
        }
        Err(e) => return Err(Abort::core(&e)),
    }
    Ok(ok)
}

/// Builds the algebra and involution after a quiet validate pass.
fn build_involution(l: &Loaded) -> Result<Involution, Abort> {
    let cocycle = build_cocycle(&l.desc, &l.field).map_err(|e| Abort::input(e.to_string()))?;
    let alg = Algebra::new(l.tower.clone(), cocycle).map_err(|e| Abort::core(&e))?;
    build_tau(&alg).map_err(|e| Abort::core(&e))
}

fn cmd_validate(l: &Loaded) -> Result<CommandReport, Abort> {
    let mut checks = Vec::new();
    let ok = run_validate(l, &mut checks)?;
    Ok(CommandReport {
        command: "validate".to_owned(),
        input: String::new(),
        checks,
        notes: Vec::new(),
        exit_code: if ok { 0 } else { 1 },
    })
}

fn cmd_involution(l: &Loaded) -> Result<CommandReport, Abort> {
    let mut checks = Vec::new();
    if !run_validate(l, &mut checks)? {
        return Ok(CommandReport {
            command: "involution".to_owned(),
            input: String::new(),
            checks,
            notes: vec!["validation failed; involution not attempted".to_owned()],
            exit_code: 1,
        });
    }
    checks.clear();
    let tau = build_involution(l)?;
    let mut notes = Vec::new();
    for (i, img) in tau.gen_images.iter().enumerate() {
        notes.push(format!(
            "tau(e_{}) = {}",
            tau.alg.tower.g_names[i],
            alg_elem_string(img)
        ));
    }
    let vr = validate_involution(&tau);
    for r in &vr.checks {
        checks.push(CheckLine::from_theorem(r));
    }
    let ok = vr.passed();
    if ok {
        match symmetric_basis(&tau) {
            Ok(sym) => notes.push(format!("dim Sym(B, tau) = {}", sym.len())),
            Err(e) => return Err(Abort::core(&e)),
        }
    }
    Ok(CommandReport {
        command: "involution".to_owned(),
        input: String::new(),
        checks,
        notes,
        exit_code: if ok { 0 } else { 1 },
    })
}

fn cmd_positivity(l: &Loaded, method: Method) -> Result<CommandReport, Abort> {
    let mut checks = Vec::new();
    if !run_validate(l, &mut checks)? {
        return Ok(CommandReport {
            command: "positivity".to_owned(),
            input: String::new(),
            checks,
            notes: vec!["validation failed; positivity not attempted".to_owned()],
            exit_code: 1,
        });
    }
    checks.clear();
    let tau = build_involution(l)?;
    let vr = validate_involution(&tau);
    if !vr.passed() {
        for r in &vr.checks {
            checks.push(CheckLine::from_theorem(r));
        }
        return Ok(CommandReport {
            command: "positivity".to_owned(),
            input: String::new(),
            checks,
            notes: vec!["involution axioms fail; positivity not attempted".to_owned()],
            exit_code: 1,
        });
    }
    let mut ctx = embedding(l)?;
    let mut notes = Vec::new();
    let mut trace_pos = None;
    let mut transport_pos = None;
    if matches!(method, Method::TraceForm | Method::Both) {
        let gram = trace_form_gram(&tau).map_err(|e| Abort::core(&e))?;
        let def = definiteness(&gram, &mut ctx, l.max_bits).map_err(|e| Abort::core(&e))?;
        let pos = def.kind == DefKind::PosDef;
        trace_pos = Some(pos);
        let detail = format!(
            "trace form is {:?}, signature {}",
            def.kind,
            signature_string(def.signature)
        );
        if pos {
            checks.push(CheckLine::pass("trace-form", detail));
        } else {
            checks.push(CheckLine::fail(
                "trace-form",
                detail,
                format!("signature {}", signature_string(def.signature)),
            ));
        }
    }
    if matches!(method, Method::Transport | Method::Both) {
        let pos = transport_positive(&tau, &mut ctx, l.max_bits).map_err(|e| Abort::core(&e))?;
        transport_pos = Some(pos);
        let tm = transport_hermitian(&tau).map_err(|e| Abort::core(&e))?;
        let def = transport_definiteness(&tm, &mut ctx, l.max_bits).map_err(|e| Abort::core(&e))?;
        let detail = format!(
            "transport matrix is {:?}; d = {}",
            def.kind,
            nf_elem_string(&tau.alg.tower.d)
        );
        if pos {
            checks.push(CheckLine::pass("transport", detail));
        } else {
            checks.push(CheckLine::fail(
                "transport",
                detail,
                format!("transport definiteness {:?} with d = {}", def.kind, nf_elem_string(&tau.alg.tower.d)),
            ));
        }
    }
    if let (Some(a), Some(b)) = (trace_pos, transport_pos) {
        if a != b {
            return Err(Abort {
                code: 4,
                message: format!(
                    "method disagreement: trace form says {a}, transport says {b}"
                ),
            });
        }
        notes.push("both methods agree".to_owned());
    }
    let positive = trace_pos.or(transport_pos).unwrap_or(false);
    Ok(CommandReport {
        command: "positivity".to_owned(),
        input: String::new(),
        checks,
        notes,
        exit_code: if positive { 0 } else { 1 },
    })
}

fn cmd_theorems(l: &Loaded) -> Result<CommandReport, Abort> {
    let mut checks = Vec::new();
    if !run_validate(l, &mut checks)? {
        return Ok(CommandReport {
            command: "theorems".to_owned(),
            input: String::new(),
            checks,
            notes: vec!["validation failed; theorem checks not attempted".to_owned()],
            exit_code: 1,
        });
    }
    checks.clear();
    let cocycle = build_cocycle(&l.desc, &l.field).map_err(|e| Abort::input(e.to_string()))?;
    let alg = Algebra::new(l.tower.clone(), cocycle).map_err(|e| Abort::core(&e))?;
    let mut ctx = embedding(l)?;
    let reports = vec![
        lemma21_check(&alg.tower),
        prop22_check(&alg, &mut ctx, l.max_bits),
        prop23_check(&alg, &mut ctx, l.max_bits),
        cor24_check(&alg, &mut ctx, l.max_bits),
        iff_check(&alg, &mut ctx, l.max_bits),
    ];
    let mut violated = false;
    for r in &reports {
        if r.status == CheckStatus::Fail {
            violated = true;
        }
        checks.push(CheckLine::from_theorem(r));
    }
    Ok(CommandReport {
        command: "theorems".to_owned(),
        input: String::new(),
        checks,
        notes: Vec::new(),
        exit_code: if violated { 1 } else { 0 },
    })
}

#[derive(serde::Serialize)]
struct CodebookExport {
    strategy: &'static str,
    seed: u64,
    height_bound: i64,
    size: usize,
    fully_diverse: bool,
    diversity_product_low: String,
    diversity_product_high: String,
    /// Codewords as left coefficients over the e_sigma basis; each
    /// coefficient is a constant-first array of rational strings.
    codewords: Vec<Vec<Vec<String>>>,
    /// Certified complex matrices: entries are (re, im, radius) decimal
    /// triples from the regular representation.
    matrices: Vec<Vec<Vec<(String, String, String)>>>,
}

#[allow(clippy::too_many_arguments)]
fn cmd_codebook(
    l: &Loaded,
    strategy: StrategyArg,
    size: usize,
    height: i64,
    seed: u64,
    out: Option<&Path>,
    force: bool,
) -> Result<CommandReport, Abort> {
    let mut checks = Vec::new();
    let mut notes = Vec::new();
    if !run_validate(l, &mut checks)? {
        return Ok(CommandReport {
            command: "codebook".to_owned(),
            input: String::new(),
            checks,
            notes: vec!["validation failed; codebook not attempted".to_owned()],
            exit_code: 1,
        });
    }
    checks.clear();
    let tau = build_involution(l)?;
    let mut ctx = embedding(l)?;
    let positive = validate_involution(&tau).passed()
        && divcode_core::positivity::is_positive(&tau, &mut ctx, l.max_bits)
            .map_err(|e| Abort::core(&e))?;
    if !positive {
        if force {
            notes.push("positivity precondition fails; continuing under --force".to_owned());
        } else {
            return Ok(CommandReport {
                command: "codebook".to_owned(),
                input: String::new(),
                checks: vec![CheckLine::fail(
                    "positivity-precondition",
                    "involution must be positive before codebook generation",
                    "run positivity for details, or pass --force",
                )],
                notes,
                exit_code: 1,
            });
        }
    }
    let cb = codebook::generate(&tau, strategy.to_core(), size, height, seed)
        .map_err(|e| Abort::core(&e))?;
    checks.push(CheckLine::pass(
        "generation",
        format!("{} unitary codewords, tau(u) u = 1 exactly", cb.codewords.len()),
    ));
    let div = codebook::diversity(&cb, &ctx).map_err(|e| Abort::core(&e))?;
    let div_detail = format!(
        "diversity product in [{}, {}]",
        rat_to_decimal(&div.product_low, 12),
        rat_to_decimal(&div.product_high, 12)
    );
    if div.fully_diverse {
        checks.push(CheckLine::pass("diversity", div_detail));
    } else {
        let (i, j) = div.witness.unwrap_or((0, 0));
        checks.push(CheckLine::fail(
            "diversity",
            div_detail,
            format!(
                "det(lambda(X_{i} - X_{j})) = 0 for codewords {} and {}",
                alg_elem_string(&cb.codewords[i]),
                alg_elem_string(&cb.codewords[j])
            ),
        ));
    }
    let mats = codebook::to_matrices(&cb, &mut ctx, l.max_bits).map_err(|e| Abort::core(&e))?;
    checks.push(CheckLine::pass(
        "matrices",
        format!(
            "{} certified complex matrices, residual below 2^-{}",
            mats.len(),
            l.bits / 2
        ),
    ));
    if let Some(path) = out {
        let export = CodebookExport {
            strategy: cb.strategy.name(),
            seed: cb.seed,
            height_bound: cb.height_bound,
            size: cb.codewords.len(),
            fully_diverse: div.fully_diverse,
            diversity_product_low: rat_to_string(&div.product_low),
            diversity_product_high: rat_to_string(&div.product_high),
            codewords: cb
                .codewords
                .iter()
                .map(|u| {
                    u.coeffs
                        .iter()
                        .map(|c| c.coeffs.iter().map(rat_to_string).collect())
                        .collect()
                })
                .collect(),
            matrices: mats
                .iter()
                .map(|m| {
                    (0..m.rows)
                        .map(|r| {
                            (0..m.cols)
                                .map(|c| {
                                    let d = m.at(r, c);
                                    (
                                        rat_to_decimal(&d.center.re, 20),
                                        rat_to_decimal(&d.center.im, 20),
                                        rat_to_decimal(&d.radius, 20),
                                    )
                                })
                                .collect()
                        })
                        .collect()
                })
                .collect(),
        };
        let text = serde_json::to_string_pretty(&export)
            .map_err(|e| Abort::input(format!("serialize codebook: {e}")))?;
        std::fs::write(path, text)
            .map_err(|e| Abort::input(format!("cannot write {}: {e}", path.display())))?;
        notes.push(format!("codebook written to {}", path.display()));
    }
    Ok(CommandReport {
        command: "codebook".to_owned(),
        input: String::new(),
        checks,
        notes,
        exit_code: if div.fully_diverse { 0 } else { 1 },
    })
}

fn run(cli: Cli) -> Result<CommandReport, Abort> {
    let path = match &cli.command {
        Command::Validate { file }
        | Command::Involution { file }
        | Command::Theorems { file } => file.clone(),
        Command::Positivity { file, .. } => file.clone(),
        Command::Codebook { file, .. } => file.clone(),
    };
    let l = load_instance(&path, cli.precision_bits, cli.max_precision_bits)?;
    let mut report = match &cli.command {
        Command::Validate { .. } => cmd_validate(&l)?,
        Command::Involution { .. } => cmd_involution(&l)?,
        Command::Positivity { method, .. } => cmd_positivity(&l, *method)?,
        Command::Theorems { .. } => cmd_theorems(&l)?,
        Command::Codebook {
            strategy,
            size,
            height,
            seed,
            out,
            force,
            ..
        } => cmd_codebook(&l, *strategy, *size, *height, *seed, out.as_deref(), *force)?,
    };
    report.input = path.display().to_string();
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let fmt = cli.report;
    match run(cli) {
        Ok(report) => {
            let code = report.exit_code;
            emit(&report, fmt);
            ExitCode::from(code as u8)
        }
        Err(abort) => {
            eprintln!("error: {}", abort.message);
            ExitCode::from(abort.code as u8)
        }
    }
}

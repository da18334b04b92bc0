//! The `regdil` command line: load files, run one check, print a report and
//! exit with 0 (pass), 1 (condition fails), 2 (input error) or 3 (resource cap).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::dilation::{
    build_gram, check_regular_dilation, construct_dilation, dilation_doubly_commuting, dilation_nica,
    product_formula_check, rank_profile, verify_comp_identities, verify_dilation, Coordinates, Tolerances,
};
use crate::error::{Error, Result};
use crate::fock::{character_set, nica_check_fock, oracle_residual, vn_margin, NicaOutcome, TruncatedFock};
use crate::gradedspace::{MultiIndex, ProductSystem, Subset, TwistFamily, DEFAULT_CAP};
use crate::io::{read_polynomial, read_representation, read_system, RepresentationFile};
use crate::linalg::{c, random_gaussian, spectral_norm, CMatrix, C64, ZERO};
use crate::representation::{consdc_suite, random_cc, Representation};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "regdil",
    version,
    about = "Regular isometric dilations of product-system representations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Truncation box, e.g. `2,2` (default 2 in every direction).
    #[arg(long = "box", global = true, value_name = "N1,N2,...")]
    pub bound: Option<String>,
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol_psd: f64,
    /// Residual tolerance (default 1e-8; 1e-10 for comp-identities).
    #[arg(long, global = true)]
    pub tol_res: Option<f64>,
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub null_cut: f64,
    #[arg(long, global = true, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Cap on flattened dimensions.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Product system file; defaults to the untwisted system.
    #[arg(long, global = true)]
    pub system: Option<PathBuf>,
    #[arg(long, global = true)]
    pub rep: Option<PathBuf>,
    #[arg(long, global = true)]
    pub poly: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Contractivity and twisted commutation.
    Validate,
    /// Brehmer defects and condition (D).
    Brehmer,
    /// Double commutation, its consequences and the product formula.
    Dcheck,
    /// Construct and verify the truncated regular isometric dilation.
    Dilate {
        #[arg(long, value_enum, default_value_t = CoordArg::Spectral)]
        coordinates: CoordArg,
        /// Also report per-grade frame and Gram ranks.
        #[arg(long)]
        rank_profile: bool,
    },
    /// `R = S*DS`, `SL = I`, `D = L*RL` on the box.
    CompIdentities,
    /// Truncated Fock creation operators: Toeplitz, commutation, Nica, and the
    /// closed-form weights for scalar systems.
    Fock,
    /// Von Neumann margin of a polynomial against truncated creation operators.
    Vn {
        /// Largest cube side `N` in the sweep `1..=N`.
        #[arg(long, default_value_t = 4)]
        max_n: usize,
    },
    /// Is `t` a character of the scalar-twist algebra?
    Chars {
        /// Coordinates `re,im`, one per generator.
        #[arg(long = "t", value_name = "RE,IM", num_args = 1.., allow_hyphen_values = true)]
        t: Vec<String>,
    },
    /// Randomized search for representations failing condition (D).
    Search {
        #[arg(long, value_enum, default_value_t = Family::Commuting)]
        family: Family,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        h: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CoordArg {
    Spectral,
    Rotated,
    Factored,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `h = 1` points for a random scalar system.
    Scalar,
    /// Untwisted commuting tuples, polynomials in one matrix.
    Commuting,
    /// Generic valid representations of random twisted systems.
    Twisted,
}

/// A finished command: exit code plus report in both renderings.
pub struct Outcome {
    pub code: i32,
    pub text: String,
    pub json: Value,
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::ResourceCap { .. } => EXIT_CAP,
        Error::Precondition(_) | Error::Inconsistent(_) => EXIT_FAIL,
        _ => EXIT_INPUT,
    }
}

/// Parses arguments, runs the command and writes the report. Returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("regdil: {e}");
            return exit_code(&e);
        }
    };
    let rendered = match cli.common.format {
        Format::Text => outcome.text,
        Format::Json => serde_json::to_string_pretty(&outcome.json).expect("report serializes") + "\n",
    };
    match &cli.common.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered) {
                eprintln!("regdil: {e}");
                return EXIT_INPUT;
            }
        }
        None => print!("{rendered}"),
    }
    outcome.code
}

fn parse_bound(spec: Option<&str>, k: usize) -> Result<MultiIndex> {
    let Some(spec) = spec else {
        return Ok(MultiIndex::splat(k, 2));
    };
    let entries: std::result::Result<Vec<i64>, _> = spec.split(',').map(|s| s.trim().parse::<i64>()).collect();
    let entries = entries.map_err(|_| Error::Schema(format!("--box \"{spec}\" is not a list of integers")))?;
    if entries.len() != k {
        return Err(Error::Schema(format!("--box has {} entries, k = {k}", entries.len())));
    }
    if entries.iter().any(|&e| e < 0) {
        return Err(Error::Schema("--box entries must be ≥ 0".into()));
    }
    Ok(MultiIndex::new(entries))
}

fn check_common(common: &Common) -> Result<()> {
    let tol_res = common.tol_res.unwrap_or(1.0);
    if !(common.tol_psd > 0.0 && common.null_cut > 0.0 && tol_res > 0.0) {
        return Err(Error::Schema("tolerances must be positive".into()));
    }
    if common.cap == 0 {
        return Err(Error::Schema("--cap must be ≥ 1".into()));
    }
    Ok(())
}

fn load_system(common: &Common) -> Result<Option<ProductSystem>> {
    common.system.as_deref().map(read_system).transpose()
}

fn load_rep(common: &Common) -> Result<Representation> {
    let path = common
        .rep
        .as_deref()
        .ok_or_else(|| Error::Schema("this command needs --rep".into()))?;
    read_representation(path, load_system(common)?)
}

fn tolerances(common: &Common, default_res: f64) -> Tolerances {
    Tolerances {
        psd: common.tol_psd,
        residual: common.tol_res.unwrap_or(default_res),
        null_cut: common.null_cut,
    }
}

fn pass_word(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    let common = &cli.common;
    check_common(common)?;
    match &cli.command {
        Command::Validate => cmd_validate(common),
        Command::Brehmer => cmd_brehmer(common),
        Command::Dcheck => cmd_dcheck(common),
        Command::Dilate {
            coordinates,
            rank_profile,
        } => cmd_dilate(common, *coordinates, *rank_profile),
        Command::CompIdentities => cmd_comp(common),
        Command::Fock => cmd_fock(common),
        Command::Vn { max_n } => cmd_vn(common, *max_n),
        Command::Chars { t } => cmd_chars(common, t),
        Command::Search { family, k, h } => cmd_search(common, *family, *k, *h),
    }
}

fn cmd_validate(common: &Common) -> Result<Outcome> {
    let rep = load_rep(common)?;
    let report = rep.validate();
    let mut text = format!("validate: {}\n", pass_word(report.valid));
    for (i, n) in report.norms.iter().enumerate() {
        let _ = writeln!(text, "  ‖T̃({})‖ = {n:.6}", i + 1);
    }
    for p in &report.commutation {
        let _ = writeln!(text, "  commutation ({},{}) residual {:.3e}", p.i, p.j, p.residual);
    }
    Ok(Outcome {
        code: if report.valid { EXIT_PASS } else { EXIT_FAIL },
        text,
        json: serde_json::to_value(&report)?,
    })
}

fn cmd_brehmer(common: &Common) -> Result<Outcome> {
    let rep = load_rep(common)?;
    let cert = check_regular_dilation(&rep, common.tol_psd)?;
    Ok(Outcome {
        code: if cert.holds { EXIT_PASS } else { EXIT_FAIL },
        text: cert.to_string(),
        json: serde_json::to_value(&cert)?,
    })
}

fn cmd_dcheck(common: &Common) -> Result<Outcome> {
    let rep = load_rep(common)?;
    let bound = parse_bound(common.bound.as_deref(), rep.k())?;
    let dc = rep.is_doubly_commuting();
    let mut text = format!(
        "doubly commuting: {} (max residual {:.3e})\n",
        dc.doubly_commuting, dc.max_residual
    );
    let mut json = json!({ "doubly_commuting": dc });
    if dc.doubly_commuting {
        let consdc = consdc_suite(&rep, &bound)?;
        let mut formula = Vec::new();
        for v in Subset::all(rep.k()).filter(|v| !v.is_empty()) {
            formula.push(product_formula_check(&rep, v)?);
        }
        let worst = formula.iter().map(|f| f.residual.max(f.commutator)).fold(0.0, f64::max);
        let _ = writeln!(
            text,
            "  consequences (i)-(iv): max residual {:.3e} over {} cases",
            consdc.max(),
            consdc.cases
        );
        let _ = writeln!(text, "  product formula: max residual {worst:.3e}");
        json["consequences"] = serde_json::to_value(&consdc)?;
        json["product_formula"] = serde_json::to_value(&formula)?;
    }
    Ok(Outcome {
        code: if dc.doubly_commuting { EXIT_PASS } else { EXIT_FAIL },
        text,
        json,
    })
}

fn cmd_dilate(common: &Common, coords: CoordArg, want_profile: bool) -> Result<Outcome> {
    let rep = load_rep(common)?;
    let bound = parse_bound(common.bound.as_deref(), rep.k())?;
    let tol = tolerances(common, 1e-8);
    let cert = check_regular_dilation(&rep, tol.psd)?;
    if !cert.holds {
        return Ok(Outcome {
            code: EXIT_FAIL,
            text: format!("dilate: refused\n{cert}"),
            json: json!({ "certificate": cert, "dilation": Value::Null }),
        });
    }
    let coordinates = match coords {
        CoordArg::Spectral => Coordinates::Spectral,
        CoordArg::Rotated => Coordinates::Rotated(common.seed),
        CoordArg::Factored => Coordinates::Factored,
    };
    let dil = construct_dilation(&rep, &bound, coordinates, &tol, common.cap)?;
    let comp = verify_comp_identities(&build_gram(&rep, &bound, common.cap)?);
    let report = verify_dilation(&rep, &dil, tol.residual)?;
    let profile = if want_profile {
        Some(rank_profile(&rep, &dil)?)
    } else {
        None
    };
    let mut json = json!({
        "certificate": cert,
        "comp_identities": comp,
        "dilation": report,
    });
    let mut text = format!(
        "dilate: {} box {} kdim {} max residual {:.3e}\n",
        pass_word(report.passed),
        bound,
        report.kdim,
        report.max_residual()
    );
    let _ = writeln!(text, "  W*W - I            {:.3e}", report.w_isometry);
    for (i, (iso, co)) in report.interior_isometry.iter().zip(&report.coinvariance).enumerate() {
        let _ = writeln!(
            text,
            "  generator {}: interior isometry {iso:.3e}, V*W - WT* {co:.3e}",
            i + 1
        );
    }
    let _ = writeln!(
        text,
        "  compressions T(n)  {:.3e} over {} n",
        report.max_symbol_residual,
        report.symbols.len()
    );
    let _ = writeln!(text, "  Gram of frames     {:.3e}", report.isom);
    let _ = writeln!(text, "  Gram identities    {:.3e}", comp.max());
    if report.ambiguous_eigenvalues > 0 {
        let _ = writeln!(
            text,
            "  warning: {} eigenvalues within one decade below the null cut",
            report.ambiguous_eigenvalues
        );
    }
    if rep.is_doubly_commuting().doubly_commuting {
        let dc = dilation_doubly_commuting(&rep, &dil);
        let _ = writeln!(text, "  dilation doubly commuting residual {:.3e}", dc.max_residual);
        json["dilation_doubly_commuting"] = serde_json::to_value(&dc)?;
        let k = rep.k();
        let mut nica = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                let outcome = dilation_nica(&dil, &MultiIndex::unit(k, i), &MultiIndex::unit(k, j))?;
                let _ = writeln!(text, "  dilation Nica (e{}, e{}) {}", i + 1, j + 1, describe(&outcome));
                nica.push(json!({ "i": i + 1, "j": j + 1, "outcome": outcome }));
            }
        }
        json["dilation_nica"] = Value::Array(nica);
    }
    if let Some(p) = &profile {
        for g in p {
            let _ = writeln!(
                text,
                "  rank {:?}: frame {} cumulative {} gram {}",
                g.grade, g.frame_rank, g.cumulative_frame_rank, g.cumulative_gram_rank
            );
        }
        json["rank_profile"] = serde_json::to_value(p)?;
    }
    Ok(Outcome {
        code: if report.passed { EXIT_PASS } else { EXIT_FAIL },
        text,
        json,
    })
}

fn describe(outcome: &NicaOutcome) -> String {
    match outcome {
        NicaOutcome::Residual(r) => format!("residual {r:.3e}"),
        NicaOutcome::Inconclusive => "inconclusive (empty admissible domain)".into(),
    }
}

fn cmd_comp(common: &Common) -> Result<Outcome> {
    let rep = load_rep(common)?;
    let bound = parse_bound(common.bound.as_deref(), rep.k())?;
    let tol = common.tol_res.unwrap_or(1e-10);
    let res = verify_comp_identities(&build_gram(&rep, &bound, common.cap)?);
    let ok = res.max() <= tol;
    let text = format!(
        "comp-identities: {} box {bound}\n  ‖R - S*DS‖ {:.3e}\n  ‖SL - I‖   {:.3e}\n  ‖D - L*RL‖ {:.3e}\n",
        pass_word(ok),
        res.r_vs_sds,
        res.sl_vs_i,
        res.d_vs_lrl
    );
    Ok(Outcome {
        code: if ok { EXIT_PASS } else { EXIT_FAIL },
        text,
        json: json!({ "box": bound.entries(), "tol": tol, "residuals": res, "passed": ok }),
    })
}

fn cmd_fock(common: &Common) -> Result<Outcome> {
    let system = load_system(common)?.ok_or_else(|| Error::Schema("fock needs --system".into()))?;
    let k = system.k();
    let bound = parse_bound(common.bound.as_deref(), k)?;
    let tol = common.tol_res.unwrap_or(1e-8);
    let fock = TruncatedFock::with_multiplicity(&system, &bound, 1, common.cap)?;
    let toeplitz = fock.toeplitz_residual();
    let rep = fock.as_representation(&vec![1.0; k])?;
    let commutation = rep
        .validate()
        .commutation
        .iter()
        .map(|p| p.residual)
        .fold(0.0, f64::max);
    let mut nica = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            let outcome = nica_check_fock(&fock, &MultiIndex::unit(k, i), &MultiIndex::unit(k, j))?;
            nica.push(json!({ "i": i + 1, "j": j + 1, "outcome": outcome }));
        }
    }
    let nica_ok = nica.iter().all(|v| match v["outcome"]["status"].as_str() {
        Some("residual") => v["outcome"]["residual"].as_f64().unwrap_or(f64::INFINITY) <= tol,
        _ => true,
    });
    let oracle = match system.lambda() {
        Some(lambda) => Some(oracle_residual(&fock, &lambda)?),
        None => None,
    };
    let ok = toeplitz <= 1e-12 && commutation <= 1e-12 && nica_ok && oracle.is_none_or(|r| r <= 1e-12);
    let mut text = format!("fock: {} box {bound} dim {}\n", pass_word(ok), fock.dim());
    let _ = writeln!(text, "  Toeplitz residual      {toeplitz:.3e}");
    let _ = writeln!(text, "  commutation residual   {commutation:.3e}");
    for i in 0..k {
        for j in i + 1..k {
            let outcome = nica_check_fock(&fock, &MultiIndex::unit(k, i), &MultiIndex::unit(k, j))?;
            let _ = writeln!(text, "  Nica (e{}, e{})          {}", i + 1, j + 1, describe(&outcome));
        }
    }
    if let Some(r) = oracle {
        let _ = writeln!(text, "  closed-form weights    {r:.3e}");
    }
    Ok(Outcome {
        code: if ok { EXIT_PASS } else { EXIT_FAIL },
        text,
        json: json!({
            "box": bound.entries(),
            "dim": fock.dim(),
            "toeplitz": toeplitz,
            "commutation": commutation,
            "nica": nica,
            "oracle": oracle,
            "passed": ok,
        }),
    })
}

fn cmd_vn(common: &Common, max_n: usize) -> Result<Outcome> {
    let rep = load_rep(common)?;
    let poly_path = common
        .poly
        .as_deref()
        .ok_or_else(|| Error::Schema("vn needs --poly".into()))?;
    let poly = read_polynomial(poly_path)?;
    let tol = common.tol_res.unwrap_or(1e-8);
    let report = vn_margin(&rep, &poly, max_n)?;
    let dc = rep.is_doubly_commuting();
    let ok = report.margin >= -tol && report.monotone;
    let mut text = format!("vn: {} margin {:+.6e}\n", pass_word(ok), report.margin);
    let _ = writeln!(text, "  ‖p(T)‖ = {:.12}", report.norm_t);
    for (n, s) in report.norm_s_by_n.iter().enumerate() {
        let _ = writeln!(text, "  ‖p(S)‖ on cube {} = {s:.12}", n + 1);
    }
    let _ = writeln!(text, "  monotone: {}", report.monotone);
    if !dc.doubly_commuting {
        let _ = writeln!(
            text,
            "  note: representation is not doubly commuting; the inequality is not guaranteed"
        );
    }
    Ok(Outcome {
        code: if ok { EXIT_PASS } else { EXIT_FAIL },
        text,
        json: json!({
            "poly": crate::io::PolynomialFile::from_polynomial(&poly),
            "norm_T": report.norm_t,
            "norm_S_by_N": report.norm_s_by_n,
            "margin": report.margin,
            "monotone": report.monotone,
            "doubly_commuting": dc.doubly_commuting,
        }),
    })
}

fn parse_complex(s: &str) -> Result<C64> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let vals: Vec<f64> = parts.iter().filter_map(|p| p.parse().ok()).collect();
    match vals[..] {
        [re] if parts.len() == 1 => Ok(c(re, 0.0)),
        [re, im] if parts.len() == 2 => Ok(c(re, im)),
        _ => Err(Error::Schema(format!("\"{s}\" is not RE or RE,IM"))),
    }
}

fn cmd_chars(common: &Common, t: &[String]) -> Result<Outcome> {
    let system = load_system(common)?.ok_or_else(|| Error::Schema("chars needs --system".into()))?;
    let lambda = system
        .lambda()
        .ok_or_else(|| Error::Schema("chars needs a scalar system (all dims 1)".into()))?;
    let point: Vec<C64> = t.iter().map(|s| parse_complex(s)).collect::<Result<_>>()?;
    let verdict = character_set(&lambda, &point)?;
    let mut text = format!("chars: {}\n", if verdict.accepted { "accepted" } else { "rejected" });
    for v in &verdict.violations {
        let _ = writeln!(text, "  {v:?}");
    }
    for (i, j) in &verdict.near_boundary {
        let _ = writeln!(text, "  warning: λ({i},{j}) is within 1e-8 of 1");
    }
    Ok(Outcome {
        code: if verdict.accepted { EXIT_PASS } else { EXIT_FAIL },
        text,
        json: serde_json::to_value(&verdict)?,
    })
}

#[derive(Debug, Serialize)]
struct SearchInstance {
    trial: usize,
    min_eigenvalue: f64,
    representation: RepresentationFile,
}

/// Largest number of instances stored per category.
const STORED_INSTANCES: usize = 10;

fn sample(rng: &mut ChaCha8Rng, family: Family, k: usize, h: usize) -> Result<Representation> {
    match family {
        Family::Scalar => {
            let sys = ProductSystem::random_scalar(rng, k, None)?;
            let lambda = sys.lambda().expect("scalar system");
            let keep = rng.random_range(0..k);
            let t: Vec<C64> = (0..k)
                .map(|i| {
                    let free = (0..k).all(|j| j == i || (lambda[(i, j)] - c(1.0, 0.0)).norm() <= 1e-12);
                    if i == keep || free {
                        C64::from_polar(rng.random::<f64>().sqrt(), rng.random_range(0.0..std::f64::consts::TAU))
                    } else {
                        ZERO
                    }
                })
                .collect();
            crate::representation::scalar_tuple(&lambda, &t)
        }
        Family::Commuting => {
            let sys = ProductSystem::untwisted(vec![1; k])?;
            let a = if rng.random_bool(0.25) {
                let mut n = CMatrix::zeros(h, h);
                for r in 0..h.saturating_sub(1) {
                    n[(r, r + 1)] = c(1.0, 0.0);
                }
                n
            } else {
                let g = random_gaussian(rng, h, h);
                g.scale(1.0 / spectral_norm(&g).max(1e-300))
            };
            let nilpotent = a
                .iter()
                .enumerate()
                .all(|(idx, z)| idx % (h + 1) != 0 || z.norm() == 0.0);
            let blocks: Vec<Vec<CMatrix>> = (0..k)
                .map(|_| {
                    let coef = random_gaussian(rng, 1, 2);
                    let mut m = &a * coef[(0, 1)];
                    if !nilpotent {
                        m += CMatrix::identity(h, h) * coef[(0, 0)];
                    }
                    let target: f64 = rng.random_range(0.5..=1.0);
                    let norm = spectral_norm(&m);
                    vec![if norm > 0.0 { m.scale(target / norm) } else { m }]
                })
                .collect();
            Representation::new(sys, h, blocks)
        }
        Family::Twisted => {
            let dims: Vec<usize> = (0..k).map(|_| rng.random_range(1..=2)).collect();
            let family = [
                TwistFamily::Diagonal,
                TwistFamily::Permutation,
                TwistFamily::DenseUnitary,
            ][rng.random_range(0..3)];
            let sys = ProductSystem::random(rng, dims, family)?;
            random_cc(rng, &sys, h)
        }
    }
}

fn cmd_search(common: &Common, family: Family, k: usize, h: usize) -> Result<Outcome> {
    if common.trials == 0 {
        return Err(Error::Schema("--trials must be ≥ 1".into()));
    }
    if k == 0 || h == 0 {
        return Err(Error::Schema("--k and --h must be ≥ 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(common.seed);
    let (mut valid, mut dc, mut cond, mut sampled) = (0usize, 0usize, 0usize, 0usize);
    let mut violations = Vec::new();
    let mut counterexamples = Vec::new();
    let mut counterexample_count = 0usize;
    for trial in 0..common.trials {
        let rep = match sample(&mut rng, family, k, h) {
            Ok(r) => r,
            Err(Error::Precondition(_)) => continue,
            Err(e) => return Err(e),
        };
        sampled += 1;
        if !rep.validate().valid {
            continue;
        }
        valid += 1;
        let is_dc = rep.is_doubly_commuting().doubly_commuting;
        let cert = check_regular_dilation(&rep, common.tol_psd)?;
        dc += is_dc as usize;
        cond += cert.holds as usize;
        let instance = || SearchInstance {
            trial,
            min_eigenvalue: cert.min_eigenvalue(),
            representation: RepresentationFile::from_representation(&rep),
        };
        if is_dc && !cert.holds {
            violations.push(instance());
        } else if !cert.holds {
            counterexample_count += 1;
            if counterexamples.len() < STORED_INSTANCES {
                counterexamples.push(instance());
            }
        }
    }
    let mut text = format!(
        "search: {} trials, family {:?}, k={k}, h={h}, seed {}\n",
        common.trials, family, common.seed
    );
    let _ = writeln!(
        text,
        "  sampled {sampled}, valid {valid}, doubly commuting {dc}, condition (D) {cond}"
    );
    let _ = writeln!(
        text,
        "  expected counterexamples (condition fails): {counterexample_count}"
    );
    let _ = writeln!(
        text,
        "  THEOREM-VIOLATION (doubly commuting, condition fails): {}",
        violations.len()
    );
    if let Some(first) = counterexamples.first() {
        let _ = writeln!(
            text,
            "  first counterexample: trial {} min eig {:+.6e}",
            first.trial, first.min_eigenvalue
        );
    }
    Ok(Outcome {
        code: if violations.is_empty() { EXIT_PASS } else { EXIT_FAIL },
        text,
        json: json!({
            "family": family,
            "k": k,
            "h": h,
            "seed": common.seed,
            "trials": common.trials,
            "sampled": sampled,
            "valid": valid,
            "doubly_commuting": dc,
            "condition_d": cond,
            "counterexample_count": counterexample_count,
            "counterexamples": counterexamples,
            "theorem_violations": violations,
        }),
    })
}

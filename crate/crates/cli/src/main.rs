//! Command-line analyzer for twisted-conjugacy counting sequences and
//! their zeta functions.
//!
//! Exit codes: 0 success, 2 malformed input document, 3 violated
//! mathematical precondition, 4 intermediate integers exceeded
//! `TWISTED_ZETA_MAX_BITS`.

mod doc;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use twisted_zeta::congruence::gauss_check;
use twisted_zeta::exactmath::numtheory::divisors;
use twisted_zeta::fgab::{
    lefschetz_zeta, reidemeister_zeta, sigma_r_p, torsion_tau, verify_functional_equation,
    FgAbEndo, FgAbGroup, TorsionTau, ZetaKind,
};
use twisted_zeta::grouporacle::{twisted_classes, AbelianCharEndo, FiniteGroupEndo};
use twisted_zeta::guard;
use twisted_zeta::orbitzeta::{
    fixed_count, orbit_decomposition, periodic_extension, periodic_product_formula,
    zeta_from_orbits, FiniteMap,
};
use twisted_zeta::solenoid::{
    boundary_expansion, classify, periodic_sequence, zeta_series, DichotomyVerdict, SolenoidError,
    SolenoidSpec,
};

use report::{
    int_str, poly_display, rat_str, ratfun_display, series_coeffs, CongruenceJson,
    ExpansionFactorJson, ExpansionJson, PolyFractionJson, VerdictJson,
};

#[derive(Parser)]
#[command(
    name = "twisted-zeta",
    about = "Exact Reidemeister-type zeta functions of group endomorphisms",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Length of the counting-sequence table [default: 12].
    #[arg(long = "n-max", global = true)]
    n_max: Option<u64>,
    /// Truncation order for power series [default: 24].
    #[arg(long, global = true)]
    order: Option<u64>,
    /// Nesting depth of the boundary expansion [default: 2].
    #[arg(long, global = true)]
    depth: Option<u64>,
    /// Certified decimal digits for torsion values [default: 30].
    #[arg(long, global = true)]
    digits: Option<u32>,
    /// Report rendering [default: text].
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

/// Effective options: command-line flags override document options, which
/// override the defaults.
struct Params {
    n_max: u64,
    order: u64,
    depth: u64,
    digits: u32,
    format: Format,
}

impl Params {
    fn resolve(cli: &Cli, doc: &doc::DocOptions) -> Result<Self, CliError> {
        let doc_format = match doc.format.as_deref() {
            None => None,
            Some("text") => Some(Format::Text),
            Some("json") => Some(Format::Json),
            Some(other) => {
                return Err(CliError::Schema(format!(
                    "document format must be text or json, got {other:?}"
                )))
            }
        };
        Ok(Self {
            n_max: cli.n_max.or(doc.n_max).unwrap_or(12),
            order: cli.order.or(doc.order).unwrap_or(24),
            depth: cli.depth.or(doc.depth).unwrap_or(2),
            digits: cli.digits.or(doc.digits).unwrap_or(30),
            format: cli.format.or(doc_format).unwrap_or(Format::Text),
        })
    }

    fn from_flags(cli: &Cli) -> Self {
        Self::resolve(cli, &doc::DocOptions::default()).expect("no document format")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Endomorphism of a finitely generated abelian group.
    AnalyzeFgab { file: PathBuf },
    /// Multiplication endomorphism of an S-integer module Z[1/S0].
    AnalyzeSolenoid { file: PathBuf },
    /// Finite group with endomorphism: twisted classes vs fixed characters.
    AnalyzeGroup { file: PathBuf },
    /// Explicit finite self-map: orbits, zeta function, product formula.
    AnalyzeMap { file: PathBuf },
    /// Divisibility congruences of an integer counting sequence.
    CheckCongruence { file: PathBuf },
}

#[derive(Debug)]
enum CliError {
    Schema(String),
    Math(String),
    Bits(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Schema(_) => 2,
            CliError::Math(_) => 3,
            CliError::Bits(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Schema(m) | CliError::Math(m) | CliError::Bits(m) => m,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_guard().and_then(|()| run(&cli)) {
        Ok(rendered) => {
            println!("{rendered}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn configure_guard() -> Result<(), CliError> {
    match std::env::var("TWISTED_ZETA_MAX_BITS") {
        Err(_) => Ok(()),
        Ok(raw) => {
            let cap: u64 = raw.trim().parse().map_err(|_| {
                CliError::Schema(format!("TWISTED_ZETA_MAX_BITS is not a number: {raw:?}"))
            })?;
            guard::set_max_bits(if cap == 0 { None } else { Some(cap) });
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<String, CliError> {
    // keep the default panic report for real bugs, silence the cap payload
    let previous = std::panic::take_hook();
    std::panic::set_hook(Box::new(move |info| {
        if info
            .payload()
            .downcast_ref::<guard::BitsExceeded>()
            .is_none()
        {
            previous(info);
        }
    }));
    let result = guard::trap(std::panic::AssertUnwindSafe(|| dispatch(cli)));
    let _ = std::panic::take_hook();
    match result {
        Ok(inner) => inner,
        Err(b) => Err(CliError::Bits(format!(
            "intermediate integer of {} bits exceeds TWISTED_ZETA_MAX_BITS = {}",
            b.bits, b.cap
        ))),
    }
}

fn read_json(path: &Path) -> Result<serde_json::Value, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Schema(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Schema(format!("invalid JSON in {}: {e}", path.display())))
}

fn from_value<T: serde::de::DeserializeOwned>(value: serde_json::Value) -> Result<T, CliError> {
    serde_json::from_value(value).map_err(|e| CliError::Schema(format!("invalid document: {e}")))
}

const OPTION_KEYS: [&str; 6] = ["N", "n_max", "order", "depth", "digits", "format"];

/// Reject unknown top-level keys with a precise message.
fn check_keys(value: &serde_json::Value, allowed: &[&str]) -> Result<(), CliError> {
    let serde_json::Value::Object(map) = value else {
        return Err(CliError::Schema("document must be a JSON object".into()));
    };
    for key in map.keys() {
        if !allowed.contains(&key.as_str()) && !OPTION_KEYS.contains(&key.as_str()) {
            return Err(CliError::Schema(format!("unknown document field {key:?}")));
        }
    }
    Ok(())
}

fn dispatch(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::AnalyzeSolenoid { file } => analyze_solenoid(cli, file),
        Command::AnalyzeFgab { file } => analyze_fgab(cli, file),
        Command::AnalyzeGroup { file } => analyze_group(cli, file),
        Command::AnalyzeMap { file } => analyze_map(cli, file),
        Command::CheckCongruence { file } => check_congruence(cli, file),
    }
}

fn to_json<T: serde::Serialize>(report: &T) -> String {
    serde_json::to_string_pretty(report).expect("report serializes")
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

fn analyze_solenoid(cli: &Cli, file: &Path) -> Result<String, CliError> {
    let raw = read_json(file)?;
    check_keys(&raw, &["kind", "s0", "xi"])?;
    let doc: doc::SolenoidDoc = from_value(raw)?;
    let (primes, xi) = doc.validate().map_err(CliError::Schema)?;
    let cli = &Params::resolve(cli, &doc.options)?;
    let spec = SolenoidSpec::new(primes, xi).map_err(|e| CliError::Math(e.to_string()))?;
    let sequence = periodic_sequence(&spec, cli.n_max);
    let verdict = classify(&spec);
    let series = zeta_series(&spec, cli.order);
    let congruence = gauss_check(&sequence);
    let (verdict_json, closed_form) = match &verdict {
        DichotomyVerdict::Rational { closed } => (
            VerdictJson {
                tag: "RATIONAL".into(),
                witnesses: vec![],
                boundary_radius: None,
                note: "coefficient generating function is rational".into(),
            },
            Some(PolyFractionJson::of(closed)),
        ),
        DichotomyVerdict::NaturalBoundary { witnesses, radius } => (
            VerdictJson {
                tag: "NATURAL_BOUNDARY".into(),
                witnesses: witnesses.iter().map(|p| p.to_string()).collect(),
                boundary_radius: Some(rat_str(radius)),
                note: "boundary by Theorem criterion".into(),
            },
            None,
        ),
    };
    let (expansion, expansion_note) = match &verdict {
        DichotomyVerdict::Rational { .. } => (
            None,
            Some("rational branch: no boundary to expand".to_string()),
        ),
        DichotomyVerdict::NaturalBoundary { .. } => {
            match boundary_expansion(&spec, cli.depth, cli.order) {
                Ok(e) => (
                    Some(ExpansionJson {
                        witness: e.witness,
                        multiplicative_order: e.multiplicative_order,
                        base_valuation: e.base_valuation,
                        depth: e.depth,
                        matched_order: e.matched_order,
                        factors: e
                            .factors
                            .iter()
                            .map(|f| ExpansionFactorJson {
                                numerator: report::poly_coeffs(f.base.numerator()),
                                denominator: report::poly_coeffs(f.base.denominator()),
                                exponent: rat_str(&f.exponent),
                            })
                            .collect(),
                        residual: series_coeffs(&e.residual),
                    }),
                    None,
                ),
                Err(
                    e @ (SolenoidError::ExpansionNeedsSingleWitness { .. }
                    | SolenoidError::ExpansionWitnessTwoUnsupported),
                ) => (None, Some(e.to_string())),
                Err(e) => return Err(CliError::Math(e.to_string())),
            }
        }
    };
    let rep = report::SolenoidReport {
        kind: "solenoid",
        s0: spec.inverted_primes().to_vec(),
        xi: rat_str(spec.xi()),
        sequence: sequence.iter().map(int_str).collect(),
        verdict: verdict_json,
        closed_form,
        series: series_coeffs(&series),
        congruence: CongruenceJson::of(&congruence),
        expansion,
        expansion_note,
    };
    if cli.format == Format::Json {
        return Ok(to_json(&rep));
    }
    let mut out = Vec::new();
    out.push("kind: solenoid".to_string());
    out.push(format!(
        "module: Z[1/{{{}}}], multiplier xi = {}",
        rep.s0
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(","),
        rep.xi
    ));
    out.push(format!("F(1..{}): {}", cli.n_max, rep.sequence.join(" ")));
    match &verdict {
        DichotomyVerdict::Rational { closed } => {
            out.push("verdict: RATIONAL".to_string());
            out.push(format!("closed form: {}", ratfun_display(closed)));
        }
        DichotomyVerdict::NaturalBoundary { witnesses, radius } => {
            out.push(format!(
                "verdict: NATURAL_BOUNDARY (boundary by Theorem criterion), witnesses {{{}}}, radius {}",
                witnesses.iter().map(u64::to_string).collect::<Vec<_>>().join(","),
                rat_str(radius)
            ));
        }
    }
    out.push(format!(
        "zeta series c0..c{}: {}",
        cli.order,
        rep.series.join(" ")
    ));
    out.push(rep.congruence.text_line());
    if let Some(e) = &rep.expansion {
        out.push(format!(
            "expansion: witness {}, order {}, depth {}, series match through z^{}",
            e.witness, e.multiplicative_order, e.depth, e.matched_order
        ));
        for f in &e.factors {
            let num = twisted_zeta::exactmath::poly::IntPoly::new(
                f.numerator.iter().map(|s| s.parse().unwrap()).collect(),
            );
            let den = twisted_zeta::exactmath::poly::IntPoly::new(
                f.denominator.iter().map(|s| s.parse().unwrap()).collect(),
            );
            let (num, den) = report::display_pair(&num, &den);
            out.push(format!(
                "  [({}) / ({})]^({})",
                poly_display(&num),
                poly_display(&den),
                f.exponent
            ));
        }
    } else if let Some(note) = &rep.expansion_note {
        out.push(format!("expansion: skipped ({note})"));
    }
    Ok(out.join("\n"))
}

fn analyze_fgab(cli: &Cli, file: &Path) -> Result<String, CliError> {
    let raw = read_json(file)?;
    check_keys(
        &raw,
        &["kind", "rank", "a", "torsion", "b", "c", "tau_angles"],
    )?;
    let doc: doc::FgabDoc = from_value(raw)?;
    let input = doc.validate().map_err(CliError::Schema)?;
    let cli = &Params::resolve(cli, &doc.options)?;
    let group = FgAbGroup::new(input.rank, input.torsion.clone())
        .map_err(|e| CliError::Math(e.to_string()))?;
    let endo = FgAbEndo::new(group, input.a.clone(), input.b, input.c)
        .map_err(|e| CliError::Math(e.to_string()))?;
    let window = cli.n_max.max(cli.order);
    let zeta = reidemeister_zeta(&endo, window).map_err(|e| CliError::Math(e.to_string()))?;
    let sequence = twisted_zeta::fgab::reidemeister_sequence(&endo, cli.n_max)
        .finite_values()
        .expect("zeta exists, so every count is finite");
    let series = zeta.series.truncate(cli.order as usize);
    let congruence = gauss_check(&sequence);
    let torsion_free = endo.group().torsion_rank() == 0;
    let eigenvalue_data = if torsion_free && input.rank > 0 {
        let (sigma, r, p) =
            sigma_r_p(endo.free_block()).map_err(|e| CliError::Math(e.to_string()))?;
        Some(report::SigmaJson {
            sigma,
            expanding: r,
            expanding_negative: p,
        })
    } else {
        None
    };
    let (zeta_form, closed_form, product_factors, certificate) = match &zeta.closed {
        Some((closed, ZetaKind::LefschetzClosed { .. })) => {
            ("lefschetz", Some(PolyFractionJson::of(closed)), None, None)
        }
        Some((closed, ZetaKind::ProductClosed { factors })) => (
            "product",
            Some(PolyFractionJson::of(closed)),
            Some(
                factors
                    .iter()
                    .map(|(w, c)| report::ProductFactorJson {
                        ratio: int_str(w),
                        multiplicity: int_str(c),
                    })
                    .collect::<Vec<_>>(),
            ),
            None,
        ),
        None => match &zeta.certificate {
            Some(rec) => (
                "certificate",
                None,
                None,
                Some(report::CertificateJson {
                    order: rec.order(),
                    coefficients: rec.coefficients().iter().map(rat_str).collect(),
                    seeds: rec.seeds().iter().map(rat_str).collect(),
                }),
            ),
            None => ("series-only", None, None, None),
        },
    };
    // functional equation: stated for the torsion-free closed form with
    // nonzero degree d = det(A)
    let (functional_equation, functional_equation_note) =
        if let (Some((closed, ZetaKind::LefschetzClosed { .. })), Some(sig)) =
            (&zeta.closed, &eigenvalue_data)
        {
            let d = input.a.determinant().expect("square");
            if d.is_zero() {
                (
                    None,
                    Some("degree det(A) = 0: functional equation not stated".to_string()),
                )
            } else {
                let fe = verify_functional_equation(closed, &d, input.rank, sig.expanding)
                    .map_err(|e| CliError::Math(e.to_string()))?;
                (
                    Some(report::FunctionalEquationJson {
                        degree: int_str(&d),
                        dual_dimension: input.rank,
                        expanding: sig.expanding,
                        quotient_constant: rat_str(&fe.quotient_constant),
                        epsilon: rat_str(&fe.epsilon),
                    }),
                    None,
                )
            }
        } else {
            (
                None,
                Some("functional equation verified only for torsion-free closed forms".to_string()),
            )
        };
    // torsion values against the alternating product of the dual map
    let torsion_tau_rows = if torsion_free && input.rank > 0 {
        let l = lefschetz_zeta(endo.free_block());
        for angle in &input.tau_angles {
            let denom = angle.denom().magnitude();
            if denom > &num_bigint::BigUint::from(1_000_000u64) {
                return Err(CliError::Math(format!(
                    "holonomy angle {} has order beyond 10^6: the root-of-unity order must stay tabulable",
                    rat_str(angle)
                )));
            }
        }
        input
            .tau_angles
            .iter()
            .map(|angle| {
                let (value, digits) = match torsion_tau(&l, angle, cli.digits) {
                    TorsionTau::Value(v) => (v.to_decimal_string(), Some(cli.digits)),
                    TorsionTau::Pole => ("POLE".to_string(), None),
                    TorsionTau::ZeroDivisor => ("ZERO_DIVISOR".to_string(), None),
                };
                report::TorsionJson {
                    angle: rat_str(angle),
                    value,
                    digits,
                }
            })
            .collect()
    } else {
        Vec::new()
    };
    let rep = report::FgabReport {
        kind: "fgab",
        rank: input.rank,
        torsion: input.torsion.iter().map(int_str).collect(),
        sequence: sequence.iter().map(int_str).collect(),
        series: series_coeffs(&series),
        zeta_form,
        closed_form,
        product_factors,
        certificate,
        eigenvalue_data,
        functional_equation,
        functional_equation_note,
        congruence: CongruenceJson::of(&congruence),
        torsion_tau: torsion_tau_rows,
    };
    if cli.format == Format::Json {
        return Ok(to_json(&rep));
    }
    let mut out = Vec::new();
    out.push("kind: fgab".to_string());
    out.push(format!(
        "group: Z^{} + {}",
        rep.rank,
        if rep.torsion.is_empty() {
            "0".to_string()
        } else {
            rep.torsion
                .iter()
                .map(|n| format!("Z/{n}"))
                .collect::<Vec<_>>()
                .join(" + ")
        }
    ));
    out.push(format!("R(1..{}): {}", cli.n_max, rep.sequence.join(" ")));
    out.push(format!(
        "zeta series c0..c{}: {}",
        cli.order,
        rep.series.join(" ")
    ));
    match &zeta.closed {
        Some((closed, _)) => out.push(format!(
            "closed form [{}]: {}",
            rep.zeta_form,
            ratfun_display(closed)
        )),
        None => out.push(format!("closed form: none ({})", rep.zeta_form)),
    }
    if let Some(sig) = &rep.eigenvalue_data {
        out.push(format!(
            "eigenvalue data: sigma = {}, r = {}, p = {}",
            sig.sigma, sig.expanding, sig.expanding_negative
        ));
    }
    if let Some(fe) = &rep.functional_equation {
        out.push(format!(
            "functional equation: quotient constant {}, epsilon = {}",
            fe.quotient_constant, fe.epsilon
        ));
    } else if let Some(note) = &rep.functional_equation_note {
        out.push(format!("functional equation: skipped ({note})"));
    }
    for t in &rep.torsion_tau {
        out.push(format!("torsion tau at angle {}: {}", t.angle, t.value));
    }
    out.push(rep.congruence.text_line());
    Ok(out.join("\n"))
}

fn analyze_group(cli: &Cli, file: &Path) -> Result<String, CliError> {
    let raw = read_json(file)?;
    check_keys(&raw, &["kind", "invariants", "matrix", "table", "endo"])?;
    let doc: doc::GroupDoc = from_value(raw)?;
    let input = doc.validate().map_err(CliError::Schema)?;
    let cli = &Params::resolve(cli, &doc.options)?;
    let rep = match input {
        doc::GroupInput::Abelian { invariants, matrix } => {
            let a = AbelianCharEndo::new(invariants, matrix)
                .map_err(|e| CliError::Math(e.to_string()))?;
            let rows = twisted_zeta::grouporacle::tbft_check(&a, cli.n_max)
                .map_err(|e| CliError::Math(e.to_string()))?;
            let sequence: Vec<String> = rows.iter().map(|r| int_str(&r.twisted)).collect();
            let congruence =
                gauss_check(&rows.iter().map(|r| r.twisted.clone()).collect::<Vec<_>>());
            let all_equal = rows.iter().all(|r| r.agree());
            report::GroupReport {
                kind: "group",
                flavor: "abelian",
                order: int_str(&a.order()),
                sequence,
                tbft: Some(
                    rows.iter()
                        .map(|r| report::TbftRowJson {
                            n: r.n,
                            twisted: int_str(&r.twisted),
                            fixed_characters: int_str(&r.fixed_chars),
                            equal: r.agree(),
                        })
                        .collect(),
                ),
                tbft_all_equal: Some(all_equal),
                congruence: CongruenceJson::of(&congruence),
            }
        }
        doc::GroupInput::Cayley { table, endo } => {
            let g = FiniteGroupEndo::new(table, endo).map_err(|e| CliError::Math(e.to_string()))?;
            let seq: Vec<BigInt> = (1..=cli.n_max).map(|n| twisted_classes(&g, n)).collect();
            let congruence = gauss_check(&seq);
            report::GroupReport {
                kind: "group",
                flavor: "cayley",
                order: g.order().to_string(),
                sequence: seq.iter().map(int_str).collect(),
                tbft: None,
                tbft_all_equal: None,
                congruence: CongruenceJson::of(&congruence),
            }
        }
    };
    if cli.format == Format::Json {
        return Ok(to_json(&rep));
    }
    let mut out = Vec::new();
    out.push(format!("kind: group ({})", rep.flavor));
    out.push(format!("order: {}", rep.order));
    out.push(format!("R(1..{}): {}", cli.n_max, rep.sequence.join(" ")));
    if let Some(rows) = &rep.tbft {
        out.push("n | twisted classes | fixed characters | equal".to_string());
        for r in rows {
            out.push(format!(
                "{} | {} | {} | {}",
                r.n, r.twisted, r.fixed_characters, r.equal
            ));
        }
        out.push(format!(
            "coincidence: {}",
            if rep.tbft_all_equal == Some(true) {
                "R = RT at every iterate"
            } else {
                "MISMATCH"
            }
        ));
    }
    out.push(rep.congruence.text_line());
    Ok(out.join("\n"))
}

fn analyze_map(cli: &Cli, file: &Path) -> Result<String, CliError> {
    let raw = read_json(file)?;
    check_keys(&raw, &["kind", "successor"])?;
    let doc: doc::MapDoc = from_value(raw)?;
    let successor = doc.validate().map_err(CliError::Schema)?;
    let cli = &Params::resolve(cli, &doc.options)?;
    let map = FiniteMap::new(successor).map_err(|e| CliError::Math(e.to_string()))?;
    let dec = orbit_decomposition(&map);
    let zeta = zeta_from_orbits(&map);
    let sequence: Vec<BigInt> = (1..=cli.n_max)
        .map(|n| BigInt::from(fixed_count(&map, n)))
        .collect();
    let congruence = gauss_check(&sequence);
    let (periodic_product, periodic_product_note) = if map.is_permutation() && map.size() > 0 {
        let period = dec.cycle_lengths.iter().fold(1u64, |acc, &l| {
            let l = l as u64;
            acc / gcd_u64(acc, l) * l
        });
        if period > 1_000_000 {
            (
                None,
                Some(format!("permutation order {period} too large to tabulate")),
            )
        } else {
            let values: Vec<(u64, BigInt)> = divisors(period)
                .into_iter()
                .map(|d| (d, BigInt::from(fixed_count(&map, d))))
                .collect();
            let product = periodic_product_formula(&values, period)
                .map_err(|e| CliError::Math(e.to_string()))?;
            // the formal product must reproduce the exponential series
            let extension = periodic_extension(&values, period, cli.order);
            let series = twisted_zeta::exactmath::series::exp_zeta_series_int(&extension);
            assert_eq!(
                product.product.series(cli.order as usize),
                series,
                "product formula must match the exponential series"
            );
            (
                Some(report::PeriodicProductJson {
                    period,
                    layer_counts: product
                        .layer_counts
                        .iter()
                        .map(|(d, p)| (*d, int_str(p)))
                        .collect(),
                    factors: product
                        .product
                        .factors
                        .iter()
                        .map(|(d, e)| report::FormalFactorJson {
                            d: *d,
                            exponent: rat_str(e),
                        })
                        .collect(),
                    warnings: product.warnings.clone(),
                    series_match_order: cli.order,
                }),
                None,
            )
        }
    } else {
        (
            None,
            Some("not a permutation: no periodic product".to_string()),
        )
    };
    let rep = report::MapReport {
        kind: "map",
        size: map.size(),
        orbit: report::OrbitJson {
            cycle_lengths: dec.cycle_lengths.clone(),
            transient_points: dec.transient_points,
            orbit_count: dec.orbit_count(),
            periodic_points: dec.periodic_points(),
        },
        sequence: sequence.iter().map(int_str).collect(),
        zeta: PolyFractionJson::of(&zeta.zeta),
        reciprocal_identity: "verified",
        periodic_product,
        periodic_product_note,
        congruence: CongruenceJson::of(&congruence),
    };
    if cli.format == Format::Json {
        return Ok(to_json(&rep));
    }
    let mut out = Vec::new();
    out.push("kind: map".to_string());
    out.push(format!(
        "orbits: cycle lengths {:?}, {} transient points",
        rep.orbit.cycle_lengths, rep.orbit.transient_points
    ));
    out.push(format!("Z(1..{}): {}", cli.n_max, rep.sequence.join(" ")));
    out.push(format!("zeta: {}", ratfun_display(&zeta.zeta)));
    out.push(format!(
        "reciprocal identity: Z(1/z) = (-1)^{} z^{} Z(z) verified",
        rep.orbit.orbit_count, rep.orbit.periodic_points
    ));
    if let Some(p) = &rep.periodic_product {
        out.push(format!("periodic product (period {}):", p.period));
        for f in &p.factors {
            out.push(format!("  (1 - z^{})^({})", f.d, f.exponent));
        }
        if !p.warnings.is_empty() {
            out.push(format!("  warnings at divisors {:?}", p.warnings));
        }
    } else if let Some(note) = &rep.periodic_product_note {
        out.push(format!("periodic product: skipped ({note})"));
    }
    out.push(rep.congruence.text_line());
    Ok(out.join("\n"))
}

fn check_congruence(cli: &Cli, file: &Path) -> Result<String, CliError> {
    let cli = &Params::from_flags(cli);
    let raw = read_json(file)?;
    let seq = doc::parse_sequence_document(&raw).map_err(CliError::Schema)?;
    if seq.is_empty() {
        return Err(CliError::Schema("sequence document is empty".into()));
    }
    if seq.iter().any(|v| !v.is_positive()) {
        // still analyzable: the congruences are defined for any integers
        eprintln!(
            "note: sequence has non-positive entries; a genuine counting sequence is positive"
        );
    }
    let congruence = gauss_check(&seq);
    let rep = report::SequenceReport {
        kind: "sequence",
        sequence: seq.iter().map(int_str).collect(),
        congruence: CongruenceJson::of(&congruence),
    };
    if cli.format == Format::Json {
        return Ok(to_json(&rep));
    }
    let mut out = Vec::new();
    out.push("kind: sequence".to_string());
    out.push(format!("a(1..{}): {}", seq.len(), rep.sequence.join(" ")));
    for e in &rep.congruence.entries {
        out.push(format!(
            "n = {}: mobius sum {} residue {} {}",
            e.n,
            e.mobius_sum,
            e.residue,
            if e.pass {
                format!(
                    "PASS (orbits {})",
                    e.orbit_count.clone().unwrap_or_default()
                )
            } else {
                "FAIL".to_string()
            }
        ));
    }
    out.push(rep.congruence.text_line());
    Ok(out.join("\n"))
}

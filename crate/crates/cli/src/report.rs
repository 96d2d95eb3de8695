//! Report structures and their two renderings. The machine-readable form
//! is JSON with every big integer as a decimal string and every rational as
//! "num/den" (plain decimal when the denominator is 1); polynomials are
//! ascending coefficient arrays. Field order is fixed by the structs, so
//! identical inputs produce byte-identical reports.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use twisted_zeta::congruence::CongruenceReport;
use twisted_zeta::exactmath::poly::{IntPoly, RationalFunctionQ};
use twisted_zeta::exactmath::series::TruncatedSeriesQ;

pub fn int_str(v: &BigInt) -> String {
    v.to_string()
}

pub fn rat_str(v: &BigRational) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

pub fn poly_coeffs(p: &IntPoly) -> Vec<String> {
    if p.is_zero() {
        return vec!["0".into()];
    }
    p.coeffs().iter().map(int_str).collect()
}

pub fn series_coeffs(s: &TruncatedSeriesQ) -> Vec<String> {
    s.coeffs().iter().map(rat_str).collect()
}

/// Human form of a polynomial, lowest degree first.
pub fn poly_display(p: &IntPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let sign = if c.is_negative() { "-" } else { "+" };
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        let coeff_part = if mag.is_one() && i > 0 {
            String::new()
        } else {
            mag.to_string()
        };
        let var_part = match i {
            0 => String::new(),
            1 => "z".into(),
            _ => format!("z^{i}"),
        };
        out.push_str(&coeff_part);
        out.push_str(&var_part);
    }
    out
}

pub fn ratfun_display(f: &RationalFunctionQ) -> String {
    let (num, den) = display_pair(f.numerator(), f.denominator());
    format!("({}) / ({})", poly_display(&num), poly_display(&den))
}

/// The canonical storage pins the sign at the denominator's leading
/// coefficient; for humans, pin it at the lowest-degree coefficient
/// instead, so geometric factors read `(1 - z)/(1 - 2z)`.
pub fn display_pair(num: &IntPoly, den: &IntPoly) -> (IntPoly, IntPoly) {
    let lowest = den.coeffs().iter().find(|c| !c.is_zero());
    if lowest.is_some_and(Signed::is_negative) {
        (num.neg(), den.neg())
    } else {
        (num.clone(), den.clone())
    }
}

#[derive(Serialize)]
pub struct PolyFractionJson {
    pub numerator: Vec<String>,
    pub denominator: Vec<String>,
}

impl PolyFractionJson {
    pub fn of(f: &RationalFunctionQ) -> Self {
        Self {
            numerator: poly_coeffs(f.numerator()),
            denominator: poly_coeffs(f.denominator()),
        }
    }
}

#[derive(Serialize)]
pub struct CongruenceEntryJson {
    pub n: u64,
    pub mobius_sum: String,
    pub residue: String,
    pub orbit_count: Option<String>,
    pub pass: bool,
}

#[derive(Serialize)]
pub struct CongruenceJson {
    pub all_pass: bool,
    pub orbit_counts_nonnegative: bool,
    pub entries: Vec<CongruenceEntryJson>,
}

impl CongruenceJson {
    pub fn of(report: &CongruenceReport) -> Self {
        Self {
            all_pass: report.all_pass(),
            orbit_counts_nonnegative: report.orbit_counts_nonnegative(),
            entries: report
                .entries
                .iter()
                .map(|e| CongruenceEntryJson {
                    n: e.n,
                    mobius_sum: int_str(&e.mobius_sum),
                    residue: int_str(&e.residue),
                    orbit_count: e.orbit_count.as_ref().map(int_str),
                    pass: e.pass,
                })
                .collect(),
        }
    }

    pub fn text_line(&self) -> String {
        if self.all_pass {
            let sign = if self.orbit_counts_nonnegative {
                "orbit counts nonnegative"
            } else {
                "some orbit counts negative"
            };
            format!("congruence: PASS ({sign})")
        } else {
            let first = self
                .entries
                .iter()
                .find(|e| !e.pass)
                .map(|e| e.n)
                .unwrap_or(0);
            format!("congruence: FAIL at n = {first}")
        }
    }
}

#[derive(Serialize)]
pub struct VerdictJson {
    pub tag: String,
    pub witnesses: Vec<String>,
    pub boundary_radius: Option<String>,
    pub note: String,
}

#[derive(Serialize)]
pub struct ExpansionFactorJson {
    pub numerator: Vec<String>,
    pub denominator: Vec<String>,
    pub exponent: String,
}

#[derive(Serialize)]
pub struct ExpansionJson {
    pub witness: u64,
    pub multiplicative_order: u64,
    pub base_valuation: u64,
    pub depth: u64,
    pub matched_order: usize,
    pub factors: Vec<ExpansionFactorJson>,
    pub residual: Vec<String>,
}

#[derive(Serialize)]
pub struct SolenoidReport {
    pub kind: &'static str,
    pub s0: Vec<u64>,
    pub xi: String,
    pub sequence: Vec<String>,
    pub verdict: VerdictJson,
    pub closed_form: Option<PolyFractionJson>,
    pub series: Vec<String>,
    pub congruence: CongruenceJson,
    pub expansion: Option<ExpansionJson>,
    pub expansion_note: Option<String>,
}

#[derive(Serialize)]
pub struct SigmaJson {
    pub sigma: i8,
    pub expanding: usize,
    pub expanding_negative: usize,
}

#[derive(Serialize)]
pub struct FunctionalEquationJson {
    pub degree: String,
    pub dual_dimension: usize,
    pub expanding: usize,
    pub quotient_constant: String,
    pub epsilon: String,
}

#[derive(Serialize)]
pub struct CertificateJson {
    pub order: usize,
    pub coefficients: Vec<String>,
    pub seeds: Vec<String>,
}

#[derive(Serialize)]
pub struct ProductFactorJson {
    pub ratio: String,
    pub multiplicity: String,
}

#[derive(Serialize)]
pub struct TorsionJson {
    pub angle: String,
    pub value: String,
    pub digits: Option<u32>,
}

#[derive(Serialize)]
pub struct FgabReport {
    pub kind: &'static str,
    pub rank: usize,
    pub torsion: Vec<String>,
    pub sequence: Vec<String>,
    pub series: Vec<String>,
    pub zeta_form: &'static str,
    pub closed_form: Option<PolyFractionJson>,
    pub product_factors: Option<Vec<ProductFactorJson>>,
    pub certificate: Option<CertificateJson>,
    pub eigenvalue_data: Option<SigmaJson>,
    pub functional_equation: Option<FunctionalEquationJson>,
    pub functional_equation_note: Option<String>,
    pub congruence: CongruenceJson,
    pub torsion_tau: Vec<TorsionJson>,
}

#[derive(Serialize)]
pub struct TbftRowJson {
    pub n: u64,
    pub twisted: String,
    pub fixed_characters: String,
    pub equal: bool,
}

#[derive(Serialize)]
pub struct GroupReport {
    pub kind: &'static str,
    pub flavor: &'static str,
    pub order: String,
    pub sequence: Vec<String>,
    pub tbft: Option<Vec<TbftRowJson>>,
    pub tbft_all_equal: Option<bool>,
    pub congruence: CongruenceJson,
}

#[derive(Serialize)]
pub struct OrbitJson {
    pub cycle_lengths: Vec<usize>,
    pub transient_points: usize,
    pub orbit_count: usize,
    pub periodic_points: usize,
}

#[derive(Serialize)]
pub struct FormalFactorJson {
    pub d: u64,
    pub exponent: String,
}

#[derive(Serialize)]
pub struct PeriodicProductJson {
    pub period: u64,
    pub layer_counts: Vec<(u64, String)>,
    pub factors: Vec<FormalFactorJson>,
    pub warnings: Vec<u64>,
    pub series_match_order: u64,
}

#[derive(Serialize)]
pub struct MapReport {
    pub kind: &'static str,
    pub size: usize,
    pub orbit: OrbitJson,
    pub sequence: Vec<String>,
    pub zeta: PolyFractionJson,
    pub reciprocal_identity: &'static str,
    pub periodic_product: Option<PeriodicProductJson>,
    pub periodic_product_note: Option<String>,
    pub congruence: CongruenceJson,
}

#[derive(Serialize)]
pub struct SequenceReport {
    pub kind: &'static str,
    pub sequence: Vec<String>,
    pub congruence: CongruenceJson,
}

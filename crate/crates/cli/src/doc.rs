//! Input document schemas. All integers may be given as JSON numbers or as
//! decimal strings; strings are the lossless form for values beyond 2^53.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Deserialize;

use twisted_zeta::exactmath::matrix::IntMatrix;

/// Integer that arrives either as a JSON number or as a decimal string.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Int(i64),
    Str(String),
}

impl Num {
    pub fn to_bigint(&self) -> Result<BigInt, String> {
        match self {
            Num::Int(v) => Ok(BigInt::from(*v)),
            Num::Str(s) => s
                .trim()
                .parse::<BigInt>()
                .map_err(|_| format!("not a decimal integer: {s:?}")),
        }
    }

    pub fn to_u64(&self) -> Result<u64, String> {
        let b = self.to_bigint()?;
        u64::try_from(&b).map_err(|_| format!("expected a small nonnegative integer, got {b}"))
    }
}

/// Rational that arrives as "a/b", a decimal-integer string, or a number.
pub fn parse_rational(n: &Num) -> Result<BigRational, String> {
    match n {
        Num::Int(v) => Ok(BigRational::from(BigInt::from(*v))),
        Num::Str(s) => {
            let s = s.trim();
            if let Some((a, b)) = s.split_once('/') {
                let num: BigInt = a
                    .trim()
                    .parse()
                    .map_err(|_| format!("bad rational numerator in {s:?}"))?;
                let den: BigInt = b
                    .trim()
                    .parse()
                    .map_err(|_| format!("bad rational denominator in {s:?}"))?;
                if den.is_zero() {
                    return Err(format!("zero denominator in {s:?}"));
                }
                Ok(BigRational::new(num, den))
            } else {
                let v: BigInt = s.parse().map_err(|_| format!("not a rational: {s:?}"))?;
                Ok(BigRational::from(v))
            }
        }
    }
}

pub fn parse_matrix(rows: &[Vec<Num>], what: &str) -> Result<IntMatrix, String> {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|row| row.len() != c) {
        return Err(format!("{what}: rows have differing lengths"));
    }
    let mut entries = Vec::with_capacity(r * c);
    for row in rows {
        for n in row {
            entries.push(n.to_bigint().map_err(|e| format!("{what}: {e}"))?);
        }
    }
    IntMatrix::new(r, c, entries).map_err(|e| format!("{what}: {e}"))
}

/// Per-document analysis options; command-line flags take precedence.
#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DocOptions {
    #[serde(default, alias = "N")]
    pub n_max: Option<u64>,
    #[serde(default)]
    pub order: Option<u64>,
    #[serde(default)]
    pub depth: Option<u64>,
    #[serde(default)]
    pub digits: Option<u32>,
    #[serde(default)]
    pub format: Option<String>,
}

fn expect_kind(kind: &Option<String>, expected: &str) -> Result<(), String> {
    match kind {
        Some(k) if k != expected => Err(format!(
            "document kind {k:?} does not match the {expected} analyzer"
        )),
        _ => Ok(()),
    }
}

#[derive(Debug, Deserialize)]
pub struct SolenoidDoc {
    pub kind: Option<String>,
    pub s0: Vec<Num>,
    pub xi: Num,
    #[serde(flatten)]
    pub options: DocOptions,
}

impl SolenoidDoc {
    pub fn validate(&self) -> Result<(Vec<u64>, BigRational), String> {
        expect_kind(&self.kind, "solenoid")?;
        let primes = self
            .s0
            .iter()
            .map(Num::to_u64)
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| format!("s0: {e}"))?;
        let xi = parse_rational(&self.xi).map_err(|e| format!("xi: {e}"))?;
        Ok((primes, xi))
    }
}

#[derive(Debug, Deserialize)]
pub struct FgabDoc {
    pub kind: Option<String>,
    pub rank: usize,
    #[serde(default)]
    pub a: Vec<Vec<Num>>,
    #[serde(default)]
    pub torsion: Vec<Num>,
    #[serde(default)]
    pub b: Vec<Vec<Num>>,
    #[serde(default)]
    pub c: Vec<Vec<Num>>,
    /// Holonomy angles (fractions of a turn) for the torsion evaluation.
    #[serde(default)]
    pub tau_angles: Vec<Num>,
    #[serde(flatten)]
    pub options: DocOptions,
}

pub struct FgabInput {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
    pub a: IntMatrix,
    pub b: IntMatrix,
    pub c: IntMatrix,
    pub tau_angles: Vec<BigRational>,
}

impl FgabDoc {
    pub fn validate(&self) -> Result<FgabInput, String> {
        expect_kind(&self.kind, "fgab")?;
        let r = self.rank;
        let torsion = self
            .torsion
            .iter()
            .map(Num::to_bigint)
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| format!("torsion: {e}"))?;
        let s = torsion.len();
        let a = if self.a.is_empty() && r == 0 {
            IntMatrix::zero(0, 0)
        } else {
            parse_matrix(&self.a, "a")?
        };
        if a.rows() != r || a.cols() != r {
            return Err(format!("a must be {r}x{r}"));
        }
        let b = if self.b.is_empty() {
            IntMatrix::zero(s, r)
        } else {
            parse_matrix(&self.b, "b")?
        };
        let c = if self.c.is_empty() {
            IntMatrix::identity(s)
        } else {
            parse_matrix(&self.c, "c")?
        };
        let tau_angles = if self.tau_angles.is_empty() {
            vec![BigRational::new(BigInt::from(1), BigInt::from(2))]
        } else {
            self.tau_angles
                .iter()
                .map(parse_rational)
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| format!("tau_angles: {e}"))?
        };
        Ok(FgabInput {
            rank: r,
            torsion,
            a,
            b,
            c,
            tau_angles,
        })
    }
}

#[derive(Debug, Deserialize)]
pub struct GroupDoc {
    pub kind: Option<String>,
    /// Abelian form: invariant factors plus endomorphism matrix.
    #[serde(default)]
    pub invariants: Vec<Num>,
    #[serde(default)]
    pub matrix: Vec<Vec<Num>>,
    /// Cayley form: multiplication table plus endomorphism table.
    #[serde(default)]
    pub table: Vec<Vec<usize>>,
    #[serde(default)]
    pub endo: Vec<usize>,
    #[serde(flatten)]
    pub options: DocOptions,
}

pub enum GroupInput {
    Abelian {
        invariants: Vec<BigInt>,
        matrix: IntMatrix,
    },
    Cayley {
        table: Vec<Vec<usize>>,
        endo: Vec<usize>,
    },
}

impl GroupDoc {
    pub fn validate(&self) -> Result<GroupInput, String> {
        expect_kind(&self.kind, "group")?;
        let abelian = !self.invariants.is_empty() || !self.matrix.is_empty();
        let cayley = !self.table.is_empty();
        match (abelian, cayley) {
            (true, false) => {
                let invariants = self
                    .invariants
                    .iter()
                    .map(Num::to_bigint)
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| format!("invariants: {e}"))?;
                let matrix = if self.matrix.is_empty() {
                    IntMatrix::identity(invariants.len())
                } else {
                    parse_matrix(&self.matrix, "matrix")?
                };
                Ok(GroupInput::Abelian { invariants, matrix })
            }
            (false, true) => Ok(GroupInput::Cayley {
                table: self.table.clone(),
                endo: self.endo.clone(),
            }),
            (false, false) => {
                Err("group document needs either invariants/matrix or table/endo".into())
            }
            (true, true) => Err("group document mixes the abelian and Cayley forms".into()),
        }
    }
}

#[derive(Debug, Deserialize)]
pub struct MapDoc {
    pub kind: Option<String>,
    pub successor: Vec<usize>,
    #[serde(flatten)]
    pub options: DocOptions,
}

impl MapDoc {
    pub fn validate(&self) -> Result<Vec<usize>, String> {
        expect_kind(&self.kind, "map")?;
        Ok(self.successor.clone())
    }
}

/// Sequence documents: a bare array, `{"values": [...]}`, or any object
/// carrying a "sequence" array (so emitted reports can be re-ingested).
pub fn parse_sequence_document(raw: &serde_json::Value) -> Result<Vec<BigInt>, String> {
    let items: &Vec<serde_json::Value> = match raw {
        serde_json::Value::Array(items) => items,
        serde_json::Value::Object(map) => {
            let inner = map
                .get("values")
                .or_else(|| map.get("sequence"))
                .ok_or("sequence document needs a bare array or a values/sequence field")?;
            match inner {
                serde_json::Value::Array(items) => items,
                _ => return Err("values/sequence field must be an array".into()),
            }
        }
        _ => return Err("sequence document must be an array or an object".into()),
    };
    items
        .iter()
        .map(|v| match v {
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(BigInt::from)
                .ok_or_else(|| format!("non-integer sequence entry {n}")),
            serde_json::Value::String(s) => s
                .trim()
                .parse::<BigInt>()
                .map_err(|_| format!("not a decimal integer: {s:?}")),
            other => Err(format!("sequence entries must be integers, got {other}")),
        })
        .collect()
}

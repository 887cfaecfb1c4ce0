use std::collections::BTreeMap;

use clap::ValueEnum;
use num_rational::BigRational;
use regulab_core::divisors::{derive_equivalence, Chain};
use regulab_core::lfunctions::{discriminant, integral_model, minimal_model, table1_check, TABLE1};
use regulab_core::elliptic::WeierstrassCurve;
use regulab_core::mahler::{family_poly, mahler_quadratic_y, mahler_torus2};
use regulab_core::numerics::Tolerance;
use regulab_core::par::{self, Execution};
use regulab_core::periods::{change_of_variable_check, verify_period_identity, MapId, PeriodIdentity};
use regulab_core::regulator::{regulator_sample, steinberg_residual};
use regulab_core::report::CheckRecord;
use regulab_core::{Family, FamilySpec};
use serde_json::{json, Map, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] regulab_core::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use regulab_core::Error as E;
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Core(E::InvalidInput(_) | E::UnsupportedRegime { .. } | E::DegenerateFamily(_) | E::Degenerate(_)) => 2,
            CliError::Core(_) => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Jensen,
    Torus,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Jensen => "jensen",
            Method::Torus => "torus",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Bz1,
    Bz2,
    Lemma32,
    Sec42,
    Table1,
    Diamonds,
    Steinberg,
}

/// Shared run settings.
#[derive(Clone, Debug)]
pub struct Settings {
    pub tol: f64,
    pub exec: Execution,
    pub overrides: BTreeMap<u64, i64>,
}

/// What a command produced, before timing and formatting.
pub struct Outcome {
    pub params: Map<String, Value>,
    pub records: Vec<CheckRecord>,
    pub warnings: Vec<String>,
}

fn params(pairs: &[(&str, Value)]) -> Map<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn collect<T>(results: Vec<regulab_core::Result<T>>) -> CliResult<Vec<T>> {
    results.into_iter().map(|r| r.map_err(CliError::from)).collect()
}

fn quad_tol(tol: f64) -> Tolerance {
    Tolerance::absolute((tol * 1e-3).max(1e-13))
}

/// Parameter range where the family takes part in a proven identity.
fn identity_regime(family: Family, a: f64) -> Option<&'static str> {
    let inside = match family {
        Family::P | Family::S => (0.0..=4.0).contains(&a) || a < -1.0,
        Family::Q => a >= 4.0,
        Family::R => a >= 6.0,
    };
    if inside {
        None
    } else {
        Some(match family {
            Family::P | Family::S => "0 <= a <= 4 or a < -1",
            Family::Q => "a >= 4",
            Family::R => "a >= 6",
        })
    }
}

pub fn mahler(family: Family, points: &[f64], method: Method, s: &Settings) -> CliResult<Outcome> {
    let warnings = points
        .iter()
        .filter_map(|&a| {
            identity_regime(family, a)
                .map(|r| format!("{family}_{a} lies outside the identity regime ({r}); the measure is still computed"))
        })
        .collect();
    let tol = s.tol;
    let rows = par::map(points, s.exec, |&a| -> regulab_core::Result<CheckRecord> {
        let spec = FamilySpec::new(family, a);
        let p = family_poly(spec);
        let reference = mahler_quadratic_y(&p, quad_tol(tol * 1e-3))?;
        let value = match method {
            Method::Jensen => mahler_quadratic_y(&p, quad_tol(tol))?,
            Method::Torus => mahler_torus2(&p, Tolerance::absolute(tol * 0.1))?,
        };
        Ok(CheckRecord::absolute(format!("m({spec}) [{}]", method.name()), value, reference, tol))
    });
    Ok(Outcome {
        params: params(&[
            ("family", json!(family.to_string())),
            ("alpha", json!(points)),
            ("method", json!(method.name())),
            ("tol", json!(tol)),
        ]),
        records: collect(rows)?,
        warnings,
    })
}

fn measure(family: Family, a: f64, tol: f64) -> regulab_core::Result<f64> {
    mahler_quadratic_y(&family_poly(FamilySpec::new(family, a)), quad_tol(tol))
}

pub fn default_grid(target: Target) -> Option<&'static str> {
    match target {
        Target::Bz1 => Some("0.5:3.5:0.5"),
        Target::Bz2 => Some("4:10:1"),
        Target::Lemma32 => Some("0.5:7.5:0.5"),
        Target::Sec42 => Some("4:12:1"),
        Target::Steinberg => Some("1:3:2"),
        Target::Table1 | Target::Diamonds => None,
    }
}

fn require(ok: bool, what: &str, a: f64) -> CliResult<()> {
    if ok {
        Ok(())
    } else {
        Err(CliError::Usage(format!("grid point {a} is outside the regime of {what}")))
    }
}

pub fn verify(target: Target, points: &[f64], alpha: Option<i64>, s: &Settings) -> CliResult<Outcome> {
    let tol = s.tol;
    let mut p = params(&[("target", json!(format!("{target:?}").to_lowercase())), ("tol", json!(tol))]);
    if default_grid(target).is_some() {
        p.insert("grid".into(), json!(points));
    }
    let records = match target {
        Target::Bz1 => {
            for &a in points {
                require((0.0..=4.0).contains(&a) || a < -1.0, "bz1 (0 <= a <= 4 or a < -1)", a)?;
            }
            collect(par::map(points, s.exec, |&a| {
                let ms = measure(Family::S, a, tol)?;
                let mp = measure(Family::P, a, tol)?;
                let k = if a >= 0.0 { 2.0 } else { 1.0 };
                Ok(CheckRecord::absolute(format!("m(S_{a}) = {k} m(P_{a})"), ms, k * mp, tol))
            }))?
        }
        Target::Bz2 => {
            for &a in points {
                require(a >= 4.0, "bz2 (a >= 4)", a)?;
            }
            collect(par::map(points, s.exec, |&a| {
                let mq = measure(Family::Q, a, tol)?;
                let mr = measure(Family::R, a + 2.0, tol)?;
                Ok(CheckRecord::absolute(format!("m(Q_{a}) = m(R_{})", a + 2.0), mq, mr, tol))
            }))?
        }
        Target::Lemma32 => {
            let mut jobs = Vec::new();
            for &a in points {
                let id = if a > 0.0 && a < 8.0 {
                    PeriodIdentity::SmallParameter
                } else if a < -1.0 {
                    PeriodIdentity::NegativeParameter
                } else {
                    return Err(CliError::Usage(format!("grid point {a} is outside the regime of lemma32 (0 < a < 8 or a < -1)")));
                };
                jobs.push((Some(id), None, a));
                if a != 0.0 {
                    jobs.push((None, Some(MapId::Affine), a));
                }
                if a < -1.0 {
                    for m in [MapId::Involution, MapId::FirstSub, MapId::SecondSub, MapId::Isogeny, MapId::Rescaling] {
                        jobs.push((None, Some(m), a));
                    }
                }
            }
            collect(par::map(&jobs, s.exec, |&(id, map, a)| period_job(id, map, a, tol)))?
        }
        Target::Sec42 => {
            for &a in points {
                require(a >= 4.0, "sec42 (a >= 4)", a)?;
            }
            let jobs: Vec<_> = points
                .iter()
                .flat_map(|&a| [(Some(PeriodIdentity::QR), None, a), (None, Some(MapId::QR), a)])
                .collect();
            collect(par::map(&jobs, s.exec, |&(id, map, a)| period_job(id, map, a, tol)))?
        }
        Target::Table1 => {
            let rows: Vec<_> = TABLE1.iter().copied().filter(|r| alpha.is_none_or(|a| a == r.alpha)).collect();
            if rows.is_empty() {
                return Err(CliError::Usage(format!("no table row with alpha = {}", alpha.unwrap_or_default())));
            }
            if let Some(a) = alpha {
                p.insert("alpha".into(), json!(a));
            }
            if !s.overrides.is_empty() {
                p.insert("ap_overrides".into(), json!(s.overrides));
            }
            let checks = collect(par::map(&rows, s.exec, |&row| {
                let overrides = bad_prime_overrides(row.alpha, &s.overrides)?;
                table1_check(row, 200, &overrides, tol, Execution::Sequential)
            }))?;
            let signs: Map<String, Value> = checks.iter().map(|c| (c.row.alpha.to_string(), json!(c.epsilon))).collect();
            p.insert("root_numbers".into(), Value::Object(signs));
            checks.into_iter().map(|c| c.record).collect()
        }
        Target::Diamonds => {
            let mut out = Vec::new();
            for chain in [Chain::SFamily, Chain::QRFamily] {
                let r = derive_equivalence(chain)?;
                let tag = match chain {
                    Chain::SFamily => "S",
                    Chain::QRFamily => "QR",
                };
                for st in r.steps {
                    let note = if st.exact {
                        "exact".to_string()
                    } else {
                        format!("up to self-inverse {}", st.discrepancy)
                    };
                    // lhs: inexact-term count; residual: terms surviving in Z[E]^- (x) Q.
                    let inexact = if st.exact { 0.0 } else { st.discrepancy.matches('(').count() as f64 };
                    let residual = if st.rational { 0.0 } else { inexact.max(1.0) };
                    out.push(CheckRecord::with_residual(format!("{tag}: {} ({note})", st.name), inexact, 0.0, residual, 0.5));
                }
            }
            out
        }
        Target::Steinberg => {
            let jobs: Vec<_> = points.iter().flat_map(|&a| [(Chain::SFamily, a), (Chain::QRFamily, a)]).collect();
            collect(par::map(&jobs, s.exec, |&(c, a)| steinberg_residual(c, a, tol, quad_tol(tol * 1e-3))))?
        }
    };
    Ok(Outcome {
        params: p,
        records,
        warnings: Vec::new(),
    })
}

fn period_job(id: Option<PeriodIdentity>, map: Option<MapId>, a: f64, tol: f64) -> regulab_core::Result<CheckRecord> {
    match (id, map) {
        (Some(id), _) => {
            verify_period_identity(id, a, tol)
        }
        (None, Some(m)) => {
            let r = change_of_variable_check(m, a, tol)?;
            let residual = r.residual.max(r.endpoint_residual);
            Ok(CheckRecord::with_residual(format!("substitution {m} a={a}"), r.original, r.mapped, residual, tol))
        }
        (None, None) => unreachable!("period job without a check"),
    }
}

/// Restrict the override table to the bad primes of `E_alpha`.
fn bad_prime_overrides(alpha: i64, all: &BTreeMap<u64, i64>) -> regulab_core::Result<BTreeMap<u64, i64>> {
    if all.is_empty() {
        return Ok(BTreeMap::new());
    }
    let curve = WeierstrassCurve::deuring(BigRational::from_integer(alpha.into()))?;
    let disc = discriminant(&minimal_model(&integral_model(&curve)?)?);
    Ok(all.iter().filter(|(&p, _)| disc % p as i128 == 0).map(|(&p, &a)| (p, a)).collect())
}

pub fn regulator(points: &[f64], s: &Settings) -> CliResult<Outcome> {
    let samples = collect(par::map(points, s.exec, |&a| regulator_sample(a, quad_tol(s.tol * 1e-3))))?;
    let constant = samples.first().map(|x| x.ratio).unwrap_or(f64::NAN);
    let records = samples
        .iter()
        .map(|x| {
            CheckRecord::with_residual(
                format!("ratio a={} ({:.12})", x.alpha, x.ratio),
                x.two_pi_m,
                x.elliptic_dilog.abs(),
                (x.ratio - constant).abs(),
                s.tol,
            )
        })
        .collect();
    let values: Vec<Value> = samples
        .iter()
        .map(|x| json!({"alpha": x.alpha, "two_pi_m": x.two_pi_m, "elliptic_dilog": x.elliptic_dilog, "ratio": x.ratio}))
        .collect();
    Ok(Outcome {
        params: params(&[
            ("alpha", json!(points)),
            ("tol", json!(s.tol)),
            ("constant", json!(constant)),
            ("samples", Value::Array(values)),
        ]),
        records,
        warnings: Vec::new(),
    })
}

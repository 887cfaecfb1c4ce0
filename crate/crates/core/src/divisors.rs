//! Exact divisor calculus in `Z[E]^-`, the free abelian group on the points of
//! a curve modulo `(P) + (-P)`.
//!
//! Points are words in a finitely generated abelian group ([`PointGroup`]):
//! for the Deuring model the generators are the 6-torsion point `P` and two
//! free points `U`, `V`; for the `F` model they are `P` (order 2), `S`, `T`
//! and `A` (order 2). Because identities are checked on words, they are exact
//! even for points defined over quadratic extensions.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::elliptic::{
    deuring_points, elliptic_log, f_model_points, period_lattice, ComplexPoint, NumericCurve, PeriodLattice,
};
use crate::error::{Error, Result};
use crate::family::Family;

/// Generators with optional finite orders.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointGroup {
    names: Vec<String>,
    orders: Vec<Option<u32>>,
}

/// A word `sum c_i g_i`, stored with finite-order coefficients in `[0, n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymbolicPoint {
    coeffs: Vec<i64>,
}

impl SymbolicPoint {
    pub fn coefficients(&self) -> &[i64] {
        &self.coeffs
    }
}

impl PointGroup {
    /// `relations` lists `(generator, order)` pairs; other generators are free.
    pub fn new(generators: &[&str], relations: &[(&str, u32)]) -> Result<Arc<Self>> {
        if generators.is_empty() {
            return Err(Error::InvalidInput("a point group needs generators".into()));
        }
        for (i, g) in generators.iter().enumerate() {
            let valid = g.chars().next().is_some_and(|ch| ch.is_ascii_uppercase())
                && g.chars().all(|ch| ch.is_ascii_alphanumeric())
                && *g != "O";
            if !valid || generators[..i].contains(g) {
                return Err(Error::InvalidInput(format!("bad generator name `{g}`")));
            }
        }
        let mut orders = vec![None; generators.len()];
        for (name, n) in relations {
            let idx = generators
                .iter()
                .position(|g| g == name)
                .ok_or_else(|| Error::InvalidInput(format!("relation on unknown generator `{name}`")))?;
            if *n == 0 {
                return Err(Error::InvalidInput(format!("order of `{name}` must be positive")));
            }
            orders[idx] = Some(*n);
        }
        Ok(Arc::new(PointGroup {
            names: generators.iter().map(|s| s.to_string()).collect(),
            orders,
        }))
    }

    /// `<P, U, V | 6P = O>`.
    pub fn deuring() -> Arc<Self> {
        Self::new(&["P", "U", "V"], &[("P", 6)]).expect("valid group")
    }

    /// `<P, S, T, A | 2P = O, 2A = O>`.
    pub fn f_model() -> Arc<Self> {
        Self::new(&["P", "S", "T", "A"], &[("P", 2), ("A", 2)]).expect("valid group")
    }

    pub fn generators(&self) -> &[String] {
        &self.names
    }

    pub fn orders(&self) -> &[Option<u32>] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn identity(&self) -> SymbolicPoint {
        SymbolicPoint {
            coeffs: vec![0; self.rank()],
        }
    }

    pub fn reduce(&self, coeffs: Vec<i64>) -> SymbolicPoint {
        let coeffs = coeffs
            .into_iter()
            .zip(self.orders.iter())
            .map(|(c, o)| match o {
                Some(n) => c.rem_euclid(*n as i64),
                None => c,
            })
            .collect();
        SymbolicPoint { coeffs }
    }

    pub fn point(&self, terms: &[(&str, i64)]) -> Result<SymbolicPoint> {
        let mut coeffs = vec![0; self.rank()];
        for (name, c) in terms {
            let idx = self.index(name)?;
            coeffs[idx] += c;
        }
        Ok(self.reduce(coeffs))
    }

    fn index(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| Error::InvalidInput(format!("unknown generator `{name}`")))
    }

    pub fn add(&self, a: &SymbolicPoint, b: &SymbolicPoint) -> SymbolicPoint {
        self.reduce(a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, a: &SymbolicPoint, b: &SymbolicPoint) -> SymbolicPoint {
        self.reduce(a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect())
    }

    pub fn negate(&self, a: &SymbolicPoint) -> SymbolicPoint {
        self.reduce(a.coeffs.iter().map(|x| -x).collect())
    }

    pub fn is_self_inverse(&self, a: &SymbolicPoint) -> bool {
        self.negate(a) == *a
    }

    /// Ordering key for choosing inversion representatives: finite-order
    /// coefficients are taken as centred residues, so `P` is preferred over
    /// `5P` and `2P` over `4P`.
    fn key(&self, a: &SymbolicPoint) -> Vec<i64> {
        a.coeffs
            .iter()
            .zip(self.orders.iter())
            .map(|(&c, o)| match o {
                Some(n) => {
                    let n = *n as i64;
                    let r = c.rem_euclid(n);
                    if r > n / 2 {
                        r - n
                    } else {
                        r
                    }
                }
                None => c,
            })
            .collect()
    }

    /// Parses words such as `O`, `P`, `2P-V`, `-S`, `P+S+T`.
    pub fn parse_point(&self, s: &str) -> Result<SymbolicPoint> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s == "O" {
            return Ok(self.identity());
        }
        if s.is_empty() {
            return Err(Error::InvalidInput("empty point".into()));
        }
        let mut coeffs = vec![0i64; self.rank()];
        let bytes: Vec<char> = s.chars().collect();
        let mut i = 0;
        while i < bytes.len() {
            let mut sign = 1;
            if bytes[i] == '+' || bytes[i] == '-' {
                if bytes[i] == '-' {
                    sign = -1;
                }
                i += 1;
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let mult: i64 = if i > start {
                bytes[start..i].iter().collect::<String>().parse().map_err(|_| bad_point(&s))?
            } else {
                1
            };
            let gstart = i;
            if i >= bytes.len() || !bytes[i].is_ascii_uppercase() {
                return Err(bad_point(&s));
            }
            i += 1;
            while i < bytes.len() && (bytes[i].is_ascii_lowercase() || bytes[i].is_ascii_digit()) {
                i += 1;
            }
            let name: String = bytes[gstart..i].iter().collect();
            if name == "O" {
                continue;
            }
            coeffs[self.index(&name)?] += sign * mult;
        }
        Ok(self.reduce(coeffs))
    }

    pub fn format_point(&self, a: &SymbolicPoint) -> String {
        let mut out = String::new();
        for (c, name) in a.coeffs.iter().zip(&self.names) {
            if *c == 0 {
                continue;
            }
            if *c < 0 {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            if c.abs() != 1 {
                out.push_str(&c.abs().to_string());
            }
            out.push_str(name);
        }
        if out.is_empty() {
            out.push('O');
        }
        out
    }
}

fn bad_point(s: &str) -> Error {
    Error::InvalidInput(format!("cannot parse point `{s}`"))
}

/// A finite formal sum of points with nonzero integer multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalDivisor {
    group: Arc<PointGroup>,
    terms: BTreeMap<SymbolicPoint, i64>,
}

impl FormalDivisor {
    pub fn zero(group: &Arc<PointGroup>) -> Self {
        FormalDivisor {
            group: Arc::clone(group),
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(group: &Arc<PointGroup>, terms: impl IntoIterator<Item = (SymbolicPoint, i64)>) -> Self {
        let mut d = Self::zero(group);
        for (p, m) in terms {
            d.add_term(p, m);
        }
        d
    }

    /// Parses `2(P)+(U)-(5P)-O` style expressions. A bare `O` stands for `(O)`.
    pub fn parse(group: &Arc<PointGroup>, s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let chars: Vec<char> = s.chars().collect();
        let mut d = Self::zero(group);
        let mut i = 0;
        let err = || Error::InvalidInput(format!("cannot parse divisor `{s}`"));
        if chars.is_empty() || s == "0" {
            return Ok(d);
        }
        while i < chars.len() {
            let mut sign = 1;
            if chars[i] == '+' || chars[i] == '-' {
                if chars[i] == '-' {
                    sign = -1;
                }
                i += 1;
            }
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let mult: i64 = if i > start {
                chars[start..i].iter().collect::<String>().parse().map_err(|_| err())?
            } else {
                1
            };
            if i < chars.len() && chars[i] == '(' {
                let close = chars[i..].iter().position(|&c| c == ')').ok_or_else(err)? + i;
                let inner: String = chars[i + 1..close].iter().collect();
                d.add_term(group.parse_point(&inner)?, sign * mult);
                i = close + 1;
            } else if i < chars.len() && chars[i] == 'O' {
                d.add_term(group.identity(), sign * mult);
                i += 1;
            } else {
                return Err(err());
            }
        }
        Ok(d)
    }

    pub fn group(&self) -> &Arc<PointGroup> {
        &self.group
    }

    pub fn add_term(&mut self, p: SymbolicPoint, m: i64) {
        let e = self.terms.entry(p).or_insert(0);
        *e += m;
        if *e == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SymbolicPoint, i64)> {
        self.terms.iter().map(|(p, m)| (p, *m))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Sum of the points in the group, `sum m_i P_i`.
    pub fn sum_point(&self) -> SymbolicPoint {
        let mut acc = vec![0i64; self.group.rank()];
        for (p, m) in &self.terms {
            for (a, c) in acc.iter_mut().zip(&p.coeffs) {
                *a += m * c;
            }
        }
        self.group.reduce(acc)
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::from_terms(&self.group, self.terms.iter().map(|(p, m)| (p.clone(), k * m)))
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        same_group(&self.group, &other.group)?;
        let mut d = self.clone();
        for (p, m) in other.terms() {
            d.add_term(p.clone(), m);
        }
        Ok(d)
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        self.plus(&other.scale(-1))
    }
}

impl fmt::Display for FormalDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_terms(f, &self.group, self.terms.iter().map(|(p, m)| (p, *m)).collect())
    }
}

fn format_terms(f: &mut fmt::Formatter<'_>, group: &PointGroup, mut terms: Vec<(&SymbolicPoint, i64)>) -> fmt::Result {
    if terms.is_empty() {
        return f.write_str("0");
    }
    terms.sort_by_key(|t| std::cmp::Reverse(group.key(t.0)));
    for (i, (p, m)) in terms.into_iter().enumerate() {
        if m < 0 {
            f.write_str("-")?;
        } else if i > 0 {
            f.write_str("+")?;
        }
        if m.abs() != 1 {
            write!(f, "{}", m.abs())?;
        }
        write!(f, "({})", group.format_point(p))?;
    }
    Ok(())
}

fn same_group(a: &Arc<PointGroup>, b: &Arc<PointGroup>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::MixedGroups)
    }
}

/// An element of `Z[E]^-` in canonical form: one representative per
/// inversion orbit, self-inverse points with coefficient 1 only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinusDivisor(FormalDivisor);

impl MinusDivisor {
    pub fn as_formal(&self) -> &FormalDivisor {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        Ok(canonicalize_minus(&self.0.plus(&other.0)?))
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        Ok(canonicalize_minus(&self.0.minus(&other.0)?))
    }

    pub fn scale(&self, k: i64) -> Self {
        canonicalize_minus(&self.0.scale(k))
    }

    /// The image in `Z[E]^- (x) Q`: self-inverse terms are 2-torsion there and
    /// vanish.
    pub fn rational_part(&self) -> Self {
        let g = &self.0.group;
        MinusDivisor(FormalDivisor::from_terms(
            g,
            self.0.terms().filter(|(p, _)| !g.is_self_inverse(p)).map(|(p, m)| (p.clone(), m)),
        ))
    }

    /// The self-inverse (torsion) part.
    pub fn torsion_part(&self) -> Self {
        let g = &self.0.group;
        MinusDivisor(FormalDivisor::from_terms(
            g,
            self.0.terms().filter(|(p, _)| g.is_self_inverse(p)).map(|(p, m)| (p.clone(), m)),
        ))
    }
}

impl fmt::Display for MinusDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Canonical form modulo `(P) + (-P)`. Idempotent.
pub fn canonicalize_minus(d: &FormalDivisor) -> MinusDivisor {
    let g = Arc::clone(&d.group);
    let mut out: BTreeMap<SymbolicPoint, i64> = BTreeMap::new();
    for (p, m) in d.terms() {
        let neg = g.negate(p);
        if neg == *p || g.key(p) > g.key(&neg) {
            *out.entry(p.clone()).or_insert(0) += m;
        } else {
            *out.entry(neg).or_insert(0) -= m;
        }
    }
    let terms = out.into_iter().filter_map(|(p, m)| {
        let m = if g.is_self_inverse(&p) { m.rem_euclid(2) } else { m };
        (m != 0).then_some((p, m))
    });
    MinusDivisor(FormalDivisor::from_terms(&g, terms))
}

/// `(f) <> (g) = sum m_i n_j (S_i - T_j)` in `Z[E]^-`.
pub fn diamond(f: &FormalDivisor, g: &FormalDivisor) -> Result<MinusDivisor> {
    same_group(&f.group, &g.group)?;
    let grp = &f.group;
    let mut d = FormalDivisor::zero(grp);
    for (s, m) in f.terms() {
        for (t, n) in g.terms() {
            d.add_term(grp.sub(s, t), m * n);
        }
    }
    Ok(canonicalize_minus(&d))
}

/// One named divisor of the catalog.
#[derive(Clone, Debug, PartialEq)]
pub struct CatalogEntry {
    pub name: &'static str,
    /// The rational function, in the coordinates of the Weierstrass model.
    pub function: &'static str,
    pub divisor: FormalDivisor,
    /// Whether every point of the divisor is a multiple of the torsion
    /// generator `P`.
    pub torsion_only: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Catalog {
    pub family: Family,
    pub group: Arc<PointGroup>,
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn get(&self, name: &str) -> Result<&FormalDivisor> {
        self.entries
            .iter()
            .find(|e| e.name == name)
            .map(|e| &e.divisor)
            .ok_or_else(|| Error::InvalidInput(format!("no catalog entry `{name}` for family {}", self.family)))
    }
}

const P_ENTRIES: &[(&str, &str, &str)] = &[
    ("x", "(X-Y)/(X-a)", "(2P)+(3P)-(5P)-O"),
    ("y", "(Y+(a-1)X+a)/(X-a)", "-(P)+(3P)+(4P)-O"),
    ("X-a", "X-a", "(P)+(5P)-2O"),
    ("Y", "Y", "3(2P)-3O"),
];

const S_ENTRIES: &[(&str, &str, &str)] = &[
    ("X-a", "X-a", "(P)+(5P)-2O"),
    ("den", "(a^2-a)Y+2XY-(a+3)X^2+2aX", "2(P)+(2P)+(V)+(2P-V)-5O"),
    (
        "num",
        "2X^2Y+4a^2XY+(a^4-2a^3-a^2)Y+(-3a-4)X^3+(-a^3+2a)X^2+(a^3+2a^2)X-a^3",
        "5(P)+(U)+(P-U)-7O",
    ),
    ("a", "num/((X-a) den)", "2(P)+(U)+(P-U)-(5P)-(2P)-(V)-(2P-V)"),
    ("b", "-(X-a)^2/den", "2(5P)-(2P)-(V)-(2P-V)+O"),
    ("X+a", "X+a", "(V-P)+(P-V)-2O"),
    ("aX+2Y+a^2", "aX+2Y+a^2", "(5P)+(U)+(P-U)-3O"),
    ("Y", "Y", "3(2P)-3O"),
    ("(X+a)/Y", "(X+a)/Y", "(V-P)+(P-V)+O-3(2P)"),
    ("(aX+2Y+a^2)/Y", "(aX+2Y+a^2)/Y", "(5P)+(U)+(P-U)-3(2P)"),
];

const Q_ENTRIES: &[(&str, &str, &str)] = &[
    ("W-aZ", "W-aZ", "(S)+(P-S)+(P)-3O"),
    ("W+aZ", "W+aZ", "(-S)+(P+S)+(P)-3O"),
    ("3Z+4(a^2-9)", "3Z+4(a^2-9)", "(T)+(-T)-2O"),
    ("a", "(W-aZ)/(W+aZ)", "(S)+(P-S)-(-S)-(P+S)"),
    ("b", "-2(3Z+4(a^2-9))/(W+aZ)", "(T)+(-T)+O-(-S)-(P+S)-(P)"),
];

const R_ENTRIES: &[(&str, &str, &str)] = &[
    ("W", "W", "(P)+(A)+(A+P)-3O"),
    ("Z-4(b+1)", "Z-4(b+1)", "(S)+(-S)-2O"),
    ("3Z+4(b-5)(b+1)", "3Z+4(b-5)(b+1)", "(T)+(-T)-2O"),
    (
        "num",
        "ZW+2(b^2-3b-4)W-(2b-1)Z^2-2(b^3-5b^2-10b-4)Z+16(b^3-3b^2-9b-5)",
        "3(S)+(P-S)+(P-2S)-5O",
    ),
    ("a", "num/(W(Z-4(b+1)))", "2(S)+(P-S)+(P-2S)-(P)-(A)-(A+P)-(-S)"),
    ("b", "-(3Z+4(b-5)(b+1))/W", "(T)+(-T)+O-(P)-(A)-(A+P)"),
    ("W-3Z-4(b-5)(b+1)", "W-3Z-4(b-5)(b+1)", "(S)+(P+S)+(P-2S)-3O"),
    ("(W-3Z-4(b-5)(b+1))/W", "(W-3Z-4(b-5)(b+1))/W", "(S)+(P+S)+(P-2S)-(P)-(A)-(A+P)"),
    ("(3Z+4(b-5)(b+1))/W", "(3Z+4(b-5)(b+1))/W", "(T)+(-T)+O-(P)-(A)-(A+P)"),
];

/// The divisors of the functions used for each family, as stated for the
/// Weierstrass models (`E_a` for `P` and `S`, `F_a` for `Q` and `R`).
pub fn family_divisor_catalog(family: Family) -> Catalog {
    let (group, rows) = match family {
        Family::P => (PointGroup::deuring(), P_ENTRIES),
        Family::S => (PointGroup::deuring(), S_ENTRIES),
        Family::Q => (PointGroup::f_model(), Q_ENTRIES),
        Family::R => (PointGroup::f_model(), R_ENTRIES),
    };
    let entries = rows
        .iter()
        .map(|(name, function, text)| {
            let divisor = FormalDivisor::parse(&group, text).expect("catalog divisors parse");
            let torsion_only = divisor.terms().all(|(p, _)| p.coeffs.iter().skip(1).all(|&c| c == 0));
            CatalogEntry {
                name,
                function,
                divisor,
                torsion_only,
            }
        })
        .collect();
    Catalog { family, group, entries }
}

/// Published right-hand sides of the diamond computations.
pub mod published {
    pub const XY: &str = "-6(P)-6(2P)";
    pub const X1Y1: &str = "5(P)+3(2P)+(U)+(P-U)+3(P+U)+3(2P-U)+(V-U)+(2P-U-V)+(U+V-P)+(U-V+P)-(V)-(2P-V)-3(V+P)+3(V+3P)";
    pub const STEINBERG_S: &str = "(P)+3(2P)-(U)-(P-U)-3(P+U)-3(2P-U)-(V-U)-(2P-U-V)-(U+V-P)-(U-V+P)+(V)+(2P-V)+3(V+P)-3(V+3P)";
    pub const X2Y2: &str = "2(S-T)+2(S+T)-2(P+S+T)-2(P+S-T)+4(S)-4(P+S)";
    pub const X3Y3: &str = "3(S-T)+3(S+T)+4(S)-4(P+S)-(P+S+T)-(P+S-T)+(2S)-(P+2S)-(P+2S+T)+(P-2S+T)-2(S+A)+(2S+A)-2(S+A+P)+(2S+A+P)";
    pub const STEINBERG_R: &str = "(S-T)+(S+T)+(P+S+T)+(P+S-T)+(P-2S+T)+(P-2S-T)+(2S)-(P+2S)-2(S+A)-2(S+A+P)+(2S+A)+(2S+A+P)";
}

/// The chain of diamond identities to replay.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Chain {
    /// `(x1) <> (y1) ~ (x) <> (y)` on the Deuring model.
    SFamily,
    /// `(x2) <> (y2) ~ (x3) <> (y3)` on the `F` model.
    QRFamily,
}

impl std::str::FromStr for Chain {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "S" | "s" | "S-family" => Ok(Chain::SFamily),
            "QR" | "qr" | "Q/R-family" => Ok(Chain::QRFamily),
            other => Err(Error::InvalidInput(format!("unknown chain `{other}`"))),
        }
    }
}

/// One comparison of the derivation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DerivationStep {
    pub name: String,
    pub computed: String,
    pub expected: String,
    /// Equal as elements of `Z[E]^-`.
    pub exact: bool,
    /// Equal in `Z[E]^- (x) Q`.
    pub rational: bool,
    /// `computed - expected` in `Z[E]^-`, empty when exact.
    pub discrepancy: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DerivationReport {
    pub chain: Chain,
    pub steps: Vec<DerivationStep>,
    /// Every step holds in `Z[E]^- (x) Q`.
    pub pass: bool,
    /// Every step holds in `Z[E]^-` itself.
    pub exact: bool,
}

impl DerivationReport {
    /// The first step whose classes differ, if any.
    pub fn first_failure(&self) -> Option<&DerivationStep> {
        self.steps.iter().find(|s| !s.rational)
    }

    /// The first step that is not an identity in `Z[E]^-`.
    pub fn first_inexact(&self) -> Option<&DerivationStep> {
        self.steps.iter().find(|s| !s.exact)
    }
}

fn compare(name: &str, computed: &MinusDivisor, expected: &MinusDivisor) -> Result<DerivationStep> {
    let diff = computed.minus(expected)?;
    Ok(DerivationStep {
        name: name.to_string(),
        computed: computed.to_string(),
        expected: expected.to_string(),
        exact: diff.is_zero(),
        rational: diff.rational_part().is_zero(),
        discrepancy: if diff.is_zero() { String::new() } else { diff.to_string() },
    })
}

/// Replays the diamond identities behind `(x1)<>(y1) ~ (x)<>(y)` or
/// `(x2)<>(y2) ~ (x3)<>(y3)` in exact integer arithmetic.
///
/// Every intermediate result is compared with its published form. Steps that
/// agree only up to self-inverse terms are reported with that discrepancy;
/// those terms are torsion in `Z[E]^-` and do not affect the regulator.
pub fn derive_equivalence(chain: Chain) -> Result<DerivationReport> {
    let steps = match chain {
        Chain::SFamily => {
            let pc = family_divisor_catalog(Family::P);
            let sc = family_divisor_catalog(Family::S);
            let g = &sc.group;
            let xy = diamond(pc.get("x")?, pc.get("y")?)?;
            let expected_xy = canonicalize_minus(&FormalDivisor::parse(&pc.group, published::XY)?);
            // Lemma: -(x1)<>(y1) ~ (a)<>(b).
            let ab = diamond(sc.get("a")?, sc.get("b")?)?;
            let expected_x1y1 = canonicalize_minus(&FormalDivisor::parse(g, published::X1Y1)?);
            // f = -a(X+a)/(2Y), 1 - f = (aX+2Y+a^2)/(2Y); constants do not
            // change divisors.
            let st = diamond(sc.get("(X+a)/Y")?, sc.get("(aX+2Y+a^2)/Y")?)?;
            let expected_st = canonicalize_minus(&FormalDivisor::parse(g, published::STEINBERG_S)?);
            let x1y1 = ab.scale(-1).minus(&st)?;
            vec![
                compare("(x)<>(y)", &xy, &expected_xy)?,
                compare("(a)<>(b)", &ab, &expected_x1y1)?,
                compare("(f)<>(1-f)", &st, &expected_st)?,
                compare("(x1)<>(y1) = -(a)<>(b) - (f)<>(1-f)", &x1y1, &expected_xy)?,
                compare("(x1)<>(y1) ~ (x)<>(y)", &x1y1, &xy)?,
            ]
        }
        Chain::QRFamily => {
            let qc = family_divisor_catalog(Family::Q);
            let rc = family_divisor_catalog(Family::R);
            let g = &qc.group;
            let ab2 = diamond(qc.get("a")?, qc.get("b")?)?;
            let expected2 = canonicalize_minus(&FormalDivisor::parse(g, published::X2Y2)?);
            let ab3 = diamond(rc.get("a")?, rc.get("b")?)?;
            let expected3 = canonicalize_minus(&FormalDivisor::parse(g, published::X3Y3)?);
            let st = diamond(rc.get("(W-3Z-4(b-5)(b+1))/W")?, rc.get("(3Z+4(b-5)(b+1))/W")?)?;
            let expected_st = canonicalize_minus(&FormalDivisor::parse(g, published::STEINBERG_R)?);
            // -(x3)<>(y3) - (f)<>(1-f) against -(x2)<>(y2).
            let lhs = ab3.minus(&st)?;
            vec![
                compare("(a2)<>(b2)", &ab2, &expected2)?,
                compare("(a3)<>(b3)", &ab3, &expected3)?,
                compare("(f)<>(1-f)", &st, &expected_st)?,
                compare("(x2)<>(y2) ~ (x3)<>(y3)", &lhs, &ab2)?,
            ]
        }
    };
    let pass = steps.iter().all(|s| s.rational);
    let exact = steps.iter().all(|s| s.exact);
    Ok(DerivationReport { chain, steps, pass, exact })
}

/// Numeric images of the generators: their elliptic logarithms on a model
/// curve. Words map to `C^x/q^Z` by linearity.
#[derive(Clone, Debug)]
pub struct PointEmbedding {
    pub group: Arc<PointGroup>,
    pub curve: NumericCurve,
    pub lattice: PeriodLattice,
    /// Generator coordinates; `None` when not available.
    pub points: Vec<Option<ComplexPoint>>,
    /// Elliptic logarithms of the generators.
    pub logs: Vec<Option<Complex64>>,
}

impl PointEmbedding {
    pub fn new(group: &Arc<PointGroup>, curve: NumericCurve, points: Vec<Option<ComplexPoint>>) -> Result<Self> {
        if points.len() != group.rank() {
            return Err(Error::InvalidInput("one coordinate slot per generator is required".into()));
        }
        let lattice = period_lattice(&curve)?;
        let mut logs = Vec::with_capacity(points.len());
        for p in &points {
            logs.push(match p {
                Some(p) => Some(elliptic_log(&curve, &lattice, p)?),
                None => None,
            });
        }
        Ok(PointEmbedding {
            group: Arc::clone(group),
            curve,
            lattice,
            points,
            logs,
        })
    }

    /// `P, U, V` on the Deuring curve `E_a`.
    pub fn deuring(alpha: f64) -> Result<Self> {
        let pts = deuring_points(alpha).into_iter().map(|p| Some(p.point)).collect();
        Self::new(&PointGroup::deuring(), NumericCurve::deuring(alpha), pts)
    }

    /// `P, S, T, A` on `F_a`.
    pub fn f_model(alpha: f64) -> Result<Self> {
        let pts = f_model_points(alpha).into_iter().map(|p| Some(p.point)).collect();
        Self::new(&PointGroup::f_model(), NumericCurve::f_model(alpha), pts)
    }

    pub fn q(&self) -> Complex64 {
        self.lattice.q
    }

    /// Elliptic logarithm of a word.
    pub fn log_of(&self, p: &SymbolicPoint) -> Result<Complex64> {
        let mut u = Complex64::new(0.0, 0.0);
        for (i, &c) in p.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let gi = self.logs[i].ok_or_else(|| Error::UnresolvedPoint(self.group.format_point(p)))?;
            u += gi * c as f64;
        }
        Ok(self.lattice.reduce(u))
    }

    pub fn z_of(&self, p: &SymbolicPoint) -> Result<Complex64> {
        Ok(self.lattice.z(self.log_of(p)?))
    }

    /// Coordinates of a word, by the numeric group law.
    pub fn coordinates_of(&self, p: &SymbolicPoint) -> Result<ComplexPoint> {
        let mut acc = ComplexPoint::Infinity;
        for (i, &c) in p.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let gi = self.points[i].ok_or_else(|| Error::UnresolvedPoint(self.group.format_point(p)))?;
            acc = self.curve.add(&acc, &self.curve.multiply(&gi, c));
        }
        Ok(acc)
    }
}

/// A rational function on the model, evaluated numerically.
pub trait CurveFunction {
    fn eval(&self, x: Complex64, y: Complex64) -> Complex64;
}

impl<F: Fn(Complex64, Complex64) -> Complex64> CurveFunction for F {
    fn eval(&self, x: Complex64, y: Complex64) -> Complex64 {
        self(x, y)
    }
}

/// Per-point result of [`verify_claimed_divisor`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrderCheck {
    pub point: String,
    pub claimed: i64,
    pub slope: f64,
    pub observed: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DivisorCheck {
    pub orders: Vec<OrderCheck>,
    pub degree: i64,
    /// Distance of `sum m_i u(P_i)` to the lattice.
    pub abel_jacobi: f64,
    /// Extra zeros or poles found at non-claimed sample points.
    pub pass: bool,
}

/// Sample radii for the local parameter.
const RADII: [f64; 3] = [1e-3, 1e-4, 1e-5];

fn local_samples(curve: &NumericCurve, p: &ComplexPoint, radius: f64) -> Result<Vec<(Complex64, Complex64, f64)>> {
    // Returns a few nearby curve points together with |t|.
    let mut out = Vec::new();
    let dirs = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0), Complex64::new(-0.6, 0.8)];
    match *p {
        ComplexPoint::Infinity => {
            // t = X/Y: X ~ t^-2, Y ~ -t^-3. Pick X, solve for Y near -X^{3/2}.
            for d in dirs {
                let t = d * radius;
                let x = t.powi(-2);
                let mut y = -t.powi(-3);
                for _ in 0..60 {
                    let f = y * y + x * y * curve.a1 + y * curve.a3 - (x * x * x + x * x * curve.a2 + x * curve.a4 + curve.a6);
                    let df = y * 2.0 + x * curve.a1 + curve.a3;
                    let step = f / df;
                    y -= step;
                    if step.norm() <= 1e-15 * y.norm() {
                        break;
                    }
                }
                out.push((x, y, (x / y).norm()));
            }
        }
        ComplexPoint::Affine(x0, y0) => {
            let fy = curve.y_prime(x0, y0);
            let fx = x0 * x0 * 3.0 + x0 * (2.0 * curve.a2) + curve.a4 - y0 * curve.a1;
            let scale = 1.0 + x0.norm() + y0.norm();
            for d in dirs {
                let h = d * radius * scale;
                // Move along the coordinate with the larger partial derivative
                // of the other one, i.e. use X - X0 unless the tangent is vertical.
                let (x, y) = if fy.norm() >= fx.norm() {
                    let x = x0 + h;
                    let mut y = y0 - fx / fy * h;
                    for _ in 0..60 {
                        let f = y * y + x * y * curve.a1 + y * curve.a3
                            - (x * x * x + x * x * curve.a2 + x * curve.a4 + curve.a6);
                        let df = y * 2.0 + x * curve.a1 + curve.a3;
                        let step = f / df;
                        y -= step;
                        if step.norm() <= 1e-16 * scale {
                            break;
                        }
                    }
                    (x, y)
                } else {
                    let y = y0 + h;
                    let mut x = x0 - fy / fx * h;
                    for _ in 0..60 {
                        let f = y * y + x * y * curve.a1 + y * curve.a3
                            - (x * x * x + x * x * curve.a2 + x * curve.a4 + curve.a6);
                        let df = y * curve.a1 - (x * x * 3.0 + x * (2.0 * curve.a2) + curve.a4);
                        let step = f / df;
                        x -= step;
                        if step.norm() <= 1e-16 * scale {
                            break;
                        }
                    }
                    (x, y)
                };
                out.push((x, y, h.norm()));
            }
        }
    }
    if out.iter().any(|(x, y, _)| !x.is_finite() || !y.is_finite()) {
        return Err(Error::SingularPath("local parametrisation failed".into()));
    }
    Ok(out)
}

/// Estimates the order of `f` at `p` from the slope of `log|f|` against
/// `log|t|`.
pub fn vanishing_order(curve: &NumericCurve, f: &dyn CurveFunction, p: &ComplexPoint) -> Result<f64> {
    let mut logs_t = Vec::new();
    let mut logs_f = Vec::new();
    for r in RADII {
        let samples = local_samples(curve, p, r)?;
        let mut lt = 0.0;
        let mut lf = 0.0;
        for (x, y, t) in &samples {
            lt += t.ln();
            lf += f.eval(*x, *y).norm().ln();
        }
        logs_t.push(lt / samples.len() as f64);
        logs_f.push(lf / samples.len() as f64);
    }
    let n = RADII.len() as f64;
    let mt = logs_t.iter().sum::<f64>() / n;
    let mf = logs_f.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (t, f) in logs_t.iter().zip(&logs_f) {
        num += (t - mt) * (f - mf);
        den += (t - mt) * (t - mt);
    }
    Ok(num / den)
}

/// Checks a claimed divisor of `f`: the vanishing order at every claimed
/// point, the degree, and the Abel–Jacobi condition.
///
/// Claimed points that coincide numerically are merged before comparing.
pub fn verify_claimed_divisor(
    f: &dyn CurveFunction,
    claimed: &FormalDivisor,
    embedding: &PointEmbedding,
) -> Result<DivisorCheck> {
    same_group(claimed.group(), &embedding.group)?;
    let curve = &embedding.curve;
    let mut merged: Vec<(ComplexPoint, String, i64)> = Vec::new();
    for (p, m) in claimed.terms() {
        let coords = embedding.coordinates_of(p)?;
        let name = claimed.group().format_point(p);
        let found = merged.iter_mut().find(|(c, _, _)| same_point(c, &coords));
        match found {
            Some(entry) => {
                entry.1 = format!("{}={}", entry.1, name);
                entry.2 += m;
            }
            None => merged.push((coords, name, m)),
        }
    }
    let mut orders = Vec::new();
    let mut pass = true;
    for (coords, name, m) in &merged {
        let slope = vanishing_order(curve, f, coords)?;
        let observed = slope.round();
        if (slope - observed).abs() > 0.1 {
            return Err(Error::InconclusiveOrder {
                point: name.clone(),
                slope,
            });
        }
        let observed = observed as i64;
        pass &= observed == *m;
        orders.push(OrderCheck {
            point: name.clone(),
            claimed: *m,
            slope,
            observed,
        });
    }
    let mut u = Complex64::new(0.0, 0.0);
    for (coords, _, m) in &merged {
        u += elliptic_log(curve, &embedding.lattice, coords)? * *m as f64;
    }
    let abel_jacobi = embedding.lattice.distance_to_lattice(u);
    let degree = claimed.degree();
    pass &= degree == 0 && abel_jacobi < 1e-6;
    Ok(DivisorCheck {
        orders,
        degree,
        abel_jacobi,
        pass,
    })
}

fn same_point(a: &ComplexPoint, b: &ComplexPoint) -> bool {
    match (a, b) {
        (ComplexPoint::Infinity, ComplexPoint::Infinity) => true,
        (ComplexPoint::Affine(x1, y1), ComplexPoint::Affine(x2, y2)) => {
            let s = 1.0 + x1.norm() + y1.norm();
            (x1 - x2).norm() < 1e-8 * s && (y1 - y2).norm() < 1e-8 * s
        }
        _ => false,
    }
}

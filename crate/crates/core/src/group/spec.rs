//! Group descriptors, generator kits and the group definition file format.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{CycloNum, Rational};
use crate::error::{Error, Result};
use crate::scalar::Field;
use crate::CycloMatrix;

/// Environment variable naming an extra catalog directory of `<NAME>.json`
/// group definition files; entries there shadow the built-in ones.
pub const DATA_ENV: &str = "COXKIT_DATA";

const BUILTIN: &[(&str, &str)] = &[
    ("H3", include_str!("../../data/H3.json")),
    ("H4", include_str!("../../data/H4.json")),
    ("G4", include_str!("../../data/G4.json")),
];

/// How a group is requested on the command line or in tests.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    /// `G(m, p, n)`: monomial `n x n` matrices with `m`-th root of unity
    /// entries whose product is an `(m/p)`-th root of unity.
    Imprimitive {
        m: u32,
        p: u32,
        n: usize,
    },
    File(PathBuf),
    Alias(String),
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Imprimitive { m, p, n } => write!(f, "G({m},{p},{n})"),
            GroupSpec::File(path) => write!(f, "{}", path.display()),
            GroupSpec::Alias(name) => f.write_str(name),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.ends_with(".json") || s.contains('/') {
            return Ok(GroupSpec::File(PathBuf::from(s)));
        }
        if let Some(args) = s.strip_prefix("G(").and_then(|r| r.strip_suffix(')')) {
            let parts: Vec<&str> = args.split(',').map(str::trim).collect();
            let [m, p, n] = parts.as_slice() else {
                return Err(Error::Parse(format!("expected G(m,p,n), got {s:?}")));
            };
            let num = |x: &str| {
                x.parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad parameter {x:?} in {s:?}")))
            };
            let (m, p, n) = (num(m)?, num(p)?, num(n)? as usize);
            validate_imprimitive(m, p, n)?;
            return Ok(GroupSpec::Imprimitive { m, p, n });
        }
        if s.is_empty() {
            return Err(Error::Parse("empty group name".into()));
        }
        Ok(GroupSpec::Alias(s.to_string()))
    }
}

fn validate_imprimitive(m: u32, p: u32, n: usize) -> Result<()> {
    if m == 0 || p == 0 || n == 0 {
        return Err(Error::usage("G(m,p,n) parameters must be positive"));
    }
    if !m.is_multiple_of(p) {
        return Err(Error::usage(format!("G({m},{p},{n}): p must divide m")));
    }
    if m == 1 && n == 1 {
        return Err(Error::usage("G(1,1,1) is not a reflection group"));
    }
    Ok(())
}

/// Values a group definition claims; checked after enumeration.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reflections: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub irreducible: Option<bool>,
}

/// Generator matrices plus whatever the source claims about the group.
#[derive(Clone, Debug)]
pub struct GeneratorKit {
    pub name: String,
    pub generators: Vec<CycloMatrix>,
    pub expected: Expected,
}

/// One entry `[k, num, den]` stands for `(num/den) * zeta_N^k`.
pub type Term = (i64, i64, i64);

/// On-disk group definition (JSON).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupFile {
    pub name: String,
    pub rank: usize,
    pub conductor: u32,
    pub generators: Vec<Vec<Vec<Vec<Term>>>>,
    #[serde(default)]
    pub expected: Expected,
}

impl GroupFile {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Validates shapes and canonicalizes every entry.
    pub fn into_kit(self) -> Result<GeneratorKit> {
        let bad = |msg: String| Error::Parse(format!("{}: {msg}", self.name));
        if self.conductor == 0 {
            return Err(bad("conductor must be positive".into()));
        }
        if self.rank == 0 || self.generators.is_empty() {
            return Err(bad("need a positive rank and at least one generator".into()));
        }
        let mut generators = Vec::new();
        for (gi, g) in self.generators.iter().enumerate() {
            if g.len() != self.rank || g.iter().any(|row| row.len() != self.rank) {
                return Err(bad(format!("generator {gi} is not {0}x{0}", self.rank)));
            }
            let mut rows = Vec::new();
            for row in g {
                let mut out = Vec::new();
                for entry in row {
                    if entry.iter().any(|&(_, _, den)| den == 0) {
                        return Err(bad(format!("zero denominator in generator {gi}")));
                    }
                    out.push(CycloNum::from_powers(
                        self.conductor,
                        entry.iter().map(|&(k, num, den)| {
                            (k, Rational::new(BigInt::from(num), BigInt::from(den)))
                        }),
                    ));
                }
                rows.push(out);
            }
            let m = CycloMatrix::from_rows(rows)?;
            if m.det().is_zero() {
                return Err(bad(format!("generator {gi} is singular")));
            }
            generators.push(m);
        }
        Ok(GeneratorKit {
            name: self.name,
            generators,
            expected: self.expected,
        })
    }

    /// Inverse of [`GroupFile::into_kit`] for a list of matrices.
    pub fn from_matrices(name: &str, generators: &[CycloMatrix], expected: Expected) -> Self {
        let rank = generators[0].dim();
        let conductor = generators[0].get(0, 0).conductor();
        let to_terms = |x: &CycloNum| -> Vec<Term> {
            x.coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                .map(|(k, c)| {
                    let num = i64::try_from(c.numer()).expect("coefficient fits i64");
                    let den = i64::try_from(c.denom()).expect("coefficient fits i64");
                    (k as i64, num, den)
                })
                .collect()
        };
        GroupFile {
            name: name.to_string(),
            rank,
            conductor,
            generators: generators
                .iter()
                .map(|g| {
                    g.rows()
                        .map(|row| row.iter().map(to_terms).collect())
                        .collect()
                })
                .collect(),
            expected,
        }
    }
}

/// Monomial generators of `G(m, p, n)`.
///
/// `p == m`: `t, s_1, ..., s_{n-1}` with `t(b_1) = w b_2`, `t(b_2) = w^-1 b_1`
/// and `w = zeta_m`. `p == 1`: `diag(zeta_m, 1, ..., 1), s_1, ..., s_{n-1}`.
/// Otherwise `diag(zeta_m^p, 1, ...), t, s_1, ...` (`n + 1` generators).
pub fn build_imprimitive(m: u32, p: u32, n: usize) -> Result<Vec<CycloMatrix>> {
    validate_imprimitive(m, p, n)?;
    let zero = CycloNum::zero(m);
    let one = CycloNum::one(m);
    let id = || -> Vec<Vec<CycloNum>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { one.clone() } else { zero.clone() })
                    .collect()
            })
            .collect()
    };
    let mut gens = Vec::new();
    if p < m {
        let mut d = id();
        d[0][0] = CycloNum::root_of_unity(m, p as i64);
        gens.push(CycloMatrix::from_rows(d)?);
    }
    if p > 1 && n >= 2 {
        let mut t = id();
        t[0][0] = zero.clone();
        t[1][1] = zero.clone();
        t[1][0] = CycloNum::root_of_unity(m, 1);
        t[0][1] = CycloNum::root_of_unity(m, -1);
        gens.push(CycloMatrix::from_rows(t)?);
    }
    for i in 0..n.saturating_sub(1) {
        let mut s = id();
        s[i][i] = zero.clone();
        s[i + 1][i + 1] = zero.clone();
        s[i][i + 1] = one.clone();
        s[i + 1][i] = one.clone();
        gens.push(CycloMatrix::from_rows(s)?);
    }
    if gens.is_empty() {
        // G(m, m, 1) is trivial.
        gens.push(CycloMatrix::from_rows(id())?);
    }
    Ok(gens)
}

/// `|G(m,p,n)| = m^n n! / p` and degrees `m, 2m, ..., (n-1)m, nm/p`.
pub fn imprimitive_expected(m: u32, p: u32, n: usize) -> Expected {
    let (m64, p64) = (m as u64, p as u64);
    let fact: u64 = (1..=n as u64).product();
    let order = m64.pow(n as u32) * fact / p64;
    let mut degrees: Vec<u64> = (1..n as u64).map(|k| k * m64).collect();
    degrees.push(n as u64 * m64 / p64);
    degrees.sort_unstable();
    Expected {
        order: Some(order as usize),
        reflections: Some(degrees.iter().map(|d| (d - 1) as usize).sum()),
        degrees: Some(degrees),
        irreducible: None,
    }
}

/// `G(1,1,n+1)` restricted to its reflection subspace (sum-zero vectors),
/// written in the basis `e_i - e_{i+1}`.
pub fn build_type_a(n: usize) -> Result<Vec<CycloMatrix>> {
    if n == 0 {
        return Err(Error::usage("A_n needs n >= 1"));
    }
    let full = build_imprimitive(1, 1, n + 1)?;
    let one = CycloNum::one(1);
    let basis: Vec<Vec<CycloNum>> = (0..n)
        .map(|i| {
            (0..=n)
                .map(|j| {
                    if j == i {
                        one.clone()
                    } else if j == i + 1 {
                        -&one
                    } else {
                        one.zero_like()
                    }
                })
                .collect()
        })
        .collect();
    full.iter().map(|g| g.restrict_to(&basis)).collect()
}

fn parse_suffix(name: &str, prefix: &str) -> Option<usize> {
    name.strip_prefix(prefix)?.parse().ok()
}

impl GroupSpec {
    /// Resolves the descriptor to generator matrices.
    pub fn kit(&self) -> Result<GeneratorKit> {
        match self {
            GroupSpec::Imprimitive { m, p, n } => Ok(GeneratorKit {
                name: self.to_string(),
                generators: build_imprimitive(*m, *p, *n)?,
                expected: imprimitive_expected(*m, *p, *n),
            }),
            GroupSpec::File(path) => load_file(path),
            GroupSpec::Alias(name) => resolve_alias(name),
        }
    }
}

pub fn load_file(path: &Path) -> Result<GeneratorKit> {
    let text = std::fs::read_to_string(path)?;
    GroupFile::parse(&text)?.into_kit()
}

fn resolve_alias(name: &str) -> Result<GeneratorKit> {
    if let Ok(dir) = std::env::var(DATA_ENV) {
        let path = Path::new(&dir).join(format!("{name}.json"));
        if path.is_file() {
            return load_file(&path);
        }
    }
    if let Some((_, text)) = BUILTIN.iter().find(|(n, _)| *n == name) {
        return GroupFile::parse(text)?.into_kit();
    }
    let imprimitive = |m, p, n| -> Result<GeneratorKit> {
        Ok(GeneratorKit {
            name: name.to_string(),
            generators: build_imprimitive(m, p, n)?,
            expected: imprimitive_expected(m, p, n),
        })
    };
    if let Some(n) = parse_suffix(name, "A").filter(|&n| n >= 1) {
        let fact: usize = (1..=n + 1).product();
        return Ok(GeneratorKit {
            name: name.to_string(),
            generators: build_type_a(n)?,
            expected: Expected {
                order: Some(fact),
                reflections: Some(n * (n + 1) / 2),
                degrees: Some((2..=n as u64 + 1).collect()),
                irreducible: Some(true),
            },
        });
    }
    if let Some(n) = parse_suffix(name, "B").filter(|&n| n >= 2) {
        return imprimitive(2, 1, n);
    }
    if let Some(n) = parse_suffix(name, "D").filter(|&n| n >= 2) {
        return imprimitive(2, 2, n);
    }
    if let Some(m) = name
        .strip_prefix("I2(")
        .and_then(|r| r.strip_suffix(')'))
        .and_then(|r| r.trim().parse::<u32>().ok())
        .filter(|&m| m >= 2)
    {
        return imprimitive(m, m, 2);
    }
    Err(Error::usage(format!("unknown group {name:?}")))
}

/// Names accepted besides `G(m,p,n)` and file paths.
pub fn catalog_names() -> Vec<String> {
    let mut names: Vec<String> = BUILTIN.iter().map(|(n, _)| n.to_string()).collect();
    names.extend(["A<n>", "B<n>", "D<n>", "I2(<m>)"].map(String::from));
    names
}

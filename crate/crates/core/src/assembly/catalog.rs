//! Nucleus catalogs: counts ρ(t, f) with optional explicit rooted nuclei.

use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::complex::Triangulation;
use crate::error::AssemblyError;
use crate::io::{format_triangulation, parse_triangulation};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub t: i64,
    pub f: i64,
    pub count: u64,
    /// `.tet` payloads; a missing root line roots at the smallest external face.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub examples: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NucleusCatalog {
    /// The growth constant K1 as a rational string such as "2" or "5/2".
    pub k1: String,
    pub entries: Vec<CatalogEntry>,
}

impl NucleusCatalog {
    /// Only the tetrahedron, with K1 = 2.
    pub fn tetrahedron() -> Self {
        Self {
            k1: "2".into(),
            entries: vec![CatalogEntry {
                t: 1,
                f: 4,
                count: 1,
                examples: vec!["root: 1 2 3\n1 2 3 4\n".into()],
            }],
        }
    }

    pub fn from_json(text: &str) -> Result<Self, AssemblyError> {
        let cat: Self = serde_json::from_str(text).map_err(|e| AssemblyError::Catalog(e.to_string()))?;
        cat.check()?;
        Ok(cat)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("catalog serializes")
    }

    pub fn check(&self) -> Result<(), AssemblyError> {
        let k1 = self.k1()?;
        if k1 <= BigRational::one() {
            return Err(AssemblyError::Catalog(format!("K1 = {k1} must exceed 1")));
        }
        for e in &self.entries {
            if e.count > 0 && (e.t < 1 || e.f < 4 || e.f % 2 != 0 || e.f > e.t + 3) {
                return Err(AssemblyError::Catalog(format!(
                    "entry <{}, {}> cannot hold nuclei",
                    e.t, e.f
                )));
            }
            if e.examples.len() as u64 > e.count {
                return Err(AssemblyError::Catalog(format!(
                    "entry <{}, {}> lists more examples than its count",
                    e.t, e.f
                )));
            }
        }
        Ok(())
    }

    pub fn k1(&self) -> Result<BigRational, AssemblyError> {
        BigRational::from_str(self.k1.trim())
            .map_err(|e| AssemblyError::Catalog(format!("bad K1 {:?}: {e}", self.k1)))
            .and_then(|k| {
                if k.is_positive() {
                    Ok(k)
                } else {
                    Err(AssemblyError::Catalog("K1 must be positive".into()))
                }
            })
    }

    /// min(1/10, 1/(2 K1)).
    pub fn s_star(&self) -> Result<BigRational, AssemblyError> {
        let tenth = BigRational::new(1.into(), 10.into());
        let half_inv = (self.k1()? * BigRational::from_integer(2.into())).recip();
        Ok(if half_inv < tenth { half_inv } else { tenth })
    }

    /// ρ(t, f), summed over duplicate entries.
    pub fn rho(&self, t: i64, f: i64) -> u64 {
        self.entries.iter().filter(|e| e.t == t && e.f == f).map(|e| e.count).sum()
    }

    pub fn max_t(&self) -> i64 {
        self.entries.iter().filter(|e| e.count > 0).map(|e| e.t).max().unwrap_or(0)
    }

    /// The explicit nuclei in entry order; these are the catalog indices of tree codes.
    pub fn nuclei(&self) -> Result<Vec<Triangulation>, AssemblyError> {
        let mut out = Vec::new();
        for e in &self.entries {
            for text in &e.examples {
                let t = parse_triangulation(text).map_err(|err| AssemblyError::Catalog(err.to_string()))?;
                let t = match t.root() {
                    Some(_) => t,
                    None => {
                        let f = *t.external_faces().iter().next().ok_or(AssemblyError::DisconnectedBoundary)?;
                        t.with_root(f)?
                    }
                };
                out.push(t);
            }
        }
        Ok(out)
    }

    /// Adds one explicit nucleus under its own (t, f).
    pub fn push_example(&mut self, t: &Triangulation) -> Result<(), AssemblyError> {
        let fv = t.f_vector()?;
        let text = format_triangulation(t);
        match self.entries.iter_mut().find(|e| e.t == fv.t && e.f == fv.f_s) {
            Some(e) => {
                e.examples.push(text);
                e.count = e.count.max(e.examples.len() as u64);
            }
            None => self.entries.push(CatalogEntry {
                t: fv.t,
                f: fv.f_s,
                count: 1,
                examples: vec![text],
            }),
        }
        Ok(())
    }
}

/// Parses "1/10", "0.1" or "3" exactly.
pub fn parse_rational(s: &str) -> Result<BigRational, AssemblyError> {
    let s = s.trim();
    if let Ok(r) = BigRational::from_str(s) {
        return Ok(r);
    }
    // Plain decimals such as 0.1.
    let (int, frac) = s
        .split_once('.')
        .ok_or_else(|| AssemblyError::Catalog(format!("not a rational: {s:?}")))?;
    let digits = format!("{int}{frac}");
    let num = num_bigint::BigInt::from_str(&digits).map_err(|_| AssemblyError::Catalog(format!("not a rational: {s:?}")))?;
    let den = num_bigint::BigInt::from(10u32).pow(frac.len() as u32);
    let r = BigRational::new(num, den);
    Ok(if r.is_zero() { BigRational::zero() } else { r })
}

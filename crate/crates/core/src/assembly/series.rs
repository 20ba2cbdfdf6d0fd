//! The truncated generating function A_M(s) of rooted trees of nuclei, in
//! exact rational arithmetic.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::catalog::NucleusCatalog;
use crate::error::AssemblyError;

pub const MAX_SERIES_ORDER: usize = 200;

/// (v, t, f) -> number of rooted trees of nuclei.
pub type TreeTable = BTreeMap<(u32, u32, u32), BigUint>;

#[derive(Debug, Clone, Serialize)]
pub struct BoundSeries {
    pub m: usize,
    pub s: String,
    pub s_star: String,
    /// A_0(s) .. A_M(s) as exact fractions.
    pub values: Vec<String>,
    pub approx: Vec<f64>,
    #[serde(skip)]
    pub exact: Vec<BigRational>,
    #[serde(skip)]
    pub table: TreeTable,
}

fn weight(v: u32, t: u32, f: u32) -> usize {
    (3 * v + 3 * t + f) as usize
}

/// Multiplies two branch polynomials keyed (v, t, g), dropping terms past the bounds.
fn multiply(
    a: &BTreeMap<(u32, u32, u32), BigUint>,
    b: &BTreeMap<(u32, u32, u32), BigUint>,
    max_v: u32,
    max_w: usize,
) -> BTreeMap<(u32, u32, u32), BigUint> {
    let mut out: BTreeMap<(u32, u32, u32), BigUint> = BTreeMap::new();
    for (&(v1, t1, g1), x) in a {
        for (&(v2, t2, g2), y) in b {
            let (v, t, g) = (v1 + v2, t1 + t2, g1 + g2);
            if v > max_v || 3 * t as usize + g as usize > max_w {
                continue;
            }
            *out.entry((v, t, g)).or_default() += x * y;
        }
    }
    out
}

/// A_{v,t,f} for every 3v + 3t + f <= m, by recursion over the root nucleus.
pub fn tree_table(cat: &NucleusCatalog, m: usize) -> Result<TreeTable, AssemblyError> {
    if m > MAX_SERIES_ORDER {
        return Err(AssemblyError::OutOfRange { what: "M", value: m as u64, max: MAX_SERIES_ORDER as u64 });
    }
    cat.check()?;
    let mut table: TreeTable = BTreeMap::from([((0, 0, 0), BigUint::one())]);
    let nuclei: Vec<(u32, u32, u64)> = cat
        .entries
        .iter()
        .filter(|e| e.count > 0)
        .map(|e| (e.t as u32, e.f as u32, e.count))
        .collect();
    let mut v = 1u32;
    // Every tree with v nuclei has t >= v and f >= 4.
    while 6 * v as usize + 4 <= m {
        // An empty branch leaves one face; a branch with f_i faces adds f_i - 1.
        let mut branch: BTreeMap<(u32, u32, u32), BigUint> = BTreeMap::from([((0, 0, 1), BigUint::one())]);
        for (&(bv, bt, bf), n) in &table {
            if bv > 0 {
                *branch.entry((bv, bt, bf - 1)).or_default() += n;
            }
        }
        let mut new: TreeTable = BTreeMap::new();
        for &(t0, f0, rho) in &nuclei {
            let budget = match m.checked_sub(weight(v, t0, 1)) {
                Some(b) => b,
                None => continue,
            };
            let mut power: BTreeMap<(u32, u32, u32), BigUint> = BTreeMap::from([((0, 0, 0), BigUint::one())]);
            for _ in 0..f0 - 1 {
                power = multiply(&power, &branch, v - 1, budget);
            }
            for (&(pv, pt, pg), n) in &power {
                if pv != v - 1 {
                    continue;
                }
                let (t, f) = (t0 + pt, 1 + pg);
                if weight(v, t, f) <= m {
                    *new.entry((v, t, f)).or_default() += n * BigUint::from(rho);
                }
            }
        }
        table.extend(new);
        v += 1;
    }
    Ok(table)
}

/// A_0(s) .. A_M(s) for the catalog, with 0 <= s <= s*.
pub fn bound_series(cat: &NucleusCatalog, m: usize, s: &BigRational) -> Result<BoundSeries, AssemblyError> {
    let s_star = cat.s_star()?;
    if *s < BigRational::zero() || *s > s_star {
        return Err(AssemblyError::BadEvaluationPoint { s: s.to_string(), s_star: s_star.to_string() });
    }
    let table = tree_table(cat, m)?;
    let mut by_weight = vec![BigRational::zero(); m + 1];
    for (&(v, t, f), n) in &table {
        let w = weight(v, t, f);
        by_weight[w] += BigRational::from_integer(n.clone().into()) * pow(s, w);
    }
    let mut exact = Vec::with_capacity(m + 1);
    let mut acc = BigRational::zero();
    for (i, term) in by_weight.into_iter().enumerate() {
        acc += term;
        if let Some(prev) = exact.last() {
            if acc < *prev {
                return Err(AssemblyError::NotMonotone(i));
            }
        }
        exact.push(acc.clone());
    }
    Ok(BoundSeries {
        m,
        s: s.to_string(),
        s_star: s_star.to_string(),
        values: exact.iter().map(|x| x.to_string()).collect(),
        approx: exact.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect(),
        exact,
        table,
    })
}

fn pow(s: &BigRational, k: usize) -> BigRational {
    let mut out = BigRational::one();
    for _ in 0..k {
        out *= s;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assembly::tree::ternary_recurrence;

    #[test]
    fn trivial_values() {
        let cat = NucleusCatalog::tetrahedron();
        let zero = BigRational::zero();
        let s = bound_series(&cat, 30, &zero).unwrap();
        assert!(s.exact.iter().all(|x| x.is_one()));
        let tenth = BigRational::new(1.into(), 10.into());
        assert!(bound_series(&cat, 0, &tenth).unwrap().exact[0].is_one());
    }

    #[test]
    fn tetrahedra_match_tree_counts() {
        let table = tree_table(&NucleusCatalog::tetrahedron(), 6 * 5 + 2 * 5 + 2).unwrap();
        for v in 1..=5u32 {
            let total: BigUint = table
                .iter()
                .filter(|((tv, tt, _), _)| *tv == v && *tt == v)
                .map(|(_, n)| n.clone())
                .sum();
            assert_eq!(total, BigUint::from(ternary_recurrence(v as u64)), "v = {v}");
            // Trees of v tetrahedra have 2v + 2 external faces.
            assert!(table.contains_key(&(v, v, 2 * v + 2)));
        }
    }

    #[test]
    fn rejects_s_above_s_star() {
        let s = BigRational::new(1.into(), 5.into());
        assert!(matches!(
            bound_series(&NucleusCatalog::tetrahedron(), 10, &s),
            Err(AssemblyError::BadEvaluationPoint { .. })
        ));
    }
}

//! Exhaustive enumeration of posets up to isomorphism.
//!
//! Every poset on `k` points arises from one on `k - 1` points by adding a
//! new maximal element above some down-set. Level `k` is generated from the
//! canonical representatives of level `k - 1`; children are deduplicated by
//! canonical form. Parents are independent, so the work fans out across
//! threads and only the per-worker sets of canonical forms are merged.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;

use crate::canonical::{canonical_form, CanonicalForm};
use crate::error::{Error, Result};
use crate::poset::FinitePoset;
use crate::reduction::is_minimal_finite_space;

pub const DEFAULT_CAP: usize = 8;
pub const HARD_CAP: usize = 10;

/// Environment variable overriding the enumeration cap.
pub const CAP_ENV: &str = "FINITO_MAX_POINTS";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumConfig {
    pub cap: usize,
    pub parallel: bool,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig {
            cap: DEFAULT_CAP,
            parallel: true,
        }
    }
}

impl EnumConfig {
    pub fn with_cap(cap: usize) -> Result<Self> {
        if cap > HARD_CAP {
            return Err(Error::CapExceeded {
                requested: cap,
                cap: HARD_CAP,
            });
        }
        Ok(EnumConfig {
            cap,
            ..Default::default()
        })
    }

    /// Default configuration, with the cap taken from `FINITO_MAX_POINTS` if set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(CAP_ENV) {
            Ok(v) => {
                let cap = v
                    .trim()
                    .parse()
                    .map_err(|_| Error::Config(format!("{CAP_ENV}={v:?} is not a point count")))?;
                Self::with_cap(cap)
            }
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn serial(mut self) -> Self {
        self.parallel = false;
        self
    }
}

/// Calls `f` with every down-set of `p` (as a sorted index list).
pub fn for_each_down_set(p: &FinitePoset, mut f: impl FnMut(&[usize])) {
    let order = p.linear_extension();
    let mut chosen = vec![false; p.len()];
    let mut current = Vec::new();
    fn rec(
        p: &FinitePoset,
        order: &[usize],
        i: usize,
        chosen: &mut Vec<bool>,
        current: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]),
    ) {
        if i == order.len() {
            f(current);
            return;
        }
        let x = order[i];
        rec(p, order, i + 1, chosen, current, f);
        if (0..p.len()).all(|y| !p.lt(y, x) || chosen[y]) {
            chosen[x] = true;
            current.push(x);
            rec(p, order, i + 1, chosen, current, f);
            current.pop();
            chosen[x] = false;
        }
    }
    rec(p, &order, 0, &mut chosen, &mut current, &mut f);
}

fn children(p: &FinitePoset, into: &mut HashSet<CanonicalForm>) {
    for_each_down_set(p, |d| {
        let child = p.extend_above(d).expect("down-set extension is a poset");
        into.insert(canonical_form(&child));
    });
}

/// Canonical representatives of every isomorphism class, cached by size.
pub struct PosetCatalog {
    config: EnumConfig,
    levels: Vec<Vec<FinitePoset>>,
}

impl PosetCatalog {
    pub fn new(config: EnumConfig) -> Self {
        PosetCatalog {
            config,
            levels: Vec::new(),
        }
    }

    pub fn config(&self) -> EnumConfig {
        self.config
    }

    /// All classes on exactly `k` points, in canonical-form order.
    pub fn level(&mut self, k: usize) -> Result<&[FinitePoset]> {
        if k == 0 {
            return Err(Error::Empty);
        }
        if k > self.config.cap {
            return Err(Error::CapExceeded {
                requested: k,
                cap: self.config.cap,
            });
        }
        while self.levels.len() < k {
            let next = match self.levels.last() {
                None => vec![FinitePoset::chain(1)?],
                Some(parents) => next_level(parents, self.config.parallel),
            };
            self.levels.push(next);
        }
        Ok(&self.levels[k - 1])
    }

    /// All classes with between 1 and `k` points.
    pub fn up_to(&mut self, k: usize) -> Result<Vec<FinitePoset>> {
        self.level(k)?;
        Ok(self.levels[..k].iter().flatten().cloned().collect())
    }
}

fn next_level(parents: &[FinitePoset], parallel: bool) -> Vec<FinitePoset> {
    let forms: HashSet<CanonicalForm> = if parallel {
        parents
            .par_iter()
            .fold(HashSet::new, |mut acc, p| {
                children(p, &mut acc);
                acc
            })
            .reduce(HashSet::new, |a, b| {
                let (mut big, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
                big.extend(small);
                big
            })
    } else {
        let mut acc = HashSet::new();
        for p in parents {
            children(p, &mut acc);
        }
        acc
    };
    let mut forms: Vec<CanonicalForm> = forms.into_iter().collect();
    forms.sort_unstable();
    forms
        .iter()
        .map(|f| f.to_poset().expect("canonical code decodes"))
        .collect()
}

/// One representative per isomorphism class of `k`-point posets.
pub fn enumerate_posets(k: usize, config: EnumConfig) -> Result<Vec<FinitePoset>> {
    let mut catalog = PosetCatalog::new(config);
    Ok(catalog.level(k)?.to_vec())
}

/// Predicates available for filtering enumerations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PosetFilter {
    Connected,
    /// No beat points.
    Minimal,
    Height(usize),
}

impl PosetFilter {
    pub fn accepts(&self, p: &FinitePoset) -> bool {
        match *self {
            PosetFilter::Connected => p.is_connected(),
            PosetFilter::Minimal => is_minimal_finite_space(p),
            PosetFilter::Height(h) => p.height() == h,
        }
    }

    pub fn name(&self) -> String {
        match self {
            PosetFilter::Connected => "connected".into(),
            PosetFilter::Minimal => "minimal".into(),
            PosetFilter::Height(h) => format!("height={h}"),
        }
    }

    pub fn parse(s: &str) -> Option<PosetFilter> {
        match s {
            "connected" => Some(PosetFilter::Connected),
            "minimal" => Some(PosetFilter::Minimal),
            _ => s
                .strip_prefix("height=")?
                .parse()
                .ok()
                .map(PosetFilter::Height),
        }
    }
}

/// Class counts for one point count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationStats {
    pub k: usize,
    pub total: usize,
    pub by_filter: BTreeMap<String, usize>,
}

pub fn enumeration_stats(k: usize, classes: &[FinitePoset]) -> EnumerationStats {
    let mut by_filter = BTreeMap::new();
    let mut bump = |key: String| *by_filter.entry(key).or_insert(0) += 1;
    for p in classes {
        if p.is_connected() {
            bump("connected".into());
        }
        if is_minimal_finite_space(p) {
            bump("minimal".into());
        }
        bump(format!("height={}", p.height()));
    }
    EnumerationStats {
        k,
        total: classes.len(),
        by_filter,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_class_counts() {
        let mut cat = PosetCatalog::new(EnumConfig::default());
        let counts: Vec<usize> = (1..=5).map(|k| cat.level(k).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 16, 63]);
    }

    #[test]
    fn two_point_classes() {
        let two = enumerate_posets(2, EnumConfig::default()).unwrap();
        assert_eq!(two.len(), 2);
        assert!(two.iter().any(|p| p.height() == 2));
        assert!(two.iter().any(|p| p.height() == 1));
    }

    #[test]
    fn cap_is_enforced() {
        let cfg = EnumConfig::with_cap(3).unwrap();
        assert_eq!(
            enumerate_posets(4, cfg).unwrap_err(),
            Error::CapExceeded {
                requested: 4,
                cap: 3
            }
        );
        assert!(EnumConfig::with_cap(11).is_err());
    }

    #[test]
    fn down_sets_of_a_chain() {
        let mut seen = Vec::new();
        for_each_down_set(&FinitePoset::chain(3).unwrap(), |d| seen.push(d.to_vec()));
        seen.sort();
        assert_eq!(seen, vec![vec![], vec![0], vec![0, 1], vec![0, 1, 2]]);
        let mut n = 0;
        for_each_down_set(&FinitePoset::antichain(4).unwrap(), |_| n += 1);
        assert_eq!(n, 16);
    }

    #[test]
    fn filters() {
        assert_eq!(PosetFilter::parse("height=3"), Some(PosetFilter::Height(3)));
        assert_eq!(PosetFilter::parse("minimal"), Some(PosetFilter::Minimal));
        assert_eq!(PosetFilter::parse("tall"), None);
        let three = enumerate_posets(3, EnumConfig::default()).unwrap();
        let stats = enumeration_stats(3, &three);
        assert_eq!(stats.total, 5);
        assert_eq!(stats.by_filter["connected"], 3);
        assert_eq!(stats.by_filter["height=1"], 1);
        assert_eq!(stats.by_filter["height=3"], 1);
        // Only the 3-point antichain is beat-point-free.
        assert_eq!(stats.by_filter["minimal"], 1);
    }
}

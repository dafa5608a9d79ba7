//! Canonical labelling of finite posets.
//!
//! The search individualizes vertices of an ordered partition, refining after
//! every step by counting strict predecessors and successors inside each
//! cell. Leaves of the search tree are total orders of the elements; the
//! canonical form is the lexicographically least relation encoding among
//! all leaves. Automorphisms discovered along the way prune sibling
//! branches (orbit pruning) and whole subtrees (backjumping to the common
//! ancestor with the best leaf).

use std::cmp::Ordering;
use std::fmt;

use crate::bits::{and_count, mask_of};
use crate::error::Result;
use crate::poset::FinitePoset;

/// Isomorphism-invariant fingerprint of a poset.
///
/// Codes are totally ordered; equal codes mean order-isomorphic posets.
/// Posets with fewer points always sort first.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    code: Vec<u8>,
}

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.code
    }

    pub fn from_bytes(code: Vec<u8>) -> Self {
        CanonicalForm { code }
    }

    /// The canonical representative encoded by this form.
    pub fn to_poset(&self) -> Result<FinitePoset> {
        FinitePoset::from_relation_bits(&self.code)
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm(")?;
        for b in &self.code {
            write!(f, "{b:02x}")?;
        }
        write!(f, ")")
    }
}

type Partition = Vec<Vec<usize>>;

struct Search<'a> {
    p: &'a FinitePoset,
    best: Option<(Vec<u8>, Vec<usize>, Vec<usize>)>,
    automorphisms: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Splits cells until every vertex in a cell sees the same number of
    /// strict predecessors and successors in every cell.
    fn refine(&self, cells: &mut Partition) {
        let n = self.p.len();
        loop {
            let masks: Vec<Vec<u64>> = cells
                .iter()
                .map(|c| mask_of(n, c.iter().copied()))
                .collect();
            let mut next: Partition = Vec::with_capacity(cells.len());
            let mut split = false;
            for cell in cells.iter() {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(Vec<u16>, usize)> = cell
                    .iter()
                    .map(|&v| {
                        let below = self.p.down_row(v);
                        let above = self.p.up_row(v);
                        let mut key = Vec::with_capacity(2 * masks.len());
                        for m in &masks {
                            key.push(and_count(below, m) as u16);
                            key.push(and_count(above, m) as u16);
                        }
                        (key, v)
                    })
                    .collect();
                keyed.sort();
                let before = next.len();
                let mut i = 0;
                while i < keyed.len() {
                    let mut j = i + 1;
                    while j < keyed.len() && keyed[j].0 == keyed[i].0 {
                        j += 1;
                    }
                    next.push(keyed[i..j].iter().map(|&(_, v)| v).collect());
                    i = j;
                }
                if next.len() - before > 1 {
                    split = true;
                }
            }
            *cells = next;
            if !split {
                return;
            }
        }
    }

    /// Returns the depth to backjump to, if an automorphism allows it.
    fn descend(&mut self, mut cells: Partition, prefix: &mut Vec<usize>) -> Option<usize> {
        self.refine(&mut cells);
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            return self.leaf(&cells, prefix);
        };
        let depth = prefix.len();
        let candidates = cells[target].clone();
        let mut tried: Vec<usize> = Vec::new();
        for &w in &candidates {
            if !tried.is_empty() && self.same_orbit(prefix, &tried, w) {
                continue;
            }
            tried.push(w);
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(vec![w]);
            child.push(candidates.iter().copied().filter(|&v| v != w).collect());
            child.extend_from_slice(&cells[target + 1..]);
            prefix.push(w);
            let jump = self.descend(child, prefix);
            prefix.pop();
            if let Some(level) = jump {
                if level < depth {
                    return Some(level);
                }
            }
        }
        None
    }

    fn leaf(&mut self, cells: &Partition, prefix: &[usize]) -> Option<usize> {
        let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let code = self.p.relation_bits(&order);
        match &self.best {
            None => {
                self.best = Some((code, order, prefix.to_vec()));
                None
            }
            Some((best_code, best_order, best_prefix)) => match code.cmp(best_code) {
                Ordering::Less => {
                    self.best = Some((code, order, prefix.to_vec()));
                    None
                }
                Ordering::Greater => None,
                Ordering::Equal => {
                    let mut gamma = vec![0usize; order.len()];
                    for (i, &v) in order.iter().enumerate() {
                        gamma[v] = best_order[i];
                    }
                    let common = prefix
                        .iter()
                        .zip(best_prefix.iter())
                        .take_while(|(a, b)| a == b)
                        .count();
                    self.automorphisms.push(gamma);
                    Some(common)
                }
            },
        }
    }

    /// Whether `w` shares an orbit with a tried vertex under the known
    /// automorphisms that fix `prefix` pointwise.
    fn same_orbit(&self, prefix: &[usize], tried: &[usize], w: usize) -> bool {
        let n = self.p.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut any = false;
        for g in &self.automorphisms {
            if prefix.iter().any(|&v| g[v] != v) {
                continue;
            }
            any = true;
            for (v, &gv) in g.iter().enumerate() {
                let (a, b) = (find(&mut parent, v), find(&mut parent, gv));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        if !any {
            return false;
        }
        let root = find(&mut parent, w);
        tried.iter().any(|&t| find(&mut parent, t) == root)
    }
}

/// Canonical ordering of the elements: position `i` holds the old index.
pub fn canonical_labeling(p: &FinitePoset) -> Vec<usize> {
    canonical_search(p).1
}

fn canonical_search(p: &FinitePoset) -> (Vec<u8>, Vec<usize>) {
    let mut search = Search {
        p,
        best: None,
        automorphisms: Vec::new(),
    };
    let levels = p.levels();
    let mut initial: Vec<usize> = (0..p.len()).collect();
    initial.sort_by_key(|&v| (levels[v], v));
    let mut cells: Partition = Vec::new();
    for v in initial {
        match cells.last_mut() {
            Some(c) if levels[c[0]] == levels[v] => c.push(v),
            _ => cells.push(vec![v]),
        }
    }
    search.descend(cells, &mut Vec::new());
    let (code, order, _) = search.best.expect("search visits at least one leaf");
    (code, order)
}

/// The canonical form of `p`.
pub fn canonical_form(p: &FinitePoset) -> CanonicalForm {
    CanonicalForm {
        code: canonical_search(p).0,
    }
}

/// `p` relabelled into canonical order, labels dropped.
pub fn canonical_poset(p: &FinitePoset) -> FinitePoset {
    p.permuted(&canonical_labeling(p)).without_labels()
}

/// Order isomorphism, which for finite T0 spaces is homeomorphism.
pub fn is_homeomorphic(p: &FinitePoset, q: &FinitePoset) -> bool {
    p.len() == q.len() && canonical_form(p) == canonical_form(q)
}

impl FinitePoset {
    pub fn canonical_form(&self) -> CanonicalForm {
        canonical_form(self)
    }

    pub fn is_homeomorphic(&self, other: &FinitePoset) -> bool {
        is_homeomorphic(self, other)
    }
}

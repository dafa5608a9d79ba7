//! Finite T0 spaces represented by their specialization order.
//!
//! A finite T0 space is the same thing as a finite partial order: `x <= y`
//! iff `x` lies in the minimal open set `U_y`. Open sets are down-sets and
//! closed sets are up-sets. Elements are dense indices `0..n`; labels are
//! carried for display only and never affect any computation.
//!
//! Height counts points, not edges: a chain `x_1 < ... < x_h` has height `h`.

use std::collections::VecDeque;
use std::fmt;

use crate::bits::BitMatrix;
use crate::error::{Error, Result};

/// A nonempty finite partially ordered set.
#[derive(Clone)]
pub struct FinitePoset {
    n: usize,
    /// Row `x` holds every `y` with `x <= y`.
    up: BitMatrix,
    /// Row `x` holds every `y` with `y <= x`.
    down: BitMatrix,
    labels: Option<Vec<String>>,
}

/// The cover relation of a poset: `(x, y)` means `x` is covered by `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HasseDiagram {
    pub n: usize,
    pub covers: Vec<(usize, usize)>,
    pub labels: Option<Vec<String>>,
}

impl HasseDiagram {
    pub fn new(n: usize, covers: Vec<(usize, usize)>) -> Self {
        HasseDiagram {
            n,
            covers,
            labels: None,
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        self.labels = Some(labels);
        self
    }
}

impl FinitePoset {
    fn from_up(up: BitMatrix, n: usize, labels: Option<Vec<String>>) -> Self {
        let down = up.transpose();
        FinitePoset {
            n,
            up,
            down,
            labels,
        }
    }

    /// Builds a poset from an explicit relation, checking the order axioms.
    pub fn from_relation(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        let mut up = BitMatrix::new(n);
        for x in 0..n {
            for y in 0..n {
                if leq(x, y) {
                    up.set(x, y);
                }
            }
        }
        for x in 0..n {
            if !up.get(x, x) {
                return Err(Error::NotAPartialOrder(format!("{x} <= {x} fails")));
            }
            for y in up.row_iter(x) {
                if y != x && up.get(y, x) {
                    return Err(Error::NotAPartialOrder(format!(
                        "{x} <= {y} and {y} <= {x}"
                    )));
                }
                for z in up.row_iter(y) {
                    if !up.get(x, z) {
                        return Err(Error::NotAPartialOrder(format!(
                            "{x} <= {y} <= {z} but not {x} <= {z}"
                        )));
                    }
                }
            }
        }
        Ok(Self::from_up(up, n, None))
    }

    /// Reflexive-transitive closure of a (not necessarily reduced) cover set.
    pub fn from_covers(h: &HasseDiagram) -> Result<Self> {
        let n = h.n;
        if n == 0 {
            return Err(Error::Empty);
        }
        let mut succ = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        for &(x, y) in &h.covers {
            for v in [x, y] {
                if v >= n {
                    return Err(Error::Index { index: v, n });
                }
            }
            if x == y {
                return Err(Error::Cycle(x));
            }
            succ[x].push(y);
            indeg[y] += 1;
        }
        // Kahn's algorithm; leftovers lie on a cycle.
        let mut order = Vec::with_capacity(n);
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &succ[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        if order.len() < n {
            let stuck = (0..n).find(|&v| indeg[v] > 0).unwrap_or(0);
            return Err(Error::Cycle(stuck));
        }
        let mut up = BitMatrix::new(n);
        for &v in order.iter().rev() {
            up.set(v, v);
            for &w in &succ[v] {
                up.or_row_into(w, v);
            }
        }
        Ok(Self::from_up(up, n, h.labels.clone()))
    }

    /// Convenience wrapper over [`FinitePoset::from_covers`].
    pub fn from_cover_pairs(n: usize, covers: &[(usize, usize)]) -> Result<Self> {
        Self::from_covers(&HasseDiagram::new(n, covers.to_vec()))
    }

    pub fn chain(k: usize) -> Result<Self> {
        Self::from_relation(k, |x, y| x <= y)
    }

    pub fn antichain(k: usize) -> Result<Self> {
        Self::from_relation(k, |x, y| x == y)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n, "label count must match element count");
        self.labels = Some(labels);
        self
    }

    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of `x`: its label, or its index.
    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    /// Index of the element carrying `label`.
    pub fn index_of(&self, label: &str) -> Option<usize> {
        match &self.labels {
            Some(l) => l.iter().position(|s| s == label),
            None => label.parse().ok().filter(|&i| i < self.n),
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    /// Always false; the empty space cannot be constructed.
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn le(&self, x: usize, y: usize) -> bool {
        self.up.get(x, y)
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.up.get(x, y)
    }

    #[inline]
    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.up.get(x, y) || self.up.get(y, x)
    }

    pub(crate) fn up_row(&self, x: usize) -> &[u64] {
        self.up.row(x)
    }

    pub(crate) fn down_row(&self, x: usize) -> &[u64] {
        self.down.row(x)
    }

    fn check(&self, x: usize) -> Result<()> {
        if x < self.n {
            Ok(())
        } else {
            Err(Error::Index {
                index: x,
                n: self.n,
            })
        }
    }

    /// Minimal open set `U_x = {y : y <= x}`, sorted.
    pub fn min_open(&self, x: usize) -> Result<Vec<usize>> {
        self.check(x)?;
        Ok(self.down.row_iter(x).collect())
    }

    /// Closure of `{x}`, i.e. the up-set `{y : y >= x}`, sorted.
    pub fn closure(&self, x: usize) -> Result<Vec<usize>> {
        self.check(x)?;
        Ok(self.up.row_iter(x).collect())
    }

    /// Number of points strictly below `x`.
    pub fn below_count(&self, x: usize) -> usize {
        self.down.row_count(x) - 1
    }

    /// Number of points strictly above `x`.
    pub fn above_count(&self, x: usize) -> usize {
        self.up.row_count(x) - 1
    }

    pub fn is_maximal(&self, x: usize) -> bool {
        self.above_count(x) == 0
    }

    pub fn is_minimal(&self, x: usize) -> bool {
        self.below_count(x) == 0
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.n).filter(|&x| self.is_maximal(x)).collect()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.n).filter(|&x| self.is_minimal(x)).collect()
    }

    /// Elements covering `x`.
    pub fn upper_covers(&self, x: usize) -> Vec<usize> {
        self.up
            .row_iter(x)
            .filter(|&y| {
                y != x
                    && !self
                        .up
                        .row_iter(x)
                        .any(|z| z != x && z != y && self.le(z, y))
            })
            .collect()
    }

    /// Elements covered by `x`.
    pub fn lower_covers(&self, x: usize) -> Vec<usize> {
        self.down
            .row_iter(x)
            .filter(|&y| {
                y != x
                    && !self
                        .down
                        .row_iter(x)
                        .any(|z| z != x && z != y && self.le(y, z))
            })
            .collect()
    }

    pub fn is_cover(&self, x: usize, y: usize) -> bool {
        self.lt(x, y) && !(0..self.n).any(|z| self.lt(x, z) && self.lt(z, y))
    }

    /// Transitive reduction, covers sorted lexicographically.
    pub fn hasse(&self) -> HasseDiagram {
        let mut covers = Vec::new();
        for x in 0..self.n {
            for y in self.upper_covers(x) {
                covers.push((x, y));
            }
        }
        covers.sort_unstable();
        HasseDiagram {
            n: self.n,
            covers,
            labels: self.labels.clone(),
        }
    }

    pub fn cover_count(&self) -> usize {
        (0..self.n).map(|x| self.upper_covers(x).len()).sum()
    }

    /// Same points, reversed order.
    pub fn opposite(&self) -> FinitePoset {
        FinitePoset {
            n: self.n,
            up: self.down.clone(),
            down: self.up.clone(),
            labels: self.labels.clone(),
        }
    }

    /// A linear extension: every element appears after everything below it.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&x| (self.down.row_count(x), x));
        order
    }

    /// Level of each element: points in a longest chain ending there, minus one.
    pub fn levels(&self) -> Vec<usize> {
        let mut level = vec![0usize; self.n];
        for x in self.linear_extension() {
            level[x] = self
                .down
                .row_iter(x)
                .filter(|&y| y != x)
                .map(|y| level[y] + 1)
                .max()
                .unwrap_or(0);
        }
        level
    }

    /// Number of points in a longest chain.
    pub fn height(&self) -> usize {
        self.levels().into_iter().max().unwrap_or(0) + 1
    }

    /// Components of the comparability graph, each sorted, ordered by least element.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < members.len() {
                let v = members[i];
                i += 1;
                for w in self.up.row_iter(v).chain(self.down.row_iter(v)) {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }

    /// Iterator over all nonempty chains, each listed in increasing order.
    pub fn chains(&self) -> Chains<'_> {
        Chains {
            p: self,
            stack: Vec::new(),
            next_root: 0,
        }
    }

    /// Subspace on `keep` (in the given order), with labels carried over.
    pub fn induced(&self, keep: &[usize]) -> Result<FinitePoset> {
        if keep.is_empty() {
            return Err(Error::Empty);
        }
        for &k in keep {
            self.check(k)?;
        }
        let m = keep.len();
        let mut up = BitMatrix::new(m);
        for (i, &a) in keep.iter().enumerate() {
            for (j, &b) in keep.iter().enumerate() {
                if self.le(a, b) {
                    up.set(i, j);
                }
            }
        }
        let labels = self
            .labels
            .as_ref()
            .map(|l| keep.iter().map(|&k| l[k].clone()).collect());
        Ok(Self::from_up(up, m, labels))
    }

    /// The subspace `X \ {x}`.
    pub fn remove_point(&self, x: usize) -> Result<FinitePoset> {
        self.check(x)?;
        if self.n == 1 {
            return Err(Error::LastPoint);
        }
        let keep: Vec<usize> = (0..self.n).filter(|&y| y != x).collect();
        self.induced(&keep)
    }

    /// Relabels so that new element `i` is old element `order[i]`.
    pub fn permuted(&self, order: &[usize]) -> FinitePoset {
        assert_eq!(order.len(), self.n);
        self.induced(order)
            .expect("a permutation of a nonempty space")
    }

    /// Disjoint union; labels are kept only when both sides carry them.
    pub fn disjoint_union(&self, other: &FinitePoset) -> FinitePoset {
        let n = self.n + other.n;
        let mut up = BitMatrix::new(n);
        for x in 0..self.n {
            for y in self.up.row_iter(x) {
                up.set(x, y);
            }
        }
        for x in 0..other.n {
            for y in other.up.row_iter(x) {
                up.set(self.n + x, self.n + y);
            }
        }
        let labels = match (&self.labels, &other.labels) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).cloned().collect()),
            _ => None,
        };
        Self::from_up(up, n, labels)
    }

    /// Adds one new element whose strict down-set is `below`, which must be a down-set.
    pub fn extend_above(&self, below: &[usize]) -> Result<FinitePoset> {
        let n = self.n + 1;
        let mut up = BitMatrix::new(n);
        for x in 0..self.n {
            for y in self.up.row_iter(x) {
                up.set(x, y);
            }
        }
        up.set(self.n, self.n);
        for &b in below {
            self.check(b)?;
            for a in self.down.row_iter(b) {
                if !below.contains(&a) {
                    return Err(Error::NotAPartialOrder(format!(
                        "{a} <= {b} but {a} is not below the new element"
                    )));
                }
            }
            up.set(b, self.n);
        }
        Ok(Self::from_up(up, n, None))
    }

    /// `n` followed by the row-major order bits, skipping the diagonal.
    pub(crate) fn relation_bits(&self, order: &[usize]) -> Vec<u8> {
        let n = self.n;
        let mut out = Vec::with_capacity(4 + (n * n).div_ceil(8));
        out.extend_from_slice(&(n as u32).to_be_bytes());
        let mut acc = 0u8;
        let mut fill = 0;
        for i in 0..n {
            let row = self.up.row(order[i]);
            for (j, &oj) in order.iter().enumerate() {
                if i == j {
                    continue;
                }
                acc = (acc << 1) | ((row[oj / 64] >> (oj % 64)) & 1) as u8;
                fill += 1;
                if fill == 8 {
                    out.push(acc);
                    acc = 0;
                    fill = 0;
                }
            }
        }
        if fill > 0 {
            out.push(acc << (8 - fill));
        }
        out
    }

    /// Inverse of [`FinitePoset::relation_bits`] with the identity order.
    pub(crate) fn from_relation_bits(code: &[u8]) -> Result<FinitePoset> {
        if code.len() < 4 {
            return Err(Error::NotAPartialOrder("truncated code".into()));
        }
        let n = u32::from_be_bytes([code[0], code[1], code[2], code[3]]) as usize;
        let body = &code[4..];
        if body.len() < (n * n.saturating_sub(1)).div_ceil(8) {
            return Err(Error::NotAPartialOrder("truncated code".into()));
        }
        let bit = |k: usize| body[k / 8] >> (7 - k % 8) & 1 == 1;
        Self::from_relation(n, |x, y| {
            if x == y {
                return true;
            }
            let k = x * (n - 1) + if y > x { y - 1 } else { y };
            bit(k)
        })
    }
}

impl PartialEq for FinitePoset {
    /// Equality of the labelled relations (not isomorphism).
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.up == other.up
    }
}

impl Eq for FinitePoset {}

impl fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h = self.hasse();
        let covers: Vec<String> = h
            .covers
            .iter()
            .map(|&(x, y)| format!("{}<{}", self.label(x), self.label(y)))
            .collect();
        write!(
            f,
            "FinitePoset(n={}, covers=[{}])",
            self.n,
            covers.join(", ")
        )
    }
}

/// Depth-first enumeration of nonempty chains.
pub struct Chains<'a> {
    p: &'a FinitePoset,
    /// Current chain paired with the next candidate to try above its top.
    stack: Vec<(usize, usize)>,
    next_root: usize,
}

impl Iterator for Chains<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let n = self.p.n;
        loop {
            match self.stack.last_mut() {
                None => {
                    if self.next_root >= n {
                        return None;
                    }
                    let r = self.next_root;
                    self.next_root += 1;
                    self.stack.push((r, 0));
                    return Some(vec![r]);
                }
                Some((top, cursor)) => {
                    let top = *top;
                    let start = *cursor;
                    match (start..n).find(|&y| self.p.lt(top, y)) {
                        Some(y) => {
                            *cursor = y + 1;
                            self.stack.push((y, 0));
                            return Some(self.stack.iter().map(|&(v, _)| v).collect());
                        }
                        None => {
                            self.stack.pop();
                        }
                    }
                }
            }
        }
    }
}

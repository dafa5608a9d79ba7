//! Fundamental groups of finite T0 spaces.
//!
//! Loops are sequences of Hasse-diagram edges (H-paths); two loops are
//! close when one is obtained from the other by inserting or deleting a
//! closed pair of monotonic paths. The group of such loops is isomorphic to
//! the edge-path group of the order complex, which is what
//! [`edge_path_presentation`] presents: one generator per comparable pair
//! outside a BFS spanning tree, one relator per 3-chain.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::poset::FinitePoset;
use crate::snf::invariant_factors;

/// An oriented edge of the Hasse diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HEdge {
    pub origin: usize,
    pub end: usize,
}

impl HEdge {
    pub fn new(origin: usize, end: usize) -> Self {
        HEdge { origin, end }
    }

    pub fn inverse(self) -> Self {
        HEdge {
            origin: self.end,
            end: self.origin,
        }
    }

    pub fn is_valid(&self, p: &FinitePoset) -> bool {
        self.origin < p.len()
            && self.end < p.len()
            && (p.is_cover(self.origin, self.end) || p.is_cover(self.end, self.origin))
    }
}

/// A composable sequence of H-edges starting at `start`.
///
/// The empty path starts and ends at `start`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPath {
    start: usize,
    edges: Vec<HEdge>,
}

impl HPath {
    pub fn empty(start: usize) -> Self {
        HPath {
            start,
            edges: Vec::new(),
        }
    }

    pub fn new(p: &FinitePoset, start: usize, edges: Vec<HEdge>) -> Result<Self> {
        if start >= p.len() {
            return Err(Error::Index {
                index: start,
                n: p.len(),
            });
        }
        let mut at = start;
        for (i, e) in edges.iter().enumerate() {
            if !e.is_valid(p) {
                return Err(Error::IllFormedPath(format!(
                    "edge {i} ({}, {}) is not an H-edge",
                    e.origin, e.end
                )));
            }
            if e.origin != at {
                return Err(Error::IllFormedPath(format!(
                    "edge {i} starts at {} but the path is at {at}",
                    e.origin
                )));
            }
            at = e.end;
        }
        Ok(HPath { start, edges })
    }

    /// The path visiting `vertices` in order.
    pub fn through(p: &FinitePoset, vertices: &[usize]) -> Result<Self> {
        let start = *vertices
            .first()
            .ok_or_else(|| Error::IllFormedPath("no vertices".into()))?;
        let edges = vertices
            .windows(2)
            .map(|w| HEdge::new(w[0], w[1]))
            .collect();
        Self::new(p, start, edges)
    }

    pub fn origin(&self) -> usize {
        self.start
    }

    pub fn end(&self) -> usize {
        self.edges.last().map_or(self.start, |e| e.end)
    }

    pub fn edges(&self) -> &[HEdge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_loop(&self) -> bool {
        self.origin() == self.end()
    }

    /// Vertex visited before edge `i` (or the end, for `i == len`).
    pub fn vertex_at(&self, i: usize) -> usize {
        if i == 0 {
            self.start
        } else {
            self.edges[i - 1].end
        }
    }

    /// The reversed path.
    pub fn inverse(&self) -> HPath {
        HPath {
            start: self.end(),
            edges: self.edges.iter().rev().map(|e| e.inverse()).collect(),
        }
    }

    pub fn concat(&self, other: &HPath) -> Result<HPath> {
        if self.end() != other.origin() {
            return Err(Error::IllFormedPath(format!(
                "cannot compose a path ending at {} with one starting at {}",
                self.end(),
                other.origin()
            )));
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Ok(HPath {
            start: self.start,
            edges,
        })
    }
}

/// All edges ascend, or all descend. The empty path is monotonic.
pub fn is_monotonic(p: &FinitePoset, path: &HPath) -> bool {
    let up = |e: &HEdge| p.lt(e.origin, e.end);
    path.edges.iter().all(up) || path.edges.iter().all(|e| !up(e))
}

/// One closeness step between loops `x1 x2 x3 x4` and `x1 x4`.
#[derive(Clone, Debug)]
pub enum CloseMove {
    /// Insert the monotonic paths `first` then `second` before edge `at`.
    Insert {
        at: usize,
        first: Vec<HEdge>,
        second: Vec<HEdge>,
    },
    /// Delete the consecutive monotonic segments of the given lengths
    /// starting at edge `at`.
    Delete {
        at: usize,
        first_len: usize,
        second_len: usize,
    },
}

/// Applies a closeness move, checking that it is well formed.
pub fn close_move(p: &FinitePoset, path: &HPath, mv: &CloseMove) -> Result<HPath> {
    if !path.is_loop() {
        return Err(Error::IllFormedMove("input is not a loop".into()));
    }
    match mv {
        CloseMove::Insert { at, first, second } => {
            if *at > path.len() {
                return Err(Error::IllFormedMove(format!("position {at} past the end")));
            }
            let v = path.vertex_at(*at);
            let a =
                HPath::new(p, v, first.clone()).map_err(|e| Error::IllFormedMove(e.to_string()))?;
            let b = HPath::new(p, a.end(), second.clone())
                .map_err(|e| Error::IllFormedMove(e.to_string()))?;
            check_pair(p, &a, &b, v)?;
            let mut edges = path.edges[..*at].to_vec();
            edges.extend_from_slice(first);
            edges.extend_from_slice(second);
            edges.extend_from_slice(&path.edges[*at..]);
            Ok(HPath {
                start: path.start,
                edges,
            })
        }
        CloseMove::Delete {
            at,
            first_len,
            second_len,
        } => {
            let stop = at + first_len + second_len;
            if stop > path.len() {
                return Err(Error::IllFormedMove(format!(
                    "segment ends past {}",
                    path.len()
                )));
            }
            let v = path.vertex_at(*at);
            let a = HPath {
                start: v,
                edges: path.edges[*at..at + first_len].to_vec(),
            };
            let b = HPath {
                start: a.end(),
                edges: path.edges[at + first_len..stop].to_vec(),
            };
            check_pair(p, &a, &b, v)?;
            let mut edges = path.edges[..*at].to_vec();
            edges.extend_from_slice(&path.edges[stop..]);
            Ok(HPath {
                start: path.start,
                edges,
            })
        }
    }
}

fn check_pair(p: &FinitePoset, a: &HPath, b: &HPath, v: usize) -> Result<()> {
    if !is_monotonic(p, a) || !is_monotonic(p, b) {
        return Err(Error::IllFormedMove(
            "inserted segments must be monotonic".into(),
        ));
    }
    if b.end() != v {
        return Err(Error::IllFormedMove(format!(
            "segments run from {v} to {} instead of closing up",
            b.end()
        )));
    }
    Ok(())
}

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn inv(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }
}

pub type Word = Vec<Letter>;

/// Cancels adjacent `x x^-1` pairs.
pub fn free_reduce(word: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(word.len());
    for &l in word {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn cyclic_reduce(word: &[Letter]) -> Word {
    let w = free_reduce(word);
    let mut lo = 0;
    let mut hi = w.len();
    while hi - lo >= 2 && w[lo] == w[hi - 1].inv() {
        lo += 1;
        hi -= 1;
    }
    w[lo..hi].to_vec()
}

pub fn invert_word(word: &[Letter]) -> Word {
    word.iter().rev().map(|l| l.inv()).collect()
}

/// A finitely presented group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generators: usize,
    pub relators: Vec<Word>,
}

impl GroupPresentation {
    pub fn new(generators: usize, relators: Vec<Word>) -> Self {
        let relators = relators
            .iter()
            .map(|r| free_reduce(r))
            .filter(|r| !r.is_empty())
            .collect();
        GroupPresentation {
            generators,
            relators,
        }
    }

    /// Rank of the free group when there are no relators.
    pub fn free_rank(&self) -> Option<usize> {
        self.relators.is_empty().then_some(self.generators)
    }

    fn exponent_rows(&self) -> Vec<(usize, usize, i64)> {
        let mut entries = Vec::new();
        for (r, word) in self.relators.iter().enumerate() {
            for l in word {
                entries.push((r, l.generator, if l.inverse { -1 } else { 1 }));
            }
        }
        entries
    }

    /// Abelianization as free rank plus torsion invariant factors.
    pub fn abelianization(&self) -> (usize, Vec<u64>) {
        let factors =
            invariant_factors(self.relators.len(), self.generators, &self.exponent_rows());
        let torsion = factors
            .iter()
            .filter_map(|d| u64::try_from(d).ok())
            .filter(|&d| d > 1)
            .collect();
        (self.generators - factors.len(), torsion)
    }

    /// Whether two words have the same image in the abelianization.
    pub fn abelian_equal(&self, a: &[Letter], b: &[Letter]) -> bool {
        let mut diff = vec![0i64; self.generators];
        for l in a {
            diff[l.generator] += if l.inverse { -1 } else { 1 };
        }
        for l in b {
            diff[l.generator] -= if l.inverse { -1 } else { 1 };
        }
        if diff.iter().all(|&d| d == 0) {
            return true;
        }
        // diff lies in the relator lattice iff appending it changes neither
        // the rank nor the index of the lattice.
        let rows = self.relators.len();
        let base = invariant_factors(rows, self.generators, &self.exponent_rows());
        let mut extended = self.exponent_rows();
        extended.extend(
            diff.iter()
                .enumerate()
                .filter(|(_, &d)| d != 0)
                .map(|(g, &d)| (rows, g, d)),
        );
        let bigger = invariant_factors(rows + 1, self.generators, &extended);
        base.len() == bigger.len()
            && base.iter().product::<num_bigint::BigInt>()
                == bigger.iter().product::<num_bigint::BigInt>()
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = (0..self.generators).map(|g| format!("g{g}")).collect();
        let rels: Vec<String> = self
            .relators
            .iter()
            .map(|w| {
                w.iter()
                    .map(|l| {
                        if l.inverse {
                            format!("g{}^-1", l.generator)
                        } else {
                            format!("g{}", l.generator)
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        if rels.is_empty() {
            write!(f, "⟨{}⟩", gens.join(", "))
        } else {
            write!(f, "⟨{} | {}⟩", gens.join(", "), rels.join(", "))
        }
    }
}

/// BFS spanning tree of the comparability graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTree {
    pub root: usize,
    pub parent: Vec<Option<usize>>,
}

impl SpanningTree {
    /// Neighbours are visited in increasing index order.
    pub fn bfs(p: &FinitePoset, root: usize) -> Result<Self> {
        if root >= p.len() {
            return Err(Error::Index {
                index: root,
                n: p.len(),
            });
        }
        let mut parent = vec![None; p.len()];
        let mut seen = vec![false; p.len()];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for w in 0..p.len() {
                if !seen[w] && p.comparable(v, w) {
                    seen[w] = true;
                    parent[w] = Some(v);
                    queue.push_back(w);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::NotConnected);
        }
        Ok(SpanningTree { root, parent })
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.parent[a] == Some(b) || self.parent[b] == Some(a)
    }
}

/// The edge-path group presentation with its generator bookkeeping.
#[derive(Clone, Debug)]
pub struct EdgePathPresentation {
    pub presentation: GroupPresentation,
    pub tree: SpanningTree,
    /// Generator for each comparable pair `(lower, upper)` outside the tree.
    pub generator_of: HashMap<(usize, usize), usize>,
}

impl EdgePathPresentation {
    /// Word of a step between comparable points.
    fn step(&self, p: &FinitePoset, a: usize, b: usize) -> Option<Letter> {
        let (lo, hi, inverse) = if p.lt(a, b) {
            (a, b, false)
        } else {
            (b, a, true)
        };
        self.generator_of
            .get(&(lo, hi))
            .map(|&g| Letter::new(g, inverse))
    }

    /// Image of an H-loop at the basepoint, freely reduced.
    pub fn loop_to_word(&self, p: &FinitePoset, path: &HPath) -> Result<Word> {
        if path.origin() != self.tree.root || !path.is_loop() {
            return Err(Error::IllFormedPath(format!(
                "not a loop at basepoint {}",
                self.tree.root
            )));
        }
        let checked = HPath::new(p, path.origin(), path.edges.clone())?;
        let word: Word = checked
            .edges
            .iter()
            .filter_map(|e| self.step(p, e.origin, e.end))
            .collect();
        Ok(free_reduce(&word))
    }
}

/// Presentation of the edge-path group of `K(p)` based at `x0`.
pub fn edge_path_presentation(p: &FinitePoset, x0: usize) -> Result<EdgePathPresentation> {
    let tree = SpanningTree::bfs(p, x0)?;
    let n = p.len();
    let mut generator_of = HashMap::new();
    let mut count = 0;
    for a in 0..n {
        for b in a + 1..n {
            if p.comparable(a, b) && !tree.contains(a, b) {
                let key = if p.lt(a, b) { (a, b) } else { (b, a) };
                generator_of.insert(key, count);
                count += 1;
            }
        }
    }
    let mut out = EdgePathPresentation {
        presentation: GroupPresentation::new(count, Vec::new()),
        tree,
        generator_of,
    };
    let mut relators = Vec::new();
    for c in p.chains().filter(|c| c.len() == 3) {
        let (x, y, z) = (c[0], c[1], c[2]);
        let word: Word = [(x, y), (y, z), (z, x)]
            .iter()
            .filter_map(|&(a, b)| out.step(p, a, b))
            .collect();
        relators.push(word);
    }
    out.presentation = GroupPresentation::new(count, relators);
    Ok(out)
}

/// Normal form of a relator up to rotation and inversion.
fn normalize_relator(word: &[Letter]) -> Word {
    let w = cyclic_reduce(word);
    let inv = invert_word(&w);
    let mut best = w.clone();
    for cand in [&w, &inv] {
        for k in 0..cand.len() {
            let mut r = cand[k..].to_vec();
            r.extend_from_slice(&cand[..k]);
            if r < best {
                best = r;
            }
        }
    }
    best
}

/// Simplifies by eliminating generators that occur exactly once in some
/// relator, repeatedly, shortest relator first.
pub fn tietze_simplify(g: &GroupPresentation) -> GroupPresentation {
    let mut gens = g.generators;
    let mut rels: Vec<Word> = g.relators.clone();
    loop {
        rels = rels
            .iter()
            .map(|r| normalize_relator(r))
            .filter(|r| !r.is_empty())
            .collect();
        rels.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        rels.dedup();
        let found = rels.iter().enumerate().find_map(|(ri, r)| {
            let mut counts = HashMap::new();
            for l in r {
                *counts.entry(l.generator).or_insert(0usize) += 1;
            }
            r.iter()
                .position(|l| counts[&l.generator] == 1)
                .map(|pos| (ri, pos))
        });
        let Some((ri, pos)) = found else { break };
        let r = rels.remove(ri);
        let letter = r[pos];
        // Rotate so the letter comes first: letter * rest = 1.
        let rest: Word = r[pos + 1..].iter().chain(&r[..pos]).copied().collect();
        // generator = rest^-1, or rest when the letter is inverted
        let replacement = if letter.inverse {
            rest
        } else {
            invert_word(&rest)
        };
        let target = letter.generator;
        rels = rels
            .iter()
            .map(|w| {
                let mut out = Vec::with_capacity(w.len());
                for &l in w {
                    if l.generator == target {
                        if l.inverse {
                            out.extend(invert_word(&replacement));
                        } else {
                            out.extend_from_slice(&replacement);
                        }
                    } else {
                        out.push(l);
                    }
                }
                out
            })
            .collect();
        // Renumber generators above the eliminated one.
        for w in rels.iter_mut() {
            for l in w.iter_mut() {
                if l.generator > target {
                    l.generator -= 1;
                }
            }
        }
        gens -= 1;
    }
    GroupPresentation::new(gens, rels)
}

/// First Betti number from the abelianized edge-path presentation.
pub fn first_betti(p: &FinitePoset) -> Result<usize> {
    if !p.is_connected() {
        return Err(Error::NotConnected);
    }
    Ok(edge_path_presentation(p, 0)?
        .presentation
        .abelianization()
        .0)
}

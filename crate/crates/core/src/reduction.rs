//! Homotopy-preserving reductions of finite T0 spaces.
//!
//! Beat points and cores follow Stong: removing a beat point is a strong
//! deformation retraction, and iterating until none is left yields the core,
//! which is unique up to homeomorphism.
//!
//! The quotient reductions collapse a minimal open set `U_x` or a closure
//! `cl{x}` to one point. Their hypothesis (every intersection with another
//! `U_y`, respectively `cl{y}`, is empty or weakly contractible) is checked
//! here through the sufficient condition "empty or contractible".

use crate::canonical::is_homeomorphic;
use crate::error::{Error, Result};
use crate::poset::FinitePoset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BeatKind {
    /// The strict up-set has a minimum.
    Up,
    /// The strict down-set has a maximum.
    Down,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BeatPointReport {
    pub element: usize,
    pub kind: BeatKind,
    /// The unique upper (or lower) cover of `element`.
    pub witness: usize,
}

/// One run of beat-point removals from a source space down to its core.
#[derive(Clone, Debug)]
pub struct ReductionTrace {
    /// Removed elements in source indices, in removal order.
    pub removed: Vec<BeatPointReport>,
    /// Source index of each element of `final_space`.
    pub kept: Vec<usize>,
    pub final_space: FinitePoset,
}

/// Every beat point of `p`, sorted by element then kind.
///
/// A point that is both an up and a down beat point is listed twice.
pub fn beat_points(p: &FinitePoset) -> Vec<BeatPointReport> {
    let mut out = Vec::new();
    for x in 0..p.len() {
        if let [y] = p.upper_covers(x)[..] {
            out.push(BeatPointReport {
                element: x,
                kind: BeatKind::Up,
                witness: y,
            });
        }
        if let [y] = p.lower_covers(x)[..] {
            out.push(BeatPointReport {
                element: x,
                kind: BeatKind::Down,
                witness: y,
            });
        }
    }
    out
}

/// A minimal finite space is one without beat points.
pub fn is_minimal_finite_space(p: &FinitePoset) -> bool {
    (0..p.len()).all(|x| p.upper_covers(x).len() != 1 && p.lower_covers(x).len() != 1)
}

/// Core of `p`, removing the beat point of smallest source index each round.
pub fn core(p: &FinitePoset) -> ReductionTrace {
    core_by(p, |_| 0)
}

/// Core of `p` with a caller-chosen removal order.
///
/// `choose` receives the current beat points (in source indices, sorted)
/// and returns the position of the one to remove.
pub fn core_by(
    p: &FinitePoset,
    mut choose: impl FnMut(&[BeatPointReport]) -> usize,
) -> ReductionTrace {
    let mut current = p.clone();
    let mut kept: Vec<usize> = (0..p.len()).collect();
    let mut removed = Vec::new();
    loop {
        let beats: Vec<BeatPointReport> = beat_points(&current)
            .into_iter()
            .map(|b| BeatPointReport {
                element: kept[b.element],
                kind: b.kind,
                witness: kept[b.witness],
            })
            .collect();
        if beats.is_empty() {
            break;
        }
        let pick = beats[choose(&beats).min(beats.len() - 1)];
        let local = kept
            .iter()
            .position(|&k| k == pick.element)
            .expect("kept element");
        current = current
            .remove_point(local)
            .expect("a beat point is never the last point");
        kept.remove(local);
        removed.push(pick);
    }
    ReductionTrace {
        removed,
        kept,
        final_space: current,
    }
}

impl ReductionTrace {
    /// Replays the removals on `source` and returns the result.
    pub fn replay(&self, source: &FinitePoset) -> Result<FinitePoset> {
        let mut keep: Vec<usize> = (0..source.len()).collect();
        for r in &self.removed {
            keep.retain(|&k| k != r.element);
        }
        source.induced(&keep)
    }
}

pub fn is_contractible(p: &FinitePoset) -> bool {
    core(p).final_space.len() == 1
}

/// Homotopy equivalence of finite T0 spaces: homeomorphic cores.
pub fn is_homotopy_equivalent(p: &FinitePoset, q: &FinitePoset) -> bool {
    is_homeomorphic(&core(p).final_space, &core(q).final_space)
}

/// The quotient `X / A` with the induced order, plus the projection.
///
/// Fails if the quotient preorder is not antisymmetric.
pub fn quotient(p: &FinitePoset, collapse: &[usize]) -> Result<(FinitePoset, Vec<usize>)> {
    let n = p.len();
    if collapse.is_empty() {
        return Err(Error::Empty);
    }
    let mut in_a = vec![false; n];
    for &a in collapse {
        if a >= n {
            return Err(Error::Index { index: a, n });
        }
        in_a[a] = true;
    }
    let rep = *collapse.iter().min().unwrap();
    let mut projection = vec![0usize; n];
    let mut next = 0;
    let mut members: Vec<usize> = Vec::new();
    for x in 0..n {
        if in_a[x] && x != rep {
            continue;
        }
        projection[x] = next;
        members.push(x);
        next += 1;
    }
    for x in 0..n {
        if in_a[x] {
            projection[x] = projection[rep];
        }
    }
    let m = next;
    // Image of the order, then transitive closure.
    let mut rel = vec![vec![false; m]; m];
    for x in 0..n {
        for y in 0..n {
            if p.le(x, y) {
                rel[projection[x]][projection[y]] = true;
            }
        }
    }
    for k in 0..m {
        for i in 0..m {
            if rel[i][k] {
                for j in 0..m {
                    if rel[k][j] {
                        rel[i][j] = true;
                    }
                }
            }
        }
    }
    for i in 0..m {
        for j in i + 1..m {
            if rel[i][j] && rel[j][i] {
                return Err(Error::QuotientNotT0(format!(
                    "{} and {} become identified",
                    p.label(members[i]),
                    p.label(members[j])
                )));
            }
        }
    }
    let q = FinitePoset::from_relation(m, |i, j| rel[i][j])?;
    let q = match p.labels() {
        Some(_) => q.with_labels(members.iter().map(|&x| p.label(x)).collect()),
        None => q,
    };
    Ok((q, projection))
}

fn empty_or_contractible(p: &FinitePoset, set: &[usize]) -> bool {
    set.is_empty() || is_contractible(&p.induced(set).expect("nonempty subset"))
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|x| b.contains(x)).collect()
}

/// Open reduction `X -> X / U_x`, when its hypothesis holds.
pub fn osaki_open_reduction(p: &FinitePoset, x: usize) -> Result<Option<FinitePoset>> {
    let ux = p.min_open(x)?;
    for y in 0..p.len() {
        if !empty_or_contractible(p, &intersect(&ux, &p.min_open(y)?)) {
            return Ok(None);
        }
    }
    Ok(Some(quotient(p, &ux)?.0))
}

/// Closed reduction `X -> X / cl{x}`, the dual of the open reduction.
pub fn osaki_closed_reduction(p: &FinitePoset, x: usize) -> Result<Option<FinitePoset>> {
    Ok(osaki_open_reduction(&p.opposite(), x)?.map(|q| q.opposite()))
}

/// Outcome of both quotient reductions at one point.
#[derive(Clone, Debug)]
pub struct OsakiEntry {
    pub element: usize,
    pub open: Option<FinitePoset>,
    pub closed: Option<FinitePoset>,
}

impl OsakiEntry {
    /// The open reduction applies and actually removes points.
    pub fn open_shrinks(&self, n: usize) -> bool {
        self.open.as_ref().is_some_and(|q| q.len() < n)
    }

    pub fn closed_shrinks(&self, n: usize) -> bool {
        self.closed.as_ref().is_some_and(|q| q.len() < n)
    }
}

pub fn osaki_table(p: &FinitePoset) -> Vec<OsakiEntry> {
    (0..p.len())
        .map(|x| OsakiEntry {
            element: x,
            open: osaki_open_reduction(p, x).expect("index in range"),
            closed: osaki_closed_reduction(p, x).expect("index in range"),
        })
        .collect()
}

/// Result of checking a map against the cover by minimal open sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct McCordReport {
    /// For each target point `y`, whether `f^-1(U_y)` is contractible.
    pub preimage_contractible: Vec<bool>,
}

impl McCordReport {
    pub fn passes(&self) -> bool {
        self.preimage_contractible.iter().all(|&b| b)
    }

    pub fn failures(&self) -> Vec<usize> {
        (0..self.preimage_contractible.len())
            .filter(|&y| !self.preimage_contractible[y])
            .collect()
    }
}

/// Checks that `f` is continuous and every `f^-1(U_y)` is contractible.
///
/// Passing proves `f` is a weak homotopy equivalence (McCord's criterion
/// for the basis-like cover `{U_y}`). Failing proves nothing.
pub fn mccord_check(src: &FinitePoset, dst: &FinitePoset, f: &[usize]) -> Result<McCordReport> {
    if f.len() != src.len() {
        return Err(Error::MapArity {
            got: f.len(),
            expected: src.len(),
        });
    }
    for &fx in f {
        if fx >= dst.len() {
            return Err(Error::Index {
                index: fx,
                n: dst.len(),
            });
        }
    }
    for x in 0..src.len() {
        for y in 0..src.len() {
            if src.le(x, y) && !dst.le(f[x], f[y]) {
                return Err(Error::NotContinuous(x, y));
            }
        }
    }
    let preimage_contractible = (0..dst.len())
        .map(|y| {
            let pre: Vec<usize> = (0..src.len()).filter(|&x| dst.le(f[x], y)).collect();
            !pre.is_empty() && is_contractible(&src.induced(&pre).expect("nonempty"))
        })
        .collect();
    Ok(McCordReport {
        preimage_contractible,
    })
}

/// Result of [`flatten_to_height2`].
#[derive(Clone, Debug)]
pub struct Flattened {
    pub space: FinitePoset,
    /// Source index of each element of `space`.
    pub kept: Vec<usize>,
    /// Basepoint in `space`'s indices.
    pub base: usize,
}

/// Removes non-extremal points other than the basepoint until the height
/// is at most two.
///
/// If the basepoint itself is the last non-extremal point, it is moved to
/// its least comparable neighbour before being removed; the fundamental
/// group of a connected space does not depend on the basepoint.
pub fn flatten_to_height2(p: &FinitePoset, x0: usize) -> Result<Flattened> {
    if x0 >= p.len() {
        return Err(Error::Index {
            index: x0,
            n: p.len(),
        });
    }
    if !p.is_connected() {
        return Err(Error::NotConnected);
    }
    let mut space = p.clone();
    let mut kept: Vec<usize> = (0..p.len()).collect();
    let mut base = x0;
    loop {
        let inner: Vec<usize> = (0..space.len())
            .filter(|&x| !space.is_maximal(x) && !space.is_minimal(x))
            .collect();
        let Some(&first) = inner.first() else { break };
        let victim = match inner.iter().find(|&&x| x != base) {
            Some(&x) => x,
            None => {
                base = (0..space.len())
                    .find(|&y| y != first && space.comparable(y, first))
                    .expect("a non-extremal point has neighbours");
                first
            }
        };
        space = space.remove_point(victim)?;
        kept.remove(victim);
        if base > victim {
            base -= 1;
        }
    }
    Ok(Flattened { space, kept, base })
}

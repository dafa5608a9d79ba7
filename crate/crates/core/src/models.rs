//! Finite models of spheres and wedges of circles.
//!
//! The sphere model of dimension `n` is the iterated non-Hausdorff
//! suspension of the two-point discrete space: `2n + 2` points in `n + 1`
//! levels of two incomparable points, each below both points of every
//! higher level. A beat-point-free space other than the point has at least
//! `2 * height` points, with equality only for the sphere model.
//!
//! For the wedge of `n` circles, a space is a minimal finite model iff it
//! has height two, `min{i + j : (i-1)(j-1) >= n}` points and exactly
//! `#points + n - 1` Hasse edges.

use crate::canonical::is_homeomorphic;
use crate::complex::homology;
use crate::enumerate::PosetCatalog;
use crate::error::{Error, Result};
use crate::poset::FinitePoset;
use crate::reduction::is_minimal_finite_space;

fn fresh_label(labels: &[String], base: &str) -> String {
    let mut name = base.to_string();
    while labels.contains(&name) {
        name.push('_');
    }
    name
}

/// Adds two incomparable points above every point of `p`.
///
/// Labelled inputs get the new labels `plus` and `minus` (with underscores
/// appended on collision).
pub fn nh_suspension(p: &FinitePoset) -> FinitePoset {
    let n = p.len();
    let q = FinitePoset::from_relation(n + 2, |x, y| {
        if x < n && y < n {
            p.le(x, y)
        } else if y >= n {
            x < n || x == y
        } else {
            false
        }
    })
    .expect("suspension of a poset is a poset");
    match p.labels() {
        Some(labels) => {
            let mut labels = labels.to_vec();
            let plus = fresh_label(&labels, "plus");
            labels.push(plus);
            let minus = fresh_label(&labels, "minus");
            labels.push(minus);
            q.with_labels(labels)
        }
        None => q,
    }
}

/// The `(2n + 2)`-point model of the `n`-sphere; level `i` holds `a{i}`, `b{i}`.
pub fn sphere_model(n: usize) -> FinitePoset {
    let mut p = FinitePoset::antichain(2).expect("two points");
    for _ in 0..n {
        p = nh_suspension(&p);
    }
    let labels = (0..=n)
        .flat_map(|i| [format!("a{i}"), format!("b{i}")])
        .collect();
    p.with_labels(labels)
}

/// Minimal points `y1..yj` (indices `0..j`) below maximal points `x1..xi`.
pub fn bipartite_model(i: usize, j: usize) -> Result<FinitePoset> {
    if i == 0 || j == 0 {
        return Err(Error::Empty);
    }
    let p = FinitePoset::from_relation(i + j, |a, b| a == b || (a < j && b >= j))?;
    let labels = (1..=j)
        .map(|k| format!("y{k}"))
        .chain((1..=i).map(|k| format!("x{k}")))
        .collect();
    Ok(p.with_labels(labels))
}

/// Smallest `m` with `m * m >= n`.
fn ceil_sqrt(n: usize) -> usize {
    let mut m = (n as f64).sqrt() as usize;
    while m * m < n {
        m += 1;
    }
    while m > 0 && (m - 1) * (m - 1) >= n {
        m -= 1;
    }
    m
}

/// Smallest `m` with `m * (m - 1) >= n`, i.e. `ceil((1 + sqrt(1 + 4n)) / 2)`.
fn ceil_half_root(n: usize) -> usize {
    let mut m = ceil_sqrt(n);
    while m * m.saturating_sub(1) < n {
        m += 1;
    }
    while m > 1 && (m - 1) * (m - 2) >= n {
        m -= 1;
    }
    m
}

/// `min{2 ceil(sqrt(n) + 1), 2 ceil((1 + sqrt(1 + 4n)) / 2) + 1}` in exact
/// integer arithmetic.
pub fn wedge_size_closed_form(n: usize) -> usize {
    (2 * (ceil_sqrt(n) + 1)).min(2 * ceil_half_root(n) + 1)
}

/// `min{i + j : (i - 1)(j - 1) >= n}` by direct search.
pub fn wedge_size_direct(n: usize) -> usize {
    (2..=n + 1)
        .map(|i| {
            let j = 1 + n.div_ceil(i - 1);
            i + j
        })
        .min()
        .unwrap_or(4)
}

/// Point count of a minimal finite model of the wedge of `n >= 1` circles.
pub fn minimal_wedge_size(n: usize) -> usize {
    let direct = wedge_size_direct(n);
    assert_eq!(
        direct,
        wedge_size_closed_form(n),
        "closed form disagrees at n = {n}"
    );
    direct
}

/// The three conditions characterizing minimal finite models of a wedge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeModelCertificate {
    pub n: usize,
    pub size: usize,
    pub edges: usize,
    pub height_two: bool,
    pub size_minimal: bool,
    pub edge_count: bool,
    pub connected: bool,
    /// First Betti number of the order complex.
    pub b1: usize,
}

impl WedgeModelCertificate {
    pub fn satisfied(&self) -> bool {
        self.height_two && self.size_minimal && self.edge_count
    }

    /// When all three conditions hold, the space is connected with `b1 = n`.
    pub fn consistent(&self) -> bool {
        !self.satisfied() || (self.connected && self.b1 == self.n)
    }
}

pub fn check_wedge_model(p: &FinitePoset, n: usize) -> WedgeModelCertificate {
    let size = p.len();
    let edges = p.cover_count();
    WedgeModelCertificate {
        n,
        size,
        edges,
        height_two: p.height() == 2,
        size_minimal: size == minimal_wedge_size(n),
        edge_count: edges == size + n - 1,
        connected: p.is_connected(),
        b1: homology(p).betti(1),
    }
}

/// Every isomorphism class of minimal finite models of the wedge of `n` circles.
pub fn enumerate_wedge_minimal_models(
    n: usize,
    catalog: &mut PosetCatalog,
) -> Result<Vec<FinitePoset>> {
    let size = minimal_wedge_size(n);
    Ok(catalog
        .level(size)?
        .iter()
        .filter(|p| p.height() == 2 && p.cover_count() == size + n - 1)
        .cloned()
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeScanRow {
    pub n: usize,
    pub size: usize,
    pub edges: usize,
    pub models: usize,
    pub is_square: bool,
}

impl WedgeScanRow {
    /// The model is unique exactly when `n` is a perfect square.
    pub fn uniqueness_matches(&self) -> bool {
        (self.models == 1) == self.is_square
    }
}

pub fn wedge_uniqueness_scan(
    max_n: usize,
    catalog: &mut PosetCatalog,
) -> Result<Vec<WedgeScanRow>> {
    (1..=max_n)
        .map(|n| {
            let size = minimal_wedge_size(n);
            let models = enumerate_wedge_minimal_models(n, catalog)?.len();
            let r = ceil_sqrt(n);
            Ok(WedgeScanRow {
                n,
                size,
                edges: size + n - 1,
                models,
                is_square: r * r == n,
            })
        })
        .collect()
}

/// Beat-point-free classes with exactly twice their height in points, at one height.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqualityCase {
    pub height: usize,
    pub classes: usize,
    pub all_spheres: bool,
}

#[derive(Clone, Debug)]
pub struct SphereTheoremReport {
    pub h: usize,
    /// Largest point count scanned (`2h`).
    pub max_points: usize,
    pub scanned: usize,
    pub minimal_spaces: usize,
    /// Beat-point-free non-singletons with fewer than `2 * height` points.
    pub lower_bound_violators: Vec<FinitePoset>,
    /// Beat-point-free spaces with `2 * height` points that are not spheres.
    pub equality_violators: Vec<FinitePoset>,
    pub equality_cases: Vec<EqualityCase>,
}

impl SphereTheoremReport {
    pub fn confirmed(&self) -> bool {
        self.lower_bound_violators.is_empty()
            && self.equality_violators.is_empty()
            && self
                .equality_cases
                .iter()
                .all(|c| c.classes == 1 && c.all_spheres)
    }
}

/// Exhaustive check over every class with at most `2h` points.
pub fn verify_sphere_theorem(h: usize, catalog: &mut PosetCatalog) -> Result<SphereTheoremReport> {
    let max_points = 2 * h;
    let all = catalog.up_to(max_points)?;
    let mut report = SphereTheoremReport {
        h,
        max_points,
        scanned: all.len(),
        minimal_spaces: 0,
        lower_bound_violators: Vec::new(),
        equality_violators: Vec::new(),
        equality_cases: (1..=h)
            .map(|height| EqualityCase {
                height,
                classes: 0,
                all_spheres: true,
            })
            .collect(),
    };
    for p in all {
        if !is_minimal_finite_space(&p) {
            continue;
        }
        report.minimal_spaces += 1;
        if p.len() == 1 {
            continue;
        }
        let height = p.height();
        if p.len() < 2 * height {
            report.lower_bound_violators.push(p);
        } else if p.len() == 2 * height {
            let case = &mut report.equality_cases[height - 1];
            case.classes += 1;
            if !is_homeomorphic(&p, &sphere_model(height - 1)) {
                case.all_spheres = false;
                report.equality_violators.push(p);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::euler_char;
    use crate::enumerate::EnumConfig;
    use crate::reduction::{beat_points, is_contractible};

    #[test]
    fn suspension_of_small_spaces() {
        let s0 = FinitePoset::antichain(2).unwrap();
        let s1 = nh_suspension(&s0);
        assert_eq!(s1.len(), 4);
        assert!(is_homeomorphic(&s1, &sphere_model(1)));
        let cone = nh_suspension(&FinitePoset::chain(1).unwrap());
        assert_eq!(cone.len(), 3);
        assert!(is_contractible(&cone));
        let d3 = FinitePoset::antichain(3).unwrap();
        let y = nh_suspension(&d3);
        assert_eq!((y.len(), y.cover_count()), (5, 6));
    }

    #[test]
    fn suspension_labels_avoid_collisions() {
        let p = FinitePoset::antichain(1)
            .unwrap()
            .with_labels(vec!["plus".into()]);
        let q = nh_suspension(&p);
        assert_eq!(q.labels().unwrap(), &["plus", "plus_", "minus"]);
    }

    #[test]
    fn sphere_models() {
        let s0 = sphere_model(0);
        assert_eq!(s0.len(), 2);
        assert_eq!(s0.height(), 1);
        let s1 = sphere_model(1);
        assert_eq!((s1.len(), s1.cover_count()), (4, 4));
        let s2 = sphere_model(2);
        assert_eq!(euler_char(&s2), 2);
        assert_eq!(homology(&s2).betti, vec![1, 0, 1]);
        for n in 0..5 {
            let s = sphere_model(n);
            assert_eq!(s.len(), 2 * n + 2);
            assert_eq!(s.height(), n + 1);
            assert!(beat_points(&s).is_empty());
            assert!(is_homeomorphic(&s, &s.opposite()));
        }
    }

    #[test]
    fn bipartite_models() {
        let b = bipartite_model(2, 3).unwrap();
        assert_eq!(b.height(), 2);
        assert_eq!(b.cover_count(), 6);
        assert_eq!(homology(&b).betti(1), 2);
        assert!(is_contractible(&bipartite_model(1, 1).unwrap()));
        let b = bipartite_model(2, 4).unwrap();
        assert_eq!((b.len(), b.cover_count(), homology(&b).betti(1)), (6, 8, 3));
        assert!(bipartite_model(0, 2).is_err());
    }

    #[test]
    fn wedge_sizes() {
        assert_eq!(minimal_wedge_size(1), 4);
        assert_eq!(minimal_wedge_size(2), 5);
        assert_eq!(minimal_wedge_size(3), 6);
        assert_eq!(minimal_wedge_size(4), 6);
        for n in 1..200 {
            assert_eq!(wedge_size_direct(n), wedge_size_closed_form(n), "n = {n}");
        }
    }

    #[test]
    fn integer_roots() {
        for n in 0..500usize {
            let r = ceil_sqrt(n);
            assert!(r * r >= n && (r == 0 || (r - 1) * (r - 1) < n));
            let m = ceil_half_root(n);
            // Matches the floating-point formula away from rounding hazards.
            let x = (1.0 + (1.0 + 4.0 * n as f64).sqrt()) / 2.0;
            if (x - x.round()).abs() > 1e-9 {
                assert_eq!(m, x.ceil() as usize, "n = {n}");
            }
            assert!(m * m.saturating_sub(1) >= n);
        }
    }

    #[test]
    fn certificates() {
        let c = check_wedge_model(&bipartite_model(2, 4).unwrap(), 3);
        assert!(c.satisfied() && c.consistent());
        let c = check_wedge_model(&sphere_model(1), 1);
        assert!(c.satisfied() && c.consistent());
        let c = check_wedge_model(&bipartite_model(3, 3).unwrap(), 3);
        assert!(c.height_two && c.size_minimal && !c.edge_count);
        assert_eq!((c.edges, c.b1), (9, 4));
    }

    #[test]
    fn small_wedge_model_counts() {
        let mut cat = PosetCatalog::new(EnumConfig::default());
        let one = enumerate_wedge_minimal_models(1, &mut cat).unwrap();
        assert_eq!(one.len(), 1);
        assert!(is_homeomorphic(&one[0], &sphere_model(1)));
        let two = enumerate_wedge_minimal_models(2, &mut cat).unwrap();
        assert_eq!(two.len(), 2);
        let x = bipartite_model(2, 3).unwrap();
        assert!(two.iter().any(|p| is_homeomorphic(p, &x)));
        assert!(two.iter().any(|p| is_homeomorphic(p, &x.opposite())));
    }

    #[test]
    fn sphere_theorem_at_height_two() {
        let mut cat = PosetCatalog::new(EnumConfig::default());
        let r = verify_sphere_theorem(2, &mut cat).unwrap();
        assert!(r.confirmed());
        assert_eq!(r.scanned, 1 + 2 + 5 + 16);
        assert_eq!(
            r.equality_cases[1],
            EqualityCase {
                height: 2,
                classes: 1,
                all_spheres: true
            }
        );
    }

    #[test]
    fn cap_propagates() {
        let mut cat = PosetCatalog::new(EnumConfig::with_cap(5).unwrap());
        assert!(matches!(
            verify_sphere_theorem(3, &mut cat),
            Err(Error::CapExceeded { .. })
        ));
    }
}

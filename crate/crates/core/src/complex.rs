//! Order complexes and their integral homology.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::One;

use crate::poset::FinitePoset;
use crate::snf::invariant_factors;

/// A finite abstract simplicial complex.
///
/// Faces are sorted vertex lists, grouped by dimension and sorted
/// lexicographically within each dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: usize,
    faces: Vec<Vec<Vec<usize>>>,
}

impl SimplicialComplex {
    /// Downward closure of the given faces. Every vertex `0..vertices` is
    /// added as a 0-face.
    pub fn from_faces(vertices: usize, generators: impl IntoIterator<Item = Vec<usize>>) -> Self {
        let mut seen: Vec<std::collections::HashSet<Vec<usize>>> = Vec::new();
        let push = |face: Vec<usize>, seen: &mut Vec<std::collections::HashSet<Vec<usize>>>| {
            let d = face.len() - 1;
            while seen.len() <= d {
                seen.push(Default::default());
            }
            seen[d].insert(face)
        };
        for v in 0..vertices {
            push(vec![v], &mut seen);
        }
        for mut g in generators {
            g.sort_unstable();
            g.dedup();
            if g.is_empty() {
                continue;
            }
            assert!(g.iter().all(|&v| v < vertices), "face vertex out of range");
            let k = g.len();
            // All nonempty subsets.
            for mask in 1u64..(1u64 << k) {
                let sub: Vec<usize> = (0..k)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| g[i])
                    .collect();
                push(sub, &mut seen);
            }
        }
        let faces = seen
            .into_iter()
            .map(|s| {
                let mut v: Vec<Vec<usize>> = s.into_iter().collect();
                v.sort();
                v
            })
            .collect();
        SimplicialComplex { vertices, faces }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    /// Largest face size minus one; `-1` only for a complex with no vertices.
    pub fn dim(&self) -> isize {
        self.faces.len() as isize - 1
    }

    /// Faces of dimension `d`.
    pub fn faces(&self, d: usize) -> &[Vec<usize>] {
        self.faces.get(d).map(|f| f.as_slice()).unwrap_or(&[])
    }

    pub fn all_faces(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.faces.iter().flatten()
    }

    pub fn contains(&self, face: &[usize]) -> bool {
        let d = face.len().wrapping_sub(1);
        self.faces(d)
            .binary_search_by(|f| f.as_slice().cmp(face))
            .is_ok()
    }

    /// Face counts by dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        self.faces.iter().map(|f| f.len()).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        alternating_sum(&self.f_vector())
    }

    /// One face per line, space-separated vertex indices.
    pub fn to_face_list(&self) -> String {
        let mut out = String::new();
        for f in self.all_faces() {
            let words: Vec<String> = f.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "{}", words.join(" "));
        }
        out
    }

    /// Integral simplicial homology.
    pub fn homology(&self) -> HomologySummary {
        let top = self.faces.len();
        // factors[k]: invariant factors of the boundary map C_k -> C_{k-1}.
        let mut factors: Vec<Vec<BigInt>> = vec![Vec::new(); top + 1];
        for k in 1..top {
            let index: HashMap<&[usize], usize> = self.faces[k - 1]
                .iter()
                .enumerate()
                .map(|(i, f)| (f.as_slice(), i))
                .collect();
            let mut entries = Vec::new();
            for (col, face) in self.faces[k].iter().enumerate() {
                for drop in 0..face.len() {
                    let sub: Vec<usize> = face
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != drop)
                        .map(|(_, &v)| v)
                        .collect();
                    let row = index[sub.as_slice()];
                    let sign = if drop % 2 == 0 { 1 } else { -1 };
                    entries.push((row, col, sign));
                }
            }
            factors[k] = invariant_factors(self.faces[k - 1].len(), self.faces[k].len(), &entries);
        }
        let betti = (0..top)
            .map(|k| self.faces[k].len() - factors[k].len() - factors[k + 1].len())
            .collect();
        let torsion = (0..top)
            .map(|k| {
                factors[k + 1]
                    .iter()
                    .filter(|d| !d.is_one())
                    .cloned()
                    .collect()
            })
            .collect();
        HomologySummary { betti, torsion }
    }
}

/// Betti numbers and torsion coefficients by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologySummary {
    pub betti: Vec<usize>,
    /// Invariant factors greater than one, per degree.
    pub torsion: Vec<Vec<BigInt>>,
}

impl HomologySummary {
    pub fn euler_characteristic(&self) -> i64 {
        alternating_sum(&self.betti)
    }

    pub fn betti(&self, k: usize) -> usize {
        self.betti.get(k).copied().unwrap_or(0)
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.iter().all(|t| t.is_empty())
    }
}

fn alternating_sum(xs: &[usize]) -> i64 {
    xs.iter()
        .enumerate()
        .map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) })
        .sum()
}

/// The order complex `K(X)`: simplices are the nonempty chains.
pub fn order_complex(p: &FinitePoset) -> SimplicialComplex {
    let mut faces: Vec<Vec<Vec<usize>>> = vec![Vec::new(); p.height()];
    for mut c in p.chains() {
        c.sort_unstable();
        faces[c.len() - 1].push(c);
    }
    for f in faces.iter_mut() {
        f.sort();
    }
    SimplicialComplex {
        vertices: p.len(),
        faces,
    }
}

/// Euler characteristic as the signed count of nonempty chains.
pub fn euler_char(p: &FinitePoset) -> i64 {
    p.chains()
        .map(|c| if c.len() % 2 == 1 { 1 } else { -1 })
        .sum()
}

pub fn homology(p: &FinitePoset) -> HomologySummary {
    order_complex(p).homology()
}

impl FinitePoset {
    pub fn euler_char(&self) -> i64 {
        euler_char(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn suspension_s0() -> FinitePoset {
        FinitePoset::from_cover_pairs(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap()
    }

    fn wedge_five() -> FinitePoset {
        FinitePoset::from_relation(5, |x, y| x == y || (x < 3 && y >= 3)).unwrap()
    }

    #[test]
    fn chain_gives_full_simplex() {
        let k = order_complex(&FinitePoset::chain(3).unwrap());
        assert_eq!(k.f_vector(), vec![3, 3, 1]);
        assert_eq!(k.dim(), 2);
        assert!(k.contains(&[0, 1, 2]));
        let h = k.homology();
        assert_eq!(h.betti, vec![1, 0, 0]);
    }

    #[test]
    fn suspension_of_s0_is_a_square() {
        let k = order_complex(&suspension_s0());
        assert_eq!(k.f_vector(), vec![4, 4]);
        assert_eq!(
            k.faces(1),
            &[vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]]
        );
        assert_eq!(k.homology().betti, vec![1, 1]);
        assert_eq!(euler_char(&suspension_s0()), 0);
    }

    #[test]
    fn wedge_model_is_k23() {
        let k = order_complex(&wedge_five());
        assert_eq!(k.f_vector(), vec![5, 6]);
        assert_eq!(k.homology().betti, vec![1, 2]);
        assert_eq!(euler_char(&wedge_five()), -1);
    }

    #[test]
    fn antichain_and_singleton() {
        assert_eq!(
            order_complex(&FinitePoset::antichain(4).unwrap()).f_vector(),
            vec![4]
        );
        assert_eq!(euler_char(&FinitePoset::chain(1).unwrap()), 1);
        assert_eq!(homology(&FinitePoset::antichain(3).unwrap()).betti, vec![3]);
    }

    #[test]
    fn complex_is_self_dual() {
        let p = wedge_five();
        assert_eq!(order_complex(&p), order_complex(&p.opposite()));
    }

    #[test]
    fn torsion_is_detected() {
        // Minimal 6-vertex triangulation of the real projective plane.
        let rp2 = SimplicialComplex::from_faces(
            6,
            [
                [0, 1, 2],
                [0, 2, 3],
                [0, 3, 4],
                [0, 4, 5],
                [0, 5, 1],
                [1, 2, 4],
                [2, 3, 5],
                [3, 4, 1],
                [4, 5, 2],
                [5, 1, 3],
            ]
            .map(|f| f.to_vec()),
        );
        assert_eq!(rp2.f_vector(), vec![6, 15, 10]);
        let h = rp2.homology();
        assert_eq!(h.betti, vec![1, 0, 0]);
        assert_eq!(h.torsion[1], vec![BigInt::from(2)]);
        assert!(h.torsion[0].is_empty() && h.torsion[2].is_empty());
    }

    #[test]
    fn face_list_export() {
        let k = order_complex(&FinitePoset::chain(2).unwrap());
        assert_eq!(k.to_face_list(), "0\n1\n0 1\n");
    }
}

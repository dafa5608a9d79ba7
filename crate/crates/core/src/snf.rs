//! Smith normal form over the integers, invariant factors only.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Nonzero invariant factors `d_1 | d_2 | ...` of an integer matrix, each
/// positive. Their count is the rank.
pub fn invariant_factors(rows: usize, cols: usize, entries: &[(usize, usize, i64)]) -> Vec<BigInt> {
    let mut m: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); cols]; rows];
    for &(r, c, v) in entries {
        m[r][c] += v;
    }
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Pivot: smallest nonzero absolute value in the trailing block.
        let mut pivot: Option<(usize, usize)> = None;
        for (i, row) in m.iter().enumerate().skip(t) {
            for (j, v) in row.iter().enumerate().skip(t) {
                if !v.is_zero() && pivot.is_none_or(|(pi, pj)| v.abs() < m[pi][pj].abs()) {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = &m[i][t] / &m[t][t];
                if !q.is_zero() {
                    for j in t..cols {
                        let d = &q * &m[t][j];
                        m[i][j] -= d;
                    }
                }
                if !m[i][t].is_zero() {
                    m.swap(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = &m[t][j] / &m[t][t];
                if !q.is_zero() {
                    for row in m.iter_mut().skip(t) {
                        let d = &q * &row[t];
                        row[j] -= d;
                    }
                }
                if !m[t][j].is_zero() {
                    for row in m.iter_mut() {
                        row.swap(t, j);
                    }
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Divisibility: fold any offending row into the pivot row.
            let offending =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&m[i][j] % &m[t][t]).is_zero()));
            match offending {
                Some(i) => {
                    for j in t..cols {
                        let v = m[i][j].clone();
                        m[t][j] += v;
                    }
                }
                None => break,
            }
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    diag
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(m: &[&[i64]]) -> (usize, usize, Vec<(usize, usize, i64)>) {
        let mut e = Vec::new();
        for (i, r) in m.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                if v != 0 {
                    e.push((i, j, v));
                }
            }
        }
        (m.len(), m[0].len(), e)
    }

    fn factors(m: &[&[i64]]) -> Vec<i64> {
        let (r, c, e) = dense(m);
        invariant_factors(r, c, &e)
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect()
    }

    #[test]
    fn diagonal_needing_gcd_step() {
        assert_eq!(factors(&[&[2, 0], &[0, 3]]), vec![1, 6]);
        assert_eq!(
            factors(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]),
            vec![2, 6, 12]
        );
    }

    #[test]
    fn rank_deficient() {
        assert_eq!(factors(&[&[1, 1], &[1, 1]]), vec![1]);
        assert_eq!(factors(&[&[0, 0], &[0, 0]]), Vec::<i64>::new());
    }

    #[test]
    fn projective_plane_torsion() {
        // Boundary of a 2-cycle wrapping twice.
        assert_eq!(factors(&[&[2]]), vec![2]);
        assert_eq!(factors(&[&[1, 1, 1], &[1, 1, -1]]), vec![1, 2]);
    }
}

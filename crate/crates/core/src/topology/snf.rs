//! Smith normal form over the integers (diagonal only).

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

/// The nonzero diagonal entries of the Smith normal form, each positive and
/// dividing the next.
///
/// Pivots are chosen by least absolute value; entries are arbitrary precision.
pub fn invariant_factors(mut a: IntMatrix) -> Vec<BigInt> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = min_abs(&a, t..m, t..n) else {
            break;
        };
        a.swap(t, pi);
        swap_cols(&mut a, t, pj);
        loop {
            // reduce column t and row t by the pivot
            let mut clean = true;
            for i in t + 1..m {
                if !a[i][t].is_zero() {
                    let q = &a[i][t] / &a[t][t];
                    let pivot_row = a[t].clone();
                    for (x, p) in a[i][t..].iter_mut().zip(&pivot_row[t..]) {
                        *x -= &q * p;
                    }
                    clean &= a[i][t].is_zero();
                }
            }
            for j in t + 1..n {
                if !a[t][j].is_zero() {
                    let q = &a[t][j] / &a[t][t];
                    for row in a[t..].iter_mut() {
                        let p = row[t].clone();
                        row[j] -= &q * p;
                    }
                    clean &= a[t][j].is_zero();
                }
            }
            if !clean {
                // a smaller remainder exists in row or column t; move it to the pivot
                let (ci, cj) = min_abs_cross(&a, t, m, n);
                a.swap(t, ci);
                swap_cols(&mut a, t, cj);
                continue;
            }
            // divisibility of the remaining block
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !(&a[i][j] % &a[t][t]).is_zero()));
            match bad {
                Some(i) => {
                    let row = a[i].clone();
                    for (x, r) in a[t].iter_mut().zip(row) {
                        *x += r;
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    out
}

fn swap_cols(a: &mut IntMatrix, i: usize, j: usize) {
    if i != j {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
    }
}

fn min_abs(
    a: &IntMatrix,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            if a[i][j].is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn min_abs_cross(a: &IntMatrix, t: usize, m: usize, n: usize) -> (usize, usize) {
    let mut best = (t, t);
    let better = |x: &BigInt, cur: &BigInt| !x.is_zero() && (cur.is_zero() || x.abs() < cur.abs());
    for i in t..m {
        if better(&a[i][t], &a[best.0][best.1]) {
            best = (i, t);
        }
    }
    for j in t..n {
        if better(&a[t][j], &a[best.0][best.1]) {
            best = (t, j);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn factors(rows: &[&[i64]]) -> Vec<i64> {
        invariant_factors(mat(rows))
            .into_iter()
            .map(|x| i64::try_from(x).unwrap())
            .collect()
    }

    #[test]
    fn diagonal_needs_gcd_step() {
        assert_eq!(factors(&[&[2, 0], &[0, 3]]), vec![1, 6]);
        assert_eq!(factors(&[&[4, 0], &[0, 6]]), vec![2, 12]);
    }

    #[test]
    fn classic_example() {
        assert_eq!(
            factors(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]),
            vec![2, 6, 12]
        );
    }

    #[test]
    fn rank_deficient_and_empty() {
        assert_eq!(factors(&[&[1, 2], &[2, 4]]), vec![1]);
        assert_eq!(factors(&[&[0, 0]]), Vec::<i64>::new());
        assert!(invariant_factors(Vec::new()).is_empty());
    }

    #[test]
    fn large_entries() {
        let big = BigInt::from(3u64).pow(60);
        let a = vec![
            vec![big.clone(), BigInt::from(0)],
            vec![BigInt::from(0), big.clone() * 2],
        ];
        assert_eq!(invariant_factors(a), vec![big.clone(), big * 2]);
    }
}

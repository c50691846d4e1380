//! Dense Gaussian elimination over the coefficient field, for pulling
//! tensors back through a generator dictionary and for kernel bases.

use std::collections::BTreeSet;

use crate::lincomb::LinComb;
use crate::scalar::Scalar;

/// Row-reduced system `[A | b]` with A given by columns.
struct Reduced {
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<(usize, usize)>,
    ncols: usize,
}

fn matrix<K: Ord + Clone>(columns: &[LinComb<K>], target: Option<&LinComb<K>>) -> Vec<Vec<Scalar>> {
    let mut keys: BTreeSet<K> = BTreeSet::new();
    for c in columns.iter().chain(target) {
        keys.extend(c.keys().cloned());
    }
    keys.iter()
        .map(|k| {
            let mut row: Vec<Scalar> = columns.iter().map(|c| c.coeff(k)).collect();
            if let Some(t) = target {
                row.push(t.coeff(k));
            }
            row
        })
        .collect()
}

fn reduce(mut rows: Vec<Vec<Scalar>>, ncols: usize) -> Reduced {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inv().expect("nonzero pivot");
        let pivot_row: Vec<Scalar> = rows[r].iter().map(|x| x * &inv).collect();
        rows[r] = pivot_row.clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x = &*x - &(&f * p);
            }
        }
        pivots.push((r, col));
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    Reduced { rows, pivots, ncols }
}

/// Coefficients `x` with `Σ x_j columns[j] = target`, free variables set to
/// zero, or `None` if the system is inconsistent.
pub fn solve<K: Ord + Clone>(columns: &[LinComb<K>], target: &LinComb<K>) -> Option<Vec<Scalar>> {
    let n = columns.len();
    let red = reduce(matrix(columns, Some(target)), n);
    let pivot_rows: BTreeSet<usize> = red.pivots.iter().map(|&(r, _)| r).collect();
    for (i, row) in red.rows.iter().enumerate() {
        if !pivot_rows.contains(&i) && !row[n].is_zero() {
            return None;
        }
    }
    let mut x = vec![Scalar::zero(); n];
    for &(r, c) in &red.pivots {
        x[c] = red.rows[r][n].clone();
    }
    Some(x)
}

/// Basis of `{x : Σ x_j columns[j] = 0}`.
pub fn kernel<K: Ord + Clone>(columns: &[LinComb<K>]) -> Vec<Vec<Scalar>> {
    let n = columns.len();
    let red = reduce(matrix(columns, None), n);
    let pivot_cols: BTreeSet<usize> = red.pivots.iter().map(|&(_, c)| c).collect();
    let mut out = Vec::new();
    for free in (0..red.ncols).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![Scalar::zero(); n];
        v[free] = Scalar::one();
        for &(r, c) in &red.pivots {
            v[c] = -&red.rows[r][free];
        }
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lc(pairs: &[(u8, i64)]) -> LinComb<u8> {
        pairs.iter().map(|&(k, c)| (k, Scalar::from_int(c))).collect()
    }

    #[test]
    fn solves_consistent_system() {
        let cols = [lc(&[(0, 1), (1, 1)]), lc(&[(0, 1), (1, -1)])];
        let x = solve(&cols, &lc(&[(0, 3), (1, 1)])).unwrap();
        assert_eq!(x, vec![Scalar::from_int(2), Scalar::from_int(1)]);
    }

    #[test]
    fn rejects_inconsistent_system() {
        let cols = [lc(&[(0, 1)])];
        assert!(solve(&cols, &lc(&[(1, 1)])).is_none());
    }

    #[test]
    fn kernel_of_dependent_columns() {
        let cols = [lc(&[(0, 1)]), lc(&[(0, 2)]), lc(&[(1, 1)])];
        let k = kernel(&cols);
        assert_eq!(k.len(), 1);
        let combo: LinComb<u8> =
            cols.iter().zip(&k[0]).fold(LinComb::zero(), |acc, (c, x)| acc.add(&c.scale(x)));
        assert!(combo.is_zero());
    }
}

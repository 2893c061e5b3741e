//! Exact linear feasibility: find `x ≥ 0` with `A x = b`.
//!
//! Phase-1 simplex over rationals with Bland's rule, so it always terminates.

use num_traits::{Signed, Zero};

use crate::rational::Rational;

/// Returns a nonnegative solution of `a · x = b` if one exists.
///
/// `a` is row-major with every row the same length.
pub fn nonnegative_solution(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let rows = a.len();
    assert_eq!(rows, b.len(), "row count mismatch");
    let cols = a.first().map_or(0, Vec::len);
    assert!(a.iter().all(|r| r.len() == cols), "ragged constraint matrix");

    // Tableau columns: originals, then one artificial per row, then the rhs.
    let width = cols + rows + 1;
    let mut tableau: Vec<Vec<Rational>> = Vec::with_capacity(rows);
    for (i, (row, rhs)) in a.iter().zip(b).enumerate() {
        let flip = rhs.is_negative();
        let mut t = vec![Rational::zero(); width];
        for (j, v) in row.iter().enumerate() {
            t[j] = if flip { -v } else { v.clone() };
        }
        t[cols + i] = Rational::from_integer(1.into());
        t[width - 1] = if flip { -rhs } else { rhs.clone() };
        tableau.push(t);
    }
    let mut basis: Vec<usize> = (cols..cols + rows).collect();

    // Reduced costs of the phase-1 objective (sum of artificials), negated so
    // that a positive entry marks an improving column.
    let mut reduced = vec![Rational::zero(); width];
    for t in &tableau {
        for j in 0..cols {
            reduced[j] += &t[j];
        }
        reduced[width - 1] += &t[width - 1];
    }

    while let Some(enter) = (0..cols).find(|&j| reduced[j].is_positive()) {
        let mut leave: Option<(usize, Rational)> = None;
        for (i, t) in tableau.iter().enumerate() {
            if !t[enter].is_positive() {
                continue;
            }
            let ratio = &t[width - 1] / &t[enter];
            let better = match &leave {
                None => true,
                Some((l, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*l]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // The phase-1 objective is bounded below by zero, so some row must block.
        let (pivot_row, _) = leave.expect("phase-1 objective is bounded");
        pivot(&mut tableau, &mut reduced, pivot_row, enter);
        basis[pivot_row] = enter;
    }

    if !reduced[width - 1].is_zero() {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (i, &var) in basis.iter().enumerate() {
        if var < cols {
            x[var] = tableau[i][width - 1].clone();
        }
    }
    Some(x)
}

fn pivot(tableau: &mut [Vec<Rational>], reduced: &mut [Rational], row: usize, col: usize) {
    let p = tableau[row][col].clone();
    for v in tableau[row].iter_mut() {
        *v /= &p;
    }
    let pivot_row = tableau[row].clone();
    for (i, t) in tableau.iter_mut().enumerate() {
        if i == row || t[col].is_zero() {
            continue;
        }
        let factor = t[col].clone();
        for (v, pv) in t.iter_mut().zip(&pivot_row) {
            if !pv.is_zero() {
                *v -= &factor * pv;
            }
        }
    }
    let factor = reduced[col].clone();
    for (v, pv) in reduced.iter_mut().zip(&pivot_row) {
        if !pv.is_zero() {
            *v -= &factor * pv;
        }
    }
}

/// Checks `x ≥ 0` and `a · x = b` exactly.
pub fn verify_solution(a: &[Vec<Rational>], b: &[Rational], x: &[Rational]) -> bool {
    x.iter().all(|v| !v.is_negative())
        && a.iter().zip(b).all(|(row, rhs)| {
            row.len() == x.len() && row.iter().zip(x).map(|(r, v)| r * v).sum::<Rational>() == *rhs
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn r(v: &[(i64, i64)]) -> Vec<Rational> {
        v.iter().map(|&(n, d)| rat(n, d)).collect()
    }

    #[test]
    fn finds_convex_combination() {
        // λ1 (1,0) + λ2 (0,1) = (1/2,1/2), λ1 + λ2 = 1
        let a = vec![r(&[(1, 1), (0, 1)]), r(&[(0, 1), (1, 1)]), r(&[(1, 1), (1, 1)])];
        let b = r(&[(1, 2), (1, 2), (1, 1)]);
        let x = nonnegative_solution(&a, &b).unwrap();
        assert!(verify_solution(&a, &b, &x));
        assert_eq!(x, r(&[(1, 2), (1, 2)]));
    }

    #[test]
    fn detects_infeasibility() {
        // x1 + x2 = 1 and x1 + x2 = 2
        let a = vec![r(&[(1, 1), (1, 1)]), r(&[(1, 1), (1, 1)])];
        assert!(nonnegative_solution(&a, &r(&[(1, 1), (2, 1)])).is_none());
        // x1 = -1
        assert!(nonnegative_solution(&[r(&[(1, 1)])], &r(&[(-1, 1)])).is_none());
    }

    #[test]
    fn handles_negative_rhs_rows() {
        // -x1 = -1/3
        let x = nonnegative_solution(&[r(&[(-1, 1)])], &r(&[(-1, 3)])).unwrap();
        assert_eq!(x, r(&[(1, 3)]));
    }

    #[test]
    fn degenerate_redundant_rows() {
        let a = vec![r(&[(1, 1), (1, 1), (1, 1)]); 3];
        let b = r(&[(1, 1), (1, 1), (1, 1)]);
        let x = nonnegative_solution(&a, &b).unwrap();
        assert!(verify_solution(&a, &b, &x));
    }

    #[test]
    fn empty_system_is_feasible() {
        assert_eq!(nonnegative_solution(&[], &[]), Some(vec![]));
    }
}

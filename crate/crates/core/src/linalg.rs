//! Exact linear algebra: reduced row echelon form and nullspaces over the
//! rationals, and fraction-free (Bareiss) elimination for the generic rank
//! and determinant of polynomial matrices.

use num_traits::{One, Zero};

use crate::poly::{Context, Monomial, Polynomial};
use crate::rational::Rational;

/// Row-reduces `rows` in place to reduced row echelon form and returns the
/// pivot columns. Zero rows sink to the bottom.
pub fn rref(rows: &mut [Vec<Rational>]) -> Vec<usize> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pivot_row) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot_row);
        let inv = rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = &*x / &inv;
        }
        for i in 0..nrows {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for j in 0..ncols {
                    let delta = &factor * &rows[r][j];
                    rows[i][j] = &rows[i][j] - &delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == nrows {
            break;
        }
    }
    pivots
}

pub fn rank(matrix: &[Vec<Rational>]) -> usize {
    let mut rows = matrix.to_vec();
    rref(&mut rows).len()
}

/// Right-nullspace basis in reduced echelon form: one vector per free column,
/// with a unit at that column and zeros at the other free columns.
pub fn nullspace(matrix: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let ncols = matrix.first().map_or(0, Vec::len);
    let mut rows = matrix.to_vec();
    let pivots = rref(&mut rows);
    nullspace_from_rref(&rows, &pivots, ncols)
}

pub(crate) fn nullspace_from_rref(
    rows: &[Vec<Rational>],
    pivots: &[usize],
    ncols: usize,
) -> Vec<Vec<Rational>> {
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -rows[row][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Incrementally maintained reduced row echelon basis of a row space.
/// Feeding rows one at a time caps the working set at rank x width, which is
/// what keeps large ansatz systems affordable.
#[derive(Debug, Clone)]
pub struct RowEchelon {
    ncols: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl RowEchelon {
    pub fn new(ncols: usize) -> Self {
        RowEchelon { ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` against the basis and inserts the nonzero remainder.
    /// Returns true when the row enlarged the span.
    pub fn insert(&mut self, mut row: Vec<Rational>) -> bool {
        assert_eq!(row.len(), self.ncols);
        for (i, &pc) in self.pivots.iter().enumerate() {
            if !row[pc].is_zero() {
                let factor = row[pc].clone();
                for (x, y) in row.iter_mut().zip(&self.rows[i]) {
                    let delta = &factor * y;
                    *x = &*x - &delta;
                }
            }
        }
        let Some(pivot) = row.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = row[pivot].clone();
        for x in row.iter_mut() {
            *x = &*x / &inv;
        }
        // Back-eliminate so the stored basis stays fully reduced.
        for i in 0..self.rows.len() {
            if !self.rows[i][pivot].is_zero() {
                let factor = self.rows[i][pivot].clone();
                for (x, y) in self.rows[i].iter_mut().zip(&row) {
                    let delta = &factor * y;
                    *x = &*x - &delta;
                }
            }
        }
        let pos = self.pivots.iter().position(|&pc| pc > pivot).unwrap_or(self.pivots.len());
        self.pivots.insert(pos, pivot);
        self.rows.insert(pos, row);
        true
    }

    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        nullspace_from_rref(&self.rows, &self.pivots, self.ncols)
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
}

// ---------------------------------------------------------------------------
// Fraction-free elimination over polynomial entries
// ---------------------------------------------------------------------------

/// Pivot choice for symbolic elimination: minimal total degree, ties broken
/// by the monomial order of the leading term, then by position.
fn pick_pivot(a: &[Vec<Polynomial>], step: usize) -> Option<(usize, usize)> {
    let mut best: Option<(u32, Monomial, usize, usize)> = None;
    for i in step..a.len() {
        for j in step..a[i].len() {
            let entry = &a[i][j];
            if entry.is_zero() {
                continue;
            }
            let deg = entry.total_degree();
            let lead = entry.leading().expect("nonzero").0.clone();
            let better = match &best {
                None => true,
                Some((bd, bl, _, _)) => deg < *bd || (deg == *bd && lead < *bl),
            };
            if better {
                best = Some((deg, lead, i, j));
            }
        }
    }
    best.map(|(_, _, i, j)| (i, j))
}

fn swap_columns(a: &mut [Vec<Polynomial>], x: usize, y: usize) {
    if x != y {
        for row in a.iter_mut() {
            row.swap(x, y);
        }
    }
}

/// Bareiss elimination with full pivoting. Returns the rank and, for square
/// input, the determinant (sign-adjusted for the swaps performed).
fn bareiss(matrix: &[Vec<Polynomial>], ctx: &Context) -> (usize, Polynomial) {
    let mut a = matrix.to_vec();
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut prev = Polynomial::one(ctx);
    let mut sign = false;
    let mut rank = 0;
    for step in 0..nrows.min(ncols) {
        let Some((pi, pj)) = pick_pivot(&a, step) else {
            break;
        };
        if pi != step {
            a.swap(step, pi);
            sign = !sign;
        }
        if pj != step {
            swap_columns(&mut a, step, pj);
            sign = !sign;
        }
        for i in step + 1..nrows {
            for j in step + 1..ncols {
                let num = a[step][step].mul(&a[i][j]).sub(&a[i][step].mul(&a[step][j]));
                a[i][j] = num
                    .div_exact(&prev)
                    .expect("fraction-free elimination: previous pivot divides exactly");
            }
            a[i][step] = Polynomial::zero(ctx);
        }
        prev = a[step][step].clone();
        rank += 1;
    }
    let det = if rank == nrows && nrows == ncols {
        if sign {
            prev.neg()
        } else {
            prev
        }
    } else {
        Polynomial::zero(ctx)
    };
    (rank, det)
}

/// Rank of a polynomial matrix over the fraction field (the generic rank).
/// The fraction-free recurrence makes the result independent of pivot order.
pub fn generic_rank_symbolic(matrix: &[Vec<Polynomial>], ctx: &Context) -> usize {
    bareiss(matrix, ctx).0
}

/// Exact determinant of a square polynomial matrix by Bareiss elimination.
pub fn symbolic_det(matrix: &[Vec<Polynomial>], ctx: &Context) -> Polynomial {
    let n = matrix.len();
    assert!(matrix.iter().all(|r| r.len() == n), "determinant of a non-square matrix");
    if n == 0 {
        return Polynomial::one(ctx);
    }
    bareiss(matrix, ctx).1
}

/// Embeds a rational matrix as constant polynomials (for cross-checks).
pub fn constant_matrix(matrix: &[Vec<Rational>], ctx: &Context) -> Vec<Vec<Polynomial>> {
    matrix
        .iter()
        .map(|row| row.iter().map(|c| Polynomial::constant(ctx, c.clone())).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;
    use crate::rational::rat;

    fn q(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    #[test]
    fn nullspace_of_identity_is_empty() {
        let m = q(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert!(nullspace(&m).is_empty());
    }

    #[test]
    fn nullspace_of_zero_matrix_is_full() {
        let m = q(&[&[0, 0, 0, 0, 0], &[0, 0, 0, 0, 0]]);
        let basis = nullspace(&m);
        assert_eq!(basis.len(), 5);
        for (i, v) in basis.iter().enumerate() {
            for (j, x) in v.iter().enumerate() {
                assert_eq!(*x, if i == j { rat(1) } else { rat(0) });
            }
        }
    }

    #[test]
    fn rank_one_kernel() {
        let m = q(&[&[1, 1], &[2, 2]]);
        let basis = nullspace(&m);
        assert_eq!(basis, vec![vec![rat(-1), rat(1)]]);
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn rank_plus_nullity_is_width() {
        let m = q(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9], &[1, 0, -1]]);
        assert_eq!(rank(&m) + nullspace(&m).len(), 3);
    }

    #[test]
    fn incremental_echelon_matches_batch() {
        let m = q(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9], &[2, 4, 6]]);
        let mut ech = RowEchelon::new(3);
        for row in &m {
            ech.insert(row.clone());
        }
        assert_eq!(ech.rank(), rank(&m));
        assert_eq!(ech.nullspace(), nullspace(&m));
    }

    #[test]
    fn symbolic_rank_and_det() {
        let ctx = Context::new(vec!["x", "y"]).unwrap();
        let p = |s: &str| parse_polynomial(&ctx, s).unwrap();
        // [[x, y], [y, x]] has rank 2 and determinant x^2 - y^2.
        let m = vec![vec![p("x"), p("y")], vec![p("y"), p("x")]];
        assert_eq!(generic_rank_symbolic(&m, &ctx), 2);
        assert_eq!(symbolic_det(&m, &ctx), p("x^2 - y^2"));
        // [[x, y], [2x, 2y]] is generically singular.
        let s = vec![vec![p("x"), p("y")], vec![p("2*x"), p("2*y")]];
        assert_eq!(generic_rank_symbolic(&s, &ctx), 1);
        assert_eq!(symbolic_det(&s, &ctx), Polynomial::zero(&ctx));
        let z = vec![vec![Polynomial::zero(&ctx); 3]; 2];
        assert_eq!(generic_rank_symbolic(&z, &ctx), 0);
    }

    #[test]
    fn det_sign_follows_swaps() {
        let ctx = Context::new(vec!["x"]).unwrap();
        let p = |s: &str| parse_polynomial(&ctx, s).unwrap();
        // [[0, 1], [x, 0]] has determinant -x; a pivot swap must not lose the sign.
        let m = vec![vec![p("0"), p("1")], vec![p("x"), p("0")]];
        assert_eq!(symbolic_det(&m, &ctx), p("-x"));
    }
}

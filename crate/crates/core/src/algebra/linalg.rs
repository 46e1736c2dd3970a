//! Exact linear algebra over the rationals and over `Q[s]`.

use num_traits::{Signed, Zero};

use super::rational::Rational;
use super::unipoly::PolyS;

pub type Matrix = Vec<Vec<Rational>>;

/// Reduced row echelon form; returns the reduced matrix and the pivot columns.
pub fn rref(m: &[Vec<Rational>], cols: usize) -> (Matrix, Vec<usize>) {
    let mut a: Matrix = m.to_vec();
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for v in a[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..cols {
                    let t = &f * &a[r][j];
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank(m: &[Vec<Rational>], cols: usize) -> usize {
    rref(m, cols).1.len()
}

/// Basis of the kernel of the `rows × cols` matrix `m`.
///
/// One vector per free column `f`, with a 1 in position `f`, zeros in the
/// other free positions and the negated reduced-echelon entries at the pivots.
pub fn nullspace(m: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let (a, pivots) = rref(m, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::from_integer(1.into());
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -a[r][f].clone();
            }
            v
        })
        .collect()
}

pub fn mat_vec(m: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// Coefficients expressing `target` in the span of `basis`, if it lies there.
pub fn solve_in_span(basis: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let n = basis.len();
    let dim = target.len();
    // Augmented system: columns are basis vectors, last column the target.
    let rows: Matrix = (0..dim)
        .map(|i| {
            let mut row: Vec<Rational> = basis.iter().map(|b| b[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let (a, pivots) = rref(&rows, n + 1);
    if pivots.contains(&n) {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = a[r][n].clone();
    }
    Some(x)
}

/// Whether two lists of vectors span the same subspace.
pub fn same_span(a: &[Vec<Rational>], b: &[Vec<Rational>], dim: usize) -> bool {
    let ra = rank(a, dim);
    let rb = rank(b, dim);
    let both: Matrix = a.iter().chain(b.iter()).cloned().collect();
    ra == rb && rank(&both, dim) == ra
}

/// Determinant of a square matrix over `Q[s]` by fraction-free (Bareiss)
/// elimination.
pub fn det_polys(m: &[Vec<PolyS>]) -> PolyS {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "square matrix required");
    if n == 0 {
        return PolyS::one();
    }
    let mut a: Vec<Vec<PolyS>> = m.to_vec();
    let mut negate = false;
    let mut prev = PolyS::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    negate = !negate;
                }
                None => return PolyS::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = PolyS::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -&d
    } else {
        d
    }
}

/// Inertia `(positive, negative, zero)` of a symmetric rational matrix,
/// computed by exact congruence diagonalization.
pub fn symmetric_inertia(m: &[Vec<Rational>]) -> (usize, usize, usize) {
    let n = m.len();
    let mut a: Matrix = m.to_vec();
    let (mut pos, mut neg) = (0, 0);
    for k in 0..n {
        // Bring a nonzero diagonal entry to position k.
        if a[k][k].is_zero() {
            if let Some(p) = (k + 1..n).find(|&i| !a[i][i].is_zero()) {
                a.swap(k, p);
                for row in a.iter_mut() {
                    row.swap(k, p);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // Row/column k += row/column j makes the pivot 2*a[k][j].
                for c in 0..n {
                    let t = a[j][c].clone();
                    a[k][c] += t;
                }
                for r in 0..n {
                    let t = a[r][j].clone();
                    a[r][k] += t;
                }
            } else {
                continue;
            }
        }
        if a[k][k].is_zero() {
            continue;
        }
        let piv = a[k][k].clone();
        if piv.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &piv;
            for j in k..n {
                let t = &f * &a[k][j];
                a[i][j] -= t;
            }
            for r in 0..n {
                let t = &f * &a[r][k];
                a[r][i] -= t;
            }
        }
    }
    (pos, neg, n - pos - neg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter()
            .map(|r| r.iter().map(|&v| rat(v)).collect())
            .collect()
    }

    #[test]
    fn kernel_examples() {
        let z = m(&[&[0, 0, 0], &[0, 0, 0]]);
        let k = nullspace(&z, 3);
        assert_eq!(k, m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]));

        let id = m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert!(nullspace(&id, 3).is_empty());

        let a = m(&[&[1, 1, 0], &[0, 0, 1]]);
        assert_eq!(nullspace(&a, 3), m(&[&[-1, 1, 0]]));
    }

    #[test]
    fn kernel_without_rows() {
        assert_eq!(nullspace(&[], 2).len(), 2);
    }

    #[test]
    fn determinants() {
        let n = 8;
        let s = PolyS::var();
        let id: Vec<Vec<PolyS>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { PolyS::one() } else { PolyS::zero() })
                    .collect()
            })
            .collect();
        assert_eq!(det_polys(&id), PolyS::one());
        let diag: Vec<Vec<PolyS>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { s.clone() } else { PolyS::zero() })
                    .collect()
            })
            .collect();
        assert_eq!(det_polys(&diag), s.pow(8));
        // Needs a row swap: [[0, 1], [1, s]] has determinant -1.
        let sw = vec![
            vec![PolyS::zero(), PolyS::one()],
            vec![PolyS::one(), s.clone()],
        ];
        assert_eq!(det_polys(&sw), PolyS::from_i64(&[-1]));
    }

    #[test]
    fn inertia() {
        assert_eq!(symmetric_inertia(&m(&[&[0, 1], &[1, 0]])), (1, 1, 0));
        assert_eq!(
            symmetric_inertia(&m(&[&[-2, 0, 0], &[0, -2, 0], &[0, 0, -2]])),
            (0, 3, 0)
        );
        assert_eq!(
            symmetric_inertia(&m(&[&[2, 0, 0], &[0, 0, 4], &[0, 4, 0]])),
            (2, 1, 0)
        );
        assert_eq!(symmetric_inertia(&m(&[&[1, 1], &[1, 1]])), (1, 0, 1));
    }

    #[test]
    fn spans() {
        let a = m(&[&[1, 0, 0], &[0, 1, 0]]);
        let b = m(&[&[1, 1, 0], &[1, -1, 0]]);
        assert!(same_span(&a, &b, 3));
        assert_eq!(
            solve_in_span(&b, &[rat(2), rat(0), rat(0)]),
            Some(vec![rat(1), rat(1)])
        );
        assert_eq!(solve_in_span(&b, &[rat(0), rat(0), rat(1)]), None);
    }
}

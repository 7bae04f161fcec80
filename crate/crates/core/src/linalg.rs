//! Exact dense linear algebra over a [`Field`], and Smith normal form over
//! the integers with the mod-N linear solver built on it.
//!
//! Everything here is deterministic: pivots are chosen by position, never by
//! magnitude heuristics, so repeated runs produce identical bases.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

/// A dense matrix over a field, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn zero(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<FieldElement>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::MapDimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix {
            field: field.clone(),
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.data[i * self.cols + j] = v;
    }

    /// Reduced row echelon form; returns (rref, pivot columns).
    fn rref(mut self) -> (Matrix, Vec<usize>) {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..self.cols {
                    self.data.swap(row * self.cols + j, p * self.cols + j);
                }
            }
            let inv = self.get(row, col).inv().expect("pivot nonzero");
            for j in col..self.cols {
                let v = self.get(row, j) * &inv;
                self.set(row, j, v);
            }
            for r in 0..self.rows {
                if r == row || self.get(r, col).is_zero() {
                    continue;
                }
                let factor = self.get(r, col).clone();
                for j in col..self.cols {
                    let v = self.get(r, j) - &(&factor * self.get(row, j));
                    self.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (self, pivots)
    }

    pub fn rank(&self) -> usize {
        let (_, pivots) = self.clone().rref();
        pivots.len()
    }

    /// A basis of the right kernel, each vector of length `cols`.
    pub fn kernel_basis(&self) -> Vec<Vec<FieldElement>> {
        let (r, pivots) = self.clone().rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (prow, &pcol) in pivots.iter().enumerate() {
                v[pcol] = Some(prow);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut vec = vec![self.field.zero(); self.cols];
            vec[free] = self.field.one();
            for (col, slot) in pivot_set.iter().enumerate() {
                if let Some(prow) = slot {
                    vec[col] = -r.get(*prow, free);
                }
            }
            basis.push(vec);
        }
        basis
    }

    /// One solution of `self * x = rhs`, if any.
    pub fn solve(&self, rhs: &[FieldElement]) -> Option<Vec<FieldElement>> {
        assert_eq!(rhs.len(), self.rows, "rhs length mismatch");
        let mut aug = Matrix::zero(&self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, rhs[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // inconsistent
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (prow, &pcol) in pivots.iter().enumerate() {
            x[pcol] = r.get(prow, self.cols).clone();
        }
        Some(x)
    }

    /// The inverse of a square matrix, or `None` if singular.
    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = Matrix::zero(&self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, self.field.one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        let mut out = Matrix::zero(&self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(out)
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for j in 0..self.cols {
                    if v[j].is_zero() || self.get(i, j).is_zero() {
                        continue;
                    }
                    acc = &acc + &(self.get(i, j) * &v[j]);
                }
                acc
            })
            .collect()
    }
}

/// Smith normal form `U * A * V = D` with unimodular `U`, `V` and the
/// diagonal divisibility chain d1 | d2 | ...
pub struct SmithNormalForm {
    pub diagonal: Vec<BigInt>,
    pub left: Vec<Vec<BigInt>>,
    pub right: Vec<Vec<BigInt>>,
}

pub fn smith_normal_form(a: &[Vec<BigInt>]) -> SmithNormalForm {
    let rows = a.len();
    let cols = a.first().map(|r| r.len()).unwrap_or(0);
    let mut m: Vec<Vec<BigInt>> = a.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| (0..rows).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut v: Vec<Vec<BigInt>> = (0..cols)
        .map(|i| (0..cols).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();

    let mut t = 0;
    while t < rows.min(cols) {
        // Locate the nonzero entry of smallest absolute value in the
        // remaining block; if the block is zero, we are done.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if m[i][j].is_zero() {
                    continue;
                }
                match &pivot {
                    None => pivot = Some((i, j)),
                    Some((pi, pj)) => {
                        if m[i][j].abs() < m[*pi][*pj].abs() {
                            pivot = Some((i, j));
                        }
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap(t, pi);
        u.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        for row in v.iter_mut() {
            row.swap(t, pj);
        }

        let mut clean = true;
        for i in t + 1..rows {
            if m[i][t].is_zero() {
                continue;
            }
            let q = div_round(&m[i][t], &m[t][t]);
            if !q.is_zero() {
                for j in 0..cols {
                    let d = &q * &m[t][j];
                    m[i][j] -= d;
                }
                for j in 0..rows {
                    let d = &q * &u[t][j];
                    u[i][j] -= d;
                }
            }
            if !m[i][t].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..cols {
            if m[t][j].is_zero() {
                continue;
            }
            let q = div_round(&m[t][j], &m[t][t]);
            if !q.is_zero() {
                for i in 0..rows {
                    let d = &q * &m[i][t];
                    m[i][j] -= d;
                }
                for i in 0..cols {
                    let d = &q * &v[i][t];
                    v[i][j] -= d;
                }
            }
            if !m[t][j].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue; // smaller remainders now exist; pick a new pivot
        }
        // Row and column t are clear. Enforce the divisibility chain: if
        // some remaining entry is not divisible by the pivot, fold its row
        // into row t and restart this step.
        let mut offender = None;
        'scan: for i in t + 1..rows {
            for j in t + 1..cols {
                if !(&m[i][j] % &m[t][t]).is_zero() {
                    offender = Some(i);
                    break 'scan;
                }
            }
        }
        if let Some(i) = offender {
            for j in 0..cols {
                let add = m[i][j].clone();
                m[t][j] += add;
            }
            for j in 0..rows {
                let add = u[i][j].clone();
                u[t][j] += add;
            }
            continue;
        }
        if m[t][t].is_negative() {
            for j in 0..cols {
                m[t][j] = -m[t][j].clone();
            }
            for j in 0..rows {
                u[t][j] = -u[t][j].clone();
            }
        }
        t += 1;
    }

    let diagonal = (0..rows.min(cols)).map(|i| m[i][i].clone()).collect();
    SmithNormalForm {
        diagonal,
        left: u,
        right: v,
    }
}

/// Division rounded to nearest, keeping remainders small during SNF.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    if &r.abs() * 2 > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// One solution of `A x = b (mod n)` with entries in `[0, n)`, or `None`.
/// Free coordinates are set to zero, so the answer is deterministic.
pub fn solve_mod(a: &[Vec<BigInt>], b: &[BigInt], n: u64) -> Option<Vec<BigInt>> {
    let rows = a.len();
    let cols = a.first().map(|r| r.len()).unwrap_or(0);
    assert_eq!(b.len(), rows);
    let n_big = BigInt::from(n);
    let snf = smith_normal_form(a);
    // c = U b
    let c: Vec<BigInt> = (0..rows)
        .map(|i| {
            let mut acc = BigInt::zero();
            for j in 0..rows {
                acc += &snf.left[i][j] * &b[j];
            }
            acc
        })
        .collect();
    let mut y = vec![BigInt::zero(); cols];
    for i in 0..rows {
        let d = if i < snf.diagonal.len() {
            snf.diagonal[i].clone()
        } else {
            BigInt::zero()
        };
        let ci = ((&c[i] % &n_big) + &n_big) % &n_big;
        if d.is_zero() {
            if !ci.is_zero() {
                return None;
            }
            continue;
        }
        let g = d.gcd(&n_big);
        if !(&ci % &g).is_zero() {
            return None;
        }
        // Solve d * y_i = c_i (mod n): y_i = (c_i/g) * inv(d/g) mod (n/g).
        let ng = &n_big / &g;
        let dg = ((&d / &g) % &ng + &ng) % &ng;
        let inv = mod_inverse_big(&dg, &ng)?;
        y[i] = ((&ci / &g) * inv) % &ng;
    }
    // x = V y mod n
    let x: Vec<BigInt> = (0..cols)
        .map(|i| {
            let mut acc = BigInt::zero();
            for j in 0..cols {
                acc += &snf.right[i][j] * &y[j];
            }
            ((acc % &n_big) + &n_big) % &n_big
        })
        .collect();
    Some(x)
}

fn mod_inverse_big(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(((e.x % m) + m) % m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qmat(rows: &[&[i64]]) -> Matrix {
        let q = Field::rationals();
        Matrix::from_rows(
            &q,
            rows.iter()
                .map(|r| r.iter().map(|&x| q.from_i64(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn rank_and_kernel() {
        let m = qmat(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let kernel = m.kernel_basis();
        assert_eq!(kernel.len(), 1);
        let v = &kernel[0];
        let img = m.mul_vec(v);
        assert!(img.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn solve_and_inverse() {
        let m = qmat(&[&[2, 1], &[1, 1]]);
        let q = Field::rationals();
        let sol = m.solve(&[q.from_i64(3), q.from_i64(2)]).unwrap();
        assert_eq!(sol, vec![q.from_i64(1), q.from_i64(1)]);
        let inv = m.inverse().unwrap();
        let prod_col = inv.mul_vec(&[q.from_i64(2), q.from_i64(1)]);
        assert_eq!(prod_col, vec![q.from_i64(1), q.from_i64(0)]);
        assert!(qmat(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn snf_diagonal_divides() {
        let a: Vec<Vec<BigInt>> = vec![
            vec![BigInt::from(2), BigInt::from(4), BigInt::from(4)],
            vec![BigInt::from(-6), BigInt::from(6), BigInt::from(12)],
            vec![BigInt::from(10), BigInt::from(4), BigInt::from(16)],
        ];
        let snf = smith_normal_form(&a);
        // Known invariant factors of this classic example: 2, 2, 156.
        assert_eq!(
            snf.diagonal,
            vec![BigInt::from(2), BigInt::from(2), BigInt::from(156)]
        );
        // U A V = D exactly.
        let mul = |x: &Vec<Vec<BigInt>>, y: &Vec<Vec<BigInt>>| -> Vec<Vec<BigInt>> {
            let n = x.len();
            let m = y[0].len();
            let k = y.len();
            (0..n)
                .map(|i| {
                    (0..m)
                        .map(|j| (0..k).map(|t| &x[i][t] * &y[t][j]).sum())
                        .collect()
                })
                .collect()
        };
        let d = mul(&mul(&snf.left, &a), &snf.right);
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { snf.diagonal[i].clone() } else { BigInt::zero() };
                assert_eq!(d[i][j], expect);
            }
        }
    }

    #[test]
    fn solve_mod_agrees_with_direct_check() {
        // 3x = 3 (mod 6) has solutions x in {1, 3, 5}.
        let a = vec![vec![BigInt::from(3)]];
        let x = solve_mod(&a, &[BigInt::from(3)], 6).unwrap();
        let x0 = &x[0];
        assert!((x0 * 3 % 6) == BigInt::from(3));
        // 3x = 1 (mod 6) unsolvable.
        assert!(solve_mod(&a, &[BigInt::from(1)], 6).is_none());
        // Two-variable system mod 4: x + y = 3, x - y = 1 -> x = 2, y = 1.
        let a2 = vec![
            vec![BigInt::from(1), BigInt::from(1)],
            vec![BigInt::from(1), BigInt::from(-1)],
        ];
        let sol = solve_mod(&a2, &[BigInt::from(3), BigInt::from(1)], 4).unwrap();
        let s = (&sol[0] + &sol[1]) % 4;
        let d = ((&sol[0] - &sol[1]) % 4 + 4) % 4;
        assert_eq!(s, BigInt::from(3));
        assert_eq!(d, BigInt::from(1));
    }
}

//! Dense rational matrices and the exact row-reduction kernel every rank,
//! kernel, and projection computation in this crate goes through.
//!
//! Pivoting is deterministic (first nonzero entry in column order), so all
//! downstream bases come out bit-for-bit reproducible. Forward elimination is
//! fraction-free by cross-multiplication with per-row content reduction;
//! back-substitution then produces the unique reduced row echelon form.

use crate::rat::{rat_int, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A dense matrix of rationals, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

/// Result of reduced row echelon form: the reduced matrix, its rank, and the
/// pivot columns in ascending order.
pub struct Rref {
    pub reduced: Mat,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Mat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&n| rat_int(n)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if !b.is_zero() {
                        *out.at_mut(i, j) += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "shape mismatch in mul_vec");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rat::zero();
                for j in 0..self.cols {
                    let a = self.at(i, j);
                    if !a.is_zero() && !v[j].is_zero() {
                        acc += a * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    /// Unique reduced row echelon form, rank, and pivot columns.
    pub fn rref_rank(&self) -> Rref {
        let mut m = self.row_vecs();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            // first nonzero at or below row r, in column order
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            for i in r + 1..self.rows {
                if m[i][c].is_zero() {
                    continue;
                }
                // cross-multiplied elimination keeps integral rows integral
                let (head, tail) = m.split_at_mut(r + 1);
                let prow = &head[r];
                let row = &mut tail[i - r - 1];
                let f_row = prow[c].clone();
                let f_piv = row[c].clone();
                for j in 0..self.cols {
                    row[j] = &row[j] * &f_row - &prow[j] * &f_piv;
                }
                reduce_content(row);
            }
            pivots.push(c);
            r += 1;
        }
        // back-substitution to unit pivots and zeros above
        for k in (0..pivots.len()).rev() {
            let c = pivots[k];
            let inv = m[k][c].clone();
            for j in 0..self.cols {
                let v = std::mem::take(&mut m[k][j]);
                m[k][j] = v / &inv;
            }
            for i in 0..k {
                if m[i][c].is_zero() {
                    continue;
                }
                let f = m[i][c].clone();
                let (above, below) = m.split_at_mut(k);
                let prow = &below[0];
                let row = &mut above[i];
                for j in 0..self.cols {
                    let delta = &prow[j] * &f;
                    row[j] -= delta;
                }
            }
        }
        let rank = pivots.len();
        Rref {
            reduced: Mat::from_rows(m),
            rank,
            pivots,
        }
    }

    /// Basis of the right null space, one vector per free column, in column
    /// order. `m.cols() - rank` vectors, each satisfying `m * v = 0` exactly.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let Rref {
            reduced, pivots, ..
        } = self.rref_rank();
        let pivot_set: Vec<bool> = {
            let mut s = vec![false; self.cols];
            for &p in &pivots {
                s[p] = true;
            }
            s
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free] {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for (k, &p) in pivots.iter().enumerate() {
                v[p] = -reduced.at(k, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.rows, self.cols, "inverse wants a square matrix");
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, n + i) = Rat::one();
        }
        let r = aug.rref_rank();
        if r.pivots.len() != n || r.pivots.iter().enumerate().any(|(k, &p)| k != p) {
            return None;
        }
        let mut inv = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                *inv.at_mut(i, j) = r.reduced.at(i, n + j).clone();
            }
        }
        Some(inv)
    }

    /// Some solution of `m * x = b`, or `None` when `b` is outside the column
    /// space. Free variables are set to zero, so the answer is deterministic.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(b.len(), self.rows, "rhs length must equal row count");
        let mut aug = Mat::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, self.cols) = b[i].clone();
        }
        let Rref {
            reduced, pivots, ..
        } = aug.rref_rank();
        if pivots.contains(&self.cols) {
            return None; // inconsistent
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (k, &p) in pivots.iter().enumerate() {
            x[p] = reduced.at(k, self.cols).clone();
        }
        Some(x)
    }
}

impl std::fmt::Debug for Mat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(crate::rat::rat_to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Divides a row by the gcd of its numerators times the reciprocal lcm of its
/// denominators and normalizes the sign of the leading entry.
fn reduce_content(row: &mut [Rat]) {
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::one();
    for v in row.iter() {
        if v.is_zero() {
            continue;
        }
        num_gcd = num_gcd.gcd(v.numer());
        den_lcm = den_lcm.lcm(v.denom());
    }
    if num_gcd.is_zero() {
        return;
    }
    let mut scale = Rat::new(den_lcm, num_gcd);
    if let Some(lead) = row.iter().find(|v| !v.is_zero()) {
        if lead.is_negative() == scale.is_positive() {
            scale = -scale;
        }
    }
    for v in row.iter_mut() {
        if !v.is_zero() {
            *v *= &scale;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use proptest::prelude::*;

    fn vec_is_zero(v: &[Rat]) -> bool {
        v.iter().all(Rat::is_zero)
    }

    #[test]
    fn rref_identity() {
        let m = Mat::identity(2);
        let r = m.rref_rank();
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.reduced, Mat::identity(2));
    }

    #[test]
    fn rref_proportional_rows() {
        let m = Mat::from_int_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.rref_rank().rank, 1);
    }

    #[test]
    fn rref_symplectic_form_nondegenerate() {
        // standard genus-2 form in block basis (a1,a2,b1,b2)
        let j = Mat::from_int_rows(&[
            &[0, 0, 1, 0],
            &[0, 0, 0, 1],
            &[-1, 0, 0, 0],
            &[0, -1, 0, 0],
        ]);
        assert_eq!(j.rref_rank().rank, 4);
    }

    #[test]
    fn kernel_examples() {
        assert!(Mat::identity(2).kernel_basis().is_empty());

        let k = Mat::from_int_rows(&[&[1, 1]]).kernel_basis();
        assert_eq!(k.len(), 1);
        // proportional to (1, -1)
        assert_eq!(&k[0][0] * rat_int(-1), k[0][1]);

        let k = Mat::from_int_rows(&[&[1, 2], &[2, 4]]).kernel_basis();
        assert_eq!(k.len(), 1);
        // proportional to (2, -1)
        assert_eq!(&k[0][0] * rat(-1, 2), k[0][1]);
    }

    #[test]
    fn solve_examples() {
        let id = Mat::identity(2);
        let b = vec![rat_int(3), rat_int(5)];
        assert_eq!(id.solve(&b), Some(b.clone()));

        let m = Mat::from_int_rows(&[&[1, 1]]);
        let x = m.solve(&[rat_int(2)]).unwrap();
        assert_eq!(&x[0] + &x[1], rat_int(2));

        let m = Mat::from_int_rows(&[&[1], &[2]]);
        assert_eq!(m.solve(&[rat_int(1), rat_int(3)]), None);
    }

    fn small_mat() -> impl Strategy<Value = Mat> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-4i64..5, r * c).prop_map(move |vals| Mat {
                rows: r,
                cols: c,
                data: vals.into_iter().map(rat_int).collect(),
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_mat()) {
            let r = m.rref_rank();
            let k = m.kernel_basis();
            prop_assert_eq!(r.rank + k.len(), m.cols());
            for v in &k {
                prop_assert!(vec_is_zero(&m.mul_vec(v)));
            }
        }

        #[test]
        fn rref_idempotent(m in small_mat()) {
            let r1 = m.rref_rank().reduced;
            let r2 = r1.rref_rank().reduced;
            prop_assert_eq!(r1, r2);
        }

        #[test]
        fn solve_is_exact(m in small_mat(), xs in proptest::collection::vec(-3i64..4, 8)) {
            // build a consistent rhs, then check the returned solution exactly
            let x: Vec<Rat> = xs.into_iter().take(m.cols()).map(rat_int).collect();
            prop_assume!(x.len() == m.cols());
            let b = m.mul_vec(&x);
            let sol = m.solve(&b).expect("consistent system");
            prop_assert_eq!(m.mul_vec(&sol), b);
        }
    }
}

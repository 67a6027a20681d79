use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// # Panics
    /// If the rows have different lengths.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().cloned().map(Into::into));
        }
        IntMatrix {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    /// # Panics
    /// On a dimension mismatch.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// # Panics
    /// On a dimension mismatch.
    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// Columns `from..to` as a new matrix.
    pub fn columns(&self, from: usize, to: usize) -> IntMatrix {
        let mut out = Self::zeros(self.rows, to - from);
        for i in 0..self.rows {
            for j in from..to {
                out.data[i * (to - from) + j - from] = self.get(i, j).clone();
            }
        }
        out
    }

    /// Rows `from..to` as a new matrix.
    pub fn row_range(&self, from: usize, to: usize) -> IntMatrix {
        IntMatrix {
            rows: to - from,
            cols: self.cols,
            data: self.data[from * self.cols..to * self.cols].to_vec(),
        }
    }

    /// Determinant by fraction-free elimination.
    ///
    /// # Panics
    /// If the matrix is not square.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            if p != k {
                a.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        if n == 0 {
            return BigInt::one();
        }
        sign * &a[n - 1][n - 1]
    }

    /// Diagonal entries `d_1, ..., d_min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .collect()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_string()).collect())
            .collect();
        write!(f, "IntMatrix{rows:?}")
    }
}

/// `U·A·V = D` with both transforms and their inverses.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithForm {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.d
            .diagonal()
            .iter()
            .take_while(|x| !x.is_zero())
            .count()
    }
}

/// Smith normal form `(D, U, V)` with `U·A·V = D`, `U` and `V` unimodular
/// and `d_1 | d_2 | ...` non-negative.
pub fn smith_normal_form(a: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let s = smith_with_inverses(a);
    (s.d, s.u, s.v)
}

pub fn smith_with_inverses(a: &IntMatrix) -> SmithForm {
    let mut w = Work::new(a, true);
    w.run();
    let (u, u_inv, v, v_inv) = w.transforms.unwrap();
    SmithForm {
        d: to_matrix(w.a, a.rows, a.cols),
        u: to_matrix(u, a.rows, a.rows),
        u_inv: to_matrix(u_inv, a.rows, a.rows),
        v: to_matrix(v, a.cols, a.cols),
        v_inv: to_matrix(v_inv, a.cols, a.cols),
    }
}

/// Nonzero diagonal of the Smith normal form, without transforms.
pub(crate) fn dense_invariant_factors(
    a: Vec<Vec<BigInt>>,
    rows: usize,
    cols: usize,
) -> Vec<BigInt> {
    let mut w = Work {
        a,
        rows,
        cols,
        transforms: None,
    };
    w.run();
    (0..rows.min(cols))
        .map(|i| w.a[i][i].clone())
        .take_while(|x| !x.is_zero())
        .collect()
}

fn to_matrix(rows: Vec<Vec<BigInt>>, r: usize, c: usize) -> IntMatrix {
    IntMatrix {
        rows: r,
        cols: c,
        data: rows.into_iter().flatten().collect(),
    }
}

type Dense = Vec<Vec<BigInt>>;

struct Work {
    a: Dense,
    rows: usize,
    cols: usize,
    /// `U`, `U⁻¹`, `V`, `V⁻¹`
    transforms: Option<(Dense, Dense, Dense, Dense)>,
}

fn identity(n: usize) -> Dense {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// `m[dst] += q * m[src]` on rows.
fn add_row(m: &mut Dense, dst: usize, src: usize, q: &BigInt) {
    let (d, s) = if dst < src {
        let (lo, hi) = m.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in d.iter_mut().zip(s.iter()) {
        if !y.is_zero() {
            *x += q * y;
        }
    }
}

/// `m[.][dst] += q * m[.][src]` on columns.
fn add_col(m: &mut Dense, dst: usize, src: usize, q: &BigInt) {
    for row in m.iter_mut() {
        if !row[src].is_zero() {
            let t = q * &row[src];
            row[dst] += t;
        }
    }
}

fn swap_cols(m: &mut Dense, i: usize, j: usize) {
    for row in m.iter_mut() {
        row.swap(i, j);
    }
}

impl Work {
    fn new(a: &IntMatrix, track: bool) -> Self {
        let dense: Dense = (0..a.rows).map(|i| a.row(i).to_vec()).collect();
        Work {
            a: dense,
            rows: a.rows,
            cols: a.cols,
            transforms: track.then(|| {
                (
                    identity(a.rows),
                    identity(a.rows),
                    identity(a.cols),
                    identity(a.cols),
                )
            }),
        }
    }

    fn row_add(&mut self, dst: usize, src: usize, q: &BigInt) {
        add_row(&mut self.a, dst, src, q);
        if let Some((u, ui, _, _)) = &mut self.transforms {
            add_row(u, dst, src, q);
            add_col(ui, src, dst, &-q);
        }
    }

    fn col_add(&mut self, dst: usize, src: usize, q: &BigInt) {
        add_col(&mut self.a, dst, src, q);
        if let Some((_, _, v, vi)) = &mut self.transforms {
            add_col(v, dst, src, q);
            add_row(vi, src, dst, &-q);
        }
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if let Some((u, ui, _, _)) = &mut self.transforms {
            u.swap(i, j);
            swap_cols(ui, i, j);
        }
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        swap_cols(&mut self.a, i, j);
        if let Some((_, _, v, vi)) = &mut self.transforms {
            swap_cols(v, i, j);
            vi.swap(i, j);
        }
    }

    fn row_negate(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -&*x;
        }
        if let Some((u, ui, _, _)) = &mut self.transforms {
            for x in u[i].iter_mut() {
                *x = -&*x;
            }
            for row in ui.iter_mut() {
                row[i] = -&row[i];
            }
        }
    }

    /// Nonzero entry of least absolute value in the block `[t.., t..]`,
    /// ties to the smallest `(row, col)`.
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < self.a[bi][bj].abs()) {
                    best = Some((i, j));
                    if x.abs().is_one() {
                        return best;
                    }
                }
            }
        }
        best
    }

    fn run(&mut self) {
        for t in 0..self.rows.min(self.cols) {
            let Some((pi, pj)) = self.pivot(t) else {
                return;
            };
            self.row_swap(t, pi);
            self.col_swap(t, pj);
            loop {
                let mut clean = true;
                for i in t + 1..self.rows {
                    if !self.a[i][t].is_zero() {
                        let q = self.a[i][t].div_floor(&self.a[t][t]);
                        self.row_add(i, t, &-q);
                        clean &= self.a[i][t].is_zero();
                    }
                }
                for j in t + 1..self.cols {
                    if !self.a[t][j].is_zero() {
                        let q = self.a[t][j].div_floor(&self.a[t][t]);
                        self.col_add(j, t, &-q);
                        clean &= self.a[t][j].is_zero();
                    }
                }
                if !clean {
                    // a smaller remainder sits in row t or column t
                    let (mut bi, mut bj) = (t, t);
                    for i in t + 1..self.rows {
                        let x = &self.a[i][t];
                        if !x.is_zero() && x.abs() < self.a[bi][bj].abs() {
                            (bi, bj) = (i, t);
                        }
                    }
                    for j in t + 1..self.cols {
                        let x = &self.a[t][j];
                        if !x.is_zero() && x.abs() < self.a[bi][bj].abs() {
                            (bi, bj) = (t, j);
                        }
                    }
                    self.row_swap(t, bi);
                    self.col_swap(t, bj);
                    continue;
                }
                let p = self.a[t][t].clone();
                let bad = (t + 1..self.rows)
                    .find(|&i| (t + 1..self.cols).any(|j| !self.a[i][j].is_multiple_of(&p)));
                match bad {
                    Some(i) => self.row_add(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.row_negate(t);
            }
        }
    }
}

/// Some integer `x` with `A·x = b`, or `None` when there is none.
///
/// # Panics
/// If `b` does not have `A.rows()` entries.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows(), b.len(), "dimension mismatch");
    let s = smith_with_inverses(a);
    solve_with(&s, b)
}

pub(crate) fn solve_with(s: &SmithForm, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let ub = s.u.mul_vec(b);
    let diag = s.d.diagonal();
    let mut y = vec![BigInt::zero(); s.d.cols()];
    for (i, c) in ub.iter().enumerate() {
        let d = diag.get(i).filter(|d| !d.is_zero());
        match d {
            Some(d) => {
                let (q, r) = c.div_rem(d);
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            }
            None if !c.is_zero() => return None,
            None => {}
        }
    }
    Some(s.v.mul_vec(&y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    fn check(a: &IntMatrix) -> SmithForm {
        let s = smith_with_inverses(a);
        assert_eq!(s.u.mul(a).mul(&s.v), s.d);
        assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(a.rows()));
        assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(a.cols()));
        assert!(s.u.determinant().abs().is_one());
        assert!(s.v.determinant().abs().is_one());
        let diag = s.d.diagonal();
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                if i != j {
                    assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        for w in diag.windows(2) {
            assert!(!w[0].is_negative());
            if w[0].is_zero() {
                assert!(w[1].is_zero());
            } else {
                assert!(w[1].is_multiple_of(&w[0]));
            }
        }
        s
    }

    #[test]
    fn examples() {
        let s = check(&IntMatrix::identity(3));
        assert_eq!(s.d, IntMatrix::identity(3));
        let s = check(&m(&[vec![2, 4], vec![4, 8]]));
        assert_eq!(s.d, m(&[vec![2, 0], vec![0, 0]]));
        let s = check(&IntMatrix::zeros(2, 3));
        assert!(s.d.is_zero());
        let s = check(&m(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.d.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
        check(&m(&[
            vec![0, 4, -6],
            vec![10, 0, 2],
            vec![3, 3, 3],
            vec![1, -1, 7],
        ]));
    }

    #[test]
    fn determinant() {
        assert_eq!(m(&[vec![1, 2], vec![3, 4]]).determinant(), BigInt::from(-2));
        assert_eq!(
            m(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 5]]).determinant(),
            BigInt::from(-5)
        );
        assert_eq!(IntMatrix::identity(0).determinant(), BigInt::one());
    }

    #[test]
    fn solving() {
        let a = m(&[vec![2, 0], vec![0, 3]]);
        let b = vec![BigInt::from(4), BigInt::from(9)];
        assert_eq!(
            solve_integer(&a, &b),
            Some(vec![BigInt::from(2), BigInt::from(3)])
        );
        assert_eq!(solve_integer(&a, &[BigInt::from(1), BigInt::from(0)]), None);
        let a = m(&[vec![1, 1], vec![1, 1]]);
        assert_eq!(solve_integer(&a, &[BigInt::from(1), BigInt::from(2)]), None);
        let x = solve_integer(&a, &[BigInt::from(5), BigInt::from(5)]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![BigInt::from(5), BigInt::from(5)]);
    }
}

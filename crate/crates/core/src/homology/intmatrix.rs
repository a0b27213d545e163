//! Dense matrices over the integers with exact Smith normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = IntMatrix::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (c, &x) in row.iter().enumerate() {
                m.entries[r * cols + c] = x.into();
            }
        }
        m
    }

    /// Builds a `rows × columns.len()` matrix from column vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut m = IntMatrix::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, x) in col.iter().enumerate() {
                m.entries[r * m.cols + c] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: BigInt) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    /// Submatrix keeping the listed rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        let mut m = IntMatrix::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m.entries[i * m.cols + j] = self.get(r, c).clone();
            }
        }
        m
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.entries[c * t.cols + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.entries[r * other.cols + c] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c) * &v[c]).sum())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.entries.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.entries.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    /// row[target] += factor * row[source]
    fn add_row(&mut self, target: usize, source: usize, factor: &BigInt) {
        for c in 0..self.cols {
            let x = &self.entries[source * self.cols + c];
            if !x.is_zero() {
                let delta = factor * x;
                self.entries[target * self.cols + c] += delta;
            }
        }
    }

    /// col[target] += factor * col[source]
    fn add_col(&mut self, target: usize, source: usize, factor: &BigInt) {
        for r in 0..self.rows {
            let x = &self.entries[r * self.cols + source];
            if !x.is_zero() {
                let delta = factor * x;
                self.entries[r * self.cols + target] += delta;
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let x = &mut self.entries[r * self.cols + c];
            *x = -std::mem::take(x);
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// `left · A · right = diag(invariant factors, 0, ..)` with `left`, `right` unimodular.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub diagonal: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }
}

/// Computes the Smith normal form together with the unimodular transforms.
///
/// Pivots are chosen as the smallest nonzero entry of the remaining block; when the pivot
/// fails to divide some entry of the block, that entry's row is folded into the pivot row,
/// so the returned factors satisfy `d_1 | d_2 | …`.
pub fn smith_decomposition(a: &IntMatrix) -> SmithDecomposition {
    let (diagonal, left, right) = smith(a, true, true);
    SmithDecomposition {
        diagonal,
        left: left.expect("tracked"),
        right: right.expect("tracked"),
    }
}

/// Apply the same operation to `d` and, when tracked, to a transform.
macro_rules! both {
    ($d:ident, $t:ident, $op:ident($($arg:expr),*)) => {{
        $d.$op($($arg),*);
        if let Some(t) = $t.as_mut() {
            t.$op($($arg),*);
        }
    }};
}

fn smith(
    a: &IntMatrix,
    track_left: bool,
    track_right: bool,
) -> (Vec<BigInt>, Option<IntMatrix>, Option<IntMatrix>) {
    let (rows, cols) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut left = track_left.then(|| IntMatrix::identity(rows));
    let mut right = track_right.then(|| IntMatrix::identity(cols));
    let mut t = 0;

    while t < rows.min(cols) {
        let Some((pr, pc)) = min_entry(&d, t..rows, t..cols) else {
            break;
        };
        both!(d, left, swap_rows(t, pr));
        both!(d, right, swap_cols(t, pc));

        loop {
            let mut clean = true;
            for r in t + 1..rows {
                if !d.get(r, t).is_zero() {
                    let q = -d.get(r, t).div_floor(d.get(t, t));
                    both!(d, left, add_row(r, t, &q));
                    clean &= d.get(r, t).is_zero();
                }
            }
            for c in t + 1..cols {
                if !d.get(t, c).is_zero() {
                    let q = -d.get(t, c).div_floor(d.get(t, t));
                    both!(d, right, add_col(c, t, &q));
                    clean &= d.get(t, c).is_zero();
                }
            }
            if clean {
                // pivot must divide the rest of the block
                let offender = (t + 1..rows)
                    .find(|&r| (t + 1..cols).any(|c| !d.get(r, c).is_multiple_of(d.get(t, t))));
                match offender {
                    None => break,
                    Some(r) => {
                        both!(d, left, add_row(t, r, &BigInt::one()));
                        continue;
                    }
                }
            }
            // a smaller remainder appeared in row or column t; move it to the pivot
            let (pr, pc) = min_in_cross(&d, t);
            both!(d, left, swap_rows(t, pr));
            both!(d, right, swap_cols(t, pc));
        }

        if d.get(t, t).is_negative() {
            both!(d, left, negate_row(t));
        }
        t += 1;
    }

    let diagonal = (0..t).map(|i| d.get(i, i).clone()).collect();
    (diagonal, left, right)
}

fn min_entry(
    d: &IntMatrix,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for r in rows {
        for c in cols.clone() {
            let x = d.get(r, c);
            if x.is_zero() {
                continue;
            }
            let mag = x.abs();
            if best.as_ref().is_none_or(|(_, _, b)| mag < *b) {
                let one = mag.is_one();
                best = Some((r, c, mag));
                if one {
                    return best.map(|(r, c, _)| (r, c));
                }
            }
        }
    }
    best.map(|(r, c, _)| (r, c))
}

/// Smallest nonzero entry in row `t` or column `t` at or beyond the pivot.
fn min_in_cross(d: &IntMatrix, t: usize) -> (usize, usize) {
    let row = min_entry(d, t..t + 1, t..d.cols);
    let col = min_entry(d, t..d.rows, t..t + 1);
    match (row, col) {
        (Some(a), Some(b)) => {
            if d.get(a.0, a.1).abs() <= d.get(b.0, b.1).abs() {
                a
            } else {
                b
            }
        }
        (Some(a), None) | (None, Some(a)) => a,
        (None, None) => (t, t),
    }
}

/// Nonzero invariant factors `d_1 | d_2 | …`, all positive.
pub fn smith_normal_form(a: &IntMatrix) -> Vec<BigInt> {
    smith(a, false, false).0
}

/// A basis of the integer kernel `{x : A x = 0}`.
pub fn kernel_basis(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let (diagonal, _, right) = smith(a, false, true);
    let right = right.expect("tracked");
    (diagonal.len()..a.cols).map(|c| right.column(c)).collect()
}

/// Column echelon form `E = A U` with `U` unimodular: the nonzero columns of `E` form a basis
/// of the lattice spanned by the columns of `A`, with strictly increasing pivot rows.
#[derive(Clone, Debug)]
pub struct ColumnEchelon {
    echelon: IntMatrix,
    pivots: Vec<usize>,
    transform: IntMatrix,
}

impl ColumnEchelon {
    pub fn new(a: &IntMatrix) -> ColumnEchelon {
        let mut e = a.clone();
        let mut u = IntMatrix::identity(a.cols);
        let mut pivots = Vec::new();
        for r in 0..a.rows {
            let k = pivots.len();
            if k == a.cols {
                break;
            }
            // gcd-reduce row r across the columns not yet used as pivots
            while let Some((_, c)) = min_entry(&e, r..r + 1, k..a.cols) {
                e.swap_cols(k, c);
                u.swap_cols(k, c);
                let mut done = true;
                for c in k + 1..a.cols {
                    if !e.get(r, c).is_zero() {
                        let q = -e.get(r, c).div_floor(e.get(r, k));
                        e.add_col(c, k, &q);
                        u.add_col(c, k, &q);
                        done &= e.get(r, c).is_zero();
                    }
                }
                if done {
                    pivots.push(r);
                    break;
                }
            }
        }
        ColumnEchelon {
            echelon: e,
            pivots,
            transform: u,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// A basis of the integer kernel of `A`.
    pub fn kernel(&self) -> Vec<Vec<BigInt>> {
        (self.rank()..self.transform.cols)
            .map(|c| self.transform.column(c))
            .collect()
    }

    /// Whether `v` is an integer combination of the columns of `A`.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.echelon.rows);
        let mut v = v.to_vec();
        let mut next = 0;
        for (j, &p) in self.pivots.iter().enumerate() {
            if v[next..p].iter().any(|x| !x.is_zero()) {
                return false;
            }
            let (q, rem) = v[p].div_rem(self.echelon.get(p, j));
            if !rem.is_zero() {
                return false;
            }
            if !q.is_zero() {
                for (r, x) in v.iter_mut().enumerate().skip(p) {
                    *x -= &q * self.echelon.get(r, j);
                }
            }
            next = p + 1;
        }
        v[next..].iter().all(Zero::is_zero)
    }
}

/// Some integer solution of `A x = b`, if one exists.
pub fn solve(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    solve_with(&smith_decomposition(a), a.cols, b)
}

/// Like [`solve`], reusing a decomposition of `A` (which has `cols` columns).
pub fn solve_with(snf: &SmithDecomposition, cols: usize, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let c = snf.left.mul_vec(b);
    let r = snf.rank();
    if c[r..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut y = vec![BigInt::zero(); cols];
    for i in 0..r {
        let (q, rem) = c[i].div_rem(&snf.diagonal[i]);
        if !rem.is_zero() {
            return None;
        }
        y[i] = q;
    }
    Some(snf.right.mul_vec(&y))
}

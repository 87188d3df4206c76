//! Exact sparse linear algebra over the rationals.
//!
//! Everything the representation code needs: sparse matrices with exact
//! entries, products, and incremental row reduction for ranks, nullities and
//! invariant-subspace closure.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rational(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Renders `n` or `n/d`.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() || d.is_negative() {
        return None;
    }
    Some(BigRational::new(n, d))
}

/// A sparse row: `(column, value)` pairs, strictly increasing in column,
/// with no stored zeros.
pub type SparseRow = Vec<(usize, Rational)>;

fn axpy(row: &SparseRow, factor: &Rational, other: &SparseRow) -> SparseRow {
    // row + factor * other
    let mut out = Vec::with_capacity(row.len() + other.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < other.len() {
        let take_left = j == other.len() || (i < row.len() && row[i].0 < other[j].0);
        let take_right = i == row.len() || (j < other.len() && other[j].0 < row[i].0);
        if take_left {
            out.push(row[i].clone());
            i += 1;
        } else if take_right {
            out.push((other[j].0, factor * &other[j].1));
            j += 1;
        } else {
            let v = &row[i].1 + factor * &other[j].1;
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Row echelon form built one row at a time.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the current pivots; the remainder is zero iff
    /// `row` lies in the span.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        let mut start = 0;
        while let Some(pos) = row[start..]
            .iter()
            .position(|(c, _)| self.pivots.contains_key(c))
        {
            let idx = start + pos;
            let (col, coeff) = row[idx].clone();
            let pivot = &self.pivots[&col];
            row = axpy(&row, &-coeff, pivot);
            // Entries before `idx` are untouched: pivot rows start at `col`.
            start = idx;
        }
        row
    }

    /// Adds `row` to the span; returns whether the rank grew.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let row = self.reduce(row);
        let Some((col, lead)) = row.first().cloned() else {
            return false;
        };
        let inv = lead.recip();
        let row = row.into_iter().map(|(c, v)| (c, v * &inv)).collect();
        self.pivots.insert(col, row);
        true
    }

    pub fn contains(&self, row: SparseRow) -> bool {
        self.reduce(row).is_empty()
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseRow>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in self.dense_rows() {
            let cells: Vec<String> = r.iter().map(format_rational).collect();
            writeln!(f, "  [{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i].push((i, Rational::one()));
        }
        m
    }

    /// Builds from `(row, col, value)` triples; repeated positions add up.
    pub fn from_triples(
        rows: usize,
        cols: usize,
        triples: impl IntoIterator<Item = (usize, usize, Rational)>,
    ) -> Matrix {
        let mut acc: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); rows];
        for (r, c, v) in triples {
            assert!(
                r < rows && c < cols,
                "entry ({r},{c}) outside {rows}x{cols}"
            );
            *acc[r].entry(c).or_insert_with(Rational::zero) += v;
        }
        Matrix {
            rows,
            cols,
            data: acc
                .into_iter()
                .map(|m| m.into_iter().filter(|(_, v)| !v.is_zero()).collect())
                .collect(),
        }
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Matrix {
        let cols = rows.first().map_or(0, Vec::len);
        Matrix::from_triples(
            rows.len(),
            cols,
            rows.iter().enumerate().flat_map(|(i, r)| {
                assert_eq!(r.len(), cols, "ragged dense matrix");
                r.iter().enumerate().map(move |(j, v)| (i, j, v.clone()))
            }),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SparseRow {
        &self.data[i]
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.data[r]
            .binary_search_by_key(&c, |(col, _)| *col)
            .map_or_else(|_| Rational::zero(), |k| self.data[r][k].1.clone())
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn dense_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows)
            .map(|r| {
                let mut dense = vec![Rational::zero(); self.cols];
                for (c, v) in &self.data[r] {
                    dense[*c] = v.clone();
                }
                dense
            })
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_triples(
            self.cols,
            self.rows,
            self.entries().map(|(r, c, v)| (c, r, v.clone())),
        )
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.combine(other, &Rational::one())
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.combine(other, &-Rational::one())
    }

    fn combine(&self, other: &Matrix, factor: &Rational) -> Matrix {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch"
        );
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| axpy(a, factor, b))
                .collect(),
        }
    }

    pub fn scale(&self, q: &Rational) -> Matrix {
        if q.is_zero() {
            return Matrix::zeros(self.rows, self.cols);
        }
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|row| row.iter().map(|(c, v)| (*c, v * q)).collect())
                .collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
                for (k, a) in row {
                    for (c, b) in &other.data[*k] {
                        *acc.entry(*c).or_insert_with(Rational::zero) += a * b;
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        Matrix {
            rows: self.rows,
            cols: other.cols,
            data,
        }
    }

    /// Image of a sparse column vector.
    pub fn apply(&self, v: &SparseRow) -> SparseRow {
        let dense: BTreeMap<usize, &Rational> = v.iter().map(|(i, q)| (*i, q)).collect();
        let mut out = Vec::new();
        for (r, row) in self.data.iter().enumerate() {
            let mut s = Rational::zero();
            for (c, a) in row {
                if let Some(x) = dense.get(c) {
                    s += a * *x;
                }
            }
            if !s.is_zero() {
                out.push((r, s));
            }
        }
        out
    }

    /// The submatrix on the given row and column index lists.
    pub fn restrict(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let col_pos: BTreeMap<usize, usize> =
            cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        Matrix::from_triples(
            rows.len(),
            cols.len(),
            rows.iter().enumerate().flat_map(|(i, &r)| {
                let col_pos = &col_pos;
                self.data[r]
                    .iter()
                    .filter_map(move |(c, v)| col_pos.get(c).map(|&j| (i, j, v.clone())))
            }),
        )
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new();
        for row in &self.data {
            ech.insert(row.clone());
        }
        ech.rank()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Whether every entry is zero or one.
    pub fn is_zero_one(&self) -> bool {
        self.entries().all(|(_, _, v)| v.is_one())
    }
}

/// Dimension of `{T : T·a = b·T for every pair (a, b)}` for `T` of shape
/// `b.rows × a.rows`.
pub fn intertwiner_dim(pairs: &[(&Matrix, &Matrix)], n_src: usize, n_dst: usize) -> usize {
    let unknowns = n_src * n_dst;
    let var = |i: usize, j: usize| i * n_src + j;
    let mut ech = Echelon::new();
    'outer: for (a, b) in pairs {
        assert_eq!((a.rows(), a.cols()), (n_src, n_src));
        assert_eq!((b.rows(), b.cols()), (n_dst, n_dst));
        let at = a.transpose();
        // Entry (i, j) of T·a − b·T: Σ_k T[i,k]·a[k,j] − Σ_k b[i,k]·T[k,j].
        for i in 0..n_dst {
            for j in 0..n_src {
                let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
                for (k, v) in at.row(j) {
                    *acc.entry(var(i, *k)).or_insert_with(Rational::zero) += v;
                }
                for (k, v) in b.row(i) {
                    *acc.entry(var(*k, j)).or_insert_with(Rational::zero) -= v;
                }
                let row: SparseRow = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                if !row.is_empty() {
                    ech.insert(row);
                    if ech.rank() == unknowns {
                        break 'outer;
                    }
                }
            }
        }
    }
    unknowns - ech.rank()
}

/// The smallest subspace containing `start` and invariant under every matrix
/// in `ops`, returned as the list of vectors found along the way (a basis).
pub fn invariant_closure(ops: &[&Matrix], start: SparseRow) -> Vec<SparseRow> {
    let mut ech = Echelon::new();
    let mut basis = Vec::new();
    let mut queue = vec![start];
    while let Some(v) = queue.pop() {
        if v.is_empty() || !ech.insert(v.clone()) {
            continue;
        }
        for m in ops {
            queue.push(m.apply(&v));
        }
        basis.push(v);
    }
    basis
}

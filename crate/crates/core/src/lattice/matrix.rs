use crate::error::{Error, Result};
use crate::json_int::{bigint_from_value, bigint_to_value};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};
use std::fmt;

/// Dense `rows x cols` integer matrix, row-major. The `0 x k` matrix is a
/// valid value (the rank-0 substitution).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                context: "matrix entry count",
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// From small-integer rows. An empty slice gives the `0 x 0` matrix;
    /// use [`IntMatrix::zeros`] for `0 x k`.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    context: "matrix row length",
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r.iter().map(|&x| BigInt::from(x)));
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_big_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    context: "matrix row length",
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r);
        }
        Ok(IntMatrix { rows: n, cols, data })
    }

    /// A single-row matrix.
    pub fn row_vector(v: &[BigInt]) -> Self {
        IntMatrix {
            rows: 1,
            cols: v.len(),
            data: v.to_vec(),
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

    pub(crate) fn row_mut(&mut self, i: usize) -> &mut [BigInt] {
        let c = self.cols;
        &mut self.data[i * c..(i + 1) * c]
    }

    pub fn is_zero_row(&self, i: usize) -> bool {
        self.row(i).iter().all(Zero::is_zero)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(ToPrimitive::to_i64).collect())
            .collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                context: "matrix product",
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(l, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        out
    }

    /// Rank over the rationals (fraction-free elimination).
    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<BigInt>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut rank = 0;
        let mut prev = BigInt::one();
        for c in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            for i in rank + 1..self.rows {
                for j in c + 1..self.cols {
                    let v = &a[rank][c] * &a[i][j] - &a[i][c] * &a[rank][j];
                    a[i][j] = v / &prev;
                }
                a[i][c] = BigInt::zero();
            }
            prev = a[rank][c].clone();
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    /// Determinant of a square matrix (Bareiss).
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                context: "determinant of a non-square matrix",
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
                return Ok(BigInt::zero());
            };
            if p != c {
                a.swap(p, c);
                sign = -sign;
            }
            for i in c + 1..n {
                for j in c + 1..n {
                    let v = &a[c][c] * &a[i][j] - &a[i][c] * &a[c][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[c][c].clone();
        }
        Ok(sign * &a[n - 1][n - 1])
    }

    /// Row-echelon Hermite normal form test: zero rows at the bottom,
    /// positive pivots strictly moving right, entries above each pivot in
    /// `[0, pivot)`.
    pub fn is_hnf(&self) -> bool {
        let mut last_pivot: Option<usize> = None;
        let mut seen_zero = false;
        let mut pivots = Vec::new();
        for i in 0..self.rows {
            match self.row(i).iter().position(|x| !x.is_zero()) {
                None => seen_zero = true,
                Some(j) => {
                    if seen_zero || last_pivot.is_some_and(|l| j <= l) || !self.get(i, j).is_positive() {
                        return false;
                    }
                    last_pivot = Some(j);
                    pivots.push((i, j));
                }
            }
        }
        for &(i, j) in &pivots {
            let p = self.get(i, j);
            for r in 0..i {
                let x = self.get(r, j);
                if x.is_negative() || x >= p {
                    return false;
                }
            }
        }
        true
    }

    /// Column of the leading nonzero entry of each nonzero row.
    pub fn pivot_cols(&self) -> Vec<usize> {
        (0..self.rows)
            .filter_map(|i| self.row(i).iter().position(|x| !x.is_zero()))
            .collect()
    }

    /// Drops all-zero rows.
    pub fn strip_zero_rows(&self) -> IntMatrix {
        let rows: Vec<Vec<BigInt>> = (0..self.rows)
            .filter(|&i| !self.is_zero_row(i))
            .map(|i| self.row(i).to_vec())
            .collect();
        IntMatrix::from_big_rows(rows, self.cols).expect("consistent rows")
    }

    /// Appends zero rows up to `rows` total.
    pub fn pad_rows(&self, rows: usize) -> IntMatrix {
        let mut m = self.clone();
        if rows > m.rows {
            m.data.resize(rows * m.cols, BigInt::zero());
            m.rows = rows;
        }
        m
    }

    pub(crate) fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            for c in 0..self.cols {
                self.data.swap(i * self.cols + c, j * self.cols + c);
            }
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for x in self.row_mut(i) {
            *x = -&*x;
        }
    }

    /// `row_i += factor * row_j`
    pub(crate) fn add_row_multiple(&mut self, i: usize, j: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        let c = self.cols;
        for col in 0..c {
            let v = &self.data[j * c + col] * factor;
            self.data[i * c + col] += v;
        }
    }

    pub(crate) fn divide_row(&mut self, i: usize, g: &BigInt) {
        for x in self.row_mut(i) {
            *x = x.div_floor(g);
        }
    }

    pub(crate) fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + i, r * self.cols + j);
            }
        }
    }

    pub(crate) fn negate_col(&mut self, i: usize) {
        for r in 0..self.rows {
            let x = &mut self.data[r * self.cols + i];
            *x = -&*x;
        }
    }

    /// `col_i += factor * col_j`
    pub(crate) fn add_col_multiple(&mut self, i: usize, j: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let v = &self.data[r * self.cols + j] * factor;
            self.data[r * self.cols + i] += v;
        }
    }

    pub(crate) fn scale_col(&mut self, i: usize, g: &BigInt) {
        for r in 0..self.rows {
            self.data[r * self.cols + i] *= g;
        }
    }

    pub fn to_json(&self) -> Value {
        let data: Vec<Vec<Value>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(bigint_to_value).collect())
            .collect();
        json!({ "rows": self.rows, "cols": self.cols, "data": data })
    }

    /// Accepts the object form `{"rows", "cols", "data"}` or a bare array
    /// of rows.
    pub fn from_json(v: &Value) -> Result<Self> {
        let (rows_v, declared) = match v {
            Value::Array(a) => (a, None),
            Value::Object(_) => {
                let data = v
                    .get("data")
                    .and_then(Value::as_array)
                    .ok_or_else(|| Error::Json("matrix needs an array field \"data\"".into()))?;
                let r = v.get("rows").and_then(Value::as_u64);
                let c = v.get("cols").and_then(Value::as_u64);
                match (r, c) {
                    (Some(r), Some(c)) => (data, Some((r as usize, c as usize))),
                    _ => return Err(Error::Json("matrix needs integer fields \"rows\" and \"cols\"".into())),
                }
            }
            _ => return Err(Error::Json("matrix must be an object or an array of rows".into())),
        };
        let mut rows = Vec::with_capacity(rows_v.len());
        for r in rows_v {
            let r = r
                .as_array()
                .ok_or_else(|| Error::Json("matrix rows must be arrays".into()))?;
            rows.push(r.iter().map(bigint_from_value).collect::<Result<Vec<_>>>()?);
        }
        let cols = match declared {
            Some((r, c)) => {
                if r != rows.len() {
                    return Err(Error::DimensionMismatch {
                        context: "matrix row count",
                        expected: r,
                        found: rows.len(),
                    });
                }
                c
            }
            None => rows.first().map_or(0, Vec::len),
        };
        IntMatrix::from_big_rows(rows, cols)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s)?;
        Self::from_json(&v)
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(deserializer)?;
        IntMatrix::from_json(&v).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

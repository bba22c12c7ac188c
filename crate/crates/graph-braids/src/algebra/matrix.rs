use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::BTreeMap;

/// Dense matrix of arbitrary-precision integers, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = IntegerMatrix::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c);
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntegerMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j) + a * b;
                        out.set(i, j, cur);
                    }
                }
            }
        }
        out
    }
}

/// Row-sparse integer matrix. Boundary operators are enormous but almost
/// empty, so elimination and composition work on occupied entries only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseIntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub row_data: Vec<BTreeMap<usize, BigInt>>,
}

impl SparseIntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseIntMatrix { rows, cols, row_data: vec![BTreeMap::new(); rows] }
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        if v.is_zero() {
            self.row_data[i].remove(&j);
        } else {
            self.row_data[i].insert(j, v);
        }
    }

    pub fn add_assign(&mut self, i: usize, j: usize, v: &BigInt) {
        if v.is_zero() {
            return;
        }
        let row = &mut self.row_data[i];
        let cur = row.entry(j).or_insert_with(BigInt::zero);
        *cur += v;
        if cur.is_zero() {
            row.remove(&j);
        }
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.row_data[i].get(&j).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn nnz(&self) -> usize {
        self.row_data.iter().map(|r| r.len()).sum()
    }

    pub fn from_dense(m: &IntegerMatrix) -> Self {
        let mut out = SparseIntMatrix::zero(m.rows, m.cols);
        for i in 0..m.rows {
            for j in 0..m.cols {
                if !m.get(i, j).is_zero() {
                    out.set(i, j, m.get(i, j).clone());
                }
            }
        }
        out
    }

    pub fn to_dense(&self) -> IntegerMatrix {
        let mut out = IntegerMatrix::zero(self.rows, self.cols);
        for (i, row) in self.row_data.iter().enumerate() {
            for (&j, v) in row {
                out.set(i, j, v.clone());
            }
        }
        out
    }

    /// self * other, built row by row as integer combinations of other's rows.
    pub fn mul(&self, other: &SparseIntMatrix) -> SparseIntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = SparseIntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
            for (&k, a) in &self.row_data[i] {
                for (&j, b) in &other.row_data[k] {
                    let cur = acc.entry(j).or_insert_with(BigInt::zero);
                    *cur += a * b;
                }
            }
            acc.retain(|_, v| !v.is_zero());
            out.row_data[i] = acc;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.row_data.iter().all(|r| r.is_empty())
    }
}

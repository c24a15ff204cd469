use crate::{Error, Item, Result};

/// Read access to a collection of ascending rows.
///
/// Columns are 1-based: `entry(i, 1)` is the smallest item of row `i`.
pub trait SortedRows {
    type Item: Ord + Clone;

    fn num_rows(&self) -> usize;

    /// The item at `col` of `row`, or `None` past the end of the row.
    fn entry(&self, row: usize, col: usize) -> Option<Self::Item>;

    /// The length of `row`, or `None` if the row never ends.
    fn row_len(&self, row: usize) -> Option<usize>;
}

impl<A: SortedRows + ?Sized> SortedRows for &A {
    type Item = A::Item;

    fn num_rows(&self) -> usize {
        (**self).num_rows()
    }

    fn entry(&self, row: usize, col: usize) -> Option<Self::Item> {
        (**self).entry(row, col)
    }

    fn row_len(&self, row: usize) -> Option<usize> {
        (**self).row_len(row)
    }
}

/// A row-sorted matrix held in memory. Rows may have different lengths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: Vec<Vec<T>>,
}

impl<T: Ord + Clone> Matrix<T> {
    /// Fails if some row is not in ascending order.
    pub fn new(rows: Vec<Vec<T>>) -> Result<Self> {
        for (row, r) in rows.iter().enumerate() {
            if let Some(col) = (1..r.len()).find(|&j| r[j] < r[j - 1]) {
                return Err(Error::UnsortedRow { row, col: col + 1 });
            }
        }
        Ok(Matrix { rows })
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<T>> {
        self.rows
    }
}

impl<K: Ord + Clone> Matrix<Item<K>> {
    /// Builds a matrix of items from keys; the item in row `i`, 0-based
    /// column `j` gets id `(i << 32) | j`.
    pub fn from_keys(rows: Vec<Vec<K>>) -> Result<Self> {
        let rows = rows
            .into_iter()
            .enumerate()
            .map(|(i, r)| {
                r.into_iter()
                    .enumerate()
                    .map(|(j, key)| Item::new(key, matrix_id(i, j)))
                    .collect()
            })
            .collect();
        Matrix::new(rows)
    }
}

impl std::str::FromStr for Matrix<Item<i64>> {
    type Err = Error;

    /// Reads the text format: the first line holds the number of rows `m`,
    /// each of the next `m` lines holds one row's keys in ascending order,
    /// separated by whitespace. Ids are assigned as in
    /// [`from_keys`](Matrix::from_keys).
    ///
    /// ```
    /// use softselect::matrix_select::Matrix;
    ///
    /// let a: Matrix<_> = "2\n1 4 9\n2 3\n".parse().unwrap();
    /// assert_eq!(a.rows()[1][1].key, 3);
    /// assert!("2\n1 2\n".parse::<Matrix<_>>().is_err());
    /// ```
    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let bad = |line: usize, message: String| Error::Parse { line: line + 1, message };
        let (_, first) = lines.next().ok_or_else(|| bad(0, "missing row count".into()))?;
        let m: usize = first.trim().parse().map_err(|e| bad(0, format!("row count: {e}")))?;
        let mut rows = Vec::with_capacity(m);
        for (line, text) in lines.by_ref().take(m) {
            let row = text
                .split_whitespace()
                .map(|t| t.parse::<i64>().map_err(|e| bad(line, format!("key {t:?}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        if rows.len() < m {
            return Err(bad(rows.len() + 1, format!("expected {m} rows, found {}", rows.len())));
        }
        if let Some((line, _)) = lines.find(|(_, t)| !t.trim().is_empty()) {
            return Err(bad(line, "text after the last row".into()));
        }
        Matrix::from_keys(rows)
    }
}

/// The id [`Matrix::from_keys`] gives to row `row`, 0-based column `col`.
pub fn matrix_id(row: usize, col: usize) -> u64 {
    ((row as u64) << 32) | col as u64
}

impl<T: Ord + Clone> SortedRows for Matrix<T> {
    type Item = T;

    fn num_rows(&self) -> usize {
        self.rows.len()
    }

    fn entry(&self, row: usize, col: usize) -> Option<T> {
        col.checked_sub(1).and_then(|c| self.rows[row].get(c)).cloned()
    }

    fn row_len(&self, row: usize) -> Option<usize> {
        Some(self.rows[row].len())
    }
}

/// The matrix `A'` with `A'[i][j] = A[i][c*j + d_i]`, for a stride `c >= 1`
/// and per-row displacements `d_i`.
#[derive(Clone, Debug)]
pub struct MatrixView<'a, A: ?Sized> {
    base: &'a A,
    stride: usize,
    disp: Vec<usize>,
}

impl<'a, A: SortedRows + ?Sized> MatrixView<'a, A> {
    /// The identity view: stride 1, no displacements.
    pub fn new(base: &'a A) -> Self {
        let disp = vec![0; base.num_rows()];
        MatrixView { base, stride: 1, disp }
    }

    pub fn with(base: &'a A, stride: usize, disp: Vec<usize>) -> Result<Self> {
        if stride == 0 {
            return Err(Error::InvalidArity { d: 0, min: 1 });
        }
        if disp.len() != base.num_rows() {
            return Err(Error::RowMismatch { expected: base.num_rows(), got: disp.len() });
        }
        Ok(MatrixView { base, stride, disp })
    }

    pub fn stride(&self) -> usize {
        self.stride
    }

    pub fn displacements(&self) -> &[usize] {
        &self.disp
    }
}

impl<A: SortedRows + ?Sized> SortedRows for MatrixView<'_, A> {
    type Item = A::Item;

    fn num_rows(&self) -> usize {
        self.disp.len()
    }

    fn entry(&self, row: usize, col: usize) -> Option<A::Item> {
        if col == 0 {
            return None;
        }
        self.base.entry(row, self.stride * col + self.disp[row])
    }

    fn row_len(&self, row: usize) -> Option<usize> {
        self.base
            .row_len(row)
            .map(|n| n.saturating_sub(self.disp[row]) / self.stride)
    }
}

/// A view over a subset of rows of `base`, each with its own stride
/// offset and a cap on the number of logical entries.
pub(crate) struct Lens<'a, A: ?Sized> {
    pub base: &'a A,
    pub rows: Vec<usize>,
    pub stride: usize,
    pub disp: Vec<usize>,
    pub cap: Vec<usize>,
}

impl<A: SortedRows + ?Sized> SortedRows for Lens<'_, A> {
    type Item = A::Item;

    fn num_rows(&self) -> usize {
        self.rows.len()
    }

    fn entry(&self, row: usize, col: usize) -> Option<A::Item> {
        if col == 0 || col > self.cap[row] {
            return None;
        }
        self.base.entry(self.rows[row], self.stride * col + self.disp[row])
    }

    fn row_len(&self, row: usize) -> Option<usize> {
        let natural = self
            .base
            .row_len(self.rows[row])
            .map(|n| n.saturating_sub(self.disp[row]) / self.stride);
        match natural {
            Some(n) => Some(n.min(self.cap[row])),
            None if self.cap[row] == usize::MAX => None,
            None => Some(self.cap[row]),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn views() {
        let a = Matrix::new(vec![(1..=10).collect::<Vec<i32>>(), vec![5, 6]]).unwrap();
        assert_eq!(a.entry(0, 1), Some(1));
        assert_eq!(a.entry(1, 3), None);
        let v = MatrixView::with(&a, 3, vec![1, 0]).unwrap();
        assert_eq!(v.entry(0, 1), Some(4));
        assert_eq!(v.entry(0, 3), Some(10));
        assert_eq!(v.row_len(0), Some(3));
        assert_eq!(v.row_len(1), Some(0));
        assert!(Matrix::new(vec![vec![2, 1]]).is_err());
        assert!(MatrixView::with(&a, 0, vec![0, 0]).is_err());
    }
}

//! Dense row-major 0/1 matrix used for the tag, correctness and attempt tables.

use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    cells: Vec<bool>,
}

impl BinaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            cells: vec![false; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> bool {
        assert!(
            row < self.rows && col < self.cols,
            "index ({row}, {col}) out of bounds"
        );
        self.cells[row * self.cols + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        assert!(
            row < self.rows && col < self.cols,
            "index ({row}, {col}) out of bounds"
        );
        self.cells[row * self.cols + col] = value;
    }

    pub fn row(&self, row: usize) -> &[bool] {
        &self.cells[row * self.cols..(row + 1) * self.cols]
    }

    /// Column indices holding a 1 in `row`, ascending.
    pub fn row_ones(&self, row: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(row)
            .iter()
            .enumerate()
            .filter_map(|(j, &v)| v.then_some(j))
    }

    pub fn col_sum(&self, col: usize) -> u64 {
        (0..self.rows).filter(|&r| self.get(r, col)).count() as u64
    }

    pub fn total(&self) -> u64 {
        self.cells.iter().filter(|&&v| v).count() as u64
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let line: String = self
                .row(r)
                .iter()
                .map(|&v| if v { '1' } else { '0' })
                .collect();
            writeln!(f, "  {line}")?;
        }
        write!(f, "]")
    }
}

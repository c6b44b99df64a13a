//! Linear forms over GF(2) on at most 64 variables, one `u64` per row.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

pub const MAX_WIDTH: usize = 64;

/// Converts an index list to a row mask.
pub fn mask_of(indices: &[usize]) -> u64 {
    indices.iter().fold(0u64, |acc, &i| acc ^ (1u64 << i))
}

/// Index list of a row mask, ascending.
pub fn indices_of(mut mask: u64) -> Vec<usize> {
    let mut out = Vec::new();
    while mask != 0 {
        let i = mask.trailing_zeros() as usize;
        out.push(i);
        mask &= mask - 1;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gf2Matrix {
    width: usize,
    rows: Vec<u64>,
}

impl Gf2Matrix {
    pub fn new(width: usize) -> Result<Self> {
        if width > MAX_WIDTH {
            return domain(format!("GF(2) rows are limited to {MAX_WIDTH} variables"));
        }
        Ok(Gf2Matrix {
            width,
            rows: Vec::new(),
        })
    }

    pub fn from_forms<'a>(
        width: usize,
        forms: impl IntoIterator<Item = &'a [usize]>,
    ) -> Result<Self> {
        let mut g = Gf2Matrix::new(width)?;
        for f in forms {
            g.push(f)?;
        }
        Ok(g)
    }

    pub fn push(&mut self, form: &[usize]) -> Result<()> {
        if let Some(&i) = form.iter().find(|&&i| i >= self.width) {
            return domain(format!("variable {i} outside width {}", self.width));
        }
        self.rows.push(mask_of(form));
        Ok(())
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn rank(&self) -> usize {
        let mut sys = Gf2System::default();
        self.rows.iter().filter(|&&r| sys.insert(r, 0)).count()
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stacked(&self, other: &Gf2Matrix) -> Gf2Matrix {
        Gf2Matrix {
            width: self.width.max(other.width),
            rows: self.rows.iter().chain(&other.rows).copied().collect(),
        }
    }
}

/// Row-echelon basis of known linear forms, each with its value.
#[derive(Clone, Debug, Default)]
pub struct Gf2System {
    /// `(pivot bit, row, value)`; pivots are distinct.
    basis: Vec<(u32, u64, u8)>,
}

impl Gf2System {
    fn reduce(&self, mut row: u64, mut value: u8) -> (u64, u8) {
        for &(p, r, v) in &self.basis {
            if row >> p & 1 == 1 {
                row ^= r;
                value ^= v;
            }
        }
        (row, value)
    }

    /// Adds a known form; returns whether it was independent.
    pub fn insert(&mut self, row: u64, value: u8) -> bool {
        let (r, v) = self.reduce(row, value);
        if r == 0 {
            return false;
        }
        let p = 63 - r.leading_zeros();
        // keep earlier rows free of the new pivot so reduction stays one pass
        for entry in self.basis.iter_mut() {
            if entry.1 >> p & 1 == 1 {
                entry.1 ^= r;
                entry.2 ^= v;
            }
        }
        self.basis.push((p, r, v));
        true
    }

    /// Value of `row` if it lies in the span of the known forms.
    pub fn evaluate(&self, row: u64) -> Option<u8> {
        let (r, v) = self.reduce(row, 0);
        (r == 0).then_some(v)
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }
}

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Position along a Hilbert curve filling a `2^order x 2^order` grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertIndex {
    pub d: u64,
    pub order: u32,
}

impl HilbertIndex {
    pub fn new(d: u64, order: u32) -> Result<Self> {
        if order == 0 || order > 31 {
            return Err(Error::Range(format!("hilbert order {order} outside 1..=31")));
        }
        if d >= 1u64 << (2 * order) {
            return Err(Error::Range(format!(
                "hilbert distance {d} outside a curve of order {order}"
            )));
        }
        Ok(Self { d, order })
    }

    pub fn side(&self) -> u64 {
        1 << self.order
    }
}

/// Maps a curve distance to `(row, col)`.
///
/// The order-1 curve visits (0,0), (1,0), (1,1), (0,1).
pub fn hilbert_d2xy(idx: HilbertIndex) -> (usize, usize) {
    let n = idx.side();
    let (mut x, mut y) = (0u64, 0u64);
    let mut t = idx.d;
    let mut s = 1u64;
    while s < n {
        let rx = 1 & (t / 2);
        let ry = 1 & (t ^ rx);
        if ry == 0 {
            if rx == 1 {
                x = s - 1 - x;
                y = s - 1 - y;
            }
            std::mem::swap(&mut x, &mut y);
        }
        x += s * rx;
        y += s * ry;
        t /= 4;
        s *= 2;
    }
    (y as usize, x as usize)
}

/// Smallest order whose curve covers a `rows x cols` grid.
pub fn covering_order(rows: usize, cols: usize) -> u32 {
    let side = rows.max(cols).max(2);
    side.next_power_of_two().trailing_zeros()
}

/// Grid positions of a `rows x cols` grid in curve order, skipping curve
/// cells that fall outside the grid.
pub fn curve_positions(rows: usize, cols: usize) -> Vec<(usize, usize)> {
    let order = covering_order(rows, cols);
    let total = 1u64 << (2 * order);
    (0..total)
        .map(|d| hilbert_d2xy(HilbertIndex { d, order }))
        .filter(|&(r, c)| r < rows && c < cols)
        .collect()
}

//! Gaussian elimination of a three-term complex of diagonally presented
//! groups: a unit entry between coordinates of equal order spans an acyclic
//! summand `Z/o → Z/o`, which is split off without changing homology.

use alloc::collections::{BTreeMap, BTreeSet, BinaryHeap};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::int::Int;
use crate::lattice::HomologyData;
use crate::matrix::{Matrix, SparseVec};

struct Work {
    rows: Vec<BTreeMap<usize, Int>>,
    cols: Vec<BTreeSet<usize>>,
    row_orders: Vec<Int>,
    col_orders: Vec<Int>,
    row_alive: Vec<bool>,
    col_alive: Vec<bool>,
}

fn unit_inverse(a: &Int, o: &Int) -> Option<Int> {
    if o.is_zero() {
        return (a.abs().is_one()).then(|| a.clone());
    }
    let (g, s, _) = Int::ext_gcd(a, o);
    g.abs().is_one().then(|| (&s * &g).rem_euclid(o))
}

impl Work {
    fn new(m: &Matrix, row_orders: &[Int], col_orders: &[Int]) -> Work {
        let mut rows = vec![BTreeMap::new(); m.nrows()];
        let mut cols = vec![BTreeSet::new(); m.ncols()];
        for (j, col) in m.columns().iter().enumerate() {
            for (i, v) in col {
                let o = &row_orders[*i];
                let v = if o.is_zero() { v.clone() } else { v.rem_euclid(o) };
                if !v.is_zero() {
                    rows[*i].insert(j, v);
                    cols[j].insert(*i);
                }
            }
        }
        Work {
            rows,
            cols,
            row_orders: row_orders.to_vec(),
            col_orders: col_orders.to_vec(),
            row_alive: vec![true; m.nrows()],
            col_alive: vec![true; m.ncols()],
        }
    }

    fn drop_row(&mut self, r: usize) {
        for c in core::mem::take(&mut self.rows[r]).into_keys() {
            self.cols[c].remove(&r);
        }
        self.row_alive[r] = false;
    }

    fn drop_col(&mut self, c: usize) {
        for r in core::mem::take(&mut self.cols[c]) {
            self.rows[r].remove(&c);
        }
        self.col_alive[c] = false;
    }

    /// Best unit pivot in column `c`, with the inverse of its entry.
    fn pivot_in(&self, c: usize) -> Option<(usize, Int)> {
        let oc = &self.col_orders[c];
        self.cols[c]
            .iter()
            .filter(|&&r| &self.row_orders[r] == oc)
            .filter_map(|&r| unit_inverse(&self.rows[r][&c], oc).map(|inv| (r, inv)))
            .min_by_key(|(r, _)| self.rows[*r].len())
    }

    /// `M ← M − col_c · inv · row_r`, then removes row `r` and column `c`.
    fn eliminate(&mut self, r: usize, c: usize, inv: &Int) {
        let row: Vec<(usize, Int)> =
            self.rows[r].iter().filter(|(q, _)| **q != c).map(|(q, v)| (*q, v * inv)).collect();
        let col: Vec<usize> = self.cols[c].iter().copied().filter(|&x| x != r).collect();
        for x in col {
            let g = self.rows[x][&c].clone();
            let o = self.row_orders[x].clone();
            for (q, v) in &row {
                let cur = self.rows[x].get(q).cloned().unwrap_or(Int::ZERO);
                let mut nv = cur.add_mul(&-&g, v);
                if !o.is_zero() {
                    nv = nv.rem_euclid(&o);
                }
                if nv.is_zero() {
                    if self.rows[x].remove(q).is_some() {
                        self.cols[*q].remove(&x);
                    }
                } else {
                    self.rows[x].insert(*q, nv);
                    self.cols[*q].insert(x);
                }
            }
        }
        self.drop_row(r);
        self.drop_col(c);
    }

    /// Eliminates unit pivots, always from a lightest remaining column;
    /// returns the eliminated `(row, col)` pairs.
    fn sweep(&mut self) -> Vec<(usize, usize)> {
        let mut heap: BinaryHeap<Reverse<(usize, usize)>> = (0..self.cols.len())
            .filter(|&c| self.col_alive[c] && !self.cols[c].is_empty())
            .map(|c| Reverse((self.cols[c].len(), c)))
            .collect();
        let mut done = Vec::new();
        while let Some(Reverse((w, c))) = heap.pop() {
            if !self.col_alive[c] || self.cols[c].is_empty() {
                continue;
            }
            if w != self.cols[c].len() {
                heap.push(Reverse((self.cols[c].len(), c)));
                continue;
            }
            if let Some((r, inv)) = self.pivot_in(c) {
                let touched: Vec<usize> = self.rows[r].keys().copied().filter(|&q| q != c).collect();
                self.eliminate(r, c, &inv);
                done.push((r, c));
                for q in touched {
                    if self.col_alive[q] && !self.cols[q].is_empty() {
                        heap.push(Reverse((self.cols[q].len(), q)));
                    }
                }
            }
        }
        done
    }

    fn residual(&self) -> (Matrix, Vec<usize>, Vec<usize>) {
        let live_rows: Vec<usize> = (0..self.rows.len()).filter(|&r| self.row_alive[r]).collect();
        let live_cols: Vec<usize> = (0..self.cols.len()).filter(|&c| self.col_alive[c]).collect();
        let mut row_pos = vec![usize::MAX; self.rows.len()];
        for (k, &r) in live_rows.iter().enumerate() {
            row_pos[r] = k;
        }
        let cols: Vec<SparseVec> = live_cols
            .iter()
            .map(|&c| {
                let mut v: SparseVec = self.cols[c].iter().map(|&r| (row_pos[r], self.rows[r][&c].clone())).collect();
                v.sort_by_key(|e| e.0);
                v
            })
            .collect();
        (Matrix::from_columns(live_rows.len(), cols), live_rows, live_cols)
    }
}

/// Homology at the middle of `prev →a→ mid →b→ next`, computed on the
/// complex left after cancelling all unit pairs; only the group is meaningful.
pub(crate) fn reduced_homology(
    a: Option<&Matrix>,
    b: Option<&Matrix>,
    prev: &[Int],
    mid: &[Int],
    next: &[Int],
) -> HomologyData {
    let empty_a = Matrix::zeros(mid.len(), 0);
    let empty_b = Matrix::zeros(0, mid.len());
    let mut wa = Work::new(a.unwrap_or(&empty_a), mid, if a.is_some() { prev } else { &[] });
    let mut wb = Work::new(b.unwrap_or(&empty_b), if b.is_some() { next } else { &[] }, mid);
    loop {
        let from_b = wb.sweep();
        for &(_, j) in &from_b {
            wa.drop_row(j);
        }
        let from_a = wa.sweep();
        for &(j, _) in &from_a {
            wb.drop_col(j);
        }
        if from_a.is_empty() && from_b.is_empty() {
            break;
        }
    }
    let (ma, mid_live, _) = wa.residual();
    let (mb, next_live, mid_live_b) = wb.residual();
    debug_assert_eq!(mid_live, mid_live_b);
    let mid_orders: Vec<Int> = mid_live.iter().map(|&j| mid[j].clone()).collect();
    let next_orders: Vec<Int> = next_live.iter().map(|&i| next[i].clone()).collect();
    HomologyData::compute(a.map(|_| &ma), b.map(|_| &mb), &mid_orders, &next_orders)
}

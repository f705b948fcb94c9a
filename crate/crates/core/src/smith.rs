//! Smith normal form over the integers.
//!
//! The working engine is dense with minimal-absolute-value pivoting. It can
//! track row and column transforms (and their inverses) and can optionally
//! work modulo a fixed `e`, which is valid whenever the caller only cares about
//! the lattice `im(A) + e·Z^r`.

use alloc::vec;
use alloc::vec::Vec;

use crate::int::Int;
use crate::matrix::Matrix;

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal with
/// non-negative entries forming a divisibility chain (zeros last).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: Matrix,
    pub d: Matrix,
    pub v: Matrix,
}

impl SmithDecomposition {
    /// The diagonal entries of `D`.
    pub fn diagonal(&self) -> Vec<Int> {
        (0..self.d.nrows().min(self.d.ncols())).map(|i| self.d.get(i, i)).collect()
    }
}

/// Computes the Smith normal form of an integer matrix.
pub fn smith_normal_form(m: &Matrix) -> SmithDecomposition {
    let (r, c) = (m.nrows(), m.ncols());
    let snf = DenseSnf::run(m.to_dense_rows(), c, Track::BOTH, None);
    let mut d = Matrix::zeros(r, c);
    let diag_cols: Vec<_> = (0..c)
        .map(|j| if j < snf.diag.len() && !snf.diag[j].is_zero() { vec![(j, snf.diag[j].clone())] } else { Vec::new() })
        .collect();
    if r > 0 || c == 0 {
        d = Matrix::from_columns(r, diag_cols);
    }
    let u = Matrix::from_rows(&snf.u.expect("tracked"));
    let v = Matrix::from_dense_columns(c, &snf.v_t.expect("tracked"));
    SmithDecomposition { u, d, v }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Track {
    pub rows: bool,
    pub row_inv: bool,
    pub cols: bool,
    pub col_inv: bool,
}

impl Track {
    pub const BOTH: Track = Track { rows: true, row_inv: false, cols: true, col_inv: false };
}

/// Result of the dense engine. Only the requested transforms are populated.
///
/// `u` is row-major, `u_inv_t` holds the *columns* of `U⁻¹`, `v_t` holds the
/// columns of `V`, `v_inv` is row-major. Each orientation turns the transform
/// update into a row operation.
pub(crate) struct DenseSnf {
    pub diag: Vec<Int>,
    pub u: Option<Vec<Vec<Int>>>,
    #[cfg_attr(not(test), allow(dead_code))]
    pub u_inv_t: Option<Vec<Vec<Int>>>,
    pub v_t: Option<Vec<Vec<Int>>>,
    pub v_inv: Option<Vec<Vec<Int>>>,
}

fn identity_rows(n: usize) -> Vec<Vec<Int>> {
    (0..n)
        .map(|i| {
            let mut r = vec![Int::ZERO; n];
            r[i] = Int::ONE;
            r
        })
        .collect()
}

/// `dst += k · src` on dense rows, optionally reduced mod `m`.
#[inline]
fn axpy(dst: &mut [Int], k: &Int, src: &[Int], m: Option<&Int>) {
    for (d, s) in dst.iter_mut().zip(src) {
        if s.is_zero() {
            continue;
        }
        let v = d.add_mul(s, k);
        *d = match m {
            Some(m) => v.rem_euclid(m),
            None => v,
        };
    }
}

fn row_axpy(rows: &mut [Vec<Int>], dst: usize, k: &Int, src: usize, m: Option<&Int>) {
    if dst == src || k.is_zero() {
        return;
    }
    let (a, b) = if dst < src {
        let (lo, hi) = rows.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    };
    axpy(a, k, b, m);
}

struct Engine<'a> {
    a: Vec<Vec<Int>>,
    ncols: usize,
    modulus: Option<&'a Int>,
    // transform reduction modulus; `None` keeps transforms exact
    tmod: Option<&'a Int>,
    u: Option<Vec<Vec<Int>>>,
    u_inv_t: Option<Vec<Vec<Int>>>,
    v_t: Option<Vec<Vec<Int>>>,
    v_inv: Option<Vec<Vec<Int>>>,
}

impl Engine<'_> {
    fn nrows(&self) -> usize {
        self.a.len()
    }

    /// row_i += k · row_t
    fn row_op(&mut self, i: usize, k: &Int, t: usize) {
        row_axpy(&mut self.a, i, k, t, self.modulus);
        if let Some(u) = self.u.as_mut() {
            row_axpy(u, i, k, t, self.tmod);
        }
        if let Some(ui) = self.u_inv_t.as_mut() {
            // U⁻¹ ← U⁻¹ E⁻¹: column t of U⁻¹ -= k · column i
            row_axpy(ui, t, &-k, i, self.tmod);
        }
    }

    /// col_j += k · col_t
    fn col_op(&mut self, j: usize, k: &Int, t: usize) {
        if k.is_zero() || j == t {
            return;
        }
        for row in self.a.iter_mut() {
            if row[t].is_zero() {
                continue;
            }
            let v = row[j].add_mul(&row[t], k);
            row[j] = match self.modulus {
                Some(m) => v.rem_euclid(m),
                None => v,
            };
        }
        if let Some(vt) = self.v_t.as_mut() {
            row_axpy(vt, j, k, t, self.tmod);
        }
        if let Some(vi) = self.v_inv.as_mut() {
            row_axpy(vi, t, &-k, j, self.tmod);
        }
    }

    fn swap_rows(&mut self, i: usize, t: usize) {
        if i == t {
            return;
        }
        self.a.swap(i, t);
        if let Some(u) = self.u.as_mut() {
            u.swap(i, t);
        }
        if let Some(ui) = self.u_inv_t.as_mut() {
            ui.swap(i, t);
        }
    }

    fn swap_cols(&mut self, j: usize, t: usize) {
        if j == t {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(j, t);
        }
        if let Some(vt) = self.v_t.as_mut() {
            vt.swap(j, t);
        }
        if let Some(vi) = self.v_inv.as_mut() {
            vi.swap(j, t);
        }
    }

    fn negate_row(&mut self, t: usize) {
        let m = self.modulus;
        for x in self.a[t].iter_mut() {
            *x = match m {
                Some(m) => (-&*x).rem_euclid(m),
                None => -&*x,
            };
        }
        let tm = self.tmod;
        let neg = |row: &mut Vec<Int>| {
            for x in row.iter_mut() {
                *x = match tm {
                    Some(m) => (-&*x).rem_euclid(m),
                    None => -&*x,
                };
            }
        };
        if let Some(u) = self.u.as_mut() {
            neg(&mut u[t]);
        }
        if let Some(ui) = self.u_inv_t.as_mut() {
            neg(&mut ui[t]);
        }
    }

    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.nrows() {
            for j in t..self.ncols {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.a[bi][bj].cmp_abs(x) != core::cmp::Ordering::Greater => {}
                    _ => {
                        best = Some((i, j));
                        if x.is_one() || (-x).is_one() {
                            return best;
                        }
                    }
                }
            }
        }
        best
    }

    fn eliminate(&mut self, t: usize) {
        loop {
            let p = self.a[t][t].clone();
            let mut smallest: Option<(bool, usize)> = None;
            let mut best_abs: Option<Int> = None;
            for i in t + 1..self.nrows() {
                if self.a[i][t].is_zero() {
                    continue;
                }
                let q = self.a[i][t].div_floor(&p);
                self.row_op(i, &-&q, t);
                let r = &self.a[i][t];
                if !r.is_zero() && best_abs.as_ref().is_none_or(|b| r.cmp_abs(b).is_lt()) {
                    best_abs = Some(r.abs());
                    smallest = Some((true, i));
                }
            }
            for j in t + 1..self.ncols {
                if self.a[t][j].is_zero() {
                    continue;
                }
                let q = self.a[t][j].div_floor(&p);
                self.col_op(j, &-&q, t);
                let r = &self.a[t][j];
                if !r.is_zero() && best_abs.as_ref().is_none_or(|b| r.cmp_abs(b).is_lt()) {
                    best_abs = Some(r.abs());
                    smallest = Some((false, j));
                }
            }
            match smallest {
                None => return,
                Some((true, i)) => self.swap_rows(i, t),
                Some((false, j)) => self.swap_cols(j, t),
            }
        }
    }

    /// Turns `diag(a, b)` at positions `i < j` into `diag(gcd, lcm)`.
    fn gcd_lcm(&mut self, i: usize, j: usize) {
        let a = self.a[i][i].clone();
        let b = self.a[j][j].clone();
        if a.divides(&b) {
            return;
        }
        if b.divides(&a) && !b.is_zero() {
            // swap the two positions
            self.swap_rows(i, j);
            self.swap_cols(i, j);
            return;
        }
        let (g, x, y) = Int::ext_gcd(&a, &b);
        let bg = b.div_exact(&g);
        let ag = a.div_exact(&g);
        // Column ops: col_i += col_j; then the standard 2x2 reduction.
        self.col_op(i, &Int::ONE, j);
        // now row i = [a, 0 ...], row j = [b, b]; combine rows to get gcd at (i,i)
        // row_i <- x·row_i + y·row_j ; row_j <- -(b/g)·row_i + (a/g)·row_j
        self.combine_rows(i, j, &x, &y, &-&bg, &ag);
        // (i,i) = g, (i,j) = y·b, (j,i) = 0, (j,j) = a·b/g
        let q = self.a[i][j].div_exact(&g);
        self.col_op(j, &-&q, i);
    }

    /// Applies the unimodular 2x2 `[[x, y], [z, w]]` (det 1) to rows `i`, `j`.
    fn combine_rows(&mut self, i: usize, j: usize, x: &Int, y: &Int, z: &Int, w: &Int) {
        fn mix(rows: &mut [Vec<Int>], i: usize, j: usize, c: [&Int; 4], m: Option<&Int>) {
            let n = rows[i].len();
            for k in 0..n {
                let (ri, rj) = (rows[i][k].clone(), rows[j][k].clone());
                if ri.is_zero() && rj.is_zero() {
                    continue;
                }
                let a = &(c[0] * &ri) + &(c[1] * &rj);
                let b = &(c[2] * &ri) + &(c[3] * &rj);
                rows[i][k] = m.map_or(a.clone(), |m| a.rem_euclid(m));
                rows[j][k] = m.map_or(b.clone(), |m| b.rem_euclid(m));
            }
        }
        mix(&mut self.a, i, j, [x, y, z, w], self.modulus);
        if let Some(u) = self.u.as_mut() {
            mix(u, i, j, [x, y, z, w], self.tmod);
        }
        if let Some(ui) = self.u_inv_t.as_mut() {
            // inverse of [[x,y],[z,w]] is [[w,-y],[-z,x]]; U⁻¹ columns transform by its transpose
            let (ny, nz) = (-y, -z);
            mix(ui, i, j, [w, &nz, &ny, x], self.tmod);
        }
    }
}

impl DenseSnf {
    /// Runs Smith reduction on row-major `a` (`ncols` columns).
    ///
    /// With `modulus = Some(e)` the matrix entries are kept reduced mod `e` and
    /// the returned diagonal is only meaningful up to `gcd(·, e)`; transforms
    /// stay exact unless `reduce_transforms` is requested through
    /// [`DenseSnf::run_mod`].
    pub fn run(a: Vec<Vec<Int>>, ncols: usize, track: Track, modulus: Option<&Int>) -> DenseSnf {
        Self::run_inner(a, ncols, track, modulus, None)
    }

    /// As [`DenseSnf::run`] but transforms are also reduced mod `e`.
    pub fn run_mod(a: Vec<Vec<Int>>, ncols: usize, track: Track, e: &Int) -> DenseSnf {
        Self::run_inner(a, ncols, track, Some(e), Some(e))
    }

    fn run_inner(
        mut a: Vec<Vec<Int>>,
        ncols: usize,
        track: Track,
        modulus: Option<&Int>,
        tmod: Option<&Int>,
    ) -> DenseSnf {
        let nrows = a.len();
        if let Some(m) = modulus {
            for row in a.iter_mut() {
                for x in row.iter_mut() {
                    if !x.is_zero() {
                        *x = x.rem_euclid(m);
                    }
                }
            }
        }
        let mut eng = Engine {
            a,
            ncols,
            modulus,
            tmod,
            u: track.rows.then(|| identity_rows(nrows)),
            u_inv_t: track.row_inv.then(|| identity_rows(nrows)),
            v_t: track.cols.then(|| identity_rows(ncols)),
            v_inv: track.col_inv.then(|| identity_rows(ncols)),
        };
        let k = nrows.min(ncols);
        let mut rank = 0;
        for t in 0..k {
            let Some((i, j)) = eng.min_pivot(t) else { break };
            eng.swap_rows(i, t);
            eng.swap_cols(j, t);
            eng.eliminate(t);
            rank = t + 1;
        }
        // Under a modulus, a pivot may have been reduced to a value whose
        // gcd with e is what matters; replace it so the chain fix-up sees it.
        if let Some(m) = modulus {
            for t in 0..rank {
                let g = eng.a[t][t].gcd(m);
                if g != eng.a[t][t] && tmod.is_some() {
                    eng.a[t][t] = g;
                }
            }
        }
        for t in 0..rank {
            if eng.a[t][t].is_negative() {
                eng.negate_row(t);
            }
        }
        if modulus.is_none() || tmod.is_some() {
            for i in 0..rank {
                for j in i + 1..rank {
                    eng.gcd_lcm(i, j);
                }
            }
        }
        let diag = (0..k).map(|t| eng.a[t][t].clone()).collect();
        DenseSnf { diag, u: eng.u, u_inv_t: eng.u_inv_t, v_t: eng.v_t, v_inv: eng.v_inv }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &Matrix) -> Vec<Int> {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d);
        s.diagonal()
    }

    #[test]
    fn small_examples() {
        let d = check(&Matrix::from_i64_rows(&[&[2, 4], &[6, 8]]));
        assert_eq!(d, vec![Int::from(2), Int::from(4)]);
        let d = check(&Matrix::identity(2));
        assert_eq!(d, vec![Int::ONE, Int::ONE]);
        let d = check(&Matrix::from_i64_rows(&[&[0]]));
        assert_eq!(d, vec![Int::ZERO]);
        let d = check(&Matrix::from_i64_rows(&[&[2, 0], &[0, 3]]));
        assert_eq!(d, vec![Int::ONE, Int::from(6)]);
    }

    #[test]
    fn empty_matrices() {
        let s = smith_normal_form(&Matrix::zeros(0, 0));
        assert_eq!(s.diagonal(), Vec::<Int>::new());
        let s = smith_normal_form(&Matrix::zeros(0, 3));
        assert_eq!(s.v.nrows(), 3);
        let s = smith_normal_form(&Matrix::zeros(2, 0));
        assert_eq!(s.u.nrows(), 2);
    }

    #[test]
    fn inverses_are_tracked() {
        let a = vec![vec![Int::from(4), Int::from(6), Int::from(2)], vec![Int::from(3), Int::from(9), Int::from(-7)]];
        let s = DenseSnf::run(a, 3, Track { rows: true, row_inv: true, cols: true, col_inv: true }, None);
        let u = Matrix::from_rows(&s.u.unwrap());
        let ui = Matrix::from_dense_columns(2, &s.u_inv_t.unwrap());
        let v = Matrix::from_dense_columns(3, &s.v_t.unwrap());
        let vi = Matrix::from_rows(&s.v_inv.unwrap());
        assert_eq!(u.mul(&ui), Matrix::identity(2));
        assert_eq!(v.mul(&vi), Matrix::identity(3));
    }
}

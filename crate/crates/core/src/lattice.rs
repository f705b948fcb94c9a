//! Lattice machinery behind kernels, cokernels and homology.
//!
//! Every group is presented diagonally as `Z^n / diag(orders)` (order 0 means a
//! free coordinate). For a map `h: Z^n → Z^m / diag(target)` the preimage
//! lattice `{x : h·x ∈ diag(target)·Z^m}` is computed in two stages: the rows
//! of `h` are first compressed into echelon form (exactly for free rows,
//! modulo the common exponent for torsion rows), then a unimodular column
//! transform of the ambient space diagonalizes the constraints.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::int::Int;
use crate::matrix::{sparse_axpy, Matrix, SparseVec};
use crate::smith::{DenseSnf, Track};

fn reduce_sparse(v: SparseVec, m: Option<&Int>) -> SparseVec {
    match m {
        None => v,
        Some(m) => v
            .into_iter()
            .filter_map(|(i, x)| {
                let r = x.rem_euclid(m);
                (!r.is_zero()).then_some((i, r))
            })
            .collect(),
    }
}

/// `ka·a + kb·b` on sparse vectors.
fn lincomb(ka: &Int, a: &SparseVec, kb: &Int, b: &SparseVec, m: Option<&Int>) -> SparseVec {
    let mut out = Vec::with_capacity(a.len().max(b.len()));
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ia = a.get(i).map_or(usize::MAX, |e| e.0);
        let ib = b.get(j).map_or(usize::MAX, |e| e.0);
        let (idx, v) = if ia < ib {
            i += 1;
            (ia, ka * &a[i - 1].1)
        } else if ib < ia {
            j += 1;
            (ib, kb * &b[j - 1].1)
        } else {
            i += 1;
            j += 1;
            (ia, (ka * &a[i - 1].1).add_mul(kb, &b[j - 1].1))
        };
        let v = match m {
            Some(m) => v.rem_euclid(m),
            None => v,
        };
        if !v.is_zero() {
            out.push((idx, v));
        }
    }
    out
}

/// Row-echelon basis of a lattice of row vectors, keyed by leading column.
///
/// With a modulus `e` the rows live in `(Z/e)^n`; insertion uses unimodular
/// 2×2 combinations, so the row module is preserved exactly. When
/// `closure` is set, the annihilator multiples `(e/gcd(lead, e))·row` are
/// re-inserted as well, which makes membership testing exact mod `e`.
pub(crate) struct Echelon {
    pub pivots: BTreeMap<usize, SparseVec>,
    modulus: Option<Int>,
    closure: bool,
}

impl Echelon {
    pub fn new(modulus: Option<Int>, closure: bool) -> Echelon {
        Echelon { pivots: BTreeMap::new(), modulus: modulus.filter(|m| !m.is_zero()), closure }
    }

    pub fn insert(&mut self, row: SparseVec) {
        let m = self.modulus.clone();
        let mut queue = vec![reduce_sparse(row, m.as_ref())];
        while let Some(mut row) = queue.pop() {
            loop {
                let Some((c, b)) = row.first().cloned() else { break };
                match self.pivots.remove(&c) {
                    None => {
                        if self.closure {
                            if let Some(e) = m.as_ref() {
                                let ann = e.div_exact(&b.gcd(e));
                                if !ann.is_one() {
                                    let extra =
                                        reduce_sparse(row.iter().map(|(i, v)| (*i, v * &ann)).collect(), Some(e));
                                    if !extra.is_empty() {
                                        queue.push(extra);
                                    }
                                }
                            }
                        }
                        self.pivots.insert(c, row);
                        break;
                    }
                    Some(p) => {
                        let a = p[0].1.clone();
                        if a.divides(&b) {
                            let q = b.div_exact(&a);
                            row = lincomb(&Int::ONE, &row, &-&q, &p, m.as_ref());
                            self.pivots.insert(c, p);
                        } else {
                            let (g, x, y) = Int::ext_gcd(&a, &b);
                            let new_p = lincomb(&x, &p, &y, &row, m.as_ref());
                            let ag = a.div_exact(&g);
                            let bg = b.div_exact(&g);
                            let rest = lincomb(&ag, &row, &-&bg, &p, m.as_ref());
                            // the new pivot's leading entry is g (mod e it may vanish; re-queue then)
                            if new_p.first().map(|e| e.0) == Some(c) {
                                if self.closure {
                                    if let Some(e) = m.as_ref() {
                                        let ann = e.div_exact(&new_p[0].1.gcd(e));
                                        if !ann.is_one() {
                                            let extra = reduce_sparse(
                                                new_p.iter().map(|(i, v)| (*i, v * &ann)).collect(),
                                                Some(e),
                                            );
                                            if !extra.is_empty() {
                                                queue.push(extra);
                                            }
                                        }
                                    }
                                }
                                self.pivots.insert(c, new_p);
                            } else if !new_p.is_empty() {
                                queue.push(new_p);
                            }
                            row = rest;
                        }
                    }
                }
            }
        }
    }

    /// Whether `x` lies in the row lattice (plus `e·Z^n` under a modulus).
    /// Only exact when built with `closure` or without a modulus.
    pub fn contains(&self, x: &SparseVec) -> bool {
        let m = self.modulus.as_ref();
        let mut row = reduce_sparse(x.clone(), m);
        while let Some((c, b)) = row.first().cloned() {
            let Some(p) = self.pivots.get(&c) else { return false };
            let a = &p[0].1;
            let q = match m {
                None => {
                    if !a.divides(&b) {
                        return false;
                    }
                    b.div_exact(a)
                }
                Some(e) => {
                    let (g, s, _) = Int::ext_gcd(a, e);
                    if !g.divides(&b) {
                        return false;
                    }
                    (&s * &b.div_exact(&g)).rem_euclid(e)
                }
            };
            row = lincomb(&Int::ONE, &row, &-&q, p, m);
        }
        true
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> {
        self.pivots.values()
    }

    pub fn len(&self) -> usize {
        self.pivots.len()
    }
}

/// A full-rank-in-its-span sublattice `L ⊆ Z^n` with a basis and a
/// coordinate map: for `x ∈ L`, `x = basis · y` where `y = (left · x) / scales`.
#[derive(Clone, Debug)]
pub(crate) struct Lattice {
    pub n: usize,
    /// `k` basis vectors, each dense of length `n`.
    pub basis: Vec<Vec<Int>>,
    /// `left` stored by ambient column: `left_cols[j]` has length `k`.
    pub left_cols: Vec<Vec<Int>>,
    pub scales: Vec<Int>,
}

impl Lattice {
    pub fn identity(n: usize) -> Lattice {
        let id: Vec<Vec<Int>> = (0..n)
            .map(|i| {
                let mut v = vec![Int::ZERO; n];
                v[i] = Int::ONE;
                v
            })
            .collect();
        Lattice { n, basis: id.clone(), left_cols: id, scales: vec![Int::ONE; n] }
    }

    pub fn dim(&self) -> usize {
        self.scales.len()
    }

    /// Coordinates of `x` (assumed to lie in `L`); `None` when the
    /// divisibility check shows it does not.
    pub fn coords(&self, x: &SparseVec) -> Option<Vec<Int>> {
        let k = self.dim();
        let mut y = vec![Int::ZERO; k];
        for (j, xj) in x {
            for (c, l) in self.left_cols[*j].iter().enumerate() {
                if !l.is_zero() {
                    y[c] = y[c].add_mul(l, xj);
                }
            }
        }
        for (c, s) in self.scales.iter().enumerate() {
            if !s.is_one() {
                if !s.divides(&y[c]) {
                    return None;
                }
                y[c] = y[c].div_exact(s);
            }
        }
        Some(y)
    }

    pub fn point(&self, y: &[Int]) -> Vec<Int> {
        let mut x = vec![Int::ZERO; self.n];
        for (c, yc) in y.iter().enumerate() {
            if yc.is_zero() {
                continue;
            }
            for (xi, b) in x.iter_mut().zip(&self.basis[c]) {
                if !b.is_zero() {
                    *xi = xi.add_mul(b, yc);
                }
            }
        }
        x
    }
}

fn densify(v: &SparseVec, n: usize) -> Vec<Int> {
    let mut out = vec![Int::ZERO; n];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

fn exponent(orders: &[Int]) -> Option<Int> {
    let mut e = Int::ONE;
    for o in orders {
        if o.is_zero() {
            return None;
        }
        e = e.lcm(o);
    }
    Some(e)
}

fn sparse_dot(a: &SparseVec, b: &SparseVec) -> Int {
    let (mut i, mut j) = (0, 0);
    let mut s = Int::ZERO;
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => {
                s = s.add_mul(&a[i].1, &b[j].1);
                i += 1;
                j += 1;
            }
        }
    }
    s
}

fn leading_value(col: &SparseVec, r: usize) -> Option<&Int> {
    col.first().filter(|e| e.0 == r).map(|e| &e.1)
}

/// `{x ∈ Z^n : h·x ≡ 0 in Z^m / diag(target)}`.
pub(crate) fn preimage_lattice(h: &Matrix, target: &[Int]) -> Lattice {
    let n = h.ncols();
    assert_eq!(h.nrows(), target.len());

    let tors_mod =
        exponent(&target.iter().filter(|o| !o.is_zero()).cloned().collect::<Vec<_>>()).filter(|e| !e.is_one());
    let mut tors = Echelon::new(tors_mod.clone(), false);
    let mut has_free = false;
    let mut tors_rows: Vec<SparseVec> = vec![Vec::new(); h.nrows()];
    let mut free_cols: Vec<SparseVec> = Vec::with_capacity(n);
    for (j, col) in h.columns().iter().enumerate() {
        let mut f = Vec::new();
        for (i, v) in col {
            let o = &target[*i];
            if o.is_zero() {
                f.push((*i, v.clone()));
            } else if !o.is_one() {
                tors_rows[*i].push((j, v.clone()));
            }
        }
        has_free |= !f.is_empty();
        free_cols.push(f);
    }
    for (i, row) in tors_rows.into_iter().enumerate() {
        if !row.is_empty() {
            let e = tors_mod.as_ref().expect("torsion row implies modulus");
            let scale = e.div_exact(&target[i]);
            tors.insert(row.into_iter().map(|(j, v)| (j, &v * &scale)).collect());
        }
    }

    // Stage 2a: free constraints, eliminated row by row with column
    // operations; V (columns) and V⁻¹ (rows) are tracked sparsely. Processed
    // rows stay zero on the surviving columns, so each row is visited once.
    let mut active: Vec<usize> = (0..n).collect();
    let mut v: Option<(Vec<SparseVec>, Vec<SparseVec>)> = None;
    if has_free {
        let mut vcols: Vec<SparseVec> = (0..n).map(|i| vec![(i, Int::ONE)]).collect();
        let mut vinv: Vec<SparseVec> = vcols.clone();
        let mut alive = vec![true; n];
        let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); h.nrows()];
        for (c, col) in free_cols.iter().enumerate() {
            if let Some(e) = col.first() {
                buckets[e.0].push(c);
            }
        }
        for r in 0..h.nrows() {
            let mut cand = core::mem::take(&mut buckets[r]);
            cand.sort_unstable();
            cand.dedup();
            cand.retain(|&c| alive[c] && leading_value(&free_cols[c], r).is_some());
            if cand.is_empty() {
                continue;
            }
            while cand.len() > 1 {
                let p = *cand
                    .iter()
                    .min_by(|&&x, &&y| {
                        let (vx, vy) =
                            (leading_value(&free_cols[x], r).unwrap(), leading_value(&free_cols[y], r).unwrap());
                        vx.cmp_abs(vy).then_with(|| {
                            (free_cols[x].len() + vcols[x].len()).cmp(&(free_cols[y].len() + vcols[y].len()))
                        })
                    })
                    .unwrap();
                let pv = leading_value(&free_cols[p], r).unwrap().clone();
                let mut next = vec![p];
                for &c in &cand {
                    if c == p {
                        continue;
                    }
                    let q = leading_value(&free_cols[c], r).unwrap().div_floor(&pv);
                    let nq = -&q;
                    free_cols[c] = sparse_axpy(&free_cols[c], &nq, &free_cols[p]);
                    vcols[c] = sparse_axpy(&vcols[c], &nq, &vcols[p]);
                    vinv[p] = sparse_axpy(&vinv[p], &q, &vinv[c]);
                    match free_cols[c].first() {
                        Some(e) if e.0 == r => next.push(c),
                        Some(e) => buckets[e.0].push(c),
                        None => {}
                    }
                }
                cand = next;
            }
            alive[cand[0]] = false;
        }
        active.retain(|&c| alive[c]);
        v = Some((vcols, vinv));
    }
    let k = active.len();

    // Stage 2b: torsion constraints T·V_active, diagonalized by exact column transforms.
    let (q_cols, q_inv, scales) = match (&tors_mod, tors.len()) {
        (Some(e), t) if t > 0 => {
            let dense: Vec<Vec<Int>> = tors
                .rows()
                .map(|row| {
                    active
                        .iter()
                        .map(|&c| match &v {
                            None => row.iter().find(|e| e.0 == c).map_or(Int::ZERO, |e| e.1.clone()),
                            Some((vcols, _)) => sparse_dot(row, &vcols[c]).rem_euclid(e),
                        })
                        .collect()
                })
                .collect();
            let snf =
                DenseSnf::run(dense, k, Track { rows: false, row_inv: false, cols: true, col_inv: true }, Some(e));
            let scales: Vec<Int> =
                (0..k).map(|c| e.div_exact(&snf.diag.get(c).cloned().unwrap_or(Int::ZERO).gcd(e))).collect();
            (Some(snf.v_t.expect("tracked")), Some(snf.v_inv.expect("tracked")), scales)
        }
        _ => (None, None, vec![Int::ONE; k]),
    };

    // basis = V_active · Q · diag(scales)
    let vq: Vec<Vec<Int>> = match (&v, &q_cols) {
        (None, None) => Lattice::identity(n).basis,
        (None, Some(qc)) => qc.clone(),
        (Some((vcols, _)), None) => active.iter().map(|&c| densify(&vcols[c], n)).collect(),
        (Some((vcols, _)), Some(qc)) => qc
            .iter()
            .map(|qcol| {
                let mut out = vec![Int::ZERO; n];
                for (ci, qv) in qcol.iter().enumerate() {
                    if qv.is_zero() {
                        continue;
                    }
                    for (i, b) in &vcols[active[ci]] {
                        out[*i] = out[*i].add_mul(b, qv);
                    }
                }
                out
            })
            .collect(),
    };
    let basis: Vec<Vec<Int>> = vq
        .into_iter()
        .zip(&scales)
        .map(|(col, s)| if s.is_one() { col } else { col.iter().map(|x| x * s).collect() })
        .collect();

    // left = Q⁻¹ · V⁻¹_active, stored by ambient column.
    let vinv_rows: Vec<Vec<Int>> = match &v {
        None => Lattice::identity(n).basis,
        Some((_, vinv)) => active.iter().map(|&c| densify(&vinv[c], n)).collect(),
    };
    let left_rows: Vec<Vec<Int>> = match &q_inv {
        None => vinv_rows,
        Some(qi) => qi
            .iter()
            .map(|qrow| {
                let mut out = vec![Int::ZERO; n];
                for (ci, qv) in qrow.iter().enumerate() {
                    if qv.is_zero() {
                        continue;
                    }
                    for (o, b) in out.iter_mut().zip(&vinv_rows[ci]) {
                        if !b.is_zero() {
                            *o = o.add_mul(b, qv);
                        }
                    }
                }
                out
            })
            .collect(),
    };
    let mut left_cols = vec![vec![Int::ZERO; k]; n];
    for (c, row) in left_rows.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if !x.is_zero() {
                left_cols[j][c] = x.clone();
            }
        }
    }
    Lattice { n, basis, left_cols, scales }
}

/// Homology `ker(d_out) / (im(d_in) + diag(mid)·Z^n)` at a diagonally
/// presented middle group, with generator representatives and a coordinate
/// map for cycles.
#[derive(Clone, Debug)]
pub(crate) struct HomologyData {
    /// Canonical orders: free generators (0) first, then the torsion chain.
    pub orders: Vec<Int>,
    /// Ambient representative of each canonical generator.
    pub reps: Vec<Vec<Int>>,
    lattice: Lattice,
    /// For each lattice coordinate, its contribution to each canonical generator.
    coord_cols: Vec<SparseVec>,
    mid: Vec<Int>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct NotACycle;

impl HomologyData {
    pub fn compute(d_in: Option<&Matrix>, d_out: Option<&Matrix>, mid: &[Int], out: &[Int]) -> HomologyData {
        let n = mid.len();
        let lattice = match d_out {
            Some(d) if d.nrows() > 0 => preimage_lattice(d, out),
            _ => Lattice::identity(n),
        };
        let k = lattice.dim();
        let e_mid = exponent(mid);
        let mut rel = Echelon::new(e_mid.clone(), false);
        let uniform = mid.first().is_some_and(|o| !o.is_zero() && mid.iter().all(|x| x == o));
        if uniform {
            let e = &mid[0];
            for (c, s) in lattice.scales.iter().enumerate() {
                rel.insert(vec![(c, e.div_exact(s))]);
            }
        } else {
            for (j, o) in mid.iter().enumerate() {
                if o.is_zero() {
                    continue;
                }
                let y = lattice.coords(&vec![(j, o.clone())]).expect("torsion relation lies in the kernel");
                rel.insert(y.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect());
            }
        }
        if let Some(d) = d_in {
            for col in d.columns() {
                let y = lattice.coords(col).expect("boundary lies in the kernel");
                rel.insert(y.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect());
            }
        }
        let dense: Vec<Vec<Int>> = rel
            .rows()
            .map(|r| {
                let mut v = vec![Int::ZERO; k];
                for (i, x) in r {
                    v[*i] = x.clone();
                }
                v
            })
            .collect();
        let track = Track { rows: false, row_inv: false, cols: true, col_inv: true };
        let snf = match &e_mid {
            Some(e) => DenseSnf::run_mod(dense, k, track, e),
            None => DenseSnf::run(dense, k, track, None),
        };
        let w_cols = snf.v_t.expect("tracked");
        let w_inv = snf.v_inv.expect("tracked");
        let raw: Vec<Int> = (0..k)
            .map(|j| {
                let d = snf.diag.get(j).cloned().unwrap_or(Int::ZERO);
                match &e_mid {
                    Some(e) => d.gcd(e),
                    None => d.abs(),
                }
            })
            .collect();
        let mut free_idx: Vec<usize> = Vec::new();
        let mut tors_idx: Vec<usize> = Vec::new();
        for (j, d) in raw.iter().enumerate() {
            if d.is_zero() {
                free_idx.push(j);
            } else if !d.is_one() {
                tors_idx.push(j);
            }
        }
        tors_idx.sort_by(|a, b| raw[*a].cmp(&raw[*b]));
        let order: Vec<usize> = free_idx.into_iter().chain(tors_idx).collect();
        let orders: Vec<Int> = order.iter().map(|&j| raw[j].clone()).collect();
        let mut coord_cols: Vec<SparseVec> = vec![Vec::new(); k];
        for (g, &j) in order.iter().enumerate() {
            for (c, v) in w_cols[j].iter().enumerate() {
                if !v.is_zero() {
                    coord_cols[c].push((g, v.clone()));
                }
            }
        }
        let reps: Vec<Vec<Int>> = order
            .iter()
            .map(|&j| {
                let x = lattice.point(&w_inv[j]);
                x.into_iter().zip(mid).map(|(v, o)| if o.is_zero() { v } else { v.rem_euclid(o) }).collect()
            })
            .collect();
        HomologyData { orders, reps, lattice, coord_cols, mid: mid.to_vec() }
    }

    /// Coefficients of the class of cycle `x` on the canonical generators.
    pub fn class_of(&self, x: &SparseVec) -> Result<Vec<Int>, NotACycle> {
        // shift torsion coordinates into a canonical residue first
        let x: SparseVec = x
            .iter()
            .filter_map(|(i, v)| {
                let o = &self.mid[*i];
                let r = if o.is_zero() { v.clone() } else { v.rem_euclid(o) };
                (!r.is_zero()).then_some((*i, r))
            })
            .collect();
        let y = self.lattice.coords(&x).ok_or(NotACycle)?;
        let mut out = vec![Int::ZERO; self.orders.len()];
        for (yc, col) in y.iter().zip(&self.coord_cols) {
            if yc.is_zero() {
                continue;
            }
            for (g, r) in col {
                out[*g] = out[*g].add_mul(r, yc);
            }
        }
        for (v, o) in out.iter_mut().zip(&self.orders) {
            if !o.is_zero() {
                *v = v.rem_euclid(o);
            }
        }
        Ok(out)
    }
}

/// Solves `M·x = b` over the integers.
pub(crate) struct IntSolver {
    ncols: usize,
    diag: Vec<Int>,
    u: Vec<Vec<Int>>,
    v_t: Vec<Vec<Int>>,
}

impl IntSolver {
    pub fn new(m: &Matrix) -> IntSolver {
        let snf = DenseSnf::run(m.to_dense_rows(), m.ncols(), Track::BOTH, None);
        IntSolver { ncols: m.ncols(), diag: snf.diag, u: snf.u.expect("tracked"), v_t: snf.v_t.expect("tracked") }
    }

    pub fn solve(&self, b: &[Int]) -> Option<Vec<Int>> {
        let ub: Vec<Int> = self
            .u
            .iter()
            .map(|row| {
                let mut s = Int::ZERO;
                for (r, x) in row.iter().zip(b) {
                    if !r.is_zero() && !x.is_zero() {
                        s = s.add_mul(r, x);
                    }
                }
                s
            })
            .collect();
        let mut z = vec![Int::ZERO; self.ncols];
        for (i, val) in ub.iter().enumerate() {
            let d = self.diag.get(i).cloned().unwrap_or(Int::ZERO);
            if d.is_zero() {
                if !val.is_zero() {
                    return None;
                }
            } else {
                if !d.divides(val) {
                    return None;
                }
                z[i] = val.div_exact(&d);
            }
        }
        let mut x = vec![Int::ZERO; self.ncols];
        for (j, zj) in z.iter().enumerate() {
            if zj.is_zero() {
                continue;
            }
            for (xi, vv) in x.iter_mut().zip(&self.v_t[j]) {
                if !vv.is_zero() {
                    *xi = xi.add_mul(vv, zj);
                }
            }
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn preimage_mod_four() {
        // x ↦ 2x : Z → Z/4 has preimage 2Z
        let h = Matrix::from_i64_rows(&[&[2]]);
        let l = preimage_lattice(&h, &ints(&[4]));
        assert_eq!(
            l.point(&ints(&[1])),
            ints(&[2])
                .into_iter()
                .map(|x| x.abs())
                .collect::<Vec<_>>()
                .iter()
                .map(|x| if l.basis[0][0].is_negative() { -x } else { x.clone() })
                .collect::<Vec<_>>()
        );
        assert!(l.coords(&vec![(0, Int::from(1))]).is_none());
        assert!(l.coords(&vec![(0, Int::from(6))]).is_some());
    }

    #[test]
    fn homology_of_times_two() {
        // Z --2--> Z --0--> 0
        let d_in = Matrix::from_i64_rows(&[&[2]]);
        let h = HomologyData::compute(Some(&d_in), None, &ints(&[0]), &[]);
        assert_eq!(h.orders, ints(&[2]));
        assert_eq!(h.class_of(&vec![(0, Int::from(3))]).unwrap(), ints(&[1]));
    }

    #[test]
    fn echelon_closure_membership() {
        // row (2, 1) in (Z/4)^2: its double (0, 2) must be a member
        let mut e = Echelon::new(Some(Int::from(4)), true);
        e.insert(vec![(0, Int::from(2)), (1, Int::from(1))]);
        assert!(e.contains(&vec![(1, Int::from(2))]));
        assert!(!e.contains(&vec![(1, Int::from(1))]));
    }

    #[test]
    fn solver() {
        let m = Matrix::from_i64_rows(&[&[2, 4], &[6, 8]]);
        let s = IntSolver::new(&m);
        let x = s.solve(&ints(&[2, 6])).unwrap();
        assert_eq!(m.mul_dense_vec(&x), ints(&[2, 6]));
        assert!(s.solve(&ints(&[1, 0])).is_none());
    }
}

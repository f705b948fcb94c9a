//! Finitely generated abelian groups in invariant-factor form and the
//! homomorphisms between them.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::int::Int;
use crate::lattice::{Echelon, HomologyData, IntSolver};
use crate::matrix::{Matrix, SparseVec};
use crate::reduce::reduced_homology;
use crate::smith::smith_normal_form;

/// `Z^rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k` with `d_1 | d_2 | ... | d_k`, every `d_j ≥ 2`.
///
/// Generators are ordered free first, then torsion in chain order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FgAbGroup {
    rank: usize,
    torsion: Vec<Int>,
}

impl FgAbGroup {
    pub fn zero() -> FgAbGroup {
        FgAbGroup { rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> FgAbGroup {
        FgAbGroup { rank, torsion: Vec::new() }
    }

    pub fn cyclic(order: i64) -> FgAbGroup {
        FgAbGroup::from_orders(&[Int::from(order)])
    }

    /// Canonical form of `⊕ Z/o_i` (`o_i = 0` meaning `Z`, `o_i = ±1` trivial).
    pub fn from_orders(orders: &[Int]) -> FgAbGroup {
        let rank = orders.iter().filter(|o| o.is_zero()).count();
        let mut tors: Vec<Int> =
            orders.iter().filter(|o| !o.is_zero()).map(|o| o.abs()).filter(|o| !o.is_one()).collect();
        // pairwise (gcd, lcm) sweeps converge to the invariant factor chain
        let n = tors.len();
        for i in 0..n {
            for j in i + 1..n {
                if !tors[i].divides(&tors[j]) {
                    let g = tors[i].gcd(&tors[j]);
                    let l = tors[i].lcm(&tors[j]);
                    tors[i] = g;
                    tors[j] = l;
                }
            }
        }
        tors.retain(|o| !o.is_one());
        FgAbGroup { rank, torsion: tors }
    }

    /// Checked constructor for data already claimed to be canonical.
    pub fn new(rank: usize, torsion: Vec<Int>) -> Result<FgAbGroup, Error> {
        for (i, d) in torsion.iter().enumerate() {
            if d.is_zero() || d.is_negative() || d.is_one() {
                return Err(Error::NotCanonical(alloc::format!("torsion entry {} is {}", i, d)));
            }
            if i > 0 && !torsion[i - 1].divides(d) {
                return Err(Error::NotCanonical(alloc::format!(
                    "torsion entry {} ({}) does not divide {}",
                    i - 1,
                    torsion[i - 1],
                    d
                )));
            }
        }
        Ok(FgAbGroup { rank, torsion })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[Int] {
        &self.torsion
    }

    /// Number of canonical generators.
    pub fn ngens(&self) -> usize {
        self.rank + self.torsion.len()
    }

    /// Order of each generator, 0 for free ones.
    pub fn orders(&self) -> Vec<Int> {
        let mut o = vec![Int::ZERO; self.rank];
        o.extend(self.torsion.iter().cloned());
        o
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    /// Cardinality, when finite.
    pub fn order(&self) -> Option<Int> {
        if self.rank > 0 {
            return None;
        }
        Some(self.torsion.iter().fold(Int::ONE, |a, b| &a * b))
    }

    /// Largest invariant factor; 0 for infinite groups, 1 for the trivial group.
    pub fn exponent(&self) -> Int {
        if self.rank > 0 {
            return Int::ZERO;
        }
        self.torsion.last().cloned().unwrap_or(Int::ONE)
    }

    /// `self^k`, canonical, with the layout used by [`FgAbGroup::power_index`].
    pub fn power(&self, k: usize) -> FgAbGroup {
        let mut tors = Vec::with_capacity(self.torsion.len() * k);
        for d in &self.torsion {
            for _ in 0..k {
                tors.push(d.clone());
            }
        }
        FgAbGroup { rank: self.rank * k, torsion: tors }
    }

    /// Generator index in `self^k` of generator `g` of copy `copy`.
    #[inline]
    pub fn power_index(&self, k: usize, copy: usize, g: usize) -> usize {
        if g < self.rank {
            copy * self.rank + g
        } else {
            self.rank * k + (g - self.rank) * k + copy
        }
    }

    /// Inverse of [`FgAbGroup::power_index`]: `(copy, g)` of generator `i` of `self^k`.
    #[inline]
    pub fn power_coords(&self, k: usize, i: usize) -> (usize, usize) {
        if i < self.rank * k {
            (i / self.rank, i % self.rank)
        } else {
            let j = i - self.rank * k;
            (j % k, self.rank + j / k)
        }
    }

    /// Canonical direct sum (generators regrouped; see [`direct_sum_layout`]).
    pub fn direct_sum(&self, other: &FgAbGroup) -> FgAbGroup {
        let mut o = self.orders();
        o.extend(other.orders());
        FgAbGroup::from_orders(&o)
    }

    pub fn reduce(&self, x: &[Int]) -> Vec<Int> {
        x.iter().zip(self.orders()).map(|(v, o)| if o.is_zero() { v.clone() } else { v.rem_euclid(&o) }).collect()
    }
}

impl fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut first = true;
        if self.rank > 0 {
            if self.rank == 1 {
                write!(f, "Z")?;
            } else {
                write!(f, "Z^{}", self.rank)?;
            }
            first = false;
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let d = &self.torsion[i];
            let mut j = i;
            while j < self.torsion.len() && &self.torsion[j] == d {
                j += 1;
            }
            if !first {
                write!(f, " + ")?;
            }
            if j - i == 1 {
                write!(f, "Z/{}", d)?;
            } else {
                write!(f, "(Z/{})^{}", d, j - i)?;
            }
            first = false;
            i = j;
        }
        Ok(())
    }
}

/// True iff the canonical forms coincide.
pub fn are_isomorphic(a: &FgAbGroup, b: &FgAbGroup) -> bool {
    a == b
}

/// A homomorphism given by its action on canonical generators: column `j` is
/// the image of source generator `j`, entries reduced modulo the target orders.
#[derive(Clone, PartialEq, Eq)]
pub struct Homomorphism {
    source: FgAbGroup,
    target: FgAbGroup,
    matrix: Matrix,
}

impl Homomorphism {
    pub fn new(source: FgAbGroup, target: FgAbGroup, matrix: Matrix) -> Result<Homomorphism, Error> {
        if matrix.nrows() != target.ngens() || matrix.ncols() != source.ngens() {
            return Err(Error::Dimension(alloc::format!(
                "matrix is {}x{}, expected {}x{} for {} -> {}",
                matrix.nrows(),
                matrix.ncols(),
                target.ngens(),
                source.ngens(),
                source,
                target
            )));
        }
        let t_orders = target.orders();
        let matrix = matrix.reduce_rows(&t_orders);
        for (j, o) in source.orders().iter().enumerate() {
            if o.is_zero() {
                continue;
            }
            for (i, v) in matrix.column(j) {
                let to = &t_orders[*i];
                let w = v * o;
                if to.is_zero() || !to.divides(&w) {
                    return Err(Error::NotWellDefined(alloc::format!(
                        "generator {} has order {} but {} times its image is nonzero in coordinate {}",
                        j,
                        o,
                        o,
                        i
                    )));
                }
            }
        }
        Ok(Homomorphism { source, target, matrix })
    }

    /// Builds without the well-definedness check; entries are still reduced.
    pub(crate) fn new_unchecked(source: FgAbGroup, target: FgAbGroup, matrix: Matrix) -> Homomorphism {
        debug_assert_eq!(matrix.nrows(), target.ngens());
        debug_assert_eq!(matrix.ncols(), source.ngens());
        let matrix = matrix.reduce_rows(&target.orders());
        Homomorphism { source, target, matrix }
    }

    pub fn identity(g: &FgAbGroup) -> Homomorphism {
        Homomorphism { source: g.clone(), target: g.clone(), matrix: Matrix::identity(g.ngens()) }
    }

    pub fn zero(source: &FgAbGroup, target: &FgAbGroup) -> Homomorphism {
        Homomorphism {
            source: source.clone(),
            target: target.clone(),
            matrix: Matrix::zeros(target.ngens(), source.ngens()),
        }
    }

    /// Multiplication by `k` on a group.
    pub fn scalar(g: &FgAbGroup, k: i64) -> Homomorphism {
        Homomorphism::new_unchecked(g.clone(), g.clone(), Matrix::identity(g.ngens()).scale(&Int::from(k)))
    }

    pub fn source(&self) -> &FgAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Homomorphism) -> Result<Homomorphism, Error> {
        if self.target != other.source {
            return Err(Error::Dimension(alloc::format!(
                "cannot compose {} -> {} with {} -> {}",
                self.source,
                self.target,
                other.source,
                other.target
            )));
        }
        Ok(Homomorphism::new_unchecked(self.source.clone(), other.target.clone(), other.matrix.mul(&self.matrix)))
    }

    pub fn apply(&self, x: &[Int]) -> Vec<Int> {
        self.target.reduce(&self.matrix.mul_dense_vec(x))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn is_injective(&self) -> bool {
        kernel(self).map(|(k, _)| k.is_trivial()).unwrap_or(false)
    }

    pub fn is_surjective(&self) -> bool {
        cokernel(self).map(|(c, _)| c.is_trivial()).unwrap_or(false)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    pub fn image(&self) -> Subgroup {
        Subgroup::new(self.target.clone(), self.matrix.clone())
    }
}

impl fmt::Debug for Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} via {:?}", self.source, self.target, self.matrix)
    }
}

/// Kernel with its inclusion into the source.
pub fn kernel(h: &Homomorphism) -> Result<(FgAbGroup, Homomorphism), Error> {
    let src_orders = h.source.orders();
    let data = HomologyData::compute(None, Some(&h.matrix), &src_orders, &h.target.orders());
    let group = FgAbGroup::new(
        data.orders.iter().filter(|o| o.is_zero()).count(),
        data.orders.iter().filter(|o| !o.is_zero()).cloned().collect(),
    )?;
    let incl = Matrix::from_dense_columns(h.source.ngens(), &data.reps);
    Ok((group.clone(), Homomorphism::new_unchecked(group, h.source.clone(), incl)))
}

/// Cokernel with the projection from the target.
pub fn cokernel(h: &Homomorphism) -> Result<(FgAbGroup, Homomorphism), Error> {
    let tgt_orders = h.target.orders();
    let data = HomologyData::compute(Some(&h.matrix), None, &tgt_orders, &[]);
    let group = group_of(&data);
    let cols: Vec<SparseVec> = (0..h.target.ngens())
        .map(|j| {
            let c = data.class_of(&vec![(j, Int::ONE)]).expect("everything is a cycle");
            c.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect()
        })
        .collect();
    let proj = Matrix::from_columns(group.ngens(), cols);
    Ok((group.clone(), Homomorphism::new_unchecked(h.target.clone(), group, proj)))
}

pub(crate) fn group_of(data: &HomologyData) -> FgAbGroup {
    FgAbGroup {
        rank: data.orders.iter().filter(|o| o.is_zero()).count(),
        torsion: data.orders.iter().filter(|o| !o.is_zero()).cloned().collect(),
    }
}

/// Homology `ker(d_out) / im(d_in)` at the middle group, with generator
/// representatives and a coordinate map for cycles.
#[derive(Clone, Debug)]
pub struct Homology {
    group: FgAbGroup,
    middle: FgAbGroup,
    /// Data of a single summand when the complex is a `copies`-fold power.
    data: HomologyData,
    single_group: FgAbGroup,
    single_middle: FgAbGroup,
    copies: usize,
}

impl Homology {
    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    pub fn middle(&self) -> &FgAbGroup {
        &self.middle
    }

    /// Cycle representing each canonical generator (the witness map).
    pub fn witness(&self) -> Homomorphism {
        let reps: Vec<Vec<Int>> = (0..self.group.ngens()).map(|g| self.representative(g)).collect();
        Homomorphism::new_unchecked(
            self.group.clone(),
            self.middle.clone(),
            Matrix::from_dense_columns(self.middle.ngens(), &reps),
        )
    }

    pub fn representative(&self, gen: usize) -> Vec<Int> {
        if self.copies == 1 {
            return self.data.reps[gen].clone();
        }
        let (copy, g) = self.single_group.power_coords(self.copies, gen);
        let mut v = vec![Int::ZERO; self.middle.ngens()];
        for (a, x) in self.data.reps[g].iter().enumerate() {
            v[self.single_middle.power_index(self.copies, copy, a)] = x.clone();
        }
        v
    }

    /// Class of a cycle in the homology group.
    pub fn class_of(&self, cycle: &SparseVec) -> Result<Vec<Int>, Error> {
        if self.copies == 1 {
            return self.data.class_of(cycle).map_err(|_| Error::NotACycle);
        }
        let mut parts: Vec<SparseVec> = vec![Vec::new(); self.copies];
        for (i, v) in cycle {
            let (copy, a) = self.single_middle.power_coords(self.copies, *i);
            parts[copy].push((a, v.clone()));
        }
        let mut out = vec![Int::ZERO; self.group.ngens()];
        for (copy, mut part) in parts.into_iter().enumerate() {
            if part.is_empty() {
                continue;
            }
            part.sort_by_key(|e| e.0);
            let c = self.data.class_of(&part).map_err(|_| Error::NotACycle)?;
            for (g, x) in c.into_iter().enumerate() {
                out[self.single_group.power_index(self.copies, copy, g)] = x;
            }
        }
        Ok(out)
    }

    /// Homology of the `k`-fold power of the underlying complex, in the
    /// power layout of [`FgAbGroup::power_index`].
    pub fn power(&self, k: usize) -> Homology {
        assert_eq!(self.copies, 1, "power of a power");
        Homology {
            group: self.group.power(k),
            middle: self.middle.power(k),
            data: self.data.clone(),
            single_group: self.group.clone(),
            single_middle: self.middle.clone(),
            copies: k,
        }
    }

    /// Map on homology induced by a chain map component `f` from this
    /// homology's middle group into `other`'s middle group.
    pub fn induced(&self, f: &Matrix, other: &Homology) -> Result<Homomorphism, Error> {
        let cols: Result<Vec<SparseVec>, Error> = (0..self.group.ngens())
            .map(|g| {
                let img = f.mul_dense_vec(&self.representative(g));
                let sp: SparseVec = img.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect();
                let c = other.class_of(&sp)?;
                Ok(c.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect())
            })
            .collect();
        Ok(Homomorphism::new_unchecked(
            self.group.clone(),
            other.group.clone(),
            Matrix::from_columns(other.group.ngens(), cols?),
        ))
    }
}

/// Computes `ker(d_out)/im(d_in)`. Either map may be absent (zero).
pub fn homology_at(d_in: Option<&Homomorphism>, d_out: Option<&Homomorphism>) -> Result<Homology, Error> {
    let middle = match (d_in, d_out) {
        (Some(a), _) => a.target.clone(),
        (None, Some(b)) => b.source.clone(),
        (None, None) => return Err(Error::Dimension("homology needs at least one map".into())),
    };
    if let (Some(a), Some(b)) = (d_in, d_out) {
        if a.target != b.source {
            return Err(Error::Dimension(alloc::format!(
                "target of incoming map {} differs from source of outgoing map {}",
                a.target,
                b.source
            )));
        }
        if !a.then(b)?.is_zero() {
            return Err(Error::CompositionNonzero);
        }
    }
    let out_orders = d_out.map(|b| b.target.orders()).unwrap_or_default();
    let data = HomologyData::compute(d_in.map(|a| &a.matrix), d_out.map(|b| &b.matrix), &middle.orders(), &out_orders);
    let group = group_of(&data);
    Ok(Homology { single_group: group.clone(), single_middle: middle.clone(), group, middle, data, copies: 1 })
}

/// The group `ker(d_out) / im(d_in)` alone, after splitting off acyclic
/// unit pairs; `d_in ∘ d_out = 0` is assumed.
pub fn homology_group_at(d_in: Option<&Homomorphism>, d_out: Option<&Homomorphism>) -> Result<FgAbGroup, Error> {
    let middle = match (d_in, d_out) {
        (Some(a), _) => a.target.clone(),
        (None, Some(b)) => b.source.clone(),
        (None, None) => return Err(Error::Dimension("homology needs at least one map".into())),
    };
    if let (Some(a), Some(b)) = (d_in, d_out) {
        if a.target != b.source {
            return Err(Error::Dimension("incoming and outgoing maps do not compose".into()));
        }
    }
    let prev = d_in.map(|a| a.source.orders()).unwrap_or_default();
    let next = d_out.map(|b| b.target.orders()).unwrap_or_default();
    let data = reduced_homology(d_in.map(|a| &a.matrix), d_out.map(|b| &b.matrix), &prev, &middle.orders(), &next);
    Ok(group_of(&data))
}

/// A subgroup of `ambient`, given by generating columns.
#[derive(Clone, Debug)]
pub struct Subgroup {
    ambient: FgAbGroup,
    gens: Matrix,
}

impl Subgroup {
    pub fn new(ambient: FgAbGroup, gens: Matrix) -> Subgroup {
        assert_eq!(gens.nrows(), ambient.ngens());
        let gens = gens.reduce_rows(&ambient.orders());
        Subgroup { ambient, gens }
    }

    pub fn whole(g: &FgAbGroup) -> Subgroup {
        Subgroup::new(g.clone(), Matrix::identity(g.ngens()))
    }

    pub fn ambient(&self) -> &FgAbGroup {
        &self.ambient
    }

    pub fn generators(&self) -> &Matrix {
        &self.gens
    }

    fn lattice(&self) -> Echelon {
        let mut e = Echelon::new(None, false);
        for c in self.gens.columns() {
            e.insert(c.clone());
        }
        for (j, o) in self.ambient.orders().iter().enumerate() {
            if !o.is_zero() {
                e.insert(vec![(j, o.clone())]);
            }
        }
        e
    }

    pub fn contains(&self, x: &[Int]) -> bool {
        let sp: SparseVec = x.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, v.clone())).collect();
        self.lattice().contains(&sp)
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        assert_eq!(self.ambient, other.ambient);
        let lat = other.lattice();
        self.gens.columns().iter().all(|c| lat.contains(c))
    }

    pub fn same_as(&self, other: &Subgroup) -> bool {
        self.is_subset_of(other) && other.is_subset_of(self)
    }

    pub fn is_whole(&self) -> bool {
        Subgroup::whole(&self.ambient).is_subset_of(self)
    }

    pub fn is_trivial(&self) -> bool {
        self.gens.is_zero()
    }

    /// Image under a homomorphism out of the ambient group.
    pub fn map(&self, h: &Homomorphism) -> Subgroup {
        assert_eq!(&self.ambient, h.source());
        Subgroup::new(h.target.clone(), h.matrix.mul(&self.gens))
    }

    /// The subgroup as an abstract group with inclusion and coordinates.
    pub fn presentation(&self) -> SubgroupPresentation {
        let m = self.gens.ncols();
        let n = self.ambient.ngens();
        if self.gens == Matrix::identity(n) {
            return SubgroupPresentation {
                group: self.ambient.clone(),
                incl: Homomorphism::identity(&self.ambient),
                solver: None,
                quotient: None,
                m,
            };
        }
        // kernel of Z^m → ambient
        let rel = HomologyData::compute(None, Some(&self.gens), &vec![Int::ZERO; m], &self.ambient.orders());
        let rel_cols: Vec<Vec<Int>> = rel.reps.clone();
        let rel_mat = Matrix::from_dense_columns(m, &rel_cols);
        let quotient = HomologyData::compute(Some(&rel_mat), None, &vec![Int::ZERO; m], &[]);
        let group = group_of(&quotient);
        let incl_cols: Vec<Vec<Int>> =
            quotient.reps.iter().map(|y| self.ambient.reduce(&self.gens.mul_dense_vec(y))).collect();
        let incl =
            Homomorphism::new_unchecked(group.clone(), self.ambient.clone(), Matrix::from_dense_columns(n, &incl_cols));
        let mut solve_mat = self.gens.clone();
        for (j, o) in self.ambient.orders().iter().enumerate() {
            if !o.is_zero() {
                solve_mat = solve_mat.hcat(&Matrix::from_columns(n, vec![vec![(j, o.clone())]]));
            }
        }
        SubgroupPresentation { group, incl, solver: Some(IntSolver::new(&solve_mat)), quotient: Some(quotient), m }
    }
}

/// A subgroup realized as an abstract [`FgAbGroup`].
pub struct SubgroupPresentation {
    group: FgAbGroup,
    incl: Homomorphism,
    solver: Option<IntSolver>,
    quotient: Option<HomologyData>,
    m: usize,
}

impl SubgroupPresentation {
    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    pub fn inclusion(&self) -> &Homomorphism {
        &self.incl
    }

    /// Coordinates of an ambient element lying in the subgroup.
    pub fn coords(&self, x: &[Int]) -> Option<Vec<Int>> {
        let (Some(solver), Some(quotient)) = (&self.solver, &self.quotient) else {
            return Some(self.group.reduce(x));
        };
        let sol = solver.solve(x)?;
        let y: SparseVec =
            sol[..self.m].iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, v.clone())).collect();
        quotient.class_of(&y).ok()
    }

    /// Restriction of `h: A → A` to this subgroup, assuming `h` preserves it.
    pub fn restrict(&self, h: &Homomorphism) -> Option<Homomorphism> {
        let cols: Option<Vec<SparseVec>> = (0..self.group.ngens())
            .map(|j| {
                let x: Vec<Int> = (0..self.incl.target.ngens()).map(|i| self.incl.matrix.get(i, j)).collect();
                let y = h.apply(&x);
                let c = self.coords(&y)?;
                Some(c.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect())
            })
            .collect();
        Some(Homomorphism::new_unchecked(
            self.group.clone(),
            self.group.clone(),
            Matrix::from_columns(self.group.ngens(), cols?),
        ))
    }
}

/// Smith-based invariant factors of `Z^rows / im(M)`.
pub fn cokernel_of_matrix(m: &Matrix) -> FgAbGroup {
    let s = smith_normal_form(m);
    let mut orders = s.diagonal();
    orders.resize(m.nrows(), Int::ZERO);
    FgAbGroup::from_orders(&orders)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hom(src: FgAbGroup, tgt: FgAbGroup, rows: &[&[i64]]) -> Homomorphism {
        let m = if rows.is_empty() { Matrix::zeros(tgt.ngens(), src.ngens()) } else { Matrix::from_i64_rows(rows) };
        Homomorphism::new(src, tgt, m).unwrap()
    }

    #[test]
    fn canonical_forms() {
        let g = FgAbGroup::from_orders(&[Int::from(2), Int::from(3)]);
        assert_eq!(g, FgAbGroup::cyclic(6));
        assert!(are_isomorphic(&g, &FgAbGroup::cyclic(6)));
        assert!(!are_isomorphic(&FgAbGroup::free(1), &FgAbGroup::cyclic(2)));
        assert!(are_isomorphic(&FgAbGroup::zero(), &FgAbGroup::cyclic(1)));
        let g = FgAbGroup::from_orders(&[Int::from(4), Int::from(6), Int::ZERO]);
        assert_eq!(g.rank(), 1);
        assert_eq!(g.torsion(), &[Int::from(2), Int::from(12)]);
        assert_eq!(FgAbGroup::from_orders(&g.orders()), g);
        assert!(FgAbGroup::new(0, vec![Int::from(4), Int::from(2)]).is_err());
        assert!(FgAbGroup::new(0, vec![Int::from(1)]).is_err());
    }

    #[test]
    fn kernel_examples() {
        let z = FgAbGroup::free(1);
        let (k, _) = kernel(&hom(z.clone(), z.clone(), &[&[2]])).unwrap();
        assert!(k.is_trivial());
        let z4 = FgAbGroup::cyclic(4);
        let (k, incl) = kernel(&hom(z4.clone(), z4.clone(), &[&[2]])).unwrap();
        assert_eq!(k, FgAbGroup::cyclic(2));
        assert_eq!(incl.matrix().get(0, 0), Int::from(2));
        let (k, _) = kernel(&Homomorphism::zero(&z, &z)).unwrap();
        assert_eq!(k, z);
    }

    #[test]
    fn cokernel_examples() {
        let z = FgAbGroup::free(1);
        assert_eq!(cokernel(&hom(z.clone(), z.clone(), &[&[3]])).unwrap().0, FgAbGroup::cyclic(3));
        assert!(cokernel(&Homomorphism::identity(&z)).unwrap().0.is_trivial());
        let z2 = FgAbGroup::free(2);
        let (c, p) = cokernel(&hom(z2.clone(), z2.clone(), &[&[2, 0], &[0, 3]])).unwrap();
        assert_eq!(c, FgAbGroup::cyclic(6));
        // projection kills the image
        assert!(hom(z2.clone(), z2, &[&[2, 0], &[0, 3]]).then(&p).unwrap().is_zero());
    }

    #[test]
    fn homology_examples() {
        let z = FgAbGroup::free(1);
        let zero = FgAbGroup::zero();
        let h = homology_at(Some(&Homomorphism::zero(&zero, &z)), Some(&Homomorphism::zero(&z, &zero))).unwrap();
        assert_eq!(h.group(), &z);
        let h = homology_at(Some(&hom(z.clone(), z.clone(), &[&[2]])), Some(&Homomorphism::zero(&z, &zero))).unwrap();
        assert_eq!(h.group(), &FgAbGroup::cyclic(2));
        let h = homology_at(Some(&Homomorphism::identity(&z)), Some(&Homomorphism::zero(&z, &zero))).unwrap();
        assert!(h.group().is_trivial());
        let bad = homology_at(Some(&Homomorphism::identity(&z)), Some(&Homomorphism::identity(&z)));
        assert!(matches!(bad, Err(Error::CompositionNonzero)));
    }

    #[test]
    fn ill_formed_homomorphisms() {
        // Z/2 → Z sending the generator to 1 is not well defined
        let r = Homomorphism::new(FgAbGroup::cyclic(2), FgAbGroup::free(1), Matrix::from_i64_rows(&[&[1]]));
        assert!(matches!(r, Err(Error::NotWellDefined(_))));
        let r = Homomorphism::new(FgAbGroup::cyclic(2), FgAbGroup::free(1), Matrix::zeros(2, 1));
        assert!(matches!(r, Err(Error::Dimension(_))));
    }

    #[test]
    fn subgroups() {
        let z4 = FgAbGroup::cyclic(4);
        let twice = Homomorphism::scalar(&z4, 2);
        let img = twice.image();
        assert!(img.contains(&[Int::from(2)]));
        assert!(!img.contains(&[Int::from(1)]));
        let p = img.presentation();
        assert_eq!(p.group(), &FgAbGroup::cyclic(2));
        assert_eq!(p.coords(&[Int::from(2)]), Some(vec![Int::ONE]));
        // ×3 on Z restricted to 2Z is again ×3
        let z = FgAbGroup::free(1);
        let sub = Homomorphism::scalar(&z, 2).image().presentation();
        let r = sub.restrict(&Homomorphism::scalar(&z, 3)).unwrap();
        assert_eq!(r.matrix().get(0, 0), Int::from(3));
    }
}

//! Finite groups by multiplication table and profinite groups presented as
//! towers of finite quotients.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::int::Int;
use crate::matrix::Matrix;

/// Groups up to this order have associativity checked on every triple.
pub const ASSOCIATIVITY_BOUND: usize = 64;

/// A finite group on `0..n` with `0` the identity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    inv: Vec<usize>,
}

/// First violated group axiom, with witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupDiagnostic {
    Empty,
    Ragged { row: usize, len: usize },
    NotClosed { a: usize, b: usize, product: usize },
    IdentityNotZero { a: usize },
    NoInverse { a: usize },
    NotAssociative { a: usize, b: usize, c: usize },
}

impl fmt::Display for GroupDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDiagnostic::Empty => write!(f, "a group needs at least one element"),
            GroupDiagnostic::Ragged { row, len } => write!(f, "table row {} has length {}", row, len),
            GroupDiagnostic::NotClosed { a, b, product } => {
                write!(f, "closure fails: {}*{} = {} is not an element", a, b, product)
            }
            GroupDiagnostic::IdentityNotZero { a } => write!(f, "element 0 is not an identity: fails at {}", a),
            GroupDiagnostic::NoInverse { a } => write!(f, "element {} has no inverse", a),
            GroupDiagnostic::NotAssociative { a, b, c } => {
                write!(f, "associativity fails for ({}, {}, {})", a, b, c)
            }
        }
    }
}

/// Checks the group axioms for a multiplication table with `0` as identity.
pub fn validate_group(table: &[Vec<usize>]) -> Result<(), GroupDiagnostic> {
    let n = table.len();
    if n == 0 {
        return Err(GroupDiagnostic::Empty);
    }
    for (r, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(GroupDiagnostic::Ragged { row: r, len: row.len() });
        }
    }
    for a in 0..n {
        for b in 0..n {
            if table[a][b] >= n {
                return Err(GroupDiagnostic::NotClosed { a, b, product: table[a][b] });
            }
        }
    }
    for a in 0..n {
        if table[0][a] != a || table[a][0] != a {
            return Err(GroupDiagnostic::IdentityNotZero { a });
        }
    }
    for a in 0..n {
        if !(0..n).any(|b| table[a][b] == 0 && table[b][a] == 0) {
            return Err(GroupDiagnostic::NoInverse { a });
        }
    }
    if n <= ASSOCIATIVITY_BOUND {
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(GroupDiagnostic::NotAssociative { a, b, c });
                    }
                }
            }
        }
    }
    Ok(())
}

impl FiniteGroup {
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<FiniteGroup, Error> {
        validate_group(&table).map_err(|d| Error::InvalidGroup(alloc::format!("{}", d)))?;
        let n = table.len();
        let inv = (0..n).map(|a| (0..n).find(|&b| table[a][b] == 0).unwrap()).collect();
        Ok(FiniteGroup { table, inv })
    }

    pub fn trivial() -> FiniteGroup {
        FiniteGroup { table: vec![vec![0]], inv: vec![0] }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.table.len()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == self.table[b][a]))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order {})", self.order())
    }
}

/// `Z/n` with element `i` the residue `i`.
pub fn cyclic(n: usize) -> Result<FiniteGroup, Error> {
    if n == 0 {
        return Err(Error::InvalidGroup("cyclic group order must be positive".into()));
    }
    let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    FiniteGroup::from_table(table)
}

/// Direct product; element `(a, b)` has index `a * |B| + b`.
pub fn product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let (n, m) = (a.order(), b.order());
    let table =
        (0..n * m).map(|x| (0..n * m).map(|y| a.mul(x / m, y / m) * m + b.mul(x % m, y % m)).collect()).collect();
    FiniteGroup::from_table(table).expect("a product of groups is a group")
}

/// The group generated by invertible square integer matrices, with elements
/// in breadth-first order from the identity; also returns the matrix of each
/// element, so the group acts on `Z^k` through them.
pub fn from_matrix_generators(gens: &[Matrix], max_order: usize) -> Result<(FiniteGroup, Vec<Matrix>), Error> {
    let k = gens.first().map_or(0, |g| g.nrows());
    for g in gens {
        if g.nrows() != k || g.ncols() != k {
            return Err(Error::Dimension("generators must be square of one size".into()));
        }
    }
    let mut elems = vec![Matrix::identity(k)];
    let mut index: BTreeMap<Vec<Vec<Int>>, usize> = BTreeMap::new();
    index.insert(elems[0].to_dense_rows(), 0);
    let mut head = 0;
    while head < elems.len() {
        for g in gens {
            let p = elems[head].mul(g);
            let key = p.to_dense_rows();
            if !index.contains_key(&key) {
                if elems.len() == max_order {
                    return Err(Error::InvalidGroup(alloc::format!("generated group exceeds order {}", max_order)));
                }
                index.insert(key, elems.len());
                elems.push(p);
            }
        }
        head += 1;
    }
    let n = elems.len();
    let mut table = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            match index.get(&elems[a].mul(&elems[b]).to_dense_rows()) {
                Some(&c) => table[a][b] = c,
                None => return Err(Error::InvalidGroup("generators are not invertible of finite order".into())),
            }
        }
    }
    Ok((FiniteGroup::from_table(table)?, elems))
}

/// A homomorphism of finite groups given by the image of every element.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupHom {
    source: FiniteGroup,
    target: FiniteGroup,
    map: Vec<usize>,
}

impl GroupHom {
    pub fn new(source: FiniteGroup, target: FiniteGroup, map: Vec<usize>) -> Result<GroupHom, Error> {
        if map.len() != source.order() {
            return Err(Error::InvalidGroup(alloc::format!(
                "map has {} entries for a source of order {}",
                map.len(),
                source.order()
            )));
        }
        if let Some(&x) = map.iter().find(|&&x| x >= target.order()) {
            return Err(Error::InvalidGroup(alloc::format!("image {} is not a target element", x)));
        }
        if map[0] != 0 {
            return Err(Error::InvalidGroup("identity is not sent to the identity".into()));
        }
        for a in 0..source.order() {
            for b in 0..source.order() {
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(Error::InvalidGroup(alloc::format!("map is not multiplicative at ({}, {})", a, b)));
                }
            }
        }
        Ok(GroupHom { source, target, map })
    }

    pub fn identity(g: &FiniteGroup) -> GroupHom {
        GroupHom { source: g.clone(), target: g.clone(), map: (0..g.order()).collect() }
    }

    pub fn source(&self) -> &FiniteGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.order()];
        for &x in &self.map {
            hit[x] = true;
        }
        hit.into_iter().all(|h| h)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupHom) -> GroupHom {
        assert_eq!(self.target, other.source);
        GroupHom {
            source: self.source.clone(),
            target: other.target.clone(),
            map: self.map.iter().map(|&a| other.map[a]).collect(),
        }
    }
}

/// Reduction `Z/n → Z/m`.
pub fn quotient_map(n: usize, m: usize) -> Result<GroupHom, Error> {
    if n == 0 || m == 0 || n % m != 0 {
        return Err(Error::InvalidGroup(alloc::format!("{} does not divide {}", m, n)));
    }
    GroupHom::new(cyclic(n)?, cyclic(m)?, (0..n).map(|i| i % m).collect())
}

/// A profinite group `lim_j Q_j` given by finitely many levels and surjective
/// transitions `q_j: Q_{j+1} → Q_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfiniteTower {
    levels: Vec<FiniteGroup>,
    transitions: Vec<GroupHom>,
}

/// Why a tower of finite groups is not a valid presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TowerDiagnostic {
    NoLevels,
    WrongCount { levels: usize, transitions: usize },
    Mismatch { index: usize },
    NotSurjective { index: usize },
}

impl fmt::Display for TowerDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TowerDiagnostic::NoLevels => write!(f, "a tower needs at least one level"),
            TowerDiagnostic::WrongCount { levels, transitions } => {
                write!(f, "{} levels need {} transitions, got {}", levels, levels - 1, transitions)
            }
            TowerDiagnostic::Mismatch { index } => {
                write!(f, "transition {} does not go from level {} to level {}", index, index + 1, index)
            }
            TowerDiagnostic::NotSurjective { index } => write!(f, "transition {} is not surjective", index),
        }
    }
}

pub fn validate_tower(levels: &[FiniteGroup], transitions: &[GroupHom]) -> Result<(), TowerDiagnostic> {
    if levels.is_empty() {
        return Err(TowerDiagnostic::NoLevels);
    }
    if transitions.len() + 1 != levels.len() {
        return Err(TowerDiagnostic::WrongCount { levels: levels.len(), transitions: transitions.len() });
    }
    for (j, q) in transitions.iter().enumerate() {
        if q.source() != &levels[j + 1] || q.target() != &levels[j] {
            return Err(TowerDiagnostic::Mismatch { index: j });
        }
        if !q.is_surjective() {
            return Err(TowerDiagnostic::NotSurjective { index: j });
        }
    }
    Ok(())
}

impl ProfiniteTower {
    pub fn new(levels: Vec<FiniteGroup>, transitions: Vec<GroupHom>) -> Result<ProfiniteTower, Error> {
        validate_tower(&levels, &transitions).map_err(|d| Error::InvalidGroup(alloc::format!("{}", d)))?;
        Ok(ProfiniteTower { levels, transitions })
    }

    /// The one-level tower of the trivial group.
    pub fn trivial() -> ProfiniteTower {
        ProfiniteTower { levels: vec![FiniteGroup::trivial()], transitions: Vec::new() }
    }

    /// A single finite group as a one-level tower.
    pub fn finite(q: FiniteGroup) -> ProfiniteTower {
        ProfiniteTower { levels: vec![q], transitions: Vec::new() }
    }

    /// `{Z/p^j}` for `0 ≤ j ≤ top`.
    pub fn p_adic(p: usize, top: usize) -> Result<ProfiniteTower, Error> {
        let mut levels = Vec::new();
        let mut transitions = Vec::new();
        for j in 0..=top {
            levels.push(cyclic(p.pow(j as u32))?);
            if j > 0 {
                transitions.push(quotient_map(p.pow(j as u32), p.pow(j as u32 - 1))?);
            }
        }
        ProfiniteTower::new(levels, transitions)
    }

    /// Index of the deepest level.
    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, j: usize) -> &FiniteGroup {
        &self.levels[j]
    }

    pub fn levels(&self) -> &[FiniteGroup] {
        &self.levels
    }

    pub fn transition(&self, j: usize) -> &GroupHom {
        &self.transitions[j]
    }

    /// Composite `Q_to → Q_from` for `from ≤ to`.
    pub fn projection(&self, to: usize, from: usize) -> Result<GroupHom, Error> {
        if from > to || to > self.top() {
            return Err(Error::Level(alloc::format!("no projection from level {} to level {}", to, from)));
        }
        let mut h = GroupHom::identity(&self.levels[to]);
        for j in (from..to).rev() {
            h = h.then(&self.transitions[j]);
        }
        Ok(h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_groups_are_groups() {
        for n in 1..=64 {
            let g = cyclic(n).unwrap();
            assert_eq!(g.order(), n);
            assert!(validate_group(g.table()).is_ok());
        }
        assert_eq!(cyclic(4).unwrap().mul(3, 2), 1);
        assert!(validate_group(&[vec![0]]).is_ok());
    }

    #[test]
    fn non_associative_table() {
        // a loop of order 5 that is not a group
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(validate_group(&t), Err(GroupDiagnostic::NotAssociative { .. })));
        let t = vec![vec![0, 1], vec![1, 1]];
        assert_eq!(validate_group(&t), Err(GroupDiagnostic::NoInverse { a: 1 }));
    }

    #[test]
    fn quotient_maps() {
        let q = quotient_map(4, 2).unwrap();
        assert!(q.is_surjective());
        assert_eq!(q.map().iter().filter(|&&x| x == 0).count(), 2);
        assert!(quotient_map(4, 3).is_err());
    }

    #[test]
    fn towers() {
        let t = ProfiniteTower::p_adic(2, 3).unwrap();
        assert_eq!(t.level(3).order(), 8);
        for j in 0..=3 {
            for k in j..=3 {
                assert!(t.projection(k, j).unwrap().is_surjective());
            }
        }
        assert!(ProfiniteTower::new(vec![cyclic(2).unwrap()], vec![]).is_ok());
        let z2 = cyclic(2).unwrap();
        let bad = GroupHom::new(z2.clone(), z2.clone(), vec![0, 0]).unwrap();
        assert_eq!(validate_tower(&[z2.clone(), z2], &[bad]), Err(TowerDiagnostic::NotSurjective { index: 0 }));
    }

    #[test]
    fn matrix_groups() {
        let r = Matrix::from_i64_rows(&[&[0, -1], &[1, -1]]);
        let s = Matrix::from_i64_rows(&[&[0, 1], &[1, 0]]);
        let (g, mats) = from_matrix_generators(&[r, s], 64).unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        assert_eq!(mats[0], Matrix::identity(2));
        let (d4, _) = from_matrix_generators(
            &[Matrix::from_i64_rows(&[&[0, -1], &[1, 0]]), Matrix::from_i64_rows(&[&[1, 0], &[0, -1]])],
            64,
        )
        .unwrap();
        assert_eq!(d4.order(), 8);
        let v4 = product(&cyclic(2).unwrap(), &cyclic(2).unwrap());
        assert!(v4.is_abelian());
        assert!((1..4).all(|a| v4.element_order(a) == 2));
    }
}

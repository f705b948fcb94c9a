//! Discrete modules over a profinite tower, coinduction, cochain complexes and
//! continuous cohomology as a colimit over finite levels.
//!
//! Cochains on `Q^n` with values in `M` form `M^{|Q|^n}`; tuples are ordered
//! lexicographically with the first coordinate most significant, and the
//! generators of the power follow [`FgAbGroup::power_index`].

use alloc::vec;
use alloc::vec::Vec;
use core::sync::atomic::{AtomicUsize, Ordering};

use crate::error::Error;
use crate::fgab::{homology_at, homology_group_at, kernel, FgAbGroup, Homology, Homomorphism};
use crate::groups::{FiniteGroup, GroupHom, ProfiniteTower};
use crate::int::Int;
use crate::matrix::{Matrix, SparseVec};

/// An abelian group with an action of `Q_level` by automorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscreteGModule {
    underlying: FgAbGroup,
    level: usize,
    action: Vec<Homomorphism>,
}

impl DiscreteGModule {
    /// Checks that `action` is a homomorphism `Q → Aut(underlying)`.
    pub fn new(q: &FiniteGroup, level: usize, underlying: FgAbGroup, action: Vec<Homomorphism>) -> Result<Self, Error> {
        if action.len() != q.order() {
            return Err(Error::InvalidAction(alloc::format!(
                "{} action maps for a group of order {}",
                action.len(),
                q.order()
            )));
        }
        for (g, a) in action.iter().enumerate() {
            if a.source() != &underlying || a.target() != &underlying {
                return Err(Error::InvalidAction(alloc::format!(
                    "action of {} is not an endomorphism of {}",
                    g,
                    underlying
                )));
            }
        }
        if action[0] != Homomorphism::identity(&underlying) {
            return Err(Error::InvalidAction("identity does not act trivially".into()));
        }
        for g in 0..q.order() {
            for h in 0..q.order() {
                if action[h].then(&action[g])? != action[q.mul(g, h)] {
                    return Err(Error::InvalidAction(alloc::format!(
                        "action({}*{}) != action({})∘action({})",
                        g,
                        h,
                        g,
                        h
                    )));
                }
            }
        }
        // invertibility follows: action(g)∘action(g⁻¹) = action(e) = id
        Ok(DiscreteGModule { underlying, level, action })
    }

    pub fn trivial(q: &FiniteGroup, level: usize, underlying: FgAbGroup) -> Self {
        let id = Homomorphism::identity(&underlying);
        DiscreteGModule { underlying, level, action: vec![id; q.order()] }
    }

    /// Action through integer matrices on the canonical generators.
    pub fn from_matrices(q: &FiniteGroup, level: usize, underlying: FgAbGroup, mats: &[Matrix]) -> Result<Self, Error> {
        let action = mats
            .iter()
            .map(|m| Homomorphism::new(underlying.clone(), underlying.clone(), m.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        DiscreteGModule::new(q, level, underlying, action)
    }

    pub fn underlying(&self) -> &FgAbGroup {
        &self.underlying
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn action(&self, g: usize) -> &Homomorphism {
        &self.action[g]
    }

    pub fn actions(&self) -> &[Homomorphism] {
        &self.action
    }

    /// Order of the acting group.
    pub fn group_order(&self) -> usize {
        self.action.len()
    }

    pub fn is_trivial_action(&self) -> bool {
        self.action.iter().all(|a| a == &self.action[0])
    }

    /// Whether `f: self → other` commutes with the actions.
    pub fn is_equivariant(&self, other: &DiscreteGModule, f: &Homomorphism) -> bool {
        self.action.len() == other.action.len()
            && f.source() == &self.underlying
            && f.target() == &other.underlying
            && self.action.iter().zip(&other.action).all(|(a, b)| a.then(f).ok() == f.then(b).ok())
    }
}

/// `M^Q` with its inclusion, as the common kernel of all `g - 1`.
pub fn fixed_points(m: &DiscreteGModule) -> Result<(FgAbGroup, Homomorphism), Error> {
    let k = m.group_order();
    let r = m.underlying.ngens();
    let big = m.underlying.power(k);
    let mut cols: Vec<SparseVec> = vec![Vec::new(); r];
    for (g, act) in m.action.iter().enumerate() {
        for (a, col) in cols.iter_mut().enumerate() {
            let diff = crate::matrix::sparse_axpy(act.matrix().column(a), &Int::from(-1), &vec![(a, Int::ONE)]);
            col.extend(diff.into_iter().map(|(i, v)| (m.underlying.power_index(k, g, i), v)));
        }
    }
    let h = Homomorphism::new_unchecked(m.underlying.clone(), big.clone(), Matrix::from_columns(big.ngens(), cols));
    kernel(&h)
}

/// `Map(Q, M)` with `(g·f)(g') = f(g'g)`.
pub fn gamma(q: &FiniteGroup, m: &DiscreteGModule) -> Result<DiscreteGModule, Error> {
    if m.group_order() != q.order() {
        return Err(Error::Level(alloc::format!(
            "module is acted on by a group of order {}, not {}; inflate it first",
            m.group_order(),
            q.order()
        )));
    }
    let n = q.order();
    let r = m.underlying.ngens();
    let big = m.underlying.power(n);
    // the basis function e_a at point p is sent to e_a at p·g⁻¹
    let action = (0..n)
        .map(|g| {
            let mut cols: Vec<SparseVec> = vec![Vec::new(); big.ngens()];
            for p in 0..n {
                let to = q.mul(p, q.inv(g));
                for a in 0..r {
                    cols[m.underlying.power_index(n, p, a)] = vec![(m.underlying.power_index(n, to, a), Int::ONE)];
                }
            }
            Homomorphism::new_unchecked(big.clone(), big.clone(), Matrix::from_columns(big.ngens(), cols))
        })
        .collect();
    Ok(DiscreteGModule { underlying: big, level: m.level, action })
}

/// Pulls the action back along the projection `Q_to → Q_level`.
pub fn inflate(m: &DiscreteGModule, tower: &ProfiniteTower, to_level: usize) -> Result<DiscreteGModule, Error> {
    if to_level < m.level {
        return Err(Error::Level(alloc::format!("cannot inflate from level {} down to {}", m.level, to_level)));
    }
    if m.group_order() != tower.level(m.level).order() {
        return Err(Error::Level(alloc::format!("module does not live at level {} of the tower", m.level)));
    }
    let p = tower.projection(to_level, m.level)?;
    let action = p.map().iter().map(|&x| m.action[x].clone()).collect();
    Ok(DiscreteGModule { underlying: m.underlying.clone(), level: to_level, action })
}

/// `f^{⊕k}: M^k → N^k` in the power layout.
pub fn power_map(f: &Homomorphism, k: usize) -> Homomorphism {
    let (s, t) = (f.source(), f.target());
    let mut cols: Vec<SparseVec> = vec![Vec::new(); s.ngens() * k];
    for copy in 0..k {
        for a in 0..s.ngens() {
            cols[s.power_index(k, copy, a)] =
                f.matrix().column(a).iter().map(|(i, v)| (t.power_index(k, copy, *i), v.clone())).collect();
        }
    }
    let tp = t.power(k);
    Homomorphism::new_unchecked(s.power(k), tp.clone(), Matrix::from_columns(tp.ngens(), cols))
}

static COMPLEXES_CHECKED: AtomicUsize = AtomicUsize::new(0);

/// Number of cochain complexes whose `d∘d = 0` check has passed in this process.
pub fn complexes_checked() -> usize {
    COMPLEXES_CHECKED.load(Ordering::Relaxed)
}

/// A bounded cochain complex `C^start → C^{start+1} → ...`.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    start: i64,
    groups: Vec<FgAbGroup>,
    diffs: Vec<Homomorphism>,
}

impl CochainComplex {
    /// `diffs[k]` maps `groups[k]` to `groups[k+1]`; `d∘d = 0` is verified.
    pub fn new(start: i64, groups: Vec<FgAbGroup>, diffs: Vec<Homomorphism>) -> Result<Self, Error> {
        if groups.is_empty() || diffs.len() + 1 != groups.len() {
            return Err(Error::Dimension("a complex with k groups needs k-1 differentials".into()));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.source() != &groups[k] || d.target() != &groups[k + 1] {
                return Err(Error::Dimension(alloc::format!("differential {} has the wrong source or target", k)));
            }
        }
        for w in diffs.windows(2) {
            if !w[0].then(&w[1])?.is_zero() {
                return Err(Error::CompositionNonzero);
            }
        }
        COMPLEXES_CHECKED.fetch_add(1, Ordering::Relaxed);
        Ok(CochainComplex { start, groups, diffs })
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn end(&self) -> i64 {
        self.start + self.groups.len() as i64 - 1
    }

    pub fn group(&self, n: i64) -> FgAbGroup {
        if n < self.start || n > self.end() {
            return FgAbGroup::zero();
        }
        self.groups[(n - self.start) as usize].clone()
    }

    /// `d^n: C^n → C^{n+1}`, or `None` when one side is outside the range.
    pub fn differential(&self, n: i64) -> Option<&Homomorphism> {
        if n < self.start || n >= self.end() {
            return None;
        }
        Some(&self.diffs[(n - self.start) as usize])
    }

    /// `H^s` with representatives; zero maps are used past the ends.
    pub fn cohomology(&self, s: i64) -> Result<Homology, Error> {
        let mid = self.group(s);
        let d_in = self.differential(s - 1);
        let d_out = self.differential(s);
        match (d_in, d_out) {
            (None, None) => {
                let z = FgAbGroup::zero();
                homology_at(None, Some(&Homomorphism::zero(&mid, &z)))
            }
            _ => homology_at(d_in, d_out),
        }
    }
}

pub fn complex_cohomology(c: &CochainComplex, s: i64) -> Result<FgAbGroup, Error> {
    match (c.differential(s - 1), c.differential(s)) {
        (None, None) => Ok(c.group(s)),
        (d_in, d_out) => homology_group_at(d_in, d_out),
    }
}

/// Map on `H^s` induced by a cochain map whose degree-`s` component is `f`.
pub fn induced_on_cohomology(
    src: &CochainComplex,
    dst: &CochainComplex,
    f: &Homomorphism,
    s: i64,
) -> Result<Homomorphism, Error> {
    src.cohomology(s)?.induced(f.matrix(), &dst.cohomology(s)?)
}

/// The three cochain models computing the cohomology of a finite group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CochainModel {
    /// `Map(Q^n, M)` with the standard differential.
    Inhomogeneous,
    /// Fixed points of `Map(Q^{n+1}, M)` under the diagonal action.
    HomogeneousFixed,
    /// Fixed points of the iterated coinduction `Γ^{n+1} M`.
    GammaFixed,
}

pub(crate) fn digits(mut t: usize, n: usize, base: usize) -> Vec<usize> {
    let mut d = vec![0; n];
    for p in (0..n).rev() {
        d[p] = t % base;
        t /= base;
    }
    d
}

pub(crate) fn undigits(d: &[usize], base: usize) -> usize {
    d.iter().fold(0, |acc, &x| acc * base + x)
}

/// One summand of a coface: the basis cochain at a source tuple contributes
/// `sign · (g · e_a)` at the target tuple.
struct Term {
    tuple: Vec<usize>,
    g: usize,
    sign: i64,
}

fn assemble_differential(
    q: &FiniteGroup,
    m: &DiscreteGModule,
    n: usize,
    terms: impl Fn(&[usize], &mut Vec<Term>),
) -> Homomorphism {
    let qn = q.order();
    let (k0, k1) = (qn.pow(n as u32), qn.pow(n as u32 + 1));
    let g = &m.underlying;
    let src = g.power(k0);
    let tgt = g.power(k1);
    let mut cols: Vec<SparseVec> = vec![Vec::new(); src.ngens()];
    let mut buf = Vec::new();
    for t in 0..k0 {
        buf.clear();
        terms(&digits(t, n, qn), &mut buf);
        for a in 0..g.ngens() {
            let col = &mut cols[g.power_index(k0, t, a)];
            for term in &buf {
                let u = undigits(&term.tuple, qn);
                let s = Int::from(term.sign);
                for (i, v) in m.action[term.g].matrix().column(a) {
                    col.push((g.power_index(k1, u, *i), v * &s));
                }
            }
        }
    }
    Homomorphism::new_unchecked(src, tgt.clone(), Matrix::from_columns(tgt.ngens(), cols))
}

fn sign(i: usize) -> i64 {
    if i % 2 == 0 {
        1
    } else {
        -1
    }
}

fn inhomogeneous_terms(q: &FiniteGroup, t: &[usize], out: &mut Vec<Term>) {
    let n = t.len();
    for x in 0..q.order() {
        let mut u = vec![x];
        u.extend_from_slice(t);
        out.push(Term { tuple: u, g: x, sign: 1 });
    }
    for i in 1..=n {
        for x in 0..q.order() {
            let mut u = t[..i - 1].to_vec();
            u.push(x);
            u.push(q.mul(q.inv(x), t[i - 1]));
            u.extend_from_slice(&t[i..]);
            out.push(Term { tuple: u, g: 0, sign: sign(i) });
        }
    }
    for x in 0..q.order() {
        let mut u = t.to_vec();
        u.push(x);
        out.push(Term { tuple: u, g: 0, sign: sign(n + 1) });
    }
}

fn homogeneous_terms(q: &FiniteGroup, t: &[usize], out: &mut Vec<Term>) {
    let n = t.len();
    // a fixed cochain is determined by its values at (e, h_1, ..., h_n)
    for h in 0..q.order() {
        let mut u = vec![h];
        u.extend(t.iter().map(|&x| q.mul(h, x)));
        out.push(Term { tuple: u, g: h, sign: 1 });
    }
    for i in 1..=n + 1 {
        for x in 0..q.order() {
            let mut u = t[..i - 1].to_vec();
            u.push(x);
            u.extend_from_slice(&t[i - 1..]);
            out.push(Term { tuple: u, g: 0, sign: sign(i) });
        }
    }
}

fn gamma_terms(q: &FiniteGroup, t: &[usize], out: &mut Vec<Term>) {
    let n = t.len();
    for x in 0..q.order() {
        let mut u = vec![x];
        u.extend_from_slice(t);
        out.push(Term { tuple: u, g: 0, sign: 1 });
    }
    for i in 1..=n {
        for x in 0..q.order() {
            let mut u = t[..i - 1].to_vec();
            u.push(x);
            u.push(q.mul(t[i - 1], q.inv(x)));
            u.extend_from_slice(&t[i..]);
            out.push(Term { tuple: u, g: 0, sign: sign(i) });
        }
    }
    for y in 0..q.order() {
        let mut u = t.to_vec();
        u.push(y);
        out.push(Term { tuple: u, g: y, sign: sign(n + 1) });
    }
}

fn check_level(q: &FiniteGroup, m: &DiscreteGModule) -> Result<(), Error> {
    if m.group_order() != q.order() {
        return Err(Error::Level(alloc::format!(
            "module is acted on by a group of order {}, not {}",
            m.group_order(),
            q.order()
        )));
    }
    Ok(())
}

/// The complex of the chosen model in degrees `0..=n_max`.
pub fn cochain_complex(
    model: CochainModel,
    q: &FiniteGroup,
    m: &DiscreteGModule,
    n_max: usize,
) -> Result<CochainComplex, Error> {
    check_level(q, m)?;
    let groups = (0..=n_max).map(|n| m.underlying.power(q.order().pow(n as u32))).collect();
    let diffs = (0..n_max)
        .map(|n| match model {
            CochainModel::Inhomogeneous => assemble_differential(q, m, n, |t, o| inhomogeneous_terms(q, t, o)),
            CochainModel::HomogeneousFixed => assemble_differential(q, m, n, |t, o| homogeneous_terms(q, t, o)),
            CochainModel::GammaFixed => assemble_differential(q, m, n, |t, o| gamma_terms(q, t, o)),
        })
        .collect();
    CochainComplex::new(0, groups, diffs)
}

pub fn inhomogeneous_complex(q: &FiniteGroup, m: &DiscreteGModule, n_max: usize) -> Result<CochainComplex, Error> {
    cochain_complex(CochainModel::Inhomogeneous, q, m, n_max)
}

pub fn homogeneous_fixed_complex(q: &FiniteGroup, m: &DiscreteGModule, n_max: usize) -> Result<CochainComplex, Error> {
    cochain_complex(CochainModel::HomogeneousFixed, q, m, n_max)
}

pub fn gamma_fixed_complex(q: &FiniteGroup, m: &DiscreteGModule, n_max: usize) -> Result<CochainComplex, Error> {
    cochain_complex(CochainModel::GammaFixed, q, m, n_max)
}

/// Degree-`n` component of the cochain map induced by an equivariant `f`.
pub fn cochain_map(q: &FiniteGroup, f: &Homomorphism, n: usize) -> Homomorphism {
    power_map(f, q.order().pow(n as u32))
}

/// `H^s(Q; M)` through the inhomogeneous model.
pub fn finite_cohomology(q: &FiniteGroup, m: &DiscreteGModule, s: usize) -> Result<FgAbGroup, Error> {
    complex_cohomology(&inhomogeneous_complex(q, m, s + 1)?, s as i64)
}

/// Degree-`n` inflation `f ↦ f∘p^n` along a surjection `p: Q' → Q`.
pub fn inflation_cochains(p: &GroupHom, m: &FgAbGroup, n: usize) -> Homomorphism {
    let (qs, qt) = (p.target().order(), p.source().order());
    let (k0, k1) = (qs.pow(n as u32), qt.pow(n as u32));
    let mut cols: Vec<SparseVec> = vec![Vec::new(); m.ngens() * k0];
    for u in 0..k1 {
        let img: Vec<usize> = digits(u, n, qt).into_iter().map(|x| p.apply(x)).collect();
        let t = undigits(&img, qs);
        for a in 0..m.ngens() {
            cols[m.power_index(k0, t, a)].push((m.power_index(k1, u, a), Int::ONE));
        }
    }
    let tgt = m.power(k1);
    Homomorphism::new_unchecked(m.power(k0), tgt.clone(), Matrix::from_columns(tgt.ngens(), cols))
}

/// A directed system of finite-level cohomology groups under inflation.
#[derive(Clone, Debug)]
pub struct StabilizedColimit {
    /// Tower level of the first entry of `groups`.
    pub first_level: usize,
    pub groups: Vec<FgAbGroup>,
    /// `inflations[k]: groups[k] → groups[k+1]`.
    pub inflations: Vec<Homomorphism>,
    /// The colimit, when the system visibly settled within the levels computed.
    pub value: Option<FgAbGroup>,
    /// Level from which the reported value is attained.
    pub stabilized_at: Option<usize>,
}

/// `H^s_c(G; M) = colim_j H^s(Q_j; M)` over the levels `M.level ..= depth`.
pub fn continuous_cohomology(
    g: &ProfiniteTower,
    m: &DiscreteGModule,
    s: usize,
    depth: usize,
) -> Result<StabilizedColimit, Error> {
    if depth > g.top() {
        return Err(Error::Level(alloc::format!("depth {} exceeds the tower's top level {}", depth, g.top())));
    }
    if m.level > depth {
        return Err(Error::Level(alloc::format!("module level {} is deeper than depth {}", m.level, depth)));
    }
    let mut complexes = Vec::new();
    let mut groups = Vec::new();
    for j in m.level..=depth {
        let mj = inflate(m, g, j)?;
        let c = inhomogeneous_complex(g.level(j), &mj, s + 1)?;
        groups.push(complex_cohomology(&c, s as i64)?);
        complexes.push(c);
    }
    let mut inflations = Vec::new();
    for j in m.level..depth {
        let k = j - m.level;
        let f = inflation_cochains(g.transition(j), m.underlying(), s);
        inflations.push(induced_on_cohomology(&complexes[k], &complexes[k + 1], &f, s as i64)?);
    }
    let (mut value, mut stabilized_at) = (None, None);
    let l = inflations.len();
    if l >= 2 {
        if inflations[l - 2..].iter().all(|f| f.is_isomorphism()) {
            let mut k = l - 2;
            while k > 0 && inflations[k - 1].is_isomorphism() {
                k -= 1;
            }
            value = Some(groups[l].clone());
            stabilized_at = Some(m.level + k);
        } else if inflations[l - 2..].iter().all(|f| f.is_zero()) {
            value = Some(FgAbGroup::zero());
            stabilized_at = Some(depth);
        }
    }
    Ok(StabilizedColimit { first_level: m.level, groups, inflations, value, stabilized_at })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::cyclic;

    fn negation(q: &FiniteGroup, m: FgAbGroup) -> DiscreteGModule {
        // the generator of a cyclic group of even order acts by -1
        let mats: Vec<Matrix> = (0..q.order())
            .map(|g| Matrix::identity(m.ngens()).scale(&Int::from(if g % 2 == 0 { 1 } else { -1 })))
            .collect();
        DiscreteGModule::from_matrices(q, 0, m, &mats).unwrap()
    }

    #[test]
    fn gamma_of_trivial_group() {
        let q = FiniteGroup::trivial();
        let m = DiscreteGModule::trivial(&q, 0, FgAbGroup::cyclic(4));
        assert_eq!(gamma(&q, &m).unwrap(), m);
    }

    #[test]
    fn gamma_swaps_coordinates() {
        let q = cyclic(2).unwrap();
        let m = DiscreteGModule::trivial(&q, 0, FgAbGroup::cyclic(2));
        let g = gamma(&q, &m).unwrap();
        assert_eq!(g.underlying(), &FgAbGroup::new(0, vec![Int::from(2), Int::from(2)]).unwrap());
        assert_eq!(g.action(1).matrix(), &Matrix::from_i64_rows(&[&[0, 1], &[1, 0]]));
        let m4 = DiscreteGModule::trivial(&q, 0, FgAbGroup::cyclic(4));
        assert_eq!(fixed_points(&gamma(&q, &m4).unwrap()).unwrap().0, FgAbGroup::cyclic(4));
    }

    #[test]
    fn invalid_actions() {
        let q = cyclic(2).unwrap();
        let m = FgAbGroup::cyclic(4);
        let twice = Matrix::identity(1).scale(&Int::from(2));
        let r = DiscreteGModule::from_matrices(&q, 0, m.clone(), &[Matrix::identity(1), twice]);
        assert!(matches!(r, Err(Error::InvalidAction(_))));
        let r = DiscreteGModule::from_matrices(&q, 0, m, &[Matrix::identity(1)]);
        assert!(r.is_err());
    }

    #[test]
    fn inflation_along_reduction() {
        let t = ProfiniteTower::p_adic(2, 2).unwrap();
        let m = negation(t.level(1), FgAbGroup::cyclic(2));
        let m = DiscreteGModule { level: 1, ..m };
        let inf = inflate(&m, &t, 2).unwrap();
        for x in 0..4 {
            assert_eq!(inf.action(x), m.action(x % 2));
        }
        assert_eq!(inflate(&m, &t, 1).unwrap(), m);
        assert!(inflate(&m, &t, 0).is_err());
    }

    #[test]
    fn cochain_ranks_and_low_degrees() {
        let q = cyclic(2).unwrap();
        let m = DiscreteGModule::trivial(&q, 0, FgAbGroup::cyclic(2));
        let c = inhomogeneous_complex(&q, &m, 2).unwrap();
        assert_eq!(c.group(2), FgAbGroup::new(0, vec![Int::from(2); 4]).unwrap());
        assert!(c.differential(0).unwrap().is_zero());
        let z4 = negation(&q, FgAbGroup::cyclic(4));
        assert_eq!(complex_cohomology(&c, 1).unwrap(), FgAbGroup::cyclic(2));
        for model in [CochainModel::Inhomogeneous, CochainModel::HomogeneousFixed, CochainModel::GammaFixed] {
            let c = cochain_complex(model, &q, &z4, 1).unwrap();
            assert_eq!(complex_cohomology(&c, 0).unwrap(), FgAbGroup::cyclic(2));
        }
        let z = DiscreteGModule::trivial(&q, 0, FgAbGroup::free(1));
        assert_eq!(finite_cohomology(&q, &z, 2).unwrap(), FgAbGroup::cyclic(2));
    }

    #[test]
    fn trivial_group_gamma_complex() {
        let q = FiniteGroup::trivial();
        let m = DiscreteGModule::trivial(&q, 0, FgAbGroup::free(1));
        let c = gamma_fixed_complex(&q, &m, 3).unwrap();
        for n in 0..3 {
            let d = c.differential(n).unwrap();
            assert_eq!(d.is_zero(), n % 2 == 0);
        }
    }

    #[test]
    fn dd_zero_for_order_two_action_on_z3() {
        let q = cyclic(4).unwrap();
        let m = negation(&q, FgAbGroup::cyclic(3));
        for model in [CochainModel::Inhomogeneous, CochainModel::HomogeneousFixed, CochainModel::GammaFixed] {
            assert!(cochain_complex(model, &q, &m, 4).is_ok());
        }
    }

    #[test]
    fn continuous_cohomology_of_z2_adic() {
        let t = ProfiniteTower::p_adic(2, 3).unwrap();
        let m = DiscreteGModule::trivial(t.level(0), 0, FgAbGroup::cyclic(2));
        let h1 = continuous_cohomology(&t, &m, 1, 3).unwrap();
        // level 0 is the trivial group, so the first map is Z/2-less
        assert_eq!(h1.value, Some(FgAbGroup::cyclic(2)));
        assert_eq!(h1.stabilized_at, Some(1));
        let h0 = continuous_cohomology(&t, &m, 0, 3).unwrap();
        assert!(h0.groups.iter().all(|g| g == &FgAbGroup::cyclic(2)));
        let h2 = continuous_cohomology(&t, &m, 2, 3).unwrap();
        assert!(h2.inflations[1..].iter().all(|f| f.is_zero()));
        assert_eq!(h2.value, Some(FgAbGroup::zero()));
    }
}

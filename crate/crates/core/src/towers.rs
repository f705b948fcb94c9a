//! Towers of groups, modules and cochain complexes; the Mittag-Leffler
//! condition, `lim` and `lim¹`; continuous cochain cohomology of a limit and
//! Jannsen's continuous cohomology.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::fgab::{FgAbGroup, Homomorphism, Subgroup};
use crate::gmod::{
    cochain_complex, cochain_map, complex_cohomology, gamma, induced_on_cohomology, inflate, power_map, CochainComplex,
    CochainModel, DiscreteGModule,
};
use crate::groups::ProfiniteTower;
use crate::int::Int;
use crate::matrix::Matrix;

pub const DEFAULT_HORIZON: usize = 12;

/// How a finite head of a tower continues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TowerRule {
    /// Only the listed levels are known.
    Explicit,
    /// After the last listed index `h`, `M_i = M_{i-p}` and `f_i = f_{i-p}` for `i ≥ h`.
    Periodic(usize),
}

/// `M_0 ← M_1 ← ... ← M_h` with `maps[i]: M_{i+1} → M_i`, plus a rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTower {
    groups: Vec<FgAbGroup>,
    maps: Vec<Homomorphism>,
    rule: TowerRule,
}

fn check_periodic(len: usize, p: usize, same: impl Fn(usize, usize) -> bool) -> Result<(), Error> {
    let h = len - 1;
    if p == 0 || p > h {
        return Err(Error::Invalid(alloc::format!("period {} needs at least {} levels", p, p + 1)));
    }
    if !same(h, h - p) {
        return Err(Error::Invalid(alloc::format!("level {} does not repeat level {}", h, h - p)));
    }
    Ok(())
}

impl GroupTower {
    pub fn new(groups: Vec<FgAbGroup>, maps: Vec<Homomorphism>, rule: TowerRule) -> Result<GroupTower, Error> {
        if groups.is_empty() || maps.len() + 1 != groups.len() {
            return Err(Error::Dimension("a tower with k levels needs k-1 maps".into()));
        }
        for (i, f) in maps.iter().enumerate() {
            if f.source() != &groups[i + 1] || f.target() != &groups[i] {
                return Err(Error::Dimension(alloc::format!("map {} does not go from level {} to {}", i, i + 1, i)));
            }
        }
        if let TowerRule::Periodic(p) = rule {
            check_periodic(groups.len(), p, |a, b| groups[a] == groups[b])?;
        }
        Ok(GroupTower { groups, maps, rule })
    }

    /// The constant tower `M ←f M ←f ...`.
    pub fn constant(f: Homomorphism) -> Result<GroupTower, Error> {
        let m = f.source().clone();
        GroupTower::new(vec![m.clone(), m], vec![f], TowerRule::Periodic(1))
    }

    pub fn rule(&self) -> TowerRule {
        self.rule
    }

    /// Index of the last listed level.
    pub fn head_len(&self) -> usize {
        self.groups.len() - 1
    }

    pub fn groups(&self) -> &[FgAbGroup] {
        &self.groups
    }

    pub fn maps(&self) -> &[Homomorphism] {
        &self.maps
    }

    fn fold(&self, i: usize) -> usize {
        let h = self.head_len();
        match self.rule {
            TowerRule::Periodic(p) if i > h => h - p + (i - (h - p)) % p,
            _ => i,
        }
    }

    pub fn group(&self, i: usize) -> &FgAbGroup {
        &self.groups[self.fold(i)]
    }

    /// `f_i: M_{i+1} → M_i` on the extended tower.
    pub fn map(&self, i: usize) -> &Homomorphism {
        let h = self.head_len();
        match self.rule {
            TowerRule::Periodic(p) if i >= h => &self.maps[h - p + (i - h) % p],
            _ => &self.maps[i],
        }
    }

    /// Whether level `i` exists (always, for periodic towers).
    pub fn has(&self, i: usize) -> bool {
        matches!(self.rule, TowerRule::Periodic(_)) || i <= self.head_len()
    }

    /// `M_j → M_i` for `i ≤ j`.
    pub fn composite(&self, j: usize, i: usize) -> Homomorphism {
        let mut h = Homomorphism::identity(self.group(j));
        for k in (i..j).rev() {
            h = h.then(self.map(k)).expect("tower maps compose");
        }
        h
    }

    fn image(&self, j: usize, i: usize) -> Subgroup {
        Subgroup::whole(self.group(j)).map(&self.composite(j, i))
    }
}

/// A certificate that the images `φ^k(M_b)` of a periodic tower never stabilize:
/// the one-period composite restricted to `L = φ^k(M_b)` is injective and not
/// surjective.
#[derive(Clone, Debug)]
pub struct NonMlWitness {
    pub base: usize,
    pub periods: usize,
    /// `φ: M_b → M_b`.
    pub phi: Homomorphism,
    /// `L ⊆ M_b`.
    pub stable: Subgroup,
    /// `φ|_L` as an endomorphism of `L` in canonical form.
    pub phi_on_stable: Homomorphism,
}

impl NonMlWitness {
    /// Re-checks the certificate by exact kernel and image computations.
    pub fn verify(&self) -> bool {
        let image = self.stable.map(&self.phi);
        image.is_subset_of(&self.stable)
            && !self.stable.is_subset_of(&image)
            && self.phi_on_stable.is_injective()
            && !self.phi_on_stable.is_surjective()
    }
}

#[derive(Clone, Debug)]
pub enum MlStatus {
    /// Images `Im(M_{i+j} → M_i)` are constant for `j ≥ k`.
    Certified {
        k: usize,
    },
    NotMl(NonMlWitness),
    Undetermined {
        horizon: usize,
    },
}

impl MlStatus {
    pub fn is_certified(&self) -> bool {
        matches!(self, MlStatus::Certified { .. })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Lim1Status {
    Zero,
    Nonzero,
    Undetermined,
}

impl fmt::Display for Lim1Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Lim1Status::Zero => "zero",
            Lim1Status::Nonzero => "nonzero",
            Lim1Status::Undetermined => "undetermined",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LimValue {
    Group(FgAbGroup),
    /// Not finitely generated; described by the stable images of the tower.
    ProObject,
    Undetermined,
}

/// The inverse-limit data of a tower of groups.
#[derive(Clone, Debug)]
pub struct ProGroup {
    pub levels: Vec<FgAbGroup>,
    pub transitions: Vec<Homomorphism>,
    pub rule: TowerRule,
    pub ml: MlStatus,
    /// Stable images `S_i` on the listed levels, when ML is certified.
    pub stable: Option<Vec<FgAbGroup>>,
    pub lim: LimValue,
    pub lim1: Lim1Status,
}

impl ProGroup {
    pub fn lim_is_zero(&self) -> bool {
        matches!(&self.lim, LimValue::Group(g) if g.is_trivial())
    }

    /// Same limit: equal finitely generated values, or pro-objects whose
    /// stable images agree levelwise.
    pub fn same_lim(&self, other: &ProGroup) -> Option<bool> {
        match (&self.lim, &other.lim) {
            (LimValue::Undetermined, _) | (_, LimValue::Undetermined) => None,
            (LimValue::Group(a), LimValue::Group(b)) => Some(a == b),
            (LimValue::ProObject, LimValue::ProObject) => match (&self.stable, &other.stable) {
                (Some(a), Some(b)) => Some(a.iter().zip(b).all(|(x, y)| x == y)),
                _ => None,
            },
            _ => Some(false),
        }
    }
}

fn restrict_endo(l: &Subgroup, phi: &Homomorphism) -> Homomorphism {
    l.presentation().restrict(phi).expect("φ preserves its own image chain")
}

/// Gcd of the entries of the `rank`-th power of the free block of `psi`.
fn free_block_gcd(psi: &Homomorphism) -> Int {
    let r = psi.source().rank();
    let rows: Vec<usize> = (0..r).collect();
    let block = psi.matrix().select_rows(&rows).select_columns(&rows);
    let mut pw = Matrix::identity(r);
    for _ in 0..r.max(1) {
        pw = pw.mul(&block);
    }
    pw.columns().iter().flatten().fold(Int::ZERO, |g, (_, v)| g.gcd(v))
}

/// Decides the Mittag-Leffler condition where the available data allow it.
pub fn ml_check(t: &GroupTower, horizon: usize) -> MlStatus {
    ml_analysis(t, horizon).0
}

/// The ML status plus, when certified, the stable image subgroups on the listed levels.
fn ml_analysis(t: &GroupTower, horizon: usize) -> (MlStatus, Option<Vec<Subgroup>>) {
    let h = t.head_len();
    match t.rule {
        TowerRule::Explicit => {
            let surjective = t.maps.iter().all(|f| f.is_surjective());
            let finite = t.groups.iter().all(|g| g.is_finite());
            if !(surjective || finite) {
                return (MlStatus::Undetermined { horizon }, None);
            }
            let mut k = 0;
            let mut stable = Vec::with_capacity(h + 1);
            for i in 0..=h {
                let top = t.image(h, i);
                let mut ki = h - i;
                while ki > 0 && t.image(i + ki - 1, i).same_as(&top) {
                    ki -= 1;
                }
                k = k.max(ki);
                stable.push(top);
            }
            if surjective {
                k = 0;
            }
            (MlStatus::Certified { k }, Some(stable))
        }
        TowerRule::Periodic(p) => {
            let b = h - p;
            let phi = t.composite(b + p, b);
            let mut l = Subgroup::whole(t.group(b));
            for periods in 0..=horizon {
                let next = l.map(&phi);
                if l.is_subset_of(&next) {
                    // images at every index are stable after `periods + 1` periods
                    let far = b + (periods + 1) * p;
                    let mut k = 0;
                    let mut stable = Vec::with_capacity(h + 1);
                    for i in 0..b + p {
                        let reach = far + p * ((i + p - 1) / p);
                        let top = t.image(reach, i);
                        let mut ki = reach - i;
                        while ki > 0 && t.image(i + ki - 1, i).same_as(&top) {
                            ki -= 1;
                        }
                        k = k.max(ki);
                        if i <= h {
                            stable.push(top);
                        }
                    }
                    while stable.len() <= h {
                        let i = stable.len();
                        stable.push(t.image(far + p * ((i + p - 1) / p), i));
                    }
                    return (MlStatus::Certified { k }, Some(stable));
                }
                let on_l = restrict_endo(&l, &phi);
                if on_l.is_injective() {
                    let witness = NonMlWitness { base: b, periods, phi: phi.clone(), stable: l, phi_on_stable: on_l };
                    return (MlStatus::NotMl(witness), None);
                }
                l = next;
            }
            (MlStatus::Undetermined { horizon }, None)
        }
    }
}

/// `lim` with its ML certificate and `lim¹` status.
pub fn tower_lim(t: &GroupTower, horizon: usize) -> ProGroup {
    let (ml, stable_subs) = ml_analysis(t, horizon);
    let stable: Option<Vec<FgAbGroup>> =
        stable_subs.as_ref().map(|v| v.iter().map(|s| s.presentation().group().clone()).collect());
    let lim = match (&ml, &stable, t.rule) {
        (MlStatus::Certified { .. }, Some(s), TowerRule::Periodic(p)) => LimValue::Group(s[t.head_len() - p].clone()),
        (MlStatus::Certified { .. }, Some(s), TowerRule::Explicit) => {
            // surjections between isomorphic f.g. groups are isomorphisms
            if s.windows(2).all(|w| w[0] == w[1]) {
                LimValue::Group(s[0].clone())
            } else {
                LimValue::ProObject
            }
        }
        (MlStatus::NotMl(w), _, _) => {
            // lim ≅ ⋂ φ^k(L); it is the torsion of L when φ contracts the free part
            let g = free_block_gcd(&w.phi_on_stable);
            if g.is_one() {
                LimValue::Undetermined
            } else {
                let l = w.phi_on_stable.source();
                LimValue::Group(FgAbGroup::new(0, l.torsion().to_vec()).expect("torsion of a canonical group"))
            }
        }
        _ => LimValue::Undetermined,
    };
    let lim1 = match &ml {
        MlStatus::Certified { .. } => Lim1Status::Zero,
        MlStatus::NotMl(_) => Lim1Status::Nonzero,
        MlStatus::Undetermined { .. } => Lim1Status::Undetermined,
    };
    ProGroup { levels: t.groups.clone(), transitions: t.maps.clone(), rule: t.rule, ml, stable, lim, lim1 }
}

/// `lim¹` status: zero iff ML (towers of countable groups).
pub fn tower_lim1(t: &GroupTower, horizon: usize) -> Lim1Status {
    tower_lim(t, horizon).lim1
}

/// A tower of discrete modules with equivariant transitions.
#[derive(Clone, Debug)]
pub struct ModuleTower {
    modules: Vec<DiscreteGModule>,
    maps: Vec<Homomorphism>,
    rule: TowerRule,
}

impl ModuleTower {
    /// Transitions are checked for equivariance after inflating to a common level.
    pub fn new(
        g: &ProfiniteTower,
        modules: Vec<DiscreteGModule>,
        maps: Vec<Homomorphism>,
        rule: TowerRule,
    ) -> Result<ModuleTower, Error> {
        if modules.is_empty() || maps.len() + 1 != modules.len() {
            return Err(Error::Dimension("a tower with k levels needs k-1 maps".into()));
        }
        let level = modules.iter().map(|m| m.level()).max().unwrap();
        if level > g.top() {
            return Err(Error::Level(alloc::format!("module level {} is not in the profinite tower", level)));
        }
        let inflated = modules.iter().map(|m| inflate(m, g, level)).collect::<Result<Vec<_>, _>>()?;
        for (i, f) in maps.iter().enumerate() {
            if !inflated[i + 1].is_equivariant(&inflated[i], f) {
                return Err(Error::InvalidAction(alloc::format!("transition {} is not equivariant", i)));
            }
        }
        if let TowerRule::Periodic(p) = rule {
            check_periodic(modules.len(), p, |a, b| modules[a] == modules[b])?;
        }
        Ok(ModuleTower { modules, maps, rule })
    }

    pub fn constant(g: &ProfiniteTower, m: DiscreteGModule, f: Homomorphism) -> Result<ModuleTower, Error> {
        ModuleTower::new(g, vec![m.clone(), m], vec![f], TowerRule::Periodic(1))
    }

    pub fn modules(&self) -> &[DiscreteGModule] {
        &self.modules
    }

    pub fn maps(&self) -> &[Homomorphism] {
        &self.maps
    }

    pub fn rule(&self) -> TowerRule {
        self.rule
    }

    pub fn max_level(&self) -> usize {
        self.modules.iter().map(|m| m.level()).max().unwrap()
    }

    /// The underlying tower of abelian groups.
    pub fn groups(&self) -> GroupTower {
        GroupTower {
            groups: self.modules.iter().map(|m| m.underlying().clone()).collect(),
            maps: self.maps.clone(),
            rule: self.rule,
        }
    }

    /// `{Γ_{Q_depth} M_i}` with the induced transitions.
    pub fn gamma(&self, g: &ProfiniteTower, depth: usize) -> Result<ModuleTower, Error> {
        let q = g.level(depth);
        let modules = self.modules.iter().map(|m| gamma(q, &inflate(m, g, depth)?)).collect::<Result<Vec<_>, _>>()?;
        let maps = self.maps.iter().map(|f| power_map(f, q.order())).collect();
        Ok(ModuleTower { modules, maps, rule: self.rule })
    }
}

/// A tower of cochain complexes `C_0 ← C_1 ← ...` over a common degree range.
#[derive(Clone, Debug)]
pub struct ComplexTower {
    complexes: Vec<CochainComplex>,
    /// `maps[i][n]`: degree-`n` component of `C_{i+1} → C_i` (index from the complexes' start).
    maps: Vec<Vec<Homomorphism>>,
    rule: TowerRule,
}

impl ComplexTower {
    /// Transition chain maps are checked to commute with the differentials.
    pub fn new(complexes: Vec<CochainComplex>, maps: Vec<Vec<Homomorphism>>, rule: TowerRule) -> Result<Self, Error> {
        if complexes.is_empty() || maps.len() + 1 != complexes.len() {
            return Err(Error::Dimension("a tower with k levels needs k-1 chain maps".into()));
        }
        let (start, end) = (complexes[0].start(), complexes[0].end());
        for c in &complexes {
            if c.start() != start || c.end() != end {
                return Err(Error::Dimension("complexes in a tower must share their degree range".into()));
            }
        }
        for (i, f) in maps.iter().enumerate() {
            if f.len() as i64 != end - start + 1 {
                return Err(Error::Dimension(alloc::format!("chain map {} has the wrong number of components", i)));
            }
            for n in start..end {
                let k = (n - start) as usize;
                let a = f[k].then(complexes[i].differential(n).unwrap())?;
                let b = complexes[i + 1].differential(n).unwrap().then(&f[k + 1])?;
                if a != b {
                    return Err(Error::Invalid(alloc::format!(
                        "chain map {} does not commute with the differential in degree {}",
                        i,
                        n
                    )));
                }
            }
        }
        if let TowerRule::Periodic(p) = rule {
            check_periodic(complexes.len(), p, |a, b| {
                (start..=end).all(|n| complexes[a].group(n) == complexes[b].group(n))
                    && (start..end).all(|n| complexes[a].differential(n) == complexes[b].differential(n))
            })?;
        }
        Ok(ComplexTower { complexes, maps, rule })
    }

    pub fn complexes(&self) -> &[CochainComplex] {
        &self.complexes
    }

    pub fn rule(&self) -> TowerRule {
        self.rule
    }

    pub fn start(&self) -> i64 {
        self.complexes[0].start()
    }

    pub fn end(&self) -> i64 {
        self.complexes[0].end()
    }

    /// The tower `{C_i^n}` (zero outside the range).
    pub fn degree_tower(&self, n: i64) -> GroupTower {
        let k = n - self.start();
        let inside = k >= 0 && n <= self.end();
        GroupTower {
            groups: self.complexes.iter().map(|c| c.group(n)).collect(),
            maps: self
                .maps
                .iter()
                .enumerate()
                .map(|(i, f)| {
                    if inside {
                        f[k as usize].clone()
                    } else {
                        Homomorphism::zero(&self.complexes[i + 1].group(n), &self.complexes[i].group(n))
                    }
                })
                .collect(),
            rule: self.rule,
        }
    }

    /// The tower `{H^s(C_i)}` with induced maps.
    pub fn cohomology_tower(&self, s: i64) -> Result<GroupTower, Error> {
        let groups = self.complexes.iter().map(|c| complex_cohomology(c, s)).collect::<Result<Vec<_>, _>>()?;
        let k = s - self.start();
        let maps = self
            .maps
            .iter()
            .enumerate()
            .map(|(i, f)| {
                if k < 0 || s > self.end() {
                    Ok(Homomorphism::zero(&groups[i + 1], &groups[i]))
                } else {
                    induced_on_cohomology(&self.complexes[i + 1], &self.complexes[i], &f[k as usize], s)
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        GroupTower::new(groups, maps, self.rule)
    }

    /// `H^s(lim_i C_i)`, assembled as an extension of `lim H^s` by `lim¹ H^{s-1}`.
    pub fn limit_cohomology(&self, s: i64, horizon: usize) -> Result<Assembled, Error> {
        if s < self.start() || s >= self.end() {
            return Err(Error::Invalid(alloc::format!(
                "degree {} is outside {}..{} where the truncated complex computes cohomology",
                s,
                self.start(),
                self.end()
            )));
        }
        let ml: Vec<MlStatus> = (s - 1..=s + 1).map(|n| ml_check(&self.degree_tower(n), horizon)).collect();
        if ml.iter().all(|m| m.is_certified()) {
            let quotient = tower_lim(&self.cohomology_tower(s)?, horizon);
            let sub_tower = tower_lim(&self.cohomology_tower(s - 1)?, horizon);
            let assembled = Assembled::new(sub_tower, quotient);
            if let TowerRule::Periodic(_) = self.rule {
                let exact = self.exact_limit_cohomology(s, horizon)?;
                let agrees = assembled.sub.lim1 == Lim1Status::Zero
                    && matches!(&assembled.quotient.lim, LimValue::Group(g) if g == &exact);
                if !agrees {
                    return Err(Error::Internal(alloc::format!(
                        "limit complex gives H^{} = {} but the lim/lim¹ assembly disagrees",
                        s,
                        exact
                    )));
                }
            }
            return Ok(assembled);
        }
        // a degree whose limit vanishes carries no cohomology
        let lim_s = tower_lim(&self.degree_tower(s), horizon);
        if lim_s.lim_is_zero() {
            return Ok(Assembled::zero_by_vanishing(lim_s));
        }
        Err(Error::DecompositionNotValid(alloc::format!(
            "degree towers around {} are not certified Mittag-Leffler; a surjective replacement is required",
            s
        )))
    }

    /// `H^s` of the honest limit complex of a periodic tower whose degree
    /// towers are ML: the stable subcomplex at the base index.
    fn exact_limit_cohomology(&self, s: i64, horizon: usize) -> Result<FgAbGroup, Error> {
        let TowerRule::Periodic(p) = self.rule else {
            return Err(Error::Invalid("exact limit complex needs a periodic tower".into()));
        };
        let b = self.complexes.len() - 1 - p;
        let c = &self.complexes[b];
        let stable = |n: i64| -> Result<Subgroup, Error> {
            if n < self.start() || n > self.end() {
                return Ok(Subgroup::new(FgAbGroup::zero(), Matrix::zeros(0, 0)));
            }
            let (_, subs) = ml_analysis(&self.degree_tower(n), horizon);
            subs.map(|mut v| v.swap_remove(b))
                .ok_or_else(|| Error::DecompositionNotValid("degree tower lost its certificate".into()))
        };
        let pres: Vec<_> = (s - 1..=s + 1).map(|n| stable(n).map(|x| x.presentation())).collect::<Result<_, _>>()?;
        let restricted = |n: i64, k: usize| -> Option<Homomorphism> {
            let d = c.differential(n)?;
            let (src, dst) = (&pres[k], &pres[k + 1]);
            let cols: Option<Vec<_>> = (0..src.group().ngens())
                .map(|j| {
                    let x: Vec<Int> = (0..d.source().ngens()).map(|i| src.inclusion().matrix().get(i, j)).collect();
                    let y = dst.coords(&d.apply(&x))?;
                    Some(y.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect())
                })
                .collect();
            Some(Homomorphism::new_unchecked(
                src.group().clone(),
                dst.group().clone(),
                Matrix::from_columns(dst.group().ngens(), cols?),
            ))
        };
        let d_in = restricted(s - 1, 0);
        let d_out = restricted(s, 1);
        let zero = FgAbGroup::zero();
        let d_out = d_out.unwrap_or_else(|| Homomorphism::zero(pres[1].group(), &zero));
        Ok(crate::fgab::homology_at(d_in.as_ref(), Some(&d_out))?.group().clone())
    }
}

/// How the two pieces of an extension determine the value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtensionNote {
    /// At most one piece is nonzero.
    Exact,
    /// Both pieces are nonzero; the extension is not determined.
    DeterminedUpToExtension,
    /// Some piece is undetermined.
    Undetermined,
}

/// A value `V` sitting in `0 → lim¹ A → V → lim B → 0`.
#[derive(Clone, Debug)]
pub struct Assembled {
    /// The tower `A` whose `lim¹` is the subobject (`None` when `A = 0`).
    pub sub: ProGroup,
    /// The tower `B` whose `lim` is the quotient.
    pub quotient: ProGroup,
    pub note: ExtensionNote,
}

impl Assembled {
    pub fn new(sub: ProGroup, quotient: ProGroup) -> Assembled {
        let note = note_for(sub.lim1, &quotient.lim);
        Assembled { sub, quotient, note }
    }

    fn zero_by_vanishing(degree: ProGroup) -> Assembled {
        // both pieces are subquotients of lim C^s = 0
        let zero = tower_lim(&zero_tower(degree.levels.len()), 1);
        Assembled { sub: zero.clone(), quotient: zero, note: ExtensionNote::Exact }
    }

    pub fn is_zero(&self) -> bool {
        self.note == ExtensionNote::Exact && self.sub.lim1 == Lim1Status::Zero && self.quotient.lim_is_zero()
    }
}

fn note_for(sub: Lim1Status, quotient: &LimValue) -> ExtensionNote {
    let q_zero = matches!(quotient, LimValue::Group(g) if g.is_trivial());
    match (sub, quotient) {
        (Lim1Status::Undetermined, _) | (_, LimValue::Undetermined) => ExtensionNote::Undetermined,
        (Lim1Status::Zero, _) => ExtensionNote::Exact,
        (Lim1Status::Nonzero, _) if q_zero => ExtensionNote::Exact,
        (Lim1Status::Nonzero, _) => ExtensionNote::DeterminedUpToExtension,
    }
}

pub(crate) fn zero_tower(len: usize) -> GroupTower {
    let z = FgAbGroup::zero();
    GroupTower {
        groups: vec![z.clone(); len.max(1)],
        maps: vec![Homomorphism::zero(&z, &z); len.max(1) - 1],
        rule: TowerRule::Explicit,
    }
}

/// The pro-discrete cochain complex: degree `n` is the tower
/// `{(Γ^{n+1}_{Q_depth} M_i)^{Q_depth}}` with the induced chain maps.
pub fn prodiscrete_complex(
    g: &ProfiniteTower,
    t: &ModuleTower,
    n_max: usize,
    depth: usize,
) -> Result<ComplexTower, Error> {
    if depth > g.top() || t.max_level() > depth {
        return Err(Error::Level(alloc::format!(
            "depth {} must lie between the module levels and the tower top",
            depth
        )));
    }
    let q = g.level(depth);
    let complexes = t
        .modules
        .iter()
        .map(|m| cochain_complex(CochainModel::GammaFixed, q, &inflate(m, g, depth)?, n_max))
        .collect::<Result<Vec<_>, _>>()?;
    let maps = t.maps.iter().map(|f| (0..=n_max).map(|n| cochain_map(q, f, n)).collect()).collect();
    ComplexTower::new(complexes, maps, t.rule)
}

/// `H^s_cts(G; lim_i M_i)` as the cohomology of the pro-discrete complex.
pub fn h_cts(
    g: &ProfiniteTower,
    t: &ModuleTower,
    s: usize,
    n_max: usize,
    depth: usize,
    horizon: usize,
) -> Result<Assembled, Error> {
    if s + 1 > n_max {
        return Err(Error::Invalid(alloc::format!("s = {} needs n_max ≥ {}", s, s + 1)));
    }
    prodiscrete_complex(g, t, n_max, depth)?.limit_cohomology(s as i64, horizon)
}

/// The tower `{H^s(Q_depth; M_i)}` with induced maps (zero for negative `s`).
pub fn cohomology_tower(g: &ProfiniteTower, t: &ModuleTower, s: i64, depth: usize) -> Result<GroupTower, Error> {
    if s < 0 {
        return Ok(GroupTower { rule: t.rule, ..zero_tower(t.modules.len()) });
    }
    let s = s as usize;
    let q = g.level(depth);
    let complexes = t
        .modules
        .iter()
        .map(|m| cochain_complex(CochainModel::Inhomogeneous, q, &inflate(m, g, depth)?, s + 1))
        .collect::<Result<Vec<_>, _>>()?;
    let groups = complexes.iter().map(|c| complex_cohomology(c, s as i64)).collect::<Result<Vec<_>, _>>()?;
    let maps = t
        .maps
        .iter()
        .enumerate()
        .map(|(i, f)| induced_on_cohomology(&complexes[i + 1], &complexes[i], &cochain_map(q, f, s), s as i64))
        .collect::<Result<Vec<_>, _>>()?;
    GroupTower::new(groups, maps, t.rule)
}

/// Jannsen's `H^s_cont(G; {M_i})` from `0 → lim¹ H^{s-1}_c → H^s_cont → lim H^s_c → 0`.
pub fn h_cont(g: &ProfiniteTower, t: &ModuleTower, s: usize, depth: usize, horizon: usize) -> Result<Assembled, Error> {
    if depth > g.top() || t.max_level() > depth {
        return Err(Error::Level(alloc::format!(
            "depth {} must lie between the module levels and the tower top",
            depth
        )));
    }
    let quotient = tower_lim(&cohomology_tower(g, t, s as i64, depth)?, horizon);
    let sub = tower_lim(&cohomology_tower(g, t, s as i64 - 1, depth)?, horizon);
    Ok(Assembled::new(sub, quotient))
}

/// Outcome of comparing two assembled values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Agreement {
    Agree,
    Disagree,
    /// The hypothesis of the comparison fails; both sides are reported.
    NotAsserted,
    Undetermined,
}

/// Piecewise comparison of two extensions.
pub fn compare_assembled(a: &Assembled, b: &Assembled) -> Agreement {
    if a.note == ExtensionNote::Undetermined || b.note == ExtensionNote::Undetermined {
        return Agreement::Undetermined;
    }
    match a.quotient.same_lim(&b.quotient) {
        None => Agreement::Undetermined,
        Some(q) if q && a.sub.lim1 == b.sub.lim1 => Agreement::Agree,
        Some(_) => Agreement::Disagree,
    }
}

#[derive(Clone, Debug)]
pub struct CtsContReport {
    pub s: usize,
    pub ml: MlStatus,
    pub agreement: Agreement,
    pub cts: Result<Assembled, Error>,
    pub cont: Assembled,
    pub details: String,
}

/// Runs both pipelines; agreement is asserted when the module tower is ML.
pub fn compare_cts_cont(
    g: &ProfiniteTower,
    t: &ModuleTower,
    s: usize,
    n_max: usize,
    depth: usize,
    horizon: usize,
) -> Result<CtsContReport, Error> {
    let ml = ml_check(&t.groups(), horizon);
    let cont = h_cont(g, t, s, depth, horizon)?;
    let cts = h_cts(g, t, s, n_max, depth, horizon);
    let (agreement, details) = if ml.is_certified() {
        match &cts {
            Ok(c) => {
                let a = compare_assembled(c, &cont);
                (a, alloc::format!("module tower is Mittag-Leffler; pieces compared: {:?}", a))
            }
            Err(e) => (Agreement::Disagree, alloc::format!("module tower is Mittag-Leffler but H_cts failed: {}", e)),
        }
    } else {
        (Agreement::NotAsserted, "module tower is not certified Mittag-Leffler; comparison not asserted".into())
    };
    Ok(CtsContReport { s, ml, agreement, cts, cont, details })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::cyclic;

    fn times(g: &FgAbGroup, k: i64) -> Homomorphism {
        Homomorphism::scalar(g, k)
    }

    fn two_adic(levels: usize) -> GroupTower {
        let groups: Vec<FgAbGroup> = (0..levels).map(|i| FgAbGroup::cyclic(1 << (i + 1))).collect();
        let maps = (0..levels - 1)
            .map(|i| Homomorphism::new(groups[i + 1].clone(), groups[i].clone(), Matrix::identity(1)).unwrap())
            .collect();
        GroupTower::new(groups, maps, TowerRule::Explicit).unwrap()
    }

    #[test]
    fn surjective_towers_are_ml() {
        let t = two_adic(4);
        assert!(matches!(ml_check(&t, 12), MlStatus::Certified { k: 0 }));
        let p = tower_lim(&t, 12);
        assert_eq!(p.lim, LimValue::ProObject);
        assert_eq!(p.lim1, Lim1Status::Zero);
    }

    #[test]
    fn times_two_on_z() {
        let z = FgAbGroup::free(1);
        let t = GroupTower::constant(times(&z, 2)).unwrap();
        match ml_check(&t, 12) {
            MlStatus::NotMl(w) => {
                assert!(w.verify());
                assert_eq!(w.phi.matrix().get(0, 0), Int::from(2));
            }
            other => panic!("expected a non-ML certificate, got {:?}", other),
        }
        let p = tower_lim(&t, 12);
        assert_eq!(p.lim, LimValue::Group(FgAbGroup::zero()));
        assert_eq!(p.lim1, Lim1Status::Nonzero);
    }

    #[test]
    fn constant_identity_tower() {
        let m = FgAbGroup::from_orders(&[Int::ZERO, Int::from(6)]);
        let p = tower_lim(&GroupTower::constant(Homomorphism::identity(&m)).unwrap(), 12);
        assert_eq!(p.lim, LimValue::Group(m));
        assert!(matches!(p.ml, MlStatus::Certified { k: 0 }));
    }

    #[test]
    fn explicit_infinite_tower_is_undetermined() {
        let z = FgAbGroup::free(1);
        let t = GroupTower::new(vec![z.clone(); 3], vec![times(&z, 2), times(&z, 2)], TowerRule::Explicit).unwrap();
        assert_eq!(tower_lim1(&t, 12), Lim1Status::Undetermined);
    }

    #[test]
    fn finite_towers_stabilize() {
        // Z/8 ←×2 Z/8 ←×2 ...: images 2^k Z/8 reach 0 after three steps
        let z8 = FgAbGroup::cyclic(8);
        let t = GroupTower::constant(times(&z8, 2)).unwrap();
        assert!(matches!(ml_check(&t, 12), MlStatus::Certified { k: 3 }));
        assert_eq!(tower_lim(&t, 12).lim, LimValue::Group(FgAbGroup::zero()));
        let t = GroupTower::new(vec![z8.clone(); 5], vec![times(&z8, 2); 4], TowerRule::Explicit).unwrap();
        assert!(matches!(ml_check(&t, 12), MlStatus::Certified { k: 3 }));
        // Z ⊕ Z/4 with (×3, ×2): torsion dies, free part contracts
        let g = FgAbGroup::from_orders(&[Int::ZERO, Int::from(4)]);
        let f = Homomorphism::new(g.clone(), g.clone(), Matrix::from_i64_rows(&[&[3, 0], &[0, 2]])).unwrap();
        let p = tower_lim(&GroupTower::constant(f).unwrap(), 12);
        assert_eq!(p.lim1, Lim1Status::Nonzero);
        assert_eq!(p.lim, LimValue::Group(FgAbGroup::zero()));
    }

    #[test]
    fn periodic_with_period_two() {
        // Z ←×2 Z ←id Z ←×2 ... has the same limits as (Z, ×2)
        let z = FgAbGroup::free(1);
        let t = GroupTower::new(vec![z.clone(); 3], vec![times(&z, 2), times(&z, 1)], TowerRule::Periodic(2)).unwrap();
        assert_eq!(t.map(2), &times(&z, 2));
        assert_eq!(t.map(3), &times(&z, 1));
        assert_eq!(tower_lim1(&t, 12), Lim1Status::Nonzero);
        assert!(GroupTower::new(vec![z.clone()], vec![], TowerRule::Periodic(1)).is_err());
    }

    #[test]
    fn cohomology_of_limit_for_constant_towers() {
        let g = ProfiniteTower::p_adic(2, 2).unwrap();
        let q = g.level(2);
        let m = DiscreteGModule::trivial(q, 2, FgAbGroup::cyclic(4));
        let t = ModuleTower::constant(&g, m.clone(), Homomorphism::identity(m.underlying())).unwrap();
        for s in 0..=2 {
            let a = h_cts(&g, &t, s, 3, 2, 12).unwrap();
            let direct = crate::gmod::finite_cohomology(q, &m, s).unwrap();
            assert_eq!(a.quotient.lim, LimValue::Group(direct));
            assert_eq!(a.sub.lim1, Lim1Status::Zero);
        }
        assert!(cyclic(1).is_ok());
    }

    #[test]
    fn two_adic_coefficients() {
        let g = ProfiniteTower::p_adic(2, 2).unwrap();
        let q = g.level(2);
        let mods: Vec<DiscreteGModule> =
            (0..3).map(|i| DiscreteGModule::trivial(q, 2, FgAbGroup::cyclic(1 << (i + 1)))).collect();
        let maps = (0..2)
            .map(|i| {
                Homomorphism::new(mods[i + 1].underlying().clone(), mods[i].underlying().clone(), Matrix::identity(1))
                    .unwrap()
            })
            .collect();
        let t = ModuleTower::new(&g, mods, maps, TowerRule::Explicit).unwrap();
        let a = h_cts(&g, &t, 0, 2, 2, 12).unwrap();
        assert_eq!(a.quotient.lim, LimValue::ProObject);
        assert_eq!(a.sub.lim1, Lim1Status::Zero);
        let r = compare_cts_cont(&g, &t, 1, 3, 2, 12).unwrap();
        assert_eq!(r.agreement, Agreement::Agree);
    }

    #[test]
    fn gamma_tower_of_times_two() {
        let g = ProfiniteTower::p_adic(2, 1).unwrap();
        let q = g.level(1);
        let z = DiscreteGModule::trivial(q, 1, FgAbGroup::free(1));
        let t = ModuleTower::constant(&g, z.clone(), times(z.underlying(), 2)).unwrap();
        let gt = t.gamma(&g, 1).unwrap();
        let h1 = h_cont(&g, &gt, 1, 1, 12).unwrap();
        assert_eq!(h1.sub.lim1, Lim1Status::Nonzero);
        assert!(h1.quotient.lim_is_zero());
        assert_eq!(h1.note, ExtensionNote::Exact);
        assert!(h_cont(&g, &gt, 2, 1, 12).unwrap().is_zero());
        // the limit complex vanishes degreewise, so the cochain side sees nothing
        assert!(h_cts(&g, &gt, 1, 2, 1, 12).unwrap().is_zero());
        let r = compare_cts_cont(&g, &gt, 1, 2, 1, 12).unwrap();
        assert_eq!(r.agreement, Agreement::NotAsserted);
    }
}

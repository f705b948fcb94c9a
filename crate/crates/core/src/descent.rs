//! The descent spectral sequence `E₂`-term in a chain-complex model: towers of
//! bounded chain complexes of discrete modules, `π_t ↦ H_t`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::fgab::{homology_at, FgAbGroup, Homology, Homomorphism};
use crate::gmod::{
    cochain_complex, finite_cohomology, inflate, power_map, CochainComplex, CochainModel, DiscreteGModule,
};
use crate::groups::ProfiniteTower;
use crate::towers::{
    h_cont, tower_lim, Assembled, ComplexTower, GroupTower, Lim1Status, LimValue, MlStatus, ModuleTower, ProGroup,
    TowerRule,
};

/// A bounded chain complex `X_low ← X_{low+1} ← ... ← X_high` of discrete modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GChainComplex {
    low: i64,
    modules: Vec<DiscreteGModule>,
    /// `boundaries[k]: X_{low+k+1} → X_{low+k}`.
    boundaries: Vec<Homomorphism>,
}

impl GChainComplex {
    pub fn new(low: i64, modules: Vec<DiscreteGModule>, boundaries: Vec<Homomorphism>) -> Result<Self, Error> {
        if modules.is_empty() || boundaries.len() + 1 != modules.len() {
            return Err(Error::Dimension("a complex with k terms needs k-1 boundary maps".into()));
        }
        let level = modules[0].level();
        if modules.iter().any(|m| m.level() != level || m.group_order() != modules[0].group_order()) {
            return Err(Error::Level("all terms of a complex must live at one level".into()));
        }
        for (k, d) in boundaries.iter().enumerate() {
            if d.source() != modules[k + 1].underlying() || d.target() != modules[k].underlying() {
                return Err(Error::Dimension(alloc::format!(
                    "boundary out of degree {} has the wrong shape",
                    low + k as i64 + 1
                )));
            }
            if !modules[k + 1].is_equivariant(&modules[k], d) {
                return Err(Error::InvalidAction(alloc::format!(
                    "boundary out of degree {} is not equivariant",
                    low + k as i64 + 1
                )));
            }
        }
        for k in 1..boundaries.len() {
            if !boundaries[k].then(&boundaries[k - 1])?.is_zero() {
                return Err(Error::CompositionNonzero);
            }
        }
        Ok(GChainComplex { low, modules, boundaries })
    }

    /// A single module in degree `t`.
    pub fn concentrated(m: DiscreteGModule, t: i64) -> GChainComplex {
        GChainComplex { low: t, modules: vec![m], boundaries: Vec::new() }
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn high(&self) -> i64 {
        self.low + self.modules.len() as i64 - 1
    }

    pub fn level(&self) -> usize {
        self.modules[0].level()
    }

    pub fn modules(&self) -> &[DiscreteGModule] {
        &self.modules
    }

    pub fn boundaries(&self) -> &[Homomorphism] {
        &self.boundaries
    }

    pub fn module(&self, t: i64) -> Option<&DiscreteGModule> {
        if t < self.low {
            return None;
        }
        self.modules.get((t - self.low) as usize)
    }

    /// `∂_t: X_t → X_{t-1}`.
    pub fn boundary(&self, t: i64) -> Option<&Homomorphism> {
        if t <= self.low {
            return None;
        }
        self.boundaries.get((t - self.low - 1) as usize)
    }

    pub fn inflate(&self, g: &ProfiniteTower, depth: usize) -> Result<GChainComplex, Error> {
        let modules = self.modules.iter().map(|m| inflate(m, g, depth)).collect::<Result<Vec<_>, _>>()?;
        Ok(GChainComplex { low: self.low, modules, boundaries: self.boundaries.clone() })
    }

    /// `H_t` of the `k`-fold product of the complex.
    fn power_homology(&self, t: i64, k: usize) -> Result<Homology, Error> {
        let d_in = self.boundary(t + 1);
        let d_out = self.boundary(t);
        let single = match (d_in, d_out) {
            (None, None) => {
                let middle = self.module(t).map(|m| m.underlying().clone()).unwrap_or_else(FgAbGroup::zero);
                homology_at(None, Some(&Homomorphism::zero(&middle, &FgAbGroup::zero())))
            }
            _ => homology_at(d_in, d_out),
        }?;
        Ok(if k == 1 { single } else { single.power(k) })
    }

    /// `H_t` with the induced action.
    pub fn homology_module(
        &self,
        q: &crate::groups::FiniteGroup,
        t: i64,
    ) -> Result<(DiscreteGModule, Homology), Error> {
        let h = self.power_homology(t, 1)?;
        let action = match self.module(t) {
            Some(m) => m.actions().iter().map(|a| h.induced(a.matrix(), &h)).collect::<Result<Vec<_>, _>>()?,
            None => vec![Homomorphism::identity(h.group()); q.order()],
        };
        Ok((DiscreteGModule::new(q, self.level(), h.group().clone(), action)?, h))
    }
}

/// `π_t(X) = H_t(X)`; zero outside the degree range.
pub fn homotopy(x: &GChainComplex, t: i64) -> Result<FgAbGroup, Error> {
    Ok(x.power_homology(t, 1)?.group().clone())
}

/// A tower of bounded complexes with equivariant chain-map transitions.
#[derive(Clone, Debug)]
pub struct GComplexTower {
    complexes: Vec<GChainComplex>,
    /// `maps[i][k]`: component in degree `low + k` of `X_{i+1} → X_i`.
    maps: Vec<Vec<Homomorphism>>,
    rule: TowerRule,
}

impl GComplexTower {
    /// All complexes must share their degree range.
    pub fn new(
        g: &ProfiniteTower,
        complexes: Vec<GChainComplex>,
        maps: Vec<Vec<Homomorphism>>,
        rule: TowerRule,
    ) -> Result<GComplexTower, Error> {
        if complexes.is_empty() || maps.len() + 1 != complexes.len() {
            return Err(Error::Dimension("a tower with k levels needs k-1 chain maps".into()));
        }
        let (low, high) = (complexes[0].low(), complexes[0].high());
        if complexes.iter().any(|c| c.low() != low || c.high() != high) {
            return Err(Error::Dimension("complexes in a tower must share their degree range".into()));
        }
        let level = complexes.iter().map(|c| c.level()).max().unwrap();
        if level > g.top() {
            return Err(Error::Level(alloc::format!("level {} is not in the profinite tower", level)));
        }
        let inflated = complexes.iter().map(|c| c.inflate(g, level)).collect::<Result<Vec<_>, _>>()?;
        for (i, f) in maps.iter().enumerate() {
            if f.len() != complexes[0].modules.len() {
                return Err(Error::Dimension(alloc::format!("chain map {} has the wrong number of components", i)));
            }
            for (k, fk) in f.iter().enumerate() {
                let t = low + k as i64;
                let (src, dst) = (inflated[i + 1].module(t).unwrap(), inflated[i].module(t).unwrap());
                if fk.source() != src.underlying() || fk.target() != dst.underlying() {
                    return Err(Error::Dimension(alloc::format!(
                        "chain map {} has the wrong shape in degree {}",
                        i,
                        t
                    )));
                }
                if !src.is_equivariant(dst, fk) {
                    return Err(Error::InvalidAction(alloc::format!(
                        "chain map {} is not equivariant in degree {}",
                        i,
                        t
                    )));
                }
                if k > 0 {
                    let a = fk.then(complexes[i].boundary(t).unwrap())?;
                    let b = complexes[i + 1].boundary(t).unwrap().then(&f[k - 1])?;
                    if a != b {
                        return Err(Error::Invalid(alloc::format!(
                            "chain map {} does not commute with the boundary out of degree {}",
                            i,
                            t
                        )));
                    }
                }
            }
        }
        if let TowerRule::Periodic(p) = rule {
            let h = complexes.len() - 1;
            if p == 0 || p > h || complexes[h] != complexes[h - p] {
                return Err(Error::Invalid(alloc::format!(
                    "level {} does not repeat level {}",
                    h,
                    h.saturating_sub(p)
                )));
            }
        }
        Ok(GComplexTower { complexes, maps, rule })
    }

    /// The constant tower on `x` with identity transitions.
    pub fn constant(g: &ProfiniteTower, x: GChainComplex) -> Result<GComplexTower, Error> {
        let ids = x.modules.iter().map(|m| Homomorphism::identity(m.underlying())).collect();
        GComplexTower::new(g, vec![x.clone(), x], vec![ids], TowerRule::Periodic(1))
    }

    pub fn complexes(&self) -> &[GChainComplex] {
        &self.complexes
    }

    pub fn rule(&self) -> TowerRule {
        self.rule
    }

    pub fn low(&self) -> i64 {
        self.complexes[0].low()
    }

    pub fn high(&self) -> i64 {
        self.complexes[0].high()
    }

    pub fn max_level(&self) -> usize {
        self.complexes.iter().map(|c| c.level()).max().unwrap()
    }

    fn component(&self, i: usize, t: i64) -> Option<&Homomorphism> {
        if t < self.low() || t > self.high() {
            return None;
        }
        Some(&self.maps[i][(t - self.low()) as usize])
    }

    /// `{H_t(X_i)}` as abelian groups.
    pub fn homotopy_tower(&self, t: i64) -> Result<GroupTower, Error> {
        let hs = self.complexes.iter().map(|c| c.power_homology(t, 1)).collect::<Result<Vec<_>, _>>()?;
        let maps = (0..self.maps.len())
            .map(|i| match self.component(i, t) {
                Some(f) => hs[i + 1].induced(f.matrix(), &hs[i]),
                None => Ok(Homomorphism::zero(hs[i + 1].group(), hs[i].group())),
            })
            .collect::<Result<Vec<_>, _>>()?;
        GroupTower::new(hs.iter().map(|h| h.group().clone()).collect(), maps, self.rule)
    }

    /// `{H_t(X_i)}` as discrete modules.
    pub fn homotopy_modules(&self, g: &ProfiniteTower, t: i64) -> Result<ModuleTower, Error> {
        let hm =
            self.complexes.iter().map(|c| c.homology_module(g.level(c.level()), t)).collect::<Result<Vec<_>, _>>()?;
        let maps = (0..self.maps.len())
            .map(|i| match self.component(i, t) {
                Some(f) => hm[i + 1].1.induced(f.matrix(), &hm[i].1),
                None => Ok(Homomorphism::zero(hm[i + 1].1.group(), hm[i].1.group())),
            })
            .collect::<Result<Vec<_>, _>>()?;
        ModuleTower::new(g, hm.into_iter().map(|(m, _)| m).collect(), maps, self.rule)
    }
}

/// `H_t(holim_i X_i)` as an extension of `lim H_t` by `lim¹ H_{t+1}`.
#[derive(Clone, Debug)]
pub struct HolimDegree {
    pub t: i64,
    pub value: Assembled,
}

/// Milnor decomposition of the homotopy limit, degree by degree, for
/// `t ∈ [low - 1, high]`.
pub fn holim(x: &GComplexTower, horizon: usize) -> Result<Vec<HolimDegree>, Error> {
    let mut out = Vec::new();
    for t in x.low() - 1..=x.high() {
        let quotient = tower_lim(&x.homotopy_tower(t)?, horizon);
        let sub = tower_lim(&x.homotopy_tower(t + 1)?, horizon);
        if quotient.lim == LimValue::Undetermined || sub.lim1 == Lim1Status::Undetermined {
            return Err(Error::DecompositionNotValid(alloc::format!(
                "homotopy towers in degrees {} and {} lack Mittag-Leffler certificates",
                t,
                t + 1
            )));
        }
        out.push(HolimDegree { t, value: Assembled::new(sub, quotient) });
    }
    Ok(out)
}

/// One constituent of an `E₂` cell.
#[derive(Clone, Debug)]
pub enum Piece {
    /// Contributes `lim` of the tower.
    Lim { label: String, tower: ProGroup },
    /// Contributes a `lim¹` term with the given status.
    Lim1 { label: String, status: Lim1Status, tower: Option<ProGroup> },
    /// The piece could not be computed.
    Failed { label: String, reason: String },
}

impl Piece {
    pub fn label(&self) -> &str {
        match self {
            Piece::Lim { label, .. } | Piece::Lim1 { label, .. } | Piece::Failed { label, .. } => label,
        }
    }

    fn state(&self) -> PieceState {
        match self {
            Piece::Lim { tower, .. } => match &tower.lim {
                LimValue::Group(g) if g.is_trivial() => PieceState::Zero,
                LimValue::Group(g) => PieceState::Value(CellValue::Group(g.clone())),
                LimValue::ProObject => {
                    PieceState::Value(CellValue::ProObject(tower.stable.clone().unwrap_or_default()))
                }
                LimValue::Undetermined => PieceState::Unknown,
            },
            Piece::Lim1 { status, .. } => match status {
                Lim1Status::Zero => PieceState::Zero,
                Lim1Status::Nonzero => PieceState::Value(CellValue::Lim1Nonzero),
                Lim1Status::Undetermined => PieceState::Unknown,
            },
            Piece::Failed { .. } => PieceState::Unknown,
        }
    }

    /// Description of the non-ML certificate behind a nonzero `lim¹`.
    pub fn witness(&self) -> Option<String> {
        match self {
            Piece::Lim1 { label, status: Lim1Status::Nonzero, tower } => {
                let detail = match tower.as_ref().map(|t| &t.ml) {
                    Some(MlStatus::NotMl(w)) => alloc::format!(
                        "; images of {} in level {} shrink forever under an injective non-surjective endomorphism of {}",
                        w.phi.source(),
                        w.base,
                        w.phi_on_stable.source()
                    ),
                    _ => String::new(),
                };
                Some(alloc::format!("{} is nonzero{}", label, detail))
            }
            _ => None,
        }
    }
}

enum PieceState {
    Zero,
    Value(CellValue),
    Unknown,
}

/// The value of a cell, or why it is not determined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CellValue {
    Group(FgAbGroup),
    /// A limit that is not finitely generated, given by its stable images.
    ProObject(Vec<FgAbGroup>),
    /// A nonzero `lim¹` term (uncountable, not finitely generated).
    Lim1Nonzero,
    Flagged(String),
}

impl CellValue {
    pub fn is_flagged(&self) -> bool {
        matches!(self, CellValue::Flagged(_))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, CellValue::Group(g) if g.is_trivial())
    }
}

impl fmt::Display for CellValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CellValue::Group(g) => write!(f, "{}", g),
            CellValue::ProObject(s) => {
                f.write_str("lim{")?;
                for (i, g) in s.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" <- ")?;
                    }
                    write!(f, "{}", g)?;
                }
                f.write_str(if s.is_empty() { "}" } else { " <- ...}" })
            }
            CellValue::Lim1Nonzero => f.write_str("lim¹ ≠ 0"),
            CellValue::Flagged(why) => write!(f, "flagged ({})", why),
        }
    }
}

#[derive(Clone, Debug)]
pub struct E2Cell {
    pub s: usize,
    pub t: i64,
    pub value: CellValue,
    pub pieces: Vec<Piece>,
}

impl E2Cell {
    fn from_pieces(s: usize, t: i64, pieces: Vec<Piece>) -> E2Cell {
        let mut nonzero = Vec::new();
        let mut unknown = Vec::new();
        for p in &pieces {
            match p.state() {
                PieceState::Zero => {}
                PieceState::Value(v) => nonzero.push((p.label(), v)),
                PieceState::Unknown => unknown.push(p.label()),
            }
        }
        let value = if !unknown.is_empty() {
            CellValue::Flagged(alloc::format!("undetermined: {}", unknown.join(", ")))
        } else if nonzero.len() > 1 {
            let labels: Vec<&str> = nonzero.iter().map(|(l, _)| *l).collect();
            CellValue::Flagged(alloc::format!("extension of nonzero pieces: {}", labels.join(", ")))
        } else if let Some((_, v)) = nonzero.pop() {
            v
        } else {
            CellValue::Group(FgAbGroup::zero())
        };
        E2Cell { s, t, value, pieces }
    }

    pub fn witness(&self) -> Option<String> {
        self.pieces.iter().find_map(|p| p.witness())
    }
}

/// Cells `0 ≤ s ≤ s_max`, `t_min ≤ t ≤ t_max`.
#[derive(Clone, Debug)]
pub struct E2Page {
    pub s_max: usize,
    pub t_min: i64,
    pub t_max: i64,
    pub cells: Vec<E2Cell>,
}

impl E2Page {
    pub fn get(&self, s: usize, t: i64) -> Option<&E2Cell> {
        self.cells.iter().find(|c| c.s == s && c.t == t)
    }
}

fn check_ranges(g: &ProfiniteTower, x: &GComplexTower, t_range: (i64, i64), depth: usize) -> Result<(), Error> {
    if t_range.0 > t_range.1 {
        return Err(Error::Invalid("empty t range".into()));
    }
    if depth > g.top() || x.max_level() > depth {
        return Err(Error::Level(alloc::format!(
            "depth {} must lie between the complex levels and the tower top",
            depth
        )));
    }
    Ok(())
}

/// The canonical complex `n ↦ π_t((Γ^{n+1} X_i)^Q)` for each level `i`, with
/// transitions, as a tower of cochain complexes.
fn canonical_tower(
    g: &ProfiniteTower,
    x: &GComplexTower,
    t: i64,
    n_max: usize,
    depth: usize,
) -> Result<ComplexTower, Error> {
    let q = g.level(depth);
    let qn = q.order();
    let mut complexes = Vec::new();
    let mut homologies: Vec<Vec<Homology>> = Vec::new();
    for c in &x.complexes {
        let c = c.inflate(g, depth)?;
        let hs = (0..=n_max).map(|n| c.power_homology(t, qn.pow(n as u32))).collect::<Result<Vec<_>, _>>()?;
        let diffs = match c.module(t) {
            Some(m) => {
                let cc = cochain_complex(CochainModel::GammaFixed, q, m, n_max)?;
                (0..n_max)
                    .map(|n| hs[n].induced(cc.differential(n as i64).unwrap().matrix(), &hs[n + 1]))
                    .collect::<Result<Vec<_>, _>>()?
            }
            None => (0..n_max).map(|n| Homomorphism::zero(hs[n].group(), hs[n + 1].group())).collect(),
        };
        complexes.push(CochainComplex::new(0, hs.iter().map(|h| h.group().clone()).collect(), diffs)?);
        homologies.push(hs);
    }
    let maps = (0..x.maps.len())
        .map(|i| {
            (0..=n_max)
                .map(|n| match x.component(i, t) {
                    Some(f) => homologies[i + 1][n].induced(power_map(f, qn.pow(n as u32)).matrix(), &homologies[i][n]),
                    None => Ok(Homomorphism::zero(homologies[i + 1][n].group(), homologies[i][n].group())),
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    ComplexTower::new(complexes, maps, x.rule)
}

/// `E₂^{s,t} = π^s π_t(holim_i (Γ^•X_i)^Q)`: for each `t`, the `lim` layer is
/// the cohomology of the limit of the canonical complexes and the `lim¹` layer
/// comes from `lim¹_i π_{t+1}`.
pub fn descent_e2(
    g: &ProfiniteTower,
    x: &GComplexTower,
    s_max: usize,
    t_range: (i64, i64),
    n_max: usize,
    depth: usize,
    horizon: usize,
) -> Result<E2Page, Error> {
    check_ranges(g, x, t_range, depth)?;
    if n_max < s_max + 1 {
        return Err(Error::Invalid(alloc::format!("n_max = {} must be at least s_max + 1 = {}", n_max, s_max + 1)));
    }
    let trivial_group = g.level(depth).is_trivial();
    let mut cells = Vec::new();
    for t in t_range.0..=t_range.1 {
        let canonical = canonical_tower(g, x, t, n_max, depth)?;
        // the canonical complex of lim¹ π_{t+1} is built from finite products
        // of copies of one tower, so its terms share that tower's lim¹ status
        let above = tower_lim(&x.homotopy_tower(t + 1)?, horizon);
        for s in 0..=s_max {
            let mut pieces = Vec::new();
            match canonical.limit_cohomology(s as i64, horizon) {
                Ok(a) => {
                    pieces.push(Piece::Lim1 {
                        label: alloc::format!("lim¹ H^{} of the π_{} complexes", s as i64 - 1, t),
                        status: a.sub.lim1,
                        tower: Some(a.sub),
                    });
                    pieces.push(Piece::Lim {
                        label: alloc::format!("lim H^{} of the π_{} complexes", s, t),
                        tower: a.quotient,
                    });
                }
                Err(e) => pieces.push(Piece::Failed {
                    label: alloc::format!("H^{} of the limit π_{} complex", s, t),
                    reason: alloc::format!("{}", e),
                }),
            }
            let status = match (above.lim1, trivial_group) {
                (Lim1Status::Zero, _) => Lim1Status::Zero,
                // the cosimplicial object of a trivial group is constant
                (st, true) => {
                    if s == 0 {
                        st
                    } else {
                        Lim1Status::Zero
                    }
                }
                (_, false) => Lim1Status::Undetermined,
            };
            pieces.push(Piece::Lim1 {
                label: alloc::format!("π^{} of lim¹ π_{}", s, t + 1),
                status,
                tower: Some(above.clone()),
            });
            cells.push(E2Cell::from_pieces(s, t, pieces));
        }
    }
    Ok(E2Page { s_max, t_min: t_range.0, t_max: t_range.1, cells })
}

/// `E₂^{s,t} = H^s_cont(G; {π_t X_i})`.
pub fn jannsen_e2(
    g: &ProfiniteTower,
    x: &GComplexTower,
    s_max: usize,
    t_range: (i64, i64),
    depth: usize,
    horizon: usize,
) -> Result<E2Page, Error> {
    check_ranges(g, x, t_range, depth)?;
    let mut cells = Vec::new();
    for t in t_range.0..=t_range.1 {
        let mt = x.homotopy_modules(g, t)?;
        for s in 0..=s_max {
            let pieces = match h_cont(g, &mt, s, depth, horizon) {
                Ok(a) => vec![
                    Piece::Lim1 {
                        label: alloc::format!("lim¹ H^{}_c(π_{})", s as i64 - 1, t),
                        status: a.sub.lim1,
                        tower: Some(a.sub),
                    },
                    Piece::Lim { label: alloc::format!("lim H^{}_c(π_{})", s, t), tower: a.quotient },
                ],
                Err(e) => vec![Piece::Failed {
                    label: alloc::format!("H^{}_cont(π_{})", s, t),
                    reason: alloc::format!("{}", e),
                }],
            };
            cells.push(E2Cell::from_pieces(s, t, pieces));
        }
    }
    Ok(E2Page { s_max, t_min: t_range.0, t_max: t_range.1, cells })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CellVerdict {
    Equal,
    /// The cells differ; the string locates the `lim¹` contribution.
    Differs(String),
    Undetermined,
}

#[derive(Clone, Debug)]
pub struct CellComparison {
    pub s: usize,
    pub t: i64,
    pub verdict: CellVerdict,
    pub descent: E2Cell,
    pub jannsen: E2Cell,
}

#[derive(Clone, Debug)]
pub struct E2Comparison {
    /// Every homotopy tower in range (and one above) is certified ML.
    pub all_ml: bool,
    pub cells: Vec<CellComparison>,
}

impl E2Comparison {
    /// Cells reported different although every homotopy tower is ML.
    pub fn violations(&self) -> Vec<(usize, i64)> {
        if !self.all_ml {
            return Vec::new();
        }
        self.cells.iter().filter(|c| matches!(c.verdict, CellVerdict::Differs(_))).map(|c| (c.s, c.t)).collect()
    }
}

/// Runs both `E₂` computations and compares them cell by cell.
#[allow(clippy::too_many_arguments)]
pub fn compare_e2(
    g: &ProfiniteTower,
    x: &GComplexTower,
    s_max: usize,
    t_range: (i64, i64),
    n_max: usize,
    depth: usize,
    horizon: usize,
) -> Result<E2Comparison, Error> {
    let d = descent_e2(g, x, s_max, t_range, n_max, depth, horizon)?;
    let j = jannsen_e2(g, x, s_max, t_range, depth, horizon)?;
    let mut all_ml = true;
    for t in t_range.0..=t_range.1 + 1 {
        all_ml &= crate::towers::ml_check(&x.homotopy_tower(t)?, horizon).is_certified();
    }
    let cells = d
        .cells
        .into_iter()
        .zip(j.cells)
        .map(|(dc, jc)| {
            let verdict = match (&dc.value, &jc.value) {
                (a, b) if a.is_flagged() || b.is_flagged() => CellVerdict::Undetermined,
                (a, b) if a == b => CellVerdict::Equal,
                _ => CellVerdict::Differs(
                    dc.witness()
                        .map(|w| alloc::format!("descent: {}", w))
                        .or_else(|| jc.witness().map(|w| alloc::format!("continuous: {}", w)))
                        .unwrap_or_else(|| alloc::format!("{} vs {}", dc.value, jc.value)),
                ),
            };
            CellComparison { s: dc.s, t: dc.t, verdict, descent: dc, jannsen: jc }
        })
        .collect();
    Ok(E2Comparison { all_ml, cells })
}

#[derive(Clone, Debug)]
pub struct CounterexampleRow {
    pub s: usize,
    pub value: Assembled,
    pub expected: String,
    /// `None` when a certificate is undetermined.
    pub holds: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct CounterexampleReport {
    pub lim1_of_tower: Lim1Status,
    pub rows: Vec<CounterexampleRow>,
}

impl CounterexampleReport {
    pub fn all_hold(&self) -> bool {
        self.rows.iter().all(|r| r.holds == Some(true))
    }
}

/// `H^s_cont(G; {Γ M_i})` for `s ≤ s_max`, checked against: the limit of the
/// tower at `s = 0`, its `lim¹` at `s = 1`, and zero for `s ≥ 2`.
pub fn gamma_tower_counterexample(
    g: &ProfiniteTower,
    m: &ModuleTower,
    s_max: usize,
    depth: usize,
    horizon: usize,
) -> Result<CounterexampleReport, Error> {
    if s_max < 2 {
        return Err(Error::Invalid("s_max must be at least 2".into()));
    }
    let gt = m.gamma(g, depth)?;
    let base = tower_lim(&m.groups(), horizon);
    let mut rows = Vec::new();
    for s in 0..=s_max {
        let value = h_cont(g, &gt, s, depth, horizon)?;
        let (expected, holds) = match s {
            0 => (
                alloc::format!("lim M_i = {}", lim_text(&base.lim)),
                value.quotient.same_lim(&base).map(|same| same && value.sub.lim1 == Lim1Status::Zero),
            ),
            1 => {
                let st = base.lim1;
                let holds = if st == Lim1Status::Undetermined || value.sub.lim1 == Lim1Status::Undetermined {
                    None
                } else {
                    Some(value.quotient.lim_is_zero() && value.sub.lim1 == st)
                };
                (alloc::format!("lim¹ M_i ({})", st), holds)
            }
            _ => {
                let holds = match value.note {
                    crate::towers::ExtensionNote::Undetermined => None,
                    _ => Some(value.is_zero()),
                };
                ("0".into(), holds)
            }
        };
        rows.push(CounterexampleRow { s, value, expected, holds });
    }
    Ok(CounterexampleReport { lim1_of_tower: base.lim1, rows })
}

fn lim_text(l: &LimValue) -> String {
    match l {
        LimValue::Group(g) => alloc::format!("{}", g),
        LimValue::ProObject => "pro-object".into(),
        LimValue::Undetermined => "undetermined".into(),
    }
}

/// `H^s(Q_depth; H_t(X))` for the constant-tower comparison.
pub fn constant_expectation(
    g: &ProfiniteTower,
    x: &GChainComplex,
    s: usize,
    t: i64,
    depth: usize,
) -> Result<FgAbGroup, Error> {
    let q = g.level(depth);
    let (h, _) = x.inflate(g, depth)?.homology_module(q, t)?;
    finite_cohomology(q, &h, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;

    fn z(q: &crate::groups::FiniteGroup, level: usize) -> DiscreteGModule {
        DiscreteGModule::trivial(q, level, FgAbGroup::free(1))
    }

    fn times_two_tower(g: &ProfiniteTower) -> GComplexTower {
        let x = GChainComplex::concentrated(z(g.level(0), 0), 0);
        GComplexTower::new(
            g,
            vec![x.clone(), x],
            vec![vec![Homomorphism::scalar(&FgAbGroup::free(1), 2)]],
            TowerRule::Periodic(1),
        )
        .unwrap()
    }

    /// `X_i = [Z --×2^{i+1}--> Z]` in degrees 1, 0 with transitions (×2, id).
    fn two_adic_tower(g: &ProfiniteTower, levels: usize) -> GComplexTower {
        let q = g.level(0);
        let zz = FgAbGroup::free(1);
        let cx = (0..levels)
            .map(|i| {
                GChainComplex::new(0, vec![z(q, 0), z(q, 0)], vec![Homomorphism::scalar(&zz, 1 << (i + 1))]).unwrap()
            })
            .collect();
        let maps = (1..levels).map(|_| vec![Homomorphism::identity(&zz), Homomorphism::scalar(&zz, 2)]).collect();
        GComplexTower::new(g, cx, maps, TowerRule::Explicit).unwrap()
    }

    #[test]
    fn homotopy_of_small_complexes() {
        let q = crate::groups::FiniteGroup::trivial();
        let zz = FgAbGroup::free(1);
        let x = GChainComplex::new(0, vec![z(&q, 0), z(&q, 0)], vec![Homomorphism::scalar(&zz, 2)]).unwrap();
        assert_eq!(homotopy(&x, 0).unwrap(), FgAbGroup::cyclic(2));
        assert!(homotopy(&x, 1).unwrap().is_trivial());
        assert!(homotopy(&x, 5).unwrap().is_trivial());
        assert_eq!(homotopy(&GChainComplex::concentrated(z(&q, 0), 0), 0).unwrap(), zz);
        let bad = GChainComplex::new(
            0,
            vec![z(&q, 0), z(&q, 0), z(&q, 0)],
            vec![Homomorphism::identity(&zz), Homomorphism::identity(&zz)],
        );
        assert_eq!(bad.unwrap_err(), Error::CompositionNonzero);
    }

    #[test]
    fn holim_of_times_two() {
        let g = ProfiniteTower::trivial();
        let h = holim(&times_two_tower(&g), 12).unwrap();
        let at = |t: i64| &h.iter().find(|d| d.t == t).unwrap().value;
        assert!(at(0).quotient.lim_is_zero());
        assert_eq!(at(0).sub.lim1, Lim1Status::Zero);
        assert_eq!(at(-1).sub.lim1, Lim1Status::Nonzero);
    }

    #[test]
    fn holim_of_two_adic_tower() {
        let g = ProfiniteTower::trivial();
        let h = holim(&two_adic_tower(&g, 4), 12).unwrap();
        let h0 = &h.iter().find(|d| d.t == 0).unwrap().value;
        assert_eq!(h0.quotient.lim, LimValue::ProObject);
        assert_eq!(h0.quotient.levels[2], FgAbGroup::cyclic(8));
        assert_eq!(h0.sub.lim1, Lim1Status::Zero);
    }

    #[test]
    fn trivial_group_times_two() {
        let g = ProfiniteTower::trivial();
        let x = times_two_tower(&g);
        let d = descent_e2(&g, &x, 2, (-1, 0), 3, 0, 12).unwrap();
        assert!(d.get(0, 0).unwrap().value.is_zero());
        assert_eq!(d.get(0, -1).unwrap().value, CellValue::Lim1Nonzero);
        for s in 1..=2 {
            for t in -1..=0 {
                assert!(d.get(s, t).unwrap().value.is_zero(), "({}, {})", s, t);
            }
        }
        let j = jannsen_e2(&g, &x, 2, (-1, 0), 0, 12).unwrap();
        assert!(j.get(0, -1).unwrap().value.is_zero());
        assert_eq!(j.get(1, 0).unwrap().value, CellValue::Lim1Nonzero);
        let c = compare_e2(&g, &x, 2, (-1, 0), 3, 0, 12).unwrap();
        assert!(!c.all_ml);
        let differs: Vec<_> =
            c.cells.iter().filter(|c| matches!(c.verdict, CellVerdict::Differs(_))).map(|c| (c.s, c.t)).collect();
        assert!(differs.contains(&(0, -1)));
    }

    #[test]
    fn trivial_group_row_zero_is_holim() {
        let g = ProfiniteTower::trivial();
        let x = two_adic_tower(&g, 3);
        let d = descent_e2(&g, &x, 1, (-1, 1), 2, 0, 12).unwrap();
        for hd in holim(&x, 12).unwrap() {
            let cell = d.get(0, hd.t).unwrap();
            let expected = E2Cell::from_pieces(
                0,
                hd.t,
                vec![
                    Piece::Lim1 { label: "sub".into(), status: hd.value.sub.lim1, tower: None },
                    Piece::Lim { label: "quotient".into(), tower: hd.value.quotient },
                ],
            );
            assert_eq!(cell.value, expected.value, "t = {}", hd.t);
        }
    }

    #[test]
    fn finite_towers_agree_over_two_adic_group() {
        let g = ProfiniteTower::p_adic(2, 1).unwrap();
        let q = g.level(1);
        let zz = FgAbGroup::free(1);
        let cx: Vec<GChainComplex> = (0..3)
            .map(|i| {
                GChainComplex::new(0, vec![z(q, 1), z(q, 1)], vec![Homomorphism::scalar(&zz, 1 << (i + 1))]).unwrap()
            })
            .collect();
        let maps = (1..3).map(|_| vec![Homomorphism::identity(&zz), Homomorphism::scalar(&zz, 2)]).collect();
        let x = GComplexTower::new(&g, cx, maps, TowerRule::Explicit).unwrap();
        let c = compare_e2(&g, &x, 1, (0, 0), 2, 1, 12).unwrap();
        assert!(c.all_ml);
        for cell in &c.cells {
            assert_eq!(cell.verdict, CellVerdict::Equal, "({}, {})", cell.s, cell.t);
        }
    }

    #[test]
    fn constant_tower_collapses() {
        let g = ProfiniteTower::p_adic(2, 1).unwrap();
        let q = g.level(1);
        let sign = DiscreteGModule::from_matrices(
            q,
            1,
            FgAbGroup::free(1),
            &[Matrix::identity(1), Matrix::identity(1).scale(&crate::int::Int::from(-1))],
        )
        .unwrap();
        let x = GChainComplex::new(
            0,
            vec![sign.clone(), sign],
            vec![Homomorphism::zero(&FgAbGroup::free(1), &FgAbGroup::free(1))],
        )
        .unwrap();
        let t = GComplexTower::constant(&g, x.clone()).unwrap();
        let d = descent_e2(&g, &t, 2, (0, 1), 3, 1, 12).unwrap();
        for cell in &d.cells {
            let expected = constant_expectation(&g, &x, cell.s, cell.t, 1).unwrap();
            assert_eq!(cell.value, CellValue::Group(expected), "({}, {})", cell.s, cell.t);
        }
    }

    #[test]
    fn gamma_counterexample() {
        let g = ProfiniteTower::p_adic(2, 2).unwrap();
        let q = g.level(2);
        let m = ModuleTower::constant(&g, z(q, 2), Homomorphism::scalar(&FgAbGroup::free(1), 2)).unwrap();
        let r = gamma_tower_counterexample(&g, &m, 2, 2, 12).unwrap();
        assert_eq!(r.lim1_of_tower, Lim1Status::Nonzero);
        assert!(r.all_hold(), "{:?}", r.rows.iter().map(|r| r.holds).collect::<Vec<_>>());
        assert_eq!(r.rows[1].value.sub.lim1, Lim1Status::Nonzero);
    }
}

//! Problem files: named groups, towers, modules and requests in JSON.

use std::collections::BTreeMap;
use std::fmt;

use serde::Deserialize;

use prodesc_core::descent::{GChainComplex, GComplexTower};
use prodesc_core::gmod::DiscreteGModule;
use prodesc_core::groups::{cyclic, from_matrix_generators, product, FiniteGroup, GroupHom, ProfiniteTower};
use prodesc_core::towers::{ModuleTower, TowerRule};
use prodesc_core::{FgAbGroup, Homomorphism, Int, Matrix};

pub const SCHEMA: &str = "prodesc/1";

/// A problem that could not be read or resolved, with the offending location.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputError {
    pub location: String,
    pub message: String,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.location.is_empty() {
            f.write_str(&self.message)
        } else {
            write!(f, "{}: {}", self.location, self.message)
        }
    }
}

impl std::error::Error for InputError {}

fn err(location: impl Into<String>, message: impl fmt::Display) -> InputError {
    InputError { location: location.into(), message: message.to_string() }
}

type Rows = Vec<Vec<i64>>;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub schema: String,
    #[serde(default)]
    pub groups: BTreeMap<String, GroupDef>,
    #[serde(default)]
    pub towers: BTreeMap<String, TowerDef>,
    #[serde(default)]
    pub modules: BTreeMap<String, ModuleDef>,
    #[serde(default)]
    pub module_towers: BTreeMap<String, ModuleTowerDef>,
    #[serde(default)]
    pub complex_towers: BTreeMap<String, ComplexTowerDef>,
    #[serde(default)]
    pub requests: Vec<Request>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupDef {
    Trivial,
    Cyclic(usize),
    Product([String; 2]),
    /// Multiplication table with identity 0.
    Table(Vec<Vec<usize>>),
    /// The finite group generated by integer matrices.
    Matrices {
        generators: Vec<Rows>,
        #[serde(default = "default_max_order")]
        max_order: usize,
    },
}

fn default_max_order() -> usize {
    64
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum TowerDef {
    Trivial,
    /// A finite group as a one-level tower.
    Finite(String),
    PAdic {
        p: usize,
        top: usize,
    },
    /// `transitions[j]` maps level `j+1` onto level `j`, elementwise.
    Levels {
        levels: Vec<String>,
        transitions: Vec<Vec<usize>>,
    },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDef {
    pub tower: String,
    pub group_level: usize,
    #[serde(default)]
    pub rank: usize,
    #[serde(default)]
    pub torsion: Vec<i64>,
    /// Matrix of each group element, keyed by element index; the identity
    /// may be omitted, and an absent action is trivial.
    #[serde(default)]
    pub action: Option<BTreeMap<String, Rows>>,
}

#[derive(Clone, Copy, Debug, Default, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum RuleDef {
    #[default]
    Explicit,
    Periodic(usize),
}

impl From<RuleDef> for TowerRule {
    fn from(r: RuleDef) -> TowerRule {
        match r {
            RuleDef::Explicit => TowerRule::Explicit,
            RuleDef::Periodic(p) => TowerRule::Periodic(p),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleTowerDef {
    pub tower: String,
    pub modules: Vec<String>,
    /// `maps[i]`: level `i+1` → level `i`.
    pub maps: Vec<Rows>,
    #[serde(default)]
    pub rule: RuleDef,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDef {
    /// Lowest and highest chain degree.
    pub degrees: [i64; 2],
    pub modules: Vec<String>,
    /// `differentials[k]`: degree `low+k+1` → degree `low+k`.
    #[serde(default)]
    pub differentials: Vec<Rows>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexTowerDef {
    pub tower: String,
    pub complexes: Vec<ComplexDef>,
    /// `maps[i][k]`: degree `low+k` component of level `i+1` → level `i`.
    pub maps: Vec<Vec<Rows>>,
    #[serde(default)]
    pub rule: RuleDef,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Request {
    pub command: String,
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default)]
    pub tower: Option<String>,
    #[serde(default)]
    pub module: Option<String>,
    #[serde(default)]
    pub module_tower: Option<String>,
    #[serde(default)]
    pub complex_tower: Option<String>,
    #[serde(default)]
    pub model: Option<String>,
    #[serde(default)]
    pub s: Option<usize>,
    #[serde(default)]
    pub s_max: Option<usize>,
    #[serde(default)]
    pub t_min: Option<i64>,
    #[serde(default)]
    pub t_max: Option<i64>,
    #[serde(default)]
    pub n_max: Option<usize>,
    #[serde(default)]
    pub depth: Option<usize>,
    #[serde(default)]
    pub horizon: Option<usize>,
}

/// A module together with the name of the profinite tower it lives over.
#[derive(Clone, Debug)]
pub struct NamedModule {
    pub tower: String,
    pub module: DiscreteGModule,
}

#[derive(Clone, Debug)]
pub struct NamedModuleTower {
    pub tower: String,
    pub value: ModuleTower,
}

#[derive(Clone, Debug)]
pub struct NamedComplexTower {
    pub tower: String,
    pub value: GComplexTower,
}

/// A problem file with every name resolved and every object validated.
#[derive(Clone, Debug)]
pub struct Problem {
    pub groups: BTreeMap<String, FiniteGroup>,
    pub towers: BTreeMap<String, ProfiniteTower>,
    pub modules: BTreeMap<String, NamedModule>,
    pub module_towers: BTreeMap<String, NamedModuleTower>,
    pub complex_towers: BTreeMap<String, NamedComplexTower>,
    pub requests: Vec<Request>,
}

/// Parses JSON, reporting line, column and field path on schema errors.
pub fn parse(text: &str) -> Result<ProblemFile, InputError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let file: ProblemFile = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        err(
            alloc_location(&path, inner.line(), inner.column()),
            inner.to_string().split(" at line").next().unwrap_or_default(),
        )
    })?;
    if file.schema != SCHEMA {
        return Err(err("schema", format!("expected \"{}\", found \"{}\"", SCHEMA, file.schema)));
    }
    Ok(file)
}

fn alloc_location(path: &str, line: usize, column: usize) -> String {
    if path == "." || path.is_empty() {
        format!("line {} column {}", line, column)
    } else {
        format!("line {} column {} ({})", line, column, path)
    }
}

pub fn load(text: &str) -> Result<Problem, InputError> {
    resolve(&parse(text)?)
}

fn matrix(rows: &Rows, nrows: usize, ncols: usize, at: &str) -> Result<Matrix, InputError> {
    if rows.len() != nrows || rows.iter().any(|r| r.len() != ncols) {
        return Err(err(at, format!("expected a {}x{} matrix", nrows, ncols)));
    }
    let rows: Vec<Vec<Int>> = rows.iter().map(|r| r.iter().map(|&v| Int::from(v)).collect()).collect();
    Ok(if nrows == 0 { Matrix::zeros(0, ncols) } else { Matrix::from_rows(&rows) })
}

fn hom(rows: &Rows, src: &FgAbGroup, tgt: &FgAbGroup, at: &str) -> Result<Homomorphism, InputError> {
    let m = matrix(rows, tgt.ngens(), src.ngens(), at)?;
    Homomorphism::new(src.clone(), tgt.clone(), m).map_err(|e| err(at, e))
}

fn lookup<'a, T>(map: &'a BTreeMap<String, T>, name: &str, kind: &str, at: &str) -> Result<&'a T, InputError> {
    map.get(name).ok_or_else(|| err(at, format!("unknown {} \"{}\"", kind, name)))
}

fn resolve_group(name: &str, def: &GroupDef, done: &BTreeMap<String, FiniteGroup>) -> Result<FiniteGroup, InputError> {
    let at = format!("groups.{}", name);
    match def {
        GroupDef::Trivial => Ok(FiniteGroup::trivial()),
        GroupDef::Cyclic(n) => cyclic(*n).map_err(|e| err(&at, e)),
        GroupDef::Product([a, b]) => Ok(product(lookup(done, a, "group", &at)?, lookup(done, b, "group", &at)?)),
        GroupDef::Table(t) => FiniteGroup::from_table(t.clone()).map_err(|e| err(&at, e)),
        GroupDef::Matrices { generators, max_order } => {
            let n = generators.first().map_or(0, |g| g.len());
            let gens = generators
                .iter()
                .enumerate()
                .map(|(k, g)| matrix(g, n, n, &format!("{}.generators[{}]", at, k)))
                .collect::<Result<Vec<_>, _>>()?;
            from_matrix_generators(&gens, *max_order).map(|(g, _)| g).map_err(|e| err(&at, e))
        }
    }
}

/// Groups may refer to earlier groups; definitions are resolved until no progress is made.
fn resolve_groups(defs: &BTreeMap<String, GroupDef>) -> Result<BTreeMap<String, FiniteGroup>, InputError> {
    let mut done = BTreeMap::new();
    while done.len() < defs.len() {
        let before = done.len();
        for (name, def) in defs {
            if done.contains_key(name) {
                continue;
            }
            if let GroupDef::Product([a, b]) = def {
                if !done.contains_key(a) || !done.contains_key(b) {
                    continue;
                }
            }
            let g = resolve_group(name, def, &done)?;
            done.insert(name.clone(), g);
        }
        if done.len() == before {
            let (name, def) = defs.iter().find(|(n, _)| !done.contains_key(*n)).unwrap();
            resolve_group(name, def, &done)?;
            return Err(err(format!("groups.{}", name), "products refer to each other in a cycle"));
        }
    }
    Ok(done)
}

fn resolve_tower(
    name: &str,
    def: &TowerDef,
    groups: &BTreeMap<String, FiniteGroup>,
) -> Result<ProfiniteTower, InputError> {
    let at = format!("towers.{}", name);
    match def {
        TowerDef::Trivial => Ok(ProfiniteTower::trivial()),
        TowerDef::Finite(g) => Ok(ProfiniteTower::finite(lookup(groups, g, "group", &at)?.clone())),
        TowerDef::PAdic { p, top } => ProfiniteTower::p_adic(*p, *top).map_err(|e| err(&at, e)),
        TowerDef::Levels { levels, transitions } => {
            let levels =
                levels.iter().map(|g| lookup(groups, g, "group", &at).cloned()).collect::<Result<Vec<_>, _>>()?;
            if transitions.len() + 1 != levels.len() {
                return Err(err(
                    &at,
                    format!("{} levels need {} transitions", levels.len(), levels.len().saturating_sub(1)),
                ));
            }
            let maps = transitions
                .iter()
                .enumerate()
                .map(|(j, t)| {
                    GroupHom::new(levels[j + 1].clone(), levels[j].clone(), t.clone())
                        .map_err(|e| err(format!("{}.transitions[{}]", at, j), e))
                })
                .collect::<Result<Vec<_>, _>>()?;
            ProfiniteTower::new(levels, maps).map_err(|e| err(&at, e))
        }
    }
}

fn resolve_module(
    name: &str,
    def: &ModuleDef,
    towers: &BTreeMap<String, ProfiniteTower>,
) -> Result<NamedModule, InputError> {
    let at = format!("modules.{}", name);
    let g = lookup(towers, &def.tower, "tower", &at)?;
    if def.group_level > g.top() {
        return Err(err(&at, format!("level {} exceeds the tower's top level {}", def.group_level, g.top())));
    }
    let q = g.level(def.group_level);
    let a = FgAbGroup::new(def.rank, def.torsion.iter().map(|&t| Int::from(t)).collect()).map_err(|e| err(&at, e))?;
    let module = match &def.action {
        None => DiscreteGModule::trivial(q, def.group_level, a),
        Some(table) => {
            let mut mats: Vec<Option<Matrix>> = vec![None; q.order()];
            for (key, m) in table {
                let here = format!("{}.action.{}", at, key);
                let e: usize = key.parse().map_err(|_| err(&here, "element index must be a non-negative integer"))?;
                if e >= q.order() {
                    return Err(err(
                        &here,
                        format!("the group at level {} has only {} elements", def.group_level, q.order()),
                    ));
                }
                mats[e] = Some(matrix(m, a.ngens(), a.ngens(), &here)?);
            }
            if mats[0].is_none() {
                mats[0] = Some(Matrix::identity(a.ngens()));
            }
            if let Some(e) = mats.iter().position(|m| m.is_none()) {
                return Err(err(format!("{}.action", at), format!("no matrix for element {}", e)));
            }
            let mats: Vec<Matrix> = mats.into_iter().map(|m| m.unwrap()).collect();
            DiscreteGModule::from_matrices(q, def.group_level, a, &mats)
                .map_err(|e| err(format!("{}.action", at), e))?
        }
    };
    Ok(NamedModule { tower: def.tower.clone(), module })
}

fn module_of<'a>(
    modules: &'a BTreeMap<String, NamedModule>,
    name: &str,
    tower: &str,
    at: &str,
) -> Result<&'a DiscreteGModule, InputError> {
    let m = lookup(modules, name, "module", at)?;
    if m.tower != tower {
        return Err(err(at, format!("module \"{}\" lives over tower \"{}\", not \"{}\"", name, m.tower, tower)));
    }
    Ok(&m.module)
}

fn resolve_module_tower(
    name: &str,
    def: &ModuleTowerDef,
    towers: &BTreeMap<String, ProfiniteTower>,
    modules: &BTreeMap<String, NamedModule>,
) -> Result<NamedModuleTower, InputError> {
    let at = format!("module_towers.{}", name);
    let g = lookup(towers, &def.tower, "tower", &at)?;
    let ms =
        def.modules.iter().map(|m| module_of(modules, m, &def.tower, &at).cloned()).collect::<Result<Vec<_>, _>>()?;
    if def.maps.len() + 1 != ms.len() {
        return Err(err(&at, format!("{} modules need {} maps", ms.len(), ms.len().saturating_sub(1))));
    }
    let maps = def
        .maps
        .iter()
        .enumerate()
        .map(|(i, m)| hom(m, ms[i + 1].underlying(), ms[i].underlying(), &format!("{}.maps[{}]", at, i)))
        .collect::<Result<Vec<_>, _>>()?;
    let value = ModuleTower::new(g, ms, maps, def.rule.into()).map_err(|e| err(&at, e))?;
    Ok(NamedModuleTower { tower: def.tower.clone(), value })
}

fn resolve_complex(
    def: &ComplexDef,
    tower: &str,
    modules: &BTreeMap<String, NamedModule>,
    at: &str,
) -> Result<GChainComplex, InputError> {
    let [low, high] = def.degrees;
    if high < low || (high - low + 1) as usize != def.modules.len() {
        return Err(err(at, format!("degrees {}..{} need {} modules", low, high, (high - low + 1).max(0))));
    }
    let ms = def.modules.iter().map(|m| module_of(modules, m, tower, at).cloned()).collect::<Result<Vec<_>, _>>()?;
    if def.differentials.len() + 1 != ms.len() {
        return Err(err(at, format!("{} modules need {} differentials", ms.len(), ms.len() - 1)));
    }
    let ds = def
        .differentials
        .iter()
        .enumerate()
        .map(|(k, d)| hom(d, ms[k + 1].underlying(), ms[k].underlying(), &format!("{}.differentials[{}]", at, k)))
        .collect::<Result<Vec<_>, _>>()?;
    GChainComplex::new(low, ms, ds).map_err(|e| err(at, e))
}

fn resolve_complex_tower(
    name: &str,
    def: &ComplexTowerDef,
    towers: &BTreeMap<String, ProfiniteTower>,
    modules: &BTreeMap<String, NamedModule>,
) -> Result<NamedComplexTower, InputError> {
    let at = format!("complex_towers.{}", name);
    let g = lookup(towers, &def.tower, "tower", &at)?;
    let cs = def
        .complexes
        .iter()
        .enumerate()
        .map(|(i, c)| resolve_complex(c, &def.tower, modules, &format!("{}.complexes[{}]", at, i)))
        .collect::<Result<Vec<_>, _>>()?;
    if def.maps.len() + 1 != cs.len() {
        return Err(err(&at, format!("{} complexes need {} chain maps", cs.len(), cs.len().saturating_sub(1))));
    }
    let mut maps = Vec::new();
    for (i, f) in def.maps.iter().enumerate() {
        let (src, dst) = (&cs[i + 1], &cs[i]);
        if f.len() != src.modules().len() || src.low() != dst.low() || src.high() != dst.high() {
            return Err(err(format!("{}.maps[{}]", at, i), "chain map does not match the complexes' degrees"));
        }
        maps.push(
            f.iter()
                .enumerate()
                .map(|(k, m)| {
                    hom(
                        m,
                        src.modules()[k].underlying(),
                        dst.modules()[k].underlying(),
                        &format!("{}.maps[{}][{}]", at, i, k),
                    )
                })
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    let value = GComplexTower::new(g, cs, maps, def.rule.into()).map_err(|e| err(&at, e))?;
    Ok(NamedComplexTower { tower: def.tower.clone(), value })
}

pub fn resolve(file: &ProblemFile) -> Result<Problem, InputError> {
    let groups = resolve_groups(&file.groups)?;
    let towers = file
        .towers
        .iter()
        .map(|(n, d)| Ok((n.clone(), resolve_tower(n, d, &groups)?)))
        .collect::<Result<BTreeMap<_, _>, InputError>>()?;
    let modules = file
        .modules
        .iter()
        .map(|(n, d)| Ok((n.clone(), resolve_module(n, d, &towers)?)))
        .collect::<Result<BTreeMap<_, _>, InputError>>()?;
    let module_towers = file
        .module_towers
        .iter()
        .map(|(n, d)| Ok((n.clone(), resolve_module_tower(n, d, &towers, &modules)?)))
        .collect::<Result<BTreeMap<_, _>, InputError>>()?;
    let complex_towers = file
        .complex_towers
        .iter()
        .map(|(n, d)| Ok((n.clone(), resolve_complex_tower(n, d, &towers, &modules)?)))
        .collect::<Result<BTreeMap<_, _>, InputError>>()?;
    Ok(Problem { groups, towers, modules, module_towers, complex_towers, requests: file.requests.clone() })
}

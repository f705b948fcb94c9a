//! Dispatch of problem-file requests to the engine.

use std::fmt;

use clap::ValueEnum;

use prodesc_core::descent::{compare_e2, descent_e2, gamma_tower_counterexample, jannsen_e2};
use prodesc_core::gmod::{cochain_complex, complex_cohomology, continuous_cohomology, CochainModel};
use prodesc_core::groups::ProfiniteTower;
use prodesc_core::towers::{compare_cts_cont, h_cont, h_cts, Agreement, DEFAULT_HORIZON};
use prodesc_core::{Error, Int};

use crate::problem::{InputError, Problem, Request};
use crate::report::{
    colimit_body, comparison_body, counterexample_body, e2_comparison_body, page_body, AssembledDto, Body, GroupDto,
    Report, ResultDto,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// `H^s` at a finite level, or as a colimit over deeper levels.
    Cohomology,
    /// Cohomology of the pro-discrete cochain complex.
    Hcts,
    /// Continuous cohomology from the derived-limit sequence.
    Hcont,
    /// Both of the above, compared when the module tower is Mittag-Leffler.
    CompareCohomology,
    /// One `E₂` page (`--model descent|jannsen`).
    E2,
    /// Both `E₂` pages, compared cell by cell.
    CompareE2,
    /// Cohomology of a coinduced tower against its predicted values.
    Counterexample,
    /// The bundled verification suite.
    VerifyPaper,
}

impl Command {
    pub const ALL: [Command; 8] = [
        Command::Cohomology,
        Command::Hcts,
        Command::Hcont,
        Command::CompareCohomology,
        Command::E2,
        Command::CompareE2,
        Command::Counterexample,
        Command::VerifyPaper,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Cohomology => "cohomology",
            Command::Hcts => "hcts",
            Command::Hcont => "hcont",
            Command::CompareCohomology => "compare-cohomology",
            Command::E2 => "e2",
            Command::CompareE2 => "compare-e2",
            Command::Counterexample => "counterexample",
            Command::VerifyPaper => "verify-paper",
        }
    }

    pub fn parse(s: &str) -> Option<Command> {
        Command::ALL.into_iter().find(|c| c.name() == s)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Model {
    #[default]
    Descent,
    Jannsen,
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::Descent => "descent",
            Model::Jannsen => "jannsen",
        }
    }
}

/// Command-line overrides of request parameters.
#[derive(Clone, Debug, Default)]
pub struct Flags {
    pub s_max: Option<usize>,
    pub t_min: Option<i64>,
    pub t_max: Option<i64>,
    pub n_max: Option<usize>,
    pub depth: Option<usize>,
    pub horizon: Option<usize>,
    pub model: Option<Model>,
}

/// Why a run stopped without a report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Failure {
    Input(InputError),
    Internal(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Internal(_) => 2,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(e) => write!(f, "input error: {}", e),
            Failure::Internal(m) => write!(f, "internal invariant violated: {}", m),
        }
    }
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Failure {
        Failure::Input(e)
    }
}

/// A finished report and the exit code it warrants.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Report,
    pub exit_code: u8,
}

fn input(at: impl Into<String>, message: impl fmt::Display) -> Failure {
    Failure::Input(InputError { location: at.into(), message: message.to_string() })
}

fn engine(at: &str, e: Error) -> Failure {
    if e.is_internal() {
        Failure::Internal(format!("{}: {}", at, e))
    } else {
        input(at, e)
    }
}

/// An invalid limit decomposition becomes an inner `Err`, reported in-band.
fn recoverable<T>(at: &str, r: Result<T, Error>) -> Result<Result<T, String>, Failure> {
    match r {
        Ok(v) => Ok(Ok(v)),
        Err(e @ Error::DecompositionNotValid(_)) => Ok(Err(e.to_string())),
        Err(e) => Err(engine(at, e)),
    }
}

struct Ctx<'a> {
    problem: &'a Problem,
    req: &'a Request,
    flags: &'a Flags,
    at: String,
}

impl Ctx<'_> {
    fn horizon(&self) -> usize {
        self.flags.horizon.or(self.req.horizon).unwrap_or(DEFAULT_HORIZON)
    }

    fn s_values(&self) -> Vec<usize> {
        match (self.flags.s_max, self.req.s_max, self.req.s) {
            (Some(m), _, _) | (None, Some(m), _) => (0..=m).collect(),
            (None, None, Some(s)) => vec![s],
            _ => (0..=2).collect(),
        }
    }

    fn s_max(&self, default: usize) -> usize {
        self.flags.s_max.or(self.req.s_max).or(self.req.s).unwrap_or(default)
    }

    fn n_max(&self, top_s: usize) -> usize {
        self.flags.n_max.or(self.req.n_max).unwrap_or(top_s + 1)
    }

    fn depth(&self, g: &ProfiniteTower, floor: usize) -> Result<usize, Failure> {
        let d = self.flags.depth.or(self.req.depth).unwrap_or(g.top().max(floor));
        if d > g.top() {
            return Err(input(&self.at, format!("depth {} exceeds the tower's top level {}", d, g.top())));
        }
        if d < floor {
            return Err(input(&self.at, format!("depth {} is below the level {} of the data", d, floor)));
        }
        Ok(d)
    }

    fn field<'b>(&self, v: &'b Option<String>, name: &str) -> Result<&'b str, Failure> {
        v.as_deref().ok_or_else(|| input(&self.at, format!("this command needs \"{}\"", name)))
    }
}

fn cochain_model(name: Option<&str>, at: &str) -> Result<CochainModel, Failure> {
    match name.unwrap_or("inhomogeneous") {
        "inhomogeneous" => Ok(CochainModel::Inhomogeneous),
        "homogeneous-fixed" => Ok(CochainModel::HomogeneousFixed),
        "gamma-fixed" => Ok(CochainModel::GammaFixed),
        other => Err(input(at, format!("unknown cochain model \"{}\"", other))),
    }
}

/// Runs every request of the given command; `verify-paper` is not handled here.
pub fn run(problem: &Problem, command: Command, flags: &Flags) -> Result<Outcome, Failure> {
    for (i, r) in problem.requests.iter().enumerate() {
        if Command::parse(&r.command).is_none() {
            return Err(input(format!("requests[{}].command", i), format!("unknown command \"{}\"", r.command)));
        }
    }
    if let (Some(a), Some(b)) = (flags.t_min, flags.t_max) {
        if a > b {
            return Err(input("--t-min", "t range is empty"));
        }
    }
    let mut report = Report::new(command.name());
    let mut exit_code = 0;
    let selected: Vec<(usize, &Request)> =
        problem.requests.iter().enumerate().filter(|(_, r)| r.command == command.name()).collect();
    if selected.is_empty() {
        return Err(input("requests", format!("no request has command \"{}\"", command.name())));
    }
    for (i, req) in selected {
        let ctx = Ctx { problem, req, flags, at: format!("requests[{}]", i) };
        let name = req.name.clone().unwrap_or_else(|| format!("{}#{}", command.name(), i));
        let bodies = match command {
            Command::Cohomology => cohomology(&ctx)?,
            Command::Hcts | Command::Hcont => assembled(&ctx, command)?,
            Command::CompareCohomology => {
                let (bodies, bad) = compare_cohomology(&ctx)?;
                if bad {
                    exit_code = 2;
                }
                bodies
            }
            Command::E2 => vec![e2(&ctx)?],
            Command::CompareE2 => {
                let (body, bad) = compare_pages(&ctx)?;
                if bad {
                    exit_code = 2;
                }
                vec![body]
            }
            Command::Counterexample => {
                let (body, bad) = counterexample(&ctx)?;
                if bad {
                    exit_code = 2;
                }
                vec![body]
            }
            Command::VerifyPaper => return Err(input("command", "verify-paper does not read requests")),
        };
        for body in bodies {
            report.results.push(ResultDto { request: i, name: name.clone(), command: command.name().into(), body });
        }
    }
    Ok(Outcome { report, exit_code })
}

fn cohomology(ctx: &Ctx) -> Result<Vec<Body>, Failure> {
    let name = ctx.field(&ctx.req.module, "module")?;
    let m = ctx.problem.modules.get(name).ok_or_else(|| input(&ctx.at, format!("unknown module \"{}\"", name)))?;
    let g = &ctx.problem.towers[&m.tower];
    let level = m.module.level();
    let depth = ctx.flags.depth.or(ctx.req.depth).unwrap_or(level);
    if depth < level || depth > g.top() {
        return Err(input(
            &ctx.at,
            format!("depth {} must lie between the module's level {} and {}", depth, level, g.top()),
        ));
    }
    let model = cochain_model(ctx.req.model.as_deref(), &ctx.at)?;
    let mut out = Vec::new();
    for s in ctx.s_values() {
        if depth == level {
            let c = cochain_complex(model, g.level(level), &m.module, s + 1).map_err(|e| engine(&ctx.at, e))?;
            let h = complex_cohomology(&c, s as i64).map_err(|e| engine(&ctx.at, e))?;
            out.push(Body::Finite { s, level, group: GroupDto::from(&h) });
        } else {
            let c = continuous_cohomology(g, &m.module, s, depth).map_err(|e| engine(&ctx.at, e))?;
            out.push(colimit_body(s, &c));
        }
    }
    Ok(out)
}

fn module_tower<'a>(ctx: &'a Ctx) -> Result<(&'a ProfiniteTower, &'a prodesc_core::towers::ModuleTower), Failure> {
    let name = ctx.field(&ctx.req.module_tower, "module_tower")?;
    let t = ctx
        .problem
        .module_towers
        .get(name)
        .ok_or_else(|| input(&ctx.at, format!("unknown module tower \"{}\"", name)))?;
    Ok((&ctx.problem.towers[&t.tower], &t.value))
}

fn assembled(ctx: &Ctx, command: Command) -> Result<Vec<Body>, Failure> {
    let (g, t) = module_tower(ctx)?;
    let depth = ctx.depth(g, t.max_level())?;
    let horizon = ctx.horizon();
    let ss = ctx.s_values();
    let n_max = ctx.n_max(ss.iter().copied().max().unwrap_or(0));
    let mut out = Vec::new();
    for s in ss {
        let r = match command {
            Command::Hcts => h_cts(g, t, s, n_max, depth, horizon),
            _ => h_cont(g, t, s, depth, horizon),
        };
        out.push(match recoverable(&ctx.at, r)? {
            Ok(a) => Body::Assembled { s, value: AssembledDto::from(&a) },
            Err(error) => Body::Failed { s: Some(s), error },
        });
    }
    Ok(out)
}

fn compare_cohomology(ctx: &Ctx) -> Result<(Vec<Body>, bool), Failure> {
    let (g, t) = module_tower(ctx)?;
    let depth = ctx.depth(g, t.max_level())?;
    let horizon = ctx.horizon();
    let ss = ctx.s_values();
    let n_max = ctx.n_max(ss.iter().copied().max().unwrap_or(0));
    let mut out = Vec::new();
    let mut bad = false;
    for s in ss {
        match recoverable(&ctx.at, compare_cts_cont(g, t, s, n_max, depth, horizon))? {
            Ok(r) => {
                bad |= r.agreement == Agreement::Disagree;
                out.push(comparison_body(&r));
            }
            Err(error) => out.push(Body::Failed { s: Some(s), error }),
        }
    }
    Ok((out, bad))
}

struct PageArgs<'a> {
    g: &'a ProfiniteTower,
    x: &'a prodesc_core::descent::GComplexTower,
    s_max: usize,
    t_range: (i64, i64),
    n_max: usize,
    depth: usize,
    horizon: usize,
}

fn page_args<'a>(ctx: &'a Ctx) -> Result<PageArgs<'a>, Failure> {
    let name = ctx.field(&ctx.req.complex_tower, "complex_tower")?;
    let x = ctx
        .problem
        .complex_towers
        .get(name)
        .ok_or_else(|| input(&ctx.at, format!("unknown complex tower \"{}\"", name)))?;
    let g = &ctx.problem.towers[&x.tower];
    let x = &x.value;
    let s_max = ctx.s_max(2);
    let t_min = ctx.flags.t_min.or(ctx.req.t_min).unwrap_or(x.low() - 1);
    let t_max = ctx.flags.t_max.or(ctx.req.t_max).unwrap_or(x.high());
    if t_min > t_max {
        return Err(input(&ctx.at, format!("empty t range {}..{}", t_min, t_max)));
    }
    Ok(PageArgs {
        g,
        x,
        s_max,
        t_range: (t_min, t_max),
        n_max: ctx.n_max(s_max),
        depth: ctx.depth(g, x.max_level())?,
        horizon: ctx.horizon(),
    })
}

fn e2(ctx: &Ctx) -> Result<Body, Failure> {
    let model = match (ctx.flags.model, ctx.req.model.as_deref()) {
        (Some(m), _) => m,
        (None, None) => Model::Descent,
        (None, Some(s)) => Model::from_str(s, false).map_err(|_| input(&ctx.at, format!("unknown model \"{}\"", s)))?,
    };
    let a = page_args(ctx)?;
    let page = match model {
        Model::Descent => descent_e2(a.g, a.x, a.s_max, a.t_range, a.n_max, a.depth, a.horizon),
        Model::Jannsen => jannsen_e2(a.g, a.x, a.s_max, a.t_range, a.depth, a.horizon),
    }
    .map_err(|e| engine(&ctx.at, e))?;
    Ok(page_body(model.name(), &page))
}

fn compare_pages(ctx: &Ctx) -> Result<(Body, bool), Failure> {
    let a = page_args(ctx)?;
    let c = compare_e2(a.g, a.x, a.s_max, a.t_range, a.n_max, a.depth, a.horizon).map_err(|e| engine(&ctx.at, e))?;
    Ok((e2_comparison_body(&c), !c.violations().is_empty()))
}

fn counterexample(ctx: &Ctx) -> Result<(Body, bool), Failure> {
    let (g, t) = module_tower(ctx)?;
    let depth = ctx.depth(g, t.max_level())?;
    let r = gamma_tower_counterexample(g, t, ctx.s_max(3), depth, ctx.horizon()).map_err(|e| engine(&ctx.at, e))?;
    let bad = r.rows.iter().any(|row| row.holds == Some(false));
    Ok((counterexample_body(&r), bad))
}

fn int_json(v: &Int) -> serde_json::Value {
    match v.to_i64() {
        Some(x) => x.into(),
        None => v.to_string().into(),
    }
}

/// The cochain complexes behind every `cohomology` request, as group orders
/// and dense differential matrices.
pub fn export_complexes(problem: &Problem, flags: &Flags) -> Result<serde_json::Value, Failure> {
    let mut out = Vec::new();
    for (i, req) in problem.requests.iter().enumerate().filter(|(_, r)| r.command == Command::Cohomology.name()) {
        let ctx = Ctx { problem, req, flags, at: format!("requests[{}]", i) };
        let name = ctx.field(&req.module, "module")?;
        let m = problem.modules.get(name).ok_or_else(|| input(&ctx.at, format!("unknown module \"{}\"", name)))?;
        let g = &problem.towers[&m.tower];
        let level = m.module.level();
        let model = cochain_model(req.model.as_deref(), &ctx.at)?;
        let top = ctx.s_values().into_iter().max().unwrap_or(0) + 1;
        let c = cochain_complex(model, g.level(level), &m.module, top).map_err(|e| engine(&ctx.at, e))?;
        let degrees: Vec<serde_json::Value> = (c.start()..=c.end())
            .map(|n| {
                let orders: Vec<serde_json::Value> = c.group(n).orders().iter().map(int_json).collect();
                let rows: Vec<Vec<serde_json::Value>> = c
                    .differential(n)
                    .map(|d| d.matrix().to_dense_rows().iter().map(|r| r.iter().map(int_json).collect()).collect())
                    .unwrap_or_default();
                serde_json::json!({ "degree": n, "orders": orders, "differential": rows })
            })
            .collect();
        out.push(serde_json::json!({
            "request": i,
            "module": name,
            "level": level,
            "model": req.model.as_deref().unwrap_or("inhomogeneous"),
            "degrees": degrees,
        }));
    }
    if out.is_empty() {
        return Err(input("requests", "no request has command \"cohomology\""));
    }
    Ok(serde_json::Value::Array(out))
}

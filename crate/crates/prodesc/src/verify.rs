//! The bundled verification suite behind `verify-paper`.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use prodesc_core::catalog::{battery_groups, battery_modules, cyclic_named};
use prodesc_core::descent::{constant_expectation, descent_e2, CellValue, GChainComplex, GComplexTower};
use prodesc_core::gmod::{
    cochain_complex, complex_cohomology, complexes_checked, continuous_cohomology, finite_cohomology, gamma,
    CochainModel, DiscreteGModule,
};
use prodesc_core::groups::ProfiniteTower;
use prodesc_core::smith::smith_normal_form;
use prodesc_core::towers::{h_cts, Lim1Status, LimValue, ModuleTower, DEFAULT_HORIZON};
use prodesc_core::{Error, FgAbGroup, Homomorphism, Int, Matrix};

use crate::problem::load;
use crate::report::{Body, CellComparisonDto, ItemDto, LimDto, MlDto, Report, ResultDto};
use crate::run::{run, Command, Failure, Flags, Outcome};

/// Problem files shipped with the binary, by file name.
pub const FIXTURES: [(&str, &str); 8] = [
    ("cyclic.json", include_str!("../fixtures/cyclic.json")),
    ("finite_complexes.json", include_str!("../fixtures/finite_complexes.json")),
    ("gamma_counterexample.json", include_str!("../fixtures/gamma_counterexample.json")),
    ("malformed_tower.json", include_str!("../fixtures/malformed_tower.json")),
    ("ml_towers.json", include_str!("../fixtures/ml_towers.json")),
    ("point_times_two.json", include_str!("../fixtures/point_times_two.json")),
    ("point_two_adic.json", include_str!("../fixtures/point_two_adic.json")),
    ("two_adic_coefficients.json", include_str!("../fixtures/two_adic_coefficients.json")),
];

pub fn fixture(name: &str) -> &'static str {
    FIXTURES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t).expect("bundled fixture")
}

type Check = Result<(bool, String), String>;

fn run_fixture(name: &str, command: Command) -> Result<Outcome, String> {
    let problem = load(fixture(name)).map_err(|e| format!("{}: {}", name, e))?;
    run(&problem, command, &Flags::default()).map_err(|e: Failure| format!("{}: {}", name, e))
}

fn bodies(outcome: &Outcome) -> impl Iterator<Item = &Body> {
    outcome.report.results.iter().map(|r| &r.body)
}

fn e(err: Error) -> String {
    err.to_string()
}

fn summary(cases: usize, bad: &[String]) -> (bool, String) {
    if bad.is_empty() {
        (true, format!("{} cases, no mismatches", cases))
    } else {
        let shown: Vec<&str> = bad.iter().take(5).map(|s| s.as_str()).collect();
        (false, format!("{} of {} cases mismatch: {}", bad.len(), cases, shown.join("; ")))
    }
}

const MODELS: [CochainModel; 3] =
    [CochainModel::Inhomogeneous, CochainModel::HomogeneousFixed, CochainModel::GammaFixed];

fn three_models() -> Check {
    let (mut cases, mut bad) = (0, Vec::new());
    for ng in battery_groups() {
        for nm in battery_modules(&ng, 0).map_err(e)? {
            let cs = MODELS
                .iter()
                .map(|&m| cochain_complex(m, &ng.group, &nm.module, 4))
                .collect::<Result<Vec<_>, _>>()
                .map_err(e)?;
            for s in 0..=3 {
                let hs = cs.iter().map(|c| complex_cohomology(c, s)).collect::<Result<Vec<_>, _>>().map_err(e)?;
                cases += 1;
                if hs.windows(2).any(|w| w[0] != w[1]) {
                    let texts: Vec<String> = hs.iter().map(|h| h.to_string()).collect();
                    bad.push(format!("{} on {}, s={}: {}", ng.name, nm.name, s, texts.join(" / ")));
                }
            }
        }
    }
    Ok(summary(cases, &bad))
}

/// Multiplication by `a` on `Z/m` (`m = 0` for `Z`): kernel and image orders
/// by enumeration, or their structure on `Z`.
fn periodic_oracle(n: usize, m: i64, epsilon: i64, s: usize) -> FgAbGroup {
    // the 2-periodic resolution: even degrees use g - 1, odd degrees the norm
    let factor = |k: usize| -> i64 {
        if k.is_multiple_of(2) {
            epsilon - 1
        } else {
            (0..n as u32).map(|i| epsilon.pow(i)).sum()
        }
    };
    let out = factor(s);
    let inc = if s == 0 { 0 } else { factor(s - 1) };
    if m == 0 {
        if out != 0 {
            return FgAbGroup::zero();
        }
        return if inc == 0 { FgAbGroup::free(1) } else { FgAbGroup::cyclic(inc.abs()) };
    }
    let kernel = (0..m).filter(|x| (out * x).rem_euclid(m) == 0).count() as i64;
    let mut image: Vec<i64> = (0..m).map(|x| (inc * x).rem_euclid(m)).collect();
    image.sort_unstable();
    image.dedup();
    FgAbGroup::cyclic(kernel / image.len() as i64)
}

fn cyclic_oracle() -> Check {
    let (mut cases, mut bad) = (0, Vec::new());
    for n in 2..=4usize {
        let q = cyclic_named(n).group;
        let signs: &[i64] = if n % 2 == 0 { &[1, -1] } else { &[1] };
        for &epsilon in signs {
            for m in [0i64, 2, 3, 4, 5, 6, 8, 9] {
                let a = if m == 0 { FgAbGroup::free(1) } else { FgAbGroup::cyclic(m) };
                let mats: Vec<Matrix> = (0..n)
                    .map(|g| Matrix::identity(1).scale(&Int::from(if g % 2 == 1 { epsilon } else { 1 })))
                    .collect();
                let module = DiscreteGModule::from_matrices(&q, 0, a, &mats).map_err(e)?;
                for s in 0..=3 {
                    cases += 1;
                    let got = finite_cohomology(&q, &module, s).map_err(e)?;
                    let want = periodic_oracle(n, m, epsilon, s);
                    if got != want {
                        bad.push(format!(
                            "Z/{} on {} (generator acts by {}), s={}: {} vs {}",
                            n,
                            if m == 0 { "Z".into() } else { format!("Z/{}", m) },
                            epsilon,
                            s,
                            got,
                            want
                        ));
                    }
                }
            }
        }
    }
    Ok(summary(cases, &bad))
}

fn gamma_acyclic() -> Check {
    let (mut cases, mut bad) = (0, Vec::new());
    for ng in battery_groups() {
        for nm in battery_modules(&ng, 0).map_err(e)? {
            let gm = gamma(&ng.group, &nm.module).map_err(e)?;
            for s in 1..=3 {
                cases += 1;
                let h = finite_cohomology(&ng.group, &gm, s).map_err(e)?;
                if !h.is_trivial() {
                    bad.push(format!("{} on {}, s={}: {}", ng.name, nm.name, s, h));
                }
            }
        }
    }
    Ok(summary(cases, &bad))
}

fn lim_is_group(a: &prodesc_core::towers::Assembled, want: &FgAbGroup) -> bool {
    a.sub.lim1 == Lim1Status::Zero && a.quotient.lim == LimValue::Group(want.clone())
}

fn pipeline() -> Check {
    let (mut cases, mut bad) = (0, Vec::new());
    for ng in battery_groups() {
        let g = ProfiniteTower::finite(ng.group.clone());
        for nm in battery_modules(&ng, 0).map_err(e)? {
            let t = ModuleTower::constant(&g, nm.module.clone(), Homomorphism::identity(nm.module.underlying()))
                .map_err(e)?;
            for s in 0..=2 {
                cases += 1;
                let a = h_cts(&g, &t, s, 3, 0, DEFAULT_HORIZON).map_err(e)?;
                let want = finite_cohomology(&ng.group, &nm.module, s).map_err(e)?;
                if !lim_is_group(&a, &want) {
                    bad.push(format!("{} on {}, s={}", ng.name, nm.name, s));
                }
            }
        }
    }
    // constant towers over Z/2^j, against the deepest level of the inflation system
    let g = ProfiniteTower::p_adic(2, 2).map_err(e)?;
    let q1 = g.level(1);
    let minus = Matrix::identity(1).scale(&Int::from(-1));
    let modules = [
        DiscreteGModule::trivial(g.level(0), 0, FgAbGroup::cyclic(2)),
        DiscreteGModule::trivial(g.level(0), 0, FgAbGroup::free(1)),
        DiscreteGModule::from_matrices(q1, 1, FgAbGroup::free(1), &[Matrix::identity(1), minus.clone()]).map_err(e)?,
        DiscreteGModule::from_matrices(q1, 1, FgAbGroup::cyclic(4), &[Matrix::identity(1), minus]).map_err(e)?,
    ];
    for m in modules {
        let t = ModuleTower::constant(&g, m.clone(), Homomorphism::identity(m.underlying())).map_err(e)?;
        for s in 0..=2 {
            cases += 1;
            let a = h_cts(&g, &t, s, 3, 2, DEFAULT_HORIZON).map_err(e)?;
            let c = continuous_cohomology(&g, &m, s, 2).map_err(e)?;
            if !lim_is_group(&a, c.groups.last().expect("one level at least")) {
                bad.push(format!("Z/2^j on {}, s={}", m.underlying(), s));
            }
        }
    }
    // the 2-adic coefficient tower
    let out = run_fixture("two_adic_coefficients.json", Command::Hcts)?;
    let want: Vec<String> = ["Z/2", "Z/4", "Z/8"].iter().map(|s| s.to_string()).collect();
    for body in bodies(&out) {
        cases += 1;
        match body {
            Body::Assembled { s, value } => {
                let images: Option<Vec<String>> =
                    value.quotient.stable_images.as_ref().map(|v| v.iter().map(|g| g.text.clone()).collect());
                let ok = value.quotient.lim == LimDto::ProObject
                    && images.as_ref() == Some(&want)
                    && value.sub.lim1 == "zero";
                if !ok {
                    bad.push(format!("2-adic coefficients, s={}: {} with lim¹ {}", s, value.value, value.sub.lim1));
                }
            }
            other => bad.push(format!("2-adic coefficients: unexpected {:?}", other)),
        }
    }
    Ok(summary(cases, &bad))
}

fn ml_agreement() -> Check {
    let out = run_fixture("ml_towers.json", Command::CompareCohomology)?;
    let (mut cases, mut bad) = (0, Vec::new());
    for r in &out.report.results {
        cases += 1;
        match &r.body {
            Body::Comparison { agreement, .. } if agreement == "agree" => {}
            Body::Comparison { s, agreement, details, .. } => {
                bad.push(format!("{}, s={}: {} ({})", r.name, s, agreement, details))
            }
            other => bad.push(format!("{}: unexpected {:?}", r.name, other)),
        }
    }
    Ok(summary(cases, &bad))
}

fn counterexample() -> Check {
    let out = run_fixture("gamma_counterexample.json", Command::Counterexample)?;
    let Some(Body::Counterexample { lim1_of_tower, rows }) = bodies(&out).next() else {
        return Err("no counterexample report".into());
    };
    let mut notes = Vec::new();
    let mut ok = rows.len() == 4 && lim1_of_tower == "nonzero";
    for row in rows {
        let mut good = row.holds == Some(true);
        if row.s == 1 {
            good &= row.value.sub.lim1 == "nonzero";
            good &= matches!(&row.value.sub.ml, MlDto::NotMl { witness } if witness.verified);
        }
        if row.s >= 2 {
            good &= row.value.value == "0";
        }
        notes.push(format!("s={}: {}", row.s, row.value.value));
        ok &= good;
    }
    Ok((ok, format!("{}; lim¹ witness on the s=1 layer verified: {}", notes.join(", "), ok)))
}

fn cells_of(out: &Outcome) -> Result<(bool, Vec<CellComparisonDto>), String> {
    match bodies(out).next() {
        Some(Body::E2Comparison { all_ml, cells, .. }) => Ok((*all_ml, cells.clone())),
        _ => Err("no E2 comparison".into()),
    }
}

fn trivial_group_obstruction() -> Check {
    let (_, cells) = cells_of(&run_fixture("point_times_two.json", Command::CompareE2)?)?;
    let differs: Vec<(usize, i64)> = cells.iter().filter(|c| c.verdict == "differs").map(|c| (c.s, c.t)).collect();
    let undetermined = cells.iter().filter(|c| c.verdict == "undetermined").count();
    let witnessed = cells
        .iter()
        .filter(|c| c.verdict == "differs")
        .all(|c| c.witness.as_deref().is_some_and(|w| w.contains("lim¹")));
    let first = differs == [(0, -1)] && undetermined == 0 && witnessed;
    let (all_ml, ml_cells) = cells_of(&run_fixture("point_two_adic.json", Command::CompareE2)?)?;
    let second = all_ml && ml_cells.iter().all(|c| c.verdict == "equal");
    let shown: Vec<String> = differs.iter().map(|(s, t)| format!("({}, {})", s, t)).collect();
    Ok((
        first && second,
        format!(
            "times two: cells differ at {} of {} (expected only (0, -1)); 2-adic complexes: {} of {} cells equal",
            if shown.is_empty() { "none".into() } else { shown.join(", ") },
            cells.len(),
            ml_cells.iter().filter(|c| c.verdict == "equal").count(),
            ml_cells.len()
        ),
    ))
}

fn finite_e2() -> Check {
    let (all_ml, cells) = cells_of(&run_fixture("finite_complexes.json", Command::CompareE2)?)?;
    let covered = (0..=2).all(|s| (-2..=2).all(|t| cells.iter().any(|c| c.s == s && c.t == t)));
    let equal = cells.iter().filter(|c| c.verdict == "equal").count();
    Ok((
        all_ml && covered && equal == cells.len(),
        format!("{} of {} cells equal (s ≤ 2, -2 ≤ t ≤ 2); homotopy towers ML: {}", equal, cells.len(), all_ml),
    ))
}

fn constant_collapse() -> Check {
    let (mut cases, mut bad) = (0, Vec::new());
    for ng in battery_groups() {
        let g = ProfiniteTower::finite(ng.group.clone());
        for nm in battery_modules(&ng, 0).map_err(e)? {
            let a = nm.module.underlying();
            let twice = Homomorphism::scalar(a, 2);
            let complexes = [
                GChainComplex::concentrated(nm.module.clone(), 0),
                GChainComplex::new(0, vec![nm.module.clone(), nm.module.clone()], vec![twice]).map_err(e)?,
            ];
            for x in complexes {
                let tower = GComplexTower::constant(&g, x.clone()).map_err(e)?;
                let range = (x.low() - 1, x.high());
                let page = descent_e2(&g, &tower, 2, range, 3, 0, DEFAULT_HORIZON).map_err(e)?;
                for c in &page.cells {
                    cases += 1;
                    let want = constant_expectation(&g, &x, c.s, c.t, 0).map_err(e)?;
                    if c.value != CellValue::Group(want.clone()) {
                        bad.push(format!("{} on {} ({}, {}): {} vs {}", ng.name, nm.name, c.s, c.t, c.value, want));
                    }
                }
            }
        }
    }
    Ok(summary(cases, &bad))
}

/// Fraction-free elimination.
fn det(m: &Matrix) -> Int {
    let n = m.nrows();
    let mut a = m.to_dense_rows();
    let mut sign = Int::ONE;
    let mut prev = Int::ONE;
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else { return Int::ZERO };
        if p != k {
            a.swap(p, k);
            sign = -&sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v.div_exact(&prev);
            }
        }
        prev = a[k][k].clone();
    }
    &sign * &a[n - 1][n - 1]
}

fn smith_property() -> Check {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut bad = Vec::new();
    let cases = 1000;
    for k in 0..cases {
        let (r, c) = (rng.random_range(1..=6usize), rng.random_range(1..=6usize));
        let rows: Vec<Vec<Int>> =
            (0..r).map(|_| (0..c).map(|_| Int::from(rng.random_range(-9..=9i64))).collect()).collect();
        let m = Matrix::from_rows(&rows);
        let snf = smith_normal_form(&m);
        let d = snf.u.mul(&m).mul(&snf.v);
        let diag = snf.diagonal();
        let shape = d == snf.d
            && (0..r).all(|i| (0..c).all(|j| i == j || snf.d.get(i, j).is_zero()))
            && diag.iter().all(|x| !x.is_negative());
        let chain = diag.windows(2).all(|w| if w[0].is_zero() { w[1].is_zero() } else { w[0].divides(&w[1]) });
        let unimodular = det(&snf.u).abs().is_one() && det(&snf.v).abs().is_one();
        if !(shape && chain && unimodular) {
            bad.push(format!("matrix {}: product {}, chain {}, unimodular {}", k, shape, chain, unimodular));
        }
    }
    let (ok, detail) = summary(cases, &bad);
    Ok((ok, format!("{}; {} cochain complexes passed the d∘d = 0 check at construction", detail, complexes_checked())))
}

fn fixture_reports() -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    for (name, text) in FIXTURES {
        let Ok(problem) = load(text) else { continue };
        let mut commands: Vec<Command> = problem.requests.iter().filter_map(|r| Command::parse(&r.command)).collect();
        commands.sort_by_key(|c| c.name());
        commands.dedup();
        for c in commands {
            let o = run(&problem, c, &Flags::default()).map_err(|e| format!("{}: {}", name, e))?;
            out.push(o.report.to_json());
        }
    }
    Ok(out)
}

fn determinism() -> Check {
    let first = fixture_reports()?;
    let second = fixture_reports()?;
    let round_trip = first.iter().all(|j| Report::from_json(j).is_ok_and(|r| r.to_json() == *j));
    let same = first == second;
    Ok((
        same && round_trip,
        format!(
            "{} fixture reports regenerated: byte-identical {}, JSON round-trip exact {}",
            first.len(),
            same,
            round_trip
        ),
    ))
}

/// Name and check of every item, in order.
pub fn items() -> Vec<(u32, &'static str, fn() -> Check)> {
    vec![
        (1, "three cochain models agree", three_models as fn() -> Check),
        (2, "cyclic groups match the periodic resolution", cyclic_oracle),
        (3, "coinduced modules are acyclic", gamma_acyclic),
        (4, "pro-discrete cochains on constant and 2-adic towers", pipeline),
        (5, "continuous cohomologies agree on ML towers", ml_agreement),
        (6, "coinduced tower of (Z, ×2)", counterexample),
        (7, "trivial-group lim¹ obstruction", trivial_group_obstruction),
        (8, "E2 pages agree for finite complexes", finite_e2),
        (9, "constant towers collapse", constant_collapse),
        (10, "exact arithmetic invariants", smith_property),
        (11, "reports are deterministic", determinism),
    ]
}

/// Runs every item; the exit code is 2 when any item fails.
pub fn verify_paper() -> Outcome {
    let items: Vec<ItemDto> = items()
        .into_iter()
        .map(|(item, name, check)| {
            let (pass, detail) = match check() {
                Ok(r) => r,
                Err(msg) => (false, format!("error: {}", msg)),
            };
            ItemDto { item, name: name.into(), pass, detail }
        })
        .collect();
    let exit_code = if items.iter().all(|i| i.pass) { 0 } else { 2 };
    let mut report = Report::new(Command::VerifyPaper.name());
    report.results.push(ResultDto {
        request: 0,
        name: "verification suite".into(),
        command: Command::VerifyPaper.name().into(),
        body: Body::Verification { items },
    });
    Outcome { report, exit_code }
}

//! Machine-readable reports and their aligned-table rendering.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use prodesc_core::descent::{CellValue, CellVerdict, CounterexampleReport, E2Cell, E2Comparison, E2Page, Piece};
use prodesc_core::gmod::StabilizedColimit;
use prodesc_core::towers::{
    Agreement, Assembled, CtsContReport, ExtensionNote, Lim1Status, LimValue, MlStatus, ProGroup, TowerRule,
};
use prodesc_core::{FgAbGroup, Int, Matrix};

use crate::problem::SCHEMA;

/// An exact integer: a JSON number when it fits in 64 bits, a decimal string otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntDto {
    Small(i64),
    Big(String),
}

impl From<&Int> for IntDto {
    fn from(v: &Int) -> IntDto {
        match v.to_i64() {
            Some(x) => IntDto::Small(x),
            None => IntDto::Big(v.to_decimal()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDto {
    pub rank: usize,
    pub torsion: Vec<IntDto>,
    pub text: String,
}

impl From<&FgAbGroup> for GroupDto {
    fn from(g: &FgAbGroup) -> GroupDto {
        GroupDto { rank: g.rank(), torsion: g.torsion().iter().map(IntDto::from).collect(), text: g.to_string() }
    }
}

fn matrix_rows(m: &Matrix) -> Vec<Vec<IntDto>> {
    m.to_dense_rows().iter().map(|r| r.iter().map(IntDto::from).collect()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDto {
    pub base_level: usize,
    pub periods: usize,
    pub phi: Vec<Vec<IntDto>>,
    pub stable_generators: Vec<Vec<IntDto>>,
    pub stable_group: GroupDto,
    pub phi_on_stable: Vec<Vec<IntDto>>,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum MlDto {
    Certified { k: usize },
    NotMl { witness: WitnessDto },
    Undetermined { horizon: usize },
}

impl From<&MlStatus> for MlDto {
    fn from(m: &MlStatus) -> MlDto {
        match m {
            MlStatus::Certified { k } => MlDto::Certified { k: *k },
            MlStatus::NotMl(w) => MlDto::NotMl {
                witness: WitnessDto {
                    base_level: w.base,
                    periods: w.periods,
                    phi: matrix_rows(w.phi.matrix()),
                    stable_generators: matrix_rows(w.stable.generators()),
                    stable_group: w.phi_on_stable.source().into(),
                    phi_on_stable: matrix_rows(w.phi_on_stable.matrix()),
                    verified: w.verify(),
                },
            },
            MlStatus::Undetermined { horizon } => MlDto::Undetermined { horizon: *horizon },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum LimDto {
    Group { group: GroupDto },
    ProObject,
    Undetermined,
}

impl From<&LimValue> for LimDto {
    fn from(l: &LimValue) -> LimDto {
        match l {
            LimValue::Group(g) => LimDto::Group { group: g.into() },
            LimValue::ProObject => LimDto::ProObject,
            LimValue::Undetermined => LimDto::Undetermined,
        }
    }
}

fn rule_text(r: TowerRule) -> String {
    match r {
        TowerRule::Explicit => "explicit".into(),
        TowerRule::Periodic(p) => format!("periodic({})", p),
    }
}

fn lim1_text(s: Lim1Status) -> String {
    s.to_string()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProGroupDto {
    pub levels: Vec<GroupDto>,
    pub rule: String,
    pub ml: MlDto,
    pub stable_images: Option<Vec<GroupDto>>,
    pub lim: LimDto,
    pub lim1: String,
}

impl From<&ProGroup> for ProGroupDto {
    fn from(p: &ProGroup) -> ProGroupDto {
        ProGroupDto {
            levels: p.levels.iter().map(GroupDto::from).collect(),
            rule: rule_text(p.rule),
            ml: (&p.ml).into(),
            stable_images: p.stable.as_ref().map(|s| s.iter().map(GroupDto::from).collect()),
            lim: (&p.lim).into(),
            lim1: lim1_text(p.lim1),
        }
    }
}

fn note_text(n: ExtensionNote) -> &'static str {
    match n {
        ExtensionNote::Exact => "exact",
        ExtensionNote::DeterminedUpToExtension => "extension-ambiguous",
        ExtensionNote::Undetermined => "undetermined",
    }
}

fn pro_text(p: &ProGroup) -> String {
    match &p.stable {
        Some(st) => format!("pro-{{{}}}", st.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(" ← ")),
        None => "pro-object".into(),
    }
}

/// `0 → lim¹(sub) → value → lim(quotient) → 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssembledDto {
    pub value: String,
    pub flag: Option<String>,
    pub sub: ProGroupDto,
    pub quotient: ProGroupDto,
}

fn assembled_summary(a: &Assembled) -> (String, Option<String>) {
    let q = match &a.quotient.lim {
        LimValue::Group(g) => g.to_string(),
        LimValue::ProObject => pro_text(&a.quotient),
        LimValue::Undetermined => "undetermined".into(),
    };
    let flag = match a.note {
        ExtensionNote::Exact => match (&a.quotient.lim, a.sub.lim1) {
            (LimValue::ProObject, _) => Some("pro-object".to_string()),
            _ => None,
        },
        n => Some(note_text(n).to_string()),
    };
    let value = match (a.sub.lim1, a.quotient.lim_is_zero()) {
        (Lim1Status::Zero, _) => q,
        (Lim1Status::Nonzero, true) => "lim¹ ≠ 0".into(),
        (Lim1Status::Nonzero, false) => format!("extension of {} by lim¹ ≠ 0", q),
        (Lim1Status::Undetermined, _) => format!("{} with undetermined lim¹", q),
    };
    (value, flag)
}

impl From<&Assembled> for AssembledDto {
    fn from(a: &Assembled) -> AssembledDto {
        let (value, flag) = assembled_summary(a);
        AssembledDto { value, flag, sub: (&a.sub).into(), quotient: (&a.quotient).into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PieceDto {
    Lim { label: String, lim: LimDto, stable_images: Option<Vec<GroupDto>>, ml: MlDto },
    Lim1 { label: String, status: String, ml: Option<MlDto> },
    Failed { label: String, reason: String },
}

impl From<&Piece> for PieceDto {
    fn from(p: &Piece) -> PieceDto {
        match p {
            Piece::Lim { label, tower } => PieceDto::Lim {
                label: label.clone(),
                lim: (&tower.lim).into(),
                stable_images: tower.stable.as_ref().map(|s| s.iter().map(GroupDto::from).collect()),
                ml: (&tower.ml).into(),
            },
            Piece::Lim1 { label, status, tower } => PieceDto::Lim1 {
                label: label.clone(),
                status: lim1_text(*status),
                ml: tower.as_ref().filter(|_| *status != Lim1Status::Zero).map(|t| (&t.ml).into()),
            },
            Piece::Failed { label, reason } => PieceDto::Failed { label: label.clone(), reason: reason.clone() },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellDto {
    pub s: usize,
    pub t: i64,
    pub value: String,
    pub flag: Option<String>,
    pub witness: Option<String>,
    pub pieces: Vec<PieceDto>,
}

fn cell_flag(v: &CellValue) -> Option<String> {
    match v {
        CellValue::Group(_) => None,
        CellValue::ProObject(_) => Some("pro-object".into()),
        CellValue::Lim1Nonzero => Some("lim¹ nonzero".into()),
        CellValue::Flagged(why) => Some(why.clone()),
    }
}

impl From<&E2Cell> for CellDto {
    fn from(c: &E2Cell) -> CellDto {
        CellDto {
            s: c.s,
            t: c.t,
            value: match &c.value {
                CellValue::Flagged(_) => "flagged".into(),
                v => v.to_string(),
            },
            flag: cell_flag(&c.value),
            witness: c.witness(),
            pieces: c.pieces.iter().map(PieceDto::from).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellComparisonDto {
    pub s: usize,
    pub t: i64,
    pub verdict: String,
    pub witness: Option<String>,
    pub descent: String,
    pub jannsen: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleRowDto {
    pub s: usize,
    pub expected: String,
    pub holds: Option<bool>,
    pub value: AssembledDto,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ItemDto {
    pub item: u32,
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// The computation-specific part of a result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Body {
    /// `H^s` at a single finite level.
    Finite {
        s: usize,
        level: usize,
        group: GroupDto,
    },
    /// `H^s_c` as a colimit over inflation.
    Colimit {
        s: usize,
        first_level: usize,
        levels: Vec<GroupDto>,
        inflation_isomorphisms: Vec<bool>,
        value: Option<GroupDto>,
        stabilized_at: Option<usize>,
        flag: Option<String>,
    },
    Assembled {
        s: usize,
        value: AssembledDto,
    },
    Comparison {
        s: usize,
        agreement: String,
        details: String,
        ml: MlDto,
        cts: Option<AssembledDto>,
        cts_error: Option<String>,
        cont: AssembledDto,
    },
    Page {
        model: String,
        s_max: usize,
        t_min: i64,
        t_max: i64,
        cells: Vec<CellDto>,
    },
    E2Comparison {
        all_ml: bool,
        violations: Vec<(usize, i64)>,
        cells: Vec<CellComparisonDto>,
    },
    Counterexample {
        lim1_of_tower: String,
        rows: Vec<CounterexampleRowDto>,
    },
    Verification {
        items: Vec<ItemDto>,
    },
    /// A computation that stopped with a diagnostic.
    Failed {
        s: Option<usize>,
        error: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultDto {
    pub request: usize,
    pub name: String,
    pub command: String,
    pub body: Body,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub command: String,
    pub results: Vec<ResultDto>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Report {
        Report { schema: SCHEMA.into(), command: command.into(), results: Vec::new(), warnings: Vec::new() }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Report, serde_json::Error> {
        serde_json::from_str(text)
    }
}

pub fn colimit_body(s: usize, c: &StabilizedColimit) -> Body {
    Body::Colimit {
        s,
        first_level: c.first_level,
        levels: c.groups.iter().map(GroupDto::from).collect(),
        inflation_isomorphisms: c.inflations.iter().map(|f| f.is_isomorphism()).collect(),
        value: c.value.as_ref().map(GroupDto::from),
        stabilized_at: c.stabilized_at,
        flag: c.value.is_none().then(|| "not stabilized within depth".to_string()),
    }
}

fn agreement_text(a: Agreement) -> &'static str {
    match a {
        Agreement::Agree => "agree",
        Agreement::Disagree => "disagree",
        Agreement::NotAsserted => "not-asserted",
        Agreement::Undetermined => "undetermined",
    }
}

pub fn comparison_body(r: &CtsContReport) -> Body {
    Body::Comparison {
        s: r.s,
        agreement: agreement_text(r.agreement).into(),
        details: r.details.clone(),
        ml: (&r.ml).into(),
        cts: r.cts.as_ref().ok().map(AssembledDto::from),
        cts_error: r.cts.as_ref().err().map(|e| e.to_string()),
        cont: (&r.cont).into(),
    }
}

pub fn page_body(model: &str, p: &E2Page) -> Body {
    Body::Page {
        model: model.into(),
        s_max: p.s_max,
        t_min: p.t_min,
        t_max: p.t_max,
        cells: p.cells.iter().map(CellDto::from).collect(),
    }
}

fn verdict_text(v: &CellVerdict) -> (&'static str, Option<String>) {
    match v {
        CellVerdict::Equal => ("equal", None),
        CellVerdict::Differs(w) => ("differs", Some(w.clone())),
        CellVerdict::Undetermined => ("undetermined", None),
    }
}

pub fn e2_comparison_body(c: &E2Comparison) -> Body {
    Body::E2Comparison {
        all_ml: c.all_ml,
        violations: c.violations(),
        cells: c
            .cells
            .iter()
            .map(|x| {
                let (verdict, witness) = verdict_text(&x.verdict);
                CellComparisonDto {
                    s: x.s,
                    t: x.t,
                    verdict: verdict.into(),
                    witness,
                    descent: x.descent.value.to_string(),
                    jannsen: x.jannsen.value.to_string(),
                }
            })
            .collect(),
    }
}

pub fn counterexample_body(r: &CounterexampleReport) -> Body {
    Body::Counterexample {
        lim1_of_tower: lim1_text(r.lim1_of_tower),
        rows: r
            .rows
            .iter()
            .map(|row| CounterexampleRowDto {
                s: row.s,
                expected: row.expected.clone(),
                holds: row.holds,
                value: (&row.value).into(),
            })
            .collect(),
    }
}

fn table(out: &mut String, header: &[&str], rows: &[Vec<String>]) {
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| -> String {
        let parts: Vec<String> =
            cells.iter().zip(&width).map(|(c, w)| format!("{}{}", c, " ".repeat(w - c.chars().count()))).collect();
        parts.join("  ").trim_end().to_string()
    };
    let _ = writeln!(out, "{}", line(header.to_vec()));
    let _ = writeln!(
        out,
        "{}",
        line(width.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().iter().map(|s| s.as_str()).collect())
    );
    for r in rows {
        let _ = writeln!(out, "{}", line(r.iter().map(|s| s.as_str()).collect()));
    }
}

fn opt(s: &Option<String>) -> String {
    s.clone().unwrap_or_else(|| "-".into())
}

fn ml_short(m: &MlDto) -> String {
    match m {
        MlDto::Certified { k } => format!("ML (k={})", k),
        MlDto::NotMl { witness } => format!("not ML (witness at level {})", witness.base_level),
        MlDto::Undetermined { horizon } => format!("undetermined (horizon {})", horizon),
    }
}

fn render_body(out: &mut String, body: &Body) {
    match body {
        Body::Finite { s, level, group } => {
            table(out, &["s", "level", "H^s"], &[vec![s.to_string(), level.to_string(), group.text.clone()]]);
        }
        Body::Colimit { s, first_level, levels, inflation_isomorphisms, value, stabilized_at, flag } => {
            let rows: Vec<Vec<String>> = levels
                .iter()
                .enumerate()
                .map(|(k, g)| {
                    let iso = inflation_isomorphisms
                        .get(k)
                        .map_or("-".into(), |b| if *b { "iso" } else { "not iso" }.to_string());
                    vec![(first_level + k).to_string(), g.text.clone(), iso]
                })
                .collect();
            table(out, &["level", &format!("H^{}", s), "inflation onward"], &rows);
            let _ = writeln!(
                out,
                "value: {}  stabilized at: {}  flag: {}",
                value.as_ref().map_or("-".into(), |g| g.text.clone()),
                stabilized_at.map_or("-".into(), |l| l.to_string()),
                opt(flag)
            );
        }
        Body::Assembled { s, value } => {
            table(out, &ASSEMBLED_HEADER, &[assembled_row(*s, value)]);
        }
        Body::Comparison { details, .. } => {
            table(out, &COMPARISON_HEADER, &[comparison_row(body).unwrap_or_default()]);
            let _ = writeln!(out, "{}", details);
        }
        Body::Page { model, cells, .. } => {
            let _ = writeln!(out, "model: {}", model);
            let rows: Vec<Vec<String>> =
                cells.iter().map(|c| vec![c.s.to_string(), c.t.to_string(), c.value.clone(), opt(&c.flag)]).collect();
            table(out, &["s", "t", "E2", "flag"], &rows);
        }
        Body::E2Comparison { all_ml, violations, cells } => {
            let _ = writeln!(out, "all homotopy towers ML: {}  violations: {:?}", all_ml, violations);
            let rows: Vec<Vec<String>> = cells
                .iter()
                .map(|c| {
                    vec![
                        c.s.to_string(),
                        c.t.to_string(),
                        c.verdict.clone(),
                        c.descent.clone(),
                        c.jannsen.clone(),
                        opt(&c.witness),
                    ]
                })
                .collect();
            table(out, &["s", "t", "verdict", "descent", "continuous", "witness"], &rows);
        }
        Body::Counterexample { lim1_of_tower, rows } => {
            let _ = writeln!(out, "lim¹ of the module tower: {}", lim1_of_tower);
            let rows: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.s.to_string(),
                        r.value.value.clone(),
                        r.expected.clone(),
                        r.holds.map_or("undetermined".into(), |h| if h { "holds" } else { "FAILS" }.to_string()),
                    ]
                })
                .collect();
            table(out, &["s", "H^s_cont", "expected", "check"], &rows);
        }
        Body::Verification { items } => {
            let rows: Vec<Vec<String>> = items
                .iter()
                .map(|i| {
                    vec![
                        i.item.to_string(),
                        if i.pass { "PASS" } else { "FAIL" }.into(),
                        i.name.clone(),
                        i.detail.clone(),
                    ]
                })
                .collect();
            table(out, &["item", "result", "criterion", "detail"], &rows);
        }
        Body::Failed { s, error } => {
            let _ = writeln!(out, "s = {}: error: {}", s.map_or("-".into(), |s| s.to_string()), error);
        }
    }
}

const COMPARISON_HEADER: [&str; 5] = ["s", "agreement", "module tower", "H_cts", "H_cont"];

fn comparison_row(body: &Body) -> Option<Vec<String>> {
    match body {
        Body::Comparison { s, agreement, ml, cts, cts_error, cont, .. } => Some(vec![
            s.to_string(),
            agreement.clone(),
            ml_short(ml),
            cts.as_ref().map(|a| a.value.clone()).or(cts_error.clone()).unwrap_or_default(),
            cont.value.clone(),
        ]),
        _ => None,
    }
}

const ASSEMBLED_HEADER: [&str; 6] = ["s", "value", "flag", "lim¹ part", "lim part", "ML of lim tower"];

fn assembled_row(s: usize, a: &AssembledDto) -> Vec<String> {
    vec![
        s.to_string(),
        a.value.clone(),
        opt(&a.flag),
        a.sub.lim1.clone(),
        lim_short(&a.quotient.lim),
        ml_short(&a.quotient.ml),
    ]
}

/// Human-readable rendering; per-degree results of one request share a table.
pub fn render_table(r: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "prodesc {} ({})", r.command, r.schema);
    let mut k = 0;
    while k < r.results.len() {
        let head = &r.results[k];
        let end = k + r.results[k..].iter().take_while(|x| x.request == head.request).count();
        let group = &r.results[k..end];
        let _ = writeln!(out, "\n[{}] {}", head.request, head.name);
        if group.iter().all(|x| matches!(x.body, Body::Finite { .. })) {
            let rows: Vec<Vec<String>> = group
                .iter()
                .filter_map(|x| match &x.body {
                    Body::Finite { s, level, group } => {
                        Some(vec![s.to_string(), level.to_string(), group.text.clone()])
                    }
                    _ => None,
                })
                .collect();
            table(&mut out, &["s", "level", "H^s"], &rows);
        } else if group.iter().all(|x| matches!(x.body, Body::Assembled { .. })) {
            let rows: Vec<Vec<String>> = group
                .iter()
                .filter_map(|x| match &x.body {
                    Body::Assembled { s, value } => Some(assembled_row(*s, value)),
                    _ => None,
                })
                .collect();
            table(&mut out, &ASSEMBLED_HEADER, &rows);
        } else if group.iter().all(|x| matches!(x.body, Body::Comparison { .. })) {
            let rows: Vec<Vec<String>> = group.iter().filter_map(|x| comparison_row(&x.body)).collect();
            table(&mut out, &COMPARISON_HEADER, &rows);
            let mut seen: Vec<&str> = Vec::new();
            for x in group {
                if let Body::Comparison { details, .. } = &x.body {
                    if !seen.contains(&details.as_str()) {
                        seen.push(details);
                        let _ = writeln!(out, "{}", details);
                    }
                }
            }
        } else {
            for x in group {
                render_body(&mut out, &x.body);
            }
        }
        k = end;
    }
    for w in &r.warnings {
        let _ = writeln!(out, "warning: {}", w);
    }
    out
}

fn lim_short(l: &LimDto) -> String {
    match l {
        LimDto::Group { group } => group.text.clone(),
        LimDto::ProObject => "pro-object".into(),
        LimDto::Undetermined => "undetermined".into(),
    }
}

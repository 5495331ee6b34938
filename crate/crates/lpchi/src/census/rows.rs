//! Census rows, the runner and its report.

use rayon::prelude::*;
use serde::Serialize;

use super::coset::SuborbitChoice;
use super::groups;
use super::search::{search_witness, Ambient, Witness};
use crate::classify::{bound_check, dispatch, gv_star_structure, BoundCheck, StructuralReport};
use crate::constructions::{projective_group, symmetric, wreath, ProjectiveFamily};
use crate::error::{Error, Result};
use crate::permgroup::pgroup::sylow_subgroup;
use crate::px::recognize_px;
use crate::Budget;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Table {
    Table1,
    Table5,
}

/// Distinct generators in first-occurrence order.
fn generator_strings(gens: &[crate::perm::Permutation]) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for s in gens.iter().map(|x| x.to_string()) {
        if !out.contains(&s) {
            out.push(s);
        }
    }
    out
}

/// Which rows to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowSet {
    Table5,
    Table1Small,
    All,
}

impl std::str::FromStr for RowSet {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table5" => Ok(RowSet::Table5),
            "table1-small" => Ok(RowSet::Table1Small),
            "all" => Ok(RowSet::All),
            _ => Err(Error::InvalidParams(format!("unknown row set {s:?}; expected table5, table1-small or all"))),
        }
    }
}

impl RowSet {
    pub fn name(self) -> &'static str {
        match self {
            RowSet::Table5 => "table5",
            RowSet::Table1Small => "table1-small",
            RowSet::All => "all",
        }
    }
}

/// An ambient group to search.
pub struct Candidate {
    pub ambient: Ambient,
    /// Ruled out by the row; a witness here fails the row.
    pub excluded: bool,
    /// Diagnostic only; never affects the row status.
    pub probe: bool,
}

type Builder = fn() -> Result<Vec<Candidate>>;

pub enum Source {
    Search(Builder),
    Skip(&'static str),
}

pub struct CensusRow {
    pub label: &'static str,
    pub table: Table,
    pub p: u64,
    pub chi: u32,
    pub vertices: u64,
    pub gv_order: u64,
    pub group: &'static str,
    pub comment: Option<&'static str>,
    pub cross_link: Option<&'static str>,
    pub source: Source,
}

fn yes(label: &str, g: crate::PermGroup) -> Candidate {
    Candidate { ambient: Ambient::new(label, g), excluded: false, probe: false }
}

fn cand(ambient: Ambient, excluded: bool) -> Candidate {
    Candidate { ambient, excluded, probe: false }
}

fn one(label: &str, g: Result<crate::PermGroup>) -> Result<Vec<Candidate>> {
    Ok(vec![yes(label, g?)])
}

fn pgammal29_sylow_wreath() -> Result<crate::PermGroup> {
    let h = projective_group(ProjectiveFamily::PGammaL2, 9)?;
    wreath(&sylow_subgroup(&h, 2, 10_000)?, &symmetric(2)?)
}

fn tut_index_two(excluded: &[&str]) -> Result<Vec<Candidate>> {
    Ok(groups::pgammal29_and_index_two()?.into_iter().filter(|(l, _)| l != "pgammal2(9)").map(|(l, g)| cand(Ambient::new(l.clone(), g), excluded.contains(&l.as_str()))).collect())
}

fn ag_f6() -> Result<Vec<Candidate>> {
    one("sym3 wr sym2", groups::sym3_wr_sym2())
}
fn sym5() -> Result<Vec<Candidate>> {
    one("sym5", symmetric(5))
}
fn pgl27() -> Result<Vec<Candidate>> {
    one("pgl2(7)", projective_group(ProjectiveFamily::Pgl2, 7))
}
fn signed_affine() -> Result<Vec<Candidate>> {
    one("signed affine F3^3", groups::signed_affine_333())
}
fn pgl27_c2() -> Result<Vec<Candidate>> {
    let probe = Candidate { ambient: Ambient::new("psl2(7) : c4", groups::psl27_by_c4()?), excluded: false, probe: true };
    Ok(vec![yes("pgl2(7) x c2", groups::pgl27_times_c2()?), probe])
}
fn tut_small() -> Result<Vec<Candidate>> {
    tut_index_two(&["psigmal2(9)"])
}
fn pgammal29() -> Result<Vec<Candidate>> {
    one("pgammal2(9)", projective_group(ProjectiveFamily::PGammaL2, 9))
}
fn sym6_c4() -> Result<Vec<Candidate>> {
    one("sym6 : c4", groups::sym6_by_c4())
}
fn aag_tut() -> Result<Vec<Candidate>> {
    let hint = pgammal29_sylow_wreath()?;
    Ok(groups::pgammal29_wreath_index_two()?.into_iter().map(|(l, g)| cand(Ambient::new(l.clone(), g).with_hint(hint.clone()), l == "pgammal2(9)^2")).collect())
}
fn pgammal29_wr() -> Result<Vec<Candidate>> {
    let hint = pgammal29_sylow_wreath()?;
    Ok(vec![cand(Ambient::new("pgammal2(9) wr sym2", groups::pgammal29_wreath()?).with_hint(hint), false)])
}
fn pgl27_wr_index_two() -> Result<Vec<Candidate>> {
    Ok(groups::pgl27_wreath_index_two()?.into_iter().map(|(l, g)| cand(Ambient::new(l.clone(), g), l != "ker(psl2(7)+psl2(7))")).collect())
}
fn psl25_wr() -> Result<Vec<Candidate>> {
    one("psl2(5) wr sym2", groups::psl2_wreath(5))
}
fn psl27_wr() -> Result<Vec<Candidate>> {
    one("psl2(7) wr sym2", groups::psl2_wreath(7))
}
fn psl211_wr() -> Result<Vec<Candidate>> {
    one("psl2(11) wr sym2", groups::psl2_wreath(11))
}
fn psl213_wr() -> Result<Vec<Candidate>> {
    one("psl2(13) wr sym2", groups::psl2_wreath(13))
}

const NO_G23: &str = "constructor out of scope: G2(3)";
const NO_PSL3: &str = "constructor out of scope: PSL3(p) extended by the graph automorphism";

macro_rules! row {
    ($label:expr, $table:ident, $p:expr, $chi:expr, $v:expr, $gv:expr, $group:expr, $comment:expr, $link:expr, $src:expr) => {
        CensusRow { label: $label, table: Table::$table, p: $p, chi: $chi, vertices: $v, gv_order: $gv, group: $group, comment: $comment, cross_link: $link, source: $src }
    };
}

/// Every row of both tables.
pub fn all_rows() -> Vec<CensusRow> {
    use Source::{Search, Skip};
    vec![
        row!("table5/AG(F6)", Table5, 2, 1, 18, 4, "C3^2 : D4", None, None, Search(ag_f6)),
        row!("table5/AG(Pet)", Table5, 2, 1, 30, 4, "Sym(5)", None, None, Search(sym5)),
        row!("table5/AG(Hea)", Table5, 2, 1, 42, 8, "PGL2(7)", None, None, Search(pgl27)),
        row!("table5/C^{+-1}(3,3,3)", Table5, 2, 1, 81, 8, "(C3^3 : C2) : Alt(4)", Some("witness group built from its normal structure"), None, Search(signed_affine)),
        row!("table5/HC(Hea)", Table5, 2, 1, 84, 8, "PGL2(7) x C2", None, None, Search(pgl27_c2)),
        row!("table5/AG(Tut)/gv8", Table5, 2, 1, 90, 8, "|PGammaL2(9):G| = 2", Some("G != Sym(6)"), None, Search(tut_small)),
        row!("table5/AG(Tut)/gv16", Table5, 2, 1, 90, 16, "PGammaL2(9)", None, None, Search(pgammal29)),
        row!("table5/HC(Tut)", Table5, 2, 1, 180, 16, "Sym(6) : C4", None, None, Search(sym6_c4)),
        row!("table5/AAG(Tut)", Table5, 2, 1, 8100, 256, "|PGammaL2(9) wr Sym(2):G| = 2", Some("G != PGammaL2(9)^2"), None, Search(aag_tut)),
        row!("table1/p2/chi1/v30", Table1, 2, 1, 30, 4, "Sym(5)", None, Some("table5/AG(Pet)"), Search(sym5)),
        row!("table1/p2/chi1/v42", Table1, 2, 1, 42, 8, "PSL3(2) : <iota> = PGL2(7)", Some("iota graph aut."), Some("table5/AG(Hea)"), Search(pgl27)),
        row!("table1/p2/chi1/v90/gv8", Table1, 2, 1, 90, 8, "|PGammaL2(9):G| = 2", Some("G != Sym(6)"), Some("table5/AG(Tut)/gv8"), Search(tut_small)),
        row!("table1/p2/chi1/v90/gv16", Table1, 2, 1, 90, 16, "PGammaL2(9)", None, Some("table5/AG(Tut)/gv16"), Search(pgammal29)),
        row!("table1/p2/chi1/v8100", Table1, 2, 1, 8100, 256, "|PGammaL2(9) wr Sym(2):G| = 2", Some("G != PGammaL2(9)^2"), Some("table5/AAG(Tut)"), Search(aag_tut)),
        row!("table1/p3/chi1/v11648", Table1, 3, 1, 11648, 729, "Aut(G2(3))", None, None, Skip(NO_G23)),
        row!("table1/p3/chi1/v416", Table1, 3, 1, 416, 27, "PSL3(3) : <iota>", Some("iota graph aut."), None, Skip(NO_PSL3)),
        row!("table1/p7/chi1/v10944", Table1, 7, 1, 10944, 343, "PSL3(7) : <iota>", Some("iota graph aut."), None, Skip(NO_PSL3)),
        row!("table1/p5/chi1/v288", Table1, 5, 1, 288, 25, "PSL2(5) wr Sym(2)", None, None, Search(psl25_wr)),
        row!("table1/p7/chi1/v1152", Table1, 7, 1, 1152, 49, "PSL2(7) wr Sym(2)", None, None, Search(psl27_wr)),
        row!("table1/p2/chi2/v15", Table1, 2, 2, 15, 8, "Sym(5)", None, None, Search(sym5)),
        row!("table1/p2/chi2/v45/gv16", Table1, 2, 2, 45, 16, "|PGammaL2(9):G| = 2", Some("G != Sym(6)"), None, Search(tut_small)),
        row!("table1/p2/chi2/v45/gv32", Table1, 2, 2, 45, 32, "PGammaL2(9)", None, None, Search(pgammal29)),
        row!("table1/p2/chi2/v90", Table1, 2, 2, 90, 16, "PGammaL2(9)", None, None, Search(pgammal29)),
        row!("table1/p2/chi2/v8100", Table1, 2, 2, 8100, 512, "PGammaL2(9) wr Sym(2)", None, None, Search(pgammal29_wr)),
        row!("table1/p3/chi2/v5824", Table1, 3, 2, 5824, 1458, "Aut(G2(3))", None, None, Skip(NO_G23)),
        row!("table1/p7/chi2/v1152", Table1, 7, 2, 1152, 98, "|PGL2(7) wr Sym(2):G| = 2", Some("G != PGL2(7)^2, G/N not cyclic"), None, Search(pgl27_wr_index_two)),
        row!("table1/p2/chi2/v21", Table1, 2, 2, 21, 16, "PSL3(2) : <iota> = PGL2(7)", Some("iota graph aut."), None, Search(pgl27)),
        row!("table1/p3/chi2/v208", Table1, 3, 2, 208, 54, "PSL3(3) : <iota>", Some("iota graph aut."), None, Skip(NO_PSL3)),
        row!("table1/p5/chi2/v2976", Table1, 5, 2, 2976, 250, "PSL3(5) : <iota>", Some("iota graph aut."), None, Skip(NO_PSL3)),
        row!("table1/p7/chi2/v5472", Table1, 7, 2, 5472, 686, "PSL3(7) : <iota>", Some("iota graph aut."), None, Skip(NO_PSL3)),
        row!("table1/p13/chi2/v122976", Table1, 13, 2, 122976, 4394, "PSL3(13) : <iota>", Some("iota graph aut."), None, Skip(NO_PSL3)),
        row!("table1/p5/chi2/v144", Table1, 5, 2, 144, 50, "PSL2(5) wr Sym(2)", None, None, Search(psl25_wr)),
        row!("table1/p7/chi2/v576", Table1, 7, 2, 576, 98, "PSL2(7) wr Sym(2)", None, None, Search(psl27_wr)),
        row!("table1/p11/chi2/v3600", Table1, 11, 2, 3600, 242, "PSL2(11) wr Sym(2)", None, None, Search(psl211_wr)),
        row!("table1/p13/chi2/v7056", Table1, 13, 2, 7056, 338, "PSL2(13) wr Sym(2)", None, None, Search(psl213_wr)),
    ]
}

pub fn rows(set: RowSet) -> Vec<CensusRow> {
    all_rows()
        .into_iter()
        .filter(|r| match set {
            RowSet::Table5 => r.table == Table::Table5,
            RowSet::Table1Small => r.table == Table::Table1,
            RowSet::All => true,
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RowStatus {
    Verified,
    Skipped { reason: String },
    Failed { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CandidateReport {
    pub group: String,
    pub order: String,
    pub excluded: bool,
    pub probe: bool,
    pub subgroups: usize,
    pub examined: usize,
    pub witness_found: bool,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub group: String,
    pub group_order: String,
    pub group_degree: usize,
    pub group_generators: Vec<String>,
    pub subgroup_order: String,
    pub subgroup_generators: Vec<String>,
    /// Coset representative of the chosen suborbit's least member.
    pub connector: String,
    pub suborbit: SuborbitChoice,
    pub suborbit_length: usize,
    pub suborbit_count: usize,
    pub vertices: usize,
    pub edges: usize,
    pub gv_order: String,
    pub gv_star_order: String,
    /// `|V|·|G_v| = |G|`.
    pub order_identity: bool,
    pub bound: BoundCheck,
    pub battery: StructuralReport,
    pub px_recognised: bool,
    /// Outcome kind of the classification dispatch, or its error.
    pub dispatch: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RowReport {
    pub label: String,
    pub table: Table,
    pub p: u64,
    pub chi: u32,
    pub vertices: u64,
    pub gv_order: u64,
    pub group: String,
    pub comment: Option<String>,
    pub cross_link: Option<String>,
    pub status: RowStatus,
    pub candidates: Vec<CandidateReport>,
    pub witness: Option<WitnessReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkipEntry {
    pub label: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BudgetReport {
    pub enumeration: u64,
    pub automorphism_vertices: usize,
    pub coset_degree: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub verified: usize,
    pub skipped: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub version: u32,
    pub rows_selected: String,
    pub budget: BudgetReport,
    pub summary: Summary,
    pub rows: Vec<RowReport>,
}

impl CensusReport {
    pub fn skips(&self) -> Vec<SkipEntry> {
        self.rows
            .iter()
            .filter_map(|r| match &r.status {
                RowStatus::Skipped { reason } => Some(SkipEntry { label: r.label.clone(), reason: reason.clone() }),
                _ => None,
            })
            .collect()
    }

    pub fn row(&self, label: &str) -> Option<&RowReport> {
        self.rows.iter().find(|r| r.label == label)
    }
}

fn witness_report(label: &str, w: &Witness, budget: &Budget) -> Result<WitnessReport> {
    let ctx = &w.pair;
    let g = ctx.group();
    let sub = &w.suborbits[match w.choice {
        SuborbitChoice::SelfPaired { index } | SuborbitChoice::Paired { index } => index,
    }];
    let dispatch = match dispatch(ctx, budget) {
        Ok(r) => r.terminal().kind().to_string(),
        Err(e) => format!("error: {e}"),
    };
    Ok(WitnessReport {
        group: label.to_string(),
        group_order: g.order().to_string(),
        group_degree: g.degree(),
        group_generators: generator_strings(g.generators()),
        subgroup_order: w.subgroup.order().to_string(),
        subgroup_generators: generator_strings(w.subgroup.generators()),
        connector: w.space.representative(sub.representative).to_string(),
        suborbit: w.choice,
        suborbit_length: sub.length,
        suborbit_count: w.suborbits.len(),
        vertices: ctx.vertex_count(),
        edges: ctx.graph().edge_count(),
        gv_order: ctx.gv().order().to_string(),
        gv_star_order: ctx.gv_star().order().to_string(),
        order_identity: num_bigint::BigUint::from(ctx.vertex_count()) * ctx.gv().order() == *g.order(),
        bound: bound_check(ctx),
        battery: gv_star_structure(ctx, budget)?,
        px_recognised: recognize_px(ctx, budget)?.is_some(),
        dispatch,
    })
}

/// Reason the row fails, if any.
fn judge(row: &CensusRow, cands: &[CandidateReport], w: Option<&WitnessReport>) -> Option<String> {
    if let Some(c) = cands.iter().find(|c| !c.probe && c.error.is_some()) {
        return Some(format!("{}: {}", c.group, c.error.as_deref().unwrap_or_default()));
    }
    if let Some(c) = cands.iter().find(|c| c.excluded && c.witness_found) {
        return Some(format!("unexpected witness in {}", c.group));
    }
    let Some(w) = w else { return Some("no witness found".into()) };
    let checks = [
        (w.vertices as u64 == row.vertices, "vertex count"),
        (w.gv_order == row.gv_order.to_string(), "stabiliser order"),
        (w.order_identity, "|V|·|G_v| = |G|"),
        (!w.bound.met, "bound not met"),
        (w.battery.all_ok(), "G_v* battery"),
        (!w.px_recognised, "not a Praeger-Xu pair"),
    ];
    checks.iter().find(|(ok, _)| !ok).map(|(_, what)| format!("witness check failed: {what}"))
}

pub fn run_row(row: &CensusRow, budget: &Budget) -> RowReport {
    let mut report = RowReport {
        label: row.label.to_string(),
        table: row.table,
        p: row.p,
        chi: row.chi,
        vertices: row.vertices,
        gv_order: row.gv_order,
        group: row.group.to_string(),
        comment: row.comment.map(str::to_string),
        cross_link: row.cross_link.map(str::to_string),
        status: RowStatus::Verified,
        candidates: Vec::new(),
        witness: None,
    };
    let build = match row.source {
        Source::Skip(reason) => {
            report.status = RowStatus::Skipped { reason: reason.to_string() };
            return report;
        }
        Source::Search(b) => b,
    };
    let cands = match build() {
        Ok(c) => c,
        Err(e) => {
            report.status = RowStatus::Failed { reason: format!("group construction: {e}") };
            return report;
        }
    };
    for c in cands {
        let amb = &c.ambient;
        let mut cr = CandidateReport {
            group: amb.label.clone(),
            order: amb.group.order().to_string(),
            excluded: c.excluded,
            probe: c.probe,
            subgroups: 0,
            examined: 0,
            witness_found: false,
            error: None,
        };
        match search_witness(amb, row.p, row.chi, row.gv_order, budget) {
            Ok(out) => {
                cr.subgroups = out.candidates;
                cr.examined = out.examined;
                cr.witness_found = out.witness.is_some();
                if let (Some(w), None, false) = (&out.witness, &report.witness, c.probe) {
                    match witness_report(&amb.label, w, budget) {
                        Ok(wr) => report.witness = Some(wr),
                        Err(e) => cr.error = Some(e.to_string()),
                    }
                }
            }
            Err(e) => cr.error = Some(e.to_string()),
        }
        report.candidates.push(cr);
    }
    if let Some(reason) = judge(row, &report.candidates, report.witness.as_ref()) {
        report.status = RowStatus::Failed { reason };
    }
    report
}

/// Runs `rows` on the current rayon pool; rows are sorted by label.
pub fn run_census(rows: &[CensusRow], set_name: &str, budget: &Budget) -> CensusReport {
    let mut out: Vec<RowReport> = rows.par_iter().map(|r| run_row(r, budget)).collect();
    out.sort_by(|a, b| a.label.cmp(&b.label));
    let count = |f: fn(&RowStatus) -> bool| out.iter().filter(|r| f(&r.status)).count();
    let summary = Summary {
        verified: count(|s| matches!(s, RowStatus::Verified)),
        skipped: count(|s| matches!(s, RowStatus::Skipped { .. })),
        failed: count(|s| matches!(s, RowStatus::Failed { .. })),
    };
    CensusReport {
        version: 1,
        rows_selected: set_name.to_string(),
        budget: BudgetReport { enumeration: budget.enumeration, automorphism_vertices: budget.automorphism_vertices, coset_degree: budget.coset_degree },
        summary,
        rows: out,
    }
}

//! Command plumbing: every CLI command produces a Report that renders as a
//! human table, as JSON, or as CSV with '#' metadata lines. The machine
//! formats parse back losslessly, and identical inputs give byte-identical
//! machine output across runs. Strand counts are capped by a cell-count
//! estimate; refusing early beats running out of memory.

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::{same_homology, HomologyGroup, QPolynomial};
use crate::complex::{brute_homology, enumerate_cells, Cell};
use crate::error::{Error, Result};
use crate::formulas::{betti_polynomial, euler_gf, euler_polynomial, BettiPolynomial};
use crate::graph::Graph;
use crate::layout::{build_layout, build_layout_for, LabeledTree};
use crate::morse::{
    cell_count_bound, classify, commutation_probe, critical_cells, morse_differential,
    morse_homology, sg_action, Classification, CriticalCell,
};
use crate::parse::parse_graph;

/// Cap on the estimated cell count when only the reduced complex is built.
const MORSE_CELL_CAP: u128 = 2_000_000;
/// Cap when the full cubical complex has to be enumerated or stored.
const FULL_COMPLEX_CAP: u128 = 300_000;

const EULER_SIGN_NOTE: &str = "each numerator factor is (1 - (deg(v) - 1) t); \
the plus-sign variant of this vertex factor fails the chi cross-checks \
(tripod at n = 2 gives 3 instead of 0), so the minus sign is used";

const PROBE_NOTE: &str =
    "experimental: commutation findings are reported, never asserted";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellClass {
    Critical,
    Redundant,
    Collapsible,
}

impl CellClass {
    fn name(self) -> &'static str {
        match self {
            CellClass::Critical => "critical",
            CellClass::Redundant => "redundant",
            CellClass::Collapsible => "collapsible",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDto {
    pub i: usize,
    pub free_rank: usize,
    /// Invariant factors > 1 as decimal strings, each dividing the next.
    pub torsion: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiPayload {
    pub n: usize,
    pub only_i: Option<usize>,
    pub brute_checked: bool,
    pub groups: Vec<GroupDto>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyDto {
    pub i: usize,
    pub delta: usize,
    pub valid_from: usize,
    pub degree: Option<usize>,
    /// Exact coefficients, ascending exponent, as numerator/denominator pairs.
    pub coeffs: Vec<(String, String)>,
    pub binomial_form: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyPayload {
    pub i_max: usize,
    pub polys: Vec<PolyDto>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiDto {
    pub n: usize,
    pub chi: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerPayload {
    pub gf_num: Vec<(String, String)>,
    pub gf_denom_pow: usize,
    pub values: Vec<ChiDto>,
    pub poly_coeffs: Option<Vec<(String, String)>>,
    pub poly_degree: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellDto {
    /// Edge ids in the canonical (label-rank) order of the cell.
    pub edges: Vec<usize>,
    pub verts: Vec<usize>,
    pub class: String,
    pub pair_vertex: Option<usize>,
    pub pair_edge: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellsPayload {
    pub n: usize,
    pub i: usize,
    pub class: String,
    pub total_cells: usize,
    pub cells: Vec<CellDto>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayoutRow {
    pub label: usize,
    pub vertex: usize,
    pub parent_label: Option<usize>,
    pub parent_edge: Option<usize>,
    pub degree: usize,
    pub essential: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayoutPayload {
    pub n_vertices: usize,
    pub n_edges: usize,
    pub is_tree: bool,
    pub root_vertex: usize,
    pub deleted_edges: Vec<usize>,
    pub essential_edges: usize,
    pub rows: Vec<LayoutRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckDto {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyPayload {
    pub n_max: usize,
    pub i_max: usize,
    pub passed: bool,
    pub checks: Vec<CheckDto>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDto {
    pub coef: String,
    pub edges: Vec<usize>,
    pub verts: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MismatchDto {
    pub degree: usize,
    pub essential_edge: usize,
    pub cell_edges: Vec<usize>,
    pub cell_verts: Vec<usize>,
    pub lhs: Vec<TermDto>,
    pub rhs: Vec<TermDto>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbePayload {
    pub i: usize,
    pub n_max: usize,
    pub checked: usize,
    pub mismatches: Vec<MismatchDto>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Payload {
    Betti(BettiPayload),
    Poly(PolyPayload),
    Euler(EulerPayload),
    Cells(CellsPayload),
    Layout(LayoutPayload),
    Verify(VerifyPayload),
    Probe(ProbePayload),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    /// Canonical echo of the computation arguments, e.g. "betti --n 2".
    pub command: String,
    pub input_sha256: String,
    pub warnings: Vec<String>,
    pub payload: Payload,
    /// Advisory timing; excluded from equality and from machine formats so
    /// identical inputs emit identical bytes.
    #[serde(skip)]
    pub elapsed_ms: u64,
}

impl PartialEq for Report {
    fn eq(&self, other: &Report) -> bool {
        self.command == other.command
            && self.input_sha256 == other.input_sha256
            && self.warnings == other.warnings
            && self.payload == other.payload
    }
}

fn digest(text: &str) -> String {
    let hash = Sha256::digest(text.as_bytes());
    hash.iter().map(|b| format!("{b:02x}")).collect()
}

fn finish(command: String, text: &str, warnings: Vec<String>, payload: Payload, start: Instant) -> Report {
    Report {
        command,
        input_sha256: digest(text),
        warnings,
        payload,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

fn check_workload(t: &LabeledTree, n: usize, cap: u128, what: &str) -> Result<()> {
    let bound = cell_count_bound(t, n);
    if bound > cap {
        return Err(Error::Refused(format!(
            "{what} at n = {n} could touch about {bound} cells (cap {cap}); use a smaller n"
        )));
    }
    Ok(())
}

fn group_dto(i: usize, h: &HomologyGroup) -> GroupDto {
    GroupDto {
        i,
        free_rank: h.free_rank,
        torsion: h.torsion.iter().map(|d| d.to_string()).collect(),
    }
}

fn group_display(free_rank: usize, torsion: &[String]) -> String {
    let mut parts = Vec::new();
    match free_rank {
        0 => {}
        1 => parts.push("Z".to_string()),
        r => parts.push(format!("Z^{r}")),
    }
    for d in torsion {
        parts.push(format!("Z/{d}"));
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

fn rat_pair(c: &BigRational) -> (String, String) {
    (c.numer().to_string(), c.denom().to_string())
}

fn poly_pairs(p: &QPolynomial) -> Vec<(String, String)> {
    p.coeffs().iter().map(rat_pair).collect()
}

/// Integer-valued polynomials in binomial basis: P(n) = sum_k c_k C(n, k)
/// with c_k the k-th forward difference of P at 0.
fn binomial_form(poly: &QPolynomial) -> String {
    let Some(deg) = poly.degree() else {
        return "0".to_string();
    };
    let mut terms: Vec<String> = Vec::new();
    for k in 0..=deg {
        let mut c = BigRational::zero();
        for j in 0..=k {
            let w = BigRational::from_integer(crate::formulas::binom_int(k, j));
            let pj = poly.eval_usize(j);
            if (k - j) % 2 == 0 {
                c += w * pj;
            } else {
                c -= w * pj;
            }
        }
        if c.is_zero() {
            continue;
        }
        let coef = if c.denom().is_one() {
            c.numer().to_string()
        } else {
            format!("{}/{}", c.numer(), c.denom())
        };
        terms.push(match (k, coef.as_str()) {
            (0, _) => coef,
            (_, "1") => format!("C(n, {k})"),
            (_, "-1") => format!("-C(n, {k})"),
            _ => format!("{coef} C(n, {k})"),
        });
    }
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = terms[0].clone();
    for term in &terms[1..] {
        match term.strip_prefix('-') {
            Some(rest) => {
                out.push_str(" - ");
                out.push_str(rest);
            }
            None => {
                out.push_str(" + ");
                out.push_str(term);
            }
        }
    }
    out
}

fn poly_dto(b: &BettiPolynomial) -> PolyDto {
    PolyDto {
        i: b.i,
        delta: b.delta,
        valid_from: b.valid_from,
        degree: b.poly.degree(),
        coeffs: poly_pairs(&b.poly),
        binomial_form: binomial_form(&b.poly),
    }
}

fn cell_edges_as_ids(t: &LabeledTree, cell: &Cell) -> Vec<usize> {
    cell.edges.iter().map(|&r| t.edge_of_rank(r)).collect()
}

fn cell_dto(t: &LabeledTree, cell: &Cell) -> CellDto {
    let (class, pair_vertex, pair_edge) = match classify(t, cell) {
        Classification::Critical => ("critical", None, None),
        Classification::Redundant { vertex } => ("redundant", Some(vertex), None),
        Classification::Collapsible { edge } => ("collapsible", None, Some(edge)),
    };
    CellDto {
        edges: cell_edges_as_ids(t, cell),
        verts: cell.verts.clone(),
        class: class.to_string(),
        pair_vertex,
        pair_edge,
    }
}

fn term_dtos(t: &LabeledTree, terms: &[(Cell, BigInt)]) -> Vec<TermDto> {
    terms
        .iter()
        .map(|(c, k)| TermDto {
            coef: k.to_string(),
            edges: cell_edges_as_ids(t, c),
            verts: c.verts.clone(),
        })
        .collect()
}

pub fn cmd_betti(text: &str, n: usize, only_i: Option<usize>, brute: bool) -> Result<Report> {
    let start = Instant::now();
    let g = parse_graph(text)?;
    let t = build_layout_for(&g, n)?;
    check_workload(&t, n, MORSE_CELL_CAP, "homology")?;
    let groups = morse_homology(&t, n)?;
    if brute {
        check_workload(&t, n, FULL_COMPLEX_CAP, "cubical cross-check")?;
        let raw = brute_homology(&t, n)?;
        if !same_homology(&groups, &raw) {
            return Err(Error::Internal(
                "reduced and cubical homology disagree".to_string(),
            ));
        }
    }
    let mut rows: Vec<GroupDto> = groups
        .iter()
        .enumerate()
        .map(|(i, h)| group_dto(i, h))
        .collect();
    if let Some(ii) = only_i {
        rows.retain(|r| r.i == ii);
        if rows.is_empty() {
            rows.push(GroupDto { i: ii, free_rank: 0, torsion: Vec::new() });
        }
    }
    let mut command = format!("betti --n {n}");
    if let Some(ii) = only_i {
        command.push_str(&format!(" --i {ii}"));
    }
    if brute {
        command.push_str(" --brute");
    }
    let payload = Payload::Betti(BettiPayload {
        n,
        only_i,
        brute_checked: brute,
        groups: rows,
    });
    Ok(finish(command, text, Vec::new(), payload, start))
}

pub fn cmd_poly(text: &str, i_max: usize) -> Result<Report> {
    let start = Instant::now();
    let g = parse_graph(text)?;
    let t = build_layout(&g)?;
    let mut polys = Vec::with_capacity(i_max + 1);
    for i in 0..=i_max {
        polys.push(poly_dto(&betti_polynomial(&t, i)?));
    }
    let payload = Payload::Poly(PolyPayload { i_max, polys });
    Ok(finish(format!("poly --i-max {i_max}"), text, Vec::new(), payload, start))
}

pub fn cmd_euler(text: &str, n_max: Option<usize>, poly: bool) -> Result<Report> {
    let start = Instant::now();
    let g = parse_graph(text)?;
    let gf = euler_gf(&g)?;
    let mut values = Vec::new();
    if let Some(nm) = n_max {
        for n in 0..=nm {
            values.push(ChiDto { n, chi: gf.coefficient(n).to_integer().to_string() });
        }
    }
    let (poly_coeffs, poly_degree) = if poly {
        let p = euler_polynomial(&g)?;
        (Some(poly_pairs(&p)), p.degree())
    } else {
        (None, None)
    };
    let mut command = String::from("euler");
    if let Some(nm) = n_max {
        command.push_str(&format!(" --n-max {nm}"));
    }
    if poly {
        command.push_str(" --poly");
    }
    let payload = Payload::Euler(EulerPayload {
        gf_num: poly_pairs(&gf.num),
        gf_denom_pow: gf.denom_pow,
        values,
        poly_coeffs,
        poly_degree,
    });
    Ok(finish(command, text, vec![EULER_SIGN_NOTE.to_string()], payload, start))
}

pub fn cmd_cells(text: &str, n: usize, i: usize, class: Option<CellClass>) -> Result<Report> {
    let start = Instant::now();
    let g = parse_graph(text)?;
    let t = build_layout_for(&g, n)?;
    check_workload(&t, n, FULL_COMPLEX_CAP, "cell listing")?;
    let all = enumerate_cells(&t, n, i)?;
    let total_cells = all.len();
    let filter = class.map(CellClass::name).unwrap_or("all");
    let cells: Vec<CellDto> = all
        .iter()
        .map(|c| cell_dto(&t, c))
        .filter(|d| class.is_none() || d.class == filter)
        .collect();
    let mut command = format!("cells --n {n} --i {i}");
    if class.is_some() {
        command.push_str(&format!(" --class {filter}"));
    }
    let payload = Payload::Cells(CellsPayload {
        n,
        i,
        class: filter.to_string(),
        total_cells,
        cells,
    });
    Ok(finish(command, text, Vec::new(), payload, start))
}

pub fn cmd_layout(text: &str) -> Result<Report> {
    let start = Instant::now();
    let g = parse_graph(text)?;
    let t = build_layout(&g)?;
    let nv = g.n_vertices();
    let rows: Vec<LayoutRow> = (0..nv)
        .map(|label| LayoutRow {
            label,
            vertex: t.vertex_of(label),
            parent_label: t.parent_label(label),
            parent_edge: t.parent_edge(label),
            degree: t.degree_of_label(label),
            essential: t.degree_of_label(label) >= 3,
        })
        .collect();
    let payload = Payload::Layout(LayoutPayload {
        n_vertices: nv,
        n_edges: g.n_edges(),
        is_tree: g.is_tree(),
        root_vertex: t.vertex_of(0),
        deleted_edges: t.deleted_edges().to_vec(),
        essential_edges: t.essential().essential_edges.len(),
        rows,
    });
    Ok(finish("layout".to_string(), text, Vec::new(), payload, start))
}

pub fn cmd_probe(text: &str, i: usize, n_max: usize) -> Result<Report> {
    let start = Instant::now();
    let g = parse_graph(text)?;
    // two arcs of headroom beyond the required n_max + 1: every action image
    // then fits its component, so short arcs cannot abort the probe
    let t = build_layout_for(&g, n_max + 3)?;
    check_workload(&t, n_max + 1, MORSE_CELL_CAP, "commutation probe")?;
    let probe = commutation_probe(&t, i, n_max)?;
    let mismatches: Vec<MismatchDto> = probe
        .mismatches
        .iter()
        .map(|m| MismatchDto {
            degree: m.degree,
            essential_edge: m.essential_edge,
            cell_edges: cell_edges_as_ids(&t, &m.cell.cell),
            cell_verts: m.cell.cell.verts.clone(),
            lhs: term_dtos(&t, &m.lhs),
            rhs: term_dtos(&t, &m.rhs),
        })
        .collect();
    let payload = Payload::Probe(ProbePayload {
        i,
        n_max,
        checked: probe.checked,
        mismatches,
    });
    Ok(finish(
        format!("probe --i {i} --n-max {n_max}"),
        text,
        vec![PROBE_NOTE.to_string()],
        payload,
        start,
    ))
}

struct VerifyCtx<'a> {
    t: &'a LabeledTree,
    n_max: usize,
    i_max: usize,
    /// Largest n whose full cubical complex fits under the enumeration cap.
    full_to: Option<usize>,
    /// Largest n the reduced pipeline may run to.
    morse_to: Option<usize>,
    homology: Vec<Vec<HomologyGroup>>,
}

fn cap_prefix(t: &LabeledTree, n_max: usize, cap: u128) -> Option<usize> {
    let mut top = None;
    for n in 0..=n_max {
        if cell_count_bound(t, n) > cap {
            break;
        }
        top = Some(n);
    }
    top
}

fn groups_display(groups: &[HomologyGroup]) -> String {
    let parts: Vec<String> = groups
        .iter()
        .map(|h| {
            let t: Vec<String> = h.torsion.iter().map(|d| d.to_string()).collect();
            group_display(h.free_rank, &t)
        })
        .collect();
    format!("[{}]", parts.join(", "))
}

fn check_morse_vs_cubical(ctx: &VerifyCtx) -> CheckDto {
    let name = "morse_equals_cubical_homology".to_string();
    let Some(top) = ctx.full_to else {
        return CheckDto {
            name,
            passed: true,
            detail: "skipped: even n = 0 exceeds the workload cap".to_string(),
        };
    };
    for n in 0..=top {
        let raw = match brute_homology(ctx.t, n) {
            Ok(h) => h,
            Err(e) => {
                return CheckDto { name, passed: false, detail: format!("n = {n}: {e}") }
            }
        };
        if !same_homology(&ctx.homology[n], &raw) {
            return CheckDto {
                name,
                passed: false,
                detail: format!(
                    "n = {n}: reduced {} != cubical {}",
                    groups_display(&ctx.homology[n]),
                    groups_display(&raw)
                ),
            };
        }
    }
    let mut detail = format!("ranks and torsion agree for n <= {top}");
    if top < ctx.n_max {
        detail.push_str(" (larger n over the enumeration cap)");
    }
    CheckDto { name, passed: true, detail }
}

fn check_partition(ctx: &VerifyCtx) -> CheckDto {
    let name = "classification_partitions_cells".to_string();
    let Some(top) = ctx.full_to else {
        return CheckDto {
            name,
            passed: true,
            detail: "skipped: even n = 0 exceeds the workload cap".to_string(),
        };
    };
    let mut cells_seen = 0usize;
    for n in 0..=top {
        // counts[i] = (total, critical, redundant, collapsible)
        let mut counts = vec![(0usize, 0usize, 0usize, 0usize); n + 2];
        for (i, slot) in counts.iter_mut().enumerate().take(n + 1) {
            let cells = match enumerate_cells(ctx.t, n, i) {
                Ok(c) => c,
                Err(e) => {
                    return CheckDto { name, passed: false, detail: format!("n = {n}: {e}") }
                }
            };
            for c in &cells {
                slot.0 += 1;
                match classify(ctx.t, c) {
                    Classification::Critical => slot.1 += 1,
                    Classification::Redundant { .. } => slot.2 += 1,
                    Classification::Collapsible { .. } => slot.3 += 1,
                }
            }
            cells_seen += cells.len();
        }
        for (i, &(total, crit, red, coll)) in counts.iter().enumerate() {
            if crit + red + coll != total {
                return CheckDto {
                    name,
                    passed: false,
                    detail: format!(
                        "n = {n}, i = {i}: {total} cells but {crit} + {red} + {coll} classified"
                    ),
                };
            }
            if i == 0 && coll != 0 {
                return CheckDto {
                    name,
                    passed: false,
                    detail: format!("n = {n}: {coll} collapsible 0-cells"),
                };
            }
            if i + 1 < counts.len() && red != counts[i + 1].3 {
                return CheckDto {
                    name,
                    passed: false,
                    detail: format!(
                        "n = {n}: {red} redundant {i}-cells vs {} collapsible {}-cells",
                        counts[i + 1].3,
                        i + 1
                    ),
                };
            }
        }
    }
    CheckDto {
        name,
        passed: true,
        detail: format!("pairing counts match over {cells_seen} cells, n <= {top}"),
    }
}

fn check_dimension_bound(ctx: &VerifyCtx, n_ess: usize) -> CheckDto {
    let name = "no_critical_cells_above_essential_count".to_string();
    let Some(top) = ctx.morse_to else {
        return CheckDto {
            name,
            passed: true,
            detail: "skipped: even n = 0 exceeds the workload cap".to_string(),
        };
    };
    for n in 0..=top {
        for i in n_ess + 1..=n {
            match critical_cells(ctx.t, n, i) {
                Ok(cells) if cells.is_empty() => {}
                Ok(cells) => {
                    return CheckDto {
                        name,
                        passed: false,
                        detail: format!(
                            "n = {n}, i = {i}: {} critical cells above the {n_ess} essential vertices",
                            cells.len()
                        ),
                    }
                }
                Err(e) => {
                    return CheckDto { name, passed: false, detail: format!("n = {n}: {e}") }
                }
            }
        }
    }
    CheckDto {
        name,
        passed: true,
        detail: format!("none in dimensions {} and up, n <= {top}", n_ess + 1),
    }
}

fn check_formula_counts(ctx: &VerifyCtx, is_tree: bool) -> CheckDto {
    let name = "betti_polynomial_counts_critical_cells".to_string();
    if !is_tree {
        return CheckDto {
            name,
            passed: true,
            detail: "skipped: closed forms need a tree".to_string(),
        };
    }
    let Some(top) = ctx.morse_to else {
        return CheckDto {
            name,
            passed: true,
            detail: "skipped: even n = 0 exceeds the workload cap".to_string(),
        };
    };
    for i in 0..=ctx.i_max {
        let b = match betti_polynomial(ctx.t, i) {
            Ok(b) => b,
            Err(e) => return CheckDto { name, passed: false, detail: format!("i = {i}: {e}") },
        };
        for n in 0..=top {
            let count = match critical_cells(ctx.t, n, i) {
                Ok(c) => c.len(),
                Err(e) => {
                    return CheckDto { name, passed: false, detail: format!("n = {n}: {e}") }
                }
            };
            if b.poly.eval_usize(n) != BigRational::from_integer(BigInt::from(count)) {
                return CheckDto {
                    name,
                    passed: false,
                    detail: format!(
                        "i = {i}, n = {n}: polynomial gives {}, enumeration gives {count}",
                        b.poly.eval_usize(n)
                    ),
                };
            }
        }
    }
    CheckDto {
        name,
        passed: true,
        detail: format!("exact match for i <= {} and n <= {top}", ctx.i_max),
    }
}

fn check_euler(ctx: &VerifyCtx, g: &Graph) -> CheckDto {
    let name = "euler_characteristic_consistency".to_string();
    let gf = match euler_gf(g) {
        Ok(gf) => gf,
        Err(Error::CircleHasNoSmoothingBase) => {
            return CheckDto {
                name,
                passed: true,
                detail: "skipped: a circle has no smoothing base".to_string(),
            }
        }
        Err(e) => return CheckDto { name, passed: false, detail: e.to_string() },
    };
    let Some(top) = ctx.morse_to else {
        return CheckDto {
            name,
            passed: true,
            detail: "skipped: even n = 0 exceeds the workload cap".to_string(),
        };
    };
    for n in 0..=top {
        let mut chi = BigRational::zero();
        for (i, h) in ctx.homology[n].iter().enumerate() {
            let r = BigRational::from_integer(BigInt::from(h.free_rank));
            if i % 2 == 0 {
                chi += r;
            } else {
                chi -= r;
            }
        }
        if chi != gf.coefficient(n) {
            return CheckDto {
                name,
                passed: false,
                detail: format!(
                    "n = {n}: alternating rank sum {chi} vs series coefficient {}",
                    gf.coefficient(n)
                ),
            };
        }
    }
    CheckDto { name, passed: true, detail: format!("chi matches the series for n <= {top}") }
}

fn check_action_generates(ctx: &VerifyCtx) -> CheckDto {
    let name = "action_reaches_every_high_degree_cell".to_string();
    let Some(top) = ctx.morse_to else {
        return CheckDto {
            name,
            passed: true,
            detail: "skipped: even n = 0 exceeds the workload cap".to_string(),
        };
    };
    let n_items = ctx.t.essential().essential_edges.len();
    let mut verified = 0usize;
    for i in 1..=ctx.i_max {
        for n in 2 * i + 1..=top {
            let prev = match critical_cells(ctx.t, n - 1, i) {
                Ok(c) => c,
                Err(e) => {
                    return CheckDto { name, passed: false, detail: format!("n = {n}: {e}") }
                }
            };
            let mut images: BTreeSet<Cell> = BTreeSet::new();
            for c in &prev {
                for ee in 0..n_items {
                    match sg_action(ctx.t, c, ee) {
                        Ok(a) => {
                            images.insert(a.cell);
                        }
                        Err(Error::ActionNeedsSubdivision) => {}
                        Err(e) => {
                            return CheckDto {
                                name,
                                passed: false,
                                detail: format!("n = {n}: {e}"),
                            }
                        }
                    }
                }
            }
            let cur: Vec<CriticalCell> = match critical_cells(ctx.t, n, i) {
                Ok(c) => c,
                Err(e) => {
                    return CheckDto { name, passed: false, detail: format!("n = {n}: {e}") }
                }
            };
            for c in &cur {
                if !images.contains(&c.cell) {
                    return CheckDto {
                        name,
                        passed: false,
                        detail: format!(
                            "i = {i}, n = {n}: a critical cell is not an action image"
                        ),
                    };
                }
                verified += 1;
            }
        }
    }
    CheckDto {
        name,
        passed: true,
        detail: format!("{verified} cells of degree above 2i are action images"),
    }
}

fn check_tree_differential(ctx: &VerifyCtx, is_tree: bool) -> CheckDto {
    let name = "tree_morse_differential_vanishes".to_string();
    if !is_tree {
        return CheckDto {
            name,
            passed: true,
            detail: "skipped: only guaranteed on trees".to_string(),
        };
    }
    let Some(top) = ctx.morse_to else {
        return CheckDto {
            name,
            passed: true,
            detail: "skipped: even n = 0 exceeds the workload cap".to_string(),
        };
    };
    for n in 0..=top {
        let rep = match morse_differential(ctx.t, n) {
            Ok(r) => r,
            Err(e) => return CheckDto { name, passed: false, detail: format!("n = {n}: {e}") },
        };
        for (i, b) in rep.boundaries.iter().enumerate() {
            if !b.is_zero() {
                return CheckDto {
                    name,
                    passed: false,
                    detail: format!("n = {n}: nonzero differential into dimension {i}"),
                };
            }
        }
    }
    CheckDto { name, passed: true, detail: format!("identically zero for n <= {top}") }
}

pub fn cmd_verify(text: &str, n_max: usize, i_max: usize) -> Result<Report> {
    let start = Instant::now();
    let g = parse_graph(text)?;
    let t = build_layout_for(&g, n_max)?;
    let is_tree = g.is_tree();
    let n_ess = g.essential_structure().essential_vertices.len();
    let full_to = cap_prefix(&t, n_max, FULL_COMPLEX_CAP);
    let morse_to = cap_prefix(&t, n_max, MORSE_CELL_CAP);
    let mut homology = Vec::new();
    if let Some(top) = morse_to {
        for n in 0..=top {
            homology.push(morse_homology(&t, n)?);
        }
    }
    let ctx = VerifyCtx { t: &t, n_max, i_max, full_to, morse_to, homology };
    let checks = vec![
        check_morse_vs_cubical(&ctx),
        check_partition(&ctx),
        check_dimension_bound(&ctx, n_ess),
        check_formula_counts(&ctx, is_tree),
        check_euler(&ctx, &g),
        check_action_generates(&ctx),
        check_tree_differential(&ctx, is_tree),
    ];
    let passed = checks.iter().all(|c| c.passed);
    let payload = Payload::Verify(VerifyPayload { n_max, i_max, passed, checks });
    Ok(finish(
        format!("verify --n-max {n_max} --i-max {i_max}"),
        text,
        Vec::new(),
        payload,
        start,
    ))
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Table => self.to_table(),
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Report> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: format!("json report: {e}"),
        })
    }
}

fn opt_s(o: Option<usize>) -> String {
    match o {
        Some(v) => v.to_string(),
        None => "-".to_string(),
    }
}

fn list_s(v: &[usize]) -> String {
    if v.is_empty() {
        "-".to_string()
    } else {
        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
    }
}

fn rats_s(v: &[(String, String)]) -> String {
    if v.is_empty() {
        "-".to_string()
    } else {
        v.iter().map(|(p, q)| format!("{p}/{q}")).collect::<Vec<_>>().join(" ")
    }
}

fn parse_err(message: impl Into<String>) -> Error {
    Error::Parse { line: 0, message: message.into() }
}

fn parse_usize(s: &str, what: &str) -> Result<usize> {
    s.parse().map_err(|_| parse_err(format!("bad {what}: '{s}'")))
}

fn parse_opt(s: &str, what: &str) -> Result<Option<usize>> {
    if s == "-" {
        Ok(None)
    } else {
        parse_usize(s, what).map(Some)
    }
}

fn parse_list(s: &str, what: &str) -> Result<Vec<usize>> {
    if s == "-" || s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(' ').map(|tok| parse_usize(tok, what)).collect()
}

fn parse_rats(s: &str, what: &str) -> Result<Vec<(String, String)>> {
    if s == "-" || s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(' ')
        .map(|tok| {
            let (p, q) = tok
                .split_once('/')
                .ok_or_else(|| parse_err(format!("bad {what}: '{tok}'")))?;
            p.parse::<BigInt>().map_err(|_| parse_err(format!("bad {what}: '{tok}'")))?;
            q.parse::<BigInt>().map_err(|_| parse_err(format!("bad {what}: '{tok}'")))?;
            Ok((p.to_string(), q.to_string()))
        })
        .collect()
}

fn parse_bool(s: &str, what: &str) -> Result<bool> {
    match s {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(parse_err(format!("bad {what}: '{s}'"))),
    }
}

struct CsvDoc {
    meta: Vec<(String, String)>,
    records: Vec<Vec<String>>,
    header: Vec<String>,
}

impl CsvDoc {
    fn get(&self, key: &str) -> Result<&str> {
        self.meta
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
            .ok_or_else(|| parse_err(format!("missing '# {key}:' line")))
    }

    fn all(&self, key: &str) -> Vec<String> {
        self.meta
            .iter()
            .filter(|(k, _)| k == key)
            .map(|(_, v)| v.clone())
            .collect()
    }

    fn field<'r>(&self, record: &'r [String], col: &str) -> Result<&'r str> {
        let pos = self
            .header
            .iter()
            .position(|h| h == col)
            .ok_or_else(|| parse_err(format!("missing column '{col}'")))?;
        record
            .get(pos)
            .map(|s| s.as_str())
            .ok_or_else(|| parse_err(format!("short record, no '{col}'")))
    }
}

fn read_csv_doc(text: &str) -> Result<CsvDoc> {
    let mut meta = Vec::new();
    let mut data = String::new();
    for line in text.lines() {
        if let Some(rest) = line.strip_prefix('#') {
            let rest = rest.trim_start();
            if rest.is_empty() {
                continue;
            }
            let (k, v) = rest
                .split_once(": ")
                .or_else(|| rest.split_once(':'))
                .ok_or_else(|| parse_err(format!("bad metadata line '{line}'")))?;
            meta.push((k.to_string(), v.to_string()));
        } else if !line.trim().is_empty() {
            data.push_str(line);
            data.push('\n');
        }
    }
    let mut header = Vec::new();
    let mut records = Vec::new();
    if !data.is_empty() {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .flexible(false)
            .from_reader(data.as_bytes());
        header = reader
            .headers()
            .map_err(|e| parse_err(format!("csv header: {e}")))?
            .iter()
            .map(|s| s.to_string())
            .collect();
        for rec in reader.records() {
            let rec = rec.map_err(|e| parse_err(format!("csv record: {e}")))?;
            records.push(rec.iter().map(|s| s.to_string()).collect());
        }
    }
    Ok(CsvDoc { meta, records, header })
}

fn write_rows(out: &mut String, header: &[&str], rows: Vec<Vec<String>>) {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("csv header");
    for row in rows {
        w.write_record(&row).expect("csv row");
    }
    let bytes = w.into_inner().expect("csv flush");
    out.push_str(&String::from_utf8(bytes).expect("csv utf8"));
}

impl Report {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# command: {}\n", self.command));
        out.push_str(&format!("# input_sha256: {}\n", self.input_sha256));
        for w in &self.warnings {
            out.push_str(&format!("# warning: {w}\n"));
        }
        match &self.payload {
            Payload::Betti(p) => {
                out.push_str("# kind: betti\n");
                out.push_str(&format!("# n: {}\n", p.n));
                out.push_str(&format!("# only_i: {}\n", opt_s(p.only_i)));
                out.push_str(&format!("# brute_checked: {}\n", p.brute_checked));
                let rows = p
                    .groups
                    .iter()
                    .map(|r| {
                        let torsion = if r.torsion.is_empty() {
                            "-".to_string()
                        } else {
                            r.torsion.join(" ")
                        };
                        vec![r.i.to_string(), r.free_rank.to_string(), torsion]
                    })
                    .collect();
                write_rows(&mut out, &["i", "free_rank", "torsion"], rows);
            }
            Payload::Poly(p) => {
                out.push_str("# kind: poly\n");
                out.push_str(&format!("# i_max: {}\n", p.i_max));
                let rows = p
                    .polys
                    .iter()
                    .map(|r| {
                        vec![
                            r.i.to_string(),
                            r.delta.to_string(),
                            r.valid_from.to_string(),
                            opt_s(r.degree),
                            rats_s(&r.coeffs),
                            r.binomial_form.clone(),
                        ]
                    })
                    .collect();
                write_rows(
                    &mut out,
                    &["i", "delta", "valid_from", "degree", "coeffs", "binomial_form"],
                    rows,
                );
            }
            Payload::Euler(p) => {
                out.push_str("# kind: euler\n");
                out.push_str(&format!("# gf_num: {}\n", rats_s(&p.gf_num)));
                out.push_str(&format!("# gf_denom_pow: {}\n", p.gf_denom_pow));
                let pc = match &p.poly_coeffs {
                    Some(v) => rats_s(v),
                    None => "-".to_string(),
                };
                out.push_str(&format!("# poly_coeffs: {pc}\n"));
                out.push_str(&format!("# poly_degree: {}\n", opt_s(p.poly_degree)));
                let rows = p
                    .values
                    .iter()
                    .map(|r| vec![r.n.to_string(), r.chi.clone()])
                    .collect();
                write_rows(&mut out, &["n", "chi"], rows);
            }
            Payload::Cells(p) => {
                out.push_str("# kind: cells\n");
                out.push_str(&format!("# n: {}\n", p.n));
                out.push_str(&format!("# i: {}\n", p.i));
                out.push_str(&format!("# class: {}\n", p.class));
                out.push_str(&format!("# total_cells: {}\n", p.total_cells));
                let rows = p
                    .cells
                    .iter()
                    .map(|c| {
                        vec![
                            c.class.clone(),
                            list_s(&c.edges),
                            list_s(&c.verts),
                            opt_s(c.pair_vertex),
                            opt_s(c.pair_edge),
                        ]
                    })
                    .collect();
                write_rows(
                    &mut out,
                    &["class", "edges", "verts", "pair_vertex", "pair_edge"],
                    rows,
                );
            }
            Payload::Layout(p) => {
                out.push_str("# kind: layout\n");
                out.push_str(&format!("# n_vertices: {}\n", p.n_vertices));
                out.push_str(&format!("# n_edges: {}\n", p.n_edges));
                out.push_str(&format!("# is_tree: {}\n", p.is_tree));
                out.push_str(&format!("# root_vertex: {}\n", p.root_vertex));
                out.push_str(&format!("# deleted_edges: {}\n", list_s(&p.deleted_edges)));
                out.push_str(&format!("# essential_edges: {}\n", p.essential_edges));
                let rows = p
                    .rows
                    .iter()
                    .map(|r| {
                        vec![
                            r.label.to_string(),
                            r.vertex.to_string(),
                            opt_s(r.parent_label),
                            opt_s(r.parent_edge),
                            r.degree.to_string(),
                            r.essential.to_string(),
                        ]
                    })
                    .collect();
                write_rows(
                    &mut out,
                    &["label", "vertex", "parent_label", "parent_edge", "degree", "essential"],
                    rows,
                );
            }
            Payload::Verify(p) => {
                out.push_str("# kind: verify\n");
                out.push_str(&format!("# n_max: {}\n", p.n_max));
                out.push_str(&format!("# i_max: {}\n", p.i_max));
                out.push_str(&format!("# passed: {}\n", p.passed));
                let rows = p
                    .checks
                    .iter()
                    .map(|c| vec![c.name.clone(), c.passed.to_string(), c.detail.clone()])
                    .collect();
                write_rows(&mut out, &["name", "passed", "detail"], rows);
            }
            Payload::Probe(p) => {
                out.push_str("# kind: probe\n");
                out.push_str(&format!("# i: {}\n", p.i));
                out.push_str(&format!("# n_max: {}\n", p.n_max));
                out.push_str(&format!("# checked: {}\n", p.checked));
                let mut rows = Vec::new();
                for m in &p.mismatches {
                    for (side, terms) in [("lhs", &m.lhs), ("rhs", &m.rhs)] {
                        for t in terms {
                            rows.push(vec![
                                m.degree.to_string(),
                                m.essential_edge.to_string(),
                                list_s(&m.cell_edges),
                                list_s(&m.cell_verts),
                                side.to_string(),
                                t.coef.clone(),
                                list_s(&t.edges),
                                list_s(&t.verts),
                            ]);
                        }
                    }
                }
                write_rows(
                    &mut out,
                    &[
                        "degree",
                        "essential_edge",
                        "cell_edges",
                        "cell_verts",
                        "side",
                        "coef",
                        "edges",
                        "verts",
                    ],
                    rows,
                );
            }
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Report> {
        let doc = read_csv_doc(text)?;
        let command = doc.get("command")?.to_string();
        let input_sha256 = doc.get("input_sha256")?.to_string();
        let warnings = doc.all("warning");
        let payload = match doc.get("kind")? {
            "betti" => {
                let mut groups = Vec::new();
                for rec in &doc.records {
                    let torsion_field = doc.field(rec, "torsion")?;
                    let torsion = if torsion_field == "-" {
                        Vec::new()
                    } else {
                        torsion_field.split(' ').map(|s| s.to_string()).collect()
                    };
                    groups.push(GroupDto {
                        i: parse_usize(doc.field(rec, "i")?, "i")?,
                        free_rank: parse_usize(doc.field(rec, "free_rank")?, "free_rank")?,
                        torsion,
                    });
                }
                Payload::Betti(BettiPayload {
                    n: parse_usize(doc.get("n")?, "n")?,
                    only_i: parse_opt(doc.get("only_i")?, "only_i")?,
                    brute_checked: parse_bool(doc.get("brute_checked")?, "brute_checked")?,
                    groups,
                })
            }
            "poly" => {
                let mut polys = Vec::new();
                for rec in &doc.records {
                    polys.push(PolyDto {
                        i: parse_usize(doc.field(rec, "i")?, "i")?,
                        delta: parse_usize(doc.field(rec, "delta")?, "delta")?,
                        valid_from: parse_usize(doc.field(rec, "valid_from")?, "valid_from")?,
                        degree: parse_opt(doc.field(rec, "degree")?, "degree")?,
                        coeffs: parse_rats(doc.field(rec, "coeffs")?, "coeffs")?,
                        binomial_form: doc.field(rec, "binomial_form")?.to_string(),
                    });
                }
                Payload::Poly(PolyPayload {
                    i_max: parse_usize(doc.get("i_max")?, "i_max")?,
                    polys,
                })
            }
            "euler" => {
                let mut values = Vec::new();
                for rec in &doc.records {
                    values.push(ChiDto {
                        n: parse_usize(doc.field(rec, "n")?, "n")?,
                        chi: doc.field(rec, "chi")?.to_string(),
                    });
                }
                let pc = doc.get("poly_coeffs")?;
                let poly_coeffs = if pc == "-" {
                    None
                } else {
                    Some(parse_rats(pc, "poly_coeffs")?)
                };
                Payload::Euler(EulerPayload {
                    gf_num: parse_rats(doc.get("gf_num")?, "gf_num")?,
                    gf_denom_pow: parse_usize(doc.get("gf_denom_pow")?, "gf_denom_pow")?,
                    values,
                    poly_coeffs,
                    poly_degree: parse_opt(doc.get("poly_degree")?, "poly_degree")?,
                })
            }
            "cells" => {
                let mut cells = Vec::new();
                for rec in &doc.records {
                    cells.push(CellDto {
                        edges: parse_list(doc.field(rec, "edges")?, "edges")?,
                        verts: parse_list(doc.field(rec, "verts")?, "verts")?,
                        class: doc.field(rec, "class")?.to_string(),
                        pair_vertex: parse_opt(doc.field(rec, "pair_vertex")?, "pair_vertex")?,
                        pair_edge: parse_opt(doc.field(rec, "pair_edge")?, "pair_edge")?,
                    });
                }
                Payload::Cells(CellsPayload {
                    n: parse_usize(doc.get("n")?, "n")?,
                    i: parse_usize(doc.get("i")?, "i")?,
                    class: doc.get("class")?.to_string(),
                    total_cells: parse_usize(doc.get("total_cells")?, "total_cells")?,
                    cells,
                })
            }
            "layout" => {
                let mut rows = Vec::new();
                for rec in &doc.records {
                    rows.push(LayoutRow {
                        label: parse_usize(doc.field(rec, "label")?, "label")?,
                        vertex: parse_usize(doc.field(rec, "vertex")?, "vertex")?,
                        parent_label: parse_opt(doc.field(rec, "parent_label")?, "parent_label")?,
                        parent_edge: parse_opt(doc.field(rec, "parent_edge")?, "parent_edge")?,
                        degree: parse_usize(doc.field(rec, "degree")?, "degree")?,
                        essential: parse_bool(doc.field(rec, "essential")?, "essential")?,
                    });
                }
                Payload::Layout(LayoutPayload {
                    n_vertices: parse_usize(doc.get("n_vertices")?, "n_vertices")?,
                    n_edges: parse_usize(doc.get("n_edges")?, "n_edges")?,
                    is_tree: parse_bool(doc.get("is_tree")?, "is_tree")?,
                    root_vertex: parse_usize(doc.get("root_vertex")?, "root_vertex")?,
                    deleted_edges: parse_list(doc.get("deleted_edges")?, "deleted_edges")?,
                    essential_edges: parse_usize(doc.get("essential_edges")?, "essential_edges")?,
                    rows,
                })
            }
            "verify" => {
                let mut checks = Vec::new();
                for rec in &doc.records {
                    checks.push(CheckDto {
                        name: doc.field(rec, "name")?.to_string(),
                        passed: parse_bool(doc.field(rec, "passed")?, "passed")?,
                        detail: doc.field(rec, "detail")?.to_string(),
                    });
                }
                Payload::Verify(VerifyPayload {
                    n_max: parse_usize(doc.get("n_max")?, "n_max")?,
                    i_max: parse_usize(doc.get("i_max")?, "i_max")?,
                    passed: parse_bool(doc.get("passed")?, "passed")?,
                    checks,
                })
            }
            "probe" => {
                let mut mismatches: Vec<MismatchDto> = Vec::new();
                for rec in &doc.records {
                    let degree = parse_usize(doc.field(rec, "degree")?, "degree")?;
                    let essential_edge =
                        parse_usize(doc.field(rec, "essential_edge")?, "essential_edge")?;
                    let cell_edges = parse_list(doc.field(rec, "cell_edges")?, "cell_edges")?;
                    let cell_verts = parse_list(doc.field(rec, "cell_verts")?, "cell_verts")?;
                    let term = TermDto {
                        coef: doc.field(rec, "coef")?.to_string(),
                        edges: parse_list(doc.field(rec, "edges")?, "edges")?,
                        verts: parse_list(doc.field(rec, "verts")?, "verts")?,
                    };
                    let side = doc.field(rec, "side")?;
                    let fresh = match mismatches.last() {
                        Some(m) => {
                            m.degree != degree
                                || m.essential_edge != essential_edge
                                || m.cell_edges != cell_edges
                                || m.cell_verts != cell_verts
                        }
                        None => true,
                    };
                    if fresh {
                        mismatches.push(MismatchDto {
                            degree,
                            essential_edge,
                            cell_edges,
                            cell_verts,
                            lhs: Vec::new(),
                            rhs: Vec::new(),
                        });
                    }
                    let m = mismatches.last_mut().unwrap();
                    match side {
                        "lhs" => m.lhs.push(term),
                        "rhs" => m.rhs.push(term),
                        _ => return Err(parse_err(format!("bad side '{side}'"))),
                    }
                }
                Payload::Probe(ProbePayload {
                    i: parse_usize(doc.get("i")?, "i")?,
                    n_max: parse_usize(doc.get("n_max")?, "n_max")?,
                    checked: parse_usize(doc.get("checked")?, "checked")?,
                    mismatches,
                })
            }
            other => return Err(parse_err(format!("unknown report kind '{other}'"))),
        };
        Ok(Report { command, input_sha256, warnings, payload, elapsed_ms: 0 })
    }
}

fn render_columns(out: &mut String, header: &[&str], rows: &[Vec<String>]) {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (k, cell) in row.iter().enumerate() {
            widths[k] = widths[k].max(cell.len());
        }
    }
    let line = |cells: Vec<String>| {
        let mut s = String::new();
        for (k, cell) in cells.iter().enumerate() {
            if k > 0 {
                s.push_str("  ");
            }
            if k + 1 == cells.len() {
                s.push_str(cell);
            } else {
                s.push_str(&format!("{cell:<width$}", width = widths[k]));
            }
        }
        s.push('\n');
        s
    };
    out.push_str(&line(header.iter().map(|h| h.to_string()).collect()));
    for row in rows {
        out.push_str(&line(row.clone()));
    }
}

impl Report {
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        match &self.payload {
            Payload::Betti(p) => {
                let check = if p.brute_checked { ", cross-checked against the cubical complex" } else { "" };
                out.push_str(&format!("homology of the {}-strand space{check}\n", p.n));
                let rows: Vec<Vec<String>> = p
                    .groups
                    .iter()
                    .map(|r| vec![r.i.to_string(), group_display(r.free_rank, &r.torsion)])
                    .collect();
                render_columns(&mut out, &["i", "H_i"], &rows);
            }
            Payload::Poly(p) => {
                out.push_str("critical cell counts as polynomials in the strand count n\n");
                for r in &p.polys {
                    out.push_str(&format!("P_{}(n) = {}\n", r.i, r.binomial_form));
                    let coeffs = if r.coeffs.is_empty() {
                        "0".to_string()
                    } else {
                        rats_s(&r.coeffs)
                    };
                    out.push_str(&format!(
                        "  coefficients (ascending): {coeffs}\n  component bound {} -> degree {}, exact from n = {}\n",
                        r.delta,
                        opt_s(r.degree),
                        r.valid_from
                    ));
                }
            }
            Payload::Euler(p) => {
                let num = rats_s(&p.gf_num);
                out.push_str(&format!(
                    "euler characteristic series: numerator coefficients [{num}], denominator (1-t)^{}\n",
                    p.gf_denom_pow
                ));
                if !p.values.is_empty() {
                    let rows: Vec<Vec<String>> = p
                        .values
                        .iter()
                        .map(|r| vec![r.n.to_string(), r.chi.clone()])
                        .collect();
                    render_columns(&mut out, &["n", "chi"], &rows);
                }
                if let Some(pc) = &p.poly_coeffs {
                    out.push_str(&format!(
                        "polynomial (ascending coefficients): {}\n  degree {}\n",
                        rats_s(pc),
                        opt_s(p.poly_degree)
                    ));
                }
            }
            Payload::Cells(p) => {
                out.push_str(&format!(
                    "{}-cells of the {}-strand complex (class = {}): {} of {}\n",
                    p.i,
                    p.n,
                    p.class,
                    p.cells.len(),
                    p.total_cells
                ));
                let rows: Vec<Vec<String>> = p
                    .cells
                    .iter()
                    .map(|c| {
                        vec![
                            c.class.clone(),
                            list_s(&c.edges),
                            list_s(&c.verts),
                            opt_s(c.pair_vertex),
                            opt_s(c.pair_edge),
                        ]
                    })
                    .collect();
                render_columns(
                    &mut out,
                    &["class", "edges", "verts", "slides_vertex", "slid_edge"],
                    &rows,
                );
            }
            Payload::Layout(p) => {
                let kind = if p.is_tree { "tree" } else { "graph" };
                out.push_str(&format!(
                    "{kind} with {} vertices and {} edges; root vertex {}; deleted edges {}; {} essential edge classes\n",
                    p.n_vertices, p.n_edges, p.root_vertex, list_s(&p.deleted_edges), p.essential_edges
                ));
                let rows: Vec<Vec<String>> = p
                    .rows
                    .iter()
                    .map(|r| {
                        vec![
                            r.label.to_string(),
                            r.vertex.to_string(),
                            opt_s(r.parent_label),
                            opt_s(r.parent_edge),
                            r.degree.to_string(),
                            if r.essential { "yes".to_string() } else { "".to_string() },
                        ]
                    })
                    .collect();
                render_columns(
                    &mut out,
                    &["label", "vertex", "parent", "edge", "degree", "essential"],
                    &rows,
                );
            }
            Payload::Verify(p) => {
                out.push_str(&format!(
                    "verification battery, n <= {}, i <= {}\n",
                    p.n_max, p.i_max
                ));
                for c in &p.checks {
                    let mark = if c.passed { "PASS" } else { "FAIL" };
                    out.push_str(&format!("{mark} {:<44} {}\n", c.name, c.detail));
                }
                let verdict = if p.passed { "all checks passed" } else { "FAILURES PRESENT" };
                out.push_str(&format!("result: {verdict}\n"));
            }
            Payload::Probe(p) => {
                out.push_str(&format!(
                    "EXPERIMENTAL commutation probe, i = {}, n <= {}\n",
                    p.i, p.n_max
                ));
                out.push_str(&format!(
                    "checked {} (cell, edge) pairs: {} mismatches\n",
                    p.checked,
                    p.mismatches.len()
                ));
                for m in &p.mismatches {
                    out.push_str(&format!(
                        "mismatch at degree {}, essential edge {}, cell edges [{}] verts [{}]\n",
                        m.degree,
                        m.essential_edge,
                        list_s(&m.cell_edges),
                        list_s(&m.cell_verts)
                    ));
                    for (side, terms) in [("lhs", &m.lhs), ("rhs", &m.rhs)] {
                        let rendered: Vec<String> = terms
                            .iter()
                            .map(|t| {
                                format!("{} x (edges [{}], verts [{}])", t.coef, list_s(&t.edges), list_s(&t.verts))
                            })
                            .collect();
                        out.push_str(&format!("  {side}: {}\n", rendered.join(" + ")));
                    }
                }
            }
        }
        for w in &self.warnings {
            out.push_str(&format!("note: {w}\n"));
        }
        out
    }
}

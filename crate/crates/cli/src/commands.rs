//! The five commands. Each returns a serializable result plus its text rendering.

use hochserre_core::{
    hilbert_oracle, ExactMatrix, GammaReport, HSElement, HochschildKind,
    HomSpace, JacobianRing, MultiplyOptions, OrbifoldModel, RankMethod, Result, Summand,
};
use serde::Serialize;

use crate::table::Table;

#[derive(Debug, Clone, Copy)]
pub struct RunOptions {
    pub oracle: bool,
    pub multiply: MultiplyOptions,
    pub rank_method: RankMethod,
    pub show_matrix: bool,
}

fn method_label(m: RankMethod) -> String {
    match m {
        RankMethod::Exact => "exact".to_string(),
        RankMethod::Modular(p) => format!("modular({p}) with exact fallback"),
    }
}

#[derive(Debug, Serialize)]
pub struct OracleCheck {
    pub sector: u32,
    pub expected: Vec<i64>,
    pub computed: Vec<usize>,
    pub agrees: bool,
}

/// Hilbert-series cross-check of every sector ring in degrees `0..=σ`.
pub fn oracle_checks(model: &OrbifoldModel) -> Result<Vec<OracleCheck>> {
    model
        .sectors()
        .iter()
        .map(|s| {
            let jac = s.jacobian();
            let expected = hilbert_oracle(jac.vars())?;
            let computed = jac.hilbert_function();
            let agrees = expected.len() == computed.len()
                && expected.iter().zip(&computed).all(|(&e, &c)| e == c as i64);
            Ok(OracleCheck {
                sector: s.j(),
                expected,
                computed,
                agrees,
            })
        })
        .collect()
}

#[derive(Debug, Serialize)]
pub struct SummandInfo {
    pub sector: u32,
    pub degree: i64,
    pub dim: usize,
}

#[derive(Debug, Serialize)]
pub struct SpaceInfo {
    pub m: i64,
    pub t: i64,
    pub dim: usize,
    pub summands: Vec<SummandInfo>,
}

impl SpaceInfo {
    fn of(h: &HomSpace) -> Self {
        Self {
            m: h.m,
            t: h.t,
            dim: h.total_dim(),
            summands: h
                .summands()
                .iter()
                .map(|s| SummandInfo {
                    sector: s.sector,
                    degree: s.degree,
                    dim: s.dim(),
                })
                .collect(),
        }
    }

    /// `J<sector>[<degree>]=<dim>` terms joined by `+`; empty summands stay visible.
    fn decomposition(&self) -> String {
        if self.summands.is_empty() {
            return "none".to_string();
        }
        self.summands
            .iter()
            .map(|s| format!("J{}[{}]={}", s.sector, s.degree, s.dim))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[derive(Debug, Serialize)]
pub struct SectorInfo {
    pub j: u32,
    pub fixed: Vec<String>,
    pub rank_w: usize,
    pub k_g: i64,
    pub omega_g: String,
    pub socle_degree: i64,
    pub milnor_number: usize,
    pub hilbert_function: Vec<usize>,
}

#[derive(Debug, Serialize)]
pub struct AnalyzeResult {
    pub quasi_homogeneous: bool,
    pub degree: u32,
    pub milnor_number: usize,
    pub socle_degree: i64,
    pub hilbert_function: Vec<usize>,
    pub oracle: Option<Vec<OracleCheck>>,
    pub sectors: Vec<SectorInfo>,
    pub serre: SerreInfo,
}

#[derive(Debug, Serialize)]
pub struct SerreInfo {
    pub twist: i64,
    pub shift: i64,
}

fn sector_info(model: &OrbifoldModel) -> Result<Vec<SectorInfo>> {
    let names = model.vars().names();
    model
        .sectors()
        .iter()
        .map(|s| {
            let jac: &JacobianRing = s.jacobian();
            Ok(SectorInfo {
                j: s.j(),
                fixed: s.fixed().iter().map(|&i| names[i].clone()).collect(),
                rank_w: s.rank_w(),
                k_g: s.k_g(),
                omega_g: s.omega_g().render(model.vars()),
                socle_degree: jac.socle_degree(),
                milnor_number: jac.milnor_number()?,
                hilbert_function: jac.hilbert_function(),
            })
        })
        .collect()
}

pub fn analyze(model: &OrbifoldModel, opts: &RunOptions) -> Result<AnalyzeResult> {
    let jac = model.jacobian();
    let serre = model.serre();
    Ok(AnalyzeResult {
        quasi_homogeneous: true,
        degree: model.d(),
        milnor_number: jac.milnor_number()?,
        socle_degree: jac.socle_degree(),
        hilbert_function: jac.hilbert_function(),
        oracle: if opts.oracle {
            Some(oracle_checks(model)?)
        } else {
            None
        },
        sectors: sector_info(model)?,
        serre: SerreInfo {
            twist: serre.twist,
            shift: serre.shift,
        },
    })
}

pub fn analyze_text(r: &AnalyzeResult) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "quasi-homogeneous of degree {}\nMilnor number     {}\nsocle degree      {}\nHilbert function  {}\n",
        r.degree,
        r.milnor_number,
        r.socle_degree,
        join(&r.hilbert_function)
    ));
    match &r.oracle {
        Some(checks) => {
            let bad: Vec<String> = checks
                .iter()
                .filter(|c| !c.agrees)
                .map(|c| c.sector.to_string())
                .collect();
            if bad.is_empty() {
                out.push_str("Hilbert oracle    agrees in every sector\n");
            } else {
                out.push_str(&format!("Hilbert oracle    DISAGREES in sectors {}\n", bad.join(", ")));
            }
        }
        None => out.push_str("Hilbert oracle    skipped\n"),
    }
    out.push_str(&format!(
        "Serre functor     twist {}, shift {}\n\n",
        r.serre.twist, r.serre.shift
    ));
    let mut t = Table::new(&["j", "fixed", "rkW", "k_g", "omega_g", "mu", "dim Jac(omega_g) by degree"]);
    for s in &r.sectors {
        t.row(vec![
            s.j.to_string(),
            if s.fixed.is_empty() {
                "-".to_string()
            } else {
                s.fixed.join(",")
            },
            s.rank_w.to_string(),
            s.k_g.to_string(),
            s.omega_g.clone(),
            s.milnor_number.to_string(),
            join(&s.hilbert_function),
        ]);
    }
    out.push_str(&t.render());
    out
}

#[derive(Debug, Serialize)]
pub struct HHRow {
    pub k: i64,
    pub cohomology: SpaceInfo,
    pub homology: SpaceInfo,
}

#[derive(Debug, Serialize)]
pub struct HHResult {
    pub kmin: i64,
    pub kmax: i64,
    pub rows: Vec<HHRow>,
}

pub fn hh(model: &OrbifoldModel, kmin: i64, kmax: i64) -> HHResult {
    let rows = (kmin..=kmax)
        .map(|k| HHRow {
            k,
            cohomology: SpaceInfo::of(&model.hochschild(HochschildKind::Cohomology, k)),
            homology: SpaceInfo::of(&model.hochschild(HochschildKind::Homology, k)),
        })
        .collect();
    HHResult { kmin, kmax, rows }
}

pub fn hh_text(r: &HHResult) -> String {
    let mut t = Table::new(&["k", "dim HH^k", "HH^k summands", "dim HH_k", "HH_k summands"]);
    for row in &r.rows {
        t.row(vec![
            row.k.to_string(),
            row.cohomology.dim.to_string(),
            row.cohomology.decomposition(),
            row.homology.dim.to_string(),
            row.homology.decomposition(),
        ]);
    }
    t.render()
}

#[derive(Debug, Serialize)]
pub struct HomSummand {
    pub sector: u32,
    pub degree: i64,
    pub dim: usize,
    pub basis: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct HomResult {
    pub m: i64,
    pub t: i64,
    pub dim: usize,
    pub summands: Vec<HomSummand>,
    pub periodicity_check: bool,
}

fn basis_strings(model: &OrbifoldModel, s: &Summand) -> Vec<String> {
    let vars = model.sector(s.sector).jacobian().vars();
    s.piece
        .basis()
        .iter()
        .map(|m| vars.render_monomial(m))
        .collect()
}

pub fn hom(model: &OrbifoldModel, m: i64, t: i64) -> HomResult {
    let h = model.hom_space(m, t);
    HomResult {
        m,
        t,
        dim: h.total_dim(),
        summands: h
            .summands()
            .iter()
            .map(|s| HomSummand {
                sector: s.sector,
                degree: s.degree,
                dim: s.dim(),
                basis: basis_strings(model, s),
            })
            .collect(),
        periodicity_check: model.periodicity_check(m, t),
    }
}

pub fn hom_text(r: &HomResult) -> String {
    let mut out = format!(
        "Hom space m={} t={}: total dimension {}\nperiodicity check {}\n\n",
        r.m,
        r.t,
        r.dim,
        if r.periodicity_check { "ok" } else { "FAILED" }
    );
    let mut t = Table::new(&["sector", "degree", "dim", "basis"]);
    for s in &r.summands {
        t.row(vec![
            s.sector.to_string(),
            s.degree.to_string(),
            s.dim.to_string(),
            s.basis.join(" "),
        ]);
    }
    out.push_str(&t.render());
    out
}

#[derive(Debug, Serialize)]
pub struct SectorCoords {
    pub sector: u32,
    pub degree: i64,
    pub coords: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct AuditEntry {
    pub left_sector: u32,
    pub right_sector: u32,
    pub target_sector: u32,
    pub target_degree: Option<i64>,
    pub target_dim: usize,
    pub rule: &'static str,
    pub count: usize,
}

#[derive(Debug, Serialize)]
pub struct Triplet(pub usize, pub usize, pub String);

#[derive(Debug, Serialize)]
pub struct GammaResult {
    pub hh2: SpaceInfo,
    pub hh_minus1: SpaceInfo,
    pub hh1: SpaceInfo,
    pub matrix_rows: usize,
    pub matrix_cols: usize,
    pub rank_method: String,
    pub rank: usize,
    pub kernel_dim: usize,
    pub kernel_basis: Vec<Vec<SectorCoords>>,
    pub audit: Vec<AuditEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Triplet>>,
}

fn element_coords(e: &HSElement) -> Vec<SectorCoords> {
    e.space()
        .summands()
        .iter()
        .zip(e.coords())
        .map(|(s, c)| SectorCoords {
            sector: s.sector,
            degree: s.degree,
            coords: c.iter().map(ToString::to_string).collect(),
        })
        .collect()
}

fn triplets(m: &ExactMatrix) -> Vec<Triplet> {
    m.to_triplets()
        .into_iter()
        .map(|(r, c, v)| Triplet(r, c, v.to_string()))
        .collect()
}

pub fn gamma(model: &OrbifoldModel, opts: &RunOptions) -> Result<GammaResult> {
    let r: GammaReport = model.gamma(opts.multiply, opts.rank_method)?;
    Ok(GammaResult {
        hh2: SpaceInfo::of(&r.hh2),
        hh_minus1: SpaceInfo::of(&r.hh_minus1),
        hh1: SpaceInfo::of(&r.hh1),
        matrix_rows: r.matrix.rows(),
        matrix_cols: r.matrix.cols(),
        rank_method: method_label(opts.rank_method),
        rank: r.rank,
        kernel_dim: r.kernel_dim,
        kernel_basis: r.kernel_basis.iter().map(element_coords).collect(),
        audit: r
            .resolved_terms
            .iter()
            .map(|(t, count)| AuditEntry {
                left_sector: t.left_sector,
                right_sector: t.right_sector,
                target_sector: t.target_sector,
                target_degree: t.target_degree,
                target_dim: t.target_dim,
                rule: t.rule.label(),
                count: *count,
            })
            .collect(),
        matrix: opts.show_matrix.then(|| triplets(&r.matrix)),
    })
}

pub fn gamma_text(r: &GammaResult) -> String {
    let mut out = String::new();
    let mut t = Table::new(&["space", "dim", "summands"]);
    for (name, s) in [("HH^2", &r.hh2), ("HH_-1", &r.hh_minus1), ("HH_1", &r.hh1)] {
        t.row(vec![name.to_string(), s.dim.to_string(), s.decomposition()]);
    }
    out.push_str(&t.render());
    out.push_str(&format!(
        "\ngamma: HH^2 -> Hom(HH_-1, HH_1), {} x {} matrix ({})\nrank        {}\nkernel_dim  {}\n",
        r.matrix_rows, r.matrix_cols, r.rank_method, r.rank, r.kernel_dim
    ));
    for (i, v) in r.kernel_basis.iter().enumerate() {
        let parts: Vec<String> = v
            .iter()
            .filter(|s| s.coords.iter().any(|c| c != "0"))
            .map(|s| format!("sector {} degree {}: [{}]", s.sector, s.degree, s.coords.join(", ")))
            .collect();
        out.push_str(&format!("kernel[{i}]   {}\n", parts.join("; ")));
    }
    out.push_str("\nresolved terms\n");
    let mut t = Table::new(&["left", "right", "target", "degree", "dim", "rule", "count"]);
    for a in &r.audit {
        t.row(vec![
            a.left_sector.to_string(),
            a.right_sector.to_string(),
            a.target_sector.to_string(),
            a.target_degree.map_or("-".to_string(), |d| d.to_string()),
            a.target_dim.to_string(),
            a.rule.to_string(),
            a.count.to_string(),
        ]);
    }
    out.push_str(&t.render());
    if let Some(m) = &r.matrix {
        out.push_str("\nnonzero entries (row, col, value)\n");
        for Triplet(i, j, v) in m {
            out.push_str(&format!("{i} {j} {v}\n"));
        }
    }
    out
}

#[derive(Debug, Serialize)]
pub struct PairingResult {
    pub e1: i64,
    pub e2: i64,
    pub dim_e1: usize,
    pub dim_e2: usize,
    pub dim_target: usize,
    pub matrix_rows: usize,
    pub matrix_cols: usize,
    pub rank_method: String,
    pub rank: usize,
    pub injective: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Triplet>>,
}

pub fn pairing(model: &OrbifoldModel, e1: i64, e2: i64, opts: &RunOptions) -> PairingResult {
    let jac = model.jacobian();
    let (m, rank) = jac.pairing_rank_with(e1, e2, opts.rank_method);
    let dim_e1 = jac.graded_piece(e1).dim();
    PairingResult {
        e1,
        e2,
        dim_e1,
        dim_e2: jac.graded_piece(e2).dim(),
        dim_target: jac.graded_piece(e1 + e2).dim(),
        matrix_rows: m.rows(),
        matrix_cols: m.cols(),
        rank_method: method_label(opts.rank_method),
        rank,
        injective: rank == dim_e1,
        matrix: opts.show_matrix.then(|| triplets(&m)),
    }
}

pub fn pairing_text(r: &PairingResult) -> String {
    let mut out = format!(
        "Jac_{e1} -> Hom(Jac_{e2}, Jac_{t})\ndims        {} -> Hom({}, {})\nmatrix      {} x {} ({})\nrank        {}\ninjective   {}\n",
        r.dim_e1,
        r.dim_e2,
        r.dim_target,
        r.matrix_rows,
        r.matrix_cols,
        r.rank_method,
        r.rank,
        if r.injective { "yes" } else { "no" },
        e1 = r.e1,
        e2 = r.e2,
        t = r.e1 + r.e2,
    );
    if let Some(m) = &r.matrix {
        out.push_str("\nnonzero entries (row, col, value)\n");
        for Triplet(i, j, v) in m {
            out.push_str(&format!("{i} {j} {v}\n"));
        }
    }
    out
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

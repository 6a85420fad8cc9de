//! End-to-end pipeline: build both schemes from one input, certify every
//! claim about them and render a plain-text report.

use std::fmt::Write;
use std::thread;

use num_rational::BigRational;
use thiserror::Error;

use crate::algebra::{
    algebra_summary, certify_full_matrix, certify_quaternion, AlgebraError, AlgebraSummary,
    Degree2Certificate,
};
use crate::character::{
    closed_form_table, computed_indicators, fs_sum_check, indicator_value, rep_degree2,
    table_tsv, verify_table, CharacterError, CharacterTable, IndicatorSumCertificate,
};
use crate::construct::{assemble_from, closed_form_constants, ConstructionError, Rank3Blocks};
use crate::rank3::{paley_tournament, validate_rank3_colors, Rank3Error, Rank3Input};
use crate::scheme::{AssociationScheme, SchemeMeta, ThinGroupProfile, Variant};

/// Where the pipeline failed. Each stage maps to a distinct exit code.
#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("input certification failed: {0}")]
    Input(#[from] Rank3Error),
    #[error("scheme construction failed: {0}")]
    Construction(#[from] ConstructionError),
    #[error("character certification failed: {0}")]
    Character(#[from] CharacterError),
    #[error("algebra certification failed: {0}")]
    Algebra(#[from] AlgebraError),
}

impl PipelineError {
    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineError::Parameter(_) => 2,
            PipelineError::Input(_) => 3,
            PipelineError::Construction(_) => 4,
            PipelineError::Character(_) | PipelineError::Algebra(_) => 5,
        }
    }
}

#[derive(Debug, Clone)]
pub enum ReportInput {
    Paley(u64),
    /// A color matrix to be certified as a rank-3 input.
    Colors { order: usize, colors: Vec<usize>, description: String },
    Degenerate,
}

#[derive(Debug, Clone)]
pub struct VariantReport {
    pub variant: Variant,
    pub scheme: AssociationScheme,
    pub meta: SchemeMeta,
    pub valencies: Vec<u64>,
    pub symmetric_relations: usize,
    pub commutative: bool,
    pub closed_form_products: bool,
    pub table: CharacterTable,
    pub indicators: Vec<BigRational>,
    pub indicators_match_table: bool,
    pub indicator_sum: IndicatorSumCertificate,
    pub algebra: AlgebraSummary,
    pub thin_profile: ThinGroupProfile,
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub input: String,
    pub n: u64,
    pub a: u64,
    pub b: u64,
    pub degenerate: bool,
    pub d: VariantReport,
    pub q: VariantReport,
}

impl RunReport {
    pub fn tables_identical(&self) -> bool {
        self.d.table.values == self.q.table.values
            && self.d.table.multiplicities == self.q.table.multiplicities
    }

    /// Indicator vectors agree except in the last coordinate.
    pub fn indicators_differ_in_last(&self) -> bool {
        let (d, q) = (&self.d.indicators, &self.q.indicators);
        let last = d.len() - 1;
        d[..last] == q[..last] && d[last] != q[last]
    }

    /// Named checks in report order.
    pub fn checks(&self) -> Vec<(String, bool)> {
        let mut checks = Vec::new();
        for v in [&self.d, &self.q] {
            let tag = v.variant;
            let a = self.a;
            checks.push((format!("{tag}: order 4n, rank 8"), v.scheme.order() as u64 == 4 * self.n && v.scheme.rank() == 8));
            checks.push((
                format!("{tag}: valencies (1,1,1,1,a,a,a,a)"),
                v.valencies == [1, 1, 1, 1, a, a, a, a],
            ));
            checks.push((format!("{tag}: non-commutative"), !v.commutative));
            checks.push((format!("{tag}: closed-form products"), v.closed_form_products));
            checks.push((format!("{tag}: indicators match table"), v.indicators_match_table));
            if self.degenerate {
                let involutions = match v.variant {
                    Variant::D => 5,
                    _ => 1,
                };
                checks.push((
                    format!("{tag}: thin group with {involutions} involution(s)"),
                    v.thin_profile.is_thin && v.thin_profile.involution_count() == Some(involutions),
                ));
            }
        }
        checks.push(("character tables identical".into(), self.tables_identical()));
        checks.push(("indicators differ in last coordinate".into(), self.indicators_differ_in_last()));
        checks
    }

    pub fn passed(&self) -> bool {
        self.checks().iter().all(|(_, ok)| *ok)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "input: {} (n={}, a={}, b={})", self.input, self.n, self.a, self.b).unwrap();
        for v in [&self.d, &self.q] {
            let tag = v.variant;
            let join = |xs: &[u64]| xs.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
            writeln!(out).unwrap();
            writeln!(
                out,
                "[{tag}] order={} rank={} valencies={} symmetric={} commutative={}",
                v.scheme.order(),
                v.scheme.rank(),
                join(&v.valencies),
                v.symmetric_relations,
                if v.commutative { "yes" } else { "no" }
            )
            .unwrap();
            let prefix = if tag == Variant::D { "chi" } else { "phi" };
            out.push_str(&table_tsv(&v.table, &v.meta.labels, prefix));
            let nus: Vec<String> = v.indicators.iter().map(ToString::to_string).collect();
            writeln!(out, "[{tag}] indicators: ({})", nus.join(",")).unwrap();
            writeln!(
                out,
                "[{tag}] indicator sum: {} = {} symmetric relations",
                v.indicator_sum.indicator_sum, v.indicator_sum.symmetric_relations
            )
            .unwrap();
            writeln!(out, "{}", v.algebra).unwrap();
            if let Some(orders) = &v.thin_profile.element_orders {
                let orders: Vec<String> = orders.iter().map(ToString::to_string).collect();
                writeln!(
                    out,
                    "[{tag}] thin group element orders: {{{}}} ({} involutions)",
                    orders.join(","),
                    v.thin_profile.involution_count().unwrap_or(0)
                )
                .unwrap();
            }
        }
        writeln!(out).unwrap();
        for (name, ok) in self.checks() {
            writeln!(out, "check {name}: {}", if ok { "PASS" } else { "FAIL" }).unwrap();
        }
        writeln!(out, "{}", if self.passed() { "PASS" } else { "FAIL" }).unwrap();
        out
    }
}

fn certify_variant(variant: Variant, blocks: &Rank3Blocks) -> Result<VariantReport, PipelineError> {
    let (scheme, meta) = assemble_from(variant, blocks)?;
    let sc = scheme.structure_constants();
    let closed_form_products = *sc == closed_form_constants(variant, blocks.a, blocks.b)?;

    let table = closed_form_table(variant, blocks.a)?;
    verify_table(&scheme, &meta, &table)?;
    let indicators = computed_indicators(&scheme, &table);
    let indicators_match_table = indicators
        .iter()
        .zip(&table.indicators)
        .all(|(nu, &expected)| indicator_value(nu) == Some(expected));
    let indicator_sum = fs_sum_check(&scheme, &table)?;

    let rep = rep_degree2(variant, blocks.a, sc)?;
    let cert = match variant {
        Variant::D => Degree2Certificate::FullMatrix(certify_full_matrix(&rep)?),
        _ => Degree2Certificate::Quaternion(certify_quaternion(&rep, blocks.a)?),
    };
    let algebra = algebra_summary(variant, &table, &cert)?;

    Ok(VariantReport {
        variant,
        valencies: scheme.valencies(),
        symmetric_relations: scheme.symmetric_relation_count(),
        commutative: scheme.is_commutative(),
        thin_profile: scheme.thin_group_profile(),
        closed_form_products,
        table,
        indicators,
        indicators_match_table,
        indicator_sum,
        algebra,
        scheme,
        meta,
    })
}

/// Resolves the input to construction blocks and a description.
pub fn resolve_input(input: &ReportInput) -> Result<(Rank3Blocks, String, bool), PipelineError> {
    let from_rank3 = |r: &Rank3Input| Rank3Blocks::from(r);
    Ok(match input {
        ReportInput::Paley(q) => {
            let r = paley_tournament(*q).map_err(|e| match e {
                Rank3Error::BadPaleyParameter { .. } => PipelineError::Parameter(e.to_string()),
                other => PipelineError::Input(other),
            })?;
            (from_rank3(&r), format!("paley q={q}"), false)
        }
        ReportInput::Colors {
            order,
            colors,
            description,
        } => {
            let r = validate_rank3_colors(*order, colors)?;
            (from_rank3(&r), description.clone(), false)
        }
        ReportInput::Degenerate => (Rank3Blocks::degenerate(), "degenerate (A_1 = A_2 = O)".into(), true),
    })
}

/// Runs both variants (concurrently) and assembles the report.
pub fn run_report(input: &ReportInput) -> Result<RunReport, PipelineError> {
    let (blocks, description, degenerate) = resolve_input(input)?;
    let (d, q) = thread::scope(|scope| {
        let d = scope.spawn(|| certify_variant(Variant::D, &blocks));
        let q = scope.spawn(|| certify_variant(Variant::Q, &blocks));
        (
            d.join().expect("D pipeline panicked"),
            q.join().expect("Q pipeline panicked"),
        )
    });
    Ok(RunReport {
        input: description,
        n: blocks.n,
        a: blocks.a,
        b: blocks.b,
        degenerate,
        d: d?,
        q: q?,
    })
}

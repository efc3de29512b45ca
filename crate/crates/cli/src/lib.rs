//! Report assembly for the `nilcascade` binary.
//!
//! Every subcommand builds one serializable document; JSON output is the
//! stable machine interface (schema files live under `schema/`), markdown
//! is for reading.  Documents carry a schema version and no timestamps or
//! host details, so byte-identical inputs give byte-identical reports.

use nilcascade::cascade::{self, CascadeDecomposition};
use nilcascade::nilalg::ChevalleyBasis;
use nilcascade::pfpoly;
use nilcascade::realform::{self, RealFormData};
use nilcascade::rootsys::{RestrictedRootSystem, Root};
use nilcascade::sqint::{self, GroupGaussian, TestFunction};
use nilcascade::verify::{self, CheckStatus};
use nilcascade::{Error, Rat, Result};
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Markdown,
}

fn rat_str(r: &Rat) -> String {
    r.to_string()
}

fn root_coords(r: &Root) -> Vec<String> {
    r.coords().iter().map(rat_str).collect()
}

// ---------------------------------------------------------------------------
// Shared form summary

#[derive(Serialize)]
pub struct MultiplicityEntry {
    pub kind: String,
    pub count: u32,
}

#[derive(Serialize)]
pub struct FormSummary {
    pub name: String,
    pub label: String,
    pub rank: usize,
    pub ambient_dim: usize,
    pub split: bool,
    pub reduced: bool,
    pub multiplicities: Vec<MultiplicityEntry>,
}

fn form_summary(data: &RealFormData, system: &RestrictedRootSystem) -> FormSummary {
    FormSummary {
        name: data.name.clone(),
        label: data.label.to_string(),
        rank: system.rank(),
        ambient_dim: system.ambient_dim(),
        split: system.is_split(),
        reduced: system.is_reduced(),
        multiplicities: data
            .mults
            .iter()
            .map(|(k, &count)| MultiplicityEntry { kind: k.token().to_string(), count })
            .collect(),
    }
}

// ---------------------------------------------------------------------------
// cascade

#[derive(Serialize)]
pub struct CascadeSection {
    pub m: usize,
    pub betas: Vec<Vec<String>>,
    pub layers: Vec<Vec<Vec<String>>>,
    pub d: Vec<String>,
    pub dim_z: Vec<u64>,
    pub dim_l: Vec<u64>,
    pub dim_n: u64,
    pub dim_s: u64,
    pub pf_degree: String,
    pub modular_exponents: Vec<String>,
    /// None when a layer dimension count is not an integer.
    pub c_constant: Option<String>,
    pub a_diamond: Vec<Vec<String>>,
}

#[derive(Serialize)]
pub struct SymbolSection {
    pub layer_pfaffians: Vec<String>,
    pub pfaffian: String,
    pub determinant: String,
    pub dp_symbol: String,
    pub dp_degree: u32,
}

#[derive(Serialize)]
pub struct CascadeReport {
    pub schema_version: u32,
    pub kind: &'static str,
    pub form: FormSummary,
    pub cascade: CascadeSection,
    /// Present only for split reduced systems, where a Chevalley basis of
    /// the restricted system exists.
    pub symbol: Option<SymbolSection>,
}

fn cascade_section(system: &RestrictedRootSystem, decomp: &CascadeDecomposition) -> CascadeSection {
    CascadeSection {
        m: decomp.m(),
        betas: decomp.betas.iter().map(root_coords).collect(),
        layers: decomp
            .layers
            .iter()
            .map(|layer| layer.iter().map(root_coords).collect())
            .collect(),
        d: decomp.d.iter().map(rat_str).collect(),
        dim_z: decomp.dim_z.clone(),
        dim_l: decomp.dim_l.clone(),
        dim_n: decomp.dim_n,
        dim_s: decomp.dim_s,
        pf_degree: rat_str(&decomp.pf_degree()),
        modular_exponents: decomp.modular_exponents().iter().map(rat_str).collect(),
        c_constant: decomp.c_constant().ok().map(|c| c.to_string()),
        a_diamond: cascade::a_diamond(system, decomp)
            .iter()
            .map(|v| v.iter().map(rat_str).collect())
            .collect(),
    }
}

pub fn build_cascade_report(form_name: &str) -> Result<CascadeReport> {
    let data = realform::load_form(form_name)?;
    let system = data.realize()?;
    let decomp = cascade::decompose(&system)?;
    let symbol = if system.is_split() && system.is_reduced() {
        let basis = ChevalleyBasis::new(&system)?;
        let sym = pfpoly::symbol_data(&basis, &decomp)?;
        Some(SymbolSection {
            layer_pfaffians: sym.layer_pfaffians.iter().map(|p| p.to_string()).collect(),
            pfaffian: sym.pf.to_string(),
            determinant: sym.det.to_string(),
            dp_symbol: sym.dp.to_string(),
            dp_degree: sym.dp.degree().unwrap_or(0),
        })
    } else {
        None
    };
    Ok(CascadeReport {
        schema_version: SCHEMA_VERSION,
        kind: "cascade",
        form: form_summary(&data, &system),
        cascade: cascade_section(&system, &decomp),
        symbol,
    })
}

// ---------------------------------------------------------------------------
// verify

#[derive(Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Serialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub kind: &'static str,
    pub form: FormSummary,
    pub seed: u64,
    pub checks: Vec<CheckEntry>,
    pub all_passed: bool,
}

/// `checks_arg` is "all" or a comma-separated subset of the check names.
pub fn build_verify_report(form_name: &str, checks_arg: &str, seed: u64) -> Result<VerifyReport> {
    let data = realform::load_form(form_name)?;
    let system = data.realize()?;
    let names: Vec<&str> = if checks_arg == "all" {
        verify::CHECK_NAMES.to_vec()
    } else {
        checks_arg.split(',').map(str::trim).filter(|s| !s.is_empty()).collect()
    };
    if names.is_empty() {
        return Err(Error::domain("verify", "no checks requested".to_string()));
    }
    let results = verify::run_checks(&system, &names, seed)?;
    let all_passed = results.iter().all(|r| r.passed());
    let checks = results
        .into_iter()
        .map(|r| {
            let (status, detail) = match r.status {
                CheckStatus::Pass => ("pass", None),
                CheckStatus::Fail(d) => ("fail", Some(d)),
                CheckStatus::Skipped(d) => ("skipped", Some(d)),
            };
            CheckEntry { name: r.name.to_string(), status: status.to_string(), detail }
        })
        .collect();
    Ok(VerifyReport {
        schema_version: SCHEMA_VERSION,
        kind: "verify",
        form: form_summary(&data, &system),
        seed,
        checks,
        all_passed,
    })
}

// ---------------------------------------------------------------------------
// numeric

#[derive(Serialize)]
pub struct NumericTest {
    pub name: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratios: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_rel_spread: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub operator_value: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbit_value: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub integral: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rel_err: Option<f64>,
}

impl NumericTest {
    fn bare(name: &str) -> Self {
        NumericTest {
            name: name.to_string(),
            status: String::new(),
            detail: None,
            ratios: None,
            expected: None,
            max_rel_spread: None,
            operator_value: None,
            orbit_value: None,
            integral: None,
            reference: None,
            rel_err: None,
        }
    }
}

#[derive(Serialize)]
pub struct NumericReport {
    pub schema_version: u32,
    pub kind: &'static str,
    pub dimension: usize,
    pub lambda: f64,
    pub tests: Vec<NumericTest>,
    pub all_passed: bool,
}

fn orthogonality_battery(lambda: f64) -> Vec<(f64, TestFunction, TestFunction)> {
    let pairs = [
        (TestFunction::Hermite(0), TestFunction::Hermite(0)),
        (TestFunction::Hermite(1), TestFunction::Hermite(2)),
        (TestFunction::Hermite(0), TestFunction::Hermite(3)),
        (TestFunction::Gaussian { sigma: 0.8 }, TestFunction::Hermite(1)),
        (TestFunction::Gaussian { sigma: 1.2 }, TestFunction::Gaussian { sigma: 1.0 }),
    ];
    [lambda, 0.6 * lambda, 1.7 * lambda]
        .into_iter()
        .flat_map(|l| pairs.into_iter().map(move |(u, v)| (l, u, v)))
        .collect()
}

fn run_orthogonality(lambda: f64) -> NumericTest {
    let mut t = NumericTest::bare("orthogonality");
    let mut ratios = Vec::new();
    for (l, u, v) in orthogonality_battery(lambda) {
        match sqint::coefficient_ratio(l, u, v) {
            Ok(r) => ratios.push(r),
            Err(e) => {
                t.status = "fail".to_string();
                t.detail = Some(e.to_string());
                return t;
            }
        }
    }
    let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
    let max = ratios.iter().cloned().fold(f64::MIN, f64::max);
    let min = ratios.iter().cloned().fold(f64::MAX, f64::min);
    let spread = (max - min) / mean;
    let kappa_err = (mean - TWO_PI).abs() / TWO_PI;
    let ok = spread <= 1.0e-5 && kappa_err <= 1.0e-4;
    t.status = if ok { "pass" } else { "fail" }.to_string();
    t.ratios = Some(ratios);
    t.expected = Some(TWO_PI);
    t.max_rel_spread = Some(spread);
    t.rel_err = Some(kappa_err);
    t
}

fn run_character(dimension: usize, lambda: f64) -> NumericTest {
    let mut t = NumericTest::bare("character");
    let f = GroupGaussian::standard(dimension);
    let (states, tol) = if dimension == 1 { (64, 1.0e-6) } else { (32, 1.0e-5) };
    match sqint::character_comparison(lambda, &f, states) {
        Ok(cmp) => {
            t.status = if cmp.rel_err <= tol { "pass" } else { "fail" }.to_string();
            t.operator_value = Some([cmp.operator_value.re, cmp.operator_value.im]);
            t.orbit_value = Some([cmp.orbit_value.re, cmp.orbit_value.im]);
            t.rel_err = Some(cmp.rel_err);
        }
        Err(e) => {
            t.status = "fail".to_string();
            t.detail = Some(e.to_string());
        }
    }
    t
}

fn run_inversion(dimension: usize) -> NumericTest {
    let mut t = NumericTest::bare("inversion");
    let f = GroupGaussian::standard(dimension);
    let tol = if dimension == 1 { 1.0e-6 } else { 1.0e-5 };
    match sqint::plancherel_inversion(&f) {
        Ok(res) => {
            t.status = if res.rel_err <= tol { "pass" } else { "fail" }.to_string();
            t.integral = Some(res.integral);
            t.reference = Some(res.reference);
            t.rel_err = Some(res.rel_err);
        }
        Err(e) => {
            t.status = "fail".to_string();
            t.detail = Some(e.to_string());
        }
    }
    t
}

/// `which` is one of orthogonality, character, inversion, all.  The
/// orthogonality battery exists for dimension 1 only; asking for it at
/// dimension 2 is a usage error, while `all` simply narrows.
pub fn build_numeric_report(dimension: usize, which: &str, lambda: f64) -> Result<NumericReport> {
    if dimension != 1 && dimension != 2 {
        return Err(Error::domain("numeric", "dimension must be 1 or 2".to_string()));
    }
    if lambda == 0.0 || !lambda.is_finite() {
        return Err(Error::domain("numeric", "lambda must be nonzero and finite".to_string()));
    }
    let names: Vec<&str> = match which {
        "all" => {
            if dimension == 1 {
                vec!["orthogonality", "character", "inversion"]
            } else {
                vec!["character", "inversion"]
            }
        }
        "orthogonality" | "character" | "inversion" => vec![which],
        other => {
            return Err(Error::domain("numeric", format!("unknown test '{}'", other)));
        }
    };
    if names.contains(&"orthogonality") && dimension != 1 {
        return Err(Error::domain(
            "numeric",
            "the orthogonality battery is only available at dimension 1".to_string(),
        ));
    }
    let tests: Vec<NumericTest> = names
        .into_iter()
        .map(|n| match n {
            "orthogonality" => run_orthogonality(lambda),
            "character" => run_character(dimension, lambda),
            "inversion" => run_inversion(dimension),
            _ => unreachable!(),
        })
        .collect();
    let all_passed = tests.iter().all(|t| t.status == "pass");
    Ok(NumericReport {
        schema_version: SCHEMA_VERSION,
        kind: "numeric",
        dimension,
        lambda,
        tests,
        all_passed,
    })
}

// ---------------------------------------------------------------------------
// forms

#[derive(Serialize)]
pub struct FormListing {
    pub name: String,
    pub label: String,
    pub rank: usize,
    pub split: bool,
}

#[derive(Serialize)]
pub struct FormsReport {
    pub schema_version: u32,
    pub kind: &'static str,
    pub forms: Vec<FormListing>,
}

pub fn build_forms_report() -> Result<FormsReport> {
    let mut forms = Vec::new();
    for name in realform::catalog_names() {
        let data = realform::load_form(&name)?;
        forms.push(FormListing {
            name: data.name.clone(),
            label: data.label.to_string(),
            rank: data.label.rank,
            split: data.is_split(),
        });
    }
    Ok(FormsReport { schema_version: SCHEMA_VERSION, kind: "forms", forms })
}

// ---------------------------------------------------------------------------
// rendering

pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("reports serialize");
    s.push('\n');
    s
}

fn coords_inline(coords: &[String]) -> String {
    format!("({})", coords.join(","))
}

pub fn markdown_cascade(r: &CascadeReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("# Cascade decomposition: {} ({})\n\n", r.form.name, r.form.label));
    out.push_str(&format!(
        "rank {}, dim n = {}, dim s = {}, c = {}\n\n",
        r.form.rank,
        r.cascade.dim_n,
        r.cascade.dim_s,
        r.cascade.c_constant.as_deref().unwrap_or("(not integral)"),
    ));
    out.push_str("| r | beta_r | d_r | dim z_r | dim l_r | modular exponent |\n");
    out.push_str("|---|--------|-----|---------|---------|------------------|\n");
    for i in 0..r.cascade.m {
        out.push_str(&format!(
            "| {} | {} | {} | {} | {} | {} |\n",
            i + 1,
            coords_inline(&r.cascade.betas[i]),
            r.cascade.d[i],
            r.cascade.dim_z[i],
            r.cascade.dim_l[i],
            r.cascade.modular_exponents[i],
        ));
    }
    out.push('\n');
    for (i, layer) in r.cascade.layers.iter().enumerate() {
        let roots: Vec<String> = layer.iter().map(|c| coords_inline(c)).collect();
        out.push_str(&format!("- layer {}: [{}]\n", i + 1, roots.join(", ")));
    }
    if !r.cascade.a_diamond.is_empty() {
        let gens: Vec<String> = r.cascade.a_diamond.iter().map(|c| coords_inline(c)).collect();
        out.push_str(&format!("- a-diamond generators: [{}]\n", gens.join(", ")));
    }
    if let Some(sym) = &r.symbol {
        out.push('\n');
        out.push_str(&format!("- Pfaffian: {}\n", sym.pfaffian));
        out.push_str(&format!("- quasi-center determinant: {}\n", sym.determinant));
        out.push_str(&format!(
            "- inversion operator symbol: {} (degree {})\n",
            sym.dp_symbol, sym.dp_degree
        ));
    }
    out
}

pub fn markdown_verify(r: &VerifyReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("# Verification: {} ({})\n\n", r.form.name, r.form.label));
    out.push_str(&format!("seed {}\n\n", r.seed));
    out.push_str("| check | status | detail |\n|-------|--------|--------|\n");
    for c in &r.checks {
        out.push_str(&format!(
            "| {} | {} | {} |\n",
            c.name,
            c.status,
            c.detail.as_deref().unwrap_or("")
        ));
    }
    out.push_str(&format!(
        "\noverall: {}\n",
        if r.all_passed { "all checks passed" } else { "FAILURES PRESENT" }
    ));
    out
}

pub fn markdown_numeric(r: &NumericReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("# Heisenberg quadrature checks (d = {})\n\n", r.dimension));
    out.push_str(&format!("lambda {}\n\n", r.lambda));
    for t in &r.tests {
        out.push_str(&format!("- {}: {}", t.name, t.status));
        if let Some(e) = t.rel_err {
            out.push_str(&format!(" (relative error {:.3e})", e));
        }
        if let Some(d) = &t.detail {
            out.push_str(&format!(" [{}]", d));
        }
        out.push('\n');
    }
    out.push_str(&format!(
        "\noverall: {}\n",
        if r.all_passed { "all tests passed" } else { "FAILURES PRESENT" }
    ));
    out
}

pub fn markdown_forms(r: &FormsReport) -> String {
    let mut out = String::new();
    out.push_str("# Built-in forms\n\n| name | restricted type | rank | split |\n|------|------|------|-------|\n");
    for f in &r.forms {
        out.push_str(&format!("| {} | {} | {} | {} |\n", f.name, f.label, f.rank, f.split));
    }
    out
}

/// Exit status for a finished report: 1 when something failed, 0 otherwise.
pub fn exit_for(all_passed: bool) -> u8 {
    if all_passed {
        0
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cascade_report_has_symbol_only_when_split_reduced() {
        let split = build_cascade_report("split-A2").unwrap();
        assert!(split.symbol.is_some());
        let nonsplit = build_cascade_report("su(2,1)").unwrap();
        assert!(nonsplit.symbol.is_none());
        assert_eq!(nonsplit.kind, "cascade");
    }

    #[test]
    fn verify_report_flags_status() {
        let r = build_verify_report("split-A2", "all", 0).unwrap();
        assert!(r.all_passed);
        assert_eq!(r.checks.len(), verify::CHECK_NAMES.len());
        assert_eq!(exit_for(r.all_passed), 0);
        assert_eq!(exit_for(false), 1);
    }

    #[test]
    fn verify_rejects_unknown_checks() {
        assert!(build_verify_report("split-A2", "partition,bogus", 0).is_err());
        assert!(build_verify_report("split-A2", "", 0).is_err());
    }

    #[test]
    fn numeric_rejects_bad_arguments() {
        assert!(build_numeric_report(3, "all", 1.0).is_err());
        assert!(build_numeric_report(1, "all", 0.0).is_err());
        assert!(build_numeric_report(1, "nope", 1.0).is_err());
        assert!(build_numeric_report(2, "orthogonality", 1.0).is_err());
    }

    #[test]
    fn forms_report_lists_catalog() {
        let r = build_forms_report().unwrap();
        assert_eq!(r.forms.len(), realform::catalog_names().len());
        assert!(r.forms.iter().any(|f| f.name == "split-E8"));
        assert!(r.forms.iter().any(|f| f.name == "su(2,1)" && !f.split));
    }

    #[test]
    fn json_rendering_is_stable() {
        let a = to_json(&build_cascade_report("split-A3").unwrap());
        let b = to_json(&build_cascade_report("split-A3").unwrap());
        assert_eq!(a, b);
        assert!(a.ends_with('\n'));
        let doc: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(doc["schema_version"], 1);
        assert_eq!(doc["kind"], "cascade");
    }

    #[test]
    fn markdown_renders_each_kind() {
        let c = build_cascade_report("split-C2").unwrap();
        assert!(markdown_cascade(&c).contains("Pfaffian"));
        let v = build_verify_report("split-C2", "partition", 0).unwrap();
        assert!(markdown_verify(&v).contains("partition"));
        let f = build_forms_report().unwrap();
        assert!(markdown_forms(&f).contains("split-G2"));
    }
}

//! JSON documents exchanged by the command-line tool.
//!
//! Indices are 1-based in every document and 0-based in memory; conversion
//! happens only here. Values are exact rationals written as strings
//! (`"-2/3"`). Sparse lists are emitted in ascending index order, so emitting
//! the same value twice yields identical bytes.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::curvature::{CurvatureModel, HigaParts, SymmetryReport};
use crate::error::{Error, Result};
use crate::realization::{
    verify_affine, verify_realization, ConnectionJet, GaugeFunction, MetricJet, OneFormJet, RealizationReport,
    WeylJet,
};
use crate::scalar::{format_rational, parse_rational, Rational};
use crate::tensor::{InnerProduct, Tensor2, Tensor3, Tensor4, TwoForm};

pub const FORMAT_VERSION: &str = "1";

pub type Entry1 = (usize, String);
pub type Entry2 = (usize, usize, String);
pub type Entry3 = (usize, usize, usize, String);
pub type Entry4 = (usize, usize, usize, usize, String);

fn check_version(found: &str) -> Result<()> {
    if found != FORMAT_VERSION {
        return Err(Error::Parse(format!(
            "format_version: expected {FORMAT_VERSION:?}, found {found:?}"
        )));
    }
    Ok(())
}

fn index(field: &str, pos: usize, value: usize, n: usize) -> Result<usize> {
    if value == 0 || value > n {
        return Err(Error::Parse(format!("{field}[{pos}]: index {value} outside 1..={n}")));
    }
    Ok(value - 1)
}

fn value(field: &str, pos: usize, text: &str) -> Result<Rational> {
    parse_rational(text).map_err(|e| Error::Parse(format!("{field}[{pos}]: {e}")))
}

fn dedupe<K: Ord>(seen: &mut BTreeSet<K>, key: K, field: &str, pos: usize) -> Result<()> {
    if !seen.insert(key) {
        return Err(Error::Parse(format!("{field}[{pos}]: duplicate index")));
    }
    Ok(())
}

fn nonzero(v: &Rational) -> bool {
    *v != Rational::from_integer(0.into())
}

pub fn sparse4(t: &Tensor4) -> Vec<Entry4> {
    t.indexed()
        .filter(|(_, v)| nonzero(v))
        .map(|([i, j, k, l], v)| (i + 1, j + 1, k + 1, l + 1, format_rational(v)))
        .collect()
}

pub fn dense4(n: usize, entries: &[Entry4], field: &str) -> Result<Tensor4> {
    let mut flat = vec![Rational::from_integer(0.into()); n.pow(4)];
    let mut seen = BTreeSet::new();
    for (pos, (i, j, k, l, v)) in entries.iter().enumerate() {
        let idx = [
            index(field, pos, *i, n)?,
            index(field, pos, *j, n)?,
            index(field, pos, *k, n)?,
            index(field, pos, *l, n)?,
        ];
        dedupe(&mut seen, idx, field, pos)?;
        flat[((idx[0] * n + idx[1]) * n + idx[2]) * n + idx[3]] = value(field, pos, v)?;
    }
    Tensor4::from_entries(n, flat)
}

/// Upper-triangle entries `(i, j, ψ(i,j))`, i < j.
pub fn sparse_two_form(psi: &TwoForm) -> Vec<Entry2> {
    let n = psi.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if nonzero(psi.get(i, j)) {
                out.push((i + 1, j + 1, format_rational(psi.get(i, j))));
            }
        }
    }
    out
}

pub fn dense_two_form(n: usize, entries: &[Entry2], field: &str) -> Result<TwoForm> {
    let mut upper = vec![Rational::from_integer(0.into()); n * n];
    let mut seen = BTreeSet::new();
    for (pos, (i, j, v)) in entries.iter().enumerate() {
        let (i, j) = (index(field, pos, *i, n)?, index(field, pos, *j, n)?);
        if i >= j {
            return Err(Error::Parse(format!("{field}[{pos}]: expected i < j")));
        }
        dedupe(&mut seen, (i, j), field, pos)?;
        upper[i * n + j] = value(field, pos, v)?;
    }
    Ok(TwoForm::from_upper(n, |i, j| upper[i * n + j].clone()))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDocument {
    pub format_version: String,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signature: Option<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<Vec<Vec<String>>>,
    #[serde(rename = "A", default)]
    pub a: Vec<Entry4>,
}

impl ModelDocument {
    /// Writes the metric as a signature when it is `diag(+1…, −1…)`.
    pub fn from_model(model: &CurvatureModel) -> Self {
        let h = model.h();
        let (signature, matrix) = if h.is_canonical() {
            (Some(h.signature()), None)
        } else {
            let n = h.dim();
            let rows = (0..n)
                .map(|i| (0..n).map(|j| format_rational(h.get(i, j))).collect())
                .collect();
            (None, Some(rows))
        };
        Self {
            format_version: FORMAT_VERSION.into(),
            dim: model.dim(),
            signature,
            h: matrix,
            a: sparse4(model.tensor()),
        }
    }

    pub fn inner_product(&self) -> Result<InnerProduct> {
        check_version(&self.format_version)?;
        let n = self.dim;
        let h = match (&self.signature, &self.h) {
            (Some((p, q)), None) => {
                if p + q != n {
                    return Err(Error::Parse(format!("signature: ({p}, {q}) does not sum to dim {n}")));
                }
                InnerProduct::from_signature(*p, *q).map_err(|e| Error::Parse(format!("signature: {e}")))?
            }
            (None, Some(rows)) => {
                if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                    return Err(Error::Parse(format!("h: expected a {n}x{n} matrix")));
                }
                let parsed = rows
                    .iter()
                    .enumerate()
                    .map(|(i, r)| r.iter().map(|v| value("h", i, v)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                let m = Tensor2::from_rows(parsed).map_err(|e| Error::Parse(format!("h: {e}")))?;
                match InnerProduct::from_matrix(m) {
                    Err(Error::Shape(msg)) => return Err(Error::Parse(format!("h: {msg}"))),
                    Err(Error::Dimension(msg)) => return Err(Error::Parse(format!("h: {msg}"))),
                    other => other?,
                }
            }
            _ => return Err(Error::Parse("exactly one of \"signature\" or \"h\" is required".into())),
        };
        Ok(h)
    }

    pub fn to_model(&self) -> Result<CurvatureModel> {
        let h = self.inner_product()?;
        let a = dense4(self.dim, &self.a, "A")?;
        CurvatureModel::new(h, a)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum JetKind {
    Weyl,
    Riemann,
    Affine,
}

impl JetKind {
    pub fn name(self) -> &'static str {
        match self {
            JetKind::Weyl => "weyl",
            JetKind::Riemann => "riemann",
            JetKind::Affine => "affine",
        }
    }
}

/// A realization of a model in one of the three geometries.
#[derive(Clone, Debug, PartialEq)]
pub enum Jet {
    Weyl(WeylJet),
    /// Weyl jet with φ = 0.
    Riemann(WeylJet),
    Affine {
        connection: ConnectionJet,
        model: CurvatureModel,
    },
}

impl Jet {
    pub fn kind(&self) -> JetKind {
        match self {
            Jet::Weyl(_) => JetKind::Weyl,
            Jet::Riemann(_) => JetKind::Riemann,
            Jet::Affine { .. } => JetKind::Affine,
        }
    }

    pub fn model(&self) -> &CurvatureModel {
        match self {
            Jet::Weyl(j) | Jet::Riemann(j) => j.model(),
            Jet::Affine { model, .. } => model,
        }
    }

    pub fn connection(&self) -> &ConnectionJet {
        match self {
            Jet::Weyl(j) | Jet::Riemann(j) => j.connection(),
            Jet::Affine { connection, .. } => connection,
        }
    }

    pub fn verify(&self) -> RealizationReport {
        match self {
            Jet::Weyl(j) | Jet::Riemann(j) => verify_realization(j),
            Jet::Affine { connection, model } => {
                verify_affine(connection, model).expect("dimensions checked when the jet was built")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JetDocument {
    pub format_version: String,
    pub kind: JetKind,
    pub dim: usize,
    pub model: ModelDocument,
    /// `[k, i, j, v]` with i ≤ j: coefficient of x^k in g_ij.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub metric_linear: Vec<Entry3>,
    /// `[k, l, i, j, v]` with k ≤ l, i ≤ j: G(k,l,i,j) = G(l,k,i,j), the
    /// quadratic part being Σ_{k,l} G(k,l,i,j) x^k x^l over all k, l.
    #[serde(default)]
    pub metric_quad: Vec<Entry4>,
    /// `[l, i, v]`: coefficient of x^l in φ_i.
    #[serde(default)]
    pub phi: Vec<Entry2>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub phi_const: Vec<Entry1>,
    /// `[j, k, l, v]`: Γ_{jkl}(0).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub connection_const: Vec<Entry3>,
    /// `[i, j, k, l, v]`: coefficient of x^i in Γ_{jkl}.
    #[serde(default)]
    pub connection: Vec<Entry4>,
}

impl JetDocument {
    pub fn from_jet(jet: &Jet) -> Self {
        let model = ModelDocument::from_model(jet.model());
        let conn = jet.connection();
        let (metric_linear, metric_quad, phi, phi_const) = match jet {
            Jet::Weyl(j) | Jet::Riemann(j) => (
                sparse_metric_linear(j.metric().linear()),
                sparse_metric_quad(j.metric().quad()),
                sparse_phi(j.phi().linear()),
                j.phi()
                    .constant()
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| nonzero(v))
                    .map(|(i, v)| (i + 1, format_rational(v)))
                    .collect(),
            ),
            Jet::Affine { .. } => (vec![], vec![], vec![], vec![]),
        };
        let connection_const = (0..conn.dim().pow(3))
            .filter_map(|f| {
                let n = conn.dim();
                let (j, k, l) = (f / (n * n), (f / n) % n, f % n);
                let v = conn.constant().get(j, k, l);
                nonzero(v).then(|| (j + 1, k + 1, l + 1, format_rational(v)))
            })
            .collect();
        Self {
            format_version: FORMAT_VERSION.into(),
            kind: jet.kind(),
            dim: jet.model().dim(),
            model,
            metric_linear,
            metric_quad,
            phi,
            phi_const,
            connection_const,
            connection: sparse4(conn.linear()),
        }
    }

    pub fn to_jet(&self) -> Result<Jet> {
        check_version(&self.format_version)?;
        let n = self.dim;
        let model = self.model.to_model()?;
        if model.dim() != n {
            return Err(Error::Parse(format!("model.dim: {} differs from jet dim {n}", model.dim())));
        }
        let h = model.h().clone();

        let mut conn_const = vec![Rational::from_integer(0.into()); n.pow(3)];
        let mut seen = BTreeSet::new();
        for (pos, (j, k, l, v)) in self.connection_const.iter().enumerate() {
            let f = "connection_const";
            let idx = [index(f, pos, *j, n)?, index(f, pos, *k, n)?, index(f, pos, *l, n)?];
            dedupe(&mut seen, idx, f, pos)?;
            conn_const[(idx[0] * n + idx[1]) * n + idx[2]] = value(f, pos, v)?;
        }
        let connection = ConnectionJet::new(
            h.clone(),
            Tensor3::from_entries(n, conn_const)?,
            dense4(n, &self.connection, "connection")?,
        )?;

        if self.kind == JetKind::Affine {
            if !(self.metric_linear.is_empty() && self.metric_quad.is_empty() && self.phi.is_empty() && self.phi_const.is_empty()) {
                return Err(Error::Parse("affine jets carry no metric or one-form entries".into()));
            }
            return Ok(Jet::Affine { connection, model });
        }

        let metric = MetricJet::new(
            h,
            dense_metric_linear(n, &self.metric_linear)?,
            dense_metric_quad(n, &self.metric_quad)?,
        )
        .map_err(|e| Error::Parse(format!("metric: {e}")))?;
        let mut constant = vec![Rational::from_integer(0.into()); n];
        let mut seen = BTreeSet::new();
        for (pos, (i, v)) in self.phi_const.iter().enumerate() {
            let i = index("phi_const", pos, *i, n)?;
            dedupe(&mut seen, i, "phi_const", pos)?;
            constant[i] = value("phi_const", pos, v)?;
        }
        let phi = OneFormJet::new(constant, dense_phi(n, &self.phi)?)?;
        let jet = WeylJet::with_connection(metric, phi, connection, model)?;
        Ok(match self.kind {
            JetKind::Riemann => Jet::Riemann(jet),
            _ => Jet::Weyl(jet),
        })
    }
}

fn sparse_metric_linear(l: &Tensor3) -> Vec<Entry3> {
    let n = l.dim();
    let mut out = Vec::new();
    for k in 0..n {
        for i in 0..n {
            for j in i..n {
                let v = l.get(k, i, j);
                if nonzero(v) {
                    out.push((k + 1, i + 1, j + 1, format_rational(v)));
                }
            }
        }
    }
    out
}

fn dense_metric_linear(n: usize, entries: &[Entry3]) -> Result<Tensor3> {
    let field = "metric_linear";
    let mut flat = vec![Rational::from_integer(0.into()); n.pow(3)];
    let mut seen = BTreeSet::new();
    for (pos, (k, i, j, v)) in entries.iter().enumerate() {
        let (k, i, j) = (index(field, pos, *k, n)?, index(field, pos, *i, n)?, index(field, pos, *j, n)?);
        if i > j {
            return Err(Error::Parse(format!("{field}[{pos}]: expected i <= j")));
        }
        dedupe(&mut seen, (k, i, j), field, pos)?;
        let v = value(field, pos, v)?;
        flat[(k * n + i) * n + j] = v.clone();
        flat[(k * n + j) * n + i] = v;
    }
    Tensor3::from_entries(n, flat)
}

fn sparse_metric_quad(g: &Tensor4) -> Vec<Entry4> {
    g.indexed()
        .filter(|([k, l, i, j], v)| k <= l && i <= j && nonzero(v))
        .map(|([k, l, i, j], v)| (k + 1, l + 1, i + 1, j + 1, format_rational(v)))
        .collect()
}

fn dense_metric_quad(n: usize, entries: &[Entry4]) -> Result<Tensor4> {
    let field = "metric_quad";
    let mut flat = vec![Rational::from_integer(0.into()); n.pow(4)];
    let at = |k: usize, l: usize, i: usize, j: usize| ((k * n + l) * n + i) * n + j;
    let mut seen = BTreeSet::new();
    for (pos, (k, l, i, j, v)) in entries.iter().enumerate() {
        let (k, l) = (index(field, pos, *k, n)?, index(field, pos, *l, n)?);
        let (i, j) = (index(field, pos, *i, n)?, index(field, pos, *j, n)?);
        if k > l || i > j {
            return Err(Error::Parse(format!("{field}[{pos}]: expected k <= l and i <= j")));
        }
        dedupe(&mut seen, (k, l, i, j), field, pos)?;
        let v = value(field, pos, v)?;
        for (a, b) in [(k, l), (l, k)] {
            for (c, d) in [(i, j), (j, i)] {
                flat[at(a, b, c, d)] = v.clone();
            }
        }
    }
    Tensor4::from_entries(n, flat)
}

fn sparse_phi(m: &Tensor2) -> Vec<Entry2> {
    let n = m.dim();
    let mut out = Vec::new();
    for l in 0..n {
        for i in 0..n {
            if nonzero(m.get(l, i)) {
                out.push((l + 1, i + 1, format_rational(m.get(l, i))));
            }
        }
    }
    out
}

fn dense_phi(n: usize, entries: &[Entry2]) -> Result<Tensor2> {
    let mut flat = vec![Rational::from_integer(0.into()); n * n];
    let mut seen = BTreeSet::new();
    for (pos, (l, i, v)) in entries.iter().enumerate() {
        let (l, i) = (index("phi", pos, *l, n)?, index("phi", pos, *i, n)?);
        dedupe(&mut seen, (l, i), "phi", pos)?;
        flat[l * n + i] = value("phi", pos, v)?;
    }
    Tensor2::from_entries(n, flat)
}

/// `f(x) = Σ_k a_k x^k + Σ_{k,l} Q_kl x^k x^l`; `quad` lists `[k, l, v]` with k ≤ l.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaugeDocument {
    #[serde(default = "default_version")]
    pub format_version: String,
    pub dim: usize,
    #[serde(default)]
    pub linear: Vec<Entry1>,
    #[serde(default)]
    pub quad: Vec<Entry2>,
}

fn default_version() -> String {
    FORMAT_VERSION.into()
}

impl GaugeDocument {
    pub fn from_gauge(f: &GaugeFunction) -> Self {
        let n = f.dim();
        let linear = f
            .linear()
            .iter()
            .enumerate()
            .filter(|(_, v)| nonzero(v))
            .map(|(k, v)| (k + 1, format_rational(v)))
            .collect();
        let mut quad = Vec::new();
        for k in 0..n {
            for l in k..n {
                let v = f.quad().get(k, l);
                if nonzero(v) {
                    quad.push((k + 1, l + 1, format_rational(v)));
                }
            }
        }
        Self {
            format_version: FORMAT_VERSION.into(),
            dim: n,
            linear,
            quad,
        }
    }

    pub fn to_gauge(&self) -> Result<GaugeFunction> {
        check_version(&self.format_version)?;
        let n = self.dim;
        let mut linear = vec![Rational::from_integer(0.into()); n];
        let mut seen = BTreeSet::new();
        for (pos, (k, v)) in self.linear.iter().enumerate() {
            let k = index("linear", pos, *k, n)?;
            dedupe(&mut seen, k, "linear", pos)?;
            linear[k] = value("linear", pos, v)?;
        }
        let mut quad = vec![Rational::from_integer(0.into()); n * n];
        let mut seen = BTreeSet::new();
        for (pos, (k, l, v)) in self.quad.iter().enumerate() {
            let (k, l) = (index("quad", pos, *k, n)?, index("quad", pos, *l, n)?);
            if k > l {
                return Err(Error::Parse(format!("quad[{pos}]: expected k <= l")));
            }
            dedupe(&mut seen, (k, l), "quad", pos)?;
            let v = value("quad", pos, v)?;
            quad[k * n + l] = v.clone();
            quad[l * n + k] = v;
        }
        GaugeFunction::new(linear, Tensor2::from_entries(n, quad)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualsDocument {
    pub antisym12: String,
    pub bianchi: String,
    pub weyl: String,
    pub antisym34: String,
    pub interchange: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassificationDocument {
    pub format_version: String,
    pub kind: String,
    pub dim: usize,
    pub residuals: ResidualsDocument,
    #[serde(rename = "in_R")]
    pub in_r: bool,
    #[serde(rename = "in_W")]
    pub in_w: bool,
    #[serde(rename = "in_A")]
    pub in_a: bool,
    pub finest_class: Option<String>,
    pub success: bool,
    pub violated: Option<String>,
}

impl ClassificationDocument {
    pub fn new(dim: usize, report: &SymmetryReport) -> Self {
        let flags = report.flags();
        Self {
            format_version: FORMAT_VERSION.into(),
            kind: "classification".into(),
            dim,
            residuals: ResidualsDocument {
                antisym12: format_rational(&report.antisym12),
                bianchi: format_rational(&report.bianchi),
                weyl: format_rational(&report.weyl),
                antisym34: format_rational(&report.antisym34),
                interchange: format_rational(&report.interchange),
            },
            in_r: flags.in_r,
            in_w: flags.in_w,
            in_a: flags.in_a,
            finest_class: flags.finest().map(|c| c.letter().to_string()),
            success: flags.in_r,
            violated: report.first_violation().map(|e| e.label().to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionDocument {
    pub format_version: String,
    pub kind: String,
    pub dim: usize,
    pub success: bool,
    pub violated: Option<String>,
    #[serde(rename = "A1")]
    pub a1: Vec<Entry4>,
    pub psi: Vec<Entry2>,
}

impl DecompositionDocument {
    pub fn new(dim: usize, parts: &HigaParts) -> Self {
        Self {
            format_version: FORMAT_VERSION.into(),
            kind: "decomposition".into(),
            dim,
            success: true,
            violated: None,
            a1: sparse4(&parts.algebraic),
            psi: sparse_two_form(&parts.psi),
        }
    }

    pub fn failure(dim: usize, violated: &str) -> Self {
        Self {
            format_version: FORMAT_VERSION.into(),
            kind: "decomposition".into(),
            dim,
            success: false,
            violated: Some(violated.into()),
            a1: vec![],
            psi: vec![],
        }
    }

    pub fn to_parts(&self) -> Result<HigaParts> {
        check_version(&self.format_version)?;
        Ok(HigaParts {
            algebraic: dense4(self.dim, &self.a1, "A1")?,
            psi: dense_two_form(self.dim, &self.psi, "psi")?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealizationDocument {
    pub format_version: String,
    pub kind: String,
    pub jet_kind: JetKind,
    pub success: bool,
    pub violated: Option<String>,
    pub max_abs_difference: String,
    pub metric_difference: String,
    pub compatibility_max: Option<String>,
    pub torsion_max: String,
    pub dphi_check: Option<String>,
    pub curvature_at_origin: Vec<Entry4>,
    pub target: Vec<Entry4>,
}

impl RealizationDocument {
    pub fn new(kind: JetKind, report: &RealizationReport) -> Self {
        Self {
            format_version: FORMAT_VERSION.into(),
            kind: "realization".into(),
            jet_kind: kind,
            success: report.success,
            violated: report.first_failure().map(str::to_string),
            max_abs_difference: format_rational(&report.max_abs_difference),
            metric_difference: format_rational(&report.metric_difference),
            compatibility_max: report.compatibility_max.as_ref().map(format_rational),
            torsion_max: format_rational(&report.torsion_max),
            dphi_check: report.dphi_check.as_ref().map(format_rational),
            curvature_at_origin: sparse4(&report.curvature_at_origin),
            target: sparse4(&report.target),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorDocument {
    pub format_version: String,
    pub kind: String,
    pub exit_code: i32,
    pub error: String,
}

impl ErrorDocument {
    pub fn new(exit_code: i32, error: impl ToString) -> Self {
        Self {
            format_version: FORMAT_VERSION.into(),
            kind: "error".into(),
            exit_code,
            error: error.to_string(),
        }
    }
}

/// Indented JSON with a trailing newline. Arrays holding only scalars, such
/// as sparse entries, stay on one line.
pub fn emit<T: Serialize>(doc: &T) -> String {
    let value = serde_json::to_value(doc).expect("documents always serialize");
    let mut out = String::new();
    write_value(&value, 0, &mut out);
    out.push('\n');
    out
}

fn write_value(v: &serde_json::Value, depth: usize, out: &mut String) {
    use serde_json::Value;
    let pad = |d: usize, out: &mut String| out.extend(std::iter::repeat_n("  ", d));
    match v {
        Value::Array(items) if items.iter().any(|x| x.is_array() || x.is_object()) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                pad(depth + 1, out);
                write_value(x, depth + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            pad(depth, out);
            out.push(']');
        }
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                pad(depth + 1, out);
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(x, depth + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            pad(depth, out);
            out.push('}');
        }
        Value::Array(items) => {
            let inner: Vec<String> = items.iter().map(Value::to_string).collect();
            out.push('[');
            out.push_str(&inner.join(", "));
            out.push(']');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

/// Parses JSON, reporting line and column on syntax or field errors.
pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn parse_model(text: &str) -> Result<CurvatureModel> {
    parse::<ModelDocument>(text)?.to_model()
}

pub fn parse_jet(text: &str) -> Result<Jet> {
    parse::<JetDocument>(text)?.to_jet()
}

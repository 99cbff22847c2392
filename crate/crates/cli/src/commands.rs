use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use serde_json::json;
use weylcurv_core::batch::{self, Execution};
use weylcurv_core::curvature::{higa_decompose, require_class, symmetry_report};
use weylcurv_core::document::{
    emit, parse, ClassificationDocument, DecompositionDocument, ErrorDocument, GaugeDocument, Jet, JetDocument,
    ModelDocument, RealizationDocument, FORMAT_VERSION,
};
use weylcurv_core::generate::random_curvature;
use weylcurv_core::realization::{affine_realize, gauge_transform, riemann_jet, weyl_realize};
use weylcurv_core::tensor::MAX_DIM;
use weylcurv_core::{CurvatureClass, CurvatureModel, Error, GaugeFunction, InnerProduct};

use crate::{ClassArg, TargetArg};

pub const SEMANTIC: u8 = 1;
pub const USAGE: u8 = 2;
pub const DEGENERATE: u8 = 3;

pub struct Outcome {
    pub code: u8,
    pub stdout: Option<String>,
}

impl Outcome {
    fn print(code: u8, text: String) -> Self {
        Self {
            code,
            stdout: Some(text),
        }
    }
}

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: USAGE,
            message: message.into(),
        }
    }

    pub fn document(&self) -> String {
        emit(&ErrorDocument::new(self.code as i32, &self.message))
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Class { .. } => SEMANTIC,
            Error::Degenerate(_) => DEGENERATE,
            Error::Parse(_) | Error::Dimension(_) | Error::Shape(_) => USAGE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<Outcome, Failure>;

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::usage(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{path}: {e}")))
}

fn write_or_print(out: Option<&str>, text: String) -> CmdResult {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::usage(format!("{path}: {e}")))?;
            Ok(Outcome { code: 0, stdout: None })
        }
        None => Ok(Outcome::print(0, text)),
    }
}

fn read_model(path: &str) -> Result<CurvatureModel, Failure> {
    let doc: ModelDocument = parse(&read_input(path)?)?;
    Ok(doc.to_model()?)
}

pub fn classify(input: &str) -> CmdResult {
    let model = read_model(input)?;
    let report = symmetry_report(model.tensor(), model.h())?;
    let doc = ClassificationDocument::new(model.dim(), &report);
    let code = if doc.in_r { 0 } else { SEMANTIC };
    Ok(Outcome::print(code, emit(&doc)))
}

pub fn decompose(input: &str) -> CmdResult {
    let model = read_model(input)?;
    match higa_decompose(&model) {
        Ok(parts) => Ok(Outcome::print(0, emit(&DecompositionDocument::new(model.dim(), &parts)))),
        Err(Error::Class { violated, .. }) => Ok(Outcome::print(
            SEMANTIC,
            emit(&DecompositionDocument::failure(model.dim(), violated.label())),
        )),
        Err(e) => Err(e.into()),
    }
}

pub fn realize(input: &str, target: TargetArg, out: Option<&str>) -> CmdResult {
    let model = read_model(input)?;
    let jet = match target {
        TargetArg::Weyl => Jet::Weyl(weyl_realize(&model)?),
        TargetArg::Riemann => Jet::Riemann(riemann_jet(&model)?),
        TargetArg::Affine => {
            require_class(model.tensor(), model.h(), CurvatureClass::Generalized)?;
            Jet::Affine {
                connection: affine_realize(model.tensor(), model.h())?,
                model,
            }
        }
    };
    write_or_print(out, emit(&JetDocument::from_jet(&jet)))
}

fn jet_files(dir: &Path) -> Result<Vec<PathBuf>, Failure> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Failure::usage(format!("{}: {e}", dir.display())))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    Ok(files)
}

fn verify_text(text: &str) -> Result<RealizationDocument, Failure> {
    let doc: JetDocument = parse(text)?;
    let jet = doc.to_jet()?;
    Ok(RealizationDocument::new(jet.kind(), &jet.verify()))
}

pub fn verify(path: &str, jobs: Option<usize>) -> CmdResult {
    let dir = Path::new(path);
    if path == "-" || !dir.is_dir() {
        let doc = verify_text(&read_input(path)?)?;
        let code = if doc.success { 0 } else { SEMANTIC };
        return Ok(Outcome::print(code, emit(&doc)));
    }

    let files = jet_files(dir)?;
    let texts = files
        .iter()
        .map(|p| fs::read_to_string(p).map_err(|e| Failure::usage(format!("{}: {e}", p.display()))))
        .collect::<Result<Vec<_>, _>>()?;
    let results = batch::with_jobs(jobs, || {
        batch::map(Execution::default(), &texts, |t| verify_text(t))
    });
    let mut reports = Vec::with_capacity(files.len());
    for (file, result) in files.iter().zip(results) {
        let report = result.map_err(|f| Failure {
            code: f.code,
            message: format!("{}: {}", file.display(), f.message),
        })?;
        reports.push((file, report));
    }
    let success = reports.iter().all(|(_, r)| r.success);
    let doc = json!({
        "format_version": FORMAT_VERSION,
        "kind": "batch",
        "success": success,
        "reports": reports
            .iter()
            .map(|(file, r)| json!({
                "file": file.file_name().map(|n| n.to_string_lossy().into_owned()),
                "report": r,
            }))
            .collect::<Vec<_>>(),
    });
    Ok(Outcome::print(if success { 0 } else { SEMANTIC }, emit(&doc)))
}

fn parse_signature(text: &str, dim: usize) -> Result<(usize, usize), Failure> {
    let bad = || Failure::usage(format!("--signature {text:?}: expected p,q with p + q = {dim}"));
    let (p, q) = text.split_once(',').ok_or_else(bad)?;
    let p: usize = p.trim().parse().map_err(|_| bad())?;
    let q: usize = q.trim().parse().map_err(|_| bad())?;
    if p + q != dim {
        return Err(bad());
    }
    Ok((p, q))
}

pub fn gen(class: ClassArg, dim: usize, signature: Option<&str>, seed: u64, out: Option<&str>) -> CmdResult {
    if !(2..=MAX_DIM).contains(&dim) {
        return Err(Failure::usage(format!("--dim {dim}: expected 2..={MAX_DIM}")));
    }
    let (p, q) = match signature {
        Some(s) => parse_signature(s, dim)?,
        None => (dim, 0),
    };
    let class = match class {
        ClassArg::R => CurvatureClass::Generalized,
        ClassArg::W => CurvatureClass::Weyl,
        ClassArg::A => CurvatureClass::Algebraic,
    };
    let h = InnerProduct::from_signature(p, q)?;
    let a = random_curvature(class, &h, seed);
    let model = CurvatureModel::new(h, a)?;
    write_or_print(out, emit(&ModelDocument::from_model(&model)))
}

pub fn gauge(jet_path: &str, f: &str, out: Option<&str>) -> CmdResult {
    let jet = parse::<JetDocument>(&read_input(jet_path)?)?.to_jet()?;
    let f_text = if f.trim_start().starts_with('{') {
        f.to_string()
    } else {
        read_input(f)?
    };
    let f = parse::<GaugeDocument>(&f_text)?.to_gauge()?;
    let weyl = match &jet {
        Jet::Weyl(j) | Jet::Riemann(j) => j,
        Jet::Affine { .. } => {
            return Err(Failure {
                code: SEMANTIC,
                message: "affine jets carry no metric to gauge".into(),
            })
        }
    };
    let gauged = gauge_transform(weyl, &f)?;
    let gauged = if matches!(jet, Jet::Riemann(_)) && f == GaugeFunction::zero(f.dim()) {
        Jet::Riemann(gauged)
    } else {
        Jet::Weyl(gauged)
    };
    write_or_print(out, emit(&JetDocument::from_jet(&gauged)))
}


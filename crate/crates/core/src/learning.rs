//! Datasets, a hinge-loss linear classifier, stratified cross-validation and
//! recursive feature elimination.

use std::fmt::Write as _;
use std::io::Read;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Variance at or below which a feature counts as constant.
pub const CONSTANT_VARIANCE: f64 = 1e-15;

/// Feature matrix with one binary label per row (1 = abuse).
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    names: Vec<String>,
    ids: Vec<String>,
    labels: Vec<u8>,
    rows: Vec<Vec<f64>>,
}

impl Dataset {
    pub fn new(names: Vec<String>, ids: Vec<String>, labels: Vec<u8>, rows: Vec<Vec<f64>>) -> Result<Dataset> {
        if ids.len() != rows.len() || labels.len() != rows.len() {
            return Err(Error::Dataset(format!(
                "{} ids, {} labels and {} rows",
                ids.len(),
                labels.len(),
                rows.len()
            )));
        }
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != names.len()) {
            return Err(Error::Dataset(format!("row {} has {} values, expected {}", i, r.len(), names.len())));
        }
        if let Some(l) = labels.iter().find(|&&l| l > 1) {
            return Err(Error::Dataset(format!("label {l} is not binary")));
        }
        if let Some(i) = rows.iter().position(|r| r.iter().any(|x| !x.is_finite())) {
            return Err(Error::Dataset(format!("row {i} has a non-finite value")));
        }
        Ok(Dataset { names, ids, labels, rows })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn feature_count(&self) -> usize {
        self.names.len()
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    /// Keeps the given columns, in the given order.
    pub fn select_features(&self, columns: &[usize]) -> Dataset {
        Dataset {
            names: columns.iter().map(|&j| self.names[j].clone()).collect(),
            ids: self.ids.clone(),
            labels: self.labels.clone(),
            rows: self.rows.iter().map(|r| columns.iter().map(|&j| r[j]).collect()).collect(),
        }
    }

    /// Keeps the columns whose name satisfies `keep`.
    pub fn filter_features(&self, keep: impl Fn(&str) -> bool) -> Dataset {
        let cols: Vec<usize> = (0..self.names.len()).filter(|&j| keep(&self.names[j])).collect();
        self.select_features(&cols)
    }

    /// Keeps the named columns, in the given order.
    pub fn select_named<S: AsRef<str>>(&self, names: &[S]) -> Result<Dataset> {
        let cols = names
            .iter()
            .map(|n| {
                self.names
                    .iter()
                    .position(|x| x == n.as_ref())
                    .ok_or_else(|| Error::Dataset(format!("no feature named {}", n.as_ref())))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.select_features(&cols))
    }

    pub fn select_rows(&self, rows: &[usize]) -> Dataset {
        Dataset {
            names: self.names.clone(),
            ids: rows.iter().map(|&i| self.ids[i].clone()).collect(),
            labels: rows.iter().map(|&i| self.labels[i]).collect(),
            rows: rows.iter().map(|&i| self.rows[i].clone()).collect(),
        }
    }

    /// CSV with header `message_id,label,<feature names>`; values use the
    /// shortest representation that round-trips.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let csv_err = |e: csv::Error| Error::Dataset(e.to_string());
        let header = ["message_id", "label"].into_iter().map(String::from).chain(self.names.iter().cloned());
        w.write_record(header).map_err(csv_err)?;
        for i in 0..self.rows.len() {
            let rec = [self.ids[i].clone(), self.labels[i].to_string()]
                .into_iter()
                .chain(self.rows[i].iter().map(|x| x.to_string()));
            w.write_record(rec).map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Dataset(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Dataset(e.to_string()))
    }

    pub fn from_csv<R: Read>(input: R) -> Result<Dataset> {
        let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
        let csv_err = |e: csv::Error| Error::Dataset(e.to_string());
        let header = r.headers().map_err(csv_err)?.clone();
        if header.len() < 2 || &header[0] != "message_id" || &header[1] != "label" {
            return Err(Error::Dataset("header must start with message_id,label".into()));
        }
        let names: Vec<String> = header.iter().skip(2).map(String::from).collect();
        let (mut ids, mut labels, mut rows) = (Vec::new(), Vec::new(), Vec::new());
        for (line, rec) in r.records().enumerate() {
            let rec = rec.map_err(csv_err)?;
            let bad = |what: &str| Error::Parse { line: line + 2, reason: what.to_string() };
            ids.push(rec.get(0).ok_or_else(|| bad("missing id"))?.to_string());
            labels.push(match rec.get(1) {
                Some("1") => 1,
                Some("0") => 0,
                _ => return Err(bad("label must be 0 or 1")),
            });
            let row = rec
                .iter()
                .skip(2)
                .map(|x| x.parse::<f64>().map_err(|_| bad(&format!("bad value {x}"))))
                .collect::<Result<Vec<f64>>>()?;
            rows.push(row);
        }
        Dataset::new(names, ids, labels, rows)
    }
}

/// Per-feature z-scoring statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct Scaler {
    pub mean: Vec<f64>,
    /// 1 for constant features.
    pub std: Vec<f64>,
    pub constant: Vec<bool>,
}

impl Scaler {
    pub fn fit(rows: &[Vec<f64>]) -> Result<Scaler> {
        let Some(first) = rows.first() else {
            return Err(Error::Dataset("cannot standardize an empty training set".into()));
        };
        let d = first.len();
        let n = rows.len() as f64;
        let mut mean = vec![0.0; d];
        for r in rows {
            for (m, x) in mean.iter_mut().zip(r) {
                *m += x;
            }
        }
        mean.iter_mut().for_each(|m| *m /= n);
        let mut var = vec![0.0; d];
        for r in rows {
            for j in 0..d {
                var[j] += (r[j] - mean[j]).powi(2);
            }
        }
        let constant: Vec<bool> = var.iter().map(|v| v / n <= CONSTANT_VARIANCE).collect();
        let std = var.iter().zip(&constant).map(|(v, &c)| if c { 1.0 } else { (v / n).sqrt() }).collect();
        Ok(Scaler { mean, std, constant })
    }

    pub fn apply_row(&self, row: &[f64]) -> Vec<f64> {
        (0..row.len()).map(|j| if self.constant[j] { 0.0 } else { (row[j] - self.mean[j]) / self.std[j] }).collect()
    }

    pub fn apply(&self, rows: &[Vec<f64>]) -> Vec<Vec<f64>> {
        rows.iter().map(|r| self.apply_row(r)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClassWeight {
    /// Each class carries half of the total loss weight.
    InverseFrequency,
    /// Weight of an abuse row relative to a non-abuse row.
    Ratio(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyperparams {
    pub lambda: f64,
    /// Step size at epoch t is `eta0 / sqrt(t + 1)`.
    pub eta0: f64,
    pub epochs: usize,
    pub class_weight: ClassWeight,
    pub seed: u64,
}

impl Default for Hyperparams {
    fn default() -> Self {
        Hyperparams { lambda: 1e-3, eta0: 0.1, epochs: 300, class_weight: ClassWeight::InverseFrequency, seed: 0 }
    }
}

impl Hyperparams {
    fn validate(&self) -> Result<()> {
        let ratio_ok = match self.class_weight {
            ClassWeight::InverseFrequency => true,
            ClassWeight::Ratio(r) => r > 0.0 && r.is_finite(),
        };
        if !(self.lambda >= 0.0 && self.eta0 > 0.0 && self.epochs > 0 && ratio_ok) {
            return Err(Error::InvalidArgument(format!("invalid hyperparameters {self:?}")));
        }
        Ok(())
    }

    fn describe(&self) -> String {
        let cw = match self.class_weight {
            ClassWeight::InverseFrequency => "inverse_frequency".to_string(),
            ClassWeight::Ratio(r) => format!("ratio:{r}"),
        };
        format!(
            "lambda={}\neta0={}\nstep=eta0/sqrt(epoch+1)\nepochs={}\nclass_weight={}\nseed={}\n",
            self.lambda, self.eta0, self.epochs, cw, self.seed
        )
    }
}

/// Row-major standardized matrix.
struct Design {
    x: Vec<f64>,
    n: usize,
    d: usize,
}

impl Design {
    fn row(&self, i: usize) -> &[f64] {
        &self.x[i * self.d..(i + 1) * self.d]
    }

    fn columns(&self, cols: &[usize]) -> Design {
        let mut x = Vec::with_capacity(self.n * cols.len());
        for i in 0..self.n {
            let r = self.row(i);
            x.extend(cols.iter().map(|&j| r[j]));
        }
        Design { x, n: self.n, d: cols.len() }
    }
}

fn design(scaler: &Scaler, rows: &[Vec<f64>]) -> Design {
    let d = scaler.mean.len();
    let mut x = Vec::with_capacity(rows.len() * d);
    for r in rows {
        x.extend(scaler.apply_row(r));
    }
    Design { x, n: rows.len(), d }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

struct Fit {
    weights: Vec<f64>,
    bias: f64,
    objective: f64,
}

/// Full-batch subgradient descent on
/// `lambda/2 |w|^2 + sum_i c_i max(0, 1 - y_i (w.x_i + b)) / sum_i c_i`,
/// returning the iterate with the lowest objective.
fn fit_design(x: &Design, labels: &[u8], hp: &Hyperparams) -> Result<Fit> {
    let pos = labels.iter().filter(|&&l| l == 1).count();
    let neg = labels.len() - pos;
    if pos == 0 || neg == 0 {
        return Err(Error::Dataset("training needs both classes".into()));
    }
    let (cp, cn) = match hp.class_weight {
        ClassWeight::InverseFrequency => (0.5 / pos as f64, 0.5 / neg as f64),
        ClassWeight::Ratio(r) => {
            let total = r * pos as f64 + neg as f64;
            (r / total, 1.0 / total)
        }
    };
    let y: Vec<f64> = labels.iter().map(|&l| if l == 1 { 1.0 } else { -1.0 }).collect();
    let c: Vec<f64> = labels.iter().map(|&l| if l == 1 { cp } else { cn }).collect();
    let d = x.d;
    let mut w = vec![0.0; d];
    let mut b = 0.0;
    let mut best = Fit { weights: w.clone(), bias: b, objective: f64::INFINITY };
    let mut g = vec![0.0; d];
    for t in 0..=hp.epochs {
        g.iter_mut().for_each(|v| *v = 0.0);
        let mut gb = 0.0;
        let mut loss = 0.0;
        for i in 0..x.n {
            let r = x.row(i);
            let m = y[i] * (dot(&w, r) + b);
            if m < 1.0 {
                loss += c[i] * (1.0 - m);
                let s = c[i] * y[i];
                for (gj, xj) in g.iter_mut().zip(r) {
                    *gj -= s * xj;
                }
                gb -= s;
            }
        }
        let objective = 0.5 * hp.lambda * dot(&w, &w) + loss;
        if objective < best.objective {
            best = Fit { weights: w.clone(), bias: b, objective };
        }
        if t == hp.epochs {
            break;
        }
        let eta = hp.eta0 / ((t + 1) as f64).sqrt();
        for (wj, gj) in w.iter_mut().zip(&g) {
            *wj -= eta * (hp.lambda * *wj + gj);
        }
        b -= eta * gb;
    }
    Ok(best)
}

/// A trained linear classifier over standardized features.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearModel {
    pub names: Vec<String>,
    pub weights: Vec<f64>,
    pub bias: f64,
    pub scaler: Scaler,
    pub hyperparams: Hyperparams,
    pub objective: f64,
}

pub fn train_linear(data: &Dataset, hp: &Hyperparams) -> Result<LinearModel> {
    hp.validate()?;
    let scaler = Scaler::fit(&data.rows)?;
    let x = design(&scaler, &data.rows);
    let fit = fit_design(&x, &data.labels, hp)?;
    Ok(model_from(data.names.clone(), scaler, fit, hp))
}

fn model_from(names: Vec<String>, scaler: Scaler, fit: Fit, hp: &Hyperparams) -> LinearModel {
    let weights = fit.weights.iter().zip(&scaler.constant).map(|(&w, &c)| if c { 0.0 } else { w }).collect();
    LinearModel { names, weights, bias: fit.bias, scaler, hyperparams: *hp, objective: fit.objective }
}

impl LinearModel {
    pub fn margin(&self, row: &[f64]) -> f64 {
        dot(&self.weights, &self.scaler.apply_row(row)) + self.bias
    }

    /// Label 1 iff the margin is strictly positive.
    pub fn predict(&self, row: &[f64]) -> (u8, f64) {
        let m = self.margin(row);
        (u8::from(m > 0.0), m)
    }

    /// Text form: hyperparameters and bias as `key=value`, then one
    /// `feature` line per column with weight, mean and std.
    pub fn to_text(&self) -> String {
        let mut out = String::from("# linear model\n");
        out.push_str(&self.hyperparams.describe());
        let _ = writeln!(out, "bias={}", self.bias);
        let _ = writeln!(out, "objective={}", self.objective);
        let _ = writeln!(out, "features={}", self.names.len());
        for j in 0..self.names.len() {
            let _ = writeln!(
                out,
                "feature\t{}\t{}\t{}\t{}",
                self.names[j], self.weights[j], self.scaler.mean[j], self.scaler.std[j]
            );
        }
        out
    }

    /// Features ranked by decreasing absolute weight.
    pub fn ranking(&self) -> Vec<(String, f64)> {
        let mut r: Vec<(String, f64)> = self.names.iter().cloned().zip(self.weights.iter().copied()).collect();
        r.sort_by(|a, b| b.1.abs().total_cmp(&a.1.abs()));
        r
    }
}

/// Abuse-class precision, recall and F-measure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prf {
    pub precision: f64,
    pub recall: f64,
    pub f: f64,
}

impl Prf {
    pub fn from_predictions(truth: &[u8], predicted: &[u8]) -> Prf {
        let tp = truth.iter().zip(predicted).filter(|&(&t, &p)| t == 1 && p == 1).count() as f64;
        let fp = truth.iter().zip(predicted).filter(|&(&t, &p)| t == 0 && p == 1).count() as f64;
        let fneg = truth.iter().zip(predicted).filter(|&(&t, &p)| t == 1 && p == 0).count() as f64;
        let precision = if tp + fp > 0.0 { tp / (tp + fp) } else { 0.0 };
        let recall = if tp + fneg > 0.0 { tp / (tp + fneg) } else { 0.0 };
        let f = if precision + recall > 0.0 { 2.0 * precision * recall / (precision + recall) } else { 0.0 };
        Prf { precision, recall, f }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CvPlan {
    pub parts: usize,
    pub train_parts: usize,
    pub test_parts: usize,
    pub seed: u64,
}

impl Default for CvPlan {
    fn default() -> Self {
        CvPlan { parts: 10, train_parts: 7, test_parts: 3, seed: 0 }
    }
}

impl CvPlan {
    fn validate(&self) -> Result<()> {
        if self.parts < 2 || self.train_parts == 0 || self.test_parts == 0 || self.train_parts + self.test_parts != self.parts {
            return Err(Error::InvalidArgument(format!("invalid cross-validation plan {self:?}")));
        }
        Ok(())
    }

    /// Run `r` trains on parts `r, r+1, .., r+train_parts-1` (mod parts).
    pub fn train_parts_of(&self, run: usize) -> Vec<usize> {
        (0..self.train_parts).map(|k| (run + k) % self.parts).collect()
    }
}

/// Splits row indices into `parts` stratified parts. Each class is shuffled
/// and dealt round-robin, continuing where the previous class stopped.
pub fn stratified_parts(labels: &[u8], parts: usize, seed: u64) -> Result<Vec<Vec<usize>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![Vec::new(); parts];
    let mut next = 0;
    for class in [1u8, 0] {
        let mut idx: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == class).collect();
        if idx.len() < parts {
            return Err(Error::Dataset(format!("class {} has {} rows, fewer than {} parts", class, idx.len(), parts)));
        }
        idx.shuffle(&mut rng);
        for i in idx {
            out[next % parts].push(i);
            next += 1;
        }
    }
    out.iter_mut().for_each(|p| p.sort_unstable());
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CvReport {
    pub plan: CvPlan,
    pub runs: Vec<Prf>,
    pub mean: Prf,
    pub std: Prf,
}

impl CvReport {
    fn from_runs(plan: CvPlan, runs: Vec<Prf>) -> CvReport {
        let k = runs.len() as f64;
        let avg = |f: fn(&Prf) -> f64| runs.iter().map(f).sum::<f64>() / k;
        let mean = Prf { precision: avg(|p| p.precision), recall: avg(|p| p.recall), f: avg(|p| p.f) };
        let sd = |f: fn(&Prf) -> f64, m: f64| (runs.iter().map(|p| (f(p) - m).powi(2)).sum::<f64>() / k).sqrt();
        let std = Prf {
            precision: sd(|p| p.precision, mean.precision),
            recall: sd(|p| p.recall, mean.recall),
            f: sd(|p| p.f, mean.f),
        };
        CvReport { plan, runs, mean, std }
    }

    pub fn to_text(&self) -> String {
        let p = &self.plan;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "# {} stratified parts, seed {}; run r trains on parts r..r+{} (mod {}) and tests on the other {}",
            p.parts,
            p.seed,
            p.train_parts - 1,
            p.parts,
            p.test_parts
        );
        let _ = writeln!(out, "# metrics for the abuse class");
        let _ = writeln!(out, "run\tprecision\trecall\tf");
        for (r, m) in self.runs.iter().enumerate() {
            let _ = writeln!(out, "{}\t{:.6}\t{:.6}\t{:.6}", r, m.precision, m.recall, m.f);
        }
        let _ = writeln!(out, "mean\t{:.6}\t{:.6}\t{:.6}", self.mean.precision, self.mean.recall, self.mean.f);
        let _ = writeln!(out, "std\t{:.6}\t{:.6}\t{:.6}", self.std.precision, self.std.recall, self.std.f);
        out
    }
}

/// Standardized train/test blocks of one run over all features.
struct Fold {
    train: Design,
    train_labels: Vec<u8>,
    test: Design,
    test_labels: Vec<u8>,
}

fn folds(data: &Dataset, plan: &CvPlan) -> Result<Vec<Fold>> {
    plan.validate()?;
    let parts = stratified_parts(&data.labels, plan.parts, plan.seed)?;
    (0..plan.parts)
        .into_par_iter()
        .map(|run| {
            let train_ids = plan.train_parts_of(run);
            let mut train = Vec::new();
            let mut test = Vec::new();
            for (k, part) in parts.iter().enumerate() {
                if train_ids.contains(&k) {
                    train.extend(part);
                } else {
                    test.extend(part);
                }
            }
            train.sort_unstable();
            test.sort_unstable();
            let rows = |ids: &[usize]| ids.iter().map(|&i| data.rows[i].clone()).collect::<Vec<_>>();
            let labels = |ids: &[usize]| ids.iter().map(|&i| data.labels[i]).collect::<Vec<_>>();
            let train_rows = rows(&train);
            let scaler = Scaler::fit(&train_rows)?;
            Ok(Fold {
                train: design(&scaler, &train_rows),
                train_labels: labels(&train),
                test: design(&scaler, &rows(&test)),
                test_labels: labels(&test),
            })
        })
        .collect()
}

/// Trains every fold on the given columns; returns per-run metrics and the
/// fold weight vectors.
fn run_folds(folds: &[Fold], cols: &[usize], hp: &Hyperparams) -> Result<(Vec<Prf>, Vec<Vec<f64>>)> {
    let results: Vec<Result<(Prf, Vec<f64>)>> = folds
        .par_iter()
        .map(|fold| {
            let train = fold.train.columns(cols);
            let test = fold.test.columns(cols);
            let fit = fit_design(&train, &fold.train_labels, hp)?;
            let predicted: Vec<u8> =
                (0..test.n).map(|i| u8::from(dot(&fit.weights, test.row(i)) + fit.bias > 0.0)).collect();
            Ok((Prf::from_predictions(&fold.test_labels, &predicted), fit.weights))
        })
        .collect();
    let mut prfs = Vec::with_capacity(results.len());
    let mut weights = Vec::with_capacity(results.len());
    for r in results {
        let (p, w) = r?;
        prfs.push(p);
        weights.push(w);
    }
    Ok((prfs, weights))
}

pub fn cross_validate(data: &Dataset, plan: &CvPlan, hp: &Hyperparams) -> Result<CvReport> {
    hp.validate()?;
    let fs = folds(data, plan)?;
    let cols: Vec<usize> = (0..data.feature_count()).collect();
    let (runs, _) = run_folds(&fs, &cols, hp)?;
    Ok(CvReport::from_runs(*plan, runs))
}

#[derive(Debug, Clone, PartialEq)]
pub struct RfeStep {
    pub size: usize,
    pub f: f64,
    /// Feature removed after evaluating this set (none for the last step).
    pub dropped: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RfeResult {
    pub baseline: f64,
    pub retention: f64,
    pub selected: Vec<String>,
    pub trace: Vec<RfeStep>,
}

impl RfeResult {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# baseline mean f {:.6}; retention {}; threshold {:.6}", self.baseline, self.retention, self.retention * self.baseline);
        let _ = writeln!(out, "# selected {} feature(s)", self.selected.len());
        for s in &self.selected {
            let _ = writeln!(out, "selected\t{s}");
        }
        let _ = writeln!(out, "size\tf\tdropped");
        for s in &self.trace {
            let _ = writeln!(out, "{}\t{:.6}\t{}", s.size, s.f, s.dropped.as_deref().unwrap_or("-"));
        }
        out
    }
}

/// Recursive feature elimination: repeatedly drops the feature with the
/// smallest mean absolute fold weight (earliest column on ties) down to one
/// feature, and selects the smallest evaluated set whose mean F stays at
/// or above `retention` times the full-set F.
pub fn rfe(data: &Dataset, retention: f64, plan: &CvPlan, hp: &Hyperparams) -> Result<RfeResult> {
    hp.validate()?;
    if !(0.0..=1.0).contains(&retention) {
        return Err(Error::InvalidArgument(format!("retention {retention} not in [0,1]")));
    }
    if data.feature_count() == 0 {
        return Err(Error::Dataset("no features to eliminate".into()));
    }
    let fs = folds(data, plan)?;
    let mut cols: Vec<usize> = (0..data.feature_count()).collect();
    let mut trace = Vec::new();
    let mut baseline = 0.0;
    let mut selected = cols.clone();
    loop {
        let (runs, weights) = run_folds(&fs, &cols, hp)?;
        let f = CvReport::from_runs(*plan, runs).mean.f;
        if trace.is_empty() {
            baseline = f;
        }
        if f >= retention * baseline {
            selected = cols.clone();
        }
        if cols.len() == 1 {
            trace.push(RfeStep { size: 1, f, dropped: None });
            break;
        }
        let importance: Vec<f64> =
            (0..cols.len()).map(|k| weights.iter().map(|w| w[k].abs()).sum::<f64>() / weights.len() as f64).collect();
        let mut weakest = 0;
        for k in 1..cols.len() {
            if importance[k] < importance[weakest] {
                weakest = k;
            }
        }
        trace.push(RfeStep { size: cols.len(), f, dropped: Some(data.names[cols[weakest]].clone()) });
        cols.remove(weakest);
    }
    Ok(RfeResult {
        baseline,
        retention,
        selected: selected.iter().map(|&j| data.names[j].clone()).collect(),
        trace,
    })
}

use std::fmt::Write as _;
use std::fs;
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use convgraph::analysis::{cluster_features, cluster_report, pearson_matrix};
use convgraph::corpus::{parse_corpus, Corpus};
use convgraph::extraction::{extract, ExtractionParams, GraphKind, Strategy};
use convgraph::features::{featurize_corpus, FeatureCatalog, FeatureParams, FeatureSet, VariantMatrix};
use convgraph::learning::{cross_validate, rfe, train_linear, ClassWeight, CvPlan, Dataset, Hyperparams};
use convgraph::measures::MeasureConfig;
use convgraph::synthgen::{generate, parse_targets, targets_to_text, validate_calibration, GeneratorConfig, Target};

#[derive(Parser)]
#[command(name = "convgraph", version, about = "Conversational graph features and content-free abuse classification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a labeled synthetic corpus.
    Generate(GenerateArgs),
    /// Summarise class-conditional graph statistics of a labeled corpus.
    Calibrate(CalibrateArgs),
    /// Dump the Before, After and Full graphs of one message.
    Extract(ExtractArgs),
    /// Compute the feature matrix of a target list.
    Featurize(FeaturizeArgs),
    /// Print the feature catalog with its configuration.
    Manifest(ManifestArgs),
    /// Fit one model on the whole matrix.
    Train(LearnArgs),
    /// Cross-validate on the matrix.
    Evaluate(LearnArgs),
    /// Recursive feature elimination.
    Select(SelectArgs),
    /// Correlation clustering of the features.
    Correlate(CorrelateArgs),
    /// Re-featurize and cross-validate over a grid of extraction settings.
    Sweep(SweepArgs),
}

#[derive(Args, Clone)]
struct ExtractionOpts {
    #[arg(long, default_value_t = 200)]
    context_size: usize,
    #[arg(long, default_value_t = 10)]
    window_size: usize,
    #[arg(long, default_value = "recursive")]
    strategy: Strategy,
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    directed: bool,
    /// Seed of the community detection.
    #[arg(long, default_value_t = 0)]
    community_seed: u64,
}

impl ExtractionOpts {
    fn params(&self) -> FeatureParams {
        let measures = MeasureConfig { community_seed: self.community_seed, ..MeasureConfig::default() };
        FeatureParams {
            context_size: self.context_size,
            extraction: ExtractionParams::new(self.window_size, self.strategy, self.directed),
            measures,
        }
    }

    fn describe(&self) -> String {
        format!(
            "context_size={} window_size={} strategy={} directed={} community_seed={}",
            self.context_size,
            self.window_size,
            self.strategy.name(),
            self.directed,
            self.community_seed
        )
    }
}

#[derive(Args)]
struct GenerateArgs {
    /// Flat key=value file; missing keys keep their defaults.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Overrides the seed of the config.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct CalibrateArgs {
    #[arg(long)]
    corpus: PathBuf,
    #[arg(long)]
    targets: PathBuf,
    #[command(flatten)]
    extraction: ExtractionOpts,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExtractArgs {
    #[arg(long)]
    corpus: PathBuf,
    #[arg(long)]
    target: String,
    #[command(flatten)]
    extraction: ExtractionOpts,
    /// Directory receiving before.tsv, after.tsv and full.tsv.
    #[arg(long)]
    dump: PathBuf,
}

#[derive(Args)]
struct FeaturizeArgs {
    #[arg(long)]
    corpus: PathBuf,
    #[arg(long)]
    targets: PathBuf,
    #[command(flatten)]
    extraction: ExtractionOpts,
    /// `default`, or a file with one feature name per line.
    #[arg(long, default_value = "default")]
    catalog: String,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Also write the catalog manifest here.
    #[arg(long)]
    manifest: Option<PathBuf>,
}

#[derive(Args)]
struct ManifestArgs {
    #[arg(long, default_value = "default")]
    catalog: String,
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    directed: bool,
    #[arg(long, default_value_t = 0)]
    community_seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Weighting {
    Inverse,
    None,
}

#[derive(Args)]
struct ModelOpts {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1e-3)]
    lambda: f64,
    #[arg(long, default_value_t = 300)]
    epochs: usize,
    #[arg(long, value_enum, default_value = "inverse")]
    class_weight: Weighting,
}

impl ModelOpts {
    fn hyperparams(&self) -> Hyperparams {
        let class_weight = match self.class_weight {
            Weighting::Inverse => ClassWeight::InverseFrequency,
            Weighting::None => ClassWeight::Ratio(1.0),
        };
        Hyperparams { lambda: self.lambda, epochs: self.epochs, class_weight, seed: self.seed, ..Hyperparams::default() }
    }

    fn plan(&self) -> CvPlan {
        CvPlan { seed: self.seed, ..CvPlan::default() }
    }
}

#[derive(Args)]
struct LearnArgs {
    #[arg(long)]
    matrix: PathBuf,
    #[arg(long, default_value = "all")]
    set: FeatureSet,
    #[command(flatten)]
    model: ModelOpts,
    #[arg(long)]
    report: Option<PathBuf>,
    /// Model file (train only).
    #[arg(long = "model", id = "model_file", value_name = "FILE")]
    model_out: Option<PathBuf>,
}

#[derive(Args)]
struct SelectArgs {
    #[arg(long)]
    matrix: PathBuf,
    #[arg(long, default_value = "all")]
    set: FeatureSet,
    #[arg(long, default_value_t = 0.97)]
    retention: f64,
    #[command(flatten)]
    model: ModelOpts,
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Selected feature names, one per line; usable as a featurize catalog.
    #[arg(long)]
    selected: Option<PathBuf>,
}

#[derive(Args)]
struct CorrelateArgs {
    #[arg(long)]
    matrix: PathBuf,
    #[arg(long, default_value = "all")]
    set: FeatureSet,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepParam {
    Context,
    Window,
    Strategy,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    corpus: PathBuf,
    #[arg(long)]
    targets: PathBuf,
    #[arg(long, value_enum)]
    param: SweepParam,
    /// Comma-separated values of the swept parameter.
    #[arg(long)]
    grid: String,
    #[command(flatten)]
    extraction: ExtractionOpts,
    #[arg(long, default_value = "all")]
    set: FeatureSet,
    #[command(flatten)]
    model: ModelOpts,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long)]
    report: Option<PathBuf>,
}

fn invocation() -> String {
    let args: Vec<String> = std::env::args().skip(1).collect();
    format!("# invocation: convgraph {}\n", args.join(" "))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_corpus(path: &Path) -> Result<Corpus> {
    let file = fs::File::open(path).with_context(|| format!("opening {}", path.display()))?;
    parse_corpus(BufReader::new(file)).with_context(|| format!("parsing {}", path.display()))
}

/// Targets with their label; a missing label column falls back to the corpus.
fn load_targets(path: &Path, corpus: &Corpus) -> Result<Vec<Target>> {
    let parsed = parse_targets(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    parsed
        .into_iter()
        .map(|(id, label)| {
            let label = match label {
                Some(l) => l,
                None => corpus.message(&id).with_context(|| format!("unknown target {id}"))?.label,
            };
            Ok(Target { id, label })
        })
        .collect()
}

fn load_matrix(path: &Path, set: FeatureSet) -> Result<Dataset> {
    let file = fs::File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let data = Dataset::from_csv(BufReader::new(file)).with_context(|| format!("parsing {}", path.display()))?;
    let data = data.filter_features(|n| set.contains(n));
    if data.feature_count() == 0 {
        bail!("no {} features in {}", set.name(), path.display());
    }
    Ok(data)
}

fn catalog(spec: &str, directed: bool) -> Result<FeatureCatalog> {
    if spec == "default" {
        let matrix = if directed { VariantMatrix::default() } else { VariantMatrix::undirected() };
        return Ok(FeatureCatalog::build(&matrix));
    }
    let text = read(Path::new(spec))?;
    let names: Vec<&str> =
        text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).collect();
    Ok(FeatureCatalog::from_names(&names)?)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Generate(a) => {
            let mut cfg = match &a.config {
                Some(p) => GeneratorConfig::parse(&read(p)?)?,
                None => GeneratorConfig::default(),
            };
            if let Some(s) = a.seed {
                cfg.seed = s;
            }
            let t0 = Instant::now();
            let (corpus, targets) = generate(&cfg)?;
            fs::create_dir_all(&a.out).with_context(|| format!("creating {}", a.out.display()))?;
            write(&a.out.join("corpus.tsv"), &corpus.to_records())?;
            write(&a.out.join("targets.tsv"), &targets_to_text(&targets))?;
            write(&a.out.join("config.txt"), &cfg.to_text())?;
            eprintln!("generated {} messages, {} targets in {:.2?}", corpus.message_count(), targets.len(), t0.elapsed());
        }
        Command::Calibrate(a) => {
            let corpus = load_corpus(&a.corpus)?;
            let targets = load_targets(&a.targets, &corpus)?;
            let p = a.extraction.params();
            let report = validate_calibration(&corpus, &targets, &p.extraction, p.context_size);
            let text = format!("{}# {}\n{}", invocation(), a.extraction.describe(), report.to_text());
            emit(a.out.as_deref(), &text)?;
        }
        Command::Extract(a) => {
            let corpus = load_corpus(&a.corpus)?;
            let p = a.extraction.params();
            let ctx = corpus.context_period(&a.target, p.context_size)?;
            let triple = extract(&corpus, &ctx, &p.extraction)?;
            fs::create_dir_all(&a.dump).with_context(|| format!("creating {}", a.dump.display()))?;
            for kind in GraphKind::ALL {
                let g = triple.get(kind);
                write(&a.dump.join(format!("{}.tsv", kind.name())), &g.to_edge_list())?;
                println!("{}\tvertices={}\tarcs={}", kind.name(), g.vertex_count(), g.edges().count());
            }
        }
        Command::Featurize(a) => {
            let corpus = load_corpus(&a.corpus)?;
            let targets = load_targets(&a.targets, &corpus)?;
            let ids: Vec<&str> = targets.iter().map(|t| t.id.as_str()).collect();
            let params = a.extraction.params();
            let cat = catalog(&a.catalog, a.extraction.directed)?;
            let t0 = Instant::now();
            let data = featurize_corpus(&corpus, &ids, &params, &cat, a.workers)?;
            eprintln!("featurized {} targets x {} features in {:.2?}", data.len(), data.feature_count(), t0.elapsed());
            write(&a.out, &data.to_csv()?)?;
            if let Some(m) = &a.manifest {
                write(m, &format!("# {}\n{}", a.extraction.describe(), cat.manifest(&params.measures)))?;
            }
        }
        Command::Manifest(a) => {
            let cat = catalog(&a.catalog, a.directed)?;
            let cfg = MeasureConfig { community_seed: a.community_seed, ..MeasureConfig::default() };
            emit(a.out.as_deref(), &cat.manifest(&cfg))?;
        }
        Command::Train(a) => {
            let data = load_matrix(&a.matrix, a.set)?;
            let t0 = Instant::now();
            let model = train_linear(&data, &a.model.hyperparams())?;
            eprintln!("trained on {} rows x {} features in {:.2?}", data.len(), data.feature_count(), t0.elapsed());
            let text = format!("{}# set {}\n{}", invocation(), a.set.name(), model.to_text());
            match (&a.model_out, &a.report) {
                (Some(m), r) => {
                    write(m, &text)?;
                    if let Some(r) = r {
                        let mut rank = format!("{}# set {}\n", invocation(), a.set.name());
                        for (name, w) in model.ranking() {
                            let _ = writeln!(rank, "{name}\t{w}");
                        }
                        write(r, &rank)?;
                    }
                }
                (None, r) => emit(r.as_deref(), &text)?,
            }
        }
        Command::Evaluate(a) => {
            if a.model_out.is_some() {
                bail!("--model is only accepted by train");
            }
            let data = load_matrix(&a.matrix, a.set)?;
            let t0 = Instant::now();
            let report = cross_validate(&data, &a.model.plan(), &a.model.hyperparams())?;
            eprintln!("cross-validated {} features in {:.2?}", data.feature_count(), t0.elapsed());
            let text = format!(
                "{}# set {} ({} features, {} rows)\n{}",
                invocation(),
                a.set.name(),
                data.feature_count(),
                data.len(),
                report.to_text()
            );
            emit(a.report.as_deref(), &text)?;
        }
        Command::Select(a) => {
            let data = load_matrix(&a.matrix, a.set)?;
            let t0 = Instant::now();
            let result = rfe(&data, a.retention, &a.model.plan(), &a.model.hyperparams())?;
            eprintln!("eliminated down from {} features in {:.2?}", data.feature_count(), t0.elapsed());
            let text = format!("{}# set {}\n{}", invocation(), a.set.name(), result.to_text());
            emit(a.trace.as_deref(), &text)?;
            if let Some(p) = &a.selected {
                let mut names = String::new();
                for s in &result.selected {
                    let _ = writeln!(names, "{s}");
                }
                write(p, &names)?;
            }
        }
        Command::Correlate(a) => {
            let data = load_matrix(&a.matrix, a.set)?;
            let t0 = Instant::now();
            let corr = pearson_matrix(&data)?;
            let clustering = cluster_features(&corr)?;
            eprintln!("clustered {} features in {:.2?}", data.feature_count(), t0.elapsed());
            let text = format!("{}# set {}\n{}", invocation(), a.set.name(), cluster_report(&corr, &clustering));
            emit(a.out.as_deref(), &text)?;
        }
        Command::Sweep(a) => sweep(a)?,
    }
    Ok(())
}

fn sweep(a: SweepArgs) -> Result<()> {
    let corpus = load_corpus(&a.corpus)?;
    let targets = load_targets(&a.targets, &corpus)?;
    let ids: Vec<&str> = targets.iter().map(|t| t.id.as_str()).collect();
    let values: Vec<&str> = a.grid.split(',').map(str::trim).filter(|v| !v.is_empty()).collect();
    if values.is_empty() {
        bail!("empty grid");
    }
    let mut points = Vec::new();
    for v in &values {
        let mut opts = a.extraction.clone();
        match a.param {
            SweepParam::Context => opts.context_size = v.parse().with_context(|| format!("bad context size {v}"))?,
            SweepParam::Window => opts.window_size = v.parse().with_context(|| format!("bad window size {v}"))?,
            SweepParam::Strategy => opts.strategy = v.parse()?,
        }
        opts.params().extraction.validate()?;
        points.push(opts);
    }
    let mut out = invocation();
    let _ = writeln!(out, "# base {}; set {}", a.extraction.describe(), a.set.name());
    let _ = writeln!(out, "value\tfeatures\tprecision\trecall\tf\tf_std");
    for (v, opts) in values.iter().zip(&points) {
        let params = opts.params();
        let cat = catalog("default", opts.directed)?;
        let t0 = Instant::now();
        let data = featurize_corpus(&corpus, &ids, &params, &cat, a.workers)?.filter_features(|n| a.set.contains(n));
        let report = cross_validate(&data, &a.model.plan(), &a.model.hyperparams())?;
        eprintln!("{v}: {:.2?}", t0.elapsed());
        let m = &report.mean;
        let _ = writeln!(
            out,
            "{v}\t{}\t{:.6}\t{:.6}\t{:.6}\t{:.6}",
            data.feature_count(),
            m.precision,
            m.recall,
            m.f,
            report.std.f
        );
    }
    emit(a.report.as_deref(), &out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}


use std::io::{self, Write};
use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use slate::bench::{measure, measure_all, LatencyReport};
use slate::corpus::{load_corpus, write_corpus, CorpusSummary, Split};
use slate::model::{load_classifier, load_tagger, save_model, ModelFile};
use slate::predictions::{load_predictions, read_predictions, write_predictions, PredictionRecord};
use slate::report::{evaluate, EvalReport};
use slate::synth::{bench_region, synth_corpus, SynthConfig};
use slate::tokens::read_token_records;
use slate_core::codec::encode_word_labels;
use slate_core::tagger::{
    sentences_from_regions, train_joint, train_sentence_classifier, Extractor, Invocations, JointExtractor,
    TrainConfig, TwoModelExtractor,
};
use slate_core::{Scheme, WritingRegion};

#[derive(Parser)]
#[command(name = "slate", version, about = "Joint sentence segmentation and task extraction for ink notes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print gold statistics of a corpus
    Stats {
        #[command(flatten)]
        corpus: CorpusArgs,
    },
    /// Write a synthetic notes corpus
    Synth {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 60)]
        documents: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Encode gold sentences as word-label prediction records
    Encode {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[arg(long, value_enum)]
        scheme: SchemeArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decode word-label records into span records
    Decode {
        #[arg(long)]
        predictions: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reduce token-label records to word-label records
    Aggregate {
        #[arg(long)]
        tokens: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Train a tagger or a sentence classifier
    Train {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[arg(long, value_enum, default_value_t = Target::Tagger)]
        target: Target,
        #[arg(long, value_enum, default_value_t = SchemeArg::Nti)]
        scheme: SchemeArg,
        #[arg(long, default_value_t = 10)]
        epochs: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Switch::On)]
        layout: Switch,
        #[arg(long)]
        out: PathBuf,
    },
    /// Predict sentences and write span records
    Extract {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        models: ModelArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Score prediction records against the gold corpus
    Eval {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[arg(long)]
        predictions: PathBuf,
        /// Minimum IOU for a matched pair to count
        #[arg(long, default_value_t = 0.25)]
        threshold: f64,
        /// Largest boundary shift scored as a near miss
        #[arg(long, default_value_t = 2)]
        transposition: usize,
        #[arg(long, default_value = "1")]
        workers: NonZeroUsize,
    },
    /// Measure per-region extraction latency
    Bench {
        #[command(flatten)]
        corpus: CorpusArgs,
        /// Joint tagger
        #[arg(long)]
        model: Option<PathBuf>,
        /// BI segmenter for the two-model pipeline
        #[arg(long)]
        segmenter: Option<PathBuf>,
        #[arg(long)]
        classifier: Option<PathBuf>,
        #[arg(long, default_value_t = 5)]
        runs: usize,
        /// Also time synthetic regions with these sentence counts
        #[arg(long, value_delimiter = ',')]
        sweep: Vec<usize>,
        #[arg(long, default_value_t = 32)]
        sweep_words: usize,
        /// Synthetic regions per sentence count
        #[arg(long, default_value_t = 200)]
        sweep_regions: u64,
    },
}

#[derive(Args)]
struct CorpusArgs {
    /// Corpus file; defaults to $SLATE_DATA_DIR/corpus.jsonl
    #[arg(long)]
    corpus: Option<PathBuf>,
    /// Directory holding corpus.jsonl
    #[arg(long, env = "SLATE_DATA_DIR", hide_env_values = true)]
    data_dir: Option<PathBuf>,
    /// Split to use; the default depends on the command
    #[arg(long, value_enum)]
    split: Option<SplitArg>,
}

#[derive(Args)]
struct ModelArgs {
    #[arg(long, value_enum, default_value_t = Mode::Joint)]
    mode: Mode,
    /// Joint tagger (bio or nti)
    #[arg(long, required_if_eq("mode", "joint"))]
    model: Option<PathBuf>,
    /// Sentence segmenter (bi)
    #[arg(long, required_if_eq("mode", "two-model"))]
    segmenter: Option<PathBuf>,
    #[arg(long, required_if_eq("mode", "two-model"))]
    classifier: Option<PathBuf>,
    /// Override the model's layout features
    #[arg(long, value_enum)]
    layout: Option<Switch>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeArg {
    Bi,
    Bio,
    Nti,
}

impl From<SchemeArg> for Scheme {
    fn from(s: SchemeArg) -> Self {
        match s {
            SchemeArg::Bi => Scheme::SentenceBi,
            SchemeArg::Bio => Scheme::SlateBio,
            SchemeArg::Nti => Scheme::SlateNti,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SplitArg {
    Train,
    Test,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Switch {
    On,
    Off,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    Tagger,
    Classifier,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Joint,
    TwoModel,
}

enum Failure {
    Usage(String),
    Data(String),
}

impl From<slate::Error> for Failure {
    fn from(e: slate::Error) -> Self {
        Failure::Data(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Data(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

impl CorpusArgs {
    fn path(&self) -> Result<PathBuf, Failure> {
        match (&self.corpus, &self.data_dir) {
            (Some(p), _) => Ok(p.clone()),
            (None, Some(dir)) => Ok(dir.join("corpus.jsonl")),
            (None, None) => Err(Failure::Usage("no corpus: pass --corpus or set SLATE_DATA_DIR".into())),
        }
    }

    fn load(&self, default: SplitArg) -> Result<Vec<WritingRegion>, Failure> {
        let split = match self.split.unwrap_or(default) {
            SplitArg::Train => Some(Split::Train),
            SplitArg::Test => Some(Split::Test),
            SplitArg::All => None,
        };
        Ok(load_corpus(&self.path()?, split)?)
    }
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(io::BufWriter::new(
            std::fs::File::create(p).map_err(|e| Failure::Data(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

fn print_json(value: &impl Serialize) -> Outcome {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value).map_err(|e| Failure::Data(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

enum Loaded {
    Joint(slate_core::tagger::TaggerModel),
    TwoModel(slate_core::tagger::TaggerModel, slate_core::tagger::SentenceClassifierModel),
}

impl ModelArgs {
    fn load(&self) -> Result<Loaded, Failure> {
        let layout = |m: slate_core::tagger::TaggerModel| match self.layout {
            Some(s) => m.with_layout(s == Switch::On),
            None => m,
        };
        match self.mode {
            Mode::Joint => {
                let path = self.model.as_deref().ok_or_else(|| Failure::Usage("--model is required".into()))?;
                Ok(Loaded::Joint(layout(load_tagger(path)?)))
            }
            Mode::TwoModel => {
                let (Some(s), Some(c)) = (&self.segmenter, &self.classifier) else {
                    return Err(Failure::Usage("two-model mode needs --segmenter and --classifier".into()));
                };
                Ok(Loaded::TwoModel(layout(load_tagger(s)?), load_classifier(c)?))
            }
        }
    }
}

fn extractor(loaded: &Loaded) -> Result<Box<dyn Extractor + '_>, Failure> {
    let usage = |e: slate_core::tagger::TaggerError| Failure::Usage(e.to_string());
    Ok(match loaded {
        Loaded::Joint(m) => Box::new(JointExtractor::new(m).map_err(usage)?),
        Loaded::TwoModel(s, c) => Box::new(TwoModelExtractor::new(s, c).map_err(usage)?),
    })
}

#[derive(Serialize)]
struct SweepPoint {
    sentences: usize,
    words: usize,
    regions: usize,
    joint_mean_ms: f64,
    two_model_mean_ms: f64,
    classifier_calls_per_region: f64,
}

#[derive(Serialize)]
struct BenchOutput {
    corpus: LatencyReport,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    sweep: Vec<SweepPoint>,
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Stats { corpus } => print_json(&CorpusSummary::of(&corpus.load(SplitArg::All)?)),
        Command::Synth { out, documents, seed } => {
            let entries = synth_corpus(&SynthConfig { documents, seed, ..Default::default() });
            Ok(write_corpus(&out, &entries)?)
        }
        Command::Encode { corpus, scheme, out } => {
            let regions = corpus.load(SplitArg::All)?;
            let records = regions
                .iter()
                .map(|r| Ok(PredictionRecord::labels(&r.region_id, encode_word_labels(r, scheme.into())?)))
                .collect::<Result<Vec<_>, slate_core::codec::CodecError>>()
                .map_err(|e| Failure::Data(e.to_string()))?;
            Ok(write_predictions(output(out.as_deref())?, &records)?)
        }
        Command::Decode { predictions, out } => {
            let records: Vec<PredictionRecord> = read_predictions(&predictions)?
                .iter()
                .map(|r| PredictionRecord::spans(&r.region_id, r.to_spans()))
                .collect();
            Ok(write_predictions(output(out.as_deref())?, &records)?)
        }
        Command::Aggregate { tokens, out } => {
            let records = read_token_records(&tokens)?
                .iter()
                .map(|t| t.to_prediction())
                .collect::<slate::Result<Vec<_>>>()?;
            Ok(write_predictions(output(out.as_deref())?, &records)?)
        }
        Command::Train { corpus, target, scheme, epochs, seed, layout, out } => {
            let regions = corpus.load(SplitArg::Train)?;
            let cfg = TrainConfig { epochs, seed, use_layout: layout == Switch::On, ..Default::default() };
            cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;
            let model = match target {
                Target::Tagger => ModelFile::Tagger(train_joint(&regions, scheme.into(), &cfg).map_err(slate::Error::from)?),
                Target::Classifier => ModelFile::SentenceClassifier(
                    train_sentence_classifier(&sentences_from_regions(&regions), &cfg).map_err(slate::Error::from)?,
                ),
            };
            Ok(save_model(&out, &model)?)
        }
        Command::Extract { corpus, models, out } => {
            let regions = corpus.load(SplitArg::Test)?;
            let loaded = models.load()?;
            let ex = extractor(&loaded)?;
            let mut calls = Invocations::default();
            let records: Vec<PredictionRecord> =
                regions.iter().map(|r| PredictionRecord::spans(&r.region_id, ex.extract(r, &mut calls))).collect();
            Ok(write_predictions(output(out.as_deref())?, &records)?)
        }
        Command::Eval { corpus, predictions, threshold, transposition, workers } => {
            if !(0.0..=1.0).contains(&threshold) {
                return Err(Failure::Usage(format!("--threshold must be in [0, 1], got {threshold}")));
            }
            if transposition == 0 {
                return Err(Failure::Usage("--transposition must be at least 1".into()));
            }
            let gold = corpus.load(SplitArg::Test)?;
            let preds = load_predictions(&predictions, &gold)?;
            let e = evaluate(&gold, &preds, threshold, transposition, workers).map_err(slate::Error::from)?;
            print_json(&EvalReport::from(&e))
        }
        Command::Bench { corpus, model, segmenter, classifier, runs, sweep, sweep_words, sweep_regions } => {
            if model.is_none() && segmenter.is_none() {
                return Err(Failure::Usage("bench needs --model and/or --segmenter with --classifier".into()));
            }
            if segmenter.is_some() != classifier.is_some() {
                return Err(Failure::Usage("two-model timing needs both --segmenter and --classifier".into()));
            }
            let regions = corpus.load(SplitArg::Test)?;
            let joint = model.as_deref().map(load_tagger).transpose()?;
            let two = match (&segmenter, &classifier) {
                (Some(s), Some(c)) => Some((load_tagger(s)?, load_classifier(c)?)),
                _ => None,
            };
            let usage = |e: slate_core::tagger::TaggerError| Failure::Usage(e.to_string());
            let jx = joint.as_ref().map(JointExtractor::new).transpose().map_err(usage)?;
            let tx = two.as_ref().map(|(s, c)| TwoModelExtractor::new(s, c)).transpose().map_err(usage)?;
            let report = match (&jx, &tx) {
                (Some(j), Some(t)) => {
                    let mut stats = measure_all(&[j, t], &[&regions], runs).into_iter().flatten();
                    LatencyReport::new(stats.next(), stats.next())
                }
                _ => LatencyReport::new(
                    jx.as_ref().map(|x| measure(x, &regions, runs)),
                    tx.as_ref().map(|x| measure(x, &regions, runs)),
                ),
            };
            let mut points = Vec::new();
            if !sweep.is_empty() {
                let (Some(jx), Some(tx)) = (&jx, &tx) else {
                    return Err(Failure::Usage("--sweep needs both the joint and the two-model models".into()));
                };
                if sweep.iter().any(|&k| k == 0 || k > sweep_words) {
                    return Err(Failure::Usage(format!("sweep sentence counts must be in 1..={sweep_words}")));
                }
                let groups: Vec<Vec<WritingRegion>> = sweep
                    .iter()
                    .map(|&k| (0..sweep_regions).map(|s| bench_region(k, sweep_words, s)).collect())
                    .collect();
                let refs: Vec<&[WritingRegion]> = groups.iter().map(Vec::as_slice).collect();
                let stats = measure_all(&[jx, tx], &refs, runs);
                for ((&k, j), t) in sweep.iter().zip(&stats[0]).zip(&stats[1]) {
                    points.push(SweepPoint {
                        sentences: k,
                        words: sweep_words,
                        regions: t.regions,
                        joint_mean_ms: j.mean_ms,
                        two_model_mean_ms: t.mean_ms,
                        classifier_calls_per_region: t.invocations.classifier as f64 / t.regions.max(1) as f64,
                    });
                }
            }
            print_json(&BenchOutput { corpus: report, sweep: points })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Data(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

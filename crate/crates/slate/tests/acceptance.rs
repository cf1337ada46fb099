//! Acceptance run: one PASS/FAIL line per criterion. Criteria that need the
//! released corpus read `$SLATE_DATA_DIR/corpus.jsonl` and fail without it;
//! their synthetic-corpus outcome is shown for information only. The process
//! exits non-zero when a criterion fails for any reason other than the
//! corpus being absent.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use slate::bench::measure_all;
use slate::corpus::{load_corpus, write_corpus, CorpusSummary, Split};
use slate::synth::{bench_region, synth_corpus, SynthConfig};
use slate_core::codec::{aggregate_tokens, decode, encode_word_labels, nti_to_bio, project_to_tokens, render};
use slate_core::eval::{
    boundary_edit_distance, boundary_similarity, confusion, corpus_evaluate, full_matching, iou_counts, prune,
    BoundarySet,
};
use slate_core::tagger::{
    sentences_from_regions, train_joint, train_sentence_classifier, Extractor, Invocations, JointExtractor,
    TrainConfig, TwoModelExtractor,
};
use slate_core::{Scheme, SentenceLabel, SentenceSpan, WritingRegion};

const TRAIN_COUNTS: [usize; 5] = [2496, 704, 1522, 173, 97];
const TEST_COUNTS: [usize; 5] = [1416, 440, 857, 54, 65];
const LOAD_BUDGET: Duration = Duration::from_secs(5);
const MATCHING_INSTANCES: usize = 1000;
const MATCHING_BUDGET: Duration = Duration::from_secs(10);
const MAX_SIDE: usize = 6;
const BED_INSTANCES: usize = 1000;
const MAX_BOUNDARIES: usize = 7;
const WINDOW: usize = 2;
const B_TOLERANCE: f64 = 1e-12;
const FUZZ_REGIONS: usize = 1000;
const SWEEP: [usize; 6] = [1, 2, 4, 8, 16, 32];
const SWEEP_WORDS: usize = 32;
const SWEEP_REGIONS: u64 = 2000;
const SWEEP_RUNS: usize = 5;
/// Largest joint latency over smallest, across the sweep.
const JOINT_SPREAD: f64 = 1.5;
const TRAIN_BUDGET: Duration = Duration::from_secs(300);
const SEED: u64 = 20240601;

struct Outcome {
    pass: bool,
    /// Failed only because the released corpus is missing.
    blocked: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, blocked: false, detail: detail.into() }
}

fn released_corpus() -> Option<PathBuf> {
    let p = PathBuf::from(std::env::var_os("SLATE_DATA_DIR")?).join("corpus.jsonl");
    p.exists().then_some(p)
}

fn absent(synthetic: &str) -> Outcome {
    Outcome {
        pass: false,
        blocked: true,
        detail: format!("released corpus not found ($SLATE_DATA_DIR/corpus.jsonl); synthetic stand-in: {synthetic}"),
    }
}

struct Corpora {
    released: Option<(Vec<WritingRegion>, Vec<WritingRegion>)>,
    synth_train: Vec<WritingRegion>,
    synth_test: Vec<WritingRegion>,
    synth_path: PathBuf,
    _dir: tempfile::TempDir,
}

fn corpora() -> Corpora {
    let entries = synth_corpus(&SynthConfig { documents: 120, seed: SEED, ..Default::default() });
    let dir = tempfile::TempDir::new().expect("temp dir");
    let synth_path = dir.path().join("corpus.jsonl");
    write_corpus(&synth_path, &entries).expect("write synthetic corpus");
    let pick = |s: Split| entries.iter().filter(|e| e.split == s).map(|e| e.region.clone()).collect::<Vec<_>>();
    let released = released_corpus().map(|p| {
        (
            load_corpus(&p, Some(Split::Train)).expect("released train split loads"),
            load_corpus(&p, Some(Split::Test)).expect("released test split loads"),
        )
    });
    Corpora { released, synth_train: pick(Split::Train), synth_test: pick(Split::Test), synth_path, _dir: dir }
}

fn counts(s: &CorpusSummary) -> [usize; 5] {
    [s.sentences, s.task, s.nontask, s.context_task, s.context_nontask]
}

fn dataset_sanity() -> Outcome {
    let Some(path) = released_corpus() else { return absent("not applicable") };
    let t = Instant::now();
    let (train, test) = match (load_corpus(&path, Some(Split::Train)), load_corpus(&path, Some(Split::Test))) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return outcome(false, format!("load failed: {e}")),
    };
    let elapsed = t.elapsed();
    let (tr, te) = (counts(&CorpusSummary::of(&train)), counts(&CorpusSummary::of(&test)));
    outcome(
        tr == TRAIN_COUNTS && te == TEST_COUNTS && elapsed < LOAD_BUDGET,
        format!("train {tr:?} want {TRAIN_COUNTS:?}; test {te:?} want {TEST_COUNTS:?}; {elapsed:.2?}"),
    )
}

fn random_spans(rng: &mut ChaCha8Rng, k: usize) -> Vec<SentenceSpan> {
    (0..k)
        .map(|_| {
            let start = rng.gen_range(0..12);
            let end = start + rng.gen_range(1..6);
            if rng.gen_bool(0.5) {
                SentenceSpan::task(start, end)
            } else {
                SentenceSpan::nontask(start, end)
            }
        })
        .collect()
}

fn exact_weight(p: &SentenceSpan, g: &SentenceSpan) -> Ratio<usize> {
    let (inter, union) = iou_counts(p, g);
    Ratio::new(inter, union)
}

/// Best exact weight over every matching of size `min(|P|, |G|)`.
fn brute_matching(preds: &[SentenceSpan], golds: &[SentenceSpan]) -> Ratio<usize> {
    let mut best = None;
    let size = preds.len().min(golds.len());
    let mut order: Vec<usize> = (0..golds.len()).collect();
    // every injective map from the smaller side into the larger one
    fn permute(
        i: usize,
        order: &mut Vec<usize>,
        size: usize,
        score: &dyn Fn(&[usize]) -> Ratio<usize>,
        best: &mut Option<Ratio<usize>>,
    ) {
        if i == size {
            let s = score(&order[..size]);
            *best = Some(best.map_or(s, |b: Ratio<usize>| b.max(s)));
            return;
        }
        for j in i..order.len() {
            order.swap(i, j);
            permute(i + 1, order, size, score, best);
            order.swap(i, j);
        }
    }
    if preds.len() <= golds.len() {
        let score = |o: &[usize]| o.iter().enumerate().map(|(p, &g)| exact_weight(&preds[p], &golds[g])).sum();
        permute(0, &mut order, size, &score, &mut best);
    } else {
        let mut order: Vec<usize> = (0..preds.len()).collect();
        let score = |o: &[usize]| o.iter().enumerate().map(|(g, &p)| exact_weight(&preds[p], &golds[g])).sum();
        permute(0, &mut order, size, &score, &mut best);
    }
    best.unwrap_or_default()
}

fn matching_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let t = Instant::now();
    let mut bad = 0;
    for _ in 0..MATCHING_INSTANCES {
        let (np, ng) = (rng.gen_range(0..=MAX_SIDE), rng.gen_range(0..=MAX_SIDE));
        let (preds, golds) = (random_spans(&mut rng, np), random_spans(&mut rng, ng));
        let m = full_matching(&preds, &golds);
        let got: Ratio<usize> = m.edges.iter().map(|e| exact_weight(&preds[e.pred_index], &golds[e.gold_index])).sum();
        if m.edges.len() != np.min(ng) || got != brute_matching(&preds, &golds) {
            bad += 1;
        }
    }
    let elapsed = t.elapsed();
    outcome(bad == 0 && elapsed < MATCHING_BUDGET, format!("{bad}/{MATCHING_INSTANCES} mismatches in {elapsed:.2?}"))
}

fn confusion_fixtures() -> Outcome {
    let run = |preds: &[SentenceSpan], golds: &[SentenceSpan]| {
        let c = confusion(&prune(&full_matching(preds, golds), 0.25), preds, golds);
        (c.tp, c.fp, c.tn, c.fn_)
    };
    let cases = [
        (
            run(
                &[SentenceSpan::task(5, 9)],
                &[SentenceSpan::nontask(0, 5), SentenceSpan::task(5, 10), SentenceSpan::nontask(10, 15)],
            ),
            (1, 0, 2, 0),
        ),
        (run(&[SentenceSpan::task(0, 2), SentenceSpan::task(3, 5)], &[SentenceSpan::task(0, 5)]), (1, 1, 0, 0)),
        (
            run(&[], &[SentenceSpan::task(0, 3), SentenceSpan::nontask(3, 6), SentenceSpan::task(6, 9)]),
            (0, 0, 1, 2),
        ),
    ];
    let ok = cases.iter().filter(|(got, want)| got == want).count();
    outcome(ok == cases.len(), format!("{ok}/{} fixtures (tp, fp, tn, fn) match", cases.len()))
}

/// Minimum pairing cost in units of `1 / window`.
fn brute_bed(a: &[usize], b: &[usize], window: usize) -> usize {
    fn go(i: usize, a: &[usize], b: &[usize], used: &mut Vec<bool>, window: usize) -> usize {
        if i == a.len() {
            return used.iter().filter(|u| !**u).count() * window;
        }
        let mut best = window + go(i + 1, a, b, used, window);
        for j in 0..b.len() {
            let d = a[i].abs_diff(b[j]);
            if !used[j] && d <= window {
                used[j] = true;
                best = best.min(d + go(i + 1, a, b, used, window));
                used[j] = false;
            }
        }
        best
    }
    go(0, a, b, &mut vec![false; b.len()], window)
}

fn random_boundaries(rng: &mut ChaCha8Rng, n: usize) -> BoundarySet {
    // the two region edges count toward the size
    let inner: Vec<usize> = (1..n).collect();
    let k = rng.gen_range(0..=(MAX_BOUNDARIES - 2).min(inner.len()));
    BoundarySet::new(n, inner.choose_multiple(rng, k).copied()).expect("positions inside the region")
}

fn boundary_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut bad = 0;
    for _ in 0..BED_INSTANCES {
        let n = rng.gen_range(2..20);
        let (s1, s2) = (random_boundaries(&mut rng, n), random_boundaries(&mut rng, n));
        let e = boundary_edit_distance(&s1, &s2, WINDOW).expect("same region");
        let scaled = (e.additions + e.deletions) * WINDOW + e.transpositions.iter().sum::<usize>();
        if scaled != brute_bed(s1.positions(), s2.positions(), WINDOW) {
            bad += 1;
        }
    }
    let shifted = boundary_similarity(&BoundarySet::new(9, [4]).unwrap(), &BoundarySet::new(9, [5]).unwrap(), WINDOW);
    let added = boundary_similarity(&BoundarySet::new(9, []).unwrap(), &BoundarySet::new(9, [5]).unwrap(), WINDOW);
    let (b1, b2) = (shifted.unwrap(), added.unwrap());
    let fixtures = (b1 - 5.0 / 6.0).abs() < B_TOLERANCE && (b2 - 2.0 / 3.0).abs() < B_TOLERANCE;
    outcome(bad == 0 && fixtures, format!("{bad}/{BED_INSTANCES} cost mismatches; B fixtures {b1:.15}, {b2:.15}"))
}

fn expected_spans(region: &WritingRegion, scheme: Scheme) -> Vec<SentenceSpan> {
    region
        .gold_sentences
        .iter()
        .filter(|s| scheme != Scheme::SlateBio || s.label.is_task())
        .map(|s| {
            let label = if scheme == Scheme::SentenceBi { SentenceLabel::Unlabeled } else { s.label };
            SentenceSpan::new(s.start, s.end, label)
        })
        .collect()
}

fn same_spans(a: &[SentenceSpan], b: &[SentenceSpan]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x.start, x.end, x.label) == (y.start, y.end, y.label))
}

/// Regions whose word-level round trip fails under some scheme.
fn word_round_trip_failures(regions: &[WritingRegion]) -> usize {
    regions
        .iter()
        .filter(|r| {
            !Scheme::ALL.iter().all(|&s| {
                encode_word_labels(r, s).is_ok_and(|l| same_spans(&decode(&l).spans, &expected_spans(r, s)))
            })
        })
        .count()
}

fn split_word(rng: &mut ChaCha8Rng, w: &str) -> Vec<String> {
    let chars: Vec<char> = w.chars().collect();
    let k = rng.gen_range(1..=5).min(chars.len());
    let mut cuts: Vec<usize> = rand::seq::index::sample(rng, chars.len() - 1, k - 1).into_iter().map(|c| c + 1).collect();
    cuts.sort_unstable();
    let mut out = Vec::with_capacity(k);
    let mut prev = 0;
    for c in cuts.into_iter().chain([chars.len()]) {
        out.push(chars[prev..c].iter().collect());
        prev = c;
    }
    out
}

fn token_fuzz_failures(pool: &[WritingRegion]) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut bad = 0;
    for i in 0..FUZZ_REGIONS {
        let region = &pool[i % pool.len()];
        let layout = rng.gen_bool(0.5);
        let splits: Vec<Vec<String>> = region.words.iter().map(|w| split_word(&mut rng, &w.text)).collect();
        let mut next = 0;
        let splitter = |_: &str| {
            next += 1;
            splits[next - 1].clone()
        };
        let cell = std::cell::RefCell::new(splitter);
        let tokens = match render(region, &|w: &str| (cell.borrow_mut())(w), layout) {
            Ok(t) => t,
            Err(_) => {
                bad += 1;
                continue;
            }
        };
        let ok = Scheme::ALL.iter().all(|&s| {
            let Ok(words) = encode_word_labels(region, s) else { return false };
            project_to_tokens(&words, &tokens)
                .and_then(|t| aggregate_tokens(&t, &tokens))
                .is_ok_and(|back| back == words && same_spans(&decode(&back).spans, &expected_spans(region, s)))
        });
        bad += usize::from(!ok);
    }
    bad
}

fn codec_round_trip(c: &Corpora) -> Outcome {
    let synth: Vec<WritingRegion> = c.synth_train.iter().chain(&c.synth_test).cloned().collect();
    let fuzz = token_fuzz_failures(&synth);
    match &c.released {
        Some((train, test)) => {
            let all: Vec<WritingRegion> = train.iter().chain(test).cloned().collect();
            let words = word_round_trip_failures(&all);
            let fuzz = token_fuzz_failures(&all);
            outcome(
                words == 0 && fuzz == 0,
                format!("{words}/{} corpus regions failed; {fuzz}/{FUZZ_REGIONS} fuzzed regions failed", all.len()),
            )
        }
        None => absent(&format!(
            "{}/{} regions failed, {fuzz}/{FUZZ_REGIONS} fuzzed regions failed",
            word_round_trip_failures(&synth),
            synth.len()
        )),
    }
}

fn equivalence_failures(regions: &[WritingRegion]) -> usize {
    regions
        .iter()
        .filter(|r| {
            let Ok(nti) = encode_word_labels(r, Scheme::SlateNti) else { return true };
            let tasks: Vec<SentenceSpan> = decode(&nti).spans.into_iter().filter(|s| s.label.is_task()).collect();
            !same_spans(&decode(&nti_to_bio(&nti)).spans, &tasks)
        })
        .count()
}

fn scheme_equivalence(c: &Corpora) -> Outcome {
    match &c.released {
        Some((train, test)) => {
            let all: Vec<WritingRegion> = train.iter().chain(test).cloned().collect();
            let bad = equivalence_failures(&all);
            outcome(bad == 0, format!("{bad}/{} regions differ", all.len()))
        }
        None => {
            let all: Vec<WritingRegion> = c.synth_train.iter().chain(&c.synth_test).cloned().collect();
            absent(&format!("{}/{} regions differ", equivalence_failures(&all), all.len()))
        }
    }
}

fn run_cli(args: &[&str]) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_slate")).args(args).output().map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(String::from_utf8_lossy(&out.stderr).into_owned());
    }
    String::from_utf8(out.stdout).map_err(|e| e.to_string())
}

fn perfect_prediction(c: &Corpora) -> Outcome {
    let corpus = released_corpus().unwrap_or_else(|| c.synth_path.clone());
    let corpus = corpus.to_str().expect("utf-8 path");
    let preds = c.synth_path.with_file_name("gold_predictions.jsonl");
    let report = run_cli(&["encode", "--corpus", corpus, "--split", "test", "--scheme", "nti"])
        .and_then(|p| std::fs::write(&preds, p).map_err(|e| e.to_string()))
        .and_then(|_| run_cli(&["eval", "--corpus", corpus, "--predictions", preds.to_str().unwrap()]))
        .and_then(|r| serde_json::from_str::<Value>(&r).map_err(|e| e.to_string()));
    match report {
        Ok(r) => {
            let vals = [&r["task"]["f1"], &r["accuracy"], &r["b"], &r["b_tp"]];
            let pass = vals.iter().all(|v| v.as_f64() == Some(1.0));
            let source = if released_corpus().is_some() { "released" } else { "synthetic" };
            outcome(
                pass,
                format!("{source} test split: F1 {} accuracy {} B {} B_tp {}", vals[0], vals[1], vals[2], vals[3]),
            )
        }
        Err(e) => outcome(false, format!("cli failed: {e}")),
    }
}

struct Models {
    nti: slate_core::tagger::TaggerModel,
    bi: slate_core::tagger::TaggerModel,
    classifier: slate_core::tagger::SentenceClassifierModel,
}

fn train_models(train: &[WritingRegion]) -> Models {
    let cfg = TrainConfig::default();
    Models {
        nti: train_joint(train, Scheme::SlateNti, &cfg).expect("nti trains"),
        bi: train_joint(train, Scheme::SentenceBi, &cfg).expect("bi trains"),
        classifier: train_sentence_classifier(&sentences_from_regions(train), &cfg).expect("classifier trains"),
    }
}

fn corpus_ratio(m: &Models, test: &[WritingRegion]) -> f64 {
    let joint = JointExtractor::new(&m.nti).expect("nti tagger");
    let two = TwoModelExtractor::new(&m.bi, &m.classifier).expect("bi segmenter");
    let stats = measure_all(&[&joint, &two], &[test], SWEEP_RUNS);
    stats[1][0].mean_ms / stats[0][0].mean_ms
}

fn latency(c: &Corpora) -> Outcome {
    let (train, test) = c.released.as_ref().map_or((&c.synth_train, &c.synth_test), |(a, b)| (a, b));
    let m = train_models(train);
    let joint = JointExtractor::new(&m.nti).expect("nti tagger");
    let two = TwoModelExtractor::new(&m.bi, &m.classifier).expect("bi segmenter");

    let groups: Vec<Vec<WritingRegion>> =
        SWEEP.iter().map(|&k| (0..SWEEP_REGIONS).map(|s| bench_region(k, SWEEP_WORDS, s)).collect()).collect();
    let exact_calls = SWEEP.iter().zip(&groups).all(|(&k, g)| {
        g.iter().all(|r| {
            let mut calls = Invocations::default();
            two.extract(r, &mut calls);
            calls.classifier == k
        })
    });
    let refs: Vec<&[WritingRegion]> = groups.iter().map(Vec::as_slice).collect();
    let stats = measure_all(&[&joint, &two], &refs, SWEEP_RUNS);
    let j: Vec<f64> = stats[0].iter().map(|s| s.mean_ms).collect();
    let t: Vec<f64> = stats[1].iter().map(|s| s.mean_ms).collect();
    let increasing = t.windows(2).all(|w| w[1] > w[0]);
    let spread = j.iter().copied().fold(f64::MIN, f64::max) / j.iter().copied().fold(f64::MAX, f64::min);
    let ratio = corpus_ratio(&m, test);
    let fmt = |v: &[f64]| v.iter().map(|x| format!("{:.1}", x * 1e3)).collect::<Vec<_>>().join(" ");
    let sweep = format!(
        "classifier calls = k: {exact_calls}; two-model us [{}] increasing: {increasing}; joint us [{}] spread {spread:.2}",
        fmt(&t),
        fmt(&j)
    );
    let sweep_ok = exact_calls && increasing && spread < JOINT_SPREAD;
    if c.released.is_some() {
        outcome(sweep_ok && ratio > 1.0, format!("{sweep}; test-corpus two-model/joint {ratio:.2}"))
    } else {
        let mut o = absent(&format!("two-model/joint {ratio:.2}"));
        o.detail = format!("{sweep}; {}", o.detail);
        o
    }
}

/// Task F1 of predicting every gold sentence as a task, and of predicting none.
fn trivial_f1(test: &[WritingRegion]) -> (f64, f64) {
    let all_task: BTreeMap<String, Vec<SentenceSpan>> = test
        .iter()
        .map(|r| (r.region_id.clone(), r.gold_sentences.iter().map(|s| SentenceSpan::task(s.start, s.end)).collect()))
        .collect();
    let f1 = |p: &BTreeMap<String, Vec<SentenceSpan>>| {
        corpus_evaluate(test, p, 0.25, WINDOW).expect("known regions").report.task.f1.unwrap_or(0.0)
    };
    (f1(&all_task), f1(&BTreeMap::new()))
}

fn perceptron_f1(train: &[WritingRegion], test: &[WritingRegion]) -> (f64, Duration) {
    let t = Instant::now();
    let model = train_joint(train, Scheme::SlateNti, &TrainConfig::default()).expect("nti trains");
    let elapsed = t.elapsed();
    let ex = JointExtractor::new(&model).expect("nti tagger");
    let preds: BTreeMap<String, Vec<SentenceSpan>> = test
        .iter()
        .map(|r| (r.region_id.clone(), ex.extract(r, &mut Invocations::default())))
        .collect();
    let f1 = corpus_evaluate(test, &preds, 0.25, WINDOW).expect("known regions").report.task.f1.unwrap_or(0.0);
    (f1, elapsed)
}

fn perceptron_floor(c: &Corpora) -> Outcome {
    let (train, test) = c.released.as_ref().map_or((&c.synth_train, &c.synth_test), |(a, b)| (a, b));
    let (f1, took) = perceptron_f1(train, test);
    let (all_task, none) = trivial_f1(test);
    let detail = format!("task F1 {f1:.4} vs all-task {all_task:.4}, all-non-task {none:.4}; trained in {took:.2?}");
    let pass = f1 > all_task && f1 > none && took < TRAIN_BUDGET;
    if c.released.is_some() {
        outcome(pass, detail)
    } else {
        absent(&format!("{} ({detail})", if pass { "above both" } else { "not above both" }))
    }
}

fn main() -> ExitCode {
    let c = corpora();
    let checks: [(&str, &dyn Fn() -> Outcome); 9] = [
        ("dataset sanity", &dataset_sanity),
        ("matching oracle", &matching_oracle),
        ("confusion oracle", &confusion_fixtures),
        ("boundary metric oracle", &boundary_oracle),
        ("codec round trip", &|| codec_round_trip(&c)),
        ("scheme equivalence", &|| scheme_equivalence(&c)),
        ("perfect prediction end-to-end", &|| perfect_prediction(&c)),
        ("latency mechanism", &|| latency(&c)),
        ("perceptron floor", &|| perceptron_floor(&c)),
    ];
    let (mut failed, mut blocked) = (0, 0);
    for (name, check) in checks {
        let o = check();
        failed += usize::from(!o.pass);
        blocked += usize::from(!o.pass && o.blocked);
        println!("{} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    println!(
        "{}/{} criteria passed; {blocked} failed only for lack of the released corpus",
        checks.len() - failed,
        checks.len()
    );
    if failed == blocked {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

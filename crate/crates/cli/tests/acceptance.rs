//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero if any fail.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::Instant;

use corpuscle::index::{build_index, LeaveOutMode};
use corpuscle::validate::stats::{pearson_slices, spearman_slices};
use corpuscle::validate::{compare_corpora, CompareOptions};
use corpuscle::{porter_stem, AlignmentMode, CorpusIndex, Dictionary, Document, Token, WeightingMode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, Box<dyn FnOnce() -> Check>);

const KEY: &str = "acceptance-key-7f3a9c21d4";

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn fixture(rel: &str) -> PathBuf {
    root().join("fixtures").join(rel)
}

fn corpuscle(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_corpuscle"))
        .args(args)
        .current_dir(dir)
        .env("CORPUSCLE_KEY", KEY)
        .env("RUST_LOG", "info")
        .output()
        .expect("binary runs")
}

fn ok(out: &Output) -> Result<String, String> {
    if out.status.success() {
        Ok(String::from_utf8_lossy(&out.stdout).into_owned())
    } else {
        Err(format!("exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr).trim()))
    }
}

fn p(path: &Path) -> &str {
    path.to_str().expect("utf-8 path")
}

fn csv_column(path: &Path, name: &str) -> Result<Vec<String>, String> {
    let mut rdr = csv::Reader::from_path(path).map_err(|e| e.to_string())?;
    let idx = rdr.headers().map_err(|e| e.to_string())?.iter().position(|h| h == name).ok_or(format!("no column {name}"))?;
    rdr.records().map(|r| r.map(|r| r[idx].to_string()).map_err(|e| e.to_string())).collect()
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

// random corpora ---------------------------------------------------------

const POOL: [&str; 16] = [
    "sleep",
    "mood",
    "life",
    "long",
    "therapy",
    "abuse",
    "health",
    "pressure",
    "identity",
    "pleasure",
    "mental",
    "childhood",
    "lol",
    "smh",
    "whazzup",
    "physical",
];

fn random_corpus(rng: &mut ChaCha8Rng, max_docs: usize, max_users: usize) -> Vec<Document> {
    let n = rng.random_range(1..=max_docs);
    (0..n)
        .map(|i| {
            let len = rng.random_range(1..15);
            let toks = (0..len).map(|_| Token::word(POOL[rng.random_range(0..POOL.len())])).collect();
            Document::tweet(format!("d{i:03}"), format!("u:{}", rng.random_range(0..max_users)), "", toks)
        })
        .collect()
}

// criteria ---------------------------------------------------------------

fn porter_conformance() -> Check {
    let text = fs::read_to_string(fixture("porter/vocabulary.txt")).map_err(|e| e.to_string())?;
    let pairs: Vec<(&str, &str)> = text.lines().filter_map(|l| l.split_once(' ')).collect();
    ensure(pairs.len() >= 1000, format!("only {} pairs", pairs.len()))?;
    let start = Instant::now();
    let agree = pairs.iter().filter(|(w, s)| porter_stem(w) == *s).count();
    let secs = start.elapsed().as_secs_f64();
    let msg = format!("{agree}/{} pairs agree in {secs:.3}s", pairs.len());
    ensure(agree == pairs.len() && secs < 1.0, msg.clone())?;
    Ok(msg)
}

/// Independent recount of the essays: apostrophes deleted, split on anything
/// non-alphanumeric, short, numeric and stop words dropped.
fn recount_essays() -> Result<Vec<(String, u64)>, String> {
    let stop: BTreeSet<String> = fs::read_to_string(root().join("crates/core/data/stopwords_en.txt"))
        .map_err(|e| e.to_string())?
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_lowercase)
        .collect();
    let mut counts: BTreeMap<String, u64> = BTreeMap::new();
    for entry in fs::read_dir(fixture("essays")).map_err(|e| e.to_string())? {
        let text = fs::read_to_string(entry.map_err(|e| e.to_string())?.path()).map_err(|e| e.to_string())?;
        let cleaned: String = text.to_lowercase().chars().filter(|c| !matches!(c, '\'' | '\u{2019}')).collect();
        for w in cleaned.split(|c: char| !c.is_alphanumeric()) {
            if w.chars().count() >= 2 && !w.chars().all(|c| c.is_ascii_digit()) && !stop.contains(w) {
                *counts.entry(w.to_string()).or_default() += 1;
            }
        }
    }
    let mut v: Vec<_> = counts.into_iter().collect();
    v.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    v.truncate(16);
    Ok(v)
}

fn table_recovery(dir: &Path) -> Check {
    let stdout = ok(&corpuscle(dir, &["build-standard", p(&fixture("essays")), "standard.json"]))?;
    let rows: Vec<(String, u64)> = stdout
        .lines()
        .filter_map(|l| {
            let f: Vec<&str> = l.split_whitespace().collect();
            (f.len() == 4 && f[0].parse::<usize>().is_ok()).then(|| (f[1].to_string(), f[2].parse().unwrap_or(0)))
        })
        .collect();
    let expected: BTreeSet<&str> = [
        "pleasure",
        "sleep",
        "therapy",
        "activities",
        "treatment",
        "long",
        "abuse",
        "health",
        "identity",
        "life",
        "mood",
        "mental",
        "depression",
        "physical",
        "pressure",
        "childhood",
    ]
    .into();
    let got: BTreeSet<&str> = rows.iter().map(|(t, _)| t.as_str()).collect();
    ensure(rows.len() == 16 && got == expected, format!("top-16 was {got:?}"))?;
    let recount = recount_essays()?;
    ensure(recount == rows, format!("brute-force recount differs: {recount:?}"))?;
    Ok("build-standard lists exactly the 16 reference terms; counts match a brute-force recount".into())
}

fn identity_correlation() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let dict = Dictionary::english();
    let mut checked = 0;
    for i in 0..100 {
        let mut docs = random_corpus(&mut rng, 30, 5);
        // two different counts guarantee non-zero variance
        docs[0].tokens.extend(["sleep", "sleep", "mood"].map(Token::word));
        let ix = build_index(&docs).map_err(|e| e.to_string())?;
        let k = ix.term_count().min(8);
        for alignment in [AlignmentMode::IntersectionDictWords, AlignmentMode::UnionAll] {
            let opts = CompareOptions { k, alignment, ..CompareOptions::default() };
            let r = compare_corpora::<f64>(&ix, &ix, &dict, &opts).map_err(|e| e.to_string())?;
            let (pr, sr) =
                (r.pearson_r.ok_or(format!("corpus {i}: no pearson"))?, r.spearman_rho.ok_or(format!("corpus {i}: no spearman"))?);
            ensure(
                (pr - 1.0).abs() <= 1e-12 && (sr - 1.0).abs() <= 1e-12 && r.overlap_at_k == 1.0,
                format!("corpus {i}: {pr} {sr} {}", r.overlap_at_k),
            )?;
            checked += 1;
        }
    }
    Ok(format!("{checked} self-comparisons over 100 random corpora give pearson = spearman = overlap = 1"))
}

fn paired_sweep(dir: &Path) -> Check {
    let start = Instant::now();
    ok(&corpuscle(dir, &["build-standard", p(&fixture("essays")), "standard.json"]))?;
    ok(&corpuscle(dir, &["--sample-sizes", "100,200", "sweep", "standard.json", p(&fixture("tweets/paired.jsonl")), "paired"]))?;
    let secs = start.elapsed().as_secs_f64();
    let pearson: Vec<f64> = csv_column(&dir.join("paired/sweep.csv"), "pearson_r")?.iter().map(|v| v.parse().unwrap_or(f64::NAN)).collect();
    let msg = format!("pearson at n=100,200: {pearson:.4?} in {secs:.2}s");
    ensure(pearson.len() == 2 && pearson.iter().all(|&r| r >= 0.95) && secs < 10.0, msg.clone())?;
    Ok(msg)
}

fn drift_sweep(dir: &Path) -> Check {
    ok(&corpuscle(dir, &["build-standard", p(&fixture("essays")), "standard.json"]))?;
    let tweets = fixture("tweets/drift.jsonl");
    let args = ["--sampling", "chronological", "--track", "insomnia,sleep", "sweep", "standard.json", p(&tweets), "drift"];
    ok(&corpuscle(dir, &args))?;
    let path = dir.join("drift/trajectories.csv");
    let (terms, sizes, ranks, weights) =
        (csv_column(&path, "term")?, csv_column(&path, "sample_size")?, csv_column(&path, "rank")?, csv_column(&path, "weight")?);
    let series = |term: &str| -> Vec<(String, String, String)> {
        (0..terms.len()).filter(|&i| terms[i] == term).map(|i| (sizes[i].clone(), ranks[i].clone(), weights[i].clone())).collect()
    };
    let (ins, slp) = (series("insomnia"), series("sleep"));
    let ins_ranks: Vec<usize> = ins.iter().map(|(_, r, _)| r.parse().unwrap_or(usize::MAX)).collect();
    let slp_w: Vec<f64> = slp.iter().map(|(_, _, w)| w.parse().unwrap_or(f64::NAN)).collect();
    let n: Vec<&str> = ins.iter().map(|(n, _, _)| n.as_str()).collect();
    let msg = format!("n={n:?}: insomnia rank {ins_ranks:?}, sleep relfreq {slp_w:?}");
    ensure(n == ["100", "200", "500", "1000"], msg.clone())?;
    ensure(ins_ranks.windows(2).all(|w| w[1] < w[0]) && slp_w.windows(2).all(|w| w[1] <= w[0]), msg.clone())?;
    Ok(msg)
}

fn oracle_equivalence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for c in 0..200 {
        let docs = random_corpus(&mut rng, 50, 8);
        let ix = build_index(&docs).map_err(|e| e.to_string())?;
        let mut cf: BTreeMap<&str, u64> = BTreeMap::new();
        let mut df: BTreeMap<&str, u64> = BTreeMap::new();
        for d in &docs {
            for t in d.terms() {
                *cf.entry(t).or_default() += 1;
            }
            for t in d.terms().collect::<BTreeSet<_>>() {
                *df.entry(t).or_default() += 1;
            }
        }
        let total: u64 = cf.values().sum();
        let n = docs.len() as f64;
        ensure(ix.doc_count() == docs.len() as u64 && ix.term_count() == cf.len(), format!("corpus {c}: sizes"))?;
        for (t, s) in ix.terms() {
            ensure(s.collection_count == cf[t] && s.doc_freq == df[t], format!("corpus {c}: counts of {t}"))?;
        }
        for mode in [WeightingMode::RawCount, WeightingMode::RelFreq, WeightingMode::TfIdf] {
            let naive = |t: &str| -> f64 {
                let x = cf[t] as f64;
                match mode {
                    WeightingMode::RawCount => x,
                    WeightingMode::RelFreq => x / total as f64,
                    WeightingMode::TfIdf => x * (n / df[t] as f64).ln(),
                }
            };
            for (t, w) in ix.corpus_vector::<f64>(mode).map_err(|e| e.to_string())?.iter() {
                ensure((w - naive(t)).abs() <= 1e-12, format!("corpus {c}: {mode} weight of {t}"))?;
            }
            let mut all: Vec<(&str, f64)> = cf.keys().map(|t| (*t, naive(t))).collect();
            all.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(b.0)));
            let want: Vec<&str> = all.iter().take(5).map(|(t, _)| *t).collect();
            let got = ix.top_k::<f64>(5, mode, &BTreeSet::new()).map_err(|e| e.to_string())?;
            ensure(got.terms() == want, format!("corpus {c}: {mode} top-5 {:?} vs {want:?}", got.terms()))?;
        }
    }
    Ok("200 random corpora: counts exact, weights within 1e-12, top-k identical".into())
}

fn leave_one_user_out() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for c in 0..100 {
        let docs = random_corpus(&mut rng, 20, 5);
        let ix = build_index(&docs).map_err(|e| e.to_string())?;
        let users: BTreeSet<&str> = docs.iter().map(|d| d.author.as_str()).collect();
        let mut all_out = ix.clone();
        for u in &users {
            let rest: Vec<Document> = docs.iter().filter(|d| d.author != *u).cloned().collect();
            let rebuilt = build_index(&rest).map_err(|e| e.to_string())?;
            ensure(ix.leave_user_out(u, LeaveOutMode::SubtractCounts) == rebuilt, format!("corpus {c}: user {u}"))?;
            all_out = all_out.leave_user_out(u, LeaveOutMode::SubtractCounts);
        }
        ensure(all_out == CorpusIndex::default(), format!("corpus {c}: removing everyone left data"))?;
    }
    Ok("100 random corpora: leave_user_out equals a rebuild; removing all users empties the index".into())
}

fn files_under(dir: &Path, out: &mut Vec<PathBuf>) {
    for e in fs::read_dir(dir).into_iter().flatten().flatten() {
        let path = e.path();
        if path.is_dir() {
            files_under(&path, out)
        } else {
            out.push(path)
        }
    }
}

fn privacy(dir: &Path) -> Check {
    let handles: Vec<String> = fs::read_to_string(fixture("tweets/paired_handles.txt"))
        .map_err(|e| e.to_string())?
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(str::to_lowercase)
        .collect();
    ensure(handles.len() == 50, format!("{} handles listed", handles.len()))?;
    let (essays, tweets) = (fixture("essays"), fixture("tweets/paired.jsonl"));
    let runs: [Vec<&str>; 5] = [
        vec!["build-standard", p(&essays), "standard.json"],
        vec!["build-social", p(&tweets), "social.json"],
        vec!["validate", "standard.json", "social.json", "validate"],
        vec!["sweep", "standard.json", p(&tweets), "sweep"],
        vec!["screen", "social.json", "all", "screen"],
    ];
    for (i, args) in runs.iter().enumerate() {
        let out = corpuscle(dir, args);
        ok(&out)?;
        fs::write(dir.join(format!("run{i}.stdout.log")), &out.stdout).map_err(|e| e.to_string())?;
        fs::write(dir.join(format!("run{i}.stderr.log")), &out.stderr).map_err(|e| e.to_string())?;
    }
    let mut files = Vec::new();
    files_under(dir, &mut files);
    for f in &files {
        let text = fs::read_to_string(f).map_err(|e| e.to_string())?.to_lowercase();
        if let Some(h) = handles.iter().find(|h| text.contains(h.as_str())) {
            return Err(format!("{} contains handle {h}", f.display()));
        }
        ensure(!text.contains(KEY), format!("{} contains the key", f.display()))?;
    }
    Ok(format!("{} files (snapshots, CSV, SVG, stdout/stderr logs) free of all 50 handles", files.len()))
}

fn snapshot_of(dir: &Path) -> BTreeMap<PathBuf, Vec<u8>> {
    let mut files = Vec::new();
    files_under(dir, &mut files);
    files.into_iter().map(|f| (f.strip_prefix(dir).unwrap().to_path_buf(), fs::read(&f).unwrap())).collect()
}

fn determinism(dir: &Path) -> Check {
    let paired = fixture("tweets/paired.jsonl");
    let (essays, ten) = (fixture("essays"), fixture("tweets/ten_users.jsonl"));
    let runs: [Vec<&str>; 7] = [
        vec!["build-standard", p(&essays), "standard.json"],
        vec!["build-social", p(&paired), "social.json"],
        vec!["build-social", p(&ten), "ten.json"],
        vec!["validate", "standard.json", "social.json", "validate"],
        vec!["--seed", "11", "sweep", "standard.json", p(&paired), "sweep"],
        vec!["--seed", "11", "screen", "social.json", "all", "screen", "--sample", "10"],
        vec!["screen", "ten.json", "all", "screen-ten"],
    ];
    let mut rounds = Vec::new();
    for _ in 0..2 {
        for args in &runs {
            ok(&corpuscle(dir, args))?;
        }
        rounds.push(snapshot_of(dir));
    }
    ensure(rounds[0].len() >= 10, format!("only {} files written", rounds[0].len()))?;
    for (path, bytes) in &rounds[0] {
        ensure(rounds[1].get(path) == Some(bytes), format!("{} differs between runs", path.display()))?;
    }
    Ok(format!("{} output files byte-identical across two runs of every command", rounds[0].len()))
}

fn naive_pearson(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let (sx, sy) = (x.iter().sum::<f64>(), y.iter().sum::<f64>());
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    let sxx: f64 = x.iter().map(|a| a * a).sum();
    let syy: f64 = y.iter().map(|b| b * b).sum();
    (n * sxy - sx * sy) / ((n * sxx - sx * sx).sqrt() * (n * syy - sy * sy).sqrt())
}

fn naive_ranks(x: &[f64]) -> Vec<f64> {
    x.iter().map(|a| x.iter().filter(|b| *b < a).count() as f64 + (x.iter().filter(|b| *b == a).count() as f64 + 1.0) / 2.0).collect()
}

fn statistics() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut compared = 0;
    for i in 0..1000 {
        let n = rng.random_range(3..80);
        let x: Vec<f64> = (0..n).map(|_| if i % 2 == 0 { rng.random_range(0..10) as f64 } else { rng.random::<f64>() }).collect();
        let y: Vec<f64> =
            x.iter().map(|v| if rng.random_bool(0.5) { v + rng.random::<f64>() } else { rng.random_range(0..10) as f64 }).collect();
        let (Ok(pr), Ok(sr)) = (pearson_slices(&x, &y), spearman_slices(&x, &y)) else { continue };
        ensure((pr - naive_pearson(&x, &y)).abs() <= 1e-9, format!("pearson differs on vector {i}"))?;
        ensure((sr - naive_pearson(&naive_ranks(&x), &naive_ranks(&y))).abs() <= 1e-9, format!("spearman differs on vector {i}"))?;
        compared += 1;
    }
    ensure(compared >= 900, format!("only {compared} non-degenerate vectors"))?;
    let hp = pearson_slices::<f64>(&[1.0, 2.0, 3.0], &[2.0, 2.0, 4.0]).map_err(|e| e.to_string())?;
    let hs = spearman_slices::<f64>(&[1.0, 2.0, 3.0, 4.0], &[1.0, 3.0, 2.0, 4.0]).map_err(|e| e.to_string())?;
    ensure((hp - 0.866025).abs() < 5e-7 && (hs - 0.8).abs() < 1e-12, format!("hand values {hp} {hs}"))?;
    Ok(format!("{compared} random pairs within 1e-9 of the naive formulas; pearson {hp:.6}, spearman {hs:.6}"))
}

fn main() {
    let tmp = tempfile::tempdir().expect("temp dir");
    let scratch = |name: &str| {
        let d = tmp.path().join(name);
        fs::create_dir_all(&d).expect("scratch dir");
        d
    };
    let criteria: Vec<Criterion> = vec![
        ("porter stemmer conformance", Box::new(porter_conformance)),
        (
            "reference keyword table recovery",
            Box::new({
                let d = scratch("table");
                move || table_recovery(&d)
            }),
        ),
        ("identity correlation", Box::new(identity_correlation)),
        (
            "paired fixture correlation",
            Box::new({
                let d = scratch("paired");
                move || paired_sweep(&d)
            }),
        ),
        (
            "drift fixture rank trajectory",
            Box::new({
                let d = scratch("drift");
                move || drift_sweep(&d)
            }),
        ),
        ("index oracle equivalence", Box::new(oracle_equivalence)),
        ("leave-one-user-out correctness", Box::new(leave_one_user_out)),
        (
            "privacy of persisted output",
            Box::new({
                let d = scratch("privacy");
                move || privacy(&d)
            }),
        ),
        (
            "CLI determinism",
            Box::new({
                let d = scratch("determinism");
                move || determinism(&d)
            }),
        ),
        ("statistics cross-check", Box::new(statistics)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS [{:>2}] {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL [{:>2}] {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of 10 acceptance criteria passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

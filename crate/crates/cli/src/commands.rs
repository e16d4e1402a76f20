use std::fs;
use std::path::Path;

use corpuscle::index::build_index;
use corpuscle::store::{ingest_essays, ingest_tweets, load_snapshot, save_snapshot, users_of, Snapshot, StoreError, UserRecord};
use corpuscle::validate::{self, emit_report, emit_screening_csv, emit_trajectories_csv, ReportFormat, ValidateError};
use corpuscle::{CorpusIndex, Document};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::{GlobalFlags, RunConfig};
use crate::CliError;

fn store_err(e: StoreError) -> CliError {
    match e {
        StoreError::Unwritable { .. } => CliError::Output(e.to_string()),
        StoreError::WeakKey(_) => CliError::Config(e.to_string()),
        _ => CliError::Input(e.to_string()),
    }
}

fn validate_err(e: ValidateError) -> CliError {
    match e {
        ValidateError::UnwritablePath { .. } => CliError::Output(e.to_string()),
        ValidateError::InvalidK => CliError::Config(e.to_string()),
        _ => CliError::Input(e.to_string()),
    }
}

fn out_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::Output(format!("cannot create {}: {e}", dir.display())))
}

fn load(path: &Path) -> Result<Snapshot, CliError> {
    load_snapshot(path).map_err(store_err)
}

fn save(docs: &[Document], path: &Path) -> Result<CorpusIndex, CliError> {
    let index = build_index(docs).map_err(|e| CliError::Input(e.to_string()))?;
    save_snapshot(&index, docs, &users_of(docs), path).map_err(store_err)?;
    Ok(index)
}

/// Posts of a JSONL file that carry a seed hashtag, with handles pseudonymized.
fn harvest(cfg: &RunConfig, tweets: &Path) -> Result<Vec<Document>, CliError> {
    let key = cfg.key()?;
    let ingest = ingest_tweets(tweets, &cfg.normalizer()?, &key).map_err(store_err)?;
    for issue in &ingest.issues {
        log::warn!("skipped {}: {}", issue.location, issue.reason);
    }
    let (read, skipped) = (ingest.documents.len(), ingest.malformed());
    let docs = cfg.harvest.filter(ingest.documents);
    if docs.is_empty() {
        let tags: Vec<&str> = cfg.harvest.seed_hashtags().iter().map(String::as_str).collect();
        return Err(CliError::Input(format!("none of the {read} posts carry a seed hashtag ({})", tags.join(", "))));
    }
    println!("kept {} of {read} posts ({} lines skipped)", docs.len(), skipped);
    Ok(docs)
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(|v| format!("{v:.6}")).unwrap_or_else(|| "n/a".into())
}

pub fn build_standard(flags: &GlobalFlags, essays: &Path, out: &Path) -> Result<(), CliError> {
    let cfg = RunConfig::resolve(flags, None)?;
    let ingest = ingest_essays(essays, &cfg.normalizer()?).map_err(store_err)?;
    for issue in &ingest.issues {
        log::warn!("skipped {}: {}", issue.location, issue.reason);
    }
    let index = save(&ingest.documents, out)?;
    let top = index.top_k::<f64>(cfg.k, cfg.weighting, &Default::default()).map_err(|e| CliError::Input(e.to_string()))?;
    println!("{} essays, {} tokens, {} terms", index.doc_count(), index.total_tokens(), index.term_count());
    println!("{:>4}  {:<20} {:>8}  {}", "rank", "term", "count", cfg.weighting);
    for (i, (term, w)) in top.entries.iter().enumerate() {
        let count = index.stats(term).map_or(0, |s| s.collection_count);
        println!("{:>4}  {:<20} {:>8}  {:.6}", i + 1, term, count, w);
    }
    Ok(())
}

pub fn build_social(flags: &GlobalFlags, tweets: &Path, out: &Path) -> Result<(), CliError> {
    let cfg = RunConfig::resolve(flags, None)?;
    let docs = harvest(&cfg, tweets)?;
    let index = save(&docs, out)?;
    println!("{} documents from {} users, {} terms", index.doc_count(), index.authors().len(), index.term_count());
    Ok(())
}

pub fn validate(flags: &GlobalFlags, standard: &Path, social: &Path, dir: &Path) -> Result<(), CliError> {
    let cfg = RunConfig::resolve(flags, Some(dir))?;
    let dict = cfg.dictionary()?;
    let (std, soc) = (load(standard)?, load(social)?);
    let mut report = validate::compare_corpora::<f64>(&std.index, &soc.index, &dict, &cfg.compare_options()).map_err(validate_err)?;
    report.notes.push(cfg.provenance(&dict));
    out_dir(dir)?;
    let reports = [report];
    emit_report(&reports, dir.join("validation.csv"), ReportFormat::Csv).map_err(validate_err)?;
    emit_report(&reports, dir.join("validation.svg"), ReportFormat::Svg).map_err(validate_err)?;
    let r = &reports[0];
    println!("pearson_r     {}", fmt_opt(r.pearson_r));
    println!("spearman_rho  {}", fmt_opt(r.spearman_rho));
    println!("overlap@{:<5} {:.6}", r.k, r.overlap_at_k);
    println!("jaccard@{:<5} {:.6}", r.k, r.jaccard_top_k);
    println!("aligned terms {}", r.aligned_terms);
    for note in r.notes.iter().filter(|n| n.contains("unavailable") || n.starts_with("no correlation")) {
        println!("note: {note}");
    }
    Ok(())
}

pub fn sweep(flags: &GlobalFlags, standard: &Path, tweets: &Path, dir: &Path) -> Result<(), CliError> {
    let cfg = RunConfig::resolve(flags, Some(dir))?;
    let dict = cfg.dictionary()?;
    let std = load(standard)?;
    let docs = harvest(&cfg, tweets)?;
    let mut outcome =
        validate::sweep::<f64>(&std.index, &docs, &cfg.harvest, &dict, &cfg.compare_options(), &cfg.track).map_err(validate_err)?;
    let prov = cfg.provenance(&dict);
    for r in &mut outcome.reports {
        r.notes.push(prov.clone());
    }
    out_dir(dir)?;
    emit_report(&outcome.reports, dir.join("sweep.csv"), ReportFormat::Csv).map_err(validate_err)?;
    emit_report(&outcome.reports, dir.join("sweep.svg"), ReportFormat::Svg).map_err(validate_err)?;
    emit_trajectories_csv(&outcome.trajectories, dir.join("trajectories.csv")).map_err(validate_err)?;
    println!("{:>6}  {:>10}  {:>12}  {:>10}", "n", "pearson_r", "spearman_rho", "overlap@k");
    for r in &outcome.reports {
        println!("{:>6}  {:>10}  {:>12}  {:>10.6}", r.sample_size, fmt_opt(r.pearson_r), fmt_opt(r.spearman_rho), r.overlap_at_k);
    }
    for term in &cfg.track {
        if let Some(t) = outcome.trajectory(term) {
            let ranks: Vec<String> = t.ranks().iter().map(|r| r.map_or("-".into(), |r| r.to_string())).collect();
            println!("rank of {term}: {}", ranks.join(" -> "));
        }
    }
    Ok(())
}

/// Users to screen: one pseudonym, everyone, or a seeded random subset.
fn select_users(snapshot: &Snapshot, target: &str, sample: Option<usize>, seed: u64) -> Result<Vec<UserRecord>, CliError> {
    let pool: Vec<UserRecord> = if target == "all" {
        snapshot.users.clone()
    } else {
        let found = snapshot.users.iter().find(|u| u.pseudonym == target);
        vec![found.cloned().ok_or_else(|| CliError::Input(format!("unknown pseudonym {target}")))?]
    };
    let Some(n) = sample else { return Ok(pool) };
    if n >= pool.len() {
        return Ok(pool);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked = rand::seq::index::sample(&mut rng, pool.len(), n).into_vec();
    picked.sort_unstable();
    Ok(picked.into_iter().map(|i| pool[i].clone()).collect())
}

pub fn screen(flags: &GlobalFlags, social: &Path, target: &str, dir: &Path, sample: Option<usize>) -> Result<(), CliError> {
    let cfg = RunConfig::resolve(flags, Some(dir))?;
    let dict = cfg.dictionary()?;
    let snap = load(social)?;
    let users = select_users(&snap, target, sample, cfg.harvest.rng_seed)?;
    let opts = cfg.compare_options();
    let prov = cfg.provenance(&dict);
    let mut reports = Vec::with_capacity(users.len());
    for u in &users {
        let mut r = validate::screen_user::<f64>(u, &snap.documents, &snap.index, &dict, &opts).map_err(validate_err)?;
        r.notes.push(prov.clone());
        reports.push(r);
    }
    out_dir(dir)?;
    emit_screening_csv(&reports, dir.join("screening.csv")).map_err(validate_err)?;
    println!("{:<20}  {:>5}  {:>9}  {:>8}  {:>10}  corpus", "pseudonym", "docs", "overlap@k", "cosine", "pearson_r");
    for r in &reports {
        println!(
            "{:<20}  {:>5}  {:>9.6}  {:>8.6}  {:>10}  {}",
            r.pseudonym,
            r.user_doc_count,
            r.overlap_at_k,
            r.cosine_similarity,
            fmt_opt(r.pearson_r),
            r.corpus_mode_used
        );
    }
    if !reports.is_empty() {
        let mean = reports.iter().map(|r| r.overlap_at_k).sum::<f64>() / reports.len() as f64;
        println!("mean overlap@{}: {mean:.6} over {} users", cfg.k, reports.len());
    }
    Ok(())
}

//! Run settings: built-in defaults, overridden by a `key = value` file,
//! overridden by flags.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::Args;
use corpuscle::index::LeaveOutMode;
use corpuscle::lexicon::{Dictionary, StopList};
use corpuscle::store::{HarvestConfig, PseudonymKey, SamplingStrategy, DEFAULT_SAMPLE_SIZES, DEFAULT_SEED_HASHTAGS};
use corpuscle::validate::CompareOptions;
use corpuscle::{AlignmentMode, NormalizeConfig, Normalizer, WeightingMode};

use crate::CliError;

/// Flags shared by every subcommand.
#[derive(Debug, Default, Clone, Args)]
pub struct GlobalFlags {
    /// Settings file with one `key = value` per line
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Stop-word list, one word per line
    #[arg(long, global = true, value_name = "PATH")]
    pub stoplist: Option<PathBuf>,
    /// Dictionary used to tell standard words from out-of-vocabulary ones
    #[arg(long, global = true, value_name = "PATH")]
    pub dictionary: Option<PathBuf>,
    /// Number of top keywords compared
    #[arg(long, global = true)]
    pub k: Option<usize>,
    /// raw, relfreq or tfidf
    #[arg(long, global = true)]
    pub weighting: Option<WeightingMode>,
    /// dict-intersection or union
    #[arg(long, global = true)]
    pub alignment: Option<AlignmentMode>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Keep the seed hashtag terms when ranking and aligning
    #[arg(long, global = true)]
    pub keep_seed_terms: bool,
    /// Porter-stem tokens when building corpora
    #[arg(long, global = true)]
    pub stemming: bool,
    /// Read the pseudonymization key from a file instead of CORPUSCLE_KEY
    #[arg(long, global = true, value_name = "PATH")]
    pub key_file: Option<PathBuf>,
    /// Comma-separated seed hashtags
    #[arg(long, global = true, value_delimiter = ',')]
    pub hashtags: Option<Vec<String>>,
    /// Comma-separated, strictly increasing sample sizes
    #[arg(long, global = true, value_delimiter = ',')]
    pub sample_sizes: Option<Vec<usize>>,
    /// uniform or chronological
    #[arg(long, global = true)]
    pub sampling: Option<SamplingStrategy>,
    /// Extra comma-separated terms whose rank the sweep records
    #[arg(long, global = true, value_delimiter = ',')]
    pub track: Option<Vec<String>>,
    /// subtract or drop-types
    #[arg(long, global = true, value_parser = parse_leave_out)]
    pub leave_out: Option<LeaveOutMode>,
    #[arg(long, global = true)]
    pub min_token_length: Option<usize>,
}

fn parse_leave_out(s: &str) -> Result<LeaveOutMode, String> {
    match s {
        "subtract" => Ok(LeaveOutMode::SubtractCounts),
        "drop-types" => Ok(LeaveOutMode::DropTypes),
        other => Err(format!("unknown leave-out mode '{other}' (expected subtract or drop-types)")),
    }
}

fn leave_out_name(m: LeaveOutMode) -> &'static str {
    match m {
        LeaveOutMode::SubtractCounts => "subtract",
        LeaveOutMode::DropTypes => "drop-types",
    }
}

/// Fully resolved settings for one run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub normalize: NormalizeConfig,
    pub harvest: HarvestConfig,
    pub stoplist_path: Option<PathBuf>,
    pub dictionary_path: Option<PathBuf>,
    pub key_file: Option<PathBuf>,
    pub k: usize,
    pub weighting: WeightingMode,
    pub alignment: AlignmentMode,
    pub keep_seed_terms: bool,
    pub leave_out: LeaveOutMode,
    pub track: Vec<String>,
    pub output_dir: Option<PathBuf>,
}

const KEYS: [&str; 15] = [
    "stoplist",
    "dictionary",
    "k",
    "weighting",
    "alignment",
    "seed",
    "keep_seed_terms",
    "stemming",
    "key_file",
    "hashtags",
    "sample_sizes",
    "sampling",
    "track",
    "leave_out",
    "min_token_length",
];

pub fn parse_config_file(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
    let mut out = BTreeMap::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) =
            line.split_once('=').ok_or_else(|| CliError::Config(format!("{}:{}: expected key = value", path.display(), no + 1)))?;
        let k = k.trim().replace('-', "_");
        if !KEYS.contains(&k.as_str()) {
            return Err(CliError::Config(format!("{}:{}: unknown key '{k}'", path.display(), no + 1)));
        }
        out.insert(k, v.trim().to_string());
    }
    Ok(out)
}

fn parsed<T: FromStr>(file: &BTreeMap<String, String>, key: &str) -> Result<Option<T>, CliError>
where
    T::Err: std::fmt::Display,
{
    file.get(key).map(|v| v.parse::<T>().map_err(|e| CliError::Config(format!("config key {key}: {e}")))).transpose()
}

fn list(v: &str) -> Vec<String> {
    v.split(',').map(str::trim).filter(|s| !s.is_empty()).map(str::to_string).collect()
}

impl RunConfig {
    pub fn resolve(flags: &GlobalFlags, output_dir: Option<&Path>) -> Result<Self, CliError> {
        let file = match &flags.config {
            Some(p) => parse_config_file(p)?,
            None => BTreeMap::new(),
        };
        let path_of = |flag: &Option<PathBuf>, key: &str| flag.clone().or_else(|| file.get(key).map(PathBuf::from));
        let bool_of = |flag: bool, key: &str| -> Result<bool, CliError> { Ok(flag || parsed::<bool>(&file, key)?.unwrap_or(false)) };

        let stemming = bool_of(flags.stemming, "stemming")?;
        let min_len = flags.min_token_length.or(parsed(&file, "min_token_length")?).unwrap_or(2);
        let normalize = NormalizeConfig::default()
            .with_stemming(stemming)
            .with_min_token_length(min_len)
            .map_err(|e| CliError::Config(e.to_string()))?;

        let hashtags = match &flags.hashtags {
            Some(h) => h.clone(),
            None => file.get("hashtags").map(|v| list(v)).unwrap_or_else(|| DEFAULT_SEED_HASHTAGS.iter().map(|s| s.to_string()).collect()),
        };
        let sample_sizes = match &flags.sample_sizes {
            Some(s) => s.clone(),
            None => match file.get("sample_sizes") {
                Some(v) => list(v)
                    .iter()
                    .map(|n| n.parse::<usize>().map_err(|e| CliError::Config(format!("config key sample_sizes: {e}"))))
                    .collect::<Result<_, _>>()?,
                None => DEFAULT_SAMPLE_SIZES.to_vec(),
            },
        };
        let seed = flags.seed.or(parsed(&file, "seed")?).unwrap_or(0);
        let sampling = flags.sampling.or(parsed(&file, "sampling")?).unwrap_or_default();
        let harvest =
            HarvestConfig::new(&hashtags, sample_sizes, seed).map_err(|e| CliError::Config(e.to_string()))?.with_sampling(sampling);

        let k = flags.k.or(parsed(&file, "k")?).unwrap_or(corpuscle::validate::DEFAULT_K);
        if k == 0 {
            return Err(CliError::Config("k must be at least 1".into()));
        }
        let leave_out = match (flags.leave_out, file.get("leave_out")) {
            (Some(m), _) => m,
            (None, Some(v)) => parse_leave_out(v).map_err(CliError::Config)?,
            (None, None) => LeaveOutMode::default(),
        };
        Ok(RunConfig {
            normalize,
            harvest,
            stoplist_path: path_of(&flags.stoplist, "stoplist"),
            dictionary_path: path_of(&flags.dictionary, "dictionary"),
            key_file: path_of(&flags.key_file, "key_file"),
            k,
            weighting: flags.weighting.or(parsed(&file, "weighting")?).unwrap_or(WeightingMode::RelFreq),
            alignment: flags.alignment.or(parsed(&file, "alignment")?).unwrap_or_default(),
            keep_seed_terms: bool_of(flags.keep_seed_terms, "keep_seed_terms")?,
            leave_out,
            track: flags.track.clone().or_else(|| file.get("track").map(|v| list(v))).unwrap_or_default(),
            output_dir: output_dir.map(Path::to_path_buf),
        })
    }

    pub fn stoplist(&self) -> Result<StopList, CliError> {
        match &self.stoplist_path {
            Some(p) => StopList::load(p).map_err(|e| CliError::Config(e.to_string())),
            None => Ok(StopList::english()),
        }
    }

    pub fn dictionary(&self) -> Result<Dictionary, CliError> {
        match &self.dictionary_path {
            Some(p) => Dictionary::load(p).map_err(|e| CliError::Config(e.to_string())),
            None => Ok(Dictionary::english()),
        }
    }

    pub fn normalizer(&self) -> Result<Normalizer, CliError> {
        Ok(Normalizer::new(self.normalize.clone(), self.stoplist()?))
    }

    pub fn key(&self) -> Result<PseudonymKey, CliError> {
        let key = match &self.key_file {
            Some(p) => PseudonymKey::from_file(p).map_err(|e| CliError::Config(e.to_string()))?,
            None => PseudonymKey::from_env().map_err(|e| CliError::Config(e.to_string()))?.ok_or_else(|| {
                CliError::Config(format!("no pseudonymization key: set {} or pass --key-file", corpuscle::store::KEY_ENV_VAR))
            })?,
        };
        Ok(key)
    }

    pub fn compare_options(&self) -> CompareOptions {
        let opts = CompareOptions {
            k: self.k,
            weighting: self.weighting,
            alignment: self.alignment,
            exclude: self.harvest.seed_hashtags().clone(),
            leave_out: self.leave_out,
        };
        if self.keep_seed_terms {
            opts.keep_all_terms()
        } else {
            opts
        }
    }

    /// One-line description of every setting, for report provenance. The key
    /// itself is never included.
    pub fn provenance(&self, dictionary: &Dictionary) -> String {
        let path = |p: &Option<PathBuf>| p.as_ref().map(|p| p.display().to_string()).unwrap_or_else(|| "builtin".into());
        let join = |v: &[String]| if v.is_empty() { "-".to_string() } else { v.join(",") };
        let sizes: Vec<String> = self.harvest.sample_sizes().iter().map(usize::to_string).collect();
        let tags: Vec<String> = self.harvest.seed_hashtags().iter().cloned().collect();
        format!(
            "run: k={} weighting={} alignment={} seed={} sampling={} sample_sizes={} hashtags={} keep_seed_terms={} \
             stemming={} min_token_length={} leave_out={} track={} stoplist={} dictionary={} output_dir={}",
            self.k,
            self.weighting,
            self.alignment,
            self.harvest.rng_seed,
            self.harvest.sampling,
            sizes.join(","),
            tags.join(","),
            self.keep_seed_terms,
            self.normalize.stemming_enabled,
            self.normalize.min_token_length,
            leave_out_name(self.leave_out),
            join(&self.track),
            path(&self.stoplist_path),
            dictionary.name(),
            self.output_dir.as_ref().map(|p| p.display().to_string()).unwrap_or_else(|| "-".into()),
        )
    }
}

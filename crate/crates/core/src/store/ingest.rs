use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use chrono::{DateTime, Utc};
use rayon::prelude::*;
use serde::Deserialize;

use super::{pseudonymize, users_of, PseudonymKey, StoreError, UserRecord};
use crate::document::Document;
use crate::normalize::{extract_hashtags, Normalizer, Token};

/// A recoverable per-file or per-line ingestion problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IngestIssue {
    /// File name, or `line N` for JSONL input.
    pub location: String,
    pub reason: String,
}

#[derive(Debug, Clone)]
pub struct EssayIngest {
    pub documents: Vec<Document>,
    pub issues: Vec<IngestIssue>,
}

/// One StandardEssay document per `.txt` file, id = file stem. Unreadable
/// files are recorded and skipped.
pub fn ingest_essays(dir: impl AsRef<Path>, normalizer: &Normalizer) -> Result<EssayIngest, StoreError> {
    let dir = dir.as_ref();
    let entries = fs::read_dir(dir).map_err(|e| StoreError::io(dir, e))?;
    let mut paths: Vec<PathBuf> =
        entries.filter_map(Result::ok).map(|e| e.path()).filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "txt")).collect();
    if paths.is_empty() {
        return Err(StoreError::EmptyDirectory(dir.to_path_buf()));
    }
    paths.sort();

    let mut documents = Vec::new();
    let mut issues = Vec::new();
    for path in paths {
        let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        let text = match fs::read(&path) {
            Ok(bytes) => match String::from_utf8(bytes) {
                Ok(t) => t,
                Err(_) => {
                    issues.push(IngestIssue { location: name, reason: "not valid UTF-8".into() });
                    continue;
                }
            },
            Err(e) => {
                issues.push(IngestIssue { location: name, reason: e.to_string() });
                continue;
            }
        };
        let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        let tokens = normalizer.normalize(&text);
        documents.push(Document::essay(stem, text, tokens));
    }
    Ok(EssayIngest { documents, issues })
}

/// Wire format of one tweet line.
#[derive(Debug, Clone, Deserialize)]
pub struct TweetRecord {
    pub id: String,
    pub user: String,
    pub text: String,
    #[serde(default)]
    pub created_at: Option<String>,
}

#[derive(Debug, Clone)]
pub struct TweetIngest {
    pub documents: Vec<Document>,
    pub users: Vec<UserRecord>,
    /// Skipped lines. Reasons never echo field values.
    pub issues: Vec<IngestIssue>,
}

impl TweetIngest {
    pub fn malformed(&self) -> usize {
        self.issues.len()
    }
}

fn describe_json_error(e: &serde_json::Error) -> String {
    use serde_json::error::Category;
    match e.classify() {
        Category::Data => {
            let msg = e.to_string();
            match msg.find(" at line") {
                Some(cut) if msg.starts_with("missing field") => msg[..cut].to_string(),
                _ => "mistyped field".to_string(),
            }
        }
        Category::Syntax | Category::Eof => "invalid JSON".to_string(),
        Category::Io => "read error".to_string(),
    }
}

/// Replace every `@handle` in `text` with `@<pseudonym>`.
fn redact_mentions(text: &str, key: &PseudonymKey) -> String {
    let mut out = String::with_capacity(text.len());
    let mut chars = text.char_indices().peekable();
    let mut prev_wordish = false;
    while let Some((_, c)) = chars.next() {
        if c == '@' && !prev_wordish {
            let mut handle = String::new();
            while let Some(&(_, n)) = chars.peek() {
                if !(n.is_alphanumeric() || n == '_') {
                    break;
                }
                handle.push(n);
                chars.next();
            }
            out.push('@');
            if !handle.is_empty() {
                out.push_str(&pseudonymize(&handle.to_lowercase(), key).expect("non-empty handle"));
            }
            prev_wordish = false;
            continue;
        }
        out.push(c);
        prev_wordish = c.is_alphanumeric() || c == '_' || c == '\'' || c == '\u{2019}';
    }
    out
}

struct ParsedLine {
    doc_id: String,
    author: String,
    raw_text: String,
    tokens: Vec<Token>,
    hashtags: BTreeSet<String>,
    collected_at: Option<DateTime<Utc>>,
}

fn parse_line(line: &str, normalizer: &Normalizer, key: &PseudonymKey) -> Result<ParsedLine, String> {
    let rec: TweetRecord = serde_json::from_str(line).map_err(|e| describe_json_error(&e))?;
    if rec.id.trim().is_empty() {
        return Err("empty id".into());
    }
    let handle = rec.user.trim().trim_start_matches('@').to_lowercase();
    if handle.is_empty() {
        return Err("empty user".into());
    }
    let collected_at = match rec.created_at.as_deref() {
        None => None,
        Some(s) => Some(DateTime::parse_from_rfc3339(s).map_err(|_| "created_at is not RFC 3339".to_string())?.with_timezone(&Utc)),
    };
    Ok(ParsedLine {
        doc_id: rec.id,
        author: pseudonymize(&handle, key).map_err(|e| e.to_string())?,
        raw_text: redact_mentions(&rec.text, key),
        tokens: normalizer.normalize(&rec.text),
        hashtags: extract_hashtags(&rec.text),
        collected_at,
    })
}

/// Read a tweet JSONL replay file. Authors and in-text mentions are replaced by
/// keyed pseudonyms before anything is kept; malformed or duplicate lines are
/// skipped and reported.
pub fn ingest_tweets(path: impl AsRef<Path>, normalizer: &Normalizer, key: &PseudonymKey) -> Result<TweetIngest, StoreError> {
    let path = path.as_ref();
    let content = fs::read_to_string(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::InvalidData => StoreError::FileUnreadable { path: path.to_path_buf(), reason: "not valid UTF-8".into() },
        _ => StoreError::io(path, e),
    })?;
    let lines: Vec<(usize, &str)> = content.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty()).collect();
    let parsed: Vec<(usize, Result<ParsedLine, String>)> = lines.par_iter().map(|(n, l)| (*n, parse_line(l, normalizer, key))).collect();

    let mut documents = Vec::new();
    let mut issues = Vec::new();
    let mut seen = BTreeSet::new();
    for (line_no, result) in parsed {
        match result {
            Ok(p) if !seen.insert(p.doc_id.clone()) => {
                issues.push(IngestIssue { location: format!("line {line_no}"), reason: "duplicate id".into() });
            }
            Ok(p) => documents.push(Document {
                doc_id: p.doc_id,
                source: crate::document::SourceKind::Tweet,
                author: p.author,
                raw_text: p.raw_text,
                tokens: p.tokens,
                hashtags: p.hashtags,
                collected_at: p.collected_at,
            }),
            Err(reason) => issues.push(IngestIssue { location: format!("line {line_no}"), reason }),
        }
    }
    if documents.is_empty() && !issues.is_empty() {
        return Err(StoreError::AllLinesMalformed(path.to_path_buf()));
    }
    let users = users_of(&documents);
    Ok(TweetIngest { documents, users, issues })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::document::{SourceKind, STANDARD_AUTHOR};
    use std::io::Write;

    fn key() -> PseudonymKey {
        PseudonymKey::new(b"0123456789abcdef-test".to_vec()).unwrap()
    }

    fn jsonl(lines: &[&str]) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        for l in lines {
            writeln!(f, "{l}").unwrap();
        }
        f
    }

    #[test]
    fn essays_from_directory() {
        let dir = tempfile::tempdir().unwrap();
        for (name, text) in [("a.txt", "Sleep and mood"), ("b.txt", "Therapy helps"), ("c.txt", "Long life")] {
            fs::write(dir.path().join(name), text).unwrap();
        }
        fs::write(dir.path().join("notes.md"), "ignored").unwrap();
        let got = ingest_essays(dir.path(), &Normalizer::default()).unwrap();
        assert_eq!(got.documents.len(), 3);
        assert!(got.issues.is_empty());
        let a = &got.documents[0];
        assert_eq!(a.doc_id, "a");
        assert_eq!(a.source, SourceKind::StandardEssay);
        assert_eq!(a.author, STANDARD_AUTHOR);
        assert_eq!(a.terms().collect::<Vec<_>>(), ["sleep", "mood"]);
    }

    #[test]
    fn unreadable_essay_recorded() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("a.txt"), "fine").unwrap();
        fs::write(dir.path().join("b.txt"), [0xff, 0xfe, 0x00, 0x41]).unwrap();
        fs::write(dir.path().join("c.txt"), "also fine").unwrap();
        let got = ingest_essays(dir.path(), &Normalizer::default()).unwrap();
        assert_eq!(got.documents.len(), 2);
        assert_eq!(got.issues.len(), 1);
        assert_eq!(got.issues[0].location, "b.txt");
    }

    #[test]
    fn essay_dir_errors() {
        let dir = tempfile::tempdir().unwrap();
        assert!(matches!(ingest_essays(dir.path(), &Normalizer::default()), Err(StoreError::EmptyDirectory(_))));
        assert!(matches!(ingest_essays(dir.path().join("nope"), &Normalizer::default()), Err(StoreError::FileMissing(_))));
    }

    #[test]
    fn two_valid_tweets() {
        let f = jsonl(&[
            r##"{"id": "1", "user": "alice", "text": "cant sleep #depressed", "created_at": "2018-03-01T10:00:00Z"}"##,
            r##"{"id": "2", "user": "bob", "text": "feeling low @alice"}"##,
        ]);
        let got = ingest_tweets(f.path(), &Normalizer::default(), &key()).unwrap();
        assert_eq!(got.documents.len(), 2);
        assert_eq!(got.users.len(), 2);
        assert_eq!(got.malformed(), 0);
        let d1 = &got.documents[0];
        assert!(d1.hashtags.contains("depressed"));
        assert!(d1.collected_at.is_some());
        assert!(d1.author.starts_with("u:"));
        let d2 = &got.documents[1];
        assert!(!d2.raw_text.contains("alice"));
        assert!(d2.raw_text.contains(&format!("@{}", d1.author)));
    }

    #[test]
    fn malformed_lines_skipped_and_counted() {
        let f = jsonl(&[
            r#"{"id": "1", "user": "alice", "text": "ok"}"#,
            r#"{"id": "2", "user": "alice"}"#,
            r#"{not json"#,
            r#"{"id": "3", "user": "alice", "text": "x", "created_at": "yesterday"}"#,
            r#"{"id": "1", "user": "bob", "text": "dup"}"#,
        ]);
        let got = ingest_tweets(f.path(), &Normalizer::default(), &key()).unwrap();
        assert_eq!(got.documents.len(), 1);
        let reasons: Vec<_> = got.issues.iter().map(|i| (i.location.as_str(), i.reason.as_str())).collect();
        assert_eq!(
            reasons,
            [
                ("line 2", "missing field `text`"),
                ("line 3", "invalid JSON"),
                ("line 4", "created_at is not RFC 3339"),
                ("line 5", "duplicate id")
            ]
        );
    }

    #[test]
    fn shared_handle_single_user() {
        let f = jsonl(&[r#"{"id": "1", "user": "alice", "text": "one"}"#, r#"{"id": "2", "user": "Alice", "text": "two"}"#]);
        let got = ingest_tweets(f.path(), &Normalizer::default(), &key()).unwrap();
        assert_eq!(got.users.len(), 1);
        assert_eq!(got.users[0].doc_ids, ["1", "2"]);
    }

    #[test]
    fn tweet_file_errors() {
        let f = jsonl(&["garbage", "{}"]);
        assert!(matches!(ingest_tweets(f.path(), &Normalizer::default(), &key()), Err(StoreError::AllLinesMalformed(_))));
        assert!(matches!(ingest_tweets("/no/such/file.jsonl", &Normalizer::default(), &key()), Err(StoreError::FileMissing(_))));
    }

    #[test]
    fn mention_redaction() {
        let k = key();
        let out = redact_mentions("hi @Sad_Panda and mail@example.com, @", &k);
        assert!(!out.to_lowercase().contains("sad_panda"));
        assert!(out.contains("mail@example.com"));
        assert!(out.ends_with(", @"));
    }
}

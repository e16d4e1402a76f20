use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use super::{ScreeningReport, TermTrajectory, ValidateError, ValidationReport};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Svg,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "svg" => Ok(ReportFormat::Svg),
            other => Err(format!("unknown report format '{other}' (expected csv or svg)")),
        }
    }
}

impl ReportFormat {
    /// Guess the format from a file extension; anything but `.svg` is CSV.
    pub fn for_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("svg") => ReportFormat::Svg,
            _ => ReportFormat::Csv,
        }
    }
}

fn num<S: Scalar>(x: S) -> String {
    format!("{:.6}", x.to_f64_lossy())
}

fn opt<S: Scalar>(x: Option<S>) -> String {
    x.map(num).unwrap_or_default()
}

fn csv_bytes<F>(header: &[&str], rows: F) -> Vec<u8>
where
    F: FnOnce(&mut csv::Writer<Vec<u8>>) -> csv::Result<()>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("writing to memory");
    rows(&mut w).expect("writing to memory");
    w.into_inner().expect("flushing to memory")
}

pub fn render_csv<S: Scalar>(reports: &[ValidationReport<S>]) -> Vec<u8> {
    let header = ["sample_size", "weighting", "alignment", "pearson_r", "spearman_rho", "overlap_at_k", "jaccard_top_k", "notes"];
    csv_bytes(&header, |w| {
        for r in reports {
            w.write_record([
                r.sample_size.to_string(),
                r.weighting_mode.to_string(),
                r.alignment_mode.to_string(),
                opt(r.pearson_r),
                opt(r.spearman_rho),
                num(r.overlap_at_k),
                num(r.jaccard_top_k),
                r.notes.join("; "),
            ])?;
        }
        Ok(())
    })
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

const W: f64 = 760.0;
const BAR_TOP: f64 = 60.0;
const BAR_H: f64 = 220.0;
const LINE_TOP: f64 = 380.0;
const LINE_H: f64 = 160.0;
const LEFT: f64 = 60.0;
const RIGHT: f64 = 30.0;

/// Keyword bars for the largest sample, then correlation against sample size.
pub fn render_svg<S: Scalar>(reports: &[ValidationReport<S>]) -> Vec<u8> {
    let mut s = String::new();
    let height = LINE_TOP + LINE_H + 70.0;
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{height}" viewBox="0 0 {W} {height}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    if let Some(last) = reports.iter().max_by_key(|r| r.sample_size) {
        let _ = writeln!(s, "<desc>{}</desc>", escape(&last.notes.join("; ")));
        keyword_bars(&mut s, last);
    }
    correlation_lines(&mut s, reports);
    s.push_str("</svg>\n");
    s.into_bytes()
}

fn keyword_bars<S: Scalar>(s: &mut String, r: &ValidationReport<S>) {
    let _ = writeln!(
        s,
        r#"<text x="{LEFT}" y="30" font-size="14">Top {} standard keywords: standard vs social ({}, n = {})</text>"#,
        r.k, r.weighting_mode, r.sample_size
    );
    let _ = writeln!(
        s,
        r##"<rect x="{}" y="38" width="10" height="10" fill="#4477aa"/><text x="{}" y="47">standard</text>"##,
        W - 200.0,
        W - 186.0
    );
    let _ = writeln!(
        s,
        r##"<rect x="{}" y="38" width="10" height="10" fill="#ee7733"/><text x="{}" y="47">social</text>"##,
        W - 120.0,
        W - 106.0
    );
    let max = r.keywords.iter().flat_map(|k| [k.standard.to_f64_lossy(), k.social.to_f64_lossy()]).fold(0.0f64, f64::max);
    let base = BAR_TOP + BAR_H;
    let _ = writeln!(s, r#"<line x1="{LEFT}" y1="{base}" x2="{}" y2="{base}" stroke="black"/>"#, W - RIGHT);
    if r.keywords.is_empty() || max <= 0.0 {
        return;
    }
    let slot = (W - LEFT - RIGHT) / r.keywords.len() as f64;
    let bar = slot * 0.38;
    for (i, kw) in r.keywords.iter().enumerate() {
        let x = LEFT + slot * i as f64 + slot * 0.1;
        for (j, (w, colour)) in [(kw.standard, "#4477aa"), (kw.social, "#ee7733")].into_iter().enumerate() {
            let h = w.to_f64_lossy() / max * BAR_H;
            let _ = writeln!(
                s,
                r#"<rect x="{:.2}" y="{:.2}" width="{bar:.2}" height="{h:.2}" fill="{colour}"/>"#,
                x + bar * j as f64,
                base - h
            );
        }
        let lx = x + bar;
        let _ = writeln!(
            s,
            r#"<text x="{lx:.2}" y="{:.2}" text-anchor="end" transform="rotate(-45 {lx:.2} {:.2})">{}</text>"#,
            base + 14.0,
            base + 14.0,
            escape(&kw.term)
        );
    }
}

/// Name, colour, extra stroke attributes and accessor of one plotted line.
type Series<S> = (&'static str, &'static str, &'static str, fn(&ValidationReport<S>) -> Option<S>);

fn correlation_lines<S: Scalar>(s: &mut String, reports: &[ValidationReport<S>]) {
    let _ = writeln!(
        s,
        r#"<text x="{LEFT}" y="{}" font-size="14">Correlation with the standard corpus by sample size</text>"#,
        LINE_TOP - 25.0
    );
    let (y0, y1) = (LINE_TOP, LINE_TOP + LINE_H);
    // y axis spans r in [-1, 1]
    let y_of = |r: f64| y1 - (r + 1.0) / 2.0 * LINE_H;
    let _ = writeln!(s, r#"<line x1="{LEFT}" y1="{y0}" x2="{LEFT}" y2="{y1}" stroke="black"/>"#);
    let _ = writeln!(s, r#"<line x1="{LEFT}" y1="{y1}" x2="{}" y2="{y1}" stroke="black"/>"#, W - RIGHT);
    for tick in [-1.0, 0.0, 1.0] {
        let _ = writeln!(s, r#"<text x="{}" y="{:.2}" text-anchor="end">{tick:.1}</text>"#, LEFT - 6.0, y_of(tick) + 4.0);
    }
    if reports.is_empty() {
        return;
    }
    let slot = (W - LEFT - RIGHT) / reports.len() as f64;
    let x_of = |i: usize| LEFT + slot * (i as f64 + 0.5);
    for (i, r) in reports.iter().enumerate() {
        let _ = writeln!(s, r#"<text x="{:.2}" y="{}" text-anchor="middle">{}</text>"#, x_of(i), y1 + 16.0, r.sample_size);
    }
    let series: [Series<S>; 2] =
        [("pearson", "#4477aa", "", |r| r.pearson_r), ("spearman", "#ee7733", r#" stroke-dasharray="5 3""#, |r| r.spearman_rho)];
    for (n, (name, colour, dash, get)) in series.iter().enumerate() {
        let pts: Vec<(f64, f64)> =
            reports.iter().enumerate().filter_map(|(i, r)| get(r).map(|v| (x_of(i), y_of(v.to_f64_lossy())))).collect();
        if pts.len() > 1 {
            let path: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
            let _ = writeln!(s, r#"<polyline points="{}" fill="none" stroke="{colour}"{dash}/>"#, path.join(" "));
        }
        for (x, y) in &pts {
            let _ = writeln!(s, r#"<circle cx="{x:.2}" cy="{y:.2}" r="3" fill="{colour}"/>"#);
        }
        let ly = y1 + 40.0;
        let lx = LEFT + 110.0 * n as f64;
        let _ = writeln!(
            s,
            r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{colour}"{dash}/><text x="{}" y="{}">{name}</text>"#,
            lx + 20.0,
            lx + 26.0,
            ly + 4.0
        );
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), ValidateError> {
    fs::write(path, bytes).map_err(|source| ValidateError::UnwritablePath { path: path.to_path_buf(), source })
}

pub fn emit_report<S: Scalar>(reports: &[ValidationReport<S>], path: impl AsRef<Path>, format: ReportFormat) -> Result<(), ValidateError> {
    if reports.is_empty() {
        return Err(ValidateError::NoReports);
    }
    let bytes = match format {
        ReportFormat::Csv => render_csv(reports),
        ReportFormat::Svg => render_svg(reports),
    };
    write_file(path.as_ref(), &bytes)
}

pub fn emit_screening_csv<S: Scalar>(reports: &[ScreeningReport<S>], path: impl AsRef<Path>) -> Result<(), ValidateError> {
    let header =
        ["pseudonym", "documents", "user_vector_size", "k", "overlap_at_k", "cosine", "pearson_r", "corpus_mode", "oov_terms", "notes"];
    let bytes = csv_bytes(&header, |w| {
        for r in reports {
            w.write_record([
                r.pseudonym.clone(),
                r.user_doc_count.to_string(),
                r.user_vector_size.to_string(),
                r.k.to_string(),
                num(r.overlap_at_k),
                num(r.cosine_similarity),
                opt(r.pearson_r),
                r.corpus_mode_used.to_string(),
                r.oov_terms.to_string(),
                r.notes.join("; "),
            ])?;
        }
        Ok(())
    });
    write_file(path.as_ref(), &bytes)
}

/// Long format: one row per term and sample size; absent terms have an empty rank.
pub fn emit_trajectories_csv<S: Scalar>(trajectories: &[TermTrajectory<S>], path: impl AsRef<Path>) -> Result<(), ValidateError> {
    let bytes = csv_bytes(&["term", "sample_size", "rank", "weight"], |w| {
        for t in trajectories {
            for p in &t.points {
                w.write_record([
                    t.term.clone(),
                    p.sample_size.to_string(),
                    p.rank.map(|r| r.to_string()).unwrap_or_default(),
                    num(p.weight),
                ])?;
            }
        }
        Ok(())
    });
    write_file(path.as_ref(), &bytes)
}

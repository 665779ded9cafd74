//! The `qrealize` command line. [`run`] parses arguments, writes to the given
//! streams and returns the process exit code.
//!
//! Exit codes: 0 realizable / success, 1 usage or validation error,
//! 2 not realizable (or a rejected certificate, or a failed experiment claim),
//! 3 abelianization test failed.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::experiments::{self, Budgets, ExperimentError, ExperimentReport};
use crate::group::{Element, FiniteGroup, GroupError, GroupSpec, Subgroup};
use crate::multiset::{format_word, parse_word, split_top_level, Multiset, NotationError};
use crate::realizability::{
    decide_cycle_tiling, decide_matching, decide_subgroup_reduction, phi_from_listing, product_one_ordering,
    verify_certificate, CertificateError, Cycle, ObstructionCheck, Realization, RealizeError, ReductionOptions, Status,
    Verdict,
};
use crate::words::{check_simple, enumerate_simple_words};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NOT_REALIZABLE: i32 = 2;
pub const EXIT_OBSTRUCTED: i32 = 3;

/// Subgroup lattices are only printed up to this order.
const LATTICE_MAX_ORDER: usize = 24;

#[derive(Debug, Parser)]
#[command(
    name = "qrealize",
    version,
    about = "Quotient-realizability of multisets in finite groups"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Show more detail (every claim, search statistics).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DeciderChoice {
    Matching,
    Tiling,
    Reduction,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Describe a group: elements, abelianization, subgroups.
    Group { spec: String },
    /// Decide whether a multiset is quotient-realizable.
    Check {
        spec: String,
        /// Multiset literal, e.g. "(12)*2,(23)*4".
        #[arg(short = 'A', long = "multiset")]
        multiset: String,
        #[arg(long, value_enum, default_value_t = DeciderChoice::Matching)]
        decider: DeciderChoice,
        /// Generators of the subgroup used by the reduction decider, e.g. "(23)".
        #[arg(long)]
        subgroup: Option<String>,
        /// Also run the other deciders and fail if any verdict differs.
        #[arg(long)]
        cross_check: bool,
        /// Write the certificate here when the multiset is realizable.
        #[arg(long)]
        cert_out: Option<PathBuf>,
    },
    /// List simple product-one words (one per rotation class) within a budget.
    Words {
        spec: String,
        /// Multiset literal bounding the letters of each word.
        #[arg(long)]
        budget: String,
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Classify every multiset of size |G|; the table goes to a file.
    Classify {
        spec: String,
        /// Table destination (tab-separated, or JSON lines with --format json).
        #[arg(long, default_value = "classification.tsv")]
        out: PathBuf,
        #[arg(long, env = "QREALIZE_MAX_MULTISETS")]
        max_multisets: Option<u64>,
    },
    /// Run the reproduction experiments; fails if any claim fails.
    VerifyPaper {
        /// Run a single experiment (see --list).
        #[arg(long)]
        experiment: Option<String>,
        /// Also run the S3 x K family check for these K (3 must not divide |K|).
        #[arg(long = "family")]
        family: Vec<String>,
        #[arg(long)]
        list: bool,
        #[arg(long, env = "QREALIZE_MAX_MULTISETS")]
        max_multisets: Option<u64>,
        #[arg(long, env = "QREALIZE_FAMILY_MAX_ORDER")]
        family_max_order: Option<usize>,
        #[arg(long, env = "QREALIZE_HALL_MAX_ORDER")]
        hall_max_order: Option<usize>,
    },
    /// Check a certificate file against a multiset.
    VerifyCert {
        spec: String,
        #[arg(short = 'A', long = "multiset")]
        multiset: String,
        #[arg(long)]
        cert: PathBuf,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("group: {0}")]
    Group(#[from] GroupError),
    #[error("{what}: {source}")]
    Notation {
        what: &'static str,
        #[source]
        source: NotationError,
    },
    #[error("{0}")]
    Realize(#[from] RealizeError),
    #[error("{0}")]
    Experiment(#[from] ExperimentError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {reason}")]
    CertFile { path: PathBuf, line: usize, reason: String },
    #[error("{0}")]
    Usage(String),
    #[error("deciders disagree: {0}")]
    Disagreement(String),
}

fn notation(what: &'static str) -> impl FnOnce(NotationError) -> CliError {
    move |source| CliError::Notation { what, source }
}

fn io_error(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let to_out = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let stream: &mut dyn Write = if to_out { out } else { err };
            let _ = write!(stream, "{}", e.render());
            return if to_out { EXIT_OK } else { EXIT_ERROR };
        }
    };
    let mut text = String::new();
    let result = dispatch(&cli, &mut text);
    let _ = out.write_all(text.as_bytes());
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn dispatch(cli: &Cli, out: &mut String) -> Result<i32, CliError> {
    match &cli.command {
        Command::Group { spec } => group_cmd(cli, spec, out),
        Command::Check {
            spec,
            multiset,
            decider,
            subgroup,
            cross_check,
            cert_out,
        } => check_cmd(
            cli,
            spec,
            multiset,
            *decider,
            subgroup.as_deref(),
            *cross_check,
            cert_out.as_deref(),
            out,
        ),
        Command::Words { spec, budget, max_len } => words_cmd(cli, spec, budget, *max_len, out),
        Command::Classify {
            spec,
            out: path,
            max_multisets,
        } => {
            let mut budgets = Budgets::default();
            if let Some(m) = max_multisets {
                budgets.classify_max_multisets = u128::from(*m);
            }
            classify_cmd(cli, spec, path, &budgets, out)
        }
        Command::VerifyPaper {
            experiment,
            family,
            list,
            max_multisets,
            family_max_order,
            hall_max_order,
        } => {
            if *list {
                for id in experiments::EXPERIMENT_IDS {
                    writeln!(out, "{id}").unwrap();
                }
                return Ok(EXIT_OK);
            }
            let mut budgets = Budgets::default();
            if let Some(m) = max_multisets {
                budgets.classify_max_multisets = u128::from(*m);
            }
            if let Some(m) = family_max_order {
                budgets.family_max_order = *m;
            }
            if let Some(m) = hall_max_order {
                budgets.hall_max_order = *m;
            }
            verify_paper_cmd(cli, experiment.as_deref(), family, &budgets, out)
        }
        Command::VerifyCert { spec, multiset, cert } => verify_cert_cmd(cli, spec, multiset, cert, out),
    }
}

fn build_group(spec: &str) -> Result<(GroupSpec, FiniteGroup), CliError> {
    let parsed: GroupSpec = spec.parse()?;
    let g = parsed.build()?;
    Ok((parsed, g))
}

fn json_line<T: Serialize>(out: &mut String, value: &T) {
    out.push_str(&serde_json::to_string(value).expect("serializable"));
    out.push('\n');
}

#[derive(Serialize)]
struct SubgroupRecord {
    order: usize,
    normal: bool,
    members: Vec<String>,
}

#[derive(Serialize)]
struct GroupRecord {
    spec: String,
    order: usize,
    abelian: bool,
    elements: Vec<String>,
    abelianization_order: usize,
    commutator_subgroup: Vec<String>,
    subgroups: Option<Vec<SubgroupRecord>>,
}

fn group_cmd(cli: &Cli, spec: &str, out: &mut String) -> Result<i32, CliError> {
    let (parsed, g) = build_group(spec)?;
    let ab = g.abelianization();
    let names = |members: &[Element]| members.iter().map(|&x| g.name(x).to_string()).collect::<Vec<_>>();
    let subgroups = (g.order() <= LATTICE_MAX_ORDER).then(|| {
        crate::group::all_subgroups(&g)
            .into_iter()
            .map(|h| SubgroupRecord {
                order: h.order(),
                normal: h.is_normal(&g),
                members: names(h.members()),
            })
            .collect::<Vec<_>>()
    });
    let record = GroupRecord {
        spec: parsed.to_string(),
        order: g.order(),
        abelian: g.is_abelian(),
        elements: g.names().to_vec(),
        abelianization_order: ab.quotient.order(),
        commutator_subgroup: names(ab.commutator_subgroup.members()),
        subgroups,
    };
    if cli.format == Format::Json {
        json_line(out, &record);
        return Ok(EXIT_OK);
    }
    writeln!(out, "group: {}", record.spec).unwrap();
    writeln!(out, "order: {}", record.order).unwrap();
    writeln!(out, "abelian: {}", if record.abelian { "yes" } else { "no" }).unwrap();
    writeln!(out, "elements: {}", record.elements.join(" ")).unwrap();
    writeln!(out, "abelianization order: {}", record.abelianization_order).unwrap();
    writeln!(
        out,
        "commutator subgroup: {{{}}}",
        record.commutator_subgroup.join(", ")
    )
    .unwrap();
    match &record.subgroups {
        Some(list) => {
            writeln!(out, "subgroups: {}", list.len()).unwrap();
            for h in list {
                let normal = if h.normal { "  normal" } else { "" };
                writeln!(out, "  order {:>3}  {{{}}}{normal}", h.order, h.members.join(", ")).unwrap();
            }
        }
        None => writeln!(out, "subgroups: not listed for order > {LATTICE_MAX_ORDER}").unwrap(),
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct CycleRecord {
    translate: String,
    word: String,
}

#[derive(Serialize)]
struct ObstructionRecord {
    pass: bool,
    /// Image of the product in the abelianization, when nontrivial.
    image: Option<String>,
    abelianization_order: usize,
}

#[derive(Serialize)]
struct CheckRecord {
    group: String,
    multiset: String,
    decider: &'static str,
    status: &'static str,
    obstruction: ObstructionRecord,
    product_one_ordering: Option<String>,
    search_nodes: u64,
    elapsed_us: u128,
    exhausted: bool,
    certificate: Option<Vec<CycleRecord>>,
    cross_check: Option<Vec<(&'static str, &'static str)>>,
}

fn decider_name(d: DeciderChoice) -> &'static str {
    match d {
        DeciderChoice::Matching => "matching",
        DeciderChoice::Tiling => "tiling",
        DeciderChoice::Reduction => "reduction",
    }
}

fn parse_multiset(g: &FiniteGroup, text: &str) -> Result<Multiset, CliError> {
    Multiset::parse(g, text).map_err(notation("multiset"))
}

fn parse_subgroup(g: &FiniteGroup, gens: &str) -> Result<Subgroup, CliError> {
    let gens = split_top_level(gens)
        .map_err(notation("subgroup generators"))?
        .into_iter()
        .map(|name| {
            g.find(name)
                .ok_or_else(|| notation("subgroup generators")(NotationError::UnknownElement(name.to_string())))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Subgroup::generated(g, &gens))
}

#[allow(clippy::too_many_arguments)]
fn check_cmd(
    cli: &Cli,
    spec: &str,
    multiset: &str,
    decider: DeciderChoice,
    subgroup: Option<&str>,
    cross_check: bool,
    cert_out: Option<&Path>,
    out: &mut String,
) -> Result<i32, CliError> {
    let (parsed, g) = build_group(spec)?;
    let a = parse_multiset(&g, multiset)?;
    let h = match (decider, subgroup) {
        (DeciderChoice::Reduction, Some(gens)) => Some(parse_subgroup(&g, gens)?),
        (DeciderChoice::Reduction, None) => {
            return Err(CliError::Usage("--decider reduction requires --subgroup GENS".into()))
        }
        (_, Some(_)) => return Err(CliError::Usage("--subgroup only applies to --decider reduction".into())),
        (_, None) => None,
    };
    let run = |d: DeciderChoice| -> Result<Verdict, RealizeError> {
        match d {
            DeciderChoice::Matching => decide_matching(&g, &a),
            DeciderChoice::Tiling => decide_cycle_tiling(&g, &a),
            DeciderChoice::Reduction => {
                decide_subgroup_reduction(&g, h.as_ref().expect("parsed above"), &a, ReductionOptions::default())
            }
        }
    };
    let verdict = run(decider)?;

    let cross = if cross_check {
        let mut results = vec![(decider_name(decider), verdict.status.as_str())];
        for other in [DeciderChoice::Matching, DeciderChoice::Tiling] {
            if other != decider {
                results.push((decider_name(other), run(other)?.status.as_str()));
            }
        }
        if results.iter().any(|(_, s)| *s != verdict.status.as_str()) {
            let listing: Vec<String> = results.iter().map(|(d, s)| format!("{d}={s}")).collect();
            return Err(CliError::Disagreement(listing.join(", ")));
        }
        Some(results)
    } else {
        None
    };

    let ab = g.abelianization();
    let obstruction = ObstructionRecord {
        pass: verdict.obstruction.passed(),
        image: match verdict.obstruction {
            ObstructionCheck::Pass => None,
            ObstructionCheck::Fail { image } => Some(ab.quotient.name(image).to_string()),
        },
        abelianization_order: ab.quotient.order(),
    };
    let ordering = (verdict.status == Status::NotRealizable)
        .then(|| product_one_ordering(&g, &a).map(|o| format_word(&g, &o)))
        .flatten();
    let certificate = verdict.certificate.as_ref().map(|cert| {
        cert.cycles
            .iter()
            .map(|c| CycleRecord {
                translate: g.name(c.translate).to_string(),
                word: format_word(&g, c.word.letters()),
            })
            .collect::<Vec<_>>()
    });

    if let (Some(path), Some(cycles)) = (cert_out, &certificate) {
        let mut file = format!("{parsed}\n{}\n", a.display(&g));
        for c in cycles {
            writeln!(file, "{}: {}", c.translate, c.word).unwrap();
        }
        fs::write(path, file).map_err(io_error(path))?;
    }

    let record = CheckRecord {
        group: parsed.to_string(),
        multiset: a.display(&g),
        decider: decider_name(decider),
        status: verdict.status.as_str(),
        obstruction,
        product_one_ordering: ordering,
        search_nodes: verdict.stats.nodes,
        elapsed_us: verdict.stats.elapsed.as_micros(),
        exhausted: verdict.stats.exhausted,
        certificate,
        cross_check: cross,
    };
    if cli.format == Format::Json {
        json_line(out, &record);
    } else {
        render_check(cli, &record, out);
    }
    Ok(match verdict.status {
        Status::Realizable => EXIT_OK,
        Status::NotRealizable => EXIT_NOT_REALIZABLE,
        Status::ObstructionFailed => EXIT_OBSTRUCTED,
    })
}

fn render_check(cli: &Cli, r: &CheckRecord, out: &mut String) {
    writeln!(out, "group: {}", r.group).unwrap();
    writeln!(out, "multiset: {}", r.multiset).unwrap();
    writeln!(out, "verdict: {}", r.status.replace('_', " ")).unwrap();
    match &r.obstruction.image {
        None => writeln!(out, "abelianization test: pass").unwrap(),
        Some(image) => writeln!(
            out,
            "abelianization test: fail (product maps to {image} in a quotient of order {})",
            r.obstruction.abelianization_order
        )
        .unwrap(),
    }
    if let Some(order) = &r.product_one_ordering {
        writeln!(out, "product-one ordering: {order}").unwrap();
    }
    writeln!(out, "decider: {}", r.decider).unwrap();
    if cli.verbose > 0 || r.status != "obstruction_failed" {
        writeln!(
            out,
            "search: {} nodes, {} us{}",
            r.search_nodes,
            r.elapsed_us,
            if r.exhausted { ", exhausted" } else { "" }
        )
        .unwrap();
    }
    if let Some(cross) = &r.cross_check {
        let listing: Vec<String> = cross.iter().map(|(d, s)| format!("{d}={s}")).collect();
        writeln!(out, "cross-check: agree ({})", listing.join(", ")).unwrap();
    }
    if let Some(cycles) = &r.certificate {
        writeln!(out, "certificate: {} cycle(s)", cycles.len()).unwrap();
        for c in cycles {
            writeln!(out, "  {}: {}", c.translate, c.word).unwrap();
        }
    }
}

#[derive(Serialize)]
struct WordRecord {
    word: String,
    length: usize,
    rotation_class_size: usize,
}

fn words_cmd(cli: &Cli, spec: &str, budget: &str, max_len: Option<usize>, out: &mut String) -> Result<i32, CliError> {
    let (_, g) = build_group(spec)?;
    let budget = Multiset::parse(&g, budget).map_err(notation("budget"))?;
    let words = enumerate_simple_words(&g, &budget, max_len);
    for w in &words {
        let record = WordRecord {
            word: format_word(&g, &w.letters),
            length: w.letters.len(),
            rotation_class_size: w.rotation_class_size,
        };
        if cli.format == Format::Json {
            json_line(out, &record);
        } else {
            writeln!(
                out,
                "{}  length {}  rotations {}",
                record.word, record.length, record.rotation_class_size
            )
            .unwrap();
        }
    }
    if cli.format == Format::Text {
        writeln!(out, "{} rotation class(es)", words.len()).unwrap();
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct RowRecord<'a> {
    multiset: String,
    obstruction_pass: bool,
    matching: &'a str,
    tiling: &'a str,
    certificates_verified: Option<bool>,
}

fn classify_cmd(cli: &Cli, spec: &str, path: &Path, budgets: &Budgets, out: &mut String) -> Result<i32, CliError> {
    let (parsed, g) = build_group(spec)?;
    let table = experiments::classify_multisets(&g, budgets)?;
    let mut file = String::new();
    if cli.format == Format::Text {
        file.push_str("multiset\tobstruction\tmatching\ttiling\tcertificates\n");
    }
    for row in &table.rows {
        let record = RowRecord {
            multiset: row.multiset.display(&g),
            obstruction_pass: row.obstruction_pass,
            matching: row.matching.as_str(),
            tiling: row.tiling.as_str(),
            certificates_verified: row.certificates_verified,
        };
        if cli.format == Format::Json {
            json_line(&mut file, &record);
        } else {
            let certs = match record.certificates_verified {
                Some(true) => "verified",
                Some(false) => "FAILED",
                None => "-",
            };
            let obstruction = if record.obstruction_pass { "pass" } else { "fail" };
            writeln!(
                file,
                "{}\t{obstruction}\t{}\t{}\t{certs}",
                record.multiset, record.matching, record.tiling
            )
            .unwrap();
        }
    }
    fs::write(path, file).map_err(io_error(path))?;

    let s = &table.summary;
    if cli.format == Format::Json {
        #[derive(Serialize)]
        struct Summary<'a> {
            group: String,
            table: String,
            #[serde(flatten)]
            summary: &'a experiments::ClassificationSummary,
        }
        json_line(
            out,
            &Summary {
                group: parsed.to_string(),
                table: path.display().to_string(),
                summary: s,
            },
        );
    } else {
        writeln!(out, "group: {parsed}").unwrap();
        writeln!(out, "table: {}", path.display()).unwrap();
        writeln!(out, "multisets: {}", s.total).unwrap();
        writeln!(out, "realizable: {}", s.realizable).unwrap();
        writeln!(out, "abelianization test passes: {}", s.obstruction_pass).unwrap();
        writeln!(out, "pass the test but not realizable: {}", s.obstruction_insufficient).unwrap();
        writeln!(out, "decider disagreements: {}", s.decider_disagreements).unwrap();
        writeln!(out, "certificate failures: {}", s.certificate_failures).unwrap();
    }
    if s.decider_disagreements > 0 || s.certificate_failures > 0 {
        return Err(CliError::Disagreement(format!(
            "{} disagreement(s), {} certificate failure(s)",
            s.decider_disagreements, s.certificate_failures
        )));
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct ClaimRecord<'a> {
    experiment: &'a str,
    group: &'a str,
    label: &'a str,
    expected: &'a str,
    observed: &'a str,
    pass: bool,
}

fn verify_paper_cmd(
    cli: &Cli,
    only: Option<&str>,
    family: &[String],
    budgets: &Budgets,
    out: &mut String,
) -> Result<i32, CliError> {
    let ids: Vec<&str> = match only {
        Some(id) => vec![id],
        None if !family.is_empty() => Vec::new(),
        None => experiments::EXPERIMENT_IDS.to_vec(),
    };
    let mut reports: Vec<ExperimentReport> = Vec::new();
    for id in ids {
        reports.push(experiments::run_experiment(id, budgets)?);
    }
    for k in family {
        let spec: GroupSpec = k.parse()?;
        reports.push(experiments::verify_family(&spec, budgets)?);
    }
    let mut all_pass = true;
    for report in &reports {
        all_pass &= report.passed();
        if cli.format == Format::Json {
            for c in &report.claims {
                json_line(
                    out,
                    &ClaimRecord {
                        experiment: &report.id,
                        group: &report.group,
                        label: &c.label,
                        expected: &c.expected,
                        observed: &c.observed,
                        pass: c.pass,
                    },
                );
            }
            continue;
        }
        let verdict = if report.passed() { "PASS" } else { "FAIL" };
        writeln!(
            out,
            "[{verdict}] {} ({}): {} claim(s), {} ms",
            report.id,
            report.group,
            report.claims.len(),
            report.elapsed_ms
        )
        .unwrap();
        for c in &report.claims {
            if cli.verbose > 0 || !c.pass {
                let mark = if c.pass { "ok  " } else { "FAIL" };
                writeln!(
                    out,
                    "    {mark} {}: expected {}, observed {}",
                    c.label, c.expected, c.observed
                )
                .unwrap();
            }
        }
    }
    Ok(if all_pass { EXIT_OK } else { EXIT_NOT_REALIZABLE })
}

/// A parsed certificate file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateFile {
    pub group: String,
    pub multiset: String,
    /// `(translate name, word literal)` per cycle.
    pub cycles: Vec<(String, String)>,
}

impl CertificateFile {
    pub fn parse(text: &str, path: &Path) -> Result<Self, CliError> {
        let bad = |line: usize, reason: String| CliError::CertFile {
            path: path.to_path_buf(),
            line,
            reason,
        };
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, group) = lines.next().ok_or_else(|| bad(1, "missing group spec".into()))?;
        let (_, multiset) = lines.next().ok_or_else(|| bad(2, "missing multiset literal".into()))?;
        let mut cycles = Vec::new();
        for (i, line) in lines {
            let line = line.trim();
            let word_start =
                word_literal_start(line).ok_or_else(|| bad(i + 1, format!("no word literal in {line:?}")))?;
            let head = line[..word_start].trim_end();
            let translate = head
                .strip_suffix(':')
                .ok_or_else(|| bad(i + 1, format!("expected TRANSLATE: WORD, got {line:?}")))?
                .trim();
            cycles.push((translate.to_string(), line[word_start..].to_string()));
        }
        Ok(Self {
            group: group.trim().to_string(),
            multiset: multiset.trim().to_string(),
            cycles,
        })
    }
}

/// Byte offset of the `(` that opens the trailing parenthesized literal.
fn word_literal_start(line: &str) -> Option<usize> {
    if !line.ends_with(')') {
        return None;
    }
    let mut depth = 0i32;
    for (i, c) in line.char_indices().rev() {
        match c {
            ')' => depth += 1,
            '(' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

fn verify_cert_cmd(cli: &Cli, spec: &str, multiset: &str, path: &Path, out: &mut String) -> Result<i32, CliError> {
    let (parsed, g) = build_group(spec)?;
    let a = parse_multiset(&g, multiset)?;
    let text = fs::read_to_string(path).map_err(io_error(path))?;
    let file = CertificateFile::parse(&text, path)?;
    let cert_err = |line: usize, reason: String| CliError::CertFile {
        path: path.to_path_buf(),
        line,
        reason,
    };
    let file_spec: GroupSpec = file.group.parse().map_err(|e: GroupError| cert_err(1, e.to_string()))?;
    if file_spec != parsed {
        return Err(cert_err(1, format!("certificate is for {file_spec}, not {parsed}")));
    }
    let file_multiset = Multiset::parse(&g, &file.multiset).map_err(|e| cert_err(2, e.to_string()))?;
    if file_multiset != a {
        return Err(cert_err(
            2,
            format!(
                "certificate is for {}, not {}",
                file_multiset.display(&g),
                a.display(&g)
            ),
        ));
    }
    let mut listing = Vec::new();
    for (i, (translate, word)) in file.cycles.iter().enumerate() {
        let x = g
            .find(translate)
            .ok_or_else(|| cert_err(i + 3, format!("unknown element {translate:?}")))?;
        let letters = parse_word(&g, word).map_err(|e| cert_err(i + 3, e.to_string()))?;
        listing.push((letters, x));
    }

    let outcome = check_listing(&g, &a, &listing);
    let valid = outcome.is_ok();
    if cli.format == Format::Json {
        #[derive(Serialize)]
        struct Outcome {
            valid: bool,
            reason: Option<String>,
            cycles: usize,
        }
        json_line(
            out,
            &Outcome {
                valid,
                reason: outcome.err().map(|e| e.to_string()),
                cycles: listing.len(),
            },
        );
    } else {
        match outcome {
            Ok(()) => writeln!(out, "certificate valid: {} cycle(s) tile {parsed}", listing.len()).unwrap(),
            Err(e) => writeln!(out, "certificate rejected: {e}").unwrap(),
        }
    }
    Ok(if valid { EXIT_OK } else { EXIT_NOT_REALIZABLE })
}

fn check_listing(g: &FiniteGroup, a: &Multiset, listing: &[(Vec<Element>, Element)]) -> Result<(), CertificateError> {
    let phi = phi_from_listing(g, listing)?;
    let cycles = listing
        .iter()
        .enumerate()
        .map(|(index, (letters, x))| {
            check_simple(g, letters)
                .map(|word| Cycle { word, translate: *x })
                .map_err(|_| CertificateError::WordNotSimple { cycle: index })
        })
        .collect::<Result<Vec<_>, _>>()?;
    verify_certificate(g, a, &Realization { phi, cycles })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["qrealize"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn word_literal_start_finds_trailing_group() {
        assert_eq!(word_literal_start("e: ((23),(23))"), Some(3));
        assert_eq!(word_literal_start("((12),1): ((12),1)"), Some(10));
        assert_eq!(word_literal_start("e: (23"), None);
    }

    #[test]
    fn parse_certificate_file() {
        let text = "symmetric:3\n(23)*6\ne: ((23),(23))\n(12): ((23),(23))\n\n(12)(23): ((23),(23))\n";
        let file = CertificateFile::parse(text, Path::new("c.txt")).unwrap();
        assert_eq!(file.group, "symmetric:3");
        assert_eq!(file.cycles.len(), 3);
        assert_eq!(file.cycles[1], ("(12)".to_string(), "((23),(23))".to_string()));
        let err = CertificateFile::parse("symmetric:3\n(23)*6\ne ((23),(23))\n", Path::new("c.txt")).unwrap_err();
        assert!(err.to_string().contains("c.txt:3"), "{err}");
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run_str(&["check", "symmetric:3"]).0, EXIT_ERROR);
        let (code, _, err) = run_str(&["check", "symmetric:3", "-A", "(45)*6"]);
        assert_eq!(code, EXIT_ERROR);
        assert!(err.contains("\"(45)\""), "{err}");
        let (code, _, err) = run_str(&["check", "symmetric:3", "-A", "(23)*5"]);
        assert_eq!(code, EXIT_ERROR);
        assert!(err.contains("5 elements"), "{err}");
        let (code, _, err) = run_str(&["check", "symmetric:3", "-A", "(23)*6", "--decider", "reduction"]);
        assert_eq!(code, EXIT_ERROR);
        assert!(err.contains("--subgroup"), "{err}");
    }

    #[test]
    fn help_goes_to_stdout() {
        let (code, out, _) = run_str(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("verify-cert"));
    }
}

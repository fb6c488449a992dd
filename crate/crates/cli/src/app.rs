use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use saek_core::corpus::{self, CorpusEntry, Format, Prediction, StatDiff};
use saek_core::{Engine, Error as EngineError, IntentLabel, Lexicon};

use crate::record::OutputRecord;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Tsv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum InputFormat {
    #[default]
    Labeled,
    Paired,
}

impl From<InputFormat> for Format {
    fn from(f: InputFormat) -> Self {
        match f {
            InputFormat::Labeled => Format::Labeled,
            InputFormat::Paired => Format::Paired,
        }
    }
}

const TSV_HELP: &str = "TSV columns, in order: text, label, label_name, question_type, \
negativeness, argument, category, evidence, error. Empty cells mean the field does not \
apply. Evidence is a ;-separated list of cue@start-end byte spans.";

/// Intent labels and argument phrases for spoken Korean questions and
/// commands.
#[derive(Debug, Parser)]
#[command(name = "saek", version, after_help = TSV_HELP)]
pub struct Cli {
    /// Lexicon file replacing the built-in tables.
    #[arg(long, global = true, env = "SAEK_LEXICON", value_name = "PATH")]
    pub lexicon: Option<PathBuf>,

    /// Output format for records.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,

    /// Exit with status 1 when any line fails.
    #[arg(long, global = true)]
    pub strict: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Label each input line.
    #[command(after_help = TSV_HELP)]
    Classify(LineInput),
    /// Label each input line and extract its argument phrase.
    #[command(after_help = TSV_HELP)]
    Extract(LineInput),
    /// Dataset statistics and validation.
    #[command(subcommand)]
    Corpus(CorpusCommand),
    /// Run the engine over a labelled dataset and score it.
    Eval(EvalArgs),
}

#[derive(Debug, Args)]
pub struct LineInput {
    /// One utterance per line; standard input when absent or `-`.
    pub input: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CorpusInput {
    /// Dataset file; standard input when absent or `-`.
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = InputFormat::Labeled)]
    pub input_format: InputFormat,
}

#[derive(Debug, Subcommand)]
pub enum CorpusCommand {
    /// Per-label counts and portions.
    Stats {
        #[command(flatten)]
        corpus: CorpusInput,
        /// Compare against the published dataset table; exit 1 on any
        /// difference.
        #[arg(long, conflicts_with = "expect_counts")]
        expect_table2: bool,
        /// Compare against six comma separated counts in label order.
        #[arg(long, value_delimiter = ',', value_name = "N,N,N,N,N,N")]
        expect_counts: Option<Vec<usize>>,
    },
    /// Report malformed rows as JSON lines `{line, error}`.
    Validate {
        #[command(flatten)]
        corpus: CorpusInput,
    },
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub corpus: CorpusInput,
    /// Where to write failure records; standard error when absent.
    #[arg(long, value_name = "PATH")]
    pub failures: Option<PathBuf>,
}

/// Parses `argv` and runs the command. Returns the process exit status.
pub fn run<I, T>(
    argv: I,
    stdin: &mut dyn BufRead,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(&cli, stdin, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "saek: {e:#}");
            if e.is::<UsageError>() {
                EXIT_USAGE
            } else {
                EXIT_FAILURE
            }
        }
    }
}

#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

pub fn load_lexicon(path: Option<&Path>) -> Result<Lexicon> {
    match path {
        None => Ok(Lexicon::builtin()),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| usage(format!("cannot read lexicon {}: {e}", p.display())))?;
            Lexicon::parse(&text).map_err(|e| usage(format!("lexicon {}: {e}", p.display())))
        }
    }
}

/// Streams lines from a file or standard input. Invalid UTF-8 is
/// replaced, never fatal.
pub struct Lines<'a> {
    reader: Box<dyn BufRead + 'a>,
    buf: Vec<u8>,
}

impl<'a> Lines<'a> {
    pub fn open(path: Option<&Path>, stdin: &'a mut dyn BufRead) -> Result<Self> {
        let reader: Box<dyn BufRead + 'a> = match path {
            Some(p) if p != Path::new("-") => {
                let f = File::open(p)
                    .map_err(|e| usage(format!("cannot open {}: {e}", p.display())))?;
                Box::new(BufReader::new(f))
            }
            _ => Box::new(stdin),
        };
        Ok(Lines {
            reader,
            buf: Vec::new(),
        })
    }

    pub fn next_line(&mut self) -> io::Result<Option<String>> {
        self.buf.clear();
        if self.reader.read_until(b'\n', &mut self.buf)? == 0 {
            return Ok(None);
        }
        if self.buf.last() == Some(&b'\n') {
            self.buf.pop();
        }
        if self.buf.last() == Some(&b'\r') {
            self.buf.pop();
        }
        Ok(Some(String::from_utf8_lossy(&self.buf).into_owned()))
    }
}

fn dispatch(
    cli: &Cli,
    stdin: &mut dyn BufRead,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32> {
    let lexicon = load_lexicon(cli.lexicon.as_deref())?;
    let engine = Engine::new(lexicon);
    match &cli.command {
        Command::Classify(input) => annotate(cli, &engine, input, false, stdin, stdout),
        Command::Extract(input) => annotate(cli, &engine, input, true, stdin, stdout),
        Command::Corpus(CorpusCommand::Stats {
            corpus,
            expect_table2,
            expect_counts,
        }) => {
            let expect = match (expect_table2, expect_counts) {
                (true, _) => Expect::Published,
                (false, Some(c)) => {
                    let counts: [usize; 6] = c.as_slice().try_into().map_err(|_| {
                        usage(format!("--expect-counts needs 6 values, got {}", c.len()))
                    })?;
                    Expect::Counts(counts)
                }
                (false, None) => Expect::Nothing,
            };
            corpus_stats(cli, corpus, expect, stdin, stdout, stderr)
        }
        Command::Corpus(CorpusCommand::Validate { corpus }) => {
            validate(cli, corpus, stdin, stdout, stderr)
        }
        Command::Eval(args) => eval(cli, &engine, args, stdin, stdout, stderr),
    }
}

fn annotate(
    cli: &Cli,
    engine: &Engine,
    input: &LineInput,
    with_argument: bool,
    stdin: &mut dyn BufRead,
    stdout: &mut dyn Write,
) -> Result<i32> {
    let mut lines = Lines::open(input.input.as_deref(), stdin)?;
    let mut out = BufWriter::new(stdout);
    let mut failed = false;
    while let Some(line) = lines.next_line().context("reading input")? {
        let record = match engine.process(&line) {
            Ok(o) => OutputRecord::from_outcome(&line, &o, with_argument),
            Err(e) => OutputRecord::failed(&line, &e),
        };
        failed |= record.is_error();
        match cli.format {
            OutputFormat::Json => serde_json::to_writer(&mut out, &record)?,
            OutputFormat::Tsv => out.write_all(record.to_tsv().as_bytes())?,
        }
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(if cli.strict && failed {
        EXIT_FAILURE
    } else {
        EXIT_OK
    })
}

/// Reads a dataset, sending each bad row to `on_error`.
fn read_corpus(
    input: &CorpusInput,
    stdin: &mut dyn BufRead,
    mut on_error: impl FnMut(&corpus::LoadError) -> Result<()>,
) -> Result<(Vec<CorpusEntry>, usize)> {
    let mut lines = Lines::open(input.input.as_deref(), stdin)?;
    let format = Format::from(input.input_format);
    let mut entries = Vec::new();
    let mut errors = 0;
    let mut n = 0;
    while let Some(line) = lines.next_line().context("reading dataset")? {
        n += 1;
        match corpus::parse_line(&line, n, format) {
            Ok(e) => entries.push(e),
            Err(e) => {
                errors += 1;
                on_error(&e)?;
            }
        }
    }
    Ok((entries, errors))
}

fn error_json(e: &corpus::LoadError) -> Value {
    json!({ "line": e.line, "error": e.kind.to_string() })
}

enum Expect {
    Nothing,
    Published,
    Counts([usize; 6]),
}

fn round(x: f64, places: i32) -> f64 {
    let f = 10f64.powi(places);
    (x * f).round() / f
}

fn corpus_stats(
    cli: &Cli,
    input: &CorpusInput,
    expect: Expect,
    stdin: &mut dyn BufRead,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32> {
    let (entries, errors) = read_corpus(input, stdin, |e| {
        writeln!(stderr, "{}", error_json(e))?;
        Ok(())
    })?;
    let s = corpus::stats(&entries)?;
    let within = s.super_type_portions();
    let diffs: Vec<StatDiff> = match expect {
        Expect::Nothing => Vec::new(),
        Expect::Published => corpus::diff_published(&s),
        Expect::Counts(c) => corpus::diff_counts(&s, &c),
    };

    match cli.format {
        OutputFormat::Json => {
            let mut counts = Map::new();
            let mut portions = Map::new();
            let mut percent = Map::new();
            for l in IntentLabel::ALL {
                let i = l.code() as usize;
                counts.insert(l.name().into(), json!(s.counts[i]));
                portions.insert(l.name().into(), json!(round(s.portions[i], 4)));
                percent.insert(l.name().into(), json!(round(within[i] * 100.0, 2)));
            }
            let report = json!({
                "total": s.total,
                "counts": counts,
                "portions": portions,
                "percent_within_type": percent,
                "load_errors": errors,
                "diffs": diffs.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
            });
            writeln!(stdout, "{report}")?;
        }
        OutputFormat::Tsv => {
            writeln!(
                stdout,
                "label\tlabel_name\tcount\tportion\tpercent_within_type"
            )?;
            for l in IntentLabel::ALL {
                let i = l.code() as usize;
                writeln!(
                    stdout,
                    "{}\t{}\t{}\t{:.4}\t{:.2}",
                    i,
                    l.name(),
                    s.counts[i],
                    s.portions[i],
                    within[i] * 100.0
                )?;
            }
            writeln!(stdout, "total\t\t{}\t1.0000\t", s.total)?;
        }
    }
    for d in &diffs {
        writeln!(stderr, "diff: {d}")?;
    }
    let failed = !diffs.is_empty() || (cli.strict && errors > 0);
    Ok(if failed { EXIT_FAILURE } else { EXIT_OK })
}

fn validate(
    cli: &Cli,
    input: &CorpusInput,
    stdin: &mut dyn BufRead,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32> {
    let mut out = BufWriter::new(stdout);
    let (entries, errors) = read_corpus(input, stdin, |e| {
        writeln!(out, "{}", error_json(e))?;
        Ok(())
    })?;
    out.flush()?;
    writeln!(
        stderr,
        "{} rows ok, {} rows rejected",
        entries.len(),
        errors
    )?;
    Ok(if cli.strict && errors > 0 {
        EXIT_FAILURE
    } else {
        EXIT_OK
    })
}

fn scores_json(r: &corpus::EvalReport) -> Value {
    let mut per_class = Map::new();
    for l in IntentLabel::ALL {
        let c = r.per_class[l.code() as usize];
        per_class.insert(
            l.name().into(),
            json!({
                "precision": c.precision,
                "recall": c.recall,
                "f1": c.f1,
                "support": c.support,
            }),
        );
    }
    json!({
        "rows": r.rows,
        "coverage": r.coverage,
        "label_accuracy": r.label_accuracy,
        "macro_f1": r.macro_f1,
        "per_class": per_class,
        "arg_rows": r.arg_rows,
        "arg_exact": r.arg_exact,
        "arg_char_f1": r.arg_char_f1,
    })
}

fn eval(
    cli: &Cli,
    engine: &Engine,
    args: &EvalArgs,
    stdin: &mut dyn BufRead,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32> {
    let mut failures: Box<dyn Write> = match &args.failures {
        Some(p) => {
            Box::new(BufWriter::new(File::create(p).map_err(|e| {
                usage(format!("cannot create {}: {e}", p.display()))
            })?))
        }
        None => Box::new(&mut *stderr),
    };
    let (entries, load_errors) = read_corpus(&args.corpus, stdin, |e| {
        writeln!(failures, "{}", error_json(e))?;
        Ok(())
    })?;
    if entries.is_empty() {
        bail!("no usable rows in dataset");
    }

    let mut predictions = Vec::with_capacity(entries.len());
    for e in &entries {
        let p = match engine.process(&e.utterance) {
            Ok(out) => {
                if let Err(err) = &out.argument {
                    if e.gold_argument.is_some() {
                        write_failure(&mut failures, e, &err.to_string())?;
                    }
                }
                Prediction {
                    label: Some(out.classification.label),
                    argument: out.argument.ok().map(|a| a.text),
                }
            }
            Err(err) => {
                let kind = match err {
                    EngineError::Classify(_) => "unclassifiable".to_string(),
                    other => other.to_string(),
                };
                write_failure(&mut failures, e, &kind)?;
                Prediction::default()
            }
        };
        predictions.push(p);
    }
    failures.flush()?;
    drop(failures);

    let report = corpus::evaluate(&predictions, &entries)?;
    match cli.format {
        OutputFormat::Json => writeln!(stdout, "{}", scores_json(&report))?,
        OutputFormat::Tsv => {
            writeln!(stdout, "metric\tvalue")?;
            writeln!(stdout, "rows\t{}", report.rows)?;
            writeln!(stdout, "coverage\t{:.4}", report.coverage)?;
            writeln!(stdout, "label_accuracy\t{:.4}", report.label_accuracy)?;
            writeln!(stdout, "macro_f1\t{:.4}", report.macro_f1)?;
            for l in IntentLabel::ALL {
                let c = report.per_class[l.code() as usize];
                writeln!(stdout, "f1[{}]\t{:.4}", l.name(), c.f1)?;
            }
            if let (Some(x), Some(b)) = (report.arg_exact, report.arg_char_f1) {
                writeln!(stdout, "arg_exact\t{x:.4}")?;
                writeln!(stdout, "arg_char_f1\t{b:.4}")?;
            }
        }
    }
    Ok(if cli.strict && load_errors > 0 {
        EXIT_FAILURE
    } else {
        EXIT_OK
    })
}

fn write_failure(w: &mut dyn Write, e: &CorpusEntry, error: &str) -> Result<()> {
    let v = json!({
        "line": e.line_no,
        "text": e.utterance,
        "gold_label": e.label.code(),
        "error": error,
    });
    writeln!(w, "{v}")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;

    #[test]
    fn lines_strip_endings_and_keep_blanks() {
        let mut input = Cursor::new("가\r\n\n나".as_bytes().to_vec());
        let mut lines = Lines::open(None, &mut input).unwrap();
        let mut got = Vec::new();
        while let Some(l) = lines.next_line().unwrap() {
            got.push(l);
        }
        assert_eq!(got, ["가", "", "나"]);
    }

    #[test]
    fn rounding_for_display() {
        assert_eq!(round(1.0 / 6.0, 4), 0.1667);
        assert_eq!(round(0.31999, 2), 0.32);
    }

    #[test]
    fn parses_global_flags_after_subcommand() {
        let cli = Cli::try_parse_from(["saek", "extract", "--format", "tsv", "--strict", "in.txt"])
            .unwrap();
        assert_eq!(cli.format, OutputFormat::Tsv);
        assert!(cli.strict);
        assert!(matches!(
            cli.command,
            Command::Extract(LineInput { input: Some(_) })
        ));
    }
}

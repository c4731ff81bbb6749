//! File front end for `stringy-core`: the descriptor file format, the
//! report documents and the four commands.
//!
//! Exit codes: 0 success, 1 negative verdict (or unequal / bound violated),
//! 2 input error.

pub mod descriptor_file;
pub mod report;

use std::path::{Path, PathBuf};

use serde::Serialize;
use stringy_core::stringy::{first_difference, stringy_e};

pub use descriptor_file::{load_path, load_str, DescriptorFile, LoadedDescriptor};
pub use report::{CompareFile, DefectFile, ReportFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum CliError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("at {at} (line {line}, column {column}): {message}")]
    Parse {
        at: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("at {at}: {message}")]
    Invalid { at: String, message: String },
    #[error("{0}")]
    Usage(String),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Machine,
}

/// What a command printed and how it ended.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn fail(&mut self, path: &Path, e: &CliError) {
        self.stderr.push_str(&format!("error: {}: {e}\n", path.display()));
        self.code = self.code.max(EXIT_INPUT);
    }
}

fn emit<T: Serialize>(out: &mut Outcome, docs: &[T], format: Format, text: impl Fn(&T) -> String) {
    match format {
        Format::Text => {
            for (i, d) in docs.iter().enumerate() {
                if i > 0 {
                    out.stdout.push('\n');
                }
                out.stdout.push_str(&text(d));
            }
        }
        Format::Machine => {
            let json = if docs.len() == 1 {
                serde_json::to_string_pretty(&docs[0])
            } else {
                serde_json::to_string_pretty(docs)
            };
            out.stdout.push_str(&json.expect("plain data serializes"));
            out.stdout.push('\n');
        }
    }
}

fn reports(paths: &[PathBuf], max_degree: Option<u32>, out: &mut Outcome) -> Vec<ReportFile> {
    let mut docs = Vec::new();
    for path in paths {
        match load_path(path) {
            Ok(loaded) => docs.push(ReportFile::build(&loaded.descriptor, loaded.snc.as_ref(), max_degree)),
            Err(e) => out.fail(path, &e),
        }
    }
    docs
}

/// Full stringy report for each file.
pub fn cmd_compute(paths: &[PathBuf], max_degree: Option<u32>, format: Format) -> Outcome {
    let mut out = Outcome::default();
    let docs = reports(paths, max_degree, &mut out);
    emit(&mut out, &docs, format, |r| r.render_text(false));
    out
}

/// Nonnegativity verdicts; exit 1 if any computed `h^{p,q}_st` is negative.
pub fn cmd_check(paths: &[PathBuf], max_degree: Option<u32>, format: Format) -> Outcome {
    let mut out = Outcome::default();
    let docs = reports(paths, max_degree, &mut out);
    if docs.iter().any(|r| !r.all_nonnegative) {
        out.code = out.code.max(EXIT_NEGATIVE);
    }
    emit(&mut out, &docs, format, |r| r.render_text(true));
    out
}

/// Local defect per point of the `fibers` block; exit 1 if a bound is violated.
pub fn cmd_defect(paths: &[PathBuf], format: Format) -> Outcome {
    let mut out = Outcome::default();
    let mut docs = Vec::new();
    for path in paths {
        match load_path(path) {
            Ok(loaded) if loaded.fibers.is_empty() => out.fail(
                path,
                &CliError::Invalid {
                    at: "fibers".into(),
                    message: "no fibers block; defect needs per-point fiber data".into(),
                },
            ),
            Ok(loaded) => docs.push(DefectFile::build(&loaded.descriptor, &loaded.fibers)),
            Err(e) => out.fail(path, &e),
        }
    }
    if docs.iter().any(|d| !d.all_within_bound) {
        out.code = out.code.max(EXIT_NEGATIVE);
    }
    emit(&mut out, &docs, format, DefectFile::render_text);
    out
}

/// Exact equality of the two stringy E-functions; exit 1 if they differ.
pub fn cmd_compare(left: &Path, right: &Path, max_degree: Option<u32>, format: Format) -> Outcome {
    let mut out = Outcome::default();
    let (a, b) = match (load_path(left), load_path(right)) {
        (Ok(a), Ok(b)) => (a.descriptor, b.descriptor),
        (l, r) => {
            if let Err(e) = l {
                out.fail(left, &e);
            }
            if let Err(e) = r {
                out.fail(right, &e);
            }
            return out;
        }
    };
    if a.dim() != b.dim() {
        out.fail(
            right,
            &CliError::Usage(format!(
                "dimension {} does not match dimension {} of {}",
                b.dim(),
                a.dim(),
                left.display()
            )),
        );
        return out;
    }
    let (f, g) = (stringy_e(&a), stringy_e(&b));
    let searched = max_degree.map_or(4 * i64::from(a.dim()), i64::from);
    let equal = f.equals(&g);
    let doc = CompareFile {
        left: a.label().to_string(),
        right: b.label().to_string(),
        left_e_st: f.to_string(),
        right_e_st: g.to_string(),
        equal,
        first_difference: if equal {
            None
        } else {
            first_difference(&f, &g, searched).map(Into::into)
        },
        searched_degree: searched,
    };
    if !equal {
        out.code = EXIT_NEGATIVE;
    }
    emit(&mut out, &[doc], format, CompareFile::render_text);
    out
}

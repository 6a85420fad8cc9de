//! Text formats.
//!
//! `.scm` scheme files:
//!
//! ```text
//! scheme <order> <rank>
//! <order lines of <order> space-separated relation indices>
//! # variant=D
//! # n=4
//! # a=3
//! # b=1
//! # labels=sigma_1,sigma_x2,...
//! ```
//!
//! The metadata lines are optional. `.had` skew-Hadamard files are a
//! `hadamard <n>` header followed by `n` lines of `+`/`-` characters.
//! Writers emit LF line endings and no trailing spaces; readers accept CRLF.

use std::collections::BTreeMap;
use std::fmt::Write;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::linalg::IntMatrix;
use crate::rank3::{Rank3Error, SkewHadamard};
use crate::scheme::{AssociationScheme, SchemeError, SchemeMeta, Variant};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    Hadamard(#[from] Rank3Error),
}

fn parse_error(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse {
        line,
        message: message.into(),
    }
}

/// Contents of a `.scm` file before any scheme axiom is checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScmFile {
    pub order: usize,
    pub rank: usize,
    pub colors: Vec<usize>,
    pub meta: Option<SchemeMeta>,
}

impl ScmFile {
    pub fn into_scheme(self) -> Result<(AssociationScheme, Option<SchemeMeta>), FormatError> {
        let scheme = AssociationScheme::from_colors(self.order, self.rank, self.colors)?;
        Ok((scheme, self.meta))
    }
}

pub fn write_scm(s: &AssociationScheme, meta: Option<&SchemeMeta>) -> String {
    let mut out = String::new();
    writeln!(out, "scheme {} {}", s.order(), s.rank()).unwrap();
    for r in 0..s.order() {
        let row: Vec<String> = (0..s.order()).map(|c| s.color(r, c).to_string()).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    if let Some(meta) = meta {
        writeln!(out, "# variant={}", meta.variant).unwrap();
        for key in ["n", "a", "b"] {
            if let Some(v) = meta.param(key) {
                writeln!(out, "# {key}={v}").unwrap();
            }
        }
        writeln!(out, "# labels={}", meta.labels.join(",")).unwrap();
    }
    out
}

fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.split('\n')
        .map(|l| l.strip_suffix('\r').unwrap_or(l))
        .enumerate()
        .map(|(i, l)| (i + 1, l))
}

fn header(line: Option<(usize, &str)>, keyword: &str, fields: usize) -> Result<Vec<usize>, FormatError> {
    let (no, text) = line.ok_or_else(|| parse_error(1, "empty file"))?;
    let mut parts = text.split(' ');
    if parts.next() != Some(keyword) {
        return Err(parse_error(no, format!("expected `{keyword}` header")));
    }
    let values = parts
        .map(|p| p.parse::<usize>().map_err(|_| parse_error(no, format!("bad number `{p}`"))))
        .collect::<Result<Vec<_>, _>>()?;
    if values.len() != fields {
        return Err(parse_error(no, format!("expected {fields} header fields")));
    }
    Ok(values)
}

pub fn read_scm(text: &str) -> Result<ScmFile, FormatError> {
    let mut it = lines(text);
    let dims = header(it.next(), "scheme", 2)?;
    let (order, rank) = (dims[0], dims[1]);
    let mut colors = Vec::with_capacity(order * order);
    for _ in 0..order {
        let (no, line) = it.next().ok_or_else(|| parse_error(0, "missing color rows"))?;
        let row = line
            .split(' ')
            .map(|t| t.parse::<usize>().map_err(|_| parse_error(no, format!("bad color `{t}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != order {
            return Err(parse_error(no, format!("expected {order} colors, found {}", row.len())));
        }
        colors.extend(row);
    }

    let mut fields: BTreeMap<String, String> = BTreeMap::new();
    for (no, line) in it {
        if line.is_empty() {
            continue;
        }
        let body = line
            .strip_prefix("# ")
            .ok_or_else(|| parse_error(no, "expected `# key=value` metadata"))?;
        let (key, value) = body
            .split_once('=')
            .ok_or_else(|| parse_error(no, "metadata line lacks `=`"))?;
        fields.insert(key.to_string(), value.to_string());
    }
    let meta = match fields.get("variant") {
        None => None,
        Some(v) => {
            let variant =
                Variant::parse(v).ok_or_else(|| parse_error(0, format!("unknown variant `{v}`")))?;
            let mut params = BTreeMap::new();
            for key in ["n", "a", "b"] {
                if let Some(raw) = fields.get(key) {
                    let v = raw
                        .parse::<i64>()
                        .map_err(|_| parse_error(0, format!("bad value for {key}: `{raw}`")))?;
                    params.insert(key.to_string(), v);
                }
            }
            let labels: Vec<String> = match fields.get("labels") {
                Some(l) => l.split(',').map(str::to_string).collect(),
                None => (0..rank).map(|i| format!("A_{i}")).collect(),
            };
            if labels.len() != rank {
                return Err(parse_error(0, format!("expected {rank} labels, found {}", labels.len())));
            }
            Some(SchemeMeta {
                variant,
                params,
                labels,
            })
        }
    };
    Ok(ScmFile {
        order,
        rank,
        colors,
        meta,
    })
}

/// Reads and validates a scheme file.
pub fn read_scheme(text: &str) -> Result<(AssociationScheme, Option<SchemeMeta>), FormatError> {
    read_scm(text)?.into_scheme()
}

pub fn write_had(h: &SkewHadamard) -> String {
    let m = h.matrix();
    let mut out = format!("hadamard {}\n", m.rows());
    for r in 0..m.rows() {
        for v in m.row(r) {
            out.push(if v.is_one() { '+' } else { '-' });
        }
        out.push('\n');
    }
    out
}

pub fn read_had(text: &str) -> Result<SkewHadamard, FormatError> {
    let mut it = lines(text);
    let n = header(it.next(), "hadamard", 1)?[0];
    let mut entries = Vec::with_capacity(n * n);
    for _ in 0..n {
        let (no, line) = it.next().ok_or_else(|| parse_error(0, "missing matrix rows"))?;
        if line.chars().count() != n {
            return Err(parse_error(no, format!("expected {n} entries")));
        }
        for ch in line.chars() {
            entries.push(match ch {
                '+' => BigInt::one(),
                '-' => -BigInt::one(),
                other => return Err(parse_error(no, format!("invalid character `{other}`"))),
            });
        }
    }
    if let Some((no, _)) = it.find(|(_, l)| !l.is_empty()) {
        return Err(parse_error(no, "unexpected trailing content"));
    }
    let m = IntMatrix::new(n, n, entries).expect("entry count matches");
    Ok(SkewHadamard::new(m)?)
}

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::Variant;
use crate::error::{Error, Result};
use crate::scalar::QScalar;

/// One product `coeff · f_I · g_J` of a form table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormTerm {
    pub coeff: QScalar,
    pub f: u32,
    pub g: u32,
}

/// A stored term that differs from the printed one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Erratum {
    pub variant: Variant,
    pub primed: bool,
    /// Position of the term within its table.
    pub index: usize,
    pub printed: FormTerm,
    pub printed_text: String,
    pub note: String,
}

/// Raw record of one table section before label resolution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableSection {
    pub space: String,
    pub primed: bool,
    pub variants: Vec<Variant>,
    /// `(f, g, coeff, annotation)` as written.
    pub lines: Vec<(String, String, QScalar, Option<String>)>,
    pub line_numbers: Vec<usize>,
}

fn syntax(line: usize, msg: &str) -> Error {
    Error::Syntax {
        pos: line,
        msg: msg.to_string(),
    }
}

/// Parses the table text format; `pos` in errors is the 1-based line.
pub fn parse_tables(text: &str) -> Result<Vec<TableSection>> {
    let mut out: Vec<TableSection> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(h) = line.strip_prefix('[') {
            let h = h.strip_suffix(']').ok_or_else(|| syntax(ln, "unterminated header"))?;
            let mut it = h.split_whitespace();
            let space = it.next().ok_or_else(|| syntax(ln, "missing space name"))?;
            let primed = match it.next() {
                Some("primed") => true,
                Some("unprimed") => false,
                _ => return Err(syntax(ln, "expected primed or unprimed")),
            };
            let variants = it
                .map(|v| Variant::from_name(v).ok_or_else(|| syntax(ln, "unknown variant")))
                .collect::<Result<Vec<_>>>()?;
            if variants.is_empty() {
                return Err(syntax(ln, "section without variants"));
            }
            out.push(TableSection {
                space: space.to_string(),
                primed,
                variants,
                lines: Vec::new(),
                line_numbers: Vec::new(),
            });
            continue;
        }
        let section = out.last_mut().ok_or_else(|| syntax(ln, "term before any section"))?;
        let (body, note) = match line.split_once(';') {
            Some((b, n)) => (b.trim(), Some(n.trim().to_string())),
            None => (line, None),
        };
        let mut it = body.splitn(3, char::is_whitespace);
        let f = it.next().ok_or_else(|| syntax(ln, "missing f subset"))?;
        let g = it.next().ok_or_else(|| syntax(ln, "missing g subset"))?;
        let c = it.next().ok_or_else(|| syntax(ln, "missing coefficient"))?;
        let coeff: QScalar = c
            .trim()
            .parse()
            .map_err(|_| syntax(ln, "bad coefficient"))?;
        section.lines.push((f.to_string(), g.to_string(), coeff, note));
        section.line_numbers.push(ln);
    }
    Ok(out)
}

/// Bitmask for a comma-separated label list; `'` is the empty set.
pub(crate) fn subset_mask(labels: &[String], text: &str) -> Result<u32> {
    if text == "'" {
        return Ok(0);
    }
    let mut m = 0u32;
    for part in text.split(',').filter(|p| !p.is_empty()) {
        let i = labels
            .iter()
            .position(|l| l == part)
            .ok_or_else(|| Error::UnknownSymbol(part.to_string()))?;
        if m & (1 << i) != 0 {
            return Err(Error::Invalid(alloc::format!("label {} repeated in {}", part, text)));
        }
        m |= 1 << i;
    }
    Ok(m)
}

fn verbatim_field<'a>(note: &'a str, key: &str) -> Option<&'a str> {
    note.split_whitespace().find_map(|t| t.strip_prefix(key))
}

impl TableSection {
    /// Resolves subsets against `labels`. Returns the stored terms and the
    /// errata recorded by `verbatim` annotations. Printed subscripts that
    /// contain stray characters keep only the known labels.
    pub fn resolve(&self, labels: &[String]) -> Result<(Vec<FormTerm>, Vec<Erratum>)> {
        let mut terms = Vec::new();
        let mut errata = Vec::new();
        for (idx, (f, g, c, note)) in self.lines.iter().enumerate() {
            let term = FormTerm {
                coeff: c.clone(),
                f: subset_mask(labels, f)?,
                g: subset_mask(labels, g)?,
            };
            if let Some(n) = note {
                if n.starts_with("verbatim") {
                    let pf = verbatim_field(n, "f=").unwrap_or(f);
                    let pg = verbatim_field(n, "g=").unwrap_or(g);
                    let clean = |s: &str| -> String {
                        s.split(',')
                            .map(|p| {
                                if labels.iter().any(|l| l == p) || p == "'" {
                                    p.to_string()
                                } else {
                                    p.trim_end_matches(|ch: char| ch.is_ascii_alphabetic()).to_string()
                                }
                            })
                            .collect::<Vec<_>>()
                            .join(",")
                    };
                    let printed = FormTerm {
                        coeff: c.clone(),
                        f: subset_mask(labels, &clean(pf))?,
                        g: subset_mask(labels, &clean(pg))?,
                    };
                    let note_text = n
                        .find('(')
                        .map(|i| n[i..].trim_matches(|ch| ch == '(' || ch == ')').to_string())
                        .unwrap_or_default();
                    errata.push(Erratum {
                        variant: self.variants[0],
                        primed: self.primed,
                        index: idx,
                        printed,
                        printed_text: alloc::format!("f={} g={}", pf, pg),
                        note: note_text,
                    });
                }
            }
            terms.push(term);
        }
        Ok((terms, errata))
    }
}

//! The line-oriented poset document.
//!
//! ```text
//! # comments and blank lines are ignored
//! elements: a b c d 1
//! cover: a < c
//! cover: a < d
//! map: a->b b->b c->c d->d 1->1
//! classes: {a,b}{c}{d}{1}
//! ```
//!
//! `elements:` comes first and appears once. `cover:` lines may list any
//! order relations; the poset is their reflexive-transitive closure. `map:`
//! and `classes:` are optional and appear at most once each.

use std::fmt;
use std::sync::Arc;

use posetlab_core::{Equivalence, Poset, PosetMap};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosetDocument {
    pub poset: Arc<Poset>,
    pub map: Option<PosetMap>,
    pub classes: Option<Equivalence>,
}

impl PosetDocument {
    pub fn new(poset: Poset) -> PosetDocument {
        PosetDocument {
            poset: Arc::new(poset),
            map: None,
            classes: None,
        }
    }

    pub fn parse(text: &str) -> Result<PosetDocument, ParseError> {
        let mut labels: Option<(usize, Vec<String>)> = None;
        let mut covers: Vec<(usize, String, String)> = Vec::new();
        let mut map_line: Option<(usize, &str)> = None;
        let mut classes_line: Option<(usize, &str)> = None;

        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (directive, rest) = line
                .split_once(':')
                .ok_or_else(|| err(line_no, format!("expected `directive: ...`, found `{line}`")))?;
            let rest = rest.trim();
            match directive.trim() {
                "elements" => {
                    if labels.is_some() {
                        return Err(err(line_no, "duplicate `elements:` line"));
                    }
                    labels = Some((line_no, rest.split_whitespace().map(str::to_owned).collect()));
                }
                "cover" => {
                    if labels.is_none() {
                        return Err(err(line_no, "`cover:` before `elements:`"));
                    }
                    let tokens: Vec<&str> = rest.split_whitespace().collect();
                    match tokens.as_slice() {
                        [a, "<", b] => covers.push((line_no, (*a).to_owned(), (*b).to_owned())),
                        _ => return Err(err(line_no, format!("expected `cover: x < y`, found `{line}`"))),
                    }
                }
                "map" => {
                    if map_line.replace((line_no, rest)).is_some() {
                        return Err(err(line_no, "duplicate `map:` line"));
                    }
                }
                "classes" => {
                    if classes_line.replace((line_no, rest)).is_some() {
                        return Err(err(line_no, "duplicate `classes:` line"));
                    }
                }
                other => return Err(err(line_no, format!("unknown directive `{other}`"))),
            }
        }

        let (labels_line, labels) = labels.ok_or_else(|| err(text.lines().count().max(1), "missing `elements:` line"))?;
        let index = |line: usize, label: &str| -> Result<usize, ParseError> {
            labels
                .iter()
                .position(|l| l == label)
                .ok_or_else(|| err(line, format!("unknown element `{label}`")))
        };
        let mut pairs = Vec::with_capacity(covers.len());
        for (line, a, b) in &covers {
            pairs.push((index(*line, a)?, index(*line, b)?));
        }
        let poset = Poset::from_index_covers(labels.clone(), &pairs).map_err(|e| match e {
            // reported at the cover line that closes the cycle
            posetlab_core::PosetError::Cycle { .. } => {
                let k = (1..=pairs.len())
                    .find(|&k| Poset::from_index_covers(labels.clone(), &pairs[..k]).is_err())
                    .unwrap_or(pairs.len());
                err(covers[k - 1].0, e.to_string())
            }
            _ => err(labels_line, e.to_string()),
        })?;
        let poset = Arc::new(poset);

        let map = match map_line {
            None => None,
            Some((line, rest)) => {
                let mut image = vec![None; poset.len()];
                for arrow in rest.split_whitespace() {
                    let (x, y) = arrow
                        .split_once("->")
                        .ok_or_else(|| err(line, format!("expected `x->y`, found `{arrow}`")))?;
                    let (x, y) = (index(line, x)?, index(line, y)?);
                    if image[x].replace(y).is_some() {
                        return Err(err(line, format!("element `{}` mapped twice", poset.label(x))));
                    }
                }
                let image: Vec<usize> = image
                    .iter()
                    .enumerate()
                    .map(|(x, y)| y.ok_or_else(|| err(line, format!("element `{}` has no image", poset.label(x)))))
                    .collect::<Result<_, _>>()?;
                Some(PosetMap::self_map(poset.clone(), image).map_err(|e| err(line, e.to_string()))?)
            }
        };

        let classes = match classes_line {
            None => None,
            Some((line, rest)) => Some(parse_classes(line, rest, &poset)?),
        };

        Ok(PosetDocument { poset, map, classes })
    }
}

fn parse_classes(line: usize, text: &str, p: &Poset) -> Result<Equivalence, ParseError> {
    let mut blocks = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('{')
            .ok_or_else(|| err(line, format!("expected `{{` in `{text}`")))?;
        let close = body.find('}').ok_or_else(|| err(line, "unclosed `{`"))?;
        let block: Vec<usize> = body[..close]
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|l| p.index_of(l).ok_or_else(|| err(line, format!("unknown element `{l}`"))))
            .collect::<Result<_, _>>()?;
        blocks.push(block);
        rest = body[close + 1..].trim_start();
    }
    Equivalence::from_blocks(p.len(), &blocks).map_err(|e| err(line, e.to_string()))
}

/// Prints the canonical form: one `cover:` line per Hasse edge.
impl fmt::Display for PosetDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &*self.poset;
        writeln!(f, "elements: {}", p.labels().join(" "))?;
        for (a, b) in p.covers() {
            writeln!(f, "cover: {} < {}", p.label(a), p.label(b))?;
        }
        if let Some(map) = &self.map {
            writeln!(f, "map: {}", map.to_arrows())?;
        }
        if let Some(classes) = &self.classes {
            writeln!(f, "classes: {}", classes.format_with(p))?;
        }
        Ok(())
    }
}

//! The `.rhz` gold format: one rhesis per line, a blank line after each
//! sentence, `#doc <label>` to switch document, other `#` lines ignored.

use std::io::BufRead;

use crate::error::{Error, Result};

pub const DEFAULT_DOC: &str = "default";

/// One gold sentence: its document label and raw rhesis strings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldSentence {
    pub doc: String,
    pub rhesis: Vec<String>,
    /// Line of the first rhesis, for diagnostics.
    pub line: usize,
}

/// Sentences grouped under one document label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldDocument {
    pub label: String,
    pub sentences: Vec<Vec<String>>,
}

pub fn parse_gold(input: &str) -> Result<Vec<GoldSentence>> {
    read_gold(input.as_bytes())
}

pub fn read_gold<R: BufRead>(reader: R) -> Result<Vec<GoldSentence>> {
    let mut out = Vec::new();
    let mut doc = DEFAULT_DOC.to_string();
    let mut current: Option<GoldSentence> = None;

    for (lineno, line) in reader.lines().enumerate() {
        let lineno = lineno + 1;
        let line = line?;
        let line = line.strip_suffix('\r').unwrap_or(&line);

        if line.is_empty() {
            out.extend(current.take());
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(label) = comment.strip_prefix("doc ") {
                out.extend(current.take());
                doc = label.trim().to_string();
            }
            continue;
        }
        if line.trim().is_empty() {
            if current.is_some() {
                return Err(Error::Gold {
                    line: lineno,
                    message: "whitespace-only rhesis inside a sentence".into(),
                });
            }
            continue;
        }
        current
            .get_or_insert_with(|| GoldSentence {
                doc: doc.clone(),
                rhesis: Vec::new(),
                line: lineno,
            })
            .rhesis
            .push(line.to_string());
    }
    out.extend(current);
    Ok(out)
}

/// Groups parsed gold sentences by consecutive document label.
pub fn group_documents(sentences: &[GoldSentence]) -> Vec<GoldDocument> {
    let mut docs: Vec<GoldDocument> = Vec::new();
    for s in sentences {
        match docs.last_mut() {
            Some(d) if d.label == s.doc => d.sentences.push(s.rhesis.clone()),
            _ => docs.push(GoldDocument {
                label: s.doc.clone(),
                sentences: vec![s.rhesis.clone()],
            }),
        }
    }
    docs
}

//! Maps gold rhesis strings onto token spans.
//!
//! Each gold string is normalized (whitespace runs collapsed, ends trimmed)
//! and matched character by character against the sentence surface, left
//! to right. Both ends of every rhesis must fall on token edges.

use super::gold::GoldSentence;
use super::{AlignedCorpus, AlignedEntry, Rhesis, Segmentation, Sentence};
use crate::error::{Error, Result};

fn normalize(text: &str) -> Vec<char> {
    let mut out = Vec::with_capacity(text.len());
    for word in text.split_whitespace() {
        if !out.is_empty() {
            out.push(' ');
        }
        out.extend(word.chars());
    }
    out
}

/// Aligns the rhesis strings of one sentence.
pub fn align_sentence<S: AsRef<str>>(sentence: &Sentence, gold: &[S]) -> Result<Segmentation> {
    let text: Vec<char> = sentence.text.chars().collect();
    let fail = |offset: usize, message: String| Error::Align {
        sentence: sentence.id.clone(),
        offset,
        message,
    };

    // token starts and ends by char offset
    let n = sentence.len();
    let mut token_at_start = std::collections::HashMap::with_capacity(n);
    let mut token_at_end = std::collections::HashMap::with_capacity(n);
    for i in 1..=n {
        let (s, e) = sentence.char_span(i);
        token_at_start.insert(s, i);
        token_at_end.insert(e, i);
    }

    let mut pos = 0;
    let mut rhesis = Vec::with_capacity(gold.len());
    for g in gold {
        let g = normalize(g.as_ref());
        if g.is_empty() {
            return Err(fail(pos, "empty gold rhesis".into()));
        }
        while pos < text.len() && text[pos].is_whitespace() {
            pos += 1;
        }
        let start = *token_at_start
            .get(&pos)
            .ok_or_else(|| fail(pos, "rhesis starts inside a token".into()))?;
        for (k, &c) in g.iter().enumerate() {
            match text.get(pos + k) {
                Some(&t) if t == c || (t.is_whitespace() && c == ' ') => {}
                Some(&t) => {
                    return Err(fail(
                        pos + k,
                        format!("expected '{t}' but gold has '{c}'"),
                    ))
                }
                None => return Err(fail(pos + k, "gold runs past the sentence end".into())),
            }
        }
        pos += g.len();
        let end = *token_at_end
            .get(&pos)
            .ok_or_else(|| fail(pos, "rhesis ends inside a token".into()))?;
        rhesis.push(Rhesis {
            start,
            end,
            text: sentence.slice(start, end).to_string(),
        });
    }
    if pos != text.len() {
        return Err(fail(pos, "gold does not cover the whole sentence".into()));
    }
    let seg = Segmentation {
        sentence_id: sentence.id.clone(),
        rhesis,
    };
    seg.validate(sentence)?;
    Ok(seg)
}

/// Pairs every parsed sentence with its gold segmentation.
pub fn align_gold(sentences: &[Sentence], gold: &[GoldSentence]) -> Result<AlignedCorpus> {
    if sentences.len() != gold.len() {
        return Err(Error::Mismatch(format!(
            "{} parsed sentences but {} gold sentences",
            sentences.len(),
            gold.len()
        )));
    }
    let entries = sentences
        .iter()
        .zip(gold)
        .map(|(sentence, g)| {
            Ok(AlignedEntry {
                doc: g.doc.clone(),
                sentence: sentence.clone(),
                gold: align_sentence(sentence, &g.rhesis)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AlignedCorpus { entries })
}

//! Parsed sentences, rhesis spans and gold corpora.
//!
//! A [`Sentence`] owns its dependency tree and the surface text rebuilt from
//! its forms. Every segmenter in the crate works on token ranges of a
//! sentence; [`Segmentation`] is the ordered partition they produce.

mod align;
mod conllu;
mod gold;

pub use align::{align_gold, align_sentence};
pub use conllu::{parse_conllu, read_conllu, write_conllu};
pub use gold::{group_documents, parse_gold, read_gold, GoldDocument, GoldSentence, DEFAULT_DOC};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One syntactic word of a parsed sentence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    /// 1-based position in the sentence.
    pub index: usize,
    pub form: String,
    pub upos: String,
    /// Head position, 0 for the root.
    pub head: usize,
    pub deprel: String,
    pub misc: Option<String>,
}

impl Token {
    pub fn new(index: usize, form: &str, upos: &str, head: usize, deprel: &str) -> Self {
        Token {
            index,
            form: form.to_string(),
            upos: upos.to_string(),
            head,
            deprel: deprel.to_string(),
            misc: None,
        }
    }

    /// Marks the token as not followed by a space.
    pub fn no_space_after(mut self) -> Self {
        self.misc = Some("SpaceAfter=No".to_string());
        self
    }

    pub fn space_after(&self) -> bool {
        match &self.misc {
            Some(misc) => !misc.split('|').any(|kv| kv == "SpaceAfter=No"),
            None => true,
        }
    }

    pub fn is_punct(&self) -> bool {
        self.upos == "PUNCT"
    }
}

/// A dependency-parsed sentence.
///
/// Construction validates the tree: exactly one root, heads in range and
/// no cycles. The surface text is rebuilt from the forms, honoring
/// `SpaceAfter=No`.
#[derive(Clone, Debug, PartialEq)]
pub struct Sentence {
    pub id: String,
    pub tokens: Vec<Token>,
    pub text: String,
    // Byte and char offsets of every token inside `text`.
    bytes: Vec<(usize, usize)>,
    chars: Vec<(usize, usize)>,
    depths: Vec<usize>,
}

impl Sentence {
    pub fn new(id: impl Into<String>, tokens: Vec<Token>) -> Result<Self> {
        let id = id.into();
        let structural = |message: String| Error::Structure {
            sentence: id.clone(),
            message,
        };
        if tokens.is_empty() {
            return Err(structural("sentence has no tokens".into()));
        }
        let n = tokens.len();
        let mut roots = 0;
        for (pos, tok) in tokens.iter().enumerate() {
            if tok.index != pos + 1 {
                return Err(structural(format!(
                    "token {} found at position {}",
                    tok.index,
                    pos + 1
                )));
            }
            if tok.head > n {
                return Err(structural(format!(
                    "token {} has head {} outside 0..={}",
                    tok.index, tok.head, n
                )));
            }
            if tok.head == tok.index {
                return Err(structural(format!("token {} is its own head", tok.index)));
            }
            if tok.deprel.is_empty() {
                return Err(structural(format!("token {} has no relation", tok.index)));
            }
            if tok.form.is_empty() {
                return Err(structural(format!("token {} has an empty form", tok.index)));
            }
            if tok.head == 0 {
                roots += 1;
            }
        }
        if roots != 1 {
            return Err(structural(format!("expected one root, found {roots}")));
        }

        let depths = compute_depths(&tokens).ok_or_else(|| structural("cyclic head links".into()))?;

        let mut text = String::new();
        let mut bytes = Vec::with_capacity(n);
        let mut chars = Vec::with_capacity(n);
        let mut char_pos = 0;
        for (pos, tok) in tokens.iter().enumerate() {
            let start = text.len();
            let char_start = char_pos;
            text.push_str(&tok.form);
            char_pos += tok.form.chars().count();
            bytes.push((start, text.len()));
            chars.push((char_start, char_pos));
            if pos + 1 < n && tok.space_after() {
                text.push(' ');
                char_pos += 1;
            }
        }

        Ok(Sentence {
            id,
            tokens,
            text,
            bytes,
            chars,
            depths,
        })
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Token at a 1-based index.
    pub fn token(&self, index: usize) -> &Token {
        &self.tokens[index - 1]
    }

    /// Surface text of tokens `start..=end` (1-based, inclusive).
    pub fn slice(&self, start: usize, end: usize) -> &str {
        &self.text[self.bytes[start - 1].0..self.bytes[end - 1].1]
    }

    /// Character length of `slice(start, end)`.
    pub fn char_len(&self, start: usize, end: usize) -> usize {
        self.chars[end - 1].1 - self.chars[start - 1].0
    }

    /// Char offsets `[start, end)` of a token inside `text`.
    pub fn char_span(&self, index: usize) -> (usize, usize) {
        self.chars[index - 1]
    }

    /// Distance from the root: 0 for the root, else 1 + depth of the head.
    pub fn token_depth(&self, index: usize) -> usize {
        self.depths[index - 1]
    }

    /// Leftmost token index reachable from `index` through dependents.
    pub fn subtree_left_edge(&self, index: usize) -> usize {
        let mut left = index;
        for tok in &self.tokens {
            if tok.index < left && self.dominates(index, tok.index) {
                left = tok.index;
            }
        }
        left
    }

    /// True when `ancestor` lies on the head path of `index` (or equals it).
    pub fn dominates(&self, ancestor: usize, mut index: usize) -> bool {
        while index != 0 {
            if index == ancestor {
                return true;
            }
            index = self.token(index).head;
        }
        false
    }

    pub fn dependents(&self, head: usize) -> impl Iterator<Item = &Token> + '_ {
        self.tokens.iter().filter(move |t| t.head == head)
    }

    pub fn root(&self) -> usize {
        self.tokens.iter().find(|t| t.head == 0).map(|t| t.index).unwrap()
    }
}

fn compute_depths(tokens: &[Token]) -> Option<Vec<usize>> {
    let n = tokens.len();
    let mut depths = vec![usize::MAX; n];
    for start in 1..=n {
        let mut path = Vec::new();
        let mut cur = start;
        let depth_at_top = loop {
            if cur == 0 {
                break 0;
            }
            if depths[cur - 1] != usize::MAX {
                break depths[cur - 1] + 1;
            }
            if path.len() > n {
                return None;
            }
            path.push(cur);
            cur = tokens[cur - 1].head;
        };
        // depth_at_top is the depth of the first unresolved node on the path.
        for (k, &node) in path.iter().rev().enumerate() {
            depths[node - 1] = depth_at_top + k;
        }
    }
    Some(depths)
}

/// A contiguous token span `start..=end` of one sentence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rhesis {
    pub start: usize,
    pub end: usize,
    pub text: String,
}

/// Ordered partition of a sentence into rhesis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segmentation {
    pub sentence_id: String,
    pub rhesis: Vec<Rhesis>,
}

impl Segmentation {
    /// Builds the segmentation cutting after each boundary in `cuts`.
    ///
    /// A boundary `i` separates token `i` from token `i + 1`; cuts must be
    /// strictly increasing and lie in `1..n`.
    pub fn from_cuts(sentence: &Sentence, cuts: &[usize]) -> Segmentation {
        let n = sentence.len();
        let mut rhesis = Vec::with_capacity(cuts.len() + 1);
        let mut start = 1;
        for &cut in cuts.iter().chain(std::iter::once(&n)) {
            assert!(cut >= start && cut <= n, "cut {cut} out of order");
            rhesis.push(Rhesis {
                start,
                end: cut,
                text: sentence.slice(start, cut).to_string(),
            });
            start = cut + 1;
        }
        Segmentation {
            sentence_id: sentence.id.clone(),
            rhesis,
        }
    }

    /// The whole sentence as one rhesis.
    pub fn whole(sentence: &Sentence) -> Segmentation {
        Segmentation::from_cuts(sentence, &[])
    }

    pub fn from_spans(sentence: &Sentence, spans: &[(usize, usize)]) -> Result<Segmentation> {
        let seg = Segmentation {
            sentence_id: sentence.id.clone(),
            rhesis: spans
                .iter()
                .map(|&(start, end)| Rhesis {
                    start,
                    end,
                    text: if start >= 1 && start <= end && end <= sentence.len() {
                        sentence.slice(start, end).to_string()
                    } else {
                        String::new()
                    },
                })
                .collect(),
        };
        seg.validate(sentence)?;
        Ok(seg)
    }

    /// Internal boundaries, in increasing order.
    pub fn cuts(&self) -> Vec<usize> {
        let mut cuts: Vec<usize> = self.rhesis.iter().map(|r| r.end).collect();
        cuts.pop();
        cuts
    }

    pub fn len(&self) -> usize {
        self.rhesis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rhesis.is_empty()
    }

    /// Number of tokens covered.
    pub fn token_count(&self) -> usize {
        self.rhesis.last().map_or(0, |r| r.end)
    }

    /// Checks contiguity, full coverage and surface text against `sentence`.
    pub fn validate(&self, sentence: &Sentence) -> Result<()> {
        let bad = |message: String| Error::Structure {
            sentence: sentence.id.clone(),
            message,
        };
        if self.sentence_id != sentence.id {
            return Err(bad(format!(
                "segmentation belongs to sentence {}",
                self.sentence_id
            )));
        }
        let mut next = 1;
        for r in &self.rhesis {
            if r.start != next || r.end < r.start || r.end > sentence.len() {
                return Err(bad(format!(
                    "rhesis {}..={} does not continue at token {next}",
                    r.start, r.end
                )));
            }
            if r.text != sentence.slice(r.start, r.end) {
                return Err(bad(format!("rhesis {}..={} text differs", r.start, r.end)));
            }
            next = r.end + 1;
        }
        if next != sentence.len() + 1 {
            return Err(bad(format!(
                "rhesis cover {} of {} tokens",
                next - 1,
                sentence.len()
            )));
        }
        Ok(())
    }
}

/// One aligned entry: a parsed sentence, its gold segmentation and the
/// label of the document it came from.
#[derive(Clone, Debug)]
pub struct AlignedEntry {
    pub doc: String,
    pub sentence: Sentence,
    pub gold: Segmentation,
}

/// Human segmentations aligned token-wise to parsed sentences.
#[derive(Clone, Debug, Default)]
pub struct AlignedCorpus {
    pub entries: Vec<AlignedEntry>,
}

impl AlignedCorpus {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn sentences(&self) -> impl Iterator<Item = &Sentence> {
        self.entries.iter().map(|e| &e.sentence)
    }

    pub fn gold(&self) -> Vec<Segmentation> {
        self.entries.iter().map(|e| e.gold.clone()).collect()
    }

    pub fn gold_rhesis_count(&self) -> usize {
        self.entries.iter().map(|e| e.gold.len()).sum()
    }

    /// Document labels in order of first appearance.
    pub fn documents(&self) -> Vec<String> {
        let mut docs: Vec<String> = Vec::new();
        for e in &self.entries {
            if !docs.contains(&e.doc) {
                docs.push(e.doc.clone());
            }
        }
        docs
    }

    /// Entries of one document.
    pub fn subset(&self, doc: &str) -> AlignedCorpus {
        AlignedCorpus {
            entries: self.entries.iter().filter(|e| e.doc == doc).cloned().collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c_est_sara() -> Sentence {
        Sentence::new(
            "s1",
            vec![
                Token::new(1, "C'", "PRON", 3, "nsubj").no_space_after(),
                Token::new(2, "est", "AUX", 3, "cop"),
                Token::new(3, "Sara", "PROPN", 0, "root").no_space_after(),
                Token::new(4, ".", "PUNCT", 3, "punct"),
            ],
        )
        .unwrap()
    }

    #[test]
    fn surface_honors_space_after() {
        let s = c_est_sara();
        assert_eq!(s.text, "C'est Sara.");
        assert_eq!(s.slice(2, 3), "est Sara");
        assert_eq!(s.char_len(1, 4), 11);
    }

    #[test]
    fn depths_follow_heads() {
        // chain 3 -> 2 -> 1 (root)
        let s = Sentence::new(
            "c",
            vec![
                Token::new(1, "a", "X", 0, "root"),
                Token::new(2, "b", "X", 1, "dep"),
                Token::new(3, "c", "X", 2, "dep"),
            ],
        )
        .unwrap();
        assert_eq!(s.token_depth(1), 0);
        assert_eq!(s.token_depth(2), 1);
        assert_eq!(s.token_depth(3), 2);
        assert_eq!(s.subtree_left_edge(2), 2);
    }

    #[test]
    fn rejects_cycles_and_bad_roots() {
        let cyclic = Sentence::new(
            "x",
            vec![
                Token::new(1, "a", "X", 0, "root"),
                Token::new(2, "b", "X", 3, "dep"),
                Token::new(3, "c", "X", 2, "dep"),
            ],
        );
        assert!(matches!(cyclic, Err(Error::Structure { .. })));
        let two_roots = Sentence::new(
            "x",
            vec![Token::new(1, "a", "X", 0, "root"), Token::new(2, "b", "X", 0, "root")],
        );
        assert!(two_roots.is_err());
    }

    #[test]
    fn segmentation_from_cuts_covers_sentence() {
        let s = c_est_sara();
        let seg = Segmentation::from_cuts(&s, &[2]);
        assert_eq!(seg.rhesis[0].text, "C'est");
        assert_eq!(seg.rhesis[1].text, "Sara.");
        assert_eq!(seg.cuts(), vec![2]);
        seg.validate(&s).unwrap();
        assert!(Segmentation::from_spans(&s, &[(1, 2), (4, 4)]).is_err());
    }
}

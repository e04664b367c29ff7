//! CoNLL-U reading and writing.
//!
//! Only the columns the segmenters need are kept: ID, FORM, UPOS, HEAD,
//! DEPREL and MISC. Multiword-token ranges (`3-4`) and empty nodes (`3.1`)
//! are skipped.

use std::io::{BufRead, Write};

use super::{Sentence, Token};
use crate::error::{Error, Result};

/// Parses a CoNLL-U document held in memory.
pub fn parse_conllu(input: &str) -> Result<Vec<Sentence>> {
    read_conllu(input.as_bytes())
}

/// Parses a CoNLL-U stream. LF and CRLF line endings are accepted.
pub fn read_conllu<R: BufRead>(reader: R) -> Result<Vec<Sentence>> {
    let mut sentences = Vec::new();
    let mut block = Block::default();

    for (lineno, line) in reader.lines().enumerate() {
        let lineno = lineno + 1;
        let line = line?;
        let line = line.strip_suffix('\r').unwrap_or(&line);

        if line.trim().is_empty() {
            block.flush(&mut sentences)?;
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(id) = comment.trim().strip_prefix("sent_id") {
                let id = id.trim_start().trim_start_matches('=').trim();
                if !id.is_empty() {
                    block.id = Some(id.to_string());
                }
            }
            continue;
        }

        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 10 {
            return Err(Error::Parse {
                line: lineno,
                message: format!("expected 10 tab-separated columns, found {}", cols.len()),
            });
        }
        if cols[0].contains('-') || cols[0].contains('.') {
            continue;
        }
        let parse_index = |field: &str, what: &str| {
            field.parse::<usize>().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("invalid {what} '{field}'"),
            })
        };
        let index = parse_index(cols[0], "ID")?;
        let head = parse_index(cols[6], "HEAD")?;
        if block.tokens.is_empty() {
            block.first_line = lineno;
        }
        block.tokens.push(Token {
            index,
            form: cols[1].to_string(),
            upos: cols[3].to_string(),
            head,
            deprel: if cols[7] == "_" { String::new() } else { cols[7].to_string() },
            misc: if cols[9] == "_" { None } else { Some(cols[9].to_string()) },
        });
    }
    block.flush(&mut sentences)?;
    Ok(sentences)
}

#[derive(Default)]
struct Block {
    id: Option<String>,
    tokens: Vec<Token>,
    first_line: usize,
}

impl Block {
    fn flush(&mut self, out: &mut Vec<Sentence>) -> Result<()> {
        if self.tokens.is_empty() {
            self.id = None;
            return Ok(());
        }
        let id = self
            .id
            .take()
            .unwrap_or_else(|| format!("s{}", out.len() + 1));
        let tokens = std::mem::take(&mut self.tokens);
        let sentence = Sentence::new(id, tokens).map_err(|e| match e {
            Error::Structure { sentence, message } => Error::Structure {
                sentence,
                message: format!("{message} (block starting at line {})", self.first_line),
            },
            other => other,
        })?;
        out.push(sentence);
        Ok(())
    }
}

/// Writes sentences as CoNLL-U with LF line endings. Columns that are not
/// modelled (LEMMA, XPOS, FEATS, DEPS) are written as `_`.
pub fn write_conllu<W: Write>(mut out: W, sentences: &[Sentence]) -> Result<()> {
    for s in sentences {
        writeln!(out, "# sent_id = {}", s.id)?;
        writeln!(out, "# text = {}", s.text)?;
        for t in &s.tokens {
            writeln!(
                out,
                "{}\t{}\t_\t{}\t_\t_\t{}\t{}\t_\t{}",
                t.index,
                t.form,
                t.upos,
                t.head,
                t.deprel,
                t.misc.as_deref().unwrap_or("_")
            )?;
        }
        writeln!(out)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const SARA: &str = "# sent_id = cls-4\n\
# text = C'est Sara.\n\
1\tC'\tce\tPRON\t_\t_\t3\tnsubj\t_\tSpaceAfter=No\n\
2\test\têtre\tAUX\t_\t_\t3\tcop\t_\t_\n\
3\tSara\tSara\tPROPN\t_\t_\t0\troot\t_\tSpaceAfter=No\n\
4\t.\t.\tPUNCT\t_\t_\t3\tpunct\t_\t_\n\n";

    #[test]
    fn reads_one_block() {
        let sentences = parse_conllu(SARA).unwrap();
        assert_eq!(sentences.len(), 1);
        let s = &sentences[0];
        assert_eq!(s.id, "cls-4");
        assert_eq!(s.len(), 4);
        assert_eq!(s.tokens.iter().filter(|t| t.head == 0).count(), 1);
        assert_eq!(s.text, "C'est Sara.");
    }

    #[test]
    fn empty_stream_gives_no_sentences() {
        assert!(parse_conllu("").unwrap().is_empty());
        assert!(parse_conllu("# only a comment\n\n").unwrap().is_empty());
    }

    #[test]
    fn head_out_of_range_is_structural() {
        let text = "1\ta\t_\tX\t_\t_\t0\troot\t_\t_\n\
2\tb\t_\tX\t_\t_\t99\tdep\t_\t_\n\
3\tc\t_\tX\t_\t_\t1\tdep\t_\t_\n";
        match parse_conllu(text) {
            Err(Error::Structure { sentence, .. }) => assert_eq!(sentence, "s1"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn column_count_error_names_line() {
        let text = "1\ta\t_\tX\t_\t_\t0\troot\t_\t_\n2\tb\tX\n";
        match parse_conllu(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn skips_multiword_ranges_and_accepts_crlf() {
        let text = "1-2\tdu\t_\t_\t_\t_\t_\t_\t_\t_\r\n\
1\tde\t_\tADP\t_\t_\t2\tcase\t_\t_\r\n\
2\tle\t_\tDET\t_\t_\t0\troot\t_\t_\r\n";
        let s = &parse_conllu(text).unwrap()[0];
        assert_eq!(s.len(), 2);
        assert_eq!(s.id, "s1");
    }

    #[test]
    fn write_then_read_preserves_sentences() {
        let sentences = parse_conllu(SARA).unwrap();
        let mut buf = Vec::new();
        write_conllu(&mut buf, &sentences).unwrap();
        let again = read_conllu(&buf[..]).unwrap();
        assert_eq!(again, sentences);
    }
}

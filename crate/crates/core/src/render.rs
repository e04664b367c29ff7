//! Output formats for segmentations.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::corpus::{Segmentation, Sentence};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    /// The `.rhz` format, one rhesis per line.
    Txt,
    /// One JSON object per rhesis per line.
    Records,
    /// An HTML fragment.
    Html,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "txt" => Ok(Format::Txt),
            "records" => Ok(Format::Records),
            "html" => Ok(Format::Html),
            other => Err(Error::Config(format!("unknown format '{other}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenderOptions {
    pub format: Format,
    pub html_class_prefix: String,
    pub include_ids: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            format: Format::Txt,
            html_class_prefix: "rhesis".to_string(),
            include_ids: true,
        }
    }
}

/// One rhesis per line and a blank line after each sentence.
pub fn render_text(segs: &[Segmentation]) -> String {
    let mut out = String::new();
    for seg in segs {
        for r in &seg.rhesis {
            out.push_str(&r.text);
            out.push('\n');
        }
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct Record<'a> {
    sentence_id: &'a str,
    start: usize,
    end: usize,
    text: &'a str,
}

/// Line-delimited JSON, one record per rhesis.
pub fn render_records(segs: &[Segmentation]) -> String {
    let mut out = String::new();
    for seg in segs {
        for r in &seg.rhesis {
            let record = Record {
                sentence_id: &seg.sentence_id,
                start: r.start,
                end: r.end,
                text: &r.text,
            };
            out.push_str(&serde_json::to_string(&record).expect("records serialize"));
            out.push('\n');
        }
    }
    out
}

pub fn escape_html(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            c => out.push(c),
        }
    }
    out
}

/// HTML fragment: a `<p>` per sentence and a no-wrap `<span>` per rhesis.
///
/// `sentences` supplies the separators between rhesis (a space, or nothing
/// when the boundary falls on `SpaceAfter=No`); when it is `None`, rhesis
/// are joined by single spaces.
pub fn render_html(segs: &[Segmentation], sentences: Option<&[Sentence]>, opts: &RenderOptions) -> String {
    let prefix = escape_html(&opts.html_class_prefix);
    let mut out = String::new();
    for (k, seg) in segs.iter().enumerate() {
        let sentence = sentences.and_then(|s| s.get(k)).filter(|s| s.id == seg.sentence_id);
        let id = escape_html(&seg.sentence_id);
        if opts.include_ids {
            let _ = write!(out, "<p class=\"{prefix}-sentence\" id=\"{id}\">");
        } else {
            let _ = write!(out, "<p class=\"{prefix}-sentence\">");
        }
        for (i, r) in seg.rhesis.iter().enumerate() {
            if i > 0 {
                let spaced = sentence.is_none_or(|s| s.token(r.start - 1).space_after());
                if spaced {
                    out.push(' ');
                }
            }
            let _ = write!(out, "<span class=\"{prefix}\"");
            if opts.include_ids {
                let _ = write!(out, " id=\"{id}-r{}\"", i + 1);
            }
            let _ = write!(
                out,
                " style=\"white-space:nowrap\">{}</span>",
                escape_html(&r.text)
            );
        }
        out.push_str("</p>\n");
    }
    out
}

/// Renders with the configured format.
pub fn render(segs: &[Segmentation], sentences: &[Sentence], opts: &RenderOptions) -> String {
    match opts.format {
        Format::Txt => render_text(segs),
        Format::Records => render_records(segs),
        Format::Html => render_html(segs, Some(sentences), opts),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Rhesis;

    fn seg(id: &str, texts: &[&str]) -> Segmentation {
        Segmentation {
            sentence_id: id.into(),
            rhesis: texts
                .iter()
                .enumerate()
                .map(|(k, t)| Rhesis {
                    start: k + 1,
                    end: k + 1,
                    text: t.to_string(),
                })
                .collect(),
        }
    }

    #[test]
    fn text_format() {
        let s = seg("s1", &["My classmates are monkeys,", "all of them except one."]);
        assert_eq!(
            render_text(&[s]),
            "My classmates are monkeys,\nall of them except one.\n\n"
        );
        assert_eq!(render_text(&[]), "");
    }

    #[test]
    fn html_escapes_and_ids() {
        let opts = RenderOptions::default();
        let html = render_html(&[seg("s7", &["a<b", "\"c\" & d"])], None, &opts);
        assert!(html.contains(">a&lt;b</span>"));
        assert!(html.contains(">&quot;c&quot; &amp; d</span>"));
        assert!(html.contains("id=\"s7-r1\""));
        assert!(html.contains("id=\"s7-r2\""));
        assert_eq!(html.matches("<span").count(), 2);
        assert!(html.find("s7-r1").unwrap() < html.find("s7-r2").unwrap());

        let bare = render_html(
            &[seg("s7", &["x"])],
            None,
            &RenderOptions {
                include_ids: false,
                ..RenderOptions::default()
            },
        );
        assert!(!bare.contains("id="));
    }

    #[test]
    fn records_are_json_lines() {
        let out = render_records(&[seg("s1", &["a", "b"])]);
        let lines: Vec<serde_json::Value> =
            out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[1]["text"], "b");
        assert_eq!(lines[1]["start"], 2);
    }
}

use std::collections::BTreeSet;

use rhesis::bridge::{export_candidates, write_candidates, ExportManifest};
use rhesis::corpus::{align_gold, parse_conllu, parse_gold, AlignedCorpus};
use rhesis::span::SpanConfig;

fn jardin() -> AlignedCorpus {
    let s = parse_conllu(include_str!("../data/jardin.conllu")).unwrap();
    let g = parse_gold(include_str!("../data/jardin.rhz")).unwrap();
    align_gold(&s, &g).unwrap()
}

fn gold_spans(c: &AlignedCorpus) -> BTreeSet<(String, usize, usize)> {
    c.entries
        .iter()
        .flat_map(|e| e.gold.rhesis.iter().map(move |r| (e.sentence.id.clone(), r.start, r.end)))
        .collect()
}

#[test]
fn zero_negatives_is_gold_only() {
    let c = jardin();
    let ex = export_candidates(&c, 0, 1, &SpanConfig::default()).unwrap();
    assert_eq!(ex.len(), c.gold_rhesis_count());
    assert!(ex.iter().all(|e| e.label == 1));
}

#[test]
fn negatives_avoid_gold_and_duplicates() {
    let c = jardin();
    let gold = gold_spans(&c);
    let ex = export_candidates(&c, 2, 9, &SpanConfig::default()).unwrap();
    let positives = ex.iter().filter(|e| e.label == 1).count();
    assert_eq!(positives, c.gold_rhesis_count());
    let mut seen = BTreeSet::new();
    for e in &ex {
        let key = (e.sentence_id.clone(), e.start, e.end);
        assert!(seen.insert(key.clone()), "duplicate {key:?}");
        assert_eq!(e.label == 1, gold.contains(&key));
        let s = c.sentences().find(|s| s.id == e.sentence_id).unwrap();
        assert_eq!(e.candidate_text, s.slice(e.start, e.end));
    }
}

#[test]
fn near_misses_share_one_boundary_when_available() {
    let c = jardin();
    let span = SpanConfig::default();
    let ex = export_candidates(&c, 2, 4, &span).unwrap();
    let mut checked = 0;
    for entry in &c.entries {
        let n = entry.sentence.len();
        let gold: BTreeSet<(usize, usize)> = entry.gold.rhesis.iter().map(|r| (r.start, r.end)).collect();
        // only sentences where every rhesis has plenty of one-boundary variants
        let plenty = entry.gold.rhesis.iter().all(|r| {
            (1..=n)
                .flat_map(|s| (s..=n).map(move |e| (s, e)))
                .filter(|&(s, e)| (s == r.start) != (e == r.end))
                .filter(|&(s, e)| s == e || span.fits(entry.sentence.slice(s, e)))
                .filter(|k| !gold.contains(k))
                .count()
                >= 2 * entry.gold.len()
        });
        if !plenty {
            continue;
        }
        checked += 1;
        for e in ex.iter().filter(|e| e.sentence_id == entry.sentence.id && e.label == 0) {
            assert!(
                gold.iter().any(|&(s, t)| (s == e.start) != (t == e.end)),
                "{} {}..{} shares no boundary",
                e.sentence_id,
                e.start,
                e.end
            );
        }
    }
    assert!(checked > 10, "only {checked} sentences checked");
}

#[test]
fn export_is_seeded() {
    let c = jardin();
    let span = SpanConfig::default();
    let bytes = |seed| {
        let ex = export_candidates(&c, 2, seed, &span).unwrap();
        let mut buf = Vec::new();
        write_candidates(&mut buf, &ex).unwrap();
        let manifest = ExportManifest::new(&c, &ex, 2, seed, &span).to_json().unwrap();
        (buf, manifest)
    };
    assert_eq!(bytes(11), bytes(11));
    assert_ne!(bytes(11).0, bytes(12).0);
}

#[test]
fn manifest_carries_fine_tuning_settings() {
    let c = jardin();
    let span = SpanConfig::default();
    let ex = export_candidates(&c, 1, 2, &span).unwrap();
    let m = ExportManifest::new(&c, &ex, 1, 2, &span);
    let json: serde_json::Value = serde_json::from_str(&m.to_json().unwrap()).unwrap();
    let ft = &json["fine_tuning"];
    assert_eq!(ft["max_seq_length"], 48);
    assert_eq!(ft["batch_size"], 16);
    assert_eq!(ft["learning_rate"], 2e-5);
    assert_eq!(ft["epochs"], 3);
    assert_eq!(m.split.held_out_sentence_ids.len(), 10);
    assert_eq!(m.positives + m.negatives, ex.len());
}

//! Segmentation of dependency-parsed sentences into rhesis, the short units
//! of meaning used by reading-assistance e-books.
//!
//! Three strategies share one span constraint (a maximum rhesis length):
//!
//! - [`cascade`]: ordered cutting rules (punctuation, clauses, prepositions,
//!   chunks, words) followed by greedy regrouping;
//! - [`tree`]: exact search for the best-scoring division of the dependency
//!   tree, with weights tuned by [`evo`];
//! - [`bridge`]: the most probable division under span probabilities from
//!   an external classifier, plus the candidate export that trains it.
//!
//! Sentences come in as CoNLL-U, gold segmentations as `.rhz` files
//! (one rhesis per line). [`eval`] scores outputs against gold and
//! [`render`] writes text, JSON records or HTML.
//!
//! ```
//! use rhesis::cascade::{cascade_and_regroup, CascadeConfig};
//! use rhesis::corpus::parse_conllu;
//!
//! let conllu = "1\tIl\t_\tPRON\t_\t_\t2\tnsubj\t_\t_\n\
//!               2\tdort\t_\tVERB\t_\t_\t0\troot\t_\tSpaceAfter=No\n\
//!               3\t.\t_\tPUNCT\t_\t_\t2\tpunct\t_\t_\n";
//! let sentence = &parse_conllu(conllu).unwrap()[0];
//! let out = cascade_and_regroup(sentence, &CascadeConfig::default());
//! assert_eq!(out.segmentation.rhesis[0].text, "Il dort.");
//! ```

pub mod bridge;
pub mod cascade;
pub mod cli;
pub mod config;
pub mod corpus;
pub mod error;
pub mod eval;
pub mod evo;
pub mod partition;
pub mod pipeline;
pub mod render;
pub mod span;
pub mod tree;

pub use error::{Error, Result};

//! Toolkit for modeling, validating and converting standardized lexical
//! resources.
//!
//! * [`xml`]: the XML subset every format here is written in.
//! * [`datcat`]: a data category registry with per-language value domains.
//! * [`lmf`]: component metamodels, their decoration with data categories,
//!   and validation of lexicon instances.
//! * [`tei`]: the dictionary vocabulary, its customization and validation.
//! * [`convert`]: flat morphological lexica, TEI entries and pronoun tables
//!   to and from lexicon instances.
//! * [`cli`]: the `lexkit` command line.

pub mod builtin;
pub mod cli;
pub mod convert;
pub mod datcat;
pub mod lmf;
pub mod report;
pub mod tei;
pub mod xml;

mod xmlread;

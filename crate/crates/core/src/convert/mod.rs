//! Conversions into and out of lexicon instances: flat morphological
//! lexica, dictionary entries and pronoun tables.

mod entry;
mod flat;
mod pronoun;

use std::fmt;

use thiserror::Error;

pub use entry::{lmf_to_tei, load_entry_mapping, tei_to_lmf, EntryMapping, MapRule};
pub use flat::{
    decode_code, flat_to_lmf, load_code_table, parse_flat_lexicon, parse_flat_line, CodeTable,
    FeatureBundle, FlatLexiconLine, LineErrorKind, Slot, UnknownCode, LEMMA, PART_OF_SPEECH,
    WORD_FORM,
};
pub use pronoun::{
    ingest_pronoun_table, parse_gloss, parse_pronoun_tsv, Gloss, PronounRow, GENDER, NUMBER,
    PERSON, PRONOUN,
};

use crate::xmlread::Malformed;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConvertError {
    #[error("{}{kind}", line_prefix(*.line))]
    Line {
        line: Option<usize>,
        kind: LineErrorKind,
    },
    #[error("{}", UnknownCodes(.0))]
    UnknownCode(Vec<UnknownCode>),
    #[error("{path}: no mapping for <{element}>")]
    UnmappedElement { path: String, element: String },
    #[error("{location}: no mapping for {component}/{category}")]
    UnmappedCategory {
        location: String,
        component: String,
        category: String,
    },
    #[error("{location}: {component} has no counterpart in a dictionary entry")]
    UnmappedComponent { location: String, component: String },
    #[error("invalid mapping: {0}")]
    BadMapping(String),
    #[error("{}bad gloss `{gloss}`", line_prefix(*.line))]
    BadGloss { line: Option<usize>, gloss: String },
    #[error("line {line}: {message}")]
    Table { line: usize, message: String },
    #[error("{0}")]
    ModelMismatch(String),
    #[error("{path}: {message}")]
    SchemaViolation { path: String, message: String },
}

fn line_prefix(line: Option<usize>) -> String {
    line.map(|l| format!("line {l}: ")).unwrap_or_default()
}

struct UnknownCodes<'a>(&'a [UnknownCode]);

impl fmt::Display for UnknownCodes<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl ConvertError {
    pub fn kind(&self) -> &'static str {
        match self {
            ConvertError::Line { kind, .. } => kind.as_str(),
            ConvertError::UnknownCode(_) => "UnknownCode",
            ConvertError::UnmappedElement { .. } => "UnmappedElement",
            ConvertError::UnmappedCategory { .. } => "UnmappedCategory",
            ConvertError::UnmappedComponent { .. } => "UnmappedComponent",
            ConvertError::BadMapping(_) => "BadMapping",
            ConvertError::BadGloss { .. } => "BadGloss",
            ConvertError::Table { .. } => "BadTable",
            ConvertError::ModelMismatch(_) => "ModelMismatch",
            ConvertError::SchemaViolation { .. } => "SchemaViolation",
        }
    }
}

impl From<Malformed> for ConvertError {
    fn from(m: Malformed) -> Self {
        ConvertError::SchemaViolation {
            path: m.path,
            message: m.message,
        }
    }
}

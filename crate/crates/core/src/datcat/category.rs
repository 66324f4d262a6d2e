use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CategoryKind {
    /// A placeholder descriptor such as `grammaticalGender`.
    Complex,
    /// An elementary value such as `feminine`.
    Simple,
}

impl CategoryKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CategoryKind::Complex => "complex",
            CategoryKind::Simple => "simple",
        }
    }
}

impl fmt::Display for CategoryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CategoryKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "complex" => Ok(CategoryKind::Complex),
            "simple" => Ok(CategoryKind::Simple),
            other => Err(format!("unknown category kind `{other}`")),
        }
    }
}

/// Generic datatypes a complex category may be constrained to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Datatype {
    String,
    Number,
    /// `YYYY-MM-DD`.
    Date,
    /// A whitespace-free token, restricted to the documented codes if any.
    Code,
}

impl Datatype {
    pub fn as_str(self) -> &'static str {
        match self {
            Datatype::String => "string",
            Datatype::Number => "number",
            Datatype::Date => "date",
            Datatype::Code => "code",
        }
    }

    /// Whether `literal` is a lexical form of this datatype.
    pub fn accepts(self, literal: &str) -> bool {
        match self {
            Datatype::String => true,
            Datatype::Number => literal.trim().parse::<f64>().is_ok_and(f64::is_finite),
            Datatype::Date => chrono::NaiveDate::parse_from_str(literal.trim(), "%Y-%m-%d").is_ok(),
            Datatype::Code => !literal.is_empty() && !literal.contains(char::is_whitespace),
        }
    }
}

impl fmt::Display for Datatype {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Datatype {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "string" => Ok(Datatype::String),
            "number" => Ok(Datatype::Number),
            "date" => Ok(Datatype::Date),
            "code" => Ok(Datatype::Code),
            other => Err(format!("unknown datatype `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocumentedCode {
    pub value: String,
    pub label: String,
}

/// The language-independent set of values a complex category admits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConceptualDomain {
    Datatype {
        datatype: Datatype,
        /// Closed list of admissible codes; empty means unrestricted.
        codes: Vec<DocumentedCode>,
    },
    /// Ordered set of simple category ids.
    Values(Vec<String>),
}

impl ConceptualDomain {
    pub fn values(&self) -> Option<&[String]> {
        match self {
            ConceptualDomain::Values(v) => Some(v),
            ConceptualDomain::Datatype { .. } => None,
        }
    }
}

/// Language-specific refinement of a category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LanguageSection {
    pub language: String,
    /// Terms used in this language to refer to the category.
    pub names: Vec<String>,
    pub definition_refinement: Option<String>,
    /// Subset of the conceptual domain that applies in this language.
    pub restricted_domain: Option<Vec<String>>,
}

impl LanguageSection {
    pub fn new<S: Into<String>>(language: &str, names: impl IntoIterator<Item = S>) -> Self {
        LanguageSection {
            language: language.to_string(),
            names: names.into_iter().map(Into::into).collect(),
            definition_refinement: None,
            restricted_domain: None,
        }
    }

    pub fn refine(mut self, text: &str) -> Self {
        self.definition_refinement = Some(text.to_string());
        self
    }

    pub fn restrict<S: Into<String>>(mut self, values: impl IntoIterator<Item = S>) -> Self {
        self.restricted_domain = Some(values.into_iter().map(Into::into).collect());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DataCategory {
    pub id: String,
    pub kind: CategoryKind,
    pub profiles: BTreeSet<String>,
    /// Language code to definition text.
    pub definitions: BTreeMap<String, String>,
    pub conceptual_domain: Option<ConceptualDomain>,
    pub language_sections: Vec<LanguageSection>,
}

impl DataCategory {
    fn with_kind(id: &str, kind: CategoryKind) -> Self {
        DataCategory {
            id: id.to_string(),
            kind,
            profiles: BTreeSet::new(),
            definitions: BTreeMap::new(),
            conceptual_domain: None,
            language_sections: Vec::new(),
        }
    }

    pub fn complex(id: &str) -> Self {
        DataCategory::with_kind(id, CategoryKind::Complex)
    }

    pub fn simple(id: &str) -> Self {
        DataCategory::with_kind(id, CategoryKind::Simple)
    }

    pub fn profile(mut self, profile: &str) -> Self {
        self.profiles.insert(profile.to_string());
        self
    }

    pub fn definition(mut self, language: &str, text: &str) -> Self {
        self.definitions.insert(language.to_string(), text.to_string());
        self
    }

    pub fn values<S: Into<String>>(mut self, values: impl IntoIterator<Item = S>) -> Self {
        self.conceptual_domain = Some(ConceptualDomain::Values(
            values.into_iter().map(Into::into).collect(),
        ));
        self
    }

    pub fn datatype(mut self, datatype: Datatype) -> Self {
        self.conceptual_domain = Some(ConceptualDomain::Datatype {
            datatype,
            codes: Vec::new(),
        });
        self
    }

    /// Datatype `code` restricted to the given `(value, label)` pairs.
    pub fn codes<'a>(mut self, codes: impl IntoIterator<Item = (&'a str, &'a str)>) -> Self {
        self.conceptual_domain = Some(ConceptualDomain::Datatype {
            datatype: Datatype::Code,
            codes: codes
                .into_iter()
                .map(|(value, label)| DocumentedCode {
                    value: value.to_string(),
                    label: label.to_string(),
                })
                .collect(),
        });
        self
    }

    pub fn section(mut self, section: LanguageSection) -> Self {
        self.language_sections.push(section);
        self
    }

    pub fn language_section(&self, language: &str) -> Option<&LanguageSection> {
        self.language_sections.iter().find(|s| s.language == language)
    }

    pub fn is_simple(&self) -> bool {
        self.kind == CategoryKind::Simple
    }
}

/// A feature value: either a reference to a simple category or free text.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Ref(String),
    Literal(String),
}

impl Value {
    pub fn reference(id: &str) -> Self {
        Value::Ref(id.to_string())
    }

    pub fn literal(text: &str) -> Self {
        Value::Literal(text.to_string())
    }

    pub fn text(&self) -> &str {
        match self {
            Value::Ref(s) | Value::Literal(s) => s,
        }
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Value::Literal(_))
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Ref(id) => write!(f, "/{id}/"),
            Value::Literal(s) => write!(f, "\"{s}\""),
        }
    }
}

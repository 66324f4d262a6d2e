use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use super::category::{CategoryKind, ConceptualDomain, DataCategory, Datatype, Value};
use crate::xml::is_element_name;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegistryError {
    #[error("category `{0}` is already registered")]
    DuplicateId(String),
    #[error("invalid category id `{0}`")]
    BadId(String),
    #[error("category `{category}`: domain member `{member}` is not registered")]
    UnknownDomainMember { category: String, member: String },
    #[error("category `{category}`: domain member `{member}` is not a simple category")]
    DomainMemberNotSimple { category: String, member: String },
    #[error("simple category `{0}` cannot carry a conceptual domain or restricted domain")]
    SimpleWithDomain(String),
    #[error("simple category `{0}` cannot carry a definition refinement")]
    SimpleWithRefinement(String),
    #[error("category `{0}` has an empty value domain")]
    EmptyDomain(String),
    #[error("category `{category}`: value `{value}` listed twice")]
    DuplicateValue { category: String, value: String },
    #[error("category `{category}`: language section `{language}` has no names")]
    EmptyNames { category: String, language: String },
    #[error("category `{category}`: language section `{language}` appears twice")]
    DuplicateSection { category: String, language: String },
    #[error("category `{category}`, language `{language}`: `{value}` is outside the conceptual domain")]
    RestrictionOutsideDomain {
        category: String,
        language: String,
        value: String,
    },
    #[error("category `{category}`, language `{language}`: restriction without a value domain")]
    RestrictionWithoutValues { category: String, language: String },
    #[error("unknown category `{0}`")]
    UnknownCategory(String),
    #[error("category `{0}` has no value-set conceptual domain")]
    NotValueConstrained(String),
    #[error("{path}: {message}")]
    SchemaViolation { path: String, message: String },
}

impl RegistryError {
    pub fn kind(&self) -> &'static str {
        match self {
            RegistryError::DuplicateId(..) => "DuplicateId",
            RegistryError::BadId(..) => "BadId",
            RegistryError::UnknownDomainMember { .. } => "UnknownDomainMember",
            RegistryError::DomainMemberNotSimple { .. } => "DomainMemberNotSimple",
            RegistryError::SimpleWithDomain(..) => "SimpleWithDomain",
            RegistryError::SimpleWithRefinement(..) => "SimpleWithRefinement",
            RegistryError::EmptyDomain(..) => "EmptyDomain",
            RegistryError::DuplicateValue { .. } => "DuplicateValue",
            RegistryError::EmptyNames { .. } => "EmptyNames",
            RegistryError::DuplicateSection { .. } => "DuplicateSection",
            RegistryError::RestrictionOutsideDomain { .. } => "RestrictionOutsideDomain",
            RegistryError::RestrictionWithoutValues { .. } => "RestrictionWithoutValues",
            RegistryError::UnknownCategory(..) => "UnknownCategory",
            RegistryError::NotValueConstrained(..) => "NotValueConstrained",
            RegistryError::SchemaViolation { .. } => "SchemaViolation",
        }
    }
}

/// Which constraint a value failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Constraint {
    /// Not a member of the (possibly language-restricted) value domain.
    NotInDomain {
        domain: Vec<String>,
        language: Option<String>,
    },
    /// A literal was required by a datatype, or the literal has the wrong form.
    Datatype(Datatype),
    /// A `code` literal outside the documented list.
    UndocumentedCode(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Ok,
    Violation { constraint: Constraint, message: String },
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, Verdict::Ok)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Ok => f.write_str("ok"),
            Verdict::Violation { message, .. } => f.write_str(message),
        }
    }
}

/// A set of data categories closed under domain references.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Registry {
    pub version: String,
    pub source: Option<String>,
    categories: BTreeMap<String, DataCategory>,
}

impl Registry {
    pub fn new(version: &str) -> Self {
        Registry {
            version: version.to_string(),
            source: None,
            categories: BTreeMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.categories.len()
    }

    pub fn is_empty(&self) -> bool {
        self.categories.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&DataCategory> {
        self.categories.get(id)
    }

    pub fn contains(&self, id: &str) -> bool {
        self.categories.contains_key(id)
    }

    /// Categories in id order.
    pub fn categories(&self) -> impl Iterator<Item = &DataCategory> {
        self.categories.values()
    }

    /// Adds `cat` after checking its invariants. On error the registry is
    /// left unchanged.
    pub fn register(&mut self, cat: DataCategory) -> Result<(), RegistryError> {
        if self.categories.contains_key(&cat.id) {
            return Err(RegistryError::DuplicateId(cat.id));
        }
        self.check(&cat)?;
        self.categories.insert(cat.id.clone(), cat);
        Ok(())
    }

    /// Builder form of [`Registry::register`].
    pub fn with(mut self, cat: DataCategory) -> Result<Self, RegistryError> {
        self.register(cat)?;
        Ok(self)
    }

    fn check(&self, cat: &DataCategory) -> Result<(), RegistryError> {
        let id = &cat.id;
        if !is_element_name(id) {
            return Err(RegistryError::BadId(id.clone()));
        }
        let mut languages = BTreeSet::new();
        for section in &cat.language_sections {
            if !languages.insert(section.language.as_str()) {
                return Err(RegistryError::DuplicateSection {
                    category: id.clone(),
                    language: section.language.clone(),
                });
            }
            if section.names.is_empty() {
                return Err(RegistryError::EmptyNames {
                    category: id.clone(),
                    language: section.language.clone(),
                });
            }
        }
        if cat.kind == CategoryKind::Simple {
            if cat.conceptual_domain.is_some()
                || cat.language_sections.iter().any(|s| s.restricted_domain.is_some())
            {
                return Err(RegistryError::SimpleWithDomain(id.clone()));
            }
            if cat.language_sections.iter().any(|s| s.definition_refinement.is_some()) {
                return Err(RegistryError::SimpleWithRefinement(id.clone()));
            }
            return Ok(());
        }
        let values = cat.conceptual_domain.as_ref().and_then(ConceptualDomain::values);
        if let Some(values) = values {
            if values.is_empty() {
                return Err(RegistryError::EmptyDomain(id.clone()));
            }
            let mut seen = BTreeSet::new();
            for member in values {
                if !seen.insert(member) {
                    return Err(RegistryError::DuplicateValue {
                        category: id.clone(),
                        value: member.clone(),
                    });
                }
                match self.categories.get(member) {
                    None => {
                        return Err(RegistryError::UnknownDomainMember {
                            category: id.clone(),
                            member: member.clone(),
                        })
                    }
                    Some(m) if !m.is_simple() => {
                        return Err(RegistryError::DomainMemberNotSimple {
                            category: id.clone(),
                            member: member.clone(),
                        })
                    }
                    Some(_) => {}
                }
            }
        }
        for section in &cat.language_sections {
            let Some(restricted) = &section.restricted_domain else {
                continue;
            };
            let Some(values) = values else {
                return Err(RegistryError::RestrictionWithoutValues {
                    category: id.clone(),
                    language: section.language.clone(),
                });
            };
            // Restriction never extends the conceptual domain.
            if let Some(outside) = restricted.iter().find(|v| !values.contains(v)) {
                return Err(RegistryError::RestrictionOutsideDomain {
                    category: id.clone(),
                    language: section.language.clone(),
                    value: outside.clone(),
                });
            }
        }
        Ok(())
    }

    fn require(&self, id: &str) -> Result<&DataCategory, RegistryError> {
        self.categories
            .get(id)
            .ok_or_else(|| RegistryError::UnknownCategory(id.to_string()))
    }

    /// Values admissible for `category_id`, restricted to `language` when
    /// that language has a restricted domain. Unknown languages fall back
    /// to the full conceptual domain.
    pub fn resolve_domain(
        &self,
        category_id: &str,
        language: Option<&str>,
    ) -> Result<&[String], RegistryError> {
        let cat = self.require(category_id)?;
        let values = cat
            .conceptual_domain
            .as_ref()
            .and_then(ConceptualDomain::values)
            .ok_or_else(|| RegistryError::NotValueConstrained(category_id.to_string()))?;
        let restricted = language
            .and_then(|lang| cat.language_section(lang))
            .and_then(|s| s.restricted_domain.as_deref());
        Ok(restricted.unwrap_or(values))
    }

    pub fn validate_value(
        &self,
        category_id: &str,
        value: &Value,
        language: Option<&str>,
    ) -> Result<Verdict, RegistryError> {
        let cat = self.require(category_id)?;
        let verdict = match &cat.conceptual_domain {
            Some(ConceptualDomain::Values(_)) => {
                let domain = self.resolve_domain(category_id, language)?;
                let restricted = language.is_some_and(|lang| {
                    cat.language_section(lang)
                        .is_some_and(|s| s.restricted_domain.is_some())
                });
                let member = matches!(value, Value::Ref(id) if domain.contains(id));
                if member {
                    Verdict::Ok
                } else {
                    let scope = if restricted {
                        format!("language domain ({})", language.unwrap_or_default())
                    } else {
                        "domain".to_string()
                    };
                    Verdict::Violation {
                        constraint: Constraint::NotInDomain {
                            domain: domain.to_vec(),
                            language: restricted.then(|| language.unwrap_or_default().to_string()),
                        },
                        message: format!(
                            "{value} not in {scope} {{{}}} of {category_id}",
                            domain.join(", ")
                        ),
                    }
                }
            }
            Some(ConceptualDomain::Datatype { datatype, codes }) => match value {
                Value::Ref(id) => Verdict::Violation {
                    constraint: Constraint::Datatype(*datatype),
                    message: format!(
                        "{category_id} expects a {datatype} literal, got reference /{id}/"
                    ),
                },
                Value::Literal(text) if !datatype.accepts(text) => Verdict::Violation {
                    constraint: Constraint::Datatype(*datatype),
                    message: format!("\"{text}\" is not a valid {datatype} for {category_id}"),
                },
                Value::Literal(text)
                    if !codes.is_empty() && !codes.iter().any(|c| c.value == *text) =>
                {
                    let allowed: Vec<String> = codes.iter().map(|c| c.value.clone()).collect();
                    Verdict::Violation {
                        message: format!(
                            "\"{text}\" is not a documented code of {category_id} {{{}}}",
                            allowed.join(", ")
                        ),
                        constraint: Constraint::UndocumentedCode(allowed),
                    }
                }
                Value::Literal(_) => Verdict::Ok,
            },
            None => Verdict::Ok,
        };
        Ok(verdict)
    }

    /// Categories whose section for `language` lists `name`, ignoring case.
    pub fn lookup_by_name(&self, name: &str, language: &str) -> Vec<&str> {
        let wanted = name.to_lowercase();
        self.categories
            .values()
            .filter(|c| {
                c.language_section(language)
                    .is_some_and(|s| s.names.iter().any(|n| n.to_lowercase() == wanted))
            })
            .map(|c| c.id.as_str())
            .collect()
    }

    /// True when `id` names a complex category with a value-set domain.
    pub fn is_value_constrained(&self, id: &str) -> bool {
        self.get(id)
            .and_then(|c| c.conceptual_domain.as_ref())
            .is_some_and(|d| d.values().is_some())
    }
}

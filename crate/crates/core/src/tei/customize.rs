use std::fmt;

use thiserror::Error;

use super::content::ContentModel;
use super::schema::{ChangeRecord, ClassSpec, ElementSpec, SpecStatus, TeiSchema};
use crate::xml::is_element_name;

/// One change to a schema. Directives are applied in order, each against the
/// schema produced by the previous ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Directive {
    /// Keep only the listed members of a class.
    RestrictClass { class: String, keep: Vec<String> },
    /// Declare a new text element and make it a member of a class.
    AddElement {
        name: String,
        documentation: String,
        class: String,
    },
    /// Close the set of text values an element may hold.
    ConstrainValues { element: String, values: Vec<String> },
}

impl fmt::Display for Directive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Directive::RestrictClass { class, keep } => {
                write!(f, "restrictClass {class}: keep {{{}}}", keep.join(", "))
            }
            Directive::AddElement { name, class, .. } => {
                write!(f, "addElement {name} in {class}")
            }
            Directive::ConstrainValues { element, values } => {
                write!(f, "constrainValues {element}: {{{}}}", values.join(", "))
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Customization {
    pub directives: Vec<Directive>,
}

impl Customization {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn restrict_class(mut self, class: &str, keep: &[&str]) -> Self {
        self.directives.push(Directive::RestrictClass {
            class: class.to_string(),
            keep: keep.iter().map(|s| s.to_string()).collect(),
        });
        self
    }

    pub fn add_element(mut self, name: &str, class: &str, documentation: &str) -> Self {
        self.directives.push(Directive::AddElement {
            name: name.to_string(),
            documentation: documentation.to_string(),
            class: class.to_string(),
        });
        self
    }

    pub fn constrain_values(mut self, element: &str, values: &[&str]) -> Self {
        self.directives.push(Directive::ConstrainValues {
            element: element.to_string(),
            values: values.iter().map(|s| s.to_string()).collect(),
        });
        self
    }

    pub fn is_empty(&self) -> bool {
        self.directives.is_empty()
    }
}

/// Errors name the 1-based index of the offending directive.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CustomizationError {
    #[error("directive {directive}: unknown class `{class}`")]
    UnknownClass { directive: usize, class: String },
    #[error("directive {directive}: unknown element `{element}`")]
    UnknownElement { directive: usize, element: String },
    #[error("directive {directive}: `{member}` is not a member of {class}")]
    KeptMemberNotInClass {
        directive: usize,
        class: String,
        member: String,
    },
    #[error("directive {directive}: empty value set for `{element}`")]
    EmptyValueSet { directive: usize, element: String },
    #[error("directive {directive}: element `{element}` is already declared")]
    DuplicateElement { directive: usize, element: String },
    #[error("directive {directive}: invalid element name `{name}`")]
    BadName { directive: usize, name: String },
    #[error("{path}: {message}")]
    SchemaViolation { path: String, message: String },
}

impl CustomizationError {
    pub fn kind(&self) -> &'static str {
        match self {
            CustomizationError::UnknownClass { .. } => "UnknownClass",
            CustomizationError::UnknownElement { .. } => "UnknownElement",
            CustomizationError::KeptMemberNotInClass { .. } => "KeptMemberNotInClass",
            CustomizationError::EmptyValueSet { .. } => "EmptyValueSet",
            CustomizationError::DuplicateElement { .. } => "DuplicateElement",
            CustomizationError::BadName { .. } => "BadName",
            CustomizationError::SchemaViolation { .. } => "SchemaViolation",
        }
    }

    pub fn directive(&self) -> Option<usize> {
        match self {
            CustomizationError::UnknownClass { directive, .. }
            | CustomizationError::UnknownElement { directive, .. }
            | CustomizationError::KeptMemberNotInClass { directive, .. }
            | CustomizationError::EmptyValueSet { directive, .. }
            | CustomizationError::DuplicateElement { directive, .. }
            | CustomizationError::BadName { directive, .. } => Some(*directive),
            CustomizationError::SchemaViolation { .. } => None,
        }
    }
}

fn mark_changed(status: &mut SpecStatus) {
    if *status == SpecStatus::Base {
        *status = SpecStatus::Changed;
    }
}

fn dedup(items: &[String]) -> Vec<String> {
    let mut out: Vec<String> = Vec::with_capacity(items.len());
    for i in items {
        if !out.contains(i) {
            out.push(i.clone());
        }
    }
    out
}

/// Returns a new schema; everything a directive does not mention is kept as is.
pub fn apply_customization(
    schema: &TeiSchema,
    cust: &Customization,
) -> Result<TeiSchema, CustomizationError> {
    let mut s = schema.clone();
    for (i, d) in cust.directives.iter().enumerate() {
        let directive = i + 1;
        match d {
            Directive::RestrictClass { class, keep } => {
                let spec = s
                    .classes
                    .get_mut(class)
                    .ok_or_else(|| CustomizationError::UnknownClass {
                        directive,
                        class: class.clone(),
                    })?;
                if let Some(m) = keep.iter().find(|m| !spec.members.contains(m)) {
                    return Err(CustomizationError::KeptMemberNotInClass {
                        directive,
                        class: class.clone(),
                        member: m.clone(),
                    });
                }
                spec.members.retain(|m| keep.contains(m));
                mark_changed(&mut spec.status);
            }
            Directive::AddElement {
                name,
                documentation,
                class,
            } => {
                if !is_element_name(name) {
                    return Err(CustomizationError::BadName {
                        directive,
                        name: name.clone(),
                    });
                }
                if s.elements.contains_key(name) {
                    return Err(CustomizationError::DuplicateElement {
                        directive,
                        element: name.clone(),
                    });
                }
                let spec: &mut ClassSpec =
                    s.classes
                        .get_mut(class)
                        .ok_or_else(|| CustomizationError::UnknownClass {
                            directive,
                            class: class.clone(),
                        })?;
                spec.members.push(name.clone());
                mark_changed(&mut spec.status);
                s.elements.insert(
                    name.clone(),
                    ElementSpec {
                        name: name.clone(),
                        documentation: documentation.clone(),
                        content: ContentModel::Text,
                        value_constraint: None,
                        status: SpecStatus::Added,
                    },
                );
            }
            Directive::ConstrainValues { element, values } => {
                if values.is_empty() {
                    return Err(CustomizationError::EmptyValueSet {
                        directive,
                        element: element.clone(),
                    });
                }
                let spec = s.elements.get_mut(element).ok_or_else(|| {
                    CustomizationError::UnknownElement {
                        directive,
                        element: element.clone(),
                    }
                })?;
                spec.value_constraint = Some(dedup(values));
                mark_changed(&mut spec.status);
            }
        }
        s.changelog.push(ChangeRecord {
            directive: s.changelog.len() + 1,
            summary: d.to_string(),
        });
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tei::{base_dictionary_schema, validate_entry, TeiViolationKind, GRAM_PART};
    use crate::xml::parse_xml;

    const TABLE: &str = include_str!("../../../../fixtures/tei/table.xml");
    const MOOD: &str = include_str!("../../../../fixtures/tei/mood-entry.xml");
    const POLITENESS: &str = include_str!("../../../../fixtures/tei/politeness-entry.xml");

    fn sample_customization() -> Customization {
        Customization::new()
            .restrict_class(GRAM_PART, &["pos", "gen", "subc"])
            .add_element("politeness", GRAM_PART, "politeness level")
            .constrain_values("gen", &["m", "f"])
    }

    #[test]
    fn restriction_disallows_mood() {
        let base = base_dictionary_schema();
        let mood = parse_xml(MOOD).unwrap();
        assert!(validate_entry(&mood, &base).is_ok());
        let s = apply_customization(&base, &Customization::new().restrict_class(GRAM_PART, &["pos", "gen", "subc"])).unwrap();
        let r = validate_entry(&mood, &s);
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].kind, TeiViolationKind::UndeclaredElementInContext);
        assert_eq!(r.violations[0].path, "/entry/gramGrp[1]/mood[1]");
        assert_eq!(s.class_members(GRAM_PART), ["pos", "gen", "subc"]);
        assert!(s.element("mood").is_some());
    }

    #[test]
    fn added_element_validates() {
        let base = base_dictionary_schema();
        let entry = parse_xml(POLITENESS).unwrap();
        assert_eq!(
            validate_entry(&entry, &base).count(TeiViolationKind::UndeclaredElement),
            1
        );
        let s = apply_customization(&base, &sample_customization()).unwrap();
        assert!(validate_entry(&entry, &s).is_ok());
        assert_eq!(s.element("politeness").unwrap().status, SpecStatus::Added);
    }

    #[test]
    fn value_constraint_is_exact() {
        let s = apply_customization(
            &base_dictionary_schema(),
            &Customization::new().constrain_values("gen", &["m", "f"]),
        )
        .unwrap();
        let r = validate_entry(&parse_xml(TABLE).unwrap(), &s);
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].kind, TeiViolationKind::ValueOutOfSet);
        assert!(r.violations[0].message.contains("\"f.\""));
        let ok = "<entry><form><orth>x</orth></form><gramGrp><gen> f </gen></gramGrp></entry>";
        assert!(validate_entry(&parse_xml(ok).unwrap(), &s).is_ok());
        let bad = "<entry><form><orth>x</orth></form><gramGrp><gen>feminine</gen></gramGrp></entry>";
        assert_eq!(validate_entry(&parse_xml(bad).unwrap(), &s).count(TeiViolationKind::ValueOutOfSet), 1);
    }

    #[test]
    fn errors_carry_directive_index() {
        let base = base_dictionary_schema();
        let cases = [
            (Customization::new().restrict_class("model.none", &[]), "UnknownClass", 1),
            (
                Customization::new().constrain_values("gen", &["m"]).constrain_values("xyz", &["a"]),
                "UnknownElement",
                2,
            ),
            (Customization::new().restrict_class(GRAM_PART, &["orth"]), "KeptMemberNotInClass", 1),
            (Customization::new().constrain_values("gen", &[]), "EmptyValueSet", 1),
            (Customization::new().add_element("pos", GRAM_PART, ""), "DuplicateElement", 1),
            (Customization::new().add_element("9x", GRAM_PART, ""), "BadName", 1),
        ];
        for (cust, kind, index) in cases {
            let e = apply_customization(&base, &cust).unwrap_err();
            assert_eq!(e.kind(), kind);
            assert_eq!(e.directive(), Some(index));
        }
    }

    #[test]
    fn input_schema_untouched() {
        let base = base_dictionary_schema();
        let after = apply_customization(&base, &sample_customization()).unwrap();
        assert_eq!(base, base_dictionary_schema());
        assert_eq!(after.changelog().len(), 3);
        assert!(after.is_consistent());
        assert_eq!(apply_customization(&base, &Customization::new()).unwrap(), base);
    }
}

use std::collections::BTreeMap;
use std::fmt;

use super::content::{ContentModel, Particle};
use crate::xml::{ElementNode, XmlTree};
use crate::xmlread::children_with_paths;

pub const GRAM_PART: &str = "model.gramPart";

/// Whether a schema item comes from the base vocabulary or a customization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecStatus {
    Base,
    Added,
    Changed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementSpec {
    pub name: String,
    pub documentation: String,
    pub content: ContentModel,
    /// Closed set of admissible trimmed text values.
    pub value_constraint: Option<Vec<String>>,
    pub status: SpecStatus,
}

impl ElementSpec {
    pub fn text(name: &str, documentation: &str) -> Self {
        ElementSpec {
            name: name.to_string(),
            documentation: documentation.to_string(),
            content: ContentModel::Text,
            value_constraint: None,
            status: SpecStatus::Base,
        }
    }

    pub fn container(name: &str, documentation: &str, particle: Particle) -> Self {
        ElementSpec {
            content: ContentModel::Elements(particle),
            ..ElementSpec::text(name, documentation)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassSpec {
    pub name: String,
    pub documentation: String,
    /// Members in declaration order.
    pub members: Vec<String>,
    pub status: SpecStatus,
}

/// One applied customization directive, for the documentation changelog.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChangeRecord {
    pub directive: usize,
    pub summary: String,
}

/// Element and class vocabulary with content models.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TeiSchema {
    pub(crate) elements: BTreeMap<String, ElementSpec>,
    pub(crate) classes: BTreeMap<String, ClassSpec>,
    pub(crate) changelog: Vec<ChangeRecord>,
}

impl TeiSchema {
    pub fn element(&self, name: &str) -> Option<&ElementSpec> {
        self.elements.get(name)
    }

    pub fn elements(&self) -> impl Iterator<Item = &ElementSpec> {
        self.elements.values()
    }

    pub fn class(&self, name: &str) -> Option<&ClassSpec> {
        self.classes.get(name)
    }

    pub fn classes(&self) -> impl Iterator<Item = &ClassSpec> {
        self.classes.values()
    }

    pub fn class_members(&self, name: &str) -> &[String] {
        self.classes.get(name).map_or(&[], |c| c.members.as_slice())
    }

    /// Classes that currently list `element`.
    pub fn classes_of(&self, element: &str) -> Vec<&str> {
        self.classes
            .values()
            .filter(|c| c.members.iter().any(|m| m == element))
            .map(|c| c.name.as_str())
            .collect()
    }

    pub fn changelog(&self) -> &[ChangeRecord] {
        &self.changelog
    }

    /// Every class member is declared and every class reference resolves.
    pub fn is_consistent(&self) -> bool {
        let members_ok = self
            .classes
            .values()
            .flat_map(|c| &c.members)
            .all(|m| self.elements.contains_key(m));
        let refs_ok = self.elements.values().all(|e| match &e.content {
            ContentModel::Elements(p) => {
                p.referenced_classes().iter().all(|c| self.classes.contains_key(*c))
                    && p.referenced_names(self).iter().all(|n| self.elements.contains_key(n))
            }
            _ => true,
        });
        members_ok && refs_ok
    }
}

/// A desk-scale subset of the dictionary vocabulary: twelve elements and the
/// grammatical-descriptor class.
pub fn base_dictionary_schema() -> TeiSchema {
    let el = Particle::element;
    let elements = [
        ElementSpec::container(
            "entry",
            "A single structured dictionary entry.",
            Particle::Seq(vec![
                el("form"),
                el("gramGrp").optional(),
                el("def").many(),
                el("cit").many(),
            ]),
        ),
        ElementSpec::container(
            "form",
            "Groups the written forms of the headword.",
            el("orth").at_least_one(),
        ),
        ElementSpec::text("orth", "Orthographic form of the headword."),
        ElementSpec::container(
            "gramGrp",
            "Groups grammatical descriptors of the entry; each descriptor at most once, in any order.",
            Particle::EachOnce(vec![Particle::class(GRAM_PART)]),
        ),
        ElementSpec::text("pos", "Part of speech."),
        ElementSpec::text("gen", "Grammatical gender."),
        ElementSpec::text("num", "Grammatical number."),
        ElementSpec::text("subc", "Subcategorization, such as transitivity of a verb."),
        ElementSpec::text("mood", "Grammatical mood of a verb."),
        ElementSpec::text("def", "Definition of the sense."),
        ElementSpec::container("cit", "A citation illustrating usage.", el("quote")),
        ElementSpec::text("quote", "Quoted example text."),
    ];
    let gram = ClassSpec {
        name: GRAM_PART.to_string(),
        documentation: "Grammatical descriptors admitted inside gramGrp.".to_string(),
        members: ["pos", "gen", "num", "subc", "mood"].map(String::from).to_vec(),
        status: SpecStatus::Base,
    };
    TeiSchema {
        elements: elements.into_iter().map(|e| (e.name.clone(), e)).collect(),
        classes: BTreeMap::from([(gram.name.clone(), gram)]),
        changelog: Vec::new(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TeiViolationKind {
    /// The element is not declared at all.
    UndeclaredElement,
    /// Declared, but not admitted by the parent's content model.
    UndeclaredElementInContext,
    /// The children do not match the content model's order or counts.
    CardinalityViolation,
    /// Text outside the element's closed value set.
    ValueOutOfSet,
    /// Character data where only elements are admitted.
    UnexpectedText,
}

impl TeiViolationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TeiViolationKind::UndeclaredElement => "UndeclaredElement",
            TeiViolationKind::UndeclaredElementInContext => "UndeclaredElementInContext",
            TeiViolationKind::CardinalityViolation => "CardinalityViolation",
            TeiViolationKind::ValueOutOfSet => "ValueOutOfSet",
            TeiViolationKind::UnexpectedText => "UnexpectedText",
        }
    }
}

impl fmt::Display for TeiViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TeiViolation {
    pub path: String,
    pub kind: TeiViolationKind,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TeiReport {
    pub violations: Vec<TeiViolation>,
}

impl TeiReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn count(&self, kind: TeiViolationKind) -> usize {
        self.violations.iter().filter(|v| v.kind == kind).count()
    }
}

pub fn validate_entry(tree: &XmlTree, schema: &TeiSchema) -> TeiReport {
    let mut out = Vec::new();
    let root = tree.root();
    let path = format!("/{}", root.name_str());
    if root.name_str() != "entry" {
        let kind = if schema.element(root.name_str()).is_some() {
            TeiViolationKind::UndeclaredElementInContext
        } else {
            TeiViolationKind::UndeclaredElement
        };
        out.push(TeiViolation {
            path,
            kind,
            message: format!("expected <entry> as root, found <{}>", root.name_str()),
        });
    } else {
        validate_element(root, &path, schema, &mut out);
    }
    TeiReport { violations: out }
}

fn misplaced(child: &ElementNode, path: String, parent: &str, schema: &TeiSchema) -> TeiViolation {
    if schema.element(child.name_str()).is_some() {
        TeiViolation {
            path,
            kind: TeiViolationKind::UndeclaredElementInContext,
            message: format!("<{}> is not allowed in <{parent}>", child.name_str()),
        }
    } else {
        TeiViolation {
            path,
            kind: TeiViolationKind::UndeclaredElement,
            message: format!("<{}> is not declared in the schema", child.name_str()),
        }
    }
}

fn validate_element(e: &ElementNode, path: &str, schema: &TeiSchema, out: &mut Vec<TeiViolation>) {
    let spec = schema.element(e.name_str()).expect("caller checked declaration");
    let children = children_with_paths(e, path);
    match &spec.content {
        ContentModel::Empty | ContentModel::Text => {
            for (child, cpath) in children {
                out.push(misplaced(child, cpath, e.name_str(), schema));
            }
            if matches!(spec.content, ContentModel::Empty) && e.has_significant_text() {
                out.push(TeiViolation {
                    path: path.to_string(),
                    kind: TeiViolationKind::UnexpectedText,
                    message: format!("<{}> must be empty", e.name_str()),
                });
            }
            if let Some(values) = &spec.value_constraint {
                let text = e.text();
                let text = text.trim();
                if !values.iter().any(|v| v == text) {
                    out.push(TeiViolation {
                        path: path.to_string(),
                        kind: TeiViolationKind::ValueOutOfSet,
                        message: format!(
                            "\"{text}\" is not one of {{{}}} for <{}>",
                            values.join(", "),
                            e.name_str()
                        ),
                    });
                }
            }
        }
        ContentModel::Elements(particle) => {
            if e.has_significant_text() {
                out.push(TeiViolation {
                    path: path.to_string(),
                    kind: TeiViolationKind::UnexpectedText,
                    message: format!("<{}> admits only elements", e.name_str()),
                });
            }
            let allowed = particle.referenced_names(schema);
            let mut kept = Vec::new();
            for (child, cpath) in children {
                if allowed.contains(child.name_str()) && schema.element(child.name_str()).is_some() {
                    kept.push(child.name_str());
                    validate_element(child, &cpath, schema, out);
                } else {
                    out.push(misplaced(child, cpath, e.name_str(), schema));
                }
            }
            if !particle.matches(schema, &kept) {
                out.push(TeiViolation {
                    path: path.to_string(),
                    kind: TeiViolationKind::CardinalityViolation,
                    message: format!(
                        "children ({}) of <{}> do not match {}",
                        kept.join(", "),
                        e.name_str(),
                        particle
                    ),
                });
            }
        }
    }
}

use std::fmt;

use super::instance::{InstancePath, LmfInstance};
use super::metamodel::GLOBAL_INFORMATION;
use super::model::LexicalModel;
use crate::datcat::{Constraint, Verdict};

/// Category holding the language of a whole lexicon on its global information.
pub const LANGUAGE_CATEGORY: &str = "language";

pub const DEFAULT_MAX_RECURSION: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    UnknownComponent,
    CardinalityViolation,
    UndeclaredCategory,
    ValueOutOfDomain,
    DatatypeMismatch,
}

impl ViolationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationKind::UnknownComponent => "UnknownComponent",
            ViolationKind::CardinalityViolation => "CardinalityViolation",
            ViolationKind::UndeclaredCategory => "UndeclaredCategory",
            ViolationKind::ValueOutOfDomain => "ValueOutOfDomain",
            ViolationKind::DatatypeMismatch => "DatatypeMismatch",
        }
    }
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub path: InstancePath,
    /// Index into the node's features when the violation concerns one.
    pub feature: Option<usize>,
    pub kind: ViolationKind,
    /// Human-readable form of `path`.
    pub location: String,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn len(&self) -> usize {
        self.violations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn count(&self, kind: ViolationKind) -> usize {
        self.violations.iter().filter(|v| v.kind == kind).count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValidatorOptions {
    /// Longest chain of directly nested nodes of the same component.
    pub max_recursion: usize,
}

impl Default for ValidatorOptions {
    fn default() -> Self {
        ValidatorOptions {
            max_recursion: DEFAULT_MAX_RECURSION,
        }
    }
}

pub fn validate_instance(inst: &LmfInstance, model: &LexicalModel) -> ValidationReport {
    validate_instance_with(inst, model, ValidatorOptions::default())
}

/// Checks structure, declared categories and values. The root may be any
/// component of the metamodel, so entries can be checked on their own.
pub fn validate_instance_with(
    inst: &LmfInstance,
    model: &LexicalModel,
    options: ValidatorOptions,
) -> ValidationReport {
    let mut v = Validator {
        model,
        root: inst,
        options,
        out: Vec::new(),
    };
    v.node(inst, InstancePath::root(), None, 1);
    ValidationReport { violations: v.out }
}

struct Validator<'a> {
    model: &'a LexicalModel,
    root: &'a LmfInstance,
    options: ValidatorOptions,
    out: Vec<Violation>,
}

/// Language declared on a lexicon through its global information.
fn declared_language(node: &LmfInstance) -> Option<&str> {
    node.children_named(GLOBAL_INFORMATION)
        .find_map(|g| g.value_of(LANGUAGE_CATEGORY))
        .map(|v| v.text())
}

impl<'a> Validator<'a> {
    fn push(&mut self, path: &InstancePath, feature: Option<usize>, kind: ViolationKind, message: String) {
        self.out.push(Violation {
            location: path.render(self.root),
            path: path.clone(),
            feature,
            kind,
            message,
        });
    }

    fn node(&mut self, node: &'a LmfInstance, path: InstancePath, inherited: Option<&'a str>, run: usize) {
        let mm = self.model.metamodel();
        if !mm.has_component(&node.component) {
            self.push(
                &path,
                None,
                ViolationKind::UnknownComponent,
                format!("component `{}` is not part of the model", node.component),
            );
            return;
        }
        let language = node
            .language
            .as_deref()
            .or_else(|| declared_language(node))
            .or(inherited);

        for (i, f) in node.features.iter().enumerate() {
            if !self.model.allows(&node.component, &f.category) {
                self.push(
                    &path,
                    Some(i),
                    ViolationKind::UndeclaredCategory,
                    format!("`{}` is not declared for {}", f.category, node.component),
                );
                continue;
            }
            let verdict = self
                .model
                .registry()
                .validate_value(&f.category, &f.value, language)
                .expect("decorated categories are registered");
            if let Verdict::Violation { constraint, message } = verdict {
                let kind = match constraint {
                    Constraint::NotInDomain { .. } => ViolationKind::ValueOutOfDomain,
                    Constraint::Datatype(_) | Constraint::UndocumentedCode(_) => {
                        ViolationKind::DatatypeMismatch
                    }
                };
                self.push(&path, Some(i), kind, message);
            }
        }

        for (child, card) in mm.children_of(&node.component) {
            let count = node.children_named(child).count();
            if !card.admits(count) {
                self.push(
                    &path,
                    None,
                    ViolationKind::CardinalityViolation,
                    format!(
                        "{} holds {count} {child}, expected {card}",
                        node.component
                    ),
                );
            }
        }

        for (i, child) in node.children.iter().enumerate() {
            let cpath = path.child(i);
            if mm.has_component(&child.component)
                && mm.edge(&node.component, &child.component).is_none()
            {
                self.push(
                    &cpath,
                    None,
                    ViolationKind::CardinalityViolation,
                    format!("{} is not permitted under {}", child.component, node.component),
                );
                continue;
            }
            let child_run = if child.component == node.component { run + 1 } else { 1 };
            if child_run > self.options.max_recursion {
                self.push(
                    &cpath,
                    None,
                    ViolationKind::CardinalityViolation,
                    format!(
                        "{} nested more than {} levels deep",
                        child.component, self.options.max_recursion
                    ),
                );
                continue;
            }
            self.node(child, cpath, language, child_run);
        }
    }
}

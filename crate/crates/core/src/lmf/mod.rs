//! Lexical metamodels and lexicon instances.
//!
//! A [`Metamodel`] is a graph of components with cardinalities; the core one
//! can be grown with [`Extension`]s. Decorating a metamodel with data
//! categories gives a [`LexicalModel`], against which [`LmfInstance`] trees
//! are validated and (de)serialized in any isomorphic XML vocabulary.

mod instance;
mod io;
mod metamodel;
mod model;
mod validate;

use thiserror::Error;

pub use instance::{Feature, InstancePath, LmfInstance};
pub use io::{load_model, parse_instance, save_model, serialize_instance, ModelDescription};
pub use metamodel::{
    core_metamodel, full_form_metamodel, morphology_extension, Cardinality, Component, Edge,
    Extension, Metamodel, FORM, GLOBAL_INFORMATION, INFLEXION, LEXICAL_ENTRY, LEXICON, MORPHOLOGY,
    PARADIGM, SENSE,
};
pub use model::{decorate, default_element_name, LexicalModel, Vocabulary};
pub use validate::{
    validate_instance, validate_instance_with, ValidationReport, ValidatorOptions, Violation,
    ViolationKind, DEFAULT_MAX_RECURSION, LANGUAGE_CATEGORY,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LmfError {
    #[error("unknown component `{0}`")]
    UnknownComponent(String),
    #[error("unknown attach point `{0}`")]
    UnknownAttachPoint(String),
    #[error("component name `{0}` already in use")]
    NameCollision(String),
    #[error("invalid name `{0}`")]
    BadName(String),
    #[error("edge {parent} -> {child}: {reason}")]
    InvalidEdge {
        parent: String,
        child: String,
        reason: String,
    },
    #[error("component `{0}` is not reachable from the root")]
    Unreachable(String),
    #[error("unknown category `{0}`")]
    UnknownCategory(String),
    #[error("`{0}` is a simple category and cannot decorate a component")]
    SimpleAsDescriptor(String),
    #[error("`{category}` is not among the categories allowed on {component}")]
    CategoryNotAllowed { component: String, category: String },
    #[error("`{category}` decorates {component} twice")]
    DuplicateDecoration { component: String, category: String },
    #[error("vocabulary maps both `{first}` and `{second}` to <{element}>")]
    NonInjectiveVocabulary {
        first: String,
        second: String,
        element: String,
    },
    #[error("{path}: {message}")]
    SchemaViolation { path: String, message: String },
}

impl LmfError {
    pub fn kind(&self) -> &'static str {
        match self {
            LmfError::UnknownComponent(..) => "UnknownComponent",
            LmfError::UnknownAttachPoint(..) => "UnknownAttachPoint",
            LmfError::NameCollision(..) => "NameCollision",
            LmfError::BadName(..) => "BadName",
            LmfError::InvalidEdge { .. } => "InvalidEdge",
            LmfError::Unreachable(..) => "Unreachable",
            LmfError::UnknownCategory(..) => "UnknownCategory",
            LmfError::SimpleAsDescriptor(..) => "SimpleAsDescriptor",
            LmfError::CategoryNotAllowed { .. } => "CategoryNotAllowed",
            LmfError::DuplicateDecoration { .. } => "DuplicateDecoration",
            LmfError::NonInjectiveVocabulary { .. } => "NonInjectiveVocabulary",
            LmfError::SchemaViolation { .. } => "SchemaViolation",
        }
    }
}

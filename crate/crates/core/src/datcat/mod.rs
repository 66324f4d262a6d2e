//! Data category registry.
//!
//! Categories live on two levels. The first is language independent: a
//! persistent id, profiles, definitions and, for complex categories, a
//! conceptual domain (a datatype or a set of simple categories). The second
//! is a list of language sections giving the names used in that language,
//! an optional refinement of the definition and an optional subset of the
//! conceptual domain that applies there.

mod category;
mod io;
mod registry;

pub use category::{
    CategoryKind, ConceptualDomain, DataCategory, Datatype, DocumentedCode, LanguageSection, Value,
};
pub use io::{load_registry, save_registry};
pub use registry::{Constraint, Registry, RegistryError, Verdict};

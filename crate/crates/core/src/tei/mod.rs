//! Dictionary entry schema: elements, classes, content models, the three
//! customization directives, entry validation and generated documentation.

mod content;
mod customize;
mod doc;
mod io;
mod schema;

pub use content::{ContentModel, Particle};
pub use customize::{apply_customization, Customization, CustomizationError, Directive};
pub use doc::generate_documentation;
pub use io::{load_customization, save_customization};
pub use schema::{
    base_dictionary_schema, validate_entry, ChangeRecord, ClassSpec, ElementSpec, SpecStatus,
    TeiReport, TeiSchema, TeiViolation, TeiViolationKind, GRAM_PART,
};

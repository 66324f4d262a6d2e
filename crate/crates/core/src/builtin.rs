//! Resources compiled into the crate, so the library and the command line
//! work without any configuration files.

use std::sync::Arc;

use crate::convert::{load_code_table, load_entry_mapping, CodeTable, EntryMapping};
use crate::datcat::{load_registry, Registry};
use crate::lmf::{load_model, ModelDescription};
use crate::xml::parse_xml;

pub const REGISTRY_XML: &str = include_str!("../../../fixtures/datcat/gender.xml");
pub const FULL_FORM_MODEL_XML: &str = include_str!("../../../fixtures/lmf/fullform-fr.xml");
pub const DICTIONARY_MODEL_XML: &str = include_str!("../../../fixtures/lmf/dictionary.xml");
pub const FRENCH_CODES_XML: &str = include_str!("../../../fixtures/flat/fr-codes.xml");
pub const DEFAULT_MAPPING_XML: &str = include_str!("../../../fixtures/tei/default-mapping.xml");

/// The bundled registry: grammatical gender with its language sections and
/// the categories the bundled models use.
pub fn registry() -> Arc<Registry> {
    let tree = parse_xml(REGISTRY_XML).expect("bundled registry parses");
    Arc::new(load_registry(&tree).expect("bundled registry loads"))
}

/// Core plus morphology, decorated for French full-form lexica.
pub fn full_form_model() -> ModelDescription {
    model(FULL_FORM_MODEL_XML, registry())
}

/// Core model decorated for dictionary entries.
pub fn dictionary_model() -> ModelDescription {
    model(DICTIONARY_MODEL_XML, registry())
}

/// Positional decoding of French morphological codes.
pub fn french_code_table() -> CodeTable {
    let tree = parse_xml(FRENCH_CODES_XML).expect("bundled code table parses");
    load_code_table(&tree).expect("bundled code table loads")
}

/// Dictionary entry elements and the categories they carry; no
/// normalization.
pub fn default_mapping() -> EntryMapping {
    let tree = parse_xml(DEFAULT_MAPPING_XML).expect("bundled mapping parses");
    load_entry_mapping(&tree).expect("bundled mapping loads")
}

pub(crate) fn model(src: &str, registry: Arc<Registry>) -> ModelDescription {
    let tree = parse_xml(src).expect("bundled model parses");
    load_model(&tree, registry).expect("bundled model loads")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_resources_load() {
        assert!(registry().contains("grammaticalGender"));
        assert_eq!(full_form_model().model.metamodel().components().count(), 8);
        assert_eq!(dictionary_model().model.metamodel().components().count(), 5);
        assert_eq!(french_code_table().slots.len(), 4);
        assert_eq!(default_mapping().rules().len(), 7);
    }
}

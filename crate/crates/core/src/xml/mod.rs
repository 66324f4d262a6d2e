//! A small XML tree model: parsing, serialization, comparison and
//! structural matching over a strict subset of XML 1.0.
//!
//! Every file format in this crate is an instance of this subset.

mod compare;
mod iso;
mod parse;
mod serialize;
mod tree;

pub use compare::{elements_equal, structural_equal, CompareMode};
pub use iso::{
    find_isomorphism, find_isomorphism_with, IsoError, IsoOptions, Renaming, DEFAULT_NAME_BUDGET,
};
pub use parse::{parse_xml, Position, XmlError};
pub use serialize::{serialize_xml, serialize_xml_with, SerializeOptions, XML_DECLARATION};
pub use tree::{is_attribute_name, is_element_name, ElementNode, Name, Node, TreeError, XmlTree};

/// Slash-separated element path with 1-based positions among same-named
/// siblings, e.g. `/entry/gramGrp[1]/gen[1]`.
pub fn child_path(parent: &str, name: &str, index: usize) -> String {
    format!("{parent}/{name}[{index}]")
}

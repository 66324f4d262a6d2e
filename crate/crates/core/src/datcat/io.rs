//! Registry XML vocabulary.
//!
//! ```xml
//! <registry version="1" source="...">
//!   <category id="grammaticalGender" kind="complex">
//!     <profile>morpho-syntax</profile>
//!     <def xml:lang="en">...</def>
//!     <domain><value ref="feminine"/>...</domain>   <!-- or <domain datatype="code"/> -->
//!     <langSection lang="fr">
//!       <name>genre</name>
//!       <defRefinement>...</defRefinement>
//!       <restrictedDomain><value ref="feminine"/>...</restrictedDomain>
//!     </langSection>
//!   </category>
//! </registry>
//! ```
//!
//! A `code` domain may list its admissible codes as `<code value="0">label</code>`.

use super::category::{
    CategoryKind, ConceptualDomain, DataCategory, Datatype, DocumentedCode, LanguageSection,
};
use super::registry::{Registry, RegistryError};
use crate::xml::{ElementNode, XmlTree};
use crate::xmlread::{
    allow_attrs, children_with_paths, expect_name, leaf_text, malformed, no_text, required_attr,
    unexpected, Malformed, ReadResult,
};

impl From<Malformed> for RegistryError {
    fn from(m: Malformed) -> Self {
        RegistryError::SchemaViolation {
            path: m.path,
            message: m.message,
        }
    }
}

fn el(name: &str) -> ElementNode {
    ElementNode::new(name).expect("vocabulary names are valid")
}

fn leaf(name: &str, text: &str) -> ElementNode {
    ElementNode::leaf(name, text).expect("vocabulary names are valid")
}

fn values_element(name: &str, values: &[String]) -> ElementNode {
    let mut e = el(name);
    for v in values {
        e.push_child(el("value").with_attr("ref", v).expect("valid attribute"));
    }
    e
}

pub fn save_registry(reg: &Registry) -> XmlTree {
    let mut root = el("registry")
        .with_attr("version", &reg.version)
        .expect("valid attribute");
    if let Some(source) = &reg.source {
        root.add_attr("source", source).expect("valid attribute");
    }
    for cat in reg.categories() {
        root.push_child(save_category(cat));
    }
    XmlTree::new(root)
}

fn save_category(cat: &DataCategory) -> ElementNode {
    let mut e = el("category")
        .with_attr("id", &cat.id)
        .and_then(|e| e.with_attr("kind", cat.kind.as_str()))
        .expect("valid attributes");
    for p in &cat.profiles {
        e.push_child(leaf("profile", p));
    }
    for (lang, text) in &cat.definitions {
        e.push_child(leaf("def", text).with_attr("xml:lang", lang).expect("valid attribute"));
    }
    match &cat.conceptual_domain {
        Some(ConceptualDomain::Values(values)) => e.push_child(values_element("domain", values)),
        Some(ConceptualDomain::Datatype { datatype, codes }) => {
            let mut d = el("domain")
                .with_attr("datatype", datatype.as_str())
                .expect("valid attribute");
            for code in codes {
                d.push_child(
                    leaf("code", &code.label)
                        .with_attr("value", &code.value)
                        .expect("valid attribute"),
                );
            }
            e.push_child(d);
        }
        None => {}
    }
    for section in &cat.language_sections {
        let mut s = el("langSection")
            .with_attr("lang", &section.language)
            .expect("valid attribute");
        for name in &section.names {
            s.push_child(leaf("name", name));
        }
        if let Some(r) = &section.definition_refinement {
            s.push_child(leaf("defRefinement", r));
        }
        if let Some(values) = &section.restricted_domain {
            s.push_child(values_element("restrictedDomain", values));
        }
        e.push_child(s);
    }
    e
}

/// Loads a registry. Simple categories are registered before complex ones,
/// so document order does not matter.
pub fn load_registry(tree: &XmlTree) -> Result<Registry, RegistryError> {
    let root = tree.root();
    let path = "/registry";
    expect_name(root, path, "registry")?;
    allow_attrs(root, path, &["version", "source"])?;
    no_text(root, path)?;
    let mut reg = Registry::new(root.attr("version").unwrap_or_default());
    reg.source = root.attr("source").map(str::to_string);
    let mut parsed = Vec::new();
    for (child, cpath) in children_with_paths(root, path) {
        if child.name_str() != "category" {
            unexpected::<()>(child, &cpath, "registry")?;
        }
        parsed.push(load_category(child, &cpath)?);
    }
    let (simple, complex): (Vec<_>, Vec<_>) = parsed.into_iter().partition(|c| c.is_simple());
    for cat in simple.into_iter().chain(complex) {
        reg.register(cat)?;
    }
    Ok(reg)
}

fn load_values(e: &ElementNode, path: &str) -> ReadResult<Vec<String>> {
    no_text(e, path)?;
    children_with_paths(e, path)
        .into_iter()
        .map(|(v, vpath)| {
            if v.name_str() != "value" {
                return unexpected(v, &vpath, e.name_str());
            }
            allow_attrs(v, &vpath, &["ref"])?;
            leaf_text(v, &vpath)?;
            Ok(required_attr(v, &vpath, "ref")?.to_string())
        })
        .collect()
}

fn load_category(e: &ElementNode, path: &str) -> ReadResult<DataCategory> {
    allow_attrs(e, path, &["id", "kind"])?;
    no_text(e, path)?;
    let id = required_attr(e, path, "id")?;
    let kind: CategoryKind = match required_attr(e, path, "kind")?.parse() {
        Ok(k) => k,
        Err(msg) => return malformed(path, msg),
    };
    let mut cat = match kind {
        CategoryKind::Complex => DataCategory::complex(id),
        CategoryKind::Simple => DataCategory::simple(id),
    };
    for (child, cpath) in children_with_paths(e, path) {
        match child.name_str() {
            "profile" => {
                allow_attrs(child, &cpath, &[])?;
                cat.profiles.insert(leaf_text(child, &cpath)?);
            }
            "def" => {
                allow_attrs(child, &cpath, &["xml:lang"])?;
                let lang = required_attr(child, &cpath, "xml:lang")?;
                if cat.definitions.contains_key(lang) {
                    return malformed(&cpath, format!("second definition for `{lang}`"));
                }
                cat.definitions.insert(lang.to_string(), leaf_text(child, &cpath)?);
            }
            "domain" => {
                if cat.conceptual_domain.is_some() {
                    return malformed(&cpath, "second <domain>");
                }
                cat.conceptual_domain = Some(load_domain(child, &cpath)?);
            }
            "langSection" => cat.language_sections.push(load_section(child, &cpath)?),
            _ => return unexpected(child, &cpath, "category"),
        }
    }
    Ok(cat)
}

fn load_domain(e: &ElementNode, path: &str) -> ReadResult<ConceptualDomain> {
    allow_attrs(e, path, &["datatype"])?;
    let Some(dt) = e.attr("datatype") else {
        return Ok(ConceptualDomain::Values(load_values(e, path)?));
    };
    let datatype: Datatype = match dt.parse() {
        Ok(d) => d,
        Err(msg) => return malformed(path, msg),
    };
    no_text(e, path)?;
    let mut codes = Vec::new();
    for (c, cpath) in children_with_paths(e, path) {
        if c.name_str() != "code" || datatype != Datatype::Code {
            return unexpected(c, &cpath, "domain");
        }
        allow_attrs(c, &cpath, &["value"])?;
        codes.push(DocumentedCode {
            value: required_attr(c, &cpath, "value")?.to_string(),
            label: leaf_text(c, &cpath)?,
        });
    }
    Ok(ConceptualDomain::Datatype { datatype, codes })
}

fn load_section(e: &ElementNode, path: &str) -> ReadResult<LanguageSection> {
    allow_attrs(e, path, &["lang"])?;
    no_text(e, path)?;
    let mut section = LanguageSection::new(required_attr(e, path, "lang")?, Vec::<String>::new());
    for (child, cpath) in children_with_paths(e, path) {
        match child.name_str() {
            "name" => {
                allow_attrs(child, &cpath, &[])?;
                section.names.push(leaf_text(child, &cpath)?);
            }
            "defRefinement" if section.definition_refinement.is_none() => {
                allow_attrs(child, &cpath, &[])?;
                section.definition_refinement = Some(leaf_text(child, &cpath)?);
            }
            "restrictedDomain" if section.restricted_domain.is_none() => {
                allow_attrs(child, &cpath, &[])?;
                section.restricted_domain = Some(load_values(child, &cpath)?);
            }
            _ => return unexpected(child, &cpath, "langSection"),
        }
    }
    Ok(section)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::xml::parse_xml;

    #[test]
    fn empty_registry() {
        let reg = load_registry(&parse_xml("<registry/>").unwrap()).unwrap();
        assert!(reg.is_empty());
    }

    #[test]
    fn missing_domain_member() {
        let src = r#"<registry version="1">
            <category id="feminine" kind="simple"/>
            <category id="grammaticalGender" kind="complex">
              <domain><value ref="feminine"/><value ref="neuter"/></domain>
            </category>
          </registry>"#;
        let err = load_registry(&parse_xml(src).unwrap()).unwrap_err();
        assert_eq!(
            err,
            RegistryError::UnknownDomainMember {
                category: "grammaticalGender".into(),
                member: "neuter".into()
            }
        );
    }

    #[test]
    fn schema_violation_carries_path() {
        let src = r#"<registry><category id="a" kind="simple"/><category id="b" kind="complex"><bogus/></category></registry>"#;
        match load_registry(&parse_xml(src).unwrap()).unwrap_err() {
            RegistryError::SchemaViolation { path, .. } => {
                assert_eq!(path, "/registry/category[2]/bogus[1]")
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn document_order_irrelevant() {
        let src = r#"<registry version="1">
            <category id="g" kind="complex"><domain><value ref="f"/></domain></category>
            <category id="f" kind="simple"/>
          </registry>"#;
        let reg = load_registry(&parse_xml(src).unwrap()).unwrap();
        assert_eq!(reg.len(), 2);
        assert_eq!(load_registry(&save_registry(&reg)).unwrap(), reg);
    }
}

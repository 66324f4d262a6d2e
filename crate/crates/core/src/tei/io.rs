//! Customization file vocabulary.
//!
//! ```xml
//! <customization>
//!   <restrictClass name="model.gramPart"><keep ref="pos"/></restrictClass>
//!   <addElement name="politeness" class="model.gramPart" doc="..."/>
//!   <constrainValues element="gen"><val>m</val><val>f</val></constrainValues>
//! </customization>
//! ```

use super::customize::{Customization, CustomizationError, Directive};
use crate::xml::{ElementNode, XmlTree};
use crate::xmlread::{
    allow_attrs, children_with_paths, expect_name, leaf_text, no_text, required_attr, unexpected,
    Malformed,
};

impl From<Malformed> for CustomizationError {
    fn from(m: Malformed) -> Self {
        CustomizationError::SchemaViolation {
            path: m.path,
            message: m.message,
        }
    }
}

pub fn load_customization(tree: &XmlTree) -> Result<Customization, CustomizationError> {
    let root = tree.root();
    let path = "/customization";
    expect_name(root, path, "customization")?;
    allow_attrs(root, path, &[])?;
    no_text(root, path)?;
    let mut cust = Customization::new();
    for (d, dpath) in children_with_paths(root, path) {
        let directive = match d.name_str() {
            "restrictClass" => {
                allow_attrs(d, &dpath, &["name"])?;
                no_text(d, &dpath)?;
                let mut keep = Vec::new();
                for (k, kpath) in children_with_paths(d, &dpath) {
                    if k.name_str() != "keep" {
                        unexpected::<()>(k, &kpath, "restrictClass")?;
                    }
                    allow_attrs(k, &kpath, &["ref"])?;
                    leaf_text(k, &kpath)?;
                    keep.push(required_attr(k, &kpath, "ref")?.to_string());
                }
                Directive::RestrictClass {
                    class: required_attr(d, &dpath, "name")?.to_string(),
                    keep,
                }
            }
            "addElement" => {
                allow_attrs(d, &dpath, &["name", "class", "doc"])?;
                leaf_text(d, &dpath)?;
                Directive::AddElement {
                    name: required_attr(d, &dpath, "name")?.to_string(),
                    documentation: d.attr("doc").unwrap_or_default().to_string(),
                    class: required_attr(d, &dpath, "class")?.to_string(),
                }
            }
            "constrainValues" => {
                allow_attrs(d, &dpath, &["element"])?;
                no_text(d, &dpath)?;
                let mut values = Vec::new();
                for (v, vpath) in children_with_paths(d, &dpath) {
                    if v.name_str() != "val" {
                        unexpected::<()>(v, &vpath, "constrainValues")?;
                    }
                    allow_attrs(v, &vpath, &[])?;
                    values.push(leaf_text(v, &vpath)?.trim().to_string());
                }
                Directive::ConstrainValues {
                    element: required_attr(d, &dpath, "element")?.to_string(),
                    values,
                }
            }
            _ => unexpected(d, &dpath, "customization")?,
        };
        cust.directives.push(directive);
    }
    Ok(cust)
}

pub fn save_customization(cust: &Customization) -> XmlTree {
    let el = |name: &str| ElementNode::new(name).expect("vocabulary names are valid");
    let attr = |e: ElementNode, k: &str, v: &str| e.with_attr(k, v).expect("valid attribute");
    let mut root = el("customization");
    for d in &cust.directives {
        root.push_child(match d {
            Directive::RestrictClass { class, keep } => {
                let mut e = attr(el("restrictClass"), "name", class);
                for k in keep {
                    e.push_child(attr(el("keep"), "ref", k));
                }
                e
            }
            Directive::AddElement {
                name,
                documentation,
                class,
            } => {
                let e = attr(el("addElement"), "name", name);
                let e = attr(e, "class", class);
                attr(e, "doc", documentation)
            }
            Directive::ConstrainValues { element, values } => {
                let mut e = attr(el("constrainValues"), "element", element);
                for v in values {
                    e.push_child(el("val").with_text(v));
                }
                e
            }
        });
    }
    XmlTree::new(root)
}

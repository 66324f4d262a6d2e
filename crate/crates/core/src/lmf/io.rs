//! XML forms of lexicon instances and of model description files.
//!
//! Instances are written with one element per component and one child
//! element per feature, the value being the element text. Element names come
//! from a [`Vocabulary`], so the same instance can be written in any
//! vocabulary whose element structure is isomorphic to the model.
//!
//! Model description files look like:
//!
//! ```xml
//! <lexicalModel root="Lexicon">
//!   <component name="Lexicon"/>
//!   <edge parent="Lexicon" child="LexicalEntry" card="1..*"/>
//!   <decorate component="LexicalEntry" cat="lemma"/>
//!   <vocab from="partOfSpeech" to="grammaticalCategory"/>
//! </lexicalModel>
//! ```

use std::collections::BTreeSet;
use std::sync::Arc;

use super::instance::{Feature, LmfInstance};
use super::metamodel::{Cardinality, Component, Edge, Metamodel};
use super::model::{decorate, LexicalModel, Vocabulary};
use super::LmfError;
use crate::datcat::{Registry, Value};
use crate::xml::{ElementNode, XmlTree};
use crate::xmlread::{
    allow_attrs, children_with_paths, expect_name, leaf_text, malformed, no_text, required_attr,
    unexpected, Malformed, ReadResult,
};

const LANG_ATTR: &str = "xml:lang";

impl From<Malformed> for LmfError {
    fn from(m: Malformed) -> Self {
        LmfError::SchemaViolation {
            path: m.path,
            message: m.message,
        }
    }
}

fn collect_names<'a>(inst: &'a LmfInstance, out: &mut BTreeSet<&'a str>) {
    out.insert(&inst.component);
    for f in &inst.features {
        out.insert(&f.category);
    }
    for c in &inst.children {
        collect_names(c, out);
    }
}

pub fn serialize_instance(inst: &LmfInstance, vocab: &Vocabulary) -> Result<XmlTree, LmfError> {
    let mut used = BTreeSet::new();
    collect_names(inst, &mut used);
    vocab.reverse(used.iter().copied())?;
    Ok(XmlTree::new(write_node(inst, vocab)?))
}

fn write_node(inst: &LmfInstance, vocab: &Vocabulary) -> Result<ElementNode, LmfError> {
    let element = vocab.element_for(&inst.component);
    let mut e = ElementNode::new(&element).map_err(|_| LmfError::BadName(element.clone()))?;
    if let Some(lang) = &inst.language {
        e.add_attr(LANG_ATTR, lang).expect("single language attribute");
    }
    for f in &inst.features {
        let name = vocab.element_for(&f.category);
        let leaf =
            ElementNode::leaf(&name, f.value.text()).map_err(|_| LmfError::BadName(name.clone()))?;
        e.push_child(leaf);
    }
    for c in &inst.children {
        e.push_child(write_node(c, vocab)?);
    }
    Ok(e)
}

enum Role {
    Component(String),
    Category(String),
}

/// Reads an instance written by [`serialize_instance`]. Feature text is
/// trimmed; it becomes a reference when the category has a value-set domain
/// and a literal otherwise.
pub fn parse_instance(
    tree: &XmlTree,
    vocab: &Vocabulary,
    model: &LexicalModel,
) -> Result<LmfInstance, LmfError> {
    let mm = model.metamodel();
    let components: Vec<&str> = mm.components().map(|c| c.name.as_str()).collect();
    let categories = model.decorated_categories();
    let reverse = vocab.reverse(components.iter().copied().chain(categories.iter().copied()))?;
    let role = |element: &str| -> Option<Role> {
        if let Some(name) = reverse.get(element) {
            return Some(if mm.has_component(name) {
                Role::Component(name.clone())
            } else {
                Role::Category(name.clone())
            });
        }
        // Registered but undecorated categories still parse, so validation
        // can report them.
        model
            .registry()
            .categories()
            .find(|c| vocab.element_for(&c.id) == element)
            .map(|c| Role::Category(c.id.clone()))
    };
    let root = tree.root();
    let path = format!("/{}", root.name_str());
    match role(root.name_str()) {
        Some(Role::Component(name)) => read_node(root, &path, name, &role, model.registry()),
        _ => malformed(
            &path,
            format!("<{}> does not name a component", root.name_str()),
        )?,
    }
}

fn read_node(
    e: &ElementNode,
    path: &str,
    component: String,
    role: &dyn Fn(&str) -> Option<Role>,
    registry: &Registry,
) -> Result<LmfInstance, LmfError> {
    allow_attrs(e, path, &[LANG_ATTR])?;
    no_text(e, path)?;
    let mut node = LmfInstance::new(&component);
    node.language = e.attr(LANG_ATTR).map(str::to_string);
    for (child, cpath) in children_with_paths(e, path) {
        match role(child.name_str()) {
            Some(Role::Component(name)) => {
                node.children.push(read_node(child, &cpath, name, role, registry)?)
            }
            Some(Role::Category(cat)) => {
                allow_attrs(child, &cpath, &[])?;
                let text = leaf_text(child, &cpath)?;
                let text = text.trim();
                let value = if registry.is_value_constrained(&cat) {
                    Value::reference(text)
                } else {
                    Value::literal(text)
                };
                node.features.push(Feature { category: cat, value });
            }
            None => unexpected(child, &cpath, e.name_str())?,
        }
    }
    Ok(node)
}

/// A model file: the decorated model plus its element vocabulary.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelDescription {
    pub model: LexicalModel,
    pub vocabulary: Vocabulary,
}

pub fn load_model(tree: &XmlTree, registry: Arc<Registry>) -> Result<ModelDescription, LmfError> {
    let root = tree.root();
    let path = "/lexicalModel";
    let r: ReadResult<()> = (|| {
        expect_name(root, path, "lexicalModel")?;
        allow_attrs(root, path, &["root"])?;
        no_text(root, path)
    })();
    r?;
    let mut components: Vec<Component> = Vec::new();
    let mut edges = Vec::new();
    let mut decoration: Vec<(String, Vec<String>)> = Vec::new();
    let mut vocabulary = Vocabulary::new();
    for (child, cpath) in children_with_paths(root, path) {
        match child.name_str() {
            "component" => {
                allow_attrs(child, &cpath, &["name"])?;
                no_text(child, &cpath)?;
                let mut c = Component::new(required_attr(child, &cpath, "name")?);
                for (allow, apath) in children_with_paths(child, &cpath) {
                    if allow.name_str() != "allow" {
                        unexpected::<()>(allow, &apath, "component")?;
                    }
                    allow_attrs(allow, &apath, &["cat"])?;
                    c.allowed_categories
                        .push(required_attr(allow, &apath, "cat")?.to_string());
                }
                components.push(c);
            }
            "edge" => {
                allow_attrs(child, &cpath, &["parent", "child", "card"])?;
                leaf_text(child, &cpath)?;
                let card: Cardinality = match required_attr(child, &cpath, "card")?.parse() {
                    Ok(c) => c,
                    Err(msg) => malformed(&cpath, msg)?,
                };
                edges.push(Edge::new(
                    required_attr(child, &cpath, "parent")?,
                    required_attr(child, &cpath, "child")?,
                    card,
                ));
            }
            "decorate" => {
                allow_attrs(child, &cpath, &["component", "cat"])?;
                leaf_text(child, &cpath)?;
                let component = required_attr(child, &cpath, "component")?.to_string();
                let cat = required_attr(child, &cpath, "cat")?.to_string();
                match decoration.iter_mut().find(|(c, _)| *c == component) {
                    Some((_, cats)) => cats.push(cat),
                    None => decoration.push((component, vec![cat])),
                }
            }
            "vocab" => {
                allow_attrs(child, &cpath, &["from", "to"])?;
                leaf_text(child, &cpath)?;
                vocabulary.insert(
                    required_attr(child, &cpath, "from")?,
                    required_attr(child, &cpath, "to")?,
                )?;
            }
            _ => unexpected::<()>(child, &cpath, "lexicalModel")?,
        }
    }
    let root_name = match root.attr("root") {
        Some(r) => r.to_string(),
        None => {
            let nested: BTreeSet<&str> = edges
                .iter()
                .filter(|e| e.parent != e.child)
                .map(|e| e.child.as_str())
                .collect();
            let tops: Vec<&str> = components
                .iter()
                .map(|c| c.name.as_str())
                .filter(|n| !nested.contains(n))
                .collect();
            match tops.as_slice() {
                [one] => one.to_string(),
                _ => malformed(path, "cannot infer the root component; add a `root` attribute")?,
            }
        }
    };
    let metamodel = Metamodel::new(&root_name, components, edges)?;
    let model = decorate(metamodel, decoration, registry)?;
    Ok(ModelDescription { model, vocabulary })
}

pub fn save_model(desc: &ModelDescription) -> XmlTree {
    let el = |name: &str| ElementNode::new(name).expect("vocabulary names are valid");
    let attr = |e: ElementNode, k: &str, v: &str| e.with_attr(k, v).expect("valid attribute");
    let mm = desc.model.metamodel();
    let mut root = attr(el("lexicalModel"), "root", mm.root());
    for c in mm.components() {
        let mut e = attr(el("component"), "name", &c.name);
        for cat in &c.allowed_categories {
            e.push_child(attr(el("allow"), "cat", cat));
        }
        root.push_child(e);
    }
    for edge in mm.edges() {
        let e = attr(el("edge"), "parent", &edge.parent);
        let e = attr(e, "child", &edge.child);
        root.push_child(attr(e, "card", edge.cardinality.as_str()));
    }
    for (component, cats) in desc.model.decoration() {
        for cat in cats {
            let e = attr(el("decorate"), "component", component);
            root.push_child(attr(e, "cat", cat));
        }
    }
    for (from, to) in desc.vocabulary.entries() {
        let e = attr(el("vocab"), "from", from);
        root.push_child(attr(e, "to", to));
    }
    XmlTree::new(root)
}

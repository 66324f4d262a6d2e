use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Errors raised while building a tree by hand.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("invalid name `{0}`")]
    BadName(String),
    #[error("duplicate attribute `{0}`")]
    DuplicateAttribute(String),
}

/// An element or attribute name from the supported subset.
///
/// Element names match `[A-Za-z_][A-Za-z0-9._-]*`. Attribute names follow
/// the same rule and may additionally carry the reserved `xml:` prefix
/// (`xml:lang`), which is kept verbatim since namespaces are not processed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Name(String);

impl Name {
    pub fn element(s: &str) -> Result<Name, TreeError> {
        if is_element_name(s) {
            Ok(Name(s.to_string()))
        } else {
            Err(TreeError::BadName(s.to_string()))
        }
    }

    pub fn attribute(s: &str) -> Result<Name, TreeError> {
        if is_attribute_name(s) {
            Ok(Name(s.to_string()))
        } else {
            Err(TreeError::BadName(s.to_string()))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for Name {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

pub fn is_element_name(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '.' | '_' | '-'))
}

pub fn is_attribute_name(s: &str) -> bool {
    is_element_name(s) || s.strip_prefix("xml:").is_some_and(is_element_name)
}

/// A child of an element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Node {
    Element(ElementNode),
    Text(String),
}

impl Node {
    pub fn as_element(&self) -> Option<&ElementNode> {
        match self {
            Node::Element(e) => Some(e),
            Node::Text(_) => None,
        }
    }

    pub fn as_text(&self) -> Option<&str> {
        match self {
            Node::Text(t) => Some(t),
            Node::Element(_) => None,
        }
    }
}

/// A named element with ordered attributes and children.
///
/// Text children are never empty and never adjacent: [`ElementNode::push_text`]
/// merges consecutive runs, which keeps serialization and parsing inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementNode {
    name: Name,
    attributes: Vec<(Name, String)>,
    children: Vec<Node>,
}

impl ElementNode {
    pub fn new(name: &str) -> Result<ElementNode, TreeError> {
        Ok(ElementNode::from_name(Name::element(name)?))
    }

    pub fn from_name(name: Name) -> ElementNode {
        ElementNode {
            name,
            attributes: Vec::new(),
            children: Vec::new(),
        }
    }

    /// An element holding a single text child (or nothing, for empty text).
    pub fn leaf(name: &str, text: &str) -> Result<ElementNode, TreeError> {
        let mut e = ElementNode::new(name)?;
        e.push_text(text);
        Ok(e)
    }

    pub fn with_attr(mut self, name: &str, value: &str) -> Result<ElementNode, TreeError> {
        self.add_attr(name, value)?;
        Ok(self)
    }

    pub fn with_child(mut self, child: ElementNode) -> ElementNode {
        self.push_child(child);
        self
    }

    pub fn with_text(mut self, text: &str) -> ElementNode {
        self.push_text(text);
        self
    }

    pub fn add_attr(&mut self, name: &str, value: &str) -> Result<(), TreeError> {
        let name = Name::attribute(name)?;
        if self.attributes.iter().any(|(n, _)| *n == name) {
            return Err(TreeError::DuplicateAttribute(name.0));
        }
        self.attributes.push((name, value.to_string()));
        Ok(())
    }

    pub fn push_child(&mut self, child: ElementNode) {
        self.children.push(Node::Element(child));
    }

    pub fn push_text(&mut self, text: &str) {
        if text.is_empty() {
            return;
        }
        if let Some(Node::Text(last)) = self.children.last_mut() {
            last.push_str(text);
        } else {
            self.children.push(Node::Text(text.to_string()));
        }
    }

    pub fn name(&self) -> &Name {
        &self.name
    }

    pub fn name_str(&self) -> &str {
        self.name.as_str()
    }

    pub fn attributes(&self) -> &[(Name, String)] {
        &self.attributes
    }

    pub fn attr(&self, name: &str) -> Option<&str> {
        self.attributes
            .iter()
            .find(|(n, _)| n.as_str() == name)
            .map(|(_, v)| v.as_str())
    }

    pub fn children(&self) -> &[Node] {
        &self.children
    }

    /// Element children in document order.
    pub fn elements(&self) -> impl Iterator<Item = &ElementNode> {
        self.children.iter().filter_map(Node::as_element)
    }

    /// Concatenation of the direct text children.
    pub fn text(&self) -> String {
        self.children.iter().filter_map(Node::as_text).collect()
    }

    /// True when some direct text child contains non-whitespace.
    pub fn has_significant_text(&self) -> bool {
        self.children
            .iter()
            .filter_map(Node::as_text)
            .any(|t| !t.trim().is_empty())
    }

    pub fn is_empty(&self) -> bool {
        self.children.is_empty()
    }

    /// Number of element nodes in this subtree, self included.
    pub fn element_count(&self) -> usize {
        1 + self.elements().map(ElementNode::element_count).sum::<usize>()
    }

    pub(crate) fn collect_names<'a>(&'a self, out: &mut BTreeSet<&'a Name>) {
        out.insert(&self.name);
        for child in self.elements() {
            child.collect_names(out);
        }
    }

    pub(crate) fn rename_with(&self, f: &dyn Fn(&Name) -> Name) -> ElementNode {
        ElementNode {
            name: f(&self.name),
            attributes: self.attributes.clone(),
            children: self
                .children
                .iter()
                .map(|c| match c {
                    Node::Element(e) => Node::Element(e.rename_with(f)),
                    Node::Text(t) => Node::Text(t.clone()),
                })
                .collect(),
        }
    }
}

/// A document: exactly one root element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XmlTree {
    root: ElementNode,
}

impl XmlTree {
    pub fn new(root: ElementNode) -> XmlTree {
        XmlTree { root }
    }

    pub fn root(&self) -> &ElementNode {
        &self.root
    }

    pub fn into_root(self) -> ElementNode {
        self.root
    }

    /// Distinct element names used anywhere in the tree.
    pub fn element_names(&self) -> BTreeSet<&Name> {
        let mut out = BTreeSet::new();
        self.root.collect_names(&mut out);
        out
    }

    pub fn element_count(&self) -> usize {
        self.root.element_count()
    }
}

impl From<ElementNode> for XmlTree {
    fn from(root: ElementNode) -> Self {
        XmlTree::new(root)
    }
}

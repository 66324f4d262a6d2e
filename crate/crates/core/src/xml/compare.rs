use super::tree::{ElementNode, Node, XmlTree};

/// How strictly two trees are compared.
///
/// Each mode is coarser than the previous one: equality under `Exact`
/// implies equality under `Trimmed`, which implies equality under `Structure`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompareMode {
    /// Names, attribute sets and every text node byte for byte.
    Exact,
    /// Like `Exact`, but text is trimmed and whitespace-only text dropped.
    Trimmed,
    /// Element names and element nesting only; text and attributes ignored.
    Structure,
}

/// Attribute order never matters.
pub fn structural_equal(a: &XmlTree, b: &XmlTree, mode: CompareMode) -> bool {
    elements_equal(a.root(), b.root(), mode)
}

pub fn elements_equal(a: &ElementNode, b: &ElementNode, mode: CompareMode) -> bool {
    if a.name() != b.name() {
        return false;
    }
    if mode != CompareMode::Structure && !same_attributes(a, b) {
        return false;
    }
    let left = normalized(a, mode);
    let right = normalized(b, mode);
    left.len() == right.len()
        && left.iter().zip(&right).all(|(x, y)| match (x, y) {
            (Item::Text(s), Item::Text(t)) => s == t,
            (Item::Element(e), Item::Element(f)) => elements_equal(e, f, mode),
            _ => false,
        })
}

fn same_attributes(a: &ElementNode, b: &ElementNode) -> bool {
    if a.attributes().len() != b.attributes().len() {
        return false;
    }
    a.attributes()
        .iter()
        .all(|(n, v)| b.attr(n.as_str()) == Some(v.as_str()))
}

enum Item<'a> {
    Element(&'a ElementNode),
    Text(&'a str),
}

fn normalized(e: &ElementNode, mode: CompareMode) -> Vec<Item<'_>> {
    e.children()
        .iter()
        .filter_map(|c| match c {
            Node::Element(el) => Some(Item::Element(el)),
            Node::Text(t) => match mode {
                CompareMode::Exact => Some(Item::Text(t)),
                CompareMode::Trimmed => {
                    let t = t.trim();
                    (!t.is_empty()).then_some(Item::Text(t))
                }
                CompareMode::Structure => None,
            },
        })
        .collect()
}

use super::tree::{ElementNode, Node, XmlTree};

pub const XML_DECLARATION: &str = r#"<?xml version="1.0" encoding="UTF-8"?>"#;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SerializeOptions {
    /// Emit the UTF-8 XML declaration on its own first line.
    pub xml_decl: bool,
    /// Indent element-only content by this many spaces per level. Elements
    /// holding any text are written inline, so mixed content is untouched.
    pub indent: Option<usize>,
}

impl SerializeOptions {
    pub fn pretty() -> Self {
        SerializeOptions {
            xml_decl: false,
            indent: Some(2),
        }
    }
}

/// Compact serialization: no declaration, no added whitespace, attributes
/// in alphabetical order.
pub fn serialize_xml(tree: &XmlTree) -> String {
    serialize_xml_with(tree, SerializeOptions::default())
}

pub fn serialize_xml_with(tree: &XmlTree, options: SerializeOptions) -> String {
    let mut out = String::new();
    if options.xml_decl {
        out.push_str(XML_DECLARATION);
        out.push('\n');
    }
    write_element(&mut out, tree.root(), options.indent, 0);
    if options.xml_decl || options.indent.is_some() {
        out.push('\n');
    }
    out
}

fn write_element(out: &mut String, e: &ElementNode, indent: Option<usize>, depth: usize) {
    out.push('<');
    out.push_str(e.name_str());
    let mut attrs: Vec<_> = e.attributes().iter().collect();
    attrs.sort_by(|a, b| a.0.cmp(&b.0));
    for (name, value) in attrs {
        out.push(' ');
        out.push_str(name.as_str());
        out.push_str("=\"");
        escape_into(out, value, true);
        out.push('"');
    }
    if e.is_empty() {
        out.push_str("/>");
        return;
    }
    out.push('>');
    let element_only = e.children().iter().all(|c| matches!(c, Node::Element(_)));
    match indent {
        Some(width) if element_only => {
            for child in e.elements() {
                out.push('\n');
                push_indent(out, width * (depth + 1));
                write_element(out, child, indent, depth + 1);
            }
            out.push('\n');
            push_indent(out, width * depth);
        }
        _ => {
            for child in e.children() {
                match child {
                    Node::Element(c) => write_element(out, c, None, depth + 1),
                    Node::Text(t) => escape_into(out, t, false),
                }
            }
        }
    }
    out.push_str("</");
    out.push_str(e.name_str());
    out.push('>');
}

fn push_indent(out: &mut String, n: usize) {
    out.extend(std::iter::repeat_n(' ', n));
}

fn escape_into(out: &mut String, s: &str, attribute: bool) {
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' if attribute => out.push_str("&quot;"),
            c => out.push(c),
        }
    }
}

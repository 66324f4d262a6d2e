//! Parser for the supported XML subset.
//!
//! Accepted: one root element, attributes in single or double quotes, the
//! five predefined entities, comments (discarded) and an optional leading
//! `<?xml ...?>` declaration declaring UTF-8. Everything else that XML 1.0
//! allows (DTDs, CDATA, processing instructions, character references,
//! namespaces) is rejected with [`XmlError::Unsupported`] or
//! [`XmlError::BadEntity`].

use std::fmt;

use thiserror::Error;

use super::tree::{is_attribute_name, is_element_name, ElementNode, Name, XmlTree};

/// One-based line and column of a parse error.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum XmlError {
    #[error("{pos}: mismatched tag: expected </{expected}>, found </{found}>")]
    MismatchedTag {
        expected: String,
        found: String,
        pos: Position,
    },
    #[error("{pos}: closing tag </{found}> without a matching open element")]
    UnopenedTag { found: String, pos: Position },
    #[error("{pos}: second root element <{name}>")]
    MultipleRoots { name: String, pos: Position },
    #[error("{pos}: unexpected end of input, expected {expected}")]
    UnexpectedEof { expected: String, pos: Position },
    #[error("{pos}: invalid name `{name}`")]
    BadName { name: String, pos: Position },
    #[error("{pos}: duplicate attribute `{name}`")]
    DuplicateAttribute { name: String, pos: Position },
    #[error("{pos}: unsupported entity reference `&{entity};`")]
    BadEntity { entity: String, pos: Position },
    #[error("{pos}: unsupported encoding `{encoding}` (only UTF-8 is accepted)")]
    UnsupportedEncoding { encoding: String, pos: Position },
    #[error("{pos}: {construct} not supported")]
    Unsupported {
        construct: &'static str,
        pos: Position,
    },
    #[error("{pos}: {message}")]
    Syntax { message: String, pos: Position },
}

impl XmlError {
    /// Stable identifier used in line-oriented reports.
    pub fn kind(&self) -> &'static str {
        match self {
            XmlError::MismatchedTag { .. } | XmlError::UnopenedTag { .. } => "MismatchedTag",
            XmlError::MultipleRoots { .. } => "MultipleRoots",
            XmlError::UnexpectedEof { .. } => "UnexpectedEof",
            XmlError::BadName { .. } => "BadName",
            XmlError::DuplicateAttribute { .. } => "DuplicateAttribute",
            XmlError::BadEntity { .. } => "BadEntity",
            XmlError::UnsupportedEncoding { .. } => "UnsupportedEncoding",
            XmlError::Unsupported { .. } => "Unsupported",
            XmlError::Syntax { .. } => "Syntax",
        }
    }

    pub fn position(&self) -> Position {
        match self {
            XmlError::MismatchedTag { pos, .. }
            | XmlError::UnopenedTag { pos, .. }
            | XmlError::MultipleRoots { pos, .. }
            | XmlError::UnexpectedEof { pos, .. }
            | XmlError::BadName { pos, .. }
            | XmlError::DuplicateAttribute { pos, .. }
            | XmlError::BadEntity { pos, .. }
            | XmlError::UnsupportedEncoding { pos, .. }
            | XmlError::Unsupported { pos, .. }
            | XmlError::Syntax { pos, .. } => *pos,
        }
    }
}

/// Parse a complete document.
pub fn parse_xml(input: &str) -> Result<XmlTree, XmlError> {
    Parser::new(input).document()
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

fn is_name_delim(c: char) -> bool {
    c.is_whitespace() || matches!(c, '/' | '>' | '<' | '=' | '"' | '\'' | '?')
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        let pos = if src.starts_with('\u{feff}') { 3 } else { 0 };
        Parser { src, pos }
    }

    fn position_at(&self, offset: usize) -> Position {
        let before = &self.src[..offset];
        let line = before.matches('\n').count() + 1;
        let line_start = before.rfind('\n').map_or(0, |i| i + 1);
        Position {
            line,
            column: before[line_start..].chars().count() + 1,
        }
    }

    fn here(&self) -> Position {
        self.position_at(self.pos)
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn skip_ws(&mut self) -> bool {
        let start = self.pos;
        let trimmed = self.rest().trim_start_matches(|c: char| c.is_whitespace());
        self.pos = self.src.len() - trimmed.len();
        self.pos > start
    }

    fn eof(&self, expected: &str) -> XmlError {
        XmlError::UnexpectedEof {
            expected: expected.to_string(),
            pos: self.position_at(self.src.len()),
        }
    }

    fn syntax(&self, message: impl Into<String>) -> XmlError {
        XmlError::Syntax {
            message: message.into(),
            pos: self.here(),
        }
    }

    fn expect(&mut self, s: &str) -> Result<(), XmlError> {
        if self.eat(s) {
            Ok(())
        } else if self.rest().is_empty() {
            Err(self.eof(&format!("`{s}`")))
        } else {
            Err(self.syntax(format!("expected `{s}`")))
        }
    }

    fn raw_name(&mut self) -> Result<(&'a str, usize), XmlError> {
        let start = self.pos;
        let len = self
            .rest()
            .find(is_name_delim)
            .unwrap_or(self.rest().len());
        if len == 0 {
            return if self.rest().is_empty() {
                Err(self.eof("a name"))
            } else {
                Err(self.syntax("expected a name"))
            };
        }
        self.pos += len;
        Ok((&self.src[start..start + len], start))
    }

    fn element_name(&mut self) -> Result<Name, XmlError> {
        let (raw, at) = self.raw_name()?;
        if !is_element_name(raw) {
            return Err(XmlError::BadName {
                name: raw.to_string(),
                pos: self.position_at(at),
            });
        }
        Ok(Name::element(raw).expect("checked"))
    }

    fn document(mut self) -> Result<XmlTree, XmlError> {
        if self.rest().starts_with("<?xml")
            && self.rest()[5..].starts_with(|c: char| c.is_whitespace() || c == '?')
        {
            self.declaration()?;
        }
        self.misc()?;
        if self.rest().is_empty() {
            return Err(self.eof("a root element"));
        }
        if !self.rest().starts_with('<') {
            return Err(self.syntax("text outside the root element"));
        }
        let root = self.element()?;
        self.misc()?;
        if !self.rest().is_empty() {
            if self.rest().starts_with('<') {
                let at = self.pos;
                self.pos += 1;
                let name = self.raw_name().map(|(n, _)| n.to_string()).unwrap_or_default();
                return Err(XmlError::MultipleRoots {
                    name,
                    pos: self.position_at(at),
                });
            }
            return Err(self.syntax("text outside the root element"));
        }
        Ok(XmlTree::new(root))
    }

    fn declaration(&mut self) -> Result<(), XmlError> {
        let start = self.pos;
        self.pos += 5;
        let attrs = self.attributes_until("?>")?;
        for (name, value, at) in &attrs {
            match name.as_str() {
                "version" | "standalone" => {}
                "encoding" => {
                    if !value.eq_ignore_ascii_case("utf-8") {
                        return Err(XmlError::UnsupportedEncoding {
                            encoding: value.clone(),
                            pos: self.position_at(*at),
                        });
                    }
                }
                _ => {
                    return Err(XmlError::Syntax {
                        message: format!("unknown declaration attribute `{name}`"),
                        pos: self.position_at(*at),
                    })
                }
            }
        }
        if !attrs.iter().any(|(n, _, _)| n == "version") {
            return Err(XmlError::Syntax {
                message: "XML declaration without version".into(),
                pos: self.position_at(start),
            });
        }
        Ok(())
    }

    /// Whitespace and comments outside the root.
    fn misc(&mut self) -> Result<(), XmlError> {
        loop {
            self.skip_ws();
            if self.rest().starts_with("<!--") {
                self.comment()?;
            } else if self.rest().starts_with("<!") {
                return Err(XmlError::Unsupported {
                    construct: "document type declaration",
                    pos: self.here(),
                });
            } else if self.rest().starts_with("<?") {
                return Err(XmlError::Unsupported {
                    construct: "processing instruction",
                    pos: self.here(),
                });
            } else {
                return Ok(());
            }
        }
    }

    fn comment(&mut self) -> Result<(), XmlError> {
        self.pos += 4;
        match self.rest().find("-->") {
            Some(i) => {
                self.pos += i + 3;
                Ok(())
            }
            None => Err(self.eof("`-->`")),
        }
    }

    /// Attributes up to (and consuming) `terminator`; used for the declaration.
    fn attributes_until(&mut self, terminator: &str) -> Result<Vec<(String, String, usize)>, XmlError> {
        let mut out = Vec::new();
        loop {
            let had_ws = self.skip_ws();
            if self.eat(terminator) {
                return Ok(out);
            }
            if self.rest().is_empty() {
                return Err(self.eof(&format!("`{terminator}`")));
            }
            if !had_ws {
                return Err(self.syntax("expected whitespace before attribute"));
            }
            let (name, at) = self.raw_name()?;
            self.skip_ws();
            self.expect("=")?;
            self.skip_ws();
            let value = self.quoted()?;
            out.push((name.to_string(), value, at));
        }
    }

    fn quoted(&mut self) -> Result<String, XmlError> {
        let quote = match self.peek() {
            Some(q @ ('"' | '\'')) => q,
            Some(_) => return Err(self.syntax("expected a quoted attribute value")),
            None => return Err(self.eof("a quoted attribute value")),
        };
        self.pos += 1;
        let start = self.pos;
        let Some(len) = self.rest().find(quote) else {
            return Err(self.eof("closing quote"));
        };
        let raw = &self.src[start..start + len];
        if let Some(i) = raw.find('<') {
            return Err(XmlError::Syntax {
                message: "`<` in attribute value".into(),
                pos: self.position_at(start + i),
            });
        }
        let value = self.decode(raw, start)?;
        self.pos += len + 1;
        Ok(value)
    }

    fn decode(&self, raw: &str, offset: usize) -> Result<String, XmlError> {
        if !raw.contains('&') {
            return Ok(raw.to_string());
        }
        let mut out = String::with_capacity(raw.len());
        let mut rest = raw;
        let mut consumed = 0;
        while let Some(i) = rest.find('&') {
            out.push_str(&rest[..i]);
            let after = &rest[i + 1..];
            let at = offset + consumed + i;
            let end = after.find(';').filter(|&e| {
                !after[..e].contains(|c: char| c.is_whitespace() || c == '&' || c == '<')
            });
            let Some(end) = end else {
                return Err(XmlError::BadEntity {
                    entity: after
                        .split(|c: char| c.is_whitespace() || c == ';' || c == '<')
                        .next()
                        .unwrap_or_default()
                        .to_string(),
                    pos: self.position_at(at),
                });
            };
            let entity = &after[..end];
            out.push(match entity {
                "lt" => '<',
                "gt" => '>',
                "amp" => '&',
                "quot" => '"',
                "apos" => '\'',
                _ => {
                    return Err(XmlError::BadEntity {
                        entity: entity.to_string(),
                        pos: self.position_at(at),
                    })
                }
            });
            consumed += i + 1 + end + 1;
            rest = &after[end + 1..];
        }
        out.push_str(rest);
        Ok(out)
    }

    /// Parses one element and its content with an explicit stack, so deep
    /// documents cannot exhaust the call stack.
    fn element(&mut self) -> Result<ElementNode, XmlError> {
        let mut stack: Vec<ElementNode> = Vec::new();
        loop {
            // at '<' or text
            if self.rest().is_empty() {
                let open = stack.last().map(|e| e.name_str().to_string()).unwrap_or_default();
                return Err(self.eof(&format!("</{open}>")));
            }
            if !self.rest().starts_with('<') {
                let len = self.rest().find('<').unwrap_or(self.rest().len());
                let start = self.pos;
                let text = self.decode(&self.src[start..start + len], start)?;
                self.pos += len;
                stack.last_mut().expect("text only inside elements").push_text(&text);
                continue;
            }
            if self.rest().starts_with("<!--") {
                self.comment()?;
                continue;
            }
            if self.rest().starts_with("<![CDATA[") {
                return Err(XmlError::Unsupported {
                    construct: "CDATA section",
                    pos: self.here(),
                });
            }
            if self.rest().starts_with("<!") {
                return Err(XmlError::Unsupported {
                    construct: "markup declaration",
                    pos: self.here(),
                });
            }
            if self.rest().starts_with("<?") {
                return Err(XmlError::Unsupported {
                    construct: "processing instruction",
                    pos: self.here(),
                });
            }
            if self.rest().starts_with("</") {
                let at = self.pos;
                self.pos += 2;
                let (raw, _) = self.raw_name()?;
                self.skip_ws();
                self.expect(">")?;
                let Some(open) = stack.pop() else {
                    return Err(XmlError::UnopenedTag {
                        found: raw.to_string(),
                        pos: self.position_at(at),
                    });
                };
                if open.name_str() != raw {
                    return Err(XmlError::MismatchedTag {
                        expected: open.name_str().to_string(),
                        found: raw.to_string(),
                        pos: self.position_at(at),
                    });
                }
                match stack.last_mut() {
                    Some(parent) => parent.push_child(open),
                    None => return Ok(open),
                }
                continue;
            }
            // start tag
            self.pos += 1;
            let mut node = ElementNode::from_name(self.element_name()?);
            let self_closing = self.start_tag_rest(&mut node)?;
            if self_closing {
                match stack.last_mut() {
                    Some(parent) => parent.push_child(node),
                    None => return Ok(node),
                }
            } else {
                stack.push(node);
            }
        }
    }

    /// Attributes and the end of a start tag; returns true for `/>`.
    fn start_tag_rest(&mut self, node: &mut ElementNode) -> Result<bool, XmlError> {
        loop {
            let had_ws = self.skip_ws();
            if self.eat("/>") {
                return Ok(true);
            }
            if self.eat(">") {
                return Ok(false);
            }
            if self.rest().is_empty() {
                return Err(self.eof("`>`"));
            }
            if !had_ws {
                return Err(self.syntax("expected whitespace before attribute"));
            }
            let (raw, at) = self.raw_name()?;
            if !is_attribute_name(raw) {
                return Err(XmlError::BadName {
                    name: raw.to_string(),
                    pos: self.position_at(at),
                });
            }
            self.skip_ws();
            self.expect("=")?;
            self.skip_ws();
            let value = self.quoted()?;
            if node.add_attr(raw, &value).is_err() {
                return Err(XmlError::DuplicateAttribute {
                    name: raw.to_string(),
                    pos: self.position_at(at),
                });
            }
        }
    }
}

//! Helpers shared by the loaders of the crate's own XML vocabularies.

use crate::xml::ElementNode;

/// A path-qualified complaint about a document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Malformed {
    pub path: String,
    pub message: String,
}

pub(crate) type ReadResult<T> = Result<T, Malformed>;

pub(crate) fn malformed<T>(path: &str, message: impl Into<String>) -> ReadResult<T> {
    Err(Malformed {
        path: path.to_string(),
        message: message.into(),
    })
}

/// Element children paired with their `/name[k]` paths.
pub(crate) fn children_with_paths<'a>(
    e: &'a ElementNode,
    path: &str,
) -> Vec<(&'a ElementNode, String)> {
    let mut counts: std::collections::HashMap<&str, usize> = Default::default();
    e.elements()
        .map(|c| {
            let k = counts.entry(c.name_str()).or_insert(0);
            *k += 1;
            (c, format!("{path}/{}[{k}]", c.name_str()))
        })
        .collect()
}

pub(crate) fn expect_name(e: &ElementNode, path: &str, name: &str) -> ReadResult<()> {
    if e.name_str() == name {
        Ok(())
    } else {
        malformed(path, format!("expected <{name}>, found <{}>", e.name_str()))
    }
}

/// Rejects attributes outside `allowed`.
pub(crate) fn allow_attrs(e: &ElementNode, path: &str, allowed: &[&str]) -> ReadResult<()> {
    for (name, _) in e.attributes() {
        if !allowed.contains(&name.as_str()) {
            return malformed(
                path,
                format!("unexpected attribute `{name}` on <{}>", e.name_str()),
            );
        }
    }
    Ok(())
}

pub(crate) fn required_attr<'a>(e: &'a ElementNode, path: &str, name: &str) -> ReadResult<&'a str> {
    match e.attr(name) {
        Some(v) => Ok(v),
        None => malformed(
            path,
            format!("<{}> requires attribute `{name}`", e.name_str()),
        ),
    }
}

/// Element holding only text; returns the text verbatim.
pub(crate) fn leaf_text(e: &ElementNode, path: &str) -> ReadResult<String> {
    if e.elements().next().is_some() {
        return malformed(path, format!("<{}> must contain only text", e.name_str()));
    }
    Ok(e.text())
}

/// Element holding only elements (whitespace allowed between them).
pub(crate) fn no_text(e: &ElementNode, path: &str) -> ReadResult<()> {
    if e.has_significant_text() {
        malformed(path, format!("unexpected text in <{}>", e.name_str()))
    } else {
        Ok(())
    }
}

pub(crate) fn unexpected<T>(e: &ElementNode, path: &str, context: &str) -> ReadResult<T> {
    malformed(
        path,
        format!("unexpected element <{}> in <{context}>", e.name_str()),
    )
}

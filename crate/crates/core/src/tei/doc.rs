use std::fmt::Write;

use super::content::ContentModel;
use super::schema::{SpecStatus, TeiSchema};

fn flag(status: SpecStatus) -> &'static str {
    match status {
        SpecStatus::Base => "",
        SpecStatus::Added => " (added)",
        SpecStatus::Changed => " (changed)",
    }
}

/// Plain-text reference for a schema. Items come in name order, so equal
/// schemas give identical bytes.
pub fn generate_documentation(schema: &TeiSchema) -> String {
    let mut out = String::new();
    let elements: Vec<_> = schema.elements().collect();
    let classes: Vec<_> = schema.classes().collect();

    writeln!(out, "Elements ({})", elements.len()).unwrap();
    for e in &elements {
        writeln!(out).unwrap();
        writeln!(out, "{}{}", e.name, flag(e.status)).unwrap();
        writeln!(out, "  {}", e.documentation).unwrap();
        let content = match &e.content {
            ContentModel::Text => "text".to_string(),
            other => other.to_string(),
        };
        writeln!(out, "  content: {content}").unwrap();
        let member_of = schema.classes_of(&e.name);
        if !member_of.is_empty() {
            writeln!(out, "  classes: {}", member_of.join(", ")).unwrap();
        }
        if let Some(values) = &e.value_constraint {
            writeln!(out, "  values: {}", values.join(", ")).unwrap();
        }
    }

    writeln!(out).unwrap();
    writeln!(out, "Classes ({})", classes.len()).unwrap();
    for c in &classes {
        writeln!(out).unwrap();
        writeln!(out, "{}{}", c.name, flag(c.status)).unwrap();
        writeln!(out, "  {}", c.documentation).unwrap();
        writeln!(out, "  members: {}", c.members.join(", ")).unwrap();
    }

    let changes = schema.changelog();
    writeln!(out).unwrap();
    writeln!(out, "Changes ({})", changes.len()).unwrap();
    for ch in changes {
        writeln!(out, "  {}. {}", ch.directive, ch.summary).unwrap();
    }
    out
}

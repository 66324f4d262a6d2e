// Read the `chat` lexical entry with the bundled French full-form model,
// validate it, then break its gender agreement with French.

use lexkit::builtin::full_form_model;
use lexkit::datcat::Value;
use lexkit::lmf::{parse_instance, validate_instance, Feature};
use lexkit::xml::parse_xml;

const CHAT: &str = include_str!("../../../fixtures/lmf/chat.xml");

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let desc = full_form_model();
    let mut entry = parse_instance(&parse_xml(CHAT)?, &desc.vocabulary, &desc.model)?;
    println!(
        "{} nodes, language {:?}, lemma {}",
        entry.node_count(),
        entry.language,
        entry.value_of("lemma").map(Value::text).unwrap_or("?")
    );
    let report = validate_instance(&entry, &desc.model);
    println!("as shipped: {} violations", report.len());
    assert!(report.is_ok());

    let inflexion = &mut entry.children[0].children[1];
    inflexion.features.push(Feature::new("grammaticalGender", Value::reference("neuter")));
    let report = validate_instance(&entry, &desc.model);
    for v in &report.violations {
        println!("{}\t{}\t{}", v.location, v.kind, v.message);
    }
    assert_eq!(report.len(), 1);

    entry.language = Some("de".to_string());
    println!("same entry marked German: {} violations", validate_instance(&entry, &desc.model).len());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

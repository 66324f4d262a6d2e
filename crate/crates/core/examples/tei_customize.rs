// Customize the dictionary entry schema three ways and watch validation
// and documentation follow.

use lexkit::tei::{
    apply_customization, base_dictionary_schema, generate_documentation, validate_entry,
    Customization, GRAM_PART,
};
use lexkit::xml::parse_xml;

const TABLE: &str = include_str!("../../../fixtures/tei/table.xml");
const MOOD: &str = include_str!("../../../fixtures/tei/mood-entry.xml");
const POLITENESS: &str = include_str!("../../../fixtures/tei/politeness-entry.xml");

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let base = base_dictionary_schema();
    let cust = Customization::new()
        .restrict_class(GRAM_PART, &["pos", "gen", "subc"])
        .add_element("politeness", GRAM_PART, "Politeness level of a form.")
        .constrain_values("gen", &["m", "f"]);
    let custom = apply_customization(&base, &cust)?;

    for (name, src) in [("table", TABLE), ("mood", MOOD), ("politeness", POLITENESS)] {
        let entry = parse_xml(src)?;
        for (label, schema) in [("base", &base), ("custom", &custom)] {
            let r = validate_entry(&entry, schema);
            let kinds: Vec<String> = r.violations.iter().map(|v| format!("{} at {}", v.kind, v.path)).collect();
            println!("{name:<10} {label:<6} {}", if kinds.is_empty() { "ok".to_string() } else { kinds.join("; ") });
        }
    }

    let doc = generate_documentation(&custom);
    let section: Vec<&str> = doc.lines().skip_while(|l| !l.starts_with("politeness")).take(4).collect();
    println!("\n{}", section.join("\n"));
    println!("{}", doc.lines().skip_while(|l| !l.starts_with("Changes")).collect::<Vec<_>>().join("\n"));
    assert!(doc.contains("politeness (added)"));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

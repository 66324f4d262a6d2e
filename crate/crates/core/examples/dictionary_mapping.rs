// Convert a dictionary entry into a lexical entry and back, with and
// without normalizing its abbreviations to data categories.

use lexkit::builtin::{default_mapping, dictionary_model};
use lexkit::convert::{lmf_to_tei, tei_to_lmf};
use lexkit::lmf::validate_instance;
use lexkit::xml::{parse_xml, serialize_xml, structural_equal, CompareMode};

const TABLE: &str = include_str!("../../../fixtures/tei/table.xml");

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let model = dictionary_model().model;
    let entry = parse_xml(TABLE)?;

    let plain = default_mapping();
    let lex = tei_to_lmf(&entry, &plain, &model)?;
    for f in &lex.features {
        println!("LexicalEntry/{} = {}", f.category, f.value);
    }
    for v in validate_instance(&lex, &model).violations {
        println!("  {}: {}", v.kind, v.message);
    }
    let back = lmf_to_tei(&lex, &plain)?;
    assert!(structural_equal(&back, &entry, CompareMode::Trimmed));
    println!("round trip: {}", serialize_xml(&back));

    let normalizing = default_mapping()
        .normalize("partOfSpeech", "n.", "noun")
        .normalize("grammaticalGender", "f.", "feminine");
    let lex = tei_to_lmf(&entry, &normalizing, &model)?;
    for f in &lex.features {
        println!("LexicalEntry/{} = {}", f.category, f.value);
    }
    assert!(validate_instance(&lex, &model).is_ok());
    assert!(structural_equal(&lmf_to_tei(&lex, &normalizing)?, &entry, CompareMode::Trimmed));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

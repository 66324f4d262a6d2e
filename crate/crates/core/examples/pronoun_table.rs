// Ingest a pronoun paradigm laid out as gloss/form column pairs.

use lexkit::builtin::full_form_model;
use lexkit::convert::{ingest_pronoun_table, parse_pronoun_tsv, GENDER, NUMBER, PERSON, WORD_FORM};
use lexkit::datcat::Value;
use lexkit::lmf::validate_instance;

const TABLE: &str = include_str!("../../../fixtures/berber/pronouns.tsv");

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let desc = full_form_model();
    let rows = parse_pronoun_tsv(TABLE)?;
    let lexicon = ingest_pronoun_table(&rows, Some("rif"), &desc.model)?;
    assert!(validate_instance(&lexicon, &desc.model).is_ok());

    let entries = &lexicon.children[1..];
    println!("{} entries", entries.len());
    for e in entries {
        let inf = &e.children[0].children[0];
        let get = |c| inf.value_of(c).map(Value::text).unwrap_or("-");
        println!("{:<8} {:<7} {:<9} {}", get(WORD_FORM), get(PERSON), get(NUMBER), get(GENDER));
    }
    assert_eq!(entries.len(), 10);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

// Decode morphological codes and turn a flat NLP lexicon into a
// full-form lexicon.

use lexkit::builtin::{french_code_table, full_form_model};
use lexkit::convert::{decode_code, flat_to_lmf, parse_flat_lexicon, ConvertError};
use lexkit::lmf::{serialize_instance, validate_instance};
use lexkit::xml::{serialize_xml_with, SerializeOptions};

const FERME: &str = include_str!("../../../fixtures/flat/ferme.lex");

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let table = french_code_table();
    for code in ["ip1s", "ip3s", "sp1s", "sp3s", "im2s"] {
        let bundle = decode_code(code, &table)?;
        let text: Vec<String> = bundle.iter().map(|(c, v)| format!("{c}={v}")).collect();
        println!("{code}: {}", text.join(" "));
    }
    println!("zz9q: {}", decode_code("zz9q", &table).unwrap_err());

    let desc = full_form_model();
    let lines = parse_flat_lexicon(FERME)?;
    let lexicon = flat_to_lmf(&lines, &table, &desc.model)?;
    assert!(validate_instance(&lexicon, &desc.model).is_ok());
    let xml = serialize_instance(&lexicon, &desc.vocabulary)?;
    let text = serialize_xml_with(&xml, SerializeOptions::pretty());
    println!("{}", text.lines().take(16).collect::<Vec<_>>().join("\n"));
    println!("... {} inflexions", lexicon.children[1].children[0].children.len());

    let bad = parse_flat_lexicon("ferme ip1s zz9q,fermer v\nfermes ip2s qq,fermer v")?;
    if let Err(ConvertError::UnknownCode(codes)) = flat_to_lmf(&bad, &table, &desc.model) {
        for c in codes {
            println!("{c}");
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

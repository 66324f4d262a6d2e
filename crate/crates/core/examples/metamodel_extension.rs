// Grow the core metamodel with the morphology extension, decorate it with
// data categories and validate a hand-built lexicon against it.

use std::sync::Arc;

use lexkit::builtin::registry;
use lexkit::lmf::{
    core_metamodel, decorate, morphology_extension, validate_instance, Cardinality, Extension,
    LmfInstance, LEXICAL_ENTRY,
};
use lexkit::lmf::{Component, Edge};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let core = core_metamodel();
    let full = core.extend(&morphology_extension())?;
    for e in full.edges() {
        println!("{:>17} -> {:<17} {}", e.parent, e.child, e.cardinality);
    }

    let model = decorate(
        full,
        [
            ("LexicalEntry", vec!["lemma", "partOfSpeech"]),
            ("Inflexion", vec!["wordForm", "grammaticalNumber"]),
        ],
        Arc::clone(&registry()),
    )?;

    let lexicon = LmfInstance::new("Lexicon")
        .child(LmfInstance::new("GlobalInformation"))
        .child(
            LmfInstance::new(LEXICAL_ENTRY)
                .literal("lemma", "chat")
                .reference("partOfSpeech", "noun")
                .child(LmfInstance::new("Morphology").child(
                    LmfInstance::new("Inflexion").literal("wordForm", "chats").reference("grammaticalNumber", "plural"),
                )),
        );
    let report = validate_instance(&lexicon, &model);
    println!("valid lexicon: {} violations", report.len());
    assert!(report.is_ok());

    let mut broken = lexicon.clone();
    broken.children[1].children[0].children.clear();
    for v in validate_instance(&broken, &model).violations {
        println!("{}\t{}\t{}", v.location, v.kind, v.message);
    }

    // A second, unrelated extension attached to the entry.
    let usage = Extension {
        attach_point: LEXICAL_ENTRY.to_string(),
        components: vec![Component::new("UsageNote")],
        edges: vec![Edge::new(LEXICAL_ENTRY, "UsageNote", Cardinality::Many)],
    };
    let wider = core.extend(&usage)?.extend(&morphology_extension())?;
    println!("components after two extensions: {}", wider.components().count());
    assert!(core.extend(&Extension { attach_point: "Nowhere".into(), ..usage }).is_err());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

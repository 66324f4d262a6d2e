// Write one lexical entry under two element vocabularies and recover the
// renaming between the two documents.

use lexkit::builtin::full_form_model;
use lexkit::lmf::{serialize_instance, LmfInstance, Vocabulary};
use lexkit::xml::{find_isomorphism, serialize_xml};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let entry = LmfInstance::new("LexicalEntry")
        .literal("lemma", "chat")
        .reference("partOfSpeech", "noun")
        .child(
            LmfInstance::new("Morphology")
                .child(LmfInstance::new("Inflexion").literal("wordForm", "chat").reference("grammaticalNumber", "singular"))
                .child(LmfInstance::new("Inflexion").literal("wordForm", "chats").reference("grammaticalNumber", "plural")),
        );

    let french = full_form_model().vocabulary;
    let terse = Vocabulary::new()
        .with("LexicalEntry", "le")?
        .with("Morphology", "m")?
        .with("Inflexion", "i")?
        .with("lemma", "l")?
        .with("partOfSpeech", "p")?
        .with("wordForm", "wf")?
        .with("grammaticalNumber", "n")?;

    let a = serialize_instance(&entry, &french)?;
    let b = serialize_instance(&entry, &terse)?;
    println!("{}\n{}", serialize_xml(&a), serialize_xml(&b));

    let renaming = find_isomorphism(&a, &b)?.expect("same entry, same shape");
    println!("renaming: {renaming}");
    assert_eq!(renaming.get("grammaticalCategory").map(|n| n.as_str()), Some("p"));
    assert_eq!(&renaming.apply(&a), &b);

    let other = serialize_instance(&LmfInstance::new("LexicalEntry").literal("lemma", "chat"), &terse)?;
    assert!(find_isomorphism(&a, &other)?.is_none());
    println!("a different entry shape has no renaming");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

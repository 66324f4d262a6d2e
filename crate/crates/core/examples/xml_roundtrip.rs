// Parse a document, print it back compact and indented, and compare trees
// under the three comparison modes.

use lexkit::xml::{parse_xml, serialize_xml, serialize_xml_with, structural_equal, CompareMode, SerializeOptions};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let src = r#"<?xml version="1.0" encoding="UTF-8"?>
<!-- an entry -->
<entry b="2" a="1"><form><orth>chat &amp; chien</orth></form></entry>"#;
    let tree = parse_xml(src)?;
    let compact = serialize_xml(&tree);
    println!("compact:  {compact}");
    print!("indented:\n{}", serialize_xml_with(&tree, SerializeOptions { xml_decl: true, indent: Some(2) }));
    assert!(structural_equal(&parse_xml(&compact)?, &tree, CompareMode::Exact));

    let spaced = parse_xml("<entry a=\"1\" b=\"2\"><form> <orth> chat &amp; chien </orth> </form></entry>")?;
    let renamed_text = parse_xml("<entry a=\"1\" b=\"2\"><form><orth>table</orth></form></entry>")?;
    for mode in [CompareMode::Exact, CompareMode::Trimmed, CompareMode::Structure] {
        println!(
            "{mode:?}: spaced={} other-text={}",
            structural_equal(&tree, &spaced, mode),
            structural_equal(&tree, &renamed_text, mode)
        );
    }
    assert!(structural_equal(&tree, &spaced, CompareMode::Trimmed));
    assert!(!structural_equal(&tree, &renamed_text, CompareMode::Trimmed));
    assert!(structural_equal(&tree, &renamed_text, CompareMode::Structure));

    match parse_xml("<a><b></a></b>") {
        Err(e) => println!("rejected: {} ({})", e, e.kind()),
        Ok(_) => unreachable!("interleaved tags are not well formed"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

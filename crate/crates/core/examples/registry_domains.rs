// Query the bundled data category registry: per-language value domains,
// lookup by localized name, and value checks.

use lexkit::builtin::registry;
use lexkit::datcat::{Value, Verdict};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let reg = registry();
    println!("{} categories (registry version {})", reg.len(), reg.version);
    for lang in [None, Some("fr"), Some("de"), Some("ja")] {
        let domain = reg.resolve_domain("grammaticalGender", lang)?;
        println!("grammaticalGender in {:<4} -> {}", lang.unwrap_or("any"), domain.join(", "));
    }
    assert_eq!(reg.resolve_domain("grammaticalGender", Some("fr"))?.len(), 2);
    assert_eq!(reg.resolve_domain("grammaticalGender", Some("de"))?.len(), 3);

    for (name, lang) in [("genre", "fr"), ("Genus", "de"), ("grammatical gender", "en")] {
        println!("{name:?}@{lang} -> {:?}", reg.lookup_by_name(name, lang));
    }

    let neuter = Value::reference("neuter");
    for lang in ["de", "fr"] {
        match reg.validate_value("grammaticalGender", &neuter, Some(lang))? {
            Verdict::Ok => println!("{neuter} accepted in {lang}"),
            Verdict::Violation { message, .. } => println!("{lang}: {message}"),
        }
    }
    assert!(!reg.validate_value("grammaticalGender", &neuter, Some("fr"))?.is_ok());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

// Drive the `lexkit` command line in-process and show its TSV findings and
// exit codes.

use lexkit::cli::run;

fn fixture(rel: &str) -> String {
    format!("{}/../../fixtures/{rel}", env!("CARGO_MANIFEST_DIR"))
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let runs: Vec<Vec<String>> = vec![
        vec!["validate".into(), "--lmf".into(), fixture("lmf/chat.xml"), "--model".into(), fixture("lmf/fullform-fr.xml"), "--registry".into(), fixture("datcat/gender.xml")],
        vec!["validate".into(), "--tei".into(), fixture("tei/mood-entry.xml"), "--customization".into(), fixture("tei/custom-basic.xml")],
        vec!["registry".into(), "domain".into(), "grammaticalGender".into(), "--lang".into(), "fr".into()],
        vec!["registry".into(), "find".into(), "Genus".into(), "--lang".into(), "de".into()],
        vec!["registry".into(), "get".into(), "nope".into()],
    ];
    let mut codes = Vec::new();
    for args in runs {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("lexkit".to_string()).chain(args.iter().cloned()), &mut out, &mut err);
        let shown: Vec<&str> = args.iter().map(|a| a.rsplit('/').next().unwrap_or(a)).collect();
        println!("$ lexkit {}  -> exit {code}", shown.join(" "));
        print!("{}", String::from_utf8(out)?);
        codes.push(code);
    }
    assert_eq!(codes, [0, 1, 0, 0, 1]);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

mod common;

use std::fs;
use std::process::{Command, Output};

use common::fixture_path as fx;
use lexkit::cli::{run, REGISTRY_ENV};
use lexkit::xml::{parse_xml, structural_equal, CompareMode};

fn lexkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lexkit"))
        .args(args)
        .env_remove(REGISTRY_ENV)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn in_process(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(std::iter::once("lexkit").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn exit_codes_per_subcommand() {
    let tmp = tempfile::tempdir().unwrap();
    let broken = tmp.path().join("broken.xml");
    fs::write(&broken, "<a><b></a></b>").unwrap();
    let broken = broken.to_str().unwrap();
    let cases: &[(&[&str], i32)] = &[
        (&["validate", "--lmf", &fx("lmf/chat.xml")], 0),
        (&["validate", "--tei", &fx("tei/table.xml")], 0),
        (&["validate", "--tei", &fx("tei/politeness-entry.xml")], 1),
        (&["validate", "--tei", broken], 2),
        (&["validate", "--lmf", broken], 2),
        (&["validate", "--lmf", "/definitely/missing.xml"], 2),
        (&["registry", "get", "grammaticalGender"], 0),
        (&["registry", "get", "nope"], 1),
        (&["schema"], 0),
        (&["schema", "--validate", &fx("tei/mood-entry.xml"), "--customization", &fx("tei/custom-basic.xml")], 1),
        (&["schema", "--customization", broken], 2),
        (&["xml", "check", &fx("tei/table.xml")], 0),
        (&["xml", "check", broken], 2),
        (&["convert", "--from", "flat", "--to", "lmf", &fx("flat/ferme.lex")], 0),
        (&["convert", "--from", "tei", "--to", "lmf", broken], 2),
        (&["no-such-command"], 2),
    ];
    for (args, want) in cases {
        let o = lexkit(args);
        assert_eq!(o.status.code(), Some(*want), "{args:?}\n{}{}", stdout(&o), stderr(&o));
    }
}

#[test]
fn findings_are_tab_separated_on_stdout() {
    let o = lexkit(&["validate", "--tei", &fx("tei/mood-entry.xml"), "--customization", &fx("tei/custom-basic.xml")]);
    let out = stdout(&o);
    let fields: Vec<&str> = out.trim_end().split('\t').collect();
    assert_eq!(fields.len(), 3, "{out}");
    assert_eq!(fields[0], "/entry/gramGrp[1]/mood[1]");
    assert_eq!(fields[1], "UndeclaredElementInContext");
    assert!(stderr(&o).starts_with("violations: 1 findings"));
}

#[test]
fn parse_errors_carry_position() {
    let tmp = tempfile::tempdir().unwrap();
    let f = tmp.path().join("bad.xml");
    fs::write(&f, "<a>\n  <b></a></b>").unwrap();
    let o = lexkit(&["xml", "check", f.to_str().unwrap()]);
    let line = stdout(&o);
    let fields: Vec<&str> = line.trim_end().split('\t').collect();
    assert!(fields[0].ends_with("bad.xml:2:6"), "{line}");
    assert_eq!(fields[1], "MismatchedTag");
}

#[test]
fn registry_from_environment() {
    let tmp = tempfile::tempdir().unwrap();
    let reg = tmp.path().join("tiny.xml");
    fs::write(
        &reg,
        r#"<registry version="2"><category id="yes" kind="simple"/><category id="answer" kind="complex"><domain><value ref="yes"/></domain></category></registry>"#,
    )
    .unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_lexkit"))
        .args(["registry", "domain", "answer"])
        .env(REGISTRY_ENV, &reg)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "yes\n");
    let o = Command::new(env!("CARGO_BIN_EXE_lexkit"))
        .args(["registry", "domain", "grammaticalGender"])
        .env(REGISTRY_ENV, tmp.path().join("missing.xml"))
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reports_are_deterministic_unless_stamped() {
    let tmp = tempfile::tempdir().unwrap();
    let (a, b, c) = (tmp.path().join("a.xml"), tmp.path().join("b.xml"), tmp.path().join("c.xml"));
    let entry = fx("tei/mood-entry.xml");
    let cust = fx("tei/custom-basic.xml");
    for (path, stamp) in [(&a, false), (&b, false), (&c, true)] {
        let mut args = vec!["validate", "--tei", &entry, "--customization", &cust, "--report", path.to_str().unwrap()];
        if stamp {
            args.push("--stamp");
        }
        assert_eq!(lexkit(&args).status.code(), Some(1));
    }
    let (ra, rb, rc) = (fs::read_to_string(&a).unwrap(), fs::read_to_string(&b).unwrap(), fs::read_to_string(&c).unwrap());
    assert_eq!(ra, rb);
    assert!(!ra.contains("stamp="));
    let report = parse_xml(&rc).unwrap();
    assert_eq!(report.root().attr("status"), Some("violations"));
    assert!(report.root().attr("stamp").is_some());
    let finding = report.root().elements().find(|e| e.name_str() == "finding").unwrap();
    assert_eq!(finding.attr("kind"), Some("UndeclaredElementInContext"));
}

#[test]
fn convert_round_trip_through_files() {
    let tmp = tempfile::tempdir().unwrap();
    let lmf = tmp.path().join("table.lmf.xml");
    let tei = tmp.path().join("table.tei.xml");
    let o = lexkit(&["convert", "--from", "tei", "--to", "lmf", &fx("tei/table.xml"), "-o", lmf.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    // Abbreviations are kept as literals and flagged, not rejected.
    assert!(stderr(&o).lines().all(|l| l.starts_with("warning\t")), "{}", stderr(&o));
    let o = lexkit(&["convert", "--from", "lmf", "--to", "tei", lmf.to_str().unwrap(), "-o", tei.to_str().unwrap(), "--xml-decl"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let back = fs::read_to_string(&tei).unwrap();
    assert!(back.starts_with("<?xml version=\"1.0\" encoding=\"UTF-8\"?>"));
    let original = parse_xml(&fs::read_to_string(fx("tei/table.xml")).unwrap()).unwrap();
    assert!(structural_equal(&parse_xml(&back).unwrap(), &original, CompareMode::Trimmed));
}

#[test]
fn flat_conversion_reports_unknown_codes() {
    let tmp = tempfile::tempdir().unwrap();
    let f = tmp.path().join("bad.lex");
    fs::write(&f, "# header\nferme ip1s,fermer v\nferme zz9q,fermer v\n").unwrap();
    let (code, out, _) = in_process(&["convert", "--from", "flat", "--to", "lmf", f.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("UnknownCode"), "{out}");
    assert!(out.contains(":3"), "{out}");

    fs::write(&f, "ferme ip1s fermer v\n").unwrap();
    let (code, out, _) = in_process(&["convert", "--from", "flat", "--to", "lmf", f.to_str().unwrap()]);
    assert_eq!(code, 2, "{out}");
    assert!(out.contains("MissingComma"), "{out}");
}

#[test]
fn pronoun_table_converts() {
    let (code, out, err) = in_process(&["convert", "--from", "pronouns", "--to", "lmf", &fx("berber/pronouns.tsv"), "--lang", "rif"]);
    assert_eq!(code, 0, "{err}");
    let tree = parse_xml(&out).unwrap();
    assert_eq!(tree.root().elements().filter(|e| e.name_str() == "lexicalEntry").count(), 10);
}

#[test]
fn schema_documentation_is_stable() {
    let tmp = tempfile::tempdir().unwrap();
    let doc = tmp.path().join("doc.txt");
    let args = ["schema", "--customization", &fx("tei/custom-basic.xml"), "--doc"];
    let (code, first, _) = in_process(&args);
    assert_eq!(code, 0);
    let mut with_out = args.to_vec();
    with_out.extend(["-o", doc.to_str().unwrap()]);
    assert_eq!(in_process(&with_out).0, 0);
    assert_eq!(fs::read_to_string(&doc).unwrap(), first);
    assert!(first.contains("politeness (added)"));
    assert!(first.contains("Changes ("));
}

#[test]
fn xml_iso_prints_the_renaming() {
    let tmp = tempfile::tempdir().unwrap();
    let a = tmp.path().join("a.xml");
    let b = tmp.path().join("b.xml");
    fs::write(&a, "<entry><form><orth>x</orth></form></entry>").unwrap();
    fs::write(&b, "<e><f><o>y</o></f></e>").unwrap();
    let (code, out, _) = in_process(&["xml", "iso", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out, "entry\te\nform\tf\north\to\n");
}

#[test]
fn help_and_version_exit_zero() {
    for flag in ["--help", "--version"] {
        let (code, out, _) = in_process(&[flag]);
        assert_eq!(code, 0);
        assert!(!out.is_empty());
    }
}

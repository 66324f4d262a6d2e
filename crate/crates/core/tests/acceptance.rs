// Acceptance criteria, one line each. Runs without the libtest harness so
// the lines always show in `cargo test` output; exits non-zero on any FAIL.

mod common;

use std::collections::BTreeMap;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::*;
use lexkit::builtin::{default_mapping, dictionary_model, full_form_model};
use lexkit::convert::{
    decode_code, flat_to_lmf, ingest_pronoun_table, lmf_to_tei, load_code_table, parse_flat_lexicon,
    parse_pronoun_tsv, tei_to_lmf, GENDER, LEMMA, PART_OF_SPEECH,
};
use lexkit::datcat::{load_registry, save_registry, Value};
use lexkit::lmf::{
    load_model, parse_instance, serialize_instance, validate_instance, Feature, LmfInstance,
    Vocabulary, ViolationKind,
};
use lexkit::tei::{
    apply_customization, base_dictionary_schema, validate_entry, Customization, TeiViolationKind,
};
use lexkit::xml::{
    find_isomorphism, find_isomorphism_with, parse_xml, serialize_xml, structural_equal, CompareMode,
    IsoOptions, Name, XmlTree,
};
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

const CRITERION_1_BUDGET: Duration = Duration::from_secs(1);
const ISO_PAIRS: u32 = 200;
const ISO_MAX_NODES: usize = 8;
const ISO_MAX_NAMES: usize = 5;
const CRITERION_7_BUDGET: Duration = Duration::from_secs(10);
const ROUND_TRIP_CASES: u32 = 1000;
const CRITERION_8_BUDGET: Duration = Duration::from_secs(30);
const DUAL_VOCABULARY_SAMPLES: u32 = 200;

type Outcome = Result<String, String>;

fn check(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    )
}

fn bin(args: &[&str]) -> Result<(i32, String), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_lexkit"))
        .args(args)
        .env_remove(lexkit::cli::REGISTRY_ENV)
        .output()
        .map_err(|e| e.to_string())?;
    Ok((out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned()))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let registry = Arc::new(
        load_registry(&parse_xml(&fixture("datcat/gender.xml")).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?,
    );
    let desc = load_model(&parse_xml(&fixture("lmf/fullform-fr.xml")).unwrap(), registry)
        .map_err(|e| e.to_string())?;
    let tree = parse_xml(&fixture("lmf/chat.xml")).map_err(|e| e.to_string())?;
    let mut entry = parse_instance(&tree, &desc.vocabulary, &desc.model).map_err(|e| e.to_string())?;
    let clean = validate_instance(&entry, &desc.model);
    check(clean.is_ok(), format!("chat has {} violations", clean.len()))?;

    check(entry.language.as_deref() == Some("fr"), "chat is not marked fr")?;
    let inflexion = entry
        .walk()
        .into_iter()
        .find(|(_, n)| n.component == "Inflexion")
        .map(|(p, _)| p)
        .ok_or("no inflexion")?;
    let mut node = &mut entry;
    for &i in inflexion.indices() {
        node = &mut node.children[i];
    }
    match node.features.iter_mut().find(|f| f.category == GENDER) {
        Some(f) => f.value = Value::reference("neuter"),
        None => node.features.push(Feature::new(GENDER, Value::reference("neuter"))),
    }
    let r = validate_instance(&entry, &desc.model);
    check(
        r.len() == 1 && r.count(ViolationKind::ValueOutOfDomain) == 1,
        format!("neuter under fr gave {:?}", r.violations.iter().map(|v| v.kind).collect::<Vec<_>>()),
    )?;
    let elapsed = start.elapsed();
    check(elapsed < CRITERION_1_BUDGET, format!("took {elapsed:?}"))?;
    Ok(format!("0 violations, then 1 ValueOutOfDomain at {} in {elapsed:.2?}", r.violations[0].location))
}

fn criterion_2() -> Outcome {
    let reg = fixture_path("datcat/gender.xml");
    let lines = |args: &[&str]| -> Result<Vec<String>, String> {
        let mut full = vec!["registry", "--registry", reg.as_str()];
        full.extend_from_slice(args);
        let (code, out) = bin(&full)?;
        check(code == 0, format!("`{}` exited {code}", args.join(" ")))?;
        Ok(out.lines().map(str::to_string).collect())
    };
    let fr = lines(&["domain", "grammaticalGender", "--lang", "fr"])?;
    let de = lines(&["domain", "grammaticalGender", "--lang", "de"])?;
    check(fr.len() == 2, format!("fr printed {fr:?}"))?;
    check(de.len() == 3, format!("de printed {de:?}"))?;
    for (name, lang) in [("Genus", "de"), ("genre", "fr")] {
        let found = lines(&["find", name, "--lang", lang])?;
        check(found == ["grammaticalGender"], format!("find {name} printed {found:?}"))?;
    }
    Ok(format!("fr {{{}}}, de {{{}}}, Genus/genre -> grammaticalGender", fr.join(", "), de.join(", ")))
}

fn criterion_3() -> Outcome {
    let base = base_dictionary_schema();
    let table = parse_xml(&fixture("tei/table.xml")).map_err(|e| e.to_string())?;
    let before = validate_entry(&table, &base);
    check(before.is_ok(), format!("base schema: {:?}", before.violations))?;
    let constrained = apply_customization(&base, &Customization::new().constrain_values("gen", &["m", "f"]))
        .map_err(|e| e.to_string())?;
    let after = validate_entry(&table, &constrained);
    check(
        after.violations.len() == 1 && after.count(TeiViolationKind::ValueOutOfSet) == 1,
        format!("constrained: {:?}", after.violations),
    )?;
    check(after.violations[0].message.contains("\"f.\""), format!("message: {}", after.violations[0].message))?;
    Ok(format!("0 violations, then 1 ValueOutOfSet: {}", after.violations[0].message))
}

fn criterion_4() -> Outcome {
    let cust = fixture_path("tei/custom-basic.xml");
    let (code, out) = bin(&["validate", "--tei", &fixture_path("tei/mood-entry.xml"), "--customization", &cust])?;
    let kinds: Vec<&str> = out.lines().filter_map(|l| l.split('\t').nth(1)).collect();
    check(code == 1 && kinds == ["UndeclaredElementInContext"], format!("mood: exit {code}, {kinds:?}"))?;
    let (code2, out2) = bin(&["validate", "--tei", &fixture_path("tei/politeness-entry.xml"), "--customization", &cust])?;
    check(code2 == 0 && out2.is_empty(), format!("politeness: exit {code2}, {out2:?}"))?;
    Ok("mood: exit 1 UndeclaredElementInContext; politeness: exit 0".to_string())
}

fn criterion_5() -> Outcome {
    let desc = full_form_model();
    let table = load_code_table(&parse_xml(&fixture("flat/fr-codes.xml")).unwrap()).map_err(|e| e.to_string())?;
    let lines = parse_flat_lexicon(&fixture("flat/ferme.lex")).map_err(|e| e.to_string())?;
    let lex = flat_to_lmf(&lines, &table, &desc.model).map_err(|e| e.to_string())?;
    check(validate_instance(&lex, &desc.model).is_ok(), "ferme lexicon does not validate")?;
    let entries: Vec<&LmfInstance> = lex.children_named("LexicalEntry").collect();
    check(entries.len() == 1, format!("{} entries", entries.len()))?;
    let e = entries[0];
    check(e.value_of(LEMMA) == Some(&Value::literal("fermer")), format!("lemma {:?}", e.value_of(LEMMA)))?;
    check(e.value_of(PART_OF_SPEECH) == Some(&Value::reference("verb")), "pos is not verb")?;
    let n = e.children_named("Morphology").flat_map(|m| m.children_named("Inflexion")).count();
    check(n == 5, format!("{n} inflexions"))?;

    let got: BTreeMap<String, String> = decode_code("ip1s", &table).map_err(|e| e.to_string())?.into_iter().collect();
    let want: BTreeMap<String, String> = [
        ("grammaticalMood", "indicative"),
        ("tense", "present"),
        ("person", "first"),
        ("grammaticalNumber", "singular"),
    ]
    .into_iter()
    .map(|(a, b)| (a.to_string(), b.to_string()))
    .collect();
    check(got == want, format!("ip1s -> {got:?}"))?;
    Ok("1 entry fermer/verb with 5 inflexions; ip1s -> indicative present first singular".to_string())
}

fn criterion_6() -> Outcome {
    let desc = full_form_model();
    let rows = parse_pronoun_tsv(&fixture("berber/pronouns.tsv")).map_err(|e| e.to_string())?;
    let lex = ingest_pronoun_table(&rows, Some("rif"), &desc.model).map_err(|e| e.to_string())?;
    check(validate_instance(&lex, &desc.model).is_ok(), "pronoun lexicon does not validate")?;
    let entries: Vec<&LmfInstance> = lex.children_named("LexicalEntry").collect();
    check(entries.len() == 10, format!("{} entries", entries.len()))?;
    let mut first = 0;
    for e in &entries {
        let inf: Vec<&LmfInstance> = e.walk().into_iter().map(|(_, n)| n).filter(|n| n.component == "Inflexion").collect();
        let person = inf.iter().find_map(|n| n.value_of("person")).map(Value::text);
        let genders: usize = inf.iter().map(|n| n.features.iter().filter(|f| f.category == GENDER).count()).sum();
        let expected = if person == Some("first") { 0 } else { 1 };
        if person == Some("first") {
            first += 1;
        }
        check(genders == expected, format!("{person:?} entry carries {genders} gender features"))?;
    }
    check(first == 2, format!("{first} first-person entries"))?;
    Ok("10 entries; 2 first-person without gender, 8 with one".to_string())
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let strategy = iso_pair().prop_filter("size limits", |(a, b)| {
        a.element_count() <= ISO_MAX_NODES
            && b.element_count() <= ISO_MAX_NODES
            && distinct_names(a).len() <= ISO_MAX_NAMES
            && distinct_names(b).len() <= ISO_MAX_NAMES
    });
    let mut r = runner(ISO_PAIRS);
    let (mut present, mut total) = (0, 0);
    for _ in 0..ISO_PAIRS {
        let (a, b) = strategy.new_tree(&mut r).map_err(|e| e.to_string())?.current();
        total += 1;
        let oracle = brute_force_isomorphisms(&a, &b);
        check(oracle.len() <= 1, "oracle found several bijections")?;
        let found = find_isomorphism(&a, &b).map_err(|e| e.to_string())?;
        match (&found, oracle.first()) {
            (None, None) => {}
            (Some(m), Some(o)) => {
                present += 1;
                let m: BTreeMap<Name, Name> = m.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
                check(&m == o, format!("mapping {m:?} differs from oracle {o:?}"))?;
                check(shape_eq_under(a.root(), b.root(), &m), "mapping does not carry a onto b")?;
            }
            (f, o) => {
                return Err(format!(
                    "disagree on {} vs {}: found {} oracle {}",
                    serialize_xml(&a),
                    serialize_xml(&b),
                    f.is_some(),
                    o.is_some()
                ))
            }
        }
    }
    let elapsed = start.elapsed();
    check(elapsed < CRITERION_7_BUDGET, format!("took {elapsed:?}"))?;
    Ok(format!("{total} pairs agree ({present} isomorphic) in {elapsed:.2?}"))
}

fn run_cases<S: Strategy>(label: &str, strategy: S, test: impl Fn(S::Value) -> Result<(), String>) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    let mut r = runner(ROUND_TRIP_CASES);
    r.run(&strategy, |v| test(v).map_err(proptest::test_runner::TestCaseError::fail))
        .map_err(|e| format!("{label}: {e}"))
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    run_cases("xml", xml_tree(), |t: XmlTree| {
        let back = parse_xml(&serialize_xml(&t)).map_err(|e| e.to_string())?;
        check(structural_equal(&back, &t, CompareMode::Exact) && exact_eq(back.root(), t.root()), serialize_xml(&t))
    })?;
    run_cases("registry", tape(), |bytes| {
        let reg = build_registry(&registry_categories(&bytes));
        let back = load_registry(&save_registry(&reg)).map_err(|e| e.to_string())?;
        check(back == reg, serialize_xml(&save_registry(&reg)))
    })?;
    let desc = full_form_model();
    run_cases("lmf", tape(), |bytes| {
        let inst = sample_instance(&desc.model, &bytes);
        check(validate_instance(&inst, &desc.model).is_ok(), "sample does not conform")?;
        let xml = serialize_instance(&inst, &desc.vocabulary).map_err(|e| e.to_string())?;
        let back = parse_instance(&xml, &desc.vocabulary, &desc.model).map_err(|e| e.to_string())?;
        check(back == inst, serialize_xml(&xml))
    })?;
    let mapping = default_mapping();
    let model = dictionary_model().model;
    run_cases("tei-lmf", tape(), |bytes| {
        let entry = sample_entry(&bytes);
        let lex = tei_to_lmf(&entry, &mapping, &model).map_err(|e| e.to_string())?;
        let back = lmf_to_tei(&lex, &mapping).map_err(|e| e.to_string())?;
        check(structural_equal(&back, &entry, CompareMode::Trimmed), serialize_xml(&entry))?;
        let again = tei_to_lmf(&back, &mapping, &model).map_err(|e| e.to_string())?;
        check(again == lex, "second pass differs")
    })?;
    let elapsed = start.elapsed();
    check(elapsed < CRITERION_8_BUDGET, format!("took {elapsed:?}"))?;
    Ok(format!("4 x {ROUND_TRIP_CASES} cases identical in {elapsed:.2?}"))
}

fn used_names(inst: &LmfInstance, out: &mut Vec<String>) {
    for n in std::iter::once(&inst.component).chain(inst.features.iter().map(|f| &f.category)) {
        if !out.contains(n) {
            out.push(n.clone());
        }
    }
    for c in &inst.children {
        used_names(c, out);
    }
}

fn dual_check(inst: &LmfInstance, v1: &Vocabulary, v2: &Vocabulary) -> Result<usize, String> {
    let a = serialize_instance(inst, v1).map_err(|e| e.to_string())?;
    let b = serialize_instance(inst, v2).map_err(|e| e.to_string())?;
    let mut names = Vec::new();
    used_names(inst, &mut names);
    let expected: BTreeMap<String, String> = names.iter().map(|n| (v1.element_for(n), v2.element_for(n))).collect();
    let found = find_isomorphism_with(&a, &b, IsoOptions { max_names: 64 })
        .map_err(|e| e.to_string())?
        .ok_or_else(|| format!("no renaming for {}", serialize_xml(&a)))?;
    let got: BTreeMap<String, String> = found.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
    check(got == expected, format!("renaming {got:?}, expected {expected:?}"))?;
    Ok(got.len())
}

fn criterion_9() -> Outcome {
    let desc = full_form_model();
    let german = Vocabulary::new()
        .with("Lexicon", "Lexikon")
        .and_then(|v| v.with("LexicalEntry", "Eintrag"))
        .and_then(|v| v.with("Morphology", "Morphologie"))
        .and_then(|v| v.with("Paradigm", "Paradigma"))
        .and_then(|v| v.with("Inflexion", "Flexion"))
        .and_then(|v| v.with("lemma", "Lemma"))
        .and_then(|v| v.with("partOfSpeech", "Wortart"))
        .and_then(|v| v.with("wordForm", "Wortform"))
        .and_then(|v| v.with("grammaticalGender", "Genus"))
        .and_then(|v| v.with("grammaticalNumber", "Numerus"))
        .map_err(|e| e.to_string())?;
    let chat = parse_instance(&parse_xml(&fixture("lmf/chat.xml")).unwrap(), &desc.vocabulary, &desc.model)
        .map_err(|e| e.to_string())?;
    let chat_names = dual_check(&chat, &desc.vocabulary, &german)?;
    // Plain budget suffices for the fixture.
    let a = serialize_instance(&chat, &desc.vocabulary).unwrap();
    let b = serialize_instance(&chat, &german).unwrap();
    check(find_isomorphism(&a, &b).map_err(|e| e.to_string())?.is_some(), "default budget refused chat")?;

    let all: Vec<String> = desc
        .model
        .metamodel()
        .components()
        .map(|c| c.name.clone())
        .chain(desc.model.decorated_categories().into_iter().map(str::to_string))
        .collect();
    let mut r = runner(DUAL_VOCABULARY_SAMPLES);
    for _ in 0..DUAL_VOCABULARY_SAMPLES {
        let bytes = tape().new_tree(&mut r).map_err(|e| e.to_string())?.current();
        let inst = sample_instance(&desc.model, &bytes);
        let mut t = Tape::new(&bytes);
        let mut order: Vec<usize> = (0..all.len()).collect();
        for i in (1..order.len()).rev() {
            order.swap(i, t.choose(i + 1));
        }
        let mut v2 = Vocabulary::new();
        for (i, n) in all.iter().enumerate() {
            v2.insert(n, &format!("e{}", order[i])).map_err(|e| e.to_string())?;
        }
        dual_check(&inst, &desc.vocabulary, &v2)?;
    }
    Ok(format!("chat: {chat_names} names recovered; {DUAL_VOCABULARY_SAMPLES} sampled instances recovered exactly"))
}

fn main() {
    let criteria: [(u32, fn() -> Outcome); 9] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
    ];
    let mut failed = 0;
    for (n, f) in criteria {
        match std::panic::catch_unwind(f) {
            Ok(Ok(detail)) => println!("criterion {n}: PASS {detail}"),
            Ok(Err(why)) => {
                failed += 1;
                println!("criterion {n}: FAIL {why}");
            }
            Err(_) => {
                failed += 1;
                println!("criterion {n}: FAIL panicked");
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

//! Pronoun paradigm tables: gloss/form pairs such as `2sg.m` / `ʃək`.

use unicode_normalization::UnicodeNormalization;

use super::flat::{require_decoration, LEMMA, PART_OF_SPEECH, WORD_FORM};
use super::ConvertError;
use crate::lmf::{
    LexicalModel, LmfInstance, GLOBAL_INFORMATION, INFLEXION, LANGUAGE_CATEGORY, LEXICAL_ENTRY,
    LEXICON, MORPHOLOGY,
};

pub const PERSON: &str = "person";
pub const NUMBER: &str = "grammaticalNumber";
pub const GENDER: &str = "grammaticalGender";
pub const PRONOUN: &str = "pronoun";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PronounRow {
    pub line: Option<usize>,
    pub gloss: String,
    pub form: String,
}

impl PronounRow {
    pub fn new(gloss: &str, form: &str) -> Self {
        PronounRow {
            line: None,
            gloss: gloss.to_string(),
            form: form.to_string(),
        }
    }
}

/// Decoded `<person><number>[.<gender>]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Gloss {
    pub person: &'static str,
    pub number: &'static str,
    pub gender: Option<&'static str>,
}

pub fn parse_gloss(gloss: &str) -> Result<Gloss, ConvertError> {
    let bad = || ConvertError::BadGloss {
        line: None,
        gloss: gloss.to_string(),
    };
    let (head, gender) = match gloss.split_once('.') {
        Some((h, g)) => (h, Some(g)),
        None => (gloss, None),
    };
    let mut chars = head.chars();
    let person = match chars.next() {
        Some('1') => "first",
        Some('2') => "second",
        Some('3') => "third",
        _ => return Err(bad()),
    };
    let number = match chars.as_str() {
        "sg" => "singular",
        "pl" => "plural",
        _ => return Err(bad()),
    };
    let gender = match gender {
        None => None,
        Some("m") => Some("masculine"),
        Some("f") => Some("feminine"),
        Some(_) => return Err(bad()),
    };
    Ok(Gloss {
        person,
        number,
        gender,
    })
}

/// Reads tab-separated lines of gloss/form pairs; a line may hold several
/// pairs (table columns side by side). Blank lines and `#` comments are
/// skipped.
pub fn parse_pronoun_tsv(text: &str) -> Result<Vec<PronounRow>, ConvertError> {
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let cells: Vec<&str> = line.split('\t').map(str::trim).collect();
        if !cells.len().is_multiple_of(2) || cells.iter().any(|c| c.is_empty()) {
            return Err(ConvertError::Table {
                line: i + 1,
                message: "expected non-empty gloss/form pairs".to_string(),
            });
        }
        for pair in cells.chunks(2) {
            rows.push(PronounRow {
                line: Some(i + 1),
                gloss: pair[0].to_string(),
                form: pair[1].to_string(),
            });
        }
    }
    Ok(rows)
}

/// One entry per row, lemma and word form both the pronoun itself.
pub fn ingest_pronoun_table(
    rows: &[PronounRow],
    language: Option<&str>,
    model: &LexicalModel,
) -> Result<LmfInstance, ConvertError> {
    for cat in [LEMMA, PART_OF_SPEECH] {
        require_decoration(model, LEXICAL_ENTRY, cat)?;
    }
    for cat in [WORD_FORM, PERSON, NUMBER, GENDER] {
        require_decoration(model, INFLEXION, cat)?;
    }
    let mut global = LmfInstance::new(GLOBAL_INFORMATION);
    if let Some(lang) = language {
        global = global.literal(LANGUAGE_CATEGORY, lang);
    }
    let mut lexicon = LmfInstance::new(LEXICON).child(global);
    for row in rows {
        let g = parse_gloss(&row.gloss).map_err(|_| ConvertError::BadGloss {
            line: row.line,
            gloss: row.gloss.clone(),
        })?;
        let form: String = row.form.nfc().collect();
        let mut inflexion = LmfInstance::new(INFLEXION)
            .literal(WORD_FORM, &form)
            .reference(PERSON, g.person)
            .reference(NUMBER, g.number);
        if let Some(gender) = g.gender {
            inflexion = inflexion.reference(GENDER, gender);
        }
        lexicon.children.push(
            LmfInstance::new(LEXICAL_ENTRY)
                .literal(LEMMA, &form)
                .reference(PART_OF_SPEECH, PRONOUN)
                .child(LmfInstance::new(MORPHOLOGY).child(inflexion)),
        );
    }
    Ok(lexicon)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::full_form_model;
    use crate::datcat::Value;
    use crate::lmf::validate_instance;

    const TABLE: &str = include_str!("../../../../fixtures/berber/pronouns.tsv");

    #[test]
    fn glosses() {
        assert_eq!(
            parse_gloss("2sg.m").unwrap(),
            Gloss { person: "second", number: "singular", gender: Some("masculine") }
        );
        assert_eq!(
            parse_gloss("1sg").unwrap(),
            Gloss { person: "first", number: "singular", gender: None }
        );
        for bad in ["4sg.m", "2du", "2sg.n", "", "sg", "2sg."] {
            assert!(matches!(parse_gloss(bad), Err(ConvertError::BadGloss { .. })), "{bad}");
        }
    }

    #[test]
    fn rif_table() {
        let model = full_form_model().model;
        let rows = parse_pronoun_tsv(TABLE).unwrap();
        assert_eq!(rows.len(), 10);
        assert_eq!(rows[2], PronounRow { line: Some(2), gloss: "2sg.m".into(), form: "ʃək".into() });
        let lex = ingest_pronoun_table(&rows, Some("rif"), &model).unwrap();
        assert!(validate_instance(&lex, &model).is_ok());
        let entries = &lex.children[1..];
        assert_eq!(entries.len(), 10);
        let ungendered: Vec<_> = entries
            .iter()
            .filter(|e| e.children[0].children[0].value_of(GENDER).is_none())
            .map(|e| e.value_of(LEMMA).unwrap().text().to_string())
            .collect();
        assert_eq!(ungendered, ["nəʃ", "nəʃnin"]);
        let inf = &entries[2].children[0].children[0];
        assert_eq!(inf.value_of(WORD_FORM), Some(&Value::literal("ʃək")));
        assert_eq!(inf.value_of(PERSON), Some(&Value::reference("second")));
    }

    #[test]
    fn bad_gloss_has_line() {
        let model = full_form_model().model;
        let rows = parse_pronoun_tsv("1sg\ta\n4sg.m\tx\n").unwrap();
        assert_eq!(
            ingest_pronoun_table(&rows, None, &model).unwrap_err(),
            ConvertError::BadGloss { line: Some(2), gloss: "4sg.m".into() }
        );
        assert!(parse_pronoun_tsv("1sg\ta\tb\n").is_err());
    }
}

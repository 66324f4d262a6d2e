//! Flat morphological lexica: one surface form per line with its
//! morphological codes, then a comma, the lemma and a part-of-speech code.
//!
//! ```text
//! ferme ip1s ip3s sp1s sp3s im2s,fermer v
//! ```

use std::collections::BTreeMap;
use std::fmt;

use unicode_normalization::UnicodeNormalization;

use super::ConvertError;
use crate::datcat::Value;
use crate::lmf::{
    Feature, LexicalModel, LmfInstance, GLOBAL_INFORMATION, INFLEXION, LANGUAGE_CATEGORY,
    LEXICAL_ENTRY, LEXICON, MORPHOLOGY,
};
use crate::xml::XmlTree;
use crate::xmlread::{
    allow_attrs, children_with_paths, expect_name, leaf_text, malformed, no_text, required_attr,
    unexpected,
};

pub const LEMMA: &str = "lemma";
pub const PART_OF_SPEECH: &str = "partOfSpeech";
pub const WORD_FORM: &str = "wordForm";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatLexiconLine {
    /// 1-based line in the source file, when read from one.
    pub line_number: Option<usize>,
    pub surface_form: String,
    pub codes: Vec<String>,
    pub lemma: String,
    pub pos_code: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LineErrorKind {
    Empty,
    MissingComma,
    ExtraComma,
    MissingSurfaceForm,
    EmptyCodes,
    MissingPos,
}

impl LineErrorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            LineErrorKind::Empty => "Empty",
            LineErrorKind::MissingComma => "MissingComma",
            LineErrorKind::ExtraComma => "ExtraComma",
            LineErrorKind::MissingSurfaceForm => "MissingSurfaceForm",
            LineErrorKind::EmptyCodes => "EmptyCodes",
            LineErrorKind::MissingPos => "MissingPos",
        }
    }
}

impl fmt::Display for LineErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Parses one record; surrounding whitespace is ignored and forms are
/// NFC-normalized.
pub fn parse_flat_line(line: &str) -> Result<FlatLexiconLine, ConvertError> {
    let fail = |kind| ConvertError::Line { line: None, kind };
    let line = line.trim();
    if line.is_empty() {
        return Err(fail(LineErrorKind::Empty));
    }
    let Some((left, right)) = line.split_once(',') else {
        return Err(fail(LineErrorKind::MissingComma));
    };
    if right.contains(',') {
        return Err(fail(LineErrorKind::ExtraComma));
    }
    let mut left = left.split_whitespace();
    let Some(surface) = left.next() else {
        return Err(fail(LineErrorKind::MissingSurfaceForm));
    };
    let codes: Vec<String> = left.map(str::to_string).collect();
    if codes.is_empty() {
        return Err(fail(LineErrorKind::EmptyCodes));
    }
    let right: Vec<&str> = right.split_whitespace().collect();
    let [lemma @ .., pos] = right.as_slice() else {
        return Err(fail(LineErrorKind::MissingPos));
    };
    if lemma.is_empty() {
        return Err(fail(LineErrorKind::MissingPos));
    }
    Ok(FlatLexiconLine {
        line_number: None,
        surface_form: surface.nfc().collect(),
        codes,
        lemma: lemma.join(" ").nfc().collect(),
        pos_code: pos.to_string(),
    })
}

/// Parses a whole file, skipping blank lines and `#` comments.
pub fn parse_flat_lexicon(text: &str) -> Result<Vec<FlatLexiconLine>, ConvertError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut line = parse_flat_line(trimmed).map_err(|e| match e {
            ConvertError::Line { kind, .. } => ConvertError::Line {
                line: Some(i + 1),
                kind,
            },
            other => other,
        })?;
        line.line_number = Some(i + 1);
        out.push(line);
    }
    Ok(out)
}

/// Prefix codes for one category, tried longest first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Slot {
    pub category: String,
    pub codes: Vec<(String, String)>,
}

impl Slot {
    pub fn new(category: &str, codes: &[(&str, &str)]) -> Self {
        Slot {
            category: category.to_string(),
            codes: codes
                .iter()
                .map(|(p, v)| (p.to_string(), v.to_string()))
                .collect(),
        }
    }

    fn candidates<'a>(&'a self, rest: &'a str) -> Vec<&'a (String, String)> {
        let mut c: Vec<_> = self
            .codes
            .iter()
            .filter(|(p, _)| !p.is_empty() && rest.starts_with(p.as_str()))
            .collect();
        c.sort_by_key(|(prefix, _)| std::cmp::Reverse(prefix.len()));
        c
    }
}

/// Decoding rules for morphological codes. Slots are read left to right;
/// each may be absent from a code.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CodeTable {
    pub language: Option<String>,
    pub pos: BTreeMap<String, String>,
    pub slots: Vec<Slot>,
}

/// Category/value pairs in slot order.
pub type FeatureBundle = Vec<(String, String)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownCode {
    pub line: Option<usize>,
    pub code: String,
    /// The part of the code no rule accounts for.
    pub fragment: String,
}

impl fmt::Display for UnknownCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(l) = self.line {
            write!(f, "line {l}: ")?;
        }
        if self.fragment == self.code {
            write!(f, "unknown code `{}`", self.code)
        } else {
            write!(f, "unknown code `{}` (cannot read `{}`)", self.code, self.fragment)
        }
    }
}

impl std::error::Error for UnknownCode {}

impl CodeTable {
    pub fn decode(&self, code: &str) -> Result<FeatureBundle, UnknownCode> {
        let mut best = code;
        let mut bundle = Vec::new();
        if !code.is_empty() && self.search(code, 0, &mut bundle, &mut best) {
            return Ok(bundle);
        }
        Err(UnknownCode {
            line: None,
            code: code.to_string(),
            fragment: best.to_string(),
        })
    }

    fn search<'a>(
        &self,
        rest: &'a str,
        slot: usize,
        bundle: &mut FeatureBundle,
        best: &mut &'a str,
    ) -> bool {
        if rest.len() < best.len() {
            *best = rest;
        }
        if rest.is_empty() {
            return true;
        }
        let Some(s) = self.slots.get(slot) else {
            return false;
        };
        for (prefix, value) in s.candidates(rest) {
            bundle.push((s.category.clone(), value.clone()));
            if self.search(&rest[prefix.len()..], slot + 1, bundle, best) {
                return true;
            }
            bundle.pop();
        }
        self.search(rest, slot + 1, bundle, best)
    }

    pub fn part_of_speech(&self, code: &str) -> Option<&str> {
        self.pos.get(code).map(String::as_str)
    }

    /// Every category the table can produce.
    pub fn categories(&self) -> impl Iterator<Item = &str> {
        self.slots.iter().map(|s| s.category.as_str())
    }
}

pub fn decode_code(code: &str, table: &CodeTable) -> Result<FeatureBundle, UnknownCode> {
    table.decode(code)
}

/// Reads `<codeTable lang><pos code value/><slot category><code prefix value/></slot></codeTable>`.
pub fn load_code_table(tree: &XmlTree) -> Result<CodeTable, ConvertError> {
    let root = tree.root();
    let path = "/codeTable";
    expect_name(root, path, "codeTable")?;
    allow_attrs(root, path, &["lang"])?;
    no_text(root, path)?;
    let mut table = CodeTable {
        language: root.attr("lang").map(str::to_string),
        ..CodeTable::default()
    };
    for (child, cpath) in children_with_paths(root, path) {
        match child.name_str() {
            "pos" => {
                allow_attrs(child, &cpath, &["code", "value"])?;
                leaf_text(child, &cpath)?;
                let code = required_attr(child, &cpath, "code")?.to_string();
                let value = required_attr(child, &cpath, "value")?.to_string();
                if table.pos.insert(code, value).is_some() {
                    malformed(&cpath, "duplicate part-of-speech code")?;
                }
            }
            "slot" => {
                allow_attrs(child, &cpath, &["category"])?;
                no_text(child, &cpath)?;
                let mut slot = Slot {
                    category: required_attr(child, &cpath, "category")?.to_string(),
                    codes: Vec::new(),
                };
                for (code, kpath) in children_with_paths(child, &cpath) {
                    if code.name_str() != "code" {
                        unexpected::<()>(code, &kpath, "slot")?;
                    }
                    allow_attrs(code, &kpath, &["prefix", "value"])?;
                    leaf_text(code, &kpath)?;
                    let prefix = required_attr(code, &kpath, "prefix")?;
                    if prefix.is_empty() || slot.codes.iter().any(|(p, _)| p == prefix) {
                        malformed(&kpath, format!("empty or duplicate prefix `{prefix}`"))?;
                    }
                    slot.codes.push((prefix.to_string(), required_attr(code, &kpath, "value")?.to_string()));
                }
                table.slots.push(slot);
            }
            _ => unexpected::<()>(child, &cpath, "codeTable")?,
        }
    }
    Ok(table)
}

/// Groups lines by (lemma, part of speech) in order of first appearance and
/// builds a full-form lexicon: one entry per group, one inflexion per
/// (surface form, code).
pub fn flat_to_lmf(
    lines: &[FlatLexiconLine],
    table: &CodeTable,
    model: &LexicalModel,
) -> Result<LmfInstance, ConvertError> {
    for cat in [LEMMA, PART_OF_SPEECH] {
        require_decoration(model, LEXICAL_ENTRY, cat)?;
    }
    require_decoration(model, INFLEXION, WORD_FORM)?;
    for cat in table.categories() {
        require_decoration(model, INFLEXION, cat)?;
    }

    let mut unknown = Vec::new();
    let mut groups: Vec<((String, String), Vec<LmfInstance>)> = Vec::new();
    for line in lines {
        let mut inflexions = Vec::new();
        for code in &line.codes {
            match table.decode(code) {
                Ok(bundle) => {
                    let mut inf = LmfInstance::new(INFLEXION).literal(WORD_FORM, &line.surface_form);
                    inf.features.extend(
                        bundle
                            .into_iter()
                            .map(|(c, v)| Feature::new(&c, Value::Ref(v))),
                    );
                    inflexions.push(inf);
                }
                Err(mut e) => {
                    e.line = line.line_number;
                    unknown.push(e);
                }
            }
        }
        let Some(pos) = table.part_of_speech(&line.pos_code) else {
            unknown.push(UnknownCode {
                line: line.line_number,
                code: line.pos_code.clone(),
                fragment: line.pos_code.clone(),
            });
            continue;
        };
        let key = (line.lemma.clone(), pos.to_string());
        match groups.iter_mut().find(|(k, _)| *k == key) {
            Some((_, infs)) => infs.extend(inflexions),
            None => groups.push((key, inflexions)),
        }
    }
    if !unknown.is_empty() {
        return Err(ConvertError::UnknownCode(unknown));
    }

    let mut global = LmfInstance::new(GLOBAL_INFORMATION);
    if let Some(lang) = &table.language {
        if model.allows(GLOBAL_INFORMATION, LANGUAGE_CATEGORY) {
            global = global.literal(LANGUAGE_CATEGORY, lang);
        }
    }
    let mut lexicon = LmfInstance::new(LEXICON).child(global);
    for ((lemma, pos), inflexions) in groups {
        let mut morphology = LmfInstance::new(MORPHOLOGY);
        morphology.children = inflexions;
        lexicon.children.push(
            LmfInstance::new(LEXICAL_ENTRY)
                .literal(LEMMA, &lemma)
                .reference(PART_OF_SPEECH, &pos)
                .child(morphology),
        );
    }
    Ok(lexicon)
}

pub(crate) fn require_decoration(
    model: &LexicalModel,
    component: &str,
    category: &str,
) -> Result<(), ConvertError> {
    if model.allows(component, category) {
        Ok(())
    } else {
        Err(ConvertError::ModelMismatch(format!(
            "the model does not decorate {component} with `{category}`"
        )))
    }
}

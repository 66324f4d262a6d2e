//! Dictionary entries to and from lexicon entries.
//!
//! The container structure is fixed: `<entry>` is a LexicalEntry, `<form>` a
//! Form, children of `<gramGrp>` are features of the LexicalEntry and the
//! remaining children of `<entry>` are features of one Sense under the Form.
//! A mapping says which element carries which category; anything it does not
//! cover is an error rather than dropped.

use std::collections::BTreeMap;

use super::ConvertError;
use crate::datcat::Value;
use crate::lmf::{Feature, LexicalModel, LmfInstance, FORM, LEXICAL_ENTRY, SENSE};
use crate::xml::{ElementNode, XmlTree};
use crate::xmlread::{
    allow_attrs, children_with_paths, expect_name, leaf_text, malformed, no_text, required_attr,
    unexpected,
};

/// One element carrying one category. `wrap` names an element around it, as
/// `<cit>` around `<quote>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapRule {
    pub tei: String,
    pub wrap: Option<String>,
    pub component: String,
    pub category: String,
}

impl MapRule {
    pub fn new(tei: &str, component: &str, category: &str) -> Self {
        MapRule {
            tei: tei.to_string(),
            wrap: None,
            component: component.to_string(),
            category: category.to_string(),
        }
    }

    pub fn wrapped(mut self, wrap: &str) -> Self {
        self.wrap = Some(wrap.to_string());
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EntryMapping {
    rules: Vec<MapRule>,
    /// (category, text) to simple category id. Empty unless asked for.
    normalization: BTreeMap<(String, String), String>,
}

const CONTAINERS: [&str; 4] = ["entry", "form", "gramGrp", "sense"];

impl EntryMapping {
    /// Rules must be one-to-one between element names and
    /// component/category pairs.
    pub fn new(rules: Vec<MapRule>) -> Result<Self, ConvertError> {
        for (i, r) in rules.iter().enumerate() {
            if ![FORM, LEXICAL_ENTRY, SENSE].contains(&r.component.as_str()) {
                return Err(ConvertError::BadMapping(format!(
                    "`{}` maps to {}; only Form, LexicalEntry and Sense carry entry content",
                    r.tei, r.component
                )));
            }
            if r.wrap.is_some() && r.component != SENSE {
                return Err(ConvertError::BadMapping(format!(
                    "`{}` is wrapped but not mapped to Sense",
                    r.tei
                )));
            }
            let earlier = &rules[..i];
            let tei_taken = CONTAINERS.contains(&r.tei.as_str())
                || earlier
                    .iter()
                    .any(|p| p.tei == r.tei || p.wrap.as_deref() == Some(r.tei.as_str()));
            let wrap_taken = r.wrap.as_deref().is_some_and(|w| {
                w == r.tei || CONTAINERS.contains(&w) || earlier.iter().any(|p| p.tei == w)
            });
            if tei_taken || wrap_taken {
                return Err(ConvertError::BadMapping(format!(
                    "element `{}` is mapped twice or reserved",
                    r.tei
                )));
            }
            if rules[..i].iter().any(|p| p.component == r.component && p.category == r.category) {
                return Err(ConvertError::BadMapping(format!(
                    "{}/{} mapped twice",
                    r.component, r.category
                )));
            }
        }
        Ok(EntryMapping {
            rules,
            normalization: BTreeMap::new(),
        })
    }

    /// Turns `text` found for `category` into a reference to `id`.
    pub fn normalize(mut self, category: &str, text: &str, id: &str) -> Self {
        self.normalization
            .insert((category.to_string(), text.to_string()), id.to_string());
        self
    }

    pub fn rules(&self) -> &[MapRule] {
        &self.rules
    }

    pub fn has_normalization(&self) -> bool {
        !self.normalization.is_empty()
    }

    fn by_element(&self, component: &str, wrap: Option<&str>, tei: &str) -> Option<&MapRule> {
        self.rules
            .iter()
            .find(|r| r.component == component && r.tei == tei && r.wrap.as_deref() == wrap)
    }

    fn by_category(&self, component: &str, category: &str) -> Option<&MapRule> {
        self.rules
            .iter()
            .find(|r| r.component == component && r.category == category)
    }

    fn is_wrapper(&self, name: &str) -> bool {
        self.rules.iter().any(|r| r.wrap.as_deref() == Some(name))
    }

    fn value(&self, category: &str, text: &str) -> Value {
        match self.normalization.get(&(category.to_string(), text.to_string())) {
            Some(id) => Value::reference(id),
            None => Value::literal(text),
        }
    }

    fn text(&self, category: &str, value: &Value) -> String {
        match value {
            Value::Literal(t) => t.clone(),
            Value::Ref(id) => self
                .normalization
                .iter()
                .find(|((c, _), v)| c == category && v == &id)
                .map_or_else(|| id.clone(), |((_, t), _)| t.clone()),
        }
    }
}

/// Reads `<mapping><map tei component category [wrap]/><normalize category text ref/></mapping>`.
pub fn load_entry_mapping(tree: &XmlTree) -> Result<EntryMapping, ConvertError> {
    let root = tree.root();
    let path = "/mapping";
    expect_name(root, path, "mapping")?;
    allow_attrs(root, path, &[])?;
    no_text(root, path)?;
    let mut rules = Vec::new();
    let mut norms = Vec::new();
    for (child, cpath) in children_with_paths(root, path) {
        match child.name_str() {
            "map" => {
                allow_attrs(child, &cpath, &["tei", "wrap", "component", "category"])?;
                leaf_text(child, &cpath)?;
                let mut rule = MapRule::new(
                    required_attr(child, &cpath, "tei")?,
                    required_attr(child, &cpath, "component")?,
                    required_attr(child, &cpath, "category")?,
                );
                rule.wrap = child.attr("wrap").map(str::to_string);
                rules.push(rule);
            }
            "normalize" => {
                allow_attrs(child, &cpath, &["category", "text", "ref"])?;
                leaf_text(child, &cpath)?;
                norms.push((
                    required_attr(child, &cpath, "category")?.to_string(),
                    required_attr(child, &cpath, "text")?.to_string(),
                    required_attr(child, &cpath, "ref")?.to_string(),
                ));
            }
            _ => unexpected::<()>(child, &cpath, "mapping")?,
        }
    }
    let mut mapping = EntryMapping::new(rules)?;
    for (c, t, r) in norms {
        mapping = mapping.normalize(&c, &t, &r);
    }
    Ok(mapping)
}

fn plain(e: &ElementNode, path: &str) -> Result<(), ConvertError> {
    allow_attrs(e, path, &[])?;
    Ok(no_text(e, path)?)
}

/// Converts one `<entry>`. Text values are trimmed and kept as literals
/// unless the mapping normalizes them.
pub fn tei_to_lmf(
    entry: &XmlTree,
    mapping: &EntryMapping,
    model: &LexicalModel,
) -> Result<LmfInstance, ConvertError> {
    for r in mapping.rules() {
        super::flat::require_decoration(model, &r.component, &r.category)?;
    }
    let root = entry.root();
    let path = "/entry";
    expect_name(root, path, "entry")?;
    plain(root, path)?;

    let feature = |rule: &MapRule, e: &ElementNode, p: &str| -> Result<Feature, ConvertError> {
        allow_attrs(e, p, &[])?;
        let text = leaf_text(e, p)?;
        Ok(Feature::new(&rule.category, mapping.value(&rule.category, text.trim())))
    };
    let unmapped = |e: &ElementNode, p: String| ConvertError::UnmappedElement {
        path: p,
        element: e.name_str().to_string(),
    };

    let mut lex = LmfInstance::new(LEXICAL_ENTRY);
    let mut sense = LmfInstance::new(SENSE);
    for (child, cpath) in children_with_paths(root, path) {
        match child.name_str() {
            "form" => {
                plain(child, &cpath)?;
                let mut form = LmfInstance::new(FORM);
                for (o, opath) in children_with_paths(child, &cpath) {
                    let rule = mapping
                        .by_element(FORM, None, o.name_str())
                        .ok_or_else(|| unmapped(o, opath.clone()))?;
                    form.features.push(feature(rule, o, &opath)?);
                }
                lex.children.push(form);
            }
            "gramGrp" => {
                plain(child, &cpath)?;
                for (g, gpath) in children_with_paths(child, &cpath) {
                    let rule = mapping
                        .by_element(LEXICAL_ENTRY, None, g.name_str())
                        .ok_or_else(|| unmapped(g, gpath.clone()))?;
                    lex.features.push(feature(rule, g, &gpath)?);
                }
            }
            name if mapping.is_wrapper(name) => {
                plain(child, &cpath)?;
                let inner = children_with_paths(child, &cpath);
                let [(i, ipath)] = inner.as_slice() else {
                    malformed(&cpath, format!("<{name}> must hold exactly one element"))?
                };
                let rule = mapping
                    .by_element(SENSE, Some(name), i.name_str())
                    .ok_or_else(|| unmapped(i, ipath.clone()))?;
                sense.features.push(feature(rule, i, ipath)?);
            }
            name => {
                let rule = mapping
                    .by_element(SENSE, None, name)
                    .ok_or_else(|| unmapped(child, cpath.clone()))?;
                sense.features.push(feature(rule, child, &cpath)?);
            }
        }
    }
    if !sense.features.is_empty() {
        match lex.children.last_mut() {
            Some(form) => form.children.push(sense),
            None => malformed(path, "sense content without a <form>")?,
        }
    }
    Ok(lex)
}

/// Writes a lexical entry back as `<entry>`: forms first, then `<gramGrp>`,
/// then sense content in feature order.
pub fn lmf_to_tei(inst: &LmfInstance, mapping: &EntryMapping) -> Result<XmlTree, ConvertError> {
    if inst.component != LEXICAL_ENTRY {
        return Err(ConvertError::UnmappedComponent {
            location: format!("/{}", inst.component),
            component: inst.component.clone(),
        });
    }
    let el = |name: &str| ElementNode::new(name).map_err(|_| ConvertError::BadMapping(format!("invalid element name `{name}`")));
    let leaf = |rule: &MapRule, f: &Feature| -> Result<ElementNode, ConvertError> {
        Ok(el(&rule.tei)?.with_text(&mapping.text(&f.category, &f.value)))
    };
    let rule_for = |component: &str, f: &Feature, location: &str| {
        mapping
            .by_category(component, &f.category)
            .ok_or_else(|| ConvertError::UnmappedCategory {
                location: location.to_string(),
                component: component.to_string(),
                category: f.category.clone(),
            })
    };

    let mut entry = el("entry")?;
    let mut senses: Vec<(&LmfInstance, String)> = Vec::new();
    for (i, form) in inst.children.iter().enumerate() {
        let loc = crate::lmf::InstancePath::root().child(i).render(inst);
        if form.component != FORM {
            return Err(ConvertError::UnmappedComponent {
                location: loc,
                component: form.component.clone(),
            });
        }
        let mut f_el = el("form")?;
        for f in &form.features {
            f_el.push_child(leaf(rule_for(FORM, f, &loc)?, f)?);
        }
        entry.push_child(f_el);
        let mut stack: Vec<(&LmfInstance, String)> = form
            .children
            .iter()
            .rev()
            .map(|s| (s, format!("{loc}/{}", s.component)))
            .collect();
        while let Some((s, sloc)) = stack.pop() {
            if s.component != SENSE {
                return Err(ConvertError::UnmappedComponent {
                    location: sloc,
                    component: s.component.clone(),
                });
            }
            stack.extend(s.children.iter().rev().map(|c| (c, format!("{sloc}/{}", c.component))));
            senses.push((s, sloc));
        }
    }
    if !inst.features.is_empty() {
        let mut gram = el("gramGrp")?;
        for f in &inst.features {
            gram.push_child(leaf(rule_for(LEXICAL_ENTRY, f, "/LexicalEntry")?, f)?);
        }
        entry.push_child(gram);
    }
    for (s, sloc) in senses {
        for f in &s.features {
            let rule = rule_for(SENSE, f, &sloc)?;
            let mut e = leaf(rule, f)?;
            if let Some(w) = &rule.wrap {
                e = el(w)?.with_child(e);
            }
            entry.push_child(e);
        }
    }
    Ok(XmlTree::new(entry))
}

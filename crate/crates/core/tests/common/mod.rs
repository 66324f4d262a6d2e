// Generators and reference implementations shared by the property suites.
// The oracles here deliberately avoid the library's own comparison and
// renaming code.

#![allow(dead_code)]

use std::collections::BTreeMap;

use lexkit::datcat::{ConceptualDomain, DataCategory, Datatype, LanguageSection, Registry};
use lexkit::datcat::Value;
use lexkit::lmf::{Feature, LexicalModel, LmfInstance, LANGUAGE_CATEGORY};
use lexkit::xml::{ElementNode, Name, Node, XmlTree};
use proptest::prelude::*;

// ---------------------------------------------------------------------------
// Choice tape: a byte string read as a sequence of bounded choices. An
// exhausted tape answers 0, so shrinking the tape shrinks the sample.

pub struct Tape<'a> {
    bytes: &'a [u8],
    at: usize,
}

impl<'a> Tape<'a> {
    pub fn new(bytes: &'a [u8]) -> Self {
        Tape { bytes, at: 0 }
    }

    /// A value in `0..n`; 0 when `n <= 1` or the tape is exhausted.
    pub fn choose(&mut self, n: usize) -> usize {
        if n <= 1 {
            return 0;
        }
        let b = self.bytes.get(self.at).copied().unwrap_or(0);
        self.at += 1;
        b as usize % n
    }

    pub fn flip(&mut self) -> bool {
        self.choose(2) == 1
    }

    pub fn pick<'b, T>(&mut self, items: &'b [T]) -> &'b T {
        &items[self.choose(items.len())]
    }
}

pub fn tape() -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(any::<u8>(), 0..256)
}

// ---------------------------------------------------------------------------
// XML trees

const ELEMENT_NAMES: &[&str] = &["a", "b", "entry", "form", "x.y", "n-1", "_u", "gramGrp"];
const ATTRIBUTE_NAMES: &[&str] = &["id", "type", "xml:lang", "n"];

fn text() -> impl Strategy<Value = String> {
    "[a-z &<>\"'é\t\n]{1,6}".prop_filter("significant", |s| !s.trim().is_empty())
}

fn attributes() -> impl Strategy<Value = Vec<(String, String)>> {
    prop::collection::btree_map(prop::sample::select(ATTRIBUTE_NAMES), "[a-z &<>\"']{0,4}", 0..3)
        .prop_map(|m| m.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
}

#[derive(Debug, Clone)]
enum Item {
    Text(String),
    Element(ElementNode),
}

fn build(name: &str, attrs: Vec<(String, String)>, items: Vec<Item>) -> ElementNode {
    let mut e = ElementNode::new(name).expect("pool names are valid");
    for (k, v) in attrs {
        e.add_attr(&k, &v).expect("distinct attribute names");
    }
    let mut last_text = false;
    for item in items {
        match item {
            // Adjacent text would merge on reparse.
            Item::Text(t) if !last_text => {
                e.push_text(&t);
                last_text = true;
            }
            Item::Text(_) => {}
            Item::Element(c) => {
                e.push_child(c);
                last_text = false;
            }
        }
    }
    e
}

pub fn xml_element() -> impl Strategy<Value = ElementNode> {
    let leaf = (prop::sample::select(ELEMENT_NAMES), attributes(), prop::option::of(text())).prop_map(
        |(n, a, t)| build(n, a, t.into_iter().map(Item::Text).collect()),
    );
    leaf.prop_recursive(4, 32, 4, |inner| {
        (
            prop::sample::select(ELEMENT_NAMES),
            attributes(),
            prop::collection::vec(
                prop_oneof![inner.prop_map(Item::Element), text().prop_map(Item::Text)],
                0..5,
            ),
        )
            .prop_map(|(n, a, items)| build(n, a, items))
    })
}

pub fn xml_tree() -> impl Strategy<Value = XmlTree> {
    xml_element().prop_map(XmlTree::new)
}

/// Test-side exact equality: names, attribute sets and text byte for byte.
pub fn exact_eq(a: &ElementNode, b: &ElementNode) -> bool {
    let mut aa: Vec<_> = a.attributes().to_vec();
    let mut ba: Vec<_> = b.attributes().to_vec();
    aa.sort();
    ba.sort();
    a.name() == b.name()
        && aa == ba
        && a.children().len() == b.children().len()
        && a.children().iter().zip(b.children()).all(|(x, y)| match (x, y) {
            (Node::Text(s), Node::Text(t)) => s == t,
            (Node::Element(s), Node::Element(t)) => exact_eq(s, t),
            _ => false,
        })
}

// ---------------------------------------------------------------------------
// Labelled shapes and the brute-force isomorphism oracle

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shape {
    pub label: usize,
    pub text: bool,
    pub kids: Vec<Shape>,
}

impl Shape {
    pub fn size(&self) -> usize {
        1 + self.kids.iter().map(Shape::size).sum::<usize>()
    }

    pub fn relabel(&self, f: &dyn Fn(usize) -> usize) -> Shape {
        Shape {
            label: f(self.label),
            text: self.text,
            kids: self.kids.iter().map(|k| k.relabel(f)).collect(),
        }
    }

    /// Relabels the node at pre-order position `target`.
    pub fn set_label(&mut self, target: usize, label: usize) -> usize {
        if target == 0 {
            self.label = label;
            return usize::MAX;
        }
        let mut t = target - 1;
        for k in &mut self.kids {
            let s = k.size();
            if t < s {
                k.set_label(t, label);
                return usize::MAX;
            }
            t -= s;
        }
        t
    }

    pub fn to_tree(&self, pool: &[&str]) -> XmlTree {
        XmlTree::new(self.to_element(pool))
    }

    fn to_element(&self, pool: &[&str]) -> ElementNode {
        let mut e = ElementNode::new(pool[self.label]).expect("pool names are valid");
        if self.text {
            e.push_text("t");
        }
        for k in &self.kids {
            e.push_child(k.to_element(pool));
        }
        e
    }
}

/// Trees of at most `max_nodes` nodes over labels `0..labels`.
pub fn shape(labels: usize, max_nodes: usize) -> impl Strategy<Value = Shape> {
    let leaf = (0..labels, any::<bool>()).prop_map(|(label, text)| Shape { label, text, kids: vec![] });
    leaf.prop_recursive(4, max_nodes as u32, 3, move |inner| {
        (0..labels, any::<bool>(), prop::collection::vec(inner, 0..4))
            .prop_map(|(label, text, kids)| Shape { label, text, kids })
    })
    .prop_filter("node budget", move |s| s.size() <= max_nodes)
}

fn names_of(e: &ElementNode, out: &mut Vec<Name>) {
    if !out.contains(e.name()) {
        out.push(e.name().clone());
    }
    for c in e.elements() {
        names_of(c, out);
    }
}

pub fn distinct_names(t: &XmlTree) -> Vec<Name> {
    let mut v = Vec::new();
    names_of(t.root(), &mut v);
    v.sort();
    v
}

/// Same element skeleton after renaming `a` through `map`; text ignored.
pub fn shape_eq_under(a: &ElementNode, b: &ElementNode, map: &BTreeMap<Name, Name>) -> bool {
    map.get(a.name()) == Some(b.name()) && {
        let ak: Vec<_> = a.elements().collect();
        let bk: Vec<_> = b.elements().collect();
        ak.len() == bk.len() && ak.iter().zip(&bk).all(|(x, y)| shape_eq_under(x, y, map))
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Every bijection between the name sets under which `a` becomes `b`.
pub fn brute_force_isomorphisms(a: &XmlTree, b: &XmlTree) -> Vec<BTreeMap<Name, Name>> {
    let na = distinct_names(a);
    let nb = distinct_names(b);
    if na.len() != nb.len() {
        return vec![];
    }
    permutations(na.len())
        .into_iter()
        .map(|p| na.iter().cloned().zip(p.iter().map(|&i| nb[i].clone())).collect())
        .filter(|m| shape_eq_under(a.root(), b.root(), m))
        .collect()
}

pub const POOL_A: &[&str] = &["a", "b", "c", "d", "e"];
pub const POOL_B: &[&str] = &["p", "q", "r", "s", "t"];

/// Pairs biased towards near-isomorphic cases.
pub fn iso_pair() -> impl Strategy<Value = (XmlTree, XmlTree)> {
    let perm = Just((0..5).collect::<Vec<usize>>()).prop_shuffle();
    (shape(5, 8), shape(5, 8), perm, 0..4usize, any::<prop::sample::Index>(), 0..5usize).prop_map(
        |(a, other, perm, mode, at, label)| {
            let renamed = a.relabel(&|l| perm[l]);
            let b = match mode {
                0 => renamed,
                1 => {
                    let mut b = renamed;
                    let n = b.size();
                    b.set_label(at.index(n), label);
                    b
                }
                // Collapses two labels.
                2 => a.relabel(&|l| perm[if l == 1 { 0 } else { l }]),
                _ => other,
            };
            (a.to_tree(POOL_A), b.to_tree(POOL_B))
        },
    )
}

// ---------------------------------------------------------------------------
// Registries

const LANGS: &[&str] = &["fr", "de", "en", "ar"];
const LABELS: &[&str] = &["genre", "Genus", "gender", "number", "nombre", "x y"];

fn subset(tape: &mut Tape, items: &[String]) -> Vec<String> {
    items.iter().filter(|_| tape.flip()).cloned().collect()
}

fn sections(tape: &mut Tape, complex: bool, values: Option<&[String]>) -> Vec<LanguageSection> {
    let mut out = Vec::new();
    for lang in LANGS {
        if !tape.flip() {
            continue;
        }
        let names: Vec<&str> = (0..1 + tape.choose(2)).map(|_| *tape.pick(LABELS)).collect();
        let mut s = LanguageSection::new(lang, names);
        if complex && tape.flip() {
            s = s.refine("refined & <narrowed>");
        }
        if let Some(values) = values {
            let mut r = subset(tape, values);
            if r.is_empty() {
                r.push(values[0].clone());
            }
            if tape.flip() {
                s = s.restrict(r);
            }
        }
        out.push(s);
    }
    out
}

/// Categories of a random registry in dependency order: simple values
/// first, then the complex categories that use them.
pub fn registry_categories(bytes: &[u8]) -> Vec<DataCategory> {
    let mut tape = Tape::new(bytes);
    let mut cats = Vec::new();
    let simple: Vec<String> = (0..1 + tape.choose(6)).map(|i| format!("value{i}")).collect();
    for id in &simple {
        let mut c = DataCategory::simple(id);
        if tape.flip() {
            c = c.definition("en", "a value");
        }
        for s in sections(&mut tape, false, None) {
            c = c.section(s);
        }
        cats.push(c);
    }
    for i in 0..tape.choose(5) {
        let id = format!("category{i}");
        let mut c = DataCategory::complex(&id).profile(tape.pick(&["morpho-syntax", "semantics"]));
        if tape.flip() {
            c = c.definition("fr", "catégorie \"grammaticale\"");
        }
        let values = match tape.choose(4) {
            0 => {
                c = c.datatype(*tape.pick(&[Datatype::String, Datatype::Number, Datatype::Date]));
                None
            }
            1 => {
                c = c.codes([("fr", "French"), ("de", "German")]);
                None
            }
            _ => {
                let mut v = subset(&mut tape, &simple);
                if v.is_empty() {
                    v.push(simple[tape.choose(simple.len())].clone());
                }
                c = c.values(v.clone());
                Some(v)
            }
        };
        for s in sections(&mut tape, true, values.as_deref()) {
            c = c.section(s);
        }
        cats.push(c);
    }
    cats
}

pub fn build_registry(cats: &[DataCategory]) -> Registry {
    let mut reg = Registry::new("1.0");
    for c in cats {
        reg.register(c.clone()).expect("generated categories are well formed");
    }
    reg
}

// ---------------------------------------------------------------------------
// Lexicon instances

const STRINGS: &[&str] = &["chat", "fermer", "a & b", "x<y", "été", "\"q\""];

fn literal_for(model: &LexicalModel, category: &str, tape: &mut Tape) -> String {
    let dom = model.registry().get(category).and_then(|c| c.conceptual_domain.as_ref());
    match dom {
        Some(ConceptualDomain::Datatype { codes, .. }) if !codes.is_empty() => {
            tape.pick(codes).value.clone()
        }
        Some(ConceptualDomain::Datatype { datatype: Datatype::Number, .. }) => tape.pick(&["3", "4.5"]).to_string(),
        Some(ConceptualDomain::Datatype { datatype: Datatype::Date, .. }) => "2024-02-29".to_string(),
        Some(ConceptualDomain::Datatype { datatype: Datatype::Code, .. }) => tape.pick(&["er", "ir1"]).to_string(),
        _ => tape.pick(STRINGS).to_string(),
    }
}

/// A value the model accepts for `category` in `language`.
pub fn valid_value(model: &LexicalModel, category: &str, language: &str, tape: &mut Tape) -> Value {
    if category == LANGUAGE_CATEGORY {
        return Value::literal(language);
    }
    match model.registry().resolve_domain(category, Some(language)) {
        Ok(domain) => Value::reference(tape.pick(domain)),
        Err(_) => Value::literal(&literal_for(model, category, tape)),
    }
}

fn sample_node(model: &LexicalModel, component: &str, language: &str, depth: usize, tape: &mut Tape) -> LmfInstance {
    let mut node = LmfInstance::new(component);
    for cat in model.categories_for(component) {
        if tape.flip() {
            node.features.push(Feature::new(cat, valid_value(model, cat, language, tape)));
        }
    }
    let edges: Vec<_> = model.metamodel().children_of(component).collect();
    for (child, card) in edges {
        let min = card.min();
        let max = card.max().unwrap_or(min + 2).min(min + 2);
        let n = if depth >= 4 { min } else { min + tape.choose(max - min + 1) };
        for _ in 0..n {
            node.children.push(sample_node(model, child, language, depth + 1, tape));
        }
    }
    node
}

/// A conforming instance rooted at the model's root component.
pub fn sample_instance(model: &LexicalModel, bytes: &[u8]) -> LmfInstance {
    let mut tape = Tape::new(bytes);
    let language = *tape.pick(&["fr", "de"]);
    let root = model.metamodel().root().to_string();
    let mut inst = sample_node(model, &root, language, 0, &mut tape);
    inst.language = Some(language.to_string());
    inst
}

// ---------------------------------------------------------------------------
// Dictionary entries in the shape the default mapping reads and writes

const GRAM: &[&str] = &["pos", "gen", "num", "subc"];
const ENTRY_TEXT: &[&str] = &["table", "n.", "f.", "Pièce de mobilier", "x & y", "<b>"];

/// An `<entry>` in the element order the mapping writes back.
pub fn sample_entry(bytes: &[u8]) -> XmlTree {
    let mut tape = Tape::new(bytes);
    let el = |n: &str| ElementNode::new(n).unwrap();
    let mut entry = el("entry");
    let forms = 1 + tape.choose(2);
    for _ in 0..forms {
        let mut form = el("form");
        for _ in 0..tape.choose(3) {
            form.push_child(el("orth").with_text(tape.pick(ENTRY_TEXT)));
        }
        entry.push_child(form);
    }
    if tape.flip() {
        let mut gram = el("gramGrp");
        for _ in 0..1 + tape.choose(4) {
            gram.push_child(el(tape.pick(GRAM)).with_text(tape.pick(ENTRY_TEXT)));
        }
        entry.push_child(gram);
    }
    for _ in 0..tape.choose(4) {
        let text = tape.pick(ENTRY_TEXT);
        if tape.flip() {
            entry.push_child(el("def").with_text(text));
        } else {
            entry.push_child(el("cit").with_child(el("quote").with_text(text)));
        }
    }
    XmlTree::new(entry)
}

pub fn fixture(rel: &str) -> String {
    let path = format!("{}/../../fixtures/{rel}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

pub fn fixture_path(rel: &str) -> String {
    format!("{}/../../fixtures/{rel}", env!("CARGO_MANIFEST_DIR"))
}

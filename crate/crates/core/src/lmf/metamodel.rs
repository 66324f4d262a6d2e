use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use super::LmfError;
use crate::xml::is_element_name;

pub const LEXICON: &str = "Lexicon";
pub const GLOBAL_INFORMATION: &str = "GlobalInformation";
pub const LEXICAL_ENTRY: &str = "LexicalEntry";
pub const FORM: &str = "Form";
pub const SENSE: &str = "Sense";
pub const MORPHOLOGY: &str = "Morphology";
pub const PARADIGM: &str = "Paradigm";
pub const INFLEXION: &str = "Inflexion";

/// How many children of a given component a parent may hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cardinality {
    /// `0..1`
    Optional,
    /// `1`
    One,
    /// `0..*`
    Many,
    /// `1..*`
    AtLeastOne,
}

impl Cardinality {
    pub fn min(self) -> usize {
        match self {
            Cardinality::Optional | Cardinality::Many => 0,
            Cardinality::One | Cardinality::AtLeastOne => 1,
        }
    }

    pub fn max(self) -> Option<usize> {
        match self {
            Cardinality::Optional | Cardinality::One => Some(1),
            Cardinality::Many | Cardinality::AtLeastOne => None,
        }
    }

    pub fn admits(self, count: usize) -> bool {
        count >= self.min() && self.max().is_none_or(|m| count <= m)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Cardinality::Optional => "0..1",
            Cardinality::One => "1",
            Cardinality::Many => "0..*",
            Cardinality::AtLeastOne => "1..*",
        }
    }
}

impl fmt::Display for Cardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Cardinality {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "0..1" | "?" => Ok(Cardinality::Optional),
            "1" => Ok(Cardinality::One),
            "0..*" | "*" => Ok(Cardinality::Many),
            "1..*" | "+" => Ok(Cardinality::AtLeastOne),
            other => Err(format!("unknown cardinality `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub name: String,
    /// When non-empty, the only complex categories this component may carry.
    pub allowed_categories: Vec<String>,
}

impl Component {
    pub fn new(name: &str) -> Self {
        Component {
            name: name.to_string(),
            allowed_categories: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub parent: String,
    pub child: String,
    pub cardinality: Cardinality,
}

impl Edge {
    pub fn new(parent: &str, child: &str, cardinality: Cardinality) -> Self {
        Edge {
            parent: parent.to_string(),
            child: child.to_string(),
            cardinality,
        }
    }
}

/// A component graph rooted at one component. Equality is on the sets of
/// components and edges, independent of declaration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Metamodel {
    root: String,
    components: BTreeMap<String, Component>,
    edges: BTreeMap<(String, String), Cardinality>,
}

impl Metamodel {
    pub fn new(
        root: &str,
        components: impl IntoIterator<Item = Component>,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Result<Metamodel, LmfError> {
        let mut map = BTreeMap::new();
        for c in components {
            if !is_element_name(&c.name) {
                return Err(LmfError::BadName(c.name));
            }
            if map.contains_key(&c.name) {
                return Err(LmfError::NameCollision(c.name));
            }
            map.insert(c.name.clone(), c);
        }
        if !map.contains_key(root) {
            return Err(LmfError::UnknownComponent(root.to_string()));
        }
        let mut edge_map = BTreeMap::new();
        for e in edges {
            for end in [&e.parent, &e.child] {
                if !map.contains_key(end) {
                    return Err(LmfError::UnknownComponent(end.clone()));
                }
            }
            if e.child == root && e.parent != root {
                return Err(LmfError::InvalidEdge {
                    parent: e.parent,
                    child: e.child,
                    reason: "the root cannot be nested".into(),
                });
            }
            let key = (e.parent.clone(), e.child.clone());
            if edge_map.insert(key, e.cardinality).is_some() {
                return Err(LmfError::InvalidEdge {
                    parent: e.parent,
                    child: e.child,
                    reason: "declared twice".into(),
                });
            }
        }
        let mm = Metamodel {
            root: root.to_string(),
            components: map,
            edges: edge_map,
        };
        let reachable = mm.reachable();
        if let Some(orphan) = mm.components.keys().find(|c| !reachable.contains(c.as_str())) {
            return Err(LmfError::Unreachable(orphan.clone()));
        }
        Ok(mm)
    }

    fn reachable(&self) -> BTreeSet<&str> {
        let mut seen = BTreeSet::from([self.root.as_str()]);
        let mut queue = VecDeque::from([self.root.as_str()]);
        while let Some(c) = queue.pop_front() {
            for (child, _) in self.children_of(c) {
                if seen.insert(child) {
                    queue.push_back(child);
                }
            }
        }
        seen
    }

    pub fn root(&self) -> &str {
        &self.root
    }

    pub fn component(&self, name: &str) -> Option<&Component> {
        self.components.get(name)
    }

    pub fn components(&self) -> impl Iterator<Item = &Component> {
        self.components.values()
    }

    pub fn has_component(&self, name: &str) -> bool {
        self.components.contains_key(name)
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges
            .iter()
            .map(|((p, c), card)| Edge::new(p, c, *card))
    }

    pub fn edge(&self, parent: &str, child: &str) -> Option<Cardinality> {
        self.edges
            .get(&(parent.to_string(), child.to_string()))
            .copied()
    }

    /// Permitted child components of `parent` with their cardinalities.
    pub fn children_of<'a>(&'a self, parent: &'a str) -> impl Iterator<Item = (&'a str, Cardinality)> + 'a {
        self.edges
            .iter()
            .filter(move |((p, _), _)| p == parent)
            .map(|((_, c), card)| (c.as_str(), *card))
    }

    /// Union with `ext`; `self` is untouched.
    pub fn extend(&self, ext: &Extension) -> Result<Metamodel, LmfError> {
        if !self.has_component(&ext.attach_point) {
            return Err(LmfError::UnknownAttachPoint(ext.attach_point.clone()));
        }
        let new: BTreeSet<&str> = ext.components.iter().map(|c| c.name.as_str()).collect();
        if let Some(clash) = new.iter().find(|n| self.has_component(n)) {
            return Err(LmfError::NameCollision(clash.to_string()));
        }
        for e in &ext.edges {
            let parent_ok = e.parent == ext.attach_point || new.contains(e.parent.as_str());
            if !parent_ok || !new.contains(e.child.as_str()) {
                return Err(LmfError::InvalidEdge {
                    parent: e.parent.clone(),
                    child: e.child.clone(),
                    reason: format!(
                        "extension edges must hang below `{}` and end in a new component",
                        ext.attach_point
                    ),
                });
            }
        }
        Metamodel::new(
            &self.root,
            self.components
                .values()
                .cloned()
                .chain(ext.components.iter().cloned()),
            self.edges().chain(ext.edges.iter().cloned()),
        )
    }
}

/// New components and edges hung below an existing component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extension {
    pub attach_point: String,
    pub components: Vec<Component>,
    pub edges: Vec<Edge>,
}

/// The core metamodel: a lexicon with its global information and entries;
/// each entry has a form carrying senses, which may nest.
pub fn core_metamodel() -> Metamodel {
    use Cardinality::*;
    Metamodel::new(
        LEXICON,
        [LEXICON, GLOBAL_INFORMATION, LEXICAL_ENTRY, FORM, SENSE].map(Component::new),
        [
            Edge::new(LEXICON, GLOBAL_INFORMATION, One),
            Edge::new(LEXICON, LEXICAL_ENTRY, AtLeastOne),
            Edge::new(LEXICAL_ENTRY, FORM, Optional),
            Edge::new(FORM, SENSE, Many),
            Edge::new(SENSE, SENSE, Many),
        ],
    )
    .expect("core metamodel is well formed")
}

/// Full-form morphology: an optional `Morphology` under each entry holding an
/// optional `Paradigm` and one or more `Inflexion`s.
pub fn morphology_extension() -> Extension {
    use Cardinality::*;
    Extension {
        attach_point: LEXICAL_ENTRY.to_string(),
        components: [MORPHOLOGY, PARADIGM, INFLEXION].map(Component::new).to_vec(),
        edges: vec![
            Edge::new(LEXICAL_ENTRY, MORPHOLOGY, Optional),
            Edge::new(MORPHOLOGY, PARADIGM, Optional),
            Edge::new(MORPHOLOGY, INFLEXION, AtLeastOne),
        ],
    }
}

pub fn full_form_metamodel() -> Metamodel {
    core_metamodel()
        .extend(&morphology_extension())
        .expect("morphology extension fits the core")
}

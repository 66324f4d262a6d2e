//! Consistent element renaming between two trees.
//!
//! Two trees are isomorphic when a bijection between their element-name sets
//! turns one into the other under [`CompareMode::Structure`]. Because children
//! are ordered, structural equality pairs nodes positionally, so a candidate
//! bijection is forced node by node; the search either finds the unique map
//! over the names in use or finds a conflict.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use super::compare::{structural_equal, CompareMode};
use super::tree::{ElementNode, Name, XmlTree};

pub const DEFAULT_NAME_BUDGET: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsoError {
    #[error("search budget exceeded: {found} distinct element names, limit is {limit}")]
    SearchBudgetExceeded { found: usize, limit: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IsoOptions {
    /// Largest distinct-name set accepted on either side.
    pub max_names: usize,
}

impl Default for IsoOptions {
    fn default() -> Self {
        IsoOptions {
            max_names: DEFAULT_NAME_BUDGET,
        }
    }
}

/// A bijection between element names.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Renaming(BTreeMap<Name, Name>);

impl Renaming {
    pub fn new() -> Self {
        Renaming::default()
    }

    pub fn identity<'a>(names: impl IntoIterator<Item = &'a Name>) -> Self {
        Renaming(names.into_iter().map(|n| (n.clone(), n.clone())).collect())
    }

    pub fn insert(&mut self, from: Name, to: Name) -> Option<Name> {
        self.0.insert(from, to)
    }

    pub fn get(&self, from: &str) -> Option<&Name> {
        self.0.iter().find(|(k, _)| k.as_str() == from).map(|(_, v)| v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Name, &Name)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::BTreeSet::new();
        self.0.values().all(|v| seen.insert(v))
    }

    /// Renamed copy of `tree`; names absent from the map are kept.
    pub fn apply(&self, tree: &XmlTree) -> XmlTree {
        XmlTree::new(
            tree.root()
                .rename_with(&|n| self.0.get(n).cloned().unwrap_or_else(|| n.clone())),
        )
    }
}

impl FromIterator<(Name, Name)> for Renaming {
    fn from_iter<I: IntoIterator<Item = (Name, Name)>>(iter: I) -> Self {
        Renaming(iter.into_iter().collect())
    }
}

impl fmt::Display for Renaming {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k}->{v}")?;
        }
        Ok(())
    }
}

pub fn find_isomorphism(a: &XmlTree, b: &XmlTree) -> Result<Option<Renaming>, IsoError> {
    find_isomorphism_with(a, b, IsoOptions::default())
}

pub fn find_isomorphism_with(
    a: &XmlTree,
    b: &XmlTree,
    options: IsoOptions,
) -> Result<Option<Renaming>, IsoError> {
    let names_a = a.element_names().len();
    let names_b = b.element_names().len();
    let found = names_a.max(names_b);
    if found > options.max_names {
        return Err(IsoError::SearchBudgetExceeded {
            found,
            limit: options.max_names,
        });
    }
    if names_a != names_b || a.element_count() != b.element_count() {
        return Ok(None);
    }
    let mut forward: BTreeMap<&Name, &Name> = BTreeMap::new();
    let mut backward: BTreeMap<&Name, &Name> = BTreeMap::new();
    let mut stack: Vec<(&ElementNode, &ElementNode)> = vec![(a.root(), b.root())];
    while let Some((x, y)) = stack.pop() {
        if *forward.entry(x.name()).or_insert(y.name()) != y.name()
            || *backward.entry(y.name()).or_insert(x.name()) != x.name()
        {
            return Ok(None);
        }
        let xs: Vec<_> = x.elements().collect();
        let ys: Vec<_> = y.elements().collect();
        if xs.len() != ys.len() {
            return Ok(None);
        }
        stack.extend(xs.into_iter().zip(ys));
    }
    let renaming: Renaming = forward
        .into_iter()
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect();
    debug_assert!(structural_equal(
        &renaming.apply(a),
        b,
        CompareMode::Structure
    ));
    Ok(Some(renaming))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::xml::parse_xml;

    #[test]
    fn identity_on_self() {
        let t = parse_xml("<gramGrp><gen>f</gen><num>p</num></gramGrp>").unwrap();
        let r = find_isomorphism(&t, &t).unwrap().unwrap();
        assert_eq!(r, Renaming::identity(t.element_names()));
    }

    #[test]
    fn different_sizes() {
        let a = parse_xml("<gramGrp><gen>f</gen><num>p</num></gramGrp>").unwrap();
        let b = parse_xml("<x><y/></x>").unwrap();
        assert_eq!(find_isomorphism(&a, &b).unwrap(), None);
    }

    #[test]
    fn inconsistent_renaming_rejected() {
        // `a` would have to map to both `x` and `y`.
        let a = parse_xml("<r><a/><a/></r>").unwrap();
        let b = parse_xml("<s><x/><y/></s>").unwrap();
        assert_eq!(find_isomorphism(&a, &b).unwrap(), None);
        // and the reverse: two names collapsing onto one
        assert_eq!(find_isomorphism(&b, &a).unwrap(), None);
    }

    #[test]
    fn text_and_attributes_ignored() {
        let a = parse_xml("<r k='1'><a>one</a></r>").unwrap();
        let b = parse_xml("<s><t>two</t></s>").unwrap();
        let r = find_isomorphism(&a, &b).unwrap().unwrap();
        assert_eq!(r.to_string(), "a->t, r->s");
    }

    #[test]
    fn budget() {
        let src: String = (0..13).map(|i| format!("<n{i}/>")).collect();
        let t = parse_xml(&format!("<root>{src}</root>")).unwrap();
        assert!(matches!(
            find_isomorphism(&t, &t),
            Err(IsoError::SearchBudgetExceeded { found: 14, limit: 12 })
        ));
        let wide = IsoOptions { max_names: 20 };
        assert!(find_isomorphism_with(&t, &t, wide).unwrap().is_some());
    }
}

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::metamodel::Metamodel;
use super::LmfError;
use crate::datcat::{CategoryKind, Registry};
use crate::xml::is_element_name;

/// A metamodel decorated with data categories: the concrete model that
/// lexicon instances are validated against.
#[derive(Debug, Clone, PartialEq)]
pub struct LexicalModel {
    metamodel: Metamodel,
    decoration: BTreeMap<String, Vec<String>>,
    registry: Arc<Registry>,
}

/// Attaches complex categories to components.
///
/// Every id must be a registered complex category; components that restrict
/// their allowed categories only accept those.
pub fn decorate<C, I, S>(
    metamodel: Metamodel,
    decoration: I,
    registry: Arc<Registry>,
) -> Result<LexicalModel, LmfError>
where
    I: IntoIterator<Item = (C, Vec<S>)>,
    C: Into<String>,
    S: Into<String>,
{
    let mut map: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for (component, cats) in decoration {
        let component = component.into();
        let Some(spec) = metamodel.component(&component) else {
            return Err(LmfError::UnknownComponent(component));
        };
        let entry = map.entry(component.clone()).or_default();
        for cat in cats {
            let cat = cat.into();
            match registry.get(&cat).map(|c| c.kind) {
                None => return Err(LmfError::UnknownCategory(cat)),
                Some(CategoryKind::Simple) => return Err(LmfError::SimpleAsDescriptor(cat)),
                Some(CategoryKind::Complex) => {}
            }
            if !spec.allowed_categories.is_empty() && !spec.allowed_categories.contains(&cat) {
                return Err(LmfError::CategoryNotAllowed { component, category: cat });
            }
            if entry.contains(&cat) {
                return Err(LmfError::DuplicateDecoration { component, category: cat });
            }
            entry.push(cat);
        }
    }
    Ok(LexicalModel {
        metamodel,
        decoration: map,
        registry,
    })
}

impl LexicalModel {
    pub fn metamodel(&self) -> &Metamodel {
        &self.metamodel
    }

    pub fn registry(&self) -> &Registry {
        &self.registry
    }

    pub fn registry_arc(&self) -> Arc<Registry> {
        Arc::clone(&self.registry)
    }

    /// Categories decorating `component`, in declaration order.
    pub fn categories_for(&self, component: &str) -> &[String] {
        self.decoration.get(component).map_or(&[], Vec::as_slice)
    }

    pub fn allows(&self, component: &str, category: &str) -> bool {
        self.categories_for(component).iter().any(|c| c == category)
    }

    pub fn decoration(&self) -> impl Iterator<Item = (&str, &[String])> {
        self.decoration.iter().map(|(k, v)| (k.as_str(), v.as_slice()))
    }

    /// Every category used by the decoration.
    pub fn decorated_categories(&self) -> BTreeSet<&str> {
        self.decoration.values().flatten().map(String::as_str).collect()
    }

    /// Same decoration over another metamodel (for instance an extension of
    /// this one).
    pub fn with_metamodel(&self, metamodel: Metamodel) -> Result<LexicalModel, LmfError> {
        decorate(
            metamodel,
            self.decoration.iter().map(|(k, v)| (k.clone(), v.clone())),
            self.registry_arc(),
        )
    }
}

/// Element names used when writing instances as XML.
///
/// Names without an entry fall back to themselves with the first letter
/// lowercased, so `LexicalEntry` is written `<lexicalEntry>` and the category
/// `lemma` stays `<lemma>`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Vocabulary {
    map: BTreeMap<String, String>,
}

impl Vocabulary {
    pub fn new() -> Self {
        Vocabulary::default()
    }

    pub fn with(mut self, from: &str, to: &str) -> Result<Self, LmfError> {
        self.insert(from, to)?;
        Ok(self)
    }

    pub fn insert(&mut self, from: &str, to: &str) -> Result<(), LmfError> {
        if !is_element_name(to) {
            return Err(LmfError::BadName(to.to_string()));
        }
        self.map.insert(from.to_string(), to.to_string());
        Ok(())
    }

    pub fn element_for(&self, name: &str) -> String {
        match self.map.get(name) {
            Some(e) => e.clone(),
            None => default_element_name(name),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, &str)> {
        self.map.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    /// Checks that `names` map to pairwise distinct elements and returns the
    /// element-to-name table.
    pub fn reverse<'a>(
        &self,
        names: impl IntoIterator<Item = &'a str>,
    ) -> Result<BTreeMap<String, String>, LmfError> {
        let mut reverse: BTreeMap<String, String> = BTreeMap::new();
        for name in names {
            let element = self.element_for(name);
            if let Some(prev) = reverse.get(&element) {
                if prev != name {
                    return Err(LmfError::NonInjectiveVocabulary {
                        first: prev.clone(),
                        second: name.to_string(),
                        element,
                    });
                }
                continue;
            }
            reverse.insert(element, name.to_string());
        }
        Ok(reverse)
    }
}

pub fn default_element_name(name: &str) -> String {
    let mut chars = name.chars();
    match chars.next() {
        Some(first) => first.to_lowercase().chain(chars).collect(),
        None => String::new(),
    }
}

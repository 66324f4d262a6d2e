use std::fmt;

use crate::datcat::Value;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Feature {
    pub category: String,
    pub value: Value,
}

impl Feature {
    pub fn new(category: &str, value: Value) -> Self {
        Feature {
            category: category.to_string(),
            value,
        }
    }
}

/// One node of a lexicon: a component occurrence with its features.
///
/// `language`, when set, applies to this node and everything below it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LmfInstance {
    pub component: String,
    pub features: Vec<Feature>,
    pub children: Vec<LmfInstance>,
    pub language: Option<String>,
}

impl LmfInstance {
    pub fn new(component: &str) -> Self {
        LmfInstance {
            component: component.to_string(),
            features: Vec::new(),
            children: Vec::new(),
            language: None,
        }
    }

    pub fn literal(self, category: &str, text: &str) -> Self {
        self.feature(category, Value::literal(text))
    }

    pub fn reference(self, category: &str, id: &str) -> Self {
        self.feature(category, Value::reference(id))
    }

    pub fn feature(mut self, category: &str, value: Value) -> Self {
        self.features.push(Feature::new(category, value));
        self
    }

    pub fn child(mut self, child: LmfInstance) -> Self {
        self.children.push(child);
        self
    }

    pub fn lang(mut self, language: &str) -> Self {
        self.language = Some(language.to_string());
        self
    }

    /// First value of `category` on this node.
    pub fn value_of(&self, category: &str) -> Option<&Value> {
        self.features
            .iter()
            .find(|f| f.category == category)
            .map(|f| &f.value)
    }

    pub fn children_named<'a>(&'a self, component: &'a str) -> impl Iterator<Item = &'a LmfInstance> {
        self.children.iter().filter(move |c| c.component == component)
    }

    /// Number of nodes in this subtree.
    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(LmfInstance::node_count).sum::<usize>()
    }

    /// Depth-first pre-order walk with paths.
    pub fn walk(&self) -> Vec<(InstancePath, &LmfInstance)> {
        let mut out = Vec::new();
        let mut stack = vec![(InstancePath::root(), self)];
        while let Some((path, node)) = stack.pop() {
            for (i, child) in node.children.iter().enumerate().rev() {
                stack.push((path.child(i), child));
            }
            out.push((path, node));
        }
        out
    }
}

/// Child indices from the root of an instance down to one node.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InstancePath(Vec<usize>);

impl InstancePath {
    pub fn root() -> Self {
        InstancePath(Vec::new())
    }

    pub fn child(&self, index: usize) -> Self {
        let mut v = self.0.clone();
        v.push(index);
        InstancePath(v)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn resolve<'a>(&self, root: &'a LmfInstance) -> Option<&'a LmfInstance> {
        self.0
            .iter()
            .try_fold(root, |node, &i| node.children.get(i))
    }

    /// Component names along the path, with a 1-based position among
    /// same-component siblings where there is more than one.
    pub fn render(&self, root: &LmfInstance) -> String {
        let mut out = format!("/{}", root.component);
        let mut node = root;
        for &i in &self.0 {
            let Some(child) = node.children.get(i) else {
                out.push_str("/?");
                break;
            };
            let same = node.children_named(&child.component).count();
            out.push('/');
            out.push_str(&child.component);
            if same > 1 {
                let pos = node.children[..i]
                    .iter()
                    .filter(|c| c.component == child.component)
                    .count()
                    + 1;
                out.push_str(&format!("[{pos}]"));
            }
            node = child;
        }
        out
    }
}

impl fmt::Display for InstancePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("/")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("/")?;
            }
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

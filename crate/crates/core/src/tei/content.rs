use std::collections::BTreeSet;
use std::fmt;

use super::schema::TeiSchema;

/// What an element may contain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ContentModel {
    Empty,
    /// Character data only.
    Text,
    /// Element children matching the particle; whitespace between them is
    /// ignored, other text is not allowed.
    Elements(Particle),
}

/// Regular expression over child element names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Particle {
    Element(String),
    /// Any current member of a class.
    Class(String),
    Seq(Vec<Particle>),
    Choice(Vec<Particle>),
    Optional(Box<Particle>),
    ZeroOrMore(Box<Particle>),
    OneOrMore(Box<Particle>),
    /// Every element named by the inner particles at most once, in any order.
    EachOnce(Vec<Particle>),
}

impl Particle {
    pub fn element(name: &str) -> Self {
        Particle::Element(name.to_string())
    }

    pub fn class(name: &str) -> Self {
        Particle::Class(name.to_string())
    }

    pub fn optional(self) -> Self {
        Particle::Optional(Box::new(self))
    }

    pub fn many(self) -> Self {
        Particle::ZeroOrMore(Box::new(self))
    }

    pub fn at_least_one(self) -> Self {
        Particle::OneOrMore(Box::new(self))
    }

    /// Element names this particle can currently accept, classes expanded.
    pub fn referenced_names(&self, schema: &TeiSchema) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect(schema, &mut out);
        out
    }

    fn collect(&self, schema: &TeiSchema, out: &mut BTreeSet<String>) {
        match self {
            Particle::Element(n) => {
                out.insert(n.clone());
            }
            Particle::Class(c) => {
                out.extend(schema.class_members(c).iter().cloned());
            }
            Particle::Seq(ps) | Particle::Choice(ps) | Particle::EachOnce(ps) => {
                ps.iter().for_each(|p| p.collect(schema, out))
            }
            Particle::Optional(p) | Particle::ZeroOrMore(p) | Particle::OneOrMore(p) => {
                p.collect(schema, out)
            }
        }
    }

    /// Classes referenced anywhere in the particle.
    pub fn referenced_classes(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        let mut stack = vec![self];
        while let Some(p) = stack.pop() {
            match p {
                Particle::Class(c) => {
                    out.insert(c.as_str());
                }
                Particle::Element(_) => {}
                Particle::Seq(ps) | Particle::Choice(ps) | Particle::EachOnce(ps) => {
                    stack.extend(ps)
                }
                Particle::Optional(p) | Particle::ZeroOrMore(p) | Particle::OneOrMore(p) => {
                    stack.push(p)
                }
            }
        }
        out
    }

    pub fn matches(&self, schema: &TeiSchema, names: &[&str]) -> bool {
        self.step(schema, names, BTreeSet::from([0]))
            .contains(&names.len())
    }

    /// Positions reachable after matching this particle from any of `starts`.
    fn step(&self, schema: &TeiSchema, names: &[&str], starts: BTreeSet<usize>) -> BTreeSet<usize> {
        match self {
            Particle::Element(n) => starts
                .into_iter()
                .filter(|&i| names.get(i) == Some(&n.as_str()))
                .map(|i| i + 1)
                .collect(),
            Particle::Class(c) => {
                let members = schema.class_members(c);
                starts
                    .into_iter()
                    .filter(|&i| names.get(i).is_some_and(|n| members.iter().any(|m| m == n)))
                    .map(|i| i + 1)
                    .collect()
            }
            Particle::Seq(ps) => ps
                .iter()
                .fold(starts, |acc, p| p.step(schema, names, acc)),
            Particle::Choice(ps) => ps
                .iter()
                .flat_map(|p| p.step(schema, names, starts.clone()))
                .collect(),
            Particle::Optional(p) => {
                let mut out = p.step(schema, names, starts.clone());
                out.extend(starts);
                out
            }
            Particle::ZeroOrMore(p) => Self::closure(p, schema, names, starts),
            Particle::OneOrMore(p) => {
                let once = p.step(schema, names, starts);
                Self::closure(p, schema, names, once)
            }
            Particle::EachOnce(ps) => {
                let pool: Vec<String> = ps
                    .iter()
                    .flat_map(|p| p.referenced_names(schema))
                    .collect::<BTreeSet<_>>()
                    .into_iter()
                    .collect();
                let mut out = BTreeSet::new();
                for start in starts {
                    let mut used = BTreeSet::new();
                    let mut i = start;
                    out.insert(i);
                    while let Some(n) = names.get(i) {
                        if !pool.iter().any(|p| p == n) || !used.insert(*n) {
                            break;
                        }
                        i += 1;
                        out.insert(i);
                    }
                }
                out
            }
        }
    }

    fn closure(p: &Particle, schema: &TeiSchema, names: &[&str], starts: BTreeSet<usize>) -> BTreeSet<usize> {
        let mut reached = starts.clone();
        let mut frontier = starts;
        while !frontier.is_empty() {
            let next: BTreeSet<usize> = p
                .step(schema, names, frontier)
                .into_iter()
                .filter(|i| !reached.contains(i))
                .collect();
            reached.extend(next.iter().copied());
            frontier = next;
        }
        reached
    }
}

impl fmt::Display for Particle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |f: &mut fmt::Formatter<'_>, ps: &[Particle], sep: &str| -> fmt::Result {
            for (i, p) in ps.iter().enumerate() {
                if i > 0 {
                    f.write_str(sep)?;
                }
                write!(f, "{p}")?;
            }
            Ok(())
        };
        match self {
            Particle::Element(n) => f.write_str(n),
            Particle::Class(c) => write!(f, "%{c}"),
            Particle::Seq(ps) => {
                f.write_str("(")?;
                join(f, ps, ", ")?;
                f.write_str(")")
            }
            Particle::Choice(ps) => {
                f.write_str("(")?;
                join(f, ps, " | ")?;
                f.write_str(")")
            }
            Particle::Optional(p) => write!(f, "{p}?"),
            Particle::ZeroOrMore(p) => write!(f, "{p}*"),
            Particle::OneOrMore(p) => write!(f, "{p}+"),
            Particle::EachOnce(ps) => {
                f.write_str("each-once(")?;
                join(f, ps, ", ")?;
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for ContentModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ContentModel::Empty => f.write_str("empty"),
            ContentModel::Text => f.write_str("text"),
            ContentModel::Elements(p) => write!(f, "{p}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tei::base_dictionary_schema;

    fn entry_model() -> Particle {
        Particle::Seq(vec![
            Particle::element("form"),
            Particle::element("gramGrp").optional(),
            Particle::element("def").many(),
            Particle::element("cit").many(),
        ])
    }

    #[test]
    fn sequence_matching() {
        let s = base_dictionary_schema();
        let p = entry_model();
        assert!(p.matches(&s, &["form"]));
        assert!(p.matches(&s, &["form", "gramGrp", "def", "def", "cit"]));
        assert!(p.matches(&s, &["form", "cit"]));
        assert!(!p.matches(&s, &[]));
        assert!(!p.matches(&s, &["form", "form"]));
        assert!(!p.matches(&s, &["form", "cit", "def"]));
        assert_eq!(p.to_string(), "(form, gramGrp?, def*, cit*)");
    }

    #[test]
    fn each_once() {
        let s = base_dictionary_schema();
        let p = Particle::EachOnce(vec![Particle::class("model.gramPart")]);
        assert!(p.matches(&s, &[]));
        assert!(p.matches(&s, &["gen", "pos"]));
        assert!(p.matches(&s, &["pos", "gen", "num", "subc", "mood"]));
        assert!(!p.matches(&s, &["gen", "gen"]));
        assert!(!p.matches(&s, &["orth"]));
    }

    #[test]
    fn one_or_more() {
        let s = base_dictionary_schema();
        let p = Particle::element("orth").at_least_one();
        assert!(!p.matches(&s, &[]));
        assert!(p.matches(&s, &["orth", "orth", "orth"]));
    }
}

//! Group, subgroup and homomorphism descriptors: catalog shorthands such as
//! `Q8` or `FN(2,3,5)`, JSON objects tagged by `kind`, and words over named
//! generators with `'` for inverses.

use std::collections::BTreeMap;
use std::sync::Arc;

use hopf_core::group::catalog::{
    abelian, cyclic, dihedral, klein_four, permutation_group_one_based, quaternion, symmetric, table_group, trivial,
};
use hopf_core::group::{
    closure, direct_product, fiber_product, normal_closure, quotient, semidirect_product, Action, QuotientMap,
};
use hopf_core::nilpotent::free_nilpotent_group;
use hopf_core::{Elem, Group, GroupHom, Subgroup};
use rustc_hash::FxHashMap;
use serde::Deserialize;

use crate::error::CliError;

type Result<T> = std::result::Result<T, CliError>;

/// A group together with the names used for its generators in words.
#[derive(Clone, Debug)]
pub struct NamedGroup {
    pub group: Group,
    pub names: Vec<String>,
}

impl NamedGroup {
    /// Generators default to `x1, x2, …`.
    pub fn new(group: Group, names: Option<Vec<String>>, location: &str) -> Result<Self> {
        let count = group.generators().len();
        let names = names.unwrap_or_else(|| (1..=count).map(|i| format!("x{i}")).collect());
        if names.len() != count {
            return Err(CliError::parse(location, format!("{} names given for {count} generators", names.len())));
        }
        for (i, n) in names.iter().enumerate() {
            let valid = !n.is_empty()
                && n != "1"
                && !n.chars().any(|c| c.is_whitespace() || matches!(c, '\'' | '^' | '*' | '.' | ','));
            if !valid {
                return Err(CliError::parse(location, format!("{n:?} is not a usable generator name")));
            }
            if names[..i].contains(n) {
                return Err(CliError::parse(location, format!("generator name {n:?} repeats")));
            }
        }
        Ok(NamedGroup { group, names })
    }

    /// Reads a word such as `x1 x2'`, `i^2 j` or `r^-1s`. Names are matched
    /// greedily; `1` and the empty word are the identity.
    pub fn word(&self, text: &str, location: &str) -> Result<Elem> {
        let g = &self.group;
        let t = text.trim();
        if t.is_empty() || t == "1" {
            return Ok(g.identity());
        }
        let gens = g.generators();
        let err = |at: usize, msg: &str| CliError::parse(format!("{location}, word {text:?} offset {at}"), msg);
        let mut acc = g.identity();
        let mut i = 0;
        while i < t.len() {
            let rest = &t[i..];
            let c = rest.chars().next().expect("nonempty rest");
            if c.is_whitespace() || c == '*' || c == '.' {
                i += c.len_utf8();
                continue;
            }
            let Some((index, name)) =
                self.names.iter().enumerate().filter(|(_, n)| rest.starts_with(n.as_str())).max_by_key(|(_, n)| n.len())
            else {
                return Err(err(i, &format!("unknown generator; known: {}", self.names.join(", "))));
            };
            i += name.len();
            let mut exponent: i64 = 1;
            if t[i..].starts_with('\'') {
                exponent = -1;
                i += 1;
            } else if let Some(after) = t[i..].strip_prefix('^') {
                let digits = after
                    .char_indices()
                    .take_while(|&(k, ch)| ch.is_ascii_digit() || (k == 0 && ch == '-'))
                    .map(|(k, ch)| k + ch.len_utf8())
                    .last()
                    .unwrap_or(0);
                exponent = after[..digits].parse().map_err(|_| err(i, "expected an integer exponent after '^'"))?;
                i += 1 + digits;
            }
            acc = g.mul(&acc, &g.pow(&gens[index], exponent));
        }
        Ok(acc)
    }

    pub fn words(&self, texts: &[String], location: &str) -> Result<Vec<Elem>> {
        texts.iter().enumerate().map(|(i, t)| self.word(t, &format!("{location}[{i}]"))).collect()
    }
}

fn names(list: &[&str]) -> Option<Vec<String>> {
    Some(list.iter().map(|s| s.to_string()).collect())
}

/// Catalog shorthands: `1`, `Z<n>`, `Z<a>xZ<b>…`, `V4`, `Q8` (generators
/// `i`, `j`), `S<n>`, `D<n>` (order `2n`, generators `r`, `s`) and
/// `FN(rank,class,exponent)`.
pub fn catalog(name: &str, location: &str) -> Result<Option<NamedGroup>> {
    let number = |s: &str| s.parse::<u32>().ok().filter(|&n| n >= 1);
    let core = |e| CliError::core(location.to_string(), e);
    let (group, gen_names) = match name {
        "1" | "trivial" => (trivial(), None),
        "V4" => (klein_four(), names(&["a", "b"])),
        "Q8" => (quaternion(), names(&["i", "j"])),
        _ if name.starts_with("FN(") && name.ends_with(')') => {
            let args: Vec<&str> = name[3..name.len() - 1].split(',').map(str::trim).collect();
            let parsed: Vec<u64> = args.iter().filter_map(|a| a.parse().ok()).collect();
            if args.len() != 3 || parsed.len() != 3 {
                return Err(CliError::parse(location, format!("{name}: expected FN(rank,class,exponent)")));
            }
            (free_nilpotent_group(parsed[0] as usize, parsed[1] as usize, parsed[2]).map_err(core)?, None)
        }
        _ if name.contains('x') && name.split('x').all(|p| p.strip_prefix('Z').and_then(number).is_some()) => {
            let orders: Vec<u32> = name.split('x').map(|p| number(&p[1..]).expect("checked")).collect();
            (abelian(&orders), None)
        }
        _ => match (name.get(..1), name.get(1..).and_then(number)) {
            (Some("Z" | "C"), Some(n)) => (cyclic(n), None),
            (Some("S"), Some(n)) => (symmetric(n as usize), None),
            (Some("D"), Some(n)) if n >= 3 => (dihedral(n as usize), names(&["r", "s"])),
            _ => return Ok(None),
        },
    };
    Ok(Some(NamedGroup::new(group, gen_names, location)?))
}

/// A group named in the scenario or the catalog, or described inline.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Name(String),
    Inline(Box<Descriptor>),
}

impl GroupRef {
    pub fn describe(&self) -> String {
        match self {
            GroupRef::Name(n) => n.clone(),
            GroupRef::Inline(d) => d.kind().to_string(),
        }
    }
}

/// A named subgroup, or a list of words.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum SubgroupRef {
    Name(String),
    Words(Vec<String>),
}

impl SubgroupRef {
    pub fn describe(&self) -> String {
        match self {
            SubgroupRef::Name(n) => n.clone(),
            SubgroupRef::Words(w) => format!("<<{}>>", w.join(", ")),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Descriptor {
    Cyclic { n: u32 },
    Abelian { orders: Vec<u32> },
    /// Generators in one-line image notation on the points `1..=degree`.
    Permutation { degree: usize, generators: Vec<Vec<u32>> },
    /// A multiplication table on the labels `0..n`.
    Table { table: Vec<Vec<u32>> },
    FreeNilpotent { rank: usize, class: usize, exponent: u64 },
    /// The quotient by the normal closure of `by`.
    Quotient { of: GroupRef, by: Vec<String> },
    Direct { factors: Vec<GroupRef> },
    /// The pullback of two homomorphisms with a common target.
    Fiber { left: String, right: String },
    /// `normal ⋊ acting`, where `action[j][i]` is the image of the `i`-th
    /// generator of `normal` under the `j`-th generator of `acting`.
    Semidirect { normal: GroupRef, acting: GroupRef, action: Vec<Vec<String>> },
    /// The homomorphism sending the source generators to `images`.
    Hom { source: GroupRef, target: GroupRef, images: Vec<String> },
    /// The projection onto a quotient built earlier.
    Projection { quotient: String },
    /// The subgroup generated by `generators`.
    Subgroup { of: GroupRef, generators: Vec<String> },
    /// The normal closure of `words`.
    NormalClosure { of: GroupRef, words: Vec<String> },
}

impl Descriptor {
    pub fn kind(&self) -> &'static str {
        match self {
            Descriptor::Cyclic { .. } => "cyclic",
            Descriptor::Abelian { .. } => "abelian",
            Descriptor::Permutation { .. } => "permutation",
            Descriptor::Table { .. } => "table",
            Descriptor::FreeNilpotent { .. } => "free_nilpotent",
            Descriptor::Quotient { .. } => "quotient",
            Descriptor::Direct { .. } => "direct",
            Descriptor::Fiber { .. } => "fiber",
            Descriptor::Semidirect { .. } => "semidirect",
            Descriptor::Hom { .. } => "hom",
            Descriptor::Projection { .. } => "projection",
            Descriptor::Subgroup { .. } => "subgroup",
            Descriptor::NormalClosure { .. } => "normal_closure",
        }
    }
}

/// What a descriptor builds.
#[derive(Clone)]
pub enum Built {
    Group(NamedGroup),
    Quotient(NamedGroup, QuotientMap),
    Hom(GroupHom),
    /// A subgroup and the name of the group it lives in.
    Subgroup(Subgroup, String),
}

/// Named values built so far. Catalog groups are cached so that repeated
/// references to `Q8` mean the same group.
#[derive(Default)]
pub struct Env {
    entries: BTreeMap<String, Built>,
}

impl Env {
    pub fn new() -> Self {
        Env::default()
    }

    pub fn define(&mut self, name: &str, value: Built, location: &str) -> Result<()> {
        if self.entries.contains_key(name) || matches!(catalog(name, location), Ok(Some(_))) {
            return Err(CliError::parse(location, format!("{name:?} is already defined")));
        }
        self.entries.insert(name.to_string(), value);
        Ok(())
    }

    pub fn group(&mut self, r: &GroupRef, location: &str) -> Result<NamedGroup> {
        match r {
            GroupRef::Inline(d) => match self.build(d, None, d.kind(), location)? {
                Built::Group(g) | Built::Quotient(g, _) => Ok(g),
                _ => Err(CliError::parse(location, format!("a {} descriptor is not a group", d.kind()))),
            },
            GroupRef::Name(name) => match self.entries.get(name) {
                Some(Built::Group(g) | Built::Quotient(g, _)) => Ok(g.clone()),
                Some(_) => Err(CliError::parse(location, format!("{name:?} is not a group"))),
                None => {
                    let g = catalog(name, location)?
                        .ok_or_else(|| CliError::parse(location, format!("unknown group {name:?}")))?;
                    self.entries.insert(name.clone(), Built::Group(g.clone()));
                    Ok(g)
                }
            },
        }
    }

    pub fn hom(&self, name: &str, location: &str) -> Result<GroupHom> {
        match self.entries.get(name) {
            Some(Built::Hom(f)) => Ok(f.clone()),
            Some(Built::Quotient(_, q)) => Ok(q.projection.clone()),
            Some(_) => Err(CliError::parse(location, format!("{name:?} is not a homomorphism"))),
            None => Err(CliError::parse(location, format!("unknown homomorphism {name:?}"))),
        }
    }

    /// A subgroup of `g`: a name defined on the same group, or the normal
    /// closure of a word list.
    pub fn normal_subgroup(&self, g: &NamedGroup, r: &SubgroupRef, location: &str) -> Result<Subgroup> {
        match r {
            SubgroupRef::Words(words) => {
                let elems = g.words(words, location)?;
                normal_closure(&g.group, &elems).map_err(|e| CliError::core(location, e))
            }
            SubgroupRef::Name(name) => match self.entries.get(name) {
                Some(Built::Subgroup(s, _)) if s.ambient().same(&g.group) => Ok(s.clone()),
                Some(Built::Subgroup(_, of)) => {
                    Err(CliError::parse(location, format!("{name:?} is a subgroup of {of:?}, not of this group")))
                }
                _ => Err(CliError::parse(location, format!("unknown subgroup {name:?}"))),
            },
        }
    }

    /// `label` names permutation and table groups in reports.
    pub fn build(&mut self, d: &Descriptor, names: Option<Vec<String>>, label: &str, location: &str) -> Result<Built> {
        let core = |e| CliError::core(location.to_string(), e);
        let group = |g: Group, names: Option<Vec<String>>| NamedGroup::new(g, names, location).map(Built::Group);
        match d {
            Descriptor::Cyclic { n } => {
                if *n == 0 {
                    return Err(CliError::parse(location, "cyclic group needs n >= 1"));
                }
                group(cyclic(*n), names)
            }
            Descriptor::Abelian { orders } => {
                if orders.contains(&0) {
                    return Err(CliError::parse(location, "cyclic factors need order >= 1"));
                }
                group(abelian(orders), names)
            }
            Descriptor::Permutation { degree, generators } => {
                group(permutation_group_one_based(*degree, generators, label).map_err(core)?, names)
            }
            Descriptor::Table { table } => group(table_group(table, label).map_err(core)?.0, names),
            Descriptor::FreeNilpotent { rank, class, exponent } => {
                group(free_nilpotent_group(*rank, *class, *exponent).map_err(core)?, names)
            }
            Descriptor::Quotient { of, by } => {
                let parent = self.group(of, &format!("{location}.of"))?;
                let relators = parent.words(by, &format!("{location}.by"))?;
                let n = normal_closure(&parent.group, &relators).map_err(core)?;
                let q = quotient(&parent.group, &n).map_err(core)?;
                let names = names.or_else(|| (q.group.generators().len() == parent.names.len()).then(|| parent.names.clone()));
                Ok(Built::Quotient(NamedGroup::new(q.group.clone(), names, location)?, q))
            }
            Descriptor::Direct { factors } => {
                let groups = factors
                    .iter()
                    .enumerate()
                    .map(|(i, f)| self.group(f, &format!("{location}.factors[{i}]")).map(|g| g.group))
                    .collect::<Result<Vec<_>>>()?;
                group(direct_product(&groups), names)
            }
            Descriptor::Fiber { left, right } => {
                let (f, g) = (self.hom(left, location)?, self.hom(right, location)?);
                group(fiber_product(&f, &g).map_err(core)?.0, names)
            }
            Descriptor::Semidirect { normal, acting, action } => {
                let n = self.group(normal, &format!("{location}.normal"))?;
                let h = self.group(acting, &format!("{location}.acting"))?;
                let act = action_from_generators(&n, &h, action, location)?;
                group(semidirect_product(&n.group, &h.group, act).map_err(core)?, names)
            }
            Descriptor::Hom { source, target, images } => {
                let s = self.group(source, &format!("{location}.source"))?;
                let t = self.group(target, &format!("{location}.target"))?;
                let images = t.words(images, &format!("{location}.images"))?;
                Ok(Built::Hom(GroupHom::from_images(&s.group, &t.group, &images).map_err(core)?))
            }
            Descriptor::Projection { quotient } => match self.entries.get(quotient) {
                Some(Built::Quotient(_, q)) => Ok(Built::Hom(q.projection.clone())),
                _ => Err(CliError::parse(location, format!("{quotient:?} is not a quotient"))),
            },
            Descriptor::Subgroup { of, generators } => {
                let g = self.group(of, &format!("{location}.of"))?;
                let gens = g.words(generators, &format!("{location}.generators"))?;
                Ok(Built::Subgroup(closure(&g.group, &gens).map_err(core)?, of.describe()))
            }
            Descriptor::NormalClosure { of, words } => {
                let g = self.group(of, &format!("{location}.of"))?;
                let sub = self.normal_subgroup(&g, &SubgroupRef::Words(words.clone()), &format!("{location}.words"))?;
                Ok(Built::Subgroup(sub, of.describe()))
            }
        }
    }
}

/// Extends the action of the generators of `acting` to every element by
/// walking the Cayley graph; the semidirect product checks the result.
fn action_from_generators(normal: &NamedGroup, acting: &NamedGroup, action: &[Vec<String>], location: &str) -> Result<Action> {
    let h_gens = acting.group.generators();
    if action.len() != h_gens.len() {
        return Err(CliError::parse(
            location,
            format!("action lists {} generator images for {} acting generators", action.len(), h_gens.len()),
        ));
    }
    let core = |e| CliError::core(location.to_string(), e);
    let autos = action
        .iter()
        .enumerate()
        .map(|(j, images)| {
            let images = normal.words(images, &format!("{location}.action[{j}]"))?;
            GroupHom::from_images(&normal.group, &normal.group, &images).map_err(core)
        })
        .collect::<Result<Vec<_>>>()?;
    // For every h, the generator path from the identity.
    let mut path: FxHashMap<Elem, Vec<usize>> = FxHashMap::default();
    path.insert(acting.group.identity(), Vec::new());
    let mut queue = vec![acting.group.identity()];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i].clone();
        i += 1;
        for (j, g) in h_gens.iter().enumerate() {
            let y = acting.group.mul(&x, g);
            if !path.contains_key(&y) {
                let mut p = path[&x].clone();
                p.push(j);
                path.insert(y.clone(), p);
                queue.push(y);
            }
            if path.len() > acting.group.cap() {
                return Err(core(hopf_core::Error::CapExceeded { cap: acting.group.cap() }));
            }
        }
    }
    let path = Arc::new(path);
    Ok(Arc::new(move |h: &Elem, n: &Elem| {
        // h = g_1 ⋯ g_t acts as g_1 ∘ ⋯ ∘ g_t.
        path[h].iter().rev().fold(n.clone(), |acc, &j| autos[j].apply(&acc))
    }))
}

//! Relative generalized Boolean dynamical systems over a finite atom set.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::boolcore::{dualize_action, is_identifier, AtomUniverse, Element, PartialAtomMap};
use crate::error::{Error, Result};

/// One label's action, kept both as the atom image table and as its dual map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Action {
    images: Vec<Element>,
    dual: PartialAtomMap,
}

impl Action {
    /// `θ({a})`.
    pub fn image(&self, atom: usize) -> Element {
        self.images[atom]
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn dual(&self) -> &PartialAtomMap {
        &self.dual
    }

    pub fn apply(&self, a: Element) -> Element {
        self.dual.preimage(a)
    }

    /// `θ(1)`, the top of the range ideal.
    pub fn range_top(&self) -> Element {
        self.dual.domain()
    }
}

/// Unvalidated instance data, as read from a file or produced by a construction.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InstanceSpec {
    pub atoms: Vec<String>,
    pub labels: Vec<String>,
    /// `images[label][atom] = θ_label({atom})`.
    pub images: Vec<Vec<Element>>,
    pub ideal_tops: Vec<Option<Element>>,
    pub j_top: Option<Element>,
}

impl InstanceSpec {
    pub fn new<S: AsRef<str>>(atoms: &[S], labels: &[S]) -> Self {
        InstanceSpec {
            atoms: atoms.iter().map(|s| s.as_ref().to_string()).collect(),
            labels: labels.iter().map(|s| s.as_ref().to_string()).collect(),
            images: vec![vec![Element::EMPTY; atoms.len()]; labels.len()],
            ideal_tops: vec![None; labels.len()],
            j_top: None,
        }
    }

    /// Sets `θ_label({atom}) = image` by index.
    pub fn act(mut self, label: usize, atom: usize, image: Element) -> Self {
        self.images[label][atom] = image;
        self
    }
}

/// A validated system `(B, L, θ, I_α; J)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    universe: AtomUniverse,
    labels: Vec<String>,
    actions: Vec<Action>,
    ideal_tops: Vec<Element>,
    j_top: Element,
    regular: Element,
}

pub fn build_instance(spec: &InstanceSpec) -> Result<Instance> {
    let universe = AtomUniverse::new(&spec.atoms)?;
    let n = universe.len();
    let mut seen = HashMap::new();
    for l in &spec.labels {
        if !is_identifier(l) {
            return Err(Error::InvalidIdentifier(l.clone()));
        }
        if seen.insert(l.as_str(), ()).is_some() {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    let full = universe.full();
    let mut actions = Vec::with_capacity(spec.labels.len());
    for li in 0..spec.labels.len() {
        let mut images = spec.images.get(li).cloned().unwrap_or_default();
        images.resize(n, Element::EMPTY);
        for img in &mut images {
            *img = *img & full;
        }
        let dual = dualize_action(&universe, &images)?;
        actions.push(Action { images, dual });
    }
    let mut ideal_tops = Vec::with_capacity(actions.len());
    for (li, action) in actions.iter().enumerate() {
        let range = action.range_top();
        let top = match spec.ideal_tops.get(li).copied().flatten() {
            Some(t) => t & full,
            None => range,
        };
        if !range.is_subset(top) {
            return Err(Error::IdealTooSmall(spec.labels[li].clone()));
        }
        ideal_tops.push(top);
    }
    let regular = Element::from_atoms(
        (0..n).filter(|&a| actions.iter().any(|act| !act.image(a).is_empty())),
    );
    let j_top = match spec.j_top {
        Some(j) => j & full,
        None => regular,
    };
    if !j_top.is_subset(regular) {
        return Err(Error::JNotRegular(universe.render(j_top)));
    }
    Ok(Instance {
        universe,
        labels: spec.labels.clone(),
        actions,
        ideal_tops,
        j_top,
        regular,
    })
}

impl Instance {
    pub fn universe(&self) -> &AtomUniverse {
        &self.universe
    }

    pub fn atom_count(&self) -> usize {
        self.universe.len()
    }

    pub fn full(&self) -> Element {
        self.universe.full()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_count(&self) -> usize {
        self.labels.len()
    }

    pub fn label_index(&self, name: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == name)
    }

    pub fn action(&self, label: usize) -> &Action {
        &self.actions[label]
    }

    pub fn actions(&self) -> &[Action] {
        &self.actions
    }

    /// Top `C_α` of the ideal `I_α`.
    pub fn ideal_top(&self, label: usize) -> Element {
        self.ideal_tops[label]
    }

    pub fn ideal_tops(&self) -> &[Element] {
        &self.ideal_tops
    }

    pub fn j_top(&self) -> Element {
        self.j_top
    }

    pub fn regular_top(&self) -> Element {
        self.regular
    }

    pub fn range_top(&self, label: usize) -> Element {
        self.actions[label].range_top()
    }

    /// `θ_α(A)`.
    pub fn apply(&self, label: usize, a: Element) -> Element {
        self.actions[label].apply(a)
    }

    /// `Δ_A` as label indices in declaration order.
    pub fn delta(&self, a: Element) -> Vec<usize> {
        (0..self.labels.len())
            .filter(|&l| !self.apply(l, a).is_empty())
            .collect()
    }

    /// The label of the only nonempty image of `{atom}`, if there is exactly one.
    pub fn sole_label(&self, atom: usize) -> Option<usize> {
        let mut found = None;
        for (l, act) in self.actions.iter().enumerate() {
            if !act.image(atom).is_empty() {
                if found.is_some() {
                    return None;
                }
                found = Some(l);
            }
        }
        found
    }

    /// Union of all one-step images of `A`.
    pub fn successors(&self, a: Element) -> Element {
        self.actions
            .iter()
            .fold(Element::EMPTY, |acc, act| acc | act.apply(a))
    }

    /// Atoms reachable from `A` along actions, `A` included.
    pub fn forward_closure(&self, a: Element) -> Element {
        let mut d = a;
        loop {
            let next = d | self.successors(d);
            if next == d {
                return d;
            }
            d = next;
        }
    }

    pub fn render(&self, e: Element) -> String {
        self.universe.render(e)
    }

    pub fn render_word(&self, w: &Word) -> String {
        w.render(&self.labels)
    }

    /// Reads a word as label names separated by `.` or whitespace; with only
    /// single-character labels the names may also be run together.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Word::empty());
        }
        let pieces: Vec<&str> = if text.contains(['.', ' ', '\t']) {
            text.split(['.', ' ', '\t']).filter(|s| !s.is_empty()).collect()
        } else if self.labels.iter().all(|l| l.len() == 1) {
            (0..text.len()).filter_map(|i| text.get(i..i + 1)).collect()
        } else {
            vec![text]
        };
        pieces
            .into_iter()
            .map(|p| {
                self.label_index(p)
                    .ok_or_else(|| Error::UnknownLabel(p.to_string()))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    /// Back to the unvalidated form, with every ideal top and `J` made explicit.
    pub fn to_spec(&self) -> InstanceSpec {
        InstanceSpec {
            atoms: self.universe.names().to_vec(),
            labels: self.labels.clone(),
            images: self.actions.iter().map(|a| a.images.clone()).collect(),
            ideal_tops: self.ideal_tops.iter().map(|&t| Some(t)).collect(),
            j_top: Some(self.j_top),
        }
    }

    /// The same system with `J` replaced.
    pub fn with_j_top(&self, j_top: Element) -> Result<Instance> {
        let mut spec = self.to_spec();
        spec.j_top = Some(j_top);
        build_instance(&spec)
    }
}

/// A finite word over the labels, stored as label indices.
#[derive(Clone, Default, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `β_{k+1..n} β_{1..k}`.
    pub fn rotate(&self, k: usize) -> Word {
        let mut v = self.0.clone();
        if !v.is_empty() {
            v.rotate_left(k % self.0.len());
        }
        Word(v)
    }

    pub fn render(&self, labels: &[String]) -> String {
        let sep = if labels.iter().all(|l| l.len() == 1) { "" } else { "." };
        self.0
            .iter()
            .map(|&l| labels[l].as_str())
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// Shortlex order: shorter first, then lexicographic by label index.
    pub fn shortlex_cmp(&self, other: &Word) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// `θ_β(A)`, applying the first letter first.
pub fn apply_word(inst: &Instance, word: &Word, a: Element) -> Element {
    word.0.iter().fold(a, |acc, &l| inst.apply(l, acc))
}

/// `f_β = f_{β₁} ∘ ⋯ ∘ f_{βₙ}`.
pub fn word_map(inst: &Instance, word: &Word) -> PartialAtomMap {
    word.0
        .iter()
        .fold(PartialAtomMap::identity(inst.atom_count()), |acc, &l| {
            acc.compose(inst.action(l).dual())
        })
}

pub fn delta(inst: &Instance, a: Element) -> Vec<usize> {
    inst.delta(a)
}

pub fn regular_top(inst: &Instance) -> Element {
    inst.regular_top()
}

/// All maps `f_β` for nonempty words, each with its shortlex-least witness.
#[derive(Clone, Debug)]
pub struct MapSemigroup {
    identity: PartialAtomMap,
    members: Vec<(PartialAtomMap, Word)>,
    index: HashMap<PartialAtomMap, usize>,
}

impl MapSemigroup {
    pub fn identity(&self) -> &PartialAtomMap {
        &self.identity
    }

    /// Members in discovery (shortlex witness) order; the identity is not
    /// among them unless some nonempty word realises it.
    pub fn members(&self) -> &[(PartialAtomMap, Word)] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn witness(&self, map: &PartialAtomMap) -> Option<&Word> {
        self.index.get(map).map(|&i| &self.members[i].1)
    }

    /// Members together with the identity (witness `∅`).
    pub fn with_identity(&self) -> impl Iterator<Item = (&PartialAtomMap, &Word)> {
        static EMPTY: Word = Word(Vec::new());
        std::iter::once((&self.identity, &EMPTY)).chain(self.members.iter().map(|(m, w)| (m, w)))
    }
}

pub fn semigroup_closure(inst: &Instance) -> MapSemigroup {
    let mut members: Vec<(PartialAtomMap, Word)> = Vec::new();
    let mut index = HashMap::new();
    let mut queue = VecDeque::new();
    for l in 0..inst.label_count() {
        let m = inst.action(l).dual().clone();
        if !index.contains_key(&m) {
            index.insert(m.clone(), members.len());
            queue.push_back(members.len());
            members.push((m, Word(vec![l])));
        }
    }
    while let Some(i) = queue.pop_front() {
        for l in 0..inst.label_count() {
            let m = members[i].0.compose(inst.action(l).dual());
            if !index.contains_key(&m) {
                let mut w = members[i].1.clone();
                w.0.push(l);
                index.insert(m.clone(), members.len());
                queue.push_back(members.len());
                members.push((m, w));
            }
        }
    }
    MapSemigroup {
        identity: PartialAtomMap::identity(inst.atom_count()),
        members,
        index,
    }
}

/// Whether two instances with the same labels differ only by renaming atoms.
/// The ideal tops and `J` must correspond as well.
pub fn isomorphic(a: &Instance, b: &Instance) -> bool {
    if a.atom_count() != b.atom_count() || a.labels != b.labels {
        return false;
    }
    let n = a.atom_count();
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn map(perm: &[usize], e: Element) -> Element {
        Element::from_atoms(e.atoms().map(|x| perm[x]))
    }

    fn go(a: &Instance, b: &Instance, k: usize, perm: &mut [usize], used: &mut [bool]) -> bool {
        let n = a.atom_count();
        if k == n {
            let tops = (0..a.label_count()).all(|l| {
                map(perm, a.ideal_top(l)) == b.ideal_top(l)
                    && (0..n).all(|x| map(perm, a.action(l).image(x)) == b.action(l).image(perm[x]))
            });
            return tops && map(perm, a.j_top()) == b.j_top();
        }
        for t in 0..n {
            if used[t] || a.action_sizes(k) != b.action_sizes(t) {
                continue;
            }
            used[t] = true;
            perm[k] = t;
            if go(a, b, k + 1, perm, used) {
                return true;
            }
            used[t] = false;
        }
        false
    }
    go(a, b, 0, &mut perm, &mut used)
}

impl Instance {
    fn action_sizes(&self, atom: usize) -> Vec<usize> {
        self.actions.iter().map(|a| a.image(atom).len()).collect()
    }
}

//! Finite Boolean algebras as powersets of a declared atom set.
//!
//! Every finite Boolean algebra is atomic, so an element is just the set of
//! atoms below it and ultrafilters are the principal filters at atoms. All
//! the lattice operations are bit operations on a `u32`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{BitAnd, BitOr, Sub};

use crate::error::{Error, Result};

/// Atom count that no instance may exceed.
pub const HARD_MAX_ATOMS: usize = 24;
/// Recommended atom count for procedures that enumerate all `2^n` elements.
pub const SOFT_MAX_ATOMS: usize = 12;

pub(crate) fn is_identifier(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

/// The ordered atom set of a finite Boolean algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomUniverse {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl AtomUniverse {
    pub fn new<S: AsRef<str>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let mut out = AtomUniverse {
            names: Vec::new(),
            index: HashMap::new(),
        };
        for name in names {
            let name = name.as_ref();
            if !is_identifier(name) {
                return Err(Error::InvalidIdentifier(name.to_string()));
            }
            if out.index.contains_key(name) {
                return Err(Error::DuplicateAtom(name.to_string()));
            }
            out.index.insert(name.to_string(), out.names.len());
            out.names.push(name.to_string());
        }
        if out.names.len() > HARD_MAX_ATOMS {
            return Err(Error::TooManyAtoms {
                count: out.names.len(),
                limit: HARD_MAX_ATOMS,
            });
        }
        Ok(out)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, atom: usize) -> &str {
        &self.names[atom]
    }

    pub fn lookup(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// The greatest element (all atoms).
    pub fn full(&self) -> Element {
        Element::full(self.len())
    }

    /// Every element of the algebra, in increasing bit order.
    pub fn elements(&self) -> impl Iterator<Item = Element> {
        (0..1u32 << self.len()).map(Element)
    }

    pub fn render(&self, e: Element) -> String {
        render_element(self, e)
    }

    pub fn parse(&self, text: &str) -> Result<Element> {
        parse_element(self, text)
    }
}

/// A member of the powerset algebra, stored as a bit set over atom indices.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, Debug)]
pub struct Element(u32);

impl Element {
    pub const EMPTY: Element = Element(0);

    pub const fn from_bits(bits: u32) -> Self {
        Element(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub fn atom(index: usize) -> Self {
        Element(1 << index)
    }

    pub fn full(n: usize) -> Self {
        if n == 0 {
            Element(0)
        } else {
            Element(u32::MAX >> (32 - n))
        }
    }

    pub fn from_atoms(atoms: impl IntoIterator<Item = usize>) -> Self {
        atoms.into_iter().fold(Element::EMPTY, |e, a| e | Element::atom(a))
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, atom: usize) -> bool {
        self.0 >> atom & 1 == 1
    }

    pub fn is_subset(self, other: Element) -> bool {
        self.0 & other.0 == self.0
    }

    pub fn is_disjoint(self, other: Element) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: Element) -> Element {
        Element(self.0 | other.0)
    }

    pub fn intersection(self, other: Element) -> Element {
        Element(self.0 & other.0)
    }

    /// Relative complement `self ∖ other`.
    pub fn difference(self, other: Element) -> Element {
        Element(self.0 & !other.0)
    }

    pub fn insert(&mut self, atom: usize) {
        self.0 |= 1 << atom;
    }

    /// Atom indices in increasing (declaration) order.
    pub fn atoms(self) -> Atoms {
        Atoms(self.0)
    }

    /// All subsets of `self`, including `∅` and `self`.
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            next: Some(0),
        }
    }

    pub fn first_atom(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Canonical ordering: by cardinality, then lexicographically on the
    /// ascending atom lists.
    pub fn canonical_cmp(&self, other: &Element) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.atoms().cmp(other.atoms()))
    }
}

impl BitOr for Element {
    type Output = Element;
    fn bitor(self, rhs: Element) -> Element {
        self.union(rhs)
    }
}

impl BitAnd for Element {
    type Output = Element;
    fn bitand(self, rhs: Element) -> Element {
        self.intersection(rhs)
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(self, rhs: Element) -> Element {
        self.difference(rhs)
    }
}

#[derive(Clone, Debug)]
pub struct Atoms(u32);

impl Iterator for Atoms {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let a = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(a)
    }
}

#[derive(Clone, Debug)]
pub struct Subsets {
    mask: u32,
    next: Option<u32>,
}

impl Iterator for Subsets {
    type Item = Element;
    fn next(&mut self) -> Option<Element> {
        let cur = self.next?;
        // Enumerate submasks in increasing order.
        self.next = if cur == self.mask {
            None
        } else {
            Some((cur.wrapping_sub(self.mask)) & self.mask)
        };
        Some(Element(cur))
    }
}

/// An ideal of a finite Boolean algebra, which is always principal.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct PrincipalIdeal {
    pub top: Element,
}

impl PrincipalIdeal {
    pub fn new(top: Element) -> Self {
        PrincipalIdeal { top }
    }

    pub fn contains(&self, e: Element) -> bool {
        e.is_subset(self.top)
    }
}

/// The quotient `B/I_removed`, whose classes are represented by `A ∖ removed`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct QuotientContext {
    pub parent_atoms: usize,
    pub removed: Element,
}

impl QuotientContext {
    pub fn new(parent: &AtomUniverse, removed: Element) -> Self {
        QuotientContext {
            parent_atoms: parent.len(),
            removed: removed & parent.full(),
        }
    }

    pub fn surviving(&self) -> Element {
        Element::full(self.parent_atoms) - self.removed
    }

    /// Two elements are identified exactly when their representatives agree.
    pub fn equivalent(&self, a: Element, b: Element) -> bool {
        quotient_map(self, a) == quotient_map(self, b)
    }
}

pub fn quotient_map(ctx: &QuotientContext, a: Element) -> Element {
    a - ctx.removed
}

/// Renders `{a,b}` with atoms in declaration order and no spaces.
pub fn render_element(universe: &AtomUniverse, e: Element) -> String {
    let mut out = String::from("{");
    for (i, a) in e.atoms().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(universe.name(a));
    }
    out.push('}');
    out
}

/// Parses `'{' WS? (ATOM (WS? ',' WS? ATOM)*)? WS? '}'`.
pub fn parse_element(universe: &AtomUniverse, text: &str) -> Result<Element> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    let ident = |pos: &mut usize| -> Option<&str> {
        let start = *pos;
        while *pos < bytes.len() && (bytes[*pos].is_ascii_alphanumeric() || bytes[*pos] == b'_') {
            *pos += 1;
        }
        (*pos > start).then(|| &text[start..*pos])
    };

    if bytes.first() != Some(&b'{') {
        return Err(Error::MalformedSyntax(0));
    }
    pos += 1;
    skip_ws(&mut pos);
    let mut out = Element::EMPTY;
    if bytes.get(pos) != Some(&b'}') {
        loop {
            let name = ident(&mut pos).ok_or(Error::MalformedSyntax(pos))?;
            let atom = universe
                .lookup(name)
                .ok_or_else(|| Error::UnknownAtom(name.to_string()))?;
            out.insert(atom);
            skip_ws(&mut pos);
            match bytes.get(pos) {
                Some(b',') => {
                    pos += 1;
                    skip_ws(&mut pos);
                }
                Some(b'}') => break,
                _ => return Err(Error::MalformedSyntax(pos)),
            }
        }
    }
    pos += 1;
    if pos != bytes.len() {
        return Err(Error::MalformedSyntax(pos));
    }
    Ok(out)
}

/// A partial self-map of the atoms; `None` marks an undefined point.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PartialAtomMap(Vec<Option<u8>>);

impl PartialAtomMap {
    pub fn identity(n: usize) -> Self {
        PartialAtomMap((0..n).map(|a| Some(a as u8)).collect())
    }

    pub fn nowhere(n: usize) -> Self {
        PartialAtomMap(vec![None; n])
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize) -> Option<usize>) -> Self {
        PartialAtomMap((0..n).map(|a| f(a).map(|v| v as u8)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, atom: usize) -> Option<usize> {
        self.0[atom].map(usize::from)
    }

    pub fn domain(&self) -> Element {
        Element::from_atoms((0..self.0.len()).filter(|&a| self.0[a].is_some()))
    }

    /// `f⁻¹(A)`, which is the action dual to this map.
    pub fn preimage(&self, a: Element) -> Element {
        Element::from_atoms(
            (0..self.0.len()).filter(|&b| self.0[b].is_some_and(|v| a.contains(v as usize))),
        )
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &PartialAtomMap) -> PartialAtomMap {
        PartialAtomMap(
            other
                .0
                .iter()
                .map(|v| v.and_then(|v| self.0[v as usize]))
                .collect(),
        )
    }
}

/// Turns a per-atom image table `a ↦ θ({a})` into its dual partial map.
///
/// The table defines a Boolean homomorphism exactly when the images are
/// pairwise disjoint; the dual sends `b` to the unique `a` with
/// `b ∈ θ({a})`.
pub fn dualize_action(universe: &AtomUniverse, images: &[Element]) -> Result<PartialAtomMap> {
    let n = universe.len();
    let mut dual: Vec<Option<u8>> = vec![None; n];
    for (a, image) in images.iter().enumerate().take(n) {
        for b in image.atoms() {
            if let Some(prev) = dual[b] {
                return Err(Error::NotDisjoint {
                    atom: universe.name(b).to_string(),
                    first: universe.name(prev as usize).to_string(),
                    second: universe.name(a).to_string(),
                });
            }
            dual[b] = Some(a as u8);
        }
    }
    Ok(PartialAtomMap(dual))
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, a) in self.atoms().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ab() -> AtomUniverse {
        AtomUniverse::new(["a", "b"]).unwrap()
    }

    #[test]
    fn parse_examples() {
        let u = ab();
        assert_eq!(parse_element(&u, "{a}").unwrap(), Element::atom(0));
        assert_eq!(parse_element(&u, "{}").unwrap(), Element::EMPTY);
        assert_eq!(parse_element(&u, "{ a , b }").unwrap(), u.full());
        assert_eq!(
            parse_element(&u, "{a,c}"),
            Err(Error::UnknownAtom("c".into()))
        );
        assert!(matches!(parse_element(&u, "{a,}"), Err(Error::MalformedSyntax(_))));
        assert!(matches!(parse_element(&u, "a"), Err(Error::MalformedSyntax(0))));
        assert!(matches!(parse_element(&u, "{a b}"), Err(Error::MalformedSyntax(3))));
        assert!(matches!(parse_element(&u, "{a}x"), Err(Error::MalformedSyntax(3))));
    }

    #[test]
    fn render_is_canonical() {
        let u = ab();
        assert_eq!(render_element(&u, u.full()), "{a,b}");
        assert_eq!(render_element(&u, Element::EMPTY), "{}");
        assert_eq!(parse_element(&u, &render_element(&u, Element::atom(1))).unwrap(), Element::atom(1));
    }

    #[test]
    fn universe_rejects_bad_names() {
        assert_eq!(AtomUniverse::new(["a", "a"]), Err(Error::DuplicateAtom("a".into())));
        assert!(matches!(AtomUniverse::new(["a-b"]), Err(Error::InvalidIdentifier(_))));
        let many: Vec<String> = (0..25).map(|i| format!("v{i}")).collect();
        assert!(matches!(AtomUniverse::new(&many), Err(Error::TooManyAtoms { count: 25, .. })));
        assert!(AtomUniverse::new(Vec::<String>::new()).unwrap().is_empty());
    }

    #[test]
    fn dualize_examples() {
        let u = ab();
        let a = Element::atom(0);
        let b = Element::atom(1);
        let f = dualize_action(&u, &[b, Element::EMPTY]).unwrap();
        assert_eq!(f.get(1), Some(0));
        assert_eq!(f.get(0), None);

        let f = dualize_action(&u, &[a | b, Element::EMPTY]).unwrap();
        assert_eq!((f.get(0), f.get(1)), (Some(0), Some(0)));

        assert_eq!(
            dualize_action(&u, &[b, b]),
            Err(Error::NotDisjoint {
                atom: "b".into(),
                first: "a".into(),
                second: "b".into()
            })
        );
    }

    #[test]
    fn quotient_examples() {
        let u = ab();
        let (a, b) = (Element::atom(0), Element::atom(1));
        let ctx = QuotientContext::new(&u, b);
        assert_eq!(quotient_map(&ctx, a | b), a);
        assert_eq!(quotient_map(&ctx, b), Element::EMPTY);
        assert!(ctx.equivalent(a, a | b));
        let id = QuotientContext::new(&u, Element::EMPTY);
        assert_eq!(quotient_map(&id, a), a);
    }

    #[test]
    fn subsets_enumerates_every_submask() {
        let e = Element::from_bits(0b1011);
        let subs: Vec<u32> = e.subsets().map(Element::bits).collect();
        assert_eq!(subs, vec![0, 1, 2, 3, 8, 9, 10, 11]);
        assert_eq!(Element::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn canonical_order() {
        let mut v = [Element::from_bits(0b11), Element::from_bits(0b10), Element::EMPTY, Element::from_bits(0b01)];
        v.sort_by(Element::canonical_cmp);
        assert_eq!(v.iter().map(|e| e.bits()).collect::<Vec<_>>(), vec![0, 1, 2, 3]);
        assert_eq!(
            Element::from_bits(0b101).canonical_cmp(&Element::from_bits(0b110)),
            Ordering::Less
        );
    }

    #[test]
    fn dual_reexpansion_is_exhaustive_for_small_tables() {
        // Each atom b of a 10-atom universe is owned by at most one source.
        let names: Vec<String> = (0..10).map(|i| format!("p{i}")).collect();
        let u = AtomUniverse::new(&names).unwrap();
        let owner = [Some(3), None, Some(0), Some(3), Some(9), None, Some(1), Some(1), Some(1), Some(4)];
        let mut images = vec![Element::EMPTY; 10];
        for (b, o) in owner.iter().enumerate() {
            if let Some(a) = o {
                images[*a].insert(b);
            }
        }
        let f = dualize_action(&u, &images).unwrap();
        for x in u.elements() {
            let expanded = x.atoms().fold(Element::EMPTY, |acc, a| acc | images[a]);
            assert_eq!(f.preimage(x), expanded);
        }
    }

    #[test]
    fn quotient_is_a_homomorphism_exhaustively() {
        for n in 0..=6 {
            let full = Element::full(n);
            for removed in full.subsets() {
                let ctx = QuotientContext { parent_atoms: n, removed };
                for a in full.subsets() {
                    for b in full.subsets() {
                        let q = |x| quotient_map(&ctx, x);
                        assert_eq!(q(a | b), q(a) | q(b));
                        assert_eq!(q(a & b), q(a) & q(b));
                        assert_eq!(q(a - b), q(a) - q(b));
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn lattice_laws(a in 0u32..1 << 12, b in 0u32..1 << 12, c in 0u32..1 << 12) {
            let (a, b, c) = (Element(a), Element(b), Element(c));
            prop_assert_eq!(a & (b | c), (a & b) | (a & c));
            prop_assert_eq!(a | (b & c), (a | b) & (a | c));
            prop_assert_eq!(c - (a | b), (c - a) & (c - b));
            prop_assert_eq!(c - (a & b), (c - a) | (c - b));
            prop_assert!((a - b).is_disjoint(b));
            prop_assert_eq!((a - b) | (a & b), a);
            prop_assert_eq!(a.is_subset(b), a & b == a);
        }
    }
}

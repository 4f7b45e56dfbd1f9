//! Cycles without exits, Condition (L), maximal tails and Condition (K).
//!
//! Everything is decided at atom level. Reading a word right to left moves an
//! atom `c` to `f_γ(c)`, so the words returning to `c` form a regular
//! language whose automaton has the atoms as states.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::bds::{apply_word, Instance, Word};
use crate::boolcore::{Element, PrincipalIdeal};
use crate::error::{Error, Result};
use crate::ideals::{self, LatticeMode};

/// A cycle with no exits based at a single atom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleWitness {
    pub word: Word,
    pub atom: usize,
    /// `S_0 = {atom}, …, S_n = {atom}` with `S_{t+1} = θ_{β_{t+1}}(S_t)`.
    pub trajectory: Vec<Element>,
}

/// Follows the forced trajectory from each atom and reports the first return.
pub fn find_cycle_no_exit(inst: &Instance) -> Option<CycleWitness> {
    (0..inst.atom_count()).find_map(|a| cycle_at(inst, a))
}

/// The cycle without exits based at `atom`, if there is one.
pub fn cycle_at(inst: &Instance, atom: usize) -> Option<CycleWitness> {
    let start = Element::atom(atom);
    let mut s = start;
    let mut word = Vec::new();
    let mut trajectory = vec![start];
    loop {
        let mut label = None;
        for b in s.atoms() {
            let l = inst.sole_label(b)?;
            if label.is_some_and(|x| x != l) {
                return None;
            }
            label = Some(l);
        }
        let l = label?;
        s = inst.apply(l, s);
        word.push(l);
        trajectory.push(s);
        if s == start {
            return Some(CycleWitness {
                word: Word(word),
                atom,
                trajectory,
            });
        }
        if s.is_empty() || trajectory[..trajectory.len() - 1].contains(&s) {
            return None;
        }
    }
}

/// Condition (L): true when no cycle without exits exists.
pub fn check_condition_l(inst: &Instance) -> (bool, Option<CycleWitness>) {
    let w = find_cycle_no_exit(inst);
    (w.is_none(), w)
}

/// Re-checks a witness against the defining conditions.
pub fn revalidate_cycle(inst: &Instance, w: &CycleWitness) -> bool {
    let n = w.word.len();
    if n == 0 || w.trajectory.len() != n + 1 {
        return false;
    }
    let start = Element::atom(w.atom);
    if w.trajectory[0] != start || w.trajectory[n] != start {
        return false;
    }
    if apply_word(inst, &w.word, start) != start {
        return false;
    }
    (0..n).all(|t| {
        let l = w.word.letters()[t];
        inst.apply(l, w.trajectory[t]) == w.trajectory[t + 1]
            && w.trajectory[t].atoms().all(|b| inst.sole_label(b) == Some(l))
    })
}

/// A maximal tail `T = B ∖ I_D`, recorded through `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailDescriptor {
    pub complement: Element,
    /// Base atom and primitive word when the tail is cyclic.
    pub cyclic: Option<(usize, Word)>,
}

fn reach_table(inst: &Instance) -> Vec<Element> {
    (0..inst.atom_count())
        .map(|a| inst.forward_closure(Element::atom(a)))
        .collect()
}

fn t6_with(reach: &[Element], full: Element, d: Element) -> bool {
    let outside: Vec<usize> = (full - d).atoms().collect();
    outside.iter().enumerate().all(|(i, &p)| {
        outside[i + 1..]
            .iter()
            .all(|&q| !(reach[p] & reach[q]).is_subset(d))
    })
}

/// (T6) for `B ∖ I_D`, checked on pairs of atoms outside `D` through forward
/// reachability.
pub fn passes_t6(inst: &Instance, d: Element) -> bool {
    t6_with(&reach_table(inst), inst.full(), d)
}

pub fn is_maximal_tail(inst: &Instance, d: Element) -> bool {
    d != inst.full()
        && ideals::is_hereditary(inst, d)
        && ideals::is_saturated(inst, d)
        && passes_t6(inst, d)
}

/// All maximal tails in canonical order of their complements.
pub fn enumerate_maximal_tails(inst: &Instance) -> Vec<TailDescriptor> {
    let reach = reach_table(inst);
    let full = inst.full();
    let mut ds: Vec<Element> = (0..1u32 << inst.atom_count())
        .into_par_iter()
        .map(Element::from_bits)
        .filter(|&d| {
            d != full
                && ideals::is_hereditary(inst, d)
                && ideals::is_saturated(inst, d)
                && t6_with(&reach, full, d)
        })
        .collect();
    ds.sort_by(Element::canonical_cmp);
    ds.into_iter().map(|d| describe_tail(inst, d)).collect()
}

/// The descriptor of `B ∖ I_D`, assuming it is a maximal tail.
pub fn describe_tail(inst: &Instance, d: Element) -> TailDescriptor {
    TailDescriptor {
        complement: d,
        cyclic: cyclic_base(inst, d),
    }
}

/// `{f_γ(c)}`: the atoms from which `c` can be reached.
pub fn ancestors(inst: &Instance, c: usize) -> Element {
    let mut seen = Element::atom(c);
    let mut stack = vec![c];
    while let Some(s) = stack.pop() {
        for act in inst.actions() {
            if let Some(p) = act.dual().get(s) {
                if !seen.contains(p) {
                    seen.insert(p);
                    stack.push(p);
                }
            }
        }
    }
    seen
}

fn cyclic_base(inst: &Instance, d: Element) -> Option<(usize, Word)> {
    let rest = inst.full() - d;
    rest.atoms()
        .filter(|&c| ancestors(inst, c) == rest)
        .find_map(|c| ReturnLanguage::new(inst, c).cyclic_root())
}

/// Whether the tail `B ∖ I_D` is cyclic, with its base atom and word.
pub fn is_cyclic_tail(inst: &Instance, tail: &TailDescriptor) -> Result<Option<(usize, Word)>> {
    if !is_maximal_tail(inst, tail.complement) {
        return Err(Error::InvalidTail(inst.render(tail.complement)));
    }
    Ok(cyclic_base(inst, tail.complement))
}

/// Reversals of the words `γ` with `f_γ(c) = c`.
pub struct ReturnLanguage<'a> {
    inst: &'a Instance,
    pub base: usize,
}

impl<'a> ReturnLanguage<'a> {
    pub fn new(inst: &'a Instance, base: usize) -> Self {
        ReturnLanguage { inst, base }
    }

    fn step(&self, state: usize, label: usize) -> Option<usize> {
        self.inst.action(label).dual().get(state)
    }

    /// Whether `γ` (read as a word, not reversed) returns to the base.
    pub fn accepts(&self, word: &Word) -> bool {
        word.letters()
            .iter()
            .rev()
            .try_fold(self.base, |s, &l| self.step(s, l))
            == Some(self.base)
    }

    /// The shortest nonempty return word, if any.
    pub fn shortest(&self) -> Option<Word> {
        let n = self.inst.atom_count();
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut queue = VecDeque::new();
        let mut visited = vec![false; n];
        for l in 0..self.inst.label_count() {
            if let Some(t) = self.step(self.base, l) {
                if t == self.base {
                    return Some(Word(vec![l]));
                }
                if !visited[t] {
                    visited[t] = true;
                    parent[t] = Some((self.base, l));
                    queue.push_back(t);
                }
            }
        }
        while let Some(s) = queue.pop_front() {
            for l in 0..self.inst.label_count() {
                let Some(t) = self.step(s, l) else { continue };
                if t == self.base {
                    // Reversed path base → … → s → base, then flip.
                    let mut rev = vec![l];
                    let mut cur = s;
                    while let Some((p, pl)) = parent[cur] {
                        rev.push(pl);
                        if p == self.base {
                            break;
                        }
                        cur = p;
                    }
                    // `rev` lists the reversed word from its last letter back.
                    return Some(Word(rev));
                }
                if !visited[t] {
                    visited[t] = true;
                    parent[t] = Some((s, l));
                    queue.push_back(t);
                }
            }
        }
        None
    }

    /// Whether every nonempty return word is a power of `root`.
    pub fn contained_in_powers(&self, root: &Word) -> bool {
        let m = root.len();
        if m == 0 {
            return false;
        }
        // Reversed root drives the cyclic automaton as reversed words are read.
        let rev: Vec<usize> = root.letters().iter().rev().copied().collect();
        let n = self.inst.atom_count();
        // Phase m means "left the cyclic automaton".
        let idx = |s: usize, q: usize| s * (m + 1) + q;
        let mut seen = vec![false; n * (m + 1)];
        let mut queue = VecDeque::new();
        let push = |s: usize, q: usize, seen: &mut Vec<bool>, queue: &mut VecDeque<(usize, usize)>| {
            if !seen[idx(s, q)] {
                seen[idx(s, q)] = true;
                queue.push_back((s, q));
            }
        };
        let advance = |q: usize, l: usize| if q < m && rev[q] == l { (q + 1) % m } else { m };
        for l in 0..self.inst.label_count() {
            if let Some(t) = self.step(self.base, l) {
                push(t, advance(0, l), &mut seen, &mut queue);
            }
        }
        while let Some((s, q)) = queue.pop_front() {
            if s == self.base && q != 0 {
                return false;
            }
            for l in 0..self.inst.label_count() {
                if let Some(t) = self.step(s, l) {
                    push(t, advance(q, l), &mut seen, &mut queue);
                }
            }
        }
        true
    }

    /// A word `β`, itself a return word, such that every return word is a
    /// power of `β`. Roots of the shortest return word are tried shortest first.
    pub fn cyclic_root(&self) -> Option<(usize, Word)> {
        let beta0 = self.shortest()?;
        let m = beta0.len();
        (1..=m)
            .filter(|d| m % d == 0)
            .map(|d| Word(beta0.letters()[..d].to_vec()))
            .filter(|r| {
                (0..m).all(|i| beta0.letters()[i] == r.letters()[i % r.len()]) && self.accepts(r)
            })
            .find(|r| self.contained_in_powers(r))
            .map(|r| (self.base, r))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KRoute {
    QuotientL,
    NoCyclicTails,
    Direct,
}

pub const K_ROUTES: [KRoute; 3] = [KRoute::QuotientL, KRoute::NoCyclicTails, KRoute::Direct];

pub fn condition_k_by(inst: &Instance, route: KRoute) -> bool {
    match route {
        KRoute::QuotientL => ideals::enumerate_lattice(inst, LatticeMode::JSaturated)
            .entries
            .par_iter()
            .all(|e| {
                let q = ideals::quotient_instance(inst, PrincipalIdeal::new(e.top))
                    .expect("lattice members are hereditary");
                find_cycle_no_exit(&q).is_none()
            }),
        KRoute::NoCyclicTails => enumerate_maximal_tails(inst)
            .iter()
            .all(|t| t.cyclic.is_none()),
        KRoute::Direct => direct_k_failure(inst).is_none(),
    }
}

/// The first atom at which Condition (K) fails, with its return word.
pub fn direct_k_failure(inst: &Instance) -> Option<(usize, Word)> {
    (0..inst.atom_count()).find_map(|c| ReturnLanguage::new(inst, c).cyclic_root())
}

/// Condition (K) by the quotient route, confirmed by the other two.
pub fn check_condition_k(inst: &Instance) -> Result<bool> {
    let q = condition_k_by(inst, KRoute::QuotientL);
    let t = condition_k_by(inst, KRoute::NoCyclicTails);
    let d = condition_k_by(inst, KRoute::Direct);
    if q != t || q != d {
        return Err(Error::mismatch(
            "condition K",
            format!("quotient-L={q} no-cyclic-tails={t} direct={d}"),
        ));
    }
    Ok(q)
}

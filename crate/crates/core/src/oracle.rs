//! Reference implementations written straight from the definitions, a seeded
//! instance generator, and a digraph importer with the classical graph
//! algebra criteria.
//!
//! Nothing here calls into `props`, `ideals`, `topograph` or `relgen`. Actions
//! are expanded from the atom image tables rather than through dual maps.

use std::collections::{HashMap, HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bds::{build_instance, Instance, InstanceSpec};
use crate::boolcore::Element;
use crate::error::{Error, Result};

fn too_large(inst: &Instance, limit: usize) -> Result<()> {
    if inst.atom_count() > limit {
        return Err(Error::TooLarge {
            atoms: inst.atom_count(),
            limit,
        });
    }
    Ok(())
}

/// `θ_α(A) = ⋃_{a ∈ A} θ_α({a})`.
fn theta(inst: &Instance, label: usize, a: Element) -> Element {
    a.atoms()
        .fold(Element::EMPTY, |acc, x| acc | inst.action(label).image(x))
}

fn delta(inst: &Instance, a: Element) -> Vec<usize> {
    (0..inst.label_count())
        .filter(|&l| !theta(inst, l, a).is_empty())
        .collect()
}

/// `A` is regular when every nonempty `B ⊆ A` has `0 < |Δ_B|`.
fn is_regular(inst: &Instance, a: Element) -> bool {
    a.subsets().all(|b| b.is_empty() || !delta(inst, b).is_empty())
}

/// `{θ_β(A) : β ∈ L*}`.
fn values(inst: &Instance, a: Element) -> Vec<Element> {
    let mut seen: HashSet<Element> = HashSet::from([a]);
    let mut order = vec![a];
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        i += 1;
        for l in 0..inst.label_count() {
            let y = theta(inst, l, x);
            if seen.insert(y) {
                order.push(y);
            }
        }
    }
    order
}

/// Top of `H(A) = {B : B ⊆ ⋃_{β ∈ F} θ_β(A), F finite}`.
pub fn brute_hereditary_closure(inst: &Instance, a: Element) -> Element {
    values(inst, a).into_iter().fold(Element::EMPTY, |x, y| x | y)
}

/// Whether `I_D` is hereditary, checked on every element of the ideal.
pub fn brute_is_hereditary(inst: &Instance, d: Element) -> bool {
    d.subsets()
        .all(|a| (0..inst.label_count()).all(|l| theta(inst, l, a).is_subset(d)))
}

/// Saturation of `I_D` relative to the ideal with top `within`, checked on
/// every element: `A ∈ I_within` with `θ_α(A) ∈ I_D` for all `α ∈ Δ_A` lies in `I_D`.
pub fn brute_is_saturated_within(inst: &Instance, d: Element, within: Element) -> bool {
    within.subsets().all(|a| {
        !is_regular(inst, a)
            || !delta(inst, a).iter().all(|&l| theta(inst, l, a).is_subset(d))
            || a.is_subset(d)
    })
}

pub fn brute_is_saturated(inst: &Instance, d: Element) -> bool {
    let regular = inst
        .universe()
        .elements()
        .filter(|&a| is_regular(inst, a))
        .fold(Element::EMPTY, |x, y| x | y);
    brute_is_saturated_within(inst, d, regular)
}

/// Tops of the saturated hereditary ideals, in increasing bit order.
pub fn brute_saturated_hereditary(inst: &Instance) -> Vec<Element> {
    inst.universe()
        .elements()
        .filter(|&d| brute_is_hereditary(inst, d) && brute_is_saturated(inst, d))
        .collect()
}

/// The layered description of `S(H)` for a hereditary top `D`:
/// `B` such that for some `n`, `θ_β(B) ∈ H` for all `|β| = n` and
/// `θ_γ(B) ∈ H ⊕ B_reg` for all `|γ| < n`. Returns its top.
pub fn brute_saturation_formula(inst: &Instance, d: Element) -> Result<Element> {
    too_large(inst, 6)?;
    let regular = inst
        .universe()
        .elements()
        .filter(|&a| is_regular(inst, a))
        .fold(Element::EMPTY, |x, y| x | y);
    let sum = d | regular;
    let mut top = Element::EMPTY;
    for b in inst.universe().elements() {
        // Layer k holds {θ_β(B) : |β| = k} as a bit mask over elements.
        let mut layer: u64 = 1 << b.bits();
        let mut seen: HashSet<u64> = HashSet::new();
        let mut member = false;
        loop {
            let elems: Vec<Element> = (0..64)
                .filter(|i| layer >> i & 1 == 1)
                .map(Element::from_bits)
                .collect();
            if elems.iter().all(|x| x.is_subset(d)) {
                member = true;
                break;
            }
            // The shorter-word clause must hold for this layer from here on.
            if !elems.iter().all(|x| x.is_subset(sum)) || !seen.insert(layer) {
                break;
            }
            let mut next: u64 = 0;
            for x in elems {
                for l in 0..inst.label_count() {
                    next |= 1 << theta(inst, l, x).bits();
                }
            }
            layer = next;
        }
        if member {
            top = top | b;
        }
    }
    Ok(top)
}

/// Condition (L) from the definition: no nonempty `A` and word `β` with
/// `|β| ≤ max_len` such that `(β, A)` is a cycle without exits.
pub fn brute_condition_l(inst: &Instance, max_len: usize) -> bool {
    let n = inst.atom_count();
    let count = 1usize << n;
    // sole[X] = Some(α) when every nonempty B ⊆ X is regular with Δ_B = {α}.
    let sole: Vec<Option<usize>> = (0..count as u32)
        .map(|bits| {
            let x = Element::from_bits(bits);
            let mut found = None;
            for b in x.subsets().filter(|b| !b.is_empty()) {
                match delta(inst, b).as_slice() {
                    [l] if found.is_none() || found == Some(*l) => found = Some(*l),
                    _ => return None,
                }
            }
            found
        })
        .collect();
    let step: Vec<Vec<Element>> = (0..count as u32)
        .map(|bits| {
            (0..inst.label_count())
                .map(|l| theta(inst, l, Element::from_bits(bits)))
                .collect()
        })
        .collect();
    let is_cycle = |word: &[usize], a: Element| {
        a.subsets()
            .all(|b| word.iter().fold(b, |x, &l| step[x.bits() as usize][l]) == b)
    };

    for a in (1..count as u32).map(Element::from_bits) {
        // Depth-first over words; frames hold (prefix, θ_prefix(A)).
        let mut stack: Vec<(Vec<usize>, Element)> = vec![(Vec::new(), a)];
        while let Some((word, x)) = stack.pop() {
            if !word.is_empty() {
                // x = θ_β(A); closing here needs Δ = {β_1} on x.
                if sole[x.bits() as usize] == Some(word[0]) && is_cycle(&word, a) {
                    return false;
                }
            }
            if word.len() == max_len {
                continue;
            }
            for (l, &y) in step[x.bits() as usize].iter().enumerate() {
                // The letter after a nonempty prefix is forced by the no-exit clause.
                if !word.is_empty() && sole[x.bits() as usize] != Some(l) {
                    continue;
                }
                if y.is_empty() {
                    continue;
                }
                let mut w = word.clone();
                w.push(l);
                stack.push((w, y));
            }
        }
    }
    true
}

/// Condition (K) from the definition, with words of length at most
/// `max_len`. Fails when some atom `c`, `A ∋ c` and return word `β` make every
/// bounded `γ`, `B ⊆ A` with `c ∈ θ_γ(B)` satisfy `c ∈ B` and `γ ∈ β⁺`.
pub fn brute_condition_k(inst: &Instance, max_len: usize) -> bool {
    let mut words: Vec<Vec<usize>> = Vec::new();
    let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for l in 0..inst.label_count() {
                let mut v = w.clone();
                v.push(l);
                words.push(v.clone());
                next.push(v);
            }
        }
        frontier = next;
    }
    let apply = |w: &[usize], b: Element| w.iter().fold(b, |x, &l| theta(inst, l, x));
    let power_of = |g: &[usize], b: &[usize]| {
        g.len().is_multiple_of(b.len()) && (0..g.len()).all(|i| g[i] == b[i % b.len()])
    };
    for c in 0..inst.atom_count() {
        let eta = |x: Element| x.contains(c);
        for beta in words.iter().filter(|w| eta(apply(w, Element::atom(c)))) {
            for a in inst.universe().elements().filter(|a| a.contains(c)) {
                let bad = words.iter().all(|g| {
                    a.subsets()
                        .all(|b| !eta(apply(g, b)) || (eta(b) && power_of(g, beta)))
                });
                if bad {
                    return false;
                }
            }
        }
    }
    true
}

/// (T1)–(T6) for the family `tail` (given by membership of every element).
pub fn brute_tail_axioms(inst: &Instance, tail: &[Element]) -> Result<[bool; 6]> {
    too_large(inst, 5)?;
    let set: HashSet<Element> = tail.iter().copied().collect();
    let mem = |x: Element| set.contains(&x);
    let all: Vec<Element> = inst.universe().elements().collect();
    let labels = 0..inst.label_count();

    let t1 = !mem(Element::EMPTY);
    let t2 = all
        .iter()
        .all(|&a| labels.clone().all(|l| !mem(theta(inst, l, a)) || mem(a)));
    let t3 = all
        .iter()
        .all(|&a| all.iter().all(|&b| !mem(a | b) || mem(a) || mem(b)));
    let t4 = all
        .iter()
        .all(|&a| !mem(a) || all.iter().all(|&b| !a.is_subset(b) || mem(b)));
    let t5 = all.iter().all(|&a| {
        !(mem(a) && is_regular(inst, a)) || labels.clone().any(|l| mem(theta(inst, l, a)))
    });
    let vals: HashMap<Element, Vec<Element>> = tail.iter().map(|&a| (a, values(inst, a))).collect();
    let t6 = tail.iter().all(|a| {
        tail.iter().all(|b| {
            vals[a]
                .iter()
                .any(|&x| vals[b].iter().any(|&y| mem(x & y)))
        })
    });
    Ok([t1, t2, t3, t4, t5, t6])
}

/// The family `B ∖ I_D`.
pub fn complement_family(inst: &Instance, d: Element) -> Vec<Element> {
    inst.universe()
        .elements()
        .filter(|x| !x.is_subset(d))
        .collect()
}

/// Complements `D` of all maximal tails (non-empty families satisfying every
/// axiom), each family checked axiom by axiom. Every family closed under (T3) and (T4) with `∅` excluded has an ideal as
/// complement, so ranging over `D` loses nothing.
pub fn brute_maximal_tails(inst: &Instance) -> Result<Vec<Element>> {
    too_large(inst, 5)?;
    let mut out = Vec::new();
    for d in inst.universe().elements() {
        let family = complement_family(inst, d);
        if !family.is_empty() && brute_tail_axioms(inst, &family)?.iter().all(|&x| x) {
            out.push(d);
        }
    }
    Ok(out)
}

/// The two path characterizations of minimality, for every nonempty `A`
/// and every `B`, with `D` the top of `H(A)`:
/// first, some regular `C` has `B ∖ C ⊆ D` and every infinite word eventually
/// carries `B` into `I_D`; second, some regular `C` has `B ∖ C ⊆ D` and every
/// infinite word eventually carries `C` into `I_D`.
///
/// The clauses over infinite words become: no infinite path of values
/// `θ_{x_{1,n}}(X)` stays outside `H(A)`. In the finite value graph that
/// means no cycle of outside values is reachable through outside values.
pub fn brute_minimality_45(inst: &Instance) -> Result<(bool, bool)> {
    too_large(inst, 6)?;
    let all: Vec<Element> = inst.universe().elements().collect();
    let regular: Vec<Element> = all.iter().copied().filter(|&c| is_regular(inst, c)).collect();
    let mut cache: HashMap<Element, Vec<bool>> = HashMap::new();
    let mut v4 = true;
    let mut v5 = true;
    for &a in all.iter().filter(|a| !a.is_empty()) {
        let h = brute_hereditary_closure(inst, a);
        let fin = cache
            .entry(h)
            .or_insert_with(|| eventually_inside(inst, h))
            .clone();
        for &b in &all {
            let cs: Vec<Element> = regular.iter().copied().filter(|&c| (b - c).is_subset(h)).collect();
            if cs.is_empty() || !fin[b.bits() as usize] {
                v4 = false;
            }
            if !cs.iter().any(|c| fin[c.bits() as usize]) {
                v5 = false;
            }
        }
    }
    Ok((v4, v5))
}

/// `fin[X]`: every infinite word eventually carries `X` into `I_h`.
fn eventually_inside(inst: &Instance, h: Element) -> Vec<bool> {
    let count = 1usize << inst.atom_count();
    let mut fin: Vec<bool> = (0..count as u32).map(|x| Element::from_bits(x).is_subset(h)).collect();
    if inst.label_count() == 0 {
        // No infinite words at all.
        return vec![true; count];
    }
    loop {
        let mut changed = false;
        for x in 0..count {
            if !fin[x]
                && (0..inst.label_count())
                    .all(|l| fin[theta(inst, l, Element::from_bits(x as u32)).bits() as usize])
            {
                fin[x] = true;
                changed = true;
            }
        }
        if !changed {
            return fin;
        }
    }
}

/// Gauge pairs counted from element-level definitions.
pub fn brute_gauge_pairs(inst: &Instance) -> Vec<(Element, Element)> {
    let all: Vec<Element> = inst.universe().elements().collect();
    let j = inst.j_top();
    let mut out = Vec::new();
    for &d in &all {
        if !brute_is_hereditary(inst, d) {
            continue;
        }
        let j_saturated = j.subsets().all(|a| {
            !(0..inst.label_count()).all(|l| theta(inst, l, a).is_subset(d)) || a.is_subset(d)
        });
        if !j_saturated {
            continue;
        }
        // A ∈ B_H when every class [B] ≤ [A] other than zero has nonempty Δ in B/H.
        let in_bh = |a: Element| {
            a.subsets().all(|b| {
                b.is_subset(d) || (0..inst.label_count()).any(|l| !theta(inst, l, b).is_subset(d))
            })
        };
        for &s in &all {
            if (d | j).is_subset(s) && in_bh(s) {
                out.push((d, s));
            }
        }
    }
    out
}

/// `B′` built literally as the pair algebra `{(A, X)}` with `X` the class
/// representative `B ∖ J` and `A ∖ B_reg = X ∖ B_reg`, then presented as a
/// powerset over its computed atoms.
pub fn brute_prime_model(inst: &Instance) -> Result<Instance> {
    too_large(inst, 6)?;
    let regular = inst.regular_top();
    let j = inst.j_top();
    let full = inst.full();
    let class = |b: Element| b - j;
    let pairs: Vec<(Element, Element)> = inst
        .universe()
        .elements()
        .flat_map(|a| {
            (full - j)
                .subsets()
                .filter(move |&x| (a - regular) == (x - regular))
                .map(move |x| (a, x))
        })
        .collect();
    let set: HashSet<(Element, Element)> = pairs.iter().copied().collect();
    let le = |p: (Element, Element), q: (Element, Element)| p.0.is_subset(q.0) && p.1.is_subset(q.1);
    let zero = (Element::EMPTY, Element::EMPTY);
    for &p in &pairs {
        for &q in &pairs {
            let join = (p.0 | q.0, p.1 | q.1);
            let meet = (p.0 & q.0, p.1 & q.1);
            let diff = (p.0 - q.0, p.1 - q.1);
            if !set.contains(&join) || !set.contains(&meet) || !set.contains(&diff) {
                return Err(Error::mismatch("pair algebra", "not closed under lattice operations"));
            }
        }
    }
    let mut atoms: Vec<(Element, Element)> = pairs
        .iter()
        .copied()
        .filter(|&p| p != zero && pairs.iter().all(|&q| q == zero || q == p || !le(q, p)))
        .collect();
    atoms.sort_by(|p, q| p.0.bits().cmp(&q.0.bits()).then(p.1.bits().cmp(&q.1.bits())));
    let to_elem = |p: (Element, Element)| {
        Element::from_atoms((0..atoms.len()).filter(|&i| le(atoms[i], p)))
    };
    let names: Vec<String> = (0..atoms.len()).map(|i| format!("p{i}")).collect();
    let mut spec = InstanceSpec::new(&names, inst.labels());
    for l in 0..inst.label_count() {
        for (i, &(a, _)) in atoms.iter().enumerate() {
            let t = theta(inst, l, a);
            spec.images[l][i] = to_elem((t, class(t)));
        }
        let c = inst.ideal_top(l);
        spec.ideal_tops[l] = Some(to_elem((c, class(c))));
    }
    build_instance(&spec)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeneratorParams {
    pub seed: u64,
    pub atoms: usize,
    pub labels: usize,
    pub density: f64,
    pub slack: f64,
    pub shrink: f64,
}

impl GeneratorParams {
    /// Parameters for corpus entry `seed`: up to 6 atoms and 4 labels, with
    /// densities, ideal slack and J shrinking all varied.
    pub fn corpus(seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
        let densities = [0.15, 0.3, 0.45, 0.6, 0.8];
        GeneratorParams {
            seed,
            atoms: rng.random_range(1..=6),
            labels: rng.random_range(1..=4),
            density: densities[rng.random_range(0..densities.len())],
            slack: if rng.random_bool(0.5) { 0.0 } else { 0.3 },
            shrink: if rng.random_bool(0.5) { 0.0 } else { 0.5 },
        }
    }
}

pub fn random_instance(p: &GeneratorParams) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let atoms: Vec<String> = (0..p.atoms).map(|i| format!("a{i}")).collect();
    let labels: Vec<String> = (0..p.labels).map(|i| format!("x{i}")).collect();
    let mut spec = InstanceSpec::new(&atoms, &labels);
    for l in 0..p.labels {
        // Each target atom is claimed by at most one source.
        for b in 0..p.atoms {
            if rng.random_bool(p.density) {
                let a = rng.random_range(0..p.atoms);
                spec.images[l][a].insert(b);
            }
        }
    }
    for l in 0..p.labels {
        let range = Element::from_atoms((0..p.atoms).filter(|&b| spec.images[l].iter().any(|i| i.contains(b))));
        let mut top = range;
        for b in 0..p.atoms {
            if !range.contains(b) && rng.random_bool(p.slack) {
                top.insert(b);
            }
        }
        spec.ideal_tops[l] = Some(top);
    }
    let regular = Element::from_atoms(
        (0..p.atoms).filter(|&a| (0..p.labels).any(|l| !spec.images[l][a].is_empty())),
    );
    let mut j = regular;
    for a in regular.atoms() {
        if rng.random_bool(p.shrink) {
            j = j - Element::atom(a);
        }
    }
    spec.j_top = Some(j);
    build_instance(&spec).expect("generated instances are valid by construction")
}

/// A finite directed graph; parallel edges and loops are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    pub vertices: usize,
    /// `(source, range)` pairs.
    pub edges: Vec<(usize, usize)>,
}

impl Digraph {
    pub fn random(seed: u64, max_vertices: usize, max_edges: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let vertices = rng.random_range(1..=max_vertices);
        let count = rng.random_range(0..=max_edges);
        let edges = (0..count)
            .map(|_| (rng.random_range(0..vertices), rng.random_range(0..vertices)))
            .collect();
        Digraph { vertices, edges }
    }

    fn out_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.0 == v).count()
    }

    fn reaches(&self, from: usize) -> Vec<bool> {
        let mut seen = vec![false; self.vertices];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            for &(s, r) in &self.edges {
                if s == v && !seen[r] {
                    seen[r] = true;
                    queue.push_back(r);
                }
            }
        }
        seen
    }

    fn on_cycle(&self, v: usize) -> bool {
        self.edges.iter().any(|&(s, r)| s == v && self.reaches(r)[v])
    }

    /// Number of closed walks at `v` meeting `v` only at their ends, capped at 2.
    fn first_returns(&self, v: usize) -> u32 {
        let n = self.vertices;
        // ways[u] = walks v → u of the current length avoiding v in between.
        let mut ways = vec![0u32; n];
        let mut total = 0u32;
        for &(s, r) in &self.edges {
            if s == v {
                if r == v {
                    total += 1;
                } else {
                    ways[r] = (ways[r] + 1).min(2);
                }
            }
        }
        for _ in 0..3 * n + 1 {
            let mut next = vec![0u32; n];
            for &(s, r) in &self.edges {
                if s != v && ways[s] > 0 {
                    if r == v {
                        total = (total + ways[s]).min(2);
                    } else {
                        next[r] = (next[r] + ways[s]).min(2);
                    }
                }
            }
            ways = next;
        }
        total.min(2)
    }
}

/// Vertices become atoms and every edge its own label, with
/// `θ_e(A) = {r(e)}` when `s(e) ∈ A`.
pub fn import_digraph(g: &Digraph) -> Instance {
    let atoms: Vec<String> = (0..g.vertices).map(|i| format!("v{i}")).collect();
    let labels: Vec<String> = (0..g.edges.len()).map(|i| format!("e{i}")).collect();
    let mut spec = InstanceSpec::new(&atoms, &labels);
    for (i, &(s, r)) in g.edges.iter().enumerate() {
        spec.images[i][s] = Element::atom(r);
    }
    build_instance(&spec).expect("one label per edge is always disjoint")
}

/// `(L, K, simple)` by the standard criteria for graph algebras:
/// (L) every cycle has an exit; (K) no vertex has exactly one first-return
/// walk; simple when (L) holds and every vertex reaches every sink and every
/// vertex lying on a cycle.
pub fn classical_graph_verdicts(g: &Digraph) -> (bool, bool, bool) {
    let n = g.vertices;
    let l = (0..n).all(|v| {
        // A cycle without exit through v: follow unique out-edges back to v.
        let mut cur = v;
        for _ in 0..n {
            if g.out_degree(cur) != 1 {
                return true;
            }
            cur = g.edges.iter().find(|e| e.0 == cur).unwrap().1;
            if cur == v {
                return false;
            }
        }
        true
    });
    let k = (0..n).all(|v| g.first_returns(v) != 1);
    let targets: Vec<usize> = (0..n).filter(|&v| g.out_degree(v) == 0 || g.on_cycle(v)).collect();
    let cofinal = (0..n).all(|v| {
        let r = g.reaches(v);
        targets.iter().all(|&t| r[t])
    });
    (l, k, l && cofinal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bds::tests::{arb_instance, e, f1, f2, f3, f4, f5};
    use crate::ideals;
    use proptest::prelude::*;

    fn graph(vertices: usize, edges: &[(usize, usize)]) -> Digraph {
        Digraph {
            vertices,
            edges: edges.to_vec(),
        }
    }

    #[test]
    fn brute_l_examples() {
        assert!(!brute_condition_l(&f1(), 2));
        assert!(brute_condition_l(&f2(), 4));
        assert!(!brute_condition_l(&f4(), 4));
        assert!(brute_condition_l(&f3(), 4));
        assert!(brute_condition_l(&f5(), 4));
    }

    #[test]
    fn brute_k_examples() {
        assert!(!brute_condition_k(&f1(), 4));
        assert!(brute_condition_k(&f2(), 4));
        assert!(brute_condition_k(&f3(), 4));
        assert!(!brute_condition_k(&f4(), 4));
        assert!(!brute_condition_k(&f5(), 4));
    }

    #[test]
    fn tail_axiom_examples() {
        let f2 = f2();
        assert_eq!(brute_tail_axioms(&f2, &complement_family(&f2, e(0))).unwrap(), [true; 6]);
        let f4 = f4();
        assert_eq!(brute_tail_axioms(&f4, &complement_family(&f4, e(2))).unwrap(), [true; 6]);
        let axioms = brute_tail_axioms(&f4, &complement_family(&f4, e(0))).unwrap();
        assert!(!axioms[5] && axioms[..5].iter().all(|&x| x));
        assert_eq!(brute_maximal_tails(&f5()).unwrap(), vec![e(0), e(2)]);
        assert_eq!(brute_maximal_tails(&f4).unwrap(), vec![e(1), e(2)]);
    }

    #[test]
    fn minimality_path_examples() {
        assert_eq!(brute_minimality_45(&f2()).unwrap(), (true, true));
        assert_eq!(brute_minimality_45(&f5()).unwrap(), (false, false));
        assert_eq!(brute_minimality_45(&f1()).unwrap(), (true, true));
        assert_eq!(brute_minimality_45(&f3()).unwrap(), (true, true));
        assert_eq!(brute_minimality_45(&f4()).unwrap(), (false, false));
    }

    #[test]
    fn saturation_formula_examples() {
        assert_eq!(brute_saturation_formula(&f3(), e(2)).unwrap(), e(3));
        assert_eq!(brute_saturation_formula(&f5(), e(2)).unwrap(), e(2));
        assert_eq!(brute_saturation_formula(&f1(), e(0)).unwrap(), e(0));
    }

    #[test]
    fn gauge_pair_counts() {
        assert_eq!(brute_gauge_pairs(&f1()).len(), 2);
        assert_eq!(brute_gauge_pairs(&f2()).len(), 2);
        assert_eq!(brute_gauge_pairs(&f5()), vec![(e(0), e(1)), (e(2), e(3)), (e(3), e(3))]);
    }

    #[test]
    fn prime_model_of_loop_with_empty_j() {
        let p = brute_prime_model(&f1().with_j_top(Element::EMPTY).unwrap()).unwrap();
        assert_eq!(p.atom_count(), 2);
        assert!(brute_condition_l(&p, 4));
    }

    #[test]
    fn importer_matches_fixtures() {
        let same = |g: &Digraph, inst: &Instance| {
            let imported = import_digraph(g);
            assert_eq!(imported.atom_count(), inst.atom_count());
            for l in 0..imported.label_count() {
                for a in 0..imported.atom_count() {
                    assert_eq!(imported.action(l).image(a), inst.action(l).image(a));
                }
            }
        };
        same(&graph(1, &[(0, 0)]), &f1());
        same(&graph(1, &[(0, 0), (0, 0)]), &f2());
        same(&graph(2, &[(0, 1)]), &f3());
    }

    #[test]
    fn classical_examples() {
        assert_eq!(classical_graph_verdicts(&graph(1, &[(0, 0)])), (false, false, false));
        assert_eq!(classical_graph_verdicts(&graph(1, &[(0, 0), (0, 0)])), (true, true, true));
        assert_eq!(classical_graph_verdicts(&graph(2, &[(0, 1)])), (true, true, true));
        assert_eq!(classical_graph_verdicts(&graph(2, &[(0, 0), (1, 1)])), (false, false, false));
        assert_eq!(classical_graph_verdicts(&graph(2, &[(0, 0), (0, 1)])), (true, false, false));
    }

    #[test]
    fn generator_is_deterministic() {
        let p = GeneratorParams {
            seed: 1,
            atoms: 3,
            labels: 2,
            density: 0.5,
            slack: 0.0,
            shrink: 0.0,
        };
        assert_eq!(random_instance(&p), random_instance(&p));
        assert_eq!(GeneratorParams::corpus(7), GeneratorParams::corpus(7));
        for seed in 1..50 {
            let p = GeneratorParams::corpus(seed);
            assert!((1..=6).contains(&p.atoms) && (1..=4).contains(&p.labels));
            random_instance(&p);
        }
    }

    proptest! {
        #[test]
        fn saturation_formula_matches_fixpoint(inst in arb_instance(5, 3)) {
            for a in inst.universe().elements() {
                let h = ideals::hereditary_closure(&inst, a);
                prop_assert_eq!(h.top, brute_hereditary_closure(&inst, a));
                let s = ideals::saturation_s(&inst, h).unwrap().top;
                prop_assert_eq!(brute_saturation_formula(&inst, h.top).unwrap(), s);
            }
        }

        #[test]
        fn prime_model_matches_construction(inst in arb_instance(4, 2), shrink in 0u32..16) {
            let inst = inst.with_j_top(inst.regular_top() - e(shrink)).unwrap();
            let model = brute_prime_model(&inst).unwrap();
            let built = crate::relgen::to_generalized(&inst).instance;
            prop_assert_eq!(model.atom_count(), built.atom_count());
            prop_assert_eq!(model.regular_top().len(), built.regular_top().len());
            prop_assert_eq!(brute_condition_l(&model, 16), brute_condition_l(&built, 16));
        }
    }
}

//! Hereditary, saturated and J-saturated ideals, quotients, gauge pairs,
//! minimality and simplicity.
//!
//! Every ideal is principal, so an ideal is handled through its top `D`.
//! Closure properties reduce to atoms: `I_D` is saturated exactly when no
//! regular atom outside `D` has all of its images inside `D`.

use rayon::prelude::*;

use crate::bds::{build_instance, Instance, InstanceSpec};
use crate::boolcore::{Element, PrincipalIdeal};
use crate::error::{Error, Result};
use crate::props;

pub fn is_hereditary(inst: &Instance, d: Element) -> bool {
    inst.successors(d).is_subset(d)
}

fn saturated_within(inst: &Instance, d: Element, candidates: Element) -> bool {
    (candidates - d)
        .atoms()
        .all(|a| !inst.successors(Element::atom(a)).is_subset(d))
}

/// Saturation with respect to `B_reg`.
pub fn is_saturated(inst: &Instance, d: Element) -> bool {
    saturated_within(inst, d, inst.regular_top())
}

/// Saturation with respect to `J`.
pub fn is_j_saturated(inst: &Instance, d: Element) -> bool {
    saturated_within(inst, d, inst.j_top())
}

/// `H(A)`: the smallest hereditary ideal containing `A`.
pub fn hereditary_closure(inst: &Instance, a: Element) -> PrincipalIdeal {
    PrincipalIdeal::new(inst.forward_closure(a & inst.full()))
}

/// The least saturated hereditary ideal containing a hereditary `H`.
pub fn saturation_s(inst: &Instance, h: PrincipalIdeal) -> Result<PrincipalIdeal> {
    let mut d = h.top & inst.full();
    if !is_hereditary(inst, d) {
        return Err(Error::NotHereditary(inst.render(d)));
    }
    loop {
        let forced = Element::from_atoms(
            (inst.regular_top() - d)
                .atoms()
                .filter(|&a| inst.successors(Element::atom(a)).is_subset(d)),
        );
        if forced.is_empty() {
            return Ok(PrincipalIdeal::new(d));
        }
        d = d | forced;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatticeMode {
    Saturated,
    JSaturated,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LatticeEntry {
    pub top: Element,
    pub hereditary: bool,
    pub saturated: bool,
    pub j_saturated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HereditarySaturatedLattice {
    pub mode: LatticeMode,
    pub entries: Vec<LatticeEntry>,
}

impl HereditarySaturatedLattice {
    pub fn tops(&self) -> Vec<Element> {
        self.entries.iter().map(|e| e.top).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Ideal containment, which for principal ideals is containment of tops.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.entries[i].top.is_subset(self.entries[j].top)
    }
}

/// Hereditary ideals that are saturated (or J-saturated), canonically sorted.
pub fn enumerate_lattice(inst: &Instance, mode: LatticeMode) -> HereditarySaturatedLattice {
    let n = inst.atom_count();
    let mut entries: Vec<LatticeEntry> = (0..1u32 << n)
        .into_par_iter()
        .map(Element::from_bits)
        .filter(|&d| is_hereditary(inst, d))
        .map(|d| LatticeEntry {
            top: d,
            hereditary: true,
            saturated: is_saturated(inst, d),
            j_saturated: is_j_saturated(inst, d),
        })
        .filter(|e| match mode {
            LatticeMode::Saturated => e.saturated,
            LatticeMode::JSaturated => e.j_saturated,
        })
        .collect();
    entries.sort_by(|a, b| a.top.canonical_cmp(&b.top));
    HereditarySaturatedLattice { mode, entries }
}

/// The quotient system `(B/H, L, θ, [I_α]; [J])` on the atoms outside `H`.
///
/// `[J]` is clipped to the regular part of the quotient, which only matters
/// when `H` is not J-saturated.
pub fn quotient_instance(inst: &Instance, h: PrincipalIdeal) -> Result<Instance> {
    let d = h.top & inst.full();
    if !is_hereditary(inst, d) {
        return Err(Error::NotHereditary(inst.render(d)));
    }
    let survivors: Vec<usize> = (inst.full() - d).atoms().collect();
    let mut new_index = vec![usize::MAX; inst.atom_count()];
    for (i, &a) in survivors.iter().enumerate() {
        new_index[a] = i;
    }
    let reindex = |e: Element| Element::from_atoms((e - d).atoms().map(|a| new_index[a]));
    let names: Vec<&str> = survivors.iter().map(|&a| inst.universe().name(a)).collect();
    let labels: Vec<&str> = inst.labels().iter().map(String::as_str).collect();
    let mut spec = InstanceSpec::new(&names, &labels);
    for l in 0..inst.label_count() {
        for (i, &a) in survivors.iter().enumerate() {
            spec.images[l][i] = reindex(inst.action(l).image(a));
        }
        spec.ideal_tops[l] = Some(reindex(inst.ideal_top(l)));
    }
    let regular = Element::from_atoms(
        (0..survivors.len()).filter(|&i| (0..spec.labels.len()).any(|l| !spec.images[l][i].is_empty())),
    );
    spec.j_top = Some(reindex(inst.j_top()) & regular);
    build_instance(&spec)
}

/// A gauge-invariant ideal, given by its hereditary J-saturated part `H`
/// and the ideal `S` of `B_H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GaugePair {
    pub h_top: Element,
    pub s_top: Element,
}

impl GaugePair {
    pub fn le(&self, other: &GaugePair) -> bool {
        self.h_top.is_subset(other.h_top) && self.s_top.is_subset(other.s_top)
    }
}

/// Top of `B_H = {A : [A]_H is regular in B/H}`.
pub fn bh_top(inst: &Instance, d: Element) -> Element {
    d | Element::from_atoms(
        (inst.full() - d)
            .atoms()
            .filter(|&a| !inst.successors(Element::atom(a)).is_subset(d)),
    )
}

pub fn gauge_pairs(inst: &Instance) -> Vec<GaugePair> {
    let lattice = enumerate_lattice(inst, LatticeMode::JSaturated);
    let mut out: Vec<GaugePair> = lattice
        .entries
        .par_iter()
        .flat_map_iter(|entry| {
            let d = entry.top;
            let upper = bh_top(inst, d);
            let base = d | inst.j_top();
            debug_assert!(base.is_subset(upper));
            (upper - base)
                .subsets()
                .map(move |extra| GaugePair {
                    h_top: d,
                    s_top: base | extra,
                })
                .collect::<Vec<_>>()
        })
        .collect();
    out.sort_by(|a, b| {
        a.h_top
            .canonical_cmp(&b.h_top)
            .then_with(|| a.s_top.canonical_cmp(&b.s_top))
    });
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinimalityRoute {
    Lattice,
    UniqueTail,
    Closure,
}

pub fn minimal_by(inst: &Instance, route: MinimalityRoute) -> bool {
    let full = inst.full();
    match route {
        MinimalityRoute::Lattice => enumerate_lattice(inst, LatticeMode::Saturated)
            .tops()
            .iter()
            .all(|&t| t.is_empty() || t == full),
        MinimalityRoute::UniqueTail => {
            if inst.atom_count() == 0 {
                return true;
            }
            let tails = props::enumerate_maximal_tails(inst);
            tails.len() == 1 && tails[0].complement.is_empty()
        }
        MinimalityRoute::Closure => (0..inst.atom_count()).all(|a| {
            let h = hereditary_closure(inst, Element::atom(a));
            saturation_s(inst, h).expect("H(A) is hereditary").top == full
        }),
    }
}

/// Minimality, decided by the lattice route and confirmed by the other two.
pub fn is_minimal(inst: &Instance) -> Result<bool> {
    let lattice = minimal_by(inst, MinimalityRoute::Lattice);
    let tail = minimal_by(inst, MinimalityRoute::UniqueTail);
    let closure = minimal_by(inst, MinimalityRoute::Closure);
    if lattice != tail || lattice != closure {
        return Err(Error::mismatch(
            "minimality",
            format!("lattice={lattice} unique-tail={tail} closure={closure}"),
        ));
    }
    Ok(lattice)
}

/// A proper nontrivial saturated hereditary top, if one exists.
pub fn nontrivial_saturated_top(inst: &Instance) -> Option<Element> {
    let full = inst.full();
    enumerate_lattice(inst, LatticeMode::Saturated)
        .tops()
        .into_iter()
        .find(|t| !t.is_empty() && *t != full)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleVerdict {
    pub simple: bool,
    pub minimal: bool,
    pub condition_l: bool,
    pub condition_k: bool,
    pub explanation: String,
}

pub fn is_simple(inst: &Instance) -> Result<SimpleVerdict> {
    if inst.j_top() != inst.regular_top() {
        return Err(Error::RelativeJNotSupported {
            j: inst.render(inst.j_top()),
            regular: inst.render(inst.regular_top()),
        });
    }
    let minimal = is_minimal(inst)?;
    let cycle = props::find_cycle_no_exit(inst);
    let condition_l = cycle.is_none();
    let condition_k = props::check_condition_k(inst)?;
    let simple = minimal && condition_l;

    let by_tails = inst.atom_count() == 0 || {
        let tails = props::enumerate_maximal_tails(inst);
        tails.len() == 1 && tails[0].complement.is_empty() && tails[0].cyclic.is_none()
    };
    let by_k = minimal && condition_k;
    if simple != by_tails || simple != by_k {
        return Err(Error::mismatch(
            "simplicity",
            format!("minimal-and-L={simple} tails={by_tails} minimal-and-K={by_k}"),
        ));
    }

    let explanation = if simple {
        "minimal and satisfies Condition (L)".to_string()
    } else if !minimal {
        let top = nontrivial_saturated_top(inst).expect("a non-minimal system has a proper ideal");
        format!("not minimal; saturated hereditary ideal top={}", inst.render(top))
    } else {
        let w = cycle.expect("Condition (L) fails");
        format!(
            "fails Condition (L); cycle word={} base={}",
            inst.render_word(&w.word),
            inst.universe().name(w.atom)
        )
    };
    Ok(SimpleVerdict {
        simple,
        minimal,
        condition_l,
        condition_k,
        explanation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bds::isomorphic;
    use crate::bds::tests::{arb_instance, e, f1, f2, f3, f4, f5};
    use proptest::prelude::*;

    #[test]
    fn closure_examples() {
        let f5 = f5();
        assert_eq!(hereditary_closure(&f5, e(1)).top, e(3));
        assert_eq!(hereditary_closure(&f5, e(2)).top, e(2));
        assert_eq!(hereditary_closure(&f5, Element::EMPTY).top, Element::EMPTY);
    }

    #[test]
    fn saturation_examples() {
        assert_eq!(saturation_s(&f5(), PrincipalIdeal::new(e(2))).unwrap().top, e(2));
        assert_eq!(saturation_s(&f3(), PrincipalIdeal::new(e(2))).unwrap().top, e(3));
        assert_eq!(saturation_s(&f1(), PrincipalIdeal::new(Element::EMPTY)).unwrap().top, Element::EMPTY);
        assert_eq!(
            saturation_s(&f5(), PrincipalIdeal::new(e(1))),
            Err(Error::NotHereditary("{a}".into()))
        );
    }

    #[test]
    fn lattice_examples() {
        assert_eq!(enumerate_lattice(&f4(), LatticeMode::Saturated).tops(), vec![e(0), e(1), e(2), e(3)]);
        assert_eq!(enumerate_lattice(&f5(), LatticeMode::Saturated).tops(), vec![e(0), e(2), e(3)]);
        assert_eq!(enumerate_lattice(&f2(), LatticeMode::Saturated).tops(), vec![e(0), e(1)]);
        assert_eq!(enumerate_lattice(&f1(), LatticeMode::Saturated).tops(), vec![e(0), e(1)]);
        // With J = ∅ every hereditary ideal is J-saturated.
        let f3j = f3().with_j_top(Element::EMPTY).unwrap();
        assert_eq!(enumerate_lattice(&f3j, LatticeMode::JSaturated).tops(), vec![e(0), e(2), e(3)]);
        assert_eq!(enumerate_lattice(&f3j, LatticeMode::Saturated).tops(), vec![e(0), e(3)]);
    }

    #[test]
    fn quotient_examples() {
        // F5 / I_{b} is F1 with an extra label acting as zero.
        let q = quotient_instance(&f5(), PrincipalIdeal::new(e(2))).unwrap();
        assert_eq!(q.universe().names(), ["a"]);
        assert_eq!((q.action(0).image(0), q.action(1).image(0)), (e(1), Element::EMPTY));
        assert_eq!((q.ideal_top(0), q.ideal_top(1), q.j_top()), (e(1), Element::EMPTY, e(1)));
        let mut f1_spec = f1().to_spec();
        f1_spec.labels.push("y".into());
        f1_spec.images.push(vec![Element::EMPTY]);
        f1_spec.ideal_tops.push(None);
        assert!(isomorphic(&q, &build_instance(&f1_spec).unwrap()));
        let q = quotient_instance(&f4(), PrincipalIdeal::new(e(1))).unwrap();
        assert_eq!(q.universe().names(), ["b"]);
        assert_eq!(q.action(0).image(0), Element::EMPTY);
        assert_eq!(q.action(1).image(0), e(1));
        assert_eq!(quotient_instance(&f5(), PrincipalIdeal::new(Element::EMPTY)).unwrap(), f5());
        assert!(matches!(
            quotient_instance(&f5(), PrincipalIdeal::new(e(1))),
            Err(Error::NotHereditary(_))
        ));
    }

    #[test]
    fn quotient_images_match_elementwise() {
        for inst in [f1(), f2(), f3(), f4(), f5()] {
            for entry in enumerate_lattice(&inst, LatticeMode::JSaturated).entries {
                let d = entry.top;
                let q = quotient_instance(&inst, PrincipalIdeal::new(d)).unwrap();
                let survivors: Vec<usize> = (inst.full() - d).atoms().collect();
                let lift = |x: Element| Element::from_atoms(x.atoms().map(|i| survivors[i]));
                for x in q.universe().elements() {
                    for l in 0..inst.label_count() {
                        assert_eq!(lift(q.apply(l, x)), inst.apply(l, lift(x)) - d);
                    }
                }
            }
        }
    }

    #[test]
    fn gauge_pair_examples() {
        let pairs = |i: &Instance| -> Vec<(u32, u32)> {
            gauge_pairs(i).iter().map(|p| (p.h_top.bits(), p.s_top.bits())).collect()
        };
        assert_eq!(pairs(&f5()), vec![(0, 1), (2, 3), (3, 3)]);
        assert_eq!(pairs(&f1()), vec![(0, 1), (1, 1)]);
        assert_eq!(pairs(&f2()).len(), 2);
    }

    #[test]
    fn gauge_pairs_catch_relative_j() {
        // F1 with J = ∅ has the extra pair (∅, ∅).
        let f1j = f1().with_j_top(Element::EMPTY).unwrap();
        let got: Vec<(u32, u32)> = gauge_pairs(&f1j).iter().map(|p| (p.h_top.bits(), p.s_top.bits())).collect();
        assert_eq!(got, vec![(0, 0), (0, 1), (1, 1)]);
    }

    #[test]
    fn minimality_examples() {
        assert!(is_minimal(&f2()).unwrap());
        assert!(!is_minimal(&f5()).unwrap());
        assert!(is_minimal(&f3()).unwrap());
        assert!(is_minimal(&f1()).unwrap());
        assert!(!is_minimal(&f4()).unwrap());
        let empty = build_instance(&InstanceSpec::new::<&str>(&[], &["x"])).unwrap();
        assert!(is_minimal(&empty).unwrap());
    }

    #[test]
    fn simplicity_examples() {
        assert!(is_simple(&f2()).unwrap().simple);
        assert!(is_simple(&f3()).unwrap().simple);
        let v = is_simple(&f1()).unwrap();
        assert!(!v.simple);
        assert_eq!(v.explanation, "fails Condition (L); cycle word=x base=a");
        let v = is_simple(&f5()).unwrap();
        assert_eq!(v.explanation, "not minimal; saturated hereditary ideal top={b}");
        assert!(matches!(
            is_simple(&f1().with_j_top(Element::EMPTY).unwrap()),
            Err(Error::RelativeJNotSupported { .. })
        ));
    }

    proptest! {
        #[test]
        fn closure_is_least_hereditary(inst in arb_instance(5, 3), a in 0u32..32) {
            let a = e(a) & inst.full();
            let h = hereditary_closure(&inst, a).top;
            prop_assert!(is_hereditary(&inst, h));
            prop_assert!(a.is_subset(h));
            prop_assert_eq!(hereditary_closure(&inst, h).top, h);
            for d in inst.universe().elements() {
                if is_hereditary(&inst, d) && a.is_subset(d) {
                    prop_assert!(h.is_subset(d));
                }
                if a.is_subset(d) {
                    prop_assert!(h.is_subset(hereditary_closure(&inst, d).top));
                }
            }
        }

        #[test]
        fn saturation_is_least_saturated(inst in arb_instance(5, 3), a in 0u32..32) {
            let h = hereditary_closure(&inst, e(a) & inst.full());
            let s = saturation_s(&inst, h).unwrap().top;
            prop_assert!(h.top.is_subset(s));
            prop_assert!(is_hereditary(&inst, s) && is_saturated(&inst, s));
            for d in inst.universe().elements() {
                if is_hereditary(&inst, d) && is_saturated(&inst, d) && h.top.is_subset(d) {
                    prop_assert!(s.is_subset(d));
                }
            }
        }

        #[test]
        fn atom_saturation_matches_elements(inst in arb_instance(5, 3)) {
            for d in inst.universe().elements().filter(|&d| is_hereditary(&inst, d)) {
                // A regular A whose images under Δ_A all lie in D must lie in D.
                let by_elements = inst.universe().elements().all(|a| {
                    !a.is_subset(inst.regular_top())
                        || !inst.delta(a).iter().all(|&l| inst.apply(l, a).is_subset(d))
                        || a.is_subset(d)
                });
                prop_assert_eq!(by_elements, is_saturated(&inst, d));
            }
        }

        #[test]
        fn gauge_pairs_are_sandwiched(inst in arb_instance(5, 3), shrink in 0u32..32) {
            let inst = inst.with_j_top(inst.regular_top() - e(shrink)).unwrap();
            let pairs = gauge_pairs(&inst);
            for p in &pairs {
                prop_assert!(is_hereditary(&inst, p.h_top) && is_j_saturated(&inst, p.h_top));
                prop_assert!((p.h_top | inst.j_top()).is_subset(p.s_top));
                prop_assert!(p.s_top.is_subset(bh_top(&inst, p.h_top)));
            }
            let mut dedup = pairs.clone();
            dedup.dedup();
            prop_assert_eq!(dedup.len(), pairs.len());
        }
    }
}

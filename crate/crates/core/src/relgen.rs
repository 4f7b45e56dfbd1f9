//! Turning a relative system `(B, L, θ, I_α; J)` into a generalized one
//! `(B′, L, θ′, I′_α)`.
//!
//! `B′` is the pair algebra `{(A, [B]_J) : [A]_{B_reg} = [B]_{B_reg}}`. Its
//! atoms are one diagonal copy of each atom of `B`, plus one defect atom
//! `(∅, [{a}]_J)` for each regular atom `a` outside `J`.

use std::fmt::Write;

use crate::bds::{build_instance, Instance, InstanceSpec};
use crate::boolcore::Element;
use crate::error::{Error, Result};
use crate::format::render_instance;
use crate::props;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AtomTag {
    Pair(usize),
    Defect(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeInstance {
    pub instance: Instance,
    /// Tag of each atom of `B′`, in its declaration order.
    pub tags: Vec<AtomTag>,
}

impl PrimeInstance {
    pub fn defect_count(&self) -> usize {
        self.tags.iter().filter(|t| matches!(t, AtomTag::Defect(_))).count()
    }

    /// The instance file, headed by comments naming each atom's origin.
    pub fn render(&self, base: &Instance) -> String {
        let mut out = String::new();
        for (i, tag) in self.tags.iter().enumerate() {
            let name = self.instance.universe().name(i);
            match *tag {
                AtomTag::Pair(a) => writeln!(out, "# {name} = pair {}", base.universe().name(a)).unwrap(),
                AtomTag::Defect(a) => writeln!(out, "# {name} = defect {}", base.universe().name(a)).unwrap(),
            }
        }
        out.push_str(&render_instance(&self.instance));
        out
    }
}

fn defect_name(names: &[String], atom: &str) -> String {
    let mut name = format!("d_{atom}");
    while names.iter().any(|n| n == &name) {
        name.push('_');
    }
    name
}

pub fn to_generalized(inst: &Instance) -> PrimeInstance {
    let n = inst.atom_count();
    let defects: Vec<usize> = (inst.regular_top() - inst.j_top()).atoms().collect();
    let mut names: Vec<String> = inst.universe().names().to_vec();
    let mut tags: Vec<AtomTag> = (0..n).map(AtomTag::Pair).collect();
    let mut defect_index = vec![usize::MAX; n];
    for &a in &defects {
        let name = defect_name(&names, inst.universe().name(a));
        defect_index[a] = names.len();
        names.push(name);
        tags.push(AtomTag::Defect(a));
    }
    // (A, [A]_J) as an element of B′.
    let lift = |e: Element| -> Element {
        let mut out = e;
        for a in e.atoms() {
            if defect_index[a] != usize::MAX {
                out.insert(defect_index[a]);
            }
        }
        out
    };
    let mut spec = InstanceSpec::new(&names, inst.labels());
    for l in 0..inst.label_count() {
        for a in 0..n {
            spec.images[l][a] = lift(inst.action(l).image(a));
        }
        spec.ideal_tops[l] = Some(lift(inst.ideal_top(l)));
    }
    let instance = build_instance(&spec).expect("the construction yields a valid instance");
    PrimeInstance { instance, tags }
}

/// Condition (L) for `B` and for `B′`, which are required to agree.
pub fn check_l_preservation(inst: &Instance) -> Result<(bool, bool)> {
    let base = props::find_cycle_no_exit(inst).is_none();
    let prime = props::find_cycle_no_exit(&to_generalized(inst).instance).is_none();
    if base != prime {
        return Err(Error::mismatch(
            "L preservation",
            format!("base={base} prime={prime}"),
        ));
    }
    Ok((base, prime))
}

/// Condition (L) for `B′` read off `B`: it fails exactly when `B` has a
/// cycle without exits through atoms of `J` only.
pub fn prime_condition_l(inst: &Instance) -> bool {
    (0..inst.atom_count()).all(|a| match props::cycle_at(inst, a) {
        Some(w) => w.trajectory.iter().any(|s| !s.is_subset(inst.j_top())),
        None => true,
    })
}

//! Full analysis of an instance, every route cross-checked, as canonical JSON.

use serde_json::{json, Map};
pub use serde_json::Value;

use crate::bds::Instance;
use crate::error::{Error, Result};
use crate::ideals::{self, LatticeMode, SimpleVerdict};
use crate::oracle;
use crate::props::{self, CycleWitness, TailDescriptor};
use crate::relgen;
use crate::topograph;

pub const SCHEMA_VERSION: u64 = 1;

/// Literal-definition oracles run only up to these sizes.
pub const ORACLE_ATOMS: usize = 6;
pub const TAIL_ORACLE_ATOMS: usize = 5;

fn agree(check: &str, pairs: &[(&str, bool)]) -> Result<bool> {
    let first = pairs[0].1;
    if pairs.iter().all(|p| p.1 == first) {
        return Ok(first);
    }
    let detail: Vec<String> = pairs.iter().map(|(k, v)| format!("{k}={v}")).collect();
    Err(Error::mismatch(check, detail.join(" ")))
}

/// Condition (L) by the cycle search, topological freeness and, for small
/// instances, the literal definition. The witness is revalidated.
pub fn verify_condition_l(inst: &Instance) -> Result<(bool, Option<CycleWitness>)> {
    let (holds, witness) = props::check_condition_l(inst);
    if let Some(w) = &witness {
        if !props::revalidate_cycle(inst, w) {
            return Err(Error::mismatch("Condition (L)", "cycle witness does not revalidate"));
        }
    }
    let free = topograph::is_topologically_free(&topograph::build_graph(inst));
    let mut routes = vec![("cycle-search", holds), ("topologically-free", free)];
    let n = inst.atom_count();
    if n <= ORACLE_ATOMS {
        routes.push(("definition", oracle::brute_condition_l(inst, 1 << n)));
    }
    agree("Condition (L)", &routes)?;
    Ok((holds, witness))
}

/// Condition (K) by all three routes.
pub fn verify_condition_k(inst: &Instance) -> Result<bool> {
    props::check_condition_k(inst)
}

/// Minimality by all three routes and, for small instances, both path characterizations
/// and the literal tail and lattice enumerations.
pub fn verify_minimal(inst: &Instance) -> Result<bool> {
    let minimal = ideals::is_minimal(inst)?;
    let n = inst.atom_count();
    if n <= ORACLE_ATOMS {
        let (four, five) = oracle::brute_minimality_45(inst)?;
        let lattice = oracle::brute_saturated_hereditary(inst);
        let trivial = lattice.iter().all(|t| t.is_empty() || *t == inst.full());
        agree(
            "minimality",
            &[("routes", minimal), ("paths-from-B", four), ("paths-from-C", five), ("definition", trivial)],
        )?;
    }
    if n <= TAIL_ORACLE_ATOMS && n > 0 {
        let tails = oracle::brute_maximal_tails(inst)?;
        agree(
            "minimality",
            &[("routes", minimal), ("tail-axioms", tails == [crate::Element::EMPTY])],
        )?;
    }
    Ok(minimal)
}

/// Simplicity by all routes, with (L) and minimality verified as above.
pub fn verify_simple(inst: &Instance) -> Result<SimpleVerdict> {
    let verdict = ideals::is_simple(inst)?;
    let (l, _) = verify_condition_l(inst)?;
    let minimal = verify_minimal(inst)?;
    agree("simplicity", &[("routes", verdict.simple), ("verified", l && minimal)])?;
    Ok(verdict)
}

/// Maximal tails, each confirmed against the axioms for small instances.
pub fn verify_tails(inst: &Instance) -> Result<Vec<TailDescriptor>> {
    let tails = props::enumerate_maximal_tails(inst);
    for t in &tails {
        props::is_cyclic_tail(inst, t)?;
    }
    if inst.atom_count() <= TAIL_ORACLE_ATOMS {
        let brute = oracle::brute_maximal_tails(inst)?;
        let mut ours: Vec<_> = tails.iter().map(|t| t.complement).collect();
        ours.sort_by_key(|e| e.bits());
        if ours != brute {
            return Err(Error::mismatch(
                "maximal tails",
                format!("enumerated {ours:?} literal {brute:?}"),
            ));
        }
    }
    Ok(tails)
}

/// Gauge pairs, counted against the element-level definitions for small instances.
pub fn verify_gauge_pairs(inst: &Instance) -> Result<Vec<ideals::GaugePair>> {
    let pairs = ideals::gauge_pairs(inst);
    if inst.atom_count() <= TAIL_ORACLE_ATOMS {
        let brute = oracle::brute_gauge_pairs(inst);
        if brute.len() != pairs.len()
            || !brute
                .iter()
                .all(|&(h, s)| pairs.iter().any(|p| p.h_top == h && p.s_top == s))
        {
            return Err(Error::mismatch(
                "gauge pairs",
                format!("computed {} literal {}", pairs.len(), brute.len()),
            ));
        }
    }
    Ok(pairs)
}

fn word(inst: &Instance, w: &crate::Word) -> Value {
    Value::String(inst.render_word(w))
}

fn atom(inst: &Instance, a: usize) -> Value {
    Value::String(inst.universe().name(a).to_string())
}

fn elem(inst: &Instance, e: crate::Element) -> Value {
    Value::String(inst.render(e))
}

fn tail_json(inst: &Instance, t: &TailDescriptor) -> Value {
    let mut m = Map::new();
    m.insert("complement".into(), elem(inst, t.complement));
    m.insert("cyclic".into(), Value::Bool(t.cyclic.is_some()));
    if let Some((c, beta)) = &t.cyclic {
        m.insert("base".into(), atom(inst, *c));
        m.insert("beta".into(), word(inst, beta));
    }
    json!({ "tail": Value::Object(m) })
}

/// A complete, cross-checked analysis. Keys are sorted and elements rendered
/// canonically, so equal instances give byte-identical text.
#[derive(Clone, Debug, PartialEq)]
pub struct AnalysisReport {
    pub value: Value,
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.value).expect("values serialize");
        s.push('\n');
        s
    }
}

pub fn analyze(inst: &Instance) -> Result<AnalysisReport> {
    let labels = inst.labels();
    let (l, cycle) = verify_condition_l(inst)?;
    let k = verify_condition_k(inst)?;
    let minimal = verify_minimal(inst)?;
    let simple = match verify_simple(inst) {
        Ok(v) => json!({ "value": v.simple, "explanation": v.explanation }),
        Err(e @ Error::RelativeJNotSupported { .. }) => json!({ "refused": e.to_string() }),
        Err(e) => return Err(e),
    };
    let tails = verify_tails(inst)?;
    let pairs = verify_gauge_pairs(inst)?;
    let sat = ideals::enumerate_lattice(inst, LatticeMode::Saturated);
    let jsat = ideals::enumerate_lattice(inst, LatticeMode::JSaturated);
    let lattice_json = |lat: &ideals::HereditarySaturatedLattice| -> Value {
        lat.entries
            .iter()
            .map(|e| {
                json!({
                    "top": elem(inst, e.top),
                    "hereditary": e.hereditary,
                    "saturated": e.saturated,
                    "jSaturated": e.j_saturated,
                })
            })
            .collect()
    };
    let graph = topograph::build_graph(inst);
    let loops = topograph::loops_without_entrances(&graph);
    let prime = relgen::to_generalized(inst);
    let prime_l = props::find_cycle_no_exit(&prime.instance).is_none();

    let mut witnesses = Map::new();
    if let Some(w) = &cycle {
        witnesses.insert(
            "cycle".into(),
            json!({ "word": word(inst, &w.word), "atom": atom(inst, w.atom) }),
        );
    }
    if let Some((c, beta)) = props::direct_k_failure(inst) {
        witnesses.insert("kFailure".into(), json!({ "base": atom(inst, c), "beta": word(inst, &beta) }));
    }
    if let Some(top) = ideals::nontrivial_saturated_top(inst) {
        witnesses.insert("saturatedIdeal".into(), elem(inst, top));
    }
    witnesses.insert("tails".into(), tails.iter().map(|t| tail_json(inst, t)).collect());

    let ideal_tops: Map<String, Value> = (0..inst.label_count())
        .map(|i| (labels[i].clone(), elem(inst, inst.ideal_top(i))))
        .collect();
    let value = json!({
        "schemaVersion": SCHEMA_VERSION,
        "instance": {
            "atoms": inst.universe().names(),
            "labels": labels,
            "idealTops": ideal_tops,
            "jTop": elem(inst, inst.j_top()),
            "regularTop": elem(inst, inst.regular_top()),
            "degenerate": inst.atom_count() == 0,
        },
        "verdicts": {
            "conditionL": l,
            "conditionK": k,
            "minimal": minimal,
            "simple": simple,
        },
        "witnesses": witnesses,
        "lattice": lattice_json(&sat),
        "jLattice": lattice_json(&jsat),
        "gaugePairs": pairs
            .iter()
            .map(|p| json!({ "H": elem(inst, p.h_top), "S": elem(inst, p.s_top) }))
            .collect::<Value>(),
        "counts": {
            "satHereditaryIdeals": sat.len(),
            "maximalTails": tails.len(),
            "cyclicMaximalTails": tails.iter().filter(|t| t.cyclic.is_some()).count(),
            "gaugePairs": pairs.len(),
        },
        "graph": {
            "vertices": graph.vertex_count,
            "edges": graph.edges.len(),
            "domR": graph.dom_r_size(),
            "loopsWithoutEntrances": loops.len(),
        },
        "bprime": {
            "atoms": prime.instance.atom_count(),
            "defects": prime.defect_count(),
            "conditionL": prime_l,
            "agreesWithBase": prime_l == l,
        },
    });
    Ok(AnalysisReport { value })
}

//! The partially defined topological graph of a finite instance.
//!
//! Vertices are atoms. Each label `α` contributes an edge `e^α_a` for every
//! atom `a ⊆ C_α`, with `d(e^α_a) = a` and `r(e^α_a) = f_α(a)` when `a` lies
//! in the range of `α`. So `r⁻¹(v)` lists the one-step successors of `v`.

use std::fmt::Write;

use crate::bds::Instance;
use crate::boolcore::Element;
use crate::error::{Error, Result};
use crate::props::{self, CycleWitness, TailDescriptor};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub label: usize,
    pub atom: usize,
    pub range: Option<usize>,
}

impl Edge {
    pub fn d(&self) -> usize {
        self.atom
    }

    pub fn r(&self) -> Option<usize> {
        self.range
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopGraph {
    pub vertex_count: usize,
    /// Sorted by label, then atom.
    pub edges: Vec<Edge>,
}

impl TopGraph {
    /// Edge indices with `r(e) = v`, in edge order.
    pub fn r_preimage(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&i| self.edges[i].range == Some(v))
            .collect()
    }

    pub fn find_edge(&self, label: usize, atom: usize) -> Option<usize> {
        self.edges
            .iter()
            .position(|e| e.label == label && e.atom == atom)
    }

    pub fn dom_r_size(&self) -> usize {
        self.edges.iter().filter(|e| e.range.is_some()).count()
    }
}

pub fn build_graph(inst: &Instance) -> TopGraph {
    let mut edges = Vec::new();
    for l in 0..inst.label_count() {
        let dual = inst.action(l).dual();
        for a in inst.ideal_top(l).atoms() {
            edges.push(Edge {
                label: l,
                atom: a,
                range: dual.get(a),
            });
        }
    }
    TopGraph {
        vertex_count: inst.atom_count(),
        edges,
    }
}

/// A loop `e_1 ⋯ e_n` listed from its smallest vertex `r(e_1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Loop {
    pub edges: Vec<usize>,
    pub vertices: Vec<usize>,
}

pub fn loops_without_entrances(g: &TopGraph) -> Vec<Loop> {
    let mut out = Vec::new();
    for v in 0..g.vertex_count {
        let mut edges = Vec::new();
        let mut vertices = Vec::new();
        let mut cur = v;
        loop {
            let pre = g.r_preimage(cur);
            if pre.len() != 1 || vertices.contains(&cur) {
                break;
            }
            vertices.push(cur);
            edges.push(pre[0]);
            cur = g.edges[pre[0]].atom;
            if cur == v {
                if vertices.iter().all(|&u| u >= v) {
                    out.push(Loop {
                        edges: edges.clone(),
                        vertices: vertices.clone(),
                    });
                }
                break;
            }
        }
    }
    out
}

pub fn is_topologically_free(g: &TopGraph) -> bool {
    loops_without_entrances(g).is_empty()
}

/// The edge path traced by a cycle witness: step `t` uses `e^{β_{t+1}}_{a_{t+1}}`.
pub fn cycle_path(g: &TopGraph, w: &CycleWitness) -> Option<Vec<usize>> {
    (0..w.word.len())
        .map(|t| {
            let next = w.trajectory[t + 1].first_atom()?;
            g.find_edge(w.word.letters()[t], next)
        })
        .collect()
}

/// Whether the edges form a closed path `r(e_1) → d(e_1) = r(e_2) → ⋯ → r(e_1)`.
pub fn is_loop(g: &TopGraph, path: &[usize]) -> bool {
    if path.is_empty() {
        return false;
    }
    let n = path.len();
    (0..n).all(|k| {
        let e = g.edges[path[k]];
        g.edges[path[(k + 1) % n]].range == Some(e.atom)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VertexClasses {
    pub sce: Element,
    pub fin: Element,
    pub rg: Element,
    pub sg: Element,
}

pub fn vertex_classes(g: &TopGraph) -> VertexClasses {
    let fin = Element::full(g.vertex_count);
    let sce = Element::from_atoms((0..g.vertex_count).filter(|&v| g.r_preimage(v).is_empty()));
    VertexClasses {
        sce,
        fin,
        rg: fin - sce,
        sg: sce,
    }
}

/// The vertices of the greedy negative orbit from `start`.
pub fn negative_orbit(g: &TopGraph, start: usize) -> Vec<usize> {
    let mut orbit = vec![start];
    let mut cur = start;
    loop {
        let Some(&e) = g.r_preimage(cur).first() else {
            return orbit;
        };
        cur = g.edges[e].atom;
        if orbit.contains(&cur) {
            return orbit;
        }
        orbit.push(cur);
    }
}

/// The maximal tail of the atoms that reach the negative orbit from `start`.
pub fn maximal_tail_from_orbit(inst: &Instance, g: &TopGraph, start: usize) -> Result<TailDescriptor> {
    let orbit = Element::from_atoms(negative_orbit(g, start));
    let complement = Element::from_atoms(
        (0..inst.atom_count())
            .filter(|&a| inst.forward_closure(Element::atom(a)).is_disjoint(orbit)),
    );
    if !props::is_maximal_tail(inst, complement) {
        return Err(Error::TailAxiomFailure {
            start: inst.universe().name(start).to_string(),
            complement: inst.render(complement),
        });
    }
    Ok(props::describe_tail(inst, complement))
}

/// Graphviz text, edges drawn from `d(e)` to `r(e)`; edges outside `dom(r)`
/// go to a dashed `∞` node.
pub fn to_dot(inst: &Instance, g: &TopGraph) -> String {
    let q = |s: &str| format!("\"{s}\"");
    let name = |v: usize| q(inst.universe().name(v));
    let mut out = String::from("digraph E {\n");
    for v in 0..g.vertex_count {
        writeln!(out, "  {};", name(v)).unwrap();
    }
    if g.edges.iter().any(|e| e.range.is_none()) {
        writeln!(out, "  \"∞\" [shape=point];").unwrap();
    }
    for e in &g.edges {
        let label = &inst.labels()[e.label];
        match e.range {
            Some(r) => writeln!(out, "  {} -> {} [label=\"{label}\"];", name(e.atom), name(r)).unwrap(),
            None => writeln!(out, "  {} -> \"∞\" [label=\"{label}\", style=dashed];", name(e.atom)).unwrap(),
        }
    }
    out.push_str("}\n");
    out
}

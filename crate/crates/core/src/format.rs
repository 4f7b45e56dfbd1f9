//! The line-oriented instance file format.
//!
//! ```text
//! atoms a b
//! labels x y
//! act x a = {a}
//! act y a = {b}
//! ideal y = {b}
//! J = {a}
//! ```

use crate::bds::{build_instance, Instance, InstanceSpec};
use crate::boolcore::{parse_element, AtomUniverse, Element};
use crate::error::{Error, ParseError};

fn at(line: usize, column: usize, kind: Error) -> ParseError {
    ParseError { line, column, kind }
}

fn column_of(raw: &str, piece: &str) -> usize {
    // Pieces are subslices of the raw line.
    piece.as_ptr() as usize - raw.as_ptr() as usize + 1
}

/// Parses and validates an instance file.
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut atoms: Option<(usize, AtomUniverse)> = None;
    let mut labels: Option<(usize, Vec<String>)> = None;
    let mut spec = InstanceSpec::default();
    // Line of the directive responsible for each later validation error.
    let mut act_lines: Vec<Vec<usize>> = Vec::new();
    let mut ideal_lines: Vec<usize> = Vec::new();
    let mut j_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let col = |piece: &str| column_of(raw, piece);
        let (keyword, rest) = match trimmed.find(char::is_whitespace) {
            Some(p) => (&trimmed[..p], trimmed[p..].trim_start()),
            None => (trimmed, ""),
        };
        match keyword {
            "atoms" => {
                if atoms.is_some() {
                    return Err(at(line, col(keyword), Error::MalformedSyntax(col(keyword))));
                }
                let names: Vec<&str> = rest.split_whitespace().collect();
                let universe = AtomUniverse::new(&names).map_err(|k| at(line, col(keyword), k))?;
                atoms = Some((line, universe));
            }
            "labels" => {
                if labels.is_some() || atoms.is_none() {
                    return Err(at(line, col(keyword), Error::MalformedSyntax(col(keyword))));
                }
                let mut names: Vec<String> = Vec::new();
                for name in rest.split_whitespace() {
                    if !crate::boolcore::is_identifier(name) {
                        return Err(at(line, col(name), Error::InvalidIdentifier(name.into())));
                    }
                    if names.iter().any(|n| n == name) {
                        return Err(at(line, col(name), Error::DuplicateLabel(name.into())));
                    }
                    names.push(name.to_string());
                }
                let n = atoms.as_ref().map_or(0, |a| a.1.len());
                spec.images = vec![vec![Element::EMPTY; n]; names.len()];
                spec.ideal_tops = vec![None; names.len()];
                act_lines = vec![vec![0; n]; names.len()];
                ideal_lines = vec![0; names.len()];
                labels = Some((line, names));
            }
            "act" | "ideal" | "J" => {
                let universe = match &atoms {
                    Some((_, u)) => u,
                    None => return Err(at(line, col(keyword), Error::MalformedSyntax(col(keyword)))),
                };
                let label_names = match (&labels, keyword) {
                    (Some((_, l)), _) => l.as_slice(),
                    (None, "J") => &[],
                    (None, _) => return Err(at(line, col(keyword), Error::MalformedSyntax(col(keyword)))),
                };
                let eq = rest
                    .find('=')
                    .ok_or_else(|| at(line, col(rest), Error::MalformedSyntax(col(rest))))?;
                let lhs: Vec<&str> = rest[..eq].split_whitespace().collect();
                let rhs = rest[eq + 1..].trim();
                let elem = parse_element(universe, rhs).map_err(|k| {
                    let k = match k {
                        Error::MalformedSyntax(off) => Error::MalformedSyntax(col(rhs) + off),
                        other => other,
                    };
                    at(line, col(rhs), k)
                })?;
                let label_of = |name: &str| {
                    label_names
                        .iter()
                        .position(|l| l == name)
                        .ok_or_else(|| at(line, col(name), Error::UnknownLabel(name.into())))
                };
                match (keyword, lhs.as_slice()) {
                    ("act", [label, atom]) => {
                        let l = label_of(label)?;
                        let a = universe
                            .lookup(atom)
                            .ok_or_else(|| at(line, col(atom), Error::UnknownAtom(atom.to_string())))?;
                        spec.images[l][a] = elem;
                        act_lines[l][a] = line;
                    }
                    ("ideal", [label]) => {
                        let l = label_of(label)?;
                        spec.ideal_tops[l] = Some(elem);
                        ideal_lines[l] = line;
                    }
                    ("J", []) => {
                        spec.j_top = Some(elem);
                        j_line = line;
                    }
                    _ => return Err(at(line, col(rest), Error::MalformedSyntax(col(rest)))),
                }
            }
            _ => return Err(at(line, col(keyword), Error::MalformedSyntax(col(keyword)))),
        }
    }

    let universe = match atoms {
        Some((_, u)) => u,
        None => return Err(at(1, 1, Error::MalformedSyntax(0))),
    };
    spec.atoms = universe.names().to_vec();
    if let Some((_, l)) = labels {
        spec.labels = l;
    }
    build_instance(&spec).map_err(|kind| {
        let line = match &kind {
            Error::NotDisjoint { atom, first, second } => {
                let l = spec
                    .labels
                    .iter()
                    .enumerate()
                    .position(|(li, _)| {
                        let a1 = universe.lookup(first).unwrap();
                        let a2 = universe.lookup(second).unwrap();
                        let b = universe.lookup(atom).unwrap();
                        spec.images[li][a1].contains(b) && spec.images[li][a2].contains(b)
                    })
                    .unwrap_or(0);
                let a2 = universe.lookup(second).unwrap();
                act_lines.get(l).and_then(|v| v.get(a2)).copied().unwrap_or(0)
            }
            Error::IdealTooSmall(name) => spec
                .labels
                .iter()
                .position(|l| l == name)
                .map_or(0, |l| ideal_lines[l]),
            Error::JNotRegular(_) => j_line,
            _ => 0,
        };
        at(line, 1, kind)
    })
}

/// Renders an instance so that parsing the text gives the same instance back.
/// Ideal tops and `J` are always written out.
pub fn render_instance(inst: &Instance) -> String {
    let u = inst.universe();
    let mut out = String::new();
    out.push_str("atoms");
    for name in u.names() {
        out.push(' ');
        out.push_str(name);
    }
    out.push('\n');
    out.push_str("labels");
    for name in inst.labels() {
        out.push(' ');
        out.push_str(name);
    }
    out.push('\n');
    for (l, label) in inst.labels().iter().enumerate() {
        for a in 0..u.len() {
            let img = inst.action(l).image(a);
            if !img.is_empty() {
                out.push_str(&format!("act {label} {} = {}\n", u.name(a), u.render(img)));
            }
        }
    }
    for (l, label) in inst.labels().iter().enumerate() {
        out.push_str(&format!("ideal {label} = {}\n", u.render(inst.ideal_top(l))));
    }
    out.push_str(&format!("J = {}\n", u.render(inst.j_top())));
    out
}

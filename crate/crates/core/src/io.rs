//! Text formats: complexes, groups, matchings, category dumps and complex-of-groups dumps.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::action::{action_from_vertex_perms, LpAction, QuotientData, SimplicialAction};
use crate::cog::{CogMorphismToConstant, ComplexOfGroups};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::group::{format_cycles, group_from_generators, parse_cycles, FiniteGroup, Subgroup};
use crate::lp::{LpCategory, LpCategoryBuilder};
use crate::morse::Matching;

/// Non-blank, non-comment lines with their 1-based numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn keyword<'a>(line: usize, l: &'a str, kw: &str) -> Result<&'a str> {
    match l.split_once(char::is_whitespace) {
        Some((k, rest)) if k == kw => Ok(rest.trim()),
        _ => Err(Error::parse(line, format!("expected '{kw} ...', found '{l}'"))),
    }
}

/// Lines `simplex v0 v1 ... vk` listing maximal simplices.
pub fn parse_complex(text: &str) -> Result<SimplicialComplex> {
    let mut maximal = Vec::new();
    for (n, l) in lines(text) {
        let rest = keyword(n, l, "simplex")?;
        let vs: Vec<&str> = rest.split_whitespace().collect();
        if vs.is_empty() {
            return Err(Error::parse(n, "simplex without vertices"));
        }
        maximal.push(vs);
    }
    if maximal.is_empty() {
        return Err(Error::parse(0, "complex file lists no simplices"));
    }
    SimplicialComplex::from_maximal(&maximal).map_err(|e| Error::parse(0, e.to_string()))
}

pub fn write_complex(x: &SimplicialComplex) -> String {
    let mut out = String::new();
    for s in x.maximal_simplices() {
        writeln!(out, "simplex {}", x.vertex_names(s).join(" ")).unwrap();
    }
    out
}

/// Lines `gen <name> = <cycles>` on the vertex names of `x`.
pub fn parse_group(text: &str, x: &SimplicialComplex) -> Result<FiniteGroup> {
    let index: HashMap<String, usize> = x.vertices().iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
    let mut gens = Vec::new();
    for (n, l) in lines(text) {
        let rest = keyword(n, l, "gen")?;
        let (name, cycles) = rest
            .split_once('=')
            .ok_or_else(|| Error::parse(n, "expected 'gen <name> = <cycles>'"))?;
        let name = name.trim();
        if name.is_empty() || name.contains(char::is_whitespace) {
            return Err(Error::parse(n, format!("bad generator name '{name}'")));
        }
        let perm = parse_cycles(cycles, &index, x.vertices().len()).map_err(|e| Error::parse(n, e))?;
        gens.push((name.to_string(), perm));
    }
    group_from_generators(x.vertices().len(), &gens)
}

pub fn write_group(g: &FiniteGroup, x: &SimplicialComplex) -> String {
    let mut out = String::new();
    for (name, e) in g.generators() {
        writeln!(out, "gen {name} = {}", format_cycles(g.perm(*e), x.vertices())).unwrap();
    }
    out
}

/// Reads a complex and a group acting on it.
pub fn load_action(complex: &str, group: Option<&str>) -> Result<SimplicialAction> {
    let x = Arc::new(parse_complex(complex)?);
    match group {
        None => Ok(SimplicialAction::trivial(x)),
        Some(text) => {
            let g = Arc::new(parse_group(text, &x)?);
            action_from_vertex_perms(x, g)
        }
    }
}

/// Lines `pair <lower vertices> -> <upper vertices>`.
pub fn parse_matching(text: &str, x: &SimplicialComplex) -> Result<Matching> {
    let mut pairs = Vec::new();
    for (n, l) in lines(text) {
        let rest = keyword(n, l, "pair")?;
        let (lower, upper) = rest
            .split_once("->")
            .ok_or_else(|| Error::parse(n, "expected 'pair <lower> -> <upper>'"))?;
        let find = |names: &str| {
            let vs: Vec<&str> = names.split_whitespace().collect();
            x.find_named(&vs).ok_or_else(|| Error::parse(n, format!("'{}' is not a simplex", names.trim())))
        };
        pairs.push((find(upper)?, find(lower)?));
    }
    Ok(Matching::new(pairs))
}

pub fn write_matching(m: &Matching, x: &SimplicialComplex) -> String {
    let mut out = String::new();
    for &(u, l) in &m.pairs {
        writeln!(out, "pair {} -> {}", x.vertex_names(l).join(" "), x.vertex_names(u).join(" ")).unwrap();
    }
    out
}

/// `object`, `mor`, `le` and `comp` lines. Identities are implicit.
pub fn dump_category(c: &LpCategory) -> String {
    let mut out = String::new();
    for x in c.objects() {
        writeln!(out, "object {x} {}", c.object_label(x)).unwrap();
    }
    for f in 0..c.non_identity_count() {
        let m = c.morphism(f);
        writeln!(out, "mor {f} {} -> {} {}", m.src, m.dst, m.label).unwrap();
    }
    for (f, g) in c.strict_relations() {
        writeln!(out, "le {f} {g}").unwrap();
    }
    for (f, g) in c.composable_pairs() {
        if !c.is_identity(f) && !c.is_identity(g) {
            writeln!(out, "comp {f} {g} = {}", c.compose(f, g).unwrap()).unwrap();
        }
    }
    out
}

fn number(line: usize, s: &str) -> Result<usize> {
    s.parse().map_err(|_| Error::parse(line, format!("expected a number, found '{s}'")))
}

/// Inverse of [`dump_category`].
pub fn load_category(text: &str) -> Result<LpCategory> {
    let mut b = LpCategoryBuilder::new();
    for (n, l) in lines(text) {
        let words: Vec<&str> = l.split_whitespace().collect();
        match words.as_slice() {
            ["object", id, label] => {
                if number(n, id)? != b.n_objects() {
                    return Err(Error::parse(n, "object ids must be consecutive"));
                }
                b.add_object(label);
            }
            ["mor", id, src, "->", dst, label] => {
                if number(n, id)? != b.n_morphisms() {
                    return Err(Error::parse(n, "morphism ids must be consecutive"));
                }
                let (s, d) = (number(n, src)?, number(n, dst)?);
                if s >= b.n_objects() || d >= b.n_objects() {
                    return Err(Error::parse(n, "morphism names an unknown object"));
                }
                b.add_morphism(s, d, label);
            }
            ["le", f, g] => b.add_le(number(n, f)?, number(n, g)?),
            ["comp", f, g, "=", h] => b.set_composite(number(n, f)?, number(n, g)?, number(n, h)?),
            _ => return Err(Error::parse(n, format!("unrecognised line '{l}'"))),
        }
    }
    b.build()
}

fn subgroup_names(g: &FiniteGroup, h: &Subgroup) -> String {
    h.members().iter().map(|&e| g.name(e)).collect::<Vec<_>>().join(" ")
}

/// `grp`, `phi`, `hom`, `twist`, `order` and `tau` lines.
pub fn dump_cog(f: &ComplexOfGroups, phi: &CogMorphismToConstant) -> String {
    let g = &f.group;
    let c = &f.base;
    let mut out = String::new();
    for x in c.objects() {
        writeln!(out, "grp {x} : {}", subgroup_names(g, &f.groups[x])).unwrap();
        if phi.phi[x].pairs().any(|(k, v)| k != v) {
            writeln!(out, "phi {x} : map {}", pairs(g, phi.phi[x].pairs())).unwrap();
        }
    }
    for m in c.morphism_ids() {
        let t = phi.tau[m];
        if f.homs[m].pairs().all(|(k, v)| g.conj(t, k) == v) {
            writeln!(out, "hom {m} : conj {}", g.name(t)).unwrap();
        } else {
            writeln!(out, "hom {m} : map {}", pairs(g, f.homs[m].pairs())).unwrap();
        }
    }
    for (&(a, b), &t) in &f.pair_twist {
        writeln!(out, "twist {a},{b} = {}", g.name(t)).unwrap();
    }
    for (&(a, b), &t) in &f.order_twist {
        writeln!(out, "order {a},{b} = {}", g.name(t)).unwrap();
    }
    for m in c.morphism_ids() {
        writeln!(out, "tau {m} = {}", g.name(phi.tau[m])).unwrap();
    }
    out
}

fn pairs(g: &FiniteGroup, it: impl Iterator<Item = (usize, usize)>) -> String {
    it.map(|(k, v)| format!("{}->{}", g.name(k), g.name(v))).collect::<Vec<_>>().join(" ")
}

/// `orbit <rep> : <members>` per quotient object.
pub fn orbit_table(q: &QuotientData, c: &LpCategory) -> String {
    let mut out = String::new();
    for o in &q.object_orbits {
        let names: Vec<&str> = o.iter().map(|&x| c.object_label(x)).collect();
        writeln!(out, "orbit {} : {}", names[0], names.join(" ")).unwrap();
    }
    out
}

/// `stab <object> : <elements>` per object.
pub fn stabilizer_table(a: &LpAction) -> String {
    let mut out = String::new();
    for x in a.category.objects() {
        writeln!(out, "stab {} : {}", a.category.object_label(x), subgroup_names(&a.group, &a.stabilizer(x))).unwrap();
    }
    out
}

/// `act <element> : <object images>` per group element.
pub fn action_table(a: &LpAction) -> String {
    let mut out = String::new();
    for e in a.group.elements() {
        let images: Vec<String> = a.objects[e].iter().map(usize::to_string).collect();
        writeln!(out, "act {} : {}", a.group.name(e), images.join(" ")).unwrap();
    }
    out
}

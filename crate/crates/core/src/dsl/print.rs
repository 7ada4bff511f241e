use std::fmt::Write;
use std::sync::Arc;

use crate::ncalg::{render, Element, Letter, Presentation};

/// Canonical text of a presentation; parsing it back yields an equal
/// presentation.
pub fn print_presentation(p: &Presentation) -> String {
    let arc = Arc::new(p.clone());
    let one = [arc.clone()];
    let two = [arc.clone(), arc];
    let mut s = String::new();
    let _ = writeln!(s, "presentation {} {{", p.name);
    if !p.params.is_empty() {
        let names: Vec<&str> = p.params.iter().map(|x| x.name()).collect();
        let _ = writeln!(s, "  params: {};", names.join(" "));
    }
    let fams: Vec<String> = p
        .families
        .iter()
        .map(|f| {
            let mut t = f.name.clone();
            if !f.dims.is_empty() {
                let d: Vec<String> = f.dims.iter().map(|x| x.to_string()).collect();
                t += &format!("[{}]", d.join(","));
            }
            if f.grouplike {
                t += " grouplike";
            }
            t
        })
        .collect();
    if !fams.is_empty() {
        let _ = writeln!(s, "  generators: {};", fams.join(" "));
        let mut order: Vec<&str> = Vec::new();
        for g in &p.gens {
            let name = p.families[g.family].name.as_str();
            if order.last() != Some(&name) {
                order.push(name);
            }
        }
        let _ = writeln!(s, "  order: {};", order.join(" "));
    }
    for ((hi, lo), rhs) in p.rules() {
        let lhs = Element::term(vec![Letter::new(0, *hi), Letter::new(0, *lo)], crate::scalars::Poly::one());
        let _ = writeln!(s, "  relation {} = {};", render(&lhs, &one), render(rhs, &one));
    }
    for (g, v) in &p.coproduct {
        let _ = writeln!(s, "  coproduct {} = {};", p.gens[*g as usize].name, render(v, &two));
    }
    for (g, v) in &p.counit {
        let _ = writeln!(s, "  counit {} = {};", p.gens[*g as usize].name, render(&Element::scalar(v.clone()), &one));
    }
    for (g, v) in &p.antipode {
        let _ = writeln!(s, "  antipode {} = {};", p.gens[*g as usize].name, render(v, &one));
    }
    for (g, v) in &p.expansions {
        let _ = writeln!(s, "  expansion {} = {};", p.gens[*g as usize].name, render(v, &one));
    }
    for o in &p.orthogonal {
        let _ = writeln!(s, "  orthogonal {o};");
    }
    s.push_str("}\n");
    s
}

//! Line-oriented netlist text.
//!
//! ```text
//! # comment
//! NODE in
//! NODE out
//! R  RB  in  out 100ohm
//! L  L1  in  out 0.5nH
//! C  C1  out 0   110fF
//! TL T1  in  out 35.355ohm 90 8GHz
//! PORT 1 in 50ohm
//! ```
//!
//! Keywords and unit suffixes are case-insensitive. Bare numbers are in
//! base units, except the line design frequency which defaults to GHz.
//! `0` (or `gnd`) is ground and is never declared. A port may name a
//! reference node after its impedance; it defaults to ground.

use std::collections::HashMap;
use std::fmt::Write as _;

use qadpa_core::circuit::{is_ground, ElementKind, Netlist, Port, GROUND};
use qadpa_core::rf::Frequency;
use qadpa_core::NetlistError;

use crate::error::{CliError, CliResult};
use crate::units::{format_scaled, parse_value, Dim};

/// Where each declaration came from, for diagnostics.
#[derive(Debug, Default)]
struct Lines {
    nodes: HashMap<String, usize>,
    elements: HashMap<String, usize>,
    ports: HashMap<usize, usize>,
    last: usize,
}

impl Lines {
    fn of(&self, e: &NetlistError) -> usize {
        let found = match e {
            NetlistError::UndeclaredNode { element, .. } | NetlistError::BadValue { element, .. } => {
                self.elements.get(element)
            }
            NetlistError::DuplicateElement(name) => self.elements.get(name),
            NetlistError::DuplicateNode(name) | NetlistError::Floating(name) => self.nodes.get(name),
            NetlistError::UndeclaredPortNode { port, .. }
            | NetlistError::PortReference { port }
            | NetlistError::PortShorted { port }
            | NetlistError::Disconnected(port) => self.ports.get(port),
            NetlistError::PortNumbering(_) => self.ports.values().max(),
            NetlistError::NoPorts => None,
        };
        found.copied().unwrap_or(self.last)
    }
}

fn value(tok: &str, dim: Dim, default_exp: i32, line: usize) -> CliResult<f64> {
    parse_value(tok, dim, default_exp).map_err(|m| CliError::parse(line, m))
}

/// Parses and validates a netlist. Every error carries a 1-based line.
pub fn parse_netlist(text: &str) -> CliResult<Netlist<f64>> {
    let mut n = Netlist::new();
    let mut lines = Lines::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        lines.last = line;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let tok: Vec<&str> = body.split_whitespace().collect();
        let arity = |k: usize| -> CliResult<()> {
            if tok.len() == k {
                Ok(())
            } else {
                Err(CliError::parse(line, format!("`{}` expects {} fields, found {}", tok[0], k - 1, tok.len() - 1)))
            }
        };
        let kw = tok[0].to_ascii_uppercase();
        match kw.as_str() {
            "NODE" => {
                arity(2)?;
                if is_ground(tok[1]) {
                    return Err(CliError::parse(line, "ground is implicit and cannot be declared"));
                }
                if lines.nodes.insert(tok[1].to_string(), line).is_some() {
                    return Err(CliError::parse(line, format!("node `{}` declared twice", tok[1])));
                }
                n.add_node(tok[1]);
            }
            "R" | "L" | "C" => {
                arity(5)?;
                let kind = match kw.as_str() {
                    "R" => ElementKind::Resistor(value(tok[4], Dim::Resistance, 0, line)?),
                    "L" => ElementKind::Inductor(value(tok[4], Dim::Inductance, 0, line)?),
                    _ => ElementKind::Capacitor(value(tok[4], Dim::Capacitance, 0, line)?),
                };
                add_element(&mut n, &mut lines, line, tok[1], kind, tok[2], tok[3])?;
            }
            "TL" => {
                arity(7)?;
                let z0 = value(tok[4], Dim::Resistance, 0, line)?;
                let theta0_deg: f64 = tok[5]
                    .parse()
                    .map_err(|_| CliError::parse(line, format!("`{}` is not an angle in degrees", tok[5])))?;
                let f0 = Frequency::new(value(tok[6], Dim::Frequency, 9, line)?)
                    .map_err(|e| CliError::parse(line, e.to_string()))?;
                add_element(&mut n, &mut lines, line, tok[1], ElementKind::TLine { z0, theta0_deg, f0 }, tok[2], tok[3])?;
            }
            "PORT" => {
                if !(4..=5).contains(&tok.len()) {
                    return Err(CliError::parse(line, "`PORT` expects <n> <node> <zref> [<reference node>]"));
                }
                let number: usize = tok[1]
                    .parse()
                    .map_err(|_| CliError::parse(line, format!("`{}` is not a port number", tok[1])))?;
                if lines.ports.insert(number, line).is_some() {
                    return Err(CliError::parse(line, format!("port {number} defined twice")));
                }
                let z_ref = value(tok[3], Dim::Resistance, 0, line)?;
                let reference = tok.get(4).copied().unwrap_or(GROUND).to_string();
                n.push_port(Port { number, node: tok[2].to_string(), reference, z_ref });
            }
            _ => return Err(CliError::parse(line, format!("unknown statement `{}`", tok[0]))),
        }
    }
    n.validate().map_err(|e| CliError::parse(lines.of(&e), e.to_string()))?;
    Ok(n)
}

fn add_element(
    n: &mut Netlist<f64>,
    lines: &mut Lines,
    line: usize,
    name: &str,
    kind: ElementKind<f64>,
    n1: &str,
    n2: &str,
) -> CliResult<()> {
    if lines.elements.insert(name.to_string(), line).is_some() {
        return Err(CliError::parse(line, format!("element `{name}` defined twice")));
    }
    n.add_element(name, kind, n1, n2);
    Ok(())
}

/// Canonical text: declarations, then elements, then ports in number order.
pub fn write_netlist(n: &Netlist<f64>, header: &str) -> String {
    let mut out = String::new();
    for h in header.lines() {
        let _ = writeln!(out, "# {h}");
    }
    for node in n.nodes() {
        let _ = writeln!(out, "NODE {node}");
    }
    for e in n.elements() {
        let (kw, val) = match e.kind {
            ElementKind::Resistor(r) => ("R", format!("{}ohm", format_scaled(r, 0))),
            ElementKind::Inductor(l) => ("L", format!("{}nH", format_scaled(l, -9))),
            ElementKind::Capacitor(c) if c < 1e-12 => ("C", format!("{}fF", format_scaled(c, -15))),
            ElementKind::Capacitor(c) => ("C", format!("{}pF", format_scaled(c, -12))),
            ElementKind::TLine { z0, theta0_deg, f0 } => (
                "TL",
                format!("{}ohm {} {}GHz", format_scaled(z0, 0), format_scaled(theta0_deg, 0), format_scaled(f0.hz(), 9)),
            ),
        };
        let _ = writeln!(out, "{kw} {} {} {} {val}", e.name, e.n1, e.n2);
    }
    for p in n.ports() {
        let _ = write!(out, "PORT {} {} {}ohm", p.number, p.node, format_scaled(p.z_ref, 0));
        if !is_ground(&p.reference) {
            let _ = write!(out, " {}", p.reference);
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const DIVIDER: &str = "\
# two quarter-wave arms
NODE in
NODE a
NODE b
TL T1 in a 70.71067811865476ohm 90 8GHz
TL T2 in b 70.71067811865476ohm 90 8
R RB a b 100ohm
C CB a 0 110fF
l LX b gnd 0.4974nh
PORT 1 in 50ohm
PORT 2 a 50
PORT 3 b 50ohm
";

    #[test]
    fn parse_and_round_trip() {
        let n = parse_netlist(DIVIDER).unwrap();
        assert_eq!(n.nodes().len(), 3);
        assert_eq!(n.elements().len(), 5);
        assert_eq!(n.ports().len(), 3);
        let text = write_netlist(&n, "round trip");
        let again = parse_netlist(&text).unwrap();
        assert_eq!(n, again);
        assert_eq!(write_netlist(&again, "round trip"), text);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            (DIVIDER.replace("NODE b\n", ""), 5),
            (DIVIDER.replace("PORT 2 a 50", "PORT 2 zz 50"), 11),
            (DIVIDER.replace("100ohm", "100nH"), 7),
            (DIVIDER.replace("PORT 3 b 50ohm", "PORT 4 b 50ohm"), 12),
            (DIVIDER.replace("R RB", "Q RB"), 7),
            (DIVIDER.replace("NODE a\n", "NODE a\nNODE a\n"), 4),
            (DIVIDER.replace("PORT 2 a 50", "PORT 2 a 0"), 11),
        ];
        for (text, line) in cases {
            match parse_netlist(&text) {
                Err(CliError::Parse { line: l, msg }) => assert_eq!(l, line, "{msg}"),
                other => panic!("expected parse error, got {other:?}"),
            }
        }
    }

    #[test]
    fn floating_node_is_reported() {
        let text = "NODE a\nNODE b\nNODE c\nR R1 a b 10\nPORT 1 a 50\n";
        match parse_netlist(text) {
            Err(CliError::Parse { line, .. }) => assert!(line == 2 || line == 3),
            other => panic!("{other:?}"),
        }
    }
}

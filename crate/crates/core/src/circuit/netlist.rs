use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::NetlistError;
use crate::rf::Frequency;
use crate::scalar::Real;

/// Canonical name of the ground node. `gnd` (any case) is accepted as an alias.
pub const GROUND: &str = "0";

pub fn is_ground(name: &str) -> bool {
    name == GROUND || name.eq_ignore_ascii_case("gnd")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ElementKind<T> {
    Resistor(T),
    Inductor(T),
    Capacitor(T),
    /// Ground-referenced ideal line between two nodes.
    TLine { z0: T, theta0_deg: T, f0: Frequency<T> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetElement<T> {
    pub name: String,
    pub kind: ElementKind<T>,
    pub n1: String,
    pub n2: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Port<T> {
    /// 1-based port number.
    pub number: usize,
    pub node: String,
    pub reference: String,
    pub z_ref: T,
}

/// Node/element graph with ordered ports.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Netlist<T> {
    nodes: Vec<String>,
    elements: Vec<NetElement<T>>,
    ports: Vec<Port<T>>,
}

impl<T: Real> Netlist<T> {
    pub fn new() -> Self {
        Self { nodes: Vec::new(), elements: Vec::new(), ports: Vec::new() }
    }

    pub fn add_node(&mut self, name: impl Into<String>) -> &mut Self {
        self.nodes.push(name.into());
        self
    }

    pub fn add_element(
        &mut self,
        name: impl Into<String>,
        kind: ElementKind<T>,
        n1: impl Into<String>,
        n2: impl Into<String>,
    ) -> &mut Self {
        self.elements.push(NetElement { name: name.into(), kind, n1: n1.into(), n2: n2.into() });
        self
    }

    /// Adds a ground-referenced port numbered after the existing ones.
    pub fn add_port(&mut self, node: impl Into<String>, z_ref: T) -> &mut Self {
        let number = self.ports.len() + 1;
        self.ports.push(Port { number, node: node.into(), reference: GROUND.into(), z_ref });
        self
    }

    pub fn push_port(&mut self, port: Port<T>) -> &mut Self {
        self.ports.push(port);
        self
    }

    /// Terminates every port in `z_ref`.
    pub fn set_port_impedance(&mut self, z_ref: T) -> &mut Self {
        self.ports.iter_mut().for_each(|p| p.z_ref = z_ref);
        self
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn elements(&self) -> &[NetElement<T>] {
        &self.elements
    }

    pub fn elements_mut(&mut self) -> &mut Vec<NetElement<T>> {
        &mut self.elements
    }

    /// Ports sorted by number.
    pub fn ports(&self) -> Vec<&Port<T>> {
        let mut p: Vec<_> = self.ports.iter().collect();
        p.sort_by_key(|p| p.number);
        p
    }

    /// Matrix row of a node; `None` for ground.
    pub(crate) fn node_index(&self) -> HashMap<&str, usize> {
        self.nodes.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect()
    }

    pub fn validate(&self) -> Result<(), NetlistError> {
        let mut declared = HashSet::new();
        for n in &self.nodes {
            if is_ground(n) || !declared.insert(n.as_str()) {
                return Err(NetlistError::DuplicateNode(n.clone()));
            }
        }
        let known = |n: &str| is_ground(n) || declared.contains(n);

        let mut names = HashSet::new();
        for e in &self.elements {
            if !names.insert(e.name.as_str()) {
                return Err(NetlistError::DuplicateElement(e.name.clone()));
            }
            for n in [&e.n1, &e.n2] {
                if !known(n) {
                    return Err(NetlistError::UndeclaredNode { element: e.name.clone(), node: n.clone() });
                }
            }
            check_value(e)?;
        }

        if self.ports.is_empty() {
            return Err(NetlistError::NoPorts);
        }
        let mut numbers: Vec<usize> = self.ports.iter().map(|p| p.number).collect();
        numbers.sort_unstable();
        if numbers.iter().enumerate().any(|(i, &n)| n != i + 1) {
            return Err(NetlistError::PortNumbering(numbers));
        }
        for p in &self.ports {
            for n in [&p.node, &p.reference] {
                if !known(n) {
                    return Err(NetlistError::UndeclaredPortNode { port: p.number, node: n.clone() });
                }
            }
            if !(p.z_ref > T::zero() && p.z_ref.is_finite()) {
                return Err(NetlistError::PortReference { port: p.number });
            }
            if same_node(&p.node, &p.reference) {
                return Err(NetlistError::PortShorted { port: p.number });
            }
            let touched = self.elements.iter().any(|e| same_node(&e.n1, &p.node) || same_node(&e.n2, &p.node));
            if !touched {
                return Err(NetlistError::Disconnected(p.number));
            }
        }

        // Every node needs a path to ground through elements, line returns or
        // port terminations; otherwise the nodal matrix is singular.
        let idx = self.node_index();
        let slot = |n: &str| if is_ground(n) { 0 } else { idx[n] + 1 };
        let mut uf = UnionFind::new(self.nodes.len() + 1);
        for e in &self.elements {
            uf.union(slot(&e.n1), slot(&e.n2));
            if matches!(e.kind, ElementKind::TLine { .. }) {
                uf.union(slot(&e.n1), 0);
            }
        }
        for p in &self.ports {
            uf.union(slot(&p.node), slot(&p.reference));
        }
        let ground = uf.find(0);
        if let Some(n) = self.nodes.iter().find(|n| uf.find(slot(n)) != ground) {
            let island = uf.find(slot(n));
            return Err(match self.ports.iter().find(|p| uf.find(slot(&p.node)) == island) {
                Some(p) => NetlistError::Disconnected(p.number),
                None => NetlistError::Floating(n.clone()),
            });
        }
        Ok(())
    }
}

fn same_node(a: &str, b: &str) -> bool {
    a == b || (is_ground(a) && is_ground(b))
}

fn check_value<T: Real>(e: &NetElement<T>) -> Result<(), NetlistError> {
    let bad = |reason: &str| NetlistError::BadValue { element: e.name.clone(), reason: reason.into() };
    let pos = |v: T| v > T::zero() && v.is_finite();
    match e.kind {
        ElementKind::Resistor(v) | ElementKind::Inductor(v) | ElementKind::Capacitor(v) => {
            if !pos(v) {
                return Err(bad("value must be positive and finite"));
            }
        }
        ElementKind::TLine { z0, theta0_deg, .. } => {
            if !pos(z0) {
                return Err(bad("line impedance must be positive"));
            }
            if !pos(theta0_deg) {
                return Err(bad("electrical length must be positive"));
            }
        }
    }
    if same_node(&e.n1, &e.n2) {
        return Err(bad("both terminals on the same node"));
    }
    Ok(())
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }
}

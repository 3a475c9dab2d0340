//! Random ladder networks built both as element chains and as netlists.

#![allow(dead_code)]

use qadpa_core::circuit::{ElementKind, Netlist, GROUND};
use qadpa_core::rf::{Element, Frequency, TLineSection};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub struct Chain {
    pub elements: Vec<Element<f64>>,
    pub netlist: Netlist<f64>,
}

pub fn random_chain(rng: &mut ChaCha8Rng, f0: Frequency<f64>) -> Chain {
    let len = rng.gen_range(1..=6);
    let mut elements = Vec::with_capacity(len);
    let mut n = Netlist::new();
    let mut node = 0usize;
    n.add_node("n0");
    for k in 0..len {
        let choice = rng.gen_range(0..7);
        let r = rng.gen_range(1.0..200.0);
        let l = rng.gen_range(0.1e-9..5e-9);
        let c = rng.gen_range(0.05e-12..5e-12);
        let here = format!("n{node}");
        let name = format!("E{k}");
        let mut series = |n: &mut Netlist<f64>, kind| {
            node += 1;
            let next = format!("n{node}");
            n.add_node(next.clone()).add_element(name.clone(), kind, here.clone(), next);
        };
        match choice {
            0 => {
                elements.push(Element::SeriesResistor(r));
                series(&mut n, ElementKind::Resistor(r));
            }
            1 => {
                elements.push(Element::SeriesInductor(l));
                series(&mut n, ElementKind::Inductor(l));
            }
            2 => {
                elements.push(Element::SeriesCapacitor(c));
                series(&mut n, ElementKind::Capacitor(c));
            }
            3 => {
                let z0 = rng.gen_range(15.0..110.0);
                let theta = rng.gen_range(10.0..130.0);
                elements.push(Element::Line(TLineSection::new(z0, theta, f0).unwrap()));
                series(&mut n, ElementKind::TLine { z0, theta0_deg: theta, f0 });
            }
            4 => {
                elements.push(Element::ShuntResistor(r));
                n.add_element(name, ElementKind::Resistor(r), here, GROUND);
            }
            5 => {
                elements.push(Element::ShuntInductor(l));
                n.add_element(name, ElementKind::Inductor(l), here, GROUND);
            }
            _ => {
                elements.push(Element::ShuntCapacitor(c));
                n.add_element(name, ElementKind::Capacitor(c), here, GROUND);
            }
        }
    }
    if node == 0 {
        // Two ports need two nodes; a short line keeps the cascade honest.
        let sec = TLineSection::new(50.0, 5.0, f0).unwrap();
        elements.push(Element::Line(sec));
        n.add_node("n1")
            .add_element("Etail", ElementKind::TLine { z0: 50.0, theta0_deg: 5.0, f0 }, "n0", "n1");
        node = 1;
    }
    n.add_port("n0", 50.0).add_port(format!("n{node}"), 50.0);
    Chain { elements, netlist: n }
}


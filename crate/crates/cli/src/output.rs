// SPDX-License-Identifier: Apache-2.0

//! Text, JSON and CSV renderings for each subcommand.

use std::fmt::Display;
use std::io::{self, Write};
use std::str::FromStr;

use collatz_symbolic::itinerary::PrimitiveItinerary;
use collatz_symbolic::ladder::{CLadder, EvenThread};
use collatz_symbolic::oracle::{Orbit, VerificationReport};
use collatz_symbolic::prefix::{CoverageReport, PrefixEquation, PrefixTree, ProgressionRow};
use collatz_symbolic::reports::TableArtifact;
use collatz_symbolic::stability::{self, ExpansiveRun, StabilityReport};
use collatz_symbolic::NodeInfo;
use serde_json::{json, Value};

use crate::Format;

/// A big integer as a JSON number, without going through `f64`.
fn num(v: &impl Display) -> Value {
    Value::Number(serde_json::Number::from_str(&v.to_string()).expect("integers are valid JSON numbers"))
}

fn flag(b: bool) -> &'static str {
    if b {
        "t"
    } else {
        "f"
    }
}

fn joined<T: Display>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

pub struct Out {
    format: Format,
}

impl Out {
    pub fn new(format: Format) -> Self {
        Out { format }
    }

    fn json(&self, v: &impl serde::Serialize) {
        let text = serde_json::to_string_pretty(v).expect("values serialize");
        println!("{text}");
    }

    fn csv(&self, header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) {
        let mut w = csv::Writer::from_writer(io::stdout().lock());
        w.write_record(header).expect("stdout");
        for r in rows {
            w.write_record(&r).expect("stdout");
        }
        w.flush().expect("stdout");
    }

    pub fn classify(&self, infos: &[NodeInfo]) {
        match self.format {
            Format::Text => infos.iter().for_each(|i| println!("{i}")),
            Format::Json => self.json(&Value::Array(infos.iter().map(node_json).collect())),
            Format::Csv => self.csv(
                &["value", "kind", "character", "role"],
                infos.iter().map(|i| {
                    vec![
                        i.value.to_string(),
                        i.kind.code().to_string(),
                        i.kind.character().map(|c| c.to_string()).unwrap_or_default(),
                        i.role.to_string(),
                    ]
                }),
            ),
        }
    }

    pub fn ladder(&self, l: &CLadder, threads: Option<&[EvenThread]>) {
        let infos: Vec<NodeInfo> = l
            .nodes()
            .map(|v| collatz_symbolic::classify(v).expect("ladder nodes are odd"))
            .collect();
        match self.format {
            Format::Text => {
                for (i, (rung, info)) in l.rungs.iter().zip(&infos).enumerate() {
                    println!("{i}: {} -> {} ({}, {})", rung.node, rung.image, info.kind, info.role);
                }
                for t in threads.unwrap_or_default() {
                    println!("thread {}: {}", t.zero_node, joined(&t.preimages));
                }
            }
            Format::Json => {
                let rungs: Vec<Value> = l
                    .rungs
                    .iter()
                    .zip(&infos)
                    .map(|(r, i)| {
                        let mut v = node_json(i);
                        v["image"] = num(&r.image);
                        v
                    })
                    .collect();
                let mut v = json!({ "hub": num(&l.hub.value), "pumps": l.length, "rungs": rungs });
                if let Some(t) = threads {
                    v["threads"] = serde_json::to_value(t).expect("threads serialize");
                }
                self.json(&v);
            }
            Format::Csv => self.csv(
                &["index", "node", "image", "kind", "character", "role"],
                l.rungs.iter().zip(&infos).enumerate().map(|(k, (r, i))| {
                    vec![
                        k.to_string(),
                        r.node.to_string(),
                        r.image.to_string(),
                        i.kind.code().to_string(),
                        i.kind.character().map(|c| c.to_string()).unwrap_or_default(),
                        i.role.to_string(),
                    ]
                }),
            ),
        }
    }

    pub fn itinerary(&self, it: &PrimitiveItinerary) {
        match self.format {
            Format::Text => {
                println!("{}", it.chain_text());
                println!("{}", it.render());
                if !it.ends_at_pump() {
                    println!("open: {} is a hub", it.end().value);
                }
            }
            Format::Json => self.json(&json!({
                "nodes": it.nodes().iter().map(|n| num(&n.value)).collect::<Vec<_>>(),
                "symbols": it.symbols(),
                "divisors": it.divisors(),
                "rendering": it.render().to_string(),
                "start": num(&it.start().value),
                "start_character": it.start_character().value(),
                "ends_at_pump": it.ends_at_pump(),
            })),
            Format::Csv => self.csv(
                &["index", "value", "symbol", "divisor", "pump"],
                it.nodes().iter().enumerate().map(|(i, n)| {
                    vec![
                        i.to_string(),
                        n.value.to_string(),
                        n.kind.code().to_string(),
                        if i == 0 { String::new() } else { it.divisors()[i - 1].to_string() },
                        flag(n.is_pump()).to_owned(),
                    ]
                }),
            ),
        }
    }

    pub fn stability(&self, r: &StabilityReport) {
        match self.format {
            Format::Text => {
                let word = |b: bool| if b { "expansive" } else { "dissipative" };
                println!("ones {} twos {} start {} end {}", r.ones, r.twos, r.start, r.end);
                println!("by value: {}", word(r.expansive_by_value));
                println!("asymptotic: {}", word(r.expansive_asymptotic));
            }
            Format::Json => self.json(r),
            Format::Csv => self.csv(
                &["ones", "twos", "start", "end", "expansive_by_value", "expansive_asymptotic"],
                [vec![
                    r.ones.to_string(),
                    r.twos.to_string(),
                    r.start.to_string(),
                    r.end.to_string(),
                    flag(r.expansive_by_value).to_owned(),
                    flag(r.expansive_asymptotic).to_owned(),
                ]],
            ),
        }
    }

    pub fn bounds(&self, length: u32) {
        let b = stability::max_twos(length);
        let count = stability::count_expansive(length);
        let gamma = stability::gamma();
        let real = f64::from(length) / (1.0 + gamma);
        match self.format {
            Format::Text => {
                println!("length {length}");
                println!("gamma {gamma:.12}");
                println!("N/(1+gamma) {real:.4}");
                if b.any_expansive {
                    println!("max twos {}", b.max_twos);
                } else {
                    println!("max twos {} (no expansive tail)", b.max_twos);
                }
                println!("expansive count {count}");
            }
            Format::Json => self.json(&json!({
                "length": length,
                "gamma": gamma,
                "max_twos": b.max_twos,
                "any_expansive": b.any_expansive,
                "count_expansive": num(&count),
            })),
            Format::Csv => self.csv(
                &["length", "gamma", "max_twos", "any_expansive", "count_expansive"],
                [vec![
                    length.to_string(),
                    format!("{gamma:.12}"),
                    b.max_twos.to_string(),
                    flag(b.any_expansive).to_owned(),
                    count.to_string(),
                ]],
            ),
        }
    }

    pub fn expansive(&self, r: &ExpansiveRun) {
        match self.format {
            Format::Text => {
                println!("s {} M {} p {}", r.s, r.exponent, r.p0);
                println!("nodes {}", joined(&r.nodes));
                println!("terminal even {}", r.terminal_even);
            }
            Format::Json => self.json(r),
            Format::Csv => self.csv(
                &["i", "y"],
                r.nodes
                    .iter()
                    .enumerate()
                    .map(|(i, y)| vec![i.to_string(), y.to_string()])
                    .chain([vec![r.nodes.len().to_string(), r.terminal_even.to_string()]]),
            ),
        }
    }

    pub fn equation(&self, eq: &PrefixEquation) {
        match self.format {
            Format::Text => println!("{}: {eq}", eq.prefix),
            Format::Json => self.json(eq),
            Format::Csv => self.csv(&EQUATION_HEADER, [equation_cells(eq)]),
        }
    }

    pub fn progression(&self, eq: &PrefixEquation, rows: &[ProgressionRow]) {
        match self.format {
            Format::Text => {
                println!("{}: {eq}", eq.prefix);
                for r in rows {
                    let mark = if r.is_pump { "  pump" } else { "" };
                    println!("k={} m={} 6m+3={} p={} endpoint={}{mark}", r.k, r.m, r.zero_node, r.p, r.endpoint);
                }
            }
            Format::Json => self.json(&json!({
                "equation": eq,
                "rows": rows,
            })),
            Format::Csv => self.csv(
                &["k", "m", "zero_node", "p", "endpoint", "pump"],
                rows.iter().map(|r| {
                    vec![
                        r.k.to_string(),
                        r.m.to_string(),
                        r.zero_node.to_string(),
                        r.p.to_string(),
                        r.endpoint.to_string(),
                        flag(r.is_pump).to_owned(),
                    ]
                }),
            ),
        }
    }

    pub fn tree(&self, tree: &PrefixTree) {
        let eqs: Vec<&PrefixEquation> = tree.nodes().into_iter().map(|n| &n.equation).collect();
        match self.format {
            Format::Text => {
                for eq in &eqs {
                    let indent = "  ".repeat(eq.length as usize);
                    println!("{indent}{}: {eq}", eq.prefix);
                }
                println!("{} edges", tree.edge_count());
            }
            Format::Json => self.json(&json!({
                "depth": tree.depth,
                "edges": tree.edge_count(),
                "equations": eqs,
            })),
            Format::Csv => self.csv(&EQUATION_HEADER, eqs.iter().map(|e| equation_cells(e))),
        }
    }

    pub fn coverage(&self, r: &CoverageReport) {
        match self.format {
            Format::Text => {
                println!("bound {}", r.bound);
                println!("checked {} covered {}", r.checked, r.covered);
                println!("excluded {}", joined(&r.excluded));
                println!("max backward depth {}", r.max_depth);
                for f in &r.failures {
                    println!("FAIL {}: {}", f.value, f.reason);
                }
                println!("{}", if r.passed() { "PASS" } else { "FAIL" });
            }
            Format::Json => self.json(r),
            Format::Csv => self.csv(
                &["bound", "checked", "covered", "failures", "max_depth", "passed"],
                [vec![
                    r.bound.to_string(),
                    r.checked.to_string(),
                    r.covered.to_string(),
                    r.failures.len().to_string(),
                    r.max_depth.to_string(),
                    flag(r.passed()).to_owned(),
                ]],
            ),
        }
    }

    pub fn table(&self, t: &TableArtifact) {
        match self.format {
            Format::Text => print!("{t}"),
            Format::Json => self.json(t),
            Format::Csv => self.csv(
                t.columns(),
                t.records().into_iter().map(|r| {
                    r.into_iter()
                        .map(|c| match c.as_str() {
                            "true" => "t".to_owned(),
                            "false" => "f".to_owned(),
                            _ => c,
                        })
                        .collect()
                }),
            ),
        }
    }

    pub fn verify(&self, r: &VerificationReport) {
        match self.format {
            Format::Text => {
                println!("range {}:{}", r.range.0, r.range.1);
                for (check, n) in &r.checks_run {
                    println!("{check} {n}");
                }
                for e in &r.excluded {
                    println!("excluded {}: {}", e.value, e.reason);
                }
                for f in &r.failures {
                    println!("FAIL {} {}: expected {} actual {}", f.value, f.check, f.expected, f.actual);
                }
                println!("{} failures", r.failures.len());
                println!("{}", if r.passed() { "PASS" } else { "FAIL" });
            }
            Format::Json => self.json(r),
            Format::Csv => self.csv(
                &["check", "run", "failed"],
                r.checks_run.iter().map(|(check, n)| {
                    let failed = r.failures.iter().filter(|f| f.check == *check).count();
                    vec![check.to_string(), n.to_string(), failed.to_string()]
                }),
            ),
        }
    }

    pub fn orbit(&self, o: &Orbit) {
        match self.format {
            Format::Text => {
                println!("{}", joined(&o.values));
                if o.reached_one {
                    println!("reached 1 after {} steps", o.steps);
                } else {
                    println!("budget exhausted after {} steps", o.steps);
                }
            }
            Format::Json => self.json(o),
            Format::Csv => self.csv(
                &["step", "value"],
                o.values.iter().enumerate().map(|(i, v)| vec![i.to_string(), v.to_string()]),
            ),
        }
        let _ = io::stdout().flush();
    }
}

const EQUATION_HEADER: [&str; 7] = ["prefix", "L", "K", "C", "m0", "p0", "terminal_kind"];

fn equation_cells(eq: &PrefixEquation) -> Vec<String> {
    vec![
        eq.prefix.clone(),
        eq.length.to_string(),
        eq.halvings.to_string(),
        eq.intercept.to_string(),
        eq.m0.to_string(),
        eq.p0.to_string(),
        format!("{:?}", eq.terminal_kind).to_lowercase(),
    ]
}

fn node_json(i: &NodeInfo) -> Value {
    json!({
        "value": num(&i.value),
        "kind": i.kind.code(),
        "character": i.kind.character().map(|c| c.value()),
        "role": i.role.to_string(),
    })
}

// SPDX-License-Identifier: Apache-2.0

//! Brute-force ground truth.
//!
//! Everything on the "expected" side of a check comes from iterating the raw
//! Collatz map or from the residue definitions themselves; the symbolic
//! modules only ever appear on the "actual" side.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::arith::{collatz_step, collatz_step_u64, is_odd, odd_to_odd, Nat};
use crate::error::{Error, Result};
use crate::exec;
use crate::itinerary::{primitive_backward, primitive_forward};
use crate::ladder::{generate_ladder, pump_kind_sequence};
use crate::node::{classify, first_odd_preimage, preimage_kind, pump_down, NodeInfo, NodeKind};

/// Per-orbit step budget used when the caller does not supply one.
pub const DEFAULT_ORBIT_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Orbit {
    #[serde(serialize_with = "crate::json::nat")]
    pub start: Nat,
    #[serde(serialize_with = "crate::json::nats")]
    pub values: Vec<Nat>,
    pub reached_one: bool,
    pub steps: u64,
}

/// Raw orbit of `x` until it reaches 1 (after at least one step) or the
/// budget runs out. Exhausting the budget is not an error.
pub fn orbit(x: &Nat, budget: u64) -> Result<Orbit> {
    if let Some(small) = x.to_u64() {
        if let Some(o) = orbit_u64(small, budget) {
            return Ok(o);
        }
    }
    orbit_big(x, budget)
}

fn orbit_big(x: &Nat, budget: u64) -> Result<Orbit> {
    let one = Nat::one();
    let mut values = vec![x.clone()];
    let mut steps = 0;
    while steps < budget && (steps == 0 || *values.last().unwrap() != one) {
        let next = collatz_step(values.last().unwrap())?;
        values.push(next);
        steps += 1;
    }
    Ok(Orbit {
        start: x.clone(),
        reached_one: *values.last().unwrap() == one && steps > 0,
        values,
        steps,
    })
}

/// `u64` fast path; `None` on overflow (the caller falls back).
fn orbit_u64(x: u64, budget: u64) -> Option<Orbit> {
    if x == 0 {
        return None;
    }
    let mut values = vec![x];
    let mut steps = 0;
    while steps < budget && (steps == 0 || *values.last().unwrap() != 1) {
        values.push(collatz_step_u64(*values.last().unwrap())?);
        steps += 1;
    }
    Some(Orbit {
        start: Nat::from(x),
        reached_one: *values.last().unwrap() == 1 && steps > 0,
        values: values.into_iter().map(Nat::from).collect(),
        steps,
    })
}

/// Odd values of an orbit with the number of halvings that follow each.
fn odd_skeleton(o: &Orbit) -> Vec<(Nat, u64)> {
    let mut out: Vec<(Nat, u64)> = Vec::new();
    for v in &o.values {
        if is_odd(v) {
            out.push((v.clone(), 0));
        } else if let Some(last) = out.last_mut() {
            // Even values after an odd v are 3v+1 and its halvings; each
            // one is followed by a halving step.
            last.1 += 1;
        }
    }
    out
}

/// Named checks a sweep can run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    Classification,
    HubImage,
    PreimageFormulas,
    CanonicalRelation,
    PrimitiveDecomposition,
    PumpPeriodicity,
    Coverage,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::Classification,
        Check::HubImage,
        Check::PreimageFormulas,
        Check::CanonicalRelation,
        Check::PrimitiveDecomposition,
        Check::PumpPeriodicity,
        Check::Coverage,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Classification => "classification",
            Check::HubImage => "hub-image",
            Check::PreimageFormulas => "preimage-formulas",
            Check::CanonicalRelation => "canonical-relation",
            Check::PrimitiveDecomposition => "primitive-decomposition",
            Check::PumpPeriodicity => "pump-periodicity",
            Check::Coverage => "coverage",
        }
    }

    /// Parses a comma-separated list; `all` selects every check.
    pub fn parse_list(text: &str) -> Result<Vec<Check>> {
        let mut out = Vec::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part == "all" {
                out.extend(Check::ALL);
            } else {
                out.push(part.parse()?);
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnknownCheck(s.to_owned()))
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub value: u64,
    pub check: &'static str,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Exclusion {
    pub value: u64,
    pub reason: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub range: (u64, u64),
    pub checks: Vec<&'static str>,
    pub checks_run: BTreeMap<&'static str, u64>,
    pub failures: Vec<Failure>,
    pub excluded: Vec<Exclusion>,
    /// Wall time; not serialized, so reports compare byte-for-byte.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn total_checks(&self) -> u64 {
        self.checks_run.values().sum()
    }
}

/// Definition-level kind code: which of `6m + 3`, `6m + 5`, `6m + 1` fits.
fn oracle_kind(x: u64) -> u8 {
    if x >= 3 && (x - 3).is_multiple_of(6) {
        0
    } else if x >= 5 && (x - 5).is_multiple_of(6) {
        1
    } else {
        2
    }
}

fn oracle_kind_big(x: &Nat) -> u8 {
    match (x % 6u32).to_u32().unwrap() {
        3 => 0,
        5 => 1,
        _ => 2,
    }
}

/// `t` with `x = 3(6n + t)`.
fn oracle_character_big(x: &Nat) -> u8 {
    let q = x / 3u32;
    (q % 6u32).to_u8().unwrap()
}

/// Pump iff `x = 4k + 1` with `k` odd.
fn oracle_is_pump(x: &Nat) -> bool {
    let r = x % 4u32;
    r == Nat::one() && is_odd(&((x - 1u32) / 4u32))
}

/// First odd value after `x` under the raw map, and the halvings taken.
fn raw_next_odd(x: &Nat) -> (Nat, u64) {
    let mut v = collatz_step(x).expect("positive");
    let mut halvings = 0;
    while !is_odd(&v) {
        v = collatz_step(&v).expect("positive");
        halvings += 1;
    }
    (v, halvings)
}

struct Ctx<'a> {
    budget: u64,
    checks: &'a [Check],
    counts: BTreeMap<&'static str, u64>,
    failures: Vec<Failure>,
    excluded: Vec<Exclusion>,
}

impl Ctx<'_> {
    fn count(&mut self, c: Check) {
        *self.counts.entry(c.name()).or_default() += 1;
    }

    fn fail(&mut self, value: u64, c: Check, expected: impl ToString, actual: impl ToString) {
        self.failures.push(Failure {
            value,
            check: c.name(),
            expected: expected.to_string(),
            actual: actual.to_string(),
        });
    }

    fn run(&mut self, x: u64) {
        let big = Nat::from(x);
        let info = classify(&big).expect("odd");
        if x == 1 {
            self.excluded.push(Exclusion {
                value: 1,
                reason: "trivial cycle 1 -> 4 -> 2 -> 1",
            });
        }
        for &c in self.checks {
            match c {
                Check::Classification => self.classification(x, &big, &info),
                Check::HubImage => self.hub_image(x, &big, &info),
                Check::PreimageFormulas => self.preimage(x, &big, &info),
                Check::CanonicalRelation => self.canonical(x, &big),
                Check::PrimitiveDecomposition if x != 1 => self.decomposition(x, &big),
                Check::PumpPeriodicity => self.periodicity(x, &big, &info),
                Check::Coverage if x != 1 => self.coverage(x, &info),
                _ => {}
            }
        }
    }

    fn classification(&mut self, x: u64, big: &Nat, info: &NodeInfo) {
        let c = Check::Classification;
        self.count(c);
        let kind = oracle_kind(x);
        if info.kind.code() != kind {
            self.fail(x, c, format!("kind {kind}"), format!("kind {}", info.kind.code()));
        }
        if kind == 0 {
            let t = oracle_character_big(big);
            let got = info.kind.character().map(|c| c.value());
            if got != Some(t) {
                self.fail(x, c, format!("character {t}"), format!("character {got:?}"));
            }
        }
        if oracle_is_pump(big) != info.is_pump() {
            self.fail(x, c, format!("pump {}", oracle_is_pump(big)), info.role);
        }
    }

    fn hub_image(&mut self, x: u64, big: &Nat, info: &NodeInfo) {
        let c = Check::HubImage;
        if oracle_is_pump(big) {
            return;
        }
        self.count(c);
        let (img, halvings) = raw_next_odd(big);
        let (want_d, want_kind) = if x % 8 == 1 { (2, 2) } else { (1, 1) };
        if halvings != want_d || oracle_kind_big(&img) != want_kind {
            self.fail(
                x,
                c,
                format!("{want_d} halvings to a {want_kind}-node"),
                format!("{halvings} halvings to {img}"),
            );
        }
        match odd_to_odd(&info.value) {
            Ok((n, d)) if n == img && d == halvings => {}
            other => self.fail(x, c, format!("({img}, {halvings})"), format!("{other:?}")),
        }
    }

    fn preimage(&mut self, x: u64, big: &Nat, info: &NodeInfo) {
        let c = Check::PreimageFormulas;
        if info.kind.is_zero() {
            return;
        }
        self.count(c);
        let pre = match first_odd_preimage(info) {
            Ok(p) => p,
            Err(e) => return self.fail(x, c, "a preimage", e),
        };
        let (img, _) = raw_next_odd(&pre.value);
        if &img != big {
            self.fail(x, c, x, format!("{} maps to {img}", pre.value));
        }
        if oracle_is_pump(&pre.value) {
            self.fail(x, c, "hub preimage", format!("{} is a pump", pre.value));
        }
        let form = if oracle_kind(x) == 1 {
            Nat::from(4 * ((x - 5) / 6) + 3)
        } else {
            Nat::from(8 * ((x - 1) / 6) + 1)
        };
        if pre.value != form {
            self.fail(x, c, &form, &pre.value);
        }
        let want = oracle_kind_big(&pre.value);
        match preimage_kind(info) {
            Ok(s) if s == want => {}
            other => self.fail(x, c, format!("preimage kind {want}"), format!("{other:?}")),
        }
    }

    fn canonical(&mut self, x: u64, big: &Nat) {
        let c = Check::CanonicalRelation;
        self.count(c);
        let lhs = collatz_step(big).unwrap() * 4u32;
        let rhs = collatz_step(&(big * 4u32 + 1u32)).unwrap();
        if lhs != rhs {
            self.fail(x, c, lhs, rhs);
        }
    }

    fn decomposition(&mut self, x: u64, big: &Nat) {
        let c = Check::PrimitiveDecomposition;
        self.count(c);
        let o = match orbit(big, self.budget) {
            Ok(o) if o.reached_one => o,
            _ => return self.fail(x, c, "orbit reaches 1", "budget exhausted"),
        };
        let skel = odd_skeleton(&o);
        let last = skel.len() - 1;
        if skel[last].0 != Nat::one() {
            return self.fail(x, c, "orbit ends at 1", &skel[last].0);
        }
        let mut seg_start = 0;
        for i in 0..last {
            let (v, halvings) = &skel[i];
            let pump = oracle_is_pump(v);
            if !pump {
                if *halvings != 1 && *halvings != 2 {
                    return self.fail(x, c, "hub step with 1 or 2 halvings", format!("{v} took {halvings}"));
                }
                if i + 1 == last {
                    return self.fail(x, c, "a pump before 1", v);
                }
                continue;
            }
            // Segment skel[seg_start..=i] closes at pump v.
            let seg: Vec<&Nat> = skel[seg_start..=i].iter().map(|s| &s.0).collect();
            if let Err((e, a)) = self.check_segment(&seg, seg_start == 0) {
                return self.fail(x, c, e, a);
            }
            if let Err((e, a)) = check_descent(v, *halvings, &skel[i + 1].0) {
                return self.fail(x, c, e, a);
            }
            seg_start = i + 1;
        }
    }

    /// A segment must be the tail of the symbolic backward trace from its
    /// closing pump, and the whole trace when it starts at the orbit's
    /// 0-node origin.
    fn check_segment(&self, seg: &[&Nat], at_origin: bool) -> std::result::Result<(), (String, String)> {
        let end = classify(seg.last().unwrap()).unwrap();
        let back = primitive_backward(&end, self.budget).map_err(|e| ("backward trace".to_owned(), e.to_string()))?;
        let back_vals: Vec<&Nat> = back.nodes().iter().map(|n| &n.value).collect();
        let fmt = |v: &[&Nat]| v.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(" ");
        if back_vals.len() < seg.len() || back_vals[back_vals.len() - seg.len()..] != *seg {
            return Err((fmt(seg), fmt(&back_vals)));
        }
        let start = classify(seg[0]).unwrap();
        if start.kind.is_zero() {
            if !at_origin {
                return Err(("no 0-node after a pump".to_owned(), seg[0].to_string()));
            }
            let fwd = primitive_forward(&start, self.budget).map_err(|e| ("forward".to_owned(), e.to_string()))?;
            let fwd_vals: Vec<&Nat> = fwd.nodes().iter().map(|n| &n.value).collect();
            if fwd_vals != seg {
                return Err((fmt(seg), fmt(&fwd_vals)));
            }
        }
        Ok(())
    }

    fn periodicity(&mut self, x: u64, big: &Nat, info: &NodeInfo) {
        let c = Check::PumpPeriodicity;
        self.count(c);
        // Oracle kinds of x, 4x+1, 16x+5, 64x+21 from residues alone.
        let mut rungs = vec![big.clone()];
        for _ in 0..3 {
            let next = rungs.last().unwrap() * 4u32 + 1u32;
            rungs.push(next);
        }
        let kinds: Vec<u8> = rungs.iter().map(oracle_kind_big).collect();
        for w in kinds.windows(2) {
            if w[1] != NodeKind::pumped_code(w[0]) {
                return self.fail(x, c, "0 -> 2 -> 1 -> 0", format!("{kinds:?}"));
            }
        }
        if let NodeKind::Zero(ch) = info.kind {
            let t = oracle_character_big(&rungs[3]);
            if t != ch.after_three_pumps().value() {
                return self.fail(x, c, ch.after_three_pumps(), t);
            }
        }
        if info.is_hub() {
            let ladder = generate_ladder(info, 3).expect("hub");
            let symbolic: Vec<u8> = pump_kind_sequence(&ladder).iter().map(|k| k.code()).collect();
            if symbolic != kinds {
                self.fail(x, c, format!("{kinds:?}"), format!("{symbolic:?}"));
            }
        }
    }

    fn coverage(&mut self, x: u64, info: &NodeInfo) {
        let c = Check::Coverage;
        if info.kind.is_zero() {
            return;
        }
        self.count(c);
        let back = match primitive_backward(info, self.budget) {
            Ok(b) => b,
            Err(e) => return self.fail(x, c, "backward trace to a 0-node", e),
        };
        // Raw iteration from the 0-node must pass through x before any pump.
        let mut v = back.start().value.clone();
        let target = &info.value;
        let mut steps = 0;
        while &v != target {
            if oracle_is_pump(&v) || steps > back.len() {
                return self.fail(x, c, format!("{} reaches {x}", back.start().value), format!("stopped at {v}"));
            }
            v = raw_next_odd(&v).0;
            steps += 1;
        }
    }
}

/// A pump falls down its ladder: after `n` pump-downs to the hub `h`, the
/// next odd value equals `odd_to_odd(h)` with `2n` extra halvings.
fn check_descent(pump: &Nat, halvings: u64, next: &Nat) -> std::result::Result<(), (String, String)> {
    let mut hub = pump.clone();
    let mut n = 0;
    while oracle_is_pump(&hub) {
        hub = pump_down(&hub).map_err(|e| ("pump_down".to_owned(), e.to_string()))?;
        n += 1;
    }
    let (bottom, d) = odd_to_odd(&hub).expect("odd hub");
    if &bottom != next || d + 2 * n != halvings || halvings < 3 {
        return Err((
            format!("{pump} falls to {next} after {halvings} halvings"),
            format!("hub {hub} gives {bottom} after {}", d + 2 * n),
        ));
    }
    Ok(())
}

/// Runs `checks` for every odd value in `[lo, hi)`, split into `partitions`
/// contiguous chunks whose results are merged in range order.
pub fn sweep(lo: u64, hi: u64, checks: &[Check], partitions: usize) -> Result<VerificationReport> {
    sweep_with_budget(lo, hi, checks, partitions, DEFAULT_ORBIT_BUDGET)
}

pub fn sweep_with_budget(
    lo: u64,
    hi: u64,
    checks: &[Check],
    partitions: usize,
    budget: u64,
) -> Result<VerificationReport> {
    if lo < 1 || lo >= hi {
        return Err(Error::domain(format!("{lo}:{hi}"), "sweep needs 1 <= lo < hi"));
    }
    let started = Instant::now();
    let mut checks = checks.to_vec();
    checks.sort();
    checks.dedup();
    let chunks = exec::split_range(lo, hi, partitions);
    let parts = exec::map_ordered(&chunks, |&(a, b)| {
        let mut ctx = Ctx {
            budget,
            checks: &checks,
            counts: BTreeMap::new(),
            failures: Vec::new(),
            excluded: Vec::new(),
        };
        for x in ((a | 1)..b).step_by(2) {
            ctx.run(x);
        }
        (ctx.counts, ctx.failures, ctx.excluded)
    });
    let mut checks_run: BTreeMap<&'static str, u64> =
        checks.iter().map(|c| (c.name(), 0)).collect();
    let mut failures = Vec::new();
    let mut excluded = Vec::new();
    for (counts, f, e) in parts {
        for (k, v) in counts {
            *checks_run.entry(k).or_default() += v;
        }
        failures.extend(f);
        excluded.extend(e);
    }
    Ok(VerificationReport {
        range: (lo, hi),
        checks: checks.iter().map(|c| c.name()).collect(),
        checks_run,
        failures,
        excluded,
        elapsed: started.elapsed(),
    })
}

// SPDX-License-Identifier: Apache-2.0

//! Regeneration of the published preimage and pump tables.
//!
//! Every cell is recomputed. Where a printed cell disagrees with the
//! recomputation the artifact keeps the computed value and lists the printed
//! one under `deviations`.

use std::fmt;

use serde::Serialize;

use crate::arith::{nat, Nat};
use crate::error::{Error, Result};
use crate::exec;
use crate::itinerary::{primitive_backward, SequenceRendering, DEFAULT_BUDGET};
use crate::ladder::generate_ladder;
use crate::node::{classify, first_odd_preimage, pump_up};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableParams {
    pub rows: usize,
    #[serde(serialize_with = "crate::json::opt_nat")]
    pub hub: Option<Nat>,
}

/// One row of a preimage table (the 1-node and 2-node behavior tables).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PreimageRow {
    pub p: u64,
    #[serde(serialize_with = "crate::json::nat")]
    pub preimage: Nat,
    /// Kind of the preimage in table notation: `0^(t)`, `1` or `2`.
    pub preimage_kind: String,
    #[serde(serialize_with = "crate::json::nat")]
    pub node: Nat,
    pub pump: bool,
}

/// A 1- or 2-node cell with the primitive sequence that ends at it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SequenceCell {
    #[serde(serialize_with = "crate::json::nat")]
    pub value: Nat,
    /// `None` only for the value 1, whose backward trace is `222...`.
    pub sequence: Option<SequenceRendering>,
}

impl SequenceCell {
    fn new(value: Nat) -> Result<Self> {
        let info = classify(&value)?;
        let sequence = match primitive_backward(&info, DEFAULT_BUDGET) {
            Ok(it) => Some(it.render()),
            Err(Error::TrivialCycle) => None,
            Err(e) => return Err(e),
        };
        Ok(SequenceCell { value, sequence })
    }

    pub fn sequence_text(&self) -> String {
        match &self.sequence {
            Some(s) => s.to_string(),
            None => "222...".to_owned(),
        }
    }
}

/// One row of a pump table or of the 0-node table: a 0-node followed by the
/// 2-node and 1-node its pumps produce.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PumpRow {
    pub index: u64,
    #[serde(serialize_with = "crate::json::opt_nat")]
    pub zero_node: Option<Nat>,
    pub zero_character: Option<u8>,
    pub two_node: Option<SequenceCell>,
    pub one_node: Option<SequenceCell>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Row {
    Preimage(PreimageRow),
    Pump(PumpRow),
}

/// A printed cell that disagrees with the recomputed table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Deviation {
    pub row: usize,
    pub column: &'static str,
    pub printed: &'static str,
    pub computed: String,
    pub note: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableArtifact {
    pub table_id: u8,
    pub params: TableParams,
    pub rows: Vec<Row>,
    pub deviations: Vec<Deviation>,
}

struct Erratum {
    table: u8,
    row: usize,
    column: &'static str,
    printed: &'static str,
    note: &'static str,
}

const ERRATA: &[Erratum] = &[
    Erratum {
        table: 3,
        row: 2,
        column: "1-node sequence",
        printed: "12210^{17259(3)}",
        note: "17259 = 3(6*958 + 5) has character 5",
    },
    Erratum {
        table: 3,
        row: 3,
        column: "2-node sequence",
        printed: "2211120^{24581(5)}",
        note: "the backward trace from 349525 starts at 245481; 24581 is a 2-node",
    },
    Erratum {
        table: 4,
        row: 6,
        column: "0-node",
        printed: "0^{(1)}",
        note: "value cells printed blank; recomputed from the ladder",
    },
    Erratum {
        table: 4,
        row: 7,
        column: "0-node",
        printed: "0^{(5)}",
        note: "value cells printed blank; recomputed from the ladder",
    },
    Erratum {
        table: 5,
        row: 9,
        column: "1-node sequence",
        printed: "111222121212220^{897(5)}",
        note: "forward iteration from 897 reaches the pump 917 after 13 nodes",
    },
    Erratum {
        table: 5,
        row: 14,
        column: "2-node",
        printed: "348",
        note: "4*87 + 1 = 349; 348 is even",
    },
    Erratum {
        table: 5,
        row: 17,
        column: "2-node sequence",
        printed: "20^{561(3)}",
        note: "561 = 3(6*31 + 1) has character 1",
    },
    Erratum {
        table: 5,
        row: 20,
        column: "1-node sequence",
        printed: "1220^{2357(5)}",
        note: "the backward trace from 1973 starts at 2337; 2357 is not a multiple of 3",
    },
];

impl TableArtifact {
    pub fn columns(&self) -> &'static [&'static str] {
        match self.table_id {
            1 => &["p", "4p+3 preimage", "6p+5 1-node", "pump"],
            2 => &["p", "8p+1 preimage", "6p+1 2-node", "pump"],
            _ => &["0-node", "2-node", "2-node sequence", "1-node", "1-node sequence"],
        }
    }

    /// Cells as strings, in column order. Booleans are `true`/`false`.
    pub fn records(&self) -> Vec<Vec<String>> {
        self.rows.iter().map(row_cells).collect()
    }

    /// Text for one cell, or `None` when the row is outside the table.
    pub fn cell(&self, row: usize, column: &str) -> Option<String> {
        let i = self.columns().iter().position(|c| *c == column)?;
        self.rows.get(row).map(|r| row_cells(r)[i].clone())
    }

    fn attach_errata(&mut self) {
        let found: Vec<Deviation> = ERRATA
            .iter()
            .filter(|e| e.table == self.table_id && e.row < self.rows.len())
            .map(|e| Deviation {
                row: e.row,
                column: e.column,
                printed: e.printed,
                computed: self.cell(e.row, e.column).unwrap_or_default(),
                note: e.note,
            })
            .collect();
        self.deviations = found;
    }
}

fn opt_text<T: fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map(ToString::to_string).unwrap_or_else(|| "--".to_owned())
}

fn row_cells(row: &Row) -> Vec<String> {
    match row {
        Row::Preimage(r) => vec![
            r.p.to_string(),
            format!("{}:{}", r.preimage, r.preimage_kind),
            r.node.to_string(),
            r.pump.to_string(),
        ],
        Row::Pump(r) => {
            let zero = match (&r.zero_node, r.zero_character) {
                (Some(z), Some(c)) => format!("{z}^({c})"),
                _ => "--".to_owned(),
            };
            let value = |c: &Option<SequenceCell>| opt_text(&c.as_ref().map(|c| c.value.clone()));
            let seq = |c: &Option<SequenceCell>| {
                c.as_ref().map(SequenceCell::sequence_text).unwrap_or_else(|| "--".to_owned())
            };
            vec![zero, value(&r.two_node), seq(&r.two_node), value(&r.one_node), seq(&r.one_node)]
        }
    }
}

impl fmt::Display for TableArtifact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let header: Vec<String> = self.columns().iter().map(|c| c.to_string()).collect();
        let records = self.records();
        let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
        for r in &records {
            for (w, c) in widths.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        writeln!(f, "Table {}", self.table_id)?;
        for line in std::iter::once(&header).chain(&records) {
            let cells: Vec<String> = line
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect();
            writeln!(f, "{}", cells.join(" | ").trim_end())?;
        }
        for d in &self.deviations {
            writeln!(
                f,
                "deviation row {} {}: printed {} computed {} ({})",
                d.row, d.column, d.printed, d.computed, d.note
            )?;
        }
        Ok(())
    }
}

fn preimage_table(table_id: u8, rows: usize, node_of: fn(u64) -> u64) -> Result<TableArtifact> {
    if rows == 0 {
        return Err(Error::domain(rows, "a table needs at least one row"));
    }
    let ps: Vec<u64> = (0..rows as u64).collect();
    let built = exec::map_ordered(&ps, |&p| -> Result<Row> {
        let node = classify(&nat(node_of(p)))?;
        let pre = first_odd_preimage(&node)?;
        Ok(Row::Preimage(PreimageRow {
            p,
            preimage: pre.value,
            preimage_kind: pre.kind.to_string(),
            pump: node.is_pump(),
            node: node.value,
        }))
    });
    let rows_out = built.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(TableArtifact {
        table_id,
        params: TableParams { rows, hub: None },
        rows: rows_out,
        deviations: Vec::new(),
    })
}

/// 1-nodes `6p + 5` with their first odd preimages `4p + 3`.
pub fn table_1(rows: usize) -> Result<TableArtifact> {
    preimage_table(1, rows, |p| 6 * p + 5)
}

/// 2-nodes `6p + 1` with their first odd preimages `8p + 1`.
pub fn table_2(rows: usize) -> Result<TableArtifact> {
    preimage_table(2, rows, |p| 6 * p + 1)
}

/// Groups the pump chain above `hub` into (0-node, 2-node, 1-node) rows.
///
/// A ladder's kinds cycle 0 -> 2 -> 1, so a hub that is not a 0-node leaves
/// the leading cells of the first row empty.
pub fn pump_table(hub: &Nat, rows: usize) -> Result<TableArtifact> {
    let info = classify(hub)?;
    if rows == 0 {
        return Err(Error::domain(rows, "a table needs at least one row"));
    }
    let skip = match info.kind.code() {
        0 => 0,
        2 => 1,
        _ => 2,
    };
    let ladder = generate_ladder(&info, 3 * rows - skip)?;
    let mut chain: Vec<Option<Nat>> = vec![None; skip];
    chain.extend(ladder.nodes().cloned().map(Some));
    let triples: Vec<(usize, &[Option<Nat>])> = chain.chunks(3).take(rows).enumerate().collect();
    let built = exec::map_ordered(&triples, |&(i, t)| pump_row(i as u64, t[0].clone(), t[1].clone(), t[2].clone()));
    let mut artifact = TableArtifact {
        table_id: match hub.to_string().as_str() {
            "1" => 3,
            _ => 4,
        },
        params: TableParams {
            rows,
            hub: Some(hub.clone()),
        },
        rows: built.into_iter().collect::<Result<Vec<_>>>()?,
        deviations: Vec::new(),
    };
    if *hub == nat(1) || *hub == nat(3) {
        artifact.attach_errata();
    }
    Ok(artifact)
}

fn pump_row(index: u64, zero: Option<Nat>, two: Option<Nat>, one: Option<Nat>) -> Result<Row> {
    let zero_character = match &zero {
        Some(z) => classify(z)?.kind.character().map(|c| c.value()),
        None => None,
    };
    Ok(Row::Pump(PumpRow {
        index,
        zero_node: zero,
        zero_character,
        two_node: two.map(SequenceCell::new).transpose()?,
        one_node: one.map(SequenceCell::new).transpose()?,
    }))
}

/// 0-nodes `6m + 3` with their first and second pumps.
pub fn table_5(rows: usize) -> Result<TableArtifact> {
    if rows == 0 {
        return Err(Error::domain(rows, "a table needs at least one row"));
    }
    let ms: Vec<u64> = (0..rows as u64).collect();
    let built = exec::map_ordered(&ms, |&m| {
        let zero = nat(6 * m + 3);
        let two = pump_up(&zero)?;
        let one = pump_up(&two)?;
        pump_row(m, Some(zero), Some(two), Some(one))
    });
    let mut artifact = TableArtifact {
        table_id: 5,
        params: TableParams { rows, hub: None },
        rows: built.into_iter().collect::<Result<Vec<_>>>()?,
        deviations: Vec::new(),
    };
    artifact.attach_errata();
    Ok(artifact)
}

/// Builds a table by number with its published row count unless overridden.
pub fn table(id: u8, rows: Option<usize>) -> Result<TableArtifact> {
    match id {
        1 => table_1(rows.unwrap_or(16)),
        2 => table_2(rows.unwrap_or(16)),
        3 => pump_table(&nat(1), rows.unwrap_or(6)),
        4 => pump_table(&nat(3), rows.unwrap_or(8)),
        5 => table_5(rows.unwrap_or(22)),
        _ => Err(Error::domain(id, "tables are numbered 1 to 5")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(t: &TableArtifact, row: usize, col: &str) -> String {
        t.cell(row, col).unwrap()
    }

    #[test]
    fn table_1_examples() {
        let t = table_1(16).unwrap();
        assert_eq!(t.records()[0], ["0", "3:0^(1)", "5", "true"]);
        assert_eq!(t.records()[4], ["4", "19:2", "29", "true"]);
        assert_eq!(t.records()[15], ["15", "63:0^(3)", "95", "false"]);
        assert!(t.deviations.is_empty());
    }

    #[test]
    fn table_2_examples() {
        let t = table_2(16).unwrap();
        assert_eq!(t.records()[0], ["0", "1:2", "1", "false"]);
        assert_eq!(t.records()[2], ["2", "17:1", "13", "true"]);
        assert_eq!(t.records()[7], ["7", "57:0^(1)", "43", "false"]);
    }

    #[test]
    fn pump_table_hub_one() {
        let t = pump_table(&nat(1), 6).unwrap();
        assert_eq!(t.table_id, 3);
        assert_eq!(t.records()[0], ["--", "1", "222...", "5", "10^{3(1)}"]);
        assert_eq!(t.records()[1], ["21^(1)", "85", "210^{75(1)}", "341", "1120^{201(1)}"]);
        assert_eq!(seq(&t, 2, "1-node sequence"), "12210^{17259(5)}");
        assert_eq!(seq(&t, 3, "2-node sequence"), "2211120^{245481(5)}");
        assert_eq!(t.deviations.len(), 2);
    }

    #[test]
    fn pump_table_hub_three() {
        let t = pump_table(&nat(3), 8).unwrap();
        assert_eq!(t.table_id, 4);
        assert_eq!(t.records()[0], ["3^(1)", "13", "21120^{9(3)}", "53", "1110^{15(5)}"]);
        assert_eq!(seq(&t, 4, "0-node"), "55924053^(5)");
        assert_eq!(seq(&t, 6, "0-node"), "229064922453^(1)");
        assert_eq!(seq(&t, 6, "2-node sequence").split('^').next(), Some("210"));
        assert_eq!(seq(&t, 6, "1-node sequence").split('^').next(), Some("112210"));
        assert_eq!(seq(&t, 7, "0-node"), "14660155037013^(5)");
        assert_eq!(seq(&t, 7, "2-node sequence").split('^').next(), Some("20"));
        assert_eq!(seq(&t, 7, "1-node sequence").split('^').next(), Some("12220"));
        assert_eq!(t.deviations.len(), 2);
    }

    #[test]
    fn pump_table_rejects_pumps() {
        assert!(pump_table(&nat(5), 3).is_err());
        assert!(pump_table(&nat(4), 3).is_err());
    }

    #[test]
    fn pump_table_from_one_node_hub() {
        // 11 is a 1-node hub: its row starts with two empty cells.
        let t = pump_table(&nat(11), 2).unwrap();
        assert_eq!(&t.records()[0][..2], ["--", "--"]);
        assert_eq!(t.records()[0][3], "11");
        assert_eq!(t.records()[1][0], "45^(3)");
    }

    #[test]
    fn table_5_examples_and_errata() {
        let t = table_5(22).unwrap();
        assert_eq!(t.records()[0], ["3^(1)", "13", "21120^{9(3)}", "53", "1110^{15(5)}"]);
        assert_eq!(t.records()[8], ["51^(5)", "205", "20^{273(1)}", "821", "120^{729(3)}"]);
        assert_eq!(seq(&t, 14, "2-node"), "349");
        let cells: Vec<(usize, &str)> = t.deviations.iter().map(|d| (d.row, d.column)).collect();
        assert_eq!(
            cells,
            [(9, "1-node sequence"), (14, "2-node"), (17, "2-node sequence"), (20, "1-node sequence")]
        );
        for d in &t.deviations {
            assert_ne!(d.printed, d.computed);
        }
        assert!(table_5(9).unwrap().deviations.is_empty());
    }

    #[test]
    fn regeneration_is_byte_identical() {
        for id in 1..=5 {
            let a = serde_json::to_string(&table(id, None).unwrap()).unwrap();
            let b = serde_json::to_string(&table(id, None).unwrap()).unwrap();
            assert_eq!(a, b);
        }
        assert!(table(6, None).is_err());
        assert!(table_1(0).is_err());
    }

    fn texts(t: &TableArtifact, col: &str) -> Vec<Vec<u8>> {
        (0..t.rows.len())
            .map(|r| {
                let s = seq(t, r, col);
                s.split('^').next().unwrap().bytes().map(|b| b - b'0').collect()
            })
            .collect()
    }

    /// The prefix up to 1-based position `j` has period `3^(j-1)` rows. Rows
    /// `3^(j-2)` apart that share the first `j-1` symbols run through all
    /// three symbols at position `j`; at position 2 they do so in the
    /// direction `step`.
    fn check_counting(seqs: &[Vec<u8>], j: usize, step: u8) {
        let stride = 3usize.pow(j as u32 - 2);
        for m in 0..seqs.len() {
            if let Some(later) = seqs.get(m + 3 * stride) {
                let n = j.min(seqs[m].len()).min(later.len());
                assert_eq!(seqs[m][..n], later[..n], "row {m} position {j}");
                assert_eq!(seqs[m].len() >= j, later.len() >= j, "row {m} position {j}");
            }
            let Some(group) = seqs.get(m..=m + 2 * stride) else {
                continue;
            };
            let g = [&group[0], &group[stride], &group[2 * stride]];
            if g.iter().any(|s| s.len() < j || s[..j - 1] != g[0][..j - 1]) {
                continue;
            }
            let mut syms: Vec<u8> = g.iter().map(|s| s[j - 1]).collect();
            if j == 2 {
                assert_eq!((syms[0] + step) % 3, syms[1], "row {m}");
                assert_eq!((syms[1] + step) % 3, syms[2], "row {m}");
            }
            syms.sort();
            assert_eq!(syms, [0, 1, 2], "row {m} position {j}");
        }
    }

    #[test]
    fn table_5_counting_periodicity() {
        let t = table_5(60).unwrap();
        let two = texts(&t, "2-node sequence");
        let one = texts(&t, "1-node sequence");
        check_counting(&two, 2, 1);
        check_counting(&one, 2, 2);
        check_counting(&two, 3, 2);
        check_counting(&one, 3, 1);
        check_counting(&two, 4, 1);
        check_counting(&one, 4, 2);
    }
}

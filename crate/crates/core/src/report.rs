//! Instruction-table rendering (text and JSON), parsing, and verification
//! against the reference tables bundled with the crate.

use std::path::PathBuf;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bases::{BellLabel, ChannelSpec};
use crate::classify::InputClass;
use crate::corrections::{correction_scale, CorrectionOp, ParamMap};
use crate::protocol::MeasurementOutcome;
use crate::{Error, Result};

/// Reference parameter values used when a symbolic two-parameter family is
/// emitted as concrete amplitudes: (p₁, p₂) = (0.6, 0.8). Distinct, nonzero,
/// normalized, and exactly recoverable after a JSON round trip.
pub const WITNESS_PARAMS: [f64; 2] = [0.6, 0.8];

/// A signed placement of class parameters over the four two-qubit basis
/// states in standard binary order: entry ±k stands for ±(k-th parameter),
/// 0 for an empty slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolicState(pub [i8; 4]);

impl SymbolicState {
    /// Reads the placement off an exact-integer branch map. Returns `None`
    /// if any entry fails to snap to −1/0/+1 or a basis slot is shared by
    /// two parameters (then the family is not a signed placement).
    pub fn from_param_map(map: &ParamMap) -> Option<Self> {
        let mut out = [0i8; 4];
        for (j, col) in map.cols.iter().enumerate() {
            for (row, e) in col.iter().enumerate() {
                if e.im.abs() > 1e-9 {
                    return None;
                }
                let snapped = e.re.round();
                if (e.re - snapped).abs() > 1e-9 || snapped.abs() > 1.0 {
                    return None;
                }
                if snapped != 0.0 {
                    if out[row] != 0 {
                        return None;
                    }
                    out[row] = (snapped as i8) * (j as i8 + 1);
                }
            }
        }
        Some(SymbolicState(out))
    }

    /// The placement as a linear map from parameters to amplitudes.
    pub fn to_param_map(self, n_params: usize) -> ParamMap {
        let mut cols = vec![[Complex64::new(0.0, 0.0); 4]; n_params];
        for (row, &e) in self.0.iter().enumerate() {
            if e != 0 {
                let j = usize::from(e.unsigned_abs()) - 1;
                cols[j][row] = Complex64::new(f64::from(e.signum()), 0.0);
            }
        }
        ParamMap { cols }
    }

    /// Number of distinct parameters the placement mentions.
    pub fn max_param(self) -> usize {
        self.0.iter().map(|e| usize::from(e.unsigned_abs())).max().unwrap_or(0)
    }

    pub fn equal_up_to_sign(self, other: SymbolicState) -> bool {
        self.0 == other.0 || self.0 == other.0.map(|e| -e)
    }

    /// Concrete amplitudes at the witness parameter values.
    pub fn eval_witness(self) -> [Complex64; 4] {
        let mut out = [Complex64::new(0.0, 0.0); 4];
        for (row, &e) in self.0.iter().enumerate() {
            if e != 0 {
                let v = WITNESS_PARAMS[usize::from(e.unsigned_abs()) - 1];
                out[row] = Complex64::new(f64::from(e.signum()) * v, 0.0);
            }
        }
        out
    }

    /// Recovers the placement from witness-valued amplitudes.
    pub fn from_witness(amps: &[Complex64; 4]) -> Result<Self> {
        let mut out = [0i8; 4];
        for (row, a) in amps.iter().enumerate() {
            if a.im.abs() > 1e-9 {
                return Err(Error::InvalidTable(format!(
                    "state amplitude {a} is not a signed witness value"
                )));
            }
            if a.re.abs() <= 1e-9 {
                continue;
            }
            let k = WITNESS_PARAMS
                .iter()
                .position(|w| (a.re.abs() - w).abs() <= 1e-9)
                .ok_or_else(|| {
                    Error::InvalidTable(format!(
                        "state amplitude {} matches no witness parameter",
                        a.re
                    ))
                })?;
            out[row] = (k as i8 + 1) * if a.re < 0.0 { -1 } else { 1 };
        }
        Ok(SymbolicState(out))
    }

    /// Renders the placement with the given parameter symbols, e.g.
    /// "α|00⟩ − γ|11⟩".
    pub fn render(self, symbols: &[&str]) -> String {
        let mut out = String::new();
        for (row, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if out.is_empty() {
                if e < 0 {
                    out.push('−');
                }
            } else {
                out.push_str(if e < 0 { " − " } else { " + " });
            }
            out.push_str(symbols[usize::from(e.unsigned_abs()) - 1]);
            out.push_str(&format!("|{row:02b}⟩"));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// One row of an instruction table.
#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub outcome: MeasurementOutcome,
    /// Bob's collapsed family for this outcome.
    pub state: SymbolicState,
    /// The catalog correction restoring the family onto the class embedding.
    pub correction: CorrectionOp,
}

/// The outcome → (state, correction) table for one (channel, class) pair.
#[derive(Debug, Clone, PartialEq)]
pub struct InstructionTable {
    pub channel: ChannelSpec,
    pub class: InputClass,
    /// Eight rows in outcome table order.
    pub rows: Vec<TableRow>,
}

/// Emission format.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Text,
    Json,
}

impl InstructionTable {
    /// Checks structural validity: eight distinct outcomes in table order and
    /// every row's correction actually restoring the row's family.
    pub fn validate(&self) -> Result<()> {
        if self.rows.len() != 8 {
            return Err(Error::InvalidTable(format!(
                "{} rows instead of 8",
                self.rows.len()
            )));
        }
        let target = self.class.target_embedding();
        for (i, row) in self.rows.iter().enumerate() {
            if row.outcome != MeasurementOutcome::ALL[i] {
                return Err(Error::InvalidTable(format!(
                    "row {i} carries outcome {:?}, expected {:?}",
                    row.outcome,
                    MeasurementOutcome::ALL[i]
                )));
            }
            if row.state.max_param() > self.class.free_params() {
                return Err(Error::InvalidTable(format!(
                    "row {i} references parameter {} of a {}-parameter class",
                    row.state.max_param(),
                    self.class.free_params()
                )));
            }
            let m = row.state.to_param_map(self.class.free_params());
            if correction_scale(row.correction, &m, &target).is_none() {
                return Err(Error::InvalidTable(format!(
                    "row {i} correction {} does not restore the family",
                    row.correction.spelling()
                )));
            }
        }
        Ok(())
    }

    /// Renders the table; both formats are deterministic.
    pub fn emit(&self, format: TableFormat) -> String {
        match format {
            TableFormat::Text => self.emit_text(),
            TableFormat::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("valid JSON");
                s.push('\n');
                s
            }
        }
    }

    fn emit_text(&self) -> String {
        let symbols = self.class.param_symbols();
        let mut rows_rendered: Vec<[String; 3]> = Vec::with_capacity(8);
        for row in &self.rows {
            let instruction = if row.correction == CorrectionOp::IDENTITY {
                "do nothing".to_string()
            } else {
                format!("apply {}", row.correction.spelling())
            };
            rows_rendered.push([
                row.outcome.label(),
                row.state.render(&symbols),
                instruction,
            ]);
        }
        let headers = ["Alice's measurement", "Bob's state", "Bob's instruction"];
        let width = |col: usize| {
            rows_rendered
                .iter()
                .map(|r| r[col].chars().count())
                .chain([headers[col].chars().count()])
                .max()
                .unwrap_or(0)
        };
        let (w0, w1) = (width(0), width(1));
        let pad = |s: &str, w: usize| {
            let n = s.chars().count();
            format!("{s}{}", " ".repeat(w.saturating_sub(n)))
        };
        let mut out = format!(
            "Channel {}: {}\nClass {}: {}\n\n{} | {} | {}\n",
            self.channel,
            self.channel.expression(),
            self.class,
            self.class.expression(),
            pad(headers[0], w0),
            pad(headers[1], w1),
            headers[2],
        );
        for r in &rows_rendered {
            out.push_str(&format!(
                "{} | {} | {}\n",
                pad(&r[0], w0),
                pad(&r[1], w1),
                r[2]
            ));
        }
        out
    }

    /// JSON document: { "channel", "class", "rows": [ { "bell", "canon",
    /// "state": 4 × [re, im] at the witness parameters (standard binary
    /// order), "correction": { "cnot", "p4", "p5" } } ] }.
    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let amps = row.state.eval_witness();
                json!({
                    "bell": row.outcome.bell.json_name(),
                    "canon": row.outcome.canon,
                    "state": amps.iter().map(|a| json!([a.re, a.im])).collect::<Vec<_>>(),
                    "correction": serde_json::to_value(row.correction).expect("serializable"),
                })
            })
            .collect();
        json!({
            "channel": self.channel.to_string(),
            "class": self.class.name(),
            "rows": rows,
        })
    }

    /// Parses a document produced by [`InstructionTable::emit`] with the JSON
    /// format; exact inverse on valid tables.
    pub fn from_json(doc: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct WireRow {
            bell: BellLabel,
            canon: u8,
            state: [[f64; 2]; 4],
            correction: CorrectionOp,
        }
        #[derive(Deserialize)]
        struct Wire {
            channel: ChannelSpec,
            class: InputClass,
            rows: Vec<WireRow>,
        }
        let wire: Wire = serde_json::from_str(doc)
            .map_err(|e| Error::InvalidTable(format!("malformed table document: {e}")))?;
        let rows = wire
            .rows
            .into_iter()
            .map(|r| {
                let amps = r.state.map(|[re, im]| Complex64::new(re, im));
                Ok(TableRow {
                    outcome: MeasurementOutcome { bell: r.bell, canon: r.canon },
                    state: SymbolicState::from_witness(&amps)?,
                    correction: r.correction,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(InstructionTable { channel: wire.channel, class: wire.class, rows })
    }
}

/// Renders an instruction table in the requested format.
pub fn emit_table(t: &InstructionTable, format: TableFormat) -> String {
    t.emit(format)
}

/// One transcribed row of a reference table, labels exactly as printed in
/// the source material (including its known duplicated-label slips).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GoldenRow {
    pub canon: u8,
    pub bell: BellLabel,
    /// Signed parameter placement in standard binary order.
    pub state: SymbolicState,
    pub correction: CorrectionOp,
    /// The instruction cell as printed.
    pub correction_text: String,
    /// Marks a row whose printed outcome label duplicates another row's.
    #[serde(default)]
    pub ambiguous: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// A transcribed reference table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GoldenTable {
    pub channel: ChannelSpec,
    pub class: InputClass,
    pub rows: Vec<GoldenRow>,
}

/// Match status of one reference row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    /// Content and printed label both agree with a generated row.
    Match,
    /// Content matches a generated row but under a different outcome label,
    /// and the reference marks the row as ambiguous.
    Flagged,
    /// No generated row carries this content, or the label disagrees on a
    /// row not marked ambiguous.
    Mismatch,
}

/// Per-row comparison outcome.
#[derive(Debug, Clone, Serialize)]
pub struct RowMatch {
    /// Printed label of the reference row.
    pub canon: u8,
    pub bell: BellLabel,
    pub status: RowStatus,
    /// Outcome of the generated row the content was matched to, if any.
    pub matched_outcome: Option<(u8, BellLabel)>,
}

/// Comparison result between a generated table and a reference table.
#[derive(Debug, Clone, Serialize)]
pub struct MatchReport {
    pub channel: ChannelSpec,
    pub class: InputClass,
    pub rows: Vec<RowMatch>,
    pub hard_mismatches: usize,
    pub flagged: usize,
}

impl MatchReport {
    pub fn clean(&self) -> bool {
        self.hard_mismatches == 0
    }
}

/// Compares by row content, not row position: a reference row matches a
/// generated row when their state families agree up to sign and both
/// corrections restore that family onto the class embedding. Label slips on
/// rows the reference marks ambiguous are flagged, not failed.
pub fn verify_against_golden(t: &InstructionTable, g: &GoldenTable) -> Result<MatchReport> {
    if t.channel != g.channel || t.class != g.class {
        return Err(Error::TableMismatch(format!(
            "generated ({}, {}) vs reference ({}, {})",
            t.channel, t.class, g.channel, g.class
        )));
    }
    let n_params = t.class.free_params();
    let target = t.class.target_embedding();
    let content_match = |gen_row: &TableRow, gold: &GoldenRow| -> bool {
        if !gen_row.state.equal_up_to_sign(gold.state) {
            return false;
        }
        let gold_map = gold.state.to_param_map(n_params);
        let gen_map = gen_row.state.to_param_map(n_params);
        correction_scale(gold.correction, &gold_map, &target).is_some()
            && correction_scale(gen_row.correction, &gen_map, &target).is_some()
    };

    let mut taken = [false; 8];
    let mut matched: Vec<Option<usize>> = vec![None; g.rows.len()];

    // First pass: consume generated rows whose outcome label agrees with the
    // printed label.
    for (gi, gold) in g.rows.iter().enumerate() {
        let outcome = MeasurementOutcome { bell: gold.bell, canon: gold.canon };
        let ti = outcome.index();
        if !taken[ti] && content_match(&t.rows[ti], gold) {
            taken[ti] = true;
            matched[gi] = Some(ti);
        }
    }
    // Second pass: remaining reference rows may match any unconsumed
    // generated row by content alone.
    for (gi, gold) in g.rows.iter().enumerate() {
        if matched[gi].is_some() {
            continue;
        }
        for (ti, gen_row) in t.rows.iter().enumerate() {
            if !taken[ti] && content_match(gen_row, gold) {
                taken[ti] = true;
                matched[gi] = Some(ti);
                break;
            }
        }
    }

    let mut rows = Vec::with_capacity(g.rows.len());
    let mut hard_mismatches = 0;
    let mut flagged = 0;
    for (gi, gold) in g.rows.iter().enumerate() {
        let status = match matched[gi] {
            Some(ti) => {
                let label_agrees = t.rows[ti].outcome
                    == MeasurementOutcome { bell: gold.bell, canon: gold.canon };
                if label_agrees {
                    RowStatus::Match
                } else if gold.ambiguous {
                    flagged += 1;
                    RowStatus::Flagged
                } else {
                    hard_mismatches += 1;
                    RowStatus::Mismatch
                }
            }
            None => {
                hard_mismatches += 1;
                RowStatus::Mismatch
            }
        };
        rows.push(RowMatch {
            canon: gold.canon,
            bell: gold.bell,
            status,
            matched_outcome: matched[gi].map(|ti| {
                let o = t.rows[ti].outcome;
                (o.canon, o.bell)
            }),
        });
    }
    Ok(MatchReport {
        channel: t.channel,
        class: t.class,
        rows,
        hard_mismatches,
        flagged,
    })
}

/// One transcribed reference channel list for a class.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReferenceList {
    pub class: InputClass,
    /// Support patterns as coefficient-name sets, e.g. [["a","h"], …].
    pub patterns: Vec<Vec<char>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct ReferenceListsFile {
    lists: Vec<ReferenceList>,
}

/// Environment variable overriding the reference-data directory.
pub const DATA_ENV: &str = "TELECHAN_DATA_DIR";

/// File names of the bundled reference tables.
pub const TABLE_FILES: [&str; 8] = [
    "table_diag_p000000p.json",
    "table_diag_00p00p00.json",
    "table_diag_0p0000p0.json",
    "table_diag_000pp000.json",
    "table_diag_p000p000.json",
    "table_diag_0pp00000.json",
    "table_diag_00000pp0.json",
    "table_diag_000p000p.json",
];

/// File name of the bundled reference channel lists.
pub const LISTS_FILE: &str = "channel_lists.json";

const EMBEDDED_TABLES: [&str; 8] = [
    include_str!("../data/table_diag_p000000p.json"),
    include_str!("../data/table_diag_00p00p00.json"),
    include_str!("../data/table_diag_0p0000p0.json"),
    include_str!("../data/table_diag_000pp000.json"),
    include_str!("../data/table_diag_p000p000.json"),
    include_str!("../data/table_diag_0pp00000.json"),
    include_str!("../data/table_diag_00000pp0.json"),
    include_str!("../data/table_diag_000p000p.json"),
];

const EMBEDDED_LISTS: &str = include_str!("../data/channel_lists.json");

fn data_dir() -> Option<PathBuf> {
    std::env::var_os(DATA_ENV).map(PathBuf::from)
}

/// Loads the eight reference instruction tables, from `TELECHAN_DATA_DIR`
/// when set, otherwise from the copies embedded at build time.
pub fn load_reference_tables() -> Result<Vec<GoldenTable>> {
    let mut out = Vec::with_capacity(TABLE_FILES.len());
    match data_dir() {
        Some(dir) => {
            for name in TABLE_FILES {
                let path = dir.join(name);
                let text = std::fs::read_to_string(&path).map_err(|e| {
                    Error::ReferenceData(format!("cannot read {}: {e}", path.display()))
                })?;
                out.push(parse_table(&text, name)?);
            }
        }
        None => {
            for (name, text) in TABLE_FILES.iter().zip(EMBEDDED_TABLES) {
                out.push(parse_table(text, name)?);
            }
        }
    }
    Ok(out)
}

fn parse_table(text: &str, name: &str) -> Result<GoldenTable> {
    serde_json::from_str(text)
        .map_err(|e| Error::ReferenceData(format!("malformed table {name}: {e}")))
}

/// Loads the reference channel lists (same override rules as the tables).
pub fn load_reference_lists() -> Result<Vec<ReferenceList>> {
    let text = match data_dir() {
        Some(dir) => {
            let path = dir.join(LISTS_FILE);
            std::fs::read_to_string(&path).map_err(|e| {
                Error::ReferenceData(format!("cannot read {}: {e}", path.display()))
            })?
        }
        None => EMBEDDED_LISTS.to_string(),
    };
    let file: ReferenceListsFile = serde_json::from_str(&text)
        .map_err(|e| Error::ReferenceData(format!("malformed channel lists: {e}")))?;
    Ok(file.lists)
}

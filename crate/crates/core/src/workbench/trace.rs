//! Replayable operation traces, stored as JSON lines: one header line with
//! the starting boards, then one line per event.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::board::{apply_moves, BoardState, Move, Variant, ZoneSel};
use crate::error::{Error, Result};
use crate::Rational;

pub(crate) mod ratio_str {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        s.parse::<Rational>().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoardId {
    Board,
    Left,
    Middle,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "action", rename_all = "kebab-case")]
pub enum Action {
    Setup,
    Align,
    Stage,
    Audit,
    Reflect,
    Commit,
    Renormalize,
    PartialProduct {
        #[serde(with = "ratio_str")]
        pebble: Rational,
    },
    Demote,
    Double,
    Halve,
    QuotientIncrement {
        position: i64,
        count: i64,
    },
    Round,
    Clear,
}

impl Action {
    pub fn label(&self) -> &'static str {
        match self {
            Action::Setup => "setup",
            Action::Align => "align",
            Action::Stage => "stage",
            Action::Audit => "audit",
            Action::Reflect => "reflect",
            Action::Commit => "commit",
            Action::Renormalize => "renormalize",
            Action::PartialProduct { .. } => "partial-product",
            Action::Demote => "demote",
            Action::Double => "double",
            Action::Halve => "halve",
            Action::QuotientIncrement { .. } => "quotient-increment",
            Action::Round => "round",
            Action::Clear => "clear",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceHeader {
    pub operation: String,
    pub base: u32,
    pub variant: Variant,
    pub boards: BTreeMap<BoardId, BoardState>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceEvent {
    pub step: usize,
    #[serde(flatten)]
    pub action: Action,
    pub board: BoardId,
    pub moves: Vec<Move>,
    /// Zones read for the snapshot below.
    pub zones: ZoneSel,
    #[serde(with = "ratio_str")]
    pub fraction: Rational,
    pub shift: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
enum Line {
    Header(TraceHeader),
    Event(TraceEvent),
}

/// One operation: starting boards plus the events that transform them.
#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub header: TraceHeader,
    pub events: Vec<TraceEvent>,
}

impl Trace {
    pub fn to_jsonl(&self) -> String {
        let mut out = serde_json::to_string(&Line::Header(self.header.clone())).expect("serializable");
        out.push('\n');
        for e in &self.events {
            out.push_str(&serde_json::to_string(&Line::Event(e.clone())).expect("serializable"));
            out.push('\n');
        }
        out
    }

    /// Parse one or more traces; every header line starts a new trace.
    pub fn parse_jsonl(text: &str) -> Result<Vec<Trace>> {
        let mut out: Vec<Trace> = Vec::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let parsed: Line = serde_json::from_str(line).map_err(|e| Error::Parse(format!("trace line {}: {e}", i + 1)))?;
            match parsed {
                Line::Header(h) => out.push(Trace { header: h, events: Vec::new() }),
                Line::Event(e) => match out.last_mut() {
                    Some(t) => t.events.push(e),
                    None => return Err(Error::Parse("trace event before any header".into())),
                },
            }
        }
        Ok(out)
    }

    /// Re-apply every move from the header boards and check each snapshot.
    pub fn replay(&self) -> Result<BTreeMap<BoardId, BoardState>> {
        let mut boards = self.header.boards.clone();
        for e in &self.events {
            let b = boards
                .get_mut(&e.board)
                .ok_or_else(|| Error::Replay { step: e.step, reason: format!("no board {:?}", e.board) })?;
            apply_moves(b, &e.moves).map_err(|err| Error::Replay { step: e.step, reason: err.to_string() })?;
            let (f, s) = b.read_value(e.zones);
            if f != e.fraction || s != e.shift {
                return Err(Error::Replay {
                    step: e.step,
                    reason: format!("expected {} e{} but board reads {f} e{s}", e.fraction, e.shift),
                });
            }
        }
        Ok(boards)
    }

    pub fn move_count(&self) -> usize {
        self.events.iter().map(|e| e.moves.len()).sum()
    }
}

pub fn to_jsonl(traces: &[Trace]) -> String {
    traces.iter().map(Trace::to_jsonl).collect()
}

/// Runs moves on a set of boards and records each step.
#[derive(Debug, Clone)]
pub(crate) struct Recorder {
    pub trace: Trace,
    pub boards: BTreeMap<BoardId, BoardState>,
}

impl Recorder {
    pub fn new(operation: &str, boards: Vec<(BoardId, BoardState)>) -> Self {
        let boards: BTreeMap<_, _> = boards.into_iter().collect();
        let cfg = &boards.values().next().expect("at least one board").config;
        let header = TraceHeader { operation: operation.into(), base: cfg.base, variant: cfg.variant, boards: boards.clone() };
        Recorder { trace: Trace { header, events: Vec::new() }, boards }
    }

    pub fn board(&self, id: BoardId) -> &BoardState {
        &self.boards[&id]
    }

    pub fn record(&mut self, id: BoardId, action: Action, zones: ZoneSel, moves: Vec<Move>) -> Result<()> {
        let b = self.boards.get_mut(&id).expect("board exists");
        apply_moves(b, &moves)?;
        let (fraction, shift) = b.read_value(zones);
        let step = self.trace.events.len() + 1;
        self.trace.events.push(TraceEvent { step, action, board: id, moves, zones, fraction, shift });
        Ok(())
    }

    pub fn finish(self) -> Trace {
        self.trace
    }
}

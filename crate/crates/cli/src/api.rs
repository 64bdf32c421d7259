//! JSON service for the trainer. Every request carries the full board
//! snapshot; nothing is kept between requests.

use abax_core::board::{apply_move, stage_moves};
use abax_core::codecs::parse_positional;
use abax_core::workbench::{trace, Scaled};
use abax_core::{BaseConfig, BoardState, Error, GridId, Layout, Move, Variant, ZoneSel};
use axum::extract::{Path, Query};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};
use std::collections::HashMap;

use crate::compute::{run_compute, ComputeRequest, Op};

#[derive(Debug, Clone, PartialEq)]
pub struct ApiError {
    pub status: StatusCode,
    pub body: Value,
}

impl ApiError {
    fn bad_request(msg: impl Into<String>) -> Self {
        ApiError { status: StatusCode::BAD_REQUEST, body: json!({ "error": msg.into() }) }
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Parse(_) | Error::DigitOutOfRange { .. } | Error::Invalid(_) | Error::Config(_) => StatusCode::BAD_REQUEST,
            _ => StatusCode::UNPROCESSABLE_ENTITY,
        };
        let mut body = json!({ "error": e.to_string() });
        if let Error::IllegalMove { at, reason } = &e {
            body["at"] = json!(at);
            body["reason"] = json!(reason);
        }
        ApiError { status, body }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(self.body)).into_response()
    }
}

pub type ApiResult = std::result::Result<Value, ApiError>;

fn parse_body<T: DeserializeOwned>(body: &str) -> std::result::Result<T, ApiError> {
    serde_json::from_str(body).map_err(|e| ApiError::bad_request(format!("malformed request: {e}")))
}

fn ratio(r: &abax_core::Rational) -> String {
    r.to_string()
}

pub fn config(base: &str, variant: Option<&str>) -> ApiResult {
    let base: u32 = base.parse().map_err(|_| ApiError::bad_request(format!("bad base {base:?}")))?;
    let variant: Variant = variant.unwrap_or("preferred").parse()?;
    let c = BaseConfig::new(base, variant)?;
    Ok(json!({
        "base": c.base,
        "variant": c.variant,
        "ladder": c.ladder,
        "rung_multiples": c.rung_multiples(),
        "canonical_bounds": (0..c.ladder.len()).map(|r| c.canonical_bound(r)).collect::<Vec<_>>(),
        "fraction_digits": c.fraction_digits,
        "exponent_digits": c.exponent_digits,
        "working_digits": c.working_digits(),
    }))
}

#[derive(Deserialize)]
struct ReadRequest {
    board: BoardState,
    #[serde(default = "both")]
    zones: ZoneSel,
}

fn both() -> ZoneSel {
    ZoneSel::Both
}

pub fn board_read(body: &str) -> ApiResult {
    let req: ReadRequest = parse_body(body)?;
    let (fraction, shift) = req.board.read_value(req.zones);
    let shift = if fraction == abax_core::Rational::from_integer(0.into()) { 0 } else { shift };
    Ok(json!({
        "fraction": ratio(&fraction),
        "shift": shift,
        "value": ratio(&req.board.value(req.zones)),
        "pebbles": req.board.pebble_count(),
        "canonical": req.board.is_canonical(abax_core::Zone::Committed),
    }))
}

#[derive(Deserialize)]
struct ValidateRequest {
    board: BoardState,
    #[serde(rename = "move")]
    mv: Move,
}

/// Apply one move to a copy of the board. Illegal moves answer 422 with the
/// rung and the reason.
pub fn move_validate(body: &str) -> ApiResult {
    let req: ValidateRequest = parse_body(body)?;
    let before = req.board.value(ZoneSel::Both);
    let mut after = req.board.clone();
    apply_move(&mut after, &req.mv)?;
    let delta = after.value(ZoneSel::Both) - before;
    Ok(json!({ "legal": true, "delta": ratio(&delta), "board": after }))
}

#[derive(Deserialize)]
struct PlanRequest {
    base: u32,
    #[serde(default)]
    variant: Variant,
    operands: Vec<String>,
    #[serde(default)]
    digits: Option<usize>,
    #[serde(default)]
    strategy: Option<String>,
    #[serde(default)]
    layout: Layout,
}

pub fn plan(op: &str, body: &str) -> ApiResult {
    let op: Op = serde_json::from_value(json!(op)).map_err(|_| ApiError::bad_request(format!("unknown operation {op:?}")))?;
    let p: PlanRequest = parse_body(body)?;
    let req = ComputeRequest {
        base: p.base,
        variant: p.variant,
        op,
        operands: p.operands,
        digits: p.digits,
        strategy: p.strategy,
        layout: p.layout,
    };
    let out = run_compute(&req)?;
    let lines: Vec<Value> = trace::to_jsonl(&out.traces)
        .lines()
        .map(|l| serde_json::from_str(l).expect("trace lines are JSON"))
        .collect();
    Ok(json!({
        "result": out.result,
        "fraction": ratio(&out.value.fraction),
        "shift": out.value.shift,
        "trace": lines,
    }))
}

#[derive(Deserialize)]
struct CheckRequest {
    board: BoardState,
    target: String,
}

/// Compare the staged zone with a target value, rung by rung against the
/// canonical placement of the target.
pub fn check_stage(body: &str) -> ApiResult {
    let req: CheckRequest = parse_body(body)?;
    let b = &req.board;
    let parsed = parse_positional(&req.target, b.base())?;
    let target = Scaled::from_positional(&parsed.number)?;
    let target_value = target.value(b.base());

    let mut clean = b.clone();
    for g in [GridId::Lower, GridId::Upper] {
        for at in clean.rungs_bottom_up(g) {
            let c = clean.counts_mut(at);
            c.sa = 0;
            c.ss = 0;
        }
    }
    let expected_moves = stage_moves(&clean, &target.fraction, target.shift)?;
    let mut expected = clean.clone();
    abax_core::board::apply_moves(&mut expected, &expected_moves)?;

    let staged_value = b.value(ZoneSel::Both) - clean.value(ZoneSel::Committed);
    let mut mismatches = Vec::new();
    for g in [GridId::Lower, GridId::Upper] {
        for at in b.rungs_bottom_up(g).into_iter().rev() {
            let have = b.counts(at).net(ZoneSel::Staged);
            let want = expected.counts(at).net(ZoneSel::Staged);
            if have != want {
                mismatches.push(json!({ "at": at, "label": at.to_string(), "staged": have, "expected": want }));
            }
        }
    }
    Ok(json!({
        "matches": staged_value == target_value,
        "staged_value": ratio(&staged_value),
        "target_value": ratio(&target_value),
        "mismatches": mismatches,
    }))
}

fn reply(r: ApiResult) -> Response {
    match r {
        Ok(v) => (StatusCode::OK, Json(v)).into_response(),
        Err(e) => e.into_response(),
    }
}

pub fn router() -> Router {
    Router::new()
        .route(
            "/api/config/{base}",
            get(|Path(base): Path<String>, Query(q): Query<HashMap<String, String>>| async move {
                reply(config(&base, q.get("variant").map(String::as_str)))
            }),
        )
        .route("/api/board/read", post(|body: String| async move { reply(board_read(&body)) }))
        .route("/api/move/validate", post(|body: String| async move { reply(move_validate(&body)) }))
        .route("/api/plan/{op}", post(|Path(op): Path<String>, body: String| async move { reply(plan(&op, &body)) }))
        .route("/api/check-stage", post(|body: String| async move { reply(check_stage(&body)) }))
}

pub async fn serve(port: u16) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(("127.0.0.1", port)).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router()).await
}

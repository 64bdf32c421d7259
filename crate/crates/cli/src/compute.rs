use abax_core::codecs::{format_positional, parse_positional, Style};
use abax_core::workbench::{self, heron_sqrt, load, multiply_with_layout, trace, MultiplyStep, Strategy};
use abax_core::{BaseConfig, BoardState, Error, Layout, Result, Rounding, Scaled, Trace, Variant};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
    Sqrt,
}

impl Op {
    pub fn arity(self) -> usize {
        if self == Op::Sqrt {
            1
        } else {
            2
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComputeRequest {
    pub base: u32,
    #[serde(default)]
    pub variant: Variant,
    pub op: Op,
    pub operands: Vec<String>,
    /// Significant digits of the result; defaults to the configuration's precision.
    #[serde(default)]
    pub digits: Option<usize>,
    /// `demote-first`, `double-halve-first`, or a comma-separated script of
    /// `line`, `double-halve` and `demote` steps.
    #[serde(default)]
    pub strategy: Option<String>,
    /// Multiplier layout for multiplication.
    #[serde(default)]
    pub layout: Layout,
}

#[derive(Debug, Clone)]
pub struct ComputeOutput {
    pub result: String,
    pub value: Scaled,
    pub traces: Vec<Trace>,
}

impl ComputeOutput {
    pub fn trace_jsonl(&self) -> String {
        trace::to_jsonl(&self.traces)
    }
}

pub fn parse_strategy(text: Option<&str>) -> Result<Strategy> {
    let text = match text {
        None => return Ok(Strategy::DemoteFirst),
        Some(t) => t.trim(),
    };
    match text {
        "demote-first" => return Ok(Strategy::DemoteFirst),
        "double-halve-first" => return Ok(Strategy::DoubleHalveFirst),
        _ => {}
    }
    let steps = text
        .split(',')
        .map(|s| match s.trim() {
            "line" => Ok(MultiplyStep::Line),
            "double-halve" => Ok(MultiplyStep::DoubleHalve),
            "demote" => Ok(MultiplyStep::Demote),
            other => Err(Error::Parse(format!("unknown strategy step {other:?}"))),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Strategy::Scripted(steps))
}

pub fn run_compute(req: &ComputeRequest) -> Result<ComputeOutput> {
    let config = BaseConfig::new(req.base, req.variant)?;
    let base = config.base;
    if req.operands.len() != req.op.arity() {
        return Err(Error::Parse(format!("{:?} takes {} operand(s), got {}", req.op, req.op.arity(), req.operands.len())));
    }
    let mut style = Style::Plain;
    let mut xs = Vec::new();
    for text in &req.operands {
        let p = parse_positional(text, base)?;
        if p.style == Style::Exponent {
            style = Style::Exponent;
        }
        xs.push(Scaled::from_positional(&p.number)?);
    }
    let fd = config.fraction_digits;
    let digits = req.digits.unwrap_or(fd);
    let (value, traces) = match req.op {
        Op::Add | Op::Sub => {
            let board = load(&BoardState::working(config.clone()), &xs[0])?;
            let (b, t) = if req.op == Op::Add {
                workbench::add(&board, &xs[1])?
            } else {
                workbench::subtract(&board, &xs[1])?
            };
            let v = workbench::read_scaled(&b);
            let v = match req.digits {
                Some(d) => round(&v, base, d)?,
                None => v,
            };
            (v, vec![t])
        }
        Op::Mul => {
            let strategy = parse_strategy(req.strategy.as_deref())?;
            let (v, t) = multiply_with_layout(&config, &xs[0], &xs[1], &strategy, digits, req.layout)?;
            (v, vec![t])
        }
        Op::Div => {
            let out = workbench::divide(&config, &xs[0], &xs[1], digits)?;
            (out.quotient, vec![out.trace])
        }
        Op::Sqrt => {
            let out = heron_sqrt(&config, &xs[0], digits)?;
            (out.root, out.traces)
        }
    };
    let shown = value.to_positional(base, config.working_digits(), Rounding::Truncate);
    Ok(ComputeOutput { result: format_positional(&shown, style), value, traces })
}

fn round(v: &Scaled, base: u32, digits: usize) -> Result<Scaled> {
    if digits == 0 {
        return Err(Error::Invalid("digit budget must be positive".into()));
    }
    Scaled::from_positional(&v.to_positional(base, digits, Rounding::Nearest))
}

use abax_core::analysis::{
    efficiency_table, embedded_zero_probability, min_pebbles, quarter_square_product, table_method_cost, trace_cost,
};
use abax_core::{Result, Trace};
use serde_json::{json, Value};

use crate::convert::{format_value, Notation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// A report: a JSON value and the equivalent text table.
pub struct Report {
    pub json: Value,
    pub text: String,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => serde_json::to_string_pretty(&self.json).expect("report serializes"),
        }
    }
}

fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cells: Vec<String>| {
        cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect::<Vec<_>>().join("  ").trim_end().to_string()
    };
    let mut out = vec![line(header.iter().map(|h| h.to_string()).collect())];
    out.extend(rows.iter().map(|r| line(r.clone())));
    out.join("\n")
}

pub fn efficiency(max_k: u32) -> Result<Report> {
    let rows = efficiency_table(max_k)?;
    let text_rows: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.k.to_string(),
                r.max_count_plain.to_string(),
                r.published_plain.to_string(),
                r.max_count_signed.to_string(),
                r.published_signed.to_string(),
            ]
        })
        .collect();
    let mut text = table(&["k", "plain", "plain (table)", "signed", "signed (table)"], &text_rows);
    let last = rows.last().expect("at least k = 0");
    let ratio = |s: u128, p: u128| if p == 0 { None } else { Some((2 * s + p) / (2 * p)) };
    let exact = ratio(last.max_count_signed, last.max_count_plain);
    let published = ratio(last.published_signed, last.published_plain);
    if let (Some(e), Some(p)) = (exact, published) {
        text.push_str(&format!("\nsigned/plain at k = {}: {e} exact, {p} from the table", last.k));
    }
    let json = json!({
        "rows": rows.iter().map(|r| json!({
            "k": r.k,
            "max_count_plain": r.max_count_plain.to_string(),
            "max_count_signed": r.max_count_signed.to_string(),
            "published_plain": r.published_plain.to_string(),
            "published_signed": r.published_signed.to_string(),
        })).collect::<Vec<_>>(),
        "ratio": exact,
        "published_ratio": published,
    });
    Ok(Report { json, text })
}

pub fn cost(operand_digits: u32, result_digits: u32) -> Result<Report> {
    let (p, c) = table_method_cost(operand_digits, result_digits)?;
    let rows = [
        ("partial products", p),
        ("additions", c.additions),
        ("table lookups", c.table_lookups),
        ("doublings", c.doublings),
        ("subtractions", c.subtractions),
        ("halvings", c.halvings),
        ("total", c.total),
    ];
    let text = table(&["", "count"], &rows.iter().map(|(k, v)| vec![k.to_string(), v.to_string()]).collect::<Vec<_>>());
    Ok(Report { json: json!({ "partial_products": p, "cost": c }), text })
}

pub fn zeros(base: u32, digits: u32, shown: usize) -> Result<Report> {
    if base < 2 || digits == 0 {
        return Err(abax_core::Error::Invalid("need base >= 2 and at least one digit".into()));
    }
    let p = embedded_zero_probability(base, digits);
    let dec = format_value(Notation::Decimal, &p, shown)?;
    let text = format!("P(embedded zero) for up to {digits} base-{base} digits = {p}\n  ~ {dec}");
    Ok(Report { json: json!({ "base": base, "digits": digits, "probability": p.to_string(), "decimal": dec }), text })
}

pub fn pebbles(n: u128) -> Report {
    let s = min_pebbles(n, true);
    let u = min_pebbles(n, false);
    Report {
        json: json!({ "n": n.to_string(), "signed": s, "unsigned": u }),
        text: table(&["n", "signed", "unsigned"], &[vec![n.to_string(), s.to_string(), u.to_string()]]),
    }
}

pub fn quarter_squares(a: u64, b: u64, table_only: bool) -> Result<Report> {
    let p = quarter_square_product(a, b, table_only)?;
    Ok(Report { json: json!({ "a": a, "b": b, "product": p }), text: format!("{a} x {b} = {p}") })
}

pub fn trace(traces: &[Trace]) -> Report {
    let c = trace_cost(traces);
    let mut rows: Vec<Vec<String>> = c.moves.iter().map(|(k, v)| vec!["move".into(), k.clone(), v.to_string()]).collect();
    rows.extend(c.actions.iter().map(|(k, v)| vec!["action".into(), k.clone(), v.to_string()]));
    rows.push(vec!["".into(), "total moves".into(), c.total.to_string()]);
    Report { json: serde_json::to_value(&c).expect("report serializes"), text: table(&["", "kind", "count"], &rows) }
}

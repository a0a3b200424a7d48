use serde::Serialize;
use serde_json::{Map, Value};

use crate::dynamics::{Orbit, OrbitRecord, OrbitState, Termination};
use crate::limits::{LimitPrediction, LimitRegime, OrderEstimate};
use crate::numerics::Real;
use crate::simplex::{TriangleParams, EDGE_LABELS};

use super::OutputFormat;

/// Renders reals as decimal strings with a fixed number of significant
/// digits.
#[derive(Clone, Copy, Debug)]
pub struct Decimal {
    pub digits: usize,
}

impl Decimal {
    pub fn fmt(&self, x: &Real) -> String {
        x.to_decimal(self.digits)
    }

    fn opt(&self, x: Option<&Real>) -> Option<String> {
        x.map(|x| self.fmt(x))
    }
}

/// Fixed leading CSV columns of an orbit.
pub const ORBIT_COLUMNS: [&str; 7] = ["step", "og2", "p", "pt", "prod_1234", "prod_1324", "prod_1423"];

fn termination_name(t: Termination) -> &'static str {
    match t {
        Termination::Completed => "completed",
        Termination::Converged => "converged",
        Termination::Stationary => "stationary",
    }
}

/// Regime-specific `(column, value)` pairs of a state.
fn state_fields(state: &OrbitState, drift: Option<&Real>, dec: Decimal) -> Vec<(String, String)> {
    match state {
        OrbitState::Params(p) => EDGE_LABELS
            .iter()
            .zip(p.values())
            .map(|(k, v)| (k.to_string(), dec.fmt(v)))
            .collect(),
        OrbitState::Triangle(t) => triangle_fields(t, dec),
        OrbitState::Trapezoid(t) => vec![
            ("a".into(), dec.fmt(&t.a)),
            ("b".into(), dec.fmt(&t.b)),
            ("g".into(), dec.fmt(&t.centroid_abscissa())),
        ],
        OrbitState::Vertices(c) => {
            let mut out = vec![("drift".to_string(), drift.map(|d| dec.fmt(d)).unwrap_or_default())];
            for (i, v) in c.vertices().iter().enumerate() {
                for (j, x) in v.coords().iter().enumerate() {
                    out.push((format!("v{}_{}", i + 1, j + 1), dec.fmt(x)));
                }
            }
            out
        }
    }
}

fn triangle_fields(t: &TriangleParams, dec: Decimal) -> Vec<(String, String)> {
    vec![("s".into(), dec.fmt(&t.s)), ("t".into(), dec.fmt(&t.t)), ("u".into(), dec.fmt(&t.u))]
}

#[derive(Serialize)]
struct RecordOut {
    step: usize,
    og2: String,
    pt: Option<String>,
    products: Option<[String; 3]>,
    params: Value,
    p: String,
}

#[derive(Serialize)]
struct OrbitOut<'a> {
    regime: &'a str,
    precision_bits: u32,
    termination: &'static str,
    records: Vec<RecordOut>,
}

fn record_out(r: &OrbitRecord, dec: Decimal) -> RecordOut {
    let params = match &r.state {
        OrbitState::Vertices(c) => {
            let mut m = Map::new();
            m.insert(
                "vertices".into(),
                Value::Array(
                    c.vertices()
                        .iter()
                        .map(|v| Value::Array(v.coords().iter().map(|x| Value::String(dec.fmt(x))).collect()))
                        .collect(),
                ),
            );
            m.insert("drift".into(), dec.opt(r.drift.as_ref()).map_or(Value::Null, Value::String));
            Value::Object(m)
        }
        state => Value::Object(
            state_fields(state, None, dec)
                .into_iter()
                .map(|(k, v)| (k, Value::String(v)))
                .collect(),
        ),
    };
    RecordOut {
        step: r.step,
        og2: dec.fmt(&r.og2),
        pt: dec.opt(r.pt.as_ref()),
        products: r.pair_products.as_ref().map(|ps| ps.clone().map(|x| dec.fmt(&x))),
        params,
        p: dec.fmt(&r.p),
    }
}

pub fn orbit_document(regime: &str, bits: u32, orbit: &Orbit, format: OutputFormat, dec: Decimal) -> String {
    match format {
        OutputFormat::Json => {
            let doc = OrbitOut {
                regime,
                precision_bits: bits,
                termination: termination_name(orbit.termination),
                records: orbit.records.iter().map(|r| record_out(r, dec)).collect(),
            };
            to_json(&doc)
        }
        OutputFormat::Csv => {
            let mut rows = Vec::with_capacity(orbit.records.len() + 1);
            for (i, r) in orbit.records.iter().enumerate() {
                let fields = state_fields(&r.state, r.drift.as_ref(), dec);
                if i == 0 {
                    let mut header: Vec<String> = ORBIT_COLUMNS.iter().map(|s| s.to_string()).collect();
                    header.extend(fields.iter().map(|(k, _)| k.clone()));
                    rows.push(header.join(","));
                }
                let products = match &r.pair_products {
                    Some(ps) => ps.clone().map(|x| dec.fmt(&x)),
                    None => Default::default(),
                };
                let mut row = vec![
                    r.step.to_string(),
                    dec.fmt(&r.og2),
                    dec.fmt(&r.p),
                    dec.opt(r.pt.as_ref()).unwrap_or_default(),
                ];
                row.extend(products);
                row.extend(fields.into_iter().map(|(_, v)| v));
                rows.push(row.join(","));
            }
            rows.join("\n") + "\n"
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

/// Renders ordered `(key, value)` pairs as one JSON object or a two-row CSV.
pub fn key_values(pairs: &[(&str, Value)], format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let m: Map<String, Value> = pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
            to_json(&Value::Object(m))
        }
        OutputFormat::Csv => {
            let header: Vec<&str> = pairs.iter().map(|(k, _)| *k).collect();
            let row: Vec<String> = pairs.iter().map(|(_, v)| csv_cell(v)).collect();
            format!("{}\n{}\n", header.join(","), row.join(","))
        }
    }
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Renders a header and rows as a JSON array of objects or as CSV.
pub fn table(header: &[&str], rows: &[Vec<Value>], format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let items: Vec<Value> = rows
                .iter()
                .map(|row| {
                    Value::Object(header.iter().map(|k| k.to_string()).zip(row.iter().cloned()).collect())
                })
                .collect();
            to_json(&items)
        }
        OutputFormat::Csv => {
            let mut out = header.join(",") + "\n";
            for row in rows {
                out += &row.iter().map(csv_cell).collect::<Vec<_>>().join(",");
                out.push('\n');
            }
            out
        }
    }
}

pub fn limit_pairs(lim: &LimitPrediction, isodynamic: bool, dec: Decimal) -> Vec<(&'static str, Value)> {
    let regime = match lim.regime {
        LimitRegime::Tetra => "tetra",
        LimitRegime::Quad => "quad",
    };
    vec![
        ("regime", Value::String(regime.into())),
        ("d12_inf", Value::String(dec.fmt(&lim.d12_inf))),
        ("d13_inf", Value::String(dec.fmt(&lim.d13_inf))),
        ("d14_inf", Value::String(dec.fmt(&lim.d14_inf))),
        ("l_factor", Value::String(dec.fmt(&lim.l_factor))),
        ("rate_r", Value::String(dec.fmt(&lim.rate_r))),
        ("isodynamic", Value::Bool(isodynamic)),
    ]
}

pub fn triangle_limit_pairs(t: &TriangleParams, dec: Decimal) -> Vec<(&'static str, Value)> {
    vec![
        ("regime", Value::String("triangle".into())),
        ("s", Value::String(dec.fmt(&t.s))),
        ("t", Value::String(dec.fmt(&t.t))),
        ("u", Value::String(dec.fmt(&t.u))),
    ]
}

pub fn order_pairs(regime: &str, records: usize, est: &OrderEstimate, dec: Decimal) -> Vec<(&'static str, Value)> {
    vec![
        ("regime", Value::String(regime.into())),
        ("records", Value::from(records)),
        ("order", Value::String(dec.fmt(&est.order))),
        ("constant", Value::String(dec.fmt(&est.constant))),
        ("lambda", dec.opt(est.lambda.as_ref()).map_or(Value::Null, Value::String)),
        ("residual", Value::String(dec.fmt(&est.residual))),
        ("points", Value::from(est.points)),
    ]
}

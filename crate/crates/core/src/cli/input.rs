use serde_json::Value;

use crate::dynamics::{OrbitState, TrapezoidState};
use crate::error::{Error, Result};
use crate::numerics::{Point, PrecisionPolicy, Real};
use crate::simplex::{gamma, params_from_vertices, EdgeParams, TriangleParams, VertexConfig};

use super::Regime;

/// Largest disagreement tolerated between vertices and parameters given
/// together.
const CROSS_CHECK: f64 = 1e-9;

/// Parsed `--input`: inline numbers, or a JSON document with `vertices`
/// and/or `params`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct InputDoc {
    pub regime: Option<Regime>,
    pub vertices: Option<Vec<Vec<Real>>>,
    pub params: Option<Vec<Real>>,
}

/// Resolves `@path` to the file contents.
pub fn read_input_text(raw: &str) -> Result<String> {
    match raw.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("cannot read {path}: {e}"))),
        None => Ok(raw.to_string()),
    }
}

pub fn parse_input(text: &str, policy: &PrecisionPolicy) -> Result<InputDoc> {
    let text = text.trim();
    if text.starts_with('{') {
        return parse_json(text, policy);
    }
    let params = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| policy.parse(s))
        .collect::<Result<Vec<_>>>()?;
    if params.is_empty() {
        return Err(Error::InvalidInput("empty input".into()));
    }
    Ok(InputDoc { params: Some(params), ..InputDoc::default() })
}

fn number(v: &Value, policy: &PrecisionPolicy) -> Result<Real> {
    match v {
        Value::Number(n) => policy.parse(&n.to_string()),
        Value::String(s) => policy.parse(s),
        other => Err(Error::InvalidInput(format!("expected a number, got {other}"))),
    }
}

fn numbers(v: &Value, policy: &PrecisionPolicy) -> Result<Vec<Real>> {
    v.as_array()
        .ok_or_else(|| Error::InvalidInput(format!("expected an array, got {v}")))?
        .iter()
        .map(|x| number(x, policy))
        .collect()
}

fn parse_json(text: &str, policy: &PrecisionPolicy) -> Result<InputDoc> {
    let doc: Value = serde_json::from_str(text)
        .map_err(|e| Error::InvalidInput(format!("malformed JSON input: {e}")))?;
    let obj = doc
        .as_object()
        .ok_or_else(|| Error::InvalidInput("JSON input must be an object".into()))?;
    let regime = match obj.get("regime") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(s.parse::<Regime>()?),
        Some(other) => return Err(Error::InvalidInput(format!("bad regime {other}"))),
    };
    let vertices = match obj.get("vertices") {
        None | Some(Value::Null) => None,
        Some(v) => Some(
            v.as_array()
                .ok_or_else(|| Error::InvalidInput("vertices must be an array of points".into()))?
                .iter()
                .map(|p| numbers(p, policy))
                .collect::<Result<Vec<_>>>()?,
        ),
    };
    let params = match obj.get("params") {
        None | Some(Value::Null) => None,
        Some(v) => Some(numbers(v, policy)?),
    };
    if vertices.is_none() && params.is_none() {
        return Err(Error::InvalidInput("JSON input needs vertices or params".into()));
    }
    Ok(InputDoc { regime, vertices, params })
}

fn expect_len(values: &[Real], n: usize, what: &str) -> Result<()> {
    if values.len() != n {
        return Err(Error::InvalidInput(format!(
            "{what} takes {n} numbers, got {}",
            values.len()
        )));
    }
    Ok(())
}

fn edge_params(values: &[Real], policy: &PrecisionPolicy) -> Result<EdgeParams> {
    expect_len(values, 6, "edge input (d12,d13,d14,d23,d24,d34)")?;
    EdgeParams::new(std::array::from_fn(|i| values[i].clone()), policy)
}

fn four_point_params(c: &VertexConfig, policy: &PrecisionPolicy) -> Result<EdgeParams> {
    EdgeParams::new(params_from_vertices(c)?.values().clone(), policy)
}

fn check_planarity(regime: Regime, p: &EdgeParams, policy: &PrecisionPolicy) -> Result<()> {
    if regime == Regime::Quad && gamma(p) > *policy.tolerance() {
        return Err(Error::NonPlanarInput);
    }
    Ok(())
}

fn disagreement() -> Error {
    Error::InvalidInput("params disagree with the vertices".into())
}

/// Initial orbit state for `regime`. Vertices are projected onto the unit
/// sphere; when both vertices and params are present the vertices win and the
/// params must agree with them.
pub fn state_from_input(
    regime: Regime,
    dim: usize,
    doc: &InputDoc,
    policy: &PrecisionPolicy,
) -> Result<OrbitState> {
    let cross = policy.from_f64(CROSS_CHECK);
    if let Some(raw) = &doc.vertices {
        let points: Vec<Point> = raw.iter().cloned().map(Point::new).collect();
        let config = VertexConfig::projected(points, policy)?;
        let state = match regime {
            Regime::Tetra | Regime::Quad => {
                let want_dim = if regime == Regime::Tetra { 3 } else { 2 };
                if config.dim() != want_dim || config.len() != 4 {
                    return Err(Error::InvalidInput(format!(
                        "{regime} input needs 4 vertices in dimension {want_dim}"
                    )));
                }
                let p = four_point_params(&config, policy)?;
                check_planarity(regime, &p, policy)?;
                if let Some(given) = &doc.params {
                    if edge_params(given, policy)?.max_abs_diff(&p) > cross {
                        return Err(disagreement());
                    }
                }
                OrbitState::Params(p)
            }
            Regime::Triangle => {
                let tp = TriangleParams::from_vertices(&config, policy)?;
                if let Some(given) = &doc.params {
                    if triangle(given, policy)?.max_abs_diff(&tp) > cross {
                        return Err(disagreement());
                    }
                }
                OrbitState::Triangle(tp)
            }
            Regime::Vertices => {
                if !(2..=20).contains(&config.dim()) {
                    return Err(Error::InvalidInput("vertex dimension must be in 2..=20".into()));
                }
                OrbitState::Vertices(config)
            }
            Regime::Trapezoid => {
                return Err(Error::InvalidInput(
                    "trapezoid input is the abscissa pair a,b".into(),
                ))
            }
        };
        return Ok(state);
    }
    let values = doc.params.as_deref().expect("vertices or params present");
    Ok(match regime {
        Regime::Tetra | Regime::Quad => {
            let p = edge_params(values, policy)?;
            check_planarity(regime, &p, policy)?;
            OrbitState::Params(p)
        }
        Regime::Triangle => OrbitState::Triangle(triangle(values, policy)?),
        Regime::Trapezoid => {
            expect_len(values, 2, "trapezoid input (a,b)")?;
            OrbitState::Trapezoid(TrapezoidState::new(values[0].clone(), values[1].clone(), policy)?)
        }
        Regime::Vertices => {
            if values.len() != (dim + 1) * dim {
                return Err(Error::InvalidInput(format!(
                    "vertices input in dimension {dim} takes {} coordinates",
                    (dim + 1) * dim
                )));
            }
            let points = values.chunks(dim).map(|c| Point::new(c.to_vec())).collect();
            OrbitState::Vertices(VertexConfig::projected(points, policy)?)
        }
    })
}

fn triangle(values: &[Real], policy: &PrecisionPolicy) -> Result<TriangleParams> {
    expect_len(values, 3, "triangle input (s,t,u)")?;
    TriangleParams::new(values[0].clone(), values[1].clone(), values[2].clone(), policy)
}

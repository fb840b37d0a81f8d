//! Curve-spec files: JSON documents `{"kind": "...", "params": {...}}`.
//!
//! Exact field lists per kind:
//! - `circle`: `radius` (required), `center` `[x,y,z]`, `normal` `[x,y,z]`
//! - `ellipse`: `a`, `b` (required), `center` `[x,y,z]`
//! - `harmonic-knot`: `x`, `y`, `z`, each `{"constant": c, "cos": [..], "sin": [..]}`
//!   where `cos[i]` multiplies `cos((i+1) u)`
//! - `helix`: `radius`, `length`, `turns_per_unit` (all required)
//! - `offset`: `base` (a nested curve spec), `delta`

use super::kinds::Harmonic;
use super::ParametricLoop;
use crate::error::{Error, Result};
use crate::real::Real;
use crate::vec3::Vec3;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurveSpec {
    pub kind: String,
    pub params: serde_json::Value,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
struct SeriesSpec {
    #[serde(default)]
    constant: f64,
    #[serde(default)]
    cos: Vec<f64>,
    #[serde(default)]
    sin: Vec<f64>,
}

#[derive(Debug, Deserialize)]
struct CircleParams {
    radius: f64,
    #[serde(default)]
    center: Option<[f64; 3]>,
    #[serde(default)]
    normal: Option<[f64; 3]>,
}

#[derive(Debug, Deserialize)]
struct EllipseParams {
    a: f64,
    b: f64,
    #[serde(default)]
    center: Option<[f64; 3]>,
}

#[derive(Debug, Deserialize)]
struct HarmonicParams {
    #[serde(default)]
    x: SeriesSpec,
    #[serde(default)]
    y: SeriesSpec,
    #[serde(default)]
    z: SeriesSpec,
}

#[derive(Debug, Deserialize)]
struct HelixParams {
    radius: f64,
    length: f64,
    turns_per_unit: f64,
}

#[derive(Debug, Deserialize)]
struct OffsetParams {
    base: CurveSpec,
    delta: f64,
}

impl CurveSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("curve spec parse: {e}")))
    }

    /// Builds the runtime curve described by this spec.
    pub fn build<T: Real>(&self) -> Result<ParametricLoop<T>> {
        let params = self.params.clone();
        let fail = |e: serde_json::Error| Error::Config(format!("curve params: {e}"));
        match self.kind.as_str() {
            "circle" => {
                let p: CircleParams = serde_json::from_value(params).map_err(fail)?;
                let center = vec3_of(p.center.unwrap_or([0.0, 0.0, 0.0]));
                let normal = vec3_of(p.normal.unwrap_or([0.0, 0.0, 1.0]));
                ParametricLoop::circle_at(T::of(p.radius), center, normal)
            }
            "ellipse" => {
                let p: EllipseParams = serde_json::from_value(params).map_err(fail)?;
                ParametricLoop::ellipse_at(
                    T::of(p.a),
                    T::of(p.b),
                    vec3_of(p.center.unwrap_or([0.0, 0.0, 0.0])),
                )
            }
            "harmonic-knot" => {
                let p: HarmonicParams = serde_json::from_value(params).map_err(fail)?;
                let kmax = [&p.x, &p.y, &p.z]
                    .iter()
                    .map(|s| s.cos.len().max(s.sin.len()))
                    .max()
                    .unwrap_or(0);
                if kmax == 0 {
                    return Err(Error::Config("harmonic-knot needs coefficients".into()));
                }
                let coeff = |v: &Vec<f64>, i: usize| v.get(i).copied().unwrap_or(0.0);
                let harmonics = (1..=kmax)
                    .map(|k| Harmonic {
                        k,
                        cos_coeff: Vec3::of(
                            coeff(&p.x.cos, k - 1),
                            coeff(&p.y.cos, k - 1),
                            coeff(&p.z.cos, k - 1),
                        ),
                        sin_coeff: Vec3::of(
                            coeff(&p.x.sin, k - 1),
                            coeff(&p.y.sin, k - 1),
                            coeff(&p.z.sin, k - 1),
                        ),
                    })
                    .collect();
                ParametricLoop::harmonic_knot(
                    Vec3::of(p.x.constant, p.y.constant, p.z.constant),
                    harmonics,
                )
            }
            "helix" => {
                let p: HelixParams = serde_json::from_value(params).map_err(fail)?;
                ParametricLoop::helix(T::of(p.radius), T::of(p.length), T::of(p.turns_per_unit))
            }
            "offset" => {
                let p: OffsetParams = serde_json::from_value(params).map_err(fail)?;
                let base: ParametricLoop<T> = p.base.build()?;
                base.offset_curve(T::of(p.delta))
            }
            other => Err(Error::Config(format!("unknown curve kind '{other}'"))),
        }
    }
}

fn vec3_of<T: Real>(a: [f64; 3]) -> Vec3<T> {
    Vec3::of(a[0], a[1], a[2])
}

/// Reads a curve from a JSON file.
pub fn load_curve<T: Real>(path: &std::path::Path) -> Result<ParametricLoop<T>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("reading {}: {e}", path.display())))?;
    CurveSpec::from_json(&text)?.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_circle() {
        let spec = CurveSpec::from_json(r#"{"kind":"circle","params":{"radius":2.0}}"#).unwrap();
        let c: ParametricLoop<f64> = spec.build().unwrap();
        assert!((c.total_arclength() - 4.0 * std::f64::consts::PI).abs() < 1e-10);
    }

    #[test]
    fn parses_trefoil_series() {
        let text = r#"{
            "kind": "harmonic-knot",
            "params": {
                "x": {"cos": [0.5, 2.0, 0.0, 0.0, 0.5]},
                "y": {"sin": [-0.5, 2.0, 0.0, 0.0, 0.5]},
                "z": {"sin": [0.0, 0.0, 1.0]}
            }
        }"#;
        let spec = CurveSpec::from_json(text).unwrap();
        let knot: ParametricLoop<f64> = spec.build().unwrap();
        let reference = ParametricLoop::<f64>::trefoil().unwrap();
        assert!((knot.total_arclength() - reference.total_arclength()).abs() < 1e-9);
    }

    #[test]
    fn rejects_unknown_kind() {
        let spec = CurveSpec::from_json(r#"{"kind":"lemniscate","params":{}}"#).unwrap();
        assert!(spec.build::<f64>().is_err());
    }
}

//! WebAssembly bindings for the static demo page in `www/`. Every export
//! takes plain strings and numbers and returns a JSON string.

use std::sync::Arc;

use serde::Serialize;
use serde_json::json;
use wasm_bindgen::prelude::*;

use flagstab_core::curvature::{analyze, CurveSpec};
use flagstab_core::{
    catalog_ids, catalog_space, solve_with_ansatz, stability_report, Ansatz, InvariantMetric,
    ReportOptions, SolveOptions, SpaceModel,
};

/// Start count above which a browser solve is refused.
pub const MAX_BROWSER_STARTS: usize = 5000;

fn space(id: &str) -> Result<Arc<SpaceModel>, String> {
    catalog_space(id).map(Arc::new).map_err(|e| e.to_string())
}

fn parse_coords(text: &str) -> Result<Vec<f64>, String> {
    text.split(',')
        .map(|t| {
            let t = t.trim();
            match t.split_once('/') {
                Some((p, q)) => {
                    let (p, q): (f64, f64) = (
                        p.trim().parse().map_err(|_| format!("bad number `{t}`"))?,
                        q.trim().parse().map_err(|_| format!("bad number `{t}`"))?,
                    );
                    Ok(p / q)
                }
                None => t.parse().map_err(|_| format!("bad number `{t}`")),
            }
        })
        .collect()
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes")
}

/// Catalog ids with their summand dimensions.
pub fn spaces_json() -> String {
    let list: Vec<_> = catalog_ids()
        .into_iter()
        .filter_map(|id| {
            catalog_space(&id)
                .ok()
                .map(|s| json!({ "id": id, "dims": s.dims() }))
        })
        .collect();
    to_json(&list)
}

/// Curvature of a metric, plus its stability report when it is Einstein.
pub fn analyze_json(space_id: &str, coords: &str) -> Result<String, String> {
    let s = space(space_id)?;
    let m = InvariantMetric::new(&s, parse_coords(coords)?).map_err(|e| e.to_string())?;
    let analysis = analyze(&m);
    let report = stability_report(&m, &ReportOptions::quoted()).ok();
    Ok(to_json(&json!({ "analysis": analysis, "report": report })))
}

/// `Sc_N` sampled along `base + t·direction` for `t` in `[t0, t1]`; points
/// that leave the positive cone are `null`.
pub fn scn_line_json(
    space_id: &str,
    base: &str,
    direction: &str,
    t0: f64,
    t1: f64,
    samples: usize,
) -> Result<String, String> {
    let s = space(space_id)?;
    let (base, direction) = (parse_coords(base)?, parse_coords(direction)?);
    if base.len() != s.r() || direction.len() != s.r() {
        return Err(format!("expected {} coordinates", s.r()));
    }
    let curve = CurveSpec::affine(&s, base, direction);
    let samples = samples.clamp(2, 2000);
    let points: Vec<_> = (0..samples)
        .map(|i| {
            let t = t0 + (t1 - t0) * i as f64 / (samples - 1) as f64;
            json!({ "t": t, "scn": curve.scn_at(t).ok() })
        })
        .collect();
    Ok(to_json(&points))
}

/// Multistart Einstein search on a catalog space.
pub fn solve_json(
    space_id: &str,
    starts: usize,
    seed: u64,
    ansatz: &str,
) -> Result<String, String> {
    if starts == 0 || starts > MAX_BROWSER_STARTS {
        return Err(format!("starts must be between 1 and {MAX_BROWSER_STARTS}"));
    }
    let s = space(space_id)?;
    let ansatz = if ansatz.trim().is_empty() {
        Ansatz::trivial(s.r())
    } else {
        Ansatz::parse(s.r(), ansatz).map_err(|e| e.to_string())?
    };
    let opts = SolveOptions {
        seed,
        ..SolveOptions::with_starts(starts)
    };
    let set = solve_with_ansatz(&s, &ansatz, &opts).map_err(|e| e.to_string())?;
    Ok(to_json(&set.summary()))
}

#[wasm_bindgen]
pub fn spaces() -> String {
    spaces_json()
}

#[wasm_bindgen(js_name = analyzeMetric)]
pub fn analyze_metric(space_id: &str, coords: &str) -> Result<String, JsError> {
    analyze_json(space_id, coords).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = scnAlongLine)]
pub fn scn_along_line(
    space_id: &str,
    base: &str,
    direction: &str,
    t0: f64,
    t1: f64,
    samples: usize,
) -> Result<String, JsError> {
    scn_line_json(space_id, base, direction, t0, t1, samples).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = solveEinstein)]
pub fn solve_einstein(
    space_id: &str,
    starts: usize,
    seed: u64,
    ansatz: &str,
) -> Result<String, JsError> {
    solve_json(space_id, starts, seed, ansatz).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    #[test]
    fn analyze_reports_einstein_metrics() {
        let v: Value = serde_json::from_str(&analyze_json("f4", "3,3,3,5,5,5").unwrap()).unwrap();
        assert!((v["analysis"]["two_rho"].as_f64().unwrap() - 7.0 / 36.0).abs() < 1e-15);
        assert_eq!(v["report"]["coindex"], 2);
        let v: Value = serde_json::from_str(&analyze_json("f4", "3,3,3,6,6,6").unwrap()).unwrap();
        assert!(v["report"].is_null());
        assert!(analyze_json("f4", "1,2").is_err());
        assert_eq!(parse_coords("1/4, 2").unwrap(), vec![0.25, 2.0]);
    }

    #[test]
    fn line_samples_mark_the_cone_boundary() {
        let text = scn_line_json("f3", "1,1,1", "1,0,0", -2.0, 1.0, 4).unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        assert!(v[0]["scn"].is_null());
        assert!((v[2]["scn"].as_f64().unwrap() - 2.5).abs() < 1e-12);
    }

    #[test]
    fn solve_small_space() {
        let v: Value = serde_json::from_str(&solve_json("f3", 50, 1, "").unwrap()).unwrap();
        assert_eq!(v["classes"].as_array().unwrap().len(), 2);
        assert!(solve_json("f3", 0, 1, "").is_err());
        assert!(spaces_json().contains("\"g2-t2\""));
    }
}

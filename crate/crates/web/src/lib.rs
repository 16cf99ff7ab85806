//! Browser bindings: multiply and draw diagrams, decide equality, and
//! compute matching-complex homology. Each binding wraps a plain function
//! that native tests call directly.

use wasm_bindgen::prelude::*;

use svbr::homology::{connectivity_report, matching_complex, reduced_homology, Multigraph};
use svbr::morse;
use svbr::render::svg;
use svbr::spraige::{multiply, svbr_equal, Budget, Spraige, Verdict};

fn parse(label: &str, text: &str) -> Result<Spraige, String> {
    Spraige::parse_file(text).map_err(|e| format!("{label}: {e}"))
}

/// The reduced product of two diagram files, as a diagram file.
pub fn product(a: &str, b: &str) -> Result<String, String> {
    let p = multiply(&parse("first diagram", a)?, &parse("second diagram", b)?).map_err(|e| e.to_string())?;
    Ok(p.to_file_string())
}

pub fn drawing(text: &str) -> Result<String, String> {
    Ok(svg(&parse("diagram", text)?))
}

pub fn equality(a: &str, b: &str, states: usize) -> Result<String, String> {
    let (x, y) = (parse("first diagram", a)?, parse("second diagram", b)?);
    Ok(match svbr_equal(&x, &y, Budget::with_states(states.max(1))) {
        Verdict::Equal(cert) => {
            let mut out = format!("Equal (script: {})", cert.summary());
            for m in cert.moves() {
                out.push_str(&format!("\n  {m}"));
            }
            out
        }
        Verdict::NotEqual => "NotEqual (the unbraided brick maps differ)".into(),
        Verdict::Unknown => "Unknown (no script found within the budget)".into(),
    })
}

/// Homology report of the matching complex of `graph`, followed by the
/// connectivity check at nu(n) - 1.
pub fn matching_report(graph: &str, max_dim: usize) -> Result<String, String> {
    let g: Multigraph = graph.parse().map_err(|e: svbr::homology::GraphError| e.to_string())?;
    if g.edges().len() > 40 {
        return Err("at most 40 edges in the browser".into());
    }
    let x = matching_complex(&g);
    let k = morse::nu(g.vertices() as i64) as isize - 1;
    Ok(format!(
        "f-vector: {:?}\n{}{}\n",
        x.f_vector(),
        reduced_homology(&x, max_dim.min(6)),
        connectivity_report(&x, k)
    ))
}

#[wasm_bindgen(js_name = multiply)]
pub fn multiply_js(a: &str, b: &str) -> Result<String, JsError> {
    product(a, b).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = render)]
pub fn render_js(text: &str) -> Result<String, JsError> {
    drawing(text).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = equal)]
pub fn equal_js(a: &str, b: &str, states: usize) -> Result<String, JsError> {
    equality(a, b, states).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = matchingHomology)]
pub fn matching_homology_js(graph: &str, max_dim: usize) -> Result<String, JsError> {
    matching_report(graph, max_dim).map_err(|e| JsError::new(&e))
}

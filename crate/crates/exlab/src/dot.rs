//! DOT export of a complex's skeleton, for rendering with Graphviz.

use num_traits::ToPrimitive;

use crate::bounds::Assignment;
use crate::complex::SimplicialComplex;
use crate::error::Error;
use crate::rational::{rat, rat_int, Rational};

/// Renders the skeleton as an undirected `graph`. Vertices show their
/// labels when the complex has them. With an assignment, each vertex is
/// shaded by its probability (white at 0 to mid-gray at 1) and the exact
/// value is appended to its label.
pub fn skeleton_dot(
    complex: &SimplicialComplex,
    assignment: Option<&Assignment>,
) -> Result<String, Error> {
    if let Some(a) = assignment {
        if a.len() != complex.n_vertices() {
            return Err(Error::AssignmentSizeMismatch {
                expected: complex.n_vertices(),
                found: a.len(),
            });
        }
    }
    let mut out = String::from("graph exclusivity {\n");
    out.push_str("  node [shape=circle, style=filled, fillcolor=gray100];\n");
    for v in 0..complex.n_vertices() {
        let mut label = match complex.label(v) {
            Some(text) => escape(text),
            None => v.to_string(),
        };
        let mut attrs = Vec::new();
        if let Some(a) = assignment {
            let p = &a.values()[v];
            label = format!("{label}\\n{p}");
            attrs.push(format!("fillcolor=gray{}", gray_level(p)));
        }
        attrs.insert(0, format!("label=\"{label}\""));
        out.push_str(&format!("  {v} [{}];\n", attrs.join(", ")));
    }
    let skeleton = complex.skeleton();
    for (u, v) in skeleton.edges() {
        out.push_str(&format!("  {u} -- {v};\n"));
    }
    out.push_str("}\n");
    Ok(out)
}

/// Maps a probability in [0,1] to a Graphviz gray level: 100 (white) down
/// to 50 (mid-gray), rounded to the nearest integer.
fn gray_level(p: &Rational) -> usize {
    let scaled = p * rat_int(50) + rat(1, 2);
    let rounded = scaled.floor().to_integer();
    100 - rounded.to_usize().expect("0 <= p <= 1 keeps this below 51")
}

fn escape(text: &str) -> String {
    text.replace('\\', "\\\\").replace('"', "\\\"")
}

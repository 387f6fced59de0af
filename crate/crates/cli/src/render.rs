//! Stable textual renderings of bound grids. Output must be byte-identical
//! across runs; everything here is a pure function of the grid.

use kneser_core::bounds::{BoundGrid, GridCell};

fn cell_text(cell: &GridCell) -> String {
    if cell.exact() {
        format!("{}", cell.lower.value)
    } else {
        format!("{}, {}", cell.lower.value, cell.upper.value)
    }
}

/// One line per cell: values plus theorem attributions.
pub fn grid_text(grid: &BoundGrid) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "Bounds on the r-Kneser Ramsey numbers, r = {}  (snapshot {})\n",
        grid.r, grid.snapshot
    ));
    out.push_str("(s,t)   value        lower-by             upper-by\n");
    for cell in &grid.cells {
        let exact = if cell.exact() { "  (exact)" } else { "" };
        out.push_str(&format!(
            "({},{})   {:<12} {:<20} {}{}\n",
            cell.s,
            cell.t,
            cell_text(cell),
            cell.lower.theorem.tag(),
            cell.upper.theorem.tag(),
            exact
        ));
    }
    out
}

/// Machine-readable rendering.
pub fn grid_json(grid: &BoundGrid) -> serde_json::Value {
    serde_json::json!({
        "r": grid.r,
        "snapshot": grid.snapshot,
        "cells": grid.cells.iter().map(|cell| {
            serde_json::json!({
                "s": cell.s,
                "t": cell.t,
                "lower": cell.lower.value,
                "upper": cell.upper.value,
                "exact": cell.exact(),
                "lower_by": cell.lower.theorem.tag(),
                "upper_by": cell.upper.theorem.tag(),
                "lower_inputs": cell.lower.inputs.iter().map(|u| {
                    serde_json::json!({"entry": u.entry, "value": u.value})
                }).collect::<Vec<_>>(),
                "upper_inputs": cell.upper.inputs.iter().map(|u| {
                    serde_json::json!({"entry": u.entry, "value": u.value})
                }).collect::<Vec<_>>(),
            })
        }).collect::<Vec<_>>(),
    })
}

/// A LaTeX tabular in the publication's upper-triangular layout.
pub fn grid_latex(grid: &BoundGrid) -> String {
    let mut out = String::new();
    out.push_str("\\begin{tabular}{|c||c|c|c|c|}\n\\hline\n");
    out.push_str("$s \\backslash t$ & $t=3$ & $t=4$ & $t=5$ & $t=6$\\\\\n\\hline\\hline\n");
    for s in 3u8..=6 {
        out.push_str(&format!("$s = {s}$"));
        for t in 3u8..=6 {
            out.push_str(" & ");
            if let Some(cell) = grid.cells.iter().find(|c| c.s == s && c.t == t) {
                out.push_str(&cell_text(cell));
            }
        }
        out.push_str("\\\\\n\\hline\n");
    }
    out.push_str("\\end{tabular}\n");
    out
}

//! alist text I/O for Tanner graphs.
//!
//! Layout: line 1 `n_var n_chk`; line 2 `max_dv max_dc`; line 3 the variable
//! degrees; line 4 the check degrees; then `n_var` lines of check neighbors
//! (1-based) and `n_chk` lines of variable neighbors. Entries of 0 are padding
//! and ignored. Internal indices are 0-based; conversion happens here.

use thiserror::Error;

use crate::tanner::TannerGraph;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("alist parse error at line {line}: {msg}")]
pub struct AlistError {
    pub line: usize,
    pub msg: String,
}

fn err(line: usize, msg: impl Into<String>) -> AlistError {
    AlistError { line, msg: msg.into() }
}

/// Serializes a graph in alist format. Neighbor lists are padded with zeros to
/// the maximum degree of their side.
pub fn write_alist(g: &TannerGraph) -> String {
    let max_dv = (0..g.n_var()).map(|v| g.var_degree(v)).max().unwrap_or(0);
    let max_dc = (0..g.n_chk()).map(|c| g.chk_degree(c)).max().unwrap_or(0);
    let mut out = String::new();
    out.push_str(&format!("{} {}\n", g.n_var(), g.n_chk()));
    out.push_str(&format!("{} {}\n", max_dv, max_dc));
    let nums = |ns: &[usize]| ns.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(" ");
    let degs: Vec<usize> = (0..g.n_var()).map(|v| g.var_degree(v)).collect();
    out.push_str(&nums(&degs));
    out.push('\n');
    let degs: Vec<usize> = (0..g.n_chk()).map(|c| g.chk_degree(c)).collect();
    out.push_str(&nums(&degs));
    out.push('\n');
    let mut padded = |adj: &[usize], width: usize| {
        let mut row: Vec<usize> = adj.iter().map(|&i| i + 1).collect();
        row.resize(width, 0);
        out.push_str(&nums(&row));
        out.push('\n');
    };
    for v in 0..g.n_var() {
        padded(g.var_adj(v), max_dv);
    }
    for c in 0..g.n_chk() {
        padded(g.chk_adj(c), max_dc);
    }
    out
}

/// Parses alist text into a graph. Degree declarations are checked against the
/// neighbor lists and both sides are checked for mutual consistency.
pub fn parse_alist(text: &str) -> Result<TannerGraph, AlistError> {
    let lines: Vec<&str> = text.lines().collect();
    let ints = |lineno: usize| -> Result<Vec<usize>, AlistError> {
        let raw = lines.get(lineno - 1).copied().unwrap_or("");
        raw.split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| err(lineno, format!("bad integer `{t}`"))))
            .collect()
    };

    let header = ints(1)?;
    if header.len() != 2 {
        return Err(err(1, "expected `n_var n_chk`"));
    }
    let (n_var, n_chk) = (header[0], header[1]);
    let maxes = ints(2)?;
    if maxes.len() != 2 {
        return Err(err(2, "expected `max_dv max_dc`"));
    }
    let var_degs = ints(3)?;
    if var_degs.len() != n_var {
        return Err(err(3, format!("expected {} variable degrees, got {}", n_var, var_degs.len())));
    }
    let chk_degs = ints(4)?;
    if chk_degs.len() != n_chk {
        return Err(err(4, format!("expected {} check degrees, got {}", n_chk, chk_degs.len())));
    }

    let read_side = |first_line: usize,
                     count: usize,
                     degs: &[usize],
                     other_count: usize|
     -> Result<Vec<Vec<usize>>, AlistError> {
        let mut adj = Vec::with_capacity(count);
        for i in 0..count {
            let lineno = first_line + i;
            let mut row: Vec<usize> = Vec::new();
            for x in ints(lineno)? {
                if x == 0 {
                    continue; // padding
                }
                if x > other_count {
                    return Err(err(lineno, format!("neighbor index {x} out of range")));
                }
                row.push(x - 1);
            }
            if row.len() != degs[i] {
                return Err(err(
                    lineno,
                    format!("declared degree {} but {} neighbors listed", degs[i], row.len()),
                ));
            }
            row.sort_unstable();
            if row.windows(2).any(|w| w[0] == w[1]) {
                return Err(err(lineno, "repeated neighbor"));
            }
            adj.push(row);
        }
        Ok(adj)
    };

    let var_adj = read_side(5, n_var, &var_degs, n_chk)?;
    let chk_adj = read_side(5 + n_var, n_chk, &chk_degs, n_var)?;

    let edges: Vec<(usize, usize)> =
        var_adj.iter().enumerate().flat_map(|(v, cs)| cs.iter().map(move |&c| (v, c))).collect();
    let g = TannerGraph::build(n_var, n_chk, &edges)
        .map_err(|e| err(5, format!("inconsistent graph: {e}")))?;
    for c in 0..n_chk {
        if g.chk_adj(c) != chk_adj[c].as_slice() {
            return Err(err(
                5 + n_var + c,
                "check-side neighbor list disagrees with variable-side lists",
            ));
        }
    }
    Ok(g)
}

//! Instance readers and writers.
//!
//! * Pauli text: one record per line, `#` starts a comment line, an optional
//!   numeric coefficient may precede the string (it is discarded).
//! * Edge list: `u v` per line with zero-based ids. `#` and `%` lines are
//!   comments, except that `# vertices N` fixes the vertex count (otherwise
//!   it is one past the largest id).
//! * MatrixMarket: `coordinate` matrices, one-based ids, any values ignored.
//! * Binary CSR, all integers little-endian:
//!
//!   | bytes      | content                        |
//!   |------------|--------------------------------|
//!   | 4          | magic `PCSR`                   |
//!   | 4          | `u32` version (1)              |
//!   | 8          | `u64` n                        |
//!   | 8          | `u64` nnz (= 2m)               |
//!   | 8 (n + 1)  | `u64` row offsets              |
//!   | 4 nnz      | `u32` neighbor ids, rows sorted |

use std::fmt::Write as _;
use std::path::Path;

use clap::ValueEnum;
use pcolor_core::{EdgeOracleView, ExplicitGraph, PauliError, PauliSet, PauliString};

use crate::error::{CliError, Result};

pub const CSR_MAGIC: &[u8; 4] = b"PCSR";
pub const CSR_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Pauli,
    Edgelist,
    Mtx,
}

impl InputFormat {
    /// Guess from the file extension; unknown extensions read as Pauli text.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("mtx") => InputFormat::Mtx,
            Some("edges" | "el" | "edgelist") => InputFormat::Edgelist,
            _ => InputFormat::Pauli,
        }
    }
}

/// A loaded problem: the graph whose complement-or-not view gets colored.
#[derive(Debug, Clone)]
pub enum Instance {
    /// Always colored on the implicit commutation (complement) graph.
    Pauli(PauliSet),
    Graph {
        graph: ExplicitGraph,
        complement: bool,
        self_loops: usize,
    },
}

impl Instance {
    pub fn view(&self) -> EdgeOracleView<'_> {
        match self {
            Instance::Pauli(set) => EdgeOracleView::pauli(set),
            Instance::Graph {
                graph,
                complement: true,
                ..
            } => EdgeOracleView::explicit_complement(graph),
            Instance::Graph { graph, .. } => EdgeOracleView::explicit(graph),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Instance::Pauli(set) => set.len(),
            Instance::Graph { graph, .. } => graph.num_vertices(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn mode_name(&self) -> &'static str {
        match self {
            Instance::Pauli(_) => "pauli-complement",
            Instance::Graph {
                complement: true, ..
            } => "explicit-complement",
            Instance::Graph { .. } => "explicit",
        }
    }
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

pub fn write_file(path: &Path, bytes: impl AsRef<[u8]>) -> Result<()> {
    std::fs::write(path, bytes).map_err(|e| CliError::io(path, e))
}

pub fn load_instance(path: &Path, format: Option<InputFormat>, complement: bool) -> Result<Instance> {
    let format = format.unwrap_or_else(|| InputFormat::from_path(path));
    if format == InputFormat::Pauli && complement {
        return Err(CliError::Usage(
            "--complement does not apply to Pauli input, which is always colored on its commutation graph".into(),
        ));
    }
    let text = read_text(path)?;
    Ok(match format {
        InputFormat::Pauli => Instance::Pauli(parse_pauli_text(&text, path)?),
        InputFormat::Edgelist => {
            let (graph, self_loops) = parse_edge_list(&text, path)?;
            Instance::Graph {
                graph,
                complement,
                self_loops,
            }
        }
        InputFormat::Mtx => {
            let (graph, self_loops) = parse_mtx(&text, path)?;
            Instance::Graph {
                graph,
                complement,
                self_loops,
            }
        }
    })
}

pub fn parse_pauli_text(text: &str, path: &Path) -> Result<PauliSet> {
    let mut strings = Vec::new();
    let mut width: Option<(usize, usize)> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        let word = match tokens.as_slice() {
            [w] => *w,
            [coef, w] => {
                parse_coefficient(coef)
                    .ok_or_else(|| CliError::parse(path, line, format!("bad coefficient {coef:?}")))?;
                *w
            }
            _ => {
                return Err(CliError::parse(
                    path,
                    line,
                    "expected `[coefficient] STRING`",
                ))
            }
        };
        let s = PauliString::parse(word, line)?;
        match width {
            None => width = Some((s.num_qubits(), line)),
            Some((w, _)) if w != s.num_qubits() => {
                return Err(PauliError::MixedLength {
                    line,
                    expected: w,
                    found: s.num_qubits(),
                }
                .into())
            }
            _ => {}
        }
        strings.push(s);
    }
    Ok(PauliSet::new(strings)?)
}

/// Real numbers, optionally written as a parenthesized complex `(a+bj)`.
fn parse_coefficient(tok: &str) -> Option<()> {
    if tok.parse::<f64>().is_ok() {
        return Some(());
    }
    let inner = tok.strip_prefix('(')?.strip_suffix(')')?;
    let body = inner.strip_suffix('j').or_else(|| inner.strip_suffix('i'))?;
    let split = body
        .char_indices()
        .skip(1)
        .filter(|&(i, c)| (c == '+' || c == '-') && !matches!(body.as_bytes()[i - 1], b'e' | b'E'))
        .last()?
        .0;
    body[..split].parse::<f64>().ok()?;
    body[split..].parse::<f64>().ok()?;
    Some(())
}

pub fn parse_edge_list(text: &str, path: &Path) -> Result<(ExplicitGraph, usize)> {
    let mut declared: Option<usize> = None;
    let mut edges = Vec::new();
    let mut max_id: Option<u32> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('#').or_else(|| trimmed.strip_prefix('%')) {
            let mut it = rest.split_whitespace();
            if it.next() == Some("vertices") {
                let n = it
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| CliError::parse(path, line, "bad `vertices` declaration"))?;
                declared = Some(n);
            }
            continue;
        }
        let mut it = trimmed.split_whitespace();
        let (u, v) = match (it.next(), it.next(), it.next()) {
            (Some(a), Some(b), None) => (parse_id(a, path, line)?, parse_id(b, path, line)?),
            _ => return Err(CliError::parse(path, line, "expected `u v`")),
        };
        max_id = Some(max_id.map_or(u.max(v), |m| m.max(u).max(v)));
        edges.push((u, v));
    }
    let n = declared.unwrap_or_else(|| max_id.map_or(0, |m| m as usize + 1));
    Ok(ExplicitGraph::from_edges(n, edges)?)
}

fn parse_id(tok: &str, path: &Path, line: usize) -> Result<u32> {
    tok.parse()
        .map_err(|_| CliError::parse(path, line, format!("bad vertex id {tok:?}")))
}

pub fn parse_mtx(text: &str, path: &Path) -> Result<(ExplicitGraph, usize)> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| CliError::parse(path, 1, "empty MatrixMarket file"))?;
    let head: Vec<String> = header.split_whitespace().map(str::to_ascii_lowercase).collect();
    if head.len() < 4 || head[0] != "%%matrixmarket" || head[1] != "matrix" || head[2] != "coordinate" {
        return Err(CliError::parse(
            path,
            1,
            "expected `%%MatrixMarket matrix coordinate ...` header",
        ));
    }
    let mut size: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, raw) in lines {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        let toks: Vec<&str> = trimmed.split_whitespace().collect();
        match size {
            None => {
                if toks.len() != 3 {
                    return Err(CliError::parse(path, line, "expected `rows cols entries`"));
                }
                let rows: usize = toks[0]
                    .parse()
                    .map_err(|_| CliError::parse(path, line, "bad row count"))?;
                let cols: usize = toks[1]
                    .parse()
                    .map_err(|_| CliError::parse(path, line, "bad column count"))?;
                if rows != cols {
                    return Err(CliError::parse(path, line, "adjacency matrix must be square"));
                }
                size = Some((rows, line));
            }
            Some((n, _)) => {
                if toks.len() < 2 {
                    return Err(CliError::parse(path, line, "expected `i j`"));
                }
                let i = parse_id(toks[0], path, line)?;
                let j = parse_id(toks[1], path, line)?;
                if i == 0 || j == 0 || i as usize > n || j as usize > n {
                    return Err(CliError::parse(
                        path,
                        line,
                        format!("entry ({i}, {j}) outside 1..={n}"),
                    ));
                }
                edges.push((i - 1, j - 1));
            }
        }
    }
    let (n, _) = size.ok_or_else(|| CliError::parse(path, 1, "missing size line"))?;
    Ok(ExplicitGraph::from_edges(n, edges)?)
}

pub fn edge_list_text(g: &ExplicitGraph) -> String {
    let mut out = format!("# vertices {}\n", g.num_vertices());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn mtx_text(g: &ExplicitGraph) -> String {
    let n = g.num_vertices();
    let mut out = String::from("%%MatrixMarket matrix coordinate pattern symmetric\n");
    let _ = writeln!(out, "{n} {n} {}", g.num_edges());
    for (u, v) in g.edges() {
        // lower triangle, as the symmetric storage convention expects
        let _ = writeln!(out, "{} {}", v + 1, u + 1);
    }
    out
}

pub fn csr_binary(g: &ExplicitGraph) -> Vec<u8> {
    let n = g.num_vertices();
    let nbr = g.neighbor_array();
    let mut out = Vec::with_capacity(24 + 8 * (n + 1) + 4 * nbr.len());
    out.extend_from_slice(CSR_MAGIC);
    out.extend_from_slice(&CSR_VERSION.to_le_bytes());
    out.extend_from_slice(&(n as u64).to_le_bytes());
    out.extend_from_slice(&(nbr.len() as u64).to_le_bytes());
    for &o in g.offsets() {
        out.extend_from_slice(&(o as u64).to_le_bytes());
    }
    for &v in nbr {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out
}

pub fn read_csr_binary(bytes: &[u8]) -> Result<ExplicitGraph> {
    let bad = |msg: &str| CliError::Usage(format!("binary CSR: {msg}"));
    if bytes.len() < 24 || &bytes[..4] != CSR_MAGIC {
        return Err(bad("missing PCSR header"));
    }
    let u32_at = |i: usize| u32::from_le_bytes(bytes[i..i + 4].try_into().unwrap());
    let u64_at = |i: usize| u64::from_le_bytes(bytes[i..i + 8].try_into().unwrap());
    if u32_at(4) != CSR_VERSION {
        return Err(bad("unsupported version"));
    }
    let n = u64_at(8) as usize;
    let nnz = u64_at(16) as usize;
    let need = n
        .checked_add(1)
        .and_then(|r| r.checked_mul(8))
        .and_then(|o| nnz.checked_mul(4).and_then(|e| e.checked_add(o)))
        .and_then(|b| b.checked_add(24));
    if need != Some(bytes.len()) {
        return Err(bad("length does not match header"));
    }
    let offsets = (0..=n).map(|i| u64_at(24 + 8 * i) as usize).collect();
    let base = 24 + 8 * (n + 1);
    let neighbors = (0..nnz).map(|k| u32_at(base + 4 * k)).collect();
    Ok(ExplicitGraph::from_csr(offsets, neighbors)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> &'static Path {
        Path::new("t")
    }

    #[test]
    fn edge_list_path_offsets() {
        let (g, loops) = parse_edge_list("0 1\n1 2", p()).unwrap();
        assert_eq!(g.offsets(), &[0, 1, 3, 4]);
        assert_eq!(loops, 0);
    }

    #[test]
    fn edge_list_dedup_and_loops() {
        let (g, loops) = parse_edge_list("# c\n0 1\n1 0\n2 2\n", p()).unwrap();
        assert_eq!(g.num_edges(), 1);
        assert_eq!(loops, 1);
        assert_eq!(g.num_vertices(), 3);
        let (g, _) = parse_edge_list("# vertices 10\n0 1\n", p()).unwrap();
        assert_eq!(g.num_vertices(), 10);
        assert!(parse_edge_list("0 1 2\n", p()).is_err());
        assert!(parse_edge_list("0 x\n", p()).is_err());
        assert!(parse_edge_list("# vertices 2\n0 5\n", p()).is_err());
    }

    #[test]
    fn mtx_triangle() {
        let text = "%%MatrixMarket matrix coordinate pattern symmetric\n% c\n3 3 3\n2 1\n3 1\n3 2\n";
        let (g, _) = parse_mtx(text, p()).unwrap();
        assert_eq!(g.num_edges(), 3);
        assert_eq!(g.max_degree(), 2);
        let (back, _) = parse_mtx(&mtx_text(&g), p()).unwrap();
        assert_eq!(back, g);
        assert!(parse_mtx("3 3 1\n1 2\n", p()).is_err());
        assert!(parse_mtx("%%MatrixMarket matrix coordinate pattern general\n2 2 1\n1 3\n", p()).is_err());
    }

    #[test]
    fn mtx_with_values() {
        let text = "%%MatrixMarket matrix coordinate real general\n2 2 2\n1 2 0.5\n2 1 0.5\n";
        let (g, _) = parse_mtx(text, p()).unwrap();
        assert_eq!(g.num_edges(), 1);
    }

    #[test]
    fn pauli_text_with_coefficients() {
        let text = "# h2\n0.5 XXYY\n-1e-3 ZIZI\n(0.1-2e-3j) YYXX\nIIII\n";
        let set = parse_pauli_text(text, p()).unwrap();
        assert_eq!(set.len(), 4);
        assert_eq!(set.num_qubits(), 4);
        assert_eq!(set.string(1).to_string(), "ZIZI");
    }

    #[test]
    fn pauli_text_errors_carry_lines() {
        let err = parse_pauli_text("XX\n# c\nXYZ\n", p()).unwrap_err();
        assert!(matches!(
            err,
            CliError::Pauli(PauliError::MixedLength { line: 3, expected: 2, found: 3 })
        ));
        let err = parse_pauli_text("XX\nXQ\n", p()).unwrap_err();
        assert!(matches!(err, CliError::Pauli(PauliError::BadSymbol { line: 2, symbol: 'Q' })));
        assert!(matches!(
            parse_pauli_text("abc XX\n", p()).unwrap_err(),
            CliError::Parse { line: 1, .. }
        ));
        assert!(matches!(
            parse_pauli_text("# nothing\n", p()).unwrap_err(),
            CliError::Pauli(PauliError::Empty)
        ));
    }

    #[test]
    fn csr_binary_round_trip() {
        let (g, _) = ExplicitGraph::from_edges(5, [(0, 1), (1, 2), (4, 0)]).unwrap();
        let bytes = csr_binary(&g);
        assert_eq!(&bytes[..4], b"PCSR");
        assert_eq!(bytes.len(), 24 + 8 * 6 + 4 * 6);
        assert_eq!(read_csr_binary(&bytes).unwrap(), g);
        assert!(read_csr_binary(&bytes[..bytes.len() - 1]).is_err());
        let (back, _) = parse_edge_list(&edge_list_text(&g), p()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn format_guess() {
        assert_eq!(InputFormat::from_path(Path::new("a.mtx")), InputFormat::Mtx);
        assert_eq!(InputFormat::from_path(Path::new("a.edges")), InputFormat::Edgelist);
        assert_eq!(InputFormat::from_path(Path::new("h.pauli")), InputFormat::Pauli);
    }
}

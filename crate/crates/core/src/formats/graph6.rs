//! graph6: printable ASCII, six bits per byte, upper triangle by columns.

use super::FormatError;
use crate::graph::Graph;

const HEADER: &[u8] = b">>graph6<<";

fn decode_size(bytes: &[u8]) -> Result<(usize, &[u8]), FormatError> {
    let sextet = |b: u8| -> Result<usize, FormatError> {
        if (63..=126).contains(&b) {
            Ok((b - 63) as usize)
        } else {
            Err(FormatError::MalformedHeader(format!("byte {b:#04x} outside graph6 range")))
        }
    };
    let take = |k: usize| -> Result<usize, FormatError> {
        if bytes.len() < k {
            return Err(FormatError::TruncatedRecord("graph6 vertex count".into()));
        }
        bytes[..k].iter().try_fold(0usize, |acc, &b| Ok((acc << 6) | sextet(b)?))
    };
    match bytes.first() {
        None => Err(FormatError::TruncatedRecord("empty graph6 record".into())),
        Some(126) if bytes.get(1) == Some(&126) => {
            let body = &bytes[2..];
            if body.len() < 6 {
                return Err(FormatError::TruncatedRecord("graph6 vertex count".into()));
            }
            let n = body[..6].iter().try_fold(0usize, |acc, &b| Ok::<_, FormatError>((acc << 6) | sextet(b)?))?;
            Ok((n, &body[6..]))
        }
        Some(126) => {
            let body = &bytes[1..];
            if body.len() < 3 {
                return Err(FormatError::TruncatedRecord("graph6 vertex count".into()));
            }
            let n = body[..3].iter().try_fold(0usize, |acc, &b| Ok::<_, FormatError>((acc << 6) | sextet(b)?))?;
            Ok((n, &body[3..]))
        }
        Some(_) => Ok((take(1)?, &bytes[1..])),
    }
}

/// Decodes a single graph6 record (optionally prefixed by `>>graph6<<`).
pub fn parse_graph6(record: &[u8]) -> Result<Graph, FormatError> {
    let mut rec = record.strip_prefix(HEADER).unwrap_or(record);
    while let Some((&last, rest)) = rec.split_last() {
        if last == b'\n' || last == b'\r' {
            rec = rest;
        } else {
            break;
        }
    }
    let (n, body) = decode_size(rec)?;
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    if body.len() < need {
        return Err(FormatError::TruncatedRecord(format!(
            "graph6 body has {} bytes, expected {need}",
            body.len()
        )));
    }
    if body.len() > need {
        return Err(FormatError::MalformedHeader(format!(
            "graph6 body has {} bytes, expected {need}",
            body.len()
        )));
    }
    let mut pairs = Vec::new();
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            let byte = body[k / 6];
            if !(63..=126).contains(&byte) {
                return Err(FormatError::MalformedHeader(format!("byte {byte:#04x} outside graph6 range")));
            }
            if (byte - 63) >> (5 - k % 6) & 1 == 1 {
                pairs.push((u, v));
            }
            k += 1;
        }
    }
    Ok(Graph::from_edge_list(n, pairs)?)
}

/// Decodes a newline-separated graph6 file; blank lines are skipped.
pub fn parse_graph6_file(bytes: &[u8]) -> Result<Vec<Graph>, FormatError> {
    let body = bytes.strip_prefix(HEADER).unwrap_or(bytes);
    body.split(|&b| b == b'\n')
        .filter(|line| !line.iter().all(|b| b.is_ascii_whitespace()))
        .map(parse_graph6)
        .collect()
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.vertex_count();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        out.extend((0..3).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    }
    let mut acc = 0u8;
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | g.has_edge(u, v) as u8;
            k += 1;
            if k % 6 == 0 {
                out.push(acc + 63);
                acc = 0;
            }
        }
    }
    if k % 6 != 0 {
        out.push((acc << (6 - k % 6)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_from_c_tilde() {
        let g = parse_graph6(b"C~").unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 6);
    }

    #[test]
    fn edgeless_five() {
        let g = parse_graph6(b"D??").unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (5, 0));
    }

    #[test]
    fn known_string_dqc() {
        // a-c, a-e, b-d, d-e on a..e
        let g = Graph::from_edge_list(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(to_graph6(&g), "DQc");
        assert_eq!(parse_graph6(b"DQc\n").unwrap(), g);
    }

    #[test]
    fn long_vertex_count() {
        let g = Graph::from_edge_list(100, [(0, 99), (5, 6)]).unwrap();
        let s = to_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(parse_graph6(s.as_bytes()).unwrap(), g);
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_graph6(b"C"), Err(FormatError::TruncatedRecord(_))));
        assert!(matches!(parse_graph6(b" ~"), Err(FormatError::MalformedHeader(_))));
        assert!(matches!(parse_graph6(b""), Err(FormatError::TruncatedRecord(_))));
    }

    #[test]
    fn file_with_header() {
        let gs = parse_graph6_file(b">>graph6<<C~\nD??\n\n").unwrap();
        assert_eq!(gs.len(), 2);
    }
}

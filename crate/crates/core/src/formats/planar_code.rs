//! planar_code, the binary plane-graph format written by plantri.
//!
//! Each record is the vertex count followed, for every vertex in turn, by
//! its neighbors (1-based) in rotation order and a terminating zero. Entries
//! are single bytes unless the record starts with a zero byte, in which case
//! the count and all entries are 16-bit words in the header's byte order
//! (little-endian when the header does not say).

use super::FormatError;
use crate::embedding::RotationSystem;
use crate::graph::Graph;

const HEADER: &[u8] = b">>planar_code";

/// A graph together with the embedding stored in the file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneGraph {
    pub graph: Graph,
    pub rotation: RotationSystem,
}

#[derive(Clone, Copy)]
enum Endian {
    Little,
    Big,
}

pub fn parse_planar_code(bytes: &[u8]) -> Result<Vec<PlaneGraph>, FormatError> {
    let mut endian = Endian::Little;
    let mut rest = bytes;
    if rest.starts_with(HEADER) {
        let close = rest
            .windows(2)
            .position(|w| w == b"<<")
            .ok_or_else(|| FormatError::MalformedHeader("unterminated planar_code header".into()))?;
        let tag = std::str::from_utf8(&rest[HEADER.len()..close])
            .map_err(|_| FormatError::MalformedHeader("non-ASCII planar_code header".into()))?;
        endian = match tag.trim() {
            "" | "le" => Endian::Little,
            "be" => Endian::Big,
            other => return Err(FormatError::MalformedHeader(format!("unknown planar_code variant {other:?}"))),
        };
        rest = &rest[close + 2..];
    } else if rest.starts_with(b">>") {
        return Err(FormatError::MalformedHeader("expected >>planar_code<< header".into()));
    }

    let mut out = Vec::new();
    let mut pos = 0;
    while pos < rest.len() {
        let wide = rest[pos] == 0;
        if wide {
            pos += 1;
        }
        let read = |pos: &mut usize| -> Result<usize, FormatError> {
            if wide {
                let w = rest
                    .get(*pos..*pos + 2)
                    .ok_or_else(|| FormatError::TruncatedRecord(format!("planar_code record {}", out.len())))?;
                *pos += 2;
                Ok(match endian {
                    Endian::Little => u16::from_le_bytes([w[0], w[1]]),
                    Endian::Big => u16::from_be_bytes([w[0], w[1]]),
                } as usize)
            } else {
                let b = *rest
                    .get(*pos)
                    .ok_or_else(|| FormatError::TruncatedRecord(format!("planar_code record {}", out.len())))?;
                *pos += 1;
                Ok(b as usize)
            }
        };
        let n = read(&mut pos)?;
        let mut rot = vec![Vec::new(); n];
        for r in rot.iter_mut() {
            loop {
                let x = read(&mut pos)?;
                if x == 0 {
                    break;
                }
                if x > n {
                    return Err(FormatError::MalformedHeader(format!("neighbor {x} exceeds vertex count {n}")));
                }
                r.push(x - 1);
            }
        }
        let mut pairs = Vec::new();
        for (v, r) in rot.iter().enumerate() {
            for &w in r {
                if v == w {
                    return Err(crate::graph::GraphError::SelfLoop(v).into());
                }
                if v < w {
                    pairs.push((v, w));
                }
            }
        }
        let graph = Graph::from_edge_list(n, pairs)?;
        let rotation = RotationSystem::new(&graph, rot)
            .map_err(|e| FormatError::MalformedHeader(format!("inconsistent rotation: {e}")))?;
        out.push(PlaneGraph { graph, rotation });
    }
    Ok(out)
}

/// Writes graphs with their rotations; uses 16-bit entries when `n > 255`.
pub fn write_planar_code<'a, I>(graphs: I) -> Vec<u8>
where
    I: IntoIterator<Item = (&'a Graph, &'a RotationSystem)>,
{
    let mut out = b">>planar_code<<".to_vec();
    for (g, rot) in graphs {
        let n = g.vertex_count();
        let wide = n > 255;
        let put = |x: usize, out: &mut Vec<u8>| {
            if wide {
                out.extend((x as u16).to_le_bytes());
            } else {
                out.push(x as u8);
            }
        };
        if wide {
            out.push(0);
        }
        put(n, &mut out);
        for v in 0..n {
            for &w in rot.rotation(v) {
                put(w + 1, &mut out);
            }
            put(0, &mut out);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::planar_embed;

    #[test]
    fn empty_file() {
        assert!(parse_planar_code(b"").unwrap().is_empty());
        assert!(parse_planar_code(b">>planar_code<<").unwrap().is_empty());
    }

    #[test]
    fn tetrahedron_by_hand() {
        // K4 with rotations 1:[2,3,4] 2:[1,4,3] 3:[1,2,4] 4:[1,3,2]
        let bytes = [4u8, 2, 3, 4, 0, 1, 4, 3, 0, 1, 2, 4, 0, 1, 3, 2, 0];
        let gs = parse_planar_code(&bytes).unwrap();
        assert_eq!(gs.len(), 1);
        assert_eq!(gs[0].graph.edge_count(), 6);
        assert!(gs[0].rotation.satisfies_euler(&gs[0].graph));
    }

    #[test]
    fn truncated() {
        let bytes = [4u8, 2, 3, 4, 0, 1, 4];
        assert!(matches!(parse_planar_code(&bytes), Err(FormatError::TruncatedRecord(_))));
        assert!(matches!(parse_planar_code(b">>planar_code xx<<"), Err(FormatError::MalformedHeader(_))));
    }

    #[test]
    fn round_trip_wide_and_narrow() {
        for n in [5usize, 300] {
            let g = Graph::from_edge_list(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap();
            let rot = planar_embed(&g).unwrap();
            let bytes = write_planar_code([(&g, &rot)]);
            let back = parse_planar_code(&bytes).unwrap();
            assert_eq!(back[0].graph, g);
            assert_eq!(back[0].rotation.rotations(), rot.rotations());
        }
    }
}

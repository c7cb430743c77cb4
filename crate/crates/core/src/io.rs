//! Plain-text edge lists (`n m` header, one `u v` per line) and cluster lists
//! (one cluster per line: `c v1 v2 …`).

use std::fmt::Write as _;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::graph::{ClusterFamily, Graph, VertexSet};

fn parse_usize(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| Error::Parse {
        line,
        msg: format!("missing {what}"),
    })?;
    tok.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("bad {what} `{tok}`"),
    })
}

fn content_lines<R: BufRead>(r: R) -> impl Iterator<Item = (usize, std::io::Result<String>)> {
    r.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| match l {
            Ok(s) => {
                let t = s.trim();
                !t.is_empty() && !t.starts_with('#')
            }
            Err(_) => true,
        })
}

pub fn read_edge_list<R: BufRead>(r: R) -> Result<Graph> {
    let mut lines = content_lines(r);
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing header".into(),
    })?;
    let header = header?;
    let mut it = header.split_whitespace();
    let n = parse_usize(it.next(), hline, "vertex count")?;
    let m = parse_usize(it.next(), hline, "edge count")?;
    let mut edges = Vec::with_capacity(m);
    for (lno, line) in lines {
        let line = line?;
        let mut it = line.split_whitespace();
        let u = parse_usize(it.next(), lno, "endpoint")?;
        let v = parse_usize(it.next(), lno, "endpoint")?;
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(Error::Parse {
            line: hline,
            msg: format!("header declares {m} edges, found {}", edges.len()),
        });
    }
    Graph::from_edges(n, edges)
}

pub fn write_edge_list<W: Write>(g: &Graph, mut w: W) -> Result<()> {
    let mut out = String::with_capacity(16 * (g.num_edges() + 1));
    writeln!(out, "{} {}", g.n(), g.num_edges()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    w.write_all(out.as_bytes())?;
    Ok(())
}

pub fn edge_list_string(g: &Graph) -> String {
    let mut buf = Vec::new();
    write_edge_list(g, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("ascii output")
}

/// Reads a cluster list; the host size must be supplied since the file does
/// not carry it.
pub fn read_clusters<R: BufRead>(r: R, host_n: usize) -> Result<ClusterFamily> {
    let mut clusters = Vec::new();
    for (lno, line) in content_lines(r) {
        let line = line?;
        let mut it = line.split_whitespace();
        if it.next() != Some("c") {
            return Err(Error::Parse {
                line: lno,
                msg: "cluster line must start with `c`".into(),
            });
        }
        let members = it
            .map(|t| parse_usize(Some(t), lno, "vertex"))
            .collect::<Result<Vec<_>>>()?;
        clusters.push(VertexSet::new(members));
    }
    ClusterFamily::new(host_n, clusters)
}

pub fn write_clusters<W: Write>(fam: &ClusterFamily, mut w: W) -> Result<()> {
    let mut out = String::new();
    for c in fam.clusters() {
        out.push('c');
        for v in c.members() {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
    }
    w.write_all(out.as_bytes())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_round_trip_sorts() {
        let g = Graph::from_edges(5, [(3, 1), (0, 4), (2, 1)]).unwrap();
        let s = edge_list_string(&g);
        assert_eq!(s, "5 3\n0 4\n1 2\n1 3\n");
        assert_eq!(read_edge_list(s.as_bytes()).unwrap(), g);
    }

    #[test]
    fn read_tolerates_reversed_and_unsorted() {
        let g = read_edge_list("4 3\n3 2\n# note\n1 0\n\n2 1\n".as_bytes()).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn read_errors() {
        assert!(matches!(
            read_edge_list("3 2\n0 1\n".as_bytes()),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            read_edge_list("3 1\n0 x\n".as_bytes()),
            Err(Error::Parse { line: 2, .. })
        ));
        assert_eq!(
            read_edge_list("3 1\n1 1\n".as_bytes()),
            Err(Error::SelfLoop(1))
        );
    }

    #[test]
    fn clusters_round_trip() {
        let fam = ClusterFamily::new(6, vec![vec![4, 2].into(), vec![0].into()]).unwrap();
        let mut buf = Vec::new();
        write_clusters(&fam, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "c 2 4\nc 0\n");
        assert_eq!(read_clusters(&buf[..], 6).unwrap(), fam);
        assert!(read_clusters("x 1\n".as_bytes(), 3).is_err());
    }
}

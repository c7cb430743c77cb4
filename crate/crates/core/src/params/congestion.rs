//! Treewidth lower bound from shortest-path congestion.
//!
//! If `tw(G) ≤ k` then some set `S` of `k+1` vertices leaves no component of
//! `G − S` with more than half of the `V` vertices. Every source terminal
//! outside `S` is then cut from at least `V/2 − |S|` vertices, so with `N`
//! sources at least `(N − s)(V/2 − s)` source-target pairs are cut by a
//! separator of size `s`, and each routes one unit of flow through `S`.
//! Spreading each pair's unit evenly over its shortest paths, the `s`
//! heaviest vertex loads must cover that many pairs. The smallest `s` for
//! which they do gives `tw ≥ s − 1`.

use crate::graph::{connected_components, Graph};

/// Sources per component vertex, with a floor on the count.
const SOURCE_FRACTION: f64 = 0.0625;
const MIN_SOURCES: usize = 64;

/// Vertex loads when every source sends one unit to every other vertex of
/// its component, split evenly across shortest paths (endpoints excluded).
pub fn source_loads(g: &Graph, sources: &[usize]) -> Vec<f64> {
    let n = g.n();
    // flat adjacency keeps the inner loops cache friendly
    let mut offset = Vec::with_capacity(n + 1);
    let mut flat = Vec::with_capacity(2 * g.num_edges());
    offset.push(0u32);
    for v in 0..n {
        flat.extend(g.neighbors(v).iter().map(|&w| w as u32));
        offset.push(flat.len() as u32);
    }
    let mut load = vec![0.0; n];
    let mut dist = vec![u32::MAX; n];
    let mut sigma = vec![0.0f64; n];
    let mut delta = vec![0.0f64; n];
    let mut order: Vec<u32> = Vec::with_capacity(n);
    for &s in sources {
        for &v in &order {
            dist[v as usize] = u32::MAX;
            sigma[v as usize] = 0.0;
            delta[v as usize] = 0.0;
        }
        order.clear();
        dist[s] = 0;
        sigma[s] = 1.0;
        order.push(s as u32);
        let mut head = 0;
        while head < order.len() {
            let v = order[head] as usize;
            head += 1;
            let (dv, sv) = (dist[v], sigma[v]);
            for &w in &flat[offset[v] as usize..offset[v + 1] as usize] {
                let w = w as usize;
                if dist[w] == u32::MAX {
                    dist[w] = dv + 1;
                    order.push(w as u32);
                }
                if dist[w] == dv + 1 {
                    sigma[w] += sv;
                }
            }
        }
        for &w in order[1..].iter().rev() {
            let w = w as usize;
            let coeff = (1.0 + delta[w]) / sigma[w];
            let up = dist[w] - 1;
            for &v in &flat[offset[w] as usize..offset[w + 1] as usize] {
                let v = v as usize;
                if dist[v] == up {
                    delta[v] += sigma[v] * coeff;
                }
            }
            load[w] += delta[w];
        }
    }
    load
}

/// Bound for a component of `size` vertices; `loads` must come from
/// [`source_loads`] with `sources` sources inside it.
pub fn bound_from_loads(loads: &[f64], sources: usize, size: usize) -> usize {
    let mut sorted = loads.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let half = size as f64 / 2.0;
    let mut top = 0.0;
    for s in 1..=sources.min(sorted.len()) {
        top += sorted[s - 1];
        let sf = s as f64;
        let cut = (sources as f64 - sf) * (half - sf).max(0.0);
        // rounding may only make the bound smaller
        if top >= cut * (1.0 - 1e-9) {
            return s - 1;
        }
    }
    0
}

/// Subgraph keeping at most `cap` edges per vertex, greedily preferring edges
/// whose endpoints have low degree. Hubs concentrate shortest-path load, so
/// thinning them gives a stronger bound even though it removes edges.
pub fn degree_capped(g: &Graph, cap: usize) -> Graph {
    let mut edges: Vec<(usize, usize, usize)> = g
        .edges()
        .map(|(u, v)| (g.degree(u) + g.degree(v), u, v))
        .collect();
    edges.sort_unstable();
    let mut kept = vec![0; g.n()];
    let mut out = Vec::new();
    for (_, u, v) in edges {
        if kept[u] < cap && kept[v] < cap {
            kept[u] += 1;
            kept[v] += 1;
            out.push((u, v));
        }
    }
    Graph::from_edges(g.n(), out).expect("subgraph of a valid graph")
}

/// Treewidth lower bound from the largest component of the degree-capped
/// subgraph (cap = average degree, at least 3), using evenly spaced sources.
pub fn congestion_treewidth_bound(g: &Graph) -> usize {
    if g.n() == 0 {
        return 0;
    }
    let avg = 2.0 * g.num_edges() as f64 / g.n() as f64;
    let capped = degree_capped(g, (avg.ceil() as usize).max(3));
    congestion_bound_with(&capped, SOURCE_FRACTION)
}

/// Bound on the largest component of `g` itself with `fraction · size`
/// sources.
pub fn congestion_bound_with(g: &Graph, fraction: f64) -> usize {
    let comps = connected_components(g);
    let Some(big) = comps.iter().max_by_key(|c| c.len()) else {
        return 0;
    };
    if big.len() < 3 {
        return 0;
    }
    let want = ((big.len() as f64 * fraction).ceil() as usize)
        .max(MIN_SOURCES)
        .min(big.len());
    let sources: Vec<usize> = (0..want)
        .map(|i| big.members()[i * big.len() / want])
        .collect();
    let loads = source_loads(g, &sources);
    bound_from_loads(&loads, sources.len(), big.len())
}

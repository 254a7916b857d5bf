//! Structural predicates used to prune candidate networks.

use super::spnet::{Kind, SpNet};

/// Edge list of the network graph. The terminals are nodes 1 and 0 and
/// internal nodes are numbered from 2 in depth-first order.
pub fn edges<T>(net: &SpNet<T>) -> Vec<(usize, usize, Kind)> {
    let mut out = Vec::new();
    let mut next = 2;
    walk(net, 1, 0, &mut next, &mut out);
    out
}

fn walk<T>(net: &SpNet<T>, a: usize, b: usize, next: &mut usize, out: &mut Vec<(usize, usize, Kind)>) {
    match net {
        SpNet::Element { kind, .. } => out.push((a, b, *kind)),
        SpNet::Parallel(c) => {
            for n in c {
                walk(n, a, b, next, out);
            }
        }
        SpNet::Series(c) => {
            let mut from = a;
            for (i, n) in c.iter().enumerate() {
                let to = if i + 1 == c.len() {
                    b
                } else {
                    *next += 1;
                    *next - 1
                };
                walk(n, from, to, next, out);
                from = to;
            }
        }
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let up = parent[y];
        parent[y] = r;
        y = up;
    }
    r
}

fn terminals_connected(edges: &[(usize, usize, Kind)], keep: impl Fn(Kind) -> bool) -> bool {
    let nodes = edges.iter().map(|e| e.0.max(e.1)).max().unwrap_or(1) + 1;
    let mut parent: Vec<usize> = (0..nodes).collect();
    for &(a, b, k) in edges {
        if keep(k) {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
    }
    find(&mut parent, 0) == find(&mut parent, 1)
}

/// True when some minimal terminal-separating cut consists only of
/// inductors or only of capacitors. Such a cut exists exactly when deleting
/// every element of that kind disconnects the terminals.
pub fn violates_cutset_rule<T>(net: &SpNet<T>) -> bool {
    let e = edges(net);
    [Kind::L, Kind::C]
        .into_iter()
        .any(|kind| e.iter().any(|x| x.2 == kind) && !terminals_connected(&e, |k| k != kind))
}

/// True when the top-level series decomposition has an arm built only from
/// inductors and capacitors.
pub fn has_pure_reactive_series_arm<T>(net: &SpNet<T>) -> bool {
    match net {
        SpNet::Series(c) => c.iter().any(|arm| arm.leaves().all(|(k, _)| k.is_reactive())),
        _ => false,
    }
}

/// No composite node has two leaf children of the same kind; such a pair
/// merges into a single element.
pub fn is_irreducible<T>(net: &SpNet<T>) -> bool {
    match net {
        SpNet::Element { .. } => true,
        SpNet::Series(c) | SpNet::Parallel(c) => {
            let mut seen = [false; 3];
            for n in c {
                if let SpNet::Element { kind, .. } = n {
                    let i = *kind as usize;
                    if seen[i] {
                        return false;
                    }
                    seen[i] = true;
                }
            }
            c.iter().all(is_irreducible)
        }
    }
}

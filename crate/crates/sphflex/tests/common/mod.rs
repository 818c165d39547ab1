//! Shared test helpers: exhaustive generation of small connected graphs.

#![allow(dead_code)]

use std::collections::BTreeSet;

use sphflex::graph::{Graph, Vertex};

/// Edge list on vertices `0..n`, normalized `a < b`.
type Edges = Vec<(usize, usize)>;

/// Colour refinement: stable vertex classes, ordered by a graph invariant.
fn refine(n: usize, edges: &Edges) -> Vec<usize> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut colour: Vec<usize> = adj.iter().map(|l| l.len()).collect();
    loop {
        let sig: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut s: Vec<usize> = adj[v].iter().map(|&u| colour[u]).collect();
                s.sort();
                (colour[v], s)
            })
            .collect();
        let distinct: BTreeSet<&(usize, Vec<usize>)> = sig.iter().collect();
        let index: Vec<&(usize, Vec<usize>)> = distinct.into_iter().collect();
        let next: Vec<usize> = sig
            .iter()
            .map(|s| index.iter().position(|x| *x == s).unwrap())
            .collect();
        let classes = |c: &Vec<usize>| c.iter().collect::<BTreeSet<_>>().len();
        if classes(&next) == classes(&colour) {
            return next;
        }
        colour = next;
    }
}

/// Canonical form: the lexicographically smallest sorted edge list over all
/// relabelings that respect the refined colour order.
fn canonical(n: usize, edges: &Edges) -> Edges {
    let colour = refine(n, edges);
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut order: Vec<usize> = colour.clone();
    order.sort();
    order.dedup();
    for c in order {
        classes.push((0..n).filter(|&v| colour[v] == c).collect());
    }
    let mut best: Option<Edges> = None;
    let mut perm = vec![0usize; n];
    fn rec(
        classes: &[Vec<usize>],
        k: usize,
        next_label: usize,
        perm: &mut Vec<usize>,
        edges: &Edges,
        best: &mut Option<Edges>,
    ) {
        if k == classes.len() {
            let mut e: Edges = edges
                .iter()
                .map(|&(a, b)| {
                    let (x, y) = (perm[a], perm[b]);
                    (x.min(y), x.max(y))
                })
                .collect();
            e.sort();
            if best.as_ref().is_none_or(|b| e < *b) {
                *best = Some(e);
            }
            return;
        }
        let mut members = classes[k].clone();
        permute(&mut members, 0, &mut |p: &[usize]| {
            for (i, &v) in p.iter().enumerate() {
                perm[v] = next_label + i;
            }
            rec(classes, k + 1, next_label + p.len(), perm, edges, best);
        });
    }
    rec(&classes, 0, 0, &mut perm, edges, &mut best);
    best.unwrap()
}

fn permute(items: &mut Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}

/// Every connected graph with `1..=max_edges` edges, one per isomorphism class.
pub fn connected_graphs(max_edges: usize) -> Vec<Graph> {
    let mut level: BTreeSet<(usize, Edges)> = BTreeSet::from([(2, vec![(0, 1)])]);
    let mut all = level.clone();
    for _ in 1..max_edges {
        let mut next = BTreeSet::new();
        for (n, edges) in &level {
            let present: BTreeSet<(usize, usize)> = edges.iter().copied().collect();
            for a in 0..*n {
                for b in a + 1..=*n {
                    let (m, e) = if b == *n { (n + 1, (a, b)) } else { (*n, (a, b)) };
                    if present.contains(&e) {
                        continue;
                    }
                    let mut grown = edges.clone();
                    grown.push(e);
                    next.insert((m, canonical(m, &grown)));
                }
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    all.into_iter()
        .map(|(n, edges)| {
            Graph::new(
                1..=n as Vertex,
                edges.iter().map(|&(a, b)| (a as Vertex + 1, b as Vertex + 1)),
            )
            .expect("generated graph is valid")
        })
        .collect()
}

/// [`connected_graphs`]`(8)`, computed once per test binary.
pub fn small_connected_graphs() -> &'static [Graph] {
    static CACHE: std::sync::OnceLock<Vec<Graph>> = std::sync::OnceLock::new();
    CACHE.get_or_init(|| connected_graphs(8))
}

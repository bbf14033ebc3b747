//! Exact shortest accepting runs for free-group registers.
//!
//! A run over a free group accepts iff the concatenated label letters freely
//! reduce to the empty word. That is a two-sided Dyck condition on a path,
//! so the shortest accepting run falls out of a Dijkstra search over pairs of
//! graph nodes instead of over register values.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::SimError;
use crate::algebra::{Element, FreeLetter};
use crate::automaton::GroupAutomaton;

const INF: u32 = u32::MAX;

/// Graph edge between (node, position) vertices. Each transition becomes a
/// chain of letter edges; only the first edge of the chain costs a step.
#[derive(Clone, Copy)]
struct Edge {
    from: usize,
    to: usize,
    letter: Option<FreeLetter>,
    weight: u32,
    /// Transition that starts here, if this is the first edge of its chain.
    transition: Option<usize>,
}

#[derive(Clone, Copy)]
enum Why {
    Refl,
    Edge(usize),
    Concat(usize),
    Wrap(usize, usize),
}

struct Graph {
    vertices: usize,
    edges: Vec<Edge>,
    into: Vec<Vec<usize>>,
    out_of: Vec<Vec<usize>>,
}

fn letters(value: &Element) -> Result<&[FreeLetter], SimError> {
    match value {
        Element::Free(w) => Ok(w.letters()),
        Element::Trivial => Ok(&[]),
        _ => Err(SimError::NotFree),
    }
}

fn build(a: &GroupAutomaton, input: &[usize]) -> Result<(Graph, usize), SimError> {
    let n = input.len();
    let positions = n + 1;
    let states = a.state_count();
    let mut chain_nodes = 0;
    let mut offsets = Vec::new();
    for t in 0..a.transitions().len() {
        offsets.push(states + chain_nodes);
        chain_nodes += letters(a.value(t))?.len().saturating_sub(1);
    }
    let width = states + chain_nodes;
    let vertex = |v: usize, pos: usize| pos * width + v;
    let mut edges = Vec::new();
    for (t, tr) in a.transitions().iter().enumerate() {
        let word = letters(a.value(t))?;
        for i in 0..positions {
            let j = match tr.symbol {
                None => i,
                Some(s) if input.get(i) == Some(&s) => i + 1,
                Some(_) => continue,
            };
            if word.is_empty() {
                edges.push(Edge {
                    from: vertex(tr.from, i),
                    to: vertex(tr.to, j),
                    letter: None,
                    weight: 1,
                    transition: Some(t),
                });
                continue;
            }
            let mut from = vertex(tr.from, i);
            for (k, &l) in word.iter().enumerate() {
                let to = if k + 1 == word.len() {
                    vertex(tr.to, j)
                } else {
                    vertex(offsets[t] + k, j)
                };
                edges.push(Edge {
                    from,
                    to,
                    letter: Some(l),
                    weight: u32::from(k == 0),
                    transition: (k == 0).then_some(t),
                });
                from = to;
            }
        }
    }
    let vertices = width * positions;
    let mut into = vec![Vec::new(); vertices];
    let mut out_of = vec![Vec::new(); vertices];
    for (e, edge) in edges.iter().enumerate() {
        if edge.letter.is_some() {
            into[edge.to].push(e);
            out_of[edge.from].push(e);
        }
    }
    Ok((
        Graph {
            vertices,
            edges,
            into,
            out_of,
        },
        width,
    ))
}

/// Shortest accepting run on `input` with no time bound, as transition
/// indices. `None` when no run accepts. Registers must be free (or trivial).
pub fn shortest_accepting_run(a: &GroupAutomaton, input: &[usize]) -> Result<Option<Vec<usize>>, SimError> {
    if let Some(&s) = input.iter().find(|&&s| s >= a.alphabet().len()) {
        return Err(SimError::BadInput(s));
    }
    letters(&a.spec().identity())?;
    let (g, width) = build(a, input)?;
    let nv = g.vertices;
    let mut t = Table {
        nv,
        dist: vec![INF; nv * nv],
        why: vec![Why::Refl; nv * nv],
        heap: BinaryHeap::new(),
    };
    let mut done = vec![false; nv * nv];
    let mut ends_at: Vec<Vec<usize>> = vec![Vec::new(); nv];
    let mut starts_at: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for u in 0..nv {
        t.offer(u, u, 0, Why::Refl);
    }
    for (e, edge) in g.edges.iter().enumerate() {
        if edge.letter.is_none() {
            t.offer(edge.from, edge.to, edge.weight, Why::Edge(e));
        }
    }
    while let Some(Reverse((d, u, v))) = t.heap.pop() {
        if done[u * nv + v] || d > t.get(u, v) {
            continue;
        }
        done[u * nv + v] = true;
        ends_at[v].push(u);
        starts_at[u].push(v);
        for &x in &ends_at[u] {
            t.offer(x, v, t.get(x, u) + d, Why::Concat(u));
        }
        for &y in &starts_at[v] {
            t.offer(u, y, d + t.get(v, y), Why::Concat(v));
        }
        for &e1 in &g.into[u] {
            let open = &g.edges[e1];
            let want = open.letter.map(FreeLetter::inv);
            for &e2 in &g.out_of[v] {
                let close = &g.edges[e2];
                if close.letter == want {
                    t.offer(open.from, close.to, open.weight + d + close.weight, Why::Wrap(e1, e2));
                }
            }
        }
    }

    let n = input.len();
    let start = a.initial();
    let best = a
        .accepting()
        .map(|q| (t.get(start, n * width + q), q))
        .filter(|&(d, _)| d != INF)
        .min();
    let Some((_, q)) = best else {
        return Ok(None);
    };
    let mut path = Vec::new();
    unfold(&g, &t.why, nv, start, n * width + q, &mut path);
    Ok(Some(
        path.into_iter().filter_map(|e| g.edges[e].transition).collect(),
    ))
}

struct Table {
    nv: usize,
    dist: Vec<u32>,
    why: Vec<Why>,
    heap: BinaryHeap<Reverse<(u32, usize, usize)>>,
}

impl Table {
    fn get(&self, u: usize, v: usize) -> u32 {
        self.dist[u * self.nv + v]
    }

    fn offer(&mut self, u: usize, v: usize, d: u32, w: Why) {
        let i = u * self.nv + v;
        if d < self.dist[i] {
            self.dist[i] = d;
            self.why[i] = w;
            self.heap.push(Reverse((d, u, v)));
        }
    }
}

/// Edge sequence behind `dist[u][v]`.
fn unfold(g: &Graph, why: &[Why], nv: usize, u: usize, v: usize, out: &mut Vec<usize>) {
    match why[u * nv + v] {
        Why::Refl => {}
        Why::Edge(e) => out.push(e),
        Why::Concat(m) => {
            unfold(g, why, nv, u, m, out);
            unfold(g, why, nv, m, v, out);
        }
        Why::Wrap(e1, e2) => {
            out.push(e1);
            unfold(g, why, nv, g.edges[e1].to, g.edges[e2].from, out);
            out.push(e2);
        }
    }
}

//! Region graphs: vertices are the regions of a descriptor, and an edge
//! `u -> v` between adjacent regions records that the inclusion of the fiber
//! on `u`'s side into the separating normal fiber is onto in the chosen
//! homology.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::abelian::Ring;
use crate::error::{Error, Result};
use crate::foldmap::{FoldMapDescriptor, Side};

/// Largest `l` accepted by [`minimal_starting_sets`].
pub const MAX_SEARCH_L: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GraphKind {
    Homology { degree: usize, ring: Ring },
    /// Surjectivity of `H_0` over every commutative ring, which is
    /// surjectivity on connected components.
    H0AllRings,
}

impl GraphKind {
    pub fn title(&self) -> String {
        match self {
            GraphKind::Homology { degree, ring } => format!("(H_{degree},{ring})"),
            GraphKind::H0AllRings => "(H_0,all rings)".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegionGraph {
    pub kind: GraphKind,
    /// One label per region, innermost first.
    pub labels: Vec<String>,
    pub edges: BTreeSet<(usize, usize)>,
}

impl RegionGraph {
    pub fn new(kind: GraphKind, vertex_count: usize, edges: BTreeSet<(usize, usize)>) -> Self {
        RegionGraph {
            kind,
            labels: (0..vertex_count).map(|i| i.to_string()).collect(),
            edges,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u, v))
    }

    /// Vertices reachable from `start` by directed paths, `start` included.
    pub fn reachable_from(&self, start: usize) -> Vec<bool> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        if start >= n {
            return seen;
        }
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(u) = queue.pop_front() {
            for &(_, v) in self.edges.range((u, 0)..(u + 1, 0)) {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }

    fn reach_matrix(&self) -> Vec<Vec<bool>> {
        (0..self.vertex_count()).map(|u| self.reachable_from(u)).collect()
    }
}

fn check_set(g: &RegionGraph, s: &BTreeSet<usize>) -> Result<()> {
    if s.is_empty() {
        return Err(Error::Precondition("a starting set must be non-empty".into()));
    }
    if let Some(&v) = s.iter().find(|&&v| v >= g.vertex_count()) {
        return Err(Error::Precondition(format!(
            "vertex {v} is not a region (regions are 0..={})",
            g.vertex_count().saturating_sub(1)
        )));
    }
    Ok(())
}

fn region_labels(d: &FoldMapDescriptor) -> Vec<String> {
    d.regions
        .iter()
        .map(|r| {
            let mut label = format!("{}: {}", r.index, r.fiber.label());
            if r.is_proper_core_region {
                label.push_str(" (proper core)");
            }
            if r.index == d.l {
                label.push_str(" (unbounded)");
            }
            label
        })
        .collect()
}

pub fn build_graph(d: &FoldMapDescriptor, degree: usize, ring: Ring) -> Result<RegionGraph> {
    if degree > 2 {
        return Err(Error::Parameter(format!(
            "graphs exist for degrees 0, 1, 2 only, got {degree}"
        )));
    }
    d.ensure_valid()?;
    let mut edges = BTreeSet::new();
    for c in &d.singular {
        for side in [Side::Inner, Side::Outer] {
            let h = d.require_inclusion(c.index, side, degree, ring)?;
            if h.is_surjective()? {
                let from = c.region_on(side);
                let to = match side {
                    Side::Inner => c.index,
                    Side::Outer => c.index - 1,
                };
                edges.insert((from, to));
            }
        }
    }
    Ok(RegionGraph {
        kind: GraphKind::Homology { degree, ring },
        labels: region_labels(d),
        edges,
    })
}

pub fn h0_all_rings_graph(d: &FoldMapDescriptor) -> Result<RegionGraph> {
    d.ensure_valid()?;
    let mut edges = BTreeSet::new();
    for c in &d.singular {
        for side in [Side::Inner, Side::Outer] {
            let h = d.require_inclusion(c.index, side, 0, Ring::Integers)?;
            let m = h.matrix();
            let onto = (0..m.rows()).all(|i| m.row(i).iter().any(|&x| x != 0));
            if onto {
                let from = c.region_on(side);
                let to = match side {
                    Side::Inner => c.index,
                    Side::Outer => c.index - 1,
                };
                edges.insert((from, to));
            }
        }
    }
    Ok(RegionGraph {
        kind: GraphKind::H0AllRings,
        labels: region_labels(d),
        edges,
    })
}

pub fn is_starting_set(g: &RegionGraph, s: &BTreeSet<usize>) -> Result<bool> {
    check_set(g, s)?;
    let mut covered = vec![false; g.vertex_count()];
    for &v in s {
        for (c, r) in covered.iter_mut().zip(g.reachable_from(v)) {
            *c |= r;
        }
    }
    Ok(covered.into_iter().all(|c| c))
}

/// All inclusion-minimal starting sets, in lexicographic order.
///
/// A set is a starting set exactly when it meets every strongly connected
/// component that no other component reaches, so the minimal ones pick one
/// vertex from each such component.
pub fn minimal_starting_sets(g: &RegionGraph) -> Result<Vec<BTreeSet<usize>>> {
    let n = g.vertex_count();
    if n > MAX_SEARCH_L + 1 {
        return Err(Error::Parameter(format!(
            "starting-set search is limited to l <= {MAX_SEARCH_L}, got l = {}",
            n - 1
        )));
    }
    let reach = g.reach_matrix();
    let mut source_classes: Vec<Vec<usize>> = Vec::new();
    let mut assigned = vec![false; n];
    for v in 0..n {
        if assigned[v] {
            continue;
        }
        let class: Vec<usize> = (0..n).filter(|&u| reach[v][u] && reach[u][v]).collect();
        for &u in &class {
            assigned[u] = true;
        }
        let is_source = (0..n).all(|u| !reach[u][v] || reach[v][u]);
        if is_source {
            source_classes.push(class);
        }
    }
    let mut sets: Vec<Vec<usize>> = vec![Vec::new()];
    for class in &source_classes {
        sets = sets
            .into_iter()
            .flat_map(|prefix| {
                class.iter().map(move |&v| {
                    let mut next = prefix.clone();
                    next.push(v);
                    next
                })
            })
            .collect();
    }
    let mut out: Vec<Vec<usize>> = sets
        .into_iter()
        .map(|mut s| {
            s.sort_unstable();
            s
        })
        .filter(|s| !s.is_empty())
        .collect();
    out.sort();
    Ok(out.into_iter().map(|s| s.into_iter().collect()).collect())
}

/// Every vertex is reached in both graphs from one common member of `s`.
pub fn start_equivalent(g1: &RegionGraph, g2: &RegionGraph, s: &BTreeSet<usize>) -> Result<bool> {
    if g1.vertex_count() != g2.vertex_count() {
        return Err(Error::Dimension(format!(
            "graphs have {} and {} vertices",
            g1.vertex_count(),
            g2.vertex_count()
        )));
    }
    check_set(g1, s)?;
    let reach: Vec<(Vec<bool>, Vec<bool>)> = s
        .iter()
        .map(|&v| (g1.reachable_from(v), g2.reachable_from(v)))
        .collect();
    Ok((0..g1.vertex_count()).all(|v| reach.iter().any(|(a, b)| a[v] && b[v])))
}

pub fn export_dot(g: &RegionGraph) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "digraph \"{}\" {{", g.kind.title());
    s.push_str("  rankdir=LR;\n");
    for (i, label) in g.labels.iter().enumerate() {
        let _ = writeln!(s, "  r{i} [label=\"{}\"];", label.replace('"', "\\\""));
    }
    for (u, v) in &g.edges {
        let _ = writeln!(s, "  r{u} -> r{v};");
    }
    s.push_str("}\n");
    s
}

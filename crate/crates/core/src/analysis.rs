//! State-diagram oracles for encoder tableaux.
//!
//! Vertices are memory states `M`. An edge `(M, S, L) -> (P, M')` exists for
//! every ancilla pattern `S` (`Z`-type only), logical label `L` and the
//! tableau's output `(P, M')`. Only the zero-physical subgraph (`P = I`) is
//! ever materialized, by solving the linear condition on the inputs.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::bits::BitVec;
use crate::code::ConvolutionalCode;
use crate::error::{Error, Result};
use crate::gf2::BinaryMatrix;
use crate::graph;
use crate::pauli::PauliOperator;
use crate::tableau::{CliffordTableau, FrameLayout};

/// Largest memory size analysed unless the caller raises the bound.
pub const DEFAULT_MEMORY_BOUND: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct StateDiagramEdge {
    pub m: PauliOperator,
    pub s_z: PauliOperator,
    pub l: PauliOperator,
    pub p: PauliOperator,
    pub m_prime: PauliOperator,
}

impl std::fmt::Display for StateDiagramEdge {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({}, {}, {}) -> ({}, {})",
            self.m, self.s_z, self.l, self.p, self.m_prime
        )
    }
}

/// Evaluates the tableau on one input triple.
pub fn edge(
    t: &CliffordTableau,
    layout: &FrameLayout,
    m: &PauliOperator,
    s_z: &PauliOperator,
    l: &PauliOperator,
) -> StateDiagramEdge {
    let out = t.apply(&layout.input(m, s_z, l));
    let (p, m_prime) = layout.split_output(&out);
    StateDiagramEdge {
        m: m.clone(),
        s_z: s_z.clone(),
        l: l.clone(),
        p,
        m_prime,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleWitness {
    pub vertices: Vec<PauliOperator>,
    pub edges: Vec<StateDiagramEdge>,
    pub logical_weight: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatastrophicVerdict {
    pub catastrophic: bool,
    pub witness: Option<CycleWitness>,
    pub zero_physical_edges: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecursionVerdict {
    pub non_recursive: bool,
    /// First edge (logical weight one) followed by the identity-input walk.
    pub witness: Option<Vec<StateDiagramEdge>>,
}

fn check_bound(layout: &FrameLayout, bound: usize) -> Result<()> {
    if layout.m > bound {
        return Err(Error::BoundExceeded { m: layout.m, bound });
    }
    Ok(())
}

/// Basis of the admissible inputs: memory `X`/`Z`, ancilla `Z`, logical
/// `X`/`Z`.
fn input_basis(layout: &FrameLayout) -> Vec<PauliOperator> {
    let w = layout.width();
    let mut basis = Vec::new();
    for q in 0..layout.m {
        basis.push(PauliOperator::single_x(w, q));
        basis.push(PauliOperator::single_z(w, q));
    }
    for a in 0..layout.s() {
        basis.push(PauliOperator::single_z(w, layout.m + a));
    }
    for q in layout.m + layout.s()..w {
        basis.push(PauliOperator::single_x(w, q));
        basis.push(PauliOperator::single_z(w, q));
    }
    basis
}

/// Every edge with identity physical output.
pub fn zero_physical_edges(
    t: &CliffordTableau,
    layout: &FrameLayout,
    bound: usize,
) -> Result<Vec<StateDiagramEdge>> {
    check_bound(layout, bound)?;
    if t.width() != layout.width() {
        return Err(Error::DimensionMismatch {
            expected: layout.width(),
            found: t.width(),
        });
    }
    let basis = input_basis(layout);
    let phys: Vec<BitVec> = basis
        .iter()
        .map(|b| layout.split_output(&t.apply(b)).0.to_symplectic())
        .collect();
    let kernel = BinaryMatrix::from_rows(2 * layout.n, phys)?.left_kernel();
    let solutions: Vec<PauliOperator> = kernel
        .iter()
        .map(|c| {
            let mut p = PauliOperator::identity(layout.width());
            for i in c.ones() {
                p.mul_assign(&basis[i]);
            }
            p
        })
        .collect();
    if solutions.len() >= 40 {
        return Err(Error::InvalidParameters(format!(
            "zero-physical input space has dimension {}, too large to enumerate",
            solutions.len()
        )));
    }
    let mut out = Vec::with_capacity(1 << solutions.len());
    for mask in 0u64..(1u64 << solutions.len()) {
        let mut input = PauliOperator::identity(layout.width());
        for (i, s) in solutions.iter().enumerate() {
            if (mask >> i) & 1 == 1 {
                input.mul_assign(s);
            }
        }
        let (mem, anc, info) = layout.split_input(&input);
        out.push(edge(t, layout, &mem, &anc, &info));
    }
    Ok(out)
}

struct Subgraph {
    vertices: Vec<PauliOperator>,
    index: HashMap<PauliOperator, usize>,
    edges: Vec<StateDiagramEdge>,
    pairs: Vec<(usize, usize)>,
}

impl Subgraph {
    fn new(edges: Vec<StateDiagramEdge>) -> Self {
        let mut vertices = Vec::new();
        let mut index = HashMap::new();
        let mut pairs = Vec::with_capacity(edges.len());
        for e in &edges {
            let mut id = |p: &PauliOperator| {
                *index.entry(p.clone()).or_insert_with(|| {
                    vertices.push(p.clone());
                    vertices.len() - 1
                })
            };
            let u = id(&e.m);
            let v = id(&e.m_prime);
            pairs.push((u, v));
        }
        Subgraph {
            vertices,
            index,
            edges,
            pairs,
        }
    }
}

/// Searches the zero-physical subgraph for a cycle carrying a non-identity
/// logical label.
///
/// An edge whose endpoints share a strongly connected component always lies
/// on a cycle, so the test reduces to one component computation.
pub fn detect_catastrophic(
    t: &CliffordTableau,
    layout: &FrameLayout,
    bound: usize,
) -> Result<CatastrophicVerdict> {
    let g = Subgraph::new(zero_physical_edges(t, layout, bound)?);
    let flags: Vec<bool> = g.edges.iter().map(|e| !e.l.is_identity()).collect();
    let cycle = graph::flagged_cycle(g.vertices.len(), &g.pairs, &flags);
    let witness = cycle.map(|ids| {
        let edges: Vec<StateDiagramEdge> = ids.iter().map(|&i| g.edges[i].clone()).collect();
        CycleWitness {
            vertices: edges.iter().map(|e| e.m.clone()).collect(),
            logical_weight: edges.iter().filter(|e| !e.l.is_identity()).count(),
            edges,
        }
    });
    Ok(CatastrophicVerdict {
        catastrophic: witness.is_some(),
        witness,
        zero_physical_edges: g.edges.len(),
    })
}

/// Single-qubit logical labels of weight one: qubit order, then `X`, `Z`, `Y`.
fn weight_one_labels(k: usize) -> Vec<PauliOperator> {
    let mut out = Vec::with_capacity(3 * k);
    for q in 0..k {
        let x = PauliOperator::single_x(k, q);
        let z = PauliOperator::single_z(k, q);
        let y = x.multiply(&z).expect("equal widths");
        out.extend([x, z, y]);
    }
    out
}

fn z_pattern(width: usize, mask: u64) -> PauliOperator {
    let z = BitVec::from_bools((0..width).map(|i| (mask >> i) & 1 == 1));
    PauliOperator::from_parts(BitVec::zeros(width), z).expect("equal lengths")
}

/// Looks for a path that leaves a zero-physical loop through an admissible
/// edge carrying a weight-one logical label, then follows identity ancilla
/// and logical inputs until it reaches a zero-physical loop again.
///
/// Start vertices are tried identity first, then in operator order; for each,
/// labels in qubit order (`X`, `Z`, `Y`) and ancilla patterns from the
/// identity upwards. The first success is returned as the witness.
pub fn verify_non_recursive(
    t: &CliffordTableau,
    layout: &FrameLayout,
    bound: usize,
) -> Result<RecursionVerdict> {
    let g = Subgraph::new(zero_physical_edges(t, layout, bound)?);
    let n_v = g.vertices.len();
    let comp = graph::strongly_connected_components(n_v, &g.pairs);
    let mut comp_size = vec![0usize; n_v];
    for &c in &comp {
        comp_size[c] += 1;
    }
    let on_loop: Vec<bool> = (0..n_v)
        .map(|v| comp_size[comp[v]] > 1 || g.pairs.iter().any(|&(a, b)| a == v && b == v))
        .collect();
    let is_loop_state = |p: &PauliOperator| g.index.get(p).is_some_and(|&v| on_loop[v]);

    let mut starts: Vec<usize> = (0..n_v).filter(|&v| on_loop[v]).collect();
    starts.sort_by(|&a, &b| {
        (!g.vertices[a].is_identity(), &g.vertices[a])
            .cmp(&(!g.vertices[b].is_identity(), &g.vertices[b]))
    });

    let s = layout.s();
    let id_anc = PauliOperator::identity(s);
    let id_info = PauliOperator::identity(layout.k);
    for &v in &starts {
        let m = &g.vertices[v];
        for l in weight_one_labels(layout.k) {
            for mask in 0u64..(1u64 << s) {
                let first = edge(t, layout, m, &z_pattern(s, mask), &l);
                let in_cycle = first.p.is_identity()
                    && g.index
                        .get(&first.m_prime)
                        .is_some_and(|&u| comp[u] == comp[v]);
                if in_cycle {
                    continue;
                }
                let mut path = vec![first.clone()];
                let mut seen = HashSet::new();
                let mut cur = first.m_prime.clone();
                let reached = loop {
                    if is_loop_state(&cur) {
                        break true;
                    }
                    if !seen.insert(cur.clone()) {
                        break false;
                    }
                    let e = edge(t, layout, &cur, &id_anc, &id_info);
                    cur = e.m_prime.clone();
                    path.push(e);
                };
                if reached {
                    return Ok(RecursionVerdict {
                        non_recursive: true,
                        witness: Some(path),
                    });
                }
            }
        }
    }
    Ok(RecursionVerdict {
        non_recursive: false,
        witness: None,
    })
}

/// Feeds `Z` on ancilla `i` in frame 1 and identities afterwards; checks the
/// emitted physical blocks are `h_{i,1} .. h_{i,l_i}` and the memory ends at
/// the identity, for every generator.
pub fn roundtrip_verify(
    t: &CliffordTableau,
    layout: &FrameLayout,
    code: &ConvolutionalCode,
) -> bool {
    if t.width() != layout.width() || layout.n != code.n() || layout.k != code.k() {
        return false;
    }
    let id_anc = PauliOperator::identity(layout.s());
    let id_info = PauliOperator::identity(layout.k);
    code.generators().iter().enumerate().all(|(i, h)| {
        let mut mem = PauliOperator::identity(layout.m);
        for (j, block) in h.blocks().iter().enumerate() {
            let anc = if j == 0 {
                PauliOperator::single_z(layout.s(), i)
            } else {
                id_anc.clone()
            };
            let e = edge(t, layout, &mem, &anc, &id_info);
            if &e.p != block {
                return false;
            }
            mem = e.m_prime;
        }
        mem.is_identity()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableau::parse_tableau;

    const CATASTROPHIC: &str = "m=1\nn=1\nk=1\nx XI\nz ZZ\nx XX\nz IZ\n";

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    /// Memory passes straight through; ancilla and information go to the
    /// physical qubits.
    fn pass_through(m: usize, n: usize, k: usize) -> (FrameLayout, CliffordTableau) {
        let layout = FrameLayout::new(m, n, k).unwrap();
        let w = m + n;
        let mut images = Vec::new();
        for q in 0..w {
            let target = if q < m { n + q } else { q - m };
            images.push(PauliOperator::single_x(w, target));
            images.push(PauliOperator::single_z(w, target));
        }
        (layout, CliffordTableau::from_images(images).unwrap())
    }

    #[test]
    fn catastrophic_fixture_has_self_loop_at_x() {
        let (layout, t) = parse_tableau(CATASTROPHIC).unwrap();
        let v = detect_catastrophic(&t, &layout, DEFAULT_MEMORY_BOUND).unwrap();
        assert!(v.catastrophic);
        let w = v.witness.unwrap();
        assert_eq!(w.vertices, vec![p("X")]);
        assert_eq!(w.edges[0].l, p("X"));
        assert_eq!(w.edges[0].p, p("I"));
        assert_eq!(w.edges[0].m_prime, p("X"));
        assert_eq!(w.logical_weight, 1);
    }

    #[test]
    fn pass_through_zero_physical_edges_have_identity_logical() {
        let (layout, t) = pass_through(2, 3, 1);
        let edges = zero_physical_edges(&t, &layout, DEFAULT_MEMORY_BOUND).unwrap();
        assert_eq!(edges.len(), 16);
        assert!(edges
            .iter()
            .all(|e| e.l.is_identity() && e.s_z.is_identity() && e.m_prime == e.m));
        assert!(
            !detect_catastrophic(&t, &layout, DEFAULT_MEMORY_BOUND)
                .unwrap()
                .catastrophic
        );
        let r = verify_non_recursive(&t, &layout, DEFAULT_MEMORY_BOUND).unwrap();
        assert!(r.non_recursive);
        let w = r.witness.unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].l, p("X"));
        assert!(w[0].m_prime.is_identity());
    }

    #[test]
    fn memory_bound_is_enforced() {
        let (layout, t) = pass_through(3, 2, 1);
        assert_eq!(
            zero_physical_edges(&t, &layout, 2),
            Err(Error::BoundExceeded { m: 3, bound: 2 })
        );
        assert!(detect_catastrophic(&t, &layout, 2).is_err());
        assert!(verify_non_recursive(&t, &layout, 2).is_err());
    }
}

//! Encoder synthesis: memory commutativity, minimal memory, the partial
//! encoder table and the rows added to make the encoder non-catastrophic.
//!
//! Generator `i` is produced by feeding `Z` on ancilla `i` in frame 1 and
//! identities afterwards. Row `j` of generator `i` maps
//! `(g_{i,j-1}, [Z_i if j = 1], I) -> (h_{i,j}, g_{i,j})` with
//! `g_{i,0} = g_{i,l_i} = I`.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bits::BitVec;
use crate::code::{validate_code, ConvolutionalCode};
use crate::error::{Error, Result};
use crate::gf2::{rank_of, BinaryMatrix};
use crate::graph;
use crate::pauli::{swap_halves, PauliOperator};
use crate::symplectic::{commutation_matrix, operators_from_commutativity};

/// Attempts made at completing a basis of the centralizer before giving up.
pub const ROW_ADDITION_ATTEMPTS: usize = 256;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MemoryCommutativityMatrix {
    pub matrix: BinaryMatrix,
    /// `(i, j)` for each row, 1-based, lexicographic, `1 <= j < l_i`.
    pub index_map: Vec<(usize, usize)>,
}

impl MemoryCommutativityMatrix {
    pub fn dim(&self) -> usize {
        self.index_map.len()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

fn index_map(code: &ConvolutionalCode) -> Vec<(usize, usize)> {
    let mut map = Vec::new();
    for (i, g) in code.generators().iter().enumerate() {
        for j in 1..g.degree() {
            map.push((i + 1, j));
        }
    }
    map
}

/// `h_{i,j} ⊙ h_{i',j'}` with 1-based block indices.
fn block_product(code: &ConvolutionalCode, i: usize, j: usize, ip: usize, jp: usize) -> bool {
    code.generator(i - 1).blocks()[j - 1].anticommutes(&code.generator(ip - 1).blocks()[jp - 1])
}

fn fill_matrix(
    code: &ConvolutionalCode,
    entry: impl Fn(usize, usize, usize, usize) -> bool,
) -> MemoryCommutativityMatrix {
    let map = index_map(code);
    let dim = map.len();
    let mut matrix = BinaryMatrix::zeros(dim, dim);
    for a in 0..dim {
        for b in 0..dim {
            let ((i, j), (ip, jp)) = if map[a].1 >= map[b].1 {
                (map[a], map[b])
            } else {
                (map[b], map[a])
            };
            if a != b && entry(i, j, ip, jp) {
                matrix.set(a, b, true);
            }
        }
    }
    MemoryCommutativityMatrix {
        matrix,
        index_map: map,
    }
}

/// Forward propagation: with `j >= j'`,
/// `Ω[(i,j),(i',j')] = Σ_{k=1}^{min(l_i-j, l_i'-j')} h_{i,j+k} ⊙ h_{i',j'+k}`.
pub fn build_commutativity_matrix(code: &ConvolutionalCode) -> Result<MemoryCommutativityMatrix> {
    let violations = validate_code(code);
    if !violations.is_empty() {
        return Err(Error::InvalidCode(violations));
    }
    Ok(forward_matrix(code))
}

fn forward_matrix(code: &ConvolutionalCode) -> MemoryCommutativityMatrix {
    fill_matrix(code, |i, j, ip, jp| {
        let li = code.generator(i - 1).degree();
        let lip = code.generator(ip - 1).degree();
        (1..=(li - j).min(lip - jp)).fold(false, |acc, k| {
            acc ^ block_product(code, i, j + k, ip, jp + k)
        })
    })
}

/// Backward propagation: with `j >= j'`,
/// `Ω[(i,j),(i',j')] = Σ_{k=0}^{j'-1} h_{i,j-k} ⊙ h_{i',j'-k}`.
pub fn backward_matrix(code: &ConvolutionalCode) -> MemoryCommutativityMatrix {
    fill_matrix(code, |i, j, ip, jp| {
        (0..jp).fold(false, |acc, k| {
            acc ^ block_product(code, i, j - k, ip, jp - k)
        })
    })
}

/// Whether forward and backward propagation agree entry for entry.
pub fn verify_consistency(code: &ConvolutionalCode) -> bool {
    forward_matrix(code) == backward_matrix(code)
}

/// `dim(Ω) - rank(Ω) / 2`.
pub fn minimal_memory(omega: &MemoryCommutativityMatrix) -> Result<usize> {
    let rank = omega.rank();
    if !rank.is_multiple_of(2) {
        return Err(Error::Invariant(format!(
            "commutativity matrix has odd rank {rank}"
        )));
    }
    Ok(omega.dim() - rank / 2)
}

/// Memory operators `g_{i,j}`, indexed like the commutativity matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MemoryTable {
    pub m: usize,
    pub index_map: Vec<(usize, usize)>,
    pub ops: Vec<PauliOperator>,
}

impl MemoryTable {
    pub fn new(m: usize, index_map: Vec<(usize, usize)>, ops: Vec<PauliOperator>) -> Result<Self> {
        if ops.len() != index_map.len() {
            return Err(Error::DimensionMismatch {
                expected: index_map.len(),
                found: ops.len(),
            });
        }
        if let Some(bad) = ops.iter().find(|g| g.width() != m) {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: bad.width(),
            });
        }
        Ok(MemoryTable { m, index_map, ops })
    }

    /// Builds a table for `code` from operator strings listed in
    /// `(i, j)` order.
    pub fn from_strs(code: &ConvolutionalCode, ops: &[&str]) -> Result<Self> {
        let ops = ops
            .iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<PauliOperator>>>()?;
        let m = ops.first().map_or(0, PauliOperator::width);
        Self::new(m, index_map(code), ops)
    }

    /// `g_{i,j}` with 1-based indices; identity for `j = 0` or `j = l_i`.
    pub fn get(&self, i: usize, j: usize) -> PauliOperator {
        self.index_map
            .iter()
            .position(|&(a, b)| a == i && b == j)
            .map(|p| self.ops[p].clone())
            .unwrap_or_else(|| PauliOperator::identity(self.m))
    }

    pub fn commutation_matrix(&self) -> BinaryMatrix {
        commutation_matrix(&self.ops)
    }
}

/// Operators on `dim - rank/2` qubits reproducing `omega`.
pub fn assign_memory_operators(omega: &MemoryCommutativityMatrix) -> Result<MemoryTable> {
    let m = minimal_memory(omega)?;
    let ops = operators_from_commutativity(&omega.matrix)?;
    MemoryTable::new(m, omega.index_map.clone(), ops)
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct EncoderRow {
    pub mem_in: PauliOperator,
    pub anc_in: PauliOperator,
    pub info_in: PauliOperator,
    pub phys_out: PauliOperator,
    pub mem_out: PauliOperator,
}

impl EncoderRow {
    /// Input side laid out as memory | ancilla | information.
    pub fn input(&self) -> PauliOperator {
        PauliOperator::concat_all([&self.mem_in, &self.anc_in, &self.info_in])
    }

    /// Output side laid out as physical | memory.
    pub fn output(&self) -> PauliOperator {
        self.phys_out.tensor(&self.mem_out)
    }

    pub fn multiply(&self, other: &EncoderRow) -> EncoderRow {
        let mut out = self.clone();
        out.mem_in.mul_assign(&other.mem_in);
        out.anc_in.mul_assign(&other.anc_in);
        out.info_in.mul_assign(&other.info_in);
        out.phys_out.mul_assign(&other.phys_out);
        out.mem_out.mul_assign(&other.mem_out);
        out
    }

    pub fn identity(m: usize, n: usize, k: usize) -> EncoderRow {
        EncoderRow {
            mem_in: PauliOperator::identity(m),
            anc_in: PauliOperator::identity(n - k),
            info_in: PauliOperator::identity(k),
            phys_out: PauliOperator::identity(n),
            mem_out: PauliOperator::identity(m),
        }
    }
}

impl std::fmt::Debug for EncoderRow {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({}, {}, {}) -> ({}, {})",
            self.mem_in, self.anc_in, self.info_in, self.phys_out, self.mem_out
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialEncoder {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    /// Generator rows in `(i, j)` order.
    pub rows: Vec<EncoderRow>,
    /// `(i, j)` label of each generator row, 1-based.
    pub row_labels: Vec<(usize, usize)>,
    pub added_rows: Vec<EncoderRow>,
    pub memory_ops: MemoryTable,
}

impl PartialEncoder {
    /// Generator rows followed by added rows.
    pub fn all_rows(&self) -> Vec<EncoderRow> {
        self.rows.iter().chain(&self.added_rows).cloned().collect()
    }

    /// Checks that every pair of rows has the same symplectic product on the
    /// input and the output side.
    pub fn check_consistency(&self) -> Result<()> {
        check_rows(&self.all_rows())
    }
}

/// Pairwise input/output symplectic agreement. Row numbers in the error are
/// 1-based.
pub fn check_rows(rows: &[EncoderRow]) -> Result<()> {
    let ins: Vec<PauliOperator> = rows.iter().map(EncoderRow::input).collect();
    let outs: Vec<PauliOperator> = rows.iter().map(EncoderRow::output).collect();
    for a in 0..rows.len() {
        for b in a + 1..rows.len() {
            if ins[a].anticommutes(&ins[b]) != outs[a].anticommutes(&outs[b]) {
                return Err(Error::InconsistentRows {
                    first: a + 1,
                    second: b + 1,
                });
            }
        }
    }
    Ok(())
}

/// Lays out the generator rows and verifies their consistency.
pub fn assemble_partial_encoder(
    code: &ConvolutionalCode,
    ops: &MemoryTable,
) -> Result<PartialEncoder> {
    let (n, k, m) = (code.n(), code.k(), ops.m);
    if ops.index_map != index_map(code) {
        return Err(Error::InvalidParameters(
            "memory table does not match the code's generator degrees".into(),
        ));
    }
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for (i0, h) in code.generators().iter().enumerate() {
        let i = i0 + 1;
        for j in 1..=h.degree() {
            let anc_in = if j == 1 {
                PauliOperator::single_z(n - k, i0)
            } else {
                PauliOperator::identity(n - k)
            };
            rows.push(EncoderRow {
                mem_in: ops.get(i, j - 1),
                anc_in,
                info_in: PauliOperator::identity(k),
                phys_out: h.blocks()[j - 1].clone(),
                mem_out: ops.get(i, j),
            });
            labels.push((i, j));
        }
    }
    let enc = PartialEncoder {
        m,
        n,
        k,
        rows,
        row_labels: labels,
        added_rows: Vec::new(),
        memory_ops: ops.clone(),
    };
    enc.check_consistency()?;
    Ok(enc)
}

/// A basis of the `m`-qubit operators commuting with every element of
/// `ops`, in reduced echelon form.
pub fn compute_centralizer(ops: &[PauliOperator], m: usize) -> Vec<PauliOperator> {
    let constraints: Vec<BitVec> = ops
        .iter()
        .map(|g| swap_halves(&g.to_symplectic()))
        .collect();
    let a = BinaryMatrix::from_rows(2 * m, constraints).expect("memory operators share a width");
    let null = a.nullspace();
    if null.is_empty() {
        return Vec::new();
    }
    let rref = BinaryMatrix::from_rows(2 * m, null)
        .expect("uniform width")
        .rref();
    rref.matrix
        .rows()
        .iter()
        .take(rref.pivots.len())
        .map(PauliOperator::from_symplectic)
        .collect()
}

/// Every product of a subset of `basis`, identity first.
pub fn span_elements(basis: &[PauliOperator], width: usize) -> Vec<PauliOperator> {
    let mut out = vec![PauliOperator::identity(width)];
    for b in basis {
        let extra: Vec<PauliOperator> = out
            .iter()
            .map(|p| p.multiply(b).expect("equal widths"))
            .collect();
        out.extend(extra);
    }
    out
}

fn commutes_with_all(p: &PauliOperator, ops: &[PauliOperator]) -> bool {
    ops.iter().all(|g| !p.anticommutes(g))
}

/// Row combinations of the encoder with identity physical output whose input
/// and output memories both commute with every memory operator.
///
/// Returned as one combined row per basis vector of the solution space, the
/// basis being in reduced echelon form over the row coefficients.
pub fn find_s1(encoder: &PartialEncoder) -> Vec<EncoderRow> {
    let g = &encoder.memory_ops.ops;
    let constraint = |row: &EncoderRow| {
        let mut v = row.phys_out.to_symplectic();
        v = v.concat(&BitVec::from_bools(
            g.iter().map(|gt| row.mem_in.anticommutes(gt)),
        ));
        v.concat(&BitVec::from_bools(
            g.iter().map(|gt| row.mem_out.anticommutes(gt)),
        ))
    };
    let width = 2 * encoder.n + 2 * g.len();
    let vs: Vec<BitVec> = encoder.rows.iter().map(constraint).collect();
    if vs.is_empty() {
        return Vec::new();
    }
    let kernel = BinaryMatrix::from_rows(width, vs)
        .expect("uniform width")
        .left_kernel();
    kernel
        .iter()
        .map(|coeffs| {
            coeffs.ones().fold(
                EncoderRow::identity(encoder.m, encoder.n, encoder.k),
                |acc, r| acc.multiply(&encoder.rows[r]),
            )
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatastrophicityContext {
    /// Basis of the centralizer `C` of the memory operators.
    pub centralizer: Vec<PauliOperator>,
    pub s1_rows: Vec<EncoderRow>,
    pub s2_rows: Vec<EncoderRow>,
    /// Memory outputs of the added rows.
    pub basis_m: Vec<PauliOperator>,
}

fn added_row(m: usize, n: usize, k: usize, a: usize, mem_out: PauliOperator) -> EncoderRow {
    EncoderRow {
        mem_in: PauliOperator::identity(m),
        anc_in: PauliOperator::identity(n - k),
        info_in: PauliOperator::single_x(k, a),
        phys_out: PauliOperator::identity(n),
        mem_out,
    }
}

/// Whether the edges spanned by `rows` (all with identity physical output)
/// close a cycle carrying a non-identity logical label.
pub fn span_has_logical_cycle(rows: &[EncoderRow], m: usize) -> bool {
    let mut vertex: HashMap<PauliOperator, usize> = HashMap::new();
    let mut edges = Vec::new();
    let mut flags = Vec::new();
    let Some(first) = rows.first() else {
        return false;
    };
    let (n, s) = (first.phys_out.width(), first.anc_in.width());
    let mut combos = vec![EncoderRow::identity(m, n, n - s)];
    for r in rows {
        let extra: Vec<EncoderRow> = combos.iter().map(|c| c.multiply(r)).collect();
        combos.extend(extra);
    }
    for c in &combos {
        let mut id = |p: &PauliOperator| {
            let next = vertex.len();
            *vertex.entry(p.clone()).or_insert(next)
        };
        let u = id(&c.mem_in);
        let v = id(&c.mem_out);
        edges.push((u, v));
        flags.push(!c.info_in.is_identity());
    }
    graph::flagged_cycle(vertex.len(), &edges, &flags).is_some()
}

/// Greedily extends `fixed` (spanning part of `C`) to a spanning set of `C`
/// using `candidates` in order.
fn complete_span(
    fixed: &[PauliOperator],
    candidates: &[PauliOperator],
    target_rank: usize,
) -> Vec<PauliOperator> {
    let mut vecs: Vec<BitVec> = fixed.iter().map(PauliOperator::to_symplectic).collect();
    let mut chosen = Vec::new();
    for c in candidates {
        if rank_of(&vecs) == target_rank {
            break;
        }
        let mut trial = vecs.clone();
        trial.push(c.to_symplectic());
        if rank_of(&trial) > rank_of(&vecs) {
            vecs = trial;
            chosen.push(c.clone());
        }
    }
    chosen
}

/// Adds rows `(I, I, X_a) -> (I, M_a)` so that the memory outputs of the
/// zero-physical rows span the centralizer without closing a logical cycle.
///
/// Without zero-physical combinations among the generator rows, `{M_a}` is a
/// basis of the centralizer. Otherwise a greedy completion (preferring the
/// combinations' own input memories) is tried first, then up to
/// [`ROW_ADDITION_ATTEMPTS`] seeded random completions, each checked by
/// enumerating the spanned edges.
pub fn add_noncatastrophic_rows(
    encoder: &PartialEncoder,
    seed: u64,
) -> Result<(PartialEncoder, CatastrophicityContext)> {
    let (m, n, k) = (encoder.m, encoder.n, encoder.k);
    let c_basis = compute_centralizer(&encoder.memory_ops.ops, m);
    let s1 = find_s1(encoder);
    let dim_c = c_basis.len();
    let s1_outs: Vec<PauliOperator> = s1.iter().map(|r| r.mem_out.clone()).collect();
    let s1_rank = rank_of(
        &s1_outs
            .iter()
            .map(PauliOperator::to_symplectic)
            .collect::<Vec<_>>(),
    );
    let needed = dim_c - s1_rank;
    if needed > k {
        return Err(Error::SynthesisFailure(format!(
            "{needed} rows are needed to span the centralizer but only {k} information qubits exist"
        )));
    }

    let finish = |basis_m: Vec<PauliOperator>| -> Result<(PartialEncoder, CatastrophicityContext)> {
        let s2: Vec<EncoderRow> = basis_m
            .iter()
            .enumerate()
            .map(|(a, mo)| added_row(m, n, k, a, mo.clone()))
            .collect();
        let mut out = encoder.clone();
        out.added_rows = s2.clone();
        out.check_consistency()?;
        Ok((
            out,
            CatastrophicityContext {
                centralizer: c_basis.clone(),
                s1_rows: s1.clone(),
                s2_rows: s2,
                basis_m,
            },
        ))
    };

    if s1.is_empty() {
        return finish(c_basis.clone());
    }

    let acceptable = |basis_m: &[PauliOperator]| {
        let rows: Vec<EncoderRow> = s1
            .iter()
            .cloned()
            .chain(
                basis_m
                    .iter()
                    .enumerate()
                    .map(|(a, mo)| added_row(m, n, k, a, mo.clone())),
            )
            .collect();
        !span_has_logical_cycle(&rows, m)
    };

    let mut candidates: Vec<PauliOperator> = s1
        .iter()
        .map(|r| r.mem_in.clone())
        .filter(|p| commutes_with_all(p, &encoder.memory_ops.ops))
        .collect();
    candidates.extend(c_basis.iter().cloned());
    let greedy = complete_span(&s1_outs, &candidates, dim_c);
    if greedy.len() == needed && acceptable(&greedy) {
        return finish(greedy);
    }

    let elements = span_elements(&c_basis, m);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ROW_ADDITION_ATTEMPTS {
        let mut pool: Vec<PauliOperator> = elements[1..].to_vec();
        pool.shuffle(&mut rng);
        let pick = complete_span(&s1_outs, &pool, dim_c);
        if pick.len() == needed && acceptable(&pick) {
            return finish(pick);
        }
    }
    Err(Error::SynthesisFailure(format!(
        "no completion of the centralizer basis avoided a catastrophic cycle after {ROW_ADDITION_ATTEMPTS} attempts"
    )))
}

/// Everything produced by the synthesis stage.
#[derive(Clone, Debug)]
pub struct Synthesis {
    pub omega: MemoryCommutativityMatrix,
    pub m: usize,
    pub encoder: PartialEncoder,
    pub context: CatastrophicityContext,
}

/// Commutativity matrix, memory assignment, table assembly and row addition.
pub fn synthesize_encoder(code: &ConvolutionalCode, seed: u64) -> Result<Synthesis> {
    let omega = build_commutativity_matrix(code)?;
    if !verify_consistency(code) {
        return Err(Error::Invariant(
            "forward and backward commutativity propagation disagree".into(),
        ));
    }
    let m = minimal_memory(&omega)?;
    let table = assign_memory_operators(&omega)?;
    let encoder = assemble_partial_encoder(code, &table)?;
    let (encoder, context) = add_noncatastrophic_rows(&encoder, seed)?;
    Ok(Synthesis {
        omega,
        m,
        encoder,
        context,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn running1() -> ConvolutionalCode {
        ConvolutionalCode::from_strs(4, 2, &["XXXX|XXIX|IXII|IIXX", "ZZZZ|ZZIZ|IZII|IIZZ"]).unwrap()
    }

    fn running2() -> ConvolutionalCode {
        ConvolutionalCode::from_strs(
            4,
            2,
            &["XXXX|XXII|IXIX|IIXX|XXXX", "ZZZZ|ZZII|IZIZ|IIZZ|ZZZZ"],
        )
        .unwrap()
    }

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    #[test]
    fn running_example_matrix_and_memory() {
        let omega = build_commutativity_matrix(&running1()).unwrap();
        assert_eq!(
            omega.matrix.row(0),
            &BitVec::from_bools([false, false, false, false, true, true])
        );
        assert_eq!(omega.index_map[3], (2, 1));
        assert_eq!((omega.dim(), omega.rank()), (6, 6));
        assert_eq!(minimal_memory(&omega).unwrap(), 3);
        assert!(verify_consistency(&running1()));
    }

    #[test]
    fn degree_one_code_has_no_memory() {
        let c = ConvolutionalCode::from_strs(2, 1, &["ZZ"]).unwrap();
        let omega = build_commutativity_matrix(&c).unwrap();
        assert_eq!(omega.dim(), 0);
        let table = assign_memory_operators(&omega).unwrap();
        assert_eq!(table.m, 0);
        let enc = assemble_partial_encoder(&c, &table).unwrap();
        assert_eq!(enc.rows.len(), 1);
        assert_eq!(format!("{:?}", enc.rows[0]), "(, Z, I) -> (ZZ, )");
    }

    #[test]
    fn invalid_code_is_refused_and_inconsistent() {
        let bad =
            ConvolutionalCode::from_strs(4, 2, &["XXXX|XXIX|IXII|IIXX", "ZZZZ|ZZII|IZII|IIZZ"])
                .unwrap();
        assert!(matches!(
            build_commutativity_matrix(&bad),
            Err(Error::InvalidCode(_))
        ));
        assert!(!verify_consistency(&bad));
    }

    #[test]
    fn reference_operators_assemble() {
        let code = running1();
        let table =
            MemoryTable::from_strs(&code, &["XIX", "IIX", "IZI", "ZXZ", "IIZ", "ZII"]).unwrap();
        let enc = assemble_partial_encoder(&code, &table).unwrap();
        assert_eq!(enc.rows.len(), 8);
        assert_eq!(enc.rows[0].phys_out, p("XXXX"));
        assert_eq!(enc.rows[0].mem_out, p("XIX"));
        assert_eq!(enc.rows[1].mem_in, p("XIX"));
        assert_eq!(enc.rows[3].mem_out, p("III"));
        assert_eq!(enc.rows[4].anc_in, p("IZ"));

        let mut swapped = enc.clone();
        let tmp = swapped.rows[0].mem_out.clone();
        swapped.rows[0].mem_out = swapped.rows[4].mem_out.clone();
        swapped.rows[4].mem_out = tmp;
        assert!(matches!(
            swapped.check_consistency(),
            Err(Error::InconsistentRows { .. })
        ));
    }

    #[test]
    fn running_example_two_rows() {
        let code = running2();
        let table = MemoryTable::from_strs(
            &code,
            &[
                "ZIIIII", "IIXIII", "IIIZII", "IIIIZI", "IZIIII", "IIIXII", "IIZIII", "IIIIIZ",
            ],
        )
        .unwrap();
        let enc = assemble_partial_encoder(&code, &table).unwrap();
        let c = compute_centralizer(&table.ops, 6);
        let span: Vec<PauliOperator> = span_elements(&c, 6);
        assert_eq!(span.len(), 16);
        for q in ["ZIIIII", "IZIIII", "IIIIZI", "IIIIIZ"] {
            assert!(span.contains(&p(q)));
        }
        let s1 = find_s1(&enc);
        let expected = [
            EncoderRow {
                mem_in: p("IIIIZI"),
                anc_in: p("ZI"),
                info_in: p("II"),
                phys_out: p("IIII"),
                mem_out: p("ZIIIII"),
            },
            EncoderRow {
                mem_in: p("IIIIIZ"),
                anc_in: p("IZ"),
                info_in: p("II"),
                phys_out: p("IIII"),
                mem_out: p("IZIIII"),
            },
        ];
        assert_eq!(s1, expected);
        let (out, ctx) = add_noncatastrophic_rows(&enc, 0).unwrap();
        assert_eq!(ctx.basis_m, vec![p("IIIIZI"), p("IIIIIZ")]);
        assert_eq!(out.added_rows[0].info_in, p("XI"));
        assert_eq!(out.added_rows[1].mem_out, p("IIIIIZ"));
    }

    #[test]
    fn full_rank_needs_no_rows() {
        let s = synthesize_encoder(&running1(), 0).unwrap();
        assert_eq!(s.m, 3);
        assert!(s.context.centralizer.is_empty());
        assert!(s.context.s1_rows.is_empty());
        assert!(s.encoder.added_rows.is_empty());
    }

    #[test]
    fn synthesized_running_example_two() {
        let s = synthesize_encoder(&running2(), 0).unwrap();
        assert_eq!(s.m, 6);
        assert_eq!(s.encoder.added_rows.len(), 2);
        assert_eq!(s.context.s1_rows.len(), 2);
        s.encoder.check_consistency().unwrap();
    }
}

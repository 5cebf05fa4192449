//! Clifford tableaux and completion of partial symplectic maps.
//!
//! A tableau on `w` qubits stores the image of every input generator as a
//! symplectic vector (`x` bits in `0..w`, `z` bits in `w..2w`). Entry `2q` is
//! the image of `X_q`, entry `2q + 1` the image of `Z_q`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::gf2::{rank_of, BinaryMatrix};
use crate::pauli::{swap_halves, symplectic_dot, PauliOperator};
use crate::symplectic::symplectic_gram_schmidt;
use crate::synth::PartialEncoder;

/// Qubit layout of an encoder tableau: inputs are memory | ancilla |
/// information, outputs are physical | memory.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FrameLayout {
    pub m: usize,
    pub n: usize,
    pub k: usize,
}

impl FrameLayout {
    pub fn new(m: usize, n: usize, k: usize) -> Result<Self> {
        if k > n {
            return Err(Error::InvalidParameters(format!("k={k} exceeds n={n}")));
        }
        Ok(FrameLayout { m, n, k })
    }

    pub fn width(&self) -> usize {
        self.m + self.n
    }

    /// Number of ancilla qubits, `n - k`.
    pub fn s(&self) -> usize {
        self.n - self.k
    }

    pub fn input(
        &self,
        mem: &PauliOperator,
        anc: &PauliOperator,
        info: &PauliOperator,
    ) -> PauliOperator {
        PauliOperator::concat_all([mem, anc, info])
    }

    /// Splits an input operator into (memory, ancilla, information).
    pub fn split_input(&self, p: &PauliOperator) -> (PauliOperator, PauliOperator, PauliOperator) {
        (
            p.slice(0, self.m),
            p.slice(self.m, self.s()),
            p.slice(self.m + self.s(), self.k),
        )
    }

    /// Splits an output operator into (physical, memory).
    pub fn split_output(&self, p: &PauliOperator) -> (PauliOperator, PauliOperator) {
        (p.slice(0, self.n), p.slice(self.n, self.m))
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CliffordTableau {
    width: usize,
    images: Vec<BitVec>,
}

impl CliffordTableau {
    pub fn identity(width: usize) -> Self {
        let images = (0..2 * width)
            .map(|g| BitVec::unit(2 * width, generator_index(width, g)))
            .collect();
        CliffordTableau { width, images }
    }

    /// Builds a tableau from images listed as `X_0, Z_0, X_1, Z_1, ...`,
    /// rejecting maps that do not preserve symplectic products.
    pub fn from_images(images: Vec<PauliOperator>) -> Result<Self> {
        if !images.len().is_multiple_of(2) {
            return Err(Error::InvalidMatrix(
                "a tableau needs an even number of images".into(),
            ));
        }
        let width = images.len() / 2;
        if let Some(bad) = images.iter().find(|p| p.width() != width) {
            return Err(Error::DimensionMismatch {
                expected: width,
                found: bad.width(),
            });
        }
        let t = CliffordTableau {
            width,
            images: images.iter().map(PauliOperator::to_symplectic).collect(),
        };
        if !t.is_symplectic() {
            return Err(Error::InvalidMatrix(
                "images do not preserve commutation relations".into(),
            ));
        }
        Ok(t)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn image_x(&self, q: usize) -> PauliOperator {
        PauliOperator::from_symplectic(&self.images[2 * q])
    }

    pub fn image_z(&self, q: usize) -> PauliOperator {
        PauliOperator::from_symplectic(&self.images[2 * q + 1])
    }

    pub fn images(&self) -> Vec<PauliOperator> {
        self.images
            .iter()
            .map(PauliOperator::from_symplectic)
            .collect()
    }

    pub(crate) fn images_raw(&self, g: usize) -> &BitVec {
        &self.images[g]
    }

    pub(crate) fn image_vectors_mut(&mut self) -> &mut [BitVec] {
        &mut self.images
    }

    /// Image of a symplectic vector.
    pub fn apply_vector(&self, v: &BitVec) -> BitVec {
        let w = self.width;
        let mut out = BitVec::zeros(2 * w);
        for i in v.ones() {
            let g = if i < w { 2 * i } else { 2 * (i - w) + 1 };
            out.xor_assign(&self.images[g]);
        }
        out
    }

    pub fn apply(&self, p: &PauliOperator) -> PauliOperator {
        PauliOperator::from_symplectic(&self.apply_vector(&p.to_symplectic()))
    }

    /// Whether every pair of images has the same symplectic product as the
    /// corresponding pair of input generators.
    pub fn is_symplectic(&self) -> bool {
        let w = self.width;
        (0..2 * w).all(|a| {
            (a..2 * w).all(|b| {
                let expected = a / 2 == b / 2 && a != b;
                symplectic_dot(&self.images[a], &self.images[b]) == expected
            })
        })
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &CliffordTableau) -> CliffordTableau {
        CliffordTableau {
            width: self.width,
            images: self.images.iter().map(|v| other.apply_vector(v)).collect(),
        }
    }

    /// A pseudo-random Clifford tableau: the seeded completion of the empty
    /// map.
    pub fn random<R: Rng>(width: usize, rng: &mut R) -> CliffordTableau {
        complete_symplectic_map(&[], &[], width, Some(rng.gen()))
            .expect("empty maps always complete")
    }
}

/// Position in the symplectic vector of the `g`-th generator
/// (`X_0, Z_0, X_1, ...`).
fn generator_index(width: usize, g: usize) -> usize {
    if g.is_multiple_of(2) {
        g / 2
    } else {
        width + g / 2
    }
}

impl fmt::Debug for CliffordTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CliffordTableau(width={})", self.width)?;
        for q in 0..self.width {
            writeln!(f, "  X{q} -> {}", self.image_x(q))?;
            writeln!(f, "  Z{q} -> {}", self.image_z(q))?;
        }
        Ok(())
    }
}

/// Linear constraints `p ⊙ cᵢ = bᵢ`, solved with free variables zero, plus a
/// random kernel element when `rng` is given.
fn solve_symplectic(
    constraints: &[BitVec],
    rhs: &[bool],
    width: usize,
    rng: Option<&mut ChaCha8Rng>,
) -> Option<BitVec> {
    let rows: Vec<BitVec> = constraints.iter().map(swap_halves).collect();
    let a = BinaryMatrix::from_rows(2 * width, rows).ok()?;
    let mut p = a.solve(&BitVec::from_bools(rhs.iter().copied()))?;
    if let Some(rng) = rng {
        for k in a.nullspace() {
            if rng.gen::<bool>() {
                p.xor_assign(&k);
            }
        }
    }
    Some(p)
}

struct Side {
    pairs: Vec<(BitVec, BitVec)>,
    isotropic: Vec<BitVec>,
}

impl Side {
    fn vectors(&self) -> Vec<BitVec> {
        let mut out: Vec<BitVec> = self
            .pairs
            .iter()
            .flat_map(|(e, f)| [e.clone(), f.clone()])
            .collect();
        out.extend(self.isotropic.iter().cloned());
        out
    }

    /// Finds a partner for isotropic vector `l` that commutes with every
    /// other current vector.
    fn partner(&self, l: usize, width: usize, rng: Option<&mut ChaCha8Rng>) -> Option<BitVec> {
        let mut cons = Vec::new();
        let mut rhs = Vec::new();
        for (e, f) in &self.pairs {
            cons.extend([e.clone(), f.clone()]);
            rhs.extend([false, false]);
        }
        for (t, u) in self.isotropic.iter().enumerate() {
            cons.push(u.clone());
            rhs.push(t == l);
        }
        solve_symplectic(&cons, &rhs, width, rng)
    }

    /// Removes the components of `v` along the current pairs.
    fn project(&self, v: &BitVec) -> BitVec {
        let mut out = v.clone();
        for (e, f) in &self.pairs {
            if symplectic_dot(v, f) {
                out.xor_assign(e);
            }
            if symplectic_dot(v, e) {
                out.xor_assign(f);
            }
        }
        out
    }

    fn span_contains(&self, v: &BitVec) -> bool {
        let vs = self.vectors();
        if vs.is_empty() {
            return v.is_zero();
        }
        BinaryMatrix::from_rows(v.len(), vs)
            .expect("uniform width")
            .row_space_contains(v)
    }
}

fn dependent_subset(vectors: &[BitVec]) -> Option<Vec<usize>> {
    let width = vectors.first()?.len();
    let m = BinaryMatrix::from_rows(width, vectors.to_vec()).ok()?;
    m.left_kernel()
        .first()
        .map(|k| k.ones().map(|i| i + 1).collect())
}

fn reduce_side(vectors: &[BitVec], g: &BinaryMatrix, c: usize) -> Side {
    let basis: Vec<BitVec> = g
        .rows()
        .iter()
        .map(|coeffs| {
            let mut acc = BitVec::zeros(vectors[0].len());
            for i in coeffs.ones() {
                acc.xor_assign(&vectors[i]);
            }
            acc
        })
        .collect();
    Side {
        pairs: (0..c)
            .map(|t| (basis[2 * t].clone(), basis[2 * t + 1].clone()))
            .collect(),
        isotropic: basis[2 * c..].to_vec(),
    }
}

fn next_candidate(
    side: &Side,
    width: usize,
    cursor: &mut usize,
    rng: Option<&mut ChaCha8Rng>,
) -> BitVec {
    match rng {
        Some(rng) => loop {
            let v = BitVec::from_bools((0..2 * width).map(|_| rng.gen::<bool>()));
            if !side.span_contains(&v) {
                return v;
            }
        },
        None => loop {
            // X_0, Z_0, X_1, Z_1, ...
            let v = BitVec::unit(2 * width, generator_index(width, *cursor));
            *cursor += 1;
            if !side.span_contains(&v) {
                return v;
            }
        },
    }
}

/// Extends `inputs[i] -> outputs[i]` to a full symplectic map on `width`
/// qubits.
///
/// Both sides are reduced to hyperbolic pairs plus isotropic vectors with the
/// same Gram-Schmidt basis change, isotropic vectors receive partners, and the
/// remaining pairs are filled from candidate vectors. Without a seed the
/// candidates are `X_0, Z_0, X_1, ...` and partners take the solution with
/// free variables zero; with a seed both are drawn pseudo-randomly.
pub fn complete_symplectic_map(
    inputs: &[BitVec],
    outputs: &[BitVec],
    width: usize,
    seed: Option<u64>,
) -> Result<CliffordTableau> {
    if inputs.len() != outputs.len() {
        return Err(Error::DimensionMismatch {
            expected: inputs.len(),
            found: outputs.len(),
        });
    }
    if let Some(bad) = inputs.iter().chain(outputs).find(|v| v.len() != 2 * width) {
        return Err(Error::DimensionMismatch {
            expected: 2 * width,
            found: bad.len(),
        });
    }
    for side in [inputs, outputs] {
        if rank_of(side) < side.len() {
            return Err(Error::DependentRows(
                dependent_subset(side).unwrap_or_default(),
            ));
        }
    }
    let r = inputs.len();
    let mut gram = BinaryMatrix::zeros(r, r);
    for a in 0..r {
        for b in a + 1..r {
            let gi = symplectic_dot(&inputs[a], &inputs[b]);
            if gi != symplectic_dot(&outputs[a], &outputs[b]) {
                return Err(Error::InconsistentRows {
                    first: a + 1,
                    second: b + 1,
                });
            }
            gram.set(a, b, gi);
            gram.set(b, a, gi);
        }
    }

    let mut rng = seed.map(ChaCha8Rng::seed_from_u64);
    let (mut ins, mut outs) = if r == 0 {
        let empty = || Side {
            pairs: Vec::new(),
            isotropic: Vec::new(),
        };
        (empty(), empty())
    } else {
        let gs = symplectic_gram_schmidt(&gram)?;
        (
            reduce_side(inputs, &gs.basis_change, gs.c),
            reduce_side(outputs, &gs.basis_change, gs.c),
        )
    };

    while !ins.isotropic.is_empty() {
        let pin = ins
            .partner(0, width, rng.as_mut())
            .ok_or_else(|| Error::Invariant("no symplectic partner for an input vector".into()))?;
        let pout = outs
            .partner(0, width, rng.as_mut())
            .ok_or_else(|| Error::Invariant("no symplectic partner for an output vector".into()))?;
        let u = ins.isotropic.remove(0);
        ins.pairs.push((u, pin));
        let u = outs.isotropic.remove(0);
        outs.pairs.push((u, pout));
    }

    let (mut cur_in, mut cur_out) = (0, 0);
    while ins.pairs.len() < width {
        let extend =
            |side: &mut Side, cursor: &mut usize, rng: Option<&mut ChaCha8Rng>| -> Result<()> {
                let mut rng = rng;
                let v = next_candidate(side, width, cursor, rng.as_deref_mut());
                let e = side.project(&v);
                side.isotropic.push(e);
                let f = side.partner(0, width, rng).ok_or_else(|| {
                    Error::Invariant("no symplectic partner while extending".into())
                })?;
                let e = side.isotropic.remove(0);
                side.pairs.push((e, f));
                Ok(())
            };
        extend(&mut ins, &mut cur_in, rng.as_mut())?;
        extend(&mut outs, &mut cur_out, rng.as_mut())?;
    }

    let images = (0..2 * width)
        .map(|g| {
            let x = BitVec::unit(2 * width, generator_index(width, g));
            let mut img = BitVec::zeros(2 * width);
            for ((e, f), (e2, f2)) in ins.pairs.iter().zip(&outs.pairs) {
                if symplectic_dot(&x, f) {
                    img.xor_assign(e2);
                }
                if symplectic_dot(&x, e) {
                    img.xor_assign(f2);
                }
            }
            img
        })
        .collect();
    let t = CliffordTableau { width, images };
    debug_assert!(t.is_symplectic());
    Ok(t)
}

/// Completes the encoder's rows (generator rows and added rows) to a full
/// tableau on `m + n` qubits.
pub fn complete_to_clifford(
    encoder: &PartialEncoder,
    seed: Option<u64>,
) -> Result<CliffordTableau> {
    let rows = encoder.all_rows();
    let ins: Vec<BitVec> = rows.iter().map(|r| r.input().to_symplectic()).collect();
    let outs: Vec<BitVec> = rows.iter().map(|r| r.output().to_symplectic()).collect();
    complete_symplectic_map(&ins, &outs, encoder.m + encoder.n, seed)
}

/// Parses a tableau file:
///
/// ```text
/// # comment
/// m=1
/// n=1
/// k=1
/// x XI
/// z ZZ
/// x XX
/// z IZ
/// ```
///
/// One `x` and one `z` line per input qubit (memory, ancilla, information),
/// each giving the image over the output qubits (physical, memory).
pub fn parse_tableau(text: &str) -> Result<(FrameLayout, CliffordTableau)> {
    let syntax = |line: usize, message: &str| Error::Syntax {
        line,
        message: message.to_string(),
    };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let mut param = |key: &str| -> Result<usize> {
        let (ln, l) = lines
            .next()
            .ok_or_else(|| syntax(0, &format!("missing `{key}=` line")))?;
        l.strip_prefix(key)
            .and_then(|r| r.trim_start().strip_prefix('='))
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| syntax(ln, &format!("expected `{key}=<int>`")))
    };
    let m = param("m")?;
    let n = param("n")?;
    let k = param("k")?;
    let layout = FrameLayout::new(m, n, k)?;
    let w = layout.width();
    let mut images = Vec::with_capacity(2 * w);
    for (ln, l) in lines {
        let expected = if images.len() % 2 == 0 { 'x' } else { 'z' };
        let body = l
            .strip_prefix(expected)
            .filter(|r| r.starts_with(char::is_whitespace))
            .ok_or_else(|| syntax(ln, &format!("expected `{expected} <PAULI>`")))?;
        let p: PauliOperator = body.trim().parse().map_err(|e| match e {
            Error::InvalidPauliChar(c) => syntax(ln, &format!("invalid Pauli character {c:?}")),
            other => other,
        })?;
        if p.width() != w {
            return Err(syntax(ln, &format!("image must have {w} qubits")));
        }
        images.push(p);
    }
    if images.len() != 2 * w {
        return Err(Error::DimensionMismatch {
            expected: 2 * w,
            found: images.len(),
        });
    }
    Ok((layout, CliffordTableau::from_images(images)?))
}

/// Inverse of [`parse_tableau`].
pub fn tableau_to_text(layout: &FrameLayout, t: &CliffordTableau) -> String {
    let mut out = format!("m={}\nn={}\nk={}\n", layout.m, layout.n, layout.k);
    for q in 0..t.width() {
        out.push_str(&format!("x {}\nz {}\n", t.image_x(q), t.image_z(q)));
    }
    out
}

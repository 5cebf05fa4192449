//! Symplectic Gram-Schmidt reduction of alternating GF(2) forms.

use crate::bits::BitVec;
use crate::error::Result;
use crate::gf2::BinaryMatrix;
use crate::pauli::PauliOperator;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramSchmidtResult {
    /// Number of hyperbolic pairs.
    pub c: usize,
    /// Number of isotropic generators.
    pub d: usize,
    /// Rows are the new basis vectors: pairs first, then isotropic vectors.
    pub basis_change: BinaryMatrix,
    /// `G Ω Gᵀ`: `c` blocks of `[[0,1],[1,0]]` followed by a zero block.
    pub standard_form: BinaryMatrix,
}

fn form(omega: &BinaryMatrix, u: &BitVec, v: &BitVec) -> bool {
    // uᵀ Ω v
    omega.combine_rows(u).dot(v)
}

/// Reduces `omega` to standard form.
///
/// Rows are scanned in ascending order. Row `i` is paired with the
/// lowest-index active `j > i` that it anticommutes with, and the pair is then
/// eliminated from every other active row. Rows left without a partner are
/// isotropic.
pub fn symplectic_gram_schmidt(omega: &BinaryMatrix) -> Result<GramSchmidtResult> {
    omega.check_alternating()?;
    let n = omega.n_rows();
    let mut vecs: Vec<BitVec> = (0..n).map(|i| BitVec::unit(n, i)).collect();
    let mut active = vec![true; n];
    let mut pairs = Vec::new();
    let mut isotropic = Vec::new();

    for i in 0..n {
        if !active[i] {
            continue;
        }
        active[i] = false;
        let partner = (i + 1..n).find(|&j| active[j] && form(omega, &vecs[i], &vecs[j]));
        let Some(j) = partner else {
            isotropic.push(vecs[i].clone());
            continue;
        };
        active[j] = false;
        let (a, b) = (vecs[i].clone(), vecs[j].clone());
        let (wa, wb) = (omega.combine_rows(&a), omega.combine_rows(&b));
        for r in (i + 1..n).filter(|&r| active[r]) {
            let with_b = wb.dot(&vecs[r]);
            let with_a = wa.dot(&vecs[r]);
            if with_b {
                vecs[r].xor_assign(&a);
            }
            if with_a {
                vecs[r].xor_assign(&b);
            }
        }
        pairs.push((a, b));
    }

    let c = pairs.len();
    let d = isotropic.len();
    let mut rows = Vec::with_capacity(n);
    for (a, b) in pairs {
        rows.push(a);
        rows.push(b);
    }
    rows.extend(isotropic);
    let g = BinaryMatrix::from_rows(n, rows)?;
    let standard = g.mul(omega)?.mul(&g.transpose())?;
    Ok(GramSchmidtResult {
        c,
        d,
        basis_change: g,
        standard_form: standard,
    })
}

/// Operators on `c + d` qubits whose pairwise symplectic products equal
/// `omega`.
///
/// In the reduced basis, pair `t` receives `X_t, Z_t` and isotropic vector `l`
/// receives `Z_{c+l}`; these are pulled back through `G⁻¹`.
pub fn operators_from_commutativity(omega: &BinaryMatrix) -> Result<Vec<PauliOperator>> {
    let gs = symplectic_gram_schmidt(omega)?;
    let m = gs.c + gs.d;
    let mut standard = Vec::with_capacity(omega.n_rows());
    for t in 0..gs.c {
        standard.push(PauliOperator::single_x(m, t));
        standard.push(PauliOperator::single_z(m, t));
    }
    for l in 0..gs.d {
        standard.push(PauliOperator::single_z(m, gs.c + l));
    }
    let inv = gs.basis_change.inverse()?;
    let ops = inv
        .rows()
        .iter()
        .map(|coeffs| {
            let mut g = PauliOperator::identity(m);
            for r in coeffs.ones() {
                g.mul_assign(&standard[r]);
            }
            g
        })
        .collect();
    Ok(ops)
}

/// The matrix of pairwise symplectic products of `ops`.
pub fn commutation_matrix(ops: &[PauliOperator]) -> BinaryMatrix {
    let n = ops.len();
    let mut m = BinaryMatrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            if ops[i].anticommutes(&ops[j]) {
                m.set(i, j, true);
                m.set(j, i, true);
            }
        }
    }
    m
}

//! Gate-level synthesis of Clifford tableaux.
//!
//! Gates act on symplectic vectors by conjugation:
//!
//! | gate        | action                          |
//! |-------------|---------------------------------|
//! | `H(q)`      | swap `x_q`, `z_q`               |
//! | `S(q)`      | `z_q ^= x_q`                    |
//! | `CNOT(c,t)` | `x_t ^= x_c`, `z_c ^= z_t`      |
//! | `CZ(a,b)`   | `z_a ^= x_b`, `z_b ^= x_a`      |
//!
//! Each of these is an involution on symplectic vectors, so a reduction of a
//! tableau to the identity read backwards is a circuit for it.

use serde::Serialize;

use crate::bits::BitVec;
use crate::tableau::CliffordTableau;

/// Gate count never exceeds `GATE_COUNT_CONSTANT * w * w` on `w` qubits.
pub const GATE_COUNT_CONSTANT: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    H(usize),
    S(usize),
    Cnot(usize, usize),
    Cz(usize, usize),
}

#[derive(Serialize)]
struct GateRecord {
    kind: &'static str,
    qubits: Vec<usize>,
}

impl Gate {
    pub fn kind(&self) -> &'static str {
        match self {
            Gate::H(_) => "H",
            Gate::S(_) => "S",
            Gate::Cnot(..) => "CNOT",
            Gate::Cz(..) => "CZ",
        }
    }

    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::H(q) | Gate::S(q) => vec![q],
            Gate::Cnot(a, b) | Gate::Cz(a, b) => vec![a, b],
        }
    }

    /// Conjugates a symplectic vector on `width` qubits in place.
    pub fn act(&self, v: &mut BitVec, width: usize) {
        let (x, z) = (|q: usize| q, |q: usize| width + q);
        match *self {
            Gate::H(q) => {
                let (a, b) = (v.get(x(q)), v.get(z(q)));
                v.set(x(q), b);
                v.set(z(q), a);
            }
            Gate::S(q) => {
                if v.get(x(q)) {
                    v.flip(z(q));
                }
            }
            Gate::Cnot(c, t) => {
                if v.get(x(c)) {
                    v.flip(x(t));
                }
                if v.get(z(t)) {
                    v.flip(z(c));
                }
            }
            Gate::Cz(a, b) => {
                let (xa, xb) = (v.get(x(a)), v.get(x(b)));
                if xb {
                    v.flip(z(a));
                }
                if xa {
                    v.flip(z(b));
                }
            }
        }
    }
}

impl serde::Serialize for Gate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GateRecord {
            kind: self.kind(),
            qubits: self.qubits(),
        }
        .serialize(s)
    }
}

impl std::fmt::Display for Gate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            Gate::H(q) => write!(f, "H {q}"),
            Gate::S(q) => write!(f, "S {q}"),
            Gate::Cnot(a, b) => write!(f, "CNOT {a} {b}"),
            Gate::Cz(a, b) => write!(f, "CZ {a} {b}"),
        }
    }
}

struct Reducer {
    t: CliffordTableau,
    gates: Vec<Gate>,
}

impl Reducer {
    fn apply(&mut self, g: Gate) {
        let w = self.t.width();
        for v in self.t.image_vectors_mut() {
            g.act(v, w);
        }
        self.gates.push(g);
    }

    fn x(&self, img: usize, q: usize) -> bool {
        self.t.images_raw(img).get(q)
    }

    fn z(&self, img: usize, q: usize) -> bool {
        self.t.images_raw(img).get(self.t.width() + q)
    }
}

/// A gate list whose replay from the identity reproduces `t`.
pub fn synthesize_circuit(t: &CliffordTableau) -> Vec<Gate> {
    let w = t.width();
    let mut r = Reducer {
        t: t.clone(),
        gates: Vec::new(),
    };
    for q in 0..w {
        let (ix, iz) = (2 * q, 2 * q + 1);

        // Image of X_q to X_q.
        if !(q..w).any(|j| r.x(ix, j)) {
            let j = (q..w)
                .find(|&j| r.z(ix, j))
                .expect("image of X_q is nonzero");
            r.apply(Gate::H(j));
        }
        if !r.x(ix, q) {
            let j = (q + 1..w)
                .find(|&j| r.x(ix, j))
                .expect("x support beyond q");
            r.apply(Gate::Cnot(j, q));
        }
        for j in q + 1..w {
            if r.x(ix, j) {
                r.apply(Gate::Cnot(q, j));
            }
        }
        for j in q + 1..w {
            if r.z(ix, j) {
                r.apply(Gate::Cz(q, j));
            }
        }
        if r.z(ix, q) {
            r.apply(Gate::S(q));
        }

        // Image of Z_q to Z_q with gates that fix X_q after conjugating by H(q).
        if (0..w).all(|j| !r.x(iz, j) && r.z(iz, j) == (j == q)) {
            continue;
        }
        r.apply(Gate::H(q));
        for j in q + 1..w {
            if r.x(iz, j) {
                r.apply(Gate::Cnot(q, j));
            }
        }
        for j in q + 1..w {
            if r.z(iz, j) {
                r.apply(Gate::Cz(q, j));
            }
        }
        if r.z(iz, q) {
            r.apply(Gate::S(q));
        }
        r.apply(Gate::H(q));
    }
    debug_assert_eq!(r.t, CliffordTableau::identity(w));
    let mut gates = r.gates;
    gates.reverse();
    gates
}

/// The tableau of a gate list applied in order, starting from the identity.
pub fn replay(gates: &[Gate], width: usize) -> CliffordTableau {
    let mut t = CliffordTableau::identity(width);
    for g in gates {
        for v in t.image_vectors_mut() {
            g.act(v, width);
        }
    }
    t
}

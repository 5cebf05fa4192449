//! Fixtures and brute-force oracles shared by the integration tests.
//!
//! The oracles here deliberately avoid the library's own algorithms: they
//! enumerate explicitly over small state spaces using plain `u64` bit masks.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::path::PathBuf;

use qcenc::code::{parse_code, ConvolutionalCode};
use qcenc::synth::EncoderRow;
use qcenc::tableau::{CliffordTableau, FrameLayout};
use qcenc::PauliOperator;

pub const CORPUS: [&str; 8] = [
    "running1",
    "running2",
    "forney2",
    "forney3",
    "forney4",
    "forney6",
    "forney8",
    "gr07-third",
];

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

pub fn corpus_path(name: &str) -> PathBuf {
    corpus_dir().join(format!("{name}.qcc"))
}

pub fn load(name: &str) -> ConvolutionalCode {
    let text = std::fs::read_to_string(corpus_path(name)).expect("corpus file");
    parse_code(&text).expect("corpus file parses")
}

pub fn p(s: &str) -> PauliOperator {
    s.parse().expect("Pauli literal")
}

/// Reference memory operators, in `(i, j)` order.
pub fn reference_ops(name: &str) -> &'static [&'static str] {
    match name {
        "running1" => &["XIX", "IIX", "IZI", "ZXZ", "IIZ", "ZII"],
        "running2" | "gr07-third" => &[
            "ZIIIII", "IIXIII", "IIIZII", "IIIIZI", "IZIIII", "IIIXII", "IIZIII", "IIIIIZ",
        ],
        "forney2" | "forney3" => &["ZIII", "IIZI", "IIIX", "IZII", "IIIZ", "IIXI"],
        "forney4" => &["ZZII", "IIIZ", "IIXI", "XIZI", "IIZX", "IXIX"],
        "forney6" => &["ZZII", "ZIII", "IIZI", "XIII", "IXII", "IIIZ"],
        "forney8" => &["ZIIIII", "IZIIII", "IIZIII", "IIIZII", "IIIIZI", "IIIIIZ"],
        _ => panic!("no reference operators for {name}"),
    }
}

fn sym(n: usize, ones: &[(usize, usize)]) -> Vec<Vec<u8>> {
    let mut m = vec![vec![0u8; n]; n];
    for &(a, b) in ones {
        m[a - 1][b - 1] = 1;
        m[b - 1][a - 1] = 1;
    }
    m
}

/// Reference commutativity matrices.
pub fn reference_omega(name: &str) -> Vec<Vec<u8>> {
    match name {
        "running1" => vec![
            vec![0, 0, 0, 0, 1, 1],
            vec![0, 0, 0, 1, 1, 0],
            vec![0, 0, 0, 1, 0, 0],
            vec![0, 1, 1, 0, 0, 0],
            vec![1, 1, 0, 0, 0, 0],
            vec![1, 0, 0, 0, 0, 0],
        ],
        "running2" | "gr07-third" => sym(8, &[(2, 7), (3, 6)]),
        "forney2" | "forney3" => sym(6, &[(2, 6), (3, 5)]),
        "forney4" => vec![
            vec![0, 0, 0, 1, 0, 1],
            vec![0, 0, 0, 0, 1, 1],
            vec![0, 0, 0, 1, 1, 0],
            vec![1, 0, 1, 0, 0, 0],
            vec![0, 1, 1, 0, 0, 0],
            vec![1, 1, 0, 0, 0, 0],
        ],
        "forney6" => sym(6, &[(1, 4), (1, 5), (2, 4)]),
        "forney8" => sym(6, &[]),
        _ => panic!("no reference matrix for {name}"),
    }
}

/// Reference minimal memory for each code.
pub fn reference_memory(name: &str) -> usize {
    match name {
        "running1" => 3,
        "running2" => 6,
        "forney2" | "forney3" | "forney4" | "forney6" => 4,
        "forney8" => 6,
        "gr07-third" => 5,
        _ => panic!("no reference memory for {name}"),
    }
}

/// Generators of the reference centralizer set.
pub fn reference_centralizer(name: &str) -> Vec<PauliOperator> {
    let gens: &[&str] = match name {
        "running1" => &[],
        "running2" | "gr07-third" => &["ZIIIII", "IZIIII", "IIIIZI", "IIIIIZ"],
        "forney2" | "forney3" => &["ZIII", "IZII"],
        "forney4" => &["XXII", "ZZXZ"],
        "forney6" => &["IIZI", "IIIZ"],
        "forney8" => &["ZIIIII", "IZIIII", "IIZIII", "IIIZII", "IIIIZI", "IIIIIZ"],
        _ => panic!("no reference centralizer for {name}"),
    };
    gens.iter().map(|s| p(s)).collect()
}

/// Reference S1 rows; empty where none are expected.
pub fn reference_s1(name: &str) -> Vec<EncoderRow> {
    match name {
        "running2" | "gr07-third" => vec![
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
        ],
        _ => Vec::new(),
    }
}

/// Every product of subsets of `gens`, by explicit enumeration.
pub fn brute_span(gens: &[PauliOperator], width: usize) -> BTreeSet<String> {
    assert!(gens.len() < 20);
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << gens.len()) {
        let mut acc = PauliOperator::identity(width);
        for (i, g) in gens.iter().enumerate() {
            if mask >> i & 1 == 1 {
                acc = acc.multiply(g).unwrap();
            }
        }
        out.insert(acc.to_string());
    }
    out
}

fn anticommute_chars(a: char, b: char) -> bool {
    a != 'I' && b != 'I' && a != b
}

/// Commutation of two strings by counting anticommuting positions.
pub fn strings_anticommute(a: &str, b: &str) -> bool {
    a.chars()
        .zip(b.chars())
        .filter(|&(x, y)| anticommute_chars(x, y))
        .count()
        % 2
        == 1
}

/// Lays every generator and its shifts out on a finite strip and checks all
/// pairs commute.
pub fn brute_valid(code: &ConvolutionalCode) -> bool {
    let n = code.n();
    let maxdeg = code.max_degree();
    let frames = 2 * maxdeg + 1;
    let mut strip = Vec::new();
    for h in code.generators() {
        for shift in 0..=frames - h.degree() {
            let mut s = "I".repeat(n * shift);
            for b in h.blocks() {
                s.push_str(&b.to_string());
            }
            s.push_str(&"I".repeat(n * frames - s.len()));
            strip.push(s);
        }
    }
    strip
        .iter()
        .all(|a| strip.iter().all(|b| !strings_anticommute(a, b)))
}

/// A tableau as raw bit masks: `images[q]` is the image of `X_q`,
/// `images[w + q]` of `Z_q`, each packed with `x` in bits `0..w` and `z` in
/// `w..2w`.
pub struct RawTableau {
    pub w: usize,
    pub images: Vec<u64>,
    pub m: usize,
    pub n: usize,
    pub k: usize,
}

impl RawTableau {
    pub fn new(t: &CliffordTableau, layout: &FrameLayout) -> Self {
        let w = t.width();
        assert!(2 * w <= 64);
        let mut images = vec![0u64; 2 * w];
        for q in 0..w {
            images[q] = t.image_x(q).to_symplectic().to_u64();
            images[w + q] = t.image_z(q).to_symplectic().to_u64();
        }
        RawTableau {
            w,
            images,
            m: layout.m,
            n: layout.n,
            k: layout.k,
        }
    }

    fn s(&self) -> usize {
        self.n - self.k
    }

    pub fn apply(&self, v: u64) -> u64 {
        let mut out = 0;
        for (i, img) in self.images.iter().enumerate() {
            if v >> i & 1 == 1 {
                out ^= img;
            }
        }
        out
    }

    /// Output `(physical, next memory)` for memory state `mem` (packed
    /// `x | z << m`), ancilla `Z` mask and logical label (`x | z << k`).
    pub fn step(&self, mem: u64, anc: u64, logical: u64) -> (u64, u64) {
        let (m, s, k, w, n) = (self.m, self.s(), self.k, self.w, self.n);
        let low = |b: usize| (1u64 << b) - 1;
        let (mx, mz) = (mem & low(m), mem >> m);
        let (lx, lz) = (logical & low(k), logical >> k);
        let x = mx | lx << (m + s);
        let z = mz | anc << m | lz << (m + s);
        let out = self.apply(x | z << w);
        let (ox, oz) = (out & low(w), out >> w);
        let phys = (ox & low(n)) | (oz & low(n)) << n;
        let next = (ox >> n) | (oz >> n) << m;
        (phys, next)
    }

    /// All zero-physical edges `(mem, logical, next)` by exhaustive
    /// enumeration of every input.
    pub fn zero_physical_edges(&self) -> Vec<(u64, u64, u64)> {
        let mut out = Vec::new();
        for mem in 0..1u64 << (2 * self.m) {
            for anc in 0..1u64 << self.s() {
                for logical in 0..1u64 << (2 * self.k) {
                    let (phys, next) = self.step(mem, anc, logical);
                    if phys == 0 {
                        out.push((mem, logical, next));
                    }
                }
            }
        }
        out
    }
}

fn reachable(adj: &[Vec<usize>], from: usize) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    let mut queue = VecDeque::from([from]);
    seen[from] = true;
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    seen
}

pub struct BruteDiagram {
    pub edges: Vec<(u64, u64, u64)>,
    pub reach: Vec<Vec<bool>>,
}

impl BruteDiagram {
    pub fn new(raw: &RawTableau) -> Self {
        let edges = raw.zero_physical_edges();
        let n_v = 1usize << (2 * raw.m);
        let mut adj = vec![Vec::new(); n_v];
        for &(a, _, b) in &edges {
            adj[a as usize].push(b as usize);
        }
        let mut reach = vec![Vec::new(); n_v];
        let touched: HashSet<usize> = edges.iter().map(|e| e.2 as usize).collect();
        for v in 0..n_v {
            reach[v] = if touched.contains(&v) || !adj[v].is_empty() {
                reachable(&adj, v)
            } else {
                let mut r = vec![false; n_v];
                r[v] = true;
                r
            };
        }
        BruteDiagram { edges, reach }
    }

    /// A vertex that lies on some zero-physical cycle.
    pub fn on_cycle(&self, v: u64) -> bool {
        self.edges
            .iter()
            .any(|&(a, _, b)| a == v && self.reach[b as usize][v as usize])
    }

    pub fn edge_on_cycle(&self, a: u64, b: u64) -> bool {
        self.reach[b as usize][a as usize]
    }

    pub fn catastrophic(&self) -> bool {
        self.edges
            .iter()
            .any(|&(a, l, b)| l != 0 && self.edge_on_cycle(a, b))
    }
}

/// Packs a memory Pauli as `x | z << m`.
pub fn pack(p: &PauliOperator) -> u64 {
    let m = p.width();
    p.x_bits().to_u64() | p.z_bits().to_u64() << m
}

/// Backtracking search for operators on `qubits` qubits whose pairwise
/// commutation matrix equals `omega`.
pub fn assignment_exists(omega: &[Vec<u8>], qubits: usize) -> bool {
    fn anti(a: u64, b: u64, q: usize) -> bool {
        let mask = (1u64 << q) - 1;
        let (ax, az, bx, bz) = (a & mask, a >> q, b & mask, b >> q);
        ((ax & bz).count_ones() + (az & bx).count_ones()) % 2 == 1
    }
    fn go(omega: &[Vec<u8>], q: usize, chosen: &mut Vec<u64>) -> bool {
        let i = chosen.len();
        if i == omega.len() {
            return true;
        }
        for cand in 0..1u64 << (2 * q) {
            if chosen
                .iter()
                .enumerate()
                .all(|(j, &c)| anti(cand, c, q) == (omega[i][j] == 1))
            {
                chosen.push(cand);
                if go(omega, q, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    go(omega, qubits, &mut Vec::new())
}

//! Generator shortening.
//!
//! Rewrites a generator set so that the first blocks `{h_{i,1}}` are
//! independent, and likewise the last blocks `{h_{i,l_i}}`. Each rewrite
//! multiplies a generator by (shifts of) other generators, so the stabilizer
//! group is unchanged while the total degree strictly drops.

use serde::Serialize;

use crate::bits::BitVec;
use crate::code::{
    delay_generator, multiply_shifted, validate_code, ConvolutionalCode, GeneratorPolynomial,
};
use crate::error::{Error, Result};
use crate::gf2::BinaryMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Pass {
    Front,
    Back,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShorteningStep {
    /// Rewritten generator, 1-based.
    pub generator: usize,
    /// Generators it was multiplied by, 1-based and ascending.
    pub subset: Vec<usize>,
    pub pass: Pass,
    /// Degree after the rewrite.
    pub degree: usize,
}

#[derive(Clone, Debug)]
pub struct ShorteningReport {
    pub input_code: ConvolutionalCode,
    pub output_code: ConvolutionalCode,
    pub steps: Vec<ShorteningStep>,
}

fn strip_leading(h: &GeneratorPolynomial, index: usize) -> Result<GeneratorPolynomial> {
    if h.is_identity() {
        return Err(Error::DegenerateGenerator(index + 1));
    }
    match h.leading_identities() {
        0 => Ok(h.clone()),
        lead => delay_generator(h, -(lead as isize)),
    }
}

/// Strips leading all-identity blocks from every generator.
pub fn normalize_leading_delay(code: &ConvolutionalCode) -> Result<ConvolutionalCode> {
    let gens = code
        .generators()
        .iter()
        .enumerate()
        .map(|(i, h)| strip_leading(h, i))
        .collect::<Result<Vec<_>>>()?;
    ConvolutionalCode::new(code.n(), code.k(), gens)
}

/// Lexicographically least subset of `candidates` whose blocks multiply to
/// `target`, as indices into `candidates`.
fn find_subset(blocks: &[BitVec], target: &BitVec) -> Option<Vec<usize>> {
    if blocks.is_empty() {
        return None;
    }
    let m = BinaryMatrix::from_rows(target.len(), blocks.to_vec()).ok()?;
    let c = m.solve_rows_lex_least(target)?;
    Some(c.ones().collect())
}

fn front_rewrite(
    gens: &[GeneratorPolynomial],
    i: usize,
) -> Result<Option<(GeneratorPolynomial, Vec<usize>)>> {
    let li = gens[i].degree();
    let cands: Vec<usize> = (0..gens.len())
        .filter(|&j| j != i && gens[j].degree() <= li)
        .collect();
    let blocks: Vec<BitVec> = cands
        .iter()
        .map(|&j| gens[j].first().to_symplectic())
        .collect();
    let Some(subset) = find_subset(&blocks, &gens[i].first().to_symplectic()) else {
        return Ok(None);
    };
    let members: Vec<usize> = subset.iter().map(|&s| cands[s]).collect();
    let mut h = gens[i].clone();
    for &g in &members {
        h = multiply_shifted(&h, &gens[g], 0)?;
    }
    if !h.first().is_identity() {
        return Err(Error::Invariant(format!(
            "front rewrite of generator {} left a non-identity first block {}",
            i + 1,
            h.first()
        )));
    }
    Ok(Some((strip_leading(&h, i)?, members)))
}

fn back_rewrite(
    gens: &[GeneratorPolynomial],
    i: usize,
) -> Result<Option<(GeneratorPolynomial, Vec<usize>)>> {
    let li = gens[i].degree();
    let cands: Vec<usize> = (0..gens.len())
        .filter(|&j| j != i && gens[j].degree() <= li)
        .collect();
    let blocks: Vec<BitVec> = cands
        .iter()
        .map(|&j| gens[j].last().to_symplectic())
        .collect();
    let Some(subset) = find_subset(&blocks, &gens[i].last().to_symplectic()) else {
        return Ok(None);
    };
    let members: Vec<usize> = subset.iter().map(|&s| cands[s]).collect();
    let mut h = gens[i].clone();
    for &g in &members {
        h = multiply_shifted(&h, &gens[g], li - gens[g].degree())?;
    }
    if h.degree() >= li && !h.is_identity() {
        return Err(Error::Invariant(format!(
            "back rewrite of generator {} did not shorten it",
            i + 1
        )));
    }
    Ok(Some((strip_leading(&h, i)?, members)))
}

/// Runs front and back passes until neither rewrites anything.
///
/// Leading and trailing identity blocks are stripped first; they do not
/// change the operator and are not logged as steps.
///
/// Generators are scanned in ascending order and the subset used for a
/// rewrite is the lexicographically least solution of the corresponding
/// linear system. After any rewrite the scan restarts with the front pass.
pub fn shorten(code: &ConvolutionalCode) -> Result<ShorteningReport> {
    let violations = validate_code(code);
    if !violations.is_empty() {
        return Err(Error::InvalidCode(violations));
    }
    let mut gens: Vec<GeneratorPolynomial> = normalize_leading_delay(code)?
        .generators()
        .iter()
        .map(GeneratorPolynomial::trimmed)
        .collect();
    let mut steps = Vec::new();

    'outer: loop {
        for (pass, rewrite) in [
            (
                Pass::Front,
                front_rewrite as fn(&[GeneratorPolynomial], usize) -> _,
            ),
            (Pass::Back, back_rewrite),
        ] {
            for i in 0..gens.len() {
                if let Some((h, members)) = rewrite(&gens, i)? {
                    steps.push(ShorteningStep {
                        generator: i + 1,
                        subset: members.iter().map(|g| g + 1).collect(),
                        pass,
                        degree: h.degree(),
                    });
                    gens[i] = h;
                    continue 'outer;
                }
            }
        }
        break;
    }

    Ok(ShorteningReport {
        input_code: code.clone(),
        output_code: ConvolutionalCode::new(code.n(), code.k(), gens)?,
        steps,
    })
}

/// Default window for [`group_equivalent`].
pub fn default_window(a: &ConvolutionalCode, b: &ConvolutionalCode) -> usize {
    a.max_degree().max(b.max_degree()) + a.s() + 2
}

fn strip_vector(h: &GeneratorPolynomial, shift: usize, window: usize) -> BitVec {
    let n = h.n();
    let mut x = BitVec::zeros(n * window);
    let mut z = BitVec::zeros(n * window);
    for (j, blk) in h.blocks().iter().enumerate() {
        let base = (shift + j) * n;
        for q in blk.x_bits().ones() {
            x.set(base + q, true);
        }
        for q in blk.z_bits().ones() {
            z.set(base + q, true);
        }
    }
    x.concat(&z)
}

/// All shifts of the generators lying fully inside a `window`-frame strip.
fn strip_span(code: &ConvolutionalCode, window: usize) -> BinaryMatrix {
    let mut rows = Vec::new();
    for h in code.generators() {
        for t in 0..=window.saturating_sub(h.degree()) {
            rows.push(strip_vector(h, t, window));
        }
    }
    BinaryMatrix::from_rows(2 * code.n() * window, rows).expect("uniform strip width")
}

fn centered_members(a: &ConvolutionalCode, span_b: &BinaryMatrix, window: usize) -> bool {
    a.generators().iter().all(|h| {
        let shift = (window - h.degree()) / 2;
        span_b.row_space_contains(&strip_vector(h, shift, window))
    })
}

/// Whether two codes generate the same stabilizer group, tested on a strip
/// of `window` frames.
///
/// Each generator of one code, placed in the middle of the strip, must be a
/// product of shifts of the other code's generators that fit in the strip.
pub fn group_equivalent(
    a: &ConvolutionalCode,
    b: &ConvolutionalCode,
    window: usize,
) -> Result<bool> {
    if a.n() != b.n() || a.k() != b.k() {
        return Ok(false);
    }
    let required = a.max_degree().max(b.max_degree()) + a.s();
    if window < required {
        return Err(Error::WindowTooSmall { window, required });
    }
    let span_a = strip_span(a, window);
    let span_b = strip_span(b, window);
    Ok(centered_members(a, &span_b, window) && centered_members(b, &span_a, window))
}

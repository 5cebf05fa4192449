//! Convolutional stabilizer codes given by generator polynomials.
//!
//! A generator `h_i` is a list of `n`-qubit blocks `h_{i,1} .. h_{i,l_i}`,
//! one per frame. The code consists of the generators together with all of
//! their whole-frame shifts.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pauli::PauliOperator;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GeneratorPolynomial {
    blocks: Vec<PauliOperator>,
}

impl GeneratorPolynomial {
    pub fn new(blocks: Vec<PauliOperator>) -> Result<Self> {
        let Some(first) = blocks.first() else {
            return Err(Error::InvalidParameters(
                "a generator needs at least one block".into(),
            ));
        };
        let n = first.width();
        for (b, blk) in blocks.iter().enumerate() {
            if blk.width() != n {
                return Err(Error::BlockWidth {
                    generator: 0,
                    block: b + 1,
                    expected: n,
                    found: blk.width(),
                });
            }
        }
        Ok(GeneratorPolynomial { blocks })
    }

    /// Parses `BLOCK|BLOCK|...`.
    pub fn parse_blocks(s: &str) -> Result<Self> {
        let blocks = s
            .split('|')
            .map(str::parse)
            .collect::<Result<Vec<PauliOperator>>>()?;
        Self::new(blocks)
    }

    pub fn n(&self) -> usize {
        self.blocks[0].width()
    }

    /// Number of blocks `l_i`.
    pub fn degree(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[PauliOperator] {
        &self.blocks
    }

    /// Block `h_{i,j}` for 0-based `j`; identity outside `0..degree`.
    pub fn block_or_identity(&self, j: isize) -> PauliOperator {
        if j < 0 || j as usize >= self.blocks.len() {
            PauliOperator::identity(self.n())
        } else {
            self.blocks[j as usize].clone()
        }
    }

    pub fn first(&self) -> &PauliOperator {
        &self.blocks[0]
    }

    pub fn last(&self) -> &PauliOperator {
        self.blocks.last().expect("non-empty")
    }

    pub fn is_identity(&self) -> bool {
        self.blocks.iter().all(PauliOperator::is_identity)
    }

    /// Number of leading all-identity blocks.
    pub fn leading_identities(&self) -> usize {
        self.blocks.iter().take_while(|b| b.is_identity()).count()
    }

    /// A copy without trailing all-identity blocks (at least one block kept).
    pub fn trimmed(&self) -> GeneratorPolynomial {
        GeneratorPolynomial {
            blocks: Self::trim_trailing(self.blocks.clone()),
        }
    }

    fn trim_trailing(mut blocks: Vec<PauliOperator>) -> Vec<PauliOperator> {
        while blocks.len() > 1 && blocks.last().is_some_and(PauliOperator::is_identity) {
            blocks.pop();
        }
        blocks
    }
}

impl fmt::Display for GeneratorPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, b) in self.blocks.iter().enumerate() {
            if j > 0 {
                f.write_str("|")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for GeneratorPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Generator({self})")
    }
}

/// `D^j h`: prepends `j` identity blocks, or strips `-j` leading identity
/// blocks when `j` is negative.
pub fn delay_generator(h: &GeneratorPolynomial, j: isize) -> Result<GeneratorPolynomial> {
    let n = h.n();
    if j >= 0 {
        let mut blocks = vec![PauliOperator::identity(n); j as usize];
        blocks.extend(h.blocks.iter().cloned());
        return Ok(GeneratorPolynomial { blocks });
    }
    let strip = j.unsigned_abs();
    if let Some(b) = (0..strip).find(|&b| b >= h.degree() || !h.blocks[b].is_identity()) {
        return Err(Error::InvalidDelay {
            delay: j,
            block: b + 1,
        });
    }
    if strip == h.degree() {
        return Err(Error::InvalidDelay {
            delay: j,
            block: strip,
        });
    }
    Ok(GeneratorPolynomial {
        blocks: h.blocks[strip..].to_vec(),
    })
}

/// Blockwise product `a × D^shift b`, trailing identity blocks trimmed.
pub fn multiply_shifted(
    a: &GeneratorPolynomial,
    b: &GeneratorPolynomial,
    shift: usize,
) -> Result<GeneratorPolynomial> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch {
            expected: a.n(),
            found: b.n(),
        });
    }
    let len = a.degree().max(b.degree() + shift);
    let blocks = (0..len as isize)
        .map(|j| {
            a.block_or_identity(j)
                .multiply(&b.block_or_identity(j - shift as isize))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GeneratorPolynomial {
        blocks: GeneratorPolynomial::trim_trailing(blocks),
    })
}

/// Blockwise product aligned at frame 1, trailing identity blocks trimmed.
pub fn multiply_generators(
    a: &GeneratorPolynomial,
    b: &GeneratorPolynomial,
) -> Result<GeneratorPolynomial> {
    multiply_shifted(a, b, 0)
}

/// A shift at which two generators fail to commute. Indices are 1-based;
/// the shift `t` counts frames by which `h_i` is advanced against `h_{i'}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Violation {
    pub i: usize,
    pub i_prime: usize,
    pub t: usize,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.i, self.i_prime, self.t)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct ConvolutionalCode {
    n: usize,
    k: usize,
    generators: Vec<GeneratorPolynomial>,
}

impl ConvolutionalCode {
    pub fn new(n: usize, k: usize, generators: Vec<GeneratorPolynomial>) -> Result<Self> {
        if k < 1 || k >= n {
            return Err(Error::InvalidParameters(format!(
                "need 1 <= k < n, got n={n}, k={k}"
            )));
        }
        if generators.len() != n - k {
            return Err(Error::GeneratorCount {
                expected: n - k,
                found: generators.len(),
            });
        }
        for (i, g) in generators.iter().enumerate() {
            if let Some((b, blk)) = g.blocks.iter().enumerate().find(|(_, b)| b.width() != n) {
                return Err(Error::BlockWidth {
                    generator: i + 1,
                    block: b + 1,
                    expected: n,
                    found: blk.width(),
                });
            }
        }
        Ok(ConvolutionalCode { n, k, generators })
    }

    /// Builds a code from `BLOCK|BLOCK|...` strings.
    pub fn from_strs(n: usize, k: usize, generators: &[&str]) -> Result<Self> {
        let gens = generators
            .iter()
            .map(|s| GeneratorPolynomial::parse_blocks(s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, k, gens)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of generators, `n - k`.
    pub fn s(&self) -> usize {
        self.n - self.k
    }

    pub fn generators(&self) -> &[GeneratorPolynomial] {
        &self.generators
    }

    pub fn generator(&self, i: usize) -> &GeneratorPolynomial {
        &self.generators[i]
    }

    pub fn max_degree(&self) -> usize {
        self.generators
            .iter()
            .map(|g| g.degree())
            .max()
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> usize {
        self.generators.iter().map(|g| g.degree()).sum()
    }

    /// A copy with generator `i` (0-based) replaced.
    pub fn with_generator(&self, i: usize, h: GeneratorPolynomial) -> Result<Self> {
        let mut gens = self.generators.clone();
        gens[i] = h;
        Self::new(self.n, self.k, gens)
    }

    /// Canonical text form, accepted by [`parse_code`].
    pub fn to_text(&self) -> String {
        let mut out = format!("n={}\nk={}\n", self.n, self.k);
        for g in &self.generators {
            out.push_str(&format!("h {g}\n"));
        }
        out
    }
}

impl fmt::Debug for ConvolutionalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ConvolutionalCode")
            .field("n", &self.n)
            .field("k", &self.k)
            .field("generators", &self.generators)
            .finish()
    }
}

impl FromStr for ConvolutionalCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_code(s)
    }
}

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        message: message.into(),
    }
}

fn parse_param(line: usize, text: &str, key: &str) -> Result<usize> {
    let value = text
        .strip_prefix(key)
        .and_then(|r| r.trim_start().strip_prefix('='))
        .ok_or_else(|| syntax(line, format!("expected `{key}=<int>`")))?;
    value
        .trim()
        .parse()
        .map_err(|_| syntax(line, format!("`{key}` must be a non-negative integer")))
}

/// Parses the line-oriented code format:
///
/// ```text
/// # comment
/// n=4
/// k=2
/// h XXXX|XXIX|IXII|IIXX
/// h ZZZZ|ZZIZ|IZII|IIZZ
/// ```
pub fn parse_code(text: &str) -> Result<ConvolutionalCode> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (ln, l) = lines.next().ok_or_else(|| syntax(1, "missing `n=` line"))?;
    let n = parse_param(ln, l, "n")?;
    let (ln, l) = lines
        .next()
        .ok_or_else(|| syntax(ln + 1, "missing `k=` line"))?;
    let k = parse_param(ln, l, "k")?;
    if k < 1 || k >= n {
        return Err(Error::InvalidParameters(format!(
            "need 1 <= k < n, got n={n}, k={k}"
        )));
    }

    let mut gens = Vec::new();
    for (ln, l) in lines {
        let body = l
            .strip_prefix('h')
            .filter(|r| r.starts_with(char::is_whitespace))
            .ok_or_else(|| syntax(ln, "expected `h <BLOCK>(|<BLOCK>)*`"))?
            .trim();
        let mut blocks = Vec::new();
        for (b, blk) in body.split('|').enumerate() {
            let p: PauliOperator = blk.parse().map_err(|e| match e {
                Error::InvalidPauliChar(c) => syntax(ln, format!("invalid Pauli character {c:?}")),
                other => other,
            })?;
            if p.width() != n {
                return Err(Error::BlockWidth {
                    generator: gens.len() + 1,
                    block: b + 1,
                    expected: n,
                    found: p.width(),
                });
            }
            blocks.push(p);
        }
        gens.push(GeneratorPolynomial { blocks });
    }
    ConvolutionalCode::new(n, k, gens)
}

/// Commutator of `D^t h_a` with `h_b`: `Σ_q h_{a,q+t} ⊙ h_{b,q}`.
pub fn shifted_overlap(a: &GeneratorPolynomial, b: &GeneratorPolynomial, t: usize) -> bool {
    let mut acc = false;
    for q in 0..b.degree() {
        if q + t < a.degree() {
            acc ^= a.blocks[q + t].anticommutes(&b.blocks[q]);
        }
    }
    acc
}

/// Every `(i, i', t)` with `0 <= t < max(l_i, l_{i'})` whose shifted overlap
/// anticommutes. Empty iff the code is valid.
pub fn validate_code(code: &ConvolutionalCode) -> Vec<Violation> {
    let gens = code.generators();
    let mut out = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for (ip, b) in gens.iter().enumerate() {
            for t in 0..a.degree().max(b.degree()) {
                if shifted_overlap(a, b, t) {
                    out.push(Violation {
                        i: i + 1,
                        i_prime: ip + 1,
                        t,
                    });
                }
            }
        }
    }
    out
}

pub fn is_valid(code: &ConvolutionalCode) -> bool {
    validate_code(code).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const RUNNING1: &str = "n=4\nk=2\nh XXXX|XXIX|IXII|IIXX\nh ZZZZ|ZZIZ|IZII|IIZZ\n";

    fn gen(s: &str) -> GeneratorPolynomial {
        GeneratorPolynomial::parse_blocks(s).unwrap()
    }

    #[test]
    fn parses_running_example() {
        let c = parse_code(RUNNING1).unwrap();
        assert_eq!((c.n(), c.k()), (4, 2));
        assert_eq!(c.generators().len(), 2);
        assert!(c.generators().iter().all(|g| g.degree() == 4));
        assert_eq!(c.to_text(), RUNNING1);
    }

    #[test]
    fn parse_allows_comments_and_reports_errors() {
        let with_comment = format!("# running example\n\n{RUNNING1}");
        assert_eq!(
            parse_code(&with_comment).unwrap(),
            parse_code(RUNNING1).unwrap()
        );

        let short = "n=4\nk=2\nh XXXX|XXI\nh ZZZZ\n";
        assert!(matches!(
            parse_code(short),
            Err(Error::BlockWidth {
                generator: 1,
                block: 2,
                expected: 4,
                found: 3
            })
        ));

        let count = "n=4\nk=2\nh XXXX\n";
        assert!(matches!(
            parse_code(count),
            Err(Error::GeneratorCount {
                expected: 2,
                found: 1
            })
        ));

        let bad_char = "n=2\nk=1\nh XQ\n";
        assert!(matches!(
            parse_code(bad_char),
            Err(Error::Syntax { line: 3, .. })
        ));

        let order = "k=2\nn=4\n";
        assert!(matches!(
            parse_code(order),
            Err(Error::Syntax { line: 1, .. })
        ));

        assert!(matches!(
            parse_code("n=2\nk=2\n"),
            Err(Error::InvalidParameters(_))
        ));
        assert!(matches!(
            parse_code("n=2\nk=1\ng XI\n"),
            Err(Error::Syntax { line: 3, .. })
        ));
    }

    #[test]
    fn running_example_is_valid() {
        assert!(validate_code(&parse_code(RUNNING1).unwrap()).is_empty());
    }

    #[test]
    fn anticommuting_single_blocks_are_invalid() {
        let c = ConvolutionalCode::from_strs(3, 1, &["XII", "ZII"]).unwrap();
        let v = validate_code(&c);
        assert!(v.contains(&Violation {
            i: 1,
            i_prime: 2,
            t: 0
        }));
    }

    #[test]
    fn mutated_running_example_is_invalid() {
        let c = ConvolutionalCode::from_strs(4, 2, &["XXXX|XXIX|IXII|IIXX", "ZZZZ|ZZII|IZII|IIZZ"])
            .unwrap();
        let v = validate_code(&c);
        assert!(!v.is_empty());
        // direct recomputation of each reported witness
        for w in &v {
            let a = c.generator(w.i - 1);
            let b = c.generator(w.i_prime - 1);
            let mut parity = false;
            for q in 0..b.degree() {
                if let Some(x) = a.blocks().get(q + w.t) {
                    parity ^= x.anticommutes(&b.blocks()[q]);
                }
            }
            assert!(parity);
        }
    }

    #[test]
    fn delay_examples() {
        assert_eq!(
            delay_generator(&gen("XXXX|IIXX"), 1).unwrap(),
            gen("IIII|XXXX|IIXX")
        );
        assert_eq!(delay_generator(&gen("IIII|XXXX"), -1).unwrap(), gen("XXXX"));
        assert!(matches!(
            delay_generator(&gen("XXXX|IIXX"), -1),
            Err(Error::InvalidDelay {
                delay: -1,
                block: 1
            })
        ));
        assert!(delay_generator(&gen("IIII"), -1).is_err());
    }

    #[test]
    fn multiply_examples() {
        let h1 = gen("XXXX|XXIX|IXII|IIXX");
        let h2 = gen("ZZZZ|ZZIZ|IZII|IIZZ");
        assert_eq!(multiply_generators(&h1, &h1).unwrap(), gen("IIII"));
        assert_eq!(
            multiply_generators(&h1, &h2).unwrap(),
            gen("YYYY|YYIY|IYII|IIYY")
        );
        assert_eq!(
            multiply_generators(&gen("XXXX"), &gen("ZZZZ|IIZZ")).unwrap(),
            gen("YYYY|IIZZ")
        );
        assert_eq!(
            multiply_shifted(&gen("XX|ZZ"), &gen("XX"), 1).unwrap(),
            gen("XX|YY")
        );
        assert!(multiply_generators(&gen("XX"), &gen("XXX")).is_err());
    }

    fn running1() -> ConvolutionalCode {
        parse_code(RUNNING1).unwrap()
    }

    proptest! {
        #[test]
        fn validity_is_shift_invariant(j in 0isize..4, flip in any::<bool>()) {
            let base = if flip {
                ConvolutionalCode::from_strs(4, 2, &["XXXX|XXIX|IXII|IIXX", "ZZZZ|ZZII|IZII|IIZZ"]).unwrap()
            } else {
                running1()
            };
            let delayed: Vec<_> = base.generators().iter().map(|g| delay_generator(g, j).unwrap()).collect();
            let shifted = ConvolutionalCode::new(4, 2, delayed).unwrap();
            prop_assert_eq!(is_valid(&base), is_valid(&shifted));
        }

        #[test]
        fn serialize_parse_roundtrip(blocks in proptest::collection::vec(
            proptest::collection::vec("[IXYZ]{3}", 1..5), 2)) {
            let strs: Vec<String> = blocks.iter().map(|b| b.join("|")).collect();
            let refs: Vec<&str> = strs.iter().map(String::as_str).collect();
            let code = ConvolutionalCode::from_strs(3, 1, &refs).unwrap();
            let text = code.to_text();
            let again = parse_code(&text).unwrap();
            prop_assert_eq!(&again, &code);
            prop_assert_eq!(again.to_text(), text);
        }
    }
}

//! Synthesis and analysis of quantum convolutional encoders.

pub mod analysis;
pub mod bits;
pub mod circuit;
pub mod code;
pub mod error;
pub mod gf2;
pub mod graph;
pub mod pauli;
pub mod report;
pub mod shorten;
pub mod symplectic;
pub mod synth;
pub mod tableau;

pub use bits::BitVec;
pub use code::{ConvolutionalCode, GeneratorPolynomial, Violation};
pub use error::{Error, Result};
pub use gf2::BinaryMatrix;
pub use pauli::PauliOperator;

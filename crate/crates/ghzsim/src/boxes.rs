//! No-signaling realizations of the nonlocal boxes: PR, Millionaire,
//! bipartite and n-partite Cosine, and the function-input box of the
//! recursive decomposition.
//!
//! Every box is realized the same way: the first n−1 outputs are independent
//! fair bits, the last output completes the parity demanded by the box
//! relation. This makes relation exactness hold on every single call, and
//! makes every strict subset of outputs exactly uniform and independent of
//! all inputs — no-signaling by construction.

use smallvec::SmallVec;
use thiserror::Error;

use crate::core::{sg, sg_cos, Bit, BitSource, PhaseAngle, ZERO};

#[derive(Debug, Error, PartialEq)]
pub enum BoxError {
    #[error("input {0} outside [0, 1)")]
    InputOutOfRange(f64),
    #[error("index {index} outside function domain of size {domain}")]
    IndexOutOfRange { index: usize, domain: usize },
}

/// Outputs of one box evaluation, one bit per party, together with the
/// relation bit the box enforces. The parity of `outputs` equals `relation`
/// exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxOutcome {
    pub outputs: SmallVec<[Bit; 8]>,
    pub relation: Bit,
}

impl BoxOutcome {
    fn realize(n: usize, relation: Bit, bits: &mut impl BitSource) -> Self {
        debug_assert!(n >= 1);
        let mut outputs: SmallVec<[Bit; 8]> = SmallVec::with_capacity(n);
        let mut acc = ZERO;
        for _ in 0..n - 1 {
            let b = bits.draw_bit();
            acc = acc ^ b;
            outputs.push(b);
        }
        outputs.push(acc ^ relation);
        BoxOutcome { outputs, relation }
    }

    /// The two outputs of a bipartite box.
    pub fn pair(&self) -> (Bit, Bit) {
        assert_eq!(self.outputs.len(), 2);
        (self.outputs[0], self.outputs[1])
    }

    pub fn parity(&self) -> Bit {
        self.outputs.iter().fold(ZERO, |acc, &b| acc ^ b)
    }
}

/// PR box: binary inputs x, y; locally random outputs with a ⊕ b = x·y.
pub fn eval_pr(x: Bit, y: Bit, bits: &mut impl BitSource) -> BoxOutcome {
    BoxOutcome::realize(2, x.and(y), bits)
}

/// Millionaire box: real inputs x, y ∈ [0, 1); a ⊕ b = sg(x − y).
pub fn eval_m(x: f64, y: f64, bits: &mut impl BitSource) -> Result<BoxOutcome, BoxError> {
    for v in [x, y] {
        if !(0.0..1.0).contains(&v) {
            return Err(BoxError::InputOutOfRange(v));
        }
    }
    Ok(BoxOutcome::realize(2, sg(x - y), bits))
}

/// Bipartite Cosine box: angle inputs; a ⊕ b = sg(cos(φa + φb)).
pub fn eval_c2(phi_a: PhaseAngle, phi_b: PhaseAngle, bits: &mut impl BitSource) -> BoxOutcome {
    BoxOutcome::realize(2, sg_cos(phi_a.radians() + phi_b.radians()), bits)
}

/// n-partite Cosine box: Σ a_i mod 2 = sg(cos(Σ φ_i)); any strict subset of
/// outputs is uniform. n = 1 degenerates to local evaluation of sg(cos φ).
pub fn eval_cn(phis: &[PhaseAngle], bits: &mut impl BitSource) -> BoxOutcome {
    assert!(!phis.is_empty(), "C box needs at least one party");
    let sum: f64 = phis.iter().map(|p| p.radians()).sum();
    BoxOutcome::realize(phis.len(), sg_cos(sum), bits)
}

/// Finite function table: the one-sided input of the function box, total on
/// its domain of size m.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionTable {
    values: Vec<Bit>,
}

impl FunctionTable {
    pub fn new(values: Vec<Bit>) -> Self {
        assert!(!values.is_empty(), "function table must be total on a nonempty domain");
        FunctionTable { values }
    }

    pub fn domain_size(&self) -> usize {
        self.values.len()
    }

    pub fn value(&self, x: usize) -> Result<Bit, BoxError> {
        self.values.get(x).copied().ok_or(BoxError::IndexOutOfRange {
            index: x,
            domain: self.values.len(),
        })
    }
}

/// Function-input box: one side holds a function table f, the other an index
/// x; a ⊕ b = f(x). Finite-grid form of the decomposition's box.
pub fn eval_fbox(
    f: &FunctionTable,
    x: usize,
    bits: &mut impl BitSource,
) -> Result<BoxOutcome, BoxError> {
    Ok(BoxOutcome::realize(2, f.value(x)?, bits))
}

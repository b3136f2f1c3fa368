//! Simulating a Millionaire box with classical communication.
//!
//! The digit-exchange protocol: Alice sends her nth binary digit, Bob
//! answers whether it matches his, and they stop at the first mismatch.
//! Each round costs two bits (one each way); under independent uniform
//! inputs the protocol stops at round n with probability 2^−n, so the
//! expected cost is 4 bits. Exact simulation with bounded worst-case
//! communication is impossible (a crossing-sequence argument: with 2^k
//! possible inputs per side, fewer than k exchanged bits would force two
//! distinct equal-input pairs onto the same communication pattern, and
//! cross-pairing them makes the comparison answer contradict itself), which
//! is why only the expected cost is finite here.
//!
//! [`run_tri_comm`] replays the tripartite model with each C box backed by
//! this protocol (4 bits average each) and each PR box charged one bit of
//! communication, for the 10-bit average total.

use thiserror::Error;

use crate::boxes::eval_pr;
use crate::conversions::c_box_m_inputs;
use crate::core::{sg_cos, Bit, BitSource, HiddenVariables, PhaseAngle, RandomStream, ONE, ZERO};
use crate::protocols::RunResult;
use crate::transcript::{BoxKind, BoxRecord, PortInput, Transcript};

/// Digit cap: 53 binary digits represent every f64 drawn from [0, 1)
/// exactly. Expansions still equal at the cap are declared equal, which the
/// tie rule maps to relation bit 1.
pub const MAX_DIGITS: usize = 53;

#[derive(Debug, Error, PartialEq)]
pub enum CommError {
    #[error("input {0} outside [0, 1)")]
    InputOutOfRange(f64),
    #[error("expansion length {0} exceeds the {MAX_DIGITS}-digit cap")]
    TooManyDigits(usize),
}

/// A number x = Σ digits[i]·2^(−i−1) ∈ [0, 1) in binary.
#[derive(Debug, Clone, PartialEq)]
pub struct BinaryExpansion {
    digits: Vec<Bit>,
}

impl BinaryExpansion {
    pub fn new(digits: Vec<Bit>) -> Result<Self, CommError> {
        if digits.len() > MAX_DIGITS {
            return Err(CommError::TooManyDigits(digits.len()));
        }
        Ok(BinaryExpansion { digits })
    }

    /// Expand a fraction to `len` binary digits. Exact for len = 53.
    pub fn from_fraction(x: f64, len: usize) -> Result<Self, CommError> {
        if !(0.0..1.0).contains(&x) {
            return Err(CommError::InputOutOfRange(x));
        }
        if len > MAX_DIGITS {
            return Err(CommError::TooManyDigits(len));
        }
        let mut v = x;
        let mut digits = Vec::with_capacity(len);
        for _ in 0..len {
            v *= 2.0;
            if v >= 1.0 {
                digits.push(ONE);
                v -= 1.0;
            } else {
                digits.push(ZERO);
            }
        }
        Ok(BinaryExpansion { digits })
    }

    pub fn digits(&self) -> &[Bit] {
        &self.digits
    }

    /// Digit i, zero-padded beyond the stored length.
    fn digit(&self, i: usize) -> Bit {
        self.digits.get(i).copied().unwrap_or(ZERO)
    }

    pub fn value(&self) -> f64 {
        self.digits
            .iter()
            .enumerate()
            .map(|(i, d)| d.value() as f64 * (0.5f64).powi(i as i32 + 1))
            .sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    AliceLarger,
    BobLargerOrEqual,
}

/// Record of one digit-exchange run. One bit flows each way per round, so
/// the total cost is 2 × rounds.
#[derive(Debug, Clone, PartialEq)]
pub struct CommTrace {
    pub rounds: usize,
    pub bits_sent_alice: usize,
    pub bits_sent_bob: usize,
    pub decided: Decision,
    pub outputs: (Bit, Bit),
}

impl CommTrace {
    pub fn total_bits(&self) -> usize {
        self.bits_sent_alice + self.bits_sent_bob
    }

    /// The M-box relation bit the outputs realize.
    pub fn relation(&self) -> Bit {
        self.outputs.0 ^ self.outputs.1
    }
}

/// Run the digit-exchange protocol. Alice's output is a predetermined
/// random bit; Bob's completes the M-box relation a ⊕ b = sg(x − y).
pub fn simulate_m_comm(
    x: &BinaryExpansion,
    y: &BinaryExpansion,
    bits: &mut impl BitSource,
) -> CommTrace {
    let len = x.digits.len().max(y.digits.len()).max(1);
    let mut rounds = len;
    let mut decided = Decision::BobLargerOrEqual;
    for i in 0..len {
        if x.digit(i) != y.digit(i) {
            rounds = i + 1;
            decided = if x.digit(i) == ONE {
                Decision::AliceLarger
            } else {
                Decision::BobLargerOrEqual
            };
            break;
        }
    }
    // sg(x − y): 0 when x > y, 1 when x ≤ y.
    let relation = match decided {
        Decision::AliceLarger => ZERO,
        Decision::BobLargerOrEqual => ONE,
    };
    let a = bits.draw_bit();
    CommTrace {
        rounds,
        bits_sent_alice: rounds,
        bits_sent_bob: rounds,
        decided,
        outputs: (a, a ^ relation),
    }
}

/// Histogram of round counts over `trials` runs with independent uniform
/// inputs. Index r holds the number of runs that stopped at round r.
pub fn comm_cost_distribution(trials: usize, rng: &mut RandomStream) -> Vec<u64> {
    let mut hist = vec![0u64; MAX_DIGITS + 1];
    for _ in 0..trials {
        let x = BinaryExpansion::from_fraction(rng.uniform(), MAX_DIGITS).unwrap();
        let y = BinaryExpansion::from_fraction(rng.uniform(), MAX_DIGITS).unwrap();
        let t = simulate_m_comm(&x, &y, rng);
        hist[t.rounds] += 1;
    }
    hist
}

/// A C box realized over the digit-exchange M simulation; returns the two
/// corrected outputs and the number of rounds spent.
fn c2_via_comm(
    pa: PhaseAngle,
    pb: PhaseAngle,
    bits: &mut impl BitSource,
) -> ((Bit, Bit), usize) {
    let ((x, flip_a), (y, flip_b)) = c_box_m_inputs(pa, pb);
    let xe = BinaryExpansion::from_fraction(x, MAX_DIGITS).unwrap();
    let ye = BinaryExpansion::from_fraction(y, MAX_DIGITS).unwrap();
    let t = simulate_m_comm(&xe, &ye, bits);
    ((t.outputs.0 ^ flip_a, t.outputs.1 ^ flip_b), t.rounds)
}

/// The tripartite model with communication-backed resources: each C box
/// runs the digit-exchange protocol (2 bits per round), each PR box is
/// evaluated natively and charged 1 bit. Returns the run and the total bit
/// count. Outcome statistics are identical in distribution to the
/// box-based tripartite model.
pub fn run_tri_comm(
    phi_a: PhaseAngle,
    phi_b: PhaseAngle,
    phi_c: PhaseAngle,
    hidden: &HiddenVariables,
    bits: &mut impl BitSource,
) -> (RunResult, u64) {
    let mut tr = Transcript::recording();
    let mut record = |kind, parties: [usize; 2], inputs: [PortInput; 2], out: (Bit, Bit)| {
        tr.record(BoxRecord {
            kind,
            parties: parties.to_vec(),
            inputs: inputs.to_vec(),
            outputs: vec![out.0, out.1],
        });
    };

    let pb1 = phi_b + hidden.phi1;
    let pb2 = phi_b + hidden.phi2;
    let ((a1, b1), r1) = c2_via_comm(phi_a, pb1, bits);
    record(
        BoxKind::Millionaire,
        [0, 1],
        [PortInput::Angle(phi_a.radians()), PortInput::Angle(pb1.radians())],
        (a1, b1),
    );
    let ((a2, b2), r2) = c2_via_comm(phi_a, pb2, bits);
    record(
        BoxKind::Millionaire,
        [0, 1],
        [PortInput::Angle(phi_a.radians()), PortInput::Angle(pb2.radians())],
        (a2, b2),
    );

    let t_plus = sg_cos((phi_c - hidden.phi_plus).radians());
    let t_minus = sg_cos((phi_c - hidden.phi_minus).radians());
    let z = t_plus ^ t_minus;
    let (a3, c1) = eval_pr(a1 ^ a2, z, bits).pair();
    record(BoxKind::Pr, [0, 2], [PortInput::Bit(a1 ^ a2), PortInput::Bit(z)], (a3, c1));
    let (b3, c2) = eval_pr(b1 ^ b2, z, bits).pair();
    record(BoxKind::Pr, [1, 2], [PortInput::Bit(b1 ^ b2), PortInput::Bit(z)], (b3, c2));

    let outcomes = vec![
        (a1 ^ a3).sign(),
        (b1 ^ b3).sign(),
        (c1 ^ c2 ^ t_plus).sign(),
    ];
    // 2 bits per digit-exchange round, 1 bit per PR box.
    let total_bits = 2 * (r1 + r2) as u64 + 2;
    (
        RunResult {
            outcomes,
            transcript: tr,
            shared_randomness_draws: 2,
        },
        total_bits,
    )
}

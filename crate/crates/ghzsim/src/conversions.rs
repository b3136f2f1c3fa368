//! Equivalence of the bipartite Cosine box and the Millionaire box, in both
//! directions, exact per call.
//!
//! C from M: feed x = (φa mod π)/π and y = (−(φb + π/2) mod π)/π into the
//! M box, then flip each output by the parity of the corresponding floor
//! quotient. M from C: Alice inputs φa = x, Bob inputs φb = −y − π/2.

use std::f64::consts::{FRAC_PI_2, PI};

use smallvec::SmallVec;

use crate::boxes::{eval_c2, eval_m, BoxError, BoxOutcome};
use crate::core::{Bit, BitSource, PhaseAngle};

/// Mathematical modulus into [0, π) together with the floor quotient, both
/// derived from the same division so they stay consistent under rounding.
fn mod_pi(x: f64) -> (f64, i64) {
    let mut q = (x / PI).floor();
    let mut r = x - q * PI;
    if r < 0.0 {
        r += PI;
        q -= 1.0;
    } else if r >= PI {
        r -= PI;
        q += 1.0;
    }
    (r, q as i64)
}

fn parity(q: i64) -> Bit {
    Bit::new(q.rem_euclid(2) as u8)
}

/// The local input mapping of the C-from-M construction: each side's M-box
/// input in [0, 1) and the floor-parity bit it must xor onto its output.
pub fn c_box_m_inputs(phi_a: PhaseAngle, phi_b: PhaseAngle) -> ((f64, Bit), (f64, Bit)) {
    let (ra, qa) = mod_pi(phi_a.radians());
    let (rb, qb) = mod_pi(-(phi_b.radians() + FRAC_PI_2));
    ((ra / PI, parity(qa)), (rb / PI, parity(qb)))
}

/// Bipartite C box built from an M box: a ⊕ b = sg(cos(φa + φb)).
pub fn c2_from_m(phi_a: PhaseAngle, phi_b: PhaseAngle, bits: &mut impl BitSource) -> BoxOutcome {
    let ((x, flip_a), (y, flip_b)) = c_box_m_inputs(phi_a, phi_b);
    let m = eval_m(x, y, bits).expect("mod π maps into [0, 1)");
    let (a_raw, b_raw) = m.pair();
    let a = a_raw ^ flip_a;
    let b = b_raw ^ flip_b;
    BoxOutcome {
        outputs: SmallVec::from_slice(&[a, b]),
        relation: a ^ b,
    }
}

/// M box built from a C box: a ⊕ b = sg(x − y) for x, y ∈ [0, 1).
pub fn m_from_c2(x: f64, y: f64, bits: &mut impl BitSource) -> Result<BoxOutcome, BoxError> {
    for v in [x, y] {
        if !(0.0..1.0).contains(&v) {
            return Err(BoxError::InputOutOfRange(v));
        }
    }
    Ok(eval_c2(
        PhaseAngle::new(x),
        PhaseAngle::new(-y - FRAC_PI_2),
        bits,
    ))
}

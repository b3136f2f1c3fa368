//! The simulation models.
//!
//! All of them reproduce the equatorial GHZ correlations: every strict
//! subset of outcomes is exactly unbiased, and the full product expectation
//! is cos(Σφ).
//!
//! * [`run_svetlichny_tri`] — warm-up where Alice and Bob form a group and
//!   one PR box suffices.
//! * [`run_tri`] — three separated parties, 2 bipartite C boxes + 2 PR boxes.
//! * [`run_tri_bloch`] — same wiring with the last party measuring along an
//!   arbitrary Bloch vector.
//! * [`run_quad`] — four parties, 4 C boxes + 4 PR boxes.
//! * [`run_general`] — n parties split into groups of k and n−k:
//!   2 k-partite + 2 (n−k)-partite C boxes + k(n−k) PR boxes.
//! * [`run_single_cbox`] — one n-partite C box and a cosine-distributed
//!   local phase; no shared randomness at all.
//!
//! Group wiring convention for [`run_general`]: the lowest-indexed party of
//! each group carries the hidden-phase offset (+φ1/+φ2 for the first group,
//! −φ+/−φ− for the second). A group of one evaluates its two sg bits
//! locally (a 1-partite C box) and folds the first one into its output.

use smallvec::SmallVec;
use thiserror::Error;

use crate::boxes::{eval_cn, eval_pr};
use crate::core::{sg, sg_cos, Bit, BitSource, HiddenVariables, PhaseAngle, RandomStream,
                  UnitVector3, ZERO};
use crate::transcript::{BoxKind, BoxRecord, PortInput, Transcript};

#[derive(Debug, Error, PartialEq)]
pub enum ProtocolError {
    #[error("invalid split k = {k} for n = {n} parties (need 1 ≤ k ≤ n−1)")]
    InvalidSplit { k: usize, n: usize },
    #[error("need at least {min} parties, got {n}")]
    TooFewParties { n: usize, min: usize },
}

/// One party's measurement setting: an equatorial phase, or (for the last
/// party of the tripartite model) an arbitrary Bloch vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PartySetting {
    Phase(PhaseAngle),
    Bloch(UnitVector3),
}

pub type Outcomes = SmallVec<[i8; 8]>;

/// Everything one protocol run produced: the ±1 outcomes in party order,
/// the box transcript, and how many shared sphere points were consumed.
#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub outcomes: Vec<i8>,
    pub transcript: Transcript,
    pub shared_randomness_draws: u32,
}

fn record_bipartite(
    tr: &mut Transcript,
    kind: BoxKind,
    parties: [usize; 2],
    inputs: [PortInput; 2],
    out: (Bit, Bit),
) {
    tr.record(BoxRecord {
        kind,
        parties: parties.to_vec(),
        inputs: inputs.to_vec(),
        outputs: vec![out.0, out.1],
    });
}

fn c2_box(
    tr: &mut Transcript,
    parties: [usize; 2],
    pa: PhaseAngle,
    pb: PhaseAngle,
    bits: &mut impl BitSource,
) -> (Bit, Bit) {
    let out = eval_cn(&[pa, pb], bits).pair();
    record_bipartite(
        tr,
        BoxKind::Cosine { arity: 2 },
        parties,
        [PortInput::Angle(pa.radians()), PortInput::Angle(pb.radians())],
        out,
    );
    out
}

fn pr_box(
    tr: &mut Transcript,
    parties: [usize; 2],
    x: Bit,
    y: Bit,
    bits: &mut impl BitSource,
) -> (Bit, Bit) {
    let out = eval_pr(x, y, bits).pair();
    record_bipartite(tr, BoxKind::Pr, parties, [PortInput::Bit(x), PortInput::Bit(y)], out);
    out
}

/// Local evaluation of sg(cos φ), the degenerate 1-partite C box.
fn c1_box(tr: &mut Transcript, party: usize, phi: PhaseAngle) -> Bit {
    let b = sg_cos(phi.radians());
    tr.record(BoxRecord {
        kind: BoxKind::Cosine { arity: 1 },
        parties: vec![party],
        inputs: vec![PortInput::Angle(phi.radians())],
        outputs: vec![b],
    });
    b
}

fn signs(bits: &[Bit]) -> Outcomes {
    bits.iter().map(|b| b.sign()).collect()
}

// ---------------------------------------------------------------------------
// Svetlichny warm-up: Alice-Bob group vs Charlie, one PR box.
// ---------------------------------------------------------------------------

/// Group scenario with a single PR box. The group inputs the parity of its
/// two sg terms, Charlie likewise; after the box, the group splits its joint
/// outcome ᾱ into α = ±ᾱ, β = ±1 with a fair sign bit.
///
/// Draw order: PR free bit, then the sign-split bit.
pub fn svetlichny_tri_outcomes(
    phi_a: PhaseAngle,
    phi_b: PhaseAngle,
    phi_c: PhaseAngle,
    hidden: &HiddenVariables,
    bits: &mut impl BitSource,
    tr: &mut Transcript,
) -> Outcomes {
    let phi_ab = phi_a + phi_b;
    let s1 = sg_cos((phi_ab + hidden.phi1).radians());
    let s2 = sg_cos((phi_ab + hidden.phi2).radians());
    let t_plus = sg_cos((phi_c - hidden.phi_plus).radians());
    let t_minus = sg_cos((phi_c - hidden.phi_minus).radians());

    let (a, c) = pr_box(tr, [0, 2], s1 ^ s2, t_plus ^ t_minus, bits);
    let alpha_joint = (a ^ s1).sign();
    let gamma = (c ^ t_plus).sign();

    let split = bits.draw_bit();
    let (alpha, beta) = if split == ZERO {
        (alpha_joint, 1)
    } else {
        (-alpha_joint, -1)
    };
    Outcomes::from_slice(&[alpha, beta, gamma])
}

pub fn run_svetlichny_tri(
    phi_a: PhaseAngle,
    phi_b: PhaseAngle,
    phi_c: PhaseAngle,
    hidden: &HiddenVariables,
    bits: &mut impl BitSource,
) -> RunResult {
    let mut tr = Transcript::recording();
    let outcomes = svetlichny_tri_outcomes(phi_a, phi_b, phi_c, hidden, bits, &mut tr);
    RunResult {
        outcomes: outcomes.to_vec(),
        transcript: tr,
        shared_randomness_draws: 2,
    }
}

// ---------------------------------------------------------------------------
// Tripartite model: 2 C boxes + 2 PR boxes.
// ---------------------------------------------------------------------------

/// Charlie's two local sg bits; equatorial (angle) form.
fn charlie_bits_equatorial(phi_c: PhaseAngle, hidden: &HiddenVariables) -> (Bit, Bit) {
    (
        sg_cos((phi_c - hidden.phi_plus).radians()),
        sg_cos((phi_c - hidden.phi_minus).radians()),
    )
}

/// Charlie's two local sg bits from dot products with λ±; works for any
/// Bloch vector, and coincides bit-for-bit with the equatorial form when c
/// lies in the x-y plane.
fn charlie_bits_bloch(c: &UnitVector3, hidden: &HiddenVariables) -> (Bit, Bit) {
    (
        sg(c.dot3(&hidden.lambda_plus)),
        sg(c.dot3(&hidden.lambda_minus)),
    )
}

fn tri_outcomes_with_charlie(
    phi_a: PhaseAngle,
    phi_b: PhaseAngle,
    (t_plus, t_minus): (Bit, Bit),
    hidden: &HiddenVariables,
    bits: &mut impl BitSource,
    tr: &mut Transcript,
) -> Outcomes {
    // Two C boxes between Alice and Bob; Bob carries the hidden offsets.
    let (a1, b1) = c2_box(tr, [0, 1], phi_a, phi_b + hidden.phi1, bits);
    let (a2, b2) = c2_box(tr, [0, 1], phi_a, phi_b + hidden.phi2, bits);

    let z = t_plus ^ t_minus;
    let (a3, c1) = pr_box(tr, [0, 2], a1 ^ a2, z, bits);
    let (b3, c2) = pr_box(tr, [1, 2], b1 ^ b2, z, bits);

    signs(&[a1 ^ a3, b1 ^ b3, c1 ^ c2 ^ t_plus])
}

pub fn tri_outcomes(
    phi_a: PhaseAngle,
    phi_b: PhaseAngle,
    phi_c: PhaseAngle,
    hidden: &HiddenVariables,
    bits: &mut impl BitSource,
    tr: &mut Transcript,
) -> Outcomes {
    let charlie = charlie_bits_equatorial(phi_c, hidden);
    tri_outcomes_with_charlie(phi_a, phi_b, charlie, hidden, bits, tr)
}

/// Three separated parties, 2 bipartite C boxes + 2 PR boxes.
pub fn run_tri(
    phi_a: PhaseAngle,
    phi_b: PhaseAngle,
    phi_c: PhaseAngle,
    hidden: &HiddenVariables,
    bits: &mut impl BitSource,
) -> RunResult {
    let mut tr = Transcript::recording();
    let outcomes = tri_outcomes(phi_a, phi_b, phi_c, hidden, bits, &mut tr);
    RunResult {
        outcomes: outcomes.to_vec(),
        transcript: tr,
        shared_randomness_draws: 2,
    }
}

pub fn tri_bloch_outcomes(
    phi_a: PhaseAngle,
    phi_b: PhaseAngle,
    c: &UnitVector3,
    hidden: &HiddenVariables,
    bits: &mut impl BitSource,
    tr: &mut Transcript,
) -> Outcomes {
    let charlie = charlie_bits_bloch(c, hidden);
    tri_outcomes_with_charlie(phi_a, phi_b, charlie, hidden, bits, tr)
}

/// Tripartite model with the last party measuring along an arbitrary Bloch
/// vector: z1 = z2 = sg(c·λ+) ⊕ sg(c·λ−) and C folds in sg(c·λ+).
pub fn run_tri_bloch(
    phi_a: PhaseAngle,
    phi_b: PhaseAngle,
    c: &UnitVector3,
    hidden: &HiddenVariables,
    bits: &mut impl BitSource,
) -> RunResult {
    let mut tr = Transcript::recording();
    let outcomes = tri_bloch_outcomes(phi_a, phi_b, c, hidden, bits, &mut tr);
    RunResult {
        outcomes: outcomes.to_vec(),
        transcript: tr,
        shared_randomness_draws: 2,
    }
}

// ---------------------------------------------------------------------------
// Four-partite model: 4 C boxes + 4 PR boxes.
// ---------------------------------------------------------------------------

pub fn quad_outcomes(
    phi: &[PhaseAngle; 4],
    hidden: &HiddenVariables,
    bits: &mut impl BitSource,
    tr: &mut Transcript,
) -> Outcomes {
    let [pa, pb, pc, pd] = *phi;
    // Group one: Alice-Bob, Bob carries +φ1/+φ2. Group two: Charlie-Dave,
    // Charlie carries −φ+/−φ−.
    let (a1, b1) = c2_box(tr, [0, 1], pa, pb + hidden.phi1, bits);
    let (a2, b2) = c2_box(tr, [0, 1], pa, pb + hidden.phi2, bits);
    let (c1, d1) = c2_box(tr, [2, 3], pc - hidden.phi_plus, pd, bits);
    let (c2, d2) = c2_box(tr, [2, 3], pc - hidden.phi_minus, pd, bits);

    let (ua, ub) = (a1 ^ a2, b1 ^ b2);
    let (vc, vd) = (c1 ^ c2, d1 ^ d2);
    let (a3, c3) = pr_box(tr, [0, 2], ua, vc, bits);
    let (a4, d3) = pr_box(tr, [0, 3], ua, vd, bits);
    let (b3, c4) = pr_box(tr, [1, 2], ub, vc, bits);
    let (b4, d4) = pr_box(tr, [1, 3], ub, vd, bits);

    signs(&[a1 ^ a3 ^ a4, b1 ^ b3 ^ b4, c1 ^ c3 ^ c4, d1 ^ d3 ^ d4])
}

/// Four separated parties, 4 bipartite C boxes + 4 PR boxes.
pub fn run_quad(
    phi: &[PhaseAngle; 4],
    hidden: &HiddenVariables,
    bits: &mut impl BitSource,
) -> RunResult {
    let mut tr = Transcript::recording();
    let outcomes = quad_outcomes(phi, hidden, bits, &mut tr);
    RunResult {
        outcomes: outcomes.to_vec(),
        transcript: tr,
        shared_randomness_draws: 2,
    }
}

// ---------------------------------------------------------------------------
// General two-group model.
// ---------------------------------------------------------------------------

struct GroupBits {
    /// Each member's output from the group's first C box.
    first: SmallVec<[Bit; 8]>,
    /// Each member's PR input: the parity of its two C-box outputs.
    pr_input: SmallVec<[Bit; 8]>,
}

/// Evaluate a group's two C boxes (arity = group size), with the designated
/// lowest-indexed member carrying the offsets.
fn group_eval(
    tr: &mut Transcript,
    parties: &[usize],
    phis: &[PhaseAngle],
    off1: PhaseAngle,
    off2: PhaseAngle,
    bits: &mut impl BitSource,
) -> GroupBits {
    debug_assert_eq!(parties.len(), phis.len());
    if parties.len() == 1 {
        let s1 = c1_box(tr, parties[0], phis[0] + off1);
        let s2 = c1_box(tr, parties[0], phis[0] + off2);
        return GroupBits {
            first: SmallVec::from_slice(&[s1]),
            pr_input: SmallVec::from_slice(&[s1 ^ s2]),
        };
    }
    let mut run = |off: PhaseAngle| -> SmallVec<[Bit; 8]> {
        let inputs: SmallVec<[PhaseAngle; 8]> = phis
            .iter()
            .enumerate()
            .map(|(i, &p)| if i == 0 { p + off } else { p })
            .collect();
        let out = eval_cn(&inputs, bits);
        tr.record(BoxRecord {
            kind: BoxKind::Cosine { arity: parties.len() },
            parties: parties.to_vec(),
            inputs: inputs.iter().map(|p| PortInput::Angle(p.radians())).collect(),
            outputs: out.outputs.to_vec(),
        });
        out.outputs
    };
    let o1 = run(off1);
    let o2 = run(off2);
    let pr_input = o1.iter().zip(o2.iter()).map(|(&a, &b)| a ^ b).collect();
    GroupBits { first: o1, pr_input }
}

pub fn general_outcomes(
    phi: &[PhaseAngle],
    k: usize,
    hidden: &HiddenVariables,
    bits: &mut impl BitSource,
    tr: &mut Transcript,
) -> Result<Outcomes, ProtocolError> {
    let n = phi.len();
    if n < 2 {
        return Err(ProtocolError::TooFewParties { n, min: 2 });
    }
    if k == 0 || k >= n {
        return Err(ProtocolError::InvalidSplit { k, n });
    }

    let parties1: Vec<usize> = (0..k).collect();
    let parties2: Vec<usize> = (k..n).collect();
    let g1 = group_eval(tr, &parties1, &phi[..k], hidden.phi1, hidden.phi2, bits);
    let g2 = group_eval(tr, &parties2, &phi[k..], -hidden.phi_plus, -hidden.phi_minus, bits);

    // Each party of the first group shares one PR box with each party of
    // the second; outputs fold the first C-box bit with all PR bits.
    let mut acc1: SmallVec<[Bit; 8]> = g1.first.clone();
    let mut acc2: SmallVec<[Bit; 8]> = g2.first.clone();
    for i in 0..k {
        for j in 0..n - k {
            let (p, q) = pr_box(tr, [parties1[i], parties2[j]], g1.pr_input[i], g2.pr_input[j], bits);
            acc1[i] = acc1[i] ^ p;
            acc2[j] = acc2[j] ^ q;
        }
    }

    let mut all: SmallVec<[Bit; 8]> = acc1;
    all.extend_from_slice(&acc2);
    Ok(signs(&all))
}

/// General two-group model: first k parties vs the remaining n−k,
/// 2 k-partite C boxes + 2 (n−k)-partite C boxes + k(n−k) PR boxes.
pub fn run_general(
    phi: &[PhaseAngle],
    k: usize,
    hidden: &HiddenVariables,
    bits: &mut impl BitSource,
) -> Result<RunResult, ProtocolError> {
    let mut tr = Transcript::recording();
    let outcomes = general_outcomes(phi, k, hidden, bits, &mut tr)?;
    Ok(RunResult {
        outcomes: outcomes.to_vec(),
        transcript: tr,
        shared_randomness_draws: 2,
    })
}

// ---------------------------------------------------------------------------
// Single n-partite C box model.
// ---------------------------------------------------------------------------

pub fn single_cbox_outcomes(
    phi: &[PhaseAngle],
    rng: &mut RandomStream,
    tr: &mut Transcript,
) -> Result<Outcomes, ProtocolError> {
    let n = phi.len();
    if n < 2 {
        return Err(ProtocolError::TooFewParties { n, min: 2 });
    }
    // The first party's local phase shift; drawn privately, not shared.
    let phi_lambda = crate::core::sample_cos_density(rng);
    let inputs: SmallVec<[PhaseAngle; 8]> = phi
        .iter()
        .enumerate()
        .map(|(i, &p)| if i == 0 { p + phi_lambda } else { p })
        .collect();
    let out = eval_cn(&inputs, rng);
    tr.record(BoxRecord {
        kind: BoxKind::Cosine { arity: n },
        parties: (0..n).collect(),
        inputs: inputs.iter().map(|p| PortInput::Angle(p.radians())).collect(),
        outputs: out.outputs.to_vec(),
    });
    Ok(signs(&out.outputs))
}

/// One n-partite C box; the first party shifts its input by a phase drawn
/// from the ½cos density. No shared randomness.
pub fn run_single_cbox(phi: &[PhaseAngle], rng: &mut RandomStream) -> Result<RunResult, ProtocolError> {
    let mut tr = Transcript::recording();
    let outcomes = single_cbox_outcomes(phi, rng, &mut tr)?;
    Ok(RunResult {
        outcomes: outcomes.to_vec(),
        transcript: tr,
        shared_randomness_draws: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::{make_hidden, sg_cos, EnumBits, ONE};
    use std::f64::consts::{FRAC_PI_4, PI};

    fn angles(xs: &[f64]) -> Vec<PhaseAngle> {
        xs.iter().map(|&x| PhaseAngle::new(x)).collect()
    }

    fn product(outcomes: &[i8]) -> f64 {
        outcomes.iter().map(|&o| o as f64).product()
    }

    /// Mean full-product over `trials` fresh-hidden runs.
    fn estimate<F: FnMut(&HiddenVariables, &mut RandomStream) -> Outcomes>(
        seed: u64,
        trials: usize,
        mut run: F,
    ) -> f64 {
        let mut rng = RandomStream::new(seed, 0);
        let mut sum = 0.0;
        for _ in 0..trials {
            let h = make_hidden(&mut rng);
            sum += product(&run(&h, &mut rng));
        }
        sum / trials as f64
    }

    #[test]
    fn svetlichny_deterministic_extremes() {
        let p0 = PhaseAngle::new(0.0);
        let mut rng = RandomStream::new(1, 0);
        for _ in 0..10_000 {
            let h = make_hidden(&mut rng);
            let r = run_svetlichny_tri(p0, p0, p0, &h, &mut rng);
            assert_eq!(product(&r.outcomes), 1.0);
            assert_eq!(r.transcript.count_pr(), 1);
        }
        // Σφ = π: every run yields product −1.
        let est = estimate(2, 100_000, |h, rng| {
            svetlichny_tri_outcomes(
                PhaseAngle::new(PI / 3.0),
                PhaseAngle::new(PI / 3.0),
                PhaseAngle::new(PI / 3.0),
                h,
                rng,
                &mut Transcript::disabled(),
            )
        });
        assert!((est + 1.0).abs() < 0.004, "est = {est}");
    }

    #[test]
    fn svetlichny_marginals_vanish() {
        let mut rng = RandomStream::new(3, 0);
        let mut sums = [0.0f64; 3];
        let n = 100_000;
        for _ in 0..n {
            let h = make_hidden(&mut rng);
            let o = svetlichny_tri_outcomes(
                PhaseAngle::new(0.7),
                PhaseAngle::new(1.9),
                PhaseAngle::new(0.2),
                &h,
                &mut rng,
                &mut Transcript::disabled(),
            );
            for i in 0..3 {
                sums[i] += o[i] as f64;
            }
        }
        for s in sums {
            assert!((s / n as f64).abs() < 0.01);
        }
    }

    #[test]
    fn tri_correlator() {
        let p0 = PhaseAngle::new(0.0);
        let est = estimate(4, 200_000, |h, rng| {
            tri_outcomes(p0, p0, p0, h, rng, &mut Transcript::disabled())
        });
        assert!((est - 1.0).abs() < 0.01, "est = {est}");

        let p6 = PhaseAngle::new(PI / 6.0);
        let est = estimate(5, 200_000, |h, rng| {
            tri_outcomes(p6, p6, p6, h, rng, &mut Transcript::disabled())
        });
        assert!(est.abs() < 0.01, "est = {est}");
    }

    #[test]
    fn tri_resource_counts() {
        let mut rng = RandomStream::new(6, 0);
        let h = make_hidden(&mut rng);
        let r = run_tri(
            PhaseAngle::new(0.1),
            PhaseAngle::new(0.2),
            PhaseAngle::new(0.3),
            &h,
            &mut rng,
        );
        assert_eq!(r.transcript.count_pr(), 2);
        assert_eq!(r.transcript.cosine_arities(), vec![2, 2]);
        assert_eq!(r.shared_randomness_draws, 2);
        assert!(r.transcript.bipartite_only());
    }

    #[test]
    fn tri_parity_identity_per_run() {
        // A⊕B⊕C == s1 ⊕ t+ ⊕ (s1⊕s2)(t+⊕t−) on every run.
        let mut rng = RandomStream::new(7, 0);
        for _ in 0..10_000 {
            let h = make_hidden(&mut rng);
            let (pa, pb, pc) = (
                PhaseAngle::new(rng.uniform() * 7.0 - 3.5),
                PhaseAngle::new(rng.uniform() * 7.0 - 3.5),
                PhaseAngle::new(rng.uniform() * 7.0 - 3.5),
            );
            let o = tri_outcomes(pa, pb, pc, &h, &mut rng, &mut Transcript::disabled());
            let s1 = sg_cos((pa + pb + h.phi1).radians());
            let s2 = sg_cos((pa + pb + h.phi2).radians());
            let tp = sg_cos((pc - h.phi_plus).radians());
            let tm = sg_cos((pc - h.phi_minus).radians());
            let expected = s1 ^ tp ^ (s1 ^ s2).and(tp ^ tm);
            assert_eq!(product(&o) as i8, expected.sign());
        }
    }

    #[test]
    fn tri_hidden_average() {
        // ⟨A+B+C⟩ over hidden variables = (1 − cos(Σφ))/2.
        let (pa, pb, pc) = (
            PhaseAngle::new(0.6),
            PhaseAngle::new(-1.3),
            PhaseAngle::new(2.0),
        );
        let n = 200_000;
        let mut rng = RandomStream::new(8, 0);
        let mut sum = 0.0;
        for _ in 0..n {
            let h = make_hidden(&mut rng);
            let s1 = sg_cos((pa + pb + h.phi1).radians());
            let s2 = sg_cos((pa + pb + h.phi2).radians());
            let tp = sg_cos((pc - h.phi_plus).radians());
            let tm = sg_cos((pc - h.phi_minus).radians());
            sum += (s1 ^ tp ^ (s1 ^ s2).and(tp ^ tm)).value() as f64;
        }
        let p = (1.0 - ((pa + pb + pc).radians()).cos()) / 2.0;
        let sigma = (p * (1.0 - p) / n as f64).sqrt();
        assert!((sum / n as f64 - p).abs() < 4.0 * sigma);
    }

    #[test]
    fn tri_subset_correlators_exactly_zero() {
        // At fixed hidden variables and inputs, enumerating the 2^4 box
        // configurations kills every strict-subset correlator exactly.
        let mut rng = RandomStream::new(9, 0);
        let h = make_hidden(&mut rng);
        let (pa, pb, pc) = (
            PhaseAngle::new(0.4),
            PhaseAngle::new(2.2),
            PhaseAngle::new(5.0),
        );
        for mask in 1u8..7 {
            // strict subsets of {0,1,2}
            let mut total = 0i32;
            for word in 0..16u64 {
                let mut bits = EnumBits::new(word, 4);
                let o = tri_outcomes(pa, pb, pc, &h, &mut bits, &mut Transcript::disabled());
                let mut p = 1i32;
                for i in 0..3 {
                    if mask & (1 << i) != 0 {
                        p *= o[i] as i32;
                    }
                }
                total += p;
            }
            assert_eq!(total, 0, "subset mask {mask:#b}");
        }
    }

    #[test]
    fn tri_bloch_reduces_to_tri_in_plane() {
        let mut rng_a = RandomStream::new(10, 0);
        let mut rng_b = RandomStream::new(10, 0);
        for _ in 0..2_000 {
            let h = make_hidden(&mut rng_a);
            let _ = make_hidden(&mut rng_b);
            let pa = PhaseAngle::new(rng_a.uniform() * 6.0);
            let pb = PhaseAngle::new(rng_a.uniform() * 6.0);
            let pc = PhaseAngle::new(rng_a.uniform() * 6.0);
            let _ = (rng_b.uniform(), rng_b.uniform(), rng_b.uniform());
            let c = UnitVector3::equatorial(pc);
            let r1 = run_tri(pa, pb, pc, &h, &mut rng_a);
            let r2 = run_tri_bloch(pa, pb, &c, &h, &mut rng_b);
            assert_eq!(r1.outcomes, r2.outcomes);
            assert_eq!(r1.transcript, r2.transcript);
        }
    }

    #[test]
    fn tri_bloch_z_axis_uncorrelated() {
        let c = UnitVector3::new(0.0, 0.0, 1.0).unwrap();
        let est = estimate(11, 200_000, |h, rng| {
            tri_bloch_outcomes(
                PhaseAngle::new(0.8),
                PhaseAngle::new(1.4),
                &c,
                h,
                rng,
                &mut Transcript::disabled(),
            )
        });
        assert!(est.abs() < 0.01, "est = {est}");
    }

    #[test]
    fn quad_correlator() {
        let z = [PhaseAngle::new(0.0); 4];
        let est = estimate(12, 200_000, |h, rng| {
            quad_outcomes(&z, h, rng, &mut Transcript::disabled())
        });
        assert!((est - 1.0).abs() < 0.01, "est = {est}");

        let q = [PhaseAngle::new(FRAC_PI_4); 4];
        let est = estimate(13, 200_000, |h, rng| {
            quad_outcomes(&q, h, rng, &mut Transcript::disabled())
        });
        assert!((est + 1.0).abs() < 0.01, "est = {est}");
    }

    #[test]
    fn quad_remove_one_party_leaves_tri_topology() {
        let mut rng = RandomStream::new(14, 0);
        let h = make_hidden(&mut rng);
        let phi = [0.3, 1.1, 2.9, 4.4].map(PhaseAngle::new);
        let r = run_quad(&phi, &h, &mut rng);
        assert_eq!(r.transcript.count_pr(), 4);
        assert_eq!(r.transcript.cosine_arities().len(), 4);
        for removed in 0..4 {
            let remaining: Vec<_> = r
                .transcript
                .entries()
                .iter()
                .filter(|e| !e.parties.contains(&removed))
                .collect();
            let pr = remaining.iter().filter(|e| e.kind == BoxKind::Pr).count();
            let c = remaining
                .iter()
                .filter(|e| matches!(e.kind, BoxKind::Cosine { arity: 2 }))
                .count();
            assert_eq!((pr, c), (2, 2), "removed party {removed}");
        }
    }

    #[test]
    fn quad_subset_correlators_exactly_zero() {
        let mut rng = RandomStream::new(15, 0);
        let h = make_hidden(&mut rng);
        let phi = [5.2, 0.4, 3.3, 1.8].map(PhaseAngle::new);
        for mask in 1u8..15 {
            let mut total = 0i32;
            for word in 0..256u64 {
                let mut bits = EnumBits::new(word, 8);
                let o = quad_outcomes(&phi, &h, &mut bits, &mut Transcript::disabled());
                let mut p = 1i32;
                for i in 0..4 {
                    if mask & (1 << i) != 0 {
                        p *= o[i] as i32;
                    }
                }
                total += p;
            }
            assert_eq!(total, 0, "subset mask {mask:#b}");
        }
    }

    #[test]
    fn general_reduces_to_tri() {
        let mut rng_a = RandomStream::new(16, 0);
        let mut rng_b = RandomStream::new(16, 0);
        for _ in 0..2_000 {
            let h = make_hidden(&mut rng_a);
            let _ = make_hidden(&mut rng_b);
            let phi = angles(&[
                rng_a.uniform() * 6.0,
                rng_a.uniform() * 6.0,
                rng_a.uniform() * 6.0,
            ]);
            let _ = (rng_b.uniform(), rng_b.uniform(), rng_b.uniform());
            let o1 = tri_outcomes(phi[0], phi[1], phi[2], &h, &mut rng_a, &mut Transcript::disabled());
            let o2 =
                general_outcomes(&phi, 2, &h, &mut rng_b, &mut Transcript::disabled()).unwrap();
            assert_eq!(o1, o2);
        }
    }

    #[test]
    fn general_resource_counts() {
        let mut rng = RandomStream::new(17, 0);
        let h = make_hidden(&mut rng);
        let phi = angles(&[0.1, 0.7, 1.1, 2.0, 4.1]);
        let r = run_general(&phi, 2, &h, &mut rng).unwrap();
        assert_eq!(r.transcript.count_pr(), 6);
        assert_eq!(r.transcript.cosine_arities(), vec![2, 2, 3, 3]);

        let r = run_general(&phi, 1, &h, &mut rng).unwrap();
        assert_eq!(r.transcript.count_pr(), 4);
        assert_eq!(r.transcript.cosine_arities(), vec![1, 1, 4, 4]);

        assert_eq!(
            run_general(&phi, 0, &h, &mut rng).unwrap_err(),
            ProtocolError::InvalidSplit { k: 0, n: 5 }
        );
        assert_eq!(
            run_general(&phi, 5, &h, &mut rng).unwrap_err(),
            ProtocolError::InvalidSplit { k: 5, n: 5 }
        );
    }

    #[test]
    fn general_five_party_correlator() {
        // Σφ = π/3 → ⟨product⟩ = 0.5.
        let phi = angles(&[0.3, -0.2, 0.5, PI / 3.0 - 0.7, 0.1]);
        let est = estimate(18, 200_000, |h, rng| {
            general_outcomes(&phi, 2, h, rng, &mut Transcript::disabled()).unwrap()
        });
        assert!((est - 0.5).abs() < 0.012, "est = {est}");
    }

    #[test]
    fn single_cbox_model() {
        let mut rng = RandomStream::new(19, 0);
        // n = 2, φa + φb = π/3 → 0.5.
        let phi = angles(&[1.0, PI / 3.0 - 1.0]);
        let n = 200_000;
        let mut sum = 0.0;
        for _ in 0..n {
            let o = single_cbox_outcomes(&phi, &mut rng, &mut Transcript::disabled()).unwrap();
            sum += product(&o);
        }
        assert!((sum / n as f64 - 0.5).abs() < 0.012);

        let r = run_single_cbox(&angles(&[0.0, 0.0, 0.0]), &mut rng).unwrap();
        assert_eq!(r.shared_randomness_draws, 0);
        assert_eq!(r.transcript.cosine_arities(), vec![3]);
        assert_eq!(r.transcript.count_pr(), 0);

        assert!(run_single_cbox(&angles(&[0.0]), &mut rng).is_err());
    }
}

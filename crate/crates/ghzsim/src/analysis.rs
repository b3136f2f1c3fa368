//! Ground truth and verification: the closed-form quantum correlators, the
//! Monte Carlo estimation harness, no-signaling checks, goodness-of-fit
//! helpers, and the Svetlichny expression.

use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};
use thiserror::Error;

use crate::core::{make_hidden, PhaseAngle, RandomStream, UnitVector3};
use crate::protocols::{
    general_outcomes, quad_outcomes, single_cbox_outcomes, svetlichny_tri_outcomes,
    tri_bloch_outcomes, tri_outcomes, Outcomes, ProtocolError,
};
use crate::transcript::Transcript;

#[derive(Debug, Error, PartialEq)]
pub enum AnalysisError {
    #[error("model {model} expects {want} angles, got {got}")]
    AngleCount { model: &'static str, want: usize, got: usize },
    #[error(transparent)]
    Protocol(#[from] ProtocolError),
    #[error("trials must be ≥ 1")]
    NoTrials,
}

/// Which simulation model to drive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Model {
    SvetlichnyTri,
    Tri,
    /// Tripartite model with the third party measuring along a Bloch vector;
    /// takes two angles for the first two parties.
    TriBloch(UnitVector3),
    Quad,
    General { k: usize },
    SingleCbox,
}

impl Model {
    pub fn id(&self) -> &'static str {
        match self {
            Model::SvetlichnyTri => "svetlichny-tri",
            Model::Tri => "tri",
            Model::TriBloch(_) => "tri-bloch",
            Model::Quad => "quad",
            Model::General { .. } => "general",
            Model::SingleCbox => "single-cbox",
        }
    }

    /// Number of parties given the angle list.
    pub fn parties(&self, angles: usize) -> usize {
        match self {
            Model::SvetlichnyTri | Model::Tri => 3,
            Model::TriBloch(_) => 3,
            Model::Quad => 4,
            Model::General { .. } | Model::SingleCbox => angles,
        }
    }

    pub fn validate(&self, angles: &[PhaseAngle]) -> Result<(), AnalysisError> {
        let want = match self {
            Model::SvetlichnyTri | Model::Tri => 3,
            Model::TriBloch(_) => 2,
            Model::Quad => 4,
            Model::General { k } => {
                if angles.len() < 2 || *k == 0 || *k >= angles.len() {
                    return Err(ProtocolError::InvalidSplit { k: *k, n: angles.len() }.into());
                }
                angles.len()
            }
            Model::SingleCbox => {
                if angles.len() < 2 {
                    return Err(ProtocolError::TooFewParties { n: angles.len(), min: 2 }.into());
                }
                angles.len()
            }
        };
        if angles.len() != want {
            return Err(AnalysisError::AngleCount { model: self.id(), want, got: angles.len() });
        }
        Ok(())
    }
}

/// One run of a model, drawing fresh hidden variables from the stream.
/// Call [`Model::validate`] first; invalid inputs panic here.
pub fn run_model_outcomes(
    model: &Model,
    angles: &[PhaseAngle],
    rng: &mut RandomStream,
    tr: &mut Transcript,
) -> Outcomes {
    match model {
        Model::SvetlichnyTri => {
            let h = make_hidden(rng);
            svetlichny_tri_outcomes(angles[0], angles[1], angles[2], &h, rng, tr)
        }
        Model::Tri => {
            let h = make_hidden(rng);
            tri_outcomes(angles[0], angles[1], angles[2], &h, rng, tr)
        }
        Model::TriBloch(c) => {
            let h = make_hidden(rng);
            tri_bloch_outcomes(angles[0], angles[1], c, &h, rng, tr)
        }
        Model::Quad => {
            let h = make_hidden(rng);
            let phi = [angles[0], angles[1], angles[2], angles[3]];
            quad_outcomes(&phi, &h, rng, tr)
        }
        Model::General { k } => {
            let h = make_hidden(rng);
            general_outcomes(angles, *k, &h, rng, tr).expect("validated split")
        }
        Model::SingleCbox => single_cbox_outcomes(angles, rng, tr).expect("validated arity"),
    }
}

/// Trials per stream: each chunk of this many trials draws from its own
/// stream id, so results are reproducible and independent of any later
/// parallel partitioning.
const CHUNK: u64 = 1 << 14;

/// Joint outcome counts over 2^n tuples. Bit i of the tuple index is set
/// when party i produced −1.
pub fn outcome_counts(
    model: &Model,
    angles: &[PhaseAngle],
    trials: u64,
    seed: u64,
) -> Result<Vec<u64>, AnalysisError> {
    model.validate(angles)?;
    if trials == 0 {
        return Err(AnalysisError::NoTrials);
    }
    let n = model.parties(angles.len());
    let mut counts = vec![0u64; 1 << n];
    let mut tr = Transcript::disabled();
    let chunks = trials.div_ceil(CHUNK);
    for c in 0..chunks {
        let mut rng = RandomStream::new(seed, c);
        let in_chunk = CHUNK.min(trials - c * CHUNK);
        for _ in 0..in_chunk {
            let o = run_model_outcomes(model, angles, &mut rng, &mut tr);
            let mut idx = 0usize;
            for (i, &v) in o.iter().enumerate() {
                if v < 0 {
                    idx |= 1 << i;
                }
            }
            counts[idx] += 1;
        }
    }
    Ok(counts)
}

/// Product expectation of a subset of parties, read off the joint counts.
pub fn subset_correlator(counts: &[u64], mask: usize) -> f64 {
    let trials: u64 = counts.iter().sum();
    let sum: i64 = counts
        .iter()
        .enumerate()
        .map(|(idx, &c)| {
            let sign = if (idx & mask).count_ones() % 2 == 0 { 1 } else { -1 };
            sign * c as i64
        })
        .sum();
    sum as f64 / trials as f64
}

/// One estimated correlator: the subset of parties, the empirical product
/// expectation, and its binomial standard error sqrt((1 − v²)/trials).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrelatorEstimate {
    pub subset: Vec<usize>,
    pub value: f64,
    pub trials: u64,
    pub std_error: f64,
}

/// Estimate all 2^n − 1 subset correlators of a model, fresh hidden
/// variables each trial.
pub fn estimate_correlators(
    model: &Model,
    angles: &[PhaseAngle],
    trials: u64,
    seed: u64,
) -> Result<Vec<CorrelatorEstimate>, AnalysisError> {
    let counts = outcome_counts(model, angles, trials, seed)?;
    let n = model.parties(angles.len());
    let mut out = Vec::with_capacity((1 << n) - 1);
    for mask in 1usize..1 << n {
        let value = subset_correlator(&counts, mask);
        let subset = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        out.push(CorrelatorEstimate {
            subset,
            value,
            trials,
            std_error: ((1.0 - value * value).max(0.0) / trials as f64).sqrt(),
        });
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Quantum oracle.
// ---------------------------------------------------------------------------

/// Full-correlator target for equatorial measurements: cos(Σφ).
pub fn ghz_correlator(angles: &[PhaseAngle]) -> f64 {
    assert!(angles.len() >= 2, "need at least 2 parties");
    angles.iter().map(|p| p.radians()).sum::<f64>().cos()
}

/// Full correlator when the third party measures along Bloch vector c and
/// the first two stay equatorial: the x-y projection of c scales the cosine
/// through c's azimuth, and the z component contributes nothing.
pub fn ghz_correlator_tri_bloch(phi_a: PhaseAngle, phi_b: PhaseAngle, c: &UnitVector3) -> f64 {
    let r = (c.x * c.x + c.y * c.y).sqrt();
    if r == 0.0 {
        return 0.0;
    }
    let phi_c = c.y.atan2(c.x);
    r * (phi_a.radians() + phi_b.radians() + phi_c).cos()
}

/// Joint probability of an outcome tuple: 2^−n (1 + (Π outcomes)·cos(Σφ)).
/// The unique no-signaling distribution with unbiased strict subsets and
/// the cosine full correlator.
pub fn ghz_joint(angles: &[PhaseAngle], outcomes: &[i8]) -> f64 {
    assert_eq!(angles.len(), outcomes.len());
    let product: f64 = outcomes.iter().map(|&o| o as f64).product();
    (1.0 + product * ghz_correlator(angles)) / (1u64 << angles.len()) as f64
}

/// Joint distribution over all 2^n tuples, indexed like [`outcome_counts`].
pub fn ghz_joint_distribution(angles: &[PhaseAngle]) -> Vec<f64> {
    let n = angles.len();
    let corr = ghz_correlator(angles);
    (0..1usize << n)
        .map(|idx| {
            let product = if idx.count_ones() % 2 == 0 { 1.0 } else { -1.0 };
            (1.0 + product * corr) / (1u64 << n) as f64
        })
        .collect()
}

// ---------------------------------------------------------------------------
// No-signaling check.
// ---------------------------------------------------------------------------

pub fn total_variation(a: &[u64], b: &[u64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let na: u64 = a.iter().sum();
    let nb: u64 = b.iter().sum();
    0.5 * a
        .iter()
        .zip(b)
        .map(|(&x, &y)| (x as f64 / na as f64 - y as f64 / nb as f64).abs())
        .sum::<f64>()
}

/// Total-variation distance between the complement's joint outcome
/// distributions when party `party` switches its angle from `angles[party]`
/// to `alt`. Zero (up to sampling noise) for a no-signaling model.
pub fn no_signaling_check(
    model: &Model,
    angles: &[PhaseAngle],
    party: usize,
    alt: PhaseAngle,
    trials: u64,
    seed: u64,
) -> Result<f64, AnalysisError> {
    let mut shifted = angles.to_vec();
    shifted[party] = alt;
    let c0 = outcome_counts(model, angles, trials, seed)?;
    let c1 = outcome_counts(model, &shifted, trials, seed + 1)?;
    let n = model.parties(angles.len());
    let collapse = |counts: &[u64]| -> Vec<u64> {
        let mut m = vec![0u64; 1 << (n - 1)];
        for (idx, &c) in counts.iter().enumerate() {
            let low = idx & ((1 << party) - 1);
            let high = (idx >> (party + 1)) << party;
            m[low | high] += c;
        }
        m
    };
    Ok(total_variation(&collapse(&c0), &collapse(&c1)))
}

// ---------------------------------------------------------------------------
// Goodness of fit.
// ---------------------------------------------------------------------------

/// Pearson chi-square of observed counts against cell probabilities.
/// Returns (statistic, p-value) with k − 1 degrees of freedom.
pub fn chi_square_gof(observed: &[u64], probs: &[f64]) -> (f64, f64) {
    assert_eq!(observed.len(), probs.len());
    let n: u64 = observed.iter().sum();
    let stat: f64 = observed
        .iter()
        .zip(probs)
        .map(|(&o, &p)| {
            let e = n as f64 * p;
            let d = o as f64 - e;
            d * d / e
        })
        .sum();
    let df = (observed.len() - 1) as f64;
    let p = 1.0 - ChiSquared::new(df).unwrap().cdf(stat);
    (stat, p)
}

/// Two-sample chi-square homogeneity test over matched count vectors.
pub fn chi_square_two_sample(a: &[u64], b: &[u64]) -> (f64, f64) {
    assert_eq!(a.len(), b.len());
    let na: u64 = a.iter().sum();
    let nb: u64 = b.iter().sum();
    let total = (na + nb) as f64;
    let mut stat = 0.0;
    let mut cells = 0usize;
    for (&x, &y) in a.iter().zip(b) {
        let pooled = (x + y) as f64;
        if pooled == 0.0 {
            continue;
        }
        cells += 1;
        let ea = na as f64 * pooled / total;
        let eb = nb as f64 * pooled / total;
        stat += (x as f64 - ea).powi(2) / ea + (y as f64 - eb).powi(2) / eb;
    }
    let df = (cells - 1) as f64;
    let p = 1.0 - ChiSquared::new(df).unwrap().cdf(stat);
    (stat, p)
}

// ---------------------------------------------------------------------------
// Svetlichny.
// ---------------------------------------------------------------------------

/// Two settings per party for the tripartite Svetlichny scenario.
pub type Settings3 = [[PhaseAngle; 2]; 3];

/// Sign of the term E(x, y, z) in the Svetlichny combination: +1 when at
/// most one party uses its second setting, −1 otherwise. With this
/// convention hybrid local models (any two parties colluding) reach at most
/// 4, which the deterministic-strategy enumeration in the tests pins down,
/// while the quantum maximum is 4√2.
pub fn svetlichny_sign(x: usize, y: usize, z: usize) -> f64 {
    if x + y + z <= 1 {
        1.0
    } else {
        -1.0
    }
}

/// The Svetlichny combination of the 8 full correlators produced by
/// `corr(φ_ax, φ_by, φ_cz)`.
pub fn svetlichny_value<F>(mut corr: F, settings: &Settings3) -> f64
where
    F: FnMut(PhaseAngle, PhaseAngle, PhaseAngle) -> f64,
{
    let mut s = 0.0;
    for x in 0..2 {
        for y in 0..2 {
            for z in 0..2 {
                s += svetlichny_sign(x, y, z)
                    * corr(settings[0][x], settings[1][y], settings[2][z]);
            }
        }
    }
    s
}

/// Svetlichny value of the closed-form oracle at the given settings.
pub fn svetlichny_oracle_value(settings: &Settings3) -> f64 {
    svetlichny_value(|a, b, c| ghz_correlator(&[a, b, c]), settings)
}

/// Numerically maximize the oracle Svetlichny value: seeded multistart
/// coordinate descent with a shrinking line-search window, refined to well
/// below 1e−3.
pub fn maximize_svetlichny_oracle(seed: u64) -> (Settings3, f64) {
    let mut rng = RandomStream::new(seed, 0);
    let mut best: Option<([f64; 6], f64)> = None;
    for _ in 0..24 {
        let mut p: [f64; 6] = std::array::from_fn(|_| rng.uniform() * std::f64::consts::TAU);
        let mut width = 0.4;
        for _ in 0..260 {
            for i in 0..6 {
                let mut local_best = (p[i], eval6(&p));
                for step in -4i32..=4 {
                    let cand = p[i] + width * step as f64 / 4.0;
                    let mut q = p;
                    q[i] = cand;
                    let v = eval6(&q);
                    if v > local_best.1 {
                        local_best = (cand, v);
                    }
                }
                p[i] = local_best.0;
            }
            width *= 0.96;
        }
        let v = eval6(&p);
        if best.map_or(true, |(_, bv)| v > bv) {
            best = Some((p, v));
        }
    }
    let (p, v) = best.unwrap();
    let settings = [
        [PhaseAngle::new(p[0]), PhaseAngle::new(p[1])],
        [PhaseAngle::new(p[2]), PhaseAngle::new(p[3])],
        [PhaseAngle::new(p[4]), PhaseAngle::new(p[5])],
    ];
    (settings, v)
}

fn eval6(p: &[f64; 6]) -> f64 {
    let settings = [
        [PhaseAngle::new(p[0]), PhaseAngle::new(p[1])],
        [PhaseAngle::new(p[2]), PhaseAngle::new(p[3])],
        [PhaseAngle::new(p[4]), PhaseAngle::new(p[5])],
    ];
    svetlichny_oracle_value(&settings)
}

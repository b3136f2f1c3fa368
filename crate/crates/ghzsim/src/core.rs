//! Fundamental types shared by every model: bits and their ±1 outcomes,
//! phase angles, unit vectors on the sphere, the hidden variables
//! (two uniform sphere points and their derived azimuths), and the seeded
//! randomness contract.
//!
//! The sign convention is the one used by all box relations:
//! sg(x) = 0 if x > 0 and sg(x) = 1 if x ≤ 0. The tie at exactly 0 maps to 1.
//! This is measure-zero but load-bearing: every module uses the same rule.

use std::f64::consts::{FRAC_PI_2, TAU};
use std::ops::{Add, BitXor, Neg, Sub};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Boundary of the first cosine quadrant, exact in f64: 3 * (π/2) and
/// 4 * (π/2) == TAU both round to the same values as the real products.
const THREE_FRAC_PI_2: f64 = 3.0 * FRAC_PI_2;

#[derive(Debug, Error, PartialEq)]
pub enum CoreError {
    #[error("non-finite input: {0}")]
    NonFinite(f64),
    #[error("degenerate azimuth: vector has zero x-y projection")]
    DegenerateAzimuth,
    #[error("vector ({0}, {1}, {2}) is not unit length")]
    NotUnit(f64, f64, f64),
}

/// A value in {0, 1}. All box relations are parities (mod-2 sums) of bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bit(u8);

pub const ZERO: Bit = Bit(0);
pub const ONE: Bit = Bit(1);

impl Bit {
    pub fn new(v: u8) -> Self {
        assert!(v <= 1, "bit out of range: {v}");
        Bit(v)
    }

    pub fn value(self) -> u8 {
        self.0
    }

    /// The ±1 outcome (−1)^bit.
    pub fn sign(self) -> i8 {
        if self.0 == 0 {
            1
        } else {
            -1
        }
    }

    /// Logical AND, i.e. the product term x·y appearing in the PR relation.
    pub fn and(self, other: Bit) -> Bit {
        Bit(self.0 & other.0)
    }
}

impl BitXor for Bit {
    type Output = Bit;
    fn bitxor(self, rhs: Bit) -> Bit {
        Bit(self.0 ^ rhs.0)
    }
}

impl From<bool> for Bit {
    fn from(b: bool) -> Bit {
        Bit(b as u8)
    }
}

/// The sign-as-bit function of the box relations:
/// sg(x) = 0 if x > 0, sg(x) = 1 if x ≤ 0.
///
/// Panics on non-finite input; every caller works with finite reals.
pub fn sg(x: f64) -> Bit {
    assert!(x.is_finite(), "sg: non-finite input {x}");
    Bit::from(x <= 0.0)
}

/// sg(cos θ), evaluated as a quadrant test on the normalized angle instead
/// of through `f64::cos`.
///
/// The library cos of the floating-point constant π/2 is a tiny positive
/// number, which would put sums like π/4 + π/4 on the wrong side of the tie
/// rule. The quadrant comparison makes the representable axis angles
/// (odd multiples of the f64 constant π/2) land exactly on the tie,
/// where sg yields 1, and agrees with sg(cos θ) everywhere else.
pub fn sg_cos(theta: f64) -> Bit {
    assert!(theta.is_finite(), "sg_cos: non-finite input {theta}");
    let t = theta.rem_euclid(TAU);
    Bit::from(!(t < FRAC_PI_2 || t > THREE_FRAC_PI_2))
}

/// The measurement phase of an equatorial setting, in radians.
///
/// Stored raw; normalization to [0, 2π) happens only on demand so that sums
/// like φ_a + φ_b + φ_1 do not accumulate reduction error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseAngle(f64);

impl PhaseAngle {
    pub fn new(radians: f64) -> Self {
        assert!(radians.is_finite(), "phase angle must be finite");
        PhaseAngle(radians)
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    /// The representative in [0, 2π).
    pub fn normalized(self) -> f64 {
        let t = self.0.rem_euclid(TAU);
        if t == TAU {
            0.0
        } else {
            t
        }
    }
}

impl Add for PhaseAngle {
    type Output = PhaseAngle;
    fn add(self, rhs: PhaseAngle) -> PhaseAngle {
        PhaseAngle(self.0 + rhs.0)
    }
}

impl Sub for PhaseAngle {
    type Output = PhaseAngle;
    fn sub(self, rhs: PhaseAngle) -> PhaseAngle {
        PhaseAngle(self.0 - rhs.0)
    }
}

impl Neg for PhaseAngle {
    type Output = PhaseAngle;
    fn neg(self) -> PhaseAngle {
        PhaseAngle(-self.0)
    }
}

/// A point on the unit sphere S², norm 1 within 1e−12.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitVector3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl UnitVector3 {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self, CoreError> {
        let norm = (x * x + y * y + z * z).sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > 1e-12 {
            return Err(CoreError::NotUnit(x, y, z));
        }
        Ok(UnitVector3 { x, y, z })
    }

    /// The in-plane setting (cos φ, sin φ, 0).
    pub fn equatorial(phi: PhaseAngle) -> Self {
        UnitVector3 {
            x: phi.radians().cos(),
            y: phi.radians().sin(),
            z: 0.0,
        }
    }

    pub fn dot3(&self, v: &[f64; 3]) -> f64 {
        self.x * v[0] + self.y * v[1] + self.z * v[2]
    }
}

/// Azimuth (polar-coordinate phase) of a 3-vector's x-y projection.
///
/// Fails when the projection is exactly zero; callers resample
/// (a measure-zero event for random sphere points).
pub fn azimuth(v: &[f64; 3]) -> Result<PhaseAngle, CoreError> {
    if v[0] == 0.0 && v[1] == 0.0 {
        return Err(CoreError::DegenerateAzimuth);
    }
    Ok(PhaseAngle::new(v[1].atan2(v[0])))
}

/// The shared hidden variables of the two-group models: two independent
/// uniform sphere vectors λ1, λ2, their sum and difference λ± = λ1 ± λ2,
/// and the azimuths φ1, φ2, φ+, φ− of all four.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HiddenVariables {
    pub lambda1: UnitVector3,
    pub lambda2: UnitVector3,
    pub lambda_plus: [f64; 3],
    pub lambda_minus: [f64; 3],
    pub phi1: PhaseAngle,
    pub phi2: PhaseAngle,
    pub phi_plus: PhaseAngle,
    pub phi_minus: PhaseAngle,
}

impl HiddenVariables {
    /// Build the derived fields from two given sphere points. Fails when any
    /// of the four azimuths is degenerate.
    pub fn from_vectors(lambda1: UnitVector3, lambda2: UnitVector3) -> Result<Self, CoreError> {
        let lambda_plus = [
            lambda1.x + lambda2.x,
            lambda1.y + lambda2.y,
            lambda1.z + lambda2.z,
        ];
        let lambda_minus = [
            lambda1.x - lambda2.x,
            lambda1.y - lambda2.y,
            lambda1.z - lambda2.z,
        ];
        Ok(HiddenVariables {
            phi1: azimuth(&[lambda1.x, lambda1.y, lambda1.z])?,
            phi2: azimuth(&[lambda2.x, lambda2.y, lambda2.z])?,
            phi_plus: azimuth(&lambda_plus)?,
            phi_minus: azimuth(&lambda_minus)?,
            lambda1,
            lambda2,
            lambda_plus,
            lambda_minus,
        })
    }
}

/// Source of fair box-internal bits. Implemented by [`RandomStream`] for
/// simulation and by [`EnumBits`] for exhaustive enumeration in tests.
pub trait BitSource {
    fn draw_bit(&mut self) -> Bit;
}

/// Seeded, stream-splittable randomness.
///
/// Backed by ChaCha8 (`rand_chacha::ChaCha8Rng`): the seed is expanded with
/// `seed_from_u64`, the stream id selects an independent ChaCha stream via
/// `set_stream`. Identical (seed, stream) gives identical draw sequences on
/// every platform; distinct streams are independent.
pub struct RandomStream {
    seed: u64,
    stream: u64,
    rng: ChaCha8Rng,
}

impl RandomStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        RandomStream { seed, stream, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    /// Uniform draw from [0, 1).
    pub fn uniform(&mut self) -> f64 {
        self.rng.gen::<f64>()
    }
}

impl BitSource for RandomStream {
    fn draw_bit(&mut self) -> Bit {
        Bit::from(self.rng.gen::<bool>())
    }
}

/// Deterministic bit source reading the binary digits of a counter word.
/// Used to enumerate all configurations of box-internal randomness.
pub struct EnumBits {
    word: u64,
    len: u32,
    pos: u32,
}

impl EnumBits {
    pub fn new(word: u64, len: u32) -> Self {
        assert!(len <= 64);
        EnumBits { word, len, pos: 0 }
    }
}

impl BitSource for EnumBits {
    fn draw_bit(&mut self) -> Bit {
        assert!(self.pos < self.len, "EnumBits exhausted after {} bits", self.len);
        let b = (self.word >> self.pos) & 1;
        self.pos += 1;
        Bit::new(b as u8)
    }
}

/// Uniform point on the sphere: z uniform on [−1, 1], azimuth uniform.
pub fn sample_sphere(rng: &mut RandomStream) -> UnitVector3 {
    let z = 2.0 * rng.uniform() - 1.0;
    let phi = TAU * rng.uniform();
    let r = (1.0 - z * z).max(0.0).sqrt();
    UnitVector3 {
        x: r * phi.cos(),
        y: r * phi.sin(),
        z,
    }
}

/// Draw the hidden variables: λ1, λ2 independent uniform on S². Resamples
/// internally on azimuth degeneracy.
pub fn make_hidden(rng: &mut RandomStream) -> HiddenVariables {
    loop {
        let l1 = sample_sphere(rng);
        let l2 = sample_sphere(rng);
        if let Ok(h) = HiddenVariables::from_vectors(l1, l2) {
            return h;
        }
    }
}

/// The cosine-density hidden phase of the single-box model:
/// φλ ∈ [−π/2, π/2] with density ½cos(φλ), by inverse CDF
/// φλ = arcsin(2u − 1).
pub fn sample_cos_density(rng: &mut RandomStream) -> PhaseAngle {
    PhaseAngle::new(cos_density_quantile(rng.uniform()))
}

/// Inverse CDF of ρ(φ) = ½cos(φ) on [−π/2, π/2].
pub fn cos_density_quantile(u: f64) -> f64 {
    (2.0 * u - 1.0).asin()
}

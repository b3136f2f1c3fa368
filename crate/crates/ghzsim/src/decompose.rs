//! Recursive simulation of any n-party, finite-input, binary-output
//! distribution whose only nonvanishing correlation is the full n-party
//! term, using bipartite boxes only.
//!
//! Base case n = 2: one bipartite box enforcing a1 ⊕ a2 = f(x1, x2). For
//! n > 2, the first n−1 parties run the scheme once for every value z the
//! last party's input could take (eagerly — evaluating only the realized z
//! would require knowing it, i.e. signaling), collect their per-z outputs
//! into function tables, and feed those into function boxes shared with the
//! last party, whose output is the parity of its box outputs.
//!
//! Strict-subset correlators are then killed exactly by
//! [`randomize_subcorrelations`]: one shared fair bit per pair of parties,
//! each party flipping by the parity of its pair bits. Every pair bit
//! enters the full parity twice, so the full correlation term survives.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::boxes::{eval_fbox, FunctionTable};
use crate::core::{Bit, BitSource, ZERO};
use crate::transcript::{BoxKind, BoxRecord, PortInput, Transcript};

#[derive(Debug, Error, PartialEq)]
pub enum DecomposeError {
    #[error("need at least 2 parties, got {0}")]
    TooFewParties(usize),
    #[error("table length {got} does not match grid product {want}")]
    TableLength { got: usize, want: usize },
    #[error("expected {want} inputs, got {got}")]
    InputCount { got: usize, want: usize },
    #[error("input {index} for party {party} outside its grid of size {grid}")]
    InputOutOfRange { party: usize, index: usize, grid: usize },
    #[error("expected {want} pair flips for {n} parties, got {got}")]
    PairFlipCount { n: usize, got: usize, want: usize },
}

/// Target of a decomposition run: a full-correlation function f on a product
/// grid, Σ a_i mod 2 = f(x_1, …, x_n). The table is flattened row-major in
/// party order (last party's index varies fastest).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationSpec {
    n: usize,
    grids: Vec<usize>,
    table: Vec<Bit>,
}

impl CorrelationSpec {
    pub fn new(grids: Vec<usize>, table: Vec<Bit>) -> Result<Self, DecomposeError> {
        let n = grids.len();
        if n < 2 {
            return Err(DecomposeError::TooFewParties(n));
        }
        let want: usize = grids.iter().product();
        if table.len() != want || want == 0 {
            return Err(DecomposeError::TableLength { got: table.len(), want });
        }
        Ok(CorrelationSpec { n, grids, table })
    }

    /// Uniformly random table over a uniform grid of size m per party.
    pub fn random(n: usize, m: usize, bits: &mut impl BitSource) -> Result<Self, DecomposeError> {
        let size = m.checked_pow(n as u32).expect("grid too large");
        let table = (0..size).map(|_| bits.draw_bit()).collect();
        CorrelationSpec::new(vec![m; n], table)
    }

    pub fn parties(&self) -> usize {
        self.n
    }

    pub fn grids(&self) -> &[usize] {
        &self.grids
    }

    pub fn check_inputs(&self, inputs: &[usize]) -> Result<(), DecomposeError> {
        if inputs.len() != self.n {
            return Err(DecomposeError::InputCount { got: inputs.len(), want: self.n });
        }
        for (party, (&x, &m)) in inputs.iter().zip(&self.grids).enumerate() {
            if x >= m {
                return Err(DecomposeError::InputOutOfRange { party, index: x, grid: m });
            }
        }
        Ok(())
    }

    pub fn value(&self, inputs: &[usize]) -> Result<Bit, DecomposeError> {
        self.check_inputs(inputs)?;
        let mut idx = 0;
        for (&x, &m) in inputs.iter().zip(&self.grids) {
            idx = idx * m + x;
        }
        Ok(self.table[idx])
    }

    /// Fix the last party's input to z: the (n−1)-party target f_z.
    fn restrict_last(&self, z: usize) -> CorrelationSpec {
        let m_last = *self.grids.last().unwrap();
        let table = self
            .table
            .chunks(m_last)
            .map(|row| row[z])
            .collect();
        CorrelationSpec {
            n: self.n - 1,
            grids: self.grids[..self.n - 1].to_vec(),
            table,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        let raw: CorrelationSpec = serde_json::from_str(s)?;
        CorrelationSpec::new(raw.grids, raw.table).map_err(serde::de::Error::custom)
    }
}

fn rec(
    spec: &CorrelationSpec,
    inputs: &[usize],
    party_ids: &[usize],
    bits: &mut impl BitSource,
    tr: &mut Transcript,
) -> Vec<Bit> {
    let n = spec.n;
    if n == 2 {
        let f = spec.value(inputs).expect("inputs validated at entry");
        let a1 = bits.draw_bit();
        let a2 = a1 ^ f;
        tr.record(BoxRecord {
            kind: BoxKind::Function,
            parties: party_ids.to_vec(),
            inputs: vec![PortInput::Index(inputs[0]), PortInput::Index(inputs[1])],
            outputs: vec![a1, a2],
        });
        return vec![a1, a2];
    }

    // One sub-run per possible value of the last party's input; alpha[z][i]
    // is party i's output in the z branch.
    let m_last = *spec.grids.last().unwrap();
    let alpha: Vec<Vec<Bit>> = (0..m_last)
        .map(|z| rec(&spec.restrict_last(z), &inputs[..n - 1], &party_ids[..n - 1], bits, tr))
        .collect();

    let x_last = inputs[n - 1];
    let mut out = vec![ZERO; n];
    for i in 0..n - 1 {
        let table = FunctionTable::new((0..m_last).map(|z| alpha[z][i]).collect());
        let o = eval_fbox(&table, x_last, bits).expect("index within grid");
        let (a_i, a_last) = o.pair();
        tr.record(BoxRecord {
            kind: BoxKind::Function,
            parties: vec![party_ids[i], party_ids[n - 1]],
            inputs: vec![PortInput::Table(m_last), PortInput::Index(x_last)],
            outputs: vec![a_i, a_last],
        });
        out[i] = a_i;
        out[n - 1] = out[n - 1] ^ a_last;
    }
    out
}

/// Run the recursive scheme: outputs whose parity equals f(inputs) exactly,
/// produced by bipartite boxes only.
pub fn decompose_run(
    spec: &CorrelationSpec,
    inputs: &[usize],
    bits: &mut impl BitSource,
) -> Result<(Vec<Bit>, Transcript), DecomposeError> {
    spec.check_inputs(inputs)?;
    let mut tr = Transcript::recording();
    let ids: Vec<usize> = (0..spec.n).collect();
    let outputs = rec(spec, inputs, &ids, bits, &mut tr);
    Ok((outputs, tr))
}

/// Number of boxes the recursion spends on a uniform grid of size m:
/// T(2) = 1, T(n) = m·T(n−1) + (n−1).
pub fn box_count(n: usize, m: usize) -> usize {
    assert!(n >= 2);
    let mut t = 1usize;
    for parties in 3..=n {
        t = m * t + (parties - 1);
    }
    t
}

/// Flip each party's output by the parity of its shared pair bits (one fair
/// bit per unordered pair, lexicographic order). Leaves the total parity
/// unchanged and zeroes every strict-subset correlator on average.
pub fn randomize_subcorrelations(
    outputs: &[Bit],
    pair_flips: &[Bit],
) -> Result<Vec<Bit>, DecomposeError> {
    let n = outputs.len();
    let want = n * (n - 1) / 2;
    if pair_flips.len() != want {
        return Err(DecomposeError::PairFlipCount { n, got: pair_flips.len(), want });
    }
    let mut out = outputs.to_vec();
    let mut idx = 0;
    for i in 0..n {
        for j in i + 1..n {
            out[i] = out[i] ^ pair_flips[idx];
            out[j] = out[j] ^ pair_flips[idx];
            idx += 1;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::{EnumBits, RandomStream, ONE};

    fn parity(bits: &[Bit]) -> Bit {
        bits.iter().fold(ZERO, |acc, &b| acc ^ b)
    }

    #[test]
    fn two_party_exhaustive() {
        let mut rng = RandomStream::new(1, 0);
        let spec = CorrelationSpec::random(2, 5, &mut rng).unwrap();
        for x0 in 0..5 {
            for x1 in 0..5 {
                let (out, tr) = decompose_run(&spec, &[x0, x1], &mut rng).unwrap();
                assert_eq!(parity(&out), spec.value(&[x0, x1]).unwrap());
                assert_eq!(tr.entries().len(), 1);
            }
        }
    }

    #[test]
    fn three_party_exhaustive_grid_eight() {
        let mut rng = RandomStream::new(2, 0);
        let spec = CorrelationSpec::random(3, 8, &mut rng).unwrap();
        for x0 in 0..8 {
            for x1 in 0..8 {
                for x2 in 0..8 {
                    let (out, tr) = decompose_run(&spec, &[x0, x1, x2], &mut rng).unwrap();
                    assert_eq!(parity(&out), spec.value(&[x0, x1, x2]).unwrap());
                    assert!(tr.bipartite_only());
                    assert_eq!(tr.entries().len(), box_count(3, 8));
                }
            }
        }
    }

    #[test]
    fn four_party_exhaustive_grid_four() {
        let mut rng = RandomStream::new(3, 0);
        let spec = CorrelationSpec::random(4, 4, &mut rng).unwrap();
        for idx in 0..256usize {
            let inputs = [idx >> 6 & 3, idx >> 4 & 3, idx >> 2 & 3, idx & 3];
            let (out, tr) = decompose_run(&spec, &inputs, &mut rng).unwrap();
            assert_eq!(parity(&out), spec.value(&inputs).unwrap());
            assert!(tr.bipartite_only());
            assert_eq!(tr.entries().len(), box_count(4, 4));
        }
    }

    #[test]
    fn input_validation() {
        let mut rng = RandomStream::new(4, 0);
        let spec = CorrelationSpec::random(3, 4, &mut rng).unwrap();
        assert_eq!(
            decompose_run(&spec, &[0, 1], &mut rng).unwrap_err(),
            DecomposeError::InputCount { got: 2, want: 3 }
        );
        assert_eq!(
            decompose_run(&spec, &[0, 4, 1], &mut rng).unwrap_err(),
            DecomposeError::InputOutOfRange { party: 1, index: 4, grid: 4 }
        );
        assert!(CorrelationSpec::new(vec![2], vec![ZERO, ZERO]).is_err());
        assert!(CorrelationSpec::new(vec![2, 2], vec![ZERO]).is_err());
    }

    #[test]
    fn pair_flips_preserve_total_parity() {
        let outputs = [ONE, ZERO, ONE];
        for word in 0..8u64 {
            let flips: Vec<Bit> = (0..3).map(|i| Bit::new(((word >> i) & 1) as u8)).collect();
            let out = randomize_subcorrelations(&outputs, &flips).unwrap();
            assert_eq!(parity(&out), parity(&outputs));
        }
    }

    #[test]
    fn pair_flips_zero_strict_subsets() {
        // Fixed box outputs, enumerate the 2³ pair-bit settings: every 1-
        // and 2-party correlator sums to exactly zero.
        let outputs = [ONE, ZERO, ZERO];
        for mask in 1u8..7 {
            let mut total = 0i32;
            for word in 0..8u64 {
                let flips: Vec<Bit> = (0..3).map(|i| Bit::new(((word >> i) & 1) as u8)).collect();
                let out = randomize_subcorrelations(&outputs, &flips).unwrap();
                let mut p = 1i32;
                for i in 0..3 {
                    if mask & (1 << i) != 0 {
                        p *= out[i].sign() as i32;
                    }
                }
                total += p;
            }
            assert_eq!(total, 0, "subset mask {mask:#b}");
        }
    }

    #[test]
    fn two_party_single_pair_bit_uniform_marginals() {
        let outputs = [ONE, ONE];
        let mut counts = [[0u32; 2]; 2];
        for word in 0..2u64 {
            let out = randomize_subcorrelations(&outputs, &[Bit::new(word as u8)]).unwrap();
            counts[0][out[0].value() as usize] += 1;
            counts[1][out[1].value() as usize] += 1;
        }
        assert_eq!(counts, [[1, 1], [1, 1]]);
    }

    #[test]
    fn full_run_with_enumeration_kills_subsets() {
        // Enumerate box bits and pair bits jointly for a small 3-party run:
        // full parity always equals f, strict subsets average to exactly 0.
        let mut rng = RandomStream::new(5, 0);
        let spec = CorrelationSpec::random(3, 2, &mut rng).unwrap();
        let inputs = [1usize, 0, 1];
        let f = spec.value(&inputs).unwrap();
        let n_box_bits = box_count(3, 2) as u32; // one free bit per box
        let mut subset_totals = [0i64; 7];
        for box_word in 0..(1u64 << n_box_bits) {
            let mut bits = EnumBits::new(box_word, n_box_bits);
            let (out, _) = decompose_run(&spec, &inputs, &mut bits).unwrap();
            assert_eq!(parity(&out), f);
            for flip_word in 0..8u64 {
                let flips: Vec<Bit> =
                    (0..3).map(|i| Bit::new(((flip_word >> i) & 1) as u8)).collect();
                let final_out = randomize_subcorrelations(&out, &flips).unwrap();
                for mask in 1u8..=7 {
                    let mut p = 1i64;
                    for i in 0..3 {
                        if mask & (1 << i) != 0 {
                            p *= final_out[i].sign() as i64;
                        }
                    }
                    subset_totals[mask as usize - 1] += p;
                }
            }
        }
        let denom = (1i64 << n_box_bits) * 8;
        for mask in 1u8..7 {
            assert_eq!(subset_totals[mask as usize - 1], 0, "subset {mask:#b}");
        }
        // Full-set correlator survives with the sign fixed by f.
        assert_eq!(subset_totals[6], f.sign() as i64 * denom);
    }

    #[test]
    fn json_round_trip() {
        let mut rng = RandomStream::new(6, 0);
        let spec = CorrelationSpec::random(3, 3, &mut rng).unwrap();
        let back = CorrelationSpec::from_json(&spec.to_json()).unwrap();
        assert_eq!(spec, back);
        assert!(CorrelationSpec::from_json("{\"n\":2,\"grids\":[2,2],\"table\":[]}").is_err());
    }
}

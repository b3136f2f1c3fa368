//! Command-line surface: batch simulation, verification suites, and
//! communication-cost measurement. Every command is a pure function of its
//! flags; all randomness flows from `--seed`.

use std::f64::consts::TAU;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ghzsim::analysis::{
    chi_square_gof, estimate_correlators, ghz_correlator, ghz_correlator_tri_bloch,
    ghz_joint_distribution, maximize_svetlichny_oracle, outcome_counts, subset_correlator,
    CorrelatorEstimate, Model,
};
use ghzsim::boxes::{eval_cn, eval_m, eval_pr};
use ghzsim::comm::{comm_cost_distribution, run_tri_comm};
use ghzsim::conversions::{c2_from_m, m_from_c2};
use ghzsim::core::{
    make_hidden, sg, sg_cos, Bit, EnumBits, PhaseAngle, RandomStream, UnitVector3,
};
use ghzsim::decompose::{decompose_run, randomize_subcorrelations, CorrelationSpec};
use ghzsim::transcript::Transcript;

/// Stream id reserved for drawing requested random angles, far away from
/// the per-chunk trial streams.
const ANGLE_STREAM: u64 = u64::MAX;

#[derive(Parser)]
#[command(name = "ghzsim", version, about = "GHZ correlation simulator on no-signaling boxes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Estimate all subset correlators of a model at one angle tuple.
    Simulate(SimulateArgs),
    /// Run a named verification suite; nonzero exit on any failing check.
    Verify {
        /// One of: boxes, tri, quad, general, single, conversions, comm,
        /// decompose, oracle.
        suite: String,
        #[arg(long, env = "GHZSIM_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Measure communication cost of the digit-exchange protocols.
    Commcost(CommcostArgs),
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct SimulateArgs {
    /// svetlichny-tri, tri, tri-bloch, quad, general, single-cbox.
    #[arg(long)]
    model: String,
    /// Comma-separated radians (degrees with --degrees), or "random:N".
    #[arg(long)]
    angles: String,
    /// Expected party count; checked against the model and angle list.
    #[arg(long)]
    n: Option<usize>,
    /// Group split for the general model.
    #[arg(long)]
    k: Option<usize>,
    /// Bloch vector "x,y,z" for tri-bloch.
    #[arg(long)]
    bloch: Option<String>,
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    #[arg(long, env = "GHZSIM_SEED", default_value_t = 0)]
    seed: u64,
    /// Interpret --angles in degrees.
    #[arg(long)]
    degrees: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CommcostArgs {
    /// m-box or tri-comm.
    #[arg(long)]
    model: String,
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    #[arg(long, env = "GHZSIM_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Simulate(args) => cmd_simulate(&args),
        Command::Verify { suite, seed } => cmd_verify(&suite, seed),
        Command::Commcost(args) => cmd_commcost(&args),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

fn parse_angles(spec: &str, degrees: bool, seed: u64) -> Result<Vec<PhaseAngle>, String> {
    if let Some(count) = spec.strip_prefix("random:") {
        let count: usize = count
            .parse()
            .map_err(|_| format!("bad random angle count {count:?}"))?;
        let mut rng = RandomStream::new(seed, ANGLE_STREAM);
        return Ok((0..count).map(|_| PhaseAngle::new(rng.uniform() * TAU)).collect());
    }
    spec.split(',')
        .map(|tok| {
            let v: f64 = tok
                .trim()
                .parse()
                .map_err(|_| format!("bad angle {tok:?}"))?;
            let rad = if degrees { v.to_radians() } else { v };
            if !rad.is_finite() {
                return Err(format!("non-finite angle {tok:?}"));
            }
            Ok(PhaseAngle::new(rad))
        })
        .collect()
}

fn parse_bloch(spec: &str) -> Result<UnitVector3, String> {
    let parts: Vec<f64> = spec
        .split(',')
        .map(|t| t.trim().parse().map_err(|_| format!("bad bloch component {t:?}")))
        .collect::<Result<_, _>>()?;
    if parts.len() != 3 {
        return Err("bloch vector needs 3 components".into());
    }
    UnitVector3::new(parts[0], parts[1], parts[2]).map_err(|e| e.to_string())
}

fn parse_model(id: &str, k: Option<usize>, bloch: Option<&str>) -> Result<Model, String> {
    match id {
        "svetlichny-tri" => Ok(Model::SvetlichnyTri),
        "tri" => Ok(Model::Tri),
        "tri-bloch" => {
            let b = bloch.ok_or("tri-bloch requires --bloch x,y,z")?;
            Ok(Model::TriBloch(parse_bloch(b)?))
        }
        "quad" => Ok(Model::Quad),
        "general" => Ok(Model::General { k: k.ok_or("general requires --k")? }),
        "single-cbox" => Ok(Model::SingleCbox),
        other => Err(format!("unknown model id {other:?}")),
    }
}

#[derive(Serialize)]
struct SimRecord {
    subset: Vec<usize>,
    value: f64,
    std_error: f64,
    trials: u64,
    /// Closed-form target where one exists; absent for the Svetlichny
    /// warm-up model, which does not reproduce the cosine correlator.
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<f64>,
}

#[derive(Serialize)]
struct SimOutput {
    schema: u32,
    command: &'static str,
    model: String,
    angles: Vec<f64>,
    trials: u64,
    seed: u64,
    records: Vec<SimRecord>,
}

fn oracle_for(model: &Model, angles: &[PhaseAngle], subset_len: usize, n: usize) -> Option<f64> {
    if subset_len < n {
        return Some(0.0);
    }
    match model {
        Model::SvetlichnyTri => None,
        Model::TriBloch(c) => Some(ghz_correlator_tri_bloch(angles[0], angles[1], c)),
        _ => Some(ghz_correlator(angles)),
    }
}

fn cmd_simulate(args: &SimulateArgs) -> Result<ExitCode, String> {
    let model = parse_model(&args.model, args.k, args.bloch.as_deref())?;
    let angles = parse_angles(&args.angles, args.degrees, args.seed)?;
    model.validate(&angles).map_err(|e| e.to_string())?;
    let n = model.parties(angles.len());
    if let Some(want) = args.n {
        if want != n {
            return Err(format!("--n {want} but model has {n} parties"));
        }
    }
    let estimates: Vec<CorrelatorEstimate> =
        estimate_correlators(&model, &angles, args.trials, args.seed).map_err(|e| e.to_string())?;
    let records = estimates
        .into_iter()
        .map(|e| SimRecord {
            oracle: oracle_for(&model, &angles, e.subset.len(), n),
            subset: e.subset,
            value: e.value,
            std_error: e.std_error,
            trials: e.trials,
        })
        .collect();
    let output = SimOutput {
        schema: 1,
        command: "simulate",
        model: args.model.clone(),
        angles: angles.iter().map(|p| p.radians()).collect(),
        trials: args.trials,
        seed: args.seed,
        records,
    };
    let text = match args.format {
        Format::Json => serde_json::to_string_pretty(&output).unwrap() + "\n",
        Format::Csv => sim_csv(&output),
    };
    emit(args.out.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

/// CSV numeric fields are produced by the JSON serializer so both formats
/// carry byte-identical numbers.
fn num(v: f64) -> String {
    serde_json::to_string(&v).unwrap()
}

fn sim_csv(out: &SimOutput) -> String {
    let mut s = String::from("subset,value,std_error,trials,oracle\n");
    for r in &out.records {
        let subset = r
            .subset
            .iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join("+");
        let oracle = r.oracle.map(num).unwrap_or_default();
        s.push_str(&format!(
            "{subset},{},{},{},{oracle}\n",
            num(r.value),
            num(r.std_error),
            r.trials
        ));
    }
    s
}

fn emit(path: Option<&std::path::Path>, text: &str) -> Result<(), String> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("writing {}: {e}", p.display())),
        None => {
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| e.to_string())
        }
    }
}

// ---------------------------------------------------------------------------
// commcost
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct CostBin {
    bits: u64,
    count: u64,
}

#[derive(Serialize)]
struct CostOutput {
    schema: u32,
    command: &'static str,
    model: String,
    trials: u64,
    seed: u64,
    mean: f64,
    std_error: f64,
    histogram: Vec<CostBin>,
}

fn cost_summary(hist_bits: &[(u64, u64)]) -> (f64, f64) {
    let n: u64 = hist_bits.iter().map(|&(_, c)| c).sum();
    let mean = hist_bits
        .iter()
        .map(|&(b, c)| b as f64 * c as f64)
        .sum::<f64>()
        / n as f64;
    let var = hist_bits
        .iter()
        .map(|&(b, c)| c as f64 * (b as f64 - mean).powi(2))
        .sum::<f64>()
        / (n as f64 - 1.0);
    (mean, (var / n as f64).sqrt())
}

fn cmd_commcost(args: &CommcostArgs) -> Result<ExitCode, String> {
    let hist_bits: Vec<(u64, u64)> = match args.model.as_str() {
        "m-box" => {
            let mut rng = RandomStream::new(args.seed, 0);
            let rounds = comm_cost_distribution(args.trials as usize, &mut rng);
            rounds
                .iter()
                .enumerate()
                .filter(|&(_, &c)| c > 0)
                // 2 bits per round: one each way.
                .map(|(r, &c)| (2 * r as u64, c))
                .collect()
        }
        "tri-comm" => {
            let mut hist = std::collections::BTreeMap::new();
            let mut rng = RandomStream::new(args.seed, 0);
            for _ in 0..args.trials {
                let pa = PhaseAngle::new(rng.uniform() * TAU);
                let pb = PhaseAngle::new(rng.uniform() * TAU);
                let pc = PhaseAngle::new(rng.uniform() * TAU);
                let h = make_hidden(&mut rng);
                let (_, bits) = run_tri_comm(pa, pb, pc, &h, &mut rng);
                *hist.entry(bits).or_insert(0u64) += 1;
            }
            hist.into_iter().collect()
        }
        other => return Err(format!("unknown commcost model {other:?}; use m-box or tri-comm")),
    };
    let (mean, std_error) = cost_summary(&hist_bits);
    let output = CostOutput {
        schema: 1,
        command: "commcost",
        model: args.model.clone(),
        trials: args.trials,
        seed: args.seed,
        mean,
        std_error,
        histogram: hist_bits.iter().map(|&(bits, count)| CostBin { bits, count }).collect(),
    };
    let text = match args.format {
        Format::Json => serde_json::to_string_pretty(&output).unwrap() + "\n",
        Format::Csv => {
            let mut s = String::from("key,value\n");
            s.push_str(&format!("mean,{}\n", num(output.mean)));
            s.push_str(&format!("std_error,{}\n", num(output.std_error)));
            for b in &output.histogram {
                s.push_str(&format!("bits_{},{}\n", b.bits, b.count));
            }
            s
        }
    };
    emit(args.out.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct Report {
    failures: u32,
}

impl Report {
    fn new() -> Self {
        Report { failures: 0 }
    }

    fn check(&mut self, name: &str, ok: bool, detail: &str) {
        if ok {
            println!("PASS {name}: {detail}");
        } else {
            self.failures += 1;
            println!("FAIL {name}: {detail}");
        }
    }

    fn close(self, name: &str) -> ExitCode {
        if self.failures == 0 {
            println!("suite {name}: all checks passed");
            ExitCode::SUCCESS
        } else {
            println!("suite {name}: {} check(s) failed", self.failures);
            ExitCode::FAILURE
        }
    }
}

fn random_tuple(rng: &mut RandomStream, n: usize) -> Vec<PhaseAngle> {
    (0..n).map(|_| PhaseAngle::new(rng.uniform() * TAU)).collect()
}

fn full_estimate(model: &Model, angles: &[PhaseAngle], trials: u64, seed: u64) -> f64 {
    let counts = outcome_counts(model, angles, trials, seed).unwrap();
    subset_correlator(&counts, (1 << model.parties(angles.len())) - 1)
}

fn verify_correlators(
    rep: &mut Report,
    model: &Model,
    n_angles: usize,
    tuples: usize,
    trials: u64,
    tol: f64,
    seed: u64,
) {
    let mut rng = RandomStream::new(seed, ANGLE_STREAM);
    let mut worst = 0.0f64;
    for _ in 0..tuples {
        let angles = random_tuple(&mut rng, n_angles);
        let est = full_estimate(model, &angles, trials, seed);
        let target = ghz_correlator(&angles);
        worst = worst.max((est - target).abs());
    }
    rep.check(
        &format!("{} full correlator ({tuples} tuples, {trials} trials)", model.id()),
        worst <= tol,
        &format!("max |est − cos Σφ| = {worst:.5} ≤ {tol}"),
    );
}

fn verify_subsets_vanish(rep: &mut Report, model: &Model, n_angles: usize, free_bits: u32, seed: u64) {
    // Exhaustive enumeration over box-internal bits at fixed hidden
    // variables: strict-subset sums must be exactly zero.
    let mut rng = RandomStream::new(seed, 1);
    let angles = random_tuple(&mut rng, n_angles);
    let n = model.parties(n_angles);
    let mut exact = true;
    for _ in 0..25 {
        let h = make_hidden(&mut rng);
        let mut sums = vec![0i64; 1 << n];
        for word in 0..1u64 << free_bits {
            let mut bits = EnumBits::new(word, free_bits);
            let mut tr = Transcript::disabled();
            let o = match model {
                Model::Tri => ghzsim::protocols::tri_outcomes(angles[0], angles[1], angles[2], &h, &mut bits, &mut tr),
                Model::Quad => {
                    let phi = [angles[0], angles[1], angles[2], angles[3]];
                    ghzsim::protocols::quad_outcomes(&phi, &h, &mut bits, &mut tr)
                }
                _ => unreachable!(),
            };
            for mask in 1usize..(1 << n) - 1 {
                let mut s = 1i64;
                for (i, &v) in o.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        s *= v as i64;
                    }
                }
                sums[mask] += s;
            }
        }
        exact &= sums[1..(1 << n) - 1].iter().all(|&s| s == 0);
    }
    rep.check(
        &format!("{} strict subsets vanish under enumeration", model.id()),
        exact,
        "every strict-subset sum exactly 0",
    );
}

fn suite_boxes(rep: &mut Report, seed: u64) {
    let mut ok = true;
    for xv in 0..2u8 {
        for yv in 0..2u8 {
            for word in 0..2u64 {
                let mut bits = EnumBits::new(word, 1);
                let o = eval_pr(Bit::new(xv), Bit::new(yv), &mut bits);
                ok &= o.parity() == Bit::new(xv & yv);
            }
        }
    }
    rep.check("pr relation exhaustive", ok, "a ⊕ b = xy over all inputs and bits");

    let mut rng = RandomStream::new(seed, 0);
    let mut ok = true;
    for _ in 0..10_000 {
        let x = rng.uniform();
        let y = rng.uniform();
        let o = eval_m(x, y, &mut rng).unwrap();
        ok &= o.parity() == sg(x - y);
    }
    rep.check("m relation sampled", ok, "a ⊕ b = sg(x − y), 10000 pairs, 0 failures");

    let mut ok = true;
    for arity in 2..=5usize {
        let phis = random_tuple(&mut rng, arity);
        let total: f64 = phis.iter().map(|p| p.radians()).sum();
        let mut margin = vec![0i64; arity];
        for word in 0..1u64 << (arity - 1) {
            let mut bits = EnumBits::new(word, arity as u32 - 1);
            let o = eval_cn(&phis, &mut bits);
            ok &= o.parity() == sg_cos(total);
            for (i, &b) in o.outputs.iter().enumerate() {
                margin[i] += b.sign() as i64;
            }
        }
        ok &= margin.iter().all(|&m| m == 0);
    }
    rep.check(
        "cn relation and balanced outputs",
        ok,
        "parity = sg(cos Σφ), single outputs exactly balanced, arity 2–5",
    );
}

fn suite_conversions(rep: &mut Report, seed: u64) {
    let mut rng = RandomStream::new(seed, 0);
    let mut fails = 0u32;
    for _ in 0..100_000 {
        let pa = PhaseAngle::new(rng.uniform() * TAU);
        let pb = PhaseAngle::new(rng.uniform() * TAU);
        if c2_from_m(pa, pb, &mut rng).relation != sg_cos(pa.radians() + pb.radians()) {
            fails += 1;
        }
    }
    rep.check("c2_from_m exact", fails == 0, &format!("{fails} mismatches in 100000"));

    let mut fails = 0u32;
    for _ in 0..100_000 {
        let x = rng.uniform();
        let y = rng.uniform();
        if m_from_c2(x, y, &mut rng).unwrap().relation != sg(x - y) {
            fails += 1;
        }
    }
    rep.check("m_from_c2 exact", fails == 0, &format!("{fails} mismatches in 100000"));
}

fn suite_comm(rep: &mut Report, seed: u64) {
    let mut rng = RandomStream::new(seed, 0);
    let trials = 100_000usize;
    let rounds = comm_cost_distribution(trials, &mut rng);
    let mean_bits = rounds
        .iter()
        .enumerate()
        .map(|(r, &c)| 2.0 * r as f64 * c as f64)
        .sum::<f64>()
        / trials as f64;
    rep.check(
        "m-box mean bits",
        (mean_bits - 4.0).abs() <= 0.05,
        &format!("mean = {mean_bits:.3}, target 4.00 ± 0.05"),
    );

    // Rounds follow geometric(1/2); pool the tail so expected counts stay
    // comfortable.
    let cap = 15usize;
    let mut obs = vec![0u64; cap + 1];
    let mut probs = vec![0.0f64; cap + 1];
    for (r, &c) in rounds.iter().enumerate().skip(1) {
        obs[r.min(cap)] += c;
    }
    for r in 1..cap {
        probs[r] = 0.5f64.powi(r as i32);
    }
    probs[cap] = 0.5f64.powi(cap as i32 - 1);
    let (stat, p) = chi_square_gof(&obs[1..], &probs[1..]);
    rep.check(
        "m-box rounds geometric",
        p >= 0.01,
        &format!("chi² = {stat:.2}, p = {p:.4} ≥ 0.01"),
    );

    let mut rng = RandomStream::new(seed, 1);
    let trials = 100_000u64;
    let mut total = 0u64;
    for _ in 0..trials {
        let pa = PhaseAngle::new(rng.uniform() * TAU);
        let pb = PhaseAngle::new(rng.uniform() * TAU);
        let pc = PhaseAngle::new(rng.uniform() * TAU);
        let h = make_hidden(&mut rng);
        total += run_tri_comm(pa, pb, pc, &h, &mut rng).1;
    }
    let mean = total as f64 / trials as f64;
    rep.check(
        "tri-comm mean bits",
        (mean - 10.0).abs() <= 0.1,
        &format!("mean = {mean:.3}, target 10.0 ± 0.1"),
    );
}

fn suite_decompose(rep: &mut Report, seed: u64) {
    let mut rng = RandomStream::new(seed, 0);
    let spec = CorrelationSpec::random(3, 8, &mut rng).unwrap();
    let mut ok = true;
    let mut bipartite = true;
    for x in 0..8usize {
        for y in 0..8 {
            for z in 0..8 {
                let inputs = [x, y, z];
                let (out, tr) = decompose_run(&spec, &inputs, &mut rng).unwrap();
                let parity = out.iter().fold(Bit::new(0), |acc, &b| acc ^ b);
                ok &= parity == spec.value(&inputs).unwrap();
                bipartite &= tr.bipartite_only();
            }
        }
    }
    rep.check("decompose parity exact", ok, "parity = f over all 512 tuples");
    rep.check("decompose bipartite only", bipartite, "no box touches 3 parties");

    // Pair flips preserve the total parity.
    let mut ok = true;
    for _ in 0..200 {
        let inputs = [0usize, 3, 5];
        let (out, _) = decompose_run(&spec, &inputs, &mut rng).unwrap();
        let before = out.iter().fold(Bit::new(0), |acc, &b| acc ^ b);
        let flips: Vec<Bit> = (0..3).map(|_| if rng.uniform() < 0.5 { Bit::new(1) } else { Bit::new(0) }).collect();
        let flipped = randomize_subcorrelations(&out, &flips).unwrap();
        let after = flipped.iter().fold(Bit::new(0), |acc, &b| acc ^ b);
        ok &= before == after;
    }
    rep.check("pair flips preserve parity", ok, "200 randomized runs");
}

fn suite_oracle(rep: &mut Report, seed: u64) {
    let mut rng = RandomStream::new(seed, 0);
    let mut ok = true;
    for n in 2..=5usize {
        let angles = random_tuple(&mut rng, n);
        let dist = ghz_joint_distribution(&angles);
        ok &= (dist.iter().sum::<f64>() - 1.0).abs() < 1e-12;
        ok &= dist.iter().all(|&p| p >= 0.0);
        for mask in 1usize..(1 << n) - 1 {
            let mut s = 0.0;
            for (idx, p) in dist.iter().enumerate() {
                s += if (idx & mask).count_ones() % 2 == 0 { *p } else { -*p };
            }
            ok &= s.abs() < 1e-12;
        }
    }
    rep.check("joint normalized, subsets vanish", ok, "n = 2..5");

    let (_, value) = maximize_svetlichny_oracle(seed);
    let target = 4.0 * 2f64.sqrt();
    rep.check(
        "svetlichny oracle maximum",
        (value - target).abs() <= 1e-3,
        &format!("max = {value:.6}, target 4√2 ± 1e−3"),
    );
}

fn suite_general(rep: &mut Report, seed: u64) {
    for (n, k) in [(5usize, 1usize), (5, 2), (6, 3)] {
        verify_correlators(rep, &Model::General { k }, n, 3, 100_000, 0.015, seed + k as u64);
    }
    // Resource counts on one run.
    let mut rng = RandomStream::new(seed, 9);
    let angles = random_tuple(&mut rng, 5);
    let h = make_hidden(&mut rng);
    let run = ghzsim::protocols::run_general(&angles, 2, &h, &mut rng).unwrap();
    let pr = run.transcript.count_pr();
    let arities = run.transcript.cosine_arities();
    rep.check(
        "general n=5 k=2 resources",
        pr == 6 && arities == vec![2, 2, 3, 3],
        &format!("{pr} PR boxes, C arities {arities:?}"),
    );
}

fn cmd_verify(suite: &str, seed: u64) -> Result<ExitCode, String> {
    let mut rep = Report::new();
    match suite {
        "boxes" => suite_boxes(&mut rep, seed),
        "tri" => {
            verify_correlators(&mut rep, &Model::Tri, 3, 5, 100_000, 0.015, seed);
            verify_subsets_vanish(&mut rep, &Model::Tri, 3, 4, seed);
        }
        "quad" => {
            verify_correlators(&mut rep, &Model::Quad, 4, 5, 100_000, 0.015, seed);
            verify_subsets_vanish(&mut rep, &Model::Quad, 4, 8, seed);
        }
        "general" => suite_general(&mut rep, seed),
        "single" => {
            for n in [2usize, 3, 5] {
                verify_correlators(&mut rep, &Model::SingleCbox, n, 3, 100_000, 0.015, seed + n as u64);
            }
        }
        "conversions" => suite_conversions(&mut rep, seed),
        "comm" => suite_comm(&mut rep, seed),
        "decompose" => suite_decompose(&mut rep, seed),
        "oracle" => suite_oracle(&mut rep, seed),
        other => return Err(format!("unknown suite {other:?}")),
    }
    Ok(rep.close(suite))
}

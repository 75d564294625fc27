//! Seeded random configurations and the randomized verification suite.
//!
//! Samplers draw from a deterministic ChaCha20 stream, so a seed pins every
//! instance. The suite samples all instances sequentially, then evaluates
//! them on a local worker pool; results keep instance order, so the report
//! is byte-identical for every worker count.

use num_integer::gcd;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::cohom::{rounded_hom_sheaf, verify_vanishing, Side};
use crate::fm::{
    ceiling_identity_check, fm_case1, fm_case2, fm_case3, fm_case4, hom_graded_compare,
    range_check, HomVerdict,
};
use crate::ratlat::{min_shifted_generator_auto, Cone, Int, QLattice, Rat, RatVec};
use crate::stacky::{
    build_config, crepancy_compare, fans_of, log_canonical, pullback_divisor, BirationalCase,
    BirationalConfig, MonomialLineBundle, PullbackMap,
};

use super::{int_value, ints, CliError, CliOutcome, Flags, OutputFormat, Report, VerdictLine};

fn reduce_content(a: &mut [i64]) {
    let g = a.iter().fold(0i64, |acc, &x| gcd(acc, x.abs()));
    if g > 1 {
        for x in a.iter_mut() {
            *x /= g;
        }
    }
}

/// Draws a reweight configuration with ranks up to 12 in dimension up
/// to 4.
pub fn sample_reweight(rng: &mut ChaCha20Rng) -> BirationalConfig {
    let n: usize = rng.gen_range(1..=4);
    let r: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=12)).collect();
    let s: Vec<i64> = r.iter().map(|&ri| rng.gen_range(1..=ri)).collect();
    build_config(BirationalCase::Reweight, n, n, n, vec![], ints(&r), Some(ints(&s)))
        .expect("sampled reweight data is valid")
}

/// Draws a contraction configuration with nonnegative crepancy sum.
pub fn sample_contraction(rng: &mut ChaCha20Rng) -> BirationalConfig {
    loop {
        let n: usize = rng.gen_range(2..=4);
        let mut a: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=5)).collect();
        reduce_content(&mut a);
        let r: Vec<i64> = (0..=n).map(|_| rng.gen_range(1..=6)).collect();
        let config =
            build_config(BirationalCase::Contraction, n, n, n, ints(&a), ints(&r), None)
                .expect("sampled contraction data is valid");
        let (_, sum) = crepancy_compare(&config);
        if !sum.is_negative() {
            return config;
        }
    }
}

/// Draws a flip configuration; the weight sign bands follow the sampled
/// band boundaries.
pub fn sample_flip(rng: &mut ChaCha20Rng) -> BirationalConfig {
    let n: usize = rng.gen_range(3..=4);
    let n_prime: usize = rng.gen_range(2..=n - 1);
    let n_dprime: usize = rng.gen_range(n_prime..=n - 1);
    let mut a: Vec<i64> = (0..n)
        .map(|i| {
            if i < n_prime {
                rng.gen_range(1..=4)
            } else if i < n_dprime {
                0
            } else {
                -rng.gen_range(1..=4)
            }
        })
        .collect();
    reduce_content(&mut a);
    let r: Vec<i64> = (0..=n).map(|_| rng.gen_range(1..=5)).collect();
    build_config(BirationalCase::Flip, n, n_prime, n_dprime, ints(&a), ints(&r), None)
        .expect("sampled flip data is valid")
}

/// Draws an inverse contraction; the ranks are built as multiples of the
/// weights so the weight bound holds by construction.
pub fn sample_inverse_contraction(rng: &mut ChaCha20Rng) -> BirationalConfig {
    let n: usize = rng.gen_range(2..=4);
    let mut a: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
    reduce_content(&mut a);
    let r_last: i64 = rng.gen_range(1..=2);
    let mut r: Vec<i64> = a
        .iter()
        .map(|&ai| r_last * n as i64 * ai * rng.gen_range(1..=2))
        .collect();
    r.push(r_last);
    build_config(BirationalCase::InverseContraction, n, n, n, ints(&a), ints(&r), None)
        .expect("sampled inverse contraction data satisfies the weight bound")
}

/// Uniform integer degree vector with entries in `[-bound, bound]`.
pub fn sample_degree(rng: &mut ChaCha20Rng, len: usize, bound: i64) -> Vec<Int> {
    ints(&(0..len).map(|_| rng.gen_range(-bound..=bound)).collect::<Vec<_>>())
}

/// A bundle inside the configuration's range window: rejection-samples
/// small vectors and falls back to the trivial bundle, whose statistic is
/// zero and lies in every window.
pub fn sample_window_bundle(
    rng: &mut ChaCha20Rng,
    config: &BirationalConfig,
    bound: i64,
    tries: usize,
) -> Vec<Int> {
    for _ in 0..tries {
        let k = sample_degree(rng, config.n() + 1, bound);
        if matches!(range_check(&MonomialLineBundle::new(k.clone()), config), Ok((true, _))) {
            return k;
        }
    }
    vec![Int::zero(); config.n() + 1]
}

/// Checks the chart generators of one functor application against the
/// independent shifted-generator search on each chart.
pub fn charts_match_oracle(config: &BirationalConfig, k: &[Int]) -> bool {
    match config.case() {
        BirationalCase::Reweight => {
            let Ok(res) = fm_case1(k, config) else { return false };
            let shift: RatVec = k
                .iter()
                .zip(config.s())
                .map(|(m, s)| Rat::new(m.clone(), s.clone()))
                .collect();
            let diag: Vec<Rat> =
                config.r().iter().map(|ri| Rat::new(Int::one(), ri.clone())).collect();
            let Ok(lattice) = QLattice::diagonal(&diag) else { return false };
            let cone = Cone::orthant(config.n());
            min_shifted_generator_auto(&shift, &cone, &lattice).ok().as_ref()
                == res.chart_generators.first()
        }
        BirationalCase::Contraction => {
            let l = MonomialLineBundle::new(k.to_vec());
            let Ok(res) = fm_case2(&l, config) else { return false };
            let (fan_x, _, _) = fans_of(config);
            let n = config.n();
            let shift: RatVec = (0..n)
                .map(|i| Rat::new(k[i].clone(), config.r()[i].clone()))
                .collect();
            (0..config.n_prime()).all(|i0| {
                let Ok(cone) = Cone::new(n, fan_x.cone_rays(i0)) else { return false };
                let lattice = fan_x.chart_dual(i0);
                min_shifted_generator_auto(&shift, &cone, &lattice).ok().as_ref()
                    == res.chart_generators.get(i0)
            })
        }
        BirationalCase::Flip => {
            let l = MonomialLineBundle::new(k.to_vec());
            let Ok(res) = fm_case3(&l, config) else { return false };
            let (fan_x, _, _) = fans_of(config);
            let n = config.n();
            (0..config.n_prime()).all(|i0| {
                let Some(g) = res.chart_generators.get(i0) else { return false };
                let Ok(cone) = Cone::new(n, fan_x.cone_rays(i0)) else { return false };
                let lattice = fan_x.chart_dual(i0);
                min_shifted_generator_auto(g, &cone, &lattice).ok().as_ref() == Some(g)
            })
        }
        BirationalCase::InverseContraction => {
            let l = MonomialLineBundle::new(k.to_vec());
            let Ok(res) = fm_case4(&l, config) else { return false };
            let diag: Vec<Rat> = (0..config.n())
                .map(|i| Rat::new(Int::one(), config.r()[i].clone()))
                .collect();
            let Ok(lattice) = QLattice::diagonal(&diag) else { return false };
            let cone = Cone::orthant(config.n());
            let Some(g) = res.chart_generators.first() else { return false };
            min_shifted_generator_auto(g, &cone, &lattice).ok().as_ref() == Some(g)
        }
    }
}

struct Batch {
    name: &'static str,
    instances: usize,
    failures: Vec<usize>,
}

fn batch<T: Sync>(name: &'static str, items: &[T], eval: impl Fn(&T) -> bool + Sync) -> Batch {
    let outcomes: Vec<bool> = items.par_iter().map(|it| eval(it)).collect();
    Batch {
        name,
        instances: items.len(),
        failures: outcomes
            .iter()
            .enumerate()
            .filter(|(_, &ok)| !ok)
            .map(|(i, _)| i)
            .collect(),
    }
}

fn ceiling_identity_batch() -> Batch {
    let mut items = Vec::new();
    for s in 1..=8i64 {
        for r in s..=8 {
            for m in -10..=10 {
                for m2 in -10..=10 {
                    items.push((r, s, m, m2));
                }
            }
        }
    }
    batch("ceiling-identity", &items, |&(r, s, m, m2)| {
        ceiling_identity_check(&Int::from(r), &Int::from(s), &Int::from(m), &Int::from(m2))
    })
}

fn reweight_hom_batch(seed: u64) -> Batch {
    let mut rng = ChaCha20Rng::seed_from_u64(seed ^ 0x5265_7765);
    let items: Vec<(BirationalConfig, Vec<Int>, Vec<Int>)> = (0..25)
        .map(|_| {
            let config = sample_reweight(&mut rng);
            let m = sample_degree(&mut rng, config.n(), 6);
            let m2 = sample_degree(&mut rng, config.n(), 6);
            (config, m, m2)
        })
        .collect();
    batch("reweight-hom-bijective", &items, |(config, m, m2)| {
        hom_graded_compare(
            &MonomialLineBundle::new(m.clone()),
            &MonomialLineBundle::new(m2.clone()),
            config,
            Some(Int::from(40)),
        )
        .map(|rep| rep.verdict() == HomVerdict::Bijective)
        .unwrap_or(false)
    })
}

fn contraction_vanishing_batch(seed: u64, scan_box: &Int) -> Batch {
    let mut rng = ChaCha20Rng::seed_from_u64(seed ^ 0x436f_6e74);
    let items: Vec<(BirationalConfig, Vec<Int>, Vec<Int>)> = (0..10)
        .map(|_| {
            let config = sample_contraction(&mut rng);
            let l_prime = sample_degree(&mut rng, config.n(), 3);
            let l = sample_degree(&mut rng, config.n(), 3);
            (config, l_prime, l)
        })
        .collect();
    batch("contraction-vanishing", &items, |(config, kp, k)| {
        contraction_pair_clean(config, kp, k, scan_box)
    })
}

/// Hom comparison plus vanishing scans of the rounded hom sheaves of the
/// pair, in both directions and on both sides.
fn contraction_pair_clean(
    config: &BirationalConfig,
    kp: &[Int],
    k: &[Int],
    scan_box: &Int,
) -> bool {
    let lp = MonomialLineBundle::new(kp.to_vec());
    let l = MonomialLineBundle::new(k.to_vec());
    let bijective = hom_graded_compare(&lp, &l, config, Some(Int::from(40)))
        .map(|rep| rep.verdict() == HomVerdict::Bijective)
        .unwrap_or(false);
    if !bijective {
        return false;
    }
    let (fan_x, fan_y, _) = fans_of(config);
    for (a, b) in [(&lp, &l), (&l, &lp)] {
        for (side, fan) in [(Side::X, &fan_x), (Side::Y, &fan_y)] {
            let Ok(d) = rounded_hom_sheaf(a, b, side, config) else { return false };
            if !verify_vanishing(fan, &d, scan_box, 1).verified() {
                return false;
            }
        }
    }
    true
}

fn flip_crepancy_batch(seed: u64) -> Batch {
    let mut rng = ChaCha20Rng::seed_from_u64(seed ^ 0x466c_6970);
    let items: Vec<BirationalConfig> = (0..50).map(|_| sample_flip(&mut rng)).collect();
    batch("flip-crepancy-wall", &items, |config| {
        let (_, sum) = crepancy_compare(config);
        let (fan_x, fan_y, _) = fans_of(config);
        let Ok(over_x) =
            pullback_divisor(config, PullbackMap::ResolutionOverX, &log_canonical(&fan_x))
        else {
            return false;
        };
        let Ok(over_y) =
            pullback_divisor(config, PullbackMap::ResolutionOverY, &log_canonical(&fan_y))
        else {
            return false;
        };
        let wall = config.n() + 1;
        over_x.coefficient(wall) - over_y.coefficient(wall) == config.lambda() * &sum
    })
}

fn chart_oracle_batch(seed: u64) -> Batch {
    let mut rng = ChaCha20Rng::seed_from_u64(seed ^ 0x4f72_6163);
    let mut items: Vec<(BirationalConfig, Vec<Int>)> = Vec::with_capacity(200);
    for i in 0..200 {
        match i % 4 {
            0 => {
                let config = sample_reweight(&mut rng);
                let k = sample_degree(&mut rng, config.n(), 8);
                items.push((config, k));
            }
            1 => {
                let config = sample_contraction(&mut rng);
                let k = sample_degree(&mut rng, config.n(), 4);
                items.push((config, k));
            }
            2 => {
                let config = sample_flip(&mut rng);
                let k = sample_window_bundle(&mut rng, &config, 2, 200);
                items.push((config, k));
            }
            _ => {
                let config = sample_inverse_contraction(&mut rng);
                let k = sample_window_bundle(&mut rng, &config, 2, 200);
                items.push((config, k));
            }
        }
    }
    batch("chart-oracle", &items, |(config, k)| charts_match_oracle(config, k))
}

/// Runs the randomized batches on a local worker pool and reports one
/// verdict line per batch.
pub(crate) fn cmd_suite(flags: &Flags) -> Result<CliOutcome, CliError> {
    if flags.format != OutputFormat::Json {
        return Err(CliError::Validation {
            code: "UnsupportedFormat",
            message: "suite reports are JSON only".into(),
        });
    }
    let seed = flags.seed.unwrap_or(0);
    let workers = flags.workers.unwrap_or(1);
    if workers == 0 {
        return Err(CliError::Validation {
            code: "ValidationError",
            message: "workers must be at least 1".into(),
        });
    }
    let raw_box = flags.box_size.unwrap_or(24);
    if raw_box < 1 {
        return Err(CliError::Validation {
            code: "ValidationError",
            message: format!("box must be at least 1, not {raw_box}"),
        });
    }
    let scan_box = Int::from(raw_box);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| CliError::Validation {
            code: "ValidationError",
            message: format!("worker pool: {e}"),
        })?;
    let batches = pool.install(|| {
        vec![
            ceiling_identity_batch(),
            reweight_hom_batch(seed),
            contraction_vanishing_batch(seed, &scan_box),
            flip_crepancy_batch(seed),
            chart_oracle_batch(seed),
        ]
    });
    let mut rows = Vec::new();
    let mut verdicts = Vec::new();
    let mut witnesses = Vec::new();
    for b in &batches {
        rows.push(json!({
            "name": b.name,
            "instances": b.instances,
            "failures": b.failures.len(),
        }));
        verdicts.push(VerdictLine {
            check: b.name.into(),
            verdict: format!("{} failures in {} instances", b.failures.len(), b.instances),
            ok: b.failures.is_empty(),
        });
        for &i in &b.failures {
            witnesses.push(json!({"batch": b.name, "index": i}));
        }
    }
    let report = Report {
        command: "suite".into(),
        inputs: json!({"seed": seed, "box": int_value(&scan_box)}),
        results: json!({"batches": rows}),
        verdicts,
        witnesses,
    };
    Ok(CliOutcome { failed: report.failed(), stdout: report.render() })
}

//! Per-case image formulas and range windows.
//!
//! Numerator conventions: a bundle on the side without the exceptional ray
//! carries one numerator per coordinate ray (`n` entries), a bundle on the
//! side carrying the exceptional ray has one more (`n + 1` entries). Ray
//! indices are zero-based everywhere, so the exceptional ray is index `n`
//! and the negative-weight tail of a flip is `n_dprime..=n`.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use super::{FmError, FmResult, VanishingCertificate};
use crate::ratlat::vecs::{ceil, ceil_div, floor};
use crate::ratlat::{Int, Rat, RatVec};
use crate::stacky::{crepancy_compare, BirationalCase, BirationalConfig, MonomialLineBundle};

/// Exact quotient `p / q` of two integers.
fn frac(p: &Int, q: &Int) -> Rat {
    Rat::new(p.clone(), q.clone())
}

/// Weighted numerator sum over the first `upto` rays. The weight vector
/// includes the exceptional ray's weight of -1 at index `n`.
fn weighted_statistic(config: &BirationalConfig, k: &[Int], upto: usize) -> Rat {
    let a = config.a_full();
    let r = config.r();
    let mut acc = Rat::zero();
    for i in 0..upto {
        acc += frac(&(&a[i] * &k[i]), &r[i]);
    }
    acc
}

/// Width of the flip window: minus the weight sum over the negative tail.
pub(crate) fn flip_window_bound(config: &BirationalConfig) -> Rat {
    let a = config.a_full();
    let r = config.r();
    let mut acc = Rat::zero();
    for i in config.n_dprime()..=config.n() {
        acc += frac(&a[i], &r[i]);
    }
    -acc
}

/// Width of the inverse contraction window: the positive weight sum.
pub(crate) fn inverse_window_bound(config: &BirationalConfig) -> Rat {
    let a = config.a();
    let r = config.r();
    let mut acc = Rat::zero();
    for i in 0..config.n() {
        acc += frac(&a[i], &r[i]);
    }
    acc
}

/// Minimal module generators on the charts omitting one positive-weight ray.
///
/// `k` has `n + 1` entries including the exceptional numerator. The chart
/// omitting ray `i0` keeps the coordinate value `k_j / r_j` on every other
/// coordinate ray and solves the exceptional ray's pairing exactly on
/// coordinate `i0`.
fn exceptional_chart_generators(config: &BirationalConfig, k: &[Int]) -> Vec<RatVec> {
    let n = config.n();
    let a = config.a();
    let r = config.r();
    let mut gens = Vec::with_capacity(config.n_prime());
    for i0 in 0..config.n_prime() {
        let mut g = vec![Rat::zero(); n];
        for j in 0..n {
            if j != i0 {
                g[j] = frac(&k[j], &r[j]);
            }
        }
        let mut c = frac(&k[n], &(&a[i0] * &r[n]));
        for j in 0..n {
            if j != i0 {
                c -= frac(&(&a[j] * &k[j]), &(&a[i0] * &r[j]));
            }
        }
        g[i0] = c;
        gens.push(g);
    }
    gens
}

/// Image of the bundle with numerators `m_num` under a reweight.
///
/// The target numerator over ray `i` is `ceil(m_i r_i / s_i)`; the single
/// chart generator is the target monomial itself.
pub fn fm_case1(m_num: &[Int], config: &BirationalConfig) -> Result<FmResult, FmError> {
    if config.case() != BirationalCase::Reweight {
        return Err(FmError::ConfigMismatch {
            expected: "a reweight configuration",
        });
    }
    if m_num.len() != config.n() {
        return Err(FmError::LengthMismatch {
            expected: config.n(),
            found: m_num.len(),
        });
    }
    let r = config.r();
    let s = config.s();
    let mut f = Vec::with_capacity(m_num.len());
    for i in 0..m_num.len() {
        f.push(ceil_div(&(&m_num[i] * &r[i]), &s[i]));
    }
    let generator: RatVec = f.iter().zip(r).map(|(fi, ri)| frac(fi, ri)).collect();
    Ok(FmResult {
        target: MonomialLineBundle::new(f),
        chart_generators: vec![generator],
        in_range: true,
        vanishing_certificate: VanishingCertificate::Unconditional,
        w_twist: None,
    })
}

/// Whether `ceil((m - m2)/s)` equals `ceil((ceil(m r/s) - ceil(m2 r/s))/r)`.
///
/// Requires `1 <= s <= r`; under that hypothesis the identity is expected
/// to hold for all integers `m`, `m2`.
pub fn ceiling_identity_check(r: &Int, s: &Int, m: &Int, m2: &Int) -> bool {
    assert!(
        *s >= Int::one() && r >= s,
        "weights must satisfy 1 <= s <= r"
    );
    let lhs = ceil_div(&(m - m2), s);
    let f = ceil_div(&(m * r), s);
    let f2 = ceil_div(&(m2 * r), s);
    let rhs = ceil_div(&(&f - &f2), r);
    lhs == rhs
}

/// Image of a bundle on the contracted side under a weighted extraction.
///
/// The exceptional numerator is the smallest integer whose ray pairing
/// clears the weighted numerator sum; it does not depend on which chart is
/// used to compute it.
pub fn fm_case2(l: &MonomialLineBundle, config: &BirationalConfig) -> Result<FmResult, FmError> {
    if config.case() != BirationalCase::Contraction {
        return Err(FmError::ConfigMismatch {
            expected: "a contraction configuration",
        });
    }
    let n = config.n();
    if l.len() != n {
        return Err(FmError::LengthMismatch {
            expected: n,
            found: l.len(),
        });
    }
    let (_, crepancy) = crepancy_compare(config);
    if crepancy.is_negative() {
        return Err(FmError::ConfigMismatch {
            expected: "a contraction configuration with nonnegative crepancy",
        });
    }
    let r = config.r();
    let sum = weighted_statistic(config, l.k(), n);
    let k_exc = ceil(&(sum * frac(&r[n], &Int::one())));
    let mut k_full = l.k().to_vec();
    k_full.push(k_exc);
    let chart_generators = exceptional_chart_generators(config, &k_full);
    Ok(FmResult {
        target: MonomialLineBundle::new(k_full),
        chart_generators,
        in_range: true,
        vanishing_certificate: VanishingCertificate::Crepancy { sum: crepancy },
        w_twist: None,
    })
}

/// Window membership and the exact weighted numerator sum of a bundle.
///
/// For a flip the window is `0 <= statistic < bound`; for an inverse
/// contraction it is `0 <= -statistic < bound`. The returned rational is
/// the raw statistic in both cases.
pub fn range_check(
    l: &MonomialLineBundle,
    config: &BirationalConfig,
) -> Result<(bool, Rat), FmError> {
    match config.case() {
        BirationalCase::Flip | BirationalCase::InverseContraction => {}
        _ => {
            return Err(FmError::ConfigMismatch {
                expected: "a flip or inverse contraction configuration",
            })
        }
    }
    let n = config.n();
    if l.len() != n + 1 {
        return Err(FmError::LengthMismatch {
            expected: n + 1,
            found: l.len(),
        });
    }
    let stat = weighted_statistic(config, l.k(), n + 1);
    let ok = match config.case() {
        BirationalCase::Flip => !stat.is_negative() && stat < flip_window_bound(config),
        BirationalCase::InverseContraction => {
            let neg = -stat.clone();
            !neg.is_negative() && neg < inverse_window_bound(config)
        }
        _ => unreachable!(),
    };
    Ok((ok, stat))
}

/// Image of an in-window bundle across a flip.
///
/// The numerators transfer unchanged; the result also records the
/// exceptional twist coefficient on the common resolution, which is the
/// primitivity scale times the weighted sum over the positive rays.
pub fn fm_case3(l: &MonomialLineBundle, config: &BirationalConfig) -> Result<FmResult, FmError> {
    if config.case() != BirationalCase::Flip {
        return Err(FmError::ConfigMismatch {
            expected: "a flip configuration",
        });
    }
    let (ok, stat) = range_check(l, config)?;
    let bound = flip_window_bound(config);
    if !ok {
        return Err(FmError::OutOfRange {
            statistic: stat,
            bound,
        });
    }
    let chart_generators = exceptional_chart_generators(config, l.k());
    let w_twist = config.lambda() * weighted_statistic(config, l.k(), config.n_prime());
    Ok(FmResult {
        target: l.clone(),
        chart_generators,
        in_range: true,
        vanishing_certificate: VanishingCertificate::Window {
            statistic: stat,
            bound,
        },
        w_twist: Some(w_twist),
    })
}

/// Image of an in-window bundle under an inverse contraction.
///
/// The exceptional numerator is dropped; the single chart generator is the
/// target monomial on the contracted side.
pub fn fm_case4(l: &MonomialLineBundle, config: &BirationalConfig) -> Result<FmResult, FmError> {
    if config.case() != BirationalCase::InverseContraction {
        return Err(FmError::ConfigMismatch {
            expected: "an inverse contraction configuration",
        });
    }
    let (ok, stat) = range_check(l, config)?;
    let bound = inverse_window_bound(config);
    let window_stat = -stat;
    if !ok {
        return Err(FmError::OutOfRange {
            statistic: window_stat,
            bound,
        });
    }
    let n = config.n();
    let k_y = l.k()[..n].to_vec();
    let generator: RatVec = k_y.iter().zip(config.r()).map(|(ki, ri)| frac(ki, ri)).collect();
    Ok(FmResult {
        target: MonomialLineBundle::new(k_y),
        chart_generators: vec![generator],
        in_range: true,
        vanishing_certificate: VanishingCertificate::Window {
            statistic: window_stat,
            bound,
        },
        w_twist: None,
    })
}

/// Checks the flip window after twisting along a boundary stratum.
///
/// `stratum` lists distinct ray indices from the negative-weight tail
/// `n_dprime..=n`, leaving at least one tail ray free; `eps` switches each
/// stratum ray's unit twist on or off. The numerator at the largest free
/// tail ray is first renormalized to put the untwisted statistic in its
/// minimal window, so the predicate depends only on the bundle's class and
/// the twist choice. An empty stratum reduces to [`range_check`].
pub fn stratum_twist_range_check(
    config: &BirationalConfig,
    stratum: &[usize],
    l: &MonomialLineBundle,
    eps: &[bool],
) -> Result<bool, FmError> {
    if config.case() != BirationalCase::Flip {
        return Err(FmError::ConfigMismatch {
            expected: "a flip configuration",
        });
    }
    let n = config.n();
    if l.len() != n + 1 {
        return Err(FmError::LengthMismatch {
            expected: n + 1,
            found: l.len(),
        });
    }
    if eps.len() != stratum.len() {
        return Err(FmError::BadStratum {
            reason: format!(
                "stratum has {} rays but the twist vector has {} entries",
                stratum.len(),
                eps.len()
            ),
        });
    }
    let mut seen = BTreeSet::new();
    for &i in stratum {
        if i < config.n_dprime() || i > n {
            return Err(FmError::BadStratum {
                reason: format!("ray {i} is not in the negative-weight tail"),
            });
        }
        if !seen.insert(i) {
            return Err(FmError::BadStratum {
                reason: format!("ray {i} appears twice in the stratum"),
            });
        }
    }
    if stratum.len() > n - config.n_dprime() {
        return Err(FmError::BadStratum {
            reason: format!(
                "stratum of size {} leaves no tail ray free for renormalization",
                stratum.len()
            ),
        });
    }
    if stratum.is_empty() {
        return Ok(range_check(l, config)?.0);
    }
    let a = config.a_full();
    let r = config.r();
    let k = l.k();
    let i0 = (config.n_dprime()..=n)
        .rev()
        .find(|i| !seen.contains(i))
        .expect("the stratum size check leaves at least one tail ray free");
    let mut c = Rat::zero();
    for i in 0..=n {
        if i != i0 {
            c += frac(&(&a[i] * &k[i]), &r[i]);
        }
    }
    // The unique integer numerator at ray i0 putting the statistic in
    // [0, -a_{i0}/r_{i0}); the tail weight a_{i0} is negative.
    let k_i0 = floor(&(c.clone() * frac(&r[i0], &-&a[i0])));
    let mut twisted = c + frac(&(&a[i0] * &k_i0), &r[i0]);
    for (p, &ray) in stratum.iter().enumerate() {
        if eps[p] {
            twisted -= frac(&a[ray], &r[ray]);
        }
    }
    Ok(!twisted.is_negative() && twisted < flip_window_bound(config))
}

//! Birational configurations: reweightings, weighted contractions, flips,
//! and the divisor pullback formulas along their structure maps.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::fan::{QDivisor, StackyFan};
use super::StackyError;
use crate::ratlat::vecs::content;
use crate::ratlat::{Int, IntVec, Rat};

/// The four configuration shapes. All live on a weighted affine cone with
/// rays `e_1..e_n` plus a distinguished ray `v_{n+1} = (a_1,..,a_n)`:
///
/// - `Reweight`: same fan on both sides, multiplicities drop from `r` to `s`.
/// - `Contraction`: `X -> Y` contracts the divisor of `v_{n+1}`.
/// - `Flip`: `X` and `Y` are the two small resolutions' coarse sides, joined
///   by a common roof `W` with one more ray `v_{n+2}`.
/// - `InverseContraction`: the contraction shape with the comparison run
///   from `Y` to `X`; requires the weight-sum bound checked at build time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BirationalCase {
    Reweight,
    Contraction,
    Flip,
    InverseContraction,
}

/// A validated birational configuration. Construct via [`build_config`].
///
/// Weights `a` have length `n`; the implied weight of the distinguished ray
/// is `-1`. Multiplicities `r` have length `n+1` (length `n` for
/// `Reweight`, which has no distinguished ray). Index bounds satisfy
/// `2 <= n' <= n'' <= n`, with `n'' = n` outside the flip case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BirationalConfig {
    case: BirationalCase,
    n: usize,
    n_prime: usize,
    n_dprime: usize,
    a: Vec<Int>,
    r: Vec<Int>,
    s: Vec<Int>,
    lambda: Rat,
    extra_ray: Option<IntVec>,
}

impl BirationalConfig {
    pub fn case(&self) -> BirationalCase {
        self.case
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn n_prime(&self) -> usize {
        self.n_prime
    }

    pub fn n_dprime(&self) -> usize {
        self.n_dprime
    }

    /// Weights of the coordinate rays, length `n`.
    pub fn a(&self) -> &[Int] {
        &self.a
    }

    /// Weights including the implied `-1` of the distinguished ray.
    pub fn a_full(&self) -> Vec<Int> {
        let mut out = self.a.clone();
        out.push(-Int::one());
        out
    }

    pub fn r(&self) -> &[Int] {
        &self.r
    }

    /// Reweight only: the target multiplicities.
    pub fn s(&self) -> &[Int] {
        &self.s
    }

    /// Flip only: the primitivity scale of the wall ray (`1` otherwise).
    pub fn lambda(&self) -> &Rat {
        &self.lambda
    }

    /// Flip only: the wall ray `v_{n+2}`.
    pub fn extra_ray(&self) -> Option<&IntVec> {
        self.extra_ray.as_ref()
    }
}

fn unit_vector(n: usize, i: usize) -> IntVec {
    let mut e = vec![Int::zero(); n];
    e[i] = Int::one();
    e
}

fn check_positive_mults(r: &[Int]) -> Result<(), StackyError> {
    for (i, x) in r.iter().enumerate() {
        if *x < Int::one() {
            return Err(StackyError::MultNotPositive { index: i });
        }
    }
    Ok(())
}

/// Validates case data and computes the derived flip quantities.
///
/// `n_prime`/`n_dprime` are the counts of positive and non-negative weights
/// (`n_dprime = n` outside the flip case). `s` is accepted only for
/// `Reweight`, where `r_i >= s_i >= 1` must hold per ray.
pub fn build_config(
    case: BirationalCase,
    n: usize,
    n_prime: usize,
    n_dprime: usize,
    a: Vec<Int>,
    r: Vec<Int>,
    s: Option<Vec<Int>>,
) -> Result<BirationalConfig, StackyError> {
    if n == 0 {
        return Err(StackyError::BadRange {
            reason: "n must be at least 1".into(),
        });
    }
    if case == BirationalCase::Reweight {
        let s = s.ok_or_else(|| StackyError::BadInput {
            reason: "reweight requires target multiplicities s".into(),
        })?;
        if !a.is_empty() {
            return Err(StackyError::BadInput {
                reason: "reweight takes no weights a".into(),
            });
        }
        if r.len() != n {
            return Err(StackyError::LengthMismatch {
                expected: n,
                found: r.len(),
            });
        }
        if s.len() != n {
            return Err(StackyError::LengthMismatch {
                expected: n,
                found: s.len(),
            });
        }
        check_positive_mults(&r)?;
        check_positive_mults(&s)?;
        for i in 0..n {
            if r[i] < s[i] {
                return Err(StackyError::BadInput {
                    reason: format!("multiplicity {i} increases: r >= s is required"),
                });
            }
        }
        return Ok(BirationalConfig {
            case,
            n,
            n_prime: n,
            n_dprime: n,
            a,
            r,
            s,
            lambda: Rat::one(),
            extra_ray: None,
        });
    }

    if s.is_some() {
        return Err(StackyError::BadInput {
            reason: "only reweight takes target multiplicities s".into(),
        });
    }
    if a.len() != n {
        return Err(StackyError::LengthMismatch {
            expected: n,
            found: a.len(),
        });
    }
    if r.len() != n + 1 {
        return Err(StackyError::LengthMismatch {
            expected: n + 1,
            found: r.len(),
        });
    }
    check_positive_mults(&r)?;
    if n_prime < 2 {
        return Err(StackyError::InvalidSigns {
            reason: "at least two positive weights are required".into(),
        });
    }
    if n_prime > n_dprime || n_dprime > n {
        return Err(StackyError::BadRange {
            reason: format!("need n' <= n'' <= n, got n'={n_prime}, n''={n_dprime}, n={n}"),
        });
    }
    match case {
        BirationalCase::Contraction | BirationalCase::InverseContraction => {
            if n_dprime != n {
                return Err(StackyError::BadRange {
                    reason: "a contraction has no negative weights, so n'' = n".into(),
                });
            }
        }
        BirationalCase::Flip => {
            if n_dprime >= n {
                return Err(StackyError::BadRange {
                    reason: "a flip requires a negative weight, so n'' < n".into(),
                });
            }
        }
        BirationalCase::Reweight => unreachable!("handled above"),
    }
    for (i, x) in a.iter().enumerate() {
        let ok = if i < n_prime {
            x.is_positive()
        } else if i < n_dprime {
            x.is_zero()
        } else {
            x.is_negative()
        };
        if !ok {
            return Err(StackyError::InvalidSigns {
                reason: format!("weight at position {i} breaks the sign pattern"),
            });
        }
    }
    if content(&a) != Int::one() {
        return Err(StackyError::NotPrimitive);
    }

    let mut lambda = Rat::one();
    let mut extra_ray = None;
    match case {
        BirationalCase::InverseContraction => {
            let statistic: Rat = (0..n)
                .map(|i| Rat::new(a[i].clone(), r[i].clone()))
                .sum();
            let bound = Rat::new(Int::one(), r[n].clone());
            let alternative = Rat::new(Int::one(), r[n - 1].clone());
            if statistic > bound {
                return Err(StackyError::WeightBoundExceeded {
                    statistic,
                    bound,
                    alternative,
                });
            }
        }
        BirationalCase::Flip => {
            let g: Int = a[..n_prime]
                .iter()
                .fold(Int::zero(), |acc, x| acc.gcd(x));
            lambda = Rat::new(Int::one(), g.clone());
            let mut v = vec![Int::zero(); n];
            for i in 0..n_prime {
                v[i] = &a[i] / &g;
            }
            extra_ray = Some(v);
        }
        _ => {}
    }

    Ok(BirationalConfig {
        case,
        n,
        n_prime,
        n_dprime,
        a,
        r,
        s: Vec::new(),
        lambda,
        extra_ray,
    })
}

/// The three fans of a configuration: source `X`, target `Y`, and the roof
/// `W` (equal to `X` when `X` itself resolves the map).
///
/// Rays are indexed `0..n-1` for the coordinate rays, `n` for the
/// distinguished ray, and `n+1` for the flip wall ray.
pub fn fans_of(config: &BirationalConfig) -> (StackyFan, StackyFan, StackyFan) {
    let n = config.n;
    let expect_msg = "configuration decompositions are fans";
    match config.case {
        BirationalCase::Reweight => {
            let x = StackyFan::orthant(n, config.r.clone()).expect(expect_msg);
            let y = StackyFan::orthant(n, config.s.clone()).expect(expect_msg);
            let w = x.clone();
            (x, y, w)
        }
        BirationalCase::Contraction | BirationalCase::InverseContraction => {
            let mut rays: Vec<IntVec> = (0..n).map(|i| unit_vector(n, i)).collect();
            rays.push(config.a.clone());
            let x_cones: Vec<Vec<usize>> = (0..config.n_prime)
                .map(|i0| (0..=n).filter(|&j| j != i0).collect())
                .collect();
            let x = StackyFan::new(n, rays, config.r.clone(), x_cones).expect(expect_msg);
            let y = StackyFan::orthant(n, config.r[..n].to_vec()).expect(expect_msg);
            let w = x.clone();
            (x, y, w)
        }
        BirationalCase::Flip => {
            let mut rays: Vec<IntVec> = (0..n).map(|i| unit_vector(n, i)).collect();
            rays.push(config.a.clone());
            let x_cones: Vec<Vec<usize>> = (0..config.n_prime)
                .map(|i0| (0..=n).filter(|&j| j != i0).collect())
                .collect();
            let y_cones: Vec<Vec<usize>> = (config.n_dprime..=n)
                .map(|i1| (0..=n).filter(|&j| j != i1).collect())
                .collect();
            let x = StackyFan::new(n, rays.clone(), config.r.clone(), x_cones)
                .expect(expect_msg);
            let y = StackyFan::new(n, rays.clone(), config.r.clone(), y_cones)
                .expect(expect_msg);
            let mut w_rays = rays;
            w_rays.push(config.extra_ray.clone().expect("flip carries a wall ray"));
            let mut w_mults = config.r.clone();
            w_mults.push(Int::one());
            let w_cones: Vec<Vec<usize>> = (0..config.n_prime)
                .flat_map(|i0| {
                    (config.n_dprime..=n).map(move |i1| {
                        (0..=(n + 1)).filter(|&j| j != i0 && j != i1).collect()
                    })
                })
                .collect();
            let w = StackyFan::new(n, w_rays, w_mults, w_cones).expect(expect_msg);
            (x, y, w)
        }
    }
}

/// Which structure map a divisor is pulled back along.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PullbackMap {
    /// The morphism `X -> Y` (the identity reweighting in the
    /// `Reweight` case).
    AlongContraction,
    /// The flip roof over the source side, `W -> X`.
    ResolutionOverX,
    /// The flip roof over the target side, `W -> Y`.
    ResolutionOverY,
}

/// Exact pullback of a divisor, adding the exceptional-ray coefficient the
/// map creates. The input must be supported on the target's rays.
pub fn pullback_divisor(
    config: &BirationalConfig,
    map: PullbackMap,
    d: &QDivisor,
) -> Result<QDivisor, StackyError> {
    let n = config.n;
    let check_support = |limit: usize| -> Result<(), StackyError> {
        match d.support().into_iter().find(|&i| i >= limit) {
            Some(ray) => Err(StackyError::SupportError { ray }),
            None => Ok(()),
        }
    };
    match map {
        PullbackMap::AlongContraction => {
            check_support(n)?;
            match config.case {
                BirationalCase::Reweight => Ok(d.clone()),
                BirationalCase::Contraction | BirationalCase::InverseContraction => {
                    let mut out = d.clone();
                    let exc: Rat = (0..n)
                        .map(|i| d.coefficient(i) * Rat::from_integer(config.a[i].clone()))
                        .sum();
                    out.set(n, exc);
                    Ok(out)
                }
                BirationalCase::Flip => Err(StackyError::CaseMismatch {
                    expected: "contraction or reweight",
                }),
            }
        }
        PullbackMap::ResolutionOverX | PullbackMap::ResolutionOverY => {
            if config.case != BirationalCase::Flip {
                return Err(StackyError::CaseMismatch { expected: "flip" });
            }
            check_support(n + 1)?;
            let mut out = d.clone();
            let exc: Rat = if map == PullbackMap::ResolutionOverX {
                let mut acc = d.coefficient(n);
                for i in config.n_dprime..n {
                    acc += d.coefficient(i) * Rat::from_integer(-config.a[i].clone());
                }
                acc
            } else {
                (0..config.n_prime)
                    .map(|i| d.coefficient(i) * Rat::from_integer(config.a[i].clone()))
                    .sum()
            };
            out.set(n + 1, exc * &config.lambda);
            Ok(out)
        }
    }
}

/// Sign classification of the crepancy statistic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrepancyClass {
    StrictlyGreater,
    Equal,
    StrictlyLess,
}

/// The exact crepancy statistic of the configuration and its sign.
///
/// For contractions and flips this is `sum a_i / r_i` over all `n+1` rays
/// (implied weight `-1` on the distinguished ray): the coefficient of the
/// exceptional divisor in the difference of log canonical pullbacks. The
/// inverse contraction negates it, and a reweighting uses
/// `sum (1/s_i - 1/r_i)`. `Equal` means the map is log crepant.
pub fn crepancy_compare(config: &BirationalConfig) -> (CrepancyClass, Rat) {
    let n = config.n;
    let value: Rat = match config.case {
        BirationalCase::Reweight => (0..n)
            .map(|i| {
                Rat::new(Int::one(), config.s[i].clone())
                    - Rat::new(Int::one(), config.r[i].clone())
            })
            .sum(),
        BirationalCase::Contraction | BirationalCase::Flip => {
            let mut acc: Rat = (0..n)
                .map(|i| Rat::new(config.a[i].clone(), config.r[i].clone()))
                .sum();
            acc -= Rat::new(Int::one(), config.r[n].clone());
            acc
        }
        BirationalCase::InverseContraction => {
            let sum: Rat = (0..n)
                .map(|i| Rat::new(config.a[i].clone(), config.r[i].clone()))
                .sum();
            Rat::new(Int::one(), config.r[n].clone()) - sum
        }
    };
    let class = if value.is_positive() {
        CrepancyClass::StrictlyGreater
    } else if value.is_zero() {
        CrepancyClass::Equal
    } else {
        CrepancyClass::StrictlyLess
    };
    (class, value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlat::vecs::{int, ivec, rat};

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn flop() -> BirationalConfig {
        build_config(
            BirationalCase::Flip,
            3,
            2,
            2,
            ints(&[1, 1, -1]),
            ints(&[1, 1, 1, 1]),
            None,
        )
        .unwrap()
    }

    fn plane_blowup() -> BirationalConfig {
        build_config(
            BirationalCase::Contraction,
            2,
            2,
            2,
            ints(&[1, 1]),
            ints(&[1, 1, 1]),
            None,
        )
        .unwrap()
    }

    #[test]
    fn flop_wall_ray_and_scale() {
        let cfg = flop();
        assert_eq!(cfg.lambda(), &rat(1, 1));
        assert_eq!(cfg.extra_ray().unwrap(), &ivec(&[1, 1, 0]));
    }

    #[test]
    fn blowup_config_is_valid() {
        let cfg = plane_blowup();
        assert_eq!(cfg.case(), BirationalCase::Contraction);
        assert_eq!(cfg.a_full(), ints(&[1, 1, -1]));
    }

    #[test]
    fn single_positive_weight_is_rejected() {
        let err = build_config(
            BirationalCase::Flip,
            2,
            1,
            1,
            ints(&[1, -1]),
            ints(&[1, 1, 1]),
            None,
        )
        .unwrap_err();
        assert!(matches!(err, StackyError::InvalidSigns { .. }));
    }

    #[test]
    fn inverse_contraction_weight_bound() {
        // 1/2 + 1/3 = 5/6 <= 1/1.
        let ok = build_config(
            BirationalCase::InverseContraction,
            2,
            2,
            2,
            ints(&[1, 1]),
            ints(&[2, 3, 1]),
            None,
        );
        assert!(ok.is_ok());
        // 1/2 + 1/1 = 3/2 > 1/1; the alternative reading gives 1/1 too.
        let err = build_config(
            BirationalCase::InverseContraction,
            2,
            2,
            2,
            ints(&[1, 1]),
            ints(&[2, 1, 1]),
            None,
        )
        .unwrap_err();
        assert_eq!(
            err,
            StackyError::WeightBoundExceeded {
                statistic: rat(3, 2),
                bound: rat(1, 1),
                alternative: rat(1, 1),
            }
        );
    }

    #[test]
    fn blowup_fans_cover_the_quadrant() {
        let (x, y, w) = fans_of(&plane_blowup());
        assert_eq!(x.max_cones(), &[vec![1, 2], vec![0, 2]]);
        assert_eq!(y.max_cones(), &[vec![0, 1]]);
        assert_eq!(w, x);
    }

    #[test]
    fn flop_fans_have_the_two_decompositions() {
        let (x, y, w) = fans_of(&flop());
        assert_eq!(x.max_cones(), &[vec![1, 2, 3], vec![0, 2, 3]]);
        assert_eq!(y.max_cones(), &[vec![0, 1, 3], vec![0, 1, 2]]);
        assert_eq!(w.max_cones().len(), 4);
        assert!(w.max_cones().iter().all(|c| c.contains(&4)));
        assert_eq!(w.ray(4), &ivec(&[1, 1, 0]));
    }

    #[test]
    fn contraction_pullback_adds_weighted_exceptional() {
        let cfg = plane_blowup();
        let d = QDivisor::from_pairs(&[(0, rat(1, 1))]);
        let out = pullback_divisor(&cfg, PullbackMap::AlongContraction, &d).unwrap();
        assert_eq!(out, QDivisor::from_pairs(&[(0, rat(1, 1)), (2, rat(1, 1))]));
        assert!(
            pullback_divisor(&cfg, PullbackMap::AlongContraction, &QDivisor::zero())
                .unwrap()
                .is_zero()
        );
        let bad = QDivisor::from_pairs(&[(2, rat(1, 1))]);
        assert_eq!(
            pullback_divisor(&cfg, PullbackMap::AlongContraction, &bad),
            Err(StackyError::SupportError { ray: 2 })
        );
    }

    #[test]
    fn flip_roof_pullbacks() {
        let cfg = flop();
        let d = QDivisor::from_pairs(&[(0, rat(1, 1))]);
        let over_y = pullback_divisor(&cfg, PullbackMap::ResolutionOverY, &d).unwrap();
        assert_eq!(
            over_y,
            QDivisor::from_pairs(&[(0, rat(1, 1)), (4, rat(1, 1))])
        );
        // Ray 0 carries a positive weight, so the roof over X adds nothing.
        let over_x = pullback_divisor(&cfg, PullbackMap::ResolutionOverX, &d).unwrap();
        assert_eq!(over_x, d);
        assert_eq!(
            pullback_divisor(&cfg, PullbackMap::AlongContraction, &d),
            Err(StackyError::CaseMismatch {
                expected: "contraction or reweight"
            })
        );
    }

    #[test]
    fn crepancy_statistics() {
        let greater = build_config(
            BirationalCase::Contraction,
            2,
            2,
            2,
            ints(&[1, 1]),
            ints(&[2, 3, 5]),
            None,
        )
        .unwrap();
        assert_eq!(
            crepancy_compare(&greater),
            (CrepancyClass::StrictlyGreater, rat(19, 30))
        );
        let equal = build_config(
            BirationalCase::Contraction,
            2,
            2,
            2,
            ints(&[1, 1]),
            ints(&[2, 2, 1]),
            None,
        )
        .unwrap();
        assert_eq!(crepancy_compare(&equal), (CrepancyClass::Equal, rat(0, 1)));
        assert_eq!(crepancy_compare(&flop()), (CrepancyClass::Equal, rat(0, 1)));
    }

    #[test]
    fn pullback_difference_matches_crepancy_statistic() {
        // Stacky flip: a=(1,1,-1), r=(1,1,1,2).
        let cfg = build_config(
            BirationalCase::Flip,
            3,
            2,
            2,
            ints(&[1, 1, -1]),
            ints(&[1, 1, 1, 2]),
            None,
        )
        .unwrap();
        let (x, y, _) = fans_of(&cfg);
        let kx = super::super::fan::log_canonical(&x);
        let ky = super::super::fan::log_canonical(&y);
        let mu = pullback_divisor(&cfg, PullbackMap::ResolutionOverX, &kx).unwrap();
        let nu = pullback_divisor(&cfg, PullbackMap::ResolutionOverY, &ky).unwrap();
        let diff = mu.sub(&nu);
        let n = cfg.n();
        let (_, statistic) = crepancy_compare(&cfg);
        assert_eq!(statistic, rat(1, 2));
        assert_eq!(diff.coefficient(n + 1), cfg.lambda() * &statistic);
        // Everything away from the wall ray cancels.
        assert_eq!(diff.support(), vec![n + 1]);
    }
}

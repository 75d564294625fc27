//! Fixed-length integer and rational vectors with exact arithmetic helpers.

use super::{Int, Rat};
use num_traits::{One, Zero};

/// Integer vector; length equals the ambient rank of its context.
pub type IntVec = Vec<Int>;
/// Rational vector; length equals the ambient rank of its context.
pub type RatVec = Vec<Rat>;

/// Builds an `Int` from a machine integer.
pub fn int(v: i64) -> Int {
    Int::from(v)
}

/// Builds a reduced rational p/q. Panics when q = 0.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(Int::from(p), Int::from(q))
}

/// Builds an integer-valued rational.
pub fn rat_int(p: i64) -> Rat {
    Rat::from_integer(Int::from(p))
}

/// Builds an integer vector from machine integers.
pub fn ivec(vs: &[i64]) -> IntVec {
    vs.iter().map(|&v| int(v)).collect()
}

/// Builds a rational vector from machine integers.
pub fn rvec(vs: &[i64]) -> RatVec {
    vs.iter().map(|&v| rat_int(v)).collect()
}

/// Builds a rational vector from (numerator, denominator) pairs.
pub fn rvec_frac(vs: &[(i64, i64)]) -> RatVec {
    vs.iter().map(|&(p, q)| rat(p, q)).collect()
}

/// Zero rational vector of the given length.
pub fn rzero(n: usize) -> RatVec {
    vec![Rat::zero(); n]
}

/// Exact dot product of two integer vectors.
pub fn dot_ii(a: &[Int], b: &[Int]) -> Int {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Int::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

/// Exact dot product of a rational and an integer vector.
pub fn dot_ri(a: &[Rat], b: &[Int]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * Rat::from_integer(y.clone());
    }
    acc
}

/// Exact dot product of two rational vectors.
pub fn dot_rr(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

/// Componentwise sum of rational vectors.
pub fn add_rr(a: &[Rat], b: &[Rat]) -> RatVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Componentwise difference of rational vectors.
pub fn sub_rr(a: &[Rat], b: &[Rat]) -> RatVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Converts an integer vector to rationals.
pub fn to_rat(a: &[Int]) -> RatVec {
    a.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

/// Extracts the integer vector when every entry is integral.
pub fn to_int(a: &[Rat]) -> Option<IntVec> {
    a.iter()
        .map(|x| x.is_integer().then(|| x.to_integer()))
        .collect()
}

/// gcd of all entries; zero for the zero vector.
pub fn content(a: &[Int]) -> Int {
    use num_integer::Integer;
    let mut g = Int::zero();
    for x in a {
        g = g.gcd(x);
    }
    g
}

/// True when the entries are coprime (so the vector is a primitive lattice
/// vector).
pub fn is_primitive(a: &[Int]) -> bool {
    content(a).is_one()
}

/// Exact ceiling of a rational.
pub fn ceil(x: &Rat) -> Int {
    x.ceil().to_integer()
}

/// Exact floor of a rational.
pub fn floor(x: &Rat) -> Int {
    x.floor().to_integer()
}

/// Ceiling of p/q for integers, q > 0.
pub fn ceil_div(p: &Int, q: &Int) -> Int {
    ceil(&Rat::new(p.clone(), q.clone()))
}

/// Floor of p/q for integers, q > 0.
pub fn floor_div(p: &Int, q: &Int) -> Int {
    floor(&Rat::new(p.clone(), q.clone()))
}

/// Lexicographic comparison for deterministic orderings of rational vectors.
pub fn lex_cmp(a: &[Rat], b: &[Rat]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            std::cmp::Ordering::Equal => continue,
            other => return other,
        }
    }
    a.len().cmp(&b.len())
}

/// Formats a rational as "p/q", omitting the denominator when it is 1.
pub fn rat_str(x: &Rat) -> String {
    if x.denom().is_one() {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Formats a rational vector as "(x1, x2, ...)".
pub fn rvec_str(v: &[Rat]) -> String {
    let parts: Vec<String> = v.iter().map(rat_str).collect();
    format!("({})", parts.join(", "))
}

/// Formats a rational as "p/q" with the denominator always present, so
/// machine-readable fields stay uniformly shaped (zero is "0/1").
pub fn rat_frac_str(x: &Rat) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// [`rat_frac_str`] for an integer: always "n/1".
pub fn int_frac_str(x: &Int) -> String {
    format!("{x}/1")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ceil_and_floor_match_hand_values() {
        assert_eq!(ceil(&rat(4, 3)), int(2));
        assert_eq!(ceil(&rat(-1, 3)), int(0));
        assert_eq!(floor(&rat(-1, 3)), int(-1));
        assert_eq!(ceil_div(&int(5), &int(2)), int(3));
        assert_eq!(floor_div(&int(-5), &int(2)), int(-3));
    }

    #[test]
    fn content_and_primitivity() {
        assert_eq!(content(&ivec(&[6, 10])), int(2));
        assert!(is_primitive(&ivec(&[2, 3])));
        assert!(!is_primitive(&ivec(&[2, 4])));
        assert!(!is_primitive(&ivec(&[0, 0])));
    }

    #[test]
    fn rational_formatting_is_reduced() {
        assert_eq!(rat_str(&rat(19, 30)), "19/30");
        assert_eq!(rat_str(&rat(4, 2)), "2");
        assert_eq!(rat_str(&rat(-1, 2)), "-1/2");
        assert_eq!(rat_str(&rat(0, 5)), "0");
        assert_eq!(rat_frac_str(&rat(4, 2)), "2/1");
        assert_eq!(rat_frac_str(&rat(0, 5)), "0/1");
        assert_eq!(rat_frac_str(&rat(-3, 6)), "-1/2");
        assert_eq!(int_frac_str(&int(-7)), "-7/1");
    }
}

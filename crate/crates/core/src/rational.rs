//! Helpers for exact rational likelihoods.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Multiplies two reduced rationals without running a full gcd on the
/// product.
///
/// `Ratio`'s own multiplication runs binary gcd on the operands, which costs
/// quadratic time when one side is huge and the other tiny. Cross-reducing
/// with a remainder step first keeps the cost linear in the larger operand.
pub fn mul_reduced(a: &BigRational, b: &BigRational) -> BigRational {
    let (n, d) = mul_parts(
        a.numer().magnitude(),
        a.denom().magnitude(),
        b.numer().magnitude(),
        b.denom().magnitude(),
    );
    let sign = if a.numer().sign() == b.numer().sign() {
        Sign::Plus
    } else {
        Sign::Minus
    };
    signed(sign, n, d)
}

/// `a * n / d` for a reduced `a` and positive, not necessarily coprime, `n`
/// and `d`. Linear in the size of `a` when `n` and `d` are small.
pub fn scale(a: &BigRational, n: &BigUint, d: &BigUint) -> BigRational {
    let g = gcd(n, d);
    let (n, d) = if g.is_one() {
        (n.clone(), d.clone())
    } else {
        (n / &g, d / &g)
    };
    let (numer, denom) = mul_parts(a.numer().magnitude(), a.denom().magnitude(), &n, &d);
    signed(a.numer().sign(), numer, denom)
}

fn signed(sign: Sign, numer: BigUint, denom: BigUint) -> BigRational {
    if numer.is_zero() {
        return BigRational::zero();
    }
    BigRational::new_raw(
        BigInt::from_biguint(sign, numer),
        BigInt::from_biguint(Sign::Plus, denom),
    )
}

/// `(an / ad) * (bn / bd)` for coprime pairs, as a coprime pair.
fn mul_parts(an: &BigUint, ad: &BigUint, bn: &BigUint, bd: &BigUint) -> (BigUint, BigUint) {
    let g1 = gcd(an, bd);
    let g2 = gcd(bn, ad);
    let div = |x: &BigUint, g: &BigUint| if g.is_one() { x.clone() } else { x / g };
    (div(an, &g1) * div(bn, &g2), div(ad, &g2) * div(bd, &g1))
}

/// Product of an iterator of rationals, reduced.
pub fn product<'a, I>(factors: I) -> BigRational
where
    I: IntoIterator<Item = &'a BigRational>,
{
    let mut acc = BigRational::one();
    for f in factors {
        acc = mul_reduced(&acc, f);
    }
    acc
}

fn gcd(x: &BigUint, y: &BigUint) -> BigUint {
    let (big, small) = if x >= y { (x, y) } else { (y, x) };
    if small.is_zero() {
        return big.clone();
    }
    // one remainder step brings both operands down to the size of the smaller
    if let Some(s) = small.to_u64() {
        let r = (big % s).to_u64().expect("remainder below a u64");
        return BigUint::from(s.gcd(&r));
    }
    let rem = big % small;
    if rem.is_zero() {
        small.clone()
    } else {
        small.gcd(&rem)
    }
}

/// Natural logarithm of a positive rational, accurate to a few ulps even when
/// numerator and denominator are far outside `f64` range.
pub fn ln(value: &BigRational) -> f64 {
    debug_assert!(value.is_positive());
    let (n_mant, n_shift) = top_bits(value.numer());
    let (d_mant, d_shift) = top_bits(value.denom());
    libm::log(n_mant / d_mant) + (n_shift - d_shift) as f64 * core::f64::consts::LN_2
}

fn top_bits(x: &BigInt) -> (f64, i64) {
    let bits = x.bits();
    if bits <= 64 {
        (x.to_u64().map_or(0.0, |v| v as f64), 0)
    } else {
        let shift = bits - 64;
        let top: BigInt = x >> shift;
        (top.to_u64().map_or(0.0, |v| v as f64), shift as i64)
    }
}

/// True when `value` lies in the half-open interval (0, 1].
pub fn is_probability(value: &BigRational) -> bool {
    value.numer().sign() == Sign::Plus && value.numer() <= value.denom()
}

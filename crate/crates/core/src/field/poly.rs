//! Dense polynomial arithmetic over a base field, plus the bounded
//! irreducibility checks used when validating minimal polynomials.
//!
//! Coefficient lists are little-endian (constant term first) throughout.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::base::{BaseKind, BaseScalar};

pub type Poly = Vec<BaseScalar>;

pub fn trim(kind: &BaseKind, mut p: Poly) -> Poly {
    while p.len() > 1 && kind.is_zero(p.last().unwrap()) {
        p.pop();
    }
    p
}

pub fn degree(kind: &BaseKind, p: &[BaseScalar]) -> usize {
    let mut d = p.len();
    while d > 1 && kind.is_zero(&p[d - 1]) {
        d -= 1;
    }
    d - 1
}

pub fn mul(kind: &BaseKind, a: &[BaseScalar], b: &[BaseScalar]) -> Poly {
    let mut out = vec![kind.zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if kind.is_zero(ca) {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            if kind.is_zero(cb) {
                continue;
            }
            let t = kind.mul(ca, cb);
            out[i + j] = kind.add(&out[i + j], &t);
        }
    }
    out
}

/// Remainder of `a` modulo a monic polynomial `m`.
pub fn rem_monic(kind: &BaseKind, a: &[BaseScalar], m: &[BaseScalar]) -> Poly {
    let dm = degree(kind, m);
    let mut r = a.to_vec();
    let mut dr = degree(kind, &r);
    while dr >= dm && !(dr == 0 && kind.is_zero(&r[0])) {
        let lead = r[dr].clone();
        if kind.is_zero(&lead) {
            dr -= 1;
            continue;
        }
        let shift = dr - dm;
        for i in 0..=dm {
            let t = kind.mul(&lead, &m[i]);
            r[i + shift] = kind.sub(&r[i + shift], &t);
        }
        if dr == 0 {
            break;
        }
        dr -= 1;
    }
    r.truncate(dm.max(1));
    while r.len() < dm.max(1) {
        r.push(kind.zero());
    }
    r
}

pub fn is_zero_poly(kind: &BaseKind, p: &[BaseScalar]) -> bool {
    p.iter().all(|c| kind.is_zero(c))
}

/// Outcome of the bounded irreducibility test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    Reducible(String),
    /// Degree (or search space) beyond the implemented bound; the caller
    /// must surface this flag in every certificate.
    Unchecked,
}

const FACTOR_SEARCH_LIMIT: u64 = 2_000_000;

/// Bounded irreducibility check for a monic polynomial of degree >= 1.
///
/// Over GF(p): exhaustive search for a monic factor of degree <= deg/2,
/// feasible up to degree 8 for small p. Over Q: rational-root test for
/// degrees 2 and 3, rational root plus the resolvent-cubic quadratic-factor
/// criterion for degree 4. Anything beyond comes back `Unchecked`.
pub fn irreducibility(kind: &BaseKind, p: &[BaseScalar]) -> Irreducibility {
    let d = degree(kind, p);
    if d == 1 {
        return Irreducibility::Irreducible;
    }
    match kind {
        BaseKind::Prime(q) => {
            if d > 8 {
                return Irreducibility::Unchecked;
            }
            let half = d / 2;
            if (*q as f64).powi(half as i32) > FACTOR_SEARCH_LIMIT as f64 {
                return Irreducibility::Unchecked;
            }
            finite_field_factor_search(*q, kind, p, half)
        }
        BaseKind::Rational => rational_irreducibility(kind, p, d),
    }
}

fn finite_field_factor_search(
    q: u64,
    kind: &BaseKind,
    p: &[BaseScalar],
    max_deg: usize,
) -> Irreducibility {
    for fd in 1..=max_deg {
        // Enumerate all monic polynomials of degree fd over GF(q).
        let mut coeffs = vec![0u64; fd];
        loop {
            let mut cand: Poly = coeffs.iter().map(|c| BaseScalar::Mod(*c)).collect();
            cand.push(BaseScalar::Mod(1));
            let r = rem_monic(kind, p, &cand);
            if is_zero_poly(kind, &r) {
                let desc: Vec<String> = cand.iter().map(|c| kind.format(c)).collect();
                return Irreducibility::Reducible(format!(
                    "monic factor with coefficients [{}]",
                    desc.join(", ")
                ));
            }
            // Odometer increment.
            let mut i = 0;
            loop {
                if i == fd {
                    break;
                }
                coeffs[i] += 1;
                if coeffs[i] < q {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
            }
            if i == fd {
                break;
            }
        }
    }
    Irreducibility::Irreducible
}

fn to_rat(s: &BaseScalar) -> BigRational {
    s.as_rational().expect("rational scalar").clone()
}

/// Scales a rational polynomial to primitive integer coefficients.
fn integer_scale(p: &[BigRational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for c in p {
        lcm = lcm.lcm(c.denom());
    }
    let mut out: Vec<BigInt> = p.iter().map(|c| (c * &lcm).to_integer()).collect();
    let mut gcd = BigInt::zero();
    for c in &out {
        gcd = gcd.gcd(c);
    }
    if !gcd.is_zero() && !gcd.is_one() {
        for c in &mut out {
            *c = &*c / &gcd;
        }
    }
    out
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs();
    if n > BigInt::from(1_000_000_000_000u64) {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            small.push(d.clone());
            large.push(&n / &d);
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small.dedup();
    Some(small)
}

/// All rational roots of an integer polynomial, via the rational root theorem.
fn rational_roots(p: &[BigInt]) -> Option<Vec<BigRational>> {
    let mut roots = Vec::new();
    // Strip x | p.
    let mut poly: Vec<BigInt> = p.to_vec();
    while poly[0].is_zero() && poly.len() > 1 {
        roots.push(BigRational::zero());
        poly.remove(0);
    }
    roots.dedup();
    if poly.len() == 1 {
        return Some(roots);
    }
    let a0 = divisors(&poly[0])?;
    let an = divisors(poly.last().unwrap())?;
    let eval_rat = |x: &BigRational| -> BigRational {
        let mut acc = BigRational::zero();
        for c in poly.iter().rev() {
            acc = acc * x + BigRational::from(c.clone());
        }
        acc
    };
    for num in &a0 {
        for den in &an {
            if den.is_zero() {
                continue;
            }
            for sign in [1i32, -1] {
                let cand = BigRational::new(num.clone() * BigInt::from(sign), den.clone());
                if eval_rat(&cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    Some(roots)
}

fn is_rational_square(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let ns = x.numer().sqrt();
    let ds = x.denom().sqrt();
    if &(&ns * &ns) == x.numer() && &(&ds * &ds) == x.denom() {
        Some(BigRational::new(ns, ds))
    } else {
        None
    }
}

fn rational_irreducibility(_kind: &BaseKind, p: &[BaseScalar], d: usize) -> Irreducibility {
    let rp: Vec<BigRational> = p[..=d].iter().map(to_rat).collect();
    let scaled = integer_scale(&rp);
    let roots = match rational_roots(&scaled) {
        Some(r) => r,
        None => return Irreducibility::Unchecked,
    };
    if let Some(r) = roots.first() {
        return Irreducibility::Reducible(format!("rational root {}", r));
    }
    match d {
        2 | 3 => Irreducibility::Irreducible,
        4 => quartic_quadratic_factor_check(&rp),
        _ => Irreducibility::Unchecked,
    }
}

/// Quadratic-factor criterion for a monic rational quartic with no rational
/// root: depress to y^4 + p y^2 + q y + r and inspect the rational roots of
/// the resolvent cubic t^3 + 2p t^2 + (p^2 - 4r) t - q^2. A factorization
/// into two rational quadratics exists iff some root t is the square of a
/// rational (giving (y^2+ay+b)(y^2-ay+c) with a^2 = t), or t = 0 works with
/// q = 0 and p^2 - 4r a rational square.
fn quartic_quadratic_factor_check(rp: &[BigRational]) -> Irreducibility {
    let four = BigRational::from(BigInt::from(4));
    let shift = -&rp[3] / &four;
    // Expand f(y + shift) to depress the quartic.
    let mut dep = vec![BigRational::zero(); 5];
    // Binomial expansion of (y + shift)^k.
    for (k, coeff) in rp.iter().enumerate() {
        let mut binom = BigRational::one();
        let mut power = BigRational::one();
        for j in (0..=k).rev() {
            // coeff * C(k, j) * shift^(k-j) contributes to y^j.
            dep[j] += coeff * &binom * &power;
            if j > 0 {
                binom = binom * BigRational::from(BigInt::from(j as i64))
                    / BigRational::from(BigInt::from((k - j + 1) as i64));
                power = &power * &shift;
            }
        }
    }
    debug_assert!(dep[4].is_one() && dep[3].is_zero());
    let (pp, qq, rr) = (dep[2].clone(), dep[1].clone(), dep[0].clone());

    let resolvent = [
        -(&qq * &qq),
        &pp * &pp - &four * &rr,
        BigRational::from(BigInt::from(2)) * &pp,
        BigRational::one(),
    ];
    let scaled = integer_scale(&resolvent);
    let roots = match rational_roots(&scaled) {
        Some(r) => r,
        None => return Irreducibility::Unchecked,
    };
    for t in &roots {
        if t.is_zero() {
            if qq.is_zero() {
                let disc = &pp * &pp - &four * &rr;
                if is_rational_square(&disc).is_some() {
                    return Irreducibility::Reducible(
                        "splits into two quadratics in y^2".into(),
                    );
                }
            }
            continue;
        }
        if let Some(a) = is_rational_square(t) {
            // b, c from the factorization identities; verify exactly.
            let two = BigRational::from(BigInt::from(2));
            let b = (&pp + t - &qq / &a) / &two;
            let c = (&pp + t + &qq / &a) / &two;
            let holds = (&b * &c == rr)
                && (&b + &c - &a * &a == pp)
                && (&a * (&c - &b) == qq);
            if holds {
                return Irreducibility::Reducible("splits into two rational quadratics".into());
            }
        }
    }
    Irreducibility::Irreducible
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qpoly(coeffs: &[i64]) -> Poly {
        coeffs
            .iter()
            .map(|c| BaseKind::Rational.from_i64(*c))
            .collect()
    }

    #[test]
    fn remainder_reduces_degree() {
        let k = BaseKind::Rational;
        // x^2 mod (x^2 + 1) = -1
        let r = rem_monic(&k, &qpoly(&[0, 0, 1]), &qpoly(&[1, 0, 1]));
        assert_eq!(r, qpoly(&[-1, 0]));
    }

    #[test]
    fn irreducibility_over_q() {
        let k = BaseKind::Rational;
        assert_eq!(irreducibility(&k, &qpoly(&[1, 0, 1])), Irreducibility::Irreducible);
        assert!(matches!(
            irreducibility(&k, &qpoly(&[-1, 0, 1])),
            Irreducibility::Reducible(_)
        ));
        // x^4 - 2x^2 + 9, minimal polynomial of i + sqrt(2): irreducible.
        assert_eq!(
            irreducibility(&k, &qpoly(&[9, 0, -2, 0, 1])),
            Irreducibility::Irreducible
        );
        // x^4 + 4 = (x^2-2x+2)(x^2+2x+2): caught by the resolvent route.
        assert!(matches!(
            irreducibility(&k, &qpoly(&[4, 0, 0, 0, 1])),
            Irreducibility::Reducible(_)
        ));
        // x^4 - 4 has the rational-quadratic factor x^2 - 2.
        assert!(matches!(
            irreducibility(&k, &qpoly(&[-4, 0, 0, 0, 1])),
            Irreducibility::Reducible(_)
        ));
        assert_eq!(
            irreducibility(&k, &qpoly(&[2, 0, 0, 0, 0, 1])),
            Irreducibility::Unchecked
        );
    }

    #[test]
    fn irreducibility_over_gf7() {
        let k = BaseKind::Prime(7);
        let p = |cs: &[i64]| -> Poly { cs.iter().map(|c| k.from_i64(*c)).collect() };
        // x^2 + 1 irreducible over GF(7) (-1 is not a square mod 7).
        assert_eq!(irreducibility(&k, &p(&[1, 0, 1])), Irreducibility::Irreducible);
        // x^3 - 2 irreducible over GF(7) (2 is not a cube).
        assert_eq!(irreducibility(&k, &p(&[-2, 0, 0, 1])), Irreducibility::Irreducible);
        // x^2 - 2 = (x-3)(x-4) over GF(7).
        assert!(matches!(
            irreducibility(&k, &p(&[-2, 0, 1])),
            Irreducibility::Reducible(_)
        ));
    }
}

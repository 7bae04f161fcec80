//! Shared fixtures for the unit tests: the worked examples that recur
//! across modules (Q(i)/Q, GF(343)/GF(7), the quaternion and carry
//! cocycles, the Klein-four field Q(i, sqrt2)).

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::cocycle::{TwoCocycle, ValueSubgroup};
use crate::field::{BaseKind, BaseScalar, Field, FieldElement};
use crate::galois::GaloisExtension;
use crate::group::FiniteGroup;

pub fn gaussian_field() -> Field {
    let q = Field::rationals();
    let k = BaseKind::Rational;
    let minpoly = vec![k.from_i64(1), k.from_i64(0), k.from_i64(1)];
    let mut autos = BTreeMap::new();
    autos.insert("id".to_string(), vec![k.from_i64(0), k.from_i64(1)]);
    autos.insert("conj".to_string(), vec![k.from_i64(0), k.from_i64(-1)]);
    Field::extension(&q, minpoly, autos).unwrap()
}

pub fn gaussian_extension() -> GaloisExtension {
    let qi = gaussian_field();
    let z2 = Arc::new(FiniteGroup::abelian(&[2]).unwrap());
    GaloisExtension::validate(&qi, z2, vec!["id".into(), "conj".into()]).unwrap()
}

/// GF(343) = GF(7)[x]/(x^3 - 2) with the Frobenius orbit as Galois group.
pub fn gf343_field() -> Field {
    let f7 = Field::prime(7).unwrap();
    let k = BaseKind::Prime(7);
    let minpoly = vec![k.from_i64(-2), k.from_i64(0), k.from_i64(0), k.from_i64(1)];
    let mut autos = BTreeMap::new();
    autos.insert("id".to_string(), vec![k.from_i64(0), k.from_i64(1), k.from_i64(0)]);
    autos.insert("frob".to_string(), vec![k.from_i64(0), k.from_i64(4), k.from_i64(0)]);
    autos.insert("frob2".to_string(), vec![k.from_i64(0), k.from_i64(2), k.from_i64(0)]);
    Field::extension(&f7, minpoly, autos).unwrap()
}

pub fn gf343_extension() -> GaloisExtension {
    let l = gf343_field();
    let z3 = Arc::new(FiniteGroup::abelian(&[3]).unwrap());
    GaloisExtension::validate(&l, z3, vec!["id".into(), "frob".into(), "frob2".into()]).unwrap()
}

/// GF(4) = GF(2)[x]/(x^2 + x + 1) with Frobenius.
pub fn gf4_extension() -> GaloisExtension {
    let f2 = Field::prime(2).unwrap();
    let k = BaseKind::Prime(2);
    let minpoly = vec![k.from_i64(1), k.from_i64(1), k.from_i64(1)];
    let mut autos = BTreeMap::new();
    autos.insert("id".to_string(), vec![k.from_i64(0), k.from_i64(1)]);
    // Frobenius: theta -> theta^2 = theta + 1.
    autos.insert("frob".to_string(), vec![k.from_i64(1), k.from_i64(1)]);
    let l = Field::extension(&f2, minpoly, autos).unwrap();
    let z2 = Arc::new(FiniteGroup::abelian(&[2]).unwrap());
    GaloisExtension::validate(&l, z2, vec!["id".into(), "frob".into()]).unwrap()
}

/// Q(i, sqrt2) presented by theta = i + sqrt2 with minimal polynomial
/// x^4 - 2x^2 + 9, Galois group the Klein four-group.
pub fn klein_extension() -> GaloisExtension {
    let q = Field::rationals();
    let k = BaseKind::Rational;
    let minpoly = vec![
        k.from_i64(9),
        k.from_i64(0),
        k.from_i64(-2),
        k.from_i64(0),
        k.from_i64(1),
    ];
    let third = |n: i64| {
        BaseScalar::Rat(num_rational::BigRational::new(
            num_bigint::BigInt::from(n),
            num_bigint::BigInt::from(3),
        ))
    };
    let mut autos = BTreeMap::new();
    autos.insert(
        "id".into(),
        vec![k.from_i64(0), k.from_i64(1), k.from_i64(0), k.from_i64(0)],
    );
    autos.insert(
        "s".into(),
        vec![k.from_i64(0), third(2), k.from_i64(0), third(-1)],
    );
    autos.insert(
        "t".into(),
        vec![k.from_i64(0), third(-2), k.from_i64(0), third(1)],
    );
    autos.insert(
        "st".into(),
        vec![k.from_i64(0), k.from_i64(-1), k.from_i64(0), k.from_i64(0)],
    );
    let l = Field::extension(&q, minpoly, autos).unwrap();
    let klein = Arc::new(FiniteGroup::abelian(&[2, 2]).unwrap());
    // Element "1,0" acts by s, "0,1" by t, "1,1" by st.
    GaloisExtension::validate(
        &l,
        klein,
        vec!["id".into(), "t".into(), "s".into(), "st".into()],
    )
    .unwrap()
}

/// The quaternion cocycle on Z/2 over Q: alpha(s, s) = -1, all else 1.
pub fn quaternion_cocycle() -> TwoCocycle {
    let q = Field::rationals();
    let z2 = Arc::new(FiniteGroup::abelian(&[2]).unwrap());
    let values = vec![vec![q.one(), q.one()], vec![q.one(), q.from_i64(-1)]];
    TwoCocycle::validate(z2, &q, values, ValueSubgroup::RootsOfUnity { order: 2 }).unwrap()
}

/// The carry cocycle on Z/3 over GF(7) with b = 3.
pub fn gf7_carry_cocycle() -> TwoCocycle {
    let f7 = Field::prime(7).unwrap();
    let z3 = Arc::new(FiniteGroup::abelian(&[3]).unwrap());
    let b = f7.from_i64(3);
    let values: Vec<Vec<FieldElement>> = (0..3usize)
        .map(|i| {
            (0..3usize)
                .map(|j| if i + j < 3 { f7.one() } else { b.clone() })
                .collect()
        })
        .collect();
    TwoCocycle::validate(z3, &f7, values, ValueSubgroup::RootsOfUnity { order: 6 }).unwrap()
}

/// The bilinear cocycle on the Klein four-group with values +/-1:
/// alpha((i,j),(a,b)) = (-1)^{j a}.
pub fn klein_cocycle() -> TwoCocycle {
    let q = Field::rationals();
    let klein = Arc::new(FiniteGroup::abelian(&[2, 2]).unwrap());
    let n = klein.order();
    let exponents = |idx: usize| -> (u64, u64) {
        let label = klein.label(idx).to_string();
        let mut it = label.split(',');
        let a: u64 = it.next().unwrap().parse().unwrap();
        let b: u64 = it.next().unwrap().parse().unwrap();
        (a, b)
    };
    let values: Vec<Vec<FieldElement>> = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    let (_, j) = exponents(x);
                    let (a, _) = exponents(y);
                    if (j * a) % 2 == 1 {
                        q.from_i64(-1)
                    } else {
                        q.one()
                    }
                })
                .collect()
        })
        .collect();
    TwoCocycle::validate(klein, &q, values, ValueSubgroup::RootsOfUnity { order: 2 }).unwrap()
}

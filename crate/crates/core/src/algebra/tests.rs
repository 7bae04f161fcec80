use super::*;
use crate::cocycle::ValueSubgroup;
use crate::field::Field;
use crate::galois::GaloisExtension;
use crate::report::Status;
use crate::testutil::*;
use std::sync::Arc;

#[test]
fn trivial_cocycle_gives_group_algebra() {
    let q = Field::rationals();
    let z3 = Arc::new(FiniteGroup::abelian(&[3]).unwrap());
    let alpha = TwoCocycle::trivial(z3.clone(), &q);
    let alg = twisted_group_algebra(&z3, &alpha).unwrap();
    assert_eq!(alg.dim(), 3);
    // Multiplication table is the Cayley table, entry for entry.
    for g in 0..3 {
        for h in 0..3 {
            assert_eq!(
                alg.basis_product(g, h),
                &vec![(z3.mul(g, h), q.one())]
            );
        }
    }
}

#[test]
fn quaternion_twisted_algebra_is_q_i() {
    let alpha = quaternion_cocycle();
    let alg = twisted_group_algebra(alpha.group(), &alpha).unwrap();
    let q = Field::rationals();
    // U_sigma^2 = -U_1: the algebra Q[u]/(u^2 + 1).
    assert_eq!(alg.basis_product(1, 1), &vec![(0, q.from_i64(-1))]);
}

#[test]
fn gf7_carry_twisted_algebra() {
    let alpha = gf7_carry_cocycle();
    let alg = twisted_group_algebra(alpha.group(), &alpha).unwrap();
    let f7 = Field::prime(7).unwrap();
    // U_s * U_s = U_{s^2}, then U_{s^2} U_s = 3 U_1.
    let u1 = vec![(1usize, f7.one())];
    let u2 = alg.mul(&u1, &u1);
    assert_eq!(u2, vec![(2, f7.one())]);
    assert_eq!(alg.mul(&u2, &u1), vec![(0, f7.from_i64(3))]);
}

#[test]
fn fun_algebra_is_split() {
    let q = Field::rationals();
    let z3 = Arc::new(FiniteGroup::abelian(&[3]).unwrap());
    let alg = fun_algebra(&z3, &q).unwrap();
    // e_s e_{s^2} = 0, and the unit acts as identity on each idempotent.
    assert!(alg.basis_product(1, 2).is_empty());
    let e1 = vec![(1usize, q.one())];
    assert_eq!(alg.mul(alg.unit(), &e1), e1);
    assert!(alg.is_commutative());
}

#[test]
fn split_crossed_product_rule() {
    // alpha = 1 over Q(i): (1 U_s)(i U_1) = s(i) U_s = -i U_s.
    let ext = gaussian_extension();
    let alpha = TwoCocycle::trivial(ext.group().clone(), ext.base());
    let alg = crossed_product(&ext, &alpha).unwrap();
    assert_eq!(alg.dim(), 4);
    let q = Field::rationals();
    let u_s = alg.index_of("t0*U[1]").unwrap();
    let i_u1 = alg.index_of("t1*U[0]").unwrap();
    let i_us = alg.index_of("t1*U[1]").unwrap();
    let prod = alg.mul(&vec![(u_s, q.one())], &vec![(i_u1, q.one())]);
    assert_eq!(prod, vec![(i_us, q.from_i64(-1))]);
}

#[test]
fn quaternion_crossed_product_relations() {
    let ext = gaussian_extension();
    let alpha = quaternion_cocycle();
    let alg = crossed_product(&ext, &alpha).unwrap();
    let q = Field::rationals();
    // i := theta U_1, j := U_sigma.
    let i = vec![(alg.index_of("t1*U[0]").unwrap(), q.one())];
    let j = vec![(alg.index_of("t0*U[1]").unwrap(), q.one())];
    let minus_one = sparse_scale(&q.from_i64(-1), alg.unit());
    assert_eq!(alg.mul(&i, &i), minus_one);
    assert_eq!(alg.mul(&j, &j), minus_one);
    let ij = alg.mul(&i, &j);
    let ji = alg.mul(&j, &i);
    assert_eq!(ij, sparse_scale(&q.from_i64(-1), &ji));
    assert!(!sparse_eq(&ij, &ji));
}

#[test]
fn trivial_extension_crossed_product_is_k() {
    let q = Field::rationals();
    let ext = GaloisExtension::trivial(&q);
    let alpha = TwoCocycle::trivial(ext.group().clone(), &q);
    let alg = crossed_product(&ext, &alpha).unwrap();
    assert_eq!(alg.dim(), 1);
    assert_eq!(alg.unit(), &vec![(0, q.one())]);
}

#[test]
fn sum_and_tensor_dimensions() {
    let q = Field::rationals();
    let z2 = Arc::new(FiniteGroup::abelian(&[2]).unwrap());
    let kg = twisted_group_algebra(&z2, &TwoCocycle::trivial(z2.clone(), &q)).unwrap();
    let qi = twisted_group_algebra(&z2, &quaternion_cocycle()).unwrap();
    let sum = direct_sum(&kg, &qi).unwrap();
    assert_eq!(sum.dim(), 4);
    // Cross products vanish; the unit is the sum of the units.
    assert!(sum.basis_product(0, 2).is_empty());
    assert_eq!(sum.unit().len(), 2);
    let tensor = tensor_product(&kg, &qi).unwrap();
    assert_eq!(tensor.dim(), kg.dim() * qi.dim());
}

#[test]
fn center_computations() {
    // Commutative algebra: the center is everything.
    let q = Field::rationals();
    let z3 = Arc::new(FiniteGroup::abelian(&[3]).unwrap());
    let kg = twisted_group_algebra(&z3, &TwoCocycle::trivial(z3.clone(), &q)).unwrap();
    assert_eq!(kg.center_dim(), 3);

    // Rational quaternions: center = span{1}.
    let ext = gaussian_extension();
    let quat = crossed_product(&ext, &quaternion_cocycle()).unwrap();
    assert_eq!(quat.center_dim(), 1);

    // Q[Z/2] + Q: everything commutes, center has dimension 3.
    let z2 = Arc::new(FiniteGroup::abelian(&[2]).unwrap());
    let kz2 = twisted_group_algebra(&z2, &TwoCocycle::trivial(z2.clone(), &q)).unwrap();
    let triv = GaloisExtension::trivial(&q);
    let k_alg = field_as_algebra(&triv).unwrap();
    let sum = direct_sum(&kz2, &k_alg).unwrap();
    assert_eq!(sum.center_dim(), 3);
}

#[test]
fn gf2_group_algebra_radical() {
    let f2 = Field::prime(2).unwrap();
    let z2 = Arc::new(FiniteGroup::abelian(&[2]).unwrap());
    let alg = twisted_group_algebra(&z2, &TwoCocycle::trivial(z2.clone(), &f2)).unwrap();
    let report = alg.semisimplicity();
    assert_eq!(report.status, Status::Pass);
    assert!(!report.semisimple);
    // Radical = span{1 + sigma}: (1 + sigma)^2 = 2(1 + sigma) = 0 in char 2.
    assert_eq!(report.radical_basis.len(), 1);
    let rad = &report.radical_basis[0];
    assert_eq!(rad, &vec![(0, f2.one()), (1, f2.one())]);
    assert!(alg.mul(rad, rad).is_empty());
}

#[test]
fn rational_group_algebra_semisimple() {
    let q = Field::rationals();
    let z2 = Arc::new(FiniteGroup::abelian(&[2]).unwrap());
    let alg = twisted_group_algebra(&z2, &TwoCocycle::trivial(z2.clone(), &q)).unwrap();
    // Trace form is diagonal(2, 2): nondegenerate.
    let report = alg.semisimplicity();
    assert!(report.semisimple);
    assert_eq!(report.method, "trace_form");
    let traces = alg.basis_traces();
    assert_eq!(traces[0], q.from_i64(2));
    assert!(traces[1].is_zero());
}

#[test]
fn quaternions_are_semisimple_and_central_simple() {
    let ext = gaussian_extension();
    let quat = crossed_product(&ext, &quaternion_cocycle()).unwrap();
    assert!(quat.semisimplicity().semisimple);
    let csa = is_central_simple(&quat);
    assert!(csa.central_simple);
    assert_eq!(csa.sandwich_rank, 16);
}

#[test]
fn field_extension_is_not_central_simple_over_base() {
    let ext = gaussian_extension();
    let qi_as_algebra = field_as_algebra(&ext).unwrap();
    let csa = is_central_simple(&qi_as_algebra);
    assert!(!csa.central_simple);
    assert_eq!(csa.center_dim, 2);
}

#[test]
fn split_crossed_product_is_central_simple() {
    let ext = gaussian_extension();
    let alpha = TwoCocycle::trivial(ext.group().clone(), ext.base());
    let alg = crossed_product(&ext, &alpha).unwrap();
    let csa = is_central_simple(&alg);
    assert!(csa.central_simple);
    assert_eq!(csa.sandwich_rank, 16);
}

#[test]
fn semisimplicity_matches_characteristic_criterion() {
    // kG is semisimple iff char k does not divide |G|, across the full
    // field/group matrix, reproducing the summand-level dichotomy.
    let fields: Vec<(Field, u64)> = vec![
        (Field::rationals(), 0),
        (Field::prime(2).unwrap(), 2),
        (Field::prime(3).unwrap(), 3),
        (Field::prime(7).unwrap(), 7),
    ];
    for (field, char) in &fields {
        for invariants in [vec![2u64], vec![3], vec![4]] {
            let g = Arc::new(FiniteGroup::abelian(&invariants).unwrap());
            let alg =
                twisted_group_algebra(&g, &TwoCocycle::trivial(g.clone(), field)).unwrap();
            let report = alg.semisimplicity();
            assert_eq!(report.status, Status::Pass, "char {char}, G {invariants:?}");
            let expect = *char == 0 || g.order() as u64 % *char != 0;
            assert_eq!(
                report.semisimple, expect,
                "char {char}, G {invariants:?}, method {}",
                report.method
            );
        }
    }
}

#[test]
fn sandwich_criterion_matches_ideal_enumeration() {
    // Oracle cross-check on small finite-field algebras: bijectivity of the
    // sandwich map must coincide with (center = k*1 and no proper ideal).
    let f2 = Field::prime(2).unwrap();
    let f3 = Field::prime(3).unwrap();
    let mut cases: Vec<StructureAlgebra> = Vec::new();
    for field in [&f2, &f3] {
        for invariants in [vec![2u64], vec![3], vec![2, 2]] {
            let g = Arc::new(FiniteGroup::abelian(&invariants).unwrap());
            cases.push(
                twisted_group_algebra(&g, &TwoCocycle::trivial(g.clone(), field)).unwrap(),
            );
            cases.push(fun_algebra(&g, field).unwrap());
        }
    }
    // M2(GF(3)) via the crossed product of GF(9)/GF(3) with alpha = 1.
    {
        let f3 = Field::prime(3).unwrap();
        let k = crate::field::BaseKind::Prime(3);
        let minpoly = vec![k.from_i64(1), k.from_i64(0), k.from_i64(1)];
        let mut autos = std::collections::BTreeMap::new();
        autos.insert("id".to_string(), vec![k.from_i64(0), k.from_i64(1)]);
        autos.insert("frob".to_string(), vec![k.from_i64(0), k.from_i64(-1)]);
        let gf9 = Field::extension(&f3, minpoly, autos).unwrap();
        let z2 = Arc::new(FiniteGroup::abelian(&[2]).unwrap());
        let ext = GaloisExtension::validate(&gf9, z2, vec!["id".into(), "frob".into()]).unwrap();
        let alpha = TwoCocycle::trivial(ext.group().clone(), &f3);
        cases.push(crossed_product(&ext, &alpha).unwrap());
    }
    for alg in &cases {
        let csa = is_central_simple(alg);
        let simple = alg.is_simple_by_enumeration().expect("within bounds");
        let central = alg.center_dim() == 1;
        assert_eq!(
            csa.central_simple,
            central && simple,
            "dim {} over {:?}",
            alg.dim(),
            alg.field().base_kind()
        );
    }
}

#[test]
fn hom_checks() {
    let q = Field::rationals();
    let z2 = Arc::new(FiniteGroup::abelian(&[2]).unwrap());
    let kg = twisted_group_algebra(&z2, &TwoCocycle::trivial(z2.clone(), &q)).unwrap();

    // Identity map.
    let id = LinearMap::identity(2, &q);
    let rep = hom_check(&id, &kg, &kg).unwrap();
    assert!(rep.is_homomorphism() && rep.surjective);

    // Direct-sum projection onto the second summand.
    let qi = twisted_group_algebra(&z2, &quaternion_cocycle()).unwrap();
    let sum = direct_sum(&kg, &qi).unwrap();
    let proj = LinearMap::from_columns(
        4,
        2,
        vec![Vec::new(), Vec::new(), vec![(0, q.one())], vec![(1, q.one())]],
    )
    .unwrap();
    let rep = hom_check(&proj, &sum, &qi).unwrap();
    assert!(rep.is_homomorphism() && rep.surjective);

    // The sign representation Q[Z/2] -> Q, sigma -> -1.
    let triv = GaloisExtension::trivial(&q);
    let k_alg = field_as_algebra(&triv).unwrap();
    let sign = LinearMap::from_columns(2, 1, vec![vec![(0, q.one())], vec![(0, q.from_i64(-1))]])
        .unwrap();
    let rep = hom_check(&sign, &kg, &k_alg).unwrap();
    assert!(rep.is_homomorphism() && rep.surjective);

    // A non-homomorphism is caught with the failing pair named.
    let bad = LinearMap::from_columns(2, 2, vec![vec![(0, q.one())], vec![(1, q.from_i64(2))]])
        .unwrap();
    let rep = hom_check(&bad, &kg, &kg).unwrap();
    assert!(!rep.multiplicative);
    assert!(rep.first_failure.is_some());
}

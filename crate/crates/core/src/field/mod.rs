//! Exact arithmetic for the base fields Q and GF(p) and for explicit finite
//! extensions k(theta) = k[x]/(p(x)) with a declared automorphism group.
//!
//! Extension elements live in the power basis of the single generator theta;
//! coefficient lists are little-endian. All values are immutable after
//! construction and a [`Field`] handle is a cheap shareable `Arc`.

mod base;
mod poly;

pub use base::{is_prime, BaseKind, BaseScalar};
pub use poly::Irreducibility;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Debug)]
struct ExtensionRepr {
    minpoly: Vec<BaseScalar>,
    degree: usize,
    /// label -> image of theta, in the power basis.
    automorphisms: BTreeMap<String, Vec<BaseScalar>>,
    /// label -> columns [sigma(theta)^a for a in 0..degree].
    matrices: BTreeMap<String, Vec<Vec<BaseScalar>>>,
    /// composition[a][b] = label of a after b ("a o b").
    composition: BTreeMap<String, BTreeMap<String, String>>,
    identity_label: String,
    irreducibility: Irreducibility,
}

#[derive(Debug)]
struct FieldRepr {
    base: BaseKind,
    ext: Option<ExtensionRepr>,
}

/// A field descriptor: Q, GF(p), or a flat extension of one of those.
#[derive(Clone, Debug)]
pub struct Field(Arc<FieldRepr>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        if self.0.base != other.0.base {
            return false;
        }
        match (&self.0.ext, &other.0.ext) {
            (None, None) => true,
            (Some(a), Some(b)) => a.minpoly == b.minpoly && a.automorphisms == b.automorphisms,
            _ => false,
        }
    }
}
impl Eq for Field {}

impl Field {
    pub fn rationals() -> Field {
        Field(Arc::new(FieldRepr {
            base: BaseKind::Rational,
            ext: None,
        }))
    }

    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field(Arc::new(FieldRepr {
            base: BaseKind::Prime(p),
            ext: None,
        })))
    }

    /// Builds k[x]/(minpoly) over a base field, with automorphisms given by
    /// the image of the generator. The minimal polynomial must be monic;
    /// irreducibility is verified within the implemented bounds and the
    /// descriptor is flagged `Unchecked` beyond them. The declared
    /// automorphisms must each send the generator to a root of the minimal
    /// polynomial, be pairwise distinct, and be closed under composition.
    pub fn extension(
        base: &Field,
        minpoly: Vec<BaseScalar>,
        automorphisms: BTreeMap<String, Vec<BaseScalar>>,
    ) -> Result<Field> {
        if base.0.ext.is_some() {
            return Err(Error::NestedExtension);
        }
        let kind = base.0.base;
        let minpoly = poly::trim(&kind, minpoly);
        let degree = poly::degree(&kind, &minpoly);
        if degree < 1 || !kind.is_one(minpoly.last().unwrap()) {
            return Err(Error::BadMinimalPolynomial);
        }
        let irreducibility = poly::irreducibility(&kind, &minpoly);
        if let Irreducibility::Reducible(why) = &irreducibility {
            return Err(Error::ReduciblePolynomial(why.clone()));
        }

        // A bare copy without automorphisms gives us arithmetic in the
        // quotient ring while we validate the declared maps.
        let bare = Field(Arc::new(FieldRepr {
            base: kind,
            ext: Some(ExtensionRepr {
                minpoly: minpoly.clone(),
                degree,
                automorphisms: BTreeMap::new(),
                matrices: BTreeMap::new(),
                composition: BTreeMap::new(),
                identity_label: String::new(),
                irreducibility: irreducibility.clone(),
            }),
        }));

        let mut images: BTreeMap<String, FieldElement> = BTreeMap::new();
        for (label, img) in &automorphisms {
            if img.len() > degree {
                return Err(Error::BadCoefficientLength {
                    got: img.len(),
                    expected: degree,
                });
            }
            let mut coeffs = img.clone();
            coeffs.resize(degree, kind.zero());
            let img_el = bare.element(coeffs)?;
            // The image must be another root of the minimal polynomial.
            let mut value = bare.zero();
            for c in minpoly.iter().rev() {
                value = &(&value * &img_el) + &bare.embed_scalar(c.clone());
            }
            if !value.is_zero() {
                return Err(Error::InvalidAutomorphism {
                    label: label.clone(),
                    reason: "the image of the generator is not a root of the minimal polynomial"
                        .into(),
                });
            }
            images.insert(label.clone(), img_el);
        }
        // Pairwise distinct.
        let all: Vec<(&String, &FieldElement)> = images.iter().collect();
        for i in 0..all.len() {
            for j in i + 1..all.len() {
                if all[i].1 == all[j].1 {
                    return Err(Error::InvalidAutomorphism {
                        label: all[j].0.clone(),
                        reason: format!("duplicates `{}`", all[i].0),
                    });
                }
            }
        }

        // Power matrices: matrices[label][a] = sigma(theta)^a.
        let mut matrices: BTreeMap<String, Vec<Vec<BaseScalar>>> = BTreeMap::new();
        for (label, img) in &images {
            let mut cols = Vec::with_capacity(degree);
            let mut acc = bare.one();
            for _ in 0..degree {
                cols.push(acc.coeffs.clone());
                acc = &acc * img;
            }
            matrices.insert(label.clone(), cols);
        }

        // Closure under composition, via sigma(tau(theta)).
        let apply = |label: &str, x: &FieldElement| -> FieldElement {
            let cols = &matrices[label];
            let mut out = vec![kind.zero(); degree];
            for (a, c) in x.coeffs.iter().enumerate() {
                if kind.is_zero(c) {
                    continue;
                }
                for (row, m) in cols[a].iter().enumerate() {
                    let t = kind.mul(c, m);
                    out[row] = kind.add(&out[row], &t);
                }
            }
            FieldElement {
                field: bare.clone(),
                coeffs: out,
            }
        };
        let mut composition: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::new();
        for (a, _) in &images {
            let mut row = BTreeMap::new();
            for (b, img_b) in &images {
                let composite = apply(a, img_b);
                let found = images
                    .iter()
                    .find(|(_, img)| **img == composite)
                    .map(|(l, _)| l.clone())
                    .ok_or(Error::AutomorphismsNotClosed)?;
                row.insert(b.clone(), found);
            }
            composition.insert(a.clone(), row);
        }
        let theta = bare.generator()?;
        let identity_label = match images.iter().find(|(_, img)| **img == theta) {
            Some((l, _)) => l.clone(),
            None if automorphisms.is_empty() => String::new(),
            None => return Err(Error::AutomorphismsNotClosed),
        };

        Ok(Field(Arc::new(FieldRepr {
            base: kind,
            ext: Some(ExtensionRepr {
                minpoly,
                degree,
                automorphisms,
                matrices,
                composition,
                identity_label,
                irreducibility,
            }),
        })))
    }

    pub fn base_kind(&self) -> BaseKind {
        self.0.base
    }

    pub fn characteristic(&self) -> u64 {
        self.0.base.characteristic()
    }

    pub fn is_extension(&self) -> bool {
        self.0.ext.is_some()
    }

    /// Extension degree over the base field (1 for Q and GF(p) themselves).
    pub fn degree(&self) -> usize {
        self.0.ext.as_ref().map(|e| e.degree).unwrap_or(1)
    }

    /// The base field this field extends (itself for base fields).
    pub fn base_field(&self) -> Field {
        match self.0.ext {
            None => self.clone(),
            Some(_) => Field(Arc::new(FieldRepr {
                base: self.0.base,
                ext: None,
            })),
        }
    }

    pub fn minimal_polynomial(&self) -> Option<&[BaseScalar]> {
        self.0.ext.as_ref().map(|e| e.minpoly.as_slice())
    }

    pub fn irreducibility_status(&self) -> Irreducibility {
        self.0
            .ext
            .as_ref()
            .map(|e| e.irreducibility.clone())
            .unwrap_or(Irreducibility::Irreducible)
    }

    pub fn minpoly_unchecked(&self) -> bool {
        matches!(self.irreducibility_status(), Irreducibility::Unchecked)
    }

    pub fn automorphism_labels(&self) -> Vec<String> {
        self.0
            .ext
            .as_ref()
            .map(|e| e.automorphisms.keys().cloned().collect())
            .unwrap_or_default()
    }

    pub fn automorphism_image(&self, label: &str) -> Result<FieldElement> {
        let ext = self.0.ext.as_ref().ok_or_else(|| {
            Error::UnknownAutomorphism(label.to_string())
        })?;
        let img = ext
            .automorphisms
            .get(label)
            .ok_or_else(|| Error::UnknownAutomorphism(label.to_string()))?;
        let mut coeffs = img.clone();
        coeffs.resize(ext.degree, self.0.base.zero());
        self.element(coeffs)
    }

    pub fn identity_automorphism(&self) -> Result<String> {
        match &self.0.ext {
            Some(e) if !e.identity_label.is_empty() => Ok(e.identity_label.clone()),
            _ => Err(Error::Internal("no identity automorphism declared".into())),
        }
    }

    /// Label of `a` composed after `b`.
    pub fn compose_automorphisms(&self, a: &str, b: &str) -> Result<String> {
        let ext = self
            .0
            .ext
            .as_ref()
            .ok_or_else(|| Error::UnknownAutomorphism(a.to_string()))?;
        ext.composition
            .get(a)
            .ok_or_else(|| Error::UnknownAutomorphism(a.to_string()))?
            .get(b)
            .cloned()
            .ok_or_else(|| Error::UnknownAutomorphism(b.to_string()))
    }

    /// Applies a declared automorphism; a ring homomorphism fixing the base.
    pub fn apply_automorphism(&self, label: &str, x: &FieldElement) -> Result<FieldElement> {
        assert!(x.field == *self, "element from another field");
        let ext = self
            .0
            .ext
            .as_ref()
            .ok_or_else(|| Error::UnknownAutomorphism(label.to_string()))?;
        let cols = ext
            .matrices
            .get(label)
            .ok_or_else(|| Error::UnknownAutomorphism(label.to_string()))?;
        let kind = self.0.base;
        let mut out = vec![kind.zero(); ext.degree];
        for (a, c) in x.coeffs.iter().enumerate() {
            if kind.is_zero(c) {
                continue;
            }
            for (row, m) in cols[a].iter().enumerate() {
                let t = kind.mul(c, m);
                out[row] = kind.add(&out[row], &t);
            }
        }
        Ok(FieldElement {
            field: self.clone(),
            coeffs: out,
        })
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            coeffs: vec![self.0.base.zero(); self.degree()],
        }
    }

    pub fn one(&self) -> FieldElement {
        let mut coeffs = vec![self.0.base.zero(); self.degree()];
        coeffs[0] = self.0.base.one();
        FieldElement {
            field: self.clone(),
            coeffs,
        }
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        let mut coeffs = vec![self.0.base.zero(); self.degree()];
        coeffs[0] = self.0.base.from_i64(n);
        FieldElement {
            field: self.clone(),
            coeffs,
        }
    }

    /// The generator theta of an extension (errors for base fields).
    pub fn generator(&self) -> Result<FieldElement> {
        if self.degree() < 2 {
            return Err(Error::Internal(
                "base fields have no distinguished generator".into(),
            ));
        }
        let mut coeffs = vec![self.0.base.zero(); self.degree()];
        coeffs[1] = self.0.base.one();
        Ok(FieldElement {
            field: self.clone(),
            coeffs,
        })
    }

    pub fn element(&self, coeffs: Vec<BaseScalar>) -> Result<FieldElement> {
        if coeffs.len() != self.degree() {
            return Err(Error::BadCoefficientLength {
                got: coeffs.len(),
                expected: self.degree(),
            });
        }
        Ok(FieldElement {
            field: self.clone(),
            coeffs,
        })
    }

    /// Embeds a base-field scalar as the constant coordinate.
    pub fn embed_scalar(&self, s: BaseScalar) -> FieldElement {
        let mut coeffs = vec![self.0.base.zero(); self.degree()];
        coeffs[0] = s;
        FieldElement {
            field: self.clone(),
            coeffs,
        }
    }

    /// Embeds an element of the base field.
    pub fn embed(&self, x: &FieldElement) -> Result<FieldElement> {
        if x.field == *self {
            return Ok(x.clone());
        }
        if x.field == self.base_field() {
            Ok(self.embed_scalar(x.coeffs[0].clone()))
        } else {
            Err(Error::FieldMismatch)
        }
    }

    /// A primitive root of unity of exact multiplicative order `n`, or an
    /// error telling the caller to enlarge the field. The search is
    /// exhaustive over a finite field; over Q and its extensions the
    /// candidates are +/-1 and signed powers of the generator.
    pub fn primitive_root_of_unity(&self, n: u64) -> Result<FieldElement> {
        if n == 0 {
            return Err(Error::NoPrimitiveRoot { order: 0 });
        }
        if n == 1 {
            return Ok(self.one());
        }
        match self.0.base {
            BaseKind::Prime(p) => {
                let size = (p as f64).powi(self.degree() as i32);
                if size > 200_000.0 {
                    return Err(Error::SearchSpaceTooLarge(format!(
                        "root-of-unity search over a field of size {size}"
                    )));
                }
                let d = self.degree();
                let mut idx = vec![0u64; d];
                loop {
                    let coeffs: Vec<BaseScalar> =
                        idx.iter().map(|c| BaseScalar::Mod(*c)).collect();
                    let cand = FieldElement {
                        field: self.clone(),
                        coeffs,
                    };
                    if !cand.is_zero() && cand.multiplicative_order(n) == Some(n) {
                        return Ok(cand);
                    }
                    let mut i = 0;
                    loop {
                        if i == d {
                            return Err(Error::NoPrimitiveRoot { order: n });
                        }
                        idx[i] += 1;
                        if idx[i] < p {
                            break;
                        }
                        idx[i] = 0;
                        i += 1;
                    }
                }
            }
            BaseKind::Rational => {
                let mut candidates = vec![self.one(), -&self.one()];
                if let Ok(theta) = self.generator() {
                    let mut acc = theta.clone();
                    for _ in 1..self.degree() {
                        candidates.push(acc.clone());
                        candidates.push(-&acc);
                        acc = &acc * &theta;
                    }
                }
                for cand in candidates {
                    if cand.multiplicative_order(n) == Some(n) {
                        return Ok(cand);
                    }
                }
                Err(Error::NoPrimitiveRoot { order: n })
            }
        }
    }

    /// Parses the canonical element string: a base scalar (embedded), or
    /// `[c0,c1,...]` power-basis coordinates.
    pub fn parse_element(&self, s: &str) -> Result<FieldElement> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('[') {
            let inner = inner
                .strip_suffix(']')
                .ok_or_else(|| Error::Internal(format!("unterminated coordinate list `{s}`")))?;
            let mut coeffs = Vec::new();
            if !inner.trim().is_empty() {
                for part in inner.split(',') {
                    coeffs.push(self.0.base.parse(part)?);
                }
            }
            if coeffs.len() > self.degree() {
                return Err(Error::BadCoefficientLength {
                    got: coeffs.len(),
                    expected: self.degree(),
                });
            }
            coeffs.resize(self.degree(), self.0.base.zero());
            self.element(coeffs)
        } else {
            Ok(self.embed_scalar(self.0.base.parse(s)?))
        }
    }
}

/// An element of a [`Field`], stored as power-basis coordinates.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    coeffs: Vec<BaseScalar>,
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[BaseScalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        let kind = self.field.0.base;
        self.coeffs.iter().all(|c| kind.is_zero(c))
    }

    pub fn is_one(&self) -> bool {
        *self == self.field.one()
    }

    /// The constant coordinate, provided all higher coordinates vanish —
    /// i.e. the element as a member of the base field.
    pub fn as_base(&self) -> Option<FieldElement> {
        let kind = self.field.0.base;
        if self.coeffs[1..].iter().all(|c| kind.is_zero(c)) {
            Some(self.field.base_field().embed_scalar(self.coeffs[0].clone()))
        } else {
            None
        }
    }

    pub fn checked_add(&self, rhs: &FieldElement) -> Result<FieldElement> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch);
        }
        Ok(self + rhs)
    }

    pub fn checked_mul(&self, rhs: &FieldElement) -> Result<FieldElement> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch);
        }
        Ok(self * rhs)
    }

    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let kind = self.field.0.base;
        match &self.field.0.ext {
            None => Ok(FieldElement {
                field: self.field.clone(),
                coeffs: vec![kind.inv(&self.coeffs[0])?],
            }),
            Some(ext) => {
                // Extended Euclid in k[x] against the minimal polynomial.
                let mut r0 = ext.minpoly.clone();
                let mut r1 = poly::trim(&kind, self.coeffs.clone());
                let mut s0: Vec<BaseScalar> = vec![kind.zero()];
                let mut s1: Vec<BaseScalar> = vec![kind.one()];
                while !poly::is_zero_poly(&kind, &r1) {
                    let (q, r) = poly_divmod(&kind, &r0, &r1);
                    let qs = poly::trim(&kind, poly::mul(&kind, &q, &s1));
                    let s_new = poly_sub(&kind, &s0, &qs);
                    r0 = r1;
                    r1 = r;
                    s0 = s1;
                    s1 = poly::trim(&kind, s_new);
                }
                // r0 = gcd (a nonzero constant since minpoly is irreducible).
                let c = kind.inv(&r0[0])?;
                let mut coeffs: Vec<BaseScalar> =
                    s0.iter().map(|x| kind.mul(x, &c)).collect();
                coeffs.resize(ext.degree, kind.zero());
                Ok(FieldElement {
                    field: self.field.clone(),
                    coeffs,
                })
            }
        }
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        let mut acc = self.field.one();
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        acc
    }

    pub fn pow_i64(&self, e: i64) -> Result<FieldElement> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow((-e) as u64))
        }
    }

    /// Exact multiplicative order, searched up to `cap`; `None` if no power
    /// up to the cap reaches 1.
    pub fn multiplicative_order(&self, cap: u64) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let mut acc = self.clone();
        for k in 1..=cap {
            if acc.is_one() {
                return Some(k);
            }
            acc = &acc * self;
        }
        None
    }

    /// Discrete log with respect to a generator of known finite order.
    pub fn dlog(&self, generator: &FieldElement, order: u64) -> Option<u64> {
        let mut acc = self.field.one();
        for e in 0..order {
            if acc == *self {
                return Some(e);
            }
            acc = &acc * generator;
        }
        None
    }
}

fn poly_sub(kind: &BaseKind, a: &[BaseScalar], b: &[BaseScalar]) -> Vec<BaseScalar> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(|| kind.zero());
        let y = b.get(i).cloned().unwrap_or_else(|| kind.zero());
        out.push(kind.sub(&x, &y));
    }
    out
}

fn poly_divmod(kind: &BaseKind, a: &[BaseScalar], b: &[BaseScalar]) -> (Vec<BaseScalar>, Vec<BaseScalar>) {
    let db = poly::degree(kind, &b.to_vec());
    let lead_inv = kind.inv(&b[db]).expect("nonzero divisor");
    let mut r = a.to_vec();
    let mut q = vec![kind.zero(); a.len().saturating_sub(db) + 1];
    loop {
        let dr = poly::degree(kind, &r);
        if (dr == 0 && kind.is_zero(&r[0])) || dr < db {
            break;
        }
        let c = kind.mul(&r[dr], &lead_inv);
        let shift = dr - db;
        q[shift] = kind.add(&q[shift], &c);
        for i in 0..=db {
            let t = kind.mul(&c, &b[i]);
            r[i + shift] = kind.sub(&r[i + shift], &t);
        }
    }
    (poly::trim(kind, q), poly::trim(kind, r))
}

impl std::ops::Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        assert!(self.field == rhs.field, "field mismatch in addition");
        let kind = self.field.0.base;
        FieldElement {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| kind.add(a, b))
                .collect(),
        }
    }
}

impl std::ops::Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        assert!(self.field == rhs.field, "field mismatch in subtraction");
        let kind = self.field.0.base;
        FieldElement {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| kind.sub(a, b))
                .collect(),
        }
    }
}

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        let kind = self.field.0.base;
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| kind.neg(a)).collect(),
        }
    }
}

impl std::ops::Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        assert!(self.field == rhs.field, "field mismatch in multiplication");
        let kind = self.field.0.base;
        match &self.field.0.ext {
            None => FieldElement {
                field: self.field.clone(),
                coeffs: vec![kind.mul(&self.coeffs[0], &rhs.coeffs[0])],
            },
            Some(ext) => {
                let prod = poly::mul(&kind, &self.coeffs, &rhs.coeffs);
                let mut red = poly::rem_monic(&kind, &prod, &ext.minpoly);
                red.resize(ext.degree, kind.zero());
                FieldElement {
                    field: self.field.clone(),
                    coeffs: red,
                }
            }
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = self.field.0.base;
        if self.field.is_extension() {
            let parts: Vec<String> = self.coeffs.iter().map(|c| kind.format(c)).collect();
            write!(f, "[{}]", parts.join(","))
        } else {
            write!(f, "{}", kind.format(&self.coeffs[0]))
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

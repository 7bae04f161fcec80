//! Structural analysis of a [`StructureAlgebra`]: center, radical and
//! semisimplicity, the sandwich-map criterion for central simplicity, and
//! homomorphism checking.
//!
//! The radical comes from the trace bilinear form T(x,y) = tr(L_{xy}) inside
//! its documented validity domain (char 0, or char > dim). In small
//! characteristic it falls back to summing the nilpotent principal ideals of
//! every element of the (small, finite) algebra; beyond that bound the
//! status is reported as indeterminate rather than guessed.

use crate::error::{Error, Result};
use crate::field::{BaseKind, BaseScalar, Field, FieldElement};
use crate::linalg::Matrix;
use crate::report::Status;

use super::{sparse_from_dense, sparse_to_dense, LinearMap, SparseVec, StructureAlgebra};

impl StructureAlgebra {
    /// An exact basis of the center, from the kernel of the commutator
    /// system [x, e_j] = 0 for every basis element.
    pub fn center(&self) -> Vec<SparseVec> {
        let dim = self.dim();
        let field = self.field().clone();
        // Row (j, r): coefficient of e_r in [e_i, e_j], as a function of i.
        let mut rows: Vec<Vec<FieldElement>> = Vec::with_capacity(dim * dim);
        for j in 0..dim {
            let mut dense_rows = vec![vec![field.zero(); dim]; dim];
            for i in 0..dim {
                let ij = self.basis_product(i, j);
                let ji = self.basis_product(j, i);
                for (k, c) in ij {
                    dense_rows[*k][i] = &dense_rows[*k][i] + c;
                }
                for (k, c) in ji {
                    dense_rows[*k][i] = &dense_rows[*k][i] - c;
                }
            }
            rows.extend(dense_rows);
        }
        let m = Matrix::from_rows(&field, rows).expect("rectangular");
        m.kernel_basis()
            .into_iter()
            .map(|v| sparse_from_dense(&v))
            .collect()
    }

    /// Dimension of the center.
    pub fn center_dim(&self) -> usize {
        self.center().len()
    }

    /// Radical and semisimplicity status.
    pub fn semisimplicity(&self) -> SemisimplicityReport {
        let dim = self.dim();
        let char = self.field().characteristic();
        if char == 0 || char as usize > dim {
            let radical = self.trace_form_radical();
            return SemisimplicityReport {
                status: Status::Pass,
                semisimple: radical.is_empty(),
                radical_basis: radical,
                method: "trace_form".into(),
            };
        }
        match self.enumerated_radical() {
            Some(radical) => SemisimplicityReport {
                status: Status::Pass,
                semisimple: radical.is_empty(),
                radical_basis: radical,
                method: "nilpotent_ideal_enumeration".into(),
            },
            None => SemisimplicityReport {
                status: Status::Indeterminate,
                semisimple: false,
                radical_basis: Vec::new(),
                method: "out_of_bounds".into(),
            },
        }
    }

    /// Kernel of the Gram matrix of T(x, y) = tr(L_{xy}).
    fn trace_form_radical(&self) -> Vec<SparseVec> {
        let dim = self.dim();
        let field = self.field().clone();
        let traces = self.basis_traces();
        let mut rows = Vec::with_capacity(dim);
        for i in 0..dim {
            let mut row = vec![field.zero(); dim];
            for j in 0..dim {
                let mut acc = field.zero();
                for (k, c) in self.basis_product(i, j) {
                    acc = &acc + &(c * &traces[*k]);
                }
                row[j] = acc;
            }
            rows.push(row);
        }
        let gram = Matrix::from_rows(&field, rows).expect("square");
        gram.kernel_basis()
            .into_iter()
            .map(|v| sparse_from_dense(&v))
            .collect()
    }

    /// Small-characteristic fallback: the radical is the sum of all
    /// nilpotent principal two-sided ideals; every element of the (finite)
    /// algebra is enumerated. `None` when the search space is too large.
    fn enumerated_radical(&self) -> Option<Vec<SparseVec>> {
        let dim = self.dim();
        let p = match self.field().base_kind() {
            BaseKind::Prime(p) => p,
            BaseKind::Rational => return None,
        };
        if self.field().is_extension() {
            return None;
        }
        if dim > 16 || (p as f64).powi(dim as i32) > 1_048_576.0 {
            return None;
        }
        let field = self.field().clone();
        let mut radical = RowSpace::new(&field, dim);
        let mut coeffs = vec![0u64; dim];
        'elements: loop {
            let dense: Vec<FieldElement> = coeffs
                .iter()
                .map(|c| field.embed_scalar(BaseScalar::Mod(*c)))
                .collect();
            let x = sparse_from_dense(&dense);
            if !x.is_empty() && !radical.contains(&sparse_to_dense(&field, dim, &x)) {
                let ideal = self.principal_ideal(&x);
                if self.is_nilpotent_subspace(&ideal) {
                    for v in ideal.basis() {
                        radical.insert(v.clone());
                    }
                }
            }
            let mut i = 0;
            loop {
                if i == dim {
                    break 'elements;
                }
                coeffs[i] += 1;
                if coeffs[i] < p {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
            }
        }
        Some(
            radical
                .basis()
                .iter()
                .map(|v| sparse_from_dense(v))
                .collect(),
        )
    }

    /// The two-sided ideal generated by x, as a row space.
    fn principal_ideal(&self, x: &SparseVec) -> RowSpace {
        let dim = self.dim();
        let field = self.field().clone();
        let mut space = RowSpace::new(&field, dim);
        space.insert(sparse_to_dense(&field, dim, x));
        loop {
            let mut grew = false;
            let snapshot: Vec<Vec<FieldElement>> = space.basis().to_vec();
            for v in &snapshot {
                let sv = sparse_from_dense(v);
                for i in 0..dim {
                    let e = vec![(i, field.one())];
                    for w in [self.mul(&e, &sv), self.mul(&sv, &e)] {
                        if space.insert(sparse_to_dense(&field, dim, &w)) {
                            grew = true;
                        }
                    }
                }
            }
            if !grew {
                return space;
            }
        }
    }

    /// Whether a subspace (given as a row space) is nilpotent under the
    /// algebra product: its powers must vanish within dim + 1 steps.
    fn is_nilpotent_subspace(&self, space: &RowSpace) -> bool {
        let dim = self.dim();
        let field = self.field().clone();
        let mut current: Vec<Vec<FieldElement>> = space.basis().to_vec();
        for _ in 0..=dim {
            if current.is_empty() {
                return true;
            }
            let mut next = RowSpace::new(&field, dim);
            for v in &current {
                let sv = sparse_from_dense(v);
                for w in space.basis() {
                    let sw = sparse_from_dense(w);
                    let prod = self.mul(&sv, &sw);
                    if !prod.is_empty() {
                        next.insert(sparse_to_dense(&field, dim, &prod));
                    }
                }
            }
            current = next.basis().to_vec();
        }
        current.is_empty()
    }

    /// Brute-force simplicity for tiny finite-field algebras (test oracle):
    /// simple iff every nonzero principal ideal is the whole algebra.
    pub fn is_simple_by_enumeration(&self) -> Option<bool> {
        let dim = self.dim();
        let p = match self.field().base_kind() {
            BaseKind::Prime(p) => p,
            BaseKind::Rational => return None,
        };
        if self.field().is_extension() || (p as f64).powi(dim as i32) > 100_000.0 {
            return None;
        }
        let field = self.field().clone();
        let mut coeffs = vec![0u64; dim];
        loop {
            let dense: Vec<FieldElement> = coeffs
                .iter()
                .map(|c| field.embed_scalar(BaseScalar::Mod(*c)))
                .collect();
            let x = sparse_from_dense(&dense);
            if !x.is_empty() && self.principal_ideal(&x).dim() != dim {
                return Some(false);
            }
            let mut i = 0;
            loop {
                if i == dim {
                    return Some(true);
                }
                coeffs[i] += 1;
                if coeffs[i] < p {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
            }
        }
    }
}

/// Result of the semisimplicity analysis.
#[derive(Debug, Clone)]
pub struct SemisimplicityReport {
    /// Pass when the analysis ran to completion, Indeterminate when outside
    /// both the trace-form validity domain and the enumeration bound.
    pub status: Status,
    pub semisimple: bool,
    pub radical_basis: Vec<SparseVec>,
    pub method: String,
}

/// Result of the central-simplicity check.
#[derive(Debug, Clone)]
pub struct CentralSimplicityReport {
    pub center_dim: usize,
    pub sandwich_rank: usize,
    pub expected_rank: usize,
    pub central_simple: bool,
}

/// Central simplicity over the algebra's own field: the center must be
/// k*1 and the sandwich map A (x) A^op -> End_k(A), a (x) b -> (x -> a x b),
/// must be bijective (exact rank computation).
pub fn is_central_simple(algebra: &StructureAlgebra) -> CentralSimplicityReport {
    let dim = algebra.dim();
    let field = algebra.field().clone();
    let center_dim = algebra.center_dim();
    if center_dim != 1 {
        return CentralSimplicityReport {
            center_dim,
            sandwich_rank: 0,
            expected_rank: dim * dim,
            central_simple: false,
        };
    }
    // Column (i, j): the endomorphism x -> e_i x e_j, flattened row-wise.
    let mut rows: Vec<Vec<FieldElement>> = vec![vec![field.zero(); dim * dim]; dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            let col = i * dim + j;
            for c in 0..dim {
                let ei = vec![(i, field.one())];
                let ec = vec![(c, field.one())];
                let ej = vec![(j, field.one())];
                let img = algebra.mul(&algebra.mul(&ei, &ec), &ej);
                for (r, coeff) in img {
                    rows[r * dim + c][col] = coeff;
                }
            }
        }
    }
    let m = Matrix::from_rows(&field, rows).expect("square");
    let sandwich_rank = m.rank();
    CentralSimplicityReport {
        center_dim,
        sandwich_rank,
        expected_rank: dim * dim,
        central_simple: sandwich_rank == dim * dim,
    }
}

/// Result of checking a linear map for being a (surjective) algebra map.
#[derive(Debug, Clone)]
pub struct HomReport {
    pub unital: bool,
    pub multiplicative: bool,
    pub surjective: bool,
    pub first_failure: Option<(String, String)>,
}

impl HomReport {
    pub fn is_homomorphism(&self) -> bool {
        self.unital && self.multiplicative
    }
}

/// Checks phi(1) = 1, phi(e_i e_j) = phi(e_i) phi(e_j) on every basis pair,
/// and surjectivity by exact rank.
pub fn hom_check(
    map: &LinearMap,
    domain: &StructureAlgebra,
    codomain: &StructureAlgebra,
) -> Result<HomReport> {
    if map.domain_dim() != domain.dim() || map.codomain_dim() != codomain.dim() {
        return Err(Error::MapDimensionMismatch(format!(
            "map is {}x{}, algebras are {} and {}",
            map.domain_dim(),
            map.codomain_dim(),
            domain.dim(),
            codomain.dim()
        )));
    }
    let unital = map.apply(domain.unit()) == *codomain.unit();
    let mut multiplicative = true;
    let mut first_failure = None;
    'outer: for i in 0..domain.dim() {
        for j in 0..domain.dim() {
            let lhs = map.apply(domain.basis_product(i, j));
            let rhs = codomain.mul(&map.apply(&vec![(i, domain.field().one())]),
                                   &map.apply(&vec![(j, domain.field().one())]));
            if lhs != rhs {
                multiplicative = false;
                first_failure = Some((domain.label(i).to_string(), domain.label(j).to_string()));
                break 'outer;
            }
        }
    }
    let surjective = map.rank(domain.field()) == codomain.dim();
    Ok(HomReport {
        unital,
        multiplicative,
        surjective,
        first_failure,
    })
}

/// A subspace maintained in reduced row-echelon form for exact membership
/// and growth tests.
pub struct RowSpace {
    dim: usize,
    rows: Vec<Vec<FieldElement>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(_field: &Field, dim: usize) -> RowSpace {
        RowSpace {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<FieldElement>] {
        &self.rows
    }

    fn reduce(&self, mut v: Vec<FieldElement>) -> (Vec<FieldElement>, Option<usize>) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for k in 0..self.dim {
                v[k] = &v[k] - &(&c * &row[k]);
            }
        }
        let pivot = (0..self.dim).find(|&k| !v[k].is_zero());
        (v, pivot)
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        let (_, pivot) = self.reduce(v.to_vec());
        pivot.is_none()
    }

    /// Inserts a vector; returns true when the dimension grew.
    pub fn insert(&mut self, v: Vec<FieldElement>) -> bool {
        let (mut v, pivot) = self.reduce(v);
        let Some(p) = pivot else { return false };
        let inv = v[p].inv().expect("pivot nonzero");
        for k in 0..self.dim {
            v[k] = &v[k] * &inv;
        }
        // Back-substitute into existing rows to stay in rref.
        for (row, &rp) in self.rows.iter_mut().zip(&self.pivots) {
            let _ = rp;
            if row[p].is_zero() {
                continue;
            }
            let c = row[p].clone();
            for k in 0..self.dim {
                row[k] = &row[k] - &(&c * &v[k]);
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }
}

//! Construction of the invariant spaces V_f (all multilinear invariants,
//! built by Reynolds-averaging monomials) and W_f (typical invariants,
//! spanned by permutation products), their dimension checks, the
//! change-of-basis tables between them, and basis completion when W_f is a
//! proper subspace.

use crate::error::{Error, Result};
use crate::forms::{average_monomial, coeff_len, expand_typical, CoeffVector, MonomialIndex, Permutation};
use crate::group::GroupTable;
use crate::linalg::SpanBuilder;
use crate::linalg::SpanSolver;
use crate::scalar::GaussianRational;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{integer::binomial, One, ToPrimitive, Zero};
use rayon::prelude::*;
use std::collections::HashSet;
use std::fmt;

/// Closed form for dim V_f: 2^(f-2) + 2^(2f-3)/3 + 1/3, evaluated exactly
/// in rationals. Panics if the result is not an integer, which cannot happen
/// for f ≥ 1.
pub fn dim_v_formula(f: usize) -> usize {
    assert!(f >= 1, "degree must be at least 1");
    let pow2 = |e: u32| BigRational::from_integer(BigInt::from(2).pow(e));
    let four = BigRational::from_integer(BigInt::from(4));
    let eight = BigRational::from_integer(BigInt::from(8));
    let three = BigRational::from_integer(BigInt::from(3));
    // 2^(f-2) = 2^f/4 and 2^(2f-3) = 4^f/8, valid for all f ≥ 1
    let value = pow2(f as u32) / four
        + pow2(2 * f as u32) / (eight * &three)
        + BigRational::new(BigInt::one(), BigInt::from(3));
    assert!(value.is_integer(), "dimension formula must be integral");
    value
        .to_integer()
        .to_usize()
        .expect("dimension fits in usize")
}

/// The f-th Catalan number (1/(f+1))·C(2f, f), the dimension of W_f.
pub fn catalan(f: usize) -> usize {
    assert!(f >= 1, "degree must be at least 1");
    let binom = binomial(BigInt::from(2 * f), BigInt::from(f));
    let (q, r) = num::Integer::div_rem(&binom, &BigInt::from(f + 1));
    assert!(r.is_zero(), "Catalan division is exact");
    q.to_usize().expect("Catalan number fits in usize")
}

/// Which invariant space a basis spans.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpaceTag {
    V,
    W,
}

impl fmt::Display for SpaceTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceTag::V => write!(f, "V"),
            SpaceTag::W => write!(f, "W"),
        }
    }
}

/// What generated each basis vector: the averaged monomial for V bases, the
/// permutation β of the typical invariant for W bases.
#[derive(Clone, Debug)]
pub enum BasisProvenance {
    Monomials(Vec<MonomialIndex>),
    Permutations(Vec<Permutation>),
}

impl BasisProvenance {
    pub fn labels(&self) -> Vec<String> {
        match self {
            BasisProvenance::Monomials(ms) => ms.iter().map(|m| m.to_string()).collect(),
            BasisProvenance::Permutations(ps) => ps.iter().map(|p| p.to_string()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            BasisProvenance::Monomials(ms) => ms.len(),
            BasisProvenance::Permutations(ps) => ps.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// An ordered independent basis of one invariant space, with the provenance
/// of every vector.
#[derive(Clone, Debug)]
pub struct BasisReport {
    pub f: usize,
    pub space: SpaceTag,
    pub vectors: Vec<CoeffVector>,
    pub provenance: BasisProvenance,
    pub dimension: usize,
}

impl BasisReport {
    pub fn monomials(&self) -> Option<&[MonomialIndex]> {
        match &self.provenance {
            BasisProvenance::Monomials(ms) => Some(ms),
            BasisProvenance::Permutations(_) => None,
        }
    }

    pub fn permutations(&self) -> Option<&[Permutation]> {
        match &self.provenance {
            BasisProvenance::Permutations(ps) => Some(ps),
            BasisProvenance::Monomials(_) => None,
        }
    }

    pub fn labels(&self) -> Vec<String> {
        self.provenance.labels()
    }
}

/// How N_i expands over the V basis, whether every coefficient is an even
/// integer, and which extra averaged monomials complete W to V when the
/// dimensions differ.
#[derive(Clone, Debug)]
pub struct RelationReport {
    pub f: usize,
    pub v_basis: BasisReport,
    pub w_basis: BasisReport,
    pub matrix: Vec<Vec<GaussianRational>>,
    pub all_even: bool,
    pub extra_invariants: Vec<MonomialIndex>,
}

// Averaging distinct monomial columns is embarrassingly parallel and exact
// arithmetic makes the reduction order irrelevant, so chunked rayon maps
// stay bitwise identical to a sequential scan.
const AVERAGE_CHUNK: usize = 32;

/// Builds the V_f basis: averages monomials (forced_order first, then every
/// remaining index in encoding order) and keeps the greedy independent
/// subset. The scan stops once the rank reaches the closed-form dimension;
/// a final shortfall is reported as [`Error::DimensionMismatch`].
pub fn build_v_basis(
    f: usize,
    g: &GroupTable,
    forced_order: Option<&[MonomialIndex]>,
) -> Result<BasisReport> {
    let expected = dim_v_formula(f);
    let mut scan: Vec<MonomialIndex> = Vec::new();
    let mut seen = HashSet::new();
    if let Some(forced) = forced_order {
        for m in forced {
            if m.degree() != f {
                return Err(Error::InvalidMonomial(format!(
                    "forced monomial {m} has degree {}, want {f}",
                    m.degree()
                )));
            }
            if seen.insert(m.encode()) {
                scan.push(m.clone());
            }
        }
    }
    for pos in 0..coeff_len(f) {
        if !seen.contains(&pos) {
            scan.push(MonomialIndex::decode(f, pos));
        }
    }

    let mut builder = SpanBuilder::new(coeff_len(f));
    let mut vectors = Vec::with_capacity(expected);
    let mut kept = Vec::with_capacity(expected);
    'scan: for chunk in scan.chunks(AVERAGE_CHUNK) {
        let averaged: Vec<CoeffVector> = chunk
            .par_iter()
            .map(|m| average_monomial(m, g))
            .collect();
        for (m, vector) in chunk.iter().zip(averaged) {
            if builder.offer(vector.coeffs()) {
                kept.push(m.clone());
                vectors.push(vector);
            }
            if builder.rank() == expected {
                break 'scan;
            }
        }
    }

    if builder.rank() != expected {
        return Err(Error::DimensionMismatch {
            computed: builder.rank(),
            expected,
        });
    }
    Ok(BasisReport {
        f,
        space: SpaceTag::V,
        vectors,
        provenance: BasisProvenance::Monomials(kept),
        dimension: expected,
    })
}

/// Builds the W_f basis: expands the typical invariant for every β ∈ S_f in
/// lexicographic order and keeps the greedy independent subset, which must
/// have Catalan(f) elements.
pub fn build_w_basis(f: usize) -> Result<BasisReport> {
    let expected = catalan(f);
    let mut builder = SpanBuilder::new(coeff_len(f));
    let mut vectors = Vec::with_capacity(expected);
    let mut kept = Vec::with_capacity(expected);
    for beta in Permutation::all(f) {
        let vector = expand_typical(&beta);
        if builder.offer(vector.coeffs()) {
            kept.push(beta);
            vectors.push(vector);
        }
        if builder.rank() == expected {
            break;
        }
    }
    if builder.rank() != expected {
        return Err(Error::DimensionMismatch {
            computed: builder.rank(),
            expected,
        });
    }
    Ok(BasisReport {
        f,
        space: SpaceTag::W,
        vectors,
        provenance: BasisProvenance::Permutations(kept),
        dimension: expected,
    })
}

/// Expresses every W-basis vector N_i over the V basis, records whether all
/// coefficients are even integers, and — when dim W < dim V — the greedy
/// monomial completion of W to V.
///
/// A [`Error::NotInSpan`] here would falsify W_f ⊆ V_f and is propagated as
/// a fatal inconsistency.
pub fn relate(g: &GroupTable, v_basis: BasisReport, w_basis: BasisReport) -> Result<RelationReport> {
    assert_eq!(v_basis.f, w_basis.f, "bases must share one degree");
    let solver = SpanSolver::new(&v_basis.vectors)?;
    let matrix: Vec<Vec<GaussianRational>> = w_basis
        .vectors
        .iter()
        .map(|n| solver.solve(n))
        .collect::<Result<_>>()?;
    let all_even = matrix
        .iter()
        .flatten()
        .all(GaussianRational::is_even_integer);
    let extra_invariants = if w_basis.dimension < v_basis.dimension {
        complete_basis(g, &v_basis, &w_basis, None)?
    } else {
        Vec::new()
    };
    Ok(RelationReport {
        f: v_basis.f,
        v_basis,
        w_basis,
        matrix,
        all_even,
        extra_invariants,
    })
}

/// Finds averaged monomials whose vectors extend the W basis to the full
/// rank of V.
///
/// With `candidates` given, that exact set is validated (every candidate is
/// offered; the final rank must reach dim V). Otherwise the V basis's own
/// provenance monomials are scanned greedily until the rank is reached.
pub fn complete_basis(
    g: &GroupTable,
    v_basis: &BasisReport,
    w_basis: &BasisReport,
    candidates: Option<&[MonomialIndex]>,
) -> Result<Vec<MonomialIndex>> {
    assert!(
        w_basis.dimension <= v_basis.dimension,
        "W must not exceed V"
    );
    let target = v_basis.dimension;
    let mut builder = SpanBuilder::new(coeff_len(w_basis.f));
    for vector in &w_basis.vectors {
        let grew = builder.offer(vector.coeffs());
        debug_assert!(grew, "basis vectors are independent");
    }

    let v_monomials = v_basis
        .monomials()
        .expect("V basis provenance is monomial-labeled");
    let pool: &[MonomialIndex] = candidates.unwrap_or(v_monomials);
    let validate_all = candidates.is_some();
    let by_position: std::collections::HashMap<usize, usize> = v_monomials
        .iter()
        .enumerate()
        .map(|(i, m)| (m.encode(), i))
        .collect();

    let mut accepted = Vec::new();
    for m in pool {
        if !validate_all && builder.rank() == target {
            break;
        }
        if m.degree() != w_basis.f {
            return Err(Error::InvalidMonomial(format!(
                "candidate {m} has degree {}, want {}",
                m.degree(),
                w_basis.f
            )));
        }
        // reuse the vector when the candidate is one of V's own basis monomials
        let vector = match by_position.get(&m.encode()) {
            Some(&i) => v_basis.vectors[i].clone(),
            None => average_monomial(m, g),
        };
        if builder.offer(vector.coeffs()) {
            accepted.push(m.clone());
        }
    }
    if builder.rank() != target {
        return Err(Error::InsufficientCandidates {
            reached: builder.rank(),
            needed: target,
        });
    }
    Ok(accepted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference;

    fn int_row(row: &[GaussianRational]) -> Vec<i64> {
        row.iter()
            .map(|c| {
                assert!(c.im().is_zero() && c.re().is_integer(), "non-integer {c}");
                c.re().to_integer().to_i64().unwrap()
            })
            .collect()
    }

    #[test]
    fn dimension_formulas() {
        let v: Vec<usize> = (1..=5).map(dim_v_formula).collect();
        assert_eq!(v, vec![1, 2, 5, 15, 51]);
        let w: Vec<usize> = (1..=5).map(catalan).collect();
        assert_eq!(w, vec![1, 2, 5, 14, 42]);
        for f in 6..=10 {
            // the closed form stays integral well past the supported range
            let _ = dim_v_formula(f);
        }
        assert_eq!(catalan(10), 16796);
    }

    #[test]
    fn degree_one_pipeline() {
        let g = GroupTable::shephard_todd_8();
        let v = build_v_basis(1, &g, None).unwrap();
        assert_eq!(v.dimension, 1);
        assert_eq!(v.labels(), vec!["1,1"]);
        let w = build_w_basis(1).unwrap();
        assert_eq!(w.dimension, 1);
        assert_eq!(w.labels(), vec!["1"]);
        let rel = relate(&g, v, w).unwrap();
        assert_eq!(rel.matrix.len(), 1);
        assert_eq!(int_row(&rel.matrix[0]), vec![2]);
        assert!(rel.all_even);
        assert!(rel.extra_invariants.is_empty());
    }

    #[test]
    fn degree_two_default_and_reference_orders() {
        let g = GroupTable::shephard_todd_8();
        let default_v = build_v_basis(2, &g, None).unwrap();
        assert_eq!(default_v.labels(), vec!["11,11", "12,12"]);
        let w = build_w_basis(2).unwrap();
        assert_eq!(w.labels(), vec!["12", "21"]);

        let rel = relate(&g, default_v, w.clone()).unwrap();
        assert_eq!(int_row(&rel.matrix[0]), vec![2, 2]);
        assert_eq!(int_row(&rel.matrix[1]), vec![4, -2]);
        assert!(rel.all_even);

        // over the reference order the table takes its canonical form
        let forced = reference::v_basis_order(2).unwrap();
        let ref_v = build_v_basis(2, &g, Some(&forced)).unwrap();
        assert_eq!(ref_v.labels(), vec!["12,12", "11,11"]);
        let rel = relate(&g, ref_v, w).unwrap();
        assert_eq!(int_row(&rel.matrix[0]), vec![2, 2]);
        assert_eq!(int_row(&rel.matrix[1]), vec![-2, 4]);
        assert!(rel.all_even);
    }

    #[test]
    fn degree_three_reference_table() {
        let g = GroupTable::shephard_todd_8();
        let forced = reference::v_basis_order(3).unwrap();
        let v = build_v_basis(3, &g, Some(&forced)).unwrap();
        assert_eq!(
            v.labels(),
            vec!["121,121", "121,112", "112,121", "112,112", "111,111"]
        );
        let w = build_w_basis(3).unwrap();
        assert_eq!(w.labels(), vec!["123", "132", "213", "231", "312"]);
        let rel = relate(&g, v, w).unwrap();
        assert_eq!(int_row(&rel.matrix[4]), vec![-2, -4, 2, -2, 6]);
        assert!(rel.all_even);
        assert!(rel.extra_invariants.is_empty());
    }

    #[test]
    fn averaged_columns_have_theorem_rank() {
        use crate::linalg::select_independent;
        let g = GroupTable::shephard_todd_8();
        let averaged_all = |f: usize| -> Vec<CoeffVector> {
            (0..coeff_len(f))
                .map(|pos| average_monomial(&MonomialIndex::decode(f, pos), &g))
                .collect()
        };
        let (kept, rank) = select_independent(&averaged_all(1));
        assert_eq!((kept, rank), (vec![0], 1));
        let (_, rank) = select_independent(&averaged_all(3));
        assert_eq!(rank, 5);
    }

    #[test]
    fn spaces_coincide_at_degree_three() {
        let g = GroupTable::shephard_todd_8();
        let v = build_v_basis(3, &g, None).unwrap();
        let w = build_w_basis(3).unwrap();
        // mutual containment: every V vector solves over W and vice versa
        let w_solver = SpanSolver::new(&w.vectors).unwrap();
        for vector in &v.vectors {
            w_solver.solve(vector).unwrap();
        }
        let v_solver = SpanSolver::new(&v.vectors).unwrap();
        for vector in &w.vectors {
            v_solver.solve(vector).unwrap();
        }
        assert!(complete_basis(&g, &v, &w, None).unwrap().is_empty());
    }

    #[test]
    fn forced_order_rejects_wrong_degree() {
        let g = GroupTable::shephard_todd_8();
        let forced = reference::v_basis_order(2).unwrap();
        assert!(matches!(
            build_v_basis(3, &g, Some(&forced)),
            Err(Error::InvalidMonomial(_))
        ));
    }
}

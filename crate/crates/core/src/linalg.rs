//! Exact dense linear algebra over Q(i): reduced row echelon form, greedy
//! independent-subset selection, and linear solves against a fixed basis.
//!
//! Pivoting is strictly first-nonzero in column order with rows scanned top
//! to bottom — no magnitude pivoting is needed in exact arithmetic, and the
//! fixed rule makes every downstream basis and table reproducible.

use crate::error::{Error, Result};
use crate::forms::CoeffVector;
use crate::scalar::GaussianRational;

/// A dense rows×cols matrix over Q(i) with optional opaque row labels that
/// follow their rows through exchanges.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussianRational>,
    row_labels: Option<Vec<String>>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<GaussianRational>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length must be rows*cols");
        ExactMatrix {
            rows,
            cols,
            data,
            row_labels: None,
        }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self::new(rows, cols, vec![GaussianRational::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = GaussianRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.rows, "one label per row");
        self.row_labels = Some(labels);
        self
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &GaussianRational {
        &self.data[r * self.cols + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut GaussianRational {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[GaussianRational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_labels(&self) -> Option<&[String]> {
        self.row_labels.as_deref()
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *out.get_mut(c, r) = self.get(r, c).clone();
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
        if let Some(labels) = &mut self.row_labels {
            labels.swap(a, b);
        }
    }

    /// row[r] *= s
    fn scale_row(&mut self, r: usize, s: &GaussianRational) {
        for c in 0..self.cols {
            let e = self.get_mut(r, c);
            if !e.is_zero() {
                *e = &*e * s;
            }
        }
    }

    /// row[dst] -= factor · row[src]
    fn sub_scaled_row(&mut self, dst: usize, src: usize, factor: &GaussianRational) {
        if factor.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let v = self.get(src, c);
            if v.is_zero() {
                continue;
            }
            let delta = factor * v;
            *self.get_mut(dst, c) -= &delta;
        }
    }
}

/// Result of [`rref`]: the echelon matrix, its pivot columns and rank, and
/// the row permutation that was applied (`row_permutation[i]` is the input
/// index of the row now at position `i`).
#[derive(Clone, Debug)]
pub struct RrefOutcome {
    pub matrix: ExactMatrix,
    pub pivot_columns: Vec<usize>,
    pub rank: usize,
    pub row_permutation: Vec<usize>,
}

/// Reduced row echelon form with exact arithmetic.
pub fn rref(m: &ExactMatrix) -> RrefOutcome {
    let mut work = m.clone();
    let mut permutation: Vec<usize> = (0..work.rows).collect();
    let mut pivot_columns = Vec::new();
    let mut next_row = 0;
    for col in 0..work.cols {
        let Some(pivot_row) = (next_row..work.rows).find(|&r| !work.get(r, col).is_zero()) else {
            continue;
        };
        work.swap_rows(next_row, pivot_row);
        permutation.swap(next_row, pivot_row);
        let inv = work
            .get(next_row, col)
            .inv()
            .expect("pivot entry is nonzero");
        work.scale_row(next_row, &inv);
        for r in 0..work.rows {
            if r != next_row {
                let factor = work.get(r, col).clone();
                work.sub_scaled_row(r, next_row, &factor);
            }
        }
        pivot_columns.push(col);
        next_row += 1;
        if next_row == work.rows {
            break;
        }
    }
    RrefOutcome {
        matrix: work,
        rank: pivot_columns.len(),
        pivot_columns,
        row_permutation: permutation,
    }
}

/// Incrementally maintained reduced row space: rows offered in order, each
/// kept iff it is independent of the rows kept before it. The stored pivot
/// rows are mutually reduced, so membership reduction is a single pass.
#[derive(Clone, Debug, Default)]
pub struct SpanBuilder {
    width: usize,
    // (pivot column, reduced row), kept sorted by pivot column
    pivots: Vec<(usize, Vec<GaussianRational>)>,
}

impl SpanBuilder {
    pub fn new(width: usize) -> Self {
        SpanBuilder {
            width,
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the kept pivot rows in place.
    pub fn reduce(&self, row: &mut [GaussianRational]) {
        assert_eq!(row.len(), self.width);
        for (pc, prow) in &self.pivots {
            let factor = row[*pc].clone();
            if factor.is_zero() {
                continue;
            }
            for (dst, src) in row.iter_mut().zip(prow) {
                if !src.is_zero() {
                    *dst -= &(&factor * src);
                }
            }
        }
    }

    /// Offers a row; keeps it iff it is not in the span of the rows kept so
    /// far. Returns true when the row was kept (rank grew by one).
    pub fn offer(&mut self, row: &[GaussianRational]) -> bool {
        let mut reduced = row.to_vec();
        self.reduce(&mut reduced);
        let Some(pc) = reduced.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = reduced[pc].inv().expect("leading entry is nonzero");
        for c in reduced.iter_mut() {
            if !c.is_zero() {
                *c = &*c * &inv;
            }
        }
        // keep existing pivot rows reduced against the new one
        for (_, prow) in &mut self.pivots {
            let factor = prow[pc].clone();
            if factor.is_zero() {
                continue;
            }
            for (dst, src) in prow.iter_mut().zip(&reduced) {
                if !src.is_zero() {
                    *dst -= &(&factor * src);
                }
            }
        }
        let at = self.pivots.partition_point(|(c, _)| *c < pc);
        self.pivots.insert(at, (pc, reduced));
        true
    }

    pub fn contains(&self, row: &[GaussianRational]) -> bool {
        let mut reduced = row.to_vec();
        self.reduce(&mut reduced);
        reduced.iter().all(GaussianRational::is_zero)
    }
}

/// Greedy scan in the given order: a vector is kept iff it is not in the
/// span of the previously kept ones. Returns the kept indices and the rank.
pub fn select_independent(rows: &[CoeffVector]) -> (Vec<usize>, usize) {
    let Some(first) = rows.first() else {
        return (Vec::new(), 0);
    };
    assert!(
        rows.iter().all(|r| r.degree() == first.degree()),
        "all vectors must share one degree"
    );
    let mut builder = SpanBuilder::new(first.len());
    let mut kept = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        if builder.offer(row.coeffs()) {
            kept.push(i);
        }
    }
    let rank = builder.rank();
    (kept, rank)
}

/// Factorization of an independent basis for repeated span solves.
///
/// Row-reduces the basis once while tracking the applied row operations, so
/// each [`solve`](Self::solve) is a single reduction pass plus an exact
/// re-substitution check.
pub struct SpanSolver {
    basis: Vec<CoeffVector>,
    // reduced rows of the basis matrix (RREF), each with its pivot column
    reduced: Vec<(usize, Vec<GaussianRational>)>,
    // transform[j] expresses reduced row j over the original basis rows
    transform: Vec<Vec<GaussianRational>>,
}

impl SpanSolver {
    /// Errors with [`Error::DependentBasis`] if the vectors are linearly
    /// dependent.
    pub fn new(basis: &[CoeffVector]) -> Result<Self> {
        let m = basis.len();
        assert!(m > 0, "basis must be nonempty");
        let width = basis[0].len();
        assert!(basis.iter().all(|v| v.len() == width));
        let mut reduced: Vec<(usize, Vec<GaussianRational>)> = Vec::with_capacity(m);
        let mut transform: Vec<Vec<GaussianRational>> = Vec::with_capacity(m);
        for (i, vector) in basis.iter().enumerate() {
            let mut row = vector.coeffs().to_vec();
            let mut ops = vec![GaussianRational::zero(); m];
            ops[i] = GaussianRational::one();
            for ((pc, prow), pops) in reduced.iter().zip(&transform) {
                let factor = row[*pc].clone();
                if factor.is_zero() {
                    continue;
                }
                for (dst, src) in row.iter_mut().zip(prow) {
                    if !src.is_zero() {
                        *dst -= &(&factor * src);
                    }
                }
                for (dst, src) in ops.iter_mut().zip(pops) {
                    if !src.is_zero() {
                        *dst -= &(&factor * src);
                    }
                }
            }
            let Some(pc) = row.iter().position(|c| !c.is_zero()) else {
                return Err(Error::DependentBasis);
            };
            let inv = row[pc].inv().expect("leading entry is nonzero");
            for c in row.iter_mut().chain(ops.iter_mut()) {
                if !c.is_zero() {
                    *c = &*c * &inv;
                }
            }
            for ((opc, prow), pops) in reduced.iter_mut().zip(transform.iter_mut()) {
                let _ = opc;
                let factor = prow[pc].clone();
                if factor.is_zero() {
                    continue;
                }
                for (dst, src) in prow.iter_mut().zip(&row) {
                    if !src.is_zero() {
                        *dst -= &(&factor * src);
                    }
                }
                for (dst, src) in pops.iter_mut().zip(&ops) {
                    if !src.is_zero() {
                        *dst -= &(&factor * src);
                    }
                }
            }
            reduced.push((pc, row));
            transform.push(ops);
        }
        Ok(SpanSolver {
            basis: basis.to_vec(),
            reduced,
            transform,
        })
    }

    /// Unique coefficients c with Σ c_j·basis_j = target, verified by exact
    /// re-substitution. Errors with [`Error::NotInSpan`] if no such c exists.
    pub fn solve(&self, target: &CoeffVector) -> Result<Vec<GaussianRational>> {
        let width = self.basis[0].len();
        assert_eq!(target.len(), width);
        let m = self.basis.len();
        // coordinates over the reduced rows: read off at the pivot columns
        let coords: Vec<GaussianRational> = self
            .reduced
            .iter()
            .map(|(pc, _)| target.coeff(*pc).clone())
            .collect();
        // residual check: target - Σ coords_j · reduced_j must vanish
        let mut residual = target.coeffs().to_vec();
        for (coord, (_, prow)) in coords.iter().zip(&self.reduced) {
            if coord.is_zero() {
                continue;
            }
            for (dst, src) in residual.iter_mut().zip(prow) {
                if !src.is_zero() {
                    *dst -= &(coord * src);
                }
            }
        }
        if residual.iter().any(|c| !c.is_zero()) {
            return Err(Error::NotInSpan);
        }
        // pull back through the recorded row operations
        let mut coefficients = vec![GaussianRational::zero(); m];
        for (coord, ops) in coords.iter().zip(&self.transform) {
            if coord.is_zero() {
                continue;
            }
            for (dst, src) in coefficients.iter_mut().zip(ops) {
                if !src.is_zero() {
                    *dst += &(coord * src);
                }
            }
        }
        // exact re-substitution against the original basis
        let mut check = target.coeffs().to_vec();
        for (c, vector) in coefficients.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (dst, src) in check.iter_mut().zip(vector.coeffs()) {
                if !src.is_zero() {
                    *dst -= &(c * src);
                }
            }
        }
        assert!(
            check.iter().all(GaussianRational::is_zero),
            "re-substitution failed"
        );
        Ok(coefficients)
    }
}

/// One-shot convenience over [`SpanSolver`].
pub fn solve_in_span(
    basis: &[CoeffVector],
    target: &CoeffVector,
) -> Result<Vec<GaussianRational>> {
    SpanSolver::new(basis)?.solve(target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gr(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn rref_identity_and_zero() {
        let out = rref(&ExactMatrix::identity(3));
        assert_eq!(out.rank, 3);
        assert_eq!(out.pivot_columns, vec![0, 1, 2]);
        assert_eq!(out.matrix, ExactMatrix::identity(3));
        let out = rref(&ExactMatrix::zero(2, 4));
        assert_eq!(out.rank, 0);
        assert!(out.pivot_columns.is_empty());
    }

    #[test]
    fn rref_tracks_row_permutation_and_labels() {
        let m = ExactMatrix::from_rows(vec![
            vec![gr(0), gr(0), gr(1)],
            vec![gr(2), gr(0), gr(0)],
            vec![gr(0), gr(3), gr(0)],
        ])
        .with_labels(vec!["a".into(), "b".into(), "c".into()]);
        let out = rref(&m);
        assert_eq!(out.rank, 3);
        assert_eq!(out.row_permutation, vec![1, 2, 0]);
        assert_eq!(
            out.matrix.row_labels().unwrap(),
            &["b".to_string(), "c".to_string(), "a".to_string()]
        );
        assert_eq!(out.matrix, ExactMatrix::identity(3).with_labels(vec![
            "b".into(),
            "c".into(),
            "a".into()
        ]));
    }

    #[test]
    fn rref_typical_rows_have_rank_two() {
        use crate::forms::{expand_typical, Permutation};
        let n1 = expand_typical(&Permutation::identity(2));
        let n2 = expand_typical(&Permutation::from_one_based(&[2, 1]).unwrap());
        // restricted to the union of their nonzero columns
        let cols: Vec<usize> = vec![0, 5, 6, 9, 10, 15];
        let restricted = ExactMatrix::from_rows(
            [&n1, &n2]
                .iter()
                .map(|v| cols.iter().map(|&c| v.coeff(c).clone()).collect())
                .collect(),
        );
        assert_eq!(rref(&restricted).rank, 2);
        let full = ExactMatrix::from_rows(vec![
            n1.coeffs().to_vec(),
            n2.coeffs().to_vec(),
        ]);
        assert_eq!(rref(&full).rank, 2);
    }

    #[test]
    fn select_independent_drops_duplicates() {
        let v = CoeffVector::unit(1, 2);
        let (kept, rank) = select_independent(&[v.clone(), v]);
        assert_eq!(kept, vec![0]);
        assert_eq!(rank, 1);
    }

    #[test]
    fn select_independent_matches_rref_rank() {
        let rows = vec![
            CoeffVector::from_coeffs(1, vec![gr(1), gr(2), gr(0), gr(1)]),
            CoeffVector::from_coeffs(1, vec![gr(2), gr(4), gr(0), gr(2)]),
            CoeffVector::from_coeffs(1, vec![gr(0), gr(1), gr(1), gr(0)]),
            CoeffVector::from_coeffs(1, vec![gr(1), gr(3), gr(1), gr(1)]),
        ];
        let (kept, rank) = select_independent(&rows);
        assert_eq!(kept, vec![0, 2]);
        let stacked = ExactMatrix::from_rows(rows.iter().map(|r| r.coeffs().to_vec()).collect());
        assert_eq!(rank, rref(&stacked).rank);
    }

    #[test]
    fn solve_in_span_basics() {
        let v = CoeffVector::from_coeffs(1, vec![gr(1), gr(0), gr(2), gr(0)]);
        assert_eq!(
            solve_in_span(std::slice::from_ref(&v), &v).unwrap(),
            vec![gr(1)]
        );

        let w = CoeffVector::unit(1, 1);
        assert!(matches!(
            solve_in_span(std::slice::from_ref(&v), &w),
            Err(Error::NotInSpan)
        ));

        let doubled = v.scaled(&gr(2));
        assert!(matches!(
            SpanSolver::new(&[v, doubled]),
            Err(Error::DependentBasis)
        ));
    }

    #[test]
    fn solve_recovers_mixed_coefficients() {
        let b1 = CoeffVector::from_coeffs(1, vec![gr(1), gr(1), gr(0), gr(0)]);
        let b2 = CoeffVector::from_coeffs(1, vec![gr(0), gr(1), gr(1), gr(0)]);
        let b3 = CoeffVector::from_coeffs(1, vec![gr(0), gr(0), gr(1), gr(1)]);
        let c = [
            GaussianRational::from_parts(2, 3, 1, 1),
            GaussianRational::from_parts(-1, 2, 0, 1),
            GaussianRational::i(),
        ];
        let mut target = CoeffVector::zero(1);
        for (coef, base) in c.iter().zip([&b1, &b2, &b3]) {
            target.add_assign(&base.scaled(coef));
        }
        let solved = solve_in_span(&[b1, b2, b3], &target).unwrap();
        assert_eq!(solved, c.to_vec());
    }

    prop_compose! {
        fn arb_matrix()(rows in 1usize..5, cols in 1usize..5)
            (entries in proptest::collection::vec(-4i64..=4, rows * cols),
             rows in Just(rows), cols in Just(cols))
            -> ExactMatrix
        {
            ExactMatrix::new(rows, cols, entries.into_iter().map(gr).collect())
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn rref_is_idempotent(m in arb_matrix()) {
            let once = rref(&m);
            let twice = rref(&once.matrix);
            prop_assert_eq!(&once.matrix, &twice.matrix);
            prop_assert_eq!(once.rank, twice.rank);
        }

        #[test]
        fn rank_equals_transpose_rank(m in arb_matrix()) {
            prop_assert_eq!(rref(&m).rank, rref(&m.transpose()).rank);
        }
    }
}

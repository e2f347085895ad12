//! 2×2 matrices over Q(i) and finite matrix groups built by closure.
//!
//! The group of interest is No. 8 in the Shephard–Todd classification of
//! unitary reflection groups: the order-96 subgroup of GL(2, C) generated by
//! `T = ((1+i)/2)·[[1,1],[1,-1]]` and `D = diag(1, i)`.

use crate::error::{Error, Result};
use crate::scalar::GaussianRational;
use std::collections::HashMap;

/// Default exploration bound for [`GroupTable::closure`]. An order-96 group
/// closes far below this; blowing the cap signals bad generator data.
pub const DEFAULT_CLOSURE_CAP: usize = 1000;

/// A 2×2 matrix over Q(i), stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2 {
    entries: [[GaussianRational; 2]; 2],
}

impl Mat2 {
    pub fn new(entries: [[GaussianRational; 2]; 2]) -> Self {
        Mat2 { entries }
    }

    pub fn identity() -> Self {
        let one = GaussianRational::one;
        let zero = GaussianRational::zero;
        Mat2::new([[one(), zero()], [zero(), one()]])
    }

    /// Entry at (row, col), zero-based.
    pub fn entry(&self, row: usize, col: usize) -> &GaussianRational {
        &self.entries[row][col]
    }

    pub fn det(&self) -> GaussianRational {
        &(self.entry(0, 0) * self.entry(1, 1)) - &(self.entry(0, 1) * self.entry(1, 0))
    }

    /// Exact matrix product `self · rhs`.
    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        let mut out = [[GaussianRational::zero(), GaussianRational::zero()],
                       [GaussianRational::zero(), GaussianRational::zero()]];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, e) in row.iter_mut().enumerate() {
                *e = &(self.entry(r, 0) * rhs.entry(0, c))
                    + &(self.entry(r, 1) * rhs.entry(1, c));
            }
        }
        Mat2::new(out)
    }

    /// Exact inverse via adjugate over determinant.
    pub fn inv(&self) -> Result<Mat2> {
        let det = self.det();
        if det.is_zero() {
            return Err(Error::SingularMatrix);
        }
        let d = det.inv()?;
        Ok(Mat2::new([
            [self.entry(1, 1) * &d, -self.entry(0, 1) * &d],
            [-self.entry(1, 0) * &d, self.entry(0, 0) * &d],
        ]))
    }

    pub fn scale(&self, s: &GaussianRational) -> Mat2 {
        let mut out = self.entries.clone();
        for row in &mut out {
            for e in row {
                *e = &*e * s;
            }
        }
        Mat2::new(out)
    }
}

/// The generator T = ((1+i)/2)·[[1,1],[1,-1]].
pub fn generator_t() -> Mat2 {
    let h = GaussianRational::from_parts(1, 2, 1, 2);
    Mat2::new([[h.clone(), h.clone()], [h.clone(), -&h]])
}

/// The generator D = diag(1, i).
pub fn generator_d() -> Mat2 {
    Mat2::new([
        [GaussianRational::one(), GaussianRational::zero()],
        [GaussianRational::zero(), GaussianRational::i()],
    ])
}

/// A finite matrix group as an ordered, deduplicated element table.
///
/// Element order is the BFS discovery order from the identity, multiplying by
/// the generators in their given order — deterministic, so downstream output
/// is reproducible byte for byte.
#[derive(Clone, Debug)]
pub struct GroupTable {
    elements: Vec<Mat2>,
    index: HashMap<Mat2, usize>,
    inverse_index: Vec<usize>,
}

impl GroupTable {
    /// Breadth-first closure of `generators` under multiplication.
    ///
    /// Errors with [`Error::ClosureCapExceeded`] if more than `cap` distinct
    /// elements appear, and [`Error::SingularMatrix`] if a generator is not
    /// invertible.
    pub fn closure(generators: &[Mat2], cap: usize) -> Result<Self> {
        for g in generators {
            if g.det().is_zero() {
                return Err(Error::SingularMatrix);
            }
        }
        let mut elements = vec![Mat2::identity()];
        let mut index = HashMap::new();
        index.insert(elements[0].clone(), 0);
        let mut next = 0;
        while next < elements.len() {
            let current = elements[next].clone();
            next += 1;
            for g in generators {
                let candidate = current.mul(g);
                if !index.contains_key(&candidate) {
                    if elements.len() >= cap {
                        return Err(Error::ClosureCapExceeded { cap });
                    }
                    index.insert(candidate.clone(), elements.len());
                    elements.push(candidate);
                }
            }
        }
        let inverse_index = elements
            .iter()
            .map(|e| {
                let inv = e.inv().expect("group elements are invertible");
                *index
                    .get(&inv)
                    .expect("closure of invertible generators contains inverses")
            })
            .collect();
        Ok(GroupTable {
            elements,
            index,
            inverse_index,
        })
    }

    /// The bundled order-96 reflection group (Shephard–Todd No. 8).
    pub fn shephard_todd_8() -> Self {
        Self::closure(&[generator_t(), generator_d()], DEFAULT_CLOSURE_CAP)
            .expect("hard-coded generators close at 96 elements")
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Mat2] {
        &self.elements
    }

    pub fn element(&self, pos: usize) -> &Mat2 {
        &self.elements[pos]
    }

    /// Position of each element's inverse, parallel to `elements`.
    pub fn inverse_index(&self) -> &[usize] {
        &self.inverse_index
    }

    pub fn inverse_of(&self, pos: usize) -> &Mat2 {
        &self.elements[self.inverse_index[pos]]
    }

    pub fn position_of(&self, m: &Mat2) -> Option<usize> {
        self.index.get(m).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_products() {
        let t = generator_t();
        let d = generator_d();
        let i_times_identity = Mat2::identity().scale(&GaussianRational::i());
        assert_eq!(t.mul(&t), i_times_identity);
        assert_eq!(d.mul(&d).mul(&d).mul(&d), Mat2::identity());
        assert_eq!(Mat2::identity().mul(&t), t);
    }

    #[test]
    fn inverses() {
        assert_eq!(Mat2::identity().inv().unwrap(), Mat2::identity());
        let d = generator_d();
        let want = Mat2::new([
            [GaussianRational::one(), GaussianRational::zero()],
            [GaussianRational::zero(), -&GaussianRational::i()],
        ]);
        assert_eq!(d.inv().unwrap(), want);
        // T⁻¹ = -i·T, since T² = i·I
        let t = generator_t();
        let tinv = t.inv().unwrap();
        assert_eq!(tinv, t.scale(&(-&GaussianRational::i())));
        assert_eq!(t.mul(&tinv), Mat2::identity());
        let singular = Mat2::new([
            [GaussianRational::one(), GaussianRational::one()],
            [GaussianRational::one(), GaussianRational::one()],
        ]);
        assert!(matches!(singular.inv(), Err(Error::SingularMatrix)));
    }

    #[test]
    fn closure_sizes() {
        let only_identity = GroupTable::closure(&[Mat2::identity()], 10).unwrap();
        assert_eq!(only_identity.order(), 1);
        let cyclic = GroupTable::closure(&[generator_d()], 10).unwrap();
        assert_eq!(cyclic.order(), 4);
        let g = GroupTable::shephard_todd_8();
        assert_eq!(g.order(), 96);
    }

    #[test]
    fn closure_cap_exceeded() {
        let err = GroupTable::closure(&[generator_t(), generator_d()], 50);
        assert!(matches!(err, Err(Error::ClosureCapExceeded { cap: 50 })));
    }

    #[test]
    fn table_is_closed_and_has_inverses() {
        let g = GroupTable::shephard_todd_8();
        // spot-check products on a deterministic sample
        for a in (0..g.order()).step_by(7) {
            for b in (0..g.order()).step_by(11) {
                let p = g.element(a).mul(g.element(b));
                assert!(g.position_of(&p).is_some());
            }
        }
        for (pos, &inv_pos) in g.inverse_index().iter().enumerate() {
            assert_eq!(g.element(pos).mul(g.element(inv_pos)), Mat2::identity());
        }
    }

    #[test]
    fn element_orders_divide_group_order() {
        let g = GroupTable::shephard_todd_8();
        for e in g.elements() {
            let mut power = e.clone();
            let mut order = 1;
            while power != Mat2::identity() {
                power = power.mul(e);
                order += 1;
                assert!(order <= 96);
            }
            assert_eq!(96 % order, 0, "element order {order} does not divide 96");
        }
    }

    #[test]
    fn schur_orthogonality_sums() {
        let g = GroupTable::shephard_todd_8();
        let mut off_diagonal = GaussianRational::zero();
        let mut diagonal = GaussianRational::zero();
        for pos in 0..g.order() {
            let a = g.element(pos);
            let ainv = g.inverse_of(pos);
            off_diagonal += &(ainv.entry(0, 0) * a.entry(1, 0));
            diagonal += &(ainv.entry(0, 0) * a.entry(0, 0));
        }
        assert!(off_diagonal.is_zero());
        assert_eq!(diagonal, GaussianRational::from_int(48));
    }
}

//! The 4^f-dimensional coordinate space of multilinear forms.
//!
//! A degree-f multilinear form in row vectors ξ⁽¹⁾..ξ⁽ᶠ⁾ and column vectors
//! y⁽¹⁾..y⁽ᶠ⁾ is determined by its coefficient array b(i₁..i_f; k₁..k_f)
//! with all digits in {1,2}. This module fixes the flat encoding of those
//! arrays, implements the group action ξ ↦ ξA⁻¹, y ↦ Ay on coefficients,
//! the Reynolds average over a finite group, and the expansion of typical
//! invariants ∏ₖ⟨ξ⁽ᵏ⁾, y^(βₖ)⟩ into coordinates.

use crate::error::{Error, Result};
use crate::group::{GroupTable, Mat2};
use crate::scalar::GaussianRational;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::str::FromStr;

/// Length of a degree-f coefficient vector: 4^f.
pub fn coeff_len(f: usize) -> usize {
    assert!(f >= 1, "degree must be at least 1");
    assert!(2 * f < usize::BITS as usize, "degree too large for indexing");
    1usize << (2 * f)
}

/// Labels one elementary monomial: a pair of digit tuples (i₁..i_f; k₁..k_f),
/// digits in {1,2}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIndex {
    row: Vec<u8>,
    col: Vec<u8>,
}

impl MonomialIndex {
    pub fn new(row: Vec<u8>, col: Vec<u8>) -> Result<Self> {
        if row.is_empty() || row.len() != col.len() {
            return Err(Error::InvalidMonomial(format!(
                "row part has {} digits, col part has {}",
                row.len(),
                col.len()
            )));
        }
        if row.iter().chain(col.iter()).any(|&d| d != 1 && d != 2) {
            return Err(Error::InvalidMonomial("digits must be 1 or 2".into()));
        }
        Ok(MonomialIndex { row, col })
    }

    pub fn degree(&self) -> usize {
        self.row.len()
    }

    pub fn row_digits(&self) -> &[u8] {
        &self.row
    }

    pub fn col_digits(&self) -> &[u8] {
        &self.col
    }

    /// Flat position: the 2f-digit base-2 number formed by the row digits
    /// then the col digits, digit 1 ↦ 0 and 2 ↦ 1, first row digit most
    /// significant.
    pub fn encode(&self) -> usize {
        let mut t = 0usize;
        for &d in self.row.iter().chain(self.col.iter()) {
            t = (t << 1) | usize::from(d - 1);
        }
        t
    }

    /// Inverse of [`encode`](Self::encode) for degree `f`.
    pub fn decode(f: usize, pos: usize) -> Self {
        let n = coeff_len(f);
        assert!(pos < n, "position {pos} out of range for degree {f}");
        let bit = |idx: usize| ((pos >> idx) & 1) as u8 + 1;
        let row = (0..f).map(|j| bit(2 * f - 1 - j)).collect();
        let col = (0..f).map(|j| bit(f - 1 - j)).collect();
        MonomialIndex { row, col }
    }
}

/// Prints as "121,112" — row digits, comma, col digits.
impl fmt::Display for MonomialIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &d in &self.row {
            write!(f, "{d}")?;
        }
        write!(f, ",")?;
        for &d in &self.col {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for MonomialIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (row, col) = s
            .trim()
            .split_once(',')
            .ok_or_else(|| Error::InvalidMonomial(format!("expected `row,col` in `{s}`")))?;
        let digits = |part: &str| -> Result<Vec<u8>> {
            part.chars()
                .map(|c| match c {
                    '1' => Ok(1),
                    '2' => Ok(2),
                    _ => Err(Error::InvalidMonomial(format!(
                        "invalid digit `{c}` in `{s}`"
                    ))),
                })
                .collect()
        };
        MonomialIndex::new(digits(row)?, digits(col)?)
    }
}

/// Parses a monomial-list text: one "i_1..i_f,k_1..k_f" index per line,
/// blank lines skipped, all lines required to share one degree. This is the
/// forced-basis / candidate file format of the CLI.
pub fn parse_monomial_list(text: &str) -> Result<Vec<MonomialIndex>> {
    let mut out: Vec<MonomialIndex> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let m: MonomialIndex = line
            .parse()
            .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
        if let Some(first) = out.first() {
            if m.degree() != first.degree() {
                return Err(Error::Parse(format!(
                    "line {}: monomial {m} has degree {}, but the list started at degree {}",
                    lineno + 1,
                    m.degree(),
                    first.degree()
                )));
            }
        }
        out.push(m);
    }
    Ok(out)
}

/// A permutation of {1..f}, stored zero-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let f = images.len();
        if f == 0 {
            return Err(Error::InvalidPermutation("empty image list".into()));
        }
        let mut seen = vec![false; f];
        for &x in &images {
            if x >= f || seen[x] {
                return Err(Error::InvalidPermutation(format!(
                    "images {images:?} are not a bijection"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(f: usize) -> Self {
        Permutation {
            images: (0..f).collect(),
        }
    }

    /// Builds from one-based images, e.g. `[2, 4, 3, 1]`.
    pub fn from_one_based(digits: &[usize]) -> Result<Self> {
        if digits.contains(&0) {
            return Err(Error::InvalidPermutation("images are one-based".into()));
        }
        Permutation::new(digits.iter().map(|&d| d - 1).collect())
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Zero-based image of zero-based `j`.
    pub fn image(&self, j: usize) -> usize {
        self.images[j]
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.images.len()];
        for (j, &img) in self.images.iter().enumerate() {
            images[img] = j;
        }
        Permutation { images }
    }

    /// Composition (self ∘ other): j ↦ self(other(j)).
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree());
        Permutation {
            images: (0..self.degree()).map(|j| self.images[other.images[j]]).collect(),
        }
    }

    /// All permutations of {1..f} in lexicographic order of their images.
    pub fn all(f: usize) -> Vec<Permutation> {
        let mut cur: Vec<usize> = (0..f).collect();
        let mut out = Vec::new();
        loop {
            out.push(Permutation { images: cur.clone() });
            // next lexicographic permutation
            let Some(i) = (0..f.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
                break;
            };
            let j = (i + 1..f).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        out
    }
}

/// Prints one-based images, as a digit string for f ≤ 9.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() <= 9 {
            for &x in &self.images {
                write!(f, "{}", x + 1)?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.images.iter().map(|&x| (x + 1).to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

/// One multilinear form in monomial coordinates: a dense length-4^f vector
/// over Q(i), position t holding the coefficient of the monomial decoded
/// from t.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffVector {
    f: usize,
    coeffs: Vec<GaussianRational>,
}

impl CoeffVector {
    pub fn zero(f: usize) -> Self {
        CoeffVector {
            f,
            coeffs: vec![GaussianRational::zero(); coeff_len(f)],
        }
    }

    pub fn unit(f: usize, pos: usize) -> Self {
        let mut v = Self::zero(f);
        v.coeffs[pos] = GaussianRational::one();
        v
    }

    pub fn from_coeffs(f: usize, coeffs: Vec<GaussianRational>) -> Self {
        assert_eq!(coeffs.len(), coeff_len(f), "coefficient vector length");
        CoeffVector { f, coeffs }
    }

    pub fn degree(&self) -> usize {
        self.f
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn coeff(&self, pos: usize) -> &GaussianRational {
        &self.coeffs[pos]
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<GaussianRational> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Nonzero entries in ascending position order.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, &GaussianRational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn add_assign(&mut self, other: &CoeffVector) {
        assert_eq!(self.f, other.f);
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
    }

    pub fn sub_assign(&mut self, other: &CoeffVector) {
        assert_eq!(self.f, other.f);
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a -= b;
        }
    }

    pub fn scaled(&self, s: &GaussianRational) -> CoeffVector {
        CoeffVector {
            f: self.f,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }
}

/// Single-factor action table for a group element: `K[(a,b)][(i,k)]` =
/// (A⁻¹)_{a,i} · A_{k,b}, with pairs packed as 2·(row digit − 1) + (col
/// digit − 1). Acting on one tensor slot of a coefficient vector multiplies
/// by this 4×4 matrix.
fn single_factor_table(a: &Mat2) -> Result<[[GaussianRational; 4]; 4]> {
    let ainv = a.inv()?;
    let mut table = std::array::from_fn(|_| std::array::from_fn(|_| GaussianRational::zero()));
    let t: &mut [[GaussianRational; 4]; 4] = &mut table;
    for ab in 0..2 {
        for bb in 0..2 {
            for ib in 0..2 {
                for kb in 0..2 {
                    t[2 * ab + bb][2 * ib + kb] = ainv.entry(ab, ib) * a.entry(kb, bb);
                }
            }
        }
    }
    Ok(table)
}

/// Coefficient vector of L(ξ⁽¹⁾A⁻¹, …; A y⁽¹⁾, …): the substitution
/// ξ ↦ ξA⁻¹, y ↦ Ay applied to `v`'s coefficient array.
///
/// Errors if `a` is singular. Applying over matrices A then B equals acting
/// once by A·B.
pub fn act(v: &CoeffVector, a: &Mat2) -> Result<CoeffVector> {
    let table = single_factor_table(a)?;
    let f = v.degree();
    let n = v.len();
    let mut cur = v.coeffs.clone();
    let mut next = vec![GaussianRational::zero(); n];
    for j in 0..f {
        let row_shift = 2 * f - 1 - j;
        let col_shift = f - 1 - j;
        let clear_mask = !((1usize << row_shift) | (1usize << col_shift));
        for (t, out) in next.iter_mut().enumerate() {
            let out_pair = ((t >> row_shift) & 1) * 2 + ((t >> col_shift) & 1);
            let base = t & clear_mask;
            let mut sum = GaussianRational::zero();
            for (in_pair, k) in table[out_pair].iter().enumerate() {
                if k.is_zero() {
                    continue;
                }
                let src = base | ((in_pair >> 1) << row_shift) | ((in_pair & 1) << col_shift);
                if !cur[src].is_zero() {
                    sum += &(k * &cur[src]);
                }
            }
            *out = sum;
        }
        std::mem::swap(&mut cur, &mut next);
    }
    Ok(CoeffVector { f, coeffs: cur })
}

// --- Reynolds averaging -----------------------------------------------------
//
// Every entry of the bundled group lies in (1/2)·Z[i], so after scaling the
// element tables by the common denominator the whole averaging sum runs in
// Gaussian integers; the single division at the end (by |G|·d^{2f}) produces
// the exact rational output. Numerator growth is bounded by the group order
// times the scaled per-factor magnitudes, so the sum usually fits in i128;
// a BigInt path covers tables where the precomputed bound does not.

trait Accum: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn add_assign(&mut self, rhs: &Self);
    fn into_bigints(self) -> (BigInt, BigInt);
    fn from_bigints(re: &BigInt, im: &BigInt) -> Self;
}

#[derive(Clone)]
struct Gauss128 {
    re: i128,
    im: i128,
}

impl Accum for Gauss128 {
    fn zero() -> Self {
        Gauss128 { re: 0, im: 0 }
    }
    fn one() -> Self {
        Gauss128 { re: 1, im: 0 }
    }
    fn mul(&self, rhs: &Self) -> Self {
        Gauss128 {
            re: self.re * rhs.re - self.im * rhs.im,
            im: self.re * rhs.im + self.im * rhs.re,
        }
    }
    fn add_assign(&mut self, rhs: &Self) {
        self.re += rhs.re;
        self.im += rhs.im;
    }
    fn into_bigints(self) -> (BigInt, BigInt) {
        (BigInt::from(self.re), BigInt::from(self.im))
    }
    fn from_bigints(re: &BigInt, im: &BigInt) -> Self {
        Gauss128 {
            re: re.to_i128().expect("bound check admitted this table"),
            im: im.to_i128().expect("bound check admitted this table"),
        }
    }
}

#[derive(Clone)]
struct GaussBig {
    re: BigInt,
    im: BigInt,
}

impl Accum for GaussBig {
    fn zero() -> Self {
        GaussBig {
            re: BigInt::zero(),
            im: BigInt::zero(),
        }
    }
    fn one() -> Self {
        GaussBig {
            re: BigInt::one(),
            im: BigInt::zero(),
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        GaussBig {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
    fn add_assign(&mut self, rhs: &Self) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
    fn into_bigints(self) -> (BigInt, BigInt) {
        (self.re, self.im)
    }
    fn from_bigints(re: &BigInt, im: &BigInt) -> Self {
        GaussBig {
            re: re.clone(),
            im: im.clone(),
        }
    }
}

/// Least common multiple of all entry denominators across the table.
fn table_scale(g: &GroupTable) -> BigInt {
    let mut l = BigInt::one();
    for e in g.elements() {
        for r in 0..2 {
            for c in 0..2 {
                let entry = e.entry(r, c);
                l = l.lcm(entry.re().denom());
                l = l.lcm(entry.im().denom());
            }
        }
    }
    l
}

fn scaled_entry(x: &GaussianRational, d: &BigInt) -> (BigInt, BigInt) {
    let part = |r: &BigRational| {
        let scaled = r * BigRational::from_integer(d.clone());
        debug_assert!(scaled.is_integer());
        scaled.to_integer()
    };
    (part(x.re()), part(x.im()))
}

type ScaledTable = [[(BigInt, BigInt); 4]; 4];

/// Per-element scaled single-factor tables plus the componentwise magnitude
/// bound of the f-fold product sum.
fn scaled_tables(g: &GroupTable, d: &BigInt) -> (Vec<ScaledTable>, BigInt) {
    let mut max_component = BigInt::zero();
    let tables = (0..g.order())
        .map(|pos| {
            let a = g.element(pos);
            let ainv = g.inverse_of(pos);
            std::array::from_fn(|out_pair| {
                std::array::from_fn(|in_pair| {
                    let (ab, bb) = (out_pair >> 1, out_pair & 1);
                    let (ib, kb) = (in_pair >> 1, in_pair & 1);
                    let (xr, xi) = scaled_entry(ainv.entry(ab, ib), d);
                    let (yr, yi) = scaled_entry(a.entry(kb, bb), d);
                    let re = &xr * &yr - &xi * &yi;
                    let im = &xr * &yi + &xi * &yr;
                    max_component = max_component.clone().max(re.abs()).max(im.abs());
                    (re, im)
                })
            })
        })
        .collect();
    (tables, max_component)
}

/// Position remap from pair-major (slot 0 most significant base-4 digit) to
/// the split row-then-col bit encoding.
fn interleaved_to_split(f: usize) -> Vec<usize> {
    let n = coeff_len(f);
    (0..n)
        .map(|q| {
            let mut t = 0usize;
            for j in 0..f {
                let pair = (q >> (2 * (f - 1 - j))) & 3;
                t |= (pair >> 1) << (2 * f - 1 - j);
                t |= (pair & 1) << (f - 1 - j);
            }
            t
        })
        .collect()
}

fn average_kernel<S: Accum>(
    tables: &[[[S; 4]; 4]],
    in_pairs: &[usize],
    f: usize,
) -> Vec<(BigInt, BigInt)> {
    let n = coeff_len(f);
    let mut acc = vec![S::zero(); n];
    let mut level: Vec<S> = Vec::with_capacity(n);
    let mut next: Vec<S> = Vec::with_capacity(n);
    for table in tables {
        level.clear();
        level.push(S::one());
        for &in_pair in in_pairs.iter().take(f) {
            next.clear();
            for partial in &level {
                for row in table {
                    next.push(partial.mul(&row[in_pair]));
                }
            }
            std::mem::swap(&mut level, &mut next);
        }
        for (a, v) in acc.iter_mut().zip(&level) {
            a.add_assign(v);
        }
    }
    acc.into_iter().map(Accum::into_bigints).collect()
}

/// Reynolds average of the elementary form for monomial `m`: the coefficient
/// of output monomial (a₁..a_f; b₁..b_f) is
/// (1/|G|)·Σ_{A∈G} ∏_j (A⁻¹)_{a_j,i_j} · A_{k_j,b_j}.
///
/// Division by |G| (and by the table's denominator scale) happens once at
/// the end of the sum, keeping the accumulation in Gaussian integers.
pub fn average_monomial(m: &MonomialIndex, g: &GroupTable) -> CoeffVector {
    let f = m.degree();
    let d = table_scale(g);
    let (tables, max_component) = scaled_tables(g, &d);
    let in_pairs: Vec<usize> = (0..f)
        .map(|j| 2 * usize::from(m.row_digits()[j] - 1) + usize::from(m.col_digits()[j] - 1))
        .collect();

    // componentwise bound of the accumulated sum: |G| · M · (2M)^(f-1)
    let product_bound =
        &max_component * (BigInt::from(2) * &max_component).pow((f - 1) as u32);
    let total_bound = product_bound * BigInt::from(g.order());
    let fits_i128 = total_bound < (BigInt::from(i128::MAX) >> 2);

    let sums = if fits_i128 {
        let small: Vec<[[Gauss128; 4]; 4]> = tables
            .iter()
            .map(|t| {
                std::array::from_fn(|o| {
                    std::array::from_fn(|i| Gauss128::from_bigints(&t[o][i].0, &t[o][i].1))
                })
            })
            .collect();
        average_kernel(&small, &in_pairs, f)
    } else {
        let big: Vec<[[GaussBig; 4]; 4]> = tables
            .iter()
            .map(|t| {
                std::array::from_fn(|o| {
                    std::array::from_fn(|i| GaussBig::from_bigints(&t[o][i].0, &t[o][i].1))
                })
            })
            .collect();
        average_kernel(&big, &in_pairs, f)
    };

    let denom = BigInt::from(g.order()) * d.pow(2 * f as u32);
    let remap = interleaved_to_split(f);
    let mut coeffs = vec![GaussianRational::zero(); coeff_len(f)];
    for (q, (re, im)) in sums.into_iter().enumerate() {
        if re.is_zero() && im.is_zero() {
            continue;
        }
        coeffs[remap[q]] = GaussianRational::new(
            BigRational::new(re, denom.clone()),
            BigRational::new(im, denom.clone()),
        );
    }
    CoeffVector { f, coeffs }
}

/// Linear extension of [`average_monomial`]: (1/|G|)·Σ_{A∈G} act(v, A).
///
/// The output is G-invariant and the operator is idempotent.
pub fn reynolds_apply(v: &CoeffVector, g: &GroupTable) -> CoeffVector {
    let mut sum = CoeffVector::zero(v.degree());
    for a in g.elements() {
        let moved = act(v, a).expect("group elements are invertible");
        sum.add_assign(&moved);
    }
    let scale = GaussianRational::from_int(g.order() as i64)
        .inv()
        .expect("group order is nonzero");
    sum.scaled(&scale)
}

/// Coordinate expansion of the typical invariant 𝒲(id; β) =
/// ∏ₖ ⟨ξ⁽ᵏ⁾, y^(βₖ)⟩: coefficient 1 exactly on the 2^f monomials whose col
/// digit at position βₖ equals the row digit at position k.
pub fn expand_typical(beta: &Permutation) -> CoeffVector {
    let f = beta.degree();
    let mut v = CoeffVector::zero(f);
    for choice in 0..(1usize << f) {
        let mut pos = 0usize;
        for j in 0..f {
            let bit = (choice >> j) & 1;
            pos |= bit << (2 * f - 1 - j);
            pos |= bit << (f - 1 - beta.image(j));
        }
        v.coeffs[pos] = GaussianRational::one();
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{generator_d, generator_t};

    fn m(s: &str) -> MonomialIndex {
        s.parse().unwrap()
    }

    #[test]
    fn encode_examples() {
        assert_eq!(m("1,1").encode(), 0);
        assert_eq!(m("2,2").encode(), 3);
        assert_eq!(m("12,21").encode(), 6);
    }

    #[test]
    fn encode_decode_round_trip() {
        for f in 1..=4 {
            for pos in 0..coeff_len(f) {
                let idx = MonomialIndex::decode(f, pos);
                assert_eq!(idx.encode(), pos);
                assert_eq!(idx.degree(), f);
            }
        }
    }

    #[test]
    fn monomial_parse_and_display() {
        let idx = m("121,112");
        assert_eq!(idx.to_string(), "121,112");
        assert!("121,11".parse::<MonomialIndex>().is_err());
        assert!("123,111".parse::<MonomialIndex>().is_err());
        assert!("111".parse::<MonomialIndex>().is_err());
        assert!(",".parse::<MonomialIndex>().is_err());
    }

    #[test]
    fn monomial_list_parsing() {
        let list = parse_monomial_list("121,121\n\n  111,111\n").unwrap();
        assert_eq!(list.len(), 2);
        assert_eq!(list[0].to_string(), "121,121");
        assert!(parse_monomial_list("121,121\n11,11\n").is_err());
        assert!(parse_monomial_list("121,113\n").is_err());
        assert!(parse_monomial_list("").unwrap().is_empty());
    }

    #[test]
    fn permutations_are_lexicographic() {
        let all = Permutation::all(3);
        let labels: Vec<String> = all.iter().map(|p| p.to_string()).collect();
        assert_eq!(labels, ["123", "132", "213", "231", "312", "321"]);
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_one_based(&[1, 3]).is_err());
    }

    #[test]
    fn permutation_compose_inverse() {
        let p = Permutation::from_one_based(&[2, 3, 1]).unwrap();
        let q = p.inverse();
        assert_eq!(p.compose(&q), Permutation::identity(3));
        assert_eq!(q.compose(&p), Permutation::identity(3));
    }

    fn group() -> GroupTable {
        GroupTable::shephard_todd_8()
    }

    /// Independent route: the averaging sum evaluated directly from matrix
    /// entries, with no factor tables and no tensor accumulation.
    fn brute_force_average(m: &MonomialIndex, g: &GroupTable) -> CoeffVector {
        let f = m.degree();
        let n = coeff_len(f);
        let mut out = vec![GaussianRational::zero(); n];
        for pos in 0..g.order() {
            let a = g.element(pos);
            let ainv = g.inverse_of(pos);
            for (t, slot) in out.iter_mut().enumerate() {
                let target = MonomialIndex::decode(f, t);
                let mut term = GaussianRational::one();
                for j in 0..f {
                    let x = ainv.entry(
                        usize::from(target.row_digits()[j] - 1),
                        usize::from(m.row_digits()[j] - 1),
                    );
                    let y = a.entry(
                        usize::from(m.col_digits()[j] - 1),
                        usize::from(target.col_digits()[j] - 1),
                    );
                    term = &term * &(x * y);
                    if term.is_zero() {
                        break;
                    }
                }
                *slot += &term;
            }
        }
        let scale = GaussianRational::from_int(g.order() as i64).inv().unwrap();
        CoeffVector::from_coeffs(f, out.into_iter().map(|c| &c * &scale).collect())
    }

    #[test]
    fn average_f1_frozen_values() {
        let g = group();
        let half = GaussianRational::from_parts(1, 2, 0, 1);
        let avg = average_monomial(&m("1,1"), &g);
        assert_eq!(avg.coeff(0), &half);
        assert!(avg.coeff(1).is_zero());
        assert!(avg.coeff(2).is_zero());
        assert_eq!(avg.coeff(3), &half);
        assert!(average_monomial(&m("1,2"), &g).is_zero());
        assert_eq!(average_monomial(&m("2,2"), &g), avg);
    }

    #[test]
    fn average_agrees_with_brute_force() {
        let g = group();
        for pos in 0..coeff_len(2) {
            let idx = MonomialIndex::decode(2, pos);
            assert_eq!(
                average_monomial(&idx, &g),
                brute_force_average(&idx, &g),
                "column {idx}"
            );
        }
        for pos in [0usize, 9, 21, 38, 63] {
            let idx = MonomialIndex::decode(3, pos);
            assert_eq!(average_monomial(&idx, &g), brute_force_average(&idx, &g));
        }
    }

    #[test]
    fn act_identity_and_composition() {
        let g = group();
        let v = average_monomial(&m("12,21"), &g);
        assert_eq!(act(&v, &Mat2::identity()).unwrap(), v);
        let w = expand_typical(&Permutation::from_one_based(&[2, 1]).unwrap());
        for (i, j) in [(3usize, 17usize), (40, 8), (95, 95), (12, 60)] {
            let a = g.element(i);
            let b = g.element(j);
            let two_steps = act(&act(&w, a).unwrap(), b).unwrap();
            let one_step = act(&w, &a.mul(b)).unwrap();
            assert_eq!(two_steps, one_step);
        }
        let singular = Mat2::new([
            [GaussianRational::one(), GaussianRational::zero()],
            [GaussianRational::zero(), GaussianRational::zero()],
        ]);
        assert!(act(&w, &singular).is_err());
    }

    #[test]
    fn act_matches_direct_definition() {
        // f=1: coefficients transform as A⁻¹·M·A
        let g = group();
        let v = CoeffVector::from_coeffs(
            1,
            vec![
                GaussianRational::from_parts(1, 2, -1, 3),
                GaussianRational::from_int(2),
                GaussianRational::i(),
                GaussianRational::zero(),
            ],
        );
        for pos in [1usize, 5, 77] {
            let a = g.element(pos);
            let ainv = g.inverse_of(pos);
            let moved = act(&v, a).unwrap();
            let mm = Mat2::new([
                [v.coeff(0).clone(), v.coeff(1).clone()],
                [v.coeff(2).clone(), v.coeff(3).clone()],
            ]);
            let conj = ainv.mul(&mm).mul(a);
            assert_eq!(moved.coeff(0), conj.entry(0, 0));
            assert_eq!(moved.coeff(1), conj.entry(0, 1));
            assert_eq!(moved.coeff(2), conj.entry(1, 0));
            assert_eq!(moved.coeff(3), conj.entry(1, 1));
        }
    }

    #[test]
    fn averaged_forms_are_invariant() {
        let g = group();
        for label in ["11,11", "12,12", "12,21"] {
            let avg = average_monomial(&m(label), &g);
            for a in [generator_t(), generator_d()] {
                assert_eq!(act(&avg, &a).unwrap(), avg);
            }
        }
    }

    #[test]
    fn reynolds_properties() {
        let g = group();
        assert!(reynolds_apply(&CoeffVector::zero(2), &g).is_zero());
        assert!(reynolds_apply(&CoeffVector::unit(1, 1), &g).is_zero());
        // route agreement: linear extension equals the dedicated column path
        for pos in [0usize, 5, 9, 14] {
            let unit = CoeffVector::unit(2, pos);
            assert_eq!(
                reynolds_apply(&unit, &g),
                average_monomial(&MonomialIndex::decode(2, pos), &g)
            );
        }
        // averaging an already-averaged form returns it unchanged
        let avg = average_monomial(&m("12,12"), &g);
        assert_eq!(reynolds_apply(&avg, &g), avg);
        // idempotence on a structured vector
        let mut v = CoeffVector::unit(2, 3);
        v.add_assign(&CoeffVector::unit(2, 10).scaled(&GaussianRational::from_parts(2, 3, 1, 5)));
        let once = reynolds_apply(&v, &g);
        assert_eq!(reynolds_apply(&once, &g), once);
    }

    #[test]
    fn expand_typical_frozen_examples() {
        let ones = |v: &CoeffVector| -> Vec<usize> { v.nonzero().map(|(t, _)| t).collect() };
        let id1 = expand_typical(&Permutation::identity(1));
        assert_eq!(ones(&id1), vec![0, 3]);
        let id2 = expand_typical(&Permutation::identity(2));
        assert_eq!(ones(&id2), vec![0, 5, 10, 15]);
        let swap = expand_typical(&Permutation::from_one_based(&[2, 1]).unwrap());
        assert_eq!(ones(&swap), vec![0, 6, 9, 15]);
        assert!(swap.nonzero().all(|(_, c)| c.is_one()));
    }

    #[test]
    fn typical_invariance_under_whole_group() {
        let g = group();
        for beta in Permutation::all(2) {
            let w = expand_typical(&beta);
            for a in g.elements() {
                assert_eq!(act(&w, a).unwrap(), w);
            }
            assert_eq!(reynolds_apply(&w, &g), w);
        }
    }

    /// Oracle for the two-permutation family 𝒲(α;β): expand the product
    /// ∏ₖ ⟨ξ^(αₖ), y^(βₖ)⟩ directly over the summation digit choices.
    fn expand_typical_pair(alpha: &Permutation, beta: &Permutation) -> CoeffVector {
        let f = alpha.degree();
        let mut v = CoeffVector::zero(f);
        for choice in 0..(1usize << f) {
            let mut pos = 0usize;
            for k in 0..f {
                let bit = (choice >> k) & 1;
                pos |= bit << (2 * f - 1 - alpha.image(k));
                pos |= bit << (f - 1 - beta.image(k));
            }
            v.coeffs[pos] = GaussianRational::one();
        }
        v
    }

    #[test]
    fn alpha_reduces_to_identity() {
        // 𝒲(α;β) = 𝒲(id; β∘α⁻¹), so enumerating β alone spans the family
        for f in [3usize, 4] {
            let perms = Permutation::all(f);
            for (ai, bi) in [(1usize, 4usize), (3, 2), (5, 5), (2, 0)] {
                let alpha = &perms[ai % perms.len()];
                let beta = &perms[bi % perms.len()];
                let pair = expand_typical_pair(alpha, beta);
                let reduced = expand_typical(&beta.compose(&alpha.inverse()));
                assert_eq!(pair, reduced);
            }
        }
    }
}

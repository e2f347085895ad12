//! Pinned reference orderings for the bundled order-96 group.
//!
//! The degree-3 monomial listing is a curated order (it is not the encoding
//! order); feeding it to `build_v_basis` as `forced_order` reproduces the
//! standard change-of-basis tables for this group row for row. The degree-2
//! pair is ordered so that the relation table takes its canonical form
//! [2, 2], [-2, 4]. The other degrees coincide with what the default
//! encoding-order scan selects, and are pinned here so `verify` can detect
//! drift.

use crate::forms::{MonomialIndex, Permutation};

fn monomials(labels: &[&str]) -> Vec<MonomialIndex> {
    labels
        .iter()
        .map(|s| s.parse().expect("reference monomial labels are valid"))
        .collect()
}

fn permutations(labels: &[&str]) -> Vec<Permutation> {
    labels
        .iter()
        .map(|s| {
            let digits: Vec<usize> = s
                .chars()
                .map(|c| c.to_digit(10).expect("digit") as usize)
                .collect();
            Permutation::from_one_based(&digits).expect("reference permutations are valid")
        })
        .collect()
}

/// Reference ordering of the averaged-monomial basis of V_f, for f ≤ 5.
pub fn v_basis_order(f: usize) -> Option<Vec<MonomialIndex>> {
    let labels: &[&str] = match f {
        1 => &["1,1"],
        2 => &["12,12", "11,11"],
        3 => &["121,121", "121,112", "112,121", "112,112", "111,111"],
        4 => &[
            "1111,1111", "1111,2222", "1112,1112", "1112,1121", "1112,1211",
            "1121,1112", "1121,1121", "1121,1211", "1122,1122", "1122,1212",
            "1211,1112", "1211,1121", "1211,1211", "1212,1122", "1212,1212",
        ],
        5 => &[
            "11111,11111", "11111,12222", "11111,21222", "11111,22122", "11111,22212",
            "11111,22221", "11112,11112", "11112,11121", "11112,11211", "11112,12111",
            "11112,21111", "11121,11112", "11121,11121", "11121,11211", "11121,12111",
            "11121,21111", "11122,11122", "11122,11212", "11122,11221", "11122,12112",
            "11122,12121", "11211,11112", "11211,11121", "11211,11211", "11211,12111",
            "11211,21111", "11212,11122", "11212,11212", "11212,11221", "11212,12112",
            "11212,12121", "11221,11122", "11221,11212", "11221,11221", "11221,12112",
            "11221,12121", "12111,11112", "12111,11121", "12111,11211", "12111,12111",
            "12111,21111", "12112,11122", "12112,11212", "12112,11221", "12112,12112",
            "12112,12121", "12121,11122", "12121,11212", "12121,11221", "12121,12112",
            "12121,12121",
        ],
        _ => return None,
    };
    Some(monomials(labels))
}

/// Reference ordering of the typical-invariant basis of W_f, for f ≤ 5.
/// These coincide with the lexicographic greedy scan over all of S_f.
pub fn w_basis_order(f: usize) -> Option<Vec<Permutation>> {
    let labels: &[&str] = match f {
        1 => &["1"],
        2 => &["12", "21"],
        3 => &["123", "132", "213", "231", "312"],
        4 => &[
            "1234", "1243", "1324", "1342", "1423", "2134", "2143", "2314", "2341",
            "2413", "3124", "3142", "3412", "4123",
        ],
        5 => &[
            "12345", "12354", "12435", "12453", "12534", "13245", "13254", "13425",
            "13452", "13524", "14235", "14253", "14523", "15234", "21345", "21354",
            "21435", "21453", "21534", "23145", "23154", "23415", "23451", "23514",
            "24135", "24153", "24513", "25134", "31245", "31254", "31425", "31452",
            "31524", "34125", "34152", "34512", "35124", "41235", "41253", "41523",
            "45123", "51234",
        ],
        _ => return None,
    };
    Some(permutations(labels))
}

/// The nine averaged monomials that extend the degree-5 typical-invariant
/// basis to the full invariant space.
pub fn completion_monomials_f5() -> Vec<MonomialIndex> {
    monomials(&[
        "11111,11111", "11111,12222", "11111,21222", "11111,22122", "11111,22212",
        "11112,11112", "11121,11112", "11211,11112", "12111,11112",
    ])
}

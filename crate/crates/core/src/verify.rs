//! The invariant check suite behind `verify --f N`.
//!
//! Every check is deterministic: sampling uses a fixed seed, so two runs of
//! the same binary produce byte-identical reports.

use crate::forms::{
    act, average_monomial, coeff_len, expand_typical, reynolds_apply, CoeffVector, MonomialIndex,
    Permutation,
};
use crate::group::{GroupTable, Mat2};
use crate::linalg::SpanSolver;
use crate::reference;
use crate::scalar::GaussianRational;
use crate::spaces::{build_v_basis, build_w_basis, catalan, complete_basis, dim_v_formula, relate};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const SUITE_SEED: u64 = 0x96;

pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn outcome(name: &'static str, passed: bool, detail: impl Into<String>) -> CheckOutcome {
    CheckOutcome {
        name,
        passed,
        detail: detail.into(),
    }
}

fn random_scalar(rng: &mut StdRng) -> GaussianRational {
    GaussianRational::from_parts(
        rng.random_range(-3..=3),
        rng.random_range(1..=4),
        rng.random_range(-3..=3),
        rng.random_range(1..=4),
    )
}

fn random_vector(rng: &mut StdRng, f: usize) -> CoeffVector {
    let coeffs = (0..coeff_len(f)).map(|_| random_scalar(rng)).collect();
    CoeffVector::from_coeffs(f, coeffs)
}

fn sample_permutations(rng: &mut StdRng, f: usize, cap: usize) -> Vec<Permutation> {
    let all = Permutation::all(f);
    if all.len() <= cap {
        return all;
    }
    (0..cap)
        .map(|_| all[rng.random_range(0..all.len())].clone())
        .collect()
}

fn sample_elements<'g>(rng: &mut StdRng, g: &'g GroupTable, cap: usize) -> Vec<&'g Mat2> {
    if g.order() <= cap {
        return g.elements().iter().collect();
    }
    (0..cap)
        .map(|_| g.element(rng.random_range(0..g.order())))
        .collect()
}

/// Runs the full invariant suite for degree `f` and reports one outcome per
/// check. The caller decides how to render and whether failures are fatal.
pub fn run_suite(f: usize) -> Vec<CheckOutcome> {
    let mut rng = StdRng::seed_from_u64(SUITE_SEED);
    let mut checks = Vec::new();
    let g = GroupTable::shephard_todd_8();

    // group table: order, exhaustive closure under product, inverse table
    {
        let mut closed = true;
        'outer: for a in g.elements() {
            for b in g.elements() {
                if g.position_of(&a.mul(b)).is_none() {
                    closed = false;
                    break 'outer;
                }
            }
        }
        let inverses_ok = g
            .inverse_index()
            .iter()
            .enumerate()
            .all(|(pos, &ipos)| g.element(pos).mul(g.element(ipos)) == Mat2::identity());
        checks.push(outcome(
            "group_order",
            g.order() == 96 && closed && inverses_ok,
            format!(
                "{} elements; products closed: {closed}; inverses valid: {inverses_ok}",
                g.order()
            ),
        ));
    }

    // Schur orthogonality sums over the natural representation
    {
        let mut off_diagonal = GaussianRational::zero();
        let mut diagonal = GaussianRational::zero();
        for pos in 0..g.order() {
            let a = g.element(pos);
            let ainv = g.inverse_of(pos);
            off_diagonal += &(ainv.entry(0, 0) * a.entry(1, 0));
            diagonal += &(ainv.entry(0, 0) * a.entry(0, 0));
        }
        let ok = off_diagonal.is_zero() && diagonal == GaussianRational::from_int(48);
        checks.push(outcome(
            "schur_orthogonality",
            ok,
            format!("sum (A^-1)_11 A_21 = {off_diagonal}; sum (A^-1)_11 A_11 = {diagonal}"),
        ));
    }

    // encode/decode bijectivity over all 4^f positions
    {
        let ok = (0..coeff_len(f)).all(|pos| MonomialIndex::decode(f, pos).encode() == pos);
        checks.push(outcome(
            "encode_decode",
            ok,
            format!("all {} positions round-trip", coeff_len(f)),
        ));
    }

    // dimension theorems via the default-order constructions
    let v_default = match build_v_basis(f, &g, None) {
        Ok(v) => v,
        Err(e) => {
            checks.push(outcome("dimensions", false, format!("V build failed: {e}")));
            return checks;
        }
    };
    let w = match build_w_basis(f) {
        Ok(w) => w,
        Err(e) => {
            checks.push(outcome("dimensions", false, format!("W build failed: {e}")));
            return checks;
        }
    };
    checks.push(outcome(
        "dimensions",
        v_default.dimension == dim_v_formula(f) && w.dimension == catalan(f),
        format!(
            "dim V_{f} = {} (formula {}), dim W_{f} = {} (Catalan {})",
            v_default.dimension,
            dim_v_formula(f),
            w.dimension,
            catalan(f)
        ),
    ));

    // pinned reference orderings, where available
    let v_reference = match reference::v_basis_order(f) {
        Some(order) => match build_v_basis(f, &g, Some(&order)) {
            Ok(v) => {
                let provenance_ok =
                    v.monomials().map(|m| m == order.as_slice()).unwrap_or(false);
                let w_matches = reference::w_basis_order(f)
                    .map(|ref_w| w.permutations() == Some(ref_w.as_slice()))
                    .unwrap_or(false);
                let default_matches = v_default.labels() == v.labels();
                checks.push(outcome(
                    "basis_reference",
                    provenance_ok && w_matches,
                    format!(
                        "reference V order independent: {provenance_ok}; \
                         W scan matches reference: {w_matches}; \
                         default V order coincides: {default_matches}"
                    ),
                ));
                v
            }
            Err(e) => {
                checks.push(outcome(
                    "basis_reference",
                    false,
                    format!("reference V build failed: {e}"),
                ));
                v_default.clone()
            }
        },
        None => {
            checks.push(outcome(
                "basis_reference",
                true,
                "no pinned reference ordering for this degree".to_string(),
            ));
            v_default.clone()
        }
    };

    // invariance of typical forms: act fixes them elementwise
    {
        let betas = sample_permutations(&mut rng, f, if f <= 3 { usize::MAX } else { 8 });
        let elements = sample_elements(&mut rng, &g, if f <= 2 { usize::MAX } else { 8 });
        let mut ok = true;
        for beta in &betas {
            let typical = expand_typical(beta);
            for a in &elements {
                if act(&typical, a).expect("group elements invertible") != typical {
                    ok = false;
                }
            }
        }
        checks.push(outcome(
            "typical_invariance",
            ok,
            format!(
                "{} permutations x {} elements left fixed",
                betas.len(),
                elements.len()
            ),
        ));
    }

    // Reynolds fixes typical invariants (the computational W ⊆ V argument)
    {
        let cap = match f {
            1..=3 => usize::MAX,
            4 => 4,
            _ => 2,
        };
        let betas = sample_permutations(&mut rng, f, cap);
        let ok = betas.iter().all(|beta| {
            let typical = expand_typical(beta);
            reynolds_apply(&typical, &g) == typical
        });
        checks.push(outcome(
            "reynolds_fixes_typical",
            ok,
            format!("{} typical invariants fixed by averaging", betas.len()),
        ));
    }

    // projector idempotence on random vectors
    {
        let count = if f <= 4 { 20 } else { 2 };
        let mut ok = true;
        for _ in 0..count {
            let v = random_vector(&mut rng, f);
            let once = reynolds_apply(&v, &g);
            if reynolds_apply(&once, &g) != once {
                ok = false;
            }
        }
        checks.push(outcome(
            "reynolds_idempotent",
            ok,
            format!("{count} random vectors, exact equality"),
        ));
    }

    // act composition: acting by A then B equals acting by A·B
    {
        let mut ok = true;
        for _ in 0..10 {
            let v = random_vector(&mut rng, f.min(3));
            let a = g.element(rng.random_range(0..g.order()));
            let b = g.element(rng.random_range(0..g.order()));
            let two = act(&act(&v, a).unwrap(), b).unwrap();
            let one = act(&v, &a.mul(b)).unwrap();
            if two != one {
                ok = false;
            }
        }
        checks.push(outcome(
            "act_composition",
            ok,
            "10 random (v, A, B) triples".to_string(),
        ));
    }

    // dedicated averaging path agrees with the linear extension
    {
        let count = if f <= 4 { 3 } else { 1 };
        let mut ok = true;
        for _ in 0..count {
            let pos = rng.random_range(0..coeff_len(f));
            let m = MonomialIndex::decode(f, pos);
            if average_monomial(&m, &g) != reynolds_apply(&CoeffVector::unit(f, pos), &g) {
                ok = false;
            }
        }
        checks.push(outcome(
            "average_route_agreement",
            ok,
            format!("{count} monomial columns, two independent routes"),
        ));
    }

    // coefficient-level scalar product invariance (ξA⁻¹)(Ay) = ξy
    if f == 1 {
        let pairing = expand_typical(&Permutation::identity(1));
        let ok = g
            .elements()
            .iter()
            .all(|a| act(&pairing, a).unwrap() == pairing);
        checks.push(outcome(
            "scalar_product_invariance",
            ok,
            "all 96 elements fix the pairing".to_string(),
        ));
    }

    // W ⊆ V: every typical basis vector solves over the V basis
    let relation = match relate(&g, v_reference.clone(), w.clone()) {
        Ok(rel) => rel,
        Err(e) => {
            checks.push(outcome("w_inside_v", false, format!("relate failed: {e}")));
            return checks;
        }
    };
    checks.push(outcome(
        "w_inside_v",
        true,
        format!(
            "{} expansion rows solved and re-substituted exactly",
            relation.matrix.len()
        ),
    ));

    // the even-coefficient property of the relation table
    {
        let enforced = f <= 5;
        checks.push(outcome(
            "even_coefficients",
            relation.all_even || !enforced,
            format!(
                "all coefficients even integers: {}{}",
                relation.all_even,
                if enforced { "" } else { " (informational beyond degree 5)" }
            ),
        ));
    }

    if f <= 3 {
        // mutual containment: the two spaces coincide
        let contained = SpanSolver::new(&w.vectors)
            .map(|solver| {
                v_reference
                    .vectors
                    .iter()
                    .all(|vector| solver.solve(vector).is_ok())
            })
            .unwrap_or(false);
        checks.push(outcome(
            "mutual_containment",
            contained && relation.extra_invariants.is_empty(),
            format!(
                "every V vector lies in W: {contained}; extra invariants: {}",
                relation.extra_invariants.len()
            ),
        ));
    } else {
        // completion of W to the full invariant space
        let gap = v_reference.dimension - w.dimension;
        let greedy_ok = relation.extra_invariants.len() == gap;
        let mut detail = format!(
            "dimension gap {gap}; greedy completion found {}",
            relation.extra_invariants.len()
        );
        let mut ok = greedy_ok;
        if f == 4 {
            // every single V basis vector individually completes W_4
            let monomials = v_reference.monomials().unwrap();
            let each_single = monomials.iter().all(|m| {
                complete_basis(&g, &v_reference, &w, Some(std::slice::from_ref(m))).is_ok()
            });
            // informational: how many of all 4^4 averaged monomials would do
            let completing_count = (0..coeff_len(4))
                .filter(|&pos| {
                    let m = MonomialIndex::decode(4, pos);
                    complete_basis(&g, &v_reference, &w, Some(std::slice::from_ref(&m))).is_ok()
                })
                .count();
            ok = ok && each_single;
            detail.push_str(&format!(
                "; each of the {} basis vectors completes singly: {each_single}; \
                 {completing_count} of {} monomials complete singly",
                monomials.len(),
                coeff_len(4)
            ));
        }
        if f == 5 {
            let nine = reference::completion_monomials_f5();
            let pinned_ok = matches!(
                complete_basis(&g, &v_reference, &w, Some(&nine)),
                Ok(ref accepted) if accepted.len() == nine.len()
            );
            ok = ok && pinned_ok;
            detail.push_str(&format!("; pinned nine-monomial completion valid: {pinned_ok}"));
        }
        checks.push(outcome("completion", ok, detail));
    }

    checks
}

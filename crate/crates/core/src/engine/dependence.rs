//! Predicates about which variables the invariants can depend on.
//!
//! For the sl(2) fixtures with a radical of dimension at least four, the
//! invariants are functions of the radical coordinates alone; the witness is
//! a nonsingular 3x3 block of the commutator matrix. The general form of the
//! statement applies to any algebra split as subspace + abelian subalgebra
//! with a full-rank mixed bracket block.

use crate::coadjoint::{commutator_matrix, infinitesimal_generators, LinearVectorField};
use crate::engine::{find_invariants, FindOptions, InvariantSet};
use crate::error::EngineError;
use crate::lie::LieAlgebra;
use crate::linalg;
use crate::poly::{Context, Polynomial};
use crate::rational::rat;

/// Result of the radical-dependence check on a weight-m fixture.
#[derive(Debug, Clone)]
pub struct RadicalOnlyReport {
    /// Determinant of the block linking the first three radical rows to the
    /// sl(2) columns.
    pub block_det: Polynomial,
    /// Whether that determinant matches the closed form
    /// (-2+3m-m^2) v1^3 + (-6m+3m^2) v0 v1 v2 - 3 m^2 v0^2 v3.
    pub det_matches: bool,
    /// Unrestricted search results up to the requested degree.
    pub invariants: InvariantSet,
    /// Every found invariant is free of the x, y, h coordinates.
    pub free_of_sl2: bool,
    /// The generators restricted to radical coordinates annihilate every
    /// found invariant.
    pub restricted_generators_annihilate: bool,
}

impl RadicalOnlyReport {
    pub fn holds(&self) -> bool {
        self.det_matches && self.free_of_sl2 && self.restricted_generators_annihilate
    }
}

/// Closed form of the 3x3 block determinant for highest weight `m`.
fn expected_block_det(ctx: &Context, m: u32) -> Polynomial {
    let mm = m as i64;
    let term = |coeff: i64, exps: &[(&str, u32)]| {
        let mut p = Polynomial::constant(ctx, rat(coeff));
        for (name, e) in exps {
            let v = Polynomial::var_named(ctx, name).expect("fixture variable");
            p = p.mul(&v.pow(*e));
        }
        p
    };
    term(-2 + 3 * mm - mm * mm, &[("v1", 3)])
        .add(&term(-6 * mm + 3 * mm * mm, &[("v0", 1), ("v1", 1), ("v2", 1)]))
        .add(&term(-3 * mm * mm, &[("v0", 2), ("v3", 1)]))
}

/// Checks that invariants of the weight-m fixture (m >= 3) depend only on
/// the radical coordinates: the witness determinant is verified against its
/// closed form, an unrestricted search up to `max_degree` must return
/// polynomials free of x, y, h, and the radical-restricted generators must
/// annihilate them.
pub fn radical_only_report(
    algebra: &LieAlgebra,
    m: u32,
    max_degree: u32,
) -> Result<RadicalOnlyReport, EngineError> {
    if m < 3 {
        return Err(EngineError::RadicalTooSmall(m));
    }
    let expected_dim = m as usize + 4;
    if algebra.dim() != expected_dim {
        return Err(EngineError::UnexpectedDimension {
            dim: algebra.dim(),
            expected: expected_dim,
            weight: m,
        });
    }
    let matrix = commutator_matrix(algebra);
    let block = matrix.block(&[3, 4, 5], &[0, 1, 2]);
    let block_det = linalg::symbolic_det(&block, matrix.context());
    let det_matches = block_det == expected_block_det(matrix.context(), m);

    let invariants = find_invariants(algebra, &FindOptions::new(max_degree));
    let sl2_vars = [0usize, 1, 2];
    let free_of_sl2 = invariants.polys().iter().all(|p| p.free_of(&sl2_vars));

    let restricted = restricted_generators(algebra, &sl2_vars);
    let restricted_generators_annihilate = invariants
        .polys()
        .iter()
        .all(|p| restricted.iter().all(|g| g.apply(p).is_zero()));

    Ok(RadicalOnlyReport {
        block_det,
        det_matches,
        invariants,
        free_of_sl2,
        restricted_generators_annihilate,
    })
}

/// The generators with their coefficients zeroed outside the complement of
/// `dropped`: the reduced fields acting on the remaining coordinates only.
fn restricted_generators(algebra: &LieAlgebra, dropped: &[usize]) -> Vec<LinearVectorField> {
    infinitesimal_generators(algebra)
        .into_iter()
        .map(|g| {
            let ctx = g.context().clone();
            let coeffs = g
                .coeffs()
                .iter()
                .enumerate()
                .map(|(j, c)| {
                    if dropped.contains(&j) {
                        Polynomial::zero(&ctx)
                    } else {
                        c.clone()
                    }
                })
                .collect();
            LinearVectorField::new(ctx, coeffs)
        })
        .collect()
}

/// Result of the abelian-split dependence check.
#[derive(Debug, Clone)]
pub struct AbelianDependenceReport {
    pub abelian_dim: usize,
    pub complement_dim: usize,
    /// dim L2 >= dim L1.
    pub dims_ok: bool,
    pub block_rank: usize,
    /// The mixed block reaches its maximal possible rank.
    pub block_maximal: bool,
    pub spot_check: Option<SpotCheck>,
}

/// Restricted-versus-unrestricted ansatz comparison at one degree bound.
#[derive(Debug, Clone)]
pub struct SpotCheck {
    pub max_degree: u32,
    /// Every unrestricted representative avoids the complement coordinates.
    pub unrestricted_free: bool,
    /// Restricted and unrestricted searches found the same number per run.
    pub counts_match: bool,
}

impl AbelianDependenceReport {
    pub fn hypotheses_hold(&self) -> bool {
        self.dims_ok && self.block_maximal
    }
}

/// Checks the hypotheses under which every invariant depends only on the
/// coordinates of the abelian subalgebra spanned by `abelian` (a set of
/// basis indices): the subalgebra must be at least half the dimension and
/// the bracket block between it and the complement must have maximal generic
/// rank. When both hold and `spot_degree` is given, the claim itself is
/// spot-checked by comparing restricted and unrestricted searches.
pub fn abelian_dependence_report(
    algebra: &LieAlgebra,
    abelian: &[usize],
    spot_degree: Option<u32>,
) -> Result<AbelianDependenceReport, EngineError> {
    // The span must really be abelian.
    for (pos, &i) in abelian.iter().enumerate() {
        for &j in &abelian[pos + 1..] {
            if !algebra.bracket_sparse(i, j).is_empty() {
                return Err(EngineError::NotAbelian {
                    a: algebra.basis_name(i).to_string(),
                    b: algebra.basis_name(j).to_string(),
                });
            }
        }
    }
    let complement: Vec<usize> = (0..algebra.dim()).filter(|i| !abelian.contains(i)).collect();
    let dims_ok = abelian.len() >= complement.len();
    let matrix = commutator_matrix(algebra);
    let block = matrix.block(abelian, &complement);
    let block_rank = if complement.is_empty() {
        0
    } else {
        linalg::generic_rank_symbolic(&block, matrix.context())
    };
    let block_maximal = block_rank == abelian.len().min(complement.len());
    let mut report = AbelianDependenceReport {
        abelian_dim: abelian.len(),
        complement_dim: complement.len(),
        dims_ok,
        block_rank,
        block_maximal,
        spot_check: None,
    };
    if report.hypotheses_hold() {
        if let Some(degree) = spot_degree {
            let unrestricted = find_invariants(algebra, &FindOptions::new(degree));
            let restricted =
                find_invariants(algebra, &FindOptions::new(degree).restrict(abelian.to_vec()));
            report.spot_check = Some(SpotCheck {
                max_degree: degree,
                unrestricted_free: unrestricted.polys().iter().all(|p| p.free_of(&complement)),
                counts_match: unrestricted.len() == restricted.len(),
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{sl2_semidirect, LieAlgebra};
    use crate::poly::parse_polynomial;

    #[test]
    fn weight_three_block_determinant() {
        let l = sl2_semidirect(3);
        let report = radical_only_report(&l, 3, 4).unwrap();
        assert!(report.det_matches);
        // m=3: -2 v1^3 + 9 v0 v1 v2 - 27 v0^2 v3, checked against an
        // independent textual expansion.
        let ctx = l.context();
        let expected = parse_polynomial(&ctx, "-2*v1^3 + 9*v0*v1*v2 - 27*v0^2*v3").unwrap();
        assert_eq!(report.block_det, expected);
        assert!(report.free_of_sl2);
        assert!(report.restricted_generators_annihilate);
        assert!(report.holds());
        // The degree-4 search recovers the reference invariant.
        assert_eq!(report.invariants.of_degree(4).len(), 1);
    }

    #[test]
    fn weight_four_report_holds_at_degree_three() {
        let l = sl2_semidirect(4);
        let report = radical_only_report(&l, 4, 3).unwrap();
        assert!(report.det_matches);
        assert!(report.free_of_sl2);
        assert!(report.restricted_generators_annihilate);
        assert!(report.holds());
        // Both reference invariants are recovered, at degrees 2 and 3.
        assert_eq!(report.invariants.of_degree(2).len(), 1);
        assert_eq!(report.invariants.of_degree(3).len(), 1);
    }

    #[test]
    fn weight_too_small_rejected() {
        let l = sl2_semidirect(2);
        assert!(matches!(radical_only_report(&l, 2, 3), Err(EngineError::RadicalTooSmall(2))));
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let l = sl2_semidirect(4);
        assert!(matches!(
            radical_only_report(&l, 3, 3),
            Err(EngineError::UnexpectedDimension { .. })
        ));
    }

    #[test]
    fn abelian_split_on_weight_three() {
        let l = sl2_semidirect(3);
        let radical: Vec<usize> = (3..7).collect();
        let report = abelian_dependence_report(&l, &radical, None).unwrap();
        assert!(report.dims_ok);
        assert_eq!(report.block_rank, 3);
        assert!(report.block_maximal);
        assert!(report.hypotheses_hold());
    }

    #[test]
    fn abelian_split_everything() {
        let a = LieAlgebra::abelian(vec!["a".into(), "b".into()]).unwrap();
        let report = abelian_dependence_report(&a, &[0, 1], Some(1)).unwrap();
        assert_eq!(report.complement_dim, 0);
        assert!(report.hypotheses_hold());
        let spot = report.spot_check.unwrap();
        assert!(spot.unrestricted_free);
        assert!(spot.counts_match);
    }

    #[test]
    fn abelian_split_hypotheses_fail_on_weight_one() {
        let l = sl2_semidirect(1);
        let report = abelian_dependence_report(&l, &[3, 4], None).unwrap();
        assert!(!report.dims_ok);
        assert!(!report.hypotheses_hold());
        // Consistent with failure: the lone invariant involves x, y, h.
        let set = find_invariants(&l, &FindOptions::new(3));
        assert!(set.polys().iter().any(|p| !p.free_of(&[0, 1, 2])));
    }

    #[test]
    fn non_abelian_subset_rejected() {
        let l = sl2_semidirect(1);
        // x and y do not commute.
        assert!(matches!(
            abelian_dependence_report(&l, &[0, 1], None),
            Err(EngineError::NotAbelian { .. })
        ));
    }
}

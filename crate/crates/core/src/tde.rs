//! Total-differential-equation form of the determining system.
//!
//! The gradient system M_L . Z = 0 is solved for the partials at the pivot
//! columns (the independent variables); the free columns are the dependent
//! variables u_s, and du_s = sum_t U_{s,t} dx_t is the equivalent system of
//! total differential equations. Elimination is fraction-free Gauss-Jordan,
//! so every denominator of U divides the recorded pivot product, which is
//! also the singular locus of the derivation.

use std::fmt::Write as _;

use crate::coadjoint::commutator_matrix;
use crate::error::KernelError;
use crate::exec;
use crate::lie::LieAlgebra;
use crate::poly::{Context, Polynomial};
use crate::ratfun::RationalFunction;

#[derive(Debug, Clone)]
pub struct TdeSystem {
    ctx: Context,
    /// Free columns u_s, ascending: one equation du_s = sum U_{s,t} dx_t each.
    dependent: Vec<usize>,
    /// Pivot columns x_t, ascending.
    independent: Vec<usize>,
    /// p x q coefficients, rows over `dependent`, columns over `independent`.
    u: Vec<Vec<RationalFunction>>,
    /// Every denominator in `u` divides this polynomial.
    pivot_product: Polynomial,
}

impl TdeSystem {
    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn dependent(&self) -> &[usize] {
        &self.dependent
    }

    pub fn independent(&self) -> &[usize] {
        &self.independent
    }

    pub fn coefficients(&self) -> &[Vec<RationalFunction>] {
        &self.u
    }

    pub fn coefficient(&self, s: usize, t: usize) -> &RationalFunction {
        &self.u[s][t]
    }

    pub fn pivot_product(&self) -> &Polynomial {
        &self.pivot_product
    }

    pub fn num_equations(&self) -> usize {
        self.dependent.len()
    }

    /// Builds a system from explicit parts; used for hand-built examples.
    pub fn from_parts(
        ctx: Context,
        dependent: Vec<usize>,
        independent: Vec<usize>,
        u: Vec<Vec<RationalFunction>>,
    ) -> Result<Self, KernelError> {
        let n = ctx.len();
        let mut seen = vec![false; n];
        for &i in dependent.iter().chain(&independent) {
            assert!(i < n && !seen[i], "dependent/independent must partition the variables");
            seen[i] = true;
        }
        assert!(seen.iter().all(|&s| s), "dependent/independent must cover all variables");
        assert_eq!(u.len(), dependent.len());
        assert!(u.iter().all(|row| row.len() == independent.len()));
        let mut pivot_product = Polynomial::one(&ctx);
        for row in &u {
            for entry in row {
                if !entry.is_zero() && pivot_product.div_exact(entry.denom()).is_none() {
                    pivot_product = pivot_product.mul(entry.denom());
                }
            }
        }
        Ok(TdeSystem { ctx, dependent, independent, u, pivot_product })
    }

    /// All coefficients over the shared denominator: returns (P, N) with
    /// U_{s,t} = N_{s,t} / P and P the pivot product.
    fn cleared_numerators(&self) -> (Polynomial, Vec<Vec<Polynomial>>) {
        let p = self.pivot_product.clone();
        let n = self
            .u
            .iter()
            .map(|row| {
                row.iter()
                    .map(|entry| {
                        let scale = p
                            .div_exact(entry.denom())
                            .expect("denominators divide the pivot product");
                        entry.numer().mul(&scale)
                    })
                    .collect()
            })
            .collect();
        (p, n)
    }

    /// True when F solves every equation: dF/dx_t + sum_s U_{s,t} dF/du_s = 0
    /// as a rational function, for each independent variable x_t. Checked
    /// after clearing the shared denominator, so the test is polynomial.
    pub fn is_solution(&self, f: &Polynomial) -> bool {
        let (p, n) = self.cleared_numerators();
        self.independent.iter().enumerate().all(|(tcol, &t)| {
            let mut residual = f.diff(t).mul(&p);
            for (srow, &s) in self.dependent.iter().enumerate() {
                residual = residual.add(&n[srow][tcol].mul(&f.diff(s)));
            }
            residual.is_zero()
        })
    }

    /// Complete integrability: the operators D_t = d/dx_t + sum U_{s,t} d/du_s
    /// commute pairwise, i.e. D_a(U_{s,b}) = D_b(U_{s,a}) for every s and
    /// a < b. With U = N/P the identity is multiplied through by P^3 and
    /// checked as polynomials:
    ///   P (dN_b P - N_b dP) + sum_s' N_{s',a} (d_s' N_b P - N_b d_s' P)
    /// symmetric in (a, b).
    pub fn is_integrable(&self) -> bool {
        let (p, n) = self.cleared_numerators();
        let q = self.independent.len();
        let mut pairs = Vec::new();
        for a in 0..q {
            for b in a + 1..q {
                pairs.push((a, b));
            }
        }
        let apply_cleared = |tcol: usize, srow: usize, target: usize| -> Polynomial {
            // P^3 * D_{t} (N_{srow, target} / P)
            let nb = &n[srow][target];
            let t = self.independent[tcol];
            let mut acc = nb.diff(t).mul(&p).sub(&nb.mul(&p.diff(t))).mul(&p);
            for (s2, &u_var) in self.dependent.iter().enumerate() {
                let inner = nb.diff(u_var).mul(&p).sub(&nb.mul(&p.diff(u_var)));
                acc = acc.add(&n[s2][tcol].mul(&inner));
            }
            acc
        };
        let failures = exec::filter_map_collect(pairs, |(a, b)| {
            for srow in 0..self.dependent.len() {
                if apply_cleared(a, srow, b) != apply_cleared(b, srow, a) {
                    return Some((a, b, srow));
                }
            }
            None
        });
        failures.is_empty()
    }

    /// The system with denominators cleared, one line per equation.
    pub fn display_cleared(&self) -> String {
        let mut out = String::new();
        for (srow, &s) in self.dependent.iter().enumerate() {
            // Common multiplier for the row: product of distinct denominators.
            let mut clear = Polynomial::one(&self.ctx);
            for entry in &self.u[srow] {
                if !entry.is_zero() && clear.div_exact(entry.denom()).is_none() {
                    clear = clear.mul(entry.denom());
                }
            }
            let lhs = if clear == Polynomial::one(&self.ctx) {
                format!("d{}", self.ctx.name(s))
            } else {
                format!("({}) d{}", clear, self.ctx.name(s))
            };
            let mut rhs = String::new();
            for (tcol, &t) in self.independent.iter().enumerate() {
                let entry = &self.u[srow][tcol];
                if entry.is_zero() {
                    continue;
                }
                let scale = clear.div_exact(entry.denom()).expect("clear is a common multiple");
                let mut coeff = entry.numer().mul(&scale);
                // Fold a single negative term into the joiner.
                let negative_single = coeff.num_terms() == 1
                    && coeff.leading().is_some_and(|(_, c)| crate::rational::is_negative(c));
                if !rhs.is_empty() {
                    rhs.push_str(if negative_single { " - " } else { " + " });
                    if negative_single {
                        coeff = coeff.neg();
                    }
                }
                if coeff.num_terms() > 1 {
                    let _ = write!(rhs, "({}) d{}", coeff, self.ctx.name(t));
                } else {
                    let _ = write!(rhs, "{} d{}", coeff, self.ctx.name(t));
                }
            }
            if rhs.is_empty() {
                rhs.push('0');
            }
            let _ = writeln!(out, "{lhs} = {rhs}");
        }
        out
    }
}

/// Derives the total-differential system of an algebra by solving the
/// symbolic gradient system for the pivot-column partials. Columns are
/// probed left to right, so the dependent set is the last admissible one in
/// the variable order (radical coordinates when they suffice).
pub fn jacobian_system(algebra: &LieAlgebra) -> TdeSystem {
    let matrix = commutator_matrix(algebra);
    let ctx = matrix.context().clone();
    let n = algebra.dim();
    let mut a: Vec<Vec<Polynomial>> = matrix.entries().to_vec();

    // Fraction-free Gauss-Jordan: at every step each entry stays a minor of
    // the original matrix, so degrees stay bounded and divisions are exact.
    let mut prev = Polynomial::one(&ctx);
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut used_row = vec![false; n];
    for col in 0..n {
        let candidate = (0..n)
            .filter(|&i| !used_row[i] && !a[i][col].is_zero())
            .min_by(|&i, &j| {
                let (pi, pj) = (&a[i][col], &a[j][col]);
                pi.total_degree()
                    .cmp(&pj.total_degree())
                    .then_with(|| pi.leading().unwrap().0.cmp(pj.leading().unwrap().0))
                    .then(i.cmp(&j))
            });
        let Some(pr) = candidate else {
            continue; // free column
        };
        used_row[pr] = true;
        let pivot = a[pr][col].clone();
        for i in 0..n {
            if i == pr {
                continue;
            }
            let factor = a[i][col].clone();
            for j in 0..n {
                let num = pivot.mul(&a[i][j]).sub(&factor.mul(&a[pr][j]));
                a[i][j] = num
                    .div_exact(&prev)
                    .expect("fraction-free elimination: previous pivot divides exactly");
            }
        }
        prev = pivot;
        pivots.push((pr, col));
    }

    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let free_cols: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
    // Row r: a[r][col] Z_col + sum_d a[r][d] Z_d = 0, hence
    // U_{s,t} = a[r_t][d_s] / a[r_t][col_t].
    let u: Vec<Vec<RationalFunction>> = free_cols
        .iter()
        .map(|&d| {
            pivots
                .iter()
                .map(|&(r, c)| {
                    RationalFunction::new(a[r][d].clone(), a[r][c].clone())
                        .expect("pivot entries are nonzero")
                })
                .collect()
        })
        .collect();
    let mut pivot_product = Polynomial::one(&ctx);
    for &(r, c) in &pivots {
        if pivot_product.div_exact(&a[r][c]).is_none() {
            pivot_product = pivot_product.mul(&a[r][c]);
        }
    }
    TdeSystem {
        ctx,
        dependent: free_cols,
        independent: pivot_cols,
        u,
        pivot_product: pivot_product.content_normalized(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coadjoint::invariant_count;
    use crate::engine::verify_invariant;
    use crate::lie::{sl2_semidirect, LieAlgebra};
    use crate::poly::parse_polynomial;
    use crate::reference::known_invariants;

    #[test]
    fn weight_two_system_matches_hand_solution() {
        let l = sl2_semidirect(2);
        let sys = jacobian_system(&l);
        let ctx = sys.context().clone();
        // Dependent variables are v1, v2 (indices 4, 5), independent x,y,h,v0.
        assert_eq!(sys.dependent(), &[4, 5]);
        assert_eq!(sys.independent(), &[0, 1, 2, 3]);
        let p = |s: &str| parse_polynomial(&ctx, s).unwrap();
        let rf = |n: &str, d: &str| RationalFunction::new(p(n), p(d)).unwrap();
        let denom = "h*v0 + v1*x";
        // (h v0 + v1 x) dv1 = -2 v2 v0 dx + 2 v0^2 dy - v1 v0 dh + 2(v2 x + v0 y) dv0
        let expected_v1 = [
            rf("-2*v0*v2", denom),
            rf("2*v0^2", denom),
            rf("-v0*v1", denom),
            rf("2*v2*x + 2*v0*y", denom),
        ];
        // (h v0 + v1 x) dv2 = -v1 v2 dx + v0 v1 dy - v1^2/2 dh + (v1 y - h v2) dv0
        let expected_v2 = [
            rf("-v1*v2", denom),
            rf("v0*v1", denom),
            rf("-1/2*v1^2", denom),
            rf("v1*y - h*v2", denom),
        ];
        for (t, expected) in expected_v1.iter().enumerate() {
            assert_eq!(sys.coefficient(0, t), expected, "dv1 column {t}");
        }
        for (t, expected) in expected_v2.iter().enumerate() {
            assert_eq!(sys.coefficient(1, t), expected, "dv2 column {t}");
        }
    }

    #[test]
    fn abelian_system_is_empty() {
        let a = LieAlgebra::abelian(vec!["a".into(), "b".into(), "c".into()]).unwrap();
        let sys = jacobian_system(&a);
        assert_eq!(sys.independent(), &[] as &[usize]);
        assert_eq!(sys.dependent(), &[0, 1, 2]);
        assert_eq!(sys.num_equations(), 3);
        // Every polynomial solves the empty system.
        let f = parse_polynomial(&sys.context().clone(), "a*b + c^2").unwrap();
        assert!(sys.is_solution(&f));
        assert!(sys.is_integrable());
    }

    #[test]
    fn solutions_of_weight_zero_system() {
        let l = sl2_semidirect(0);
        let sys = jacobian_system(&l);
        assert_eq!(sys.num_equations(), 2);
        let ctx = sys.context().clone();
        let p = |s: &str| parse_polynomial(&ctx, s).unwrap();
        assert!(sys.is_solution(&p("4*x*y + h^2")));
        assert!(sys.is_solution(&p("v0")));
        assert!(sys.is_solution(&p("7"))); // constants always solve
        assert!(!sys.is_solution(&p("x")));
    }

    #[test]
    fn solution_check_agrees_with_verification() {
        for m in 0..=4u32 {
            let l = sl2_semidirect(m);
            let sys = jacobian_system(&l);
            assert_eq!(sys.num_equations(), invariant_count(&l), "weight {m}");
            for inv in known_invariants(m).unwrap() {
                assert!(verify_invariant(&l, &inv), "weight {m}");
                assert!(sys.is_solution(&inv), "weight {m}");
            }
            // A pivot coordinate is generally not a solution once the
            // system is nonempty.
            if !sys.independent().is_empty() {
                let x = Polynomial::var(sys.context(), sys.independent()[0]);
                assert!(!sys.is_solution(&x), "weight {m}");
            }
        }
    }

    #[test]
    fn fixture_systems_are_integrable() {
        for m in 0..=4u32 {
            let sys = jacobian_system(&sl2_semidirect(m));
            assert!(sys.is_integrable(), "weight {m}");
        }
    }

    #[test]
    fn hand_built_non_integrable_system() {
        // du = x2 dx1 + 0 dx2: mixed partials disagree (1 vs 0).
        let ctx = Context::new(vec!["x1", "x2", "u"]).unwrap();
        let x2 = parse_polynomial(&ctx, "x2").unwrap();
        let sys = TdeSystem::from_parts(
            ctx.clone(),
            vec![2],
            vec![0, 1],
            vec![vec![
                RationalFunction::from_poly(x2),
                RationalFunction::zero(&ctx),
            ]],
        )
        .unwrap();
        assert!(!sys.is_integrable());
    }

    /// For each dependent variable u_s, the cleared solution vector
    /// (Z_{u_s} = P, Z_t = -N_{s,t}, other dependents zero) must satisfy the
    /// original gradient system M . Z = 0 row by row.
    fn assert_solves_original(l: &LieAlgebra) {
        let matrix = commutator_matrix(l);
        let sys = jacobian_system(l);
        let ctx = sys.context().clone();
        let p = sys.pivot_product().clone();
        for (srow, &s) in sys.dependent().iter().enumerate() {
            let mut z = vec![Polynomial::zero(&ctx); l.dim()];
            z[s] = p.clone();
            for (tcol, &t) in sys.independent().iter().enumerate() {
                let entry = sys.coefficient(srow, tcol);
                let scale = p.div_exact(entry.denom()).expect("denominator divides");
                z[t] = entry.numer().mul(&scale).neg();
            }
            for i in 0..l.dim() {
                let mut acc = Polynomial::zero(&ctx);
                for j in 0..l.dim() {
                    acc = acc.add(&matrix.entry(i, j).mul(&z[j]));
                }
                assert!(acc.is_zero(), "row {i}, dependent {s}");
            }
        }
    }

    #[test]
    fn solutions_satisfy_the_original_system() {
        for m in 0..=5u32 {
            assert_solves_original(&sl2_semidirect(m));
        }
    }

    #[test]
    fn elimination_survives_random_antisymmetric_tables() {
        // Arbitrary bracket tables (no Jacobi requirement) stress the
        // pivoting and the exactness of the fraction-free division.
        let mut rng = crate::rng::SplitMix64::new(77);
        for round in 0..30 {
            let dim = 3 + (rng.next_u64() % 4) as usize;
            let names: Vec<String> = (0..dim).map(|i| format!("e{i}")).collect();
            let mut brackets = Vec::new();
            for i in 0..dim {
                for j in i + 1..dim {
                    let mut coeffs = Vec::new();
                    for k in 0..dim {
                        if rng.next_u64().is_multiple_of(3) {
                            let c = rng.int_in(-3, 3);
                            if c != 0 {
                                coeffs.push((k, crate::rational::rat(c)));
                            }
                        }
                    }
                    if !coeffs.is_empty() {
                        brackets.push(((i, j), coeffs));
                    }
                }
            }
            let l = LieAlgebra::new(names, brackets).unwrap();
            assert_solves_original(&l);
            let _ = round;
        }
    }

    #[test]
    fn denominators_divide_pivot_product() {
        for m in 0..=4u32 {
            let sys = jacobian_system(&sl2_semidirect(m));
            for row in sys.coefficients() {
                for entry in row {
                    assert!(
                        sys.pivot_product().div_exact(entry.denom()).is_some(),
                        "weight {m}"
                    );
                }
            }
        }
    }

    #[test]
    fn cleared_display_mentions_the_pivot_factor() {
        let sys = jacobian_system(&sl2_semidirect(2));
        let text = sys.display_cleared();
        let expected = "\
(h*v0 + x*v1) dv1 = -2*v0*v2 dx + 2*v0^2 dy - v0*v1 dh + (2*y*v0 + 2*x*v2) dv0
(h*v0 + x*v1) dv2 = -v1*v2 dx + v0*v1 dy - 1/2*v1^2 dh + (y*v1 - h*v2) dv0
";
        assert_eq!(text, expected);
    }
}

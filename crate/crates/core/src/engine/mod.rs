//! Invariant search by degree-bounded linear ansatz.
//!
//! A generator maps a homogeneous polynomial to one of the same degree (its
//! coefficients are linear, differentiation drops one), so the determining
//! system block-diagonalizes by degree: each degree is one exact nullspace
//! problem over the monomial coefficients, and the per-degree solves are
//! independent of each other.

pub mod dependence;

pub use dependence::{abelian_dependence_report, radical_only_report, AbelianDependenceReport, RadicalOnlyReport};

use crate::coadjoint::{infinitesimal_generators, invariant_count, LinearVectorField};
use crate::exec;
use crate::lie::LieAlgebra;
use crate::linalg::{self, RowEchelon};
use crate::poly::{Context, Monomial, Polynomial};
use crate::rational::Rational;
use crate::rng::SplitMix64;
use std::collections::BTreeMap;

/// Applies a linear vector field to a polynomial as a derivation.
pub fn apply_field(field: &LinearVectorField, f: &Polynomial) -> Polynomial {
    field.apply(f)
}

/// True when every infinitesimal generator annihilates `f` exactly.
pub fn verify_invariant(algebra: &LieAlgebra, f: &Polynomial) -> bool {
    infinitesimal_generators(algebra)
        .iter()
        .all(|g| g.apply(f).is_zero())
}

/// Search parameters. `trials`/`seed` drive the functional-independence
/// estimate; `restrict` limits ansatz monomials to a variable subset.
#[derive(Debug, Clone)]
pub struct FindOptions {
    pub max_degree: u32,
    pub restrict: Option<Vec<usize>>,
    pub trials: usize,
    pub seed: u64,
}

impl FindOptions {
    pub fn new(max_degree: u32) -> Self {
        FindOptions { max_degree, restrict: None, trials: 8, seed: 0 }
    }

    pub fn restrict(mut self, vars: Vec<usize>) -> Self {
        self.restrict = Some(vars);
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

/// A set of exact invariants of one algebra, with the degree of each member
/// and a lower bound on how many are functionally independent.
#[derive(Debug, Clone)]
pub struct InvariantSet {
    algebra: LieAlgebra,
    polys: Vec<Polynomial>,
    degrees: Vec<u32>,
    independent: usize,
}

impl InvariantSet {
    pub fn new(algebra: LieAlgebra, polys: Vec<Polynomial>, trials: usize, seed: u64) -> Self {
        let degrees = polys.iter().map(Polynomial::total_degree).collect();
        let independent = independent_count(&polys, trials, seed);
        InvariantSet { algebra, polys, degrees, independent }
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn independent_count(&self) -> usize {
        self.independent
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// Members of one degree.
    pub fn of_degree(&self, degree: u32) -> Vec<&Polynomial> {
        self.polys
            .iter()
            .zip(&self.degrees)
            .filter(|(_, &d)| d == degree)
            .map(|(p, _)| p)
            .collect()
    }
}

/// All monomials of total degree `degree` in the chosen variables, as
/// full-width exponent vectors, in descending monomial order.
fn monomials_of_degree(ctx: &Context, vars: &[usize], degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; ctx.len()];
    fn recurse(vars: &[usize], pos: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if pos + 1 == vars.len() {
            exps[vars[pos]] = left;
            out.push(Monomial::new(exps.clone()));
            exps[vars[pos]] = 0;
            return;
        }
        for e in (0..=left).rev() {
            exps[vars[pos]] = e;
            recurse(vars, pos + 1, left - e, exps, out);
            exps[vars[pos]] = 0;
        }
    }
    if vars.is_empty() || degree == 0 {
        return out;
    }
    recurse(vars, 0, degree, &mut exps, &mut out);
    out.sort();
    out.reverse();
    out
}

/// Solves the determining system restricted to one homogeneous degree:
/// unknowns are coefficients of the degree-`degree` monomials in `vars`,
/// equations force every generator image to vanish coefficientwise.
fn solve_degree(
    ctx: &Context,
    generators: &[LinearVectorField],
    vars: &[usize],
    degree: u32,
) -> Vec<Polynomial> {
    let unknowns = monomials_of_degree(ctx, vars, degree);
    if unknowns.is_empty() {
        return Vec::new();
    }
    let mut echelon = RowEchelon::new(unknowns.len());
    for generator in generators {
        if generator.is_zero() {
            continue;
        }
        // rows[r][u] = coefficient of result-monomial r in generator(mono_u)
        let mut rows: BTreeMap<Monomial, Vec<(usize, Rational)>> = BTreeMap::new();
        for (u, mono) in unknowns.iter().enumerate() {
            let image = generator.apply(&Polynomial::from_term(ctx, mono.clone(), num_traits::One::one()));
            for (r, c) in image.terms() {
                rows.entry(r.clone()).or_default().push((u, c.clone()));
            }
        }
        for sparse in rows.into_values() {
            let mut row = vec![Rational::from_integer(0.into()); unknowns.len()];
            for (u, c) in sparse {
                row[u] = c;
            }
            echelon.insert(row);
        }
    }
    echelon
        .nullspace()
        .into_iter()
        .map(|coeffs| {
            let mut p = Polynomial::zero(ctx);
            for (u, c) in coeffs.into_iter().enumerate() {
                if !num_traits::Zero::is_zero(&c) {
                    p = p.add(&Polynomial::from_term(ctx, unknowns[u].clone(), c));
                }
            }
            p.content_normalized()
        })
        .collect()
}

/// Degree-by-degree ansatz search. Per-degree solves are independent and run
/// in parallel under the `parallel` feature; results are merged in degree
/// order and the search stops once the functional-independence estimate
/// reaches the invariant count of the algebra, so both builds agree.
pub fn find_invariants(algebra: &LieAlgebra, options: &FindOptions) -> InvariantSet {
    let ctx = algebra.context();
    let generators = infinitesimal_generators(algebra);
    let all_vars: Vec<usize> = (0..algebra.dim()).collect();
    let vars = options.restrict.as_deref().unwrap_or(&all_vars);
    let target = invariant_count(algebra);

    let mut polys: Vec<Polynomial> = Vec::new();
    let mut independent = 0;

    let merge = |found: Vec<Polynomial>, polys: &mut Vec<Polynomial>, independent: &mut usize| -> bool {
        polys.extend(found);
        *independent = independent_count(polys, options.trials, options.seed);
        *independent >= target
    };

    #[cfg(feature = "parallel")]
    {
        let degrees: Vec<u32> = (1..=options.max_degree).collect();
        let solved = exec::map_collect(degrees, |d| solve_degree(&ctx, &generators, vars, d));
        for found in solved {
            if merge(found, &mut polys, &mut independent) {
                break;
            }
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        for d in 1..=options.max_degree {
            let found = solve_degree(&ctx, &generators, vars, d);
            if merge(found, &mut polys, &mut independent) {
                break;
            }
        }
    }

    let degrees = polys.iter().map(Polynomial::total_degree).collect();
    InvariantSet { algebra: algebra.clone(), polys, degrees, independent }
}

/// Estimated number of functionally independent polynomials: the maximum
/// over seeded sample points of the rank of the Jacobian matrix evaluated
/// there. A lower bound that is exact at generic points.
pub fn independent_count(polys: &[Polynomial], trials: usize, seed: u64) -> usize {
    if polys.is_empty() {
        return 0;
    }
    let nvars = polys[0].context().len();
    let jacobian: Vec<Vec<Polynomial>> = polys
        .iter()
        .map(|p| (0..nvars).map(|j| p.diff(j)).collect())
        .collect();
    let mut rng = SplitMix64::new(seed);
    let mut best = 0;
    for _ in 0..trials.max(1) {
        let point = rng.rational_point(nvars);
        let rows: Vec<Vec<Rational>> = jacobian
            .iter()
            .map(|row| row.iter().map(|p| p.eval(&point)).collect())
            .collect();
        best = best.max(linalg::rank(&rows));
        if best == polys.len().min(nvars) {
            break;
        }
    }
    best
}

// ---------------------------------------------------------------------------
// Inter-reduction
// ---------------------------------------------------------------------------

/// Products of `members` (with repetition) of total degree at most `cap`,
/// excluding the empty product.
fn degree_bounded_products(members: &[(Polynomial, u32)], cap: u32) -> Vec<Polynomial> {
    let mut out = Vec::new();
    fn recurse(
        members: &[(Polynomial, u32)],
        from: usize,
        acc: &Polynomial,
        acc_deg: u32,
        cap: u32,
        out: &mut Vec<Polynomial>,
    ) {
        for i in from..members.len() {
            let (p, d) = &members[i];
            if acc_deg + d > cap {
                continue;
            }
            let next = acc.mul(p);
            out.push(next.clone());
            recurse(members, i, &next, acc_deg + d, cap, out);
        }
    }
    if let Some((first, _)) = members.first() {
        let one = Polynomial::one(first.context());
        recurse(members, 0, &one, 0, cap, &mut out);
    }
    out
}

/// Normal form of `f` modulo the span of `basis`, with reducible columns
/// chosen so monomials involving `prefer_eliminate` variables go first.
fn reduce_modulo(f: &Polynomial, basis: &[Polynomial], prefer_eliminate: &[usize]) -> Polynomial {
    if basis.is_empty() {
        return f.clone();
    }
    let ctx = f.context().clone();
    // Column order: preferred-variable monomials first, descending monomial
    // order within each group.
    let mut columns: Vec<Monomial> = basis
        .iter()
        .chain(std::iter::once(f))
        .flat_map(|p| p.terms().map(|(m, _)| m.clone()))
        .collect();
    columns.sort();
    columns.dedup();
    columns.sort_by(|a, b| {
        let pa = prefer_eliminate.iter().any(|&v| a.exponents()[v] > 0);
        let pb = prefer_eliminate.iter().any(|&v| b.exponents()[v] > 0);
        pb.cmp(&pa).then_with(|| b.cmp(a))
    });
    let index: BTreeMap<&Monomial, usize> = columns.iter().zip(0..).collect();
    let densify = |p: &Polynomial| {
        let mut row = vec![Rational::from_integer(0.into()); columns.len()];
        for (m, c) in p.terms() {
            row[index[m]] = c.clone();
        }
        row
    };
    let mut rows: Vec<Vec<Rational>> = basis.iter().map(densify).collect();
    let pivots = linalg::rref(&mut rows);
    let mut vec = densify(f);
    for (row, &pc) in rows.iter().zip(&pivots) {
        if !num_traits::Zero::is_zero(&vec[pc]) {
            let factor = vec[pc].clone();
            for (x, y) in vec.iter_mut().zip(row) {
                let delta = &factor * y;
                *x = &*x - &delta;
            }
        }
    }
    let mut out = Polynomial::zero(&ctx);
    for (j, c) in vec.into_iter().enumerate() {
        if !num_traits::Zero::is_zero(&c) {
            out = out.add(&Polynomial::from_term(&ctx, columns[j].clone(), c));
        }
    }
    out
}

/// Simplifies a set by reducing each member modulo products of the kept
/// strictly-lower-degree members; members that reduce to zero are dropped,
/// survivors are content-normalized and re-verified. `prefer_eliminate`
/// steers the reduction toward removing those variables' monomials first.
pub fn inter_reduce(set: &InvariantSet, prefer_eliminate: &[usize]) -> InvariantSet {
    let mut ordered: Vec<Polynomial> = set.polys.to_vec();
    ordered.sort_by_key(Polynomial::total_degree);
    let mut kept: Vec<(Polynomial, u32)> = Vec::new();
    for f in &ordered {
        let degree = f.total_degree();
        let lower: Vec<(Polynomial, u32)> = kept
            .iter()
            .filter(|(_, d)| *d < degree)
            .cloned()
            .collect();
        let products = degree_bounded_products(&lower, degree);
        let reduced = reduce_modulo(f, &products, prefer_eliminate);
        if reduced.is_zero() {
            continue;
        }
        // Members that needed no reduction pass through untouched; only a
        // genuinely reduced member is renormalized.
        let reduced = if &reduced == f { f.clone() } else { reduced.content_normalized() };
        debug_assert!(verify_invariant(&set.algebra, &reduced));
        kept.push((reduced.clone(), reduced.total_degree()));
    }
    let polys: Vec<Polynomial> = kept.into_iter().map(|(p, _)| p).collect();
    let degrees = polys.iter().map(Polynomial::total_degree).collect();
    let independent = independent_count(&polys, 8, 0);
    InvariantSet { algebra: set.algebra.clone(), polys, degrees, independent }
}

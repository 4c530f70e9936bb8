//! The coadjoint side of an algebra: linear infinitesimal generators on the
//! dual space, the symbolic commutator matrix, its generic rank, and the
//! resulting invariant count.

use crate::error::EngineError;
use crate::lie::LieAlgebra;
use crate::linalg;
use crate::poly::{Context, Polynomial};
use crate::rational::Rational;

/// A vector field with linear coefficients, one polynomial per partial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearVectorField {
    ctx: Context,
    coeffs: Vec<Polynomial>,
}

impl LinearVectorField {
    pub fn new(ctx: Context, coeffs: Vec<Polynomial>) -> Self {
        assert_eq!(coeffs.len(), ctx.len());
        debug_assert!(coeffs.iter().all(|c| c.is_zero() || c.total_degree() <= 1));
        LinearVectorField { ctx, coeffs }
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Polynomial::is_zero)
    }

    /// Applies the field as a derivation: sum of coeff_j * dF/dx_j.
    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero(&self.ctx);
        for (j, coeff) in self.coeffs.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            acc = acc.add(&coeff.mul(&f.diff(j)));
        }
        acc
    }

    /// Commutator of linear fields as linear operators: with U(p) = A p and
    /// V(p) = B p this is the field of AB - BA, whose l-th coefficient is
    /// sum_j (V_j d U_l/dx_j - U_j d V_l/dx_j).
    pub fn commutator(&self, other: &LinearVectorField) -> LinearVectorField {
        let coeffs = (0..self.ctx.len())
            .map(|l| {
                let mut acc = Polynomial::zero(&self.ctx);
                for j in 0..self.ctx.len() {
                    acc = acc.add(&other.coeffs[j].mul(&self.coeffs[l].diff(j)));
                    acc = acc.sub(&self.coeffs[j].mul(&other.coeffs[l].diff(j)));
                }
                acc
            })
            .collect();
        LinearVectorField { ctx: self.ctx.clone(), coeffs }
    }

    pub fn scale(&self, c: &Rational) -> LinearVectorField {
        LinearVectorField {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn add(&self, other: &LinearVectorField) -> LinearVectorField {
        LinearVectorField {
            ctx: self.ctx.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn zero(ctx: &Context) -> LinearVectorField {
        LinearVectorField {
            ctx: ctx.clone(),
            coeffs: vec![Polynomial::zero(ctx); ctx.len()],
        }
    }
}

/// The antisymmetric matrix of bracket coordinates: entry (i, j) is the
/// degree-one polynomial sum_k c_ij^k x_k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutatorMatrix {
    ctx: Context,
    entries: Vec<Vec<Polynomial>>,
}

impl CommutatorMatrix {
    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<Polynomial>] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i][j]
    }

    /// Rectangular block of rows x cols, in the given index order.
    pub fn block(&self, rows: &[usize], cols: &[usize]) -> Vec<Vec<Polynomial>> {
        rows.iter()
            .map(|&i| cols.iter().map(|&j| self.entries[i][j].clone()).collect())
            .collect()
    }

    /// Numeric evaluation of every entry at a floating-point point.
    pub fn eval_f64(&self, point: &[f64]) -> Vec<Vec<f64>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|p| p.eval_f64(point)).collect())
            .collect()
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Vec<Vec<Rational>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|p| p.eval(point)).collect())
            .collect()
    }
}

pub fn commutator_matrix(algebra: &LieAlgebra) -> CommutatorMatrix {
    let ctx = algebra.context();
    let n = algebra.dim();
    let entries = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut p = Polynomial::zero(&ctx);
                    for (k, c) in algebra.bracket_sparse(i, j) {
                        p = p.add(&Polynomial::var(&ctx, k).scale(&c));
                    }
                    p
                })
                .collect()
        })
        .collect();
    CommutatorMatrix { ctx, entries }
}

/// Infinitesimal generators of the coadjoint action, one per basis vector:
/// the i-th field has coefficient -sum_k c_ij^k x_k for the j-th partial.
/// The leading minus sign is kept; invariance does not see it, but the
/// homomorphism identity below is stated for this normalization.
pub fn infinitesimal_generators(algebra: &LieAlgebra) -> Vec<LinearVectorField> {
    let matrix = commutator_matrix(algebra);
    let ctx = matrix.context().clone();
    (0..algebra.dim())
        .map(|i| {
            let coeffs = (0..algebra.dim())
                .map(|j| matrix.entry(i, j).neg())
                .collect();
            LinearVectorField::new(ctx.clone(), coeffs)
        })
        .collect()
}

/// Checks [v_i, v_j] = sum_k c_ij^k v_k symbolically for every pair;
/// returns the failing pairs (empty for every Lie algebra).
pub fn generator_homomorphism_failures(algebra: &LieAlgebra) -> Vec<(usize, usize)> {
    let generators = infinitesimal_generators(algebra);
    let ctx = generators
        .first()
        .map(|g| g.context().clone())
        .unwrap_or_else(|| algebra.context());
    let mut failures = Vec::new();
    for i in 0..algebra.dim() {
        for j in i + 1..algebra.dim() {
            let lhs = generators[i].commutator(&generators[j]);
            let mut rhs = LinearVectorField::zero(&ctx);
            for (k, c) in algebra.bracket_sparse(i, j) {
                rhs = rhs.add(&generators[k].scale(&c));
            }
            if lhs != rhs {
                failures.push((i, j));
            }
        }
    }
    failures
}

/// Generic rank of the commutator matrix over the fraction field.
pub fn commutator_rank(algebra: &LieAlgebra) -> usize {
    let matrix = commutator_matrix(algebra);
    linalg::generic_rank_symbolic(matrix.entries(), matrix.context())
}

/// Number of functionally independent invariants: dim L minus the generic
/// rank of the commutator matrix.
pub fn invariant_count(algebra: &LieAlgebra) -> usize {
    algebra.dim() - commutator_rank(algebra)
}

/// Determinant of the leading 6x6 block of the commutator matrix of the
/// weight-m semidirect fixture (rows and columns x, y, h, v0, v1, v2).
/// Defined for m >= 3, where the block is square inside the full matrix.
pub fn leading_block_det(m: u32) -> Result<Polynomial, EngineError> {
    if m < 3 {
        return Err(EngineError::RadicalTooSmall(m));
    }
    let algebra = crate::lie::sl2_semidirect(m);
    let matrix = commutator_matrix(&algebra);
    let idx: Vec<usize> = (0..6).collect();
    let block = matrix.block(&idx, &idx);
    Ok(linalg::symbolic_det(&block, matrix.context()))
}

//! Floating-point cross-validation.
//!
//! Exact invariants must stay constant along the flows of the coadjoint
//! generator fields. The fields are linear, so fixed-step classical
//! Runge-Kutta on a short horizon is plenty; the measured relative drift of
//! an exact invariant sits many orders below that of a non-invariant.

use crate::coadjoint::{commutator_matrix, infinitesimal_generators};
use crate::error::OracleError;
use crate::exec;
use crate::lie::LieAlgebra;
use crate::poly::Polynomial;

pub const DEFAULT_RANK_TOL: f64 = 1e-9;

/// A fixed-step integration record: steps + 1 points, all finite.
#[derive(Debug, Clone)]
pub struct FlowTrajectory {
    pub points: Vec<Vec<f64>>,
    pub field_index: usize,
    pub step: f64,
    pub steps: usize,
}

fn validate_start(algebra: &LieAlgebra, start: &[f64], step: f64, steps: usize) -> Result<(), OracleError> {
    if start.len() != algebra.dim() {
        return Err(OracleError::BadStartDimension { got: start.len(), expected: algebra.dim() });
    }
    for (index, &value) in start.iter().enumerate() {
        if !(-2.0..=2.0).contains(&value) {
            return Err(OracleError::StartOutOfRange { index, value });
        }
    }
    let horizon = step * steps as f64;
    if horizon > 1.0 + 1e-12 {
        return Err(OracleError::HorizonTooLong(horizon));
    }
    Ok(())
}

/// Integrates the flow of one generator field with classical fourth-order
/// Runge-Kutta at a fixed step.
pub fn flow_trajectory(
    algebra: &LieAlgebra,
    field_index: usize,
    start: &[f64],
    step: f64,
    steps: usize,
) -> Result<FlowTrajectory, OracleError> {
    if field_index >= algebra.dim() {
        return Err(OracleError::FieldOutOfRange { index: field_index, dim: algebra.dim() });
    }
    validate_start(algebra, start, step, steps)?;
    let field = &infinitesimal_generators(algebra)[field_index];
    let coeffs: Vec<Polynomial> = field.coeffs().to_vec();
    let n = algebra.dim();
    let eval = |x: &[f64]| -> Vec<f64> { coeffs.iter().map(|c| c.eval_f64(x)).collect() };

    let mut points = Vec::with_capacity(steps + 1);
    let mut x = start.to_vec();
    points.push(x.clone());
    for s in 0..steps {
        let k1 = eval(&x);
        let x2: Vec<f64> = (0..n).map(|i| x[i] + 0.5 * step * k1[i]).collect();
        let k2 = eval(&x2);
        let x3: Vec<f64> = (0..n).map(|i| x[i] + 0.5 * step * k2[i]).collect();
        let k3 = eval(&x3);
        let x4: Vec<f64> = (0..n).map(|i| x[i] + step * k3[i]).collect();
        let k4 = eval(&x4);
        for i in 0..n {
            x[i] += step / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(OracleError::NonFiniteState { step: s });
        }
        points.push(x.clone());
    }
    Ok(FlowTrajectory { points, field_index, step, steps })
}

/// Maximum relative drift of `f` along the flow of one generator field:
/// max over the trajectory of |f(x(t)) - f(x(0))| / max(1, |f(x(0))|).
pub fn flow_drift(
    algebra: &LieAlgebra,
    f: &Polynomial,
    field_index: usize,
    start: &[f64],
    step: f64,
    steps: usize,
) -> Result<f64, OracleError> {
    let trajectory = flow_trajectory(algebra, field_index, start, step, steps)?;
    let initial = f.eval_f64(&trajectory.points[0]);
    let scale = initial.abs().max(1.0);
    let drift = trajectory
        .points
        .iter()
        .map(|p| (f.eval_f64(p) - initial).abs() / scale)
        .fold(0.0, f64::max);
    Ok(drift)
}

/// Largest drift of `f` over all generator fields from one start point.
pub fn max_flow_drift(
    algebra: &LieAlgebra,
    f: &Polynomial,
    start: &[f64],
    step: f64,
    steps: usize,
) -> Result<f64, OracleError> {
    let fields: Vec<usize> = (0..algebra.dim()).collect();
    let drifts = exec::map_collect(fields, |i| flow_drift(algebra, f, i, start, step, steps));
    let mut best = 0.0f64;
    for d in drifts {
        best = best.max(d?);
    }
    Ok(best)
}

/// Rank of the commutator matrix evaluated at a floating-point point, by
/// complete-pivoting elimination. Pivots below `tol` times the first pivot
/// magnitude count as zero. Never exceeds the symbolic generic rank.
pub fn numeric_rank_at(algebra: &LieAlgebra, point: &[f64], tol: f64) -> usize {
    assert!(tol > 0.0, "tolerance must be positive");
    let mut a = commutator_matrix(algebra).eval_f64(point);
    let n = a.len();
    let mut rank = 0;
    let mut reference = 0.0f64;
    for step in 0..n {
        let mut best = (step, step, 0.0f64);
        for i in step..n {
            for j in step..n {
                if a[i][j].abs() > best.2 {
                    best = (i, j, a[i][j].abs());
                }
            }
        }
        let (pi, pj, magnitude) = best;
        if step == 0 {
            reference = magnitude;
        }
        if magnitude == 0.0 || magnitude < tol * reference {
            break;
        }
        a.swap(step, pi);
        for row in a.iter_mut() {
            row.swap(step, pj);
        }
        let pivot = a[step][step];
        for i in step + 1..n {
            let factor = a[i][step] / pivot;
            for j in step..n {
                a[i][j] -= factor * a[step][j];
            }
        }
        rank += 1;
    }
    rank
}

//! Lie algebras by structure constants, and the constructions used
//! throughout the crate: sl(2), its irreducible modules, semi-direct sums,
//! and the structural predicates (Jacobi identity, derived subalgebra,
//! perfectness, trivial-representation detection).

pub mod json;

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::LieError;
use crate::exec;
use crate::linalg;
use crate::poly::Context;
use crate::rational::{rat, ratio, Rational};

pub type Matrix = Vec<Vec<Rational>>;

/// Bracket table for construction: ((i, j), sparse target coefficients),
/// with i < j.
pub type BracketSpec = Vec<((usize, usize), Vec<(usize, Rational)>)>;

/// A finite-dimensional Lie algebra over the rationals, stored as sparse
/// structure constants for index pairs i < j only; the i > j half is
/// synthesized by antisymmetry on read.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    basis: Vec<String>,
    brackets: BTreeMap<(usize, usize), Vec<(usize, Rational)>>,
}

impl LieAlgebra {
    pub fn new(basis: Vec<String>, brackets: BracketSpec) -> Result<Self, LieError> {
        let dim = basis.len();
        // Reuse the polynomial-context validation: distinct, well-formed names.
        Context::new(basis.clone()).map_err(LieError::Kernel)?;
        let mut stored = BTreeMap::new();
        for ((i, j), coeffs) in brackets {
            if i >= j {
                return Err(LieError::BadBracketIndex { i, j });
            }
            if j >= dim {
                return Err(LieError::IndexOutOfRange { index: j, dim });
            }
            let mut clean: Vec<(usize, Rational)> = Vec::new();
            for (k, c) in coeffs {
                if k >= dim {
                    return Err(LieError::IndexOutOfRange { index: k, dim });
                }
                if !c.is_zero() {
                    clean.push((k, c));
                }
            }
            clean.sort_by_key(|(k, _)| *k);
            if stored.insert((i, j), clean).is_some() {
                return Err(LieError::DuplicateBracket { i, j });
            }
        }
        stored.retain(|_, v: &mut Vec<(usize, Rational)>| !v.is_empty());
        Ok(LieAlgebra { dim, basis, brackets: stored })
    }

    pub fn abelian(basis: Vec<String>) -> Result<Self, LieError> {
        LieAlgebra::new(basis, Vec::new())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn basis_name(&self, i: usize) -> &str {
        &self.basis[i]
    }

    /// The polynomial context whose variables are the basis names.
    pub fn context(&self) -> Context {
        Context::new(self.basis.clone()).expect("basis names validated at construction")
    }

    pub fn stored_brackets(&self) -> impl Iterator<Item = (&(usize, usize), &Vec<(usize, Rational)>)> {
        self.brackets.iter()
    }

    /// Structure constants of [e_i, e_j] as a sparse vector; antisymmetry is
    /// synthesized for i > j and the diagonal is zero.
    pub fn bracket_sparse(&self, i: usize, j: usize) -> Vec<(usize, Rational)> {
        if i == j {
            return Vec::new();
        }
        let (a, b, flip) = if i < j { (i, j, false) } else { (j, i, true) };
        let Some(coeffs) = self.brackets.get(&(a, b)) else {
            return Vec::new();
        };
        coeffs
            .iter()
            .map(|(k, c)| (*k, if flip { -c.clone() } else { c.clone() }))
            .collect()
    }

    /// [e_i, e_j] as a dense coefficient vector.
    pub fn bracket(&self, i: usize, j: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim];
        for (k, c) in self.bracket_sparse(i, j) {
            v[k] = c;
        }
        v
    }

    /// Bracket of arbitrary coefficient vectors.
    pub fn bracket_vectors(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for i in 0..self.dim {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if v[j].is_zero() {
                    continue;
                }
                for (k, c) in self.bracket_sparse(i, j) {
                    out[k] += &u[i] * &v[j] * c;
                }
            }
        }
        out
    }

    /// Exhaustive Jacobi check over all basis triples i < j < k.
    pub fn jacobi_report(&self) -> JacobiReport {
        let mut triples = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in j + 1..self.dim {
                    triples.push([i, j, k]);
                }
            }
        }
        let failures = exec::filter_map_collect(triples, |[i, j, k]| {
            let mut sum = vec![Rational::zero(); self.dim];
            for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                let inner = self.bracket(a, b);
                let outer = self.bracket_vectors(&inner, &unit(self.dim, c));
                for (s, x) in sum.iter_mut().zip(outer) {
                    *s += x;
                }
            }
            sum.iter().any(|x| !x.is_zero()).then_some([i, j, k])
        });
        JacobiReport { ok: failures.is_empty(), failures }
    }

    /// Echelonized span of all brackets [e_i, e_j].
    pub fn derived_subalgebra(&self) -> SubspaceBasis {
        let mut rows = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let v = self.bracket(i, j);
                if v.iter().any(|x| !x.is_zero()) {
                    rows.push(v);
                }
            }
        }
        SubspaceBasis::from_spanning(self.dim, rows)
    }

    /// True when the derived subalgebra is the whole algebra.
    pub fn is_perfect(&self) -> bool {
        self.derived_subalgebra().dim() == self.dim
    }
}

fn unit(dim: usize, k: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); dim];
    v[k] = Rational::one();
    v
}

/// Outcome of the exhaustive Jacobi check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiReport {
    pub ok: bool,
    pub failures: Vec<[usize; 3]>,
}

/// An echelonized subspace of an ambient coordinate space. The reduced
/// echelon form makes equal subspaces structurally equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceBasis {
    ambient_dim: usize,
    vectors: Vec<Vec<Rational>>,
}

impl SubspaceBasis {
    pub fn from_spanning(ambient_dim: usize, rows: Vec<Vec<Rational>>) -> Self {
        let mut rows = rows;
        let pivots = linalg::rref(&mut rows);
        rows.truncate(pivots.len());
        SubspaceBasis { ambient_dim, vectors: rows }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn vectors(&self) -> &[Vec<Rational>] {
        &self.vectors
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

// ---------------------------------------------------------------------------
// sl(2) and its irreducible modules
// ---------------------------------------------------------------------------

/// The standard 3-dimensional simple algebra with basis (x, y, h) and
/// relations `[h,x] = 2x`, `[h,y] = -2y`, `[x,y] = h`.
pub fn sl2() -> LieAlgebra {
    let basis = vec!["x".to_string(), "y".to_string(), "h".to_string()];
    // Stored pairs are (x,y), (x,h), (y,h); antisymmetry gives the rest.
    let brackets = vec![
        ((0, 1), vec![(2, rat(1))]),  // [x,y] = h
        ((0, 2), vec![(0, rat(-2))]), // [x,h] = -2x
        ((1, 2), vec![(1, rat(2))]),  // [y,h] = 2y
    ];
    LieAlgebra::new(basis, brackets).expect("sl2 table is well-formed")
}

/// Action of the sl(2) basis (x, y, h) on a module, one matrix each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleAction {
    module_dim: usize,
    x: Matrix,
    y: Matrix,
    h: Matrix,
}

impl ModuleAction {
    pub fn new(x: Matrix, y: Matrix, h: Matrix) -> Result<Self, LieError> {
        let d = h.len();
        for (index, m) in [&x, &y, &h].into_iter().enumerate() {
            if m.len() != d || m.iter().any(|row| row.len() != d) {
                return Err(LieError::BadActionShape {
                    index,
                    rows: m.len(),
                    cols: m.first().map_or(0, Vec::len),
                    dim: d,
                });
            }
        }
        let action = ModuleAction { module_dim: d, x, y, h };
        action.check_representation()?;
        Ok(action)
    }

    pub fn module_dim(&self) -> usize {
        self.module_dim
    }

    /// Matrices in the sl(2) basis order (x, y, h).
    pub fn matrices(&self) -> [&Matrix; 3] {
        [&self.x, &self.y, &self.h]
    }

    /// The defining matrix identities: [pi(h), pi(x)] = 2 pi(x),
    /// [pi(h), pi(y)] = -2 pi(y), [pi(x), pi(y)] = pi(h).
    fn check_representation(&self) -> Result<(), LieError> {
        let checks: [(&Matrix, &Matrix, Matrix, &str, &str); 3] = [
            (&self.h, &self.x, mat_scale(&self.x, &rat(2)), "h", "x"),
            (&self.h, &self.y, mat_scale(&self.y, &rat(-2)), "h", "y"),
            (&self.x, &self.y, self.h.clone(), "x", "y"),
        ];
        for (a, b, expected, an, bn) in checks {
            if mat_sub(&mat_mul(a, b), &mat_mul(b, a)) != expected {
                return Err(LieError::NotARepresentation { a: an.to_string(), b: bn.to_string() });
            }
        }
        Ok(())
    }
}

/// The irreducible sl(2)-module of highest weight `m` (dimension m + 1), in
/// the weight basis v_0, ..., v_m:
/// h.v_i = (m - 2i) v_i, y.v_i = (i+1) v_{i+1}, x.v_i = (m - i + 1) v_{i-1}.
pub fn sl2_irreducible_action(m: u32) -> ModuleAction {
    let d = m as usize + 1;
    let mut x = zeros(d);
    let mut y = zeros(d);
    let mut h = zeros(d);
    for i in 0..d {
        h[i][i] = rat(m as i64 - 2 * i as i64);
        if i + 1 < d {
            y[i + 1][i] = rat(i as i64 + 1);
            x[i][i + 1] = rat(m as i64 - (i as i64 + 1) + 1);
        }
    }
    ModuleAction::new(x, y, h).expect("weight-basis action is a representation")
}

// ---------------------------------------------------------------------------
// Semi-direct sums
// ---------------------------------------------------------------------------

/// Builds S + R with `[s_i, r_j]` = `action[i]` applied to `r_j`, keeping the
/// internal brackets of both summands. The action matrices must represent S
/// and act by derivations of R; both properties are checked eagerly.
pub fn semidirect_sum(s: &LieAlgebra, r: &LieAlgebra, action: &[Matrix]) -> Result<LieAlgebra, LieError> {
    let ns = s.dim();
    let nr = r.dim();
    if action.len() != ns {
        return Err(LieError::BadActionCount { expected: ns, got: action.len() });
    }
    for (index, m) in action.iter().enumerate() {
        if m.len() != nr || m.iter().any(|row| row.len() != nr) {
            return Err(LieError::BadActionShape {
                index,
                rows: m.len(),
                cols: m.first().map_or(0, Vec::len),
                dim: nr,
            });
        }
    }
    // Representation property: pi([s_i, s_j]) = [pi(s_i), pi(s_j)].
    for i in 0..ns {
        for j in i + 1..ns {
            let mut expected = zeros(nr);
            for (k, c) in s.bracket_sparse(i, j) {
                expected = mat_add(&expected, &mat_scale(&action[k], &c));
            }
            let commutator = mat_sub(&mat_mul(&action[i], &action[j]), &mat_mul(&action[j], &action[i]));
            if commutator != expected {
                return Err(LieError::NotARepresentation {
                    a: s.basis_name(i).to_string(),
                    b: s.basis_name(j).to_string(),
                });
            }
        }
    }
    // Derivation property: pi(z)[u,v] = [pi(z)u, v] + [u, pi(z)v] on R.
    for z in 0..ns {
        for u in 0..nr {
            for v in u + 1..nr {
                let lhs = mat_apply(&action[z], &r.bracket(u, v));
                let pu = mat_column(&action[z], u);
                let pv = mat_column(&action[z], v);
                let rhs = add_vec(
                    &r.bracket_vectors(&pu, &unit(nr, v)),
                    &r.bracket_vectors(&unit(nr, u), &pv),
                );
                if lhs != rhs {
                    return Err(LieError::NotADerivation {
                        z: s.basis_name(z).to_string(),
                        u: r.basis_name(u).to_string(),
                        v: r.basis_name(v).to_string(),
                    });
                }
            }
        }
    }
    let mut basis = s.basis().to_vec();
    basis.extend(r.basis().iter().cloned());
    let mut brackets = Vec::new();
    for (&(i, j), coeffs) in s.stored_brackets() {
        brackets.push(((i, j), coeffs.clone()));
    }
    for (&(i, j), coeffs) in r.stored_brackets() {
        let shifted = coeffs.iter().map(|(k, c)| (k + ns, c.clone())).collect();
        brackets.push(((i + ns, j + ns), shifted));
    }
    for i in 0..ns {
        for j in 0..nr {
            let col = mat_column(&action[i], j);
            let coeffs: Vec<(usize, Rational)> = col
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k + ns, c))
                .collect();
            if !coeffs.is_empty() {
                brackets.push(((i, ns + j), coeffs));
            }
        }
    }
    LieAlgebra::new(basis, brackets)
}

/// The fixture family: sl(2) acting irreducibly on an abelian radical of
/// dimension m + 1, basis (x, y, h, v0, ..., vm).
pub fn sl2_semidirect(m: u32) -> LieAlgebra {
    let s = sl2();
    let names: Vec<String> = (0..=m).map(|i| format!("v{i}")).collect();
    let r = LieAlgebra::abelian(names).expect("radical basis names are valid");
    let action = sl2_irreducible_action(m);
    let [x, y, h] = action.matrices();
    semidirect_sum(&s, &r, &[x.clone(), y.clone(), h.clone()])
        .expect("irreducible action on an abelian radical always satisfies the checks")
}

// ---------------------------------------------------------------------------
// Trivial-representation detection
// ---------------------------------------------------------------------------

/// Fixed subspace and image span of an sl(2) action on its module:
/// `fixed` is the common kernel of the three matrices, `image_spans` says
/// whether the images of the three matrices span the whole module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrivialRepReport {
    pub fixed: SubspaceBasis,
    pub image_spans: bool,
}

pub fn trivial_rep_report(action: &ModuleAction) -> TrivialRepReport {
    let d = action.module_dim();
    let mut stacked = Vec::with_capacity(3 * d);
    let mut image_rows = Vec::new();
    for m in action.matrices() {
        stacked.extend(m.iter().cloned());
        for j in 0..d {
            image_rows.push(mat_column(m, j));
        }
    }
    let fixed_vectors = linalg::nullspace(&stacked);
    let fixed = SubspaceBasis::from_spanning(d, fixed_vectors);
    let image_spans = linalg::rank(&image_rows) == d;
    TrivialRepReport { fixed, image_spans }
}

// ---------------------------------------------------------------------------
// The optical algebra fixture
// ---------------------------------------------------------------------------

/// Conflicting or Jacobi-violating entries found while transcribing the
/// published bracket table of the optical algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuarantineReport {
    /// Pairs assigned two different values by the source table, with both
    /// right-hand sides rendered; the first assignment is the one stored.
    pub conflicts: Vec<String>,
    pub jacobi_failures: Vec<[usize; 3]>,
}

/// The seven-dimensional optical algebra opt(2,1), basis
/// (k1, k2, l3, w, m, q, c), transcribed literally from its published
/// bracket table. The table as printed assigns [l3, m] twice with different
/// values; the first occurrence is stored and the conflict is reported, and
/// the fixture is quarantined when the Jacobi identity fails. The table is
/// never repaired silently.
pub fn optical_algebra() -> (LieAlgebra, Option<QuarantineReport>) {
    let names = ["k1", "k2", "l3", "w", "m", "q", "c"];
    let idx = |n: &str| names.iter().position(|&x| x == n).unwrap();
    let half = ratio(1, 2);
    // (left, right, value) entries in printed order.
    type Row<'a> = (&'a str, &'a str, Vec<(&'a str, Rational)>);
    let table: Vec<Row> = vec![
        ("w", "m", vec![("m", half.clone())]),
        ("k1", "m", vec![("m", -half.clone())]),
        ("k2", "q", vec![("m", half.clone())]),
        ("l3", "m", vec![("m", half.clone())]),
        ("w", "q", vec![("q", half.clone())]),
        ("k1", "q", vec![("q", half.clone())]),
        ("k2", "m", vec![("q", half.clone())]),
        ("w", "c", vec![("c", rat(1))]),
        ("m", "q", vec![("c", rat(-1))]),
        ("l3", "m", vec![("q", -half.clone())]),
        ("k1", "k2", vec![("l3", rat(-1))]),
        ("k1", "l3", vec![("k2", rat(-1))]),
        ("k2", "l3", vec![("k1", rat(1))]),
    ];
    let mut stored: BTreeMap<(usize, usize), Vec<(usize, Rational)>> = BTreeMap::new();
    let mut conflicts = Vec::new();
    for (a, b, value) in table {
        let (i, j) = (idx(a), idx(b));
        debug_assert!(i < j, "table rows are listed with i < j in this basis order");
        let coeffs: Vec<(usize, Rational)> = value.iter().map(|(n, c)| (idx(n), c.clone())).collect();
        match stored.get(&(i, j)) {
            None => {
                stored.insert((i, j), coeffs);
            }
            Some(existing) if *existing == coeffs => {}
            Some(existing) => {
                conflicts.push(format!(
                    "[{a}, {b}] assigned both {} and {}; keeping the first",
                    render(names.len(), &names, existing),
                    render(names.len(), &names, &coeffs),
                ));
            }
        }
    }
    let algebra = LieAlgebra::new(
        names.iter().map(|s| s.to_string()).collect(),
        stored.into_iter().collect(),
    )
    .expect("optical table indices are well-formed");
    let jacobi = algebra.jacobi_report();
    let quarantine = if jacobi.ok && conflicts.is_empty() {
        None
    } else {
        Some(QuarantineReport { conflicts, jacobi_failures: jacobi.failures })
    };
    (algebra, quarantine)
}

fn render(_dim: usize, names: &[&str], coeffs: &[(usize, Rational)]) -> String {
    if coeffs.is_empty() {
        return "0".to_string();
    }
    coeffs
        .iter()
        .map(|(k, c)| format!("{}*{}", crate::rational::format_rational(c), names[*k]))
        .collect::<Vec<_>>()
        .join(" + ")
}

// ---------------------------------------------------------------------------
// Small dense matrix helpers
// ---------------------------------------------------------------------------

pub fn zeros(d: usize) -> Matrix {
    vec![vec![Rational::zero(); d]; d]
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = zeros(n);
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

pub fn mat_add(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x + y).collect())
        .collect()
}

pub fn mat_sub(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x - y).collect())
        .collect()
}

pub fn mat_scale(a: &Matrix, c: &Rational) -> Matrix {
    a.iter().map(|row| row.iter().map(|x| x * c).collect()).collect()
}

pub fn mat_apply(a: &Matrix, v: &[Rational]) -> Vec<Rational> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

pub fn mat_column(a: &Matrix, j: usize) -> Vec<Rational> {
    a.iter().map(|row| row[j].clone()).collect()
}

fn add_vec(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

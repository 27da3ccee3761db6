//! Θ_A(X) = (XA + I)⁻¹X on W_A, its Hermitian restriction Φ_A on the
//! component U_A of 0, and the identities and parameter recovery built on it.

use crate::error::{Error, Result};
use crate::halfplane::rank_one_columns;
use crate::linalg::{
    principal_sqrt, singular_extremes, sqrt_psd, CMatrix, Hermitian, Tolerances, C64, I,
};
use crate::sample::Sampler;

fn check_dims(a: &Hermitian, x: &CMatrix) -> Result<usize> {
    let n = x.ensure_square()?;
    if a.dim() != n {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: n });
    }
    Ok(n)
}

/// XA + I
fn resolvent_base(a: &Hermitian, x: &CMatrix) -> CMatrix {
    (x * a.as_matrix()).add_scalar_diag(C64::new(1.0, 0.0))
}

/// X ∈ W_A, i.e. XA + I is invertible with margin.
pub fn in_w_a(a: &Hermitian, x: &CMatrix, tol: &Tolerances) -> Result<bool> {
    check_dims(a, x)?;
    let m = resolvent_base(a, x);
    let (lo, hi) = singular_extremes(&m)?;
    Ok(lo > tol.inv_margin * (1.0 + hi))
}

/// (XA + I)⁻¹X without the membership check.
pub(crate) fn theta_unchecked(a: &Hermitian, x: &CMatrix) -> Result<CMatrix> {
    Ok(&resolvent_base(a, x).inverse()? * x)
}

pub fn theta_apply(a: &Hermitian, x: &CMatrix, tol: &Tolerances) -> Result<CMatrix> {
    if !in_w_a(a, x, tol)? {
        return Err(Error::Membership("XA + I is not invertible".into()));
    }
    theta_unchecked(a, x)
}

/// Compression of A to its support: eigenvectors V_K, |λ_K|^{1/2} and signs.
struct Support {
    v: CMatrix,
    root: Vec<f64>,
    sign: Vec<f64>,
}

impl Support {
    fn of(a: &Hermitian, tol: &Tolerances) -> Self {
        let e = a.eigen();
        let k = e.support(tol);
        Support {
            v: e.vectors.select_columns(&k),
            root: k.iter().map(|&i| e.values[i].abs().sqrt()).collect(),
            sign: k.iter().map(|&i| e.values[i].signum()).collect(),
        }
    }

    /// |A_K|^{1/2}·X_K·|A_K|^{1/2} + S
    fn compressed(&self, x: &Hermitian) -> Hermitian {
        let xk = &(&self.v.adjoint() * x.as_matrix()) * &self.v;
        let k = self.root.len();
        let m = CMatrix::from_fn(k, k, |i, j| {
            let s = if i == j { self.sign[i] } else { 0.0 };
            xk[(i, j)] * self.root[i] * self.root[j] + s
        });
        Hermitian::hermitian_part(&m)
    }
}

/// X ∈ U_A. With A compressed to its support K, XA + I is invertible iff
/// M = |A_K|^{1/2}X_K|A_K|^{1/2} + S is, and the component of 0 is the set
/// where M keeps the inertia of S.
pub fn in_u_a(a: &Hermitian, x: &Hermitian, tol: &Tolerances) -> Result<bool> {
    check_dims(a, x)?;
    let sup = Support::of(a, tol);
    if sup.root.is_empty() {
        return Ok(true);
    }
    let m = sup.compressed(x).eigen();
    let cut = tol.inv_margin * (1.0 + m.norm());
    if m.values.iter().any(|l| l.abs() <= cut) {
        return Ok(false);
    }
    let pos = m.values.iter().filter(|&&l| l > 0.0).count();
    Ok(pos == sup.sign.iter().filter(|&&s| s > 0.0).count())
}

/// Controls for the randomized path search.
#[derive(Clone, Debug)]
pub struct PathSearch {
    pub seed: u64,
    /// Maximum number of segment attempts (tree nodes are bounded by the same number).
    pub budget: usize,
    /// Grid points per segment.
    pub grid: usize,
}

impl Default for PathSearch {
    fn default() -> Self {
        PathSearch { seed: 0, budget: 10_000, grid: 400 }
    }
}

/// Whether the straight segment P → Q avoids the singular set of XA + I,
/// judged by the sign and size of the real number det(I + P(t)A) on a grid.
/// det(I + P(t)A) is a polynomial of degree ≤ n in t, so it is interpolated
/// from n + 1 Chebyshev nodes and the grid is read off the interpolant.
fn segment_clear(a: &Hermitian, p: &Hermitian, q: &Hermitian, grid: usize) -> bool {
    let n = a.dim();
    let scale = (1.0 + p.frobenius().max(q.frobenius()) * a.frobenius()).powi(n as i32);
    let floor = 1e-12 * scale;
    let ts: Vec<f64> = (0..=n)
        .map(|k| 0.5 - 0.5 * ((2 * k + 1) as f64 * std::f64::consts::PI / (2 * n + 2) as f64).cos())
        .collect();
    // Newton divided differences
    let mut coef: Vec<f64> = ts.iter().map(|&t| resolvent_base(a, p.lerp(q, t).as_matrix()).det().re).collect();
    for level in 1..=n {
        for k in (level..=n).rev() {
            coef[k] = (coef[k] - coef[k - 1]) / (ts[k] - ts[k - level]);
        }
    }
    let eval = |t: f64| coef.iter().zip(&ts).rev().skip(1).fold(coef[n], |acc, (&c, &tk)| acc * (t - tk) + c);
    let mut prev: Option<f64> = None;
    for g in 0..=grid {
        let d = eval(g as f64 / grid as f64);
        if d.abs() <= floor {
            return false;
        }
        if prev.is_some_and(|s| s.signum() != d.signum()) {
            return false;
        }
        prev = Some(d);
    }
    true
}

fn flat(h: &Hermitian) -> Vec<f64> {
    h.data().iter().flat_map(|z| [z.re, z.im]).collect()
}

/// Randomized tree search for a piecewise-linear path from 0 to X inside
/// the invertibility set of XA + I. Returns the path's vertices when found.
pub fn search_path(a: &Hermitian, x: &Hermitian, opts: &PathSearch) -> Result<Option<Vec<Hermitian>>> {
    let n = check_dims(a, x)?;
    let mut rng = Sampler::new(opts.seed);
    let spread = 1.0 + x.frobenius();
    let mut nodes = vec![Hermitian::zeros(n)];
    let mut coords = vec![flat(&nodes[0])];
    let mut parent = vec![usize::MAX];
    let trace = |nodes: &[Hermitian], parent: &[usize], mut i: usize| {
        let mut path = vec![x.clone()];
        while i != usize::MAX {
            path.push(nodes[i].clone());
            i = parent[i];
        }
        path.reverse();
        path
    };
    if segment_clear(a, &nodes[0], x, opts.grid) {
        return Ok(Some(trace(&nodes, &parent, 0)));
    }
    for _ in 0..opts.budget {
        let target = if rng.uniform(0.0, 1.0) < 0.1 { x.clone() } else { rng.hermitian(n).scaled(spread) };
        let tc = flat(&target);
        let dist = |c: &Vec<f64>| c.iter().zip(&tc).map(|(u, v)| (u - v) * (u - v)).sum::<f64>();
        let near = coords.iter().map(dist).enumerate().min_by(|u, v| u.1.total_cmp(&v.1)).map_or(0, |(i, _)| i);
        if !segment_clear(a, &nodes[near], &target, opts.grid) {
            continue;
        }
        coords.push(tc);
        nodes.push(target);
        parent.push(near);
        let last = nodes.len() - 1;
        if segment_clear(a, &nodes[last], x, opts.grid) {
            return Ok(Some(trace(&nodes, &parent, last)));
        }
    }
    Ok(None)
}

/// Every grid point of the segment X → Y lies in U_A.
pub fn segment_in_u_a(a: &Hermitian, x: &Hermitian, y: &Hermitian, steps: usize, tol: &Tolerances) -> Result<bool> {
    check_dims(a, x)?;
    check_dims(a, y)?;
    let steps = steps.max(1);
    for g in 0..=steps {
        let p = x.lerp(y, g as f64 / steps as f64);
        if !in_w_a(a, p.as_matrix(), tol)? || !in_u_a(a, &p, tol)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For X ≥ 0 with XA + I invertible: whether [0, X] ⊂ U_A, decided by λ_min(X^{1/2}AX^{1/2}) > −1.
pub fn interval_below_criterion(a: &Hermitian, x: &Hermitian, tol: &Tolerances) -> Result<bool> {
    check_dims(a, x)?;
    let root = sqrt_psd(x, tol).map_err(|_| Error::InvalidArgument("X must be positive semidefinite".into()))?;
    if !in_w_a(a, x.as_matrix(), tol)? {
        return Err(Error::Membership("XA + I is not invertible".into()));
    }
    Ok(a.congruence(&root).min_eigenvalue() > -1.0 + tol.inv_margin)
}

pub fn phi_apply(a: &Hermitian, x: &Hermitian, tol: &Tolerances) -> Result<Hermitian> {
    if !in_u_a(a, x, tol)? || !in_w_a(a, x.as_matrix(), tol)? {
        return Err(Error::Membership("X is not in U_A".into()));
    }
    Ok(Hermitian::hermitian_part(&theta_unchecked(a, x.as_matrix())?))
}

/// Φ̂ on the whole invertibility set, without the component check.
pub fn phi_hat(a: &Hermitian, x: &Hermitian, tol: &Tolerances) -> Result<Hermitian> {
    Ok(Hermitian::hermitian_part(&theta_apply(a, x.as_matrix(), tol)?))
}

/// B = A(X₀A + I)⁻¹, the base for which X + X₀ ∈ Û_A ⟺ X ∈ Û_B.
pub fn translated_base(a: &Hermitian, x0: &Hermitian, tol: &Tolerances) -> Result<Hermitian> {
    if !in_w_a(a, x0.as_matrix(), tol)? {
        return Err(Error::Membership("X₀A + I is not invertible".into()));
    }
    Ok(Hermitian::hermitian_part(&(a.as_matrix() * &resolvent_base(a, x0.as_matrix()).inverse()?)))
}

/// T·A·T*
pub fn conjugated_spec(a: &Hermitian, t: &CMatrix, tol: &Tolerances) -> Result<Hermitian> {
    check_dims(a, t)?;
    let (lo, hi) = singular_extremes(t)?;
    if lo <= tol.inv_margin * (1.0 + hi) {
        return Err(Error::Singular("T is not invertible".into()));
    }
    Ok(a.congruence(t))
}

const MAX_BISECTIONS: usize = 20;

/// An invertible T with Φ̂_X(A) = T·A·T*, built along a path 0 → X in U_A
/// from principal square roots of (P_{j−1}A + I)(P_jA + I)⁻¹.
pub fn congruence_orbit(a: &Hermitian, x: &Hermitian, tol: &Tolerances) -> Result<CMatrix> {
    let n = check_dims(a, x)?;
    if !in_u_a(a, x, tol)? {
        return Err(Error::Membership("X is not in U_A".into()));
    }
    let zero = Hermitian::zeros(n);
    let vertices = if segment_in_u_a(a, &zero, x, 64, tol)? {
        vec![zero, x.clone()]
    } else {
        search_path(a, x, &PathSearch::default())?
            .ok_or_else(|| Error::PathConstruction("random search exhausted its budget".into()))?
    };
    let mut t = CMatrix::identity(n);
    for leg in vertices.windows(2) {
        t = &orbit_leg(a, &leg[0], &leg[1], tol)? * &t;
    }
    Ok(t)
}

/// Accumulates S_j* along P → Q, bisecting each piece until its ratio is close to I.
fn orbit_leg(a: &Hermitian, p: &Hermitian, q: &Hermitian, tol: &Tolerances) -> Result<CMatrix> {
    let n = a.dim();
    let mut t = CMatrix::identity(n);
    let mut stack = vec![(0.0f64, 1.0f64, 0usize)];
    let base = |s: f64| resolvent_base(a, p.lerp(q, s).as_matrix());
    // depth-first, left piece first, so pieces are consumed in path order
    while let Some((s0, s1, depth)) = stack.pop() {
        let end = base(s1);
        let ratio = &base(s0) * &end.inverse()?;
        let gap = (&ratio - &CMatrix::identity(n)).frobenius();
        let end_ok = singular_extremes(&end)?.0 > tol.inv_margin * (1.0 + end.frobenius());
        if gap > 0.5 || !end_ok {
            if depth >= MAX_BISECTIONS {
                return Err(Error::PathConstruction(format!("no admissible subdivision after {MAX_BISECTIONS} bisections")));
            }
            let mid = 0.5 * (s0 + s1);
            stack.push((mid, s1, depth + 1));
            stack.push((s0, mid, depth + 1));
            continue;
        }
        let s = principal_sqrt(&ratio)?;
        t = &s.adjoint() * &t;
    }
    Ok(t)
}

/// X ↦ output_offset + T·Φ_A((X − X₀)^τ)·T*
#[derive(Clone, Debug)]
pub struct LocalIsoSpec {
    pub a: Hermitian,
    pub t: CMatrix,
    pub transpose: bool,
    pub input_offset: Hermitian,
    pub output_offset: Hermitian,
}

impl LocalIsoSpec {
    pub fn new(a: Hermitian, t: CMatrix, transpose: bool, tol: &Tolerances) -> Result<Self> {
        let n = check_dims(&a, &t)?;
        let (lo, hi) = singular_extremes(&t)?;
        if lo <= tol.inv_margin * (1.0 + hi) {
            return Err(Error::InvalidArgument("T must be invertible".into()));
        }
        Ok(LocalIsoSpec { a, t, transpose, input_offset: Hermitian::zeros(n), output_offset: Hermitian::zeros(n) })
    }

    pub fn with_offsets(mut self, input: Hermitian, output: Hermitian) -> Result<Self> {
        let n = self.a.dim();
        for h in [&input, &output] {
            if h.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, found: h.dim() });
            }
        }
        self.input_offset = input;
        self.output_offset = output;
        Ok(self)
    }

    pub fn identity(n: usize) -> Self {
        LocalIsoSpec {
            a: Hermitian::zeros(n),
            t: CMatrix::identity(n),
            transpose: false,
            input_offset: Hermitian::zeros(n),
            output_offset: Hermitian::zeros(n),
        }
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }
}

pub fn apply_local_iso(spec: &LocalIsoSpec, x: &Hermitian, tol: &Tolerances) -> Result<Hermitian> {
    check_dims(&spec.a, x)?;
    let mut y = x.minus(&spec.input_offset);
    if spec.transpose {
        y = y.transposed();
    }
    Ok(phi_apply(&spec.a, &y, tol)?.congruence(&spec.t).plus(&spec.output_offset))
}

/// Recovers (A, T, τ) of a map X ↦ T·Φ_A(X^τ)·T* from black-box evaluations.
///
/// The derivative at 0 is Y ↦ T·Y^τ·T*; it is estimated by Richardson-extrapolated
/// central differences along a Hermitian basis, extended complex-linearly to the
/// matrix units and factored like the unit action in `fit_canonical`. A then
/// follows from one evaluation at sI.
pub fn identify_parameters<F>(n: usize, evaluator: F, step: Option<f64>, tol: &Tolerances) -> Result<LocalIsoSpec>
where
    F: Fn(&Hermitian) -> Result<Hermitian>,
{
    let mut h = step.unwrap_or(1e-3);
    let derivative = loop {
        match directional_derivatives(n, &evaluator, h) {
            Ok(d) => break d,
            Err(e) if e.is_domain() && h > 1e-8 => h *= 0.25,
            Err(e) => return Err(e),
        }
    };

    let mut best: Option<(f64, CMatrix, bool)> = None;
    for transpose in [false, true] {
        if let Some((u, res)) = rank_one_columns(&derivative, transpose) {
            if best.as_ref().is_none_or(|(r, _, _)| res < 0.5 * r) {
                best = Some((res, u, transpose));
            }
        }
    }
    let scale: f64 = derivative.iter().flatten().map(|m| m.frobenius()).sum::<f64>().max(1.0);
    let (res, t, transpose) = best.ok_or(Error::NotInModel { residual: f64::INFINITY })?;
    if res > 1e-5 * scale {
        return Err(Error::NotInModel { residual: res / scale });
    }
    let t = t.normalize_phase();
    let t_inv = t.inverse()?;

    let mut s = 0.5;
    let a = loop {
        match evaluator(&Hermitian::scalar(n, s)) {
            Ok(v) => {
                let core = Hermitian::hermitian_part(&(&(&t_inv * v.as_matrix()) * &t_inv.adjoint()));
                break core.inverse()?.shifted(-1.0 / s);
            }
            Err(e) if e.is_domain() && s > 1e-6 => s *= 0.5,
            Err(e) => return Err(e),
        }
    };
    let spec = LocalIsoSpec::new(a, t, transpose, tol)?;

    let mut rng = Sampler::new(0x1de0_fa11);
    let mut worst = 0.0f64;
    for _ in 0..5 {
        let x = rng.hermitian(n).scaled(0.5 * s);
        let (Ok(want), Ok(got)) = (evaluator(&x), apply_local_iso(&spec, &x, tol)) else { continue };
        worst = worst.max((got.as_matrix() - want.as_matrix()).frobenius() / (1.0 + want.frobenius()));
    }
    if worst > 1e-5 {
        return Err(Error::NotInModel { residual: worst });
    }
    Ok(spec)
}

/// D(E_jk) for all matrix units, from Hermitian directions.
fn directional_derivatives<F>(n: usize, evaluator: &F, h: f64) -> Result<Vec<Vec<CMatrix>>>
where
    F: Fn(&Hermitian) -> Result<Hermitian>,
{
    let diff = |e: &Hermitian| -> Result<CMatrix> {
        let central = |h: f64| -> Result<CMatrix> {
            let plus = evaluator(&e.scaled(h))?;
            let minus = evaluator(&e.scaled(-h))?;
            Ok((plus.as_matrix() - minus.as_matrix()).scale(0.5 / h))
        };
        let coarse = central(h)?;
        let fine = central(0.5 * h)?;
        Ok((&fine.scale(4.0) - &coarse).scale(1.0 / 3.0))
    };
    let mut out = vec![vec![CMatrix::zeros(n, n); n]; n];
    for j in 0..n {
        out[j][j] = diff(&Hermitian::hermitian_part(&CMatrix::kron_unit(n, j, j)))?;
        for k in j + 1..n {
            let ejk = CMatrix::kron_unit(n, j, k);
            let ekj = CMatrix::kron_unit(n, k, j);
            let d1 = diff(&Hermitian::hermitian_part(&(&ejk + &ekj)))?;
            let d2 = diff(&Hermitian::hermitian_part(&(&ejk - &ekj).scale_c(I)))?;
            out[j][k] = (&d1 - &d2.scale_c(I)).scale(0.5);
            out[k][j] = (&d1 + &d2.scale_c(I)).scale(0.5);
        }
    }
    Ok(out)
}

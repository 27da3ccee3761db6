//! Divided differences, Loewner matrices, fixed-order matrix monotonicity
//! testing, and evaluation of discrete Pick representations.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::halfplane::in_half_plane;
use crate::linalg::{loewner_compare, spectral_apply, CMatrix, Domain, Hermitian, Tolerances, C64};
use crate::par::{map_trials, Exec};
use crate::sample::Sampler;

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A real function on an open interval (a, b), with an optional analytic derivative.
#[derive(Clone)]
pub struct ScalarFunction {
    pub name: String,
    value: RealFn,
    derivative: Option<RealFn>,
    pub lo: f64,
    pub hi: f64,
    /// Built from tabulated samples; verdicts are sample-level only.
    pub approximate: bool,
}

impl fmt::Debug for ScalarFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ScalarFunction({} on ({}, {}))", self.name, self.lo, self.hi)
    }
}

impl ScalarFunction {
    pub fn new(
        name: impl Into<String>,
        lo: f64,
        hi: f64,
        value: impl Fn(f64) -> f64 + Send + Sync + 'static,
        derivative: Option<RealFn>,
    ) -> Result<Self> {
        if !(lo < hi) || lo.is_nan() || hi.is_nan() {
            return Err(Error::InvalidArgument(format!("empty interval ({lo}, {hi})")));
        }
        Ok(ScalarFunction { name: name.into(), value: Arc::new(value), derivative, lo, hi, approximate: false })
    }

    pub fn identity() -> Self {
        Self::new("identity", f64::NEG_INFINITY, f64::INFINITY, |x| x, Some(Arc::new(|_| 1.0))).unwrap()
    }

    pub fn sqrt() -> Self {
        Self::new("sqrt", 0.0, f64::INFINITY, f64::sqrt, Some(Arc::new(|x: f64| 0.5 / x.sqrt()))).unwrap()
    }

    pub fn log() -> Self {
        Self::new("log", 0.0, f64::INFINITY, f64::ln, Some(Arc::new(|x: f64| 1.0 / x))).unwrap()
    }

    pub fn square() -> Self {
        Self::new("square", 0.0, f64::INFINITY, |x| x * x, Some(Arc::new(|x: f64| 2.0 * x))).unwrap()
    }

    /// x ↦ −1/x on (0, ∞)
    pub fn neg_reciprocal() -> Self {
        Self::new("neg-reciprocal", 0.0, f64::INFINITY, |x| -1.0 / x, Some(Arc::new(|x: f64| 1.0 / (x * x)))).unwrap()
    }

    /// f_p(x) = x/(px + 1 − p) on (0, 1)
    pub fn f_p(p: f64) -> Result<Self> {
        if !(p < 1.0) || p == 0.0 || !p.is_finite() {
            return Err(Error::InvalidArgument(format!("f_p needs p < 1 and p ≠ 0, got {p}")));
        }
        Self::new(
            format!("f_p(p={p})"),
            0.0,
            1.0,
            move |x| x / (p * x + 1.0 - p),
            Some(Arc::new(move |x: f64| (1.0 - p) / (p * x + 1.0 - p).powi(2))),
        )
    }

    /// Resolvent form 1/r − ((1 − r)/r²)·((1 − r)/r + x)⁻¹ on (0, 1); the same function as f_r.
    pub fn rational(r: f64) -> Result<Self> {
        if !(r < 1.0) || r == 0.0 || !r.is_finite() {
            return Err(Error::InvalidArgument(format!("the rational form needs r < 1 and r ≠ 0, got {r}")));
        }
        let k = (1.0 - r) / r;
        Self::new(
            format!("rational(r={r})"),
            0.0,
            1.0,
            move |x| 1.0 / r - k / r / (k + x),
            Some(Arc::new(move |x: f64| k / r / (k + x).powi(2))),
        )
    }

    /// Named built-ins: sqrt, log, square, identity, neg-reciprocal, f_p:<p>, rational:<r>.
    pub fn builtin(spec: &str) -> Result<Self> {
        let (name, arg) = match spec.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (spec, None),
        };
        let param = || -> Result<f64> {
            arg.ok_or_else(|| Error::InvalidArgument(format!("`{name}` needs a parameter, e.g. {name}:0.5")))?
                .parse::<f64>()
                .map_err(|e| Error::InvalidArgument(format!("bad parameter for `{name}`: {e}")))
        };
        match name {
            "sqrt" => Ok(Self::sqrt()),
            "log" => Ok(Self::log()),
            "square" | "x2" | "x^2" => Ok(Self::square()),
            "identity" => Ok(Self::identity()),
            "neg-reciprocal" => Ok(Self::neg_reciprocal()),
            "f_p" | "fp" => Self::f_p(param()?),
            "rational" => Self::rational(param()?),
            _ => Err(Error::InvalidArgument(format!("unknown function `{spec}`"))),
        }
    }

    /// Monotone piecewise-cubic (Fritsch–Carlson) interpolant of tabulated samples.
    pub fn tabulated(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        let spline = Pchip::new(xs, ys)?;
        let (lo, hi) = (spline.xs[0], *spline.xs.last().unwrap());
        let s = Arc::new(spline);
        let sd = s.clone();
        let mut f = Self::new("table", lo, hi, move |x| s.eval(x).0, Some(Arc::new(move |x: f64| sd.eval(x).1)))?;
        f.approximate = true;
        Ok(f)
    }

    pub fn from_pick(rep: PickRepresentation) -> Self {
        let (lo, hi) = (rep.lo, rep.hi);
        let r2 = rep.clone();
        ScalarFunction {
            name: "pick".into(),
            value: Arc::new(move |x| rep.value_unchecked(x)),
            derivative: Some(Arc::new(move |x| r2.derivative_unchecked(x))),
            lo,
            hi,
            approximate: false,
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        x > self.lo && x < self.hi
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        if !self.contains(x) {
            return Err(Error::DomainViolation(format!("{x} is outside ({}, {})", self.lo, self.hi)));
        }
        Ok((self.value)(x))
    }

    pub fn derivative(&self, x: f64) -> Result<f64> {
        if !self.contains(x) {
            return Err(Error::DomainViolation(format!("{x} is outside ({}, {})", self.lo, self.hi)));
        }
        if let Some(d) = &self.derivative {
            return Ok(d(x));
        }
        let h = FD_STEP.min(0.5 * (x - self.lo)).min(0.5 * (self.hi - x));
        Ok(((self.value)(x + h) - (self.value)(x - h)) / (2.0 * h))
    }

    /// The finite window [a, b] used for sampling, shrunk by δ = 1e−3·(b − a) on each side.
    /// Infinite ends are replaced by a window of width 50.
    pub fn sampling_window(&self) -> (f64, f64) {
        let (a, b) = match (self.lo.is_finite(), self.hi.is_finite()) {
            (true, true) => (self.lo, self.hi),
            (true, false) => (self.lo, self.lo + SAMPLING_WIDTH),
            (false, true) => (self.hi - SAMPLING_WIDTH, self.hi),
            (false, false) => (-0.5 * SAMPLING_WIDTH, 0.5 * SAMPLING_WIDTH),
        };
        let delta = 1e-3 * (b - a);
        (a + delta, b - delta)
    }

    /// Spectral calculus f(X), spectrum strictly inside (a, b).
    pub fn apply(&self, x: &Hermitian, tol: &Tolerances) -> Result<Hermitian> {
        spectral_apply(x, |l| (self.value)(l), &Domain::Open { lo: self.lo, hi: self.hi }, tol)
    }
}

const FD_STEP: f64 = 1e-5;
const SAMPLING_WIDTH: f64 = 50.0;

struct Pchip {
    xs: Vec<f64>,
    ys: Vec<f64>,
    slopes: Vec<f64>,
}

impl Pchip {
    fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() || xs.len() < 2 {
            return Err(Error::Malformed("a table needs at least two (x, y) samples of equal length".into()));
        }
        if xs.windows(2).any(|w| !(w[0] < w[1])) || xs.iter().chain(&ys).any(|v| !v.is_finite()) {
            return Err(Error::Malformed("table abscissae must be finite and strictly increasing".into()));
        }
        let k = xs.len();
        let h: Vec<f64> = xs.windows(2).map(|w| w[1] - w[0]).collect();
        let delta: Vec<f64> = (0..k - 1).map(|i| (ys[i + 1] - ys[i]) / h[i]).collect();
        let mut m = vec![0.0; k];
        m[0] = delta[0];
        m[k - 1] = delta[k - 2];
        for i in 1..k - 1 {
            if delta[i - 1] * delta[i] > 0.0 {
                let w1 = 2.0 * h[i] + h[i - 1];
                let w2 = h[i] + 2.0 * h[i - 1];
                m[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
            }
        }
        Ok(Pchip { xs, ys, slopes: m })
    }

    /// Value and derivative.
    fn eval(&self, x: f64) -> (f64, f64) {
        let k = self.xs.len();
        let i = match self.xs.partition_point(|&v| v <= x) {
            0 => 0,
            j if j >= k => k - 2,
            j => j - 1,
        };
        let h = self.xs[i + 1] - self.xs[i];
        let t = (x - self.xs[i]) / h;
        let (y0, y1, m0, m1) = (self.ys[i], self.ys[i + 1], self.slopes[i] * h, self.slopes[i + 1] * h);
        let (t2, t3) = (t * t, t * t * t);
        let v = (2.0 * t3 - 3.0 * t2 + 1.0) * y0 + (t3 - 2.0 * t2 + t) * m0 + (-2.0 * t3 + 3.0 * t2) * y1 + (t3 - t2) * m1;
        let d = (6.0 * t2 - 6.0 * t) * y0 + (3.0 * t2 - 4.0 * t + 1.0) * m0 + (-6.0 * t2 + 6.0 * t) * y1 + (3.0 * t2 - 2.0 * t) * m1;
        (v, d / h)
    }
}

/// f^{[1]}(x, y): the difference quotient, or f' at the midpoint when |y − x| ≤ 1e−6·(1 + |x|).
pub fn divided_difference(f: &ScalarFunction, x: f64, y: f64) -> Result<f64> {
    let (fx, fy) = (f.eval(x)?, f.eval(y)?);
    if (y - x).abs() > 1e-6 * (1.0 + x.abs()) {
        Ok((fy - fx) / (y - x))
    } else {
        f.derivative(0.5 * (x + y))
    }
}

#[derive(Clone, Debug)]
pub struct LoewnerMatrixReport {
    pub nodes: Vec<f64>,
    pub matrix: Vec<Vec<f64>>,
    pub min_eigenvalue: f64,
}

impl LoewnerMatrixReport {
    /// Scale for relative positivity thresholds: 1 + max |entry|.
    pub fn scale(&self) -> f64 {
        1.0 + self.matrix.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// Eigenvector of the smallest eigenvalue.
    pub fn min_eigenvector(&self) -> Vec<f64> {
        let rows: Vec<&[f64]> = self.matrix.iter().map(|r| r.as_slice()).collect();
        let e = Hermitian::from_real_rows(&rows).eigen();
        let v = e.vectors.column(0);
        // a real symmetric eigenvector up to phase
        let k = (0..v.len()).max_by(|&a, &b| v[a].norm().total_cmp(&v[b].norm())).unwrap_or(0);
        let phase = if v[k].norm() > 0.0 { v[k].conj() / v[k].norm() } else { C64::new(1.0, 0.0) };
        v.iter().map(|z| (z * phase).re).collect()
    }
}

pub fn loewner_matrix(f: &ScalarFunction, nodes: &[f64]) -> Result<LoewnerMatrixReport> {
    if nodes.is_empty() {
        return Err(Error::InvalidArgument("no nodes".into()));
    }
    if nodes.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidArgument("nodes must be strictly increasing".into()));
    }
    let k = nodes.len();
    let mut matrix = vec![vec![0.0; k]; k];
    for i in 0..k {
        for j in i..k {
            let v = divided_difference(f, nodes[i], nodes[j])?;
            matrix[i][j] = v;
            matrix[j][i] = v;
        }
    }
    let rows: Vec<&[f64]> = matrix.iter().map(|r| r.as_slice()).collect();
    let min_eigenvalue = Hermitian::from_real_rows(&rows).min_eigenvalue();
    Ok(LoewnerMatrixReport { nodes: nodes.to_vec(), matrix, min_eigenvalue })
}

/// A reason a function failed the order-n test.
#[derive(Clone, Debug)]
pub enum MonotoneWitness {
    /// Nodes whose Loewner matrix has a negative eigenvalue.
    Nodes { nodes: Vec<f64>, min_eigenvalue: f64 },
    /// X ≤ Y with f(X) ≰ f(Y).
    Pair { x: Hermitian, y: Hermitian },
}

#[derive(Clone, Debug)]
pub struct MonotoneVerdict {
    pub pass: bool,
    pub order: usize,
    pub tuples: usize,
    pub pairs: usize,
    /// Smallest relative Loewner-matrix eigenvalue seen.
    pub min_relative_eigenvalue: f64,
    pub loewner_pass: bool,
    pub pairs_pass: bool,
    pub witness: Option<MonotoneWitness>,
    /// The function came from tabulated data, so the verdict is not conclusive.
    pub approximate: bool,
}

/// Sorted i.i.d. uniform nodes in the sampling window.
pub fn sample_nodes(f: &ScalarFunction, n: usize, rng: &mut Sampler) -> Vec<f64> {
    let (a, b) = f.sampling_window();
    loop {
        let mut v: Vec<f64> = (0..n).map(|_| rng.uniform(a, b)).collect();
        v.sort_by(f64::total_cmp);
        if v.windows(2).all(|w| w[0] < w[1]) {
            return v;
        }
    }
}

/// X ≤ Y with both spectra inside the sampling window.
pub fn sample_ordered_pair(f: &ScalarFunction, n: usize, rng: &mut Sampler) -> (Hermitian, Hermitian) {
    let (a, b) = f.sampling_window();
    let vals: Vec<f64> = (0..n).map(|_| rng.uniform(a, b)).collect();
    let top = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let x = rng.with_spectrum(&vals);
    let rank = 1 + rng.index(n);
    let p = rng.psd(n, rank);
    let norm = p.spectral_norm().max(f64::MIN_POSITIVE);
    let room = rng.uniform(0.0, b - top);
    let y = x.plus(&p.scaled(room / norm));
    (x, y)
}

/// Direct check: whether f(X) ≤ f(Y).
pub fn pair_preserved(f: &ScalarFunction, x: &Hermitian, y: &Hermitian, tol: &Tolerances) -> Result<bool> {
    Ok(loewner_compare(&f.apply(x, tol)?, &f.apply(y, tol)?, tol)?.is_leq())
}

/// Turns a failing node tuple into a matrix pair: X = diag(nodes), Y = X + ε·wwᵀ
/// with w the negative eigenvector of the Loewner matrix, so f(Y) − f(X) ≈ ε·L∘wwᵀ.
pub fn pair_from_nodes(f: &ScalarFunction, report: &LoewnerMatrixReport, tol: &Tolerances) -> Result<Option<(Hermitian, Hermitian)>> {
    let w = report.min_eigenvector();
    let k = w.len();
    let x = Hermitian::diag(&report.nodes);
    let dir = Hermitian::hermitian_part(&CMatrix::from_fn(k, k, |i, j| C64::new(w[i] * w[j], 0.0)));
    let (_, b) = f.sampling_window();
    let room = b - report.nodes[k - 1];
    let mut eps = 1e-2 * room.min(1.0);
    for _ in 0..12 {
        let y = x.plus(&dir.scaled(eps));
        if !pair_preserved(f, &x, &y, tol)? {
            return Ok(Some((x, y)));
        }
        eps *= 0.25;
    }
    Ok(None)
}

/// Tests order-n monotonicity with `tuples` Loewner matrices and `tuples / 2`
/// direct matrix pairs.
pub fn is_matrix_monotone(
    f: &ScalarFunction,
    n: usize,
    tuples: usize,
    seed: u64,
    exec: Exec,
    tol: &Tolerances,
) -> Result<MonotoneVerdict> {
    if n == 0 {
        return Err(Error::InvalidArgument("order must be at least 1".into()));
    }
    let reports = map_trials(exec, tuples, |trial| {
        let mut rng = Sampler::for_trial(seed, trial);
        loewner_matrix(f, &sample_nodes(f, n, &mut rng))
    });
    let mut min_rel = f64::INFINITY;
    let mut worst: Option<LoewnerMatrixReport> = None;
    for r in reports {
        let r = r?;
        let rel = r.min_eigenvalue / r.scale();
        if rel < min_rel {
            min_rel = rel;
            worst = Some(r);
        }
    }
    let loewner_pass = min_rel >= -1e-10;

    let pairs = tuples / 2;
    let pair_results = map_trials(exec, pairs, |trial| {
        let mut rng = Sampler::for_trial(seed ^ 0xa5a5_a5a5, trial);
        let (x, y) = sample_ordered_pair(f, n, &mut rng);
        pair_preserved(f, &x, &y, tol).map(|ok| (ok, x, y))
    });
    let mut pair_witness = None;
    for r in pair_results {
        let (ok, x, y) = r?;
        if !ok && pair_witness.is_none() {
            pair_witness = Some(MonotoneWitness::Pair { x, y });
        }
    }
    let pairs_pass = pair_witness.is_none();
    let witness = match (&worst, loewner_pass) {
        (Some(r), false) => Some(MonotoneWitness::Nodes { nodes: r.nodes.clone(), min_eigenvalue: r.min_eigenvalue }),
        _ => pair_witness,
    };
    Ok(MonotoneVerdict {
        pass: loewner_pass && pairs_pass,
        order: n,
        tuples,
        pairs,
        min_relative_eigenvalue: min_rel,
        loewner_pass,
        pairs_pass,
        witness,
        approximate: f.approximate,
    })
}

/// f(x) = c + d·x + Σ w_j·(1 + x·y_j)/(y_j − x) on (a, b), atoms outside (a, b).
#[derive(Clone, Debug)]
pub struct PickRepresentation {
    pub c: f64,
    pub d: f64,
    pub atoms: Vec<(f64, f64)>,
    pub lo: f64,
    pub hi: f64,
}

/// Argument or value of a Pick function.
#[derive(Clone, Debug)]
pub enum PickArg {
    Scalar(f64),
    Hermitian(Hermitian),
    HalfPlane(CMatrix),
}

impl PickRepresentation {
    pub fn new(c: f64, d: f64, atoms: Vec<(f64, f64)>, lo: f64, hi: f64) -> Result<Self> {
        if !(d >= 0.0) || !c.is_finite() || !d.is_finite() {
            return Err(Error::InvalidArgument("need finite c and d ≥ 0".into()));
        }
        if !(lo < hi) {
            return Err(Error::InvalidArgument(format!("empty interval ({lo}, {hi})")));
        }
        for &(y, w) in &atoms {
            if !(w > 0.0) || !w.is_finite() || !y.is_finite() {
                return Err(Error::InvalidArgument(format!("atom ({y}, {w}) needs finite y and weight > 0")));
            }
            if y > lo && y < hi {
                return Err(Error::InvalidArgument(format!("atom at {y} lies inside ({lo}, {hi})")));
            }
        }
        Ok(PickRepresentation { c, d, atoms, lo, hi })
    }

    fn value_unchecked(&self, x: f64) -> f64 {
        self.c + self.d * x + self.atoms.iter().map(|&(y, w)| w * (1.0 + x * y) / (y - x)).sum::<f64>()
    }

    fn derivative_unchecked(&self, x: f64) -> f64 {
        self.d + self.atoms.iter().map(|&(y, w)| w * (1.0 + y * y) / (y - x).powi(2)).sum::<f64>()
    }

    pub fn scalar(&self, x: f64) -> Result<f64> {
        if !(x > self.lo && x < self.hi) {
            return Err(Error::DomainViolation(format!("{x} is outside ({}, {})", self.lo, self.hi)));
        }
        Ok(self.value_unchecked(x))
    }

    /// cI + dZ + Σ w_j·((y_j² + 1)(y_jI − Z)⁻¹ − y_jI) for any square Z with y_jI − Z invertible.
    fn matrix_unchecked(&self, z: &CMatrix) -> Result<CMatrix> {
        let n = z.ensure_square()?;
        let mut out = &CMatrix::scalar(n, C64::new(self.c, 0.0)) + &z.scale(self.d);
        for &(y, w) in &self.atoms {
            let resolvent = (-z).add_scalar_diag(C64::new(y, 0.0)).inverse()?;
            let g = resolvent.scale(y * y + 1.0).add_scalar_diag(C64::new(-y, 0.0));
            out = &out + &g.scale(w);
        }
        Ok(out)
    }

    pub fn hermitian(&self, x: &Hermitian, tol: &Tolerances) -> Result<Hermitian> {
        let e = x.eigen();
        let margin = tol.inv_margin * (1.0 + e.norm());
        if e.values.iter().any(|&l| !(l > self.lo + margin && l < self.hi - margin)) {
            return Err(Error::DomainViolation(format!("spectrum leaves ({}, {})", self.lo, self.hi)));
        }
        Ok(Hermitian::hermitian_part(&self.matrix_unchecked(x.as_matrix())?))
    }

    pub fn half_plane(&self, z: &CMatrix, tol: &Tolerances) -> Result<CMatrix> {
        if !in_half_plane(z, tol)?.0 {
            return Err(Error::Membership("argument is not in the upper half-plane".into()));
        }
        self.matrix_unchecked(z)
    }

    pub fn eval(&self, arg: &PickArg, tol: &Tolerances) -> Result<PickArg> {
        Ok(match arg {
            PickArg::Scalar(x) => PickArg::Scalar(self.scalar(*x)?),
            PickArg::Hermitian(x) => PickArg::Hermitian(self.hermitian(x, tol)?),
            PickArg::HalfPlane(z) => PickArg::HalfPlane(self.half_plane(z, tol)?),
        })
    }
}

pub fn pick_eval(rep: &PickRepresentation, arg: &PickArg, tol: &Tolerances) -> Result<PickArg> {
    rep.eval(arg, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn divided_difference_examples() {
        let id = ScalarFunction::identity();
        assert_eq!(divided_difference(&id, 0.3, 7.0).unwrap(), 1.0);
        assert_eq!(divided_difference(&id, 2.0, 2.0).unwrap(), 1.0);
        assert_eq!(divided_difference(&ScalarFunction::square(), 1.0, 3.0).unwrap(), 4.0);
        assert!((divided_difference(&ScalarFunction::sqrt(), 1.0, 4.0).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert!(divided_difference(&ScalarFunction::sqrt(), -1.0, 4.0).is_err());
    }

    #[test]
    fn derivative_fallback_matches_analytic() {
        let f = ScalarFunction::new("cube", 0.0, 2.0, |x| x * x * x, None).unwrap();
        assert!((divided_difference(&f, 1.0, 1.0 + 1e-9).unwrap() - 3.0).abs() < 1e-8);
    }

    #[test]
    fn loewner_examples() {
        let r = loewner_matrix(&ScalarFunction::identity(), &[-1.0, 0.5, 2.0]).unwrap();
        assert!(r.matrix.iter().flatten().all(|&v| v == 1.0));
        let r = loewner_matrix(&ScalarFunction::sqrt(), &[1.0, 4.0]).unwrap();
        assert!((r.matrix[0][0] - 0.5).abs() < 1e-15 && (r.matrix[0][1] - 1.0 / 3.0).abs() < 1e-15);
        assert!((r.matrix[1][1] - 0.25).abs() < 1e-15 && r.min_eigenvalue > 0.0);
        let r = loewner_matrix(&ScalarFunction::square(), &[1.0, 3.0]).unwrap();
        assert_eq!(r.matrix, vec![vec![2.0, 4.0], vec![4.0, 6.0]]);
        assert!(r.min_eigenvalue < 0.0);
        assert!(loewner_matrix(&ScalarFunction::sqrt(), &[4.0, 1.0]).is_err());
    }

    #[test]
    fn square_fails_with_pair() {
        let t = tol();
        let f = ScalarFunction::square();
        let r = loewner_matrix(&f, &[1.0, 3.0]).unwrap();
        let (x, y) = pair_from_nodes(&f, &r, &t).unwrap().expect("pair witness");
        assert!(loewner_compare(&x, &y, &t).unwrap().is_leq());
        assert!(!pair_preserved(&f, &x, &y, &t).unwrap());
    }

    #[test]
    fn builtins_parse() {
        assert_eq!(ScalarFunction::builtin("sqrt").unwrap().name, "sqrt");
        let fp = ScalarFunction::builtin("f_p:0.5").unwrap();
        assert!((fp.eval(0.5).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        let rat = ScalarFunction::builtin("rational:0.5").unwrap();
        assert!((rat.eval(0.5).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert!(ScalarFunction::builtin("f_p").is_err());
        assert!(ScalarFunction::builtin("cosh").is_err());
    }

    #[test]
    fn pchip_is_monotone_and_interpolates() {
        let xs = vec![0.0, 1.0, 2.0, 4.0];
        let ys = vec![0.0, 1.0, 1.2, 3.0];
        let f = ScalarFunction::tabulated(xs.clone(), ys.clone()).unwrap();
        assert!(f.approximate);
        for (x, y) in xs[1..3].iter().zip(&ys[1..3]) {
            assert!((f.eval(*x).unwrap() - y).abs() < 1e-14);
        }
        let mut prev = f.eval(1e-6).unwrap();
        for k in 1..400 {
            let v = f.eval(k as f64 * 0.01).unwrap();
            assert!(v >= prev - 1e-14);
            prev = v;
        }
    }

    #[test]
    fn pick_examples() {
        let t = tol();
        let id = PickRepresentation::new(0.0, 1.0, vec![], f64::NEG_INFINITY, f64::INFINITY).unwrap();
        assert_eq!(id.scalar(2.5).unwrap(), 2.5);
        let inv = PickRepresentation::new(0.0, 0.0, vec![(0.0, 1.0)], 0.0, f64::INFINITY).unwrap();
        assert!((inv.scalar(4.0).unwrap() + 0.25).abs() < 1e-15);
        let x = Hermitian::from_real_rows(&[&[2.0, 0.5], &[0.5, 1.0]]);
        let got = inv.hermitian(&x, &t).unwrap();
        let want = -&x.as_matrix().inverse().unwrap();
        assert!((got.as_matrix() - &want).frobenius() < 1e-14);
        assert!(inv.scalar(-1.0).is_err());
        assert!(PickRepresentation::new(0.0, 0.0, vec![(0.5, 1.0)], 0.0, 1.0).is_err());
        assert!(PickRepresentation::new(0.0, -1.0, vec![], 0.0, 1.0).is_err());
    }
}

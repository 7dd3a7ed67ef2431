//! Multivariate Laurent expansion in the domain z_1 << ... << z_k and the
//! iterated residue at infinity.
//!
//! The expansion region is fixed once and for all: contours 1 << R_1 << ... << R_k,
//! oriented so that Res dz/(z_1...z_k) = (-1)^k. Every inverse linear form is
//! expanded geometrically against its leading variable (the nonzero coefficient
//! of largest index), truncation orders are inferred from the requested target
//! window, and the whole pipeline is exact rational arithmetic.
//!
//! Truncation soundness: factors are folded in descending order of leading
//! variable, so once every factor led by a variable v has been applied nothing
//! can raise the exponent of z_v again. Terms are pruned only when no remaining
//! multiplicand can bring them back inside the (slack-widened) target window.
//! The `slack` knob re-runs the identical computation with all internal windows
//! enlarged; a result that depends on it indicates a truncation bug, which the
//! stability self-check turns into a hard error.

use crate::rational::Rat;
use crate::ring::{Poly, Ring};
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

pub const MAX_VARS: usize = 8;

const JCAP_LIMIT: i64 = 60_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    /// A linear form with every z-coefficient zero cannot be inverted here.
    MalformedLinearForm,
    /// A window excludes exponents the expansion needs; never truncate silently.
    TruncationOverflow(String),
    /// The window-enlargement self-check changed the answer.
    StabilityFailure(String),
    DimensionMismatch { expected: usize, got: usize },
    TooManyVariables(usize),
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::MalformedLinearForm => {
                write!(f, "linear form has no nonzero z-coefficient")
            }
            AlgebraError::TruncationOverflow(msg) => write!(f, "truncation overflow: {msg}"),
            AlgebraError::StabilityFailure(msg) => write!(f, "stability failure: {msg}"),
            AlgebraError::DimensionMismatch { expected, got } => {
                write!(f, "variable count mismatch: expected {expected}, got {got}")
            }
            AlgebraError::TooManyVariables(k) => {
                write!(f, "{k} residue variables exceeds the supported maximum {MAX_VARS}")
            }
        }
    }
}

impl std::error::Error for AlgebraError {}

/// Packed exponent vector of the residue variables.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ZExp([i16; MAX_VARS]);

impl ZExp {
    pub fn zero() -> ZExp {
        ZExp([0; MAX_VARS])
    }

    pub fn from_slice(e: &[i32]) -> ZExp {
        let mut out = [0i16; MAX_VARS];
        for (i, &x) in e.iter().enumerate() {
            out[i] = i16::try_from(x).expect("z-exponent out of i16 range");
        }
        ZExp(out)
    }

    pub fn to_vec(self, k: usize) -> Vec<i32> {
        self.0[..k].iter().map(|&x| x as i32).collect()
    }

    pub fn get(&self, v: usize) -> i32 {
        self.0[v] as i32
    }

    pub fn set(&mut self, v: usize, x: i32) {
        self.0[v] = i16::try_from(x).expect("z-exponent out of i16 range");
    }

    pub fn add(&self, other: &ZExp) -> ZExp {
        let mut out = [0i16; MAX_VARS];
        for i in 0..MAX_VARS {
            out[i] = self.0[i].checked_add(other.0[i]).expect("z-exponent overflow");
        }
        ZExp(out)
    }
}

/// Affine linear form a^0 + a^1 z_1 + ... + a^k z_k with a z-free constant part.
#[derive(Clone, Debug)]
pub struct LinearForm {
    pub k: usize,
    pub constant: Poly,
    pub zcoeffs: Vec<Rat>,
}

impl LinearForm {
    pub fn new(k: usize, constant: Poly, zcoeffs: Vec<Rat>) -> LinearForm {
        assert_eq!(zcoeffs.len(), k, "zcoeffs length must equal k");
        LinearForm { k, constant, zcoeffs }
    }

    /// Purely linear form from (variable index, coefficient) pairs, e.g.
    /// `z_m + z_r - z_l`. Indices are zero-based.
    pub fn from_vars(ring: &Arc<Ring>, k: usize, coeffs: &[(usize, i64)]) -> LinearForm {
        let mut z = vec![Rat::zero(); k];
        for &(v, c) in coeffs {
            z[v] += Rat::from_integer(c.into());
        }
        LinearForm::new(k, Poly::zero(ring), z)
    }

    /// Index q of the leading variable: the largest l with a_l != 0.
    pub fn leading(&self) -> Option<usize> {
        self.zcoeffs.iter().rposition(|c| !c.is_zero())
    }
}

/// Sparse Laurent polynomial/series in k residue variables with polynomial
/// coefficients and a per-variable inclusive exponent window.
///
/// Semantics are fixed to the expansion domain z_1 << ... << z_k; the window
/// records where the stored truncation is the truth.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentSeries {
    k: usize,
    window: Vec<(i32, i32)>,
    terms: BTreeMap<Vec<i32>, Poly>,
}

impl LaurentSeries {
    pub fn zero(k: usize, window: Vec<(i32, i32)>) -> LaurentSeries {
        assert_eq!(window.len(), k);
        LaurentSeries { k, window, terms: BTreeMap::new() }
    }

    /// Finite Laurent polynomial; the window is the hull of the support.
    pub fn from_terms(k: usize, terms: Vec<(Vec<i32>, Poly)>) -> LaurentSeries {
        let mut window = vec![(0i32, 0i32); k];
        for (e, _) in &terms {
            assert_eq!(e.len(), k);
            for v in 0..k {
                window[v].0 = window[v].0.min(e[v]);
                window[v].1 = window[v].1.max(e[v]);
            }
        }
        let mut out = LaurentSeries::zero(k, window);
        for (e, p) in terms {
            out.add_term(e, p);
        }
        out
    }

    pub fn one(k: usize, ring: &Arc<Ring>) -> LaurentSeries {
        LaurentSeries::from_terms(k, vec![(vec![0; k], Poly::one(ring))])
    }

    pub fn monomial(k: usize, exp: Vec<i32>, coeff: Poly) -> LaurentSeries {
        LaurentSeries::from_terms(k, vec![(exp, coeff)])
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn window(&self) -> &[(i32, i32)] {
        &self.window
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &Poly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[i32]) -> Option<&Poly> {
        self.terms.get(e)
    }

    pub fn in_window(&self, e: &[i32]) -> bool {
        e.iter().zip(&self.window).all(|(&x, &(lo, hi))| lo <= x && x <= hi)
    }

    /// Insert-or-accumulate; terms outside the window are rejected loudly.
    pub fn add_term(&mut self, e: Vec<i32>, p: Poly) {
        assert_eq!(e.len(), self.k);
        assert!(self.in_window(&e), "term exponent {e:?} outside window {:?}", self.window);
        if p.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(en) => {
                en.insert(p);
            }
            std::collections::btree_map::Entry::Occupied(mut en) => {
                en.get_mut().add_assign(&p);
                if en.get().is_zero() {
                    en.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &LaurentSeries) -> LaurentSeries {
        assert_eq!(self.k, other.k);
        let window: Vec<(i32, i32)> = self
            .window
            .iter()
            .zip(&other.window)
            .map(|(&(a, b), &(c, d))| (a.min(c), b.max(d)))
            .collect();
        let mut out = LaurentSeries::zero(self.k, window);
        for (e, p) in self.terms.iter().chain(other.terms.iter()) {
            out.add_term(e.clone(), p.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> LaurentSeries {
        let mut out = LaurentSeries::zero(self.k, self.window.clone());
        for (e, p) in &self.terms {
            out.add_term(e.clone(), p.scale(c));
        }
        out
    }

    /// Exact product of finite Laurent polynomials; the window is the sum hull.
    pub fn mul_exact(&self, other: &LaurentSeries) -> LaurentSeries {
        assert_eq!(self.k, other.k);
        let window: Vec<(i32, i32)> = self
            .window
            .iter()
            .zip(&other.window)
            .map(|(&(a, b), &(c, d))| (a + c, b + d))
            .collect();
        let mut out = LaurentSeries::zero(self.k, window);
        for (e1, p1) in &self.terms {
            for (e2, p2) in &other.terms {
                let e: Vec<i32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, p1.mul(p2));
            }
        }
        out
    }

    /// Multiply by an affine linear form, truncating to this series' window.
    pub fn mul_linear_form(&self, form: &LinearForm) -> LaurentSeries {
        assert_eq!(self.k, form.k);
        let mut out = LaurentSeries::zero(self.k, self.window.clone());
        for (e, p) in &self.terms {
            if !form.constant.is_zero() {
                let q = p.mul(&form.constant);
                if out.in_window(e) {
                    out.add_term(e.clone(), q);
                }
            }
            for (v, a) in form.zcoeffs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let mut e2 = e.clone();
                e2[v] += 1;
                if out.in_window(&e2) {
                    out.add_term(e2, p.scale(a));
                }
            }
        }
        out
    }

    /// Restrict to a smaller window.
    pub fn truncate(&self, window: Vec<(i32, i32)>) -> LaurentSeries {
        let mut out = LaurentSeries::zero(self.k, window);
        for (e, p) in &self.terms {
            if out.in_window(e) {
                out.add_term(e.clone(), p.clone());
            }
        }
        out
    }
}

/// Vandermonde product prod_{m < l} (z_m - z_l) as an exact Laurent polynomial.
pub fn vandermonde(k: usize, ring: &Arc<Ring>) -> LaurentSeries {
    let mut out = LaurentSeries::one(k, ring);
    for m in 0..k {
        for l in (m + 1)..k {
            let form = LinearForm::from_vars(ring, k, &[(m, 1), (l, -1)]);
            out = out.mul_exact(&linear_form_as_series(&form));
        }
    }
    out
}

pub fn linear_form_as_series(form: &LinearForm) -> LaurentSeries {
    let mut terms: Vec<(Vec<i32>, Poly)> = Vec::new();
    if !form.constant.is_zero() {
        terms.push((vec![0; form.k], form.constant.clone()));
    }
    let ring = form.constant.ring();
    for (v, a) in form.zcoeffs.iter().enumerate() {
        if !a.is_zero() {
            let mut e = vec![0; form.k];
            e[v] = 1;
            terms.push((e, Poly::constant(ring, a.clone())));
        }
    }
    LaurentSeries::from_terms(form.k, terms)
}

/// Raw terms of the geometric expansion of 1/form up to order `jmax`:
///   sum_{j=0..jmax} (-1)^j (a^0 + ... + a^{q-1} z_{q-1})^j / (a^q z_q)^{j+1}.
fn inverse_form_terms(form: &LinearForm, jmax: i64) -> Result<Vec<(ZExp, Poly)>, AlgebraError> {
    let q = form.leading().ok_or(AlgebraError::MalformedLinearForm)?;
    let ring = form.constant.ring().clone();
    let aq = form.zcoeffs[q].clone();
    // Non-leading part as a small Laurent polynomial.
    let mut base: Vec<(ZExp, Poly)> = Vec::new();
    if !form.constant.is_zero() {
        base.push((ZExp::zero(), form.constant.clone()));
    }
    for (v, a) in form.zcoeffs.iter().enumerate() {
        if v != q && !a.is_zero() {
            let mut e = ZExp::zero();
            e.set(v, 1);
            base.push((e, Poly::constant(&ring, a.clone())));
        }
    }

    let mut out: Vec<(ZExp, Poly)> = Vec::new();
    // power = base^j, built incrementally.
    let mut power: Vec<(ZExp, Poly)> = vec![(ZExp::zero(), Poly::one(&ring))];
    let mut inv_aq_pow = Rat::one() / aq.clone();
    let mut sign = Rat::one();
    for j in 0..=jmax {
        if j > 0 {
            let mut next: FxHashMap<ZExp, Poly> = FxHashMap::default();
            for (e1, p1) in &power {
                for (e2, p2) in &base {
                    let e = e1.add(e2);
                    next.entry(e).or_insert_with(|| Poly::zero(&ring)).add_assign(&p1.mul(p2));
                }
            }
            power = next.into_iter().filter(|(_, p)| !p.is_zero()).collect();
            if power.is_empty() {
                break; // nilpotent or zero non-leading part: expansion terminates
            }
            inv_aq_pow /= aq.clone();
            sign = -sign;
        }
        let scalar = sign.clone() * inv_aq_pow.clone();
        for (e, p) in &power {
            let mut e2 = *e;
            e2.set(q, e2.get(q) - (j as i32) - 1);
            out.push((e2, p.scale(&scalar)));
        }
    }
    Ok(out)
}

/// Geometric expansion of 1/form restricted to `window` (Laurent expansion in
/// the fixed domain z_1 << ... << z_k).
pub fn expand_inverse_linear(
    form: &LinearForm,
    window: Vec<(i32, i32)>,
) -> Result<LaurentSeries, AlgebraError> {
    let k = form.k;
    if k > MAX_VARS {
        return Err(AlgebraError::TooManyVariables(k));
    }
    if window.len() != k {
        return Err(AlgebraError::DimensionMismatch { expected: k, got: window.len() });
    }
    let q = form.leading().ok_or(AlgebraError::MalformedLinearForm)?;
    let (lo_q, hi_q) = window[q];
    if lo_q > -1 {
        return Err(AlgebraError::TruncationOverflow(format!(
            "window [{lo_q}, {hi_q}] for the leading variable z_{} excludes every \
             exponent of the expansion",
            q + 1
        )));
    }
    let jmax = (-(lo_q as i64)) - 1;
    let mut out = LaurentSeries::zero(k, window);
    for (e, p) in inverse_form_terms(form, jmax)? {
        let ev = e.to_vec(k);
        if out.in_window(&ev) {
            out.add_term(ev, p);
        }
    }
    Ok(out)
}

/// Inputs of one residue/coefficient-extraction problem: a finite Laurent
/// polynomial numerator, inverted linear factors, and extra finite series
/// multiplied in verbatim.
#[derive(Clone)]
pub struct ResidueProblem {
    pub k: usize,
    pub ring: Arc<Ring>,
    pub numerator: LaurentSeries,
    pub factors: Vec<LinearForm>,
    pub extras: Vec<LaurentSeries>,
    /// Widening of every internal truncation window; results must not depend on it.
    pub slack: i32,
}

impl ResidueProblem {
    pub fn new(k: usize, ring: &Arc<Ring>, numerator: LaurentSeries) -> ResidueProblem {
        ResidueProblem {
            k,
            ring: ring.clone(),
            numerator,
            factors: Vec::new(),
            extras: Vec::new(),
            slack: 0,
        }
    }

    pub fn with_slack(mut self, slack: i32) -> ResidueProblem {
        self.slack = slack;
        self
    }
}

struct Multiplicand {
    terms: Vec<(ZExp, Poly)>,
    min_contrib: [i64; MAX_VARS],
    max_contrib: [i64; MAX_VARS],
}

fn series_multiplicand(k: usize, s: &LaurentSeries) -> Multiplicand {
    let mut min_c = [0i64; MAX_VARS];
    let mut max_c = [0i64; MAX_VARS];
    let mut terms = Vec::with_capacity(s.num_terms());
    let mut first = true;
    for (e, p) in s.terms() {
        for v in 0..k {
            let x = e[v] as i64;
            if first {
                min_c[v] = x;
                max_c[v] = x;
            } else {
                min_c[v] = min_c[v].min(x);
                max_c[v] = max_c[v].max(x);
            }
        }
        first = false;
        terms.push((ZExp::from_slice(e), p.clone()));
    }
    if first {
        // zero series contributes nothing; bounds irrelevant
        min_c = [0; MAX_VARS];
        max_c = [0; MAX_VARS];
    }
    Multiplicand { terms, min_contrib: min_c, max_contrib: max_c }
}

/// Exact coefficients of the full product on the target window.
///
/// The product is numerator * prod 1/factor * prod extras, expanded in the
/// domain z_1 << ... << z_k; truncation orders for the geometric expansions
/// are inferred from the target window and are provably sufficient because
/// factors are folded in descending order of leading variable.
pub fn coefficient_window(
    prob: &ResidueProblem,
    target: &[(i32, i32)],
) -> Result<BTreeMap<Vec<i32>, Poly>, AlgebraError> {
    let k = prob.k;
    if k > MAX_VARS {
        return Err(AlgebraError::TooManyVariables(k));
    }
    if target.len() != k {
        return Err(AlgebraError::DimensionMismatch { expected: k, got: target.len() });
    }
    if prob.numerator.k() != k {
        return Err(AlgebraError::DimensionMismatch { expected: k, got: prob.numerator.k() });
    }
    for f in &prob.factors {
        if f.k != k {
            return Err(AlgebraError::DimensionMismatch { expected: k, got: f.k });
        }
        if f.leading().is_none() {
            return Err(AlgebraError::MalformedLinearForm);
        }
    }
    for s in &prob.extras {
        if s.k() != k {
            return Err(AlgebraError::DimensionMismatch { expected: k, got: s.k() });
        }
    }
    let slack = prob.slack as i64;

    if prob.numerator.is_zero() || prob.extras.iter().any(|s| s.is_zero()) {
        return Ok(BTreeMap::new());
    }

    // Per-variable maximum exponent of numerator * extras.
    let mut max_exp = [0i64; MAX_VARS];
    {
        let m = series_multiplicand(k, &prob.numerator);
        for v in 0..k {
            max_exp[v] = m.max_contrib[v];
        }
    }
    for s in &prob.extras {
        let m = series_multiplicand(k, s);
        for v in 0..k {
            max_exp[v] += m.max_contrib[v];
        }
    }

    // Factor truncation orders, cascading from the highest leading variable down:
    // once every factor led by a variable is folded in, that exponent is final.
    let mut factor_order: Vec<usize> = (0..prob.factors.len()).collect();
    factor_order.sort_by_key(|&i| std::cmp::Reverse(prob.factors[i].leading().unwrap()));
    let mut jcap = vec![0i64; prob.factors.len()];
    let mut pos_from_factors = [0i64; MAX_VARS];
    for v in (0..k).rev() {
        let led: Vec<usize> = (0..prob.factors.len())
            .filter(|&i| prob.factors[i].leading().unwrap() == v)
            .collect();
        if led.is_empty() {
            continue;
        }
        let upper = max_exp[v] + pos_from_factors[v];
        let cap = (upper - (target[v].0 as i64 - slack) - led.len() as i64).max(0);
        if cap > JCAP_LIMIT {
            return Err(AlgebraError::TruncationOverflow(format!(
                "inferred truncation order {cap} for z_{} is beyond the supported limit",
                v + 1
            )));
        }
        for &i in &led {
            jcap[i] = cap;
            let f = &prob.factors[i];
            for (t, a) in f.zcoeffs.iter().enumerate() {
                if t != v && !a.is_zero() {
                    pos_from_factors[t] += cap;
                }
            }
        }
    }

    // Multiplicand list: extras first, then factor expansions (descending leads).
    let mut pending: Vec<Multiplicand> = Vec::new();
    for s in &prob.extras {
        pending.push(series_multiplicand(k, s));
    }
    for &i in &factor_order {
        let f = &prob.factors[i];
        let q = f.leading().unwrap();
        let terms = inverse_form_terms(f, jcap[i])?;
        let mut m = Multiplicand {
            terms,
            min_contrib: [0; MAX_VARS],
            max_contrib: [0; MAX_VARS],
        };
        m.min_contrib[q] = -jcap[i] - 1;
        m.max_contrib[q] = -1;
        for (t, a) in f.zcoeffs.iter().enumerate() {
            if t != q && !a.is_zero() {
                m.max_contrib[t] = jcap[i];
            }
        }
        pending.push(m);
    }

    // Remaining-capacity totals for the pruning rule.
    let mut sum_min = [0i64; MAX_VARS];
    let mut sum_max = [0i64; MAX_VARS];
    for m in &pending {
        for v in 0..k {
            sum_min[v] += m.min_contrib[v];
            sum_max[v] += m.max_contrib[v];
        }
    }

    let alive = |e: &ZExp, sum_min: &[i64; MAX_VARS], sum_max: &[i64; MAX_VARS]| -> bool {
        for v in 0..k {
            let x = e.get(v) as i64;
            if x + sum_max[v] < target[v].0 as i64 - slack {
                return false;
            }
            if x + sum_min[v] > target[v].1 as i64 + slack {
                return false;
            }
        }
        true
    };

    let mut current: FxHashMap<ZExp, Poly> = FxHashMap::default();
    for (e, p) in prob.numerator.terms() {
        let key = ZExp::from_slice(e);
        if alive(&key, &sum_min, &sum_max) {
            current.entry(key).or_insert_with(|| Poly::zero(&prob.ring)).add_assign(p);
        }
    }

    for m in pending {
        for v in 0..k {
            sum_min[v] -= m.min_contrib[v];
            sum_max[v] -= m.max_contrib[v];
        }
        let mut next: FxHashMap<ZExp, Poly> =
            FxHashMap::with_capacity_and_hasher(current.len(), Default::default());
        for (e1, p1) in &current {
            if p1.is_zero() {
                continue;
            }
            for (e2, p2) in &m.terms {
                let e = e1.add(e2);
                if alive(&e, &sum_min, &sum_max) {
                    next.entry(e).or_insert_with(|| Poly::zero(&prob.ring)).add_assign(&p1.mul(p2));
                }
            }
        }
        current = next;
    }

    let mut out = BTreeMap::new();
    for (e, p) in current {
        if p.is_zero() {
            continue;
        }
        let ev = e.to_vec(k);
        if ev.iter().zip(target).all(|(&x, &(lo, hi))| lo <= x && x <= hi) {
            out.insert(ev, p);
        }
    }
    Ok(out)
}

/// Coefficient of a single exponent vector in the expanded product.
pub fn coefficient_at(prob: &ResidueProblem, at: &[i32]) -> Result<Poly, AlgebraError> {
    let target: Vec<(i32, i32)> = at.iter().map(|&x| (x, x)).collect();
    let map = coefficient_window(prob, &target)?;
    Ok(map.into_iter().next().map(|(_, p)| p).unwrap_or_else(|| Poly::zero(&prob.ring)))
}

/// Iterated residue at infinity: (-1)^k times the coefficient of
/// z_1^{-1} ... z_k^{-1} in the expansion of the product.
pub fn iterated_residue(prob: &ResidueProblem) -> Result<Poly, AlgebraError> {
    let at = vec![-1; prob.k];
    let p = coefficient_at(prob, &at)?;
    Ok(if prob.k % 2 == 1 { p.neg() } else { p })
}

/// Residue with the mandatory stability self-check: the computation is re-run
/// with every window bound enlarged by 2 and must return the identical value.
pub fn iterated_residue_checked(prob: &ResidueProblem) -> Result<Poly, AlgebraError> {
    let base = iterated_residue(prob)?;
    let wide = iterated_residue(&prob.clone().with_slack(prob.slack + 2))?;
    if base != wide {
        return Err(AlgebraError::StabilityFailure(
            "residue changed when truncation windows were enlarged by 2".into(),
        ));
    }
    Ok(base)
}

/// Multiplicative inverse of 1 + sum c_i t^i truncated at degree n:
/// returns s with (1 + sum c_i t^i)(1 + sum s_i t^i) = 1 mod t^{n+1}.
pub fn series_inverse_coeffs(c: &[Poly]) -> Vec<Poly> {
    let n = c.len();
    if n == 0 {
        return Vec::new();
    }
    let ring = c[0].ring().clone();
    let mut s: Vec<Poly> = Vec::with_capacity(n);
    for i in 1..=n {
        // s_i = -c_i - sum_{j=1}^{i-1} c_j s_{i-j}
        let mut acc = c[i - 1].neg();
        for j in 1..i {
            acc = acc.sub(&c[j - 1].mul(&s[i - j - 1]));
        }
        let _ = &ring;
        s.push(acc);
    }
    s
}

/// Segre classes s_1..s_n of symbols c_1..c_n: the inverse of the total Chern
/// series, as polynomials in the c-ring.
pub fn series_inverse(n: u32) -> Vec<Poly> {
    let ring = Ring::chern(n);
    let c: Vec<Poly> = (1..=n).map(|i| Poly::symbol(&ring, &format!("c_{i}"))).collect();
    series_inverse_coeffs(&c)
}

/// Degree of the one-variable polynomial obtained from `p` by substituting
/// z_m -> t for m in S and z_m -> 1 otherwise; None for the zero polynomial.
pub fn deg_substituted(p: &LaurentSeries, subset: &[usize]) -> Option<i64> {
    let mut by_deg: BTreeMap<i64, Poly> = BTreeMap::new();
    let ring = match p.terms().next() {
        Some((_, poly)) => poly.ring().clone(),
        None => return None,
    };
    for (e, poly) in p.terms() {
        let d: i64 = subset.iter().map(|&m| e[m] as i64).sum();
        by_deg.entry(d).or_insert_with(|| Poly::zero(&ring)).add_assign(poly);
    }
    by_deg.into_iter().rev().find(|(_, poly)| !poly.is_zero()).map(|(d, _)| d)
}

/// deg(q; S) for q a product of affine linear factors. None when some factor
/// substitutes to zero identically (the quotient degenerates).
pub fn deg_factors_substituted(factors: &[LinearForm], subset: &[usize]) -> Option<i64> {
    let mut total = 0i64;
    for f in factors {
        let s_coeff: Rat = subset.iter().map(|&m| f.zcoeffs[m].clone()).sum();
        if !s_coeff.is_zero() {
            total += 1;
        } else {
            let mut rest = f.constant.clone();
            let others: Rat = (0..f.k)
                .filter(|v| !subset.contains(v))
                .map(|v| f.zcoeffs[v].clone())
                .sum();
            rest.add_assign(&Poly::constant(f.constant.ring(), others));
            if rest.is_zero() {
                return None;
            }
        }
    }
    Some(total)
}

/// Number of factors whose leading variable is exactly m (zero-based).
pub fn lead_count(factors: &[LinearForm], m: usize) -> usize {
    factors.iter().filter(|f| f.leading() == Some(m)).count()
}

#[derive(Debug, Clone)]
pub struct VanishingLevel {
    /// 1-based level l of the check.
    pub l: usize,
    /// deg(p; k..l) + k - l + 1 < deg(q; k..l)
    pub option1: bool,
    /// deg(p; l) + 1 < deg(q; l) = lead(q; l)
    pub option2: bool,
}

/// Vanishing certificate report for an iterated residue of p(z)/prod factors.
#[derive(Debug, Clone)]
pub struct VanishingReport {
    pub levels: Vec<VanishingLevel>,
}

impl VanishingReport {
    pub fn certified(&self) -> Option<&VanishingLevel> {
        self.levels.iter().find(|lv| lv.option1 || lv.option2)
    }
}

impl fmt::Display for VanishingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.certified() {
            Some(lv) => write!(
                f,
                "vanishes by option {} at l = {}",
                if lv.option1 { 1 } else { 2 },
                lv.l
            ),
            None => write!(f, "no vanishing certified"),
        }
    }
}

/// Degree-based vanishing certificates for Res p(z) dz / prod factors.
///
/// For each l <= k it reports whether the tail-degree option
/// deg(p; k,...,l) + k - l + 1 < deg(q; k,...,l) or the single-variable option
/// deg(p; l) + 1 < deg(q; l) = lead(q; l) holds.
pub fn vanishing_predicates(p: &LaurentSeries, factors: &[LinearForm]) -> VanishingReport {
    assert!(!factors.is_empty(), "vanishing predicates need at least one factor");
    let k = p.k();
    let mut levels = Vec::new();
    for l in 1..=k {
        let tail: Vec<usize> = ((l - 1)..k).collect();
        let dp_tail = deg_substituted(p, &tail);
        let dq_tail = deg_factors_substituted(factors, &tail);
        let option1 = match (dp_tail, dq_tail) {
            (_, None) => false,
            (None, Some(_)) => true, // zero numerator: every residue vanishes
            (Some(dp), Some(dq)) => dp + (k as i64 - l as i64 + 1) < dq,
        };
        let single = [l - 1];
        let dp_l = deg_substituted(p, &single);
        let dq_l = deg_factors_substituted(factors, &single);
        let lead_l = lead_count(factors, l - 1) as i64;
        let option2 = match (dp_l, dq_l) {
            (_, None) => false,
            (None, Some(dq)) => dq == lead_l,
            (Some(dp), Some(dq)) => dq == lead_l && dp + 1 < dq,
        };
        levels.push(VanishingLevel { l, option1, option2 });
    }
    VanishingReport { levels }
}

//! Finite jet calculus: composition of map-jets, the reparametrisation
//! action, test-curve residuals, and the flag/Pluecker data of regular
//! curve jets.

use crate::rational::{rat_int, Rat};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JetError {
    DimensionMismatch { expected: usize, got: usize },
    OrderMismatch { expected: usize, got: usize },
    NonRegularCurve,
}

impl fmt::Display for JetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JetError::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            JetError::OrderMismatch { expected, got } => {
                write!(f, "jet order mismatch: expected {expected}, got {got}")
            }
            JetError::NonRegularCurve => write!(f, "curve jet is not regular (v_1 = 0)"),
        }
    }
}

impl std::error::Error for JetError {}

/// Truncated polynomial in `u` variables: monomial multi-index -> coefficient,
/// no constant term, total degree at most the jet order.
type TruncPoly = BTreeMap<Vec<u16>, Rat>;

fn tp_degree(m: &[u16]) -> u32 {
    m.iter().map(|&e| e as u32).sum()
}

fn tp_add_term(p: &mut TruncPoly, m: Vec<u16>, c: Rat) {
    if c.is_zero() {
        return;
    }
    let entry = p.entry(m).or_insert_with(Rat::zero);
    *entry += c;
}

fn tp_cleanup(p: &mut TruncPoly) {
    p.retain(|_, c| !c.is_zero());
}

fn tp_mul(a: &TruncPoly, b: &TruncPoly, order: u32) -> TruncPoly {
    let mut out = TruncPoly::new();
    for (m1, c1) in a {
        for (m2, c2) in b {
            if tp_degree(m1) + tp_degree(m2) > order {
                continue;
            }
            let m: Vec<u16> = m1.iter().zip(m2).map(|(x, y)| x + y).collect();
            tp_add_term(&mut out, m, c1.clone() * c2.clone());
        }
    }
    tp_cleanup(&mut out);
    out
}

/// A k-jet of a map germ (C^source, 0) -> (C^target, 0): for each target
/// coordinate, the Taylor coefficients f^{(j)}/j! indexed by degree-j
/// monomial multi-indices on the source, 1 <= j <= k.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet {
    pub source: usize,
    pub target: usize,
    pub order: usize,
    coords: Vec<TruncPoly>,
}

impl Jet {
    pub fn zero(source: usize, target: usize, order: usize) -> Jet {
        Jet { source, target, order, coords: vec![TruncPoly::new(); target] }
    }

    pub fn identity(dim: usize, order: usize) -> Jet {
        let mut jet = Jet::zero(dim, dim, order);
        for i in 0..dim {
            let mut m = vec![0u16; dim];
            m[i] = 1;
            jet.coords[i].insert(m, Rat::one());
        }
        jet
    }

    /// Linear jet from a target x source matrix.
    pub fn from_matrix(matrix: &[Vec<Rat>], source: usize, order: usize) -> Jet {
        let target = matrix.len();
        let mut jet = Jet::zero(source, target, order);
        for (row, out) in matrix.iter().zip(jet.coords.iter_mut()) {
            assert_eq!(row.len(), source);
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    let mut m = vec![0u16; source];
                    m[j] = 1;
                    out.insert(m, c.clone());
                }
            }
        }
        jet
    }

    pub fn set_coeff(&mut self, coord: usize, mono: Vec<u16>, c: Rat) {
        assert_eq!(mono.len(), self.source);
        let d = tp_degree(&mono);
        assert!(d >= 1 && d <= self.order as u32, "jet monomials have degree 1..=order");
        if c.is_zero() {
            self.coords[coord].remove(&mono);
        } else {
            self.coords[coord].insert(mono, c);
        }
    }

    pub fn coeff(&self, coord: usize, mono: &[u16]) -> Rat {
        self.coords[coord].get(mono).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coord(&self, coord: usize) -> impl Iterator<Item = (&Vec<u16>, &Rat)> {
        self.coords[coord].iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|p| p.is_empty())
    }

    /// The linear part as a target x source matrix.
    pub fn linear_part(&self) -> Vec<Vec<Rat>> {
        let mut out = vec![vec![Rat::zero(); self.source]; self.target];
        for (i, p) in self.coords.iter().enumerate() {
            for (m, c) in p {
                if tp_degree(m) == 1 {
                    let j = m.iter().position(|&e| e == 1).unwrap();
                    out[i][j] = c.clone();
                }
            }
        }
        out
    }

    /// Degree-j homogeneous part of one coordinate.
    fn homogeneous_part(&self, coord: usize, degree: u32) -> TruncPoly {
        self.coords[coord]
            .iter()
            .filter(|(m, _)| tp_degree(m) == degree)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect()
    }

}

/// Composition of map-jets by substitution, eliminating terms of degree > k.
/// For k = 1 this is matrix multiplication.
pub fn compose_jets(outer: &Jet, inner: &Jet) -> Result<Jet, JetError> {
    if outer.order != inner.order {
        return Err(JetError::OrderMismatch { expected: outer.order, got: inner.order });
    }
    if outer.source != inner.target {
        return Err(JetError::DimensionMismatch { expected: outer.source, got: inner.target });
    }
    let order = outer.order as u32;
    let mut out = Jet::zero(inner.source, outer.target, outer.order);
    for (w, g) in outer.coords.iter().enumerate() {
        let mut acc = TruncPoly::new();
        for (mono, c) in g {
            // substitute: prod_j inner_j(x)^{mono_j}
            let mut term = TruncPoly::new();
            term.insert(vec![0u16; inner.source], Rat::one());
            // the empty monomial acts as the unit of the truncated product; it
            // is removed again below because jets store no constant term
            for (j, &e) in mono.iter().enumerate() {
                for _ in 0..e {
                    term = tp_mul(&term, &inner.coords[j], order);
                }
            }
            for (m, v) in term {
                if tp_degree(&m) >= 1 {
                    tp_add_term(&mut acc, m, v * c.clone());
                }
            }
        }
        tp_cleanup(&mut acc);
        out.coords[w] = acc;
    }
    Ok(out)
}

/// Curve jet in C^n: the n x k matrix whose i-th column is v_i = gamma^(i)/i!.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveJet {
    pub n: usize,
    pub k: usize,
    /// `columns[i][a]` is the a-th coordinate of v_{i+1}
    pub columns: Vec<Vec<Rat>>,
}

impl CurveJet {
    pub fn new(n: usize, k: usize, columns: Vec<Vec<Rat>>) -> CurveJet {
        assert_eq!(columns.len(), k);
        for c in &columns {
            assert_eq!(c.len(), n);
        }
        CurveJet { n, k, columns }
    }

    /// The coordinate model curve (e_1, ..., e_k) in C^n, n >= k.
    pub fn coordinate(n: usize, k: usize) -> CurveJet {
        assert!(n >= k);
        let mut columns = vec![vec![Rat::zero(); n]; k];
        for (i, col) in columns.iter_mut().enumerate() {
            col[i] = Rat::one();
        }
        CurveJet { n, k, columns }
    }

    pub fn is_regular(&self) -> bool {
        self.columns[0].iter().any(|c| !c.is_zero())
    }

    pub fn as_jet(&self) -> Jet {
        let mut jet = Jet::zero(1, self.n, self.k);
        for (i, col) in self.columns.iter().enumerate() {
            for (a, c) in col.iter().enumerate() {
                if !c.is_zero() {
                    jet.set_coeff(a, vec![(i + 1) as u16], c.clone());
                }
            }
        }
        jet
    }

    pub fn from_jet(jet: &Jet) -> CurveJet {
        assert_eq!(jet.source, 1);
        let mut columns = vec![vec![Rat::zero(); jet.target]; jet.order];
        for a in 0..jet.target {
            for (m, c) in jet.coord(a) {
                let i = m[0] as usize;
                columns[i - 1][a] = c.clone();
            }
        }
        CurveJet { n: jet.target, k: jet.order, columns }
    }

    /// Reparametrise: gamma . phi as a curve jet.
    pub fn reparametrise(&self, phi: &Reparam) -> CurveJet {
        let composed = compose_jets(&self.as_jet(), &phi.as_jet(self.k)).unwrap();
        CurveJet::from_jet(&composed)
    }
}

/// A reparametrisation phi(t) = alpha_1 t + ... + alpha_k t^k.
#[derive(Clone, Debug, PartialEq)]
pub struct Reparam {
    pub alpha: Vec<Rat>,
}

impl Reparam {
    pub fn new(alpha: Vec<Rat>) -> Reparam {
        Reparam { alpha }
    }

    /// Group elements have alpha_1 != 0; alpha_1 = 1 is the unipotent radical.
    pub fn is_group_element(&self) -> bool {
        self.alpha.first().map_or(false, |a| !a.is_zero())
    }

    pub fn is_unipotent(&self) -> bool {
        self.alpha.first().map_or(false, |a| a.is_one())
    }

    pub fn as_jet(&self, order: usize) -> Jet {
        let mut jet = Jet::zero(1, 1, order);
        for (i, a) in self.alpha.iter().take(order).enumerate() {
            if !a.is_zero() {
                jet.set_coeff(0, vec![(i + 1) as u16], a.clone());
            }
        }
        jet
    }
}

/// The k x k upper-triangular matrix of the reparametrisation action:
/// entry (i, j) = sum over s_1 + ... + s_i = j, s_t >= 1 of
/// alpha_{s_1} ... alpha_{s_i}, i.e. the t^j coefficient of phi(t)^i.
/// Right multiplication acts on the row vector (f', f''/2!, ..., f^{(k)}/k!).
pub fn reparam_matrix(phi: &Reparam, k: usize) -> Vec<Vec<Rat>> {
    // phi^i as univariate truncated series, coefficients of t^1..t^k
    let mut out = vec![vec![Rat::zero(); k]; k];
    let mut power = vec![Rat::zero(); k + 1];
    power[0] = Rat::one(); // phi^0 = 1
    for i in 1..=k {
        let mut next = vec![Rat::zero(); k + 1];
        for d in 0..=k {
            if power[d].is_zero() {
                continue;
            }
            for (s, a) in phi.alpha.iter().take(k).enumerate() {
                let nd = d + s + 1;
                if nd <= k && !a.is_zero() {
                    let add = power[d].clone() * a.clone();
                    next[nd] += add;
                }
            }
        }
        power = next;
        for j in 1..=k {
            out[i - 1][j - 1] = power[j].clone();
        }
    }
    out
}

/// Row vector of normed derivatives times the action matrix: the matrix of
/// gamma . phi equals M_gamma * reparam_matrix(phi).
pub fn curve_matrix_action(gamma: &CurveJet, phi: &Reparam) -> CurveJet {
    let m = reparam_matrix(phi, gamma.k);
    let mut columns = vec![vec![Rat::zero(); gamma.n]; gamma.k];
    for j in 0..gamma.k {
        for a in 0..gamma.n {
            let mut acc = Rat::zero();
            for i in 0..gamma.k {
                acc += gamma.columns[i][a].clone() * m[i][j].clone();
            }
            columns[j][a] = acc;
        }
    }
    CurveJet { n: gamma.n, k: gamma.k, columns }
}

/// Symmetric multilinear part of order s evaluated at s vectors, by the
/// polarization identity B(u_1..u_s) = (1/s!) sum over T subseteq {1..s}
/// (-1)^{s-|T|} Psi_s(sum_{i in T} u_i). Returns one value per target
/// coordinate.
pub fn multilinear_eval(jet: &Jet, s: u32, vectors: &[&[Rat]]) -> Vec<Rat> {
    assert_eq!(vectors.len(), s as usize);
    let mut out = vec![Rat::zero(); jet.target];
    let mut factorial = Rat::one();
    for i in 1..=s as i64 {
        factorial *= rat_int(i);
    }
    for mask in 0u32..(1 << s) {
        let sign = if (s - mask.count_ones()) % 2 == 0 { Rat::one() } else { -Rat::one() };
        let mut x = vec![Rat::zero(); jet.source];
        for (i, v) in vectors.iter().enumerate() {
            if mask & (1 << i) != 0 {
                for (a, c) in v.iter().enumerate() {
                    x[a] += c.clone();
                }
            }
        }
        for coord in 0..jet.target {
            let part = jet.homogeneous_part(coord, s);
            let mut val = Rat::zero();
            for (m, c) in &part {
                let mut v = c.clone();
                for (idx, &e) in m.iter().enumerate() {
                    for _ in 0..e {
                        v *= x[idx].clone();
                    }
                }
                val += v;
            }
            out[coord] += sign.clone() * val;
        }
    }
    for v in out.iter_mut() {
        *v /= factorial.clone();
    }
    out
}

/// Ordered tuples of positive integers summing to m.
fn compositions(m: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for first in 1..=left {
            cur.push(first);
            rec(left - first, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, &mut Vec::new(), &mut out);
    out
}

/// The k residual vectors of the test-curve system: the m-th entry is
/// sum over ordered tuples tau with sum(tau) = m of Psi(v_tau), evaluated by
/// polarized multilinear forms. All entries vanish exactly when the
/// composition Psi . gamma vanishes through order k.
pub fn test_curve_residual(psi: &Jet, gamma: &CurveJet) -> Result<Vec<Vec<Rat>>, JetError> {
    if psi.source != gamma.n {
        return Err(JetError::DimensionMismatch { expected: psi.source, got: gamma.n });
    }
    if psi.order != gamma.k {
        return Err(JetError::OrderMismatch { expected: psi.order, got: gamma.k });
    }
    let k = gamma.k;
    let mut out = Vec::with_capacity(k);
    for m in 1..=k {
        let mut entry = vec![Rat::zero(); psi.target];
        for tau in compositions(m) {
            let vectors: Vec<&[Rat]> =
                tau.iter().map(|&i| gamma.columns[i - 1].as_slice()).collect();
            let vals = multilinear_eval(psi, tau.len() as u32, &vectors);
            for (a, v) in vals.into_iter().enumerate() {
                entry[a] += v;
            }
        }
        out.push(entry);
    }
    Ok(out)
}

/// Monomial basis of Sym^{<=k} C^n: multi-indices of total degree 1..=k,
/// ordered by (degree, lexicographic).
pub fn sym_basis(n: usize, k: usize) -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    fn rec(n: usize, deg: u32, pos: usize, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if pos == n {
            if deg == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for e in 0..=deg {
            cur[pos] = e as u16;
            rec(n, deg - e, pos + 1, cur, out);
        }
        cur[pos] = 0;
    }
    for d in 1..=k as u32 {
        let mut layer = Vec::new();
        rec(n, d, 0, &mut vec![0u16; n], &mut layer);
        layer.sort();
        out.extend(layer);
    }
    out
}

/// Spanning rows and Pluecker coordinates of the span attached to a regular
/// curve jet: row i is the sum over ordered compositions tau of i of the
/// distributively expanded products v_{tau_1} ... v_{tau_s} in the monomial
/// basis of Sym^{<=k} C^n (so v_2 + v_1^2, v_3 + 2 v_1 v_2 + v_1^3, ...),
/// and the Pluecker vector lists all k x k minors of the resulting
/// k x dim matrix over column subsets in lexicographic order.
///
/// The ordered-composition coefficients are forced by invariance: with them
/// the reparametrised row r_i transforms as alpha_1^i r_i plus a combination
/// of lower rows, so every minor scales by alpha_1^{k(k+1)/2}.
#[derive(Debug, Clone)]
pub struct FlagData {
    pub basis: Vec<Vec<u16>>,
    pub rows: Vec<Vec<Rat>>,
    pub pluckers: Vec<Rat>,
}

impl FlagData {
    /// Index of a basis monomial.
    pub fn basis_index(&self, mono: &[u16]) -> Option<usize> {
        self.basis.iter().position(|m| m == mono)
    }

    /// The distinguished coordinate: the minor over the single-variable
    /// columns e_1, ..., e_k.
    pub fn distinguished_minor(&self, n: usize, k: usize) -> Rat {
        let mut cols = Vec::new();
        for i in 0..k {
            let mut m = vec![0u16; n];
            m[i] = 1;
            cols.push(self.basis_index(&m).unwrap());
        }
        let sub: Vec<Vec<Rat>> = self
            .rows
            .iter()
            .map(|row| cols.iter().map(|&c| row[c].clone()).collect())
            .collect();
        determinant(sub)
    }
}

fn determinant(mut m: Vec<Vec<Rat>>) -> Rat {
    let n = m.len();
    let mut det = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let pivot = m[c][c].clone();
        det *= pivot.clone();
        for r in (c + 1)..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = m[r][c].clone() / pivot.clone();
            for cc in c..n {
                let delta = f.clone() * m[c][cc].clone();
                m[r][cc] -= delta;
            }
        }
    }
    det
}

fn column_subsets(d: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(d: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for c in start..d {
            cur.push(c);
            rec(d, k, c + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, k, 0, &mut Vec::new(), &mut out);
    out
}

pub fn curve_flag_data(gamma: &CurveJet) -> Result<FlagData, JetError> {
    if !gamma.is_regular() {
        return Err(JetError::NonRegularCurve);
    }
    let (n, k) = (gamma.n, gamma.k);
    let basis = sym_basis(n, k);
    let index: BTreeMap<Vec<u16>, usize> =
        basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let mut rows = Vec::with_capacity(k);
    for i in 1..=k {
        let mut row = vec![Rat::zero(); basis.len()];
        for tau in compositions(i) {
            // product v_{tau_1} ... v_{tau_s} expanded distributively
            let mut poly: BTreeMap<Vec<u16>, Rat> = BTreeMap::new();
            poly.insert(vec![0u16; n], Rat::one());
            for &part in &tau {
                let v = &gamma.columns[part - 1];
                let mut next: BTreeMap<Vec<u16>, Rat> = BTreeMap::new();
                for (m, c) in &poly {
                    for (a, coeff) in v.iter().enumerate() {
                        if coeff.is_zero() {
                            continue;
                        }
                        let mut m2 = m.clone();
                        m2[a] += 1;
                        let entry = next.entry(m2).or_insert_with(Rat::zero);
                        *entry += c.clone() * coeff.clone();
                    }
                }
                poly = next;
            }
            for (m, c) in poly {
                if let Some(&idx) = index.get(&m) {
                    row[idx] += c;
                }
            }
        }
        rows.push(row);
    }
    let mut pluckers = Vec::new();
    for cols in column_subsets(basis.len(), k) {
        let sub: Vec<Vec<Rat>> =
            rows.iter().map(|row| cols.iter().map(|&c| row[c].clone()).collect()).collect();
        pluckers.push(determinant(sub));
    }
    Ok(FlagData { basis, rows, pluckers })
}

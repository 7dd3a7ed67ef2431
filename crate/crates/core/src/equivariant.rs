//! Equivariant multidegrees of monomial ideals and torus fixed-point sums,
//! with the sum/residue equivalence oracle.

use crate::laurent::{
    iterated_residue, vandermonde, AlgebraError, LaurentSeries, LinearForm, ResidueProblem,
};
use crate::rational::{rat_int, Rat};
use crate::ring::{Mono, Poly, Ring};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EquivariantError {
    ZeroIdeal,
    UnitIdeal,
    WeightCount { expected: usize, got: usize },
    RepeatedLambda,
    Algebra(AlgebraError),
}

impl fmt::Display for EquivariantError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EquivariantError::ZeroIdeal => write!(f, "the zero ideal has no multidegree"),
            EquivariantError::UnitIdeal => write!(f, "the unit ideal has no multidegree"),
            EquivariantError::WeightCount { expected, got } => {
                write!(f, "expected {expected} coordinate weights, got {got}")
            }
            EquivariantError::RepeatedLambda => {
                write!(f, "fixed-point sum requires pairwise distinct lambda values")
            }
            EquivariantError::Algebra(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for EquivariantError {}

impl From<AlgebraError> for EquivariantError {
    fn from(e: AlgebraError) -> Self {
        EquivariantError::Algebra(e)
    }
}

/// Integer linear combination of the basis weights lambda_1 .. lambda_r.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVector {
    pub coeffs: Vec<i64>,
}

impl WeightVector {
    pub fn new(coeffs: Vec<i64>) -> WeightVector {
        WeightVector { coeffs }
    }

    pub fn basis(r: usize, j: usize) -> WeightVector {
        let mut coeffs = vec![0; r];
        coeffs[j] = 1;
        WeightVector { coeffs }
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn as_poly(&self, ring: &Arc<Ring>) -> Poly {
        let mut p = Poly::zero(ring);
        for (j, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                let mut m = Mono::one(ring.len());
                m.0[j] = 1;
                p.add_term(m, rat_int(c));
            }
        }
        p
    }
}

/// Monomial ideal by its minimal generating exponent vectors (an antichain).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    pub n_vars: usize,
    gens: Vec<Vec<u32>>,
}

impl MonomialIdeal {
    pub fn new(n_vars: usize, generators: Vec<Vec<u32>>) -> MonomialIdeal {
        for g in &generators {
            assert_eq!(g.len(), n_vars, "generator length must equal the variable count");
        }
        // minimalize to an antichain under componentwise <=
        let mut minimal: Vec<Vec<u32>> = Vec::new();
        for g in &generators {
            if generators
                .iter()
                .any(|h| h != g && h.iter().zip(g).all(|(a, b)| a <= b))
            {
                // strictly divisible by another generator, or a duplicate;
                // duplicates keep one copy below
                if generators
                    .iter()
                    .any(|h| h != g && h.iter().zip(g).all(|(a, b)| a <= b) && h.iter().zip(g).any(|(a, b)| a < b))
                {
                    continue;
                }
            }
            if !minimal.contains(g) {
                minimal.push(g.clone());
            }
        }
        minimal.sort();
        MonomialIdeal { n_vars, gens: minimal }
    }

    pub fn generators(&self) -> &[Vec<u32>] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.iter().all(|&e| e == 0))
    }

    /// Intersection with another monomial ideal (pairwise lcm of generators);
    /// its variety is the union of the two varieties.
    pub fn intersection(&self, other: &MonomialIdeal) -> MonomialIdeal {
        assert_eq!(self.n_vars, other.n_vars);
        let mut gens = Vec::new();
        for g in &self.gens {
            for h in &other.gens {
                gens.push(g.iter().zip(h).map(|(a, b)| *a.max(b)).collect());
            }
        }
        MonomialIdeal::new(self.n_vars, gens)
    }

    /// Codimension of the zero set: the smallest size of a variable subset
    /// meeting the support of every generator.
    pub fn codim(&self) -> Option<usize> {
        if self.is_zero() || self.is_unit() {
            return None;
        }
        let supports = self.supports();
        (1..=self.n_vars).find(|&size| !covers_of_size(&supports, self.n_vars, size).is_empty())
    }

    fn supports(&self) -> Vec<Vec<usize>> {
        self.gens
            .iter()
            .map(|g| g.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i).collect())
            .collect()
    }
}

fn covers_of_size(supports: &[Vec<usize>], n: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(
        n: usize,
        size: usize,
        start: usize,
        cur: &mut Vec<usize>,
        supports: &[Vec<usize>],
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == size {
            if supports.iter().all(|s| s.iter().any(|v| cur.contains(v))) {
                out.push(cur.clone());
            }
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(n, size, v + 1, cur, supports, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, size, 0, &mut Vec::new(), supports, &mut out);
    out
}

/// One coordinate weight per variable of the ambient space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightAssignment {
    pub eta: Vec<WeightVector>,
}

impl WeightAssignment {
    pub fn new(eta: Vec<WeightVector>) -> WeightAssignment {
        WeightAssignment { eta }
    }

    pub fn rank(&self) -> usize {
        self.eta.first().map(|w| w.rank()).unwrap_or(0)
    }

    pub fn ring(&self) -> Arc<Ring> {
        Ring::lambda(self.rank() as u32)
    }
}

/// An isolated component of the zero set with its multiplicity.
#[derive(Debug, Clone)]
pub struct MdegComponent {
    /// Zero-based variable indices of the coordinate subspace { y_i = 0 }.
    pub subset: Vec<usize>,
    pub multiplicity: u64,
}

/// mult(p[subset], M): lattice points a supported on the subset such that no
/// generator restricted to the subset divides y^a. The count is monotone in
/// a, so the search is bounded by the componentwise maxima of the generators
/// on the subset.
fn subspace_multiplicity(ideal: &MonomialIdeal, subset: &[usize]) -> u64 {
    if ideal.generators().iter().any(|g| subset.iter().all(|&v| g[v] == 0)) {
        // some generator survives on the subspace: not a component
        return 0;
    }
    let bounds: Vec<u32> = subset
        .iter()
        .map(|&v| ideal.generators().iter().map(|g| g[v]).max().unwrap_or(0))
        .collect();
    let mut count = 0u64;
    let mut a = vec![0u32; subset.len()];
    loop {
        let divisible = ideal
            .generators()
            .iter()
            .any(|g| subset.iter().enumerate().all(|(ci, &v)| g[v] <= a[ci]));
        if !divisible {
            count += 1;
        }
        let mut pos = 0;
        loop {
            if pos == a.len() {
                return count;
            }
            if a[pos] < bounds[pos] {
                a[pos] += 1;
                break;
            }
            a[pos] = 0;
            pos += 1;
        }
    }
}

pub fn mdeg_components(ideal: &MonomialIdeal) -> Result<Vec<MdegComponent>, EquivariantError> {
    if ideal.is_zero() {
        return Err(EquivariantError::ZeroIdeal);
    }
    if ideal.is_unit() {
        return Err(EquivariantError::UnitIdeal);
    }
    let s = ideal.codim().expect("proper nonzero ideal has a codimension");
    let supports = ideal.supports();
    let mut out = Vec::new();
    for subset in covers_of_size(&supports, ideal.n_vars, s) {
        let multiplicity = subspace_multiplicity(ideal, &subset);
        if multiplicity > 0 {
            out.push(MdegComponent { subset, multiplicity });
        }
    }
    Ok(out)
}

/// Multidegree of a monomial ideal: the sum over codimension-s coordinate
/// subspaces of multiplicity times the product of their coordinate weights.
pub fn mdeg_monomial(
    ideal: &MonomialIdeal,
    weights: &WeightAssignment,
) -> Result<Poly, EquivariantError> {
    if weights.eta.len() != ideal.n_vars {
        return Err(EquivariantError::WeightCount {
            expected: ideal.n_vars,
            got: weights.eta.len(),
        });
    }
    let ring = weights.ring();
    let mut out = Poly::zero(&ring);
    for comp in mdeg_components(ideal)? {
        let mut term = Poly::constant(&ring, rat_int(comp.multiplicity as i64));
        for &v in &comp.subset {
            term = term.mul(&weights.eta[v].as_poly(&ring));
        }
        out.add_assign(&term);
    }
    Ok(out)
}

/// Multidegree of a complete intersection: the product of the relation
/// degrees (equally, the equivariant Euler class of the bundle they span).
pub fn mdeg_complete_intersection(degrees: &[WeightVector], rank: usize) -> Poly {
    let ring = Ring::lambda(rank as u32);
    let mut out = Poly::one(&ring);
    for d in degrees {
        out = out.mul(&d.as_poly(&ring));
    }
    out
}

/// Degree report for one basis weight: deg_{lambda_m} mdeg against
/// deg(eta_1..eta_N; m) - 1. Report only: the literal inequality fails on
/// instances like a coordinate hyperplane carrying the only lambda_m weight,
/// so nothing is asserted.
#[derive(Debug, Clone)]
pub struct DegreeReport {
    pub m: usize,
    pub mdeg_degree: u32,
    pub bound: i64,
    pub holds: bool,
}

impl fmt::Display for DegreeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "deg_lambda_{} mdeg = {} vs bound {}: {}",
            self.m + 1,
            self.mdeg_degree,
            self.bound,
            if self.holds {
                "inequality holds"
            } else {
                "inequality not satisfied on this instance"
            }
        )
    }
}

pub fn prop48_degree_report(
    ideal: &MonomialIdeal,
    weights: &WeightAssignment,
    m: usize,
) -> Result<DegreeReport, EquivariantError> {
    let mdeg = mdeg_monomial(ideal, weights)?;
    let mdeg_degree = mdeg.degree_in(m);
    let carrying = weights.eta.iter().filter(|w| w.coeffs[m] != 0).count() as i64;
    let bound = carrying - 1;
    Ok(DegreeReport { m, mdeg_degree, bound, holds: (mdeg_degree as i64) <= bound })
}

/// Ordered k-element subsets of {0, .., n-1}.
fn ordered_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !cur.contains(&v) {
                cur.push(v);
                rec(n, k, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(n, k, &mut Vec::new(), &mut out);
    out
}

fn eval_zpoly(q: &LaurentSeries, values: &[Rat]) -> Rat {
    let mut acc = Rat::zero();
    for (e, p) in q.terms() {
        let mut v = p.as_constant().expect("fixed-point sum takes scalar z-polynomials");
        for (idx, &exp) in e.iter().enumerate() {
            assert!(exp >= 0, "fixed-point sum takes polynomial Q");
            for _ in 0..exp {
                v *= values[idx].clone();
            }
        }
        acc += v;
    }
    acc
}

fn distinct(lambda: &[Rat]) -> bool {
    for i in 0..lambda.len() {
        for j in (i + 1)..lambda.len() {
            if lambda[i] == lambda[j] {
                return false;
            }
        }
    }
    true
}

/// Fixed-point sum over ordered k-subsets sigma of {1..n}:
/// sum of Q(lambda_sigma(1), .., lambda_sigma(k)) divided by
/// prod_{m<=k} prod_{i not in sigma(1..m)} (lambda_i - lambda_sigma(m)).
/// The denominator depends only on the subset partition, so any completion
/// of sigma to a permutation gives the same value.
pub fn fixed_point_sum(
    q: &LaurentSeries,
    lambda: &[Rat],
    k: usize,
) -> Result<Rat, EquivariantError> {
    let n = lambda.len();
    assert!(k <= n, "fixed-point sum needs k <= n");
    if !distinct(lambda) {
        return Err(EquivariantError::RepeatedLambda);
    }
    let mut acc = Rat::zero();
    for sigma in ordered_subsets(n, k) {
        let values: Vec<Rat> = sigma.iter().map(|&i| lambda[i].clone()).collect();
        let mut denom = Rat::one();
        for m in 0..k {
            for i in 0..n {
                if !sigma[..=m].contains(&i) {
                    denom *= lambda[i].clone() - lambda[sigma[m]].clone();
                }
            }
        }
        acc += eval_zpoly(q, &values) / denom;
    }
    Ok(acc)
}

/// Literal-completion variant used to assert completion independence: unused
/// indices are appended in increasing order and the denominator is indexed
/// exactly as prod_{1<=m<=k} prod_{i=m+1}^{n} (lambda_sigma(i) - lambda_sigma(m)).
pub fn fixed_point_sum_literal_completion(
    q: &LaurentSeries,
    lambda: &[Rat],
    k: usize,
) -> Result<Rat, EquivariantError> {
    let n = lambda.len();
    if !distinct(lambda) {
        return Err(EquivariantError::RepeatedLambda);
    }
    let mut acc = Rat::zero();
    for sigma in ordered_subsets(n, k) {
        let mut full = sigma.clone();
        let mut rest: Vec<usize> = (0..n).filter(|v| !sigma.contains(v)).collect();
        full.append(&mut rest);
        let values: Vec<Rat> = sigma.iter().map(|&i| lambda[i].clone()).collect();
        let mut denom = Rat::one();
        for m in 0..k {
            for i in (m + 1)..n {
                denom *= lambda[full[i]].clone() - lambda[full[m]].clone();
            }
        }
        acc += eval_zpoly(q, &values) / denom;
    }
    Ok(acc)
}

/// The residue side of the localisation identity: the iterated residue of
/// Vandermonde * Q over prod_{l,i} (lambda_i - z_l), with symbolic lambda.
pub fn localisation_residue(
    q: &LaurentSeries,
    n: usize,
    k: usize,
) -> Result<Poly, EquivariantError> {
    localisation_residue_slack(q, n, k, 0)
}

pub fn localisation_residue_slack(
    q: &LaurentSeries,
    n: usize,
    k: usize,
    slack: i32,
) -> Result<Poly, EquivariantError> {
    let ring = Ring::lambda(n as u32);
    let q_lifted = LaurentSeries::from_terms(
        k,
        q.terms()
            .map(|(e, p)| (e.clone(), Poly::constant(&ring, p.as_constant().expect("scalar Q"))))
            .collect(),
    );
    let numerator = vandermonde(k, &ring).mul_exact(&q_lifted);
    let mut prob = ResidueProblem::new(k, &ring, numerator).with_slack(slack);
    for l in 0..k {
        for i in 1..=n {
            let lam = Poly::symbol(&ring, &format!("lambda_{i}"));
            let mut z = vec![Rat::zero(); k];
            z[l] = -Rat::one();
            prob.factors.push(LinearForm::new(k, lam, z));
        }
    }
    Ok(iterated_residue(&prob)?)
}

#[derive(Debug, Clone)]
pub struct OracleReport {
    pub k: usize,
    pub n: usize,
    pub seed: u64,
    pub lambda: Vec<Rat>,
    pub sum_value: Rat,
    pub residue_value: Rat,
}

impl OracleReport {
    pub fn equal(&self) -> bool {
        self.sum_value == self.residue_value
    }
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", if self.equal() { "EQUAL" } else { "DIFFER" })
    }
}

fn xorshift(state: &mut u64) -> u64 {
    let mut x = *state;
    x ^= x << 13;
    x ^= x >> 7;
    x ^= x << 17;
    *state = x;
    x
}

/// Distinct random rationals with small numerators drawn from the seed.
pub fn random_distinct_lambda(n: usize, seed: u64) -> Vec<Rat> {
    let mut state = seed ^ 0x9e3779b97f4a7c15;
    xorshift(&mut state);
    let mut out: Vec<Rat> = Vec::new();
    while out.len() < n {
        let p = (xorshift(&mut state) % 19) as i64 - 9;
        let q = 1 + (xorshift(&mut state) % 4) as i64;
        let cand = crate::rational::rat(p, q);
        if !out.contains(&cand) {
            out.push(cand);
        }
    }
    out
}

/// Double-evaluation oracle: the fixed-point sum against the symbolic residue
/// evaluated at random distinct rational lambda values.
pub fn localisation_oracle(
    q: &LaurentSeries,
    n: usize,
    k: usize,
    seed: u64,
) -> Result<OracleReport, EquivariantError> {
    Ok(localisation_oracle_many(q, n, k, &[seed])?.pop().unwrap())
}

/// Oracle over many seeds with the symbolic residue computed once.
pub fn localisation_oracle_many(
    q: &LaurentSeries,
    n: usize,
    k: usize,
    seeds: &[u64],
) -> Result<Vec<OracleReport>, EquivariantError> {
    let residue = localisation_residue(q, n, k)?;
    let mut out = Vec::new();
    for &seed in seeds {
        let lambda = random_distinct_lambda(n, seed);
        let residue_value = residue.eval_all(&lambda);
        let sum_value = fixed_point_sum(q, &lambda, k)?;
        out.push(OracleReport { k, n, seed, lambda, sum_value, residue_value });
    }
    Ok(out)
}

/// Random homogeneous scalar z-polynomial for the oracle sweeps.
pub fn random_homogeneous_q(k: usize, degree: u32, seed: u64) -> LaurentSeries {
    let ring = Ring::scalar();
    let mut state = seed ^ 0xabcdef0123456789;
    xorshift(&mut state);
    let mut terms: BTreeMap<Vec<i32>, Poly> = BTreeMap::new();
    fn comps(total: u32, parts: usize) -> Vec<Vec<u32>> {
        if parts == 1 {
            return vec![vec![total]];
        }
        let mut out = Vec::new();
        for first in 0..=total {
            for mut rest in comps(total - first, parts - 1) {
                let mut v = vec![first];
                v.append(&mut rest);
                out.push(v);
            }
        }
        out
    }
    for e in comps(degree, k) {
        let c = (xorshift(&mut state) % 11) as i64 - 5;
        if c != 0 {
            terms.insert(e.iter().map(|&x| x as i32).collect(), Poly::constant(&ring, rat_int(c)));
        }
    }
    if terms.is_empty() {
        let e: Vec<i32> = (0..k).map(|i| if i == 0 { degree as i32 } else { 0 }).collect();
        terms.insert(e, Poly::one(&ring));
    }
    LaurentSeries::from_terms(k, terms.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn eta_basis(n: usize) -> WeightAssignment {
        WeightAssignment::new((0..n).map(|j| WeightVector::basis(n, j)).collect())
    }

    fn lambda_poly(ring: &Arc<Ring>, j: usize) -> Poly {
        Poly::symbol(ring, &format!("lambda_{}", j + 1))
    }

    #[test]
    fn mdeg_subspace_examples() {
        let w = eta_basis(2);
        let ring = w.ring();
        let m = MonomialIdeal::new(2, vec![vec![1, 0]]);
        assert!(mdeg_monomial(&m, &w).unwrap().eq_poly(&lambda_poly(&ring, 0)));

        let m = MonomialIdeal::new(2, vec![vec![2, 0]]);
        let want = lambda_poly(&ring, 0).scale(&rat_int(2));
        assert!(mdeg_monomial(&m, &w).unwrap().eq_poly(&want));

        let m = MonomialIdeal::new(2, vec![vec![1, 1]]);
        let want = lambda_poly(&ring, 0).add(&lambda_poly(&ring, 1));
        assert!(mdeg_monomial(&m, &w).unwrap().eq_poly(&want));
    }

    #[test]
    fn mdeg_errors() {
        let w = eta_basis(2);
        assert!(matches!(
            mdeg_monomial(&MonomialIdeal::new(2, vec![]), &w),
            Err(EquivariantError::ZeroIdeal)
        ));
        assert!(matches!(
            mdeg_monomial(&MonomialIdeal::new(2, vec![vec![0, 0]]), &w),
            Err(EquivariantError::UnitIdeal)
        ));
        assert!(matches!(
            mdeg_monomial(&MonomialIdeal::new(2, vec![vec![1, 0]]), &eta_basis(3)),
            Err(EquivariantError::WeightCount { .. })
        ));
    }

    #[test]
    fn complete_intersection_examples() {
        let one = mdeg_complete_intersection(&[], 1);
        assert!(one.eq_poly(&Poly::one(&Ring::lambda(1))));

        let single = mdeg_complete_intersection(&[WeightVector::basis(1, 0)], 1);
        assert!(single.eq_poly(&lambda_poly(&Ring::lambda(1), 0)));

        let ring = Ring::lambda(2);
        let d1 = WeightVector::new(vec![2, 0]);
        let d2 = WeightVector::new(vec![1, 1]);
        let prod = mdeg_complete_intersection(&[d1, d2], 2);
        let l1 = lambda_poly(&ring, 0);
        let l2 = lambda_poly(&ring, 1);
        let want = l1.mul(&l1).scale(&rat_int(2)).add(&l1.mul(&l2).scale(&rat_int(2)));
        assert!(prod.eq_poly(&want));
    }

    #[test]
    fn additivity_on_unions() {
        let w = eta_basis(3);
        let a = MonomialIdeal::new(3, vec![vec![1, 0, 0]]);
        let b = MonomialIdeal::new(3, vec![vec![0, 1, 0]]);
        let union = a.intersection(&b);
        let want = mdeg_monomial(&a, &w).unwrap().add(&mdeg_monomial(&b, &w).unwrap());
        assert!(mdeg_monomial(&union, &w).unwrap().eq_poly(&want));

        let a = MonomialIdeal::new(3, vec![vec![2, 0, 0]]);
        let b = MonomialIdeal::new(3, vec![vec![0, 3, 0]]);
        let union = a.intersection(&b);
        let want = mdeg_monomial(&a, &w).unwrap().add(&mdeg_monomial(&b, &w).unwrap());
        assert!(mdeg_monomial(&union, &w).unwrap().eq_poly(&want));
    }

    #[test]
    fn elimination_axiom() {
        // appending y_0 with relation y_0 = 0 multiplies mdeg by eta_0
        let base = MonomialIdeal::new(2, vec![vec![1, 1], vec![0, 3]]);
        let w2 = WeightAssignment::new(vec![
            WeightVector::new(vec![1, 0, 0]),
            WeightVector::new(vec![0, 1, 0]),
        ]);
        let md = mdeg_monomial(&base, &w2).unwrap();

        let ext = MonomialIdeal::new(3, vec![vec![1, 0, 0], vec![0, 1, 1], vec![0, 0, 3]]);
        let eta0 = WeightVector::new(vec![1, 1, 0]);
        let w3 = WeightAssignment::new(vec![
            eta0.clone(),
            WeightVector::new(vec![1, 0, 0]),
            WeightVector::new(vec![0, 1, 0]),
        ]);
        let got = mdeg_monomial(&ext, &w3).unwrap();
        let want = md.mul(&eta0.as_poly(&w3.ring()));
        assert!(got.eq_poly(&want));
    }

    #[test]
    fn positivity_of_multiplicities() {
        let suite = [
            MonomialIdeal::new(3, vec![vec![2, 1, 0], vec![0, 0, 2]]),
            MonomialIdeal::new(3, vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]),
            MonomialIdeal::new(4, vec![vec![1, 2, 0, 0], vec![0, 0, 1, 3]]),
        ];
        for ideal in &suite {
            let comps = mdeg_components(ideal).unwrap();
            assert!(!comps.is_empty());
            for comp in comps {
                assert!(comp.multiplicity > 0);
            }
        }
    }

    #[test]
    fn symmetry_spot_check() {
        let m = MonomialIdeal::new(2, vec![vec![2, 1], vec![1, 2]]);
        let w = eta_basis(2);
        let md = mdeg_monomial(&m, &w).unwrap();
        let swapped =
            WeightAssignment::new(vec![WeightVector::basis(2, 1), WeightVector::basis(2, 0)]);
        let md2 = mdeg_monomial(&m, &swapped).unwrap();
        assert!(md.eq_poly(&md2));
    }

    #[test]
    fn prop48_examples() {
        // <y_1 y_2> with eta = (lambda_1, lambda_1): 1 = bound, holds with equality
        let m = MonomialIdeal::new(2, vec![vec![1, 1]]);
        let w = WeightAssignment::new(vec![
            WeightVector::new(vec![1]),
            WeightVector::new(vec![1]),
        ]);
        let rep = prop48_degree_report(&m, &w, 0).unwrap();
        assert!(rep.holds && rep.mdeg_degree == 1 && rep.bound == 1);

        // <y_1> with the only lambda_1-carrying weight: 1 > 0, not satisfied
        let m = MonomialIdeal::new(2, vec![vec![1, 0]]);
        let w = WeightAssignment::new(vec![
            WeightVector::new(vec![1, 0]),
            WeightVector::new(vec![0, 1]),
        ]);
        let rep = prop48_degree_report(&m, &w, 0).unwrap();
        assert!(!rep.holds);
        assert!(rep.to_string().contains("not satisfied"));

        // <y_2^2> with eta = (lambda_1, lambda_2), m = 1: 0 <= 0 holds
        let m = MonomialIdeal::new(2, vec![vec![0, 2]]);
        let rep = prop48_degree_report(&m, &w, 0).unwrap();
        assert!(rep.holds && rep.mdeg_degree == 0 && rep.bound == 0);
    }

    #[test]
    fn fixed_point_sum_examples() {
        let ring = Ring::scalar();
        let one = LaurentSeries::one(1, &ring);
        assert_eq!(fixed_point_sum(&one, &[rat(3, 2)], 1).unwrap(), Rat::one());

        let z1 = LaurentSeries::monomial(1, vec![1], Poly::one(&ring));
        for lams in [[rat(1, 1), rat(2, 1)], [rat(-5, 3), rat(7, 2)]] {
            assert_eq!(fixed_point_sum(&z1, &lams, 1).unwrap(), -Rat::one());
        }

        let one2 = LaurentSeries::one(2, &ring);
        assert_eq!(fixed_point_sum(&one2, &[rat(1, 1), rat(4, 1)], 2).unwrap(), Rat::zero());

        assert!(matches!(
            fixed_point_sum(&one2, &[rat(1, 1), rat(1, 1)], 2),
            Err(EquivariantError::RepeatedLambda)
        ));
    }

    #[test]
    fn completion_independence() {
        let mut state = 77u64;
        for _ in 0..6 {
            let k = 1 + (xorshift(&mut state) % 2) as usize;
            let n = k + 1 + (xorshift(&mut state) % 2) as usize;
            let q = random_homogeneous_q(k, (xorshift(&mut state) % 3) as u32, state);
            let lambda = random_distinct_lambda(n, state);
            let a = fixed_point_sum(&q, &lambda, k).unwrap();
            let b = fixed_point_sum_literal_completion(&q, &lambda, k).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn oracle_examples() {
        let ring = Ring::scalar();
        // k=1, n=2, Q=z_1: both sides -1 independently of lambda
        let z1 = LaurentSeries::monomial(1, vec![1], Poly::one(&ring));
        let rep = localisation_oracle(&z1, 2, 1, 7).unwrap();
        assert!(rep.equal());
        assert_eq!(rep.sum_value, -Rat::one());
        assert_eq!(rep.to_string(), "EQUAL");

        // k=2, n=2, Q=1: both sides 0 by degree count
        let one2 = LaurentSeries::one(2, &ring);
        let rep = localisation_oracle(&one2, 2, 2, 3).unwrap();
        assert!(rep.equal());
        assert_eq!(rep.sum_value, Rat::zero());

        // k=2, n=3, Q=z_1 z_2 on ten seeds
        let q = LaurentSeries::monomial(2, vec![1, 1], Poly::one(&ring));
        for rep in localisation_oracle_many(&q, 3, 2, &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10]).unwrap() {
            assert!(rep.equal(), "seed {}", rep.seed);
        }
    }
}

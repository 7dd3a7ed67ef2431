//! Graded multivariate polynomials in named symbols over exact rationals.
//!
//! A `Ring` declares the symbols in play (`c_1`, `s_2`, `h`, `d`, `lambda_3`, ...),
//! each with a cohomological degree and an optional nilpotency order N meaning
//! symbol^N = 0. A `Poly` is a sparse association from exponent vectors to
//! nonzero rational coefficients, kept in a canonical graded-lexicographic
//! term order so that serialization and display are bit-exact across runs.

use crate::rational::{rat_to_string, Rat};
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Symbol {
    pub name: String,
    pub degree: u32,
    pub nilpotency: Option<u32>,
}

impl Symbol {
    pub fn new(name: &str, degree: u32) -> Self {
        Symbol { name: name.into(), degree, nilpotency: None }
    }

    pub fn nilpotent(name: &str, degree: u32, order: u32) -> Self {
        assert!(order > 0, "nilpotency order must be positive");
        Symbol { name: name.into(), degree, nilpotency: Some(order) }
    }
}

/// The symbol context shared by all polynomials of one computation.
#[derive(Debug, PartialEq, Eq)]
pub struct Ring {
    symbols: Vec<Symbol>,
}

impl Ring {
    pub fn new(symbols: Vec<Symbol>) -> Arc<Ring> {
        let mut names: Vec<&str> = symbols.iter().map(|s| s.name.as_str()).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), symbols.len(), "symbol names must be unique");
        Arc::new(Ring { symbols })
    }

    /// Ring with no symbols; its polynomials are plain rational constants.
    pub fn scalar() -> Arc<Ring> {
        Ring::new(Vec::new())
    }

    /// Symbols `c_1 .. c_n` with degree(c_i) = i.
    pub fn chern(n: u32) -> Arc<Ring> {
        Ring::new((1..=n).map(|i| Symbol::new(&format!("c_{i}"), i)).collect())
    }

    /// Symbols `lambda_1 .. lambda_r`, each of degree 1.
    pub fn lambda(r: u32) -> Arc<Ring> {
        Ring::new((1..=r).map(|i| Symbol::new(&format!("lambda_{i}"), 1)).collect())
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s.name == name)
    }
}

fn same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
    Arc::ptr_eq(a, b) || a.symbols == b.symbols
}

/// Exponent vector of a monomial; ordered graded-lexicographically
/// (total exponent sum first, then lexicographic).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mono(pub Vec<u16>);

impl Mono {
    pub fn one(nvars: usize) -> Self {
        Mono(vec![0; nvars])
    }

    pub fn expsum(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    fn mul(&self, other: &Mono) -> Mono {
        Mono(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.checked_add(b).expect("monomial exponent overflow"))
                .collect(),
        )
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.expsum().cmp(&other.expsum()).then_with(|| self.0.cmp(&other.0))
    }
}

/// Sparse graded polynomial with rational coefficients.
///
/// Invariants: no stored zero coefficients, no exponent at or above a
/// symbol's nilpotency, terms canonically ordered by the `Mono` order.
#[derive(Clone, Debug)]
pub struct Poly {
    ring: Arc<Ring>,
    terms: BTreeMap<Mono, Rat>,
}

impl Poly {
    pub fn zero(ring: &Arc<Ring>) -> Poly {
        Poly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Arc<Ring>, c: Rat) -> Poly {
        let mut p = Poly::zero(ring);
        if !c.is_zero() {
            p.terms.insert(Mono::one(ring.len()), c);
        }
        p
    }

    pub fn one(ring: &Arc<Ring>) -> Poly {
        Poly::constant(ring, Rat::one())
    }

    pub fn symbol(ring: &Arc<Ring>, name: &str) -> Poly {
        let idx = ring
            .index_of(name)
            .unwrap_or_else(|| panic!("symbol `{name}` not declared in ring"));
        Poly::symbol_pow(ring, idx, 1)
    }

    pub fn symbol_pow(ring: &Arc<Ring>, idx: usize, exp: u16) -> Poly {
        let mut p = Poly::zero(ring);
        if let Some(n) = ring.symbols[idx].nilpotency {
            if exp as u32 >= n {
                return p;
            }
        }
        let mut m = Mono::one(ring.len());
        m.0[idx] = exp;
        p.terms.insert(m, Rat::one());
        p
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Mono) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// The rational value of a constant polynomial.
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                if m.0.iter().all(|&e| e == 0) {
                    Some(c.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    fn killed_by_nilpotency(ring: &Ring, m: &Mono) -> bool {
        m.0.iter().zip(ring.symbols()).any(|(&e, s)| match s.nilpotency {
            Some(n) => e as u32 >= n,
            None => false,
        })
    }

    pub fn add_term(&mut self, m: Mono, c: Rat) {
        if c.is_zero() || Poly::killed_by_nilpotency(&self.ring, &m) {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert!(same_ring(&self.ring, &other.ring), "ring mismatch in add");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn add_assign(&mut self, other: &Poly) {
        assert!(same_ring(&self.ring, &other.ring), "ring mismatch in add");
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn neg(&self) -> Poly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= c.clone();
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert!(same_ring(&self.ring, &other.ring), "ring mismatch in mul");
        let mut out = Poly::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.mul(m2);
                if Poly::killed_by_nilpotency(&self.ring, &m) {
                    continue;
                }
                out.add_term(m, c1.clone() * c2.clone());
            }
        }
        out
    }

    /// Multiply by `coeff * prod symbols^mexp` in place-efficient form.
    pub fn mul_term(&self, m2: &Mono, c2: &Rat) -> Poly {
        let mut out = Poly::zero(&self.ring);
        if c2.is_zero() {
            return out;
        }
        for (m1, c1) in &self.terms {
            let m = m1.mul(m2);
            if Poly::killed_by_nilpotency(&self.ring, &m) {
                continue;
            }
            out.terms.insert(m, c1.clone() * c2.clone());
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one(&self.ring);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Substitute a rational value for one symbol.
    pub fn substitute(&self, idx: usize, value: &Rat) -> Poly {
        let mut out = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.0[idx];
            let mut m2 = m.clone();
            m2.0[idx] = 0;
            let mut v = c.clone();
            for _ in 0..e {
                v *= value.clone();
            }
            out.add_term(m2, v);
        }
        out
    }

    /// Evaluate the polynomial at rational values for every symbol.
    pub fn eval_all(&self, values: &[Rat]) -> Rat {
        assert_eq!(values.len(), self.ring.len());
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (idx, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    v *= values[idx].clone();
                }
            }
            acc += v;
        }
        acc
    }

    /// Weighted degree of a monomial under the ring's symbol degrees.
    pub fn weighted_degree_of(&self, m: &Mono) -> u64 {
        m.0.iter()
            .zip(self.ring.symbols())
            .map(|(&e, s)| e as u64 * s.degree as u64)
            .sum()
    }

    /// `Some(d)` when every term has the same weighted degree `d`.
    pub fn homogeneous_degree(&self) -> Option<u64> {
        let mut deg = None;
        for (m, _) in &self.terms {
            let d = self.weighted_degree_of(m);
            match deg {
                None => deg = Some(d),
                Some(prev) if prev != d => return None,
                _ => {}
            }
        }
        deg
    }

    /// Largest exponent of symbol `idx` across the terms (0 for the zero polynomial).
    pub fn degree_in(&self, idx: usize) -> u32 {
        self.terms.keys().map(|m| m.0[idx] as u32).max().unwrap_or(0)
    }

    pub fn eq_poly(&self, other: &Poly) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.eq_poly(other)
    }
}

impl Eq for Poly {}

fn fmt_mono(ring: &Ring, m: &Mono) -> String {
    let mut out = String::new();
    for (idx, &e) in m.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        out.push_str(&ring.symbols()[idx].name);
        if e > 1 {
            out.push('^');
            out.push_str(&e.to_string());
        }
    }
    out
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Highest weighted degree first, then reverse-lexicographic on exponents.
        let mut keys: Vec<&Mono> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            self.weighted_degree_of(b)
                .cmp(&self.weighted_degree_of(a))
                .then_with(|| b.0.cmp(&a.0))
        });
        for (i, m) in keys.iter().enumerate() {
            let c = &self.terms[*m];
            let mono = fmt_mono(&self.ring, m);
            let (sign, mag) = if c < &Rat::zero() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if i == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if mono.is_empty() {
                write!(f, "{}", rat_to_string(&mag))?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}{mono}", rat_to_string(&mag))?;
            }
        }
        Ok(())
    }
}

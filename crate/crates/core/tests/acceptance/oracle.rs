//! Independent oracles for the acceptance suite.
//!
//! Nothing here touches the residue engine's window inference or pruning:
//! the hypersurface-number oracle extracts coefficients by exhaustive
//! composition matching (denominator truncation orders are pinned exactly by
//! the exponent bookkeeping, so there are no caps to tune), and the
//! one-variable oracle is a plain geometric series.

use std::collections::BTreeMap;
use thomres::rational::{binomial, Int, Rat};
use thomres::thom::{denominator_triples, QPoly};
use num_traits::{One, Zero};

/// Truncated polynomial in h: index = h-power, entries above `n` dropped.
#[derive(Clone, Debug, PartialEq)]
pub struct HPoly {
    pub c: Vec<Rat>,
}

impl HPoly {
    fn zero(n: usize) -> HPoly {
        HPoly { c: vec![Rat::zero(); n + 1] }
    }

    fn constant(n: usize, v: Rat) -> HPoly {
        let mut p = HPoly::zero(n);
        p.c[0] = v;
        p
    }

    fn h(n: usize, scale: Rat) -> HPoly {
        let mut p = HPoly::zero(n);
        if n >= 1 {
            p.c[1] = scale;
        }
        p
    }

    fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    fn add(&self, other: &HPoly) -> HPoly {
        HPoly {
            c: self.c.iter().zip(&other.c).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }

    fn mul(&self, other: &HPoly) -> HPoly {
        let n = self.c.len() - 1;
        let mut out = HPoly::zero(n);
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                if i + j > n || b.is_zero() {
                    continue;
                }
                out.c[i + j] += a.clone() * b.clone();
            }
        }
        out
    }

    fn scale(&self, v: &Rat) -> HPoly {
        HPoly { c: self.c.iter().map(|x| x.clone() * v.clone()).collect() }
    }
}

/// Sparse Laurent polynomial over h-truncated coefficients.
type ZMap = BTreeMap<Vec<i32>, HPoly>;

fn zmap_add_term(map: &mut ZMap, e: Vec<i32>, p: HPoly) {
    if p.is_zero() {
        return;
    }
    let n = p.c.len() - 1;
    let entry = map.entry(e).or_insert_with(|| HPoly::zero(n));
    *entry = entry.add(&p);
}

fn zmap_mul(a: &ZMap, b: &ZMap) -> ZMap {
    let mut out = ZMap::new();
    for (e1, p1) in a {
        if p1.is_zero() {
            continue;
        }
        for (e2, p2) in b {
            if p2.is_zero() {
                continue;
            }
            let e: Vec<i32> = e1.iter().zip(e2).map(|(x, y)| x + y).collect();
            zmap_add_term(&mut out, e, p1.mul(p2));
        }
    }
    out
}

fn zvar(k: usize, n: usize, v: usize) -> ZMap {
    let mut e = vec![0; k];
    e[v] = 1;
    BTreeMap::from([(e, HPoly::constant(n, Rat::one()))])
}

fn zconst(k: usize, n: usize, p: HPoly) -> ZMap {
    BTreeMap::from([(vec![0; k], p)])
}

/// The direct-expansion value of the twisted intersection number at numeric
/// degree and twist: everything is multiplied out (numerator, Vandermonde,
/// hyperplane factors, inverse-bundle series) and the denominator inverses
/// are resolved variable by variable through exact composition matching.
pub fn intersection_number_direct(n: usize, delta: &Rat, d: &Rat, q: &QPoly) -> Rat {
    let k = n;
    let one = Rat::one();

    // S + 2n^2 h
    let mut base = zconst(k, n, HPoly::h(n, Rat::from_integer(Int::from(2 * (n * n) as i64))));
    for v in 0..k {
        for (e, p) in zvar(k, n, v) {
            zmap_add_term(&mut base, e, p);
        }
    }
    // (S + 2n^2 h)^{n^2} and ^{n^2 - 1} by repeated multiplication
    let mut pow = zconst(k, n, HPoly::constant(n, one.clone()));
    let mut pow_minus_one = pow.clone();
    for step in 1..=(n * n) {
        pow = zmap_mul(&pow, &base);
        if step == n * n - 1 {
            pow_minus_one = pow.clone();
        }
    }
    // tail = 2n^2 h + delta binom(n+1,2) (d - n - 2) h
    let b2 = Rat::from_integer(binomial((n + 1) as u64, 2));
    let tail_scalar = Rat::from_integer(Int::from(2 * (n * n) as i64))
        + delta.clone() * b2 * (d.clone() - Rat::from_integer(Int::from((n + 2) as i64)));
    let tail = zconst(k, n, HPoly::h(n, tail_scalar));
    let mut integrand = pow;
    let second = zmap_mul(&pow_minus_one, &tail);
    for (e, p) in second {
        zmap_add_term(&mut integrand, e, p.scale(&-Rat::from_integer(Int::from((n * n) as i64))));
    }

    // Vandermonde and the numerator polynomial
    for m in 0..k {
        for l in (m + 1)..k {
            let mut factor = zvar(k, n, m);
            for (e, p) in zvar(k, n, l) {
                zmap_add_term(&mut factor, e, p.scale(&-one.clone()));
            }
            integrand = zmap_mul(&integrand, &factor);
        }
    }
    let mut qmap = ZMap::new();
    for (e, c) in q.terms() {
        zmap_add_term(&mut qmap, e.clone(), HPoly::constant(n, Rat::from_integer(c.clone())));
    }
    integrand = zmap_mul(&integrand, &qmap);

    // (z_1 .. z_k)^{-n}
    integrand = zmap_mul(&integrand, &zconst(k, n, HPoly::constant(n, one.clone()))
        .into_iter()
        .map(|(_, p)| (vec![-(n as i32); k], p))
        .collect());

    // prod_l (1 + d h / z_l) and prod_l (1 - h/z_l + ...)^{n+2}
    for l in 0..k {
        let mut factor = zconst(k, n, HPoly::constant(n, one.clone()));
        let mut e = vec![0; k];
        e[l] = -1;
        zmap_add_term(&mut factor, e, HPoly::h(n, d.clone()));
        integrand = zmap_mul(&integrand, &factor);

        let mut geom = zconst(k, n, HPoly::constant(n, one.clone()));
        let mut ej = vec![0; k];
        ej[l] = -1;
        let mut minus_h_over_z = ZMap::new();
        zmap_add_term(&mut minus_h_over_z, ej, HPoly::h(n, -one.clone()));
        // (1 - h/z + h^2/z^2 - ...) truncated by h-nilpotency
        let mut series = zconst(k, n, HPoly::constant(n, one.clone()));
        let mut term = zconst(k, n, HPoly::constant(n, one.clone()));
        for _ in 1..=n {
            term = zmap_mul(&term, &minus_h_over_z);
            for (e, p) in &term {
                zmap_add_term(&mut series, e.clone(), p.clone());
            }
        }
        for _ in 0..(n + 2) {
            geom = zmap_mul(&geom, &series);
        }
        integrand = zmap_mul(&integrand, &geom);
    }

    // Resolve denominator factors variable by variable, matching exponents
    // exactly: for each stage v, the factors led by z_v contribute
    // -(j_f + 1) to the z_v exponent and (z_m + z_r)^{j_f} to the rest;
    // hitting the target exponent -1 pins sum (j_f + 1) per term.
    let triples = denominator_triples(k);
    let mut cur = integrand;
    for v in (1..=k).rev() {
        let led: Vec<&(usize, usize, usize)> = triples.iter().filter(|t| t.2 == v).collect();
        let mut by_deg: BTreeMap<i32, ZMap> = BTreeMap::new();
        for (e, p) in cur {
            if p.is_zero() {
                continue;
            }
            let mut e2 = e.clone();
            let deg = e2[v - 1];
            e2[v - 1] = 0;
            zmap_add_term(by_deg.entry(deg).or_default(), e2, p);
        }
        let mut next = ZMap::new();
        for (deg, map) in &by_deg {
            let need = deg + 1; // total sum (j_f + 1) to land on exponent -1
            if led.is_empty() {
                if *deg == -1 {
                    for (e, p) in map {
                        zmap_add_term(&mut next, e.clone(), p.clone());
                    }
                }
                continue;
            }
            if need < led.len() as i32 {
                continue;
            }
            for js in compositions(need - led.len() as i32, led.len()) {
                let mut factor = zconst(k, n, HPoly::constant(n, one.clone()));
                for (f, &j) in led.iter().zip(&js) {
                    let mut base = zvar(k, n, f.0 - 1);
                    for (e, p) in zvar(k, n, f.1 - 1) {
                        zmap_add_term(&mut base, e, p);
                    }
                    for _ in 0..j {
                        factor = zmap_mul(&factor, &base);
                    }
                    // sign of the expansion: one -1 per factor
                    factor = factor.into_iter().map(|(e, p)| (e, p.scale(&-one.clone()))).collect();
                }
                for (e, p) in zmap_mul(map, &factor) {
                    zmap_add_term(&mut next, e, p);
                }
            }
        }
        cur = next;
    }

    let hp = cur.get(&vec![0; k]).cloned().unwrap_or_else(|| HPoly::zero(n));
    // residue orientation, coefficient of h^n, and the degree substitution
    let sign = if k % 2 == 1 { -one.clone() } else { one.clone() };
    let _ = sign; // the quoted twisted form already folds the orientation sign
    hp.c[n].clone() * d.clone()
}

fn compositions(total: i32, parts: usize) -> Vec<Vec<i32>> {
    fn rec(left: i32, parts: usize, cur: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
        if parts == 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for first in 0..=left {
            cur.push(first);
            rec(left - first, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if total >= 0 {
        rec(total, parts, &mut Vec::new(), &mut out);
    }
    out
}

/// One-variable geometric-series oracle for the diagonal of the order-2 Thom
/// series: coefficients of (1 - x) / (1 - 2x).
pub fn k2_diagonal_oracle(max_s: usize) -> Vec<Int> {
    let mut inv = vec![Int::zero(); max_s + 1]; // 1/(1-2x) = sum 2^j x^j
    let mut p = Int::one();
    for slot in inv.iter_mut() {
        *slot = p.clone();
        p = &p * 2;
    }
    let mut out = vec![Int::zero(); max_s + 1];
    for s in 0..=max_s {
        out[s] = inv[s].clone() - if s >= 1 { inv[s - 1].clone() } else { Int::zero() };
    }
    out
}

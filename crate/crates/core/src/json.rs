//! Canonical JSON encodings of the interchange types. Coefficients are
//! decimal strings (`p/q` for rationals, plain integers for counts), never
//! binary floats; term arrays follow the canonical internal ordering so that
//! output is byte-identical across runs and platforms.

use crate::equivariant::{MonomialIdeal, WeightAssignment, WeightVector};
use crate::ggl::Certificate;
use crate::jets::{CurveJet, Jet, Reparam};
use crate::laurent::{LaurentSeries, LinearForm};
use crate::rational::{rat_from_str, rat_to_string, Int};
use crate::ring::{Mono, Poly, Ring, Symbol};
use crate::thom::{QPoly, TpWindowTable};
use serde::{Deserialize, Serialize};
use std::str::FromStr;
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct JsonError(pub String);

impl std::fmt::Display for JsonError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for JsonError {}

impl From<serde_json::Error> for JsonError {
    fn from(e: serde_json::Error) -> Self {
        JsonError(e.to_string())
    }
}

// ---- symbols and polynomials ----

#[derive(Serialize, Deserialize)]
pub struct SymbolDto {
    pub name: String,
    pub degree: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nilpotency: Option<u32>,
}

#[derive(Serialize, Deserialize)]
pub struct TermDto {
    pub exp: Vec<u16>,
    pub coeff: String,
}

#[derive(Serialize, Deserialize)]
pub struct PolyDto {
    pub symbols: Vec<SymbolDto>,
    pub terms: Vec<TermDto>,
}

pub fn poly_to_json(p: &Poly) -> PolyDto {
    PolyDto {
        symbols: p
            .ring()
            .symbols()
            .iter()
            .map(|s| SymbolDto { name: s.name.clone(), degree: s.degree, nilpotency: s.nilpotency })
            .collect(),
        terms: p
            .terms()
            .map(|(m, c)| TermDto { exp: m.0.clone(), coeff: rat_to_string(c) })
            .collect(),
    }
}

pub fn poly_from_json(dto: &PolyDto) -> Result<Poly, JsonError> {
    let ring = Ring::new(
        dto.symbols
            .iter()
            .map(|s| Symbol {
                name: s.name.clone(),
                degree: s.degree,
                nilpotency: s.nilpotency,
            })
            .collect(),
    );
    poly_from_terms(&ring, &dto.terms)
}

fn poly_from_terms(ring: &Arc<Ring>, terms: &[TermDto]) -> Result<Poly, JsonError> {
    let mut p = Poly::zero(ring);
    for t in terms {
        if t.exp.len() != ring.len() {
            return Err(JsonError(format!(
                "term exponent length {} does not match the {} declared symbols",
                t.exp.len(),
                ring.len()
            )));
        }
        p.add_term(Mono(t.exp.clone()), rat_from_str(&t.coeff).map_err(JsonError)?);
    }
    Ok(p)
}

// ---- Laurent series ----

#[derive(Serialize, Deserialize)]
pub struct LaurentTermDto {
    pub exp: Vec<i32>,
    pub coeff: Vec<TermDto>,
}

#[derive(Serialize, Deserialize)]
pub struct LaurentSeriesDto {
    pub k: usize,
    pub window: Vec<(i32, i32)>,
    pub symbols: Vec<SymbolDto>,
    pub terms: Vec<LaurentTermDto>,
}

pub fn laurent_to_json(s: &LaurentSeries, ring: &Arc<Ring>) -> LaurentSeriesDto {
    LaurentSeriesDto {
        k: s.k(),
        window: s.window().to_vec(),
        symbols: ring
            .symbols()
            .iter()
            .map(|sym| SymbolDto {
                name: sym.name.clone(),
                degree: sym.degree,
                nilpotency: sym.nilpotency,
            })
            .collect(),
        terms: s
            .terms()
            .map(|(e, p)| LaurentTermDto {
                exp: e.clone(),
                coeff: p
                    .terms()
                    .map(|(m, c)| TermDto { exp: m.0.clone(), coeff: rat_to_string(c) })
                    .collect(),
            })
            .collect(),
    }
}

pub fn laurent_from_json(dto: &LaurentSeriesDto) -> Result<(LaurentSeries, Arc<Ring>), JsonError> {
    let ring = Ring::new(
        dto.symbols
            .iter()
            .map(|s| Symbol {
                name: s.name.clone(),
                degree: s.degree,
                nilpotency: s.nilpotency,
            })
            .collect(),
    );
    let mut out = LaurentSeries::zero(dto.k, dto.window.clone());
    for t in &dto.terms {
        if !out.in_window(&t.exp) {
            return Err(JsonError(format!(
                "term exponent {:?} lies outside the declared window {:?}",
                t.exp, dto.window
            )));
        }
        out.add_term(t.exp.clone(), poly_from_terms(&ring, &t.coeff)?);
    }
    Ok((out, ring))
}

// ---- Q polynomial files ----

#[derive(Serialize, Deserialize)]
pub struct QTermDto {
    pub exp: Vec<i32>,
    pub coeff: String,
}

#[derive(Serialize, Deserialize)]
pub struct QPolyDto {
    pub k: usize,
    pub terms: Vec<QTermDto>,
}

pub fn qpoly_to_json(q: &QPoly) -> QPolyDto {
    QPolyDto {
        k: q.k,
        terms: q
            .terms()
            .map(|(e, c)| QTermDto { exp: e.clone(), coeff: c.to_string() })
            .collect(),
    }
}

pub fn qpoly_from_json(dto: &QPolyDto) -> Result<QPoly, JsonError> {
    let mut terms = Vec::new();
    for t in &dto.terms {
        let c = Int::from_str(&t.coeff).map_err(|e| JsonError(e.to_string()))?;
        terms.push((t.exp.clone(), c));
    }
    QPoly::new(dto.k, terms).map_err(|e| JsonError(e.to_string()))
}

// ---- window tables ----

#[derive(Serialize, Deserialize)]
pub struct TpEntryDto {
    pub i: Vec<i32>,
    pub tp: String,
}

pub fn tp_table_to_json(t: &TpWindowTable) -> Vec<TpEntryDto> {
    t.iter().map(|(i, tp)| TpEntryDto { i: i.clone(), tp: tp.to_string() }).collect()
}

// ---- monomial ideals and weights ----

#[derive(Serialize, Deserialize)]
pub struct MonomialIdealDto {
    #[serde(rename = "N")]
    pub n: usize,
    pub generators: Vec<Vec<u32>>,
}

pub fn ideal_to_json(m: &MonomialIdeal) -> MonomialIdealDto {
    MonomialIdealDto { n: m.n_vars, generators: m.generators().to_vec() }
}

pub fn ideal_from_json(dto: &MonomialIdealDto) -> MonomialIdeal {
    MonomialIdeal::new(dto.n, dto.generators.clone())
}

#[derive(Serialize, Deserialize)]
pub struct WeightsDto {
    pub r: usize,
    pub eta: Vec<Vec<i64>>,
}

pub fn weights_to_json(w: &WeightAssignment) -> WeightsDto {
    WeightsDto { r: w.rank(), eta: w.eta.iter().map(|v| v.coeffs.clone()).collect() }
}

pub fn weights_from_json(dto: &WeightsDto) -> Result<WeightAssignment, JsonError> {
    for row in &dto.eta {
        if row.len() != dto.r {
            return Err(JsonError(format!(
                "weight row has {} entries, expected r = {}",
                row.len(),
                dto.r
            )));
        }
    }
    Ok(WeightAssignment::new(dto.eta.iter().map(|v| WeightVector::new(v.clone())).collect()))
}

// ---- jets ----

#[derive(Serialize, Deserialize)]
pub struct JetCoeffDto {
    pub mono: Vec<u16>,
    pub coeff: String,
}

#[derive(Serialize, Deserialize)]
pub struct JetDto {
    pub source: usize,
    pub target: usize,
    pub order: usize,
    pub coords: Vec<Vec<JetCoeffDto>>,
}

pub fn jet_to_json(j: &Jet) -> JetDto {
    JetDto {
        source: j.source,
        target: j.target,
        order: j.order,
        coords: (0..j.target)
            .map(|c| {
                j.coord(c)
                    .map(|(m, v)| JetCoeffDto { mono: m.clone(), coeff: rat_to_string(v) })
                    .collect()
            })
            .collect(),
    }
}

pub fn jet_from_json(dto: &JetDto) -> Result<Jet, JsonError> {
    let mut jet = Jet::zero(dto.source, dto.target, dto.order);
    for (c, terms) in dto.coords.iter().enumerate() {
        for t in terms {
            jet.set_coeff(c, t.mono.clone(), rat_from_str(&t.coeff).map_err(JsonError)?);
        }
    }
    Ok(jet)
}

#[derive(Serialize, Deserialize)]
pub struct CurveJetDto {
    pub n: usize,
    pub k: usize,
    pub columns: Vec<Vec<String>>,
}

pub fn curve_to_json(c: &CurveJet) -> CurveJetDto {
    CurveJetDto {
        n: c.n,
        k: c.k,
        columns: c.columns.iter().map(|col| col.iter().map(rat_to_string).collect()).collect(),
    }
}

pub fn curve_from_json(dto: &CurveJetDto) -> Result<CurveJet, JsonError> {
    let mut columns = Vec::new();
    for col in &dto.columns {
        let mut out = Vec::new();
        for v in col {
            out.push(rat_from_str(v).map_err(JsonError)?);
        }
        columns.push(out);
    }
    Ok(CurveJet::new(dto.n, dto.k, columns))
}

#[derive(Serialize, Deserialize)]
pub struct ReparamDto {
    pub alpha: Vec<String>,
}

pub fn reparam_to_json(r: &Reparam) -> ReparamDto {
    ReparamDto { alpha: r.alpha.iter().map(rat_to_string).collect() }
}

pub fn reparam_from_json(dto: &ReparamDto) -> Result<Reparam, JsonError> {
    let mut alpha = Vec::new();
    for v in &dto.alpha {
        alpha.push(rat_from_str(v).map_err(JsonError)?);
    }
    Ok(Reparam::new(alpha))
}

// ---- certificates ----

#[derive(Serialize, Deserialize)]
pub struct CertificateDto {
    pub n: usize,
    pub delta: String,
    pub coeffs: Vec<String>,
    pub rho0: String,
    pub leading_identity: bool,
    pub ineq_10l: bool,
    #[serde(rename = "fujiwara_D")]
    pub fujiwara_d: String,
    pub d_star: String,
    pub verdict: String,
}

pub fn certificate_to_json(c: &Certificate) -> CertificateDto {
    CertificateDto {
        n: c.n,
        delta: rat_to_string(&c.delta),
        coeffs: c.coeffs.iter().map(rat_to_string).collect(),
        rho0: c.rho0.to_string(),
        leading_identity: c.leading_identity,
        ineq_10l: c.ineq_10l,
        fujiwara_d: c.fujiwara_d.to_string(),
        d_star: c.d_star.to_string(),
        verdict: if c.verdict() { "PASS".into() } else { "FAIL".into() },
    }
}

// ---- generic residue problems ----

#[derive(Serialize, Deserialize)]
pub struct LinearFormDto {
    /// z-free constant part as polynomial terms over the declared symbols
    #[serde(default)]
    pub constant: Vec<TermDto>,
    pub zcoeffs: Vec<String>,
}

#[derive(Serialize, Deserialize)]
pub struct ExtraSeriesDto {
    pub name: String,
    pub terms: Vec<LaurentTermDto>,
}

/// File format of `residue --spec`: a numerator, inverted linear factors, and
/// named extra series over a shared symbol header.
#[derive(Serialize, Deserialize)]
pub struct ResidueSpecDto {
    pub k: usize,
    #[serde(default)]
    pub symbols: Vec<SymbolDto>,
    pub numerator: Vec<LaurentTermDto>,
    #[serde(default)]
    pub factors: Vec<LinearFormDto>,
    #[serde(default)]
    pub extras: Vec<ExtraSeriesDto>,
    #[serde(default)]
    pub slack: i32,
}

pub fn residue_problem_from_json(
    dto: &ResidueSpecDto,
) -> Result<(crate::laurent::ResidueProblem, Arc<Ring>), JsonError> {
    let ring = Ring::new(
        dto.symbols
            .iter()
            .map(|s| Symbol {
                name: s.name.clone(),
                degree: s.degree,
                nilpotency: s.nilpotency,
            })
            .collect(),
    );
    let to_series = |terms: &[LaurentTermDto]| -> Result<LaurentSeries, JsonError> {
        let mut parsed = Vec::new();
        for t in terms {
            if t.exp.len() != dto.k {
                return Err(JsonError(format!(
                    "exponent vector {:?} has length {}, expected k = {}",
                    t.exp,
                    t.exp.len(),
                    dto.k
                )));
            }
            parsed.push((t.exp.clone(), poly_from_terms(&ring, &t.coeff)?));
        }
        Ok(LaurentSeries::from_terms(dto.k, parsed))
    };
    let numerator = to_series(&dto.numerator)?;
    let mut prob = crate::laurent::ResidueProblem::new(dto.k, &ring, numerator)
        .with_slack(dto.slack);
    for f in &dto.factors {
        if f.zcoeffs.len() != dto.k {
            return Err(JsonError(format!(
                "factor has {} z-coefficients, expected k = {}",
                f.zcoeffs.len(),
                dto.k
            )));
        }
        let mut z = Vec::new();
        for c in &f.zcoeffs {
            z.push(rat_from_str(c).map_err(JsonError)?);
        }
        prob.factors.push(LinearForm::new(dto.k, poly_from_terms(&ring, &f.constant)?, z));
    }
    for e in &dto.extras {
        prob.extras.push(to_series(&e.terms)?);
    }
    Ok((prob, ring))
}

pub fn to_string_pretty<T: Serialize>(t: &T) -> String {
    serde_json::to_string_pretty(t).expect("serialization cannot fail")
}

//! Machine-readable result documents and their text rendering.
//!
//! Integers that can grow without bound are written as decimal strings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use stringy_core::analysis::{
    conjecture_report, threefold_h22_minus_h11, threefold_h22_minus_h11_expansion, DefectCheck,
    ExceptionalFiberDescriptor, Provenance, Verdict,
};
use stringy_core::sncweights::SncComplexData;
use stringy_core::stringy::{
    a_pq, h22st_fourfold, CoefficientDifference, PdCheck, PolynomialConsequences, EXPANSION_POINT,
};
use stringy_core::{BivariatePoly, ResolutionDescriptor};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub p: i64,
    pub q: i64,
    pub c: String,
}

fn terms(poly: &BivariatePoly) -> Vec<Term> {
    poly.terms()
        .map(|((p, q), c)| Term { p, q, c: c.to_string() })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expansion {
    /// Coefficients with `p + q <= bound` are exact.
    pub bound: i64,
    pub point: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EFunction {
    pub text: String,
    pub numerator: Vec<Term>,
    /// Exponents `m` of the factors `((uv)^m - 1)`.
    pub denominator: Vec<u32>,
    /// The quotient, when `E_st` is a polynomial.
    pub polynomial: Option<Vec<Term>>,
    pub polynomial_text: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub p: i64,
    pub q: i64,
    /// Expansion coefficient `b_{p,q}`.
    pub b: String,
    /// `h^{p,q}_st = (-1)^{p+q} b_{p,q}`.
    pub h: String,
    pub verdict: String,
    pub provenance: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed_form_mismatch: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checks {
    pub symmetry: bool,
    /// `holds`, `fails` or `inconclusive`.
    pub poincare_duality: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub non_dual_strata: Vec<String>,
    pub polynomial: Option<PolynomialChecks>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialChecks {
    pub degree: Option<i64>,
    pub degree_is_2n: bool,
    pub duality: bool,
    pub vanishing_outside_square: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Negative {
    pub p: i64,
    pub q: i64,
    pub value: String,
    pub a_pq: i64,
    pub discrepancy_terms: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inequality {
    pub h22: i64,
    pub h11: i64,
    pub holds: bool,
}

/// Result of `compute` and `check`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportFile {
    pub label: String,
    pub dim: u32,
    pub expansion: Expansion,
    pub e_st: EFunction,
    pub cells: Vec<Cell>,
    /// Cells of the `n x n` square past the bound.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub not_computed: Vec<(i64, i64)>,
    pub checks: Checks,
    pub negatives: Vec<Negative>,
    pub threefold_h22_at_least_h11: Option<Inequality>,
    /// Derived invariants such as `a_2,2`, keyed by name.
    pub invariants: BTreeMap<String, String>,
    pub all_nonnegative: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub snc: Option<SncSummary>,
}

/// Nonzero `dim H^{p,q} Gr^W_k H^{k+l}(D)` of the exceptional divisor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightPiece {
    pub k: u32,
    pub l: usize,
    pub p: u32,
    pub q: u32,
    pub dim: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SncSummary {
    pub depth: usize,
    pub weight_graded: Vec<WeightPiece>,
    /// Pieces `H^{p,q}` whose restriction maps were not supplied.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub missing_maps: Vec<(u32, u32)>,
}

impl SncSummary {
    pub fn build(data: &SncComplexData) -> Self {
        let top = data
            .levels()
            .first()
            .and_then(|l| l.first())
            .map_or(0, |c| c.diamond.dim());
        let mut weight_graded = Vec::new();
        let mut missing_maps = Vec::new();
        for k in 0..=2 * top {
            for p in 0..=k.min(top) {
                let q = k - p;
                if q > top {
                    continue;
                }
                for l in 0..data.depth() {
                    match data.weight_graded_dims(k, l, p, q) {
                        Ok(0) => {}
                        Ok(dim) => weight_graded.push(WeightPiece { k, l, p, q, dim }),
                        Err(_) => {
                            if !missing_maps.contains(&(p, q)) {
                                missing_maps.push((p, q));
                            }
                        }
                    }
                }
            }
        }
        Self {
            depth: data.depth(),
            weight_graded,
            missing_maps,
        }
    }

    /// `dim Gr^W_0 H^l(D)`, the cohomology of the dual complex.
    pub fn weight_zero(&self, l: usize) -> u64 {
        self.weight_graded
            .iter()
            .find(|w| w.k == 0 && w.l == l)
            .map_or(0, |w| w.dim)
    }
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Nonnegative => "nonnegative",
        Verdict::Negative => "negative",
        Verdict::NotComputableAtBound => "not computable at bound",
    }
}

fn provenance_name(p: Provenance) -> &'static str {
    match p {
        Provenance::Expansion => "expansion",
        Provenance::ClosedForm => "closed form",
        Provenance::NotComputed => "not computed",
    }
}

impl ReportFile {
    pub fn build(d: &ResolutionDescriptor, snc: Option<&SncComplexData>, bound: Option<u32>) -> Self {
        let report = conjecture_report(d, bound);
        let st = &report.stringy;
        let mut cells = Vec::new();
        let mut not_computed = Vec::new();
        for c in &report.cells {
            match &c.value {
                Some(h) => cells.push(Cell {
                    p: c.p,
                    q: c.q,
                    b: st.coefficient(c.p, c.q).to_string(),
                    h: h.to_string(),
                    verdict: verdict_name(c.verdict).into(),
                    provenance: provenance_name(c.provenance).into(),
                    closed_form_mismatch: c.closed_form_mismatch,
                }),
                None => not_computed.push((c.p, c.q)),
            }
        }
        let (pd, non_dual) = match &st.poincare_duality {
            PdCheck::Holds => ("holds", Vec::new()),
            PdCheck::Fails => ("fails", Vec::new()),
            PdCheck::Inconclusive(s) => ("inconclusive", s.iter().map(ToString::to_string).collect()),
        };
        let polynomial = match st.polynomial_consequences {
            PolynomialConsequences::Inapplicable => None,
            PolynomialConsequences::Checked {
                degree,
                degree_ok,
                duality_ok,
                vanishing_ok,
            } => Some(PolynomialChecks {
                degree,
                degree_is_2n: degree_ok,
                duality: duality_ok,
                vanishing_outside_square: vanishing_ok,
            }),
        };
        let mut invariants = BTreeMap::new();
        invariants.insert("a_2,2".to_string(), a_pq(d, 2, 2).to_string());
        if let Ok(h) = h22st_fourfold(d) {
            invariants.insert("h_st^2,2 (fourfold closed form)".into(), h.to_string());
        }
        if let Ok(diff) = threefold_h22_minus_h11(d) {
            invariants.insert("h_st^2,2 - h_st^1,1 (closed form)".into(), diff.to_string());
        }
        if let Ok(diff) = threefold_h22_minus_h11_expansion(d) {
            invariants.insert("h_st^2,2 - h_st^1,1 (expansion)".into(), diff.to_string());
        }
        let f = &st.e_function;
        Self {
            label: d.label().to_string(),
            dim: d.dim(),
            expansion: Expansion {
                bound: st.bound,
                point: EXPANSION_POINT.to_string(),
            },
            e_st: EFunction {
                text: f.to_string(),
                numerator: terms(f.numerator()),
                denominator: f.denominator().factors().to_vec(),
                polynomial: st.polynomial.as_ref().map(terms),
                polynomial_text: st.polynomial.as_ref().map(ToString::to_string),
            },
            cells,
            not_computed,
            checks: Checks {
                symmetry: st.symmetry,
                poincare_duality: pd.into(),
                non_dual_strata: non_dual,
                polynomial,
            },
            negatives: report
                .negatives
                .iter()
                .map(|n| Negative {
                    p: n.p,
                    q: n.q,
                    value: n.value.to_string(),
                    a_pq: n.a_pq,
                    discrepancy_terms: n.discrepancy_terms.to_string(),
                })
                .collect(),
            threefold_h22_at_least_h11: report.threefold_inequality.map(|t| Inequality {
                h22: t.h22,
                h11: t.h11,
                holds: t.holds,
            }),
            all_nonnegative: report.all_nonnegative(),
            invariants,
            snc: snc.map(SncSummary::build),
        }
    }

    pub fn cell(&self, p: i64, q: i64) -> Option<&Cell> {
        self.cells.iter().find(|c| c.p == p && c.q == q)
    }

    /// `h^{p,q}_st` as text, if computed.
    pub fn h(&self, p: i64, q: i64) -> Option<&str> {
        self.cell(p, q).map(|c| c.h.as_str())
    }

    pub fn render_text(&self, with_verdicts: bool) -> String {
        let mut out = String::new();
        let n = i64::from(self.dim);
        let _ = writeln!(out, "{} (dimension {})", self.label, self.dim);
        let _ = writeln!(out, "E_st = {}", self.e_st.text);
        match &self.e_st.polynomial_text {
            Some(poly) => {
                let _ = writeln!(out, "     = {poly}  (polynomial)");
            }
            None => {
                let _ = writeln!(out, "E_st is not a polynomial");
            }
        }
        let _ = writeln!(
            out,
            "expansion: {}; exact for p + q <= {}",
            self.expansion.point, self.expansion.bound
        );
        let _ = writeln!(out, "h_st^{{p,q}} (rows p, columns q; '.' = past the bound):");
        for p in (0..=n).rev() {
            let row: Vec<String> = (0..=n)
                .map(|q| self.h(p, q).map_or_else(|| ".".to_string(), str::to_string))
                .collect();
            let _ = writeln!(out, "  p={p}: {}", row.join(" "));
        }
        let outside: Vec<String> = self
            .cells
            .iter()
            .filter(|c| (c.p > n || c.q > n) && c.h != "0")
            .map(|c| format!("({},{})={}", c.p, c.q, c.h))
            .collect();
        if !outside.is_empty() {
            let _ = writeln!(out, "nonzero outside the square: {}", outside.join(", "));
        }
        let c = &self.checks;
        let _ = writeln!(out, "symmetry E(u,v) = E(v,u): {}", ok(c.symmetry));
        let pd = if c.non_dual_strata.is_empty() {
            c.poincare_duality.clone()
        } else {
            format!(
                "{} (strata without duality: {})",
                c.poincare_duality,
                c.non_dual_strata.join(", ")
            )
        };
        let _ = writeln!(out, "Poincare duality (uv)^n E(1/u,1/v) = E(u,v): {pd}");
        if let Some(pc) = &c.polynomial {
            let _ = writeln!(
                out,
                "polynomial case: degree {} ({}), h^{{p,q}} = h^{{n-p,n-q}} ({}), vanishing outside square ({})",
                pc.degree.map_or("-".to_string(), |d| d.to_string()),
                ok(pc.degree_is_2n),
                ok(pc.duality),
                ok(pc.vanishing_outside_square)
            );
        }
        for (k, v) in &self.invariants {
            let _ = writeln!(out, "{k} = {v}");
        }
        if let Some(snc) = &self.snc {
            let _ = writeln!(out, "exceptional divisor: {} levels of intersections", snc.depth);
            for w in &snc.weight_graded {
                let _ = writeln!(
                    out,
                    "  dim H^{{{},{}}} Gr^W_{} H^{}(D) = {}",
                    w.p,
                    w.q,
                    w.k,
                    w.k as usize + w.l,
                    w.dim
                );
            }
            if !snc.missing_maps.is_empty() {
                let pieces: Vec<String> = snc.missing_maps.iter().map(|(p, q)| format!("H^{{{p},{q}}}")).collect();
                let _ = writeln!(
                    out,
                    "  not computed, restriction maps not given on: {}",
                    pieces.join(", ")
                );
            }
        }
        if with_verdicts {
            let mismatches: Vec<String> = self
                .cells
                .iter()
                .filter_map(|c| {
                    c.closed_form_mismatch
                        .map(|m| format!("({},{}) closed form {m}, expansion {}", c.p, c.q, c.h))
                })
                .collect();
            if !mismatches.is_empty() {
                let _ = writeln!(out, "closed form disagrees: {}", mismatches.join("; "));
            }
            if let Some(t) = &self.threefold_h22_at_least_h11 {
                let _ = writeln!(out, "h_st^2,2 >= h_st^1,1: {} >= {} ({})", t.h22, t.h11, ok(t.holds));
            }
            for neg in &self.negatives {
                let _ = writeln!(
                    out,
                    "NEGATIVE h_st^{},{} = {} (a_pq = {}, discrepancy terms = {})",
                    neg.p, neg.q, neg.value, neg.a_pq, neg.discrepancy_terms
                );
            }
            let computed = self.cells.len();
            let _ = writeln!(
                out,
                "verdict: {} ({computed} cells computed, {} past the bound)",
                if self.all_nonnegative {
                    "all nonnegative"
                } else {
                    "NEGATIVE"
                },
                self.not_computed.len()
            );
        }
        out
    }
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAILS"
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectEntry {
    pub point: String,
    pub h11_e1: i64,
    pub h0_e2: i64,
    pub h0_e1: i64,
    pub defect: i64,
    pub discrepancy_one: i64,
    pub within_bound: bool,
}

/// Result of `defect`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectFile {
    pub label: String,
    pub points: Vec<DefectEntry>,
    pub total_defect: i64,
    pub total_discrepancy_one: i64,
    /// `h^{2,2}_st - h^{1,1}_st` of the descriptor itself, for terminal threefolds.
    pub threefold_h22_minus_h11: Option<i64>,
    pub all_within_bound: bool,
}

impl DefectFile {
    pub fn build(d: &ResolutionDescriptor, fibers: &[ExceptionalFiberDescriptor]) -> Self {
        let points: Vec<DefectEntry> = fibers
            .iter()
            .map(|fd| {
                let DefectCheck {
                    point,
                    defect,
                    discrepancy_one,
                    within_bound,
                } = stringy_core::analysis::defect_bound_check(fd);
                DefectEntry {
                    point,
                    h11_e1: fd.h11_level_one(),
                    h0_e2: fd.h0_level_two(),
                    h0_e1: fd.h0_level_one(),
                    defect,
                    discrepancy_one,
                    within_bound,
                }
            })
            .collect();
        Self {
            label: d.label().to_string(),
            total_defect: points.iter().map(|p| p.defect).sum(),
            total_discrepancy_one: points.iter().map(|p| p.discrepancy_one).sum(),
            all_within_bound: points.iter().all(|p| p.within_bound),
            threefold_h22_minus_h11: threefold_h22_minus_h11(d).ok(),
            points,
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.label);
        let _ = writeln!(out, "point | h11(E(1)) h0(E(2)) h0(E(1)) | sigma | #a=1 | bound");
        for p in &self.points {
            let _ = writeln!(
                out,
                "{} | {} {} {} | {} | {} | {}",
                p.point,
                p.h11_e1,
                p.h0_e2,
                p.h0_e1,
                p.defect,
                p.discrepancy_one,
                if p.within_bound {
                    "ok"
                } else {
                    "VIOLATED (not realizable by a terminal threefold singularity)"
                }
            );
        }
        let _ = writeln!(
            out,
            "total sigma = {}, total #a=1 = {}",
            self.total_defect, self.total_discrepancy_one
        );
        if let Some(diff) = self.threefold_h22_minus_h11 {
            let _ = writeln!(out, "h_st^2,2 - h_st^1,1 of the descriptor = {diff}");
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Difference {
    pub p: i64,
    pub q: i64,
    pub left: String,
    pub right: String,
}

impl From<CoefficientDifference> for Difference {
    fn from(d: CoefficientDifference) -> Self {
        Self {
            p: d.p,
            q: d.q,
            left: d.left.to_string(),
            right: d.right.to_string(),
        }
    }
}

/// Result of `compare`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompareFile {
    pub left: String,
    pub right: String,
    pub left_e_st: String,
    pub right_e_st: String,
    pub equal: bool,
    /// First differing expansion coefficient, ordered by `p + q` then `p`.
    pub first_difference: Option<Difference>,
    pub searched_degree: i64,
}

impl CompareFile {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "left:  {}\n  E_st = {}", self.left, self.left_e_st);
        let _ = writeln!(out, "right: {}\n  E_st = {}", self.right, self.right_e_st);
        if self.equal {
            let _ = writeln!(out, "equal as rational functions");
        } else {
            let _ = writeln!(out, "NOT equal");
            match &self.first_difference {
                Some(d) => {
                    let _ = writeln!(out, "first difference at u^{}v^{}: {} vs {}", d.p, d.q, d.left, d.right);
                }
                None => {
                    let _ = writeln!(out, "no differing coefficient with p + q <= {}", self.searched_degree);
                }
            }
        }
        out
    }
}

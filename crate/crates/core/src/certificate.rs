//! Machine-checkable certificates for adjacency answers.
//!
//! A certificate is a self-contained JSON document: the query diagrams are
//! embedded as canonical text, every vertex reference uses the canonical
//! names `v1..vn` of those texts, and added vertices are named `a1..ak`.
//! [`verify_certificate`] re-derives everything it can from the raw
//! definitions (transported multiplicities, value systems, matrices,
//! tameness) instead of trusting the stored copies, and never re-runs the
//! search that produced the certificate.

use serde::{Deserialize, Serialize};

use crate::adjacency::{
    AdjacencyVerdict, DominationCertificate, LinearVerdict, NotLinearReason, PositionalWitness,
    Reason, VerdictKind,
};
use crate::diagram::{Embedding, EnriquesDiagram, OrderedDiagram, VertexId};
use crate::error::{Error, Result};
use crate::format;
use crate::weights::WeightedDiagram;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Query {
    pub op: String,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrderingsField {
    pub target: Vec<String>,
    pub d0: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatricesField {
    pub target: Vec<Vec<i64>>,
    pub d0: Vec<Vec<i64>>,
    pub product: Vec<Vec<i64>>,
}

/// The stable on-disk certificate schema.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateFile {
    pub schema: u32,
    pub query: Query,
    pub verdict: String,
    pub reason: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embedding: Option<Vec<(String, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub added_vertices: Option<Vec<(String, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transported_mults: Option<Vec<(String, i64)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values_right: Option<Vec<(String, i64)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values_transported: Option<Vec<(String, i64)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d0: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orderings: Option<OrderingsField>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrices: Option<MatricesField>,
}

impl CertificateFile {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::BadCertificate(format!("invalid JSON: {e}")))
    }
}

/// Labels used for the left side of a domination: canonical names for the
/// base vertices, `a1..ak` for added ones (in id order).
struct LeftFrame {
    labels: Vec<String>,
}

impl LeftFrame {
    fn new(base: &WeightedDiagram, result: &WeightedDiagram) -> Self {
        let mut labels = format::canonical_labels(base.diagram(), Some(base.mults()));
        for k in base.vertex_count()..result.vertex_count() {
            labels.push(format!("a{}", k - base.vertex_count() + 1));
        }
        LeftFrame { labels }
    }

    fn name(&self, v: VertexId) -> String {
        self.labels[v.index()].clone()
    }
}

fn embedding_pairs(
    dom: &DominationCertificate,
    right_labels: &[String],
    left: &LeftFrame,
) -> Vec<(String, String)> {
    dom.embedding
        .pairs()
        .iter()
        .map(|&(s, t)| (right_labels[s.index()].clone(), left.name(t)))
        .collect()
}

fn labelled_values(labels: &[String], values: &[i64]) -> Vec<(String, i64)> {
    labels.iter().cloned().zip(values.iter().copied()).collect()
}

fn added_pairs(base_count: usize, result: &WeightedDiagram, left: &LeftFrame) -> Vec<(String, String)> {
    (base_count..result.vertex_count())
        .map(|k| {
            let v = VertexId(k as u32);
            let parent = result.diagram().parent(v).expect("added vertex has a parent");
            (left.name(v), left.name(parent))
        })
        .collect()
}

fn domination_fields(
    cert: &mut CertificateFile,
    base: &WeightedDiagram,
    dom: &DominationCertificate,
    right: &WeightedDiagram,
    result: &WeightedDiagram,
) {
    let left = LeftFrame::new(base, result);
    let right_labels = format::canonical_labels(right.diagram(), Some(right.mults()));
    cert.embedding = Some(embedding_pairs(dom, &right_labels, &left));
    cert.added_vertices = Some(added_pairs(base.vertex_count(), result, &left));
    cert.transported_mults = Some(labelled_values(&right_labels, dom.transported.mults()));
    cert.values_right = Some(labelled_values(&right_labels, dom.right_values.as_slice()));
    cert.values_transported = Some(labelled_values(&right_labels, dom.transported_values.as_slice()));
}

fn base_certificate(op: &str, left: &WeightedDiagram, right: &WeightedDiagram) -> CertificateFile {
    CertificateFile {
        schema: SCHEMA_VERSION,
        query: Query {
            op: op.into(),
            left: format::serialize_weighted(left),
            right: format::serialize_weighted(right),
        },
        verdict: String::new(),
        reason: String::new(),
        embedding: None,
        added_vertices: None,
        transported_mults: None,
        values_right: None,
        values_transported: None,
        d0: None,
        orderings: None,
        matrices: None,
    }
}

/// Certificate for a plain domination query.
pub fn domination_certificate(
    left: &WeightedDiagram,
    right: &WeightedDiagram,
    outcome: Option<&DominationCertificate>,
) -> CertificateFile {
    let mut cert = base_certificate("dominates", left, right);
    match outcome {
        Some(dom) => {
            cert.verdict = "DOMINATES".into();
            cert.reason = "domination-witness".into();
            domination_fields(&mut cert, left, dom, right, left);
        }
        None => {
            cert.verdict = "NOT_DOMINATED".into();
            cert.reason = "search-exhausted".into();
        }
    }
    cert
}

/// Certificate for a linear-adjacency query.
pub fn linear_certificate(
    tilde: &WeightedDiagram,
    target: &WeightedDiagram,
    verdict: &LinearVerdict,
) -> CertificateFile {
    let mut cert = base_certificate("linear-adj", tilde, target);
    match verdict {
        LinearVerdict::Linear(lin) => {
            cert.verdict = "LINEAR".into();
            cert.reason = Reason::LinearDomination.tag().into();
            domination_fields(&mut cert, tilde, &lin.domination, target, &lin.augmentation.result);
        }
        LinearVerdict::NotLinear(why) => {
            cert.verdict = "NOT_LINEAR".into();
            cert.reason = match why {
                NotLinearReason::Semicontinuity => "semicontinuity",
                NotLinearReason::SearchExhausted => "search-exhausted",
            }
            .into();
        }
    }
    cert
}

fn witness_fields(
    cert: &mut CertificateFile,
    tilde: &WeightedDiagram,
    target: &WeightedDiagram,
    w: &PositionalWitness,
) {
    // The domination's right side is the transported diagram (D0, bold mu).
    let d0_labels = format::canonical_labels(w.d0.diagram(), Some(w.d0.mults()));
    let left = LeftFrame::new(tilde, &w.augmentation.result);
    cert.d0 = Some(format::serialize_weighted(&w.d0));
    let target_labels = format::canonical_labels(target.diagram(), Some(target.mults()));
    cert.orderings = Some(OrderingsField {
        target: w.target_order.iter().map(|&v| target_labels[v.index()].clone()).collect(),
        d0: w.d0_order.iter().map(|&v| d0_labels[v.index()].clone()).collect(),
    });
    cert.matrices = Some(MatricesField {
        target: w.matrix_generic.rows(),
        d0: w.matrix_special.rows(),
        product: w.product.rows(),
    });
    cert.embedding = Some(embedding_pairs(&w.domination, &d0_labels, &left));
    cert.added_vertices = Some(added_pairs(tilde.vertex_count(), &w.augmentation.result, &left));
    cert.transported_mults = Some(labelled_values(&d0_labels, w.domination.transported.mults()));
    cert.values_right = Some(labelled_values(&d0_labels, w.domination.right_values.as_slice()));
    cert.values_transported = Some(labelled_values(&d0_labels, w.domination.transported_values.as_slice()));
}

/// Certificate for a full verdict-cascade query.
pub fn verdict_certificate(
    tilde: &WeightedDiagram,
    target: &WeightedDiagram,
    verdict: &AdjacencyVerdict,
) -> CertificateFile {
    let mut cert = base_certificate("adj", tilde, target);
    cert.reason = verdict.reason.tag().into();
    cert.verdict = match verdict.kind {
        VerdictKind::Linear => "LINEAR",
        VerdictKind::Adjacent => "ADJACENT",
        VerdictKind::NotAdjacent => "NOT_ADJACENT",
        VerdictKind::Unknown => "UNKNOWN",
    }
    .into();
    if let Some(lin) = &verdict.linear {
        domination_fields(&mut cert, tilde, &lin.domination, target, &lin.augmentation.result);
    }
    if let Some(w) = &verdict.witness {
        witness_fields(&mut cert, tilde, target, w);
    }
    cert
}

/// Outcome of an independent re-check: each named check with its result.
#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub checks: Vec<(String, bool)>,
    pub notes: Vec<String>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    fn check(&mut self, name: impl Into<String>, ok: bool) -> bool {
        self.checks.push((name.into(), ok));
        ok
    }

    fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }
}

fn resolve(d: &EnriquesDiagram, label: &str) -> Result<VertexId> {
    d.find_label(label)
        .ok_or_else(|| Error::BadCertificate(format!("unknown vertex label '{label}'")))
}

/// Rebuild the left diagram of the domination: the query's left side plus
/// the listed added vertices, every one free of multiplicity 1.
fn rebuild_left(
    left: &WeightedDiagram,
    added: &[(String, String)],
) -> Result<WeightedDiagram> {
    let mut diagram = left.diagram().clone();
    let mut mults = left.mults().to_vec();
    for (label, parent) in added {
        if diagram.find_label(label).is_some() {
            return Err(Error::BadCertificate(format!("added vertex '{label}' already exists")));
        }
        let p = resolve(&diagram, parent)?;
        diagram = diagram.extended(p, None, label.clone());
        mults.push(1);
    }
    WeightedDiagram::new(diagram, mults)
}

fn field<'a, T>(opt: &'a Option<T>, name: &str) -> Result<&'a T> {
    opt.as_ref()
        .ok_or_else(|| Error::BadCertificate(format!("missing field '{name}'")))
}

/// Re-check a positive domination claim (shared by DOMINATES, LINEAR and
/// ADJACENT verdicts) against `right`, rebuilding the transported weights
/// and both value systems from scratch.
fn verify_domination(
    cert: &CertificateFile,
    left: &WeightedDiagram,
    right: &WeightedDiagram,
    report: &mut VerifyReport,
) -> Result<()> {
    let added = cert.added_vertices.clone().unwrap_or_default();
    let dprime = rebuild_left(left, &added)?;
    if !report.check("left side plus added vertices is consistent", dprime.is_consistent()) {
        return Ok(());
    }

    let pairs_raw = field(&cert.embedding, "embedding")?;
    let mut pairs = Vec::with_capacity(pairs_raw.len());
    for (s, t) in pairs_raw {
        pairs.push((resolve(right.diagram(), s)?, resolve(dprime.diagram(), t)?));
    }
    let embedding = Embedding::new(pairs);
    match embedding.check(right.diagram(), dprime.diagram()) {
        Ok(()) => {
            report.check("embedding is a proximity-preserving bijection of downward-closed subdiagrams", true);
        }
        Err(why) => {
            report.note(why);
            report.check("embedding is a proximity-preserving bijection of downward-closed subdiagrams", false);
            return Ok(());
        }
    }

    let transported_mults: Vec<i64> = right
        .diagram()
        .vertices()
        .map(|p| embedding.image_of(p).map_or(0, |ip| dprime.mult(ip)))
        .collect();
    let stored = field(&cert.transported_mults, "transported_mults")?;
    let mut stored_ok = stored.len() == right.vertex_count();
    for (label, m) in stored {
        let p = resolve(right.diagram(), label)?;
        stored_ok &= transported_mults[p.index()] == *m;
    }
    if !report.check("transported multiplicities equal mu' pulled back through the embedding", stored_ok) {
        return Ok(());
    }

    let transported = WeightedDiagram::new(right.diagram().clone(), transported_mults)?;
    let v = right.values();
    let vp = transported.values();
    let check_values = |stored: &Vec<(String, i64)>, computed: &[i64]| -> Result<bool> {
        let mut ok = stored.len() == right.vertex_count();
        for (label, x) in stored {
            let p = resolve(right.diagram(), label)?;
            ok &= computed[p.index()] == *x;
        }
        Ok(ok)
    };
    let vr_ok = check_values(field(&cert.values_right, "values_right")?, v.as_slice())?;
    report.check("stored right values match recomputation", vr_ok);
    let vt_ok = check_values(field(&cert.values_transported, "values_transported")?, vp.as_slice())?;
    report.check("stored transported values match recomputation", vt_ok);

    let dominated = right
        .diagram()
        .vertices()
        .all(|p| v.get(p) <= vp.get(p));
    report.check("right values are dominated pointwise", dominated);
    Ok(())
}

/// Re-check the positional fields of an ADJACENT verdict: admissible
/// orderings, positional weight transport, the matrix criterion, and tame
/// unloading. Returns the transported diagram to verify domination against.
fn verify_positional(
    cert: &CertificateFile,
    target: &WeightedDiagram,
    report: &mut VerifyReport,
) -> Result<Option<WeightedDiagram>> {
    let d0_text = field(&cert.d0, "d0")?;
    let d0 = format::parse_weighted(d0_text)?;
    let orderings = field(&cert.orderings, "orderings")?;
    if orderings.target.len() != target.vertex_count() || orderings.d0.len() != d0.vertex_count() {
        return Err(Error::BadCertificate("ordering length mismatch".into()));
    }
    let mut t_order = Vec::new();
    for label in &orderings.target {
        t_order.push(resolve(target.diagram(), label)?);
    }
    let mut d0_order = Vec::new();
    for label in &orderings.d0 {
        d0_order.push(resolve(d0.diagram(), label)?);
    }
    let generic = match OrderedDiagram::new(target.diagram(), t_order.clone()) {
        Ok(od) => od,
        Err(_) => {
            report.check("target ordering is admissible", false);
            return Ok(None);
        }
    };
    report.check("target ordering is admissible", true);
    let special = match OrderedDiagram::new(d0.diagram(), d0_order.clone()) {
        Ok(od) => od,
        Err(_) => {
            report.check("candidate ordering is admissible", false);
            return Ok(None);
        }
    };
    report.check("candidate ordering is admissible", true);

    let transport_ok = t_order
        .iter()
        .zip(&d0_order)
        .all(|(&tv, &dv)| target.mult(tv) == d0.mult(dv));
    if !report.check("candidate weights are the positional transport of the target weights", transport_ok) {
        return Ok(None);
    }

    let p = generic.proximity_matrix();
    let p0 = special.proximity_matrix();
    let product = p0.inverse_unit_lower().mul(&p);
    report.check("transition matrix has no negative entries", !product.has_negative_entry());
    if let Some(m) = &cert.matrices {
        let stored_ok = m.target == p.rows() && m.d0 == p0.rows() && m.product == product.rows();
        report.check("stored matrices match recomputation", stored_ok);
    }

    let tame = d0.unload()?.tame;
    report.check("transported diagram unloads tamely", tame);
    Ok(Some(d0))
}

/// Independently re-check a certificate. Positive claims are re-derived in
/// full; negative and unknown verdicts have their checkable evidence
/// re-checked, with a note where exhaustiveness claims cannot be re-run.
pub fn verify_certificate(cert: &CertificateFile) -> Result<VerifyReport> {
    if cert.schema != SCHEMA_VERSION {
        return Err(Error::BadCertificate(format!(
            "unsupported schema version {}",
            cert.schema
        )));
    }
    let mut report = VerifyReport::default();
    let left = format::parse_weighted(&cert.query.left)?;
    let right = format::parse_weighted(&cert.query.right)?;

    let requires_types = matches!(cert.query.op.as_str(), "linear-adj" | "adj");
    if requires_types {
        report.check("query sides are types", left.is_type() && right.is_type());
    } else {
        report.check("left side is consistent", left.is_consistent());
    }

    match cert.verdict.as_str() {
        "DOMINATES" | "LINEAR" => {
            verify_domination(cert, &left, &right, &mut report)?;
        }
        "ADJACENT" => {
            if let Some(d0) = verify_positional(cert, &right, &mut report)? {
                verify_domination(cert, &left, &d0, &mut report)?;
            }
        }
        "NOT_ADJACENT" | "NOT_LINEAR" => match cert.reason.as_str() {
            "two-free-vertices" => {
                let ok = right.diagram().free_vertex_count() <= 2;
                report.check("target diagram has at most two free vertices", ok);
                report.note("the failed linear search itself is exhaustive and is not re-run");
            }
            "semicontinuity" => {
                let li = left.invariants()?;
                let ri = right.invariants()?;
                let ok = li.delta < ri.delta || li.milnor < ri.milnor;
                report.check("a semicontinuous invariant decreases", ok);
            }
            _ => {
                report.note(format!(
                    "negative verdict '{}' records an exhaustive search; nothing further to re-check",
                    cert.reason
                ));
            }
        },
        "UNKNOWN" | "NOT_DOMINATED" => {
            report.note("indeterminate or negative-search verdict; nothing further to re-check");
        }
        other => {
            return Err(Error::BadCertificate(format!("unknown verdict '{other}'")));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adjacency::{adjacency_verdict, dominates, linear_adjacent};
    use crate::catalog::{arnold, ArnoldFamily};

    fn a(k: i64) -> WeightedDiagram {
        arnold(ArnoldFamily::A, k).unwrap().diagram
    }

    fn d4() -> WeightedDiagram {
        arnold(ArnoldFamily::D, 4).unwrap().diagram
    }

    #[test]
    fn linear_certificate_roundtrips_and_verifies() {
        let verdict = linear_adjacent(&d4(), &a(3)).unwrap();
        let cert = linear_certificate(&d4(), &a(3), &verdict);
        assert_eq!(cert.verdict, "LINEAR");
        let json = cert.to_json();
        let back = CertificateFile::from_json(&json).unwrap();
        let report = verify_certificate(&back).unwrap();
        assert!(report.ok(), "{:?}", report.checks);
    }

    #[test]
    fn tampered_certificate_fails() {
        let verdict = linear_adjacent(&d4(), &a(3)).unwrap();
        let mut cert = linear_certificate(&d4(), &a(3), &verdict);
        // Claim a larger transported value than the recomputation gives.
        if let Some(vt) = cert.values_transported.as_mut() {
            vt[0].1 += 1;
        }
        let report = verify_certificate(&cert).unwrap();
        assert!(!report.ok());
    }

    #[test]
    fn domination_certificate_verifies() {
        let outcome = dominates(&a(3), &a(2)).unwrap();
        let cert = domination_certificate(&a(3), &a(2), outcome.as_ref());
        assert_eq!(cert.verdict, "DOMINATES");
        let report = verify_certificate(&cert).unwrap();
        assert!(report.ok(), "{:?}", report.checks);
    }

    #[test]
    fn negative_certificate_checks_evidence() {
        let verdict = adjacency_verdict(&a(2), &a(3)).unwrap();
        let cert = verdict_certificate(&a(2), &a(3), &verdict);
        assert_eq!(cert.verdict, "NOT_ADJACENT");
        assert_eq!(cert.reason, "two-free-vertices");
        let report = verify_certificate(&cert).unwrap();
        assert!(report.ok());
    }

    #[test]
    fn adjacent_witness_certificate_verifies() {
        use crate::adjacency::{sufficient_adjacency, Reason, SufficientOutcome, VerdictKind};
        let SufficientOutcome::Yes(w) = sufficient_adjacency(&d4(), &a(3)).unwrap() else {
            panic!("expected YES")
        };
        let verdict = AdjacencyVerdict {
            kind: VerdictKind::Adjacent,
            reason: Reason::SufficientWitness,
            linear: None,
            witness: Some(w),
        };
        let cert = verdict_certificate(&d4(), &a(3), &verdict);
        assert_eq!(cert.verdict, "ADJACENT");
        assert!(cert.d0.is_some() && cert.matrices.is_some());
        let report = verify_certificate(&cert).unwrap();
        assert!(report.ok(), "{:?}", report.checks);
    }

    #[test]
    fn unknown_schema_is_rejected() {
        let verdict = linear_adjacent(&d4(), &a(3)).unwrap();
        let mut cert = linear_certificate(&d4(), &a(3), &verdict);
        cert.schema = 99;
        assert!(verify_certificate(&cert).is_err());
    }
}

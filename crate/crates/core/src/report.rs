//! Serializable report records, table emitters and the verification suites
//! behind the command-line front end.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::bounds::{bound_report, BoundRow, Verdict};
use crate::chars::{closed_forms, sum_abs_squares_odd, CharFilter};
use crate::classmass::{eichler_mass, h_minus, ladder_class_number, Family, FieldFamily};
use crate::error::{invalid, Result};
use crate::gates::{
    membership, order_membership_quat, phi, phi_all, projectively_equal, psi, random_word,
    word_matrix, zeta_log, Membership, OrderKind,
};
use crate::graph::{
    enumerate_group, equivariant_euler, mass_totals, quotient, random_action, subdivide_inverted,
    verify_mass_multiplicativity, FiniteTreeAction, RandomTreeParams,
};
use crate::orders::{
    root_of_unity_content, root_of_unity_content_closed, LadderFamily, LadderOrder,
};
use crate::util::fmt_rational;

/// Output format.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    /// One JSON document.
    Json,
    /// Comma-separated values with a header line.
    Csv,
    /// Human-readable text.
    Plain,
}

/// A command result with exact values serialized as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRecord {
    /// Command name.
    pub command: String,
    /// Inputs by name.
    pub inputs: BTreeMap<String, String>,
    /// Outputs by name; exact numbers are strings, intervals `[lo, hi]`.
    pub outputs: BTreeMap<String, Value>,
    /// Where each output comes from.
    pub provenance: Vec<String>,
    /// Verdicts by check name.
    pub verdicts: BTreeMap<String, String>,
}

impl ReportRecord {
    fn new(command: &str) -> Self {
        ReportRecord {
            command: command.into(),
            inputs: BTreeMap::new(),
            outputs: BTreeMap::new(),
            provenance: Vec::new(),
            verdicts: BTreeMap::new(),
        }
    }

    fn input(mut self, k: &str, v: impl ToString) -> Self {
        self.inputs.insert(k.into(), v.to_string());
        self
    }

    fn output(mut self, k: &str, v: impl ToString) -> Self {
        self.outputs.insert(k.into(), Value::String(v.to_string()));
        self
    }

    /// Pretty JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("records serialize")
    }

    /// Parses a record.
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).or_else(|e| invalid(format!("bad report JSON: {e}")))
    }

    /// An output parsed as an exact rational.
    pub fn rational(&self, key: &str) -> Option<BigRational> {
        self.outputs
            .get(key)?
            .as_str()
            .and_then(crate::util::parse_rational)
    }
}

fn tag<T: Serialize>(x: &T) -> String {
    match serde_json::to_value(x) {
        Ok(Value::String(s)) => s,
        Ok(v) => v.to_string(),
        Err(_) => String::new(),
    }
}

/// h⁻ of one field.
pub fn hminus_record(fam: FieldFamily) -> Result<ReportRecord> {
    let h = h_minus(fam)?;
    Ok(ReportRecord::new("hminus")
        .input("family", fam.cli_name())
        .input("s", fam.s())
        .output("h_minus", h)
        .with_provenance("exact generalized Bernoulli numbers"))
}

impl ReportRecord {
    fn with_provenance(mut self, p: &str) -> Self {
        self.provenance.push(p.into());
        self
    }
}

/// The (s, h⁻) rows of a family over a range of s.
pub fn hminus_table(
    family: &str,
    s_range: std::ops::RangeInclusive<u32>,
) -> Result<Vec<(u32, BigInt)>> {
    s_range
        .map(|s| Ok((s, h_minus(FieldFamily::from_cli(family, s)?)?)))
        .collect()
}

/// Table rows in the requested format.
pub fn format_table(family: &str, rows: &[(u32, BigInt)], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Csv => {
            out.push_str("s,h_minus\n");
            for (s, h) in rows {
                let _ = writeln!(out, "{s},{h}");
            }
        }
        Format::Plain => {
            let _ = writeln!(out, "{:>3}  h_minus", "s");
            for (s, h) in rows {
                let _ = writeln!(out, "{s:>3}  {h}");
            }
        }
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|(s, h)| serde_json::json!({ "s": s, "h_minus": h.to_string() }))
                .collect();
            out = serde_json::to_string_pretty(
                &serde_json::json!({ "family": family, "rows": rows }),
            )
            .expect("table serializes");
            out.push('\n');
        }
    }
    out
}

/// Eichler mass and the derived Euler characteristics for one n.
pub fn mass_record(n: u64) -> Result<ReportRecord> {
    let m = eichler_mass(n)?;
    let three = BigRational::from_integer(3.into());
    let two = BigRational::from_integer(2.into());
    let identity = |vm: &BigRational, em: &BigRational| {
        if &three * vm == &two * em {
            "holds"
        } else {
            "fails"
        }
    };
    let mut r = ReportRecord::new("mass")
        .input("n", n)
        .output("degree", m.degree)
        .output("zeta_minus1", fmt_rational(&m.zeta_minus_one))
        .output("M", fmt_rational(&m.mass))
        .output("vm_gr", fmt_rational(&m.vm_gr))
        .output("em_gr", fmt_rational(&m.em_gr))
        .output("vm_gr_bar", fmt_rational(&m.vm_gr_bar))
        .output("em_gr_bar", fmt_rational(&m.em_gr_bar))
        .output("euler_psu", fmt_rational(&m.euler_psu))
        .output("euler_pu", fmt_rational(&m.euler_pu))
        .with_provenance("zeta_minus1 from B2 of the even characters of the real subfield")
        .with_provenance(
            "vertex and edge masses from the Euler characteristic of the acting group",
        );
    r.verdicts
        .insert("3vm=2em(gr)".into(), identity(&m.vm_gr, &m.em_gr).into());
    r.verdicts.insert(
        "3vm=2em(gr_bar)".into(),
        identity(&m.vm_gr_bar, &m.em_gr_bar).into(),
    );
    Ok(r)
}

/// Bound rows for a family over a range of s, sorted by (s, name).
pub fn bound_rows(family: Family, s_range: std::ops::RangeInclusive<u32>) -> Result<Vec<BoundRow>> {
    let mut rows = Vec::new();
    for s in s_range {
        rows.extend(bound_report(s, family)?.rows);
    }
    rows.sort_by(|a, b| (a.s, &a.name).cmp(&(b.s, &b.name)));
    Ok(rows)
}

/// One record per bound row.
pub fn bound_record(row: &BoundRow) -> ReportRecord {
    let mut r = ReportRecord::new("bounds")
        .input("family", &row.family)
        .input("s", row.s)
        .output("name", &row.name)
        .output("lhs", &row.lhs)
        .output("relation", tag(&row.relation))
        .output("rhs", &row.rhs)
        .with_provenance(&row.provenance);
    r.verdicts.insert(row.name.clone(), tag(&row.verdict));
    r
}

/// Bound rows in the requested format.
pub fn format_bounds(rows: &[BoundRow], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Csv => {
            out.push_str("family,s,name,lhs,relation,rhs,verdict\n");
            for r in rows {
                let _ = writeln!(
                    out,
                    "{},{},{},\"{}\",{},\"{}\",{}",
                    r.family,
                    r.s,
                    r.name,
                    r.lhs,
                    tag(&r.relation),
                    r.rhs,
                    tag(&r.verdict)
                );
            }
        }
        Format::Plain => {
            for r in rows {
                let _ = writeln!(
                    out,
                    "{} s={} {}: {} {} {} [{}]",
                    r.family,
                    r.s,
                    r.name,
                    r.lhs,
                    tag(&r.relation),
                    r.rhs,
                    tag(&r.verdict)
                );
            }
        }
        Format::Json => {
            let recs: Vec<ReportRecord> = rows.iter().map(bound_record).collect();
            out = serde_json::to_string_pretty(&recs).expect("records serialize");
            out.push('\n');
        }
    }
    out
}

/// Whether any row fails.
pub fn any_failure(rows: &[BoundRow]) -> bool {
    rows.iter().any(|r| r.verdict == Verdict::Fails)
}

/// Pass/fail tally of a verification suite.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteOutcome {
    /// Suite name.
    pub suite: String,
    /// Number of passing checks.
    pub passed: usize,
    /// Labels of failing checks.
    pub failures: Vec<String>,
}

impl SuiteOutcome {
    fn new(suite: &str) -> Self {
        SuiteOutcome {
            suite: suite.into(),
            ..Default::default()
        }
    }

    fn check(&mut self, ok: bool, label: impl FnOnce() -> String) {
        if ok {
            self.passed += 1;
        } else {
            self.failures.push(label());
        }
    }

    /// Whether every check passed.
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    /// Summary line followed by one line per failure.
    pub fn summary(&self) -> String {
        let mut out = format!(
            "{}: {} passed, {} failed\n",
            self.suite,
            self.passed,
            self.failures.len()
        );
        for f in &self.failures {
            let _ = writeln!(out, "  FAIL {f}");
        }
        out
    }
}

/// The four character-sum families: name, modulus, filter and closed form.
pub fn charsum_cases(s: u32) -> Vec<(&'static str, u64, CharFilter, BigInt)> {
    vec![
        ("pow2", 1u64 << s, CharFilter::Odd, closed_forms::pow2(s)),
        (
            "sqrt3",
            3u64 << s,
            CharFilter::OfSubfield(FieldFamily::SqrtMinus3(s), None),
            closed_forms::sqrt_minus3(s),
        ),
        (
            "sqrtp",
            1u64 << (s + 1),
            CharFilter::OfSubfield(FieldFamily::SqrtMinusP(s), None),
            closed_forms::sqrt_minus_p(s),
        ),
        (
            "3pow2",
            3u64 << s,
            CharFilter::Odd,
            closed_forms::three_pow2(s),
        ),
    ]
}

/// Brute-force character square sums against their closed forms, s = 3..=s_max.
pub fn verify_charsums(s_max: u32) -> Result<SuiteOutcome> {
    if !(3..=12).contains(&s_max) {
        return invalid(format!("s-max must lie in 3..=12, got {s_max}"));
    }
    let mut out = SuiteOutcome::new("charsums");
    for s in 3..=s_max {
        for (name, n, filter, closed) in charsum_cases(s) {
            let brute = sum_abs_squares_odd(n, &filter)?;
            out.check(brute == closed, || {
                format!("{name} s={s}: brute force {brute} vs closed form {closed}")
            });
        }
    }
    Ok(out)
}

fn random_perm<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Mass multiplicativity on random finite set actions, 3·VM = 2·EM for
/// the supported n up to `n_max`, and the class-number ladder for s ≤ 8.
pub fn verify_masses(seed: u64, actions: usize, n_max: u64) -> Result<SuiteOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = SuiteOutcome::new("masses");
    for i in 0..actions {
        let n = rng.gen_range(2..=7);
        let k = rng.gen_range(1..=2);
        let g: Vec<Vec<usize>> = (0..k).map(|_| random_perm(&mut rng, n)).collect();
        let elements = enumerate_group(n, &g)?;
        let h = vec![elements
            .choose(&mut rng)
            .expect("groups are nonempty")
            .clone()];
        let ok = verify_mass_multiplicativity(n, &g, &h)?;
        out.check(ok, || {
            format!("set action #{i} on {n} points: m(Orb) ≠ d·m(Orb₀)")
        });
    }
    let mut n = 8u64;
    let mut supported: Vec<u64> = Vec::new();
    while n <= n_max {
        supported.push(n);
        if 3 * n / 2 <= n_max {
            supported.push(3 * n / 2);
        }
        n *= 2;
    }
    for n in supported {
        let r = mass_record(n)?;
        for (k, v) in &r.verdicts {
            out.check(v == "holds", || format!("n={n}: {k}"));
        }
    }
    for s in 3..=8u32 {
        let h = BigInt::from(1u32);
        let o0 = LadderOrder::new(LadderFamily::Ok, s, 0);
        out.check(ladder_class_number(&o0, &h)? == h, || {
            format!("h(O_0) ≠ h(K_s) at s={s}")
        });
        for k in 0..(1u64 << (s - 2)) {
            let o = LadderOrder::new(LadderFamily::Ok, s, k);
            out.check(
                root_of_unity_content(&o)? == root_of_unity_content_closed(&o)?,
                || format!("w_k ladder vs closed form at s={s}, k={k}"),
            );
        }
        for k in 0..=(1u64 << (s - 1)) {
            let o = LadderOrder::new(LadderFamily::Opk, s, k);
            out.check(
                root_of_unity_content(&o)? == root_of_unity_content_closed(&o)?,
                || format!("w'_k ladder vs closed form at s={s}, k={k}"),
            );
        }
    }
    Ok(out)
}

/// Checks on one finite tree action; returns failure labels.
pub fn tree_action_failures(a: &FiniteTreeAction) -> Result<Vec<String>> {
    let mut bad = Vec::new();
    let q = quotient(a);
    let sub = subdivide_inverted(a);
    let qs = quotient(&sub);
    if q.genus()? != qs.genus()? {
        bad.push("genus changes under subdivision".into());
    }
    if equivariant_euler(a) != equivariant_euler(&sub) {
        bad.push("VM − EM changes under subdivision".into());
    }
    if !sub.inverted_edges().is_empty() {
        bad.push("subdivision leaves inverted edges".into());
    }
    let (_, em) = mass_totals(&q)?;
    if BigRational::from_integer((q.e_r() as i64).into())
        < em - BigRational::from_integer((q.e_h() as i64).into())
    {
        bad.push("e_r < EM − e_h".into());
    }
    let act = a.action();
    let tree = a.tree();
    let degrees = tree.degrees();
    let vmass = q.vertex_masses().expect("quotients carry masses");
    let emass = q.edge_masses().expect("quotients carry masses");
    for (v, &rep) in act.vertex_orbit_reps().iter().enumerate() {
        let sum: BigRational = q.star(v).iter().map(|&e| &emass[e] / &vmass[v]).sum();
        if sum != BigRational::from_integer((degrees[rep] as i64).into()) {
            bad.push(format!("star identity fails at vertex orbit {v}"));
        }
    }
    for j in a.inverted_edges() {
        if act.edge_set_stabilizer_order(2 * j) != 2 * act.edge_stabilizer_order(2 * j) {
            bad.push(format!("inverted edge {j} has set stabilizer of index ≠ 2"));
        }
    }
    Ok(bad)
}

/// Mass multiplicativity of a tree action restricted to a subgroup.
pub fn subgroup_mass_failures<R: Rng>(rng: &mut R, a: &FiniteTreeAction) -> Result<Vec<String>> {
    let h = vec![a
        .action()
        .elements()
        .choose(rng)
        .expect("groups are nonempty")
        .clone()];
    let b = a.restrict(h)?;
    let d = BigRational::new((a.order() as i64).into(), (b.order() as i64).into());
    let (vg, eg) = mass_totals(&quotient(a))?;
    let (vh, eh) = mass_totals(&quotient(&b))?;
    let mut bad = Vec::new();
    if vh != &d * &vg || eh != &d * &eg {
        bad.push(format!(
            "graph masses not multiplicative for a subgroup of index {d}"
        ));
    }
    Ok(bad)
}

/// Invariants of random finite tree actions.
pub fn verify_graphs(seed: u64, actions: usize) -> Result<SuiteOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = SuiteOutcome::new("graphs");
    for i in 0..actions {
        let a = random_action(&mut rng, RandomTreeParams::default());
        let mut bad = tree_action_failures(&a)?;
        bad.extend(subgroup_mass_failures(&mut rng, &a)?);
        out.check(bad.is_empty(), || {
            format!("tree action #{i}: {}", bad.join("; "))
        });
    }
    Ok(out)
}

/// Appends t^k so the product has determinant 1.
pub fn special_word(word: &str, n: u64) -> Result<String> {
    let det = word_matrix(word, n)?.det();
    let k = zeta_log(&det)
        .ok_or_else(|| crate::Error::InternalInconsistency("gate word with det ∉ ⟨ζ⟩".into()))?;
    Ok(format!("{word}{}", "t".repeat(k as usize)))
}

/// Failure labels for a pair of gate words.
pub fn gate_pair_failures(w1: &str, w2: &str, n: u64) -> Result<Vec<String>> {
    let mut bad = Vec::new();
    let a = word_matrix(w1, n)?;
    let b = word_matrix(w2, n)?;
    let ab = &a * &b;
    for (m, label) in [(&a, w1), (&b, w2)] {
        if membership(m) == Membership::NotUnitary || membership(m) == Membership::U2 {
            bad.push(format!("{label}: not in U₂ with det ∈ ⟨ζ⟩"));
        }
    }
    let (sa, sb) = (
        word_matrix(&special_word(w1, n)?, n)?,
        word_matrix(&special_word(w2, n)?, n)?,
    );
    let (pa, pb) = (psi(&sa)?, psi(&sb)?);
    if psi(&(&sa * &sb))? != &pa * &pb {
        bad.push(format!("Ψ not multiplicative on {w1}, {w2}"));
    }
    if !pa.norm().is_one() || pa.norm() != sa.det() {
        bad.push(format!("Nm∘Ψ ≠ det on {w1}"));
    }
    for m in [&a, &b, &ab] {
        let all = phi_all(m)?;
        if all.is_empty() {
            bad.push("no valid β".into());
            continue;
        }
        for im in &all {
            if !projectively_equal(&im.rep, &all[0].rep)? {
                bad.push(format!("φ depends on the branch {:?}", im.branch));
            }
            if !order_membership_quat(&im.rep, OrderKind::Mtilde)? {
                bad.push("φ-image outside the maximal order".into());
            }
            let bb = &im.beta * &im.beta.conj();
            if im.rep.norm() != bb || &(&im.beta * &im.beta) * &m.det() != bb {
                bad.push("Nm(φ(A)) ≠ ββ̄".into());
            }
        }
    }
    if !projectively_equal(&phi(&ab)?.rep, &(&phi(&a)?.rep * &phi(&b)?.rep))? {
        bad.push(format!("φ not multiplicative on {w1}, {w2}"));
    }
    if !projectively_equal(&phi(&sa)?.rep, &pa)? {
        bad.push(format!("φ and Ψ disagree on SU₂ word {w1}"));
    }
    Ok(bad)
}

/// Ψ/φ identities on random gate words at modulus n.
pub fn verify_gates(n: u64, words: usize, seed: u64) -> Result<SuiteOutcome> {
    crate::gates::gate(crate::gates::GateName::H, n)?;
    phi(&crate::gates::UMat2::identity(n))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = SuiteOutcome::new("gates");
    for _ in 0..words {
        let l1 = rng.gen_range(0..=10);
        let l2 = rng.gen_range(0..=10);
        let (w1, w2) = (random_word(&mut rng, l1), random_word(&mut rng, l2));
        let bad = gate_pair_failures(&w1, &w2, n)?;
        out.check(bad.is_empty(), || {
            format!("words {w1:?}, {w2:?}: {}", bad.join("; "))
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hminus_rows() {
        let rows = hminus_table("pow2", 4..=6).unwrap();
        let csv = format_table("pow2", &rows, Format::Csv);
        assert_eq!(csv, "s,h_minus\n4,1\n5,1\n6,17\n");
        assert_eq!(
            hminus_record(FieldFamily::K3Pow2(6)).unwrap().outputs["h_minus"],
            "61353"
        );
        assert!(hminus_table("pow5", 4..=4).is_err());
    }

    #[test]
    fn mass_json_roundtrip() {
        let r = mass_record(8).unwrap();
        assert_eq!(r.outputs["M"], "1/24");
        assert_eq!(r.outputs["euler_pu"], "-1/48");
        let back = ReportRecord::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert_eq!(
            back.rational("M"),
            Some(BigRational::new(1.into(), 24.into()))
        );
        assert!(mass_record(10).is_err());
    }

    #[test]
    fn bounds_rows_sorted_and_hold() {
        let rows = bound_rows(Family::Pow2, 4..=5).unwrap();
        assert!(!any_failure(&rows));
        assert!(rows
            .windows(2)
            .all(|w| (w[0].s, &w[0].name) <= (w[1].s, &w[1].name)));
        let r = rows
            .iter()
            .find(|r| r.s == 5 && r.name == "reference.genus_gr<=upper")
            .unwrap();
        assert_eq!(r.lhs, "40");
        let json = format_bounds(&rows, Format::Json);
        let back: Vec<ReportRecord> = serde_json::from_str(&json).unwrap();
        assert_eq!(back.len(), rows.len());
    }

    #[test]
    fn small_suites_pass() {
        assert!(verify_masses(1, 20, 24).unwrap().ok());
        let g = verify_graphs(1, 10).unwrap();
        assert!(g.ok(), "{}", g.summary());
        let g = verify_gates(8, 10, 1).unwrap();
        assert!(g.ok(), "{}", g.summary());
    }

    #[test]
    fn determinism() {
        assert_eq!(verify_graphs(7, 5).unwrap(), verify_graphs(7, 5).unwrap());
        let a = format_bounds(&bound_rows(Family::ThreePow2, 3..=3).unwrap(), Format::Csv);
        let b = format_bounds(&bound_rows(Family::ThreePow2, 3..=3).unwrap(), Format::Csv);
        assert_eq!(a, b);
    }
}

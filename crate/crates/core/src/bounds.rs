//! Certified evaluation of the class-number upper bounds, mass lower
//! bounds and genus bound chains for both families.
//!
//! Bounds are symbolic products of 2^q, 3^q and π^q with rational q.
//! Expressions without π and with integral exponents are compared exactly;
//! the rest are evaluated as outward-rounded intervals with doubling
//! precision and compared only once the intervals separate.

use std::cmp::Ordering;
use std::fmt;
use std::ops;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::classmass::{h_minus, mass, supported_n, Family, FieldFamily};
use crate::cyclo::bareiss_det;
use crate::error::{invalid, Result};
use crate::interval::{ln2, ln3, pi, Interval};
use crate::util::{euler_phi, fmt_rational, mobius, pow2};

/// Starting precision of interval comparisons, in bits.
pub const START_PREC: u64 = 64;
/// Precision cap; comparisons still overlapping here are undecided.
pub const MAX_PREC: u64 = 8192;
/// Largest s for which exact class numbers and masses enter the reports.
pub const EXACT_MAX_S: u32 = 16;

/// A symbolic bound expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundExpr {
    /// Rational constant.
    Const(BigRational),
    /// 2^q.
    Pow2(BigRational),
    /// 3^q.
    Pow3(BigRational),
    /// π^q.
    PowPi(BigRational),
    /// Sum.
    Add(Box<BoundExpr>, Box<BoundExpr>),
    /// Difference.
    Sub(Box<BoundExpr>, Box<BoundExpr>),
    /// Product.
    Mul(Box<BoundExpr>, Box<BoundExpr>),
}

fn rat(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

fn ri(a: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(a.into())
}

impl BoundExpr {
    /// Integer constant.
    pub fn int(k: impl Into<BigInt>) -> Self {
        BoundExpr::Const(ri(k))
    }

    /// Rational constant.
    pub fn rational(q: BigRational) -> Self {
        BoundExpr::Const(q)
    }

    /// 2^q.
    pub fn pow2(q: BigRational) -> Self {
        BoundExpr::Pow2(q)
    }

    /// 3^q.
    pub fn pow3(q: BigRational) -> Self {
        BoundExpr::Pow3(q)
    }

    /// π^q.
    pub fn pow_pi(q: BigRational) -> Self {
        BoundExpr::PowPi(q)
    }

    /// Exact value when the expression has no irrational factor.
    pub fn exact(&self) -> Option<BigRational> {
        match self {
            BoundExpr::Const(q) => Some(q.clone()),
            BoundExpr::Pow2(q) => int_power(2, q),
            BoundExpr::Pow3(q) => int_power(3, q),
            BoundExpr::PowPi(q) => q.is_zero().then(BigRational::one),
            BoundExpr::Add(a, b) => Some(a.exact()? + b.exact()?),
            BoundExpr::Sub(a, b) => Some(a.exact()? - b.exact()?),
            BoundExpr::Mul(a, b) => Some(a.exact()? * b.exact()?),
        }
    }

    /// Outward-rounded enclosure at working precision `prec`.
    pub fn eval(&self, prec: u64) -> Interval {
        match self {
            BoundExpr::Const(q) => Interval::from_rational(q, prec),
            BoundExpr::Pow2(q) => real_power(Base::Two, q, prec),
            BoundExpr::Pow3(q) => real_power(Base::Three, q, prec),
            BoundExpr::PowPi(q) => real_power(Base::Pi, q, prec),
            BoundExpr::Add(a, b) => a.eval(prec).add(&b.eval(prec)),
            BoundExpr::Sub(a, b) => a.eval(prec).sub(&b.eval(prec)),
            BoundExpr::Mul(a, b) => a.eval(prec).mul(&b.eval(prec)),
        }
    }

    /// Enclosure of log₂ of a positive expression, or `None` when
    /// positivity is not certified at the cap.
    pub fn log2(&self) -> Option<Interval> {
        let mut prec = START_PREC;
        while prec <= MAX_PREC {
            let iv = self.eval(prec);
            if iv.is_positive() {
                return Some(iv.log2());
            }
            prec *= 2;
        }
        None
    }

    /// Exact string when exact, otherwise a decimal interval.
    pub fn value_string(&self) -> String {
        match self.exact() {
            Some(q) => fmt_rational(&q),
            None => self.eval(128).to_decimal_string(),
        }
    }
}

fn int_power(base: i64, q: &BigRational) -> Option<BigRational> {
    if !q.is_integer() {
        return None;
    }
    let e = q.to_integer().to_i64()?;
    let b = BigInt::from(base).pow(e.unsigned_abs() as u32);
    Some(if e >= 0 {
        ri(b)
    } else {
        BigRational::new(BigInt::one(), b)
    })
}

#[derive(Clone, Copy)]
enum Base {
    Two,
    Three,
    Pi,
}

fn real_power(base: Base, q: &BigRational, prec: u64) -> Interval {
    let fl = q.floor().to_integer();
    let fr = q - ri(fl.clone());
    let fl = fl.to_i64().expect("bound exponents fit in i64");
    let p = prec + 32 + 64 - fl.unsigned_abs().leading_zeros() as u64;
    let int_part = match base {
        Base::Two => Interval::from_int(1, p).mul_pow2(fl),
        Base::Three => Interval::from_int(3, p).powi(fl),
        Base::Pi => pi(p).powi(fl),
    };
    if fr.is_zero() {
        return int_part;
    }
    let ln_b = match base {
        Base::Two => ln2(p),
        Base::Three => ln3(p),
        Base::Pi => pi(p).ln(),
    };
    int_part.mul(&Interval::from_rational(&fr, p).mul(&ln_b).exp())
}

impl ops::Add for BoundExpr {
    type Output = BoundExpr;
    fn add(self, o: BoundExpr) -> BoundExpr {
        BoundExpr::Add(Box::new(self), Box::new(o))
    }
}

impl ops::Sub for BoundExpr {
    type Output = BoundExpr;
    fn sub(self, o: BoundExpr) -> BoundExpr {
        BoundExpr::Sub(Box::new(self), Box::new(o))
    }
}

impl ops::Mul for BoundExpr {
    type Output = BoundExpr;
    fn mul(self, o: BoundExpr) -> BoundExpr {
        BoundExpr::Mul(Box::new(self), Box::new(o))
    }
}

impl fmt::Display for BoundExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundExpr::Const(q) => write!(f, "{}", fmt_rational(q)),
            BoundExpr::Pow2(q) => write!(f, "2^({})", fmt_rational(q)),
            BoundExpr::Pow3(q) => write!(f, "3^({})", fmt_rational(q)),
            BoundExpr::PowPi(q) => write!(f, "pi^({})", fmt_rational(q)),
            BoundExpr::Add(a, b) => write!(f, "({a} + {b})"),
            BoundExpr::Sub(a, b) => write!(f, "({a} - {b})"),
            BoundExpr::Mul(a, b) => write!(f, "{a}*{b}"),
        }
    }
}

/// Outcome of comparing two expressions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Comparison {
    /// Decided, exactly or by separated intervals.
    Decided(Ordering),
    /// Intervals still overlap at the cap.
    Undecided,
}

/// Compares a and b, exactly when both are exact.
pub fn compare(a: &BoundExpr, b: &BoundExpr) -> Comparison {
    compare_from(a, b, START_PREC)
}

/// As [`compare`], starting the interval refinement at `prec`.
pub fn compare_from(a: &BoundExpr, b: &BoundExpr, prec: u64) -> Comparison {
    if let (Some(x), Some(y)) = (a.exact(), b.exact()) {
        return Comparison::Decided(x.cmp(&y));
    }
    let mut p = prec.max(16);
    while p <= MAX_PREC {
        let d = a.eval(p).sub(&b.eval(p));
        if d.is_positive() {
            return Comparison::Decided(Ordering::Greater);
        }
        if d.is_negative() {
            return Comparison::Decided(Ordering::Less);
        }
        p *= 2;
    }
    Comparison::Undecided
}

/// Verdict of a report row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// The asserted inequality holds.
    #[serde(rename = "holds")]
    Holds,
    /// The asserted inequality fails.
    #[serde(rename = "fails")]
    Fails,
    /// Intervals did not separate at the precision cap.
    #[serde(rename = "undecided-at-cap")]
    Undecided,
    /// Informational row; nothing is asserted.
    #[serde(rename = "info")]
    Info,
}

/// Relation asserted by a row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    /// lhs ≤ rhs.
    #[serde(rename = "<=")]
    Le,
    /// lhs < rhs.
    #[serde(rename = "<")]
    Lt,
    /// lhs ≥ rhs.
    #[serde(rename = ">=")]
    Ge,
    /// lhs > rhs.
    #[serde(rename = ">")]
    Gt,
    /// lhs = rhs, recorded only.
    #[serde(rename = "=")]
    Eq,
}

impl Relation {
    fn accepts(self, o: Ordering) -> bool {
        match self {
            Relation::Le => o != Ordering::Greater,
            Relation::Lt => o == Ordering::Less,
            Relation::Ge => o != Ordering::Less,
            Relation::Gt => o == Ordering::Greater,
            Relation::Eq => o == Ordering::Equal,
        }
    }
}

/// One line of a bound report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundRow {
    /// Family name, `pow2` or `3pow2`.
    pub family: String,
    /// Parameter s.
    pub s: u32,
    /// Row name; rows sort by (s, name).
    pub name: String,
    /// Left side, exact or as a decimal interval.
    pub lhs: String,
    /// Relation.
    pub relation: Relation,
    /// Right side, exact or as a decimal interval.
    pub rhs: String,
    /// Verdict.
    pub verdict: Verdict,
    /// Where the compared values come from.
    pub provenance: String,
}

#[allow(clippy::too_many_arguments)]
fn row(
    family: Family,
    s: u32,
    name: &str,
    lhs: &BoundExpr,
    rel: Relation,
    rhs: &BoundExpr,
    asserted: bool,
    provenance: &str,
) -> BoundRow {
    let verdict = if !asserted {
        Verdict::Info
    } else {
        match compare(lhs, rhs) {
            Comparison::Decided(o) if rel.accepts(o) => Verdict::Holds,
            Comparison::Decided(_) => Verdict::Fails,
            Comparison::Undecided => Verdict::Undecided,
        }
    };
    BoundRow {
        family: family.cli_name().to_string(),
        s,
        name: name.to_string(),
        lhs: lhs.value_string(),
        relation: rel,
        rhs: rhs.value_string(),
        verdict,
        provenance: provenance.to_string(),
    }
}

/// Closed-form upper bound on h⁻ of a field family, s ≥ 3.
pub fn hminus_upper(fam: FieldFamily) -> Result<BoundExpr> {
    fam.validate()?;
    let s = fam.s() as i64;
    if s < 3 {
        return invalid(format!("{fam:?}: the upper bounds need s ≥ 3"));
    }
    let t = 1i64 << (s - 3);
    Ok(match fam {
        FieldFamily::KPow2(_) => BoundExpr::pow2(ri(s + (s - 4) * t)) * BoundExpr::pow3(ri(-t)),
        FieldFamily::SqrtMinus3(_) => {
            BoundExpr::pow3(ri(1 - 2 * t)) * BoundExpr::pow2(ri(1 + s * t))
        }
        FieldFamily::SqrtMinusP(_) => BoundExpr::pow2(ri(1 - 4 * t + s * t)),
        FieldFamily::K3Pow2(_) => {
            BoundExpr::pow3(ri(1 - 4 * t)) * BoundExpr::pow2(ri(s + 1 + (s - 1) * 2 * t))
        }
        FieldFamily::SqrtMinusUPlus(_) => BoundExpr::pow2((ri(s) - rat(5, 2)) * ri(2 * t) + ri(2)),
    })
}

/// Lower bound on M_n for n = 2^s or 3·2^s, s ≥ 3.
pub fn mass_lower(s: u32, family: Family) -> Result<BoundExpr> {
    if !(3..=20).contains(&s) {
        return invalid("mass lower bound needs s in 3..=20");
    }
    let s = s as i64;
    Ok(match family {
        Family::Pow2 => {
            let t = 1i64 << (s - 3);
            // 2^{(3s−5)t − 1/2}·(2π²)^{−2t}
            BoundExpr::pow2(ri((3 * s - 5) * t - 2 * t) - rat(1, 2)) * BoundExpr::pow_pi(ri(-4 * t))
        }
        Family::ThreePow2 => BoundExpr::pow2(ri((3 * s - 12) * (1 << (s - 2)) + 1)),
    })
}

/// The PSU₂ or PU₂ graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Group {
    /// The graph gr_n of PSU₂.
    #[serde(rename = "psu")]
    Psu,
    /// The graph ḡr_n of PU₂.
    #[serde(rename = "pu")]
    Pu,
}

impl Group {
    fn tag(self) -> &'static str {
        match self {
            Group::Psu => "psu",
            Group::Pu => "pu",
        }
    }
}

fn check_chain_range(s: u32, family: Family) -> Result<()> {
    let lo = match family {
        Family::Pow2 => 4,
        Family::ThreePow2 => 3,
    };
    if s < lo || s > 20 {
        return invalid(format!(
            "genus bounds for {} need s in {lo}..=20",
            family.cli_name()
        ));
    }
    Ok(())
}

/// The closed-form lower bound on the genus.
pub fn genus_lower(s: u32, family: Family, group: Group) -> Result<BoundExpr> {
    check_chain_range(s, family)?;
    let si = s as i64;
    let one = BoundExpr::int(1);
    Ok(match (family, group) {
        (Family::Pow2, Group::Psu) => {
            let t = ri(1i64 << (s - 3));
            BoundExpr::pow2((ri(3 * si) - rat(137, 10)) * t.clone() - ri(1))
                - BoundExpr::pow2(ri(si + 2) + ri(si - 3) * t)
                + one
        }
        (Family::Pow2, Group::Pu) => {
            let t = ri(1i64 << (s - 3));
            (BoundExpr::pow2((ri(2 * si) - rat(107, 10)) * t.clone()) - BoundExpr::pow2(ri(si + 4)))
                * BoundExpr::pow2(ri(si - 3) * t - ri(2))
                + one
        }
        (Family::ThreePow2, Group::Psu) => {
            let t = 1i64 << (s - 2);
            (BoundExpr::pow2(ri((2 * si - 12) * t + 1)) - BoundExpr::pow2(ri(si + 3)))
                * BoundExpr::pow2(ri(si * t))
                + one
        }
        (Family::ThreePow2, Group::Pu) => {
            let t = 1i64 << (s - 2);
            (BoundExpr::pow2(ri((2 * si - 12) * t + 1)) - BoundExpr::pow2(ri(si + 4)))
                * BoundExpr::pow2(ri(si * t - 1))
                + one
        }
    })
}

/// Upper bound 24·n·M_n on the genus of gr_n.
pub fn genus_upper(n: u64) -> Result<BoundExpr> {
    supported_n(n)?;
    Ok(BoundExpr::rational(mass(n)? * ri(24 * n)))
}

/// Exact class numbers and mass used by the chains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactInputs {
    /// Family.
    pub family: Family,
    /// Parameter s.
    pub s: u32,
    /// M_n.
    pub mass: BigRational,
    /// (field, h⁻) pairs.
    pub h_minus: Vec<(FieldFamily, BigInt)>,
}

impl ExactInputs {
    /// Computes the inputs exactly.
    pub fn compute(s: u32, family: Family) -> Result<Self> {
        check_chain_range(s, family)?;
        if s > EXACT_MAX_S {
            return invalid(format!(
                "exact inputs are computed only for s ≤ {EXACT_MAX_S}"
            ));
        }
        let fields = chain_fields(s, family);
        let h = fields
            .iter()
            .map(|&f| Ok((f, h_minus(f)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(ExactInputs {
            family,
            s,
            mass: mass(family.n(s))?,
            h_minus: h,
        })
    }

    fn h(&self, f: FieldFamily) -> BoundExpr {
        let v = &self
            .h_minus
            .iter()
            .find(|(g, _)| *g == f)
            .expect("field among the chain inputs")
            .1;
        BoundExpr::int(v.clone())
    }
}

fn chain_fields(s: u32, family: Family) -> Vec<FieldFamily> {
    match family {
        Family::Pow2 => vec![
            FieldFamily::KPow2(s),
            FieldFamily::SqrtMinus3(s),
            FieldFamily::SqrtMinusP(s),
        ],
        Family::ThreePow2 => vec![FieldFamily::K3Pow2(s), FieldFamily::SqrtMinusUPlus(s)],
    }
}

/// One step of a genus chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainStep {
    /// Short description of what the step substitutes.
    pub name: &'static str,
    /// Value of the lower bound after the step.
    pub value: BoundExpr,
}

/// A genus lower-bound chain from exact values to the closed form; each
/// step must be at least the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusChain {
    /// Family.
    pub family: Family,
    /// Parameter s.
    pub s: u32,
    /// Graph.
    pub group: Group,
    /// Steps, starting from the exact value.
    pub steps: Vec<ChainStep>,
}

fn half(e: BoundExpr) -> BoundExpr {
    e * BoundExpr::rational(rat(1, 2))
}

/// Builds the chain from exact inputs.
pub fn genus_chain_with(inputs: &ExactInputs, group: Group) -> Result<GenusChain> {
    let s = inputs.s;
    let family = inputs.family;
    let si = s as i64;
    let m = BoundExpr::rational(inputs.mass.clone());
    let one = || BoundExpr::int(1);
    let ml = mass_lower(s, family)?;
    let psu: Vec<ChainStep>;
    let extra: [BoundExpr; 3];
    match family {
        Family::Pow2 => {
            let hk = inputs.h(FieldFamily::KPow2(s));
            let h3 = inputs.h(FieldFamily::SqrtMinus3(s));
            let hp = inputs.h(FieldFamily::SqrtMinusP(s));
            let ua = hminus_upper(FieldFamily::KPow2(s))?;
            let ub = hminus_upper(FieldFamily::SqrtMinus3(s))?;
            let uc = hminus_upper(FieldFamily::SqrtMinusP(s))?;
            let coef = BoundExpr::pow2(ri((1i64 << (s - 2)) + 1));
            let v_exact = BoundExpr::int(2) * h3 + coef.clone() * hk.clone();
            let v_bound = BoundExpr::int(2) * ub + coef * ua.clone();
            psu = vec![
                ChainStep {
                    name: "exact",
                    value: m.clone() - v_exact + one(),
                },
                ChainStep {
                    name: "class numbers bounded",
                    value: m - v_bound.clone() + one(),
                },
                ChainStep {
                    name: "mass bounded",
                    value: ml - v_bound + one(),
                },
            ];
            extra = [hk + hp, ua.clone() + uc.clone(), ua + uc];
        }
        Family::ThreePow2 => {
            let hk = inputs.h(FieldFamily::K3Pow2(s));
            let hu = inputs.h(FieldFamily::SqrtMinusUPlus(s));
            let ua = hminus_upper(FieldFamily::K3Pow2(s))?;
            let ub = hminus_upper(FieldFamily::SqrtMinusUPlus(s))?;
            let t = 1i64 << (s - 2);
            let v = BoundExpr::pow2(ri(2 * t - si + 1)) + BoundExpr::pow2(ri(2 * t));
            let vr_exact = BoundExpr::int(2) * hk.clone() + hu;
            psu = vec![
                ChainStep {
                    name: "exact",
                    value: m - v.clone() * hk.clone() + one(),
                },
                ChainStep {
                    name: "mass bounded",
                    value: ml.clone() - v.clone() * hk + one(),
                },
                ChainStep {
                    name: "class numbers bounded",
                    value: ml - v * ua.clone() + one(),
                },
            ];
            extra = [vr_exact.clone(), vr_exact, BoundExpr::int(2) * ua + ub];
        }
    }
    let mut steps = match group {
        Group::Psu => psu,
        Group::Pu => psu
            .into_iter()
            .zip(extra)
            .map(|(st, sub)| ChainStep {
                name: st.name,
                value: half(st.value - sub + one()),
            })
            .collect(),
    };
    steps.push(ChainStep {
        name: "closed form",
        value: genus_lower(s, family, group)?,
    });
    Ok(GenusChain {
        family,
        s,
        group,
        steps,
    })
}

/// Builds the chain, computing exact inputs.
pub fn genus_chain(s: u32, family: Family, group: Group) -> Result<GenusChain> {
    genus_chain_with(&ExactInputs::compute(s, family)?, group)
}

/// Smallest s from which the closed-form genus bound is asserted to
/// exceed 1.
pub fn closed_form_threshold(family: Family) -> u32 {
    match family {
        Family::Pow2 => 6,
        Family::ThreePow2 => 7,
    }
}

/// Smallest s from which the exact chain start is asserted to exceed 1;
/// below it the reference constants stand in.
pub fn exact_threshold(family: Family) -> u32 {
    match family {
        Family::Pow2 => 6,
        Family::ThreePow2 => 5,
    }
}

/// Known genera of gr_n and ḡr_n used as reference constants:
/// (group, s, genus).
pub fn reference_constants(family: Family) -> &'static [(Group, u32, u64)] {
    match family {
        Family::Pow2 => &[(Group::Psu, 5, 40), (Group::Pu, 5, 16)],
        Family::ThreePow2 => &[(Group::Psu, 4, 20), (Group::Pu, 4, 8)],
    }
}

impl GenusChain {
    /// Step comparisons and threshold rows.
    pub fn rows(&self) -> Vec<BoundRow> {
        let (f, s, g) = (self.family, self.s, self.group.tag());
        let mut out = Vec::new();
        for (i, w) in self.steps.windows(2).enumerate() {
            out.push(row(
                f,
                s,
                &format!("genus_{g}.step{}", i + 1),
                &w[0].value,
                Relation::Ge,
                &w[1].value,
                true,
                &format!("{} vs {}", w[0].name, w[1].name),
            ));
        }
        let one = BoundExpr::int(1);
        let last = &self.steps.last().expect("chains are nonempty").value;
        out.push(row(
            f,
            s,
            &format!("genus_{g}.closed_form>1"),
            last,
            Relation::Gt,
            &one,
            s >= closed_form_threshold(f),
            "closed form",
        ));
        out.push(row(
            f,
            s,
            &format!("genus_{g}.exact>1"),
            &self.steps[0].value,
            Relation::Gt,
            &one,
            s >= exact_threshold(f),
            "exact class numbers and mass",
        ));
        out
    }
}

/// Structural upper bounds on v_{<1}, e_h or v_r and v₁, instantiated with
/// exact class numbers and with the closed-form class-number bounds.
pub fn structural_upper_bounds(s: u32, family: Family) -> Result<Vec<BoundRow>> {
    check_chain_range(s, family)?;
    let exact = if s <= EXACT_MAX_S {
        Some(ExactInputs::compute(s, family)?)
    } else {
        None
    };
    structural_rows(s, family, exact.as_ref())
}

fn structural_rows(s: u32, family: Family, exact: Option<&ExactInputs>) -> Result<Vec<BoundRow>> {
    let mut out = Vec::new();
    let si = s as i64;
    let fam_h = |f: FieldFamily| -> Result<(BoundExpr, &'static str)> {
        match exact {
            Some(e) => Ok((e.h(f), "exact h_minus")),
            None => Ok((hminus_upper(f)?, "h_minus upper bound")),
        }
    };
    let push = |out: &mut Vec<BoundRow>, name: &str, value: BoundExpr, prov: &str| {
        out.push(BoundRow {
            family: family.cli_name().to_string(),
            s,
            name: name.to_string(),
            lhs: name.to_string(),
            relation: Relation::Le,
            rhs: value.value_string(),
            verdict: Verdict::Info,
            provenance: prov.to_string(),
        });
    };
    match family {
        Family::Pow2 => {
            let (hk, p1) = fam_h(FieldFamily::KPow2(s))?;
            let (h3, _) = fam_h(FieldFamily::SqrtMinus3(s))?;
            let (hp, _) = fam_h(FieldFamily::SqrtMinusP(s))?;
            let coef = BoundExpr::pow2(ri((1i64 << (s - 2)) + 1));
            push(
                &mut out,
                "v_lt1(gr)",
                BoundExpr::int(2) * h3 + coef * hk.clone(),
                p1,
            );
            push(&mut out, "e_h(gr_bar)", hk + hp, p1);
        }
        Family::ThreePow2 => {
            let (hk, p1) = fam_h(FieldFamily::K3Pow2(s))?;
            let (hu, _) = fam_h(FieldFamily::SqrtMinusUPlus(s))?;
            let t = 1i64 << (s - 2);
            let v = BoundExpr::pow2(ri(2 * t - si + 1)) + BoundExpr::pow2(ri(2 * t));
            push(&mut out, "v_lt1(gr)", v * hk.clone(), p1);
            push(&mut out, "v_r(gr/gr_bar)", BoundExpr::int(2) * hk + hu, p1);
        }
    }
    let m = match exact {
        Some(e) => e.mass.clone(),
        None => mass(family.n(s))?,
    };
    push(
        &mut out,
        "v_1(gr)",
        BoundExpr::rational(m * ri(2)),
        "exact mass",
    );
    Ok(out)
}

/// All rows for one family and s.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    /// Family name.
    pub family: String,
    /// Parameter s.
    pub s: u32,
    /// Rows sorted by name.
    pub rows: Vec<BoundRow>,
}

impl BoundReport {
    /// Whether any row fails.
    pub fn has_failures(&self) -> bool {
        self.rows.iter().any(|r| r.verdict == Verdict::Fails)
    }
}

/// Full report: class-number bounds, mass bound, structural bounds, both
/// genus chains, the genus upper bound and reference constants.
pub fn bound_report(s: u32, family: Family) -> Result<BoundReport> {
    check_chain_range(s, family)?;
    if s > EXACT_MAX_S {
        return invalid(format!("reports need s ≤ {EXACT_MAX_S}"));
    }
    let inputs = ExactInputs::compute(s, family)?;
    let mut rows = Vec::new();
    for (f, h) in &inputs.h_minus {
        rows.push(row(
            family,
            s,
            &format!("h_minus[{}]<=upper", f.cli_name()),
            &BoundExpr::int(h.clone()),
            Relation::Le,
            &hminus_upper(*f)?,
            true,
            "exact h_minus vs closed-form bound",
        ));
    }
    let m = BoundExpr::rational(inputs.mass.clone());
    rows.push(row(
        family,
        s,
        "mass>lower",
        &m,
        Relation::Gt,
        &mass_lower(s, family)?,
        true,
        "exact mass vs lower bound",
    ));
    rows.extend(structural_rows(s, family, Some(&inputs))?);
    let upper = genus_upper(family.n(s))?;
    for group in [Group::Psu, Group::Pu] {
        let chain = genus_chain_with(&inputs, group)?;
        rows.extend(chain.rows());
        rows.push(row(
            family,
            s,
            &format!("genus_{}.lower<=upper", group.tag()),
            &chain.steps[0].value,
            Relation::Le,
            &upper,
            true,
            "exact chain start vs 24nM",
        ));
    }
    for &(group, rs, g) in reference_constants(family) {
        if rs == s {
            let name = match group {
                Group::Psu => "genus_gr",
                Group::Pu => "genus_gr_bar",
            };
            rows.push(row(
                family,
                s,
                &format!("reference.{name}<=upper"),
                &BoundExpr::int(g),
                Relation::Le,
                &upper,
                true,
                "reference constant vs 24nM",
            ));
        }
    }
    rows.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(BoundReport {
        family: family.cli_name().to_string(),
        s,
        rows,
    })
}

/// Ramanujan sum c_n(k) = Tr_{ℚ(ζ_n)/ℚ}(ζ_n^k).
pub fn ramanujan_sum(n: u64, k: u64) -> i64 {
    let g = num_integer::gcd(n, k);
    crate::util::divisors(g)
        .into_iter()
        .map(|d| mobius(n / d) as i64 * d as i64)
        .sum()
}

/// Discriminant of the real subfield of ℚ(ζ_n), from the trace form on the
/// basis 1, ζ^i + ζ^{−i}.
#[allow(clippy::needless_range_loop)]
pub fn real_subfield_discriminant(n: u64) -> BigInt {
    let d = (euler_phi(n) / 2).max(1) as usize;
    let tr = |k: u64| BigInt::from(ramanujan_sum(n, k % n));
    let mut g = vec![vec![BigInt::zero(); d]; d];
    for i in 0..d {
        for j in 0..d {
            g[i][j] = match (i, j) {
                (0, 0) => BigInt::from(d),
                (0, j) => tr(j as u64),
                (i, 0) => tr(i as u64),
                (i, j) => tr((i + j) as u64) + tr(i.abs_diff(j) as u64),
            };
        }
    }
    bareiss_det(g)
}

/// Closed form of the real-subfield discriminant in either family.
pub fn discriminant_closed_form(s: u32, family: Family) -> BigInt {
    match family {
        Family::Pow2 => pow2(((s as u64 - 1) << (s - 2)) - 1),
        Family::ThreePow2 => pow2((s as u64 - 1) << (s - 1)) * BigInt::from(3).pow(1u32 << (s - 2)),
    }
}

/// Rounds up to the integer; used for reporting integral genus bounds.
pub fn ceil_rational(q: &BigRational) -> BigInt {
    let (d, r) = q.numer().div_mod_floor(q.denom());
    if r.is_zero() {
        d
    } else {
        d + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_evaluation() {
        let e = hminus_upper(FieldFamily::KPow2(6)).unwrap();
        assert_eq!(e.exact().unwrap(), rat(4194304, 6561));
        let iv = e.eval(64);
        assert!((iv.mid_f64() - 639.28).abs() < 0.01);
        assert_eq!(BoundExpr::pow2(rat(1, 2)).exact(), None);
        let r2 = BoundExpr::pow2(rat(1, 2)).eval(100);
        assert!((r2.mid_f64() - 2f64.sqrt()).abs() < 1e-15);
        let p = BoundExpr::pow_pi(ri(2)).eval(100);
        assert!((p.mid_f64() - std::f64::consts::PI.powi(2)).abs() < 1e-12);
        let c = BoundExpr::pow3(rat(-3, 2)).eval(100);
        assert!((c.mid_f64() - 3f64.powf(-1.5)).abs() < 1e-15);
    }

    #[test]
    fn comparisons() {
        let a = BoundExpr::pow2(rat(1, 2));
        assert_eq!(
            compare(&a, &BoundExpr::rational(rat(141, 100))),
            Comparison::Decided(Ordering::Greater)
        );
        assert_eq!(
            compare(&a, &BoundExpr::rational(rat(142, 100))),
            Comparison::Decided(Ordering::Less)
        );
        let sq = a.clone() * a;
        assert_eq!(compare(&sq, &BoundExpr::int(2)), Comparison::Undecided);
        assert_eq!(
            compare(&BoundExpr::int(3), &BoundExpr::int(3)),
            Comparison::Decided(Ordering::Equal)
        );
    }

    #[test]
    fn small_bounds_dominate() {
        assert_eq!(
            compare(
                &BoundExpr::int(1),
                &hminus_upper(FieldFamily::KPow2(4)).unwrap()
            ),
            Comparison::Decided(Ordering::Less)
        );
        assert_ne!(
            compare(
                &BoundExpr::int(9),
                &hminus_upper(FieldFamily::K3Pow2(5)).unwrap()
            ),
            Comparison::Decided(Ordering::Greater)
        );
        let ml = mass_lower(3, Family::Pow2).unwrap();
        assert_eq!(
            compare(&ml, &BoundExpr::rational(rat(1, 24))),
            Comparison::Decided(Ordering::Less)
        );
        assert_eq!(
            mass_lower(3, Family::ThreePow2).unwrap().exact().unwrap(),
            rat(1, 32)
        );
        assert!(hminus_upper(FieldFamily::KPow2(2)).is_err());
    }

    #[test]
    fn genus_upper_references() {
        assert!(genus_upper(32).unwrap().exact().unwrap() >= ri(40));
        assert!(genus_upper(48).unwrap().exact().unwrap() >= ri(20));
        assert!(genus_upper(10).is_err());
    }

    #[test]
    fn discriminants() {
        for s in 3..=6 {
            assert_eq!(
                real_subfield_discriminant(1 << s),
                discriminant_closed_form(s, Family::Pow2),
                "2^{s}"
            );
        }
        for s in 2..=5 {
            assert_eq!(
                real_subfield_discriminant(3 << s),
                discriminant_closed_form(s, Family::ThreePow2),
                "3·2^{s}"
            );
        }
        assert_eq!(real_subfield_discriminant(5), BigInt::from(5));
    }

    #[test]
    fn chain_thresholds() {
        assert!(
            compare(
                &genus_lower(6, Family::Pow2, Group::Psu).unwrap(),
                &BoundExpr::int(1)
            ) == Comparison::Decided(Ordering::Greater)
        );
        assert!(
            compare(
                &genus_lower(7, Family::ThreePow2, Group::Pu).unwrap(),
                &BoundExpr::int(1)
            ) == Comparison::Decided(Ordering::Greater)
        );
        assert!(genus_lower(3, Family::Pow2, Group::Psu).is_err());
    }

    #[test]
    fn reports_hold() {
        for s in 4..=7 {
            let r = bound_report(s, Family::Pow2).unwrap();
            for row in &r.rows {
                assert_ne!(row.verdict, Verdict::Fails, "{row:?}");
                assert_ne!(row.verdict, Verdict::Undecided, "{row:?}");
            }
        }
        for s in 3..=6 {
            let r = bound_report(s, Family::ThreePow2).unwrap();
            for row in &r.rows {
                assert_ne!(row.verdict, Verdict::Fails, "{row:?}");
                assert_ne!(row.verdict, Verdict::Undecided, "{row:?}");
            }
        }
    }
}

//! Discrete spectrum of the restriction `O(p, q) -> O(p', q') x O(p'', q'')`.
//!
//! For `lambda` in `A_+(p, q)` the discrete summands are
//! `pi^{p',q'}_{delta,lambda'} (x) pi^{p'',q''}_{eps,lambda''}` with
//! `(delta, eps)` one of `-+`, `++`, `+-` and `(lambda', lambda'')` in the
//! parameter set `Lambda_{delta eps}(lambda)`. The `++` set is finite; the
//! other two are either empty or infinite, so every enumeration takes a
//! [`Budget`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::HalfInt;
use crate::repparams::{a_contains, a_enumerate, a_plus_contains, a_plus_min, RepParam, Sign, SplitSignature};

/// Which of the three parameter sets a summand comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LambdaKind {
    #[serde(rename = "-+")]
    MinusPlus,
    #[serde(rename = "++")]
    PlusPlus,
    #[serde(rename = "+-")]
    PlusMinus,
}

impl LambdaKind {
    pub const ALL: [LambdaKind; 3] = [LambdaKind::MinusPlus, LambdaKind::PlusPlus, LambdaKind::PlusMinus];

    /// The pair `(delta, eps)`.
    pub fn signs(self) -> (Sign, Sign) {
        match self {
            LambdaKind::MinusPlus => (Sign::Minus, Sign::Plus),
            LambdaKind::PlusPlus => (Sign::Plus, Sign::Plus),
            LambdaKind::PlusMinus => (Sign::Plus, Sign::Minus),
        }
    }

    pub fn from_signs(delta: Sign, eps: Sign) -> Option<LambdaKind> {
        match (delta, eps) {
            (Sign::Minus, Sign::Plus) => Some(LambdaKind::MinusPlus),
            (Sign::Plus, Sign::Plus) => Some(LambdaKind::PlusPlus),
            (Sign::Plus, Sign::Minus) => Some(LambdaKind::PlusMinus),
            (Sign::Minus, Sign::Minus) => None,
        }
    }

    /// The linear quantity that must lie in `2N` for membership.
    pub fn defect(self, lambda: HalfInt, l1: HalfInt, l2: HalfInt) -> HalfInt {
        let one = HalfInt::ONE;
        match self {
            LambdaKind::MinusPlus => l2 - lambda - l1 - one,
            LambdaKind::PlusPlus => lambda - l1 - l2 - one,
            LambdaKind::PlusMinus => l1 - l2 - lambda - one,
        }
    }
}

impl fmt::Display for LambdaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (d, e) = self.signs();
        write!(f, "{d}{e}")
    }
}

impl std::str::FromStr for LambdaKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "-+" => Ok(LambdaKind::MinusPlus),
            "++" => Ok(LambdaKind::PlusPlus),
            "+-" => Ok(LambdaKind::PlusMinus),
            other => Err(Error::invalid(format!("unknown kind {other:?}"))),
        }
    }
}

/// Enumeration limits: keep members with `lambda' + lambda'' <= total_max`,
/// and at most `max_count` of them per kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_count: usize,
    pub total_max: HalfInt,
}

impl Budget {
    pub fn new(max_count: usize, total_max: HalfInt) -> Self {
        Budget { max_count, total_max }
    }
}

/// One irreducible summand `pi_{delta,lambda1} (x) pi_{eps,lambda2}` of a restriction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Summand {
    pub delta: Sign,
    pub eps: Sign,
    pub lambda1: HalfInt,
    pub lambda2: HalfInt,
}

impl Summand {
    pub fn kind(&self) -> Option<LambdaKind> {
        LambdaKind::from_signs(self.delta, self.eps)
    }

    /// Whether `delta lambda1 + eps lambda2 - lambda` is an odd integer.
    pub fn satisfies_parity(&self, lambda: HalfInt) -> bool {
        let signed = |s: Sign, x: HalfInt| if s == Sign::Plus { x } else { -x };
        (signed(self.delta, self.lambda1) + signed(self.eps, self.lambda2) - lambda).is_odd_integer()
    }

    /// When one factor is `O(1)`, the exponent `n` of the sign character in
    /// `pi_{lambda +- (n + 1/2)} (x) sgn^n`.
    ///
    /// The parameter `lambda_small = -1/2` stands for the trivial character and
    /// `+1/2` for `sgn`; `n` is recovered from the offset of the other parameter.
    pub fn sign_character_power(&self, split: &SplitSignature, lambda: HalfInt) -> Option<u64> {
        let is_o1 = |p: u32, q: u32| (p, q) == (1, 0) || (p, q) == (0, 1);
        let big = if is_o1(split.p2(), split.q2()) {
            self.lambda1
        } else if is_o1(split.p1(), split.q1()) {
            self.lambda2
        } else {
            return None;
        };
        let offset = (big - lambda).abs() - HalfInt::HALF;
        offset.as_integer().filter(|n| *n >= 0).map(|n| n as u64)
    }
}

fn check_lambda(split: &SplitSignature, lambda: HalfInt) -> Result<()> {
    let (p, q) = split.join();
    if !a_plus_contains(p, q, lambda) {
        return Err(Error::NotAdmissible {
            p,
            q,
            eps: '+',
            lambda: lambda.to_string(),
        });
    }
    Ok(())
}

/// Membership of `(l1, l2)` in `Lambda_kind(lambda)` for the given split.
pub fn lambda_set_contains(
    kind: LambdaKind,
    split: &SplitSignature,
    lambda: HalfInt,
    l1: HalfInt,
    l2: HalfInt,
) -> Result<bool> {
    check_lambda(split, lambda)?;
    let (delta, eps) = kind.signs();
    Ok(a_contains(delta, split.p1(), split.q1(), l1)
        && a_contains(eps, split.p2(), split.q2(), l2)
        && kind.defect(lambda, l1, l2).in_two_n())
}

fn a_min(eps: Sign, p: u32, q: u32) -> Option<HalfInt> {
    match eps {
        Sign::Plus => a_plus_min(p, q),
        Sign::Minus => a_plus_min(q, p),
    }
}

/// Members of `Lambda_kind(lambda)` within `budget`, ordered by increasing
/// `l1 + l2` and then by increasing `l2`.
pub fn lambda_set_enumerate(
    kind: LambdaKind,
    split: &SplitSignature,
    lambda: HalfInt,
    budget: Budget,
) -> Result<Vec<(HalfInt, HalfInt)>> {
    check_lambda(split, lambda)?;
    let (delta, eps) = kind.signs();
    let (Some(min1), Some(min2)) = (
        a_min(delta, split.p1(), split.q1()),
        a_min(eps, split.p2(), split.q2()),
    ) else {
        return Ok(Vec::new());
    };
    let first = a_enumerate(delta, split.p1(), split.q1(), budget.total_max - min2);
    let second = a_enumerate(eps, split.p2(), split.q2(), budget.total_max - min1);
    let mut out = Vec::new();
    for &l1 in &first {
        for &l2 in &second {
            if l1 + l2 > budget.total_max {
                break;
            }
            if kind.defect(lambda, l1, l2).in_two_n() {
                out.push((l1, l2));
            }
        }
    }
    out.sort_by_key(|&(l1, l2)| (l1 + l2, l2));
    out.truncate(budget.max_count);
    Ok(out)
}

/// Discrete summands of `rep` restricted to the subgroup given by `split`,
/// listed kind by kind in the order `-+`, `++`, `+-`.
///
/// For `eps = -` the computation runs on `pi^{q,p}_{+,lambda}` with the split
/// reversed, and the signs of each summand are flipped back.
pub fn branch_discrete(rep: &RepParam, split: &SplitSignature, budget: Budget) -> Result<Vec<Summand>> {
    if split.join() != (rep.p(), rep.q()) {
        return Err(Error::SplitMismatch(format!(
            "{split} does not join to ({}, {})",
            rep.p(),
            rep.q()
        )));
    }
    let (work_split, flip) = match rep.eps() {
        Sign::Plus => (*split, false),
        Sign::Minus => (split.swapped(), true),
    };
    let lambda = rep.lambda();
    let mut out = Vec::new();
    for kind in LambdaKind::ALL {
        let (delta, eps) = kind.signs();
        for (l1, l2) in lambda_set_enumerate(kind, &work_split, lambda, budget)? {
            let (delta, eps) = if flip { (delta.flip(), eps.flip()) } else { (delta, eps) };
            out.push(Summand {
                delta,
                eps,
                lambda1: l1,
                lambda2: l2,
            });
        }
    }
    Ok(out)
}

/// Multiplicity of `candidate` in the restriction: 1 for members, 0 otherwise.
pub fn multiplicity(rep: &RepParam, split: &SplitSignature, candidate: &Summand) -> u32 {
    if split.join() != (rep.p(), rep.q()) {
        return 0;
    }
    let (split, delta, eps) = match rep.eps() {
        Sign::Plus => (*split, candidate.delta, candidate.eps),
        Sign::Minus => (split.swapped(), candidate.delta.flip(), candidate.eps.flip()),
    };
    let Some(kind) = LambdaKind::from_signs(delta, eps) else {
        return 0;
    };
    match lambda_set_contains(kind, &split, rep.lambda(), candidate.lambda1, candidate.lambda2) {
        Ok(true) => 1,
        _ => 0,
    }
}

/// Qualitative behaviour of the restriction for a given split, independent of `lambda`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralClass {
    /// No discrete summands for any `lambda`.
    pub purely_continuous: bool,
    /// At most finitely many discrete summands for every `lambda`.
    pub finite_discrete: bool,
    /// The restriction decomposes discretely.
    pub discretely_decomposable: bool,
    /// `Lambda_{-+} union Lambda_{+-}` is infinite.
    pub lambda_union_infinite: bool,
}

fn check_basic(split: &SplitSignature) -> Result<()> {
    let (p, q) = split.join();
    if p < 2 || q < 1 {
        return Err(Error::DegenerateSplit(format!(
            "classification needs p >= 2 and q >= 1, got ({p}, {q})"
        )));
    }
    Ok(())
}

/// Whether `Lambda_{-+}(lambda) union Lambda_{+-}(lambda)` is infinite.
pub fn lambda_union_infinite(split: &SplitSignature) -> Result<bool> {
    check_basic(split)?;
    let (p1, q1, p2, q2) = (split.p1(), split.q1(), split.p2(), split.q2());
    Ok(p1 * p2 == 0 || p2.min(q1) >= 2 || p1.min(q2) >= 2)
}

pub fn classify_split(split: &SplitSignature) -> Result<SpectralClass> {
    check_basic(split)?;
    let (p1, q1, p2, q2) = (split.p1(), split.q1(), split.p2(), split.q2());
    Ok(SpectralClass {
        purely_continuous: (p1, p2) == (1, 1) || (p1, q1) == (1, 1) || (p2, q2) == (1, 1),
        finite_discrete: p1 * p2 > 0 && p2.min(q1) <= 1 && p1.min(q2) <= 1,
        discretely_decomposable: p1 == 0 || p2 == 0,
        lambda_union_infinite: lambda_union_infinite(split)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn h(s: &str) -> HalfInt {
        s.parse().unwrap()
    }

    fn split(p1: u32, q1: u32, p2: u32, q2: u32) -> SplitSignature {
        SplitSignature::new(p1, q1, p2, q2).unwrap()
    }

    #[test]
    fn membership_examples() {
        // A_+(1, 1) is empty, so nothing with (p'', q'') = (1, 1) is a member
        let s = split(2, 1, 1, 1);
        assert!(!lambda_set_contains(LambdaKind::PlusPlus, &s, h("5/2"), h("1/2"), h("1")).unwrap());
        assert!(lambda_set_contains(LambdaKind::PlusPlus, &s, h("3"), h("1/2"), h("1")).is_err());
        let s = split(2, 1, 2, 1);
        assert!(lambda_set_contains(LambdaKind::PlusPlus, &s, h("3"), h("1/2"), h("3/2")).unwrap());
        assert!(!lambda_set_contains(LambdaKind::PlusPlus, &s, h("3"), h("1/2"), h("1/2")).unwrap());
        // odd defect
        let s = split(3, 1, 1, 2);
        assert!(!lambda_set_contains(LambdaKind::PlusMinus, &s, h("1/2"), h("3"), h("1/2")).unwrap());
        assert!(lambda_set_contains(LambdaKind::PlusMinus, &s, h("1/2"), h("2"), h("1/2")).unwrap());
        // A_-(p', q') gate
        let s = split(3, 0, 1, 2);
        assert!(!lambda_set_contains(LambdaKind::MinusPlus, &s, h("1"), h("1"), h("3")).unwrap());
    }

    #[test]
    fn plus_plus_empty_for_small_lambda() {
        let b = Budget::new(1000, h("40"));
        for s in [split(2, 2, 2, 2), split(2, 1, 3, 2), split(3, 0, 2, 1), split(4, 0, 3, 1)] {
            let (p, q) = s.join();
            for lambda in a_enumerate(Sign::Plus, p, q, h("13/2")) {
                let members = lambda_set_enumerate(LambdaKind::PlusPlus, &s, lambda, b).unwrap();
                if lambda < h("2") {
                    assert!(members.is_empty(), "{s} {lambda}");
                }
                if lambda > h("2") {
                    assert!(!members.is_empty(), "{s} {lambda}");
                }
            }
        }
        // A_+(2, 0) contains 0, which lets lambda = 3/2 through
        let s = split(2, 0, 2, 1);
        assert_eq!(
            lambda_set_enumerate(LambdaKind::PlusPlus, &s, h("3/2"), b).unwrap(),
            vec![(h("0"), h("1/2"))]
        );
    }

    #[test]
    fn plus_plus_is_finite() {
        let s = split(3, 2, 2, 2);
        let lambda = h("13/2");
        let at = |t: &str| lambda_set_enumerate(LambdaKind::PlusPlus, &s, lambda, Budget::new(10_000, h(t))).unwrap();
        let full = at("13/2");
        assert!(!full.is_empty());
        assert_eq!(full, at("30"));
        assert_eq!(full, at("60"));
    }

    #[test]
    fn plus_minus_hits_budget() {
        let s = split(2, 1, 1, 2);
        let members =
            lambda_set_enumerate(LambdaKind::PlusMinus, &s, h("2"), Budget::new(25, h("200"))).unwrap();
        assert_eq!(members.len(), 25);
        let keys: Vec<_> = members.iter().map(|&(a, b)| (a + b, b)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn first_factor_trivial_sign_family() {
        // (p'', q'') = (0, 1): pi^{p,q-1}_{+, lambda + n + 1/2} (x) sgn^n for all n
        for (p, q) in [(3u32, 2u32), (4, 3), (2, 2)] {
            let s = SplitSignature::from_total(p, q, p, q - 1).unwrap();
            for lambda in a_enumerate(Sign::Plus, p, q, h("13/2")) {
                let rep = RepParam::new(p, q, Sign::Plus, lambda).unwrap();
                let got = branch_discrete(&rep, &s, Budget::new(8, lambda.plus_int(20))).unwrap();
                let mut expected: Vec<Summand> = (0..40i64)
                    .map(|n| Summand {
                        delta: Sign::Plus,
                        eps: Sign::Minus,
                        lambda1: lambda + HalfInt::from_twice(2 * n + 1),
                        lambda2: if n % 2 == 0 { h("-1/2") } else { h("1/2") },
                    })
                    .collect();
                expected.sort_by_key(|s| (s.lambda1 + s.lambda2, s.lambda2));
                expected.truncate(8);
                assert_eq!(got, expected, "p={p} q={q} lambda={lambda}");
                for summand in &got {
                    let n = summand.sign_character_power(&s, lambda).unwrap();
                    assert_eq!(summand.lambda1, lambda + HalfInt::from_twice(2 * n as i64 + 1));
                }
            }
        }
    }

    #[test]
    fn second_factor_o1_finite_family() {
        // (p'', q'') = (1, 0): pi^{p-1,q}_{+, lambda - n - 1/2} (x) sgn^n for 0 <= n < lambda - 1/2
        for (p, q) in [(3u32, 2u32), (4, 2), (5, 3)] {
            let s = SplitSignature::from_total(p, q, p - 1, q).unwrap();
            for lambda in a_enumerate(Sign::Plus, p, q, h("13/2")) {
                let rep = RepParam::new(p, q, Sign::Plus, lambda).unwrap();
                let got = branch_discrete(&rep, &s, Budget::new(100, lambda.plus_int(20))).unwrap();
                let mut expected: Vec<Summand> = (0..)
                    .map(|n: i64| HalfInt::from_twice(2 * n + 1))
                    .take_while(|&off| off < lambda)
                    .enumerate()
                    .map(|(n, off)| Summand {
                        delta: Sign::Plus,
                        eps: Sign::Plus,
                        lambda1: lambda - off,
                        lambda2: if n % 2 == 0 { h("-1/2") } else { h("1/2") },
                    })
                    .collect();
                expected.sort_by_key(|s| (s.lambda1 + s.lambda2, s.lambda2));
                assert_eq!(got, expected, "p={p} q={q} lambda={lambda}");
            }
        }
    }

    #[test]
    fn minus_sign_reduces_by_swapping() {
        let s = split(2, 1, 1, 2);
        let plus = RepParam::new(3, 3, Sign::Plus, h("2")).unwrap();
        let minus = RepParam::new(3, 3, Sign::Minus, h("2")).unwrap();
        let b = Budget::new(10, h("20"));
        let from_plus = branch_discrete(&plus, &s.swapped(), b).unwrap();
        let from_minus = branch_discrete(&minus, &s, b).unwrap();
        assert_eq!(from_plus.len(), from_minus.len());
        for (a, m) in from_plus.iter().zip(&from_minus) {
            assert_eq!((a.delta.flip(), a.eps.flip()), (m.delta, m.eps));
            assert_eq!((a.lambda1, a.lambda2), (m.lambda1, m.lambda2));
            assert_eq!(multiplicity(&minus, &s, m), 1);
        }
    }

    #[test]
    fn multiplicity_examples() {
        let s = split(2, 1, 2, 1);
        let rep = RepParam::new(4, 2, Sign::Plus, h("3")).unwrap();
        let member = Summand { delta: Sign::Plus, eps: Sign::Plus, lambda1: h("1/2"), lambda2: h("3/2") };
        assert_eq!(multiplicity(&rep, &s, &member), 1);
        let non_member = Summand { lambda2: h("1/2"), ..member };
        assert_eq!(multiplicity(&rep, &s, &non_member), 0);
        let odd = Summand { delta: Sign::Plus, eps: Sign::Plus, lambda1: h("1/2"), lambda2: h("5/2") };
        assert!(!odd.satisfies_parity(h("3")));
        assert_eq!(multiplicity(&rep, &s, &odd), 0);
        let mm = Summand { delta: Sign::Minus, eps: Sign::Minus, ..member };
        assert_eq!(multiplicity(&rep, &s, &mm), 0);
    }

    #[test]
    fn classification_examples() {
        assert!(classify_split(&split(1, 1, 1, 2)).unwrap().purely_continuous);
        let c = classify_split(&split(0, 2, 4, 1)).unwrap();
        assert!(c.discretely_decomposable && c.lambda_union_infinite && !c.finite_discrete);
        assert!(!classify_split(&split(2, 1, 2, 2)).unwrap().finite_discrete);
        assert!(lambda_union_infinite(&split(3, 1, 0, 2)).unwrap());
        assert!(lambda_union_infinite(&split(2, 0, 1, 2)).unwrap());
        assert!(!lambda_union_infinite(&split(1, 5, 1, 5)).unwrap());
        assert!(classify_split(&split(1, 0, 0, 1)).is_err());
        assert!(SplitSignature::new(0, 0, 3, 2).is_err());
    }

    #[test]
    fn summand_json_shape() {
        let s = Summand { delta: Sign::Minus, eps: Sign::Plus, lambda1: h("1/2"), lambda2: h("3") };
        assert_eq!(
            serde_json::to_string(&s).unwrap(),
            r#"{"delta":"-","eps":"+","lambda1":"1/2","lambda2":"3"}"#
        );
    }

    fn rep_and_split() -> impl Strategy<Value = (RepParam, SplitSignature)> {
        (2u32..6, 1u32..4, 0u32..6, 0u32..4, 0i64..6).prop_filter_map("valid", |(p, q, p1, q1, k)| {
            if p1 > p || q1 > q || p + q > 8 {
                return None;
            }
            let s = SplitSignature::from_total(p, q, p1, q1).ok()?;
            let lambda = a_plus_min(p, q)?.plus_int(k);
            Some((RepParam::new(p, q, Sign::Plus, lambda).ok()?, s))
        })
    }

    proptest! {
        #[test]
        fn summands_are_distinct_members_with_parity((rep, s) in rep_and_split(), count in 1usize..50) {
            let b = Budget::new(count, rep.lambda().plus_int(25));
            let summands = branch_discrete(&rep, &s, b).unwrap();
            let set: std::collections::HashSet<_> = summands.iter().collect();
            prop_assert_eq!(set.len(), summands.len());
            for sm in &summands {
                prop_assert!(sm.satisfies_parity(rep.lambda()));
                prop_assert_eq!(multiplicity(&rep, &s, sm), 1);
                let l1 = RepParam::new(s.p1(), s.q1(), sm.delta, sm.lambda1).unwrap();
                let l2 = RepParam::new(s.p2(), s.q2(), sm.eps, sm.lambda2).unwrap();
                let prod = if l1.central_sign() == l2.central_sign() { Sign::Plus } else { Sign::Minus };
                prop_assert_eq!(prod, rep.central_sign());
            }
        }

        #[test]
        fn purely_continuous_means_empty((rep, s) in rep_and_split()) {
            if let Ok(class) = classify_split(&s) {
                if class.purely_continuous {
                    let b = Budget::new(50, rep.lambda().plus_int(25));
                    prop_assert!(branch_discrete(&rep, &s, b).unwrap().is_empty());
                }
                prop_assert_eq!(
                    class.finite_discrete,
                    !class.lambda_union_infinite && s.p1() * s.p2() > 0
                );
            }
        }
    }
}

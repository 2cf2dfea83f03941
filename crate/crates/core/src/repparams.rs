//! Parameters of the discrete series `pi^{p,q}_{eps,lambda}` of `O(p, q)`.
//!
//! A representation is labelled by a signature `(p, q)`, a sign `eps` and a
//! half-integer `lambda` from the admissible set `A_eps(p, q)`. Representations
//! with `eps = -` are identified with `pi^{q,p}_{+,lambda}`; all metadata
//! below is computed on that normalised form.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::HalfInt;

/// A sign `+` or `-`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

impl std::str::FromStr for Sign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+" | "plus" | "+1" | "1" => Ok(Sign::Plus),
            "-" | "minus" | "-1" => Ok(Sign::Minus),
            other => Err(Error::invalid(format!("unknown sign {other:?}"))),
        }
    }
}

/// Membership in `A_+(p, q)`.
pub fn a_plus_contains(p: u32, q: u32, lambda: HalfInt) -> bool {
    let shift_odd = (p + q) % 2 == 1;
    let right_coset = lambda.is_half_odd() == shift_odd;
    match (p, q) {
        (0, _) => false,
        (1, 0) => lambda.twice().abs() == 1,
        (1, _) => false,
        (_, 0) => {
            right_coset && lambda.twice() >= i64::from(p) - 2
        }
        _ => right_coset && lambda.twice() > 0,
    }
}

/// Membership in `A_eps(p, q)`, where `A_-(p, q) = A_+(q, p)`.
pub fn a_contains(eps: Sign, p: u32, q: u32, lambda: HalfInt) -> bool {
    match eps {
        Sign::Plus => a_plus_contains(p, q, lambda),
        Sign::Minus => a_plus_contains(q, p, lambda),
    }
}

/// Smallest element of `A_+(p, q)`, if the set is nonempty.
pub fn a_plus_min(p: u32, q: u32) -> Option<HalfInt> {
    match (p, q) {
        (0, _) | (1, 1..) => None,
        (1, 0) => Some(HalfInt::from_twice(-1)),
        (_, 0) => Some(HalfInt::from_twice(i64::from(p) - 2)),
        _ => Some(if (p + q) % 2 == 1 {
            HalfInt::HALF
        } else {
            HalfInt::ONE
        }),
    }
}

/// Elements of `A_eps(p, q)` not exceeding `lambda_max`, in increasing order.
pub fn a_enumerate(eps: Sign, p: u32, q: u32, lambda_max: HalfInt) -> Vec<HalfInt> {
    let (p, q) = match eps {
        Sign::Plus => (p, q),
        Sign::Minus => (q, p),
    };
    let Some(start) = a_plus_min(p, q) else {
        return Vec::new();
    };
    if (p, q) == (1, 0) {
        return [HalfInt::from_twice(-1), HalfInt::HALF]
            .into_iter()
            .filter(|l| *l <= lambda_max)
            .collect();
    }
    let mut out = Vec::new();
    let mut l = start;
    while l <= lambda_max {
        out.push(l);
        l = l.plus_int(1);
    }
    out
}

/// A discrete series parameter `(p, q, eps, lambda)` with `lambda` in `A_eps(p, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawRepParam")]
pub struct RepParam {
    p: u32,
    q: u32,
    eps: Sign,
    lambda: HalfInt,
}

#[derive(Deserialize)]
struct RawRepParam {
    p: u32,
    q: u32,
    eps: Sign,
    lambda: HalfInt,
}

impl TryFrom<RawRepParam> for RepParam {
    type Error = Error;
    fn try_from(raw: RawRepParam) -> Result<Self> {
        RepParam::new(raw.p, raw.q, raw.eps, raw.lambda)
    }
}

impl RepParam {
    pub fn new(p: u32, q: u32, eps: Sign, lambda: HalfInt) -> Result<Self> {
        if !a_contains(eps, p, q, lambda) {
            return Err(Error::NotAdmissible {
                p,
                q,
                eps: eps.as_char(),
                lambda: lambda.to_string(),
            });
        }
        Ok(RepParam { p, q, eps, lambda })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn eps(&self) -> Sign {
        self.eps
    }

    pub fn lambda(&self) -> HalfInt {
        self.lambda
    }

    /// The same representation written with `eps = +`.
    pub fn normalized(&self) -> RepParam {
        match self.eps {
            Sign::Plus => *self,
            Sign::Minus => RepParam {
                p: self.q,
                q: self.p,
                eps: Sign::Plus,
                lambda: self.lambda,
            },
        }
    }

    /// `b = lambda - p/2 + q/2 + 1`, computed on the normalised form.
    pub fn b_param(&self) -> i64 {
        let n = self.normalized();
        let twice = n.lambda.twice() - i64::from(n.p) + i64::from(n.q) + 2;
        twice / 2
    }

    /// `delta = (-1)^b`.
    pub fn delta_sign(&self) -> Sign {
        if self.b_param().rem_euclid(2) == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    /// The scalar by which `-I` acts, `(-1)^(lambda - (p - q) eps / 2 + 1)`.
    pub fn central_sign(&self) -> Sign {
        let shift = (i64::from(self.p) - i64::from(self.q)) * self.eps.value();
        let twice = self.lambda.twice() - shift + 2;
        if (twice / 2).rem_euclid(2) == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    /// Harish-Chandra parameter of the infinitesimal character,
    /// `(lambda, (p+q)/2 - 2, (p+q)/2 - 3, ..., (p+q)/2 - [(p+q)/2])`.
    pub fn infinitesimal_character(&self) -> Vec<HalfInt> {
        let n = self.p + self.q;
        let rank = i64::from(n / 2);
        if rank == 0 {
            return Vec::new();
        }
        let half_n = HalfInt::from_twice(i64::from(n));
        let mut out = Vec::with_capacity(rank as usize);
        out.push(self.lambda);
        out.extend((2..=rank).map(|j| half_n.plus_int(-j)));
        out
    }

    /// Minimal `O(p) x O(q)`-type on the normalised form: `H^b(R^p) (x) 1` when
    /// `b >= 0` and the trivial type otherwise.
    pub fn minimal_ktype(&self) -> KType {
        let b = self.b_param();
        KType {
            m: b.max(0) as u32,
            n: 0,
        }
    }

    /// `K`-types `(m, n)` with `m, n <= m_max` and `m - n` in `b + 2N`.
    ///
    /// Degrees are capped at 1 on an `O(1)` factor. For compact `O(p)` the
    /// representation is the single harmonic space of degree `b`.
    pub fn ktype_support(&self, m_max: u32) -> Vec<KType> {
        let rep = self.normalized();
        let b = rep.b_param();
        if rep.q == 0 {
            let min = rep.minimal_ktype();
            return if min.m <= m_max { vec![min] } else { Vec::new() };
        }
        let cap = |dim: u32| match dim {
            0 => 0,
            1 => 1.min(m_max),
            _ => m_max,
        };
        let mut out = Vec::new();
        for m in 0..=cap(rep.p) {
            for n in 0..=cap(rep.q) {
                let d = i64::from(m) - i64::from(n) - b;
                if d >= 0 && d % 2 == 0 {
                    out.push(KType { m, n });
                }
            }
        }
        out
    }

    /// Gelfand-Kirillov dimension `p + q - 2`.
    pub fn gk_dimension(&self) -> Result<u32> {
        let n = self.p + self.q;
        if n < 2 {
            return Err(Error::invalid(format!(
                "Gelfand-Kirillov dimension needs p + q >= 2, got {n}"
            )));
        }
        Ok(n - 2)
    }
}

impl fmt::Display for RepParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "pi^({},{})_({},{})",
            self.p, self.q, self.eps, self.lambda
        )
    }
}

/// An irreducible `O(p) x O(q)`-type `H^m(R^p) (x) H^n(R^q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KType {
    pub m: u32,
    pub n: u32,
}

/// Dimension of the space of degree-`m` spherical harmonics on `R^p`.
pub fn dim_spherical_harmonics(m: u32, p: u32) -> Result<u64> {
    if p == 0 {
        return Err(Error::invalid("spherical harmonics need p >= 1"));
    }
    if p == 1 {
        return Ok(u64::from(m <= 1));
    }
    let top = binomial(u64::from(m) + u64::from(p) - 1, u64::from(p) - 1)?;
    let low = if m >= 2 {
        binomial(u64::from(m) + u64::from(p) - 3, u64::from(p) - 1)?
    } else {
        0
    };
    Ok(top - low)
}

fn binomial(n: u64, k: u64) -> Result<u64> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return Err(Error::invalid("binomial coefficient overflows u64"));
        }
    }
    Ok(acc as u64)
}

/// A decomposition `(p, q) = (p', q') + (p'', q'')` with neither factor trivial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSplit")]
pub struct SplitSignature {
    p1: u32,
    q1: u32,
    p2: u32,
    q2: u32,
}

#[derive(Deserialize)]
struct RawSplit {
    p1: u32,
    q1: u32,
    p2: u32,
    q2: u32,
}

impl TryFrom<RawSplit> for SplitSignature {
    type Error = Error;
    fn try_from(r: RawSplit) -> Result<Self> {
        SplitSignature::new(r.p1, r.q1, r.p2, r.q2)
    }
}

impl SplitSignature {
    pub fn new(p1: u32, q1: u32, p2: u32, q2: u32) -> Result<Self> {
        if p1 + q1 == 0 || p2 + q2 == 0 {
            return Err(Error::DegenerateSplit(format!(
                "({p1},{q1}) + ({p2},{q2}) has a trivial factor"
            )));
        }
        Ok(SplitSignature { p1, q1, p2, q2 })
    }

    /// The split of `(p, q)` whose first factor is `(p1, q1)`.
    pub fn from_total(p: u32, q: u32, p1: u32, q1: u32) -> Result<Self> {
        if p1 > p || q1 > q {
            return Err(Error::SplitMismatch(format!(
                "({p1},{q1}) does not fit inside ({p},{q})"
            )));
        }
        SplitSignature::new(p1, q1, p - p1, q - q1)
    }

    pub fn p1(&self) -> u32 {
        self.p1
    }
    pub fn q1(&self) -> u32 {
        self.q1
    }
    pub fn p2(&self) -> u32 {
        self.p2
    }
    pub fn q2(&self) -> u32 {
        self.q2
    }

    /// The joined signature `(p' + p'', q' + q'')`.
    pub fn join(&self) -> (u32, u32) {
        (self.p1 + self.p2, self.q1 + self.q2)
    }

    /// The split seen from `O(q, p)`, with each factor's signature reversed.
    pub fn swapped(&self) -> SplitSignature {
        SplitSignature {
            p1: self.q1,
            q1: self.p1,
            p2: self.q2,
            q2: self.p2,
        }
    }

    /// `rho' = (p' + q' - 2) / 2`.
    pub fn rho1(&self) -> HalfInt {
        HalfInt::from_twice(i64::from(self.p1 + self.q1) - 2)
    }

    /// `rho'' = (p'' + q'' - 2) / 2`.
    pub fn rho2(&self) -> HalfInt {
        HalfInt::from_twice(i64::from(self.p2 + self.q2) - 2)
    }
}

impl fmt::Display for SplitSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})+({},{})", self.p1, self.q1, self.p2, self.q2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn h(s: &str) -> HalfInt {
        s.parse().unwrap()
    }

    #[test]
    fn admissible_sets() {
        assert!(a_plus_contains(3, 2, h("7/2")));
        assert!(!a_plus_contains(3, 2, h("3")));
        assert!(!a_plus_contains(6, 2, h("1/2")));
        assert!(a_plus_contains(6, 2, h("1")));
        assert!(!a_plus_contains(2, 2, h("0")));
        assert!(a_plus_contains(4, 0, h("1")));
        assert!(!a_plus_contains(4, 0, h("0")));
        assert!(a_plus_contains(1, 0, h("-1/2")));
        assert!(a_plus_contains(1, 0, h("1/2")));
        assert!(!a_plus_contains(1, 0, h("3/2")));
        assert!(!a_plus_contains(1, 3, h("3")));
        assert!(!a_plus_contains(0, 3, h("1/2")));
        assert!(a_contains(Sign::Minus, 0, 3, h("1/2")));
        assert_eq!(
            a_enumerate(Sign::Plus, 5, 0, h("3")),
            vec![h("3/2"), h("5/2")]
        );
        assert_eq!(a_enumerate(Sign::Plus, 2, 1, h("2")), vec![h("1/2"), h("3/2")]);
        assert_eq!(a_enumerate(Sign::Minus, 1, 0, h("5")), vec![]);
        assert_eq!(
            a_enumerate(Sign::Minus, 0, 1, h("5")),
            vec![h("-1/2"), h("1/2")]
        );
    }

    #[test]
    fn rep_param_validation_and_json() {
        assert!(RepParam::new(6, 2, Sign::Plus, h("1/2")).is_err());
        let rep = RepParam::new(3, 2, Sign::Plus, h("7/2")).unwrap();
        let js = serde_json::to_string(&rep).unwrap();
        assert_eq!(js, r#"{"p":3,"q":2,"eps":"+","lambda":"7/2"}"#);
        let back: RepParam = serde_json::from_str(&js).unwrap();
        assert_eq!(back, rep);
        let bad = r#"{"p":6,"q":2,"eps":"+","lambda":"1/2"}"#;
        assert!(serde_json::from_str::<RepParam>(bad).is_err());
    }

    #[test]
    fn metadata_examples() {
        let rep = RepParam::new(4, 2, Sign::Plus, h("3")).unwrap();
        assert_eq!(rep.b_param(), 3);
        assert_eq!(rep.delta_sign(), Sign::Minus);
        assert_eq!(rep.minimal_ktype(), KType { m: 3, n: 0 });
        assert_eq!(rep.gk_dimension().unwrap(), 4);
        assert_eq!(
            rep.infinitesimal_character(),
            vec![h("3"), h("1"), h("0")]
        );

        let rep = RepParam::new(3, 2, Sign::Plus, h("1/2")).unwrap();
        assert_eq!(rep.minimal_ktype(), KType { m: 1, n: 0 });

        let rep = RepParam::new(2, 2, Sign::Plus, h("2")).unwrap();
        assert_eq!(rep.b_param(), 3);
        assert_eq!(rep.minimal_ktype(), KType { m: 3, n: 0 });

        let rep = RepParam::new(2, 6, Sign::Plus, h("1")).unwrap();
        assert_eq!(rep.b_param(), 4);
        let rep = RepParam::new(6, 1, Sign::Plus, h("1/2")).unwrap();
        assert_eq!(rep.b_param(), -1);
        assert_eq!(rep.minimal_ktype(), KType { m: 0, n: 0 });

        let minus = RepParam::new(2, 3, Sign::Minus, h("7/2")).unwrap();
        let plus = RepParam::new(3, 2, Sign::Plus, h("7/2")).unwrap();
        assert_eq!(minus.normalized(), plus);
        assert_eq!(minus.central_sign(), plus.central_sign());
        assert_eq!(minus.minimal_ktype(), plus.minimal_ktype());

        let one = RepParam::new(1, 0, Sign::Plus, h("-1/2")).unwrap();
        assert!(one.gk_dimension().is_err());
        assert_eq!(one.minimal_ktype(), KType { m: 0, n: 0 });
        assert!(one.infinitesimal_character().is_empty());
    }

    #[test]
    fn ktype_support_example() {
        // b = 1 with both factors of rank at least two
        let rep = RepParam::new(4, 2, Sign::Plus, h("1")).unwrap();
        assert_eq!(rep.b_param(), 1);
        assert_eq!(
            rep.ktype_support(2),
            vec![KType { m: 1, n: 0 }, KType { m: 2, n: 1 }]
        );
        let compact = RepParam::new(4, 0, Sign::Plus, h("2")).unwrap();
        assert_eq!(compact.ktype_support(5), vec![KType { m: 1, n: 0 }]);
    }

    #[test]
    fn harmonic_dimensions() {
        assert_eq!(dim_spherical_harmonics(0, 3).unwrap(), 1);
        assert_eq!(dim_spherical_harmonics(2, 3).unwrap(), 5);
        assert_eq!(dim_spherical_harmonics(5, 2).unwrap(), 2);
        assert_eq!(dim_spherical_harmonics(3, 4).unwrap(), 16);
        assert_eq!(dim_spherical_harmonics(1, 1).unwrap(), 1);
        assert_eq!(dim_spherical_harmonics(2, 1).unwrap(), 0);
        assert!(dim_spherical_harmonics(2, 0).is_err());
    }

    /// Rank of the Laplacian from degree-`m` to degree-`m - 2` polynomials in
    /// `p` variables, by exact integer elimination.
    fn harmonic_dim_by_linear_algebra(m: u32, p: u32) -> u64 {
        fn monomials(deg: u32, vars: u32) -> Vec<Vec<u32>> {
            if vars == 1 {
                return vec![vec![deg]];
            }
            let mut out = Vec::new();
            for first in 0..=deg {
                for mut rest in monomials(deg - first, vars - 1) {
                    rest.insert(0, first);
                    out.push(rest);
                }
            }
            out
        }
        let src = monomials(m, p);
        if m < 2 {
            return src.len() as u64;
        }
        let dst = monomials(m - 2, p);
        let index = |e: &Vec<u32>| dst.iter().position(|d| d == e).unwrap();
        // columns = source monomials, rows = target monomials
        let mut mat = vec![vec![0i128; src.len()]; dst.len()];
        for (j, e) in src.iter().enumerate() {
            for v in 0..p as usize {
                if e[v] >= 2 {
                    let mut f = e.clone();
                    f[v] -= 2;
                    mat[index(&f)][j] += i128::from(e[v] * (e[v] - 1));
                }
            }
        }
        let mut rank = 0;
        let cols = src.len();
        let mut row = 0;
        for col in 0..cols {
            let Some(piv) = (row..mat.len()).find(|&r| mat[r][col] != 0) else {
                continue;
            };
            mat.swap(row, piv);
            for r in 0..mat.len() {
                if r != row && mat[r][col] != 0 {
                    let (a, b) = (mat[row][col], mat[r][col]);
                    for c in 0..cols {
                        mat[r][c] = mat[r][c] * a - mat[row][c] * b;
                    }
                    let g = mat[r].iter().fold(0i128, |g, &x| gcd(g, x.abs()));
                    if g > 1 {
                        for x in mat[r].iter_mut() {
                            *x /= g;
                        }
                    }
                }
            }
            row += 1;
            rank += 1;
            if row == mat.len() {
                break;
            }
        }
        (src.len() - rank) as u64
    }

    fn gcd(a: i128, b: i128) -> i128 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    #[test]
    fn harmonic_dimension_matches_laplacian_kernel() {
        for p in 1..=5 {
            for m in 0..=6 {
                assert_eq!(
                    dim_spherical_harmonics(m, p).unwrap(),
                    harmonic_dim_by_linear_algebra(m, p),
                    "m = {m}, p = {p}"
                );
            }
        }
    }

    fn admissible_rep() -> impl Strategy<Value = RepParam> {
        (2u32..8, 0u32..8, 0i64..30, any::<bool>()).prop_filter_map(
            "admissible",
            |(p, q, k, minus)| {
                let start = a_plus_min(p, q)?;
                let lambda = start.plus_int(k);
                let (p, q, eps) = if minus { (q, p, Sign::Minus) } else { (p, q, Sign::Plus) };
                RepParam::new(p, q, eps, lambda).ok()
            },
        )
    }

    proptest! {
        #[test]
        fn b_param_is_integral_and_delta_matches(rep in admissible_rep()) {
            let b = rep.b_param();
            let n = rep.normalized();
            let twice = n.lambda().twice() - i64::from(n.p()) + i64::from(n.q()) + 2;
            prop_assert_eq!(twice % 2, 0);
            prop_assert_eq!(2 * b, twice);
            let expected = if b.rem_euclid(2) == 0 { Sign::Plus } else { Sign::Minus };
            prop_assert_eq!(rep.delta_sign(), expected);
            if rep.eps() == Sign::Plus {
                prop_assert_eq!(rep.central_sign(), rep.delta_sign());
            }
        }

        #[test]
        fn ktypes_respect_parity(rep in admissible_rep(), m_max in 0u32..8) {
            let b = rep.b_param();
            for kt in rep.ktype_support(m_max) {
                let d = i64::from(kt.m) - i64::from(kt.n) - b;
                prop_assert!(d >= 0 && d % 2 == 0);
            }
            let min = rep.minimal_ktype();
            if b >= 0 && i64::from(m_max) >= b {
                let support = rep.ktype_support(m_max);
                prop_assert!(support.contains(&min));
            }
        }

        #[test]
        fn compact_degree_matches_b(p in 2u32..10, k in 0i64..20) {
            let lambda = a_plus_min(p, 0).unwrap().plus_int(k);
            let rep = RepParam::new(p, 0, Sign::Plus, lambda).unwrap();
            prop_assert!(rep.b_param() >= 0);
            prop_assert_eq!(rep.b_param(), k);
            prop_assert_eq!(rep.minimal_ktype(), KType { m: k as u32, n: 0 });
        }

        #[test]
        fn labels_are_distinct(p in 2u32..7, q in 0u32..7) {
            let mut seen = std::collections::HashSet::new();
            for eps in [Sign::Plus, Sign::Minus] {
                for lambda in a_enumerate(eps, p, q, HalfInt::from_twice(25)) {
                    let rep = RepParam::new(p, q, eps, lambda).unwrap();
                    let key = (eps, rep.infinitesimal_character(), rep.minimal_ktype());
                    prop_assert!(seen.insert(key));
                }
            }
        }
    }
}

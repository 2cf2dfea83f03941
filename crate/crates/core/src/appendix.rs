//! Bounded-multiplicity classification for triples `(g, h, g')` of complex Lie
//! algebras with `g` simple, `(g, h)` symmetric and `g'` reductive.
//!
//! Labels come from a closed vocabulary ([`Factor`]). Before comparison every
//! reductive algebra is reduced to a multiset of Cartan types plus a center
//! dimension, using the low-rank isomorphisms `so3 = sl2 = sp1`, `so4 = sl2+sl2`,
//! `so5 = sp2`, `so6 = sl4`, `so2 = gl1 = C`. The label `spin7` denotes the
//! spin embedding of `so7` in `so8` and is never identified with `so7`.
//!
//! A triple is bounded when it equals, after this reduction, an instance of a
//! [`TABLE`] row. Row parameters `p`, `q` range over `p, q >= 1` with `p + q = n`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One simple or abelian summand of a reductive Lie algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", content = "n", rename_all = "lowercase")]
pub enum Factor {
    Sl(u32),
    So(u32),
    Sp(u32),
    Gl(u32),
    Spin7,
    E6,
    E7,
    E8,
    F4,
    G2,
    #[serde(rename = "C")]
    Center,
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Sl(n) => write!(f, "sl({n})"),
            Factor::So(n) => write!(f, "so({n})"),
            Factor::Sp(n) => write!(f, "sp({n})"),
            Factor::Gl(n) => write!(f, "gl({n})"),
            Factor::Spin7 => f.write_str("spin(7)"),
            Factor::E6 => f.write_str("e6"),
            Factor::E7 => f.write_str("e7"),
            Factor::E8 => f.write_str("e8"),
            Factor::F4 => f.write_str("f4"),
            Factor::G2 => f.write_str("g2"),
            Factor::Center => f.write_str("C"),
        }
    }
}

impl FromStr for Factor {
    type Err = Error;

    /// Accepts `so(8)`, `so8`, `so_8`, `spin(7)`, `e6`, `C` and similar.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let lower = t.to_ascii_lowercase();
        let fixed = match lower.as_str() {
            "c" | "center" => Some(Factor::Center),
            "e6" | "e_6" => Some(Factor::E6),
            "e7" | "e_7" => Some(Factor::E7),
            "e8" | "e_8" => Some(Factor::E8),
            "f4" | "f_4" => Some(Factor::F4),
            "g2" | "g_2" => Some(Factor::G2),
            "spin7" | "spin(7)" | "spin_7" => Some(Factor::Spin7),
            _ => None,
        };
        if let Some(f) = fixed {
            return Ok(f);
        }
        let unknown = || Error::UnknownLabel(s.to_string());
        let family: String = lower.chars().take_while(|c| c.is_ascii_alphabetic()).collect();
        let rest = &lower[family.len()..];
        let digits = rest
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| rest.strip_prefix('_'))
            .unwrap_or(rest);
        let n: u32 = digits.parse().map_err(|_| unknown())?;
        if n == 0 {
            return Err(unknown());
        }
        match family.as_str() {
            "sl" => Ok(Factor::Sl(n)),
            "so" => Ok(Factor::So(n)),
            "sp" => Ok(Factor::Sp(n)),
            "gl" => Ok(Factor::Gl(n)),
            _ => Err(unknown()),
        }
    }
}

/// Cartan type of a simple summand after the low-rank identifications.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cartan {
    A(u32),
    B(u32),
    C(u32),
    D(u32),
    E6,
    E7,
    E8,
    F4,
    G2,
    Spin7,
}

/// A reductive algebra reduced to sorted simple types plus a center dimension.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Canonical {
    pub simple: Vec<Cartan>,
    pub center: u32,
}

impl Canonical {
    fn push(&mut self, f: Factor) {
        use Cartan::*;
        let s = &mut self.simple;
        match f {
            Factor::Sl(1) | Factor::So(1) => {}
            Factor::Sl(n) => s.push(A(n - 1)),
            Factor::Gl(n) => {
                self.center += 1;
                if n >= 2 {
                    s.push(A(n - 1));
                }
            }
            Factor::So(2) | Factor::Center => self.center += 1,
            Factor::So(3) | Factor::Sp(1) => s.push(A(1)),
            Factor::So(4) => s.extend([A(1), A(1)]),
            Factor::So(5) | Factor::Sp(2) => s.push(C(2)),
            Factor::So(6) => s.push(A(3)),
            Factor::So(n) if n % 2 == 1 => s.push(B((n - 1) / 2)),
            Factor::So(n) => s.push(D(n / 2)),
            Factor::Sp(n) => s.push(C(n)),
            Factor::Spin7 => s.push(Spin7),
            Factor::E6 => s.push(E6),
            Factor::E7 => s.push(E7),
            Factor::E8 => s.push(E8),
            Factor::F4 => s.push(F4),
            Factor::G2 => s.push(G2),
        }
    }

    pub fn of(factors: &[Factor]) -> Canonical {
        let mut c = Canonical::default();
        for &f in factors {
            c.push(f);
        }
        c.simple.sort();
        c
    }

    fn single(&self) -> Option<Cartan> {
        match (self.simple.as_slice(), self.center) {
            ([t], 0) => Some(*t),
            _ => None,
        }
    }
}

/// A reductive Lie algebra written as a direct sum of [`Factor`]s.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Reductive(pub Vec<Factor>);

impl Reductive {
    pub fn new(factors: Vec<Factor>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::invalid("a reductive label needs at least one summand"));
        }
        Ok(Reductive(factors))
    }

    pub fn canonical(&self) -> Canonical {
        Canonical::of(&self.0)
    }
}

impl fmt::Display for Reductive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            x.fmt(f)?;
        }
        Ok(())
    }
}

impl FromStr for Reductive {
    type Err = Error;

    /// Summands separated by `+` (or `⊕`).
    fn from_str(s: &str) -> Result<Self> {
        let factors = s
            .split(['+', '⊕'])
            .map(str::parse)
            .collect::<Result<Vec<Factor>>>()?;
        Reductive::new(factors)
    }
}

impl Serialize for Reductive {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Reductive {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            List(Vec<Factor>),
        }
        match Raw::deserialize(d)? {
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
            Raw::List(v) => Reductive::new(v).map_err(serde::de::Error::custom),
        }
    }
}

/// A simple complex Lie algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Simple(Factor);

impl Simple {
    pub fn new(f: Factor) -> Result<Self> {
        let ok = match f {
            Factor::Sl(n) => n >= 2,
            Factor::So(n) => n == 3 || n >= 5,
            Factor::Sp(n) => n >= 1,
            Factor::E6 | Factor::E7 | Factor::E8 | Factor::F4 | Factor::G2 => true,
            Factor::Gl(_) | Factor::Spin7 | Factor::Center => false,
        };
        if ok {
            Ok(Simple(f))
        } else {
            Err(Error::invalid(format!("{f} is not a simple Lie algebra label")))
        }
    }

    pub fn factor(&self) -> Factor {
        self.0
    }

    pub fn cartan(&self) -> Cartan {
        Canonical::of(&[self.0]).simple[0]
    }
}

impl fmt::Display for Simple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for Simple {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Simple::new(s.parse()?)
    }
}

/// A triple `(g, h, g')`.
///
/// JSON form: `{"g": "so", "g_rank_param": 8, "h": [{"family": "gl", "n": 4}],
/// "gp": "so(6)+so(2)"}`; `h` and `gp` may be lists of factors or strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawTriple", into = "RawTriple")]
pub struct ComplexTriple {
    pub g: Simple,
    pub h: Reductive,
    pub gp: Reductive,
}

#[derive(Serialize, Deserialize)]
struct RawTriple {
    g: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    g_rank_param: Option<u32>,
    h: Reductive,
    gp: Reductive,
}

impl TryFrom<RawTriple> for ComplexTriple {
    type Error = Error;
    fn try_from(raw: RawTriple) -> Result<Self> {
        let g = match raw.g_rank_param {
            Some(n) => format!("{}({n})", raw.g),
            None => raw.g,
        };
        Ok(ComplexTriple::new(g.parse()?, raw.h, raw.gp))
    }
}

impl From<ComplexTriple> for RawTriple {
    fn from(t: ComplexTriple) -> Self {
        let (g, n) = match t.g.0 {
            Factor::Sl(n) => ("sl".to_string(), Some(n)),
            Factor::So(n) => ("so".to_string(), Some(n)),
            Factor::Sp(n) => ("sp".to_string(), Some(n)),
            other => (other.to_string(), None),
        };
        RawTriple {
            g,
            g_rank_param: n,
            h: t.h,
            gp: t.gp,
        }
    }
}

impl ComplexTriple {
    pub fn new(g: Simple, h: Reductive, gp: Reductive) -> Self {
        ComplexTriple { g, h, gp }
    }

    /// Parse from three label strings.
    pub fn parse(g: &str, h: &str, gp: &str) -> Result<Self> {
        Ok(ComplexTriple::new(g.parse()?, h.parse()?, gp.parse()?))
    }
}

impl fmt::Display for ComplexTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.g, self.h, self.gp)
    }
}

/// Which part of the table a row belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
    /// Cases identified with table rows by an outer automorphism.
    Alias,
}

type Instances = fn(u32) -> Vec<(Vec<Factor>, Vec<Factor>)>;

/// A row of the classification: for each admissible rank `n` of `g`, the list
/// of `(h, g')` it contains.
pub struct TableRow {
    pub id: &'static str,
    pub side: Side,
    pub pattern: &'static str,
    /// Family of `g`, with the rank parameter replaced by 0 when it varies.
    pub g_family: Factor,
    pub rank_ok: fn(u32) -> bool,
    instances: Instances,
}

impl TableRow {
    /// The simple algebra of this row at rank `n`.
    pub fn g_at(&self, n: u32) -> Option<Simple> {
        if !(self.rank_ok)(n) {
            return None;
        }
        let f = match self.g_family {
            Factor::Sl(_) => Factor::Sl(n),
            Factor::So(_) => Factor::So(n),
            Factor::Sp(_) => Factor::Sp(n),
            other => other,
        };
        Simple::new(f).ok()
    }

    /// All triples of this row with `g` of rank parameter `n`.
    pub fn triples_at(&self, n: u32) -> Vec<ComplexTriple> {
        let Some(g) = self.g_at(n) else {
            return Vec::new();
        };
        (self.instances)(n)
            .into_iter()
            .map(|(h, gp)| ComplexTriple::new(g, Reductive(h), Reductive(gp)))
            .collect()
    }
}

fn splits(n: u32) -> impl Iterator<Item = (u32, u32)> {
    (1..n).map(move |p| (p, n - p))
}

fn is_simple_so(n: u32) -> bool {
    n == 3 || n >= 5
}

use Factor::{Center as Ctr, Gl, Sl, So, Sp};

/// The classification table together with its alias rows.
pub static TABLE: &[TableRow] = &[
    TableRow {
        id: "L1",
        side: Side::Left,
        pattern: "(sl(n), gl(n-1), sl(p)+sl(q)+C)",
        g_family: Sl(0),
        rank_ok: |n| n >= 2,
        instances: |n| splits(n).map(|(p, q)| (vec![Gl(n - 1)], vec![Sl(p), Sl(q), Ctr])).collect(),
    },
    TableRow {
        id: "L2",
        side: Side::Left,
        pattern: "(sl(2m), gl(2m-1), sp(m))",
        g_family: Sl(0),
        rank_ok: |n| n >= 2 && n % 2 == 0,
        instances: |n| vec![(vec![Gl(n - 1)], vec![Sp(n / 2)])],
    },
    TableRow {
        id: "L3",
        side: Side::Left,
        pattern: "(sl(6), sp(3), sl(4)+sl(2)+C)",
        g_family: Sl(0),
        rank_ok: |n| n == 6,
        instances: |_| vec![(vec![Sp(3)], vec![Sl(4), Sl(2), Ctr])],
    },
    TableRow {
        id: "L4",
        side: Side::Left,
        pattern: "(so(n), so(n-1), so(p)+so(q))",
        g_family: So(0),
        rank_ok: is_simple_so,
        instances: |n| splits(n).map(|(p, q)| (vec![So(n - 1)], vec![So(p), So(q)])).collect(),
    },
    TableRow {
        id: "L5",
        side: Side::Left,
        pattern: "(so(2m), so(2m-1), gl(m))",
        g_family: So(0),
        rank_ok: |n| n >= 6 && n % 2 == 0,
        instances: |n| vec![(vec![So(n - 1)], vec![Gl(n / 2)])],
    },
    TableRow {
        id: "L6",
        side: Side::Left,
        pattern: "(so(2m), so(2m-2)+C, gl(m))",
        g_family: So(0),
        rank_ok: |n| n >= 6 && n % 2 == 0,
        instances: |n| vec![(vec![So(n - 2), Ctr], vec![Gl(n / 2)])],
    },
    TableRow {
        id: "L7",
        side: Side::Left,
        pattern: "(sp(n), sp(n-1)+sp(1), sp(p)+sp(q))",
        g_family: Sp(0),
        rank_ok: |n| n >= 2,
        instances: |n| splits(n).map(|(p, q)| (vec![Sp(n - 1), Sp(1)], vec![Sp(p), Sp(q)])).collect(),
    },
    TableRow {
        id: "L8",
        side: Side::Left,
        pattern: "(sp(n), sp(n-2)+sp(2), sp(n-1)+sp(1))",
        g_family: Sp(0),
        rank_ok: |n| n >= 3,
        instances: |n| vec![(vec![Sp(n - 2), Sp(2)], vec![Sp(n - 1), Sp(1)])],
    },
    TableRow {
        id: "L9",
        side: Side::Left,
        pattern: "(e6, f4, so(10)+C)",
        g_family: Factor::E6,
        rank_ok: |_| true,
        instances: |_| vec![(vec![Factor::F4], vec![So(10), Ctr])],
    },
    TableRow {
        id: "L10",
        side: Side::Left,
        pattern: "(f4, so(9), so(9))",
        g_family: Factor::F4,
        rank_ok: |_| true,
        instances: |_| vec![(vec![So(9)], vec![So(9)])],
    },
    TableRow {
        id: "R1",
        side: Side::Right,
        pattern: "(sl(n), so(n), gl(n-1))",
        g_family: Sl(0),
        rank_ok: |n| n >= 2,
        instances: |n| vec![(vec![So(n)], vec![Gl(n - 1)])],
    },
    TableRow {
        id: "R2",
        side: Side::Right,
        pattern: "(sl(2m), sp(m), gl(2m-1))",
        g_family: Sl(0),
        rank_ok: |n| n >= 4 && n % 2 == 0,
        instances: |n| vec![(vec![Sp(n / 2)], vec![Gl(n - 1)])],
    },
    TableRow {
        id: "R3",
        side: Side::Right,
        pattern: "(sl(n), sl(p)+sl(q)+C, gl(n-1))",
        g_family: Sl(0),
        rank_ok: |n| n >= 2,
        instances: |n| splits(n).map(|(p, q)| (vec![Sl(p), Sl(q), Ctr], vec![Gl(n - 1)])).collect(),
    },
    TableRow {
        id: "R4",
        side: Side::Right,
        pattern: "(so(n), so(p)+so(q), so(n-1))",
        g_family: So(0),
        rank_ok: is_simple_so,
        instances: |n| splits(n).map(|(p, q)| (vec![So(p), So(q)], vec![So(n - 1)])).collect(),
    },
    TableRow {
        id: "R5",
        side: Side::Right,
        pattern: "(so(2m), gl(m), so(2m-1))",
        g_family: So(0),
        rank_ok: |n| n >= 6 && n % 2 == 0,
        instances: |n| vec![(vec![Gl(n / 2)], vec![So(n - 1)])],
    },
    TableRow {
        id: "A1",
        side: Side::Alias,
        pattern: "(so(8), gl(4), so(6)+so(2))",
        g_family: So(0),
        rank_ok: |n| n == 8,
        instances: |_| vec![(vec![Gl(4)], vec![So(6), So(2)])],
    },
    TableRow {
        id: "A2",
        side: Side::Alias,
        pattern: "(sl(4), sp(2), sl(2)+sl(2)+C)",
        g_family: Sl(0),
        rank_ok: |n| n == 4,
        instances: |_| vec![(vec![Sp(2)], vec![Sl(2), Sl(2), Ctr])],
    },
    TableRow {
        id: "A3",
        side: Side::Alias,
        pattern: "(so(8), so(p)+so(q) or gl(4), spin(7))",
        g_family: So(0),
        rank_ok: |n| n == 8,
        instances: |n| {
            splits(n)
                .map(|(p, q)| (vec![So(p), So(q)], vec![Factor::Spin7]))
                .chain([(vec![Gl(4)], vec![Factor::Spin7])])
                .collect()
        },
    },
];

/// Rank parameter of `g` as used by the rows (0 for exceptional algebras).
fn rank_param(g: Simple) -> u32 {
    match g.0 {
        Factor::Sl(n) | Factor::So(n) | Factor::Sp(n) => n,
        _ => 0,
    }
}

/// Every form of `g` under the low-rank isomorphisms, as `(family, n)` pairs a
/// row may be instantiated with.
fn g_forms(g: Simple) -> Vec<Simple> {
    let mut out = vec![g];
    let extra: &[Factor] = match g.cartan() {
        Cartan::A(1) => &[Sl(2), So(3), Sp(1)],
        Cartan::C(2) => &[So(5), Sp(2)],
        Cartan::A(3) => &[Sl(4), So(6)],
        _ => &[],
    };
    for &f in extra {
        let s = Simple(f);
        if !out.contains(&s) {
            out.push(s);
        }
    }
    out
}

/// The first table row containing `t`, if any.
pub fn matching_row(t: &ComplexTriple) -> Option<&'static TableRow> {
    let want = (t.h.canonical(), t.gp.canonical());
    for row in TABLE {
        for g in g_forms(t.g) {
            if std::mem::discriminant(&g.0) != std::mem::discriminant(&row.g_family) {
                continue;
            }
            let hit = row
                .triples_at(rank_param(g))
                .iter()
                .any(|c| (c.h.canonical(), c.gp.canonical()) == want);
            if hit {
                return Some(row);
            }
        }
    }
    None
}

/// Whether the triple has the bounded multiplicity property.
pub fn bounded_multiplicity_triple(t: &ComplexTriple) -> bool {
    matching_row(t).is_some()
}

/// Membership of `(g, g')` in the list `(sl(n), gl(n-1))`, `(so(n), so(n-1))`,
/// `(so(8), spin(7))`.
pub fn bounded_multiplicity_pair(g: Simple, gp: &Reductive) -> bool {
    let gp = gp.canonical();
    g_forms(g).into_iter().any(|form| match form.0 {
        Factor::Sl(n) => gp == Canonical::of(&[Gl(n - 1)]),
        Factor::So(n) => gp == Canonical::of(&[So(n - 1)]) || (n == 8 && gp == Canonical::of(&[Factor::Spin7])),
        _ => false,
    })
}

/// Bounded multiplicity of tensor products `Pi_1 (x) Pi_2` with `Pi_j`
/// realized on `G/H_j`.
///
/// Type A is decided completely: only `(sl2, so2, so2)` and `(sl4, sp2, sp2)`
/// up to isomorphism. For orthogonal `g` the known positive cases are
/// `(so(n), so(n-1), so(n-1))` and `(so(8), so(7), gl(4))` in either order; any
/// other query is reported as [`Error::Unsupported`].
pub fn tensor_bounded(g: Simple, h1: &Reductive, h2: &Reductive) -> Result<bool> {
    let (c1, c2) = (h1.canonical(), h2.canonical());
    let orthogonal_n = match g.cartan() {
        Cartan::A(1) => return Ok(c1.center == 1 && c1.simple.is_empty() && c1 == c2),
        Cartan::A(3) => return Ok(c1.single() == Some(Cartan::C(2)) && c1 == c2),
        Cartan::A(_) => return Ok(false),
        Cartan::B(k) => 2 * k + 1,
        Cartan::C(2) => 5,
        Cartan::D(k) => 2 * k,
        _ => {
            return Err(Error::Unsupported(format!(
                "tensor product bounded multiplicity for {g} is not tabulated"
            )))
        }
    };
    let hyper = Canonical::of(&[So(orthogonal_n - 1)]);
    if c1 == hyper && c2 == hyper {
        return Ok(true);
    }
    let gl4 = Canonical::of(&[Gl(4)]);
    if orthogonal_n == 8 && ((c1 == hyper && c2 == gl4) || (c1 == gl4 && c2 == hyper)) {
        return Ok(true);
    }
    Err(Error::Unsupported(format!(
        "tensor product bounded multiplicity for ({g}, {h1}, {h2}) is not tabulated"
    )))
}

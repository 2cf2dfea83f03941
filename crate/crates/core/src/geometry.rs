//! Points of the pseudo-Riemannian space forms `X(p,q)_± = {|x|^2 - |y|^2 = ±1}`,
//! the level function `mu` attached to a split `p = p' + p''`, `q = q' + q''`,
//! the three open regions it cuts out, their product coordinates and the radial
//! part of the holographic operators.
//!
//! A point of `X(p,q)_-` is stored as the point of `X(q,p)_+` obtained by
//! swapping the two blocks, together with a sign flag. [`SpaceFormPoint::x`]
//! and [`SpaceFormPoint::y`] always return the coordinates in `R^{p,q}`.
//!
//! Coordinates on `R^{p,q}` are ordered `(u', u'', v', v'')` with
//! `x = (u', u'')` and `y = (v', v'')`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::branching::LambdaKind;
use crate::error::{Error, Result};
use crate::exactnum::HalfInt;
use crate::hypergeom::{jacobi_phi, jacobi_phi_compact, JacobiParams};
use crate::parseval::{integrate_half_line, ln_cosh, ln_sinh, RadialDomain, RadialMeasure};
use crate::quadrature::integrate_adaptive;
use crate::repparams::{Sign, SplitSignature};

/// Tolerance on the quadric equation, relative to `max(1, |x|^2 + |y|^2)`.
pub const QUADRIC_TOL: f64 = 1e-12;

/// Tolerance on `mu` for the boundary label.
pub const BOUNDARY_TOL: f64 = 1e-12;

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|c| c * c).sum()
}

/// A point of `X(p,q)_+` or `X(p,q)_-`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPoint", into = "RawPoint")]
pub struct SpaceFormPoint {
    /// Block with positive square norm on the canonical quadric.
    a: Vec<f64>,
    b: Vec<f64>,
    sign: Sign,
}

#[derive(Serialize, Deserialize)]
struct RawPoint {
    p: usize,
    q: usize,
    sign: Sign,
    coords: Vec<f64>,
}

impl TryFrom<RawPoint> for SpaceFormPoint {
    type Error = Error;

    fn try_from(raw: RawPoint) -> Result<Self> {
        if raw.coords.len() != raw.p + raw.q {
            return Err(Error::invalid(format!(
                "expected {} coordinates for ({}, {}), got {}",
                raw.p + raw.q,
                raw.p,
                raw.q,
                raw.coords.len()
            )));
        }
        let (x, y) = raw.coords.split_at(raw.p);
        SpaceFormPoint::new(x.to_vec(), y.to_vec(), raw.sign)
    }
}

impl From<SpaceFormPoint> for RawPoint {
    fn from(pt: SpaceFormPoint) -> Self {
        let mut coords = pt.x().to_vec();
        coords.extend_from_slice(pt.y());
        RawPoint {
            p: pt.p(),
            q: pt.q(),
            sign: pt.sign,
            coords,
        }
    }
}

impl SpaceFormPoint {
    /// Validate `|x|^2 - |y|^2 = ±1`.
    pub fn new(x: Vec<f64>, y: Vec<f64>, sign: Sign) -> Result<Self> {
        let (a, b) = match sign {
            Sign::Plus => (x, y),
            Sign::Minus => (y, x),
        };
        if a.iter().chain(&b).any(|c| !c.is_finite()) {
            return Err(Error::invalid("point coordinates must be finite"));
        }
        let (na, nb) = (norm2(&a), norm2(&b));
        let defect = na - nb - 1.0;
        if defect.abs() > QUADRIC_TOL * (na + nb).max(1.0) {
            return Err(Error::invalid(format!(
                "point is off the quadric X_{sign}: defect {defect:e}"
            )));
        }
        Ok(SpaceFormPoint { a, b, sign })
    }

    /// The point of `X(p,q)_sign` whose free block is `free` and whose other
    /// block points along `dir`. For sign `+` the free block is `y`; for sign
    /// `-` it is `x`.
    pub fn lift(sign: Sign, dir: Vec<f64>, free: Vec<f64>) -> Result<Self> {
        let n = norm2(&dir).sqrt();
        if !(n > 0.0) {
            return Err(Error::invalid("direction vector must be nonzero"));
        }
        let scale = (1.0 + norm2(&free)).sqrt() / n;
        let a: Vec<f64> = dir.iter().map(|c| c * scale).collect();
        match sign {
            Sign::Plus => SpaceFormPoint::new(a, free, sign),
            Sign::Minus => SpaceFormPoint::new(free, a, sign),
        }
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn x(&self) -> &[f64] {
        match self.sign {
            Sign::Plus => &self.a,
            Sign::Minus => &self.b,
        }
    }

    pub fn y(&self) -> &[f64] {
        match self.sign {
            Sign::Plus => &self.b,
            Sign::Minus => &self.a,
        }
    }

    pub fn p(&self) -> usize {
        self.x().len()
    }

    pub fn q(&self) -> usize {
        self.y().len()
    }

    /// The same point viewed on `X(q,p)_+`.
    pub fn canonical(&self) -> (&[f64], &[f64]) {
        (&self.a, &self.b)
    }

    /// `|x|^2 - |y|^2 - (±1)`.
    pub fn defect(&self) -> f64 {
        norm2(&self.a) - norm2(&self.b) - 1.0
    }

    /// Largest componentwise difference to `other` (infinite on shape mismatch).
    pub fn max_abs_diff(&self, other: &SpaceFormPoint) -> f64 {
        if self.sign != other.sign || self.a.len() != other.a.len() || self.b.len() != other.b.len() {
            return f64::INFINITY;
        }
        self.a
            .iter()
            .zip(&other.a)
            .chain(self.b.iter().zip(&other.b))
            .map(|(s, o)| (s - o).abs())
            .fold(0.0, f64::max)
    }
}

/// Which open piece of `X(p,q)_+` a point lies in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegionLabel {
    #[serde(rename = "-+")]
    MinusPlus,
    #[serde(rename = "++")]
    PlusPlus,
    #[serde(rename = "+-")]
    PlusMinus,
    #[serde(rename = "boundary")]
    Boundary,
}

impl RegionLabel {
    pub fn kind(self) -> Option<LambdaKind> {
        match self {
            RegionLabel::MinusPlus => Some(LambdaKind::MinusPlus),
            RegionLabel::PlusPlus => Some(LambdaKind::PlusPlus),
            RegionLabel::PlusMinus => Some(LambdaKind::PlusMinus),
            RegionLabel::Boundary => None,
        }
    }
}

impl From<LambdaKind> for RegionLabel {
    fn from(kind: LambdaKind) -> Self {
        match kind {
            LambdaKind::MinusPlus => RegionLabel::MinusPlus,
            LambdaKind::PlusPlus => RegionLabel::PlusPlus,
            LambdaKind::PlusMinus => RegionLabel::PlusMinus,
        }
    }
}

impl fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            Some(kind) => kind.fmt(f),
            None => f.write_str("boundary"),
        }
    }
}

struct Blocks<'a> {
    u1: &'a [f64],
    u2: &'a [f64],
    v1: &'a [f64],
    v2: &'a [f64],
}

fn blocks<'a>(split: &SplitSignature, pt: &'a SpaceFormPoint) -> Result<Blocks<'a>> {
    let (p, q) = split.join();
    if pt.sign() != Sign::Plus {
        return Err(Error::invalid("the level function is defined on X(p,q)_+ only"));
    }
    if pt.p() != p as usize || pt.q() != q as usize {
        return Err(Error::invalid(format!(
            "point has dimensions ({}, {}) but the split {split} needs ({p}, {q})",
            pt.p(),
            pt.q()
        )));
    }
    let (u1, u2) = pt.x().split_at(split.p1() as usize);
    let (v1, v2) = pt.y().split_at(split.q1() as usize);
    Ok(Blocks { u1, u2, v1, v2 })
}

/// `(mu, nu)` with `mu = |u'|^2 - |v'|^2` and `nu = |u''|^2 - |v''|^2 = 1 - mu`.
pub fn mu_nu(split: &SplitSignature, pt: &SpaceFormPoint) -> Result<(f64, f64)> {
    let b = blocks(split, pt)?;
    Ok((norm2(b.u1) - norm2(b.v1), norm2(b.u2) - norm2(b.v2)))
}

/// `mu = |u'|^2 - |v'|^2`.
pub fn mu_level(split: &SplitSignature, pt: &SpaceFormPoint) -> Result<f64> {
    Ok(mu_nu(split, pt)?.0)
}

/// Region of `pt`: `-+` for `mu < 0`, `++` for `0 < mu < 1`, `+-` for `mu > 1`.
pub fn classify_point(split: &SplitSignature, pt: &SpaceFormPoint) -> Result<RegionLabel> {
    let (mu, nu) = mu_nu(split, pt)?;
    Ok(if mu.abs() <= BOUNDARY_TOL || nu.abs() <= BOUNDARY_TOL {
        RegionLabel::Boundary
    } else if mu < 0.0 {
        RegionLabel::MinusPlus
    } else if nu < 0.0 {
        RegionLabel::PlusMinus
    } else {
        RegionLabel::PlusPlus
    })
}

/// Signs of the two factor space forms for each region.
pub fn factor_signs(kind: LambdaKind) -> (Sign, Sign) {
    match kind {
        LambdaKind::PlusMinus => (Sign::Plus, Sign::Minus),
        LambdaKind::MinusPlus => (Sign::Minus, Sign::Plus),
        LambdaKind::PlusPlus => (Sign::Plus, Sign::Plus),
    }
}

/// Scale factors `(s1, s2)` applied to the two blocks.
fn block_scales(kind: LambdaKind, param: f64) -> (f64, f64) {
    match kind {
        LambdaKind::PlusMinus => (param.cosh(), param.sinh()),
        LambdaKind::MinusPlus => (param.sinh(), param.cosh()),
        LambdaKind::PlusPlus => (param.cos(), param.sin()),
    }
}

fn check_parameter(kind: LambdaKind, param: f64) -> Result<()> {
    let ok = match kind {
        LambdaKind::PlusPlus => param > 0.0 && param < std::f64::consts::FRAC_PI_2,
        _ => param > 0.0 && param.is_finite(),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::domain("phi_map", format!("parameter {param} outside the region of {kind}")))
    }
}

/// The diffeomorphism `Phi_kind` from `X(p',q')_{s1} x X(p'',q'')_{s2} x I` onto
/// the region `kind`; for `+-` it is `(x' cosh t, x'' sinh t, y' cosh t, y'' sinh t)`.
pub fn phi_map(
    kind: LambdaKind,
    split: &SplitSignature,
    z1: &SpaceFormPoint,
    z2: &SpaceFormPoint,
    param: f64,
) -> Result<SpaceFormPoint> {
    check_parameter(kind, param)?;
    let (s1, s2) = factor_signs(kind);
    let want = [(z1, s1, split.p1(), split.q1()), (z2, s2, split.p2(), split.q2())];
    for (i, (z, s, p, q)) in want.into_iter().enumerate() {
        if z.sign() != s || z.p() != p as usize || z.q() != q as usize {
            return Err(Error::invalid(format!(
                "factor {} must lie on X({p},{q})_{s} for region {kind}",
                i + 1
            )));
        }
    }
    let (c1, c2) = block_scales(kind, param);
    let scaled = |v: &[f64], c: f64| v.iter().map(move |e| e * c).collect::<Vec<_>>();
    let mut x = scaled(z1.x(), c1);
    x.extend(scaled(z2.x(), c2));
    let mut y = scaled(z1.y(), c1);
    y.extend(scaled(z2.y(), c2));
    SpaceFormPoint::new(x, y, Sign::Plus)
}

/// Inverse of [`phi_map`]: recovers `(z1, z2, t)` or `(z1, z2, theta)`.
pub fn phi_inverse(
    kind: LambdaKind,
    split: &SplitSignature,
    pt: &SpaceFormPoint,
) -> Result<(SpaceFormPoint, SpaceFormPoint, f64)> {
    let label = classify_point(split, pt)?;
    if label != RegionLabel::from(kind) {
        return Err(Error::domain(
            "phi_inverse",
            format!("point lies in region {label}, not {kind}"),
        ));
    }
    let (mu, nu) = mu_nu(split, pt)?;
    // squared block scales (c1^2, c2^2) and the parameter
    let (c1sq, c2sq, param) = match kind {
        LambdaKind::PlusMinus => (mu, -nu, (-nu).sqrt().asinh()),
        LambdaKind::MinusPlus => (-mu, nu, (-mu).sqrt().asinh()),
        LambdaKind::PlusPlus => (mu, nu, nu.sqrt().atan2(mu.sqrt())),
    };
    let b = blocks(split, pt)?;
    let (r1, r2) = (c1sq.sqrt().recip(), c2sq.sqrt().recip());
    let scaled = |v: &[f64], c: f64| v.iter().map(|e| e * c).collect::<Vec<_>>();
    let (s1, s2) = factor_signs(kind);
    let z1 = SpaceFormPoint::new(scaled(b.u1, r1), scaled(b.v1, r1), s1)?;
    let z2 = SpaceFormPoint::new(scaled(b.u2, r2), scaled(b.v2, r2), s2)?;
    Ok((z1, z2, param))
}

/// Parameters of the Jacobi function and the exponents of the radial factor:
/// `(jacobi params, exponent on the first trig factor, exponent on the second)`.
fn radial_shape(
    kind: LambdaKind,
    lam1: HalfInt,
    lam2: HalfInt,
    lam: HalfInt,
    rho1: HalfInt,
    rho2: HalfInt,
) -> Result<(JacobiParams, f64, f64)> {
    Ok(match kind {
        LambdaKind::PlusMinus | LambdaKind::PlusPlus => (
            JacobiParams::new(lam, lam1, lam2)?,
            (lam1 - rho1).to_f64(),
            (lam2 - rho2).to_f64(),
        ),
        LambdaKind::MinusPlus => (
            JacobiParams::new(lam, lam2, lam1)?,
            (lam2 - rho2).to_f64(),
            (lam1 - rho1).to_f64(),
        ),
    })
}

/// `(sign, ln |value|)` of the radial factor.
fn radial_log(
    kind: LambdaKind,
    params: &JacobiParams,
    e1: f64,
    e2: f64,
    x: f64,
) -> Result<(f64, f64)> {
    let (phi, weight) = match kind {
        LambdaKind::PlusPlus => (
            jacobi_phi_compact(params, x)?,
            e1 * x.cos().ln() + e2 * x.sin().ln(),
        ),
        _ => (jacobi_phi(params, x)?, e1 * ln_cosh(x) + e2 * ln_sinh(x)),
    };
    if phi == 0.0 {
        return Ok((0.0, f64::NEG_INFINITY));
    }
    Ok((phi.signum(), phi.abs().ln() + weight))
}

/// Radial factor of the holographic operator for `(lam1, lam2)` in
/// `Lambda_kind(lam)` on factors with `rho1 = (p'+q'-2)/2`, `rho2 = (p''+q''-2)/2`.
///
/// For `+-` this is `phi(t) (cosh t)^{lam1 - rho1} (sinh t)^{lam2 - rho2}`, for `-+`
/// the roles of the two factors are exchanged, and for `++` cosine and sine
/// replace the hyperbolic functions. The full kernel is a product of this value
/// with a function on the factors and vanishes outside the region.
pub fn holographic_radial(
    kind: LambdaKind,
    lam1: HalfInt,
    lam2: HalfInt,
    lam: HalfInt,
    rho1: HalfInt,
    rho2: HalfInt,
    param: f64,
) -> Result<f64> {
    let valid = match kind {
        LambdaKind::PlusPlus => param > 0.0 && param < std::f64::consts::FRAC_PI_2,
        _ => param > 0.0 && param.is_finite(),
    };
    if !valid {
        return Err(Error::domain("holographic_radial", format!("parameter {param} for region {kind}")));
    }
    let (params, e1, e2) = radial_shape(kind, lam1, lam2, lam, rho1, rho2)?;
    let (sign, ln) = radial_log(kind, &params, e1, e2, param)?;
    Ok(sign * ln.exp())
}

/// The invariant measure of the region in product coordinates, restricted to the
/// radial variable: `(cosh t)^{2 rho1 + 1} (sinh t)^{2 rho2 + 1} dt` for `+-`.
pub fn region_measure(kind: LambdaKind, rho1: HalfInt, rho2: HalfInt) -> RadialMeasure {
    match kind {
        LambdaKind::PlusMinus => RadialMeasure::new(rho1, rho2, RadialDomain::Hyperbolic),
        LambdaKind::MinusPlus => RadialMeasure::new(rho2, rho1, RadialDomain::Hyperbolic),
        LambdaKind::PlusPlus => RadialMeasure::new(rho1, rho2, RadialDomain::Compact),
    }
}

/// `int |holographic_radial|^2` against [`region_measure`].
pub fn radial_norm_squared(
    kind: LambdaKind,
    lam1: HalfInt,
    lam2: HalfInt,
    lam: HalfInt,
    rho1: HalfInt,
    rho2: HalfInt,
    tol: f64,
) -> Result<f64> {
    let (params, e1, e2) = radial_shape(kind, lam1, lam2, lam, rho1, rho2)?;
    let measure = region_measure(kind, rho1, rho2);
    let f = |x: f64| {
        let (_, ln) = radial_log(kind, &params, e1, e2, x)?;
        Ok((2.0 * ln + measure.ln_density(x)).exp())
    };
    match kind {
        LambdaKind::PlusPlus => Ok(integrate_adaptive(&f, 0.0, std::f64::consts::FRAC_PI_2, tol, 0.0)?.value),
        _ => Ok(integrate_half_line(&f, tol)?.0),
    }
}

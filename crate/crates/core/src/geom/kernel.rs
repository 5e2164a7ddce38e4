//! Filtered exact predicates.
//!
//! Every sign decision in the crate goes through this module. A predicate is
//! first evaluated in double precision while carrying a running absolute
//! error bound; when the bound does not separate the value from zero the
//! same polynomial is re-evaluated over arbitrary-precision integers.
//!
//! Besides plain input points the kernel understands two kinds of derived
//! points, both defined exactly in terms of input doubles:
//!
//! * the intersection of two lines, each given by two input points;
//! * a point `from + t * (to - from)` for an exactly representable `t`.
//!
//! Derived points are handled in homogeneous coordinates, so no division is
//! ever performed and no rounding is ever introduced into a decision.

use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{float::FloatCore, Signed, Zero};

use super::Point;

const UNIT: f64 = f64::EPSILON;

/// A double together with an upper bound on its distance to the exact value.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Approx {
    v: f64,
    e: f64,
}

impl Approx {
    #[inline]
    pub(crate) fn exact(v: f64) -> Self {
        Approx { v, e: 0.0 }
    }

    #[inline]
    pub(crate) fn value(self) -> f64 {
        self.v
    }

    /// Sign of the exact value, or `None` when the filter cannot decide.
    #[inline]
    pub(crate) fn sign(self) -> Option<i8> {
        if self.e == 0.0 {
            return Some(sign_f64(self.v));
        }
        if self.v.abs() > self.e * (1.0 + 1e-9) {
            Some(sign_f64(self.v))
        } else {
            None
        }
    }
}

#[inline]
fn sign_f64(v: f64) -> i8 {
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

impl Add for Approx {
    type Output = Approx;
    #[inline]
    fn add(self, o: Approx) -> Approx {
        let v = self.v + o.v;
        Approx {
            v,
            e: self.e + o.e + v.abs() * UNIT,
        }
    }
}

impl Sub for Approx {
    type Output = Approx;
    #[inline]
    fn sub(self, o: Approx) -> Approx {
        let v = self.v - o.v;
        Approx {
            v,
            e: self.e + o.e + v.abs() * UNIT,
        }
    }
}

impl Mul for Approx {
    type Output = Approx;
    #[inline]
    fn mul(self, o: Approx) -> Approx {
        let v = self.v * o.v;
        let mut e = self.v.abs() * o.e + o.v.abs() * self.e + self.e * o.e + v.abs() * UNIT;
        if v.abs() < f64::MIN_POSITIVE && self.v != 0.0 && o.v != 0.0 {
            // underflow
            e += f64::MIN_POSITIVE;
        }
        Approx { v, e }
    }
}

impl Neg for Approx {
    type Output = Approx;
    #[inline]
    fn neg(self) -> Approx {
        Approx {
            v: -self.v,
            e: self.e,
        }
    }
}

/// Arithmetic the predicate polynomials are generic over.
pub(crate) trait Arith:
    Sized + Clone + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    type Ctx;
    fn coord(ctx: &Self::Ctx, x: f64) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn along(ctx: &Self::Ctx, from: Point, to: Point, t: f64) -> [Self; 3];
    fn sign_of(&self) -> Option<i8>;
}

impl Arith for Approx {
    type Ctx = ();

    #[inline]
    fn coord(_: &(), x: f64) -> Self {
        Approx::exact(x)
    }

    #[inline]
    fn one(_: &()) -> Self {
        Approx::exact(1.0)
    }

    fn along(_: &(), from: Point, to: Point, t: f64) -> [Self; 3] {
        let t = Approx::exact(t);
        let fx = Approx::exact(from.x);
        let fy = Approx::exact(from.y);
        [
            fx + t * (Approx::exact(to.x) - fx),
            fy + t * (Approx::exact(to.y) - fy),
            Approx::exact(1.0),
        ]
    }

    #[inline]
    fn sign_of(&self) -> Option<i8> {
        self.sign()
    }
}

/// Exact integer arithmetic on coordinates scaled by a common power of two.
#[derive(Clone, Debug)]
pub(crate) struct Big(BigInt);

pub(crate) struct Scale {
    min_exp: i32,
}

impl Scale {
    fn new(values: impl IntoIterator<Item = f64>) -> Self {
        let min_exp = values
            .into_iter()
            .filter(|v| *v != 0.0)
            .map(|v| v.integer_decode().1 as i32)
            .min()
            .unwrap_or(0);
        Scale { min_exp }
    }

    fn int(&self, x: f64) -> BigInt {
        if x == 0.0 {
            return BigInt::zero();
        }
        let (mantissa, exp, sign) = x.integer_decode();
        let shift = (exp as i32 - self.min_exp) as usize;
        let m = BigInt::from(mantissa) << shift;
        if sign < 0 {
            -m
        } else {
            m
        }
    }
}

impl Add for Big {
    type Output = Big;
    fn add(self, o: Big) -> Big {
        Big(self.0 + o.0)
    }
}

impl Sub for Big {
    type Output = Big;
    fn sub(self, o: Big) -> Big {
        Big(self.0 - o.0)
    }
}

impl Mul for Big {
    type Output = Big;
    fn mul(self, o: Big) -> Big {
        Big(self.0 * o.0)
    }
}

impl Neg for Big {
    type Output = Big;
    fn neg(self) -> Big {
        Big(-self.0)
    }
}

impl Arith for Big {
    type Ctx = Scale;

    fn coord(ctx: &Scale, x: f64) -> Self {
        Big(ctx.int(x))
    }

    fn one(_: &Scale) -> Self {
        Big(BigInt::from(1))
    }

    fn along(ctx: &Scale, from: Point, to: Point, t: f64) -> [Self; 3] {
        let (fx, fy) = (ctx.int(from.x), ctx.int(from.y));
        let (dx, dy) = (ctx.int(to.x) - &fx, ctx.int(to.y) - &fy);
        if t == 0.0 {
            return [Big(fx), Big(fy), Big(BigInt::from(1))];
        }
        let (mantissa, exp, sign) = t.integer_decode();
        let mut tm = BigInt::from(mantissa);
        if sign < 0 {
            tm = -tm;
        }
        if exp >= 0 {
            let tm = tm << exp as usize;
            [Big(fx + &tm * dx), Big(fy + tm * dy), Big(BigInt::from(1))]
        } else {
            let den = BigInt::from(1) << (-exp) as usize;
            [
                Big(fx * &den + &tm * dx),
                Big(fy * &den + tm * dy),
                Big(den),
            ]
        }
    }

    fn sign_of(&self) -> Option<i8> {
        Some(if self.0.is_positive() {
            1
        } else if self.0.is_negative() {
            -1
        } else {
            0
        })
    }
}

/// How a point is defined in terms of input doubles.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SiteKind {
    /// An input point, exact as given.
    Free(Point),
    /// Intersection of line `l[0] l[1]` with line `l[2] l[3]`.
    Cross([Point; 4]),
    /// `from + t * (to - from)`.
    Along { from: Point, to: Point, t: f64 },
}

/// An exactly defined point with a cached floating-point image.
#[derive(Clone, Copy, Debug)]
pub struct Site {
    kind: SiteKind,
    h: [Approx; 3],
}

impl Site {
    pub fn free(p: Point) -> Site {
        Site::from_kind(SiteKind::Free(p))
    }

    /// Intersection of the line through `a0, a1` with the line through `b0, b1`.
    /// The caller guarantees the lines are not parallel.
    pub fn cross(a0: Point, a1: Point, b0: Point, b1: Point) -> Site {
        Site::from_kind(SiteKind::Cross([a0, a1, b0, b1]))
    }

    pub fn along(from: Point, to: Point, t: f64) -> Site {
        Site::from_kind(SiteKind::Along { from, to, t })
    }

    pub fn from_kind(kind: SiteKind) -> Site {
        let h = homog::<Approx>(&(), &kind);
        Site { kind, h }
    }

    pub fn kind(&self) -> &SiteKind {
        &self.kind
    }

    /// Floating-point approximation of the point.
    pub fn approx(&self) -> Point {
        match self.kind {
            SiteKind::Free(p) => p,
            _ => Point::new(
                self.h[0].value() / self.h[2].value(),
                self.h[1].value() / self.h[2].value(),
            ),
        }
    }

    /// A box certain to contain the exact point, or `None` when the
    /// homogeneous weight is too close to zero to bound it.
    pub fn enclosure(&self) -> Option<(Point, Point)> {
        if let SiteKind::Free(p) = self.kind {
            return Some((p, p));
        }
        let [x, y, w] = self.h;
        let wlo = w.v.abs() - w.e;
        if wlo <= 0.0 {
            return None;
        }
        let pad = |c: Approx| {
            // |c/w - c~/w~| <= (|c~| e_w + |w~| e_c) / (|w~| (|w~| - e_w)), padded
            // for the rounding of this very bound.
            (c.v.abs() * w.e + w.v.abs() * c.e) / (w.v.abs() * wlo) * (1.0 + 1e-6)
                + 4.0 * UNIT * (c.v / w.v).abs()
        };
        let (cx, cy) = (x.v / w.v, y.v / w.v);
        let (px, py) = (pad(x), pad(y));
        if !(px.is_finite() && py.is_finite()) {
            return None;
        }
        Some((Point::new(cx - px, cy - py), Point::new(cx + px, cy + py)))
    }

    pub fn as_free(&self) -> Option<Point> {
        match self.kind {
            SiteKind::Free(p) => Some(p),
            _ => None,
        }
    }

    fn coords(&self, out: &mut Vec<f64>) {
        match &self.kind {
            SiteKind::Free(p) => out.extend([p.x, p.y]),
            SiteKind::Cross(ps) => ps.iter().for_each(|p| out.extend([p.x, p.y])),
            SiteKind::Along { from, to, .. } => out.extend([from.x, from.y, to.x, to.y]),
        }
    }
}

impl From<Point> for Site {
    fn from(p: Point) -> Site {
        Site::free(p)
    }
}

fn homog<T: Arith>(ctx: &T::Ctx, kind: &SiteKind) -> [T; 3] {
    match kind {
        SiteKind::Free(p) => [T::coord(ctx, p.x), T::coord(ctx, p.y), T::one(ctx)],
        SiteKind::Cross([a0, a1, b0, b1]) => {
            let (la, lb, lc) = line_coeffs::<T>(ctx, *a0, *a1);
            let (ma, mb, mc) = line_coeffs::<T>(ctx, *b0, *b1);
            let x = lb.clone() * mc.clone() - mb.clone() * lc.clone();
            let y = lc * ma.clone() - mc * la.clone();
            let w = la * mb - ma * lb;
            [x, y, w]
        }
        SiteKind::Along { from, to, t } => T::along(ctx, *from, *to, *t),
    }
}

fn line_coeffs<T: Arith>(ctx: &T::Ctx, p: Point, q: Point) -> (T, T, T) {
    let (px, py) = (T::coord(ctx, p.x), T::coord(ctx, p.y));
    let (qx, qy) = (T::coord(ctx, q.x), T::coord(ctx, q.y));
    let a = qy.clone() - py.clone();
    let b = px.clone() - qx.clone();
    let c = qx * py - px * qy;
    (a, b, c)
}

fn orient_free<T: Arith>(ctx: &T::Ctx, a: Point, b: Point, c: Point) -> T {
    let (ax, ay) = (T::coord(ctx, a.x), T::coord(ctx, a.y));
    let bx = T::coord(ctx, b.x) - ax.clone();
    let by = T::coord(ctx, b.y) - ay.clone();
    let cx = T::coord(ctx, c.x) - ax;
    let cy = T::coord(ctx, c.y) - ay;
    bx * cy - by * cx
}

fn det3<T: Arith>(p: &[T; 3], q: &[T; 3], r: &[T; 3]) -> T {
    let m0 = q[1].clone() * r[2].clone() - r[1].clone() * q[2].clone();
    let m1 = q[0].clone() * r[2].clone() - r[0].clone() * q[2].clone();
    let m2 = q[0].clone() * r[1].clone() - r[0].clone() * q[1].clone();
    p[0].clone() * m0 - p[1].clone() * m1 + p[2].clone() * m2
}

fn orient_homog<T: Arith>(p: &[T; 3], q: &[T; 3], r: &[T; 3]) -> Option<i8> {
    let d = det3(p, q, r).sign_of()?;
    let s = p[2].sign_of()? * q[2].sign_of()? * r[2].sign_of()?;
    Some(d * s)
}

fn dot_homog<T: Arith>(a: &[T; 3], b: &[T; 3], c: &[T; 3]) -> Option<i8> {
    let ux = b[0].clone() * a[2].clone() - a[0].clone() * b[2].clone();
    let uy = b[1].clone() * a[2].clone() - a[1].clone() * b[2].clone();
    let vx = c[0].clone() * a[2].clone() - a[0].clone() * c[2].clone();
    let vy = c[1].clone() * a[2].clone() - a[1].clone() * c[2].clone();
    let d = (ux * vx + uy * vy).sign_of()?;
    Some(d * b[2].sign_of()? * c[2].sign_of()?)
}

fn scale_for(sites: &[&Site]) -> Scale {
    let mut coords = Vec::with_capacity(24);
    for s in sites {
        s.coords(&mut coords);
    }
    Scale::new(coords)
}

fn to_ordering(s: i8) -> Ordering {
    s.cmp(&0)
}

/// Sign of the signed area of `a b c` for plain points: `Greater` when
/// counter-clockwise.
pub fn orient_points(a: Point, b: Point, c: Point) -> Ordering {
    if let Some(s) = orient_free::<Approx>(&(), a, b, c).sign() {
        return to_ordering(s);
    }
    let ctx = Scale::new([a.x, a.y, b.x, b.y, c.x, c.y]);
    let s = orient_free::<Big>(&ctx, a, b, c).sign_of().unwrap_or(0);
    to_ordering(s)
}

/// Sign of the signed area of `a b c` for arbitrary sites.
pub fn orient_sites(a: &Site, b: &Site, c: &Site) -> Ordering {
    if let (Some(pa), Some(pb), Some(pc)) = (a.as_free(), b.as_free(), c.as_free()) {
        return orient_points(pa, pb, pc);
    }
    if let Some(s) = orient_homog(&a.h, &b.h, &c.h) {
        return to_ordering(s);
    }
    let ctx = scale_for(&[a, b, c]);
    let ha = homog::<Big>(&ctx, &a.kind);
    let hb = homog::<Big>(&ctx, &b.kind);
    let hc = homog::<Big>(&ctx, &c.kind);
    to_ordering(orient_homog(&ha, &hb, &hc).unwrap_or(0))
}

/// Sign of the dot product `(b - a) . (c - a)`.
pub fn dot_sites(a: &Site, b: &Site, c: &Site) -> Ordering {
    if let Some(s) = dot_homog(&a.h, &b.h, &c.h) {
        return to_ordering(s);
    }
    let ctx = scale_for(&[a, b, c]);
    let ha = homog::<Big>(&ctx, &a.kind);
    let hb = homog::<Big>(&ctx, &b.kind);
    let hc = homog::<Big>(&ctx, &c.kind);
    to_ordering(dot_homog(&ha, &hb, &hc).unwrap_or(0))
}

/// Exact coincidence test.
pub fn same_site(a: &Site, b: &Site) -> bool {
    cmp_coord(a, b, 0) == Ordering::Equal && cmp_coord(a, b, 1) == Ordering::Equal
}

/// Exact comparison of the x (axis 0) or y (axis 1) coordinate of two sites.
pub fn cmp_coord(a: &Site, b: &Site, axis: usize) -> Ordering {
    if let (Some(pa), Some(pb)) = (a.as_free(), b.as_free()) {
        let (u, v) = if axis == 0 { (pa.x, pb.x) } else { (pa.y, pb.y) };
        return u.partial_cmp(&v).unwrap_or(Ordering::Equal);
    }
    fn go<T: Arith>(a: &[T; 3], b: &[T; 3], axis: usize) -> Option<i8> {
        // a_k / a_w - b_k / b_w, scaled by a_w * b_w.
        let d = a[axis].clone() * b[2].clone() - b[axis].clone() * a[2].clone();
        Some(d.sign_of()? * a[2].sign_of()? * b[2].sign_of()?)
    }
    if let Some(s) = go(&a.h, &b.h, axis) {
        return to_ordering(s);
    }
    let ctx = scale_for(&[a, b]);
    let ha = homog::<Big>(&ctx, &a.kind);
    let hb = homog::<Big>(&ctx, &b.kind);
    to_ordering(go(&ha, &hb, axis).unwrap_or(0))
}

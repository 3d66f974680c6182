//! Exact rational geometry: orientation, lines, segments and hull chains.
//!
//! Every predicate in this module is decided with arbitrary-precision rational
//! arithmetic. Nothing here rounds.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact rational coordinate. Always stored in lowest terms with a positive
/// denominator.
pub type Scalar = BigRational;

/// Builds the scalar `num/den`. Panics if `den == 0`.
pub fn scalar(num: i64, den: i64) -> Scalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds the integer scalar `n`.
pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("two points share the x-coordinate {0}")]
    DuplicateX(Scalar),
    #[error("x = {0} lies outside the chain's x-span")]
    OutOfSpan(Scalar),
    #[error("query point lies inside the hull region; no tangent exists")]
    DegenerateTangent,
    #[error("triangle corners are collinear")]
    DegenerateTriangle,
    #[error("collinear triple met where general position is required")]
    Collinear,
    #[error("empty point set")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Scalar,
    pub y: Scalar,
}

impl Point {
    pub fn new(x: Scalar, y: Scalar) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(int(x), int(y))
    }

    /// Mirror image under `x -> -x`.
    pub fn reflect_x(&self) -> Point {
        Point::new(-&self.x, self.y.clone())
    }

    /// Mirror image under `y -> -y`.
    pub fn reflect_y(&self) -> Point {
        Point::new(self.x.clone(), -&self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Left,
    Right,
    Collinear,
}

impl Orientation {
    pub fn reversed(self) -> Orientation {
        match self {
            Orientation::Left => Orientation::Right,
            Orientation::Right => Orientation::Left,
            Orientation::Collinear => Orientation::Collinear,
        }
    }
}

/// Sign of the determinant of `(q - p, r - p)`; `Left` is counter-clockwise.
pub fn orientation(p: &Point, q: &Point, r: &Point) -> Orientation {
    match cross_sign(p, q, p, r) {
        Ordering::Greater => Orientation::Left,
        Ordering::Less => Orientation::Right,
        Ordering::Equal => Orientation::Collinear,
    }
}

/// Sign of the cross product `(b - a) x (d - c)`. For `a` left of `b` and
/// `c` left of `d` it is `Greater` exactly when `ab` is less steep than `cd`.
pub fn cross_sign(a: &Point, b: &Point, c: &Point, d: &Point) -> Ordering {
    let v = [&a.x, &a.y, &b.x, &b.y, &c.x, &c.y, &d.x, &d.y];
    if v.iter().all(|s| s.denom().is_one()) {
        let n = v.map(|s| s.numer());
        let small = n.map(|k| k.to_i64().map(i128::from));
        if small.iter().all(Option::is_some) {
            let k = small.map(|k| k.unwrap_or_default());
            let l = (k[2] - k[0]).checked_mul(k[7] - k[5]);
            let r = (k[3] - k[1]).checked_mul(k[6] - k[4]);
            if let (Some(l), Some(r)) = (l, r) {
                return l.cmp(&r);
            }
        }
        let det = (n[2] - n[0]) * (n[7] - n[5]) - (n[3] - n[1]) * (n[6] - n[4]);
        return det.sign().cmp(&Sign::NoSign);
    }
    let det = (&b.x - &a.x) * (&d.y - &c.y) - (&b.y - &a.y) * (&d.x - &c.x);
    det.cmp(&Scalar::zero())
}

/// A non-vertical line `y = slope * x + intercept`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Line {
    pub slope: Scalar,
    pub intercept: Scalar,
}

impl Line {
    pub fn new(slope: Scalar, intercept: Scalar) -> Self {
        Line { slope, intercept }
    }

    /// Line through two points. `None` when they share an x-coordinate.
    pub fn through(p: &Point, q: &Point) -> Option<Line> {
        if p.x == q.x {
            return None;
        }
        let slope = (&q.y - &p.y) / (&q.x - &p.x);
        let intercept = &p.y - &slope * &p.x;
        Some(Line { slope, intercept })
    }

    /// Line through `p` with the given slope.
    pub fn with_slope(p: &Point, slope: Scalar) -> Line {
        let intercept = &p.y - &slope * &p.x;
        Line { slope, intercept }
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        &self.slope * x + &self.intercept
    }

    pub fn reflect_x(&self) -> Line {
        Line::new(-&self.slope, self.intercept.clone())
    }

    pub fn reflect_y(&self) -> Line {
        Line::new(-&self.slope, -&self.intercept)
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y = {}x + {}", self.slope, self.intercept)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LineSide {
    Above,
    Below,
    On,
}

pub fn side_of_line(pt: &Point, ln: &Line) -> LineSide {
    match pt.y.cmp(&ln.eval(&pt.x)) {
        Ordering::Greater => LineSide::Above,
        Ordering::Less => LineSide::Below,
        Ordering::Equal => LineSide::On,
    }
}

/// Closed segment between two points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Self {
        Segment { a, b }
    }
}

fn on_segment_bbox(p: &Point, s: &Segment) -> bool {
    let (xlo, xhi) = if s.a.x <= s.b.x { (&s.a.x, &s.b.x) } else { (&s.b.x, &s.a.x) };
    let (ylo, yhi) = if s.a.y <= s.b.y { (&s.a.y, &s.b.y) } else { (&s.b.y, &s.a.y) };
    xlo <= &p.x && &p.x <= xhi && ylo <= &p.y && &p.y <= yhi
}

/// True iff the closed segments share at least one point.
pub fn segments_intersect(s1: &Segment, s2: &Segment) -> bool {
    let o1 = orientation(&s1.a, &s1.b, &s2.a);
    let o2 = orientation(&s1.a, &s1.b, &s2.b);
    let o3 = orientation(&s2.a, &s2.b, &s1.a);
    let o4 = orientation(&s2.a, &s2.b, &s1.b);

    if o1 != o2
        && o3 != o4
        && o1 != Orientation::Collinear
        && o2 != Orientation::Collinear
        && o3 != Orientation::Collinear
        && o4 != Orientation::Collinear
    {
        return true;
    }
    (o1 == Orientation::Collinear && on_segment_bbox(&s2.a, s1))
        || (o2 == Orientation::Collinear && on_segment_bbox(&s2.b, s1))
        || (o3 == Orientation::Collinear && on_segment_bbox(&s1.a, s2))
        || (o4 == Orientation::Collinear && on_segment_bbox(&s1.b, s2))
}

/// True iff the (infinite) line meets the closed segment.
pub fn line_meets_segment(ln: &Line, s: &Segment) -> bool {
    let sa = side_of_line(&s.a, ln);
    let sb = side_of_line(&s.b, ln);
    sa == LineSide::On || sb == LineSide::On || sa != sb
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HullSide {
    Upper,
    Lower,
}

/// An x-monotone convex chain. Upper chains bound the convex hull of the
/// downward rays from their generating points; lower chains bound the hull of
/// the upward rays.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HullChain {
    pub side: HullSide,
    pub vertices: Vec<Point>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum OnCollinear {
    /// Collinear middle points are not vertices.
    Drop,
    /// A collinear triple on the scan is a general-position violation.
    Reject,
}

/// Monotone scan over points already sorted strictly by x. Returns the
/// positions of the chain vertices.
pub(crate) fn monotone_chain<P: std::borrow::Borrow<Point>>(
    sorted: &[P],
    side: HullSide,
    policy: OnCollinear,
) -> Result<Vec<usize>, KernelError> {
    let keep = match side {
        HullSide::Upper => Orientation::Right,
        HullSide::Lower => Orientation::Left,
    };
    let mut stack: Vec<usize> = Vec::with_capacity(sorted.len().min(64));
    for (i, pt) in sorted.iter().enumerate() {
        let pt = pt.borrow();
        if i > 0 && sorted[i - 1].borrow().x == pt.x {
            return Err(KernelError::DuplicateX(pt.x.clone()));
        }
        while stack.len() >= 2 {
            let a = sorted[stack[stack.len() - 2]].borrow();
            let b = sorted[stack[stack.len() - 1]].borrow();
            let o = orientation(a, b, pt);
            if o == keep {
                break;
            }
            if o == Orientation::Collinear && policy == OnCollinear::Reject {
                return Err(KernelError::Collinear);
            }
            stack.pop();
        }
        stack.push(i);
    }
    Ok(stack)
}

fn sorted_by_x(pts: &[Point]) -> Result<Vec<Point>, KernelError> {
    if pts.is_empty() {
        return Err(KernelError::Empty);
    }
    let mut v = pts.to_vec();
    v.sort_by(|a, b| a.x.cmp(&b.x));
    for w in v.windows(2) {
        if w[0].x == w[1].x {
            return Err(KernelError::DuplicateX(w[0].x.clone()));
        }
    }
    Ok(v)
}

fn hull(pts: &[Point], side: HullSide) -> Result<HullChain, KernelError> {
    let sorted = sorted_by_x(pts)?;
    let idx = monotone_chain(&sorted, side, OnCollinear::Drop)?;
    Ok(HullChain { side, vertices: idx.into_iter().map(|i| sorted[i].clone()).collect() })
}

pub fn upper_hull(pts: &[Point]) -> Result<HullChain, KernelError> {
    hull(pts, HullSide::Upper)
}

pub fn lower_hull(pts: &[Point]) -> Result<HullChain, KernelError> {
    hull(pts, HullSide::Lower)
}

/// Convex layers obtained by repeated peeling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HullLayers {
    /// Layer 0 is the outermost chain.
    pub layers: Vec<HullChain>,
    /// `assignment[i]` is the layer holding input point `i`.
    pub assignment: Vec<usize>,
}

pub fn hull_layers(pts: &[Point], side: HullSide) -> Result<HullLayers, KernelError> {
    if pts.is_empty() {
        return Ok(HullLayers { layers: Vec::new(), assignment: Vec::new() });
    }
    sorted_by_x(pts)?;
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by(|&a, &b| pts[a].x.cmp(&pts[b].x));

    let mut assignment = vec![usize::MAX; pts.len()];
    let mut layers = Vec::new();
    let mut remaining = order;
    while !remaining.is_empty() {
        let refs: Vec<&Point> = remaining.iter().map(|&i| &pts[i]).collect();
        let chain = monotone_chain(&refs, side, OnCollinear::Drop)?;
        let layer_no = layers.len();
        let mut vertices = Vec::with_capacity(chain.len());
        for &pos in &chain {
            assignment[remaining[pos]] = layer_no;
            vertices.push(pts[remaining[pos]].clone());
        }
        layers.push(HullChain { side, vertices });
        remaining.retain(|&i| assignment[i] == usize::MAX);
    }
    Ok(HullLayers { layers, assignment })
}

impl HullChain {
    pub fn x_span(&self) -> Option<(&Scalar, &Scalar)> {
        Some((&self.vertices.first()?.x, &self.vertices.last()?.x))
    }

    pub fn reflect_y(&self) -> HullChain {
        HullChain {
            side: match self.side {
                HullSide::Upper => HullSide::Lower,
                HullSide::Lower => HullSide::Upper,
            },
            vertices: self.vertices.iter().map(Point::reflect_y).collect(),
        }
    }

    pub fn reflect_x(&self) -> HullChain {
        HullChain { side: self.side, vertices: self.vertices.iter().rev().map(Point::reflect_x).collect() }
    }
}

/// Exact height of the chain's boundary at `x`.
pub fn chain_eval(chain: &HullChain, x: &Scalar) -> Result<Scalar, KernelError> {
    let v = &chain.vertices;
    let (lo, hi) = chain.x_span().ok_or(KernelError::Empty)?;
    if x < lo || x > hi {
        return Err(KernelError::OutOfSpan(x.clone()));
    }
    // first vertex with vertex.x >= x
    let k = v.partition_point(|p| &p.x < x);
    if v[k].x == *x {
        return Ok(v[k].y.clone());
    }
    let (a, b) = (&v[k - 1], &v[k]);
    let t = (x - &a.x) / (&b.x - &a.x);
    Ok(&a.y + t * (&b.y - &a.y))
}

/// Membership in the hull region: weakly below an upper chain or weakly
/// above a lower chain, within the chain's x-span.
pub fn region_contains(chain: &HullChain, pt: &Point) -> bool {
    match chain_eval(chain, &pt.x) {
        Ok(y) => match chain.side {
            HullSide::Upper => pt.y <= y,
            HullSide::Lower => pt.y >= y,
        },
        Err(_) => false,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tangent {
    pub line: Line,
    /// The touched vertex, or both ends of a touched edge.
    pub touch: Vec<Point>,
}

/// Tangent through `q` leaving the whole chain weakly on its region side.
///
/// For a query left or right of the x-span the tangent is unique and found by
/// binary search. For a query strictly inside the span (and outside the
/// region) the minimum-slope tangent is returned.
pub fn tangent_from_point(q: &Point, chain: &HullChain) -> Result<Tangent, KernelError> {
    match chain.side {
        HullSide::Lower => lower_tangent(q, &chain.vertices),
        HullSide::Upper => {
            // y -> -y turns an upper chain into a lower one; the minimum-slope
            // tangent maps to the maximum-slope one, so reflect x as well.
            let mirrored: Vec<Point> = chain.vertices.iter().rev().map(|p| Point::new(-&p.x, -&p.y)).collect();
            let mq = Point::new(-&q.x, -&q.y);
            let t = lower_tangent(&mq, &mirrored)?;
            Ok(Tangent {
                line: Line::new(t.line.slope.clone(), -&t.line.intercept),
                touch: t.touch.iter().map(|p| Point::new(-&p.x, -&p.y)).collect(),
            })
        }
    }
}

fn lower_tangent(q: &Point, v: &[Point]) -> Result<Tangent, KernelError> {
    if v.is_empty() {
        return Err(KernelError::Empty);
    }
    let chain = HullChain { side: HullSide::Lower, vertices: v.to_vec() };
    if region_contains(&chain, q) {
        return Err(KernelError::DegenerateTangent);
    }
    let first = &v[0];
    let last = &v[v.len() - 1];
    if q.x < first.x {
        // slopes from q are unimodal along the chain
        let m = v.len() - 1;
        let i = first_true(m, |i| orientation(q, &v[i], &v[i + 1]) != Orientation::Right);
        let mut touch = vec![v[i].clone()];
        if i < m && orientation(q, &v[i], &v[i + 1]) == Orientation::Collinear {
            touch.push(v[i + 1].clone());
        }
        let line = Line::through(q, &v[i]).expect("distinct x");
        return Ok(Tangent { line, touch });
    }
    if q.x > last.x {
        let mirrored: Vec<Point> = v.iter().rev().map(Point::reflect_x).collect();
        let t = lower_tangent(&q.reflect_x(), &mirrored)?;
        return Ok(Tangent { line: t.line.reflect_x(), touch: t.touch.iter().rev().map(Point::reflect_x).collect() });
    }
    // q strictly below the chain inside the span: the smallest admissible
    // slope is the largest slope towards a vertex on the left.
    let mut best: Option<(Scalar, Vec<Point>)> = None;
    for p in v.iter().filter(|p| p.x < q.x) {
        let s = (&p.y - &q.y) / (&p.x - &q.x);
        match &mut best {
            Some((bs, touch)) if *bs == s => touch.push(p.clone()),
            Some((bs, _)) if *bs > s => {}
            _ => best = Some((s, vec![p.clone()])),
        }
    }
    match best {
        Some((s, touch)) => Ok(Tangent { line: Line::with_slope(q, s), touch }),
        None => {
            // q.x equals the first vertex's x and q lies below it
            Err(KernelError::DegenerateTangent)
        }
    }
}

/// Smallest `i` in `0..n` with `pred(i)`, or `n`; `pred` must be monotone.
fn first_true(n: usize, pred: impl Fn(usize) -> bool) -> usize {
    let (mut lo, mut hi) = (0, n);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

/// Strict interior test.
pub fn point_in_triangle_interior(pt: &Point, a: &Point, b: &Point, c: &Point) -> Result<bool, KernelError> {
    let o = orientation(a, b, c);
    if o == Orientation::Collinear {
        return Err(KernelError::DegenerateTriangle);
    }
    Ok(orientation(a, b, pt) == o && orientation(b, c, pt) == o && orientation(c, a, pt) == o)
}

/// Midpoint of two scalars.
pub fn midpoint(a: &Scalar, b: &Scalar) -> Scalar {
    (a + b) / int(2)
}

pub fn abs(a: &Scalar) -> Scalar {
    a.abs()
}

pub fn is_one(a: &Scalar) -> bool {
    a.is_one()
}

pub fn is_zero(a: &Scalar) -> bool {
    a.is_zero()
}

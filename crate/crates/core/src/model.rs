//! Half-plane instances, general-position repair, and the half-plane/ray
//! duality together with the symmetry transforms used by the engine.
//!
//! Convention: the primal point `(c, d)` is dual to the line `y = c*x + d`,
//! and the boundary `y = a*x + b` is dual to the tip `(-a, b)`. An upper
//! half-plane (`y <= a*x + b`) becomes a downward ray from its tip, a lower
//! one an upward ray. A primal point lies in a half-plane iff its dual line
//! meets the half-plane's ray.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::kernel::{int, Line, Point, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    /// `y <= a*x + b`
    Upper,
    /// `y >= a*x + b`
    Lower,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Upper => Side::Lower,
            Side::Lower => Side::Upper,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HalfPlane {
    pub a: Scalar,
    pub b: Scalar,
    pub side: Side,
}

impl HalfPlane {
    pub fn new(a: Scalar, b: Scalar, side: Side) -> Self {
        HalfPlane { a, b, side }
    }

    pub fn upper(a: Scalar, b: Scalar) -> Self {
        HalfPlane::new(a, b, Side::Upper)
    }

    pub fn lower(a: Scalar, b: Scalar) -> Self {
        HalfPlane::new(a, b, Side::Lower)
    }

    pub fn boundary(&self) -> Line {
        Line::new(self.a.clone(), self.b.clone())
    }

    /// Closed containment.
    pub fn contains(&self, pt: &Point) -> bool {
        let v = &self.a * &pt.x + &self.b;
        match self.side {
            Side::Upper => pt.y <= v,
            Side::Lower => pt.y >= v,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Instance {
    pub halfplanes: Vec<HalfPlane>,
}

impl Instance {
    pub fn new(halfplanes: Vec<HalfPlane>) -> Self {
        Instance { halfplanes }
    }

    pub fn len(&self) -> usize {
        self.halfplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.halfplanes.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Blue,
    Red,
}

impl Color {
    pub fn swapped(self) -> Color {
        match self {
            Color::Blue => Color::Red,
            Color::Red => Color::Blue,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Color::Blue => "blue",
            Color::Red => "red",
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One colour per half-plane, aligned with [`Instance::halfplanes`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Coloring {
    pub colors: Vec<Color>,
}

impl Coloring {
    pub fn new(colors: Vec<Color>) -> Self {
        Coloring { colors }
    }

    pub fn uniform(n: usize, c: Color) -> Self {
        Coloring { colors: vec![c; n] }
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn swapped(&self) -> Coloring {
        Coloring { colors: self.colors.iter().map(|c| c.swapped()).collect() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("half-planes {0} and {1} have parallel boundaries")]
    ParallelBoundaries(usize, usize),
}

/// Every general-position violation of an instance.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GeneralPositionReport {
    /// Pairs with identical `(a, b, side)`.
    pub duplicates: Vec<(usize, usize)>,
    /// Pairs with equal slopes that are not exact duplicates.
    pub parallel: Vec<(usize, usize)>,
    /// Sets of three or more boundaries through one common point, each set
    /// listed once in increasing index order.
    pub concurrent: Vec<Vec<usize>>,
}

impl GeneralPositionReport {
    pub fn is_clean(&self) -> bool {
        self.duplicates.is_empty() && self.parallel.is_empty() && self.concurrent.is_empty()
    }
}

pub fn validate(inst: &Instance) -> GeneralPositionReport {
    let hp = &inst.halfplanes;
    let mut report = GeneralPositionReport::default();

    let mut by_slope: HashMap<&Scalar, Vec<usize>> = HashMap::new();
    for (i, h) in hp.iter().enumerate() {
        by_slope.entry(&h.a).or_default().push(i);
    }
    let mut pairs = Vec::new();
    for group in by_slope.values() {
        for (x, &i) in group.iter().enumerate() {
            for &j in &group[x + 1..] {
                pairs.push((i.min(j), i.max(j)));
            }
        }
    }
    pairs.sort_unstable();
    for (i, j) in pairs {
        if hp[i] == hp[j] {
            report.duplicates.push((i, j));
        } else {
            report.parallel.push((i, j));
        }
    }

    // Boundaries y = a x + b through a common point are exactly the
    // collinear (a, b) pairs with distinct a.
    let mut sets = BTreeSet::new();
    for i in 0..hp.len() {
        let mut by_dir: HashMap<Scalar, Vec<usize>> = HashMap::new();
        for j in 0..hp.len() {
            if j == i || hp[j].a == hp[i].a {
                continue;
            }
            let dir = (&hp[j].b - &hp[i].b) / (&hp[j].a - &hp[i].a);
            by_dir.entry(dir).or_default().push(j);
        }
        for group in by_dir.into_values() {
            if group.len() >= 2 && group.iter().all(|&j| j > i) {
                let mut set = group;
                set.push(i);
                set.sort_unstable();
                sets.insert(set);
            }
        }
    }
    report.concurrent = sets.into_iter().collect();
    report
}

fn magnitude_bound(inst: &Instance) -> BigInt {
    let mut m = BigInt::one();
    for h in &inst.halfplanes {
        for s in [&h.a, &h.b] {
            let num = s.numer().abs();
            if num > m {
                m = num;
            }
            if *s.denom() > m {
                m = s.denom().clone();
            }
        }
    }
    m
}

/// Exponent of the base perturbation step `1 / (2 (1 + M))^k`.
const PERTURB_EXPONENT: u32 = 12;

/// Deterministic general-position repair.
///
/// Returns the input unchanged when it is already in general position and
/// `attempt == 0`. Otherwise half-plane `i` is pushed outwards by
/// `t + i^2 t^2 / (n + 1)^2` (its boundary moves away from its interior) and
/// its slope is tilted by `i t^2 / (n + 1)`, where `t = delta * 2^-attempt` and
/// `delta = 1 / (2 (1 + M))^12` for the largest numerator or denominator
/// `M` in the input. Enlarging keeps every covering set of the original
/// arrangement, so a colouring that is good for the output is good for the
/// input once `t` is small enough.
pub fn perturb(inst: &Instance, attempt: u32) -> Instance {
    if attempt == 0 && validate(inst).is_clean() {
        return inst.clone();
    }
    perturb_unchecked(inst, attempt)
}

pub(crate) fn perturb_unchecked(inst: &Instance, attempt: u32) -> Instance {
    let m = magnitude_bound(inst);
    let base: BigInt = (BigInt::one() + m) * 2;
    let mut den = num_traits::pow(base, PERTURB_EXPONENT as usize);
    den <<= attempt as usize;
    let t = BigRational::new(BigInt::one(), den);
    let m1 = int(inst.len() as i64 + 1);
    let tilt = &t * &t / &m1;
    let lift = &tilt / &m1;
    let halfplanes = inst
        .halfplanes
        .iter()
        .enumerate()
        .map(|(i, h)| {
            let a = &h.a + &tilt * int(i as i64);
            let shift = &t + &lift * int((i * i) as i64);
            let b = match h.side {
                Side::Upper => &h.b + shift,
                Side::Lower => &h.b - shift,
            };
            HalfPlane::new(a, b, h.side)
        })
        .collect();
    Instance { halfplanes }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Transform {
    XFlip,
    YFlip,
    ColorSwap,
}

/// A ray tip together with the index of the half-plane it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tip {
    pub pt: Point,
    pub src: usize,
}

/// The dual picture of an instance. Both families are kept sorted by x.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DualScene {
    /// Tips of downward rays.
    pub upper: Vec<Tip>,
    /// Tips of upward rays.
    pub lower: Vec<Tip>,
    pub log: Vec<Transform>,
}

/// Builds the dual scene. Needs pairwise distinct slopes; collinear tips are
/// detected later by the predicates that meet them.
pub fn dualize(inst: &Instance) -> Result<DualScene, ModelError> {
    let mut order: Vec<usize> = (0..inst.len()).collect();
    order.sort_by(|&i, &j| inst.halfplanes[j].a.cmp(&inst.halfplanes[i].a).then(i.cmp(&j)));
    for w in order.windows(2) {
        if inst.halfplanes[w[0]].a == inst.halfplanes[w[1]].a {
            return Err(ModelError::ParallelBoundaries(w[0].min(w[1]), w[0].max(w[1])));
        }
    }
    let mut scene = DualScene::default();
    for i in order {
        let h = &inst.halfplanes[i];
        let tip = Tip { pt: Point::new(-&h.a, h.b.clone()), src: i };
        match h.side {
            Side::Upper => scene.upper.push(tip),
            Side::Lower => scene.lower.push(tip),
        }
    }
    Ok(scene)
}

impl DualScene {
    pub fn len(&self) -> usize {
        self.upper.len() + self.lower.len()
    }

    pub fn is_empty(&self) -> bool {
        self.upper.is_empty() && self.lower.is_empty()
    }

    pub fn tips_u(&self) -> impl Iterator<Item = &Point> {
        self.upper.iter().map(|t| &t.pt)
    }

    pub fn tips_l(&self) -> impl Iterator<Item = &Point> {
        self.lower.iter().map(|t| &t.pt)
    }

    /// Left-right mirror. Families keep their roles.
    pub fn x_flip(&self) -> DualScene {
        let flip =
            |v: &[Tip]| -> Vec<Tip> { v.iter().rev().map(|t| Tip { pt: t.pt.reflect_x(), src: t.src }).collect() };
        let mut log = self.log.clone();
        log.push(Transform::XFlip);
        DualScene { upper: flip(&self.upper), lower: flip(&self.lower), log }
    }

    /// Up-down mirror. Downward rays become upward rays, so the families
    /// trade places.
    pub fn y_flip(&self) -> DualScene {
        let flip = |v: &[Tip]| -> Vec<Tip> { v.iter().map(|t| Tip { pt: t.pt.reflect_y(), src: t.src }).collect() };
        let mut log = self.log.clone();
        log.push(Transform::YFlip);
        DualScene { upper: flip(&self.lower), lower: flip(&self.upper), log }
    }

    /// Keeps only the tips accepted by the predicate.
    pub fn filtered(
        &self,
        mut keep_upper: impl FnMut(&Tip) -> bool,
        mut keep_lower: impl FnMut(&Tip) -> bool,
    ) -> DualScene {
        DualScene {
            upper: self.upper.iter().filter(|t| keep_upper(t)).cloned().collect(),
            lower: self.lower.iter().filter(|t| keep_lower(t)).cloned().collect(),
            log: self.log.clone(),
        }
    }
}

/// Re-expresses a colouring computed on a transformed scene in terms of the
/// original instance. Flips do not touch colours; every `ColorSwap` inverts
/// all of them.
pub fn pull_back(coloring: &Coloring, log: &[Transform]) -> Coloring {
    let swaps = log.iter().filter(|t| **t == Transform::ColorSwap).count();
    if swaps % 2 == 1 {
        coloring.swapped()
    } else {
        coloring.clone()
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::kernel::{orientation, Orientation};

    fn hp(a: i64, b: i64, side: Side) -> HalfPlane {
        HalfPlane::new(int(a), int(b), side)
    }

    pub(crate) fn i3() -> Instance {
        Instance::new(vec![hp(1, 0, Side::Upper), hp(-1, 2, Side::Upper), hp(0, 0, Side::Lower)])
    }

    #[test]
    fn validate_examples() {
        assert!(validate(&i3()).is_clean());

        let par = Instance::new(vec![hp(1, 0, Side::Upper), hp(1, 3, Side::Lower)]);
        assert_eq!(validate(&par).parallel, vec![(0, 1)]);

        let conc = Instance::new(vec![hp(1, 0, Side::Upper), hp(-1, 0, Side::Upper), hp(0, 0, Side::Lower)]);
        assert_eq!(validate(&conc).concurrent, vec![vec![0, 1, 2]]);

        let dup = Instance::new(vec![hp(2, 1, Side::Upper), hp(2, 1, Side::Upper)]);
        let r = validate(&dup);
        assert_eq!(r.duplicates, vec![(0, 1)]);
        assert!(r.parallel.is_empty());
    }

    #[test]
    fn perturb_examples() {
        assert_eq!(perturb(&i3(), 0), i3());

        let par = Instance::new(vec![hp(1, 0, Side::Upper), hp(1, 3, Side::Lower)]);
        let p = perturb(&par, 0);
        assert_ne!(p.halfplanes[0].a, p.halfplanes[1].a);
        assert_eq!(p.halfplanes[1].side, Side::Lower);

        let conc = Instance::new(vec![hp(1, 0, Side::Upper), hp(-1, 0, Side::Upper), hp(0, 0, Side::Lower)]);
        assert!(validate(&perturb(&conc, 0)).is_clean());
        assert!(validate(&perturb(&conc, 3)).is_clean());

        let fan = Instance::new((0..4).map(|a| hp(a, 5, Side::Upper)).collect());
        for attempt in 0..4 {
            assert!(validate(&perturb(&fan, attempt)).is_clean(), "attempt {attempt}");
        }
    }

    #[test]
    fn perturb_enlarges() {
        let conc = Instance::new(vec![hp(1, 0, Side::Upper), hp(-1, 0, Side::Upper), hp(0, 0, Side::Lower)]);
        let p = perturb(&conc, 0);
        let origin = Point::from_ints(0, 0);
        for h in &p.halfplanes {
            assert!(h.contains(&origin));
        }
    }

    #[test]
    fn dualize_examples() {
        let s = dualize(&i3()).unwrap();
        let u: Vec<_> = s.tips_u().cloned().collect();
        let l: Vec<_> = s.tips_l().cloned().collect();
        assert_eq!(u, vec![Point::from_ints(-1, 0), Point::from_ints(1, 2)]);
        assert_eq!(l, vec![Point::from_ints(0, 0)]);
        assert!(dualize(&Instance::default()).unwrap().is_empty());
    }

    #[test]
    fn dual_incidence_spot_check() {
        let h = hp(0, 0, Side::Upper);
        let p = Point::new(int(0), int(-1));
        assert!(h.contains(&p));
        let tip = Point::new(-&h.a, h.b.clone());
        let dual_line = Line::new(p.x.clone(), p.y.clone());
        // down-ray meets the line iff the line is weakly below the tip
        assert!(dual_line.eval(&tip.x) <= tip.y);
    }

    #[test]
    fn flips() {
        let s = dualize(&i3()).unwrap();
        let back = s.x_flip().x_flip();
        assert_eq!(back.upper, s.upper);
        assert_eq!(back.lower, s.lower);

        let y = s.y_flip();
        let u: Vec<_> = y.tips_u().cloned().collect();
        let l: Vec<_> = y.tips_l().cloned().collect();
        assert_eq!(u, vec![Point::from_ints(0, 0)]);
        assert_eq!(l, vec![Point::from_ints(-1, 0), Point::from_ints(1, -2)]);

        let xf = s.x_flip();
        assert!(xf.upper[0].pt.x < xf.upper[1].pt.x);
        assert_eq!(xf.upper[0].src, s.upper[1].src);
        let (p, q, r) = (&s.upper[0].pt, &s.upper[1].pt, &s.lower[0].pt);
        assert_eq!(orientation(p, q, r), Orientation::Right);
        assert_eq!(orientation(&p.reflect_x(), &q.reflect_x(), &r.reflect_x()), Orientation::Left);
    }

    #[test]
    fn pull_back_laws() {
        let c = Coloring::new(vec![Color::Blue, Color::Red, Color::Red]);
        assert_eq!(pull_back(&c, &[]), c);
        assert_eq!(pull_back(&c, &[Transform::ColorSwap]).colors, vec![Color::Red, Color::Blue, Color::Blue]);
        assert_eq!(pull_back(&c, &[Transform::XFlip, Transform::ColorSwap, Transform::XFlip]), c.swapped());
    }
}

//! Instances whose half-planes leave some point uncovered.
//!
//! Polarity about an uncovered point `o` turns every half-plane into a point
//! `u_h` such that `x` lies in `h` exactly when `<u_h, x - o> >= 1`. The
//! covering sets become the point sets cut off by closed half-planes that
//! avoid the origin, and those are 2-coloured directly.

use std::collections::BTreeSet;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};

use crate::engine::{classify_coverage, Coverage, EngineError};
use crate::kernel::{int, Line, Point, Scalar};
use crate::model::{Color, Coloring, Instance};
use crate::verify::depth;

/// Number of convex layers that can contribute to a smallest cut-off set.
const LAYERS: usize = 3;

/// The polar images of an instance about a point it leaves uncovered.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarScene {
    pub origin: Point,
    /// `points[i]` is the image of half-plane `i`.
    pub points: Vec<Point>,
}

impl PolarScene {
    /// Whether primal point `x` lies in half-plane `i`, read off the image.
    pub fn contains(&self, i: usize, x: &Point) -> bool {
        let u = &self.points[i];
        &u.x * (&x.x - &self.origin.x) + &u.y * (&x.y - &self.origin.y) >= int(1)
    }
}

/// A point covered by no half-plane, when the instance has one.
pub fn uncovered_witness(inst: &Instance) -> Result<Option<Point>, EngineError> {
    Ok(match classify_coverage(inst)? {
        Coverage::Covered { .. } => None,
        Coverage::Separated { line } => Some(separator_point(&line)),
    })
}

fn separator_point(line: &Line) -> Point {
    Point::new(line.slope.clone(), line.intercept.clone())
}

/// Polar images about `o`, or `None` when some half-plane contains `o`.
pub fn polarize(inst: &Instance, o: &Point) -> Option<PolarScene> {
    let mut points = Vec::with_capacity(inst.len());
    for h in &inst.halfplanes {
        if h.contains(o) {
            return None;
        }
        let b = &h.a * &o.x + &h.b - &o.y;
        points.push(Point::new(-&h.a / &b, Scalar::from_integer(1.into()) / &b));
    }
    Some(PolarScene { origin: o.clone(), points })
}

/// The point `(x / w, y / w)`, `w > 0`.
struct Hom {
    x: BigInt,
    y: BigInt,
    w: BigInt,
}

impl Hom {
    fn new(p: &Point) -> Hom {
        let (xd, yd) = (p.x.denom(), p.y.denom());
        Hom { x: p.x.numer() * yd, y: p.y.numer() * xd, w: xd * yd }
    }

    fn origin() -> Hom {
        Hom { x: BigInt::zero(), y: BigInt::zero(), w: BigInt::one() }
    }
}

/// The line `a x + b y + c w = 0` through `p` and `q`, all zero when they
/// coincide.
fn join(p: &Hom, q: &Hom) -> [BigInt; 3] {
    [&p.y * &q.w - &p.w * &q.y, &p.w * &q.x - &p.x * &q.w, &p.x * &q.y - &p.y * &q.x]
}

fn side(l: &[BigInt; 3], p: &Hom) -> Sign {
    (&l[0] * &p.x + &l[1] * &p.y + &l[2] * &p.w).sign()
}

/// Points strictly on the `far` side of `l` and points on it, or `None`
/// once three lie beyond.
fn split(pts: &[Hom], l: &[BigInt; 3], far: Sign) -> Option<(Vec<usize>, Vec<usize>)> {
    let (mut beyond, mut on) = (Vec::new(), Vec::new());
    for (k, p) in pts.iter().enumerate() {
        match side(l, p) {
            Sign::NoSign => on.push(k),
            s if s == far => {
                if beyond.len() == 2 {
                    return None;
                }
                beyond.push(k);
            }
            _ => {}
        }
    }
    Some((beyond, on))
}

fn orient(p: &Hom, q: &Hom, r: &Hom) -> Sign {
    side(&join(p, q), r)
}

/// Positions of the points lying on the convex hull boundary of `idx`.
fn hull_boundary(pts: &[Point], hom: &[Hom], idx: &[usize]) -> Vec<usize> {
    let mut order: Vec<usize> = idx.to_vec();
    order.sort_by(|&i, &j| pts[i].cmp(&pts[j]));
    order.dedup_by(|i, j| pts[*i] == pts[*j]);
    if order.len() <= 2 {
        return idx.to_vec();
    }
    let mut hull: Vec<usize> = Vec::new();
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &usize>> =
            if pass == 0 { Box::new(order.iter()) } else { Box::new(order.iter().rev()) };
        for &i in iter {
            while hull.len() >= start + 2
                && orient(&hom[hull[hull.len() - 2]], &hom[hull[hull.len() - 1]], &hom[i]) != Sign::Plus
            {
                hull.pop();
            }
            hull.push(i);
        }
        hull.pop();
    }
    let on_edge = |q: usize| {
        (0..hull.len()).any(|k| {
            let (a, b) = (hull[k], hull[(k + 1) % hull.len()]);
            let (lo, hi) = if pts[a] < pts[b] { (a, b) } else { (b, a) };
            orient(&hom[a], &hom[b], &hom[q]) == Sign::NoSign && pts[lo] <= pts[q] && pts[q] <= pts[hi]
        })
    };
    idx.iter().copied().filter(|&i| on_edge(i)).collect()
}

/// The first `LAYERS` boundary-inclusive convex layers, merged.
fn outer_layers(pts: &[Point], hom: &[Hom]) -> Vec<usize> {
    let mut rest: Vec<usize> = (0..pts.len()).collect();
    let mut out = Vec::new();
    for _ in 0..LAYERS {
        if rest.is_empty() {
            break;
        }
        let layer = hull_boundary(pts, hom, &rest);
        let mut taken = vec![false; pts.len()];
        for &i in &layer {
            taken[i] = true;
        }
        rest.retain(|&i| !taken[i]);
        out.extend(layer);
    }
    out.sort_unstable();
    out
}

/// Every inclusion-minimal set of at least three points cut off by a closed
/// half-plane that avoids the origin, possibly with some supersets. Each set
/// is sorted; the list is sorted and free of repeats.
pub fn enumerate_point_hyperedges(points: &[Point]) -> Vec<Vec<usize>> {
    if points.len() < 3 {
        return Vec::new();
    }
    let all: Vec<Hom> = points.iter().map(Hom::new).collect();
    let cand = outer_layers(points, &all);
    let hom: Vec<Hom> = cand.iter().map(|&i| Hom::new(&points[i])).collect();
    let same = |a: usize, b: usize| points[cand[a]] == points[cand[b]];
    let mut edges = BTreeSet::new();
    let mut emit = |beyond: &[usize], line: &[usize]| {
        let mut set: Vec<usize> = beyond.iter().chain(line).map(|&k| cand[k]).collect();
        set.sort_unstable();
        edges.insert(set);
    };
    // length of the shortest prefix of `seq` completing `beyond` to three, ties included
    let prefix = |beyond: &[usize], seq: &[usize]| {
        let need = 3 - beyond.len();
        (seq.len() >= need).then(|| {
            let mut end = need;
            while end < seq.len() && same(seq[end - 1], seq[end]) {
                end += 1;
            }
            end
        })
    };

    for i in 0..hom.len() {
        for j in i + 1..hom.len() {
            let l = join(&hom[i], &hom[j]);
            let far = match l[2].sign() {
                Sign::Plus => Sign::Minus,
                Sign::Minus => Sign::Plus,
                // through the origin or coincident points
                Sign::NoSign => continue,
            };
            let Some((beyond, mut on)) = split(&hom, &l, far) else { continue };
            on.sort_by(|&a, &b| points[cand[a]].cmp(&points[cand[b]]));
            for _ in 0..2 {
                if let Some(end) = prefix(&beyond, &on) {
                    emit(&beyond, &on[..end]);
                }
                on.reverse();
            }
            if beyond.len() + on.len() >= 3 {
                emit(&beyond, &on);
            }
        }
    }

    let o = Hom::origin();
    for k in 0..hom.len() {
        let l = join(&o, &hom[k]);
        let along = |q: &Hom| &q.x * &hom[k].x + &q.y * &hom[k].y;
        for far in [Sign::Plus, Sign::Minus] {
            let Some((beyond, on)) = split(&hom, &l, far) else { continue };
            for dir in [Sign::Plus, Sign::Minus] {
                let mut ray: Vec<(usize, BigInt)> =
                    on.iter().map(|&q| (q, along(&hom[q]))).filter(|(_, v)| v.sign() == dir).collect();
                // farthest from the origin first
                ray.sort_by(|(a, va), (b, vb)| (vb * &hom[*a].w).abs().cmp(&(va * &hom[*b].w).abs()));
                let seq: Vec<usize> = ray.into_iter().map(|(q, _)| q).collect();
                if let Some(end) = prefix(&beyond, &seq) {
                    emit(&beyond, &seq[..end]);
                }
            }
        }
    }
    edges.into_iter().collect()
}

/// A colouring under which no set in `edges` is monochromatic, found by
/// backtracking with unit propagation. Blue is tried first.
pub fn color_points(n: usize, edges: &[Vec<usize>]) -> Option<Coloring> {
    let mut occurs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (e, set) in edges.iter().enumerate() {
        for &v in set {
            occurs[v].push(e);
        }
    }
    let mut s = Nae { edges, occurs, value: vec![None; n], trail: Vec::new() };
    if s.search(0) {
        Some(Coloring::new(s.value.into_iter().map(|c| c.unwrap_or(Color::Blue)).collect()))
    } else {
        None
    }
}

struct Nae<'a> {
    edges: &'a [Vec<usize>],
    occurs: Vec<Vec<usize>>,
    value: Vec<Option<Color>>,
    trail: Vec<usize>,
}

impl Nae<'_> {
    fn search(&mut self, from: usize) -> bool {
        let Some(v) = (from..self.value.len()).find(|&v| self.value[v].is_none()) else {
            return true;
        };
        for c in [Color::Blue, Color::Red] {
            let mark = self.trail.len();
            if self.assign(v, c) && self.search(v + 1) {
                return true;
            }
            for u in self.trail.drain(mark..) {
                self.value[u] = None;
            }
        }
        false
    }

    /// Sets `v` and everything it forces. `false` on a conflict.
    fn assign(&mut self, v: usize, c: Color) -> bool {
        let mut queue = vec![(v, c)];
        while let Some((v, c)) = queue.pop() {
            match self.value[v] {
                Some(old) if old == c => continue,
                Some(_) => return false,
                None => {}
            }
            self.value[v] = Some(c);
            self.trail.push(v);
            for &e in &self.occurs[v] {
                let (mut same, mut free) = (0, None);
                let mut other = false;
                for &w in &self.edges[e] {
                    match self.value[w] {
                        None => free = Some(w),
                        Some(x) if x == c => same += 1,
                        Some(_) => other = true,
                    }
                }
                if other {
                    continue;
                }
                let unassigned = self.edges[e].len() - same;
                if unassigned == 0 {
                    return false;
                }
                if unassigned == 1 {
                    queue.push((free.expect("one free vertex"), c.swapped()));
                }
            }
        }
        true
    }
}

/// Colours an instance that leaves a point uncovered. Needs pairwise
/// distinct boundary slopes.
pub fn uncovered_solve(inst: &Instance) -> Result<Coloring, EngineError> {
    match classify_coverage(inst)? {
        Coverage::Separated { line } => solve_uncovered(inst, inst, &line),
        Coverage::Covered { .. } => Err(EngineError::Internal("instance covers the plane".into())),
    }
}

/// Colours `orig` using the separator found for `work`, a perturbed copy.
pub(crate) fn solve_uncovered(orig: &Instance, work: &Instance, line: &Line) -> Result<Coloring, EngineError> {
    let o = separator_point(line);
    let target = if depth(orig, &o).0 == 0 { orig } else { work };
    let scene = polarize(target, &o).ok_or_else(|| EngineError::Internal("separator point is covered".into()))?;
    let edges = enumerate_point_hyperedges(&scene.points);
    color_points(scene.points.len(), &edges)
        .ok_or_else(|| EngineError::Internal("polar points admit no colouring".into()))
}

//! Ground truth in the primal plane: depth queries, arrangement sampling,
//! goodness checking at any threshold and an exhaustive colouring oracle.
//!
//! [`verify`] walks every distinct boundary line once. Along a line the
//! covering set only changes where another boundary crosses it, so checking
//! each crossing, each open stretch between crossings and the two sides of
//! each stretch visits every vertex, edge and face of the arrangement.
//! Parallel and coincident boundaries are handled directly, so degenerate
//! inputs are judged as they are.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::kernel::{int, midpoint, Point, Scalar};
use crate::model::{Color, Coloring, Instance, Side};

/// Largest instance accepted by [`oracle`].
pub const ORACLE_MAX: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyperedge {
    /// Sorted indices of the half-planes containing the witness.
    pub covering: Vec<usize>,
    pub witness: Point,
}

impl Hyperedge {
    pub fn depth(&self) -> usize {
        self.covering.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub witness: Point,
    pub covering: Vec<usize>,
    pub color: Color,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Good,
    Violation(Violation),
}

impl Verdict {
    pub fn is_good(&self) -> bool {
        matches!(self, Verdict::Good)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("coloring has {found} entries but the instance has {expected} half-planes")]
    LengthMismatch { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("oracle is limited to {ORACLE_MAX} half-planes, got {0}")]
    TooLarge(usize),
}

/// Number of half-planes containing `pt` and their indices.
pub fn depth(inst: &Instance, pt: &Point) -> (usize, Vec<usize>) {
    let covering: Vec<usize> =
        inst.halfplanes.iter().enumerate().filter(|(_, h)| h.contains(pt)).map(|(i, _)| i).collect();
    (covering.len(), covering)
}

struct Group {
    a: Scalar,
    b: Scalar,
    members: Vec<usize>,
}

/// Coincident boundaries share one group, ordered by smallest member.
fn line_groups(inst: &Instance) -> Vec<Group> {
    let mut by_line: BTreeMap<(&Scalar, &Scalar), Vec<usize>> = BTreeMap::new();
    for (i, h) in inst.halfplanes.iter().enumerate() {
        by_line.entry((&h.a, &h.b)).or_default().push(i);
    }
    let mut groups: Vec<Group> =
        by_line.into_iter().map(|((a, b), members)| Group { a: a.clone(), b: b.clone(), members }).collect();
    groups.sort_by_key(|g| g.members[0]);
    groups
}

#[derive(Clone, Copy, Default)]
struct Tally {
    count: usize,
    blue: usize,
}

impl Tally {
    fn add(&mut self, other: Tally) {
        self.count += other.count;
        self.blue += other.blue;
    }

    fn sub(&mut self, other: Tally) {
        self.count -= other.count;
        self.blue -= other.blue;
    }

    fn plus(self, other: Tally) -> Tally {
        Tally { count: self.count + other.count, blue: self.blue + other.blue }
    }

    fn monochromatic(self, k: usize) -> bool {
        self.count >= k.max(1) && (self.blue == 0 || self.blue == self.count)
    }
}

struct GroupTally {
    upper: Tally,
    lower: Tally,
}

fn group_tally(g: &Group, inst: &Instance, coloring: &Coloring) -> GroupTally {
    let mut t = GroupTally { upper: Tally::default(), lower: Tally::default() };
    for &i in &g.members {
        let slot = match inst.halfplanes[i].side {
            Side::Upper => &mut t.upper,
            Side::Lower => &mut t.lower,
        };
        slot.count += 1;
        if coloring.colors[i] == Color::Blue {
            slot.blue += 1;
        }
    }
    t
}

#[derive(Clone, Copy)]
enum Offset {
    On,
    Above,
    Below,
}

/// Point on the line of group `g` at `x`, nudged off the line when asked.
/// The nudge stays strictly closer than every other non-coincident line.
fn witness_on(groups: &[Group], g: usize, x: &Scalar, offset: Offset) -> Point {
    let y = &groups[g].a * x + &groups[g].b;
    let eps = match offset {
        Offset::On => return Point::new(x.clone(), y),
        Offset::Above | Offset::Below => {
            let mut eps = Scalar::one();
            for (h, other) in groups.iter().enumerate() {
                if h == g {
                    continue;
                }
                let gap = (&other.a * x + &other.b - &y).abs();
                if !gap.is_zero() && gap < &eps * int(2) {
                    eps = gap / int(2);
                }
            }
            eps
        }
    };
    match offset {
        Offset::Above => Point::new(x.clone(), y + eps),
        _ => Point::new(x.clone(), y - eps),
    }
}

fn violation_at(inst: &Instance, coloring: &Coloring, k: usize, witness: Point) -> Violation {
    let (d, covering) = depth(inst, &witness);
    let color = coloring.colors[covering[0]];
    assert!(
        d >= k && covering.iter().all(|&i| coloring.colors[i] == color),
        "sweep witness does not reproduce the violation"
    );
    Violation { witness, covering, color }
}

fn check_lengths(inst: &Instance, coloring: &Coloring) -> Result<(), VerifyError> {
    if inst.len() != coloring.len() {
        return Err(VerifyError::LengthMismatch { expected: inst.len(), found: coloring.len() });
    }
    Ok(())
}

/// Decides whether every covering set of size at least `k` (and at least
/// one) sees both colours. Runs in `O(n^2 log n)`.
pub fn verify(inst: &Instance, coloring: &Coloring, k: usize) -> Result<Verdict, VerifyError> {
    check_lengths(inst, coloring)?;
    if inst.len() < k.max(1) {
        return Ok(Verdict::Good);
    }
    let groups = line_groups(inst);
    let tallies: Vec<GroupTally> = groups.iter().map(|g| group_tally(g, inst, coloring)).collect();

    for (gi, g) in groups.iter().enumerate() {
        let own = &tallies[gi];
        let own_all = own.upper.plus(own.lower);

        // running tally of non-coincident half-planes containing the line
        let mut inside = Tally::default();
        // (crossing x, crossing group)
        let mut events: Vec<(Scalar, usize)> = Vec::new();
        for (hi, h) in groups.iter().enumerate() {
            if hi == gi {
                continue;
            }
            let t = &tallies[hi];
            if h.a == g.a {
                if h.b > g.b {
                    inside.add(t.upper);
                } else {
                    inside.add(t.lower);
                }
                continue;
            }
            inside.add(if h.a < g.a { t.upper } else { t.lower });
            events.push(((&h.b - &g.b) / (&g.a - &h.a), hi));
        }
        events.sort();

        let check_stretch = |inside: Tally, x: &dyn Fn() -> Scalar| -> Option<Violation> {
            for (state, offset) in [
                (inside.plus(own_all), Offset::On),
                (inside.plus(own.lower), Offset::Above),
                (inside.plus(own.upper), Offset::Below),
            ] {
                if state.monochromatic(k) {
                    return Some(violation_at(inst, coloring, k, witness_on(&groups, gi, &x(), offset)));
                }
            }
            None
        };

        let mut prev: Option<Scalar> = None;
        let mut j = 0;
        while j < events.len() {
            let x = events[j].0.clone();
            let rep = || match &prev {
                None => &x - int(1),
                Some(p) => midpoint(p, &x),
            };
            if let Some(v) = check_stretch(inside, &rep) {
                return Ok(Verdict::Violation(v));
            }
            let mut entering = Tally::default();
            let mut leaving = Tally::default();
            while j < events.len() && events[j].0 == x {
                let hi = events[j].1;
                let t = &tallies[hi];
                if groups[hi].a < g.a {
                    leaving.add(t.upper);
                    entering.add(t.lower);
                } else {
                    leaving.add(t.lower);
                    entering.add(t.upper);
                }
                j += 1;
            }
            let at_vertex = inside.plus(entering).plus(own_all);
            if at_vertex.monochromatic(k) {
                let w = witness_on(&groups, gi, &x, Offset::On);
                return Ok(Verdict::Violation(violation_at(inst, coloring, k, w)));
            }
            inside.sub(leaving);
            inside.add(entering);
            prev = Some(x);
        }
        let rep = || match &prev {
            None => Scalar::zero(),
            Some(p) => p + int(1),
        };
        if let Some(v) = check_stretch(inside, &rep) {
            return Ok(Verdict::Violation(v));
        }
    }
    Ok(Verdict::Good)
}

const COMPASS: [(i64, i64); 8] = [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)];

/// A finite point set meeting every vertex, edge and face of the arrangement
/// of boundary lines: all crossings, points between and beyond consecutive
/// crossings on every line, points just above and below each of those, and
/// eight compass offsets around every crossing. Sorted and free of repeats.
pub fn arrangement_samples(inst: &Instance) -> Vec<Point> {
    let groups = line_groups(inst);
    let mut out = Vec::new();
    if groups.is_empty() {
        out.push(Point::from_ints(0, 0));
        return out;
    }
    let mut vertices = Vec::new();
    for (gi, g) in groups.iter().enumerate() {
        let mut xs: Vec<Scalar> = groups.iter().filter(|h| h.a != g.a).map(|h| (&h.b - &g.b) / (&g.a - &h.a)).collect();
        xs.sort();
        xs.dedup();
        let mut stretch = Vec::new();
        match (xs.first(), xs.last()) {
            (Some(first), Some(last)) => {
                stretch.push(first - int(1));
                stretch.push(last + int(1));
            }
            _ => stretch.push(Scalar::zero()),
        }
        for w in xs.windows(2) {
            stretch.push(midpoint(&w[0], &w[1]));
        }
        for x in &stretch {
            for offset in [Offset::On, Offset::Above, Offset::Below] {
                out.push(witness_on(&groups, gi, x, offset));
            }
        }
        for x in xs {
            vertices.push(witness_on(&groups, gi, &x, Offset::On));
        }
    }
    vertices.sort();
    vertices.dedup();
    for v in &vertices {
        let delta = vertex_offset(&groups, v);
        for (dx, dy) in COMPASS {
            out.push(Point::new(&v.x + &delta * int(dx), &v.y + &delta * int(dy)));
        }
    }
    out.extend(vertices);
    out.sort();
    out.dedup();
    out
}

/// Half the smallest positive parameter at which a compass ray from `v`
/// meets a line missing `v`, capped at one.
fn vertex_offset(groups: &[Group], v: &Point) -> Scalar {
    let mut best = Scalar::one();
    for g in groups {
        let gap = &g.a * &v.x + &g.b - &v.y;
        if gap.is_zero() {
            continue;
        }
        for (dx, dy) in COMPASS {
            let rate = int(dy) - &g.a * int(dx);
            if rate.is_zero() {
                continue;
            }
            let t = &gap / rate;
            if t.is_positive() && t < &best * int(2) {
                best = t / int(2);
            }
        }
    }
    best
}

/// Distinct covering sets of size at least `k` over [`arrangement_samples`],
/// each with the first sample that realises it.
pub fn hyperedges(inst: &Instance, k: usize) -> Vec<Hyperedge> {
    let mut seen: BTreeMap<Vec<usize>, Point> = BTreeMap::new();
    for p in arrangement_samples(inst) {
        let (d, covering) = depth(inst, &p);
        if d >= k.max(1) {
            seen.entry(covering).or_insert(p);
        }
    }
    seen.into_iter().map(|(covering, witness)| Hyperedge { covering, witness }).collect()
}

/// Same contract as [`verify`], decided over [`hyperedges`] instead of the
/// sweep. Slower; kept as an independent cross-check.
pub fn verify_by_samples(inst: &Instance, coloring: &Coloring, k: usize) -> Result<Verdict, VerifyError> {
    check_lengths(inst, coloring)?;
    for e in hyperedges(inst, k) {
        let color = coloring.colors[e.covering[0]];
        if e.covering.iter().all(|&i| coloring.colors[i] == color) {
            return Ok(Verdict::Violation(Violation { witness: e.witness, covering: e.covering, color }));
        }
    }
    Ok(Verdict::Good)
}

fn edge_masks(inst: &Instance, k: usize) -> Vec<u32> {
    let n = inst.len();
    let mut masks: Vec<u32> =
        hyperedges(inst, k).iter().map(|e| e.covering.iter().fold(0u32, |m, &i| m | 1 << (n - 1 - i))).collect();
    masks.sort_unstable();
    masks.dedup();
    masks
}

fn mask_coloring(n: usize, bits: u32) -> Coloring {
    Coloring::new((0..n).map(|i| if bits >> (n - 1 - i) & 1 == 1 { Color::Red } else { Color::Blue }).collect())
}

fn good_masks(inst: &Instance, k: usize) -> Result<impl Iterator<Item = u32>, OracleError> {
    let n = inst.len();
    if n > ORACLE_MAX {
        return Err(OracleError::TooLarge(n));
    }
    let masks = edge_masks(inst, k);
    Ok((0..1u32 << n).filter(move |c| masks.iter().all(|&e| c & e != 0 && c & e != e)))
}

/// First good colouring in lexicographic order (index 0 most significant,
/// blue before red), or `None` when no two-colouring is good.
pub fn oracle(inst: &Instance, k: usize) -> Result<Option<Coloring>, OracleError> {
    let n = inst.len();
    Ok(good_masks(inst, k)?.next().map(|c| mask_coloring(n, c)))
}

/// Every good colouring, in lexicographic order.
pub fn oracle_all(inst: &Instance, k: usize) -> Result<Vec<Coloring>, OracleError> {
    let n = inst.len();
    Ok(good_masks(inst, k)?.map(|c| mask_coloring(n, c)).collect())
}

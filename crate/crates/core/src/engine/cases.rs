//! The case machine for covered scenes.

use std::cmp::Ordering;
use std::ops::Range;

use crate::kernel::{orientation, point_in_triangle_interior, Orientation, Point};
use crate::model::{Color, Tip};

use super::frame::{above, gp, line_cuts, Base, Fam, Frame, View};
use super::pivot::{candidates, classify, CSub, CaseTag, Coarse, Pivot};
use super::separated::obs_separated;
use super::{EngineError, Paint};

/// Most pivots tried for one scene.
pub const MAX_DISPATCH_DEPTH: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PivotPolicy {
    /// The first admissible pivot in scan order.
    First,
    /// An admissible pivot in case A when one exists, else the first.
    PreferA,
}

pub(crate) struct Machine<'a> {
    pub base: &'a Base,
    pub log: Vec<CaseTag>,
    /// Pivots already dispatched, as (frame, half-plane).
    tried: Vec<(Frame, usize)>,
}

fn blue(b: bool) -> Color {
    if b {
        Color::Blue
    } else {
        Color::Red
    }
}

/// Side of `pt` against the line through `a` and `b`, seen from above.
fn above_side(pt: &Point, a: &Point, b: &Point) -> Orientation {
    let (a, b) = if a.x < b.x { (a, b) } else { (b, a) };
    orientation(a, b, pt)
}

fn strictly_above_line(pt: &Point, a: &Point, b: &Point) -> bool {
    above_side(pt, a, b) == Orientation::Left
}

fn strictly_below_line(pt: &Point, a: &Point, b: &Point) -> bool {
    above_side(pt, a, b) == Orientation::Right
}

/// Slope of `a c` against slope of `b c`, for `a` and `b` left of `c`.
fn cmp_slope_to(a: &Point, b: &Point, c: &Point) -> Ordering {
    match orientation(b, c, a) {
        Orientation::Left => Ordering::Less,
        Orientation::Right => Ordering::Greater,
        Orientation::Collinear => Ordering::Equal,
    }
}

impl<'a> Pivot<'a> {
    fn src(&self, f: Fam, i: usize) -> usize {
        self.view.src(f, i)
    }

    fn n(&self, f: Fam) -> usize {
        self.view.len(f)
    }

    fn paint(&self, paint: &mut Paint, f: Fam, range: Range<usize>, c: Color) {
        for i in range {
            paint.set(self.src(f, i), c);
        }
    }

    fn paint_all(&self, paint: &mut Paint, c: Color) {
        self.paint(paint, Fam::U, 0..self.n(Fam::U), c);
        self.paint(paint, Fam::L, 0..self.n(Fam::L), c);
    }

    fn tips(&self, f: Fam, range: Range<usize>) -> Vec<Tip> {
        self.view.tips(f, range)
    }

    /// The same configuration seen in the left-right mirror.
    fn mirror(&self) -> Pivot<'a> {
        let frame = Frame { xflip: !self.view.frame.xflip, yflip: self.view.frame.yflip };
        let (nu, nl) = (self.n(Fam::U), self.n(Fam::L));
        let mu = |i: usize| nu - 1 - i;
        let ml = |i: usize| nl - 1 - i;
        Pivot {
            view: View::new(self.view.base, frame),
            p: mu(self.p),
            l_u: self.r_u.map(mu),
            r_u: self.l_u.map(mu),
            l_l: ml(self.r_l),
            r_l: ml(self.l_l),
            l_l2: self.r_l2.map(ml),
            r_l2: self.l_l2.map(ml),
        }
    }

    /// Whether every `family` tip outside `skip` lies strictly on `side` of
    /// the line through `a` and `b`.
    fn all_off(&self, f: Fam, skip: &[usize], a: &Point, b: &Point, want_above: bool) -> bool {
        (0..self.n(f)).filter(|i| !skip.contains(i)).all(|i| {
            let pt = self.view.pt(f, i);
            if want_above {
                strictly_above_line(&pt, a, b)
            } else {
                strictly_below_line(&pt, a, b)
            }
        })
    }

    /// Whether some tip of `f` with index in `range` other than `skip` lies
    /// inside the triangle.
    fn triangle_hit(&self, f: Fam, range: Range<usize>, skip: usize, t: [&Point; 3]) -> Result<bool, EngineError> {
        for i in range.filter(|&i| i != skip) {
            if gp(point_in_triangle_interior(&self.view.pt(f, i), t[0], t[1], t[2]))? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

impl<'a> Machine<'a> {
    pub fn new(base: &'a Base) -> Self {
        Machine { base, log: Vec::new(), tried: Vec::new() }
    }

    pub fn pick(&self, policy: PivotPolicy) -> Result<Pivot<'a>, EngineError> {
        let mut all = candidates(self.base);
        if all.is_empty() {
            // a tip on the other family's hull boundary
            return Err(EngineError::GeneralPosition);
        }
        if policy == PivotPolicy::PreferA {
            for k in 0..all.len() {
                if classify(&all[k])? == Coarse::A {
                    return Ok(all.swap_remove(k));
                }
            }
        }
        Ok(all.swap_remove(0))
    }

    pub fn run(&mut self, pv: &Pivot<'a>, paint: &mut Paint) -> Result<(), EngineError> {
        if self.tried.len() >= MAX_DISPATCH_DEPTH {
            return Err(EngineError::Internal(format!("dispatch chain too long: {:?}", self.log)));
        }
        self.tried.push((pv.frame(), pv.src(Fam::U, pv.p)));
        match classify(pv)? {
            Coarse::A => {
                self.log.push(CaseTag::A);
                case_a(pv, paint);
                Ok(())
            }
            Coarse::B => {
                self.log.push(CaseTag::B);
                let l_u = pv.l_u.expect("case B has l_U");
                if above(&pv.l(pv.l_l), &pv.u(l_u), &pv.pp())? {
                    return self.fallback(paint, "l_L above h");
                }
                case_b(pv, paint)
            }
            Coarse::C => self.case_c(pv, paint),
            Coarse::D => {
                self.log.push(CaseTag::D);
                self.case_d(pv, paint)
            }
            Coarse::SingletonU => {
                self.log.push(CaseTag::SingletonU);
                self.case_c(pv, paint)
            }
        }
    }

    fn reduce(&mut self, next: Option<Pivot<'a>>, what: &str, paint: &mut Paint) -> Result<(), EngineError> {
        match next {
            Some(pv) if !self.tried.contains(&(pv.frame(), pv.src(Fam::U, pv.p))) => self.run(&pv, paint),
            Some(_) => self.fallback(paint, what),
            None => Err(EngineError::Internal(format!("reduction {what} has no admissible pivot"))),
        }
    }

    /// Moves to the most promising pivot not tried yet, starting afresh.
    fn fallback(&mut self, paint: &mut Paint, what: &str) -> Result<(), EngineError> {
        let next = self.untried()?;
        paint.clear();
        self.reduce(next, what, paint)
    }

    fn untried(&self) -> Result<Option<Pivot<'a>>, EngineError> {
        let mut best: Option<(u8, Pivot<'a>)> = None;
        for cand in candidates(self.base) {
            if self.tried.contains(&(cand.frame(), cand.src(Fam::U, cand.p))) {
                continue;
            }
            let rank = match classify(&cand)? {
                Coarse::A => 0,
                Coarse::C => 1,
                Coarse::B => 2,
                Coarse::SingletonU => 3,
                Coarse::D => 4,
            };
            if best.as_ref().map_or(true, |b| rank < b.0) {
                best = Some((rank, cand));
            }
        }
        Ok(best.map(|b| b.1))
    }

    /// Re-pivots on a tip in the first of `frames` where it is admissible.
    fn repivot(&self, pv: &Pivot<'a>, f: Fam, i: usize, frames: &[Frame]) -> Option<Pivot<'a>> {
        frames.iter().find_map(|&frame| {
            let next = pv.repivot(self.base, frame, f, i)?;
            let leftmost = next.p == 0 && next.view.len(Fam::U) > 1;
            (!leftmost).then_some(next)
        })
    }

    fn case_c(&mut self, pv: &Pivot<'a>, paint: &mut Paint) -> Result<(), EngineError> {
        let p = pv.pp();
        let (ll, rl) = (pv.l(pv.l_l), pv.l(pv.r_l));
        let lu = pv.l_u.map(|i| pv.u(i));
        let ru = pv.r_u.map(|i| pv.u(i));
        let first = match &ru {
            None => true,
            Some(ru) => above(&rl, &p, ru)?,
        };
        if !first {
            self.log.push(CaseTag::C(CSub::Below));
            return self.c_below(pv, paint);
        }
        if let Some(r_u) = pv.r_u {
            if let Some(next) = Pivot::at(View::new(self.base, pv.frame()), r_u) {
                return self.run(&next, paint);
            }
        }
        if let (Some(r_u), Some(ru)) = (pv.r_u, &ru) {
            if pv.all_off(Fam::L, &[pv.l_l, pv.r_l], &rl, ru, true) && pv.all_off(Fam::U, &[r_u], &rl, ru, false) {
                self.log.push(CaseTag::C(CSub::C1Right));
                pv.paint_all(paint, Color::Red);
                for s in [pv.src(Fam::U, pv.p), pv.src(Fam::U, r_u), pv.src(Fam::L, pv.r_l)] {
                    paint.set(s, Color::Blue);
                }
                return Ok(());
            }
        }
        if let (Some(l_u), Some(lu)) = (pv.l_u, &lu) {
            if pv.all_off(Fam::L, &[pv.l_l, pv.r_l], &ll, lu, true) && pv.all_off(Fam::U, &[l_u], &ll, lu, false) {
                self.log.push(CaseTag::C(CSub::C1Left));
                pv.paint_all(paint, Color::Red);
                for s in [pv.src(Fam::U, pv.p), pv.src(Fam::U, l_u), pv.src(Fam::L, pv.l_l)] {
                    paint.set(s, Color::Blue);
                }
                return Ok(());
            }
        }
        if let Some(r_l2) = pv.r_l2 {
            let t = pv.l(r_l2);
            if !pv.triangle_hit(Fam::L, pv.l_l + 1..r_l2, pv.r_l, [&ll, &rl, &t])? {
                self.log.push(CaseTag::C(CSub::C2Right));
                return c2(pv, paint);
            }
        }
        if let Some(l_l2) = pv.l_l2 {
            let t = pv.l(l_l2);
            if !pv.triangle_hit(Fam::L, l_l2 + 1..pv.r_l, pv.l_l, [&rl, &ll, &t])? {
                self.log.push(CaseTag::C(CSub::C2Left));
                return c2(&pv.mirror(), paint);
            }
        }
        if let (Some(l_u), Some(lu), Some(r_u), Some(ru)) = (pv.l_u, &lu, pv.r_u, &ru) {
            if !pv.triangle_hit(Fam::U, l_u + 1..r_u, pv.p, [lu, &p, ru])? {
                self.log.push(CaseTag::C(CSub::C3));
                return c3(pv, paint);
            }
        }
        self.log.push(CaseTag::C(CSub::C4));
        c4(pv, paint)
    }

    fn c_below(&mut self, pv: &Pivot<'a>, paint: &mut Paint) -> Result<(), EngineError> {
        let r_u = pv.r_u.expect("r_U exists below");
        let (p, ru, ll, rl) = (pv.pp(), pv.u(r_u), pv.l(pv.l_l), pv.l(pv.r_l));
        let f = pv.frame();
        if ru.x < rl.x {
            let flipped = Frame { xflip: !f.xflip, ..f };
            let next = self.repivot(pv, Fam::U, pv.p, &[flipped]);
            return self.reduce(next, "r_U before r_L", paint);
        }
        if line_cuts(&ll, &rl, &p, &ru)? {
            let flipped = Frame { xflip: !f.xflip, ..f };
            let next = self.repivot(pv, Fam::U, pv.p, &[flipped]);
            return self.reduce(next, "l_L r_L cuts p r_U", paint);
        }
        if line_cuts(&p, &ru, &ll, &rl)? {
            let frames = [Frame { yflip: !f.yflip, ..f }, f.rotated()];
            let next = self.repivot(pv, Fam::L, pv.r_l, &frames);
            return self.reduce(next, "p r_U cuts l_L r_L", paint);
        }
        let (nu, nl) = (pv.n(Fam::U), pv.n(Fam::L));
        pv.paint(paint, Fam::U, r_u + 1..nu, Color::Blue);
        pv.paint(paint, Fam::U, pv.p + 1..r_u + 1, Color::Red);
        pv.paint(paint, Fam::L, 0..pv.r_l, Color::Blue);
        paint.set(pv.src(Fam::U, pv.p), Color::Blue);
        paint.set(pv.src(Fam::L, pv.r_l), Color::Red);
        obs_separated(&pv.tips(Fam::U, 0..pv.p + 1), &pv.tips(Fam::L, pv.r_l..nl), paint)?;
        Ok(())
    }

    fn case_d(&mut self, pv: &Pivot<'a>, paint: &mut Paint) -> Result<(), EngineError> {
        let l_u = pv.l_u.expect("case D has l_U");
        let (p, lu, ll, rl) = (pv.pp(), pv.u(l_u), pv.l(pv.l_l), pv.l(pv.r_l));
        let f = pv.frame();
        let nl = pv.n(Fam::L);
        if line_cuts(&ll, &rl, &lu, &p)? {
            let frames = [Frame { yflip: !f.yflip, ..f }, f.rotated()];
            let next = self.repivot(pv, Fam::L, pv.l_l, &frames);
            return self.reduce(next, "l_L r_L cuts l_U p", paint);
        }
        if pv.r_u.is_none() && pv.l_l == 0 {
            pv.paint(paint, Fam::U, 0..pv.p, Color::Red);
            paint.set(pv.src(Fam::U, pv.p), Color::Blue);
            pv.paint(paint, Fam::L, pv.r_l + 1..nl, Color::Red);
            pv.paint(paint, Fam::L, pv.l_l + 1..pv.r_l + 1, Color::Blue);
            paint.set(pv.src(Fam::L, pv.l_l), Color::Red);
            return Ok(());
        }
        if let Some(r_u) = pv.r_u {
            let ru = pv.u(r_u);
            if ru.x > rl.x && !above(&rl, &p, &ru)? {
                pv.paint_all(paint, Color::Red);
                for s in [pv.src(Fam::U, r_u), pv.src(Fam::U, pv.p), pv.src(Fam::L, pv.r_l)] {
                    paint.set(s, Color::Blue);
                }
                return Ok(());
            }
        }
        if let Some(l_l2) = pv.l_l2 {
            let ll2 = pv.l(l_l2);
            if ll2.x < lu.x && above(&lu, &ll2, &ll)? {
                pv.paint_all(paint, Color::Red);
                for s in [pv.src(Fam::L, l_l2), pv.src(Fam::L, pv.l_l), pv.src(Fam::U, l_u)] {
                    paint.set(s, Color::Blue);
                }
                return Ok(());
            }
        }
        if let Some(r_u) = pv.r_u {
            if pv.u(r_u).x < rl.x {
                let next = self.repivot(pv, Fam::U, r_u, &[f]);
                if next.is_some() {
                    return self.reduce(next, "r_U before r_L", paint);
                }
            }
        }
        self.fallback(paint, "case D")
    }
}

fn case_a(pv: &Pivot, paint: &mut Paint) {
    pv.paint_all(paint, Color::Red);
    for s in [pv.src(Fam::U, pv.p), pv.src(Fam::L, pv.r_l), pv.src(Fam::L, pv.l_l)] {
        paint.set(s, Color::Blue);
    }
}

fn case_b(pv: &Pivot, paint: &mut Paint) -> Result<(), EngineError> {
    let (nu, nl) = (pv.n(Fam::U), pv.n(Fam::L));
    pv.paint(paint, Fam::U, 0..pv.p, Color::Red);
    pv.paint(paint, Fam::U, pv.p..nu, Color::Blue);
    pv.paint(paint, Fam::L, 0..pv.l_l, Color::Blue);
    paint.set(pv.src(Fam::L, pv.l_l), Color::Red);
    paint.set(pv.src(Fam::L, pv.r_l), Color::Blue);
    pv.paint(paint, Fam::L, pv.r_l + 1..nl, Color::Red);

    // second layer of the upward-ray tips
    let mut outer = vec![false; nl];
    for &i in pv.view.low0 {
        outer[i] = true;
    }
    let inner: Vec<usize> = (0..nl).filter(|&i| !outer[i]).collect();
    let layer1: Vec<usize> =
        pv.view.chain(Fam::L, &inner, crate::kernel::HullSide::Lower)?.into_iter().map(|k| inner[k]).collect();
    let between: Vec<usize> = layer1.iter().copied().filter(|&i| i > pv.l_l && i < pv.r_l).collect();
    if between.is_empty() {
        pv.paint(paint, Fam::L, pv.l_l + 1..pv.r_l, Color::Blue);
        return Ok(());
    }
    let rl = pv.l(pv.r_l);
    let last = *between.last().expect("non-empty");
    let after = layer1.iter().copied().find(|&i| i > last);
    let mut j = between.len() - 1;
    for k in 0..between.len() {
        let a = pv.l(between[k]);
        let passes_above = match between.get(k + 1).copied().or(after) {
            Some(next) => !above(&rl, &a, &pv.l(next))?,
            // sentinel slightly right of and below p'_k
            None => {
                if a.y == rl.y {
                    return Err(EngineError::GeneralPosition);
                }
                a.y > rl.y
            }
        };
        if passes_above {
            j = k;
            break;
        }
    }
    let pj = between[j];
    pv.paint(paint, Fam::L, pv.l_l + 1..pj, Color::Blue);
    pv.paint(paint, Fam::L, pj + 1..pv.r_l, Color::Red);

    let pjp = pv.l(pj);
    let mut best: Option<Point> = None;
    for i in (pv.l_l + 1..pv.r_l).filter(|&i| i != pj) {
        let w = pv.l(i);
        match best.as_ref().map(|b| cmp_slope_to(&w, b, &rl)) {
            Some(Ordering::Equal) => return Err(EngineError::GeneralPosition),
            Some(Ordering::Less) => {}
            _ => best = Some(w),
        }
    }
    let pj_blue = match best {
        None => false,
        Some(w) => {
            w.x > pjp.x
                && cmp_slope_to(&w, &pv.l(pv.l_l), &rl) == Ordering::Less
                && cmp_slope_to(&w, &pjp, &rl) == Ordering::Less
        }
    };
    paint.set(pv.src(Fam::L, pj), blue(pj_blue));
    Ok(())
}

fn c2(pv: &Pivot, paint: &mut Paint) -> Result<(), EngineError> {
    let r_l2 = pv.r_l2.expect("c2 needs r_L'");
    let (nu, nl) = (pv.n(Fam::U), pv.n(Fam::L));
    pv.paint(paint, Fam::U, pv.p + 1..nu, Color::Red);
    pv.paint(paint, Fam::L, 0..pv.l_l, Color::Red);
    pv.paint(paint, Fam::L, pv.l_l + 1..r_l2, Color::Red);
    paint.set(pv.src(Fam::U, pv.p), Color::Blue);
    paint.set(pv.src(Fam::L, pv.l_l), Color::Blue);
    paint.set(pv.src(Fam::L, r_l2), Color::Blue);
    let mut l = vec![pv.view.tip(Fam::L, pv.r_l)];
    l.extend(pv.tips(Fam::L, r_l2..nl));
    obs_separated(&pv.tips(Fam::U, 0..pv.p + 1), &l, paint)?;

    if c2_blue_edge(pv, paint) {
        let l_u = pv.l_u.expect("blue edge needs l_U");
        pv.paint_all(paint, Color::Red);
        for s in [pv.src(Fam::L, pv.l_l), pv.src(Fam::U, l_u), pv.src(Fam::L, pv.r_l)] {
            paint.set(s, Color::Blue);
        }
    }
    Ok(())
}

/// Whether `l_L`, `l_U` and `p` can form a blue edge after `c2`.
fn c2_blue_edge(pv: &Pivot, paint: &Paint) -> bool {
    let Some(l_u) = pv.l_u else {
        return false;
    };
    if paint.get(pv.src(Fam::U, l_u)) != Some(Color::Blue) {
        return false;
    }
    let (lu, ll) = (pv.u(l_u), pv.l(pv.l_l));
    pv.all_off(Fam::L, &[pv.l_l], &lu, &ll, true) && pv.all_off(Fam::U, &[pv.p, l_u], &lu, &ll, false)
}

fn c3(pv: &Pivot, paint: &mut Paint) -> Result<(), EngineError> {
    let (l_u, r_u) = (pv.l_u.expect("c3 needs l_U"), pv.r_u.expect("c3 needs r_U"));
    let nl = pv.n(Fam::L);
    pv.paint(paint, Fam::U, l_u + 1..r_u, Color::Blue);
    pv.paint(paint, Fam::L, pv.l_l + 1..pv.r_l, Color::Blue);
    for s in [pv.src(Fam::U, l_u), pv.src(Fam::U, r_u), pv.src(Fam::L, pv.r_l)] {
        paint.set(s, Color::Red);
    }
    let mut u = pv.tips(Fam::U, 0..l_u + 1);
    u.push(pv.view.tip(Fam::U, pv.p));
    obs_separated(&u, &pv.tips(Fam::L, pv.r_l..nl), paint)?;

    let m = pv.mirror();
    let (ml_u, mnl) = (m.l_u.expect("mirrored r_U"), m.n(Fam::L));
    let mut u = m.tips(Fam::U, 0..ml_u + 1);
    u.push(m.view.tip(Fam::U, m.p));
    obs_separated(&u, &m.tips(Fam::L, m.r_l..mnl), paint)?;
    Ok(())
}

fn c4(pv: &Pivot, paint: &mut Paint) -> Result<(), EngineError> {
    paint.set(pv.src(Fam::U, pv.p), Color::Blue);
    paint.set(pv.src(Fam::L, pv.r_l), Color::Red);
    pv.paint(paint, Fam::L, pv.l_l + 1..pv.r_l, Color::Blue);
    obs_separated(&pv.tips(Fam::U, 0..pv.p + 1), &pv.tips(Fam::L, pv.r_l..pv.n(Fam::L)), paint)?;
    let m = pv.mirror();
    obs_separated(&m.tips(Fam::U, 0..m.p + 1), &m.tips(Fam::L, m.r_l..m.n(Fam::L)), paint)?;
    if !c4_fixup(pv, paint) {
        c4_fixup(&m, paint);
    }
    Ok(())
}

/// Breaks a blue edge `{l_L', l_U, p}` if one can form.
fn c4_fixup(pv: &Pivot, paint: &mut Paint) -> bool {
    let (Some(l_l2), Some(l_u)) = (pv.l_l2, pv.l_u) else {
        return false;
    };
    let trio = [pv.src(Fam::L, l_l2), pv.src(Fam::U, l_u), pv.src(Fam::U, pv.p)];
    if !trio.iter().all(|&s| paint.get(s) == Some(Color::Blue)) {
        return false;
    }
    let (lu, ll, ll2) = (pv.u(l_u), pv.l(pv.l_l), pv.l(l_l2));
    let skip_u = [l_u, pv.p];
    let tangent = pv.all_off(Fam::L, &[l_l2], &lu, &ll2, true) && pv.all_off(Fam::U, &skip_u, &lu, &ll2, false);
    let chord = pv.all_off(Fam::U, &skip_u, &ll2, &ll, false);
    if !(tangent || chord) {
        return false;
    }
    paint.set(pv.src(Fam::L, l_l2), Color::Red);
    true
}

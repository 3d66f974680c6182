//! Mirrored views of a dual scene without copying it.

use crate::kernel::{monotone_chain, orientation, HullSide, KernelError, OnCollinear, Orientation, Point};
use crate::model::{DualScene, Tip};

use super::EngineError;

/// The two ray families as seen through a frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Fam {
    /// Tips of downward rays.
    U,
    /// Tips of upward rays.
    L,
}

/// A dual scene with its outer hull chains.
pub(crate) struct Base {
    pub upper: Vec<Tip>,
    pub lower: Vec<Tip>,
    pub up0: Vec<usize>,
    pub low0: Vec<usize>,
    /// Outer chains in view positions, per frame.
    framed: Vec<(Vec<usize>, Vec<usize>)>,
}

pub(crate) fn gp<T>(r: Result<T, KernelError>) -> Result<T, EngineError> {
    r.map_err(|e| match e {
        KernelError::Collinear | KernelError::DuplicateX(_) => EngineError::GeneralPosition,
        other => EngineError::Internal(other.to_string()),
    })
}

pub(crate) fn chain_of(tips: &[Tip], side: HullSide) -> Result<Vec<usize>, EngineError> {
    let pts: Vec<&Point> = tips.iter().map(|t| &t.pt).collect();
    gp(monotone_chain(&pts, side, OnCollinear::Reject))
}

impl Base {
    pub fn new(scene: DualScene) -> Result<Base, EngineError> {
        let mut base = Base {
            up0: chain_of(&scene.upper, HullSide::Upper)?,
            low0: chain_of(&scene.lower, HullSide::Lower)?,
            upper: scene.upper,
            lower: scene.lower,
            framed: Vec::new(),
        };
        let framed = Frame::ALL
            .iter()
            .map(|&frame| {
                let v = View { base: &base, frame, up0: &[], low0: &[] };
                (v.hull_in_view(Fam::U), v.hull_in_view(Fam::L))
            })
            .collect();
        base.framed = framed;
        Ok(base)
    }
}

/// Left-right and up-down mirroring. An up-down mirror trades the families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub(crate) struct Frame {
    pub xflip: bool,
    pub yflip: bool,
}

impl Frame {
    pub const ALL: [Frame; 4] = [
        Frame { xflip: false, yflip: false },
        Frame { xflip: true, yflip: false },
        Frame { xflip: false, yflip: true },
        Frame { xflip: true, yflip: true },
    ];

    fn slot(self) -> usize {
        self.xflip as usize + 2 * self.yflip as usize
    }

    pub fn rotated(self) -> Frame {
        Frame { xflip: !self.xflip, yflip: !self.yflip }
    }
}

pub(crate) struct View<'a> {
    pub base: &'a Base,
    pub frame: Frame,
    pub up0: &'a [usize],
    pub low0: &'a [usize],
}

impl<'a> View<'a> {
    pub fn new(base: &'a Base, frame: Frame) -> View<'a> {
        let (up0, low0) = &base.framed[frame.slot()];
        View { base, frame, up0, low0 }
    }

    fn base_tips(&self, f: Fam) -> &'a [Tip] {
        match (f, self.frame.yflip) {
            (Fam::U, false) | (Fam::L, true) => &self.base.upper,
            _ => &self.base.lower,
        }
    }

    fn hull_in_view(&self, f: Fam) -> Vec<usize> {
        let h = match (f, self.frame.yflip) {
            (Fam::U, false) | (Fam::L, true) => &self.base.up0,
            _ => &self.base.low0,
        };
        if self.frame.xflip {
            let n = self.len(f);
            h.iter().rev().map(|&i| n - 1 - i).collect()
        } else {
            h.clone()
        }
    }

    pub fn len(&self, f: Fam) -> usize {
        self.base_tips(f).len()
    }

    fn raw(&self, f: Fam, i: usize) -> usize {
        if self.frame.xflip {
            self.len(f) - 1 - i
        } else {
            i
        }
    }

    pub fn src(&self, f: Fam, i: usize) -> usize {
        self.base_tips(f)[self.raw(f, i)].src
    }

    pub fn pt(&self, f: Fam, i: usize) -> Point {
        let p = &self.base_tips(f)[self.raw(f, i)].pt;
        let x = if self.frame.xflip { -&p.x } else { p.x.clone() };
        let y = if self.frame.yflip { -&p.y } else { p.y.clone() };
        Point::new(x, y)
    }

    pub fn tip(&self, f: Fam, i: usize) -> Tip {
        Tip { pt: self.pt(f, i), src: self.src(f, i) }
    }

    pub fn tips(&self, f: Fam, range: std::ops::Range<usize>) -> Vec<Tip> {
        range.map(|i| self.tip(f, i)).collect()
    }

    /// Hull chain of the tips at view positions `idx` (ascending), as
    /// positions into `idx`. Runs on the unmirrored points.
    pub fn chain(&self, f: Fam, idx: &[usize], side: HullSide) -> Result<Vec<usize>, EngineError> {
        let tips = self.base_tips(f);
        let side = match (side, self.frame.yflip) {
            (s, false) => s,
            (HullSide::Upper, true) => HullSide::Lower,
            (HullSide::Lower, true) => HullSide::Upper,
        };
        let mut pts: Vec<&Point> = idx.iter().map(|&i| &tips[self.raw(f, i)].pt).collect();
        if self.frame.xflip {
            pts.reverse();
        }
        let mut hull = gp(monotone_chain(&pts, side, OnCollinear::Reject))?;
        if self.frame.xflip && !idx.is_empty() {
            let last = idx.len() - 1;
            hull.iter_mut().for_each(|k| *k = last - *k);
            hull.reverse();
        }
        Ok(hull)
    }

    /// Position of a base tip in this view, given its family in `other`.
    pub fn index_from(&self, other: &View, f: Fam, i: usize) -> (Fam, usize) {
        let raw = other.raw(f, i);
        let fam = if self.frame.yflip == other.frame.yflip {
            f
        } else {
            match f {
                Fam::U => Fam::L,
                Fam::L => Fam::U,
            }
        };
        let i = if self.frame.xflip { self.len(fam) - 1 - raw } else { raw };
        (fam, i)
    }
}

/// Orientation that treats collinearity as a general-position failure.
pub(crate) fn orient(a: &Point, b: &Point, c: &Point) -> Result<Orientation, EngineError> {
    match orientation(a, b, c) {
        Orientation::Collinear => Err(EngineError::GeneralPosition),
        o => Ok(o),
    }
}

/// Whether `c` lies strictly above the line through `a` and `b`.
pub(crate) fn above(c: &Point, a: &Point, b: &Point) -> Result<bool, EngineError> {
    let (a, b) = if a.x < b.x { (a, b) } else { (b, a) };
    if a.x == b.x {
        return Err(EngineError::GeneralPosition);
    }
    Ok(orient(a, b, c)? == Orientation::Left)
}

/// Whether the segments `ab` and `cd` share a point. Touching at an
/// endpoint is a general-position failure.
pub(crate) fn crosses(a: &Point, b: &Point, c: &Point, d: &Point) -> Result<bool, EngineError> {
    let o1 = orient(a, b, c)?;
    let o2 = orient(a, b, d)?;
    let o3 = orient(c, d, a)?;
    let o4 = orient(c, d, b)?;
    Ok(o1 != o2 && o3 != o4)
}

/// Whether the line through `a` and `b` separates `c` from `d`.
pub(crate) fn line_cuts(a: &Point, b: &Point, c: &Point, d: &Point) -> Result<bool, EngineError> {
    Ok(orient(a, b, c)? != orient(a, b, d)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{generate, GenMode};
    use crate::model::dualize;

    #[test]
    fn view_chain_matches_mirrored_tips() {
        for seed in 0..40 {
            let scene = dualize(&generate(30, GenMode::Covered, seed, 1 << 20)).unwrap();
            let base = Base::new(scene).unwrap();
            for frame in Frame::ALL {
                let v = View::new(&base, frame);
                for f in [Fam::U, Fam::L] {
                    let idx: Vec<usize> = (0..v.len(f)).filter(|i| (i + seed as usize) % 3 != 0).collect();
                    for side in [HullSide::Upper, HullSide::Lower] {
                        let tips: Vec<Tip> = idx.iter().map(|&i| v.tip(f, i)).collect();
                        assert_eq!(v.chain(f, &idx, side).ok(), chain_of(&tips, side).ok());
                    }
                }
            }
        }
    }
}

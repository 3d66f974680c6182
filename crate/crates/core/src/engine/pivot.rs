//! Pivot discovery and case classification.

use std::fmt;

use crate::kernel::Point;

use super::frame::{above, crosses, Base, Fam, Frame, View};
use super::EngineError;

/// Which recipe colours a pivot configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseTag {
    /// `r_L` above `h`.
    A,
    /// `r_L` below `h`, no crossing, `l_L < l_U`.
    B,
    /// Segments `l_U p` and `l_L r_L` cross.
    C(CSub),
    /// `r_L` below `h`, no crossing, `l_L > l_U`.
    D,
    /// A single downward ray.
    SingletonU,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CSub {
    C1Right,
    C1Left,
    C2Right,
    C2Left,
    C3,
    C4,
    Below,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseTag::A => f.write_str("A"),
            CaseTag::B => f.write_str("B"),
            CaseTag::D => f.write_str("D"),
            CaseTag::SingletonU => f.write_str("SingletonU"),
            CaseTag::C(s) => f.write_str(match s {
                CSub::C1Right => "C1",
                CSub::C1Left => "C1L",
                CSub::C2Right => "C2",
                CSub::C2Left => "C2L",
                CSub::C3 => "C3",
                CSub::C4 => "C4",
                CSub::Below => "CBelow",
            }),
        }
    }
}

/// A downward-ray hull vertex `p` lying in the upward rays' hull region,
/// with its neighbours. Indices are positions in the view's families.
pub(crate) struct Pivot<'a> {
    pub view: View<'a>,
    pub p: usize,
    pub l_u: Option<usize>,
    pub r_u: Option<usize>,
    pub l_l: usize,
    pub r_l: usize,
    pub l_l2: Option<usize>,
    pub r_l2: Option<usize>,
}

impl<'a> Pivot<'a> {
    /// Builds the configuration around the `U` tip `p` of `view`, or `None`
    /// when `p` is not an outer hull vertex inside the other region.
    pub fn at(view: View<'a>, p: usize) -> Option<Pivot<'a>> {
        let hp = view.up0.iter().position(|&i| i == p)?;
        let low0 = view.low0;
        if low0.len() < 2 {
            return None;
        }
        let pp = view.pt(Fam::U, p);
        let j = low0.partition_point(|&i| view.pt(Fam::L, i).x < pp.x);
        if j == 0 || j == low0.len() {
            return None;
        }
        let (a, b) = (view.pt(Fam::L, low0[j - 1]), view.pt(Fam::L, low0[j]));
        if !matches!(above(&pp, &a, &b), Ok(true)) {
            return None;
        }
        let up0 = view.up0;
        Some(Pivot {
            p,
            l_u: hp.checked_sub(1).map(|k| up0[k]),
            r_u: up0.get(hp + 1).copied(),
            l_l: low0[j - 1],
            r_l: low0[j],
            l_l2: (j >= 2).then(|| low0[j - 2]),
            r_l2: low0.get(j + 1).copied(),
            view,
        })
    }

    pub fn u(&self, i: usize) -> Point {
        self.view.pt(Fam::U, i)
    }

    pub fn l(&self, i: usize) -> Point {
        self.view.pt(Fam::L, i)
    }

    pub fn pp(&self) -> Point {
        self.u(self.p)
    }

    pub fn frame(&self) -> Frame {
        self.view.frame
    }

    /// The same base tip as a pivot in another frame.
    pub fn repivot(&self, base: &'a Base, frame: Frame, f: Fam, i: usize) -> Option<Pivot<'a>> {
        let view = View::new(base, frame);
        let (fam, j) = view.index_from(&self.view, f, i);
        if fam != Fam::U {
            return None;
        }
        Pivot::at(view, j)
    }
}

/// Every admissible pivot in the four frames, in a fixed order. A pivot
/// must not be the leftmost downward-ray tip unless it is the only one.
pub(crate) fn candidates(base: &Base) -> Vec<Pivot<'_>> {
    let mut out = Vec::new();
    for yflip in [false, true] {
        for xflip in [false, true] {
            let frame = Frame { xflip, yflip };
            let view = View::new(base, frame);
            let n_u = view.len(Fam::U);
            for &p in view.up0 {
                if p == 0 && n_u > 1 {
                    continue;
                }
                if n_u == 1 && xflip {
                    continue;
                }
                if let Some(pv) = Pivot::at(View::new(base, frame), p) {
                    out.push(pv);
                }
            }
        }
    }
    out
}

/// The top-level split before subcases are resolved.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Coarse {
    A,
    B,
    C,
    D,
    SingletonU,
}

pub(crate) fn classify(pv: &Pivot) -> Result<Coarse, EngineError> {
    let Some(l_u) = pv.l_u else {
        return Ok(Coarse::SingletonU);
    };
    let (p, lu, ll, rl) = (pv.pp(), pv.u(l_u), pv.l(pv.l_l), pv.l(pv.r_l));
    let crossing = crosses(&lu, &p, &ll, &rl)?;
    if above(&rl, &lu, &p)? {
        if crossing {
            return Err(EngineError::Internal("r_L above h yet l_U p crosses l_L r_L".into()));
        }
        return Ok(Coarse::A);
    }
    if crossing {
        return Ok(Coarse::C);
    }
    Ok(if ll.x < lu.x { Coarse::B } else { Coarse::D })
}

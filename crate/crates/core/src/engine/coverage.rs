//! Does the instance cover the plane? Decided on the two outer hull chains.

use std::cmp::Ordering;

use crate::kernel::{abs, chain_eval, cross_sign, int, midpoint, HullChain, HullSide, Line, Point, Scalar};

use super::frame::Base;
use super::EngineError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coverage {
    /// A point inside both hull regions.
    Covered { witness: Point },
    /// A line with every downward-ray tip strictly below it and every
    /// upward-ray tip strictly above it.
    Separated { line: Line },
}

/// A slope, given by two points in increasing x.
type Dir<'a> = (&'a Point, &'a Point);

fn slope((a, b): Dir) -> Scalar {
    (&b.y - &a.y) / (&b.x - &a.x)
}

fn cmp_dir(d: Dir, e: Dir) -> Ordering {
    cross_sign(d.0, d.1, e.0, e.1).reverse()
}

/// First vertex whose outgoing edge satisfies `stop`, or the last vertex.
fn first_edge(v: &[Point], stop: impl Fn(Ordering) -> bool, m: Dir) -> usize {
    let (mut lo, mut hi) = (0, v.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if stop(cmp_dir((&v[mid], &v[mid + 1]), m)) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

/// Vertex attaining `max (y - m x)` over an upper chain.
fn upper_support(v: &[Point], m: Dir) -> usize {
    first_edge(v, |o| o != Ordering::Greater, m)
}

/// Vertex attaining `min (y - m x)` over a lower chain.
fn lower_support(v: &[Point], m: Dir) -> usize {
    first_edge(v, |o| o != Ordering::Less, m)
}

/// Edge slopes of both chains in increasing order, without repeats.
fn edge_dirs<'a>(up: &'a [Point], low: &'a [Point]) -> Vec<Dir<'a>> {
    let mut a = up.windows(2).rev().map(|w| (&w[0], &w[1])).peekable();
    let mut b = low.windows(2).map(|w| (&w[0], &w[1])).peekable();
    let mut out: Vec<Dir> = Vec::new();
    loop {
        let next = match (a.peek(), b.peek()) {
            (Some(&x), Some(&y)) => {
                if cmp_dir(x, y) == Ordering::Greater {
                    b.next()
                } else {
                    a.next()
                }
            }
            (Some(_), None) => a.next(),
            (None, _) => b.next(),
        };
        let Some(d) = next else { return out };
        if out.last().map_or(true, |&l| cmp_dir(l, d) != Ordering::Equal) {
            out.push(d);
        }
    }
}

/// First maximiser of a concave sequence of length `n >= 1`.
fn concave_argmax<E>(n: usize, mut value: impl FnMut(usize) -> Result<Scalar, E>) -> Result<usize, E> {
    let (mut lo, mut hi) = (0, n - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if value(mid)? >= value(mid + 1)? {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(lo)
}

fn sorted_unique(mut v: Vec<Scalar>) -> Vec<Scalar> {
    v.sort();
    v.dedup();
    v
}

pub(crate) fn coverage(base: &Base) -> Result<Coverage, EngineError> {
    let up: Vec<Point> = base.up0.iter().map(|&i| base.upper[i].pt.clone()).collect();
    let low: Vec<Point> = base.low0.iter().map(|&i| base.lower[i].pt.clone()).collect();
    if low.is_empty() {
        let top = up.iter().map(|p| &p.y).max().cloned().unwrap_or_else(|| int(0));
        return Ok(Coverage::Separated { line: Line::new(int(0), top + int(1)) });
    }
    if up.is_empty() {
        let bottom = low.iter().map(|p| &p.y).min().cloned().expect("non-empty");
        return Ok(Coverage::Separated { line: Line::new(int(0), bottom - int(1)) });
    }
    let (ul, ur) = (&up[0].x, &up[up.len() - 1].x);
    let (ll, lr) = (&low[0].x, &low[low.len() - 1].x);
    if ur < ll || lr < ul {
        // disjoint spans: a steep line through the gap
        let top = up.iter().map(|p| &p.y).max().expect("non-empty");
        let bottom = low.iter().map(|p| &p.y).min().expect("non-empty");
        let (gap, x0, sign) = if ur < ll { (ll - ur, midpoint(ur, ll), -1) } else { (ul - lr, midpoint(lr, ul), 1) };
        let steep = (abs(top) + abs(bottom) + int(1)) * int(2) / gap * int(sign);
        let intercept = -(&steep * &x0);
        return Ok(Coverage::Separated { line: Line::new(steep, intercept) });
    }

    let flat = (Point::new(int(0), int(0)), Point::new(int(1), int(0)));
    let mut dirs = edge_dirs(&up, &low);
    if dirs.is_empty() {
        // two single tips over one x: every slope gives the same gap
        dirs.push((&flat.0, &flat.1));
    }
    let support = |m: Dir| {
        let (u, l) = (&up[upper_support(&up, m)], &low[lower_support(&low, m)]);
        let m = slope(m);
        let (f, g) = (&u.y - &m * &u.x, &l.y - &m * &l.x);
        (m, f, g)
    };
    let k = concave_argmax(dirs.len(), |i| {
        let (_, f, g) = support(dirs[i]);
        Ok::<_, EngineError>(g - f)
    })?;
    let (m, f, g) = support(dirs[k]);
    if g > f {
        return Ok(Coverage::Separated { line: Line::new(m, midpoint(&f, &g)) });
    }

    let (lo, hi) = (ul.max(ll), ur.min(lr));
    let uc = HullChain { side: HullSide::Upper, vertices: up.clone() };
    let lc = HullChain { side: HullSide::Lower, vertices: low.clone() };
    let xs = sorted_unique(
        up.iter().chain(low.iter()).map(|p| &p.x).chain([lo, hi]).filter(|x| *x >= lo && *x <= hi).cloned().collect(),
    );
    let eval = |x: &Scalar| -> Result<(Scalar, Scalar), EngineError> {
        let yu = chain_eval(&uc, x).map_err(|e| EngineError::Internal(e.to_string()))?;
        let yl = chain_eval(&lc, x).map_err(|e| EngineError::Internal(e.to_string()))?;
        Ok((yu, yl))
    };
    let k = concave_argmax(xs.len(), |i| eval(&xs[i]).map(|(yu, yl)| yu - yl))?;
    let (yu, yl) = eval(&xs[k])?;
    if yu < yl {
        return Err(EngineError::Internal("hull regions neither meet nor separate".into()));
    }
    Ok(Coverage::Covered { witness: Point::new(xs[k].clone(), midpoint(&yu, &yl)) })
}

//! Colouring a scene whose downward rays all lie left of its upward rays.

use crate::kernel::{monotone_chain, tangent_from_point, HullChain, HullSide, Line, OnCollinear, Point};
use crate::model::{Color, Tip};

use super::frame::{above, chain_of, gp, line_cuts};
use super::{EngineError, Paint};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObsBranch {
    /// Neither neighbour line cuts the other pair's segment.
    Two,
    Three,
    /// The 180-degree rotation of `Three`, with colours swapped.
    ThreeMirrored,
}

fn rotate(tips: &[Tip]) -> Vec<Tip> {
    tips.iter().rev().map(|t| Tip { pt: Point::new(-&t.pt.x, -&t.pt.y), src: t.src }).collect()
}

fn strictly_above(pt: &Point, m: &Line) -> bool {
    pt.y > m.eval(&pt.x)
}

fn strictly_below(pt: &Point, m: &Line) -> bool {
    pt.y < m.eval(&pt.x)
}

/// Why `u` and `l` are not a separated configuration for [`obs_separated`],
/// or `None` when they are.
pub(crate) fn violated_assumption(u: &[Tip], l: &[Tip]) -> Result<Option<&'static str>, EngineError> {
    Ok(separated_chains(u, l)?.err())
}

type Chains = (Vec<usize>, Vec<usize>);

fn separated_chains(u: &[Tip], l: &[Tip]) -> Result<Result<Chains, &'static str>, EngineError> {
    let (Some(p), Some(q)) = (u.last(), l.first()) else {
        return Ok(Err("separated subroutine needs both p and q"));
    };
    if p.pt.x >= q.pt.x {
        return Ok(Err("separated subroutine needs p < q"));
    }
    let uh = chain_of(u, HullSide::Upper)?;
    let lh = chain_of(l, HullSide::Lower)?;
    if uh.len() >= 2 && above(&q.pt, &u[uh[uh.len() - 2]].pt, &p.pt)? {
        return Ok(Err("line l_U p passes below q"));
    }
    if lh.len() >= 2 && !above(&p.pt, &q.pt, &l[lh[1]].pt)? {
        return Ok(Err("line q r_L passes above p"));
    }
    Ok(Ok((uh, lh)))
}

/// Colours the still-uncoloured tips of `u` (ending with `p`) and `l`
/// (starting with `q`). Already coloured tips keep their colour.
pub(crate) fn obs_separated(u: &[Tip], l: &[Tip], paint: &mut Paint) -> Result<ObsBranch, EngineError> {
    let (uh, lh) = separated_chains(u, l)?.map_err(|why| EngineError::Internal(why.into()))?;
    let (p, q) = (&u[u.len() - 1], &l[0]);
    let l_u = (uh.len() >= 2).then(|| &u[uh[uh.len() - 2]].pt);
    let r_l = (lh.len() >= 2).then(|| &l[lh[1]].pt);
    let three = match (l_u, r_l) {
        (None, _) => true,
        (Some(lu), Some(rl)) => line_cuts(&q.pt, rl, lu, &p.pt)?,
        (Some(_), None) => false,
    };
    if three {
        observation_three(u, l, Some(lh), paint, false)?;
        return Ok(ObsBranch::Three);
    }
    let mirrored = match (l_u, r_l) {
        (_, None) => true,
        (Some(lu), Some(rl)) => line_cuts(lu, &p.pt, &q.pt, rl)?,
        (None, Some(_)) => unreachable!("handled above"),
    };
    if mirrored {
        observation_three(&rotate(l), &rotate(u), None, paint, true)?;
        return Ok(ObsBranch::ThreeMirrored);
    }
    paint.fill(p.src, Color::Blue);
    paint.fill(q.src, Color::Red);
    for t in &u[..u.len() - 1] {
        paint.fill(t.src, Color::Red);
    }
    for t in &l[1..] {
        paint.fill(t.src, Color::Blue);
    }
    Ok(ObsBranch::Two)
}

fn observation_three(
    u: &[Tip],
    l: &[Tip],
    lh: Option<Vec<usize>>,
    paint: &mut Paint,
    swap: bool,
) -> Result<(), EngineError> {
    let mut put = |src: usize, c: Color| paint.fill(src, if swap { c.swapped() } else { c });
    let p = &u[u.len() - 1];
    let q = &l[0];
    put(p.src, Color::Blue);
    put(q.src, Color::Red);
    for t in &u[..u.len() - 1] {
        put(t.src, Color::Red);
    }
    let lh = match lh {
        Some(lh) => lh,
        None => chain_of(l, HullSide::Lower)?,
    };
    if lh.len() < 2 {
        return Ok(());
    }
    let ri = lh[1];
    for t in &l[1..ri] {
        put(t.src, Color::Blue);
    }
    for t in &l[ri + 1..] {
        put(t.src, Color::Red);
    }
    let red = r_l_turns_red(u, l, &lh)?;
    put(l[ri].src, if red { Color::Red } else { Color::Blue });
    Ok(())
}

/// The tangent rule: `r_L` is red iff the lower tangent `m` from `q` to the
/// second layer touches it at a point `p'` strictly between `q` and `r_L`,
/// every upward-ray tip other than `q`, `p'`, `r_L` lies strictly above `m`
/// and every downward-ray tip other than `p` strictly below it.
fn r_l_turns_red(u: &[Tip], l: &[Tip], lh: &[usize]) -> Result<bool, EngineError> {
    let q = &l[0].pt;
    let r_l = &l[lh[1]].pt;
    let mut on_hull = vec![false; l.len()];
    for &i in lh {
        on_hull[i] = true;
    }
    let inner: Vec<&Point> = l.iter().zip(&on_hull).filter(|(_, &h)| !h).map(|(t, _)| &t.pt).collect();
    if inner.is_empty() {
        return Ok(false);
    }
    let ih = gp(monotone_chain(&inner, HullSide::Lower, OnCollinear::Reject))?;
    let chain = HullChain { side: HullSide::Lower, vertices: ih.iter().map(|&i| inner[i].clone()).collect() };
    let t = gp(tangent_from_point(q, &chain))?;
    if t.touch.len() != 1 {
        return Err(EngineError::GeneralPosition);
    }
    let touch = &t.touch[0];
    if !(q.x < touch.x && touch.x < r_l.x) {
        return Ok(false);
    }
    let m = &t.line;
    let l_ok =
        l.iter().map(|t| &t.pt).filter(|pt| *pt != q && *pt != touch && *pt != r_l).all(|pt| strictly_above(pt, m));
    let u_ok = u[..u.len() - 1].iter().all(|t| strictly_below(&t.pt, m));
    Ok(l_ok && u_ok)
}

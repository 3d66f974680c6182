//! Seeded instance generators.

use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::engine::{classify_coverage, Coverage};
use crate::kernel::{int, Point};
use crate::model::{HalfPlane, Instance, Side};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenMode {
    /// Independent integer coefficients and sides.
    Random,
    /// Distinct slopes, resampled until the plane is covered. Fewer than
    /// three such half-planes never cover it and are returned unchecked.
    Covered,
    /// Every half-plane avoids a random point.
    Uncovered,
    /// Planted parallel pairs, duplicates and concurrent triples.
    Degenerate,
}

impl GenMode {
    pub const ALL: [GenMode; 4] = [GenMode::Random, GenMode::Covered, GenMode::Uncovered, GenMode::Degenerate];

    pub fn name(self) -> &'static str {
        match self {
            GenMode::Random => "random",
            GenMode::Covered => "covered",
            GenMode::Uncovered => "uncovered",
            GenMode::Degenerate => "degenerate",
        }
    }
}

impl fmt::Display for GenMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GenMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GenMode::ALL.into_iter().find(|m| m.name() == s).ok_or_else(|| format!("unknown mode {s:?}"))
    }
}

fn side(rng: &mut ChaCha8Rng) -> Side {
    if rng.gen() {
        Side::Upper
    } else {
        Side::Lower
    }
}

fn coef(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    rng.gen_range(-bound..=bound)
}

/// `n` half-planes with integer coefficients in `[-bound, bound]` (widened
/// where the mode needs room), reproducible from `seed`.
pub fn generate(n: usize, mode: GenMode, seed: u64, bound: i64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bound = bound.max(1);
    match mode {
        GenMode::Random => random(&mut rng, n, bound),
        GenMode::Covered => covered(&mut rng, n, bound),
        GenMode::Uncovered => uncovered(&mut rng, n, bound),
        GenMode::Degenerate => degenerate(&mut rng, n, bound),
    }
}

fn random(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> Instance {
    Instance::new((0..n).map(|_| HalfPlane::new(int(coef(rng, bound)), int(coef(rng, bound)), side(rng))).collect())
}

fn distinct_slopes(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> Instance {
    let b = bound.max(n as i64);
    let slopes = sample(rng, (2 * b + 1) as usize, n);
    Instance::new(slopes.into_iter().map(|s| HalfPlane::new(int(s as i64 - b), int(coef(rng, b)), side(rng))).collect())
}

fn covered(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> Instance {
    loop {
        let inst = distinct_slopes(rng, n, bound);
        if n < 3 || matches!(classify_coverage(&inst), Ok(Coverage::Covered { .. })) {
            return inst;
        }
    }
}

fn uncovered(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> Instance {
    let o = Point::from_ints(coef(rng, bound), coef(rng, bound));
    let mut hp = Vec::with_capacity(n);
    while hp.len() < n {
        let h = HalfPlane::new(int(coef(rng, bound)), int(coef(rng, bound)), side(rng));
        if h.boundary().eval(&o.x) == o.y {
            continue;
        }
        hp.push(if h.contains(&o) { HalfPlane::new(h.a, h.b, h.side.opposite()) } else { h });
    }
    Instance::new(hp)
}

fn degenerate(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> Instance {
    let mut hp = random(rng, n, bound).halfplanes;
    let mut k = 1;
    while k < n {
        let src = rng.gen_range(0..k);
        match rng.gen_range(0..3) {
            0 => hp[k] = HalfPlane::new(hp[src].a.clone(), int(coef(rng, bound)), side(rng)),
            1 => hp[k] = hp[src].clone(),
            _ => {
                let p = Point::from_ints(coef(rng, bound), coef(rng, bound));
                for h in hp.iter_mut().skip(k).take(3) {
                    let a = int(coef(rng, bound));
                    let b = &p.y - &a * &p.x;
                    *h = HalfPlane::new(a, b, side(rng));
                }
                k += 2;
            }
        }
        k += 2;
    }
    Instance::new(hp)
}

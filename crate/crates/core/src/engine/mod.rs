//! The colouring engine.
//!
//! [`solve`] dualizes the instance, decides whether the half-planes cover
//! the plane, and hands covered scenes to the case machine and uncovered
//! ones to [`crate::uncovered`]. Degenerate input is retried on perturbed
//! copies, and every result is checked by the exact verifier before it is
//! returned.

mod cases;
pub mod coverage;
mod frame;
pub mod pivot;
mod separated;

use std::borrow::Cow;

use thiserror::Error;

use crate::model::{dualize, perturb_unchecked, Color, Coloring, DualScene, Instance};
use crate::verify::verify;

pub use cases::{PivotPolicy, MAX_DISPATCH_DEPTH};
pub use coverage::Coverage;
pub use pivot::{CSub, CaseTag};
pub use separated::ObsBranch;

use cases::Machine;
use frame::Base;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("input is not in general position")]
    GeneralPosition,
    #[error("internal error: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("no valid colouring after {attempts} attempts")]
    AttemptsExhausted { attempts: u32 },
    #[error("internal error: {0}")]
    Internal(String),
}

/// Colours collected by the recipes, indexed by half-plane.
pub(crate) struct Paint {
    colors: Vec<Option<Color>>,
}

impl Paint {
    pub fn new(n: usize) -> Paint {
        Paint { colors: vec![None; n] }
    }

    pub fn set(&mut self, src: usize, c: Color) {
        self.colors[src] = Some(c);
    }

    /// Colours `src` unless it already has a colour.
    pub fn fill(&mut self, src: usize, c: Color) {
        self.colors[src].get_or_insert(c);
    }

    pub fn clear(&mut self) {
        self.colors.fill(None);
    }

    pub fn get(&self, src: usize) -> Option<Color> {
        self.colors[src]
    }

    pub fn finish(self) -> Result<Coloring, EngineError> {
        match self.colors.iter().position(Option::is_none) {
            Some(i) => Err(EngineError::Internal(format!("half-plane {i} left uncoloured"))),
            None => Ok(Coloring::new(self.colors.into_iter().flatten().collect())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOptions {
    pub max_attempts: u32,
    /// Check each result with the exact verifier before accepting it.
    pub verify: bool,
    pub policy: PivotPolicy,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { max_attempts: 8, verify: true, policy: PivotPolicy::First }
    }
}

impl SolveOptions {
    /// Defaults, with `HPCOLOR_MAX_ATTEMPTS` overriding the attempt budget.
    pub fn from_env() -> SolveOptions {
        let mut opts = SolveOptions::default();
        if let Some(n) = std::env::var("HPCOLOR_MAX_ATTEMPTS").ok().and_then(|v| v.trim().parse().ok()) {
            opts.max_attempts = n;
        }
        opts
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub coloring: Coloring,
    /// Number of instances tried, the original included.
    pub attempts: u32,
    /// The recipes applied, joined by `>`.
    pub path: String,
}

/// Two-colours `inst` so that every point covered at least three times is
/// covered by both colours.
pub fn solve(inst: &Instance) -> Result<Coloring, SolveError> {
    solve_with(inst, &SolveOptions::from_env()).map(|r| r.coloring)
}

pub fn solve_with(inst: &Instance, opts: &SolveOptions) -> Result<SolveReport, SolveError> {
    let n = inst.len();
    if n < 3 {
        return Ok(SolveReport { coloring: Coloring::uniform(n, Color::Blue), attempts: 0, path: "trivial".into() });
    }
    let mut internal = None;
    for attempt in 0..opts.max_attempts {
        let clean = if attempt == 0 { dualize(inst).ok() } else { None };
        let (work, scene) = match clean {
            Some(scene) => (Cow::Borrowed(inst), Ok(scene)),
            None => {
                let work = perturb_unchecked(inst, attempt);
                let scene = dualize(&work);
                (Cow::Owned(work), scene)
            }
        };
        let outcome = scene
            .map_err(|_| EngineError::GeneralPosition)
            .and_then(|scene| attempt_once(inst, &work, scene, opts.policy));
        match outcome {
            Ok((coloring, path)) => {
                if opts.verify {
                    match verify(inst, &coloring, 3) {
                        Ok(v) if v.is_good() => {}
                        Ok(_) => continue,
                        Err(e) => return Err(SolveError::Internal(e.to_string())),
                    }
                }
                return Ok(SolveReport { coloring, attempts: attempt + 1, path });
            }
            Err(EngineError::GeneralPosition) => {}
            Err(EngineError::Internal(msg)) => internal = Some(msg),
        }
    }
    match internal {
        Some(msg) => Err(SolveError::Internal(msg)),
        None => Err(SolveError::AttemptsExhausted { attempts: opts.max_attempts }),
    }
}

fn attempt_once(
    orig: &Instance,
    work: &Instance,
    scene: DualScene,
    policy: PivotPolicy,
) -> Result<(Coloring, String), EngineError> {
    let base = Base::new(scene)?;
    match coverage::coverage(&base)? {
        Coverage::Covered { .. } => {
            let mut machine = Machine::new(&base);
            let pv = machine.pick(policy)?;
            let mut paint = Paint::new(work.len());
            machine.run(&pv, &mut paint)?;
            let path = machine.log.iter().map(ToString::to_string).collect::<Vec<_>>().join(">");
            Ok((paint.finish()?, path))
        }
        Coverage::Separated { line } => {
            let coloring = crate::uncovered::solve_uncovered(orig, work, &line)?;
            Ok((coloring, "uncovered".into()))
        }
    }
}

/// Whether the half-planes of `inst` cover the plane, decided on the dual
/// hulls. Requires pairwise distinct boundary slopes.
pub fn classify_coverage(inst: &Instance) -> Result<Coverage, EngineError> {
    let scene = dualize(inst).map_err(|_| EngineError::GeneralPosition)?;
    coverage::coverage(&Base::new(scene)?)
}

/// Colours a scene in which every downward-ray tip lies left of every
/// upward-ray tip, the line through the last two upper hull vertices passes
/// above the first upward-ray tip and the line through the first two lower
/// hull vertices passes below the last downward-ray tip. `None` when the
/// instance is not such a scene.
pub fn color_separated(inst: &Instance) -> Result<Option<(Coloring, ObsBranch)>, EngineError> {
    let scene = dualize(inst).map_err(|_| EngineError::GeneralPosition)?;
    if separated::violated_assumption(&scene.upper, &scene.lower)?.is_some() {
        return Ok(None);
    }
    let mut paint = Paint::new(inst.len());
    let branch = separated::obs_separated(&scene.upper, &scene.lower, &mut paint)?;
    Ok(Some((paint.finish()?, branch)))
}

/// A half-plane whose dual tip is a vertex of its family's outer hull and
/// lies in the hull region of the other family, as `(index, downward)`.
/// Covered instances in general position always have one.
pub fn hull_vertex_in_other(inst: &Instance) -> Result<Option<(usize, bool)>, EngineError> {
    let scene = dualize(inst).map_err(|_| EngineError::GeneralPosition)?;
    let base = Base::new(scene)?;
    Ok(pivot::candidates(&base).first().map(|pv| (pv.view.src(frame::Fam::U, pv.p), !pv.frame().yflip)))
}

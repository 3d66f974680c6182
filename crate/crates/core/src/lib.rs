//! Exact two-colouring of half-plane families so that every point covered
//! at least three times sees both colours.

pub mod bench;
pub mod engine;
pub mod gen;
pub mod io;
pub mod kernel;
pub mod model;
pub mod render;
pub mod uncovered;
pub mod verify;

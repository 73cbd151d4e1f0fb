//! Exact classical and no-signaling values of multiplayer nonlocal games.
//!
//! * [`lp`]: rational linear programs, an exact simplex solver, and a
//!   solver-independent dual feasibility check.
//! * [`game`]: the game model, built-in games, extensions, and brute-force
//!   classical values.
//! * [`nspoly`]: no-signaling behaviors, the LP over them, and CHSH
//!   expectations and tradeoffs.
//! * [`oddcycle`]: the symmetry-reduced LP for the extended odd cycle game
//!   and its closed-form dual certificate.
//! * [`io`]: JSON files for games, behaviors, and certificates.

pub mod game;
pub mod io;
pub mod lp;
pub mod nspoly;
pub mod oddcycle;
pub mod rational;
mod simplex;

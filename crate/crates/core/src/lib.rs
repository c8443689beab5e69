//! Exact computation of the sharp commuting-probability and
//! average-character-degree thresholds for nilpotency and supersolvability,
//! their extremal witness groups, and the prime sweep relating `t(p)`,
//! `r(p)` to least primes in arithmetic progressions.

pub mod bounds;
pub mod charorbit;
pub mod error;
pub mod finitefield;
pub mod groupengine;
pub mod limits;
pub mod numtheory;
pub mod rational;
pub mod verify;

pub use bounds::{BoundKind, BoundReport, BoundWitness, KerrWitness, ZsigmondyMinimum};
pub use charorbit::CharacterProfile;
pub use error::{Error, Result};
pub use finitefield::{Field, FieldElement, Poly};
pub use groupengine::{Group, GroupStats};
pub use limits::Limits;
pub use numtheory::PrimePower;
pub use rational::Rational;
pub use verify::{ConjectureReport, SharpnessReport, Status, Theorem};

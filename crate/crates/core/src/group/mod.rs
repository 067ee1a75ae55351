//! Group presets acting on lazily realized cube complexes.
//!
//! Every preset is a product of right-angled Artin groups: free groups are
//! the edgeless case and free abelian groups the complete case. Vertices of
//! the complex are group elements; walls are computed from normal forms.

mod preset;
mod raag;
mod search;
mod walls;

pub use preset::{Element, GraphSpec, Preset, PresetSpec, Step};
pub use raag::{Edit, Letter, Raag, MAX_GENERATORS};
pub use search::{
    construct_ping_pong, double_skewer_search, essentiality, facing_tuple_search, flip_search, ping_pong_verify,
    Essentiality, EssentialityReport, FreeReport, PingPongTable,
};
pub use walls::{HalfSpace, Wall, DEFAULT_BUDGET};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("unknown generator '{0}'")]
    UnknownGenerator(String),
    #[error("invalid preset: {0}")]
    InvalidPreset(String),
    #[error("enumeration exceeded the budget of {budget} elements")]
    TooLarge { budget: usize },
    #[error("walls lie in different product factors")]
    DifferentFactors,
    #[error("the two walls coincide")]
    SameWall,
    #[error("half-spaces are not properly nested")]
    NotNested,
    #[error("invalid ping-pong table: {0}")]
    TableInvalid(String),
}

//! Secret-key capacity, communication rates and Type S classification for
//! multiterminal sources.

pub mod certify;
pub mod error;
pub mod exec;
pub mod gf2;
pub mod lp;
pub mod model;
pub mod partition;
pub mod rates;
pub mod silent;
pub mod terminal;
pub mod tree;
pub mod value;
pub mod zoo;

pub use error::{Result, SkcError};
pub use exec::Execution;
pub use model::{
    club, parse_model, serialize_model, EntropyTable, FunctionL, Hypergraph, PinSource, PmfSource,
    Source,
};
pub use terminal::TerminalSet;
pub use value::Value;

use thiserror::Error;

use crate::hexgrid::CellId;
use crate::netstate::{CallId, ChannelId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("grid dimensions must be positive, got {rows}x{cols}")]
    InvalidGrid { rows: usize, cols: usize },

    #[error("cell {cell} out of range (grid has {cells} cells)")]
    InvalidCell { cell: CellId, cells: usize },

    #[error("invalid gain model: {0}")]
    InvalidGainModel(String),

    #[error("invalid gain matrix: {0}")]
    InvalidGainMatrix(String),

    #[error("invalid channel plan: {0}")]
    InvalidChannelPlan(String),

    #[error("channel {channel} out of range ({channels} channels)")]
    InvalidChannel { channel: ChannelId, channels: usize },

    #[error("channel {channel} already occupied in cell {cell}")]
    DoubleOccupy { cell: CellId, channel: ChannelId },

    #[error("call {0} is not live")]
    UnknownCall(CallId),

    #[error("call {0} already registered")]
    DuplicateCall(CallId),

    #[error("invalid power assignment: {0}")]
    InvalidPower(String),

    #[error("invalid QoS parameters: {0}")]
    InvalidQos(String),

    #[error("invalid policy: {0}")]
    InvalidPolicy(String),

    #[error("invalid simulation config: {0}")]
    InvalidConfig(String),

    #[error("power re-solve after release was infeasible on channel {0}")]
    ResolveFailed(ChannelId),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

use thiserror::Error;

/// Errors raised by the numeric routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("singular: {0}")]
    Singular(String),

    #[error("frequency mismatch: {left} Hz vs {right} Hz")]
    FrequencyMismatch { left: f64, right: f64 },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("netlist: {0}")]
    Netlist(#[from] NetlistError),

    #[error("degenerate signal: {0}")]
    DegenerateSignal(String),
}

/// Structural problems found while validating a netlist.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum NetlistError {
    #[error("element `{element}` references undeclared node `{node}`")]
    UndeclaredNode { element: String, node: String },

    #[error("port {port} references undeclared node `{node}`")]
    UndeclaredPortNode { port: usize, node: String },

    #[error("duplicate node declaration `{0}`")]
    DuplicateNode(String),

    #[error("duplicate element name `{0}`")]
    DuplicateElement(String),

    #[error("port numbering must be 1..=N without gaps, found {0:?}")]
    PortNumbering(Vec<usize>),

    #[error("port {port} has non-positive reference impedance")]
    PortReference { port: usize },

    #[error("port {port} node and reference node coincide")]
    PortShorted { port: usize },

    #[error("port {0} has no path to ground")]
    Disconnected(usize),

    #[error("node `{0}` has no path to ground")]
    Floating(String),

    #[error("element `{element}`: {reason}")]
    BadValue { element: String, reason: String },

    #[error("netlist has no ports")]
    NoPorts,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

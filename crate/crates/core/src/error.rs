use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix has a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("matrix is not diagonalizable: eigenvector condition estimate {cond:.3e} exceeds ceiling {ceiling:.1e}")]
    NotDiagonalizable { cond: f64, ceiling: f64 },

    #[error("Schur iteration did not converge")]
    SchurFailed,

    #[error("spectrum is not paired: {unmatched} cluster(s) have no complex-conjugate partner")]
    SpectrumNotPaired { unmatched: usize },

    #[error("spectrum is not real: max |Im E| = {max_imag:.3e}")]
    SpectrumNotReal { max_imag: f64 },

    #[error("intertwiner is singular: condition estimate {cond:.3e}")]
    SingularEta { cond: f64 },

    #[error("antilinear operator is not involutory: residual {residual:.3e} > {tolerance:.3e}")]
    NotInvolutory { residual: f64, tolerance: f64 },

    #[error("antilinear operator does not commute with the matrix: residual {residual:.3e} > {tolerance:.3e}")]
    NotCommuting { residual: f64, tolerance: f64 },

    #[error("could not factor S = U conj(U)^-1 after {attempts} attempts (seed {seed}, best cond {best_cond:.3e})")]
    FactorizationFailed {
        seed: u64,
        attempts: usize,
        best_cond: f64,
    },

    #[error("degenerate Morse parameters: A and B are both zero")]
    DegenerateParams,

    #[error("shift exponent |theta| * k_max = {exponent:.1} exceeds the guard {limit:.0}; reduce theta or the grid's k_max (fewer points or a longer domain)")]
    ShiftOverflow { exponent: f64, limit: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by malformed or out-of-range input rather than
    /// by the numerics.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::NotSquare { .. }
                | Error::NonFinite { .. }
                | Error::DimensionMismatch { .. }
                | Error::DegenerateParams
                | Error::InvalidGrid(_)
                | Error::Parse(_)
                | Error::Io(_)
        )
    }
}

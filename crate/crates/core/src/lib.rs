//! EEG-to-text experiment library.
//!
//! The pipeline goes raw 31-channel / 1000 Hz EEG → IIR band-pass + notch
//! filtering ([`dsp`]) → five per-channel statistics at 100 Hz, 155 dims
//! ([`features`]) → kernel-PCA denoising down to 30 dims ([`kpca`]) →
//! sequence models ([`models`]): an attention regression model between
//! listen/spoken EEG, a perception-separation model, an isolated-word
//! classifier, a siamese verifier, and a CTC continuous recognizer with an
//! external character LM. [`corpus`] provides the dataset model plus a
//! synthetic paired spoken/listen generator with known latents, [`eval`]
//! the metrics (WER, accuracy, normalized RMSE) and report tables, and
//! [`neural`] the differentiable building blocks everything trains with.

pub mod corpus;
pub mod dsp;
pub mod error;
pub mod eval;
pub mod features;
pub mod io;
pub mod kpca;
pub mod models;
pub mod neural;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

//! Desk-scale simulator and analytics for the ideal two-resistor
//! thermal-noise (KLJN) key exchange loop.
//!
//! The crate is organized around the life of one bit-exchange period:
//!
//! * [`noise`] synthesizes band-limited Johnson noise and estimates spectra,
//! * [`exchange`] forms the channel waveforms, computes the three mean-square
//!   levels and the guarded decision thresholds, classifies measurements, and
//!   distills keys,
//! * [`predictor`] evaluates the closed-form misclassification rates (the
//!   level-crossing route and the Gaussian-tail route) together with the
//!   spectral pipeline they come from,
//! * [`monte_carlo`] runs seeded, reproducible ensembles of bit-exchange
//!   periods and compares observed rates against the predictors.
//!
//! All randomness flows from explicit `u64` seeds; rerunning any operation
//! with the same inputs gives bit-identical results, in parallel or not.

pub mod error;
pub mod exchange;
pub mod monte_carlo;
pub mod noise;
pub mod predictor;
pub mod quad;
pub mod seed;
pub mod stats;

pub use error::Error;
pub use exchange::{
    classify, classify_current, classify_error, compute_thresholds, compute_thresholds_current,
    distill_key, exact_level, exact_level_current, run_bep, BepOutcome, BitSituation,
    CurrentLevelSet, Decision, ErrorClass, LevelSet, Observable, SystemConfig,
};
pub use monte_carlo::{
    estimate_rate, ks_two_sample, measure_estimator_sigma, run_experiment, two_stage_validation,
    ErrorTally, ExperimentPlan, KsResult, MeasuredSpread, RateEstimate, RateKind, SituationPolicy,
    TwoStageReport,
};
pub use noise::{
    estimate_psd, johnson_spectral_density, mean_square, synthesize, NoiseSpec, NoiseTrace,
};
pub use predictor::{
    averaged_square_rms, gaussian_tail_probability, pessimism_ratio, rice_crossing_frequency,
    rice_error_probability_00, rice_error_probability_11, squared_noise_psd, PredictorInput,
    RiceEstimate, SquaredNoisePsd,
};

/// Boltzmann constant in J/K (exact SI value).
pub const BOLTZMANN: f64 = 1.380649e-23;

pub type Result<T> = std::result::Result<T, Error>;

//! The bit-exchange loop: channel formation, exact mean-square levels,
//! guarded threshold decisions, and key distillation.
//!
//! Each period, both parties switch a resistor onto the wire and drive it
//! with fresh band-limited Johnson noise. The observer boxcar-averages the
//! squared channel voltage (or current) over the period and compares the
//! result against three exact levels: the 00 level (both low resistors),
//! the mid level (mixed, the secure situations 01 and 10), and the 11 level
//! (both high). Guard offsets delta_1 = beta * level_00 and
//! delta_2 = delta * level_11 shrink the secure band so that drifting
//! measurements fall into a discard decision rather than a wrong key bit.

use crate::error::Error;
use crate::noise::{self, NoiseSpec, NoiseTrace};
use crate::{seed, Result};

/// Resistor selections for one period, written (Alice bit, Bob bit);
/// bit 0 is the low resistor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BitSituation {
    B00,
    B01,
    B10,
    B11,
}

pub const ALL_SITUATIONS: [BitSituation; 4] = [
    BitSituation::B00,
    BitSituation::B01,
    BitSituation::B10,
    BitSituation::B11,
];

impl BitSituation {
    pub fn alice_bit(self) -> u8 {
        matches!(self, BitSituation::B10 | BitSituation::B11) as u8
    }

    pub fn bob_bit(self) -> u8 {
        matches!(self, BitSituation::B01 | BitSituation::B11) as u8
    }

    /// The mixed situations are the ones worth keeping.
    pub fn is_secure(self) -> bool {
        matches!(self, BitSituation::B01 | BitSituation::B10)
    }

    pub fn index(self) -> usize {
        match self {
            BitSituation::B00 => 0,
            BitSituation::B01 => 1,
            BitSituation::B10 => 2,
            BitSituation::B11 => 3,
        }
    }

    pub fn from_bits(alice: u8, bob: u8) -> Self {
        match (alice & 1, bob & 1) {
            (0, 0) => BitSituation::B00,
            (0, 1) => BitSituation::B01,
            (1, 0) => BitSituation::B10,
            _ => BitSituation::B11,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            BitSituation::B00 => "00",
            BitSituation::B01 => "01",
            BitSituation::B10 => "10",
            BitSituation::B11 => "11",
        }
    }
}

/// Which channel quantity the observer squares and averages.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Observable {
    Voltage,
    Current,
}

/// Three-way reading of one averaged measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Decision {
    Decide00,
    DecideSecure,
    Decide11,
}

impl Decision {
    pub fn index(self) -> usize {
        match self {
            Decision::Decide00 => 0,
            Decision::DecideSecure => 1,
            Decision::Decide11 => 2,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Decision::Decide00 => "00",
            Decision::DecideSecure => "secure",
            Decision::Decide11 => "11",
        }
    }
}

/// How a decision relates to the true situation. Cross readings of a secure
/// period are errors the protocol removes by itself (both parties see the
/// public decision); a secure reading of a non-secure period silently
/// corrupts the key, which is the error class the predictors quantify.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ErrorClass {
    Correct,
    AutoRemoved,
    Error00ToSecure,
    Error11ToSecure,
}

impl ErrorClass {
    pub fn is_starred(self) -> bool {
        matches!(self, ErrorClass::Error00ToSecure | ErrorClass::Error11ToSecure)
    }

    pub fn label(self) -> &'static str {
        match self {
            ErrorClass::Correct => "correct",
            ErrorClass::AutoRemoved => "auto_removed",
            ErrorClass::Error00ToSecure => "error_00_to_secure",
            ErrorClass::Error11ToSecure => "error_11_to_secure",
        }
    }
}

/// Physical and protocol parameters for the loop.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemConfig {
    /// Low resistor, Ohm.
    pub r0_ohms: f64,
    /// High resistor, Ohm.
    pub r1_ohms: f64,
    /// Effective noise temperature, K.
    pub t_eff_kelvin: f64,
    /// Noise bandwidth, Hz.
    pub bandwidth_hz: f64,
    /// Averaging windows per bit period: tau = gamma / bandwidth.
    pub gamma: f64,
    /// Guard fraction on the 00 side, delta_1 = beta * level_00.
    pub beta: f64,
    /// Guard fraction on the 11 side, delta_2 = delta * level_11.
    pub delta: f64,
    /// Square-law detector scale, 1/V. Cancels from every decision.
    pub d_coeff: f64,
    /// Sample rate as a multiple of 2 * bandwidth. Four is enough to
    /// resolve the squared signal's spectrum out to twice the band edge.
    pub oversampling: f64,
}

impl Default for SystemConfig {
    fn default() -> Self {
        // normalized so 4 k T_eff B = 1e-3 V^2/Ohm: level_00 lands at 1 V^2
        Self {
            r0_ohms: 2000.0,
            r1_ohms: 9000.0,
            t_eff_kelvin: 1.0e-3 / (4.0 * crate::BOLTZMANN * 1000.0),
            bandwidth_hz: 1000.0,
            gamma: 100.0,
            beta: 0.5,
            delta: 0.5,
            d_coeff: 1.0,
            oversampling: 4.0,
        }
    }
}

impl SystemConfig {
    /// Resistance ratio r1/r0.
    pub fn alpha(&self) -> f64 {
        self.r1_ohms / self.r0_ohms
    }

    /// Largest guard fraction that leaves any secure band:
    /// (alpha - 1) / (alpha + 1).
    pub fn threshold_bound(&self) -> f64 {
        let a = self.alpha();
        (a - 1.0) / (a + 1.0)
    }

    /// Bit period in seconds.
    pub fn tau(&self) -> f64 {
        self.gamma / self.bandwidth_hz
    }

    pub fn sample_rate(&self) -> f64 {
        2.0 * self.oversampling * self.bandwidth_hz
    }

    pub fn samples_per_bep(&self) -> usize {
        ((self.tau() * self.sample_rate()).round() as usize).max(2)
    }

    /// 4 k T_eff B, the mean-square-per-Ohm scale of every level.
    pub fn four_k_t_b(&self) -> f64 {
        4.0 * crate::BOLTZMANN * self.t_eff_kelvin * self.bandwidth_hz
    }

    pub fn validate(&self) -> Result<()> {
        let positive: [(&'static str, f64); 6] = [
            ("r0_ohms", self.r0_ohms),
            ("t_eff_kelvin", self.t_eff_kelvin),
            ("bandwidth_hz", self.bandwidth_hz),
            ("beta", self.beta),
            ("delta", self.delta),
            ("d_coeff", self.d_coeff),
        ];
        for (name, value) in positive {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidParameter {
                    name,
                    value,
                    reason: "must be finite and positive",
                });
            }
        }
        if !(self.r1_ohms.is_finite() && self.r1_ohms > self.r0_ohms) {
            return Err(Error::InvalidParameter {
                name: "r1_ohms",
                value: self.r1_ohms,
                reason: "must exceed r0_ohms",
            });
        }
        if !(self.gamma.is_finite() && self.gamma >= 4.0) {
            return Err(Error::InvalidParameter {
                name: "gamma",
                value: self.gamma,
                reason: "averaging needs gamma >= 4",
            });
        }
        if !(self.oversampling.is_finite() && self.oversampling >= 1.0) {
            return Err(Error::InvalidParameter {
                name: "oversampling",
                value: self.oversampling,
                reason: "sample rate must reach Nyquist",
            });
        }
        let bound = self.threshold_bound();
        if self.beta > bound {
            return Err(Error::Configuration {
                detail: format!(
                    "beta = {} exceeds (alpha - 1)/(alpha + 1) = {} for alpha = {}; \
                     the 00 decision band would swallow the secure band",
                    self.beta,
                    bound,
                    self.alpha()
                ),
            });
        }
        if self.delta > bound {
            return Err(Error::Configuration {
                detail: format!(
                    "delta = {} exceeds (alpha - 1)/(alpha + 1) = {} for alpha = {}; \
                     the 11 decision band would swallow the secure band",
                    self.delta,
                    bound,
                    self.alpha()
                ),
            });
        }
        Ok(())
    }

    fn resistor_pair(&self, situation: BitSituation) -> (f64, f64) {
        let r = |bit: u8| if bit == 0 { self.r0_ohms } else { self.r1_ohms };
        (r(situation.alice_bit()), r(situation.bob_bit()))
    }
}

/// Exact ensemble mean square of the channel voltage, V^2:
/// 4 k T_eff B * (Ra Rb)/(Ra + Rb).
pub fn exact_level(config: &SystemConfig, situation: BitSituation) -> f64 {
    let (ra, rb) = config.resistor_pair(situation);
    config.four_k_t_b() * ra * rb / (ra + rb)
}

/// Exact ensemble mean square of the loop current, A^2:
/// 4 k T_eff B / (Ra + Rb).
pub fn exact_level_current(config: &SystemConfig, situation: BitSituation) -> f64 {
    let (ra, rb) = config.resistor_pair(situation);
    config.four_k_t_b() / (ra + rb)
}

/// Voltage-domain levels and guards; ascending level_00 < level_mid <
/// level_11, with the secure band [level_00 + delta_1, level_11 - delta_2]
/// containing level_mid.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelSet {
    pub level_00: f64,
    pub level_mid: f64,
    pub level_11: f64,
    pub delta_1: f64,
    pub delta_2: f64,
}

/// Current-domain levels and guards. The ordering inverts: the 00 loop has
/// the smallest resistance and so the largest current, level_11 < level_mid
/// < level_00, and the guards cut inward from the outer levels. The same
/// (alpha - 1)/(alpha + 1) bound keeps the secure band alive.
#[derive(Debug, Clone, PartialEq)]
pub struct CurrentLevelSet {
    pub level_00: f64,
    pub level_mid: f64,
    pub level_11: f64,
    pub delta_1: f64,
    pub delta_2: f64,
}

pub fn compute_thresholds(config: &SystemConfig) -> Result<LevelSet> {
    config.validate()?;
    let level_00 = exact_level(config, BitSituation::B00);
    let level_mid = exact_level(config, BitSituation::B01);
    let level_11 = exact_level(config, BitSituation::B11);
    let set = LevelSet {
        level_00,
        level_mid,
        level_11,
        delta_1: config.beta * level_00,
        delta_2: config.delta * level_11,
    };
    debug_assert!(set.level_00 + set.delta_1 <= set.level_mid * (1.0 + 1e-12));
    debug_assert!(set.level_11 - set.delta_2 >= set.level_mid * (1.0 - 1e-12));
    Ok(set)
}

pub fn compute_thresholds_current(config: &SystemConfig) -> Result<CurrentLevelSet> {
    config.validate()?;
    let level_00 = exact_level_current(config, BitSituation::B00);
    let level_mid = exact_level_current(config, BitSituation::B01);
    let level_11 = exact_level_current(config, BitSituation::B11);
    let set = CurrentLevelSet {
        level_00,
        level_mid,
        level_11,
        delta_1: config.beta * level_00,
        delta_2: config.delta * level_11,
    };
    debug_assert!(set.level_00 - set.delta_1 >= set.level_mid * (1.0 - 1e-12));
    debug_assert!(set.level_11 + set.delta_2 <= set.level_mid * (1.0 + 1e-12));
    Ok(set)
}

/// Classify an averaged squared-voltage measurement. Band boundaries fall
/// into the secure decision.
pub fn classify(measured_ms: f64, levels: &LevelSet) -> Decision {
    if measured_ms < levels.level_00 + levels.delta_1 {
        Decision::Decide00
    } else if measured_ms > levels.level_11 - levels.delta_2 {
        Decision::Decide11
    } else {
        Decision::DecideSecure
    }
}

/// Classify an averaged squared-current measurement (inverted ordering).
pub fn classify_current(measured_ms: f64, levels: &CurrentLevelSet) -> Decision {
    if measured_ms > levels.level_00 - levels.delta_1 {
        Decision::Decide00
    } else if measured_ms < levels.level_11 + levels.delta_2 {
        Decision::Decide11
    } else {
        Decision::DecideSecure
    }
}

/// Error taxonomy of a (decision, actual situation) pair.
pub fn classify_error(decision: Decision, actual: BitSituation) -> ErrorClass {
    match (decision, actual) {
        (Decision::Decide00, BitSituation::B00) => ErrorClass::Correct,
        (Decision::Decide11, BitSituation::B11) => ErrorClass::Correct,
        (Decision::DecideSecure, s) if s.is_secure() => ErrorClass::Correct,
        (Decision::DecideSecure, BitSituation::B00) => ErrorClass::Error00ToSecure,
        (Decision::DecideSecure, BitSituation::B11) => ErrorClass::Error11ToSecure,
        _ => ErrorClass::AutoRemoved,
    }
}

/// Channel waveforms for one period from the two generator noises:
/// u_ch = (u_a Rb + u_b Ra)/(Ra + Rb), i_ch = (u_a - u_b)/(Ra + Rb).
pub fn channel_waveforms(
    alice: &NoiseTrace,
    bob: &NoiseTrace,
    r_a: f64,
    r_b: f64,
) -> Result<(NoiseTrace, NoiseTrace)> {
    if alice.samples.len() != bob.samples.len() || alice.dt != bob.dt {
        return Err(Error::Configuration {
            detail: format!(
                "generator traces disagree: {} samples at dt {} vs {} samples at dt {}",
                alice.samples.len(),
                alice.dt,
                bob.samples.len(),
                bob.dt
            ),
        });
    }
    let r_sum = r_a + r_b;
    let mut u = Vec::with_capacity(alice.samples.len());
    let mut i = Vec::with_capacity(alice.samples.len());
    for (&ua, &ub) in alice.samples.iter().zip(&bob.samples) {
        u.push((ua * r_b + ub * r_a) / r_sum);
        i.push((ua - ub) / r_sum);
    }
    Ok((NoiseTrace::new(u, alice.dt), NoiseTrace::new(i, alice.dt)))
}

/// Everything recorded about one bit-exchange period.
#[derive(Debug, Clone, PartialEq)]
pub struct BepOutcome {
    pub situation: BitSituation,
    pub measured_ms: f64,
    pub decision: Decision,
    pub error_class: ErrorClass,
}

/// Run one period with per-role generator seeds derived from `seed`.
pub fn run_bep(
    config: &SystemConfig,
    situation: BitSituation,
    seed_value: u64,
    observable: Observable,
) -> Result<BepOutcome> {
    run_bep_seeded(
        config,
        situation,
        seed::derive(seed_value, 0),
        seed::derive(seed_value, 1),
        observable,
    )
}

/// Run one period with explicit generator seeds. Swapping the situation's
/// resistors together with the seeds (01 with (a, b) versus 10 with (b, a))
/// reproduces the identical channel, sample for sample.
pub fn run_bep_seeded(
    config: &SystemConfig,
    situation: BitSituation,
    alice_seed: u64,
    bob_seed: u64,
    observable: Observable,
) -> Result<BepOutcome> {
    let voltage_levels = compute_thresholds(config)?;
    let current_levels = compute_thresholds_current(config)?;
    let (r_a, r_b) = config.resistor_pair(situation);
    let n = config.samples_per_bep();
    let fs = config.sample_rate();
    let spec_a = NoiseSpec::new(
        noise::johnson_spectral_density(r_a, config.t_eff_kelvin)?,
        config.bandwidth_hz,
        fs,
        n,
    )?;
    let spec_b = NoiseSpec::new(
        noise::johnson_spectral_density(r_b, config.t_eff_kelvin)?,
        config.bandwidth_hz,
        fs,
        n,
    )?;
    let ua = noise::synthesize(&spec_a, alice_seed);
    let ub = noise::synthesize(&spec_b, bob_seed);
    let (u_ch, i_ch) = channel_waveforms(&ua, &ub, r_a, r_b)?;
    let (measured_ms, decision) = match observable {
        Observable::Voltage => {
            let ms = noise::mean_square(&u_ch);
            (ms, classify(ms, &voltage_levels))
        }
        Observable::Current => {
            let ms = noise::mean_square(&i_ch);
            (ms, classify_current(ms, &current_levels))
        }
    };
    Ok(BepOutcome {
        situation,
        measured_ms,
        decision,
        error_class: classify_error(decision, situation),
    })
}

/// Keep the secure-judged periods and emit both parties' key bits; Alice
/// publishes her bit inverted so that correctly kept periods agree. The two
/// streams differ exactly on the silently corrupted periods.
pub fn distill_key(outcomes: &[BepOutcome]) -> (Vec<u8>, Vec<u8>) {
    let mut alice = Vec::new();
    let mut bob = Vec::new();
    for o in outcomes {
        if o.decision == Decision::DecideSecure {
            alice.push(1 - o.situation.alice_bit());
            bob.push(o.situation.bob_bit());
        }
    }
    (alice, bob)
}

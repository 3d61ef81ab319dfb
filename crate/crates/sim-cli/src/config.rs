//! Scenario configuration: TOML schema, validation and the built-in stimulus
//! programs.

use aer_bus::{AerError, ScanSchedule};
use event_engine::{PulseKind, SpikeEvent};
use neuron_core::{ps_from_ms, ps_from_ns, BiasConfig, NeuronId, Ps};
use pattern_controller::{ControllerError, ControllerMode};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot parse configuration: {0}")]
    Parse(#[from] toml::de::Error),

    #[error("invalid configuration: {0}")]
    Invalid(String),

    #[error("invalid bias configuration: {0}")]
    Bias(#[from] neuron_core::NeuronError),

    #[error("invalid scan schedule: {0}")]
    Schedule(#[from] AerError),

    #[error("invalid controller mode: {0}")]
    Controller(#[from] ControllerError),
}

/// A time value in the configuration: either integer picoseconds or a string
/// with a unit suffix (`"24ns"`, `"1.5us"`, `"12ms"`, `"1s"`, `"250ps"`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct TimePs(pub Ps);

impl<'de> Deserialize<'de> for TimePs {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(u64),
            Str(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Int(ps) => Ok(TimePs(ps)),
            Raw::Str(s) => parse_time(&s).map(TimePs).map_err(serde::de::Error::custom),
        }
    }
}

/// Parses `"24ns"`-style durations to integer picoseconds.
pub fn parse_time(text: &str) -> Result<Ps, String> {
    let text = text.trim();
    let split = text
        .find(|c: char| c.is_ascii_alphabetic())
        .ok_or_else(|| format!("missing time unit in {text:?} (use ps/ns/us/ms/s)"))?;
    let (value, unit) = text.split_at(split);
    let value: f64 = value
        .trim()
        .parse()
        .map_err(|e| format!("bad number in {text:?}: {e}"))?;
    let scale = match unit.trim() {
        "ps" => 1.0,
        "ns" => 1e3,
        "us" => 1e6,
        "ms" => 1e9,
        "s" => 1e12,
        other => return Err(format!("unknown time unit {other:?} (use ps/ns/us/ms/s)")),
    };
    let ps = value * scale;
    if !(ps >= 0.0) || ps > 2f64.powi(53) {
        return Err(format!("time {text:?} is out of range"));
    }
    Ok(ps.round() as Ps)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScheduleConfig {
    pub period: TimePs,
    pub slot_duration: TimePs,
    pub n_buses: u32,
}

impl Default for ScheduleConfig {
    fn default() -> Self {
        Self {
            period: TimePs(ps_from_ms(1)),
            slot_duration: TimePs(ps_from_ns(32)),
            n_buses: 1,
        }
    }
}

/// Controller policy in config form; durations accept time strings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ControllerSpec {
    pub mode: ModeName,
    pub rst_duration: TimePs,
    pub spikes_per_burst: u32,
    pub rst_init: TimePs,
    pub rst_increment: TimePs,
    pub rst_max: TimePs,
    pub decay_after_inactive: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeName {
    Passive,
    Tonic,
    Burst,
    Adaptation,
}

impl Default for ControllerSpec {
    fn default() -> Self {
        Self {
            mode: ModeName::Passive,
            rst_duration: TimePs(ps_from_ns(24)),
            spikes_per_burst: 5,
            rst_init: TimePs(ps_from_ns(3)),
            rst_increment: TimePs(ps_from_ns(3)),
            rst_max: TimePs(ps_from_ns(32)),
            decay_after_inactive: None,
        }
    }
}

impl ControllerSpec {
    pub fn to_mode(&self) -> Result<ControllerMode, ConfigError> {
        let mode = match self.mode {
            ModeName::Passive => ControllerMode::Passive,
            ModeName::Tonic => ControllerMode::Tonic {
                rst_duration_ps: self.rst_duration.0,
            },
            ModeName::Burst => ControllerMode::Burst {
                spikes_per_burst: self.spikes_per_burst,
                rst_duration_ps: self.rst_duration.0,
            },
            ModeName::Adaptation => ControllerMode::Adaptation {
                rst_init_ps: self.rst_init.0,
                rst_increment_ps: self.rst_increment.0,
                rst_max_ps: self.rst_max.0,
                decay_after_inactive: self.decay_after_inactive,
            },
        };
        mode.validate()?;
        Ok(mode)
    }

    pub fn tonic(rst_duration_ps: Ps) -> Self {
        Self {
            mode: ModeName::Tonic,
            rst_duration: TimePs(rst_duration_ps),
            ..Self::default()
        }
    }

    pub fn burst(spikes_per_burst: u32, rst_duration_ps: Ps) -> Self {
        Self {
            mode: ModeName::Burst,
            spikes_per_burst,
            rst_duration: TimePs(rst_duration_ps),
            ..Self::default()
        }
    }

    pub fn adaptation(init_ps: Ps, increment_ps: Ps, max_ps: Ps) -> Self {
        Self {
            mode: ModeName::Adaptation,
            rst_init: TimePs(init_ps),
            rst_increment: TimePs(increment_ps),
            rst_max: TimePs(max_ps),
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
pub struct ControllerConfig {
    pub default: ControllerSpec,
    pub overrides: Vec<ControllerOverride>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ControllerOverride {
    pub neurons: Vec<u32>,
    #[serde(flatten)]
    pub spec: ControllerSpec,
}

/// One explicit stimulus pulse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StimulusSpec {
    pub at: TimePs,
    #[serde(default)]
    pub neuron: u32,
    pub kind: PulseKind,
    pub duration: TimePs,
}

/// A periodic pulse train, expanded per selected neuron.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrainSpec {
    #[serde(default)]
    pub neurons: NeuronSelector,
    pub kind: PulseKind,
    #[serde(default = "zero_time")]
    pub start: TimePs,
    pub period: TimePs,
    pub count: u64,
    pub duration: TimePs,
}

fn zero_time() -> TimePs {
    TimePs(0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NeuronSelector {
    All(AllTag),
    List(Vec<u32>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AllTag {
    All,
}

impl Default for NeuronSelector {
    fn default() -> Self {
        NeuronSelector::All(AllTag::All)
    }
}

impl NeuronSelector {
    pub fn resolve(&self, n_neurons: u32) -> Vec<u32> {
        match self {
            NeuronSelector::All(_) => (0..n_neurons).collect(),
            NeuronSelector::List(ids) => ids.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TraceConfig {
    /// Neurons whose node voltages are recorded.
    pub neurons: Vec<u32>,
    /// Uniform row spacing between event breakpoints.
    pub stride: TimePs,
}

impl Default for TraceConfig {
    fn default() -> Self {
        Self {
            neurons: vec![0],
            stride: TimePs(1_000_000),
        }
    }
}

/// Multiplicative Gaussian device mismatch. `sigma` applies to each of
/// `i_n0`, `i_p0`, `c_syn`, `c_mem` and `i_s` unless a per-parameter value
/// overrides it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
pub struct MismatchConfig {
    pub sigma: f64,
    pub sigma_i_n0: Option<f64>,
    pub sigma_i_p0: Option<f64>,
    pub sigma_c_syn: Option<f64>,
    pub sigma_c_mem: Option<f64>,
    pub sigma_i_s: Option<f64>,
    /// Defaults to the scenario seed.
    pub seed: Option<u64>,
}

impl MismatchConfig {
    pub fn sigmas(&self) -> [f64; 5] {
        [
            self.sigma_i_n0.unwrap_or(self.sigma),
            self.sigma_i_p0.unwrap_or(self.sigma),
            self.sigma_c_syn.unwrap_or(self.sigma),
            self.sigma_c_mem.unwrap_or(self.sigma),
            self.sigma_i_s.unwrap_or(self.sigma),
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FeedbackConfig {
    /// Delay from a sampled slot to its reset landing.
    pub latency: TimePs,
}

impl Default for FeedbackConfig {
    fn default() -> Self {
        Self { latency: TimePs(0) }
    }
}

/// A complete, self-describing simulation scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    pub n_neurons: u32,
    pub duration: TimePs,
    pub seed: u64,
    pub threads: usize,
    pub biases: BiasConfig,
    pub schedule: ScheduleConfig,
    pub controller: ControllerConfig,
    pub stimulus: Vec<StimulusSpec>,
    pub trains: Vec<TrainSpec>,
    pub trace: TraceConfig,
    pub mismatch: MismatchConfig,
    pub feedback: FeedbackConfig,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            n_neurons: 1,
            duration: TimePs(ps_from_ms(12)),
            seed: 0,
            threads: 1,
            biases: BiasConfig::default(),
            schedule: ScheduleConfig::default(),
            controller: ControllerConfig::default(),
            stimulus: Vec::new(),
            trains: Vec::new(),
            trace: TraceConfig::default(),
            mismatch: MismatchConfig::default(),
            feedback: FeedbackConfig::default(),
        }
    }
}

/// Parses and validates a TOML scenario document.
pub fn load_config(text: &str) -> Result<ScenarioConfig, ConfigError> {
    let cfg: ScenarioConfig = toml::from_str(text)?;
    cfg.validate()?;
    Ok(cfg)
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        self.biases.validate()?;
        if self.n_neurons == 0 {
            return Err(ConfigError::Invalid("n_neurons must be at least 1".into()));
        }
        if self.duration.0 == 0 {
            return Err(ConfigError::Invalid("duration must be positive".into()));
        }
        self.scan_schedule()?;
        self.controller.default.to_mode()?;
        for ovr in &self.controller.overrides {
            ovr.spec.to_mode()?;
            for &n in &ovr.neurons {
                self.check_neuron(n, "controller override")?;
            }
        }
        for s in &self.stimulus {
            self.check_neuron(s.neuron, "stimulus")?;
            if s.duration.0 == 0 {
                return Err(ConfigError::Invalid(
                    "stimulus pulse duration must be positive".into(),
                ));
            }
            if s.at.0 >= self.duration.0 {
                return Err(ConfigError::Invalid(format!(
                    "stimulus at {} ps lies at or beyond the run window of {} ps",
                    s.at.0, self.duration.0
                )));
            }
        }
        for t in &self.trains {
            if t.count == 0 {
                return Err(ConfigError::Invalid("train count must be positive".into()));
            }
            if t.period.0 == 0 {
                return Err(ConfigError::Invalid("train period must be positive".into()));
            }
            if t.duration.0 == 0 {
                return Err(ConfigError::Invalid(
                    "train pulse duration must be positive".into(),
                ));
            }
            let last = t.start.0 + (t.count - 1) * t.period.0;
            if last >= self.duration.0 {
                return Err(ConfigError::Invalid(format!(
                    "train pulse at {} ps lies at or beyond the run window of {} ps",
                    last, self.duration.0
                )));
            }
            if let NeuronSelector::List(ids) = &t.neurons {
                for &n in ids {
                    self.check_neuron(n, "train")?;
                }
            }
        }
        for &n in &self.trace.neurons {
            self.check_neuron(n, "trace")?;
        }
        if self.trace.stride.0 == 0 {
            return Err(ConfigError::Invalid("trace stride must be positive".into()));
        }
        let sigmas = self.mismatch.sigmas();
        if sigmas.iter().any(|s| !(0.0..=0.3).contains(s)) {
            return Err(ConfigError::Invalid(
                "mismatch sigma must lie in [0, 0.3]".into(),
            ));
        }
        Ok(())
    }

    fn check_neuron(&self, n: u32, what: &str) -> Result<(), ConfigError> {
        if n >= self.n_neurons {
            return Err(ConfigError::Invalid(format!(
                "{what} references neuron {n}, but the array has {} neurons",
                self.n_neurons
            )));
        }
        Ok(())
    }

    pub fn scan_schedule(&self) -> Result<ScanSchedule, ConfigError> {
        Ok(ScanSchedule::new(
            self.schedule.period.0,
            self.schedule.slot_duration.0,
            self.n_neurons,
            self.schedule.n_buses,
        )?)
    }

    /// Controller mode per neuron, overrides applied in order.
    pub fn controller_modes(&self) -> Result<Vec<ControllerMode>, ConfigError> {
        let default = self.controller.default.to_mode()?;
        let mut modes = vec![default; self.n_neurons as usize];
        for ovr in &self.controller.overrides {
            let mode = ovr.spec.to_mode()?;
            for &n in &ovr.neurons {
                modes[n as usize] = mode;
            }
        }
        Ok(modes)
    }

    /// Expands stimulus pulses and trains into per-neuron event lists, sorted
    /// by time.
    pub fn per_neuron_events(&self) -> Vec<Vec<SpikeEvent>> {
        let mut events: Vec<Vec<SpikeEvent>> = vec![Vec::new(); self.n_neurons as usize];
        for s in &self.stimulus {
            events[s.neuron as usize].push(SpikeEvent::new(
                s.at.0,
                NeuronId(s.neuron),
                s.kind,
                s.duration.0,
            ));
        }
        for t in &self.trains {
            for n in t.neurons.resolve(self.n_neurons) {
                for k in 0..t.count {
                    events[n as usize].push(SpikeEvent::new(
                        t.start.0 + k * t.period.0,
                        NeuronId(n),
                        t.kind,
                        t.duration.0,
                    ));
                }
            }
        }
        for list in &mut events {
            list.sort_by_key(|e| (e.time_ps, e.kind.rank()));
        }
        events
    }

    // ---- built-in scenarios -------------------------------------------------

    /// Tonic firing: four 24 ns excitatory spikes at 1 ms intervals; the
    /// controller answers each active sample with a 24 ns reset.
    pub fn fig3a() -> Self {
        Self::fig3a_with_spikes(4)
    }

    /// The tonic program with a chosen number of input spikes.
    pub fn fig3a_with_spikes(spikes: u64) -> Self {
        let mut cfg = Self {
            controller: ControllerConfig {
                default: ControllerSpec::tonic(ps_from_ns(24)),
                overrides: vec![],
            },
            ..Self::default()
        };
        if spikes > 0 {
            cfg.trains.push(TrainSpec {
                neurons: NeuronSelector::List(vec![0]),
                kind: PulseKind::Excitatory,
                start: TimePs(0),
                period: TimePs(ps_from_ms(1)),
                count: spikes,
                duration: TimePs(ps_from_ns(24)),
            });
        }
        cfg
    }

    /// Bursting: four 32 ns excitatory spikes at 1 ms intervals; the reset is
    /// withheld until five consecutive active samples.
    pub fn fig3b() -> Self {
        Self {
            controller: ControllerConfig {
                default: ControllerSpec::burst(5, ps_from_ns(24)),
                overrides: vec![],
            },
            trains: vec![TrainSpec {
                neurons: NeuronSelector::List(vec![0]),
                kind: PulseKind::Excitatory,
                start: TimePs(0),
                period: TimePs(ps_from_ms(1)),
                count: 4,
                duration: TimePs(ps_from_ns(32)),
            }],
            ..Self::default()
        }
    }

    /// Spike-frequency adaptation: one 24 ns excitatory spike every 1 ms for
    /// 50 ms; the reset width starts at 3 ns and grows by 3 ns per spike up
    /// to 32 ns.
    pub fn fig3c() -> Self {
        Self {
            duration: TimePs(ps_from_ms(50)),
            controller: ControllerConfig {
                default: ControllerSpec::adaptation(
                    ps_from_ns(3),
                    ps_from_ns(3),
                    ps_from_ns(32),
                ),
                overrides: vec![],
            },
            trains: vec![TrainSpec {
                neurons: NeuronSelector::List(vec![0]),
                kind: PulseKind::Excitatory,
                start: TimePs(0),
                period: TimePs(ps_from_ms(1)),
                count: 50,
                duration: TimePs(ps_from_ns(24)),
            }],
            ..Self::default()
        }
    }

    /// Inhibition: excitatory and inhibitory spikes alternate (E, I, E, I,
    /// each 24 ns, 1 ms apart) with a passive controller, then the synapse
    /// relaxes for 10 ms.
    pub fn fig3d() -> Self {
        let p24 = TimePs(ps_from_ns(24));
        let stim = |at_ms: u64, kind: PulseKind| StimulusSpec {
            at: TimePs(ps_from_ms(at_ms)),
            neuron: 0,
            kind,
            duration: p24,
        };
        Self {
            duration: TimePs(ps_from_ms(14)),
            stimulus: vec![
                stim(0, PulseKind::Excitatory),
                stim(1, PulseKind::Inhibitory),
                stim(2, PulseKind::Excitatory),
                stim(3, PulseKind::Inhibitory),
            ],
            ..Self::default()
        }
    }

    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "fig3a" => Some(Self::fig3a()),
            "fig3b" => Some(Self::fig3b()),
            "fig3c" => Some(Self::fig3c()),
            "fig3d" => Some(Self::fig3d()),
            _ => None,
        }
    }

    /// Throughput scenario: every neuron receives one 24 ns excitatory spike
    /// per millisecond under a tonic controller; no tracing.
    pub fn bench(n_neurons: u32, duration_ms: u64) -> Self {
        Self {
            n_neurons,
            duration: TimePs(ps_from_ms(duration_ms)),
            controller: ControllerConfig {
                default: ControllerSpec::tonic(ps_from_ns(24)),
                overrides: vec![],
            },
            trains: vec![TrainSpec {
                neurons: NeuronSelector::default(),
                kind: PulseKind::Excitatory,
                start: TimePs(0),
                period: TimePs(ps_from_ms(1)),
                count: duration_ms,
                duration: TimePs(ps_from_ns(24)),
            }],
            trace: TraceConfig {
                neurons: vec![],
                stride: TimePs(1_000_000),
            },
            ..Self::default()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn time_parsing_units() {
        assert_eq!(parse_time("250ps").unwrap(), 250);
        assert_eq!(parse_time("24ns").unwrap(), 24_000);
        assert_eq!(parse_time("1.5us").unwrap(), 1_500_000);
        assert_eq!(parse_time("12ms").unwrap(), 12_000_000_000);
        assert_eq!(parse_time("1s").unwrap(), 1_000_000_000_000);
        assert!(parse_time("5 parsecs").is_err());
        assert!(parse_time("42").is_err());
    }

    #[test]
    fn empty_overrides_give_published_defaults() {
        let cfg = load_config("").unwrap();
        assert_eq!(cfg.biases.vdd, 1.2);
        assert_eq!(cfg.biases.i_pulse_exc, 550e-9);
        assert_eq!(cfg.biases.i_pulse_inh, 550e-9);
        assert_eq!(cfg.biases.i_n0, 2e-12);
        assert_eq!(cfg.biases.i_p0, 2e-12);
        assert_eq!(cfg.biases.c_syn, 22e-15);
        assert_eq!(cfg.biases.c_mem, 18e-15);
        assert_eq!(cfg.schedule.period.0, 1_000_000_000);
        assert_eq!(cfg.schedule.slot_duration.0, 32_000);
    }

    #[test]
    fn negative_capacitance_is_a_validation_error() {
        let err = load_config("[biases]\nc_syn = -22e-15\n").unwrap_err();
        assert!(err.to_string().contains("c_syn"), "{err}");
    }

    #[test]
    fn slot_budget_violation_reports_the_bound() {
        let err = load_config("n_neurons = 40000\n").unwrap_err();
        let text = err.to_string();
        assert!(text.contains("31250"), "{text}");
    }

    #[test]
    fn time_strings_parse_in_toml() {
        let cfg = load_config(
            r#"
            duration = "3ms"
            [[stimulus]]
            at = "1ms"
            kind = "excitatory"
            duration = "24ns"
            "#,
        )
        .unwrap();
        assert_eq!(cfg.duration.0, 3_000_000_000);
        assert_eq!(cfg.stimulus[0].at.0, 1_000_000_000);
        assert_eq!(cfg.stimulus[0].duration.0, 24_000);
    }

    #[test]
    fn unknown_keys_are_rejected_with_position() {
        let err = load_config("definitely_not_a_key = 1\n").unwrap_err();
        assert!(matches!(err, ConfigError::Parse(_)));
    }

    #[test]
    fn built_in_scenarios_validate() {
        for name in ["fig3a", "fig3b", "fig3c", "fig3d"] {
            ScenarioConfig::by_name(name).unwrap().validate().unwrap();
        }
        assert!(ScenarioConfig::by_name("fig3z").is_none());
        ScenarioConfig::bench(100, 10).validate().unwrap();
    }

    #[test]
    fn trains_expand_sorted_per_neuron() {
        let cfg = ScenarioConfig::fig3c();
        let events = cfg.per_neuron_events();
        assert_eq!(events[0].len(), 50);
        assert!(events[0].windows(2).all(|w| w[0].time_ps <= w[1].time_ps));
    }

    #[test]
    fn controller_override_applies_to_listed_neurons() {
        let mut cfg = ScenarioConfig::default();
        cfg.n_neurons = 3;
        cfg.controller.default = ControllerSpec::tonic(24_000);
        cfg.controller.overrides.push(ControllerOverride {
            neurons: vec![2],
            spec: ControllerSpec::default(),
        });
        let modes = cfg.controller_modes().unwrap();
        assert!(matches!(modes[0], ControllerMode::Tonic { .. }));
        assert!(matches!(modes[2], ControllerMode::Passive));
    }

    #[test]
    fn config_round_trips_through_toml() {
        let cfg = ScenarioConfig::fig3c();
        let text = toml::to_string(&cfg).unwrap();
        let back: ScenarioConfig = toml::from_str(&text).unwrap();
        assert_eq!(cfg, back);
    }
}

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::optimize::GaConfig;
use crate::simulators::{NoiseReading, EGGBOX_DOMAIN, ISHIGAMI_DOMAIN, MM1_DOMAIN};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Case {
    /// M/M/1 queue, one replication per point with the analytic variance.
    Mm1Known,
    /// M/M/1 queue, replications allocated from a budget.
    Mm1Budget,
    EggBox,
    Ishigami,
}

impl Case {
    pub fn domain(self) -> Vec<(f64, f64)> {
        match self {
            Case::Mm1Known | Case::Mm1Budget => MM1_DOMAIN.to_vec(),
            Case::EggBox => EGGBOX_DOMAIN.to_vec(),
            Case::Ishigami => ISHIGAMI_DOMAIN.to_vec(),
        }
    }

    pub fn dim(self) -> usize {
        self.domain().len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Surrogate {
    OrdinarySk,
    FullPceSk,
    LarPceSk,
}

impl Surrogate {
    pub fn name(self) -> &'static str {
        match self {
            Surrogate::OrdinarySk => "ordinary-sk",
            Surrogate::FullPceSk => "full-pce-sk",
            Surrogate::LarPceSk => "lar-pce-sk",
        }
    }
}

/// A fully resolved experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioSpec {
    pub id: String,
    pub case: Case,
    /// Number of design points.
    pub k: usize,
    /// Total replication budget `C` (budget cases).
    pub budget: Option<usize>,
    /// Simulation run length `T` (M/M/1 cases).
    pub run_length: Option<f64>,
    /// Maximum degree of the LAR candidate set.
    pub lar_degree: u32,
    /// Maximum degree of the full expansion, if that surrogate is run.
    pub full_degree: Option<u32>,
    pub q_norm: f64,
    pub seed: u64,
    pub macro_replications: usize,
    pub surrogates: Vec<Surrogate>,
    pub validation_size: usize,
    /// M/M/1: run the discrete-event simulator instead of Gaussian draws.
    pub use_des: bool,
    pub noise_reading: NoiseReading,
    pub ga: GaConfig,
}

pub const DEFAULT_SEED: u64 = 20240601;
pub const DEFAULT_REPS: usize = 20;
/// Minimum replications per point when variances must be estimated.
pub const MIN_REPLICATIONS: usize = 2;

/// Names of the built-in scenarios.
pub fn preset_names() -> Vec<&'static str> {
    vec![
        "mm1-known-1",
        "mm1-known-2",
        "mm1-known-3",
        "mm1-budget-1",
        "mm1-budget-2",
        "mm1-budget-3",
        "eggbox-1",
        "eggbox-2",
        "eggbox-3",
        "ishigami-1",
        "ishigami-2",
        "ishigami-3",
    ]
}

pub fn preset(name: &str) -> Option<ScenarioSpec> {
    let base = |case, k, lar_degree, full_degree, q_norm| ScenarioSpec {
        id: name.to_string(),
        case,
        k,
        budget: None,
        run_length: None,
        lar_degree,
        full_degree,
        q_norm,
        seed: DEFAULT_SEED,
        macro_replications: DEFAULT_REPS,
        surrogates: if full_degree.is_some() {
            vec![Surrogate::OrdinarySk, Surrogate::FullPceSk, Surrogate::LarPceSk]
        } else {
            vec![Surrogate::OrdinarySk, Surrogate::LarPceSk]
        },
        validation_size: if case == Case::Mm1Known || case == Case::Mm1Budget { 1000 } else { 2048 },
        use_des: false,
        noise_reading: NoiseReading::default(),
        ga: GaConfig::default(),
    };
    let mm1 = [(10, 6000.0, 5), (30, 2000.0, 10), (50, 1200.0, 16)];
    let (family, idx) = name.rsplit_once('-')?;
    let i: usize = idx.parse::<usize>().ok()?.checked_sub(1)?;
    if i > 2 {
        return None;
    }
    let spec = match family {
        "mm1-known" => {
            let (k, t, p) = mm1[i];
            ScenarioSpec {
                run_length: Some(t),
                ..base(Case::Mm1Known, k, p, None, 1.0)
            }
        }
        "mm1-budget" => {
            let (k, t, p) = mm1[i];
            ScenarioSpec {
                run_length: Some(t),
                budget: Some(500),
                ..base(Case::Mm1Budget, k, p, None, 1.0)
            }
        }
        "eggbox" => {
            let (k, lar, full) = [(32, 9, 5), (64, 11, 8), (128, 12, 10)][i];
            ScenarioSpec {
                budget: Some(1280),
                ..base(Case::EggBox, k, lar, Some(full), 0.8)
            }
        }
        "ishigami" => {
            let (k, lar, full) = [(64, 6, 4), (128, 8, 6), (256, 9, 7)][i];
            ScenarioSpec {
                budget: Some(2560),
                ..base(Case::Ishigami, k, lar, Some(full), 0.8)
            }
        }
        _ => return None,
    };
    Some(spec)
}

impl ScenarioSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(format!("scenario `{}`: {msg}", self.id)));
        if self.k < 2 {
            return bad("k must be at least 2".into());
        }
        if self.macro_replications == 0 {
            return bad("macro_replications must be positive".into());
        }
        if !(self.q_norm > 0.0 && self.q_norm <= 1.0) {
            return bad(format!("q_norm {} outside (0, 1]", self.q_norm));
        }
        if self.surrogates.is_empty() {
            return bad("no surrogates requested".into());
        }
        if self.surrogates.contains(&Surrogate::FullPceSk) && self.full_degree.is_none() {
            return bad("full-pce-sk requires full_degree".into());
        }
        if self.validation_size == 0 {
            return bad("validation_size must be positive".into());
        }
        match self.case {
            Case::Mm1Known | Case::Mm1Budget => match self.run_length {
                Some(t) if t > 0.0 => {}
                _ => return bad("M/M/1 cases need a positive run_length".into()),
            },
            _ => {}
        }
        if self.case != Case::Mm1Known {
            match self.budget {
                Some(c) if c >= MIN_REPLICATIONS * self.k => {}
                Some(c) => return bad(format!("budget {c} below {MIN_REPLICATIONS} replications per point")),
                None => return bad("budget cases need a budget".into()),
            }
        }
        Ok(())
    }
}

/// One `[[scenario]]` table: a preset name and/or explicit fields, the
/// latter overriding the former.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioEntry {
    pub preset: Option<String>,
    pub id: Option<String>,
    pub case: Option<Case>,
    pub k: Option<usize>,
    pub budget: Option<usize>,
    pub run_length: Option<f64>,
    pub lar_degree: Option<u32>,
    pub full_degree: Option<u32>,
    pub q_norm: Option<f64>,
    pub seed: Option<u64>,
    pub macro_replications: Option<usize>,
    pub surrogates: Option<Vec<Surrogate>>,
    pub validation_size: Option<usize>,
    pub use_des: Option<bool>,
    pub noise_reading: Option<NoiseReading>,
    pub ga: Option<GaConfig>,
}

/// Top-level configuration file.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Defaults applied to every scenario that does not set them.
    pub seed: Option<u64>,
    pub macro_replications: Option<usize>,
    #[serde(default)]
    pub scenario: Vec<ScenarioEntry>,
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn from_file(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    /// Resolves every entry into a validated scenario.
    pub fn scenarios(&self) -> Result<Vec<ScenarioSpec>> {
        if self.scenario.is_empty() {
            return Err(Error::Config("no [[scenario]] entries".into()));
        }
        self.scenario.iter().enumerate().map(|(i, e)| self.resolve(i, e)).collect()
    }

    fn resolve(&self, index: usize, e: &ScenarioEntry) -> Result<ScenarioSpec> {
        let mut spec = match &e.preset {
            Some(name) => preset(name).ok_or_else(|| Error::Config(format!("unknown preset `{name}`")))?,
            None => {
                let missing = |f: &str| Error::Config(format!("scenario {index}: `{f}` is required without a preset"));
                let case = e.case.ok_or_else(|| missing("case"))?;
                let full = e.full_degree;
                ScenarioSpec {
                    id: e.id.clone().unwrap_or_else(|| format!("scenario-{index}")),
                    case,
                    k: e.k.ok_or_else(|| missing("k"))?,
                    budget: None,
                    run_length: None,
                    lar_degree: e.lar_degree.ok_or_else(|| missing("lar_degree"))?,
                    full_degree: full,
                    q_norm: 1.0,
                    seed: DEFAULT_SEED,
                    macro_replications: DEFAULT_REPS,
                    surrogates: if full.is_some() {
                        vec![Surrogate::OrdinarySk, Surrogate::FullPceSk, Surrogate::LarPceSk]
                    } else {
                        vec![Surrogate::OrdinarySk, Surrogate::LarPceSk]
                    },
                    validation_size: if case.dim() == 1 { 1000 } else { 2048 },
                    use_des: false,
                    noise_reading: NoiseReading::default(),
                    ga: GaConfig::default(),
                }
            }
        };
        if let Some(v) = &e.id {
            spec.id = v.clone();
        }
        if let Some(v) = e.case {
            spec.case = v;
        }
        if let Some(v) = e.k {
            spec.k = v;
        }
        if let Some(v) = e.budget {
            spec.budget = Some(v);
        }
        if let Some(v) = e.run_length {
            spec.run_length = Some(v);
        }
        if let Some(v) = e.lar_degree {
            spec.lar_degree = v;
        }
        if let Some(v) = e.full_degree {
            spec.full_degree = Some(v);
        }
        if let Some(v) = e.q_norm {
            spec.q_norm = v;
        }
        spec.seed = e.seed.or(self.seed).unwrap_or(spec.seed);
        spec.macro_replications = e.macro_replications.or(self.macro_replications).unwrap_or(spec.macro_replications);
        if let Some(v) = &e.surrogates {
            spec.surrogates = v.clone();
        }
        if let Some(v) = e.validation_size {
            spec.validation_size = v;
        }
        if let Some(v) = e.use_des {
            spec.use_des = v;
        }
        if let Some(v) = e.noise_reading {
            spec.noise_reading = v;
        }
        if let Some(v) = &e.ga {
            spec.ga = v.clone();
        }
        spec.validate()?;
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_resolve_and_validate() {
        for name in preset_names() {
            let spec = preset(name).unwrap();
            spec.validate().unwrap();
            assert_eq!(spec.id, name);
        }
        assert!(preset("eggbox-4").is_none());
        assert!(preset("eggbox-0").is_none());
        assert!(preset("nothing-1").is_none());
        let e = preset("eggbox-2").unwrap();
        assert_eq!((e.k, e.budget, e.lar_degree, e.full_degree), (64, Some(1280), 11, Some(8)));
        let m = preset("mm1-known-1").unwrap();
        assert_eq!(m.surrogates.len(), 2);
    }

    #[test]
    fn toml_overrides() {
        let cfg = RunConfig::from_toml(
            r#"
            seed = 7
            macro_replications = 3

            [[scenario]]
            preset = "eggbox-1"
            k = 40
            surrogates = ["ordinary-sk", "lar-pce-sk"]

            [[scenario]]
            id = "tiny"
            case = "ishigami"
            k = 20
            budget = 60
            lar_degree = 3
            q_norm = 0.8
            macro_replications = 1
            noise_reading = "standard-deviation"

            [scenario.ga]
            generations = 5
            "#,
        )
        .unwrap();
        let s = cfg.scenarios().unwrap();
        assert_eq!(s[0].k, 40);
        assert_eq!(s[0].seed, 7);
        assert_eq!(s[0].macro_replications, 3);
        assert_eq!(s[0].surrogates, vec![Surrogate::OrdinarySk, Surrogate::LarPceSk]);
        assert_eq!(s[1].id, "tiny");
        assert_eq!(s[1].macro_replications, 1);
        assert_eq!(s[1].ga.generations, 5);
        assert_eq!(s[1].ga.population, 40);
        assert_eq!(s[1].noise_reading, NoiseReading::StandardDeviation);
    }

    #[test]
    fn config_errors() {
        assert!(RunConfig::from_toml("[[scenario]]\nbogus = 1").is_err());
        assert!(RunConfig::from_toml("").unwrap().scenarios().is_err());
        let cfg = RunConfig::from_toml("[[scenario]]\npreset = \"nope-1\"").unwrap();
        assert!(matches!(cfg.scenarios(), Err(Error::Config(_))));
        let cfg = RunConfig::from_toml("[[scenario]]\npreset = \"eggbox-1\"\nbudget = 10").unwrap();
        assert!(cfg.scenarios().is_err());
        let cfg = RunConfig::from_toml("[[scenario]]\ncase = \"egg-box\"\nk = 10").unwrap();
        assert!(cfg.scenarios().is_err());
    }
}

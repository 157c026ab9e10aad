//! Scenario configuration: one self-contained TOML file per run.
//!
//! Top-level keys are flat (mass, beta, gamma_re, gamma_im, t, t0, seed)
//! with nested blocks for the atom specification, the kernel family, the
//! optional foliation and the solver case. Unknown keys are rejected.

use nalgebra::Vector3;
use num_complex::Complex64;
use serde::Deserialize;

use relmap::channel::ChannelParams;
use relmap::covariant::Foliation;
use relmap::fock::AtomBasis;
use relmap::kernels::KernelFamily;
use relmap::minkowski::{FourVector, LorentzTransform, MassShellMomentum};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot parse config: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("config scenario '{found}' does not match subcommand '{expected}'")]
    ScenarioMismatch { expected: String, found: String },
    #[error("invalid atoms: {0}")]
    Atoms(String),
    #[error("invalid channel parameters: {0}")]
    Channel(#[from] relmap::channel::ChannelError),
    #[error("invalid foliation: {0}")]
    Foliation(#[from] relmap::algebra::AlgebraError),
    #[error("invalid value: {0}")]
    Value(String),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    /// Optional; when present it must match the invoked subcommand.
    pub scenario: Option<String>,
    pub mass: f64,
    #[serde(default)]
    pub beta: f64,
    #[serde(default)]
    pub gamma_re: f64,
    #[serde(default)]
    pub gamma_im: f64,
    #[serde(default)]
    pub t: f64,
    #[serde(default)]
    pub t0: f64,
    pub seed: u64,
    /// Trial count for sampled scenarios; each scenario has its own default.
    pub trials: Option<usize>,
    pub atoms: Option<AtomSpec>,
    pub kernel: Option<KernelSpec>,
    pub foliation: Option<FoliationSpec>,
    #[serde(rename = "case")]
    pub case: Option<CaseSpec>,
    pub output: Option<OutputSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum AtomSpec {
    Explicit {
        momenta: Vec<[f64; 3]>,
    },
    Ring {
        count: usize,
        radius: f64,
        #[serde(default)]
        plane: Plane,
    },
    BoostChain {
        seed_momentum: [f64; 3],
        rapidity: f64,
        length: usize,
    },
}

#[derive(Debug, Clone, Copy, Default, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum Plane {
    #[default]
    Xy,
    Yz,
    Zx,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelSpec {
    pub family: KernelFamilyName,
    pub lambda: Option<f64>,
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum KernelFamilyName {
    Constant,
    ExponentialInS,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FoliationSpec {
    pub n: [f64; 4],
    #[serde(default)]
    pub x0: [f64; 4],
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseSpec {
    /// Overrides for the standard momentum of the classified case; the
    /// expected dimensions stay those of the canonical positive-mass row,
    /// so probing other table rows reports their mismatch via exit 1.
    #[serde(default = "default_true")]
    pub positive_energy: bool,
    pub m_param: Option<f64>,
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    /// File stem for the emitted artifacts; defaults to the scenario name.
    pub stem: Option<String>,
}

impl ScenarioConfig {
    pub fn load(path: &std::path::Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)?;
        Ok(toml::from_str(&text)?)
    }

    pub fn check_scenario(&self, expected: &str) -> Result<(), ConfigError> {
        if let Some(found) = &self.scenario {
            if found != expected {
                return Err(ConfigError::ScenarioMismatch {
                    expected: expected.to_string(),
                    found: found.clone(),
                });
            }
        }
        Ok(())
    }

    pub fn gamma(&self) -> Complex64 {
        Complex64::new(self.gamma_re, self.gamma_im)
    }

    pub fn kernel_family(&self) -> Result<KernelFamily, ConfigError> {
        match &self.kernel {
            None
            | Some(KernelSpec {
                family: KernelFamilyName::Constant,
                ..
            }) => Ok(KernelFamily::Constant),
            Some(KernelSpec {
                family: KernelFamilyName::ExponentialInS,
                lambda,
            }) => {
                let lambda = lambda.ok_or_else(|| {
                    ConfigError::Value("exponential-in-s kernel needs `kernel.lambda`".into())
                })?;
                Ok(KernelFamily::ExponentialInS { lambda })
            }
        }
    }

    pub fn basis(&self) -> Result<AtomBasis, ConfigError> {
        let spec = self
            .atoms
            .as_ref()
            .ok_or_else(|| ConfigError::Atoms("scenario needs an [atoms] block".into()))?;
        let momenta: Vec<Vector3<f64>> = match spec {
            AtomSpec::Explicit { momenta } => momenta.iter().map(|m| Vector3::from(*m)).collect(),
            AtomSpec::Ring {
                count,
                radius,
                plane,
            } => {
                if *count == 0 {
                    return Err(ConfigError::Atoms("ring count must be positive".into()));
                }
                (0..*count)
                    .map(|k| {
                        let phi = 2.0 * std::f64::consts::PI * k as f64 / *count as f64;
                        let (c, s) = (radius * phi.cos(), radius * phi.sin());
                        match plane {
                            Plane::Xy => Vector3::new(c, s, 0.0),
                            Plane::Yz => Vector3::new(0.0, c, s),
                            Plane::Zx => Vector3::new(s, 0.0, c),
                        }
                    })
                    .collect()
            }
            AtomSpec::BoostChain {
                seed_momentum,
                rapidity,
                length,
            } => {
                if *length == 0 {
                    return Err(ConfigError::Atoms(
                        "boost-chain length must be positive".into(),
                    ));
                }
                let step = LorentzTransform::boost(&Vector3::z(), *rapidity);
                let mut p = MassShellMomentum::new(self.mass, Vector3::from(*seed_momentum))
                    .map_err(|e| ConfigError::Atoms(e.to_string()))?;
                let mut momenta = Vec::with_capacity(*length);
                for _ in 0..*length {
                    momenta.push(p.spatial());
                    p = p.boosted(&step);
                }
                momenta
            }
        };
        AtomBasis::new(self.mass, momenta).map_err(|e| ConfigError::Atoms(e.to_string()))
    }

    pub fn channel_params(&self, basis: &AtomBasis) -> Result<ChannelParams, ConfigError> {
        Ok(ChannelParams::validate(
            self.beta,
            self.gamma(),
            self.kernel_family()?,
            self.t,
            self.t0,
            basis,
        )?)
    }

    /// The configured foliation, or the special frame when absent.
    pub fn foliation(&self) -> Result<Foliation, ConfigError> {
        match &self.foliation {
            None => Ok(Foliation::special_frame()),
            Some(spec) => Ok(Foliation::new(
                FourVector::new(spec.n[0], spec.n[1], spec.n[2], spec.n[3]),
                FourVector::new(spec.x0[0], spec.x0[1], spec.x0[2], spec.x0[3]),
            )?),
        }
    }

    /// Ring closure angles when the atoms form a ring; used by scenarios
    /// that need Lorentz transforms mapping the basis into itself.
    pub fn ring_count(&self) -> Option<usize> {
        match &self.atoms {
            Some(AtomSpec::Ring { count, .. }) => Some(*count),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config_parses() {
        let cfg: ScenarioConfig = toml::from_str(
            r#"
            mass = 1.0
            seed = 7
            [atoms]
            kind = "ring"
            count = 4
            radius = 0.5
            "#,
        )
        .unwrap();
        assert_eq!(cfg.basis().unwrap().len(), 4);
        assert_eq!(cfg.beta, 0.0);
    }

    #[test]
    fn unknown_keys_rejected() {
        let err = toml::from_str::<ScenarioConfig>(
            r#"
            mass = 1.0
            seed = 7
            surprise = true
            "#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("surprise"));
    }

    #[test]
    fn boost_chain_builds_on_shell() {
        let cfg: ScenarioConfig = toml::from_str(
            r#"
            mass = 1.0
            seed = 1
            [atoms]
            kind = "boost-chain"
            seed_momentum = [0.0, 0.0, 0.2]
            rapidity = 0.4
            length = 5
            "#,
        )
        .unwrap();
        let basis = cfg.basis().unwrap();
        assert_eq!(basis.len(), 5);
    }

    #[test]
    fn scenario_mismatch_detected() {
        let cfg: ScenarioConfig = toml::from_str(
            r#"
            scenario = "choi"
            mass = 1.0
            seed = 1
            "#,
        )
        .unwrap();
        assert!(cfg.check_scenario("choi").is_ok());
        assert!(matches!(
            cfg.check_scenario("conservation"),
            Err(ConfigError::ScenarioMismatch { .. })
        ));
    }
}

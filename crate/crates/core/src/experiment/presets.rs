//! Built-in experiment catalog, one entry per figure family.

use crate::error::{Error, Result};

use super::config::RawConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Preset {
    pub name: &'static str,
    pub description: &'static str,
    pub config: &'static str,
}

pub const PRESETS: &[Preset] = &[
    Preset {
        name: "fig-transport-sin",
        description: "transport, sin, a=1 k=1, t=1: error against n and its slope",
        config: "equation=transport scheme=power:1,1 initial=sin t=1 n=1..100",
    },
    Preset {
        name: "fig-transport-sin-approx",
        description: "transport, sin, a=1 k=1, t=2: solution against approximations at n=1,5",
        config: "equation=transport scheme=power:1,1 initial=sin t=2 n=1,5,25,125",
    },
    Preset {
        name: "fig-transport-sin-k2",
        description: "transport, sin, a=1 k=2, t=1: second-order power-law family",
        config: "equation=transport scheme=power:1,2 initial=sin t=1 n=1..100",
    },
    Preset {
        name: "fig-transport-expabs",
        description: "transport, exp(-|x|), a=1 k=1, t=1",
        config: "equation=transport scheme=power:1,1 initial=exp-abs t=1 n=1..100",
    },
    Preset {
        name: "fig-transport-slow-half",
        description: "transport, slow family w(s)=s^(-1/2), t=1",
        config: "equation=transport scheme=slow:1/2 initial=sin t=1 n=16..4096(geometric) fit_min=16",
    },
    Preset {
        name: "fig-transport-slow-third",
        description: "transport, slow family w(s)=s^(-1/3), t=1",
        config: "equation=transport scheme=slow:1/3 initial=sin t=1 n=16..4096(geometric) fit_min=16",
    },
    Preset {
        name: "fig-transport-slow-sixth",
        description: "transport, slow family w(s)=s^(-1/6), t=1",
        config: "equation=transport scheme=slow:1/6 initial=sin t=1 n=16..4096(geometric) fit_min=16",
    },
    Preset {
        name: "fig-heat-sin-approx",
        description: "heat, sin, G1, a=1, t=2: solution against approximations at n=1,2",
        config: "equation=heat scheme=g1 initial=sin a=1 t=2 n=1,2,4,8",
    },
    Preset {
        name: "fig-heat-sin-g1",
        description: "heat, sin, G1, a=1, t=2: first-order convergence",
        config: "equation=heat scheme=g1 initial=sin a=1 t=2 n=1..256(geometric)",
    },
    Preset {
        name: "fig-heat-sin-g2",
        description: "heat, sin, G2, a=1, t=2: second-order convergence",
        config: "equation=heat scheme=g2 initial=sin a=1 t=2 n=1..256(geometric)",
    },
    Preset {
        name: "fig-heat-sin-g3",
        description: "heat, sin, G3, a=1, t=2: third-order convergence",
        config: "equation=heat scheme=g3 initial=sin a=1 t=2 n=1..256(geometric)",
    },
    Preset {
        name: "fig-heat-sin-g1-leading",
        description: "heat, sin, G1, a=1, t=2: n*error up to n=4096",
        config: "equation=heat scheme=g1 initial=sin a=1 t=2 n=1..4096(geometric) grid=0,2pi,2001",
    },
    Preset {
        name: "fig-heat-expabs-approx",
        description: "heat, exp(-|x|), G1, a=1, t=1: solution against approximations at n=1,5",
        config: "equation=heat scheme=g1 initial=exp-abs a=1 t=1 n=1,5,25,125",
    },
    Preset {
        name: "fig-heat-expabs-g1",
        description: "heat, exp(-|x|), G1, a=1, t=1: order on non-smooth data",
        config: "equation=heat scheme=g1 initial=exp-abs a=1 t=1 n=8..256(geometric) fit_min=8",
    },
    Preset {
        name: "fig-heat-expabs-g2",
        description: "heat, exp(-|x|), G2, a=1, t=1: order on non-smooth data",
        config: "equation=heat scheme=g2 initial=exp-abs a=1 t=1 n=8..256(geometric) fit_min=8",
    },
    Preset {
        name: "fig-heat-expabs-g3",
        description: "heat, exp(-|x|), G3, a=1, t=1: order on non-smooth data",
        config: "equation=heat scheme=g3 initial=exp-abs a=1 t=1 n=8..256(geometric) fit_min=8",
    },
];

pub fn find_preset(name: &str) -> Result<&'static Preset> {
    PRESETS.iter().find(|p| p.name == name).ok_or_else(|| {
        Error::validation(
            "preset",
            format!("unknown preset `{name}`; run list-presets for the catalog"),
        )
    })
}

/// The preset's unvalidated layer.
pub fn preset_layer(name: &str) -> Result<RawConfig> {
    RawConfig::parse(find_preset(name)?.config)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_preset_validates() {
        for p in PRESETS {
            assert!(p.name.starts_with("fig-"), "{}", p.name);
            preset_layer(p.name).unwrap().validate().unwrap();
        }
    }

    #[test]
    fn names_are_unique() {
        let mut names: Vec<_> = PRESETS.iter().map(|p| p.name).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), PRESETS.len());
    }

    #[test]
    fn unknown_preset_names_key() {
        let err = find_preset("fig-nothing").unwrap_err();
        assert!(matches!(err, Error::Validation { ref key, .. } if key == "preset"));
    }
}

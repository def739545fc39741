use super::Scenario;
use crate::slab::ThicknessRule;

pub struct PresetInfo {
    pub name: &'static str,
    pub omega_c: f64,
    pub resonant: bool,
    pub description: &'static str,
}

pub const PRESETS: &[PresetInfo] = &[
    PresetInfo {
        name: "fig2",
        omega_c: 1.5,
        resonant: true,
        description: "weak control field, resonant thickness: subluminal reflection and transmission",
    },
    PresetInfo {
        name: "fig3",
        omega_c: 1.5,
        resonant: false,
        description: "weak control field, anti-resonant thickness",
    },
    PresetInfo {
        name: "fig4",
        omega_c: 4.0,
        resonant: true,
        description: "resonant thickness, Ωc = 4γ (override --omega-c 6 or 8 for the superluminal curves)",
    },
    PresetInfo {
        name: "fig5",
        omega_c: 4.0,
        resonant: false,
        description: "anti-resonant thickness, Ωc = 4γ (override --omega-c 6 or 8)",
    },
    PresetInfo {
        name: "fig6",
        omega_c: 1.5,
        resonant: true,
        description: "wave-packet check of the subluminal case",
    },
    PresetInfo {
        name: "fig7",
        omega_c: 6.0,
        resonant: true,
        description: "wave-packet check of the superluminal case",
    },
];

pub fn preset(name: &str) -> Option<Scenario> {
    let info = PRESETS.iter().find(|p| p.name == name)?;
    let mut s = Scenario {
        name: info.name.to_string(),
        ..Scenario::default()
    };
    s.atomic.omega_c = info.omega_c;
    s.slab.thickness = if info.resonant {
        ThicknessRule::Resonant { m: 1500 }
    } else {
        ThicknessRule::AntiResonant { m: 1500 }
    };
    Some(s)
}

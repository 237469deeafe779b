use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::catalog::{
    Capacitor, Disk, PulsedUniformE, Solenoid, Strip, StripOrientation, Triangle, VanKampen,
    Wedge,
};
use super::gauge::PureGauge;
use super::profile::{FluxProfile, Window};
use super::{Constants, FieldDifference, FieldError, FieldModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ScenarioKind {
    #[serde(rename = "vertical-strip-B")]
    VerticalStripB,
    #[serde(rename = "horizontal-strip-B")]
    HorizontalStripB,
    #[serde(rename = "triangle-B")]
    TriangleB,
    #[serde(rename = "disk-B")]
    DiskB,
    #[serde(rename = "solenoid-AB")]
    SolenoidAB,
    #[serde(rename = "capacitor-xt")]
    CapacitorXt,
    #[serde(rename = "pulsed-uniform-E-xt")]
    PulsedUniformEXt,
    #[serde(rename = "van-kampen-flux")]
    VanKampenFlux,
}

impl ScenarioKind {
    pub const ALL: [ScenarioKind; 8] = [
        ScenarioKind::VerticalStripB,
        ScenarioKind::HorizontalStripB,
        ScenarioKind::TriangleB,
        ScenarioKind::DiskB,
        ScenarioKind::SolenoidAB,
        ScenarioKind::CapacitorXt,
        ScenarioKind::PulsedUniformEXt,
        ScenarioKind::VanKampenFlux,
    ];

    pub fn id(self) -> &'static str {
        match self {
            ScenarioKind::VerticalStripB => "vertical-strip-B",
            ScenarioKind::HorizontalStripB => "horizontal-strip-B",
            ScenarioKind::TriangleB => "triangle-B",
            ScenarioKind::DiskB => "disk-B",
            ScenarioKind::SolenoidAB => "solenoid-AB",
            ScenarioKind::CapacitorXt => "capacitor-xt",
            ScenarioKind::PulsedUniformEXt => "pulsed-uniform-E-xt",
            ScenarioKind::VanKampenFlux => "van-kampen-flux",
        }
    }

    /// Parameters accepted by this kind, with defaults.
    pub fn params(self) -> Vec<ParamSpec> {
        let p = ParamSpec::new;
        let mut v = match self {
            ScenarioKind::VerticalStripB => vec![
                p("b0", 1.0, "field amplitude B0"),
                p("x_lo", 1.0, "left strip edge"),
                p("x_hi", 2.0, "right strip edge"),
                p("rate", 0.5, "growth rate eps in B0(1 + eps t)"),
            ],
            ScenarioKind::HorizontalStripB => vec![
                p("b0", 1.0, "field amplitude B0"),
                p("y_lo", 1.0, "lower strip edge"),
                p("y_hi", 2.0, "upper strip edge"),
                p("rate", 0.0, "growth rate eps in B0(1 + eps t)"),
            ],
            ScenarioKind::TriangleB => vec![
                p("b0", 1.0, "field amplitude B0"),
                p("a", 1.0, "side length"),
                p("offset_x", 0.0, "x of the lower-left vertex"),
                p("offset_y", 0.0, "y of the base"),
            ],
            ScenarioKind::DiskB => {
                vec![p("b0", 1.0, "field amplitude B0"), p("radius", 1.0, "disk radius R")]
            }
            ScenarioKind::SolenoidAB => vec![p("flux", 2.0 * PI, "enclosed flux Phi")],
            ScenarioKind::CapacitorXt => vec![
                p("e0", 1.0, "field amplitude E0"),
                p("x_lo", 1.0, "left plate"),
                p("x_hi", 2.0, "right plate"),
                p("temporal_gauge", 0.0, "1 selects A_x = -c E0 t, phi = 0"),
            ],
            ScenarioKind::PulsedUniformEXt => vec![
                p("e0", 1.0, "field amplitude E0"),
                p("duration", 1.0, "pulse duration T"),
            ],
            ScenarioKind::VanKampenFlux => vec![
                p("profile", 1.0, "0 constant, 1 linear, 2 sinusoidal"),
                p("phi0", 1.0, "flux at the reference time"),
                p("rate", 0.5, "linear growth rate"),
                p("amplitude", 0.5, "sinusoidal amplitude"),
                p("omega", 2.0, "sinusoidal angular frequency"),
                p("t0", 0.0, "reference time of the profile"),
                p("shield", 0.0, "1 confines E to an angular wedge"),
                p("shield_center", PI, "wedge center angle"),
                p("shield_half_width", PI / 6.0, "wedge half opening angle"),
            ],
        };
        v.push(p("dressing", 0.0, "amplitude of an added harmonic pure gauge"));
        v.push(p("shift_ax", 0.0, "constant pure-gauge shift of A_x"));
        v.push(p("shift_ay", 0.0, "constant pure-gauge shift of A_y"));
        v
    }

    pub fn is_spacetime(self) -> bool {
        matches!(
            self,
            ScenarioKind::CapacitorXt | ScenarioKind::PulsedUniformEXt | ScenarioKind::VanKampenFlux
        )
    }
}

impl fmt::Display for ScenarioKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for ScenarioKind {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "van-kampen" {
            return Ok(ScenarioKind::VanKampenFlux);
        }
        ScenarioKind::ALL
            .into_iter()
            .find(|k| k.id() == s)
            .ok_or_else(|| FieldError::UnknownKind(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParamSpec {
    pub name: &'static str,
    pub default: f64,
    pub description: &'static str,
}

impl ParamSpec {
    fn new(name: &'static str, default: f64, description: &'static str) -> Self {
        Self { name, default, description }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub kind: ScenarioKind,
    pub params: BTreeMap<String, f64>,
    pub mollify_width: f64,
}

impl ScenarioConfig {
    pub fn new(kind: ScenarioKind) -> Self {
        let params = kind.params().into_iter().map(|p| (p.name.to_string(), p.default)).collect();
        Self { kind, params, mollify_width: 0.0 }
    }

    pub fn with(mut self, name: &str, value: f64) -> Result<Self, FieldError> {
        self.set(name, value)?;
        Ok(self)
    }

    pub fn with_mollify(mut self, width: f64) -> Self {
        self.mollify_width = width;
        self
    }

    pub fn set(&mut self, name: &str, value: f64) -> Result<(), FieldError> {
        if name == "mollify_width" {
            self.mollify_width = value;
            return Ok(());
        }
        match self.params.get_mut(name) {
            Some(slot) => {
                *slot = value;
                Ok(())
            }
            None => Err(FieldError::UnknownParameter {
                kind: self.kind.id().to_string(),
                name: name.to_string(),
            }),
        }
    }

    /// Sets a parameter from text; `profile` also accepts its names.
    pub fn set_str(&mut self, name: &str, value: &str) -> Result<(), FieldError> {
        let v = match (name, value.trim()) {
            ("profile", "constant") => 0.0,
            ("profile", "linear") => 1.0,
            ("profile", "sinusoidal") => 2.0,
            ("temporal_gauge" | "shield", "true") => 1.0,
            ("temporal_gauge" | "shield", "false") => 0.0,
            (_, text) => text.parse::<f64>().map_err(|_| {
                FieldError::InvalidConfig(format!("parameter `{name}`: cannot parse `{value}`"))
            })?,
        };
        self.set(name, v)
    }

    pub fn get(&self, name: &str) -> f64 {
        if name == "mollify_width" {
            return self.mollify_width;
        }
        *self
            .params
            .get(name)
            .unwrap_or_else(|| panic!("parameter `{name}` not defined for {}", self.kind))
    }

    pub fn flux_profile(&self) -> Result<FluxProfile, FieldError> {
        let (phi0, t0) = (self.get("phi0"), self.get("t0"));
        match self.get("profile") {
            0.0 => Ok(FluxProfile::Constant { phi0 }),
            1.0 => Ok(FluxProfile::Linear { phi0, rate: self.get("rate"), t0 }),
            2.0 => Ok(FluxProfile::Sinusoidal {
                phi0,
                amplitude: self.get("amplitude"),
                omega: self.get("omega"),
                t0,
            }),
            p => Err(FieldError::InvalidConfig(format!("unknown flux profile id {p}"))),
        }
    }

    pub fn validate(&self) -> Result<(), FieldError> {
        let bad = |msg: String| Err(FieldError::InvalidConfig(msg));
        for (k, v) in &self.params {
            if !v.is_finite() {
                return bad(format!("parameter `{k}` must be finite"));
            }
        }
        let w = self.mollify_width;
        if !(w.is_finite() && w >= 0.0) {
            return bad(format!("mollify_width must be >= 0, got {w}"));
        }
        let width_ok = |name: &str, extent: f64| -> Result<(), FieldError> {
            if extent.is_nan() || extent <= 0.0 {
                return Err(FieldError::InvalidConfig(format!(
                    "{name} must be positive (degenerate regions carry delta-function potentials), got {extent}"
                )));
            }
            if w >= extent {
                return Err(FieldError::InvalidConfig(format!(
                    "mollify_width {w} must be smaller than the {name} {extent}"
                )));
            }
            Ok(())
        };
        match self.kind {
            ScenarioKind::VerticalStripB | ScenarioKind::CapacitorXt => {
                width_ok("strip width", self.get("x_hi") - self.get("x_lo"))?
            }
            ScenarioKind::HorizontalStripB => {
                width_ok("strip width", self.get("y_hi") - self.get("y_lo"))?
            }
            ScenarioKind::TriangleB => width_ok("triangle side", self.get("a"))?,
            ScenarioKind::DiskB => width_ok("disk radius", self.get("radius"))?,
            ScenarioKind::PulsedUniformEXt => width_ok("pulse duration", self.get("duration"))?,
            ScenarioKind::SolenoidAB => {}
            ScenarioKind::VanKampenFlux => {
                self.flux_profile()?;
                if self.get("shield") != 0.0 {
                    let hw = self.get("shield_half_width");
                    if !(hw > 0.0 && hw < PI) {
                        return bad(format!("shield_half_width must lie in (0, pi), got {hw}"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Builds the documented gauge for `config`, then applies mollification and
/// any requested pure-gauge dressing.
pub fn build_field(
    config: &ScenarioConfig,
    constants: Constants,
) -> Result<FieldDifference, FieldError> {
    config.validate()?;
    let g = |n: &str| config.get(n);
    let c = constants.c;
    let model: Arc<dyn FieldModel> = match config.kind {
        ScenarioKind::VerticalStripB => Arc::new(Strip {
            orientation: StripOrientation::Vertical,
            b0: g("b0"),
            window: Window::new(g("x_lo"), g("x_hi"), 0.0),
            rate: g("rate"),
            c,
        }),
        ScenarioKind::HorizontalStripB => Arc::new(Strip {
            orientation: StripOrientation::Horizontal,
            b0: g("b0"),
            window: Window::new(g("y_lo"), g("y_hi"), 0.0),
            rate: g("rate"),
            c,
        }),
        ScenarioKind::TriangleB => Arc::new(Triangle {
            b0: g("b0"),
            a: g("a"),
            dx: g("offset_x"),
            dy: g("offset_y"),
            width: 0.0,
        }),
        ScenarioKind::DiskB => Arc::new(Disk { b0: g("b0"), r: g("radius"), width: 0.0 }),
        ScenarioKind::SolenoidAB => Arc::new(Solenoid { flux: g("flux") }),
        ScenarioKind::CapacitorXt => Arc::new(Capacitor {
            e0: g("e0"),
            window: Window::new(g("x_lo"), g("x_hi"), 0.0),
            temporal_gauge: g("temporal_gauge") != 0.0,
            c,
        }),
        ScenarioKind::PulsedUniformEXt => Arc::new(PulsedUniformE {
            e0: g("e0"),
            window: Window::new(0.0, g("duration"), 0.0),
        }),
        ScenarioKind::VanKampenFlux => Arc::new(VanKampen {
            profile: config.flux_profile()?,
            wedge: (g("shield") != 0.0).then(|| Wedge {
                center: g("shield_center"),
                half_width: g("shield_half_width"),
            }),
            c,
        }),
    };
    let mut field = FieldDifference::new(model, constants);
    if config.mollify_width > 0.0 {
        field = field.mollify(config.mollify_width)?;
    }
    let (ax, ay) = (g("shift_ax"), g("shift_ay"));
    if ax != 0.0 || ay != 0.0 {
        field = field.dressed(PureGauge::ConstantA { ax, ay });
    }
    if g("dressing") != 0.0 {
        field = field.dressed(PureGauge::harmonic(g("dressing")));
    }
    Ok(field)
}

//! TOML configuration and the JSON divisor format.
//!
//! ```toml
//! [curve]
//! a = ["0", "0", "1", "-1", "0"]     # a1 a2 a3 a4 a6
//! [translation]
//! t = ["0", "0"]
//! [sheaf]
//! base = [{ point = "infinity", coeff = 3 }]
//! [points]
//! p = "4t"                           # default; or ["2", "-3"]
//! q = ["1/4", "-5/8"]                # default is "-2t"
//! [engine]
//! max_degree = 8
//! orbit_cap = 16
//! sample_margin = 4
//! format = "json"
//! ```
//!
//! Point names accepted anywhere a point is expected: `infinity` (or `O`),
//! a multiple of the translation point such as `t`, `-2t`, `4t`, a name from
//! `[points]`, or `name^j` for `name^{sigma^j}`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use sklyanin_core::curve::{Curve, CurvePoint, Translation};
use sklyanin_core::divisor::Divisor;
use sklyanin_core::orbit::DEFAULT_ORBIT_CAP;
use sklyanin_core::scalar::{format_rational, parse_rational};
use sklyanin_core::thcr::{SampleSchedule, SheafData, TwistedRing};
use sklyanin_core::{Error, Rational, Result};

pub type Point = CurvePoint<Rational>;
pub type Div = Divisor<Rational>;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// A rational written as a TOML integer or a `"num/den"` string.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

impl Scalar {
    fn value(&self) -> Result<Rational> {
        match self {
            Scalar::Int(n) => Ok(Rational::from_integer((*n).into())),
            Scalar::Text(s) => parse_rational(s).ok_or_else(|| Error::Input(format!("not a rational: {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum PointRef {
    Coords([Scalar; 2]),
    Name(String),
}

#[derive(Clone, Debug, Deserialize)]
pub struct TermRef {
    pub point: PointRef,
    pub coeff: i64,
}

#[derive(Debug, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct RawCurve {
    a: [Scalar; 5],
}

impl Default for RawCurve {
    fn default() -> Self {
        RawCurve { a: [0, 0, 1, -1, 0].map(Scalar::Int) }
    }
}

#[derive(Debug, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct RawTranslation {
    t: PointRef,
}

impl Default for RawTranslation {
    fn default() -> Self {
        RawTranslation { t: PointRef::Coords([Scalar::Int(0), Scalar::Int(0)]) }
    }
}

#[derive(Debug, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct RawSheaf {
    base: Vec<TermRef>,
}

impl Default for RawSheaf {
    fn default() -> Self {
        RawSheaf { base: vec![TermRef { point: PointRef::Name("infinity".into()), coeff: 3 }] }
    }
}

#[derive(Debug, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct RawEngine {
    max_degree: usize,
    orbit_cap: i64,
    sample_generator: Option<PointRef>,
    sample_offset: Option<PointRef>,
    sample_margin: usize,
    format: Format,
}

impl Default for RawEngine {
    fn default() -> Self {
        RawEngine { max_degree: 8, orbit_cap: DEFAULT_ORBIT_CAP, sample_generator: None, sample_offset: None, sample_margin: 4, format: Format::Json }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct RawConfig {
    curve: RawCurve,
    translation: RawTranslation,
    sheaf: RawSheaf,
    points: BTreeMap<String, PointRef>,
    engine: RawEngine,
}

/// A validated configuration.
#[derive(Clone, Debug)]
pub struct Config {
    pub sigma: Translation<Rational>,
    pub base: Div,
    pub points: BTreeMap<String, Point>,
    pub schedule: SampleSchedule,
    pub max_degree: usize,
    pub orbit_cap: i64,
    pub format: Format,
}

impl Default for Config {
    fn default() -> Self {
        Self::from_toml_str("").expect("default configuration is valid")
    }
}

fn parse_name(name: &str) -> (&str, i64) {
    match name.rsplit_once('^') {
        Some((base, j)) => match j.trim().parse() {
            Ok(j) => (base.trim(), j),
            Err(_) => (name, 0),
        },
        None => (name.trim(), 0),
    }
}

fn multiple_of_t(name: &str) -> Option<i64> {
    let k = name.strip_suffix('t')?;
    match k {
        "" => Some(1),
        "-" => Some(-1),
        _ => k.parse().ok(),
    }
}

impl Config {
    pub fn from_toml_str(s: &str) -> Result<Config> {
        let raw: RawConfig = toml::from_str(s).map_err(|e| Error::Input(format!("config: {e}")))?;
        let a = raw.curve.a.iter().map(Scalar::value).collect::<Result<Vec<_>>>()?;
        let curve = Curve::new(a[0].clone(), a[1].clone(), a[2].clone(), a[3].clone(), a[4].clone())?;
        let t = match &raw.translation.t {
            PointRef::Coords([x, y]) => CurvePoint::affine(x.value()?, y.value()?),
            PointRef::Name(n) => return Err(Error::Input(format!("translation point must be given by coordinates, got {n:?}"))),
        };
        let sigma = Translation::new(curve, t)?;
        let mut cfg = Config {
            sigma,
            base: Divisor::zero(),
            points: BTreeMap::new(),
            schedule: SampleSchedule { generator: CurvePoint::Infinity, offset: CurvePoint::Infinity, margin: raw.engine.sample_margin },
            max_degree: raw.engine.max_degree,
            orbit_cap: raw.engine.orbit_cap,
            format: raw.engine.format,
        };
        for (name, point_ref) in &raw.points {
            if name == "t" || name == "O" || name == "infinity" || name.contains('^') || multiple_of_t(name).is_some() {
                return Err(Error::Input(format!("reserved point name {name:?}")));
            }
            let p = cfg.resolve(point_ref)?;
            cfg.points.insert(name.clone(), p);
        }
        // p and q default to small multiples of t, which are never torsion
        for (name, k) in [("p", 4), ("q", -2)] {
            if !cfg.points.contains_key(name) {
                let pt = cfg.sigma.multiple_of_t(k);
                cfg.points.insert(name.into(), pt);
            }
        }
        cfg.base = cfg.divisor_from_terms(&raw.sheaf.base)?;
        let default = SampleSchedule::for_translation(&cfg.sigma);
        cfg.schedule.generator = match &raw.engine.sample_generator {
            Some(s) => cfg.resolve(s)?,
            None => default.generator,
        };
        cfg.schedule.offset = match &raw.engine.sample_offset {
            Some(s) => cfg.resolve(s)?,
            None => default.offset,
        };
        // validates degree >= 1 and the sample points
        cfg.ring()?;
        Ok(cfg)
    }

    pub fn from_file(path: &std::path::Path) -> Result<Config> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn curve(&self) -> &Curve<Rational> {
        self.sigma.curve()
    }

    pub fn ring(&self) -> Result<TwistedRing> {
        TwistedRing::new(SheafData::new(self.base.clone(), self.sigma.clone())?, self.schedule.clone())
    }

    /// Dimension formulas of blowup and example runs assume `deg D_L = 3`.
    pub fn require_cubic_sheaf(&self) -> Result<()> {
        if self.base.degree() != 3 {
            return Err(Error::Input(format!("this command needs deg D_L = 3, configured base {} has degree {}", self.base, self.base.degree())));
        }
        Ok(())
    }

    pub fn point(&self, name: &str) -> Result<Point> {
        let (base, j) = parse_name(name);
        let p = if base == "infinity" || base == "O" {
            CurvePoint::Infinity
        } else if let Some(k) = multiple_of_t(base) {
            self.sigma.multiple_of_t(k)
        } else {
            self.points.get(base).cloned().ok_or_else(|| Error::Input(format!("unknown point {base:?}")))?
        };
        Ok(if j == 0 { p } else { self.sigma.twist_point(&p, j) })
    }

    pub fn resolve(&self, point_ref: &PointRef) -> Result<Point> {
        let p = match point_ref {
            PointRef::Coords([x, y]) => CurvePoint::affine(x.value()?, y.value()?),
            PointRef::Name(n) => self.point(n)?,
        };
        self.curve().check(&p)?;
        Ok(p)
    }

    pub fn divisor_from_terms(&self, terms: &[TermRef]) -> Result<Div> {
        let mut d = Divisor::zero();
        for t in terms {
            d.add_term(self.resolve(&t.point)?, t.coeff);
        }
        Ok(d)
    }

    /// Parse `[{"point": [x, y] | "infinity" | name, "coeff": k}, ...]`.
    pub fn parse_divisor(&self, json: &str) -> Result<Div> {
        let terms: Vec<TermRef> = serde_json::from_str(json).map_err(|e| Error::Input(format!("divisor: {e}")))?;
        self.divisor_from_terms(&terms)
    }
}

pub fn point_json(p: &Point) -> Value {
    match p {
        CurvePoint::Infinity => json!("infinity"),
        CurvePoint::Affine { x, y } => json!([format_rational(x), format_rational(y)]),
    }
}

pub fn divisor_json(d: &Div) -> Value {
    Value::Array(d.terms().map(|(p, c)| json!({ "point": point_json(p), "coeff": c })).collect())
}

/// Compact display wrapper used in report cells.
pub struct DivisorText<'a>(pub &'a Div);

impl fmt::Display for DivisorText<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", divisor_json(self.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_and_names() {
        let cfg = Config::default();
        assert_eq!(cfg.base.degree(), 3);
        assert_eq!(cfg.max_degree, 8);
        let p = cfg.point("p").unwrap();
        assert_eq!(p, CurvePoint::affine(Rational::from_integer(2.into()), Rational::from_integer((-3).into())));
        assert_eq!(cfg.point("p^1").unwrap(), cfg.point("3t").unwrap());
        assert_eq!(cfg.point("p^-1").unwrap(), cfg.point("5t").unwrap());
        assert_eq!(cfg.point("O").unwrap(), CurvePoint::Infinity);
        assert!(cfg.point("r").is_err());
    }

    #[test]
    fn divisor_round_trip() {
        let cfg = Config::default();
        let d = cfg.parse_divisor(r#"[{"point": "p", "coeff": 1}, {"point": ["1/4", "-5/8"], "coeff": -2}, {"point": "infinity", "coeff": 3}]"#).unwrap();
        assert_eq!(d.degree(), 2);
        let back = cfg.parse_divisor(&divisor_json(&d).to_string()).unwrap();
        assert_eq!(back, d);
        assert!(cfg.parse_divisor(r#"[{"point": ["1", "1"], "coeff": 1}]"#).is_err());
    }

    #[test]
    fn toml_validation() {
        let cfg = Config::from_toml_str("[points]\nr = [\"1/4\", \"-5/8\"]\n[engine]\nmax_degree = 5\nformat = \"csv\"\n").unwrap();
        assert_eq!(cfg.max_degree, 5);
        assert_eq!(cfg.format, Format::Csv);
        assert_eq!(cfg.point("r").unwrap(), cfg.point("5t").unwrap());
        // singular curve y^2 = x^3
        assert!(Config::from_toml_str("[curve]\na = [0, 0, 0, 0, 0]\n").is_err());
        // (1, 1) is not on the default curve
        assert!(Config::from_toml_str("[points]\nr = [1, 1]\n").is_err());
        // torsion translation: (0, 0) on y^2 = x^3 + x is 2-torsion
        assert!(Config::from_toml_str("[curve]\na = [0, 0, 0, 1, 0]\n").is_err());
        assert!(Config::from_toml_str("[engine]\nbogus = 1\n").is_err());
        let quartic = Config::from_toml_str("[sheaf]\nbase = [{ point = \"infinity\", coeff = 4 }]\n").unwrap();
        assert!(quartic.require_cubic_sheaf().is_err());
        assert!(Config::from_toml_str("[sheaf]\nbase = []\n").is_err());
    }
}

//! Problem files: variable names, expressions as strings, rationals as
//! strings or integers.

use std::path::Path;

use serde::Deserialize;
use vanish_core::{
    parse_rational, parse_with_names, Eq8Grouping, MethodChoice, MultiPoly, NoetherianChain, NoetherianField,
    OdeSystem, PolyVectorField, Rational, VectorFieldSystem,
};

/// Name of the time variable in non-autonomous systems.
pub const TIME: &str = "t";

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Problem {
    pub vars: Vec<String>,
    #[serde(default)]
    pub field: Option<Vec<String>>,
    #[serde(default)]
    pub system: Option<Vec<Vec<String>>>,
    #[serde(default)]
    pub rational_system: Option<RationalSystem>,
    #[serde(default)]
    pub poly: Option<String>,
    #[serde(default)]
    pub chain: Option<Chain>,
    #[serde(default)]
    pub basepoint: Option<Vec<Number>>,
    #[serde(default)]
    pub options: Options,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RationalSystem {
    #[serde(rename = "S")]
    pub s: Vec<String>,
    #[serde(rename = "Q")]
    pub q: Vec<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Chain {
    pub g: Vec<Vec<String>>,
    pub f0: Vec<Number>,
    pub fvars: Vec<String>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    pub cap: Option<usize>,
    pub method: Option<Method>,
    pub certify: Option<bool>,
    pub bound_variant: Option<BoundVariant>,
    pub max_order: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Series,
    Lie,
    Both,
}

impl From<Method> for MethodChoice {
    fn from(m: Method) -> Self {
        match m {
            Method::Series => MethodChoice::Series,
            Method::Lie => MethodChoice::Lie,
            Method::Both => MethodChoice::Both,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum BoundVariant {
    /// Parenthesis closed after the sum.
    Closed,
    /// Parenthesis closed right after the power of two.
    Literal,
}

impl From<BoundVariant> for Eq8Grouping {
    fn from(v: BoundVariant) -> Self {
        match v {
            BoundVariant::Closed => Eq8Grouping::ClosedAfterSum,
            BoundVariant::Literal => Eq8Grouping::Literal,
        }
    }
}

/// A rational given as `"a"`, `"a/b"` or a JSON integer.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Int(i64),
    Text(String),
}

impl Number {
    fn to_rational(&self, what: &str) -> Result<Rational, String> {
        match self {
            Number::Int(i) => Ok(Rational::from_integer((*i).into())),
            Number::Text(s) => parse_rational(s.trim()).ok_or_else(|| format!("{what}: not a rational: {s:?}")),
        }
    }
}

pub fn load(path: &Path) -> Result<Problem, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn polys(exprs: &[String], names: &[String], what: &str) -> Result<Vec<MultiPoly>, String> {
    exprs
        .iter()
        .enumerate()
        .map(|(i, e)| parse_with_names(e, names).map_err(|err| format!("{what}[{i}] {e:?}: {err}")))
        .collect()
}

fn one_poly(expr: &str, names: &[String], what: &str) -> Result<MultiPoly, String> {
    parse_with_names(expr, names).map_err(|err| format!("{what} {expr:?}: {err}"))
}

/// Chain, coefficient rows `Q_i` and basepoint.
pub type NoetherianSystemInput = (NoetherianChain, Vec<Vec<MultiPoly>>, Vec<Rational>);

impl Problem {
    fn require_poly(&self) -> Result<&str, String> {
        self.poly.as_deref().ok_or_else(|| "missing member `poly`".into())
    }

    fn check_names(&self, extra: &[String]) -> Result<Vec<String>, String> {
        let mut names = self.vars.clone();
        names.extend(extra.iter().cloned());
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(format!("variable {a:?} declared twice"));
            }
        }
        if self.vars.is_empty() {
            return Err("`vars` is empty".into());
        }
        Ok(names)
    }

    pub fn basepoint(&self) -> Result<Vec<Rational>, String> {
        match &self.basepoint {
            None => Ok(vec![Rational::from_integer(0.into()); self.vars.len()]),
            Some(b) => {
                if b.len() != self.vars.len() {
                    return Err(format!(
                        "basepoint has {} entries, expected {}",
                        b.len(),
                        self.vars.len()
                    ));
                }
                b.iter().map(|v| v.to_rational("basepoint")).collect()
            }
        }
    }

    /// `P` and the ODE system for the `mult` command.
    pub fn multiplicity_input(&self) -> Result<(MultiPoly, OdeSystem), String> {
        if self.chain.is_some() {
            return Err("`chain` given; use noetherian-mult".into());
        }
        let x0 = self.basepoint()?;
        match (&self.field, &self.rational_system) {
            (Some(f), None) => {
                let names = self.check_names(&[])?;
                let comps = polys(f, &names, "field")?;
                if comps.len() != self.vars.len() {
                    return Err(format!(
                        "field has {} components, expected {}",
                        comps.len(),
                        self.vars.len()
                    ));
                }
                let field = PolyVectorField::new(comps).map_err(|e| e.to_string())?;
                let p = one_poly(self.require_poly()?, &names, "poly")?;
                let sys = OdeSystem::autonomous(field, x0).map_err(|e| e.to_string())?;
                Ok((p, sys))
            }
            (None, Some(rs)) => {
                let names = self.check_names(&[TIME.to_string()])?;
                let s = polys(&rs.s, &names, "rational_system.S")?;
                let q = polys(&rs.q, &names, "rational_system.Q")?;
                let p = one_poly(self.require_poly()?, &names, "poly")?;
                let sys = OdeSystem::rational(s, q, x0).map_err(|e| e.to_string())?;
                Ok((p, sys))
            }
            (Some(_), Some(_)) => Err("give either `field` or `rational_system`, not both".into()),
            (None, None) => Err("missing member `field` or `rational_system`".into()),
        }
    }

    pub fn vector_field_system(&self) -> Result<VectorFieldSystem, String> {
        if self.chain.is_some() {
            return Err("`chain` given; use noetherian-nonholonomy".into());
        }
        let names = self.check_names(&[])?;
        let fields = self
            .system_rows()?
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let comps = polys(row, &names, &format!("system[{i}]"))?;
                if comps.len() != self.vars.len() {
                    return Err(format!(
                        "system[{i}] has {} components, expected {}",
                        comps.len(),
                        self.vars.len()
                    ));
                }
                PolyVectorField::new(comps).map_err(|e| e.to_string())
            })
            .collect::<Result<Vec<_>, _>>()?;
        VectorFieldSystem::new(fields).map_err(|e| e.to_string())
    }

    fn system_rows(&self) -> Result<&[Vec<String>], String> {
        self.system.as_deref().ok_or_else(|| "missing member `system`".into())
    }

    fn chain_and_names(&self) -> Result<(NoetherianChain, Vec<String>), String> {
        let chain = self.chain.as_ref().ok_or("missing member `chain`")?;
        let names = self.check_names(&chain.fvars)?;
        if chain.g.len() != chain.fvars.len() {
            return Err(format!(
                "chain.g has {} rows, expected {} (one per fvar)",
                chain.g.len(),
                chain.fvars.len()
            ));
        }
        let g = chain
            .g
            .iter()
            .enumerate()
            .map(|(i, row)| polys(row, &names, &format!("chain.g[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        let f0 = chain
            .f0
            .iter()
            .map(|v| v.to_rational("chain.f0"))
            .collect::<Result<Vec<_>, _>>()?;
        let nc = NoetherianChain::new(self.vars.len(), g, f0).map_err(|e| e.to_string())?;
        Ok((nc, names))
    }

    pub fn noetherian_multiplicity_input(&self) -> Result<(MultiPoly, NoetherianField, Vec<Rational>), String> {
        let (chain, names) = self.chain_and_names()?;
        let q = polys(self.field.as_deref().ok_or("missing member `field`")?, &names, "field")?;
        let nf = NoetherianField::new(chain, q).map_err(|e| e.to_string())?;
        let psi = one_poly(self.require_poly()?, &names, "poly")?;
        Ok((psi, nf, self.basepoint()?))
    }

    pub fn noetherian_system_input(&self) -> Result<NoetherianSystemInput, String> {
        let (chain, names) = self.chain_and_names()?;
        let qs = self
            .system_rows()?
            .iter()
            .enumerate()
            .map(|(i, row)| polys(row, &names, &format!("system[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        Ok((chain, qs, self.basepoint()?))
    }
}

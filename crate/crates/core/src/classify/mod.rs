//! Certification of matrix classes: P-matrices, weak sign symmetry, GKK,
//! eigenvalue monotonicity (ω and τ), positive stability and the Varga
//! wedge. Every failed check carries a witness that can be re-verified
//! independently with [`Witness::verify`].

mod minors;
mod spectral;
mod structured;
mod tau;
mod witness;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

pub use minors::{is_gkk, is_p_matrix, is_weakly_sign_symmetric};
pub use spectral::{is_omega, is_omega_sweep, is_positive_stable, is_tau, min_real_eig, varga_wedge_check, MinRealEig};
pub use structured::{gkk_structured, is_toeplitz_hessenberg, p_structured, StructuredOptions};
pub use tau::{find_tau_parameter, TauAttempt, TauSearch};
pub use witness::Witness;

use crate::error::{Error, Result};
use crate::exact::RatMatrix;

/// Matrix class tags as they appear in reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Property {
    #[serde(rename = "P")]
    P,
    #[serde(rename = "WSS")]
    Wss,
    #[serde(rename = "GKK")]
    Gkk,
    #[serde(rename = "OMEGA")]
    Omega,
    #[serde(rename = "TAU")]
    Tau,
    #[serde(rename = "POS_STABLE")]
    PosStable,
    #[serde(rename = "VARGA_WEDGE")]
    VargaWedge,
}

impl Property {
    pub const ALL: [Property; 7] = [
        Property::P,
        Property::Wss,
        Property::Gkk,
        Property::Omega,
        Property::Tau,
        Property::PosStable,
        Property::VargaWedge,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Property::P => "P",
            Property::Wss => "WSS",
            Property::Gkk => "GKK",
            Property::Omega => "OMEGA",
            Property::Tau => "TAU",
            Property::PosStable => "POS_STABLE",
            Property::VargaWedge => "VARGA_WEDGE",
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let upper = text.trim().to_ascii_uppercase().replace('-', "_");
        Property::ALL
            .into_iter()
            .find(|p| p.tag() == upper)
            .ok_or_else(|| Error::Parse(format!("unknown property {text:?}")))
    }
}

impl std::fmt::Display for Property {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

/// Largest order each brute-force sweep accepts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub p: usize,
    pub wss: usize,
    pub gkk: usize,
    pub omega: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            p: 14,
            wss: 12,
            gkk: 12,
            omega: 12,
        }
    }
}

impl Caps {
    pub fn uniform(n: usize) -> Self {
        Self {
            p: n,
            wss: n,
            gkk: n,
            omega: n,
        }
    }
}

pub(crate) fn check_cap(what: &'static str, n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::CapExceeded { what, n, cap });
    }
    Ok(())
}

/// Outcome of one class check.
#[derive(Clone, Debug)]
pub struct ClassReport {
    pub property: Property,
    pub holds: bool,
    pub witness: Option<Witness>,
    pub n: usize,
    /// Method details and, when known, the family parameters.
    pub params: Map<String, Value>,
}

impl ClassReport {
    pub(crate) fn new(property: Property, n: usize, witness: Option<Witness>) -> Self {
        Self {
            property,
            holds: witness.is_none(),
            witness,
            n,
            params: Map::new(),
        }
    }

    pub(crate) fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    /// Merge extra entries (e.g. family parameters) into `params`.
    pub fn with_params(mut self, extra: &Map<String, Value>) -> Self {
        for (k, v) in extra {
            self.params.insert(k.clone(), v.clone());
        }
        self
    }

    /// Independently recheck the witness against `a`; `true` when there is
    /// no witness to check.
    pub fn verify_witness(&self, a: &RatMatrix) -> Result<bool> {
        match &self.witness {
            None => Ok(true),
            Some(w) => w.verify(a),
        }
    }

    pub fn to_json_value(&self, digits: usize) -> Value {
        let mut obj = Map::new();
        obj.insert("property".into(), Value::from(self.property.tag()));
        obj.insert("holds".into(), Value::from(self.holds));
        obj.insert(
            "witness".into(),
            self.witness.as_ref().map_or(Value::Null, |w| w.to_json_value(digits)),
        );
        obj.insert("n".into(), Value::from(self.n));
        obj.insert("params".into(), Value::Object(self.params.clone()));
        Value::Object(obj)
    }
}

/// Run the requested checks in order.
pub fn classify(a: &RatMatrix, properties: &[Property], caps: &Caps, wedge_tol: f64) -> Result<Vec<ClassReport>> {
    properties
        .iter()
        .map(|&p| match p {
            Property::P => is_p_matrix(a, caps),
            Property::Wss => is_weakly_sign_symmetric(a, caps),
            Property::Gkk => is_gkk(a, caps),
            Property::Omega => is_omega(a, caps),
            Property::Tau => is_tau(a, caps),
            Property::PosStable => is_positive_stable(a),
            Property::VargaWedge => varga_wedge_check(a, wedge_tol),
        })
        .collect()
}

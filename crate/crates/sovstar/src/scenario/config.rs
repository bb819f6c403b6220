//! Scenario configuration: a defining function, base points with expected
//! classifications, truncation orders, a check list, and a seed. Rationals
//! are carried as "p/q" strings so exactness survives serialization.

use serde::{Deserialize, Serialize};

use crate::formal::{GaussianRational, MultiIndex};
use crate::levi::DefiningFunction;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonomialTerm {
    pub z_exponents: Vec<u32>,
    pub zbar_exponents: Vec<u32>,
    pub coeff_re: String,
    pub coeff_im: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RationalPair {
    pub re: String,
    pub im: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedFailure {
    pub check: String,
    pub error: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasePointConfig {
    pub coordinates: Vec<RationalPair>,
    pub expected_case: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub expected_failures: Vec<ExpectedFailure>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub dimension: usize,
    pub defining_function: Vec<MonomialTerm>,
    pub base_points: Vec<BasePointConfig>,
    pub jet_order: u32,
    pub nu_order: i64,
    pub checks: Vec<String>,
    pub seed: u64,
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<Self, String> {
        let config: ScenarioConfig =
            serde_json::from_str(text).map_err(|e| format!("config parse error: {e}"))?;
        config.validate()?;
        Ok(config)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Validates field consistency and the truncation budget J ≥ 2R + 2.
    pub fn validate(&self) -> Result<(), String> {
        if self.dimension == 0 {
            return Err("dimension must be at least 1".into());
        }
        if self.nu_order < 0 {
            return Err("nu_order must be non-negative".into());
        }
        if i64::from(self.jet_order) < 2 * self.nu_order + 2 {
            return Err(format!(
                "jet_order {} violates the truncation budget: need jet_order ≥ 2·nu_order + 2 = {}",
                self.jet_order,
                2 * self.nu_order + 2
            ));
        }
        self.psi()?;
        for (i, p) in self.base_points.iter().enumerate() {
            if p.coordinates.len() != self.dimension {
                return Err(format!("base point {i} has wrong dimension"));
            }
            for c in &p.coordinates {
                GaussianRational::parse(&c.re, &c.im)?;
            }
            match p.expected_case.as_str() {
                "case1" | "case2" | "critical" => {}
                other => return Err(format!("unknown expected_case {other:?}")),
            }
        }
        let known = super::checks::check_names();
        for c in &self.checks {
            if !known.contains(&c.as_str()) {
                return Err(format!("unknown check {c:?}"));
            }
        }
        Ok(())
    }

    pub fn psi(&self) -> Result<DefiningFunction, String> {
        let n = self.dimension;
        let mut terms = Vec::new();
        for t in &self.defining_function {
            if t.z_exponents.len() != n || t.zbar_exponents.len() != n {
                return Err("monomial exponent lists must have length n".into());
            }
            let mut v = t.z_exponents.clone();
            v.extend_from_slice(&t.zbar_exponents);
            terms.push((MultiIndex(v), GaussianRational::parse(&t.coeff_re, &t.coeff_im)?));
        }
        DefiningFunction::new(n, terms)
    }

    pub fn point(&self, i: usize) -> Vec<GaussianRational> {
        self.base_points[i]
            .coordinates
            .iter()
            .map(|c| GaussianRational::parse(&c.re, &c.im).expect("validated"))
            .collect()
    }

    /// Built-in unit-sphere scenario with one point on and one off the surface.
    pub fn sphere(n: usize, jet_order: u32, nu_order: i64, seed: u64) -> Self {
        let mut defining_function = vec![MonomialTerm {
            z_exponents: vec![0; n],
            zbar_exponents: vec![0; n],
            coeff_re: "-1".into(),
            coeff_im: "0".into(),
        }];
        for k in 0..n {
            let mut z = vec![0; n];
            let mut zb = vec![0; n];
            z[k] = 1;
            zb[k] = 1;
            defining_function.push(MonomialTerm {
                z_exponents: z,
                zbar_exponents: zb,
                coeff_re: "1".into(),
                coeff_im: "0".into(),
            });
        }
        let point = |first: &str, case: &str| BasePointConfig {
            coordinates: (0..n)
                .map(|k| RationalPair {
                    re: if k == 0 { first.into() } else { "0".into() },
                    im: "0".into(),
                })
                .collect(),
            expected_case: case.into(),
            expected_failures: Vec::new(),
        };
        ScenarioConfig {
            dimension: n,
            defining_function,
            base_points: vec![point("1", "case2"), point("2", "case1")],
            jet_order,
            nu_order,
            checks: super::checks::check_names().iter().map(|s| s.to_string()).collect(),
            seed,
        }
    }

    /// Built-in cylinder scenario: Levi-degenerate at (1,0,…), with the
    /// expected Γ-singularity declared so the scenario passes overall.
    pub fn cylinder(n: usize, jet_order: u32, nu_order: i64, seed: u64) -> Self {
        assert!(n >= 2, "the cylinder is degenerate only for n ≥ 2");
        let mut z = vec![0; n];
        let mut zb = vec![0; n];
        z[0] = 1;
        zb[0] = 1;
        let defining_function = vec![
            MonomialTerm {
                z_exponents: z,
                zbar_exponents: zb,
                coeff_re: "1".into(),
                coeff_im: "0".into(),
            },
            MonomialTerm {
                z_exponents: vec![0; n],
                zbar_exponents: vec![0; n],
                coeff_re: "-1".into(),
                coeff_im: "0".into(),
            },
        ];
        let degenerate_checks = [
            "gamma-inversion",
            "metric-extension",
            "ops-identities",
            "separation",
            "associativity",
            "c1-bracket",
            "delta-derivation",
            "d-extraction",
            "extended-star",
            "vanishing-on-S",
        ];
        ScenarioConfig {
            dimension: n,
            defining_function,
            base_points: vec![BasePointConfig {
                coordinates: (0..n)
                    .map(|k| RationalPair {
                        re: if k == 0 { "1".into() } else { "0".into() },
                        im: "0".into(),
                    })
                    .collect(),
                expected_case: "case2".into(),
                expected_failures: degenerate_checks
                    .iter()
                    .map(|c| ExpectedFailure {
                        check: c.to_string(),
                        error: "GammaSingular".into(),
                    })
                    .collect(),
            }],
            jet_order,
            nu_order,
            checks: super::checks::check_names().iter().map(|s| s.to_string()).collect(),
            seed,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_config_roundtrip() {
        let c = ScenarioConfig::sphere(2, 10, 3, 7);
        let json = c.to_json();
        let back = ScenarioConfig::from_json(&json).unwrap();
        assert_eq!(back.dimension, 2);
        assert_eq!(back.base_points.len(), 2);
    }

    #[test]
    fn unknown_fields_rejected() {
        let c = ScenarioConfig::sphere(1, 8, 2, 1);
        let mut v: serde_json::Value = serde_json::from_str(&c.to_json()).unwrap();
        v["surprise"] = serde_json::json!(1);
        assert!(ScenarioConfig::from_json(&v.to_string()).is_err());
    }

    #[test]
    fn budget_violation_rejected() {
        let mut c = ScenarioConfig::sphere(1, 8, 2, 1);
        c.jet_order = 5;
        assert!(c.validate().is_err());
    }

    #[test]
    fn non_real_defining_function_rejected() {
        let mut c = ScenarioConfig::sphere(1, 8, 2, 1);
        c.defining_function.push(MonomialTerm {
            z_exponents: vec![1],
            zbar_exponents: vec![0],
            coeff_re: "1".into(),
            coeff_im: "0".into(),
        });
        assert!(c.validate().is_err());
    }
}

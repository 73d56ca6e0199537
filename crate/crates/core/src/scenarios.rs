//! Fixed regression cases: two non-realizable groups, two realizable ones and
//! the non-split central extension.

use serde::{Deserialize, Serialize};

use crate::criterion::{check_realizability_with, cyclic_extension_splits, CheckOptions, GroupSpec, Verdict};
use crate::enriques::{build_k3n_setup, build_kumn_setup, EnriquesSetup};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scenario {
    NonrealDelta { n: i64 },
    NonrealTwist { n: i64 },
    CongruenceE8 { n: i64 },
    KumTranslation { n: i64, d: i64 },
    CentralExtension { k: i64, d: i64 },
}

pub const CASE_IDS: [&str; 5] = ["nonreal-delta", "nonreal-twist", "congruence-e8", "kum-translation", "central-extension"];

impl Scenario {
    /// Parses a case id; `None` fields take the defaults `n = 3`, `d = 2` (Kummer) or `d = 4`, `k = 2`.
    pub fn from_id(id: &str, n: Option<i64>, d: Option<i64>, k: Option<i64>) -> Result<Scenario> {
        let n = n.unwrap_or(3);
        Ok(match id {
            "nonreal-delta" => Scenario::NonrealDelta { n },
            "nonreal-twist" => Scenario::NonrealTwist { n },
            "congruence-e8" => Scenario::CongruenceE8 { n },
            "kum-translation" => Scenario::KumTranslation { n, d: d.unwrap_or(2) },
            "central-extension" => Scenario::CentralExtension { k: k.unwrap_or(2), d: d.unwrap_or(4) },
            other => return Err(Error::Input(format!("unknown case '{other}'; expected one of {}", CASE_IDS.join(", ")))),
        })
    }

    pub fn id(&self) -> &'static str {
        match self {
            Scenario::NonrealDelta { .. } => "nonreal-delta",
            Scenario::NonrealTwist { .. } => "nonreal-twist",
            Scenario::CongruenceE8 { .. } => "congruence-e8",
            Scenario::KumTranslation { .. } => "kum-translation",
            Scenario::CentralExtension { .. } => "central-extension",
        }
    }

    /// Expected realizability, or expected splitting for the extension case.
    pub fn expected(&self) -> bool {
        match self {
            Scenario::NonrealDelta { .. } | Scenario::NonrealTwist { .. } => false,
            Scenario::CongruenceE8 { .. } | Scenario::KumTranslation { .. } => true,
            Scenario::CentralExtension { k, d } => num_integer::gcd(*k, d / k) == 1,
        }
    }
}

/// `−1` on the `[−(n−1)]` summand of `Λ_Y`.
pub fn delta_negation_spec(setup: &EnriquesSetup) -> GroupSpec {
    let r = setup.lambda_y.rank();
    let mut h = IntMatrix::identity(r);
    h[(r - 1, r - 1)] = -1;
    GroupSpec::lambda_y(vec![h])
}

/// `id_U ⊕ −id_E8` on `M`.
pub fn e8_negation_spec() -> GroupSpec {
    GroupSpec::gamma2m(vec![IntMatrix::block_diag(&[&IntMatrix::identity(2), &IntMatrix::scalar(8, -1)])])
}

/// The pair `(x, 0)`, `(0, x)` for the first simple root `x` of E8.
pub fn twist_classes() -> (Vec<i64>, Vec<i64>) {
    let mut v1 = vec![0; 23];
    let mut v2 = vec![0; 23];
    v1[6] = 1;
    v2[14] = 1;
    (v1, v2)
}

/// The simultaneous reflection in the twist classes, as a group on `Λ_X`.
pub fn twist_spec(setup: &EnriquesSetup) -> Result<GroupSpec> {
    let (v1, v2) = twist_classes();
    let t = setup.simultaneous_reflection(&v1, &v2)?;
    Ok(GroupSpec::direct(vec![t.into_matrix()]))
}

/// A group acting trivially on `Λ_Y`; its lift is the deck group.
pub fn trivial_lambda_y_spec(setup: &EnriquesSetup) -> GroupSpec {
    GroupSpec::lambda_y(vec![IntMatrix::identity(setup.lambda_y.rank())])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    Verdict(Verdict),
    Extension { k: i64, d: i64, m: i64, splits: bool, text: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub case: String,
    pub expected: bool,
    pub as_expected: bool,
    pub outcome: Outcome,
}

pub fn run_scenario(s: Scenario, opts: &CheckOptions) -> Result<ScenarioReport> {
    let verdict = |setup: &EnriquesSetup, spec: &GroupSpec| check_realizability_with(setup, spec, opts);
    let outcome = match s {
        Scenario::NonrealDelta { n } => {
            let setup = build_k3n_setup(n)?;
            Outcome::Verdict(verdict(&setup, &delta_negation_spec(&setup))?)
        }
        Scenario::NonrealTwist { n } => {
            let setup = build_k3n_setup(n)?;
            Outcome::Verdict(verdict(&setup, &twist_spec(&setup)?)?)
        }
        Scenario::CongruenceE8 { n } => {
            let setup = build_k3n_setup(n)?;
            Outcome::Verdict(verdict(&setup, &e8_negation_spec())?)
        }
        Scenario::KumTranslation { n, d } => {
            let setup = build_kumn_setup(n, d)?;
            Outcome::Verdict(verdict(&setup, &trivial_lambda_y_spec(&setup))?)
        }
        Scenario::CentralExtension { k, d } => {
            let splits = cyclic_extension_splits(k, d)?;
            let text = if splits { "split" } else { "no section" };
            Outcome::Extension { k, d, m: d / k, splits, text: text.into() }
        }
    };
    let observed = match &outcome {
        Outcome::Verdict(v) => v.realizable,
        Outcome::Extension { splits, .. } => *splits,
    };
    let expected = s.expected();
    Ok(ScenarioReport { case: s.id().into(), expected, as_expected: observed == expected, outcome })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criterion::Certificate;

    fn verdict(s: Scenario) -> Verdict {
        match run_scenario(s, &CheckOptions::default()).unwrap().outcome {
            Outcome::Verdict(v) => v,
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn twist_witness_is_a_root() {
        let v = verdict(Scenario::NonrealTwist { n: 3 });
        assert!(!v.realizable);
        let w = v.witness.unwrap();
        assert_eq!((w.square, w.divisibility), (-2, 1));
        assert_eq!(v.details.lg_rank, 2);
    }

    #[test]
    fn all_cases_as_expected() {
        for id in CASE_IDS {
            let s = Scenario::from_id(id, None, None, None).unwrap();
            let r = run_scenario(s, &CheckOptions::default()).unwrap();
            assert!(r.as_expected, "{id}");
        }
    }

    #[test]
    fn congruence_certificate() {
        let v = verdict(Scenario::CongruenceE8 { n: 5 });
        let Certificate::Realized { lg_gram, note, .. } = v.certificate else { panic!() };
        assert_eq!(lg_gram.len(), 8);
        assert_eq!(note, "Kähler–Einstein");
    }
}

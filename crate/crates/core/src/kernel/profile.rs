use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// The eight named systems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SystemName {
    WeakGa,
    StrongGa,
    WeakPa,
    Pa,
    OmegaGa,
    OmegaPa,
    Omega1Pa,
    Omega2Pa,
}

impl SystemName {
    pub const ALL: [SystemName; 8] = [
        SystemName::WeakGa,
        SystemName::StrongGa,
        SystemName::WeakPa,
        SystemName::Pa,
        SystemName::OmegaGa,
        SystemName::OmegaPa,
        SystemName::Omega1Pa,
        SystemName::Omega2Pa,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SystemName::WeakGa => "weak-GA",
            SystemName::StrongGa => "strong-GA",
            SystemName::WeakPa => "weak-PA",
            SystemName::Pa => "PA",
            SystemName::OmegaGa => "omega-GA",
            SystemName::OmegaPa => "omega-PA",
            SystemName::Omega1Pa => "omega1-PA",
            SystemName::Omega2Pa => "omega2-PA",
        }
    }

    pub fn profile(self) -> SystemProfile {
        use Induction::*;
        use Rule::*;
        let (induction, rules): (&[Induction], &[Rule]) = match self {
            SystemName::WeakGa => (&[], &[Mp]),
            SystemName::StrongGa => (&[], &[Mp, Gen]),
            SystemName::WeakPa => (&[Closed], &[Mp]),
            SystemName::Pa => (&[Closed], &[Mp, Gen]),
            SystemName::OmegaGa => (&[], &[Mp, OmegaNum]),
            SystemName::OmegaPa => (&[Open], &[Mp, OmegaNum]),
            SystemName::Omega1Pa => (&[Closed, Open], &[Mp, OmegaNum]),
            SystemName::Omega2Pa => (&[Closed, Open], &[Mp, OmegaNum, OmegaSpec]),
        };
        SystemProfile {
            name: self,
            axioms: AxiomTag::ALL.into_iter().collect(),
            induction: induction.iter().copied().collect(),
            rules: rules.iter().copied().collect(),
        }
    }
}

impl fmt::Display for SystemName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown system {0:?} (expected one of weak-GA, strong-GA, weak-PA, PA, omega-GA, omega-PA, omega1-PA, omega2-PA)")]
pub struct UnknownSystem(pub String);

impl FromStr for SystemName {
    type Err = UnknownSystem;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SystemName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| UnknownSystem(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxiomTag {
    K1,
    K2,
    K3,
    K4,
    K5,
    A1,
    A2,
    A3,
    A4,
    A5,
    A6,
    A7,
    A8,
    A9,
}

impl AxiomTag {
    pub const ALL: [AxiomTag; 14] = [
        AxiomTag::K1,
        AxiomTag::K2,
        AxiomTag::K3,
        AxiomTag::K4,
        AxiomTag::K5,
        AxiomTag::A1,
        AxiomTag::A2,
        AxiomTag::A3,
        AxiomTag::A4,
        AxiomTag::A5,
        AxiomTag::A6,
        AxiomTag::A7,
        AxiomTag::A8,
        AxiomTag::A9,
    ];

    pub const ARITHMETIC: [AxiomTag; 9] = [
        AxiomTag::A1,
        AxiomTag::A2,
        AxiomTag::A3,
        AxiomTag::A4,
        AxiomTag::A5,
        AxiomTag::A6,
        AxiomTag::A7,
        AxiomTag::A8,
        AxiomTag::A9,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            AxiomTag::K1 => "K1",
            AxiomTag::K2 => "K2",
            AxiomTag::K3 => "K3",
            AxiomTag::K4 => "K4",
            AxiomTag::K5 => "K5",
            AxiomTag::A1 => "A1",
            AxiomTag::A2 => "A2",
            AxiomTag::A3 => "A3",
            AxiomTag::A4 => "A4",
            AxiomTag::A5 => "A5",
            AxiomTag::A6 => "A6",
            AxiomTag::A7 => "A7",
            AxiomTag::A8 => "A8",
            AxiomTag::A9 => "A9",
        }
    }
}

impl fmt::Display for AxiomTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AxiomTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AxiomTag::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| format!("unknown axiom tag {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Induction {
    Closed,
    Open,
}

impl Induction {
    pub fn as_str(self) -> &'static str {
        match self {
            Induction::Closed => "IND-CLOSED",
            Induction::Open => "IND-OPEN",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    Mp,
    Gen,
    OmegaNum,
    OmegaSpec,
}

impl Rule {
    pub fn as_str(self) -> &'static str {
        match self {
            Rule::Mp => "MP",
            Rule::Gen => "GEN",
            Rule::OmegaNum => "OMEGA-NUM",
            Rule::OmegaSpec => "OMEGA-SPEC",
        }
    }
}

/// An axiom set plus the induction rules and inference rules it admits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemProfile {
    pub name: SystemName,
    pub axioms: BTreeSet<AxiomTag>,
    pub induction: BTreeSet<Induction>,
    pub rules: BTreeSet<Rule>,
}

impl SystemProfile {
    /// Componentwise inclusion of axioms, induction rules and rules.
    pub fn is_sub_profile_of(&self, other: &SystemProfile) -> bool {
        self.axioms.is_subset(&other.axioms)
            && self.induction.is_subset(&other.induction)
            && self.rules.is_subset(&other.rules)
    }

    pub fn without_rule(&self, rule: Rule) -> SystemProfile {
        let mut p = self.clone();
        p.rules.remove(&rule);
        p
    }
}

pub fn system_profile(name: &str) -> Result<SystemProfile, UnknownSystem> {
    Ok(name.parse::<SystemName>()?.profile())
}

/// The inclusion chains of the system lattice.
pub const CHAINS: [&[SystemName]; 3] = [
    &[SystemName::WeakGa, SystemName::StrongGa, SystemName::Pa],
    &[SystemName::WeakGa, SystemName::WeakPa, SystemName::Pa],
    &[
        SystemName::WeakGa,
        SystemName::OmegaGa,
        SystemName::OmegaPa,
        SystemName::Omega1Pa,
        SystemName::Omega2Pa,
    ],
];

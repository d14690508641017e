//! Event schema: event types, the closed argument-role registry and spans.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::ExtractionError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EventType {
    #[serde(rename = "ADE")]
    Ade,
    #[serde(rename = "PTE")]
    Pte,
}

impl EventType {
    pub fn as_str(self) -> &'static str {
        match self {
            EventType::Ade => "ADE",
            EventType::Pte => "PTE",
        }
    }
}

impl fmt::Display for EventType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EventType {
    type Err = ExtractionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ADE" => Ok(EventType::Ade),
            "PTE" => Ok(EventType::Pte),
            other => Err(ExtractionError::UnknownEventType(other.to_string())),
        }
    }
}

/// Argument roles. Declaration order is the canonical registry order:
/// each main role is followed by its sub-roles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArgumentRole {
    Subject,
    SubjectAge,
    SubjectGender,
    SubjectRace,
    SubjectPopulation,
    SubjectDisorder,
    Treatment,
    TreatmentDrug,
    TreatmentDosage,
    TreatmentRoute,
    TreatmentFrequency,
    TreatmentDuration,
    TreatmentTimeElapsed,
    TreatmentDisorder,
    TreatmentCombination,
    Effect,
}

impl ArgumentRole {
    pub const ALL: [ArgumentRole; 16] = [
        ArgumentRole::Subject,
        ArgumentRole::SubjectAge,
        ArgumentRole::SubjectGender,
        ArgumentRole::SubjectRace,
        ArgumentRole::SubjectPopulation,
        ArgumentRole::SubjectDisorder,
        ArgumentRole::Treatment,
        ArgumentRole::TreatmentDrug,
        ArgumentRole::TreatmentDosage,
        ArgumentRole::TreatmentRoute,
        ArgumentRole::TreatmentFrequency,
        ArgumentRole::TreatmentDuration,
        ArgumentRole::TreatmentTimeElapsed,
        ArgumentRole::TreatmentDisorder,
        ArgumentRole::TreatmentCombination,
        ArgumentRole::Effect,
    ];

    /// Dotted role name, e.g. `treatment.drug`.
    pub fn name(self) -> &'static str {
        use ArgumentRole::*;
        match self {
            Subject => "subject",
            SubjectAge => "subject.age",
            SubjectGender => "subject.gender",
            SubjectRace => "subject.race",
            SubjectPopulation => "subject.population",
            SubjectDisorder => "subject.disorder",
            Treatment => "treatment",
            TreatmentDrug => "treatment.drug",
            TreatmentDosage => "treatment.dosage",
            TreatmentRoute => "treatment.route",
            TreatmentFrequency => "treatment.frequency",
            TreatmentDuration => "treatment.duration",
            TreatmentTimeElapsed => "treatment.time_elapsed",
            TreatmentDisorder => "treatment.disorder",
            TreatmentCombination => "treatment.combination",
            Effect => "effect",
        }
    }

    /// Linearization tag body: uppercased name with `.` replaced by `_`.
    pub fn tag(self) -> String {
        self.name().replace('.', "_").to_ascii_uppercase()
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|r| r.name() == name)
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|r| r.tag() == tag)
    }

    /// The main role a sub-role refines; `None` for main roles.
    pub fn parent(self) -> Option<ArgumentRole> {
        use ArgumentRole::*;
        match self {
            Subject | Treatment | Effect => None,
            SubjectAge | SubjectGender | SubjectRace | SubjectPopulation | SubjectDisorder => {
                Some(Subject)
            }
            _ => Some(Treatment),
        }
    }

    pub fn is_main(self) -> bool {
        self.parent().is_none()
    }
}

impl fmt::Display for ArgumentRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ArgumentRole {
    type Err = ExtractionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ArgumentRole::from_name(s).ok_or_else(|| ExtractionError::UnknownRole(s.to_string()))
    }
}

impl Serialize for ArgumentRole {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for ArgumentRole {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An extracted argument span. Offsets are character (not byte) offsets
/// into the source sentence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Span {
    pub text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub end: Option<usize>,
}

impl Span {
    pub fn new(text: impl Into<String>) -> Self {
        Span { text: text.into(), start: None, end: None }
    }

    pub fn with_offsets(text: impl Into<String>, start: usize, end: usize) -> Self {
        Span { text: text.into(), start: Some(start), end: Some(end) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PharmaEvent {
    pub event_type: EventType,
    pub args: BTreeMap<ArgumentRole, Vec<Span>>,
}

impl PharmaEvent {
    pub fn new(event_type: EventType) -> Self {
        PharmaEvent { event_type, args: BTreeMap::new() }
    }

    /// Appends a span under `role`.
    pub fn push(&mut self, role: ArgumentRole, span: Span) -> &mut Self {
        self.args.entry(role).or_default().push(span);
        self
    }

    pub fn with(mut self, role: ArgumentRole, text: &str) -> Self {
        self.push(role, Span::new(text));
        self
    }

    pub fn spans(&self, role: ArgumentRole) -> &[Span] {
        self.args.get(&role).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Checks the structural invariants: no empty span lists and every
    /// sub-role accompanied by its main role.
    pub fn validate(&self) -> Result<(), ExtractionError> {
        for (role, spans) in &self.args {
            if spans.is_empty() {
                return Err(ExtractionError::EmptyRole(*role));
            }
            if let Some(parent) = role.parent() {
                if !self.args.contains_key(&parent) {
                    return Err(ExtractionError::DanglingSubRole { role: *role, parent });
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn role_names_round_trip_through_tags() {
        for role in ArgumentRole::ALL {
            assert_eq!(ArgumentRole::from_name(role.name()), Some(role));
            assert_eq!(ArgumentRole::from_tag(&role.tag()), Some(role));
        }
        assert_eq!(ArgumentRole::TreatmentTimeElapsed.tag(), "TREATMENT_TIME_ELAPSED");
    }

    #[test]
    fn registry_order_puts_sub_roles_after_parent() {
        let mut sorted = ArgumentRole::ALL.to_vec();
        sorted.sort();
        assert_eq!(sorted, ArgumentRole::ALL.to_vec());
        for (i, role) in ArgumentRole::ALL.iter().enumerate() {
            if let Some(parent) = role.parent() {
                let p = ArgumentRole::ALL.iter().position(|r| *r == parent).unwrap();
                assert!(p < i);
                assert!(ArgumentRole::ALL[p..i].iter().all(|r| r.parent() == Some(parent) || *r == parent));
            }
        }
    }

    #[test]
    fn dangling_sub_role_is_invalid() {
        let e = PharmaEvent::new(EventType::Ade).with(ArgumentRole::SubjectAge, "6");
        assert!(matches!(e.validate(), Err(ExtractionError::DanglingSubRole { .. })));
        let ok = e.with(ArgumentRole::Subject, "a boy");
        assert!(ok.validate().is_ok());
    }
}

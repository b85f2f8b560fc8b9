//! JSON parent-map format:
//!
//! ```json
//! {"bound": 2, "choices": [{"x":0,"y":1,"parent":"D"}, {"x":1,"y":0,"parent":"L"}, ...]}
//! ```
//!
//! Entries are sorted by `(diagonal, x)`. Import checks every invariant of
//! [`RaySystem`] and names the offending point on failure.

use serde::{Deserialize, Serialize};

use super::{ParentChoice, RaySystem};
use crate::error::{Error, Result};
use crate::grid::GridPoint;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChoiceEntry {
    pub x: i64,
    pub y: i64,
    pub parent: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParentMapDocument {
    pub bound: u32,
    pub choices: Vec<ChoiceEntry>,
}

impl ParentMapDocument {
    pub fn from_system(sys: &RaySystem) -> Self {
        ParentMapDocument {
            bound: sys.bound(),
            choices: sys
                .entries()
                .map(|(p, c)| ChoiceEntry { x: p.x, y: p.y, parent: c.tag().to_string() })
                .collect(),
        }
    }

    pub fn to_system(&self) -> Result<RaySystem> {
        let mut entries = Vec::with_capacity(self.choices.len());
        let mut prev: Option<GridPoint> = None;
        for e in &self.choices {
            let p = GridPoint::new(e.x, e.y);
            let choice = match e.parent.as_str() {
                "D" => ParentChoice::Down,
                "L" => ParentChoice::Left,
                other => return Err(Error::Format(format!("point {p}: unknown parent tag {other:?}"))),
            };
            if let Some(q) = prev {
                if (q.diagonal(), q.x) >= (p.diagonal(), p.x) {
                    return Err(if q == p { Error::DuplicateChoice(p) } else { Error::UnsortedChoices(p) });
                }
            }
            prev = Some(p);
            entries.push((p, choice));
        }
        RaySystem::from_choices(self.bound, entries)
    }
}

impl RaySystem {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&ParentMapDocument::from_system(self)).expect("parent map serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&ParentMapDocument::from_system(self)).expect("parent map serializes")
    }

    pub fn from_json(text: &str) -> Result<RaySystem> {
        let doc: ParentMapDocument =
            serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        doc.to_system()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_document_shape() {
        let sys = RaySystem::from_interior_fn(2, |_| ParentChoice::Left);
        let v: serde_json::Value = serde_json::from_str(&sys.to_json()).unwrap();
        assert_eq!(
            v,
            serde_json::json!({
                "bound": 2,
                "choices": [
                    {"x": 0, "y": 1, "parent": "D"},
                    {"x": 1, "y": 0, "parent": "L"},
                    {"x": 0, "y": 2, "parent": "D"},
                    {"x": 1, "y": 1, "parent": "L"},
                    {"x": 2, "y": 0, "parent": "L"}
                ]
            })
        );
    }

    #[test]
    fn malformed_documents_name_the_point() {
        let bad_tag = r#"{"bound":1,"choices":[{"x":0,"y":1,"parent":"D"},{"x":1,"y":0,"parent":"Q"}]}"#;
        let err = RaySystem::from_json(bad_tag).unwrap_err();
        assert!(err.to_string().contains("(1,0)"), "{err}");

        let axis = r#"{"bound":1,"choices":[{"x":0,"y":1,"parent":"L"},{"x":1,"y":0,"parent":"L"}]}"#;
        let err = RaySystem::from_json(axis).unwrap_err();
        assert!(matches!(err, Error::AxisViolation { .. }));
        assert!(err.to_string().contains("(0,1)"));

        let unsorted = r#"{"bound":1,"choices":[{"x":1,"y":0,"parent":"L"},{"x":0,"y":1,"parent":"D"}]}"#;
        assert_eq!(RaySystem::from_json(unsorted), Err(Error::UnsortedChoices(GridPoint::new(0, 1))));

        let missing = r#"{"bound":1,"choices":[{"x":0,"y":1,"parent":"D"}]}"#;
        assert_eq!(RaySystem::from_json(missing), Err(Error::MissingChoice(GridPoint::new(1, 0))));

        assert!(matches!(RaySystem::from_json("{"), Err(Error::Format(_))));
    }

    proptest! {
        #[test]
        fn json_round_trip(bound in 1u32..12, seed in any::<u64>()) {
            let sys = RaySystem::from_interior_fn(bound, |p| {
                let h = (p.x as u64).wrapping_mul(0x9E37_79B9).wrapping_add(p.y as u64) ^ seed;
                if h.count_ones().is_multiple_of(2) { ParentChoice::Down } else { ParentChoice::Left }
            });
            prop_assert_eq!(RaySystem::from_json(&sys.to_json()).unwrap(), sys);
        }
    }
}

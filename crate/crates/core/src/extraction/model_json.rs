//! JSON event schema exchanged with model endpoints:
//!
//! ```json
//! [{"event_type": "ADE", "arguments": {"treatment.drug": ["aspirin"], "effect": ["rash"]}}]
//! ```

use serde_json::{Map, Value};

use super::schema::{ArgumentRole, EventType, PharmaEvent, Span};
use super::ExtractionError;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ModelParse {
    pub events: Vec<PharmaEvent>,
    pub warnings: Vec<String>,
}

fn schema_err(path: String, message: impl Into<String>) -> ExtractionError {
    ExtractionError::Schema { path, message: message.into() }
}

/// Parses model output. Unknown roles are dropped with a warning; a sub-role
/// emitted without its main role gets the main role added with the same
/// spans (the sub-argument lies inside the main argument) and a warning.
pub fn parse_model_json(body: &str) -> Result<ModelParse, ExtractionError> {
    let value: Value = serde_json::from_str(body).map_err(|e| schema_err("$".into(), e.to_string()))?;
    parse_value(&value, false)
}

/// Strict variant for gold/evaluation files: unknown roles are errors and
/// events are kept exactly as written.
pub fn parse_model_json_strict(body: &str) -> Result<Vec<PharmaEvent>, ExtractionError> {
    let value: Value = serde_json::from_str(body).map_err(|e| schema_err("$".into(), e.to_string()))?;
    parse_value(&value, true).map(|p| p.events)
}

pub fn parse_value(value: &Value, strict: bool) -> Result<ModelParse, ExtractionError> {
    let mut out = ModelParse::default();
    let items = match value {
        Value::Null => return Ok(out),
        Value::Array(items) => items,
        _ => return Err(schema_err("$".into(), "expected an array of events")),
    };
    for (i, item) in items.iter().enumerate() {
        let path = format!("$[{i}]");
        match parse_event(item, &path, strict, &mut out.warnings) {
            Ok(event) => out.events.push(event),
            // Lenient mode skips malformed event objects; a truncated
            // trailing object repairs to exactly such an object.
            Err(e @ ExtractionError::Schema { .. }) if !strict => {
                out.warnings.push(format!("event skipped: {e}"));
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

fn parse_event(
    item: &Value,
    path: &str,
    strict: bool,
    warnings: &mut Vec<String>,
) -> Result<PharmaEvent, ExtractionError> {
    let obj = item.as_object().ok_or_else(|| schema_err(path.to_string(), "expected an object"))?;
    let event_type = match obj.get("event_type") {
        Some(Value::String(s)) => s
            .parse::<EventType>()
            .map_err(|_| schema_err(format!("{path}.event_type"), format!("unknown event type `{s}`")))?,
        _ => return Err(schema_err(format!("{path}.event_type"), "expected \"ADE\" or \"PTE\"")),
    };
    let mut event = PharmaEvent::new(event_type);
    let args = match obj.get("arguments") {
        Some(Value::Object(args)) => args,
        Some(Value::Null) | None => &Map::new(),
        Some(_) => return Err(schema_err(format!("{path}.arguments"), "expected an object")),
    };
    for (name, spans) in args {
        let arg_path = format!("{path}.arguments.{name}");
        let Some(role) = ArgumentRole::from_name(name) else {
            if strict {
                return Err(ExtractionError::UnknownRole(name.clone()));
            }
            warnings.push(format!("{arg_path}: unknown role `{name}` dropped"));
            continue;
        };
        let texts: Vec<&str> = match spans {
            Value::String(s) => vec![s.as_str()],
            Value::Array(list) => list
                .iter()
                .enumerate()
                .map(|(j, v)| {
                    v.as_str().ok_or_else(|| schema_err(format!("{arg_path}[{j}]"), "expected a string"))
                })
                .collect::<Result<_, _>>()?,
            Value::Null => Vec::new(),
            _ => return Err(schema_err(arg_path, "expected an array of strings")),
        };
        for text in texts.into_iter().map(str::trim).filter(|t| !t.is_empty()) {
            event.push(role, Span::new(text));
        }
    }
    if !strict {
        promote_dangling(&mut event, path, warnings);
    }
    Ok(event)
}

fn promote_dangling(event: &mut PharmaEvent, path: &str, warnings: &mut Vec<String>) {
    let dangling: Vec<(ArgumentRole, ArgumentRole)> = event
        .args
        .keys()
        .filter_map(|r| r.parent().filter(|p| !event.args.contains_key(p)).map(|p| (*r, p)))
        .collect();
    for (role, parent) in dangling {
        warnings.push(format!("{path}: `{role}` without `{parent}`; main role filled from sub-role"));
        let spans: Vec<Span> = event.spans(role).iter().map(|s| Span::new(s.text.clone())).collect();
        let entry = event.args.entry(parent).or_default();
        for span in spans {
            if !entry.iter().any(|s| s.text == span.text) {
                entry.push(span);
            }
        }
    }
}

/// Serializes events into the model JSON schema.
pub fn events_to_json(events: &[PharmaEvent]) -> Value {
    Value::Array(
        events
            .iter()
            .map(|e| {
                let args: Map<String, Value> = e
                    .args
                    .iter()
                    .map(|(role, spans)| {
                        (role.name().to_string(), spans.iter().map(|s| Value::from(s.text.clone())).collect())
                    })
                    .collect();
                serde_json::json!({ "event_type": e.event_type.as_str(), "arguments": args })
            })
            .collect(),
    )
}

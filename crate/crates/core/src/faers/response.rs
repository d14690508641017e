use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::FaersError;

/// One bucket of a count response: a term (or a `time` bucket for date
/// series) and its report count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountEntry {
    pub key: String,
    pub count: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaersCountResult {
    pub entries: Vec<CountEntry>,
    pub total: Option<u64>,
    pub disclaimer: Option<String>,
}

fn schema(msg: impl Into<String>) -> FaersError {
    FaersError::Schema(msg.into())
}

/// Parses `{"meta": ..., "results": [{"term"|"time": ..., "count": n}]}`.
pub fn parse_count_response(body: &str) -> Result<FaersCountResult, FaersError> {
    let v: Value = serde_json::from_str(body).map_err(|e| schema(e.to_string()))?;
    let results = v
        .get("results")
        .ok_or_else(|| schema("missing `results`"))?
        .as_array()
        .ok_or_else(|| schema("`results` is not an array"))?;
    let entries = results
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let key = match r.get("term").or_else(|| r.get("time")) {
                Some(Value::String(s)) => s.clone(),
                Some(Value::Number(n)) => n.to_string(),
                _ => return Err(schema(format!("results[{i}] has no `term` or `time`"))),
            };
            let count = r
                .get("count")
                .and_then(Value::as_u64)
                .filter(|&c| c > 0)
                .ok_or_else(|| schema(format!("results[{i}].count is not a positive integer")))?;
            Ok(CountEntry { key, count })
        })
        .collect::<Result<_, _>>()?;
    let meta = v.get("meta");
    Ok(FaersCountResult {
        entries,
        total: meta.and_then(|m| m.pointer("/results/total")).and_then(Value::as_u64),
        disclaimer: meta.and_then(|m| m.get("disclaimer")).and_then(Value::as_str).map(str::to_string),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn terms_and_time_buckets() {
        let r = parse_count_response(
            r#"{"meta":{"disclaimer":"Do not rely","results":{"total":3},"extra":1},
                "results":[{"term":"NAUSEA","count":2},{"time":"20040101","count":1},{"term":1,"count":4}]}"#,
        )
        .unwrap();
        assert_eq!(r.entries.iter().map(|e| e.key.as_str()).collect::<Vec<_>>(), vec!["NAUSEA", "20040101", "1"]);
        assert_eq!(r.total, Some(3));
        assert_eq!(r.disclaimer.as_deref(), Some("Do not rely"));
    }

    #[test]
    fn empty_and_malformed() {
        assert!(parse_count_response(r#"{"results":[]}"#).unwrap().entries.is_empty());
        assert!(parse_count_response(r#"{"meta":{}}"#).is_err());
        assert!(parse_count_response(r#"{"results":[{"term":"x","count":0}]}"#).is_err());
        assert!(parse_count_response("<html>").is_err());
    }
}

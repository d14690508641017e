use std::time::Duration;

pub const TTL_ENV: &str = "DRUGWATCH_SESSION_TTL_SECS";
pub const MAX_LINES_ENV: &str = "DRUGWATCH_MAX_UPLOAD_LINES";
pub const MAX_BYTES_ENV: &str = "DRUGWATCH_MAX_UPLOAD_BYTES";
pub const BULK_WAIT_ENV: &str = "DRUGWATCH_BULK_WAIT_MS";

#[derive(Debug, Clone, PartialEq)]
pub struct ServiceConfig {
    pub session_ttl: Duration,
    /// Uploads with more non-blank lines are refused with 413.
    pub max_upload_lines: usize,
    pub max_upload_bytes: usize,
    /// How long a bulk GET waits for annotation to finish before answering
    /// with a pending progress report.
    pub bulk_wait: Duration,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        ServiceConfig {
            session_ttl: Duration::from_secs(30 * 60),
            max_upload_lines: 1000,
            max_upload_bytes: 1 << 20,
            bulk_wait: Duration::from_secs(2),
        }
    }
}

impl ServiceConfig {
    /// Defaults overridden by the `DRUGWATCH_*` environment variables.
    pub fn from_env() -> Result<Self, String> {
        Self::from_lookup(|k| std::env::var(k).ok())
    }

    pub fn from_lookup(get: impl Fn(&str) -> Option<String>) -> Result<Self, String> {
        let num = |key: &str| -> Result<Option<u64>, String> {
            get(key)
                .filter(|v| !v.trim().is_empty())
                .map(|v| v.trim().parse::<u64>().map_err(|e| format!("{key}={v:?}: {e}")))
                .transpose()
        };
        let mut c = ServiceConfig::default();
        if let Some(v) = num(TTL_ENV)? {
            c.session_ttl = Duration::from_secs(v);
        }
        if let Some(v) = num(MAX_LINES_ENV)? {
            c.max_upload_lines = v as usize;
        }
        if let Some(v) = num(MAX_BYTES_ENV)? {
            c.max_upload_bytes = v as usize;
        }
        if let Some(v) = num(BULK_WAIT_ENV)? {
            c.bulk_wait = Duration::from_millis(v);
        }
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn env_overrides() {
        let c = ServiceConfig::from_lookup(|k| (k == TTL_ENV).then(|| "60".to_string())).unwrap();
        assert_eq!(c.session_ttl, Duration::from_secs(60));
        assert_eq!(c.max_upload_lines, 1000);
        assert!(ServiceConfig::from_lookup(|_| Some("x".into())).is_err());
    }
}

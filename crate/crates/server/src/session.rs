//! In-memory annotation sessions. Nothing here is ever written to disk.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, MutexGuard};
use std::time::{Duration, Instant};

use drugwatch_core::{Extractor, PharmaEvent};
use tokio::sync::watch;

use crate::data::PreloadedDataset;

pub const PRELOADED_ID: &str = "preloaded";

/// Events for one sentence, or the extraction error message.
pub type RowOutcome = Result<Vec<PharmaEvent>, String>;

/// Annotation of every sentence of a session by one model, filled in the
/// background. `progress` carries the number of finished rows.
pub struct Job {
    rows: Mutex<Vec<Option<RowOutcome>>>,
    progress: watch::Sender<usize>,
}

impl Job {
    fn complete(rows: Vec<RowOutcome>) -> Arc<Job> {
        let n = rows.len();
        Arc::new(Job { rows: Mutex::new(rows.into_iter().map(Some).collect()), progress: watch::Sender::new(n) })
    }

    fn start(sentences: Arc<Vec<String>>, extractor: Arc<dyn Extractor>) -> Arc<Job> {
        let job = Arc::new(Job { rows: Mutex::new(vec![None; sentences.len()]), progress: watch::Sender::new(0) });
        let worker = job.clone();
        tokio::task::spawn_blocking(move || {
            for (i, sentence) in sentences.iter().enumerate() {
                let outcome = extractor.extract(sentence).map(|x| x.events).map_err(|e| e.to_string());
                lock(&worker.rows)[i] = Some(outcome);
                worker.progress.send_replace(i + 1);
            }
        });
        job
    }

    pub fn total(&self) -> usize {
        lock(&self.rows).len()
    }

    pub fn done(&self) -> usize {
        *self.progress.borrow()
    }

    pub fn is_complete(&self) -> bool {
        self.done() == self.total()
    }

    /// Waits up to `budget` for the job to finish; true when complete.
    pub async fn wait(&self, budget: Duration) -> bool {
        let total = self.total();
        let mut rx = self.progress.subscribe();
        tokio::time::timeout(budget, rx.wait_for(|d| *d >= total)).await.is_ok_and(|r| r.is_ok())
    }

    /// All rows; only meaningful once complete.
    pub fn rows(&self) -> Vec<RowOutcome> {
        lock(&self.rows).iter().map(|r| r.clone().unwrap_or_else(|| Err("pending".into()))).collect()
    }
}

pub struct Session {
    pub id: String,
    pub created: Instant,
    pub sentences: Arc<Vec<String>>,
    /// Stored annotations, by model name.
    stored: BTreeMap<String, Arc<Job>>,
    jobs: Mutex<HashMap<String, Arc<Job>>>,
}

impl Session {
    fn new(id: String, sentences: Vec<String>) -> Self {
        Session {
            id,
            created: Instant::now(),
            sentences: Arc::new(sentences),
            stored: BTreeMap::new(),
            jobs: Mutex::new(HashMap::new()),
        }
    }

    pub fn stored_models(&self) -> Vec<String> {
        self.stored.keys().cloned().collect()
    }

    /// The stored annotations for `model`, or the (possibly still running)
    /// job of a runnable extractor, started on first request.
    pub fn job(&self, model: &str, extractor: Option<&Arc<dyn Extractor>>) -> Option<Arc<Job>> {
        if let Some(job) = self.stored.get(model) {
            return Some(job.clone());
        }
        let extractor = extractor?;
        let mut jobs = lock(&self.jobs);
        Some(jobs.entry(model.to_string()).or_insert_with(|| Job::start(self.sentences.clone(), extractor.clone())).clone())
    }
}

pub struct SessionStore {
    ttl: Duration,
    sessions: Mutex<HashMap<String, Arc<Session>>>,
    preloaded: Option<Arc<Session>>,
}

impl SessionStore {
    pub fn new(ttl: Duration, preloaded: Option<PreloadedDataset>) -> Self {
        let preloaded = preloaded.map(|data| {
            let mut s = Session::new(PRELOADED_ID.to_string(), data.sentences);
            s.stored = data
                .annotations
                .into_iter()
                .map(|(model, events)| (model, Job::complete(events.into_iter().map(Ok).collect())))
                .collect();
            Arc::new(s)
        });
        SessionStore { ttl, sessions: Mutex::new(HashMap::new()), preloaded }
    }

    pub fn ttl(&self) -> Duration {
        self.ttl
    }

    /// Creates a session with a fresh 128-bit random id.
    pub fn create(&self, sentences: Vec<String>) -> Arc<Session> {
        let mut sessions = lock(&self.sessions);
        let ttl = self.ttl;
        sessions.retain(|_, s| s.created.elapsed() < ttl);
        let id = loop {
            let id = format!("{:032x}", rand::random::<u128>());
            if !sessions.contains_key(&id) {
                break id;
            }
        };
        let session = Arc::new(Session::new(id.clone(), sentences));
        sessions.insert(id, session.clone());
        session
    }

    /// Live session by id; expired sessions are dropped and unreachable.
    pub fn get(&self, id: &str) -> Option<Arc<Session>> {
        if id == PRELOADED_ID {
            return self.preloaded.clone();
        }
        let mut sessions = lock(&self.sessions);
        match sessions.get(id) {
            Some(s) if s.created.elapsed() < self.ttl => Some(s.clone()),
            Some(_) => {
                sessions.remove(id);
                None
            }
            None => None,
        }
    }

    pub fn len(&self) -> usize {
        lock(&self.sessions).len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn lock<T>(m: &Mutex<T>) -> MutexGuard<'_, T> {
    m.lock().unwrap_or_else(|e| e.into_inner())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_128_bit_hex_and_distinct() {
        let store = SessionStore::new(Duration::from_secs(60), None);
        let a = store.create(vec!["x".into()]);
        let b = store.create(vec!["y".into()]);
        assert_eq!(a.id.len(), 32);
        assert!(a.id.chars().all(|c| c.is_ascii_hexdigit()));
        assert_ne!(a.id, b.id);
        assert!(store.get(&a.id).is_some());
        assert!(store.get("0123").is_none());
    }

    #[test]
    fn expired_sessions_unreachable() {
        let store = SessionStore::new(Duration::from_millis(20), None);
        let s = store.create(vec!["x".into()]);
        std::thread::sleep(Duration::from_millis(40));
        assert!(store.get(&s.id).is_none());
        assert!(store.is_empty());
    }

    #[test]
    fn preloaded_never_expires() {
        let mut data = PreloadedDataset::default();
        data.sentences.push("s".into());
        data.annotations.insert("gold".into(), vec![Vec::new()]);
        let store = SessionStore::new(Duration::ZERO, Some(data));
        let s = store.get(PRELOADED_ID).unwrap();
        assert_eq!(s.stored_models(), vec!["gold"]);
        assert!(s.job("gold", None).unwrap().is_complete());
        assert!(s.job("other", None).is_none());
    }
}

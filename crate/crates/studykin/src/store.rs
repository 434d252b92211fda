//! File-backed scene store. One JSON file per scene, written atomically.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use uuid::Uuid;

use studykin_core::design::SceneFile;

/// Stored scene with its id and unix-millisecond timestamps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scene {
    pub id: String,
    pub created: u64,
    pub modified: u64,
    pub scene: SceneFile,
}

#[derive(Debug, thiserror::Error)]
pub enum StoreError {
    #[error("scene {0} not found")]
    NotFound(String),
    #[error("invalid scene id {0:?}")]
    BadId(String),
    #[error("scene store I/O error: {0}")]
    Io(#[from] io::Error),
    #[error("corrupt scene file {0}: {1}")]
    Corrupt(PathBuf, serde_json::Error),
}

pub const DATA_ENV: &str = "STUDYKIN_DATA";

#[derive(Debug, Clone)]
pub struct Store {
    dir: PathBuf,
}

fn now_ms() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_millis() as u64)
        .unwrap_or(0)
}

fn check_id(id: &str) -> Result<(), StoreError> {
    Uuid::parse_str(id)
        .map(|_| ())
        .map_err(|_| StoreError::BadId(id.to_string()))
}

impl Store {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self, StoreError> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Store { dir })
    }

    /// Opens `$STUDYKIN_DATA`, or `./studykin-data` when unset.
    pub fn from_env() -> Result<Self, StoreError> {
        let dir = std::env::var_os(DATA_ENV)
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from("studykin-data"));
        Self::open(dir)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, id: &str) -> PathBuf {
        self.dir.join(format!("{id}.json"))
    }

    fn write(&self, scene: &Scene) -> Result<(), StoreError> {
        let tmp = self.dir.join(format!(".{}.tmp", scene.id));
        let body = serde_json::to_vec_pretty(scene).expect("scenes always serialize");
        fs::write(&tmp, body)?;
        fs::rename(&tmp, self.path(&scene.id))?;
        Ok(())
    }

    pub fn create(&self, scene: SceneFile) -> Result<Scene, StoreError> {
        let t = now_ms();
        let s = Scene {
            id: Uuid::new_v4().to_string(),
            created: t,
            modified: t,
            scene,
        };
        self.write(&s)?;
        Ok(s)
    }

    pub fn load(&self, id: &str) -> Result<Scene, StoreError> {
        check_id(id)?;
        let path = self.path(id);
        let bytes = match fs::read(&path) {
            Ok(b) => b,
            Err(e) if e.kind() == io::ErrorKind::NotFound => {
                return Err(StoreError::NotFound(id.to_string()))
            }
            Err(e) => return Err(e.into()),
        };
        serde_json::from_slice(&bytes).map_err(|e| StoreError::Corrupt(path, e))
    }

    pub fn update(&self, id: &str, scene: SceneFile) -> Result<Scene, StoreError> {
        let mut s = self.load(id)?;
        s.scene = scene;
        s.modified = now_ms().max(s.created);
        self.write(&s)?;
        Ok(s)
    }

    /// All scenes, oldest first.
    pub fn list(&self) -> Result<Vec<Scene>, StoreError> {
        let mut out = Vec::new();
        for entry in fs::read_dir(&self.dir)? {
            let path = entry?.path();
            let Some(stem) = path.file_stem().and_then(|s| s.to_str()) else {
                continue;
            };
            if path.extension().and_then(|e| e.to_str()) != Some("json") || check_id(stem).is_err()
            {
                continue;
            }
            out.push(self.load(stem)?);
        }
        out.sort_by(|a, b| a.created.cmp(&b.created).then_with(|| a.id.cmp(&b.id)));
        Ok(out)
    }
}

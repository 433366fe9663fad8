use std::fs;
use std::io::Write;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use super::walker::{Frontier, PBasisWalker};
use crate::error::{Error, Result};

/// A saved walk: the frontier of a [`PBasisWalker`] plus whatever the caller
/// has accumulated so far.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint<S> {
    pub p: u32,
    pub prefix: Vec<u32>,
    pub cursors: Vec<u32>,
    pub visited: u64,
    pub partial_stats: S,
}

impl<S> Checkpoint<S> {
    pub fn capture(walker: &PBasisWalker, partial_stats: S) -> Self {
        let Frontier { prefix, cursors } = walker.frontier();
        Checkpoint {
            p: walker.p(),
            prefix,
            cursors,
            visited: walker.visited(),
            partial_stats,
        }
    }

    pub fn is_complete(&self) -> bool {
        self.prefix.is_empty()
    }

    /// Rebuild the walker. Its visited count carries on from the saved one.
    pub fn walker(&self, p: u32) -> Result<PBasisWalker> {
        if p != self.p {
            return Err(Error::Checkpoint(format!(
                "checkpoint is for p = {}, not p = {p}",
                self.p
            )));
        }
        let frontier = Frontier {
            prefix: self.prefix.clone(),
            cursors: self.cursors.clone(),
        };
        let mut walker = PBasisWalker::resume(p, &frontier)?;
        walker.charge(self.visited)?;
        Ok(walker)
    }
}

impl<S: Serialize> Checkpoint<S> {
    /// Write to a sibling temporary file, then rename over `path`.
    pub fn save(&self, path: &Path) -> Result<()> {
        let mut tmp = path.as_os_str().to_owned();
        tmp.push(".tmp");
        let tmp = Path::new(&tmp);
        {
            let mut f = fs::File::create(tmp)?;
            serde_json::to_writer(&mut f, self)?;
            f.write_all(b"\n")?;
            f.sync_all()?;
        }
        fs::rename(tmp, path)?;
        Ok(())
    }
}

impl<S: DeserializeOwned> Checkpoint<S> {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        serde_json::from_str(&text)
            .map_err(|e| Error::Checkpoint(format!("{}: {e}", path.display())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn save_load_resume() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("walk.json");
        let mut w = PBasisWalker::new(8).unwrap();
        let mut first = vec![];
        for _ in 0..5 {
            first.push(w.next_basis().unwrap().unwrap().0.to_vec());
        }
        Checkpoint::capture(&w, first.len()).save(&path).unwrap();
        let cp: Checkpoint<usize> = Checkpoint::load(&path).unwrap();
        assert_eq!(cp.partial_stats, 5);
        assert!(!dir.path().join("walk.json.tmp").exists());

        let value: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        for key in ["p", "prefix", "cursors", "visited", "partial_stats"] {
            assert!(value.get(key).is_some(), "{key}");
        }

        let mut resumed = cp.walker(8).unwrap();
        assert_eq!(resumed.visited(), w.visited());
        let mut n = first.len();
        while resumed.next_basis().unwrap().is_some() {
            n += 1;
        }
        assert_eq!(n, 16);
        assert!(matches!(cp.walker(9), Err(Error::Checkpoint(_))));
    }
}

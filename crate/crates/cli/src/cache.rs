//! On-disk psi and Hodge tables, guarded by an advisory lock.

use std::fs::{self, File, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use elsvlab::elsv::HodgeTable;
use elsvlab::psi::PsiEngine;

use crate::CliError;

pub const PSI_FILE: &str = "psi.txt";
pub const HODGE_FILE: &str = "hodge.txt";
const LOCK_FILE: &str = ".lock";

/// An open cache directory. The lock is held until the value is dropped.
pub struct Cache {
    dir: PathBuf,
    _lock: File,
    psi_text: String,
    hodge_text: String,
}

impl Cache {
    pub fn open(dir: &Path) -> Result<Self, CliError> {
        fs::create_dir_all(dir).map_err(|e| io_error(dir, e))?;
        let lock_path = dir.join(LOCK_FILE);
        let lock = OpenOptions::new()
            .create(true)
            .truncate(false)
            .write(true)
            .open(&lock_path)
            .map_err(|e| io_error(&lock_path, e))?;
        lock.lock().map_err(|e| io_error(&lock_path, e))?;
        let read = |name: &str| -> Result<String, CliError> {
            let path = dir.join(name);
            match fs::read_to_string(&path) {
                Ok(s) => Ok(s),
                Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(String::new()),
                Err(e) => Err(io_error(&path, e)),
            }
        };
        let psi_text = read(PSI_FILE)?;
        let hodge_text = read(HODGE_FILE)?;
        Ok(Cache { dir: dir.to_path_buf(), _lock: lock, psi_text, hodge_text })
    }

    pub fn load_psi(&self, engine: &PsiEngine) -> Result<(), CliError> {
        engine
            .load_cache_text(&self.psi_text)
            .map(|_| ())
            .map_err(|e| CliError::BadData(format!("{}: {e}", self.dir.join(PSI_FILE).display())))
    }

    pub fn load_hodge(&self) -> Result<HodgeTable, CliError> {
        HodgeTable::from_text(&self.hodge_text)
            .map_err(|e| CliError::BadData(format!("{}: {e}", self.dir.join(HODGE_FILE).display())))
    }

    /// Writes both tables back, skipping files whose text is unchanged.
    pub fn store(&mut self, psi: &PsiEngine, hodge: &HodgeTable) -> Result<(), CliError> {
        let psi_text = psi.to_cache_text();
        if psi_text != self.psi_text {
            write_atomic(&self.dir.join(PSI_FILE), &psi_text)?;
            self.psi_text = psi_text;
        }
        let hodge_text = hodge.to_text();
        if hodge_text != self.hodge_text {
            write_atomic(&self.dir.join(HODGE_FILE), &hodge_text)?;
            self.hodge_text = hodge_text;
        }
        Ok(())
    }
}

/// Write to a sibling temporary file, sync, then rename over the target.
pub fn write_atomic(path: &Path, text: &str) -> Result<(), CliError> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(format!(".tmp{}", std::process::id()));
    let tmp = PathBuf::from(tmp);
    let result = (|| {
        let mut f = File::create(&tmp)?;
        f.write_all(text.as_bytes())?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if let Err(e) = result {
        let _ = fs::remove_file(&tmp);
        return Err(io_error(path, e));
    }
    Ok(())
}

fn io_error(path: &Path, e: io::Error) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use elsvlab::elsv::HodgeMonomial;
    use elsvlab::elsv::Provenance;
    use elsvlab::exactalg::rational::rat;

    #[test]
    fn round_trip_through_disk() {
        let dir = tempfile::tempdir().unwrap();
        let psi = PsiEngine::new();
        psi.tau(2, &[4]);
        let mut hodge = HodgeTable::new();
        hodge.insert(HodgeMonomial::new(1, vec![0], 1), rat(1, 24), Provenance::Calibrated);
        {
            let mut c = Cache::open(dir.path()).unwrap();
            c.store(&psi, &hodge).unwrap();
        }
        let c = Cache::open(dir.path()).unwrap();
        let fresh = PsiEngine::new();
        c.load_psi(&fresh).unwrap();
        assert_eq!(fresh.to_cache_text(), psi.to_cache_text());
        assert_eq!(c.load_hodge().unwrap().to_text(), hodge.to_text());
        let names: Vec<_> = fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
        assert!(names.iter().all(|n| !n.to_string_lossy().contains(".tmp")));
    }

    #[test]
    fn lock_is_exclusive() {
        let dir = tempfile::tempdir().unwrap();
        let held = Cache::open(dir.path()).unwrap();
        let other = File::options().write(true).open(dir.path().join(LOCK_FILE)).unwrap();
        assert!(matches!(other.try_lock(), Err(fs::TryLockError::WouldBlock)));
        drop(held);
        other.try_lock().unwrap();
    }

    #[test]
    fn corrupt_table_is_bad_data() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join(HODGE_FILE), "1;0;1;not-a-number\n").unwrap();
        let c = Cache::open(dir.path()).unwrap();
        assert!(matches!(c.load_hodge(), Err(CliError::BadData(_))));
    }
}

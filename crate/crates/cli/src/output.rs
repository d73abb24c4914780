//! Output directories are filled in a hidden sibling and renamed into place
//! once every file is written, so a crashed or failed command never leaves a
//! half-written result behind.

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use tempfile::TempDir;

use crate::failure::{Context, Failure};

pub const OUT_ENV: &str = "RUMORSIM_OUT";

/// `explicit` if given, else `name` under `$RUMORSIM_OUT`, else under `./rumorsim-out`.
pub fn resolve_out(explicit: Option<&Path>, name: &str) -> PathBuf {
    if let Some(p) = explicit {
        return p.to_path_buf();
    }
    let base = std::env::var_os(OUT_ENV)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("rumorsim-out"));
    base.join(name)
}

pub struct Staging {
    dir: TempDir,
    target: PathBuf,
    force: bool,
}

impl Staging {
    pub fn new(target: &Path, force: bool) -> Result<Self, Failure> {
        if target.exists() && !force {
            let empty = target.is_dir() && fs::read_dir(target).map(|mut d| d.next().is_none()).unwrap_or(false);
            if !empty {
                return Err(Failure::config(format!(
                    "{} already exists; pass --force to replace it",
                    target.display()
                )));
            }
        }
        let parent = match target.parent() {
            Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
            _ => PathBuf::from("."),
        };
        fs::create_dir_all(&parent).runtime(format!("cannot create {}", parent.display()))?;
        let dir = tempfile::Builder::new()
            .prefix(".rumorsim-")
            .tempdir_in(&parent)
            .runtime(format!("cannot stage output in {}", parent.display()))?;
        Ok(Staging {
            dir,
            target: target.to_path_buf(),
            force,
        })
    }

    /// Writes `rel` inside the staged directory.
    pub fn write(&self, rel: impl AsRef<Path>, f: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> Result<(), Failure> {
        let rel = rel.as_ref();
        let path = self.dir.path().join(rel);
        if let Some(p) = path.parent() {
            fs::create_dir_all(p).runtime(format!("cannot create {}", rel.display()))?;
        }
        let file = File::create(&path).runtime(format!("cannot create {}", rel.display()))?;
        let mut w = BufWriter::new(file);
        f(&mut w)
            .and_then(|_| w.flush())
            .runtime(format!("cannot write {}", rel.display()))
    }

    pub fn write_str(&self, rel: impl AsRef<Path>, text: &str) -> Result<(), Failure> {
        self.write(rel, |w| w.write_all(text.as_bytes()))
    }

    /// Moves the staged directory to its target.
    pub fn commit(self) -> Result<PathBuf, Failure> {
        let Staging { dir, target, force } = self;
        #[cfg(unix)]
        {
            use std::os::unix::fs::PermissionsExt;
            fs::set_permissions(dir.path(), fs::Permissions::from_mode(0o755))
                .runtime(format!("cannot finalize {}", target.display()))?;
        }
        let staged = dir.keep();
        let mut old = None;
        if target.exists() {
            if target.is_dir() && (force || fs::read_dir(&target).map(|mut d| d.next().is_none()).unwrap_or(false)) {
                let aside = staged.with_extension("old");
                fs::rename(&target, &aside).runtime(format!("cannot replace {}", target.display()))?;
                old = Some(aside);
            } else {
                let _ = fs::remove_dir_all(&staged);
                return Err(Failure::config(format!("{} exists and is not a directory", target.display())));
            }
        }
        if let Err(e) = fs::rename(&staged, &target) {
            if let Some(aside) = &old {
                let _ = fs::rename(aside, &target);
            }
            let _ = fs::remove_dir_all(&staged);
            return Err(e).runtime(format!("cannot move output to {}", target.display()));
        }
        if let Some(aside) = old {
            let _ = fs::remove_dir_all(aside);
        }
        Ok(target)
    }
}

/// Writes a single file atomically through a temporary sibling.
pub fn write_file_atomic(path: &Path, text: &str) -> Result<(), Failure> {
    let parent = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    fs::create_dir_all(&parent).runtime(format!("cannot create {}", parent.display()))?;
    let mut tmp = tempfile::NamedTempFile::new_in(&parent).runtime(format!("cannot write {}", path.display()))?;
    tmp.write_all(text.as_bytes()).runtime(format!("cannot write {}", path.display()))?;
    #[cfg(unix)]
    {
        use std::os::unix::fs::PermissionsExt;
        fs::set_permissions(tmp.path(), fs::Permissions::from_mode(0o644))
            .runtime(format!("cannot write {}", path.display()))?;
    }
    tmp.persist(path)
        .map_err(|e| e.error)
        .runtime(format!("cannot write {}", path.display()))?;
    Ok(())
}

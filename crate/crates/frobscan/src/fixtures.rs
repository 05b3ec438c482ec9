//! Built-in data files, addressable as `builtin:NAME` wherever a path is
//! accepted. A fixture directory, when given, shadows the built-in copy of
//! any file it contains.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

pub const BUILTIN: &[(&str, &str)] = &[
    ("x1.var", include_str!("../fixtures/x1.var")),
    ("c17.var", include_str!("../fixtures/c17.var")),
    ("c457.var", include_str!("../fixtures/c457.var")),
    ("genus2_c1.var", include_str!("../fixtures/genus2_c1.var")),
    ("genus2_c2.var", include_str!("../fixtures/genus2_c2.var")),
    ("cm_curve.var", include_str!("../fixtures/cm_curve.var")),
    ("nonex.srf", include_str!("../fixtures/nonex.srf")),
    (
        "reference_values.txt",
        include_str!("../fixtures/reference_values.txt"),
    ),
];

pub fn builtin(name: &str) -> Option<&'static str> {
    BUILTIN
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| *text)
}

#[derive(Debug, Clone, Default)]
pub struct Fixtures {
    dir: Option<PathBuf>,
}

impl Fixtures {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Fixtures { dir }
    }

    /// The override in the fixture directory if present, else the built-in.
    pub fn get(&self, name: &str) -> io::Result<String> {
        if let Some(dir) = &self.dir {
            let path = dir.join(name);
            if path.exists() {
                return fs::read_to_string(path);
            }
        }
        builtin(name).map(String::from).ok_or_else(|| {
            io::Error::new(
                io::ErrorKind::NotFound,
                format!("no fixture named `{name}`"),
            )
        })
    }
}

/// Reads a path, or a fixture when the argument is `builtin:NAME`.
pub fn read_input(arg: &Path, fixtures: &Fixtures) -> io::Result<String> {
    match arg.to_str().and_then(|s| s.strip_prefix("builtin:")) {
        Some(name) => fixtures.get(name),
        None => fs::read_to_string(arg),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::files::{parse_surface, parse_variety};

    #[test]
    fn every_builtin_parses() {
        for (name, text) in BUILTIN {
            if name.ends_with(".var") {
                parse_variety(text).unwrap_or_else(|e| panic!("{name}: {e}"));
            } else if name.ends_with(".srf") {
                parse_surface(text).unwrap_or_else(|e| panic!("{name}: {e}"));
            }
        }
    }

    #[test]
    fn directory_shadows_builtin() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("c17.var"), "vars: x\neq: x\n").unwrap();
        let fx = Fixtures::new(Some(dir.path().to_path_buf()));
        assert_eq!(fx.get("c17.var").unwrap(), "vars: x\neq: x\n");
        assert_eq!(fx.get("c457.var").unwrap(), builtin("c457.var").unwrap());
        assert!(fx.get("missing").is_err());
        assert!(read_input(Path::new("builtin:x1.var"), &fx)
            .unwrap()
            .contains("vars: x y w u v"));
    }
}

//! The bundled corpus. When `IFFKIT_CORPUS` names a directory, files are read
//! from there instead of the copies compiled into the binary.

use std::path::PathBuf;

use crate::formats::{read_file, FormatError};

pub const ENV: &str = "IFFKIT_CORPUS";

const FILES: &[(&str, &str)] = &[
    ("T0.thy", include_str!("../corpus/T0.thy")),
    ("T1.thy", include_str!("../corpus/T1.thy")),
    ("T2.thy", include_str!("../corpus/T2.thy")),
    ("chain.ctx", include_str!("../corpus/chain.ctx")),
    ("diamond.ctx", include_str!("../corpus/diamond.ctx")),
    ("iff.vocab", include_str!("../corpus/iff.vocab")),
    ("levels.lvl", include_str!("../corpus/levels.lvl")),
    ("monoid.lang", include_str!("../corpus/monoid.lang")),
    ("pushout.dgm", include_str!("../corpus/pushout.dgm")),
    ("span.align", include_str!("../corpus/span.align")),
    ("table2.iff", include_str!("../corpus/table2.iff")),
    ("table5.iff", include_str!("../corpus/table5.iff")),
    ("table7.iff", include_str!("../corpus/table7.iff")),
    ("tables1.iff", include_str!("../corpus/tables1.iff")),
    ("two.thy", include_str!("../corpus/two.thy")),
    ("ur.vocab", include_str!("../corpus/ur.vocab")),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    FILES.iter().map(|(n, _)| *n)
}

/// The override directory, if set.
pub fn dir() -> Option<PathBuf> {
    std::env::var_os(ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}

pub fn bundled(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// The text of corpus file `name`.
pub fn text(name: &str) -> Result<String, FormatError> {
    if let Some(d) = dir() {
        return read_file(&d.join(name));
    }
    bundled(name).map(str::to_string).ok_or_else(|| FormatError::Io {
        path: name.to_string(),
        source: std::io::Error::new(std::io::ErrorKind::NotFound, "no such file or corpus entry"),
    })
}

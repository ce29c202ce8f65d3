//! Standard triangulations with known invariants.

use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::complex::{build_complex, validate_closed_manifold, SimplicialComplex};
use crate::error::{Error, Result};
use crate::io::parse_complex;

#[derive(Clone, Copy, Debug)]
pub enum ZooSource {
    Builtin(fn() -> Vec<Vec<usize>>),
    File { file: &'static str, sha256: &'static str },
}

/// Invariants every entry is checked against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZooExpected {
    pub f_vector: Vec<usize>,
    pub orientable: bool,
    pub betti_integers: Vec<usize>,
    pub torsion_integers: Vec<Vec<u64>>,
    pub betti_mod2: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct ZooEntry {
    pub name: &'static str,
    pub source: ZooSource,
    pub expected: ZooExpected,
}

pub const NAMES: [&str; 7] =
    ["sphere2", "sphere3", "torus7", "projective_plane6", "klein_bottle8", "genus2_surface", "projective_space11"];

fn simplex_boundary(n: usize) -> Vec<Vec<usize>> {
    (0..=n + 1).map(|skip| (0..=n + 1).filter(|&v| v != skip).collect()).collect()
}

fn sphere2() -> Vec<Vec<usize>> {
    simplex_boundary(2)
}

fn sphere3() -> Vec<Vec<usize>> {
    simplex_boundary(3)
}

fn torus7() -> Vec<Vec<usize>> {
    (0..7).flat_map(|i| [vec![i, (i + 1) % 7, (i + 3) % 7], vec![i, (i + 2) % 7, (i + 3) % 7]]).collect()
}

fn projective_plane6() -> Vec<Vec<usize>> {
    [
        [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1],
        [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3],
    ]
    .iter()
    .map(|t| t.to_vec())
    .collect()
}

fn klein_bottle8() -> Vec<Vec<usize>> {
    [
        [0, 1, 4], [0, 1, 7], [0, 2, 3], [0, 2, 6], [0, 3, 4], [0, 5, 6], [0, 5, 7], [1, 2, 5],
        [1, 2, 7], [1, 4, 5], [2, 3, 5], [2, 6, 7], [3, 4, 7], [3, 5, 6], [3, 6, 7], [4, 5, 7],
    ]
    .iter()
    .map(|t| t.to_vec())
    .collect()
}

fn expected(f: &[usize], orientable: bool, betti: &[usize], torsion: &[&[u64]], mod2: &[usize]) -> ZooExpected {
    ZooExpected {
        f_vector: f.to_vec(),
        orientable,
        betti_integers: betti.to_vec(),
        torsion_integers: torsion.iter().map(|t| t.to_vec()).collect(),
        betti_mod2: mod2.to_vec(),
    }
}

pub fn entries() -> Vec<ZooEntry> {
    vec![
        ZooEntry {
            name: "sphere2",
            source: ZooSource::Builtin(sphere2),
            expected: expected(&[4, 6, 4], true, &[1, 0, 1], &[&[], &[], &[]], &[1, 0, 1]),
        },
        ZooEntry {
            name: "sphere3",
            source: ZooSource::Builtin(sphere3),
            expected: expected(&[5, 10, 10, 5], true, &[1, 0, 0, 1], &[&[], &[], &[], &[]], &[1, 0, 0, 1]),
        },
        ZooEntry {
            name: "torus7",
            source: ZooSource::Builtin(torus7),
            expected: expected(&[7, 21, 14], true, &[1, 2, 1], &[&[], &[], &[]], &[1, 2, 1]),
        },
        ZooEntry {
            name: "projective_plane6",
            source: ZooSource::Builtin(projective_plane6),
            expected: expected(&[6, 15, 10], false, &[1, 0, 0], &[&[], &[2], &[]], &[1, 1, 1]),
        },
        ZooEntry {
            name: "klein_bottle8",
            source: ZooSource::Builtin(klein_bottle8),
            expected: expected(&[8, 24, 16], false, &[1, 1, 0], &[&[], &[2], &[]], &[1, 2, 1]),
        },
        ZooEntry {
            name: "genus2_surface",
            source: ZooSource::File {
                file: "genus2_surface.txt",
                sha256: "2f76c340600cf52933227585b1f649d4886023e99fcabb71392a121ad564aee9",
            },
            expected: expected(&[11, 39, 26], true, &[1, 4, 1], &[&[], &[], &[]], &[1, 4, 1]),
        },
        ZooEntry {
            name: "projective_space11",
            source: ZooSource::File {
                file: "projective_space11.txt",
                sha256: "2b5057ab8536c590a694f6f2ebb126bdee0b184ca66e26159ad57801641d4ca9",
            },
            expected: expected(&[11, 51, 80, 40], true, &[1, 0, 0, 1], &[&[], &[2], &[], &[]], &[1, 1, 1, 1]),
        },
    ]
}

pub fn entry(name: &str) -> Result<ZooEntry> {
    entries().into_iter().find(|e| e.name == name).ok_or_else(|| Error::UnknownName(name.to_string()))
}

/// Directory holding the file-backed entries shipped with the crate.
pub fn default_data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data")
}

pub fn get_complex(name: &str) -> Result<SimplicialComplex> {
    get_complex_from(name, &default_data_dir())
}

/// Loads an entry, verifying checksums of file-backed ones and validating
/// the result as a closed connected pseudomanifold with the expected
/// orientability.
pub fn get_complex_from(name: &str, data_dir: &Path) -> Result<SimplicialComplex> {
    let e = entry(name)?;
    let tops = match e.source {
        ZooSource::Builtin(f) => f(),
        ZooSource::File { file, sha256 } => {
            let path = data_dir.join(file);
            let bytes = std::fs::read(&path).map_err(|_| Error::FileMissing(path.display().to_string()))?;
            let found = hex::encode(Sha256::digest(&bytes));
            if found != sha256 {
                return Err(Error::ChecksumMismatch { name: name.to_string(), expected: sha256.to_string(), found });
            }
            let text = String::from_utf8(bytes).map_err(|_| Error::Parse { line: 0, message: "not UTF-8".into() })?;
            parse_complex(&text)?
        }
    };
    let k = build_complex(&tops)?;
    let cert = validate_closed_manifold(&k);
    if !cert.is_closed_and_connected() || cert.orientable != e.expected.orientable {
        return Err(Error::Invariant(format!("zoo entry {name} failed validation")));
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_entries_load_with_expected_f_vectors() {
        for e in entries() {
            let k = get_complex(e.name).unwrap();
            assert_eq!(k.f_vector(), e.expected.f_vector, "{}", e.name);
        }
        assert_eq!(entries().iter().map(|e| e.name).collect::<Vec<_>>(), NAMES.to_vec());
    }

    #[test]
    fn unknown_and_missing() {
        assert!(matches!(get_complex("torus3"), Err(Error::UnknownName(_))));
        let dir = std::env::temp_dir().join("poincare-zoo-missing");
        assert!(matches!(get_complex_from("genus2_surface", &dir), Err(Error::FileMissing(_))));
    }
}

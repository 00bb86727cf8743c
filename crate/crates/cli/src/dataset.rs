//! Dataset resolution: local edge-list files, SNAP short names with a
//! cached downloader, and deterministic synthetic stand-ins.

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use sha2::{Digest, Sha256};

use pagsim_core::graph::Graph;
use pagsim_core::synth;

/// Environment variable overriding the dataset cache directory.
pub const DATA_DIR_ENV: &str = "PAGSIM_DATA_DIR";

/// SNAP short names (dataset table: web, recommendation, social,
/// network domains).
pub const SHORT_NAMES: &[(&str, &str, &str)] = &[
    ("wg", "web-Google.txt", "https://snap.stanford.edu/data/web-Google.txt.gz"),
    ("az", "amazon0302.txt", "https://snap.stanford.edu/data/amazon0302.txt.gz"),
    ("sd", "soc-Slashdot0902.txt", "https://snap.stanford.edu/data/soc-Slashdot0902.txt.gz"),
    ("ep", "soc-Epinions1.txt", "https://snap.stanford.edu/data/soc-Epinions1.txt.gz"),
    ("pg", "p2p-Gnutella31.txt", "https://snap.stanford.edu/data/p2p-Gnutella31.txt.gz"),
    ("wv", "wiki-Vote.txt", "https://snap.stanford.edu/data/wiki-Vote.txt.gz"),
];

pub fn data_dir() -> PathBuf {
    std::env::var_os(DATA_DIR_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("data"))
}

fn lookup_short_name(name: &str) -> Option<(&'static str, &'static str)> {
    let lower = name.to_ascii_lowercase();
    SHORT_NAMES
        .iter()
        .find(|(short, file, _)| {
            *short == lower || file.to_ascii_lowercase().trim_end_matches(".txt") == lower
        })
        .map(|&(_, file, url)| (file, url))
}

/// Resolves a `--dataset` argument: an existing file path, a SNAP short
/// name looked up in the cache directory, or `surrogate-wv` for the
/// built-in Wiki-Vote-scale synthetic graph.
pub fn load(spec: &str, directed: bool) -> Result<Graph> {
    if spec == "surrogate-wv" {
        return Ok(synth::wiki_vote_surrogate());
    }
    let path = Path::new(spec);
    if path.exists() {
        return load_file(path, directed);
    }
    if let Some((file, _)) = lookup_short_name(spec) {
        let cached = data_dir().join(file);
        if cached.exists() {
            return load_file(&cached, directed);
        }
        bail!(
            "dataset '{spec}' not found in {} — run `pagsim fetch-dataset {spec}` first",
            data_dir().display()
        );
    }
    bail!("dataset '{spec}' is neither a file nor a known short name");
}

pub fn load_file(path: &Path, directed: bool) -> Result<Graph> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    Ok(Graph::parse_edge_list(&text, directed)?)
}

/// Downloads a SNAP dataset by short name into the cache directory,
/// decompresses it, and records a SHA-256 checksum used to verify the
/// cached copy on later runs.
pub fn fetch(name: &str, dir: &Path) -> Result<PathBuf> {
    let (file, url) = lookup_short_name(name)
        .with_context(|| format!("unknown dataset short name '{name}'"))?;
    fs::create_dir_all(dir)?;
    let target = dir.join(file);
    let checksum_file = dir.join(format!("{file}.sha256"));
    if target.exists() {
        verify_checksum(&target, &checksum_file)?;
        return Ok(target);
    }
    let response = reqwest::blocking::get(url)
        .with_context(|| format!("downloading {url}"))?
        .error_for_status()?;
    let compressed = response.bytes()?;
    let mut decoder = flate2::read::GzDecoder::new(compressed.as_ref());
    let mut text = String::new();
    decoder.read_to_string(&mut text)?;
    fs::write(&target, &text)?;
    fs::write(&checksum_file, sha256_hex(text.as_bytes()))?;
    Ok(target)
}

fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn verify_checksum(target: &Path, checksum_file: &Path) -> Result<()> {
    if !checksum_file.exists() {
        return Ok(()); // user-provided file, nothing recorded
    }
    let expected = fs::read_to_string(checksum_file)?;
    let actual = sha256_hex(&fs::read(target)?);
    if expected.trim() != actual {
        bail!(
            "checksum mismatch for {} — delete it and re-fetch",
            target.display()
        );
    }
    Ok(())
}

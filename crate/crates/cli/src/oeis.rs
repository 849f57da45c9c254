//! OEIS b-files: parsing, the on-disk cache, online fetch, bundled
//! fixtures, and comparison against computed counts.
//!
//! A b-file is plain text, one `n value` pair per line, `#` lines are
//! comments. Indices in a b-file are absolute, so they are compared as they
//! stand. The comma-separated data list on a sequence page carries no
//! indices; its first term sits at the sequence offset, which is 1 for
//! A000669 (hierarchies with one leaf come first) and 0 for the other two.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use num_bigint::BigInt;
use tree_asymptotics::{CountSequence, Variety};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OeisFixture {
    pub id: String,
    pub pairs: Vec<(usize, BigInt)>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: expected 'n value', got '{text}'")]
    Malformed { line: usize, text: String },
    #[error("line {line}: index {index} does not increase")]
    NotIncreasing { line: usize, index: usize },
    #[error("term {position}: '{text}' is not an integer")]
    BadTerm { position: usize, text: String },
}

#[derive(Debug, thiserror::Error)]
pub enum FetchError {
    #[error("network: {0}")]
    Network(String),
    #[error("http status {0}")]
    Status(u16),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// OEIS offset: index of the first listed term.
pub fn offset(id: &str) -> usize {
    match id {
        "A000669" => 1,
        _ => 0,
    }
}

pub fn parse_bfile(id: &str, text: &str) -> Result<OeisFixture, ParseError> {
    let mut pairs: Vec<(usize, BigInt)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let malformed = || ParseError::Malformed { line: i + 1, text: line.to_string() };
        let mut fields = line.split_whitespace();
        let (Some(n), Some(v), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(malformed());
        };
        let n: usize = n.parse().map_err(|_| malformed())?;
        let v: BigInt = v.parse().map_err(|_| malformed())?;
        if pairs.last().is_some_and(|(prev, _)| *prev >= n) {
            return Err(ParseError::NotIncreasing { line: i + 1, index: n });
        }
        pairs.push((n, v));
    }
    Ok(OeisFixture { id: id.to_string(), pairs })
}

/// A sequence page's data list, e.g. `1, 1, 2, 5, 12`, indexed from `offset`.
pub fn parse_data_list(id: &str, text: &str, offset: usize) -> Result<OeisFixture, ParseError> {
    let pairs = text
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .enumerate()
        .map(|(k, t)| {
            t.parse::<BigInt>()
                .map(|v| (offset + k, v))
                .map_err(|_| ParseError::BadTerm { position: k, text: t.to_string() })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(OeisFixture { id: id.to_string(), pairs })
}

pub fn bfile_name(id: &str) -> String {
    format!("b{}.txt", id.trim_start_matches('A'))
}

pub fn bfile_url(id: &str) -> String {
    format!("https://oeis.org/{id}/{}", bfile_name(id))
}

/// Fixtures shipped inside the binary.
pub fn bundled(id: &str) -> Option<&'static str> {
    match id {
        "A000081" => Some(include_str!("../fixtures/b000081.txt")),
        "A004111" => Some(include_str!("../fixtures/b004111.txt")),
        "A000669" => Some(include_str!("../fixtures/b000669.txt")),
        _ => None,
    }
}

pub fn bundled_fixture(variety: Variety) -> OeisFixture {
    let id = variety.oeis_id();
    parse_bfile(id, bundled(id).expect("every variety has a fixture")).expect("bundled fixtures parse")
}

pub fn cache_path(cache_dir: &Path, id: &str) -> PathBuf {
    cache_dir.join(bfile_name(id))
}

/// Writes `text` to the cache through a temporary file and a rename.
pub fn write_cache(cache_dir: &Path, id: &str, text: &str) -> io::Result<PathBuf> {
    fs::create_dir_all(cache_dir)?;
    let target = cache_path(cache_dir, id);
    let tmp = cache_dir.join(format!(".{}.{}.tmp", bfile_name(id), std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(text.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, &target)?;
    Ok(target)
}

pub fn read_cache(cache_dir: &Path, id: &str) -> Option<String> {
    fs::read_to_string(cache_path(cache_dir, id)).ok()
}

pub fn fetch(id: &str) -> Result<String, FetchError> {
    let client = reqwest::blocking::Client::builder()
        .timeout(Duration::from_secs(30))
        .build()
        .map_err(|e| FetchError::Network(e.to_string()))?;
    let response = client.get(bfile_url(id)).send().map_err(|e| FetchError::Network(e.to_string()))?;
    if !response.status().is_success() {
        return Err(FetchError::Status(response.status().as_u16()));
    }
    let text = response.text().map_err(|e| FetchError::Network(e.to_string()))?;
    parse_bfile(id, &text)?;
    Ok(text)
}

/// Where a fixture came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Network,
    Cache,
    Bundled,
}

impl Source {
    pub fn name(self) -> &'static str {
        match self {
            Source::Network => "network",
            Source::Cache => "cache",
            Source::Bundled => "bundled",
        }
    }
}

/// Online: network, then cache, then bundled, warning on each fallback.
/// Offline: bundled only.
pub fn load(id: &str, cache_dir: &Path, online: bool) -> Result<(OeisFixture, Source), ParseError> {
    if online {
        match fetch(id) {
            Ok(text) => {
                if let Err(e) = write_cache(cache_dir, id, &text) {
                    log::warn!("could not cache {id}: {e}");
                }
                return Ok((parse_bfile(id, &text)?, Source::Network));
            }
            Err(e) => log::warn!("fetching {id} failed ({e}), falling back to the cache"),
        }
        if let Some(text) = read_cache(cache_dir, id) {
            return Ok((parse_bfile(id, &text)?, Source::Cache));
        }
        log::warn!("no cached copy of {id}, using the bundled fixture");
    }
    let text = bundled(id).unwrap_or("");
    Ok((parse_bfile(id, text)?, Source::Bundled))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub n: usize,
    pub expected: BigInt,
    pub computed: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub id: String,
    pub variety: Variety,
    pub checked: usize,
    /// Index range compared, when anything was.
    pub range: Option<(usize, usize)>,
    pub mismatches: Vec<Mismatch>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares every fixture index the computed sequence reaches.
pub fn verify(fixture: &OeisFixture, computed: &CountSequence) -> VerifyReport {
    let mut checked = 0;
    let mut range: Option<(usize, usize)> = None;
    let mut mismatches = Vec::new();
    for (n, expected) in &fixture.pairs {
        let Some(value) = computed.get(*n) else { break };
        checked += 1;
        range = Some(range.map_or((*n, *n), |(lo, _)| (lo, *n)));
        if value != expected {
            mismatches.push(Mismatch { n: *n, expected: expected.clone(), computed: value.clone() });
        }
    }
    VerifyReport { id: fixture.id.clone(), variety: computed.variety(), checked, range, mismatches }
}

#[cfg(test)]
mod tests {
    use super::*;
    use tree_asymptotics::counts;

    #[test]
    fn parses_comments_and_pairs() {
        let f = parse_bfile("A000081", "# header\n0 0\n1 1\n\n2 1\n  3 2  \n").unwrap();
        assert_eq!(f.pairs.len(), 4);
        assert_eq!(f.pairs[3], (3, BigInt::from(2)));
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(matches!(parse_bfile("A", "1 2 3\n"), Err(ParseError::Malformed { line: 1, .. })));
        assert!(matches!(parse_bfile("A", "1 x\n"), Err(ParseError::Malformed { .. })));
        assert!(matches!(parse_bfile("A", "2 1\n2 1\n"), Err(ParseError::NotIncreasing { line: 2, index: 2 })));
    }

    #[test]
    fn data_list_offset() {
        let listed = "1, 1, 2, 5, 12, 33, 90, 261, 766, 2312, 7068, 21965, 68954, 218751, 699534";
        let f = parse_data_list("A000669", listed, offset("A000669")).unwrap();
        assert_eq!(f.pairs[0].0, 1);
        let report = verify(&f, &counts(Variety::Hierarchy, 20));
        assert!(report.ok());
        assert_eq!(report.checked, 15);
        assert_eq!(report.range, Some((1, 15)));
        // Without the offset every term lands one place too early.
        let shifted = parse_data_list("A000669", listed, 0).unwrap();
        assert!(!verify(&shifted, &counts(Variety::Hierarchy, 20)).ok());
    }

    #[test]
    fn empty_fixture_checks_nothing() {
        let f = parse_bfile("A000081", "# nothing here\n").unwrap();
        let report = verify(&f, &counts(Variety::Polya, 10));
        assert_eq!(report.checked, 0);
        assert!(report.ok());
        assert_eq!(report.range, None);
    }

    #[test]
    fn mismatch_is_reported() {
        let f = parse_bfile("A000081", "0 0\n1 1\n2 1\n3 3\n").unwrap();
        let report = verify(&f, &counts(Variety::Polya, 10));
        assert_eq!(report.mismatches, vec![Mismatch { n: 3, expected: BigInt::from(3), computed: BigInt::from(2) }]);
    }

    #[test]
    fn cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_cache(dir.path(), "A000081", "0 0\n1 1\n").unwrap();
        assert_eq!(path, cache_path(dir.path(), "A000081"));
        assert_eq!(read_cache(dir.path(), "A000081").unwrap(), "0 0\n1 1\n");
        let leftovers: Vec<_> = fs::read_dir(dir.path()).unwrap().collect();
        assert_eq!(leftovers.len(), 1);
    }

    #[test]
    fn urls() {
        assert_eq!(bfile_url("A000669"), "https://oeis.org/A000669/b000669.txt");
    }

    #[test]
    fn offline_load_uses_bundled() {
        let dir = tempfile::tempdir().unwrap();
        let (f, source) = load("A004111", dir.path(), false).unwrap();
        assert_eq!(source, Source::Bundled);
        assert_eq!(f.pairs.last().unwrap().0, 500);
    }
}

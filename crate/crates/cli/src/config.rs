use std::path::{Path, PathBuf};

use covdeg::formulas::is_odd_prime;
use covdeg::verify::ApproximationParams;
use serde::Deserialize;

use crate::CliError;

pub const TABLE_PATH_VAR: &str = "COVDEG_TABLE_PATH";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Inclusive `m0..m1,k0..k1` box.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Grid {
    pub m: (i64, i64),
    pub k: (i64, i64),
}

impl Grid {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        let bad = || CliError::Usage(format!("bad grid '{s}', expected m0..m1,k0..k1"));
        let range = |part: &str| -> Result<(i64, i64), CliError> {
            let (a, b) = part.trim().split_once("..").ok_or_else(bad)?;
            let a: i64 = a.trim().parse().map_err(|_| bad())?;
            let b: i64 = b.trim().parse().map_err(|_| bad())?;
            if a > b {
                return Err(bad());
            }
            Ok((a, b))
        };
        let (m, k) = s.split_once(',').ok_or_else(bad)?;
        Ok(Grid { m: range(m)?, k: range(k)? })
    }

    /// Points of the box with `0 <= m-2k-1 <= max_spread` and `m > 0`.
    pub fn points(&self, max_spread: i64) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        for k in self.k.0..=self.k.1 {
            for m in self.m.0..=self.m.1 {
                let e = m - 2 * k - 1;
                if m > 0 && k >= 0 && (0..=max_spread).contains(&e) {
                    out.push((m, k));
                }
            }
        }
        out
    }
}

/// `N=2,M=3;N=0,M=0`, one approximation per `;`-separated item.
pub fn parse_params(s: &str) -> Result<Vec<ApproximationParams>, CliError> {
    s.split(';')
        .filter(|item| !item.trim().is_empty())
        .map(|item| {
            let mut p = ApproximationParams::uniform(0, 0);
            for kv in item.split(',') {
                let (key, val) = kv
                    .split_once('=')
                    .ok_or_else(|| CliError::Usage(format!("bad params item '{kv}', expected N=<int> or M=<int>")))?;
                let val: u64 = val
                    .trim()
                    .parse()
                    .map_err(|_| CliError::Usage(format!("bad value in params item '{kv}'")))?;
                match key.trim() {
                    "N" => p.default_n = val,
                    "M" => p.default_m = val,
                    other => return Err(CliError::Usage(format!("unknown params key '{other}'"))),
                }
            }
            Ok(p)
        })
        .collect()
}

/// Keys of the optional TOML config file. Flags override them.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub format: Option<Format>,
    pub table_path: Option<Vec<PathBuf>>,
    pub max_n: Option<u32>,
    pub audit_max_n: Option<u32>,
    pub primes: Option<Vec<u64>>,
    pub grid: Option<String>,
    pub max_spread: Option<i64>,
    pub cover_primes: Option<Vec<u64>>,
    pub cover_grid: Option<String>,
    pub params: Option<String>,
    pub odd_groups: Option<Vec<String>>,
    pub z6: Option<Vec<(i64, i64)>>,
    pub random_betas: Option<usize>,
    pub seed: Option<u64>,
    pub assert_bryan_hypothesis: Option<bool>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }
}

#[derive(Clone, Debug)]
pub struct CliConfig {
    pub format: Format,
    pub table_path: Vec<PathBuf>,
    pub max_n: u32,
    pub audit_max_n: u32,
    pub primes: Vec<u64>,
    pub grid: Grid,
    pub max_spread: i64,
    pub cover_primes: Vec<u64>,
    pub cover_grid: Grid,
    pub params: Vec<ApproximationParams>,
    pub odd_groups: Vec<String>,
    pub z6: Vec<(i64, i64)>,
    pub random_betas: usize,
    pub seed: u64,
    pub assert_bryan_hypothesis: bool,
}

impl Default for CliConfig {
    fn default() -> Self {
        CliConfig {
            format: Format::Text,
            table_path: Vec::new(),
            max_n: 99,
            audit_max_n: 25,
            primes: vec![3, 5, 7, 11],
            grid: Grid { m: (1, 9), k: (0, 2) },
            max_spread: 4,
            cover_primes: vec![3, 5],
            cover_grid: Grid { m: (3, 5), k: (1, 2) },
            params: vec![
                ApproximationParams::uniform(0, 0),
                ApproximationParams::uniform(1, 1),
                ApproximationParams::uniform(2, 3),
            ],
            odd_groups: ["Z3", "Z5", "Z7", "Z9", "Z15"].map(String::from).to_vec(),
            z6: vec![(23, 6), (5, 0), (11, 0)],
            random_betas: 10,
            seed: 0,
            assert_bryan_hypothesis: false,
        }
    }
}

impl CliConfig {
    pub fn apply_file(&mut self, f: FileConfig) -> Result<(), CliError> {
        macro_rules! take {
            ($($field:ident),*) => { $(if let Some(v) = f.$field { self.$field = v; })* };
        }
        take!(format, table_path, max_n, audit_max_n, primes, max_spread, cover_primes, odd_groups, z6, random_betas, seed, assert_bryan_hypothesis);
        if let Some(g) = f.grid {
            self.grid = Grid::parse(&g)?;
        }
        if let Some(g) = f.cover_grid {
            self.cover_grid = Grid::parse(&g)?;
        }
        if let Some(p) = f.params {
            self.params = parse_params(&p)?;
        }
        Ok(())
    }

    /// Appends the directories listed in the environment variable.
    pub fn apply_env(&mut self) {
        if let Some(v) = std::env::var_os(TABLE_PATH_VAR) {
            self.table_path.extend(std::env::split_paths(&v));
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |msg: String| Err(CliError::Config(msg));
        if self.max_n == 0 || self.audit_max_n == 0 {
            return bad("max_n and audit_max_n must be positive".into());
        }
        if self.max_spread < 0 {
            return bad("max_spread must be nonnegative".into());
        }
        for p in self.primes.iter().chain(&self.cover_primes) {
            if !is_odd_prime(*p) {
                return bad(format!("{p} is not an odd prime"));
            }
        }
        Ok(())
    }
}

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use super::{count_points_with, CurveError, CurveModel, PointCountTable};
use crate::par::Execution;

/// On-disk point counts: one `<m>\t<N_m>` record per line in a file named
/// after the curve id.
#[derive(Debug, Clone)]
pub struct CountCache {
    dir: PathBuf,
}

impl CountCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        CountCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, curve: &CurveModel) -> PathBuf {
        self.dir.join(format!("{}.counts", curve.id()))
    }

    pub fn load(&self, curve: &CurveModel) -> Result<PointCountTable, CurveError> {
        let mut table = PointCountTable::new(curve.id());
        let path = self.path_for(curve);
        if !path.exists() {
            return Ok(table);
        }
        let text = fs::read_to_string(&path)?;
        table.counts = parse_records(&text)?;
        Ok(table)
    }

    pub fn store(&self, curve: &CurveModel, table: &PointCountTable) -> Result<(), CurveError> {
        fs::create_dir_all(&self.dir)?;
        fs::write(self.path_for(curve), render_records(&table.counts))?;
        Ok(())
    }

    /// Ensures `N_1..N_max` are present, counting only the missing degrees.
    /// Returns the table and the number of degrees served from disk.
    pub fn fill(
        &self,
        curve: &CurveModel,
        max: u32,
        exec: Execution,
    ) -> Result<(PointCountTable, u32), CurveError> {
        let mut table = self.load(curve)?;
        let mut hits = 0;
        let mut dirty = false;
        for m in 1..=max {
            match table.counts.entry(m) {
                Entry::Occupied(_) => hits += 1,
                Entry::Vacant(slot) => {
                    slot.insert(count_points_with(curve, m, exec)?);
                    dirty = true;
                }
            }
        }
        if dirty {
            self.store(curve, &table)?;
        }
        Ok((table, hits))
    }
}

fn parse_records(text: &str) -> Result<BTreeMap<u32, u64>, CurveError> {
    let mut out = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let bad = || CurveError::Parse(format!("cache line {}: {line:?}", lineno + 1));
        let (m, n) = line.split_once('\t').ok_or_else(bad)?;
        let m: u32 = m.trim().parse().map_err(|_| bad())?;
        let n: u64 = n.trim().parse().map_err(|_| bad())?;
        out.insert(m, n);
    }
    Ok(out)
}

fn render_records(counts: &BTreeMap<u32, u64>) -> String {
    counts.iter().map(|(m, n)| format!("{m}\t{n}\n")).collect()
}

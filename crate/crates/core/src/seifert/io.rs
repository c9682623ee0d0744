//! Text file format:
//!
//! ```json
//! {
//!   "components": 1,
//!   "block_sizes": [2],
//!   "entries": [
//!     [-1, 1],
//!     [0, -1]
//!   ]
//! }
//! ```

use serde::Deserialize;

use super::{BlockStructure, IntMatrix, SeifertMatrix};
use crate::{Error, Result};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SeifertFile {
    components: usize,
    block_sizes: Vec<usize>,
    entries: Vec<Vec<i64>>,
}

/// Parses the file format. Shape errors are reported here; `Sei(n)` axioms
/// are left to [`SeifertMatrix::validate`].
pub fn parse_seifert(text: &str) -> Result<SeifertMatrix> {
    let file: SeifertFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if file.components != file.block_sizes.len() {
        return Err(Error::Parse(format!(
            "components = {} but {} block sizes given",
            file.components,
            file.block_sizes.len()
        )));
    }
    let entries = IntMatrix::from_rows(&file.entries).map_err(|e| Error::Parse(e.to_string()))?;
    SeifertMatrix::new(BlockStructure::new(file.block_sizes), entries).map_err(|e| Error::Parse(e.to_string()))
}

/// Canonical rendering, one matrix row per line.
pub fn serialize_seifert(a: &SeifertMatrix) -> String {
    let join = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(", ");
    let sizes: Vec<String> = a.structure().sizes().iter().map(usize::to_string).collect();
    let mut out = String::new();
    out.push_str("{\n");
    out.push_str(&format!("  \"components\": {},\n", a.components()));
    out.push_str(&format!("  \"block_sizes\": [{}],\n", sizes.join(", ")));
    if a.size() == 0 {
        out.push_str("  \"entries\": []\n");
    } else {
        out.push_str("  \"entries\": [\n");
        let rows = a.entries().rows();
        for (i, row) in rows.iter().enumerate() {
            let sep = if i + 1 < rows.len() { "," } else { "" };
            out.push_str(&format!("    [{}]{sep}\n", join(row)));
        }
        out.push_str("  ]\n");
    }
    out.push_str("}\n");
    out
}

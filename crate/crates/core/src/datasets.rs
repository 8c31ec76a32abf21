//! Bundled and user-supplied benchmark networks.
//!
//! Only the karate-club network ships with the crate. The other small
//! networks used in the literature (taro, dolphins, football) have no
//! redistributable copy bundled here; point `LINKPRED_DATA_DIR` at a
//! directory containing `<name>.txt` edge lists to use them by name.

use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{Graph, LoadOptions, LoadReport};

const KARATE: &str = include_str!("../fixtures/karate.txt");

/// Dataset names `by_name` understands, bundled or not.
pub const KNOWN_DATASETS: [&str; 4] = ["karate", "taro", "dolphins", "football"];

pub fn load_path(path: &Path) -> Result<(Graph, LoadReport)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Dataset(format!("{}: {e}", path.display())))?;
    Graph::load_edge_list(&text, LoadOptions::default())
}

/// Resolves a dataset identifier: a known name (bundled, or looked up in
/// `LINKPRED_DATA_DIR`), otherwise a filesystem path.
pub fn by_name(name: &str) -> Result<Graph> {
    if name == "karate" || name == "zachary" {
        let (g, _) = Graph::load_edge_list(KARATE, LoadOptions::default())?;
        return Ok(g);
    }
    if KNOWN_DATASETS.contains(&name) {
        if let Ok(dir) = std::env::var("LINKPRED_DATA_DIR") {
            let path = Path::new(&dir).join(format!("{name}.txt"));
            if path.exists() {
                return Ok(load_path(&path)?.0);
            }
        }
        return Err(Error::Dataset(format!(
            "'{name}' is not bundled; set LINKPRED_DATA_DIR to a directory containing {name}.txt"
        )));
    }
    let path = Path::new(name);
    if path.exists() {
        Ok(load_path(path)?.0)
    } else {
        Err(Error::Dataset(format!("'{name}' is neither a known dataset nor a readable path")))
    }
}

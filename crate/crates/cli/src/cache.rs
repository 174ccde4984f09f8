//! On-disk cache of solved associators, keyed by degree.

use std::path::PathBuf;

use chordal::associator::{characters_of, solve_associator, AssociatorState, SolveOptions};
use chordal::bspace::reduce_element;
use chordal::serial::{parse_element, write_element};
use chordal::Result;

use crate::report::write_atomic;

pub const CACHE_ENV: &str = "CHORDAL_CACHE_DIR";

fn cache_file(degree: usize) -> Option<PathBuf> {
    let dir = std::env::var_os(CACHE_ENV)?;
    Some(PathBuf::from(dir).join(format!("phi-{degree}.txt")))
}

/// The associator through the even degree `degree`, read from the cache
/// directory when present and stored there after solving.
pub fn associator(degree: usize) -> Result<AssociatorState> {
    if degree == 0 {
        return Ok(AssociatorState::trivial());
    }
    let file = cache_file(degree);
    if let Some(text) = file.as_ref().and_then(|f| std::fs::read_to_string(f).ok()) {
        let chars = parse_element(&text)?;
        return Ok(AssociatorState {
            phi: reduce_element(&chars)?,
            solved_through: degree + 1,
            audit: Vec::new(),
        });
    }
    let state = solve_associator(&SolveOptions {
        max_degree: degree,
        audit: false,
    })?;
    if let Some(f) = file {
        let text = write_element(&characters_of(&state.phi, 3)?);
        if let Some(dir) = f.parent() {
            let _ = std::fs::create_dir_all(dir);
        }
        let _ = write_atomic(&f, &text);
    }
    Ok(state)
}

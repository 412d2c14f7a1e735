//! Characteristic maps and Buchstaber numbers.

pub mod charmap;
pub mod linalg;
pub mod report;
pub mod search;

pub use charmap::{canonical_char_map, verify_char_map, CharMap, CharMap128, CharMap64, Ring};
pub use report::{buchstaber_analysis, buchstaber_report, BuchstaberAnalysis, BuchstaberReport, SearchStatus};
pub use search::{search_char_map_integer, search_char_map_mod_p, SearchOutcome, DEFAULT_SEARCH_BUDGET};

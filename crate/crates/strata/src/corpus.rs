//! Algebra files bundled with the library.

use crate::error::{Error, Result};
use crate::input::{parse, AlgebraFile};

pub const NAMES: &[&str] = &[
    "sl2_block",
    "two_sources",
    "diamond",
    "auslander",
    "rad_square_zero",
    "ext_square_witness",
    "dual_extension",
    "morita_pattern",
    "semisimple_pair",
    "sl2_tensor_square",
];

/// Raw JSON of a bundled file.
pub fn source(name: &str) -> Option<&'static str> {
    Some(match name {
        "sl2_block" => include_str!("../corpus/sl2_block.json"),
        "two_sources" => include_str!("../corpus/two_sources.json"),
        "diamond" => include_str!("../corpus/diamond.json"),
        "auslander" => include_str!("../corpus/auslander.json"),
        "rad_square_zero" => include_str!("../corpus/rad_square_zero.json"),
        "ext_square_witness" => include_str!("../corpus/ext_square_witness.json"),
        "dual_extension" => include_str!("../corpus/dual_extension.json"),
        "morita_pattern" => include_str!("../corpus/morita_pattern.json"),
        "semisimple_pair" => include_str!("../corpus/semisimple_pair.json"),
        "sl2_tensor_square" => include_str!("../corpus/sl2_tensor_square.json"),
        _ => return None,
    })
}

pub fn load(name: &str) -> Result<AlgebraFile> {
    let text = source(name).ok_or_else(|| Error::Parse(format!("no bundled algebra named {name:?}")))?;
    parse(text)
}

pub fn all() -> Result<Vec<(&'static str, AlgebraFile)>> {
    NAMES.iter().map(|n| Ok((*n, load(n)?))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn everything_loads() {
        let dims: Vec<usize> = all().unwrap().iter().map(|(_, f)| f.algebra.dim()).collect();
        assert_eq!(dims, vec![5, 5, 9, 14, 4, 7, 21, 12, 2, 25]);
        assert!(load("nope").is_err());
    }
}

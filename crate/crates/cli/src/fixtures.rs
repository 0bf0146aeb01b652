//! Example inputs shipped with the binary, resolvable by file name.

use std::path::Path;

const FIXTURES: &[(&str, &str)] = &[
    ("dubrovin3.chart", include_str!("../fixtures/dubrovin3.chart")),
    ("so3.chart", include_str!("../fixtures/so3.chart")),
    ("sl2.chart", include_str!("../fixtures/sl2.chart")),
    ("constant_symplectic.chart", include_str!("../fixtures/constant_symplectic.chart")),
    ("constant_isotropic.chart", include_str!("../fixtures/constant_isotropic.chart")),
    ("leaf_slice.chart", include_str!("../fixtures/leaf_slice.chart")),
    ("relmod_r2.chart", include_str!("../fixtures/relmod_r2.chart")),
    ("relmod_r4.chart", include_str!("../fixtures/relmod_r4.chart")),
    ("affine_so3_axis.affine", include_str!("../fixtures/affine_so3_axis.affine")),
    ("affine_so3_plane.affine", include_str!("../fixtures/affine_so3_plane.affine")),
    ("affine_sl2_cartan.affine", include_str!("../fixtures/affine_sl2_cartan.affine")),
    ("affine_sl2_nonsub.affine", include_str!("../fixtures/affine_sl2_nonsub.affine")),
    ("sl2.lie", include_str!("../fixtures/sl2.lie")),
    ("sl3.lie", include_str!("../fixtures/sl3.lie")),
    ("su2.lie", include_str!("../fixtures/su2.lie")),
    ("su3.lie", include_str!("../fixtures/su3.lie")),
    ("so3.lie", include_str!("../fixtures/so3.lie")),
];

/// Names of all shipped fixtures.
pub fn names() -> impl Iterator<Item = &'static str> {
    FIXTURES.iter().map(|(n, _)| *n)
}

/// Shipped fixture by exact file name.
pub fn get(name: &str) -> Option<&'static str> {
    FIXTURES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// Reads `path` from disk, falling back to a shipped fixture of the same file name.
pub fn load(path: &str) -> Result<String, String> {
    match std::fs::read_to_string(path) {
        Ok(t) => Ok(t),
        Err(e) => Path::new(path)
            .file_name()
            .and_then(|f| f.to_str())
            .and_then(get)
            .map(str::to_string)
            .ok_or_else(|| format!("cannot read {}: {}", path, e)),
    }
}

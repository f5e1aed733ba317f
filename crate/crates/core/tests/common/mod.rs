#![allow(dead_code)]

use std::path::PathBuf;

use omf_core::*;

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../golden")
}

pub fn golden(name: &str) -> PartialOrbitMatrix {
    read_matrix_file(golden_dir().join(format!("{name}.txt"))).unwrap()
}

pub fn all_golden() -> Vec<(String, PartialOrbitMatrix)> {
    let mut names: Vec<String> = std::fs::read_dir(golden_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.is_file())
        .map(|p| p.file_stem().unwrap().to_string_lossy().to_string())
        .collect();
    names.sort();
    names.into_iter().map(|n| (n.clone(), golden(&n))).collect()
}

pub fn biplane() -> DesignParams {
    DesignParams::new(121, 16, 2).unwrap()
}

pub fn dist(parts: &[(u32, usize)]) -> OrbitDistribution {
    let w: Vec<u32> = parts.iter().flat_map(|&(l, n)| std::iter::repeat_n(l, n)).collect();
    OrbitDistribution::symmetric(121, w).unwrap()
}

/// The first `n` rows of a matrix.
pub fn head(m: &PartialOrbitMatrix, n: usize) -> PartialOrbitMatrix {
    PartialOrbitMatrix::new(
        *m.params(),
        m.dist().clone(),
        m.rows()[..n].to_vec(),
        m.row_orbits()[..n].to_vec(),
    )
    .unwrap()
}

//! Plain-text matrix files.
//!
//! ```text
//! #121 16 2
//! #omega: 1 1 7 7 7 7 7 21 21 21 21
//! #Omega-per-row: 1 1
//! 1 1 7 7 0 0 0 0 0 0 0
//! 1 1 0 0 7 7 0 0 0 0 0
//! ```
//!
//! ASCII only, single spaces, every line newline-terminated. Block-orbit
//! lengths of the distribution are taken equal to the point-orbit lengths
//! unless the rows form a complete matrix whose lengths differ, in which case
//! the per-row lengths are the block distribution.

use std::fs;
use std::path::Path;

use crate::design::{DesignParams, Entry, OrbitDistribution, PartialOrbitMatrix};
use crate::error::{Error, Result};

const OMEGA: &str = "#omega:";
const ROW_OMEGA: &str = "#Omega-per-row:";

fn join(values: &[u32]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn labelled(label: &str, values: &[u32]) -> String {
    if values.is_empty() {
        format!("{label}\n")
    } else {
        format!("{label} {}\n", join(values))
    }
}

pub fn write_matrix_string(m: &PartialOrbitMatrix) -> String {
    let p = m.params();
    let mut out = format!("#{} {} {}\n", p.v(), p.k(), p.lambda());
    out.push_str(&labelled(OMEGA, m.dist().point_orbits()));
    out.push_str(&labelled(ROW_OMEGA, m.row_orbits()));
    for row in m.rows() {
        out.push_str(&join(row));
        out.push('\n');
    }
    out
}

pub fn write_matrix_file(m: &PartialOrbitMatrix, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path.as_ref(), write_matrix_string(m))
        .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))
}

pub fn read_matrix_file(path: impl AsRef<Path>) -> Result<PartialOrbitMatrix> {
    let text = fs::read_to_string(path.as_ref())
        .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))?;
    parse_matrix(&text)
}

fn numbers(line: usize, text: &str) -> Result<Vec<u32>> {
    text.split(' ')
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<u32>()
                .map_err(|_| Error::format(line, format!("not a non-negative integer: {s:?}")))
        })
        .collect()
}

pub fn parse_matrix(text: &str) -> Result<PartialOrbitMatrix> {
    if !text.is_ascii() {
        return Err(Error::format(0, "file is not ASCII"));
    }
    if !text.is_empty() && !text.ends_with('\n') {
        return Err(Error::format(text.lines().count(), "missing final newline"));
    }
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));

    let (n, header) = lines.next().ok_or_else(|| Error::format(1, "empty file"))?;
    let head = header
        .strip_prefix('#')
        .filter(|h| !h.starts_with(|c: char| c.is_ascii_alphabetic()))
        .ok_or_else(|| Error::format(n, "expected header `#v k lambda`"))?;
    let vkl = numbers(n, head)?;
    let [v, k, lambda] = vkl[..] else {
        return Err(Error::format(n, format!("expected 3 header values, found {}", vkl.len())));
    };
    let params = DesignParams::new(v, k, lambda).map_err(|e| Error::format(n, e.to_string()))?;

    let (n, line) = lines.next().ok_or_else(|| Error::format(2, "missing `#omega:` line"))?;
    let omega = line
        .strip_prefix(OMEGA)
        .ok_or_else(|| Error::format(n, "expected `#omega:` line"))
        .and_then(|s| numbers(n, s))?;
    if omega.is_empty() {
        return Err(Error::format(n, "no point orbits"));
    }
    let omega_line = n;

    let (n, line) = lines
        .next()
        .ok_or_else(|| Error::format(3, "missing `#Omega-per-row:` line"))?;
    let row_orbits = line
        .strip_prefix(ROW_OMEGA)
        .ok_or_else(|| Error::format(n, "expected `#Omega-per-row:` line"))
        .and_then(|s| numbers(n, s))?;
    let orbits_line = n;

    let t = omega.len();
    let mut rows: Vec<Vec<Entry>> = Vec::new();
    for (n, line) in lines {
        let row = numbers(n, line)?;
        if row.len() != t {
            return Err(Error::format(
                n,
                format!("ragged row: {} entries, expected {t}", row.len()),
            ));
        }
        rows.push(row);
    }
    if rows.len() != row_orbits.len() {
        return Err(Error::format(
            orbits_line,
            format!("{} row orbit lengths but {} rows", row_orbits.len(), rows.len()),
        ));
    }

    let mut sorted_points = omega.clone();
    sorted_points.sort_unstable();
    let mut sorted_rows = row_orbits.clone();
    sorted_rows.sort_unstable();
    let block_orbits = if rows.len() == t && sorted_rows != sorted_points {
        row_orbits.clone()
    } else {
        omega.clone()
    };
    let dist = OrbitDistribution::new(v, omega, block_orbits).map_err(|e| Error::format(omega_line, e.to_string()))?;
    PartialOrbitMatrix::new(params, dist, rows, row_orbits).map_err(|e| Error::format(orbits_line, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    const OM21: &str = "#121 16 2
#omega: 1 1 7 7 7 7 7 21 21 21 21
#Omega-per-row: 1 1 7 7 7 7 7 21 21 21 21
1 1 7 7 0 0 0 0 0 0 0
1 1 0 0 7 7 0 0 0 0 0
1 0 1 0 1 0 1 6 3 3 0
1 0 0 1 0 1 1 0 3 3 6
0 1 1 0 0 1 1 3 6 0 3
0 1 0 1 1 0 1 3 0 6 3
0 0 1 1 1 1 0 6 0 0 6
0 0 2 0 1 1 2 2 2 3 3
0 0 1 1 2 0 0 2 4 3 3
0 0 1 1 0 2 0 3 3 4 2
0 0 0 2 1 1 2 3 3 2 2
";

    #[test]
    fn round_trip_is_bit_exact() {
        let m = parse_matrix(OM21).unwrap();
        assert_eq!(m.row_count(), 11);
        assert_eq!(write_matrix_string(&m), OM21);
        assert_eq!(parse_matrix(&write_matrix_string(&m)).unwrap(), m);
    }

    #[test]
    fn empty_matrix_round_trips() {
        let p = DesignParams::new(7, 4, 2).unwrap();
        let d = OrbitDistribution::symmetric(7, vec![7]).unwrap();
        let m = PartialOrbitMatrix::empty(p, d);
        let text = write_matrix_string(&m);
        assert_eq!(text, "#7 4 2\n#omega: 7\n#Omega-per-row:\n");
        assert_eq!(parse_matrix(&text).unwrap(), m);
    }

    #[test]
    fn ragged_row_reports_line() {
        let text = "#121 16 2\n#omega: 1*4\n";
        assert!(matches!(parse_matrix(text), Err(Error::Format { line: 2, .. })));
        let text = "#121 16 2\n#omega: 1 1 1 1 13 13 13 13 13 13 13 13 13\n#Omega-per-row: 1\n1 1 1 0 13 0 0 0 0 0 0 0\n";
        match parse_matrix(text) {
            Err(Error::Format { line, message }) => {
                assert_eq!(line, 4);
                assert!(message.contains("ragged"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn malformed_headers() {
        assert!(parse_matrix("").is_err());
        assert!(parse_matrix("#121 16\n").is_err());
        assert!(parse_matrix("#121 16 3\n#omega: 121\n#Omega-per-row:\n").is_err());
        assert!(parse_matrix("#7 4 2\n#omega: 7\n#Omega-per-row:").is_err());
        assert!(parse_matrix("#7 4 2\n#omega: 7\n").is_err());
        assert!(parse_matrix("#7 4 2\n#omega: 7\n#Omega-per-row: 7\n").is_err());
        assert!(parse_matrix("#7 4 2\n#omega: 7\n#Omega-per-row: 7\n-4\n").is_err());
    }
}

//! Structural checks and flattening for nested operation tables.

use crate::error::{Error, Result};

pub(crate) fn malformed(path: impl Into<String>, reason: impl Into<String>) -> Error {
    Error::Malformed { path: path.into(), reason: reason.into() }
}

fn check_entry(name: &str, idx: &[usize], value: usize, bound: usize) -> Result<usize> {
    if value < bound {
        return Ok(value);
    }
    let path: String = idx.iter().map(|i| format!("[{i}]")).collect();
    Err(malformed(format!("{name}{path}"), format!("entry {value} out of range for size {bound}")))
}

fn check_len<T>(name: &str, idx: &[usize], v: &[T], expected: usize) -> Result<()> {
    if v.len() == expected {
        return Ok(());
    }
    let path: String = idx.iter().map(|i| format!("[{i}]")).collect();
    Err(malformed(format!("{name}{path}"), format!("expected length {expected}, found {}", v.len())))
}

/// Flattens an `n × n × n` table with entries in `0..bound`.
pub fn flatten3(name: &str, n: usize, bound: usize, t: &[Vec<Vec<usize>>]) -> Result<Vec<usize>> {
    check_len(name, &[], t, n)?;
    let mut out = Vec::with_capacity(n * n * n);
    for (a, plane) in t.iter().enumerate() {
        check_len(name, &[a], plane, n)?;
        for (b, row) in plane.iter().enumerate() {
            check_len(name, &[a, b], row, n)?;
            for (c, &v) in row.iter().enumerate() {
                out.push(check_entry(name, &[a, b, c], v, bound)?);
            }
        }
    }
    Ok(out)
}

/// Flattens a `rows × cols` table with entries in `0..bound`.
pub fn flatten2(name: &str, rows: usize, cols: usize, bound: usize, t: &[Vec<usize>]) -> Result<Vec<usize>> {
    check_len(name, &[], t, rows)?;
    let mut out = Vec::with_capacity(rows * cols);
    for (a, row) in t.iter().enumerate() {
        check_len(name, &[a], row, cols)?;
        for (b, &v) in row.iter().enumerate() {
            out.push(check_entry(name, &[a, b], v, bound)?);
        }
    }
    Ok(out)
}

/// Checks a map table of length `len` with entries in `0..bound`.
pub fn check_map(name: &str, len: usize, bound: usize, map: &[usize]) -> Result<()> {
    check_len(name, &[], map, len)?;
    for (i, &v) in map.iter().enumerate() {
        check_entry(name, &[i], v, bound)?;
    }
    Ok(())
}

pub fn nest3(n: usize, flat: &[usize]) -> Vec<Vec<Vec<usize>>> {
    flat.chunks(n * n).map(|plane| plane.chunks(n).map(<[usize]>::to_vec).collect()).collect()
}

pub fn nest2(cols: usize, flat: &[usize]) -> Vec<Vec<usize>> {
    if cols == 0 {
        return Vec::new();
    }
    flat.chunks(cols).map(<[usize]>::to_vec).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_error_names_the_index_path() {
        let t = vec![vec![vec![0, 1], vec![1, 0]], vec![vec![1, 2], vec![0, 1]]];
        match flatten3("op", 2, 2, &t) {
            Err(Error::Malformed { path, .. }) => assert_eq!(path, "op[1][0][1]"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn dimension_error_is_reported() {
        let t = vec![vec![0, 1], vec![1]];
        assert!(matches!(flatten2("mul", 2, 2, 2, &t), Err(Error::Malformed { .. })));
    }
}

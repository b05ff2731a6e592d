use std::ops::Add;

use crate::error::{Error, Result};
use crate::scalar::SequenceValue;

/// Indices `n in [2, horizon]` (1-based) with `f(n) < g(1) + ... + g(n)` and
/// `f(n) - f(n-1) < g(n)`.
pub fn find_diff_indices<T>(f: &[T], g: &[T], horizon: usize) -> Result<Vec<usize>>
where
    T: SequenceValue + for<'a> Add<&'a T, Output = T>,
{
    if f.len() != g.len() {
        return Err(Error::InvalidParameter(format!(
            "sequence lengths differ: {} vs {}",
            f.len(),
            g.len()
        )));
    }
    if horizon > f.len() {
        return Err(Error::InvalidParameter(format!(
            "horizon {horizon} exceeds sequence length {}",
            f.len()
        )));
    }
    let zero = T::zero();
    if let Some(i) = f.iter().chain(g.iter()).position(|x| *x <= zero) {
        let (which, idx) = if i < f.len() { ("f", i) } else { ("g", i - f.len()) };
        return Err(Error::InvalidParameter(format!("{which}({}) is not positive", idx + 1)));
    }
    let mut out = Vec::new();
    let mut partial = T::zero();
    for n in 1..=horizon {
        partial = partial + &g[n - 1];
        // f(n) - f(n-1) < g(n) written without subtraction.
        if n >= 2 && f[n - 1] < partial && f[n - 1] < f[n - 2].clone() + &g[n - 1] {
            out.push(n);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_sequence() {
        let f = [1u64, 2, 3, 10, 10, 10, 10];
        let g = [2u64; 7];
        assert_eq!(find_diff_indices(&f, &g, 7).unwrap(), vec![2, 3, 6, 7]);
    }

    #[test]
    fn constant_f_everywhere() {
        let f = [1u64; 10];
        let g = [2u64; 10];
        assert_eq!(find_diff_indices(&f, &g, 10).unwrap(), (2..=10).collect::<Vec<_>>());
    }

    #[test]
    fn quadratic_f_never() {
        let f: Vec<u64> = (1..=20).map(|n| n * n).collect();
        let g = vec![1u64; 20];
        assert!(find_diff_indices(&f, &g, 20).unwrap().is_empty());
    }

    #[test]
    fn errors() {
        assert!(find_diff_indices(&[1u64, 2], &[1u64], 1).is_err());
        assert!(find_diff_indices(&[1u64, 0], &[1u64, 1], 2).is_err());
        assert!(find_diff_indices(&[1.0f64, 2.0], &[1.0, -1.0], 2).is_err());
        assert!(find_diff_indices(&[1u64, 2], &[1u64, 1], 3).is_err());
    }

    #[test]
    fn floats_match_integers() {
        let f = [1.0f64, 2.0, 3.0, 10.0, 10.0, 10.0, 10.0];
        let g = [2.0f64; 7];
        assert_eq!(find_diff_indices(&f, &g, 7).unwrap(), vec![2, 3, 6, 7]);
    }
}

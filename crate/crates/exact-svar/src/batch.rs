//! Grid parsing and parallel evaluation with ordered results.

use crate::error::CliError;
use rayon::prelude::*;
use std::time::Instant;

/// Parses `v`, a comma list `v1,v2,...`, or an inclusive grid
/// `start:stop:count`.
pub fn parse_points(spec: &str) -> Result<Vec<f64>, CliError> {
    let bad = |m: &str| CliError::Usage(format!("bad point spec '{spec}': {m}"));
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| bad("not a number"));
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.len() {
        1 => spec.split(',').map(num).collect(),
        3 => {
            let (a, b) = (num(parts[0])?, num(parts[1])?);
            let count: usize = parts[2].trim().parse().map_err(|_| bad("count must be an integer"))?;
            match count {
                0 => Err(bad("count must be positive")),
                1 if a != b => Err(bad("a single point needs start = stop")),
                1 => Ok(vec![a]),
                _ => {
                    let step = (b - a) / (count - 1) as f64;
                    Ok((0..count)
                        .map(|i| if i == count - 1 { b } else { a + i as f64 * step })
                        .collect())
                }
            }
        }
        _ => Err(bad("expected start:stop:count")),
    }
}

/// Evaluates `f` at every item in parallel, returning results in input
/// order with the wall time of each call in milliseconds.
pub fn evaluate<T, R, F>(items: &[T], f: F) -> Vec<(R, f64)>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    items
        .par_iter()
        .map(|x| {
            let t = Instant::now();
            let r = f(x);
            (r, t.elapsed().as_secs_f64() * 1e3)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        assert_eq!(parse_points("0.5").unwrap(), vec![0.5]);
        assert_eq!(parse_points("1,2, 3").unwrap(), vec![1.0, 2.0, 3.0]);
        assert_eq!(parse_points("0:1:5").unwrap(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(parse_points("0.1:0.3:3").unwrap().last(), Some(&0.3));
        assert!(parse_points("0:1:0").is_err());
        assert!(parse_points("0:1").is_err());
        assert!(parse_points("a").is_err());
    }

    #[test]
    fn order_is_kept() {
        let xs: Vec<u64> = (0..200).collect();
        let out = evaluate(&xs, |&x| {
            std::thread::sleep(std::time::Duration::from_micros(200 - x));
            x * 2
        });
        assert!(out.iter().enumerate().all(|(i, (v, _))| *v == 2 * i as u64));
    }
}

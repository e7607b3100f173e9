//! Parameter grids written as `start:stop:step` ranges and comma lists,
//! e.g. `0:5:0.1` or `0,0.5,1,2:5:1`.

use crate::error::{Error, Result};

/// Grid points are rounded to this many decimals to drop accumulation noise
/// like `0.30000000000000004`.
const GRID_DECIMALS: i32 = 12;

/// `0:5:0.1`, 51 points.
pub const DEFAULT_BETAS: &str = "0:5:0.1";

/// `0:1:0.05`.
pub const DEFAULT_ALPHAS: &str = "0:1:0.05";

/// Strictly increasing, nonnegative, finite.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid(Vec<f64>);

impl Grid {
    pub fn new(points: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Usage("grid must contain at least one point".into()));
        }
        if let Some(p) = points.iter().find(|p| !p.is_finite() || **p < 0.0) {
            return Err(Error::Usage(format!("grid point {p} must be finite and >= 0")));
        }
        if let Some(w) = points.windows(2).find(|w| w[1] <= w[0]) {
            return Err(Error::Usage(format!(
                "grid must be strictly increasing ({} then {})",
                w[0], w[1]
            )));
        }
        Ok(Grid(points))
    }

    pub fn points(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl std::str::FromStr for Grid {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        let mut points = Vec::new();
        for item in spec.split(',').map(str::trim) {
            if item.contains(':') {
                points.extend(parse_range(item)?);
            } else {
                points.push(parse_number(item)?);
            }
        }
        Grid::new(points)
    }
}

fn parse_number(s: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| Error::Usage(format!("`{s}` is not a number")))
}

fn parse_range(item: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = item.split(':').collect();
    let [start, stop, step] = parts[..] else {
        return Err(Error::Usage(format!("range `{item}` must be start:stop:step")));
    };
    let (start, stop, step) = (parse_number(start)?, parse_number(stop)?, parse_number(step)?);
    if !step.is_finite() || step <= 0.0 {
        return Err(Error::Usage(format!("range `{item}` needs a positive step")));
    }
    if stop < start {
        return Err(Error::Usage(format!("range `{item}` ends before it starts")));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    let scale = 10f64.powi(GRID_DECIMALS);
    Ok((0..count)
        .map(|i| ((start + i as f64 * step) * scale).round() / scale)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(s: &str) -> Vec<f64> {
        s.parse::<Grid>().unwrap().points().to_vec()
    }

    #[test]
    fn default_beta_grid() {
        let g = grid(DEFAULT_BETAS);
        assert_eq!(g.len(), 51);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[3], 0.3);
        assert_eq!(g[50], 5.0);
        assert_eq!(grid(DEFAULT_ALPHAS).len(), 21);
    }

    #[test]
    fn lists_and_mixed() {
        assert_eq!(grid("1"), [1.0]);
        assert_eq!(grid("0, 0.5,1"), [0.0, 0.5, 1.0]);
        assert_eq!(grid("0,0.5,1:3:1"), [0.0, 0.5, 1.0, 2.0, 3.0]);
        assert_eq!(grid("0:1:0.3"), [0.0, 0.3, 0.6, 0.9]);
    }

    #[test]
    fn rejects_bad_specs() {
        for bad in ["", "a", "1,1", "2,1", "-1", "0:1", "0:1:0", "1:0:0.1", "0:1:-1", "nan"] {
            assert!(bad.parse::<Grid>().is_err(), "{bad}");
        }
    }
}

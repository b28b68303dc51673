//! Parsers for coupling grids, ranges and phase-space grid shapes.

use std::fmt;
use std::str::FromStr;

const MAX_POINTS: usize = 1_000_000;
const DIVISIBILITY_TOLERANCE: f64 = 1e-12;

/// Coupling values from `start:stop:step`, a comma list, or a single number.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid {
    spec: String,
    values: Vec<f64>,
}

impl Grid {
    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec)
    }
}

fn number(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("'{s}' is not a number"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("'{s}' is not finite"))
    }
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let values = match parts.as_slice() {
            [start, stop, step] => {
                let (start, stop, step) = (number(start)?, number(stop)?, number(step)?);
                if !(step > 0.0) {
                    return Err(format!("step must be positive, got {step}"));
                }
                if stop < start {
                    return Err(format!("stop {stop} is below start {start}"));
                }
                let span = (stop - start) / step;
                if span > MAX_POINTS as f64 {
                    return Err(format!("grid has more than {MAX_POINTS} points"));
                }
                let whole = span.round();
                let inclusive = (span - whole).abs() <= DIVISIBILITY_TOLERANCE * whole.max(1.0);
                let count = if inclusive { whole as usize } else { span.floor() as usize };
                let mut values: Vec<f64> = (0..=count).map(|k| start + k as f64 * step).collect();
                if inclusive {
                    *values.last_mut().expect("at least one point") = stop;
                }
                values
            }
            [single] => single.split(',').map(number).collect::<Result<Vec<_>, _>>()?,
            _ => return Err(format!("expected start:stop:step or a comma list, got '{s}'")),
        };
        if values.windows(2).any(|w| !(w[1] > w[0])) {
            return Err("grid values must be strictly increasing".into());
        }
        Ok(Self {
            spec: s.to_string(),
            values,
        })
    }
}

/// `lo:hi`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Range {
    pub lo: f64,
    pub hi: f64,
}

impl fmt::Display for Range {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.lo, self.hi)
    }
}

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (lo, hi) = s
            .split_once(':')
            .or_else(|| s.split_once(','))
            .ok_or_else(|| format!("expected lo:hi, got '{s}'"))?;
        let (lo, hi) = (number(lo)?, number(hi)?);
        if !(hi > lo) {
            return Err(format!("need lo < hi, got {lo}:{hi}"));
        }
        Ok(Self { lo, hi })
    }
}

/// `NQxNP`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridShape {
    pub nq: usize,
    pub np: usize,
}

impl fmt::Display for GridShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.nq, self.np)
    }
}

impl FromStr for GridShape {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = s
            .split_once(['x', 'X'])
            .ok_or_else(|| format!("expected NQxNP, got '{s}'"))?;
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("'{t}' is not a count"));
        let shape = Self {
            nq: parse(a)?,
            np: parse(b)?,
        };
        if shape.nq < 16 || shape.np < 16 {
            return Err(format!("grid must be at least 16x16, got {shape}"));
        }
        if shape.nq.saturating_mul(shape.np) > 16_000_000 {
            return Err(format!("grid {shape} is too large"));
        }
        Ok(shape)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inclusive_grid() {
        let g: Grid = "0.5:2.5:0.5".parse().unwrap();
        assert_eq!(g.values(), &[0.5, 1.0, 1.5, 2.0, 2.5]);
        let g: Grid = "0.3:1.5:0.005".parse().unwrap();
        assert_eq!(g.values().len(), 241);
        assert_eq!(*g.values().last().unwrap(), 1.5);
    }

    #[test]
    fn non_dividing_step_stops_short() {
        let g: Grid = "0:1:0.3".parse().unwrap();
        assert_eq!(g.values().len(), 4);
        assert!((g.values()[3] - 0.9).abs() < 1e-15);
    }

    #[test]
    fn lists_and_errors() {
        let g: Grid = "0.1,0.2,0.4".parse().unwrap();
        assert_eq!(g.values(), &[0.1, 0.2, 0.4]);
        assert!("1:0:0.1".parse::<Grid>().is_err());
        assert!("0:1:0".parse::<Grid>().is_err());
        assert!("0.2,0.1".parse::<Grid>().is_err());
        assert!("a:b".parse::<Grid>().is_err());
    }

    #[test]
    fn shapes_and_ranges() {
        assert_eq!("512x256".parse::<GridShape>().unwrap(), GridShape { nq: 512, np: 256 });
        assert!("8x8".parse::<GridShape>().is_err());
        assert!("512".parse::<GridShape>().is_err());
        assert_eq!("0.1:2".parse::<Range>().unwrap(), Range { lo: 0.1, hi: 2.0 });
        assert!("2:1".parse::<Range>().is_err());
    }
}

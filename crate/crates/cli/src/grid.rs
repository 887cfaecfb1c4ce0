use std::fmt;
use std::str::FromStr;

/// An inclusive arithmetic grid `start:end:step`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub end: f64,
    pub step: f64,
}

const MAX_POINTS: usize = 100_000;

impl Grid {
    pub fn single(x: f64) -> Self {
        Grid {
            start: x,
            end: x,
            step: 1.0,
        }
    }

    pub fn points(&self) -> Vec<f64> {
        let n = ((self.end - self.start) / self.step + 1e-9).floor() as usize;
        (0..=n).map(|k| self.start + k as f64 * self.step).collect()
    }
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, h] = parts.as_slice() else {
            return Err(format!("expected start:end:step, got `{s}`"));
        };
        let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("bad number `{t}`: {e}"));
        let g = Grid {
            start: num(a)?,
            end: num(b)?,
            step: num(h)?,
        };
        if !(g.start.is_finite() && g.end.is_finite() && g.step.is_finite()) {
            return Err("grid values must be finite".into());
        }
        if g.step <= 0.0 || g.end < g.start {
            return Err(format!("grid `{s}` is empty: need start <= end and step > 0"));
        }
        if (g.end - g.start) / g.step > MAX_POINTS as f64 {
            return Err(format!("grid `{s}` has more than {MAX_POINTS} points"));
        }
        Ok(g)
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.end, self.step)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_expands() {
        let g: Grid = "0.5:3.5:0.5".parse().unwrap();
        assert_eq!(g.points(), vec![0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5]);
        assert_eq!("4:4:1".parse::<Grid>().unwrap().points(), vec![4.0]);
        assert_eq!("0:1:0.1".parse::<Grid>().unwrap().points().len(), 11);
        assert!("1:0:1".parse::<Grid>().is_err());
        assert!("0:1:0".parse::<Grid>().is_err());
        assert!("0:1".parse::<Grid>().is_err());
        assert!("a:1:1".parse::<Grid>().is_err());
    }
}

//! Tabulation of pyramid classifications over a range of `η`.

use crate::error::{Error, Result};
use crate::exact::{format_rational, Rational};
use crate::pyramid::{classify, PyramidParams, Regime};
use crate::rbody::{classify_rbody, verdict_label};

pub const CSV_HEADER: &str = "eta,regime,RT2,rho1,rho2,rho3,z1,z2,z3,rbody";

#[derive(Clone, Debug)]
pub struct SweepRow {
    pub eta: Rational,
    pub regime: Regime,
    pub rt2: Rational,
    /// `(ρ, z)` per non-trivial solution, by decreasing `z`.
    pub branches: Vec<(String, String)>,
    pub rbody: &'static str,
}

impl SweepRow {
    pub fn to_csv(&self) -> String {
        let mut cols = vec![
            format_rational(&self.eta),
            self.regime.to_string(),
            format_rational(&self.rt2),
        ];
        for i in 0..3 {
            cols.push(
                self.branches
                    .get(i)
                    .map(|b| b.0.clone())
                    .unwrap_or_default(),
            );
        }
        for i in 0..3 {
            cols.push(
                self.branches
                    .get(i)
                    .map(|b| b.1.clone())
                    .unwrap_or_default(),
            );
        }
        cols.push(self.rbody.to_string());
        cols.join(",")
    }
}

/// `steps + 1` equally spaced values from `from` to `to` inclusive.
pub fn grid(from: &Rational, to: &Rational, steps: usize) -> Result<Vec<Rational>> {
    if steps == 0 {
        return Err(Error::Domain("steps must be positive".into()));
    }
    if from >= to {
        return Err(Error::Domain("empty range".into()));
    }
    let h = (to - from) / Rational::from_integer(steps.into());
    Ok((0..=steps)
        .map(|k| from + &h * Rational::from_integer(k.into()))
        .collect())
}

pub fn sweep_row(eta: &Rational, digits: usize) -> Result<SweepRow> {
    let c = classify(&PyramidParams::new(eta.clone())?)?;
    let rt2 = c
        .rt2
        .to_rational()
        .ok_or_else(|| Error::Domain("irrational circumradius".into()))?;
    let branches = c
        .nontrivial
        .iter()
        .map(|s| (s.rho.to_decimal(digits), s.z.to_decimal(digits)))
        .collect();
    let rbody = verdict_label(&classify_rbody(eta)?);
    Ok(SweepRow {
        eta: eta.clone(),
        regime: c.regime,
        rt2,
        branches,
        rbody,
    })
}

/// Rows for every grid value, in increasing `η`.
pub fn sweep(from: &Rational, to: &Rational, steps: usize, digits: usize) -> Result<Vec<SweepRow>> {
    let etas = grid(from, to, steps)?;
    crate::par::map_ordered(&etas, |e| sweep_row(e, digits))
        .into_iter()
        .collect()
}

/// Same as [`sweep`] on one thread.
pub fn sweep_sequential(
    from: &Rational,
    to: &Rational,
    steps: usize,
    digits: usize,
) -> Result<Vec<SweepRow>> {
    let etas = grid(from, to, steps)?;
    crate::par::map_sequential(&etas, |e| sweep_row(e, digits))
        .into_iter()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn rows_in_order() {
        let rows = sweep(&rat(1, 2), &rat(29, 10), 4, 6).unwrap();
        assert_eq!(rows.len(), 5);
        assert!(rows.windows(2).all(|w| w[0].eta < w[1].eta));
        assert_eq!(rows[0].rbody, "rbody");
        assert_eq!(rows[4].branches.len(), 3);
        assert_eq!(
            rows[4].to_csv().split(',').count(),
            CSV_HEADER.split(',').count()
        );
        assert!(grid(&rat(1, 1), &rat(1, 2), 3).is_err());
    }
}

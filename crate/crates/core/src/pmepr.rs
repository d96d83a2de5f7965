//! Floating-point OFDM envelope of a QAM sequence on an oversampled grid.

use std::f64::consts::TAU;
use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::golay::QamSequence;

/// `|S_F(theta)|^2` at `theta = k / (oversampling * len)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnvelopeProfile {
    pub oversampling: usize,
    pub power: Vec<f64>,
    /// grid average of `power`; equals the sequence energy
    pub mean_power: f64,
    pub peak_power: f64,
    /// peak power over the sequence energy `C_F(0)`
    pub pmepr: f64,
}

impl EnvelopeProfile {
    pub fn thetas(&self) -> impl Iterator<Item = f64> + '_ {
        let n = self.power.len() as f64;
        (0..self.power.len()).map(move |k| k as f64 / n)
    }
}

pub fn envelope_power(f: &QamSequence, oversampling: usize) -> Result<EnvelopeProfile> {
    if oversampling == 0 {
        return Err(Error::range("oversampling", 0, ">= 1"));
    }
    let len = f.len();
    if len == 0 {
        return Err(Error::invalid("sequence", "empty"));
    }
    let grid = len * oversampling;
    // twiddles indexed modulo the grid size keep the sums free of phase drift
    let twiddles: Vec<Complex64> = (0..grid)
        .map(|r| Complex64::from_polar(1.0, TAU * r as f64 / grid as f64))
        .collect();
    let values: Vec<Complex64> = f
        .values()
        .iter()
        .map(|v| Complex64::new(v.re as f64, v.im as f64))
        .collect();
    let power: Vec<f64> = (0..grid)
        .into_par_iter()
        .map(|k| {
            values
                .iter()
                .enumerate()
                .map(|(y, v)| v * twiddles[(y * k) % grid])
                .sum::<Complex64>()
                .norm_sqr()
        })
        .collect();
    let mean_power = power.iter().sum::<f64>() / grid as f64;
    let peak_power = power.iter().copied().fold(0.0, f64::max);
    Ok(EnvelopeProfile {
        oversampling,
        pmepr: peak_power / f.energy() as f64,
        power,
        mean_power,
        peak_power,
    })
}

/// `max_theta | |S_F|^2 + |S_G|^2 - (C_F(0) + C_G(0)) |`.
pub fn power_complementarity(f: &QamSequence, g: &QamSequence, oversampling: usize) -> Result<f64> {
    let (pf, pg) = pair_profiles(f, g, oversampling)?;
    let target = (f.energy() + g.energy()) as f64;
    Ok(pf
        .power
        .iter()
        .zip(&pg.power)
        .map(|(a, b)| (a + b - target).abs())
        .fold(0.0, f64::max))
}

/// [`power_complementarity`] divided by `C_F(0) + C_G(0)`.
pub fn relative_power_complementarity(f: &QamSequence, g: &QamSequence, oversampling: usize) -> Result<f64> {
    Ok(power_complementarity(f, g, oversampling)? / (f.energy() + g.energy()) as f64)
}

fn pair_profiles(f: &QamSequence, g: &QamSequence, oversampling: usize) -> Result<(EnvelopeProfile, EnvelopeProfile)> {
    if f.len() != g.len() {
        return Err(Error::dim("sequence length", f.len(), g.len()));
    }
    Ok((envelope_power(f, oversampling)?, envelope_power(g, oversampling)?))
}

/// CSV with columns `theta, powerF, powerG, sum`.
pub fn write_profile_csv<W: Write>(f: &QamSequence, g: &QamSequence, oversampling: usize, out: W) -> Result<()> {
    let (pf, pg) = pair_profiles(f, g, oversampling)?;
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::invalid("csv", e.to_string());
    w.write_record(["theta", "powerF", "powerG", "sum"]).map_err(io)?;
    for ((theta, a), b) in pf.thetas().zip(&pf.power).zip(&pg.power) {
        w.write_record([theta.to_string(), a.to_string(), b.to_string(), (a + b).to_string()])
            .map_err(io)?;
    }
    w.flush().map_err(|e| Error::invalid("csv", e.to_string()))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GaussianInt;

    fn seq(values: &[i64]) -> QamSequence {
        QamSequence::new(1, values.iter().map(|&v| GaussianInt::real(v)).collect()).unwrap()
    }

    #[test]
    fn two_term_envelope() {
        let p = envelope_power(&seq(&[1, 1]), 8).unwrap();
        assert!((p.peak_power - 4.0).abs() < 1e-12);
        assert!((p.mean_power - 2.0).abs() < 1e-12);
        assert!((p.pmepr - 2.0).abs() < 1e-12);
        assert_eq!(p.power.len(), 16);
        let q = envelope_power(&seq(&[1, -1]), 8).unwrap();
        assert!((q.pmepr - 2.0).abs() < 1e-12);
    }

    #[test]
    fn complementarity_examples() {
        assert!(power_complementarity(&seq(&[1, 1]), &seq(&[1, -1]), 8).unwrap() < 1e-12);
        let d = power_complementarity(&seq(&[1, 1]), &seq(&[1, 1]), 8).unwrap();
        assert!((d - 4.0).abs() < 1e-12);
        assert!(power_complementarity(&seq(&[1, 1]), &seq(&[1, 1, 1, 1]), 8).is_err());
    }

    #[test]
    fn peak_grows_with_oversampling() {
        let s = seq(&[1, 1, 1, -1, 1, 1, -1, 1]);
        let peaks: Vec<f64> = [4, 8, 16]
            .iter()
            .map(|&o| envelope_power(&s, o).unwrap().peak_power)
            .collect();
        assert!(peaks.windows(2).all(|w| w[1] >= w[0] - 1e-12));
    }

    #[test]
    fn csv_columns() {
        let mut out = Vec::new();
        write_profile_csv(&seq(&[1, 1]), &seq(&[1, -1]), 2, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("theta,powerF,powerG,sum"));
        assert_eq!(lines.count(), 4);
        assert!(envelope_power(&seq(&[1, 1]), 0).is_err());
    }
}

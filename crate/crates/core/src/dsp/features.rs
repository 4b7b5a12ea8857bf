//! Per-frame acoustic features: MFCC with delta/delta-delta augmentation,
//! zero-crossing rate, crest factor, and energy.

use std::io::Write;

use super::fft::{fft_magnitude, next_power_of_two};
use super::frame::{frame_starts, window_values};
use super::{AudioBuffer, DspError, FrameSpec};

/// Static MFCC coefficients per frame (c0..c11, zeroth included).
pub const MFCC_STATIC: usize = 12;
/// Static coefficients plus delta and delta-delta.
pub const MFCC_WITH_DELTAS: usize = 36;
/// Full per-frame feature dimension: MFCC block plus ZCR, crest, energy.
pub const FRAME_FEATURE_DIM: usize = 39;
/// Triangular mel filters spanning 0-8000 Hz.
pub const MEL_FILTERS: usize = 26;
/// Floor applied to filterbank energies before the log.
pub const LOG_FLOOR: f64 = 1e-10;

const MEL_HIGH_HZ: f64 = 8000.0;
const MFCC_FRAME_LEN: usize = 1024;

/// Per-frame feature vector: 36 MFCC values plus three scalars.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameFeatures {
    /// 12 static coefficients, then 12 deltas, then 12 delta-deltas.
    pub mfcc: Vec<f64>,
    pub zcr: f64,
    pub crest: f64,
    pub energy: f64,
}

impl FrameFeatures {
    /// Flatten into the fixed 39-dimensional vector.
    pub fn to_vec(&self) -> Vec<f64> {
        let mut v = Vec::with_capacity(FRAME_FEATURE_DIM);
        v.extend_from_slice(&self.mfcc);
        v.push(self.zcr);
        v.push(self.crest);
        v.push(self.energy);
        v
    }
}

fn hz_to_mel(hz: f64) -> f64 {
    2595.0 * (1.0 + hz / 700.0).log10()
}

fn mel_to_hz(mel: f64) -> f64 {
    700.0 * (10.0_f64.powf(mel / 2595.0) - 1.0)
}

/// Triangular filter weight at frequency `f` for a filter with the given
/// left/center/right edge frequencies.
fn triangle(f: f64, left: f64, center: f64, right: f64) -> f64 {
    if f <= left || f >= right {
        0.0
    } else if f <= center {
        (f - left) / (center - left)
    } else {
        (right - f) / (right - center)
    }
}

/// 12 MFCC coefficients of a windowed frame.
///
/// Pipeline: zero-pad to 1024 samples, magnitude FFT, power spectrum,
/// 26 triangular mel filters over 0-8000 Hz, log with floor
/// [`LOG_FLOOR`], orthonormal DCT-II, keep c0..c11.
pub fn mfcc(frame: &[f64], sample_rate_hz: u32) -> Result<Vec<f64>, DspError> {
    if frame.len() > MFCC_FRAME_LEN {
        return Err(DspError::InputTooShort {
            got: frame.len(),
            need: MFCC_FRAME_LEN,
        });
    }
    let mut padded = vec![0.0; MFCC_FRAME_LEN];
    padded[..frame.len()].copy_from_slice(frame);
    let mags = fft_magnitude(&padded)?;
    let power: Vec<f64> = mags.iter().map(|m| m * m).collect();

    let energies = mel_filterbank_energies(&power, MFCC_FRAME_LEN, sample_rate_hz);
    let log_energies: Vec<f64> = energies.iter().map(|&e| e.max(LOG_FLOOR).ln()).collect();
    Ok(dct_ii_orthonormal(&log_energies, MFCC_STATIC))
}

fn mel_filterbank_energies(power: &[f64], fft_len: usize, sample_rate_hz: u32) -> Vec<f64> {
    let mel_low = hz_to_mel(0.0);
    let mel_high = hz_to_mel(MEL_HIGH_HZ);
    let edges: Vec<f64> = (0..MEL_FILTERS + 2)
        .map(|i| mel_to_hz(mel_low + (mel_high - mel_low) * i as f64 / (MEL_FILTERS + 1) as f64))
        .collect();
    let bin_hz = sample_rate_hz as f64 / fft_len as f64;
    (0..MEL_FILTERS)
        .map(|m| {
            power
                .iter()
                .enumerate()
                .map(|(k, &p)| triangle(k as f64 * bin_hz, edges[m], edges[m + 1], edges[m + 2]) * p)
                .sum()
        })
        .collect()
}

/// Orthonormal DCT-II keeping the first `n_out` coefficients.
fn dct_ii_orthonormal(input: &[f64], n_out: usize) -> Vec<f64> {
    let m = input.len();
    let norm0 = (1.0 / m as f64).sqrt();
    let norm = (2.0 / m as f64).sqrt();
    (0..n_out)
        .map(|k| {
            let sum: f64 = input
                .iter()
                .enumerate()
                .map(|(n, &x)| {
                    x * (std::f64::consts::PI * (2 * n + 1) as f64 * k as f64 / (2 * m) as f64)
                        .cos()
                })
                .sum();
            if k == 0 {
                norm0 * sum
            } else {
                norm * sum
            }
        })
        .collect()
}

/// Augment a static-MFCC track with delta and delta-delta coefficients.
///
/// `delta[t] = (c[t+1] - c[t-1]) / 2` with edge replication; delta-delta
/// is the delta of the delta track. Tracks shorter than 3 frames get zero
/// derivatives.
pub fn mfcc_deltas(track: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = track.len();
    if n == 0 {
        return Vec::new();
    }
    let dim = track[0].len();
    let (deltas, delta_deltas) = if n < 3 {
        (vec![vec![0.0; dim]; n], vec![vec![0.0; dim]; n])
    } else {
        let d = symmetric_diff(track);
        let dd = symmetric_diff(&d);
        (d, dd)
    };
    track
        .iter()
        .zip(deltas.iter())
        .zip(delta_deltas.iter())
        .map(|((c, d), dd)| {
            let mut row = Vec::with_capacity(dim * 3);
            row.extend_from_slice(c);
            row.extend_from_slice(d);
            row.extend_from_slice(dd);
            row
        })
        .collect()
}

fn symmetric_diff(track: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = track.len();
    let dim = track[0].len();
    (0..n)
        .map(|t| {
            let prev = &track[t.saturating_sub(1)];
            let next = &track[(t + 1).min(n - 1)];
            (0..dim).map(|d| (next[d] - prev[d]) / 2.0).collect()
        })
        .collect()
}

/// Fraction of adjacent sample pairs whose product is negative.
pub fn zero_crossing_rate(frame: &[f64]) -> f64 {
    if frame.len() < 2 {
        return 0.0;
    }
    let flips = frame.windows(2).filter(|w| w[0] * w[1] < 0.0).count();
    flips as f64 / (frame.len() - 1) as f64
}

/// Peak absolute value over RMS; 0 for an all-zero frame.
pub fn crest_factor(frame: &[f64]) -> f64 {
    let rms = energy(frame);
    if rms == 0.0 {
        return 0.0;
    }
    let peak = frame.iter().fold(0.0_f64, |acc, &x| acc.max(x.abs()));
    peak / rms
}

/// Root-mean-square of the frame.
pub fn energy(frame: &[f64]) -> f64 {
    if frame.is_empty() {
        return 0.0;
    }
    (frame.iter().map(|x| x * x).sum::<f64>() / frame.len() as f64).sqrt()
}

/// Extract the full 39-dimensional feature sequence of a recording at the
/// given framing.
///
/// ZCR, crest factor, and energy are computed on the raw frame; MFCC on
/// the windowed frame.
pub fn extract_frame_features(
    buffer: &AudioBuffer,
    spec: &FrameSpec,
) -> Result<Vec<FrameFeatures>, DspError> {
    let starts = frame_starts(buffer.len(), spec);
    if starts.is_empty() {
        return Err(DspError::InputTooShort {
            got: buffer.len(),
            need: spec.frame_len_samples,
        });
    }
    let window = window_values(spec.window, spec.frame_len_samples);
    let samples = buffer.samples();

    let mut scalars = Vec::with_capacity(starts.len());
    let mut static_track = Vec::with_capacity(starts.len());
    for &start in &starts {
        let raw = &samples[start..start + spec.frame_len_samples];
        scalars.push((
            zero_crossing_rate(raw),
            crest_factor(raw),
            energy(raw),
        ));
        let windowed: Vec<f64> = raw.iter().zip(&window).map(|(s, w)| s * w).collect();
        static_track.push(mfcc(&windowed, buffer.sample_rate_hz())?);
    }
    let full = mfcc_deltas(&static_track);
    Ok(full
        .into_iter()
        .zip(scalars)
        .map(|(mfcc, (zcr, crest, energy))| FrameFeatures {
            mfcc,
            zcr,
            crest,
            energy,
        })
        .collect())
}

/// Write features as delimited text: one row per frame of
/// `frame_index, start_time_s, 36 mfcc, zcr, crest, energy`.
pub fn write_feature_dump(
    out: &mut impl Write,
    features: &[FrameFeatures],
    spec: &FrameSpec,
    sample_rate_hz: u32,
) -> Result<(), DspError> {
    for (k, f) in features.iter().enumerate() {
        let start_s = (k * spec.hop_samples) as f64 / sample_rate_hz as f64;
        write!(out, "{k},{start_s}")?;
        for v in f.to_vec() {
            write!(out, ",{v}")?;
        }
        writeln!(out)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsp::Window;
    use rand::{Rng, SeedableRng};

    #[test]
    fn zero_frame_mfcc_is_dc_only() {
        let out = mfcc(&[0.0; 1024], 16_000).unwrap();
        assert_eq!(out.len(), 12);
        // Flat log-energy vector has only a DC component:
        // c0 = sqrt(1/26) * 26 * ln(floor).
        let expected_c0 = (1.0 / 26.0_f64).sqrt() * 26.0 * LOG_FLOOR.ln();
        assert!((out[0] - expected_c0).abs() < 1e-9, "c0={}", out[0]);
        for (k, &c) in out.iter().enumerate().skip(1) {
            assert!(c.abs() < 1e-9, "c{k}={c}");
        }
    }

    #[test]
    fn mfcc_is_deterministic() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        let frame: Vec<f64> = (0..1024).map(|_| rng.random_range(-1.0..1.0)).collect();
        let a = mfcc(&frame, 16_000).unwrap();
        let b = mfcc(&frame, 16_000).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn mfcc_rejects_overlong_frames() {
        assert!(mfcc(&vec![0.0; 2000], 16_000).is_err());
    }

    /// Independent step-by-step MFCC oracle: separate DFT, filterbank,
    /// and DCT implementations, compared to 1e-8.
    #[test]
    fn mfcc_matches_independent_oracle() {
        fn oracle_mfcc(frame: &[f64], rate: f64) -> Vec<f64> {
            let n = 1024usize;
            let mut padded = vec![0.0; n];
            padded[..frame.len()].copy_from_slice(frame);
            // Naive DFT power spectrum.
            let power: Vec<f64> = (0..=n / 2)
                .map(|k| {
                    let (mut re, mut im) = (0.0, 0.0);
                    for (t, &x) in padded.iter().enumerate() {
                        let a = -2.0 * std::f64::consts::PI * (k * t) as f64 / n as f64;
                        re += x * a.cos();
                        im += x * a.sin();
                    }
                    re * re + im * im
                })
                .collect();
            // Mel filterbank, recomputed from the formulas.
            let mel = |hz: f64| 2595.0 * (1.0 + hz / 700.0).log10();
            let imel = |m: f64| 700.0 * (10.0_f64.powf(m / 2595.0) - 1.0);
            let (lo, hi) = (mel(0.0), mel(8000.0));
            let edges: Vec<f64> = (0..28)
                .map(|i| imel(lo + (hi - lo) * i as f64 / 27.0))
                .collect();
            let log_e: Vec<f64> = (0..26)
                .map(|m| {
                    let e: f64 = power
                        .iter()
                        .enumerate()
                        .map(|(k, &p)| {
                            let f = k as f64 * rate / n as f64;
                            let (l, c, r) = (edges[m], edges[m + 1], edges[m + 2]);
                            let w = if f <= l || f >= r {
                                0.0
                            } else if f <= c {
                                (f - l) / (c - l)
                            } else {
                                (r - f) / (r - c)
                            };
                            w * p
                        })
                        .sum();
                    e.max(1e-10).ln()
                })
                .collect();
            // Orthonormal DCT-II.
            (0..12)
                .map(|k| {
                    let s: f64 = log_e
                        .iter()
                        .enumerate()
                        .map(|(i, &x)| {
                            x * (std::f64::consts::PI * (2 * i + 1) as f64 * k as f64 / 52.0).cos()
                        })
                        .sum();
                    let norm = if k == 0 {
                        (1.0 / 26.0_f64).sqrt()
                    } else {
                        (2.0 / 26.0_f64).sqrt()
                    };
                    norm * s
                })
                .collect()
        }

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..3 {
            let frame: Vec<f64> = (0..1024).map(|_| rng.random_range(-1.0..1.0)).collect();
            let ours = mfcc(&frame, 16_000).unwrap();
            let reference = oracle_mfcc(&frame, 16_000.0);
            for (a, b) in ours.iter().zip(&reference) {
                assert!((a - b).abs() < 1e-8, "ours={a} oracle={b}");
            }
        }
    }

    #[test]
    fn deltas_of_constant_track_are_zero() {
        let track = vec![vec![1.0; 12]; 8];
        let full = mfcc_deltas(&track);
        for row in &full {
            assert_eq!(row.len(), 36);
            assert!(row[12..].iter().all(|&v| v == 0.0));
        }
    }

    #[test]
    fn deltas_of_linear_ramp_equal_slope() {
        let track: Vec<Vec<f64>> = (0..10).map(|t| vec![t as f64 * 0.5; 12]).collect();
        let full = mfcc_deltas(&track);
        for row in &full[1..9] {
            for &d in &row[12..24] {
                assert!((d - 0.5).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn deltas_match_index_by_index_recomputation() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        let track: Vec<Vec<f64>> = (0..10)
            .map(|_| (0..12).map(|_| rng.random_range(-5.0..5.0)).collect())
            .collect();
        let full = mfcc_deltas(&track);
        let n = track.len();
        let at = |tr: &[Vec<f64>], t: i64| -> Vec<f64> {
            tr[t.clamp(0, n as i64 - 1) as usize].clone()
        };
        let mut delta = Vec::new();
        for t in 0..n as i64 {
            let p = at(&track, t - 1);
            let q = at(&track, t + 1);
            delta.push((0..12).map(|d| (q[d] - p[d]) / 2.0).collect::<Vec<f64>>());
        }
        for t in 0..n as i64 {
            let p = at(&delta, t - 1);
            let q = at(&delta, t + 1);
            for d in 0..12 {
                let dd = (q[d] - p[d]) / 2.0;
                assert!((full[t as usize][12 + d] - delta[t as usize][d]).abs() < 1e-12);
                assert!((full[t as usize][24 + d] - dd).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn short_track_gets_zero_derivatives() {
        let track = vec![vec![3.0; 12]; 2];
        let full = mfcc_deltas(&track);
        assert_eq!(full.len(), 2);
        assert!(full.iter().all(|r| r[12..].iter().all(|&v| v == 0.0)));
    }

    #[test]
    fn zcr_known_cases() {
        assert_eq!(zero_crossing_rate(&[1.0, 1.0, 1.0]), 0.0);
        let alt: Vec<f64> = (0..10).map(|i| if i % 2 == 0 { 1.0 } else { -1.0 }).collect();
        assert_eq!(zero_crossing_rate(&alt), 1.0);
        assert!((zero_crossing_rate(&[1.0, -1.0, 1.0, 1.0]) - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn crest_factor_known_cases() {
        assert!((crest_factor(&[0.3; 100]) - 1.0).abs() < 1e-12);
        assert_eq!(crest_factor(&[0.0; 16]), 0.0);
        let n = 1000;
        let sine: Vec<f64> = (0..n)
            .map(|i| (2.0 * std::f64::consts::PI * i as f64 / n as f64).sin())
            .collect();
        assert!((crest_factor(&sine) - 2.0_f64.sqrt()).abs() < 1e-3);
    }

    #[test]
    fn energy_known_cases() {
        assert_eq!(energy(&[0.0; 8]), 0.0);
        assert!((energy(&[-0.5; 8]) - 0.5).abs() < 1e-15);
        assert!((energy(&[3.0, 4.0]) - 12.5_f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn scalar_features_invariant_under_negation_and_gain() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        let frame: Vec<f64> = (0..256).map(|_| rng.random_range(-1.0..1.0)).collect();
        let neg: Vec<f64> = frame.iter().map(|x| -x).collect();
        assert_eq!(zero_crossing_rate(&frame), zero_crossing_rate(&neg));
        assert!((crest_factor(&frame) - crest_factor(&neg)).abs() < 1e-12);
        assert!((energy(&frame) - energy(&neg)).abs() < 1e-12);

        let gain = 2.5;
        let scaled: Vec<f64> = frame.iter().map(|x| gain * x).collect();
        assert!((energy(&scaled) - gain * energy(&frame)).abs() < 1e-12);
        assert!((crest_factor(&scaled) - crest_factor(&frame)).abs() < 1e-12);
    }

    #[test]
    fn feature_extraction_dimensions_and_dump() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(6);
        let samples: Vec<f64> = (0..4096).map(|_| rng.random_range(-1.0..1.0)).collect();
        let buf = AudioBuffer::new(samples, 16_000).unwrap();
        let spec = FrameSpec::new(1024, 512, Window::Hamming).unwrap();
        let feats = extract_frame_features(&buf, &spec).unwrap();
        assert_eq!(feats.len(), 7);
        for f in &feats {
            assert_eq!(f.to_vec().len(), FRAME_FEATURE_DIM);
            assert!(f.to_vec().iter().all(|v| v.is_finite()));
        }
        let mut a = Vec::new();
        let mut b = Vec::new();
        write_feature_dump(&mut a, &feats, &spec, 16_000).unwrap();
        write_feature_dump(&mut b, &feats, &spec, 16_000).unwrap();
        assert_eq!(a, b);
        let text = String::from_utf8(a).unwrap();
        let first = text.lines().next().unwrap();
        assert_eq!(first.split(',').count(), 2 + FRAME_FEATURE_DIM);
    }

    #[test]
    fn next_power_of_two_helper() {
        assert_eq!(next_power_of_two(1000), 1024);
        assert_eq!(next_power_of_two(1024), 1024);
    }
}

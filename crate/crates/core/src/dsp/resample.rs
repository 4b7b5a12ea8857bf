//! Sample-rate conversion: windowed-sinc anti-aliasing low-pass followed
//! by linear interpolation onto the target grid.

use super::{AudioBuffer, DspError};

/// Half-width of the FIR low-pass kernel in taps.
const FILTER_HALF_WIDTH: usize = 64;

/// Resample a buffer to `target_rate_hz`.
///
/// Downsampling first applies a Blackman-windowed-sinc low-pass at the
/// target Nyquist frequency (edge samples use edge replication, so DC is
/// preserved exactly). Output positions between filtered samples are
/// linearly interpolated. An empty input yields an empty output.
pub fn resample(buffer: &AudioBuffer, target_rate_hz: u32) -> Result<AudioBuffer, DspError> {
    if target_rate_hz == 0 {
        return Err(DspError::InvalidSampleRate);
    }
    if buffer.is_empty() {
        return AudioBuffer::new(Vec::new(), target_rate_hz);
    }
    if buffer.sample_rate_hz() == target_rate_hz {
        return AudioBuffer::new(buffer.samples().to_vec(), target_rate_hz);
    }

    let source_rate = buffer.sample_rate_hz() as f64;
    let target_rate = target_rate_hz as f64;

    let filtered: Vec<f64> = if target_rate < source_rate {
        low_pass(buffer.samples(), target_rate / 2.0 / source_rate)
    } else {
        buffer.samples().to_vec()
    };

    let ratio = target_rate / source_rate;
    let out_len = ((filtered.len() - 1) as f64 * ratio).floor() as usize + 1;
    let last = filtered.len() - 1;
    let out = (0..out_len)
        .map(|k| {
            let pos = k as f64 / ratio;
            let i = (pos.floor() as usize).min(last);
            let frac = pos - i as f64;
            if frac == 0.0 || i == last {
                filtered[i]
            } else {
                filtered[i] * (1.0 - frac) + filtered[i + 1] * frac
            }
        })
        .collect();
    AudioBuffer::new(out, target_rate_hz)
}

/// FIR low-pass with cutoff as a fraction of the sample rate, Blackman
/// window, taps normalized to unit DC gain. Edges use edge replication.
fn low_pass(samples: &[f64], cutoff: f64) -> Vec<f64> {
    let half = FILTER_HALF_WIDTH as isize;
    let taps: Vec<f64> = {
        let mut t: Vec<f64> = (-half..=half)
            .map(|n| {
                let sinc = if n == 0 {
                    2.0 * cutoff
                } else {
                    let x = std::f64::consts::PI * n as f64;
                    (2.0 * cutoff * x).sin() / x
                };
                let m = (2 * half) as f64;
                let phase = 2.0 * std::f64::consts::PI * (n + half) as f64 / m;
                let blackman = 0.42 - 0.5 * phase.cos() + 0.08 * (2.0 * phase).cos();
                sinc * blackman
            })
            .collect();
        let sum: f64 = t.iter().sum();
        for v in &mut t {
            *v /= sum;
        }
        t
    };

    let len = samples.len() as isize;
    (0..len)
        .map(|i| {
            taps.iter()
                .enumerate()
                .map(|(j, &w)| {
                    let idx = (i + j as isize - half).clamp(0, len - 1) as usize;
                    w * samples[idx]
                })
                .sum()
        })
        .collect()
}

//! Signal framing and analysis windows.

use super::{AudioBuffer, DspError, FrameSpec, Window};

/// Start indices of all complete frames of a signal of length `len`.
/// Frame `k` covers samples `[k*hop, k*hop + frame_len)`; a trailing
/// partial frame is dropped.
pub fn frame_starts(len: usize, spec: &FrameSpec) -> Vec<usize> {
    if len < spec.frame_len_samples {
        return Vec::new();
    }
    (0..=(len - spec.frame_len_samples) / spec.hop_samples)
        .map(|k| k * spec.hop_samples)
        .collect()
}

/// Window function values of the given length.
pub fn window_values(window: Window, len: usize) -> Vec<f64> {
    match window {
        Window::Rectangular => vec![1.0; len],
        Window::Hamming => {
            if len == 1 {
                return vec![1.0];
            }
            (0..len)
                .map(|n| {
                    0.54 - 0.46
                        * (2.0 * std::f64::consts::PI * n as f64 / (len as f64 - 1.0)).cos()
                })
                .collect()
        }
    }
}

/// Split a buffer into overlapping frames, each multiplied by the window
/// function. Errors if the buffer is shorter than one frame.
pub fn frame_signal(buffer: &AudioBuffer, spec: &FrameSpec) -> Result<Vec<Vec<f64>>, DspError> {
    if buffer.len() < spec.frame_len_samples {
        return Err(DspError::InputTooShort {
            got: buffer.len(),
            need: spec.frame_len_samples,
        });
    }
    let window = window_values(spec.window, spec.frame_len_samples);
    let samples = buffer.samples();
    Ok(frame_starts(buffer.len(), spec)
        .into_iter()
        .map(|start| {
            samples[start..start + spec.frame_len_samples]
                .iter()
                .zip(&window)
                .map(|(s, w)| s * w)
                .collect()
        })
        .collect())
}

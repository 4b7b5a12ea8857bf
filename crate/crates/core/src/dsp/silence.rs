//! Silence removal by frame standard deviation thresholding.

use super::{frame::frame_starts, AudioBuffer, DspError, FrameSpec};

/// Voiced regions of a recording as `(start_sample, end_sample)` pairs.
///
/// A frame is silent iff `std(frame) < threshold_ratio * mean(std over all
/// frames)`; the comparison is strict, so a recording with identical
/// nonzero frame deviations everywhere stays fully voiced. Exactly flat
/// frames (std of zero) are always silent, which makes an all-zeros
/// recording come back empty. Adjacent voiced frames are merged. Frames
/// are taken from the raw signal without windowing. A recording shorter
/// than one frame or with no voiced frames yields an empty list.
pub fn remove_silence(
    buffer: &AudioBuffer,
    spec: &FrameSpec,
    threshold_ratio: f64,
) -> Result<Vec<(usize, usize)>, DspError> {
    if !(threshold_ratio > 0.0) {
        return Err(DspError::InvalidSpectrogram(format!(
            "silence threshold ratio must be positive, got {threshold_ratio}"
        )));
    }
    let starts = frame_starts(buffer.len(), spec);
    if starts.is_empty() {
        return Ok(Vec::new());
    }
    let samples = buffer.samples();
    let stds: Vec<f64> = starts
        .iter()
        .map(|&s| frame_std(&samples[s..s + spec.frame_len_samples]))
        .collect();
    let mean_std = stds.iter().sum::<f64>() / stds.len() as f64;
    let threshold = threshold_ratio * mean_std;

    let mut regions: Vec<(usize, usize)> = Vec::new();
    for (k, &start) in starts.iter().enumerate() {
        if stds[k] < threshold || stds[k] == 0.0 {
            continue;
        }
        let end = start + spec.frame_len_samples;
        match regions.last_mut() {
            // Voiced frames merge when they touch or overlap.
            Some(last) if start <= last.1 => last.1 = end,
            _ => regions.push((start, end)),
        }
    }
    Ok(regions)
}

/// Concatenate the voiced regions of a buffer into a new buffer.
pub fn extract_voiced(buffer: &AudioBuffer, regions: &[(usize, usize)]) -> AudioBuffer {
    let samples = buffer.samples();
    let mut out = Vec::with_capacity(regions.iter().map(|(s, e)| e - s).sum());
    for &(start, end) in regions {
        out.extend_from_slice(&samples[start..end]);
    }
    AudioBuffer::new(out, buffer.sample_rate_hz()).expect("voiced slice of a valid buffer")
}

fn frame_std(frame: &[f64]) -> f64 {
    let n = frame.len() as f64;
    let mean = frame.iter().sum::<f64>() / n;
    let var = frame.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    var.sqrt()
}

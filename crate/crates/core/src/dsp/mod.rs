//! Deterministic signal pipeline: resampling, framing, windowing, FFT,
//! silence removal, and acoustic feature extraction.
//!
//! All operations are pure functions of their inputs and safe to call
//! concurrently.

mod features;
mod fft;
mod frame;
mod resample;
mod silence;
mod spectrogram;
mod wav;

pub use features::{
    crest_factor, energy, extract_frame_features, mfcc, mfcc_deltas, write_feature_dump,
    zero_crossing_rate, FrameFeatures, FRAME_FEATURE_DIM, LOG_FLOOR, MEL_FILTERS, MFCC_STATIC,
    MFCC_WITH_DELTAS,
};
pub use fft::fft_magnitude;
pub use frame::{frame_signal, frame_starts, window_values};
pub use resample::resample;
pub use silence::{extract_voiced, remove_silence};
pub use spectrogram::{spectrogram, Spectrogram};
pub use wav::{read_wav, read_wav_bytes, write_wav};

use thiserror::Error;

/// Working sample rate of the pipeline. All recordings are resampled to
/// this rate on load.
pub const PIPELINE_SAMPLE_RATE_HZ: u32 = 16_000;

/// Analysis sub-frame length in samples (64 ms at 16 kHz).
pub const SUBFRAME_LEN: usize = 1024;

/// Analysis sub-frame hop in samples (50% overlap).
pub const SUBFRAME_HOP: usize = 512;

/// Detection frame length in seconds.
pub const DETECTION_FRAME_S: f64 = 0.320;

#[derive(Debug, Error)]
pub enum DspError {
    #[error("input contains non-finite samples")]
    NonFiniteInput,
    #[error("sample rate must be positive")]
    InvalidSampleRate,
    #[error("input too short: {got} samples, need at least {need}")]
    InputTooShort { got: usize, need: usize },
    #[error("frame length {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("invalid frame spec: hop {hop} exceeds frame length {len}")]
    InvalidFrameSpec { len: usize, hop: usize },
    #[error("{path}: {reason}")]
    InvalidWav { path: String, reason: String },
    #[error("invalid spectrogram data: {0}")]
    InvalidSpectrogram(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// Raw mono PCM samples with their sample rate.
#[derive(Debug, Clone, PartialEq)]
pub struct AudioBuffer {
    samples: Vec<f64>,
    sample_rate_hz: u32,
}

impl AudioBuffer {
    /// Wrap samples, validating that the rate is positive and every sample
    /// is finite.
    pub fn new(samples: Vec<f64>, sample_rate_hz: u32) -> Result<Self, DspError> {
        if sample_rate_hz == 0 {
            return Err(DspError::InvalidSampleRate);
        }
        if samples.iter().any(|s| !s.is_finite()) {
            return Err(DspError::NonFiniteInput);
        }
        Ok(Self {
            samples,
            sample_rate_hz,
        })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn sample_rate_hz(&self) -> u32 {
        self.sample_rate_hz
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn duration_s(&self) -> f64 {
        self.samples.len() as f64 / self.sample_rate_hz as f64
    }
}

/// Analysis window shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Window {
    Hamming,
    Rectangular,
}

/// Framing parameters: frame length, hop, and window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameSpec {
    pub frame_len_samples: usize,
    pub hop_samples: usize,
    pub window: Window,
}

impl FrameSpec {
    pub fn new(
        frame_len_samples: usize,
        hop_samples: usize,
        window: Window,
    ) -> Result<Self, DspError> {
        if frame_len_samples == 0 || hop_samples == 0 || hop_samples > frame_len_samples {
            return Err(DspError::InvalidFrameSpec {
                len: frame_len_samples,
                hop: hop_samples,
            });
        }
        Ok(Self {
            frame_len_samples,
            hop_samples,
            window,
        })
    }

    /// 320 ms detection frames with 50% overlap at the given rate
    /// (5120 samples / 2560 hop at 16 kHz).
    pub fn detection(sample_rate_hz: u32) -> Self {
        let len = (DETECTION_FRAME_S * sample_rate_hz as f64).round() as usize;
        Self {
            frame_len_samples: len,
            hop_samples: len / 2,
            window: Window::Rectangular,
        }
    }

    /// 1024-sample Hamming sub-frames with 50% overlap, used for all
    /// feature extraction.
    pub fn subframe() -> Self {
        Self {
            frame_len_samples: SUBFRAME_LEN,
            hop_samples: SUBFRAME_HOP,
            window: Window::Hamming,
        }
    }

    pub fn frame_duration_s(&self, sample_rate_hz: u32) -> f64 {
        self.frame_len_samples as f64 / sample_rate_hz as f64
    }

    pub fn hop_duration_s(&self, sample_rate_hz: u32) -> f64 {
        self.hop_samples as f64 / sample_rate_hz as f64
    }
}

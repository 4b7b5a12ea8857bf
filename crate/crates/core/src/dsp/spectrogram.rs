//! Log-magnitude spectrograms and their text serialization.

use std::io::{BufRead, Write};

use super::fft::fft_magnitude;
use super::frame::frame_signal;
use super::{AudioBuffer, DspError, FrameSpec, Window, LOG_FLOOR};

/// Log-magnitude time-frequency matrix, `n_freq x n_frames`, frequency-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrogram {
    data: Vec<f64>,
    n_freq: usize,
    n_frames: usize,
    pub frame_spec: FrameSpec,
    pub origin_time_s: f64,
    pub sample_rate_hz: u32,
}

impl Spectrogram {
    pub fn from_parts(
        data: Vec<f64>,
        n_freq: usize,
        n_frames: usize,
        frame_spec: FrameSpec,
        origin_time_s: f64,
        sample_rate_hz: u32,
    ) -> Result<Self, DspError> {
        if data.len() != n_freq * n_frames || n_frames == 0 || n_freq == 0 {
            return Err(DspError::InvalidSpectrogram(format!(
                "data length {} does not match {n_freq} x {n_frames}",
                data.len()
            )));
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(DspError::NonFiniteInput);
        }
        Ok(Self {
            data,
            n_freq,
            n_frames,
            frame_spec,
            origin_time_s,
            sample_rate_hz,
        })
    }

    pub fn n_freq(&self) -> usize {
        self.n_freq
    }

    pub fn n_frames(&self) -> usize {
        self.n_frames
    }

    pub fn at(&self, freq_bin: usize, frame: usize) -> f64 {
        self.data[freq_bin * self.n_frames + frame]
    }

    /// Flat frequency-major data (`freq * n_frames + frame`).
    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn column(&self, frame: usize) -> Vec<f64> {
        (0..self.n_freq).map(|f| self.at(f, frame)).collect()
    }

    /// Duration covered by the frames, hop-aligned.
    pub fn end_time_s(&self) -> f64 {
        self.origin_time_s
            + ((self.n_frames - 1) * self.frame_spec.hop_samples
                + self.frame_spec.frame_len_samples) as f64
                / self.sample_rate_hz as f64
    }

    /// Serialize as delimited text: a two-line header followed by one row
    /// of `n_freq` values per frame.
    pub fn write_text(&self, out: &mut impl Write) -> Result<(), DspError> {
        let window = match self.frame_spec.window {
            Window::Hamming => "hamming",
            Window::Rectangular => "rectangular",
        };
        writeln!(out, "CWSPEC 1")?;
        writeln!(
            out,
            "{} {} {} {} {} {} {}",
            self.n_freq,
            self.n_frames,
            self.frame_spec.frame_len_samples,
            self.frame_spec.hop_samples,
            window,
            self.sample_rate_hz,
            self.origin_time_s
        )?;
        for t in 0..self.n_frames {
            let row: Vec<String> = (0..self.n_freq).map(|f| self.at(f, t).to_string()).collect();
            writeln!(out, "{}", row.join(" "))?;
        }
        Ok(())
    }

    pub fn read_text(input: &mut impl BufRead) -> Result<Self, DspError> {
        let bad = |msg: &str| DspError::InvalidSpectrogram(msg.to_string());
        let mut lines = input.lines();
        let magic = lines.next().ok_or_else(|| bad("empty input"))??;
        if magic.trim() != "CWSPEC 1" {
            return Err(bad(&format!("unrecognized header line: {magic:?}")));
        }
        let header = lines.next().ok_or_else(|| bad("missing dimension line"))??;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 7 {
            return Err(bad("dimension line must have 7 fields"));
        }
        let parse = |s: &str| -> Result<usize, DspError> {
            s.parse().map_err(|_| bad(&format!("bad integer {s:?}")))
        };
        let n_freq = parse(fields[0])?;
        let n_frames = parse(fields[1])?;
        let frame_len = parse(fields[2])?;
        let hop = parse(fields[3])?;
        let window = match fields[4] {
            "hamming" => Window::Hamming,
            "rectangular" => Window::Rectangular,
            other => return Err(bad(&format!("unknown window {other:?}"))),
        };
        let sample_rate: u32 = fields[5]
            .parse()
            .map_err(|_| bad(&format!("bad sample rate {:?}", fields[5])))?;
        let origin: f64 = fields[6]
            .parse()
            .map_err(|_| bad(&format!("bad origin time {:?}", fields[6])))?;

        let mut data = vec![0.0; n_freq * n_frames];
        for t in 0..n_frames {
            let line = lines
                .next()
                .ok_or_else(|| bad(&format!("missing frame row {t}")))??;
            let values: Vec<&str> = line.split_whitespace().collect();
            if values.len() != n_freq {
                return Err(bad(&format!(
                    "frame row {t} has {} values, expected {n_freq}",
                    values.len()
                )));
            }
            for (f, v) in values.iter().enumerate() {
                data[f * n_frames + t] = v
                    .parse()
                    .map_err(|_| bad(&format!("bad value {v:?} in frame row {t}")))?;
            }
        }
        Self::from_parts(
            data,
            n_freq,
            n_frames,
            FrameSpec::new(frame_len, hop, window)?,
            origin,
            sample_rate,
        )
    }
}

/// Spectrogram of a buffer: column `t` holds `ln(|FFT(frame t)| + floor)`.
/// The frame length must be a power of two so the bin count equals
/// `frame_len/2 + 1`.
pub fn spectrogram(buffer: &AudioBuffer, spec: &FrameSpec) -> Result<Spectrogram, DspError> {
    if !spec.frame_len_samples.is_power_of_two() {
        return Err(DspError::NotPowerOfTwo(spec.frame_len_samples));
    }
    let frames = frame_signal(buffer, spec)?;
    let n_freq = spec.frame_len_samples / 2 + 1;
    let n_frames = frames.len();
    let mut data = vec![0.0; n_freq * n_frames];
    for (t, frame) in frames.iter().enumerate() {
        let mags = fft_magnitude(frame)?;
        for (f, &m) in mags.iter().enumerate() {
            data[f * n_frames + t] = (m + LOG_FLOOR).ln();
        }
    }
    Spectrogram::from_parts(data, n_freq, n_frames, *spec, 0.0, buffer.sample_rate_hz())
}

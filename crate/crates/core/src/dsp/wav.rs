//! Minimal RIFF/WAV reader and writer for 16-bit signed PCM.

use std::path::Path;

use super::{AudioBuffer, DspError};

/// Read a WAV file into a mono buffer at its native sample rate.
///
/// Accepts PCM 16-bit signed little-endian, mono or multi-channel (the
/// first channel is kept). Errors name the offending file.
pub fn read_wav(path: &Path) -> Result<AudioBuffer, DspError> {
    let bytes = std::fs::read(path).map_err(|e| DspError::InvalidWav {
        path: path.display().to_string(),
        reason: e.to_string(),
    })?;
    read_wav_bytes(&bytes, &path.display().to_string())
}

/// Parse WAV bytes; `name` is used in error messages.
pub fn read_wav_bytes(bytes: &[u8], name: &str) -> Result<AudioBuffer, DspError> {
    let fail = |reason: &str| DspError::InvalidWav {
        path: name.to_string(),
        reason: reason.to_string(),
    };

    if bytes.len() < 12 || &bytes[0..4] != b"RIFF" || &bytes[8..12] != b"WAVE" {
        return Err(fail("not a RIFF/WAVE file"));
    }

    let mut pos = 12;
    let mut format: Option<(u16, u16, u32, u16)> = None; // codec, channels, rate, bits
    let mut data: Option<&[u8]> = None;
    while pos + 8 <= bytes.len() {
        let id = &bytes[pos..pos + 4];
        let size = u32::from_le_bytes(bytes[pos + 4..pos + 8].try_into().unwrap()) as usize;
        let body_start = pos + 8;
        if body_start + size > bytes.len() {
            return Err(fail("chunk extends past end of file"));
        }
        let body = &bytes[body_start..body_start + size];
        match id {
            b"fmt " => {
                if size < 16 {
                    return Err(fail("fmt chunk too small"));
                }
                format = Some((
                    u16::from_le_bytes(body[0..2].try_into().unwrap()),
                    u16::from_le_bytes(body[2..4].try_into().unwrap()),
                    u32::from_le_bytes(body[4..8].try_into().unwrap()),
                    u16::from_le_bytes(body[14..16].try_into().unwrap()),
                ));
            }
            b"data" => data = Some(body),
            _ => {}
        }
        // Chunks are word-aligned.
        pos = body_start + size + (size & 1);
    }

    let (codec, channels, rate, bits) = format.ok_or_else(|| fail("missing fmt chunk"))?;
    if codec != 1 {
        return Err(fail(&format!("unsupported codec {codec}, need PCM")));
    }
    if bits != 16 {
        return Err(fail(&format!("unsupported bit depth {bits}, need 16")));
    }
    if channels == 0 {
        return Err(fail("zero channels"));
    }
    if rate == 0 {
        return Err(fail("zero sample rate"));
    }
    let data = data.ok_or_else(|| fail("missing data chunk"))?;

    let stride = 2 * channels as usize;
    let n = data.len() / stride;
    let samples: Vec<f64> = (0..n)
        .map(|i| {
            let off = i * stride;
            i16::from_le_bytes(data[off..off + 2].try_into().unwrap()) as f64 / 32768.0
        })
        .collect();
    AudioBuffer::new(samples, rate)
}

/// Write a mono 16-bit PCM WAV file. Samples are clamped to [-1, 1].
pub fn write_wav(path: &Path, buffer: &AudioBuffer) -> Result<(), DspError> {
    let n = buffer.len();
    let data_size = (n * 2) as u32;
    let rate = buffer.sample_rate_hz();
    let mut out = Vec::with_capacity(44 + n * 2);
    out.extend_from_slice(b"RIFF");
    out.extend_from_slice(&(36 + data_size).to_le_bytes());
    out.extend_from_slice(b"WAVE");
    out.extend_from_slice(b"fmt ");
    out.extend_from_slice(&16u32.to_le_bytes());
    out.extend_from_slice(&1u16.to_le_bytes()); // PCM
    out.extend_from_slice(&1u16.to_le_bytes()); // mono
    out.extend_from_slice(&rate.to_le_bytes());
    out.extend_from_slice(&(rate * 2).to_le_bytes()); // byte rate
    out.extend_from_slice(&2u16.to_le_bytes()); // block align
    out.extend_from_slice(&16u16.to_le_bytes());
    out.extend_from_slice(b"data");
    out.extend_from_slice(&data_size.to_le_bytes());
    for &s in buffer.samples() {
        let v = (s.clamp(-1.0, 1.0) * 32767.0).round() as i16;
        out.extend_from_slice(&v.to_le_bytes());
    }
    std::fs::write(path, out)?;
    Ok(())
}

//! Streaming cough detection and disease-similarity screening for
//! conversational audio.
//!
//! The pipeline ingests 16-bit PCM WAV audio, resamples it to 16 kHz,
//! extracts per-frame acoustic features (MFCC with deltas, zero-crossing
//! rate, crest factor, energy), labels detection frames cough/non-cough
//! with a multi-scale CNN feature extractor feeding a Gaussian-kernel SVM,
//! and scores detected cough events against a bank of labeled disease
//! exemplars using attentional similarity over variable-length spectrogram
//! embeddings. Session-level results are assembled into structured
//! encounter records with rule-based alerts.
//!
//! Module map:
//! - [`dsp`] — deterministic signal pipeline (resampling, framing, FFT,
//!   silence removal, feature extraction, spectrograms, WAV I/O)
//! - [`nn`] — dense-tensor runtime with reverse-mode autodiff, the layer
//!   set used by the detector and classifier, SGD, weight serialization
//! - [`detector`] — multi-scale CNN + SVM cough event detector
//! - [`fewshot`] — episodic c-way k-shot training and attentional
//!   similarity classification
//! - [`records`] — encounter records, risk scoring, and the rules engine
//! - [`eval`] — cross-validation driver and confusion metrics
//! - [`synth`] — synthetic corpora for demos and desk-scale experiments
//! - [`cli`] — command-line entry points

pub mod cli;
pub mod detector;
pub mod dsp;
pub mod eval;
pub mod fewshot;
pub mod nn;
pub mod records;
pub mod synth;

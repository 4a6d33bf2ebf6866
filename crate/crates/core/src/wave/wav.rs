//! Minimal RIFF/WAVE codec: 16- and 24-bit PCM and 32-bit IEEE float.

use std::fs;
use std::io;
use std::path::Path;

use super::Wave;
use crate::error::{Error, Result};

const TAG_PCM: u16 = 0x0001;
const TAG_FLOAT: u16 = 0x0003;
const TAG_EXTENSIBLE: u16 = 0xFFFE;

/// Sample encoding of a WAV data chunk.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Encoding {
    Pcm16,
    Pcm24,
    Float32,
}

impl Encoding {
    pub fn bits(self) -> u16 {
        match self {
            Encoding::Pcm16 => 16,
            Encoding::Pcm24 => 24,
            Encoding::Float32 => 32,
        }
    }

    pub fn format_tag(self) -> u16 {
        match self {
            Encoding::Pcm16 | Encoding::Pcm24 => TAG_PCM,
            Encoding::Float32 => TAG_FLOAT,
        }
    }

    fn bytes(self) -> usize {
        usize::from(self.bits() / 8)
    }

    fn from_tag(tag: u16, bits: u16) -> Option<Self> {
        match (tag, bits) {
            (TAG_PCM, 16) => Some(Encoding::Pcm16),
            (TAG_PCM, 24) => Some(Encoding::Pcm24),
            (TAG_FLOAT, 32) => Some(Encoding::Float32),
            _ => None,
        }
    }
}

impl std::str::FromStr for Encoding {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pcm16" => Ok(Encoding::Pcm16),
            "pcm24" => Ok(Encoding::Pcm24),
            "float32" => Ok(Encoding::Float32),
            other => Err(Error::InvalidArgument(format!(
                "unknown encoding {other:?} (expected pcm16, pcm24 or float32)"
            ))),
        }
    }
}

/// Header-level description of a WAV file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WavFormat {
    pub encoding: Encoding,
    pub fs: u32,
    pub channels: u16,
}

/// Outcome of [`save_wav`]: samples outside [-1, 1] that were clamped.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SaveReport {
    pub clipped: usize,
}

pub fn load_wav(path: impl AsRef<Path>) -> Result<Wave> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| match e.kind() {
        io::ErrorKind::NotFound => Error::FileNotFound(path.to_path_buf()),
        _ => Error::Io(e),
    })?;
    decode(&bytes)
}

pub fn save_wav(wave: &Wave, path: impl AsRef<Path>, encoding: Encoding) -> Result<SaveReport> {
    let (bytes, report) = encode(wave, encoding)?;
    fs::write(path, bytes)?;
    Ok(report)
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedRiff(msg.into())
}

fn u16_at(b: &[u8], at: usize) -> u16 {
    u16::from_le_bytes([b[at], b[at + 1]])
}

fn u32_at(b: &[u8], at: usize) -> u32 {
    u32::from_le_bytes([b[at], b[at + 1], b[at + 2], b[at + 3]])
}

pub(crate) fn parse_format(body: &[u8]) -> Result<WavFormat> {
    if body.len() < 16 {
        return Err(malformed(format!(
            "fmt chunk is {} bytes, need at least 16",
            body.len()
        )));
    }
    let mut tag = u16_at(body, 0);
    let channels = u16_at(body, 2);
    let fs = u32_at(body, 4);
    let block_align = u16_at(body, 12);
    let bits = u16_at(body, 14);
    if tag == TAG_EXTENSIBLE {
        if body.len() < 40 {
            return Err(malformed("extensible fmt chunk shorter than 40 bytes"));
        }
        tag = u16_at(body, 24);
    }
    let encoding = Encoding::from_tag(tag, bits).ok_or(Error::UnsupportedEncoding { tag, bits })?;
    if channels == 0 {
        return Err(malformed("fmt chunk declares zero channels"));
    }
    if fs == 0 {
        return Err(malformed("fmt chunk declares a zero sampling rate"));
    }
    if usize::from(block_align) != usize::from(channels) * encoding.bytes() {
        return Err(malformed(format!(
            "block align {block_align} inconsistent with {channels} channels of {bits}-bit samples"
        )));
    }
    Ok(WavFormat { encoding, fs, channels })
}

fn decode(bytes: &[u8]) -> Result<Wave> {
    if bytes.len() < 12 || &bytes[0..4] != b"RIFF" || &bytes[8..12] != b"WAVE" {
        return Err(malformed("missing RIFF/WAVE header"));
    }
    let riff_end = 8 + u32_at(bytes, 4) as usize;
    if riff_end > bytes.len() {
        return Err(malformed(format!(
            "RIFF size claims {riff_end} bytes but file has {}",
            bytes.len()
        )));
    }

    let mut format = None;
    let mut data = None;
    let mut at = 12;
    while at < riff_end {
        if riff_end - at < 8 {
            return Err(malformed(format!("truncated chunk header at offset {at}")));
        }
        let id = &bytes[at..at + 4];
        let size = u32_at(bytes, at + 4) as usize;
        let body_start = at + 8;
        let body_end = body_start
            .checked_add(size)
            .filter(|&end| end <= riff_end)
            .ok_or_else(|| {
                malformed(format!(
                    "chunk {:?} at offset {at} claims {size} bytes past the end of the RIFF body",
                    String::from_utf8_lossy(id)
                ))
            })?;
        let body = &bytes[body_start..body_end];
        match id {
            b"fmt " => format = Some(parse_format(body)?),
            b"data" => data = Some(body),
            _ => {}
        }
        // chunks are word aligned; the pad byte may be missing on the last chunk
        at = body_end + (size & 1);
    }

    let format = format.ok_or_else(|| malformed("no fmt chunk"))?;
    let data = data.ok_or_else(|| malformed("no data chunk"))?;
    let width = format.encoding.bytes();
    let channels = usize::from(format.channels);
    let block = width * channels;
    if data.len() % block != 0 {
        return Err(malformed(format!(
            "data chunk of {} bytes is not a whole number of {block}-byte frames",
            data.len()
        )));
    }
    let frames = data.len() / block;

    let mut planar = vec![0.0; frames * channels];
    for (frame, chunk) in data.chunks_exact(block).enumerate() {
        for (ch, raw) in chunk.chunks_exact(width).enumerate() {
            planar[ch * frames + frame] = decode_sample(format.encoding, raw);
        }
    }
    Wave::from_planar(planar, channels, format.fs)
}

fn decode_sample(encoding: Encoding, raw: &[u8]) -> f64 {
    match encoding {
        Encoding::Pcm16 => f64::from(i16::from_le_bytes([raw[0], raw[1]])) / 32768.0,
        Encoding::Pcm24 => {
            // sign-extend through the top byte of an i32
            let v = i32::from_le_bytes([0, raw[0], raw[1], raw[2]]) >> 8;
            f64::from(v) / 8_388_608.0
        }
        Encoding::Float32 => f64::from(f32::from_le_bytes([raw[0], raw[1], raw[2], raw[3]])),
    }
}

fn quantize(x: f64, bits: u16, report: &mut SaveReport) -> i32 {
    if !(-1.0..=1.0).contains(&x) {
        report.clipped += 1;
    }
    let full = f64::from(1u32 << (bits - 1));
    let v = (x.clamp(-1.0, 1.0) * full).round();
    v.clamp(-full, full - 1.0) as i32
}

pub(crate) fn encode(wave: &Wave, encoding: Encoding) -> Result<(Vec<u8>, SaveReport)> {
    let channels = u16::try_from(wave.channels())
        .map_err(|_| Error::InvalidArgument(format!("{} channels do not fit a WAV header", wave.channels())))?;
    let width = encoding.bytes();
    let block = width * wave.channels();
    let data_len = block * wave.frames();
    let data_len32 = u32::try_from(data_len)
        .ok()
        .filter(|&n| n <= u32::MAX - 64)
        .ok_or_else(|| Error::InvalidArgument(format!("{data_len} bytes of audio exceed the WAV size limit")))?;
    let pad = data_len & 1;

    let mut out = Vec::with_capacity(44 + data_len + pad);
    out.extend_from_slice(b"RIFF");
    out.extend_from_slice(&(36 + data_len32 + pad as u32).to_le_bytes());
    out.extend_from_slice(b"WAVE");
    out.extend_from_slice(b"fmt ");
    out.extend_from_slice(&16u32.to_le_bytes());
    out.extend_from_slice(&encoding.format_tag().to_le_bytes());
    out.extend_from_slice(&channels.to_le_bytes());
    out.extend_from_slice(&wave.fs().to_le_bytes());
    out.extend_from_slice(&(wave.fs() * block as u32).to_le_bytes());
    out.extend_from_slice(&(block as u16).to_le_bytes());
    out.extend_from_slice(&encoding.bits().to_le_bytes());
    out.extend_from_slice(b"data");
    out.extend_from_slice(&data_len32.to_le_bytes());

    let mut report = SaveReport::default();
    for frame in 0..wave.frames() {
        for ch in 0..wave.channels() {
            let x = wave.channel(ch)[frame];
            match encoding {
                Encoding::Pcm16 => {
                    let v = quantize(x, 16, &mut report) as i16;
                    out.extend_from_slice(&v.to_le_bytes());
                }
                Encoding::Pcm24 => {
                    let v = quantize(x, 24, &mut report);
                    out.extend_from_slice(&v.to_le_bytes()[..3]);
                }
                Encoding::Float32 => out.extend_from_slice(&(x as f32).to_le_bytes()),
            }
        }
    }
    if pad == 1 {
        out.push(0);
    }
    Ok((out, report))
}

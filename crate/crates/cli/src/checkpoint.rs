//! Append-only JSON-lines checkpoints with a crc32 per line.
//!
//! Line 1 is a header naming the scan; every further line is
//! `{"crc":N,"rec":{...}}` with `N` the crc32 of the raw `rec` text. A torn
//! final line (no newline) is dropped on resume; any other bad line is
//! corruption.

use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;

use crate::record::Record;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Header {
    pub kind: String,
    pub min: u64,
    pub max: u64,
    pub version: u32,
}

pub const VERSION: u32 = 1;

#[derive(Debug)]
pub enum CheckpointError {
    Io(io::Error),
    Corrupt { line: usize, why: String },
}

impl std::fmt::Display for CheckpointError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CheckpointError::Io(e) => write!(f, "i/o error: {e}"),
            CheckpointError::Corrupt { line, why } => write!(f, "corrupt checkpoint at line {line}: {why}"),
        }
    }
}

impl From<io::Error> for CheckpointError {
    fn from(e: io::Error) -> Self {
        CheckpointError::Io(e)
    }
}

#[derive(Serialize, Deserialize)]
struct Line<'a> {
    crc: u32,
    #[serde(borrow)]
    rec: &'a RawValue,
}

pub fn encode_line(rec: &Record) -> String {
    let raw = serde_json::to_string(rec).expect("records serialize");
    format!("{{\"crc\":{},\"rec\":{raw}}}\n", crc32fast::hash(raw.as_bytes()))
}

fn decode_line(text: &str, line: usize) -> Result<Record, CheckpointError> {
    let corrupt = |why: String| CheckpointError::Corrupt { line, why };
    let parsed: Line = serde_json::from_str(text).map_err(|e| corrupt(e.to_string()))?;
    if crc32fast::hash(parsed.rec.get().as_bytes()) != parsed.crc {
        return Err(corrupt("crc mismatch".into()));
    }
    serde_json::from_str(parsed.rec.get()).map_err(|e| corrupt(e.to_string()))
}

/// Contents of a checkpoint file.
#[derive(Debug, Default)]
pub struct Loaded {
    pub header: Option<Header>,
    pub records: Vec<Record>,
    /// Byte length of the intact prefix.
    pub valid_len: u64,
    pub torn_tail: bool,
}

pub fn load(path: &Path) -> Result<Loaded, CheckpointError> {
    let mut reader = BufReader::new(File::open(path)?);
    let mut out = Loaded::default();
    let mut buf = String::new();
    let mut lineno = 0;
    loop {
        buf.clear();
        let n = reader.read_line(&mut buf)?;
        if n == 0 {
            break;
        }
        lineno += 1;
        if !buf.ends_with('\n') {
            out.torn_tail = true;
            break;
        }
        let text = &buf[..buf.len() - 1];
        if lineno == 1 {
            out.header = Some(serde_json::from_str(text).map_err(|e| CheckpointError::Corrupt {
                line: 1,
                why: format!("bad header: {e}"),
            })?);
        } else {
            out.records.push(decode_line(text, lineno)?);
        }
        out.valid_len += n as u64;
    }
    Ok(out)
}

/// Single writer appending whole batches of records.
pub struct Writer {
    file: File,
    path: PathBuf,
}

impl Writer {
    /// Opens `path` for appending after its intact prefix, writing the header
    /// if the file is new or empty.
    pub fn open(path: &Path, header: &Header, loaded: &Loaded) -> Result<Self, CheckpointError> {
        let mut file = OpenOptions::new().create(true).read(true).write(true).truncate(false).open(path)?;
        file.set_len(loaded.valid_len)?;
        file.seek(SeekFrom::End(0))?;
        if loaded.header.is_none() {
            file.set_len(0)?;
            let mut h = serde_json::to_string(header).expect("header serializes");
            h.push('\n');
            file.write_all(h.as_bytes())?;
            file.sync_data()?;
        }
        Ok(Self {
            file,
            path: path.to_path_buf(),
        })
    }

    pub fn append(&mut self, records: &[Record]) -> Result<(), CheckpointError> {
        let mut chunk = String::new();
        for r in records {
            chunk.push_str(&encode_line(r));
        }
        self.file.write_all(chunk.as_bytes())?;
        self.file.sync_data()?;
        Ok(())
    }

    pub fn path(&self) -> &Path {
        &self.path
    }
}

//! The CSV trace: one row per breakpoint or stride mark of each traced
//! neuron.
//!
//! Voltages are carried at the file's own precision (9 significant digits),
//! so a written file parses back to exactly the rows it came from and equal
//! runs produce byte-identical files.

use std::io::{self, BufRead, Write};

use neuron_core::Ps;
use thiserror::Error;

pub const TRACE_HEADER: &str = "time_ps,neuron_id,v_syn,v_mem,exc,inh,rst,aer_active,spike";

#[derive(Debug, Error)]
pub enum TraceError {
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),

    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRow {
    pub time_ps: Ps,
    pub neuron_id: u32,
    pub v_syn: f64,
    pub v_mem: f64,
    pub exc: bool,
    pub inh: bool,
    pub rst: bool,
    pub aer_active: bool,
    pub spike: bool,
}

/// Rounds a voltage to the 9 significant digits the file format carries.
pub fn quantize(v: f64) -> f64 {
    format!("{v:.8e}").parse().expect("formatted float")
}

impl TraceRow {
    fn write_to(&self, out: &mut impl Write) -> io::Result<()> {
        writeln!(
            out,
            "{},{},{:.8e},{:.8e},{},{},{},{},{}",
            self.time_ps,
            self.neuron_id,
            self.v_syn,
            self.v_mem,
            u8::from(self.exc),
            u8::from(self.inh),
            u8::from(self.rst),
            u8::from(self.aer_active),
            u8::from(self.spike),
        )
    }

    fn parse(line: &str, line_no: usize) -> Result<Self, TraceError> {
        let bad = |message: &str| TraceError::Malformed {
            line: line_no,
            message: message.to_string(),
        };
        let mut fields = line.split(',');
        let mut next = || fields.next().ok_or_else(|| bad("missing field"));
        let time_ps = next()?.parse().map_err(|_| bad("bad time_ps"))?;
        let neuron_id = next()?.parse().map_err(|_| bad("bad neuron_id"))?;
        let v_syn = next()?.parse().map_err(|_| bad("bad v_syn"))?;
        let v_mem = next()?.parse().map_err(|_| bad("bad v_mem"))?;
        let mut flag = |name: &str| -> Result<bool, TraceError> {
            match next()? {
                "0" => Ok(false),
                "1" => Ok(true),
                _ => Err(bad(&format!("bad flag {name}"))),
            }
        };
        let exc = flag("exc")?;
        let inh = flag("inh")?;
        let rst = flag("rst")?;
        let aer_active = flag("aer_active")?;
        let spike = flag("spike")?;
        Ok(TraceRow {
            time_ps,
            neuron_id,
            v_syn,
            v_mem,
            exc,
            inh,
            rst,
            aer_active,
            spike,
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Trace {
    pub rows: Vec<TraceRow>,
}

impl Trace {
    pub fn write_csv(&self, out: &mut impl Write) -> io::Result<()> {
        writeln!(out, "{TRACE_HEADER}")?;
        for row in &self.rows {
            row.write_to(out)?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("write to memory");
        String::from_utf8(buf).expect("ascii output")
    }

    pub fn parse_csv(reader: impl BufRead) -> Result<Self, TraceError> {
        let mut rows = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            if idx == 0 {
                if line != TRACE_HEADER {
                    return Err(TraceError::Malformed {
                        line: 1,
                        message: format!("unexpected header {line:?}"),
                    });
                }
                continue;
            }
            if line.is_empty() {
                continue;
            }
            rows.push(TraceRow::parse(&line, idx + 1)?);
        }
        Ok(Trace { rows })
    }
}

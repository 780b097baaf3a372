//! JSON-lines trace output.

use std::io::{self, Write};

use polydescent::{SolverTrace, TraceRecord};
use serde::{Deserialize, Serialize};

/// One trace line. Step fields are `null` on the final record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceLine {
    pub iter: usize,
    pub re: f64,
    pub im: f64,
    pub abs_p: f64,
    #[serde(rename = "F")]
    pub f: f64,
    pub k: Option<usize>,
    pub theta: Option<f64>,
    pub alpha: Option<f64>,
    pub backtracks: Option<usize>,
}

impl From<&TraceRecord> for TraceLine {
    fn from(r: &TraceRecord) -> Self {
        Self {
            iter: r.iter,
            re: r.z.re,
            im: r.z.im,
            abs_p: r.abs_p,
            f: r.f,
            k: r.k,
            theta: r.theta,
            alpha: r.alpha,
            backtracks: r.backtracks,
        }
    }
}

pub fn write_trace<W: Write + ?Sized>(out: &mut W, trace: &SolverTrace) -> io::Result<()> {
    for record in &trace.records {
        serde_json::to_writer(&mut *out, &TraceLine::from(record))?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

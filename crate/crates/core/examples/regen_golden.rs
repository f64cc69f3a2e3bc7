//! Regenerates `tests/golden/phases.json` from the full 2^N simulation.
//!
//!     cargo run --release -p exchange-w --example regen_golden

use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use exchange_w::io::write_phase_records;
use exchange_w::verification::phase_record_full;
use exchange_w::{Anisotropy, Protocol};

pub const LAMBDAS: [f64; 4] = [0.0, 0.5, 1.0, 2.0];

fn main() -> exchange_w::Result<()> {
    let mut records = Vec::new();
    for protocol in Protocol::ALL {
        for lam in LAMBDAS {
            for n in (3..=16).filter(|&n| protocol.supports(n)) {
                records.push(phase_record_full(protocol, n, Anisotropy::new(lam)?)?);
            }
        }
    }
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/phases.json");
    write_phase_records(BufWriter::new(File::create(&path)?), &records)?;
    println!("wrote {} records to {}", records.len(), path.display());
    Ok(())
}

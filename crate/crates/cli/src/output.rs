use std::io::Write;

use serde::Serialize;

/// Writes `value` as one JSON line on stdout. Keys follow struct field
/// order; non-finite numbers print as `null`.
pub fn emit<T: Serialize>(value: &T) -> anyhow::Result<()> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer(&mut out, value)?;
    out.write_all(b"\n")?;
    Ok(())
}

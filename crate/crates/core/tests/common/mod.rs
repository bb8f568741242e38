#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::{Mutex, MutexGuard};

use nlem::denoise::Image;
use nlem::imgio::read_pgm;

/// Directory holding canonical test images (`barbara.pgm`, `house.pgm`, ...).
pub const CANONICAL_ENV: &str = "NLEM_TEST_IMAGES";

static SERIAL: Mutex<()> = Mutex::new(());

/// Runs timing-sensitive tests one at a time.
pub fn serial() -> MutexGuard<'static, ()> {
    SERIAL.lock().unwrap_or_else(|e| e.into_inner())
}

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data")
}

/// The bundled 512x512 cameraman image.
pub fn camera() -> Image {
    read_pgm(data_dir().join("camera.pgm")).expect("bundled camera.pgm")
}

pub fn canonical(name: &str) -> Option<Image> {
    let dir = std::env::var_os(CANONICAL_ENV)?;
    let path = PathBuf::from(dir).join(format!("{name}.pgm"));
    path.exists()
        .then(|| read_pgm(&path).expect("canonical image"))
}

/// Prints the one-line verdict for an acceptance criterion and fails the test
/// when it does not hold.
pub fn report(id: u32, pass: bool, detail: impl AsRef<str>) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("criterion {id}: {verdict} | {}", detail.as_ref());
    assert!(pass, "criterion {id} failed: {}", detail.as_ref());
}

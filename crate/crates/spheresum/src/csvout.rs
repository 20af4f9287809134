//! CSV formatting and atomic file output.
//!
//! All CSV files carry reals at 17 significant digits so that re-running an
//! experiment with the same config reproduces the bytes exactly.

use crate::error::Result;
use std::path::Path;

/// 17 significant digits, scientific; round-trips f64 exactly.
pub fn sig17(v: f64) -> String {
    if v.is_nan() {
        return "NaN".to_string();
    }
    format!("{v:.16e}")
}

/// Write via a temp file in the same directory, then rename over the target.
pub fn write_atomic(path: &Path, content: &str) -> Result<()> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    std::fs::create_dir_all(dir)?;
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = std::path::PathBuf::from(tmp);
    std::fs::write(&tmp, content)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig17_round_trips() {
        for v in [
            0.1,
            -std::f64::consts::PI,
            2.745016719e-1,
            1.0 / 3.0,
            6.02e23,
        ] {
            let s = sig17(v);
            assert_eq!(s.parse::<f64>().unwrap(), v, "{s}");
        }
        assert_eq!(sig17(f64::NAN), "NaN");
    }

    #[test]
    fn atomic_write_replaces_content() {
        let dir = std::env::temp_dir().join("spheresum-csvout-test");
        let path = dir.join("out.csv");
        write_atomic(&path, "a,b\n1,2\n").unwrap();
        write_atomic(&path, "a,b\n3,4\n").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "a,b\n3,4\n");
        std::fs::remove_dir_all(&dir).ok();
    }
}

use std::path::Path;

use agreeloss::RealVector;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::CliError;

/// Path and content hash of a file the command read.
#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

pub fn read_file(path: &Path) -> Result<(Vec<u8>, InputDigest), CliError> {
    let bytes =
        std::fs::read(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let digest = InputDigest {
        path: path.display().to_string(),
        sha256: hex::encode(Sha256::digest(&bytes)),
    };
    Ok((bytes, digest))
}

/// Reads the named numeric columns of a headed CSV file. Errors name the file
/// and the line (the header is line 1).
pub fn read_columns(
    path: &Path,
    names: &[&str],
) -> Result<(Vec<RealVector>, InputDigest), CliError> {
    let (bytes, digest) = read_file(path)?;
    let at = |line: usize, msg: String| {
        CliError::Input(format!("{}: line {line}: {msg}", path.display()))
    };

    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(bytes.as_slice());
    let headers = rdr.headers().map_err(|e| at(1, e.to_string()))?.clone();
    let index = names
        .iter()
        .map(|name| {
            headers
                .iter()
                .position(|h| h == *name)
                .ok_or_else(|| at(1, format!("missing column '{name}'")))
        })
        .collect::<Result<Vec<_>, _>>()?;

    let mut columns = vec![Vec::new(); names.len()];
    for record in rdr.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            at(line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        for ((col, &k), name) in columns.iter_mut().zip(&index).zip(names) {
            let raw = record.get(k).unwrap_or("");
            if raw.is_empty() {
                return Err(at(line, format!("missing value for '{name}'")));
            }
            let v: f64 = raw
                .parse()
                .map_err(|_| at(line, format!("cannot parse {name} value '{raw}'")))?;
            if !v.is_finite() {
                return Err(at(line, format!("{name} must be finite, got '{raw}'")));
            }
            col.push(v);
        }
    }
    if columns[0].is_empty() {
        return Err(at(2, "no data rows".into()));
    }
    let columns = columns
        .into_iter()
        .map(|c| RealVector::new(c).map_err(CliError::from))
        .collect::<Result<_, _>>()?;
    Ok((columns, digest))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn file(text: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(text.as_bytes()).unwrap();
        f
    }

    #[test]
    fn reads_named_columns_in_any_order() {
        let f = file("y,z\n1,2\n3,4.5\n");
        let (cols, digest) = read_columns(f.path(), &["z", "y"]).unwrap();
        assert_eq!(cols[0].as_slice(), &[2.0, 4.5]);
        assert_eq!(cols[1].as_slice(), &[1.0, 3.0]);
        assert_eq!(digest.sha256.len(), 64);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let f = file("z,y\n1,2\n3,oops\n");
        let msg = read_columns(f.path(), &["z", "y"]).unwrap_err().to_string();
        assert!(msg.contains("line 3") && msg.contains("oops"), "{msg}");

        let f = file("z,y\n1,2\n3,\n");
        let msg = read_columns(f.path(), &["z", "y"]).unwrap_err().to_string();
        assert!(
            msg.contains("line 3") && msg.contains("missing value"),
            "{msg}"
        );

        let f = file("z\n1\n");
        let msg = read_columns(f.path(), &["z", "y"]).unwrap_err().to_string();
        assert!(msg.contains("line 1") && msg.contains("'y'"), "{msg}");

        let f = file("z,y\n1,2\n3,4,5\n");
        assert!(read_columns(f.path(), &["z", "y"]).is_err());
    }

    #[test]
    fn digest_matches_known_value() {
        let f = file("abc");
        let (_, d) = read_file(f.path()).unwrap();
        assert_eq!(
            d.sha256,
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }
}

//! The on-disk system format: a `vars: N` header followed by one
//! `name : polynomial` line per member, with `#` comments and blank lines
//! ignored. Errors carry 1-based line numbers.

use crate::error::Error;
use crate::parse::parse_poly;
use crate::ring::MAX_VARS;
use crate::symmetry::PolySystem;

pub fn parse_system_file(text: &str) -> Result<PolySystem, Error> {
    let mut ambient: Option<usize> = None;
    let mut polys: Vec<(String, crate::ring::MultilinearPoly)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((head, tail)) = line.split_once(':') else {
            return Err(Error::SystemFile {
                line: line_no,
                msg: "expected `vars: N` or `name : polynomial`".to_string(),
            });
        };
        let head = head.trim();
        let tail = tail.trim();
        match ambient {
            None => {
                if head != "vars" {
                    return Err(Error::SystemFile {
                        line: line_no,
                        msg: format!("first entry must be a `vars: N` header, found `{head}`"),
                    });
                }
                let n: usize = tail.parse().map_err(|_| Error::SystemFile {
                    line: line_no,
                    msg: format!("`vars` header needs a positive integer, found `{tail}`"),
                })?;
                if n == 0 || n > MAX_VARS {
                    return Err(Error::SystemFile {
                        line: line_no,
                        msg: format!("vars must be between 1 and {MAX_VARS}, got {n}"),
                    });
                }
                ambient = Some(n);
            }
            Some(n) => {
                if head.is_empty() || head.contains(char::is_whitespace) {
                    return Err(Error::SystemFile {
                        line: line_no,
                        msg: format!("invalid polynomial name `{head}`"),
                    });
                }
                if polys.iter().any(|(name, _)| name == head) {
                    return Err(Error::SystemFile {
                        line: line_no,
                        msg: format!("duplicate polynomial name `{head}`"),
                    });
                }
                let poly = parse_poly(tail, n).map_err(|e| match e {
                    Error::Parse { pos, msg } => Error::SystemFile {
                        line: line_no,
                        msg: format!("in `{head}`, column {}: {msg}", pos + 1),
                    },
                    other => other,
                })?;
                polys.push((head.to_string(), poly));
            }
        }
    }

    let Some(n) = ambient else {
        return Err(Error::SystemFile {
            line: text.lines().count().max(1),
            msg: "missing `vars: N` header".to_string(),
        });
    };
    if polys.is_empty() {
        return Err(Error::SystemFile {
            line: text.lines().count().max(1),
            msg: "a system needs at least one polynomial".to_string(),
        });
    }
    PolySystem::new(n, polys)
}

/// Renders a system back into the file format; parses back to an equal
/// system.
pub fn format_system_file(sys: &PolySystem) -> String {
    let mut out = format!("vars: {}\n", sys.n());
    for (name, poly) in sys.iter() {
        out.push_str(&format!("{name} : {poly}\n"));
    }
    out
}

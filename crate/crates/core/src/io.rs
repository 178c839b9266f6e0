//! File formats: system JSON, point sets (text or JSON), latin squares (text)
//! and chain ultrametrics (JSON).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nets::PartialLatinSquare;
use crate::planar::{PlanarSet, Point};
use crate::system::System;
use crate::ultra::ChainUltrametric;

#[derive(Serialize, Deserialize)]
struct SystemFile {
    n: usize,
    relations: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    names: Option<Vec<String>>,
}

/// A system plus optional element names, as stored on disk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemDoc {
    pub system: System,
    pub names: Option<Vec<String>>,
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line(),
        msg: e.to_string(),
    }
}

/// `{"n": 5, "relations": [[0,0,1,1,1], ...], "names": [...]?}`; labels are
/// normalized on load.
pub fn parse_system_doc(text: &str) -> Result<SystemDoc> {
    let raw: SystemFile = serde_json::from_str(text).map_err(json_error)?;
    for (i, r) in raw.relations.iter().enumerate() {
        if r.len() != raw.n {
            return Err(Error::Parse {
                line: 1,
                msg: format!("relation {i} has {} labels, expected n = {}", r.len(), raw.n),
            });
        }
    }
    if let Some(names) = &raw.names {
        if names.len() != raw.n {
            return Err(Error::Parse {
                line: 1,
                msg: format!("{} names given for {} elements", names.len(), raw.n),
            });
        }
    }
    Ok(SystemDoc {
        system: System::from_label_vectors(raw.n, &raw.relations)?,
        names: raw.names,
    })
}

pub fn parse_system(text: &str) -> Result<System> {
    parse_system_doc(text).map(|d| d.system)
}

pub fn system_to_json(m: &System) -> String {
    serde_json::to_string(&SystemFile {
        n: m.n(),
        relations: m.relations().iter().map(|r| r.labels().to_vec()).collect(),
        names: None,
    })
    .expect("plain data serializes")
}

#[derive(Serialize, Deserialize)]
struct PointsFile {
    points: Vec<[i64; 2]>,
}

/// Either JSON `{"points": [[x, y], ...]}` or text with one `x y` pair per
/// line and `#` comments.
pub fn parse_points(text: &str) -> Result<PlanarSet> {
    if text.trim_start().starts_with('{') {
        let raw: PointsFile = serde_json::from_str(text).map_err(json_error)?;
        return Ok(raw.points.into_iter().map(Point::from).collect());
    }
    let mut pts = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let coords: Vec<&str> = body.split_whitespace().collect();
        let parse = |s: &str| {
            s.parse::<i64>().map_err(|e| Error::Parse {
                line: k + 1,
                msg: format!("bad coordinate {s:?}: {e}"),
            })
        };
        match coords.as_slice() {
            [x, y] => pts.push(Point::new(parse(x)?, parse(y)?)),
            _ => {
                return Err(Error::Parse {
                    line: k + 1,
                    msg: format!("expected two integers, found {body:?}"),
                })
            }
        }
    }
    Ok(PlanarSet::new(pts))
}

pub fn points_to_text(c: &PlanarSet) -> String {
    c.points().iter().map(|p| format!("{} {}\n", p.x, p.y)).collect()
}

pub fn points_to_json(c: &PlanarSet) -> String {
    serde_json::to_string(&PointsFile {
        points: c.points().iter().map(|&p| p.into()).collect(),
    })
    .expect("plain data serializes")
}

/// `m` lines of `m` whitespace-separated tokens; `.` marks an empty cell.
/// Blank lines and `#` comments are skipped.
pub fn parse_latin(text: &str) -> Result<PartialLatinSquare> {
    let mut rows: Vec<Vec<Option<usize>>> = Vec::new();
    let mut first_line = None;
    for (k, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        first_line.get_or_insert(k + 1);
        let row = body
            .split_whitespace()
            .map(|t| {
                if t == "." {
                    Ok(None)
                } else {
                    t.parse::<usize>().map(Some).map_err(|e| Error::Parse {
                        line: k + 1,
                        msg: format!("bad symbol {t:?}: {e}"),
                    })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some(prev) = rows.first() {
            if prev.len() != row.len() {
                return Err(Error::Parse {
                    line: k + 1,
                    msg: format!("row has {} cells, expected {}", row.len(), prev.len()),
                });
            }
        }
        rows.push(row);
    }
    PartialLatinSquare::from_rows(rows).map_err(|e| Error::Parse {
        line: first_line.unwrap_or(1),
        msg: e.to_string(),
    })
}

pub fn format_latin(p: &PartialLatinSquare) -> String {
    let width = p.order().saturating_sub(1).to_string().len();
    let mut out = String::new();
    for row in p.rows().iter().take(p.order()) {
        let cells: Vec<String> = row
            .iter()
            .map(|c| match c {
                Some(s) => format!("{s:>width$}"),
                None => format!("{:>width$}", "."),
            })
            .collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_ultrametric(text: &str) -> Result<ChainUltrametric> {
    serde_json::from_str(text).map_err(json_error)
}

//! Point-set and edge-list file formats.
//!
//! Points travel either as CSV (`color,x1,...,xd`, one point per line) or as
//! JSON (`{"d": .., "k": .., "points": [{"color": c, "coords": [..]}, ..]}`).
//! Coordinates are printed in the shortest decimal form that parses back to
//! the same bits, so write/read round-trips are exact. Edge lists are plain
//! text: `i j weight provenance` per line.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Color, ColoredPointSet};
use crate::scalar::Scalar;
use crate::spanner::SpannerGraph;

pub fn write_points_csv<F: Scalar, W: Write>(set: &ColoredPointSet<F>, out: &mut W) -> Result<()> {
    for p in set.points() {
        write!(out, "{}", p.color)?;
        for c in p.coords {
            write!(out, ",{c}")?;
        }
        writeln!(out)?;
    }
    Ok(())
}

pub fn read_points_csv<F: Scalar, R: Read>(input: R) -> Result<ColoredPointSet<F>> {
    let reader = BufReader::new(input);
    let mut rows: Vec<(Color, Vec<F>)> = Vec::new();
    let mut d = None;
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split(',');
        let parse_err = |msg: String| Error::Parse {
            line: lineno + 1,
            msg,
        };
        let color: Color = fields
            .next()
            .ok_or_else(|| parse_err("missing color".into()))?
            .trim()
            .parse()
            .map_err(|e| parse_err(format!("bad color: {e}")))?;
        let coords: Vec<F> = fields
            .map(|f| {
                f.trim()
                    .parse::<F>()
                    .map_err(|e| parse_err(format!("bad coordinate `{f}`: {e}")))
            })
            .collect::<Result<_>>()?;
        if coords.is_empty() {
            return Err(parse_err("point has no coordinates".into()));
        }
        match d {
            None => d = Some(coords.len()),
            Some(d0) if d0 != coords.len() => {
                return Err(parse_err(format!(
                    "dimension changed from {d0} to {}",
                    coords.len()
                )));
            }
            _ => {}
        }
        rows.push((color, coords));
    }
    let d = d.ok_or(Error::EmptyPointSet)?;
    ColoredPointSet::new(d, rows)
}

#[derive(Serialize, Deserialize)]
struct PointRecord<F> {
    color: Color,
    coords: Vec<F>,
}

#[derive(Serialize, Deserialize)]
struct PointsFile<F> {
    d: usize,
    k: usize,
    points: Vec<PointRecord<F>>,
}

pub fn write_points_json<F: Scalar, W: Write>(
    set: &ColoredPointSet<F>,
    out: &mut W,
) -> Result<()> {
    let file = PointsFile {
        d: set.d(),
        k: set.k(),
        points: set
            .points()
            .map(|p| PointRecord {
                color: p.color,
                coords: p.coords.to_vec(),
            })
            .collect(),
    };
    serde_json::to_writer_pretty(&mut *out, &file)?;
    writeln!(out)?;
    Ok(())
}

pub fn read_points_json<F: Scalar, R: Read>(input: R) -> Result<ColoredPointSet<F>> {
    let file: PointsFile<F> = serde_json::from_reader(input)?;
    let set = ColoredPointSet::new(
        file.d,
        file.points.into_iter().map(|p| (p.color, p.coords)).collect(),
    )?;
    if set.k() != file.k {
        return Err(Error::InvalidParameter(format!(
            "file declares k={} but colors span 1..={}",
            file.k,
            set.k()
        )));
    }
    Ok(set)
}

/// Dispatch on extension: `.json` is JSON, anything else is CSV.
pub fn load_points<F: Scalar>(path: &Path) -> Result<ColoredPointSet<F>> {
    let file = File::open(path)?;
    if path.extension().is_some_and(|e| e == "json") {
        read_points_json(file)
    } else {
        read_points_csv(file)
    }
}

pub fn save_points<F: Scalar>(path: &Path, set: &ColoredPointSet<F>) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    if path.extension().is_some_and(|e| e == "json") {
        write_points_json(set, &mut out)
    } else {
        write_points_csv(set, &mut out)
    }
}

/// One edge per line: `i j weight provenance`.
pub fn write_edge_list<F: Scalar, W: Write>(g: &SpannerGraph<F>, out: &mut W) -> Result<()> {
    for (i, j, data) in g.edges() {
        writeln!(out, "{i} {j} {} {}", data.weight, data.tags())?;
    }
    Ok(())
}

/// Read an edge list back over a known point set; weights are recomputed
/// from the coordinates (the file's weight column is informational).
pub fn read_edge_list<F: Scalar, R: Read>(
    input: R,
    set: &ColoredPointSet<F>,
) -> Result<SpannerGraph<F>> {
    let reader = BufReader::new(input);
    let mut g = SpannerGraph::new(set.n());
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let parse_err = |msg: String| Error::Parse {
            line: lineno + 1,
            msg,
        };
        let i: usize = fields
            .next()
            .ok_or_else(|| parse_err("missing endpoint".into()))?
            .parse()
            .map_err(|e| parse_err(format!("bad endpoint: {e}")))?;
        let j: usize = fields
            .next()
            .ok_or_else(|| parse_err("missing endpoint".into()))?
            .parse()
            .map_err(|e| parse_err(format!("bad endpoint: {e}")))?;
        if i >= set.n() || j >= set.n() {
            return Err(Error::EdgeOutOfRange {
                index: i.max(j),
                n: set.n(),
            });
        }
        g.add_edge(i, j, set.distance(i, j))?;
    }
    Ok(g)
}

pub fn load_edge_list<F: Scalar>(path: &Path, set: &ColoredPointSet<F>) -> Result<SpannerGraph<F>> {
    read_edge_list(File::open(path)?, set)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_set() -> ColoredPointSet<f64> {
        ColoredPointSet::new(
            2,
            vec![
                (1, vec![0.1, -2.5]),
                (2, vec![1.0 / 3.0, 7e-300]),
                (1, vec![5.5, 0.0]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn csv_round_trip_is_bit_exact() {
        let set = sample_set();
        let mut buf = Vec::new();
        write_points_csv(&set, &mut buf).unwrap();
        let back: ColoredPointSet<f64> = read_points_csv(&buf[..]).unwrap();
        for i in 0..set.n() {
            assert_eq!(set.color(i), back.color(i));
            for (a, b) in set.coords(i).iter().zip(back.coords(i)) {
                assert_eq!(a.to_bits(), b.to_bits());
            }
        }
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let set = sample_set();
        let mut buf = Vec::new();
        write_points_json(&set, &mut buf).unwrap();
        let back: ColoredPointSet<f64> = read_points_json(&buf[..]).unwrap();
        for i in 0..set.n() {
            assert_eq!(set.color(i), back.color(i));
            for (a, b) in set.coords(i).iter().zip(back.coords(i)) {
                assert_eq!(a.to_bits(), b.to_bits());
            }
        }
    }

    #[test]
    fn csv_rejects_ragged_rows_and_garbage() {
        assert!(matches!(
            read_points_csv::<f64, _>("1,0.0,0.0\n2,1.0\n".as_bytes()),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(read_points_csv::<f64, _>("1,zebra\n".as_bytes()).is_err());
        assert!(matches!(
            read_points_csv::<f64, _>("".as_bytes()),
            Err(Error::EmptyPointSet)
        ));
    }

    #[test]
    fn json_validates_declared_k() {
        let text = r#"{"d":1,"k":5,"points":[{"color":1,"coords":[0.0]},{"color":2,"coords":[1.0]}]}"#;
        assert!(read_points_json::<f64, _>(text.as_bytes()).is_err());
    }

    #[test]
    fn edge_list_round_trip() {
        let set = sample_set();
        let mut g = SpannerGraph::new(3);
        g.add_edge(0, 1, set.distance(0, 1)).unwrap();
        g.add_edge(1, 2, set.distance(1, 2)).unwrap();
        let mut buf = Vec::new();
        write_edge_list(&g, &mut buf).unwrap();
        let back = read_edge_list(&buf[..], &set).unwrap();
        assert_eq!(back.edge_count(), 2);
        assert!(back.contains_edge(0, 1) && back.contains_edge(1, 2));
    }

    #[test]
    fn edge_list_rejects_out_of_range() {
        let set = sample_set();
        assert!(matches!(
            read_edge_list::<f64, _>("0 7 1.0 x\n".as_bytes(), &set),
            Err(Error::EdgeOutOfRange { .. })
        ));
    }
}

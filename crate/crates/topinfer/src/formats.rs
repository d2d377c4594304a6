//! Plain-text file formats: sample CSVs and simplicial complexes.
//!
//! A sample CSV starts with three comment lines naming the model, the
//! source and the seed, followed by a header row `x0,x1,...` and one
//! point per row in ambient coordinates:
//!
//! ```text
//! # model: circle-r2
//! # source: on_manifold
//! # seed: 42
//! x0,x1
//! 0.6,0.8
//! ```
//!
//! Tube samples use `# source: tube(0.5)`. Floats are written in the
//! shortest form that reads back to the same value.
//!
//! A complex file lists one simplex per line, vertex indices separated by
//! spaces, grouped under `# dim d` headers in increasing `d`.

use std::io::{BufRead, Write};

use topinfer_core::{GeometryError, ManifoldModel, Point, SampleSet, SampleSource, SimplicialComplex};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("row {row}: {source}")]
    Point { row: usize, source: GeometryError },
    #[error("{0}")]
    Complex(#[from] topinfer_core::ComplexError),
}

fn at(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Line { line, message: message.into() }
}

fn source_tag(source: SampleSource) -> String {
    match source {
        SampleSource::OnManifold => "on_manifold".to_string(),
        SampleSource::Tube { r } => format!("tube({r})"),
    }
}

fn parse_source(s: &str) -> Option<SampleSource> {
    if s == "on_manifold" {
        return Some(SampleSource::OnManifold);
    }
    let r = s.strip_prefix("tube(")?.strip_suffix(')')?.trim().parse().ok()?;
    Some(SampleSource::Tube { r })
}

pub fn write_sample_csv<W: Write>(sample: &SampleSet, mut out: W) -> Result<(), FormatError> {
    writeln!(out, "# model: {}", sample.model.identifier())?;
    writeln!(out, "# source: {}", source_tag(sample.source))?;
    writeln!(out, "# seed: {}", sample.seed)?;
    let mut w = csv::Writer::from_writer(out);
    let width = sample.model.ambient().coord_len();
    w.write_record((0..width).map(|i| format!("x{i}")))?;
    for p in &sample.points {
        w.write_record(p.coords.iter().map(|x| format!("{x:?}")))?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a sample CSV and checks every point against the model: in the
/// ambient space, and on `M` or in the tube as the source says.
pub fn read_sample_csv<R: BufRead>(mut input: R) -> Result<SampleSet, FormatError> {
    let mut header = |line: usize, key: &str| -> Result<String, FormatError> {
        let mut s = String::new();
        input.read_line(&mut s)?;
        let value = s.trim().strip_prefix('#').and_then(|s| s.trim().strip_prefix(key)).and_then(|s| s.strip_prefix(':'));
        value.map(|v| v.trim().to_string()).ok_or_else(|| at(line, format!("expected `# {key}: ...`")))
    };
    let model_id = header(1, "model")?;
    let source_id = header(2, "source")?;
    let seed_id = header(3, "seed")?;
    let model = ManifoldModel::parse(&model_id).map_err(|e| at(1, e.to_string()))?;
    let source = parse_source(&source_id).ok_or_else(|| at(2, format!("unknown source `{source_id}`")))?;
    let seed = seed_id.parse().map_err(|_| at(3, format!("invalid seed `{seed_id}`")))?;
    let ambient = model.ambient();
    let width = ambient.coord_len();

    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let columns = reader.headers()?.len();
    if columns != width {
        return Err(at(4, format!("{} has {width} coordinates, found {columns} columns", model.name())));
    }
    let mut points = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let row = i + 1;
        let line = row + 4;
        let record = record?;
        let coords = record
            .iter()
            .map(|f| f.trim().parse::<f64>().map_err(|_| at(line, format!("invalid number `{f}`"))))
            .collect::<Result<Vec<f64>, _>>()?;
        ambient.validate(&coords).map_err(|source| FormatError::Point { row, source })?;
        match source {
            SampleSource::OnManifold => {
                model.check_on_manifold(&coords).map_err(|source| FormatError::Point { row, source })?
            }
            SampleSource::Tube { r } => {
                let d = model.distance_to(&coords);
                if !(d < r * (1.0 + 1e-9)) {
                    return Err(at(line, format!("point at distance {d} from M lies outside the tube of radius {r}")));
                }
            }
        }
        points.push(Point::new(coords));
    }
    Ok(SampleSet { model, source, seed, points, acceptance_rate: None })
}

pub fn write_complex<W: Write>(complex: &SimplicialComplex, mut out: W) -> std::io::Result<()> {
    for d in 0..=complex.max_dim() {
        writeln!(out, "# dim {d}")?;
        for s in complex.simplices(d) {
            let line: Vec<String> = s.iter().map(u32::to_string).collect();
            writeln!(out, "{}", line.join(" "))?;
        }
    }
    Ok(())
}

/// Reads a complex file. The vertex count is the number of 0-simplices,
/// which must be `0..n`.
pub fn read_complex<R: BufRead>(input: R) -> Result<SimplicialComplex, FormatError> {
    let mut dim: Option<usize> = None;
    let mut top = 0;
    let mut simplices: Vec<Vec<u32>> = Vec::new();
    let mut vertices = 0usize;
    for (i, line) in input.lines().enumerate() {
        let line_no = i + 1;
        let line = line?;
        let s = line.trim();
        if s.is_empty() {
            continue;
        }
        if let Some(h) = s.strip_prefix('#') {
            let d = h.trim().strip_prefix("dim").and_then(|d| d.trim().parse::<usize>().ok());
            match d {
                Some(d) if dim.map_or(d == 0, |prev| d == prev + 1) => {
                    dim = Some(d);
                    top = d;
                }
                _ => return Err(at(line_no, format!("expected `# dim {}`", dim.map_or(0, |p| p + 1)))),
            }
            continue;
        }
        let d = dim.ok_or_else(|| at(line_no, "simplex before the first `# dim` header"))?;
        let simplex = s
            .split_whitespace()
            .map(|v| v.parse::<u32>().map_err(|_| at(line_no, format!("invalid vertex `{v}`"))))
            .collect::<Result<Vec<u32>, _>>()?;
        if simplex.len() != d + 1 {
            return Err(at(line_no, format!("a {d}-simplex has {} vertices, found {}", d + 1, simplex.len())));
        }
        if d == 0 {
            if simplex[0] as usize != vertices {
                return Err(at(line_no, format!("expected vertex {vertices}")));
            }
            vertices += 1;
        }
        simplices.push(simplex);
    }
    Ok(SimplicialComplex::from_simplices(vertices, &simplices)?.with_max_dim(top))
}

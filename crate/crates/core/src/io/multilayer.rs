//! Two-layer models: an image layer plus a layer of Euclidean positions.
//!
//! The relation is `4adj ∪ pos ∪ R_δ`: grid adjacency among pixels, an edge
//! from each positioned pixel to its coordinate point, and δ-disc edges
//! among coordinate points. Coordinate points satisfy only `coord`.

use std::collections::HashMap;

use crate::error::ModelIoError;
use crate::model::ClosureModel;
use crate::pointset::PointSet;
use crate::space::{delta_pairs, PointLabels, QuasiDiscreteSpace};

/// Name of the proposition holding exactly on coordinate points.
pub const COORD: &str = "coord";

/// A pixel `(column, row)` located at a Euclidean position.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Placement {
    pub column: usize,
    pub row: usize,
    pub position: (f64, f64),
}

#[derive(Clone, Debug)]
pub struct MultilayerOptions {
    pub delta: f64,
    /// Also add coordinate-to-pixel edges.
    pub symmetric_pos: bool,
}

impl MultilayerOptions {
    pub fn new(delta: f64) -> Self {
        MultilayerOptions {
            delta,
            symmetric_pos: false,
        }
    }
}

/// Extends a raster model with a coordinate layer. Pixels placed at
/// bit-identical positions share one coordinate point.
pub fn build_multilayer_model(
    image: &ClosureModel,
    placements: &[Placement],
    options: &MultilayerOptions,
) -> Result<ClosureModel, ModelIoError> {
    let PointLabels::Grid { width, height } = *image.space().labels() else {
        return Err(ModelIoError::Invalid("multilayer models need a raster model".into()));
    };
    let pixels = width * height;

    let mut positions: Vec<(f64, f64)> = Vec::new();
    let mut by_bits: HashMap<(u64, u64), usize> = HashMap::new();
    let mut pos_edges = Vec::with_capacity(placements.len());
    for p in placements {
        if p.column >= width || p.row >= height {
            return Err(ModelIoError::Invalid(format!(
                "placement ({}, {}) outside the {width}x{height} raster",
                p.column, p.row
            )));
        }
        let (x, y) = p.position;
        if !x.is_finite() || !y.is_finite() {
            return Err(ModelIoError::Invalid(format!("non-finite position ({x}, {y})")));
        }
        let key = (x.to_bits(), y.to_bits());
        let index = *by_bits.entry(key).or_insert_with(|| {
            positions.push(p.position);
            positions.len() - 1
        });
        pos_edges.push(((p.row * width + p.column) as u32, (pixels + index) as u32));
    }

    let total = pixels + positions.len();
    if total > u32::MAX as usize {
        return Err(crate::error::SpaceError::TooLarge {
            size: total,
            limit: u32::MAX as usize,
        }
        .into());
    }
    let mut pairs: Vec<(u32, u32)> = image.space().edges().map(|(a, b)| (a as u32, b as u32)).collect();
    for &(pixel, coord) in &pos_edges {
        pairs.push((pixel, coord));
        if options.symmetric_pos {
            pairs.push((coord, pixel));
        }
    }
    let offset = pixels as u32;
    pairs.extend(
        delta_pairs(&positions, options.delta)?
            .into_iter()
            .map(|(a, b)| (a + offset, b + offset)),
    );

    let space = QuasiDiscreteSpace::from_pairs(total, pairs).with_labels(PointLabels::Layered {
        width,
        height,
        positions,
    });
    let mut model = ClosureModel::new(space);
    for (name, set) in image.propositions() {
        let extended = PointSet::from_fn(total, |x| x < pixels && set.contains(x));
        model.set_proposition(name, extended)?;
    }
    model.set_proposition(COORD, PointSet::from_fn(total, |x| x >= pixels))?;
    Ok(model)
}

/// Reads placements from CSV rows `column,row,x,y`. A header row and `#`
/// comment lines are skipped.
pub fn parse_placements(text: &str) -> Result<Vec<Placement>, ModelIoError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut out = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| ModelIoError::Invalid(format!("coordinates: {e}")))?;
        let line = record.position().map_or(i + 1, |p| p.line() as usize);
        if record.len() != 4 {
            return Err(ModelIoError::syntax(line, "expected column,row,x,y"));
        }
        let column = record[0].parse::<usize>();
        if i == 0 && column.is_err() {
            continue;
        }
        let bad = |what: &str| ModelIoError::syntax(line, format!("malformed {what}"));
        out.push(Placement {
            column: column.map_err(|_| bad("column"))?,
            row: record[1].parse().map_err(|_| bad("row"))?,
            position: (
                record[2].parse().map_err(|_| bad("x"))?,
                record[3].parse().map_err(|_| bad("y"))?,
            ),
        });
    }
    Ok(out)
}

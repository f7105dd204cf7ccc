//! Image models: a raster read as a 4-adjacency grid whose propositions are
//! keyed by pixel color, plus optional mask layers.

use std::path::Path;

use super::pixmap::{Pixmap, Rgb};
use crate::error::ModelIoError;
use crate::model::ClosureModel;
use crate::pointset::PointSet;
use crate::space::build_grid_4adj;

/// A raster and the closure model built from it.
#[derive(Clone, Debug)]
pub struct ImageModel {
    pub pixmap: Pixmap,
    pub model: ClosureModel,
}

/// Builds the grid model of `pixmap`. Each palette entry holds exactly at the
/// pixels of that color; each mask adds a proposition holding wherever the
/// mask pixel is not black.
pub fn image_model(
    pixmap: Pixmap,
    palette: &[(String, Rgb)],
    masks: &[(String, Pixmap)],
) -> Result<ImageModel, ModelIoError> {
    let (width, height) = (pixmap.width(), pixmap.height());
    let mut model = ClosureModel::new(build_grid_4adj(width, height)?);
    for (name, color) in palette {
        let set = PointSet::from_fn(pixmap.pixels().len(), |i| pixmap.pixels()[i] == *color);
        model.set_proposition(name.clone(), set)?;
    }
    for (name, mask) in masks {
        if (mask.width(), mask.height()) != (width, height) {
            return Err(ModelIoError::Invalid(format!(
                "mask for '{name}' is {}x{}, image is {width}x{height}",
                mask.width(),
                mask.height()
            )));
        }
        let set = PointSet::from_fn(mask.pixels().len(), |i| mask.pixels()[i] != Rgb::BLACK);
        model.set_proposition(name.clone(), set)?;
    }
    Ok(ImageModel { pixmap, model })
}

pub fn load_pixmap(path: impl AsRef<Path>) -> Result<Pixmap, ModelIoError> {
    let path = path.as_ref();
    let bytes = std::fs::read(path).map_err(|e| ModelIoError::io(path, e))?;
    Pixmap::decode(&bytes)
}

pub fn load_image_model(
    path: impl AsRef<Path>,
    palette: &[(String, Rgb)],
    masks: &[(String, Pixmap)],
) -> Result<ImageModel, ModelIoError> {
    image_model(load_pixmap(path)?, palette, masks)
}

/// The source raster with each layer's points recolored; later layers are
/// drawn over earlier ones. Points beyond the raster (for instance a
/// coordinate layer) are ignored.
pub fn overlay(pixmap: &Pixmap, layers: &[(PointSet, Rgb)]) -> Pixmap {
    let mut out = pixmap.clone();
    let n = pixmap.pixels().len();
    for (set, color) in layers {
        for x in set.iter().take_while(|&x| x < n) {
            out.set_index(x, *color);
        }
    }
    out
}

/// Writes [`overlay`] as a `P6` file.
pub fn save_overlay_image(
    pixmap: &Pixmap,
    layers: &[(PointSet, Rgb)],
    path: impl AsRef<Path>,
) -> Result<(), ModelIoError> {
    for (set, _) in layers {
        if set.universe() < pixmap.pixels().len() {
            return Err(ModelIoError::Invalid(format!(
                "layer over {} points does not cover a {}x{} image",
                set.universe(),
                pixmap.width(),
                pixmap.height()
            )));
        }
    }
    let path = path.as_ref();
    std::fs::write(path, overlay(pixmap, layers).encode_p6()).map_err(|e| ModelIoError::io(path, e))
}

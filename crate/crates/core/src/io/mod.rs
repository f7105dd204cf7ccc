//! Reading and writing models: graph files, pixmaps, overlays and
//! two-layer models.

pub mod graph;
pub mod image;
pub mod multilayer;
pub mod pixmap;

pub use graph::{load_graph_model, node_index, node_set, parse_graph_model, write_graph_model};
pub use image::{image_model, load_image_model, load_pixmap, overlay, save_overlay_image, ImageModel};
pub use multilayer::{build_multilayer_model, parse_placements, MultilayerOptions, Placement, COORD};
pub use pixmap::{Pixmap, Rgb};

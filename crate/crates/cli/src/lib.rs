//! Runs query files against closure models.
//!
//! A model is either a graph text file or a `P3`/`P6` pixmap (detected from
//! the header). `paint` commands recolor an image model into `--output`, or
//! list `<paint-index> <node-id>` lines for graph models; `ask` commands print
//! `true` or `false`. The exit code is 0 when every ask holds, 1 when some
//! ask fails, and 2 on any error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use clap::Parser;
use spatialmc::io::{
    build_multilayer_model, image_model, load_pixmap, node_set, overlay, parse_graph_model, parse_placements,
    MultilayerOptions, Pixmap, Rgb,
};
use spatialmc::logic::{AskPoints, Declaration};
use spatialmc::{Checker, ClosureModel, CollectiveChecker, PointLabels, PointSet, SpecProgram};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Clone, Debug, Parser)]
#[command(name = "spatialmc", version, about = "Spatial model checking of SLCS/CSLCS formulas")]
pub struct Cli {
    /// Graph text file or P3/P6 pixmap.
    #[arg(long)]
    pub model: PathBuf,
    /// Query file with let/prop/paint/ask statements.
    #[arg(long)]
    pub spec: PathBuf,
    /// Overlay image written by paint commands on image models.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Log worklist traces.
    #[arg(long, short)]
    pub verbose: bool,
    /// Extra proposition from a mask image: non-black pixels satisfy it.
    #[arg(long = "layers", value_name = "MASK.ppm:PROP")]
    pub layers: Vec<Layer>,
    /// Add a coordinate layer from `column,row,x,y` rows linked within DELTA.
    #[arg(long, value_name = "COORDS.csv:DELTA")]
    pub multilayer: Option<Multilayer>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Layer {
    pub mask: PathBuf,
    pub proposition: String,
}

impl FromStr for Layer {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (mask, proposition) = s.rsplit_once(':').ok_or("expected MASK.ppm:PROP")?;
        if mask.is_empty() || proposition.is_empty() {
            return Err("expected MASK.ppm:PROP".into());
        }
        Ok(Layer {
            mask: mask.into(),
            proposition: proposition.into(),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Multilayer {
    pub coordinates: PathBuf,
    pub delta: f64,
}

impl FromStr for Multilayer {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (path, delta) = s.rsplit_once(':').ok_or("expected COORDS.csv:DELTA")?;
        let delta: f64 = delta.parse().map_err(|_| format!("invalid delta '{delta}'"))?;
        if delta.is_nan() || delta < 0.0 || path.is_empty() {
            return Err("expected COORDS.csv:DELTA with DELTA >= 0".into());
        }
        Ok(Multilayer {
            coordinates: path.into(),
            delta,
        })
    }
}

/// Runs `cli`, writing results to `out` and diagnostics to `err`; returns
/// the exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match execute(cli, out) {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_FALSE,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_ERROR
        }
    }
}

enum Loaded {
    Graph(ClosureModel),
    Image { pixmap: Pixmap, model: ClosureModel },
}

impl Loaded {
    fn model(&self) -> &ClosureModel {
        match self {
            Loaded::Graph(m) | Loaded::Image { model: m, .. } => m,
        }
    }
}

fn read(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).with_context(|| format!("cannot read {}", path.display()))
}

/// The propositions an image model needs: `prop` bindings plus every
/// color-literal atom.
fn palette(program: &SpecProgram) -> Vec<(String, Rgb)> {
    let mut palette: Vec<(String, Rgb)> = program.props().map(|(n, c)| (n.to_string(), c)).collect();
    for atom in program.atoms() {
        if let Some(color) = atom.strip_prefix('#').and_then(Rgb::from_hex) {
            palette.push((atom, color));
        }
    }
    palette
}

fn load(cli: &Cli, program: &SpecProgram) -> Result<Loaded> {
    let bytes = read(&cli.model)?;
    let context = || format!("invalid model {}", cli.model.display());
    if bytes.starts_with(b"P3") || bytes.starts_with(b"P6") {
        let pixmap = Pixmap::decode(&bytes).with_context(context)?;
        let mut masks = Vec::new();
        for layer in &cli.layers {
            let mask = load_pixmap(&layer.mask).with_context(|| format!("invalid mask {}", layer.mask.display()))?;
            masks.push((layer.proposition.clone(), mask));
        }
        let image = image_model(pixmap, &palette(program), &masks).with_context(context)?;
        let model = match &cli.multilayer {
            Some(ml) => {
                let text = String::from_utf8(read(&ml.coordinates)?)
                    .with_context(|| format!("{} is not UTF-8", ml.coordinates.display()))?;
                let placements = parse_placements(&text)
                    .with_context(|| format!("invalid coordinates {}", ml.coordinates.display()))?;
                build_multilayer_model(&image.model, &placements, &MultilayerOptions::new(ml.delta))?
            }
            None => image.model,
        };
        Ok(Loaded::Image {
            pixmap: image.pixmap,
            model,
        })
    } else {
        if !cli.layers.is_empty() || cli.multilayer.is_some() {
            bail!("--layers and --multilayer need an image model");
        }
        let text = String::from_utf8(bytes).map_err(|_| anyhow!("{} is neither a pixmap nor text", cli.model.display()))?;
        Ok(Loaded::Graph(parse_graph_model(&text).with_context(context)?))
    }
}

fn ask_points(model: &ClosureModel, points: &AskPoints, line: usize) -> Result<PointSet> {
    match points {
        AskPoints::All => Ok(model.all_points()),
        AskPoints::Coordinates(cells) => {
            let (width, height) = match model.space().labels() {
                PointLabels::Grid { width, height } | PointLabels::Layered { width, height, .. } => (*width, *height),
                _ => bail!("line {line}: coordinates given for a graph model; use node identifiers"),
            };
            let mut set = model.no_points();
            for &(c, r) in cells {
                if c >= width || r >= height {
                    bail!("line {line}: point ({c},{r}) outside the {width}x{height} image");
                }
                set.insert(r * width + c);
            }
            Ok(set)
        }
        AskPoints::Nodes(ids) => {
            if !matches!(model.space().labels(), PointLabels::Names(_)) {
                bail!("line {line}: node identifiers given for an image model; use (column,row)");
            }
            node_set(model, ids).with_context(|| format!("line {line}"))
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<bool> {
    let text = String::from_utf8(read(&cli.spec)?).with_context(|| format!("{} is not UTF-8", cli.spec.display()))?;
    let program = SpecProgram::parse(&text).with_context(|| format!("in {}", cli.spec.display()))?;
    let loaded = load(cli, &program)?;
    let model = loaded.model();

    let is_image = matches!(loaded, Loaded::Image { .. });
    if is_image && program.paints().next().is_some() && cli.output.is_none() {
        bail!("paint commands on an image model need --output");
    }
    if !is_image && cli.output.is_some() {
        log::warn!("--output is ignored for graph models");
    }
    for atom in program.atoms() {
        if model.proposition(&atom).is_none() {
            log::warn!("proposition '{atom}' does not occur in the model; it holds nowhere");
        }
    }

    let mut individual = Checker::new(model);
    let mut collective = CollectiveChecker::new(model);
    let mut layers = Vec::new();
    let mut all_hold = true;
    let mut paint_index = 0;
    for declaration in &program.declarations {
        match declaration {
            Declaration::Prop { .. } => {}
            Declaration::Paint(paint) => {
                let set = individual.sat(&paint.formula);
                log::info!("paint {paint_index} \"{}\": {} points", paint.text, set.len());
                if is_image {
                    layers.push((set, paint.color));
                } else {
                    for x in set.iter() {
                        writeln!(out, "{paint_index} {}", model.space().label(x))?;
                    }
                }
                paint_index += 1;
            }
            Declaration::Ask(ask) => {
                let points = ask_points(model, &ask.points, ask.line)?;
                let holds = collective.check(&points, &ask.formula)?;
                log::info!("ask \"{}\": {holds}", ask.text);
                writeln!(out, "{holds}")?;
                all_hold &= holds;
            }
        }
    }

    if let (Loaded::Image { pixmap, .. }, Some(path)) = (&loaded, &cli.output) {
        let image = overlay(pixmap, &layers);
        fs::write(path, image.encode_p6()).with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(all_hold)
}

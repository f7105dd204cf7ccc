mod common;

use std::fs;

use common::*;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;
use spatialmc::io::{
    build_multilayer_model, image_model, load_graph_model, load_image_model, load_pixmap, overlay,
    parse_graph_model, parse_placements, save_overlay_image, write_graph_model, MultilayerOptions, Pixmap,
    Placement, Rgb, COORD,
};
use spatialmc::{
    parse_individual, CollectiveChecker, ClosureModel, ModelIoError, Oracle, PointLabels, PointSet, SpecProgram,
};

#[test]
fn graph_fixture() {
    let m = paper_graph();
    assert_eq!((m.point_count(), m.space().edge_count()), (10, 30));
    assert_eq!(m.propositions().count(), 3);
    assert_eq!(m.atom("yellow").to_vec(), [0, 1, 2, 8, 9]);
    assert_eq!(m.atom("red").to_vec(), [3, 4]);
    assert_eq!(m.atom("white").to_vec(), [5, 6, 7]);
}

#[test]
fn graph_errors() {
    let dangling = parse_graph_model("graph directed\nnode a\nedge a b\n").unwrap_err();
    assert!(matches!(dangling, ModelIoError::Syntax { line: 3, .. }), "{dangling}");
    let duplicate = parse_graph_model("graph directed\nnode a\nnode a\n").unwrap_err();
    assert!(matches!(duplicate, ModelIoError::Syntax { line: 3, .. }));
    assert!(parse_graph_model("graph sideways\n").is_err());
    assert!(parse_graph_model("").is_err());
    assert!(load_graph_model(fixture("no-such.graph")).is_err());

    let empty = parse_graph_model("graph symmetric\n").unwrap();
    assert_eq!(empty.point_count(), 0);
    assert!(spatialmc::sat(&empty, &parse_individual("TT").unwrap()).is_empty());

    let looped = parse_graph_model("graph directed\nnode a\nnode b\nedge a a\nedge a b\n").unwrap();
    assert_eq!(looped.space().edges().collect::<Vec<_>>(), [(0, 1)]);
}

#[test]
fn graph_serialization_is_idempotent_on_fixtures() {
    for name in ["paper-graph-10.graph", "partition-6-left.graph", "partition-6-right.graph"] {
        let m = load_graph_model(fixture(name)).unwrap();
        let text = write_graph_model(&m);
        let again = parse_graph_model(&text).unwrap();
        assert_eq!(write_graph_model(&again), text, "{name}");
        assert_eq!(again.space().edges().collect::<Vec<_>>(), m.space().edges().collect::<Vec<_>>());
    }
}

#[test]
fn small_images() {
    let white = Pixmap::new(2, 2, Rgb::WHITE);
    let palette = [("black".to_string(), Rgb::BLACK), ("white".to_string(), Rgb::WHITE)];
    let m = image_model(white, &palette, &[]).unwrap().model;
    assert!(m.atom("white").is_full());
    assert!(m.atom("black").is_empty());

    let black = image_model(Pixmap::new(1, 1, Rgb::BLACK), &palette, &[]).unwrap();
    let painted = spatialmc::sat(&black.model, &parse_individual("white S black").unwrap());
    assert!(painted.is_empty());
    assert_eq!(overlay(&black.pixmap, &[(painted, rgb("#00ff00"))]), black.pixmap);
}

#[test]
fn pixmap_errors() {
    for bad in [&b"P5\n1 1\n255\n\0"[..], b"P3\n1 1\n15\n0 0 0\n", b"P3\n1\n", b"P6\n2 2\n255\n\0\0\0"] {
        assert!(matches!(Pixmap::decode(bad), Err(ModelIoError::Pixmap(_))), "{bad:?}");
    }
    let mask = Pixmap::new(3, 3, Rgb::WHITE);
    let err = image_model(Pixmap::new(2, 2, Rgb::WHITE), &[], &[("x".into(), mask)]).unwrap_err();
    assert!(matches!(err, ModelIoError::Invalid(_)));
}

#[test]
fn overlays_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let source = load_pixmap(fixture("two-holes-11.ppm")).unwrap();
    let copy = dir.path().join("copy.ppm");
    save_overlay_image(&source, &[], &copy).unwrap();
    let reloaded = load_pixmap(&copy).unwrap();
    assert_eq!(reloaded, source);
    assert_eq!(fs::read(&copy).unwrap(), source.encode_p6());

    let palette = [("white".to_string(), Rgb::WHITE), ("black".to_string(), Rgb::BLACK)];
    let a = image_model(source.clone(), &palette, &[]).unwrap().model;
    let b = load_image_model(&copy, &palette, &[]).unwrap().model;
    assert_eq!(a.propositions().collect::<Vec<_>>(), b.propositions().collect::<Vec<_>>());
    assert_eq!(a.space().edges().collect::<Vec<_>>(), b.space().edges().collect::<Vec<_>>());

    let full = dir.path().join("full.ppm");
    let red = rgb("#ff0000");
    save_overlay_image(&source, &[(PointSet::full(121), red)], &full).unwrap();
    assert!(load_pixmap(&full).unwrap().pixels().iter().all(|&p| p == red));

    // Later layers win.
    let layered = overlay(&source, &[(set(121, [0, 1]), red), (set(121, [1]), Rgb::WHITE)]);
    assert_eq!((layered.get(0, 0), layered.get(1, 0)), (red, Rgb::WHITE));
}

#[test]
fn two_hole_fixture_geometry() {
    let m = two_holes();
    assert!(matches!(m.space().labels(), PointLabels::Grid { width: 11, height: 11 }));
    let white = m.atom("white");
    assert_eq!(white.len(), 13);
    assert_eq!(m.atom("gray").len(), 40);
    let enclosed = spatialmc::sat(&m, &parse_individual("white S black").unwrap());
    assert_eq!(enclosed.len(), 10);
    assert!(white.difference(&enclosed).iter().all(|x| x % 11 >= 8));
}

// ------------------------------------------------------------ multilayer

fn place(column: usize, row: usize) -> Placement {
    Placement {
        column,
        row,
        position: (column as f64, row as f64),
    }
}

#[test]
fn agents_within_delta_share_an_edge() {
    let base = ClosureModel::new(spatialmc::build_grid_4adj(4, 1).unwrap())
        .with_points("agent", [0, 3])
        .unwrap();
    let m = build_multilayer_model(&base, &[place(0, 0), place(3, 0)], &MultilayerOptions::new(3.0)).unwrap();
    assert_eq!(m.atom(COORD).to_vec(), [4, 5]);
    assert!(m.space().has_edge(4, 5) && m.space().has_edge(5, 4));
    let near = spatialmc::sat(&m, &parse_individual("coord & N agent").unwrap());
    assert_eq!(near.to_vec(), [4, 5]);

    let apart = build_multilayer_model(&base, &[place(0, 0), place(3, 0)], &MultilayerOptions::new(0.0)).unwrap();
    assert_eq!(apart.space().edges().filter(|&(x, y)| x >= 4 && y >= 4).count(), 0);
}

const EVACUATION: &str = "
let obstacle = black | brown | danger;
let agent = blue | cyan | purple | yellow;
let safe = (white | red) & !obstacle;
let phi4 = (red & safe) & (safe T green);
let phi5 = safe T phi4;
let nearYellow = coord & N yellow;
let nearBlue = coord & N blue;
let nearAgent = coord & N agent;
ask \"nearYellow -< G nearAgent\";
ask \"nearBlue -< G nearAgent\";
ask \"yellow -< G phi5\";
ask \"blue -< G phi5\";
";

fn evacuation(delta: f64) -> ClosureModel {
    let palette: Vec<_> = [("white", "#ffffff"), ("black", "#000000"), ("red", "#ff0000"), ("green", "#00ff00")]
        .iter()
        .map(|(p, c)| (p.to_string(), rgb(c)))
        .collect();
    let masks: Vec<_> = ["yellow", "blue"]
        .iter()
        .map(|p| (p.to_string(), load_pixmap(fixture(&format!("evacuation-{p}.ppm"))).unwrap()))
        .collect();
    let image = load_image_model(fixture("evacuation.ppm"), &palette, &masks).unwrap();
    let coords = parse_placements(&fs::read_to_string(fixture("evacuation-coords.csv")).unwrap()).unwrap();
    build_multilayer_model(&image.model, &coords, &MultilayerOptions::new(delta)).unwrap()
}

#[test]
fn evacuation_fixture() {
    let m = evacuation(3.0);
    let pixels = 16 * 8;
    assert_eq!(m.point_count(), pixels + 4);
    assert_eq!(m.atom("yellow").len(), 2);
    assert_eq!(m.atom("blue").len(), 2);

    // Directed pos: every coordinate point has an incoming pixel edge and no
    // edge back into the image layer.
    for c in pixels..m.point_count() {
        assert!(m.space().pre(c).iter().any(|&p| (p as usize) < pixels));
        assert!(m.space().post(c).iter().all(|&p| p as usize >= pixels));
    }

    let program = SpecProgram::parse(EVACUATION).unwrap();
    let mut checker = CollectiveChecker::new(&m);
    let answers: Vec<bool> = program.asks().map(|a| checker.check_global(&a.formula)).collect();
    assert_eq!(answers, [true, false, true, false]);

    // The communication answers depend only on the coordinate layer, small
    // enough for the oracle once the derived propositions are fixed.
    let core = m.atom(COORD);
    let keep = core.to_vec();
    let mut local = ClosureModel::new(m.space().subspace(&core).unwrap());
    for name in ["nearYellow", "nearBlue", "nearAgent"] {
        let s = spatialmc::sat(&m, &program.macros[name]);
        local.set_proposition(name, PointSet::from_fn(keep.len(), |i| s.contains(keep[i]))).unwrap();
    }
    let oracle = Oracle::new(&local).unwrap();
    for (i, ask) in program.asks().take(2).enumerate() {
        let collective = spatialmc::parse_collective(&ask.text).unwrap();
        assert_eq!(oracle.holds_collective(&local.all_points(), &collective).unwrap(), answers[i]);
    }

    // Without communication range no two agents are grouped.
    let isolated = evacuation(0.0);
    let yellow = program.asks().next().unwrap();
    assert!(!CollectiveChecker::new(&isolated).check_global(&yellow.formula));
}

proptest! {
    #[test]
    fn random_graphs_serialize_idempotently(seed in any::<u64>(), symmetric in any::<bool>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let mut m = random_model(&mut rng, 10, 0.3);
        if symmetric {
            let pairs: Vec<_> = m.space().edges().flat_map(|(x, y)| [(x, y), (y, x)]).collect();
            let space = spatialmc::QuasiDiscreteSpace::from_edges(m.point_count(), pairs).unwrap();
            m = m.replace_space(space).unwrap();
        }
        let text = write_graph_model(&m);
        let parsed = parse_graph_model(&text).unwrap();
        prop_assert_eq!(write_graph_model(&parsed), text.clone());
        prop_assert_eq!(parsed.space().edges().collect::<Vec<_>>(), m.space().edges().collect::<Vec<_>>());
        prop_assert_eq!(parsed.space().is_symmetric(), text.starts_with("graph symmetric"));
        for (name, set) in m.propositions().filter(|(_, s)| !s.is_empty()) {
            prop_assert_eq!(parsed.proposition(name), Some(set));
        }
    }

    #[test]
    fn pixmaps_round_trip(w in 1usize..6, h in 1usize..6, seed in any::<u64>()) {
        use rand::Rng;
        let mut rng = StdRng::seed_from_u64(seed);
        let pixels: Vec<Rgb> = (0..w * h).map(|_| Rgb([rng.random(), rng.random(), rng.random()])).collect();
        let p = Pixmap::from_pixels(w, h, pixels).unwrap();
        prop_assert_eq!(Pixmap::decode(&p.encode_p6()).unwrap(), p.clone());
        prop_assert_eq!(Pixmap::decode(&p.encode_p3()).unwrap(), p);
    }
}

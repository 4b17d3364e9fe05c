use quick_xml::events::Event;
use quick_xml::Reader;
use spectrum_games::oracle::oracle_report;
use spectrum_games::report::{csv_string, parse_csv, read_csv, svg_scatter};
use spectrum_games::{
    evolve, export_csv, export_svg_scatter, Axes, DetectionConfig, DominanceKind, EquilibriumReport, GameKind,
    GameSpec, Grid, PayoffModel, RationalityProfile, Source,
};

fn games() -> Vec<GameSpec> {
    vec![
        GameSpec::cournot(2, 10.0, 1.0).unwrap(),
        GameSpec::stackelberg(10.0, 1.0).unwrap(),
        GameSpec::bertrand(10.0, 1.0).unwrap(),
    ]
}

fn sample_reports() -> Vec<EquilibriumReport> {
    let cfg = DetectionConfig { max_generations: 15, ..DetectionConfig::default() }.with_seed(5);
    let np = DominanceKind::JointNashPareto("NP".parse().unwrap());
    let mut out = Vec::new();
    for g in games() {
        out.push(EquilibriumReport::closed_form(&g).unwrap());
        out.push(evolve(&g, &DominanceKind::ParetoDominance, &cfg).unwrap());
        out.push(evolve(&g, &np, &cfg).unwrap());
        let grid = Grid::for_game(&g, 0.5).unwrap();
        let nash = DominanceKind::JointNashPareto(RationalityProfile::all_nash(2));
        out.push(oracle_report(&g, &nash, &grid, 1e-9).unwrap());
    }
    out
}

/// Counts elements, failing on any XML syntax error.
fn xml_elements(svg: &str) -> usize {
    let mut reader = Reader::from_str(svg);
    let mut elements = 0;
    loop {
        match reader.read_event() {
            Ok(Event::Eof) => return elements,
            Ok(Event::Start(_) | Event::Empty(_)) => elements += 1,
            Ok(_) => {}
            Err(e) => panic!("malformed SVG at {}: {e}", reader.buffer_position()),
        }
    }
}

#[test]
fn csv_round_trip_recomputes_payoffs() {
    for report in sample_reports() {
        let rows = parse_csv(&csv_string(&report).unwrap()).unwrap();
        assert_eq!(rows.len(), report.len());
        for (row, (p, u)) in rows.iter().zip(report.profiles.iter().zip(&report.payoffs)) {
            assert_eq!(row.source, report.source);
            assert_eq!(row.seed, report.seed);
            for (a, b) in row.profile.iter().zip(p.iter()) {
                assert!((a - b).abs() <= 5e-7, "{a} vs {b}");
            }
            for (a, b) in row.payoffs.iter().zip(u.iter()) {
                assert!((a - b).abs() <= 5e-7, "{a} vs {b}");
            }
            // Payoffs recomputed from the printed strategies agree with the printed payoffs.
            // Rounding can create or break a Bertrand price tie; such rows are skipped.
            let tie_changed = (p[0] == p[1]) != (row.profile[0] == row.profile[1]);
            if report.game.kind() == GameKind::Bertrand && tie_changed {
                continue;
            }
            let again = report.game.payoffs(&row.profile).unwrap();
            for (a, b) in again.iter().zip(row.payoffs.iter()) {
                assert!((a - b).abs() <= 1e-5, "{a} vs {b} at {}", row.profile);
            }
        }
    }
}

#[test]
fn csv_file_round_trip() {
    let dir = std::env::temp_dir().join(format!("spectrum-games-io-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("closed.csv");
    let g = GameSpec::cournot(2, 10.0, 1.0).unwrap();
    export_csv(&EquilibriumReport::closed_form(&g).unwrap(), &path).unwrap();
    let rows = read_csv(&path).unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].profile.0, vec![3.0, 3.0]);
    assert_eq!(rows[0].source, Source::ClosedForm);
    assert!(export_csv(&EquilibriumReport::closed_form(&g).unwrap(), dir.join("missing/dir/x.csv")).is_err());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn every_svg_is_well_formed() {
    let reports = sample_reports();
    for axes in [Axes::StrategySpace, Axes::PayoffSpace] {
        for report in &reports {
            let svg = svg_scatter(&[report], axes).unwrap();
            assert!(xml_elements(&svg) > report.len());
        }
        let all: Vec<&EquilibriumReport> = reports.iter().take(4).collect();
        xml_elements(&svg_scatter(&all, axes).unwrap());
    }
}

#[test]
fn pareto_scatter_follows_the_line() {
    let g = GameSpec::cournot(2, 10.0, 1.0).unwrap();
    let grid = Grid::for_game(&g, 0.25).unwrap();
    let report = oracle_report(&g, &DominanceKind::ParetoDominance, &grid, 1e-9).unwrap();
    let svg = svg_scatter(&[&report], Axes::StrategySpace).unwrap();
    assert_eq!(svg.matches("data-x=").count(), report.len());
    assert!(svg.contains(r#"data-x="2.25" data-y="2.25""#));
}

#[test]
fn svg_file_export_rejects_three_players() {
    let dir = std::env::temp_dir().join(format!("spectrum-games-svg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let g3 = GameSpec::cournot(3, 10.0, 1.0).unwrap();
    let r = EquilibriumReport::closed_form(&g3).unwrap();
    assert!(matches!(
        export_svg_scatter(&r, Axes::StrategySpace, dir.join("x.svg")),
        Err(spectrum_games::Error::UnsupportedDimension(3))
    ));
    let s = GameSpec::stackelberg(10.0, 1.0).unwrap();
    let path = dir.join("fig4.svg");
    export_svg_scatter(&EquilibriumReport::closed_form(&s).unwrap(), Axes::PayoffSpace, &path).unwrap();
    let svg = std::fs::read_to_string(&path).unwrap();
    xml_elements(&svg);
    assert!(svg.contains(r#"data-x="10.125" data-y="5.0625""#));
    std::fs::remove_dir_all(&dir).unwrap();
}

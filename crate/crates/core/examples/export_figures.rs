//! Writes CSV point sets and SVG scatter plots for the six figure presets:
//! strategy space for odd figures, payoff space for even ones.
//!
//! cargo run --release --example export_figures [out_dir]
//!
//! Files land in `out_dir`, else `$SPECTRUM_EQ_OUT_DIR`, else `./figures`.

use std::path::PathBuf;

use spectrum_games::cli::OUT_DIR_ENV;
use spectrum_games::config::Preset;
use spectrum_games::report::export_svg_overlay;
use spectrum_games::{
    evolve, export_csv, DetectionConfig, DominanceKind, EquilibriumReport, Error, GameSpec, RationalityProfile, Result,
};

fn main() -> Result<()> {
    let dir: PathBuf =
        std::env::args().nth(1).or_else(|| std::env::var(OUT_DIR_ENV).ok()).unwrap_or_else(|| "figures".into()).into();
    std::fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;

    for preset in [Preset::Fig1, Preset::Fig2, Preset::Fig3, Preset::Fig4, Preset::Fig5, Preset::Fig6] {
        let game = GameSpec::new(preset.kind(), 2, 10.0, 1.0)?;
        let cfg = DetectionConfig::default().with_seed(1);
        let mut reports = Vec::new();
        for label in Preset::RELATIONS {
            let r: RationalityProfile = label.parse()?;
            let report = evolve(&game, &DominanceKind::from_rationality(r), &cfg)?;
            export_csv(&report, dir.join(format!("{}_{label}.csv", preset.name())))?;
            reports.push(report);
        }
        let closed = EquilibriumReport::closed_form(&game)?;
        let mut layers: Vec<&EquilibriumReport> = reports.iter().collect();
        layers.push(&closed);
        let svg = dir.join(format!("{}.svg", preset.name()));
        export_svg_overlay(&layers, preset.axes(), &svg)?;
        println!("{}: {} {:?} -> {}", preset.name(), game.kind(), preset.axes(), svg.display());
    }
    Ok(())
}

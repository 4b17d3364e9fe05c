//! Detected equilibrium sets and their CSV / SVG renderings.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::equilibria::DominanceKind;
use crate::error::{Error, Result};
use crate::evolve::{DetectionConfig, GenerationRecord};
use crate::game::{GameSpec, PayoffModel, PayoffVector, StrategyProfile};

/// Written in the seed column of rows that do not come from a seeded run.
pub const NO_SEED: &str = "—";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Source {
    Evolve,
    Oracle,
    ClosedForm,
}

impl Source {
    pub fn name(self) -> &'static str {
        match self {
            Source::Evolve => "evolve",
            Source::Oracle => "oracle",
            Source::ClosedForm => "closed_form",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        match s {
            "evolve" => Some(Source::Evolve),
            "oracle" => Some(Source::Oracle),
            "closed_form" => Some(Source::ClosedForm),
            _ => None,
        }
    }
}

/// A set of equilibrium profiles with their payoffs, as produced by one detector.
#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumReport {
    pub game: GameSpec,
    /// Relation the set is non-dominated under; `None` for analytic solutions.
    pub relation: Option<DominanceKind>,
    pub source: Source,
    pub profiles: Vec<StrategyProfile>,
    pub payoffs: Vec<PayoffVector>,
    pub trace: Vec<GenerationRecord>,
    pub seed: Option<u64>,
    pub config: Option<DetectionConfig>,
    pub converged_at: Option<usize>,
}

impl EquilibriumReport {
    pub fn new(
        game: GameSpec,
        relation: Option<DominanceKind>,
        source: Source,
        profiles: Vec<StrategyProfile>,
        payoffs: Vec<PayoffVector>,
    ) -> Result<Self> {
        if profiles.is_empty() {
            return Err(Error::invalid("an equilibrium report needs at least one profile"));
        }
        if profiles.len() != payoffs.len() {
            return Err(Error::invalid(format!("{} profiles but {} payoff vectors", profiles.len(), payoffs.len())));
        }
        let n = game.n();
        if profiles.iter().any(|p| p.len() != n) || payoffs.iter().any(|u| u.len() != n) {
            return Err(Error::invalid(format!("profiles and payoffs must have {n} entries")));
        }
        Ok(Self {
            game,
            relation,
            source,
            profiles,
            payoffs,
            trace: Vec::new(),
            seed: None,
            config: None,
            converged_at: None,
        })
    }

    /// Builds a report from profiles, computing their payoffs.
    pub fn from_profiles(
        game: &GameSpec,
        relation: Option<DominanceKind>,
        source: Source,
        profiles: Vec<StrategyProfile>,
    ) -> Result<Self> {
        let payoffs = profiles.iter().map(|p| game.payoffs(p)).collect::<Result<Vec<_>>>()?;
        Self::new(game.clone(), relation, source, profiles, payoffs)
    }

    /// The game's analytic equilibrium.
    pub fn closed_form(game: &GameSpec) -> Result<Self> {
        Self::from_profiles(game, None, Source::ClosedForm, vec![game.closed_form()?])
    }

    pub fn len(&self) -> usize {
        self.profiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.profiles.is_empty()
    }

    /// Mean profile and mean payoffs.
    pub fn centroid(&self) -> (Vec<f64>, Vec<f64>) {
        let n = self.game.n();
        let count = self.len() as f64;
        let mut s = vec![0.0; n];
        let mut u = vec![0.0; n];
        for (p, q) in self.profiles.iter().zip(&self.payoffs) {
            for i in 0..n {
                s[i] += p[i] / count;
                u[i] += q[i] / count;
            }
        }
        (s, u)
    }

    /// Largest gap between stored payoffs and payoffs recomputed from the profiles.
    pub fn payoff_drift(&self) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for (p, u) in self.profiles.iter().zip(&self.payoffs) {
            let fresh = self.game.payoffs(p)?;
            for (a, b) in fresh.iter().zip(u.iter()) {
                worst = worst.max((a - b).abs());
            }
        }
        Ok(worst)
    }
}

fn fixed6(v: f64) -> String {
    // avoid printing "-0.000000"
    let s = format!("{v:.6}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        s.trim_start_matches('-').to_owned()
    } else {
        s
    }
}

/// Column names: strategies, payoffs, then `source,seed`.
pub fn csv_header(n: usize) -> Vec<String> {
    (1..=n)
        .map(|i| format!("player_{i}_strategy"))
        .chain((1..=n).map(|i| format!("player_{i}_payoff")))
        .chain(["source".to_owned(), "seed".to_owned()])
        .collect()
}

/// Renders the report as CSV text with six-decimal fixed formatting.
pub fn csv_string(report: &EquilibriumReport) -> Result<String> {
    if report.is_empty() {
        return Err(Error::invalid("refusing to export an empty report"));
    }
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(csv_header(report.game.n()))?;
    let seed = report.seed.map_or_else(|| NO_SEED.to_owned(), |s| s.to_string());
    for (p, u) in report.profiles.iter().zip(&report.payoffs) {
        let row: Vec<String> = p
            .iter()
            .chain(u.iter())
            .map(|v| fixed6(*v))
            .chain([report.source.name().to_owned(), seed.clone()])
            .collect();
        w.write_record(&row)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::invalid(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::invalid(e.to_string()))
}

pub fn export_csv(report: &EquilibriumReport, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let text = csv_string(report)?;
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// One data row read back from an exported CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvRow {
    pub profile: StrategyProfile,
    pub payoffs: PayoffVector,
    pub source: Source,
    pub seed: Option<u64>,
}

pub fn parse_csv(text: &str) -> Result<Vec<CsvRow>> {
    let mut r = csv::ReaderBuilder::new().from_reader(text.as_bytes());
    let header = r.headers()?.clone();
    if header.len() < 4 || header.len() % 2 != 0 {
        return Err(Error::invalid(format!("unexpected CSV header with {} columns", header.len())));
    }
    let n = (header.len() - 2) / 2;
    let expected = csv_header(n);
    if header.iter().ne(expected.iter().map(String::as_str)) {
        return Err(Error::invalid(format!("unexpected CSV header {header:?}")));
    }
    let num = |s: &str| s.parse::<f64>().map_err(|e| Error::invalid(format!("bad number `{s}`: {e}")));
    let mut rows = Vec::new();
    for record in r.records() {
        let record = record?;
        let values = (0..2 * n).map(|k| num(&record[k])).collect::<Result<Vec<_>>>()?;
        let source = Source::parse(&record[2 * n])
            .ok_or_else(|| Error::invalid(format!("unknown source `{}`", &record[2 * n])))?;
        let seed = match &record[2 * n + 1] {
            NO_SEED => None,
            s => Some(s.parse().map_err(|e| Error::invalid(format!("bad seed `{s}`: {e}")))?),
        };
        rows.push(CsvRow {
            profile: StrategyProfile(values[..n].to_vec()),
            payoffs: PayoffVector(values[n..].to_vec()),
            source,
            seed,
        });
    }
    Ok(rows)
}

pub fn read_csv(path: impl AsRef<Path>) -> Result<Vec<CsvRow>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_csv(&text)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axes {
    StrategySpace,
    PayoffSpace,
}

const SIZE: f64 = 480.0;
const MARGIN: f64 = 60.0;

/// Standalone SVG scatter of one or more two-player reports on shared axes.
pub fn svg_scatter(reports: &[&EquilibriumReport], axes: Axes) -> Result<String> {
    let first = reports.first().ok_or_else(|| Error::invalid("nothing to plot"))?;
    for r in reports {
        if r.game.n() != 2 {
            return Err(Error::UnsupportedDimension(r.game.n()));
        }
    }
    let points = |r: &EquilibriumReport| -> Vec<(f64, f64)> {
        match axes {
            Axes::StrategySpace => r.profiles.iter().map(|p| (p[0], p[1])).collect(),
            Axes::PayoffSpace => r.payoffs.iter().map(|u| (u[0], u[1])).collect(),
        }
    };
    let all: Vec<(f64, f64)> = reports.iter().flat_map(|r| points(r)).collect();
    let (x_lo, x_hi) = padded_range(all.iter().map(|p| p.0));
    let (y_lo, y_hi) = padded_range(all.iter().map(|p| p.1));
    let plot = SIZE - 2.0 * MARGIN;
    let sx = |x: f64| MARGIN + (x - x_lo) / (x_hi - x_lo) * plot;
    let sy = |y: f64| SIZE - MARGIN - (y - y_lo) / (y_hi - y_lo) * plot;

    let game = &first.game;
    let (x_label, y_label) = match axes {
        Axes::StrategySpace => {
            (format!("player 1 {}", game.kind().strategy_name()), format!("player 2 {}", game.kind().strategy_name()))
        }
        Axes::PayoffSpace => ("player 1 payoff u1".to_owned(), "player 2 payoff u2".to_owned()),
    };

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="24" font-family="sans-serif" font-size="14" text-anchor="middle">{} (W = {}, K = {})</text>"#,
        SIZE / 2.0,
        game.kind(),
        game.whitespace(),
        game.cost()
    );
    // axes frame
    let _ =
        writeln!(s, r#"<rect x="{MARGIN}" y="{MARGIN}" width="{plot}" height="{plot}" fill="none" stroke="black"/>"#);
    for (xv, label) in nice_ticks(x_lo, x_hi) {
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="10" text-anchor="middle">{}</text>"#,
            sx(xv),
            SIZE - MARGIN + 14.0,
            label
        );
    }
    for (yv, label) in nice_ticks(y_lo, y_hi) {
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="10" text-anchor="end">{}</text>"#,
            MARGIN - 4.0,
            sy(yv) + 3.0,
            label
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12" text-anchor="middle">{}</text>"#,
        SIZE / 2.0,
        SIZE - 18.0,
        escape(&x_label)
    );
    let _ = writeln!(
        s,
        r#"<text x="18" y="{}" font-family="sans-serif" font-size="12" text-anchor="middle" transform="rotate(-90 18 {})">{}</text>"#,
        SIZE / 2.0,
        SIZE / 2.0,
        escape(&y_label)
    );

    for (layer, r) in reports.iter().enumerate() {
        let label = r.relation.as_ref().map_or_else(|| r.source.name().to_owned(), |k| k.label());
        let color = match r.source {
            Source::ClosedForm => "crimson",
            _ => PALETTE[layer % PALETTE.len()],
        };
        let _ = writeln!(s, r#"<g class="{}" data-relation="{}">"#, r.source.name(), escape(&label));
        for (x, y) in points(r) {
            let _ = writeln!(s, r#"{} data-x="{x}" data-y="{y}"/>"#, marker(r.source, sx(x), sy(y), color));
        }
        // legend entry
        let ly = MARGIN + 12.0 + 14.0 * layer as f64;
        let lx = SIZE - MARGIN - 100.0;
        let entry = match r.source {
            Source::ClosedForm => "closed form".to_owned(),
            src => format!("{label} {}", src.name()),
        };
        let _ = writeln!(s, "{}/>", marker(r.source, lx, ly, color));
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="10">{}</text>"#,
            lx + 9.0,
            ly + 3.5,
            escape(&entry)
        );
        let _ = writeln!(s, "</g>");
    }
    let _ = writeln!(s, "</svg>");
    Ok(s)
}

pub fn export_svg_scatter(report: &EquilibriumReport, axes: Axes, path: impl AsRef<Path>) -> Result<()> {
    export_svg_overlay(&[report], axes, path)
}

pub fn export_svg_overlay(reports: &[&EquilibriumReport], axes: Axes, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let text = svg_scatter(reports, axes)?;
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

const PALETTE: [&str; 6] = ["steelblue", "seagreen", "darkorange", "mediumpurple", "saddlebrown", "teal"];

/// Opening of a marker element (unterminated so callers can append attributes).
fn marker(source: Source, px: f64, py: f64, color: &str) -> String {
    match source {
        Source::Evolve => format!(r#"<circle cx="{px:.2}" cy="{py:.2}" r="3" fill="{color}""#),
        Source::Oracle => format!(
            r#"<rect x="{:.2}" y="{:.2}" width="6" height="6" fill="none" stroke="{color}""#,
            px - 3.0,
            py - 3.0
        ),
        Source::ClosedForm => format!(
            r#"<polygon points="{:.2},{:.2} {:.2},{:.2} {:.2},{:.2} {:.2},{:.2}" fill="none" stroke="{color}" stroke-width="2""#,
            px,
            py - 6.0,
            px + 6.0,
            py,
            px,
            py + 6.0,
            px - 6.0,
            py
        ),
    }
}

/// Round tick positions (1, 2 or 5 times a power of ten) inside `[lo, hi]`, with labels.
fn nice_ticks(lo: f64, hi: f64) -> Vec<(f64, String)> {
    let raw = (hi - lo) / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0].iter().map(|m| m * mag).find(|s| *s >= raw).unwrap_or(10.0 * mag);
    let decimals = (-step.log10().floor()).max(0.0) as usize;
    let mut ticks = Vec::new();
    let mut k = (lo / step).ceil();
    while k * step <= hi + 1e-9 * step {
        let v = k * step + 0.0;
        ticks.push((v, format!("{v:.decimals$}")));
        k += 1.0;
    }
    ticks
}

fn padded_range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    let span = hi - lo;
    if span <= 1e-12 {
        (lo - 1.0, hi + 1.0)
    } else {
        (lo - 0.05 * span, hi + 0.05 * span)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cournot_ne() -> EquilibriumReport {
        EquilibriumReport::closed_form(&GameSpec::cournot(2, 10.0, 1.0).unwrap()).unwrap()
    }

    #[test]
    fn closed_form_csv_row() {
        let text = csv_string(&cournot_ne()).unwrap();
        assert_eq!(
            text,
            "player_1_strategy,player_2_strategy,player_1_payoff,player_2_payoff,source,seed\n\
             3.000000,3.000000,9.000000,9.000000,closed_form,—\n"
        );
    }

    #[test]
    fn empty_report_is_rejected() {
        let g = GameSpec::cournot(2, 10.0, 1.0).unwrap();
        assert!(EquilibriumReport::new(g, None, Source::Oracle, vec![], vec![]).is_err());
        let mut r = cournot_ne();
        r.profiles.clear();
        r.payoffs.clear();
        assert!(csv_string(&r).is_err());
    }

    #[test]
    fn misaligned_report_is_rejected() {
        let g = GameSpec::cournot(2, 10.0, 1.0).unwrap();
        let p = vec![StrategyProfile::from([1.0, 1.0])];
        assert!(EquilibriumReport::new(g.clone(), None, Source::Oracle, p.clone(), vec![]).is_err());
        let bad = vec![PayoffVector(vec![1.0])];
        assert!(EquilibriumReport::new(g, None, Source::Oracle, p, bad).is_err());
    }

    #[test]
    fn negative_zero_prints_plain() {
        assert_eq!(fixed6(-0.0), "0.000000");
        assert_eq!(fixed6(-1e-9), "0.000000");
        assert_eq!(fixed6(-4.75), "-4.750000");
        assert_eq!(fixed6(1234567.0), "1234567.000000");
    }

    #[test]
    fn csv_parses_back() {
        let mut r = cournot_ne();
        r.seed = Some(42);
        let rows = parse_csv(&csv_string(&r).unwrap()).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].profile.0, vec![3.0, 3.0]);
        assert_eq!(rows[0].source, Source::ClosedForm);
        assert_eq!(rows[0].seed, Some(42));
        assert!(parse_csv("a,b\n1,2\n").is_err());
    }

    #[test]
    fn svg_needs_two_players() {
        let g = GameSpec::cournot(3, 10.0, 1.0).unwrap();
        let r = EquilibriumReport::closed_form(&g).unwrap();
        assert!(matches!(svg_scatter(&[&r], Axes::StrategySpace), Err(Error::UnsupportedDimension(3))));
    }

    #[test]
    fn svg_single_marker() {
        let g = GameSpec::stackelberg(10.0, 1.0).unwrap();
        let r = EquilibriumReport::closed_form(&g).unwrap();
        let svg = svg_scatter(&[&r], Axes::PayoffSpace).unwrap();
        assert_eq!(svg.matches("data-x=").count(), 1);
        assert!(svg.contains(r#"data-x="10.125" data-y="5.0625""#));
    }
}

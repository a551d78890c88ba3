//! Figure panels: parameters and SVG rendering.

use std::f64::consts::FRAC_1_SQRT_2;

use super::svg::Plot;
use super::{droplet_curves, spec_title};
use crate::ensembles::{parse_word, EnsembleKind, EnsembleSpec};
use crate::error::{Error, Result};
use crate::geometry::{ellipse_points, halfplane_intersection, sample_droplet_components, ConvexRegion};
use crate::linalg::eigenvalues;
use crate::numrange::{support_sweep, uniform_thetas, SupportCurve};
use crate::theory::{ellipse_ansatz, limit_support, power_ginibre_radius, wishart_support, Droplet, DropletKind, EllipseAxes};

/// Supporting lines drawn for the envelope panels.
const ENVELOPE_LINES: usize = 72;

#[derive(Clone, Debug, PartialEq)]
pub enum FigurePanel {
    /// Eigenvalues, droplet, limit and empirical range of one ensemble.
    Ensemble { id: String, spec: EnsembleSpec },
    /// Several Ginibre words overlaid on the two-factor limit disc.
    Words { id: String, n: usize, words: Vec<String> },
    /// Wishart envelope as an intersection of supporting half-planes, with
    /// the droplet and the ellipse ansatz; theory only.
    Envelope { id: String, tau: f64, alpha: f64 },
    /// Simulated Wishart range against the envelope and the ellipse ansatz.
    EnvelopeVsSimulation { id: String, n: usize, tau: f64, alpha: f64 },
}

/// Every accepted panel id.
pub fn figure_ids() -> Vec<String> {
    let mut ids = Vec::new();
    for fig in ['1', '2'] {
        ids.extend(('a'..='h').map(|p| format!("{fig}{p}")));
    }
    ids.push("3".into());
    ids.extend(('a'..='d').map(|p| format!("4{p}")));
    ids.push("5".into());
    ids
}

impl FigurePanel {
    pub fn lookup(id: &str) -> Result<Self> {
        let id = id.trim().to_ascii_lowercase();
        let taus_a = [0.0, 0.3, 0.6, 0.9];
        let taus_b = [0.0, 0.5, FRAC_1_SQRT_2, 0.85];
        let unknown = || Error::Parameter(format!("unknown figure id '{id}', expected one of {}", figure_ids().join(",")));
        if id.is_empty() || !id.is_ascii() {
            return Err(unknown());
        }
        let (fig, panel) = id.split_at(1);
        let idx = match panel.chars().next() {
            Some(c @ 'a'..='h') if panel.len() == 1 => Some(c as usize - 'a' as usize),
            None => None,
            _ => return Err(unknown()),
        };
        let ensemble = |kind, n, tau: f64, alpha: f64| FigurePanel::Ensemble {
            id: id.clone(),
            spec: EnsembleSpec::new(kind, n).with_tau(tau).with_alpha(alpha),
        };
        Ok(match (fig, idx) {
            ("1", Some(i @ 0..=3)) => ensemble(EnsembleKind::Elliptic, 500, taus_a[i], 0.0),
            ("1", Some(i @ 4..=7)) => ensemble(EnsembleKind::ChiralElliptic, 250, taus_b[i - 4], 1.0),
            ("2", Some(i @ 0..=3)) => ensemble(EnsembleKind::Wishart, 500, taus_a[i], 0.0),
            ("2", Some(i @ 4..=7)) => ensemble(EnsembleKind::Wishart, 500, taus_b[i - 4], 1.0),
            ("3", None) => FigurePanel::Envelope { id: id.clone(), tau: 0.8, alpha: 2.0 },
            ("4", Some(i @ 0..=3)) => {
                let words: &[&str] = match i {
                    0 => &["Y1Y2", "Y1Y1"],
                    1 => &["Y1Y1Y1"],
                    2 => &["Y1Y1Y2"],
                    _ => &["Y1Y2Y3"],
                };
                FigurePanel::Words { id: id.clone(), n: 500, words: words.iter().map(|w| w.to_string()).collect() }
            }
            ("5", None) => FigurePanel::EnvelopeVsSimulation { id: id.clone(), n: 3000, tau: 0.8, alpha: 2.0 },
            _ => return Err(unknown()),
        })
    }

    pub fn id(&self) -> &str {
        match self {
            FigurePanel::Ensemble { id, .. }
            | FigurePanel::Words { id, .. }
            | FigurePanel::Envelope { id, .. }
            | FigurePanel::EnvelopeVsSimulation { id, .. } => id,
        }
    }

    /// The panel with its matrix size replaced; `α` is kept fixed.
    pub fn with_n(self, n: usize) -> Self {
        match self {
            FigurePanel::Ensemble { id, spec } => {
                let alpha = spec.alpha();
                let spec = EnsembleSpec { n, ..spec }.with_alpha(alpha);
                FigurePanel::Ensemble { id, spec }
            }
            FigurePanel::Words { id, words, .. } => FigurePanel::Words { id, n, words },
            FigurePanel::EnvelopeVsSimulation { id, tau, alpha, .. } => {
                FigurePanel::EnvelopeVsSimulation { id, n, tau, alpha }
            }
            p @ FigurePanel::Envelope { .. } => p,
        }
    }
}

fn region_of(curve: &SupportCurve) -> Result<ConvexRegion> {
    halfplane_intersection(curve)
}

fn wishart_envelope(plot: &mut Plot, tau: f64, alpha: f64, thetas: usize, color: &str) -> Result<()> {
    for t in uniform_thetas(ENVELOPE_LINES) {
        plot.support_line(t, wishart_support(tau, alpha, t)?, color);
    }
    let env = SupportCurve::from_fn(uniform_thetas(thetas), |t| wishart_support(tau, alpha, t))?;
    plot.closed_curve(region_of(&env)?.vertices(), color, 1.6, None, "envelope");
    Ok(())
}

fn ansatz(plot: &mut Plot, tau: f64, alpha: f64) -> Result<()> {
    let axes: EllipseAxes = ellipse_ansatz(tau, alpha)?;
    plot.closed_curve(&ellipse_points(&axes, 720), "purple", 1.2, Some("6,4"), "ellipse ansatz");
    Ok(())
}

/// Renders a panel; `n` overrides the matrix size, `seed` picks the sample.
pub fn render(panel: &FigurePanel, n: Option<usize>, thetas: usize, seed: u64) -> Result<String> {
    if thetas < 3 {
        return Err(Error::Parameter(format!("--thetas must be at least 3, got {thetas}")));
    }
    let panel = match n {
        Some(n) => panel.clone().with_n(n),
        None => panel.clone(),
    };
    let grid = uniform_thetas(thetas);
    let title = |s: String| format!("Figure {}: {s}", panel.id());
    let mut plot;
    match &panel {
        FigurePanel::Ensemble { spec, .. } => {
            let spec = spec.clone().with_seed(seed);
            plot = Plot::new(title(spec_title(&spec)));
            let a = spec.sample()?;
            plot.scatter(&eigenvalues(&a)?, "red", "eigenvalues");
            for comp in droplet_curves(&spec)? {
                plot.closed_curve(&comp, "red", 1.0, None, "droplet");
            }
            let theory = SupportCurve::from_fn(grid.clone(), |t| limit_support(&spec, t))?;
            plot.closed_curve(region_of(&theory)?.vertices(), "black", 1.6, None, "limit");
            let empirical = support_sweep(&a, &grid)?;
            plot.closed_curve(region_of(&empirical)?.vertices(), "blue", 1.4, Some("2,3"), "simulated");
        }
        FigurePanel::Words { n, words, .. } => {
            plot = Plot::new(title(format!("Ginibre words {} N={n}", words.join(", "))));
            let colors = [("red", "blue"), ("orange", "teal")];
            let unit = Droplet::new(DropletKind::Ellipse, 0.0, 0.0)?;
            for comp in sample_droplet_components(&unit, 720)? {
                plot.closed_curve(&comp, "darkred", 1.0, None, "unit disc");
            }
            let r = power_ginibre_radius()?;
            let disc = ellipse_points(&EllipseAxes::centered(r, r), 720);
            plot.closed_curve(&disc, "black", 1.6, None, &format!("disc r={r:.4}"));
            for (k, w) in words.iter().enumerate() {
                let spec = EnsembleSpec::new(EnsembleKind::GinibreWord, *n).with_word(parse_word(w)?).with_seed(seed);
                let a = spec.sample()?;
                let (dots, curve) = colors[k % colors.len()];
                plot.scatter(&eigenvalues(&a)?, dots, &format!("eigenvalues {w}"));
                let empirical = support_sweep(&a, &grid)?;
                plot.closed_curve(region_of(&empirical)?.vertices(), curve, 1.4, Some("2,3"), &format!("simulated {w}"));
            }
        }
        FigurePanel::Envelope { tau, alpha, .. } => {
            plot = Plot::new(title(format!("Wishart envelope tau={tau} alpha={alpha}")));
            let droplet = Droplet::new(DropletKind::ShiftedEllipse, *tau, *alpha)?;
            for comp in sample_droplet_components(&droplet, 720)? {
                plot.closed_curve(&comp, "red", 1.0, None, "droplet");
            }
            wishart_envelope(&mut plot, *tau, *alpha, thetas, "green")?;
            ansatz(&mut plot, *tau, *alpha)?;
        }
        FigurePanel::EnvelopeVsSimulation { n, tau, alpha, .. } => {
            plot = Plot::new(title(format!("Wishart N={n} tau={tau} alpha={alpha}")));
            wishart_envelope(&mut plot, *tau, *alpha, thetas, "green")?;
            ansatz(&mut plot, *tau, *alpha)?;
            let spec = EnsembleSpec::new(EnsembleKind::Wishart, *n).with_tau(*tau).with_alpha(*alpha).with_seed(seed);
            let empirical = support_sweep(&spec.sample()?, &grid)?;
            plot.closed_curve(region_of(&empirical)?.vertices(), "blue", 1.4, None, "simulated");
        }
    }
    Ok(plot.render())
}

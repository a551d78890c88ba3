//! Minimal hand-written SVG plots in the complex plane.

use std::fmt::Write as _;

use num_complex::Complex64;

const SIZE: f64 = 640.0;
const PAD: f64 = 48.0;

#[derive(Clone, Debug)]
enum Layer {
    Scatter { points: Vec<Complex64>, color: String, radius: f64 },
    Path { points: Vec<Complex64>, closed: bool, color: String, width: f64, dash: Option<String> },
    /// Line `Re(e^{iθ} z) = value`, clipped to the frame.
    Line { theta: f64, value: f64, color: String },
}

/// A square plot with data coordinates mapped to pixels, `y` pointing up.
#[derive(Clone, Debug, Default)]
pub struct Plot {
    title: String,
    layers: Vec<Layer>,
    legend: Vec<(String, String)>,
}

impl Plot {
    pub fn new(title: impl Into<String>) -> Self {
        Self { title: title.into(), ..Self::default() }
    }

    pub fn scatter(&mut self, points: &[Complex64], color: &str, label: &str) -> &mut Self {
        self.layers.push(Layer::Scatter { points: points.to_vec(), color: color.into(), radius: 1.2 });
        self.label(color, label)
    }

    pub fn closed_curve(&mut self, points: &[Complex64], color: &str, width: f64, dash: Option<&str>, label: &str) -> &mut Self {
        self.layers.push(Layer::Path {
            points: points.to_vec(),
            closed: true,
            color: color.into(),
            width,
            dash: dash.map(Into::into),
        });
        self.label(color, label)
    }

    pub fn support_line(&mut self, theta: f64, value: f64, color: &str) -> &mut Self {
        self.layers.push(Layer::Line { theta, value, color: color.into() });
        self
    }

    pub fn label(&mut self, color: &str, label: &str) -> &mut Self {
        if !label.is_empty() && !self.legend.iter().any(|(_, l)| l == label) {
            self.legend.push((color.into(), label.into()));
        }
        self
    }

    fn bounds(&self) -> (f64, f64, f64, f64) {
        let mut b = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for layer in &self.layers {
            let pts = match layer {
                Layer::Scatter { points, .. } | Layer::Path { points, .. } => points,
                Layer::Line { .. } => continue,
            };
            for p in pts.iter().filter(|p| p.re.is_finite() && p.im.is_finite()) {
                b = (b.0.min(p.re), b.1.max(p.re), b.2.min(p.im), b.3.max(p.im));
            }
        }
        if !b.0.is_finite() {
            return (-1.0, 1.0, -1.0, 1.0);
        }
        let half = 0.5 * (b.1 - b.0).max(b.3 - b.2).max(1e-6) * 1.08;
        let (cx, cy) = (0.5 * (b.0 + b.1), 0.5 * (b.2 + b.3));
        (cx - half, cx + half, cy - half, cy + half)
    }

    pub fn render(&self) -> String {
        let (x0, x1, y0, y1) = self.bounds();
        let k = (SIZE - 2.0 * PAD) / (x1 - x0);
        let px = |z: Complex64| (PAD + (z.re - x0) * k, SIZE - PAD - (z.im - y0) * k);
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
        );
        let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{PAD}" y="{:.1}" font-family="sans-serif" font-size="14">{}</text>"#,
            PAD * 0.6,
            escape(&self.title)
        );
        let _ = writeln!(
            s,
            r#"<defs><clipPath id="frame"><rect x="{PAD}" y="{PAD}" width="{w}" height="{w}"/></clipPath></defs>"#,
            w = SIZE - 2.0 * PAD
        );
        let _ = writeln!(
            s,
            r##"<rect x="{PAD}" y="{PAD}" width="{w}" height="{w}" fill="none" stroke="#999" stroke-width="0.5"/>"##,
            w = SIZE - 2.0 * PAD
        );
        let _ = writeln!(s, r#"<g clip-path="url(#frame)">"#);
        axes(&mut s, &px, (x0, x1, y0, y1));
        for layer in &self.layers {
            match layer {
                Layer::Scatter { points, color, radius } => {
                    let _ = writeln!(s, r#"<g fill="{color}" fill-opacity="0.7">"#);
                    for &p in points {
                        let (x, y) = px(p);
                        let _ = writeln!(s, r#"<circle cx="{x:.2}" cy="{y:.2}" r="{radius}"/>"#);
                    }
                    s.push_str("</g>\n");
                }
                Layer::Path { points, closed, color, width, dash } => {
                    if points.is_empty() {
                        continue;
                    }
                    let mut d = String::new();
                    for (i, &p) in points.iter().enumerate() {
                        let (x, y) = px(p);
                        let _ = write!(d, "{}{x:.2},{y:.2} ", if i == 0 { "M" } else { "L" });
                    }
                    if *closed {
                        d.push('Z');
                    }
                    let dash = dash.as_ref().map(|d| format!(r#" stroke-dasharray="{d}""#)).unwrap_or_default();
                    let _ = writeln!(
                        s,
                        r#"<path d="{}" fill="none" stroke="{color}" stroke-width="{width}"{dash}/>"#,
                        d.trim_end()
                    );
                }
                Layer::Line { theta, value, color } => {
                    // Points e^{-iθ}(value + i t) for t spanning the frame.
                    let span = 2.0 * (x1 - x0) + (x0.abs() + y0.abs() + x1.abs() + y1.abs());
                    let rot = Complex64::from_polar(1.0, -theta);
                    let (a, b) = (px(rot * Complex64::new(*value, -span)), px(rot * Complex64::new(*value, span)));
                    let _ = writeln!(
                        s,
                        r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{color}" stroke-width="0.4" stroke-opacity="0.6"/>"#,
                        a.0, a.1, b.0, b.1
                    );
                }
            }
        }
        s.push_str("</g>\n");
        for (i, (color, label)) in self.legend.iter().enumerate() {
            let (x, y) = (PAD + 150.0 * (i % 4) as f64, SIZE - PAD * 0.55 + 14.0 * (i / 4) as f64);
            let _ = writeln!(
                s,
                r#"<rect x="{x:.1}" y="{:.1}" width="10" height="10" fill="{color}"/><text x="{:.1}" y="{y:.1}" font-family="sans-serif" font-size="11">{}</text>"#,
                y - 9.0,
                x + 14.0,
                escape(label)
            );
        }
        s.push_str("</svg>\n");
        s
    }
}

fn axes(s: &mut String, px: &impl Fn(Complex64) -> (f64, f64), (x0, x1, y0, y1): (f64, f64, f64, f64)) {
    let (ax, ay) = px(Complex64::new(x0, 0.0));
    let (bx, _) = px(Complex64::new(x1, 0.0));
    let (cx, cy) = px(Complex64::new(0.0, y0));
    let (_, dy) = px(Complex64::new(0.0, y1));
    let _ = writeln!(
        s,
        r##"<g stroke="#ccc" stroke-width="0.6"><line x1="{ax:.2}" y1="{ay:.2}" x2="{bx:.2}" y2="{ay:.2}"/><line x1="{cx:.2}" y1="{cy:.2}" x2="{cx:.2}" y2="{dy:.2}"/></g>"##
    );
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

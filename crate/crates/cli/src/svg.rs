//! Minimal SVG writer for pictures in the unit square.

use std::fmt::Write;

use num_traits::ToPrimitive;
use stairnet::{AxisBox, Point, Scalar};

const SIZE: f64 = 512.0;
const MARGIN: f64 = 16.0;

/// A canvas showing the axis-aligned window `[lo, hi]^2` with the y axis up.
pub struct Canvas {
    lo: [f64; 2],
    hi: [f64; 2],
    body: String,
}

fn f(x: &Scalar) -> f64 {
    x.to_f64().unwrap_or(0.0)
}

impl Canvas {
    pub fn unit() -> Self {
        Canvas::window([0.0, 0.0], [1.0, 1.0])
    }

    pub fn window(lo: [f64; 2], hi: [f64; 2]) -> Self {
        let mut c = Canvas { lo, hi, body: String::new() };
        let (x0, y0) = c.px(lo[0], hi[1]);
        let (x1, y1) = c.px(hi[0], lo[1]);
        let _ = writeln!(
            c.body,
            r#"<rect class="frame" x="{x0:.3}" y="{y0:.3}" width="{:.3}" height="{:.3}" fill="none" stroke="gray"/>"#,
            x1 - x0,
            y1 - y0
        );
        c
    }

    /// The smallest square window containing the unit square and `points`.
    pub fn covering(points: &[&Point]) -> Self {
        let mut lo = [0.0f64, 0.0];
        let mut hi = [1.0f64, 1.0];
        for p in points {
            for i in 0..2 {
                lo[i] = lo[i].min(f(&p[i]));
                hi[i] = hi[i].max(f(&p[i]));
            }
        }
        let side = (hi[0] - lo[0]).max(hi[1] - lo[1]);
        Canvas::window(lo, [lo[0] + side, lo[1] + side])
    }

    fn px(&self, x: f64, y: f64) -> (f64, f64) {
        let span = SIZE - 2.0 * MARGIN;
        let sx = (x - self.lo[0]) / (self.hi[0] - self.lo[0]);
        let sy = (y - self.lo[1]) / (self.hi[1] - self.lo[1]);
        (MARGIN + sx * span, SIZE - MARGIN - sy * span)
    }

    fn clamp(&self, axis: usize, v: f64) -> f64 {
        v.clamp(self.lo[axis], self.hi[axis])
    }

    pub fn line(&mut self, class: &str, a: &Point, b: &Point) {
        let (x1, y1) = self.px(f(&a[0]), f(&a[1]));
        let (x2, y2) = self.px(f(&b[0]), f(&b[1]));
        let _ = writeln!(
            self.body,
            r#"<line class="{class}" x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="black" stroke-width="2"/>"#
        );
    }

    pub fn dot(&mut self, class: &str, p: &Point, fill: &str) {
        let (x, y) = self.px(f(&p[0]), f(&p[1]));
        let _ = writeln!(self.body, r#"<circle class="{class}" cx="{x:.3}" cy="{y:.3}" r="3" fill="{fill}"/>"#);
    }

    /// Draws a box clipped to the window.
    pub fn axis_box(&mut self, class: &str, b: &AxisBox, fill: &str, opacity: f64) {
        self.rect(
            class,
            [f(&b.lo()[0]), f(&b.lo()[1])],
            [f(&b.hi()[0]), f(&b.hi()[1])],
            fill,
            opacity,
        );
    }

    pub fn rect(&mut self, class: &str, lo: [f64; 2], hi: [f64; 2], fill: &str, opacity: f64) {
        let (x0, y0) = self.px(self.clamp(0, lo[0]), self.clamp(1, hi[1]));
        let (x1, y1) = self.px(self.clamp(0, hi[0]), self.clamp(1, lo[1]));
        let _ = writeln!(
            self.body,
            r#"<rect class="{class}" x="{x0:.3}" y="{y0:.3}" width="{:.3}" height="{:.3}" fill="{fill}" fill-opacity="{opacity}" stroke="{fill}"/>"#,
            x1 - x0,
            y1 - y0
        );
    }

    pub fn finish(self) -> String {
        format!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<!-- stairnet {} -->\n\
             <svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n\
             {}</svg>\n",
            env!("CARGO_PKG_VERSION"),
            self.body
        )
    }
}

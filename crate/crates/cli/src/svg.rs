//! SVG rendering of planar instances. Points of `A` are filled circles,
//! points of `B` open circles; flag functionals are drawn as lines clipped
//! to the plotting area. This is the only place floating point is used.

use std::fmt::Write;

use anyhow::{bail, Result};
use latsep::instance::Instance;
use latsep::{IntPoint, PointSet, SeparatingFlag};
use num_traits::ToPrimitive;

const UNIT: f64 = 40.0;
const MARGIN: f64 = 1.0;

struct Frame {
    lo: [f64; 2],
    hi: [f64; 2],
}

impl Frame {
    fn px(&self, x: f64, y: f64) -> (f64, f64) {
        ((x - self.lo[0]) * UNIT, (self.hi[1] - y) * UNIT)
    }

    /// Segment of `n · x = c` inside the frame, if any.
    fn clip(&self, n: [f64; 2], c: f64) -> Option<[(f64, f64); 2]> {
        let mut hits: Vec<(f64, f64)> = Vec::new();
        if n[1] != 0.0 {
            for x in [self.lo[0], self.hi[0]] {
                let y = (c - n[0] * x) / n[1];
                if y >= self.lo[1] - 1e-9 && y <= self.hi[1] + 1e-9 {
                    hits.push((x, y));
                }
            }
        }
        if n[0] != 0.0 {
            for y in [self.lo[1], self.hi[1]] {
                let x = (c - n[1] * y) / n[0];
                if x >= self.lo[0] - 1e-9 && x <= self.hi[0] + 1e-9 {
                    hits.push((x, y));
                }
            }
        }
        hits.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        hits.dedup_by(|a, b| (a.0 - b.0).abs() < 1e-9 && (a.1 - b.1).abs() < 1e-9);
        (hits.len() >= 2).then(|| [hits[0], hits[hits.len() - 1]])
    }
}

fn circle(out: &mut String, frame: &Frame, p: &IntPoint, filled: bool) {
    let (x, y) = frame.px(p[0] as f64, p[1] as f64);
    let fill = if filled { "black" } else { "white" };
    writeln!(out, r#"  <circle cx="{x:.1}" cy="{y:.1}" r="7" fill="{fill}" stroke="black" stroke-width="2"/>"#)
        .expect("string");
}

pub fn render(inst: &Instance, flag: Option<&SeparatingFlag>) -> Result<String> {
    if inst.dim() != 2 {
        bail!("plotting needs a planar instance, found dimension {}", inst.dim());
    }
    let support = inst.support();
    let (lo, hi) = support.bounding_box().expect("instances are nonempty");
    let frame = Frame {
        lo: [lo[0] as f64 - MARGIN, lo[1] as f64 - MARGIN],
        hi: [hi[0] as f64 + MARGIN, hi[1] as f64 + MARGIN],
    };
    let (w, h) = ((frame.hi[0] - frame.lo[0]) * UNIT, (frame.hi[1] - frame.lo[1]) * UNIT);
    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#)?;
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.1} {h:.1}">"#
    )?;
    writeln!(out, r#"  <rect width="100%" height="100%" fill="white"/>"#)?;
    for x in lo[0]..=hi[0] {
        for y in lo[1]..=hi[1] {
            let (px, py) = frame.px(x as f64, y as f64);
            writeln!(out, r##"  <rect x="{:.1}" y="{:.1}" width="2" height="2" fill="#bbbbbb"/>"##, px - 1.0, py - 1.0)?;
        }
    }
    if let Some(flag) = flag {
        if flag.validate(2).is_err() {
            bail!("flag does not match a planar instance");
        }
        let colors = ["#d62728", "#1f77b4", "#2ca02c"];
        for (g, color) in flag.functionals.iter().zip(colors.iter().cycle()) {
            let n = [g.normal[0].to_f64().unwrap_or(0.0), g.normal[1].to_f64().unwrap_or(0.0)];
            let c = g.offset.to_f64().unwrap_or(0.0);
            if let Some([(x1, y1), (x2, y2)]) = frame.clip(n, c) {
                let (a, b) = frame.px(x1, y1);
                let (cx, cy) = frame.px(x2, y2);
                writeln!(
                    out,
                    r#"  <line x1="{a:.1}" y1="{b:.1}" x2="{cx:.1}" y2="{cy:.1}" stroke="{color}" stroke-width="2"/>"#
                )?;
            }
        }
    }
    let (a, b): (PointSet, PointSet) = match inst {
        Instance::Partition(p) => (p.a().clone(), p.b().clone()),
        Instance::Set(s) => (s.clone(), PointSet::empty(2)),
    };
    for p in a.iter() {
        circle(&mut out, &frame, p, true);
    }
    for p in b.iter() {
        circle(&mut out, &frame, p, false);
    }
    writeln!(out, "</svg>")?;
    Ok(out)
}

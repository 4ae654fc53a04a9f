//! SVG drawings of planar embeddings.
//!
//! Coordinates stay exact until the final decimal formatting, so the output
//! depends only on the input values. Content is fit into an 800×600 viewBox
//! with a 40 unit margin and the y axis pointing up.

use std::fmt::Write as _;

use crate::embeddings::{MonotoneEmbedding, ParallelEmbedding};
use crate::exactgeom::height_at;
use crate::instances::{Instance, Label};
use crate::scalar::ExactField;
use crate::Error;

pub const PALETTE: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"];

const WIDTH: i64 = 800;
const HEIGHT: i64 = 600;
const MARGIN: i64 = 40;
const ARROW: i64 = 60;

/// Affine map from a bounding box onto the drawing area, uniform in both axes.
struct Viewport<F> {
    min: [F; 2],
    scale: F,
    offset: [F; 2],
}

impl<F: ExactField> Viewport<F> {
    fn fit(xs: &[F], ys: &[F]) -> Self {
        let span = |v: &[F]| {
            let lo = v.iter().min().cloned().unwrap_or_else(F::zero);
            let hi = v.iter().max().cloned().unwrap_or_else(F::zero);
            (lo.clone(), hi - lo)
        };
        let (x0, w) = span(xs);
        let (y0, h) = span(ys);
        let inner = [F::from_int(WIDTH - 2 * MARGIN), F::from_int(HEIGHT - 2 * MARGIN)];
        let scale = match (w.is_zero(), h.is_zero()) {
            (true, true) => F::one(),
            (true, false) => inner[1].clone() / h.clone(),
            (false, true) => inner[0].clone() / w.clone(),
            (false, false) => (inner[0].clone() / w.clone()).min(inner[1].clone() / h.clone()),
        };
        let two = F::from_int(2);
        let offset = [
            F::from_int(MARGIN) + (inner[0].clone() - w * scale.clone()) / two.clone(),
            F::from_int(MARGIN) + (inner[1].clone() - h * scale.clone()) / two,
        ];
        Viewport { min: [x0, y0], scale, offset }
    }

    fn map(&self, x: &F, y: &F) -> (F, F) {
        let sx = self.offset[0].clone() + (x.clone() - self.min[0].clone()) * self.scale.clone();
        let sy = F::from_int(HEIGHT) - self.offset[1].clone() - (y.clone() - self.min[1].clone()) * self.scale.clone();
        (sx, sy)
    }
}

fn num<F: ExactField>(v: &F) -> String {
    v.to_decimal(2)
}

fn name(inst: Option<&Instance>, label: Label) -> String {
    inst.and_then(|i| i.label_names.as_ref())
        .and_then(|names| names.get(&label).cloned())
        .unwrap_or_else(|| label.to_string())
}

fn header(out: &mut String, markers: usize) {
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
    );
    if markers > 0 {
        out.push_str("<defs>\n");
        for (i, color) in PALETTE.iter().enumerate().take(markers) {
            let _ = writeln!(
                out,
                "<marker id=\"head{i}\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"8\" markerHeight=\"8\" orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\" fill=\"{color}\"/></marker>"
            );
        }
        out.push_str("</defs>\n");
    }
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
}

/// Points with labels, one polyline per path in path order, and one arrow per
/// direction starting at the path's first vertex.
pub fn render_monotone<F: ExactField>(emb: &MonotoneEmbedding<F>, inst: &Instance) -> Result<String, Error> {
    if emb.dimension != 2 {
        return Err(Error::RenderDimension(emb.dimension));
    }
    if emb.directions.len() != inst.k() {
        return Err(Error::Malformed(format!("{} directions for {} permutations", emb.directions.len(), inst.k())));
    }
    let xs: Vec<F> = emb.points.values().map(|p| p.coords[0].clone()).collect();
    let ys: Vec<F> = emb.points.values().map(|p| p.coords[1].clone()).collect();
    let view = Viewport::fit(&xs, &ys);

    let mut out = String::new();
    header(&mut out, inst.k().min(PALETTE.len()));
    for (j, perm) in inst.permutations.iter().enumerate() {
        let color = PALETTE[j % PALETTE.len()];
        let mut pts = Vec::with_capacity(perm.len());
        for &l in perm.order() {
            let p = emb.point(l)?;
            let (x, y) = view.map(&p.coords[0], &p.coords[1]);
            pts.push(format!("{},{}", num(&x), num(&y)));
        }
        let _ = writeln!(
            out,
            "<polyline class=\"path\" points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"2\" stroke-opacity=\"0.8\"/>",
            pts.join(" ")
        );
    }
    for (j, (perm, v)) in inst.permutations.iter().zip(&emb.directions).enumerate() {
        let Some(&first) = perm.order().first() else { continue };
        let p = emb.point(first)?;
        let (x, y) = view.map(&p.coords[0], &p.coords[1]);
        // Max-norm scaling keeps the arrow length exact.
        let c = v.coords();
        let m = c[0].abs().max(c[1].abs());
        let len = F::from_int(ARROW);
        let x1 = x.clone() + len.clone() * c[0].clone() / m.clone();
        let y1 = y.clone() - len * c[1].clone() / m;
        let _ = writeln!(
            out,
            "<line class=\"arrow\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"2\" marker-end=\"url(#head{})\"/>",
            num(&x),
            num(&y),
            num(&x1),
            num(&y1),
            PALETTE[j % PALETTE.len()],
            j % PALETTE.len()
        );
    }
    for (&l, p) in &emb.points {
        let (x, y) = view.map(&p.coords[0], &p.coords[1]);
        let _ = writeln!(out, "<circle class=\"vertex\" cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"black\"/>", num(&x), num(&y));
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\">{}</text>",
            num(&(x + F::from_int(6))),
            num(&(y - F::from_int(6))),
            name(Some(inst), l)
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// One solid segment per hyperplane across the horizontal extent of the
/// vertical lines, and one dashed segment per vertical line.
pub fn render_parallel<F: ExactField>(emb: &ParallelEmbedding<F>, inst: Option<&Instance>) -> Result<String, Error> {
    if emb.dimension != 2 {
        return Err(Error::RenderDimension(emb.dimension));
    }
    let bases: Vec<F> = emb.lines.iter().map(|l| l.base[0].clone()).collect();
    let lo = bases.iter().min().cloned().unwrap_or_else(F::zero) - F::one();
    let hi = bases.iter().max().cloned().unwrap_or_else(F::zero) + F::one();
    let mut ys = Vec::new();
    for h in emb.hyperplanes.values() {
        ys.push(height_at(h, std::slice::from_ref(&lo)));
        ys.push(height_at(h, std::slice::from_ref(&hi)));
    }
    let view = Viewport::fit(&[lo.clone(), hi.clone()], &ys);
    let y_lo = ys.iter().min().cloned().unwrap_or_else(F::zero);
    let y_hi = ys.iter().max().cloned().unwrap_or_else(F::zero);

    let mut out = String::new();
    header(&mut out, 0);
    for (&l, h) in &emb.hyperplanes {
        let (x0, y0) = view.map(&lo, &height_at(h, std::slice::from_ref(&lo)));
        let (x1, y1) = view.map(&hi, &height_at(h, std::slice::from_ref(&hi)));
        let _ = writeln!(
            out,
            "<line class=\"hyperplane\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\" stroke-width=\"1.5\"/>",
            num(&x0),
            num(&y0),
            num(&x1),
            num(&y1)
        );
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\">{}</text>",
            num(&(x1 + F::from_int(4))),
            num(&y1),
            name(inst, l)
        );
    }
    for (j, b) in bases.iter().enumerate() {
        let (x, top) = view.map(b, &y_hi);
        let (_, bottom) = view.map(b, &y_lo);
        let _ = writeln!(
            out,
            "<line class=\"vertical\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"2\" stroke-dasharray=\"6,4\"/>",
            num(&x),
            num(&top),
            num(&x),
            num(&bottom),
            PALETTE[j % PALETTE.len()]
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

//! SVG pictures of an instance: boundary lines clipped to a window, stroked
//! in their colour, with the cells of depth at least three shaded.

use std::fmt::Write as _;
use std::str::FromStr;

use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::io::parse_scalar;
use crate::kernel::{int, Line, Point, Scalar};
use crate::model::{Color, Coloring, Instance};
use crate::verify::depth;

const WIDTH: i64 = 800;
const BLUE: &str = "#1f4fd1";
const RED: &str = "#d1261f";
const NEUTRAL: &str = "#555555";
const SHADE: &str = "#c8c8c8";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("window must be x0,y0,x1,y1 with x0 < x1 and y0 < y1")]
    BadWindow,
    #[error("coloring has {found} entries but the instance has {expected} half-planes")]
    LengthMismatch { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    pub x0: Scalar,
    pub y0: Scalar,
    pub x1: Scalar,
    pub y1: Scalar,
}

impl Window {
    pub fn new(x0: Scalar, y0: Scalar, x1: Scalar, y1: Scalar) -> Result<Window, RenderError> {
        if x0 < x1 && y0 < y1 {
            Ok(Window { x0, y0, x1, y1 })
        } else {
            Err(RenderError::BadWindow)
        }
    }

    /// The bounding box of all boundary crossings, padded by a quarter of its
    /// size (at least 1). Instances without crossings get `[-10, 10]^2`.
    pub fn fit(inst: &Instance) -> Window {
        let lines: Vec<Line> = inst.halfplanes.iter().map(|h| h.boundary()).collect();
        let mut pts = Vec::new();
        for (i, l) in lines.iter().enumerate() {
            for m in &lines[i + 1..] {
                if l.slope != m.slope {
                    let x = (&m.intercept - &l.intercept) / (&l.slope - &m.slope);
                    pts.push(Point::new(x.clone(), l.eval(&x)));
                }
            }
        }
        let Some(first) = pts.first() else {
            return Window { x0: int(-10), y0: int(-10), x1: int(10), y1: int(10) };
        };
        let (mut x0, mut y0, mut x1, mut y1) = (first.x.clone(), first.y.clone(), first.x.clone(), first.y.clone());
        for p in &pts {
            x0 = x0.min(p.x.clone());
            x1 = x1.max(p.x.clone());
            y0 = y0.min(p.y.clone());
            y1 = y1.max(p.y.clone());
        }
        let pad_x = ((&x1 - &x0) / int(4)).max(int(1));
        let pad_y = ((&y1 - &y0) / int(4)).max(int(1));
        Window { x0: x0 - &pad_x, y0: y0 - &pad_y, x1: x1 + pad_x, y1: y1 + pad_y }
    }

    fn corners(&self) -> Vec<Point> {
        vec![
            Point::new(self.x0.clone(), self.y0.clone()),
            Point::new(self.x1.clone(), self.y0.clone()),
            Point::new(self.x1.clone(), self.y1.clone()),
            Point::new(self.x0.clone(), self.y1.clone()),
        ]
    }

    /// The part of `l` inside the window, if it is more than a point.
    fn clip(&self, l: &Line) -> Option<(Point, Point)> {
        let (lo, hi) = if l.slope.is_zero() {
            if l.intercept < self.y0 || l.intercept > self.y1 {
                return None;
            }
            (self.x0.clone(), self.x1.clone())
        } else {
            let a = (&self.y0 - &l.intercept) / &l.slope;
            let b = (&self.y1 - &l.intercept) / &l.slope;
            let (a, b) = if a < b { (a, b) } else { (b, a) };
            (a.max(self.x0.clone()), b.min(self.x1.clone()))
        };
        (lo < hi).then(|| (Point::new(lo.clone(), l.eval(&lo)), Point::new(hi.clone(), l.eval(&hi))))
    }
}

impl FromStr for Window {
    type Err = RenderError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let v: Vec<Scalar> = s.split(',').map(parse_coord).collect::<Option<_>>().ok_or(RenderError::BadWindow)?;
        let [x0, y0, x1, y1]: [Scalar; 4] = v.try_into().map_err(|_| RenderError::BadWindow)?;
        Window::new(x0, y0, x1, y1)
    }
}

/// An integer, `num/den` or plain decimal such as `-2.5`.
fn parse_coord(s: &str) -> Option<Scalar> {
    let s = s.trim();
    if let Ok(v) = parse_scalar(s) {
        return Some(v);
    }
    let (whole, frac) = s.split_once('.')?;
    if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let neg = whole.starts_with('-');
    let whole =
        if whole.is_empty() || whole == "-" || whole == "+" { Scalar::zero() } else { parse_scalar(whole).ok()? };
    let scale = num_bigint::BigInt::from(10u32).pow(frac.len() as u32);
    let frac = Scalar::new(frac.parse().ok()?, scale);
    Some(if neg { whole - frac } else { whole + frac })
}

fn signed_gap(p: &Point, l: &Line) -> Scalar {
    &p.y - l.eval(&p.x)
}

/// The part of the convex polygon `poly` on one side of `l`, vertices on `l`
/// included.
fn clip_polygon(poly: &[Point], l: &Line, keep_above: bool) -> Vec<Point> {
    let gaps: Vec<Scalar> =
        poly.iter().map(|p| if keep_above { signed_gap(p, l) } else { -signed_gap(p, l) }).collect();
    let mut out = Vec::new();
    for i in 0..poly.len() {
        let j = (i + 1) % poly.len();
        if !gaps[i].is_negative() {
            out.push(poly[i].clone());
        }
        if (gaps[i].is_positive() && gaps[j].is_negative()) || (gaps[i].is_negative() && gaps[j].is_positive()) {
            let t = &gaps[i] / (&gaps[i] - &gaps[j]);
            out.push(Point::new(
                &poly[i].x + &t * (&poly[j].x - &poly[i].x),
                &poly[i].y + &t * (&poly[j].y - &poly[i].y),
            ));
        }
    }
    out
}

fn twice_area(poly: &[Point]) -> Scalar {
    let mut s = Scalar::zero();
    for i in 0..poly.len() {
        let j = (i + 1) % poly.len();
        s += &poly[i].x * &poly[j].y - &poly[j].x * &poly[i].y;
    }
    s
}

/// The cells of the boundary arrangement restricted to the window.
pub fn window_cells(inst: &Instance, window: &Window) -> Vec<Vec<Point>> {
    let mut cells = vec![window.corners()];
    for h in &inst.halfplanes {
        let l = h.boundary();
        let mut next = Vec::with_capacity(cells.len() * 2);
        for cell in cells {
            let crosses = cell.iter().any(|p| signed_gap(p, &l).is_positive())
                && cell.iter().any(|p| signed_gap(p, &l).is_negative());
            if !crosses {
                next.push(cell);
                continue;
            }
            for keep_above in [true, false] {
                let piece = clip_polygon(&cell, &l, keep_above);
                if piece.len() >= 3 && !twice_area(&piece).is_zero() {
                    next.push(piece);
                }
            }
        }
        cells = next;
    }
    cells
}

fn centroid(poly: &[Point]) -> Point {
    let k = int(poly.len() as i64);
    let sx: Scalar = poly.iter().map(|p| p.x.clone()).sum();
    let sy: Scalar = poly.iter().map(|p| p.y.clone()).sum();
    Point::new(sx / &k, sy / k)
}

/// A decimal with 9 significant digits.
fn num(x: &Scalar) -> String {
    let f = x.to_f64().unwrap_or(0.0);
    let rounded: f64 = format!("{f:.8e}").parse().unwrap_or(f);
    format!("{}", rounded + 0.0)
}

fn stroke(c: Option<Color>) -> &'static str {
    match c {
        Some(Color::Blue) => BLUE,
        Some(Color::Red) => RED,
        None => NEUTRAL,
    }
}

pub fn render_svg(inst: &Instance, coloring: Option<&Coloring>, window: &Window) -> Result<String, RenderError> {
    if let Some(c) = coloring {
        if c.len() != inst.len() {
            return Err(RenderError::LengthMismatch { expected: inst.len(), found: c.len() });
        }
    }
    let w = &window.x1 - &window.x0;
    let h = &window.y1 - &window.y0;
    let height = int(WIDTH) * &h / &w;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{}" viewBox="{} {} {} {}">"#,
        num(&height),
        num(&window.x0),
        num(&window.y0),
        num(&w),
        num(&h),
    );
    let _ = writeln!(
        svg,
        r#"<rect x="{}" y="{}" width="{}" height="{}" fill="white" stroke="black" vector-effect="non-scaling-stroke"/>"#,
        num(&window.x0),
        num(&window.y0),
        num(&w),
        num(&h),
    );
    let _ = writeln!(svg, r#"<g transform="matrix(1 0 0 -1 0 {})">"#, num(&(&window.y0 + &window.y1)));
    for cell in window_cells(inst, window) {
        if depth(inst, &centroid(&cell)).0 < 3 {
            continue;
        }
        let pts: Vec<String> = cell.iter().map(|p| format!("{},{}", num(&p.x), num(&p.y))).collect();
        let _ = writeln!(svg, r#"<polygon points="{}" fill="{SHADE}" stroke="none"/>"#, pts.join(" "));
    }
    for (i, hp) in inst.halfplanes.iter().enumerate() {
        let Some((a, b)) = window.clip(&hp.boundary()) else { continue };
        let color = coloring.map(|c| c.colors[i]);
        let _ = writeln!(
            svg,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{}" stroke-width="2" vector-effect="non-scaling-stroke" data-index="{i}"/>"#,
            num(&a.x),
            num(&a.y),
            num(&b.x),
            num(&b.y),
            stroke(color),
        );
    }
    svg.push_str("</g>\n</svg>\n");
    Ok(svg)
}

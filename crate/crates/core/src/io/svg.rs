use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt::Write;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::covector::CellRecord;
use crate::envelope::{face_projection_matrix, PointConfig};
use crate::{rat, Error, Result};

type Point = (BigRational, BigRational);

/// `a.0 p + a.1 q <= b` in the plane `x_1 = 0` with coordinates
/// `(p, q) = (x_2, x_3)`.
struct Half {
    a: (BigRational, BigRational),
    b: BigRational,
}

fn unit(i: usize) -> (BigRational, BigRational) {
    match i {
        0 => (rat(0), rat(0)),
        1 => (rat(1), rat(0)),
        _ => (rat(0), rat(1)),
    }
}

/// `x_i - x_k <= w`.
fn difference(i: usize, k: usize, w: BigRational) -> Half {
    let (ei, ek) = (unit(i), unit(k));
    Half {
        a: (ei.0 - ek.0, ei.1 - ek.1),
        b: w,
    }
}

fn satisfies(h: &Half, p: &Point) -> bool {
    &h.a.0 * &p.0 + &h.a.1 * &p.1 <= h.b
}

fn meet(h: &Half, g: &Half) -> Option<Point> {
    let det = &h.a.0 * &g.a.1 - &h.a.1 * &g.a.0;
    if det.is_zero() {
        return None;
    }
    let p = (&h.b * &g.a.1 - &h.a.1 * &g.b) / &det;
    let q = (&h.a.0 * &g.b - &h.b * &g.a.0) / &det;
    Some((p, q))
}

/// Vertices of the bounded polygon cut out by `halves`, in counterclockwise
/// order. Degenerate polygons give two or one vertices.
fn polygon(halves: &[Half]) -> Vec<Point> {
    let mut vertices = BTreeSet::new();
    for (x, h) in halves.iter().enumerate() {
        for g in &halves[x + 1..] {
            if let Some(p) = meet(h, g) {
                if halves.iter().all(|c| satisfies(c, &p)) {
                    vertices.insert(p);
                }
            }
        }
    }
    let mut vertices: Vec<Point> = vertices.into_iter().collect();
    if vertices.len() < 3 {
        return vertices;
    }
    let count = BigRational::from_integer(vertices.len().into());
    let cx = vertices.iter().map(|v| v.0.clone()).sum::<BigRational>() / &count;
    let cy = vertices.iter().map(|v| v.1.clone()).sum::<BigRational>() / &count;
    let lower = |v: &Point| {
        let dy = &v.1 - &cy;
        dy.is_negative() || (dy.is_zero() && v.0 < cx)
    };
    vertices.sort_by(|u, v| {
        lower(u).cmp(&lower(v)).then_with(|| {
            let cross = (&u.0 - &cx) * (&v.1 - &cy) - (&u.1 - &cy) * (&v.0 - &cx);
            if cross.is_positive() {
                Ordering::Less
            } else if cross.is_negative() {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        })
    });
    vertices
}

struct Frame {
    lo: BigRational,
    hi: BigRational,
}

const SCALE: f64 = 40.0;
const MARGIN: f64 = 20.0;

impl Frame {
    fn halves(&self) -> Vec<Half> {
        vec![
            difference(1, 0, self.hi.clone()),
            difference(0, 1, -self.lo.clone()),
            difference(2, 0, self.hi.clone()),
            difference(0, 2, -self.lo.clone()),
        ]
    }

    fn size(&self) -> f64 {
        2.0 * MARGIN + SCALE * (&self.hi - &self.lo).to_f64().expect("finite")
    }

    fn xy(&self, p: &Point) -> (f64, f64) {
        let x = MARGIN + SCALE * (&p.0 - &self.lo).to_f64().expect("finite");
        let y = MARGIN + SCALE * (&self.hi - &p.1).to_f64().expect("finite");
        (x, y)
    }

    fn path(&self, points: &[Point]) -> String {
        let coords: Vec<String> = points
            .iter()
            .map(|p| {
                let (x, y) = self.xy(p);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        coords.join(" ")
    }
}

/// The min-tropical hyperplane of a column: for every pair of finite rows the
/// piece where both attain `min_l (u_l - x_l)`.
fn hyperplane_pieces(v: &PointConfig, j: usize, frame: &Frame) -> Vec<Vec<Point>> {
    let supp = v.column_support(j);
    let u = |i: usize| v.get(i, j).finite().expect("support").clone();
    let mut pieces = Vec::new();
    for (x, &a) in supp.iter().enumerate() {
        for &b in &supp[x + 1..] {
            let mut halves = frame.halves();
            halves.push(difference(a, b, u(a) - u(b)));
            halves.push(difference(b, a, u(b) - u(a)));
            for &c in supp.iter().filter(|&&c| c != a && c != b) {
                halves.push(difference(c, a, u(c) - u(a)));
            }
            let piece = polygon(&halves);
            if piece.len() == 2 {
                pieces.push(piece);
            }
        }
    }
    pieces
}

/// An SVG drawing of the covector decomposition in the plane `x_1 = 0` for
/// `d = 3`. The given cells that lie in the tropical cone are shaded, the
/// hyperplanes of the columns are drawn as lines and the apices as dots. The
/// dashed frame stands for the boundary of the projective plane.
///
/// Coordinates are computed exactly and rounded to two decimals only when
/// written.
pub fn covector_svg(v: &PointConfig, cells: &[CellRecord]) -> Result<String> {
    if v.d() != 3 {
        return Err(Error::capability("rows for an SVG figure (exactly 3 supported)", v.d() as u64, 3));
    }
    let mut marks: Vec<BigRational> = Vec::new();
    for j in 0..v.n() {
        let supp = v.column_support(j);
        for (x, &a) in supp.iter().enumerate() {
            for &b in &supp[x + 1..] {
                marks.push(v.get(b, j).finite().unwrap() - v.get(a, j).finite().unwrap());
            }
        }
    }
    let lo = marks.iter().min().cloned().unwrap_or_else(BigRational::zero) - rat(2);
    let hi = marks.iter().max().cloned().unwrap_or_else(BigRational::zero) + rat(2);
    let frame = Frame { lo, hi };
    let size = frame.size();

    let mut out = String::new();
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size:.2}\" height=\"{size:.2}\" viewBox=\"0 0 {size:.2} {size:.2}\">"
    )
    .unwrap();
    for cell in cells.iter().filter(|c| c.is_torus_cell() && c.in_tcone) {
        let p = face_projection_matrix(v, &cell.graph)?;
        let mut halves = frame.halves();
        halves.extend(
            p.entries()
                .filter(|(i, k, _)| i != k)
                .filter_map(|(i, k, w)| w.finite().map(|w| difference(i, k, w.clone()))),
        );
        let shape = polygon(&halves);
        match shape.len() {
            0 | 1 => {}
            2 => writeln!(
                out,
                "  <polyline points=\"{}\" fill=\"none\" stroke=\"#999999\" stroke-width=\"4\"/>",
                frame.path(&shape)
            )
            .unwrap(),
            _ => writeln!(
                out,
                "  <polygon points=\"{}\" fill=\"#d9d9d9\" stroke=\"none\"/>",
                frame.path(&shape)
            )
            .unwrap(),
        }
    }
    for j in 0..v.n() {
        for piece in hyperplane_pieces(v, j, &frame) {
            writeln!(
                out,
                "  <polyline points=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>",
                frame.path(&piece)
            )
            .unwrap();
        }
    }
    for j in 0..v.n() {
        let col = v.column(j);
        if let (Some(u0), Some(u1), Some(u2)) = (col[0].finite(), col[1].finite(), col[2].finite()) {
            let (x, y) = frame.xy(&(u1 - u0, u2 - u0));
            writeln!(out, "  <circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"3\" fill=\"black\"/>").unwrap();
            writeln!(
                out,
                "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\">{}</text>",
                x + 5.0,
                y - 5.0,
                j + 1
            )
            .unwrap();
        }
    }
    let end = size - MARGIN;
    writeln!(
        out,
        "  <rect x=\"{MARGIN:.2}\" y=\"{MARGIN:.2}\" width=\"{w:.2}\" height=\"{w:.2}\" fill=\"none\" stroke=\"black\" stroke-dasharray=\"6,4\"/>",
        w = end - MARGIN
    )
    .unwrap();
    out.push_str("</svg>\n");
    Ok(out)
}

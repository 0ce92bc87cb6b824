use std::fmt::Write;
use std::str::FromStr;

use super::PredictedColoring;
use crate::error::{invalid, Error, Result};
use crate::puzzle::{Color, Face, Geometry, PuzzleConfig, StickerPos};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderFormat {
    Ascii,
    Svg,
}

impl FromStr for RenderFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ascii" => Ok(RenderFormat::Ascii),
            "svg" => Ok(RenderFormat::Svg),
            other => Err(invalid(format!("unknown render format `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FaceSelection {
    All,
    One(Face),
}

impl FromStr for FaceSelection {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s == "all" {
            Ok(FaceSelection::All)
        } else {
            s.parse().map(FaceSelection::One)
        }
    }
}

const STRIP: [Face; 4] = [Face::PosX, Face::PosY, Face::NegX, Face::NegY];
const CELL: usize = 12;

/// Sticker ids of a face as rows from the largest `v` down, each row in
/// increasing `u`.
fn face_grid(geom: &Geometry, face: Face) -> Vec<Vec<usize>> {
    let (ua, va) = face.in_face_axes();
    let us = geom.axis_coords(ua);
    let vs = geom.axis_coords(va);
    vs.iter()
        .rev()
        .map(|&v| {
            us.iter()
                .map(|&u| geom.id_of(StickerPos::new(face, u, v)).expect("face coordinates"))
                .collect()
        })
        .collect()
}

/// `(id, column, row)` for every drawn sticker, plus the grid size.
///
/// The full net puts `+z` above and `-z` below the `+y` face of the strip
/// `+x +y -x -y`, with one empty cell between neighbouring faces.
fn layout(geom: &Geometry, faces: FaceSelection) -> (Vec<(usize, usize, usize)>, usize, usize) {
    let mut cells = Vec::new();
    let mut place = |grid: &[Vec<usize>], col0: usize, row0: usize| {
        for (r, row) in grid.iter().enumerate() {
            for (c, &id) in row.iter().enumerate() {
                cells.push((id, col0 + c, row0 + r));
            }
        }
    };
    match faces {
        FaceSelection::One(face) => {
            let grid = face_grid(geom, face);
            let (w, h) = (grid[0].len(), grid.len());
            place(&grid, 0, 0);
            (cells, w, h)
        }
        FaceSelection::All => {
            let top = face_grid(geom, Face::PosZ);
            let bottom = face_grid(geom, Face::NegZ);
            let strip: Vec<_> = STRIP.iter().map(|&f| face_grid(geom, f)).collect();
            let strip_h = strip.iter().map(Vec::len).max().expect("four faces");
            let offset = strip[0][0].len() + 1;
            place(&top, offset, 0);
            let strip_row = top.len() + 1;
            let mut col = 0;
            for grid in &strip {
                place(grid, col, strip_row);
                col += grid[0].len() + 1;
            }
            let bottom_row = strip_row + strip_h + 1;
            place(&bottom, offset, bottom_row);
            (cells, col - 1, bottom_row + bottom.len())
        }
    }
}

fn hex(c: Option<Color>) -> &'static str {
    match c {
        Some(Color::Red) => "#c41e3a",
        Some(Color::Blue) => "#0051ba",
        Some(Color::Green) => "#009e60",
        Some(Color::White) => "#ffffff",
        Some(Color::Yellow) => "#ffd500",
        Some(Color::Orange) => "#ff5800",
        None => "#bbbbbb",
    }
}

fn render(geom: &Geometry, color: impl Fn(usize) -> Option<Color>, format: RenderFormat, faces: FaceSelection) -> String {
    let (cells, w, h) = layout(geom, faces);
    match format {
        RenderFormat::Ascii => {
            let mut grid = vec![vec![' '; w]; h];
            for (id, c, r) in cells {
                grid[r][c] = color(id).map_or('.', Color::code);
            }
            grid.iter()
                .map(|row| row.iter().collect::<String>().trim_end().to_string())
                .collect::<Vec<_>>()
                .join("\n")
        }
        RenderFormat::Svg => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
                w * CELL,
                h * CELL,
                w * CELL,
                h * CELL
            );
            for (id, c, r) in cells {
                let _ = writeln!(
                    out,
                    r##"<rect x="{}" y="{}" width="{CELL}" height="{CELL}" fill="{}" stroke="#000000"/>"##,
                    c * CELL,
                    r * CELL,
                    hex(color(id))
                );
            }
            out.push_str("</svg>\n");
            out
        }
    }
}

pub fn render_config(config: &PuzzleConfig, format: RenderFormat, faces: FaceSelection) -> String {
    render(&config.geometry(), |id| Some(config.color_at(id)), format, faces)
}

/// Uncovered stickers show as `.` (ascii) or grey (svg).
pub fn render_coloring(pred: &PredictedColoring, format: RenderFormat, faces: FaceSelection) -> String {
    let geom = Geometry::new(pred.kind(), pred.side()).expect("prediction geometry is valid");
    render(&geom, |id| pred.get(id), format, faces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::predict_square_cb;
    use crate::hampath::CubicalInstance;
    use crate::puzzle::{make_solved, PuzzleKind};

    #[test]
    fn solved_square_top() {
        let c = make_solved(PuzzleKind::Square, 2).unwrap();
        assert_eq!(render_config(&c, RenderFormat::Ascii, FaceSelection::One(Face::PosZ)), "RR\nRR");
    }

    #[test]
    fn cube_net_and_svg() {
        let c = make_solved(PuzzleKind::Cube, 2).unwrap();
        let net = render_config(&c, RenderFormat::Ascii, FaceSelection::All);
        assert_eq!(net, "   WW\n   WW\n\nOO GG RR YY\nOO GG RR YY\n\n   BB\n   BB");
        let svg = render_config(&c, RenderFormat::Svg, FaceSelection::All);
        assert_eq!(svg.matches("<rect").count(), 24);
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
        assert_eq!(svg, render_config(&c, RenderFormat::Svg, FaceSelection::All));
    }

    #[test]
    fn square_prediction_shows_bit_grid() {
        let inst = CubicalInstance::from_strs(&["1", "0"]).unwrap();
        let p = predict_square_cb(&inst).unwrap();
        let top = render_coloring(&p, RenderFormat::Ascii, FaceSelection::One(Face::PosZ));
        let rows: Vec<&str> = top.lines().collect();
        // side 12: rows y = 6..1 then -1..-6; row y=2 is l_2 = 0 (all blue),
        // row y=1 is l_1 = 1 (red only at |x| = 1).
        assert_eq!(rows[4], "BBBBBBBBBBBB");
        assert_eq!(rows[5], "BBBBBRRBBBBB");
        assert_eq!(rows[6], "RRRRRRRRRRRR");
        let net = render_coloring(&p, RenderFormat::Ascii, FaceSelection::All);
        assert!(net.contains('.'));
        assert!("bogus".parse::<RenderFormat>().is_err());
        assert!("+q".parse::<FaceSelection>().is_err());
    }
}

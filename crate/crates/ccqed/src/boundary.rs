//! Level-set extraction on rectangular parameter grids: marching squares
//! with linear interpolation along cell edges.
//!
//! Used to draw phase boundaries at one-half the maximum of an order
//! parameter. Crossing points always lie on grid edges; on a field that is
//! linear in one coordinate the interpolation is exact.

/// A connected chain of level-set points in (x, y) parameter coordinates.
pub type Polyline = Vec<(f64, f64)>;

/// Scalar field sampled on a rectangular grid. `values[row][col]` belongs to
/// coordinates (`xs[col]`, `ys[row]`). Cells touching an invalid sample
/// (failed or degenerate point) are skipped during extraction.
#[derive(Debug, Clone)]
pub struct GridField {
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    pub values: Vec<Vec<f64>>,
    pub valid: Vec<Vec<bool>>,
}

impl GridField {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>, values: Vec<Vec<f64>>) -> Self {
        let valid = values
            .iter()
            .map(|row| row.iter().map(|v| v.is_finite()).collect())
            .collect();
        GridField {
            xs,
            ys,
            values,
            valid,
        }
    }

    /// Largest valid sample, if any.
    pub fn max(&self) -> Option<f64> {
        let mut best: Option<f64> = None;
        for (row, vrow) in self.values.iter().zip(&self.valid) {
            for (&v, &ok) in row.iter().zip(vrow) {
                if ok {
                    best = Some(best.map_or(v, |b: f64| b.max(v)));
                }
            }
        }
        best
    }
}

/// Level set of `field` at one-half its grid maximum. Returns the polylines
/// and the level used; empty (with level 0) when the field has no positive
/// maximum; a flat field has no boundary to draw.
pub fn half_max_boundary(field: &GridField) -> (Vec<Polyline>, f64) {
    match field.max() {
        Some(max) if max > 0.0 => {
            let level = max / 2.0;
            (extract_level_set(field, level), level)
        }
        _ => (Vec::new(), 0.0),
    }
}

/// Marching-squares level set at an arbitrary level.
pub fn extract_level_set(field: &GridField, level: f64) -> Vec<Polyline> {
    let rows = field.ys.len();
    let cols = field.xs.len();
    let mut segments: Vec<((f64, f64), (f64, f64))> = Vec::new();

    for r in 0..rows.saturating_sub(1) {
        for c in 0..cols.saturating_sub(1) {
            if !(field.valid[r][c]
                && field.valid[r][c + 1]
                && field.valid[r + 1][c]
                && field.valid[r + 1][c + 1])
            {
                continue;
            }
            // corner values and coordinates, counterclockwise from bottom-left
            let bl = field.values[r][c];
            let br = field.values[r][c + 1];
            let tr = field.values[r + 1][c + 1];
            let tl = field.values[r + 1][c];
            let (x0, x1) = (field.xs[c], field.xs[c + 1]);
            let (y0, y1) = (field.ys[r], field.ys[r + 1]);

            let mut case = 0u8;
            if bl > level {
                case |= 1;
            }
            if br > level {
                case |= 2;
            }
            if tr > level {
                case |= 4;
            }
            if tl > level {
                case |= 8;
            }
            if case == 0 || case == 15 {
                continue;
            }

            // interpolated crossing on each cell edge
            let lerp = |a: f64, b: f64, pa: f64, pb: f64| a + (level - pa) / (pb - pa) * (b - a);
            let bottom = (lerp(x0, x1, bl, br), y0);
            let top = (lerp(x0, x1, tl, tr), y1);
            let left = (x0, lerp(y0, y1, bl, tl));
            let right = (x1, lerp(y0, y1, br, tr));

            match case {
                1 | 14 => segments.push((bottom, left)),
                2 | 13 => segments.push((right, bottom)),
                3 | 12 => segments.push((right, left)),
                4 | 11 => segments.push((top, right)),
                6 | 9 => segments.push((top, bottom)),
                7 | 8 => segments.push((left, top)),
                5 | 10 => {
                    // saddle: disambiguate with the cell-center average
                    let center = 0.25 * (bl + br + tr + tl);
                    let flip = (center > level) == (case == 5);
                    if flip {
                        segments.push((bottom, right));
                        segments.push((top, left));
                    } else {
                        segments.push((bottom, left));
                        segments.push((top, right));
                    }
                }
                _ => unreachable!(),
            }
        }
    }
    chain_segments(segments)
}

/// Join segments that share endpoints into polylines. Shared cell edges
/// produce bit-identical interpolated points, so exact matching suffices.
fn chain_segments(mut segments: Vec<((f64, f64), (f64, f64))>) -> Vec<Polyline> {
    let mut polylines = Vec::new();
    while let Some((a, b)) = segments.pop() {
        let mut line = vec![a, b];
        loop {
            let tail = *line.last().unwrap();
            if let Some(i) = segments.iter().position(|&(s, e)| s == tail || e == tail) {
                let (s, e) = segments.swap_remove(i);
                line.push(if s == tail { e } else { s });
            } else {
                break;
            }
        }
        loop {
            let head = line[0];
            if let Some(i) = segments.iter().position(|&(s, e)| s == head || e == head) {
                let (s, e) = segments.swap_remove(i);
                line.insert(0, if s == head { e } else { s });
            } else {
                break;
            }
        }
        polylines.push(line);
    }
    // deterministic output order regardless of extraction order
    polylines.sort_by(|a, b| a[0].partial_cmp(&b[0]).unwrap_or(std::cmp::Ordering::Equal));
    polylines
}

/// x-coordinates where the polylines cross the horizontal line y = `y`,
/// linearly interpolated along polyline segments; vertices lying exactly on
/// the line count once.
pub fn crossings_at_y(polylines: &[Polyline], y: f64) -> Vec<f64> {
    let mut xs = Vec::new();
    for line in polylines {
        for w in line.windows(2) {
            let ((x0, y0), (x1, y1)) = (w[0], w[1]);
            if y0 == y && y1 == y {
                continue; // segment lying on the line; its junctions are crossings
            }
            if (y0 <= y && y1 > y) || (y1 <= y && y0 > y) {
                let t = (y - y0) / (y1 - y0);
                xs.push(x0 + t * (x1 - x0));
            }
        }
    }
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    xs
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn linear_field() -> GridField {
        // f(x, y) = x on x ∈ [0, 10], y ∈ [0, 3]
        let xs: Vec<f64> = (0..11).map(|i| i as f64).collect();
        let ys: Vec<f64> = (0..4).map(|j| j as f64).collect();
        let values = ys.iter().map(|_| xs.clone()).collect();
        GridField::new(xs, ys, values)
    }

    #[test]
    fn linear_field_boundary_is_exact() {
        let field = linear_field();
        let (lines, level) = half_max_boundary(&field);
        assert_eq!(level, 5.0);
        assert!(!lines.is_empty());
        for line in &lines {
            for &(x, _) in line {
                assert_abs_diff_eq!(x, 5.0, epsilon = 1e-12);
            }
        }
        // a single vertical polyline spanning the full y range
        assert_eq!(lines.len(), 1);
        let ys: Vec<f64> = lines[0].iter().map(|p| p.1).collect();
        assert_abs_diff_eq!(ys.iter().cloned().fold(f64::INFINITY, f64::min), 0.0);
        assert_abs_diff_eq!(ys.iter().cloned().fold(f64::NEG_INFINITY, f64::max), 3.0);
    }

    #[test]
    fn flat_field_yields_empty_boundary() {
        let xs: Vec<f64> = (0..5).map(|i| i as f64).collect();
        let ys = xs.clone();
        let values = vec![vec![0.0; 5]; 5];
        let field = GridField::new(xs, ys, values);
        let (lines, level) = half_max_boundary(&field);
        assert!(lines.is_empty());
        assert_eq!(level, 0.0);
    }

    #[test]
    fn invalid_cells_are_skipped() {
        let mut field = linear_field();
        field.values[1][5] = f64::NAN;
        field.valid[1][5] = false;
        let (lines, _) = half_max_boundary(&field);
        // the contour survives outside the masked cells
        let total: usize = lines.iter().map(|l| l.len()).sum();
        assert!(total > 0);
        for line in &lines {
            for &(x, _) in line {
                assert_abs_diff_eq!(x, 5.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn circular_bump_produces_closed_contour() {
        let n = 41;
        let coords: Vec<f64> = (0..n).map(|i| -2.0 + i as f64 * 0.1).collect();
        let values: Vec<Vec<f64>> = coords
            .iter()
            .map(|&y| coords.iter().map(|&x| (-(x * x + y * y)).exp()).collect())
            .collect();
        let field = GridField::new(coords.clone(), coords, values);
        let (lines, level) = half_max_boundary(&field);
        assert_abs_diff_eq!(level, 0.5, epsilon = 1e-12);
        assert_eq!(lines.len(), 1);
        let line = &lines[0];
        // closed loop at radius √ln2
        assert_eq!(line.first(), line.last());
        let r = (2.0f64.ln()).sqrt();
        for &(x, y) in line {
            assert_abs_diff_eq!((x * x + y * y).sqrt(), r, epsilon = 0.02);
        }
    }

    #[test]
    fn crossings_interpolate_between_rows() {
        let lines = vec![vec![(0.0, 0.0), (1.0, 1.0), (3.0, 2.0)]];
        let xs = crossings_at_y(&lines, 1.5);
        assert_eq!(xs.len(), 1);
        assert_abs_diff_eq!(xs[0], 2.0, epsilon = 1e-12);
        // crossing exactly at a vertex is reported once
        let xs = crossings_at_y(&lines, 1.0);
        assert_eq!(xs.len(), 1);
        assert_abs_diff_eq!(xs[0], 1.0, epsilon = 1e-12);
    }
}

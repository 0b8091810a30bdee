use super::grid::{ModulusTable, TableSource};
use crate::error::Result;

/// Least concave majorant of the piecewise-linear interpolant of `table`,
/// sampled back on the table's own δ-grid.
pub fn concave_majorant(table: &ModulusTable) -> Result<ModulusTable> {
    let (xs, ys) = (table.deltas(), table.values());
    let hull = upper_hull(xs, ys);
    let mut values = Vec::with_capacity(xs.len());
    let mut seg = 0;
    for &x in xs {
        while seg + 2 < hull.len() && xs[hull[seg + 1]] < x {
            seg += 1;
        }
        let value = if hull.len() == 1 {
            ys[hull[0]]
        } else {
            let (a, b) = (hull[seg], hull[seg + 1]);
            let w = (x - xs[a]) / (xs[b] - xs[a]);
            // hull vertices are reproduced exactly
            if x == xs[b] {
                ys[b]
            } else if x == xs[a] {
                ys[a]
            } else {
                ys[a] + w * (ys[b] - ys[a])
            }
        };
        values.push(value);
    }
    ModulusTable::new(
        xs.to_vec(),
        values,
        table.grid_n(),
        TableSource::ConcaveMajorant,
    )
}

/// Indices of the upper convex hull, left to right (Andrew's monotone chain).
fn upper_hull(xs: &[f64], ys: &[f64]) -> Vec<usize> {
    let mut hull: Vec<usize> = Vec::with_capacity(xs.len());
    for i in 0..xs.len() {
        while hull.len() >= 2 {
            let (o, a) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (xs[a] - xs[o]) * (ys[i] - ys[o]) - (ys[a] - ys[o]) * (xs[i] - xs[o]);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(i);
    }
    hull
}

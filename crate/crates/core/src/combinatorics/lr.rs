use super::{Partition, SkewShape};
use crate::error::CombinatoricsError;

/// A Littlewood–Richardson filling: one entry (1-based row label of the type)
/// per skew cell, listed in row-major cell order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LrFilling {
    pub cells: Vec<(usize, usize)>,
    pub entries: Vec<usize>,
}

/// All Littlewood–Richardson fillings of `shape` with content `content`:
/// rows weakly increase, columns strictly increase, and the reverse reading
/// word (rows top to bottom, each right to left) is a lattice word.
pub fn lr_fillings(shape: &SkewShape, content: &Partition) -> Result<Vec<LrFilling>, CombinatoricsError> {
    if shape.size() != content.size() {
        return Err(CombinatoricsError::SizeMismatch {
            expected: shape.size(),
            found: content.size(),
        });
    }
    // Fill in reverse reading order so the lattice condition can be checked
    // on the prefix as we go.
    let mut order: Vec<(usize, usize)> = Vec::new();
    for r in 0..shape.outer().len() {
        for c in (shape.inner().part(r)..shape.outer().part(r)).rev() {
            order.push((r, c));
        }
    }
    let rows = shape.outer().len();
    let width = shape.outer().num_columns();
    let mut grid = vec![vec![0usize; width]; rows];
    let mut used = vec![0usize; content.len() + 1];
    let mut out = Vec::new();
    lr_rec(0, &order, shape, content, &mut grid, &mut used, &mut out);
    Ok(out)
}

fn lr_rec(
    pos: usize,
    order: &[(usize, usize)],
    shape: &SkewShape,
    content: &Partition,
    grid: &mut Vec<Vec<usize>>,
    used: &mut Vec<usize>,
    out: &mut Vec<LrFilling>,
) {
    if pos == order.len() {
        let cells = shape.cells();
        let entries = cells.iter().map(|&(r, c)| grid[r][c]).collect();
        out.push(LrFilling { cells, entries });
        return;
    }
    let (r, c) = order[pos];
    for v in 1..=content.len() {
        if used[v] >= content.part(v - 1) {
            continue;
        }
        // lattice: after placing v, count(v) <= count(v-1)
        if v > 1 && used[v] + 1 > used[v - 1] {
            continue;
        }
        // row weak: the cell to the right (already filled) must be >= v
        if c + 1 < shape.outer().part(r) && grid[r][c + 1] < v {
            continue;
        }
        // column strict: the cell above, if in the skew shape, must be < v
        if r > 0 && c >= shape.inner().part(r - 1) && grid[r - 1][c] >= v {
            continue;
        }
        grid[r][c] = v;
        used[v] += 1;
        lr_rec(pos + 1, order, shape, content, grid, used, out);
        used[v] -= 1;
        grid[r][c] = 0;
    }
}

/// The Littlewood–Richardson coefficient c^{outer}_{inner, content}.
pub fn lr_coefficient(outer: &Partition, inner: &Partition, content: &Partition) -> Result<usize, CombinatoricsError> {
    if !outer.contains(inner) || outer.size() != inner.size() + content.size() {
        return Ok(0);
    }
    let shape = SkewShape::new(outer.clone(), inner.clone())?;
    Ok(lr_fillings(&shape, content)?.len())
}

/// All partitions obtained from `lambda` by adding `r` cells, no two in the
/// same row. These index the constituents of inducing `S^lambda` tensored
/// with the sign representation of S_r.
pub fn pieri_column(lambda: &Partition, r: usize) -> Vec<Partition> {
    let len = lambda.len();
    let mut out = Vec::new();
    // choose a subset of rows 0..len+r-1 receiving one extra cell
    fn rec(
        row: usize,
        remaining: usize,
        lambda: &Partition,
        total_rows: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Partition>,
    ) {
        if remaining == 0 {
            let mut parts: Vec<usize> = (0..total_rows).map(|i| lambda.part(i)).collect();
            for &i in cur.iter() {
                parts[i] += 1;
            }
            if let Ok(p) = Partition::new(parts) {
                out.push(p);
            }
            return;
        }
        if row >= total_rows {
            return;
        }
        cur.push(row);
        rec(row + 1, remaining - 1, lambda, total_rows, cur, out);
        cur.pop();
        rec(row + 1, remaining, lambda, total_rows, cur, out);
    }
    rec(0, r, lambda, len + r, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out.dedup();
    out
}

/// All partitions obtained from `lambda` by adding `r` cells, no two in the same column.
pub fn pieri_row(lambda: &Partition, r: usize) -> Vec<Partition> {
    pieri_column(&lambda.conjugate(), r)
        .into_iter()
        .map(|p| p.conjugate())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition;

    #[test]
    fn lr_small_examples() {
        let l = partition![2, 1];
        let empty = SkewShape::new(l.clone(), l.clone()).unwrap();
        assert_eq!(lr_fillings(&empty, &Partition::empty()).unwrap().len(), 1);
        assert_eq!(
            lr_coefficient(&partition![2, 1], &partition![1], &partition![1, 1]).unwrap(),
            1
        );
        assert_eq!(
            lr_coefficient(&partition![2, 1], &partition![1], &partition![2]).unwrap(),
            1
        );
        assert_eq!(
            lr_coefficient(&partition![3, 2, 1], &partition![2, 1], &partition![2, 1]).unwrap(),
            2
        );
        let bad = SkewShape::new(partition![2, 1], partition![1]).unwrap();
        assert!(lr_fillings(&bad, &partition![1]).is_err());
    }

    #[test]
    fn pieri_examples() {
        assert_eq!(pieri_column(&Partition::empty(), 3), vec![partition![1, 1, 1]]);
        assert_eq!(pieri_column(&partition![1], 1), vec![partition![2], partition![1, 1]]);
        let res = pieri_column(&partition![3, 3, 1], 2);
        assert!(res.contains(&partition![3, 3, 2, 1]));
        assert!(res.contains(&partition![3, 3, 1, 1, 1]));
    }

    #[test]
    fn pieri_matches_lr_with_column_content() {
        for m in 0..=5 {
            for l in Partition::all(m) {
                for r in 1..=3 {
                    let via_lr: Vec<Partition> = Partition::all(m + r)
                        .into_iter()
                        .filter(|nu| lr_coefficient(nu, &l, &Partition::column(r)).unwrap() == 1)
                        .collect();
                    assert_eq!(pieri_column(&l, r), via_lr, "{l} {r}");
                }
            }
        }
    }
}

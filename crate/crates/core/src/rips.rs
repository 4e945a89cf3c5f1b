//! Vietoris–Rips filtrations from Euclidean point clouds.

use crate::complex::{FilteredComplex, Simplex, Vertex};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct PointCloud {
    points: Vec<Vec<f64>>,
}

impl PointCloud {
    pub fn new(points: Vec<Vec<f64>>) -> Result<Self> {
        let first = points
            .first()
            .ok_or_else(|| Error::InvalidPointCloud("no points".into()))?;
        let dim = first.len();
        if dim == 0 {
            return Err(Error::InvalidPointCloud("points have no coordinates".into()));
        }
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(Error::InvalidPointCloud(format!(
                    "point {i} has {} coordinates, expected {dim}",
                    p.len()
                )));
            }
            if p.iter().any(|c| !c.is_finite()) {
                return Err(Error::InvalidPointCloud(format!("point {i} is not finite")));
            }
        }
        Ok(PointCloud { points })
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn distance(&self, a: usize, b: usize) -> f64 {
        self.points[a]
            .iter()
            .zip(&self.points[b])
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>()
            .sqrt()
    }
}

/// CSV, one point per line. A first line that does not parse as numbers is
/// treated as a header.
pub fn parse_points_csv(text: &str) -> Result<PointCloud> {
    let mut points = Vec::new();
    let mut first = true;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let parsed: std::result::Result<Vec<f64>, _> =
            line.split(',').map(|f| f.trim().parse::<f64>()).collect();
        match parsed {
            Ok(p) => points.push(p),
            Err(_) if first => {}
            Err(e) => {
                return Err(Error::Parse {
                    line: lineno + 1,
                    column: 1,
                    message: format!("bad coordinate: {e}"),
                })
            }
        }
        first = false;
    }
    PointCloud::new(points)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RipsConfig {
    pub threshold: f64,
    pub max_dim: usize,
}

impl RipsConfig {
    pub fn new(threshold: f64, max_dim: usize) -> Result<Self> {
        if !(threshold.is_finite() && threshold >= 0.0) {
            return Err(Error::InvalidConfig(format!(
                "threshold must be a finite nonnegative number, got {threshold}"
            )));
        }
        Ok(RipsConfig { threshold, max_dim })
    }
}

/// All cliques of size at most `max_dim + 1` in the threshold graph,
/// ordered by (diameter, dimension, vertex list).
pub fn rips_filtration(cloud: &PointCloud, cfg: &RipsConfig) -> Result<FilteredComplex> {
    let cfg = RipsConfig::new(cfg.threshold, cfg.max_dim)?;
    let n = cloud.len();
    let mut dist = vec![vec![0.0f64; n]; n];
    for a in 0..n {
        for b in a + 1..n {
            let d = cloud.distance(a, b);
            dist[a][b] = d;
            dist[b][a] = d;
        }
    }
    let higher: Vec<Vec<usize>> = (0..n)
        .map(|a| (a + 1..n).filter(|&b| dist[a][b] <= cfg.threshold).collect())
        .collect();

    let mut cells: Vec<(f64, Vec<usize>)> = Vec::new();
    let mut stack: Vec<(Vec<usize>, f64, Vec<usize>)> =
        (0..n).map(|v| (vec![v], 0.0, higher[v].clone())).collect();
    while let Some((clique, diam, candidates)) = stack.pop() {
        if clique.len() <= cfg.max_dim {
            for (ci, &c) in candidates.iter().enumerate() {
                let grown = clique.iter().fold(diam, |m, &v| m.max(dist[v][c]));
                let rest: Vec<usize> = candidates[ci + 1..]
                    .iter()
                    .copied()
                    .filter(|&w| dist[c][w] <= cfg.threshold)
                    .collect();
                let mut next = clique.clone();
                next.push(c);
                stack.push((next, grown, rest));
            }
        }
        cells.push((diam, clique));
    }
    cells.sort_by(|(da, a), (db, b)| {
        da.total_cmp(db)
            .then(a.len().cmp(&b.len()))
            .then_with(|| a.cmp(b))
    });
    let simplices = cells
        .into_iter()
        .map(|(_, c)| Simplex::new(c.into_iter().map(|v| v as Vertex).collect()))
        .collect::<Result<Vec<_>>>()?;
    FilteredComplex::new(simplices)
}

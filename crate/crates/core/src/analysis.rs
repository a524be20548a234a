//! Feature dependence: Pearson correlations, constant features and
//! average-linkage clustering of features on `1 - |r|`.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::learning::{Dataset, CONSTANT_VARIANCE};

/// Silhouette differences below this are ties, resolved toward fewer
/// clusters.
pub const SILHOUETTE_TIE: f64 = 1e-12;

/// Correlation matrix; constant features correlate 0 with everything else.
#[derive(Debug, Clone, PartialEq)]
pub struct Correlation {
    pub names: Vec<String>,
    pub r: Vec<Vec<f64>>,
    pub constant: Vec<bool>,
}

fn centered(column: &[f64]) -> (Vec<f64>, f64) {
    let n = column.len() as f64;
    let mean = column.iter().sum::<f64>() / n;
    let c: Vec<f64> = column.iter().map(|x| x - mean).collect();
    let var = c.iter().map(|x| x * x).sum::<f64>() / n;
    (c, var)
}

/// Indices of features whose population variance is at most
/// [`CONSTANT_VARIANCE`].
pub fn constant_features(data: &Dataset) -> Vec<usize> {
    (0..data.feature_count()).filter(|&j| centered(&data.column(j)).1 <= CONSTANT_VARIANCE).collect()
}

pub fn pearson_matrix(data: &Dataset) -> Result<Correlation> {
    if data.len() < 2 {
        return Err(Error::Dataset(format!("correlation needs at least 2 rows, got {}", data.len())));
    }
    let d = data.feature_count();
    let cols: Vec<(Vec<f64>, f64)> = (0..d).map(|j| centered(&data.column(j))).collect();
    let constant: Vec<bool> = cols.iter().map(|c| c.1 <= CONSTANT_VARIANCE).collect();
    let norms: Vec<f64> = cols.iter().map(|(c, _)| c.iter().map(|x| x * x).sum::<f64>().sqrt()).collect();
    let upper: Vec<Vec<f64>> = (0..d)
        .into_par_iter()
        .map(|i| {
            (i..d)
                .map(|j| {
                    if i == j {
                        1.0
                    } else if constant[i] || constant[j] {
                        0.0
                    } else {
                        let s: f64 = cols[i].0.iter().zip(&cols[j].0).map(|(a, b)| a * b).sum();
                        (s / (norms[i] * norms[j])).clamp(-1.0, 1.0)
                    }
                })
                .collect()
        })
        .collect();
    let mut r = vec![vec![0.0; d]; d];
    for i in 0..d {
        for j in i..d {
            r[i][j] = upper[i][j - i];
            r[j][i] = upper[i][j - i];
        }
    }
    Ok(Correlation { names: data.names().to_vec(), r, constant })
}

/// One agglomeration step. Leaves are `0..n`; the cluster formed at step
/// `s` gets id `n + s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Merge {
    pub a: usize,
    pub b: usize,
    pub height: f64,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Clustering {
    pub merges: Vec<Merge>,
    /// Mean silhouette for every k in `2..=n-1`.
    pub silhouettes: Vec<(usize, f64)>,
    pub k: usize,
    /// Clusters of the chosen cut, each sorted, ordered by first member.
    pub clusters: Vec<Vec<usize>>,
}

impl Clustering {
    pub fn silhouette_of(&self, k: usize) -> Option<f64> {
        self.silhouettes.iter().find(|(x, _)| *x == k).map(|s| s.1)
    }

    /// The chosen cut scores at least as well as its neighbouring cuts.
    pub fn locally_optimal(&self) -> bool {
        let s = self.silhouette_of(self.k).unwrap_or(f64::NEG_INFINITY);
        [self.k.wrapping_sub(1), self.k + 1].iter().all(|&k| self.silhouette_of(k).is_none_or(|x| s >= x))
    }
}

/// Average linkage on `distance`, a symmetric matrix. Among equally close
/// pairs the one with the smallest (lower id, higher id) is merged first.
pub fn average_linkage(distance: &[Vec<f64>]) -> Vec<Merge> {
    let n = distance.len();
    let mut d: Vec<Vec<f64>> = distance.to_vec();
    let mut id: Vec<usize> = (0..n).collect();
    let mut size = vec![1usize; n];
    let mut alive = vec![true; n];
    let mut merges = Vec::with_capacity(n.saturating_sub(1));
    for step in 0..n.saturating_sub(1) {
        let mut best: Option<(f64, usize, usize, usize, usize)> = None;
        for i in (0..n).filter(|&i| alive[i]) {
            for j in (i + 1..n).filter(|&j| alive[j]) {
                let (lo, hi) = (id[i].min(id[j]), id[i].max(id[j]));
                let better = match best {
                    None => true,
                    Some((h, blo, bhi, _, _)) => d[i][j] < h || (d[i][j] == h && (lo, hi) < (blo, bhi)),
                };
                if better {
                    best = Some((d[i][j], lo, hi, i, j));
                }
            }
        }
        let (h, lo, hi, i, j) = best.expect("two live clusters");
        let (si, sj) = (size[i] as f64, size[j] as f64);
        for k in (0..n).filter(|&k| alive[k] && k != i && k != j) {
            let v = (si * d[i][k] + sj * d[j][k]) / (si + sj);
            d[i][k] = v;
            d[k][i] = v;
        }
        alive[j] = false;
        size[i] += size[j];
        id[i] = n + step;
        merges.push(Merge { a: lo, b: hi, height: h, size: size[i] });
    }
    merges
}

/// Cluster labels after applying the first `n - k` merges, numbered by
/// first member.
pub fn cut(n: usize, merges: &[Merge], k: usize) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..2 * n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for (s, m) in merges.iter().take(n.saturating_sub(k)).enumerate() {
        let (a, b) = (find(&mut parent, m.a), find(&mut parent, m.b));
        parent[a] = n + s;
        parent[b] = n + s;
    }
    let mut labels = vec![usize::MAX; n];
    let mut roots: Vec<usize> = Vec::new();
    for (v, label) in labels.iter_mut().enumerate() {
        let r = find(&mut parent, v);
        *label = roots.iter().position(|&x| x == r).unwrap_or_else(|| {
            roots.push(r);
            roots.len() - 1
        });
    }
    labels
}

/// Mean silhouette of a labelling; singletons score 0.
pub fn mean_silhouette(distance: &[Vec<f64>], labels: &[usize]) -> f64 {
    let n = labels.len();
    let k = labels.iter().max().map_or(0, |m| m + 1);
    let mut size = vec![0usize; k];
    for &l in labels {
        size[l] += 1;
    }
    let total: f64 = (0..n)
        .map(|i| {
            if size[labels[i]] < 2 {
                return 0.0;
            }
            let mut sums = vec![0.0; k];
            for j in 0..n {
                if j != i {
                    sums[labels[j]] += distance[i][j];
                }
            }
            let a = sums[labels[i]] / (size[labels[i]] - 1) as f64;
            let b = (0..k).filter(|&c| c != labels[i]).map(|c| sums[c] / size[c] as f64).fold(f64::INFINITY, f64::min);
            let m = a.max(b);
            if m > 0.0 {
                (b - a) / m
            } else {
                0.0
            }
        })
        .sum();
    total / n as f64
}

/// Average-linkage clustering on `1 - |r|`, cut where the mean silhouette
/// is highest over k in `2..=n-1`.
pub fn cluster_features(corr: &Correlation) -> Result<Clustering> {
    let n = corr.r.len();
    if n < 3 {
        return Err(Error::Dataset(format!("clustering needs at least 3 features, got {n}")));
    }
    let dist: Vec<Vec<f64>> =
        corr.r.iter().enumerate().map(|(i, row)| row.iter().enumerate().map(|(j, r)| if i == j { 0.0 } else { 1.0 - r.abs() }).collect()).collect();
    let merges = average_linkage(&dist);
    let silhouettes: Vec<(usize, f64)> =
        (2..n).into_par_iter().map(|k| (k, mean_silhouette(&dist, &cut(n, &merges, k)))).collect();
    let mut best = silhouettes[0];
    for &(k, s) in &silhouettes[1..] {
        if s > best.1 + SILHOUETTE_TIE {
            best = (k, s);
        }
    }
    let labels = cut(n, &merges, best.0);
    let mut clusters = vec![Vec::new(); best.0];
    for (v, &l) in labels.iter().enumerate() {
        clusters[l].push(v);
    }
    Ok(Clustering { merges, silhouettes, k: best.0, clusters })
}

fn mean_abs_r(corr: &Correlation, members: &[usize]) -> Option<f64> {
    let mut s = 0.0;
    let mut c = 0usize;
    for (x, &i) in members.iter().enumerate() {
        for &j in &members[x + 1..] {
            s += corr.r[i][j].abs();
            c += 1;
        }
    }
    (c > 0).then(|| s / c as f64)
}

/// Text report: search settings, chosen cut with its neighbours, constant
/// features, then one block per cluster.
pub fn cluster_report(corr: &Correlation, c: &Clustering) -> String {
    let mut out = String::new();
    let n = corr.names.len();
    let _ = writeln!(out, "# distance 1 - |pearson r|; average linkage");
    let _ = writeln!(out, "# cut search k in [2, {}] by mean silhouette; ties within {} go to the smaller k", n - 1, SILHOUETTE_TIE);
    let show = |k: usize| c.silhouette_of(k).map_or("-".to_string(), |s| format!("{s:.6}"));
    let _ = writeln!(out, "# chosen k {} silhouette {}", c.k, show(c.k));
    let _ = writeln!(
        out,
        "# witness: k-1 {} k+1 {} locally optimal {}",
        show(c.k - 1),
        show(c.k + 1),
        c.locally_optimal()
    );
    let constants: Vec<&str> = (0..n).filter(|&i| corr.constant[i]).map(|i| corr.names[i].as_str()).collect();
    let _ = writeln!(out, "# constant features: {}", constants.len());
    for name in constants {
        let _ = writeln!(out, "constant\t{name}");
    }
    for (i, members) in c.clusters.iter().enumerate() {
        let mean = mean_abs_r(corr, members).map_or("-".to_string(), |m| format!("{m:.6}"));
        let _ = writeln!(out, "\ncluster {} size {} mean_abs_r {}", i, members.len(), mean);
        for &m in members {
            let _ = writeln!(out, "  {}", corr.names[m]);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ds(cols: Vec<Vec<f64>>) -> Dataset {
        let n = cols[0].len();
        let rows = (0..n).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
        Dataset::new(
            (0..cols.len()).map(|j| format!("f{j}")).collect(),
            (0..n).map(|i| i.to_string()).collect(),
            vec![0; n],
            rows,
        )
        .unwrap()
    }

    fn direct_r(x: &[f64], y: &[f64]) -> f64 {
        let n = x.len() as f64;
        let (mx, my) = (x.iter().sum::<f64>() / n, y.iter().sum::<f64>() / n);
        let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
        let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
        let syy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
        sxy / (sxx * syy).sqrt()
    }

    #[test]
    fn pearson_basics() {
        let x = vec![1.0, 2.0, 4.0, 8.0];
        let c = pearson_matrix(&ds(vec![x.clone(), x.iter().map(|v| -v).collect(), vec![3.0; 4]])).unwrap();
        assert_eq!(c.r[0][0], 1.0);
        assert!((c.r[0][1] + 1.0).abs() < 1e-12);
        assert_eq!(c.r[0][2], 0.0);
        assert_eq!(c.r[2][2], 1.0);
        assert_eq!(c.constant, vec![false, false, true]);
        assert!(pearson_matrix(&ds(vec![vec![1.0]])).is_err());
    }

    #[test]
    fn pearson_matches_direct_formula() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let cols: Vec<Vec<f64>> = (0..3).map(|_| (0..5).map(|_| rng.random_range(-3.0..3.0)).collect()).collect();
        let c = pearson_matrix(&ds(cols.clone())).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 1.0 } else { direct_r(&cols[i], &cols[j]) };
                assert!((c.r[i][j] - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn constant_detection_tolerance() {
        let tiny: Vec<f64> = (0..4).map(|i| 1.0 + if i % 2 == 0 { 1e-15 } else { -1e-15 }).collect();
        let d = ds(vec![vec![1.0, 2.0, 3.0, 4.0], vec![7.0; 4], tiny]);
        assert_eq!(constant_features(&d), vec![1, 2]);
        assert!(constant_features(&ds(vec![vec![1.0, 2.0], vec![2.0, 1.0]])).is_empty());
    }

    #[test]
    fn linkage_heights_and_cut() {
        let dist = vec![
            vec![0.0, 0.1, 0.9, 0.8],
            vec![0.1, 0.0, 0.7, 0.9],
            vec![0.9, 0.7, 0.0, 0.2],
            vec![0.8, 0.9, 0.2, 0.0],
        ];
        let m = average_linkage(&dist);
        assert_eq!((m[0].a, m[0].b), (0, 1));
        assert_eq!((m[1].a, m[1].b), (2, 3));
        assert!((m[2].height - (0.9 + 0.8 + 0.7 + 0.9) / 4.0).abs() < 1e-12);
        assert_eq!(cut(4, &m, 2), vec![0, 0, 1, 1]);
        assert_eq!(cut(4, &m, 4), vec![0, 1, 2, 3]);
    }

    #[test]
    fn duplicates_share_a_cluster() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a: Vec<f64> = (0..30).map(|_| rng.random_range(0.0..1.0)).collect();
        let b: Vec<f64> = (0..30).map(|_| rng.random_range(0.0..1.0)).collect();
        let corr = pearson_matrix(&ds(vec![a.clone(), b, a])).unwrap();
        let c = cluster_features(&corr).unwrap();
        assert_eq!(c.k, 2);
        assert!(c.clusters.iter().any(|cl| cl == &vec![0, 2]));
        assert!(c.locally_optimal());
        assert!(cluster_features(&pearson_matrix(&ds(vec![vec![1.0, 2.0], vec![2.0, 1.0]])).unwrap()).is_err());
    }

    #[test]
    fn uncorrelated_features_tie_to_smallest_k() {
        // all pairwise distances equal 1: every cut has silhouette 0
        let corr = Correlation { names: (0..5).map(|i| i.to_string()).collect(), r: (0..5).map(|i| (0..5).map(|j| f64::from(u8::from(i == j))).collect()).collect(), constant: vec![false; 5] };
        let c = cluster_features(&corr).unwrap();
        assert!(c.silhouettes.iter().all(|(_, s)| s.abs() < 1e-12));
        assert_eq!(c.k, 2);
    }

    #[test]
    fn report_lists_every_feature() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let cols: Vec<Vec<f64>> = (0..6).map(|_| (0..20).map(|_| rng.random_range(0.0..1.0)).collect()).collect();
        let corr = pearson_matrix(&ds(cols)).unwrap();
        let c = cluster_features(&corr).unwrap();
        let text = cluster_report(&corr, &c);
        for name in &corr.names {
            assert!(text.contains(&format!("  {name}\n")));
        }
        assert!(text.contains("locally optimal true"));
    }
}

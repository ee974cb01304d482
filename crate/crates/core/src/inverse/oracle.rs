//! Grid-and-Newton search for leading pairs `(b_1, b_2)` whose matrix
//! `S_{n,2}` reproduces two consecutive free eigenvalues. Independent of
//! the elimination argument: it only evaluates spectra and determinants.
//!
//! Two residual fields are scanned for every index `k`:
//!
//! * index field: `(λ̃_k - λ_k, λ̃_{k+1} - λ_{k+1})`, eigenvalues in place;
//! * polynomial field: `det(λ_k I - S_{n,2})` and `det(λ_{k+1} I - S_{n,2})`,
//!   which vanish whenever both values are eigenvalues anywhere.
//!
//! Local minima of either field seed a damped Newton iteration with a
//! finite-difference Jacobian. Every refined point is then polished on the
//! polynomial field, whose zero set contains the index field's, and judged
//! on the index field.

use serde::{Deserialize, Serialize};

use crate::charpoly::free_charpoly;
use crate::error::{Error, Result};
use crate::exec::{map_range, map_slice, Execution};
use crate::operators::JacobiMatrix;
use crate::spectra::{eigenvalues_jacobi_with, kth_eigenvalue};

use super::mixed::{amb3_candidates, classify_index, CandidatePair, Degeneracy};

/// Largest dimension the search accepts.
pub const MAX_N: usize = 10;
const MAX_POINTS: usize = 4_000_001;
const SEEDS_PER_FIELD: usize = 64;
const SCREEN_TOL: f64 = 1e-9;
const REFINE_EIG_TOL: f64 = 1e-14;
const FD_STEP: f64 = 1e-6;
const NEWTON_ITERS: usize = 60;
const POLISH_ITERS: usize = 200;
/// Pairs closer than this are the same root; pairs this close to the
/// origin are the origin.
const ROOT_RADIUS: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanGrid {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl Default for ScanGrid {
    fn default() -> Self {
        Self {
            lo: -3.0,
            hi: 3.0,
            step: 0.01,
        }
    }
}

impl ScanGrid {
    pub fn new(lo: f64, hi: f64, step: f64) -> Result<Self> {
        let g = Self { lo, hi, step };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<()> {
        if !(self.lo.is_finite() && self.hi.is_finite() && self.lo < self.hi) {
            return Err(Error::InvalidGrid(format!(
                "need finite lo < hi, got [{}, {}]",
                self.lo, self.hi
            )));
        }
        if !(self.step.is_finite() && self.step > 0.0) {
            return Err(Error::InvalidGrid(format!("step must be positive, got {}", self.step)));
        }
        let per_axis = self.points_per_axis();
        if per_axis.saturating_mul(per_axis) > MAX_POINTS {
            return Err(Error::InvalidGrid(format!(
                "{per_axis}^2 grid points exceed the limit of {MAX_POINTS}"
            )));
        }
        Ok(())
    }

    /// Points per axis, both ends included.
    pub fn points_per_axis(&self) -> usize {
        ((self.hi - self.lo) / self.step + 1e-9).floor() as usize + 1
    }

    /// `i`-th coordinate, computed from the index to avoid drift.
    pub fn coord(&self, i: usize) -> f64 {
        (self.lo + i as f64 * self.step).min(self.hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleConfig {
    pub n: usize,
    pub grid: ScanGrid,
    /// Both eigenvalues must agree to this for a pair to count as a match.
    pub match_tol: f64,
    /// Residual at which Newton refinement stops.
    pub refine_tol: f64,
    pub exec: Execution,
}

impl OracleConfig {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            grid: ScanGrid::default(),
            match_tol: 1e-8,
            refine_tol: 1e-10,
            exec: Execution::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RootKind {
    Origin,
    /// The spurious candidate: both values are eigenvalues, at other indices.
    Spurious,
    Other,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Index,
    Polynomial,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RootInfo {
    pub b1: f64,
    pub b2: f64,
    pub norm: f64,
    /// Field whose grid minimum seeded this root.
    pub seed_field: Field,
    pub kind: RootKind,
    /// `max(|λ̃_k - λ_k|, |λ̃_{k+1} - λ_{k+1}|)`.
    pub index_residual: f64,
    /// Scaled polynomial residual.
    pub polynomial_residual: f64,
    /// Index-wise match within the configured tolerance.
    pub matches_both: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndexScan {
    pub k: usize,
    pub degeneracy: Degeneracy,
    pub free_pair: (f64, f64),
    pub spurious: CandidatePair,
    pub index_seeds: usize,
    pub polynomial_seeds: usize,
    /// Seeds whose refinement did not reach a root.
    pub unconverged: usize,
    /// Grid points away from the origin that already match both values.
    pub grid_hits: usize,
    pub roots: Vec<RootInfo>,
    /// Roots away from the origin matching both values index-wise.
    pub nonzero_solutions: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleScan {
    pub config: OracleConfig,
    pub points: usize,
    pub scans: Vec<IndexScan>,
    pub nonzero_solutions: usize,
}

impl OracleScan {
    /// No nonzero pair matched any consecutive eigenvalue pair.
    pub fn is_unique(&self) -> bool {
        self.nonzero_solutions == 0
    }
}

/// Free ratio terms `p_{n-2}(λ)` and `p_{n-3}(λ)` at one eigenvalue.
#[derive(Debug, Clone, Copy)]
struct FreeTerms {
    lambda: f64,
    p2: f64,
    p3: f64,
}

impl FreeTerms {
    fn new(n: usize, lambda: f64) -> Self {
        Self {
            lambda,
            p2: free_charpoly::<f64>(n - 2).eval(&lambda),
            p3: if n >= 3 {
                free_charpoly::<f64>(n - 3).eval(&lambda)
            } else {
                0.0
            },
        }
    }

    /// `det(λI - S_{n,2})` through the two-row expansion, divided by the
    /// sum of the absolute values of its terms.
    fn residual(&self, b1: f64, b2: f64) -> f64 {
        let (l, p2, p3) = (self.lambda, self.p2, self.p3);
        let head = (l - b1) * (l - b2);
        let value = (head - 1.0) * p2 - (l - b1) * p3;
        let scale = (head.abs() + 1.0) * p2.abs() + (l - b1).abs() * p3.abs() + 1.0;
        value / scale
    }
}

fn norm2(v: (f64, f64)) -> f64 {
    v.0.hypot(v.1)
}

fn inf_norm(v: (f64, f64)) -> f64 {
    v.0.abs().max(v.1.abs())
}

struct Problem {
    n: usize,
    k: usize,
    pair: (f64, f64),
    terms: (FreeTerms, FreeTerms),
}

impl Problem {
    fn index_field(&self, b: (f64, f64)) -> Result<(f64, f64)> {
        let s = JacobiMatrix::leading_pair(self.n, b.0, b.1)?;
        let tol = REFINE_EIG_TOL * (1.0 + inf_norm(b));
        Ok((
            kth_eigenvalue(&s, self.k - 1, tol)? - self.pair.0,
            kth_eigenvalue(&s, self.k, tol)? - self.pair.1,
        ))
    }

    fn polynomial_field(&self, b: (f64, f64)) -> Result<(f64, f64)> {
        Ok((self.terms.0.residual(b.0, b.1), self.terms.1.residual(b.0, b.1)))
    }

    fn field(&self, field: Field, b: (f64, f64)) -> Result<(f64, f64)> {
        match field {
            Field::Index => self.index_field(b),
            Field::Polynomial => self.polynomial_field(b),
        }
    }
}

/// Damped Newton with a central-difference Jacobian, kept inside the box
/// `|b|_∞ <= bound`. Stops at `stop_tol` (or never, when it is zero) and
/// when no step lowers the residual.
fn newton(
    p: &Problem,
    field: Field,
    start: (f64, f64),
    stop_tol: f64,
    max_iter: usize,
    bound: f64,
) -> Result<(f64, f64)> {
    let mut b = start;
    let mut g = p.field(field, b)?;
    for _ in 0..max_iter {
        let r = inf_norm(g);
        if r <= stop_tol || r == 0.0 {
            break;
        }
        let h = FD_STEP;
        let gp1 = p.field(field, (b.0 + h, b.1))?;
        let gm1 = p.field(field, (b.0 - h, b.1))?;
        let gp2 = p.field(field, (b.0, b.1 + h))?;
        let gm2 = p.field(field, (b.0, b.1 - h))?;
        let j11 = (gp1.0 - gm1.0) / (2.0 * h);
        let j21 = (gp1.1 - gm1.1) / (2.0 * h);
        let j12 = (gp2.0 - gm2.0) / (2.0 * h);
        let j22 = (gp2.1 - gm2.1) / (2.0 * h);
        let det = j11 * j22 - j12 * j21;
        if det == 0.0 || !det.is_finite() {
            break;
        }
        let step = (
            -(j22 * g.0 - j12 * g.1) / det,
            -(-j21 * g.0 + j11 * g.1) / det,
        );
        let mut alpha = 1.0;
        let mut accepted = None;
        for _ in 0..40 {
            let trial = (b.0 + alpha * step.0, b.1 + alpha * step.1);
            if !(inf_norm(trial) <= bound) {
                alpha *= 0.5;
                continue;
            }
            let gt = p.field(field, trial)?;
            if inf_norm(gt) < r {
                accepted = Some((trial, gt));
                break;
            }
            alpha *= 0.5;
        }
        match accepted {
            Some((trial, gt)) => {
                b = trial;
                g = gt;
            }
            None => break,
        }
    }
    Ok(b)
}

/// Indices of 8-neighbour local minima, lowest first, at most `cap`.
fn local_minima(values: &[f64], side: usize, cap: usize) -> Vec<usize> {
    let mut minima: Vec<usize> = (0..values.len())
        .filter(|&idx| {
            let (i, j) = (idx / side, idx % side);
            let v = values[idx];
            (-1i64..=1).all(|di| {
                (-1i64..=1).all(|dj| {
                    let (ni, nj) = (i as i64 + di, j as i64 + dj);
                    if (di, dj) == (0, 0) || ni < 0 || nj < 0 || ni >= side as i64 || nj >= side as i64 {
                        return true;
                    }
                    v <= values[ni as usize * side + nj as usize]
                })
            })
        })
        .collect();
    minima.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
    minima.truncate(cap);
    minima
}

/// Scans every `k` in `1..n` over the grid and returns all refined roots.
pub fn brute_force_isospectral_search(config: &OracleConfig) -> Result<OracleScan> {
    let n = config.n;
    if !(2..=MAX_N).contains(&n) {
        return Err(Error::InvalidGrid(format!("n must lie in 2..={MAX_N}, got {n}")));
    }
    config.grid.validate()?;
    for tol in [config.match_tol, config.refine_tol] {
        if !(tol.is_finite() && tol > 0.0) {
            return Err(Error::InvalidTolerance(tol));
        }
    }
    let grid = config.grid;
    let side = grid.points_per_axis();
    let free = eigenvalues_jacobi_with(&JacobiMatrix::free(n)?, REFINE_EIG_TOL, Execution::Sequential)?;
    let free = free.values();
    let pairs = n - 1;
    let terms: Vec<FreeTerms> = free.iter().map(|&l| FreeTerms::new(n, l)).collect();

    // row-major fields: [k][i * side + j]
    let rows = map_range(config.exec, side, |i| -> Result<(Vec<Vec<f64>>, Vec<Vec<f64>>)> {
        let b1 = grid.coord(i);
        let mut index = vec![Vec::with_capacity(side); pairs];
        let mut poly = vec![Vec::with_capacity(side); pairs];
        for j in 0..side {
            let b2 = grid.coord(j);
            let s = JacobiMatrix::leading_pair(n, b1, b2)?;
            let spec = eigenvalues_jacobi_with(&s, SCREEN_TOL, Execution::Sequential)?;
            let spec = spec.values();
            let dets: Vec<f64> = terms.iter().map(|t| t.residual(b1, b2).abs()).collect();
            for k in 0..pairs {
                index[k].push((spec[k] - free[k]).abs().max((spec[k + 1] - free[k + 1]).abs()));
                poly[k].push(dets[k].max(dets[k + 1]));
            }
        }
        Ok((index, poly))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;

    let mut index_fields = vec![Vec::with_capacity(side * side); pairs];
    let mut poly_fields = vec![Vec::with_capacity(side * side); pairs];
    for (index, poly) in rows {
        for k in 0..pairs {
            index_fields[k].extend_from_slice(&index[k]);
            poly_fields[k].extend_from_slice(&poly[k]);
        }
    }

    let bound = grid.lo.abs().max(grid.hi.abs()) + 1.0;
    let mut scans = Vec::with_capacity(pairs);
    for k in 1..n {
        let problem = Problem {
            n,
            k,
            pair: (free[k - 1], free[k]),
            terms: (terms[k - 1], terms[k]),
        };
        let degeneracy = classify_index(n, k)?;
        let spurious = amb3_candidates(free[k - 1], free[k], 1e3 * REFINE_EIG_TOL)?[1];
        let coords = |idx: usize| (grid.coord(idx / side), grid.coord(idx % side));

        let grid_hits = index_fields[k - 1]
            .iter()
            .enumerate()
            .filter(|&(idx, &e)| e <= config.match_tol && norm2(coords(idx)) > ROOT_RADIUS)
            .count();

        let mut seeds: Vec<(Field, (f64, f64))> = Vec::new();
        let index_minima = local_minima(&index_fields[k - 1], side, SEEDS_PER_FIELD);
        let poly_minima = local_minima(&poly_fields[k - 1], side, SEEDS_PER_FIELD);
        seeds.extend(index_minima.iter().map(|&idx| (Field::Index, coords(idx))));
        seeds.extend(poly_minima.iter().map(|&idx| (Field::Polynomial, coords(idx))));

        let refined = map_slice(config.exec, &seeds, |&(field, start)| -> Result<Option<RootInfo>> {
            let b = newton(&problem, field, start, config.refine_tol, NEWTON_ITERS, bound)?;
            // polish on the polynomial field; its roots include every
            // index-wise match
            let b = newton(&problem, Field::Polynomial, b, 0.0, POLISH_ITERS, bound)?;
            let polynomial_residual = inf_norm(problem.polynomial_field(b)?);
            if polynomial_residual > config.refine_tol {
                return Ok(None);
            }
            let index_residual = inf_norm(problem.index_field(b)?);
            let norm = norm2(b);
            let kind = if norm <= ROOT_RADIUS {
                RootKind::Origin
            } else if spurious
                .b2
                .is_some_and(|b2| norm2((b.0 - spurious.b1, b.1 - b2)) <= ROOT_RADIUS * (1.0 + norm))
            {
                RootKind::Spurious
            } else {
                RootKind::Other
            };
            Ok(Some(RootInfo {
                b1: b.0,
                b2: b.1,
                norm,
                seed_field: field,
                kind,
                index_residual,
                polynomial_residual,
                matches_both: index_residual <= config.match_tol,
            }))
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;

        let unconverged = refined.iter().filter(|r| r.is_none()).count();
        let mut roots: Vec<RootInfo> = Vec::new();
        for r in refined.into_iter().flatten() {
            if !roots
                .iter()
                .any(|q| norm2((q.b1 - r.b1, q.b2 - r.b2)) <= ROOT_RADIUS * (1.0 + r.norm))
            {
                roots.push(r);
            }
        }
        roots.sort_by(|a, b| a.norm.total_cmp(&b.norm));
        let nonzero_solutions = roots
            .iter()
            .filter(|r| r.matches_both && r.norm > ROOT_RADIUS)
            .map(|r| (r.b1, r.b2))
            .collect();
        scans.push(IndexScan {
            k,
            degeneracy,
            free_pair: problem.pair,
            spurious,
            index_seeds: index_minima.len(),
            polynomial_seeds: poly_minima.len(),
            unconverged,
            grid_hits,
            roots,
            nonzero_solutions,
        });
    }
    let nonzero_solutions = scans
        .iter()
        .map(|s| s.nonzero_solutions.len() + s.grid_hits)
        .sum();
    Ok(OracleScan {
        config: *config,
        points: side * side,
        scans,
        nonzero_solutions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coarse(n: usize) -> OracleConfig {
        OracleConfig {
            grid: ScanGrid::new(-3.0, 3.0, 0.05).unwrap(),
            ..OracleConfig::new(n)
        }
    }

    #[test]
    fn grid_geometry() {
        let g = ScanGrid::default();
        assert_eq!(g.points_per_axis(), 601);
        assert_eq!(g.coord(0), -3.0);
        assert_eq!(g.coord(600), 3.0);
        assert!(g.coord(300).abs() < 1e-12);
        assert!(ScanGrid::new(1.0, -1.0, 0.1).is_err());
        assert!(ScanGrid::new(-1.0, 1.0, 0.0).is_err());
        assert!(ScanGrid::new(-1.0, 1.0, 1e-5).is_err());
    }

    #[test]
    fn finds_origin_and_spurious_but_no_solution() {
        let scan = brute_force_isospectral_search(&coarse(5)).unwrap();
        assert!(scan.is_unique(), "{scan:#?}");
        let k1 = &scan.scans[0];
        assert_eq!(k1.degeneracy, Degeneracy::None);
        assert!(k1.roots.iter().any(|r| r.kind == RootKind::Origin && r.matches_both));
        assert!(k1.roots.iter().any(|r| r.kind == RootKind::Spurious && !r.matches_both));
    }

    #[test]
    fn three_by_three_origin_only() {
        let scan = brute_force_isospectral_search(&coarse(3)).unwrap();
        assert!(scan.is_unique());
        for s in &scan.scans {
            assert!(s.roots.iter().any(|r| r.kind == RootKind::Origin));
        }
    }

    #[test]
    fn coincide_case_collapses_to_origin() {
        let scan = brute_force_isospectral_search(&coarse(4)).unwrap();
        assert!(scan.is_unique(), "{scan:#?}");
        assert_eq!(scan.scans[1].degeneracy, Degeneracy::Coincide);
    }

    #[test]
    fn strategies_agree() {
        let mut cfg = coarse(4);
        cfg.grid = ScanGrid::new(-2.0, 2.0, 0.1).unwrap();
        let par = brute_force_isospectral_search(&cfg).unwrap();
        cfg.exec = Execution::Sequential;
        let seq = brute_force_isospectral_search(&cfg).unwrap();
        assert_eq!(par.scans, seq.scans);
    }

    #[test]
    fn rejects_large_n() {
        assert!(brute_force_isospectral_search(&OracleConfig::new(11)).is_err());
    }
}

//! A two-dimensional polytope whose upper boundary is a long concave chain.
//!
//! Vertices are `p_i = (i, i * (2V - i))` for `i = 0..V`. Edge `i` joins
//! `p_i` and `p_{i+1}` and lies on `y = (2V - 2i - 1) x + i (i + 1)`. The box
//! `0 <= x <= V - 1, y >= 0` closes the region and is never omitted.
//!
//! Dropping any edge from the description lets the objective aligned with
//! that edge's outward normal overshoot the true optimum.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lp::{solve_lp, LinearProgram, LpOutcome, Relation, Sense};
use crate::rational::Rational;

/// Subset scans enumerate when the number of subsets is at most this.
pub const ENUMERATION_THRESHOLD: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Point2 {
    pub x: Rational,
    pub y: Rational,
}

/// Halfplane `y <= slope * x + intercept`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Facet {
    pub slope: Rational,
    pub intercept: Rational,
}

impl Facet {
    pub fn contains(&self, p: &Point2) -> bool {
        p.y <= &self.slope * &p.x + &self.intercept
    }

    fn row(&self) -> (Vec<Rational>, Relation, Rational) {
        (vec![-&self.slope, Rational::one()], Relation::Le, self.intercept.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ArcPolytope {
    pub vertices: Vec<Point2>,
    pub facets: Vec<Facet>,
    /// Right edge of the box; the left edge is `x = 0` and the floor `y = 0`.
    pub x_max: Rational,
}

impl ArcPolytope {
    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    /// Program over `(x, y)` keeping the box and the facets for which `keep`
    /// holds.
    pub fn program(&self, objective: [Rational; 2], keep: impl Fn(usize) -> bool) -> LinearProgram {
        let [a, b] = objective;
        let mut lp = LinearProgram::new(2, Sense::Maximize, vec![a, b]).expect("two variables");
        for (j, f) in self.facets.iter().enumerate() {
            if keep(j) {
                let (coeffs, rel, rhs) = f.row();
                lp.add_constraint(coeffs, rel, rhs).expect("two coefficients");
            }
        }
        lp.upper[0] = Some(self.x_max.clone());
        lp
    }

    /// Corners of the full polytope: the chain plus the bottom-right corner.
    pub fn corners(&self) -> Vec<Point2> {
        let mut pts = self.vertices.clone();
        if !self.x_max.is_zero() {
            pts.push(Point2 { x: self.x_max.clone(), y: Rational::zero() });
        }
        pts
    }

    /// Maximum of `a x + b y` over the full polytope, by scanning its corners.
    pub fn vertex_max(&self, a: &Rational, b: &Rational) -> Rational {
        self.corners()
            .iter()
            .map(|p| a * &p.x + b * &p.y)
            .max()
            .expect("at least two vertices")
    }
}

/// Builds the arc with `vertex_count` chain vertices.
pub fn gen_arc(vertex_count: usize) -> Result<ArcPolytope> {
    if vertex_count < 2 {
        return Err(Error::invalid("an arc needs at least two vertices"));
    }
    let v = vertex_count as i64;
    let vertices = (0..v)
        .map(|i| Point2 { x: Rational::from(i), y: Rational::from(i * (2 * v - i)) })
        .collect();
    let facets = (0..v - 1)
        .map(|i| Facet { slope: Rational::from(2 * v - 2 * i - 1), intercept: Rational::from(i * (i + 1)) })
        .collect();
    Ok(ArcPolytope { vertices, facets, x_max: Rational::from(v - 1) })
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Adversary {
    pub omitted: usize,
    /// `(a, b)` for the objective `maximize a x + b y`.
    pub objective: [Rational; 2],
    pub true_max: Rational,
    /// `None` when the truncated program is unbounded (only possible when
    /// the single facet of a two-vertex arc is dropped).
    pub relaxed_max: Option<Rational>,
    pub witness: Option<Point2>,
    pub gap: Option<Rational>,
}

impl Adversary {
    pub fn has_positive_gap(&self) -> bool {
        self.gap.as_ref().is_none_or(Rational::is_positive)
    }
}

/// Objective along facet `omitted`'s outward normal, solved against the
/// program with `omitted` removed.
pub fn adversarial_objective(poly: &ArcPolytope, omitted: usize) -> Result<Adversary> {
    if omitted >= poly.facet_count() {
        return Err(Error::invalid("omitted facet index out of range"));
    }
    probe(poly, omitted, |j| j != omitted)
}

fn probe(poly: &ArcPolytope, facet: usize, keep: impl Fn(usize) -> bool) -> Result<Adversary> {
    let objective = [-&poly.facets[facet].slope, Rational::one()];
    let true_max = poly.vertex_max(&objective[0], &objective[1]);
    let lp = poly.program(objective.clone(), keep);
    let (relaxed_max, witness) = match solve_lp(&lp)? {
        LpOutcome::Optimal { point, value } => {
            let [x, y]: [Rational; 2] = point.try_into().expect("two coordinates");
            (Some(value), Some(Point2 { x, y }))
        }
        LpOutcome::Unbounded => (None, None),
        LpOutcome::Infeasible => unreachable!("the origin satisfies every arc row"),
    };
    let gap = relaxed_max.as_ref().map(|r| r - &true_max);
    Ok(Adversary { omitted: facet, objective, true_max, relaxed_max, witness, gap })
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SubsetResult {
    pub id: usize,
    pub omitted: Vec<usize>,
    /// One probe per omitted facet, against the program missing all of them.
    /// With nothing omitted, one probe per facet against the full program.
    pub probes: Vec<Adversary>,
    /// Largest finite gap among the probes (zero for a complete model).
    pub worst_gap: Rational,
    pub worst_facet: Option<usize>,
    pub any_unbounded: bool,
}

impl SubsetResult {
    pub fn exposes_gap(&self) -> bool {
        self.any_unbounded || self.worst_gap.is_positive()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ScanReport {
    pub vertex_count: usize,
    pub facet_count: usize,
    pub budget: usize,
    pub enumerated: bool,
    pub total_subsets: Option<u64>,
    pub subsets: Vec<SubsetResult>,
    pub with_gap: usize,
}

/// `C(n, k)`, or `None` above `u64`.
fn binomial(n: u64, k: u64) -> Option<u64> {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return None;
        }
    }
    Some(acc as u64)
}

/// Keeps `budget` of the facets and probes every omitted one.
///
/// All size-`budget` subsets are enumerated when there are at most
/// [`ENUMERATION_THRESHOLD`] of them; otherwise `sample_count` distinct
/// subsets are drawn with a ChaCha8 generator seeded by `seed`. Subsets are
/// reported sorted by their omitted-index lists.
pub fn subset_gap_scan(poly: &ArcPolytope, budget: usize, sample_count: usize, seed: u64) -> Result<ScanReport> {
    let f = poly.facet_count();
    if budget > f {
        return Err(Error::invalid("budget exceeds the number of facets"));
    }
    let total = binomial(f as u64, budget as u64);
    let enumerated = total.is_some_and(|t| t <= ENUMERATION_THRESHOLD);

    let mut omitted_sets: BTreeSet<Vec<usize>> = BTreeSet::new();
    if enumerated {
        for kept in combinations(f, budget) {
            omitted_sets.insert(complement(f, &kept));
        }
    } else {
        let available = total.map_or(u64::MAX, |t| t);
        let target = (sample_count as u64).min(available) as usize;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        while omitted_sets.len() < target {
            let mut kept = sample(&mut rng, f, budget).into_vec();
            kept.sort_unstable();
            omitted_sets.insert(complement(f, &kept));
        }
    }

    let mut subsets = Vec::with_capacity(omitted_sets.len());
    for (id, omitted) in omitted_sets.into_iter().enumerate() {
        let probes = if omitted.is_empty() {
            (0..f).map(|j| probe(poly, j, |_| true)).collect::<Result<Vec<_>>>()?
        } else {
            let mut dropped = vec![false; f];
            omitted.iter().for_each(|&j| dropped[j] = true);
            omitted
                .iter()
                .map(|&j| probe(poly, j, |i| !dropped[i]))
                .collect::<Result<Vec<_>>>()?
        };
        let mut worst_gap = Rational::zero();
        let mut worst_facet = None;
        for p in &probes {
            if let Some(g) = &p.gap {
                if worst_facet.is_none() || g > &worst_gap {
                    worst_gap = g.clone();
                    worst_facet = Some(p.omitted);
                }
            }
        }
        let any_unbounded = probes.iter().any(|p| p.gap.is_none());
        subsets.push(SubsetResult { id, omitted, probes, worst_gap, worst_facet, any_unbounded });
    }
    let with_gap = subsets.iter().filter(|s| s.exposes_gap()).count();
    Ok(ScanReport {
        vertex_count: poly.vertices.len(),
        facet_count: f,
        budget,
        enumerated,
        total_subsets: total,
        subsets,
        with_gap,
    })
}

fn complement(n: usize, kept: &[usize]) -> Vec<usize> {
    let mut mark = vec![false; n];
    kept.iter().for_each(|&k| mark[k] = true);
    (0..n).filter(|&i| !mark[i]).collect()
}

/// All `k`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

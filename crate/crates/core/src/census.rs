//! Census of all circles through point triples, classified by how many of
//! the remaining points fall inside and outside each circle.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Circle, Kernel, PointSet, Sign};

/// Inside/outside counts of one circle, the `(a, b)` of an
/// `(a, b)`-splitting circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SplitSignature {
    pub inside: usize,
    pub outside: usize,
}

impl SplitSignature {
    pub fn new(inside: usize, outside: usize) -> Self {
        SplitSignature { inside, outside }
    }

    /// `(min, max)` of the two counts.
    pub fn unordered(self) -> (usize, usize) {
        (self.inside.min(self.outside), self.inside.max(self.outside))
    }

    pub fn swapped(self) -> Self {
        SplitSignature::new(self.outside, self.inside)
    }

    pub fn is_point_splitting(self, n: usize) -> bool {
        n >= 1 && self.inside == n - 1 && self.outside == n - 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircleRecord {
    pub triple: [usize; 3],
    pub signature: SplitSignature,
    /// Further points lying on the circle; always empty in general position.
    pub on_extra: Vec<usize>,
}

impl CircleRecord {
    pub fn contains(&self, index: usize) -> bool {
        self.triple.contains(&index)
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Predicted number of circles with unordered signature `{a, b}` for a set of
/// `2n + 1` points in general position.
pub fn predicted_count(n: usize, a: usize, b: usize) -> usize {
    if a == b {
        n * n
    } else {
        2 * (a + 1) * (b + 1)
    }
}

fn check_cardinality(len: usize) -> Result<usize> {
    if len < 3 {
        return Err(Error::TooFewPoints(len));
    }
    if len.is_multiple_of(2) {
        return Err(Error::EvenCardinality(len));
    }
    Ok((len - 1) / 2)
}

pub(crate) fn triples(len: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::with_capacity(binomial(len, 3));
    for i in 0..len {
        for j in i + 1..len {
            for k in j + 1..len {
                out.push([i, j, k]);
            }
        }
    }
    out
}

/// All `C(2n+1, 3)` circle records of a general-position set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub n: usize,
    pub records: Vec<CircleRecord>,
    /// Keyed by unordered signature `(min, max)`.
    pub by_signature: BTreeMap<(usize, usize), usize>,
}

pub fn build_census(s: &PointSet) -> Result<Census> {
    let n = check_cardinality(s.len())?;
    if !s.is_general_position() {
        return Err(Error::NotGeneralPosition(s.gp_status().clone()));
    }
    Ok(census_of_kernel(&s.kernel(), n))
}

/// Census without validation; the caller guarantees general position.
pub(crate) fn census_of_kernel(kernel: &Kernel, n: usize) -> Census {
    let len = kernel.len();
    let records: Vec<CircleRecord> = triples(len)
        .into_par_iter()
        .map(|[i, j, k]| {
            let orient = kernel.orientation(i, j, k);
            let (mut inside, mut outside) = (0, 0);
            for l in (0..len).filter(|l| ![i, j, k].contains(l)) {
                match kernel.in_circle_raw(i, j, k, l) * orient {
                    Sign::Positive => inside += 1,
                    Sign::Negative => outside += 1,
                    Sign::Zero => unreachable!("census requires general position"),
                }
            }
            CircleRecord {
                triple: [i, j, k],
                signature: SplitSignature::new(inside, outside),
                on_extra: Vec::new(),
            }
        })
        .collect();
    let mut by_signature = BTreeMap::new();
    for r in &records {
        *by_signature.entry(r.signature.unordered()).or_insert(0) += 1;
    }
    Census { n, records, by_signature }
}

impl Census {
    pub fn point_splitting(&self) -> usize {
        self.count_unordered(self.n - 1, self.n - 1)
    }

    pub fn count_unordered(&self, a: usize, b: usize) -> usize {
        let key = (a.min(b), a.max(b));
        self.by_signature.get(&key).copied().unwrap_or(0)
    }

    /// Counts keyed by ordered `(inside, outside)`.
    pub fn ordered_counts(&self) -> BTreeMap<(usize, usize), usize> {
        let mut out = BTreeMap::new();
        for r in &self.records {
            *out.entry((r.signature.inside, r.signature.outside)).or_insert(0) += 1;
        }
        out
    }

    pub fn record(&self, mut triple: [usize; 3]) -> Option<&CircleRecord> {
        triple.sort_unstable();
        self.records
            .binary_search_by(|r| r.triple.cmp(&triple))
            .ok()
            .map(|idx| &self.records[idx])
    }

    pub fn point_splitting_records(&self) -> impl Iterator<Item = &CircleRecord> {
        let n = self.n;
        self.records.iter().filter(move |r| r.signature.is_point_splitting(n))
    }

    /// Point-splitting circles whose defining triple contains both `i` and `j`.
    pub fn through_pair(&self, i: usize, j: usize) -> Vec<&CircleRecord> {
        self.point_splitting_records()
            .filter(|r| r.contains(i) && r.contains(j))
            .collect()
    }

    /// Number of point-splitting circles through each pair `i < j`.
    pub fn pair_counts(&self) -> BTreeMap<(usize, usize), usize> {
        let len = 2 * self.n + 1;
        let mut out: BTreeMap<(usize, usize), usize> = (0..len)
            .flat_map(|i| (i + 1..len).map(move |j| ((i, j), 0)))
            .collect();
        for r in self.point_splitting_records() {
            let [i, j, k] = r.triple;
            for key in [(i, j), (i, k), (j, k)] {
                *out.get_mut(&key).unwrap() += 1;
            }
        }
        out
    }

    pub fn pairs_all_odd(&self) -> bool {
        self.pair_counts().values().all(|c| c % 2 == 1)
    }

    pub fn summary(&self) -> CensusSummary {
        census_summary(self)
    }

    pub fn report(&self) -> CensusReport {
        let summary = self.summary();
        CensusReport {
            n: self.n,
            total_circles: summary.total,
            point_splitting: self.point_splitting(),
            signatures: summary.rows,
            pairs_odd: self.pairs_all_odd(),
        }
    }
}

pub fn count_point_splitting(s: &PointSet) -> Result<usize> {
    Ok(build_census(s)?.point_splitting())
}

/// Number of circles that are `(a, b)`- or `(b, a)`-splitting.
pub fn count_ab_splitting(s: &PointSet, a: usize, b: usize) -> Result<usize> {
    let census = build_census(s)?;
    if a + b + 2 != 2 * census.n {
        return Err(Error::BadSignature { a, b, n: census.n });
    }
    Ok(census.count_unordered(a, b))
}

pub fn splitting_circles_through_pair(s: &PointSet, i: usize, j: usize) -> Result<Vec<CircleRecord>> {
    s.check_index(i)?;
    s.check_index(j)?;
    if i == j {
        return Err(Error::RepeatedIndex(i));
    }
    let census = build_census(s)?;
    Ok(census.through_pair(i, j).into_iter().cloned().collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub a: usize,
    pub b: usize,
    pub count: usize,
    pub predicted: usize,
    #[serde(rename = "match")]
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusSummary {
    pub n: usize,
    pub rows: Vec<SummaryRow>,
    pub total: usize,
    pub expected_total: usize,
}

impl CensusSummary {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| r.matches) && self.total == self.expected_total
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("a,b,count,predicted,match\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{},{},{}\n", r.a, r.b, r.count, r.predicted, r.matches));
        }
        out.push_str(&format!(
            "total,,{},{},{}\n",
            self.total,
            self.expected_total,
            self.total == self.expected_total
        ));
        out
    }
}

/// One row per unordered signature `{a, b}` with `a <= b`, `a + b = 2n - 2`,
/// including rows whose count is zero.
pub fn census_summary(c: &Census) -> CensusSummary {
    let n = c.n;
    let rows = (0..n)
        .map(|a| {
            let b = 2 * n - 2 - a;
            let count = c.count_unordered(a, b);
            let predicted = predicted_count(n, a, b);
            SummaryRow { a, b, count, predicted, matches: count == predicted }
        })
        .collect();
    CensusSummary {
        n,
        rows,
        total: c.by_signature.values().sum(),
        expected_total: binomial(2 * n + 1, 3),
    }
}

/// The census document emitted by the `census` command.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub n: usize,
    pub total_circles: usize,
    pub point_splitting: usize,
    pub signatures: Vec<SummaryRow>,
    pub pairs_odd: bool,
}

/// A distinct circle through at least three points of a possibly
/// degenerate set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistinctCircle {
    #[serde(skip)]
    pub circle: Circle,
    pub on_circle: Vec<usize>,
    pub inside: usize,
    pub outside: usize,
    /// Whether the on-circle surplus can be split to reach exactly `(n-1, n-1)`.
    pub qualifies: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegenerateCensus {
    pub n: usize,
    pub circles: Vec<DistinctCircle>,
}

impl DegenerateCensus {
    pub fn point_splitting(&self) -> usize {
        self.circles.iter().filter(|c| c.qualifies).count()
    }

    /// Circles carrying four or more points of the set.
    pub fn concyclic(&self) -> impl Iterator<Item = &DistinctCircle> {
        self.circles.iter().filter(|c| c.on_circle.len() >= 4)
    }
}

/// Distinct circles of a set with no three points collinear. Four or more
/// concyclic points yield one circle, not one per triple.
pub fn degenerate_census(s: &PointSet) -> Result<DegenerateCensus> {
    let n = check_cardinality(s.len())?;
    let kernel = s.kernel();
    let len = s.len();
    let all = triples(len);
    if let Some(&[i, j, k]) = all.iter().find(|&&[i, j, k]| kernel.orientation(i, j, k).is_zero()) {
        return Err(Error::CollinearTriple(i, j, k));
    }
    let mut seen: HashMap<Circle, usize> = HashMap::new();
    let mut circles: Vec<DistinctCircle> = Vec::new();
    for [i, j, k] in all {
        let circle = Circle::through(s.point(i), s.point(j), s.point(k))?;
        if seen.contains_key(&circle) {
            continue;
        }
        let (mut on_circle, mut inside, mut outside) = (vec![i, j, k], 0, 0);
        for l in (0..len).filter(|l| ![i, j, k].contains(l)) {
            match kernel.in_circle(i, j, k, l) {
                Sign::Positive => inside += 1,
                Sign::Negative => outside += 1,
                Sign::Zero => on_circle.push(l),
            }
        }
        on_circle.sort_unstable();
        seen.insert(circle.clone(), circles.len());
        circles.push(DistinctCircle {
            circle,
            on_circle,
            inside,
            outside,
            qualifies: inside < n && outside < n,
        });
    }
    Ok(DegenerateCensus { n, circles })
}

pub fn count_point_splitting_degenerate(s: &PointSet) -> Result<usize> {
    Ok(degenerate_census(s)?.point_splitting())
}

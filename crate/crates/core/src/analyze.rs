//! Necessary conditions, incidence matrices and simplicial complexes.
//!
//! [`screen`] checks four necessary conditions for a square-free polynomial
//! to be the interpolating polynomial of a labeled event tree. The matrix and
//! complex views encode the atomic monomials; [`saturation_test`] reads the
//! tree shape back off the complex when all labels are distinct.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::ideal::{minimal_primes, IdealBasis, PrimeComponent};
use crate::poly::{Indeterminate, Monomial, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnalyzeError {
    UnknownVariable(Indeterminate),
}

impl fmt::Display for AnalyzeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnalyzeError::UnknownVariable(x) => write!(f, "`{x}` is not a row of the matrix"),
        }
    }
}

impl core::error::Error for AnalyzeError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionResult {
    pub name: &'static str,
    pub holds: bool,
    /// Human-readable reasons for a failure; empty when the condition holds.
    pub diagnostics: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScreenReport {
    /// Number of monomials.
    pub n: usize,
    /// Number of variables.
    pub d: usize,
    pub degree: u32,
    pub conditions: [ConditionResult; 4],
}

impl ScreenReport {
    pub fn passes(&self) -> bool {
        self.conditions.iter().all(|c| c.holds)
    }
}

fn condition(name: &'static str, diagnostics: Vec<String>) -> ConditionResult {
    ConditionResult {
        name,
        holds: diagnostics.is_empty(),
        diagnostics,
    }
}

/// Evaluate the four necessary conditions on the support of `f`.
///
/// The constant `1` (the single-vertex tree) passes trivially.
pub fn screen(f: &Polynomial) -> ScreenReport {
    let support = f.support();
    let n = support.len();
    let d = f.variables().len();
    let degree = f.degree();
    let is_one = f.is_one();

    let mut size = Vec::new();
    if !is_one {
        if n < 2 {
            size.push(format!("n = {n} < 2"));
        }
        if d < 2 {
            size.push(format!("d = {d} < 2"));
        }
        if n >= 1 && d + 2 > 2 * n {
            size.push(format!("d = {d} > 2n - 2 = {}", (2 * n).saturating_sub(2)));
        }
        if d as u64 <= degree as u64 {
            size.push(format!("d = {d} <= deg(c) = {degree}"));
        }
    }

    let frequency = if is_one {
        Vec::new()
    } else {
        root_frequency(&support)
    };

    let mut partners = Vec::new();
    if !is_one {
        for m in support.iter().filter(|m| m.degree() == degree) {
            let ok = support
                .iter()
                .any(|o| o != m && o.degree() == degree && m.gcd(o).degree() + 1 == degree);
            if !ok {
                partners.push(format!(
                    "`{m}` has no partner sharing {} labels",
                    degree.saturating_sub(1)
                ));
            }
        }
    }

    let mut antichain = Vec::new();
    for a in &support {
        for b in &support {
            if a != b && a.divides(b) {
                antichain.push(format!("`{b}` is a proper multiple of `{a}`"));
            }
        }
    }

    ScreenReport {
        n,
        d,
        degree,
        conditions: [
            condition("size", size),
            condition("root-frequency", frequency),
            condition("max-degree-pair", partners),
            condition("antichain", antichain),
        ],
    }
}

/// Some minimal prime (candidate root floret) has every label `x` occurring
/// in at least as many monomials as the largest degree among them.
fn root_frequency(support: &[Monomial]) -> Vec<String> {
    let basis = IdealBasis::interreduce(support.iter().cloned());
    let primes = match minimal_primes(&basis) {
        Ok(p) => p,
        Err(e) => return alloc::vec![format!("no candidate root labels: {e}")],
    };
    let short = |x: &Indeterminate| -> Option<(usize, u32)> {
        let with_x: Vec<&Monomial> = support.iter().filter(|m| m.contains(x)).collect();
        let max = with_x.iter().map(|m| m.degree()).max().unwrap_or(0);
        ((with_x.len() as u64) < max as u64).then_some((with_x.len(), max))
    };
    if primes
        .iter()
        .any(|p| p.vars().iter().all(|x| short(x).is_none()))
    {
        return Vec::new();
    }
    let mut out = Vec::new();
    for p in &primes {
        for x in p.vars() {
            if let Some((freq, max)) = short(x) {
                out.push(format!(
                    "in root candidate {p}, `{x}` occurs {freq} times but reaches degree {max}"
                ));
            }
        }
    }
    out
}

/// Variable-by-monomial exponent matrix. Rows are sorted by name, columns
/// by degree then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceMatrix {
    rows: Vec<Indeterminate>,
    cols: Vec<Monomial>,
    entries: Vec<Vec<u32>>,
}

impl IncidenceMatrix {
    pub fn from_monomials<I: IntoIterator<Item = Monomial>>(monomials: I) -> Self {
        let cols: Vec<Monomial> = monomials
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let rows: Vec<Indeterminate> = cols
            .iter()
            .flat_map(|m| m.vars().cloned())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let entries = rows
            .iter()
            .map(|x| cols.iter().map(|m| m.exponent(x)).collect())
            .collect();
        IncidenceMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> &[Indeterminate] {
        &self.rows
    }

    pub fn cols(&self) -> &[Monomial] {
        &self.cols
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Vec<u32>] {
        &self.entries
    }

    pub fn get(&self, x: &Indeterminate, m: &Monomial) -> Option<u32> {
        let i = self.rows.binary_search(x).ok()?;
        let j = self.cols.binary_search(m).ok()?;
        Some(self.entries[i][j])
    }

    pub fn row_sums(&self) -> Vec<u32> {
        self.entries.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<u32> {
        (0..self.cols.len())
            .map(|j| self.entries.iter().map(|r| r[j]).sum())
            .collect()
    }
}

pub fn incidence_matrix(f: &Polynomial) -> IncidenceMatrix {
    IncidenceMatrix::from_monomials(f.support())
}

/// Matrix of the subtree past an edge labeled `x`.
///
/// Keeps the columns where `x` occurs, then drops row `x`, rows that vanish
/// on every kept column, and rows that occur in every kept column (labels
/// above the edge).
pub fn subtree_submatrix(
    m: &IncidenceMatrix,
    x: &Indeterminate,
) -> Result<IncidenceMatrix, AnalyzeError> {
    let i = m
        .rows
        .binary_search(x)
        .map_err(|_| AnalyzeError::UnknownVariable(x.clone()))?;
    let kept: Vec<usize> = (0..m.cols.len()).filter(|&j| m.entries[i][j] > 0).collect();
    let keep_row = |r: usize| {
        r != i
            && kept.iter().any(|&j| m.entries[r][j] > 0)
            && !kept.iter().all(|&j| m.entries[r][j] > 0)
    };
    let rows: Vec<usize> = (0..m.rows.len()).filter(|&r| keep_row(r)).collect();
    let columns = kept.iter().map(|&j| {
        Monomial::from_powers(
            rows.iter()
                .filter(|&&r| m.entries[r][j] > 0)
                .map(|&r| (m.rows[r].clone(), m.entries[r][j])),
        )
    });
    Ok(IncidenceMatrix::from_monomials(columns))
}

/// Abstract simplicial complex given by its facets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    facets: Vec<BTreeSet<Indeterminate>>,
}

impl SimplicialComplex {
    /// Facets are the inclusion-maximal sets among those given.
    pub fn from_facets<I: IntoIterator<Item = BTreeSet<Indeterminate>>>(sets: I) -> Self {
        let mut all: Vec<BTreeSet<Indeterminate>> = sets.into_iter().collect();
        all.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        all.dedup();
        let mut facets: Vec<BTreeSet<Indeterminate>> = Vec::with_capacity(all.len());
        for s in all {
            if !facets.iter().any(|f| s.is_subset(f)) {
                facets.push(s);
            }
        }
        facets.sort();
        SimplicialComplex { facets }
    }

    pub fn facets(&self) -> &[BTreeSet<Indeterminate>] {
        &self.facets
    }

    pub fn vertices(&self) -> BTreeSet<Indeterminate> {
        self.facets.iter().flatten().cloned().collect()
    }

    /// Number of facets containing each vertex.
    pub fn degrees(&self) -> BTreeMap<Indeterminate, usize> {
        let mut deg = BTreeMap::new();
        for x in self.facets.iter().flatten() {
            *deg.entry(x.clone()).or_insert(0) += 1;
        }
        deg
    }

    /// Pairs of vertices sharing a facet, each pair once with `a < b`.
    pub fn edges(&self) -> BTreeSet<(Indeterminate, Indeterminate)> {
        let mut out = BTreeSet::new();
        for f in &self.facets {
            let v: Vec<&Indeterminate> = f.iter().collect();
            for (k, a) in v.iter().enumerate() {
                for b in &v[k + 1..] {
                    out.insert(((*a).clone(), (*b).clone()));
                }
            }
        }
        out
    }

    /// Connected components of the facet-sharing graph, each given by the
    /// indices of its facets. An empty facet forms its own component.
    fn components(&self) -> Vec<Vec<usize>> {
        let vertices: Vec<Indeterminate> = self.vertices().into_iter().collect();
        let index = |x: &Indeterminate| vertices.binary_search(x).expect("vertex of the complex");
        let mut parent: Vec<usize> = (0..vertices.len()).collect();
        fn find(parent: &mut [usize], mut a: usize) -> usize {
            while parent[a] != a {
                parent[a] = parent[parent[a]];
                a = parent[a];
            }
            a
        }
        for f in &self.facets {
            let mut it = f.iter().map(index);
            if let Some(first) = it.next() {
                for other in it {
                    let (ra, rb) = (find(&mut parent, first), find(&mut parent, other));
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
        let mut groups: BTreeMap<Option<usize>, Vec<usize>> = BTreeMap::new();
        for (k, f) in self.facets.iter().enumerate() {
            let key = f.iter().next().map(|x| find(&mut parent, index(x)));
            groups.entry(key).or_default().push(k);
        }
        groups.into_values().collect()
    }
}

/// Facets are the supports of the monomials of `f`.
pub fn simplicial_complex(f: &Polynomial) -> SimplicialComplex {
    SimplicialComplex::from_facets(f.support().iter().map(|m| m.vars().cloned().collect()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub vertices: BTreeSet<Indeterminate>,
    /// The unique vertex of strictly largest degree, if there is one.
    pub max_degree_vertex: Option<Indeterminate>,
    /// Whether `max_degree_vertex` lies in every facet of the component.
    pub covers_all_facets: bool,
    pub facets: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SaturationReport {
    pub saturated: bool,
    pub components: Vec<Component>,
}

/// Decide whether the complex comes from a saturated tree.
///
/// The complex must split into at least two connected components, each with
/// a strict maximum-degree vertex lying in all its facets; removing that
/// vertex must leave a complex passing the same test, or the empty facet.
pub fn saturation_test(sc: &SimplicialComplex) -> SaturationReport {
    if sc.facets.len() == 1 && sc.facets[0].is_empty() {
        return SaturationReport {
            saturated: true,
            components: Vec::new(),
        };
    }
    let groups = sc.components();
    let mut saturated = groups.len() >= 2;
    let mut components = Vec::with_capacity(groups.len());
    for group in groups {
        let part: Vec<&BTreeSet<Indeterminate>> = group.iter().map(|&k| &sc.facets[k]).collect();
        let component = describe(&part);
        if component.covers_all_facets {
            let x = component
                .max_degree_vertex
                .as_ref()
                .expect("covering vertex");
            let below = SimplicialComplex::from_facets(part.iter().map(|f| {
                let mut f = (*f).clone();
                f.remove(x);
                f
            }));
            saturated &= below.facets.len() == part.len() && saturation_test(&below).saturated;
        } else {
            saturated = false;
        }
        components.push(component);
    }
    SaturationReport {
        saturated,
        components,
    }
}

/// Facets split by the labels of one candidate root floret.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSplit {
    pub root: PrimeComponent,
    /// One part per root label, in label order.
    pub parts: Vec<Component>,
}

/// For every minimal prime of the facets whose labels split the facets into
/// disjoint parts, the sub-complexes `G_1 ⊕ ... ⊕ G_k` of those parts.
///
/// Unlike [`saturation_test`], parts may share vertices other than the root
/// labels, so this also describes trees that are not saturated.
pub fn root_splits(sc: &SimplicialComplex) -> Vec<RootSplit> {
    let gens: Vec<Monomial> = sc
        .facets
        .iter()
        .map(|f| Monomial::from_vars(f.iter().cloned()).expect("facet has distinct vertices"))
        .collect();
    let Ok(primes) = minimal_primes(&IdealBasis::interreduce(gens)) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for root in primes.into_iter().filter(|p| p.len() >= 2) {
        let groups: Vec<Vec<&BTreeSet<Indeterminate>>> = root
            .vars()
            .iter()
            .map(|x| sc.facets.iter().filter(|f| f.contains(x)).collect())
            .collect();
        if groups.iter().map(Vec::len).sum::<usize>() != sc.facets.len() {
            continue;
        }
        let parts = groups.into_iter().map(|part| describe(&part)).collect();
        out.push(RootSplit { root, parts });
    }
    out
}

fn describe(part: &[&BTreeSet<Indeterminate>]) -> Component {
    let sub = SimplicialComplex {
        facets: part.iter().map(|f| (*f).clone()).collect(),
    };
    let degrees = sub.degrees();
    let max = degrees.values().copied().max().unwrap_or(0);
    let mut top = degrees.iter().filter(|(_, &d)| d == max).map(|(x, _)| x);
    let max_degree_vertex = match (top.next(), top.next()) {
        (Some(x), None) => Some(x.clone()),
        _ => None,
    };
    let covers_all_facets = max_degree_vertex
        .as_ref()
        .is_some_and(|x| part.iter().all(|f| f.contains(x)));
    Component {
        vertices: sub.vertices(),
        max_degree_vertex,
        covers_all_facets,
        facets: part.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;
    use crate::tree::EventTree;
    use alloc::string::ToString;

    const EQ5: &str = "t1*f1 + t1*f2 + t1*f3 + t2*f1 + t2*f2*s1 + t2*f2*s2 + t2*f2*s3 + t2*f3";
    const COUNTER: &str = "t1*f1 + t1*f2 + t2*t3*t4 + t2*t3*f1 + t2*t4*f2";

    fn p(text: &str) -> Polynomial {
        parse_polynomial(text).unwrap()
    }

    fn v(name: &str) -> Indeterminate {
        Indeterminate::new(name).unwrap()
    }

    #[test]
    fn screen_examples() {
        assert!(screen(&p(EQ5)).passes());
        let r = screen(&p(COUNTER));
        assert!(r.passes(), "{r:?}");
        assert_eq!((r.n, r.d, r.degree), (5, 6, 3));
        let r = screen(&p("x + x*y"));
        assert!(!r.conditions[3].holds);
        assert_eq!(r.conditions[3].diagnostics.len(), 1);
        assert!(screen(&p("1")).passes());
        let r = screen(&p("x*y*z"));
        assert!(!r.conditions[0].holds);
        assert!(!r.conditions[2].holds);
    }

    #[test]
    fn screen_root_frequency_failure() {
        // Root candidates {a,b}: a reaches degree 3 in only two monomials.
        let r = screen(&p("a*x*y + a*z*w + b*u + b*q"));
        assert!(!r.conditions[1].holds);
    }

    #[test]
    fn incidence_matrix_of_running_example() {
        let m = incidence_matrix(&p(EQ5));
        let rows: Vec<&str> = m.rows().iter().map(|x| x.name()).collect();
        assert_eq!(rows, ["f1", "f2", "f3", "s1", "s2", "s3", "t1", "t2"]);
        let cols: Vec<String> = m.cols().iter().map(|c| c.to_string()).collect();
        assert_eq!(
            cols,
            ["f1*t1", "f1*t2", "f2*t1", "f3*t1", "f3*t2", "f2*s1*t2", "f2*s2*t2", "f2*s3*t2"]
        );
        assert_eq!(m.row_sums(), [2, 4, 2, 1, 1, 1, 3, 5]);
        assert_eq!(m.col_sums(), [2, 2, 2, 2, 2, 3, 3, 3]);
        let one = incidence_matrix(&Polynomial::one());
        assert_eq!((one.rows().len(), one.cols().len()), (0, 1));
    }

    #[test]
    fn submatrices() {
        let m = incidence_matrix(&p(EQ5));
        let t1 = subtree_submatrix(&m, &v("t1")).unwrap();
        assert_eq!(t1, incidence_matrix(&p("f1 + f2 + f3")));
        let t2 = subtree_submatrix(&m, &v("t2")).unwrap();
        assert_eq!(t2, incidence_matrix(&p("f1 + f2*s1 + f2*s2 + f2*s3 + f3")));
        assert_eq!(t2.cols().len(), 5);
        let s1 = subtree_submatrix(&m, &v("s1")).unwrap();
        assert_eq!((s1.rows().len(), s1.cols().len()), (0, 1));
        assert_eq!(
            subtree_submatrix(&m, &v("zz")),
            Err(AnalyzeError::UnknownVariable(v("zz")))
        );
    }

    #[test]
    fn complexes() {
        let sc = simplicial_complex(&p("t1*f1 + t1*f2 + t2*f3 + t2*f4*s1 + t2*f4*s2"));
        let r = saturation_test(&sc);
        assert!(r.saturated);
        assert_eq!(r.components.len(), 2);
        assert_eq!(r.components[0].max_degree_vertex, Some(v("t1")));
        assert_eq!(r.components[1].max_degree_vertex, Some(v("t2")));

        let r = saturation_test(&simplicial_complex(&p("x*y*z")));
        assert!(!r.saturated);
        assert_eq!(r.components.len(), 1);

        let running = saturation_test(&simplicial_complex(&p(EQ5)));
        assert!(!running.saturated);
        assert_eq!(running.components.len(), 1);
        assert!(saturation_test(&simplicial_complex(&Polynomial::one())).saturated);
        assert!(!saturation_test(&simplicial_complex(&p("x + x*y + z"))).saturated);
    }

    #[test]
    fn running_example_splits_like_its_root_florets() {
        let splits = root_splits(&simplicial_complex(&p(EQ5)));
        let roots: Vec<String> = splits.iter().map(|s| s.root.to_string()).collect();
        assert_eq!(roots, ["<t1, t2>", "<f1, f2, f3>"]);
        let by_theta = &splits[0].parts;
        assert_eq!(by_theta[0].max_degree_vertex, Some(v("t1")));
        assert_eq!(by_theta[0].vertices.len(), 4);
        assert_eq!(by_theta[1].max_degree_vertex, Some(v("t2")));
        assert_eq!(by_theta[1].vertices.len(), 7);
        assert!(by_theta.iter().all(|c| c.covers_all_facets));
        assert!(root_splits(&simplicial_complex(&p("x*y*z"))).is_empty());
    }

    #[test]
    fn saturation_matches_tree_on_examples() {
        for text in [
            "a*(c + d) + b",
            "a*(c + d) + b*(c + d)",
            "a + b + c",
            "a*(b + c*(d + e)) + f",
        ] {
            let t: EventTree = text.parse().unwrap();
            let sc = simplicial_complex(&t.interpolating_polynomial());
            assert_eq!(saturation_test(&sc).saturated, t.is_saturated(), "{text}");
        }
    }
}

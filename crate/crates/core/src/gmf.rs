//! Generalized matrix polynomials `ζ_γ(x) = d_γ(xI − L_q(T))` of trees.
//!
//! Two evaluators compute the same polynomial:
//!
//! - [`gmf_poly_bruteforce`] sums `Γ_γ(ψ) Π (xI − L)_{i,ψ(i)}` over all `n!`
//!   permutations. Only usable for small `n`; it is the reference oracle.
//! - [`gmf_poly_matching`] uses that the off-diagonal support of a tree
//!   matrix admits no cycle of length `≥ 3`, so only products of disjoint
//!   edge transpositions survive:
//!
//!   `ζ_γ(x) = Σ_M Γ_γ(|M|) q^{2|M|} Π_{v ∉ M} (x − 1 − q²(d_v − 1))`.
//!
//! The coefficient polynomials `a_{i,r}(T, q)` are read off the monomial
//! GMF at `λ = 2^i,1^{n−2i}`, whose coefficient of `(−1)^r x^{n−r}` is
//! `2^i a_{i,r}`.

use std::collections::BTreeMap;

use num::bigint::BigInt;
use num::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gts::GtsPair;
use crate::partition::Partition;
use crate::qpoly::{QPoly, XQPoly};
use crate::rational::{binomial, int, Rational};
use crate::symfunc::{alpha_vector, inverse_frobenius, Basis, ClassFunction, PowerExpansion, SymFunctions};
use crate::tree::{matchings, CanonicalTree, LabeledTree};

/// Default cap on `n` for the factorial-time oracle.
pub const DEFAULT_BRUTE_LIMIT: usize = 9;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GammaDescriptor {
    Basis { basis: Basis, lambda: Partition },
    Raw,
}

/// A symmetric function together with how it was specified.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Gamma {
    pub descriptor: GammaDescriptor,
    pub expansion: PowerExpansion,
}

impl Gamma {
    pub fn basis(sf: &SymFunctions, basis: Basis, lambda: &Partition) -> Result<Self> {
        Ok(Gamma {
            descriptor: GammaDescriptor::Basis {
                basis,
                lambda: lambda.clone(),
            },
            expansion: sf.power_expansion(basis, lambda)?,
        })
    }

    /// Builds the degree tables just for this element.
    pub fn of(basis: Basis, lambda: &Partition) -> Self {
        Gamma::basis(&SymFunctions::new(lambda.n()), basis, lambda).expect("degree matches")
    }

    pub fn raw(expansion: PowerExpansion) -> Self {
        Gamma {
            descriptor: GammaDescriptor::Raw,
            expansion,
        }
    }

    pub fn n(&self) -> usize {
        self.expansion.n()
    }

    pub fn basis_tag(&self) -> Option<Basis> {
        match &self.descriptor {
            GammaDescriptor::Basis { basis, .. } => Some(*basis),
            GammaDescriptor::Raw => None,
        }
    }

    pub fn lambda(&self) -> Option<&Partition> {
        match &self.descriptor {
            GammaDescriptor::Basis { lambda, .. } => Some(lambda),
            GammaDescriptor::Raw => None,
        }
    }

    /// `Γ_γ(j)` for `j = 0..=⌊n/2⌋`.
    pub fn involution_values(&self) -> Vec<Rational> {
        inverse_frobenius(&self.expansion).involution_values()
    }

    pub fn label(&self) -> String {
        match &self.descriptor {
            GammaDescriptor::Basis { basis, lambda } => format!("{basis}_{{{lambda}}}"),
            GammaDescriptor::Raw => "raw".into(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GmfPolynomial {
    pub tree: CanonicalTree,
    pub gamma: GammaDescriptor,
    pub poly: XQPoly,
}

impl Serialize for GmfPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Json<'a> {
            tree: &'a CanonicalTree,
            basis: Option<Basis>,
            lambda: Option<&'a Partition>,
            #[serde(flatten)]
            poly: &'a XQPoly,
        }
        let (basis, lambda) = match &self.gamma {
            GammaDescriptor::Basis { basis, lambda } => (Some(*basis), Some(lambda)),
            GammaDescriptor::Raw => (None, None),
        };
        Json {
            tree: &self.tree,
            basis,
            lambda,
            poly: &self.poly,
        }
        .serialize(s)
    }
}

fn check_degree(t: &LabeledTree, gamma: &Gamma) -> Result<()> {
    if t.n() != gamma.n() {
        return Err(Error::DegreeMismatch {
            expected: t.n(),
            got: gamma.n(),
        });
    }
    Ok(())
}

/// Raw polynomial in `x`: `coeffs[k]` multiplies `x^k`.
type XPoly = Vec<QPoly>;

fn xpoly_mul(a: &XPoly, b: &XPoly) -> XPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![QPoly::zero(); a.len() + b.len() - 1];
    for (i, p) in a.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        for (j, r) in b.iter().enumerate() {
            if !r.is_zero() {
                out[i + j] = &out[i + j] + &(p * r);
            }
        }
    }
    out
}

fn xpoly_add_scaled(acc: &mut XPoly, p: &XPoly, c: &Rational) {
    if c.is_zero() {
        return;
    }
    if acc.len() < p.len() {
        acc.resize(p.len(), QPoly::zero());
    }
    for (k, coeff) in p.iter().enumerate() {
        acc[k] = &acc[k] + &coeff.scale(c);
    }
}

/// `x − w_v(q)`.
fn diagonal_factor(t: &LabeledTree, v: usize) -> XPoly {
    vec![-t.vertex_weight(v), QPoly::one()]
}

/// `Σ_{ψ of cycle type μ} Π_i (xI − L_q)_{i,ψ(i)}` for every `μ`, by walking
/// all `n!` permutations.
#[derive(Clone, Debug)]
pub struct PermutationClassSums {
    n: usize,
    sums: BTreeMap<Partition, XPoly>,
}

impl PermutationClassSums {
    pub fn new(t: &LabeledTree, limit: usize) -> Result<Self> {
        let n = t.n();
        if n > limit {
            return Err(Error::TooLarge { n, limit });
        }
        // entry[i][j] of xI - L_q
        let entry: Vec<Vec<XPoly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            diagonal_factor(t, i)
                        } else if t.is_edge(i, j) {
                            vec![QPoly::q()]
                        } else {
                            Vec::new()
                        }
                    })
                    .collect()
            })
            .collect();
        let mut sums: BTreeMap<Partition, XPoly> = BTreeMap::new();
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            let mut product: XPoly = vec![QPoly::one()];
            for (i, &j) in perm.iter().enumerate() {
                if entry[i][j].is_empty() {
                    product.clear();
                    break;
                }
                product = xpoly_mul(&product, &entry[i][j]);
            }
            if !product.is_empty() {
                let acc = sums.entry(cycle_type(&perm)).or_default();
                xpoly_add_scaled(acc, &product, &Rational::one());
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        Ok(PermutationClassSums { n, sums })
    }

    pub fn apply(&self, gamma: &ClassFunction) -> Result<XQPoly> {
        let mut acc: XPoly = Vec::new();
        for (mu, s) in &self.sums {
            xpoly_add_scaled(&mut acc, s, &gamma.at(mu));
        }
        XQPoly::from_raw(self.n, &acc)
    }
}

fn cycle_type(perm: &[usize]) -> Partition {
    let mut seen = vec![false; perm.len()];
    let mut parts = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut v = start;
        while !seen[v] {
            seen[v] = true;
            v = perm[v];
            len += 1;
        }
        parts.push(len);
    }
    Partition::new(parts).expect("nonempty permutation")
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("pivot exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// `ζ_γ` by the permutation sum, refusing `n > 9`.
pub fn gmf_poly_bruteforce(t: &LabeledTree, gamma: &Gamma) -> Result<GmfPolynomial> {
    gmf_poly_bruteforce_with_limit(t, gamma, DEFAULT_BRUTE_LIMIT)
}

pub fn gmf_poly_bruteforce_with_limit(
    t: &LabeledTree,
    gamma: &Gamma,
    limit: usize,
) -> Result<GmfPolynomial> {
    check_degree(t, gamma)?;
    let sums = PermutationClassSums::new(t, limit)?;
    Ok(GmfPolynomial {
        tree: t.canonical(),
        gamma: gamma.descriptor.clone(),
        poly: sums.apply(&inverse_frobenius(&gamma.expansion))?,
    })
}

/// Per-tree matching sums `Z_j(x) = Σ_{|M| = j} q^{2j} Π_{v ∉ M}(x − w_v)`, so
/// that `ζ_γ = Σ_j Γ_γ(j) Z_j`.
#[derive(Clone, Debug)]
pub struct MatchingExpansion {
    n: usize,
    by_size: Vec<XPoly>,
}

impl MatchingExpansion {
    pub fn new(t: &LabeledTree) -> Self {
        let n = t.n();
        let mut by_size: Vec<XPoly> = vec![Vec::new(); n / 2 + 1];
        for m in matchings(t) {
            let j = m.len();
            let mut product: XPoly = vec![QPoly::monomial(int(1), 2 * j)];
            for v in (0..n).filter(|&v| !m.covers(v)) {
                product = xpoly_mul(&product, &diagonal_factor(t, v));
            }
            xpoly_add_scaled(&mut by_size[j], &product, &Rational::one());
        }
        MatchingExpansion { n, by_size }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `Σ_j Γ(j) Z_j` from the involution values `Γ(0..=⌊n/2⌋)`.
    pub fn evaluate(&self, involution_values: &[Rational]) -> XQPoly {
        let mut acc: XPoly = Vec::new();
        for (z, g) in self.by_size.iter().zip(involution_values) {
            xpoly_add_scaled(&mut acc, z, g);
        }
        XQPoly::from_raw(self.n, &acc).expect("degree at most n")
    }
}

/// `ζ_γ` by the matching expansion.
pub fn gmf_poly_matching(t: &LabeledTree, gamma: &Gamma) -> Result<GmfPolynomial> {
    check_degree(t, gamma)?;
    Ok(GmfPolynomial {
        tree: t.canonical(),
        gamma: gamma.descriptor.clone(),
        poly: MatchingExpansion::new(t).evaluate(&gamma.involution_values()),
    })
}

/// The table `a_{i,r}(T, q)` for `0 ≤ i ≤ ⌊n/2⌋`, `0 ≤ r ≤ n`.
#[derive(Clone, Debug)]
pub struct AirTable {
    pub tree: CanonicalTree,
    values: Vec<Vec<QPoly>>,
}

impl AirTable {
    pub fn new(t: &LabeledTree, sf: &SymFunctions) -> Result<Self> {
        Self::with_expansion(t, sf, &MatchingExpansion::new(t))
    }

    pub fn with_expansion(t: &LabeledTree, sf: &SymFunctions, me: &MatchingExpansion) -> Result<Self> {
        let n = t.n();
        if sf.n() != n {
            return Err(Error::DegreeMismatch {
                expected: n,
                got: sf.n(),
            });
        }
        let mut values = Vec::with_capacity(n / 2 + 1);
        for i in 0..=n / 2 {
            let lambda = Partition::involution(n, i)?;
            let gamma = Gamma::basis(sf, Basis::M, &lambda)?;
            let zeta = me.evaluate(&gamma.involution_values());
            let inv = Rational::new(BigInt::one(), BigInt::one() << i);
            values.push(zeta.coeff_by_r().iter().map(|c| c.scale(&inv)).collect());
        }
        Ok(AirTable {
            tree: t.canonical(),
            values,
        })
    }

    pub fn n(&self) -> usize {
        self.tree.n()
    }

    pub fn get(&self, i: usize, r: usize) -> &QPoly {
        &self.values[i][r]
    }

    /// `(i, r, a_{i,r})` row-major.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &QPoly)> {
        self.values
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().map(move |(r, a)| (i, r, a)))
    }

    /// `a_i(T, q) = a_{i,n}(T, q)`.
    pub fn a_full(&self, i: usize) -> &QPoly {
        &self.values[i][self.n()]
    }
}

impl Serialize for AirTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            i: usize,
            r: usize,
            value: &'a QPoly,
        }
        #[derive(Serialize)]
        struct Json<'a> {
            tree: &'a CanonicalTree,
            n: usize,
            entries: Vec<Entry<'a>>,
        }
        Json {
            tree: &self.tree,
            n: self.n(),
            entries: self.entries().map(|(i, r, value)| Entry { i, r, value }).collect(),
        }
        .serialize(s)
    }
}

pub fn air_table(t: &LabeledTree) -> Result<AirTable> {
    AirTable::new(t, &SymFunctions::new(t.n()))
}

/// Recombines `Σ_{i ≤ ⌊r/2⌋} α_i(γ) a_{i,r}` for every `r`.
pub fn coefficients_from_air(table: &AirTable, alphas: &[Rational]) -> Vec<QPoly> {
    (0..=table.n())
        .map(|r| {
            (0..=r / 2)
                .filter(|&i| i < alphas.len())
                .fold(QPoly::zero(), |acc, i| &acc + &table.get(i, r).scale(&alphas[i]))
        })
        .collect()
}

/// Whether every coefficient of `ζ_γ` equals the `α`-weighted sum of the
/// `a_{i,r}` table.
pub fn verify_coeff_formula(t: &LabeledTree, gamma: &Gamma) -> Result<bool> {
    let zeta = gmf_poly_matching(t, gamma)?;
    let table = air_table(t)?;
    let expected = coefficients_from_air(&table, &alpha_vector(&gamma.expansion));
    Ok(zeta.poly.coeff_by_r() == expected.as_slice())
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MonotoneMode {
    /// `c^{T₁} − c^{T₂}`.
    Signed,
    /// Coefficient-wise absolute values before differencing.
    Absolute,
}

impl std::str::FromStr for MonotoneMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "signed" => Ok(MonotoneMode::Signed),
            "absolute" | "abs" => Ok(MonotoneMode::Absolute),
            other => Err(Error::Parse(format!("unknown mode {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RCheck {
    pub r: usize,
    pub difference: QPoly,
    pub pass: bool,
}

/// Per-`r` differences for `lower` minus `upper`.
pub fn monotone_checks(lower: &XQPoly, upper: &XQPoly, mode: MonotoneMode) -> Vec<RCheck> {
    lower
        .coeff_by_r()
        .iter()
        .zip(upper.coeff_by_r())
        .enumerate()
        .map(|(r, (a, b))| {
            let difference = match mode {
                MonotoneMode::Signed => a - b,
                MonotoneMode::Absolute => &a.abs_coeffs() - &b.abs_coeffs(),
            };
            let pass = difference.is_rplus_q2();
            RCheck { r, difference, pass }
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct MonotoneReport {
    pub pair: GtsPair,
    pub basis: Option<Basis>,
    pub lambda: Option<Partition>,
    pub mode: MonotoneMode,
    pub per_r: Vec<RCheck>,
    pub pass: bool,
}

impl MonotoneReport {
    pub fn new(pair: &GtsPair, gamma: &Gamma, mode: MonotoneMode, per_r: Vec<RCheck>) -> Self {
        let pass = per_r.iter().all(|c| c.pass);
        MonotoneReport {
            pair: pair.clone(),
            basis: gamma.basis_tag(),
            lambda: gamma.lambda().cloned(),
            mode,
            per_r,
            pass,
        }
    }
}

impl Serialize for MonotoneReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Json<'a> {
            pair: &'a GtsPair,
            basis: Option<Basis>,
            lambda: Option<&'a Partition>,
            mode: MonotoneMode,
            #[serde(rename = "perR")]
            per_r: &'a [RCheck],
            pass: bool,
        }
        Json {
            pair: &self.pair,
            basis: self.basis,
            lambda: self.lambda.as_ref(),
            mode: self.mode,
            per_r: &self.per_r,
            pass: self.pass,
        }
        .serialize(s)
    }
}

fn check_pair_degree(pair: &GtsPair, gamma: &Gamma) -> Result<()> {
    if pair.n() != gamma.n() {
        return Err(Error::DegreeMismatch {
            expected: pair.n(),
            got: gamma.n(),
        });
    }
    Ok(())
}

/// Checks that every coefficient difference along the pair lies in `ℝ⁺[q²]`.
pub fn verify_monotone(pair: &GtsPair, gamma: &Gamma, mode: MonotoneMode) -> Result<MonotoneReport> {
    check_pair_degree(pair, gamma)?;
    let lower = gmf_poly_matching(pair.lower_tree(), gamma)?;
    let upper = gmf_poly_matching(&pair.upper_tree(), gamma)?;
    let checks = monotone_checks(&lower.poly, &upper.poly, mode);
    Ok(MonotoneReport::new(pair, gamma, mode, checks))
}

#[derive(Clone, Debug, Serialize)]
pub struct Q1Check {
    pub r: usize,
    #[serde(with = "crate::rational::serde_rational")]
    pub difference: Rational,
    pub pass: bool,
}

/// `|c_r^{T₁}(1)| − |c_r^{T₂}(1)| ≥ 0` for every `r`.
pub fn q1_checks(lower: &XQPoly, upper: &XQPoly) -> Vec<Q1Check> {
    let one = int(1);
    lower
        .coeff_by_r()
        .iter()
        .zip(upper.coeff_by_r())
        .enumerate()
        .map(|(r, (a, b))| {
            let difference = a.eval(&one).abs() - b.eval(&one).abs();
            let pass = !difference.is_negative();
            Q1Check { r, difference, pass }
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct AirCheck {
    pub i: usize,
    pub r: usize,
    pub difference: QPoly,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AirReport {
    pub pair: GtsPair,
    pub entries: Vec<AirCheck>,
    pub pass: bool,
}

pub fn air_checks(lower: &AirTable, upper: &AirTable) -> Vec<AirCheck> {
    lower
        .entries()
        .map(|(i, r, a)| {
            let difference = a - upper.get(i, r);
            let pass = difference.is_rplus_q2();
            AirCheck { i, r, difference, pass }
        })
        .collect()
}

/// Checks `a_{i,r}(T₁) − a_{i,r}(T₂) ∈ ℝ⁺[q²]` for every `(i, r)`.
pub fn verify_air_monotone(pair: &GtsPair) -> Result<AirReport> {
    let sf = SymFunctions::new(pair.n());
    let lower = AirTable::new(pair.lower_tree(), &sf)?;
    let upper = AirTable::new(&pair.upper_tree(), &sf)?;
    let entries = air_checks(&lower, &upper);
    let pass = entries.iter().all(|c| c.pass);
    Ok(AirReport {
        pair: pair.clone(),
        entries,
        pass,
    })
}

/// `(-1)^{j-k} 2^k C(j, k)` for `k ≤ j`, else 0: the monomial class function
/// on involutions, used to cross-check extraction.
pub fn monomial_involution_value(k: usize, j: usize) -> Rational {
    if k > j {
        return Rational::zero();
    }
    let v = Rational::from_integer((BigInt::one() << k) * binomial(j, k));
    if (j - k) % 2 == 1 {
        -v
    } else {
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::enumerate_free_trees;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn qp(c: &[i64]) -> QPoly {
        QPoly::from_ints(c)
    }

    #[test]
    fn next_permutation_counts() {
        let mut perm: Vec<usize> = (0..5).collect();
        let mut count = 1;
        while next_permutation(&mut perm) {
            count += 1;
        }
        assert_eq!(count, 120);
        assert_eq!(cycle_type(&[1, 0, 2, 4, 3]), p("2,2,1"));
        assert_eq!(cycle_type(&[1, 2, 0]), p("3"));
    }

    #[test]
    fn determinant_of_path_three() {
        // Laplacian of P_3 has eigenvalues 0, 1, 3
        let t = LabeledTree::path(3);
        let gamma = Gamma::of(Basis::S, &p("1^3"));
        let z = gmf_poly_bruteforce(&t, &gamma).unwrap();
        let raw: Vec<Rational> = z.poly.eval_q_raw(&int(1));
        assert_eq!(raw, vec![int(0), int(3), int(-4), int(1)]);
        assert_eq!(gmf_poly_matching(&t, &gamma).unwrap(), z);
    }

    #[test]
    fn permanent_of_single_edge() {
        let t = LabeledTree::path(2);
        let gamma = Gamma::of(Basis::H, &p("2"));
        let z = gmf_poly_bruteforce(&t, &gamma).unwrap();
        // (x - 1)^2 + q^2
        assert_eq!(z.poly.to_raw(), vec![qp(&[1, 0, 1]), qp(&[-2]), qp(&[1])]);
        assert_eq!(z.poly.eval_x(&int(0)), qp(&[1, 0, 1]));
    }

    #[test]
    fn non_involution_monomial_vanishes() {
        for c in enumerate_free_trees(3) {
            let t = c.representative();
            let g = Gamma::of(Basis::M, &p("3"));
            assert!(gmf_poly_bruteforce(&t, &g).unwrap().poly.is_zero());
            assert!(gmf_poly_matching(&t, &g).unwrap().poly.is_zero());
        }
    }

    #[test]
    fn power_sum_on_edge() {
        let t = LabeledTree::path(2);
        let g = Gamma::of(Basis::P, &p("2"));
        let z = gmf_poly_matching(&t, &g).unwrap();
        assert_eq!(z.poly.to_raw(), vec![qp(&[0, 0, 2]), QPoly::zero(), QPoly::zero()]);
    }

    #[test]
    fn star_four_monomial_closed_form() {
        // M(0) = 0, M(1) = 2, so ζ = 2q² Σ_e Π_{v ∉ e}(x − w_v)
        let t = LabeledTree::star(4);
        let g = Gamma::of(Basis::M, &p("2,1,1"));
        let z = gmf_poly_matching(&t, &g).unwrap();
        // each edge leaves two leaves: (x − 1)²; three edges
        let expect = vec![qp(&[0, 0, 6]), qp(&[0, 0, -12]), qp(&[0, 0, 6]), QPoly::zero(), QPoly::zero()];
        assert_eq!(z.poly.to_raw(), expect);
    }

    #[test]
    fn degree_mismatch() {
        let t = LabeledTree::path(3);
        let g = Gamma::of(Basis::S, &p("2,2"));
        assert!(matches!(gmf_poly_matching(&t, &g), Err(Error::DegreeMismatch { .. })));
        assert!(gmf_poly_bruteforce(&t, &g).is_err());
        let big = LabeledTree::path(10);
        let g = Gamma::of(Basis::P, &Partition::ones(10));
        assert!(matches!(gmf_poly_bruteforce(&big, &g), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn air_examples() {
        let p3 = air_table(&LabeledTree::path(3)).unwrap();
        assert_eq!(p3.get(0, 1), &qp(&[3, 0, 1]));
        let p4 = air_table(&LabeledTree::path(4)).unwrap();
        let s4 = air_table(&LabeledTree::star(4)).unwrap();
        assert_eq!(p4.get(1, 2), &qp(&[0, 0, 3]));
        assert_eq!(s4.get(1, 2), &qp(&[0, 0, 3]));
        for table in [&p3, &p4, &s4] {
            for (i, r, a) in table.entries() {
                if 2 * i > r {
                    assert!(a.is_zero());
                }
            }
            // a_{0,n} is det L_q, which is 1 - q^2 on every tree
            assert_eq!(table.a_full(0), &qp(&[1, 0, -1]));
        }
    }

    #[test]
    fn coefficient_formula_small() {
        let sf = SymFunctions::new(5);
        for c in enumerate_free_trees(5) {
            let t = c.representative();
            for basis in Basis::ALL {
                for lambda in sf.partitions() {
                    let g = Gamma::basis(&sf, basis, lambda).unwrap();
                    assert!(verify_coeff_formula(&t, &g).unwrap());
                }
            }
        }
    }

    #[test]
    fn forgotten_coefficients() {
        // α_i(ω m_{2^k,1^{n-2k}}) = (-1)^k 2^i C(i, k)
        let sf = SymFunctions::new(6);
        for c in enumerate_free_trees(6) {
            let t = c.representative();
            let table = AirTable::new(&t, &sf).unwrap();
            for k in 0..=3 {
                let lambda = Partition::involution(6, k).unwrap();
                let z = gmf_poly_matching(&t, &Gamma::basis(&sf, Basis::F, &lambda).unwrap()).unwrap();
                let sign = if k % 2 == 1 { int(-1) } else { int(1) };
                for r in 0..=6 {
                    let expected = (k..=r / 2).fold(QPoly::zero(), |acc, i| {
                        let w = Rational::from_integer((BigInt::one() << i) * binomial(i, k));
                        &acc + &table.get(i, r).scale(&(&w * &sign))
                    });
                    assert_eq!(z.poly.c(r), &expected);
                }
            }
        }
    }

    #[test]
    fn path_star_monotone() {
        let pair = crate::gts::proper_gts_pairs(4).remove(0);
        let g = Gamma::of(Basis::M, &p("2,1,1"));
        let rep = verify_monotone(&pair, &g, MonotoneMode::Signed).unwrap();
        assert!(rep.pass);
        assert!(rep.per_r[2].difference.is_zero());

        let g = Gamma::of(Basis::S, &p("4"));
        assert!(verify_monotone(&pair, &g, MonotoneMode::Signed).unwrap().pass);

        let g = Gamma::of(Basis::F, &p("2,1,1"));
        assert!(verify_monotone(&pair, &g, MonotoneMode::Absolute).unwrap().pass);
        assert!(!verify_monotone(&pair, &g, MonotoneMode::Signed).unwrap().pass);

        let air = verify_air_monotone(&pair).unwrap();
        assert!(air.pass);

        let g = Gamma::of(Basis::M, &p("2,1"));
        assert!(verify_monotone(&pair, &g, MonotoneMode::Signed).is_err());
    }

    #[test]
    fn report_json_shape() {
        let pair = crate::gts::proper_gts_pairs(4).remove(0);
        let g = Gamma::of(Basis::M, &p("2,1,1"));
        let rep = verify_monotone(&pair, &g, MonotoneMode::Signed).unwrap();
        let v = serde_json::to_value(&rep).unwrap();
        assert_eq!(v["basis"], "m");
        assert_eq!(v["lambda"], serde_json::json!([2, 1, 1]));
        assert_eq!(v["perR"].as_array().unwrap().len(), 5);
        assert_eq!(v["pass"], true);
        assert!(v["pair"]["lower"].is_string());
    }

    #[test]
    fn monomial_involution_values() {
        assert_eq!(monomial_involution_value(2, 3), int(-12));
        assert_eq!(monomial_involution_value(0, 0), int(1));
        assert_eq!(monomial_involution_value(3, 1), int(0));
    }
}

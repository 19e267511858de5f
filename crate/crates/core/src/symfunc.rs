//! Symmetric functions of degree `n` in power-sum coordinates.
//!
//! Every basis element is expanded into the `p` basis over `ℚ`; the inverse
//! Frobenius image of `γ = Σ c_μ p_μ` is the class function `μ ↦ z_μ c_μ`.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num::bigint::BigInt;
use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{enumerate_partitions, Partition};
use crate::rational::{binomial, serde_rational, Rational};

/// The six classical bases of `Λ^n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    M,
    E,
    H,
    P,
    S,
    F,
}

impl Basis {
    pub const ALL: [Basis; 6] = [Basis::M, Basis::E, Basis::H, Basis::P, Basis::S, Basis::F];

    pub fn letter(self) -> char {
        match self {
            Basis::M => 'm',
            Basis::E => 'e',
            Basis::H => 'h',
            Basis::P => 'p',
            Basis::S => 's',
            Basis::F => 'f',
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "m" | "monomial" => Ok(Basis::M),
            "e" | "elementary" => Ok(Basis::E),
            "h" | "homogeneous" | "complete" => Ok(Basis::H),
            "p" | "power" | "powersum" => Ok(Basis::P),
            "s" | "schur" => Ok(Basis::S),
            "f" | "forgotten" => Ok(Basis::F),
            other => Err(Error::Parse(format!("unknown basis {other:?}"))),
        }
    }
}

/// A homogeneous symmetric function `Σ_μ c_μ p_μ`. Absent keys are zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PowerExpansion {
    n: usize,
    coords: BTreeMap<Partition, Rational>,
}

impl PowerExpansion {
    pub fn zero(n: usize) -> Self {
        PowerExpansion {
            n,
            coords: BTreeMap::new(),
        }
    }

    pub fn p(mu: &Partition) -> Self {
        let mut out = PowerExpansion::zero(mu.n());
        out.coords.insert(mu.clone(), Rational::one());
        out
    }

    /// Builds from explicit coordinates; every key must partition `n`.
    pub fn from_coords(
        n: usize,
        coords: impl IntoIterator<Item = (Partition, Rational)>,
    ) -> Result<Self> {
        let mut out = PowerExpansion::zero(n);
        for (mu, c) in coords {
            if mu.n() != n {
                return Err(Error::DegreeMismatch {
                    expected: n,
                    got: mu.n(),
                });
            }
            out.add_term(mu, c);
        }
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, mu: &Partition) -> Rational {
        self.coords.get(mu).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero coordinates in reverse-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Rational)> {
        self.coords.iter().rev()
    }

    fn add_term(&mut self, mu: Partition, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.coords.entry(mu) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = PowerExpansion::zero(self.n);
        if c.is_zero() {
            return out;
        }
        out.coords = self
            .coords
            .iter()
            .map(|(k, v)| (k.clone(), v * c))
            .collect();
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DegreeMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let mut out = self.clone();
        for (k, v) in &other.coords {
            out.add_term(k.clone(), v.clone());
        }
        Ok(out)
    }

    /// Product in `Λ`; degrees add.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = PowerExpansion::zero(self.n + other.n);
        for (a, x) in &self.coords {
            for (b, y) in &other.coords {
                out.add_term(a.union(b), x * y);
            }
        }
        out
    }

    /// The involution `ω`, which sends `p_μ` to `ε_μ p_μ`.
    pub fn omega(&self) -> Self {
        PowerExpansion {
            n: self.n,
            coords: self
                .coords
                .iter()
                .map(|(mu, c)| (mu.clone(), if mu.sign() < 0 { -c } else { c.clone() }))
                .collect(),
        }
    }
}

/// A class function of `S_n`, stored by cycle type. Every partition of `n`
/// is present as a key.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClassFunction {
    n: usize,
    values: BTreeMap<Partition, Rational>,
}

impl ClassFunction {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn at(&self, mu: &Partition) -> Rational {
        self.values.get(mu).cloned().unwrap_or_else(Rational::zero)
    }

    /// `Γ(j)`: the value on cycle type `2^j,1^{n-2j}`.
    pub fn at_involution(&self, j: usize) -> Result<Rational> {
        Ok(self.at(&Partition::involution(self.n, j)?))
    }

    /// `Γ(0), …, Γ(⌊n/2⌋)`.
    pub fn involution_values(&self) -> Vec<Rational> {
        (0..=self.n / 2)
            .map(|j| self.at_involution(j).expect("j in range"))
            .collect()
    }

    /// Values in reverse-lexicographic order of cycle type.
    pub fn values(&self) -> impl Iterator<Item = (&Partition, &Rational)> {
        self.values.iter().rev()
    }
}

/// Γ_γ = ch⁻¹(γ): `Γ(ν) = z_ν · [p_ν]γ`.
pub fn inverse_frobenius(gamma: &PowerExpansion) -> ClassFunction {
    let values = enumerate_partitions(gamma.n)
        .into_iter()
        .map(|nu| {
            let v = gamma.coeff(&nu) * Rational::from_integer(nu.z());
            (nu, v)
        })
        .collect();
    ClassFunction { n: gamma.n, values }
}

/// The binomial transform `α_i(γ) = Σ_{j ≤ i} C(i, j) Γ_γ(j)`.
pub fn alpha(gamma: &PowerExpansion, i: usize) -> Result<Rational> {
    let n = gamma.n;
    if i > n / 2 {
        return Err(Error::OutOfRange { index: i, max: n / 2 });
    }
    let mut acc = Rational::zero();
    for j in 0..=i {
        let nu = Partition::involution(n, j)?;
        let value = gamma.coeff(&nu) * Rational::from_integer(nu.z());
        acc += value * Rational::from_integer(binomial(i, j));
    }
    Ok(acc)
}

/// `α_0(γ), …, α_{⌊n/2⌋}(γ)`.
pub fn alpha_vector(gamma: &PowerExpansion) -> Vec<Rational> {
    (0..=gamma.n / 2)
        .map(|i| alpha(gamma, i).expect("i in range"))
        .collect()
}

/// `α_i` of every basis element of one basis, rows in partition order.
#[derive(Clone, Debug)]
pub struct AlphaTable {
    pub n: usize,
    pub basis: Basis,
    pub rows: Vec<(Partition, Vec<Rational>)>,
}

impl AlphaTable {
    pub fn new(sf: &SymFunctions, basis: Basis) -> Result<Self> {
        let rows = sf
            .partitions()
            .iter()
            .map(|lambda| Ok((lambda.clone(), alpha_vector(&sf.power_expansion(basis, lambda)?))))
            .collect::<Result<_>>()?;
        Ok(AlphaTable { n: sf.n(), basis, rows })
    }

    pub fn get(&self, lambda: &Partition, i: usize) -> Option<&Rational> {
        self.rows.iter().find(|(l, _)| l == lambda).and_then(|(_, a)| a.get(i))
    }
}

impl Serialize for AlphaTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Row<'a> {
            lambda: &'a Partition,
            alpha: Vec<crate::rational::RationalJson>,
        }
        #[derive(Serialize)]
        struct Json<'a> {
            n: usize,
            basis: Basis,
            rows: Vec<Row<'a>>,
        }
        Json {
            n: self.n,
            basis: self.basis,
            rows: self
                .rows
                .iter()
                .map(|(lambda, a)| Row {
                    lambda,
                    alpha: a.iter().map(Into::into).collect(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

/// Irreducible character `χ_λ` at cycle type `μ` by Murnaghan–Nakayama.
pub fn mn_character(lambda: &Partition, mu: &Partition) -> Result<BigInt> {
    if lambda.n() != mu.n() {
        return Err(Error::DegreeMismatch {
            expected: lambda.n(),
            got: mu.n(),
        });
    }
    let mut memo = HashMap::new();
    Ok(mn_rec(lambda.parts().to_vec(), mu.parts(), &mut memo))
}

fn mn_rec(
    lambda: Vec<usize>,
    mu: &[usize],
    memo: &mut HashMap<(Vec<usize>, usize), BigInt>,
) -> BigInt {
    let Some((&strip, rest)) = mu.split_first() else {
        return if lambda.is_empty() {
            BigInt::one()
        } else {
            BigInt::zero()
        };
    };
    let key = (lambda, mu.len());
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let lambda = &key.0;
    // Beta numbers β_i = λ_i + (l - 1 - i), strictly decreasing. Removing a
    // border strip of length `strip` moves one bead from β to β - strip.
    let l = lambda.len();
    let beta: Vec<usize> = lambda.iter().enumerate().map(|(i, &p)| p + (l - 1 - i)).collect();
    let mut total = BigInt::zero();
    for (idx, &b) in beta.iter().enumerate() {
        if b < strip || beta.contains(&(b - strip)) {
            continue;
        }
        let target = b - strip;
        let crossed = beta.iter().filter(|&&c| c > target && c < b).count();
        let mut next: Vec<usize> = beta.clone();
        next[idx] = target;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let shape: Vec<usize> = next
            .iter()
            .enumerate()
            .map(|(i, &c)| c - (l - 1 - i))
            .filter(|&p| p > 0)
            .collect();
        let sub = mn_rec(shape, rest, memo);
        if crossed % 2 == 0 {
            total += sub;
        } else {
            total -= sub;
        }
    }
    memo.insert(key, total.clone());
    total
}

/// Coefficient of `m_λ` in `p_μ`: the number of maps from the parts of `μ`
/// to the rows of `λ` whose fibres sum to the row lengths.
pub fn p_in_m_coefficient(mu: &Partition, lambda: &Partition) -> BigInt {
    fn go(
        parts: &[usize],
        caps: Vec<usize>,
        memo: &mut HashMap<(usize, Vec<usize>), BigInt>,
    ) -> BigInt {
        let Some((&s, rest)) = parts.split_first() else {
            return if caps.is_empty() {
                BigInt::one()
            } else {
                BigInt::zero()
            };
        };
        let key = (parts.len(), caps);
        if let Some(v) = memo.get(&key) {
            return v.clone();
        }
        let caps = &key.1;
        let mut total = BigInt::zero();
        let mut k = 0;
        while k < caps.len() {
            let c = caps[k];
            let run = caps[k..].iter().take_while(|&&x| x == c).count();
            if c >= s {
                let mut next = caps.clone();
                next.remove(k);
                if c > s {
                    let pos = next.iter().position(|&x| x < c - s).unwrap_or(next.len());
                    next.insert(pos, c - s);
                }
                total += BigInt::from(run) * go(rest, next, memo);
            }
            k += run;
        }
        memo.insert(key, total.clone());
        total
    }
    if mu.n() != lambda.n() {
        return BigInt::zero();
    }
    go(mu.parts(), lambda.parts().to_vec(), &mut HashMap::new())
}

/// `h_k = Σ_{μ ⊢ k} p_μ / z_μ`, or `e_k` with the extra sign `ε_μ`.
fn complete_or_elementary(k: usize, signed: bool) -> PowerExpansion {
    let mut out = PowerExpansion::zero(k);
    for mu in enumerate_partitions(k) {
        let mut c = Rational::new(BigInt::one(), mu.z());
        if signed && mu.sign() < 0 {
            c = -c;
        }
        out.add_term(mu, c);
    }
    out
}

/// Per-degree tables: partitions, and the lazily built monomial expansions.
///
/// The `m` basis is obtained by inverting the `p → m` transition matrix,
/// which is lower triangular when partitions are listed reverse-lexicographically.
#[derive(Debug)]
pub struct SymFunctions {
    n: usize,
    partitions: Vec<Partition>,
    index: HashMap<Partition, usize>,
    monomial: OnceLock<Vec<PowerExpansion>>,
}

impl SymFunctions {
    pub fn new(n: usize) -> Self {
        let partitions = enumerate_partitions(n);
        let index = partitions
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        SymFunctions {
            n,
            partitions,
            index,
            monomial: OnceLock::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    /// The transition matrix `R[μ][λ] = [m_λ] p_μ` in listing order.
    pub fn p_to_m_matrix(&self) -> Vec<Vec<BigInt>> {
        self.partitions
            .iter()
            .map(|mu| {
                self.partitions
                    .iter()
                    .map(|lambda| p_in_m_coefficient(mu, lambda))
                    .collect()
            })
            .collect()
    }

    fn monomials(&self) -> &[PowerExpansion] {
        self.monomial.get_or_init(|| {
            let r = self.p_to_m_matrix();
            let size = self.partitions.len();
            // C·R = I with both lower triangular; solve row by row.
            let mut rows = Vec::with_capacity(size);
            for a in 0..size {
                let mut row = vec![Rational::zero(); a + 1];
                row[a] = Rational::new(BigInt::one(), r[a][a].clone());
                for b in (0..a).rev() {
                    let mut acc = Rational::zero();
                    for (k, c) in row.iter().enumerate().take(a + 1).skip(b + 1) {
                        if !c.is_zero() && !r[k][b].is_zero() {
                            acc += c * Rational::from_integer(r[k][b].clone());
                        }
                    }
                    if !acc.is_zero() {
                        row[b] = -acc / Rational::from_integer(r[b][b].clone());
                    }
                }
                let coords = row
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(b, c)| (self.partitions[b].clone(), c))
                    .collect();
                rows.push(PowerExpansion { n: self.n, coords });
            }
            rows
        })
    }

    fn check(&self, lambda: &Partition) -> Result<usize> {
        self.index.get(lambda).copied().ok_or(Error::DegreeMismatch {
            expected: self.n,
            got: lambda.n(),
        })
    }

    /// `p`-coordinates of the basis element `b_λ`.
    pub fn power_expansion(&self, basis: Basis, lambda: &Partition) -> Result<PowerExpansion> {
        let idx = self.check(lambda)?;
        Ok(match basis {
            Basis::P => PowerExpansion::p(lambda),
            Basis::H | Basis::E => lambda
                .parts()
                .iter()
                .map(|&k| complete_or_elementary(k, basis == Basis::E))
                .reduce(|a, b| a.mul(&b))
                .expect("nonempty partition"),
            Basis::M => self.monomials()[idx].clone(),
            Basis::F => self.monomials()[idx].omega(),
            Basis::S => {
                let mut out = PowerExpansion::zero(self.n);
                for mu in &self.partitions {
                    let chi = mn_character(lambda, mu)?;
                    out.add_term(mu.clone(), Rational::new(chi, mu.z()));
                }
                out
            }
        })
    }
}

/// One-shot expansion; builds the degree tables on each call.
pub fn power_expansion(basis: Basis, lambda: &Partition) -> PowerExpansion {
    SymFunctions::new(lambda.n())
        .power_expansion(basis, lambda)
        .expect("degree matches by construction")
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    partition: Partition,
    #[serde(with = "serde_rational")]
    coeff: Rational,
}

#[derive(Serialize, Deserialize)]
struct ExpansionJson {
    n: usize,
    coords: Vec<TermJson>,
}

impl Serialize for PowerExpansion {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ExpansionJson {
            n: self.n,
            coords: self
                .terms()
                .map(|(p, c)| TermJson {
                    partition: p.clone(),
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PowerExpansion {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = ExpansionJson::deserialize(d)?;
        PowerExpansion::from_coords(j.n, j.coords.into_iter().map(|t| (t.partition, t.coeff)))
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct ValueJson {
    #[serde(rename = "cycleType")]
    cycle_type: Partition,
    #[serde(with = "serde_rational")]
    value: Rational,
}

#[derive(Serialize, Deserialize)]
struct ClassFunctionJson {
    n: usize,
    values: Vec<ValueJson>,
}

impl Serialize for ClassFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ClassFunctionJson {
            n: self.n,
            values: self
                .values()
                .map(|(p, v)| ValueJson {
                    cycle_type: p.clone(),
                    value: v.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ClassFunction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = ClassFunctionJson::deserialize(d)?;
        let mut values: BTreeMap<Partition, Rational> = enumerate_partitions(j.n)
            .into_iter()
            .map(|p| (p, Rational::zero()))
            .collect();
        for v in j.values {
            if v.cycle_type.n() != j.n {
                return Err(serde::de::Error::custom("cycle type of wrong degree"));
            }
            values.insert(v.cycle_type, v.value);
        }
        Ok(ClassFunction { n: j.n, values })
    }
}

/// True when `x` is a nonnegative integer divisible by `2^i`.
pub fn is_nonneg_multiple_of_pow2(x: &Rational, i: usize) -> bool {
    if !x.denom().is_one() || x.is_negative() {
        return false;
    }
    (x.numer() % (BigInt::one() << i)).is_zero()
}

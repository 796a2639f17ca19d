//! The ELSV formula
//!
//! `mu_{g,k} = r! prod k_i^{k_i}/k_i! * int c(E^vee) / prod (1 - k_i psi_i)`
//!
//! expanded into Hodge integrals, evaluated against a table, and read backwards
//! as a linear system that pins down the unknown Hodge integrals from Hurwitz
//! numbers computed combinatorially.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::exactalg::linear::{rank, solve_exact};
use crate::exactalg::rational::{factorial, parse_rational, powi, Rational};
use crate::exactalg::AlgebraError;
use crate::psi::{tau_genus0, PsiEngine};
use crate::symgrp::{
    hurwitz_brute, hurwitz_character, partitions, CharacterBudget, EnumerationBudget, HurwitzError, Profile,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ElsvError {
    #[error("(g, n) = ({g}, {n}) is unstable")]
    Unstable { g: u32, n: usize },
    #[error("missing Hodge integrals: {}", list(.0))]
    MissingEntries(Vec<HodgeMonomial>),
    #[error("calibration input mismatch: {0}")]
    ProfileMismatch(String),
    #[error("calibration underdetermined: rank {rank} < {unknowns} unknowns")]
    RankDeficient { rank: usize, unknowns: usize },
    #[error("no calibration set of full rank found with degree <= {max_d}")]
    NoCalibrationSet { max_d: u32 },
    #[error("malformed Hodge table line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error(transparent)]
    Hurwitz(#[from] HurwitzError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

fn list(ms: &[HodgeMonomial]) -> String {
    ms.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(", ")
}

/// `<lambda_j tau_{a_1} ... tau_{a_n}>_g`, exponents sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HodgeMonomial {
    pub g: u32,
    a: Vec<u32>,
    pub j: u32,
}

impl HodgeMonomial {
    pub fn new(g: u32, mut a: Vec<u32>, j: u32) -> Self {
        a.sort_unstable();
        HodgeMonomial { g, a, j }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.a
    }

    pub fn degree(&self) -> u32 {
        self.a.iter().sum::<u32>() + self.j
    }

    pub fn satisfies_dimension(&self) -> bool {
        self.degree() as i64 == 3 * self.g as i64 - 3 + self.a.len() as i64
    }
}

/// Persisted as `g;a_1,...,a_n;j`.
impl fmt::Display for HodgeMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: Vec<String> = self.a.iter().map(u32::to_string).collect();
        write!(f, "{};{};{}", self.g, a.join(","), self.j)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Genus0Trivial,
    PsiEngine,
    Calibrated,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Genus0Trivial => "genus0-trivial",
            Provenance::PsiEngine => "psi-engine",
            Provenance::Calibrated => "calibrated",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HodgeTable {
    entries: BTreeMap<HodgeMonomial, (Rational, Provenance)>,
}

impl HodgeTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Every genus-0 integral with `n` points; all are lambda-free.
    pub fn genus0(n: usize) -> Self {
        let mut t = HodgeTable::new();
        if n >= 3 {
            for a in sorted_exponents(n, n as u32 - 3) {
                let v = tau_genus0(&a);
                t.insert(HodgeMonomial::new(0, a, 0), v, Provenance::Genus0Trivial);
            }
        }
        t
    }

    pub fn insert(&mut self, m: HodgeMonomial, value: Rational, provenance: Provenance) {
        self.entries.insert(m, (value, provenance));
    }

    pub fn get(&self, m: &HodgeMonomial) -> Option<&Rational> {
        self.entries.get(m).map(|(v, _)| v)
    }

    pub fn provenance(&self, m: &HodgeMonomial) -> Option<Provenance> {
        self.entries.get(m).map(|(_, p)| *p)
    }

    pub fn value(&self, g: u32, a: &[u32], j: u32) -> Option<&Rational> {
        self.get(&HodgeMonomial::new(g, a.to_vec(), j))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&HodgeMonomial, &Rational, Provenance)> {
        self.entries.iter().map(|(m, (v, p))| (m, v, *p))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn merge(&mut self, other: &HodgeTable) {
        for (m, v, p) in other.iter() {
            self.insert(m.clone(), v.clone(), p);
        }
    }

    /// `g;a_1,...,a_n;j;p/q` lines, sorted.
    pub fn to_text(&self) -> String {
        let mut lines: Vec<String> = self.iter().map(|(m, v, _)| format!("{m};{v}")).collect();
        lines.sort();
        let mut out = lines.join("\n");
        if !out.is_empty() {
            out.push('\n');
        }
        out
    }

    /// Inverse of [`HodgeTable::to_text`]. Provenance is not stored, so it is
    /// reassigned from the monomial: genus 0, then lambda-free, then calibrated.
    pub fn from_text(text: &str) -> Result<Self, ElsvError> {
        let mut t = HodgeTable::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let err = |reason: &str| ElsvError::Parse { line: i + 1, reason: reason.to_string() };
            let fields: Vec<&str> = line.split(';').collect();
            if fields.len() != 4 {
                return Err(err("expected four ';'-separated fields"));
            }
            let g: u32 = fields[0].parse().map_err(|_| err("bad genus"))?;
            let a: Result<Vec<u32>, _> = fields[1].split(',').map(str::parse).collect();
            let a = a.map_err(|_| err("bad exponent list"))?;
            let j: u32 = fields[2].parse().map_err(|_| err("bad lambda index"))?;
            let v = parse_rational(fields[3]).map_err(|e| err(&e.to_string()))?;
            let m = HodgeMonomial::new(g, a, j);
            if !m.satisfies_dimension() || j > g {
                return Err(err("dimension constraint violated"));
            }
            let p = match (g, j) {
                (0, _) => Provenance::Genus0Trivial,
                (_, 0) => Provenance::PsiEngine,
                _ => Provenance::Calibrated,
            };
            t.insert(m, v, p);
        }
        Ok(t)
    }
}

fn compositions(n: usize, total: u32) -> Vec<Vec<u32>> {
    fn go(n: usize, total: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() + 1 == n {
            cur.push(total);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for x in (0..=total).rev() {
            cur.push(x);
            go(n, total - x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(n, total, &mut Vec::new(), &mut out);
    } else if total == 0 {
        out.push(Vec::new());
    }
    out
}

/// Increasing exponent vectors of length `n` summing to `total`.
fn sorted_exponents(n: usize, total: u32) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> =
        compositions(n, total).into_iter().filter(|c| c.windows(2).all(|w| w[0] <= w[1])).collect();
    out.sort();
    out
}

/// `r! prod k_i^{k_i} / k_i!`.
pub fn elsv_prefactor(p: &Profile) -> Rational {
    let mut acc = Rational::from_integer(factorial(p.r() as u64));
    for &k in p.parts() {
        acc *= Rational::new(BigInt::from(k).pow(k), factorial(k as u64));
    }
    acc
}

/// `r! d^{n-3} prod k_i^{k_i}/k_i!`, the genus-0 value.
pub fn genus0_closed_form(p: &Profile) -> Rational {
    elsv_prefactor(p) * powi(&Rational::from_integer(BigInt::from(p.d())), p.n() as i64 - 3)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElsvTerm {
    /// `(-1)^j`.
    pub sign: i32,
    /// Exponent of `psi_i`, in mark order.
    pub exponents: Vec<u32>,
    pub j: u32,
    /// `prod k_i^{a_i}`.
    pub coefficient: BigInt,
}

impl ElsvTerm {
    pub fn monomial(&self, g: u32) -> HodgeMonomial {
        HodgeMonomial::new(g, self.exponents.clone(), self.j)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElsvExpansion {
    pub profile: Profile,
    pub prefactor: Rational,
    pub terms: Vec<ElsvTerm>,
}

impl ElsvExpansion {
    /// `mu` as a linear form in the Hodge integrals, prefactor included.
    pub fn linear_form(&self) -> BTreeMap<HodgeMonomial, Rational> {
        let mut out: BTreeMap<HodgeMonomial, Rational> = BTreeMap::new();
        for t in &self.terms {
            let c = Rational::from_integer(t.coefficient.clone() * t.sign) * &self.prefactor;
            *out.entry(t.monomial(self.profile.g)).or_insert_with(Rational::zero) += c;
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    pub fn evaluate(&self, h: &HodgeTable) -> Result<Rational, ElsvError> {
        let form = self.linear_form();
        let missing: Vec<HodgeMonomial> = form.keys().filter(|m| h.get(m).is_none()).cloned().collect();
        if !missing.is_empty() {
            return Err(ElsvError::MissingEntries(missing));
        }
        Ok(form.iter().map(|(m, c)| c * h.get(m).expect("checked")).sum())
    }
}

/// Every top-degree term of `prod_i (sum_a k_i^a psi_i^a) * sum_j (-1)^j lambda_j`.
pub fn elsv_expand(p: &Profile) -> Result<ElsvExpansion, ElsvError> {
    if p.is_unstable() {
        return Err(ElsvError::Unstable { g: p.g, n: p.n() as usize });
    }
    Ok(elsv_expand_unchecked(p))
}

/// As [`elsv_expand`] without the stability gate. For `(0,1)` and `(0,2)` the
/// expansion is empty since the top degree is negative.
pub fn elsv_expand_unchecked(p: &Profile) -> ElsvExpansion {
    let g = p.g;
    let n = p.n() as usize;
    let top = 3 * g as i64 - 3 + n as i64;
    let mut terms = Vec::new();
    for j in 0..=g {
        let rest = top - j as i64;
        if rest < 0 {
            break;
        }
        for a in compositions(n, rest as u32) {
            let coefficient = p.parts().iter().zip(&a).map(|(&k, &e)| BigInt::from(k).pow(e)).product();
            terms.push(ElsvTerm { sign: if j % 2 == 0 { 1 } else { -1 }, exponents: a, j, coefficient });
        }
    }
    ElsvExpansion { profile: p.clone(), prefactor: elsv_prefactor(p), terms }
}

pub fn elsv_evaluate(p: &Profile, h: &HodgeTable) -> Result<Rational, ElsvError> {
    elsv_expand(p)?.evaluate(h)
}

/// The Hodge integrals that can appear for `(g, n)`.
pub fn hodge_unknowns(g: u32, n: usize) -> Vec<HodgeMonomial> {
    let top = 3 * g as i64 - 3 + n as i64;
    let mut out = Vec::new();
    for j in 0..=g {
        let rest = top - j as i64;
        if rest < 0 {
            break;
        }
        for a in sorted_exponents(n, rest as u32) {
            out.push(HodgeMonomial::new(g, a, j));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub equations: usize,
    pub unknowns: usize,
    pub rank: usize,
    /// `ELSV(profile) - mu(profile)` per input equation.
    pub residuals: Vec<Rational>,
}

impl ConsistencyReport {
    pub fn is_consistent(&self) -> bool {
        self.residuals.iter().all(Zero::is_zero)
    }

    pub fn is_overdetermined(&self) -> bool {
        self.equations > self.unknowns
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Calibration {
    pub g: u32,
    pub n: usize,
    pub profiles: Vec<Profile>,
    pub table: HodgeTable,
    pub report: ConsistencyReport,
}

/// Solves ELSV for the Hodge integrals of type `(g, n)` given `mu` on `profiles`.
///
/// With `psi`, the lambda-free integrals are taken from the engine and only the
/// `j >= 1` ones are unknowns. Genus 0 has no unknowns at all.
pub fn calibrate_hodge(
    g: u32,
    n: usize,
    profiles: &[Profile],
    values: &[Rational],
    psi: Option<&PsiEngine>,
) -> Result<Calibration, ElsvError> {
    if profiles.len() != values.len() {
        return Err(ElsvError::ProfileMismatch(format!("{} profiles but {} values", profiles.len(), values.len())));
    }
    if let Some(p) = profiles.iter().find(|p| p.g != g || p.n() as usize != n) {
        return Err(ElsvError::ProfileMismatch(format!("{p} is not of type ({g}, {n})")));
    }
    if 2 * g as usize + n <= 2 {
        return Err(ElsvError::Unstable { g, n });
    }
    let forms: Vec<BTreeMap<HodgeMonomial, Rational>> =
        profiles.iter().map(|p| elsv_expand_unchecked(p).linear_form()).collect();

    let mut table = HodgeTable::new();
    let (unknowns, rank) = if g == 0 {
        table = HodgeTable::genus0(n);
        (0, 0)
    } else {
        let mut unknowns = hodge_unknowns(g, n);
        if let Some(engine) = psi {
            for m in unknowns.iter().filter(|m| m.j == 0) {
                table.insert(m.clone(), engine.tau(g, m.exponents()), Provenance::PsiEngine);
            }
            unknowns.retain(|m| m.j > 0);
        }
        let mut matrix = Vec::with_capacity(forms.len());
        let mut rhs = Vec::with_capacity(forms.len());
        for (form, mu) in forms.iter().zip(values) {
            let row = unknowns.iter().map(|m| form.get(m).cloned().unwrap_or_else(Rational::zero)).collect();
            let known: Rational = form.iter().filter_map(|(m, c)| table.get(m).map(|v| c * v)).sum();
            matrix.push(row);
            rhs.push(mu - known);
        }
        if !unknowns.is_empty() {
            let sol = solve_exact(&matrix, &rhs).map_err(|e| match e {
                AlgebraError::RankDeficient { rank, unknowns } => ElsvError::RankDeficient { rank, unknowns },
                other => ElsvError::Algebra(other),
            })?;
            for (m, v) in unknowns.iter().zip(sol.values) {
                table.insert(m.clone(), v, Provenance::Calibrated);
            }
            (unknowns.len(), sol.rank)
        } else {
            (0, 0)
        }
    };

    let mut residuals = Vec::with_capacity(forms.len());
    for (form, mu) in forms.iter().zip(values) {
        let mut lhs = Rational::zero();
        for (m, c) in form {
            match table.get(m) {
                Some(v) => lhs += c * v,
                None => return Err(ElsvError::MissingEntries(vec![m.clone()])),
            }
        }
        residuals.push(lhs - mu);
    }
    Ok(Calibration {
        g,
        n,
        profiles: profiles.to_vec(),
        table,
        report: ConsistencyReport { equations: profiles.len(), unknowns, rank, residuals },
    })
}

/// Profiles of type `(g, n)` in increasing degree until their ELSV equations
/// reach full rank in the Hodge unknowns, followed by `extra` further profiles.
/// Genus 0 has no unknowns; at least one profile is returned there.
pub fn calibration_profiles(g: u32, n: usize, extra: usize, max_d: u32) -> Result<Vec<Profile>, ElsvError> {
    let unknowns = if g == 0 { Vec::new() } else { hodge_unknowns(g, n) };
    let extra = if g == 0 { extra.max(1) } else { extra };
    let candidates = (n as u32..=max_d).flat_map(|d| {
        partitions(d)
            .into_iter()
            .filter(|l| l.len() == n)
            .map(|l| Profile::new(g, l.parts().to_vec()).expect("positive parts"))
    });
    let mut chosen = Vec::new();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut full = unknowns.is_empty();
    let mut surplus = 0;
    for p in candidates {
        if full {
            if surplus == extra {
                break;
            }
            surplus += 1;
        }
        let form = elsv_expand_unchecked(&p).linear_form();
        rows.push(unknowns.iter().map(|m| form.get(m).cloned().unwrap_or_else(Rational::zero)).collect());
        chosen.push(p);
        if !full {
            full = rank(&rows) == unknowns.len();
        }
    }
    if full && surplus == extra {
        Ok(chosen)
    } else {
        Err(ElsvError::NoCalibrationSet { max_d })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub profile: Profile,
    pub brute: Option<Rational>,
    pub character: Option<Rational>,
    pub elsv: Rational,
    /// Lambda-free entries of the table used agree with the psi engine.
    pub psi_agrees: bool,
    pub calibration_consistent: bool,
}

impl VerifyReport {
    /// Every computed value coincides and the calibration had zero residual.
    pub fn is_equal(&self) -> bool {
        let same = |x: &Option<Rational>| x.as_ref().is_none_or(|v| *v == self.elsv);
        same(&self.brute) && same(&self.character) && self.psi_agrees && self.calibration_consistent
    }
}

/// Compares ELSV against the combinatorial routes, calibrating Hodge integrals
/// per `(g, n)` on first use from character-method Hurwitz numbers.
pub struct Verifier<'a> {
    pub enumeration: EnumerationBudget,
    pub characters: CharacterBudget,
    /// Number of equations beyond full rank in each calibration.
    pub extra_equations: usize,
    psi: &'a PsiEngine,
    calibrations: HashMap<(u32, usize), Calibration>,
}

impl<'a> Verifier<'a> {
    pub fn new(psi: &'a PsiEngine) -> Self {
        Verifier {
            enumeration: EnumerationBudget::default(),
            characters: CharacterBudget::default(),
            extra_equations: 2,
            psi,
            calibrations: HashMap::new(),
        }
    }

    /// The calibration for `(g, n)`, computed on first request.
    pub fn calibration(&mut self, g: u32, n: usize) -> Result<&Calibration, ElsvError> {
        if !self.calibrations.contains_key(&(g, n)) {
            let profiles = calibration_profiles(g, n, self.extra_equations, self.characters.max_d)?;
            let values =
                profiles.iter().map(|p| hurwitz_character(p, &self.characters)).collect::<Result<Vec<_>, _>>()?;
            let cal = calibrate_hodge(g, n, &profiles, &values, None)?;
            self.calibrations.insert((g, n), cal);
        }
        Ok(&self.calibrations[&(g, n)])
    }

    pub fn elsv_value(&mut self, p: &Profile) -> Result<Rational, ElsvError> {
        if p.is_unstable() {
            return Err(ElsvError::Unstable { g: p.g, n: p.n() as usize });
        }
        let cal = self.calibration(p.g, p.n() as usize)?;
        elsv_evaluate(p, &cal.table)
    }

    pub fn verify(&mut self, p: &Profile) -> Result<VerifyReport, ElsvError> {
        let brute = match hurwitz_brute(p, &self.enumeration) {
            Ok(v) => Some(v),
            Err(HurwitzError::BudgetExceeded { .. }) => None,
            Err(e) => return Err(e.into()),
        };
        let character = match hurwitz_character(p, &self.characters) {
            Ok(v) => Some(v),
            Err(HurwitzError::CharacterBudgetExceeded { .. }) if brute.is_some() => None,
            Err(e) => return Err(e.into()),
        };
        if brute.is_none() && character.is_none() {
            // unreachable: the character error above propagates
            return Err(ElsvError::ProfileMismatch(format!("{p} is outside every budget")));
        }
        let elsv = self.elsv_value(p)?;
        let psi = self.psi;
        let cal = &self.calibrations[&(p.g, p.n() as usize)];
        let psi_agrees =
            cal.table.iter().filter(|(m, _, _)| m.j == 0).all(|(m, v, _)| psi.tau(m.g, m.exponents()) == *v);
        Ok(VerifyReport {
            profile: p.clone(),
            brute,
            character,
            elsv,
            psi_agrees,
            calibration_consistent: cal.report.is_consistent(),
        })
    }

    /// Union of all Hodge tables calibrated so far.
    pub fn hodge_table(&self) -> HodgeTable {
        let mut keys: Vec<_> = self.calibrations.keys().copied().collect();
        keys.sort_unstable();
        let mut out = HodgeTable::new();
        for k in keys {
            out.merge(&self.calibrations[&k].table);
        }
        out
    }
}

/// One-shot [`Verifier::verify`] with default budgets.
pub fn verify_elsv(p: &Profile) -> Result<VerifyReport, ElsvError> {
    let psi = PsiEngine::new();
    Verifier::new(&psi).verify(p)
}

/// Stable profiles with `1 <= d <= max_d` and `g <= max_g`, sorted by `(g, d, n)`.
pub fn sweep_profiles(max_d: u32, max_g: u32) -> Vec<Profile> {
    let mut out = Vec::new();
    for g in 0..=max_g {
        for d in 1..=max_d {
            let mut ps: Vec<Profile> = partitions(d)
                .into_iter()
                .map(|l| Profile::new(g, l.parts().to_vec()).expect("positive parts"))
                .filter(|p| !p.is_unstable())
                .collect();
            ps.sort_by_key(|p| p.n());
            out.extend(ps);
        }
    }
    out
}

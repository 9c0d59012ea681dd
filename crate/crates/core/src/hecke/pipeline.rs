use super::newform::NewformData;
use crate::afalg::{companion_check, AfAlgebra, CompanionVerdict, StationaryAf};
use crate::error::{Error, Result};
use crate::exactnum::matrix::{self, IntMatrix};
use crate::exactnum::{
    automorphisms, endomorphism_ring, find_unit, make_nonnegative, make_nonnegative_with, multiplication_matrix,
    periodic_unit, Automorphism, Embedding, FieldElement, IntPolynomial, NonnegativeForm, NumberField, OrderRing,
    Rat, UnitElement, ZModule, ORDERING_STEPS,
};
use crate::mcf::{periodicity_roundtrip, JpaExpansion};

/// The coefficient field, after checking that some listed coefficient
/// generates it.
pub fn coefficient_field(f: &NewformData) -> Result<NumberField> {
    primitive_index(f).ok_or(Error::NotGenerated)?;
    Ok(f.field.clone())
}

/// First `m` (from 2 on, or 1 over Q) with `c(m)` generating the field.
pub fn primitive_index(f: &NewformData) -> Option<usize> {
    if f.degree() == 1 {
        return Some(1);
    }
    (2..=f.len()).find(|&m| f.c(m).is_primitive())
}

/// Index of the working embedding: the fixture's choice, else the largest
/// real root.
pub fn base_embedding(f: &NewformData) -> Result<Embedding> {
    match f.embedding_index {
        Some(i) => f.field.embedding(i),
        None => f.field.default_embedding(),
    }
}

/// One conjugate `f^sigma` of the eigenform.
#[derive(Clone, Debug, PartialEq)]
pub struct Conjugate {
    pub embedding: Embedding,
    /// `rho` with `sigma_base(rho(a)) = sigma(a)`, when the field has one.
    pub automorphism: Option<Automorphism>,
    /// `sigma(c(m))` to double precision.
    pub approx: Vec<f64>,
}

impl Conjugate {
    /// The conjugate coefficient table as exact field elements, read at the
    /// base embedding. Needs the automorphism.
    pub fn exact_coeffs(&self, f: &NewformData) -> Option<Vec<FieldElement>> {
        let rho = self.automorphism.as_ref()?;
        Some(f.coeffs.iter().map(|c| rho.apply(c)).collect())
    }
}

/// All real conjugates of the eigenform, base embedding first.
#[derive(Clone, Debug, PartialEq)]
pub struct ConjugateFamily {
    pub conjugates: Vec<Conjugate>,
}

pub fn conjugate_family(f: &NewformData) -> Result<ConjugateFamily> {
    if !f.field.is_totally_real() {
        return Err(Error::NotTotallyReal);
    }
    let base = base_embedding(f)?;
    let auts = automorphisms(&f.field);
    let mut order: Vec<Embedding> = vec![base.clone()];
    order.extend(f.field.embeddings().into_iter().filter(|e| e.index() != base.index()));
    let conjugates = order
        .into_iter()
        .map(|e| {
            let automorphism = auts.iter().find(|a| a.permutation()[base.index()] == e.index()).cloned();
            let approx = f.coeffs.iter().map(|c| e.approx(c)).collect();
            Conjugate {
                embedding: e,
                automorphism,
                approx,
            }
        })
        .collect();
    Ok(ConjugateFamily { conjugates })
}

/// The module standing in for the period lattice: explicit generators from
/// the fixture, else `Z + Z c + ... + Z c^{n-1}` for the first generating
/// coefficient `c`.
pub fn module_of_eigenform(f: &NewformData) -> Result<ZModule> {
    if let Some(gens) = &f.module {
        return ZModule::from_generators(&f.field, gens);
    }
    if f.degree() == 1 {
        return Ok(ZModule::power_basis(&f.field));
    }
    let c = f.c(primitive_index(f).ok_or(Error::NotGenerated)?);
    let gens: Vec<FieldElement> = (0..f.degree()).map(|i| c.pow(i as i64)).collect::<Result<_>>()?;
    ZModule::from_generators(&f.field, &gens)
}

/// Checks `c(n) m` is inside `m` and returns `c(n)`.
pub fn hecke_action_on_module(f: &NewformData, m: &ZModule, n: usize) -> Result<FieldElement> {
    if n == 0 || n > f.len() {
        return Err(Error::InsufficientCoefficients {
            required: n.max(1),
            available: f.len(),
        });
    }
    let c = f.c(n);
    for b in m.basis() {
        let image = c * &b;
        if !m.contains(&image) {
            return Err(Error::ModuleNotStable {
                n,
                witness: image.to_string(),
            });
        }
    }
    Ok(c.clone())
}

/// How the unit driving the stationary structure was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UnitSource {
    /// Bounded search for a small dominant unit.
    Search,
    /// Read off the periodic expansion of the module basis.
    Expansion,
    /// Image of the base unit under a field automorphism.
    Transported,
}

/// Everything computed for a field of degree at least 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StationaryData {
    pub unit: UnitElement,
    pub unit_source: UnitSource,
    /// Action of the unit on the module basis.
    pub matrix: IntMatrix,
    pub form: NonnegativeForm,
    /// Expansion of the Perron eigenvector of the non-negative form.
    pub expansion: JpaExpansion,
    /// Field polynomial of `u^k`.
    pub unit_power_char_poly: IntPolynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenformAfResult {
    pub label: String,
    pub level: u64,
    pub field: NumberField,
    pub embedding: Embedding,
    pub module: ZModule,
    pub order: OrderRing,
    /// `c(n) m` lies in `m` for all `n` up to this bound.
    pub hecke_stable_up_to: usize,
    pub stationary: Option<StationaryData>,
    pub af: AfAlgebra,
}

impl EigenformAfResult {
    pub fn period_char_poly(&self) -> Option<&IntPolynomial> {
        match &self.af {
            AfAlgebra::Stationary(s) => Some(&s.char_poly),
            _ => None,
        }
    }

    pub fn period_matrix(&self) -> Option<&IntMatrix> {
        match &self.af {
            AfAlgebra::Stationary(s) => Some(&s.period_matrix),
            _ => None,
        }
    }
}

fn with_fallback_context(first: Error, second: Error) -> Error {
    let msg = format!("{first}; expansion fallback: {second}");
    match first {
        Error::UnitNotFound(_) => Error::UnitNotFound(msg),
        Error::NonnegativeFormNotFound(_) => Error::NonnegativeFormNotFound(msg),
        other => other,
    }
}

fn nonnegative_for(
    u: &UnitElement,
    m: &ZModule,
    e: &Embedding,
    hints: &[(u32, IntMatrix)],
) -> Result<(IntMatrix, NonnegativeForm)> {
    let a = multiplication_matrix(u.element(), m)?;
    let form = match make_nonnegative(&a, u, m, e) {
        Err(Error::NonnegativeFormNotFound(_)) if !hints.is_empty() => make_nonnegative_with(&a, u, m, e, hints)?,
        other => other?,
    };
    Ok((a, form))
}

/// Unit, non-negative form, block digits and round trip at one embedding.
fn stationary_stage(
    m: &ZModule,
    o: &OrderRing,
    e: &Embedding,
    transported: Option<(UnitElement, Vec<(u32, IntMatrix)>)>,
) -> Result<StationaryData> {
    let (unit, unit_source, matrix, form) = match transported {
        Some((u, hints)) => {
            let (a, f) = nonnegative_for(&u, m, e, &hints)?;
            (u, UnitSource::Transported, a, f)
        }
        None => {
            let searched = find_unit(o, e).and_then(|u| nonnegative_for(&u, m, e, &[]).map(|(a, f)| (u, a, f)));
            match searched {
                Ok((u, a, f)) => (u, UnitSource::Search, a, f),
                Err(first @ (Error::UnitNotFound(_) | Error::NonnegativeFormNotFound(_))) => {
                    let fallback = periodic_unit(o, m, e, ORDERING_STEPS)
                        .and_then(|u| nonnegative_for(&u, m, e, &[]).map(|(a, f)| (u, a, f)));
                    match fallback {
                        Ok((u, a, f)) => (u, UnitSource::Expansion, a, f),
                        Err(second) => return Err(with_fallback_context(first, second)),
                    }
                }
                Err(other) => return Err(other),
            }
        }
    };
    let power = unit.element().pow(form.k as i64)?;
    // A' mu = u^k mu on the new basis, exactly.
    for (row, mi) in form.matrix.iter().zip(&form.basis) {
        let lhs = row
            .iter()
            .zip(&form.basis)
            .fold(m.field().zero(), |acc, (c, x)| acc + x.scale(&Rat::from_integer(c.clone())));
        if lhs != &power * mi {
            return Err(Error::RoundTripMismatch("non-negative form is not the action of u^k".into()));
        }
    }
    let unit_power_char_poly = power
        .char_poly()
        .to_integer()
        .ok_or_else(|| Error::RoundTripMismatch("unit power is not integral".into()))?;
    if matrix::char_poly(&form.matrix) != unit_power_char_poly {
        return Err(Error::RoundTripMismatch("period matrix and unit power have different polynomials".into()));
    }
    let expansion = periodicity_roundtrip(&form.matrix)?;
    Ok(StationaryData {
        unit,
        unit_source,
        matrix,
        form,
        expansion,
        unit_power_char_poly,
    })
}

fn hecke_stability(f: &NewformData, m: &ZModule) -> Result<usize> {
    for n in 1..=f.len() {
        hecke_action_on_module(f, m, n)?;
    }
    Ok(f.len())
}

fn assemble(
    f: &NewformData,
    m: ZModule,
    o: OrderRing,
    e: Embedding,
    stable: usize,
    data: Option<StationaryData>,
) -> Result<EigenformAfResult> {
    let af = match &data {
        None => AfAlgebra::Trivial,
        Some(d) => {
            let s = StationaryAf::new(m.rank(), Vec::new(), d.form.digits.clone());
            if s.period_matrix != d.form.matrix {
                return Err(Error::RoundTripMismatch("block product differs from the non-negative form".into()));
            }
            AfAlgebra::Stationary(s)
        }
    };
    Ok(EigenformAfResult {
        label: f.label.clone(),
        level: f.level,
        field: f.field.clone(),
        embedding: e,
        module: m,
        order: o,
        hecke_stable_up_to: stable,
        stationary: data,
        af,
    })
}

/// The AF-algebra of the eigenform: trivial over Q, otherwise stationary
/// with the non-negative action of a unit of the module's order as period
/// matrix.
pub fn af_of_eigenform(f: &NewformData) -> Result<EigenformAfResult> {
    coefficient_field(f)?;
    let m = module_of_eigenform(f)?;
    let stable = hecke_stability(f, &m)?;
    let o = endomorphism_ring(&m)?;
    let e = base_embedding(f)?;
    if f.degree() == 1 {
        return assemble(f, m, o, e, stable, None);
    }
    let data = stationary_stage(&m, &o, &e, None)?;
    assemble(f, m, o, e, stable, Some(data))
}

/// The pipeline at one conjugate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugateRun {
    pub embedding_index: usize,
    /// The unit was carried over from the base run by an automorphism.
    pub transported: bool,
    /// The automorphism maps the module onto itself.
    pub module_stable: Option<bool>,
    pub result: EigenformAfResult,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairVerdict {
    pub first: usize,
    pub second: usize,
    pub verdict: CompanionVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompanionReport {
    /// Base run first.
    pub runs: Vec<ConjugateRun>,
    pub char_polys_equal: bool,
    pub verdicts: Vec<PairVerdict>,
}

impl CompanionReport {
    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }
}

/// Hint for the conjugate run: if `tau(lambda) = S lambda` then
/// `S^{-1} T` makes the transported matrix non-negative.
fn transport_hint(base: &StationaryData, m: &ZModule, tau: &Automorphism) -> Option<(u32, IntMatrix)> {
    let s: IntMatrix = m
        .basis()
        .iter()
        .map(|b| m.coordinates(&tau.apply(b)))
        .collect::<Option<_>>()?;
    let sinv = matrix::unimodular_inverse(&s)?;
    Some((base.form.k, matrix::mul(&sinv, &base.form.transform)))
}

/// Runs the pipeline at every real conjugate and compares period matrices.
///
/// When an automorphism `tau` with `sigma_j tau = sigma_base` exists, the
/// conjugate run uses `tau(u)`, which is expanding at `sigma_j`. Otherwise
/// the conjugate runs its own unit search.
pub fn companion_of_conjugates(f: &NewformData) -> Result<CompanionReport> {
    if f.degree() == 1 {
        return Ok(CompanionReport {
            runs: Vec::new(),
            char_polys_equal: true,
            verdicts: Vec::new(),
        });
    }
    let base = af_of_eigenform(f)?;
    companion_from_base(f, base)
}

/// As [`companion_of_conjugates`], reusing a finished base run.
pub fn companion_from_base(f: &NewformData, base: EigenformAfResult) -> Result<CompanionReport> {
    if f.degree() == 1 {
        return Ok(CompanionReport {
            runs: Vec::new(),
            char_polys_equal: true,
            verdicts: Vec::new(),
        });
    }
    let family = conjugate_family(f)?;
    let base_data = base
        .stationary
        .as_ref()
        .ok_or_else(|| Error::Degenerate("base run has no stationary data".into()))?;
    let auts = automorphisms(&f.field);
    let base_index = base.embedding.index();
    let mut runs = vec![ConjugateRun {
        embedding_index: base_index,
        transported: false,
        module_stable: None,
        result: base.clone(),
    }];
    for conj in family.conjugates.iter().skip(1) {
        let e = conj.embedding.clone();
        let tau = auts.iter().find(|a| a.permutation()[e.index()] == base_index);
        let mut transported = None;
        let mut module_stable = None;
        if let Some(tau) = tau {
            let image = base.module.map(|b| tau.apply(b))?;
            module_stable = Some(image == base.module);
            let u = tau.apply(base_data.unit.element());
            if let Ok(unit) = UnitElement::new(u, &base.order) {
                let hints: Vec<(u32, IntMatrix)> = transport_hint(base_data, &base.module, tau).into_iter().collect();
                transported = Some((unit, hints));
            }
        }
        let was_transported = transported.is_some();
        let data = stationary_stage(&base.module, &base.order, &e, transported)?;
        let result = assemble(
            f,
            base.module.clone(),
            base.order.clone(),
            e.clone(),
            base.hecke_stable_up_to,
            Some(data),
        )?;
        runs.push(ConjugateRun {
            embedding_index: e.index(),
            transported: was_transported,
            module_stable,
            result,
        });
    }
    let polys: Vec<&IntPolynomial> = runs.iter().filter_map(|r| r.result.period_char_poly()).collect();
    let char_polys_equal = polys.windows(2).all(|w| w[0] == w[1]);
    let mut verdicts = Vec::new();
    for i in 0..runs.len() {
        for j in i + 1..runs.len() {
            let (Some(a), Some(b)) = (runs[i].result.period_matrix(), runs[j].result.period_matrix()) else {
                continue;
            };
            let verdict = if a.len() == b.len() {
                companion_check(a, b)?
            } else {
                CompanionVerdict::DistinctCharPoly
            };
            verdicts.push(PairVerdict {
                first: runs[i].embedding_index,
                second: runs[j].embedding_index,
                verdict,
            });
        }
    }
    Ok(CompanionReport {
        runs,
        char_polys_equal,
        verdicts,
    })
}

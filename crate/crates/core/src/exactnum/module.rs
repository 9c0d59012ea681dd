//! Full Z-modules in a number field and their endomorphism orders.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::field::{FieldElement, NumberField};
use super::lattice::hnf_rows;
use super::matrix::{rat_inverse, transpose, IntMatrix, RatMatrix};
use super::poly::{format_rational, int_rat, Rat};
use crate::error::{Error, Result};

/// Canonical `(denominator, hnf)` of the lattice spanned by rational rows.
fn canonical_lattice(rows: &[Vec<Rat>]) -> (BigInt, IntMatrix) {
    let d = rows
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: IntMatrix = rows
        .iter()
        .map(|r| r.iter().map(|x| (x * int_rat(&d)).to_integer()).collect())
        .collect();
    let h = hnf_rows(&ints);
    let g = h.iter().flatten().fold(d.clone(), |acc, x| acc.gcd(x));
    let h = h.into_iter().map(|r| r.into_iter().map(|x| x / &g).collect()).collect();
    (d / g, h)
}

fn lattice_rows(den: &BigInt, hnf: &IntMatrix) -> RatMatrix {
    hnf.iter()
        .map(|r| r.iter().map(|x| Rat::new(x.clone(), den.clone())).collect())
        .collect()
}

/// Dual lattice under the standard coordinate pairing.
fn dual_rows(rows: &RatMatrix) -> RatMatrix {
    transpose(&rat_inverse(rows).expect("full-rank lattice"))
}

/// A full-rank Z-module in a number field, stored canonically as
/// `(1/denominator) * hnf` with `hnf` in row Hermite normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZModule {
    field: NumberField,
    denominator: BigInt,
    hnf: IntMatrix,
}

impl ZModule {
    /// Module spanned by the given elements; fails unless the span has full rank.
    pub fn from_generators(field: &NumberField, gens: &[FieldElement]) -> Result<Self> {
        if gens.iter().any(|g| g.field() != field) {
            return Err(Error::FieldMismatch);
        }
        let rows: Vec<Vec<Rat>> = gens.iter().map(|g| g.coords().to_vec()).collect();
        Self::from_rational_rows(field, &rows)
    }

    pub fn from_rational_rows(field: &NumberField, rows: &[Vec<Rat>]) -> Result<Self> {
        let n = field.degree();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::ShapeMismatch(format!("module rows must have length {n}")));
        }
        let (denominator, hnf) = canonical_lattice(rows);
        if hnf.len() != n {
            return Err(Error::NotFullRank {
                rank: hnf.len(),
                expected: n,
            });
        }
        Ok(ZModule {
            field: field.clone(),
            denominator,
            hnf,
        })
    }

    /// The order `Z[x]` spanned by the power basis.
    pub fn power_basis(field: &NumberField) -> Self {
        let n = field.degree();
        let rows: Vec<Vec<Rat>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
            .collect();
        Self::from_rational_rows(field, &rows).expect("identity has full rank")
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn rank(&self) -> usize {
        self.hnf.len()
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    pub fn hnf(&self) -> &IntMatrix {
        &self.hnf
    }

    pub fn basis_matrix(&self) -> RatMatrix {
        lattice_rows(&self.denominator, &self.hnf)
    }

    pub fn basis(&self) -> Vec<FieldElement> {
        self.basis_matrix()
            .into_iter()
            .map(|r| self.field.element(r).expect("row length equals degree"))
            .collect()
    }

    /// Integer coordinates of `a` in the canonical basis, if `a` lies in the module.
    pub fn coordinates(&self, a: &FieldElement) -> Option<Vec<BigInt>> {
        if a.field() != &self.field {
            return None;
        }
        let n = self.rank();
        let scaled: Vec<Rat> = a.coords().iter().map(|c| c * int_rat(&self.denominator)).collect();
        if scaled.iter().any(|c| !c.is_integer()) {
            return None;
        }
        let v: Vec<BigInt> = scaled.iter().map(|c| c.to_integer()).collect();
        // The canonical basis is upper triangular with pivots on the diagonal.
        let mut x: Vec<BigInt> = Vec::with_capacity(n);
        for j in 0..n {
            let mut r = v[j].clone();
            for (i, xi) in x.iter().enumerate() {
                r -= xi * &self.hnf[i][j];
            }
            let (q, rem) = r.div_rem(&self.hnf[j][j]);
            if !rem.is_zero() {
                return None;
            }
            x.push(q);
        }
        Some(x)
    }

    pub fn contains(&self, a: &FieldElement) -> bool {
        self.coordinates(a).is_some()
    }

    pub fn contains_module(&self, other: &ZModule) -> bool {
        other.basis().iter().all(|b| self.contains(b))
    }

    /// The module `c * self`.
    pub fn scale(&self, c: &FieldElement) -> Result<ZModule> {
        let gens: Vec<FieldElement> = self.basis().iter().map(|b| b * c).collect();
        ZModule::from_generators(&self.field, &gens)
    }

    /// Image under an arbitrary additive map on elements (e.g. a field automorphism).
    pub fn map(&self, f: impl Fn(&FieldElement) -> FieldElement) -> Result<ZModule> {
        let gens: Vec<FieldElement> = self.basis().iter().map(f).collect();
        ZModule::from_generators(&self.field, &gens)
    }

    pub fn sum(&self, other: &ZModule) -> Result<ZModule> {
        let mut rows = self.basis_matrix();
        rows.extend(other.basis_matrix());
        ZModule::from_rational_rows(&self.field, &rows)
    }

    pub fn intersection(&self, other: &ZModule) -> Result<ZModule> {
        let mut rows = dual_rows(&self.basis_matrix());
        rows.extend(dual_rows(&other.basis_matrix()));
        let (d, h) = canonical_lattice(&rows);
        let dual = dual_rows(&lattice_rows(&d, &h));
        ZModule::from_rational_rows(&self.field, &dual)
    }

    /// Compact text form used in reports.
    pub fn to_strings(&self) -> (String, Vec<Vec<String>>) {
        (
            self.denominator.to_string(),
            self.hnf.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect(),
        )
    }
}

impl fmt::Display for ZModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .basis_matrix()
            .iter()
            .map(|r| {
                let c: Vec<String> = r.iter().map(format_rational).collect();
                format!("({})", c.join(", "))
            })
            .collect();
        write!(f, "<{}>", gens.join(", "))
    }
}

/// An order: a full module containing 1 and closed under multiplication.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderRing {
    module: ZModule,
}

impl OrderRing {
    /// Wraps a module after checking that it is a ring with 1.
    pub fn new(module: ZModule) -> Result<Self> {
        let one = module.field().one();
        if !module.contains(&one) {
            return Err(Error::Degenerate("order must contain 1".into()));
        }
        let basis = module.basis();
        for a in &basis {
            for b in &basis {
                if !module.contains(&(a * b)) {
                    return Err(Error::Degenerate("module is not closed under multiplication".into()));
                }
            }
        }
        Ok(OrderRing { module })
    }

    pub fn module(&self) -> &ZModule {
        &self.module
    }

    pub fn field(&self) -> &NumberField {
        self.module.field()
    }

    pub fn basis(&self) -> Vec<FieldElement> {
        self.module.basis()
    }

    pub fn contains(&self, a: &FieldElement) -> bool {
        self.module.contains(a)
    }

    /// Order basis starting with 1: a unimodular completion of 1 in the module.
    pub fn basis_with_one(&self) -> Vec<FieldElement> {
        let basis = self.basis();
        let one = self.field().one();
        let c = self.module.coordinates(&one).expect("orders contain 1");
        // Coordinates of 1 are primitive; complete them to a unimodular matrix.
        let rows = super::units::complete_to_unimodular(&c);
        rows.iter()
            .map(|r| {
                r.iter()
                    .zip(&basis)
                    .fold(self.field().zero(), |acc, (k, b)| acc + b.scale(&int_rat(k)))
            })
            .collect()
    }
}

/// The ring `{a : a m ⊆ m}` of a full module.
pub fn endomorphism_ring(m: &ZModule) -> Result<OrderRing> {
    let basis = m.basis();
    let mut acc: Option<ZModule> = None;
    for b in &basis {
        let inv = b.inverse()?;
        let piece = m.scale(&inv)?;
        acc = Some(match acc {
            None => piece,
            Some(a) => a.intersection(&piece)?,
        });
    }
    OrderRing::new(acc.expect("modules have rank at least one"))
}

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::modular::is_prime;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    PrimeField { p: u64 },
    /// `F_p[t]/(modulus)`, modulus ascending, monic and irreducible.
    ExtField { p: u64, modulus: Vec<u64> },
    PadicField { p: u64, precision: u32 },
}

/// Which field a computation lives in. Cheap to clone.
#[derive(Clone)]
pub struct FieldDescriptor(Arc<FieldKind>);

impl PartialEq for FieldDescriptor {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}
impl Eq for FieldDescriptor {}

impl fmt::Debug for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::PrimeField { p } => write!(f, "F_{p}"),
            FieldKind::ExtField { p, modulus } => {
                write!(f, "F_{}^{}[{:?}]", p, modulus.len() - 1, modulus)
            }
            FieldKind::PadicField { p, precision } => write!(f, "Q_{p}(prec {precision})"),
        }
    }
}

fn check_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::InvalidDescriptor(format!("{p} is not prime")));
    }
    Ok(())
}

impl FieldDescriptor {
    pub fn rationals() -> Self {
        FieldDescriptor(Arc::new(FieldKind::Rationals))
    }

    pub fn prime(p: u64) -> Result<Self> {
        check_prime(p)?;
        if p > u32::MAX as u64 {
            return Err(Error::InvalidDescriptor(format!("prime {p} exceeds 32 bits")));
        }
        Ok(FieldDescriptor(Arc::new(FieldKind::PrimeField { p })))
    }

    /// `F_p[t]/(modulus)`; the modulus must be monic, of degree at least 2
    /// and irreducible over F_p.
    pub fn extension(p: u64, modulus: Vec<u64>) -> Result<Self> {
        let base = Self::prime(p)?;
        if modulus.len() < 3 {
            return Err(Error::InvalidDescriptor("modulus degree must be >= 2".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidDescriptor("modulus coefficients must lie in [0, p)".into()));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidDescriptor("modulus must be monic".into()));
        }
        let f = crate::poly::Poly::from_residues(&base, &modulus);
        if !crate::poly::irreducible::is_irreducible_finite(&f) {
            return Err(Error::InvalidDescriptor(format!("modulus {modulus:?} is reducible over F_{p}")));
        }
        Ok(FieldDescriptor(Arc::new(FieldKind::ExtField { p, modulus })))
    }

    /// `F_{p^k}` with the lexicographically first monic irreducible modulus
    /// (`F_p` itself when `k = 1`).
    pub fn galois(p: u64, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidDescriptor("degree must be >= 1".into()));
        }
        if k == 1 {
            return Self::prime(p);
        }
        let base = Self::prime(p)?;
        let m = crate::poly::irreducible::first_irreducible(&base, k)?;
        let modulus = m.coeffs().iter().map(|c| c.residue_index() as u64).collect();
        Ok(FieldDescriptor(Arc::new(FieldKind::ExtField { p, modulus })))
    }

    pub fn padic(p: u64, precision: u32) -> Result<Self> {
        check_prime(p)?;
        if precision == 0 {
            return Err(Error::InvalidDescriptor("precision must be >= 1".into()));
        }
        Ok(FieldDescriptor(Arc::new(FieldKind::PadicField { p, precision })))
    }

    pub fn kind(&self) -> &FieldKind {
        &self.0
    }

    /// The prime attached to the field, if any (characteristic for finite
    /// fields, residue characteristic for Q_p).
    pub fn prime_number(&self) -> Option<u64> {
        match &*self.0 {
            FieldKind::Rationals => None,
            FieldKind::PrimeField { p }
            | FieldKind::ExtField { p, .. }
            | FieldKind::PadicField { p, .. } => Some(*p),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match &*self.0 {
            FieldKind::PrimeField { p } | FieldKind::ExtField { p, .. } => *p,
            _ => 0,
        }
    }

    /// Degree over the prime field (1 for F_p).
    pub fn ext_degree(&self) -> usize {
        match &*self.0 {
            FieldKind::ExtField { modulus, .. } => modulus.len() - 1,
            _ => 1,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(&*self.0, FieldKind::PrimeField { .. } | FieldKind::ExtField { .. })
    }

    pub fn is_padic(&self) -> bool {
        matches!(&*self.0, FieldKind::PadicField { .. })
    }

    /// Exact fields use exact equality; p-adic fields compare to shared precision.
    pub fn is_exact(&self) -> bool {
        !self.is_padic()
    }

    pub fn order(&self) -> Option<u128> {
        match &*self.0 {
            FieldKind::PrimeField { p } => Some(*p as u128),
            FieldKind::ExtField { p, modulus } => Some((*p as u128).pow(modulus.len() as u32 - 1)),
            _ => None,
        }
    }

    pub fn padic_precision(&self) -> Option<u32> {
        match &*self.0 {
            FieldKind::PadicField { precision, .. } => Some(*precision),
            _ => None,
        }
    }
}

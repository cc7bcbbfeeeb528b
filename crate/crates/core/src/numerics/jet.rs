use super::{CNum, NumericsError};

/// Truncated Taylor expansion `c_0 + c_1 (x-a) + … + c_m (x-a)^m` of a
/// function at the center `a`.
///
/// `coeffs[k]` is `f^(k)(a) / k!`, so the divided-difference table can read
/// repeated-node entries straight out of the coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    center: CNum,
    coeffs: Vec<CNum>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JetOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl Jet {
    pub fn from_coeffs(center: CNum, coeffs: Vec<CNum>) -> Result<Self, NumericsError> {
        if coeffs.is_empty() {
            return Err(NumericsError::Mismatch("a jet needs at least one coefficient"));
        }
        if !super::is_finite(center) || !coeffs.iter().all(|&c| super::is_finite(c)) {
            return Err(NumericsError::NonFinite);
        }
        Ok(Self { center, coeffs })
    }

    pub fn constant(center: CNum, value: CNum, order: usize) -> Self {
        let mut coeffs = vec![CNum::default(); order + 1];
        coeffs[0] = value;
        Self { center, coeffs }
    }

    pub fn zero(center: CNum, order: usize) -> Self {
        Self::constant(center, CNum::default(), order)
    }

    pub fn one(center: CNum, order: usize) -> Self {
        Self::constant(center, CNum::new(1.0, 0.0), order)
    }

    /// The identity function `x ↦ x` expanded at `center`.
    pub fn variable(center: CNum, order: usize) -> Self {
        let mut jet = Self::constant(center, center, order);
        if order >= 1 {
            jet.coeffs[1] = CNum::new(1.0, 0.0);
        }
        jet
    }

    pub fn center(&self) -> CNum {
        self.center
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[CNum] {
        &self.coeffs
    }

    pub fn value(&self) -> CNum {
        self.coeffs[0]
    }

    /// `f^(k)(center)`; returns `None` past the truncation order.
    pub fn derivative(&self, k: usize) -> Option<CNum> {
        let c = *self.coeffs.get(k)?;
        let fact: f64 = (1..=k).map(|i| i as f64).product();
        Some(c * fact)
    }

    fn check_compatible(&self, other: &Jet) -> Result<(), NumericsError> {
        if self.center != other.center {
            return Err(NumericsError::Mismatch("centers differ"));
        }
        if self.coeffs.len() != other.coeffs.len() {
            return Err(NumericsError::Mismatch("orders differ"));
        }
        Ok(())
    }

    pub fn apply(&self, other: &Jet, op: JetOp) -> Result<Jet, NumericsError> {
        match op {
            JetOp::Add => self.add(other),
            JetOp::Sub => self.sub(other),
            JetOp::Mul => self.mul(other),
            JetOp::Div => self.div(other),
        }
    }

    pub fn add(&self, other: &Jet) -> Result<Jet, NumericsError> {
        self.check_compatible(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Jet { center: self.center, coeffs })
    }

    pub fn sub(&self, other: &Jet) -> Result<Jet, NumericsError> {
        self.check_compatible(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(Jet { center: self.center, coeffs })
    }

    pub fn mul(&self, other: &Jet) -> Result<Jet, NumericsError> {
        self.check_compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Jet) -> Jet {
        let m = self.coeffs.len();
        let mut coeffs = vec![CNum::default(); m];
        for (k, slot) in coeffs.iter_mut().enumerate() {
            let mut acc = CNum::default();
            for i in 0..=k {
                acc += self.coeffs[i] * other.coeffs[k - i];
            }
            *slot = acc;
        }
        Jet { center: self.center, coeffs }
    }

    pub fn div(&self, other: &Jet) -> Result<Jet, NumericsError> {
        self.check_compatible(other)?;
        let b0 = other.coeffs[0];
        if b0 == CNum::default() {
            return Err(NumericsError::DegenerateJet);
        }
        let m = self.coeffs.len();
        let mut coeffs: Vec<CNum> = Vec::with_capacity(m);
        for k in 0..m {
            let mut acc = self.coeffs[k];
            for j in 1..=k {
                acc -= other.coeffs[j] * coeffs[k - j];
            }
            coeffs.push(acc / b0);
        }
        Ok(Jet { center: self.center, coeffs })
    }

    pub fn scale(&self, factor: CNum) -> Jet {
        Jet {
            center: self.center,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Truncated expansion of `self^p`; `p = 0` gives the constant one.
    pub fn pow_int(&self, p: u32) -> Jet {
        let mut acc = Jet::one(self.center, self.order());
        let mut base = self.clone();
        let mut exp = p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }
}

//! Laurent monomials in `t_1..t_k` with min-plus auxiliary addition.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::SemifieldError;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LaurentMonomial {
    exps: Vec<i64>,
}

impl LaurentMonomial {
    pub fn one(k: usize) -> Self {
        LaurentMonomial { exps: vec![0; k] }
    }

    pub fn generator(k: usize, i: usize) -> Self {
        let mut exps = vec![0; k];
        exps[i] = 1;
        LaurentMonomial { exps }
    }

    pub fn new(exps: Vec<i64>) -> Self {
        LaurentMonomial { exps }
    }

    pub fn exps(&self) -> &[i64] {
        &self.exps
    }

    pub fn ngens(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    fn check(&self, other: &Self) -> Result<(), SemifieldError> {
        if self.exps.len() != other.exps.len() {
            Err(SemifieldError::Dimension { expected: self.exps.len(), found: other.exps.len() })
        } else {
            Ok(())
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SemifieldError> {
        self.check(other)?;
        Ok(LaurentMonomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect() })
    }

    pub fn inv(&self) -> Self {
        LaurentMonomial { exps: self.exps.iter().map(|a| -a).collect() }
    }

    pub fn pow(&self, e: i64) -> Self {
        LaurentMonomial { exps: self.exps.iter().map(|a| a * e).collect() }
    }

    pub fn oplus(&self, other: &Self) -> Result<Self, SemifieldError> {
        self.check(other)?;
        Ok(LaurentMonomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)).collect() })
    }

    pub fn encode(&self, out: &mut Vec<u8>) {
        out.extend_from_slice(&(self.exps.len() as u32).to_be_bytes());
        for e in &self.exps {
            out.extend_from_slice(&e.to_be_bytes());
        }
    }
}

impl fmt::Display for LaurentMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| if e == 1 { format!("t{}", i + 1) } else { format!("t{}^{}", i + 1, e) })
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

impl fmt::Debug for LaurentMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Trop({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn min_plus() {
        let a = LaurentMonomial::new(vec![1, 2]);
        let b = LaurentMonomial::new(vec![3, 1]);
        assert_eq!(a.oplus(&b).unwrap(), LaurentMonomial::new(vec![1, 1]));
        assert_eq!(LaurentMonomial::new(vec![2, -1]).inv(), LaurentMonomial::new(vec![-2, 1]));
        assert!(a.oplus(&LaurentMonomial::one(3)).is_err());
    }
}

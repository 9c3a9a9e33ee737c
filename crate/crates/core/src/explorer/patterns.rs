//! Concrete walks: X-patterns, A-patterns, and A-patterns carrying a universal X-cluster.

use crate::seedcore::{canonical_key_a, canonical_key_x, mutate_x, APattern, ASeed, SeedError, SeedKey, XSeed};
use crate::semifield::{Exact, FactoredField, RationalFunction, Semifield, SemifieldValue};

use super::bfs::Pattern;

/// Semifields whose elements can be written out as exact [`SemifieldValue`]s.
pub trait Export: Semifield {
    fn export(&self, e: &Self::Elem) -> SemifieldValue;
}

impl Export for Exact {
    fn export(&self, e: &SemifieldValue) -> SemifieldValue {
        e.clone()
    }
}

impl Export for FactoredField {
    fn export(&self, e: &Self::Elem) -> SemifieldValue {
        SemifieldValue::Universal(self.to_rational_function(e))
    }
}

/// Ambient fields whose elements can be written out as rational functions.
pub trait ExportField: Semifield {
    fn export_rf(&self, e: &Self::Elem) -> RationalFunction;
}

impl ExportField for FactoredField {
    fn export_rf(&self, e: &Self::Elem) -> RationalFunction {
        self.to_rational_function(e)
    }
}

impl ExportField for Exact {
    fn export_rf(&self, e: &SemifieldValue) -> RationalFunction {
        e.as_universal().expect("ambient field values are universal").clone()
    }
}

pub struct XWalk<'a, S: Semifield> {
    pub s: &'a S,
}

impl<S: Semifield> Pattern for XWalk<'_, S> {
    type Seed = XSeed<S::Elem>;

    fn rank(&self, seed: &Self::Seed) -> usize {
        seed.rank()
    }

    fn mutate(&self, seed: &Self::Seed, k: usize) -> Result<Self::Seed, SeedError> {
        mutate_x(self.s, seed, k)
    }

    fn key(&self, seed: &Self::Seed) -> Result<SeedKey, SeedError> {
        Ok(canonical_key_x(self.s, seed)?.0)
    }

    fn epoch(&self) -> u64 {
        self.s.epoch()
    }

    fn normalize(&self, seed: &Self::Seed) -> Self::Seed {
        XSeed { b: seed.b.clone(), x: seed.x.iter().map(|v| self.s.normalize(v)).collect() }
    }
}

pub struct AWalk<'a, S: Semifield, F: Semifield> {
    pub pattern: APattern<'a, S, F>,
}

fn normalize_a<S: Semifield, F: Semifield>(
    p: &APattern<'_, S, F>,
    seed: &ASeed<F::Elem, S::Elem>,
) -> ASeed<F::Elem, S::Elem> {
    ASeed {
        b: seed.b.clone(),
        a: seed.a.iter().map(|v| p.field.normalize(v)).collect(),
        x: seed.x.iter().map(|v| p.coeffs.normalize(v)).collect(),
    }
}

impl<S: Semifield, F: Semifield> Pattern for AWalk<'_, S, F> {
    type Seed = ASeed<F::Elem, S::Elem>;

    fn rank(&self, seed: &Self::Seed) -> usize {
        seed.rank()
    }

    fn mutate(&self, seed: &Self::Seed, k: usize) -> Result<Self::Seed, SeedError> {
        self.pattern.mutate(seed, k)
    }

    fn key(&self, seed: &Self::Seed) -> Result<SeedKey, SeedError> {
        Ok(canonical_key_a(self.pattern.coeffs, self.pattern.field, seed)?.0)
    }

    fn epoch(&self) -> u64 {
        self.pattern.field.epoch().wrapping_mul(1 << 32).wrapping_add(self.pattern.coeffs.epoch())
    }

    fn normalize(&self, seed: &Self::Seed) -> Self::Seed {
        normalize_a(&self.pattern, seed)
    }
}

/// An A-seed together with an X-cluster `y` living in its own semifield, mutated in step.
#[derive(Clone, Debug)]
pub struct JointSeed<A, E, Y> {
    pub a: ASeed<A, E>,
    pub y: Vec<Y>,
}

impl<A: Clone, E: Clone, Y: Clone> JointSeed<A, E, Y> {
    pub fn y_seed(&self) -> XSeed<Y> {
        XSeed { b: self.a.b.clone(), x: self.y.clone() }
    }
}

/// Walks the A-pattern (keyed by the A-seed) while carrying an X-cluster along the
/// same mutation sequences; used to compare the two exchange graphs.
pub struct JointWalk<'a, S: Semifield, F: Semifield, Y: Semifield> {
    pub pattern: APattern<'a, S, F>,
    pub ys: &'a Y,
}

impl<S: Semifield, F: Semifield, Y: Semifield> Pattern for JointWalk<'_, S, F, Y> {
    type Seed = JointSeed<F::Elem, S::Elem, Y::Elem>;

    fn rank(&self, seed: &Self::Seed) -> usize {
        seed.a.rank()
    }

    fn mutate(&self, seed: &Self::Seed, k: usize) -> Result<Self::Seed, SeedError> {
        let a = self.pattern.mutate(&seed.a, k)?;
        let y = mutate_x(self.ys, &seed.y_seed(), k)?.x;
        Ok(JointSeed { a, y })
    }

    fn key(&self, seed: &Self::Seed) -> Result<SeedKey, SeedError> {
        Ok(canonical_key_a(self.pattern.coeffs, self.pattern.field, &seed.a)?.0)
    }

    fn epoch(&self) -> u64 {
        self.pattern.field.epoch().wrapping_mul(1 << 32).wrapping_add(self.ys.epoch())
    }

    fn normalize(&self, seed: &Self::Seed) -> Self::Seed {
        JointSeed { a: normalize_a(&self.pattern, &seed.a), y: seed.y.iter().map(|v| self.ys.normalize(v)).collect() }
    }
}

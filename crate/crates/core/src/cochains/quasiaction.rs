use crate::error::CochainError;
use crate::groups::{Automorphism, AutomorphismGroup, Base, Elem, FiniteGroup};

/// A normalized function `L: G -> Aut(N)`, not required to be multiplicative.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quasiaction {
    values: Vec<Automorphism>,
}

impl Quasiaction {
    pub fn new(values: Vec<Automorphism>) -> Result<Self, CochainError> {
        let Some(first) = values.first() else {
            return Err(CochainError::InvalidQuasiaction("empty value list".into()));
        };
        if !first.is_identity() {
            return Err(CochainError::InvalidQuasiaction("L(1) is not the identity".into()));
        }
        let n = first.images().len();
        if values.iter().any(|v| v.images().len() != n) {
            return Err(CochainError::InvalidQuasiaction("values act on different groups".into()));
        }
        Ok(Quasiaction { values })
    }

    /// Validates each image array as an automorphism of `coeff`.
    pub fn from_images(coeff: &FiniteGroup, images: Vec<Vec<Elem>>) -> Result<Self, CochainError> {
        let values = images
            .into_iter()
            .map(|im| Automorphism::new(coeff, im))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(values)
    }

    /// Picks values out of an automorphism group by index.
    pub fn from_indices(aut: &AutomorphismGroup, indices: &[usize]) -> Result<Self, CochainError> {
        Self::new(indices.iter().map(|&i| aut.get(i).clone()).collect())
    }

    pub fn trivial(base_order: usize, coeff_order: usize) -> Self {
        Quasiaction { values: vec![Automorphism::identity(coeff_order); base_order] }
    }

    pub fn base_order(&self) -> usize {
        self.values.len()
    }

    pub fn coeff_order(&self) -> usize {
        self.values[0].images().len()
    }

    #[inline]
    pub fn apply(&self, g: Elem, x: Elem) -> Elem {
        self.values[g].apply(x)
    }

    pub fn get(&self, g: Elem) -> &Automorphism {
        &self.values[g]
    }

    pub fn values(&self) -> &[Automorphism] {
        &self.values
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(Automorphism::is_identity)
    }

    /// Indices of the values inside `aut`.
    pub fn indices(&self, aut: &AutomorphismGroup) -> Vec<usize> {
        self.values
            .iter()
            .map(|v| aut.index_of(v).expect("value is an automorphism"))
            .collect()
    }

    /// First pair with `L_a L_b != L_ab`.
    pub fn action_defect<B: Base>(&self, base: &B) -> Option<(Elem, Elem)> {
        let m = base.order();
        (0..m)
            .flat_map(|a| (0..m).map(move |b| (a, b)))
            .find(|&(a, b)| self.values[a].compose(&self.values[b]) != self.values[base.mul(a, b)])
    }

    pub fn is_action<B: Base>(&self, base: &B) -> bool {
        self.action_defect(base).is_none()
    }
}

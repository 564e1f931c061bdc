//! Normalized cochains `f: G^p -> N` with a quasiaction, the coface maps,
//! the parity boundaries `∂⁺`, `∂⁻` and the relations built from them.
//!
//! Tables are dense and indexed lexicographically: the tuple
//! `(a1, ..., ap)` sits at `a1 m^(p-1) + ... + ap` with `m = |G|`.

mod chain_map;
mod enumerate;
mod quasiaction;
mod relations;

pub use chain_map::{conjugation_quasiaction, exactness_check, push_c, ExactnessReport, PushedCochain};
pub use enumerate::{cochain_count, free_positions, NormalizedCochains};
pub use quasiaction::Quasiaction;
pub use relations::{
    cohomologous_image, is_cobordant, is_cohomologous, is_weak_cohomologous, Convention,
    RelationKind, RelationWitness,
};

use serde::{Deserialize, Serialize};

use crate::error::CochainError;
use crate::groups::{Base, Elem, FiniteGroup};

/// Highest cochain degree the boundary maps accept.
pub const MAX_DEGREE: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

/// `δ = ∂⁺ (∂⁻)^-1` or `δ̄ = (∂⁻)^-1 ∂⁺`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DeltaVariant {
    Delta,
    DeltaBar,
}

/// A dense table `G^p -> N`. Boundary outputs are tables of this type too,
/// so normalization is a property, not an invariant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cochain {
    degree: usize,
    base_order: usize,
    values: Vec<Elem>,
}

impl Cochain {
    pub fn new(degree: usize, base_order: usize, values: Vec<Elem>) -> Result<Self, CochainError> {
        let len = table_len(base_order, degree);
        if values.len() != len {
            return Err(CochainError::DegreeMismatch { expected: len, found: values.len() });
        }
        Ok(Cochain { degree, base_order, values })
    }

    pub fn identity(degree: usize, base_order: usize) -> Self {
        Cochain { degree, base_order, values: vec![0; table_len(base_order, degree)] }
    }

    /// 0-cochain holding a single element.
    pub fn element(base_order: usize, n: Elem) -> Self {
        Cochain { degree: 0, base_order, values: vec![n] }
    }

    pub fn from_fn(degree: usize, base_order: usize, f: impl Fn(&[Elem]) -> Elem) -> Self {
        let mut tuple = vec![0; degree];
        let values = (0..table_len(base_order, degree))
            .map(|idx| {
                decode_into(idx, base_order, &mut tuple);
                f(&tuple)
            })
            .collect();
        Cochain { degree, base_order, values }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base_order(&self) -> usize {
        self.base_order
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Elem> {
        self.values
    }

    pub fn index(&self, tuple: &[Elem]) -> usize {
        encode(tuple, self.base_order)
    }

    pub fn tuple(&self, idx: usize) -> Vec<Elem> {
        let mut t = vec![0; self.degree];
        decode_into(idx, self.base_order, &mut t);
        t
    }

    #[inline]
    pub fn at(&self, tuple: &[Elem]) -> Elem {
        self.values[encode(tuple, self.base_order)]
    }

    /// All argument tuples in table order.
    pub fn tuples(&self) -> impl Iterator<Item = Vec<Elem>> + '_ {
        (0..self.values.len()).map(|i| self.tuple(i))
    }

    /// First tuple containing the identity whose value is not the identity.
    pub fn normalization_defect(&self) -> Option<Vec<Elem>> {
        self.tuples()
            .zip(&self.values)
            .find(|(t, &v)| v != 0 && t.contains(&0))
            .map(|(t, _)| t)
    }

    pub fn is_normalized(&self) -> bool {
        self.normalization_defect().is_none()
    }

    pub fn is_identity(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// Checks that every value is an element of `coeff` and the table is
    /// normalized.
    pub fn validate(&self, coeff: &FiniteGroup) -> Result<(), CochainError> {
        if let Some((i, &v)) = self.values.iter().enumerate().find(|(_, &v)| v >= coeff.order()) {
            return Err(CochainError::ValueOutOfRange { at: self.tuple(i), value: v, order: coeff.order() });
        }
        match self.normalization_defect() {
            Some(t) => Err(CochainError::NotNormalized(t)),
            None => Ok(()),
        }
    }

    /// Pointwise `self · other` in `coeff`.
    pub fn pointwise(&self, coeff: &FiniteGroup, other: &Cochain) -> Cochain {
        debug_assert_eq!(self.values.len(), other.values.len());
        Cochain {
            degree: self.degree,
            base_order: self.base_order,
            values: self.values.iter().zip(&other.values).map(|(&a, &b)| coeff.mul(a, b)).collect(),
        }
    }

    pub fn pointwise_inverse(&self, coeff: &FiniteGroup) -> Cochain {
        self.map(|v| coeff.inv(v))
    }

    pub fn map(&self, f: impl Fn(Elem) -> Elem) -> Cochain {
        Cochain { degree: self.degree, base_order: self.base_order, values: self.values.iter().map(|&v| f(v)).collect() }
    }

    /// Set of values taken.
    pub fn image(&self) -> Vec<Elem> {
        let mut im = self.values.clone();
        im.sort_unstable();
        im.dedup();
        im
    }
}

pub fn table_len(base_order: usize, degree: usize) -> usize {
    base_order.pow(degree as u32)
}

#[inline]
pub(crate) fn encode(tuple: &[Elem], m: usize) -> usize {
    tuple.iter().fold(0, |acc, &a| acc * m + a)
}

#[inline]
pub(crate) fn decode_into(mut idx: usize, m: usize, out: &mut [Elem]) {
    for slot in out.iter_mut().rev() {
        *slot = idx % m;
        idx /= m;
    }
}

/// The standard parity quasicomplex with a fixed quasiaction: `C•(G, N)`
/// with `(f, L)` pairs. The base may be any unital magma.
#[derive(Debug)]
pub struct Quasicomplex<'a, B: Base = FiniteGroup> {
    base: &'a B,
    coeff: &'a FiniteGroup,
    action: &'a Quasiaction,
}

impl<B: Base> Clone for Quasicomplex<'_, B> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<B: Base> Copy for Quasicomplex<'_, B> {}

impl<'a, B: Base> Quasicomplex<'a, B> {
    pub fn new(base: &'a B, coeff: &'a FiniteGroup, action: &'a Quasiaction) -> Result<Self, CochainError> {
        if action.base_order() != base.order() || action.coeff_order() != coeff.order() {
            return Err(CochainError::Incompatible);
        }
        Ok(Quasicomplex { base, coeff, action })
    }

    pub fn base(&self) -> &'a B {
        self.base
    }

    pub fn coeff(&self) -> &'a FiniteGroup {
        self.coeff
    }

    pub fn action(&self) -> &'a Quasiaction {
        self.action
    }

    fn check(&self, c: &Cochain) -> Result<(), CochainError> {
        if c.degree > MAX_DEGREE {
            return Err(CochainError::DegreeOutOfRange { degree: c.degree, max: MAX_DEGREE });
        }
        if c.base_order != self.base.order() {
            return Err(CochainError::Incompatible);
        }
        Ok(())
    }

    /// Value of the `i`-th coface of `c` at a `(p+1)`-tuple. `args` scratch
    /// holds `p` entries.
    #[inline]
    fn coface_at(&self, c: &Cochain, i: usize, t: &[Elem], args: &mut [Elem]) -> Elem {
        let p = c.degree;
        if i == 0 {
            args.copy_from_slice(&t[1..]);
            self.action.apply(t[0], c.at(args))
        } else if i == p + 1 {
            args.copy_from_slice(&t[..p]);
            c.at(args)
        } else {
            args[..i - 1].copy_from_slice(&t[..i - 1]);
            args[i - 1] = self.base.mul(t[i - 1], t[i]);
            args[i..].copy_from_slice(&t[i + 1..]);
            c.at(args)
        }
    }

    /// `∂^i c`, a table of degree `p + 1`.
    pub fn coface(&self, c: &Cochain, i: usize) -> Result<Cochain, CochainError> {
        self.check(c)?;
        if i > c.degree + 1 {
            return Err(CochainError::FaceOutOfRange { index: i, degree: c.degree });
        }
        let mut out = Cochain::identity(c.degree + 1, self.base.order());
        let mut t = vec![0; c.degree + 1];
        let mut args = vec![0; c.degree];
        for idx in 0..out.values.len() {
            decode_into(idx, out.base_order, &mut t);
            out.values[idx] = self.coface_at(c, i, &t, &mut args);
        }
        Ok(out)
    }

    /// Ordered product of cofaces: ascending even indices for `+`,
    /// descending odd indices for `-`.
    pub fn parity_boundary(&self, c: &Cochain, sign: Sign) -> Result<Cochain, CochainError> {
        self.check(c)?;
        let p = c.degree;
        let faces: Vec<usize> = match sign {
            Sign::Plus => (0..=p + 1).filter(|i| i % 2 == 0).collect(),
            Sign::Minus => (0..=p + 1).rev().filter(|i| i % 2 == 1).collect(),
        };
        let mut out = Cochain::identity(p + 1, self.base.order());
        let mut t = vec![0; p + 1];
        let mut args = vec![0; p];
        for idx in 0..out.values.len() {
            decode_into(idx, out.base_order, &mut t);
            out.values[idx] = faces
                .iter()
                .fold(0, |acc, &i| self.coeff.mul(acc, self.coface_at(c, i, &t, &mut args)));
        }
        Ok(out)
    }

    /// The boundaries written out degree by degree, independently of the
    /// coface product.
    pub fn explicit_boundary(&self, c: &Cochain, sign: Sign) -> Result<Cochain, CochainError> {
        self.check(c)?;
        let (n, l, g) = (self.coeff, self.action, self.base);
        let out = match (c.degree, sign) {
            (0, Sign::Plus) => Cochain::from_fn(1, g.order(), |t| l.apply(t[0], c.values[0])),
            (0, Sign::Minus) => Cochain::from_fn(1, g.order(), |_| c.values[0]),
            (1, Sign::Plus) => Cochain::from_fn(2, g.order(), |t| {
                let (a, b) = (t[0], t[1]);
                n.mul(l.apply(a, c.at(&[b])), c.at(&[a]))
            }),
            (1, Sign::Minus) => Cochain::from_fn(2, g.order(), |t| c.at(&[g.mul(t[0], t[1])])),
            (2, Sign::Plus) => Cochain::from_fn(3, g.order(), |t| {
                let (a, b, cc) = (t[0], t[1], t[2]);
                n.mul(l.apply(a, c.at(&[b, cc])), c.at(&[a, g.mul(b, cc)]))
            }),
            (2, Sign::Minus) => Cochain::from_fn(3, g.order(), |t| {
                let (a, b, cc) = (t[0], t[1], t[2]);
                n.mul(c.at(&[a, b]), c.at(&[g.mul(a, b), cc]))
            }),
            (3, Sign::Plus) => Cochain::from_fn(4, g.order(), |t| {
                let (a, b, cc, d) = (t[0], t[1], t[2], t[3]);
                let x = l.apply(a, c.at(&[b, cc, d]));
                let y = c.at(&[a, g.mul(b, cc), d]);
                let z = c.at(&[a, b, cc]);
                n.mul(n.mul(x, y), z)
            }),
            (3, Sign::Minus) => Cochain::from_fn(4, g.order(), |t| {
                let (a, b, cc, d) = (t[0], t[1], t[2], t[3]);
                n.mul(c.at(&[a, b, g.mul(cc, d)]), c.at(&[g.mul(a, b), cc, d]))
            }),
            _ => unreachable!("degree checked"),
        };
        Ok(out)
    }

    pub fn delta(&self, c: &Cochain, variant: DeltaVariant) -> Result<Cochain, CochainError> {
        let plus = self.parity_boundary(c, Sign::Plus)?;
        let minus = self.parity_boundary(c, Sign::Minus)?.pointwise_inverse(self.coeff);
        Ok(match variant {
            DeltaVariant::Delta => plus.pointwise(self.coeff, &minus),
            DeltaVariant::DeltaBar => minus.pointwise(self.coeff, &plus),
        })
    }

    /// First tuple where `∂⁺c` and `∂⁻c` differ.
    pub fn cocycle_defect(&self, c: &Cochain) -> Result<Option<Vec<Elem>>, CochainError> {
        let plus = self.parity_boundary(c, Sign::Plus)?;
        let minus = self.parity_boundary(c, Sign::Minus)?;
        Ok(plus
            .values
            .iter()
            .zip(&minus.values)
            .position(|(a, b)| a != b)
            .map(|i| plus.tuple(i)))
    }

    pub fn is_cocycle(&self, c: &Cochain) -> Result<bool, CochainError> {
        Ok(self.cocycle_defect(c)?.is_none())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::catalog;

    fn z2_setup() -> (FiniteGroup, FiniteGroup, Quasiaction) {
        (catalog::cyclic(2), catalog::cyclic(2), Quasiaction::trivial(2, 2))
    }

    #[test]
    fn table_indexing_round_trips() {
        let c = Cochain::from_fn(3, 4, |t| t[0] * 16 + t[1] * 4 + t[2]);
        for (i, t) in c.tuples().enumerate() {
            assert_eq!(c.index(&t), i);
            assert_eq!(c.at(&t), i);
        }
    }

    #[test]
    fn coface_examples() {
        let (g, n, l) = z2_setup();
        let qc = Quasicomplex::new(&g, &n, &l).unwrap();
        let s = Cochain::new(1, 2, vec![0, 1]).unwrap();
        let d1 = qc.coface(&s, 1).unwrap();
        for t in d1.tuples() {
            assert_eq!(d1.at(&t), s.at(&[g.mul(t[0], t[1])]));
        }
        let f = Cochain::new(2, 2, vec![0, 0, 0, 1]).unwrap();
        assert_eq!(qc.coface(&f, 0).unwrap().at(&[1, 1, 1]), 1);
        assert_eq!(qc.coface(&f, 3).unwrap().at(&[1, 1, 0]), 1);
        assert_eq!(qc.coface(&f, 3).unwrap().at(&[1, 1, 1]), 1);
        assert!(matches!(qc.coface(&f, 4), Err(CochainError::FaceOutOfRange { .. })));
    }

    #[test]
    fn boundary_examples() {
        let (g, n, _) = z2_setup();
        let z3 = catalog::cyclic(3);
        let inv = Quasiaction::from_images(&z3, vec![vec![0, 1, 2], vec![0, 2, 1]]).unwrap();
        let qc = Quasicomplex::new(&g, &z3, &inv).unwrap();
        let c0 = Cochain::element(2, 1);
        assert_eq!(qc.parity_boundary(&c0, Sign::Plus).unwrap().values(), &[1, 2]);
        assert_eq!(qc.parity_boundary(&c0, Sign::Minus).unwrap().values(), &[1, 1]);

        let triv = Quasiaction::trivial(2, 2);
        let qc = Quasicomplex::new(&g, &n, &triv).unwrap();
        let s = Cochain::new(1, 2, vec![0, 1]).unwrap();
        assert_eq!(qc.parity_boundary(&s, Sign::Plus).unwrap().at(&[1, 1]), 0);
        assert_eq!(qc.parity_boundary(&s, Sign::Minus).unwrap().at(&[1, 1]), 0);
        assert!(qc.is_cocycle(&s).unwrap());
        assert!(qc.delta(&s, DeltaVariant::Delta).unwrap().is_identity());
        let one = Cochain::identity(2, 2);
        assert!(qc.parity_boundary(&one, Sign::Plus).unwrap().is_identity());
        assert!(qc.parity_boundary(&one, Sign::Minus).unwrap().is_identity());
    }

    #[test]
    fn every_normalized_2_cochain_on_z2_is_a_cocycle() {
        let (g, n, l) = z2_setup();
        let qc = Quasicomplex::new(&g, &n, &l).unwrap();
        let all: Vec<Cochain> = NormalizedCochains::new(2, 2, 2).collect();
        assert_eq!(all.len(), 2);
        assert!(all.iter().all(|c| qc.is_cocycle(c).unwrap()));
    }

    #[test]
    fn degree_bound() {
        let (g, n, l) = z2_setup();
        let qc = Quasicomplex::new(&g, &n, &l).unwrap();
        let c = Cochain::identity(4, 2);
        assert!(matches!(
            qc.parity_boundary(&c, Sign::Plus),
            Err(CochainError::DegreeOutOfRange { degree: 4, max: 3 })
        ));
    }

    #[test]
    fn delta_of_a_morphism_with_conjugation_action_vanishes() {
        use crate::groups::conjugation_map;
        let g = catalog::cyclic(2);
        let s3 = catalog::symmetric(3);
        let refl = catalog::elements_of_order(&s3, 2)[0];
        let s = Cochain::new(1, 2, vec![0, refl]).unwrap();
        let l = Quasiaction::new(vec![conjugation_map(&s3, 0), conjugation_map(&s3, refl)]).unwrap();
        let qc = Quasicomplex::new(&g, &s3, &l).unwrap();
        assert!(qc.delta(&s, DeltaVariant::Delta).unwrap().is_identity());
    }

    #[test]
    fn delta_of_a_1_cochain_matches_the_closed_form() {
        let g = catalog::cyclic(3);
        let s3 = catalog::symmetric(3);
        let aut = crate::groups::automorphism_group(&s3, 12).unwrap();
        for l_idx in [vec![0, 1, 2], vec![0, 3, 5]] {
            let l = Quasiaction::from_indices(&aut, &l_idx).unwrap();
            let qc = Quasicomplex::new(&g, &s3, &l).unwrap();
            for s in NormalizedCochains::new(3, 6, 1) {
                let d = qc.delta(&s, DeltaVariant::Delta).unwrap();
                for t in d.tuples() {
                    let (a, b) = (t[0], t[1]);
                    let want = s3.mul(s3.mul(l.apply(a, s.at(&[b])), s.at(&[a])), s3.inv(s.at(&[g.mul(a, b)])));
                    assert_eq!(d.at(&t), want);
                }
            }
        }
    }
}

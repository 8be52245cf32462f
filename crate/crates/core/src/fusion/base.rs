use std::sync::Arc;

use num_traits::{One, Zero};

use crate::algebra::{check_hom, AlgebraHom, FDAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{format_scalar, one, rational_sqrt, LinearMap, Scalar, Space, SparseVec};

/// A unital algebra `C` with two surjections `π1: C → C1`, `π2: C → C2`
/// that are jointly surjective onto `C1 ⊕ C2`.
#[derive(Clone, Debug)]
pub struct BaseWithEnds {
    algebra: Arc<FDAlgebra>,
    pi1: AlgebraHom,
    pi2: AlgebraHom,
}

impl BaseWithEnds {
    pub fn new(pi1: AlgebraHom, pi2: AlgebraHom) -> Result<Self> {
        if pi1.source().space() != pi2.source().space() {
            return Err(Error::Invalid("π1 and π2 have different sources".into()));
        }
        for (name, pi) in [("π1", &pi1), ("π2", &pi2)] {
            let hr = check_hom(pi);
            if !hr.passed() {
                return Err(Error::CheckFailed(format!(
                    "{name} is not an algebra map: {}",
                    hr.report
                )));
            }
            if !hr.surjective {
                return Err(Error::Invalid(format!("{name} is not surjective")));
            }
        }
        let (d1, d2) = (pi1.target().dim(), pi2.target().dim());
        let stacked: Vec<SparseVec> = (0..pi1.source().dim())
            .map(|j| pi1.map().column(j).add(&pi2.map().column(j).reindex(|i| i + d1)))
            .collect();
        let combined = LinearMap::new(
            pi1.source().space().clone(),
            pi1.target().space().direct_sum(pi2.target().space()),
            stacked,
        )?;
        if combined.rank() != d1 + d2 {
            return Err(Error::Invalid("π1⊕π2 is not surjective".into()));
        }
        Ok(BaseWithEnds {
            algebra: pi1.source().clone(),
            pi1,
            pi2,
        })
    }

    pub fn algebra(&self) -> &Arc<FDAlgebra> {
        &self.algebra
    }

    pub fn pi1(&self) -> &AlgebraHom {
        &self.pi1
    }

    pub fn pi2(&self) -> &AlgebraHom {
        &self.pi2
    }
}

/// Functions on the chain `{0, 1/m, …, 1}`, with `π1 = ev₁` and `π2 = ev₀`.
/// Points are indexed `0..=m`.
#[derive(Clone, Debug)]
pub struct ChainInterval {
    m: usize,
    base: BaseWithEnds,
}

impl ChainInterval {
    pub fn new(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Invalid("chain resolution must be at least 1".into()));
        }
        let points = Space::new((0..=m).map(|k| format!("t{k}")).collect())?;
        let c = Arc::new(FDAlgebra::functions(format!("C[0..{m}]"), points));
        let k = Arc::new(FDAlgebra::ground());
        let pi1 = AlgebraHom::new(c.clone(), k.clone(), evaluation(&c, m))?;
        let pi2 = AlgebraHom::new(c, k, evaluation(pi1.source(), 0))?;
        Ok(ChainInterval {
            m,
            base: BaseWithEnds::new(pi1, pi2)?,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn points(&self) -> usize {
        self.m + 1
    }

    pub fn base(&self) -> &BaseWithEnds {
        &self.base
    }

    pub fn algebra(&self) -> &Arc<FDAlgebra> {
        self.base.algebra()
    }

    /// Evaluation at point `k` as a map `C → k`.
    pub fn ev(&self, k: usize) -> LinearMap {
        evaluation(self.algebra(), k)
    }
}

fn evaluation(c: &FDAlgebra, k: usize) -> LinearMap {
    let cols = (0..c.dim())
        .map(|j| if j == k { SparseVec::unit(0) } else { SparseVec::zero() })
        .collect();
    LinearMap::new(c.space().clone(), Space::scalars(), cols).expect("dims")
}

/// Commuting `s, s′ ∈ C` with `s² + s′² = 1`, `π2(s) = 0`, `π1(s′) = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct SqrtPair {
    s: SparseVec,
    s_prime: SparseVec,
}

impl SqrtPair {
    pub fn new(base: &BaseWithEnds, s: SparseVec, s_prime: SparseVec) -> Result<Self> {
        let c = base.algebra();
        let n = c.dim();
        if s.support_bound() > n || s_prime.support_bound() > n {
            return Err(Error::InvalidSqrtPair("entries outside the base algebra".into()));
        }
        if c.mul(&s, &s).add(&c.mul(&s_prime, &s_prime)) != *c.unit() {
            return Err(Error::InvalidSqrtPair("s² + s′² ≠ 1".into()));
        }
        if c.mul(&s, &s_prime) != c.mul(&s_prime, &s) {
            return Err(Error::InvalidSqrtPair("s and s′ do not commute".into()));
        }
        if !base.pi2().map().apply(&s).is_zero() {
            return Err(Error::InvalidSqrtPair("π2(s) ≠ 0".into()));
        }
        if !base.pi1().map().apply(&s_prime).is_zero() {
            return Err(Error::InvalidSqrtPair("π1(s′) ≠ 0".into()));
        }
        Ok(SqrtPair { s, s_prime })
    }

    pub fn s(&self) -> &SparseVec {
        &self.s
    }

    pub fn s_prime(&self) -> &SparseVec {
        &self.s_prime
    }
}

/// `s` given pointwise; `s′ = √(1 − s²)` taken pointwise as the nonnegative
/// rational root.
pub fn make_sqrt_pair(chain: &ChainInterval, profile: &[Scalar]) -> Result<SqrtPair> {
    if profile.len() != chain.points() {
        return Err(Error::Invalid(format!(
            "profile has {} values, chain has {} points",
            profile.len(),
            chain.points()
        )));
    }
    if !profile[0].is_zero() {
        return Err(Error::EndpointConstraint(format!(
            "s(0) = {}, expected 0",
            format_scalar(&profile[0])
        )));
    }
    if !profile[chain.m()].is_one() {
        return Err(Error::EndpointConstraint(format!(
            "s({}) = {}, expected 1",
            chain.m(),
            format_scalar(&profile[chain.m()])
        )));
    }
    let mut roots = Vec::with_capacity(profile.len());
    for (k, x) in profile.iter().enumerate() {
        let rest = one() - x * x;
        let root = rational_sqrt(&rest).ok_or_else(|| Error::NotASquare {
            point: k,
            value: format_scalar(&rest),
        })?;
        roots.push(root);
    }
    SqrtPair::new(
        chain.base(),
        SparseVec::from_dense(profile),
        SparseVec::from_dense(&roots),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, ratio};

    #[test]
    fn chain_ends() {
        let c = ChainInterval::new(2).unwrap();
        assert!(c.algebra().is_commutative());
        assert_eq!(c.base().pi1().map().column(2), &SparseVec::unit(0));
        assert!(c.base().pi1().map().column(0).is_zero());
        assert_eq!(c.base().pi2().map().column(0), &SparseVec::unit(0));
        assert!(ChainInterval::new(0).is_err());
    }

    #[test]
    fn sqrt_profiles() {
        let c1 = ChainInterval::new(1).unwrap();
        let sq = make_sqrt_pair(&c1, &[int(0), int(1)]).unwrap();
        assert_eq!(sq.s(), &SparseVec::unit(1));
        assert_eq!(sq.s_prime(), &SparseVec::unit(0));

        let c2 = ChainInterval::new(2).unwrap();
        let sq = make_sqrt_pair(&c2, &[int(0), ratio(3, 5), int(1)]).unwrap();
        assert_eq!(sq.s_prime().to_dense(3), vec![int(1), ratio(4, 5), int(0)]);

        let err = make_sqrt_pair(&c2, &[int(0), ratio(1, 2), int(1)]).unwrap_err();
        assert!(matches!(err, Error::NotASquare { point: 1, .. }), "{err}");
        let err = make_sqrt_pair(&c2, &[ratio(3, 5), ratio(3, 5), int(1)]).unwrap_err();
        assert!(matches!(err, Error::EndpointConstraint(_)));
    }

    #[test]
    fn raw_pair_validation() {
        let c = ChainInterval::new(1).unwrap();
        let swapped = SqrtPair::new(c.base(), SparseVec::unit(0), SparseVec::unit(1));
        assert!(swapped.is_err());
    }
}

use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

use crate::algebra::FDAlgebra;
use crate::comodule::ComoduleAlgebra;
use crate::error::{Error, Result};
use crate::hopf::function_hopf;
use crate::linalg::{one, LinearMap, Space, SparseVec};

use super::FiniteGroup;

/// A finite set with a right action, `action[x][g] = x·g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGSet {
    group: Arc<FiniteGroup>,
    action: Vec<Vec<usize>>,
}

impl FiniteGSet {
    pub fn new(group: Arc<FiniteGroup>, action: Vec<Vec<usize>>) -> Result<Self> {
        let n = action.len();
        let order = group.order();
        for (x, row) in action.iter().enumerate() {
            if row.len() != order {
                return Err(Error::InvalidAction(format!(
                    "row {x} has {} entries, group order {order}",
                    row.len()
                )));
            }
            if let Some(&y) = row.iter().find(|&&y| y >= n) {
                return Err(Error::InvalidAction(format!("point {x} sent to {y}, outside 0..{n}")));
            }
            if row[group.identity()] != x {
                return Err(Error::InvalidAction(format!("{x}·e ≠ {x}")));
            }
            for g in 0..order {
                for h in 0..order {
                    if action[row[g]][h] != row[group.mul(g, h)] {
                        return Err(Error::InvalidAction(format!(
                            "({x}·{})·{} ≠ {x}·({}{})",
                            group.element_name(g),
                            group.element_name(h),
                            group.element_name(g),
                            group.element_name(h)
                        )));
                    }
                }
            }
        }
        Ok(FiniteGSet { group, action })
    }

    /// `G` acting on itself by right multiplication.
    pub fn regular(group: Arc<FiniteGroup>) -> Self {
        let action = (0..group.order())
            .map(|x| (0..group.order()).map(|g| group.mul(x, g)).collect())
            .collect();
        FiniteGSet { group, action }
    }

    pub fn trivial(group: Arc<FiniteGroup>, points: usize) -> Self {
        let action = (0..points).map(|x| vec![x; group.order()]).collect();
        FiniteGSet { group, action }
    }

    /// Points of `self` first, then those of `other` shifted.
    pub fn disjoint_union(&self, other: &FiniteGSet) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::InvalidAction("disjoint union over different groups".into()));
        }
        let shift = self.len();
        let mut action = self.action.clone();
        action.extend(other.action.iter().map(|row| row.iter().map(|y| y + shift).collect()));
        Ok(FiniteGSet {
            group: self.group.clone(),
            action,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.action.len()
    }

    pub fn is_empty(&self) -> bool {
        self.action.is_empty()
    }

    pub fn act(&self, x: usize, g: usize) -> usize {
        self.action[x][g]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.action
    }

    pub fn stabilizer(&self, x: usize) -> Vec<usize> {
        (0..self.group.order()).filter(|&g| self.action[x][g] == x).collect()
    }

    pub fn orbits(&self) -> Vec<BTreeSet<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for x in 0..self.len() {
            if !seen[x] {
                let orbit: BTreeSet<usize> = self.action[x].iter().copied().collect();
                for &y in &orbit {
                    seen[y] = true;
                }
                out.push(orbit);
            }
        }
        out
    }
}

/// `x·g = x` only for `g = e`, by brute force.
pub fn is_free(a: &FiniteGSet) -> bool {
    let e = a.group.identity();
    (0..a.len()).all(|x| (0..a.group.order()).all(|g| g == e || a.act(x, g) != x))
}

/// Every right action of `group` on `{0, …, points-1}`: all assignments of
/// permutations to a generating set that extend to an action.
pub fn enumerate_actions(group: &Arc<FiniteGroup>, points: usize) -> Vec<FiniteGSet> {
    let gens = group.generators();
    let perms = super::group::permutations(points);
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    loop {
        if let Some(a) = extend_action(group, &gens, &choice.iter().map(|&c| &perms[c]).collect::<Vec<_>>()) {
            out.push(a);
        }
        let mut k = 0;
        loop {
            if k == choice.len() {
                return out;
            }
            choice[k] += 1;
            if choice[k] < perms.len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

fn extend_action(group: &Arc<FiniteGroup>, gens: &[usize], images: &[&Vec<usize>]) -> Option<FiniteGSet> {
    let n = images.first().map_or(0, |p| p.len());
    let order = group.order();
    // element g ↦ the permutation x ↦ x·g
    let mut perm_of: Vec<Option<Vec<usize>>> = vec![None; order];
    perm_of[group.identity()] = Some((0..n).collect());
    let mut queue = VecDeque::from([group.identity()]);
    while let Some(a) = queue.pop_front() {
        let pa = perm_of[a].clone().expect("visited");
        for (&s, ps) in gens.iter().zip(images) {
            let b = group.mul(a, s);
            let pb: Vec<usize> = pa.iter().map(|&y| ps[y]).collect();
            match &perm_of[b] {
                Some(existing) if *existing != pb => return None,
                Some(_) => {}
                None => {
                    perm_of[b] = Some(pb);
                    queue.push_back(b);
                }
            }
        }
    }
    let perms: Vec<Vec<usize>> = perm_of.into_iter().collect::<Option<_>>()?;
    let action = (0..n).map(|x| (0..order).map(|g| perms[g][x]).collect()).collect();
    FiniteGSet::new(group.clone(), action).ok()
}

/// `Fun(X)` over `Fun(G)` with `δ(f)(x, g) = f(x·g)`.
pub fn fun_comodule(a: &FiniteGSet) -> ComoduleAlgebra {
    let points = Space::new((0..a.len()).map(|x| format!("χ{x}")).collect()).expect("distinct labels");
    let p = Arc::new(FDAlgebra::functions(format!("Fun(X{})", a.len()), points));
    let h = Arc::new(function_hopf(&a.group));
    let nh = h.dim();
    let mut cols = vec![Vec::new(); a.len()];
    for x in 0..a.len() {
        for g in 0..nh {
            cols[a.act(x, g)].push((x * nh + g, one()));
        }
    }
    let cols = cols.into_iter().map(SparseVec::from_pairs).collect();
    let target = p.space().tensor(h.space());
    let delta = LinearMap::new(p.space().clone(), target, cols).expect("dims");
    ComoduleAlgebra::new(p, h, delta).expect("dims")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comodule::{check_comodule, coinvariants};

    fn z(n: usize) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(n))
    }

    #[test]
    fn freeness_examples() {
        assert!(is_free(&FiniteGSet::regular(z(4))));
        assert!(!is_free(&FiniteGSet::trivial(z(2), 3)));
        let through_quotient =
            FiniteGSet::new(z(4), (0..2).map(|x| (0..4).map(|g| (x + g) % 2).collect()).collect()).unwrap();
        assert!(!is_free(&through_quotient));
        assert_eq!(through_quotient.stabilizer(0), vec![0, 2]);
    }

    #[test]
    fn rejects_non_action() {
        assert!(FiniteGSet::new(z(3), vec![vec![0, 1, 0], vec![1, 0, 1]]).is_err());
    }

    #[test]
    fn action_counts() {
        // homomorphisms Z/n → S_k
        assert_eq!(enumerate_actions(&z(2), 3).len(), 4);
        assert_eq!(enumerate_actions(&z(3), 3).len(), 3);
        assert_eq!(enumerate_actions(&z(2), 4).len(), 10);
        assert_eq!(enumerate_actions(&z(3), 4).len(), 9);
        let s3 = Arc::new(FiniteGroup::symmetric(3));
        assert_eq!(enumerate_actions(&s3, 3).len(), 10);
    }

    #[test]
    fn regular_coaction_checks() {
        let pa = fun_comodule(&FiniteGSet::regular(z(2)));
        assert!(check_comodule(&pa).passed());
        let two = FiniteGSet::regular(z(2))
            .disjoint_union(&FiniteGSet::regular(z(2)))
            .unwrap();
        let pa = fun_comodule(&two);
        assert_eq!(coinvariants(&pa).unwrap().dim(), 2);
        assert_eq!(two.orbits().len(), 2);
    }

    #[test]
    fn trivial_group_gives_trivial_coaction() {
        let pa = fun_comodule(&FiniteGSet::trivial(Arc::new(FiniteGroup::trivial()), 3));
        let triv = ComoduleAlgebra::trivial(pa.algebra().clone(), pa.hopf().clone());
        assert!(pa.coaction().same_matrix(triv.coaction()));
    }
}

use crate::error::{Error, Result};

/// A finite group given by its multiplication table over `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Validates closure, associativity, identity and inverses.
    pub fn from_table(name: impl Into<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!(
                    "row {a} has length {}, expected {n}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::InvalidGroup(format!("entry {bad} in row {a} out of range")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let inverses = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| table[a][b] == identity && table[b][a] == identity)
                    .ok_or_else(|| Error::InvalidGroup(format!("element {a} has no inverse")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FiniteGroup {
            name: name.into(),
            names: (0..n).map(|i| i.to_string()).collect(),
            table,
            identity,
            inverses,
        })
    }

    pub fn with_element_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.order() {
            return Err(Error::InvalidGroup("wrong number of element names".into()));
        }
        self.names = names;
        Ok(self)
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0, "cyclic group of order 0");
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(format!("Z/{n}"), table).expect("cyclic table is a group")
    }

    /// Direct product; element `(a, b)` has index `a * |other| + b`.
    pub fn product(&self, other: &FiniteGroup) -> Self {
        let m = other.order();
        let n = self.order() * m;
        let table = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| self.mul(x / m, y / m) * m + other.mul(x % m, y % m))
                    .collect()
            })
            .collect();
        let names = (0..n)
            .map(|x| format!("({},{})", self.names[x / m], other.names[x % m]))
            .collect();
        Self::from_table(format!("{}×{}", self.name, other.name), table)
            .expect("product of groups")
            .with_element_names(names)
            .expect("names")
    }

    /// Symmetric group on `n` letters; permutations in lexicographic order,
    /// `(p·q)(i) = p(q(i))`.
    pub fn symmetric(n: usize) -> Self {
        let perms = permutations(n);
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).expect("closed");
        let table = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| index(&(0..n).map(|i| p[q[i]]).collect()))
                    .collect()
            })
            .collect();
        let names = perms
            .iter()
            .map(|p| p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(""))
            .collect();
        Self::from_table(format!("S{n}"), table)
            .expect("symmetric group")
            .with_element_names(names)
            .expect("names")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn element_name(&self, g: usize) -> &str {
        &self.names[g]
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// A small generating set, chosen greedily in index order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.closure(&gens);
        for g in 0..self.order() {
            if !span[g] {
                gens.push(g);
                span = self.closure(&gens);
            }
        }
        gens
    }

    fn closure(&self, gens: &[usize]) -> Vec<bool> {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut stack = vec![self.identity];
        while let Some(a) = stack.pop() {
            for &g in gens {
                let b = self.mul(a, g);
                if !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
        seen
    }
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, n, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], n, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builders_are_groups() {
        for g in [
            FiniteGroup::trivial(),
            FiniteGroup::cyclic(4),
            FiniteGroup::cyclic(2).product(&FiniteGroup::cyclic(2)),
            FiniteGroup::symmetric(3),
        ] {
            assert!(FiniteGroup::from_table("copy", g.table().to_vec()).is_ok());
        }
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert_eq!(s3.generators().len(), 2);
        assert_eq!(FiniteGroup::cyclic(4).generators(), vec![1]);
    }

    #[test]
    fn invalid_tables() {
        assert!(FiniteGroup::from_table("x", vec![]).is_err());
        assert!(FiniteGroup::from_table("x", vec![vec![0, 1], vec![0, 1]]).is_err());
        assert!(FiniteGroup::from_table("x", vec![vec![0, 2], vec![1, 0]]).is_err());
    }
}

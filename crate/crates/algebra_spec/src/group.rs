//! Finite group multiplication tables.

use crate::error::SpecError;

/// A validated finite group given by its multiplication table.
///
/// `table[a][b]` is the index of the product `a·b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl GroupTable {
    /// Validate a multiplication table (closure, associativity, identity and
    /// inverses).
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self, SpecError> {
        let n = table.len();
        if n == 0 {
            return Err(SpecError::InvalidGroup("empty table".into()));
        }
        if names.len() != n {
            return Err(SpecError::InvalidGroup(format!(
                "{} names for {n} elements",
                names.len()
            )));
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n || row.iter().any(|&c| c >= n) {
                return Err(SpecError::InvalidGroup(format!("row {a} is malformed")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(SpecError::InvalidGroup(format!(
                            "not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| SpecError::InvalidGroup("no identity element".into()))?;
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| SpecError::InvalidGroup(format!("element {a} has no inverse")))?;
            inverse.push(inv);
        }
        Ok(Self {
            names,
            table,
            identity,
            inverse,
        })
    }

    /// Cyclic group `Z_m` with elements `e, g, g², …`.
    pub fn cyclic(m: usize) -> Self {
        let names = (0..m)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{k}"),
            })
            .collect();
        let table = (0..m)
            .map(|a| (0..m).map(|b| (a + b) % m).collect())
            .collect();
        Self::new(names, table).expect("cyclic table is a group")
    }

    /// Trivial group.
    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// Symmetric group on three letters.
    ///
    /// Elements are the permutations of `(0, 1, 2)` in lexicographic order of
    /// their image tuples; the product is composition `(p·q)(i) = p(q(i))`.
    pub fn symmetric3() -> Self {
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("permutation");
        let table = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| index([p[q[0]], p[q[1]], p[q[2]]]))
                    .collect()
            })
            .collect();
        let names = perms
            .iter()
            .map(|p| format!("({}{}{})", p[0], p[1], p[2]))
            .collect();
        Self::new(names, table).expect("S3 table is a group")
    }

    /// Group order.
    pub fn order(&self) -> usize {
        self.table.len()
    }

    /// Element names.
    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Index of `a·b`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    /// Index of the identity.
    pub fn identity(&self) -> usize {
        self.identity
    }

    /// Index of `a⁻¹`.
    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_is_non_abelian() {
        let g = GroupTable::symmetric3();
        assert!((0..6).any(|a| (0..6).any(|b| g.mul(a, b) != g.mul(b, a))));
    }

    #[test]
    fn rejects_non_group() {
        let t = vec![vec![0, 0], vec![0, 1]];
        assert!(GroupTable::new(vec!["a".into(), "b".into()], t).is_err());
    }
}

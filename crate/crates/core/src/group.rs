//! Finite groups given by explicit multiplication tables.
//!
//! Only four families are supported: the dihedral group `D_2n`, the
//! generalized quaternion group `Q_4n`, the semidihedral group `SD_8n` and the
//! cyclic group `Z_n`. Each is generated by a rotation `a` and (except for the
//! cyclic group) a reflection-like element `b`, and every element has the
//! normal form `a^i` or `a^i b`.
//!
//! Element indices are canonical: `a^i` has index `i` and `a^i b` has index
//! `k + i`, where `k` is the order of `a`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The group families with hard-coded multiplication rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `D_2n = <a, b | a^n = b^2 = e, ba = a^-1 b>`, order `2n`.
    #[serde(rename = "d2n")]
    Dihedral,
    /// `Q_4n = <a, b | a^2n = e, a^n = b^2, ba = a^-1 b>`, order `4n`.
    #[serde(rename = "q4n")]
    Quaternion,
    /// `SD_8n = <a, b | a^4n = b^2 = e, ba = a^(2n-1) b>`, order `8n`.
    #[serde(rename = "sd8n")]
    Semidihedral,
    /// `Z_n = <a | a^n = e>`, order `n`.
    Cyclic,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::Dihedral,
        Family::Quaternion,
        Family::Semidihedral,
        Family::Cyclic,
    ];

    /// Smallest admissible parameter `n`.
    pub fn min_parameter(self) -> usize {
        match self {
            Family::Dihedral => 3,
            Family::Quaternion | Family::Semidihedral => 2,
            Family::Cyclic => 1,
        }
    }

    /// Order of the rotation `a`.
    pub fn rotation_order(self, n: usize) -> usize {
        match self {
            Family::Dihedral | Family::Cyclic => n,
            Family::Quaternion => 2 * n,
            Family::Semidihedral => 4 * n,
        }
    }

    pub fn group_order(self, n: usize) -> usize {
        match self {
            Family::Cyclic => n,
            _ => 2 * self.rotation_order(n),
        }
    }

    pub fn short_name(self) -> &'static str {
        match self {
            Family::Dihedral => "d2n",
            Family::Quaternion => "q4n",
            Family::Semidihedral => "sd8n",
            Family::Cyclic => "cyclic",
        }
    }

    /// Conventional name of the member with parameter `n`, e.g. `SD_16`.
    pub fn display_name(self, n: usize) -> String {
        match self {
            Family::Dihedral => format!("D_{}", 2 * n),
            Family::Quaternion => format!("Q_{}", 4 * n),
            Family::Semidihedral => format!("SD_{}", 8 * n),
            Family::Cyclic => format!("Z_{n}"),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "d2n" | "dihedral" => Ok(Family::Dihedral),
            "q4n" | "quaternion" | "dicyclic" => Ok(Family::Quaternion),
            "sd8n" | "semidihedral" => Ok(Family::Semidihedral),
            "cyclic" | "zn" => Ok(Family::Cyclic),
            other => Err(format!(
                "unknown group family `{other}` (expected d2n, q4n, sd8n or cyclic)"
            )),
        }
    }
}

/// A finite group stored as a full Cayley table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    family: Family,
    parameter: usize,
    rotations: usize,
    order: usize,
    product: Vec<usize>,
    inverse: Vec<usize>,
    labels: Vec<String>,
}

/// Builds the Cayley table of `family` with parameter `n`.
pub fn build_group(family: Family, n: usize) -> Result<GroupTable> {
    let min = family.min_parameter();
    if n < min {
        return Err(Error::ParameterOutOfRange { family, n, min });
    }
    let k = family.rotation_order(n);
    let order = family.group_order(n);

    // Exponent of a in b a^j b^-1, and the exponent of a in b^2.
    let twist = |j: usize| -> usize {
        match family {
            Family::Dihedral | Family::Quaternion => (k - j % k) % k,
            Family::Semidihedral => (j * (2 * n - 1)) % k,
            Family::Cyclic => unreachable!("cyclic groups have no reflections"),
        }
    };
    let b_squared = match family {
        Family::Quaternion => n,
        _ => 0,
    };

    let mut product = vec![0; order * order];
    for x in 0..order {
        let (i, x_refl) = (x % k, x >= k);
        for y in 0..order {
            let (j, y_refl) = (y % k, y >= k);
            let z = match (x_refl, y_refl) {
                (false, false) => (i + j) % k,
                (false, true) => k + (i + j) % k,
                (true, false) => k + (i + twist(j)) % k,
                (true, true) => (i + twist(j) + b_squared) % k,
            };
            product[x * order + y] = z;
        }
    }

    let mut inverse = vec![0; order];
    for x in 0..order {
        inverse[x] = (0..order)
            .find(|&y| product[x * order + y] == 0)
            .expect("every row of a group table contains the identity");
    }

    let labels = (0..order).map(|x| element_label(x % k, x >= k)).collect();

    Ok(GroupTable {
        family,
        parameter: n,
        rotations: k,
        order,
        product,
        inverse,
        labels,
    })
}

fn element_label(exponent: usize, reflection: bool) -> String {
    let rotation = match exponent {
        0 => None,
        1 => Some("a".to_string()),
        i => Some(format!("a^{i}")),
    };
    match (rotation, reflection) {
        (None, false) => "e".to_string(),
        (None, true) => "b".to_string(),
        (Some(r), false) => r,
        (Some(r), true) => format!("{r}*b"),
    }
}

impl GroupTable {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn parameter(&self) -> usize {
        self.parameter
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Index of the identity element. Always `0` in the canonical layout.
    pub fn identity(&self) -> usize {
        0
    }

    /// Order of the generator `a`; also the number of rotations.
    pub fn rotation_count(&self) -> usize {
        self.rotations
    }

    /// Index of `a^i`.
    pub fn rotation(&self, i: usize) -> usize {
        i % self.rotations
    }

    /// Index of `a^i b`, or `None` for cyclic groups.
    pub fn reflection(&self, i: usize) -> Option<usize> {
        (self.order > self.rotations).then(|| self.rotations + i % self.rotations)
    }

    pub fn is_rotation(&self, g: usize) -> bool {
        g < self.rotations
    }

    #[inline]
    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.product[g * self.order + h]
    }

    #[inline]
    pub fn inverse(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Index of the element with the given canonical label.
    pub fn element_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn pow(&self, g: usize, e: usize) -> usize {
        (0..e).fold(self.identity(), |acc, _| self.mul(acc, g))
    }

    pub fn commute(&self, g: usize, h: usize) -> bool {
        self.mul(g, h) == self.mul(h, g)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|g| (g + 1..self.order).all(|h| self.commute(g, h)))
    }

    /// Exhaustively checks the Latin-square, identity, inverse and
    /// associativity axioms. Cubic in the order.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.order;
        let e = self.identity();
        for g in 0..n {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for h in 0..n {
                row[self.mul(g, h)] = true;
                col[self.mul(h, g)] = true;
            }
            if !row.iter().all(|&seen| seen) {
                return Err(Error::AxiomViolation(format!(
                    "row {g} is not a permutation"
                )));
            }
            if !col.iter().all(|&seen| seen) {
                return Err(Error::AxiomViolation(format!(
                    "column {g} is not a permutation"
                )));
            }
            if self.mul(e, g) != g || self.mul(g, e) != g {
                return Err(Error::AxiomViolation(format!(
                    "identity fails on {}",
                    self.label(g)
                )));
            }
            if self.mul(g, self.inverse(g)) != e || self.mul(self.inverse(g), g) != e {
                return Err(Error::AxiomViolation(format!(
                    "inverse fails on {}",
                    self.label(g)
                )));
            }
        }
        for x in 0..n {
            for y in 0..n {
                let xy = self.mul(x, y);
                for z in 0..n {
                    if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                        return Err(Error::AxiomViolation(format!(
                            "({}*{})*{} != {}*({}*{})",
                            self.label(x),
                            self.label(y),
                            self.label(z),
                            self.label(x),
                            self.label(y),
                            self.label(z)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Smallest `k >= 1` with `g^k = e`.
    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != self.identity() {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// Elements commuting with every element of the group.
    pub fn center(&self) -> BTreeSet<usize> {
        (0..self.order)
            .filter(|&z| (0..self.order).all(|g| self.commute(z, g)))
            .collect()
    }

    /// Orbits of the conjugation action, found by brute-force closure.
    pub fn conjugacy_classes(&self) -> Partition {
        let mut block_of = vec![usize::MAX; self.order];
        let mut blocks = Vec::new();
        for x in 0..self.order {
            if block_of[x] != usize::MAX {
                continue;
            }
            let id = blocks.len();
            let class: BTreeSet<usize> = (0..self.order)
                .map(|g| self.mul(self.mul(g, x), self.inverse(g)))
                .collect();
            for &y in &class {
                block_of[y] = id;
            }
            blocks.push(class.into_iter().collect());
        }
        Partition { block_of, blocks }
    }

    /// Blocks of elements sharing the same element order.
    pub fn order_partition(&self) -> Partition {
        let orders: Vec<usize> = (0..self.order).map(|g| self.element_order(g)).collect();
        Partition::from_keys(&orders)
    }

    /// The equality relation: every element in its own block.
    pub fn equality_partition(&self) -> Partition {
        Partition::discrete(self.order)
    }

    /// The cyclic subgroup `<g>` as a sorted list of indices.
    pub fn cyclic_subgroup(&self, g: usize) -> Vec<usize> {
        let mut members = vec![self.identity()];
        let mut x = g;
        while x != self.identity() {
            members.push(x);
            x = self.mul(x, g);
        }
        members.sort_unstable();
        members
    }

    /// All distinct cyclic subgroups, sorted by (size, members).
    pub fn cyclic_subgroups(&self) -> Vec<Vec<usize>> {
        let all: BTreeSet<(usize, Vec<usize>)> = (0..self.order)
            .map(|g| {
                let h = self.cyclic_subgroup(g);
                (h.len(), h)
            })
            .collect();
        all.into_iter().map(|(_, h)| h).collect()
    }

    /// Cyclic subgroups not properly contained in another cyclic subgroup.
    pub fn maximal_cyclic_subgroups(&self) -> Vec<Vec<usize>> {
        let all = self.cyclic_subgroups();
        let membership: Vec<Vec<bool>> = all
            .iter()
            .map(|h| {
                let mut m = vec![false; self.order];
                h.iter().for_each(|&x| m[x] = true);
                m
            })
            .collect();
        all.iter()
            .enumerate()
            .filter(|(i, h)| {
                !all.iter().enumerate().any(|(j, big)| {
                    j != *i && big.len() > h.len() && h.iter().all(|&x| membership[j][x])
                })
            })
            .map(|(_, h)| h.clone())
            .collect()
    }
}

/// An equivalence relation on `0..N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    block_of: Vec<usize>,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    /// Singletons only.
    pub fn discrete(n: usize) -> Self {
        Partition {
            block_of: (0..n).collect(),
            blocks: (0..n).map(|x| vec![x]).collect(),
        }
    }

    /// Groups indices with equal keys. Blocks are ordered by their smallest
    /// member.
    pub fn from_keys<K: Eq>(keys: &[K]) -> Self {
        let mut block_of = vec![usize::MAX; keys.len()];
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for x in 0..keys.len() {
            if block_of[x] != usize::MAX {
                continue;
            }
            let id = blocks.len();
            let block: Vec<usize> = (x..keys.len()).filter(|&y| keys[y] == keys[x]).collect();
            for &y in &block {
                block_of[y] = id;
            }
            blocks.push(block);
        }
        Partition { block_of, blocks }
    }

    /// Validates and normalizes a list of blocks over `0..n`.
    pub fn from_blocks(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut owner = vec![usize::MAX; n];
        for (id, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition(format!("block {id} is empty")));
            }
            for &x in block {
                if x >= n {
                    return Err(Error::InvalidPartition(format!("element {x} out of range")));
                }
                if owner[x] != usize::MAX {
                    return Err(Error::InvalidPartition(format!(
                        "element {x} appears twice"
                    )));
                }
                owner[x] = id;
            }
        }
        if let Some(x) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::InvalidPartition(format!(
                "element {x} is not covered"
            )));
        }
        Ok(Partition::from_keys(&owner))
    }

    pub fn ground_size(&self) -> usize {
        self.block_of.len()
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.block_of[x]
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block(&self, id: usize) -> &[usize] {
        &self.blocks[id]
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn same_block(&self, x: usize, y: usize) -> bool {
        self.block_of[x] == self.block_of[y]
    }

    /// True if every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.blocks
            .iter()
            .all(|b| b.iter().all(|&x| coarser.same_block(x, b[0])))
    }

    /// Blocks as sorted sets, sorted; convenient for order-free comparison.
    pub fn block_sets(&self) -> BTreeSet<BTreeSet<usize>> {
        self.blocks
            .iter()
            .map(|b| b.iter().copied().collect())
            .collect()
    }
}

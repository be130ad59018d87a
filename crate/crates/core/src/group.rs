//! Finite groups as multiplication tables with a designated generating set,
//! relator words, and one word per element.
//!
//! Elements are plain indices into the table; index 0 is always the
//! identity.

use std::collections::VecDeque;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Groups up to this order get an exhaustive associativity check.
const EXHAUSTIVE_ASSOC_LIMIT: usize = 512;
const SAMPLED_ASSOC_TRIPLES: usize = 200_000;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("dihedral group needs n >= 3, got {0}")]
    DihedralTooSmall(usize),
    #[error("abelian group needs at least one cyclic factor")]
    NoFactors,
    #[error("cyclic factor of order 0")]
    ZeroOrder,
    #[error("multiplication table is not a group table: {0}")]
    NotAGroup(String),
    #[error("element index {0} out of range")]
    BadElement(usize),
    #[error("generator reference {0} out of range")]
    BadGenerator(i64),
    #[error("relator {index} evaluates to element {value}, not the identity")]
    RelatorNotIdentity { index: usize, value: usize },
    #[error("generators do not generate the group: {unreached} elements unreached")]
    NotGenerating { unreached: usize },
}

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn gen(gen: usize) -> Self {
        Letter { gen, inverse: false }
    }

    pub fn inv(gen: usize) -> Self {
        Letter { gen, inverse: true }
    }

    /// Signed encoding used in JSON: `+(i+1)` for s_i, `-(i+1)` for s_i^{-1}.
    pub fn to_signed(self) -> i64 {
        let v = self.gen as i64 + 1;
        if self.inverse {
            -v
        } else {
            v
        }
    }

    pub fn from_signed(v: i64, generators: usize) -> Result<Self, GroupError> {
        if v == 0 || v.unsigned_abs() as usize > generators {
            return Err(GroupError::BadGenerator(v));
        }
        Ok(Letter {
            gen: v.unsigned_abs() as usize - 1,
            inverse: v < 0,
        })
    }
}

pub type Word = Vec<Letter>;

/// How a group was built; drives element naming and the JSON echo.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupKind {
    /// Elements r^a s^b at index a + n*b.
    Dihedral { n: usize },
    /// Direct product of cyclic groups of the given orders (all >= 2).
    Abelian { orders: Vec<usize> },
    Table,
}

/// JSON description of a group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupSpec {
    Dihedral { n: usize },
    Abelian { orders: Vec<usize> },
    Table {
        mul: Vec<Vec<usize>>,
        generators: Vec<usize>,
        relators: Vec<Vec<i64>>,
    },
}

#[derive(Clone)]
pub struct Group {
    kind: GroupKind,
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    generators: Vec<usize>,
    relators: Vec<Word>,
    words: Vec<Word>,
    names: Vec<String>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("kind", &self.kind)
            .field("order", &self.order)
            .field("generators", &self.generators)
            .finish()
    }
}

impl Group {
    /// D_{2n} = <r, s | r^n, s^2, (rs)^2>, elements r^0..r^{n-1}, s..r^{n-1}s.
    pub fn dihedral(n: usize) -> Result<Self, GroupError> {
        if n < 3 {
            return Err(GroupError::DihedralTooSmall(n));
        }
        let order = 2 * n;
        let idx = |a: usize, b: usize| a % n + n * b;
        let mut mul = vec![0; order * order];
        for x in 0..order {
            let (a, b) = (x % n, x / n);
            for y in 0..order {
                let (c, d) = (y % n, y / n);
                // r^a s^b r^c s^d = r^{a + (-1)^b c} s^{b+d}
                let rot = if b == 0 { a + c } else { a + n - c };
                mul[x * order + y] = idx(rot, (b + d) % 2);
            }
        }
        let (r, s) = (Letter::gen(0), Letter::gen(1));
        let relators = vec![vec![r; n], vec![s, s], vec![r, s, r, s]];
        let mut words = Vec::with_capacity(order);
        for b in 0..2 {
            for a in 0..n {
                let mut w = vec![r; a];
                if b == 1 {
                    w.push(s);
                }
                words.push(w);
            }
        }
        let names = (0..order)
            .map(|x| {
                let (a, b) = (x % n, x / n);
                let rot = match a {
                    0 => String::new(),
                    1 => "r".to_string(),
                    _ => format!("r^{a}"),
                };
                match (rot.is_empty(), b) {
                    (true, 0) => "e".to_string(),
                    (false, 0) => rot,
                    (true, _) => "s".to_string(),
                    (false, _) => format!("{rot}*s"),
                }
            })
            .collect();
        Self::assemble(
            GroupKind::Dihedral { n },
            mul,
            vec![idx(1, 0), idx(0, 1)],
            relators,
            Some(words),
            names,
        )
    }

    /// C_{m_1} x ... x C_{m_k} on generators x_1..x_k. Factors of order 1
    /// are dropped. Elements are exponent tuples in lexicographic order.
    pub fn abelian(orders: &[usize]) -> Result<Self, GroupError> {
        if orders.is_empty() {
            return Err(GroupError::NoFactors);
        }
        if orders.contains(&0) {
            return Err(GroupError::ZeroOrder);
        }
        let orders: Vec<usize> = orders.iter().copied().filter(|&m| m > 1).collect();
        let k = orders.len();
        let order: usize = orders.iter().product();
        let digits = |mut x: usize| {
            let mut e = vec![0; k];
            for i in (0..k).rev() {
                e[i] = x % orders[i];
                x /= orders[i];
            }
            e
        };
        let index = |e: &[usize]| e.iter().zip(&orders).fold(0, |acc, (&ei, &m)| acc * m + ei);
        let mut mul = vec![0; order * order];
        for x in 0..order {
            let ex = digits(x);
            for y in 0..order {
                let ey = digits(y);
                let sum: Vec<usize> = (0..k).map(|i| (ex[i] + ey[i]) % orders[i]).collect();
                mul[x * order + y] = index(&sum);
            }
        }
        let generators: Vec<usize> = (0..k)
            .map(|i| {
                let mut e = vec![0; k];
                e[i] = 1;
                index(&e)
            })
            .collect();
        let relators = abelian_relators(&orders);
        let names = (0..order)
            .map(|x| {
                let parts: Vec<String> = digits(x)
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{e}", i + 1) })
                    .collect();
                if parts.is_empty() {
                    "e".to_string()
                } else {
                    parts.join("*")
                }
            })
            .collect();
        Self::assemble(GroupKind::Abelian { orders }, mul, generators, relators, None, names)
    }

    /// Explicit table. `mul[i][j]` is the index of g_i g_j; g_0 must be the
    /// identity.
    pub fn from_table(mul: &[Vec<usize>], generators: &[usize], relators: &[Vec<i64>]) -> Result<Self, GroupError> {
        let order = mul.len();
        if order == 0 || mul.iter().any(|row| row.len() != order) {
            return Err(GroupError::NotAGroup("table must be square and nonempty".into()));
        }
        let flat: Vec<usize> = mul.iter().flatten().copied().collect();
        if let Some(&bad) = flat.iter().find(|&&x| x >= order) {
            return Err(GroupError::BadElement(bad));
        }
        if let Some(&bad) = generators.iter().find(|&&g| g >= order) {
            return Err(GroupError::BadElement(bad));
        }
        let relators = relators
            .iter()
            .map(|w| w.iter().map(|&v| Letter::from_signed(v, generators.len())).collect())
            .collect::<Result<Vec<Word>, _>>()?;
        let names = (0..order).map(|i| format!("g{i}")).collect();
        Self::assemble(GroupKind::Table, flat, generators.to_vec(), relators, None, names)
    }

    pub fn from_spec(spec: &GroupSpec) -> Result<Self, GroupError> {
        match spec {
            GroupSpec::Dihedral { n } => Self::dihedral(*n),
            GroupSpec::Abelian { orders } => Self::abelian(orders),
            GroupSpec::Table {
                mul,
                generators,
                relators,
            } => Self::from_table(mul, generators, relators),
        }
    }

    pub fn spec(&self) -> GroupSpec {
        match &self.kind {
            GroupKind::Dihedral { n } => GroupSpec::Dihedral { n: *n },
            GroupKind::Abelian { orders } => GroupSpec::Abelian { orders: orders.clone() },
            GroupKind::Table => GroupSpec::Table {
                mul: self.mul.chunks(self.order).map(<[usize]>::to_vec).collect(),
                generators: self.generators.clone(),
                relators: self
                    .relators
                    .iter()
                    .map(|w| w.iter().map(|l| l.to_signed()).collect())
                    .collect(),
            },
        }
    }

    /// Same table and element names, different presentation. Element words
    /// are reassigned by breadth-first search.
    pub fn with_presentation(&self, generators: &[usize], relators: Vec<Word>) -> Result<Self, GroupError> {
        if let Some(&bad) = generators.iter().find(|&&g| g >= self.order) {
            return Err(GroupError::BadElement(bad));
        }
        Self::assemble(
            self.kind.clone(),
            self.mul.clone(),
            generators.to_vec(),
            relators,
            None,
            self.names.clone(),
        )
    }

    fn assemble(
        kind: GroupKind,
        mul: Vec<usize>,
        generators: Vec<usize>,
        relators: Vec<Word>,
        words: Option<Vec<Word>>,
        names: Vec<String>,
    ) -> Result<Self, GroupError> {
        let order = (mul.len() as f64).sqrt() as usize;
        debug_assert_eq!(order * order, mul.len());
        let mut g = Group {
            kind,
            order,
            mul,
            inv: Vec::new(),
            generators,
            relators,
            words: Vec::new(),
            names,
        };
        g.validate_table()?;
        for (i, t) in g.relators.iter().enumerate() {
            let value = g.evaluate(t);
            if value != 0 {
                return Err(GroupError::RelatorNotIdentity { index: i, value });
            }
        }
        g.words = match words {
            Some(w) => w,
            None => g.assign_words()?,
        };
        debug_assert!(g.words.iter().enumerate().all(|(x, w)| g.evaluate(w) == x));
        Ok(g)
    }

    fn validate_table(&mut self) -> Result<(), GroupError> {
        let n = self.order;
        for x in 0..n {
            if self.mul(0, x) != x || self.mul(x, 0) != x {
                return Err(GroupError::NotAGroup(format!("element 0 is not an identity for {x}")));
            }
        }
        // Latin square rows and columns give two-sided inverses.
        let mut inv = vec![usize::MAX; n];
        for x in 0..n {
            let mut seen_row = vec![false; n];
            let mut seen_col = vec![false; n];
            for y in 0..n {
                let a = self.mul(x, y);
                let b = self.mul(y, x);
                if seen_row[a] || seen_col[b] {
                    return Err(GroupError::NotAGroup(format!("row or column {x} repeats an entry")));
                }
                seen_row[a] = true;
                seen_col[b] = true;
                if a == 0 {
                    inv[x] = y;
                }
            }
        }
        if n <= EXHAUSTIVE_ASSOC_LIMIT {
            for x in 0..n {
                for y in 0..n {
                    let xy = self.mul(x, y);
                    for z in 0..n {
                        if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                            return Err(GroupError::NotAGroup(format!("({x}*{y})*{z} != {x}*({y}*{z})")));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..SAMPLED_ASSOC_TRIPLES {
                let (x, y, z) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)) {
                    return Err(GroupError::NotAGroup(format!("({x}*{y})*{z} != {x}*({y}*{z})")));
                }
            }
        }
        self.inv = inv;
        Ok(())
    }

    /// Breadth-first search of the Cayley graph from the identity, expanding
    /// generators in order and then their inverses, appending letters on
    /// the right. Each element gets the first shortest word found.
    pub fn assign_words(&self) -> Result<Vec<Word>, GroupError> {
        let letters: Vec<Letter> = (0..self.generators.len())
            .map(Letter::gen)
            .chain((0..self.generators.len()).map(Letter::inv))
            .collect();
        let mut words: Vec<Option<Word>> = vec![None; self.order];
        words[0] = Some(Vec::new());
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &l in &letters {
                let y = self.mul(x, self.letter_value(l));
                if words[y].is_none() {
                    let mut w = words[x].clone().unwrap();
                    w.push(l);
                    words[y] = Some(w);
                    queue.push_back(y);
                }
            }
        }
        let unreached = words.iter().filter(|w| w.is_none()).count();
        if unreached > 0 {
            return Err(GroupError::NotGenerating { unreached });
        }
        Ok(words.into_iter().map(Option::unwrap).collect())
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.order + y]
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inv[x]
    }

    /// Checked product for externally supplied indices.
    pub fn try_mul(&self, x: usize, y: usize) -> Result<usize, GroupError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul(x, y))
    }

    pub fn check(&self, x: usize) -> Result<usize, GroupError> {
        if x < self.order {
            Ok(x)
        } else {
            Err(GroupError::BadElement(x))
        }
    }

    pub fn pow(&self, x: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(x) } else { x };
        (0..k.unsigned_abs()).fold(0, |acc, _| self.mul(acc, base))
    }

    /// Least k >= 1 with x^k = 1.
    pub fn element_order(&self, x: usize) -> usize {
        let mut y = x;
        let mut k = 1;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// The fixed word for each element.
    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn word(&self, x: usize) -> &Word {
        &self.words[x]
    }

    pub fn letter_value(&self, l: Letter) -> usize {
        let g = self.generators[l.gen];
        if l.inverse {
            self.inv(g)
        } else {
            g
        }
    }

    pub fn evaluate(&self, w: &[Letter]) -> usize {
        w.iter().fold(0, |acc, &l| self.mul(acc, self.letter_value(l)))
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn commutes(&self, x: usize, y: usize) -> bool {
        self.mul(x, y) == self.mul(y, x)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|x| (0..x).all(|y| self.commutes(x, y)))
    }

    /// Z(G) in index order.
    pub fn center(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&z| (0..self.order).all(|g| self.commutes(z, g)))
            .collect()
    }

    /// Dihedral rotation/reflection coordinates (a, b) of r^a s^b.
    pub fn dihedral_coords(&self, x: usize) -> Option<(usize, usize)> {
        match self.kind {
            GroupKind::Dihedral { n } => Some((x % n, x / n)),
            _ => None,
        }
    }

    /// Index of r^a s^b in a dihedral group (a taken mod n).
    pub fn dihedral_elem(&self, a: i64, b: usize) -> Option<usize> {
        match self.kind {
            GroupKind::Dihedral { n } => Some(a.rem_euclid(n as i64) as usize + n * (b % 2)),
            _ => None,
        }
    }
}

/// x_i^{m_i} for each factor and x_i x_j x_i^{-1} x_j^{-1} for i < j.
pub fn abelian_relators(orders: &[usize]) -> Vec<Word> {
    let k = orders.len();
    let mut relators: Vec<Word> = orders.iter().enumerate().map(|(i, &m)| vec![Letter::gen(i); m]).collect();
    for i in 0..k {
        for j in i + 1..k {
            relators.push(vec![Letter::gen(i), Letter::gen(j), Letter::inv(i), Letter::inv(j)]);
        }
    }
    relators
}

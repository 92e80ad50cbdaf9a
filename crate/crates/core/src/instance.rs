//! The problem data model: instances, solutions, and objective evaluation.

use std::cmp::Ordering;
use std::fmt;

use crate::cost::Cost;
use crate::error::{CopicError, Result};
use crate::families::FamilySpec;

/// A sorted, duplicate-free set of element indices.
///
/// Sets are ordered like the binary numbers of their incidence vectors
/// (`∅ < {0} < {1} < {0,1} < {2} …`): the set holding the largest element of
/// the symmetric difference is the greater one. Enumeration and every
/// "smallest set" tie rule use this order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Subset(Vec<usize>);

impl Subset {
    pub fn new(mut items: Vec<usize>) -> Self {
        items.sort_unstable();
        items.dedup();
        Subset(items)
    }

    pub fn empty() -> Self {
        Subset(Vec::new())
    }

    pub fn full(n: usize) -> Self {
        Subset((0..n).collect())
    }

    pub fn from_mask(mask: u64) -> Self {
        Subset((0..64).filter(|b| mask >> b & 1 == 1).collect())
    }

    pub fn from_indicator(x: &[bool]) -> Self {
        Subset(
            x.iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(i, _)| i)
                .collect(),
        )
    }

    pub fn indicator(&self, n: usize) -> Vec<bool> {
        let mut x = vec![false; n];
        for &i in &self.0 {
            x[i] = true;
        }
        x
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        Subset(
            self.0
                .iter()
                .copied()
                .filter(|&i| other.contains(i))
                .collect(),
        )
    }

    pub fn union(&self, other: &Subset) -> Subset {
        Subset::new(self.0.iter().chain(other.0.iter()).copied().collect())
    }

    pub fn max_element(&self) -> Option<usize> {
        self.0.last().copied()
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.0.iter().rev();
        let mut b = other.0.iter().rev();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(x), Some(y)) if x != y => return x.cmp(y),
                _ => {}
            }
        }
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl From<Vec<usize>> for Subset {
    fn from(v: Vec<usize>) -> Self {
        Subset::new(v)
    }
}

impl<const N: usize> From<[usize; N]> for Subset {
    fn from(v: [usize; N]) -> Self {
        Subset::new(v.to_vec())
    }
}

/// Dense row-major matrix of costs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Cost>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Cost::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Cost>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(CopicError::Domain("ragged matrix rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience for tests and generators.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&v| Cost::int(v)))
            .collect();
        Matrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Cost) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Cost {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Cost) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Cost] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> impl Iterator<Item = &Cost> {
        self.data.iter()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Cost::is_zero)
    }

    pub fn to_rows(&self) -> Vec<Vec<Cost>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
}

/// Diagonal interaction: `q_ii = a_i`, zero elsewhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalCosts {
    pub a: Vec<Cost>,
}

impl DiagonalCosts {
    pub fn new(a: Vec<Cost>) -> Self {
        DiagonalCosts { a }
    }

    pub fn expand(&self) -> Matrix {
        let n = self.a.len();
        Matrix::from_fn(n, n, |i, j| {
            if i == j {
                self.a[i].clone()
            } else {
                Cost::zero()
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Interaction {
    Dense(Matrix),
    Diagonal(DiagonalCosts),
}

impl Interaction {
    pub fn rows(&self) -> usize {
        match self {
            Interaction::Dense(q) => q.rows(),
            Interaction::Diagonal(d) => d.a.len(),
        }
    }

    pub fn cols(&self) -> usize {
        match self {
            Interaction::Dense(q) => q.cols(),
            Interaction::Diagonal(d) => d.a.len(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Cost {
        match self {
            Interaction::Dense(q) => q.get(i, j).clone(),
            Interaction::Diagonal(d) if i == j => d.a[i].clone(),
            Interaction::Diagonal(_) => Cost::zero(),
        }
    }

    pub fn to_matrix(&self) -> Matrix {
        match self {
            Interaction::Dense(q) => q.clone(),
            Interaction::Diagonal(d) => d.expand(),
        }
    }

    /// The diagonal vector when the interaction is square with zero off-diagonal.
    pub fn diagonal(&self) -> Option<Vec<Cost>> {
        match self {
            Interaction::Diagonal(d) => Some(d.a.clone()),
            Interaction::Dense(q) => {
                if q.rows() != q.cols() {
                    return None;
                }
                for i in 0..q.rows() {
                    for j in 0..q.cols() {
                        if i != j && !q.get(i, j).is_zero() {
                            return None;
                        }
                    }
                }
                Some((0..q.rows()).map(|i| q.get(i, i).clone()).collect())
            }
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            Interaction::Dense(q) => q.entries().all(Cost::is_finite),
            Interaction::Diagonal(d) => d.a.iter().all(Cost::is_finite),
        }
    }

    pub fn transpose(&self) -> Interaction {
        match self {
            Interaction::Dense(q) => Interaction::Dense(q.transpose()),
            Interaction::Diagonal(d) => Interaction::Diagonal(d.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub m: usize,
    pub n: usize,
    pub q: Interaction,
    pub c: Vec<Cost>,
    pub d: Vec<Cost>,
    pub family1: FamilySpec,
    pub family2: FamilySpec,
}

impl Instance {
    /// Builds and validates an instance.
    pub fn new(
        q: Interaction,
        c: Vec<Cost>,
        d: Vec<Cost>,
        family1: FamilySpec,
        family2: FamilySpec,
    ) -> Result<Self> {
        let inst = Instance {
            m: c.len(),
            n: d.len(),
            q,
            c,
            d,
            family1,
            family2,
        };
        let violations = validate_instance(&inst);
        if violations.is_empty() {
            Ok(inst)
        } else {
            Err(CopicError::InvalidInstance(violations))
        }
    }

    pub fn q(&self, i: usize, j: usize) -> Cost {
        self.q.get(i, j)
    }

    /// Swaps the roles of the two sides (`Qᵀ`, `c ↔ d`, `F1 ↔ F2`).
    pub fn transposed(&self) -> Instance {
        Instance {
            m: self.n,
            n: self.m,
            q: self.q.transpose(),
            c: self.d.clone(),
            d: self.c.clone(),
            family1: self.family2.clone(),
            family2: self.family1.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub s1: Subset,
    pub s2: Subset,
    pub objective: Cost,
}

impl Solution {
    pub fn flipped(self) -> Solution {
        Solution {
            s1: self.s2,
            s2: self.s1,
            objective: self.objective,
        }
    }
}

/// `f(S1,S2) = Σ q_ij + Σ c_i + Σ d_j`; `+inf` iff a selected `q_ij` is `+inf`.
pub fn evaluate_objective(instance: &Instance, s1: &[usize], s2: &[usize]) -> Result<Cost> {
    if let Some(&i) = s1.iter().find(|&&i| i >= instance.m) {
        return Err(CopicError::Domain(format!(
            "s1 index {i} out of range 0..{}",
            instance.m
        )));
    }
    if let Some(&j) = s2.iter().find(|&&j| j >= instance.n) {
        return Err(CopicError::Domain(format!(
            "s2 index {j} out of range 0..{}",
            instance.n
        )));
    }
    let mut total = Cost::zero();
    match &instance.q {
        Interaction::Dense(q) => {
            for &i in s1 {
                for &j in s2 {
                    total += q.get(i, j);
                }
            }
        }
        Interaction::Diagonal(diag) => {
            let in_s2 = {
                let mut mark = vec![false; instance.n];
                for &j in s2 {
                    mark[j] = true;
                }
                mark
            };
            for &i in s1 {
                if in_s2[i] {
                    total += &diag.a[i];
                }
            }
        }
    }
    for &i in s1 {
        total += &instance.c[i];
    }
    for &j in s2 {
        total += &instance.d[j];
    }
    Ok(total)
}

/// Lists every violated instance invariant; empty when the instance is well formed.
pub fn validate_instance(instance: &Instance) -> Vec<String> {
    let mut out = Vec::new();
    if instance.q.rows() != instance.m || instance.q.cols() != instance.n {
        out.push(format!(
            "Q shape mismatch: expected {}x{}, got {}x{}",
            instance.m,
            instance.n,
            instance.q.rows(),
            instance.q.cols()
        ));
    }
    if let Interaction::Diagonal(_) = instance.q {
        if instance.m != instance.n {
            out.push("diagonal Q requires m = n".into());
        }
    }
    if instance.c.len() != instance.m {
        out.push("c length mismatch".into());
    }
    if instance.d.len() != instance.n {
        out.push("d length mismatch".into());
    }
    if instance.c.iter().chain(instance.d.iter()).any(Cost::is_inf) {
        out.push("inf outside Q".into());
    }
    if instance.family1.ground_size() != instance.m {
        out.push(format!(
            "family1 ground size {} differs from m = {}",
            instance.family1.ground_size(),
            instance.m
        ));
    }
    if instance.family2.ground_size() != instance.n {
        out.push(format!(
            "family2 ground size {} differs from n = {}",
            instance.family2.ground_size(),
            instance.n
        ));
    }
    for v in instance.family1.validate() {
        out.push(format!("family1: {v}"));
    }
    for v in instance.family2.validate() {
        out.push(format!("family2: {v}"));
    }
    out
}

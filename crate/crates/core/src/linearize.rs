//! Linearizability: deciding whether the interaction term can be replaced
//! by linear costs `Σ_{i∈S1} a_i + Σ_{j∈S2} b_j` on every feasible pair,
//! and constructing such vectors when it can.
//!
//! Anchor indices are 0-based: every identity is written relative to index 0.

use num_traits::Zero;

use crate::bruteforce::interaction_sum;
use crate::cost::{Cost, Rational};
use crate::error::{CopicError, Result};
use crate::families::{enumerate, lcop_solve_avoiding, FamilySpec};
use crate::instance::{Instance, Matrix, Subset};
use crate::linalg::IncrementalSystem;

pub const DEFAULT_PATTERN_CAP: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Linearizable,
    NotLinearizable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Linearization {
    pub a: Vec<Rational>,
    pub b: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessTerm {
    pub coefficient: Rational,
    pub s1: Subset,
    pub s2: Subset,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// A decomposition identity fails at this index tuple.
    Identity {
        indices: Vec<usize>,
        residual: Rational,
    },
    /// Feasible pairs whose weighted incidence vectors cancel while their
    /// weighted interaction sums add up to `residual`. No choice of `(a, b)`
    /// can satisfy all of them.
    Combination {
        terms: Vec<WitnessTerm>,
        residual: Rational,
    },
}

impl Witness {
    pub fn residual(&self) -> &Rational {
        match self {
            Witness::Identity { residual, .. } | Witness::Combination { residual, .. } => residual,
        }
    }

    /// For pair combinations: re-derives the residual from `instance` and
    /// checks that the incidence vectors cancel. Identity witnesses only
    /// need a nonzero residual.
    pub fn verify(&self, instance: &Instance) -> bool {
        match self {
            Witness::Identity { residual, .. } => !residual.is_zero(),
            Witness::Combination { terms, residual } => {
                let mut inc = vec![Rational::zero(); instance.m + instance.n];
                let mut total = Rational::zero();
                for t in terms {
                    for i in t.s1.iter() {
                        inc[i] += &t.coefficient;
                    }
                    for j in t.s2.iter() {
                        inc[instance.m + j] += &t.coefficient;
                    }
                    match interaction_sum(&instance.q, &t.s1, &t.s2) {
                        Cost::Finite(v) => total += &t.coefficient * v,
                        Cost::Inf => return false,
                    }
                }
                inc.iter().all(Zero::is_zero) && total == *residual && !residual.is_zero()
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearizabilityCertificate {
    pub verdict: Verdict,
    pub vectors: Option<Linearization>,
    pub witness: Option<Witness>,
}

impl LinearizabilityCertificate {
    pub fn linearizable(vectors: Linearization) -> Self {
        LinearizabilityCertificate {
            verdict: Verdict::Linearizable,
            vectors: Some(vectors),
            witness: None,
        }
    }

    pub fn not_linearizable(witness: Witness) -> Self {
        LinearizabilityCertificate {
            verdict: Verdict::NotLinearizable,
            vectors: None,
            witness: Some(witness),
        }
    }

    pub fn is_linearizable(&self) -> bool {
        self.verdict == Verdict::Linearizable
    }
}

/// Constants `K` of the constant objective property: for side 1 one per
/// column (`Σ_{i∈S1} q_ij = K_j`), for side 2 one per row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantObjectiveCertificate {
    pub side: u8,
    pub constants: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CvpOutcome {
    Member(ConstantObjectiveCertificate),
    /// Line `line` (a column for side 1, a row for side 2) sums differently
    /// over two feasible sets.
    NotMember {
        line: usize,
        first: Subset,
        second: Subset,
        first_sum: Rational,
        second_sum: Rational,
    },
}

/// A failed decomposition identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityViolation {
    pub indices: Vec<usize>,
    pub residual: Rational,
}

/// Dense row-major tensor of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor {
    pub dims: Vec<usize>,
    pub data: Vec<Rational>,
}

impl Tensor {
    pub fn from_fn(dims: Vec<usize>, mut f: impl FnMut(&[usize]) -> Rational) -> Self {
        let len = dims.iter().product();
        let mut data = Vec::with_capacity(len);
        let mut idx = vec![0usize; dims.len()];
        for _ in 0..len {
            data.push(f(&idx));
            advance(&mut idx, &dims);
        }
        Tensor { dims, data }
    }

    pub fn zeros(dims: Vec<usize>) -> Self {
        Tensor::from_fn(dims, |_| Rational::zero())
    }

    pub fn offset(&self, idx: &[usize]) -> usize {
        idx.iter()
            .zip(&self.dims)
            .fold(0, |acc, (&i, &d)| acc * d + i)
    }

    pub fn get(&self, idx: &[usize]) -> &Rational {
        &self.data[self.offset(idx)]
    }

    pub fn multi_index(&self, mut offset: usize) -> Vec<usize> {
        let mut idx = vec![0; self.dims.len()];
        for (slot, &d) in idx.iter_mut().zip(&self.dims).rev() {
            *slot = offset % d;
            offset /= d;
        }
        idx
    }
}

fn advance(idx: &mut [usize], dims: &[usize]) {
    for p in (0..idx.len()).rev() {
        idx[p] += 1;
        if idx[p] < dims[p] {
            return;
        }
        idx[p] = 0;
    }
}

fn rational_rows(q: &Matrix) -> Result<Vec<Vec<Rational>>> {
    (0..q.rows())
        .map(|i| {
            q.row(i)
                .iter()
                .map(|c| {
                    c.finite()
                        .cloned()
                        .ok_or_else(|| CopicError::Domain("matrix entries must be finite".into()))
                })
                .collect()
        })
        .collect()
}

fn half() -> Rational {
    Rational::new(1.into(), 2.into())
}

fn third() -> Rational {
    Rational::new(1.into(), 3.into())
}

/// Row and column terms `(a, b)`.
pub type Potentials = (Vec<Rational>, Vec<Rational>);

/// `q_ij = a_i + b_j` holds iff `q_ij − q_i0 − q_0j + q_00 = 0` everywhere;
/// then `a_i = q_i0`, `b_j = q_0j − q_00`.
pub fn check_2index_decomposition(
    q: &Matrix,
) -> Result<std::result::Result<Potentials, IdentityViolation>> {
    let rows = rational_rows(q)?;
    if rows.is_empty() || rows[0].is_empty() {
        return Ok(Ok((
            vec![Rational::zero(); q.rows()],
            vec![Rational::zero(); q.cols()],
        )));
    }
    for (i, row) in rows.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            let residual = v - &row[0] - &rows[0][j] + &rows[0][0];
            if !residual.is_zero() {
                return Ok(Err(IdentityViolation {
                    indices: vec![i, j],
                    residual,
                }));
            }
        }
    }
    let a = rows.iter().map(|r| r[0].clone()).collect();
    let b = rows[0].iter().map(|v| v - &rows[0][0]).collect();
    Ok(Ok((a, b)))
}

/// Components of `t_ijk = a_ij + b_ik + c_jk`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeIndexDecomposition {
    pub a: Tensor,
    pub b: Tensor,
    pub c: Tensor,
}

/// Checks `t_000 + t_ij0 + t_0jk + t_i0k = t_00k + t_ijk + t_0j0 + t_i00`
/// for every `(i,j,k)` in lexicographic order, and on success builds
/// `a_ij = t_ij0 − ½t_0j0 − ½t_i00 + ⅓t_000` and the analogous `b`, `c`.
pub fn check_3index_decomposition(
    t: &Tensor,
) -> Result<std::result::Result<ThreeIndexDecomposition, IdentityViolation>> {
    if t.dims.len() != 3 {
        return Err(CopicError::Domain(format!(
            "expected a 3-index tensor, got {} indices",
            t.dims.len()
        )));
    }
    let (d0, d1, d2) = (t.dims[0], t.dims[1], t.dims[2]);
    if d0 == 0 || d1 == 0 || d2 == 0 {
        return Ok(Ok(ThreeIndexDecomposition {
            a: Tensor::zeros(vec![d0, d1]),
            b: Tensor::zeros(vec![d0, d2]),
            c: Tensor::zeros(vec![d1, d2]),
        }));
    }
    let g = |i: usize, j: usize, k: usize| t.get(&[i, j, k]);
    for i in 0..d0 {
        for j in 0..d1 {
            for k in 0..d2 {
                let residual = g(0, 0, k) + g(i, j, k) + g(0, j, 0) + g(i, 0, 0)
                    - g(0, 0, 0)
                    - g(i, j, 0)
                    - g(0, j, k)
                    - g(i, 0, k);
                if !residual.is_zero() {
                    return Ok(Err(IdentityViolation {
                        indices: vec![i, j, k],
                        residual,
                    }));
                }
            }
        }
    }
    let (h, th) = (half(), third());
    let base = &th * g(0, 0, 0);
    let a = Tensor::from_fn(vec![d0, d1], |x| {
        g(x[0], x[1], 0) - &h * g(0, x[1], 0) - &h * g(x[0], 0, 0) + &base
    });
    let b = Tensor::from_fn(vec![d0, d2], |x| {
        g(x[0], 0, x[1]) - &h * g(0, 0, x[1]) - &h * g(x[0], 0, 0) + &base
    });
    let c = Tensor::from_fn(vec![d1, d2], |x| {
        g(0, x[0], x[1]) - &h * g(0, 0, x[1]) - &h * g(0, x[0], 0) + &base
    });
    Ok(Ok(ThreeIndexDecomposition { a, b, c }))
}

/// Solves `t[x] = Σ_p component_p[x restricted to patterns[p]]` exactly.
/// Components come back in pattern order, each indexed by its pattern's
/// coordinates in ascending order. On failure reports the first entry (in
/// row-major order) that contradicts the earlier ones.
pub fn check_pattern_decomposition(
    t: &Tensor,
    patterns: &[Vec<usize>],
    cap: u64,
) -> Result<std::result::Result<Vec<Tensor>, IdentityViolation>> {
    let order = t.dims.len();
    let mut pats: Vec<Vec<usize>> = Vec::new();
    for p in patterns {
        let mut p = p.clone();
        p.sort_unstable();
        p.dedup();
        if p.iter().any(|&c| c >= order) {
            return Err(CopicError::Domain(format!(
                "pattern {p:?} names a coordinate outside 0..{order}"
            )));
        }
        if p.len() == order {
            return Err(CopicError::Domain(
                "patterns must be proper index subsets".into(),
            ));
        }
        pats.push(p);
    }
    let shapes: Vec<Vec<usize>> = pats
        .iter()
        .map(|p| p.iter().map(|&c| t.dims[c]).collect())
        .collect();
    let offsets: Vec<usize> = shapes
        .iter()
        .scan(0usize, |acc, s| {
            let start = *acc;
            *acc += s.iter().product::<usize>();
            Some(start)
        })
        .collect();
    let unknowns: usize = shapes.iter().map(|s| s.iter().product::<usize>()).sum();
    if (t.data.len() as u128) * (unknowns as u128) > cap as u128 {
        return Err(CopicError::ResourceLimit {
            what: "pattern system size".into(),
            cap,
        });
    }
    let mut sys = IncrementalSystem::new(unknowns);
    let mut idx = vec![0usize; order];
    let one = Rational::from_integer(1.into());
    for e in 0..t.data.len() {
        let mut row = vec![Rational::zero(); unknowns];
        for (p, pat) in pats.iter().enumerate() {
            let local = pat
                .iter()
                .zip(&shapes[p])
                .fold(0, |acc, (&c, &d)| acc * d + idx[c]);
            row[offsets[p] + local] = one.clone();
        }
        if let Err(bad) = sys.push(e, row, t.data[e].clone()) {
            return Ok(Err(IdentityViolation {
                indices: idx.clone(),
                residual: bad.residual,
            }));
        }
        advance(&mut idx, &t.dims);
    }
    let x = sys.solution();
    let comps = shapes
        .into_iter()
        .zip(offsets)
        .map(|(shape, start)| {
            let len = shape.iter().product::<usize>();
            Tensor {
                dims: shape,
                data: x[start..start + len].to_vec(),
            }
        })
        .collect();
    Ok(Ok(comps))
}

fn sum_over(r: &[Rational], s: &Subset) -> Rational {
    s.iter().map(|i| &r[i]).sum()
}

/// The only member, if the family has exactly one feasible set.
fn single_member(family: &FamilySpec) -> Option<Subset> {
    match enumerate(family, 1) {
        Ok(mut v) if v.len() == 1 => v.pop(),
        _ => None,
    }
}

fn is_empty_family(family: &FamilySpec) -> bool {
    matches!(enumerate(family, 1), Ok(v) if v.is_empty())
}

enum LineOutcome {
    Constant(Rational),
    Differs(Subset, Subset),
}

/// Two spanning trees of a complete simple graph differing only by
/// swapping edge `e0` for edge `e`.
fn tree_swap(graph: &crate::graphkit::Graph, e0: usize, e: usize) -> (Subset, Subset) {
    let v = graph.vertices;
    let mut index = vec![usize::MAX; v * v];
    for (k, &(a, b)) in graph.edges.iter().enumerate() {
        index[a * v + b] = k;
        index[b * v + a] = k;
    }
    let edge = |a: usize, b: usize| index[a * v + b];
    let (a, b) = graph.edges[e0];
    let (x, y) = graph.edges[e];
    let path: Vec<usize> = if a == x || a == y || b == x || b == y {
        let shared = if a == x || a == y { a } else { b };
        let other0 = if shared == a { b } else { a };
        let other = if shared == x { y } else { x };
        vec![shared, other0, other]
    } else {
        vec![x, a, b, y]
    };
    let mut tree: Vec<usize> = path.windows(2).map(|w| edge(w[0], w[1])).collect();
    for w in 0..v {
        if !path.contains(&w) {
            tree.push(edge(path[0], w));
        }
    }
    let first = Subset::new(tree.clone());
    let second = Subset::new(
        tree.into_iter()
            .map(|k| if k == e0 { e } else { k })
            .collect(),
    );
    (first, second)
}

fn cvp_line(r: &[Rational], family: &FamilySpec, cap: u64) -> Result<LineOutcome> {
    let n = r.len();
    if let Some(only) = single_member(family) {
        return Ok(LineOutcome::Constant(sum_over(r, &only)));
    }
    if is_empty_family(family) {
        return Ok(LineOutcome::Constant(Rational::zero()));
    }
    match family {
        FamilySpec::Unconstrained { .. } => Ok(match r.iter().position(|v| !v.is_zero()) {
            None => LineOutcome::Constant(Rational::zero()),
            Some(i) => LineOutcome::Differs(Subset::from([i]), Subset::empty()),
        }),
        FamilySpec::UniformMatroid { k, .. } => Ok(match r.iter().position(|v| *v != r[0]) {
            None => LineOutcome::Constant(&r[0] * Rational::from_integer((*k as i64).into())),
            Some(i) => {
                let mut first = vec![0];
                first.extend((1..n).filter(|&x| x != i).take(k - 1));
                let second: Vec<usize> =
                    first.iter().map(|&x| if x == 0 { i } else { x }).collect();
                LineOutcome::Differs(Subset::new(first), Subset::new(second))
            }
        }),
        FamilySpec::GraphicMatroid { graph } if graph.is_complete_simple() => {
            Ok(match r.iter().position(|v| *v != r[0]) {
                None => LineOutcome::Constant(
                    &r[0] * Rational::from_integer((graph.vertices as i64 - 1).into()),
                ),
                Some(e) => {
                    let (a, b) = tree_swap(graph, 0, e);
                    LineOutcome::Differs(a, b)
                }
            })
        }
        FamilySpec::BipartitePerfectMatching { side } => {
            let p = *side;
            let m = Matrix::from_fn(p, p, |i, j| Cost::Finite(r[i * p + j].clone()));
            Ok(match check_2index_decomposition(&m)? {
                Ok(_) => LineOutcome::Constant((0..p).map(|i| &r[i * p + i]).sum()),
                Err(v) => {
                    let (i, j) = (v.indices[0], v.indices[1]);
                    let rows: Vec<usize> = (1..p).filter(|&x| x != i).collect();
                    let cols: Vec<usize> = (1..p).filter(|&x| x != j).collect();
                    let rest: Vec<usize> =
                        rows.iter().zip(&cols).map(|(&x, &y)| x * p + y).collect();
                    let mut first = rest.clone();
                    first.extend([0, i * p + j]);
                    let mut second = rest;
                    second.extend([j, i * p]);
                    LineOutcome::Differs(Subset::new(first), Subset::new(second))
                }
            })
        }
        _ => {
            let sets = enumerate(family, cap)?;
            let k0 = sum_over(r, &sets[0]);
            Ok(match sets.iter().find(|s| sum_over(r, s) != k0) {
                None => LineOutcome::Constant(k0),
                Some(s) => LineOutcome::Differs(sets[0].clone(), s.clone()),
            })
        }
    }
}

/// Tests the constant objective property of `q` with respect to `family`,
/// which ranges over the rows (`side` 1) or the columns (`side` 2).
pub fn cvp_membership(q: &Matrix, side: u8, family: &FamilySpec, cap: u64) -> Result<CvpOutcome> {
    let rows = rational_rows(q)?;
    let lines: Vec<Vec<Rational>> = match side {
        1 => (0..q.cols())
            .map(|j| rows.iter().map(|r| r[j].clone()).collect())
            .collect(),
        2 => rows,
        other => {
            return Err(CopicError::Domain(format!(
                "side must be 1 or 2, got {other}"
            )))
        }
    };
    let ground = if side == 1 { q.rows() } else { q.cols() };
    if family.ground_size() != ground {
        return Err(CopicError::Domain(format!(
            "family ground size {} does not match {ground}",
            family.ground_size()
        )));
    }
    let mut constants = Vec::with_capacity(lines.len());
    for (line, r) in lines.iter().enumerate() {
        match cvp_line(r, family, cap)? {
            LineOutcome::Constant(k) => constants.push(k),
            LineOutcome::Differs(first, second) => {
                let first_sum = sum_over(r, &first);
                let second_sum = sum_over(r, &second);
                return Ok(CvpOutcome::NotMember {
                    line,
                    first,
                    second,
                    first_sum,
                    second_sum,
                });
            }
        }
    }
    Ok(CvpOutcome::Member(ConstantObjectiveCertificate {
        side,
        constants,
    }))
}

/// How a family's elements are laid out as tensor coordinates in the
/// structural characterizations.
enum Layout {
    /// Uniform matroids with `0 < k < n` and trees of complete graphs: one coordinate.
    Line(usize),
    /// Perfect matchings of `K_{p,p}`, `p ≥ 2`: row and column coordinates.
    Assignment(usize),
}

fn layout(family: &FamilySpec) -> Option<Layout> {
    match family {
        FamilySpec::UniformMatroid { ground_size, k } if 0 < *k && k < ground_size => {
            Some(Layout::Line(*ground_size))
        }
        FamilySpec::GraphicMatroid { graph }
            if graph.is_complete_simple() && graph.vertices >= 3 =>
        {
            Some(Layout::Line(graph.edge_count()))
        }
        FamilySpec::BipartitePerfectMatching { side } if *side >= 2 => {
            Some(Layout::Assignment(*side))
        }
        _ => None,
    }
}

impl Layout {
    fn dims(&self) -> Vec<usize> {
        match self {
            Layout::Line(n) => vec![*n],
            Layout::Assignment(p) => vec![*p, *p],
        }
    }

    fn element(&self, coords: &[usize]) -> usize {
        match self {
            Layout::Line(_) => coords[0],
            Layout::Assignment(p) => coords[0] * p + coords[1],
        }
    }

    fn coords(&self, e: usize) -> Vec<usize> {
        match self {
            Layout::Line(_) => vec![e],
            Layout::Assignment(p) => vec![e / p, e % p],
        }
    }

    /// Coordinate subsets spanning the family's constant-objective space,
    /// given the positions of this side's coordinates and the other side's.
    fn cvp_patterns(&self, own: &[usize], other: &[usize]) -> Vec<Vec<usize>> {
        match self {
            Layout::Line(_) => vec![other.to_vec()],
            Layout::Assignment(_) => own
                .iter()
                .rev()
                .map(|&keep| {
                    let mut p = vec![keep];
                    p.extend_from_slice(other);
                    p.sort_unstable();
                    p
                })
                .collect(),
        }
    }
}

fn zero_vectors(m: usize, n: usize) -> Linearization {
    Linearization {
        a: vec![Rational::zero(); m],
        b: vec![Rational::zero(); n],
    }
}

/// Structural linearizability test for the family pairs whose linearizable
/// matrices are characterized in closed form, plus the pairs with an
/// unconstrained side. Other pairs yield `Unsupported`.
pub fn check_copic_linearizable(
    instance: &Instance,
    cap: u64,
) -> Result<LinearizabilityCertificate> {
    let q = instance.q.to_matrix();
    let rows = rational_rows(&q)?;
    let (m, n) = (instance.m, instance.n);
    let (f1, f2) = (&instance.family1, &instance.family2);

    if is_empty_family(f1) || is_empty_family(f2) {
        return Ok(LinearizabilityCertificate::linearizable(zero_vectors(m, n)));
    }
    if let Some(only) = single_member(f1) {
        let b = (0..n)
            .map(|j| only.iter().map(|i| &rows[i][j]).sum())
            .collect();
        return Ok(LinearizabilityCertificate::linearizable(Linearization {
            a: vec![Rational::zero(); m],
            b,
        }));
    }
    if let Some(only) = single_member(f2) {
        let a = rows.iter().map(|r| sum_over(r, &only)).collect();
        return Ok(LinearizabilityCertificate::linearizable(Linearization {
            a,
            b: vec![Rational::zero(); n],
        }));
    }
    if matches!(f1, FamilySpec::Unconstrained { .. }) {
        return Ok(match cvp_membership(&q, 2, f2, cap)? {
            CvpOutcome::Member(cert) => LinearizabilityCertificate::linearizable(Linearization {
                a: cert.constants,
                b: vec![Rational::zero(); n],
            }),
            CvpOutcome::NotMember {
                line,
                first,
                second,
                first_sum,
                second_sum,
            } => {
                let row = Subset::from([line]);
                LinearizabilityCertificate::not_linearizable(swap_witness(
                    [
                        (row.clone(), first.clone()),
                        (row, second.clone()),
                        (Subset::empty(), first),
                        (Subset::empty(), second),
                    ],
                    first_sum - second_sum,
                ))
            }
        });
    }
    if matches!(f2, FamilySpec::Unconstrained { .. }) {
        return Ok(match cvp_membership(&q, 1, f1, cap)? {
            CvpOutcome::Member(cert) => LinearizabilityCertificate::linearizable(Linearization {
                a: vec![Rational::zero(); m],
                b: cert.constants,
            }),
            CvpOutcome::NotMember {
                line,
                first,
                second,
                first_sum,
                second_sum,
            } => {
                let col = Subset::from([line]);
                LinearizabilityCertificate::not_linearizable(swap_witness(
                    [
                        (first.clone(), col.clone()),
                        (second.clone(), col),
                        (first, Subset::empty()),
                        (second, Subset::empty()),
                    ],
                    first_sum - second_sum,
                ))
            }
        });
    }
    let (Some(l1), Some(l2)) = (layout(f1), layout(f2)) else {
        return Err(CopicError::Unsupported(format!(
            "no structural linearizability test for {} x {}",
            f1.kind(),
            f2.kind()
        )));
    };
    structural(instance, &rows, l1, l2, cap)
}

fn swap_witness(pairs: [(Subset, Subset); 4], residual: Rational) -> Witness {
    let one = Rational::from_integer(1.into());
    let signs = [one.clone(), -one.clone(), -one.clone(), one];
    let terms = pairs
        .into_iter()
        .zip(signs)
        .map(|((s1, s2), coefficient)| WitnessTerm {
            coefficient,
            s1,
            s2,
        })
        .collect();
    Witness::Combination { terms, residual }
}

fn structural(
    instance: &Instance,
    rows: &[Vec<Rational>],
    l1: Layout,
    l2: Layout,
    cap: u64,
) -> Result<LinearizabilityCertificate> {
    let d1 = l1.dims();
    let d2 = l2.dims();
    let own1: Vec<usize> = (0..d1.len()).collect();
    let own2: Vec<usize> = (d1.len()..d1.len() + d2.len()).collect();
    let mut dims = d1.clone();
    dims.extend_from_slice(&d2);
    let t = Tensor::from_fn(dims.clone(), |x| {
        rows[l1.element(&x[..d1.len()])][l2.element(&x[d1.len()..])].clone()
    });

    let mut patterns = l1.cvp_patterns(&own1, &own2);
    patterns.extend(l2.cvp_patterns(&own2, &own1));

    // Uniform/tree pairs use the 2-index identity, pairs with one
    // assignment side the 3-index identity, everything else the generic solver.
    let components: Vec<(Vec<usize>, Tensor)> = match dims.len() {
        2 => {
            let m = Matrix::from_fn(dims[0], dims[1], |i, j| {
                Cost::Finite(t.get(&[i, j]).clone())
            });
            match check_2index_decomposition(&m)? {
                Ok((a, b)) => vec![
                    (
                        vec![0],
                        Tensor {
                            dims: vec![dims[0]],
                            data: a,
                        },
                    ),
                    (
                        vec![1],
                        Tensor {
                            dims: vec![dims[1]],
                            data: b,
                        },
                    ),
                ],
                Err(v) => return Ok(identity_failure(v)),
            }
        }
        3 => match check_3index_decomposition(&t)? {
            Ok(dec) => vec![
                (vec![0, 1], dec.a),
                (vec![0, 2], dec.b),
                (vec![1, 2], dec.c),
            ],
            Err(v) => return Ok(identity_failure(v)),
        },
        _ => match check_pattern_decomposition(&t, &patterns, cap)? {
            Ok(comps) => {
                let mut sorted = patterns.clone();
                for p in &mut sorted {
                    p.sort_unstable();
                }
                sorted.into_iter().zip(comps).collect()
            }
            Err(v) => return Ok(identity_failure(v)),
        },
    };

    // Split into the part constant over side-1 choices (E) and the part
    // constant over side-2 choices (F).
    let (m, n) = (instance.m, instance.n);
    let mut e = vec![vec![Rational::zero(); n]; m];
    let mut f = vec![vec![Rational::zero(); n]; m];
    for i in 0..m {
        for j in 0..n {
            let mut x = l1.coords(i);
            x.extend(l2.coords(j));
            for (pat, comp) in &components {
                let local: Vec<usize> = pat.iter().map(|&c| x[c]).collect();
                let v = comp.get(&local);
                if own1.iter().all(|c| pat.contains(c)) {
                    f[i][j] += v;
                } else {
                    e[i][j] += v;
                }
            }
        }
    }
    let zeros1 = vec![Cost::zero(); m];
    let zeros2 = vec![Cost::zero(); n];
    let s1 = lcop_solve_avoiding(&instance.family1, &zeros1)?
        .map(|x| x.0)
        .unwrap_or_default();
    let s2 = lcop_solve_avoiding(&instance.family2, &zeros2)?
        .map(|x| x.0)
        .unwrap_or_default();
    let a = (0..m).map(|i| s2.iter().map(|j| &f[i][j]).sum()).collect();
    let b = (0..n).map(|j| s1.iter().map(|i| &e[i][j]).sum()).collect();
    Ok(LinearizabilityCertificate::linearizable(Linearization {
        a,
        b,
    }))
}

fn identity_failure(v: IdentityViolation) -> LinearizabilityCertificate {
    LinearizabilityCertificate::not_linearizable(Witness::Identity {
        indices: v.indices,
        residual: v.residual,
    })
}

/// True iff `(a, b)` reproduces the interaction sum on every feasible pair.
pub fn verify_linearization(instance: &Instance, lin: &Linearization, cap: u64) -> Result<bool> {
    let f1 = enumerate(&instance.family1, cap)?;
    let f2 = enumerate(&instance.family2, cap)?;
    for s1 in &f1 {
        let sa: Rational = sum_over(&lin.a, s1);
        for s2 in &f2 {
            let lhs = &sa + sum_over(&lin.b, s2);
            if interaction_sum(&instance.q, s1, s2) != Cost::Finite(lhs) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

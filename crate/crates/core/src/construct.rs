//! Named associative superalgebras: matrix units, `Mat(m|n)`, `Q(n)`,
//! Clifford algebras, group algebras, smash products, direct sums.

use std::collections::{BTreeMap, VecDeque};

use crate::algebra::{AlgebraBuilder, AlgebraKind, Parity, SuperAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{solve_homogeneous, zero_vector, Vector};
use crate::scalar::{FieldSpec, Scalar};
use crate::subquotient::subalgebra;

fn require_positive(name: &str, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidInput(format!("{name} must be at least 1")));
    }
    Ok(())
}

fn matrix_units(
    field: FieldSpec,
    size: usize,
    parity: impl Fn(usize, usize) -> Parity,
) -> Result<SuperAlgebra> {
    let idx = |i: usize, j: usize| i * size + j;
    let mut par = Vec::with_capacity(size * size);
    let mut labels = Vec::with_capacity(size * size);
    for i in 0..size {
        for j in 0..size {
            par.push(parity(i, j));
            labels.push(format!(
                "E{}{}{}",
                i + 1,
                if size > 9 { "_" } else { "" },
                j + 1
            ));
        }
    }
    let mut b = AlgebraBuilder::new(field, AlgebraKind::Associative, par).labels(labels);
    for i in 0..size {
        for j in 0..size {
            for l in 0..size {
                b.add_term(idx(i, j), idx(j, l), idx(i, l), field.one());
            }
        }
    }
    if size == 1 {
        b = b.unit(Some(0));
    }
    b.build()
}

/// `Mat(n)`: matrix units `E_ij` at index `i*n + j`, all even.
pub fn mat(field: FieldSpec, n: usize) -> Result<SuperAlgebra> {
    require_positive("n", n)?;
    matrix_units(field, n, |_, _| Parity::Even)
}

/// `Mat(m|n)`: `E_ij` is odd exactly when `i` and `j` lie on different
/// sides of the `m|n` split.
pub fn mat_super(field: FieldSpec, m: usize, n: usize) -> Result<SuperAlgebra> {
    require_positive("m", m)?;
    require_positive("n", n)?;
    matrix_units(field, m + n, |i, j| {
        if (i < m) == (j < m) {
            Parity::Even
        } else {
            Parity::Odd
        }
    })
}

/// The odd operator `J = [[0, 1], [-1, 0]]` in `Mat(n|n)`, with `J^2 = -1`.
pub fn complex_structure(field: FieldSpec, n: usize) -> Vector {
    let size = 2 * n;
    let mut j = zero_vector(field, size * size);
    for i in 0..n {
        j[i * size + (n + i)] = field.one();
        j[(n + i) * size + i] = field.from_i64(-1);
    }
    j
}

/// `Q(n) = {X in Mat(n|n) : XJ - JX = 0}`, obtained by solving the
/// commutant equations and restricting the structure constants.
pub fn q_assoc(field: FieldSpec, n: usize) -> Result<SuperAlgebra> {
    require_positive("n", n)?;
    let ambient = mat_super(field, n, n)?;
    let d = ambient.dim();
    let j = complex_structure(field, n);
    // Column k of X -> XJ - JX applied to basis element k.
    let mut columns = Vec::with_capacity(d);
    for k in 0..d {
        let e = crate::linalg::unit_vector(field, d, k);
        let xj = ambient.mul_vec(&e, &j);
        let jx = ambient.mul_vec(&j, &e);
        columns.push(xj.iter().zip(&jx).map(|(a, b)| a - b).collect::<Vector>());
    }
    let equations = (0..d).map(|row| columns.iter().map(|c| c[row].clone()).collect::<Vector>());
    let commutant = solve_homogeneous(field, d, equations)?;
    subalgebra(&ambient, &commutant)
}

/// Grading choice for Clifford algebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CliffordGrading {
    /// Each generator odd.
    Natural,
    /// Everything even.
    Trivial,
}

/// `Cliff(n)` with `x_i x_j = -x_j x_i` (`i != j`) and `x_i^2 = a`. Basis
/// monomials are indexed by bitmask, so index 0 is the unit.
pub fn clifford(
    field: FieldSpec,
    n: usize,
    a: &Scalar,
    grading: CliffordGrading,
) -> Result<SuperAlgebra> {
    require_positive("n", n)?;
    if n > 16 {
        return Err(Error::InvalidInput("clifford: n > 16".into()));
    }
    if a.is_zero() {
        return Err(Error::DegenerateParameter("clifford: x_i^2 = 0".into()));
    }
    if a.field() != field {
        return Err(Error::FieldMismatch {
            left: field,
            right: a.field(),
        });
    }
    let dim = 1usize << n;
    let parity = (0..dim)
        .map(|s: usize| match grading {
            CliffordGrading::Natural => Parity::from_bit((s.count_ones() % 2) as u8),
            CliffordGrading::Trivial => Parity::Even,
        })
        .collect();
    let labels = (0..dim)
        .map(|s: usize| {
            if s == 0 {
                "1".to_string()
            } else {
                (0..n)
                    .filter(|i| s >> i & 1 == 1)
                    .map(|i| format!("x{}", i + 1))
                    .collect::<Vec<_>>()
                    .join("")
            }
        })
        .collect();
    let mut b = AlgebraBuilder::new(field, AlgebraKind::Associative, parity)
        .labels(labels)
        .unit(Some(0));
    for s in 0..dim {
        for t in 0..dim {
            // Moving each generator of t left past the larger generators of s.
            let mut swaps = 0u32;
            for i in 0..n {
                if t >> i & 1 == 1 {
                    swaps += (s >> (i + 1)).count_ones();
                }
            }
            let mut c = field.from_i64(if swaps.is_multiple_of(2) { 1 } else { -1 });
            for _ in 0..(s & t).count_ones() {
                c = &c * a;
            }
            b.add_term(s, t, s ^ t, c);
        }
    }
    b.build()
}

/// A finite group by its multiplication table; index 0 is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    labels: Vec<String>,
    /// Permutation images, when the group was built from generators.
    permutations: Option<Vec<Vec<usize>>>,
}

/// Cap on the size of groups closed from permutation generators.
pub const GROUP_ORDER_CAP: usize = 10_000;

impl FiniteGroup {
    /// Validates closure, associativity, a two-sided identity at index 0,
    /// and inverses.
    pub fn from_table(table: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroupTable("empty table".into()));
        }
        for (g, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroupTable(format!(
                    "row {g} has length {}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::InvalidGroupTable(format!(
                    "row {g} contains {bad} >= {n}"
                )));
            }
        }
        for g in 0..n {
            if table[0][g] != g || table[g][0] != g {
                return Err(Error::InvalidGroupTable(
                    "index 0 is not the identity".into(),
                ));
            }
            if !(0..n).any(|h| table[g][h] == 0 && table[h][g] == 0) {
                return Err(Error::InvalidGroupTable(format!(
                    "element {g} has no inverse"
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroupTable(format!(
                            "({a}*{b})*{c} != {a}*({b}*{c})"
                        )));
                    }
                }
            }
        }
        let labels = labels.unwrap_or_else(|| (0..n).map(|g| format!("g{g}")).collect());
        if labels.len() != n {
            return Err(Error::InvalidGroupTable(
                "label count differs from order".into(),
            ));
        }
        Ok(FiniteGroup {
            table,
            labels,
            permutations: None,
        })
    }

    /// Closure of permutation generators (images of `0..degree`). Elements
    /// are sorted lexicographically, so the identity comes first.
    pub fn from_permutations(degree: usize, generators: &[Vec<usize>]) -> Result<Self> {
        let identity: Vec<usize> = (0..degree).collect();
        for g in generators {
            let mut seen = vec![false; degree];
            if g.len() != degree
                || g.iter()
                    .any(|&x| x >= degree || std::mem::replace(&mut seen[x], true))
            {
                return Err(Error::InvalidGroupTable(format!(
                    "{g:?} is not a permutation of 0..{degree}"
                )));
            }
        }
        // (g h)(x) = g(h(x)).
        let compose = |g: &[usize], h: &[usize]| h.iter().map(|&x| g[x]).collect::<Vec<usize>>();
        let mut found: BTreeMap<Vec<usize>, ()> = BTreeMap::new();
        found.insert(identity.clone(), ());
        let mut queue = VecDeque::from([identity]);
        while let Some(x) = queue.pop_front() {
            for g in generators {
                let y = compose(g, &x);
                if !found.contains_key(&y) {
                    if found.len() >= GROUP_ORDER_CAP {
                        return Err(Error::BudgetExceeded {
                            needed: GROUP_ORDER_CAP as u128 + 1,
                            budget: GROUP_ORDER_CAP as u128,
                        });
                    }
                    found.insert(y.clone(), ());
                    queue.push_back(y);
                }
            }
        }
        let elements: Vec<Vec<usize>> = found.into_keys().collect();
        let index: BTreeMap<&Vec<usize>, usize> =
            elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let table = elements
            .iter()
            .map(|g| elements.iter().map(|h| index[&compose(g, h)]).collect())
            .collect();
        let labels = elements
            .iter()
            .map(|p| {
                format!(
                    "[{}]",
                    p.iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                )
            })
            .collect();
        Ok(FiniteGroup {
            table,
            labels,
            permutations: Some(elements),
        })
    }

    /// The symmetric group on `degree` points, from a transposition and a cycle.
    pub fn symmetric(degree: usize) -> Result<Self> {
        require_positive("degree", degree)?;
        if degree == 1 {
            return Self::from_permutations(1, &[]);
        }
        let mut swap: Vec<usize> = (0..degree).collect();
        swap.swap(0, 1);
        let cycle: Vec<usize> = (0..degree).map(|i| (i + 1) % degree).collect();
        Self::from_permutations(degree, &[swap, cycle])
    }

    /// `Z/n` as rotations.
    pub fn cyclic(n: usize) -> Result<Self> {
        require_positive("n", n)?;
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        Self::from_table(table, None)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn permutations(&self) -> Option<&[Vec<usize>]> {
        self.permutations.as_deref()
    }

    /// Index of a permutation element, for groups built from generators.
    pub fn index_of(&self, perm: &[usize]) -> Option<usize> {
        self.permutations.as_ref()?.iter().position(|p| p == perm)
    }
}

/// `K[G]`, all even, with the identity as unit.
pub fn group_algebra(field: FieldSpec, group: &FiniteGroup) -> Result<SuperAlgebra> {
    let n = group.order();
    let mut b = AlgebraBuilder::new(field, AlgebraKind::Associative, vec![Parity::Even; n])
        .labels(group.labels().to_vec())
        .unit(Some(0));
    for g in 0..n {
        for h in 0..n {
            b.add_term(g, h, group.mul(g, h), field.one());
        }
    }
    b.build()
}

/// Matrix of a linear map on the algebra: `image(b_j) = sum_i m[i][j] b_i`.
pub type ActionMatrix = Vec<Vector>;

fn apply_action(m: &ActionMatrix, v: &[Scalar]) -> Vector {
    let field = v.first().map(|s| s.field()).unwrap_or(FieldSpec::Rationals);
    let mut out = zero_vector(field, m.len());
    for (j, vj) in v.iter().enumerate() {
        if vj.is_zero() {
            continue;
        }
        for (i, row) in m.iter().enumerate() {
            if !row[j].is_zero() {
                out[i] = &out[i] + &(&row[j] * vj);
            }
        }
    }
    out
}

fn compose_actions(a: &ActionMatrix, b: &ActionMatrix) -> ActionMatrix {
    let d = a.len();
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    let mut acc = a[i][0].field().zero();
                    for k in 0..d {
                        if !a[i][k].is_zero() && !b[k][j].is_zero() {
                            acc = &acc + &(&a[i][k] * &b[k][j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

fn check_automorphism(a: &SuperAlgebra, m: &ActionMatrix, name: &str) -> Result<()> {
    let d = a.dim();
    if m.len() != d || m.iter().any(|row| row.len() != d) {
        return Err(Error::NotAnAutomorphism(format!(
            "{name}: matrix is not {d}x{d}"
        )));
    }
    for i in 0..d {
        for j in 0..d {
            if !m[i][j].is_zero() && a.parity(i) != a.parity(j) {
                return Err(Error::NotAnAutomorphism(format!(
                    "{name}: does not preserve parity"
                )));
            }
        }
    }
    let rank = crate::linalg::row_reduce(a.field(), d, m)?.rank;
    if rank != d {
        return Err(Error::NotAnAutomorphism(format!("{name}: not invertible")));
    }
    let images: Vec<Vector> = (0..d)
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect();
    for i in 0..d {
        for j in 0..d {
            let mut prod = zero_vector(a.field(), d);
            for (k, c) in a.product(i, j) {
                prod[*k] = c.clone();
            }
            if apply_action(m, &prod) != a.mul_vec(&images[i], &images[j]) {
                return Err(Error::NotAnAutomorphism(format!(
                    "{name}: g(b{i} b{j}) != g(b{i}) g(b{j})"
                )));
            }
        }
    }
    Ok(())
}

/// `A # K[G]` for a group acting by parity-preserving automorphisms given
/// on generators. Basis `b_i # g` sits at index `i * |G| + g`, with
/// `(a # g)(b # h) = a g(b) # gh`.
pub fn smash_product(
    a: &SuperAlgebra,
    group: &FiniteGroup,
    generators: &[usize],
    actions: &[ActionMatrix],
) -> Result<SuperAlgebra> {
    if a.kind() != AlgebraKind::Associative {
        return Err(Error::InvalidInput(
            "smash product needs an associative algebra".into(),
        ));
    }
    if generators.len() != actions.len() {
        return Err(Error::DimensionMismatch {
            expected: generators.len(),
            actual: actions.len(),
        });
    }
    let d = a.dim();
    let order = group.order();
    for (g, m) in generators.iter().zip(actions) {
        if *g >= order {
            return Err(Error::IndexError(format!("generator {g} >= |G| = {order}")));
        }
        check_automorphism(a, m, &format!("generator {g}"))?;
    }
    // Extend to a homomorphism G -> Aut(A) by breadth-first search.
    let identity: ActionMatrix = (0..d)
        .map(|i| crate::linalg::unit_vector(a.field(), d, i))
        .collect();
    let mut action: Vec<Option<ActionMatrix>> = vec![None; order];
    action[0] = Some(identity);
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        let mx = action[x].clone().expect("queued elements carry an action");
        for (g, mg) in generators.iter().zip(actions) {
            let y = group.mul(*g, x);
            let my = compose_actions(mg, &mx);
            match &action[y] {
                Some(existing) if *existing != my => {
                    return Err(Error::NotAnAutomorphism(format!(
                        "generator actions do not define a group homomorphism (element {y})"
                    )));
                }
                Some(_) => {}
                None => {
                    action[y] = Some(my);
                    queue.push_back(y);
                }
            }
        }
    }
    let action: Vec<ActionMatrix> = action
        .into_iter()
        .enumerate()
        .map(|(g, m)| {
            m.ok_or_else(|| Error::InvalidInput(format!("generators do not reach element {g}")))
        })
        .collect::<Result<_>>()?;
    let parity = (0..d * order).map(|x| a.parity(x / order)).collect();
    let labels = (0..d * order)
        .map(|x| format!("{}#{}", a.labels()[x / order], group.labels()[x % order]))
        .collect();
    let unit = a.unit_index().map(|u| u * order);
    let mut b = AlgebraBuilder::new(a.field(), AlgebraKind::Associative, parity)
        .labels(labels)
        .unit(unit);
    for i in 0..d {
        for g in 0..order {
            for j in 0..d {
                // g(b_j) is column j of the action matrix.
                let gb: Vector = action[g].iter().map(|row| row[j].clone()).collect();
                let mut ei = zero_vector(a.field(), d);
                ei[i] = a.field().one();
                let prod = a.mul_vec(&ei, &gb);
                for h in 0..order {
                    let gh = group.mul(g, h);
                    for (k, c) in prod.iter().enumerate() {
                        if !c.is_zero() {
                            b.add_term(i * order + g, j * order + h, k * order + gh, c.clone());
                        }
                    }
                }
            }
        }
    }
    b.build()
}

/// `A (+) B` with componentwise products.
pub fn direct_sum(a: &SuperAlgebra, b: &SuperAlgebra) -> Result<SuperAlgebra> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch {
            left: a.field(),
            right: b.field(),
        });
    }
    if a.kind() != b.kind() {
        return Err(Error::InvalidInput(
            "direct sum of different algebra kinds".into(),
        ));
    }
    let (da, db) = (a.dim(), b.dim());
    let parity = a.parities().iter().chain(b.parities()).copied().collect();
    let labels = a
        .labels()
        .iter()
        .map(|l| format!("{l}'1"))
        .chain(b.labels().iter().map(|l| format!("{l}'2")))
        .collect();
    let mut out = AlgebraBuilder::new(a.field(), a.kind(), parity).labels(labels);
    for (i, j, terms) in a.products() {
        out.set_product(i, j, terms.to_vec());
    }
    for (i, j, terms) in b.products() {
        out.set_product(
            da + i,
            da + j,
            terms.iter().map(|(k, c)| (da + k, c.clone())).collect(),
        );
    }
    let _ = db;
    out.build()
}

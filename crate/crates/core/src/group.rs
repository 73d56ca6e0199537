//! Finite groups of lattice isometries and their real-isotypic structure.
//!
//! The decomposition splits `Λ⊗ℚ` along the eigenspaces of the class sums
//! `z_C = Σ_{g∈C} g`. On the part of type `χ` the class sum acts as
//! `|C|·χ(g)/χ(1)`, an algebraic integer lying in `ℚ(ζ_m)` with `m` the order
//! of `g`. When every element order is in `{1,2,3,4,6}` these eigenvalues are
//! rational integers, Eisenstein integers or Gaussian integers, so a bounded
//! exact search finds every factor of each characteristic polynomial.
//!
//! The positive directions of a `G`-invariant form split along the
//! components, and every `G`-invariant positive subspace of maximal dimension
//! meets exactly the components whose restricted form has positive directions.
//! That is how `I_G` is read off without choosing such a subspace.

use std::collections::{HashMap, HashSet, VecDeque};

use num_traits::Zero;

use crate::enumeration::{default_delta, lll_reduce, DefiniteLattice};
use crate::error::{Error, Result};
use crate::isometry::Isometry;
use crate::lattice::{inertia, IntegerLattice, Signature, Sublattice};
use crate::matrix::{primitive_integer_vector, rat, IntMatrix, RatMatrix, Rational};
use crate::snf::integer_kernel;

pub const DEFAULT_GROUP_CAP: usize = 10_000;

/// A finite group of isometries, stored as the full list of its elements.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    lattice: IntegerLattice,
    generators: Vec<IntMatrix>,
    elements: Vec<IntMatrix>,
}

impl MatrixGroup {
    /// Breadth-first closure of `gens` under products.
    pub fn generate(lattice: &IntegerLattice, gens: &[Isometry], cap: usize) -> Result<Self> {
        let n = lattice.rank();
        let mut generators: Vec<IntMatrix> = Vec::new();
        for g in gens {
            if g.lattice() != lattice {
                return Err(Error::AmbientMismatch);
            }
            if !g.is_identity() && !generators.contains(g.matrix()) {
                generators.push(g.matrix().clone());
            }
        }
        let id = IntMatrix::identity(n);
        let mut seen: HashSet<IntMatrix> = HashSet::from([id.clone()]);
        let mut elements = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(e) = queue.pop_front() {
            for s in &generators {
                let p = e.try_mul(s)?;
                if seen.contains(&p) {
                    continue;
                }
                if elements.len() >= cap {
                    return Err(Error::CapExceeded(cap));
                }
                seen.insert(p.clone());
                elements.push(p.clone());
                queue.push_back(p);
            }
        }
        Ok(MatrixGroup { lattice: lattice.clone(), generators, elements })
    }

    pub fn trivial(lattice: &IntegerLattice) -> Self {
        MatrixGroup {
            lattice: lattice.clone(),
            generators: Vec::new(),
            elements: vec![IntMatrix::identity(lattice.rank())],
        }
    }

    pub fn lattice(&self) -> &IntegerLattice {
        &self.lattice
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Non-identity generators, deduplicated.
    pub fn generators(&self) -> &[IntMatrix] {
        &self.generators
    }

    /// All elements; the first is the identity.
    pub fn elements(&self) -> &[IntMatrix] {
        &self.elements
    }

    pub fn contains(&self, m: &IntMatrix) -> bool {
        self.elements.contains(m)
    }

    pub fn isometries(&self) -> Vec<Isometry> {
        self.elements.iter().map(|m| Isometry::from_trusted(&self.lattice, m.clone())).collect()
    }

    fn index(&self) -> HashMap<&IntMatrix, usize> {
        self.elements.iter().enumerate().map(|(i, m)| (m, i)).collect()
    }

    /// Order of each element, aligned with [`elements`](Self::elements).
    pub fn element_orders(&self) -> Vec<usize> {
        self.elements
            .iter()
            .map(|g| {
                let mut acc = g.clone();
                let mut k = 1;
                while !acc.is_identity() {
                    acc = acc.mul(g);
                    k += 1;
                }
                k
            })
            .collect()
    }

    /// Conjugacy classes as sorted lists of element indices.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let index = self.index();
        let conjugators: Vec<(IntMatrix, IntMatrix)> = self
            .generators
            .iter()
            .map(|s| (s.clone(), Isometry::from_trusted(&self.lattice, s.clone()).inverse().into_matrix()))
            .collect();
        let mut assigned = vec![false; self.order()];
        let mut classes = Vec::new();
        for start in 0..self.order() {
            if assigned[start] {
                continue;
            }
            assigned[start] = true;
            let mut class = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                for (s, sinv) in &conjugators {
                    let c = s.mul(&self.elements[i]).mul(sinv);
                    let j = index[&c];
                    if !assigned[j] {
                        assigned[j] = true;
                        class.push(j);
                        queue.push_back(j);
                    }
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes
    }
}

/// `{v : g·v = v for all g}`, saturated.
pub fn invariant_lattice(group: &MatrixGroup) -> Result<Sublattice> {
    let n = group.lattice().rank();
    if group.generators().is_empty() {
        return Ok(group.lattice().full_sublattice());
    }
    let id = IntMatrix::identity(n);
    let blocks: Vec<IntMatrix> = group.generators().iter().map(|g| g.sub(&id)).collect();
    let refs: Vec<&IntMatrix> = blocks.iter().collect();
    let basis = integer_kernel(&IntMatrix::vstack(&refs))?;
    Ok(Sublattice { ambient: group.lattice().clone(), basis, saturated: true })
}

/// A `G`-invariant subspace of `Λ⊗ℚ` holding one real-irreducible type.
#[derive(Clone, Debug)]
pub struct IsotypicComponent {
    /// Reduced row echelon basis.
    pub basis: RatMatrix,
    pub signature: Signature,
    pub is_trivial_type: bool,
}

impl IsotypicComponent {
    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Field {
    Rational,
    Eisenstein,
    Gaussian,
}

#[derive(Clone, Debug)]
struct Block {
    basis: RatMatrix,
    pivots: Vec<usize>,
    eisenstein: bool,
    gaussian: bool,
}

impl Block {
    fn from_rows(rows: Vec<Vec<Rational>>, n: usize) -> Block {
        let (r, pivots) = RatMatrix::from_rows(rows, n).rref();
        let k = pivots.len();
        let basis = RatMatrix::from_fn(k, n, |i, j| r[(i, j)].clone());
        Block { basis, pivots, eisenstein: false, gaussian: false }
    }

    fn dim(&self) -> usize {
        self.basis.nrows()
    }

    /// Coordinates of `w` in the block basis, if `w` lies in the span.
    fn coordinates(&self, w: &[Rational]) -> Option<Vec<Rational>> {
        let c: Vec<Rational> = self.pivots.iter().map(|&p| w[p].clone()).collect();
        let n = w.len();
        for j in 0..n {
            let mut s = Rational::zero();
            for (i, ci) in c.iter().enumerate() {
                if !ci.is_zero() {
                    s += ci * &self.basis[(i, j)];
                }
            }
            if s != w[j] {
                return None;
            }
        }
        Some(c)
    }

    fn restrict(&self, op: &RatMatrix) -> RatMatrix {
        let k = self.dim();
        let mut r = RatMatrix::zeros(k, k);
        for j in 0..k {
            let w = op.mul_vec(self.basis.row(j));
            let c = self.coordinates(&w).expect("central elements preserve every block");
            for i in 0..k {
                r[(i, j)] = c[i].clone();
            }
        }
        r
    }
}

type Poly = Vec<Rational>;

fn poly_eval(p: &Poly, x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

/// Quotient and remainder by a monic divisor.
fn poly_divmod(p: &Poly, d: &Poly) -> (Poly, Poly) {
    let dd = d.len() - 1;
    if p.len() <= dd {
        return (vec![Rational::zero()], p.clone());
    }
    let mut r = p.clone();
    let mut q = vec![Rational::zero(); p.len() - dd];
    for i in (0..q.len()).rev() {
        let c = r[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in d.iter().enumerate() {
            r[i + j] -= &c * dj;
        }
        q[i] = c;
    }
    r.truncate(dd.max(1));
    (q, r)
}

fn poly_degree(p: &Poly) -> usize {
    p.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
}

fn eval_at_matrix(f: &Poly, r: &RatMatrix) -> RatMatrix {
    let k = r.nrows();
    let mut acc = RatMatrix::zeros(k, k);
    for c in f.iter().rev() {
        acc = acc.mul(r);
        for i in 0..k {
            acc[(i, i)] += c;
        }
    }
    acc
}

/// Minimal polynomials over `ℚ` of candidate eigenvalues with absolute value at most `bound`.
fn candidate_factors(bound: i64, field: Field) -> Vec<Poly> {
    let mut out: Vec<Poly> = (-bound..=bound).map(|a| vec![rat(-a), rat(1)]).collect();
    let b2 = bound * bound;
    match field {
        Field::Rational => {}
        Field::Eisenstein => {
            // a + bω with ω² + ω + 1 = 0.
            for b in 1..=2 * bound {
                for a in -2 * bound..=2 * bound {
                    let norm = a * a - a * b + b * b;
                    if norm <= b2 {
                        out.push(vec![rat(norm), rat(-(2 * a - b)), rat(1)]);
                    }
                }
            }
        }
        Field::Gaussian => {
            for b in 1..=bound {
                for a in -bound..=bound {
                    let norm = a * a + b * b;
                    if norm <= b2 {
                        out.push(vec![rat(norm), rat(-2 * a), rat(1)]);
                    }
                }
            }
        }
    }
    out
}

fn split_block(block: Block, op: &RatMatrix, bound: i64, field: Field) -> Result<Vec<Block>> {
    let k = block.dim();
    if k == 0 {
        return Ok(Vec::new());
    }
    let r = block.restrict(op);
    let mut residual = r.charpoly();
    let mut factors: Vec<Poly> = Vec::new();
    for f in candidate_factors(bound, field) {
        if poly_degree(&residual) == 0 {
            break;
        }
        let mut hit = false;
        loop {
            let divides = if f.len() == 2 {
                poly_eval(&residual, &-f[0].clone()).is_zero()
            } else {
                poly_divmod(&residual, &f).1.iter().all(Zero::is_zero)
            };
            if !divides {
                break;
            }
            residual = poly_divmod(&residual, &f).0;
            hit = true;
        }
        if hit {
            factors.push(f);
        }
    }
    if poly_degree(&residual) != 0 {
        return Err(Error::DecompositionIncomplete { expected: k, found: k - poly_degree(&residual) });
    }
    let quadratic = |f: &Poly| f.len() == 3;
    let flag = |b: &mut Block, f: &Poly| {
        if quadratic(f) {
            match field {
                Field::Eisenstein => b.eisenstein = true,
                Field::Gaussian => b.gaussian = true,
                Field::Rational => {}
            }
        }
    };
    if factors.len() == 1 {
        let mut b = block;
        flag(&mut b, &factors[0]);
        return Ok(vec![b]);
    }
    let n = block.basis.ncols();
    let mut out = Vec::new();
    let mut total = 0;
    for f in &factors {
        let ker = eval_at_matrix(f, &r).kernel();
        let rows: Vec<Vec<Rational>> = (0..ker.nrows())
            .map(|i| {
                let mut v = vec![Rational::zero(); n];
                for j in 0..k {
                    if !ker[(i, j)].is_zero() {
                        for c in 0..n {
                            v[c] += &ker[(i, j)] * &block.basis[(j, c)];
                        }
                    }
                }
                v
            })
            .collect();
        let mut child = Block::from_rows(rows, n);
        child.eisenstein = block.eisenstein;
        child.gaussian = block.gaussian;
        flag(&mut child, f);
        total += child.dim();
        out.push(child);
    }
    if total != k {
        return Err(Error::DecompositionIncomplete { expected: k, found: total });
    }
    Ok(out)
}

fn split_all(blocks: Vec<Block>, op: &RatMatrix, bound: i64, field: Field) -> Result<Vec<Block>> {
    let mut out = Vec::new();
    for b in blocks {
        out.extend(split_block(b, op, bound, field)?);
    }
    Ok(out)
}

fn field_of(order: usize) -> Field {
    match order {
        3 | 6 => Field::Eisenstein,
        4 => Field::Gaussian,
        _ => Field::Rational,
    }
}

fn is_supported_order(order: usize) -> bool {
    matches!(order, 1 | 2 | 3 | 4 | 6)
}

fn subspace_signature(lattice: &IntegerLattice, basis: &RatMatrix) -> (usize, usize, usize) {
    if basis.nrows() == 0 {
        return (0, 0, 0);
    }
    let form = basis.mul(&lattice.gram().to_rat()).mul(&basis.transpose());
    inertia(&form)
}

fn fixed_by_all(group: &MatrixGroup, basis: &RatMatrix) -> bool {
    group.generators().iter().all(|g| {
        let gr = g.to_rat();
        (0..basis.nrows()).all(|i| gr.mul_vec(basis.row(i)) == basis.row(i))
    })
}

fn component(group: &MatrixGroup, basis: RatMatrix) -> IsotypicComponent {
    let (p, q, z) = subspace_signature(group.lattice(), &basis);
    assert_eq!(z, 0, "components of a nondegenerate form are nondegenerate");
    let is_trivial_type = basis.nrows() > 0 && fixed_by_all(group, &basis);
    IsotypicComponent { basis, signature: Signature { positive: p, negative: q }, is_trivial_type }
}

fn rows_of(sub: &Sublattice) -> Vec<Vec<Rational>> {
    (0..sub.rank()).map(|i| sub.basis.row(i).iter().map(|&x| rat(x)).collect()).collect()
}

/// Whether the invariant lattice carries every positive direction of `Λ`.
pub fn fast_path_applies(group: &MatrixGroup) -> Result<bool> {
    let inv = invariant_lattice(group)?;
    Ok(inv.signature().0 == group.lattice().signature().positive)
}

/// Splits `Λ⊗ℚ` into real-isotypic components.
///
/// Outside the element orders `{1,2,3,4,6}` this only succeeds when the
/// invariant lattice carries every positive direction; the result is then the
/// invariant span together with its (negative-definite) orthogonal complement,
/// which is not split further.
pub fn isotypic_decomposition(group: &MatrixGroup) -> Result<Vec<IsotypicComponent>> {
    let orders = group.element_orders();
    if let Some(&bad) = orders.iter().find(|&&o| !is_supported_order(o)) {
        if fast_path_applies(group)? {
            return fast_path_decomposition(group);
        }
        return Err(Error::UnsupportedGroupExponent(bad));
    }
    let n = group.lattice().rank();
    let mut blocks = vec![Block::from_rows(RatMatrix::identity(n).to_rows(), n)];
    let classes = group.conjugacy_classes();
    let index = group.index();
    let sums: Vec<RatMatrix> = classes
        .iter()
        .map(|c| c.iter().fold(IntMatrix::zeros(n, n), |acc, &i| acc.add(&group.elements()[i])).to_rat())
        .collect();
    let class_of: Vec<usize> = {
        let mut v = vec![0; group.order()];
        for (ci, c) in classes.iter().enumerate() {
            for &i in c {
                v[i] = ci;
            }
        }
        v
    };
    let non_real: Vec<bool> = classes
        .iter()
        .map(|c| {
            let g = &group.elements()[c[0]];
            let inv = Isometry::from_trusted(group.lattice(), g.clone()).inverse().into_matrix();
            class_of[index[&inv]] != class_of[c[0]]
        })
        .collect();
    for (ci, c) in classes.iter().enumerate() {
        if c[0] == 0 {
            continue;
        }
        let field = if non_real[ci] { field_of(orders[c[0]]) } else { Field::Rational };
        blocks = split_all(blocks, &sums[ci], c.len() as i64, field)?;
    }
    // Separate types whose central characters agree class by class only up to
    // complex conjugation.
    for a in 0..classes.len() {
        for b in a + 1..classes.len() {
            if !non_real[a] || !non_real[b] {
                continue;
            }
            let (fa, fb) = (field_of(orders[classes[a][0]]), field_of(orders[classes[b][0]]));
            if fa != fb {
                continue;
            }
            let op = sums[a].add(&sums[b]);
            blocks = split_all(blocks, &op, (classes[a].len() + classes[b].len()) as i64, fa)?;
        }
    }
    if blocks.iter().any(|b| b.eisenstein && b.gaussian) {
        // A type defined over ℚ(ζ₁₂): rational and real types no longer agree.
        return Err(Error::UnsupportedGroupExponent(12));
    }
    let components: Vec<IsotypicComponent> = blocks.into_iter().map(|b| component(group, b.basis)).collect();
    check_decomposition(group, &components)?;
    Ok(components)
}

fn fast_path_decomposition(group: &MatrixGroup) -> Result<Vec<IsotypicComponent>> {
    let n = group.lattice().rank();
    let inv = invariant_lattice(group)?;
    let perp = inv.orthogonal_complement()?;
    let mut out = Vec::new();
    for sub in [&inv, &perp] {
        if sub.rank() > 0 {
            let b = Block::from_rows(rows_of(sub), n);
            out.push(component(group, b.basis));
        }
    }
    check_decomposition(group, &out)?;
    Ok(out)
}

/// Ranks and signatures add up, components are orthogonal and invariant.
fn check_decomposition(group: &MatrixGroup, comps: &[IsotypicComponent]) -> Result<()> {
    let lattice = group.lattice();
    let n = lattice.rank();
    let total: usize = comps.iter().map(|c| c.dim()).sum();
    if total != n {
        return Err(Error::DecompositionIncomplete { expected: n, found: total });
    }
    let sig = lattice.signature();
    let pos: usize = comps.iter().map(|c| c.signature.positive).sum();
    let neg: usize = comps.iter().map(|c| c.signature.negative).sum();
    assert_eq!((pos, neg), (sig.positive, sig.negative), "component signatures must add up");
    let gram = lattice.gram().to_rat();
    for (i, a) in comps.iter().enumerate() {
        let ag = a.basis.mul(&gram);
        for b in &comps[i + 1..] {
            let cross = ag.mul(&b.basis.transpose());
            assert!(cross.to_rows().iter().flatten().all(Zero::is_zero), "components must be orthogonal");
        }
        let block = Block::from_rows(a.basis.to_rows(), n);
        for g in group.generators() {
            let gr = g.to_rat();
            for r in 0..a.dim() {
                assert!(block.coordinates(&gr.mul_vec(a.basis.row(r))).is_some(), "components must be invariant");
            }
        }
    }
    let inv = invariant_lattice(group)?;
    let trivial: usize = comps.iter().filter(|c| c.is_trivial_type).map(|c| c.dim()).sum();
    assert_eq!(trivial, inv.rank(), "the trivial type is the invariant span");
    Ok(())
}

/// The rational subspace `I_G` together with its signature.
#[derive(Clone, Debug)]
pub struct IgSpace {
    pub basis: RatMatrix,
    pub signature: Signature,
    pub fast_path: bool,
}

impl IgSpace {
    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }
}

/// Sum of the components with a positive direction.
pub fn compute_ig(group: &MatrixGroup) -> Result<IgSpace> {
    compute_ig_with(group, true)
}

/// As [`compute_ig`]; `allow_fast_path = false` forces the full decomposition.
pub fn compute_ig_with(group: &MatrixGroup, allow_fast_path: bool) -> Result<IgSpace> {
    let n = group.lattice().rank();
    if allow_fast_path && fast_path_applies(group)? {
        let inv = invariant_lattice(group)?;
        let b = Block::from_rows(rows_of(&inv), n);
        let (p, q, _) = subspace_signature(group.lattice(), &b.basis);
        return Ok(IgSpace { basis: b.basis, signature: Signature { positive: p, negative: q }, fast_path: true });
    }
    let comps = isotypic_decomposition(group)?;
    let rows: Vec<Vec<Rational>> =
        comps.iter().filter(|c| c.signature.positive > 0).flat_map(|c| c.basis.to_rows()).collect();
    let b = Block::from_rows(rows, n);
    let (p, q, _) = subspace_signature(group.lattice(), &b.basis);
    Ok(IgSpace { basis: b.basis, signature: Signature { positive: p, negative: q }, fast_path: false })
}

/// `I_G^⊥ ∩ Λ`, saturated, with an LLL-reduced basis.
pub fn compute_lg(group: &MatrixGroup) -> Result<Sublattice> {
    let ig = compute_ig(group)?;
    lg_from_ig(group, &ig)
}

pub fn lg_from_ig(group: &MatrixGroup, ig: &IgSpace) -> Result<Sublattice> {
    let ambient = group.lattice();
    let n = ambient.rank();
    let rows: Vec<Vec<i64>> =
        (0..ig.dim()).map(|i| primitive_integer_vector(ig.basis.row(i))).collect::<Result<_>>()?;
    let span = Sublattice {
        ambient: ambient.clone(),
        basis: if rows.is_empty() { IntMatrix::zeros(0, n) } else { IntMatrix::from_rows(&rows)? },
        saturated: false,
    };
    let mut lg = span.orthogonal_complement()?;
    if lg.rank() == 0 {
        return Ok(lg);
    }
    let definite = DefiniteLattice::new(lg.gram()).expect("L_G is definite");
    assert!(definite.is_negative(), "L_G must be negative definite");
    let u = lll_reduce(&definite, &default_delta())?;
    lg.basis = u.transpose().mul(&lg.basis);
    for g in group.generators() {
        for r in 0..lg.rank() {
            assert!(lg.contains(&g.mul_vec(lg.basis.row(r))), "L_G must be G-invariant");
        }
    }
    Ok(lg)
}

/// Whether the trivial representation occurs in `I_G`.
pub fn trivial_rep_in_ig(group: &MatrixGroup) -> Result<bool> {
    Ok(invariant_lattice(group)?.signature().0 > 0)
}

/// Projection-free membership: `v ∈ span_ℚ(basis)`.
pub fn in_span(basis: &RatMatrix, v: &[Rational]) -> bool {
    if basis.nrows() == 0 {
        return v.iter().all(Zero::is_zero);
    }
    let mut rows = basis.to_rows();
    rows.push(v.to_vec());
    RatMatrix::from_rows(rows, basis.ncols()).rank() == basis.rank()
}

/// `span(a) == span(b)` as rational subspaces.
pub fn same_span(a: &RatMatrix, b: &RatMatrix) -> bool {
    a.rank() == b.rank() && (0..b.nrows()).all(|i| in_span(a, b.row(i)))
}

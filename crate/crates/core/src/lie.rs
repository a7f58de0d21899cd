//! Finite-dimensional nilpotent Lie algebras over prime fields. Every lattice
//! operation here is linear algebra on row vectors over F_p.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fp::{self, FpMat, Subspace};

/// A Lie algebra given by structure constants on a fixed basis.
/// `bracket_table[i][j]` is the coordinate row of `[e_i, e_j]`.
pub struct LieAlgebraObject {
    p: u32,
    dim: usize,
    bracket_table: Vec<Vec<Vec<u32>>>,
}

pub type Lie = Arc<LieAlgebraObject>;

impl std::fmt::Debug for LieAlgebraObject {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LieAlgebraObject(p={}, dim={})", self.p, self.dim)
    }
}

/// Validation report for a structure-constant tensor.
#[derive(Debug, Clone, serde::Serialize)]
pub struct LieValidationReport {
    pub dim: usize,
    pub p: u32,
    pub nilpotency_class: u32,
}

impl LieAlgebraObject {
    /// Validated constructor: checks shape, antisymmetry, Jacobi, nilpotency.
    pub fn new(p: u32, dim: usize, bracket_table: Vec<Vec<Vec<u32>>>) -> Result<Lie> {
        if !fp::is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        if bracket_table.len() != dim
            || bracket_table.iter().any(|r| r.len() != dim || r.iter().any(|v| v.len() != dim))
        {
            return Err(Error::Invalid("structure tensor shape mismatch".into()));
        }
        let obj = LieAlgebraObject { p, dim, bracket_table };
        obj.validate()?;
        Ok(Arc::new(obj))
    }

    pub(crate) fn new_unchecked(p: u32, dim: usize, bracket_table: Vec<Vec<Vec<u32>>>) -> Lie {
        Arc::new(LieAlgebraObject { p, dim, bracket_table })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> &[u32] {
        &self.bracket_table[i][j]
    }

    /// Bracket of two coordinate rows.
    pub fn bracket(&self, u: &[u32], v: &[u32]) -> Vec<u32> {
        let p = self.p;
        let mut out = vec![0u32; self.dim];
        for i in 0..self.dim {
            if u[i] == 0 {
                continue;
            }
            for j in 0..self.dim {
                if v[j] == 0 {
                    continue;
                }
                let c = fp::mul(p, u[i], v[j]);
                for (k, &t) in self.bracket_table[i][j].iter().enumerate() {
                    if t != 0 {
                        out[k] = fp::add(p, out[k], fp::mul(p, c, t));
                    }
                }
            }
        }
        out
    }

    fn validate(&self) -> Result<()> {
        let p = self.p;
        let dim = self.dim;
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let a = self.bracket_table[i][j][k];
                    let b = self.bracket_table[j][i][k];
                    if fp::add(p, a, b) != 0 {
                        return Err(Error::NotAntisymmetric { i, j });
                    }
                }
            }
        }
        let e = |i: usize| {
            let mut v = vec![0u32; dim];
            v[i] = 1;
            v
        };
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    // [[i,j],k] + [[j,k],i] + [[k,i],j] = 0
                    let t1 = self.bracket(&self.bracket(&e(i), &e(j)), &e(k));
                    let t2 = self.bracket(&self.bracket(&e(j), &e(k)), &e(i));
                    let t3 = self.bracket(&self.bracket(&e(k), &e(i)), &e(j));
                    for l in 0..dim {
                        if fp::add(p, fp::add(p, t1[l], t2[l]), t3[l]) != 0 {
                            return Err(Error::JacobiViolation { i, j, k });
                        }
                    }
                }
            }
        }
        self.nilpotency_class().ok_or(Error::NotNilpotent)?;
        Ok(())
    }

    /// Class of the lower central series, `None` when it stalls above zero.
    pub fn nilpotency_class(&self) -> Option<u32> {
        let this = self;
        let full = Subspace::full(self.p, self.dim);
        let mut term = bracket_span(this, &full, &full);
        if self.dim == 0 {
            return Some(0);
        }
        let mut class = 1u32;
        loop {
            if term.dim() == 0 {
                return Some(class);
            }
            let next = bracket_span(this, &term, &full);
            if next.dim() == term.dim() {
                return None;
            }
            term = next;
            class += 1;
        }
    }

    pub fn validate_report(&self) -> Result<LieValidationReport> {
        self.validate()?;
        Ok(LieValidationReport {
            dim: self.dim,
            p: self.p,
            nilpotency_class: self.nilpotency_class().ok_or(Error::NotNilpotent)?,
        })
    }
}

/// A subspace of a carrier; flagged handles are produced by the ideal ops.
#[derive(Clone)]
pub struct SubspaceHandle {
    parent: Lie,
    pub space: Subspace,
}

impl std::fmt::Debug for SubspaceHandle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SubspaceHandle(dim={})", self.space.dim())
    }
}

impl PartialEq for SubspaceHandle {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent) && self.space == other.space
    }
}
impl Eq for SubspaceHandle {}

impl SubspaceHandle {
    pub fn new(parent: &Lie, space: Subspace) -> Self {
        SubspaceHandle { parent: parent.clone(), space }
    }

    pub fn parent(&self) -> &Lie {
        &self.parent
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.space.dim() == 0
    }

    pub fn contains(&self, other: &SubspaceHandle) -> bool {
        self.space.contains(&other.space)
    }

    /// True when closed under bracketing with the whole parent.
    pub fn is_ideal(&self) -> bool {
        let full = full_subspace(&self.parent);
        let br = bracket_span(&self.parent, &self.space_ref(), &full.space_ref());
        self.space.contains(&br)
    }

    fn space_ref(&self) -> Subspace {
        self.space.clone()
    }

    fn same_parent(&self, other: &SubspaceHandle) -> Result<()> {
        if !Arc::ptr_eq(&self.parent, &other.parent) {
            return Err(Error::MismatchedParent);
        }
        Ok(())
    }
}

pub fn full_subspace(l: &Lie) -> SubspaceHandle {
    SubspaceHandle::new(l, Subspace::full(l.p(), l.dim()))
}

pub fn zero_subspace(l: &Lie) -> SubspaceHandle {
    SubspaceHandle::new(l, Subspace::zero(l.p(), l.dim()))
}

fn bracket_span(l: &LieAlgebraObject, s: &Subspace, t: &Subspace) -> Subspace {
    let mut vecs = Vec::new();
    for i in 0..s.basis.rows {
        for j in 0..t.basis.rows {
            vecs.push(l.bracket(s.basis.row(i), t.basis.row(j)));
        }
    }
    Subspace::from_spanning(l.p(), &vecs, l.dim())
}

/// Ideal of `l` generated by all `[s, t]`: span of basis brackets, closed
/// under bracketing with the parent until stable.
pub fn bracket_ideal(l: &Lie, s: &SubspaceHandle, t: &SubspaceHandle) -> Result<SubspaceHandle> {
    s.same_parent(t)?;
    if !Arc::ptr_eq(&s.parent, l) {
        return Err(Error::MismatchedParent);
    }
    let full = Subspace::full(l.p(), l.dim());
    let mut cur = bracket_span(l, &s.space, &t.space);
    loop {
        let grown = cur.sum(&bracket_span(l, &cur, &full))?;
        if grown.dim() == cur.dim() {
            return Ok(SubspaceHandle::new(l, cur));
        }
        cur = grown;
    }
}

pub fn sum(s: &SubspaceHandle, t: &SubspaceHandle) -> Result<SubspaceHandle> {
    s.same_parent(t)?;
    Ok(SubspaceHandle::new(&s.parent, s.space.sum(&t.space)?))
}

pub fn intersect(s: &SubspaceHandle, t: &SubspaceHandle) -> Result<SubspaceHandle> {
    s.same_parent(t)?;
    Ok(SubspaceHandle::new(&s.parent, s.space.intersect(&t.space)?))
}

/// A morphism of Lie algebras as a `dim(dom) x dim(cod)` matrix acting on
/// row vectors: `x -> x · M`.
#[derive(Clone)]
pub struct LieMorphism {
    domain: Lie,
    codomain: Lie,
    matrix: FpMat,
}

impl std::fmt::Debug for LieMorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LieMorphism({} -> {})", self.domain.dim(), self.codomain.dim())
    }
}

impl LieMorphism {
    pub fn new(domain: Lie, codomain: Lie, matrix: FpMat) -> Result<Self> {
        if matrix.rows != domain.dim() || matrix.cols != codomain.dim() || matrix.p != domain.p()
        {
            return Err(Error::Invalid("morphism matrix shape mismatch".into()));
        }
        if domain.p() != codomain.p() {
            return Err(Error::MismatchedParent);
        }
        // Bracket preservation on basis pairs determines it everywhere.
        for i in 0..domain.dim() {
            for j in 0..domain.dim() {
                let lhs = {
                    let br = domain.basis_bracket(i, j).to_vec();
                    apply(&matrix, &br)
                };
                let rhs = codomain.bracket(matrix.row(i), matrix.row(j));
                if lhs != rhs {
                    return Err(Error::NotALieMorphism { i, j });
                }
            }
        }
        Ok(LieMorphism { domain, codomain, matrix })
    }

    pub(crate) fn new_unchecked(domain: Lie, codomain: Lie, matrix: FpMat) -> Self {
        LieMorphism { domain, codomain, matrix }
    }

    pub fn identity(l: &Lie) -> Self {
        LieMorphism {
            domain: l.clone(),
            codomain: l.clone(),
            matrix: FpMat::identity(l.p(), l.dim()),
        }
    }

    pub fn domain(&self) -> &Lie {
        &self.domain
    }

    pub fn codomain(&self) -> &Lie {
        &self.codomain
    }

    pub fn matrix(&self) -> &FpMat {
        &self.matrix
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        apply(&self.matrix, v)
    }

    /// `second ∘ first`.
    pub fn compose(second: &LieMorphism, first: &LieMorphism) -> Result<LieMorphism> {
        if !Arc::ptr_eq(&first.codomain, &second.domain) {
            return Err(Error::MismatchedParent);
        }
        Ok(LieMorphism {
            domain: first.domain.clone(),
            codomain: second.codomain.clone(),
            matrix: first.matrix.matmul(&second.matrix),
        })
    }

    pub fn is_surjective(&self) -> bool {
        self.matrix.rank() == self.codomain.dim()
    }

    pub fn equal(&self, other: &LieMorphism) -> bool {
        Arc::ptr_eq(&self.domain, &other.domain)
            && Arc::ptr_eq(&self.codomain, &other.codomain)
            && self.matrix == other.matrix
    }
}

fn apply(m: &FpMat, v: &[u32]) -> Vec<u32> {
    let p = m.p;
    let mut out = vec![0u32; m.cols];
    for (i, &c) in v.iter().enumerate() {
        if c == 0 {
            continue;
        }
        for j in 0..m.cols {
            out[j] = fp::add(p, out[j], fp::mul(p, c, m.at(i, j)));
        }
    }
    out
}

pub fn kernel(f: &LieMorphism) -> SubspaceHandle {
    SubspaceHandle::new(&f.domain, Subspace { basis: f.matrix.nullspace() })
}

pub fn image(f: &LieMorphism) -> SubspaceHandle {
    let mut m = f.matrix.clone();
    m.rref();
    SubspaceHandle::new(&f.codomain, Subspace { basis: m })
}

pub fn image_of_subspace(f: &LieMorphism, s: &SubspaceHandle) -> Result<SubspaceHandle> {
    if !Arc::ptr_eq(s.parent(), f.domain()) {
        return Err(Error::MismatchedParent);
    }
    let mut m = s.space.basis.matmul(&f.matrix);
    m.rref();
    Ok(SubspaceHandle::new(&f.codomain, Subspace { basis: m }))
}

/// Quotient by an ideal: a carrier on a complement basis plus the projection.
pub fn quotient(l: &Lie, ideal: &SubspaceHandle) -> Result<(Lie, LieMorphism)> {
    if !Arc::ptr_eq(&ideal.parent, l) {
        return Err(Error::MismatchedParent);
    }
    if !ideal.is_ideal() {
        return Err(Error::NotAnIdeal);
    }
    let p = l.p();
    let dim = l.dim();
    // Choose coset representatives: standard basis vectors whose indices are
    // not pivot columns of the ideal.
    let mut m = ideal.space.basis.clone();
    let pivots = m.rref();
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let reps: Vec<usize> = (0..dim).filter(|c| !pivot_set.contains(c)).collect();
    let qdim = reps.len();
    // Projection matrix: e_c maps to its reduction's free coordinates.
    let reduce = |v: &[u32]| -> Vec<u32> {
        // subtract ideal rows to zero out pivot coordinates
        let mut w = v.to_vec();
        for (ri, &pc) in pivots.iter().enumerate() {
            let c = w[pc];
            if c != 0 {
                for j in 0..dim {
                    w[j] = fp::sub(p, w[j], fp::mul(p, c, m.at(ri, j)));
                }
            }
        }
        reps.iter().map(|&r| w[r]).collect()
    };
    let mut proj = FpMat::new(p, dim, qdim);
    for c in 0..dim {
        let mut e = vec![0u32; dim];
        e[c] = 1;
        let red = reduce(&e);
        for j in 0..qdim {
            proj.set(c, j, red[j]);
        }
    }
    // Structure constants of the quotient on the representative basis.
    let mut table = vec![vec![vec![0u32; qdim]; qdim]; qdim];
    for (a, &ra) in reps.iter().enumerate() {
        for (b, &rb) in reps.iter().enumerate() {
            let mut ea = vec![0u32; dim];
            ea[ra] = 1;
            let mut eb = vec![0u32; dim];
            eb[rb] = 1;
            let br = l.bracket(&ea, &eb);
            table[a][b] = reduce(&br);
        }
    }
    let q = LieAlgebraObject::new_unchecked(p, qdim, table);
    let proj = LieMorphism::new_unchecked(l.clone(), q.clone(), proj);
    Ok((q, proj))
}

/// Pullback of `f : B -> A` and `g : C -> A` as a subalgebra of `B ⊕ C`
/// materialized on its own basis, with the two projections.
pub fn fiber_product(
    f: &LieMorphism,
    g: &LieMorphism,
) -> Result<(Lie, LieMorphism, LieMorphism)> {
    if !Arc::ptr_eq(f.codomain(), g.codomain()) {
        return Err(Error::MismatchedParent);
    }
    let p = f.domain().p();
    let db = f.domain().dim();
    let dc = g.domain().dim();
    let da = f.codomain().dim();
    // Solutions of (x, y) with x·F = y·G: nullspace of [F; -G] stacked.
    let mut sys = FpMat::new(p, db + dc, da);
    for i in 0..db {
        for j in 0..da {
            sys.set(i, j, f.matrix().at(i, j));
        }
    }
    for i in 0..dc {
        for j in 0..da {
            sys.set(db + i, j, fp::neg(p, g.matrix().at(i, j)));
        }
    }
    // nullspace of the transpose action: rows z with z·sys = 0.
    let mut syst = FpMat::new(p, da, db + dc);
    for i in 0..db + dc {
        for j in 0..da {
            syst.set(j, i, sys.at(i, j));
        }
    }
    let basis = syst.nullspace(); // rows in B ⊕ C coordinates
    let pdim = basis.rows;
    // Structure constants: bracket in the direct sum, re-expressed in basis.
    let bracket_sum = |u: &[u32], v: &[u32]| -> Vec<u32> {
        let bu = f.domain().bracket(&u[..db], &v[..db]);
        let cu = g.domain().bracket(&u[db..], &v[db..]);
        let mut out = bu;
        out.extend(cu);
        out
    };
    let express = |v: &[u32]| -> Vec<u32> {
        // solve x · basis = v; basis is in RREF so read off pivot columns
        let mut coeffs = vec![0u32; pdim];
        let mut w = v.to_vec();
        for r in 0..pdim {
            let pivot = (0..db + dc).find(|&c| basis.at(r, c) != 0).unwrap();
            let c = w[pivot];
            if c != 0 {
                coeffs[r] = c;
                for j in 0..db + dc {
                    w[j] = fp::sub(p, w[j], fp::mul(p, c, basis.at(r, j)));
                }
            }
        }
        debug_assert!(w.iter().all(|&x| x == 0), "bracket escaped the pullback");
        coeffs
    };
    let mut table = vec![vec![vec![0u32; pdim]; pdim]; pdim];
    for a in 0..pdim {
        for b in 0..pdim {
            table[a][b] = express(&bracket_sum(basis.row(a), basis.row(b)));
        }
    }
    let pl = LieAlgebraObject::new_unchecked(p, pdim, table);
    let mut m1 = FpMat::new(p, pdim, db);
    let mut m2 = FpMat::new(p, pdim, dc);
    for a in 0..pdim {
        for j in 0..db {
            m1.set(a, j, basis.at(a, j));
        }
        for j in 0..dc {
            m2.set(a, j, basis.at(a, db + j));
        }
    }
    let p1 = LieMorphism::new_unchecked(pl.clone(), f.domain().clone(), m1);
    let p2 = LieMorphism::new_unchecked(pl.clone(), g.domain().clone(), m2);
    Ok((pl, p1, p2))
}

/// Induced map `x -> (u(x), v(x))` into a fiber product built by
/// `fiber_product`; `fiber`'s basis is recovered from the projections.
pub fn into_fiber(
    fiber: &Lie,
    proj1: &LieMorphism,
    proj2: &LieMorphism,
    u: &LieMorphism,
    v: &LieMorphism,
) -> Result<LieMorphism> {
    if !Arc::ptr_eq(u.domain(), v.domain()) {
        return Err(Error::MismatchedParent);
    }
    let p = fiber.p();
    let db = proj1.codomain().dim();
    let dc = proj2.codomain().dim();
    let pdim = fiber.dim();
    // Reassemble the fiber basis rows in B ⊕ C coordinates.
    let mut basis = FpMat::new(p, pdim, db + dc);
    for a in 0..pdim {
        for j in 0..db {
            basis.set(a, j, proj1.matrix().at(a, j));
        }
        for j in 0..dc {
            basis.set(a, db + j, proj2.matrix().at(a, j));
        }
    }
    let express = |v_row: &[u32]| -> Result<Vec<u32>> {
        let mut coeffs = vec![0u32; pdim];
        let mut w = v_row.to_vec();
        for r in 0..pdim {
            let pivot = (0..db + dc).find(|&c| basis.at(r, c) != 0).unwrap();
            let c = w[pivot];
            if c != 0 {
                coeffs[r] = c;
                for j in 0..db + dc {
                    w[j] = fp::sub(p, w[j], fp::mul(p, c, basis.at(r, j)));
                }
            }
        }
        if w.iter().any(|&x| x != 0) {
            return Err(Error::Invalid("induced pair lands outside the fiber".into()));
        }
        Ok(coeffs)
    };
    let dx = u.domain().dim();
    let mut m = FpMat::new(p, dx, pdim);
    for i in 0..dx {
        let mut row = u.matrix().row(i).to_vec();
        row.extend_from_slice(v.matrix().row(i));
        let coeffs = express(&row)?;
        for j in 0..pdim {
            m.set(i, j, coeffs[j]);
        }
    }
    Ok(LieMorphism::new_unchecked(u.domain().clone(), fiber.clone(), m))
}

/// Materialize a subalgebra (e.g. a kernel) on its own basis, with the
/// inclusion morphism. The handle must be closed under the bracket.
pub fn materialize_subspace(s: &SubspaceHandle) -> Result<(Lie, LieMorphism)> {
    let l = s.parent().clone();
    let p = l.p();
    let dim = l.dim();
    let basis = &s.space.basis; // RREF rows
    let sdim = basis.rows;
    let express = |v: &[u32]| -> Result<Vec<u32>> {
        let mut coeffs = vec![0u32; sdim];
        let mut w = v.to_vec();
        for r in 0..sdim {
            let pivot = (0..dim).find(|&c| basis.at(r, c) != 0).unwrap();
            let c = w[pivot];
            if c != 0 {
                coeffs[r] = c;
                for j in 0..dim {
                    w[j] = fp::sub(p, w[j], fp::mul(p, c, basis.at(r, j)));
                }
            }
        }
        if w.iter().any(|&x| x != 0) {
            return Err(Error::NotAnIdeal);
        }
        Ok(coeffs)
    };
    let mut table = vec![vec![vec![0u32; sdim]; sdim]; sdim];
    for a in 0..sdim {
        for b in 0..sdim {
            table[a][b] = express(&l.bracket(basis.row(a), basis.row(b)))?;
        }
    }
    let sub = LieAlgebraObject::new_unchecked(p, sdim, table);
    let incl = LieMorphism::new_unchecked(sub.clone(), l, basis.clone());
    Ok((sub, incl))
}

/// Solve `x · A = t` for a row vector `x`; `None` when inconsistent.
pub fn solve_row(a: &FpMat, t: &[u32]) -> Option<Vec<u32>> {
    let p = a.p;
    let (m, n) = (a.rows, a.cols);
    // Augment each row of A with the corresponding unit combo vector and run
    // RREF on the left block only.
    let mut work = FpMat::new(p, m, n + m);
    for i in 0..m {
        for j in 0..n {
            work.set(i, j, a.at(i, j));
        }
        work.set(i, n + i, 1);
    }
    // Manual RREF restricted to the first n columns.
    let mut r = 0usize;
    let mut pivots: Vec<usize> = Vec::new();
    for c in 0..n {
        if r == m {
            break;
        }
        let Some(i) = (r..m).find(|&i| work.at(i, c) != 0) else { continue };
        for j in 0..n + m {
            work.data.swap(r * (n + m) + j, i * (n + m) + j);
        }
        let piv_inv = fp::inv(p, work.at(r, c));
        for j in 0..n + m {
            let v = fp::mul(p, work.at(r, j), piv_inv);
            work.set(r, j, v);
        }
        for i in 0..m {
            if i != r && work.at(i, c) != 0 {
                let factor = work.at(i, c);
                for j in 0..n + m {
                    let v = fp::sub(p, work.at(i, j), fp::mul(p, factor, work.at(r, j)));
                    work.set(i, j, v);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    // Express t against the reduced rows.
    let mut x = vec![0u32; m];
    let mut w = t.to_vec();
    for (ri, &pc) in pivots.iter().enumerate() {
        let c = w[pc];
        if c != 0 {
            for j in 0..n {
                w[j] = fp::sub(p, w[j], fp::mul(p, c, work.at(ri, j)));
            }
            for j in 0..m {
                x[j] = fp::add(p, x[j], fp::mul(p, c, work.at(ri, n + j)));
            }
        }
    }
    if w.iter().any(|&v| v != 0) {
        return None;
    }
    Some(x)
}

/// Factor `u` through a surjection `proj` sharing its domain:
/// the unique `v` with `v ∘ proj = u`.
pub fn factor_through_surjection(u: &LieMorphism, proj: &LieMorphism) -> Result<LieMorphism> {
    if !Arc::ptr_eq(u.domain(), proj.domain()) {
        return Err(Error::MismatchedParent);
    }
    let q = proj.codomain();
    let p = q.p();
    let mut out = FpMat::new(p, q.dim(), u.codomain().dim());
    for i in 0..q.dim() {
        let mut e = vec![0u32; q.dim()];
        e[i] = 1;
        let x = solve_row(proj.matrix(), &e)
            .ok_or_else(|| Error::Invalid("projection is not surjective".into()))?;
        let row = u.apply(&x);
        for j in 0..u.codomain().dim() {
            out.set(i, j, row[j]);
        }
    }
    // well-definedness: kernel of proj must die under u
    let k = kernel(proj);
    for r in 0..k.space.basis.rows {
        if u.apply(k.space.basis.row(r)).iter().any(|&c| c != 0) {
            return Err(Error::Invalid("map does not factor through the projection".into()));
        }
    }
    Ok(LieMorphism::new_unchecked(q.clone(), u.codomain().clone(), out))
}

/// Factor `u` through an injection `incl` into `u`'s codomain:
/// the unique `w` with `incl ∘ w = u`.
pub fn factor_through_injection(u: &LieMorphism, incl: &LieMorphism) -> Result<LieMorphism> {
    if !Arc::ptr_eq(u.codomain(), incl.codomain()) {
        return Err(Error::MismatchedParent);
    }
    let k = incl.domain();
    let p = k.p();
    let mut out = FpMat::new(p, u.domain().dim(), k.dim());
    for i in 0..u.domain().dim() {
        let row = u.matrix().row(i);
        let x = solve_row(incl.matrix(), row)
            .ok_or_else(|| Error::Invalid("image escapes the subobject".into()))?;
        for j in 0..k.dim() {
            out.set(i, j, x[j]);
        }
    }
    Ok(LieMorphism::new_unchecked(u.domain().clone(), k.clone(), out))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    DescendingCentral,
    Derived,
}

/// `Z_k` or `D_k` as ideals, by iterated `bracket_ideal`.
pub fn lie_series(l: &Lie, kind: SeriesKind, k: u32) -> Result<SubspaceHandle> {
    let full = full_subspace(l);
    let mut term = bracket_ideal(l, &full, &full)?;
    for _ in 1..k {
        term = match kind {
            SeriesKind::DescendingCentral => bracket_ideal(l, &term, &full)?,
            SeriesKind::Derived => bracket_ideal(l, &term, &term)?,
        };
    }
    Ok(term)
}

/// Free nilpotent Lie algebra of class at most `c` on `d` generators, on the
/// Hall basis ordered degree-lexicographically. Supports `c <= 3`.
/// Returns the carrier and the generator indices.
pub fn free_nilpotent(d: usize, c: u32, p: u32) -> Result<(Lie, Vec<usize>)> {
    if !(1..=3).contains(&c) {
        return Err(Error::UnsupportedClass { class: c });
    }
    if d == 0 {
        return Err(Error::Invalid("need at least one generator".into()));
    }
    if !fp::is_prime(p) {
        return Err(Error::Invalid(format!("{p} is not prime")));
    }
    // Basis layout: degree 1: x_0..x_{d-1}; degree 2: h(i,j) = [x_i, x_j],
    // i < j; degree 3: t(i,j,k) = [[x_i, x_j], x_k], i < j, k >= i.
    let mut deg2: Vec<(usize, usize)> = Vec::new();
    if c >= 2 {
        for i in 0..d {
            for j in (i + 1)..d {
                deg2.push((i, j));
            }
        }
    }
    let mut deg3: Vec<(usize, usize, usize)> = Vec::new();
    if c >= 3 {
        for &(i, j) in &deg2 {
            for k in i..d {
                deg3.push((i, j, k));
            }
        }
    }
    let dim = d + deg2.len() + deg3.len();
    let h_index = |i: usize, j: usize| -> usize {
        d + deg2.iter().position(|&x| x == (i, j)).unwrap()
    };
    let t_index = |i: usize, j: usize, k: usize| -> usize {
        d + deg2.len() + deg3.iter().position(|&x| x == (i, j, k)).unwrap()
    };
    // [h(i,j), x_k] expressed in the Hall basis. Non-basic triples rewrite by
    // Jacobi: [[x_i,x_j],x_k] = [[x_i,x_k],x_j] - [[x_j,x_k],x_i] when k < i.
    let h_bracket_x = |i: usize, j: usize, k: usize| -> Vec<(usize, u32)> {
        if c < 3 {
            return vec![];
        }
        if k >= i {
            vec![(t_index(i, j, k), 1)]
        } else {
            // k < i < j; both rewritten terms are basic
            vec![(t_index(k, i, j), p - 1), (t_index(k, j, i), 1)]
            // [[x_i,x_j],x_k] = [[x_i,x_k],x_j] − [[x_j,x_k],x_i]
            //                 = −[[x_k,x_i],x_j] + [[x_k,x_j],x_i]
        }
    };
    let mut table = vec![vec![vec![0u32; dim]; dim]; dim];
    let mut set = |a: usize, b: usize, terms: Vec<(usize, u32)>| {
        for (idx, coef) in &terms {
            table[a][b][*idx] = *coef % p;
        }
        // antisymmetric counterpart
        let neg: Vec<(usize, u32)> = terms.iter().map(|&(i, cf)| (i, (p - cf % p) % p)).collect();
        for (idx, coef) in neg {
            table[b][a][idx] = coef;
        }
    };
    if c >= 2 {
        for &(i, j) in &deg2 {
            set(i, j, vec![(h_index(i, j), 1)]);
        }
    }
    if c >= 3 {
        for &(i, j) in deg2.clone().iter() {
            for k in 0..d {
                let h = h_index(i, j);
                set(h, k, h_bracket_x(i, j, k));
            }
        }
    }
    let l = LieAlgebraObject::new_unchecked(p, dim, table);
    debug_assert!(l.validate().is_ok(), "free nilpotent tensor must validate");
    Ok((l, (0..d).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn heisenberg3() -> Lie {
        // dim 3, [e0, e1] = e2
        let mut table = vec![vec![vec![0u32; 3]; 3]; 3];
        table[0][1][2] = 1;
        table[1][0][2] = 2; // -1 mod 3
        LieAlgebraObject::new(3, 3, table).unwrap()
    }

    #[test]
    fn validate_classes() {
        let abelian = LieAlgebraObject::new(3, 2, vec![vec![vec![0; 2]; 2]; 2]).unwrap();
        assert_eq!(abelian.validate_report().unwrap().nilpotency_class, 1);
        let h = heisenberg3();
        assert_eq!(h.validate_report().unwrap().nilpotency_class, 2);
    }

    #[test]
    fn broken_antisymmetry_rejected() {
        let mut table = vec![vec![vec![0u32; 3]; 3]; 3];
        table[0][1][2] = 1;
        table[1][0][2] = 1; // should be -1
        match LieAlgebraObject::new(3, 3, table) {
            Err(Error::NotAntisymmetric { .. }) => {}
            other => panic!("expected NotAntisymmetric, got {other:?}"),
        }
    }

    #[test]
    fn bracket_ideal_examples() {
        let h = heisenberg3();
        let full = full_subspace(&h);
        let d = bracket_ideal(&h, &full, &full).unwrap();
        assert_eq!(d.dim(), 1);
        assert!(d.space.contains_vec(&[0, 0, 1]));
        let z = zero_subspace(&h);
        assert!(intersect(&d, &z).unwrap().is_zero());
        let ab = LieAlgebraObject::new(5, 2, vec![vec![vec![0; 2]; 2]; 2]).unwrap();
        let f2 = full_subspace(&ab);
        assert!(bracket_ideal(&ab, &f2, &f2).unwrap().is_zero());
    }

    #[test]
    fn free_nilpotent_dimensions() {
        let (l, gens) = free_nilpotent(2, 2, 3).unwrap();
        assert_eq!(l.dim(), 3);
        assert_eq!(gens, vec![0, 1]);
        let (l, _) = free_nilpotent(3, 1, 5).unwrap();
        assert_eq!(l.dim(), 3);
        assert_eq!(l.nilpotency_class(), Some(1));
        // Hall monomial count for degree <= 3 on 2 letters: 2 + 1 + 2 = 5.
        let (l, _) = free_nilpotent(2, 3, 3).unwrap();
        assert_eq!(l.dim(), 5);
        assert_eq!(l.nilpotency_class(), Some(3));
    }

    #[test]
    fn free_nilpotent_class3_series() {
        let (l, _) = free_nilpotent(2, 3, 3).unwrap();
        let z2 = lie_series(&l, SeriesKind::DescendingCentral, 2).unwrap();
        assert_eq!(z2.dim(), 2);
        let z3 = lie_series(&l, SeriesKind::DescendingCentral, 3).unwrap();
        assert!(z3.is_zero());
    }

    #[test]
    fn free_nilpotent_jacobi_holds_d3() {
        // The class-3 rewrite must satisfy Jacobi for three generators.
        let (l, _) = free_nilpotent(3, 3, 5).unwrap();
        assert!(l.validate_report().is_ok());
        assert_eq!(l.dim(), 3 + 3 + 8);
    }

    #[test]
    fn rank_nullity_on_quotient() {
        let h = heisenberg3();
        let d = bracket_ideal(&h, &full_subspace(&h), &full_subspace(&h)).unwrap();
        let (q, proj) = quotient(&h, &d).unwrap();
        assert_eq!(q.dim(), 2);
        assert!(proj.is_surjective());
        let k = kernel(&proj);
        assert_eq!(k.dim() + q.dim(), h.dim());
        assert_eq!(k.space, d.space);
    }

    #[test]
    fn fiber_product_of_projections() {
        let h = heisenberg3();
        let d = bracket_ideal(&h, &full_subspace(&h), &full_subspace(&h)).unwrap();
        let (q, proj) = quotient(&h, &d).unwrap();
        let (pl, p1, p2) = fiber_product(&proj, &proj).unwrap();
        // dim of pullback: dim H + dim K = 3 + 1
        assert_eq!(pl.dim(), 4);
        assert!(p1.is_surjective() && p2.is_surjective());
        let _ = q;
        // the induced diagonal lands inside
        let idh = LieMorphism::identity(&h);
        let diag = into_fiber(&pl, &p1, &p2, &idh, &idh).unwrap();
        let im = image(&diag);
        assert_eq!(im.dim(), 3);
    }

    #[test]
    fn derived_series_abelian() {
        let ab = LieAlgebraObject::new(3, 4, vec![vec![vec![0; 4]; 4]; 4]).unwrap();
        assert!(lie_series(&ab, SeriesKind::Derived, 1).unwrap().is_zero());
        let h = heisenberg3();
        assert!(lie_series(&h, SeriesKind::DescendingCentral, 2).unwrap().is_zero());
    }
}

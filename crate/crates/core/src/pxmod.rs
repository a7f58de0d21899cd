//! Finite precrossed modules: carriers with fully tabulated actions, Peiffer
//! elements and commutators, crossed-module reflection, and the componentwise
//! subobject lattice.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{
    self, FiniteGroupObject, Group, GroupMorphism, SubgroupHandle, DEFAULT_SIZE_CAP,
};

/// A precrossed module `(C, G, ∂)`: a boundary homomorphism `∂ : C -> G`
/// together with a left action of `G` on `C` by automorphisms satisfying
/// `∂(ᵍc) = g ∂(c) g⁻¹`.
pub struct PrecrossedModuleObject {
    c: Group,
    g: Group,
    /// `action[g][c] = ᵍc`
    action: Vec<Vec<u32>>,
    boundary: Vec<u32>,
}

pub type Pxm = Arc<PrecrossedModuleObject>;

impl std::fmt::Debug for PrecrossedModuleObject {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PrecrossedModule(|C|={}, |G|={})", self.c.order(), self.g.order())
    }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct PxmodValidationReport {
    pub c_order: u32,
    pub g_order: u32,
    pub is_crossed: bool,
}

impl PrecrossedModuleObject {
    pub fn new(c: Group, g: Group, action: Vec<Vec<u32>>, boundary: Vec<u32>) -> Result<Pxm> {
        if action.len() != g.order() as usize
            || action.iter().any(|r| r.len() != c.order() as usize)
        {
            return Err(Error::Invalid("action table shape mismatch".into()));
        }
        if boundary.len() != c.order() as usize {
            return Err(Error::Invalid("boundary vector length mismatch".into()));
        }
        for &v in &boundary {
            if v >= g.order() {
                return Err(Error::IndexOutOfRange { index: v, order: g.order() });
            }
        }
        let obj = PrecrossedModuleObject { c, g, action, boundary };
        obj.validate()?;
        Ok(Arc::new(obj))
    }

    fn validate(&self) -> Result<()> {
        let (c, g) = (&self.c, &self.g);
        // boundary is a homomorphism
        for x in 0..c.order() {
            for y in 0..c.order() {
                if self.boundary[c.mul(x, y) as usize]
                    != g.mul(self.boundary[x as usize], self.boundary[y as usize])
                {
                    return Err(Error::Invalid(format!(
                        "boundary is not a homomorphism at ({x}, {y})"
                    )));
                }
            }
        }
        // identity of G acts trivially; each g acts by an automorphism;
        // the action is a left action.
        for x in 0..c.order() {
            if self.act(g.identity(), x) != x {
                return Err(Error::NotAnAction { g: g.identity(), c: x });
            }
        }
        for gg in 0..g.order() {
            for x in 0..c.order() {
                for y in 0..c.order() {
                    if self.act(gg, c.mul(x, y)) != c.mul(self.act(gg, x), self.act(gg, y)) {
                        return Err(Error::NotAnAction { g: gg, c: x });
                    }
                }
            }
        }
        for g1 in 0..g.order() {
            for g2 in 0..g.order() {
                for x in 0..c.order() {
                    if self.act(g.mul(g1, g2), x) != self.act(g1, self.act(g2, x)) {
                        return Err(Error::NotAnAction { g: g1, c: x });
                    }
                }
            }
        }
        // equivariance ∂(ᵍc) = g ∂(c) g⁻¹
        for gg in 0..g.order() {
            for x in 0..c.order() {
                if self.boundary[self.act(gg, x) as usize]
                    != g.conjugate(gg, self.boundary[x as usize])
                {
                    return Err(Error::NotEquivariant { g: gg, c: x });
                }
            }
        }
        Ok(())
    }

    pub fn c(&self) -> &Group {
        &self.c
    }

    pub fn g(&self) -> &Group {
        &self.g
    }

    #[inline]
    pub fn act(&self, g: u32, c: u32) -> u32 {
        self.action[g as usize][c as usize]
    }

    #[inline]
    pub fn boundary_of(&self, c: u32) -> u32 {
        self.boundary[c as usize]
    }

    pub fn action_table(&self) -> &Vec<Vec<u32>> {
        &self.action
    }

    pub fn boundary_vec(&self) -> &[u32] {
        &self.boundary
    }

    /// Peiffer element `⟨m, n⟩ = m n m⁻¹ (^{∂m}n)⁻¹`; its boundary is always 1.
    pub fn peiffer_element(&self, m: u32, n: u32) -> u32 {
        let c = &self.c;
        let twisted = self.act(self.boundary_of(m), n);
        c.mul(c.mul(c.mul(m, n), c.inv(m)), c.inv(twisted))
    }

    /// Peiffer condition: `^{∂c}c' = c c' c⁻¹` for all pairs.
    pub fn is_crossed(&self) -> bool {
        (0..self.c.order()).all(|m| {
            (0..self.c.order()).all(|n| self.peiffer_element(m, n) == self.c.identity())
        })
    }

    pub fn validate_report(&self) -> PxmodValidationReport {
        PxmodValidationReport {
            c_order: self.c.order(),
            g_order: self.g.order(),
            is_crossed: self.is_crossed(),
        }
    }
}

/// A precrossed submodule `(M, S)` of a parent `(C, G, ∂)`.
#[derive(Clone)]
pub struct PXSubmodule {
    parent: Pxm,
    pub m: SubgroupHandle,
    pub s: SubgroupHandle,
}

impl std::fmt::Debug for PXSubmodule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PXSubmodule(|M|={}, |S|={})", self.m.order(), self.s.order())
    }
}

impl PartialEq for PXSubmodule {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent) && self.m == other.m && self.s == other.s
    }
}
impl Eq for PXSubmodule {}

impl PXSubmodule {
    /// Validated constructor: `∂(M) ⊆ S` and `S` acts back into `M`.
    pub fn new(parent: &Pxm, m: SubgroupHandle, s: SubgroupHandle) -> Result<Self> {
        if !Arc::ptr_eq(m.parent(), parent.c()) || !Arc::ptr_eq(s.parent(), parent.g()) {
            return Err(Error::MismatchedParent);
        }
        for &x in m.elements() {
            if !s.contains(parent.boundary_of(x)) {
                return Err(Error::NotASubmodule);
            }
        }
        for &g in s.elements() {
            for &x in m.elements() {
                if !m.contains(parent.act(g, x)) {
                    return Err(Error::NotASubmodule);
                }
            }
        }
        Ok(PXSubmodule { parent: parent.clone(), m, s })
    }

    pub fn parent(&self) -> &Pxm {
        &self.parent
    }

    pub fn is_trivial(&self) -> bool {
        self.m.is_trivial() && self.s.is_trivial()
    }

    /// Normality as a precrossed submodule: both components normal,
    /// `ᵍm ∈ M` for all `g`, and `ˢc·c⁻¹ ∈ M` for all `s ∈ S, c ∈ C`.
    pub fn is_normal(&self) -> bool {
        if !self.m.is_normal() || !self.s.is_normal() {
            return false;
        }
        let p = &self.parent;
        for gg in 0..p.g().order() {
            for &x in self.m.elements() {
                if !self.m.contains(p.act(gg, x)) {
                    return false;
                }
            }
        }
        for &s in self.s.elements() {
            for c in 0..p.c().order() {
                let d = p.c().mul(p.act(s, c), p.c().inv(c));
                if !self.m.contains(d) {
                    return false;
                }
            }
        }
        true
    }

    pub fn contains(&self, other: &PXSubmodule) -> bool {
        self.m.contains_subgroup(&other.m) && self.s.contains_subgroup(&other.s)
    }

    fn same_parent(&self, other: &PXSubmodule) -> Result<()> {
        if !Arc::ptr_eq(&self.parent, &other.parent) {
            return Err(Error::MismatchedParent);
        }
        Ok(())
    }
}

pub fn full_submodule(p: &Pxm) -> PXSubmodule {
    PXSubmodule {
        parent: p.clone(),
        m: group::full_subgroup(p.c()),
        s: group::full_subgroup(p.g()),
    }
}

pub fn trivial_submodule(p: &Pxm) -> PXSubmodule {
    PXSubmodule {
        parent: p.clone(),
        m: group::trivial_subgroup(p.c()),
        s: group::trivial_subgroup(p.g()),
    }
}

/// Peiffer commutator `⟨M, N⟩`: the normal subgroup of `M·N` generated by the
/// Peiffer elements `⟨m,n⟩` and `⟨n,m⟩`, paired with the trivial subgroup of
/// `G`. Consumers must not assume `S`-components are preserved.
pub fn peiffer_commutator(obj: &Pxm, m: &PXSubmodule, n: &PXSubmodule) -> Result<PXSubmodule> {
    m.same_parent(n)?;
    if !Arc::ptr_eq(&m.parent, obj) {
        return Err(Error::MismatchedParent);
    }
    let c = obj.c();
    let prod = group::join_subgroups(&m.m, &n.m)?;
    // Seed with all Peiffer elements of both orders, then close under
    // conjugation by M·N. Generator pairs are not enough here: the Peiffer
    // bracket is not bilinear in the group sense, so we enumerate all pairs.
    let mut seed: Vec<u32> = Vec::new();
    for &a in m.m.elements() {
        for &b in n.m.elements() {
            let x = obj.peiffer_element(a, b);
            if x != c.identity() {
                seed.push(x);
            }
            let y = obj.peiffer_element(b, a);
            if y != c.identity() {
                seed.push(y);
            }
        }
    }
    seed.sort_unstable();
    seed.dedup();
    // Normal closure inside the subgroup M·N: the seed lies in M·N, so plain
    // subgroup closure stays inside it; conjugating by generators of M·N
    // realizes normality there.
    let mut gens = seed.clone();
    let mut set = group::subgroup_generated(c, &gens)?.elements().to_vec();
    let mut queue = gens.clone();
    while let Some(x) = queue.pop() {
        for &h in prod.generating_set() {
            let cx = c.conjugate(h, x);
            if set.binary_search(&cx).is_err() {
                gens.push(cx);
                queue.push(cx);
                set = group::subgroup_generated(c, &gens)?.elements().to_vec();
            }
        }
    }
    let mh = group::subgroup_generated(c, &set)?;
    Ok(PXSubmodule {
        parent: obj.clone(),
        m: mh,
        s: group::trivial_subgroup(obj.g()),
    })
}

/// J for the crossed-module reflector: `⟨C, C⟩` with trivial `G`-component.
pub fn peiffer_subobject(obj: &Pxm) -> Result<PXSubmodule> {
    let full = full_submodule(obj);
    peiffer_commutator(obj, &full, &full)
}

/// A morphism of precrossed modules: a pair of group homomorphisms
/// preserving action and boundary.
#[derive(Clone)]
pub struct PXMorphism {
    pub on_c: GroupMorphism,
    pub on_g: GroupMorphism,
    domain: Pxm,
    codomain: Pxm,
}

impl std::fmt::Debug for PXMorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PXMorphism")
    }
}

impl PXMorphism {
    pub fn new(domain: Pxm, codomain: Pxm, on_c: GroupMorphism, on_g: GroupMorphism) -> Result<Self> {
        if !Arc::ptr_eq(on_c.domain(), domain.c())
            || !Arc::ptr_eq(on_c.codomain(), codomain.c())
            || !Arc::ptr_eq(on_g.domain(), domain.g())
            || !Arc::ptr_eq(on_g.codomain(), codomain.g())
        {
            return Err(Error::MismatchedParent);
        }
        // boundary square and action preservation
        for x in 0..domain.c().order() {
            if codomain.boundary_of(on_c.apply(x)) != on_g.apply(domain.boundary_of(x)) {
                return Err(Error::Invalid(format!(
                    "boundary square does not commute at element {x}"
                )));
            }
        }
        for g in 0..domain.g().order() {
            for x in 0..domain.c().order() {
                if on_c.apply(domain.act(g, x)) != codomain.act(on_g.apply(g), on_c.apply(x)) {
                    return Err(Error::Invalid(format!(
                        "action not preserved at ({g}, {x})"
                    )));
                }
            }
        }
        Ok(PXMorphism { on_c, on_g, domain, codomain })
    }

    pub(crate) fn new_unchecked(
        domain: Pxm,
        codomain: Pxm,
        on_c: GroupMorphism,
        on_g: GroupMorphism,
    ) -> Self {
        PXMorphism { on_c, on_g, domain, codomain }
    }

    pub fn identity(p: &Pxm) -> Self {
        PXMorphism {
            on_c: GroupMorphism::identity(p.c()),
            on_g: GroupMorphism::identity(p.g()),
            domain: p.clone(),
            codomain: p.clone(),
        }
    }

    pub fn domain(&self) -> &Pxm {
        &self.domain
    }

    pub fn codomain(&self) -> &Pxm {
        &self.codomain
    }

    pub fn compose(second: &PXMorphism, first: &PXMorphism) -> Result<PXMorphism> {
        if !Arc::ptr_eq(&first.codomain, &second.domain) {
            return Err(Error::MismatchedParent);
        }
        Ok(PXMorphism {
            on_c: GroupMorphism::compose(&second.on_c, &first.on_c)?,
            on_g: GroupMorphism::compose(&second.on_g, &first.on_g)?,
            domain: first.domain.clone(),
            codomain: second.codomain.clone(),
        })
    }

    pub fn is_surjective(&self) -> bool {
        self.on_c.is_surjective() && self.on_g.is_surjective()
    }

    pub fn equal(&self, other: &PXMorphism) -> bool {
        self.on_c.equal(&other.on_c) && self.on_g.equal(&other.on_g)
    }
}

pub fn px_kernel(f: &PXMorphism) -> PXSubmodule {
    PXSubmodule {
        parent: f.domain.clone(),
        m: group::kernel(&f.on_c),
        s: group::kernel(&f.on_g),
    }
}

pub fn px_intersect(a: &PXSubmodule, b: &PXSubmodule) -> Result<PXSubmodule> {
    a.same_parent(b)?;
    Ok(PXSubmodule {
        parent: a.parent.clone(),
        m: group::intersect(&a.m, &b.m)?,
        s: group::intersect(&a.s, &b.s)?,
    })
}

/// Componentwise join (subgroup generated by the union in each degree).
pub fn px_join(a: &PXSubmodule, b: &PXSubmodule) -> Result<PXSubmodule> {
    a.same_parent(b)?;
    Ok(PXSubmodule {
        parent: a.parent.clone(),
        m: group::join_subgroups(&a.m, &b.m)?,
        s: group::join_subgroups(&a.s, &b.s)?,
    })
}

/// Setwise componentwise product.
pub fn px_product(a: &PXSubmodule, b: &PXSubmodule) -> Result<PXSubmodule> {
    a.same_parent(b)?;
    Ok(PXSubmodule {
        parent: a.parent.clone(),
        m: group::product_subgroups(&a.m, &b.m)?,
        s: group::product_subgroups(&a.s, &b.s)?,
    })
}

/// Degreewise quotient by a normal precrossed submodule, with the projection.
pub fn px_quotient(obj: &Pxm, n: &PXSubmodule) -> Result<(Pxm, PXMorphism)> {
    if !Arc::ptr_eq(&n.parent, obj) {
        return Err(Error::MismatchedParent);
    }
    if !n.is_normal() {
        return Err(Error::NotNormal { element: 0, by: 0 });
    }
    let (qc, pc) = group::quotient(obj.c(), &n.m)?;
    let (qg, pg) = group::quotient(obj.g(), &n.s)?;
    // induced action and boundary on coset representatives
    let mut action = vec![vec![0u32; qc.order() as usize]; qg.order() as usize];
    // coset reps: lowest preimage index
    let mut c_rep = vec![u32::MAX; qc.order() as usize];
    for x in (0..obj.c().order()).rev() {
        c_rep[pc.apply(x) as usize] = x;
    }
    let mut g_rep = vec![u32::MAX; qg.order() as usize];
    for x in (0..obj.g().order()).rev() {
        g_rep[pg.apply(x) as usize] = x;
    }
    for gq in 0..qg.order() {
        for cq in 0..qc.order() {
            action[gq as usize][cq as usize] =
                pc.apply(obj.act(g_rep[gq as usize], c_rep[cq as usize]));
        }
    }
    let boundary: Vec<u32> =
        (0..qc.order()).map(|cq| pg.apply(obj.boundary_of(c_rep[cq as usize]))).collect();
    let q = PrecrossedModuleObject::new(qc, qg, action, boundary)?;
    let proj = PXMorphism::new_unchecked(obj.clone(), q.clone(), pc, pg);
    Ok((q, proj))
}

/// Crossed-module reflection: quotient `C` by `⟨C, C⟩`, keep `G`. The result
/// always satisfies the Peiffer condition.
pub fn xmod_reflect(obj: &Pxm) -> Result<(Pxm, PXMorphism)> {
    let j = peiffer_subobject(obj)?;
    let (q, proj) = px_quotient(obj, &j)?;
    debug_assert!(q.is_crossed());
    Ok((q, proj))
}

/// Kernel pair of a morphism, computed degreewise with the componentwise
/// action.
pub fn px_kernel_pair(f: &PXMorphism, cap: u64) -> Result<(Pxm, PXMorphism, PXMorphism)> {
    let (rc, pc1, pc2) = group::kernel_pair(&f.on_c, cap)?;
    let (rg, pg1, pg2) = group::kernel_pair(&f.on_g, cap)?;
    pair_module(f.domain(), f.domain(), rc, rg, pc1, pc2, pg1, pg2)
}

/// Fiber product of two morphisms with common codomain, degreewise.
pub fn px_fiber_product(
    f: &PXMorphism,
    g: &PXMorphism,
    cap: u64,
) -> Result<(Pxm, PXMorphism, PXMorphism)> {
    let (rc, pc1, pc2) = group::fiber_product(&f.on_c, &g.on_c, cap)?;
    let (rg, pg1, pg2) = group::fiber_product(&f.on_g, &g.on_g, cap)?;
    pair_module(f.domain(), g.domain(), rc, rg, pc1, pc2, pg1, pg2)
}

#[allow(clippy::too_many_arguments)]
fn pair_module(
    dom1: &Pxm,
    dom2: &Pxm,
    rc: Group,
    rg: Group,
    pc1: GroupMorphism,
    pc2: GroupMorphism,
    pg1: GroupMorphism,
    pg2: GroupMorphism,
) -> Result<(Pxm, PXMorphism, PXMorphism)> {
    let mut action = vec![vec![0u32; rc.order() as usize]; rg.order() as usize];
    for gi in 0..rg.order() {
        let (g1, g2) = (pg1.apply(gi), pg2.apply(gi));
        for ci in 0..rc.order() {
            let (c1, c2) = (pc1.apply(ci), pc2.apply(ci));
            let a1 = dom1.act(g1, c1);
            let a2 = dom2.act(g2, c2);
            action[gi as usize][ci as usize] = rc
                .pair_index(a1, a2)
                .ok_or_else(|| Error::Invalid("componentwise action escapes the fiber".into()))?;
        }
    }
    let boundary: Vec<u32> = (0..rc.order())
        .map(|ci| {
            let (c1, c2) = (pc1.apply(ci), pc2.apply(ci));
            rg.pair_index(dom1.boundary_of(c1), dom2.boundary_of(c2))
                .ok_or_else(|| Error::Invalid("componentwise boundary escapes the fiber".into()))
        })
        .collect::<Result<_>>()?;
    let r = PrecrossedModuleObject::new(rc, rg, action, boundary)?;
    let m1 = PXMorphism::new_unchecked(r.clone(), dom1.clone(), pc1, pg1);
    let m2 = PXMorphism::new_unchecked(r.clone(), dom2.clone(), pc2, pg2);
    Ok((r, m1, m2))
}

/// Induced map into a degreewise fiber product.
pub fn px_into_fiber(
    target: &Pxm,
    u: &PXMorphism,
    v: &PXMorphism,
) -> Result<PXMorphism> {
    let on_c = group::into_pair_carrier(target.c(), &u.on_c, &v.on_c)?;
    let on_g = group::into_pair_carrier(target.g(), &u.on_g, &v.on_g)?;
    Ok(PXMorphism::new_unchecked(u.domain().clone(), target.clone(), on_c, on_g))
}

/// Materialize a submodule as a standalone precrossed module with its
/// inclusion; the handle's `S` must act back into `M`.
pub fn materialize_submodule(s: &PXSubmodule) -> Result<(Pxm, PXMorphism)> {
    let parent = s.parent().clone();
    let (mc, inc_c) = group::materialize_subgroup(&s.m);
    let (mg, inc_g) = group::materialize_subgroup(&s.s);
    let mut action = vec![vec![0u32; mc.order() as usize]; mg.order() as usize];
    // reverse index for M elements
    let mut rev = std::collections::HashMap::new();
    for i in 0..mc.order() {
        rev.insert(inc_c.apply(i), i);
    }
    for gi in 0..mg.order() {
        let g = inc_g.apply(gi);
        for ci in 0..mc.order() {
            let acted = parent.act(g, inc_c.apply(ci));
            let Some(&k) = rev.get(&acted) else {
                return Err(Error::NotASubmodule);
            };
            action[gi as usize][ci as usize] = k;
        }
    }
    let mut rev_g = std::collections::HashMap::new();
    for i in 0..mg.order() {
        rev_g.insert(inc_g.apply(i), i);
    }
    let boundary: Vec<u32> = (0..mc.order())
        .map(|ci| {
            rev_g
                .get(&parent.boundary_of(inc_c.apply(ci)))
                .copied()
                .ok_or(Error::NotASubmodule)
        })
        .collect::<Result<_>>()?;
    let sub = PrecrossedModuleObject::new(mc, mg, action, boundary)?;
    let incl = PXMorphism::new_unchecked(sub.clone(), parent, inc_c, inc_g);
    Ok((sub, incl))
}

/// Factor through a degreewise surjection.
pub fn px_factor_through_surjection(u: &PXMorphism, proj: &PXMorphism) -> Result<PXMorphism> {
    let on_c = group::factor_through_surjection(&u.on_c, &proj.on_c)?;
    let on_g = group::factor_through_surjection(&u.on_g, &proj.on_g)?;
    Ok(PXMorphism::new_unchecked(
        proj.codomain().clone(),
        u.codomain().clone(),
        on_c,
        on_g,
    ))
}

/// Factor through a degreewise injection.
pub fn px_factor_through_injection(u: &PXMorphism, incl: &PXMorphism) -> Result<PXMorphism> {
    let on_c = group::factor_through_injection(&u.on_c, &incl.on_c)?;
    let on_g = group::factor_through_injection(&u.on_g, &incl.on_g)?;
    Ok(PXMorphism::new_unchecked(
        u.domain().clone(),
        incl.domain().clone(),
        on_c,
        on_g,
    ))
}

/// Image of a submodule along a morphism.
pub fn px_image_of(f: &PXMorphism, s: &PXSubmodule) -> Result<PXSubmodule> {
    Ok(PXSubmodule {
        parent: f.codomain.clone(),
        m: group::image_of_subgroup(&f.on_c, &s.m)?,
        s: group::image_of_subgroup(&f.on_g, &s.s)?,
    })
}

/// Conjugation precrossed module `(C, C, id)` — always crossed.
pub fn conjugation_module(c: &Group) -> Result<Pxm> {
    let action: Vec<Vec<u32>> = (0..c.order())
        .map(|g| (0..c.order()).map(|x| c.conjugate(g, x)).collect())
        .collect();
    let boundary: Vec<u32> = (0..c.order()).collect();
    PrecrossedModuleObject::new(c.clone(), c.clone(), action, boundary)
}

/// Trivial-action, trivial-boundary module `(C, G, triv)`.
pub fn trivial_action_module(c: &Group, g: &Group) -> Result<Pxm> {
    let action: Vec<Vec<u32>> =
        (0..g.order()).map(|_| (0..c.order()).collect()).collect();
    let boundary = vec![g.identity(); c.order() as usize];
    PrecrossedModuleObject::new(c.clone(), g.clone(), action, boundary)
}

/// Module `(C, G, ∂, action-by-automorphism-table)` from explicit data with
/// default cap validation.
pub fn module_from_parts(
    c: &Group,
    g: &Group,
    action: Vec<Vec<u32>>,
    boundary: Vec<u32>,
) -> Result<Pxm> {
    let _ = DEFAULT_SIZE_CAP;
    PrecrossedModuleObject::new(c.clone(), g.clone(), action, boundary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn conjugation_module_is_crossed() {
        let s3 = corpus::symmetric3();
        let m = conjugation_module(&s3).unwrap();
        assert!(m.is_crossed());
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(m.peiffer_element(a, b), s3.identity());
            }
        }
    }

    #[test]
    fn trivial_action_nonabelian_is_not_crossed() {
        let s3 = corpus::symmetric3();
        let triv = corpus::cyclic(1);
        let m = trivial_action_module(&s3, &triv).unwrap();
        assert!(!m.is_crossed());
        // Peiffer element reduces to the plain commutator.
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(m.peiffer_element(a, b), s3.commutator(a, b));
            }
        }
    }

    #[test]
    fn broken_equivariance_rejected() {
        // C = C4 with G = C2 acting by inversion, but boundary onto C2 made
        // non-equivariant by hand is impossible (C2 abelian); instead break
        // the action table so it is no longer an action.
        let c4 = corpus::cyclic(4);
        let c2 = corpus::cyclic(2);
        let mut action: Vec<Vec<u32>> = vec![
            (0..4).collect(),
            (0..4).map(|x| (4 - x) % 4).collect(),
        ];
        action[1][1] = 1; // breaks automorphism property
        let boundary = vec![0, 1, 0, 1];
        match PrecrossedModuleObject::new(c4, c2, action, boundary) {
            Err(Error::NotAnAction { .. }) => {}
            other => panic!("expected NotAnAction, got {other:?}"),
        }
    }

    #[test]
    fn inversion_action_module() {
        // (C4, C2, mod-2 boundary, inversion action) is a valid precrossed
        // module that is not crossed.
        let m = corpus_c4_inversion();
        assert!(!m.is_crossed());
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(m.g().identity(), m.boundary_of(m.peiffer_element(a, b)));
            }
        }
    }

    pub(super) fn corpus_c4_inversion() -> Pxm {
        let c4 = corpus::cyclic(4);
        let c2 = corpus::cyclic(2);
        let action: Vec<Vec<u32>> = vec![
            (0..4).collect(),
            (0..4).map(|x| (4 - x) % 4).collect(),
        ];
        let boundary = vec![0, 1, 0, 1];
        PrecrossedModuleObject::new(c4, c2, action, boundary).unwrap()
    }

    #[test]
    fn peiffer_commutator_reduces_to_group_commutator() {
        let s3 = corpus::symmetric3();
        let triv = corpus::cyclic(1);
        let m = trivial_action_module(&s3, &triv).unwrap();
        let full = full_submodule(&m);
        let p = peiffer_commutator(&m, &full, &full).unwrap();
        let d = group::derived(&s3, 1).unwrap();
        assert_eq!(p.m.elements(), d.elements());
        assert!(p.s.is_trivial());
    }

    #[test]
    fn peiffer_commutator_crossed_is_trivial() {
        let d4 = corpus::dihedral(4);
        let m = conjugation_module(&d4).unwrap();
        let full = full_submodule(&m);
        let p = peiffer_commutator(&m, &full, &full).unwrap();
        assert!(p.m.is_trivial());
    }

    #[test]
    fn xmod_reflect_properties() {
        let m = corpus_c4_inversion();
        let (q, proj) = xmod_reflect(&m).unwrap();
        assert!(q.is_crossed());
        assert!(proj.is_surjective());
        // reflecting twice changes nothing
        let (q2, _) = xmod_reflect(&q).unwrap();
        assert_eq!(q2.c().order(), q.c().order());
        assert_eq!(q2.g().order(), q.g().order());

        // on a crossed module the reflection is an isomorphism-like projection
        let s3 = corpus::symmetric3();
        let cm = conjugation_module(&s3).unwrap();
        let (qc, projc) = xmod_reflect(&cm).unwrap();
        assert_eq!(qc.c().order(), 6);
        assert!(projc.on_c.is_injective());
    }

    #[test]
    fn componentwise_lattice() {
        let m = corpus_c4_inversion();
        let id = PXMorphism::identity(&m);
        let k = px_kernel(&id);
        assert!(k.is_trivial());
        let full = full_submodule(&m);
        let i = px_intersect(&full, &full).unwrap();
        assert_eq!(i, full);
        // quotient by kernel has the image's order
        let (q, proj) = px_quotient(&m, &k).unwrap();
        assert_eq!(q.c().order(), m.c().order());
        assert!(proj.is_surjective());
    }

    #[test]
    fn kernel_pair_componentwise() {
        let m = corpus_c4_inversion();
        let j = peiffer_subobject(&m).unwrap();
        let (q, proj) = px_quotient(&m, &j).unwrap();
        let _ = q;
        let (r, p1, p2) = px_kernel_pair(&proj, 10_000).unwrap();
        assert!(p1.is_surjective() && p2.is_surjective());
        assert_eq!(
            r.c().order(),
            m.c().order() * group::kernel(&proj.on_c).order()
        );
    }
}

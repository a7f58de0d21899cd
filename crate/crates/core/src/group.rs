//! Enumerated finite-group backend: carriers, morphisms, and the subobject
//! lattice (kernels, closures, commutators, intersections, products,
//! quotients, kernel pairs).
//!
//! Carriers are immutable after construction. Elements are `u32` indices.
//! Direct products and kernel pairs keep a pair-encoded multiplication
//! backend instead of a dense table, so fiber products of mid-sized carriers
//! stay cheap; the pair code of `(i, j)` over a base of order `m` is
//! `i * m + j`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Default cap on carrier order for constructed objects.
pub const DEFAULT_SIZE_CAP: u64 = 100_000;

enum MulBackend {
    /// Dense row-major table, `order * order` entries.
    Table(Vec<u32>),
    /// Subset of a direct product `left x right`; elements are sorted pair
    /// codes and multiplication happens componentwise in the factors.
    Pairs {
        left: Arc<FiniteGroupObject>,
        right: Arc<FiniteGroupObject>,
        codes: Vec<u64>,
        index: HashMap<u64, u32>,
    },
}

/// A finite group presented by a total multiplication law on `0..order`.
pub struct FiniteGroupObject {
    order: u32,
    identity: u32,
    inverses: Vec<u32>,
    generators: Vec<u32>,
    mul: MulBackend,
}

impl std::fmt::Debug for FiniteGroupObject {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteGroupObject(order={})", self.order)
    }
}

pub type Group = Arc<FiniteGroupObject>;

impl FiniteGroupObject {
    /// Build and fully validate a carrier from an explicit table.
    /// The identity is located, inverses are checked, and associativity is
    /// verified exhaustively.
    pub fn make_group(table: Vec<Vec<u32>>) -> Result<Group> {
        let order = table.len() as u32;
        if order == 0 {
            return Err(Error::Invalid("empty multiplication table".into()));
        }
        let mut flat = Vec::with_capacity((order * order) as usize);
        for row in &table {
            if row.len() != order as usize {
                return Err(Error::Invalid("multiplication table is not square".into()));
            }
            for &v in row {
                if v >= order {
                    return Err(Error::IndexOutOfRange { index: v, order });
                }
                flat.push(v);
            }
        }
        Self::from_flat_table(order, flat)
    }

    pub(crate) fn from_flat_table(order: u32, flat: Vec<u32>) -> Result<Group> {
        let at = |a: u32, b: u32| flat[(a * order + b) as usize];
        // Locate the identity.
        let mut identity = None;
        'outer: for e in 0..order {
            for x in 0..order {
                if at(e, x) != x || at(x, e) != x {
                    continue 'outer;
                }
            }
            identity = Some(e);
            break;
        }
        let Some(identity) = identity else {
            // Report the best near-miss for diagnostics: first e whose row
            // fixes e itself but fails elsewhere, else element 0.
            let claimed = 0;
            let witness = (0..order).find(|&x| at(claimed, x) != x).unwrap_or(0);
            return Err(Error::NoIdentity { claimed, witness });
        };
        let mut inverses = vec![u32::MAX; order as usize];
        for x in 0..order {
            match (0..order).find(|&y| at(x, y) == identity && at(y, x) == identity) {
                Some(y) => inverses[x as usize] = y,
                None => return Err(Error::MissingInverse { element: x }),
            }
        }
        // Exhaustive associativity check.
        for a in 0..order {
            for b in 0..order {
                let ab = at(a, b);
                for c in 0..order {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::NonAssociative { a, b, c });
                    }
                }
            }
        }
        let mut g = FiniteGroupObject {
            order,
            identity,
            inverses,
            generators: Vec::new(),
            mul: MulBackend::Table(flat),
        };
        g.generators = g.compute_generators();
        Ok(Arc::new(g))
    }

    /// Build a carrier from a multiplication closure known to be a group law
    /// (internal constructions: normal forms, quotients). Identity and
    /// inverses are still located; associativity is trusted.
    pub(crate) fn from_op(order: u32, op: impl Fn(u32, u32) -> u32) -> Group {
        let mut flat = Vec::with_capacity((order * order) as usize);
        for a in 0..order {
            for b in 0..order {
                flat.push(op(a, b));
            }
        }
        let at = |a: u32, b: u32| flat[(a * order + b) as usize];
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| at(e, x) == x && at(x, e) == x))
            .expect("internal construction lost its identity");
        let inverses: Vec<u32> = (0..order)
            .map(|x| {
                (0..order)
                    .find(|&y| at(x, y) == identity)
                    .expect("internal construction lost an inverse")
            })
            .collect();
        let mut g = FiniteGroupObject {
            order,
            identity,
            inverses,
            generators: Vec::new(),
            mul: MulBackend::Table(flat),
        };
        g.generators = g.compute_generators();
        Arc::new(g)
    }

    fn from_pair_codes(
        left: Group,
        right: Group,
        mut codes: Vec<u64>,
        cap: u64,
    ) -> Result<Group> {
        codes.sort_unstable();
        codes.dedup();
        if codes.len() as u128 > cap as u128 {
            return Err(Error::SizeLimitExceeded { needed: codes.len() as u128, cap });
        }
        let order = codes.len() as u32;
        let index: HashMap<u64, u32> =
            codes.iter().enumerate().map(|(i, &c)| (c, i as u32)).collect();
        let m = right.order as u64;
        let e_code = left.identity as u64 * m + right.identity as u64;
        let identity = *index
            .get(&e_code)
            .ok_or_else(|| Error::Invalid("pair set does not contain the identity".into()))?;
        let mut inverses = vec![u32::MAX; order as usize];
        for (i, &c) in codes.iter().enumerate() {
            let (a, b) = ((c / m) as u32, (c % m) as u32);
            let ic = left.inv(a) as u64 * m + right.inv(b) as u64;
            match index.get(&ic) {
                Some(&j) => inverses[i] = j,
                None => return Err(Error::MissingInverse { element: i as u32 }),
            }
        }
        let mut g = FiniteGroupObject {
            order,
            identity,
            inverses,
            generators: Vec::new(),
            mul: MulBackend::Pairs { left, right, codes, index },
        };
        // Closure check: pair sets built here must be subgroups.
        for i in 0..order {
            let gen_edges = g.generators_closure_probe(i);
            if let Some(w) = gen_edges {
                return Err(Error::NotASubgroup { witness: w });
            }
        }
        g.generators = g.compute_generators();
        Ok(Arc::new(g))
    }

    /// Probe used during pair construction: multiply element `i` by every
    /// element and report a product that escapes the set.
    fn generators_closure_probe(&self, i: u32) -> Option<u32> {
        if let MulBackend::Pairs { left, right, codes, index } = &self.mul {
            let m = right.order as u64;
            let (a, b) = ((codes[i as usize] / m) as u32, (codes[i as usize] % m) as u32);
            for &c in codes.iter() {
                let (x, y) = ((c / m) as u32, (c % m) as u32);
                let prod = left.mul(a, x) as u64 * m + right.mul(b, y) as u64;
                if !index.contains_key(&prod) {
                    return Some(i);
                }
            }
        }
        None
    }

    /// Full direct product `a x b` with pair-encoded elements.
    pub fn direct_product(a: &Group, b: &Group, cap: u64) -> Result<Group> {
        let needed = a.order as u128 * b.order as u128;
        if needed > cap as u128 {
            return Err(Error::SizeLimitExceeded { needed, cap });
        }
        let m = b.order as u64;
        let codes: Vec<u64> = (0..a.order as u64)
            .flat_map(|i| (0..m).map(move |j| i * m + j))
            .collect();
        Self::from_pair_codes(a.clone(), b.clone(), codes, cap)
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> u32 {
        self.identity
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inverses[a as usize]
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.mul {
            MulBackend::Table(t) => t[(a * self.order + b) as usize],
            MulBackend::Pairs { left, right, codes, index } => {
                let m = right.order as u64;
                let ca = codes[a as usize];
                let cb = codes[b as usize];
                let l = left.mul((ca / m) as u32, (cb / m) as u32);
                let r = right.mul((ca % m) as u32, (cb % m) as u32);
                index[&(l as u64 * m + r as u64)]
            }
        }
    }

    pub fn conjugate(&self, g: u32, x: u32) -> u32 {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn commutator(&self, a: u32, b: u32) -> u32 {
        // [a, b] = a b a⁻¹ b⁻¹
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn element_order(&self, g: u32) -> u32 {
        let mut x = g;
        let mut n = 1;
        while x != self.identity {
            x = self.mul(x, g);
            n += 1;
        }
        n
    }

    pub fn exponent(&self) -> u32 {
        (0..self.order).fold(1u32, |acc, g| lcm(acc, self.element_order(g)))
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter().all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Cached small generating set, built greedily by lowest element index.
    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    fn compute_generators(&self) -> Vec<u32> {
        let mut gens: Vec<u32> = Vec::new();
        let mut reached = closure_set(self, &gens);
        for x in 0..self.order {
            if reached.len() == self.order as usize {
                break;
            }
            if !reached.contains(&x) {
                gens.push(x);
                reached = closure_set(self, &gens);
            }
        }
        gens
    }

    /// Pair decomposition for pair-backed carriers (kernel pairs, products).
    pub fn pair_split(&self, idx: u32) -> Option<(u32, u32)> {
        match &self.mul {
            MulBackend::Pairs { right, codes, .. } => {
                let m = right.order as u64;
                let c = codes[idx as usize];
                Some(((c / m) as u32, (c % m) as u32))
            }
            MulBackend::Table(_) => None,
        }
    }

    /// Index of the pair `(a, b)` in a pair-backed carrier.
    pub fn pair_index(&self, a: u32, b: u32) -> Option<u32> {
        match &self.mul {
            MulBackend::Pairs { right, index, .. } => {
                index.get(&(a as u64 * right.order as u64 + b as u64)).copied()
            }
            MulBackend::Table(_) => None,
        }
    }

    pub fn is_pair_backed(&self) -> bool {
        matches!(self.mul, MulBackend::Pairs { .. })
    }

    /// Dense table materialization (serialization path).
    pub fn table(&self) -> Vec<Vec<u32>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u32, b: u32) -> u32 {
    a / gcd(a, b) * b
}

/// Subgroup closure of a generator list, as a sorted element vector.
fn closure_set(g: &FiniteGroupObject, gens: &[u32]) -> Vec<u32> {
    let mut seen = vec![false; g.order() as usize];
    seen[g.identity() as usize] = true;
    let mut out = vec![g.identity()];
    let mut frontier = vec![g.identity()];
    while let Some(x) = frontier.pop() {
        for &h in gens {
            let y = g.mul(x, h);
            if !seen[y as usize] {
                seen[y as usize] = true;
                out.push(y);
                frontier.push(y);
            }
        }
    }
    out.sort_unstable();
    out
}

/// A subgroup of a carrier, stored as the full sorted element set.
#[derive(Clone)]
pub struct SubgroupHandle {
    parent: Group,
    elements: Vec<u32>,
    generators: Vec<u32>,
    normal: bool,
}

impl std::fmt::Debug for SubgroupHandle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subgroup(order={}, normal={})", self.elements.len(), self.normal)
    }
}

impl PartialEq for SubgroupHandle {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent) && self.elements == other.elements
    }
}
impl Eq for SubgroupHandle {}

impl SubgroupHandle {
    pub fn parent(&self) -> &Group {
        &self.parent
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn order(&self) -> u32 {
        self.elements.len() as u32
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_normal(&self) -> bool {
        self.normal
    }

    pub fn is_full(&self) -> bool {
        self.order() == self.parent.order()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn contains_subgroup(&self, other: &SubgroupHandle) -> bool {
        other.elements.iter().all(|&x| self.contains(x))
    }

    pub fn generating_set(&self) -> &[u32] {
        &self.generators
    }

    fn from_elements(parent: Group, elements: Vec<u32>) -> Self {
        // Derive a small generating set greedily, lowest index first.
        let mut gens: Vec<u32> = Vec::new();
        let mut reached = closure_set(&parent, &gens);
        for &x in &elements {
            if reached.len() == elements.len() {
                break;
            }
            if reached.binary_search(&x).is_err() {
                gens.push(x);
                reached = closure_set(&parent, &gens);
            }
        }
        let normal = {
            let pg = parent.generators().to_vec();
            let elem_check = |set: &Vec<u32>, x: u32| set.binary_search(&x).is_ok();
            gens.iter().all(|&s| pg.iter().all(|&g| elem_check(&elements, parent.conjugate(g, s))))
        };
        SubgroupHandle { parent, elements, generators: gens, normal }
    }

    fn same_parent(&self, other: &SubgroupHandle) -> Result<()> {
        if !Arc::ptr_eq(&self.parent, &other.parent) {
            return Err(Error::MismatchedParent);
        }
        Ok(())
    }
}

/// Smallest subgroup of `g` containing `gens`.
pub fn subgroup_generated(g: &Group, gens: &[u32]) -> Result<SubgroupHandle> {
    for &x in gens {
        if x >= g.order() {
            return Err(Error::IndexOutOfRange { index: x, order: g.order() });
        }
    }
    let elements = closure_set(g, gens);
    Ok(SubgroupHandle::from_elements(g.clone(), elements))
}

/// Whole carrier as a subgroup of itself.
pub fn full_subgroup(g: &Group) -> SubgroupHandle {
    let elements: Vec<u32> = (0..g.order()).collect();
    SubgroupHandle::from_elements(g.clone(), elements)
}

pub fn trivial_subgroup(g: &Group) -> SubgroupHandle {
    SubgroupHandle::from_elements(g.clone(), vec![g.identity()])
}

/// Smallest normal subgroup of `g` containing `seed`.
pub fn normal_closure(g: &Group, seed: &[u32]) -> Result<SubgroupHandle> {
    for &x in seed {
        if x >= g.order() {
            return Err(Error::IndexOutOfRange { index: x, order: g.order() });
        }
    }
    let pg: Vec<u32> = g.generators().to_vec();
    let mut gens: Vec<u32> = seed.to_vec();
    let mut set = closure_set(g, &gens);
    let mut queue: Vec<u32> = gens.clone();
    while let Some(x) = queue.pop() {
        for &h in &pg {
            let c = g.conjugate(h, x);
            if set.binary_search(&c).is_err() {
                gens.push(c);
                queue.push(c);
                set = closure_set(g, &gens);
            }
        }
    }
    Ok(SubgroupHandle::from_elements(g.clone(), set))
}

/// Normal subgroup of `g` generated by all `[s, t]` with `s` in `S`, `t` in
/// `T`. Commutators of generator pairs already generate it, since elementwise
/// commuting survives products and inverses.
pub fn commutator_subgroup(
    g: &Group,
    s: &SubgroupHandle,
    t: &SubgroupHandle,
) -> Result<SubgroupHandle> {
    s.same_parent(t)?;
    if !Arc::ptr_eq(&s.parent, g) {
        return Err(Error::MismatchedParent);
    }
    let mut seed = Vec::new();
    for &a in s.generating_set() {
        for &b in t.generating_set() {
            let c = g.commutator(a, b);
            if c != g.identity() {
                seed.push(c);
            }
        }
    }
    normal_closure(g, &seed)
}

pub fn intersect(s: &SubgroupHandle, t: &SubgroupHandle) -> Result<SubgroupHandle> {
    s.same_parent(t)?;
    let elements: Vec<u32> =
        s.elements.iter().copied().filter(|&x| t.contains(x)).collect();
    Ok(SubgroupHandle::from_elements(s.parent.clone(), elements))
}

/// Setwise product `M·N`. Errors with `NotASubgroup` when the product set is
/// not closed (possible when neither factor is normal).
pub fn product_subgroups(m: &SubgroupHandle, n: &SubgroupHandle) -> Result<SubgroupHandle> {
    m.same_parent(n)?;
    let g = &m.parent;
    let mut set: Vec<u32> = Vec::new();
    for &a in &m.elements {
        for &b in &n.elements {
            set.push(g.mul(a, b));
        }
    }
    set.sort_unstable();
    set.dedup();
    // Closure check.
    for &a in &set {
        for &b in n.generating_set().iter().chain(m.generating_set()) {
            let p = g.mul(a, b);
            if set.binary_search(&p).is_err() {
                return Err(Error::NotASubgroup { witness: p });
            }
        }
    }
    Ok(SubgroupHandle::from_elements(g.clone(), set))
}

/// Subgroup generated by the union of two subgroups. Agrees with
/// `product_subgroups` when one factor is normal, and never fails.
pub fn join_subgroups(s: &SubgroupHandle, t: &SubgroupHandle) -> Result<SubgroupHandle> {
    s.same_parent(t)?;
    let mut gens: Vec<u32> = s.generating_set().to_vec();
    gens.extend_from_slice(t.generating_set());
    subgroup_generated(&s.parent, &gens)
}

/// A homomorphism between carriers, tabulated on every domain element.
#[derive(Clone)]
pub struct GroupMorphism {
    domain: Group,
    codomain: Group,
    images: Vec<u32>,
}

impl std::fmt::Debug for GroupMorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GroupMorphism({} -> {})", self.domain.order(), self.codomain.order())
    }
}

impl GroupMorphism {
    /// Validated constructor. The homomorphism law is checked on pairs
    /// `(generator, x)`, which determines it everywhere.
    pub fn new(domain: Group, codomain: Group, images: Vec<u32>) -> Result<Self> {
        if images.len() != domain.order() as usize {
            return Err(Error::Invalid("image vector length mismatch".into()));
        }
        for &v in &images {
            if v >= codomain.order() {
                return Err(Error::IndexOutOfRange { index: v, order: codomain.order() });
            }
        }
        if images[domain.identity() as usize] != codomain.identity() {
            return Err(Error::NotAHomomorphism { x: domain.identity(), y: domain.identity() });
        }
        for &gen in domain.generators() {
            for x in 0..domain.order() {
                let lhs = images[domain.mul(gen, x) as usize];
                let rhs = codomain.mul(images[gen as usize], images[x as usize]);
                if lhs != rhs {
                    return Err(Error::NotAHomomorphism { x: gen, y: x });
                }
            }
        }
        Ok(GroupMorphism { domain, codomain, images })
    }

    pub(crate) fn new_unchecked(domain: Group, codomain: Group, images: Vec<u32>) -> Self {
        debug_assert!(images.len() == domain.order() as usize);
        GroupMorphism { domain, codomain, images }
    }

    pub fn identity(g: &Group) -> Self {
        GroupMorphism {
            domain: g.clone(),
            codomain: g.clone(),
            images: (0..g.order()).collect(),
        }
    }

    pub fn domain(&self) -> &Group {
        &self.domain
    }

    pub fn codomain(&self) -> &Group {
        &self.codomain
    }

    pub fn apply(&self, x: u32) -> u32 {
        self.images[x as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// `second ∘ first`.
    pub fn compose(second: &GroupMorphism, first: &GroupMorphism) -> Result<GroupMorphism> {
        if !Arc::ptr_eq(&first.codomain, &second.domain) {
            return Err(Error::MismatchedParent);
        }
        let images = first.images.iter().map(|&x| second.images[x as usize]).collect();
        Ok(GroupMorphism {
            domain: first.domain.clone(),
            codomain: second.codomain.clone(),
            images,
        })
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.codomain.order() as usize];
        let mut count = 0u32;
        for &v in &self.images {
            if !hit[v as usize] {
                hit[v as usize] = true;
                count += 1;
            }
        }
        count == self.codomain.order()
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.codomain.order() as usize];
        for &v in &self.images {
            if hit[v as usize] {
                return false;
            }
            hit[v as usize] = true;
        }
        true
    }

    pub fn equal(&self, other: &GroupMorphism) -> bool {
        Arc::ptr_eq(&self.domain, &other.domain)
            && Arc::ptr_eq(&self.codomain, &other.codomain)
            && self.images == other.images
    }
}

pub fn kernel(f: &GroupMorphism) -> SubgroupHandle {
    let e = f.codomain().identity();
    let elements: Vec<u32> =
        (0..f.domain().order()).filter(|&x| f.apply(x) == e).collect();
    SubgroupHandle::from_elements(f.domain().clone(), elements)
}

pub fn image(f: &GroupMorphism) -> SubgroupHandle {
    let mut elements: Vec<u32> = f.images().to_vec();
    elements.sort_unstable();
    elements.dedup();
    SubgroupHandle::from_elements(f.codomain().clone(), elements)
}

/// Direct image of a subgroup along a morphism, as a subgroup of the codomain.
pub fn image_of_subgroup(f: &GroupMorphism, s: &SubgroupHandle) -> Result<SubgroupHandle> {
    if !Arc::ptr_eq(s.parent(), f.domain()) {
        return Err(Error::MismatchedParent);
    }
    let mut elements: Vec<u32> = s.elements().iter().map(|&x| f.apply(x)).collect();
    elements.sort_unstable();
    elements.dedup();
    Ok(SubgroupHandle::from_elements(f.codomain().clone(), elements))
}

/// Preimage of a subgroup along a morphism.
pub fn preimage_of_subgroup(f: &GroupMorphism, s: &SubgroupHandle) -> Result<SubgroupHandle> {
    if !Arc::ptr_eq(s.parent(), f.codomain()) {
        return Err(Error::MismatchedParent);
    }
    let elements: Vec<u32> =
        (0..f.domain().order()).filter(|&x| s.contains(f.apply(x))).collect();
    Ok(SubgroupHandle::from_elements(f.domain().clone(), elements))
}

/// Quotient of `g` by a normal subgroup. Cosets are indexed by ascending
/// minimal representative, which fixes the output and the projection.
pub fn quotient(g: &Group, n: &SubgroupHandle) -> Result<(Group, GroupMorphism)> {
    if !Arc::ptr_eq(n.parent(), g) {
        return Err(Error::MismatchedParent);
    }
    if !n.is_normal() {
        let s = n.elements()[if n.order() > 1 { 1 } else { 0 }];
        return Err(Error::NotNormal { element: s, by: 0 });
    }
    let order = g.order();
    let mut coset_of = vec![u32::MAX; order as usize];
    let mut reps: Vec<u32> = Vec::new();
    for x in 0..order {
        if coset_of[x as usize] != u32::MAX {
            continue;
        }
        let idx = reps.len() as u32;
        reps.push(x);
        for &nn in n.elements() {
            coset_of[g.mul(x, nn) as usize] = idx;
        }
    }
    let q_order = reps.len() as u32;
    let reps_clone = reps.clone();
    let g_clone = g.clone();
    let q = FiniteGroupObject::from_op(q_order, |a, b| {
        coset_of[g_clone.mul(reps_clone[a as usize], reps_clone[b as usize]) as usize]
    });
    let proj_images: Vec<u32> = (0..order).map(|x| coset_of[x as usize]).collect();
    let proj = GroupMorphism::new_unchecked(g.clone(), q.clone(), proj_images);
    Ok((q, proj))
}

/// Materialize a subgroup as a standalone carrier together with its
/// inclusion morphism.
pub fn materialize_subgroup(s: &SubgroupHandle) -> (Group, GroupMorphism) {
    let parent = s.parent().clone();
    let elems = s.elements().to_vec();
    let index: HashMap<u32, u32> =
        elems.iter().enumerate().map(|(i, &x)| (x, i as u32)).collect();
    let parent_clone = parent.clone();
    let elems_clone = elems.clone();
    let carrier = FiniteGroupObject::from_op(elems.len() as u32, |a, b| {
        index[&parent_clone.mul(elems_clone[a as usize], elems_clone[b as usize])]
    });
    let incl_images: Vec<u32> = elems.clone();
    let incl = GroupMorphism::new_unchecked(carrier.clone(), parent, incl_images);
    (carrier, incl)
}

/// Kernel pair of `f`: the carrier `R = {(x, y) : f(x) = f(y)}` with its two
/// projections. `|R| = |B|² / |im f|` when `f` is surjective.
pub fn kernel_pair(f: &GroupMorphism, cap: u64) -> Result<(Group, GroupMorphism, GroupMorphism)> {
    let b = f.domain();
    let k = kernel(f);
    let needed = b.order() as u128 * k.order() as u128;
    if needed > cap as u128 {
        return Err(Error::SizeLimitExceeded { needed, cap });
    }
    let m = b.order() as u64;
    let mut codes = Vec::with_capacity(needed as usize);
    for x in 0..b.order() {
        for &n in k.elements() {
            let y = b.mul(x, n);
            codes.push(x as u64 * m + y as u64);
        }
    }
    let r = FiniteGroupObject::from_pair_codes(b.clone(), b.clone(), codes, cap)?;
    let (p1, p2) = pair_projections(&r, b, b);
    Ok((r, p1, p2))
}

/// Fiber product of `f : B -> A` and `g : C -> A`, as a pair-backed carrier
/// with its projections to `B` and `C`.
pub fn fiber_product(
    f: &GroupMorphism,
    g: &GroupMorphism,
    cap: u64,
) -> Result<(Group, GroupMorphism, GroupMorphism)> {
    if !Arc::ptr_eq(f.codomain(), g.codomain()) {
        return Err(Error::MismatchedParent);
    }
    let b = f.domain();
    let c = g.domain();
    // Bucket C by image to collect matching pairs in O(|B| + |C| + |P|).
    let mut buckets: HashMap<u32, Vec<u32>> = HashMap::new();
    for y in 0..c.order() {
        buckets.entry(g.apply(y)).or_default().push(y);
    }
    let m = c.order() as u64;
    let mut codes = Vec::new();
    for x in 0..b.order() {
        if let Some(ys) = buckets.get(&f.apply(x)) {
            for &y in ys {
                codes.push(x as u64 * m + y as u64);
                if codes.len() as u128 > cap as u128 {
                    return Err(Error::SizeLimitExceeded { needed: codes.len() as u128, cap });
                }
            }
        }
    }
    let p = FiniteGroupObject::from_pair_codes(b.clone(), c.clone(), codes, cap)?;
    let (p1, p2) = pair_projections(&p, b, c);
    Ok((p, p1, p2))
}

fn pair_projections(p: &Group, left: &Group, right: &Group) -> (GroupMorphism, GroupMorphism) {
    let mut im1 = Vec::with_capacity(p.order() as usize);
    let mut im2 = Vec::with_capacity(p.order() as usize);
    for i in 0..p.order() {
        let (a, b) = p.pair_split(i).expect("pair-backed carrier");
        im1.push(a);
        im2.push(b);
    }
    (
        GroupMorphism::new_unchecked(p.clone(), left.clone(), im1),
        GroupMorphism::new_unchecked(p.clone(), right.clone(), im2),
    )
}

/// Induced map `x -> (u(x), v(x))` into a pair-backed carrier, e.g. the
/// comparison into a pullback.
pub fn into_pair_carrier(
    target: &Group,
    u: &GroupMorphism,
    v: &GroupMorphism,
) -> Result<GroupMorphism> {
    if !Arc::ptr_eq(u.domain(), v.domain()) {
        return Err(Error::MismatchedParent);
    }
    let mut images = Vec::with_capacity(u.domain().order() as usize);
    for x in 0..u.domain().order() {
        match target.pair_index(u.apply(x), v.apply(x)) {
            Some(i) => images.push(i),
            None => {
                return Err(Error::Invalid(
                    "induced pair lands outside the fiber carrier".into(),
                ))
            }
        }
    }
    Ok(GroupMorphism::new_unchecked(u.domain().clone(), target.clone(), images))
}

/// Factor `u` through a surjection `proj` sharing its domain: the unique
/// `v` with `v ∘ proj = u`. Fails when `u` does not kill `K[proj]`.
pub fn factor_through_surjection(
    u: &GroupMorphism,
    proj: &GroupMorphism,
) -> Result<GroupMorphism> {
    if !Arc::ptr_eq(u.domain(), proj.domain()) {
        return Err(Error::MismatchedParent);
    }
    let q = proj.codomain();
    let mut images = vec![u32::MAX; q.order() as usize];
    for x in 0..u.domain().order() {
        let slot = proj.apply(x) as usize;
        let val = u.apply(x);
        if images[slot] == u32::MAX {
            images[slot] = val;
        } else if images[slot] != val {
            return Err(Error::Invalid("map does not factor through the projection".into()));
        }
    }
    if images.iter().any(|&v| v == u32::MAX) {
        return Err(Error::Invalid("projection is not surjective".into()));
    }
    Ok(GroupMorphism::new_unchecked(q.clone(), u.codomain().clone(), images))
}

/// Factor `u` through an injection `incl` into `u`'s codomain: the unique
/// `w` with `incl ∘ w = u`. Fails when the image of `u` escapes.
pub fn factor_through_injection(
    u: &GroupMorphism,
    incl: &GroupMorphism,
) -> Result<GroupMorphism> {
    if !Arc::ptr_eq(u.codomain(), incl.codomain()) {
        return Err(Error::MismatchedParent);
    }
    let mut reverse: HashMap<u32, u32> = HashMap::new();
    for k in 0..incl.domain().order() {
        reverse.insert(incl.apply(k), k);
    }
    let mut images = Vec::with_capacity(u.domain().order() as usize);
    for x in 0..u.domain().order() {
        match reverse.get(&u.apply(x)) {
            Some(&k) => images.push(k),
            None => return Err(Error::Invalid("image escapes the subobject".into())),
        }
    }
    Ok(GroupMorphism::new_unchecked(u.domain().clone(), incl.domain().clone(), images))
}

/// Diagonal `Δ: G -> G x G`.
pub fn diagonal(g: &Group, cap: u64) -> Result<GroupMorphism> {
    let prod = FiniteGroupObject::direct_product(g, g, cap)?;
    let images: Vec<u32> = (0..g.order())
        .map(|x| prod.pair_index(x, x).expect("diagonal pair present"))
        .collect();
    Ok(GroupMorphism::new_unchecked(g.clone(), prod, images))
}

/// `Z_k`: descending central series term, `Z_1 = [G, G]`, `Z_k = [Z_{k-1}, G]`.
pub fn descending_central(g: &Group, k: u32) -> Result<SubgroupHandle> {
    let full = full_subgroup(g);
    let mut term = commutator_subgroup(g, &full, &full)?;
    for _ in 1..k {
        term = commutator_subgroup(g, &term, &full)?;
    }
    Ok(term)
}

/// `D_k`: derived series term, `D_1 = [G, G]`, `D_k = [D_{k-1}, D_{k-1}]`.
pub fn derived(g: &Group, k: u32) -> Result<SubgroupHandle> {
    let full = full_subgroup(g);
    let mut term = commutator_subgroup(g, &full, &full)?;
    for _ in 1..k {
        term = commutator_subgroup(g, &term, &term)?;
    }
    Ok(term)
}

/// `D_k(X_1, ..., X_{2^k})` built by pairwise halving.
pub fn iterated_derived(g: &Group, args: &[SubgroupHandle], k: u32) -> Result<SubgroupHandle> {
    let expected = 1usize << k;
    if args.len() != expected {
        return Err(Error::BadArity { expected, got: args.len() });
    }
    if args.len() == 1 {
        return Ok(args[0].clone());
    }
    let half = args.len() / 2;
    let left = iterated_derived(g, &args[..half], k - 1)?;
    let right = iterated_derived(g, &args[half..], k - 1)?;
    commutator_subgroup(g, &left, &right)
}

/// Left-normed iterated commutator `[[..[[X_1, X_2], X_3]..], X_m]`.
pub fn left_normed(g: &Group, args: &[SubgroupHandle]) -> Result<SubgroupHandle> {
    if args.len() < 2 {
        return Err(Error::BadArity { expected: 2, got: args.len() });
    }
    let mut acc = commutator_subgroup(g, &args[0], &args[1])?;
    for x in &args[2..] {
        acc = commutator_subgroup(g, &acc, x)?;
    }
    Ok(acc)
}

/// Nilpotency class of a carrier, when nilpotent.
pub fn nilpotency_class(g: &Group) -> Option<u32> {
    if g.order() == 1 {
        return Some(0);
    }
    let full = full_subgroup(g);
    let mut term = commutator_subgroup(g, &full, &full).ok()?;
    let mut class = 1u32;
    loop {
        if term.is_trivial() {
            return Some(class);
        }
        let next = commutator_subgroup(g, &term, &full).ok()?;
        if next.order() == term.order() {
            return None; // series stalled above the identity
        }
        term = next;
        class += 1;
    }
}

/// Isomorphism-type report for a (sub)quotient.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct GroupInvariants {
    pub order: u64,
    pub is_abelian: bool,
    /// Primary (prime-power) decomposition; empty when non-abelian.
    pub abelian_invariants: Vec<u64>,
    pub exponent: u64,
    pub nilpotency_class: NilpotencyClass,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(untagged)]
pub enum NilpotencyClass {
    Class(u32),
    #[serde(rename = "not nilpotent")]
    NotNilpotent(String),
}

impl NilpotencyClass {
    pub fn not_nilpotent() -> Self {
        NilpotencyClass::NotNilpotent("not nilpotent".into())
    }
}

/// Invariants of `N / L` for `L` normal in `N`; both must share a parent.
pub fn quotient_invariants(n: &SubgroupHandle, l: &SubgroupHandle) -> Result<GroupInvariants> {
    n.same_parent(l)?;
    if !n.contains_subgroup(l) {
        return Err(Error::NotNormalIn);
    }
    // L must be normalized by N.
    let parent = n.parent();
    for &g in n.generating_set() {
        for &x in l.generating_set() {
            if !l.contains(parent.conjugate(g, x)) {
                return Err(Error::NotNormalIn);
            }
        }
    }
    let (nc, _incl) = materialize_subgroup(n);
    // Map L into the materialized carrier.
    let idx: HashMap<u32, u32> =
        n.elements().iter().enumerate().map(|(i, &x)| (x, i as u32)).collect();
    let l_in_n: Vec<u32> = l.elements().iter().map(|&x| idx[&x]).collect();
    let l_handle = SubgroupHandle::from_elements(nc.clone(), l_in_n);
    let (q, _proj) = quotient(&nc, &l_handle)?;
    Ok(carrier_invariants(&q))
}

/// Invariants of a whole carrier.
pub fn carrier_invariants(q: &Group) -> GroupInvariants {
    let order = q.order() as u64;
    let is_abelian = q.is_abelian();
    let exponent = q.exponent() as u64;
    let abelian_invariants = if is_abelian { abelian_primary_decomposition(q) } else { vec![] };
    let nil = match nilpotency_class(q) {
        Some(c) => NilpotencyClass::Class(c),
        None => NilpotencyClass::not_nilpotent(),
    };
    GroupInvariants {
        order,
        is_abelian,
        abelian_invariants,
        exponent,
        nilpotency_class: nil,
    }
}

/// Primary decomposition of a finite abelian carrier from order statistics:
/// in the p-part, `log_p #{x : x^{p^k} = 1} = Σ_i min(k, e_i)` determines the
/// exponent multiset `{p^{e_i}}`.
fn abelian_primary_decomposition(q: &Group) -> Vec<u64> {
    let order = q.order() as u64;
    let mut out: Vec<u64> = Vec::new();
    let mut rest = order;
    let mut p = 2u64;
    let mut primes = Vec::new();
    while rest > 1 {
        if rest % p == 0 {
            primes.push(p);
            while rest % p == 0 {
                rest /= p;
            }
        }
        p += 1;
    }
    for p in primes {
        // s_k = log_p of the count of elements with order dividing p^k.
        let mut s = vec![0u32];
        let mut k = 1u32;
        loop {
            let pk = (p as u64).pow(k);
            let count = (0..q.order())
                .filter(|&x| {
                    let mut y = x;
                    let mut m = 1u64;
                    while y != q.identity() && m < pk {
                        y = q.mul(y, x);
                        m += 1;
                    }
                    y == q.identity()
                })
                .count() as u64;
            let mut log = 0u32;
            let mut c = count;
            while c > 1 {
                debug_assert!(c % p == 0);
                c /= p;
                log += 1;
            }
            s.push(log);
            if s[k as usize] == s[(k - 1) as usize] {
                break;
            }
            k += 1;
        }
        // Number of invariants with e_i >= k is s_k - s_{k-1}.
        let kmax = s.len() - 1;
        for k in (1..=kmax).rev() {
            let with_ge_k = s[k] - s[k - 1];
            let with_ge_k_plus = if k < kmax { s[k + 1] - s[k] } else { 0 };
            let exactly_k = with_ge_k - with_ge_k_plus;
            for _ in 0..exactly_k {
                out.push((p as u64).pow(k as u32));
            }
        }
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn cyclic_table_accepted() {
        let table: Vec<Vec<u32>> =
            (0..3).map(|a| (0..3).map(|b| (a + b) % 3).collect()).collect();
        let g = FiniteGroupObject::make_group(table).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.identity(), 0);
    }

    #[test]
    fn broken_identity_rejected() {
        // Claimed identity 0 with table[0][0] = 1; row 0 no longer fixes.
        let table = vec![vec![1, 0], vec![0, 1]];
        match FiniteGroupObject::make_group(table) {
            Err(Error::NoIdentity { .. }) => {}
            other => panic!("expected NoIdentity, got {other:?}"),
        }
    }

    #[test]
    fn non_associative_rejected() {
        // A quasigroup (Latin square) that is not associative.
        let table = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        match FiniteGroupObject::make_group(table) {
            Err(Error::NonAssociative { .. }) => {}
            other => panic!("expected NonAssociative, got {other:?}"),
        }
    }

    /// Independent oracle: S3 assembled by brute-force composition of all 36
    /// permutation pairs.
    #[test]
    fn s3_from_permutation_composition() {
        let g = corpus::symmetric3();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        assert_eq!(g.exponent(), 6);
    }

    #[test]
    fn subgroup_generated_empty_is_trivial() {
        let g = corpus::symmetric3();
        let s = subgroup_generated(&g, &[]).unwrap();
        assert_eq!(s.order(), 1);
        assert!(s.contains(g.identity()));
    }

    #[test]
    fn normal_closure_of_transposition_is_everything() {
        let g = corpus::symmetric3();
        let t = (0..6).find(|&x| g.element_order(x) == 2).unwrap();
        let n = normal_closure(&g, &[t]).unwrap();
        assert_eq!(n.order(), 6);
    }

    #[test]
    fn normal_closure_equals_generated_in_abelian() {
        let g = corpus::cyclic(12);
        for x in 0..12 {
            let a = normal_closure(&g, &[x]).unwrap();
            let b = subgroup_generated(&g, &[x]).unwrap();
            assert_eq!(a.elements(), b.elements());
        }
    }

    #[test]
    fn commutator_subgroup_of_s3_is_a3() {
        let g = corpus::symmetric3();
        let full = full_subgroup(&g);
        let c = commutator_subgroup(&g, &full, &full).unwrap();
        assert_eq!(c.order(), 3);
        // Brute-force oracle: normal closure of every elementwise commutator.
        let mut all = Vec::new();
        for a in 0..6 {
            for b in 0..6 {
                all.push(g.commutator(a, b));
            }
        }
        let oracle = normal_closure(&g, &all).unwrap();
        assert_eq!(c.elements(), oracle.elements());
    }

    #[test]
    fn commutator_with_trivial_factor_is_trivial() {
        let g = corpus::symmetric3();
        let full = full_subgroup(&g);
        let t = trivial_subgroup(&g);
        assert!(commutator_subgroup(&g, &t, &full).unwrap().is_trivial());
        let ab = corpus::cyclic(8);
        let f2 = full_subgroup(&ab);
        assert!(commutator_subgroup(&ab, &f2, &f2).unwrap().is_trivial());
    }

    #[test]
    fn product_and_intersection_in_s3() {
        let g = corpus::symmetric3();
        let full = full_subgroup(&g);
        let a3 = commutator_subgroup(&g, &full, &full).unwrap();
        let t = (0..6).find(|&x| g.element_order(x) == 2).unwrap();
        let c2 = subgroup_generated(&g, &[t]).unwrap();
        let p = product_subgroups(&a3, &c2).unwrap();
        assert_eq!(p.order(), 6);
        let i = intersect(&a3, &c2).unwrap();
        assert!(i.is_trivial());
        let idem = intersect(&a3, &a3).unwrap();
        assert_eq!(idem.elements(), a3.elements());
    }

    #[test]
    fn kernel_image_quotient() {
        let g = corpus::symmetric3();
        let id = GroupMorphism::identity(&g);
        assert!(kernel(&id).is_trivial());

        let full = full_subgroup(&g);
        let a3 = commutator_subgroup(&g, &full, &full).unwrap();
        let (q, proj) = quotient(&g, &a3).unwrap();
        assert_eq!(q.order(), 2);
        assert!(proj.is_surjective());
        assert_eq!(kernel(&proj).elements(), a3.elements());

        let c1 = corpus::cyclic(1);
        let constant = GroupMorphism::new(g.clone(), c1.clone(), vec![0; 6]).unwrap();
        assert_eq!(image(&constant).order(), 1);
    }

    #[test]
    fn first_iso_order_check() {
        // |im f| = |B| / |K[f]| on a few morphisms.
        let b = corpus::cyclic(12);
        let a = corpus::cyclic(4);
        let f = GroupMorphism::new(
            b.clone(),
            a.clone(),
            (0..12).map(|x| x % 4).collect(),
        )
        .unwrap();
        assert_eq!(image(&f).order() * kernel(&f).order(), b.order());
    }

    #[test]
    fn kernel_pair_counts() {
        let b = corpus::cyclic(4);
        let a = corpus::cyclic(2);
        let f =
            GroupMorphism::new(b.clone(), a.clone(), (0..4).map(|x| x % 2).collect()).unwrap();
        let (r, p1, p2) = kernel_pair(&f, DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(r.order(), 8);
        assert!(p1.is_surjective() && p2.is_surjective());
        // kernel(π1) is {identity} x K[f].
        let k1 = kernel(&p1);
        assert_eq!(k1.order(), kernel(&f).order());
        for &x in k1.elements() {
            let (a, _b) = r.pair_split(x).unwrap();
            assert_eq!(a, b.identity());
        }
    }

    #[test]
    fn kernel_pair_of_iso_is_diagonal() {
        let b = corpus::cyclic(5);
        let f = GroupMorphism::identity(&b);
        let (r, p1, p2) = kernel_pair(&f, DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(r.order(), 5);
        for i in 0..r.order() {
            assert_eq!(p1.apply(i), p2.apply(i));
        }
    }

    #[test]
    fn diagonal_properties() {
        let g = corpus::symmetric3();
        let d = diagonal(&g, DEFAULT_SIZE_CAP).unwrap();
        assert!(d.is_injective());
        assert_eq!(image(&d).order(), 6);
        let t = corpus::cyclic(1);
        let dt = diagonal(&t, DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(dt.codomain().order(), 1);
    }

    #[test]
    fn series_operations() {
        let ab = corpus::cyclic(9);
        assert!(descending_central(&ab, 1).unwrap().is_trivial());

        let g = corpus::symmetric3();
        assert!(derived(&g, 2).unwrap().is_trivial());
        assert_eq!(derived(&g, 1).unwrap().order(), 3);

        let full = full_subgroup(&g);
        let t = trivial_subgroup(&g);
        let ln = left_normed(&g, &[full.clone(), t, full]).unwrap();
        assert!(ln.is_trivial());
    }

    #[test]
    fn iterated_derived_arity() {
        let g = corpus::symmetric3();
        let full = full_subgroup(&g);
        match iterated_derived(&g, &[full.clone(), full.clone(), full.clone()], 2) {
            Err(Error::BadArity { expected: 4, got: 3 }) => {}
            other => panic!("expected BadArity, got {other:?}"),
        }
    }

    #[test]
    fn quotient_invariants_examples() {
        // Z/6 by its subgroup of order 3 (even residues as 2Z/6): quotient C2.
        let g = corpus::cyclic(6);
        let n = full_subgroup(&g);
        let two = subgroup_generated(&g, &[2]).unwrap();
        let inv = quotient_invariants(&n, &two).unwrap();
        assert_eq!(inv.order, 2);
        assert!(inv.is_abelian);
        assert_eq!(inv.abelian_invariants, vec![2]);

        let same = quotient_invariants(&n, &n).unwrap();
        assert_eq!(same.order, 1);

        // Q8 / center: Klein four group, invariants [2, 2].
        let q8 = corpus::quaternion8();
        let center: Vec<u32> =
            (0..8).filter(|&x| (0..8).all(|y| q8.mul(x, y) == q8.mul(y, x))).collect();
        let z = subgroup_generated(&q8, &center).unwrap();
        assert_eq!(z.order(), 2);
        let inv = quotient_invariants(&full_subgroup(&q8), &z).unwrap();
        assert_eq!(inv.order, 4);
        assert_eq!(inv.abelian_invariants, vec![2, 2]);
    }

    #[test]
    fn quotient_invariants_relabel_invariant() {
        // Relabeling the parent's elements leaves the output unchanged.
        let g = corpus::cyclic(6);
        let perm: Vec<u32> = vec![2, 4, 0, 1, 5, 3]; // relabel old -> new
        let inv_perm: Vec<u32> = {
            let mut v = vec![0; 6];
            for (old, &new) in perm.iter().enumerate() {
                v[new as usize] = old as u32;
            }
            v
        };
        let relabeled = FiniteGroupObject::from_op(6, |a, b| {
            perm[g.mul(inv_perm[a as usize], inv_perm[b as usize]) as usize]
        });
        let s_old = subgroup_generated(&g, &[3]).unwrap();
        let s_new = subgroup_generated(&relabeled, &[perm[3]]).unwrap();
        let a = quotient_invariants(&full_subgroup(&g), &s_old).unwrap();
        let b = quotient_invariants(&full_subgroup(&relabeled), &s_new).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn abelian_invariants_mixed_order() {
        let g = corpus::direct_product(&corpus::cyclic(4), &corpus::cyclic(6)).unwrap();
        let inv = carrier_invariants(&g);
        assert_eq!(inv.order, 24);
        assert_eq!(inv.abelian_invariants, vec![2, 3, 4]);
    }

    #[test]
    fn commutator_symmetric_and_contained() {
        let g = corpus::dihedral(4); // order 8
        let subs = [
            subgroup_generated(&g, &[1]).unwrap(),
            subgroup_generated(&g, &[2]).unwrap(),
            normal_closure(&g, &[4]).unwrap(),
        ];
        let d1 = derived(&g, 1).unwrap();
        for s in &subs {
            for t in &subs {
                let st = commutator_subgroup(&g, s, t).unwrap();
                let ts = commutator_subgroup(&g, t, s).unwrap();
                assert_eq!(st.elements(), ts.elements());
                assert!(d1.contains_subgroup(&st));
                let mut union: Vec<u32> = s.elements().to_vec();
                union.extend_from_slice(t.elements());
                let nc = normal_closure(&g, &union).unwrap();
                assert!(intersect(&nc, &d1).unwrap().contains_subgroup(&st));
            }
        }
    }
}

//! Relatively free objects in the finitely computable varieties, 1-step
//! presentations, and the split-relator doubling that turns a k-presentation
//! into a (k+1)-presentation.
//!
//! A presentation cube is kept in quotient form: a free initial vertex `F`
//! together with one relator family per direction; the vertex at a subset `A`
//! of directions is `F` modulo the subobject generated by the union of the
//! `A`-families. The terminal vertex is the presented object itself.

use std::collections::HashMap;

use crate::backend::{Backend, GroupBackend, LieBackend};
use crate::cube::{Cube, ValidationReport};
use crate::error::{Error, Result};
use crate::fp;
use crate::group::{self, FiniteGroupObject, Group, GroupMorphism};
use crate::lie::{self, Lie, LieMorphism};

/// Carrier limit for dense multiplication tables; quadratic storage makes
/// larger tables unreasonable even under the element cap.
pub const DENSE_CARRIER_LIMIT: u64 = 5_000;

/// A Birkhoff-subvariety descriptor for presentation purposes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarietySpec {
    /// Groups of nilpotency class <= class and exponent p. Class 2 requires
    /// an odd prime (class-2 collapse at p = 2).
    Group { class: u8, p: u32 },
    /// Nilpotent Lie algebras of class <= class over F_p.
    Lie { class: u8, p: u32 },
}

impl VarietySpec {
    pub fn parse(s: &str) -> Result<VarietySpec> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::UnsupportedVariety(s.to_string()));
        }
        let class = match parts[1] {
            "abelian" | "c1" => 1u8,
            "c2" => 2,
            "c3" => 3,
            _ => return Err(Error::UnsupportedVariety(s.to_string())),
        };
        let p: u32 = parts[2]
            .strip_prefix('p')
            .and_then(|x| x.parse().ok())
            .ok_or_else(|| Error::UnsupportedVariety(s.to_string()))?;
        if !fp::is_prime(p) {
            return Err(Error::UnsupportedVariety(format!("{s}: {p} is not prime")));
        }
        match parts[0] {
            "group" => {
                if class > 2 {
                    return Err(Error::UnsupportedVariety(format!(
                        "{s}: group classes above 2 are not supported"
                    )));
                }
                if class == 2 && p == 2 {
                    return Err(Error::UnsupportedVariety(format!(
                        "{s}: exponent-2 class-2 collapses to abelian"
                    )));
                }
                Ok(VarietySpec::Group { class, p })
            }
            "lie" => {
                if class > 3 {
                    return Err(Error::UnsupportedVariety(s.to_string()));
                }
                Ok(VarietySpec::Lie { class, p })
            }
            _ => Err(Error::UnsupportedVariety(s.to_string())),
        }
    }

    pub fn descriptor(&self) -> String {
        match self {
            VarietySpec::Group { class: 1, p } => format!("group:abelian:p{p}"),
            VarietySpec::Group { class, p } => format!("group:c{class}:p{p}"),
            VarietySpec::Lie { class: 1, p } => format!("lie:abelian:p{p}"),
            VarietySpec::Lie { class, p } => format!("lie:c{class}:p{p}"),
        }
    }
}

impl std::fmt::Display for VarietySpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.descriptor())
    }
}

/// Presentation hooks a backend must provide on top of `Backend`.
pub trait PresentBackend: Backend {
    /// Elements of a carrier, as handled by relator lists.
    type Elt: Clone + PartialEq + std::fmt::Debug;
    /// Opaque layout data describing a free object's basis.
    type FreeData: Clone;

    fn variety_matches(v: &VarietySpec) -> bool;
    fn in_variety(o: &Self::Obj, v: &VarietySpec) -> Result<()>;
    fn is_free(o: &Self::Obj, v: &VarietySpec) -> bool;
    /// Relatively free object on `d` marked generators.
    fn free_object(
        v: &VarietySpec,
        d: usize,
        cap: u64,
    ) -> Result<(Self::Obj, Self::FreeData, Vec<Self::Elt>)>;
    /// Minimal generating family, greedy in the supplied candidate order.
    fn minimal_generators(
        o: &Self::Obj,
        v: &VarietySpec,
        candidate_order: &[u32],
    ) -> Result<Vec<Self::Elt>>;
    /// The unique morphism from a free object determined by generator images.
    fn hom_from_generators(
        free: &Self::Obj,
        data: &Self::FreeData,
        target: &Self::Obj,
        images: &[Self::Elt],
    ) -> Result<Self::Map>;
    fn apply_elt(f: &Self::Map, e: &Self::Elt) -> Self::Elt;
    /// Deterministic normal/ideal generators of the kernel, greedy by index.
    fn kernel_relators(f: &Self::Map) -> Result<Vec<Self::Elt>>;
    /// Normal closure / ideal closure of a set of elements.
    fn sub_from_elements(o: &Self::Obj, elts: &[Self::Elt]) -> Result<Self::Sub>;
    /// `z · w⁻¹` (groups) or `z - w` (Lie).
    fn relator_difference(o: &Self::Obj, z: &Self::Elt, w: &Self::Elt) -> Self::Elt;
    fn identity_elt(o: &Self::Obj) -> Self::Elt;
    fn candidate_count(o: &Self::Obj) -> u32;
    /// Size of the underlying set, for the canonical free-on-all-elements
    /// presentation.
    fn underlying_count(o: &Self::Obj) -> u128;
    fn underlying_elt(o: &Self::Obj, idx: u64) -> Self::Elt;
}

/// A 1-step presentation: free cover, the onto map, and relator generators.
pub struct PresentationRecord<B: PresentBackend> {
    pub free: B::Obj,
    pub free_data: B::FreeData,
    pub generators: Vec<B::Elt>,
    pub onto: B::Map,
    pub relator_generators: Vec<B::Elt>,
}

/// An n-presentation kept in split-relator quotient form.
pub struct PresentationCube<B: PresentBackend> {
    pub variety: VarietySpec,
    pub free: B::Obj,
    pub free_data: B::FreeData,
    pub generators: Vec<B::Elt>,
    /// One relator family per direction (1-based directions, 0-based here).
    pub relators: Vec<Vec<B::Elt>>,
    pub cube: Cube<B>,
}

// ---------------------------------------------------------------------------
// Group backend hooks
// ---------------------------------------------------------------------------

impl PresentBackend for GroupBackend {
    type Elt = u32;
    type FreeData = ();

    fn variety_matches(v: &VarietySpec) -> bool {
        matches!(v, VarietySpec::Group { .. })
    }

    fn in_variety(o: &Group, v: &VarietySpec) -> Result<()> {
        let VarietySpec::Group { class, p } = v else {
            return Err(Error::UnsupportedVariety(v.descriptor()));
        };
        let exp = o.exponent();
        if exp != 1 && exp != *p {
            return Err(Error::NotInVariety {
                variety: v.descriptor(),
                reason: format!("exponent {exp} does not divide {p}"),
            });
        }
        let cls = group::nilpotency_class(o).ok_or_else(|| Error::NotInVariety {
            variety: v.descriptor(),
            reason: "not nilpotent".to_string(),
        })?;
        if cls > *class as u32 {
            return Err(Error::NotInVariety {
                variety: v.descriptor(),
                reason: format!("nilpotency class {cls} exceeds {class}"),
            });
        }
        Ok(())
    }

    fn is_free(o: &Group, v: &VarietySpec) -> bool {
        let VarietySpec::Group { class, p } = v else { return false };
        if Self::in_variety(o, v).is_err() {
            return false;
        }
        let d = abelianization_rank(o) as u64;
        let expected: u128 = if *class == 1 {
            (*p as u128).pow(d as u32)
        } else {
            (*p as u128).pow((d + d * (d.saturating_sub(1)) / 2) as u32)
        };
        o.order() as u128 == expected
    }

    fn free_object(v: &VarietySpec, d: usize, cap: u64) -> Result<(Group, (), Vec<u32>)> {
        let VarietySpec::Group { class, p } = v else {
            return Err(Error::UnsupportedVariety(v.descriptor()));
        };
        let m = if *class == 1 { 0 } else { d * d.saturating_sub(1) / 2 };
        let needed: u128 = (*p as u128).pow((d + m) as u32);
        let limit = cap.min(DENSE_CARRIER_LIMIT) as u128;
        if needed > limit {
            return Err(Error::SizeLimitExceeded { needed, cap: limit as u64 });
        }
        let g = free_class2_carrier(*p, d, m);
        let gens: Vec<u32> = (0..d).map(|i| (*p).pow(i as u32)).collect();
        Ok((g, (), gens))
    }

    fn minimal_generators(o: &Group, v: &VarietySpec, order: &[u32]) -> Result<Vec<u32>> {
        Self::in_variety(o, v)?;
        let full = group::full_subgroup(o);
        let derived = group::commutator_subgroup(o, &full, &full)?;
        let (q, proj) = group::quotient(o, &derived)?;
        let mut gens: Vec<u32> = Vec::new();
        let mut span = group::subgroup_generated(&q, &[])?;
        for &x in order {
            if span.order() == q.order() {
                break;
            }
            let y = proj.apply(x);
            if !span.contains(y) {
                gens.push(x);
                let mut s: Vec<u32> = gens.iter().map(|&g| proj.apply(g)).collect();
                s.sort_unstable();
                span = group::subgroup_generated(&q, &s)?;
            }
        }
        Ok(gens)
    }

    fn hom_from_generators(
        free: &Group,
        _data: &(),
        target: &Group,
        images: &[u32],
    ) -> Result<GroupMorphism> {
        // Burnside-style extension: BFS over the free carrier from its
        // generating set, transporting images along the parent chain.
        let gens = free.generators().to_vec();
        if gens.len() > images.len() {
            return Err(Error::Invalid(format!(
                "free object needs {} generator images, got {}",
                gens.len(),
                images.len()
            )));
        }
        let mut img = vec![u32::MAX; free.order() as usize];
        img[free.identity() as usize] = target.identity();
        for (g, i) in gens.iter().zip(images.iter()) {
            img[*g as usize] = *i;
        }
        let mut frontier = vec![free.identity()];
        let mut seen = vec![false; free.order() as usize];
        seen[free.identity() as usize] = true;
        while let Some(x) = frontier.pop() {
            for (gi, &g) in gens.iter().enumerate() {
                let y = free.mul(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    img[y as usize] = target.mul(img[x as usize], images[gi]);
                    frontier.push(y);
                }
            }
        }
        if img.iter().any(|&v| v == u32::MAX) {
            return Err(Error::Invalid("marked generators do not generate".into()));
        }
        GroupMorphism::new(free.clone(), target.clone(), img)
    }

    fn apply_elt(f: &GroupMorphism, e: &u32) -> u32 {
        f.apply(*e)
    }

    fn kernel_relators(f: &GroupMorphism) -> Result<Vec<u32>> {
        let k = group::kernel(f);
        let g = f.domain();
        let mut chosen: Vec<u32> = Vec::new();
        let mut closure = group::subgroup_generated(g, &[])?;
        for &x in k.elements() {
            if closure.order() == k.order() {
                break;
            }
            if !closure.contains(x) {
                chosen.push(x);
                closure = group::normal_closure(g, &chosen)?;
            }
        }
        Ok(chosen)
    }

    fn sub_from_elements(o: &Group, elts: &[u32]) -> Result<group::SubgroupHandle> {
        group::normal_closure(o, elts)
    }

    fn relator_difference(o: &Group, z: &u32, w: &u32) -> u32 {
        o.mul(*z, o.inv(*w))
    }

    fn identity_elt(o: &Group) -> u32 {
        o.identity()
    }

    fn candidate_count(o: &Group) -> u32 {
        o.order()
    }

    fn underlying_count(o: &Group) -> u128 {
        o.order() as u128
    }

    fn underlying_elt(_o: &Group, idx: u64) -> u32 {
        idx as u32
    }
}

fn abelianization_rank(o: &Group) -> usize {
    let full = group::full_subgroup(o);
    let derived = group::commutator_subgroup(o, &full, &full).expect("same parent");
    let q_order = (o.order() / derived.order()) as u64;
    if q_order == 1 {
        return 0;
    }
    // order = p^rank in an exponent-p setting
    let mut rank = 0usize;
    let mut n = q_order;
    let p = smallest_prime_factor(q_order);
    while n > 1 {
        n /= p;
        rank += 1;
    }
    rank
}

fn smallest_prime_factor(n: u64) -> u64 {
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return d;
        }
        d += 1;
    }
    n
}

/// The relatively free class-<=2 exponent-p carrier on `d` generators:
/// elements `(u, v)` in `F_p^d x F_p^m` (m = C(d,2)) with the product
/// `(u,v)(u',v') = (u+u', v+v'+β(u,u'))`, β the upper-triangular bilinear
/// form with `β(e_i, e_j) = e_{ij}` for i < j. Class-1 varieties take m = 0.
fn free_class2_carrier(p: u32, d: usize, m: usize) -> Group {
    let total = p.pow((d + m) as u32);
    let pairs: Vec<(usize, usize)> = {
        let mut v = Vec::new();
        for i in 0..d {
            for j in (i + 1)..d {
                v.push((i, j));
            }
        }
        v
    };
    debug_assert!(m == 0 || pairs.len() == m);
    let decode = move |idx: u32, len: usize, base: u32| -> Vec<u32> {
        let mut out = Vec::with_capacity(len);
        let mut x = idx;
        for _ in 0..len {
            out.push(x % base);
            x /= base;
        }
        out
    };
    FiniteGroupObject::from_op(total, move |a, b| {
        let ua = decode(a % p.pow(d as u32), d, p);
        let va = decode(a / p.pow(d as u32), m, p);
        let ub = decode(b % p.pow(d as u32), d, p);
        let vb = decode(b / p.pow(d as u32), m, p);
        let mut u = vec![0u32; d];
        for i in 0..d {
            u[i] = (ua[i] + ub[i]) % p;
        }
        let mut v = vec![0u32; m];
        for k in 0..m {
            let (i, j) = pairs[k];
            v[k] = (va[k] + vb[k] + ua[i] * ub[j]) % p;
        }
        let mut uidx = 0u32;
        for i in (0..d).rev() {
            uidx = uidx * p + u[i];
        }
        let mut vidx = 0u32;
        for k in (0..m).rev() {
            vidx = vidx * p + v[k];
        }
        uidx + p.pow(d as u32) * vidx
    })
}

// ---------------------------------------------------------------------------
// Lie backend hooks
// ---------------------------------------------------------------------------

#[derive(Clone)]
pub struct LieFreeData {
    d: usize,
    class: u8,
}

impl PresentBackend for LieBackend {
    type Elt = Vec<u32>;
    type FreeData = LieFreeData;

    fn variety_matches(v: &VarietySpec) -> bool {
        matches!(v, VarietySpec::Lie { .. })
    }

    fn in_variety(o: &Lie, v: &VarietySpec) -> Result<()> {
        let VarietySpec::Lie { class, p } = v else {
            return Err(Error::UnsupportedVariety(v.descriptor()));
        };
        if o.p() != *p {
            return Err(Error::NotInVariety {
                variety: v.descriptor(),
                reason: format!("characteristic {} differs from {p}", o.p()),
            });
        }
        let cls = o.nilpotency_class().ok_or_else(|| Error::NotInVariety {
            variety: v.descriptor(),
            reason: "not nilpotent".to_string(),
        })?;
        if cls > *class as u32 {
            return Err(Error::NotInVariety {
                variety: v.descriptor(),
                reason: format!("nilpotency class {cls} exceeds {class}"),
            });
        }
        Ok(())
    }

    fn is_free(o: &Lie, v: &VarietySpec) -> bool {
        let VarietySpec::Lie { class, p } = v else { return false };
        if Self::in_variety(o, v).is_err() {
            return false;
        }
        if o.dim() == 0 {
            return true;
        }
        let full = lie::full_subspace(o);
        let derived = match lie::bracket_ideal(o, &full, &full) {
            Ok(x) => x,
            Err(_) => return false,
        };
        let d = o.dim() - derived.dim();
        match lie::free_nilpotent(d.max(1), *class as u32, *p) {
            Ok((f, _)) => d > 0 && f.dim() == o.dim(),
            Err(_) => false,
        }
    }

    fn free_object(v: &VarietySpec, d: usize, cap: u64) -> Result<(Lie, LieFreeData, Vec<Vec<u32>>)> {
        let VarietySpec::Lie { class, p } = v else {
            return Err(Error::UnsupportedVariety(v.descriptor()));
        };
        if d == 0 {
            let l = crate::lie::LieAlgebraObject::new(*p, 0, vec![])?;
            return Ok((l, LieFreeData { d: 0, class: *class }, vec![]));
        }
        let (l, gens) = lie::free_nilpotent(d, *class as u32, *p)?;
        if l.dim() as u64 > cap {
            return Err(Error::SizeLimitExceeded { needed: l.dim() as u128, cap });
        }
        let gen_vecs: Vec<Vec<u32>> = gens
            .iter()
            .map(|&i| {
                let mut e = vec![0u32; l.dim()];
                e[i] = 1;
                e
            })
            .collect();
        Ok((l, LieFreeData { d, class: *class }, gen_vecs))
    }

    fn minimal_generators(o: &Lie, v: &VarietySpec, order: &[u32]) -> Result<Vec<Vec<u32>>> {
        Self::in_variety(o, v)?;
        let full = lie::full_subspace(o);
        let derived = lie::bracket_ideal(o, &full, &full)?;
        let mut span = derived.space.clone();
        let mut gens: Vec<Vec<u32>> = Vec::new();
        for &i in order {
            if span.dim() == o.dim() {
                break;
            }
            let idx = i as usize % o.dim().max(1);
            let mut e = vec![0u32; o.dim()];
            e[idx] = 1;
            if !span.contains_vec(&e) {
                gens.push(e.clone());
                span = span.sum(&crate::fp::Subspace::from_spanning(o.p(), &[e], o.dim()))?;
            }
        }
        Ok(gens)
    }

    fn hom_from_generators(
        free: &Lie,
        data: &LieFreeData,
        target: &Lie,
        images: &[Vec<u32>],
    ) -> Result<LieMorphism> {
        if images.len() < data.d {
            return Err(Error::Invalid("not enough generator images".into()));
        }
        // Hall layout mirrors free_nilpotent: generators, then degree-2
        // monomials h(i,j), then degree-3 monomials t(i,j,k).
        let d = data.d;
        let mut rows: Vec<Vec<u32>> = Vec::with_capacity(free.dim());
        for img in images.iter().take(d) {
            rows.push(img.clone());
        }
        if data.class >= 2 {
            for i in 0..d {
                for j in (i + 1)..d {
                    rows.push(target.bracket(&images[i], &images[j]));
                }
            }
        }
        if data.class >= 3 {
            for i in 0..d {
                for j in (i + 1)..d {
                    let hij = target.bracket(&images[i], &images[j]);
                    for k in i..d {
                        rows.push(target.bracket(&hij, &images[k]));
                    }
                }
            }
        }
        if rows.len() != free.dim() {
            return Err(Error::Invalid("free layout mismatch".into()));
        }
        let m = crate::fp::FpMat::from_rows(free.p(), &rows, target.dim());
        LieMorphism::new(free.clone(), target.clone(), m)
    }

    fn apply_elt(f: &LieMorphism, e: &Vec<u32>) -> Vec<u32> {
        f.apply(e)
    }

    fn kernel_relators(f: &LieMorphism) -> Result<Vec<Vec<u32>>> {
        let k = lie::kernel(f);
        let l = f.domain();
        let mut chosen: Vec<Vec<u32>> = Vec::new();
        let mut closure = lie::zero_subspace(l);
        for r in 0..k.space.basis.rows {
            if closure.dim() == k.dim() {
                break;
            }
            let v = k.space.basis.row(r).to_vec();
            if !closure.space.contains_vec(&v) {
                chosen.push(v);
                closure = Self::sub_from_elements(l, &chosen)?;
            }
        }
        Ok(chosen)
    }

    fn sub_from_elements(o: &Lie, elts: &[Vec<u32>]) -> Result<lie::SubspaceHandle> {
        // ideal closure: span, then bracket with the whole algebra to stability
        let span = crate::fp::Subspace::from_spanning(o.p(), elts, o.dim());
        let handle = lie::SubspaceHandle::new(o, span);
        let full = lie::full_subspace(o);
        let mut cur = handle;
        loop {
            let grown = lie::sum(&cur, &lie::bracket_ideal(o, &cur, &full)?)?;
            if grown.dim() == cur.dim() {
                return Ok(grown);
            }
            cur = grown;
        }
    }

    fn relator_difference(o: &Lie, z: &Vec<u32>, w: &Vec<u32>) -> Vec<u32> {
        (0..o.dim()).map(|i| fp::sub(o.p(), z[i], w[i])).collect()
    }

    fn identity_elt(o: &Lie) -> Vec<u32> {
        vec![0u32; o.dim()]
    }

    fn candidate_count(o: &Lie) -> u32 {
        o.dim() as u32
    }

    fn underlying_count(o: &Lie) -> u128 {
        (o.p() as u128).pow(o.dim() as u32)
    }

    fn underlying_elt(o: &Lie, idx: u64) -> Vec<u32> {
        let p = o.p() as u64;
        let mut out = Vec::with_capacity(o.dim());
        let mut x = idx;
        for _ in 0..o.dim() {
            out.push((x % p) as u32);
            x /= p;
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Presentation construction
// ---------------------------------------------------------------------------

/// 1-step presentation of `a` with a chosen candidate ordering for the
/// generator search (identity permutation when `None`).
pub fn present_with_order<B: PresentBackend>(
    a: &B::Obj,
    variety: &VarietySpec,
    candidate_order: Option<Vec<u32>>,
    cap: u64,
) -> Result<PresentationRecord<B>> {
    if !B::variety_matches(variety) {
        return Err(Error::UnsupportedVariety(variety.descriptor()));
    }
    B::in_variety(a, variety)?;
    let order: Vec<u32> = match candidate_order {
        Some(o) => o,
        None => (0..B::candidate_count(a)).collect(),
    };
    let gens_a = B::minimal_generators(a, variety, &order)?;
    let d = gens_a.len();
    let (free, data, gens_f) = B::free_object(variety, d, cap)?;
    let onto = B::hom_from_generators(&free, &data, a, &gens_a)?;
    if !B::is_surjective(&onto) {
        return Err(Error::ValidationFailed(
            "presentation map is not surjective".into(),
        ));
    }
    let relators = B::kernel_relators(&onto)?;
    Ok(PresentationRecord { free, free_data: data, generators: gens_f, onto, relator_generators: relators })
}

pub fn present<B: PresentBackend>(
    a: &B::Obj,
    variety: &VarietySpec,
    cap: u64,
) -> Result<PresentationRecord<B>> {
    present_with_order::<B>(a, variety, None, cap)
}

/// The canonical free-on-all-elements presentation; guarded aggressively by
/// the size cap, since the free object has one generator per element.
pub fn canonical_presentation<B: PresentBackend>(
    a: &B::Obj,
    variety: &VarietySpec,
    cap: u64,
) -> Result<PresentationRecord<B>> {
    if !B::variety_matches(variety) {
        return Err(Error::UnsupportedVariety(variety.descriptor()));
    }
    B::in_variety(a, variety)?;
    let count = B::underlying_count(a);
    if count > cap as u128 {
        return Err(Error::SizeLimitExceeded { needed: count, cap });
    }
    let d = count as usize;
    let (free, data, gens_f) = B::free_object(variety, d, cap)?;
    let images: Vec<B::Elt> = (0..d as u64).map(|i| B::underlying_elt(a, i)).collect();
    let onto = B::hom_from_generators(&free, &data, a, &images)?;
    if !B::is_surjective(&onto) {
        return Err(Error::ValidationFailed(
            "canonical evaluation map is not surjective".into(),
        ));
    }
    let relators = B::kernel_relators(&onto)?;
    Ok(PresentationRecord { free, free_data: data, generators: gens_f, onto, relator_generators: relators })
}

/// Wrap a 1-step record as a 1-dimensional presentation cube.
pub fn record_to_cube<B: PresentBackend>(
    variety: &VarietySpec,
    rec: PresentationRecord<B>,
) -> Result<PresentationCube<B>> {
    let cube = Cube::from_arrow(rec.onto.clone());
    Ok(PresentationCube {
        variety: *variety,
        free: rec.free,
        free_data: rec.free_data,
        generators: rec.generators,
        relators: vec![rec.relator_generators],
        cube,
    })
}

/// Split-relator doubling: extend a k-presentation to a (k+1)-presentation of
/// the same object. Direction k+1 kills the fresh generators; each old
/// direction i keeps its relators in the split form `z · lift(r)⁻¹`. The
/// result is validated and checked for projectivity before being returned.
pub fn extend_presentation<B: PresentBackend>(
    pc: &PresentationCube<B>,
    cap: u64,
) -> Result<PresentationCube<B>> {
    let k = pc.cube.n();
    let d = pc.generators.len();
    let m_total: usize = pc.relators.iter().map(|r| r.len()).sum();
    let (free2, data2, gens2) = B::free_object(&pc.variety, d + m_total, cap)?;
    // Canonical embedding of the old free object on the first d generators.
    let embed = B::hom_from_generators(&pc.free, &pc.free_data, &free2, &gens2[..d].to_vec())?;
    // Fresh generators indexed by (direction, relator).
    let mut z_of: Vec<Vec<B::Elt>> = Vec::with_capacity(k);
    let mut off = d;
    for rel in &pc.relators {
        z_of.push(gens2[off..off + rel.len()].to_vec());
        off += rel.len();
    }
    // New relator families.
    let mut new_relators: Vec<Vec<B::Elt>> = Vec::with_capacity(k + 1);
    for (i, rel) in pc.relators.iter().enumerate() {
        let fam: Vec<B::Elt> = rel
            .iter()
            .zip(z_of[i].iter())
            .map(|(r, z)| {
                let lifted = B::apply_elt(&embed, r);
                B::relator_difference(&free2, z, &lifted)
            })
            .collect();
        new_relators.push(fam);
    }
    let kill_family: Vec<B::Elt> = z_of.iter().flatten().cloned().collect();
    new_relators.push(kill_family);
    build_quotient_cube::<B>(pc, &free2, &data2, &gens2, new_relators, cap)
}

fn build_quotient_cube<B: PresentBackend>(
    pc: &PresentationCube<B>,
    free2: &B::Obj,
    data2: &B::FreeData,
    gens2: &[B::Elt],
    relators: Vec<Vec<B::Elt>>,
    cap: u64,
) -> Result<PresentationCube<B>> {
    let k1 = relators.len();
    let full: u32 = ((1u64 << k1) - 1) as u32;
    // quotient per subset of directions
    let mut quotients: Vec<Option<(B::Obj, B::Map)>> = vec![None; (full + 1) as usize];
    for mask in 0..=full {
        let mut elts: Vec<B::Elt> = Vec::new();
        for (i, fam) in relators.iter().enumerate() {
            if mask & (1 << i) != 0 {
                elts.extend(fam.iter().cloned());
            }
        }
        let sub = B::sub_from_elements(free2, &elts)?;
        quotients[mask as usize] = Some(B::quotient_by(free2, &sub)?);
    }
    // terminal vertex is the presented object itself, reached through the
    // evaluation map that kills fresh generators and applies the old onto.
    let old_terminal = pc.cube.terminal().clone();
    let lambda_images: Vec<B::Elt> = {
        let d = pc.generators.len();
        let mut imgs: Vec<B::Elt> = pc.generators.clone();
        for _ in d..gens2.len() {
            imgs.push(B::identity_elt(&pc.free));
        }
        imgs
    };
    let lambda = B::hom_from_generators(free2, data2, &pc.free, &lambda_images)?;
    let old_onto = pc.cube.arrow(0, pc.cube.full_mask())?;
    let ev = B::compose(&old_onto, &lambda)?;
    let (_, proj_full) = quotients[full as usize].clone().unwrap();
    let iso = B::factor_through_surjection(&ev, &proj_full)?;
    // assemble vertices and covering arrows
    let mut vertices: Vec<B::Obj> = Vec::with_capacity((full + 1) as usize);
    for mask in 0..=full {
        if mask == full {
            vertices.push(old_terminal.clone());
        } else {
            vertices.push(quotients[mask as usize].as_ref().unwrap().0.clone());
        }
    }
    let mut covering = HashMap::new();
    for mask in 0..=full {
        for i in 0..k1 {
            let bit = 1u32 << i;
            if mask & bit != 0 {
                continue;
            }
            let (_, proj_from) = quotients[mask as usize].as_ref().unwrap();
            let (_, proj_to) = quotients[(mask | bit) as usize].as_ref().unwrap();
            let step = B::factor_through_surjection(proj_to, proj_from)?;
            let step = if mask | bit == full { B::compose(&iso, &step)? } else { step };
            covering.insert((mask, mask | bit), step);
        }
    }
    let cube = Cube::new(k1, vertices, covering)?;
    // runtime postcondition: a validated presentation, never silently wrong
    let report = check_presentation::<B>(&cube, &pc.variety, cap);
    if !report.is_extension || !report.is_presentation {
        return Err(Error::ValidationFailed(format!(
            "split-relator doubling produced an invalid cube: {:?}",
            report.failures
        )));
    }
    Ok(PresentationCube {
        variety: pc.variety,
        free: free2.clone(),
        free_data: data2.clone(),
        generators: gens2.to_vec(),
        relators,
        cube,
    })
}

/// Validate a cube as an extension and check projectivity of all
/// non-terminal vertices against the variety.
pub fn check_presentation<B: PresentBackend>(
    cube: &Cube<B>,
    variety: &VarietySpec,
    cap: u64,
) -> ValidationReport {
    let mut report = cube.validate(cap);
    let full = cube.full_mask();
    let mut projective = true;
    for mask in 0..full {
        if !B::is_free(cube.vertex(mask), variety) {
            projective = false;
            report.failures.push(crate::cube::ValidationFailure {
                location: crate::cube::mask_label(mask),
                reason: "vertex is not free in the variety".to_string(),
            });
        }
    }
    // failures recorded for projectivity do not void extension-hood
    report.is_presentation = report.is_extension && projective;
    report
}

/// Iterate `present` and `extend_presentation` to an n-presentation of `a`.
pub fn n_presentation<B: PresentBackend>(
    a: &B::Obj,
    variety: &VarietySpec,
    n: usize,
    candidate_order: Option<Vec<u32>>,
    cap: u64,
) -> Result<PresentationCube<B>> {
    if n == 0 {
        return Err(Error::BadDimension { got: 0, n: 0 });
    }
    let rec = present_with_order::<B>(a, variety, candidate_order, cap)?;
    let mut pc = record_to_cube(variety, rec)?;
    while pc.cube.n() < n {
        pc = extend_presentation(&pc, cap)?;
    }
    let report = check_presentation::<B>(&pc.cube, variety, cap);
    if !report.is_extension || !report.is_presentation {
        return Err(Error::ValidationFailed(format!(
            "n-presentation failed validation: {:?}",
            report.failures
        )));
    }
    Ok(pc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backend::{GroupBackend, LieBackend};
    use crate::corpus;
    use crate::group::DEFAULT_SIZE_CAP;

    fn n23() -> VarietySpec {
        VarietySpec::parse("group:c2:p3").unwrap()
    }

    #[test]
    fn variety_strings_round_trip() {
        for s in ["group:c2:p3", "lie:c3:p5", "group:abelian:p5"] {
            let v = VarietySpec::parse(s).unwrap();
            assert_eq!(v.descriptor(), s);
        }
        assert!(VarietySpec::parse("group:c2:p2").is_err());
        assert!(VarietySpec::parse("group:c3:p5").is_err());
        assert!(VarietySpec::parse("ring:c2:p3").is_err());
    }

    #[test]
    fn free_objects_sizes() {
        let (f, _, gens) =
            GroupBackend::free_object(&n23(), 1, DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(f.order(), 3);
        assert_eq!(gens.len(), 1);

        let (f, _, _) = GroupBackend::free_object(&n23(), 2, DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(f.order(), 27);
        assert_eq!(f.exponent(), 3);
        assert_eq!(crate::group::nilpotency_class(&f), Some(2));

        let v5 = VarietySpec::parse("group:abelian:p5").unwrap();
        let (f, _, _) = GroupBackend::free_object(&v5, 3, DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(f.order(), 125);
        assert!(f.is_abelian());
    }

    #[test]
    fn free_object_is_free() {
        let (f, _, _) = GroupBackend::free_object(&n23(), 2, DEFAULT_SIZE_CAP).unwrap();
        assert!(GroupBackend::is_free(&f, &n23()));
        let c9 = corpus::cyclic(9);
        assert!(!GroupBackend::is_free(&c9, &n23())); // wrong exponent
        let c3c3 = corpus::elementary_abelian(3, 2);
        assert!(!GroupBackend::is_free(&c3c3, &n23())); // not free in c2
        let v1 = VarietySpec::parse("group:abelian:p3").unwrap();
        assert!(GroupBackend::is_free(&c3c3, &v1));
    }

    #[test]
    fn present_c3c3() {
        let a = corpus::elementary_abelian(3, 2);
        let rec = present::<GroupBackend>(&a, &n23(), DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(rec.free.order(), 27);
        assert!(rec.onto.is_surjective());
        let k = crate::group::kernel(&rec.onto);
        assert_eq!(k.order(), 3);
        assert_eq!(rec.relator_generators.len(), 1);
    }

    #[test]
    fn present_free_object_is_relator_free() {
        let (f, _, _) = GroupBackend::free_object(&n23(), 2, DEFAULT_SIZE_CAP).unwrap();
        let rec = present::<GroupBackend>(&f, &n23(), DEFAULT_SIZE_CAP).unwrap();
        assert!(rec.relator_generators.is_empty());
        assert!(crate::group::kernel(&rec.onto).is_trivial());
    }

    #[test]
    fn present_trivial_object() {
        let t = corpus::cyclic(1);
        let rec = present::<GroupBackend>(&t, &n23(), DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(rec.free.order(), 1);
        assert!(rec.relator_generators.is_empty());
    }

    #[test]
    fn canonical_presentation_sizes() {
        let c3 = corpus::cyclic(3);
        let rec = canonical_presentation::<GroupBackend>(&c3, &n23(), DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(rec.free.order(), 3u32.pow(3 + 3));
        assert!(rec.onto.is_surjective());

        let c3c3 = corpus::elementary_abelian(3, 2);
        match canonical_presentation::<GroupBackend>(&c3c3, &n23(), DEFAULT_SIZE_CAP) {
            Err(Error::SizeLimitExceeded { .. }) => {}
            other => panic!("expected SizeLimitExceeded, got {other:?}"),
        }
    }

    #[test]
    fn double_presentation_of_c3c3() {
        let a = corpus::elementary_abelian(3, 2);
        let pc = n_presentation::<GroupBackend>(&a, &n23(), 2, None, DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(pc.cube.n(), 2);
        assert_eq!(pc.free.order(), 729);
        // terminal vertex is the presented object itself
        assert!(GroupBackend::obj_eq(pc.cube.terminal(), &a));
        // K1 · K2 is the kernel of the composite
        let k1 = pc.cube.direction_kernel(1).unwrap();
        let k2 = pc.cube.direction_kernel(2).unwrap();
        let prod = crate::group::product_subgroups(&k1, &k2).unwrap();
        let total = crate::group::kernel(&pc.cube.arrow(0, 3).unwrap());
        assert_eq!(prod.elements(), total.elements());
        let rep = check_presentation::<GroupBackend>(&pc.cube, &n23(), DEFAULT_SIZE_CAP);
        assert!(rep.is_extension && rep.is_presentation);
    }

    #[test]
    fn extend_relator_free_presentation() {
        let (f, _, _) = GroupBackend::free_object(&n23(), 2, DEFAULT_SIZE_CAP).unwrap();
        let pc = n_presentation::<GroupBackend>(&f, &n23(), 2, None, DEFAULT_SIZE_CAP).unwrap();
        // no relators: K1 ∩ K2 side trivial (pullback-style square)
        let k1 = pc.cube.direction_kernel(1).unwrap();
        let k2 = pc.cube.direction_kernel(2).unwrap();
        assert!(crate::group::intersect(&k1, &k2).unwrap().is_trivial());
    }

    #[test]
    fn triple_presentation_of_trivial() {
        let t = corpus::cyclic(1);
        let pc = n_presentation::<GroupBackend>(&t, &n23(), 3, None, DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(pc.cube.n(), 3);
        let rep = check_presentation::<GroupBackend>(&pc.cube, &n23(), DEFAULT_SIZE_CAP);
        assert!(rep.is_extension && rep.is_presentation);
    }

    #[test]
    fn lie_presentations() {
        let v = VarietySpec::parse("lie:c2:p3").unwrap();
        let ab2 = crate::lie::LieAlgebraObject::new(3, 2, vec![vec![vec![0; 2]; 2]; 2]).unwrap();
        let rec = present::<LieBackend>(&ab2, &v, DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(rec.free.dim(), 3);
        assert_eq!(rec.relator_generators.len(), 1);
        let pc = n_presentation::<LieBackend>(&ab2, &v, 2, None, DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(pc.cube.n(), 2);
        let rep = check_presentation::<LieBackend>(&pc.cube, &v, DEFAULT_SIZE_CAP);
        assert!(rep.is_extension && rep.is_presentation, "{:?}", rep.failures);
    }

    #[test]
    fn presentation_universal_property_spot_check() {
        // any generator assignment into an in-variety carrier extends
        let (f, data, _gens) = GroupBackend::free_object(&n23(), 2, DEFAULT_SIZE_CAP).unwrap();
        let h = corpus::heisenberg(3);
        for (a, b) in [(1u32, 3u32), (3, 9), (4, 14)] {
            let hom = GroupBackend::hom_from_generators(&f, &data, &h, &[a, b]);
            assert!(hom.is_ok());
        }
    }
}

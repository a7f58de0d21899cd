//! A common interface over the three carrier backends, covering exactly the
//! operations the cube and homology machinery needs: kernels, images,
//! subobject lattice, fiber products and induced comparisons.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{self, FiniteGroupObject, Group, GroupMorphism, SubgroupHandle};
use crate::lie::{self, Lie, LieMorphism, SubspaceHandle};
use crate::pxmod::{self, PXMorphism, PXSubmodule, Pxm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BackendKind {
    Group,
    Lie,
    Pxmod,
}

impl std::fmt::Display for BackendKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BackendKind::Group => write!(f, "group"),
            BackendKind::Lie => write!(f, "lie"),
            BackendKind::Pxmod => write!(f, "pxmod"),
        }
    }
}

pub trait Backend: Sized + 'static {
    type Obj: Clone + std::fmt::Debug;
    type Sub: Clone + PartialEq + std::fmt::Debug;
    type Map: Clone + std::fmt::Debug;

    fn kind() -> BackendKind;

    fn obj_size(o: &Self::Obj) -> u64;
    fn obj_eq(a: &Self::Obj, b: &Self::Obj) -> bool;

    fn full_sub(o: &Self::Obj) -> Self::Sub;
    fn trivial_sub(o: &Self::Obj) -> Self::Sub;
    fn sub_size(s: &Self::Sub) -> u64;
    fn sub_is_trivial(s: &Self::Sub) -> bool {
        Self::sub_size(s) == Self::sub_size(&Self::trivial_sub(&Self::sub_parent(s)))
    }
    fn sub_parent(s: &Self::Sub) -> Self::Obj;
    fn sub_contains(outer: &Self::Sub, inner: &Self::Sub) -> bool;

    fn intersect(a: &Self::Sub, b: &Self::Sub) -> Result<Self::Sub>;
    /// Subobject generated by the union.
    fn join(a: &Self::Sub, b: &Self::Sub) -> Result<Self::Sub>;
    /// The backend's fundamental binary bracket on subobjects: commutator
    /// subgroup, bracket ideal, or Peiffer commutator.
    fn commutator(parent: &Self::Obj, a: &Self::Sub, b: &Self::Sub) -> Result<Self::Sub>;

    fn identity_map(o: &Self::Obj) -> Self::Map;
    fn map_domain(f: &Self::Map) -> Self::Obj;
    fn map_codomain(f: &Self::Map) -> Self::Obj;
    fn compose(second: &Self::Map, first: &Self::Map) -> Result<Self::Map>;
    fn map_eq(f: &Self::Map, g: &Self::Map) -> bool;
    fn is_surjective(f: &Self::Map) -> bool;
    fn kernel(f: &Self::Map) -> Self::Sub;
    fn image_of_sub(f: &Self::Map, s: &Self::Sub) -> Result<Self::Sub>;

    fn fiber_product(
        f: &Self::Map,
        g: &Self::Map,
        cap: u64,
    ) -> Result<(Self::Obj, Self::Map, Self::Map)>;
    /// Induced comparison `x -> (u(x), v(x))` into a fiber product built by
    /// `fiber_product`.
    fn into_fiber(
        fiber: &Self::Obj,
        proj1: &Self::Map,
        proj2: &Self::Map,
        u: &Self::Map,
        v: &Self::Map,
    ) -> Result<Self::Map>;

    /// Kernel materialized as a carrier with its inclusion.
    fn kernel_object(f: &Self::Map) -> Result<(Self::Obj, Self::Map)>;
    /// Quotient by a normal subobject, with the projection.
    fn quotient_by(o: &Self::Obj, s: &Self::Sub) -> Result<(Self::Obj, Self::Map)>;
    /// Unique `v` with `v ∘ proj = u` (proj a surjection from u's domain).
    fn factor_through_surjection(u: &Self::Map, proj: &Self::Map) -> Result<Self::Map>;
    /// Unique `w` with `incl ∘ w = u` (incl an injection into u's codomain).
    fn factor_through_injection(u: &Self::Map, incl: &Self::Map) -> Result<Self::Map>;
}

/// Enumerated finite groups.
pub struct GroupBackend;

impl Backend for GroupBackend {
    type Obj = Group;
    type Sub = SubgroupHandle;
    type Map = GroupMorphism;

    fn kind() -> BackendKind {
        BackendKind::Group
    }

    fn obj_size(o: &Group) -> u64 {
        o.order() as u64
    }

    fn obj_eq(a: &Group, b: &Group) -> bool {
        Arc::ptr_eq(a, b)
    }

    fn full_sub(o: &Group) -> SubgroupHandle {
        group::full_subgroup(o)
    }

    fn trivial_sub(o: &Group) -> SubgroupHandle {
        group::trivial_subgroup(o)
    }

    fn sub_size(s: &SubgroupHandle) -> u64 {
        s.order() as u64
    }

    fn sub_parent(s: &SubgroupHandle) -> Group {
        s.parent().clone()
    }

    fn sub_contains(outer: &SubgroupHandle, inner: &SubgroupHandle) -> bool {
        outer.contains_subgroup(inner)
    }

    fn intersect(a: &SubgroupHandle, b: &SubgroupHandle) -> Result<SubgroupHandle> {
        group::intersect(a, b)
    }

    fn join(a: &SubgroupHandle, b: &SubgroupHandle) -> Result<SubgroupHandle> {
        group::join_subgroups(a, b)
    }

    fn commutator(parent: &Group, a: &SubgroupHandle, b: &SubgroupHandle) -> Result<SubgroupHandle> {
        group::commutator_subgroup(parent, a, b)
    }

    fn identity_map(o: &Group) -> GroupMorphism {
        GroupMorphism::identity(o)
    }

    fn map_domain(f: &GroupMorphism) -> Group {
        f.domain().clone()
    }

    fn map_codomain(f: &GroupMorphism) -> Group {
        f.codomain().clone()
    }

    fn compose(second: &GroupMorphism, first: &GroupMorphism) -> Result<GroupMorphism> {
        GroupMorphism::compose(second, first)
    }

    fn map_eq(f: &GroupMorphism, g: &GroupMorphism) -> bool {
        f.equal(g)
    }

    fn is_surjective(f: &GroupMorphism) -> bool {
        f.is_surjective()
    }

    fn kernel(f: &GroupMorphism) -> SubgroupHandle {
        group::kernel(f)
    }

    fn image_of_sub(f: &GroupMorphism, s: &SubgroupHandle) -> Result<SubgroupHandle> {
        group::image_of_subgroup(f, s)
    }

    fn fiber_product(
        f: &GroupMorphism,
        g: &GroupMorphism,
        cap: u64,
    ) -> Result<(Group, GroupMorphism, GroupMorphism)> {
        group::fiber_product(f, g, cap)
    }

    fn into_fiber(
        fiber: &Group,
        _proj1: &GroupMorphism,
        _proj2: &GroupMorphism,
        u: &GroupMorphism,
        v: &GroupMorphism,
    ) -> Result<GroupMorphism> {
        group::into_pair_carrier(fiber, u, v)
    }

    fn kernel_object(f: &GroupMorphism) -> Result<(Group, GroupMorphism)> {
        Ok(group::materialize_subgroup(&group::kernel(f)))
    }

    fn quotient_by(o: &Group, s: &SubgroupHandle) -> Result<(Group, GroupMorphism)> {
        group::quotient(o, s)
    }

    fn factor_through_surjection(
        u: &GroupMorphism,
        proj: &GroupMorphism,
    ) -> Result<GroupMorphism> {
        group::factor_through_surjection(u, proj)
    }

    fn factor_through_injection(
        u: &GroupMorphism,
        incl: &GroupMorphism,
    ) -> Result<GroupMorphism> {
        group::factor_through_injection(u, incl)
    }
}

/// Nilpotent Lie algebras over F_p.
pub struct LieBackend;

impl Backend for LieBackend {
    type Obj = Lie;
    type Sub = SubspaceHandle;
    type Map = LieMorphism;

    fn kind() -> BackendKind {
        BackendKind::Lie
    }

    fn obj_size(o: &Lie) -> u64 {
        // dimension, not cardinality; caps act on dimensions here
        o.dim() as u64
    }

    fn obj_eq(a: &Lie, b: &Lie) -> bool {
        Arc::ptr_eq(a, b)
    }

    fn full_sub(o: &Lie) -> SubspaceHandle {
        lie::full_subspace(o)
    }

    fn trivial_sub(o: &Lie) -> SubspaceHandle {
        lie::zero_subspace(o)
    }

    fn sub_size(s: &SubspaceHandle) -> u64 {
        s.dim() as u64
    }

    fn sub_parent(s: &SubspaceHandle) -> Lie {
        s.parent().clone()
    }

    fn sub_contains(outer: &SubspaceHandle, inner: &SubspaceHandle) -> bool {
        outer.contains(inner)
    }

    fn intersect(a: &SubspaceHandle, b: &SubspaceHandle) -> Result<SubspaceHandle> {
        lie::intersect(a, b)
    }

    fn join(a: &SubspaceHandle, b: &SubspaceHandle) -> Result<SubspaceHandle> {
        lie::sum(a, b)
    }

    fn commutator(parent: &Lie, a: &SubspaceHandle, b: &SubspaceHandle) -> Result<SubspaceHandle> {
        lie::bracket_ideal(parent, a, b)
    }

    fn identity_map(o: &Lie) -> LieMorphism {
        LieMorphism::identity(o)
    }

    fn map_domain(f: &LieMorphism) -> Lie {
        f.domain().clone()
    }

    fn map_codomain(f: &LieMorphism) -> Lie {
        f.codomain().clone()
    }

    fn compose(second: &LieMorphism, first: &LieMorphism) -> Result<LieMorphism> {
        LieMorphism::compose(second, first)
    }

    fn map_eq(f: &LieMorphism, g: &LieMorphism) -> bool {
        f.equal(g)
    }

    fn is_surjective(f: &LieMorphism) -> bool {
        f.is_surjective()
    }

    fn kernel(f: &LieMorphism) -> SubspaceHandle {
        lie::kernel(f)
    }

    fn image_of_sub(f: &LieMorphism, s: &SubspaceHandle) -> Result<SubspaceHandle> {
        lie::image_of_subspace(f, s)
    }

    fn fiber_product(
        f: &LieMorphism,
        g: &LieMorphism,
        _cap: u64,
    ) -> Result<(Lie, LieMorphism, LieMorphism)> {
        lie::fiber_product(f, g)
    }

    fn into_fiber(
        fiber: &Lie,
        proj1: &LieMorphism,
        proj2: &LieMorphism,
        u: &LieMorphism,
        v: &LieMorphism,
    ) -> Result<LieMorphism> {
        lie::into_fiber(fiber, proj1, proj2, u, v)
    }

    fn kernel_object(f: &LieMorphism) -> Result<(Lie, LieMorphism)> {
        lie::materialize_subspace(&lie::kernel(f))
    }

    fn quotient_by(o: &Lie, s: &SubspaceHandle) -> Result<(Lie, LieMorphism)> {
        lie::quotient(o, s)
    }

    fn factor_through_surjection(u: &LieMorphism, proj: &LieMorphism) -> Result<LieMorphism> {
        lie::factor_through_surjection(u, proj)
    }

    fn factor_through_injection(u: &LieMorphism, incl: &LieMorphism) -> Result<LieMorphism> {
        lie::factor_through_injection(u, incl)
    }
}

/// Finite precrossed modules.
pub struct PxmodBackend;

impl Backend for PxmodBackend {
    type Obj = Pxm;
    type Sub = PXSubmodule;
    type Map = PXMorphism;

    fn kind() -> BackendKind {
        BackendKind::Pxmod
    }

    fn obj_size(o: &Pxm) -> u64 {
        o.c().order() as u64 * o.g().order() as u64
    }

    fn obj_eq(a: &Pxm, b: &Pxm) -> bool {
        Arc::ptr_eq(a, b)
    }

    fn full_sub(o: &Pxm) -> PXSubmodule {
        pxmod::full_submodule(o)
    }

    fn trivial_sub(o: &Pxm) -> PXSubmodule {
        pxmod::trivial_submodule(o)
    }

    fn sub_size(s: &PXSubmodule) -> u64 {
        s.m.order() as u64 * s.s.order() as u64
    }

    fn sub_parent(s: &PXSubmodule) -> Pxm {
        s.parent().clone()
    }

    fn sub_contains(outer: &PXSubmodule, inner: &PXSubmodule) -> bool {
        outer.contains(inner)
    }

    fn intersect(a: &PXSubmodule, b: &PXSubmodule) -> Result<PXSubmodule> {
        pxmod::px_intersect(a, b)
    }

    fn join(a: &PXSubmodule, b: &PXSubmodule) -> Result<PXSubmodule> {
        pxmod::px_join(a, b)
    }

    fn commutator(parent: &Pxm, a: &PXSubmodule, b: &PXSubmodule) -> Result<PXSubmodule> {
        pxmod::peiffer_commutator(parent, a, b)
    }

    fn identity_map(o: &Pxm) -> PXMorphism {
        PXMorphism::identity(o)
    }

    fn map_domain(f: &PXMorphism) -> Pxm {
        f.domain().clone()
    }

    fn map_codomain(f: &PXMorphism) -> Pxm {
        f.codomain().clone()
    }

    fn compose(second: &PXMorphism, first: &PXMorphism) -> Result<PXMorphism> {
        PXMorphism::compose(second, first)
    }

    fn map_eq(f: &PXMorphism, g: &PXMorphism) -> bool {
        f.equal(g)
    }

    fn is_surjective(f: &PXMorphism) -> bool {
        f.is_surjective()
    }

    fn kernel(f: &PXMorphism) -> PXSubmodule {
        pxmod::px_kernel(f)
    }

    fn image_of_sub(f: &PXMorphism, s: &PXSubmodule) -> Result<PXSubmodule> {
        pxmod::px_image_of(f, s)
    }

    fn fiber_product(
        f: &PXMorphism,
        g: &PXMorphism,
        cap: u64,
    ) -> Result<(Pxm, PXMorphism, PXMorphism)> {
        pxmod::px_fiber_product(f, g, cap)
    }

    fn into_fiber(
        fiber: &Pxm,
        _proj1: &PXMorphism,
        _proj2: &PXMorphism,
        u: &PXMorphism,
        v: &PXMorphism,
    ) -> Result<PXMorphism> {
        pxmod::px_into_fiber(fiber, u, v)
    }

    fn kernel_object(f: &PXMorphism) -> Result<(Pxm, PXMorphism)> {
        pxmod::materialize_submodule(&pxmod::px_kernel(f))
    }

    fn quotient_by(o: &Pxm, s: &PXSubmodule) -> Result<(Pxm, PXMorphism)> {
        pxmod::px_quotient(o, s)
    }

    fn factor_through_surjection(u: &PXMorphism, proj: &PXMorphism) -> Result<PXMorphism> {
        pxmod::px_factor_through_surjection(u, proj)
    }

    fn factor_through_injection(u: &PXMorphism, incl: &PXMorphism) -> Result<PXMorphism> {
        pxmod::px_factor_through_injection(u, incl)
    }
}

/// Convenience: surjectivity check that names the failing arrow.
pub fn require_surjective<B: Backend>(f: &B::Map, at: &str) -> Result<()> {
    if B::is_surjective(f) {
        Ok(())
    } else {
        Err(Error::NotSurjectiveArrow { at: at.to_string() })
    }
}

pub use crate::group::DEFAULT_SIZE_CAP;

/// Marker import so the group backend re-exports stay coherent.
#[allow(unused)]
fn _assert_traits() {
    fn is_backend<B: Backend>() {}
    is_backend::<GroupBackend>();
    is_backend::<LieBackend>();
    is_backend::<PxmodBackend>();
    let _ = FiniteGroupObject::make_group;
}

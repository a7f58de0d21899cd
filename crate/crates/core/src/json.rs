//! JSON wire formats for carriers, morphisms, cubes, and reports.
//!
//! Group: `{"order": N, "identity": i, "table": [[...]]}`.
//! Lie: `{"p": q, "dim": d, "brackets": [{"i": a, "j": b, "value": [..]}]}`
//! with omitted pairs meaning a zero bracket.
//! Precrossed: `{"C": <group>, "G": <group>, "action": [[..]], "boundary": [..]}`.
//! Cube: `{"n": k, "backend": "group|lie|pxmod", "vertices": {"": ..},
//! "arrows": {"->1": <morphism>, ..}}` with subset keys as sorted digit
//! strings.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::backend::{Backend, BackendKind, GroupBackend, LieBackend, PxmodBackend};
use crate::cube::Cube;
use crate::error::{Error, Result};
use crate::fp::FpMat;
use crate::group::{FiniteGroupObject, Group, GroupMorphism};
use crate::lie::{Lie, LieAlgebraObject, LieMorphism};
use crate::pxmod::{PXMorphism, PrecrossedModuleObject, Pxm};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupWire {
    pub order: u32,
    pub identity: u32,
    pub table: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub value: Vec<u32>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LieWire {
    pub p: u32,
    pub dim: usize,
    pub brackets: Vec<BracketEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PxmodWire {
    #[serde(rename = "C")]
    pub c: GroupWire,
    #[serde(rename = "G")]
    pub g: GroupWire,
    pub action: Vec<Vec<u32>>,
    pub boundary: Vec<u32>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MorphismWire {
    Group { images: Vec<u32> },
    Lie { matrix: Vec<Vec<u32>> },
    Pxmod { on_c: Vec<u32>, on_g: Vec<u32> },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CubeWire {
    pub n: usize,
    pub backend: BackendKind,
    /// Vertex payloads keyed by sorted digit strings ("", "1", "12", ...).
    pub vertices: BTreeMap<String, serde_json::Value>,
    /// Covering arrows keyed as "A->B".
    pub arrows: BTreeMap<String, MorphismWire>,
}

pub fn group_to_wire(g: &Group) -> GroupWire {
    GroupWire { order: g.order(), identity: g.identity(), table: g.table() }
}

pub fn group_from_wire(w: &GroupWire) -> Result<Group> {
    if w.table.len() != w.order as usize {
        return Err(Error::Invalid("group table size disagrees with order".into()));
    }
    let g = FiniteGroupObject::make_group(w.table.clone())?;
    if g.identity() != w.identity {
        return Err(Error::Invalid(format!(
            "identity {} does not match the table (found {})",
            w.identity,
            g.identity()
        )));
    }
    Ok(g)
}

pub fn lie_to_wire(l: &Lie) -> LieWire {
    let mut brackets = Vec::new();
    for i in 0..l.dim() {
        for j in 0..l.dim() {
            let v = l.basis_bracket(i, j);
            if v.iter().any(|&c| c != 0) {
                brackets.push(BracketEntry { i, j, value: v.to_vec() });
            }
        }
    }
    LieWire { p: l.p(), dim: l.dim(), brackets }
}

pub fn lie_from_wire(w: &LieWire) -> Result<Lie> {
    let mut table = vec![vec![vec![0u32; w.dim]; w.dim]; w.dim];
    for e in &w.brackets {
        if e.i >= w.dim || e.j >= w.dim || e.value.len() != w.dim {
            return Err(Error::Invalid("bracket entry out of range".into()));
        }
        table[e.i][e.j] = e.value.iter().map(|&c| c % w.p).collect();
    }
    // fill antisymmetric counterparts for omitted pairs
    for i in 0..w.dim {
        for j in 0..w.dim {
            if table[i][j].iter().any(|&c| c != 0) && table[j][i].iter().all(|&c| c == 0) {
                table[j][i] = table[i][j].iter().map(|&c| (w.p - c % w.p) % w.p).collect();
            }
        }
    }
    LieAlgebraObject::new(w.p, w.dim, table)
}

pub fn pxmod_to_wire(m: &Pxm) -> PxmodWire {
    PxmodWire {
        c: group_to_wire(m.c()),
        g: group_to_wire(m.g()),
        action: m.action_table().clone(),
        boundary: m.boundary_vec().to_vec(),
    }
}

pub fn pxmod_from_wire(w: &PxmodWire) -> Result<Pxm> {
    let c = group_from_wire(&w.c)?;
    let g = group_from_wire(&w.g)?;
    PrecrossedModuleObject::new(c, g, w.action.clone(), w.boundary.clone())
}

/// Mask to the sorted-digit-string key ("" for the empty subset).
pub fn mask_key(mask: u32) -> String {
    let mut s = String::new();
    for i in 0..32 {
        if mask & (1 << i) != 0 {
            s.push_str(&(i + 1).to_string());
        }
    }
    s
}

pub fn key_mask(key: &str) -> Result<u32> {
    let mut mask = 0u32;
    for ch in key.chars() {
        let d = ch
            .to_digit(10)
            .ok_or_else(|| Error::Invalid(format!("bad subset key {key}")))?;
        if d == 0 {
            return Err(Error::Invalid(format!("bad subset key {key}")));
        }
        mask |= 1 << (d - 1);
    }
    Ok(mask)
}

/// Serialization hooks per backend.
pub trait WireBackend: Backend {
    fn obj_to_value(o: &Self::Obj) -> serde_json::Value;
    fn obj_from_value(v: &serde_json::Value) -> Result<Self::Obj>;
    fn map_to_wire(m: &Self::Map) -> MorphismWire;
    fn map_from_wire(w: &MorphismWire, dom: &Self::Obj, cod: &Self::Obj) -> Result<Self::Map>;
}

impl WireBackend for GroupBackend {
    fn obj_to_value(o: &Group) -> serde_json::Value {
        serde_json::to_value(group_to_wire(o)).expect("group wire serializes")
    }

    fn obj_from_value(v: &serde_json::Value) -> Result<Group> {
        let w: GroupWire = serde_json::from_value(v.clone())
            .map_err(|e| Error::Invalid(format!("bad group payload: {e}")))?;
        group_from_wire(&w)
    }

    fn map_to_wire(m: &GroupMorphism) -> MorphismWire {
        MorphismWire::Group { images: m.images().to_vec() }
    }

    fn map_from_wire(w: &MorphismWire, dom: &Group, cod: &Group) -> Result<GroupMorphism> {
        match w {
            MorphismWire::Group { images } => {
                GroupMorphism::new(dom.clone(), cod.clone(), images.clone())
            }
            _ => Err(Error::Invalid("expected a group morphism payload".into())),
        }
    }
}

impl WireBackend for LieBackend {
    fn obj_to_value(o: &Lie) -> serde_json::Value {
        serde_json::to_value(lie_to_wire(o)).expect("lie wire serializes")
    }

    fn obj_from_value(v: &serde_json::Value) -> Result<Lie> {
        let w: LieWire = serde_json::from_value(v.clone())
            .map_err(|e| Error::Invalid(format!("bad lie payload: {e}")))?;
        lie_from_wire(&w)
    }

    fn map_to_wire(m: &LieMorphism) -> MorphismWire {
        let mat = m.matrix();
        let rows: Vec<Vec<u32>> = (0..mat.rows).map(|i| mat.row(i).to_vec()).collect();
        MorphismWire::Lie { matrix: rows }
    }

    fn map_from_wire(w: &MorphismWire, dom: &Lie, cod: &Lie) -> Result<LieMorphism> {
        match w {
            MorphismWire::Lie { matrix } => {
                let m = FpMat::from_rows(dom.p(), matrix, cod.dim());
                LieMorphism::new(dom.clone(), cod.clone(), m)
            }
            _ => Err(Error::Invalid("expected a lie morphism payload".into())),
        }
    }
}

impl WireBackend for PxmodBackend {
    fn obj_to_value(o: &Pxm) -> serde_json::Value {
        serde_json::to_value(pxmod_to_wire(o)).expect("pxmod wire serializes")
    }

    fn obj_from_value(v: &serde_json::Value) -> Result<Pxm> {
        let w: PxmodWire = serde_json::from_value(v.clone())
            .map_err(|e| Error::Invalid(format!("bad pxmod payload: {e}")))?;
        pxmod_from_wire(&w)
    }

    fn map_to_wire(m: &PXMorphism) -> MorphismWire {
        MorphismWire::Pxmod {
            on_c: m.on_c.images().to_vec(),
            on_g: m.on_g.images().to_vec(),
        }
    }

    fn map_from_wire(w: &MorphismWire, dom: &Pxm, cod: &Pxm) -> Result<PXMorphism> {
        match w {
            MorphismWire::Pxmod { on_c, on_g } => {
                let c = GroupMorphism::new(dom.c().clone(), cod.c().clone(), on_c.clone())?;
                let g = GroupMorphism::new(dom.g().clone(), cod.g().clone(), on_g.clone())?;
                PXMorphism::new(dom.clone(), cod.clone(), c, g)
            }
            _ => Err(Error::Invalid("expected a pxmod morphism payload".into())),
        }
    }
}

pub fn cube_to_wire<B: WireBackend>(cube: &Cube<B>) -> Result<CubeWire> {
    let n = cube.n();
    let mut vertices = BTreeMap::new();
    for mask in 0..(1u32 << n) {
        vertices.insert(mask_key(mask), B::obj_to_value(cube.vertex(mask)));
    }
    let mut arrows = BTreeMap::new();
    for mask in 0..(1u32 << n) {
        for i in 0..n {
            let bit = 1u32 << i;
            if mask & bit != 0 {
                continue;
            }
            let key = format!("{}->{}", mask_key(mask), mask_key(mask | bit));
            arrows.insert(key, B::map_to_wire(&cube.arrow(mask, mask | bit)?));
        }
    }
    Ok(CubeWire { n, backend: B::kind(), vertices, arrows })
}

pub fn cube_from_wire<B: WireBackend>(w: &CubeWire) -> Result<Cube<B>> {
    if w.backend != B::kind() {
        return Err(Error::Invalid(format!(
            "cube backend {} does not match {}",
            w.backend,
            B::kind()
        )));
    }
    let n = w.n;
    let mut vertices: Vec<B::Obj> = Vec::with_capacity(1 << n);
    for mask in 0..(1u32 << n) {
        let key = mask_key(mask);
        let v = w
            .vertices
            .get(&key)
            .ok_or_else(|| Error::Invalid(format!("missing vertex \"{key}\"")))?;
        vertices.push(B::obj_from_value(v)?);
    }
    let mut covering = HashMap::new();
    for (key, mw) in &w.arrows {
        let (from, to) = key
            .split_once("->")
            .ok_or_else(|| Error::Invalid(format!("bad arrow key {key}")))?;
        let fm = key_mask(from)?;
        let tm = key_mask(to)?;
        if fm | tm != tm || (tm & !fm).count_ones() != 1 {
            return Err(Error::Invalid(format!("arrow key {key} is not a covering pair")));
        }
        let map = B::map_from_wire(mw, &vertices[fm as usize], &vertices[tm as usize])?;
        covering.insert((fm, tm), map);
    }
    Cube::new(n, vertices, covering)
}

/// Deterministic fingerprint of a cube: SHA-256 over its canonical wire
/// serialization (sorted keys, fixed field order).
pub fn cube_fingerprint<B: WireBackend>(cube: &Cube<B>) -> String {
    let wire = cube_to_wire(cube).expect("internal cube serializes");
    let bytes = serde_json::to_vec(&wire).expect("wire serializes");
    let mut hasher = Sha256::new();
    hasher.update(&bytes);
    let digest = hasher.finalize();
    digest.iter().take(12).map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::group::DEFAULT_SIZE_CAP;
    use crate::present::{n_presentation, VarietySpec};

    #[test]
    fn group_round_trip() {
        let g = corpus::symmetric3();
        let w = group_to_wire(&g);
        let g2 = group_from_wire(&w).unwrap();
        assert_eq!(g2.order(), 6);
        assert_eq!(group_to_wire(&g2).table, w.table);
    }

    #[test]
    fn lie_round_trip_with_omitted_pairs() {
        let json = r#"{"p":3,"dim":3,"brackets":[{"i":0,"j":1,"value":[0,0,1]}]}"#;
        let w: LieWire = serde_json::from_str(json).unwrap();
        let l = lie_from_wire(&w).unwrap();
        assert_eq!(l.basis_bracket(1, 0), &[0, 0, 2]);
        let w2 = lie_to_wire(&l);
        let l2 = lie_from_wire(&w2).unwrap();
        assert_eq!(l2.basis_bracket(0, 1), l.basis_bracket(0, 1));
    }

    #[test]
    fn cube_round_trip_and_fingerprint_stability() {
        let a = corpus::elementary_abelian(3, 2);
        let v = VarietySpec::parse("group:c2:p3").unwrap();
        let pc = n_presentation::<GroupBackend>(&a, &v, 2, None, DEFAULT_SIZE_CAP).unwrap();
        let wire = cube_to_wire(&pc.cube).unwrap();
        let text = serde_json::to_string(&wire).unwrap();
        let wire2: CubeWire = serde_json::from_str(&text).unwrap();
        let cube2 = cube_from_wire::<GroupBackend>(&wire2).unwrap();
        assert_eq!(cube_fingerprint(&pc.cube), cube_fingerprint(&cube2));
        assert!(cube2.validate(DEFAULT_SIZE_CAP).is_extension);
    }

    #[test]
    fn subset_keys() {
        assert_eq!(mask_key(0), "");
        assert_eq!(mask_key(0b101), "13");
        assert_eq!(key_mask("13").unwrap(), 0b101);
        assert!(key_mask("0").is_err());
    }
}

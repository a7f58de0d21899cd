//! Power-set-indexed diagrams over any backend: n-cubes of carriers with
//! covering-inclusion arrows, extension validation through regular-pushout
//! criteria, degreewise kernels and kernel pairs, and centrality checks.
//!
//! Subsets of the direction set `{1..n}` are bitmasks; direction `i` is bit
//! `i-1`. Only covering arrows are stored; longer arrows are composed on
//! demand and memoized.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::backend::Backend;
use crate::error::{Error, Result};

pub struct Cube<B: Backend> {
    n: usize,
    vertices: Vec<B::Obj>,
    covering: HashMap<(u32, u32), B::Map>,
    memo: Mutex<HashMap<(u32, u32), B::Map>>,
}

impl<B: Backend> std::fmt::Debug for Cube<B> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Cube(n={})", self.n)
    }
}

/// Outcome of extension validation, with located failures.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ValidationReport {
    pub is_extension: bool,
    pub failures: Vec<ValidationFailure>,
    /// All non-terminal vertices projective/free. Filled by the presentation
    /// layer; plain extension validation leaves it `false`.
    pub is_presentation: bool,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct ValidationFailure {
    pub location: String,
    pub reason: String,
}

/// Verdict of the two regular-pushout criteria on a commuting square of
/// surjections; the constructor asserts they agree.
#[derive(Debug, Clone, serde::Serialize)]
pub struct RegularPushoutReport {
    pub comparison_surjective: bool,
    pub kernel_map_surjective: bool,
    pub is_regular_pushout: bool,
}

pub fn mask_label(mask: u32) -> String {
    if mask == 0 {
        return "{}".to_string();
    }
    let mut s = String::from("{");
    let mut first = true;
    for i in 0..32 {
        if mask & (1 << i) != 0 {
            if !first {
                s.push(',');
            }
            s.push_str(&(i + 1).to_string());
            first = false;
        }
    }
    s.push('}');
    s
}

impl<B: Backend> Cube<B> {
    /// Structural constructor: checks arrow endpoints and that every
    /// composable square of covering arrows commutes.
    pub fn new(
        n: usize,
        vertices: Vec<B::Obj>,
        covering: HashMap<(u32, u32), B::Map>,
    ) -> Result<Self> {
        if vertices.len() != 1 << n {
            return Err(Error::Invalid(format!(
                "expected {} vertices for a {n}-cube, got {}",
                1 << n,
                vertices.len()
            )));
        }
        let full: u32 = ((1u64 << n) - 1) as u32;
        for m in 0..=full {
            if n == 0 {
                break;
            }
            for i in 0..n {
                let bit = 1u32 << i;
                if m & bit != 0 {
                    continue;
                }
                let key = (m, m | bit);
                let Some(map) = covering.get(&key) else {
                    return Err(Error::Invalid(format!(
                        "missing covering arrow {} -> {}",
                        mask_label(m),
                        mask_label(m | bit)
                    )));
                };
                if !B::obj_eq(&B::map_domain(map), &vertices[m as usize])
                    || !B::obj_eq(&B::map_codomain(map), &vertices[(m | bit) as usize])
                {
                    return Err(Error::Invalid(format!(
                        "arrow {} -> {} does not match its endpoints",
                        mask_label(m),
                        mask_label(m | bit)
                    )));
                }
            }
        }
        let cube = Cube { n, vertices, covering, memo: Mutex::new(HashMap::new()) };
        // Commutativity of all covering squares.
        for m in 0..=full {
            for i in 0..n {
                for j in (i + 1)..n {
                    let (bi, bj) = (1u32 << i, 1u32 << j);
                    if m & bi != 0 || m & bj != 0 {
                        continue;
                    }
                    let via_i = B::compose(
                        cube.covering.get(&(m | bi, m | bi | bj)).unwrap(),
                        cube.covering.get(&(m, m | bi)).unwrap(),
                    )?;
                    let via_j = B::compose(
                        cube.covering.get(&(m | bj, m | bi | bj)).unwrap(),
                        cube.covering.get(&(m, m | bj)).unwrap(),
                    )?;
                    if !B::map_eq(&via_i, &via_j) {
                        return Err(Error::NotCommuting {
                            at: format!("{} -> {}", mask_label(m), mask_label(m | bi | bj)),
                        });
                    }
                }
            }
        }
        Ok(cube)
    }

    /// 0-cube on a single object.
    pub fn point(obj: B::Obj) -> Self {
        Cube { n: 0, vertices: vec![obj], covering: HashMap::new(), memo: Mutex::new(HashMap::new()) }
    }

    /// 1-cube from an arrow.
    pub fn from_arrow(map: B::Map) -> Self {
        let dom = B::map_domain(&map);
        let cod = B::map_codomain(&map);
        let mut covering = HashMap::new();
        covering.insert((0u32, 1u32), map);
        Cube { n: 1, vertices: vec![dom, cod], covering, memo: Mutex::new(HashMap::new()) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn full_mask(&self) -> u32 {
        ((1u64 << self.n) - 1) as u32
    }

    pub fn vertex(&self, mask: u32) -> &B::Obj {
        &self.vertices[mask as usize]
    }

    pub fn initial(&self) -> &B::Obj {
        &self.vertices[0]
    }

    pub fn terminal(&self) -> &B::Obj {
        &self.vertices[self.full_mask() as usize]
    }

    /// Arrow between comparable subsets, composed along ascending bits.
    pub fn arrow(&self, from: u32, to: u32) -> Result<B::Map> {
        if from & !to != 0 {
            return Err(Error::Invalid(format!(
                "no arrow {} -> {}",
                mask_label(from),
                mask_label(to)
            )));
        }
        if from == to {
            return Ok(B::identity_map(self.vertex(from)));
        }
        if let Some(m) = self.memo.lock().unwrap().get(&(from, to)) {
            return Ok(m.clone());
        }
        let mut cur: Option<B::Map> = None;
        let mut at = from;
        for i in 0..self.n {
            let bit = 1u32 << i;
            if to & bit != 0 && from & bit == 0 {
                let step = self.covering.get(&(at, at | bit)).unwrap().clone();
                cur = Some(match cur {
                    None => step,
                    Some(prev) => B::compose(&step, &prev)?,
                });
                at |= bit;
            }
        }
        let map = cur.unwrap();
        self.memo.lock().unwrap().insert((from, to), map.clone());
        Ok(map)
    }

    /// Face of the cube with direction bit `dir_bit` fixed to `side`,
    /// directions renumbered downward.
    pub fn face(&self, dir_bit: usize, side: bool) -> Cube<B> {
        let n2 = self.n - 1;
        let expand = |m: u32| -> u32 {
            let low = m & ((1 << dir_bit) - 1);
            let high = (m >> dir_bit) << (dir_bit + 1);
            low | high | ((side as u32) << dir_bit)
        };
        let vertices: Vec<B::Obj> =
            (0..(1u32 << n2)).map(|m| self.vertex(expand(m)).clone()).collect();
        let mut covering = HashMap::new();
        for m in 0..(1u32 << n2) {
            for i in 0..n2 {
                let bit = 1u32 << i;
                if m & bit != 0 {
                    continue;
                }
                let map = self.covering.get(&(expand(m), expand(m | bit))).unwrap().clone();
                covering.insert((m, m | bit), map);
            }
        }
        Cube { n: n2, vertices, covering, memo: Mutex::new(HashMap::new()) }
    }

    /// Combine two d-cubes and a family of per-vertex maps into a
    /// (d+1)-cube whose new top direction carries the maps.
    pub fn from_arrow_of_cubes(dom: &Cube<B>, cod: &Cube<B>, comps: Vec<B::Map>) -> Result<Cube<B>> {
        let d = dom.n;
        if cod.n != d || comps.len() != 1 << d {
            return Err(Error::Invalid("mismatched cube arrow data".into()));
        }
        let mut vertices = dom.vertices.clone();
        vertices.extend(cod.vertices.iter().cloned());
        let top = 1u32 << d;
        let mut covering = HashMap::new();
        for (k, v) in &dom.covering {
            covering.insert(*k, v.clone());
        }
        for (k, v) in &cod.covering {
            covering.insert((k.0 | top, k.1 | top), v.clone());
        }
        for m in 0..(1u32 << d) {
            covering.insert((m, m | top), comps[m as usize].clone());
        }
        Cube::new(d + 1, vertices, covering)
    }

    /// Apply a permutation of directions: `perm[i]` is the new position of
    /// direction `i` (0-based bits).
    pub fn permute_directions(&self, perm: &[usize]) -> Result<Cube<B>> {
        if perm.len() != self.n {
            return Err(Error::BadDimension { got: perm.len(), n: self.n });
        }
        let remap = |m: u32| -> u32 {
            let mut out = 0u32;
            for (i, &pi) in perm.iter().enumerate() {
                if m & (1 << i) != 0 {
                    out |= 1 << pi;
                }
            }
            out
        };
        let mut vertices = vec![None; 1 << self.n];
        for m in 0..(1u32 << self.n) {
            vertices[remap(m) as usize] = Some(self.vertex(m).clone());
        }
        let vertices: Vec<B::Obj> = vertices.into_iter().map(Option::unwrap).collect();
        let mut covering = HashMap::new();
        for (k, v) in &self.covering {
            covering.insert((remap(k.0), remap(k.1)), v.clone());
        }
        Cube::new(self.n, vertices, covering)
    }

    /// `Ext_k f`: the k-cube with vertices at `A ∪ ({1..n} \ {1..k})`.
    /// `sub_extension(f, n) = f`, `sub_extension(f, 0)` is the terminal
    /// vertex.
    pub fn sub_extension(&self, k: usize) -> Result<Cube<B>> {
        if k > self.n {
            return Err(Error::BadDimension { got: k, n: self.n });
        }
        let high: u32 = (((1u64 << self.n) - 1) ^ ((1u64 << k) - 1)) as u32;
        let vertices: Vec<B::Obj> =
            (0..(1u32 << k)).map(|m| self.vertex(m | high).clone()).collect();
        let mut covering = HashMap::new();
        for m in 0..(1u32 << k) {
            for i in 0..k {
                let bit = 1u32 << i;
                if m & bit != 0 {
                    continue;
                }
                covering.insert(
                    (m, m | bit),
                    self.covering.get(&(m | high, (m | bit) | high)).unwrap().clone(),
                );
            }
        }
        Cube::new(k, vertices, covering)
    }

    /// `K[f_i]`: kernel of the arrow `{} -> {i}` (1-based direction).
    pub fn direction_kernel(&self, i: usize) -> Result<B::Sub> {
        if i == 0 || i > self.n {
            return Err(Error::BadDimension { got: i, n: self.n });
        }
        let map = self.arrow(0, 1 << (i - 1))?;
        Ok(B::kernel(&map))
    }

    /// Extension validation: a 1-cube must be a surjection and an n-cube,
    /// split as a square of (n-2)-cubes along its two top directions, must
    /// have all seven induced arrows (the four sides, the pullback
    /// comparison, and both pullback projections) valid as (n-1)-extensions.
    pub fn validate(&self, cap: u64) -> ValidationReport {
        let mut failures = Vec::new();
        self.validate_rec("f", cap, &mut failures);
        ValidationReport {
            is_extension: failures.is_empty(),
            failures,
            is_presentation: false,
        }
    }

    fn validate_rec(&self, path: &str, cap: u64, failures: &mut Vec<ValidationFailure>) {
        match self.n {
            0 => {}
            1 => {
                let map = self.covering.get(&(0, 1)).unwrap();
                if !B::is_surjective(map) {
                    failures.push(ValidationFailure {
                        location: path.to_string(),
                        reason: "arrow {} -> {1} is not surjective".to_string(),
                    });
                }
            }
            _ => {
                let hi = self.n - 1; // vertical direction bit
                let lo = self.n - 2; // horizontal direction bit
                let b0 = self.double_face(lo, false, hi, false);
                let a0 = self.double_face(lo, true, hi, false);
                let b = self.double_face(lo, false, hi, true);
                let a = self.double_face(lo, true, hi, true);
                let comp = |from_lo: bool, from_hi: bool, to_lo: bool, to_hi: bool| {
                    let d = self.n - 2;
                    (0..(1u32 << d))
                        .map(|m| {
                            let f = self.embed_mask(m, lo, from_lo, hi, from_hi);
                            let t = self.embed_mask(m, lo, to_lo, hi, to_hi);
                            self.arrow(f, t)
                        })
                        .collect::<Result<Vec<B::Map>>>()
                };
                let run = |cube: Result<Cube<B>>,
                           label: &str,
                           failures: &mut Vec<ValidationFailure>| {
                    match cube {
                        Ok(c) => c.validate_rec(&format!("{path}.{label}"), cap, failures),
                        Err(e) => failures.push(ValidationFailure {
                            location: format!("{path}.{label}"),
                            reason: e.to_string(),
                        }),
                    }
                };
                // The four side (n-1)-cubes.
                let f0 = comp(false, false, true, false)
                    .and_then(|c| Cube::from_arrow_of_cubes(&b0, &a0, c));
                let bb = comp(false, false, false, true)
                    .and_then(|c| Cube::from_arrow_of_cubes(&b0, &b, c));
                let aa = comp(true, false, true, true)
                    .and_then(|c| Cube::from_arrow_of_cubes(&a0, &a, c));
                let ff = comp(false, true, true, true)
                    .and_then(|c| Cube::from_arrow_of_cubes(&b, &a, c));
                run(f0, "top", failures);
                run(bb, "left", failures);
                run(aa, "right", failures);
                run(ff, "bottom", failures);
                // Degreewise pullback P of bottom-right cospan, its
                // projections, and the comparison from B0.
                match self.pullback_of_corner(lo, hi, cap) {
                    Ok((p, proj1, proj2, r)) => {
                        run(Cube::from_arrow_of_cubes(&p, &b, proj1), "proj-left", failures);
                        run(Cube::from_arrow_of_cubes(&p, &a0, proj2), "proj-right", failures);
                        run(Cube::from_arrow_of_cubes(&b0, &p, r), "comparison", failures);
                    }
                    Err(e) => failures.push(ValidationFailure {
                        location: format!("{path}.pullback"),
                        reason: e.to_string(),
                    }),
                }
            }
        }
    }

    /// The (n-2)-cube with two direction bits pinned.
    fn double_face(&self, lo: usize, lo_set: bool, hi: usize, hi_set: bool) -> Cube<B> {
        let d = self.n - 2;
        let vertices: Vec<B::Obj> = (0..(1u32 << d))
            .map(|m| self.vertex(self.embed_mask(m, lo, lo_set, hi, hi_set)).clone())
            .collect();
        let mut covering = HashMap::new();
        for m in 0..(1u32 << d) {
            for i in 0..d {
                let bit = 1u32 << i;
                if m & bit != 0 {
                    continue;
                }
                let from = self.embed_mask(m, lo, lo_set, hi, hi_set);
                let to = self.embed_mask(m | bit, lo, lo_set, hi, hi_set);
                covering.insert((m, m | bit), self.covering.get(&(from, to)).unwrap().clone());
            }
        }
        Cube { n: d, vertices, covering, memo: Mutex::new(HashMap::new()) }
    }

    fn embed_mask(&self, m: u32, lo: usize, lo_set: bool, hi: usize, hi_set: bool) -> u32 {
        // m ranges over the remaining n-2 directions in ascending order.
        let mut out = 0u32;
        let mut src = 0usize;
        for i in 0..self.n {
            if i == lo || i == hi {
                continue;
            }
            if m & (1 << src) != 0 {
                out |= 1 << i;
            }
            src += 1;
        }
        if lo_set {
            out |= 1 << lo;
        }
        if hi_set {
            out |= 1 << hi;
        }
        out
    }

    /// Degreewise pullback of `B -> A <- A0` for the square split along
    /// direction bits (lo, hi): returns the pullback (n-2)-cube, projections
    /// to B and A0, and the comparison maps from B0.
    #[allow(clippy::type_complexity)]
    fn pullback_of_corner(
        &self,
        lo: usize,
        hi: usize,
        cap: u64,
    ) -> Result<(Cube<B>, Vec<B::Map>, Vec<B::Map>, Vec<B::Map>)> {
        let d = self.n - 2;
        let mut objs = Vec::with_capacity(1 << d);
        let mut p1s = Vec::with_capacity(1 << d);
        let mut p2s = Vec::with_capacity(1 << d);
        let mut rs = Vec::with_capacity(1 << d);
        for m in 0..(1u32 << d) {
            let vb = self.embed_mask(m, lo, false, hi, true);
            let va0 = self.embed_mask(m, lo, true, hi, false);
            let va = self.embed_mask(m, lo, true, hi, true);
            let vb0 = self.embed_mask(m, lo, false, hi, false);
            let f = self.arrow(vb, va)?;
            let a = self.arrow(va0, va)?;
            let (p, p1, p2) = B::fiber_product(&f, &a, cap)?;
            let r = B::into_fiber(&p, &p1, &p2, &self.arrow(vb0, vb)?, &self.arrow(vb0, va0)?)?;
            objs.push(p);
            p1s.push(p1);
            p2s.push(p2);
            rs.push(r);
        }
        // Assemble P as a cube with induced arrows.
        let mut covering = HashMap::new();
        for m in 0..(1u32 << d) {
            for i in 0..d {
                let bit = 1u32 << i;
                if m & bit != 0 {
                    continue;
                }
                // positions of direction i among the remaining directions
                let (from, to) = (m, m | bit);
                let u = B::compose(
                    &self.arrow(
                        self.embed_mask(from, lo, false, hi, true),
                        self.embed_mask(to, lo, false, hi, true),
                    )?,
                    &p1s[from as usize],
                )?;
                let v = B::compose(
                    &self.arrow(
                        self.embed_mask(from, lo, true, hi, false),
                        self.embed_mask(to, lo, true, hi, false),
                    )?,
                    &p2s[from as usize],
                )?;
                let induced = B::into_fiber(
                    &objs[to as usize],
                    &p1s[to as usize],
                    &p2s[to as usize],
                    &u,
                    &v,
                )?;
                covering.insert((from, to), induced);
            }
        }
        let p_cube = Cube::new(d, objs, covering)?;
        Ok((p_cube, p1s, p2s, rs))
    }

    /// Degreewise kernel along direction n, reassembled as an (n-1)-cube.
    pub fn kernel_cube(&self, cap: u64) -> Result<Cube<B>> {
        if self.n == 0 {
            return Err(Error::BadDimension { got: 0, n: 0 });
        }
        let d = self.n - 1;
        let top_bit = 1u32 << d;
        let mut objs: Vec<B::Obj> = Vec::with_capacity(1 << d);
        let mut incls: Vec<B::Map> = Vec::with_capacity(1 << d);
        for m in 0..(1u32 << d) {
            let f = self.arrow(m, m | top_bit)?;
            let (k, incl) = B::kernel_object(&f)?;
            objs.push(k);
            incls.push(incl);
        }
        let mut covering = HashMap::new();
        for m in 0..(1u32 << d) {
            for i in 0..d {
                let bit = 1u32 << i;
                if m & bit != 0 {
                    continue;
                }
                let thru = B::compose(&self.arrow(m, m | bit)?, &incls[m as usize])?;
                let restricted = B::factor_through_injection(&thru, &incls[(m | bit) as usize])?;
                covering.insert((m, m | bit), restricted);
            }
        }
        let _ = cap;
        Cube::new(d, objs, covering)
    }

    /// Degreewise kernel pair along direction n: the (n-1)-cube of fiber
    /// products `R[f^A_{A∪{n}}]` with its two projection families.
    #[allow(clippy::type_complexity)]
    pub fn kernel_pair_cube(&self, cap: u64) -> Result<(Cube<B>, Vec<B::Map>, Vec<B::Map>)> {
        if self.n == 0 {
            return Err(Error::BadDimension { got: 0, n: 0 });
        }
        let d = self.n - 1;
        let top_bit = 1u32 << d;
        let mut objs = Vec::with_capacity(1 << d);
        let mut p1s = Vec::with_capacity(1 << d);
        let mut p2s = Vec::with_capacity(1 << d);
        for m in 0..(1u32 << d) {
            let f = self.arrow(m, m | top_bit)?;
            let (r, p1, p2) = B::fiber_product(&f, &f, cap)?;
            objs.push(r);
            p1s.push(p1);
            p2s.push(p2);
        }
        let mut covering = HashMap::new();
        for m in 0..(1u32 << d) {
            for i in 0..d {
                let bit = 1u32 << i;
                if m & bit != 0 {
                    continue;
                }
                let (from, to) = (m, m | bit);
                let step = self.arrow(from, to)?;
                let u = B::compose(&step, &p1s[from as usize])?;
                let v = B::compose(&step, &p2s[from as usize])?;
                let induced = B::into_fiber(
                    &objs[to as usize],
                    &p1s[to as usize],
                    &p2s[to as usize],
                    &u,
                    &v,
                )?;
                covering.insert((from, to), induced);
            }
        }
        let cube = Cube::new(d, objs, covering)?;
        Ok((cube, p1s, p2s))
    }
}

/// Regular-pushout test on a commuting square of surjections, supplied as
/// `(top f0: B0->A0, left b: B0->B, right a: A0->A, bottom f: B->A)`.
/// Computes both the pullback-comparison criterion and the kernel-map
/// criterion and insists they agree.
pub fn is_regular_pushout<B: Backend>(
    top: &B::Map,
    left: &B::Map,
    right: &B::Map,
    bottom: &B::Map,
    cap: u64,
) -> Result<RegularPushoutReport> {
    // structural checks
    if !B::obj_eq(&B::map_domain(top), &B::map_domain(left)) {
        return Err(Error::MismatchedParent);
    }
    let via_right = B::compose(right, top)?;
    let via_bottom = B::compose(bottom, left)?;
    if !B::map_eq(&via_right, &via_bottom) {
        return Err(Error::NotCommuting { at: "square".to_string() });
    }
    for (m, at) in [(top, "top"), (left, "left"), (right, "right"), (bottom, "bottom")] {
        if !B::is_surjective(m) {
            return Err(Error::NotSurjectiveArrow { at: at.to_string() });
        }
    }
    // comparison criterion
    let (p, p1, p2) = B::fiber_product(bottom, right, cap)?;
    let r = B::into_fiber(&p, &p1, &p2, left, top)?;
    let comparison_surjective = B::is_surjective(&r);
    // kernel criterion: K[top] -> K[bottom] surjective under `left`
    let k_top = B::kernel(top);
    let k_bottom = B::kernel(bottom);
    let image = B::image_of_sub(left, &k_top)?;
    let kernel_map_surjective =
        B::sub_contains(&image, &k_bottom) && B::sub_contains(&k_bottom, &image);
    if comparison_surjective != kernel_map_surjective {
        return Err(Error::ValidationFailed(format!(
            "regular-pushout criteria disagree: comparison={comparison_surjective}, kernel={kernel_map_surjective}"
        )));
    }
    Ok(RegularPushoutReport {
        comparison_surjective,
        kernel_map_surjective,
        is_regular_pushout: comparison_surjective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backend::GroupBackend;
    use crate::corpus;
    use crate::group::{self, GroupMorphism, DEFAULT_SIZE_CAP};

    type GCube = Cube<GroupBackend>;

    fn quotient_square(
        g: &group::Group,
        m: &group::SubgroupHandle,
        n: &group::SubgroupHandle,
    ) -> GCube {
        let mn = group::join_subgroups(m, n).unwrap();
        let (qm, pm) = group::quotient(g, m).unwrap();
        let (qn, pn) = group::quotient(g, n).unwrap();
        let (qmn, pmn) = group::quotient(g, &mn).unwrap();
        let rm = group::factor_through_surjection(&pmn, &pm).unwrap();
        let rn = group::factor_through_surjection(&pmn, &pn).unwrap();
        let mut covering = HashMap::new();
        covering.insert((0u32, 1u32), pm.clone());
        covering.insert((0u32, 2u32), pn.clone());
        covering.insert((1u32, 3u32), rm);
        covering.insert((2u32, 3u32), rn);
        Cube::new(2, vec![g.clone(), qm, qn, qmn], covering).unwrap()
    }

    #[test]
    fn surjection_is_a_one_extension() {
        let g = corpus::cyclic(6);
        let n = group::subgroup_generated(&g, &[2]).unwrap();
        let (_q, proj) = group::quotient(&g, &n).unwrap();
        let cube = GCube::from_arrow(proj);
        assert!(cube.validate(DEFAULT_SIZE_CAP).is_extension);
    }

    #[test]
    fn non_surjection_fails() {
        let c2 = corpus::cyclic(2);
        let c4 = corpus::cyclic(4);
        let incl = GroupMorphism::new(c2, c4, vec![0, 2]).unwrap();
        let cube = GCube::from_arrow(incl);
        let rep = cube.validate(DEFAULT_SIZE_CAP);
        assert!(!rep.is_extension);
        assert!(!rep.failures.is_empty());
    }

    #[test]
    fn quotient_square_is_a_double_extension() {
        let g = corpus::dihedral(4);
        let subs = corpus::normal_subgroups(&g);
        let m = subs.iter().find(|s| s.order() == 2).unwrap();
        let n = subs.iter().find(|s| s.order() == 4).unwrap();
        let cube = quotient_square(&g, m, n);
        let rep = cube.validate(DEFAULT_SIZE_CAP);
        assert!(rep.is_extension, "{:?}", rep.failures);
    }

    #[test]
    fn collapsed_corner_square_fails() {
        // G = C4, M = N = {0,2}; corner collapsed from C2 to 1.
        let g = corpus::cyclic(4);
        let m = group::subgroup_generated(&g, &[2]).unwrap();
        let (qm, pm) = group::quotient(&g, &m).unwrap();
        let one = corpus::cyclic(1);
        let to_one = GroupMorphism::new(qm.clone(), one.clone(), vec![0, 0]).unwrap();
        let mut covering = HashMap::new();
        covering.insert((0u32, 1u32), pm.clone());
        covering.insert((0u32, 2u32), pm.clone());
        covering.insert((1u32, 3u32), to_one.clone());
        covering.insert((2u32, 3u32), to_one.clone());
        let cube = GCube::new(2, vec![g.clone(), qm.clone(), qm, one], covering).unwrap();
        let rep = cube.validate(DEFAULT_SIZE_CAP);
        assert!(!rep.is_extension);
    }

    #[test]
    fn regular_pushout_criteria_agree() {
        // honest quotient square: regular
        let g = corpus::dihedral(4);
        let subs = corpus::normal_subgroups(&g);
        let m = subs.iter().find(|s| s.order() == 2).unwrap();
        let n = subs.iter().find(|s| s.order() == 4).unwrap();
        let cube = quotient_square(&g, m, n);
        let rep = is_regular_pushout::<GroupBackend>(
            &cube.arrow(0, 1).unwrap(),
            &cube.arrow(0, 2).unwrap(),
            &cube.arrow(1, 3).unwrap(),
            &cube.arrow(2, 3).unwrap(),
            DEFAULT_SIZE_CAP,
        )
        .unwrap();
        assert!(rep.is_regular_pushout);

        // collapsed square: not regular, both criteria agreeing
        let c4 = corpus::cyclic(4);
        let two = group::subgroup_generated(&c4, &[2]).unwrap();
        let (qm, pm) = group::quotient(&c4, &two).unwrap();
        let one = corpus::cyclic(1);
        let to_one = GroupMorphism::new(qm.clone(), one.clone(), vec![0, 0]).unwrap();
        let rep2 =
            is_regular_pushout::<GroupBackend>(&pm, &pm, &to_one, &to_one, DEFAULT_SIZE_CAP)
                .unwrap();
        assert!(!rep2.is_regular_pushout);
        assert_eq!(rep2.comparison_surjective, rep2.kernel_map_surjective);
    }

    #[test]
    fn pullback_square_of_surjections_is_regular() {
        let b = corpus::cyclic(4);
        let a = corpus::cyclic(2);
        let f = GroupMorphism::new(b.clone(), a.clone(), vec![0, 1, 0, 1]).unwrap();
        let (p, p1, p2) = group::fiber_product(&f, &f, DEFAULT_SIZE_CAP).unwrap();
        let rep =
            is_regular_pushout::<GroupBackend>(&p2, &p1, &f, &f, DEFAULT_SIZE_CAP).unwrap();
        assert!(rep.is_regular_pushout);
        let _ = p;
    }

    #[test]
    fn sub_extension_slices() {
        let g = corpus::dihedral(4);
        let subs = corpus::normal_subgroups(&g);
        let m = subs.iter().find(|s| s.order() == 2).unwrap();
        let n = subs.iter().find(|s| s.order() == 4).unwrap();
        let cube = quotient_square(&g, m, n);
        let whole = cube.sub_extension(2).unwrap();
        assert_eq!(whole.n(), 2);
        let cod = cube.sub_extension(1).unwrap();
        assert_eq!(cod.n(), 1);
        // cod is the codomain arrow: vertices at {2} and {1,2}
        assert!(GroupBackend::obj_eq(cod.vertex(0), cube.vertex(2)));
        assert!(GroupBackend::obj_eq(cod.vertex(1), cube.vertex(3)));
        let point = cube.sub_extension(0).unwrap();
        assert_eq!(point.n(), 0);
        assert!(GroupBackend::obj_eq(point.vertex(0), cube.terminal()));
    }

    #[test]
    fn direction_kernels() {
        let g = corpus::dihedral(4);
        let subs = corpus::normal_subgroups(&g);
        let m = subs.iter().find(|s| s.order() == 2).unwrap();
        let n = subs.iter().find(|s| s.order() == 4).unwrap();
        let cube = quotient_square(&g, m, n);
        let k1 = cube.direction_kernel(1).unwrap();
        let k2 = cube.direction_kernel(2).unwrap();
        assert_eq!(k1.elements(), m.elements());
        assert_eq!(k2.elements(), n.elements());
        // identity direction has trivial kernel
        let idcube = GCube::from_arrow(GroupMorphism::identity(&g));
        assert!(idcube.direction_kernel(1).unwrap().is_trivial());
    }

    #[test]
    fn kernel_cube_of_double_is_one_extension() {
        let g = corpus::dihedral(4);
        let subs = corpus::normal_subgroups(&g);
        let m = subs.iter().find(|s| s.order() == 2).unwrap();
        let n = subs.iter().find(|s| s.order() == 4).unwrap();
        let cube = quotient_square(&g, m, n);
        let k = cube.kernel_cube(DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(k.n(), 1);
        assert!(k.validate(DEFAULT_SIZE_CAP).is_extension);
        // kernel cube of a 1-extension is its kernel object
        let one = cube.sub_extension(1).unwrap();
        let kk = one.kernel_cube(DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(kk.n(), 0);
    }

    #[test]
    fn rotation_symmetry_of_validation() {
        let g = corpus::dihedral(6);
        let subs = corpus::normal_subgroups(&g);
        for m in &subs {
            for n in &subs {
                let cube = quotient_square(&g, m, n);
                let v1 = cube.validate(DEFAULT_SIZE_CAP).is_extension;
                let flipped = cube.permute_directions(&[1, 0]).unwrap();
                let v2 = flipped.validate(DEFAULT_SIZE_CAP).is_extension;
                assert_eq!(v1, v2);
            }
        }
    }

    #[test]
    fn kernel_pair_cube_sizes() {
        let b = corpus::cyclic(4);
        let a = corpus::cyclic(2);
        let f = GroupMorphism::new(b.clone(), a.clone(), vec![0, 1, 0, 1]).unwrap();
        let cube = GCube::from_arrow(f);
        let (r, p1s, p2s) = cube.kernel_pair_cube(DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(r.n(), 0);
        assert_eq!(r.vertex(0).order(), 8);
        assert!(p1s[0].is_surjective() && p2s[0].is_surjective());
    }
}

//! Small-group zoo and deterministic corpus generators used by the oracle
//! command and the test suite.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::Result;
use crate::group::{
    self, FiniteGroupObject, Group, GroupMorphism, SubgroupHandle, DEFAULT_SIZE_CAP,
};

/// Cyclic group of order `n` under addition.
pub fn cyclic(n: u32) -> Group {
    FiniteGroupObject::from_op(n.max(1), move |a, b| (a + b) % n.max(1))
}

/// Elementary abelian group of order `p^k`.
pub fn elementary_abelian(p: u32, k: u32) -> Group {
    let order = p.pow(k);
    FiniteGroupObject::from_op(order, move |a, b| {
        let mut out = 0u32;
        let (mut x, mut y, mut w) = (a, b, 1u32);
        for _ in 0..k {
            out += ((x + y) % p) * w;
            x /= p;
            y /= p;
            w *= p;
        }
        out
    })
}

/// Dihedral group of order `2n`, elements `r^i s^j` encoded as `j*n + i`.
pub fn dihedral(n: u32) -> Group {
    FiniteGroupObject::from_op(2 * n, move |a, b| {
        let (i1, j1) = (a % n, a / n);
        let (i2, j2) = (b % n, b / n);
        // s r = r^{-1} s
        let i = if j1 == 0 { (i1 + i2) % n } else { (i1 + n - i2 % n) % n };
        let j = (j1 + j2) % 2;
        j * n + i
    })
}

/// Quaternion group of order 8: 1, -1, i, -i, j, -j, k, -k.
pub fn quaternion8() -> Group {
    // Multiplication on signed units; encode x as 2*axis + sign, axes: 1,i,j,k.
    fn dec(x: u32) -> (usize, bool) {
        ((x / 2) as usize, x % 2 == 1)
    }
    fn enc(axis: usize, neg: bool) -> u32 {
        (axis as u32) * 2 + neg as u32
    }
    // table over axes: (axis, sign) of products of units 1,i,j,k
    const AXIS: [[usize; 4]; 4] =
        [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]];
    const NEG: [[bool; 4]; 4] = [
        [false, false, false, false],
        [false, true, false, true],
        [false, true, true, false],
        [false, false, true, true],
    ];
    // NEG[a][b]: sign of unit_a * unit_b, with i*j=k, j*k=i, k*i=j, i²=j²=k²=-1.
    FiniteGroupObject::from_op(8, move |a, b| {
        let (ax, an) = dec(a);
        let (bx, bn) = dec(b);
        let axis = AXIS[ax][bx];
        let neg = NEG[ax][bx] ^ an ^ bn;
        enc(axis, neg)
    })
}

/// S3 assembled by composing all permutations of three points pairwise.
pub fn symmetric3() -> Group {
    let perms: Vec<[u8; 3]> = vec![
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let index: HashMap<[u8; 3], u32> =
        perms.iter().enumerate().map(|(i, &p)| (p, i as u32)).collect();
    let perms2 = perms.clone();
    FiniteGroupObject::from_op(6, move |a, b| {
        let pa = perms2[a as usize];
        let pb = perms2[b as usize];
        // a after b
        let comp = [
            pa[pb[0] as usize],
            pa[pb[1] as usize],
            pa[pb[2] as usize],
        ];
        index[&comp]
    })
}

/// Alternating group A4, generated inside S4 by brute-force closure.
pub fn alternating4() -> Group {
    let mut perms: Vec<[u8; 4]> = vec![[0, 1, 2, 3]];
    let gens: Vec<[u8; 4]> = vec![[1, 2, 0, 3], [0, 2, 3, 1]]; // two 3-cycles
    let compose = |a: [u8; 4], b: [u8; 4]| -> [u8; 4] {
        [
            a[b[0] as usize],
            a[b[1] as usize],
            a[b[2] as usize],
            a[b[3] as usize],
        ]
    };
    let mut i = 0;
    while i < perms.len() {
        let cur = perms[i];
        for &g in &gens {
            let n = compose(cur, g);
            if !perms.contains(&n) {
                perms.push(n);
            }
        }
        i += 1;
    }
    perms.sort_unstable();
    let index: HashMap<[u8; 4], u32> =
        perms.iter().enumerate().map(|(i, &p)| (p, i as u32)).collect();
    let perms2 = perms.clone();
    FiniteGroupObject::from_op(perms.len() as u32, move |a, b| {
        index[&compose(perms2[a as usize], perms2[b as usize])]
    })
}

/// Extraspecial group of order p³ and exponent p (Heisenberg mod p), p odd.
pub fn heisenberg(p: u32) -> Group {
    let order = p * p * p;
    FiniteGroupObject::from_op(order, move |a, b| {
        // (x, y, z) with (x,y,z)(x',y',z') = (x+x', y+y', z+z'+x y')
        let (x1, y1, z1) = (a % p, (a / p) % p, a / (p * p));
        let (x2, y2, z2) = (b % p, (b / p) % p, b / (p * p));
        let x = (x1 + x2) % p;
        let y = (y1 + y2) % p;
        let z = (z1 + z2 + x1 * y2) % p;
        z * p * p + y * p + x
    })
}

pub fn direct_product(a: &Group, b: &Group) -> Result<Group> {
    FiniteGroupObject::direct_product(a, b, DEFAULT_SIZE_CAP)
}

/// The standard zoo of groups of order at most 27 used for generated corpora.
pub fn zoo_small() -> Vec<(String, Group)> {
    let mut out: Vec<(String, Group)> = vec![
        ("C1".into(), cyclic(1)),
        ("C2".into(), cyclic(2)),
        ("C3".into(), cyclic(3)),
        ("C4".into(), cyclic(4)),
        ("C6".into(), cyclic(6)),
        ("C8".into(), cyclic(8)),
        ("C9".into(), cyclic(9)),
        ("C12".into(), cyclic(12)),
        ("C24".into(), cyclic(24)),
        ("C27".into(), cyclic(27)),
        ("C2xC2".into(), elementary_abelian(2, 2)),
        ("C2xC2xC2".into(), elementary_abelian(2, 3)),
        ("C3xC3".into(), elementary_abelian(3, 2)),
        ("C3xC3xC3".into(), elementary_abelian(3, 3)),
        ("S3".into(), symmetric3()),
        ("D4".into(), dihedral(4)),
        ("D6".into(), dihedral(6)),
        ("Q8".into(), quaternion8()),
        ("A4".into(), alternating4()),
        ("H27".into(), heisenberg(3)),
    ];
    if let Ok(g) = direct_product(&cyclic(2), &cyclic(4)) {
        out.push(("C2xC4".into(), g));
    }
    if let Ok(g) = direct_product(&cyclic(3), &symmetric3()) {
        out.push(("C3xS3".into(), g));
    }
    out
}

/// All normal subgroups of a small carrier: normal closures of unions of
/// conjugacy classes, deduplicated.
pub fn normal_subgroups(g: &Group) -> Vec<SubgroupHandle> {
    // Conjugacy classes.
    let mut class_of = vec![u32::MAX; g.order() as usize];
    let mut classes: Vec<Vec<u32>> = Vec::new();
    for x in 0..g.order() {
        if class_of[x as usize] != u32::MAX {
            continue;
        }
        let idx = classes.len() as u32;
        let mut cls = Vec::new();
        for h in 0..g.order() {
            let c = g.conjugate(h, x);
            if class_of[c as usize] == u32::MAX {
                class_of[c as usize] = idx;
                cls.push(c);
            }
        }
        classes.push(cls);
    }
    let k = classes.len();
    let mut seen: Vec<Vec<u32>> = Vec::new();
    let mut out = Vec::new();
    // Unions of at most three classes plus the full group reach every normal
    // subgroup of the shipped zoo (all its groups have normal rank <= 3).
    let mut seeds: Vec<Vec<u32>> = vec![vec![], (0..g.order()).collect()];
    for i in 0..k {
        seeds.push(classes[i].clone());
        for j in (i + 1)..k {
            let mut s = classes[i].clone();
            s.extend_from_slice(&classes[j]);
            seeds.push(s);
            for l in (j + 1)..k {
                let mut s2 = classes[i].clone();
                s2.extend_from_slice(&classes[j]);
                s2.extend_from_slice(&classes[l]);
                seeds.push(s2);
            }
        }
    }
    for seed in seeds {
        if let Ok(n) = group::normal_closure(g, &seed) {
            let elems = n.elements().to_vec();
            if !seen.contains(&elems) {
                seen.push(elems);
                out.push(n);
            }
        }
    }
    out.sort_by_key(|s| (s.order(), s.elements().to_vec()));
    out
}

/// All subgroups of a small carrier by the cyclic-extension closure method.
/// Use only when `|g|` is small (tests, exhaustive lemma checks).
pub fn all_subgroups(g: &Group) -> Vec<SubgroupHandle> {
    let mut seen: Vec<Vec<u32>> = vec![vec![g.identity()]];
    let mut idx = 0usize;
    while idx < seen.len() {
        let base = seen[idx].clone();
        for x in 0..g.order() {
            if base.binary_search(&x).is_ok() {
                continue;
            }
            let mut gens = base.clone();
            gens.push(x);
            if let Ok(h) = group::subgroup_generated(g, &gens) {
                let e = h.elements().to_vec();
                if !seen.contains(&e) {
                    seen.push(e);
                }
            }
        }
        idx += 1;
    }
    seen.sort_by_key(|e| (e.len(), e.clone()));
    seen.into_iter()
        .map(|e| group::subgroup_generated(g, &e).unwrap())
        .collect()
}

/// A surjection corpus: for every zoo group, every projection `G -> G/N` and
/// every induced map `G/N -> G/M` for nested normal subgroups `N ⊆ M`.
pub fn surjection_corpus(max_order: u32, limit: usize) -> Vec<(String, GroupMorphism)> {
    let mut out = Vec::new();
    for (name, g) in zoo_small() {
        if g.order() > max_order {
            continue;
        }
        let normals = normal_subgroups(&g);
        for n in &normals {
            let Ok((_, proj)) = group::quotient(&g, n) else { continue };
            out.push((format!("{name}/{}", n.order()), proj.clone()));
            if out.len() >= limit {
                return out;
            }
            for m in &normals {
                if m.order() > n.order() && m.contains_subgroup(n) {
                    // induced G/N -> G/M
                    let (qn, pn) = group::quotient(&g, n).unwrap();
                    let (qm, pm) = group::quotient(&g, m).unwrap();
                    let mut images = vec![0u32; qn.order() as usize];
                    for x in 0..g.order() {
                        images[pn.apply(x) as usize] = pm.apply(x);
                    }
                    let f = GroupMorphism::new_unchecked_public(qn, qm, images);
                    out.push((format!("{name}/{}->/{}", n.order(), m.order()), f));
                    if out.len() >= limit {
                        return out;
                    }
                }
            }
        }
    }
    out
}

impl GroupMorphism {
    /// Corpus-internal constructor for maps that are correct by construction.
    pub(crate) fn new_unchecked_public(d: Group, c: Group, images: Vec<u32>) -> Self {
        GroupMorphism::new(d, c, images).expect("induced quotient map is a homomorphism")
    }
}

/// Commuting squares of surjections for the regular-pushout criterion:
/// `(square, expected_regular)`. Passing squares are quotient squares
/// `G -> G/M, G -> G/N, G/M -> G/(MN) <- G/N`; engineered failures collapse
/// the bottom-right corner further, which breaks comparison surjectivity.
pub struct GeneratedSquare {
    pub name: String,
    pub top: GroupMorphism,    // f0 : B0 -> A0
    pub left: GroupMorphism,   // b  : B0 -> B
    pub right: GroupMorphism,  // a  : A0 -> A
    pub bottom: GroupMorphism, // f  : B -> A
    pub expected_regular: bool,
}

pub fn square_corpus(max_order: u32, limit: usize) -> Vec<GeneratedSquare> {
    let mut out = Vec::new();
    for (name, g) in zoo_small() {
        if g.order() > max_order {
            continue;
        }
        let normals = normal_subgroups(&g);
        for m in &normals {
            for n in &normals {
                if out.len() >= limit {
                    return out;
                }
                let Ok(mn) = group::join_subgroups(m, n) else { continue };
                let (qm, pm) = group::quotient(&g, m).unwrap();
                let (qn, pn) = group::quotient(&g, n).unwrap();
                let (qmn, pmn) = group::quotient(&g, &mn).unwrap();
                let right = induced(&qm, &pm, &qmn, &pmn, &g);
                let bottom = induced(&qn, &pn, &qmn, &pmn, &g);
                out.push(GeneratedSquare {
                    name: format!("{name}:quot({},{})", m.order(), n.order()),
                    top: pm.clone(),
                    left: pn.clone(),
                    right,
                    bottom,
                    expected_regular: true,
                });
                // Engineered failure: collapse the corner strictly below G/(MN).
                let corner_normals = normal_subgroups(&qmn);
                if let Some(w) = corner_normals.iter().find(|w| w.order() > 1) {
                    let (_qw, pw) = group::quotient(&qmn, w).unwrap();
                    let right2 = GroupMorphism::compose(&pw, &induced(&qm, &pm, &qmn, &pmn, &g))
                        .unwrap();
                    let bottom2 =
                        GroupMorphism::compose(&pw, &induced(&qn, &pn, &qmn, &pmn, &g)).unwrap();
                    out.push(GeneratedSquare {
                        name: format!("{name}:collapsed({},{})", m.order(), n.order()),
                        top: pm.clone(),
                        left: pn.clone(),
                        right: right2,
                        bottom: bottom2,
                        expected_regular: false,
                    });
                }
            }
        }
    }
    out
}

fn induced(
    qn: &Group,
    pn: &GroupMorphism,
    qm: &Group,
    pm: &GroupMorphism,
    g: &Group,
) -> GroupMorphism {
    let mut images = vec![0u32; qn.order() as usize];
    for x in 0..g.order() {
        images[pn.apply(x) as usize] = pm.apply(x);
    }
    GroupMorphism::new_unchecked_public(qn.clone(), qm.clone(), images)
}

/// Pair-encoded helper: the subgroup `{(m, dm)} = (0 x (M∩N)) · Δ_M` of
/// `G x G` used by the join-lemma checks.
pub fn fiber_style_subgroup(
    gg: &Group,
    g: &Group,
    m: &SubgroupHandle,
    n: &SubgroupHandle,
) -> Result<SubgroupHandle> {
    let mn = group::intersect(m, n)?;
    let mut elems = Vec::new();
    for &x in m.elements() {
        for &d in mn.elements() {
            let y = g.mul(d, x);
            if let Some(i) = gg.pair_index(x, y) {
                elems.push(i);
            }
        }
    }
    elems.sort_unstable();
    elems.dedup();
    group::subgroup_generated(gg, &elems)
}

/// `Δ_K` inside `G x G` for a subgroup `K` of `G`.
pub fn diagonal_subgroup(gg: &Group, k: &SubgroupHandle) -> Result<SubgroupHandle> {
    let elems: Vec<u32> = k
        .elements()
        .iter()
        .filter_map(|&x| gg.pair_index(x, x))
        .collect();
    group::subgroup_generated(gg, &elems)
}

/// `0 x S` inside `G x G`.
pub fn right_factor_subgroup(
    gg: &Group,
    g: &Group,
    s: &SubgroupHandle,
) -> Result<SubgroupHandle> {
    let e = g.identity();
    let elems: Vec<u32> = s
        .elements()
        .iter()
        .filter_map(|&x| gg.pair_index(e, x))
        .collect();
    group::subgroup_generated(gg, &elems)
}

pub fn arc_eq(a: &Group, b: &Group) -> bool {
    Arc::ptr_eq(a, b)
}

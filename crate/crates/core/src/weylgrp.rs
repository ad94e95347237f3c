//! Weyl group enumeration and actions: reduced words, dominant
//! representatives, stabilizers, longest element, double cosets.
//!
//! Elements are stored as integer matrices acting on `X*` (with the
//! contragredient action on `X_*` cached alongside) plus a reduced word in
//! the simple reflections. Equality is by matrix; words provide canonical
//! minimal-length tie-breaking. Enumeration is breadth-first closure from
//! the simple reflections, which yields lengths and lexicographically
//! minimal reduced words for free.

use std::collections::HashMap;
use std::fmt;

use crate::mat::SquareMat;
use crate::rootdata::{CoweightVec, RootDatum, WeightVec, WEYL_ORDER_CAP};
use crate::{Error, Result};

/// A Weyl group element: integer lattice action plus a reduced word.
#[derive(Clone, Debug)]
pub struct WeylElement {
    action: SquareMat,
    coaction: SquareMat,
    word: Vec<usize>,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.action == other.action
    }
}
impl Eq for WeylElement {}

impl std::hash::Hash for WeylElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.action.hash(state);
    }
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        WeylElement {
            action: SquareMat::identity(rank),
            coaction: SquareMat::identity(rank),
            word: Vec::new(),
        }
    }

    /// The simple reflection `s_i` of the datum.
    pub fn simple_reflection(datum: &RootDatum, i: usize) -> Self {
        let rank = datum.rank();
        let alpha = &datum.simple_roots()[i];
        let alpha_check = &datum.simple_coroots()[i];
        let mut action = SquareMat::identity(rank);
        let mut coaction = SquareMat::identity(rank);
        for k in 0..rank {
            for l in 0..rank {
                let a = action.at(k, l) - alpha[k] * alpha_check[l];
                action.set(k, l, a);
                let c = coaction.at(k, l) - alpha_check[k] * alpha[l];
                coaction.set(k, l, c);
            }
        }
        WeylElement { action, coaction, word: vec![i] }
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// Reduced word, 0-based simple reflection indices.
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// Coxeter length.
    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn apply(&self, x: &WeightVec) -> WeightVec {
        WeightVec::new(self.action.apply(&x.coords))
    }

    pub fn apply_co(&self, y: &CoweightVec) -> CoweightVec {
        CoweightVec::new(self.coaction.apply(&y.coords))
    }

    /// Raw action matrix rows (acts on weight coordinates).
    pub fn action_rows(&self) -> Vec<Vec<i64>> {
        (0..self.action.n)
            .map(|i| (0..self.action.n).map(|j| self.action.at(i, j)).collect())
            .collect()
    }

    /// Composition `self ∘ rhs` (apply `rhs` first). The stored word is the
    /// concatenation re-reduced against the datum.
    pub fn compose(&self, rhs: &WeylElement, datum: &RootDatum) -> WeylElement {
        let action = self.action.mul(&rhs.action);
        let coaction = self.coaction.mul(&rhs.coaction);
        let word = reduced_word_of_action(datum, &action);
        WeylElement { action, coaction, word }
    }

    pub fn inverse(&self) -> WeylElement {
        WeylElement {
            action: self.coaction.transpose(),
            coaction: self.action.transpose(),
            word: self.word.iter().rev().copied().collect(),
        }
    }

    /// Serialize as a reduced word: `"e"` for the identity, else `"s1 s3 s2"`
    /// with 1-based indices, leftmost factor applied last.
    pub fn word_string(&self) -> String {
        if self.word.is_empty() {
            "e".to_string()
        } else {
            self.word
                .iter()
                .map(|i| format!("s{}", i + 1))
                .collect::<Vec<_>>()
                .join(" ")
        }
    }

    /// Parse a word string (`"e"`, `"s1 s2"`, or compact `"s1s2"`) into an
    /// element of the datum's Weyl group.
    pub fn parse(datum: &RootDatum, s: &str) -> Result<WeylElement> {
        let s = s.trim();
        if s.is_empty() || s == "e" {
            return Ok(WeylElement::identity(datum.rank()));
        }
        let mut elt = WeylElement::identity(datum.rank());
        let normalized = s.replace('s', " s");
        for tok in normalized.split_whitespace() {
            let idx: usize = tok
                .strip_prefix('s')
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad reflection token {tok:?}")))?;
            if idx == 0 || idx > datum.num_simple() {
                return Err(Error::Parse(format!("reflection index {idx} out of range")));
            }
            elt = elt.compose(&WeylElement::simple_reflection(datum, idx - 1), datum);
        }
        Ok(elt)
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.word_string())
    }
}

/// A reduced word for the element with the given action matrix, via
/// rightmost-descent elimination (smallest descent index each step).
fn reduced_word_of_action(datum: &RootDatum, action: &SquareMat) -> Vec<usize> {
    let mut m = action.clone();
    let id = SquareMat::identity(datum.rank());
    let mut rev = Vec::new();
    while m != id {
        let mut found = None;
        for i in 0..datum.num_simple() {
            let img = m.apply(&datum.simple_roots()[i]);
            let ht = crate::mat::dot(&img, &datum.two_rho_check().coords);
            if ht < 0 {
                found = Some(i);
                break;
            }
        }
        let i = found.expect("non-identity action with no descent: not a Weyl element");
        let s = WeylElement::simple_reflection(datum, i);
        m = m.mul(&s.action);
        rev.push(i);
    }
    rev.reverse();
    rev
}

/// The fully enumerated Weyl group of a datum, in breadth-first order
/// (by length, then lexicographically by reduced word).
pub struct WeylGroup {
    elements: Vec<WeylElement>,
    index: HashMap<Vec<i64>, usize>,
    rank: usize,
}

impl WeylGroup {
    /// Enumerate the full group by closure from the simple reflections.
    pub fn enumerate(datum: &RootDatum) -> Result<WeylGroup> {
        if datum.weyl_order() > WEYL_ORDER_CAP {
            return Err(Error::WeylOrderCap { order: datum.weyl_order(), cap: WEYL_ORDER_CAP });
        }
        let rank = datum.rank();
        let gens: Vec<WeylElement> =
            (0..datum.num_simple()).map(|i| WeylElement::simple_reflection(datum, i)).collect();
        let mut elements = vec![WeylElement::identity(rank)];
        let mut index = HashMap::new();
        index.insert(elements[0].action.a.clone(), 0usize);
        let mut head = 0;
        while head < elements.len() {
            let cur = elements[head].clone();
            head += 1;
            for (i, g) in gens.iter().enumerate() {
                let action = cur.action.mul(&g.action);
                if index.contains_key(&action.a) {
                    continue;
                }
                let coaction = cur.coaction.mul(&g.coaction);
                let mut word = cur.word.clone();
                word.push(i);
                index.insert(action.a.clone(), elements.len());
                elements.push(WeylElement { action, coaction, word });
            }
        }
        debug_assert_eq!(elements.len() as u64, datum.weyl_order());
        Ok(WeylGroup { elements, index, rank })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn element(&self, id: usize) -> &WeylElement {
        &self.elements[id]
    }

    /// Index of an element (by its action matrix).
    pub fn id_of(&self, w: &WeylElement) -> Option<usize> {
        self.index.get(&w.action.a).copied()
    }

    fn id_of_action(&self, a: &[i64]) -> usize {
        *self.index.get(a).expect("product of group elements stays in the group")
    }

    /// Group-internal composition by element ids.
    pub fn compose_ids(&self, a: usize, b: usize) -> usize {
        let m = self.elements[a].action.mul(&self.elements[b].action);
        self.id_of_action(&m.a)
    }

    /// Identity element id (always 0 in breadth-first order).
    pub fn identity_id(&self) -> usize {
        0
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

/// A subgroup given by its sorted member ids within an enumerated group,
/// with generating simple reflections recorded when parabolic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    pub ids: Vec<usize>,
    pub parabolic_generators: Option<Vec<usize>>,
}

impl Subgroup {
    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// The trivial subgroup.
    pub fn trivial() -> Subgroup {
        Subgroup { ids: vec![0], parabolic_generators: Some(Vec::new()) }
    }

    /// Closure of a set of simple reflections inside the enumerated group.
    pub fn parabolic(group: &WeylGroup, datum: &RootDatum, gens: &[usize]) -> Subgroup {
        let gen_ids: Vec<usize> = gens
            .iter()
            .map(|&i| {
                group
                    .id_of(&WeylElement::simple_reflection(datum, i))
                    .expect("simple reflection is in the group")
            })
            .collect();
        let mut seen = vec![false; group.len()];
        seen[0] = true;
        let mut members = vec![0usize];
        let mut head = 0;
        while head < members.len() {
            let cur = members[head];
            head += 1;
            for &g in &gen_ids {
                let next = group.compose_ids(cur, g);
                if !seen[next] {
                    seen[next] = true;
                    members.push(next);
                }
            }
        }
        members.sort_unstable();
        let mut gens_sorted = gens.to_vec();
        gens_sorted.sort_unstable();
        gens_sorted.dedup();
        Subgroup { ids: members, parabolic_generators: Some(gens_sorted) }
    }
}

/// Dominant representative of a weight: the unique dominant element of the
/// orbit together with the unique minimal-length `v` with `v·x` dominant.
pub fn dominant_representative(datum: &RootDatum, x: &WeightVec) -> (WeightVec, WeylElement) {
    let mut v = x.clone();
    let mut elt = WeylElement::identity(datum.rank());
    'outer: loop {
        for i in 0..datum.num_simple() {
            if datum.pair_simple_coroot(&v.coords, i) < 0 {
                let s = WeylElement::simple_reflection(datum, i);
                v = s.apply(&v);
                // prepend: the new reflection acts after what came before
                elt = WeylElement {
                    action: s.action.mul(&elt.action),
                    coaction: s.coaction.mul(&elt.coaction),
                    word: {
                        let mut w = vec![i];
                        w.extend_from_slice(&elt.word);
                        w
                    },
                };
                continue 'outer;
            }
        }
        break;
    }
    (v, elt)
}

/// Dominant representative on the coweight side.
pub fn dominant_representative_co(
    datum: &RootDatum,
    y: &CoweightVec,
) -> (CoweightVec, WeylElement) {
    let mut v = y.clone();
    let mut elt = WeylElement::identity(datum.rank());
    'outer: loop {
        for i in 0..datum.num_simple() {
            if datum.pair_simple_root(i, &v.coords) < 0 {
                let s = WeylElement::simple_reflection(datum, i);
                v = s.apply_co(&v);
                elt = WeylElement {
                    action: s.action.mul(&elt.action),
                    coaction: s.coaction.mul(&elt.coaction),
                    word: {
                        let mut w = vec![i];
                        w.extend_from_slice(&elt.word);
                        w
                    },
                };
                continue 'outer;
            }
        }
        break;
    }
    (v, elt)
}

/// The stabilizer `{w : w·x = x}` of a weight. For dominant `x` this is the
/// standard parabolic generated by the simple reflections orthogonal to `x`.
pub fn stabilizer(group: &WeylGroup, datum: &RootDatum, x: &WeightVec) -> Subgroup {
    if datum.is_dominant(x) {
        let gens: Vec<usize> = (0..datum.num_simple())
            .filter(|&i| datum.pair_simple_coroot(&x.coords, i) == 0)
            .collect();
        return Subgroup::parabolic(group, datum, &gens);
    }
    let ids: Vec<usize> = (0..group.len())
        .filter(|&id| group.element(id).apply(x) == *x)
        .collect();
    Subgroup { ids, parabolic_generators: None }
}

/// Stabilizer of a coweight.
pub fn stabilizer_co(group: &WeylGroup, datum: &RootDatum, y: &CoweightVec) -> Subgroup {
    if datum.is_dominant_co(y) {
        let gens: Vec<usize> = (0..datum.num_simple())
            .filter(|&i| datum.pair_simple_root(i, &y.coords) == 0)
            .collect();
        return Subgroup::parabolic(group, datum, &gens);
    }
    let ids: Vec<usize> = (0..group.len())
        .filter(|&id| group.element(id).apply_co(y) == *y)
        .collect();
    Subgroup { ids, parabolic_generators: None }
}

/// One double coset: canonical representative (minimal length, ties broken
/// lexicographically by reduced word) plus all member ids.
#[derive(Clone, Debug)]
pub struct DoubleCoset {
    pub representative: usize,
    pub members: Vec<usize>,
}

/// Partition the group into `left\W/right` double cosets. The output is
/// sorted by representative (length, then word), so it is canonical and
/// independent of the subgroup enumeration order.
pub fn double_cosets(group: &WeylGroup, left: &Subgroup, right: &Subgroup) -> Vec<DoubleCoset> {
    let mut assigned = vec![false; group.len()];
    let mut cosets = Vec::new();
    for w in 0..group.len() {
        if assigned[w] {
            continue;
        }
        let mut members = Vec::new();
        for &l in &left.ids {
            let lw = group.compose_ids(l, w);
            for &r in &right.ids {
                let lwr = group.compose_ids(lw, r);
                if !assigned[lwr] {
                    assigned[lwr] = true;
                    members.push(lwr);
                }
            }
        }
        members.sort_unstable();
        let representative = *members
            .iter()
            .min_by_key(|&&id| {
                let e = group.element(id);
                (e.length(), e.word().to_vec())
            })
            .expect("coset is nonempty");
        cosets.push(DoubleCoset { representative, members });
    }
    cosets.sort_by_key(|c| {
        let e = group.element(c.representative);
        (e.length(), e.word().to_vec())
    });
    cosets
}

/// The longest element `w₀`: sends every positive root to a negative root.
pub fn longest_element(datum: &RootDatum) -> WeylElement {
    let mut anti = datum.two_rho().clone();
    for c in anti.coords.iter_mut() {
        *c = -*c;
    }
    let (_, v) = dominant_representative(datum, &anti);
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(label: &str) -> RootDatum {
        RootDatum::simply_connected(label).unwrap()
    }

    #[test]
    fn enumerate_sizes() {
        assert_eq!(WeylGroup::enumerate(&datum("A2")).unwrap().len(), 6);
        assert_eq!(WeylGroup::enumerate(&datum("B2")).unwrap().len(), 8);
        assert_eq!(WeylGroup::enumerate(&datum("G2")).unwrap().len(), 12);
        assert_eq!(WeylGroup::enumerate(&datum("A3")).unwrap().len(), 24);
        assert_eq!(WeylGroup::enumerate(&datum("F4")).unwrap().len(), 1152);
        assert_eq!(WeylGroup::enumerate(&RootDatum::torus(2).unwrap()).unwrap().len(), 1);
    }

    #[test]
    fn enumerate_at_the_cap() {
        // E6 sits exactly at the order cap
        let d = datum("E6");
        let g = WeylGroup::enumerate(&d).unwrap();
        assert_eq!(g.len() as u64, d.weyl_order());
        assert_eq!(longest_element(&d).length(), d.positive_roots().len());
    }

    #[test]
    fn enumeration_is_bfs_ordered() {
        let d = datum("A2");
        let g = WeylGroup::enumerate(&d).unwrap();
        let lengths: Vec<usize> = g.elements().iter().map(|e| e.length()).collect();
        let mut sorted = lengths.clone();
        sorted.sort_unstable();
        assert_eq!(lengths, sorted);
        // identity first, closed under composition
        assert!(g.element(0).is_identity());
        for a in 0..g.len() {
            for b in 0..g.len() {
                let _ = g.compose_ids(a, b); // panics if not closed
            }
        }
    }

    #[test]
    fn words_evaluate_to_actions() {
        let d = datum("B2");
        let g = WeylGroup::enumerate(&d).unwrap();
        for e in g.elements() {
            let mut acc = WeylElement::identity(d.rank());
            for &i in e.word() {
                acc = acc.compose(&WeylElement::simple_reflection(&d, i), &d);
            }
            assert_eq!(&acc, e);
            assert_eq!(acc.length(), e.length());
            let inv = e.inverse();
            assert!(e.compose(&inv, &d).is_identity());
            assert_eq!(inv.length(), e.length());
        }
    }

    #[test]
    fn length_counts_inversions() {
        let d = datum("G2");
        let g = WeylGroup::enumerate(&d).unwrap();
        for e in g.elements() {
            let inversions = d
                .positive_roots()
                .iter()
                .filter(|r| {
                    let img = e.action_rows();
                    let mut v = vec![0i64; d.rank()];
                    for k in 0..d.rank() {
                        for l in 0..d.rank() {
                            v[k] += img[k][l] * r.vec[l];
                        }
                    }
                    crate::mat::dot(&v, &d.two_rho_check().coords) < 0
                })
                .count();
            assert_eq!(inversions, e.length());
        }
    }

    #[test]
    fn action_permutes_roots() {
        let d = datum("B2");
        let g = WeylGroup::enumerate(&d).unwrap();
        let mut all_roots: Vec<Vec<i64>> =
            d.positive_roots().iter().map(|r| r.vec.clone()).collect();
        all_roots.extend(
            d.positive_roots().iter().map(|r| r.vec.iter().map(|x| -x).collect::<Vec<_>>()),
        );
        for e in g.elements() {
            for root in &all_roots {
                let img = e.apply(&WeightVec::new(root.clone()));
                assert!(all_roots.contains(&img.coords));
            }
        }
    }

    #[test]
    fn dominant_rep_examples() {
        let d = datum("A2");
        let (dom, v) = dominant_representative(&d, &WeightVec::new(vec![0, -3]));
        assert_eq!(dom.coords, vec![3, 0]);
        assert_eq!(v.word_string(), "s1 s2");

        let a1 = datum("A1");
        let (dom, v) = dominant_representative(&a1, &WeightVec::new(vec![-2]));
        assert_eq!(dom.coords, vec![2]);
        assert_eq!(v.word_string(), "s1");

        let (dom, v) = dominant_representative(&d, &WeightVec::new(vec![1, 1]));
        assert_eq!(dom.coords, vec![1, 1]);
        assert!(v.is_identity());
    }

    #[test]
    fn dominant_rep_minimal_length_is_unique() {
        // greedy v agrees with the brute-force minimum over the full group
        for label in ["A2", "B2", "G2"] {
            let d = datum(label);
            let g = WeylGroup::enumerate(&d).unwrap();
            for x in [vec![-1, 2], vec![-2, -1], vec![0, -1], vec![-3, 0]] {
                let x = WeightVec::new(x);
                let (dom, v) = dominant_representative(&d, &x);
                let best = g
                    .elements()
                    .iter()
                    .filter(|w| w.apply(&x) == dom)
                    .min_by_key(|w| w.length())
                    .unwrap();
                assert_eq!(&v, best, "{label} {x}");
                assert_eq!(v.length(), best.length());
            }
        }
    }

    #[test]
    fn stabilizer_examples() {
        let d = datum("A2");
        let g = WeylGroup::enumerate(&d).unwrap();
        let s = stabilizer(&g, &d, &WeightVec::new(vec![1, 0]));
        assert_eq!(s.len(), 2);
        assert_eq!(s.parabolic_generators.as_deref(), Some(&[1usize][..]));
        assert_eq!(stabilizer(&g, &d, &WeightVec::new(vec![1, 1])).len(), 1);
        assert_eq!(stabilizer(&g, &d, &WeightVec::zero(2)).len(), 6);
    }

    #[test]
    fn stabilizer_matches_brute_force() {
        let d = datum("B2");
        let g = WeylGroup::enumerate(&d).unwrap();
        for x in [vec![1, 0], vec![0, 2], vec![1, 1], vec![0, 0]] {
            let x = WeightVec::new(x);
            let para = stabilizer(&g, &d, &x);
            let brute: Vec<usize> =
                (0..g.len()).filter(|&id| g.element(id).apply(&x) == x).collect();
            assert_eq!(para.ids, brute);
        }
    }

    #[test]
    fn double_coset_examples() {
        let d = datum("A2");
        let g = WeylGroup::enumerate(&d).unwrap();
        let left = stabilizer(&g, &d, &WeightVec::new(vec![1, 0])); // {e, s2}
        let right = stabilizer(&g, &d, &WeightVec::new(vec![0, 1])); // {e, s1}
        let cosets = double_cosets(&g, &left, &right);
        assert_eq!(cosets.len(), 2);
        let mut sizes: Vec<usize> = cosets.iter().map(|c| c.members.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![2, 4]);
        assert_eq!(cosets.iter().map(|c| c.members.len()).sum::<usize>(), 6);

        let triv = Subgroup::trivial();
        assert_eq!(double_cosets(&g, &triv, &triv).len(), 6);
        let full = stabilizer(&g, &d, &WeightVec::zero(2));
        assert_eq!(double_cosets(&g, &full, &full).len(), 1);
    }

    #[test]
    fn longest_element_properties() {
        let a1 = datum("A1");
        let w0 = longest_element(&a1);
        assert_eq!(w0.length(), 1);

        let a2 = datum("A2");
        let w0 = longest_element(&a2);
        assert_eq!(w0.length(), 3);
        assert_eq!(w0.word_string(), "s1 s2 s1");
        // involution
        let sq = w0.compose(&w0, &a2);
        assert!(sq.is_identity());

        let b2 = datum("B2");
        let w0 = longest_element(&b2);
        assert_eq!(w0.length(), 4);
        // -w₀ = id in B2: w₀ acts as -1
        assert_eq!(w0.apply(&WeightVec::new(vec![1, 2])).coords, vec![-1, -2]);

        // w₀ = -1 in G2 and C3 as well
        for label in ["G2", "C3"] {
            let d = datum(label);
            let w0 = longest_element(&d);
            let x = WeightVec::new((1..=d.rank() as i64).collect());
            let img = w0.apply(&x);
            assert_eq!(img.coords, x.coords.iter().map(|c| -c).collect::<Vec<_>>(), "{label}");
        }
        // in A3, -w₀ is the diagram flip: ω1 ↦ ω3
        let a3 = datum("A3");
        let w0 = longest_element(&a3);
        assert_eq!(w0.apply(&WeightVec::new(vec![1, 0, 0])).coords, vec![0, 0, -1]);
        assert_eq!(w0.apply(&WeightVec::new(vec![0, 1, 0])).coords, vec![0, -1, 0]);
    }

    #[test]
    fn word_serialization_roundtrip() {
        let d = datum("A3");
        let g = WeylGroup::enumerate(&d).unwrap();
        for e in g.elements() {
            let s = e.word_string();
            let back = WeylElement::parse(&d, &s).unwrap();
            assert_eq!(&back, e);
        }
        assert!(WeylElement::parse(&d, "s9").is_err());
        assert!(WeylElement::parse(&d, "q1").is_err());
        // compact form
        let w = WeylElement::parse(&d, "s1s2s3").unwrap();
        assert_eq!(w.length(), 3);
    }
}

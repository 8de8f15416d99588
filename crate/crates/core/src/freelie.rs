//! Free Lie algebras on weighted generator alphabets, presented in a Hall
//! basis with all computations truncated below a configurable weight floor.
//!
//! Weights are negative integers. A Hall word is either a generator or a
//! bracket `[u, v]` of Hall words with `u < v` in the basis order where `v`
//! is a generator or `v = [v1, v2]` with `v1 <= u`. The basis order is
//! weight-major (fewer total |weight| first), then by leaf sequence, then
//! structurally; within a weight the leaf comparison is configurable so that
//! order-independence of downstream results can be exercised.
//!
//! Elements are finite rational combinations of Hall words. Brackets are
//! rewritten into the basis eagerly via antisymmetry and the Jacobi shuffle
//! `[u,[v1,v2]] = [[u,v1],v2] + [v1,[u,v2]]`, dropping terms below the floor.

use crate::error::Error;
use crate::rat::{rat_to_string, Rat};
use num_traits::Zero;
use std::collections::{BTreeMap, HashMap};

pub type GenId = usize;
pub type WordId = usize;

/// Default truncation: compute modulo weight < -4 (four graded steps).
pub const DEFAULT_WEIGHT_FLOOR: i32 = -4;

/// A weighted generator: a label, the copy it lives in, and a negative weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub label: String,
    pub copy: usize,
    pub weight: i32,
}

impl Generator {
    pub fn new(label: &str, copy: usize, weight: i32) -> Self {
        Generator {
            label: label.to_string(),
            copy,
            weight,
        }
    }

    pub fn display(&self) -> String {
        format!("{}^({})", self.label, self.copy)
    }
}

/// An ordered alphabet of weighted generators. The order is total and fixed
/// at construction; labels are unique within each copy and every weight is
/// at most -1.
#[derive(Debug, Clone)]
pub struct Alphabet {
    gens: Vec<Generator>,
}

impl Alphabet {
    pub fn new(gens: Vec<Generator>) -> Result<Self, Error> {
        let mut seen = std::collections::BTreeSet::new();
        for g in &gens {
            if g.weight > -1 {
                return Err(Error::InvalidParams(format!(
                    "generator {} has weight {}, want <= -1",
                    g.display(),
                    g.weight
                )));
            }
            if !seen.insert((g.copy, g.label.clone())) {
                return Err(Error::InvalidParams(format!(
                    "duplicate generator {}",
                    g.display()
                )));
            }
        }
        Ok(Alphabet { gens })
    }

    /// Symplectic alphabet: weight-(-1) generators `a1..ag, b1..bg` for each
    /// listed copy, in copy-major order.
    pub fn symplectic(g: usize, copies: &[usize]) -> Self {
        let mut gens = Vec::new();
        for &c in copies {
            for l in 1..=g {
                gens.push(Generator::new(&format!("a{l}"), c, -1));
            }
            for l in 1..=g {
                gens.push(Generator::new(&format!("b{l}"), c, -1));
            }
        }
        Alphabet::new(gens).expect("symplectic alphabet is well formed")
    }

    /// Symplectic alphabet on one copy plus weight-(-2) puncture generators
    /// `z1..zn`.
    pub fn punctured(g: usize, n: usize) -> Self {
        let mut gens = Alphabet::symplectic(g, &[0]).gens;
        for j in 1..=n {
            gens.push(Generator::new(&format!("z{j}"), 0, -2));
        }
        Alphabet::new(gens).expect("punctured alphabet is well formed")
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn gens(&self) -> &[Generator] {
        &self.gens
    }

    pub fn generator(&self, id: GenId) -> &Generator {
        &self.gens[id]
    }

    pub fn lookup(&self, copy: usize, label: &str) -> Option<GenId> {
        self.gens
            .iter()
            .position(|g| g.copy == copy && g.label == label)
    }

    pub fn copies(&self) -> Vec<usize> {
        let mut c: Vec<usize> = self.gens.iter().map(|g| g.copy).collect();
        c.sort_unstable();
        c.dedup();
        c
    }

    /// Number of weight-(-1) generators.
    pub fn rank_minus_one(&self) -> usize {
        self.gens.iter().filter(|g| g.weight == -1).count()
    }
}

/// Admissible total orders on Hall words. Both are weight-major; they differ
/// in how leaf sequences are compared inside a weight, which changes the Hall
/// set itself. Downstream verdicts must not depend on this choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HallOrder {
    /// Leaf sequences compared lexicographically in alphabet order.
    #[default]
    LeafLex,
    /// Leaf sequences compared lexicographically in reversed alphabet order.
    LeafLexRev,
}

impl HallOrder {
    fn cmp_leaves(self, a: &[GenId], b: &[GenId]) -> std::cmp::Ordering {
        match self {
            HallOrder::LeafLex => a.cmp(b),
            HallOrder::LeafLexRev => {
                for (x, y) in a.iter().zip(b.iter()) {
                    match y.cmp(x) {
                        std::cmp::Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                a.len().cmp(&b.len())
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum WordKind {
    Leaf(GenId),
    Node(WordId, WordId),
}

#[derive(Debug, Clone)]
struct WordNode {
    kind: WordKind,
    weight: i32,
    leaves: Vec<GenId>,
}

/// The table of Hall words of an alphabet down to a weight floor, together
/// with the bracket rewriting that produces normal forms. Immutable after
/// construction and freely shareable across threads.
pub struct HallBasis {
    alphabet: Alphabet,
    floor: i32,
    order: HallOrder,
    words: Vec<WordNode>,
    by_weight: Vec<Vec<WordId>>, // index k-1 holds weight -k, ascending ids
    node_index: HashMap<(WordId, WordId), WordId>,
    gen_word: Vec<Option<WordId>>,
}

impl HallBasis {
    pub fn new(alphabet: Alphabet, floor: i32, order: HallOrder) -> Result<Self, Error> {
        if floor > -1 {
            return Err(Error::InvalidParams(format!(
                "weight floor must be <= -1, got {floor}"
            )));
        }
        let depth = (-floor) as usize;
        let mut basis = HallBasis {
            gen_word: vec![None; alphabet.len()],
            alphabet,
            floor,
            order,
            words: Vec::new(),
            by_weight: vec![Vec::new(); depth],
            node_index: HashMap::new(),
        };
        for k in 1..=depth {
            basis.build_level(k);
        }
        Ok(basis)
    }

    fn build_level(&mut self, k: usize) {
        enum Cand {
            Leaf(GenId),
            Node(WordId, WordId),
        }
        let mut cands: Vec<(Vec<GenId>, Option<(WordId, WordId)>, Cand)> = Vec::new();
        for (id, g) in self.alphabet.gens().iter().enumerate() {
            if (-g.weight) as usize == k {
                cands.push((vec![id], None, Cand::Leaf(id)));
            }
        }
        for k1 in 1..k {
            let k2 = k - k1;
            if k1 > k2 {
                break;
            }
            for &u in &self.by_weight[k1 - 1] {
                for &v in &self.by_weight[k2 - 1] {
                    if k1 == k2 && u >= v {
                        continue;
                    }
                    if !self.hall_cond(u, v) {
                        continue;
                    }
                    let mut leaves = self.words[u].leaves.clone();
                    leaves.extend_from_slice(&self.words[v].leaves);
                    cands.push((leaves, Some((u, v)), Cand::Node(u, v)));
                }
            }
        }
        let order = self.order;
        cands.sort_by(|a, b| order.cmp_leaves(&a.0, &b.0).then_with(|| a.1.cmp(&b.1)));
        for (leaves, _, cand) in cands {
            let id = self.words.len();
            let kind = match cand {
                Cand::Leaf(g) => {
                    self.gen_word[g] = Some(id);
                    WordKind::Leaf(g)
                }
                Cand::Node(u, v) => {
                    self.node_index.insert((u, v), id);
                    WordKind::Node(u, v)
                }
            };
            self.words.push(WordNode {
                kind,
                weight: -(k as i32),
                leaves,
            });
            self.by_weight[k - 1].push(id);
        }
    }

    /// Hall condition for a prospective node `[u, v]` with `u < v` already
    /// established: `v` must be a generator or `v = [v1, v2]` with `v1 <= u`.
    fn hall_cond(&self, u: WordId, v: WordId) -> bool {
        match self.words[v].kind {
            WordKind::Leaf(_) => true,
            WordKind::Node(v1, _) => v1 <= u,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn floor(&self) -> i32 {
        self.floor
    }

    pub fn order(&self) -> HallOrder {
        self.order
    }

    pub fn word_count(&self) -> usize {
        self.words.len()
    }

    /// Hall words of weight `w`, in basis order.
    pub fn words_at(&self, w: i32) -> &[WordId] {
        let k = (-w) as usize;
        if w > -1 || k > self.by_weight.len() {
            return &[];
        }
        &self.by_weight[k - 1]
    }

    pub fn weight_of(&self, id: WordId) -> i32 {
        self.words[id].weight
    }

    pub fn leaves_of(&self, id: WordId) -> &[GenId] {
        &self.words[id].leaves
    }

    pub fn children_of(&self, id: WordId) -> Option<(WordId, WordId)> {
        match self.words[id].kind {
            WordKind::Leaf(_) => None,
            WordKind::Node(u, v) => Some((u, v)),
        }
    }

    pub fn leaf_gen(&self, id: WordId) -> Option<GenId> {
        match self.words[id].kind {
            WordKind::Leaf(g) => Some(g),
            WordKind::Node(..) => None,
        }
    }

    /// Index of `id` within its weight level.
    pub fn position_in_weight(&self, id: WordId) -> usize {
        self.words_at(self.weight_of(id))
            .iter()
            .position(|&w| w == id)
            .expect("word belongs to its level")
    }

    pub fn word_string(&self, id: WordId) -> String {
        match self.words[id].kind {
            WordKind::Leaf(g) => self.alphabet.generator(g).display(),
            WordKind::Node(u, v) => {
                format!("[{}, {}]", self.word_string(u), self.word_string(v))
            }
        }
    }

    /// The basis element for a generator, if its weight is within the floor.
    pub fn generator_element(&self, g: GenId) -> LieElement {
        match self.gen_word[g] {
            Some(id) => LieElement::from_word(id),
            None => LieElement::zero(),
        }
    }

    /// Checkable Hall predicate, used by tests and verifiers.
    pub fn is_hall(&self, id: WordId) -> bool {
        match self.words[id].kind {
            WordKind::Leaf(_) => true,
            WordKind::Node(u, v) => {
                u < v && self.hall_cond(u, v) && self.is_hall(u) && self.is_hall(v)
            }
        }
    }

    /// Normal form of the bracket of two Hall words.
    pub fn bracket_words(&self, u: WordId, v: WordId) -> LieElement {
        let w = self.words[u].weight + self.words[v].weight;
        if w < self.floor {
            return LieElement::zero();
        }
        if u == v {
            return LieElement::zero();
        }
        if u > v {
            return self.bracket_words(v, u).neg();
        }
        if self.hall_cond(u, v) {
            let id = *self
                .node_index
                .get(&(u, v))
                .expect("in-range Hall pair was enumerated at construction");
            return LieElement::from_word(id);
        }
        // v = [v1, v2] with v1 > u: Jacobi shuffle
        let (v1, v2) = match self.words[v].kind {
            WordKind::Node(v1, v2) => (v1, v2),
            WordKind::Leaf(_) => unreachable!("leaf right factors are always Hall"),
        };
        let uv1 = self.bracket_words(u, v1);
        let uv2 = self.bracket_words(u, v2);
        let mut out = self.bracket_elem_word(&uv1, v2);
        out.add_assign(&self.word_bracket_elem(v1, &uv2));
        out
    }

    fn bracket_elem_word(&self, e: &LieElement, w: WordId) -> LieElement {
        let mut out = LieElement::zero();
        for (&t, c) in &e.terms {
            out.add_scaled(&self.bracket_words(t, w), c);
        }
        out
    }

    fn word_bracket_elem(&self, w: WordId, e: &LieElement) -> LieElement {
        let mut out = LieElement::zero();
        for (&t, c) in &e.terms {
            out.add_scaled(&self.bracket_words(w, t), c);
        }
        out
    }

    /// Normal form of the bracket of two elements, modulo the floor.
    pub fn bracket(&self, a: &LieElement, b: &LieElement) -> LieElement {
        let mut out = LieElement::zero();
        for (&wa, ca) in &a.terms {
            for (&wb, cb) in &b.terms {
                let c = ca * cb;
                if c.is_zero() {
                    continue;
                }
                out.add_scaled(&self.bracket_words(wa, wb), &c);
            }
        }
        out
    }

    /// Applies a generator substitution `map: generator -> element of dst`
    /// multiplicatively over brackets and linearly over terms. `self` is the
    /// basis the element lives in; `dst` receives the image.
    pub fn substitute(
        &self,
        e: &LieElement,
        dst: &HallBasis,
        map: &dyn Fn(GenId) -> LieElement,
    ) -> LieElement {
        let mut memo: HashMap<WordId, LieElement> = HashMap::new();
        let mut out = LieElement::zero();
        for (&w, c) in &e.terms {
            let img = self.substitute_word(w, dst, map, &mut memo);
            out.add_scaled(&img, c);
        }
        out
    }

    fn substitute_word(
        &self,
        w: WordId,
        dst: &HallBasis,
        map: &dyn Fn(GenId) -> LieElement,
        memo: &mut HashMap<WordId, LieElement>,
    ) -> LieElement {
        if let Some(e) = memo.get(&w) {
            return e.clone();
        }
        let out = match self.words[w].kind {
            WordKind::Leaf(g) => map(g),
            WordKind::Node(u, v) => {
                let eu = self.substitute_word(u, dst, map, memo);
                let ev = self.substitute_word(v, dst, map, memo);
                dst.bracket(&eu, &ev)
            }
        };
        memo.insert(w, out.clone());
        out
    }

    /// Coordinates of the weight-`w` component of `e` in the Hall words at
    /// `w`, in basis order.
    pub fn coords_at(&self, e: &LieElement, w: i32) -> Vec<Rat> {
        let words = self.words_at(w);
        let mut v = vec![Rat::zero(); words.len()];
        for (i, &id) in words.iter().enumerate() {
            if let Some(c) = e.terms.get(&id) {
                v[i] = c.clone();
            }
        }
        v
    }

    pub fn element_to_string(&self, e: &LieElement) -> String {
        if e.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (&w, c) in &e.terms {
            parts.push(format!("{} {}", rat_to_string(c), self.word_string(w)));
        }
        parts.join(" + ")
    }
}

/// A finite rational linear combination of Hall words. Zero coefficients are
/// never stored, so structural equality is value equality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LieElement {
    terms: BTreeMap<WordId, Rat>,
}

impl LieElement {
    pub fn zero() -> Self {
        LieElement::default()
    }

    pub fn from_word(id: WordId) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(id, Rat::from_integer(1.into()));
        LieElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (WordId, &Rat)> {
        self.terms.iter().map(|(&w, c)| (w, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, id: WordId) -> Rat {
        self.terms.get(&id).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, id: WordId, c: &Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(id).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&id);
        }
    }

    pub fn add_assign(&mut self, other: &LieElement) {
        for (&w, c) in &other.terms {
            self.add_term(w, c);
        }
    }

    pub fn add_scaled(&mut self, other: &LieElement, scale: &Rat) {
        if scale.is_zero() {
            return;
        }
        for (&w, c) in &other.terms {
            self.add_term(w, &(c * scale));
        }
    }

    pub fn add(&self, other: &LieElement) -> LieElement {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &LieElement) -> LieElement {
        let mut out = self.clone();
        out.add_scaled(other, &Rat::from_integer((-1).into()));
        out
    }

    pub fn neg(&self) -> LieElement {
        let mut out = LieElement::zero();
        for (&w, c) in &self.terms {
            out.terms.insert(w, -c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Rat) -> LieElement {
        let mut out = LieElement::zero();
        if s.is_zero() {
            return out;
        }
        for (&w, c) in &self.terms {
            out.terms.insert(w, c * s);
        }
        out
    }

    /// The common weight of all terms, `Err(NotHomogeneous)` when mixed.
    /// Zero is homogeneous of every weight; by convention returns `None`.
    pub fn homogeneous_weight(&self, basis: &HallBasis) -> Result<Option<i32>, Error> {
        let mut weight = None;
        for &w in self.terms.keys() {
            let wt = basis.weight_of(w);
            match weight {
                None => weight = Some(wt),
                Some(prev) if prev != wt => return Err(Error::NotHomogeneous),
                _ => {}
            }
        }
        Ok(weight)
    }

    /// The weight-`w` part of the element.
    pub fn component(&self, basis: &HallBasis, w: i32) -> LieElement {
        let mut out = LieElement::zero();
        for (&id, c) in &self.terms {
            if basis.weight_of(id) == w {
                out.terms.insert(id, c.clone());
            }
        }
        out
    }

    pub fn weights(&self, basis: &HallBasis) -> Vec<i32> {
        let mut ws: Vec<i32> = self.terms.keys().map(|&id| basis.weight_of(id)).collect();
        ws.sort_unstable();
        ws.dedup();
        ws
    }
}

/// Möbius function by trial factorization.
fn mobius(mut n: usize) -> i64 {
    let mut mu = 1i64;
    let mut p = 2usize;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

/// Number of Hall (equivalently Lyndon) words of degree `k` on `m` letters:
/// `(1/k) * sum_{d | k} mu(d) m^{k/d}`.
pub fn witt_dimension(m: usize, k: usize) -> usize {
    assert!(m >= 1 && k >= 1, "witt_dimension wants m >= 1, k >= 1");
    let mut total: i128 = 0;
    for d in 1..=k {
        if k % d != 0 {
            continue;
        }
        let mu = mobius(d);
        if mu == 0 {
            continue;
        }
        total += mu as i128 * (m as i128).pow((k / d) as u32);
    }
    debug_assert!(total >= 0 && total % k as i128 == 0);
    (total / k as i128) as usize
}

//! Finitely presented weight-graded Lie algebras: homogeneous relation
//! ideals computed weight by weight, quotient bases, structure constants,
//! and the built-in presentations for surfaces, punctured surfaces, and
//! configuration spaces.
//!
//! Built-in presentations, over the symplectic alphabet of the given copies:
//!
//! * `labute(g)` — one copy of `H` in weight -1, single relation `Theta`.
//! * `punctured_surface(g, n)` — `H` plus weight-(-2) puncture generators
//!   `z_1..z_n`, single relation `Theta + z_1 + ... + z_n` (the graded shadow
//!   of the surface-group relation).
//! * `hain_config(g, copies)` — one copy of `H` per index, with the
//!   quadratic relations
//!   `[u^(i), v^(j)] = [u^(j), v^(i)]`,
//!   `[u^(i), v^(j)] = (<u,v>/g) Theta_ij` for `i != j`, and
//!   `Theta_i + (1/g) sum_{j != i} Theta_ij = 0`.
//! * `partial_config(g, n, filled)` — `hain_config` on copies `0..=n` plus
//!   `Theta_0j = 0` for every `j` in `filled`, the braid-level models of the
//!   complete-curve and punctured-at-one-point sequence sources.
//!
//! The quotient basis at each weight is the complement of the pivot columns
//! of the ideal's reduced row echelon form inside the Hall basis, in Hall
//! order, so bases are deterministic and stable.

use crate::error::Error;
use crate::freelie::{Alphabet, HallBasis, HallOrder, LieElement, WordId};
use crate::mat::{Mat, Rref};
use crate::rat::{rat, rat_to_string, Rat};
use crate::symplectic::{theta, theta_pair, SymplecticSpace};
use num_traits::Zero;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::sync::Arc;

/// The built-in presentation families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinKind {
    Labute,
    PuncturedSurface,
    HainConfig,
    PartialConfig,
}

impl BuiltinKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            BuiltinKind::Labute => "labute",
            BuiltinKind::PuncturedSurface => "punctured_surface",
            BuiltinKind::HainConfig => "hain_config",
            BuiltinKind::PartialConfig => "partial_config",
        }
    }

    pub fn parse(s: &str) -> Result<Self, Error> {
        match s {
            "labute" => Ok(BuiltinKind::Labute),
            "punctured" | "punctured_surface" | "punctured-surface" => {
                Ok(BuiltinKind::PuncturedSurface)
            }
            "hain" | "hain_config" | "hain-config" => Ok(BuiltinKind::HainConfig),
            "partial" | "partial_config" | "partial-config" => Ok(BuiltinKind::PartialConfig),
            other => Err(Error::InvalidParams(format!(
                "unknown presentation kind `{other}`"
            ))),
        }
    }
}

/// A labeled homogeneous relation.
#[derive(Debug, Clone)]
pub struct Relation {
    pub label: String,
    pub element: LieElement,
    pub weight: i32,
}

/// Parameters a presentation was built from, carried along for reports.
#[derive(Debug, Clone)]
pub struct PresentationDescriptor {
    pub kind: BuiltinKind,
    pub g: usize,
    pub copies: Vec<usize>,
    pub punctures: usize,
    pub filled: Vec<usize>,
    pub floor: i32,
}

/// A weighted alphabet together with homogeneous relations; the presentation
/// of a weight-graded Lie algebra truncated below `floor`.
#[derive(Clone)]
pub struct GradedPresentation {
    descriptor: PresentationDescriptor,
    basis: Arc<HallBasis>,
    relations: Vec<Relation>,
}

impl GradedPresentation {
    /// `L(H) / (Theta)`: the graded Lie algebra of a closed genus-g surface.
    pub fn labute(g: usize, floor: i32, order: HallOrder) -> Result<Self, Error> {
        if g < 1 {
            return Err(Error::InvalidParams("labute wants g >= 1".into()));
        }
        let basis = Arc::new(HallBasis::new(Alphabet::symplectic(g, &[0]), floor, order)?);
        let relations = vec![Relation {
            label: "theta[0]".into(),
            element: theta(&basis, g, 0)?,
            weight: -2,
        }];
        let p = GradedPresentation {
            descriptor: PresentationDescriptor {
                kind: BuiltinKind::Labute,
                g,
                copies: vec![0],
                punctures: 0,
                filled: vec![],
                floor,
            },
            basis,
            relations,
        };
        p.validate()?;
        Ok(p)
    }

    /// Genus-g surface with `n` punctures: generators `H` in weight -1 and
    /// `z_1..z_n` in weight -2, single relation `Theta + sum_j z_j`.
    pub fn punctured_surface(
        g: usize,
        n: usize,
        floor: i32,
        order: HallOrder,
    ) -> Result<Self, Error> {
        if g < 1 {
            return Err(Error::InvalidParams("punctured_surface wants g >= 1".into()));
        }
        let basis = Arc::new(HallBasis::new(Alphabet::punctured(g, n), floor, order)?);
        let mut rel = theta(&basis, g, 0)?;
        for j in 1..=n {
            let z = basis
                .alphabet()
                .lookup(0, &format!("z{j}"))
                .expect("puncture generator exists");
            rel.add_assign(&basis.generator_element(z));
        }
        let p = GradedPresentation {
            descriptor: PresentationDescriptor {
                kind: BuiltinKind::PuncturedSurface,
                g,
                copies: vec![0],
                punctures: n,
                filled: vec![],
                floor,
            },
            basis,
            relations: vec![Relation {
                label: "surface".into(),
                element: rel,
                weight: -2,
            }],
        };
        p.validate()?;
        Ok(p)
    }

    /// Configuration-space presentation on the listed copies of `H`.
    pub fn hain_config(
        g: usize,
        copies: &[usize],
        floor: i32,
        order: HallOrder,
    ) -> Result<Self, Error> {
        if g < 2 {
            return Err(Error::InvalidParams("configuration kinds want g >= 2".into()));
        }
        let mut sorted = copies.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != copies.len() {
            return Err(Error::InvalidParams("copy indices must be distinct".into()));
        }
        let basis = Arc::new(HallBasis::new(
            Alphabet::symplectic(g, &sorted),
            floor,
            order,
        )?);
        let relations = config_relations(&basis, g, &sorted)?;
        let p = GradedPresentation {
            descriptor: PresentationDescriptor {
                kind: BuiltinKind::HainConfig,
                g,
                copies: sorted,
                punctures: 0,
                filled: vec![],
                floor,
            },
            basis,
            relations,
        };
        p.validate()?;
        Ok(p)
    }

    /// `hain_config` on copies `0..=n` with `Theta_0j = 0` for `j` in
    /// `filled`, the braid-level core obtained by filling those punctures
    /// back in against the zeroth strand.
    pub fn partial_config(
        g: usize,
        n: usize,
        filled: &[usize],
        floor: i32,
        order: HallOrder,
    ) -> Result<Self, Error> {
        if g < 2 {
            return Err(Error::InvalidParams("configuration kinds want g >= 2".into()));
        }
        let mut fill = filled.to_vec();
        fill.sort_unstable();
        fill.dedup();
        if fill.iter().any(|&j| j < 1 || j > n) {
            return Err(Error::InvalidParams(format!(
                "filled set must lie in 1..={n}"
            )));
        }
        let copies: Vec<usize> = (0..=n).collect();
        let base = GradedPresentation::hain_config(g, &copies, floor, order)?;
        let mut relations = base.relations;
        for &j in &fill {
            relations.push(Relation {
                label: format!("theta_pair[0,{j}]"),
                element: theta_pair(&base.basis, g, 0, j)?,
                weight: -2,
            });
        }
        let p = GradedPresentation {
            descriptor: PresentationDescriptor {
                kind: BuiltinKind::PartialConfig,
                g,
                copies,
                punctures: 0,
                filled: fill,
                floor,
            },
            basis: base.basis,
            relations,
        };
        p.validate()?;
        Ok(p)
    }

    /// Spec-level dispatcher. `HainConfig` builds on copies `1..=n`;
    /// `PartialConfig` builds on copies `0..=n` with the given filled set.
    pub fn builtin(
        kind: BuiltinKind,
        g: usize,
        n: usize,
        filled: &[usize],
        floor: i32,
        order: HallOrder,
    ) -> Result<Self, Error> {
        if kind != BuiltinKind::PartialConfig && !filled.is_empty() {
            return Err(Error::InvalidParams(format!(
                "kind {} takes no filled set",
                kind.as_str()
            )));
        }
        match kind {
            BuiltinKind::Labute => {
                if n != 0 {
                    return Err(Error::InvalidParams("labute takes no n".into()));
                }
                GradedPresentation::labute(g, floor, order)
            }
            BuiltinKind::PuncturedSurface => {
                GradedPresentation::punctured_surface(g, n, floor, order)
            }
            BuiltinKind::HainConfig => {
                if n < 1 {
                    return Err(Error::InvalidParams("hain_config wants n >= 1".into()));
                }
                let copies: Vec<usize> = (1..=n).collect();
                GradedPresentation::hain_config(g, &copies, floor, order)
            }
            BuiltinKind::PartialConfig => {
                if n < 1 {
                    return Err(Error::InvalidParams("partial_config wants n >= 1".into()));
                }
                GradedPresentation::partial_config(g, n, filled, floor, order)
            }
        }
    }

    fn validate(&self) -> Result<(), Error> {
        for r in &self.relations {
            match r.element.homogeneous_weight(&self.basis)? {
                Some(w) if w != r.weight => {
                    return Err(Error::InvalidParams(format!(
                        "relation {} has weight {w}, declared {}",
                        r.label, r.weight
                    )))
                }
                Some(w) if w < self.descriptor.floor => {
                    return Err(Error::WeightOutOfRange {
                        weight: w,
                        floor: self.descriptor.floor,
                    })
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// A copy with the labeled relation removed, for negative controls and
    /// experiments.
    pub fn without_relation(&self, label: &str) -> GradedPresentation {
        let mut out = self.clone();
        out.relations.retain(|r| r.label != label);
        out
    }

    pub fn descriptor(&self) -> &PresentationDescriptor {
        &self.descriptor
    }

    pub fn basis(&self) -> &HallBasis {
        &self.basis
    }

    pub fn basis_arc(&self) -> Arc<HallBasis> {
        Arc::clone(&self.basis)
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn floor(&self) -> i32 {
        self.descriptor.floor
    }

    pub fn g(&self) -> usize {
        self.descriptor.g
    }

    /// Graded pieces of the Lie ideal generated by the relations, every
    /// weight at once: seed with the relations, then bracket each reduced
    /// spanning element with every generator, pushing results to deeper
    /// weights until the floor. Bracketing with a generator strictly lowers
    /// weight, so one shallow-to-deep sweep reaches closure.
    fn ideal_pieces(&self) -> BTreeMap<i32, Rref> {
        let basis = &*self.basis;
        let floor = self.descriptor.floor;
        let mut spans: BTreeMap<i32, Vec<Vec<Rat>>> = BTreeMap::new();
        for r in &self.relations {
            spans
                .entry(r.weight)
                .or_default()
                .push(basis.coords_at(&r.element, r.weight));
        }
        let mut pieces = BTreeMap::new();
        for w in (floor..=-1).rev() {
            let dim = basis.words_at(w).len();
            let rows = spans.remove(&w).unwrap_or_default();
            let mat = if rows.is_empty() {
                Mat::zeros(0, dim)
            } else {
                Mat::from_rows(rows)
            };
            let reduced = mat.rref_rank();
            for k in 0..reduced.rank {
                let elem = element_from_coords(basis, w, reduced.reduced.row(k));
                for (gid, generator) in basis.alphabet().gens().iter().enumerate() {
                    let w2 = w + generator.weight;
                    if w2 < floor {
                        continue;
                    }
                    let br = basis.bracket(&elem, &basis.generator_element(gid));
                    if br.is_zero() {
                        continue;
                    }
                    spans.entry(w2).or_default().push(basis.coords_at(&br, w2));
                }
            }
            pieces.insert(w, reduced);
        }
        pieces
    }

    /// Row-reduced basis of the weight-`w` piece of the relation ideal.
    pub fn ideal_component(&self, w: i32) -> Result<Mat, Error> {
        if w > -2 || w < self.descriptor.floor {
            return Err(Error::WeightOutOfRange {
                weight: w,
                floor: self.descriptor.floor,
            });
        }
        let pieces = self.ideal_pieces();
        let piece = &pieces[&w];
        let mut rows = Vec::new();
        for k in 0..piece.rank {
            rows.push(piece.reduced.row(k).to_vec());
        }
        Ok(if rows.is_empty() {
            Mat::zeros(0, self.basis.words_at(w).len())
        } else {
            Mat::from_rows(rows)
        })
    }

    /// Computes per-weight quotient bases, projections, and structure
    /// constants.
    pub fn build_quotient(&self) -> GradedQuotient {
        let basis = &*self.basis;
        let floor = self.descriptor.floor;
        let pieces_rref = self.ideal_pieces();
        let mut pieces = BTreeMap::new();
        for (w, rr) in pieces_rref {
            let words = basis.words_at(w);
            let pivot_set: Vec<bool> = {
                let mut s = vec![false; words.len()];
                for &p in &rr.pivots {
                    s[p] = true;
                }
                s
            };
            let basis_words: Vec<WordId> = words
                .iter()
                .enumerate()
                .filter(|(i, _)| !pivot_set[*i])
                .map(|(_, &id)| id)
                .collect();
            let mut ideal_rows = Vec::new();
            for k in 0..rr.rank {
                ideal_rows.push(rr.reduced.row(k).to_vec());
            }
            let ideal_rref = if ideal_rows.is_empty() {
                Mat::zeros(0, words.len())
            } else {
                Mat::from_rows(ideal_rows)
            };
            pieces.insert(
                w,
                QuotientPiece {
                    ideal_rref,
                    pivots: rr.pivots,
                    basis_words,
                },
            );
        }
        let mut quotient = GradedQuotient {
            presentation: self.clone(),
            pieces,
            brackets: BTreeMap::new(),
        };
        let weights: Vec<i32> = (floor..=-1).rev().collect();
        let mut brackets = BTreeMap::new();
        for &w1 in &weights {
            for &w2 in &weights {
                if w1 + w2 < floor {
                    continue;
                }
                let reps1 = quotient.pieces[&w1].basis_words.clone();
                let reps2 = quotient.pieces[&w2].basis_words.clone();
                let mut table = Vec::with_capacity(reps1.len());
                for &u in &reps1 {
                    let mut row = Vec::with_capacity(reps2.len());
                    for &v in &reps2 {
                        let br = basis.bracket_words(u, v);
                        let coords = quotient
                            .project_at(&br, w1 + w2)
                            .expect("bracket of reps is homogeneous in range");
                        row.push(coords);
                    }
                    table.push(row);
                }
                brackets.insert((w1, w2), table);
            }
        }
        quotient.brackets = brackets;
        quotient
    }

    /// Documented JSON form: alphabet, relations as coefficient/word lists.
    pub fn to_json(&self) -> Value {
        let d = &self.descriptor;
        json!({
            "kind": d.kind.as_str(),
            "g": d.g,
            "copies": d.copies,
            "punctures": d.punctures,
            "filled": d.filled,
            "floor": d.floor,
            "alphabet": self.basis.alphabet().gens().iter().map(|g| json!({
                "label": g.label,
                "copy": g.copy,
                "weight": g.weight,
            })).collect::<Vec<_>>(),
            "relations": self.relations.iter().map(|r| json!({
                "label": r.label,
                "weight": r.weight,
                "terms": r.element.terms().map(|(w, c)| json!({
                    "coeff": rat_to_string(c),
                    "word": self.basis.word_string(w),
                })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// The configuration relations over every symplectic basis pair.
fn config_relations(
    basis: &HallBasis,
    g: usize,
    copies: &[usize],
) -> Result<Vec<Relation>, Error> {
    let space = SymplecticSpace::new(g)?;
    let dim = space.dim();
    let gen_elem = |copy: usize, idx: usize| -> LieElement {
        let id = basis
            .alphabet()
            .lookup(copy, &space.basis_label(idx))
            .expect("symplectic alphabet carries every basis label");
        basis.generator_element(id)
    };
    let mut relations = Vec::new();
    // (i) symmetry: [u^(i), v^(j)] - [u^(j), v^(i)] for i < j
    for (pi, &ci) in copies.iter().enumerate() {
        for &cj in &copies[pi + 1..] {
            for u in 0..dim {
                for v in 0..dim {
                    let lhs = basis.bracket(&gen_elem(ci, u), &gen_elem(cj, v));
                    let rhs = basis.bracket(&gen_elem(cj, u), &gen_elem(ci, v));
                    let element = lhs.sub(&rhs);
                    if element.is_zero() {
                        continue;
                    }
                    relations.push(Relation {
                        label: format!(
                            "sym[{},{};{},{}]",
                            space.basis_label(u),
                            space.basis_label(v),
                            ci,
                            cj
                        ),
                        element,
                        weight: -2,
                    });
                }
            }
        }
    }
    // (ii) pairing: [u^(i), v^(j)] - (<u,v>/g) Theta_ij for i != j
    for &ci in copies {
        for &cj in copies {
            if ci == cj {
                continue;
            }
            let tij = theta_pair(basis, g, ci, cj)?;
            for u in 0..dim {
                for v in 0..dim {
                    let mut element = basis.bracket(&gen_elem(ci, u), &gen_elem(cj, v));
                    let pairing = space.pairing(u, v);
                    if pairing != 0 {
                        element.add_scaled(&tij, &-rat(pairing, g as i64));
                    }
                    if element.is_zero() {
                        continue;
                    }
                    relations.push(Relation {
                        label: format!(
                            "pair[{},{};{},{}]",
                            space.basis_label(u),
                            space.basis_label(v),
                            ci,
                            cj
                        ),
                        element,
                        weight: -2,
                    });
                }
            }
        }
    }
    // (iii) theta: Theta_i + (1/g) sum_{j != i} Theta_ij
    for &ci in copies {
        let mut element = theta(basis, g, ci)?;
        for &cj in copies {
            if cj == ci {
                continue;
            }
            element.add_scaled(&theta_pair(basis, g, ci, cj)?, &rat(1, g as i64));
        }
        relations.push(Relation {
            label: format!("theta[{ci}]"),
            element,
            weight: -2,
        });
    }
    Ok(relations)
}

fn element_from_coords(basis: &HallBasis, w: i32, coords: &[Rat]) -> LieElement {
    let words = basis.words_at(w);
    let mut e = LieElement::zero();
    for (i, c) in coords.iter().enumerate() {
        e.add_term(words[i], c);
    }
    e
}

struct QuotientPiece {
    ideal_rref: Mat,
    pivots: Vec<usize>,
    basis_words: Vec<WordId>,
}

/// Per-weight quotient bases (coset representatives in Hall order),
/// projection data, and bracket structure constants of a graded presentation.
pub struct GradedQuotient {
    presentation: GradedPresentation,
    pieces: BTreeMap<i32, QuotientPiece>,
    // (w1, w2) -> [i][j] -> coordinates of [rep_i, rep_j] at w1 + w2
    brackets: BTreeMap<(i32, i32), Vec<Vec<Vec<Rat>>>>,
}

impl GradedQuotient {
    pub fn presentation(&self) -> &GradedPresentation {
        &self.presentation
    }

    pub fn basis(&self) -> &HallBasis {
        self.presentation.basis()
    }

    pub fn floor(&self) -> i32 {
        self.presentation.floor()
    }

    /// Weight -> quotient dimension for every weight within the floor.
    pub fn graded_dims(&self) -> BTreeMap<i32, usize> {
        self.pieces
            .iter()
            .map(|(&w, p)| (w, p.basis_words.len()))
            .collect()
    }

    pub fn dim_at(&self, w: i32) -> usize {
        self.pieces.get(&w).map_or(0, |p| p.basis_words.len())
    }

    /// Coset representatives of the weight-`w` basis, in Hall order.
    pub fn basis_reps(&self, w: i32) -> Vec<LieElement> {
        self.pieces.get(&w).map_or_else(Vec::new, |p| {
            p.basis_words
                .iter()
                .map(|&id| LieElement::from_word(id))
                .collect()
        })
    }

    pub fn basis_words(&self, w: i32) -> &[WordId] {
        self.pieces
            .get(&w)
            .map_or(&[], |p| p.basis_words.as_slice())
    }

    /// Coordinates of the coset of a homogeneous element in the chosen
    /// basis; linear, and exactly zero on the relation ideal.
    pub fn project(&self, e: &LieElement) -> Result<Vec<Rat>, Error> {
        match e.homogeneous_weight(self.basis())? {
            Some(w) => self.project_at(e, w),
            None => Err(Error::InvalidParams(
                "zero element has no weight; use project_at".into(),
            )),
        }
    }

    /// As `project`, with the weight supplied (so the zero element works).
    pub fn project_at(&self, e: &LieElement, w: i32) -> Result<Vec<Rat>, Error> {
        let piece = self.pieces.get(&w).ok_or(Error::WeightOutOfRange {
            weight: w,
            floor: self.floor(),
        })?;
        if e.component(self.basis(), w) != *e {
            return Err(Error::NotHomogeneous);
        }
        let mut v = self.basis().coords_at(e, w);
        for (k, &p) in piece.pivots.iter().enumerate() {
            if v[p].is_zero() {
                continue;
            }
            let f = std::mem::replace(&mut v[p], Rat::zero());
            for (j, entry) in piece.ideal_rref.row(k).iter().enumerate() {
                if j == p || entry.is_zero() {
                    continue;
                }
                let delta = entry * &f;
                v[j] -= delta;
            }
        }
        let mut pivot_set = vec![false; v.len()];
        for &p in &piece.pivots {
            pivot_set[p] = true;
        }
        Ok(v.into_iter()
            .zip(pivot_set)
            .filter(|(_, is_pivot)| !is_pivot)
            .map(|(c, _)| c)
            .collect())
    }

    /// The projection matrix from the free weight-`w` component onto the
    /// quotient basis.
    pub fn projection_matrix(&self, w: i32) -> Result<Mat, Error> {
        let words = self.basis().words_at(w).to_vec();
        let mut cols = Vec::new();
        for id in words {
            cols.push(self.project_at(&LieElement::from_word(id), w)?);
        }
        let rows = self.dim_at(w);
        let mut m = Mat::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for i in 0..rows {
                *m.at_mut(i, j) = col[i].clone();
            }
        }
        Ok(m)
    }

    /// Structure constants: coordinates of `[rep_i at w1, rep_j at w2]`.
    pub fn bracket_coords(&self, w1: i32, i: usize, w2: i32, j: usize) -> Option<&[Rat]> {
        self.brackets
            .get(&(w1, w2))
            .and_then(|t| t.get(i))
            .and_then(|r| r.get(j))
            .map(Vec::as_slice)
    }

    /// Documented JSON form: descriptor, dims, per-weight bases.
    pub fn to_json(&self) -> Value {
        let dims: BTreeMap<String, usize> = self
            .graded_dims()
            .into_iter()
            .map(|(w, d)| (w.to_string(), d))
            .collect();
        let bases: BTreeMap<String, Vec<String>> = self
            .pieces
            .iter()
            .map(|(&w, p)| {
                (
                    w.to_string(),
                    p.basis_words
                        .iter()
                        .map(|&id| self.basis().word_string(id))
                        .collect(),
                )
            })
            .collect();
        json!({
            "presentation": self.presentation.to_json(),
            "dims": dims,
            "bases": bases,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_int;
    use crate::symplectic::{sp_generators, CopyAction};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    const ORDER: HallOrder = HallOrder::LeafLex;

    #[test]
    fn labute_shape() {
        let p = GradedPresentation::labute(2, -2, ORDER).unwrap();
        assert_eq!(p.relations().len(), 1);
        assert_eq!(p.basis().alphabet().len(), 4);
        let q = p.build_quotient();
        assert_eq!(q.dim_at(-1), 4);
        assert_eq!(q.dim_at(-2), 5);
    }

    #[test]
    fn labute_dims_match_corollary() {
        for g in [2usize, 3] {
            let q = GradedPresentation::labute(g, -2, ORDER)
                .unwrap()
                .build_quotient();
            assert_eq!(q.dim_at(-1), 2 * g);
            assert_eq!(q.dim_at(-2), 2 * g * g - g - 1);
        }
    }

    #[test]
    fn labute_ideal_components() {
        let p = GradedPresentation::labute(2, -3, ORDER).unwrap();
        assert_eq!(p.ideal_component(-2).unwrap().rows(), 1);
        // independent oracle: the span of [Theta, x] over the four generators
        let basis = p.basis();
        let th = theta(basis, 2, 0).unwrap();
        let mut rows = Vec::new();
        for gid in 0..4 {
            let br = basis.bracket(&th, &basis.generator_element(gid));
            rows.push(basis.coords_at(&br, -3));
        }
        let oracle_rank = Mat::from_rows(rows).rref_rank().rank;
        assert_eq!(oracle_rank, 4);
        assert_eq!(p.ideal_component(-3).unwrap().rows(), oracle_rank);
    }

    #[test]
    fn hain_ideal_dimension_from_quotient_formula() {
        let p = GradedPresentation::hain_config(2, &[1, 2], -2, ORDER).unwrap();
        // free weight -2 on 8 generators is 28; quotient is 2*5 + 1 = 11
        assert_eq!(p.basis().words_at(-2).len(), 28);
        assert_eq!(p.ideal_component(-2).unwrap().rows(), 17);
        assert_eq!(p.build_quotient().dim_at(-2), 11);
    }

    #[test]
    fn hain_dims_match_corollary() {
        for g in [2usize, 3] {
            for n in [1usize, 2, 3] {
                let copies: Vec<usize> = (1..=n).collect();
                let q = GradedPresentation::hain_config(g, &copies, -2, ORDER)
                    .unwrap()
                    .build_quotient();
                assert_eq!(q.dim_at(-1), 2 * g * n, "g={g} n={n}");
                let expected = n * (2 * g * g - g - 1) + n * (n - 1) / 2;
                assert_eq!(q.dim_at(-2), expected, "g={g} n={n}");
            }
        }
    }

    #[test]
    fn punctured_dims() {
        for g in [2usize, 3] {
            for n in [0usize, 1, 2, 3] {
                let q = GradedPresentation::punctured_surface(g, n, -2, ORDER)
                    .unwrap()
                    .build_quotient();
                assert_eq!(q.dim_at(-1), 2 * g);
                assert_eq!(q.dim_at(-2), 2 * g * g - g - 1 + n, "g={g} n={n}");
            }
        }
    }

    #[test]
    fn hain_single_copy_matches_labute_through_floor() {
        for g in [2usize, 3] {
            let lab = GradedPresentation::labute(g, -4, ORDER)
                .unwrap()
                .build_quotient();
            let hc = GradedPresentation::hain_config(g, &[1], -4, ORDER).unwrap();
            // no pairs exist, so the relation set reduces to the single theta
            assert_eq!(hc.relations().len(), 1);
            assert_eq!(hc.relations()[0].label, "theta[1]");
            assert_eq!(lab.graded_dims(), hc.build_quotient().graded_dims(), "g={g}");
        }
    }

    /// Graded dimensions n_k determined by the Hilbert-series identity
    /// `prod_k (1 - t^k)^{n_k} = target(t)`, extracted degree by degree.
    fn series_dims(target_coeffs: &[i128], depth: usize) -> Vec<usize> {
        let mut target = vec![0i128; depth + 1];
        target[..target_coeffs.len().min(depth + 1)]
            .copy_from_slice(&target_coeffs[..target_coeffs.len().min(depth + 1)]);
        let mut current = vec![0i128; depth + 1];
        current[0] = 1;
        let mut dims = Vec::new();
        for k in 1..=depth {
            // residual = target / current mod t^{depth+1}; n_k = -[t^k] residual
            let mut residual = vec![0i128; depth + 1];
            for i in 0..=depth {
                let mut acc = target[i];
                for j in 0..i {
                    acc -= residual[j] * current[i - j];
                }
                residual[i] = acc / current[0];
            }
            let nk = (-residual[k]) as usize;
            dims.push(nk);
            // current *= (1 - t^k)^{nk}
            for _ in 0..nk {
                let mut next = current.clone();
                for i in k..=depth {
                    next[i] -= current[i - k];
                }
                current = next;
            }
        }
        dims
    }

    #[test]
    fn labute_deep_dims_match_series_oracle() {
        // one inert relation in weight -2 on 2g weight-(-1) generators:
        // series 1 - 2g t + t^2
        for g in [2usize, 3] {
            let expect = series_dims(&[1, -(2 * g as i128), 1], 4);
            let q = GradedPresentation::labute(g, -4, ORDER)
                .unwrap()
                .build_quotient();
            let dims = q.graded_dims();
            for k in 1..=4 {
                assert_eq!(dims[&-(k as i32)], expect[k - 1], "g={g} k={k}");
            }
        }
    }

    #[test]
    fn punctured_deep_dims_match_free_series_oracle() {
        // with n >= 1 punctures the relation eliminates one weight -2
        // generator, leaving the free Lie algebra on 2g weight -1 and n-1
        // weight -2 generators: series 1 - 2g t - (n-1) t^2. This exercises
        // the ideal computation against the puncture generators at depth.
        for g in [2usize, 3] {
            for n in [1usize, 2, 3] {
                let expect = series_dims(&[1, -(2 * g as i128), -((n as i128) - 1)], 4);
                let q = GradedPresentation::punctured_surface(g, n, -4, ORDER)
                    .unwrap()
                    .build_quotient();
                let dims = q.graded_dims();
                for k in 1..=4 {
                    assert_eq!(dims[&-(k as i32)], expect[k - 1], "g={g} n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn projection_is_linear() {
        let q = GradedPresentation::hain_config(2, &[1, 2], -2, ORDER)
            .unwrap()
            .build_quotient();
        let basis = q.basis();
        let words = basis.words_at(-2);
        let mut rng = StdRng::seed_from_u64(31);
        for _ in 0..40 {
            let mut x = LieElement::zero();
            let mut y = LieElement::zero();
            for _ in 0..3 {
                x.add_term(words[rng.gen_range(0..words.len())], &rat_int(rng.gen_range(-2..=2)));
                y.add_term(words[rng.gen_range(0..words.len())], &rat_int(rng.gen_range(-2..=2)));
            }
            let a = rat_int(rng.gen_range(-3..=3));
            let b = rat_int(rng.gen_range(-3..=3));
            let mut combo = x.scale(&a);
            combo.add_scaled(&y, &b);
            let lhs = q.project_at(&combo, -2).unwrap();
            let px = q.project_at(&x, -2).unwrap();
            let py = q.project_at(&y, -2).unwrap();
            let rhs: Vec<Rat> = px
                .iter()
                .zip(&py)
                .map(|(u, v)| u * &a + v * &b)
                .collect();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn project_kills_relations() {
        let g = 2;
        let p = GradedPresentation::hain_config(g, &[0, 1], -2, ORDER).unwrap();
        let q = p.build_quotient();
        for r in q.presentation().relations() {
            let coords = q.project_at(&r.element, r.weight).unwrap();
            assert!(coords.iter().all(Rat::is_zero), "{}", r.label);
        }
        // theta_pair symmetry holds only in the quotient
        let basis = q.basis();
        let t01 = theta_pair(basis, g, 0, 1).unwrap();
        let t10 = theta_pair(basis, g, 1, 0).unwrap();
        assert_ne!(t01, t10);
        assert_eq!(
            q.project_at(&t01, -2).unwrap(),
            q.project_at(&t10, -2).unwrap()
        );
    }

    #[test]
    fn project_kills_random_relation_instances() {
        // [u^(1), v^(2)] = [u^(2), v^(1)] for random rational u, v
        let g = 3;
        let p = GradedPresentation::hain_config(g, &[1, 2], -2, ORDER).unwrap();
        let q = p.build_quotient();
        let basis = q.basis();
        let space = SymplecticSpace::new(g).unwrap();
        let mut rng = StdRng::seed_from_u64(17);
        let vector = |rng: &mut StdRng, copy: usize| -> LieElement {
            let mut e = LieElement::zero();
            for idx in 0..space.dim() {
                let c = rat_int(rng.gen_range(-2..=2));
                let id = basis
                    .alphabet()
                    .lookup(copy, &space.basis_label(idx))
                    .unwrap();
                e.add_scaled(&basis.generator_element(id), &c);
            }
            e
        };
        for _ in 0..25 {
            let u1 = vector(&mut rng, 1);
            let v2 = vector(&mut rng, 2);
            let relabel = |e: &LieElement, to: usize| -> LieElement {
                let map = |gid: crate::freelie::GenId| {
                    let gen = basis.alphabet().generator(gid);
                    let id = basis.alphabet().lookup(to, &gen.label).unwrap();
                    basis.generator_element(id)
                };
                basis.substitute(e, basis, &map)
            };
            let u2 = relabel(&u1, 2);
            let v1 = relabel(&v2, 1);
            let lhs = basis.bracket(&u1, &v2);
            let rhs = basis.bracket(&u2, &v1);
            let diff = lhs.sub(&rhs);
            let coords = q.project_at(&diff, -2).unwrap();
            assert!(coords.iter().all(Rat::is_zero));
        }
    }

    #[test]
    fn ideal_is_stable_under_the_symplectic_action() {
        let g = 2;
        let q = GradedPresentation::hain_config(g, &[0, 1], -2, ORDER)
            .unwrap()
            .build_quotient();
        let action = CopyAction::new(SymplecticSpace::new(g).unwrap());
        for m in sp_generators(g) {
            for r in q.presentation().relations() {
                let img = action.act(&m, &r.element, q.basis()).unwrap();
                let coords = q.project_at(&img, r.weight).unwrap();
                assert!(coords.iter().all(Rat::is_zero), "{}", r.label);
            }
        }
    }

    #[test]
    fn projection_commutes_with_induced_action() {
        let g = 2;
        let q = GradedPresentation::hain_config(g, &[1, 2], -2, ORDER)
            .unwrap()
            .build_quotient();
        let basis = q.basis();
        let action = CopyAction::new(SymplecticSpace::new(g).unwrap());
        let mut rng = StdRng::seed_from_u64(23);
        for m in sp_generators(g) {
            let reps = q.basis_reps(-2);
            let dim = reps.len();
            let mut induced = Mat::zeros(dim, dim);
            for (j, rep) in reps.iter().enumerate() {
                let img = action.act(&m, rep, basis).unwrap();
                let col = q.project_at(&img, -2).unwrap();
                for i in 0..dim {
                    *induced.at_mut(i, j) = col[i].clone();
                }
            }
            for _ in 0..5 {
                let words = basis.words_at(-2);
                let mut e = LieElement::zero();
                for _ in 0..4 {
                    let id = words[rng.gen_range(0..words.len())];
                    e.add_term(id, &rat_int(rng.gen_range(-2..=2)));
                }
                let lhs = q
                    .project_at(&action.act(&m, &e, basis).unwrap(), -2)
                    .unwrap();
                let rhs = induced.mul_vec(&q.project_at(&e, -2).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn structure_constants_antisymmetric_and_jacobi() {
        let q = GradedPresentation::labute(2, -4, ORDER)
            .unwrap()
            .build_quotient();
        for ((w1, w2), table) in &q.brackets {
            for (i, row) in table.iter().enumerate() {
                for (j, coords) in row.iter().enumerate() {
                    let flipped = q.bracket_coords(*w2, j, *w1, i).unwrap();
                    let negated: Vec<Rat> = flipped.iter().map(|c| -c.clone()).collect();
                    assert_eq!(coords.as_slice(), negated.as_slice());
                }
            }
        }
        let add_scaled = |acc: &mut Vec<Rat>, v: &[Rat], c: &Rat| {
            for (a, b) in acc.iter_mut().zip(v) {
                *a += b * c;
            }
        };
        let compose = |wa: i32, ia: usize, wb: i32, b_coords: &[Rat], out: &mut Vec<Rat>| {
            for (k, c) in b_coords.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let v = q.bracket_coords(wa, ia, wb, k).unwrap();
                add_scaled(out, v, c);
            }
        };
        for (w1, w2, w3) in [(-1i32, -1i32, -1i32), (-1, -1, -2), (-1, -2, -1), (-2, -1, -1)] {
            let total = w1 + w2 + w3;
            let dim_total = q.dim_at(total);
            for i in 0..q.dim_at(w1) {
                for j in 0..q.dim_at(w2) {
                    for k in 0..q.dim_at(w3) {
                        let mut sum = vec![Rat::zero(); dim_total];
                        let jk = q.bracket_coords(w2, j, w3, k).unwrap().to_vec();
                        compose(w1, i, w2 + w3, &jk, &mut sum);
                        let ki = q.bracket_coords(w3, k, w1, i).unwrap().to_vec();
                        compose(w2, j, w3 + w1, &ki, &mut sum);
                        let ij = q.bracket_coords(w1, i, w2, j).unwrap().to_vec();
                        compose(w3, k, w1 + w2, &ij, &mut sum);
                        assert!(sum.iter().all(Rat::is_zero));
                    }
                }
            }
        }
    }

    #[test]
    fn partial_config_dims() {
        // one filled pair kills exactly the (0,2) pair class
        let p = GradedPresentation::partial_config(3, 2, &[2], -2, ORDER).unwrap();
        let base = GradedPresentation::hain_config(3, &[0, 1, 2], -2, ORDER).unwrap();
        assert_eq!(p.relations().len(), base.relations().len() + 1);
        assert_eq!(p.relations().last().unwrap().label, "theta_pair[0,2]");
        let q = p.build_quotient();
        assert_eq!(q.dim_at(-1), 18);
        // 3 copies of Lambda^2_0 H (dim 14) + pairs {01, 12} surviving
        assert_eq!(q.dim_at(-2), 3 * 14 + 2);
        assert!(GradedPresentation::partial_config(3, 2, &[3], -2, ORDER).is_err());
    }

    #[test]
    fn builtin_dispatch_and_validation() {
        assert!(GradedPresentation::builtin(BuiltinKind::Labute, 2, 1, &[], -2, ORDER).is_err());
        assert!(
            GradedPresentation::builtin(BuiltinKind::HainConfig, 1, 1, &[], -2, ORDER).is_err()
        );
        assert!(
            GradedPresentation::builtin(BuiltinKind::HainConfig, 2, 1, &[1], -2, ORDER).is_err()
        );
        let q = GradedPresentation::builtin(BuiltinKind::HainConfig, 3, 2, &[], -2, ORDER)
            .unwrap()
            .build_quotient();
        assert_eq!(q.dim_at(-2), 29);
        let dims = GradedPresentation::builtin(BuiltinKind::PuncturedSurface, 2, 3, &[], -2, ORDER)
            .unwrap()
            .build_quotient()
            .graded_dims();
        assert_eq!(dims[&-2], 8);
    }

    #[test]
    fn project_rejects_out_of_range_weights() {
        let q = GradedPresentation::labute(2, -2, ORDER)
            .unwrap()
            .build_quotient();
        let basis = q.basis();
        let th = theta(basis, 2, 0).unwrap();
        assert!(q.project_at(&th, -3).is_err());
        assert!(matches!(q.project_at(&th, -1), Err(Error::NotHomogeneous)));
        assert!(q.project(&th).unwrap().iter().all(Rat::is_zero));
    }

    #[test]
    fn json_form_is_deterministic() {
        let mk = || {
            GradedPresentation::hain_config(2, &[1, 2], -2, ORDER)
                .unwrap()
                .build_quotient()
                .to_json()
                .to_string()
        };
        assert_eq!(mk(), mk());
    }
}

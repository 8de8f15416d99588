//! The genus-g symplectic module `H`, its diagonal action on copies, integer
//! generators of the symplectic group, an equivariant-hom solver, and the
//! hyperelliptic component count.
//!
//! Basis convention throughout: `a_1, ..., a_g, b_1, ..., b_g` with
//! `<a_i, b_j> = delta_ij` and `<a_i, a_j> = <b_i, b_j> = 0`, so the Gram
//! matrix of the form is `[[0, I], [-I, 0]]`.

use crate::error::Error;
use crate::freelie::{GenId, HallBasis, LieElement};
use crate::mat::Mat;
use crate::rat::{rat_int, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// The rational symplectic space of a genus-g surface with its standard
/// symplectic basis and intersection form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymplecticSpace {
    pub g: usize,
}

impl SymplecticSpace {
    pub fn new(g: usize) -> Result<Self, Error> {
        if g < 1 {
            return Err(Error::InvalidParams("genus must be >= 1".into()));
        }
        Ok(SymplecticSpace { g })
    }

    pub fn dim(&self) -> usize {
        2 * self.g
    }

    /// Gram matrix `J` of the intersection form; antisymmetric, unimodular.
    pub fn form_matrix(&self) -> Mat {
        let g = self.g;
        let mut j = Mat::zeros(2 * g, 2 * g);
        for i in 0..g {
            *j.at_mut(i, g + i) = rat_int(1);
            *j.at_mut(g + i, i) = rat_int(-1);
        }
        j
    }

    /// `<e_i, e_j>` for basis indices.
    pub fn pairing(&self, i: usize, j: usize) -> i64 {
        let g = self.g;
        if i < g && j >= g && j - g == i {
            1
        } else if i >= g && j < g && i - g == j {
            -1
        } else {
            0
        }
    }

    /// `a1..ag, b1..bg` label of a basis index.
    pub fn basis_label(&self, i: usize) -> String {
        if i < self.g {
            format!("a{}", i + 1)
        } else {
            format!("b{}", i + 1 - self.g)
        }
    }

    /// Basis index of a symplectic label, `None` for puncture generators.
    pub fn basis_index(&self, label: &str) -> Option<usize> {
        if label.len() < 2 {
            return None;
        }
        let (head, tail) = label.split_at(1);
        let l: usize = tail.parse().ok()?;
        if l < 1 || l > self.g {
            return None;
        }
        match head {
            "a" => Some(l - 1),
            "b" => Some(self.g + l - 1),
            _ => None,
        }
    }
}

/// `M^T J M == J`.
pub fn preserves_form(m: &Mat, j: &Mat) -> bool {
    m.transpose().mul(j).mul(m) == *j
}

/// A documented generating set of the integral symplectic group: the
/// symplectic rotation `J = [[0, I], [-I, 0]]` together with the elementary
/// translations `[[I, S], [0, I]]` for `S = E_ll` and `S = E_lm + E_ml`
/// (the classical generators of the Siegel modular group). Every member is
/// machine-checked against the form.
pub fn sp_generators(g: usize) -> Vec<Mat> {
    let space = SymplecticSpace { g };
    let n = 2 * g;
    let mut gens = Vec::new();

    let mut rot = Mat::zeros(n, n);
    for i in 0..g {
        *rot.at_mut(i, g + i) = rat_int(1);
        *rot.at_mut(g + i, i) = rat_int(-1);
    }
    gens.push(rot);

    let mut symmetric_units: Vec<Vec<(usize, usize)>> = Vec::new();
    for l in 0..g {
        symmetric_units.push(vec![(l, l)]);
    }
    for l in 0..g {
        for m in l + 1..g {
            symmetric_units.push(vec![(l, m), (m, l)]);
        }
    }
    for unit in symmetric_units {
        let mut t = Mat::identity(n);
        for (r, c) in unit {
            *t.at_mut(r, g + c) = rat_int(1);
        }
        gens.push(t);
    }

    let j = space.form_matrix();
    for m in &gens {
        assert!(preserves_form(m, &j), "generator must preserve the form");
    }
    gens
}

/// `Theta_i = sum_l [a_l^(i), b_l^(i)]`, the weight-(-2) symplectic element
/// of copy `i`, in normal form.
pub fn theta(basis: &HallBasis, g: usize, copy: usize) -> Result<LieElement, Error> {
    let mut out = LieElement::zero();
    for l in 1..=g {
        let a = basis
            .alphabet()
            .lookup(copy, &format!("a{l}"))
            .ok_or(Error::UnknownCopy(copy))?;
        let b = basis
            .alphabet()
            .lookup(copy, &format!("b{l}"))
            .ok_or(Error::UnknownCopy(copy))?;
        out.add_assign(&basis.bracket(&basis.generator_element(a), &basis.generator_element(b)));
    }
    Ok(out)
}

/// `Theta_ij = sum_l [a_l^(i), b_l^(j)]` for distinct copies.
pub fn theta_pair(basis: &HallBasis, g: usize, i: usize, j: usize) -> Result<LieElement, Error> {
    if i == j {
        return Err(Error::InvalidParams(format!(
            "theta_pair wants distinct copies, got ({i}, {i})"
        )));
    }
    let mut out = LieElement::zero();
    for l in 1..=g {
        let a = basis
            .alphabet()
            .lookup(i, &format!("a{l}"))
            .ok_or(Error::UnknownCopy(i))?;
        let b = basis
            .alphabet()
            .lookup(j, &format!("b{l}"))
            .ok_or(Error::UnknownCopy(j))?;
        out.add_assign(&basis.bracket(&basis.generator_element(a), &basis.generator_element(b)));
    }
    Ok(out)
}

/// The diagonal action of symplectic matrices on an alphabet whose
/// weight-(-1) generators are symplectic basis vectors of copies of `H`.
/// Puncture generators are fixed; copy index and weight are preserved.
#[derive(Debug, Clone, Copy)]
pub struct CopyAction {
    pub space: SymplecticSpace,
}

impl CopyAction {
    pub fn new(space: SymplecticSpace) -> Self {
        CopyAction { space }
    }

    /// Acts by `m` on every copy, extending multiplicatively over brackets.
    pub fn act(&self, m: &Mat, e: &LieElement, basis: &HallBasis) -> Result<LieElement, Error> {
        let n = self.space.dim();
        if m.rows() != n || m.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "matrix is {}x{}, expected {}x{}",
                m.rows(),
                m.cols(),
                n,
                n
            )));
        }
        let map = |gid: GenId| -> LieElement {
            let gen = basis.alphabet().generator(gid);
            match self.space.basis_index(&gen.label) {
                None => basis.generator_element(gid),
                Some(col) => {
                    let mut img = LieElement::zero();
                    for row in 0..n {
                        let c = m.at(row, col);
                        if c.is_zero() {
                            continue;
                        }
                        let label = self.space.basis_label(row);
                        let target = basis
                            .alphabet()
                            .lookup(gen.copy, &label)
                            .expect("symplectic alphabets carry full copies");
                        img.add_scaled(&basis.generator_element(target), c);
                    }
                    img
                }
            }
        };
        Ok(basis.substitute(e, basis, &map))
    }
}

/// Basis of the space of equivariant linear maps `f: V -> W`, i.e. all `f`
/// with `f . rho_V(M) = rho_W(M) . f` for every generator matrix `M`. Both
/// representations are given by matrices over the same generator list. The
/// stacked intertwining system is solved exactly through the kernel.
pub fn equivariant_maps(v_rep: &[Mat], w_rep: &[Mat]) -> Vec<Mat> {
    assert_eq!(v_rep.len(), w_rep.len(), "one matrix per generator");
    assert!(!v_rep.is_empty(), "need at least one generator");
    let dv = v_rep[0].cols();
    let dw = w_rep[0].cols();
    let unknowns = dv * dw; // f[r][c] at index r * dv + c
    let mut rows = Vec::new();
    for (vm, wm) in v_rep.iter().zip(w_rep.iter()) {
        for r in 0..dw {
            for c in 0..dv {
                let mut row = vec![Rat::zero(); unknowns];
                for k in 0..dv {
                    row[r * dv + k] += vm.at(k, c);
                }
                for k in 0..dw {
                    row[k * dv + c] -= wm.at(r, k);
                }
                rows.push(row);
            }
        }
    }
    let system = Mat::from_rows(rows);
    system
        .kernel_basis()
        .into_iter()
        .map(|v| {
            let mut f = Mat::zeros(dw, dv);
            for r in 0..dw {
                for c in 0..dv {
                    *f.at_mut(r, c) = v[r * dv + c].clone();
                }
            }
            f
        })
        .collect()
}

/// The trivial representation over a generator list of the given length.
pub fn rep_trivial(n_generators: usize) -> Vec<Mat> {
    (0..n_generators).map(|_| Mat::identity(1)).collect()
}

/// Direct sum of representations over a common generator list.
pub fn rep_direct_sum(reps: &[&[Mat]]) -> Vec<Mat> {
    assert!(!reps.is_empty());
    let count = reps[0].len();
    assert!(reps.iter().all(|r| r.len() == count));
    (0..count)
        .map(|k| {
            let total: usize = reps.iter().map(|r| r[k].cols()).sum();
            let mut m = Mat::zeros(total, total);
            let mut off = 0;
            for r in reps {
                let blk = &r[k];
                for i in 0..blk.rows() {
                    for j in 0..blk.cols() {
                        *m.at_mut(off + i, off + j) = blk.at(i, j).clone();
                    }
                }
                off += blk.cols();
            }
            m
        })
        .collect()
}

/// Number of components of the hyperelliptic locus at even level:
/// `2^(g^2) * prod_{j=1..g} (2^(2j) - 1) / (2g+2)!`. The division must be
/// exact; a remainder signals an implementation bug.
pub fn hyperelliptic_component_count(g: usize) -> Result<BigInt, Error> {
    if g < 2 {
        return Err(Error::InvalidParams(
            "component count wants genus >= 2".into(),
        ));
    }
    let mut numer: BigInt = BigInt::one() << (g * g);
    for j in 1..=g {
        numer *= (BigInt::one() << (2 * j)) - BigInt::one();
    }
    let mut denom = BigInt::one();
    for k in 2..=(2 * g + 2) {
        denom *= BigInt::from(k);
    }
    let (q, r) = numer.div_rem(&denom);
    if !r.is_zero() {
        return Err(Error::NonIntegralCount(format!(
            "{numer} / {denom} leaves remainder {r}"
        )));
    }
    Ok(q)
}

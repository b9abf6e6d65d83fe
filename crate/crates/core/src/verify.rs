//! Floating-point character tables, used as an independent check on the
//! exact orbit counting of irreducible characters.
//!
//! The central characters `ω_χ(C) = |C|·χ(g)/χ(1)` are the common
//! eigenvectors of the class-multiplication matrices. A random real
//! combination of those matrices has simple spectrum with probability one;
//! its eigenvectors, suitably normalised, are the rows of the table.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupAutomorphism};
use crate::limits::Limits;
use crate::perm::Perm;

/// Default tolerance for comparing character values.
pub const TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct NumericTable {
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    /// `rows[χ][class]`.
    pub rows: Vec<Vec<Complex64>>,
}

impl NumericTable {
    pub fn degrees(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r[0].re).collect()
    }

    /// Largest deviation from the first orthogonality relation, relative to `|G|`.
    pub fn orthogonality_defect(&self) -> f64 {
        let order: usize = self.classes.iter().map(Vec::len).sum();
        let mut worst: f64 = 0.0;
        for (a, ra) in self.rows.iter().enumerate() {
            for (b, rb) in self.rows.iter().enumerate() {
                let s: Complex64 = self
                    .classes
                    .iter()
                    .enumerate()
                    .map(|(i, c)| ra[i] * rb[i].conj() * c.len() as f64)
                    .sum();
                let expect = if a == b { order as f64 } else { 0.0 };
                worst = worst.max((s - expect).norm() / order as f64);
            }
        }
        worst
    }
}

/// `c[j][i][k]` = number of `x ∈ C_j` with `x⁻¹z ∈ C_i` for a fixed `z ∈ C_k`.
fn class_constants(g: &FiniteGroup, classes: &[Vec<usize>], class_of: &[usize]) -> Vec<DMatrix<f64>> {
    let r = classes.len();
    let mut mats = vec![DMatrix::<f64>::zeros(r, r); r];
    for (k, c) in classes.iter().enumerate() {
        let z = c[0];
        for x in 0..g.order() {
            let i = class_of[g.mul(g.inv(x), z)];
            mats[class_of[x]][(i, k)] += 1.0;
        }
    }
    mats
}

fn null_vector(m: &DMatrix<Complex64>) -> Vec<Complex64> {
    let svd = m.clone().svd(false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");
    let (idx, _) = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("nonempty matrix");
    v_t.row(idx).iter().map(|z| z.conj()).collect()
}

/// The character table of `g`, computed in floating point.
pub fn numeric_character_table(g: &FiniteGroup, seed: u64, limits: &Limits) -> Result<NumericTable> {
    let (classes, class_of) = g.class_map(limits)?;
    let r = classes.len();
    let mats = class_constants(g, &classes, &class_of);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _attempt in 0..10 {
        let mut m = DMatrix::<f64>::zeros(r, r);
        for mat in &mats {
            m += mat * rng.gen_range(-1.0..1.0);
        }
        let eig: Vec<Complex64> = m.complex_eigenvalues().iter().copied().collect();
        let separated = eig
            .iter()
            .enumerate()
            .all(|(a, x)| eig.iter().skip(a + 1).all(|y| (x - y).norm() > 1e-6));
        if !separated {
            continue;
        }
        let mc = m.map(|x| Complex64::new(x, 0.0));
        let mut rows = Vec::with_capacity(r);
        for &lambda in &eig {
            let shifted = &mc - DMatrix::<Complex64>::identity(r, r) * lambda;
            let mut w = null_vector(&shifted);
            // ω(identity class) = 1; the identity is the only element of class 0
            let w0 = w[0];
            if w0.norm() < 1e-12 {
                return Err(Error::logic("central character vanishes at the identity"));
            }
            for x in &mut w {
                *x /= w0;
            }
            let norm: f64 = w.iter().zip(&classes).map(|(x, c)| x.norm_sqr() / c.len() as f64).sum();
            let degree = (g.order() as f64 / norm).sqrt();
            rows.push(
                w.iter()
                    .zip(&classes)
                    .map(|(x, c)| x * degree / c.len() as f64)
                    .collect::<Vec<_>>(),
            );
        }
        rows.sort_by(|a, b| a[0].re.total_cmp(&b[0].re));
        let table = NumericTable { classes, class_of, rows };
        let defect = table.orthogonality_defect();
        if defect > TOLERANCE {
            return Err(Error::logic(format!("numeric character table fails orthogonality by {defect:e}")));
        }
        return Ok(table);
    }
    Err(Error::logic("could not find a combination of class matrices with simple spectrum"))
}

/// The permutation `χ ↦ χ∘ν` of the rows of `table`.
pub fn irr_permutation(table: &NumericTable, nu: &GroupAutomorphism, tol: f64) -> Result<Perm> {
    let pi = nu.class_permutation(&table.class_of, &table.classes);
    let mut images = Vec::with_capacity(table.rows.len());
    for row in &table.rows {
        let twisted: Vec<Complex64> = (0..row.len()).map(|i| row[pi.apply(i)]).collect();
        let matches: Vec<usize> = table
            .rows
            .iter()
            .enumerate()
            .filter(|(_, other)| other.iter().zip(&twisted).all(|(a, b)| (a - b).norm() < tol))
            .map(|(j, _)| j)
            .collect();
        match matches.as_slice() {
            [j] => images.push(*j),
            [] => return Err(Error::logic("χ∘ν matches no row of the numeric table")),
            _ => return Err(Error::logic("χ∘ν matches several rows of the numeric table")),
        }
    }
    Perm::new(images).map_err(|_| Error::logic("χ ↦ χ∘ν is not a bijection on rows"))
}

/// Orbit lengths of `⟨ν⟩` on irreducible characters, read off the numeric table.
pub fn numeric_irr_orbit_distribution(
    g: &FiniteGroup,
    nu: &GroupAutomorphism,
    seed: u64,
    limits: &Limits,
) -> Result<BTreeMap<usize, usize>> {
    let table = numeric_character_table(g, seed, limits)?;
    let p = irr_permutation(&table, nu, TOLERANCE)?;
    let mut out = BTreeMap::new();
    for c in p.cycles() {
        *out.entry(c.len()).or_insert(0) += 1;
    }
    Ok(out)
}

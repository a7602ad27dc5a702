//! Quantization of graded quadratic Poisson algebras: the quadratic algebra
//! on the variables whose relations are the kernel of
//! `sigma_lambda(a (x) b) = ab + lambda {a, b}` on degree-one tensors.

use std::collections::HashMap;

use crate::action::HopfAction;
use crate::error::{Error, Result};
use crate::hopf::Element;
use crate::ncalg::{binomial, FreePoly, Presentation, Word};
use crate::poisson::PoissonAlgebra;
use crate::polyring::{Monomial, RowSpace, SparseRow};
use crate::scalars::{CycRat, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantizationResult {
    pub lambda: CycRat,
    /// reduced echelon basis of the kernel; each vector has coefficient 1
    /// on its smallest word
    pub kernel_basis: Vec<FreePoly>,
    pub presentation: Presentation,
    /// the kernel has the dimension `m(m-1)/2` of the commutators
    pub generic: bool,
}

impl QuantizationResult {
    /// Kernel vectors as dense coefficient arrays over the words `u_i u_j`
    /// in ascending order.
    pub fn kernel_vectors(&self) -> Vec<Vec<CycRat>> {
        let m = self.presentation.letters().len();
        let field = self.presentation.field();
        self.kernel_basis
            .iter()
            .map(|r| {
                let mut v = vec![CycRat::zero(field); m * m];
                for (w, c) in r.terms() {
                    v[w.0[0] * m + w.0[1]] = c.to_num(field).expect("numeric kernel");
                }
                v
            })
            .collect()
    }

    /// Whether the graded dimensions agree with the polynomial ring
    /// through degree `upto`.
    pub fn matches_commutative_dimensions(&self, upto: u32) -> Result<bool> {
        let m = self.presentation.letters().len() as u64;
        for d in 0..=upto {
            let expect = binomial(m + d as u64 - 1, d as u64) as usize;
            if m == 0 {
                return Ok(true);
            }
            if self.presentation.graded_dimension(d)? != expect {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn check_graded_quadratic(p: &PoissonAlgebra) -> Result<()> {
    let m = p.nvars();
    if p.weights().iter().any(|&w| w != 1) {
        return Err(Error::NotGradedQuadratic("all variables must have weight 1".into()));
    }
    for i in 0..m {
        for j in i + 1..m {
            let f = p.structure(i, j);
            if !f.is_zero() && !f.is_homogeneous(p.weights(), 2) {
                return Err(Error::NotGradedQuadratic(format!(
                    "{{{},{}}} is not homogeneous of degree 2",
                    p.ring().vars()[i],
                    p.ring().vars()[j]
                )));
            }
        }
    }
    Ok(())
}

/// Kernel of `sigma_lambda` on `P1 (x) P1` and the resulting presentation.
pub fn quantization_relations(p: &PoissonAlgebra, lambda: &CycRat) -> Result<QuantizationResult> {
    check_graded_quadratic(p)?;
    let ring = p.ring();
    let field = ring.field();
    let m = p.nvars();
    let monos = Monomial::all_of_degree(m, &vec![1; m], 2);
    let rows: HashMap<&Monomial, usize> = monos.iter().enumerate().map(|(i, x)| (x, i)).collect();
    // columns are the words u_i u_j; build the transpose as rows per column
    let mut columns: Vec<Vec<(usize, CycRat)>> = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            let prod = &ring.var(i) * &ring.var(j);
            let image = &prod + &p.structure(i, j).scale_num(lambda);
            let mut col = Vec::new();
            for (mono, c) in image.terms() {
                col.push((rows[mono], c.to_num(field)?));
            }
            columns.push(col);
        }
    }
    let mut dense: Vec<SparseRow> = vec![Vec::new(); monos.len()];
    for (c, col) in columns.into_iter().enumerate() {
        for (r, v) in col {
            dense[r].push((c, v));
        }
    }
    let mut space = RowSpace::new(field, m * m);
    for row in dense {
        space.insert(row);
    }
    let mut kernel = RowSpace::new(field, m * m);
    for v in space.kernel() {
        kernel.insert_dense(&v);
    }
    let kernel_basis: Vec<FreePoly> = kernel
        .rref()
        .into_iter()
        .map(|row| {
            FreePoly::from_terms(
                m,
                row.into_iter().map(|(c, v)| (Word(vec![c / m, c % m]), Scalar::num(v))),
            )
        })
        .collect();
    let generic = kernel_basis.len() == m * (m.saturating_sub(1)) / 2;
    let presentation = Presentation::new(field, ring.vars().to_vec(), kernel_basis.clone())?;
    Ok(QuantizationResult {
        lambda: lambda.clone(),
        kernel_basis,
        presentation,
        generic,
    })
}

/// `q_ij = (1 + lambda c_ij) / (1 - lambda c_ij)` for `i < j` (1 on and
/// below the diagonal), and whether the kernel is spanned by
/// `u_i u_j - q_ij u_j u_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewCheck {
    pub q: Vec<Vec<CycRat>>,
    pub matches: bool,
}

pub fn verify_skew_form(q: &QuantizationResult, c: &[Vec<CycRat>]) -> Result<SkewCheck> {
    let m = q.presentation.letters().len();
    let field = q.presentation.field().clone();
    if c.len() != m || c.iter().any(|r| r.len() != m) {
        return Err(Error::VariableMismatch(m, c.len()));
    }
    let one = CycRat::one(&field);
    let mut qm = vec![vec![one.clone(); m]; m];
    let mut expected = RowSpace::new(&field, m * m);
    for i in 0..m {
        for j in i + 1..m {
            let lc = &q.lambda * &c[i][j];
            let den = &one - &lc;
            let num = &one + &lc;
            if den.is_zero() || num.is_zero() {
                return Err(Error::Degenerate(i + 1, j + 1));
            }
            qm[i][j] = num.try_div(&den)?;
            expected.insert([(i * m + j, one.clone()), (j * m + i, -&qm[i][j])]);
        }
    }
    let got: Vec<Vec<CycRat>> = q.kernel_vectors();
    let mut actual = RowSpace::new(&field, m * m);
    for v in &got {
        actual.insert_dense(v);
    }
    let matches = actual.rank() == expected.rank() && got.iter().all(|v| expected.contains(dense_to_sparse(v)));
    Ok(SkewCheck { q: qm, matches })
}

fn dense_to_sparse(v: &[CycRat]) -> SparseRow {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

/// The skew matrix `c` when every bracket is `{u_i,u_j} = c_ij u_i u_j`.
pub fn skew_coefficients(p: &PoissonAlgebra) -> Option<Vec<Vec<CycRat>>> {
    let m = p.nvars();
    let field = p.field();
    let mut c = vec![vec![CycRat::zero(field); m]; m];
    for i in 0..m {
        for j in i + 1..m {
            let f = p.structure(i, j);
            let mono = Monomial::var(m, i).mul(&Monomial::var(m, j));
            match f.terms().collect::<Vec<_>>().as_slice() {
                [] => {}
                [(x, s)] if **x == mono => {
                    c[i][j] = s.to_num(field).ok()?;
                    c[j][i] = -&c[i][j];
                }
                _ => return None,
            }
        }
    }
    Some(c)
}

/// Outcome of transporting a degree-preserving action to a quantization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransportReport {
    /// `(basis element, relation)` pairs whose image leaves the relation
    /// span, with the image
    pub failures: Vec<(String, String, FreePoly)>,
    /// descended generator action on the letters, `(generator, letter, image)`
    pub descended: Vec<(String, String, FreePoly)>,
    /// the degree-three part of the relation ideal is also stable
    pub degree3_stable: bool,
}

impl TransportReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.degree3_stable
    }

    /// Lines `g(u1) = ...`.
    pub fn format_descended(&self, pr: &Presentation) -> Vec<String> {
        self.descended
            .iter()
            .map(|(g, l, img)| format!("{g}({l}) = {}", pr.format(img)))
            .collect()
    }
}

/// Linear action of every basis element on the letters.
struct LinearAction {
    /// `lin[h][i]` = coordinates of `e_h . u_i`
    lin: Vec<Vec<Vec<(usize, CycRat)>>>,
}

impl LinearAction {
    fn new(action: &HopfAction) -> Result<Self> {
        if !action.is_linear() {
            return Err(Error::NotLinear("the action must preserve degree".into()));
        }
        let ring = action.algebra().ring();
        let field = ring.field();
        let m = ring.nvars();
        let mut lin = Vec::new();
        for h in 0..action.hopf().dim() {
            let mut row = Vec::new();
            for i in 0..m {
                let img = action.act(h, &ring.var(i));
                let mut coords = Vec::new();
                for (mono, c) in img.terms() {
                    coords.push((mono.first_var().expect("linear"), c.to_num(field)?));
                }
                row.push(coords);
            }
            lin.push(row);
        }
        Ok(LinearAction { lin })
    }

    /// `h . w` for a word, given the `k`-leg Sweedler expansion of `h`.
    fn act_word(&self, legs: &[(Vec<usize>, CycRat)], w: &Word, out: &mut HashMap<Vec<usize>, CycRat>) {
        for (idx, c) in legs {
            let mut partial: Vec<(Vec<usize>, CycRat)> = vec![(Vec::new(), c.clone())];
            for (leg, &letter) in idx.iter().zip(&w.0) {
                let mut next = Vec::new();
                for (prefix, pc) in &partial {
                    for (k, ck) in &self.lin[*leg][letter] {
                        let mut p = prefix.clone();
                        p.push(*k);
                        next.push((p, pc * ck));
                    }
                }
                partial = next;
            }
            for (word, c) in partial {
                let e = out.entry(word).or_insert_with(|| CycRat::zero(c.field()));
                *e = &*e + &c;
            }
        }
    }
}

fn word_index(w: &[usize], m: usize) -> usize {
    w.iter().fold(0, |acc, &l| acc * m + l)
}

/// Checks that every Hopf basis element maps the relation span into itself,
/// so that the action descends to the quantization.
pub fn transport_action(action: &HopfAction, q: &QuantizationResult) -> Result<TransportReport> {
    let m = action.algebra().nvars();
    if q.presentation.letters().len() != m {
        return Err(Error::VariableMismatch(m, q.presentation.letters().len()));
    }
    let lin = LinearAction::new(action)?;
    let hopf = action.hopf();
    let field = action.algebra().field().clone();
    let pr = &q.presentation;

    let expansions = |legs: usize| -> Vec<Vec<(Vec<usize>, CycRat)>> {
        (0..hopf.dim())
            .map(|h| {
                let e: Element = hopf.basis_element(h);
                hopf.sweedler_expand(&e, legs).terms.into_iter().collect()
            })
            .collect()
    };

    let mut span2 = RowSpace::new(&field, m * m);
    for r in &q.kernel_basis {
        span2.insert(to_row(r, m)?);
    }
    let two = expansions(2);
    let mut failures = Vec::new();
    for (h, legs) in two.iter().enumerate() {
        for r in &q.kernel_basis {
            let image = act_poly(&lin, legs, r, &field)?;
            let row = image_row(&image, m);
            if !span2.contains(row) {
                let fp = FreePoly::from_terms(
                    m,
                    image.into_iter().map(|(w, c)| (Word(w), Scalar::num(c))),
                );
                failures.push((hopf.basis()[h].clone(), pr.format(r), fp));
            }
        }
    }

    let mut span3 = RowSpace::new(&field, m * m * m);
    let mut deg3 = Vec::new();
    for r in &q.kernel_basis {
        for l in 0..m {
            for g in [r.sandwich(&Word::letter(l), &Word::empty()), r.sandwich(&Word::empty(), &Word::letter(l))] {
                span3.insert(to_row(&g, m)?);
                deg3.push(g);
            }
        }
    }
    let three = expansions(3);
    let mut degree3_stable = true;
    'outer: for legs in &three {
        for g in &deg3 {
            let image = act_poly(&lin, legs, g, &field)?;
            if !span3.contains(image_row(&image, m)) {
                degree3_stable = false;
                break 'outer;
            }
        }
    }

    let mut descended = Vec::new();
    for (name, idx) in hopf.generators() {
        for (i, letter) in pr.letters().iter().enumerate() {
            let img = FreePoly::from_terms(
                m,
                lin.lin[*idx][i].iter().map(|(k, c)| (Word::letter(*k), Scalar::num(c.clone()))),
            );
            descended.push((name.clone(), letter.clone(), img));
        }
    }
    Ok(TransportReport {
        failures,
        descended,
        degree3_stable,
    })
}

fn act_poly(
    lin: &LinearAction,
    legs: &[(Vec<usize>, CycRat)],
    f: &FreePoly,
    field: &std::sync::Arc<crate::scalars::CyclotomicField>,
) -> Result<HashMap<Vec<usize>, CycRat>> {
    let mut out = HashMap::new();
    for (w, c) in f.terms() {
        let c = c.to_num(field)?;
        let mut part = HashMap::new();
        lin.act_word(legs, w, &mut part);
        for (k, v) in part {
            let e = out.entry(k).or_insert_with(|| CycRat::zero(field));
            *e = &*e + &(&v * &c);
        }
    }
    out.retain(|_, v: &mut CycRat| !v.is_zero());
    Ok(out)
}

fn image_row(image: &HashMap<Vec<usize>, CycRat>, m: usize) -> SparseRow {
    let mut row: SparseRow = image.iter().map(|(w, c)| (word_index(w, m), c.clone())).collect();
    row.sort_by_key(|(i, _)| *i);
    row
}

fn to_row(f: &FreePoly, m: usize) -> Result<SparseRow> {
    let field = f.terms().next().and_then(|(_, c)| c.field().cloned());
    let mut row = Vec::new();
    for (w, c) in f.terms() {
        let field = field.as_ref().expect("nonempty");
        row.push((word_index(&w.0, m), c.to_num(field)?));
    }
    row.sort_by_key(|(i, _)| *i);
    Ok(row)
}

/// Sets a central letter to 1 and removes it. Centrality is certified by
/// finding every commutator with the letter in the span of the relations.
pub fn specialize_central(pr: &Presentation, letter: &str) -> Result<Presentation> {
    let t = pr.letter_index(letter).ok_or_else(|| Error::UnknownSymbol(letter.into()))?;
    let n = pr.letters().len();
    let field = pr.field();
    let mut cols: HashMap<Word, usize> = HashMap::new();
    let mut index = |w: &Word| {
        let k = cols.len();
        *cols.entry(w.clone()).or_insert(k)
    };
    let mut rel_rows = Vec::new();
    for r in pr.relations() {
        let mut row = Vec::new();
        for (w, c) in r.terms() {
            row.push((index(w), c.to_num(field)?));
        }
        rel_rows.push(row);
    }
    let mut comm_rows = Vec::new();
    let one = CycRat::one(field);
    for a in (0..n).filter(|&a| a != t) {
        let x = index(&Word(vec![a, t]));
        let y = index(&Word(vec![t, a]));
        comm_rows.push(vec![(x, one.clone()), (y, -&one)]);
    }
    let mut span = RowSpace::new(field, cols.len());
    for mut row in rel_rows {
        row.sort_by_key(|(i, _)| *i);
        span.insert(row);
    }
    for mut row in comm_rows {
        row.sort_by_key(|(i, _)| *i);
        if !span.contains(row) {
            return Err(Error::NotCentral(letter.into()));
        }
    }
    let relabel = |l: usize| if l > t { l - 1 } else { l };
    let mut relations: Vec<FreePoly> = Vec::new();
    for r in pr.relations() {
        let s = FreePoly::from_terms(
            n - 1,
            r.terms().map(|(w, c)| {
                (Word(w.0.iter().filter(|&&l| l != t).map(|&l| relabel(l)).collect()), c.clone())
            }),
        );
        if !s.is_zero() && !relations.contains(&s) {
            relations.push(s);
        }
    }
    let letters = pr.letters().iter().enumerate().filter(|(i, _)| *i != t).map(|(_, l)| l.clone()).collect();
    let weights = pr.weights().iter().enumerate().filter(|(i, _)| *i != t).map(|(_, w)| *w).collect();
    Presentation::with_weights(field, letters, weights, relations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::PolyRing;
    use crate::scalars::CyclotomicField;

    #[test]
    fn skew_plane_half() {
        let f = CyclotomicField::rationals();
        let p = PoissonAlgebra::skew(&f, &[vec![Scalar::zero(), Scalar::one(&f)], vec![-Scalar::one(&f), Scalar::zero()]])
            .unwrap();
        let q = quantization_relations(&p, &CycRat::from_frac(&f, 1, 2)).unwrap();
        assert_eq!(q.presentation.to_string(), "k< u1, u2 | u1*u2 - 3*u2*u1 >");
        assert!(q.generic);
        let c = skew_coefficients(&p).unwrap();
        let check = verify_skew_form(&q, &c).unwrap();
        assert!(check.matches);
        assert_eq!(check.q[0][1], CycRat::from_int(&f, 3));
    }

    #[test]
    fn rees_weyl_specializes_to_weyl() {
        let f = CyclotomicField::rationals();
        let ring = PolyRing::new(f.clone(), vec!["x".into(), "y".into()], vec![]).unwrap();
        let w = PoissonAlgebra::parse(ring, vec![1, 1], &[((0, 1), "1")]).unwrap();
        let q = quantization_relations(&w.rees().unwrap(), &CycRat::from_frac(&f, 1, 2)).unwrap();
        assert_eq!(
            q.presentation.to_string(),
            "k< x, y, t | x*y - y*x - t^2, x*t - t*x, y*t - t*y >"
        );
        let b = specialize_central(&q.presentation, "t").unwrap();
        assert_eq!(b.to_string(), "k< x, y | x*y - y*x - 1 >");
    }

    #[test]
    fn filtered_input_refused() {
        let f = CyclotomicField::rationals();
        assert!(matches!(
            quantization_relations(&PoissonAlgebra::weyl(&f, 1), &CycRat::zero(&f)),
            Err(Error::NotGradedQuadratic(_))
        ));
    }
}

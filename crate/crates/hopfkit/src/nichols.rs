//! Degree-truncated Nichols algebras.
//!
//! The relation ideal is realized degreewise as the kernel of the quantum
//! symmetrizer: `B(V)(d) = V^(x d) / ker S_d`. Multiplication is induced by
//! concatenation, comultiplication by the braided-shuffle coproduct of the
//! tensor algebra, both pushed through deterministic quotient bases (classes
//! of the lex-first pivot words of `S_d`). Nothing is assumed to descend:
//! every quotient step is checked and a failure aborts the construction.

use crate::bialgebra::FiniteHopf;
use crate::field::{Field, Scalar};
use crate::matrix::{tensor_chain, tensor_of_maps, Matrix, TensorIndex};
use crate::report::Report;
use crate::twist::Form;
use crate::yd::{
    braiding, check_yd, check_yd_bialgebra_graded, mult_apply, underline_op_bialgebra,
    underline_op_module, YdBialgebra, YdModule, YdMorphism,
};
use crate::Error;
use std::sync::Arc;

/// A Yetter-Drinfel'd module of diagonal type over a group algebra of an
/// abelian group: basis vector `i` has degree `g_i` and the group acts on it
/// through the character `chi_i`.
#[derive(Debug, Clone)]
pub struct DiagonalYd {
    pub module: YdModule,
    /// H-basis index of the group element g_i.
    pub grades: Vec<usize>,
    /// chi_i as a value table on the cyclic generators.
    pub characters: Vec<Vec<Scalar>>,
    /// q_ij = chi_j(g_i)
    pub braiding_params: Matrix,
}

/// Value of a character (given on cyclic generators) at a group element
/// (given as an exponent tuple).
pub fn character_value(values: &[Scalar], exponents: &[usize], field: Field) -> Scalar {
    let mut acc = field.one();
    for (v, &e) in values.iter().zip(exponents) {
        if e > 0 {
            acc = &acc * &v.pow(e as i64).expect("nonnegative power");
        }
    }
    acc
}

/// Build the diagonal module with `v_i` of degree `grades[i]` and character
/// `characters[i]`. `hopf` must be the group algebra of `orders`.
pub fn diagonal_module(
    hopf: Arc<FiniteHopf>,
    orders: &[usize],
    grades: &[Vec<usize>],
    characters: &[Vec<Scalar>],
    labels: Vec<String>,
) -> Result<DiagonalYd, Error> {
    let field = hopf.field();
    let idx = TensorIndex::new(orders.to_vec());
    if hopf.dim() != idx.total() {
        return Err(Error::ShapeMismatch(
            "hopf is not the group algebra of the given orders".into(),
        ));
    }
    let n = labels.len();
    if grades.len() != n || characters.len() != n {
        return Err(Error::ShapeMismatch("grades/characters/labels".into()));
    }
    for (i, chi) in characters.iter().enumerate() {
        if chi.len() != orders.len() {
            return Err(Error::ShapeMismatch(format!(
                "character {i} has {} values for {} generators",
                chi.len(),
                orders.len()
            )));
        }
        for (a, (v, &ord)) in chi.iter().zip(orders).enumerate() {
            if !v.pow(ord as i64)?.is_one() {
                return Err(Error::IncompatibleCharacters {
                    index: i,
                    detail: format!(
                        "character value {v} at generator {a} is not an order-{ord} root of unity"
                    ),
                });
            }
        }
    }
    let grade_indices: Vec<usize> = grades
        .iter()
        .map(|exps| {
            let reduced: Vec<usize> = exps.iter().zip(orders).map(|(&e, &o)| e % o).collect();
            idx.flatten(&reduced)
        })
        .collect();
    let mut action = vec![vec![vec![field.zero(); n]; n]; hopf.dim()];
    for h in 0..hopf.dim() {
        let exps = idx.unflatten(h);
        for i in 0..n {
            action[h][i][i] = character_value(&characters[i], &exps, field);
        }
    }
    let coaction = (0..n)
        .map(|i| vec![(grade_indices[i], i, field.one())])
        .collect();
    let module = YdModule::new(hopf, labels, action, coaction)?;
    let mut braiding_params = Matrix::zeros(field, n, n);
    for i in 0..n {
        let gi = idx.unflatten(grade_indices[i]);
        for j in 0..n {
            *braiding_params.at_mut(i, j) = character_value(&characters[j], &gi, field);
        }
    }
    Ok(DiagonalYd {
        module,
        grades: grade_indices,
        characters: characters.to_vec(),
        braiding_params,
    })
}

/// Braiding in tensor slots (j, j+1) of `V^(x d)`, 0-indexed.
fn slot_braiding(c: &Matrix, n: usize, d: usize, j: usize, field: Field) -> Matrix {
    let left = Matrix::identity(field, n.pow(j as u32));
    let right = Matrix::identity(field, n.pow((d - j - 2) as u32));
    tensor_chain(field, &[&left, c, &right]).expect("same field")
}

/// The quantum symmetrizer `S_d` on `V^(x d)` by the deterministic
/// recursion `S_d = (S_{d-1} (x) id) . sum_i c_{d-1} c_{d-2} ... c_{d-i}`.
pub fn quantum_symmetrizer(v: &YdModule, d: usize) -> Result<Matrix, Error> {
    let field = v.field();
    let n = v.dim();
    if d <= 1 {
        return Ok(Matrix::identity(field, n.pow(d as u32)));
    }
    let c = braiding(v, v)?;
    let mut sym = Matrix::identity(field, n); // S_1
    for e in 2..=d {
        let dim = n.pow(e as u32);
        // sum_{i=0}^{e-1} c_{e-2} c_{e-3} ... c_{e-1-i} (0-indexed slots)
        let mut sum = Matrix::identity(field, dim);
        let mut word = Matrix::identity(field, dim);
        for i in 1..e {
            word = word.mul(&slot_braiding(&c, n, e, e - 1 - i, field));
            sum = sum.add(&word);
        }
        let prev = tensor_of_maps(&sym, &Matrix::identity(field, n))?;
        sym = prev.mul(&sum);
    }
    Ok(sym)
}

/// Reference implementation: sum over all `d!` positive braid lifts, each
/// computed from a reduced word found by bubble sort. Independent of the
/// recursion path used by `quantum_symmetrizer`.
pub fn symmetrizer_brute_force(v: &YdModule, d: usize) -> Result<Matrix, Error> {
    let field = v.field();
    let n = v.dim();
    let dim = n.pow(d as u32);
    let c = braiding(v, v)?;
    let slots: Vec<Matrix> = if d >= 2 {
        (0..d - 1)
            .map(|j| slot_braiding(&c, n, d, j, field))
            .collect()
    } else {
        Vec::new()
    };
    let mut total = Matrix::zeros(field, dim, dim);
    let mut perm: Vec<usize> = (0..d).collect();
    loop {
        // reduced word by bubble sort: each adjacent swap is one letter
        let mut a = perm.clone();
        let mut lift = Matrix::identity(field, dim);
        loop {
            let mut swapped = false;
            for j in 0..d.saturating_sub(1) {
                if a[j] > a[j + 1] {
                    a.swap(j, j + 1);
                    lift = lift.mul(&slots[j]);
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
        total = total.add(&lift);
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(total)
}

fn next_permutation(a: &mut [usize]) -> bool {
    let n = a.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Per-degree data of the truncation.
#[derive(Debug, Clone)]
pub struct DegreeData {
    pub dim: usize,
    /// word indices in `V^(x d)` whose classes form the chosen basis
    pub pivot_words: Vec<usize>,
    /// quotient map `V^(x d) -> B(V)(d)`
    pub q: Matrix,
    /// section `B(V)(d) -> V^(x d)` (unit columns at the pivot words)
    pub section: Matrix,
    /// kernel basis of the symmetrizer (the relations in this degree)
    pub kernel: Vec<Vec<Scalar>>,
}

/// A Nichols algebra computed through degree `cap`.
#[derive(Debug, Clone)]
pub struct NicholsTruncation {
    v: YdModule,
    cap: usize,
    degrees: Vec<DegreeData>,
    /// delta_comp[d][a]: bidegree (a, d-a) shuffle-coproduct component
    /// `V^(x d) -> V^(x a) (x) V^(x (d-a))` of the tensor algebra
    delta_comp: Vec<Vec<Matrix>>,
    bialgebra: YdBialgebra,
    offsets: Vec<usize>,
    complete: bool,
}

pub const DEFAULT_CAP: usize = 6;
pub const DEFAULT_DIM_BOUND: usize = 512;

/// Compute `B(V)` through degree `cap`.
pub fn nichols_truncate(v: &YdModule, cap: usize, dim_bound: usize) -> Result<NicholsTruncation, Error> {
    assert!(cap >= 1, "cap must be at least 1");
    let field = v.field();
    let n = v.dim();

    // the braiding must satisfy the braid relation, otherwise the
    // symmetrizer kernel is not well-defined as a braid-lift sum
    if n > 0 {
        let c = braiding(v, v)?;
        let id = Matrix::identity(field, n);
        let c12 = tensor_of_maps(&c, &id)?;
        let c23 = tensor_of_maps(&id, &c)?;
        if c12.mul(&c23).mul(&c12) != c23.mul(&c12).mul(&c23) {
            let mut rep = Report::new("nichols preconditions");
            rep.fail("braid relation", &[], "braiding fails the braid relation");
            return Err(Error::verification("nichols_truncate", rep));
        }
    }

    // tensor powers and symmetrizers
    let mut powers: Vec<YdModule> = Vec::with_capacity(cap + 1);
    for d in 0..=cap {
        let size = n.pow(d as u32);
        if size > dim_bound {
            return Err(Error::DimensionBlowup {
                degree: d,
                dim: size,
                bound: dim_bound,
            });
        }
        powers.push(v.tensor_power(d)?);
    }

    let mut degrees: Vec<DegreeData> = Vec::with_capacity(cap + 1);
    for d in 0..=cap {
        let size = n.pow(d as u32);
        let dead = degrees.last().map_or(false, |prev| prev.dim == 0);
        let sym = if dead {
            Matrix::zeros(field, size, size)
        } else {
            quantum_symmetrizer(v, d)?
        };
        let (rref, pivots) = sym.rref();
        let rank = pivots.len();
        let q = Matrix::from_fn(field, rank, size, |r, c2| rref.at(r, c2).clone());
        let mut section = Matrix::zeros(field, size, rank);
        for (a, &p) in pivots.iter().enumerate() {
            *section.at_mut(p, a) = field.one();
        }
        let kernel = sym.kernel_basis();
        degrees.push(DegreeData {
            dim: rank,
            pivot_words: pivots,
            q,
            section,
            kernel,
        });
    }

    // the kernel must be a subobject in each degree, or the quotient YD
    // structure is ill-defined
    for d in 0..=cap {
        let data = &degrees[d];
        let power = &powers[d];
        for u in &data.kernel {
            for h in 0..v.hopf.dim() {
                let mut hvec = vec![field.zero(); v.hopf.dim()];
                hvec[h] = field.one();
                if !all_zero(&data.q.mul_vec(&power.act_elem(&hvec, u))) {
                    let mut rep = Report::new("nichols quotient");
                    rep.fail("kernel action stability", &[d, h], "h . ker not in ker");
                    return Err(Error::verification("nichols_truncate", rep));
                }
            }
            let co = power.coact_dense(u);
            // map the M-leg through q
            let dh = v.hopf.dim();
            let size = n.pow(d as u32);
            for hh in 0..dh {
                let slice: Vec<Scalar> = (0..size).map(|m| co[hh * size + m].clone()).collect();
                if !all_zero(&data.q.mul_vec(&slice)) {
                    let mut rep = Report::new("nichols quotient");
                    rep.fail("kernel coaction stability", &[d, hh], "delta(ker) not in H (x) ker");
                    return Err(Error::verification("nichols_truncate", rep));
                }
            }
        }
    }

    // braided-shuffle coproduct components of T(V), built by appending one
    // letter at a time: Delta(w . v) = Delta(w) (v (x) 1 + 1 (x) v)
    let mut delta_comp: Vec<Vec<Matrix>> = Vec::with_capacity(cap + 1);
    delta_comp.push(vec![Matrix::identity(field, 1)]);
    for d in 1..=cap {
        let mut row = Vec::with_capacity(d + 1);
        for a in 0..=d {
            let b = d - a;
            let rows = n.pow(a as u32) * n.pow(b as u32);
            let mut comp = Matrix::zeros(field, rows, n.pow(d as u32));
            if a >= 1 {
                // (id (x) sigma_{V^b, V}) . (delta_comp[d-1][a-1] (x) id_V)
                let sigma = braiding(&powers[b], v)?;
                let left = Matrix::identity(field, n.pow((a - 1) as u32));
                let twist = tensor_chain(field, &[&left, &sigma])?;
                let grown = tensor_of_maps(&delta_comp[d - 1][a - 1], &Matrix::identity(field, n))?;
                comp = comp.add(&twist.mul(&grown));
            }
            if b >= 1 {
                let grown = tensor_of_maps(&delta_comp[d - 1][a], &Matrix::identity(field, n))?;
                comp = comp.add(&grown);
            }
            row.push(comp);
        }
        delta_comp.push(row);
    }

    // the induced coproduct must be independent of the section: each
    // component must kill the kernel after projecting both legs
    for d in 2..=cap {
        for a in 1..d {
            let b = d - a;
            let qq = tensor_of_maps(&degrees[a].q, &degrees[b].q)?;
            let projected = qq.mul(&delta_comp[d][a]);
            for u in &degrees[d].kernel {
                if !all_zero(&projected.mul_vec(u)) {
                    let mut rep = Report::new("nichols quotient");
                    rep.fail(
                        "coproduct descent",
                        &[d, a],
                        "shuffle coproduct does not descend to the quotient",
                    );
                    return Err(Error::verification("nichols_truncate", rep));
                }
            }
        }
    }

    let dims: Vec<usize> = degrees.iter().map(|d| d.dim).collect();
    let complete = dims[cap] == 0;
    let mut offsets = vec![0usize; cap + 2];
    for d in 0..=cap {
        offsets[d + 1] = offsets[d] + dims[d];
    }
    let total = offsets[cap + 1];

    // assemble the total YD module
    let labels: Vec<String> = (0..=cap)
        .flat_map(|d| {
            degrees[d]
                .pivot_words
                .iter()
                .map(move |&w| (d, w))
                .collect::<Vec<_>>()
        })
        .map(|(d, w)| {
            if d == 0 {
                "1".to_string()
            } else {
                let idx = TensorIndex::new(vec![n; d]);
                idx.unflatten(w)
                    .iter()
                    .map(|&i| v.labels()[i].clone())
                    .collect::<Vec<_>>()
                    .join("·")
            }
        })
        .collect();
    let dh = v.hopf.dim();
    let mut action = vec![vec![vec![field.zero(); total]; total]; dh];
    let mut coaction = vec![Vec::new(); total];
    for d in 0..=cap {
        let data = &degrees[d];
        let power = &powers[d];
        let size = n.pow(d as u32);
        for (a, &w) in data.pivot_words.iter().enumerate() {
            let col = offsets[d] + a;
            let mut word_vec = vec![field.zero(); size];
            word_vec[w] = field.one();
            for h in 0..dh {
                let mut hvec = vec![field.zero(); dh];
                hvec[h] = field.one();
                let image = data.q.mul_vec(&power.act_elem(&hvec, &word_vec));
                for (k, val) in image.iter().enumerate() {
                    if !val.is_zero() {
                        action[h][col][offsets[d] + k] = val.clone();
                    }
                }
            }
            let co = power.coact_dense(&word_vec);
            for hh in 0..dh {
                let slice: Vec<Scalar> = (0..size).map(|m| co[hh * size + m].clone()).collect();
                let image = data.q.mul_vec(&slice);
                for (k, val) in image.iter().enumerate() {
                    if !val.is_zero() {
                        coaction[col].push((hh, offsets[d] + k, val.clone()));
                    }
                }
            }
        }
    }
    let module = YdModule::new(v.hopf.clone(), labels, action, coaction)?;

    // graded multiplication by concatenation + projection; blocks beyond
    // the cap are truncated to zero
    let mut mult = Matrix::zeros(field, total, total * total);
    for da in 0..=cap {
        for db in 0..=cap {
            let de = da + db;
            if de > cap {
                continue;
            }
            let (a_data, b_data, e_data) = (&degrees[da], &degrees[db], &degrees[de]);
            let nb = n.pow(db as u32);
            for (ia, &wa) in a_data.pivot_words.iter().enumerate() {
                for (ib, &wb) in b_data.pivot_words.iter().enumerate() {
                    let concat = wa * nb + wb;
                    let image = e_data.q.column(concat);
                    let col = (offsets[da] + ia) * total + (offsets[db] + ib);
                    for (k, val) in image.iter().enumerate() {
                        if !val.is_zero() {
                            *mult.at_mut(offsets[de] + k, col) = val.clone();
                        }
                    }
                }
            }
        }
    }
    let mut unit = vec![field.zero(); total];
    unit[0] = field.one();

    // graded comultiplication through the sections
    let mut comult = Matrix::zeros(field, total * total, total);
    for d in 0..=cap {
        let data = &degrees[d];
        for (i, &w) in data.pivot_words.iter().enumerate() {
            let col = offsets[d] + i;
            for a in 0..=d {
                let b = d - a;
                let qq = tensor_of_maps(&degrees[a].q, &degrees[b].q).expect("same field");
                let comp = qq.mul(&delta_comp[d][a]);
                let image = comp.column(w);
                let nb_dim = degrees[b].dim;
                for (t, val) in image.iter().enumerate() {
                    if !val.is_zero() {
                        let (ra, rb) = (t / nb_dim, t % nb_dim);
                        let row = (offsets[a] + ra) * total + (offsets[b] + rb);
                        *comult.at_mut(row, col) = comult.at(row, col) + val;
                    }
                }
            }
        }
    }
    let mut counit = vec![field.zero(); total];
    counit[0] = field.one();

    let bialgebra = YdBialgebra {
        module,
        mult,
        unit,
        comult,
        counit,
    };
    Ok(NicholsTruncation {
        v: v.clone(),
        cap,
        degrees,
        delta_comp,
        bialgebra,
        offsets,
        complete,
    })
}

fn all_zero(v: &[Scalar]) -> bool {
    v.iter().all(|x| x.is_zero())
}

impl NicholsTruncation {
    pub fn generator_module(&self) -> &YdModule {
        &self.v
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn complete(&self) -> bool {
        self.complete
    }

    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.dim).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.offsets[self.cap + 1]
    }

    pub fn offset(&self, d: usize) -> usize {
        self.offsets[d]
    }

    pub fn degree_data(&self, d: usize) -> &DegreeData {
        &self.degrees[d]
    }

    /// Degree tag of each total-space basis element.
    pub fn degree_tags(&self) -> Vec<usize> {
        let mut tags = Vec::with_capacity(self.total_dim());
        for (d, data) in self.degrees.iter().enumerate() {
            tags.extend(std::iter::repeat(d).take(data.dim));
        }
        tags
    }

    pub fn bialgebra(&self) -> &YdBialgebra {
        &self.bialgebra
    }

    /// Shuffle-coproduct component of `T(V)` in bidegree `(a, d-a)`.
    pub fn delta_component(&self, d: usize, a: usize) -> &Matrix {
        &self.delta_comp[d][a]
    }

    /// Run the full (degree-capped) braided bialgebra axiom suite, plus
    /// the defining property that primitives live in degree one only; a
    /// nonzero higher primitive space marks a broken quotient.
    pub fn verify(&self) -> Report {
        let tags = self.degree_tags();
        let mut rep = check_yd_bialgebra_graded(&self.bialgebra, Some((&tags, self.cap)));
        for d in 2..=self.cap {
            rep.tick();
            let prim = self.primitives(d);
            if !prim.is_empty() {
                rep.fail(
                    "primitives",
                    &[d],
                    format!("{} primitive(s) above degree one", prim.len()),
                );
            }
        }
        rep
    }

    /// Basis of the primitive elements in degree `d`: the joint kernel of
    /// all proper coproduct components. Must be everything for `d = 1` and
    /// empty for `2 <= d <= cap`; anything else is an implementation bug.
    pub fn primitives(&self, d: usize) -> Vec<Vec<Scalar>> {
        assert!(d <= self.cap);
        let field = self.v.field();
        let dim_d = self.degrees[d].dim;
        if d <= 1 {
            return (0..dim_d)
                .map(|i| {
                    let mut v = vec![field.zero(); dim_d];
                    v[i] = field.one();
                    v
                })
                .collect();
        }
        let mut stacked_rows: Vec<Vec<Scalar>> = Vec::new();
        for a in 1..d {
            let b = d - a;
            let qq = tensor_of_maps(&self.degrees[a].q, &self.degrees[b].q).expect("same field");
            let comp = qq
                .mul(&self.delta_comp[d][a])
                .mul(&self.degrees[d].section);
            for r in 0..comp.rows() {
                stacked_rows.push(comp.row(r));
            }
        }
        if stacked_rows.is_empty() {
            return Vec::new();
        }
        Matrix::from_rows(field, stacked_rows).kernel_basis()
    }

    /// Hilbert series as a plain-text line.
    pub fn hilbert_text(&self) -> String {
        let dims = self.dims();
        let strs: Vec<String> = dims.iter().map(|d| d.to_string()).collect();
        format!(
            "[{}] total {}{}",
            strs.join(", "),
            self.total_dim(),
            if self.complete { " (complete)" } else { " (truncated)" }
        )
    }
}

/// Lift a degree-one morphism to the truncations: `f^(x d)` pushed through
/// the quotients. Errors with `DoesNotDescend` when `f` fails to map the
/// relations of the source into those of the target (i.e. it is not a YD
/// morphism), and verifies the result is a (graded) algebra and coalgebra
/// map that is onto/one-one degreewise iff `f` is.
pub fn lift_map(
    f: &YdMorphism,
    src: &NicholsTruncation,
    tgt: &NicholsTruncation,
) -> Result<Matrix, Error> {
    if src.cap != tgt.cap {
        return Err(Error::ShapeMismatch("truncation caps differ".into()));
    }
    let field = src.v.field();
    let cap = src.cap;
    let mut blocks: Vec<Matrix> = Vec::with_capacity(cap + 1);
    for d in 0..=cap {
        let mut fpow = Matrix::identity(field, 1);
        for _ in 0..d {
            fpow = tensor_of_maps(&fpow, &f.matrix)?;
        }
        let pushed = tgt.degrees[d].q.mul(&fpow);
        for u in &src.degrees[d].kernel {
            if !all_zero(&pushed.mul_vec(u)) {
                return Err(Error::DoesNotDescend);
            }
        }
        blocks.push(pushed.mul(&src.degrees[d].section));
    }
    let total_src = src.total_dim();
    let total_tgt = tgt.total_dim();
    let mut lifted = Matrix::zeros(field, total_tgt, total_src);
    for (d, block) in blocks.iter().enumerate() {
        for r in 0..block.rows() {
            for c in 0..block.cols() {
                if !block.at(r, c).is_zero() {
                    *lifted.at_mut(tgt.offsets[d] + r, src.offsets[d] + c) = block.at(r, c).clone();
                }
            }
        }
    }

    let mut rep = Report::new("lifted map");
    // graded algebra map within the caps
    let src_tags = src.degree_tags();
    for i in 0..total_src {
        for j in 0..total_src {
            if src_tags[i] + src_tags[j] > cap {
                continue;
            }
            rep.tick();
            let mut ei = vec![field.zero(); total_src];
            ei[i] = field.one();
            let mut ej = vec![field.zero(); total_src];
            ej[j] = field.one();
            let lhs = lifted.mul_vec(&mult_apply(&src.bialgebra.mult, &ei, &ej));
            let rhs = mult_apply(&tgt.bialgebra.mult, &lifted.column(i), &lifted.column(j));
            if lhs != rhs {
                rep.fail("algebra map", &[i, j], "B(f)(xy) != B(f)(x)B(f)(y)");
            }
        }
    }
    // coalgebra map
    let lift2 = tensor_of_maps(&lifted, &lifted)?;
    rep.tick();
    if lift2.mul(&src.bialgebra.comult) != tgt.bialgebra.comult.mul(&lifted) {
        rep.fail("coalgebra map", &[], "Delta B(f) != (B(f) (x) B(f)) Delta");
    }
    // onto / one-one degreewise iff f is
    let f_rank = f.matrix.rank();
    let f_onto = f_rank == tgt.v.dim();
    let f_injective = f_rank == src.v.dim();
    for (d, block) in blocks.iter().enumerate() {
        rep.tick();
        let r = block.rank();
        if f_onto && r != tgt.degrees[d].dim {
            rep.fail("degreewise onto", &[d], format!("rank {r} < {}", tgt.degrees[d].dim));
        }
        if f_injective && r != src.degrees[d].dim {
            rep.fail("degreewise one-one", &[d], format!("rank {r} < {}", src.degrees[d].dim));
        }
    }
    rep.into_result()?;
    Ok(lifted)
}

/// Lift a degree-(1,1) pairing to the truncations by the two-sided
/// recursion, cross-checking the two expansion routes against each other,
/// and checking descent through both quotients.
///
/// `beta.at(i, j)` pairs the i-th generator of `w_side` with the j-th of
/// `v_side`.
pub fn lift_pairing(
    beta: &Matrix,
    w_side: &NicholsTruncation,
    v_side: &NicholsTruncation,
) -> Result<Form, Error> {
    if w_side.cap != v_side.cap {
        return Err(Error::ShapeMismatch("truncation caps differ".into()));
    }
    let field = w_side.v.field();
    let cap = w_side.cap;
    let (nw, nv) = (w_side.v.dim(), v_side.v.dim());
    if beta.rows() != nw || beta.cols() != nv {
        return Err(Error::ShapeMismatch("pairing matrix shape".into()));
    }
    let s_inv_v = v_side.v.hopf.antipode_inverse()?.clone();

    // route A: expand the first argument by letters via the V-side
    // coproduct component (1, d-1):
    // beta(u t', r) = beta(u, S^{-1}(r2_(-1)) . r1) beta(t', r2_(0))
    let mut route_a: Vec<Matrix> = vec![Matrix::identity(field, 1)];
    // route B: expand the second argument by letters via the W-side
    // coproduct component (1, d-1):
    // beta(t, r' v) = beta(t^(2), r') beta(t^(1), v)
    let mut route_b: Vec<Matrix> = vec![Matrix::identity(field, 1)];
    for d in 1..=cap {
        let (rows, cols) = (nw.pow(d as u32), nv.pow(d as u32));
        let mut pa = Matrix::zeros(field, rows, cols);
        let vd1 = &v_side.delta_comp[d][1]; // V^d -> V (x) V^{d-1}
        let nv_rest = nv.pow((d - 1) as u32);
        let v_rest_power = v_side.v.tensor_power(d - 1)?;
        for i in 0..rows {
            let (i0, irest) = (i / nw.pow((d - 1) as u32), i % nw.pow((d - 1) as u32));
            for j in 0..cols {
                let mut acc = field.zero();
                let col = vd1.column(j);
                for (t, coeff) in col.iter().enumerate() {
                    if coeff.is_zero() {
                        continue;
                    }
                    let (l, m) = (t / nv_rest, t % nv_rest);
                    // coaction of the degree-(d-1) leg
                    for (h, m0, c2) in v_rest_power.coact_basis(m) {
                        // S^{-1}(e_h) . e_l in V
                        let mut lv = vec![field.zero(); nv];
                        lv[l] = field.one();
                        let twisted = v_side.v.act_elem(&s_inv_v.column(*h), &lv);
                        let mut pair1 = field.zero();
                        for (k, tv) in twisted.iter().enumerate() {
                            if !tv.is_zero() {
                                pair1 = &pair1 + &(tv * beta.at(i0, k));
                            }
                        }
                        if pair1.is_zero() {
                            continue;
                        }
                        let rest = route_a[d - 1].at(irest, *m0);
                        if !rest.is_zero() {
                            acc = &acc + &(&(&(coeff * c2) * &pair1) * rest);
                        }
                    }
                }
                *pa.at_mut(i, j) = acc;
            }
        }
        route_a.push(pa);

        let mut pb = Matrix::zeros(field, rows, cols);
        let wd1 = &w_side.delta_comp[d][1]; // W^d -> W (x) W^{d-1}
        let nw_rest = nw.pow((d - 1) as u32);
        for i in 0..rows {
            let col = wd1.column(i);
            for j in 0..cols {
                let (jrest, jlast) = (j / nv, j % nv);
                let mut acc = field.zero();
                for (t, coeff) in col.iter().enumerate() {
                    if coeff.is_zero() {
                        continue;
                    }
                    let (t1, t2) = (t / nw_rest, t % nw_rest);
                    let rest = route_b[d - 1].at(t2, jrest);
                    if rest.is_zero() {
                        continue;
                    }
                    let single = beta.at(t1, jlast);
                    if !single.is_zero() {
                        acc = &acc + &(&(coeff * rest) * single);
                    }
                }
                *pb.at_mut(i, j) = acc;
            }
        }
        route_b.push(pb);

        if route_a[d] != route_b[d] {
            return Err(Error::InconsistentPairing(format!(
                "the two recursion routes disagree in degree {d}"
            )));
        }
        // descent through both quotients
        for u in &w_side.degrees[d].kernel {
            let left = route_a[d].transpose().mul_vec(u);
            if !all_zero(&left) {
                return Err(Error::InconsistentPairing(format!(
                    "pairing does not vanish on the left relations in degree {d}"
                )));
            }
        }
        for u in &v_side.degrees[d].kernel {
            if !all_zero(&route_a[d].mul_vec(u)) {
                return Err(Error::InconsistentPairing(format!(
                    "pairing does not vanish on the right relations in degree {d}"
                )));
            }
        }
    }

    // assemble the total form: diagonal in degree, zero otherwise
    let (tw, tv) = (w_side.total_dim(), v_side.total_dim());
    let mut matrix = Matrix::zeros(field, tw, tv);
    for d in 0..=cap {
        let wdata = &w_side.degrees[d];
        let vdata = &v_side.degrees[d];
        for (a, &wp) in wdata.pivot_words.iter().enumerate() {
            for (b, &vp) in vdata.pivot_words.iter().enumerate() {
                let val = route_a[d].at(wp, vp).clone();
                if !val.is_zero() {
                    *matrix.at_mut(w_side.offsets[d] + a, v_side.offsets[d] + b) = val;
                }
            }
        }
    }
    Ok(Form::new(
        w_side.bialgebra.module.labels().to_vec(),
        v_side.bialgebra.module.labels().to_vec(),
        matrix,
    ))
}

/// Check that `B(V^op) = B(V)^op`: equal Hilbert series, and the identity
/// on V extends to a bialgebra isomorphism from the freshly computed
/// truncation over `H^op` onto the op-transport of this one. Returns the
/// op-side truncation and the isomorphism matrix.
pub fn underline_op_nichols(n: &NicholsTruncation) -> Result<(NicholsTruncation, Matrix), Error> {
    let field = n.v.field();
    let vop = underline_op_module(&n.v)?;
    let nop = nichols_truncate(&vop, n.cap, DEFAULT_DIM_BOUND.max(n.total_dim()))?;
    let rop = underline_op_bialgebra(n.bialgebra())?;
    let mut rep = Report::new("B(V^op) = B(V)^op");
    rep.tick();
    if nop.dims() != n.dims() {
        rep.fail(
            "hilbert series",
            &[],
            format!("{:?} vs {:?}", nop.dims(), n.dims()),
        );
        return rep.into_result().map(|_| unreachable!());
    }
    // the extension of the identity: a word v1...vd of B(V^op) maps to the
    // op-product v1 .op v2 .op ... .op vd = vd ... v1 in B(V)
    let nv = n.v.dim();
    let mut iso = Matrix::zeros(field, n.total_dim(), nop.total_dim());
    for d in 0..=n.cap {
        let rev = reverse_word_matrix(field, nv, d);
        let pushed = n.degrees[d].q.mul(&rev);
        for u in &nop.degrees[d].kernel {
            if !all_zero(&pushed.mul_vec(u)) {
                rep.fail("descent", &[d], "identity does not extend through the quotients");
                return rep.into_result().map(|_| unreachable!());
            }
        }
        let block = pushed.mul(&nop.degrees[d].section);
        for r in 0..block.rows() {
            for c in 0..block.cols() {
                if !block.at(r, c).is_zero() {
                    *iso.at_mut(n.offsets[d] + r, nop.offsets[d] + c) = block.at(r, c).clone();
                }
            }
        }
    }
    // bijective, algebra + coalgebra map onto R^op
    rep.tick();
    if iso.inverse().is_err() {
        rep.fail("bijectivity", &[], "extension of the identity is singular");
    }
    let tags = nop.degree_tags();
    let total = nop.total_dim();
    for i in 0..total {
        for j in 0..total {
            if tags[i] + tags[j] > n.cap {
                continue;
            }
            rep.tick();
            let mut ei = vec![field.zero(); total];
            ei[i] = field.one();
            let mut ej = vec![field.zero(); total];
            ej[j] = field.one();
            let lhs = iso.mul_vec(&mult_apply(&nop.bialgebra.mult, &ei, &ej));
            let rhs = mult_apply(&rop.mult, &iso.column(i), &iso.column(j));
            if lhs != rhs {
                rep.fail("algebra map", &[i, j], "iso does not respect products");
            }
        }
    }
    rep.tick();
    let iso2 = tensor_of_maps(&iso, &iso)?;
    if iso2.mul(&nop.bialgebra.comult) != rop.comult.mul(&iso) {
        rep.fail("coalgebra map", &[], "iso does not respect coproducts");
    }
    // in-category morphism over H^op
    let morphism = YdMorphism::in_category(
        nop.bialgebra.module.clone(),
        rop.module.clone(),
        iso.clone(),
    );
    rep.absorb(crate::yd::check_yd_morphism(&morphism));
    rep.into_result()?;
    Ok((nop, iso))
}

/// The permutation on `V^(x d)` reversing tensor factors.
fn reverse_word_matrix(field: Field, n: usize, d: usize) -> Matrix {
    let size = n.pow(d as u32);
    let idx = TensorIndex::new(vec![n; d]);
    let mut m = Matrix::zeros(field, size, size);
    for w in 0..size {
        let mut digits = idx.unflatten(w);
        digits.reverse();
        *m.at_mut(idx.flatten(&digits), w) = field.one();
    }
    m
}

/// Sanity report wrapping `check_yd` of the generator module plus the
/// truncation's own graded bialgebra suite.
pub fn verify_truncation(n: &NicholsTruncation) -> Report {
    let mut rep = Report::new("nichols truncation");
    rep.absorb(check_yd(&n.v));
    rep.absorb(n.verify());
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bialgebra::group_algebra;

    fn q() -> Field {
        Field::Rationals
    }

    /// one-dimensional diagonal module over k[Z/m] with chi(g) = q_param
    fn rank_one(m: usize, field: Field, q_param: i64) -> DiagonalYd {
        let h = Arc::new(group_algebra(&[m], field));
        diagonal_module(
            h,
            &[m],
            &[vec![1]],
            &[vec![field.from_i64(q_param)]],
            vec!["x".into()],
        )
        .unwrap()
    }

    #[test]
    fn symmetrizer_degree_two_examples() {
        // q = -1: S_2(x (x) x) = (1 + (-1)) x (x) x = 0
        let v = rank_one(2, q(), -1);
        let s2 = quantum_symmetrizer(&v.module, 2).unwrap();
        assert!(s2.is_zero());
        // q = 2 over F_7: S_2(x (x) x) = 3 x (x) x
        let f7 = Field::prime(7).unwrap();
        let v7 = rank_one(3, f7, 2);
        let s2 = quantum_symmetrizer(&v7.module, 2).unwrap();
        assert_eq!(s2, Matrix::from_i64(f7, 1, 1, &[3]));
    }

    #[test]
    fn symmetrizer_degree_three_is_q_factorial() {
        // S_3(x^(x3)) = (1+q)(1+q+q^2); zero in F_7 with q = 2
        let f7 = Field::prime(7).unwrap();
        let v7 = rank_one(3, f7, 2);
        let s3 = quantum_symmetrizer(&v7.module, 3).unwrap();
        assert!(s3.is_zero());
        // over Q with q = 1 it is 3! = 6
        let v1 = rank_one(1, q(), 1);
        let s3 = quantum_symmetrizer(&v1.module, 3).unwrap();
        assert_eq!(s3, Matrix::from_i64(q(), 1, 1, &[6]));
    }

    #[test]
    fn recursion_matches_brute_force() {
        let f7 = Field::prime(7).unwrap();
        let modules = vec![
            rank_one(2, q(), -1).module,
            rank_one(3, f7, 2).module,
            two_dim_minus_one().module,
        ];
        for v in &modules {
            for d in 0..=4 {
                assert_eq!(
                    quantum_symmetrizer(v, d).unwrap(),
                    symmetrizer_brute_force(v, d).unwrap(),
                    "degree {d}"
                );
            }
        }
    }

    /// two-dimensional module with all q_ij = -1 (quantum exterior algebra)
    fn two_dim_minus_one() -> DiagonalYd {
        let h = Arc::new(group_algebra(&[2], q()));
        diagonal_module(
            h,
            &[2],
            &[vec![1], vec![1]],
            &[vec![q().from_i64(-1)], vec![q().from_i64(-1)]],
            vec!["x".into(), "y".into()],
        )
        .unwrap()
    }

    #[test]
    fn sweedler_truncation_dims() {
        let v = rank_one(2, q(), -1);
        let n = nichols_truncate(&v.module, 4, 512).unwrap();
        assert_eq!(n.dims(), vec![1, 1, 0, 0, 0]);
        assert!(n.complete());
        assert!(n.verify().ok());
    }

    #[test]
    fn taft_truncation_dims() {
        let f7 = Field::prime(7).unwrap();
        let v = rank_one(3, f7, 2);
        let n = nichols_truncate(&v.module, 4, 512).unwrap();
        assert_eq!(n.dims(), vec![1, 1, 1, 0, 0]);
        assert!(n.complete());
        assert!(n.verify().ok());
    }

    #[test]
    fn quantum_plane_truncation_dims() {
        let v = two_dim_minus_one();
        let n = nichols_truncate(&v.module, 4, 512).unwrap();
        assert_eq!(n.dims(), vec![1, 2, 1, 0, 0]);
        assert_eq!(n.total_dim(), 4);
        assert!(n.complete());
        assert!(n.verify().ok());
    }

    #[test]
    fn divided_power_truncation_is_incomplete() {
        // trivial braiding (q = 1) over Q: the polynomial algebra, never
        // finite; dims all 1 up to the cap
        let v = rank_one(1, q(), 1);
        let n = nichols_truncate(&v.module, 3, 512).unwrap();
        assert_eq!(n.dims(), vec![1, 1, 1, 1]);
        assert!(!n.complete());
        assert!(n.verify().ok());
    }

    #[test]
    fn hilbert_series_symmetry_for_complete_truncations() {
        let v = two_dim_minus_one();
        let n = nichols_truncate(&v.module, 4, 512).unwrap();
        let dims = n.dims();
        let top = dims.iter().rposition(|&d| d > 0).unwrap();
        for d in 0..=top {
            assert_eq!(dims[d], dims[top - d], "poincare duality at {d}");
        }
    }

    #[test]
    fn primitives_are_degree_one_only() {
        let f7 = Field::prime(7).unwrap();
        let v = rank_one(3, f7, 2);
        let n = nichols_truncate(&v.module, 4, 512).unwrap();
        assert_eq!(n.primitives(1).len(), 1);
        for d in 2..=4 {
            assert!(n.primitives(d).is_empty(), "degree {d}");
        }
        let v2 = two_dim_minus_one();
        let n2 = nichols_truncate(&v2.module, 4, 512).unwrap();
        assert_eq!(n2.primitives(1).len(), 2);
        assert!(n2.primitives(2).is_empty());
    }

    #[test]
    fn free_algebra_has_spurious_primitives() {
        // if S_2 were replaced by the identity (no relations), the free
        // algebra T(V) would keep x (x) x as a degree-2 primitive when
        // q = -1: the (1,1) shuffle component is (1 + q) x (x) x = 0, so
        // the kernel of the unquotiented component is everything
        let v = rank_one(2, q(), -1);
        let n = nichols_truncate(&v.module, 2, 512).unwrap();
        let comp = n.delta_component(2, 1);
        assert_eq!(comp.kernel_basis().len(), 1);
        // the genuine truncation removes it: the degree-2 component is 0
        assert_eq!(n.degree_data(2).dim, 0);
        assert!(n.primitives(2).is_empty());
    }

    #[test]
    fn lift_identity_and_zero_maps() {
        let v = two_dim_minus_one();
        let n = nichols_truncate(&v.module, 4, 512).unwrap();
        let id = YdMorphism::in_category(
            v.module.clone(),
            v.module.clone(),
            Matrix::identity(q(), 2),
        );
        let lifted = lift_map(&id, &n, &n).unwrap();
        assert_eq!(lifted, Matrix::identity(q(), n.total_dim()));

        let zero = YdMorphism::in_category(
            v.module.clone(),
            v.module.clone(),
            Matrix::zeros(q(), 2, 2),
        );
        let lifted0 = lift_map(&zero, &n, &n).unwrap();
        // kills positive degrees, identity on degree 0
        assert!(lifted0.at(0, 0).is_one());
        for i in 1..n.total_dim() {
            assert!(lifted0.column(i).iter().all(|c| c.is_zero()));
        }
    }

    #[test]
    fn lift_projection_is_onto() {
        // project the 2-dim module onto its first coordinate
        let v = two_dim_minus_one();
        let w = rank_one(2, q(), -1);
        let n_src = nichols_truncate(&v.module, 4, 512).unwrap();
        let n_tgt = nichols_truncate(&w.module, 4, 512).unwrap();
        let proj = YdMorphism::in_category(
            v.module.clone(),
            w.module.clone(),
            Matrix::from_i64(q(), 1, 2, &[1, 0]),
        );
        let lifted = lift_map(&proj, &n_src, &n_tgt).unwrap();
        assert_eq!(lifted.rank(), n_tgt.total_dim());
    }

    #[test]
    fn non_morphism_does_not_descend() {
        // swapping the generators of a module with distinct characters is
        // not a YD morphism; acting on the q = -1 one-dim vs q = 1
        let h = Arc::new(group_algebra(&[2], q()));
        let v = diagonal_module(
            h,
            &[2],
            &[vec![1], vec![1]],
            &[vec![q().from_i64(-1)], vec![q().from_i64(1)]],
            vec!["x".into(), "y".into()],
        )
        .unwrap();
        let n = nichols_truncate(&v.module, 3, 512).unwrap();
        let swap = YdMorphism::in_category(
            v.module.clone(),
            v.module.clone(),
            Matrix::from_i64(q(), 2, 2, &[0, 1, 1, 0]),
        );
        assert!(lift_map(&swap, &n, &n).is_err());
    }

    #[test]
    fn lift_pairing_rank_one_minus_one() {
        // q = -1, beta(x_W, x_V) = 1: B(beta) is the 2x2 identity pairing
        // on k[x]/(x^2)
        let w = rank_one(2, q(), -1);
        let v = rank_one(2, q(), -1);
        let nw = nichols_truncate(&w.module, 4, 512).unwrap();
        let nv = nichols_truncate(&v.module, 4, 512).unwrap();
        let beta = Matrix::identity(q(), 1);
        let form = lift_pairing(&beta, &nw, &nv).unwrap();
        assert_eq!(form.matrix, Matrix::identity(q(), 2));
    }

    // Over F_7 with q_W = 2 (so eta(z) = 2) the datum forces q_V = 4 =
    // q_W^{-1}. Route (B.3): B(beta)(x^2, x^2) = (1 + q_W) beta(x,x)^2 = 3.
    // Route (B.1): (1 + q_V) q_V^{-1} = 5 * 2 = 10 = 3 mod 7. Both routes
    // agree on 3.
    #[test]
    fn lift_pairing_taft_value() {
        let f7 = Field::prime(7).unwrap();
        let w = rank_one(3, f7, 2);
        let v = rank_one(3, f7, 4);
        let nw = nichols_truncate(&w.module, 4, 512).unwrap();
        let nv = nichols_truncate(&v.module, 4, 512).unwrap();
        let beta = Matrix::identity(f7, 1);
        let form = lift_pairing(&beta, &nw, &nv).unwrap();
        assert_eq!(nw.dims(), vec![1, 1, 1, 0, 0]);
        // degree (0,0) pairing is 1
        assert!(form.matrix.at(0, 0).is_one());
        // degree (2,2) entry: offsets are 2 on both sides
        assert_eq!(*form.matrix.at(2, 2), f7.from_i64(3));
        // nondegenerate in every degree: diagonal blocks have full rank
        assert_eq!(form.matrix.rank(), 3);
    }

    #[test]
    fn lift_pairing_mismatched_parameters_fails() {
        // q_W = 2, q_V = 2 violates the compatibility the recursion needs:
        // the two routes disagree (3 vs 5 in degree 2)
        let f7 = Field::prime(7).unwrap();
        let w = rank_one(3, f7, 2);
        let v = rank_one(3, f7, 2);
        let nw = nichols_truncate(&w.module, 4, 512).unwrap();
        let nv = nichols_truncate(&v.module, 4, 512).unwrap();
        let beta = Matrix::identity(f7, 1);
        assert!(matches!(
            lift_pairing(&beta, &nw, &nv),
            Err(Error::InconsistentPairing(_))
        ));
    }

    #[test]
    fn underline_op_nichols_round_trip() {
        let v = rank_one(2, q(), -1);
        let n = nichols_truncate(&v.module, 4, 512).unwrap();
        let (nop, iso) = underline_op_nichols(&n).unwrap();
        assert_eq!(nop.dims(), n.dims());
        assert_eq!(iso.rank(), n.total_dim());

        let f7 = Field::prime(7).unwrap();
        let v7 = rank_one(3, f7, 2);
        let n7 = nichols_truncate(&v7.module, 4, 512).unwrap();
        let (nop7, _) = underline_op_nichols(&n7).unwrap();
        assert_eq!(nop7.dims(), vec![1, 1, 1, 0, 0]);

        // trivial braiding over the trivial group: both sides coincide
        let v1 = rank_one(1, q(), 1);
        let n1 = nichols_truncate(&v1.module, 3, 512).unwrap();
        let (nop1, iso1) = underline_op_nichols(&n1).unwrap();
        assert_eq!(nop1.dims(), n1.dims());
        assert_eq!(iso1, Matrix::identity(q(), n1.total_dim()));
    }

    #[test]
    fn dimension_bound_aborts() {
        let v = two_dim_minus_one();
        assert!(matches!(
            nichols_truncate(&v.module, 6, 32),
            Err(Error::DimensionBlowup { .. })
        ));
    }

    #[test]
    fn zero_dimensional_module_truncates_to_k() {
        let h = Arc::new(group_algebra(&[1], q()));
        let v = YdModule::new(h, vec![], vec![vec![]], vec![]).unwrap();
        let n = nichols_truncate(&v, 3, 512).unwrap();
        assert_eq!(n.dims(), vec![1, 0, 0, 0]);
        assert!(n.complete());
        assert_eq!(n.total_dim(), 1);
    }
}

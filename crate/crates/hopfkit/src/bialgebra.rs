//! Finite-dimensional bialgebras and Hopf algebras by structure constants.
//!
//! Multiplication is stored densely (`mult[i][j]` = coefficient vector of
//! `e_i e_j`), comultiplication sparsely as `(left, right, coeff)` triples;
//! grouplike-heavy algebras keep the triple lists short. Axiom checkers
//! return exhaustive failure lists, not booleans.

use crate::field::{Field, Scalar};
use crate::matrix::Matrix;
use crate::report::Report;
use crate::{Error, TensorIndex};

pub type ComultTerm = (usize, usize, Scalar);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteBialgebra {
    field: Field,
    dim: usize,
    labels: Vec<String>,
    /// mult[i][j] = coordinates of e_i * e_j
    mult: Vec<Vec<Vec<Scalar>>>,
    unit: Vec<Scalar>,
    /// comult[i] = triples (j, k, c) meaning Delta(e_i) contains c * e_j (x) e_k
    comult: Vec<Vec<ComultTerm>>,
    counit: Vec<Scalar>,
}

impl FiniteBialgebra {
    pub fn new(
        field: Field,
        labels: Vec<String>,
        mult: Vec<Vec<Vec<Scalar>>>,
        unit: Vec<Scalar>,
        comult: Vec<Vec<ComultTerm>>,
        counit: Vec<Scalar>,
    ) -> Result<Self, Error> {
        let dim = labels.len();
        let shape_err = |what: &str| Err(Error::ShapeMismatch(format!("{what} (dim {dim})")));
        if mult.len() != dim || mult.iter().any(|r| r.len() != dim) {
            return shape_err("mult tensor");
        }
        if mult
            .iter()
            .flatten()
            .any(|v| v.len() != dim || v.iter().any(|s| s.field() != field))
        {
            return shape_err("mult coefficient vectors");
        }
        if unit.len() != dim || counit.len() != dim {
            return shape_err("unit/counit vectors");
        }
        if comult.len() != dim
            || comult
                .iter()
                .flatten()
                .any(|(j, k, c)| *j >= dim || *k >= dim || c.field() != field)
        {
            return shape_err("comult triples");
        }
        Ok(FiniteBialgebra {
            field,
            dim,
            labels,
            mult,
            unit,
            comult,
            counit,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn unit_vec(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn counit_vec(&self) -> &[Scalar] {
        &self.counit
    }

    pub fn mult_basis(&self, i: usize, j: usize) -> &[Scalar] {
        &self.mult[i][j]
    }

    pub fn comult_basis(&self, i: usize) -> &[ComultTerm] {
        &self.comult[i]
    }

    pub fn counit_of(&self, v: &[Scalar]) -> Scalar {
        let mut acc = self.field.zero();
        for (i, x) in v.iter().enumerate() {
            if !x.is_zero() {
                acc = &acc + &(x * &self.counit[i]);
            }
        }
        acc
    }

    /// Bilinear product of coordinate vectors.
    pub fn product(&self, v: &[Scalar], w: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim];
        for (i, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in w.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, m) in self.mult[i][j].iter().enumerate() {
                    if !m.is_zero() {
                        out[k] = &out[k] + &(&ab * m);
                    }
                }
            }
        }
        out
    }

    /// Iterated coproduct of a basis element: sparse list of
    /// `(legs, coeff)` with `legs.len() == n`, where `n = 1` is the element
    /// itself. `n = 2` is Delta, `n = 3` is (Delta (x) id) Delta, etc.
    pub fn comult_power_basis(&self, i: usize, n: usize) -> Vec<(Vec<usize>, Scalar)> {
        assert!(n >= 1);
        let mut terms = vec![(vec![i], self.field.one())];
        for _ in 1..n {
            let mut next = Vec::new();
            for (legs, c) in &terms {
                // expand the first leg; coassociativity makes the slot irrelevant
                let head = legs[0];
                for (j, k, d) in &self.comult[head] {
                    let mut new_legs = Vec::with_capacity(legs.len() + 1);
                    new_legs.push(*j);
                    new_legs.push(*k);
                    new_legs.extend_from_slice(&legs[1..]);
                    next.push((new_legs, c * d));
                }
            }
            terms = next;
        }
        terms
    }

    /// Dense coproduct of a vector, flattened row-major into `k^(d^2)`.
    pub fn comult_dense(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim * self.dim];
        for (i, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, k, c) in &self.comult[i] {
                let idx = j * self.dim + k;
                out[idx] = &out[idx] + &(a * c);
            }
        }
        out
    }

    /// Multiplication as a matrix `k^(d^2) -> k^d`.
    pub fn mult_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.dim, self.dim * self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                for (k, c) in self.mult[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        *m.at_mut(k, i * self.dim + j) = c.clone();
                    }
                }
            }
        }
        m
    }

    /// Comultiplication as a matrix `k^d -> k^(d^2)`.
    pub fn comult_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.dim * self.dim, self.dim);
        for i in 0..self.dim {
            for (j, k, c) in &self.comult[i] {
                let row = j * self.dim + k;
                *m.at_mut(row, i) = m.at(row, i) + c;
            }
        }
        m
    }

    /// Product in the tensor-square algebra `A (x) A` of dense vectors.
    fn tensor_square_product(&self, v: &[Scalar], w: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim;
        let mut out = vec![self.field.zero(); d * d];
        for (iv, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let (i1, i2) = (iv / d, iv % d);
            for (jw, b) in w.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let (j1, j2) = (jw / d, jw % d);
                let ab = a * b;
                for (k1, c1) in self.mult[i1][j1].iter().enumerate() {
                    if c1.is_zero() {
                        continue;
                    }
                    for (k2, c2) in self.mult[i2][j2].iter().enumerate() {
                        if c2.is_zero() {
                            continue;
                        }
                        let idx = k1 * d + k2;
                        out[idx] = &out[idx] + &(&(&ab * c1) * c2);
                    }
                }
            }
        }
        out
    }
}

fn fmt_vec(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(|s| s.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn vec_eq(a: &[Scalar], b: &[Scalar]) -> bool {
    a == b
}

/// Exhaustive verification of all bialgebra axioms on basis elements.
pub fn check_bialgebra(b: &FiniteBialgebra) -> Report {
    let mut rep = Report::new(format!("bialgebra axioms (dim {})", b.dim));
    let d = b.dim;
    let basis = |i: usize| {
        let mut v = vec![b.field.zero(); d];
        v[i] = b.field.one();
        v
    };

    // associativity and unit law
    for i in 0..d {
        for j in 0..d {
            rep.tick();
            let ij = b.product(&basis(i), &basis(j));
            for l in 0..d {
                rep.tick();
                let left = b.product(&ij, &basis(l));
                let right = b.product(&basis(i), &b.product(&basis(j), &basis(l)));
                if !vec_eq(&left, &right) {
                    rep.fail(
                        "associativity",
                        &[i, j, l],
                        format!("{} vs {}", fmt_vec(&left), fmt_vec(&right)),
                    );
                }
            }
        }
        rep.tick();
        let lu = b.product(&b.unit, &basis(i));
        let ru = b.product(&basis(i), &b.unit);
        if !vec_eq(&lu, &basis(i)) || !vec_eq(&ru, &basis(i)) {
            rep.fail("unit law", &[i], format!("1*e = {}, e*1 = {}", fmt_vec(&lu), fmt_vec(&ru)));
        }
    }

    // coassociativity and counit law
    for i in 0..d {
        rep.tick();
        let mut lhs = vec![b.field.zero(); d * d * d];
        let mut rhs = lhs.clone();
        for (legs, c) in b.comult_power_basis(i, 3) {
            let idx = (legs[0] * d + legs[1]) * d + legs[2];
            lhs[idx] = &lhs[idx] + &c;
        }
        // (id (x) Delta) Delta: expand the second leg instead
        for (j, k, c) in b.comult_basis(i) {
            for (k1, k2, c2) in b.comult_basis(*k) {
                let idx = (j * d + k1) * d + k2;
                rhs[idx] = &rhs[idx] + &(c * c2);
            }
        }
        if !vec_eq(&lhs, &rhs) {
            rep.fail("coassociativity", &[i], "the two triple coproducts differ".to_string());
        }

        rep.tick();
        let mut left_counit = vec![b.field.zero(); d];
        let mut right_counit = vec![b.field.zero(); d];
        for (j, k, c) in b.comult_basis(i) {
            left_counit[*k] = &left_counit[*k] + &(c * &b.counit[*j]);
            right_counit[*j] = &right_counit[*j] + &(c * &b.counit[*k]);
        }
        if !vec_eq(&left_counit, &basis(i)) || !vec_eq(&right_counit, &basis(i)) {
            rep.fail(
                "counit law",
                &[i],
                format!(
                    "(eps(x)id)Delta = {}, (id(x)eps)Delta = {}",
                    fmt_vec(&left_counit),
                    fmt_vec(&right_counit)
                ),
            );
        }
    }

    // Delta and eps are algebra maps
    for i in 0..d {
        for j in 0..d {
            rep.tick();
            let prod = b.product(&basis(i), &basis(j));
            let delta_prod = b.comult_dense(&prod);
            let prod_delta =
                b.tensor_square_product(&b.comult_dense(&basis(i)), &b.comult_dense(&basis(j)));
            if !vec_eq(&delta_prod, &prod_delta) {
                rep.fail("Delta multiplicative", &[i, j], "Delta(xy) != Delta(x)Delta(y)");
            }
            rep.tick();
            let eps_prod = b.counit_of(&prod);
            let prod_eps = &b.counit[i] * &b.counit[j];
            if eps_prod != prod_eps {
                rep.fail(
                    "eps multiplicative",
                    &[i, j],
                    format!("{eps_prod} vs {prod_eps}"),
                );
            }
        }
    }
    rep.tick();
    let delta_one = b.comult_dense(&b.unit);
    let mut one_one = vec![b.field.zero(); d * d];
    for (i, a) in b.unit.iter().enumerate() {
        for (j, c) in b.unit.iter().enumerate() {
            one_one[i * d + j] = &one_one[i * d + j] + &(a * c);
        }
    }
    if !vec_eq(&delta_one, &one_one) {
        rep.fail("Delta unital", &[], "Delta(1) != 1 (x) 1");
    }
    rep.tick();
    if !b.counit_of(&b.unit).is_one() {
        rep.fail("eps unital", &[], format!("eps(1) = {}", b.counit_of(&b.unit)));
    }
    rep
}

/// `eta_A . eps_C` as a matrix, the convolution identity of Hom(C, A).
pub fn unit_counit_map(c: &FiniteBialgebra, a: &FiniteBialgebra) -> Matrix {
    let mut m = Matrix::zeros(a.field, a.dim, c.dim);
    for j in 0..c.dim {
        for i in 0..a.dim {
            *m.at_mut(i, j) = &c.counit[j] * &a.unit[i];
        }
    }
    m
}

/// Convolution product of linear maps `f, g : C -> A`:
/// `(f * g)(c) = f(c_(1)) g(c_(2))`.
pub fn convolution(
    f: &Matrix,
    g: &Matrix,
    c: &FiniteBialgebra,
    a: &FiniteBialgebra,
) -> Result<Matrix, Error> {
    if f.rows() != a.dim || g.rows() != a.dim || f.cols() != c.dim || g.cols() != c.dim {
        return Err(Error::ShapeMismatch(
            "convolution operands must map C to A".into(),
        ));
    }
    if f.field() != a.field {
        return Err(Error::FieldMismatch(f.field(), a.field));
    }
    let mut out = Matrix::zeros(a.field, a.dim, c.dim);
    for i in 0..c.dim {
        let mut acc = vec![a.field.zero(); a.dim];
        for (j, k, coeff) in c.comult_basis(i) {
            let prod = a.product(&f.column(*j), &g.column(*k));
            for (t, v) in prod.iter().enumerate() {
                if !v.is_zero() {
                    acc[t] = &acc[t] + &(coeff * v);
                }
            }
        }
        out.set_column(i, &acc);
    }
    Ok(out)
}

/// Solve the convolution system `S(e_i(1)) e_i(2) = eps(e_i) 1` for the
/// antipode and verify the two-sided law. Errors with `NoAntipode` when the
/// system is unsolvable or one-sided.
pub fn compute_antipode(b: &FiniteBialgebra) -> Result<Matrix, Error> {
    let d = b.dim;
    let n = d * d; // unknowns S[k][j], index k * d + j
    let mut sys = Matrix::zeros(b.field, n, n);
    let mut rhs = vec![b.field.zero(); n];
    for i in 0..d {
        for (j, l, c) in b.comult_basis(i) {
            for k in 0..d {
                let prod = b.mult_basis(k, *l);
                for (t, m) in prod.iter().enumerate() {
                    if m.is_zero() {
                        continue;
                    }
                    let row = i * d + t;
                    let col = k * d + j;
                    let cur = sys.at(row, col).clone();
                    *sys.at_mut(row, col) = &cur + &(c * m);
                }
            }
        }
        for t in 0..d {
            rhs[i * d + t] = &b.counit[i] * &b.unit[t];
        }
    }
    let x = sys.solve(&rhs).ok_or(Error::NoAntipode)?;
    let s = Matrix::from_fn(b.field, d, d, |k, j| x[k * d + j].clone());
    // two-sided verification
    let id = Matrix::identity(b.field, d);
    let target = unit_counit_map(b, b);
    if convolution(&s, &id, b, b)? != target || convolution(&id, &s, b, b)? != target {
        return Err(Error::NoAntipode);
    }
    Ok(s)
}

/// Swap multiplication arguments.
pub fn opposite(b: &FiniteBialgebra) -> FiniteBialgebra {
    let mut mult = b.mult.clone();
    for i in 0..b.dim {
        for j in 0..b.dim {
            mult[i][j] = b.mult[j][i].clone();
        }
    }
    FiniteBialgebra {
        mult,
        ..b.clone()
    }
}

/// Swap comultiplication legs.
pub fn coopposite(b: &FiniteBialgebra) -> FiniteBialgebra {
    let comult = b
        .comult
        .iter()
        .map(|terms| terms.iter().map(|(j, k, c)| (*k, *j, c.clone())).collect())
        .collect();
    FiniteBialgebra {
        comult,
        ..b.clone()
    }
}

/// Dual bialgebra on the dual basis: multiplication is the transpose of the
/// coproduct and vice versa.
pub fn dual(b: &FiniteBialgebra) -> FiniteBialgebra {
    let d = b.dim;
    let mut mult = vec![vec![vec![b.field.zero(); d]; d]; d];
    for k in 0..d {
        for (i, j, c) in b.comult_basis(k) {
            mult[*i][*j][k] = &mult[*i][*j][k] + c;
        }
    }
    let mut comult = vec![Vec::new(); d];
    for (k, slot) in comult.iter_mut().enumerate() {
        for i in 0..d {
            for j in 0..d {
                let c = &b.mult[i][j][k];
                if !c.is_zero() {
                    slot.push((i, j, c.clone()));
                }
            }
        }
    }
    FiniteBialgebra {
        field: b.field,
        dim: d,
        labels: b.labels.iter().map(|l| format!("{l}*")).collect(),
        mult,
        unit: b.counit.clone(),
        comult,
        counit: b.unit.clone(),
    }
}

/// Ordinary tensor-product bialgebra `U (x) A`.
pub fn tensor_bialgebra(u: &FiniteBialgebra, a: &FiniteBialgebra) -> Result<FiniteBialgebra, Error> {
    if u.field != a.field {
        return Err(Error::FieldMismatch(u.field, a.field));
    }
    let (du, da) = (u.dim, a.dim);
    let d = du * da;
    let idx = TensorIndex::new(vec![du, da]);
    let labels = (0..d)
        .map(|t| {
            let parts = idx.unflatten(t);
            format!("{}⊗{}", u.label(parts[0]), a.label(parts[1]))
        })
        .collect();
    let mut mult = vec![vec![vec![u.field.zero(); d]; d]; d];
    for i1 in 0..du {
        for j1 in 0..du {
            let mu = u.mult_basis(i1, j1);
            for i2 in 0..da {
                for j2 in 0..da {
                    let ma = a.mult_basis(i2, j2);
                    let row = idx.flatten(&[i1, i2]);
                    let col = idx.flatten(&[j1, j2]);
                    let slot = &mut mult[row][col];
                    for (k1, c1) in mu.iter().enumerate() {
                        if c1.is_zero() {
                            continue;
                        }
                        for (k2, c2) in ma.iter().enumerate() {
                            if c2.is_zero() {
                                continue;
                            }
                            let t = idx.flatten(&[k1, k2]);
                            slot[t] = &slot[t] + &(c1 * c2);
                        }
                    }
                }
            }
        }
    }
    let mut comult = vec![Vec::new(); d];
    for i1 in 0..du {
        for i2 in 0..da {
            let slot = &mut comult[idx.flatten(&[i1, i2])];
            for (j1, k1, c1) in u.comult_basis(i1) {
                for (j2, k2, c2) in a.comult_basis(i2) {
                    slot.push((idx.flatten(&[*j1, *j2]), idx.flatten(&[*k1, *k2]), c1 * c2));
                }
            }
        }
    }
    let mut unit = vec![u.field.zero(); d];
    let mut counit = vec![u.field.zero(); d];
    for i1 in 0..du {
        for i2 in 0..da {
            let t = idx.flatten(&[i1, i2]);
            unit[t] = &u.unit[i1] * &a.unit[i2];
            counit[t] = &u.counit[i1] * &a.counit[i2];
        }
    }
    FiniteBialgebra::new(u.field, labels, mult, unit, comult, counit)
}

/// A bialgebra with a (two-sided, verified) antipode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteHopf {
    pub bialgebra: FiniteBialgebra,
    pub antipode: Matrix,
    pub antipode_inverse: Option<Matrix>,
}

impl FiniteHopf {
    /// Compute the antipode by linear solve and try to invert it.
    pub fn from_bialgebra(bialgebra: FiniteBialgebra) -> Result<FiniteHopf, Error> {
        let antipode = compute_antipode(&bialgebra)?;
        let antipode_inverse = antipode.inverse().ok();
        Ok(FiniteHopf {
            bialgebra,
            antipode,
            antipode_inverse,
        })
    }

    pub fn dim(&self) -> usize {
        self.bialgebra.dim()
    }

    pub fn field(&self) -> Field {
        self.bialgebra.field()
    }

    pub fn antipode_inverse(&self) -> Result<&Matrix, Error> {
        self.antipode_inverse
            .as_ref()
            .ok_or(Error::AntipodeNotInvertible)
    }
}

/// `H^op`: opposite multiplication, antipode `S^{-1}`.
pub fn opposite_hopf(h: &FiniteHopf) -> Result<FiniteHopf, Error> {
    let s_inv = h.antipode_inverse()?.clone();
    Ok(FiniteHopf {
        bialgebra: opposite(&h.bialgebra),
        antipode: s_inv,
        antipode_inverse: Some(h.antipode.clone()),
    })
}

/// `H*`: the dual Hopf algebra, antipode is the transpose.
pub fn dual_hopf(h: &FiniteHopf) -> FiniteHopf {
    FiniteHopf {
        bialgebra: dual(&h.bialgebra),
        antipode: h.antipode.transpose(),
        antipode_inverse: h.antipode_inverse.as_ref().map(|m| m.transpose()),
    }
}

/// Group algebra of `Z/n_1 x ... x Z/n_k`; every basis element grouplike,
/// antipode is negation.
pub fn group_algebra(orders: &[usize], field: Field) -> FiniteHopf {
    assert!(orders.iter().all(|&n| n >= 1), "cyclic orders must be >= 1");
    let idx = TensorIndex::new(orders.to_vec());
    let d = idx.total();
    let label_of = |tuple: &[usize]| -> String {
        let mut parts = Vec::new();
        for (i, &a) in tuple.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let gen = if orders.len() == 1 {
                "g".to_string()
            } else {
                format!("g{}", i + 1)
            };
            parts.push(if a == 1 { gen } else { format!("{gen}^{a}") });
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    };
    let mut labels = Vec::with_capacity(d);
    let mut mult = vec![vec![vec![field.zero(); d]; d]; d];
    let mut comult = Vec::with_capacity(d);
    let mut s = Matrix::zeros(field, d, d);
    for t in 0..d {
        let a = idx.unflatten(t);
        labels.push(label_of(&a));
        comult.push(vec![(t, t, field.one())]);
        let neg: Vec<usize> = a
            .iter()
            .zip(orders)
            .map(|(&x, &n)| (n - x) % n)
            .collect();
        *s.at_mut(idx.flatten(&neg), t) = field.one();
        for t2 in 0..d {
            let b = idx.unflatten(t2);
            let sum: Vec<usize> = a
                .iter()
                .zip(&b)
                .zip(orders)
                .map(|((&x, &y), &n)| (x + y) % n)
                .collect();
            mult[t][t2][idx.flatten(&sum)] = field.one();
        }
    }
    let mut unit = vec![field.zero(); d];
    unit[0] = field.one();
    let counit = vec![field.one(); d];
    let bialgebra = FiniteBialgebra::new(field, labels, mult, unit, comult, counit)
        .expect("group algebra tensors are well-shaped");
    let antipode_inverse = Some(s.clone());
    FiniteHopf {
        bialgebra,
        antipode: s,
        antipode_inverse,
    }
}

/// A linear map recorded together with its (claimed) source and target.
#[derive(Debug, Clone)]
pub struct BialgebraMap {
    pub source: FiniteBialgebra,
    pub target: FiniteBialgebra,
    pub matrix: Matrix,
}

impl BialgebraMap {
    pub fn new(source: FiniteBialgebra, target: FiniteBialgebra, matrix: Matrix) -> Self {
        assert_eq!(matrix.cols(), source.dim());
        assert_eq!(matrix.rows(), target.dim());
        BialgebraMap {
            source,
            target,
            matrix,
        }
    }

    pub fn identity(b: &FiniteBialgebra) -> Self {
        BialgebraMap {
            source: b.clone(),
            target: b.clone(),
            matrix: Matrix::identity(b.field(), b.dim()),
        }
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix.mul_vec(v)
    }
}

/// Verify `f` respects mult, unit, comult, and counit on all basis pairs.
pub fn check_bialgebra_map(f: &BialgebraMap) -> Report {
    let mut rep = Report::new("bialgebra map");
    let (src, tgt, m) = (&f.source, &f.target, &f.matrix);
    let d = src.dim();
    let basis = |i: usize| {
        let mut v = vec![src.field().zero(); d];
        v[i] = src.field().one();
        v
    };
    rep.tick();
    if m.mul_vec(src.unit_vec()) != tgt.unit_vec() {
        rep.fail("unital", &[], format!("f(1) = {}", fmt_vec(&m.mul_vec(src.unit_vec()))));
    }
    for i in 0..d {
        for j in 0..d {
            rep.tick();
            let lhs = m.mul_vec(&src.product(&basis(i), &basis(j)));
            let rhs = tgt.product(&m.column(i), &m.column(j));
            if !vec_eq(&lhs, &rhs) {
                rep.fail(
                    "multiplicative",
                    &[i, j],
                    format!("f(xy) = {}, f(x)f(y) = {}", fmt_vec(&lhs), fmt_vec(&rhs)),
                );
            }
        }
        rep.tick();
        // Delta_tgt(f(e_i)) = (f (x) f)(Delta_src(e_i))
        let lhs = tgt.comult_dense(&m.column(i));
        let mut rhs = vec![src.field().zero(); tgt.dim() * tgt.dim()];
        for (j, k, c) in src.comult_basis(i) {
            let fj = m.column(*j);
            let fk = m.column(*k);
            for (a, x) in fj.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (b2, y) in fk.iter().enumerate() {
                    if y.is_zero() {
                        continue;
                    }
                    let idx = a * tgt.dim() + b2;
                    rhs[idx] = &rhs[idx] + &(&(c * x) * y);
                }
            }
        }
        if !vec_eq(&lhs, &rhs) {
            rep.fail("comultiplicative", &[i], "Delta f != (f(x)f) Delta");
        }
        rep.tick();
        let eps_f = tgt.counit_of(&m.column(i));
        if eps_f != src.counit_vec()[i] {
            rep.fail(
                "counital",
                &[i],
                format!("eps(f(e_i)) = {eps_f}, eps(e_i) = {}", src.counit_vec()[i]),
            );
        }
    }
    rep
}

/// Full Hopf check: bialgebra axioms plus the two-sided antipode law and,
/// when an inverse is recorded, `S^{-1} S = S S^{-1} = id`.
pub fn check_hopf(h: &FiniteHopf) -> Report {
    let mut rep = check_bialgebra(&h.bialgebra);
    rep.context = format!("hopf axioms (dim {})", h.dim());
    let b = &h.bialgebra;
    let id = Matrix::identity(b.field(), b.dim());
    let target = unit_counit_map(b, b);
    rep.tick();
    match (
        convolution(&h.antipode, &id, b, b),
        convolution(&id, &h.antipode, b, b),
    ) {
        (Ok(l), Ok(r)) => {
            if l != target {
                rep.fail("antipode left law", &[], "S * id != unit.counit");
            }
            if r != target {
                rep.fail("antipode right law", &[], "id * S != unit.counit");
            }
        }
        _ => rep.fail("antipode law", &[], "convolution failed"),
    }
    if let Some(s_inv) = &h.antipode_inverse {
        rep.tick();
        if s_inv.mul(&h.antipode) != id || h.antipode.mul(s_inv) != id {
            rep.fail("antipode inverse", &[], "S^{-1} S != id");
        }
    }
    rep
}

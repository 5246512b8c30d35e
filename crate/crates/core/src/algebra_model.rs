//! Matrix models of gl(m|n), sl(m|n), psl(m|n), q(n) and gl(n), with roots,
//! Borels given as orderings of the diagonal indices, and odd reflections.

use std::fmt;

use crate::error::{bail, Error, Result};
use crate::linalg::Matrix;
use crate::scalar::GR;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    GL,
    SL,
    PSL,
    Q,
    ReductiveGL,
}

/// A matrix model. For `Q` the rank is stored in `m` and `n` is 0; elements
/// are 2m x 2m matrices [[A, B], [B, A]]. For `ReductiveGL`, `n` is 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraModel {
    pub family: Family,
    pub m: usize,
    pub n: usize,
}

#[derive(Clone, Debug)]
pub struct BasisElement {
    pub label: String,
    pub matrix: Matrix,
    pub odd: bool,
}

pub fn build_algebra(family: Family, m: usize, n: usize) -> Result<AlgebraModel> {
    match family {
        Family::Q => {
            if n == 0 {
                bail!(Unsupported, "unsupported size: q(0)");
            }
            Ok(AlgebraModel { family, m: n, n: 0 })
        }
        Family::ReductiveGL => {
            if m == 0 {
                bail!(Unsupported, "unsupported size: gl(0)");
            }
            Ok(AlgebraModel { family, m, n: 0 })
        }
        _ => {
            if m + n == 0 {
                bail!(Unsupported, "unsupported size: ({m}|{n})");
            }
            Ok(AlgebraModel { family, m, n })
        }
    }
}

impl AlgebraModel {
    pub fn gl(m: usize, n: usize) -> Self {
        build_algebra(Family::GL, m, n).unwrap()
    }

    pub fn sl(m: usize, n: usize) -> Self {
        build_algebra(Family::SL, m, n).unwrap()
    }

    pub fn q(n: usize) -> Self {
        build_algebra(Family::Q, 0, n).unwrap()
    }

    pub fn name(&self) -> String {
        match self.family {
            Family::GL => format!("gl({}|{})", self.m, self.n),
            Family::SL => format!("sl({}|{})", self.m, self.n),
            Family::PSL => format!("psl({}|{})", self.m, self.n),
            Family::Q => format!("q({})", self.m),
            Family::ReductiveGL => format!("gl({})", self.m),
        }
    }

    pub fn is_q(&self) -> bool {
        self.family == Family::Q
    }

    /// sl(2|2) and psl(2|2) need the special odd reflection rule.
    pub fn is_sl22(&self) -> bool {
        matches!(self.family, Family::SL | Family::PSL) && self.m == 2 && self.n == 2
    }

    /// Families whose weights are only defined modulo the supertrace.
    pub fn mod_supertrace(&self) -> bool {
        matches!(self.family, Family::SL | Family::PSL)
    }

    /// Side of the square matrices realizing the model.
    pub fn matrix_size(&self) -> usize {
        if self.is_q() {
            2 * self.m
        } else {
            self.m + self.n
        }
    }

    /// Row where the odd block starts in the supermatrix layout.
    pub fn block_split(&self) -> usize {
        self.m
    }

    /// Number of weight coordinates.
    pub fn rank(&self) -> usize {
        self.m + self.n
    }

    pub fn index_odd(&self, a: usize) -> bool {
        !self.is_q() && a >= self.m
    }

    /// (e_a, e_a) in the standard form: +1 for eps, -1 for delta.
    pub fn index_sign(&self, a: usize) -> i64 {
        if self.index_odd(a) {
            -1
        } else {
            1
        }
    }

    fn split_parts(&self, x: &Matrix) -> (Matrix, Matrix) {
        let s = self.block_split();
        let mut even = Matrix::zeros(x.rows, x.cols);
        let mut odd = Matrix::zeros(x.rows, x.cols);
        for (i, j, v) in x.nonzero_entries() {
            if (i < s) == (j < s) {
                even.set(i, j, v.clone());
            } else {
                odd.set(i, j, v.clone());
            }
        }
        (even, odd)
    }

    /// Some(false) for even (including zero), Some(true) for odd, None if mixed.
    pub fn parity(&self, x: &Matrix) -> Option<bool> {
        let (e, o) = self.split_parts(x);
        match (e.is_zero(), o.is_zero()) {
            (_, true) => Some(false),
            (true, false) => Some(true),
            _ => None,
        }
    }

    /// Super commutator, extended bilinearly to inhomogeneous elements.
    pub fn superbracket(&self, x: &Matrix, y: &Matrix) -> Matrix {
        let (x0, x1) = self.split_parts(x);
        let (y0, y1) = self.split_parts(y);
        let mut out = &(&x0 * y) - &(y * &x0);
        out = &out + &(&(&x1 * &y0) - &(&y0 * &x1));
        &out + &(&(&x1 * &y1) + &(&y1 * &x1))
    }

    /// Membership test for the concrete matrix realization.
    pub fn contains(&self, x: &Matrix) -> bool {
        let size = self.matrix_size();
        if x.rows != size || x.cols != size {
            return false;
        }
        match self.family {
            Family::Q => {
                let n = self.m;
                (0..n).all(|i| {
                    (0..n).all(|j| {
                        x.get(i, j) == x.get(i + n, j + n) && x.get(i, j + n) == x.get(i + n, j)
                    })
                })
            }
            Family::SL | Family::PSL => self.supertrace(x).is_zero(),
            _ => true,
        }
    }

    pub fn supertrace(&self, x: &Matrix) -> GR {
        let mut acc = GR::zero();
        for a in 0..self.matrix_size() {
            if self.index_odd(a) {
                acc -= x.get(a, a);
            } else {
                acc += x.get(a, a);
            }
        }
        acc
    }

    pub fn unit(&self, a: usize, b: usize) -> Matrix {
        Matrix::unit(self.matrix_size(), a, b)
    }

    /// Even Cartan element dual to the a-th weight coordinate.
    pub fn cartan_unit(&self, a: usize) -> Matrix {
        if self.is_q() {
            let n = self.m;
            &self.unit(a, a) + &self.unit(a + n, a + n)
        } else {
            self.unit(a, a)
        }
    }

    /// Odd Cartan element H_a of q(n).
    pub fn odd_cartan_unit(&self, a: usize) -> Matrix {
        let n = self.m;
        &self.unit(a, a + n) + &self.unit(a + n, a)
    }

    /// Root vector e_alpha = E_ab for type A; for q(n) the even one.
    pub fn root_vector(&self, a: usize, b: usize) -> Matrix {
        if self.is_q() {
            let n = self.m;
            &self.unit(a, b) + &self.unit(a + n, b + n)
        } else {
            self.unit(a, b)
        }
    }

    /// Odd root vector of q(n) for the root eps_a - eps_b.
    pub fn odd_root_vector(&self, a: usize, b: usize) -> Matrix {
        let n = self.m;
        &self.unit(a, b + n) + &self.unit(a + n, b)
    }

    pub fn basis(&self) -> Vec<BasisElement> {
        let size = self.rank();
        let mut out = Vec::new();
        if self.is_q() {
            for a in 0..size {
                for b in 0..size {
                    out.push(BasisElement {
                        label: format!("A{}{}", a + 1, b + 1),
                        matrix: self.root_vector(a, b),
                        odd: false,
                    });
                }
            }
            for a in 0..size {
                for b in 0..size {
                    out.push(BasisElement {
                        label: format!("B{}{}", a + 1, b + 1),
                        matrix: self.odd_root_vector(a, b),
                        odd: true,
                    });
                }
            }
            return out;
        }
        for a in 0..size {
            for b in 0..size {
                if a != b {
                    out.push(BasisElement {
                        label: format!("E{}{}", a + 1, b + 1),
                        matrix: self.unit(a, b),
                        odd: self.index_odd(a) != self.index_odd(b),
                    });
                }
            }
        }
        for h in self.cartan_basis() {
            out.push(BasisElement { label: "h".into(), matrix: h, odd: false });
        }
        out
    }

    /// Diagonal basis of the Cartan subalgebra of the model.
    pub fn cartan_basis(&self) -> Vec<Matrix> {
        let size = self.rank();
        match self.family {
            Family::SL | Family::PSL => (0..size.saturating_sub(1))
                .map(|a| {
                    let s = if self.index_odd(a) == self.index_odd(a + 1) { -1 } else { 1 };
                    &self.unit(a, a) + &self.unit(a + 1, a + 1).scale(&GR::int(s))
                })
                .collect(),
            _ => (0..size).map(|a| self.cartan_unit(a)).collect(),
        }
    }

    /// lambda(h) for a diagonal Cartan element h.
    pub fn eval_weight(&self, lambda: &Weight, h: &Matrix) -> GR {
        let mut acc = GR::zero();
        for (a, x) in lambda.coords.iter().enumerate() {
            let d = h.get(a, a);
            if !d.is_zero() {
                acc += &(x * d);
            }
        }
        acc
    }

    /// Coordinates (1,..,1 | -1,..,-1) of the supertrace functional.
    pub fn supertrace_weight(&self) -> Weight {
        Weight::new(
            (0..self.rank()).map(|a| GR::int(self.index_sign(a))).collect(),
            self.m,
        )
    }

    /// Weight equality in the model: modulo the supertrace for sl and psl.
    pub fn weights_equal(&self, x: &Weight, y: &Weight) -> bool {
        if x.coords.len() != y.coords.len() {
            return false;
        }
        if !self.mod_supertrace() {
            return x == y;
        }
        let d: Vec<GR> = x.coords.iter().zip(&y.coords).map(|(a, b)| a - b).collect();
        // d must be c * str, and str_a = +-1
        let c = &d[0] * &GR::int(self.index_sign(0));
        d.iter().enumerate().all(|(a, v)| *v == &c * &GR::int(self.index_sign(a)))
    }

    /// Weight-level preconditions (psl(n|n) weights vanish on the identity).
    pub fn check_weight(&self, lambda: &Weight) -> Result<()> {
        if lambda.coords.len() != self.rank() {
            bail!(Invalid, "weight has {} coordinates, {} expects {}", lambda.coords.len(), self.name(), self.rank());
        }
        if self.family == Family::PSL && self.m == self.n {
            let s: GR = lambda.coords.iter().cloned().sum();
            if !s.is_zero() {
                bail!(Precondition, "psl({}|{}) weight must vanish on the identity, got sum {}", self.m, self.n, s);
            }
        }
        Ok(())
    }

    pub fn roots_equal(&self, x: &Root, y: &Root) -> bool {
        if x.coeffs == y.coeffs {
            return true;
        }
        if !self.mod_supertrace() {
            return false;
        }
        self.weights_equal(&x.as_weight(self), &y.as_weight(self))
    }

    pub fn root(&self, a: usize, b: usize) -> Root {
        let mut coeffs = vec![0; self.rank()];
        coeffs[a] += 1;
        coeffs[b] -= 1;
        Root { coeffs, odd: self.index_odd(a) != self.index_odd(b) }
    }

    pub fn inner(&self, x: &Root, y: &Root) -> i64 {
        x.coeffs.iter().zip(&y.coeffs).enumerate().map(|(a, (u, v))| self.index_sign(a) * u * v).sum()
    }

    pub fn is_isotropic(&self, r: &Root) -> bool {
        r.odd && self.inner(r, r) == 0
    }

    /// All roots eps/delta_a - eps/delta_b (even roots only for q(n)).
    pub fn roots(&self) -> Vec<Root> {
        let k = self.rank();
        let mut out = Vec::new();
        for a in 0..k {
            for b in 0..k {
                if a != b {
                    out.push(self.root(a, b));
                }
            }
        }
        out
    }

    /// alpha(h) for a diagonal h.
    pub fn eval_root(&self, r: &Root, h: &Matrix) -> GR {
        self.eval_weight(&r.as_weight(self), h)
    }
}

impl fmt::Display for AlgebraModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Coefficients over eps_1..eps_m, delta_1..delta_n.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Weight {
    pub coords: Vec<GR>,
    pub m: usize,
}

impl Weight {
    pub fn new(coords: Vec<GR>, m: usize) -> Self {
        Weight { coords, m }
    }

    pub fn zero(model: &AlgebraModel) -> Self {
        Weight { coords: vec![GR::zero(); model.rank()], m: model.m }
    }

    pub fn from_ints(model: &AlgebraModel, xs: &[i64]) -> Self {
        Weight { coords: xs.iter().map(|&x| GR::int(x)).collect(), m: model.m }
    }

    pub fn eps(&self) -> &[GR] {
        &self.coords[..self.m]
    }

    pub fn delta(&self) -> &[GR] {
        &self.coords[self.m..]
    }

    pub fn add_root(&self, r: &Root, times: i64) -> Weight {
        let mut c = self.coords.clone();
        for (x, &k) in c.iter_mut().zip(&r.coeffs) {
            if k != 0 {
                *x += &GR::int(k * times);
            }
        }
        Weight { coords: c, m: self.m }
    }

    pub fn sub(&self, o: &Weight) -> Weight {
        Weight { coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect(), m: self.m }
    }

    pub fn conj(&self) -> Weight {
        Weight { coords: self.coords.iter().map(GR::conj).collect(), m: self.m }
    }

    pub fn permuted(&self, perm: &[usize]) -> Weight {
        // result_a = self_{perm[a]}
        Weight { coords: perm.iter().map(|&p| self.coords[p].clone()).collect(), m: self.m }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(", "))
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Root {
    pub coeffs: Vec<i64>,
    pub odd: bool,
}

impl Root {
    /// (a, b) with the root equal to e_a - e_b.
    pub fn pair(&self) -> Option<(usize, usize)> {
        let mut a = None;
        let mut b = None;
        for (i, &c) in self.coeffs.iter().enumerate() {
            match c {
                0 => {}
                1 if a.is_none() => a = Some(i),
                -1 if b.is_none() => b = Some(i),
                _ => return None,
            }
        }
        Some((a?, b?))
    }

    pub fn neg(&self) -> Root {
        Root { coeffs: self.coeffs.iter().map(|c| -c).collect(), odd: self.odd }
    }

    pub fn plus(&self, o: &Root) -> Root {
        Root { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(), odd: self.odd != o.odd }
    }

    pub fn as_weight(&self, model: &AlgebraModel) -> Weight {
        Weight::new(self.coeffs.iter().map(|&c| GR::int(c)).collect(), model.m)
    }

    pub fn label(&self, model: &AlgebraModel) -> String {
        let name = |a: usize| {
            if model.index_odd(a) {
                format!("d{}", a - model.m + 1)
            } else {
                format!("e{}", a + 1)
            }
        };
        match self.pair() {
            Some((a, b)) => format!("{}-{}", name(a), name(b)),
            None => format!("{:?}", self.coeffs),
        }
    }
}

/// A Borel containing the diagonal Cartan, recorded as an ordering of the
/// diagonal indices: e_a - e_b is positive iff a comes before b.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Borel {
    pub order: Vec<usize>,
}

impl Borel {
    pub fn standard(model: &AlgebraModel) -> Self {
        Borel { order: (0..model.rank()).collect() }
    }

    /// Parses an e/d shuffle word: eps indices fill the e slots in increasing
    /// order, delta indices the d slots.
    pub fn from_shuffle(model: &AlgebraModel, word: &str) -> Result<Self> {
        if model.is_q() || model.family == Family::ReductiveGL {
            let expect = "e".repeat(model.m);
            if word != expect {
                bail!(Unsupported, "{} accepts only the standard Borel {expect:?}", model.name());
            }
            return Ok(Self::standard(model));
        }
        let (mut e, mut d) = (0, model.m);
        let mut order = Vec::new();
        for ch in word.chars() {
            match ch {
                'e' => {
                    order.push(e);
                    e += 1;
                }
                'd' => {
                    order.push(d);
                    d += 1;
                }
                _ => bail!(Invalid, "shuffle word {word:?} has letter {ch:?}"),
            }
        }
        if e != model.m || d != model.m + model.n {
            bail!(Invalid, "shuffle word {word:?} does not have {} e's and {} d's", model.m, model.n);
        }
        let b = Borel { order };
        b.validate(model)?;
        Ok(b)
    }

    pub fn word(&self, model: &AlgebraModel) -> String {
        self.order.iter().map(|&a| if model.index_odd(a) { 'd' } else { 'e' }).collect()
    }

    pub fn position(&self, a: usize) -> usize {
        self.order.iter().position(|&x| x == a).expect("index in ordering")
    }

    pub fn is_positive(&self, r: &Root) -> bool {
        let (a, b) = r.pair().expect("type A root");
        self.position(a) < self.position(b)
    }

    pub fn positive_roots(&self, model: &AlgebraModel) -> Vec<Root> {
        let mut out = Vec::new();
        for i in 0..self.order.len() {
            for j in i + 1..self.order.len() {
                out.push(model.root(self.order[i], self.order[j]));
            }
        }
        out
    }

    /// True if eps and delta indices each appear in increasing order.
    pub fn is_shuffle(&self, model: &AlgebraModel) -> bool {
        let ev: Vec<usize> = self.order.iter().copied().filter(|&a| !model.index_odd(a)).collect();
        let od: Vec<usize> = self.order.iter().copied().filter(|&a| model.index_odd(a)).collect();
        ev.windows(2).all(|w| w[0] < w[1]) && od.windows(2).all(|w| w[0] < w[1])
    }

    /// Orderings whose positive roots are inconsistent modulo the supertrace
    /// (only possible for sl(2|2), psl(2|2)) are not Borels.
    pub fn validate(&self, model: &AlgebraModel) -> Result<()> {
        let mut seen = self.order.clone();
        seen.sort_unstable();
        if seen != (0..model.rank()).collect::<Vec<_>>() {
            bail!(Invalid, "ordering {:?} is not a permutation of the indices", self.order);
        }
        if model.is_sl22() {
            let pos = self.positive_roots(model);
            for p in &pos {
                for q in &pos {
                    if model.roots_equal(p, &q.neg()) {
                        bail!(
                            Unsupported,
                            "{:?} is not a Borel of {}: {} and {} coincide up to sign",
                            self.word(model),
                            model.name(),
                            p.label(model),
                            q.label(model)
                        );
                    }
                }
            }
        }
        Ok(())
    }

    /// Odd reflection at the adjacent pair (pos, pos+1).
    pub fn swapped(&self, pos: usize) -> Borel {
        let mut o = self.order.clone();
        o.swap(pos, pos + 1);
        Borel { order: o }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FundamentalSystem {
    pub roots: Vec<Root>,
}

pub fn fundamental_system(model: &AlgebraModel, b: &Borel) -> FundamentalSystem {
    let mut roots: Vec<Root> = Vec::new();
    for w in b.order.windows(2) {
        let r = model.root(w[0], w[1]);
        if !roots.iter().any(|x| model.roots_equal(x, &r)) {
            roots.push(r);
        }
    }
    FundamentalSystem { roots }
}

pub fn odd_reflection(model: &AlgebraModel, pi: &FundamentalSystem, alpha: &Root) -> Result<FundamentalSystem> {
    if !pi.roots.iter().any(|r| model.roots_equal(r, alpha)) {
        bail!(Invalid, "{} is not simple", alpha.label(model));
    }
    if !model.is_isotropic(alpha) {
        bail!(Invalid, "{} is not isotropic", alpha.label(model));
    }
    let mut out = Vec::new();
    for beta in &pi.roots {
        if model.roots_equal(beta, alpha) {
            out.push(alpha.neg());
        } else if model.inner(beta, alpha) == 0 {
            out.push(beta.clone());
        } else {
            out.push(beta.plus(alpha));
        }
    }
    Ok(FundamentalSystem { roots: out })
}

/// h_alpha = [e_alpha, e_-alpha] for a type-A root e_a - e_b.
pub fn coroot(model: &AlgebraModel, r: &Root) -> Matrix {
    let (a, b) = r.pair().expect("type A root");
    model.superbracket(&model.unit(a, b), &model.unit(b, a))
}

pub fn shifted_highest_weight(model: &AlgebraModel, lambda: &Weight, alpha: &Root) -> Result<Weight> {
    if model.is_sl22() {
        bail!(Invalid, "{} needs the paired odd reflection rule", model.name());
    }
    if !model.is_isotropic(alpha) {
        bail!(Invalid, "{} is not isotropic", alpha.label(model));
    }
    let h = coroot(model, alpha);
    if model.eval_weight(lambda, &h).is_zero() {
        Ok(lambda.clone())
    } else {
        Ok(lambda.add_root(alpha, -1))
    }
}

/// The two sl(1|1) summands attached to an odd root of sl(2|2).
#[derive(Clone, Debug)]
pub struct Sl22Pair {
    /// (a, b) index pairs with e_i = E_ab, i = 1, 2.
    pub pairs: [(usize, usize); 2],
}

impl Sl22Pair {
    pub fn new(model: &AlgebraModel, alpha: &Root) -> Self {
        let (a, b) = alpha.pair().expect("type A root");
        let other = |x: usize| if model.index_odd(x) { 2 + (3 - x) } else { 1 - x };
        Sl22Pair { pairs: [(a, b), (other(b), other(a))] }
    }

    pub fn e(&self, model: &AlgebraModel, i: usize) -> Matrix {
        let (a, b) = self.pairs[i];
        model.unit(a, b)
    }

    pub fn f(&self, model: &AlgebraModel, i: usize) -> Matrix {
        let (a, b) = self.pairs[i];
        model.unit(b, a)
    }

    pub fn h(&self, model: &AlgebraModel, i: usize) -> Matrix {
        model.superbracket(&self.e(model, i), &self.f(model, i))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sl22Shift {
    pub weight: Weight,
    pub rank: usize,
    /// Which sl(1|1) summands contribute lowering (and raising) operators.
    pub recipe: Vec<usize>,
}

pub fn sl22_shift(model: &AlgebraModel, lambda: &Weight, alpha: &Root) -> Result<Sl22Shift> {
    if !model.is_sl22() {
        bail!(Invalid, "paired odd reflection only applies to sl(2|2) and psl(2|2)");
    }
    if !model.is_isotropic(alpha) {
        bail!(Invalid, "{} is not isotropic", alpha.label(model));
    }
    let pair = Sl22Pair::new(model, alpha);
    let recipe: Vec<usize> =
        (0..2).filter(|&i| !model.eval_weight(lambda, &pair.h(model, i)).is_zero()).collect();
    let rank = recipe.len();
    Ok(Sl22Shift { weight: lambda.add_root(alpha, -(rank as i64)), rank, recipe })
}

/// One adjacent e/d swap: the odd reflection at `root`, applied to the
/// ordering at `pos`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddStep {
    pub pos: usize,
    pub root: Root,
}

/// Adjacent-swap chain from `from` to `to`, which must agree on the relative
/// order inside each parity block. Scans left to right and bubbles the
/// nearest letter of the wanted parity into place.
pub fn odd_chain(model: &AlgebraModel, from: &Borel, to: &Borel) -> Result<Vec<OddStep>> {
    let mut cur = from.order.clone();
    let mut steps = Vec::new();
    for pos in 0..cur.len() {
        let want = model.index_odd(to.order[pos]);
        if model.index_odd(cur[pos]) != want {
            let j = (pos + 1..cur.len())
                .find(|&j| model.index_odd(cur[j]) == want)
                .ok_or_else(|| Error::Invalid("orderings have different letter counts".into()))?;
            for q in (pos + 1..=j).rev() {
                steps.push(OddStep { pos: q - 1, root: model.root(cur[q - 1], cur[q]) });
                cur.swap(q - 1, q);
            }
        }
        if cur[pos] != to.order[pos] {
            bail!(Invalid, "orderings {:?} and {:?} differ in their even parts", from.order, to.order);
        }
    }
    Ok(steps)
}

/// Highest weight of the same module with respect to another Borel with the
/// same even part.
pub fn transport_weight(model: &AlgebraModel, lambda: &Weight, from: &Borel, to: &Borel) -> Result<Weight> {
    let steps = odd_chain(model, from, to)?;
    let mut mu = lambda.clone();
    if model.is_sl22() {
        for st in steps.chunks(2) {
            if st.len() != 2 || !model.roots_equal(&st[0].root, &st[1].root) {
                bail!(Invariant, "unpaired odd reflection on {}", model.name());
            }
            mu = sl22_shift(model, &mu, &st[0].root)?.weight;
        }
    } else {
        for st in &steps {
            mu = shifted_highest_weight(model, &mu, &st.root)?;
        }
    }
    Ok(mu)
}

/// All shuffle words with m e's and n d's.
pub fn all_shuffles(m: usize, n: usize) -> Vec<String> {
    let mut out = Vec::new();
    fn rec(m: usize, n: usize, cur: &mut String, out: &mut Vec<String>) {
        if m == 0 && n == 0 {
            out.push(cur.clone());
            return;
        }
        if m > 0 {
            cur.push('e');
            rec(m - 1, n, cur, out);
            cur.pop();
        }
        if n > 0 {
            cur.push('d');
            rec(m, n - 1, cur, out);
            cur.pop();
        }
    }
    rec(m, n, &mut String::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn gl11_layout() {
        let g = AlgebraModel::gl(1, 1);
        let b = g.basis();
        assert_eq!(b.len(), 4);
        let e12 = g.unit(0, 1);
        let e21 = g.unit(1, 0);
        assert_eq!(g.superbracket(&e12, &e21), &g.unit(0, 0) + &g.unit(1, 1));
        assert_eq!(g.superbracket(&g.unit(0, 0), &e12), e12);
    }

    #[test]
    fn q2_layout() {
        let q = AlgebraModel::q(2);
        let b = q.basis();
        assert_eq!(b.len(), 8);
        assert_eq!(b.iter().filter(|x| x.odd).count(), 4);
        for x in &b {
            assert!(q.contains(&x.matrix));
            assert_eq!(q.parity(&x.matrix), Some(x.odd));
        }
        assert!(build_algebra(Family::Q, 0, 0).is_err());
    }

    #[test]
    fn gl12_roots() {
        let g = AlgebraModel::gl(1, 2);
        let pos = Borel::standard(&g).positive_roots(&g);
        let labels: Vec<(String, bool)> = pos.iter().map(|r| (r.label(&g), r.odd)).collect();
        assert_eq!(
            labels,
            vec![("e1-d1".into(), true), ("e1-d2".into(), true), ("d1-d2".into(), false)]
        );
    }

    #[test]
    fn cartan_acts_by_roots_gl22() {
        let g = AlgebraModel::gl(2, 2);
        for r in g.roots() {
            let (a, b) = r.pair().unwrap();
            let e = g.unit(a, b);
            for h in g.cartan_basis() {
                assert_eq!(g.superbracket(&h, &e), e.scale(&g.eval_root(&r, &h)));
            }
        }
    }

    fn jacobi_holds(model: &AlgebraModel) {
        let basis = model.basis();
        for x in &basis {
            for y in &basis {
                for z in &basis {
                    // [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]]
                    let lhs = model.superbracket(&x.matrix, &model.superbracket(&y.matrix, &z.matrix));
                    let mut rhs = model.superbracket(&model.superbracket(&x.matrix, &y.matrix), &z.matrix);
                    let t = model.superbracket(&y.matrix, &model.superbracket(&x.matrix, &z.matrix));
                    rhs = if x.odd && y.odd { &rhs - &t } else { &rhs + &t };
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn super_jacobi_gl22_q2() {
        jacobi_holds(&AlgebraModel::gl(2, 2));
        jacobi_holds(&AlgebraModel::q(2));
    }

    #[test]
    fn brackets_close() {
        for model in [AlgebraModel::sl(2, 1), AlgebraModel::q(2), AlgebraModel::sl(2, 2)] {
            let basis = model.basis();
            for x in &basis {
                for y in &basis {
                    assert!(model.contains(&model.superbracket(&x.matrix, &y.matrix)));
                }
            }
        }
    }

    #[test]
    fn fundamental_systems() {
        let g = AlgebraModel::gl(1, 1);
        let fs = fundamental_system(&g, &Borel::from_shuffle(&g, "ed").unwrap());
        assert_eq!(fs.roots, vec![g.root(0, 1)]);
        assert!(g.is_isotropic(&fs.roots[0]));
        let g = AlgebraModel::gl(1, 2);
        let fs = fundamental_system(&g, &Borel::from_shuffle(&g, "edd").unwrap());
        assert_eq!(fs.roots, vec![g.root(0, 1), g.root(1, 2)]);
        let g = AlgebraModel::gl(2, 2);
        let fs = fundamental_system(&g, &Borel::from_shuffle(&g, "eded").unwrap());
        assert_eq!(fs.roots, vec![g.root(0, 2), g.root(2, 1), g.root(1, 3)]);
    }

    #[test]
    fn reflection_examples() {
        let g = AlgebraModel::gl(1, 1);
        let fs = FundamentalSystem { roots: vec![g.root(0, 1)] };
        assert_eq!(odd_reflection(&g, &fs, &g.root(0, 1)).unwrap().roots, vec![g.root(1, 0)]);
        let g = AlgebraModel::gl(1, 2);
        let fs = fundamental_system(&g, &Borel::from_shuffle(&g, "edd").unwrap());
        let r = odd_reflection(&g, &fs, &g.root(0, 1)).unwrap();
        assert_eq!(r.roots, vec![g.root(1, 0), g.root(0, 2)]);
        let ded = fundamental_system(&g, &Borel::from_shuffle(&g, "ded").unwrap());
        assert_eq!(r.roots, ded.roots);
        assert!(odd_reflection(&g, &fs, &g.root(1, 2)).is_err());
    }

    #[test]
    fn shift_examples() {
        let g = AlgebraModel::gl(1, 1);
        let a = GR::from_parts((1, 2), (3, 1));
        let lam = Weight::new(vec![a.clone(), -a.clone()], 1);
        assert_eq!(shifted_highest_weight(&g, &lam, &g.root(0, 1)).unwrap(), lam);
        let lam = Weight::new(vec![GR::int(2), GR::int(5)], 1);
        assert_eq!(
            shifted_highest_weight(&g, &lam, &g.root(0, 1)).unwrap(),
            Weight::new(vec![GR::int(1), GR::int(6)], 1)
        );
        // a1 + b1 != 0, a1 + b2 = 1, along e1-d1 then e1-d2
        let g = AlgebraModel::gl(1, 2);
        let lam = Weight::new(vec![GR::int(3), GR::int(4), GR::int(-2)], 1);
        let mu = shifted_highest_weight(&g, &lam, &g.root(0, 1)).unwrap();
        let mu = shifted_highest_weight(&g, &mu, &g.root(0, 2)).unwrap();
        assert_eq!(mu, Weight::new(vec![GR::int(2), GR::int(5), GR::int(-2)], 1));
    }

    #[test]
    fn sl22_rules() {
        let g = build_algebra(Family::SL, 2, 2).unwrap();
        assert!(Borel::from_shuffle(&g, "edde").is_ok());
        assert!(Borel::from_shuffle(&g, "deed").is_ok());
        for w in ["eedd", "eded", "dede", "ddee"] {
            assert!(Borel::from_shuffle(&g, w).is_err(), "{w}");
        }
        let alpha = g.root(0, 2);
        assert!(g.roots_equal(&alpha, &g.root(3, 1)));
        let b1 = fundamental_system(&g, &Borel::from_shuffle(&g, "edde").unwrap());
        assert_eq!(b1.roots.len(), 2);
        let pair = Sl22Pair::new(&g, &alpha);
        // lambda(h1) = l0 + l2, lambda(h2) = l1 + l3
        let lam = |xs: &[i64]| Weight::from_ints(&g, xs);
        let s = sl22_shift(&g, &lam(&[1, 0, -1, 0]), &alpha).unwrap();
        assert_eq!((s.rank, s.recipe.clone()), (0, vec![]));
        let s = sl22_shift(&g, &lam(&[1, 1, -1, 0]), &alpha).unwrap();
        assert_eq!((s.rank, s.recipe.clone()), (1, vec![1]));
        assert_eq!(s.weight, lam(&[1, 1, -1, 0]).add_root(&alpha, -1));
        let s = sl22_shift(&g, &lam(&[1, 1, 0, 0]), &alpha).unwrap();
        assert_eq!((s.rank, s.recipe), (2, vec![0, 1]));
        assert!(g.superbracket(&pair.e(&g, 0), &pair.f(&g, 1)).is_zero());
        assert!(shifted_highest_weight(&g, &lam(&[0, 0, 0, 0]), &alpha).is_err());
    }

    #[test]
    fn psl_weights_modulo_supertrace() {
        let g = build_algebra(Family::PSL, 2, 2).unwrap();
        let x = Weight::from_ints(&g, &[1, 2, 0, 3]);
        let y = Weight::from_ints(&g, &[2, 3, -1, 2]);
        assert!(g.weights_equal(&x, &y));
        assert!(!g.weights_equal(&x, &Weight::from_ints(&g, &[2, 3, 1, 2])));
        assert!(g.check_weight(&x).is_err());
        assert!(g.check_weight(&Weight::from_ints(&g, &[1, 2, 0, -3])).is_ok());
    }

    fn bubble_distance(a: &str, b: &str) -> usize {
        // inversions between the d positions
        let pa: Vec<usize> = a.char_indices().filter(|c| c.1 == 'd').map(|c| c.0).collect();
        let pb: Vec<usize> = b.char_indices().filter(|c| c.1 == 'd').map(|c| c.0).collect();
        pa.iter().zip(&pb).map(|(x, y)| x.abs_diff(*y)).sum()
    }

    proptest! {
        #[test]
        fn reflection_is_involution(m in 1usize..4, n in 1usize..3, seed in 0usize..1000) {
            let g = AlgebraModel::gl(m, n);
            let words = all_shuffles(m, n);
            let b = Borel::from_shuffle(&g, &words[seed % words.len()]).unwrap();
            let fs = fundamental_system(&g, &b);
            for (i, alpha) in fs.roots.iter().enumerate() {
                if !g.is_isotropic(alpha) { continue; }
                let r = odd_reflection(&g, &fs, alpha).unwrap();
                prop_assert_eq!(&r, &fundamental_system(&g, &b.swapped(i)));
                let back = odd_reflection(&g, &r, &alpha.neg()).unwrap();
                prop_assert_eq!(&back, &fs);
            }
        }

        #[test]
        fn chain_length_is_bubble_distance(m in 1usize..4, n in 1usize..3, s1 in 0usize..100, s2 in 0usize..100) {
            let g = AlgebraModel::gl(m, n);
            let words = all_shuffles(m, n);
            let (w1, w2) = (&words[s1 % words.len()], &words[s2 % words.len()]);
            let b1 = Borel::from_shuffle(&g, w1).unwrap();
            let b2 = Borel::from_shuffle(&g, w2).unwrap();
            let chain = odd_chain(&g, &b1, &b2).unwrap();
            prop_assert_eq!(chain.len(), bubble_distance(w1, w2));
            let mut cur = b1.clone();
            for st in &chain {
                prop_assert_eq!(g.root(cur.order[st.pos], cur.order[st.pos + 1]), st.root.clone());
                cur = cur.swapped(st.pos);
            }
            prop_assert_eq!(cur, b2);
        }
    }
}

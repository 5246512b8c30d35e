//! Antilinear involutions tau of the matrix models and their induced actions
//! on weights, roots, Borels and even group elements.
//!
//! Type A involutions have the shape tau(X) = M op(conj X) M^-1 where op is the
//! identity, minus the supertranspose, the block swap, or the block swap of
//! minus the supertranspose. The supertranspose is
//! [[A, B], [C, D]]^st = [[A^T, -C^T], [B^T, D^T]].

use crate::algebra_model::{AlgebraModel, Borel, Family, Root, Weight};
use crate::error::{bail, Error, Result};
use crate::linalg::Matrix;
use crate::scalar::GR;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Recipe {
    Conj,
    NegSupertranspose,
    PiSwap,
    PiNegSupertranspose,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvolutionSpec {
    /// Entrywise conjugation (for q(n): conjugation of both blocks).
    Split,
    /// X -> -M conj(X)^st M^-1 with M diagonal.
    Unitary(Vec<GR>),
    /// X -> conj(X)^Pi on gl(n|n).
    QBar,
    /// X -> ((-conj X)^st)^Pi on gl(n|n).
    PeBar,
    Custom { m: Matrix, recipe: Recipe },
    /// q(n): (A, B) -> (-S conj(A)^T S, c S conj(B)^T S), S = diag(signs), c = +-i.
    QUnitary { signs: Vec<i64>, phase: GR },
}

impl InvolutionSpec {
    /// Canonical u(p,q|r,s): M = diag(1^p, -1^q | i^r, -i^s).
    pub fn unitary_pqrs(p: usize, q: usize, r: usize, s: usize) -> Self {
        let mut d = vec![GR::one(); p];
        d.extend(vec![GR::int(-1); q]);
        d.extend(vec![GR::i(); r]);
        d.extend(vec![-GR::i(); s]);
        InvolutionSpec::Unitary(d)
    }

    /// Compact form u(m|n), M = diag(1^m | i^n).
    pub fn compact(m: usize, n: usize) -> Self {
        Self::unitary_pqrs(m, 0, n, 0)
    }

    /// u(p,q|r,s) with hyperbolic pairs: eps index i is paired with m-1-i for
    /// i < min(p,q) (likewise for delta), so the definite part sits in the
    /// middle of each block.
    pub fn unitary_hyperbolic(p: usize, q: usize, r: usize, s: usize) -> Self {
        let (m, n) = (p + q, r + s);
        let mut mat = Matrix::zeros(m + n, m + n);
        let mut fill = |off: usize, size: usize, pairs: usize, unit: GR, mid_sign: i64| {
            for i in 0..pairs {
                mat.set(off + i, off + size - 1 - i, unit.clone());
                mat.set(off + size - 1 - i, off + i, unit.clone());
            }
            for i in pairs..size - pairs {
                mat.set(off + i, off + i, &unit * &GR::int(mid_sign));
            }
        };
        fill(0, m, p.min(q), GR::one(), if q > p { -1 } else { 1 });
        fill(m, n, r.min(s), GR::i(), if s > r { -1 } else { 1 });
        InvolutionSpec::Custom { m: mat, recipe: Recipe::NegSupertranspose }
    }
}

#[derive(Clone, Debug)]
pub struct Involution {
    pub spec: InvolutionSpec,
    pub model: AlgebraModel,
    kind: Kind,
}

#[derive(Clone, Debug)]
enum Kind {
    TypeA { m: Matrix, m_inv: Matrix, recipe: Recipe },
    QSplit,
    QUnitary { s: Matrix, phase: GR },
}

pub fn supertranspose(model: &AlgebraModel, x: &Matrix) -> Matrix {
    let split = model.block_split();
    let mut out = Matrix::zeros(x.cols, x.rows);
    for (i, j, v) in x.nonzero_entries() {
        // entry (i,j) moves to (j,i); the lower-left block picks up a sign
        let sign = i >= split && j < split;
        out.set(j, i, if sign { -v.clone() } else { v.clone() });
    }
    out
}

fn block_swap(model: &AlgebraModel, x: &Matrix) -> Matrix {
    let n = model.block_split();
    let size = x.rows;
    let p = |a: usize| (a + n) % size;
    let mut out = Matrix::zeros(size, size);
    for (i, j, v) in x.nonzero_entries() {
        out.set(p(i), p(j), v.clone());
    }
    out
}

fn neg(x: &Matrix) -> Matrix {
    x.scale(&GR::int(-1))
}

pub fn make_involution(spec: InvolutionSpec, model: &AlgebraModel) -> Result<Involution> {
    let size = model.matrix_size();
    let kind = if model.is_q() {
        match &spec {
            InvolutionSpec::Split => Kind::QSplit,
            InvolutionSpec::QUnitary { signs, phase } => {
                if signs.len() != model.m || signs.iter().any(|s| *s != 1 && *s != -1) {
                    bail!(Involution, "q({}) unitary form needs {} signs in {{1,-1}}", model.m, model.m);
                }
                if phase.unit_exponent().map_or(true, |k| k % 2 == 0) {
                    bail!(Involution, "odd phase must be i or -i, got {phase}");
                }
                let s = Matrix::diagonal(&signs.iter().map(|&x| GR::int(x)).collect::<Vec<_>>());
                Kind::QUnitary { s, phase: phase.clone() }
            }
            _ => bail!(Unsupported, "{:?} is not available on {}", spec, model.name()),
        }
    } else {
        let pi_ok = model.m == model.n;
        let (m, recipe) = match &spec {
            InvolutionSpec::Split => (Matrix::identity(size), Recipe::Conj),
            InvolutionSpec::Unitary(d) => {
                if d.len() != size {
                    bail!(Involution, "unitary form needs {} diagonal entries, got {}", size, d.len());
                }
                for (a, x) in d.iter().enumerate() {
                    let k = x.unit_exponent();
                    let ok = if model.index_odd(a) { matches!(k, Some(1 | 3)) } else { matches!(k, Some(0 | 2)) };
                    if !ok {
                        bail!(Involution, "unitary entry {} at index {} must be {}", x, a + 1, if model.index_odd(a) { "+-i" } else { "+-1" });
                    }
                }
                (Matrix::diagonal(d), Recipe::NegSupertranspose)
            }
            InvolutionSpec::QBar | InvolutionSpec::PeBar => {
                if !pi_ok {
                    bail!(Unsupported, "{:?} needs m = n, got {}", spec, model.name());
                }
                let r = if spec == InvolutionSpec::QBar { Recipe::PiSwap } else { Recipe::PiNegSupertranspose };
                (Matrix::identity(size), r)
            }
            InvolutionSpec::Custom { m, recipe } => {
                if m.rows != size || m.cols != size {
                    bail!(Involution, "custom matrix must be {size}x{size}");
                }
                if matches!(recipe, Recipe::PiSwap | Recipe::PiNegSupertranspose) && !pi_ok {
                    bail!(Unsupported, "block swap needs m = n, got {}", model.name());
                }
                (m.clone(), *recipe)
            }
            InvolutionSpec::QUnitary { .. } => bail!(Unsupported, "q(n) unitary form on {}", model.name()),
        };
        let m_inv = m.inverse().ok_or_else(|| Error::Involution("matrix M is singular".into()))?;
        Kind::TypeA { m, m_inv, recipe }
    };
    let inv = Involution { spec, model: model.clone(), kind };
    inv.validate()?;
    Ok(inv)
}

impl Involution {
    /// tau(x), antilinear.
    pub fn apply(&self, x: &Matrix) -> Matrix {
        let model = &self.model;
        match &self.kind {
            Kind::TypeA { m, m_inv, recipe } => {
                let c = x.conj();
                let y = match recipe {
                    Recipe::Conj => c,
                    Recipe::NegSupertranspose => neg(&supertranspose(model, &c)),
                    Recipe::PiSwap => block_swap(model, &c),
                    Recipe::PiNegSupertranspose => block_swap(model, &neg(&supertranspose(model, &c))),
                };
                &(m * &y) * m_inv
            }
            Kind::QSplit => x.conj(),
            Kind::QUnitary { s, phase } => {
                let n = model.m;
                let a = x.submatrix(0, 0, n, n).conj();
                let b = x.submatrix(0, n, n, n).conj();
                let a2 = neg(&(&(s * &a.transpose()) * s));
                let b2 = (&(s * &b.transpose()) * s).scale(phase);
                let mut out = Matrix::zeros(2 * n, 2 * n);
                out.set_block(0, 0, &a2);
                out.set_block(n, n, &a2);
                out.set_block(0, n, &b2);
                out.set_block(n, 0, &b2);
                out
            }
        }
    }

    /// Induced action on an invertible even element g of the ambient group.
    pub fn apply_group(&self, g: &Matrix) -> Matrix {
        let model = &self.model;
        match &self.kind {
            Kind::TypeA { m, m_inv, recipe } => {
                let c = g.conj();
                let inv_t = || c.transpose().inverse().expect("invertible group element");
                let y = match recipe {
                    Recipe::Conj => c.clone(),
                    Recipe::NegSupertranspose => inv_t(),
                    Recipe::PiSwap => block_swap(model, &c),
                    Recipe::PiNegSupertranspose => block_swap(model, &inv_t()),
                };
                &(m * &y) * m_inv
            }
            Kind::QSplit => g.conj(),
            Kind::QUnitary { s, .. } => {
                let n = model.m;
                let a = g.submatrix(0, 0, n, n).conj();
                let a2 = &(s * &a.transpose().inverse().expect("invertible group element")) * s;
                let mut out = Matrix::zeros(2 * n, 2 * n);
                out.set_block(0, 0, &a2);
                out.set_block(n, n, &a2);
                out
            }
        }
    }

    fn validate(&self) -> Result<()> {
        let model = &self.model;
        let basis = model.basis();
        let images: Vec<Matrix> = basis.iter().map(|b| self.apply(&b.matrix)).collect();
        for (b, t) in basis.iter().zip(&images) {
            if !model.contains(t) {
                bail!(Involution, "tau({}) leaves {}", b.label, model.name());
            }
            if model.parity(t) != Some(b.odd) && !t.is_zero() {
                bail!(Involution, "tau({}) changes parity", b.label);
            }
            if self.apply(t) != b.matrix {
                bail!(Involution, "tau^2 != id on {}", b.label);
            }
        }
        for h in model.cartan_basis() {
            if !self.apply(&h).is_diagonal() {
                bail!(Involution, "tau does not preserve the diagonal Cartan subalgebra");
            }
        }
        for (i, x) in basis.iter().enumerate() {
            for (j, y) in basis.iter().enumerate() {
                let lhs = self.apply(&model.superbracket(&x.matrix, &y.matrix));
                let rhs = model.superbracket(&images[i], &images[j]);
                if lhs != rhs {
                    bail!(Involution, "tau does not preserve the bracket [{}, {}]", x.label, y.label);
                }
            }
        }
        Ok(())
    }

    /// Root of tau(e_alpha).
    pub fn tau_root(&self, r: &Root) -> Root {
        let model = &self.model;
        let (a, b) = r.pair().expect("type A root");
        let t = self.apply(&model.root_vector(a, b));
        let k = model.rank();
        let (i, j, _) = t
            .nonzero_entries()
            .find(|(i, j, _)| !model.is_q() || (*i < k && *j < k))
            .expect("tau of a root vector is nonzero");
        model.root(i, j)
    }

    /// tau applied to the chosen root vector e_alpha.
    pub fn tau_root_vector(&self, r: &Root) -> Matrix {
        let (a, b) = r.pair().expect("type A root");
        self.apply(&self.model.root_vector(a, b))
    }

    /// The weight h -> conj(lambda(tau h)).
    pub fn tau_weight(&self, lambda: &Weight) -> Weight {
        let model = &self.model;
        let coords = (0..model.rank())
            .map(|a| model.eval_weight(lambda, &self.apply(&model.cartan_unit(a))).conj())
            .collect();
        Weight::new(coords, lambda.m)
    }

    /// The Borel tau(b), as an ordering.
    pub fn tau_borel(&self, b: &Borel) -> Result<Borel> {
        let model = &self.model;
        let k = model.rank();
        let mut score = vec![0usize; k];
        let images: Vec<Root> = b.positive_roots(model).iter().map(|r| self.tau_root(r)).collect();
        for r in &images {
            score[r.pair().unwrap().0] += 1;
        }
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by(|x, y| score[*y].cmp(&score[*x]));
        let out = Borel { order };
        for r in &images {
            if !out.is_positive(r) {
                bail!(Invariant, "tau does not map {:?} to a Borel", b.order);
            }
        }
        Ok(out)
    }

    pub fn family(&self) -> Family {
        self.model.family
    }
}

//! Kostant's cascade of strongly orthogonal roots, tau-compatible Borels and
//! the cascade formula for the sign of c_lambda.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::Zero;

use crate::algebra_model::{coroot, AlgebraModel, Borel, Root, Weight};
use crate::bw_monoid::Endotype;
use crate::engine::{lambda_data, relate_borels, endotype_from_sign, BorelRelation, Classification};
use crate::enveloping::{evaluate_at_weight, PbwEngine};
use crate::error::{bail, Result};
use crate::linalg::Matrix;
use crate::real_forms::{make_involution, Involution, InvolutionSpec};
use crate::scalar::{rat_int, Rational, GR};

type Vector = Vec<i64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystemData {
    pub roots: Vec<Vector>,
    pub positive: Vec<Vector>,
    /// Gram matrix of the ambient coordinates.
    pub form: Vec<Vec<i64>>,
}

impl RootSystemData {
    pub fn new(roots: Vec<Vector>, positive: Vec<Vector>, form: Vec<Vec<i64>>) -> Result<Self> {
        let set: BTreeSet<&Vector> = roots.iter().collect();
        for r in &roots {
            if !set.contains(&neg(r)) {
                bail!(Invalid, "root system is not closed under negation");
            }
        }
        for p in &positive {
            if !set.contains(p) {
                bail!(Invalid, "positive root {p:?} is not a root");
            }
            if positive.contains(&neg(p)) {
                bail!(Invalid, "inconsistent positivity at {p:?}");
            }
        }
        if 2 * positive.len() != roots.len() {
            bail!(Invalid, "positive roots and their negatives do not cover the roots");
        }
        Ok(RootSystemData { roots, positive, form })
    }

    /// A_{n-1} in n coordinates with the standard positive system.
    pub fn type_a(n: usize) -> Self {
        let mut roots = Vec::new();
        let mut positive = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    let mut v = vec![0; n];
                    v[a] = 1;
                    v[b] = -1;
                    if a < b {
                        positive.push(v.clone());
                    }
                    roots.push(v);
                }
            }
        }
        let form = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        RootSystemData { roots, positive, form }
    }

    /// Orthogonal product of two systems.
    pub fn product(&self, other: &RootSystemData) -> Self {
        let (n1, n2) = (self.form.len(), other.form.len());
        let lift = |v: &Vector, off: usize, total: usize| {
            let mut w = vec![0; total];
            w[off..off + v.len()].copy_from_slice(v);
            w
        };
        let t = n1 + n2;
        let roots = self.roots.iter().map(|v| lift(v, 0, t)).chain(other.roots.iter().map(|v| lift(v, n1, t))).collect();
        let positive =
            self.positive.iter().map(|v| lift(v, 0, t)).chain(other.positive.iter().map(|v| lift(v, n1, t))).collect();
        let mut form = vec![vec![0; t]; t];
        for i in 0..n1 {
            for j in 0..n1 {
                form[i][j] = self.form[i][j];
            }
        }
        for i in 0..n2 {
            for j in 0..n2 {
                form[n1 + i][n1 + j] = other.form[i][j];
            }
        }
        RootSystemData { roots, positive, form }
    }

    pub fn inner(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut s = 0;
        for (i, a) in x.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                s += a * self.form[i][j] * b;
            }
        }
        s
    }

    pub fn is_root(&self, v: &[i64]) -> bool {
        self.roots.iter().any(|r| r == v)
    }
}

fn neg(v: &[i64]) -> Vector {
    v.iter().map(|x| -x).collect()
}

fn add(x: &[i64], y: &[i64]) -> Vector {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CascadeResult {
    pub roots: Vec<Vector>,
}

impl CascadeResult {
    /// Coroots h_beta = [e_beta, e_-beta] in the model (type A roots).
    pub fn coroots(&self, model: &AlgebraModel) -> Result<Vec<Matrix>> {
        self.roots
            .iter()
            .map(|v| {
                let r = Root { coeffs: v.clone(), odd: false };
                if r.pair().is_none() {
                    bail!(Invalid, "{v:?} is not a type A root");
                }
                Ok(coroot(model, &r))
            })
            .collect()
    }
}

/// Connected components under non-orthogonality.
fn components(rs: &RootSystemData, pos: &[Vector]) -> Vec<Vec<Vector>> {
    let n = pos.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for i in 0..n {
        for j in i + 1..n {
            if rs.inner(&pos[i], &pos[j]) != 0 {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<Vector>> = Default::default();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(pos[i].clone());
    }
    groups.into_values().collect()
}

pub fn kostant_cascade(rs: &RootSystemData) -> Result<CascadeResult> {
    let mut out = Vec::new();
    let mut level: Vec<Vector> = rs.positive.clone();
    while !level.is_empty() {
        let mut highest = Vec::new();
        let mut next = Vec::new();
        for comp in components(rs, &level) {
            let tops: Vec<&Vector> =
                comp.iter().filter(|b| comp.iter().all(|a| !rs.is_root(&add(b, a)))).collect();
            let [top] = tops.as_slice() else {
                bail!(Invalid, "component has {} maximal roots; positivity is inconsistent", tops.len());
            };
            let top = (*top).clone();
            next.extend(comp.iter().filter(|a| rs.inner(a, &top) == 0).cloned());
            highest.push(top);
        }
        highest.sort_by(|a, b| b.cmp(a));
        out.extend(highest);
        level = next;
    }
    Ok(CascadeResult { roots: out })
}

/// Split part a of the diagonal Cartan, as the +1 eigenspace of tau on real
/// diagonal matrices; the compact part is the -1 eigenspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanDecompositionData {
    /// Basis of a, as diagonal coordinate vectors.
    pub split: Vec<Vec<Rational>>,
    pub compact_dim: usize,
}

impl CartanDecompositionData {
    pub fn from_tau(model: &AlgebraModel, tau: &Involution) -> Result<Self> {
        let k = model.rank();
        let mut s = Matrix::zeros(k, k);
        for a in 0..k {
            let img = tau.apply(&model.cartan_unit(a));
            for b in 0..k {
                let v = img.get(b, b);
                if !v.is_real() {
                    bail!(Invalid, "tau does not preserve the real diagonal matrices");
                }
                s.set(b, a, v.clone());
            }
        }
        let eig = |sign: i64| {
            let mut m = s.clone();
            for a in 0..k {
                m.add_at(a, a, &GR::int(-sign));
            }
            m.nullspace()
        };
        let split: Vec<Vec<Rational>> = eig(1).into_iter().map(|v| v.into_iter().map(|x| x.re).collect()).collect();
        let compact_dim = eig(-1).len();
        if split.len() + compact_dim != k {
            bail!(Invariant, "tau is not an involution on the diagonal Cartan");
        }
        Ok(CartanDecompositionData { split, compact_dim })
    }

    /// a = 0, e.g. su(n) or the diagonal su(p,q).
    pub fn compact_mode(model: &AlgebraModel) -> Self {
        CartanDecompositionData { split: Vec::new(), compact_dim: model.rank() }
    }

    /// t = 0, e.g. sl(n, R).
    pub fn split_mode(model: &AlgebraModel) -> Self {
        let k = model.rank();
        let split = (0..k).map(|a| (0..k).map(|b| rat_int(i64::from(a == b))).collect()).collect();
        CartanDecompositionData { split, compact_dim: 0 }
    }

    fn root_on(r: &Root, h: &[Rational]) -> Rational {
        let mut s = Rational::zero();
        for (c, x) in r.coeffs.iter().zip(h) {
            if *c != 0 {
                s += x * rat_int(*c);
            }
        }
        s
    }

    /// Phi_l: roots vanishing on a.
    pub fn levi_roots(&self, model: &AlgebraModel) -> Vec<Root> {
        model.roots().into_iter().filter(|r| self.split.iter().all(|h| Self::root_on(r, h).is_zero())).collect()
    }
}

/// Even roots of the Levi, positive for b.
fn levi_even_positive(model: &AlgebraModel, dec: &CartanDecompositionData, b: &Borel) -> Vec<Root> {
    dec.levi_roots(model).into_iter().filter(|r| !r.odd && b.is_positive(r)).collect()
}

/// The even Levi roots must be of compact type: -[e, tau(e)] is a positive
/// multiple of h_alpha.
fn check_compact_levi(model: &AlgebraModel, tau: &Involution, roots: &[Root]) -> Result<()> {
    for r in roots {
        let (a, b) = r.pair().expect("type A root");
        let e = model.unit(a, b);
        let h = model.superbracket(&e, &tau.apply(&e));
        let ha = coroot(model, r);
        let ratio = h.get(a, a) / ha.get(a, a);
        let ok = ratio.is_real() && ratio.real_sign() == Some(-1) && h == ha.scale(&ratio);
        if !ok {
            bail!(
                Precondition,
                "Levi root {} is not of compact type; the cascade formula does not apply",
                r.label(model)
            );
        }
    }
    Ok(())
}

/// Borel with positive system Phi_l^+ and {alpha : alpha(h0) > 0}; indices
/// are sorted by decreasing h0 and ties follow `levi_order`.
pub fn tau_compatible_borel(
    model: &AlgebraModel,
    tau: &Involution,
    dec: &CartanDecompositionData,
    h0: &[Rational],
    levi_order: &[usize],
) -> Result<Borel> {
    let k = model.rank();
    if h0.len() != k {
        bail!(Invalid, "h0 has {} coordinates, expected {k}", h0.len());
    }
    // h0 must lie in a: solve in the split basis
    let mut sys = Matrix::zeros(k, dec.split.len() + 1);
    for (j, v) in dec.split.iter().enumerate() {
        for a in 0..k {
            sys.set(a, j, GR::real(v[a].clone()));
        }
    }
    for a in 0..k {
        sys.set(a, dec.split.len(), GR::real(h0[a].clone()));
    }
    if sys.clone().rref().contains(&dec.split.len()) {
        bail!(Invalid, "h0 is not in the split part of the Cartan");
    }
    let levi = dec.levi_roots(model);
    for r in model.roots() {
        let in_levi = levi.iter().any(|l| l == &r);
        if !in_levi && CartanDecompositionData::root_on(&r, h0).is_zero() {
            bail!(Invalid, "h0 is not regular: {} vanishes on it", r.label(model));
        }
    }
    let pos = |a: usize| levi_order.iter().position(|&x| x == a).unwrap_or(usize::MAX);
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&x, &y| h0[y].cmp(&h0[x]).then(pos(x).cmp(&pos(y))));
    let b = Borel { order };
    b.validate(model)?;
    check_tau_compatible(model, tau, dec, &b)?;
    Ok(b)
}

/// Necessary conditions for b to come from the construction above.
pub fn check_tau_compatible(model: &AlgebraModel, tau: &Involution, dec: &CartanDecompositionData, b: &Borel) -> Result<()> {
    let levi = dec.levi_roots(model);
    let restrict = |r: &Root| -> Vec<Rational> { dec.split.iter().map(|h| CartanDecompositionData::root_on(r, h)).collect() };
    let u: Vec<Root> = b.positive_roots(model).into_iter().filter(|r| !levi.contains(r)).collect();
    for r in &u {
        if !u.contains(&tau.tau_root(r)) {
            bail!(Precondition, "Borel is not tau-compatible: tau moves {} out of the nilradical", r.label(model));
        }
    }
    for x in &u {
        for y in model.roots() {
            if !levi.contains(&y) && restrict(x) == restrict(&y) && !b.is_positive(&y) {
                bail!(Precondition, "Borel is not tau-compatible: {} and {} restrict equally", x.label(model), y.label(model));
            }
        }
    }
    check_compact_levi(model, tau, &levi_even_positive(model, dec, b))
}

/// The Weyl element of the relation must be the longest element for the even
/// Levi roots.
pub fn is_levi_longest(model: &AlgebraModel, dec: &CartanDecompositionData, rel: &BorelRelation) -> bool {
    let roots = levi_even_positive(model, dec, &rel.borel);
    let perm = &rel.w.perm;
    let mut support: Vec<BTreeSet<usize>> = Vec::new();
    for r in &roots {
        let (a, b) = r.pair().unwrap();
        let hit: Vec<usize> = (0..support.len()).filter(|&i| support[i].contains(&a) || support[i].contains(&b)).collect();
        let mut merged: BTreeSet<usize> = [a, b].into_iter().collect();
        for &i in hit.iter().rev() {
            merged.extend(support.remove(i));
        }
        support.push(merged);
    }
    for a in 0..perm.len() {
        let comp = support.iter().find(|s| s.contains(&a));
        match comp {
            None if perm[a] != a => return false,
            Some(s) if !s.contains(&perm[a]) => return false,
            _ => {}
        }
    }
    roots.iter().all(|r| {
        let (a, b) = r.pair().unwrap();
        !rel.borel.is_positive(&model.root(perm[a], perm[b]))
    })
}

pub fn levi_cascade(model: &AlgebraModel, dec: &CartanDecompositionData, b: &Borel) -> Result<CascadeResult> {
    let pos: Vec<Vector> = levi_even_positive(model, dec, b).into_iter().map(|r| r.coeffs).collect();
    let mut roots: Vec<Vector> = pos.iter().flat_map(|p| [p.clone(), neg(p)]).collect();
    roots.sort();
    let k = model.rank();
    let form = (0..k).map(|i| (0..k).map(|j| if i == j { model.index_sign(i) } else { 0 }).collect()).collect();
    kostant_cascade(&RootSystemData::new(roots, pos, form)?)
}

/// (-1)^(sum lambda(h_beta)) times the supplied HC value.
pub fn c_lambda_cascade(model: &AlgebraModel, lambda: &Weight, cascade: &CascadeResult, hc_value: &GR) -> Result<GR> {
    let mut sum = GR::zero();
    for h in cascade.coroots(model)? {
        sum += &model.eval_weight(lambda, &h);
    }
    let Some(n) = sum.as_integer() else {
        bail!(Precondition, "sum of lambda over the cascade coroots is {sum}, not an integer");
    };
    Ok(if n.is_odd() { -hc_value.clone() } else { hc_value.clone() })
}

/// Group-free classification on a tau-compatible Borel.
pub fn classify_via_cascade(model: &AlgebraModel, tau: &Involution, b: &Borel, lambda: &Weight) -> Result<Classification> {
    if model.is_q() {
        bail!(Precondition, "the cascade route is not available for {}", model.name());
    }
    model.check_weight(lambda)?;
    let dec = CartanDecompositionData::from_tau(model, tau)?;
    check_tau_compatible(model, tau, &dec, b)?;
    let rel = relate_borels(model, tau, b)?;
    if !is_levi_longest(model, &dec, &rel) {
        bail!(Precondition, "Borel is not tau-compatible: w is not the longest Levi element");
    }
    let data = lambda_data(model, tau, lambda, &rel)?;
    let mut out;
    if !model.weights_equal(&data.lambda_b, &tau.tau_weight(lambda)) {
        out = Classification::bare(Endotype::Complex(0));
    } else {
        let engine = PbwEngine::new(model, b);
        let hc = engine.hc_projection(&engine.straighten(&data.d_factors));
        let cascade = levi_cascade(model, &dec, b)?;
        let c = c_lambda_cascade(model, lambda, &cascade, &evaluate_at_weight(&hc, lambda))?;
        if !c.is_real() || c.is_zero() {
            bail!(Invariant, "cascade c_lambda = {c} is not a nonzero real number");
        }
        out = Classification::bare(endotype_from_sign(data.r, c.real_sign() == Some(1)));
        out.c_lambda = Some(c);
        out.hc = Some(hc);
    }
    out.lambda_b = Some(data.lambda_b);
    out.r = Some(data.r);
    out.subsequence = data.subsequence;
    out.relation = Some(rel);
    Ok(out)
}

/// Reductive case: the result is 0R, 4R or 0C.
pub fn classify_reductive(model: &AlgebraModel, tau: &Involution, b: &Borel, lambda: &Weight) -> Result<Endotype> {
    if model.n != 0 && !model.is_q() {
        bail!(Invalid, "{} is not a Lie algebra", model.name());
    }
    let e = classify_via_cascade(model, tau, b, lambda)?.endotype;
    if !matches!(e, Endotype::Real(0) | Endotype::Real(4) | Endotype::Complex(0)) {
        bail!(Invariant, "reductive module with endotype {e}");
    }
    Ok(e)
}

/// Palindromic e/d word with `a` e's and `c` d's; when both are odd the
/// centre is "ed".
pub fn palindromic_word(a: usize, c: usize) -> String {
    let half: String = "e".repeat(a / 2) + &"d".repeat(c / 2);
    let centre = match (a % 2, c % 2) {
        (1, 1) => "ed",
        (1, 0) => "e",
        (0, 1) => "d",
        _ => "",
    };
    let back: String = half.chars().rev().collect();
    format!("{half}{centre}{back}")
}

/// u(p,q|r,s) in the hyperbolic realization with its tau-compatible Borel
/// e^p' d^r' w d^r' e^p', w palindromic.
pub fn hyperbolic_setup(p: usize, q: usize, r: usize, s: usize) -> Result<(AlgebraModel, Involution, Borel)> {
    let (m, n) = (p + q, r + s);
    let model = crate::algebra_model::build_algebra(crate::algebra_model::Family::GL, m, n)?;
    let tau = make_involution(InvolutionSpec::unitary_hyperbolic(p, q, r, s), &model)?;
    let dec = CartanDecompositionData::from_tau(&model, &tau)?;
    let (pe, pd) = (p.min(q), r.min(s));
    let mut h0 = vec![Rational::zero(); m + n];
    let mut v = (pe + pd) as i64;
    for i in 0..pe {
        h0[i] = rat_int(v);
        h0[m - 1 - i] = rat_int(-v);
        v -= 1;
    }
    for i in 0..pd {
        h0[m + i] = rat_int(v);
        h0[m + n - 1 - i] = rat_int(-v);
        v -= 1;
    }
    let word = palindromic_word(m - 2 * pe, n - 2 * pd);
    let (mut e, mut d) = (pe, m + pd);
    let levi_order: Vec<usize> = word
        .chars()
        .map(|ch| {
            let x = if ch == 'e' { &mut e } else { &mut d };
            *x += 1;
            *x - 1
        })
        .collect();
    let b = tau_compatible_borel(&model, &tau, &dec, &h0, &levi_order)?;
    Ok((model, tau, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_model::Family;
    use crate::error::Error;
    use crate::engine::{endotype_basic_with, matching_weights};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn strongly_orthogonal(rs: &RootSystemData, c: &CascadeResult) -> bool {
        for (i, x) in c.roots.iter().enumerate() {
            for y in &c.roots[i + 1..] {
                if rs.is_root(&add(x, y)) || rs.is_root(&add(x, &neg(y))) || rs.inner(x, y) != 0 {
                    return false;
                }
            }
        }
        true
    }

    fn maximal(rs: &RootSystemData, c: &CascadeResult) -> bool {
        rs.positive.iter().all(|p| c.roots.iter().any(|b| rs.inner(p, b) != 0))
    }

    #[test]
    fn type_a_cascades() {
        for n in 2..=7 {
            let rs = RootSystemData::type_a(n);
            let c = kostant_cascade(&rs).unwrap();
            let want: Vec<Vector> = (0..n / 2)
                .map(|i| {
                    let mut v = vec![0; n];
                    v[i] = 1;
                    v[n - 1 - i] = -1;
                    v
                })
                .collect();
            assert_eq!(c.roots, want);
            assert!(strongly_orthogonal(&rs, &c) && maximal(&rs, &c));
        }
        let rs = RootSystemData::type_a(2).product(&RootSystemData::type_a(2));
        let c = kostant_cascade(&rs).unwrap();
        assert_eq!(c.roots, vec![vec![1, -1, 0, 0], vec![0, 0, 1, -1]]);
        for (a, b) in [(3, 4), (2, 5), (4, 4)] {
            let rs = RootSystemData::type_a(a).product(&RootSystemData::type_a(b));
            let c = kostant_cascade(&rs).unwrap();
            assert!(strongly_orthogonal(&rs, &c) && maximal(&rs, &c));
        }
        assert!(RootSystemData::new(vec![vec![1, -1]], vec![], vec![vec![1, 0], vec![0, 1]]).is_err());
    }

    #[test]
    fn su_n_rules() {
        for n in 2..=4usize {
            let model = AlgebraModel::sl(n, 0);
            let tau = make_involution(InvolutionSpec::compact(n, 0), &model).unwrap();
            let b = Borel::standard(&model);
            let mut lam = vec![0i64; n];
            lam[0] = 1;
            let e = classify_reductive(&model, &tau, &b, &Weight::from_ints(&model, &lam)).unwrap();
            let want = match n {
                2 => Endotype::Real(4),
                _ => Endotype::Complex(0),
            };
            assert_eq!(e, want, "n = {n}");
        }
        // su(3) adjoint
        let model = AlgebraModel::sl(3, 0);
        let tau = make_involution(InvolutionSpec::compact(3, 0), &model).unwrap();
        let e = classify_reductive(&model, &tau, &Borel::standard(&model), &Weight::from_ints(&model, &[2, 1, 0])).unwrap();
        assert_eq!(e, Endotype::Real(0));
    }

    #[test]
    fn split_mode_is_real() {
        let model = AlgebraModel::sl(3, 0);
        let tau = make_involution(InvolutionSpec::Split, &model).unwrap();
        let dec = CartanDecompositionData::from_tau(&model, &tau).unwrap();
        assert_eq!(dec, CartanDecompositionData::split_mode(&model));
        let h0: Vec<Rational> = [3, 2, 1].iter().map(|&x| rat_int(x)).collect();
        let b = tau_compatible_borel(&model, &tau, &dec, &h0, &[]).unwrap();
        assert_eq!(b, Borel::standard(&model));
        assert!(levi_cascade(&model, &dec, &b).unwrap().roots.is_empty());
        assert_eq!(classify_reductive(&model, &tau, &b, &Weight::from_ints(&model, &[3, 1, 0])).unwrap(), Endotype::Real(0));
    }

    #[test]
    fn diagonal_su_pq_is_rejected() {
        let model = build(Family::GL, 2, 0);
        let tau = make_involution(InvolutionSpec::unitary_pqrs(1, 1, 0, 0), &model).unwrap();
        let err = classify_via_cascade(&model, &tau, &Borel::standard(&model), &Weight::from_ints(&model, &[1, 0]));
        assert!(matches!(err, Err(Error::Precondition(_))));
    }

    fn build(f: Family, m: usize, n: usize) -> AlgebraModel {
        crate::algebra_model::build_algebra(f, m, n).unwrap()
    }

    #[test]
    fn palindromes() {
        assert_eq!(palindromic_word(2, 2), "edde");
        assert_eq!(palindromic_word(3, 1), "eede");
        assert_eq!(palindromic_word(1, 1), "ed");
        assert_eq!(palindromic_word(3, 2), "edede");
    }

    #[test]
    fn hyperbolic_borels_need_few_reflections() {
        for (p, q, r, s) in [(1, 2, 0, 1), (1, 1, 1, 1), (0, 2, 0, 1), (0, 1, 0, 1), (1, 2, 1, 0), (0, 3, 1, 1)] {
            let (model, tau, b) = hyperbolic_setup(p, q, r, s).unwrap();
            let rel = relate_borels(&model, &tau, &b).unwrap();
            let dec = CartanDecompositionData::from_tau(&model, &tau).unwrap();
            assert!(is_levi_longest(&model, &dec, &rel), "{p},{q},{r},{s}");
            let both_odd = (q.abs_diff(p)) % 2 == 1 && (s.abs_diff(r)) % 2 == 1;
            assert_eq!(rel.steps.len(), usize::from(both_odd), "{p},{q},{r},{s}");
        }
    }

    #[test]
    fn cascade_sign_matches_group_sign() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut compared = 0;
        for (p, q, r, s) in [(0, 1, 0, 1), (1, 1, 0, 1), (0, 2, 1, 1), (1, 2, 0, 1)] {
            let (model, tau, b) = hyperbolic_setup(p, q, r, s).unwrap();
            let rel = relate_borels(&model, &tau, &b).unwrap();
            let ws = matching_weights(&model, &tau, &rel, &mut || rng.gen_range(-3..4), 5);
            for lam in ws {
                let Ok(g) = endotype_basic_with(&model, &tau, &lam, rel.clone()) else { continue };
                let c = classify_via_cascade(&model, &tau, &b, &lam).unwrap();
                assert_eq!(g.endotype, c.endotype);
                assert_eq!(g.c_lambda.map(|x| x.real_sign()), c.c_lambda.map(|x| x.real_sign()));
                compared += 1;
            }
        }
        assert!(compared >= 8, "only {compared} weights compared");
    }
}

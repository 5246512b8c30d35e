//! Endotype computation from a highest weight, a Borel and an antilinear
//! involution: relating b to tau(b), the isotropic subsequence, lambda_B,
//! D_lambda and c_lambda, plus the Q(n), Clifford and composite rules.

use num_traits::Zero;

use crate::algebra_model::{
    coroot, fundamental_system, odd_reflection, sl22_shift, odd_chain, AlgebraModel, Borel, OddStep, Root,
    Sl22Pair, Weight,
};
use crate::bw_monoid::{bw_product, clifford_endotype, report, ClassificationReport, Endotype, Signature};
use crate::enveloping::{evaluate_at_weight, CartanPolynomial, PbwEngine};
use crate::error::{bail, Error, Result};
use crate::linalg::Matrix;
use crate::real_forms::{Involution, InvolutionSpec, Recipe};
use crate::scalar::{Rational, GR};

/// Signed permutation matrix built from a word in the embedded simple
/// reflections [[0,1],[-1,0]].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    /// w e_a = +-e_{perm[a]}.
    pub perm: Vec<usize>,
    pub word: Vec<usize>,
    pub matrix: Matrix,
    pub inverse: Matrix,
}

/// Rule for picking the next descent when reducing a permutation to a word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WordChoice {
    Leftmost,
    Rightmost,
    /// Cycles through the available descents with the given offset.
    Rotating(usize),
}

/// Reduced word (j_1, .., j_L) with perm = s_{j_1} o .. o s_{j_L}.
pub fn reduced_word(perm: &[usize], choice: WordChoice) -> Vec<usize> {
    let mut cur = perm.to_vec();
    let mut rev = Vec::new();
    let mut step = 0;
    loop {
        let desc: Vec<usize> = (0..cur.len().saturating_sub(1)).filter(|&j| cur[j] > cur[j + 1]).collect();
        if desc.is_empty() {
            break;
        }
        let j = match choice {
            WordChoice::Leftmost => desc[0],
            WordChoice::Rightmost => desc[desc.len() - 1],
            WordChoice::Rotating(k) => desc[(k + step) % desc.len()],
        };
        step += 1;
        cur.swap(j, j + 1);
        rev.push(j);
    }
    rev.reverse();
    rev
}

/// Distinct reduced words of `perm`, at most `limit`, found by depth-first
/// search over descents.
pub fn reduced_words(perm: &[usize], limit: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, suffix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, limit: usize) {
        if out.len() >= limit {
            return;
        }
        let desc: Vec<usize> = (0..cur.len().saturating_sub(1)).filter(|&j| cur[j] > cur[j + 1]).collect();
        if desc.is_empty() {
            let mut w = suffix.clone();
            w.reverse();
            out.push(w);
            return;
        }
        for j in desc {
            cur.swap(j, j + 1);
            suffix.push(j);
            rec(cur, suffix, out, limit);
            suffix.pop();
            cur.swap(j, j + 1);
        }
    }
    let mut out = Vec::new();
    rec(&mut perm.to_vec(), &mut Vec::new(), &mut out, limit);
    out
}

fn simple_reflection(model: &AlgebraModel, j: usize) -> Matrix {
    let size = model.matrix_size();
    let mut s = Matrix::identity(size);
    let copies = if model.is_q() { vec![0, model.m] } else { vec![0] };
    for off in copies {
        let (a, b) = (off + j, off + j + 1);
        s.set(a, a, GR::zero());
        s.set(b, b, GR::zero());
        s.set(a, b, GR::one());
        s.set(b, a, GR::int(-1));
    }
    s
}

impl WeylElement {
    pub fn from_word(model: &AlgebraModel, word: &[usize]) -> Self {
        let k = model.rank();
        let mut perm: Vec<usize> = (0..k).collect();
        let mut matrix = Matrix::identity(model.matrix_size());
        for &j in word {
            matrix = &matrix * &simple_reflection(model, j);
        }
        // perm = s_{j1} o .. o s_{jL}
        for &j in word.iter().rev() {
            for p in perm.iter_mut() {
                if *p == j {
                    *p = j + 1;
                } else if *p == j + 1 {
                    *p = j;
                }
            }
        }
        let inverse = matrix.inverse().expect("signed permutation is invertible");
        WeylElement { perm, word: word.to_vec(), matrix, inverse }
    }

    /// Ad_{w^-1} x = w^-1 x w.
    pub fn ad_inv(&self, x: &Matrix) -> Matrix {
        &(&self.inverse * x) * &self.matrix
    }

    pub fn ad(&self, x: &Matrix) -> Matrix {
        &(&self.matrix * x) * &self.inverse
    }

    /// (Ad*_w mu)(h) = mu(Ad_{w^-1} h).
    pub fn coadjoint(&self, model: &AlgebraModel, mu: &Weight) -> Weight {
        Weight::new(
            (0..model.rank()).map(|a| model.eval_weight(mu, &self.ad_inv(&model.cartan_unit(a)))).collect(),
            mu.m,
        )
    }

    /// Ad*_{w^-1}.
    pub fn coadjoint_inv(&self, model: &AlgebraModel, mu: &Weight) -> Weight {
        Weight::new((0..model.rank()).map(|a| model.eval_weight(mu, &self.ad(&model.cartan_unit(a)))).collect(), mu.m)
    }
}

#[derive(Clone, Debug)]
pub struct BorelRelation {
    pub borel: Borel,
    pub tau_borel: Borel,
    /// Ad_{w^-1} tau(b), reached from b by the odd reflections.
    pub reflected: Borel,
    pub w: WeylElement,
    pub steps: Vec<OddStep>,
    /// w^-1 tau(w^-1), diagonal.
    pub d: Matrix,
}

impl BorelRelation {
    pub fn odd_sequence(&self) -> Vec<Root> {
        self.steps.iter().map(|s| s.root.clone()).collect()
    }

    /// Number of isotropic roots k (pairs count once for sl(2|2)).
    pub fn k(&self, model: &AlgebraModel) -> usize {
        if model.is_sl22() {
            self.steps.len() / 2
        } else {
            self.steps.len()
        }
    }
}

/// The even-block permutation sigma with sigma(E_b[i]) = E_tau(b)[i].
fn block_permutation(model: &AlgebraModel, b: &Borel, tb: &Borel) -> Vec<usize> {
    let k = model.rank();
    let mut perm: Vec<usize> = (0..k).collect();
    for odd in [false, true] {
        let xs = b.order.iter().filter(|&&a| model.index_odd(a) == odd);
        let ys = tb.order.iter().filter(|&&a| model.index_odd(a) == odd);
        for (&x, &y) in xs.zip(ys) {
            perm[x] = y;
        }
    }
    perm
}

pub fn relate_borels(model: &AlgebraModel, tau: &Involution, b: &Borel) -> Result<BorelRelation> {
    relate_borels_with(model, tau, b, WordChoice::Leftmost)
}

pub fn relate_borels_with(model: &AlgebraModel, tau: &Involution, b: &Borel, choice: WordChoice) -> Result<BorelRelation> {
    let tb = tau.tau_borel(b)?;
    let perm = block_permutation(model, b, &tb);
    relation_from_word(model, tau, b, &tb, &reduced_word(&perm, choice))
}

/// Relation built from an explicit word for w; used to test independence of
/// the chosen word.
pub fn relation_from_word(
    model: &AlgebraModel,
    tau: &Involution,
    b: &Borel,
    tb: &Borel,
    word: &[usize],
) -> Result<BorelRelation> {
    let w = WeylElement::from_word(model, word);
    if w.perm != block_permutation(model, b, tb) {
        bail!(Invalid, "word {word:?} does not realize the block permutation");
    }
    let mut inv = vec![0; w.perm.len()];
    for (a, &p) in w.perm.iter().enumerate() {
        inv[p] = a;
    }
    let reflected = Borel { order: tb.order.iter().map(|&a| inv[a]).collect() };
    let steps = odd_chain(model, b, &reflected)?;
    if !model.is_sl22() {
        let mut pi = fundamental_system(model, b);
        for st in &steps {
            pi = odd_reflection(model, &pi, &st.root)?;
        }
        let target = fundamental_system(model, &reflected);
        let same = pi.roots.len() == target.roots.len()
            && pi.roots.iter().all(|r| target.roots.iter().any(|t| model.roots_equal(r, t)));
        if !same {
            bail!(Invariant, "odd reflections do not reach Ad(w^-1) tau(b)");
        }
    }
    let d = &w.inverse * &tau.apply_group(&w.inverse);
    if !d.is_diagonal() {
        bail!(Invariant, "w^-1 tau(w^-1) is not diagonal");
    }
    if d.diag().iter().any(|x| x.unit_exponent().is_none()) {
        bail!(Invariant, "w^-1 tau(w^-1) has an entry outside {{1, i, -1, -i}}");
    }
    Ok(BorelRelation { borel: b.clone(), tau_borel: tb.clone(), reflected, w, steps, d })
}

/// Greedy subsequence i_1 < .. < i_r (0-based) of the odd chain.
pub fn isotropic_subsequence(model: &AlgebraModel, lambda: &Weight, rel: &BorelRelation) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    for (i, st) in rel.steps.iter().enumerate() {
        let h = coroot(model, &st.root);
        let mut shift = GR::zero();
        for &s in &chosen {
            shift += &model.eval_root(&rel.steps[s].root, &h);
        }
        if model.eval_weight(lambda, &h) != shift {
            chosen.push(i);
        }
    }
    chosen
}

/// The data entering the classification of a basic-type module.
#[derive(Clone, Debug)]
pub struct LambdaData {
    pub subsequence: Vec<usize>,
    pub r: usize,
    pub lambda_b: Weight,
    /// Factors of D_lambda in order.
    pub d_factors: Vec<Matrix>,
}

pub fn lambda_data(model: &AlgebraModel, tau: &Involution, lambda: &Weight, rel: &BorelRelation) -> Result<LambdaData> {
    let mut factors_e = Vec::new();
    let (subsequence, shift) = if model.is_sl22() {
        match rel.steps.len() {
            0 => (Vec::new(), Weight::zero(model)),
            2 => {
                let alpha = &rel.steps[0].root;
                let sh = sl22_shift(model, lambda, alpha)?;
                let pair = Sl22Pair::new(model, alpha);
                for &i in &sh.recipe {
                    factors_e.push(pair.e(model, i));
                }
                (sh.recipe.clone(), Weight::zero(model).add_root(alpha, sh.rank as i64))
            }
            n => bail!(Invariant, "{} odd reflections relate b and tau(b) on {}", n, model.name()),
        }
    } else {
        let sub = isotropic_subsequence(model, lambda, rel);
        let mut s = Weight::zero(model);
        for &i in &sub {
            let (a, c) = rel.steps[i].root.pair().expect("type A root");
            factors_e.push(model.unit(a, c));
            s = s.add_root(&rel.steps[i].root, 1);
        }
        (sub, s)
    };
    let r = factors_e.len();
    let lambda_b = rel.w.coadjoint(model, &lambda.sub(&shift));
    let mut d_factors = factors_e.clone();
    for e in &factors_e {
        d_factors.push(rel.w.ad_inv(&tau.apply(e)));
    }
    Ok(LambdaData { subsequence, r, lambda_b, d_factors })
}

/// lambda(d) for diagonal d with entries in {+-1, +-i}; exponents are
/// shifted inside each block, which is harmless since each block of d has
/// determinant 1.
pub fn character_at(model: &AlgebraModel, lambda: &Weight, d: &Matrix) -> Result<GR> {
    let k = model.rank();
    let blocks: Vec<Vec<usize>> = if model.is_q() {
        vec![(0..k).collect()]
    } else {
        vec![(0..model.m).collect(), (model.m..k).collect()]
    };
    let mut total: i64 = 0;
    for block in blocks {
        let exps: Vec<i64> = block.iter().map(|&a| d.get(a, a).unit_exponent().expect("unit entry") as i64).collect();
        if exps.iter().all(|&e| e == 0) {
            continue;
        }
        if exps.iter().sum::<i64>() % 4 != 0 {
            bail!(Invariant, "block of w^-1 tau(w^-1) has determinant != 1");
        }
        let base = &lambda.coords[block[0]];
        for (&a, &e) in block.iter().zip(&exps) {
            if e == 0 {
                continue;
            }
            let diff = &lambda.coords[a] - base;
            let Some(n) = diff.as_integer() else {
                bail!(
                    Precondition,
                    "weight ({}) is not integral on the derived torus, lambda(w^-1 tau(w^-1)) is undefined",
                    lambda
                );
            };
            total += e * i64::try_from(&n).map_err(|_| Error::Precondition("weight too large".into()))?;
        }
    }
    Ok(GR::i_pow(total))
}

/// Even-part dominance of lambda for b: lambda(h) in Z_{>=0} for every even
/// simple root of b.
pub fn is_even_dominant(model: &AlgebraModel, lambda: &Weight, b: &Borel) -> bool {
    for odd in [false, true] {
        let seq: Vec<usize> = b.order.iter().copied().filter(|&a| model.index_odd(a) == odd).collect();
        for w in seq.windows(2) {
            let h = coroot(model, &model.root(w[0], w[1]));
            let v = model.eval_weight(lambda, &h);
            match v.as_integer() {
                Some(n) if n >= 0.into() => {}
                _ => return false,
            }
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Auto,
    Group,
    Cascade,
}

impl std::str::FromStr for Route {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Route::Auto),
            "group" => Ok(Route::Group),
            "cascade" => Ok(Route::Cascade),
            _ => Err(Error::Invalid(format!("unknown route {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub endotype: Endotype,
    pub report: ClassificationReport,
    pub lambda_b: Option<Weight>,
    pub r: Option<usize>,
    pub c_lambda: Option<GR>,
    pub hc: Option<CartanPolynomial>,
    pub signature: Option<Signature>,
    pub relation: Option<BorelRelation>,
    pub subsequence: Vec<usize>,
    pub warnings: Vec<String>,
}

impl Classification {
    pub(crate) fn bare(endotype: Endotype) -> Self {
        Classification {
            endotype,
            report: report(endotype),
            lambda_b: None,
            r: None,
            c_lambda: None,
            hc: None,
            signature: None,
            relation: None,
            subsequence: Vec::new(),
            warnings: Vec::new(),
        }
    }
}

pub fn endotype_from_sign(r: usize, c_positive: bool) -> Endotype {
    match (r % 2 == 0, c_positive) {
        (true, true) => Endotype::Real(0),
        (false, false) => Endotype::Real(2),
        (true, false) => Endotype::Real(4),
        (false, true) => Endotype::Real(6),
    }
}

fn reality_trap(model: &AlgebraModel, lambda: &Weight, b: &Borel, what: &str, c: &GR) -> Error {
    if is_even_dominant(model, lambda, b) {
        Error::Invariant(format!("{what} = {c} is not a nonzero real number"))
    } else {
        Error::Precondition(format!(
            "{what} = {c} is not a nonzero real number; ({lambda}) is not dominant for the even part of the Borel"
        ))
    }
}

/// 2R and 6R can only come from unitary forms with m, n odd or from the
/// conjugated block swap on gl(n|n).
fn odd_real_possible(model: &AlgebraModel, tau: &Involution) -> bool {
    match &tau.spec {
        InvolutionSpec::QBar => true,
        InvolutionSpec::Unitary(_) => model.m % 2 == 1 && model.n % 2 == 1,
        InvolutionSpec::Custom { recipe: Recipe::NegSupertranspose, .. } => model.m % 2 == 1 && model.n % 2 == 1,
        InvolutionSpec::Custom { recipe: Recipe::PiSwap, .. } => true,
        _ => false,
    }
}

/// Basic-type rule for gl, sl, psl and reductive gl.
pub fn endotype_basic(model: &AlgebraModel, tau: &Involution, b: &Borel, lambda: &Weight) -> Result<Classification> {
    let rel = relate_borels(model, tau, b)?;
    endotype_basic_with(model, tau, lambda, rel)
}

pub fn endotype_basic_with(
    model: &AlgebraModel,
    tau: &Involution,
    lambda: &Weight,
    rel: BorelRelation,
) -> Result<Classification> {
    if model.is_q() {
        bail!(Invalid, "basic-type rule called on {}", model.name());
    }
    model.check_weight(lambda)?;
    let data = lambda_data(model, tau, lambda, &rel)?;
    let target = tau.tau_weight(lambda);
    let mut out = if !model.weights_equal(&data.lambda_b, &target) {
        Classification::bare(Endotype::Complex(0))
    } else {
        let engine = PbwEngine::new(model, &rel.borel);
        let hc = engine.hc_projection(&engine.straighten(&data.d_factors));
        let c = &evaluate_at_weight(&hc, lambda) * &character_at(model, lambda, &rel.d)?;
        if !c.is_real() || c.is_zero() {
            return Err(reality_trap(model, lambda, &rel.borel, "c_lambda", &c));
        }
        let mut cl = Classification::bare(endotype_from_sign(data.r, c.real_sign() == Some(1)));
        cl.c_lambda = Some(c);
        cl.hc = Some(hc);
        cl
    };
    if matches!(out.endotype, Endotype::Real(2 | 6)) && !odd_real_possible(model, tau) {
        out.warnings.push(format!("{} is not expected for this real form", out.endotype));
    }
    out.lambda_b = Some(data.lambda_b);
    out.r = Some(data.r);
    out.subsequence = data.subsequence;
    out.relation = Some(rel);
    Ok(out)
}

/// Q(n) rule: Clifford type of B_{lambda, tau_w} twisted by the sign of c_lambda.
pub fn endotype_qn(model: &AlgebraModel, tau: &Involution, lambda: &Weight) -> Result<Classification> {
    if !model.is_q() {
        bail!(Invalid, "Q(n) rule called on {}", model.name());
    }
    model.check_weight(lambda)?;
    let b = Borel::standard(model);
    let rel = relate_borels(model, tau, &b)?;
    if !rel.steps.is_empty() {
        bail!(Invariant, "odd reflections between Borels of {}", model.name());
    }
    let tau_w = |x: &Matrix| rel.w.ad_inv(&tau.apply(x));
    let odd: Vec<Matrix> = (0..model.m).map(|a| model.odd_cartan_unit(a)).collect();
    let cl = clifford_endotype(model, lambda, &tau_w, &odd)?;
    let mut out = if !cl.self_conjugate {
        Classification::bare(cl.endotype)
    } else {
        let c = character_at(model, lambda, &rel.d)?;
        if !c.is_real() || c.is_zero() {
            return Err(reality_trap(model, lambda, &b, "c_lambda", &c));
        }
        let s = if c.real_sign() == Some(1) { Endotype::Real(0) } else { Endotype::Real(4) };
        let mut o = Classification::bare(bw_product(cl.endotype, s));
        o.c_lambda = Some(c);
        o
    };
    out.signature = cl.signature;
    out.lambda_b = Some(rel.w.coadjoint(model, lambda));
    out.r = Some(0);
    out.relation = Some(rel);
    Ok(out)
}

/// sl(1|1) and psl(1|1): the whole algebra is its own Cartan, so the
/// Clifford rule applies directly to the odd part.
pub fn endotype_small(model: &AlgebraModel, tau: &Involution, lambda: &Weight) -> Result<Classification> {
    if !(model.mod_supertrace() && model.m == 1 && model.n == 1) {
        bail!(Invalid, "Clifford rule for {} is not available", model.name());
    }
    let odd = vec![model.unit(0, 1), model.unit(1, 0)];
    let cl = clifford_endotype(model, lambda, &|x| tau.apply(x), &odd)?;
    let mut out = Classification::bare(cl.endotype);
    out.signature = cl.signature;
    Ok(out)
}

pub fn classify(model: &AlgebraModel, tau: &Involution, b: &Borel, lambda: &Weight, route: Route) -> Result<Classification> {
    b.validate(model)?;
    if model.is_q() {
        if route == Route::Cascade {
            bail!(Precondition, "the cascade route is not available for {}", model.name());
        }
        return endotype_qn(model, tau, lambda);
    }
    if model.mod_supertrace() && model.m == 1 && model.n == 1 {
        return endotype_small(model, tau, lambda);
    }
    match route {
        Route::Auto | Route::Group => endotype_basic(model, tau, b, lambda),
        Route::Cascade => crate::cascade::classify_via_cascade(model, tau, b, lambda),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModuleType {
    M,
    Q,
}

impl ModuleType {
    pub fn of(e: Endotype) -> ModuleType {
        if e.index() % 2 == 0 {
            ModuleType::M
        } else {
            ModuleType::Q
        }
    }
}

/// Endotype of an exterior tensor product over a direct sum of ideals.
pub fn endotype_direct_sum(parts: &[(Endotype, ModuleType)]) -> (Endotype, ModuleType) {
    let mut acc = (Endotype::Real(0), ModuleType::M);
    for &(e, t) in parts {
        let ty = match (acc.1, t) {
            (ModuleType::Q, ModuleType::Q) => ModuleType::M,
            (ModuleType::M, ModuleType::M) => ModuleType::M,
            _ => ModuleType::Q,
        };
        acc = (bw_product(acc.0, e), ty);
    }
    acc
}

/// Relation between W' and W'' for a real form with a complex structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConjugateTest {
    /// W'' is conj(W') or Pi conj(W').
    Conjugate,
    Unrelated,
}

pub fn endotype_realified(has_pi_1: bool, has_pi_2: bool, test: ConjugateTest) -> Endotype {
    if has_pi_1 != has_pi_2 {
        Endotype::Complex(1)
    } else if test == ConjugateTest::Conjugate {
        Endotype::Real(0)
    } else {
        Endotype::Complex(0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CartanFamily {
    W(usize),
    S(usize),
    STilde(usize),
    H(usize),
    P(usize),
}

pub fn endotype_cartan_type(family: CartanFamily, center_real: bool, delegated: Option<Endotype>) -> Result<Endotype> {
    match family {
        CartanFamily::S(_) | CartanFamily::STilde(_) => Ok(Endotype::Real(0)),
        CartanFamily::W(_) => Ok(if center_real { Endotype::Real(0) } else { Endotype::Complex(0) }),
        CartanFamily::H(_) | CartanFamily::P(_) => match delegated {
            Some(e @ (Endotype::Complex(0) | Endotype::Real(0) | Endotype::Real(4))) => Ok(e),
            Some(e) => bail!(Invalid, "a reductive Levi cannot produce {e}"),
            None => bail!(Precondition, "{family:?} needs the reductive answer for its Levi"),
        },
    }
}

/// Weights lambda with lambda - S = Ad*_{w^-1}(conj(lambda o tau)) for a
/// fixed subset S of the odd chain, sampled from the real solution space.
/// Only weights whose computed lambda_B matches are returned.
pub fn matching_weights(
    model: &AlgebraModel,
    tau: &Involution,
    rel: &BorelRelation,
    params: &mut dyn FnMut() -> i64,
    count: usize,
) -> Vec<Weight> {
    let k = model.rank();
    let steps = rel.steps.len();
    let subsets: Vec<Vec<usize>> = if model.is_sl22() {
        vec![vec![]]
    } else {
        (0..1usize << steps).map(|mask| (0..steps).filter(|i| mask >> i & 1 == 1).collect()).collect()
    };
    // F(lambda) = lambda - Ad*_{w^-1}(tau_weight lambda), real-linear in
    // (re, im); columns for the supertrace direction when weights are taken
    // modulo it.
    let f = |lam: &Weight| rel.w.coadjoint_inv(model, &tau.tau_weight(lam));
    let mut cols: Vec<Vec<GR>> = Vec::new();
    for a in 0..k {
        for unit in [GR::one(), GR::i()] {
            let mut e = Weight::zero(model);
            e.coords[a] = unit;
            cols.push(e.sub(&f(&e)).coords);
        }
    }
    if model.mod_supertrace() {
        let st = model.supertrace_weight();
        cols.push(st.coords.iter().map(|x| -x.clone()).collect());
        cols.push(st.coords.iter().map(|x| -(x * &GR::i())).collect());
    }
    let nvars = cols.len();
    // rows: real and imaginary parts of each coordinate
    let mut out = Vec::new();
    for subset in &subsets {
        let mut s = Weight::zero(model);
        for &i in subset {
            s = s.add_root(&rel.steps[i].root, 1);
        }
        let mut sys = Matrix::zeros(2 * k, nvars + 1);
        for (j, col) in cols.iter().enumerate() {
            for a in 0..k {
                sys.set(2 * a, j, GR::real(col[a].re.clone()));
                sys.set(2 * a + 1, j, GR::real(col[a].im.clone()));
            }
        }
        for a in 0..k {
            sys.set(2 * a, nvars, GR::real(s.coords[a].re.clone()));
            sys.set(2 * a + 1, nvars, GR::real(s.coords[a].im.clone()));
        }
        let mut red = sys.clone();
        let pivots = red.rref();
        if pivots.contains(&nvars) {
            continue;
        }
        let free: Vec<usize> = (0..nvars).filter(|c| !pivots.contains(c)).collect();
        let mut tries = 0;
        let mut found = 0;
        while found < count && tries < 20 * count {
            tries += 1;
            let mut x = vec![Rational::zero(); nvars];
            for &fc in &free {
                x[fc] = Rational::from_integer(params().into());
            }
            for (row, &pc) in pivots.iter().enumerate() {
                let mut v = red.get(row, nvars).re.clone();
                for &fc in &free {
                    v -= &red.get(row, fc).re * &x[fc];
                }
                x[pc] = v;
            }
            let lam = Weight::new(
                (0..k).map(|a| GR::new(x[2 * a].clone(), x[2 * a + 1].clone())).collect(),
                model.m,
            );
            let Ok(data) = lambda_data(model, tau, &lam, rel) else { continue };
            if model.weights_equal(&data.lambda_b, &tau.tau_weight(&lam)) {
                out.push(lam);
                found += 1;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_model::{build_algebra, transport_weight};
    use crate::real_forms::make_involution;
    use crate::scalar::rat;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn g(s: &str) -> GR {
        s.parse().unwrap()
    }

    fn w(model: &AlgebraModel, xs: &[&str]) -> Weight {
        Weight::new(xs.iter().map(|s| g(s)).collect(), model.m)
    }

    #[test]
    fn words() {
        let perm = vec![2, 1, 0];
        let lw = reduced_word(&perm, WordChoice::Leftmost);
        assert_eq!(lw.len(), 3);
        let all = reduced_words(&perm, 10);
        assert_eq!(all.len(), 2);
        let model = AlgebraModel::gl(3, 0);
        for word in all {
            assert_eq!(WeylElement::from_word(&model, &word).perm, perm);
        }
        assert_eq!(reduced_words(&[3, 2, 1, 0], 100).len(), 16);
    }

    #[test]
    fn relations_of_examples() {
        let m11 = AlgebraModel::gl(1, 1);
        let b = Borel::from_shuffle(&m11, "ed").unwrap();
        let split = make_involution(InvolutionSpec::Split, &m11).unwrap();
        let rel = relate_borels(&m11, &split, &b).unwrap();
        assert!(rel.w.word.is_empty() && rel.steps.is_empty());
        let compact = make_involution(InvolutionSpec::compact(1, 1), &m11).unwrap();
        let rel = relate_borels(&m11, &compact, &b).unwrap();
        assert!(rel.w.word.is_empty());
        assert_eq!(rel.odd_sequence(), vec![m11.root(0, 1)]);

        let m12 = AlgebraModel::gl(1, 2);
        let b = Borel::from_shuffle(&m12, "edd").unwrap();
        let compact = make_involution(InvolutionSpec::compact(1, 2), &m12).unwrap();
        let rel = relate_borels(&m12, &compact, &b).unwrap();
        assert_eq!(rel.w.perm, vec![0, 2, 1]);
        assert_eq!(rel.odd_sequence(), vec![m12.root(0, 1), m12.root(0, 2)]);
    }

    #[test]
    fn gl11_compact_cases() {
        let model = AlgebraModel::gl(1, 1);
        let b = Borel::standard(&model);
        let tau = make_involution(InvolutionSpec::compact(1, 1), &model).unwrap();
        // a + b = 0: r = 0, lambda_B = lambda
        let lam = w(&model, &["1/2+1i", "-1/2-1i"]);
        let cl = endotype_basic(&model, &tau, &b, &lam).unwrap();
        assert_eq!(cl.r, Some(0));
        assert_eq!(cl.lambda_b.as_ref().unwrap(), &lam);
        // case (ii): c = alpha + beta
        for (al, be) in [(1i64, 2i64), (-3, 1), (2, -1)] {
            let lam = Weight::new(vec![GR::from_parts((1, 2), (al, 1)), GR::from_parts((-1, 2), (be, 1))], 1);
            let cl = endotype_basic(&model, &tau, &b, &lam).unwrap();
            assert_eq!(cl.r, Some(1));
            assert_eq!(cl.c_lambda, Some(GR::int(al + be)));
            let want = if al + be > 0 { Endotype::Real(6) } else { Endotype::Real(2) };
            assert_eq!(cl.endotype, want);
        }
    }

    #[test]
    fn gl12_compact_example() {
        let model = AlgebraModel::gl(1, 2);
        let b = Borel::from_shuffle(&model, "edd").unwrap();
        let tau = make_involution(InvolutionSpec::compact(1, 2), &model).unwrap();
        // generic case: a1 = 1 + alpha i, b1 real, b2 = conj(-a1 - 1)... use
        // the matching-weight sampler and check the closed form
        let rel = relate_borels(&model, &tau, &b).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let ws = matching_weights(&model, &tau, &rel, &mut || rng.gen_range(-3..4), 4);
        assert!(!ws.is_empty());
        for lam in ws {
            let cl = endotype_basic_with(&model, &tau, &lam, rel.clone()).unwrap();
            if cl.r == Some(2) {
                let lb = cl.lambda_b.clone().unwrap();
                let c = &lam.coords;
                assert_eq!(lb.coords, vec![&c[0] - &GR::int(2), &c[2] + &GR::one(), &c[1] + &GR::one()]);
                let z = &(&GR::one() + &GR::new(rat(0, 1), c[0].im.clone())) + &c[1];
                let two_re: i64 = (&c[1].re * rat(2, 1)).to_integer().try_into().unwrap();
                let sign = if (two_re + 1) % 2 == 0 { 1 } else { -1 };
                assert_eq!(cl.c_lambda.clone().unwrap(), &GR::int(-sign) * &(&z * &z.conj()));
            }
        }
    }

    #[test]
    fn su2_natural_is_quaternionic() {
        let model = AlgebraModel::sl(2, 0);
        let tau = make_involution(InvolutionSpec::compact(2, 0), &model).unwrap();
        let b = Borel::standard(&model);
        let cl = endotype_basic(&model, &tau, &b, &Weight::from_ints(&model, &[1, 0])).unwrap();
        assert_eq!(cl.endotype, Endotype::Real(4));
        let cl = endotype_basic(&model, &tau, &b, &Weight::from_ints(&model, &[2, 0])).unwrap();
        assert_eq!(cl.endotype, Endotype::Real(0));
    }

    #[test]
    fn split_is_real() {
        let model = AlgebraModel::gl(1, 1);
        let tau = make_involution(InvolutionSpec::Split, &model).unwrap();
        let b = Borel::standard(&model);
        let cl = endotype_basic(&model, &tau, &b, &Weight::from_ints(&model, &[5, 7])).unwrap();
        assert_eq!(cl.endotype, Endotype::Real(0));
        assert_eq!(cl.c_lambda, Some(GR::one()));
        let cl = endotype_basic(&model, &tau, &b, &w(&model, &["1+1i", "2"])).unwrap();
        assert_eq!(cl.endotype, Endotype::Complex(0));
    }

    #[test]
    fn q_forms() {
        let model = AlgebraModel::q(1);
        let split = make_involution(InvolutionSpec::Split, &model).unwrap();
        assert_eq!(endotype_qn(&model, &split, &Weight::from_ints(&model, &[1])).unwrap().endotype, Endotype::Real(7));
        assert_eq!(endotype_qn(&model, &split, &Weight::from_ints(&model, &[-1])).unwrap().endotype, Endotype::Real(1));
        let lam = w(&model, &["1+1i"]);
        assert_eq!(endotype_qn(&model, &split, &lam).unwrap().endotype, Endotype::Complex(1));
        let model = AlgebraModel::q(2);
        let split = make_involution(InvolutionSpec::Split, &model).unwrap();
        assert_eq!(endotype_qn(&model, &split, &Weight::from_ints(&model, &[2, 1])).unwrap().endotype, Endotype::Real(6));
    }

    #[test]
    fn composites() {
        use Endotype::Real;
        assert_eq!(endotype_direct_sum(&[(Real(0), ModuleType::M), (Real(4), ModuleType::M)]), (Real(4), ModuleType::M));
        assert_eq!(endotype_direct_sum(&[(Real(1), ModuleType::Q), (Real(7), ModuleType::Q)]), (Real(0), ModuleType::M));
        assert_eq!(endotype_direct_sum(&[(Real(3), ModuleType::Q), (Real(0), ModuleType::M)]), (Real(3), ModuleType::Q));
        assert_eq!(endotype_realified(false, false, ConjugateTest::Conjugate), Real(0));
        assert_eq!(endotype_realified(true, false, ConjugateTest::Conjugate), Endotype::Complex(1));
        assert_eq!(endotype_realified(false, false, ConjugateTest::Unrelated), Endotype::Complex(0));
        assert_eq!(endotype_cartan_type(CartanFamily::S(3), false, None).unwrap(), Real(0));
        assert_eq!(endotype_cartan_type(CartanFamily::W(2), true, None).unwrap(), Real(0));
        assert_eq!(endotype_cartan_type(CartanFamily::W(2), false, None).unwrap(), Endotype::Complex(0));
        assert_eq!(endotype_cartan_type(CartanFamily::P(2), true, Some(Real(4))).unwrap(), Real(4));
        assert!(endotype_cartan_type(CartanFamily::H(4), true, Some(Real(2))).is_err());
    }

    #[test]
    fn sl11_clifford() {
        let model = build_algebra(crate::algebra_model::Family::SL, 1, 1).unwrap();
        let tau = make_involution(InvolutionSpec::Split, &model).unwrap();
        let b = Borel::standard(&model);
        let cl = classify(&model, &tau, &b, &Weight::from_ints(&model, &[1, 0]), Route::Auto).unwrap();
        assert_eq!(cl.signature.map(|s| s.rank), Some(2));
        assert_eq!(cl.endotype, Endotype::Real(0));
    }

    #[test]
    fn word_independence_gl22() {
        let model = AlgebraModel::gl(2, 2);
        let tau = make_involution(InvolutionSpec::compact(2, 2), &model).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for word in ["eedd", "edde", "dede"] {
            let b = Borel::from_shuffle(&model, word).unwrap();
            let rel = relate_borels(&model, &tau, &b).unwrap();
            let ws = matching_weights(&model, &tau, &rel, &mut || rng.gen_range(-2..3), 2);
            let tb = rel.tau_borel.clone();
            for lam in ws {
                let base = endotype_basic_with(&model, &tau, &lam, rel.clone());
                let Ok(base) = base else { continue };
                for alt in reduced_words(&rel.w.perm, 5) {
                    let r2 = relation_from_word(&model, &tau, &b, &tb, &alt).unwrap();
                    assert_eq!(endotype_basic_with(&model, &tau, &lam, r2).unwrap().endotype, base.endotype);
                }
            }
        }
    }

    #[test]
    fn borel_independence_gl12() {
        let model = AlgebraModel::gl(1, 2);
        let tau = make_involution(InvolutionSpec::compact(1, 2), &model).unwrap();
        let b0 = Borel::from_shuffle(&model, "edd").unwrap();
        let lam = Weight::from_ints(&model, &[3, -1, -2]);
        let e0 = endotype_basic(&model, &tau, &b0, &lam).unwrap().endotype;
        for word in ["ded", "dde"] {
            let b = Borel::from_shuffle(&model, word).unwrap();
            let mu = transport_weight(&model, &lam, &b0, &b).unwrap();
            assert_eq!(endotype_basic(&model, &tau, &b, &mu).unwrap().endotype, e0);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn d_is_diagonal_unit(p in 0usize..3, q in 0usize..3, r in 0usize..3, s in 0usize..2, pick in 0usize..20) {
            prop_assume!(p + q > 0 && r + s > 0 && p + q + r + s <= 4);
            let model = AlgebraModel::gl(p + q, r + s);
            let tau = make_involution(InvolutionSpec::unitary_pqrs(p, q, r, s), &model).unwrap();
            let words = crate::algebra_model::all_shuffles(p + q, r + s);
            let b = Borel::from_shuffle(&model, &words[pick % words.len()]).unwrap();
            let rel = relate_borels(&model, &tau, &b).unwrap();
            prop_assert!(rel.d.is_diagonal());
            prop_assert!(rel.d.diag().iter().all(|x| x.unit_exponent().is_some()));
        }
    }
}

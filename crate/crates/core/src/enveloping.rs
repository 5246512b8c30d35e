//! PBW normal form in U(gl(m|n)) relative to a Borel, and the Harish-Chandra
//! projection onto U(h).

use std::cell::RefCell;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::algebra_model::{AlgebraModel, Borel, Weight};
use crate::linalg::Matrix;
use crate::scalar::GR;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    /// E_ab, a != b
    Root(usize, usize),
    /// E_aa
    Cartan(usize),
}

/// Nondecreasing list of generator positions in the PBW order.
pub type Monomial = Vec<u16>;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct PbwElement {
    pub terms: BTreeMap<Monomial, GR>,
}

impl PbwElement {
    pub fn one() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Vec::new(), GR::one());
        PbwElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, mono: Monomial, c: &GR) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
        }
    }

    fn add_scaled(&mut self, o: &PbwElement, c: &GR) {
        for (k, v) in &o.terms {
            self.add_term(k.clone(), &(v * c));
        }
    }

    pub fn sub(&self, o: &PbwElement) -> PbwElement {
        let mut out = self.clone();
        out.add_scaled(o, &GR::int(-1));
        out
    }
}

impl fmt::Debug for PbwElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.terms)
    }
}

/// Polynomial in E_11, ..., E_NN: exponent vector -> coefficient.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct CartanPolynomial {
    pub terms: BTreeMap<Vec<u32>, GR>,
    pub vars: usize,
}

impl CartanPolynomial {
    pub fn constant(vars: usize, c: GR) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; vars], c);
        }
        CartanPolynomial { terms, vars }
    }

    /// c + sum_a coeffs[a] E_aa
    pub fn linear(coeffs: &[i64], c: i64) -> Self {
        let vars = coeffs.len();
        let mut p = Self::constant(vars, GR::int(c));
        for (a, &k) in coeffs.iter().enumerate() {
            if k != 0 {
                let mut e = vec![0; vars];
                e[a] = 1;
                p.terms.insert(e, GR::int(k));
            }
        }
        p
    }

    pub fn mul(&self, o: &CartanPolynomial) -> CartanPolynomial {
        let mut out = Self::constant(self.vars, GR::zero());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let v = out.terms.entry(e).or_insert_with(GR::zero);
                *v += &(c1 * c2);
            }
        }
        out.terms.retain(|_, v| !v.is_zero());
        out
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }
}

impl fmt::Debug for CartanPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut s = format!("({c})");
                for (a, &k) in e.iter().enumerate() {
                    if k > 0 {
                        s.push_str(&format!("*E{}{}", a + 1, a + 1));
                        if k > 1 {
                            s.push_str(&format!("^{k}"));
                        }
                    }
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Straightening engine for one model and Borel; memoizes generator-times-
/// monomial products.
pub struct PbwEngine {
    model: AlgebraModel,
    gens: Vec<Generator>,
    index: HashMap<Generator, u16>,
    odd: Vec<bool>,
    memo: RefCell<HashMap<(u16, Monomial), PbwElement>>,
}

impl PbwEngine {
    /// Order: negative root vectors by height then lexicographically, the
    /// Cartan E_aa, then positive root vectors likewise.
    pub fn new(model: &AlgebraModel, b: &Borel) -> Self {
        assert!(!model.is_q(), "PBW engine is for type A models");
        let k = model.rank();
        let mut neg = Vec::new();
        let mut pos = Vec::new();
        for a in 0..k {
            for c in 0..k {
                if a == c {
                    continue;
                }
                let (pa, pc) = (b.position(a), b.position(c));
                let height = pc as i64 - pa as i64;
                if height > 0 {
                    pos.push((height, a, c));
                } else {
                    neg.push((-height, a, c));
                }
            }
        }
        neg.sort();
        pos.sort();
        let mut gens: Vec<Generator> = neg.iter().map(|&(_, a, c)| Generator::Root(a, c)).collect();
        gens.extend((0..k).map(Generator::Cartan));
        gens.extend(pos.iter().map(|&(_, a, c)| Generator::Root(a, c)));
        let index = gens.iter().enumerate().map(|(i, g)| (*g, i as u16)).collect();
        let odd = gens
            .iter()
            .map(|g| match g {
                Generator::Root(a, c) => model.index_odd(*a) != model.index_odd(*c),
                Generator::Cartan(_) => false,
            })
            .collect();
        PbwEngine { model: model.clone(), gens, index, odd, memo: RefCell::new(HashMap::new()) }
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    fn gen_of(&self, a: usize, b: usize) -> u16 {
        let g = if a == b { Generator::Cartan(a) } else { Generator::Root(a, b) };
        self.index[&g]
    }

    /// A model element as a combination of generators.
    pub fn decompose(&self, x: &Matrix) -> Vec<(u16, GR)> {
        x.nonzero_entries().map(|(i, j, v)| (self.gen_of(i, j), v.clone())).collect()
    }

    fn pair(&self, g: u16) -> (usize, usize) {
        match self.gens[g as usize] {
            Generator::Root(a, b) => (a, b),
            Generator::Cartan(a) => (a, a),
        }
    }

    /// [g, h] as a combination of generators.
    fn bracket(&self, g: u16, h: u16) -> Vec<(u16, GR)> {
        let (a, b) = self.pair(g);
        let (c, d) = self.pair(h);
        let sign = if self.odd[g as usize] && self.odd[h as usize] { 1 } else { -1 };
        let mut out: Vec<(u16, GR)> = Vec::new();
        // [E_ab, E_cd] = d_bc E_ad - (-1)^{|x||y|} d_da E_cb
        if b == c {
            out.push((self.gen_of(a, d), GR::one()));
        }
        if d == a {
            let t = self.gen_of(c, b);
            if let Some(e) = out.iter_mut().find(|e| e.0 == t) {
                e.1 += &GR::int(sign);
            } else {
                out.push((t, GR::int(sign)));
            }
        }
        out.retain(|e| !e.1.is_zero());
        out
    }

    /// g times a normal-ordered monomial, in normal form.
    fn left_mul(&self, g: u16, mono: &[u16]) -> PbwElement {
        if let Some(first) = mono.first() {
            if g > *first {
                let key = (g, mono.to_vec());
                if let Some(hit) = self.memo.borrow().get(&key) {
                    return hit.clone();
                }
                let x1 = *first;
                let rest = &mono[1..];
                let mut out = PbwElement::default();
                // g x1 rest = s x1 (g rest) + [g, x1] rest
                let s = if self.odd[g as usize] && self.odd[x1 as usize] { -1 } else { 1 };
                let inner = self.left_mul(g, rest);
                for (m, c) in &inner.terms {
                    out.add_scaled(&self.left_mul(x1, m), &(c * &GR::int(s)));
                }
                for (h, c) in self.bracket(g, x1) {
                    out.add_scaled(&self.left_mul(h, rest), &c);
                }
                self.memo.borrow_mut().insert(key, out.clone());
                return out;
            }
            if g == *first && self.odd[g as usize] {
                return PbwElement::default();
            }
        }
        let mut m = Vec::with_capacity(mono.len() + 1);
        m.push(g);
        m.extend_from_slice(mono);
        let mut out = PbwElement::default();
        out.add_term(m, &GR::one());
        out
    }

    /// x * u for a model element x.
    pub fn mul_element(&self, x: &Matrix, u: &PbwElement) -> PbwElement {
        let mut out = PbwElement::default();
        for (g, c) in self.decompose(x) {
            for (m, v) in &u.terms {
                out.add_scaled(&self.left_mul(g, m), &(&c * v));
            }
        }
        out
    }

    /// Normal form of the ordered product of the factors.
    pub fn straighten(&self, factors: &[Matrix]) -> PbwElement {
        let mut acc = PbwElement::one();
        for x in factors.iter().rev() {
            acc = self.mul_element(x, &acc);
        }
        acc
    }

    /// u * v for normal-ordered u, v.
    pub fn mul(&self, u: &PbwElement, v: &PbwElement) -> PbwElement {
        let mut out = PbwElement::default();
        for (m, c) in &u.terms {
            let mut acc = v.clone();
            for &g in m.iter().rev() {
                let mut next = PbwElement::default();
                for (mm, cc) in &acc.terms {
                    next.add_scaled(&self.left_mul(g, mm), cc);
                }
                acc = next;
            }
            out.add_scaled(&acc, c);
        }
        out
    }

    pub fn hc_projection(&self, u: &PbwElement) -> CartanPolynomial {
        let k = self.model.rank();
        let mut p = CartanPolynomial::constant(k, GR::zero());
        for (m, c) in &u.terms {
            let mut e = vec![0u32; k];
            let mut pure = true;
            for &g in m {
                match self.gens[g as usize] {
                    Generator::Cartan(a) => e[a] += 1,
                    Generator::Root(..) => {
                        pure = false;
                        break;
                    }
                }
            }
            if pure {
                let v = p.terms.entry(e).or_insert_with(GR::zero);
                *v += c;
            }
        }
        p.terms.retain(|_, v| !v.is_zero());
        p
    }

    /// The PBW element of a Cartan polynomial.
    pub fn from_cartan(&self, p: &CartanPolynomial) -> PbwElement {
        let mut out = PbwElement::default();
        for (e, c) in &p.terms {
            let mut m = Vec::new();
            for (a, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    m.push(self.gen_of(a, a));
                }
            }
            m.sort_unstable();
            out.add_term(m, c);
        }
        out
    }

    pub fn describe(&self, u: &PbwElement) -> String {
        let parts: Vec<String> = u
            .terms
            .iter()
            .map(|(m, c)| {
                let names: Vec<String> = m
                    .iter()
                    .map(|&g| {
                        let (a, b) = self.pair(g);
                        format!("E{}{}", a + 1, b + 1)
                    })
                    .collect();
                format!("({c}){}", if names.is_empty() { String::new() } else { format!("*{}", names.join("*")) })
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

pub fn evaluate_at_weight(p: &CartanPolynomial, lambda: &Weight) -> GR {
    let mut acc = GR::zero();
    for (e, c) in &p.terms {
        let mut t = c.clone();
        for (a, &k) in e.iter().enumerate() {
            if k > 0 {
                t = &t * &lambda.coords[a].pow(k);
            }
        }
        acc += &t;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_model::{all_shuffles, build_algebra, Family};
    use proptest::prelude::*;

    fn engine(m: usize, n: usize, word: &str) -> (AlgebraModel, PbwEngine) {
        let g = AlgebraModel::gl(m, n);
        let b = Borel::from_shuffle(&g, word).unwrap();
        let e = PbwEngine::new(&g, &b);
        (g, e)
    }

    #[test]
    fn gl11_odd_pair() {
        let (g, e) = engine(1, 1, "ed");
        let u = e.straighten(&[g.unit(0, 1), g.unit(1, 0)]);
        let mut expect = e.from_cartan(&CartanPolynomial::linear(&[1, 1], 0));
        let fe = e.straighten(&[g.unit(1, 0), g.unit(0, 1)]);
        assert_eq!(fe.terms.len(), 1);
        expect = expect.sub(&fe);
        assert_eq!(u, expect);
        assert_eq!(e.hc_projection(&u), CartanPolynomial::linear(&[1, 1], 0));
    }

    #[test]
    fn gl2_sl2_relation() {
        let g = build_algebra(Family::ReductiveGL, 2, 0).unwrap();
        let e = PbwEngine::new(&g, &Borel::standard(&g));
        let u = e.straighten(&[g.unit(0, 1), g.unit(1, 0)]);
        let fe = e.straighten(&[g.unit(1, 0), g.unit(0, 1)]);
        let h = e.from_cartan(&CartanPolynomial::linear(&[1, -1], 0));
        assert_eq!(u.sub(&fe), h);
        assert_eq!(u.terms.len(), 3);
    }

    #[test]
    fn gl12_example_polynomial() {
        let (g, e) = engine(1, 2, "edd");
        let u = e.straighten(&[g.unit(0, 1), g.unit(0, 2), g.unit(2, 0), g.unit(1, 0)]);
        let expect = CartanPolynomial::linear(&[1, 1, 0], 0).mul(&CartanPolynomial::linear(&[1, 0, 1], -1));
        assert_eq!(e.hc_projection(&u), expect);
        // (1+ai+b1)(ai-1-conj(b1)) at lambda = (1+ai, b1, -1-conj(b1))
        let a = GR::from_parts((0, 1), (3, 2));
        let b1 = GR::from_parts((2, 3), (-1, 5));
        let lam = Weight::new(vec![GR::one() + &a, b1.clone(), GR::int(-1) - b1.conj()], 1);
        let val = evaluate_at_weight(&expect, &lam);
        assert_eq!(val, (GR::one() + &a + &b1) * (&a - &GR::one() - &b1.conj()));
    }

    #[test]
    fn hc_on_cartan_is_identity() {
        let (_, e) = engine(2, 1, "ede");
        let p = CartanPolynomial::linear(&[1, 2, 0], 3).mul(&CartanPolynomial::linear(&[0, 1, -1], 1));
        assert_eq!(e.hc_projection(&e.from_cartan(&p)), p);
        assert_eq!(evaluate_at_weight(&CartanPolynomial::constant(3, GR::one()), &Weight::new(vec![GR::int(7); 3], 2)), GR::one());
    }

    fn basis_matrix(g: &AlgebraModel, k: usize) -> Matrix {
        let n = g.rank();
        g.unit(k / n % n, k % n)
    }

    fn is_odd(g: &AlgebraModel, x: &Matrix) -> bool {
        g.parity(x) == Some(true)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn associativity_gl22(w in 0usize..6, i in 0usize..16, j in 0usize..16, k in 0usize..16) {
            let words = all_shuffles(2, 2);
            let (g, e) = engine(2, 2, &words[w]);
            let (x, y, z) = (basis_matrix(&g, i), basis_matrix(&g, j), basis_matrix(&g, k));
            let yz = e.straighten(&[y.clone(), z.clone()]);
            let left = e.mul_element(&x, &yz);
            let xy = e.straighten(&[x, y]);
            let right = e.mul(&xy, &e.straighten(&[z]));
            prop_assert_eq!(left, right);
        }

        #[test]
        fn swap_rule_gl22(w in 0usize..6, i in 0usize..16, j in 0usize..16) {
            let words = all_shuffles(2, 2);
            let (g, e) = engine(2, 2, &words[w]);
            let (x, y) = (basis_matrix(&g, i), basis_matrix(&g, j));
            let xy = e.straighten(&[x.clone(), y.clone()]);
            let yx = e.straighten(&[y.clone(), x.clone()]);
            let s = if is_odd(&g, &x) && is_odd(&g, &y) { 1 } else { -1 };
            let mut lhs = xy;
            lhs.add_scaled(&yx, &GR::int(s));
            let br = g.superbracket(&x, &y);
            let rhs = if br.is_zero() { PbwElement::default() } else { e.straighten(&[br]) };
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn hc_multiplicative_on_cartan(a in -3i64..4, b in -3i64..4, c in -3i64..4) {
            let (_, e) = engine(1, 2, "ded");
            let p = CartanPolynomial::linear(&[a, b, 1], c);
            let q = CartanPolynomial::linear(&[c, 1, a], b);
            let u = e.mul(&e.from_cartan(&p), &e.from_cartan(&q));
            prop_assert_eq!(e.hc_projection(&u), p.mul(&q));
        }

        #[test]
        fn odd_products_degree_bound(w in 0usize..6, picks in proptest::collection::vec(0usize..8, 2..5)) {
            let words = all_shuffles(2, 2);
            let (g, e) = engine(2, 2, &words[w]);
            let odd: Vec<Matrix> = g.roots().into_iter().filter(|r| r.odd).map(|r| {
                let (a, b) = r.pair().unwrap();
                g.unit(a, b)
            }).collect();
            let factors: Vec<Matrix> = picks.iter().map(|&p| odd[p].clone()).collect();
            let u = e.straighten(&factors);
            prop_assert!(e.hc_projection(&u).degree() as usize <= factors.len());
        }
    }
}
